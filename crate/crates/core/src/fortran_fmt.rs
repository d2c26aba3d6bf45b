//! Free-form Fortran layout: line continuation and a structural checker.

/// Maximum free-form line length.
pub const MAX_LINE: usize = 132;
const WRAP_AT: usize = 100;

/// Split one logical line into continuation lines of at most [`MAX_LINE`] columns.
pub fn wrap_line(line: &str) -> Vec<String> {
    if line.len() <= MAX_LINE {
        return vec![line.to_string()];
    }
    let indent: String = line.chars().take_while(|c| *c == ' ').collect();
    if line.trim_start().starts_with('!') {
        return wrap_comment(line, &indent);
    }
    let mut out = Vec::new();
    let mut rest = line.to_string();
    let mut first = true;
    while rest.len() > MAX_LINE {
        let (cut, in_string) = break_point(&rest, if first { 0 } else { indent.len() + 2 });
        let (head, tail) = rest.split_at(cut);
        if in_string {
            out.push(format!("{head}&"));
            rest = format!("{indent}  &{tail}");
        } else {
            out.push(format!("{} &", head.trim_end()));
            rest = format!("{indent}  {}", tail.trim_start());
        }
        first = false;
    }
    out.push(rest);
    out
}

/// Byte index to split at, and whether it falls inside a character literal.
fn break_point(s: &str, min: usize) -> (usize, bool) {
    let bytes = s.as_bytes();
    let mut quote: Option<u8> = None;
    let mut best = None;
    for (i, &b) in bytes.iter().enumerate().take(MAX_LINE - 2) {
        match quote {
            Some(q) if b == q => quote = None,
            Some(_) => {}
            None if b == b'"' || b == b'\'' => quote = Some(b),
            None if b == b' ' && i > min && i <= WRAP_AT.max(min + 1) => best = Some(i),
            None if b == b' ' && best.is_none() && i > min => best = Some(i),
            None => {}
        }
    }
    match best {
        Some(i) => (i, false),
        None => {
            let mut cut = (MAX_LINE - 2).min(s.len());
            while !s.is_char_boundary(cut) {
                cut -= 1;
            }
            (cut, quote.is_some() || in_string_at(s, cut))
        }
    }
}

fn in_string_at(s: &str, idx: usize) -> bool {
    let mut quote: Option<u8> = None;
    for &b in &s.as_bytes()[..idx] {
        match quote {
            Some(q) if b == q => quote = None,
            Some(_) => {}
            None if b == b'"' || b == b'\'' => quote = Some(b),
            None => {}
        }
    }
    quote.is_some()
}

fn wrap_comment(line: &str, indent: &str) -> Vec<String> {
    let body = line.trim_start().trim_start_matches('!').trim_start();
    let width = MAX_LINE - indent.len() - 2;
    let mut out = Vec::new();
    let mut cur = String::new();
    for word in body.split(' ') {
        if !cur.is_empty() && cur.len() + 1 + word.len() > width {
            out.push(format!("{indent}! {cur}"));
            cur.clear();
        }
        if !cur.is_empty() {
            cur.push(' ');
        }
        let mut w = word;
        while w.len() > width {
            let mut cut = width;
            while !w.is_char_boundary(cut) {
                cut -= 1;
            }
            out.push(format!("{indent}! {}", &w[..cut]));
            w = &w[cut..];
        }
        cur.push_str(w);
    }
    out.push(format!("{indent}! {cur}"));
    out
}

/// Apply [`wrap_line`] to every line of `text`.
pub fn wrap_source(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        for l in wrap_line(line) {
            out.push_str(&l);
            out.push('\n');
        }
    }
    out
}

/// Join continuation lines and drop comments, lowercased.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut pending: Option<(usize, String)> = None;
    for (i, raw) in text.lines().enumerate() {
        let t = raw.trim();
        if t.is_empty() || t.starts_with('!') {
            continue;
        }
        let t = t.strip_prefix('&').unwrap_or(t);
        let (body, cont) = match t.strip_suffix('&') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let entry = pending.get_or_insert((i + 1, String::new()));
        entry.1.push_str(body);
        if !cont {
            out.push(pending.take().expect("just inserted"));
        }
    }
    out.extend(pending);
    out.into_iter().map(|(n, s)| (n, strip_strings(&s).to_ascii_lowercase())).collect()
}

fn strip_strings(s: &str) -> String {
    let mut out = String::new();
    let mut quote: Option<char> = None;
    for c in s.chars() {
        match quote {
            Some(q) if c == q => {
                quote = None;
                out.push(c);
            }
            Some(_) => {}
            None => {
                if c == '"' || c == '\'' {
                    quote = Some(c);
                }
                out.push(c);
            }
        }
    }
    out
}

fn opens(l: &str) -> Option<&'static str> {
    let first = l.split(|c: char| !c.is_ascii_alphanumeric() && c != '_').next().unwrap_or("");
    match first {
        "module" if !l.starts_with("module procedure") => Some("module"),
        "interface" => Some("interface"),
        "abstract" if l.starts_with("abstract interface") => Some("interface"),
        "enum" => Some("enum"),
        "type" if !l.starts_with("type(") && !l.starts_with("type (") => Some("type"),
        "function" | "subroutine" => Some(if first == "function" { "function" } else { "subroutine" }),
        "if" if l.ends_with("then") => Some("if"),
        "do" => Some("do"),
        _ => None,
    }
}

fn closes(l: &str) -> Option<&'static str> {
    let rest = l.strip_prefix("end")?;
    let rest = rest.trim_start();
    let word = rest.split(|c: char| !c.is_ascii_alphanumeric() && c != '_').next().unwrap_or("");
    match word {
        "module" | "interface" | "enum" | "type" | "function" | "subroutine" | "if" | "do" => Some(match word {
            "module" => "module",
            "interface" => "interface",
            "enum" => "enum",
            "type" => "type",
            "function" => "function",
            "subroutine" => "subroutine",
            "if" => "if",
            _ => "do",
        }),
        "" if l == "end" => Some("end"),
        _ => None,
    }
}

/// Check line lengths and block nesting of generated free-form Fortran.
pub fn validate_structure(text: &str) -> Result<(), String> {
    for (i, line) in text.lines().enumerate() {
        if line.len() > MAX_LINE {
            return Err(format!("line {} is {} columns long", i + 1, line.len()));
        }
    }
    let mut stack: Vec<(&'static str, usize)> = Vec::new();
    let mut seen_module = false;
    for (n, l) in logical_lines(text) {
        if let Some(kind) = closes(&l) {
            match stack.pop() {
                Some((open, _)) if open == kind || kind == "end" => {}
                Some((open, at)) => return Err(format!("line {n}: `{l}` closes `{open}` opened at line {at}")),
                None => return Err(format!("line {n}: `{l}` has no matching opener")),
            }
            continue;
        }
        if l.starts_with("else") {
            if stack.last().map(|s| s.0) != Some("if") {
                return Err(format!("line {n}: `else` outside of an if block"));
            }
            continue;
        }
        if let Some(kind) = opens(&l) {
            if kind == "module" {
                if seen_module {
                    return Err(format!("line {n}: second module"));
                }
                seen_module = true;
            }
            stack.push((kind, n));
        }
    }
    if let Some((open, at)) = stack.pop() {
        return Err(format!("`{open}` opened at line {at} is never closed"));
    }
    if !seen_module {
        return Err("no module".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_lines_untouched() {
        assert_eq!(wrap_line("  x = 1"), ["  x = 1"]);
    }

    #[test]
    fn long_lines_continue() {
        let args: Vec<String> = (0..40).map(|i| format!("argument{i}")).collect();
        let line = format!("  call f({})", args.join(", "));
        let out = wrap_line(&line);
        assert!(out.len() > 1);
        assert!(out.iter().all(|l| l.len() <= MAX_LINE));
        assert!(out[..out.len() - 1].iter().all(|l| l.ends_with('&')));
        let joined: String = out.iter().map(|l| l.trim().trim_end_matches('&').trim()).collect::<Vec<_>>().join(" ");
        assert_eq!(joined.replace(' ', ""), line.replace(' ', ""));
    }

    #[test]
    fn long_strings_split_inside_literal() {
        let line = format!("  character(kind=C_CHAR, len=*), parameter :: S = \"{}\"", "x".repeat(300));
        let out = wrap_line(&line);
        assert!(out.iter().all(|l| l.len() <= MAX_LINE));
        assert!(out.iter().skip(1).any(|l| l.trim_start().starts_with('&')));
        validate_structure(&format!("module m\n{}\nend module\n", out.join("\n"))).unwrap();
    }

    #[test]
    fn structure_checks() {
        let ok = "module m\nimplicit none\ninterface f\nmodule procedure a\nend interface\ncontains\nsubroutine a(x)\nif (x) then\nelse\nend if\nend subroutine\nend module m\n";
        validate_structure(ok).unwrap();
        assert!(validate_structure("module m\nsubroutine a()\nend function\nend module\n").is_err());
        assert!(validate_structure("module m\ntype :: t\n").is_err());
        assert!(validate_structure(&format!("module m\n{}\nend module\n", "x".repeat(140))).is_err());
    }
}
