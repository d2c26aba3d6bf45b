//! Evaluation of constant expressions in enum initializers and macros.

use std::collections::BTreeMap;

use crate::parser::lexer::{tokenize, Token, TokenKind};

/// Value of a `#define` usable as a Fortran parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum ConstValue {
    Int(i64),
    /// Literal spelling without suffix, and whether it was single precision.
    Float {
        text: String,
        single: bool,
    },
    Str(String),
}

/// Classify and evaluate a macro body. `known` holds integer values of
/// previously seen enumerators and macros.
pub fn eval_macro(text: &str, known: &BTreeMap<String, i64>) -> Result<ConstValue, String> {
    let toks = tokenize(text).map_err(|d| d.message)?;
    let toks: Vec<Token> = toks.into_iter().filter(|t| t.kind != TokenKind::Eof).collect();
    if let [tok] = toks.as_slice() {
        match &tok.kind {
            TokenKind::Str(s) => return unescape(s).map(ConstValue::Str),
            TokenKind::Number(n) if is_float_literal(n) => return float_literal(n),
            _ => {}
        }
    }
    if let [sign, tok] = toks.as_slice() {
        if let (true, TokenKind::Number(n)) = (sign.is_sym("-"), &tok.kind) {
            if is_float_literal(n) {
                return match float_literal(n)? {
                    ConstValue::Float { text, single } => Ok(ConstValue::Float { text: format!("-{text}"), single }),
                    other => Ok(other),
                };
            }
        }
    }
    eval_tokens(&toks, known).map(ConstValue::Int)
}

/// Evaluate an integer constant expression.
pub fn eval_int(text: &str, known: &BTreeMap<String, i64>) -> Result<i64, String> {
    let toks = tokenize(text).map_err(|d| d.message)?;
    let toks: Vec<Token> = toks.into_iter().filter(|t| t.kind != TokenKind::Eof).collect();
    eval_tokens(&toks, known)
}

fn eval_tokens(toks: &[Token], known: &BTreeMap<String, i64>) -> Result<i64, String> {
    if toks.is_empty() {
        return Err("empty expression".into());
    }
    let mut p = Eval { toks, pos: 0, known };
    let v = p.expr(0)?;
    if p.pos != toks.len() {
        return Err(format!("unexpected `{}`", toks[p.pos].text()));
    }
    Ok(v)
}

fn is_float_literal(n: &str) -> bool {
    let hex = n.starts_with("0x") || n.starts_with("0X");
    !hex && (n.contains('.') || n.contains('e') || n.contains('E'))
}

fn float_literal(n: &str) -> Result<ConstValue, String> {
    let single = n.ends_with('f') || n.ends_with('F');
    let text = n.trim_end_matches(['f', 'F', 'l', 'L']);
    text.parse::<f64>().map_err(|_| format!("invalid floating literal `{n}`"))?;
    Ok(ConstValue::Float { text: text.to_string(), single })
}

fn unescape(lit: &str) -> Result<String, String> {
    let inner = &lit[1..lit.len() - 1];
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some(e @ ('"' | '\\' | '\'')) => out.push(e),
            Some(e) => return Err(format!("escape `\\{e}` has no Fortran equivalent")),
            None => return Err("dangling escape".into()),
        }
    }
    Ok(out)
}

fn int_literal(n: &str) -> Result<i64, String> {
    let body = n.trim_end_matches(['u', 'U', 'l', 'L']);
    let (digits, radix) = if let Some(h) = body.strip_prefix("0x").or_else(|| body.strip_prefix("0X")) {
        (h, 16)
    } else if let Some(b) = body.strip_prefix("0b").or_else(|| body.strip_prefix("0B")) {
        (b, 2)
    } else if body.len() > 1 && body.starts_with('0') {
        (&body[1..], 8)
    } else {
        (body, 10)
    };
    let digits = digits.replace('\'', "");
    u64::from_str_radix(&digits, radix).map(|v| v as i64).map_err(|_| format!("invalid integer literal `{n}`"))
}

fn char_literal(c: &str) -> Result<i64, String> {
    let s = unescape(c)?;
    let mut it = s.chars();
    match (it.next(), it.next()) {
        (Some(ch), None) if ch.is_ascii() => Ok(ch as i64),
        _ => Err(format!("unsupported character literal {c}")),
    }
}

struct Eval<'a> {
    toks: &'a [Token],
    pos: usize,
    known: &'a BTreeMap<String, i64>,
}

impl Eval<'_> {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    /// Binary operator at the cursor with its precedence and token width.
    fn binop(&self) -> Option<(&'static str, u8, usize)> {
        let t = self.peek()?;
        let TokenKind::Sym(s) = t.kind else { return None };
        let next_adjacent = |want: &str| self.toks.get(self.pos + 1).is_some_and(|n| n.is_sym(want) && !n.spaced);
        Some(match s {
            "<" if next_adjacent("<") => ("<<", 5, 2),
            ">" if next_adjacent(">") => (">>", 5, 2),
            "*" => ("*", 7, 1),
            "/" => ("/", 7, 1),
            "%" => ("%", 7, 1),
            "+" => ("+", 6, 1),
            "-" => ("-", 6, 1),
            "&" => ("&", 4, 1),
            "^" => ("^", 3, 1),
            "|" => ("|", 2, 1),
            _ => return None,
        })
    }

    fn expr(&mut self, min_prec: u8) -> Result<i64, String> {
        let mut lhs = self.unary()?;
        while let Some((op, prec, width)) = self.binop() {
            if prec < min_prec {
                break;
            }
            self.pos += width;
            let rhs = self.expr(prec + 1)?;
            lhs = match op {
                "*" => lhs.wrapping_mul(rhs),
                "/" | "%" if rhs == 0 => return Err("division by zero".into()),
                "/" => lhs.wrapping_div(rhs),
                "%" => lhs.wrapping_rem(rhs),
                "+" => lhs.wrapping_add(rhs),
                "-" => lhs.wrapping_sub(rhs),
                "<<" => lhs.checked_shl(rhs as u32).ok_or("shift out of range")?,
                ">>" => lhs.checked_shr(rhs as u32).ok_or("shift out of range")?,
                "&" => lhs & rhs,
                "^" => lhs ^ rhs,
                _ => lhs | rhs,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<i64, String> {
        let t = self.peek().ok_or("unexpected end of expression")?.clone();
        self.pos += 1;
        match &t.kind {
            TokenKind::Sym("-") => Ok(self.unary()?.wrapping_neg()),
            TokenKind::Sym("+") => self.unary(),
            TokenKind::Sym("~") => Ok(!self.unary()?),
            TokenKind::Sym("!") => Ok((self.unary()? == 0) as i64),
            TokenKind::Sym("(") => {
                let v = self.expr(0)?;
                if !self.peek().is_some_and(|t| t.is_sym(")")) {
                    return Err("expected `)`".into());
                }
                self.pos += 1;
                Ok(v)
            }
            TokenKind::Number(n) if is_float_literal(n) => Err(format!("`{n}` is not an integer")),
            TokenKind::Number(n) => int_literal(n),
            TokenKind::Char(c) => char_literal(c),
            TokenKind::Ident(name) => {
                self.known.get(name).copied().ok_or_else(|| format!("unknown identifier `{name}`"))
            }
            _ => Err(format!("unexpected `{}`", t.text())),
        }
    }
}
