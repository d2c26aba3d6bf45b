#![allow(dead_code)]

pub mod harness;

use std::fs;
use std::path::{Path, PathBuf};

use bindforge::driver::{generate, Generated};

pub fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn corpus_dir() -> PathBuf {
    manifest_dir().join("tests/corpus")
}

pub fn golden_dir() -> PathBuf {
    manifest_dir().join("tests/golden")
}

/// Every corpus interface as (stem, path), sorted by stem.
pub fn corpus() -> Vec<(String, PathBuf)> {
    let mut out: Vec<(String, PathBuf)> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "i"))
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), p))
        .collect();
    out.sort();
    out
}

pub fn generate_file(path: &Path) -> Generated {
    let src = fs::read(path).expect("read interface");
    match generate(&src, None) {
        Ok(g) => g,
        Err(diags) => {
            let shown: Vec<String> = diags.iter().map(|d| d.render(&path.display().to_string())).collect();
            panic!("{} failed:\n{}", path.display(), shown.join("\n"))
        }
    }
}

pub fn generate_str(src: &str) -> Generated {
    generate(src.as_bytes(), None).unwrap_or_else(|d| panic!("generation failed: {d:?}"))
}

/// Every file checked in as the golden for one corpus entry.
pub fn rendered(stem: &str, g: &Generated) -> Vec<(String, String)> {
    let file = format!("{stem}.i");
    let diags: String = g.diagnostics.iter().map(|d| d.render(&file) + "\n").collect();
    vec![
        (g.c_file_name(), g.c_source.clone()),
        (g.fortran_file_name(), g.fortran_source.clone()),
        ("plan.txt".into(), g.plan.dump()),
        ("diagnostics.txt".into(), diags),
    ]
}

/// Whitespace-insensitive token list of a Fortran fragment.
pub fn tokens(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() || c == '_' {
            cur.push(c);
        } else {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() && c != '&' {
                out.push(c.to_string());
            }
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Body of the first `interface <name>` block, as it appears in the source.
pub fn generic_block(fortran: &str, name: &str) -> Option<String> {
    let open = format!("interface {name}");
    let mut lines = fortran.lines().skip_while(|l| !l.trim().eq_ignore_ascii_case(&open));
    lines.next()?;
    let body: Vec<&str> = lines.take_while(|l| !l.trim().starts_with("end interface")).collect();
    Some(body.join("\n"))
}

/// Wrapper-facing bind(C) names of the Fortran unit and the exports of the C unit.
/// Direct bindings name symbols outside the generated pair and are left out.
pub fn symbol_sets(g: &Generated) -> (std::collections::BTreeSet<String>, std::collections::BTreeSet<String>) {
    use bindforge::semantic::DirectBinding;
    let direct: std::collections::BTreeSet<&str> = g
        .plan
        .direct_bindings
        .iter()
        .filter_map(|d| match d {
            DirectBinding::Function(f) => Some(f.c_name.as_str()),
            DirectBinding::Struct(_) => None,
        })
        .collect();
    let fortran = bindforge::emit_fortran::bindc_symbols(&g.fortran_source)
        .into_iter()
        .filter(|s| !direct.contains(s.as_str()))
        .collect();
    let c = bindforge::emit_c::exported_symbols(&g.c_source).into_iter().collect();
    (fortran, c)
}

/// A random free function with `spans` (pointer, size) pairs fused by `%apply`.
pub struct SpanSignature {
    pub interface: String,
    pub cpp_params: usize,
    pub spans: usize,
}

pub fn random_span_signature<R: rand::RngExt + ?Sized>(rng: &mut R, index: usize) -> SpanSignature {
    const SCALARS: [&str; 5] = ["int", "double", "float", "long", "short"];
    const ELEMENTS: [&str; 4] = ["double", "int", "float", "const double"];
    let spans = rng.random_range(0..=3usize);
    let scalars = rng.random_range(0..=4usize);
    let mut slots: Vec<bool> = std::iter::repeat_n(true, spans).chain(std::iter::repeat_n(false, scalars)).collect();
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.random_range(0..=i));
    }
    let mut params = Vec::new();
    let mut pairs = Vec::new();
    for (k, is_span) in slots.iter().enumerate() {
        if *is_span {
            let elem = ELEMENTS[rng.random_range(0..ELEMENTS.len())];
            let (p, n) = (format!("{elem} *data{k}"), format!("size_t n{k}"));
            pairs.push(format!("({p}, {n})"));
            params.push(p);
            params.push(n);
        } else {
            params.push(format!("{} x{k}", SCALARS[rng.random_range(0..SCALARS.len())]));
        }
    }
    let ret = if rng.random_bool(0.5) { "void" } else { "double" };
    let mut interface = String::from("%module arity\n");
    if !pairs.is_empty() {
        interface.push_str(&format!("%apply (SWIGTYPE *DATA, size_t SIZE) {{ {} }};\n", pairs.join(", ")));
    }
    interface.push_str(&format!("{ret} probe{index}({});\n", params.join(", ")));
    SpanSignature { interface, cpp_params: params.len(), spans }
}

/// Dummy arguments of the public procedure `name` in emitted Fortran.
pub fn fortran_arity(fortran: &str, name: &str) -> Option<usize> {
    let joined = fortran.replace("&\n", " ");
    let line = joined.lines().find(|l| {
        let t = l.trim_start();
        t.starts_with(&format!("function {name}(")) || t.starts_with(&format!("subroutine {name}("))
    })?;
    let open = line.find('(')?;
    let close = open + line[open..].find(')')?;
    let inner = line[open + 1..close].trim();
    Some(if inner.is_empty() { 0 } else { inner.split(',').count() })
}
