//! Fortran identifier rules: mangling, length limits, reserved words and
//! case-insensitive uniqueness.

use std::collections::BTreeMap;

/// Longest identifier Fortran 2003 accepts.
pub const MAX_IDENT: usize = 63;
const KEEP: usize = 55;

/// 32-bit FNV-1a.
pub fn fnv1a32(s: &str) -> u32 {
    let mut h: u32 = 0x811c_9dc5;
    for b in s.bytes() {
        h ^= b as u32;
        h = h.wrapping_mul(0x0100_0193);
    }
    h
}

/// Shorten an over-long identifier to 55 characters, `_`, and a 7-digit hash.
pub fn truncate_ident(name: &str) -> String {
    if name.len() <= MAX_IDENT {
        return name.to_string();
    }
    format!("{}_{:07x}", &name[..KEEP], fnv1a32(name) & 0x0fff_ffff)
}

#[rustfmt::skip]
const KEYWORDS: &[&str] = &[
    "allocatable", "allocate", "assign", "assignment", "associate", "asynchronous", "backspace", "bind", "block",
    "call", "case", "character", "class", "close", "common", "complex", "contains", "continue", "cycle", "data",
    "deallocate", "default", "dimension", "do", "double", "elemental", "else", "elseif", "elsewhere", "end",
    "endif", "enddo", "entry", "enum", "enumerator", "equivalence", "exit", "extends", "external", "final", "flush",
    "forall", "format", "function", "generic", "go", "goto", "if", "implicit", "import", "in", "include", "inout",
    "integer", "intent", "interface", "intrinsic", "kind", "len", "logical", "module", "namelist", "none", "nopass",
    "nullify", "only", "open", "operator", "optional", "out", "parameter", "pass", "pause", "pointer", "precision",
    "print", "private", "procedure", "program", "protected", "public", "pure", "read", "real", "recursive",
    "result", "return", "rewind", "save", "select", "sequence", "stop", "subroutine", "target", "then", "type",
    "use", "value", "volatile", "wait", "where", "while", "write",
];

/// Intrinsics and ISO_C_BINDING names the generated code relies on.
#[rustfmt::skip]
const GENERATED_USES: &[&str] = &[
    "iso_c_binding", "c_loc", "c_funloc", "c_associated", "c_f_pointer", "c_null_ptr", "c_null_funptr", "c_ptr",
    "c_funptr", "c_int", "c_long", "c_long_long", "c_short", "c_signed_char", "c_size_t", "c_intptr_t", "c_int8_t",
    "c_int16_t", "c_int32_t", "c_int64_t", "c_float", "c_double", "c_bool", "c_char", "size", "merge", "int",
    "btest", "allocated", "swigdata",
];

/// True when `name` would conflict with Fortran syntax or generated code.
pub fn is_reserved(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    KEYWORDS.contains(&lower.as_str()) || GENERATED_USES.contains(&lower.as_str())
}

/// Make a C++ identifier usable in Fortran. Returns the new name when it changed.
pub fn fortran_ident(name: &str) -> (String, bool) {
    let mut out = name.to_string();
    if out.starts_with('_') {
        out.insert(0, 'f');
    }
    if is_reserved(&out) {
        out.push('_');
    }
    let out = truncate_ident(&out);
    let changed = out != name;
    (out, changed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MangleContext<'a> {
    Free,
    Member { class: &'a str },
    Constructor { class: &'a str },
    Release { class: &'a str },
    Assign { class: &'a str },
}

/// Names derived for one wrapped procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mangled {
    /// Module-level Fortran procedure name.
    pub specific: String,
    /// Symbol of the C shim.
    pub c_symbol: String,
    /// Private bind(C) interface name for the shim.
    pub interface: String,
}

pub fn mangle_name(module: &str, public_name: &str, overload_index: Option<usize>, ctx: MangleContext<'_>) -> Mangled {
    let suffix = overload_index.map(|i| format!("__SWIG_{i}")).unwrap_or_default();
    let (specific, stem) = match ctx {
        MangleContext::Free => {
            let s = format!("{public_name}{suffix}");
            (s.clone(), s)
        }
        MangleContext::Member { class } => {
            let stem = format!("{class}_{public_name}{suffix}");
            (format!("swigf_{stem}"), stem)
        }
        MangleContext::Constructor { class } => {
            let stem = format!("new_{class}{suffix}");
            (format!("swigf_{stem}"), stem)
        }
        MangleContext::Release { class } => (format!("swigf_{class}_release"), format!("delete_{class}")),
        MangleContext::Assign { class } => (format!("swigf_{class}_op_assign__"), format!("assign_{class}")),
    };
    let specific = truncate_ident(&specific);
    let c_symbol = match ctx {
        MangleContext::Free => format!("_wrap_{module}_{specific}"),
        _ => format!("_wrap_{module}_{stem}"),
    };
    Mangled { specific, c_symbol, interface: truncate_ident(&format!("swigc_{stem}")) }
}

/// Case-insensitive identifier registry for one Fortran scope.
#[derive(Clone, Debug, Default)]
pub struct NameTable {
    used: BTreeMap<String, String>,
}

impl NameTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn reserve(&mut self, name: &str) {
        self.used.insert(name.to_ascii_lowercase(), name.to_string());
    }

    pub fn contains(&self, name: &str) -> bool {
        self.used.contains_key(&name.to_ascii_lowercase())
    }

    /// Claim `wanted`, appending `_1`, `_2`... on a case-insensitive clash.
    /// Returns the granted name and whether it differs from `wanted`.
    pub fn claim(&mut self, wanted: &str) -> (String, bool) {
        if !self.contains(wanted) {
            self.reserve(wanted);
            return (wanted.to_string(), false);
        }
        for n in 1.. {
            let tail = format!("_{n}");
            let stem = if wanted.len() + tail.len() > MAX_IDENT { &wanted[..MAX_IDENT - tail.len()] } else { wanted };
            let cand = format!("{stem}{tail}");
            if !self.contains(&cand) {
                self.reserve(&cand);
                return (cand, true);
            }
        }
        unreachable!()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.used.values().map(String::as_str)
    }
}
