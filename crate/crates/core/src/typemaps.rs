//! Typemaps: how each C++ type crosses the language boundary.
//!
//! A [`TypemapBinding`] pairs a C++ type with its bridge representation (the
//! ISO C form the value takes inside the `extern "C"` shim) and the code
//! snippets inserted on each side of the crossing. Snippets are templates
//! with `$`-placeholders that the emitters substitute:
//!
//! | placeholder | side    | meaning                                         |
//! |-------------|---------|-------------------------------------------------|
//! | `$input`    | Fortran | the user-facing dummy argument                  |
//! | `$farg`     | both    | the bridge value (Fortran local / C parameter)  |
//! | `$result`   | Fortran | the user-facing function result                 |
//! | `$fresult`  | both    | the bridge value of the result                  |
//! | `$arg`      | C       | a C++ temporary derived from `$farg`            |
//! | `$call`     | C       | the C++ call expression (return bindings only)  |
//! | `$symname`  | C       | the wrapped declaration, for error messages     |

use std::collections::{BTreeMap, BTreeSet};

use crate::parser::ast::{BaseType, Fundamental, Indirection, RefKind, TypeExpr};

/// Ownership bit: the handle owns the C++ object and must delete it.
pub const FLAG_OWN: u32 = 0x01;
/// The handle is a temporary whose ownership transfers on assignment.
pub const FLAG_RVALUE: u32 = 0x02;
/// The object must not be mutated through this handle.
pub const FLAG_CONST: u32 = 0x04;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BridgeRepr {
    /// Interoperable scalar passed by value.
    Scalar(Fundamental),
    /// Address of an interoperable scalar (`type(C_PTR)`).
    ScalarRef(Fundamental),
    /// Untyped address (`void*`, pointers returned from C++).
    RawPointer,
    /// Character data as {address, length}.
    StringSpan,
    /// Contiguous array as {address of first element, element count}.
    ArraySpan(Fundamental),
    /// Proxy handle: {object address, ownership flags}.
    OpaqueHandle,
    /// C function address.
    Funptr,
    /// Enumeration value as a C int.
    EnumInt,
    /// Fortran MPI communicator handle.
    MpiFint,
    /// A `%fortranbindc_type` struct, layout-compatible on both sides.
    PodStruct(String),
}

impl BridgeRepr {
    /// True when the representation is one of the ISO C interoperable forms.
    pub fn is_interoperable(&self) -> bool {
        match self {
            BridgeRepr::Scalar(f) | BridgeRepr::ScalarRef(f) | BridgeRepr::ArraySpan(f) => fortran_scalar(*f).is_some(),
            _ => true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Param,
    Return,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Intent {
    In,
    InOut,
}

impl Intent {
    pub fn as_str(self) -> &'static str {
        match self {
            Intent::In => "in",
            Intent::InOut => "inout",
        }
    }
}

/// Support code a binding depends on; each is emitted once per module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Helper {
    ArrayWrapper,
    ClassWrapper,
    StringIn,
    StringOut,
    HandleCheck,
    Funptr,
    Vector,
    Mpi,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Snippets {
    pub fortran_pre: String,
    pub fortran_post: String,
    pub c_pre: String,
    /// Argument expression(s) for the C++ call; parameters only.
    pub c_call_expr: String,
    pub c_post: String,
}

/// Fortran-side signature of a callback type, for an abstract interface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CallbackSig {
    pub params: Vec<String>,
    pub result: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypemapBinding {
    pub cpp_type: TypeExpr,
    pub bridge: BridgeRepr,
    pub role: Role,
    /// Declaration attributes of the user-facing dummy or result (without name or intent).
    pub fortran_decl: String,
    pub intent: Option<Intent>,
    /// Fortran type of the bridge value.
    pub fortran_bridge: String,
    /// Bridge parameter is passed by value (otherwise by reference).
    pub bridge_by_value: bool,
    /// C type of the bridge in the shim signature.
    pub c_bridge_type: String,
    /// C initializer producing a zero bridge value (returns only).
    pub c_zero: String,
    /// Extra Fortran local declarations; `$farg` is substituted.
    pub fortran_temps: Vec<String>,
    pub snippets: Snippets,
    /// Number of additional C++ parameters absorbed by this one.
    pub consumes_extra_params: usize,
    pub helpers: BTreeSet<Helper>,
    /// Module-level derived types the bind(C) interface must `import`.
    pub imports: Vec<String>,
    /// Fortran derived type a class-typed dummy or result refers to.
    pub proxy_type: Option<String>,
    pub callback: Option<CallbackSig>,
}

/// Why a type has no binding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unmapped(pub String);

impl std::fmt::Display for Unmapped {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type MapResult = Result<TypemapBinding, Unmapped>;

/// What the semantic pass knows about a wrapped class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    /// Fortran derived-type name.
    pub fortran_name: String,
    /// C++ spelling, e.g. `Box<int>`.
    pub cpp_name: String,
}

/// Type environment consulted during resolution.
#[derive(Clone, Debug, Default)]
pub struct TypeEnv {
    /// Keyed by C++ base spelling (with template arguments).
    pub classes: BTreeMap<String, ClassInfo>,
    pub enums: BTreeSet<String>,
    /// `%fortranbindc_type` structs: C++ name to Fortran name.
    pub pod_structs: BTreeMap<String, String>,
    pub typedefs: BTreeMap<String, TypeExpr>,
}

impl TypeEnv {
    /// Follow typedef chains, combining cv and indirection levels.
    pub fn resolve_typedefs(&self, ty: &TypeExpr) -> TypeExpr {
        let mut cur = ty.clone();
        for _ in 0..32 {
            let Some(name) = cur.named_base() else { break };
            if !cur.template_args.is_empty() {
                break;
            }
            let Some(target) = self.typedefs.get(name) else { break };
            let mut next = target.clone();
            next.is_const |= cur.is_const && cur.pointers == 0;
            next.pointers = next.pointers.saturating_add(cur.pointers);
            if cur.reference != RefKind::None {
                next.reference = cur.reference;
            }
            cur = next;
        }
        cur
    }

    fn class_of(&self, ty: &TypeExpr) -> Option<&ClassInfo> {
        self.classes.get(&ty.strip_indirection().with_cv(false).base_spelling())
    }
}

trait WithCv {
    fn with_cv(self, is_const: bool) -> Self;
}

impl WithCv for TypeExpr {
    fn with_cv(mut self, is_const: bool) -> Self {
        self.is_const = is_const;
        self
    }
}

/// Fortran type spelling and ISO_C_BINDING kind for an interoperable fundamental.
pub fn fortran_scalar(f: Fundamental) -> Option<(&'static str, &'static str)> {
    use Fundamental::*;
    Some(match f {
        Void | LongDouble => return None,
        Bool => ("logical", "C_BOOL"),
        Char => ("character", "C_CHAR"),
        SignedChar | UnsignedChar => ("integer", "C_SIGNED_CHAR"),
        Short | UnsignedShort => ("integer", "C_SHORT"),
        Int | UnsignedInt => ("integer", "C_INT"),
        Long | UnsignedLong => ("integer", "C_LONG"),
        LongLong | UnsignedLongLong => ("integer", "C_LONG_LONG"),
        SizeT => ("integer", "C_SIZE_T"),
        PtrdiffT => ("integer", "C_INTPTR_T"),
        Int8 | UInt8 => ("integer", "C_INT8_T"),
        Int16 | UInt16 => ("integer", "C_INT16_T"),
        Int32 | UInt32 => ("integer", "C_INT32_T"),
        Int64 | UInt64 => ("integer", "C_INT64_T"),
        Float => ("real", "C_FLOAT"),
        Double => ("real", "C_DOUBLE"),
    })
}

/// `real(C_DOUBLE)`-style declaration for an interoperable fundamental.
pub fn fortran_type_decl(f: Fundamental) -> Option<String> {
    fortran_scalar(f).map(|(ty, kind)| match ty {
        "character" => format!("character(kind={kind})"),
        _ => format!("{ty}({kind})"),
    })
}

/// Size in bytes of each integer kind on an LP64 target; used to decide
/// whether two Fortran specifics are distinguishable.
pub fn lp64_kind_bytes(kind: &str) -> u8 {
    match kind {
        "C_SIGNED_CHAR" | "C_INT8_T" | "C_CHAR" | "C_BOOL" => 1,
        "C_SHORT" | "C_INT16_T" => 2,
        "C_INT" | "C_INT32_T" | "C_FLOAT" => 4,
        _ => 8,
    }
}

fn base(cpp_type: &TypeExpr, bridge: BridgeRepr, role: Role) -> TypemapBinding {
    TypemapBinding {
        cpp_type: cpp_type.clone(),
        bridge,
        role,
        fortran_decl: String::new(),
        intent: None,
        fortran_bridge: String::new(),
        bridge_by_value: true,
        c_bridge_type: String::new(),
        c_zero: String::new(),
        fortran_temps: Vec::new(),
        snippets: Snippets::default(),
        consumes_extra_params: 0,
        helpers: BTreeSet::new(),
        imports: Vec::new(),
        proxy_type: None,
        callback: None,
    }
}

fn unmapped(msg: impl Into<String>) -> Unmapped {
    Unmapped(msg.into())
}

/// Scalar binding for a fundamental C type passed or returned by value.
pub fn map_fundamental(t: &TypeExpr, role: Role) -> MapResult {
    let f = t.as_fundamental().ok_or_else(|| unmapped(format!("`{t}` is not a fundamental type")))?;
    if f == Fundamental::Bool {
        return map_bool(t, role);
    }
    let decl = fortran_type_decl(f)
        .ok_or_else(|| unmapped(format!("`{}` has no interoperable Fortran kind", f.spelling())))?;
    let mut b = base(t, BridgeRepr::Scalar(f), role);
    b.fortran_decl = decl.clone();
    b.fortran_bridge = decl;
    b.c_bridge_type = f.spelling().to_string();
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = $input".into();
            b.snippets.c_call_expr = "$farg".into();
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = $fresult".into();
            b.snippets.c_post = "$fresult = $call;".into();
            b.c_zero = format!("{} $fresult = 0;", f.spelling());
        }
    }
    Ok(b)
}

/// C++ `bool` crosses as a C int: C++ produces 0/1 and any nonzero value
/// reads as Fortran `.true.`.
pub fn map_bool(t: &TypeExpr, role: Role) -> MapResult {
    let mut b = base(t, BridgeRepr::Scalar(Fundamental::Int), role);
    b.fortran_decl = "logical".into();
    b.fortran_bridge = "integer(C_INT)".into();
    b.c_bridge_type = "int".into();
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = merge(1_C_INT, 0_C_INT, $input)".into();
            b.snippets.c_call_expr = "($farg != 0)".into();
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = ($fresult /= 0)".into();
            b.snippets.c_post = "$fresult = ($call) ? 1 : 0;".into();
            b.c_zero = "int $fresult = 0;".into();
        }
    }
    Ok(b)
}

/// Fortran truth value of a C int crossing the boundary.
pub fn fortran_truth(value: i32) -> bool {
    value != 0
}

/// C int encoding of a Fortran logical crossing the boundary.
pub fn c_encoding(truth: bool) -> i32 {
    if truth {
        1
    } else {
        0
    }
}

fn is_std_string(t: &TypeExpr) -> bool {
    matches!(t.named_base(), Some("std::string" | "string")) && t.template_args.is_empty()
}

fn is_char_pointer(t: &TypeExpr) -> bool {
    t.as_fundamental() == Some(Fundamental::Char) && t.pointers == 1 && t.reference == RefKind::None
}

/// True for the types [`map_string`] accepts.
pub fn is_string_type(t: &TypeExpr) -> bool {
    is_char_pointer(t) || (is_std_string(t) && t.indirection().is_some())
}

/// Strings cross as {address, length} spans. Inbound data is copied into a
/// null-terminated temporary; returned data is heap-copied by the shim and
/// released through the generated free entry point after Fortran copies it.
pub fn map_string(t: &TypeExpr, role: Role) -> MapResult {
    if !is_string_type(t) {
        return Err(unmapped(format!("`{t}` is not a string type")));
    }
    let mut b = base(t, BridgeRepr::StringSpan, role);
    b.fortran_bridge = "type(SwigArrayWrapper)".into();
    b.bridge_by_value = false;
    b.helpers.insert(Helper::ArrayWrapper);
    b.imports.push("SwigArrayWrapper".into());
    match role {
        Role::Param => {
            b.helpers.insert(Helper::StringIn);
            b.fortran_decl = "character(kind=C_CHAR, len=*)".into();
            b.intent = Some(Intent::In);
            b.fortran_temps.push("character(kind=C_CHAR), dimension(:), allocatable, target :: $farg_chars".into());
            b.snippets.fortran_pre = "call SWIG_string_to_chararray($input, $farg_chars, $farg)".into();
            b.c_bridge_type = "SwigArrayWrapper *".into();
            if is_char_pointer(t) {
                let cast = if t.is_const { "const char *" } else { "char *" };
                b.snippets.c_call_expr = format!("static_cast<{cast}>($farg->data)");
            } else {
                b.snippets.c_pre = "std::string $arg(static_cast<const char *>($farg->data), $farg->size);".into();
                b.snippets.c_call_expr = if t.pointers == 1 { "&$arg".into() } else { "$arg".into() };
            }
        }
        Role::Return => {
            b.helpers.insert(Helper::StringOut);
            b.fortran_decl = "character(kind=C_CHAR, len=:), allocatable".into();
            b.snippets.fortran_post =
                "call SWIG_chararray_to_string($fresult, $result)\ncall SWIG_free($fresult%data)".into();
            b.c_bridge_type = "SwigArrayWrapper".into();
            b.c_zero = "SwigArrayWrapper $fresult = SwigArrayWrapper_uninitialized();".into();
            b.snippets.c_post = if is_char_pointer(t) {
                "$fresult = SWIG_store_cstring($call);".into()
            } else if t.pointers == 1 {
                "{\n  const std::string *$arg = $call;\n  $fresult = $arg ? SWIG_store_string($arg->data(), $arg->size()) : SWIG_store_string(NULL, 0);\n}".into()
            } else {
                "{\n  const std::string &$arg = $call;\n  $fresult = SWIG_store_string($arg.data(), $arg.size());\n}"
                    .into()
            };
        }
    }
    Ok(b)
}

/// Byte layout of a Fortran string after the inbound string snippet: the
/// characters followed by exactly one terminator, and the span length.
pub fn marshal_string(s: &str) -> (Vec<u8>, usize) {
    let mut buf = Vec::with_capacity(s.len() + 1);
    buf.extend_from_slice(s.as_bytes());
    buf.push(0);
    (buf, s.len())
}

/// Fuse a (pointer, size) parameter pair into one assumed-shape array.
pub fn map_array_span(ptr: &TypeExpr, size: &TypeExpr) -> MapResult {
    let elem = ptr.as_fundamental().filter(|_| ptr.pointers == 1 && ptr.reference == RefKind::None);
    let Some(elem) = elem else {
        return Err(unmapped(format!("`{ptr}` is not a pointer to a fundamental type")));
    };
    let size_kind = size.as_fundamental().filter(|f| f.is_integer() && size.indirection() == Some(Indirection::Value));
    let Some(size_kind) = size_kind else {
        return Err(unmapped(format!("`{size}` is not an integer size")));
    };
    let decl = fortran_type_decl(elem)
        .ok_or_else(|| unmapped(format!("`{}` elements are not interoperable", elem.spelling())))?;
    let mut b = base(ptr, BridgeRepr::ArraySpan(elem), Role::Param);
    b.fortran_decl = format!("{decl}, dimension(:), target");
    b.intent = Some(if ptr.is_const { Intent::In } else { Intent::InOut });
    b.fortran_bridge = "type(SwigArrayWrapper)".into();
    b.bridge_by_value = false;
    b.c_bridge_type = "SwigArrayWrapper *".into();
    b.snippets.fortran_pre = array_span_pre();
    let cast = if ptr.is_const { format!("const {}", elem.spelling()) } else { elem.spelling().to_string() };
    b.snippets.c_call_expr =
        format!("static_cast<{cast} *>($farg->data), static_cast<{}>($farg->size)", size_kind.spelling());
    b.consumes_extra_params = 1;
    b.helpers.insert(Helper::ArrayWrapper);
    b.imports.push("SwigArrayWrapper".into());
    Ok(b)
}

fn array_span_pre() -> String {
    [
        "if (size($input) > 0) then",
        "  $farg%data = c_loc($input(1))",
        "  $farg%size = size($input, kind=C_SIZE_T)",
        "else",
        "  $farg%data = C_NULL_PTR",
        "  $farg%size = 0_C_SIZE_T",
        "end if",
    ]
    .join("\n")
}

/// `std::vector<T>` inputs reuse the array span; the shim copies into a vector.
pub fn map_vector(t: &TypeExpr, role: Role) -> MapResult {
    let elem = t
        .template_args
        .first()
        .and_then(|a| a.as_fundamental().filter(|_| a.indirection() == Some(Indirection::Value)));
    let Some(elem) = elem.filter(|_| t.template_args.len() == 1) else {
        return Err(unmapped(format!("`{t}` is not a vector of fundamental values")));
    };
    if role == Role::Return {
        return Err(unmapped("returning std::vector is not supported"));
    }
    let by_const_ref = t.reference == RefKind::LValue && t.is_const && t.pointers == 0;
    if !(by_const_ref || t.indirection() == Some(Indirection::Value)) {
        return Err(unmapped(format!("`{t}` must be passed by value or const reference")));
    }
    let decl = fortran_type_decl(elem)
        .ok_or_else(|| unmapped(format!("`{}` elements are not interoperable", elem.spelling())))?;
    let mut b = base(t, BridgeRepr::ArraySpan(elem), Role::Param);
    b.fortran_decl = format!("{decl}, dimension(:), target");
    b.intent = Some(Intent::In);
    b.fortran_bridge = "type(SwigArrayWrapper)".into();
    b.bridge_by_value = false;
    b.c_bridge_type = "SwigArrayWrapper *".into();
    b.snippets.fortran_pre = array_span_pre();
    let e = elem.spelling();
    b.snippets.c_pre = format!(
        "std::vector<{e}> $arg(static_cast<const {e} *>($farg->data), static_cast<const {e} *>($farg->data) + $farg->size);"
    );
    b.snippets.c_call_expr = "$arg".into();
    b.helpers.extend([Helper::ArrayWrapper, Helper::Vector]);
    b.imports.push("SwigArrayWrapper".into());
    Ok(b)
}

/// Requirements a handle must meet before the shim dereferences it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HandleCheck {
    pub nonnull: bool,
    pub mutable: bool,
}

/// Const/null compatibility of a class-typed parameter, following C++'s
/// own binding rules for values, references and pointers.
pub fn handle_requirements(t: &TypeExpr) -> Option<HandleCheck> {
    match t.indirection()? {
        Indirection::Value => Some(HandleCheck { nonnull: true, mutable: false }),
        Indirection::Reference => Some(HandleCheck { nonnull: true, mutable: !t.is_const }),
        Indirection::Pointer => Some(HandleCheck { nonnull: false, mutable: !t.is_const }),
    }
}

/// Whether a handle with `flags` (and nullness) may be passed where `check` applies.
pub fn handle_accepted(check: HandleCheck, is_null: bool, flags: u32) -> bool {
    if is_null {
        return !check.nonnull;
    }
    !(check.mutable && flags & FLAG_CONST != 0)
}

fn check_flags_expr(check: HandleCheck) -> String {
    match (check.nonnull, check.mutable) {
        (true, true) => "SWIG_REQUIRE_NONNULL | SWIG_REQUIRE_MUTABLE".into(),
        (true, false) => "SWIG_REQUIRE_NONNULL".into(),
        (false, true) => "SWIG_REQUIRE_MUTABLE".into(),
        (false, false) => "0".into(),
    }
}

/// Proxy handle binding for a wrapped class by value, pointer or reference.
pub fn map_class(t: &TypeExpr, info: &ClassInfo, role: Role) -> MapResult {
    let ind = t.indirection().ok_or_else(|| unmapped(format!("`{t}` has too many levels of indirection")))?;
    if t.reference == RefKind::RValue {
        return Err(unmapped("rvalue references are not supported"));
    }
    let mut b = base(t, BridgeRepr::OpaqueHandle, role);
    b.fortran_bridge = "type(SwigClassWrapper)".into();
    b.helpers.insert(Helper::ClassWrapper);
    b.imports.push("SwigClassWrapper".into());
    b.proxy_type = Some(info.fortran_name.clone());
    let cpp = &info.cpp_name;
    match role {
        Role::Param => {
            let check = handle_requirements(t).expect("indirection checked above");
            b.fortran_decl = format!("class({})", info.fortran_name);
            b.intent = Some(Intent::In);
            b.bridge_by_value = false;
            b.c_bridge_type = "SwigClassWrapper *".into();
            b.helpers.insert(Helper::HandleCheck);
            b.snippets.fortran_pre = "$farg = $input%swigdata".into();
            let cv = if t.is_const { "const " } else { "" };
            b.snippets.c_pre = format!(
                "{cv}{cpp} *$arg = static_cast<{cv}{cpp} *>(SWIG_check_handle($farg, \"{cpp}\", \"$symname\", {}));",
                check_flags_expr(check)
            );
            b.snippets.c_call_expr = match ind {
                Indirection::Pointer => "$arg".into(),
                _ => "*$arg".into(),
            };
        }
        Role::Return => {
            b.fortran_decl = format!("type({})", info.fortran_name);
            b.c_bridge_type = "SwigClassWrapper".into();
            b.c_zero = "SwigClassWrapper $fresult = SwigClassWrapper_uninitialized();".into();
            b.snippets.fortran_post = "$result%swigdata = $fresult".into();
            b.snippets.c_post = match ind {
                Indirection::Value => {
                    format!("$fresult.cptr = new {cpp}($call);\n$fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;")
                }
                Indirection::Pointer | Indirection::Reference => {
                    let addr = if ind == Indirection::Pointer { "$call" } else { "&($call)" };
                    let ptr = if t.is_const { format!("const_cast<{cpp} *>({addr})") } else { addr.to_string() };
                    let flags = if t.is_const { "SWIG_MEM_CONST" } else { "0" };
                    format!("$fresult.cptr = {ptr};\n$fresult.cmemflags = $fresult.cptr ? {flags} : 0;")
                }
            };
        }
    }
    Ok(b)
}

/// Fresh object returned from a wrapped constructor.
pub fn constructor_return(info: &ClassInfo) -> TypemapBinding {
    let t = TypeExpr::named(info.cpp_name.clone());
    let mut b = map_class(&t, info, Role::Return).expect("value class return always maps");
    b.snippets.c_post = "$fresult.cptr = $call;\n$fresult.cmemflags = SWIG_MEM_OWN | SWIG_MEM_RVALUE;".into();
    b
}

/// Receiver binding for a member function.
pub fn receiver(info: &ClassInfo, const_method: bool) -> TypemapBinding {
    let mut t = TypeExpr::named(info.cpp_name.clone()).reference();
    t.is_const = const_method;
    let mut b = map_class(&t, info, Role::Param).expect("reference class param always maps");
    b.snippets.c_call_expr = "$arg".into();
    b
}

fn callback_decl(t: &TypeExpr, env: &TypeEnv) -> Option<String> {
    let t = env.resolve_typedefs(t);
    if t.pointers > 0 || matches!(t.base, BaseType::FnPtr { .. }) {
        if t.reference != RefKind::None {
            return None;
        }
        return Some(if matches!(t.base, BaseType::FnPtr { .. }) && t.pointers == 0 {
            "type(C_FUNPTR), value".into()
        } else {
            "type(C_PTR), value".into()
        });
    }
    if let Some(name) = t.named_base() {
        if env.enums.contains(name) && t.reference == RefKind::None {
            return Some("integer(C_INT), value".into());
        }
        return None;
    }
    let f = t.as_fundamental()?;
    let decl = fortran_type_decl(f)?;
    match t.reference {
        RefKind::None => Some(format!("{decl}, value")),
        RefKind::LValue => Some(decl),
        RefKind::RValue => None,
    }
}

/// Function pointers cross as C function addresses; the Fortran caller
/// supplies one with `c_funloc`.
pub fn map_funptr(t: &TypeExpr, env: &TypeEnv, role: Role) -> MapResult {
    let resolved = env.resolve_typedefs(t);
    let BaseType::FnPtr { ret, params } = &resolved.base else {
        return Err(unmapped(format!("`{t}` is not a function pointer")));
    };
    if resolved.pointers != 0 || resolved.reference != RefKind::None {
        return Err(unmapped(format!("`{t}` has too many levels of indirection")));
    }
    let mut sig = CallbackSig { params: Vec::new(), result: None };
    for p in params {
        let d =
            callback_decl(p, env).ok_or_else(|| unmapped(format!("callback parameter `{p}` is not interoperable")))?;
        sig.params.push(d);
    }
    if !ret.is_void() {
        let d =
            callback_decl(ret, env).ok_or_else(|| unmapped(format!("callback result `{ret}` is not interoperable")))?;
        sig.result = Some(d.trim_end_matches(", value").to_string());
    }
    let spelled = t.declare("");
    let mut b = base(t, BridgeRepr::Funptr, role);
    b.fortran_decl = "type(C_FUNPTR)".into();
    b.fortran_bridge = "type(C_FUNPTR)".into();
    b.c_bridge_type = "SWIG_funptr".into();
    b.helpers.insert(Helper::Funptr);
    b.callback = Some(sig);
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = $input".into();
            b.snippets.c_call_expr = format!("reinterpret_cast<{spelled}>($farg)");
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = $fresult".into();
            b.snippets.c_post = "$fresult = reinterpret_cast<SWIG_funptr>($call);".into();
            b.c_zero = "SWIG_funptr $fresult = 0;".into();
        }
    }
    Ok(b)
}

/// `MPI_Comm` crosses as the Fortran integer handle.
pub fn map_mpi_comm(t: &TypeExpr, role: Role) -> MapResult {
    if t.named_base() != Some("MPI_Comm") || !t.template_args.is_empty() {
        return Err(unmapped(format!("`{t}` is not MPI_Comm")));
    }
    let by_value =
        t.indirection() == Some(Indirection::Value) || (t.indirection() == Some(Indirection::Reference) && t.is_const);
    if !by_value {
        return Err(unmapped("MPI_Comm must be passed by value or const reference"));
    }
    let mut b = base(t, BridgeRepr::MpiFint, role);
    b.fortran_decl = "integer".into();
    b.fortran_bridge = "integer(C_INT)".into();
    b.c_bridge_type = "int".into();
    b.helpers.insert(Helper::Mpi);
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = int($input, C_INT)".into();
            b.snippets.c_call_expr = "MPI_Comm_f2c(static_cast<MPI_Fint>($farg))".into();
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = int($fresult)".into();
            b.snippets.c_post = "$fresult = static_cast<int>(MPI_Comm_c2f($call));".into();
            b.c_zero = "int $fresult = 0;".into();
        }
    }
    Ok(b)
}

fn map_enum(t: &TypeExpr, role: Role) -> MapResult {
    let by_value =
        t.indirection() == Some(Indirection::Value) || (t.indirection() == Some(Indirection::Reference) && t.is_const);
    if !by_value {
        return Err(unmapped(format!("`{t}` must be passed by value")));
    }
    let name = t.base_spelling();
    let mut b = base(t, BridgeRepr::EnumInt, role);
    b.fortran_decl = "integer(C_INT)".into();
    b.fortran_bridge = "integer(C_INT)".into();
    b.c_bridge_type = "int".into();
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = int($input, C_INT)".into();
            b.snippets.c_call_expr = format!("static_cast<{name}>($farg)");
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = $fresult".into();
            b.snippets.c_post = "$fresult = static_cast<int>($call);".into();
            b.c_zero = "int $fresult = 0;".into();
        }
    }
    Ok(b)
}

fn map_pod(t: &TypeExpr, fortran_name: &str, role: Role) -> MapResult {
    let cpp = t.base_spelling();
    let ind = t.indirection().ok_or_else(|| unmapped(format!("`{t}` has too many levels of indirection")))?;
    let mut b = base(t, BridgeRepr::PodStruct(fortran_name.to_string()), role);
    b.imports.push(fortran_name.to_string());
    match (role, ind) {
        (Role::Param, Indirection::Value) | (Role::Param, Indirection::Reference)
            if t.is_const || ind == Indirection::Value =>
        {
            b.fortran_decl = format!("type({fortran_name})");
            b.intent = Some(Intent::In);
            b.fortran_bridge = format!("type({fortran_name})");
            b.bridge_by_value = false;
            b.c_bridge_type = format!("{cpp} *");
            b.snippets.fortran_pre = "$farg = $input".into();
            b.snippets.c_call_expr = "*$farg".into();
        }
        (Role::Param, _) => {
            b.bridge = BridgeRepr::PodStruct(fortran_name.to_string());
            b.fortran_decl = format!("type({fortran_name}), target");
            b.intent = Some(if t.is_const { Intent::In } else { Intent::InOut });
            b.fortran_bridge = "type(C_PTR)".into();
            b.c_bridge_type = "void *".into();
            b.imports.clear();
            b.snippets.fortran_pre = "$farg = c_loc($input)".into();
            let cv = if t.is_const { "const " } else { "" };
            b.snippets.c_call_expr = match ind {
                Indirection::Pointer => format!("static_cast<{cv}{cpp} *>($farg)"),
                _ => format!("*static_cast<{cv}{cpp} *>($farg)"),
            };
        }
        (Role::Return, Indirection::Value) | (Role::Return, Indirection::Reference) => {
            b.fortran_decl = format!("type({fortran_name})");
            b.fortran_bridge = format!("type({fortran_name})");
            b.c_bridge_type = cpp.clone();
            b.snippets.fortran_post = "$result = $fresult".into();
            b.snippets.c_post = "$fresult = $call;".into();
            b.c_zero = format!("{cpp} $fresult = {cpp}();");
        }
        (Role::Return, Indirection::Pointer) => return map_raw_pointer(t, role),
    }
    Ok(b)
}

fn map_raw_pointer(t: &TypeExpr, role: Role) -> MapResult {
    let mut b = base(t, BridgeRepr::RawPointer, role);
    b.fortran_decl = "type(C_PTR)".into();
    b.fortran_bridge = "type(C_PTR)".into();
    b.c_bridge_type = "void *".into();
    match role {
        Role::Param => {
            b.intent = Some(Intent::In);
            b.snippets.fortran_pre = "$farg = $input".into();
            let target = t.declare("");
            b.snippets.c_call_expr = if t.as_fundamental() == Some(Fundamental::Void) {
                "$farg".into()
            } else {
                format!("static_cast<{target}>($farg)")
            };
        }
        Role::Return => {
            b.snippets.fortran_post = "$result = $fresult".into();
            b.snippets.c_post = "$fresult = const_cast<void *>(static_cast<const void *>($call));".into();
            b.c_zero = "void *$fresult = NULL;".into();
        }
    }
    Ok(b)
}

fn map_scalar_ref(t: &TypeExpr, f: Fundamental) -> MapResult {
    let decl = fortran_type_decl(f)
        .ok_or_else(|| unmapped(format!("`{}` has no interoperable Fortran kind", f.spelling())))?;
    let mut b = base(t, BridgeRepr::ScalarRef(f), Role::Param);
    b.fortran_decl = format!("{decl}, target");
    b.intent = Some(if t.is_const { Intent::In } else { Intent::InOut });
    b.fortran_bridge = "type(C_PTR)".into();
    b.c_bridge_type = "void *".into();
    b.snippets.fortran_pre = "$farg = c_loc($input)".into();
    let cv = if t.is_const { "const " } else { "" };
    b.snippets.c_call_expr = if t.pointers == 1 {
        format!("static_cast<{cv}{} *>($farg)", f.spelling())
    } else {
        format!("*static_cast<{cv}{} *>($farg)", f.spelling())
    };
    Ok(b)
}

/// Resolve any supported C++ type to its binding.
pub fn resolve(t: &TypeExpr, env: &TypeEnv, role: Role) -> MapResult {
    let r = env.resolve_typedefs(t);
    if r.reference == RefKind::RValue {
        return Err(unmapped(format!("rvalue reference `{t}` is not supported")));
    }
    if matches!(r.base, BaseType::FnPtr { .. }) {
        return map_funptr(t, env, role);
    }
    if is_string_type(&r) {
        return map_string(&r, role);
    }
    let Some(ind) = r.indirection() else {
        return Err(unmapped(format!("`{t}` has more than one level of indirection")));
    };
    if r.is_void() {
        return Err(unmapped("void has no value"));
    }
    match &r.base {
        BaseType::Fundamental(f) => {
            let f = *f;
            match (ind, role) {
                (Indirection::Value, _) => map_fundamental(&r, role),
                (Indirection::Reference, Role::Return) => map_fundamental(&r.strip_indirection(), role).map(|mut b| {
                    b.cpp_type = r.clone();
                    b
                }),
                (Indirection::Reference, Role::Param) if r.is_const => map_fundamental(&r.strip_indirection(), role)
                    .map(|mut b| {
                        b.cpp_type = r.clone();
                        b
                    }),
                (Indirection::Pointer, Role::Param) if f == Fundamental::Void => map_raw_pointer(&r, role),
                (Indirection::Pointer, Role::Return) => map_raw_pointer(&r, role),
                (_, Role::Param) => {
                    if f == Fundamental::Bool {
                        return Err(unmapped("pointers and references to bool are not supported"));
                    }
                    map_scalar_ref(&r, f)
                }
            }
        }
        BaseType::Named(name) => {
            if name == "MPI_Comm" {
                return map_mpi_comm(&r, role);
            }
            if matches!(name.as_str(), "std::vector" | "vector") {
                return map_vector(&r, role);
            }
            if matches!(name.as_str(), "std::shared_ptr" | "shared_ptr") {
                return map_shared_ptr(&r, env, role);
            }
            if env.enums.contains(name) {
                return map_enum(&r, role);
            }
            if let Some(fname) = env.pod_structs.get(name) {
                return map_pod(&r, fname, role);
            }
            if let Some(info) = env.class_of(&r) {
                return map_class(&r, info, role);
            }
            Err(unmapped(format!("unknown type `{t}`")))
        }
        BaseType::Value(v) => Err(unmapped(format!("`{v}` is not a type"))),
        BaseType::FnPtr { .. } => unreachable!("handled above"),
    }
}

/// `std::shared_ptr<T>` arguments pass a non-owning view of a proxy object.
fn map_shared_ptr(t: &TypeExpr, env: &TypeEnv, role: Role) -> MapResult {
    if role == Role::Return {
        return Err(unmapped("returning std::shared_ptr is not supported"));
    }
    let by_value =
        t.indirection() == Some(Indirection::Value) || (t.indirection() == Some(Indirection::Reference) && t.is_const);
    let inner = t.template_args.first().filter(|_| t.template_args.len() == 1 && by_value);
    let Some(inner) = inner else {
        return Err(unmapped(format!("`{t}` must be passed by value or const reference")));
    };
    let info = env.class_of(inner).ok_or_else(|| unmapped(format!("`{inner}` is not a wrapped class")))?;
    let mut as_ptr = inner.clone().pointer();
    as_ptr.is_const = inner.is_const;
    let mut b = map_class(&as_ptr, info, Role::Param)?;
    b.cpp_type = t.clone();
    let cpp = if inner.is_const { format!("const {}", info.cpp_name) } else { info.cpp_name.clone() };
    b.snippets.c_call_expr = format!("std::shared_ptr<{cpp} >($arg, SWIG_null_deleter())");
    Ok(b)
}

/// Expose a 0-based C++ integer as 1-based on the Fortran side.
pub fn apply_index_offset(mut b: TypemapBinding) -> Result<TypemapBinding, Unmapped> {
    let integer = matches!(b.bridge, BridgeRepr::Scalar(f) if f.is_integer() && f != Fundamental::Char)
        && b.fortran_decl.starts_with("integer");
    if !integer {
        return Err(unmapped(format!("index offset requires an integer, not `{}`", b.cpp_type)));
    }
    match b.role {
        Role::Param => b.snippets.fortran_pre = "$farg = $input - 1".into(),
        Role::Return => b.snippets.fortran_post = "$result = $fresult + 1".into(),
    }
    Ok(b)
}

/// Integer value C++ receives for a Fortran-side index.
pub fn index_to_cpp(fortran_index: i64) -> i64 {
    fortran_index - 1
}

/// Integer value Fortran receives for a C++-side index.
pub fn index_to_fortran(cpp_index: i64) -> i64 {
    cpp_index + 1
}

/// Closed set of C types allowed in an extern-C shim signature.
pub fn is_bridge_c_type(c_type: &str, pod_structs: &BTreeSet<String>) -> bool {
    const FIXED: &[&str] = &[
        "void",
        "void *",
        "SwigArrayWrapper",
        "SwigArrayWrapper *",
        "SwigClassWrapper",
        "SwigClassWrapper *",
        "SWIG_funptr",
    ];
    use Fundamental::*;
    #[rustfmt::skip]
    const SCALARS: &[Fundamental] = &[
        Bool, Char, SignedChar, UnsignedChar, Short, UnsignedShort, Int, UnsignedInt, Long, UnsignedLong, LongLong,
        UnsignedLongLong, Float, Double, SizeT, PtrdiffT, Int8, Int16, Int32, Int64, UInt8, UInt16, UInt32, UInt64,
    ];
    if FIXED.contains(&c_type) || SCALARS.iter().any(|f| f.spelling() == c_type) {
        return true;
    }
    let bare = c_type.trim_end_matches(" *");
    pod_structs.contains(bare)
}
