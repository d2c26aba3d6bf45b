//! Syntax tree for interface files, plus a pretty-printer whose output
//! re-parses to a structurally identical tree.

use std::fmt::{self, Write};

use crate::diag::Span;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Fundamental {
    Void,
    Bool,
    Char,
    SignedChar,
    UnsignedChar,
    Short,
    UnsignedShort,
    Int,
    UnsignedInt,
    Long,
    UnsignedLong,
    LongLong,
    UnsignedLongLong,
    Float,
    Double,
    LongDouble,
    SizeT,
    PtrdiffT,
    Int8,
    Int16,
    Int32,
    Int64,
    UInt8,
    UInt16,
    UInt32,
    UInt64,
}

impl Fundamental {
    pub fn spelling(self) -> &'static str {
        use Fundamental::*;
        match self {
            Void => "void",
            Bool => "bool",
            Char => "char",
            SignedChar => "signed char",
            UnsignedChar => "unsigned char",
            Short => "short",
            UnsignedShort => "unsigned short",
            Int => "int",
            UnsignedInt => "unsigned int",
            Long => "long",
            UnsignedLong => "unsigned long",
            LongLong => "long long",
            UnsignedLongLong => "unsigned long long",
            Float => "float",
            Double => "double",
            LongDouble => "long double",
            SizeT => "size_t",
            PtrdiffT => "ptrdiff_t",
            Int8 => "int8_t",
            Int16 => "int16_t",
            Int32 => "int32_t",
            Int64 => "int64_t",
            UInt8 => "uint8_t",
            UInt16 => "uint16_t",
            UInt32 => "uint32_t",
            UInt64 => "uint64_t",
        }
    }

    /// Typedef-style names that the parser recognizes without seeing a header.
    pub fn from_builtin_name(name: &str) -> Option<Self> {
        use Fundamental::*;
        let bare = name.strip_prefix("std::").unwrap_or(name);
        Some(match bare {
            "size_t" => SizeT,
            "ptrdiff_t" => PtrdiffT,
            "int8_t" => Int8,
            "int16_t" => Int16,
            "int32_t" => Int32,
            "int64_t" => Int64,
            "uint8_t" => UInt8,
            "uint16_t" => UInt16,
            "uint32_t" => UInt32,
            "uint64_t" => UInt64,
            _ => return None,
        })
    }

    pub fn is_integer(self) -> bool {
        !matches!(
            self,
            Fundamental::Void | Fundamental::Bool | Fundamental::Float | Fundamental::Double | Fundamental::LongDouble
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseType {
    Fundamental(Fundamental),
    /// A (possibly qualified) user or library type name, e.g. `Foo`, `std::string`.
    Named(String),
    /// Function pointer `ret (*)(params)`; the pointer level is part of this base.
    FnPtr {
        ret: Box<TypeExpr>,
        params: Vec<TypeExpr>,
    },
    /// Non-type template argument such as `3`.
    Value(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum RefKind {
    #[default]
    None,
    LValue,
    RValue,
}

/// The single indirection level a binding can work with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Indirection {
    Value,
    Pointer,
    Reference,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeExpr {
    pub base: BaseType,
    pub is_const: bool,
    pub template_args: Vec<TypeExpr>,
    pub pointers: u8,
    pub reference: RefKind,
}

impl TypeExpr {
    pub fn fundamental(f: Fundamental) -> Self {
        TypeExpr::new(BaseType::Fundamental(f))
    }

    pub fn named(name: impl Into<String>) -> Self {
        TypeExpr::new(BaseType::Named(name.into()))
    }

    pub fn new(base: BaseType) -> Self {
        TypeExpr { base, is_const: false, template_args: Vec::new(), pointers: 0, reference: RefKind::None }
    }

    pub fn with_const(mut self) -> Self {
        self.is_const = true;
        self
    }

    pub fn pointer(mut self) -> Self {
        self.pointers += 1;
        self
    }

    pub fn reference(mut self) -> Self {
        self.reference = RefKind::LValue;
        self
    }

    pub fn is_void(&self) -> bool {
        matches!(self.base, BaseType::Fundamental(Fundamental::Void))
            && self.pointers == 0
            && self.reference == RefKind::None
    }

    pub fn as_fundamental(&self) -> Option<Fundamental> {
        match self.base {
            BaseType::Fundamental(f) => Some(f),
            _ => None,
        }
    }

    pub fn named_base(&self) -> Option<&str> {
        match &self.base {
            BaseType::Named(n) => Some(n),
            _ => None,
        }
    }

    /// `None` when the type nests deeper than one pointer or reference level.
    pub fn indirection(&self) -> Option<Indirection> {
        match (self.pointers, self.reference) {
            (0, RefKind::None) => Some(Indirection::Value),
            (1, RefKind::None) => Some(Indirection::Pointer),
            (0, RefKind::LValue) => Some(Indirection::Reference),
            _ => None,
        }
    }

    /// The same type with pointer/reference levels removed.
    pub fn strip_indirection(&self) -> TypeExpr {
        TypeExpr { pointers: 0, reference: RefKind::None, ..self.clone() }
    }

    /// Base type spelling including template arguments, without cv or indirection.
    pub fn base_spelling(&self) -> String {
        let mut s = match &self.base {
            BaseType::Fundamental(f) => f.spelling().to_string(),
            BaseType::Named(n) => n.clone(),
            BaseType::Value(v) => v.clone(),
            BaseType::FnPtr { .. } => return self.declare(""),
        };
        if !self.template_args.is_empty() {
            s.push('<');
            s.push_str(&self.template_args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "));
            // avoid emitting `>>`, which pre-C++11 compilers read as a shift
            if s.ends_with('>') {
                s.push(' ');
            }
            s.push('>');
        }
        s
    }

    /// C++ declaration of `name` with this type (`name` may be empty).
    pub fn declare(&self, name: &str) -> String {
        let mut out = String::new();
        if let BaseType::FnPtr { ret, params } = &self.base {
            let ps: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            let mut inner = String::from("*");
            if self.is_const {
                inner.push_str(" const");
            }
            inner.push_str(&"*".repeat(self.pointers as usize));
            inner.push_str(self.ref_suffix());
            if !name.is_empty() {
                if inner.ends_with("const") {
                    inner.push(' ');
                }
                inner.push_str(name);
            }
            let _ = write!(out, "{} ({})({})", ret, inner, ps.join(", "));
            return out;
        }
        if self.is_const {
            out.push_str("const ");
        }
        out.push_str(&self.base_spelling());
        let suffix = format!("{}{}", "*".repeat(self.pointers as usize), self.ref_suffix());
        if !suffix.is_empty() {
            out.push(' ');
            out.push_str(&suffix);
            out.push_str(name);
        } else if !name.is_empty() {
            out.push(' ');
            out.push_str(name);
        }
        out
    }

    fn ref_suffix(&self) -> &'static str {
        match self.reference {
            RefKind::None => "",
            RefKind::LValue => "&",
            RefKind::RValue => "&&",
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.declare(""))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Param {
    pub ty: TypeExpr,
    pub name: Option<String>,
    /// Default argument, as normalized expression text.
    pub default: Option<String>,
}

impl Param {
    pub fn new(ty: TypeExpr, name: impl Into<String>) -> Self {
        Param { ty, name: Some(name.into()), default: None }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ty.declare(self.name.as_deref().unwrap_or("")))?;
        if let Some(d) = &self.default {
            write!(f, " = {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FnQualifiers {
    pub is_static: bool,
    pub is_virtual: bool,
    pub is_pure: bool,
    /// `const` member function.
    pub is_const: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionDecl {
    pub name: String,
    pub ret: TypeExpr,
    pub params: Vec<Param>,
    pub quals: FnQualifiers,
    pub has_body: bool,
    pub doc: Option<String>,
}

impl FunctionDecl {
    pub fn signature(&self) -> String {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        format!(
            "{}({}){}",
            self.ret.declare(&self.name),
            ps.join(", "),
            if self.quals.is_const { " const" } else { "" }
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Access {
    Public,
    Protected,
    Private,
}

impl Access {
    fn keyword(self) -> &'static str {
        match self {
            Access::Public => "public",
            Access::Protected => "protected",
            Access::Private => "private",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKey {
    Class,
    Struct,
}

impl ClassKey {
    pub fn default_access(self) -> Access {
        match self {
            ClassKey::Class => Access::Private,
            ClassKey::Struct => Access::Public,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSpec {
    pub access: Access,
    pub ty: TypeExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDecl {
    pub ty: TypeExpr,
    pub name: String,
    /// Fixed array extent (`double x[3]`), as expression text.
    pub extent: Option<String>,
    pub is_static: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Member {
    Method(FunctionDecl),
    Constructor { params: Vec<Param>, doc: Option<String> },
    Destructor { is_virtual: bool },
    Field(FieldDecl),
    Unsupported { name: String, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub access: Access,
    pub member: Member,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub key: ClassKey,
    pub name: String,
    pub bases: Vec<BaseSpec>,
    pub members: Vec<ClassMember>,
    /// `class Foo;` with no body.
    pub is_forward: bool,
    pub doc: Option<String>,
}

impl ClassDecl {
    pub fn public_members(&self) -> impl Iterator<Item = &Member> {
        self.members.iter().filter(|m| m.access == Access::Public).map(|m| &m.member)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerator {
    pub name: String,
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumDecl {
    pub name: Option<String>,
    pub scoped: bool,
    pub enumerators: Vec<Enumerator>,
    pub doc: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedefDecl {
    pub name: String,
    pub ty: TypeExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantMacro {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemplateParam {
    Type(String),
    Value { ty: TypeExpr, name: String },
}

impl TemplateParam {
    pub fn name(&self) -> &str {
        match self {
            TemplateParam::Type(n) => n,
            TemplateParam::Value { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Templated {
    Function(FunctionDecl),
    Class(ClassDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateDecl {
    pub params: Vec<TemplateParam>,
    pub decl: Templated,
}

impl TemplateDecl {
    pub fn name(&self) -> &str {
        match &self.decl {
            Templated::Function(f) => &f.name,
            Templated::Class(c) => &c.name,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerbatimKind {
    /// `%{ ... %}`: copied into the C++ wrapper only.
    Header,
    /// `%inline %{ ... %}`: copied into the wrapper and also parsed for declarations.
    Inline,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerbatimBlock {
    pub kind: VerbatimKind,
    pub text: String,
    /// Number of items immediately following this block that were parsed out of it.
    pub declared: usize,
}

/// The named typemap patterns an `%apply` can reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypemapPattern {
    /// `(SWIGTYPE *DATA, size_t SIZE)`: pointer plus length fused into one array argument.
    ArraySpan,
    /// `int FORTRAN_INDEX`: 0-based C++ index exposed as 1-based.
    FortranIndex,
}

impl TypemapPattern {
    pub fn spelling(self) -> &'static str {
        match self {
            TypemapPattern::ArraySpan => "(SWIGTYPE *DATA, size_t SIZE)",
            TypemapPattern::FortranIndex => "int FORTRAN_INDEX",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionScope {
    All,
    Only(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directive {
    ModuleName(String),
    TemplateInstantiation {
        alias: String,
        target: String,
        args: Vec<TypeExpr>,
    },
    /// Each target is a parameter sequence, e.g. `(int *ptr, size_t size)` or `int i`.
    ApplyTypemap {
        pattern: TypemapPattern,
        targets: Vec<Vec<Param>>,
    },
    ExceptionPolicy {
        enabled: bool,
        scope: ExceptionScope,
    },
    BindC(Vec<String>),
    BindCType(Vec<String>),
    FortranConst(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Function(FunctionDecl),
    Class(ClassDecl),
    Enum(EnumDecl),
    Typedef(TypedefDecl),
    Constant(ConstantMacro),
    Template(TemplateDecl),
    Verbatim(VerbatimBlock),
    Directive(Directive),
    /// A recognized but unsupported declaration (operator overloads, globals...).
    Unsupported {
        name: String,
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterfaceUnit {
    pub module_name: String,
    pub items: Vec<Item>,
    /// Location of each entry of `items`.
    pub spans: Vec<Span>,
}

impl InterfaceUnit {
    pub fn iter(&self) -> impl Iterator<Item = (&Item, Span)> {
        self.items.iter().zip(self.spans.iter().copied())
    }

    /// Render the unit as interface source.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let mut module_written = false;
        let mut skip = 0;
        for item in &self.items {
            if skip > 0 {
                skip -= 1;
                continue;
            }
            match item {
                Item::Directive(Directive::ModuleName(_)) => module_written = true,
                Item::Verbatim(v) => skip = v.declared,
                _ => {}
            }
            write_item(&mut out, item);
        }
        if !module_written {
            out.insert_str(0, &format!("%module {}\n", self.module_name));
        }
        out
    }
}

fn write_doc(out: &mut String, doc: &Option<String>, indent: &str) {
    if let Some(d) = doc {
        for line in d.lines() {
            let _ = writeln!(out, "{indent}/// {line}");
        }
    }
}

fn write_function(out: &mut String, f: &FunctionDecl, indent: &str) {
    write_doc(out, &f.doc, indent);
    out.push_str(indent);
    if f.quals.is_static {
        out.push_str("static ");
    }
    if f.quals.is_virtual {
        out.push_str("virtual ");
    }
    out.push_str(&f.signature());
    if f.quals.is_pure {
        out.push_str(" = 0");
    }
    out.push_str(if f.has_body { " {}\n" } else { ";\n" });
}

fn write_params(params: &[Param]) -> String {
    params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_class(out: &mut String, c: &ClassDecl, prefix: &str) {
    write_doc(out, &c.doc, "");
    let key = match c.key {
        ClassKey::Class => "class",
        ClassKey::Struct => "struct",
    };
    let _ = write!(out, "{prefix}{key} {}", c.name);
    if c.is_forward {
        out.push_str(";\n");
        return;
    }
    if !c.bases.is_empty() {
        let bases: Vec<String> = c.bases.iter().map(|b| format!("{} {}", b.access.keyword(), b.ty)).collect();
        let _ = write!(out, " : {}", bases.join(", "));
    }
    out.push_str(" {\n");
    let mut access = c.key.default_access();
    for m in &c.members {
        if m.access != access {
            let _ = writeln!(out, "{}:", m.access.keyword());
            access = m.access;
        }
        match &m.member {
            Member::Method(f) => write_function(out, f, "  "),
            Member::Constructor { params, doc } => {
                write_doc(out, doc, "  ");
                let _ = writeln!(out, "  {}({});", c.name, write_params(params));
            }
            Member::Destructor { is_virtual } => {
                let _ = writeln!(out, "  {}~{}();", if *is_virtual { "virtual " } else { "" }, c.name);
            }
            Member::Field(fd) => {
                let _ = write!(out, "  {}{}", if fd.is_static { "static " } else { "" }, fd.ty.declare(&fd.name));
                if let Some(e) = &fd.extent {
                    let _ = write!(out, "[{e}]");
                }
                out.push_str(";\n");
            }
            Member::Unsupported { name, .. } => {
                let _ = writeln!(out, "  {name};");
            }
        }
    }
    out.push_str("};\n");
}

fn write_item(out: &mut String, item: &Item) {
    match item {
        Item::Function(f) => write_function(out, f, ""),
        Item::Class(c) => write_class(out, c, ""),
        Item::Enum(e) => {
            write_doc(out, &e.doc, "");
            out.push_str("enum ");
            if e.scoped {
                out.push_str("class ");
            }
            if let Some(n) = &e.name {
                out.push_str(n);
                out.push(' ');
            }
            let vals: Vec<String> = e
                .enumerators
                .iter()
                .map(|en| match &en.value {
                    Some(v) => format!("{} = {}", en.name, v),
                    None => en.name.clone(),
                })
                .collect();
            let _ = writeln!(out, "{{ {} }};", vals.join(", "));
        }
        Item::Typedef(t) => {
            let _ = writeln!(out, "typedef {};", t.ty.declare(&t.name));
        }
        Item::Constant(c) => {
            let _ = writeln!(out, "#define {} {}", c.name, c.value);
        }
        Item::Template(t) => {
            let ps: Vec<String> = t
                .params
                .iter()
                .map(|p| match p {
                    TemplateParam::Type(n) => format!("class {n}"),
                    TemplateParam::Value { ty, name } => ty.declare(name),
                })
                .collect();
            let prefix = format!("template<{}> ", ps.join(", "));
            match &t.decl {
                Templated::Function(f) => {
                    write_doc(out, &f.doc, "");
                    let f = FunctionDecl { doc: None, ..f.clone() };
                    out.push_str(&prefix);
                    write_function(out, &f, "");
                }
                Templated::Class(c) => {
                    write_doc(out, &c.doc, "");
                    let c = ClassDecl { doc: None, ..c.clone() };
                    write_class(out, &c, &prefix);
                }
            }
        }
        Item::Verbatim(v) => {
            if v.kind == VerbatimKind::Inline {
                out.push_str("%inline ");
            }
            let _ = writeln!(out, "%{{{}%}}", v.text);
        }
        Item::Directive(d) => write_directive(out, d),
        Item::Unsupported { .. } => {}
    }
}

fn write_directive(out: &mut String, d: &Directive) {
    match d {
        Directive::ModuleName(n) => {
            let _ = writeln!(out, "%module {n}");
        }
        Directive::TemplateInstantiation { alias, target, args } => {
            let a: Vec<String> = args.iter().map(|a| a.to_string()).collect();
            let mut args = a.join(", ");
            if args.ends_with('>') {
                args.push(' ');
            }
            let _ = writeln!(out, "%template({alias}) {target}<{args}>;");
        }
        Directive::ApplyTypemap { pattern, targets } => {
            let ts: Vec<String> = targets
                .iter()
                .map(|ps| match pattern {
                    TypemapPattern::ArraySpan => format!("({})", write_params(ps)),
                    TypemapPattern::FortranIndex => write_params(ps),
                })
                .collect();
            let _ = writeln!(out, "%apply {} {{ {} }};", pattern.spelling(), ts.join(", "));
        }
        Directive::ExceptionPolicy { enabled, scope } => {
            let kw = if *enabled { "%exception" } else { "%noexception" };
            match scope {
                ExceptionScope::All => {
                    let _ = writeln!(out, "{kw};");
                }
                ExceptionScope::Only(n) => {
                    let _ = writeln!(out, "{kw} {n};");
                }
            }
        }
        Directive::BindC(s) => {
            let _ = writeln!(out, "%fortranbindc {};", s.join(", "));
        }
        Directive::BindCType(s) => {
            let _ = writeln!(out, "%fortranbindc_type {};", s.join(", "));
        }
        Directive::FortranConst(s) => {
            let _ = writeln!(out, "%fortranconst {};", s.join(", "));
        }
    }
}
