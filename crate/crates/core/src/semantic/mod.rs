//! Semantic analysis: resolves an [`InterfaceUnit`] into a [`ModulePlan`].
//!
//! Templates and default arguments are expanded, overloads grouped, names
//! mangled, and every declaration is assigned a binding strategy. The plan
//! is the single input of both emitters.

mod dump;
pub mod names;
pub mod templates;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::consteval::{eval_int, eval_macro, ConstValue};
use crate::diag::{ids, Diagnostic, Span};
use crate::parser::ast::{
    Access, BaseType, ClassDecl, ConstantMacro, Directive, EnumDecl, ExceptionScope, FunctionDecl, InterfaceUnit, Item,
    Member, Param, RefKind, TypeExpr, TypemapPattern, VerbatimBlock,
};
use crate::typemaps::{
    self, apply_index_offset, constructor_return, lp64_kind_bytes, map_array_span, receiver, CallbackSig, ClassInfo,
    Helper, Intent, Role, TypeEnv, TypemapBinding,
};

pub use names::{fortran_ident, mangle_name, truncate_ident, MangleContext, Mangled, NameTable};
pub use templates::{expand_templates, Concrete};

pub type BindingId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcKind {
    Function,
    Subroutine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProcRole {
    Free,
    Method,
    Static,
    Constructor,
    Getter,
    Setter,
    Release,
    Assign,
}

/// How the shim reaches the C++ entity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CallTarget {
    /// `template_args` is empty or e.g. `<int>`.
    Free {
        name: String,
        template_args: String,
    },
    Method {
        name: String,
    },
    Static {
        class_cpp: String,
        name: String,
    },
    Constructor {
        class_cpp: String,
    },
    Getter {
        field: String,
    },
    Setter {
        field: String,
    },
    Destructor {
        class_cpp: String,
        deletable: bool,
    },
    Assign {
        class_cpp: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamPlan {
    /// Fortran dummy argument name.
    pub name: String,
    pub binding: BindingId,
    pub intent: Intent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcedurePlan {
    /// Name users call: the generic or procedure name, or the type-bound binding.
    pub public_name: String,
    /// Module-level Fortran procedure name.
    pub specific_name: String,
    pub c_symbol: String,
    /// Private bind(C) interface name for the shim.
    pub interface_name: String,
    pub kind: ProcKind,
    pub role: ProcRole,
    /// Handle of the object a member function operates on.
    pub receiver: Option<BindingId>,
    pub params: Vec<ParamPlan>,
    pub ret: Option<BindingId>,
    pub overload_group: Option<usize>,
    pub exception_wrapped: bool,
    pub call: CallTarget,
    /// The C++ declaration this wraps.
    pub signature: String,
    pub doc: Option<String>,
}

/// A public generic interface over several specifics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPlan {
    pub name: String,
    pub specifics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TypeBound {
    Procedure { binding: String, specific: String, nopass: bool, private: bool },
    Generic { binding: String, bindings: Vec<String> },
    Assignment { binding: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxyTypePlan {
    pub type_name: String,
    pub cpp_name: String,
    pub parent: Option<String>,
    pub extends_chain_depth: usize,
    pub constructors: Vec<ProcedurePlan>,
    pub methods: Vec<ProcedurePlan>,
    pub release: ProcedurePlan,
    pub assign: ProcedurePlan,
    pub has_release: bool,
    pub bindings: Vec<TypeBound>,
    pub doc: Option<String>,
}

impl ProxyTypePlan {
    /// Every shim-backed procedure of this type, in emission order.
    pub fn procedures(&self) -> impl Iterator<Item = &ProcedurePlan> {
        self.constructors.iter().chain(&self.methods).chain([&self.release, &self.assign])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorPlan {
    pub name: String,
    pub cpp_name: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumPlan {
    pub cpp_name: Option<String>,
    /// Integer kind parameter named after the enum type.
    pub kind_name: Option<String>,
    pub enumerators: Vec<EnumeratorPlan>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstantPlan {
    pub name: String,
    pub cpp_name: String,
    pub value: ConstValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectParam {
    pub name: String,
    pub decl: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectFunction {
    pub name: String,
    pub c_name: String,
    pub params: Vec<DirectParam>,
    pub ret: Option<String>,
    pub imports: Vec<String>,
    pub signature: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectStruct {
    pub name: String,
    pub cpp_name: String,
    pub fields: Vec<DirectParam>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectBinding {
    Function(DirectFunction),
    Struct(DirectStruct),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CallbackPlan {
    pub name: String,
    pub cpp_type: String,
    pub sig: CallbackSig,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    Wrapped,
    DirectBindC,
    DirectBindCType,
    FortranConst,
    Enum,
    Skipped(String),
}

/// Runtime support entry points with their own shims.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportRoutine {
    pub kind: SupportKind,
    pub interface_name: String,
    pub c_symbol: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportKind {
    /// Releases heap memory handed back by a string-returning shim.
    Free,
    /// Returns the stored exception message.
    GetSerr,
}

#[derive(Clone, Debug, Default)]
pub struct ModulePlan {
    pub module_name: String,
    pub bindings: Vec<TypemapBinding>,
    /// Free wrapped procedures, overload groups kept contiguous.
    pub procedures: Vec<ProcedurePlan>,
    pub generics: Vec<GenericPlan>,
    pub proxy_types: Vec<ProxyTypePlan>,
    pub enums: Vec<EnumPlan>,
    pub constants: Vec<ConstantPlan>,
    pub direct_bindings: Vec<DirectBinding>,
    pub callbacks: Vec<CallbackPlan>,
    pub support: Vec<SupportRoutine>,
    pub verbatim: Vec<VerbatimBlock>,
    pub classification: Vec<(String, Strategy)>,
    /// Some procedure traps C++ exceptions.
    pub exceptions: bool,
    pub helpers: BTreeSet<Helper>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ModulePlan {
    pub fn binding(&self, id: BindingId) -> &TypemapBinding {
        &self.bindings[id]
    }

    /// Every procedure that owns a C shim.
    pub fn all_procedures(&self) -> impl Iterator<Item = &ProcedurePlan> {
        self.procedures.iter().chain(self.proxy_types.iter().flat_map(|t| t.procedures()))
    }

    /// C symbols of every shim: wrapped procedures plus support routines.
    pub fn shim_symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.all_procedures().map(|p| p.c_symbol.clone()).collect();
        out.extend(self.support.iter().map(|s| s.c_symbol.clone()));
        out
    }

    /// Names the Fortran module exports.
    pub fn public_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let grouped: BTreeSet<&str> =
            self.generics.iter().flat_map(|g| g.specifics.iter().map(String::as_str)).collect();
        for p in &self.procedures {
            if !grouped.contains(p.specific_name.as_str()) {
                out.push(p.public_name.clone());
            }
        }
        out.extend(self.generics.iter().map(|g| g.name.clone()));
        out.extend(self.proxy_types.iter().map(|t| t.type_name.clone()));
        for e in &self.enums {
            out.extend(e.kind_name.clone());
            out.extend(e.enumerators.iter().map(|x| x.name.clone()));
        }
        out.extend(self.constants.iter().map(|c| c.name.clone()));
        for d in &self.direct_bindings {
            out.push(match d {
                DirectBinding::Function(f) => f.name.clone(),
                DirectBinding::Struct(s) => s.name.clone(),
            });
        }
        out.extend(self.callbacks.iter().map(|c| c.name.clone()));
        if self.exceptions {
            out.push("ierr".into());
            out.push("get_serr".into());
        }
        out
    }

    pub fn support(&self, kind: SupportKind) -> Option<&SupportRoutine> {
        self.support.iter().find(|s| s.kind == kind)
    }

    /// One line per plan item: `KIND  public_name  specific  c_symbol  signature`.
    pub fn dump(&self) -> String {
        dump::dump(self)
    }
}

/// Expand trailing default arguments into one declaration per arity, ascending.
pub fn expand_default_arguments(f: &FunctionDecl) -> Result<Vec<FunctionDecl>, String> {
    let Some(first) = f.params.iter().position(|p| p.default.is_some()) else {
        return Ok(vec![f.clone()]);
    };
    if let Some(bad) = f.params[first..].iter().find(|p| p.default.is_none()) {
        return Err(format!(
            "parameter `{}` of `{}` has no default but follows one that does",
            bad.name.as_deref().unwrap_or("?"),
            f.name
        ));
    }
    Ok((first..=f.params.len())
        .map(|n| {
            let mut v = f.clone();
            v.params.truncate(n);
            for p in &mut v.params {
                p.default = None;
            }
            v
        })
        .collect())
}

type MappedSignature = (Vec<(String, BindingId, Intent)>, Option<BindingId>);

/// Run the semantic pass.
pub fn analyze(unit: &InterfaceUnit) -> ModulePlan {
    let mut a = Analyzer::new(unit);
    a.run();
    a.finish()
}

#[derive(Clone, Debug, Default)]
struct ExcPolicy {
    global: bool,
    named: BTreeMap<String, bool>,
}

impl ExcPolicy {
    fn applies(&self, names: &[&str]) -> bool {
        names.iter().find_map(|n| self.named.get(*n).copied()).unwrap_or(self.global)
    }
}

struct NameSet {
    names: BTreeMap<String, (Span, bool)>,
}

impl NameSet {
    fn new() -> Self {
        NameSet { names: BTreeMap::new() }
    }

    fn take(&mut self, name: &str) -> bool {
        match self.names.get_mut(name) {
            Some(e) => {
                e.1 = true;
                true
            }
            None => false,
        }
    }

    fn contains(&self, name: &str) -> bool {
        self.names.contains_key(name)
    }
}

struct ApplyRule {
    pattern: TypemapPattern,
    params: Vec<Param>,
    span: Span,
    used: bool,
}

enum Entry {
    Function { decl: FunctionDecl, span: Span, template: Option<(String, String)>, exc: bool },
    Class { decl: ClassDecl, span: Span, cpp_name: String, policy: ExcPolicy },
    Enum { decl: EnumDecl, span: Span },
    Constant { decl: ConstantMacro, span: Span },
    Callback { name: String, span: Span },
    Unsupported { name: String, reason: String, span: Span },
}

/// Fortran-visible shape of a dummy, for overload distinguishability.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Tkr {
    Intrinsic { ty: String, bytes: u8, rank: u8 },
    Class(String),
    Type(String),
    Other(String),
}

/// A resolved but not yet named procedure.
struct Pending {
    cpp_name: String,
    role: ProcRole,
    kind: ProcKind,
    receiver: Option<BindingId>,
    params: Vec<(String, BindingId, Intent)>,
    ret: Option<BindingId>,
    exc: bool,
    call: CallTarget,
    signature: String,
    doc: Option<String>,
    span: Span,
}

struct ClassState {
    depth: usize,
    /// Type-bound names visible in the type, lowercase, with override keys.
    bound: BTreeMap<String, (String, Option<String>)>,
    pure: BTreeSet<String>,
}

struct Analyzer<'u> {
    unit: &'u InterfaceUnit,
    module: String,
    diags: Vec<Diagnostic>,
    env: TypeEnv,
    bindings: Vec<TypemapBinding>,
    binding_ids: HashMap<TypemapBinding, BindingId>,
    names: NameTable,
    bindc: NameSet,
    bindc_type: NameSet,
    fortranconst: NameSet,
    rules: Vec<ApplyRule>,
    entries: Vec<Entry>,
    classes: BTreeMap<String, ClassState>,
    /// Fortran type name to parent type name.
    parents: BTreeMap<String, Option<String>>,
    plan: ModulePlan,
}

#[rustfmt::skip]
const RESERVED_MODULE_NAMES: &[&str] = &[
    "SwigClassWrapper", "SwigArrayWrapper", "SWIG_free", "SWIG_string_to_chararray", "SWIG_chararray_to_string",
    "swig_cmem_own_bit", "swig_cmem_rvalue_bit", "swig_cmem_const_bit", "ierr", "get_serr", "swigc_get_serr",
];

impl<'u> Analyzer<'u> {
    fn new(unit: &'u InterfaceUnit) -> Self {
        let mut names = NameTable::new();
        names.reserve(&unit.module_name);
        for n in RESERVED_MODULE_NAMES {
            names.reserve(n);
        }
        Analyzer {
            unit,
            module: unit.module_name.clone(),
            diags: Vec::new(),
            env: TypeEnv::default(),
            bindings: Vec::new(),
            binding_ids: HashMap::new(),
            names,
            bindc: NameSet::new(),
            bindc_type: NameSet::new(),
            fortranconst: NameSet::new(),
            rules: Vec::new(),
            entries: Vec::new(),
            classes: BTreeMap::new(),
            parents: BTreeMap::new(),
            plan: ModulePlan { module_name: unit.module_name.clone(), ..Default::default() },
        }
    }

    fn warn(&mut self, id: &'static str, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::warning(id, span, msg));
    }

    fn error(&mut self, id: &'static str, span: Span, msg: impl Into<String>) {
        self.diags.push(Diagnostic::error(id, span, msg));
    }

    fn classify(&mut self, name: &str, s: Strategy) {
        self.plan.classification.push((name.to_string(), s));
    }

    fn intern(&mut self, b: TypemapBinding) -> BindingId {
        if let Some(&id) = self.binding_ids.get(&b) {
            return id;
        }
        let id = self.bindings.len();
        self.binding_ids.insert(b.clone(), id);
        self.bindings.push(b);
        id
    }

    /// Claim a module-scope name, reporting renames.
    fn claim_public(&mut self, cpp_name: &str, span: Span) -> String {
        let (sanitized, changed) = fortran_ident(cpp_name);
        let (granted, collided) = self.names.claim(&sanitized);
        if collided {
            self.warn(
                ids::NAME_COLLISION,
                span,
                format!("`{cpp_name}` clashes with another Fortran name; emitted as `{granted}`"),
            );
        } else if changed {
            self.warn(ids::RENAMED, span, format!("`{cpp_name}` is not a usable Fortran name; emitted as `{granted}`"));
        }
        granted
    }

    fn claim_internal(&mut self, name: &str) -> String {
        self.names.claim(name).0
    }

    fn run(&mut self) {
        self.collect();
        self.register_types();
        let entries = std::mem::take(&mut self.entries);
        let mut free: Vec<Pending> = Vec::new();
        for e in &entries {
            if let Entry::Class { decl, span, cpp_name, policy } = e {
                self.plan_class(decl, *span, cpp_name, policy);
            }
        }
        for e in &entries {
            match e {
                Entry::Function { decl, span, template, exc } => {
                    if template.is_none() && self.bindc.take(&decl.name) {
                        self.plan_direct_function(decl, *span);
                    } else {
                        free.extend(self.plan_free_function(decl, *span, template.as_ref(), *exc));
                    }
                }
                Entry::Enum { decl, span } => self.plan_enum(decl, *span),
                Entry::Constant { decl, span } => self.plan_constant(decl, *span),
                Entry::Callback { name, span } => self.plan_callback(name, *span),
                Entry::Unsupported { name, reason, span } => {
                    self.warn(ids::UNSUPPORTED, *span, format!("skipping `{name}`: {reason}"));
                    self.classify(name, Strategy::Skipped(reason.clone()));
                }
                Entry::Class { .. } => {}
            }
        }
        self.name_free_groups(free);
        self.report_unused_directives();
    }

    fn collect(&mut self) {
        let unit = self.unit;
        let (insts, tdiags) = expand_templates(unit);
        self.diags.extend(tdiags);
        let mut inst_at: BTreeMap<usize, Vec<templates::Instantiation>> = BTreeMap::new();
        for i in insts {
            inst_at.entry(i.item_index).or_default().push(i);
        }
        let defined: BTreeSet<&str> = unit
            .items
            .iter()
            .filter_map(|i| match i {
                Item::Class(c) if !c.is_forward => Some(c.name.as_str()),
                _ => None,
            })
            .collect();
        let mut policy = ExcPolicy::default();
        let mut seen_forward = BTreeSet::new();
        for (idx, (item, span)) in unit.iter().enumerate() {
            match item {
                Item::Function(f) => {
                    let exc = policy.applies(&[&f.name]);
                    self.entries.push(Entry::Function { decl: f.clone(), span, template: None, exc });
                }
                Item::Class(c) => {
                    if c.is_forward && (defined.contains(c.name.as_str()) || !seen_forward.insert(c.name.clone())) {
                        continue;
                    }
                    self.entries.push(Entry::Class {
                        decl: c.clone(),
                        span,
                        cpp_name: c.name.clone(),
                        policy: policy.clone(),
                    });
                }
                Item::Enum(e) => self.entries.push(Entry::Enum { decl: e.clone(), span }),
                Item::Typedef(t) => {
                    self.env.typedefs.insert(t.name.clone(), t.ty.clone());
                    if matches!(t.ty.base, BaseType::FnPtr { .. }) && t.ty.pointers == 0 {
                        self.entries.push(Entry::Callback { name: t.name.clone(), span });
                    }
                }
                Item::Constant(c) => self.entries.push(Entry::Constant { decl: c.clone(), span }),
                Item::Template(_) => {}
                Item::Verbatim(v) => self.plan.verbatim.push(v.clone()),
                Item::Unsupported { name, reason } => {
                    self.entries.push(Entry::Unsupported { name: name.clone(), reason: reason.clone(), span })
                }
                Item::Directive(d) => match d {
                    Directive::ModuleName(_) => {}
                    Directive::TemplateInstantiation { .. } => {
                        for inst in inst_at.remove(&idx).unwrap_or_default() {
                            match inst.concrete {
                                Concrete::Function { decl, template, call_args } => {
                                    let exc = policy.applies(&[&decl.name]);
                                    self.entries.push(Entry::Function {
                                        decl,
                                        span: inst.span,
                                        template: Some((template, call_args)),
                                        exc,
                                    });
                                }
                                Concrete::Class { decl, cpp_name, .. } => {
                                    self.entries.push(Entry::Class {
                                        decl,
                                        span: inst.span,
                                        cpp_name,
                                        policy: policy.clone(),
                                    });
                                }
                            }
                        }
                    }
                    Directive::ApplyTypemap { pattern, targets } => {
                        for t in targets {
                            self.add_rule(*pattern, t.clone(), span);
                        }
                    }
                    Directive::ExceptionPolicy { enabled, scope } => match scope {
                        ExceptionScope::All => {
                            policy.global = *enabled;
                            policy.named.clear();
                        }
                        ExceptionScope::Only(n) => {
                            policy.named.insert(n.clone(), *enabled);
                        }
                    },
                    Directive::BindC(ns) => ns.iter().for_each(|n| {
                        self.bindc.names.insert(n.clone(), (span, false));
                    }),
                    Directive::BindCType(ns) => ns.iter().for_each(|n| {
                        self.bindc_type.names.insert(n.clone(), (span, false));
                    }),
                    Directive::FortranConst(ns) => ns.iter().for_each(|n| {
                        self.fortranconst.names.insert(n.clone(), (span, false));
                    }),
                },
            }
        }
    }

    fn add_rule(&mut self, pattern: TypemapPattern, params: Vec<Param>, span: Span) {
        let shown = params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
        match pattern {
            TypemapPattern::ArraySpan => {
                if params.len() != 2 {
                    self.error(
                        ids::APPLY_MISMATCH,
                        span,
                        format!("`({shown})` does not have the (pointer, size) shape of {}", pattern.spelling()),
                    );
                    return;
                }
                if let Err(e) = map_array_span(&params[0].ty, &params[1].ty) {
                    self.error(ids::APPLY_MISMATCH, span, format!("`({shown})` cannot be an array: {e}"));
                    return;
                }
            }
            TypemapPattern::FortranIndex => {
                let ok = params.len() == 1
                    && params[0]
                        .ty
                        .as_fundamental()
                        .is_some_and(|f| f.is_integer() && f != crate::parser::ast::Fundamental::Char)
                    && params[0].ty.indirection() == Some(crate::parser::ast::Indirection::Value);
                if !ok {
                    self.error(
                        ids::INDEX_NON_INTEGER,
                        span,
                        format!("`{shown}` is not an integer and cannot be an index"),
                    );
                    return;
                }
            }
        }
        self.rules.push(ApplyRule { pattern, params, span, used: false });
    }

    /// Decide which classes become proxy types, then register every type name.
    fn register_types(&mut self) {
        let entries = std::mem::take(&mut self.entries);
        for e in &entries {
            match e {
                Entry::Class { decl, span, cpp_name, .. } => {
                    if self.bindc_type.contains(&decl.name) {
                        let fname = self.claim_public(&decl.name, *span);
                        self.env.pod_structs.insert(cpp_name.clone(), fname);
                        continue;
                    }
                    let public_bases = decl.bases.iter().filter(|b| b.access == Access::Public).count();
                    if public_bases > 1 {
                        continue;
                    }
                    let fname = self.claim_public(&decl.name, *span);
                    let info = ClassInfo { fortran_name: fname, cpp_name: cpp_name.clone() };
                    self.env.classes.insert(cpp_name.clone(), info);
                }
                Entry::Enum { decl, .. } => {
                    if let Some(n) = &decl.name {
                        self.env.enums.insert(n.clone());
                    }
                }
                _ => {}
            }
        }
        self.entries = entries;
    }

    fn rule_matches(rule: &Param, actual: &Param) -> bool {
        rule.ty == actual.ty && (rule.name.is_none() || rule.name == actual.name)
    }

    /// Resolve parameters and return type; `None` if anything is unmapped.
    fn resolve_signature(
        &mut self,
        params: &[Param],
        ret: Option<&TypeExpr>,
        sig: &str,
        span: Span,
        reserved: &[&str],
    ) -> Option<MappedSignature> {
        let mut dummies = NameTable::new();
        for r in reserved {
            dummies.reserve(r);
        }
        for c in self.env.classes.values().map(|c| c.fortran_name.clone()).collect::<Vec<_>>() {
            dummies.reserve(&c);
        }
        for p in self.env.pod_structs.values().cloned().collect::<Vec<_>>() {
            dummies.reserve(&p);
        }
        let nbridge = params.len() + 2;
        for k in 1..=nbridge {
            dummies.reserve(&format!("farg{k}"));
        }
        let mut out = Vec::new();
        let mut i = 0;
        let mut failed = None;
        while i < params.len() {
            let p = &params[i];
            let mut binding = None;
            if i + 1 < params.len() {
                let next = &params[i + 1];
                if let Some(r) = self.rules.iter_mut().find(|r| {
                    r.pattern == TypemapPattern::ArraySpan
                        && Self::rule_matches(&r.params[0], p)
                        && Self::rule_matches(&r.params[1], next)
                }) {
                    r.used = true;
                    binding = Some(map_array_span(&p.ty, &next.ty));
                }
            }
            let b = match binding.unwrap_or_else(|| typemaps::resolve(&p.ty, &self.env, Role::Param)) {
                Ok(b) => b,
                Err(e) => {
                    failed = Some(format!("parameter `{p}`: {e}"));
                    break;
                }
            };
            let b = match self.apply_index(b, Some(p)) {
                Ok(b) => b,
                Err(e) => {
                    self.error(ids::INDEX_NON_INTEGER, span, format!("in `{sig}`: {e}"));
                    return None;
                }
            };
            let wanted = p.name.clone().unwrap_or_else(|| format!("arg{}", i + 1));
            let (sane, _) = fortran_ident(&wanted);
            let (name, _) = dummies.claim(&sane);
            let intent = b.intent.unwrap_or(Intent::In);
            i += 1 + b.consumes_extra_params;
            let id = self.intern(b);
            out.push((name, id, intent));
        }
        if failed.is_none() {
            if let Some(rt) = ret.filter(|t| !t.is_void()) {
                match typemaps::resolve(rt, &self.env, Role::Return) {
                    Ok(b) => match self.apply_index(b, None) {
                        Ok(b) => {
                            let id = self.intern(b);
                            return Some((out, Some(id)));
                        }
                        Err(e) => {
                            self.error(ids::INDEX_NON_INTEGER, span, format!("in `{sig}`: {e}"));
                            return None;
                        }
                    },
                    Err(e) => failed = Some(format!("return type `{rt}`: {e}")),
                }
            } else {
                return Some((out, None));
            }
        }
        let why = failed.unwrap_or_default();
        self.warn(ids::UNMAPPED_TYPE, span, format!("skipping `{sig}`: {why}"));
        None
    }

    fn apply_index(&mut self, b: TypemapBinding, param: Option<&Param>) -> Result<TypemapBinding, String> {
        let hit = self.rules.iter_mut().find(|r| {
            r.pattern == TypemapPattern::FortranIndex
                && match param {
                    Some(p) => Self::rule_matches(&r.params[0], p),
                    None => r.params[0].name.is_none() && r.params[0].ty == b.cpp_type,
                }
        });
        match hit {
            Some(r) => {
                r.used = true;
                apply_index_offset(b).map_err(|e| e.to_string())
            }
            None => Ok(b),
        }
    }

    fn plan_free_function(
        &mut self,
        decl: &FunctionDecl,
        span: Span,
        template: Option<&(String, String)>,
        exc: bool,
    ) -> Vec<Pending> {
        let (public, targs) = match template {
            Some((t, a)) => (t.clone(), a.clone()),
            None => (decl.name.clone(), String::new()),
        };
        let variants = match expand_default_arguments(decl) {
            Ok(v) => v,
            Err(e) => {
                self.error(ids::DEFAULT_ARGS, span, e);
                self.classify(&decl.name, Strategy::Skipped("non-trailing default argument".into()));
                return Vec::new();
            }
        };
        let mut out = Vec::new();
        for v in variants {
            let shown = FunctionDecl { name: format!("{}{}", v.name, targs), ..v.clone() };
            let sig = shown.signature();
            let Some((params, ret)) =
                self.resolve_signature(&v.params, Some(&v.ret), &sig, span, &["swig_result", "fresult"])
            else {
                continue;
            };
            out.push(Pending {
                cpp_name: public.clone(),
                role: ProcRole::Free,
                kind: if ret.is_some() { ProcKind::Function } else { ProcKind::Subroutine },
                receiver: None,
                params,
                ret,
                exc,
                call: CallTarget::Free { name: v.name.clone(), template_args: targs.clone() },
                signature: sig,
                doc: v.doc.clone(),
                span,
            });
        }
        let strategy = if out.is_empty() { Strategy::Skipped("unmapped types".into()) } else { Strategy::Wrapped };
        let label = template.map(|_| format!("{}{}", decl.name, targs)).unwrap_or_else(|| decl.name.clone());
        self.classify(&label, strategy);
        out
    }

    fn tkr(&self, id: BindingId) -> Tkr {
        let d = &self.bindings[id].fortran_decl;
        let rank = if d.contains("dimension(:)") { 1 } else { 0 };
        let inner = |s: &str| s.split_once('(').and_then(|(_, r)| r.split(')').next()).unwrap_or("").to_string();
        let head = d.split([',', '(']).next().unwrap_or("");
        match head {
            "integer" | "real" => {
                let k = inner(d);
                let bytes = if k.is_empty() { 4 } else { lp64_kind_bytes(&k) };
                Tkr::Intrinsic { ty: head.into(), bytes, rank }
            }
            "logical" | "character" => Tkr::Intrinsic { ty: head.into(), bytes: 1, rank },
            "class" => Tkr::Class(inner(d)),
            "type" => match inner(d).as_str() {
                "C_PTR" | "C_FUNPTR" => Tkr::Other(inner(d)),
                t => Tkr::Type(t.to_string()),
            },
            other => Tkr::Other(other.to_string()),
        }
    }

    fn is_ancestor(&self, anc: &str, t: &str) -> bool {
        let mut cur = Some(t.to_string());
        while let Some(c) = cur {
            if c == anc {
                return true;
            }
            cur = self.parents.get(&c).cloned().flatten();
        }
        false
    }

    fn tkr_compatible(&self, a: &Tkr, b: &Tkr) -> bool {
        match (a, b) {
            (Tkr::Class(x), Tkr::Class(y)) => self.is_ancestor(x, y) || self.is_ancestor(y, x),
            (Tkr::Class(x), Tkr::Type(y)) | (Tkr::Type(y), Tkr::Class(x)) => self.is_ancestor(x, y),
            _ => a == b,
        }
    }

    fn dummy_keys(&self, p: &Pending) -> Vec<Tkr> {
        p.receiver.iter().chain(p.params.iter().map(|(_, b, _)| b)).map(|&b| self.tkr(b)).collect()
    }

    fn ambiguous(&self, a: &Pending, b: &Pending) -> bool {
        let (ka, kb) = (self.dummy_keys(a), self.dummy_keys(b));
        ka.len() == kb.len() && ka.iter().zip(&kb).all(|(x, y)| self.tkr_compatible(x, y))
    }

    /// Split procedures into same-name groups, dropping mixed and ambiguous ones.
    fn group_overloads(&mut self, procs: Vec<Pending>) -> Vec<Vec<Pending>> {
        let mut groups: Vec<Vec<Pending>> = Vec::new();
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        for p in procs {
            let key = p.cpp_name.to_ascii_lowercase();
            match index.get(&key) {
                Some(&g) => groups[g].push(p),
                None => {
                    index.insert(key, groups.len());
                    groups.push(vec![p]);
                }
            }
        }
        let mut out = Vec::new();
        for g in groups {
            let mixed = g.iter().any(|p| p.kind != g[0].kind);
            if mixed {
                for p in &g {
                    let what = if p.kind == ProcKind::Function { "function" } else { "subroutine" };
                    self.warn(
                        ids::MIXED_OVERLOAD,
                        p.span,
                        format!(
                            "overloads of `{}` mix functions and subroutines; dropping {what} `{}`",
                            p.cpp_name, p.signature
                        ),
                    );
                }
                continue;
            }
            let mut kept: Vec<Pending> = Vec::new();
            for p in g {
                if let Some(prev) = kept.iter().find(|k| self.ambiguous(k, &p)) {
                    let msg = format!(
                        "`{}` cannot be distinguished from `{}` in Fortran; dropping it",
                        p.signature, prev.signature
                    );
                    self.warn(ids::AMBIGUOUS_OVERLOAD, p.span, msg);
                    continue;
                }
                kept.push(p);
            }
            out.push(kept);
        }
        out
    }

    fn finish_proc(&self, p: Pending, names: (String, Mangled), group: Option<usize>) -> ProcedurePlan {
        let (public_name, m) = names;
        ProcedurePlan {
            public_name,
            specific_name: m.specific,
            c_symbol: m.c_symbol,
            interface_name: m.interface,
            kind: p.kind,
            role: p.role,
            receiver: p.receiver,
            params: p.params.into_iter().map(|(name, binding, intent)| ParamPlan { name, binding, intent }).collect(),
            ret: p.ret,
            overload_group: group,
            exception_wrapped: p.exc,
            call: p.call,
            signature: p.signature,
            doc: p.doc,
        }
    }

    fn claim_mangled(&mut self, m: Mangled, claim_specific: bool) -> Mangled {
        let specific = if claim_specific { self.claim_internal(&m.specific) } else { m.specific };
        let interface = self.claim_internal(&m.interface);
        Mangled { specific, c_symbol: m.c_symbol, interface }
    }

    fn name_free_groups(&mut self, procs: Vec<Pending>) {
        let groups = self.group_overloads(procs);
        for g in groups {
            if g.is_empty() {
                continue;
            }
            let public = self.claim_public(&g[0].cpp_name.clone(), g[0].span);
            if g.len() == 1 {
                let p = g.into_iter().next().expect("one member");
                let m = mangle_name(&self.module, &public, None, MangleContext::Free);
                let m = self.claim_mangled(m, false);
                let plan = self.finish_proc(p, (public, m), None);
                self.plan.procedures.push(plan);
                continue;
            }
            let gid = self.plan.generics.len();
            let mut specifics = Vec::new();
            for (i, p) in g.into_iter().enumerate() {
                let m = mangle_name(&self.module, &public, Some(i), MangleContext::Free);
                let m = self.claim_mangled(m, true);
                let m = Mangled { c_symbol: format!("_wrap_{}_{}", self.module, m.specific), ..m };
                specifics.push(m.specific.clone());
                let plan = self.finish_proc(p, (public.clone(), m), Some(gid));
                self.plan.procedures.push(plan);
            }
            self.plan.generics.push(GenericPlan { name: public, specifics });
        }
    }

    fn plan_class(&mut self, decl: &ClassDecl, span: Span, cpp_name: &str, policy: &ExcPolicy) {
        if self.bindc_type.take(&decl.name) {
            self.plan_direct_struct(decl, span, cpp_name);
            return;
        }
        let Some(info) = self.env.classes.get(cpp_name).cloned() else {
            let why = "multiple inheritance is not supported".to_string();
            self.warn(ids::UNSUPPORTED, span, format!("skipping class `{}`: {why}", decl.name));
            self.classify(&decl.name, Strategy::Skipped(why));
            return;
        };
        self.classify(&decl.name, Strategy::Wrapped);
        let tname = info.fortran_name.clone();
        let mut parent: Option<String> = None;
        let mut depth = 0;
        let mut bound: BTreeMap<String, (String, Option<String>)> = BTreeMap::new();
        let mut pure = BTreeSet::new();
        if let Some(b) = decl.bases.iter().find(|b| b.access == Access::Public) {
            let key = b.ty.base_spelling();
            match self
                .env
                .classes
                .get(&key)
                .map(|c| c.fortran_name.clone())
                .and_then(|f| self.classes.get(&f).map(|s| (f, s)))
            {
                Some((pname, st)) => {
                    depth = st.depth + 1;
                    bound = st.bound.clone();
                    pure = st.pure.clone();
                    parent = Some(pname);
                }
                None => self.warn(
                    ids::UNSUPPORTED,
                    span,
                    format!("base class `{key}` of `{}` is not wrapped; emitting without a parent type", decl.name),
                ),
            }
        }
        self.parents.insert(tname.clone(), parent.clone());

        let mut ctors: Vec<(Vec<Param>, Option<String>)> = Vec::new();
        let mut methods: Vec<FunctionDecl> = Vec::new();
        let mut fields = Vec::new();
        let mut deletable = true;
        for m in &decl.members {
            match (&m.member, m.access) {
                (Member::Destructor { .. }, a) => deletable = a == Access::Public,
                (Member::Method(f), a) => {
                    if f.quals.is_pure {
                        pure.insert(f.name.clone());
                    } else {
                        pure.remove(&f.name);
                    }
                    if a == Access::Public {
                        methods.push(f.clone());
                    }
                }
                (_, Access::Protected | Access::Private) => {}
                (Member::Constructor { params, doc }, _) => ctors.push((params.clone(), doc.clone())),
                (Member::Field(fd), _) => fields.push(fd.clone()),
                (Member::Unsupported { name, reason }, _) => {
                    self.warn(ids::UNSUPPORTED, span, format!("skipping `{}::{name}`: {reason}", decl.name));
                }
            }
        }
        let abstract_ = !pure.is_empty();
        if abstract_ && !ctors.is_empty() {
            self.diags.push(Diagnostic::note(
                ids::UNSUPPORTED,
                span,
                format!("`{}` is abstract; its constructors are not wrapped", decl.name),
            ));
            ctors.clear();
        }

        let self_reserved = ["self", "swig_result", "fresult"];
        let recv_mut = self.intern(receiver(&info, false));
        let recv_const = self.intern(receiver(&info, true));
        let qualified = |n: &str| format!("{}::{n}", decl.name);

        // constructors
        let mut ctor_pending = Vec::new();
        for (params, doc) in &ctors {
            let f = FunctionDecl {
                name: decl.name.clone(),
                ret: TypeExpr::named(""),
                params: params.clone(),
                quals: Default::default(),
                has_body: false,
                doc: doc.clone(),
            };
            let variants = match expand_default_arguments(&f) {
                Ok(v) => v,
                Err(e) => {
                    self.error(ids::DEFAULT_ARGS, span, e);
                    continue;
                }
            };
            for v in variants {
                let sig =
                    format!("{}({})", cpp_name, v.params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "));
                let Some((ps, _)) = self.resolve_signature(&v.params, None, &sig, span, &self_reserved) else {
                    continue;
                };
                let ret = self.intern(constructor_return(&info));
                ctor_pending.push(Pending {
                    cpp_name: tname.clone(),
                    role: ProcRole::Constructor,
                    kind: ProcKind::Function,
                    receiver: None,
                    params: ps,
                    ret: Some(ret),
                    exc: policy.applies(&[&qualified(&decl.name), &decl.name]),
                    call: CallTarget::Constructor { class_cpp: cpp_name.to_string() },
                    signature: sig,
                    doc: v.doc.clone(),
                    span,
                });
            }
        }

        // methods and field accessors
        let mut method_pending: Vec<Pending> = Vec::new();
        for f in &methods {
            let variants = match expand_default_arguments(f) {
                Ok(v) => v,
                Err(e) => {
                    self.error(ids::DEFAULT_ARGS, span, e);
                    continue;
                }
            };
            for v in variants {
                let mut sig = v.signature();
                if v.quals.is_static {
                    sig = format!("static {sig}");
                }
                let Some((ps, ret)) = self.resolve_signature(&v.params, Some(&v.ret), &sig, span, &self_reserved)
                else {
                    continue;
                };
                let (role, recv, call) = if v.quals.is_static {
                    (
                        ProcRole::Static,
                        None,
                        CallTarget::Static { class_cpp: cpp_name.to_string(), name: v.name.clone() },
                    )
                } else {
                    let r = if v.quals.is_const { recv_const } else { recv_mut };
                    (ProcRole::Method, Some(r), CallTarget::Method { name: v.name.clone() })
                };
                method_pending.push(Pending {
                    cpp_name: v.name.clone(),
                    role,
                    kind: if ret.is_some() { ProcKind::Function } else { ProcKind::Subroutine },
                    receiver: recv,
                    params: ps,
                    ret,
                    exc: policy.applies(&[&qualified(&v.name), &v.name]),
                    call,
                    signature: sig,
                    doc: v.doc.clone(),
                    span,
                });
            }
        }
        for fd in &fields {
            if fd.is_static {
                self.warn(ids::UNSUPPORTED, span, format!("skipping static member `{}::{}`", decl.name, fd.name));
                continue;
            }
            if fd.extent.is_some() {
                self.warn(ids::UNSUPPORTED, span, format!("skipping array member `{}::{}`", decl.name, fd.name));
                continue;
            }
            let is_class = fd.ty.indirection() == Some(crate::parser::ast::Indirection::Value)
                && self.env.classes.contains_key(&fd.ty.base_spelling());
            let get_ty = if is_class { fd.ty.clone().reference() } else { fd.ty.clone() };
            let gsig = format!("{} get_{}() const", fd.ty, fd.name);
            if let Some((_, ret)) = self.resolve_signature(&[], Some(&get_ty), &gsig, span, &self_reserved) {
                method_pending.push(Pending {
                    cpp_name: format!("get_{}", fd.name),
                    role: ProcRole::Getter,
                    kind: ProcKind::Function,
                    receiver: Some(recv_const),
                    params: Vec::new(),
                    ret,
                    exc: false,
                    call: CallTarget::Getter { field: fd.name.clone() },
                    signature: gsig,
                    doc: None,
                    span,
                });
            } else {
                continue;
            }
            let settable = !fd.ty.is_const
                && !(fd.ty.pointers == 1 && fd.ty.as_fundamental() == Some(crate::parser::ast::Fundamental::Char));
            if settable {
                let set_ty = if is_class || fd.ty.named_base().is_some_and(|n| n.ends_with("string")) {
                    fd.ty.clone().with_const().reference()
                } else {
                    fd.ty.clone()
                };
                let ssig = format!("void set_{}({})", fd.name, set_ty.declare(&fd.name));
                let p = Param { ty: set_ty, name: Some(fd.name.clone()), default: None };
                if let Some((ps, _)) = self.resolve_signature(&[p], None, &ssig, span, &self_reserved) {
                    method_pending.push(Pending {
                        cpp_name: format!("set_{}", fd.name),
                        role: ProcRole::Setter,
                        kind: ProcKind::Subroutine,
                        receiver: Some(recv_mut),
                        params: ps,
                        ret: None,
                        exc: false,
                        call: CallTarget::Setter { field: fd.name.clone() },
                        signature: ssig,
                        doc: None,
                        span,
                    });
                }
            }
        }

        // names
        let mut tbs: Vec<TypeBound> = Vec::new();
        let claim_binding = |bound: &mut BTreeMap<String, (String, Option<String>)>,
                             wanted: &str,
                             key: Option<String>|
         -> (String, bool) {
            let lower = wanted.to_ascii_lowercase();
            match bound.get(&lower) {
                None => {
                    bound.insert(lower, (wanted.to_string(), key));
                    (wanted.to_string(), false)
                }
                Some((_, Some(k))) if key.as_ref() == Some(k) => (wanted.to_string(), false),
                Some(_) => {
                    let mut n = 1;
                    loop {
                        let cand = format!("{wanted}_{n}");
                        if let std::collections::btree_map::Entry::Vacant(e) = bound.entry(cand.to_ascii_lowercase()) {
                            e.insert((cand.clone(), key));
                            return (cand, true);
                        }
                        n += 1;
                    }
                }
            }
        };
        bound.entry("swigdata".into()).or_insert(("swigdata".into(), None));

        let release_m = mangle_name(&self.module, "release", None, MangleContext::Release { class: &tname });
        let release_m = self.claim_mangled(release_m, true);
        let (_, _) = claim_binding(&mut bound, "release", Some("release".into()));
        tbs.push(TypeBound::Procedure {
            binding: "release".into(),
            specific: release_m.specific.clone(),
            nopass: false,
            private: false,
        });
        let assign_m = mangle_name(&self.module, "assign", None, MangleContext::Assign { class: &tname });
        let assign_m = self.claim_mangled(assign_m, true);
        claim_binding(&mut bound, &assign_m.specific, None);
        tbs.push(TypeBound::Procedure {
            binding: assign_m.specific.clone(),
            specific: assign_m.specific.clone(),
            nopass: false,
            private: true,
        });
        tbs.push(TypeBound::Assignment { binding: assign_m.specific.clone() });

        let mut method_plans = Vec::new();
        let groups = self.group_overloads(method_pending);
        for g in groups {
            if g.is_empty() {
                continue;
            }
            let (wanted, _) = names::fortran_ident(&g[0].cpp_name);
            let wanted = if names::is_reserved(&g[0].cpp_name) { g[0].cpp_name.clone() } else { wanted };
            let gspan = g[0].span;
            if g.len() == 1 {
                let p = g.into_iter().next().expect("one member");
                let key = format!("{:?} {:?} {}", p.params, p.ret, p.receiver.is_none());
                let (bname, clash) = claim_binding(&mut bound, &wanted, Some(key));
                if clash {
                    self.warn(
                        ids::NAME_COLLISION,
                        gspan,
                        format!("`{}::{}` clashes with another binding; emitted as `{bname}`", decl.name, p.cpp_name),
                    );
                }
                let m = mangle_name(&self.module, &bname, None, MangleContext::Member { class: &tname });
                let m = self.claim_mangled(m, true);
                tbs.push(TypeBound::Procedure {
                    binding: bname.clone(),
                    specific: m.specific.clone(),
                    nopass: p.receiver.is_none(),
                    private: false,
                });
                method_plans.push(self.finish_proc(p, (bname, m), None));
                continue;
            }
            let (gname, clash) = claim_binding(&mut bound, &wanted, None);
            if clash {
                self.warn(
                    ids::NAME_COLLISION,
                    gspan,
                    format!("`{}::{wanted}` clashes with another binding; emitted as `{gname}`", decl.name),
                );
            }
            let gid = method_plans.len();
            let mut members = Vec::new();
            for (i, p) in g.into_iter().enumerate() {
                let m = mangle_name(&self.module, &gname, Some(i), MangleContext::Member { class: &tname });
                let m = self.claim_mangled(m, true);
                claim_binding(&mut bound, &m.specific, None);
                tbs.push(TypeBound::Procedure {
                    binding: m.specific.clone(),
                    specific: m.specific.clone(),
                    nopass: p.receiver.is_none(),
                    private: true,
                });
                members.push(m.specific.clone());
                method_plans.push(self.finish_proc(p, (gname.clone(), m), Some(gid)));
            }
            tbs.push(TypeBound::Generic { binding: gname, bindings: members });
        }

        let mut ctor_plans = Vec::new();
        let cgroups = self.group_overloads(ctor_pending);
        let cg: Vec<Pending> = cgroups.into_iter().flatten().collect();
        let many = cg.len() > 1;
        for (i, p) in cg.into_iter().enumerate() {
            let m = mangle_name(&self.module, &tname, many.then_some(i), MangleContext::Constructor { class: &tname });
            let m = self.claim_mangled(m, true);
            ctor_plans.push(self.finish_proc(p, (tname.clone(), m), Some(0)));
        }

        let release = ProcedurePlan {
            public_name: "release".into(),
            specific_name: release_m.specific,
            c_symbol: release_m.c_symbol,
            interface_name: release_m.interface,
            kind: ProcKind::Subroutine,
            role: ProcRole::Release,
            receiver: Some(recv_mut),
            params: Vec::new(),
            ret: None,
            overload_group: None,
            exception_wrapped: false,
            call: CallTarget::Destructor { class_cpp: cpp_name.to_string(), deletable },
            signature: format!("{cpp_name}::~{}()", decl.name),
            doc: None,
        };
        let assign = ProcedurePlan {
            public_name: "assignment(=)".into(),
            specific_name: assign_m.specific,
            c_symbol: assign_m.c_symbol,
            interface_name: assign_m.interface,
            kind: ProcKind::Subroutine,
            role: ProcRole::Assign,
            receiver: Some(recv_mut),
            params: vec![ParamPlan { name: "other".into(), binding: recv_const, intent: Intent::In }],
            ret: None,
            overload_group: None,
            exception_wrapped: false,
            call: CallTarget::Assign { class_cpp: cpp_name.to_string() },
            signature: format!("{cpp_name} &operator=({cpp_name} const &)"),
            doc: None,
        };
        self.classes.insert(tname.clone(), ClassState { depth, bound, pure });
        self.plan.proxy_types.push(ProxyTypePlan {
            type_name: tname,
            cpp_name: cpp_name.to_string(),
            parent,
            extends_chain_depth: depth,
            constructors: ctor_plans,
            methods: method_plans,
            release,
            assign,
            has_release: true,
            bindings: tbs,
            doc: decl.doc.clone(),
        });
    }

    fn pod_field_decl(&self, ty: &TypeExpr, extent: Option<&str>) -> Result<(String, Option<String>), String> {
        let t = self.env.resolve_typedefs(ty);
        if t.reference != RefKind::None {
            return Err("references have no C layout".into());
        }
        let (decl, import) = if matches!(t.base, BaseType::FnPtr { .. }) && t.pointers == 0 {
            ("type(C_FUNPTR)".to_string(), None)
        } else if t.pointers > 0 {
            ("type(C_PTR)".to_string(), None)
        } else if let Some(f) = t.as_fundamental() {
            (typemaps::fortran_type_decl(f).ok_or_else(|| format!("`{t}` is not interoperable"))?, None)
        } else if let Some(n) = t.named_base() {
            if self.env.enums.contains(n) {
                ("integer(C_INT)".to_string(), None)
            } else if let Some(p) = self.env.pod_structs.get(n) {
                (format!("type({p})"), Some(p.clone()))
            } else {
                return Err(format!("`{t}` is not interoperable"));
            }
        } else {
            return Err(format!("`{t}` is not interoperable"));
        };
        match extent {
            None => Ok((decl, import)),
            Some(e) => {
                let n = eval_int(e, &BTreeMap::new()).map_err(|_| format!("array extent `{e}` is not a constant"))?;
                Ok((format!("{decl}, dimension({n})"), import))
            }
        }
    }

    fn plan_direct_struct(&mut self, decl: &ClassDecl, span: Span, cpp_name: &str) {
        let name = self.env.pod_structs.get(cpp_name).cloned().unwrap_or_else(|| decl.name.clone());
        let mut fields = Vec::new();
        let fail = |a: &mut Self, what: String| {
            a.error(ids::BINDC_TYPE_NONPOD, span, format!("`{}` cannot be a bind(C) type: {what}", decl.name));
            a.classify(&decl.name, Strategy::Skipped(what));
        };
        if !decl.bases.is_empty() {
            return fail(self, "it has base classes".into());
        }
        for m in &decl.members {
            match &m.member {
                Member::Field(fd) if fd.is_static => {}
                Member::Field(fd) => {
                    if m.access != Access::Public {
                        return fail(self, format!("field `{}` is not public", fd.name));
                    }
                    match self.pod_field_decl(&fd.ty, fd.extent.as_deref()) {
                        Ok((d, _)) => fields.push(DirectParam { name: fortran_ident(&fd.name).0, decl: d }),
                        Err(e) => return fail(self, format!("field `{}`: {e}", fd.name)),
                    }
                }
                Member::Method(f) if f.quals.is_virtual => {
                    return fail(self, format!("method `{}` is virtual", f.name));
                }
                Member::Destructor { is_virtual: true } => return fail(self, "the destructor is virtual".into()),
                _ => {}
            }
        }
        self.classify(&decl.name, Strategy::DirectBindCType);
        self.plan.direct_bindings.push(DirectBinding::Struct(DirectStruct {
            name,
            cpp_name: cpp_name.to_string(),
            fields,
        }));
    }

    fn direct_decl(&self, ty: &TypeExpr, is_return: bool) -> Result<(String, Option<String>), String> {
        let t = self.env.resolve_typedefs(ty);
        let value = if is_return { "" } else { ", value" };
        if matches!(t.base, BaseType::FnPtr { .. }) && t.pointers == 0 && t.reference == RefKind::None {
            return Ok((format!("type(C_FUNPTR){value}"), None));
        }
        let ind = t.indirection().ok_or_else(|| format!("`{ty}` has too many levels of indirection"))?;
        let fund = t.as_fundamental();
        let pod = t.named_base().and_then(|n| self.env.pod_structs.get(n)).cloned();
        let is_enum = t.named_base().is_some_and(|n| self.env.enums.contains(n));
        let scalar = |f: crate::parser::ast::Fundamental| {
            typemaps::fortran_type_decl(f).ok_or_else(|| format!("`{ty}` is not interoperable"))
        };
        let intent = if t.is_const { "in" } else { "inout" };
        match (ind, is_return) {
            (crate::parser::ast::Indirection::Value, _) => {
                if let Some(f) = fund {
                    Ok((format!("{}{value}", scalar(f)?), None))
                } else if let Some(p) = pod {
                    Ok((format!("type({p}){value}"), Some(p)))
                } else if is_enum {
                    Ok((format!("integer(C_INT){value}"), None))
                } else {
                    Err(format!("`{ty}` is not interoperable"))
                }
            }
            (crate::parser::ast::Indirection::Pointer, true) => Ok(("type(C_PTR)".into(), None)),
            (_, true) => Err("returning a reference is not interoperable".into()),
            (ind, false) => {
                let dim = if ind == crate::parser::ast::Indirection::Pointer { ", dimension(*)" } else { "" };
                match (fund, pod) {
                    (Some(crate::parser::ast::Fundamental::Void), _) => Ok(("type(C_PTR), value".into(), None)),
                    (Some(f), _) => Ok((format!("{}{dim}, intent({intent})", scalar(f)?), None)),
                    (None, Some(p)) => Ok((format!("type({p}), intent({intent})"), Some(p))),
                    _ => Err(format!("`{ty}` is not interoperable")),
                }
            }
        }
    }

    fn plan_direct_function(&mut self, decl: &FunctionDecl, span: Span) {
        let sig = decl.signature();
        let mut params = Vec::new();
        let mut imports = BTreeSet::new();
        let mut dummies = NameTable::new();
        dummies.reserve("fresult");
        let mut err = None;
        for (i, p) in decl.params.iter().enumerate() {
            match self.direct_decl(&p.ty, false) {
                Ok((d, imp)) => {
                    imports.extend(imp);
                    let wanted = p.name.clone().unwrap_or_else(|| format!("arg{}", i + 1));
                    let (name, _) = dummies.claim(&fortran_ident(&wanted).0);
                    params.push(DirectParam { name, decl: d });
                }
                Err(e) => {
                    err = Some(format!("parameter `{p}`: {e}"));
                    break;
                }
            }
        }
        let ret = if err.is_none() && !decl.ret.is_void() {
            match self.direct_decl(&decl.ret, true) {
                Ok((d, imp)) => {
                    imports.extend(imp);
                    Some(d)
                }
                Err(e) => {
                    err = Some(format!("return type: {e}"));
                    None
                }
            }
        } else {
            None
        };
        if let Some(e) = err {
            self.error(ids::BINDC_NONINTEROP, span, format!("`{sig}` cannot be bound directly: {e}"));
            self.classify(&decl.name, Strategy::Skipped(e));
            return;
        }
        let name = self.claim_public(&decl.name, span);
        self.classify(&decl.name, Strategy::DirectBindC);
        self.plan.direct_bindings.push(DirectBinding::Function(DirectFunction {
            name,
            c_name: decl.name.clone(),
            params,
            ret,
            imports: imports.into_iter().collect(),
            signature: sig,
        }));
    }

    fn known_ints(&self) -> BTreeMap<String, i64> {
        let mut known = BTreeMap::new();
        for e in &self.plan.enums {
            for x in &e.enumerators {
                known.insert(x.cpp_name.clone(), x.value);
            }
        }
        for c in &self.plan.constants {
            if let ConstValue::Int(v) = c.value {
                known.insert(c.cpp_name.clone(), v);
            }
        }
        known
    }

    fn plan_enum(&mut self, decl: &EnumDecl, span: Span) {
        let label = decl.name.clone().unwrap_or_else(|| "<anonymous enum>".into());
        let mut known = self.known_ints();
        for item in &self.unit.items {
            if let Item::Constant(c) = item {
                if let Ok(ConstValue::Int(v)) = eval_macro(&c.value, &known) {
                    known.entry(c.name.clone()).or_insert(v);
                }
            }
        }
        let mut next = 0i64;
        let mut values = Vec::new();
        for en in &decl.enumerators {
            let v = match &en.value {
                Some(text) => match eval_int(text, &known) {
                    Ok(v) => v,
                    Err(e) => {
                        let why = format!("cannot evaluate `{}` = {text}: {e}", en.name);
                        self.warn(ids::UNSUPPORTED, span, format!("skipping enum `{label}`: {why}"));
                        self.classify(&label, Strategy::Skipped(why));
                        return;
                    }
                },
                None => next,
            };
            known.insert(en.name.clone(), v);
            values.push((en.name.clone(), v));
            next = v.wrapping_add(1);
        }
        let kind_name = decl.name.as_ref().map(|n| self.claim_public(n, span));
        let mut enumerators = Vec::new();
        for (n, v) in values {
            let wanted = match (&decl.name, decl.scoped) {
                (Some(e), true) => format!("{e}_{n}"),
                _ => n.clone(),
            };
            let name = self.claim_public(&wanted, span);
            enumerators.push(EnumeratorPlan { name, cpp_name: n, value: v });
        }
        self.classify(&label, Strategy::Enum);
        self.plan.enums.push(EnumPlan { cpp_name: decl.name.clone(), kind_name, enumerators });
    }

    fn plan_constant(&mut self, decl: &ConstantMacro, span: Span) {
        if !self.fortranconst.take(&decl.name) {
            self.diags.push(Diagnostic::note(
                ids::SKIPPED_MACRO,
                span,
                format!("macro `{}` is not exported; list it in %fortranconst to emit a parameter", decl.name),
            ));
            self.classify(&decl.name, Strategy::Skipped("macro without %fortranconst".into()));
            return;
        }
        let known = self.known_ints();
        match eval_macro(&decl.value, &known) {
            Ok(value) => {
                let name = self.claim_public(&decl.name, span);
                self.classify(&decl.name, Strategy::FortranConst);
                self.plan.constants.push(ConstantPlan { name, cpp_name: decl.name.clone(), value });
            }
            Err(e) => {
                self.warn(ids::UNSUPPORTED, span, format!("skipping macro `{}`: {e}", decl.name));
                self.classify(&decl.name, Strategy::Skipped(e));
            }
        }
    }

    fn plan_callback(&mut self, name: &str, span: Span) {
        let t = TypeExpr::named(name);
        if let Ok(b) = typemaps::map_funptr(&t, &self.env, Role::Param) {
            if let Some(sig) = b.callback {
                let fname = self.claim_public(name, span);
                let cpp_type = self.env.typedefs.get(name).map(|t| t.to_string()).unwrap_or_default();
                self.plan.callbacks.push(CallbackPlan { name: fname, cpp_type, sig });
            }
        }
    }

    fn report_unused_directives(&mut self) {
        let mut unused = Vec::new();
        for (set, what) in [
            (&self.bindc, "%fortranbindc"),
            (&self.bindc_type, "%fortranbindc_type"),
            (&self.fortranconst, "%fortranconst"),
        ] {
            for (n, (span, used)) in &set.names {
                if !used {
                    unused.push((*span, format!("{what} names `{n}`, which is not declared")));
                }
            }
        }
        for (span, msg) in unused {
            self.warn(ids::UNUSED_DIRECTIVE, span, msg);
        }
        let rules: Vec<(TypemapPattern, String, Span)> = self
            .rules
            .iter()
            .filter(|r| !r.used)
            .map(|r| (r.pattern, r.params.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "), r.span))
            .collect();
        for (pattern, shown, span) in rules {
            match pattern {
                TypemapPattern::ArraySpan => self.error(
                    ids::APPLY_MISMATCH,
                    span,
                    format!("%apply {} target `({shown})` matches no declaration", pattern.spelling()),
                ),
                TypemapPattern::FortranIndex => self.warn(
                    ids::UNUSED_DIRECTIVE,
                    span,
                    format!("%apply {} target `{shown}` matches no declaration", pattern.spelling()),
                ),
            }
        }
    }

    fn finish(mut self) -> ModulePlan {
        let mut plan = std::mem::take(&mut self.plan);
        let exc = plan.all_procedures().any(|p| p.exception_wrapped);
        plan.exceptions = exc;
        let mut used: BTreeSet<BindingId> = BTreeSet::new();
        for p in plan.all_procedures() {
            used.extend(p.receiver);
            used.extend(p.params.iter().map(|x| x.binding));
            used.extend(p.ret);
        }
        let mut helpers: BTreeSet<Helper> =
            used.iter().flat_map(|&b| self.bindings[b].helpers.iter().copied()).collect();
        if !plan.proxy_types.is_empty() {
            helpers.insert(Helper::ClassWrapper);
        }
        if plan.exceptions {
            helpers.insert(Helper::ArrayWrapper);
            helpers.insert(Helper::StringOut);
        }
        if helpers.contains(&Helper::StringOut) {
            plan.support.push(SupportRoutine {
                kind: SupportKind::Free,
                interface_name: "SWIG_free".into(),
                c_symbol: format!("_wrap_{}_SWIG_free", plan.module_name),
            });
        }
        if plan.exceptions {
            plan.support.push(SupportRoutine {
                kind: SupportKind::GetSerr,
                interface_name: "swigc_get_serr".into(),
                c_symbol: format!("_wrap_{}_get_serr", plan.module_name),
            });
        }
        plan.helpers = helpers;
        plan.bindings = self.bindings;
        plan.diagnostics = self.diags;
        plan
    }
}
