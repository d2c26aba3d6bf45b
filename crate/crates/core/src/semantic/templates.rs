//! Template instantiation by parameter substitution.

use std::collections::{BTreeMap, BTreeSet};

use crate::diag::{ids, Diagnostic, Span};
use crate::parser::ast::{
    BaseType, ClassDecl, Directive, FunctionDecl, InterfaceUnit, Item, Member, Param, RefKind, TemplateDecl,
    TemplateParam, Templated, TypeExpr,
};

/// One instantiated declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concrete {
    /// `call_args` is the explicit template argument list for the C++ call, e.g. `<int>`.
    Function { decl: FunctionDecl, template: String, call_args: String },
    /// `cpp_name` is the full C++ spelling, e.g. `Box<int>`.
    Class { decl: ClassDecl, alias: String, cpp_name: String },
}

#[derive(Clone, Debug)]
pub struct Instantiation {
    /// Index of the `%template` item in the unit.
    pub item_index: usize,
    pub span: Span,
    pub concrete: Concrete,
}

type Subst = BTreeMap<String, TypeExpr>;

/// Replace template parameters in `ty`.
pub fn subst_type(ty: &TypeExpr, map: &Subst) -> TypeExpr {
    let mut out = ty.clone();
    out.template_args = ty.template_args.iter().map(|a| subst_type(a, map)).collect();
    match &ty.base {
        BaseType::Named(n) | BaseType::Value(n) => {
            if let Some(rep) = map.get(n) {
                // an injected class name keeps its own instantiation arguments
                if !(ty.template_args.is_empty() || rep.template_args.is_empty()) {
                    out.base = rep.base.clone();
                    return out;
                }
                let mut r = rep.clone();
                r.is_const |= ty.is_const;
                r.pointers = r.pointers.saturating_add(ty.pointers);
                if ty.reference != RefKind::None {
                    r.reference = ty.reference;
                }
                if r.template_args.is_empty() {
                    r.template_args = out.template_args;
                }
                return r;
            }
        }
        BaseType::FnPtr { ret, params } => {
            out.base = BaseType::FnPtr {
                ret: Box::new(subst_type(ret, map)),
                params: params.iter().map(|p| subst_type(p, map)).collect(),
            };
        }
        BaseType::Fundamental(_) => {}
    }
    out
}

fn subst_params(ps: &[Param], map: &Subst) -> Vec<Param> {
    ps.iter().map(|p| Param { ty: subst_type(&p.ty, map), ..p.clone() }).collect()
}

fn subst_fn(f: &FunctionDecl, map: &Subst) -> FunctionDecl {
    FunctionDecl { ret: subst_type(&f.ret, map), params: subst_params(&f.params, map), ..f.clone() }
}

fn subst_class(c: &ClassDecl, map: &Subst) -> ClassDecl {
    let mut out = c.clone();
    for b in &mut out.bases {
        b.ty = subst_type(&b.ty, map);
    }
    for m in &mut out.members {
        m.member = match &m.member {
            Member::Method(f) => Member::Method(subst_fn(f, map)),
            Member::Constructor { params, doc } => {
                Member::Constructor { params: subst_params(params, map), doc: doc.clone() }
            }
            Member::Field(fd) => {
                let mut fd = fd.clone();
                fd.ty = subst_type(&fd.ty, map);
                Member::Field(fd)
            }
            other => other.clone(),
        };
    }
    out
}

fn arg_spelling(args: &[TypeExpr]) -> String {
    let mut s = format!("<{}", args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", "));
    if s.ends_with('>') {
        s.push(' ');
    }
    s.push('>');
    s
}

/// Expand every `%template` in `unit`, in source order.
///
/// Unknown templates, arity mismatches and reused aliases are errors;
/// templates that are never instantiated draw a warning.
pub fn expand_templates(unit: &InterfaceUnit) -> (Vec<Instantiation>, Vec<Diagnostic>) {
    let mut templates: BTreeMap<&str, (&TemplateDecl, Span)> = BTreeMap::new();
    let mut order: Vec<(&str, Span)> = Vec::new();
    for (item, span) in unit.iter() {
        if let Item::Template(t) = item {
            templates.insert(t.name(), (t, span));
            order.push((t.name(), span));
        }
    }
    let mut out = Vec::new();
    let mut diags = Vec::new();
    let mut used = BTreeSet::new();
    let mut aliases: BTreeMap<String, Span> = BTreeMap::new();
    for (idx, (item, span)) in unit.iter().enumerate() {
        let Item::Directive(Directive::TemplateInstantiation { alias, target, args }) = item else { continue };
        let Some((tmpl, _)) = templates.get(target.as_str()) else {
            diags.push(Diagnostic::error(
                ids::UNKNOWN_TEMPLATE,
                span,
                format!("`{target}` is not a declared template"),
            ));
            continue;
        };
        used.insert(target.clone());
        if tmpl.params.len() != args.len() {
            diags.push(Diagnostic::error(
                ids::TEMPLATE_ARITY,
                span,
                format!("template `{target}` takes {} argument(s), {} given", tmpl.params.len(), args.len()),
            ));
            continue;
        }
        if let Some(prev) = aliases.get(alias) {
            diags.push(Diagnostic::error(
                ids::DUPLICATE_ALIAS,
                span,
                format!("alias `{alias}` already used by the instantiation at {prev}"),
            ));
            continue;
        }
        aliases.insert(alias.clone(), span);
        let mut map: Subst = BTreeMap::new();
        for (p, a) in tmpl.params.iter().zip(args) {
            match p {
                TemplateParam::Type(n) => map.insert(n.clone(), a.clone()),
                TemplateParam::Value { name, .. } => map.insert(name.clone(), a.clone()),
            };
        }
        let call_args = arg_spelling(args);
        let concrete = match &tmpl.decl {
            Templated::Function(f) => {
                Concrete::Function { decl: subst_fn(f, &map), template: target.clone(), call_args }
            }
            Templated::Class(c) => {
                let mut self_ty = TypeExpr::named(c.name.clone());
                self_ty.template_args = args.clone();
                map.insert(c.name.clone(), self_ty.clone());
                let mut decl = subst_class(c, &map);
                decl.name = alias.clone();
                Concrete::Class { decl, alias: alias.clone(), cpp_name: self_ty.base_spelling() }
            }
        };
        out.push(Instantiation { item_index: idx, span, concrete });
    }
    for (name, span) in order {
        if !used.contains(name) {
            diags.push(Diagnostic::warning(
                ids::UNUSED_TEMPLATE,
                span,
                format!("template `{name}` is never instantiated and produces no bindings"),
            ));
        }
    }
    (out, diags)
}
