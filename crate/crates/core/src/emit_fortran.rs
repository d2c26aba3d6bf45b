//! Fortran 2003 module emission.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::consteval::ConstValue;
use crate::fortran_fmt::wrap_source;
use crate::semantic::{
    DirectBinding, DirectFunction, ModulePlan, ProcKind, ProcRole, ProcedurePlan, ProxyTypePlan, SupportKind, TypeBound,
};
use crate::typemaps::{Helper, Intent, TypemapBinding};

const HEADER: &str = "! This file was automatically generated by bindforge.\n! Do not modify.\n";

const STRING_IN: &str = r#"subroutine SWIG_string_to_chararray(string, chars, wrap)
  use, intrinsic :: ISO_C_BINDING
  character(kind=C_CHAR, len=*), intent(in) :: string
  character(kind=C_CHAR), dimension(:), target, allocatable, intent(out) :: chars
  type(SwigArrayWrapper), intent(out) :: wrap
  integer :: i

  allocate(character(kind=C_CHAR) :: chars(len(string) + 1))
  do i = 1, len(string)
    chars(i) = string(i:i)
  end do
  chars(len(string) + 1) = C_NULL_CHAR
  wrap%data = c_loc(chars)
  wrap%size = len(string, kind=C_SIZE_T)
end subroutine
"#;

const STRING_OUT: &str = r#"subroutine SWIG_chararray_to_string(wrap, string)
  use, intrinsic :: ISO_C_BINDING
  type(SwigArrayWrapper), intent(in) :: wrap
  character(kind=C_CHAR, len=:), allocatable, intent(out) :: string
  character(kind=C_CHAR), dimension(:), pointer :: chars
  integer(kind=C_SIZE_T) :: i

  allocate(character(kind=C_CHAR, len=wrap%size) :: string)
  if (wrap%size > 0) then
    call c_f_pointer(wrap%data, chars, [wrap%size])
    do i = 1, wrap%size
      string(i:i) = chars(i)
    end do
  end if
end subroutine
"#;

/// Replace `$`-placeholders in a Fortran snippet.
fn subst(s: &str, input: &str, farg: &str, result: &str) -> String {
    s.replace("$fresult", "fresult").replace("$result", result).replace("$farg", farg).replace("$input", input)
}

fn push_lines(out: &mut String, text: &str, level: usize) {
    for line in text.lines() {
        if line.is_empty() {
            out.push('\n');
        } else {
            let _ = writeln!(out, "{}{line}", " ".repeat(level));
        }
    }
}

fn doc_comment(out: &mut String, doc: Option<&str>, level: usize) {
    if let Some(d) = doc {
        for l in d.lines() {
            let l = l.trim_end();
            let _ = writeln!(out, "{}!{}{l}", " ".repeat(level), if l.is_empty() { "" } else { " " });
        }
    }
}

struct Bridge<'a> {
    name: String,
    binding: &'a TypemapBinding,
}

/// Bridge arguments of `p` in call order: receiver first, then parameters.
fn bridges<'a>(plan: &'a ModulePlan, p: &ProcedurePlan) -> Vec<Bridge<'a>> {
    let mut out = Vec::new();
    if let Some(r) = p.receiver {
        out.push(Bridge { name: "farg1".into(), binding: plan.binding(r) });
    }
    for prm in &p.params {
        let k = out.len() + 1;
        out.push(Bridge { name: format!("farg{k}"), binding: plan.binding(prm.binding) });
    }
    out
}

fn interface_body(plan: &ModulePlan, p: &ProcedurePlan, out: &mut String) {
    let br = bridges(plan, p);
    let args: Vec<&str> = br.iter().map(|b| b.name.as_str()).collect();
    let args = args.join(", ");
    let ret = p.ret.map(|r| plan.binding(r));
    let kw = if ret.is_some() { "function" } else { "subroutine" };
    let result = if ret.is_some() { " result(fresult)" } else { "" };
    let _ = writeln!(out, "{kw} {}({args}) bind(C, name=\"{}\"){result}", p.interface_name, p.c_symbol);
    out.push_str(" use, intrinsic :: ISO_C_BINDING\n");
    let imports: BTreeSet<&str> =
        br.iter().map(|b| b.binding).chain(ret).flat_map(|b| b.imports.iter().map(String::as_str)).collect();
    if !imports.is_empty() {
        let _ = writeln!(out, " import :: {}", imports.into_iter().collect::<Vec<_>>().join(", "));
    }
    for b in &br {
        if b.binding.bridge_by_value {
            let _ = writeln!(out, " {}, intent(in), value :: {}", b.binding.fortran_bridge, b.name);
        } else {
            let _ = writeln!(out, " {} :: {}", b.binding.fortran_bridge, b.name);
        }
    }
    if let Some(r) = ret {
        let _ = writeln!(out, " {} :: fresult", r.fortran_bridge);
    }
    let _ = writeln!(out, "end {kw}");
}

fn procedure(plan: &ModulePlan, p: &ProcedurePlan, type_name: Option<&str>, out: &mut String) {
    let br = bridges(plan, p);
    let ret = p.ret.map(|r| plan.binding(r));
    let is_ctor = p.role == ProcRole::Constructor;
    let result = if is_ctor { "self" } else { "swig_result" };
    let mut dummies: Vec<String> = Vec::new();
    if p.receiver.is_some() {
        dummies.push("self".into());
    }
    dummies.extend(p.params.iter().map(|x| x.name.clone()));
    let kw = if p.kind == ProcKind::Function { "function" } else { "subroutine" };
    let mut s = String::new();
    doc_comment(&mut s, p.doc.as_deref(), 0);
    let _ = write!(s, "{kw} {}({})", p.specific_name, dummies.join(", "));
    if ret.is_some() {
        let _ = write!(s, " result({result})");
    }
    s.push('\n');
    let mut body = String::new();
    body.push_str("use, intrinsic :: ISO_C_BINDING\n");
    if let Some(r) = ret {
        let _ = writeln!(body, "{} :: {result}", r.fortran_decl);
    }
    if let Some(r) = p.receiver {
        let rb = plan.binding(r);
        let intent = match p.role {
            ProcRole::Release | ProcRole::Assign => "inout",
            _ => rb.intent.unwrap_or(Intent::In).as_str(),
        };
        let _ = writeln!(body, "{}, intent({intent}) :: self", rb.fortran_decl);
    }
    for prm in &p.params {
        let pb = plan.binding(prm.binding);
        let decl = if p.role == ProcRole::Assign {
            format!("type({})", type_name.unwrap_or_default())
        } else {
            pb.fortran_decl.clone()
        };
        let _ = writeln!(body, "{decl}, intent({}) :: {}", prm.intent.as_str(), prm.name);
    }
    for b in &br {
        for t in &b.binding.fortran_temps {
            let _ = writeln!(body, "{}", subst(t, "", &b.name, ""));
        }
    }
    if let Some(r) = ret {
        let _ = writeln!(body, "{} :: fresult", r.fortran_bridge);
    }
    for b in &br {
        let _ = writeln!(body, "{} :: {}", b.binding.fortran_bridge, b.name);
    }
    body.push('\n');
    let inputs: Vec<&str> = dummies.iter().map(String::as_str).collect();
    for (b, input) in br.iter().zip(&inputs) {
        push_lines(&mut body, &subst(&b.binding.snippets.fortran_pre, input, &b.name, result), 0);
    }
    let args: Vec<&str> = br.iter().map(|b| b.name.as_str()).collect();
    let call = format!("{}({})", p.interface_name, args.join(", "));
    match p.role {
        ProcRole::Release => {
            body.push_str("if (btest(farg1%cmemflags, swig_cmem_own_bit)) then\n");
            let _ = writeln!(body, "  call {call}");
            body.push_str("end if\n");
            body.push_str("farg1%cptr = C_NULL_PTR\n");
            body.push_str("farg1%cmemflags = 0\n");
            body.push_str("self%swigdata = farg1\n");
        }
        ProcRole::Assign => {
            let _ = writeln!(body, "call {call}");
            body.push_str("self%swigdata = farg1\n");
        }
        _ => {
            if ret.is_some() {
                let _ = writeln!(body, "fresult = {call}");
            } else {
                let _ = writeln!(body, "call {call}");
            }
            for (b, input) in br.iter().zip(&inputs) {
                push_lines(&mut body, &subst(&b.binding.snippets.fortran_post, input, &b.name, result), 0);
            }
            if let Some(r) = ret {
                push_lines(&mut body, &subst(&r.snippets.fortran_post, "", "fresult", result), 0);
            }
        }
    }
    push_lines(&mut s, &body, 2);
    let _ = writeln!(s, "end {kw}");
    push_lines(out, &s, 0);
    out.push('\n');
}

fn type_definition(t: &ProxyTypePlan, out: &mut String) {
    doc_comment(out, t.doc.as_deref(), 1);
    let _ = writeln!(out, " ! class {}", t.cpp_name);
    match &t.parent {
        Some(p) => {
            let _ = writeln!(out, " type, extends({p}) :: {}", t.type_name);
        }
        None => {
            let _ = writeln!(out, " type :: {}", t.type_name);
            out.push_str("  type(SwigClassWrapper), private :: swigdata\n");
        }
    }
    out.push_str(" contains\n");
    for b in &t.bindings {
        match b {
            TypeBound::Procedure { binding, specific, nopass, private } => {
                let mut attrs = String::new();
                if *nopass {
                    attrs.push_str(", nopass");
                }
                if *private {
                    attrs.push_str(", private");
                }
                if binding == specific {
                    let _ = writeln!(out, "  procedure{attrs} :: {specific}");
                } else {
                    let _ = writeln!(out, "  procedure{attrs} :: {binding} => {specific}");
                }
            }
            TypeBound::Generic { binding, bindings } => {
                let _ = writeln!(out, "  generic :: {binding} => {}", bindings.join(", "));
            }
            TypeBound::Assignment { binding } => {
                let _ = writeln!(out, "  generic :: assignment(=) => {binding}");
            }
        }
    }
    let _ = writeln!(out, " end type {}", t.type_name);
    if !t.constructors.is_empty() {
        let _ = writeln!(out, " interface {}", t.type_name);
        let names: Vec<&str> = t.constructors.iter().map(|c| c.specific_name.as_str()).collect();
        let _ = writeln!(out, "  module procedure {}", names.join(", "));
        out.push_str(" end interface\n");
    }
    let _ = writeln!(out, " public :: {}", t.type_name);
}

fn direct_function(f: &DirectFunction, out: &mut String) {
    let kw = if f.ret.is_some() { "function" } else { "subroutine" };
    let args: Vec<&str> = f.params.iter().map(|p| p.name.as_str()).collect();
    let result = if f.ret.is_some() { " result(fresult)" } else { "" };
    let _ = writeln!(out, "  {kw} {}({}) bind(C, name=\"{}\"){result}", f.name, args.join(", "), f.c_name);
    out.push_str("   use, intrinsic :: ISO_C_BINDING\n");
    if !f.imports.is_empty() {
        let _ = writeln!(out, "   import :: {}", f.imports.join(", "));
    }
    for p in &f.params {
        let _ = writeln!(out, "   {} :: {}", p.decl, p.name);
    }
    if let Some(r) = &f.ret {
        let _ = writeln!(out, "   {r} :: fresult");
    }
    let _ = writeln!(out, "  end {kw}");
}

fn fortran_string(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Render the Fortran module.
pub fn emit_fortran(plan: &ModulePlan) -> String {
    let m = &plan.module_name;
    let h = &plan.helpers;
    let mut out = String::new();
    out.push_str(HEADER);
    let _ = writeln!(out, "module {m}");
    out.push_str(" use, intrinsic :: ISO_C_BINDING\n");
    out.push_str(" implicit none\n");
    out.push_str(" private\n\n");

    if h.contains(&Helper::ClassWrapper) {
        out.push_str(" type, bind(C) :: SwigClassWrapper\n");
        out.push_str("  type(C_PTR), public :: cptr = C_NULL_PTR\n");
        out.push_str("  integer(C_INT), public :: cmemflags = 0\n");
        out.push_str(" end type\n");
    }
    if h.contains(&Helper::ArrayWrapper) {
        out.push_str(" type, bind(C) :: SwigArrayWrapper\n");
        out.push_str("  type(C_PTR), public :: data = C_NULL_PTR\n");
        out.push_str("  integer(C_SIZE_T), public :: size = 0\n");
        out.push_str(" end type\n");
    }
    if h.contains(&Helper::ClassWrapper) {
        out.push_str(" integer, parameter :: swig_cmem_own_bit = 0\n");
        out.push_str(" integer, parameter :: swig_cmem_rvalue_bit = 1\n");
        out.push_str(" integer, parameter :: swig_cmem_const_bit = 2\n");
    }
    if plan.exceptions {
        let _ = writeln!(out, " integer(C_INT), bind(C, name=\"swig_{m}_ierr\") :: ierr");
        out.push_str(" public :: ierr\n");
        out.push_str(" public :: get_serr\n");
    }
    out.push('\n');

    for e in &plan.enums {
        let _ = writeln!(out, " ! enum {}", e.cpp_name.as_deref().unwrap_or("(anonymous)"));
        out.push_str(" enum, bind(c)\n");
        for x in &e.enumerators {
            let _ = writeln!(out, "  enumerator :: {} = {}", x.name, x.value);
        }
        out.push_str(" end enum\n");
        let mut names: Vec<&str> = Vec::new();
        if let (Some(k), Some(first)) = (&e.kind_name, e.enumerators.first()) {
            let _ = writeln!(out, " integer, parameter :: {k} = kind({})", first.name);
            names.push(k);
        }
        names.extend(e.enumerators.iter().map(|x| x.name.as_str()));
        let _ = writeln!(out, " public :: {}", names.join(", "));
    }
    for c in &plan.constants {
        let decl = match &c.value {
            ConstValue::Int(v) if i32::try_from(*v).is_ok() => {
                format!("integer(C_INT), parameter :: {} = {v}_C_INT", c.name)
            }
            ConstValue::Int(v) => format!("integer(C_LONG_LONG), parameter :: {} = {v}_C_LONG_LONG", c.name),
            ConstValue::Float { text, single: true } => {
                format!("real(C_FLOAT), parameter :: {} = {text}_C_FLOAT", c.name)
            }
            ConstValue::Float { text, single: false } => {
                format!("real(C_DOUBLE), parameter :: {} = {text}_C_DOUBLE", c.name)
            }
            ConstValue::Str(s) => {
                format!("character(kind=C_CHAR, len=*), parameter :: {} = {}", c.name, fortran_string(s))
            }
        };
        let _ = writeln!(out, " {decl}");
        let _ = writeln!(out, " public :: {}", c.name);
    }
    for d in &plan.direct_bindings {
        if let DirectBinding::Struct(s) = d {
            let _ = writeln!(out, " ! struct {}", s.cpp_name);
            let _ = writeln!(out, " type, bind(C) :: {}", s.name);
            for f in &s.fields {
                let _ = writeln!(out, "  {} :: {}", f.decl, f.name);
            }
            let _ = writeln!(out, " end type {}", s.name);
            let _ = writeln!(out, " public :: {}", s.name);
        }
    }
    for t in &plan.proxy_types {
        type_definition(t, &mut out);
    }
    let grouped: BTreeSet<&str> = plan.generics.iter().flat_map(|g| g.specifics.iter().map(String::as_str)).collect();
    for p in &plan.procedures {
        if !grouped.contains(p.specific_name.as_str()) {
            let _ = writeln!(out, " public :: {}", p.public_name);
        }
    }
    for g in &plan.generics {
        let _ = writeln!(out, " public :: {}", g.name);
        let _ = writeln!(out, " interface {}", g.name);
        let _ = writeln!(out, "  module procedure {}", g.specifics.join(", "));
        out.push_str(" end interface\n");
    }

    let direct: Vec<&DirectFunction> = plan
        .direct_bindings
        .iter()
        .filter_map(|d| match d {
            DirectBinding::Function(f) => Some(f),
            DirectBinding::Struct(_) => None,
        })
        .collect();
    if !direct.is_empty() {
        out.push_str("\n interface\n");
        for f in &direct {
            direct_function(f, &mut out);
        }
        out.push_str(" end interface\n");
        let names: Vec<&str> = direct.iter().map(|f| f.name.as_str()).collect();
        let _ = writeln!(out, " public :: {}", names.join(", "));
    }
    if !plan.callbacks.is_empty() {
        out.push_str("\n abstract interface\n");
        for c in &plan.callbacks {
            let args: Vec<String> = (1..=c.sig.params.len()).map(|i| format!("arg{i}")).collect();
            let (kw, result) = match c.sig.result {
                Some(_) => ("function", " result(fresult)"),
                None => ("subroutine", ""),
            };
            let _ = writeln!(out, "  {kw} {}({}) bind(C){result}", c.name, args.join(", "));
            out.push_str("   use, intrinsic :: ISO_C_BINDING\n");
            for (a, d) in args.iter().zip(&c.sig.params) {
                let _ = writeln!(out, "   {d} :: {a}");
            }
            if let Some(r) = &c.sig.result {
                let _ = writeln!(out, "   {r} :: fresult");
            }
            let _ = writeln!(out, "  end {kw}");
        }
        out.push_str(" end interface\n");
        let names: Vec<&str> = plan.callbacks.iter().map(|c| c.name.as_str()).collect();
        let _ = writeln!(out, " public :: {}", names.join(", "));
    }

    out.push_str("\n! WRAPPER DECLARATIONS\ninterface\n");
    let mut decls = String::new();
    for p in plan.all_procedures() {
        interface_body(plan, p, &mut decls);
    }
    if let Some(s) = plan.support(SupportKind::Free) {
        let _ = writeln!(decls, "subroutine {}(cptr) bind(C, name=\"{}\")", s.interface_name, s.c_symbol);
        decls.push_str(" use, intrinsic :: ISO_C_BINDING\n type(C_PTR), value :: cptr\nend subroutine\n");
    }
    if let Some(s) = plan.support(SupportKind::GetSerr) {
        let _ = writeln!(decls, "function {}() bind(C, name=\"{}\") result(fresult)", s.interface_name, s.c_symbol);
        decls.push_str(" use, intrinsic :: ISO_C_BINDING\n import :: SwigArrayWrapper\n type(SwigArrayWrapper) :: fresult\nend function\n");
    }
    push_lines(&mut out, &decls, 1);
    out.push_str("end interface\n\n");

    out.push_str("contains\n");
    let mut body = String::new();
    if h.contains(&Helper::StringIn) {
        body.push_str(STRING_IN);
        body.push('\n');
    }
    if h.contains(&Helper::StringOut) {
        body.push_str(STRING_OUT);
        body.push('\n');
    }
    if let Some(s) = plan.support(SupportKind::GetSerr) {
        body.push_str("function get_serr() result(swig_result)\n");
        body.push_str("  use, intrinsic :: ISO_C_BINDING\n");
        body.push_str("  character(kind=C_CHAR, len=:), allocatable :: swig_result\n");
        body.push_str("  type(SwigArrayWrapper) :: fresult\n\n");
        let _ = writeln!(body, "  fresult = {}()", s.interface_name);
        body.push_str("  call SWIG_chararray_to_string(fresult, swig_result)\n");
        body.push_str("  call SWIG_free(fresult%data)\n");
        body.push_str("end function\n\n");
    }
    for p in &plan.procedures {
        procedure(plan, p, None, &mut body);
    }
    for t in &plan.proxy_types {
        for p in t.procedures() {
            procedure(plan, p, Some(&t.type_name), &mut body);
        }
    }
    push_lines(&mut out, body.trim_end(), 1);
    out.push('\n');
    let _ = writeln!(out, "end module {m}");
    wrap_source(&out)
}

/// Every `bind(C, name=...)` symbol the module declares, in order.
pub fn bindc_symbols(fortran: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut joined = String::new();
    for line in fortran.lines() {
        let t = line.trim();
        if t.starts_with('!') {
            continue;
        }
        let t = t.strip_prefix('&').unwrap_or(t);
        if let Some(body) = t.strip_suffix('&') {
            joined.push_str(body);
            continue;
        }
        joined.push_str(t);
        let mut rest = joined.as_str();
        while let Some(pos) = rest.find("bind(C, name=\"") {
            rest = &rest[pos + 14..];
            if let Some(end) = rest.find('"') {
                out.push(rest[..end].to_string());
                rest = &rest[end..];
            }
        }
        joined.clear();
    }
    out
}
