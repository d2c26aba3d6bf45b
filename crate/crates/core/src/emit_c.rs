//! C++ wrapper emission: one `extern "C"` shim per wrapped procedure.

use std::fmt::Write;

use crate::semantic::{CallTarget, ModulePlan, ProcRole, ProcedurePlan, SupportKind};
use crate::typemaps::{Helper, TypemapBinding};

const BANNER: &str = "/* This file was automatically generated by bindforge. Do not modify. */\n";

const EXPORT: &str = r#"#ifndef SWIGEXPORT
# if defined(_WIN32) || defined(__CYGWIN__)
#   define SWIGEXPORT __declspec(dllexport)
# else
#   define SWIGEXPORT __attribute__ ((visibility("default")))
# endif
#endif
"#;

const CLASS_WRAPPER: &str = r#"enum {
  SWIG_MEM_OWN = 0x01,
  SWIG_MEM_RVALUE = 0x02,
  SWIG_MEM_CONST = 0x04
};

struct SwigClassWrapper {
  void *cptr;
  int cmemflags;
};

static inline SwigClassWrapper SwigClassWrapper_uninitialized() {
  SwigClassWrapper result;
  result.cptr = NULL;
  result.cmemflags = 0;
  return result;
}

template<class T>
static inline void SWIG_assign(SwigClassWrapper *self, SwigClassWrapper *other) {
  if (self->cptr == other->cptr) {
    return;
  }
  if (self->cmemflags & SWIG_MEM_OWN) {
    delete static_cast<T *>(self->cptr);
  }
  if (!other->cptr) {
    self->cptr = NULL;
    self->cmemflags = 0;
  } else if (other->cmemflags & SWIG_MEM_RVALUE) {
    self->cptr = other->cptr;
    self->cmemflags = other->cmemflags & ~SWIG_MEM_RVALUE;
  } else {
    self->cptr = other->cptr;
    self->cmemflags = other->cmemflags & ~(SWIG_MEM_OWN | SWIG_MEM_RVALUE);
  }
}
"#;

const HANDLE_CHECK: &str = r#"#define SWIG_REQUIRE_NONNULL 0x01
#define SWIG_REQUIRE_MUTABLE 0x02

static inline void *SWIG_check_handle(const SwigClassWrapper *w, const char *type, const char *func, int req) {
  if ((req & SWIG_REQUIRE_NONNULL) && !w->cptr) {
    throw std::logic_error(std::string("Cannot pass null ") + type + " to " + func);
  }
  if ((req & SWIG_REQUIRE_MUTABLE) && (w->cmemflags & SWIG_MEM_CONST)) {
    throw std::logic_error(std::string("Cannot pass const ") + type + " as a mutable argument to " + func);
  }
  return w->cptr;
}
"#;

const ARRAY_WRAPPER: &str = r#"struct SwigArrayWrapper {
  void *data;
  size_t size;
};

static inline SwigArrayWrapper SwigArrayWrapper_uninitialized() {
  SwigArrayWrapper result;
  result.data = NULL;
  result.size = 0;
  return result;
}
"#;

const STRING_OUT: &str = r#"static inline SwigArrayWrapper SWIG_store_string(const char *data, size_t size) {
  SwigArrayWrapper result = SwigArrayWrapper_uninitialized();
  if (size > 0) {
    result.data = malloc(size);
    if (!result.data) {
      throw std::bad_alloc();
    }
    memcpy(result.data, data, size);
  }
  result.size = size;
  return result;
}

static inline SwigArrayWrapper SWIG_store_cstring(const char *s) {
  return s ? SWIG_store_string(s, strlen(s)) : SWIG_store_string(NULL, 0);
}
"#;

const FUNPTR: &str = "typedef void (*SWIG_funptr)(void);\n";

const NULL_DELETER: &str = r#"struct SWIG_null_deleter {
  void operator()(const void *) const {}
};
"#;

/// Replace `$`-placeholders in a C snippet.
fn subst(s: &str, k: usize, call: &str, symname: &str) -> String {
    let (farg, arg) =
        if k == 0 { ("fresult".to_string(), "result".to_string()) } else { (format!("farg{k}"), format!("arg{k}")) };
    s.replace("$fresult", "fresult")
        .replace("$farg", &farg)
        .replace("$arg", &arg)
        .replace("$call", call)
        .replace("$symname", symname)
}

fn c_param(ty: &str, name: &str) -> String {
    if ty.ends_with('*') {
        format!("{ty}{name}")
    } else {
        format!("{ty} {name}")
    }
}

fn indent(out: &mut String, text: &str, level: usize) {
    for line in text.lines() {
        if line.is_empty() {
            out.push('\n');
        } else {
            let _ = writeln!(out, "{}{line}", "  ".repeat(level));
        }
    }
}

fn shim(plan: &ModulePlan, p: &ProcedurePlan, out: &mut String) {
    let b = |id| -> &TypemapBinding { plan.binding(id) };
    let symname = p.signature.replace('\\', "\\\\").replace('"', "\\\"");
    let mut params = Vec::new();
    let mut pre = Vec::new();
    let mut args = Vec::new();
    let mut k = 1;
    if let Some(r) = p.receiver {
        params.push(c_param("SwigClassWrapper *", "farg1"));
        if !matches!(p.role, ProcRole::Release | ProcRole::Assign) {
            pre.push(subst(&b(r).snippets.c_pre, 1, "", &symname));
        }
        k = 2;
    }
    for prm in &p.params {
        let pb = b(prm.binding);
        params.push(c_param(&pb.c_bridge_type, &format!("farg{k}")));
        if !matches!(p.role, ProcRole::Assign) {
            if !pb.snippets.c_pre.is_empty() {
                pre.push(subst(&pb.snippets.c_pre, k, "", &symname));
            }
            args.push(subst(&pb.snippets.c_call_expr, k, "", &symname));
        }
        k += 1;
    }
    let args = args.join(", ");
    let call = match &p.call {
        CallTarget::Free { name, template_args } => format!("{name}{template_args}({args})"),
        CallTarget::Method { name } => format!("arg1->{name}({args})"),
        CallTarget::Static { class_cpp, name } => format!("{class_cpp}::{name}({args})"),
        CallTarget::Constructor { class_cpp } => format!("new {class_cpp}({args})"),
        CallTarget::Getter { field } => format!("arg1->{field}"),
        CallTarget::Setter { field } => format!("arg1->{field} = {args}"),
        CallTarget::Destructor { class_cpp, deletable } => {
            if *deletable {
                format!("delete static_cast<{class_cpp} *>(farg1->cptr)")
            } else {
                "(void)farg1".into()
            }
        }
        CallTarget::Assign { class_cpp } => format!("SWIG_assign<{class_cpp} >(farg1, farg2)"),
    };
    let ret = p.ret.map(b);
    let ret_ty = ret.map(|r| r.c_bridge_type.as_str()).unwrap_or("void");
    let params = if params.is_empty() { "void".to_string() } else { params.join(", ") };
    let _ = writeln!(out, "SWIGEXPORT {}({params}) {{", c_param(ret_ty, &p.c_symbol));
    if let Some(r) = ret {
        indent(out, &subst(&r.c_zero, 0, "", &symname), 1);
    }
    let mut body = String::new();
    for s in &pre {
        indent(&mut body, s, 0);
    }
    match ret {
        Some(r) => indent(&mut body, &subst(&r.snippets.c_post, 0, &call, &symname), 0),
        None => {
            let _ = writeln!(body, "{call};");
        }
    }
    if p.exception_wrapped {
        out.push_str("  try {\n");
        indent(out, &body, 2);
        out.push_str("  } catch (const std::exception &e) {\n");
        out.push_str("    SWIG_store_exception(1, e.what());\n");
        out.push_str("  } catch (...) {\n");
        out.push_str("    SWIG_store_exception(-1, \"An unknown exception occurred\");\n");
        out.push_str("  }\n");
    } else {
        indent(out, &body, 1);
    }
    if ret.is_some() {
        out.push_str("  return fresult;\n");
    }
    out.push_str("}\n\n");
}

/// Render the C++ wrapper translation unit.
pub fn emit_c(plan: &ModulePlan) -> String {
    let m = &plan.module_name;
    let h = &plan.helpers;
    let mut out = String::new();
    out.push_str(BANNER);
    out.push('\n');
    out.push_str(EXPORT);
    out.push('\n');
    for inc in ["cstddef", "cstdint", "cstdlib", "cstring", "new", "stdexcept", "string"] {
        let _ = writeln!(out, "#include <{inc}>");
    }
    if h.contains(&Helper::Vector) {
        out.push_str("#include <vector>\n");
    }
    if plan.bindings.iter().any(|b| b.cpp_type.named_base().is_some_and(|n| n.ends_with("shared_ptr"))) {
        out.push_str("#include <memory>\n");
    }
    if h.contains(&Helper::Mpi) {
        out.push_str("#include <mpi.h>\n");
    }
    out.push('\n');
    for v in &plan.verbatim {
        out.push_str(v.text.trim_matches('\n'));
        out.push_str("\n\n");
    }
    if h.contains(&Helper::ClassWrapper) {
        out.push_str(CLASS_WRAPPER);
        out.push('\n');
    }
    if h.contains(&Helper::HandleCheck) {
        out.push_str(HANDLE_CHECK);
        out.push('\n');
    }
    if h.contains(&Helper::ArrayWrapper) {
        out.push_str(ARRAY_WRAPPER);
        out.push('\n');
    }
    if h.contains(&Helper::StringOut) {
        out.push_str(STRING_OUT);
        out.push('\n');
    }
    if h.contains(&Helper::Funptr) {
        out.push_str(FUNPTR);
        out.push('\n');
    }
    if plan.bindings.iter().any(|b| b.snippets.c_call_expr.contains("SWIG_null_deleter")) {
        out.push_str(NULL_DELETER);
        out.push('\n');
    }
    if plan.exceptions {
        let _ = writeln!(out, "extern \"C\" {{\nSWIGEXPORT int swig_{m}_ierr = 0;\n}}\n");
        let _ = writeln!(out, "static std::string swig_{m}_serr;\n");
        out.push_str("static inline void SWIG_store_exception(int code, const char *msg) {\n");
        let _ = writeln!(out, "  if (swig_{m}_ierr != 0) {{\n    return;\n  }}");
        let _ = writeln!(out, "  swig_{m}_ierr = code;\n  swig_{m}_serr = msg;\n}}\n");
    }
    out.push_str("extern \"C\" {\n\n");
    for p in plan.all_procedures() {
        shim(plan, p, &mut out);
    }
    if let Some(s) = plan.support(SupportKind::Free) {
        let _ = writeln!(out, "SWIGEXPORT void {}(void *cptr) {{\n  free(cptr);\n}}\n", s.c_symbol);
    }
    if let Some(s) = plan.support(SupportKind::GetSerr) {
        let _ = writeln!(
            out,
            "SWIGEXPORT SwigArrayWrapper {}(void) {{\n  return SWIG_store_string(swig_{m}_serr.data(), swig_{m}_serr.size());\n}}\n",
            s.c_symbol
        );
    }
    out.push_str("} /* extern \"C\" */\n");
    out
}

/// Symbols the wrapper exports, functions and variables, in order.
pub fn exported_symbols(c_source: &str) -> Vec<String> {
    c_source
        .lines()
        .filter_map(|l| l.strip_prefix("SWIGEXPORT "))
        .filter_map(|rest| {
            let end = rest.find(['(', '=', ';'])?;
            let head = rest[..end].trim_end();
            let name = head.rsplit([' ', '*']).next()?;
            Some(name.to_string())
        })
        .collect()
}
