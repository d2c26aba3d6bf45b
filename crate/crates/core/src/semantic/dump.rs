//! Human-readable plan listing used by `--dump-plan`.

use super::{ConstValue, DirectBinding, ModulePlan, ProcKind, ProcRole, ProcedurePlan, Strategy};

fn kind(p: &ProcedurePlan) -> &'static str {
    match p.role {
        ProcRole::Free if p.kind == ProcKind::Function => "FUNCTION",
        ProcRole::Free => "SUBROUTINE",
        ProcRole::Method => "METHOD",
        ProcRole::Static => "STATIC",
        ProcRole::Constructor => "CTOR",
        ProcRole::Getter => "GETTER",
        ProcRole::Setter => "SETTER",
        ProcRole::Release => "RELEASE",
        ProcRole::Assign => "ASSIGN",
    }
}

fn line(out: &mut String, cols: [&str; 5]) {
    out.push_str(cols.join("  ").trim_end());
    out.push('\n');
}

pub(super) fn dump(plan: &ModulePlan) -> String {
    let mut out = String::new();
    line(&mut out, ["MODULE", &plan.module_name, "-", "-", "-"]);
    for p in &plan.procedures {
        line(&mut out, [kind(p), &p.public_name, &p.specific_name, &p.c_symbol, &p.signature]);
    }
    for g in &plan.generics {
        line(&mut out, ["GENERIC", &g.name, &g.specifics.join(","), "-", "-"]);
    }
    for t in &plan.proxy_types {
        let parent = t.parent.as_deref().map(|p| format!("extends({p})")).unwrap_or_else(|| "-".into());
        line(&mut out, ["TYPE", &t.type_name, &parent, "-", &t.cpp_name]);
        for p in t.procedures() {
            let public = format!("{}%{}", t.type_name, p.public_name);
            line(&mut out, [kind(p), &public, &p.specific_name, &p.c_symbol, &p.signature]);
        }
    }
    for e in &plan.enums {
        for x in &e.enumerators {
            let v = x.value.to_string();
            line(&mut out, ["ENUMERATOR", &x.name, &v, "-", &x.cpp_name]);
        }
    }
    for c in &plan.constants {
        let v = match &c.value {
            ConstValue::Int(i) => i.to_string(),
            ConstValue::Float { text, .. } => text.clone(),
            ConstValue::Str(s) => format!("{s:?}"),
        };
        line(&mut out, ["CONSTANT", &c.name, &v, "-", &c.cpp_name]);
    }
    for d in &plan.direct_bindings {
        match d {
            DirectBinding::Function(f) => line(&mut out, ["BINDC", &f.name, &f.name, &f.c_name, &f.signature]),
            DirectBinding::Struct(s) => line(&mut out, ["BINDC_TYPE", &s.name, "-", "-", &s.cpp_name]),
        }
    }
    for c in &plan.callbacks {
        line(&mut out, ["CALLBACK", &c.name, "-", "-", &c.cpp_type]);
    }
    for s in &plan.support {
        line(&mut out, ["SUPPORT", &s.interface_name, "-", &s.c_symbol, "-"]);
    }
    for (name, s) in &plan.classification {
        if let Strategy::Skipped(why) = s {
            line(&mut out, ["SKIPPED", name, "-", "-", why]);
        }
    }
    out
}
