//! Orchestration: parse, analyze, emit, and write the output pair.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::diag::{Diagnostic, Severity};
use crate::emit_c::emit_c;
use crate::emit_fortran::emit_fortran;
use crate::parser::parse_bytes;
use crate::semantic::{analyze, ModulePlan};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERRORS: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub output_dir: PathBuf,
    pub module_name_override: Option<String>,
    pub warnings_as_errors: bool,
    pub suppress_warning_ids: BTreeSet<String>,
    pub emit_plan_dump: bool,
}

/// Both generated sources plus everything reported along the way.
#[derive(Clone, Debug)]
pub struct Generated {
    pub module_name: String,
    pub c_source: String,
    pub fortran_source: String,
    pub plan: ModulePlan,
    pub diagnostics: Vec<Diagnostic>,
}

impl Generated {
    pub fn c_file_name(&self) -> String {
        format!("{}_wrap.cxx", self.module_name)
    }

    pub fn fortran_file_name(&self) -> String {
        format!("{}.f90", self.module_name)
    }
}

/// True for names usable as both a Fortran module and a C identifier fragment.
pub fn is_valid_module_name(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name.len() <= crate::semantic::names::MAX_IDENT
}

/// Run the pipeline in memory. Fails with the diagnostics when any is an error.
pub fn generate(source: &[u8], module_override: Option<&str>) -> Result<Generated, Vec<Diagnostic>> {
    let parsed = parse_bytes(source);
    let mut diagnostics = parsed.diagnostics;
    let Some(mut unit) = parsed.unit.filter(|_| !crate::diag::has_errors(&diagnostics)) else {
        return Err(diagnostics);
    };
    if let Some(m) = module_override {
        unit.module_name = m.to_string();
    }
    let mut plan = analyze(&unit);
    diagnostics.append(&mut plan.diagnostics);
    if crate::diag::has_errors(&diagnostics) {
        return Err(diagnostics);
    }
    plan.diagnostics = diagnostics.clone();
    Ok(Generated {
        module_name: unit.module_name.clone(),
        c_source: emit_c(&plan),
        fortran_source: emit_fortran(&plan),
        plan,
        diagnostics,
    })
}

fn filter(diags: Vec<Diagnostic>, config: &RunConfig) -> Vec<Diagnostic> {
    diags
        .into_iter()
        .filter(|d| d.severity == Severity::Error || !config.suppress_warning_ids.contains(d.id))
        .map(|mut d| {
            if config.warnings_as_errors && d.severity == Severity::Warning {
                d.severity = Severity::Error;
            }
            d
        })
        .collect()
}

fn report(diags: &[Diagnostic], file: &str) {
    let stderr = std::io::stderr();
    let mut err = stderr.lock();
    for d in diags {
        let _ = writeln!(err, "{}", d.render(file));
    }
}

/// Write every file to a temporary in `dir` first, then rename them all into place.
pub fn write_atomically(dir: &Path, files: &[(String, &str)]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut staged = Vec::new();
    for (name, text) in files {
        let mut tmp = tempfile::Builder::new().prefix(".bindforge-").tempfile_in(dir)?;
        tmp.write_all(text.as_bytes())?;
        tmp.as_file().sync_all()?;
        staged.push((tmp, dir.join(name)));
    }
    for (tmp, path) in staged {
        tmp.persist(&path).map_err(|e| e.error)?;
    }
    Ok(())
}

/// Run one invocation and return its exit code.
pub fn run(config: &RunConfig) -> i32 {
    let shown = config.input_path.display().to_string();
    if let Some(m) = &config.module_name_override {
        if !is_valid_module_name(m) {
            eprintln!("bindforge: `{m}` is not a valid module name");
            return EXIT_USAGE;
        }
    }
    let source = match fs::read(&config.input_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("bindforge: cannot read {shown}: {e}");
            return EXIT_IO;
        }
    };
    let generated = match generate(&source, config.module_name_override.as_deref()) {
        Ok(g) => g,
        Err(diags) => {
            report(&filter(diags, config), &shown);
            return EXIT_ERRORS;
        }
    };
    let diags = filter(generated.diagnostics.clone(), config);
    report(&diags, &shown);
    if crate::diag::has_errors(&diags) {
        return EXIT_ERRORS;
    }
    if config.emit_plan_dump {
        print!("{}", generated.plan.dump());
    }
    let files = [
        (generated.c_file_name(), generated.c_source.as_str()),
        (generated.fortran_file_name(), generated.fortran_source.as_str()),
    ];
    match write_atomically(&config.output_dir, &files) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("bindforge: cannot write to {}: {e}", config.output_dir.display());
            EXIT_IO
        }
    }
}
