use std::path::PathBuf;
use std::process::ExitCode;

use bindforge::driver::{run, RunConfig, EXIT_USAGE};
use clap::error::ErrorKind;
use clap::Parser;

/// Generate a Fortran 2003 module and its C++ wrapper from an interface file.
#[derive(Parser, Debug)]
#[command(name = "bindforge", version)]
struct Cli {
    /// Interface file to read.
    input: PathBuf,
    /// Directory for the generated files.
    #[arg(short = 'o', value_name = "DIR", default_value = ".")]
    output_dir: PathBuf,
    /// Override the module name declared in the interface.
    #[arg(long = "module", value_name = "NAME")]
    module: Option<String>,
    /// Treat warnings as errors.
    #[arg(long)]
    werror: bool,
    /// Silence a warning by id; may be repeated.
    #[arg(long = "suppress", value_name = "ID")]
    suppress: Vec<String>,
    /// Print the resolved binding plan to standard output.
    #[arg(long = "dump-plan")]
    dump_plan: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let config = RunConfig {
        input_path: cli.input,
        output_dir: cli.output_dir,
        module_name_override: cli.module,
        warnings_as_errors: cli.werror,
        suppress_warning_ids: cli.suppress.into_iter().collect(),
        emit_plan_dump: cli.dump_plan,
    };
    ExitCode::from(run(&config) as u8)
}
