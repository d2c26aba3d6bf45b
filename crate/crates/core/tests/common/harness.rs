//! Compile generated pairs against small fixture libraries and run them.
//!
//! Compilers come from `BINDFORGE_CXX` / `BINDFORGE_FC` when set, otherwise
//! from the first matching executable on `PATH`. Without both a C++ and a
//! Fortran compiler every fixture reports [`Outcome::Skipped`].

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use bindforge::driver::generate;
use rand::{RngExt, SeedableRng};

#[derive(Clone, Debug)]
pub struct Toolchain {
    pub cxx: PathBuf,
    pub fc: PathBuf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail(_) => "FAIL",
            Outcome::Skipped(_) => "SKIP",
        }
    }
}

type Check = fn(&Path, &str) -> Result<(), String>;
type Prepare = fn(&Path) -> Result<(), String>;

pub struct Fixture {
    pub name: &'static str,
    pub interface_file: &'static str,
    pub library_sources: &'static [(&'static str, &'static str)],
    pub test_program: &'static str,
    pub prepare: Option<Prepare>,
    pub expected_behavior: Check,
}

fn path_dirs() -> Vec<PathBuf> {
    env::var_os("PATH").map(|p| env::split_paths(&p).collect()).unwrap_or_default()
}

fn is_executable(p: &Path) -> bool {
    use std::os::unix::fs::PermissionsExt;
    fs::metadata(p).is_ok_and(|m| m.is_file() && m.permissions().mode() & 0o111 != 0)
}

/// First executable on `PATH` whose name is in `names`, or `prefix-<N>` with the highest N.
fn find_program(names: &[&str], versioned_prefix: Option<&str>) -> Option<PathBuf> {
    let dirs = path_dirs();
    for n in names {
        if let Some(p) = dirs.iter().map(|d| d.join(n)).find(|p| is_executable(p)) {
            return Some(p);
        }
    }
    let prefix = format!("{}-", versioned_prefix?);
    let mut best: Option<(u32, PathBuf)> = None;
    for d in &dirs {
        let Ok(entries) = fs::read_dir(d) else { continue };
        for e in entries.flatten() {
            let name = e.file_name().to_string_lossy().into_owned();
            let Some(Ok(v)) = name.strip_prefix(&prefix).map(str::parse::<u32>) else { continue };
            if is_executable(&e.path()) && best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, e.path()));
            }
        }
    }
    best.map(|(_, p)| p)
}

fn from_env(var: &str) -> Option<PathBuf> {
    let v = env::var_os(var)?;
    let p = PathBuf::from(&v);
    if p.components().count() > 1 {
        return Some(p);
    }
    path_dirs().into_iter().map(|d| d.join(&v)).find(|p| is_executable(p))
}

pub fn detect() -> Option<Toolchain> {
    let cxx = from_env("BINDFORGE_CXX").or_else(|| find_program(&["c++", "g++", "clang++"], None))?;
    let fc =
        from_env("BINDFORGE_FC").or_else(|| find_program(&["gfortran", "flang-new", "flang"], Some("gfortran")))?;
    Some(Toolchain { cxx, fc })
}

fn run(cmd: &mut Command, what: &str) -> Result<String, String> {
    let out = cmd.output().map_err(|e| format!("{what}: {e}"))?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    if !out.status.success() {
        return Err(format!("{what} failed ({})\n{}\n{}", out.status, stdout, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(stdout)
}

/// Compile only; used to check every corpus pair is valid source.
pub fn syntax_check(
    tc: &Toolchain,
    dir: &Path,
    c_file: &str,
    f_file: &str,
    cxx_flags: &[String],
) -> Result<(), String> {
    run(
        Command::new(&tc.cxx)
            .current_dir(dir)
            .args(["-std=c++11", "-Wall", "-Werror"])
            .args(cxx_flags)
            .args(["-c", c_file, "-o", "wrap.o"]),
        "c++",
    )?;
    run(Command::new(&tc.fc).current_dir(dir).args(["-c", f_file, "-o", "mod.o"]), "fortran")?;
    Ok(())
}

fn build_and_run(f: &Fixture, tc: &Toolchain, dir: &Path) -> Result<String, String> {
    let g = generate(f.interface_file.as_bytes(), None).map_err(|d| format!("generation failed: {d:?}"))?;
    let write = |name: &str, text: &str| fs::write(dir.join(name), text).map_err(|e| format!("{name}: {e}"));
    write(&g.c_file_name(), &g.c_source)?;
    write(&g.fortran_file_name(), &g.fortran_source)?;
    write("main.f90", f.test_program)?;
    let mut objects = Vec::new();
    for (name, text) in f.library_sources {
        write(name, text)?;
        if name.ends_with(".cxx") || name.ends_with(".cpp") {
            let obj = format!("{name}.o");
            run(Command::new(&tc.cxx).current_dir(dir).args(["-std=c++11", "-c", name, "-o", &obj]), name)?;
            objects.push(obj);
        }
    }
    run(
        Command::new(&tc.cxx).current_dir(dir).args(["-std=c++11", "-I.", "-c", &g.c_file_name(), "-o", "wrap.o"]),
        "wrapper",
    )?;
    run(Command::new(&tc.fc).current_dir(dir).args(["-c", &g.fortran_file_name(), "-o", "mod.o"]), "module")?;
    run(Command::new(&tc.fc).current_dir(dir).args(["-c", "main.f90", "-o", "main.o"]), "test program")?;
    objects.extend(["wrap.o".to_string(), "mod.o".into(), "main.o".into()]);
    run(Command::new(&tc.fc).current_dir(dir).args(&objects).args(["-lstdc++", "-o", "prog"]), "link")?;
    if let Some(prepare) = f.prepare {
        prepare(dir)?;
    }
    run(Command::new(dir.join("prog")).current_dir(dir), "test program run")
}

pub fn run_fixture(f: &Fixture, tc: Option<&Toolchain>) -> Outcome {
    let Some(tc) = tc else {
        return Outcome::Skipped("no C++ and Fortran toolchain found".into());
    };
    let dir = match tempfile::Builder::new().prefix(&format!("bindforge-{}-", f.name)).tempdir() {
        Ok(d) => d,
        Err(e) => return Outcome::Fail(format!("temp dir: {e}")),
    };
    match build_and_run(f, tc, dir.path()).and_then(|stdout| (f.expected_behavior)(dir.path(), &stdout)) {
        Ok(()) => Outcome::Pass,
        Err(e) => Outcome::Fail(e),
    }
}

/// Run fixtures one after another.
pub fn run_all(fixtures: &[&Fixture]) -> Vec<(&'static str, Outcome)> {
    let tc = detect();
    fixtures.iter().map(|f| (f.name, run_fixture(f, tc.as_ref()))).collect()
}

const SORT_SEED: u64 = 0x5eed_2018;
pub const SORT_COUNT: usize = 10_000;

fn sort_input() -> Vec<f64> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(SORT_SEED);
    (0..SORT_COUNT).map(|_| rng.random_range(-1.0e6..1.0e6)).collect()
}

fn sort_prepare(dir: &Path) -> Result<(), String> {
    let mut text = format!("{SORT_COUNT}\n");
    for x in sort_input() {
        text.push_str(&format!("{x:e}\n"));
    }
    fs::write(dir.join("input.txt"), text).map_err(|e| e.to_string())
}

fn sort_check(dir: &Path, stdout: &str) -> Result<(), String> {
    if stdout.split_whitespace().collect::<Vec<_>>() != ["INTS", "-7", "0", "2", "3", "9"] {
        return Err(format!("integer sort printed {stdout:?}"));
    }
    let text = fs::read_to_string(dir.join("output.txt")).map_err(|e| e.to_string())?;
    let got: Vec<f64> =
        text.split_whitespace().map(|t| t.parse::<f64>().map_err(|e| format!("{t}: {e}"))).collect::<Result<_, _>>()?;
    let mut want = sort_input();
    want.sort_by(f64::total_cmp);
    if got.len() != want.len() {
        return Err(format!("expected {} values, got {}", want.len(), got.len()));
    }
    match got.iter().zip(&want).position(|(a, b)| a.to_bits() != b.to_bits()) {
        Some(i) => Err(format!("element {i}: got {:e}, expected {:e}", got[i], want[i])),
        None => Ok(()),
    }
}

pub const SORT: Fixture = Fixture {
    name: "sort",
    interface_file: r#"%module algorithm
%{
#include "sort_lib.hpp"
%}

%apply (SWIGTYPE *DATA, size_t SIZE) { (int *ptr, size_t size), (double *ptr, size_t size) };

template<class T> void sort(T *ptr, size_t size);
%template(sort_int) sort<int>;
%template(sort_double) sort<double>;
"#,
    library_sources: &[(
        "sort_lib.hpp",
        r#"#include <algorithm>
#include <cstddef>
template<class T>
void sort(T *ptr, size_t size) {
  std::sort(ptr, ptr + size);
}
"#,
    )],
    test_program: r#"program main
  use, intrinsic :: ISO_C_BINDING
  use algorithm
  implicit none
  integer :: n, i, u
  real(C_DOUBLE), allocatable :: x(:)
  integer(C_INT) :: k(5) = [3, 9, -7, 2, 0]

  open(newunit=u, file='input.txt', status='old', action='read')
  read(u, *) n
  allocate(x(n))
  do i = 1, n
    read(u, *) x(i)
  end do
  close(u)

  call sort(x)
  call sort(k)

  open(newunit=u, file='output.txt', status='replace', action='write')
  do i = 1, n
    write(u, '(ES26.17E3)') x(i)
  end do
  close(u)
  write(*, '(A,5(1X,I0))') 'INTS', k
end program
"#,
    prepare: Some(sort_prepare),
    expected_behavior: sort_check,
};

fn exception_check(_dir: &Path, stdout: &str) -> Result<(), String> {
    let field = |key: &str| -> Result<String, String> {
        stdout
            .lines()
            .find_map(|l| l.strip_prefix(key).map(|v| v.trim().to_string()))
            .ok_or_else(|| format!("missing `{key}` in output:\n{stdout}"))
    };
    let ierr: i32 = field("IERR1")?.parse().map_err(|e| format!("IERR1: {e}"))?;
    if ierr == 0 {
        return Err("failing call left ierr at zero".into());
    }
    let msg = field("MSG1")?;
    if !msg.contains("negative") {
        return Err(format!("unexpected message {msg:?}"));
    }
    if field("IERR2")? != ierr.to_string() || field("MSG2")? != msg {
        return Err(format!("second failure overwrote the first error:\n{stdout}"));
    }
    if field("IERR3")? != "0" {
        return Err(format!("call after clearing failed:\n{stdout}"));
    }
    let r: f64 = field("R3")?.parse().map_err(|e| format!("R3: {e}"))?;
    if r != 4.0 {
        return Err(format!("careful_sqrt(16) = {r}"));
    }
    Ok(())
}

pub const EXCEPTION: Fixture = Fixture {
    name: "exception",
    interface_file: r#"%module except
%{
#include "except_lib.hpp"
%}

%exception;
double careful_sqrt(double x);
int always_throws(int code);
"#,
    library_sources: &[
        ("except_lib.hpp", "double careful_sqrt(double x);\nint always_throws(int code);\n"),
        (
            "except_lib.cxx",
            r#"#include "except_lib.hpp"
#include <cmath>
#include <stdexcept>
double careful_sqrt(double x) {
  if (x < 0) {
    throw std::domain_error("careful_sqrt: negative input");
  }
  return std::sqrt(x);
}
int always_throws(int code) {
  throw code;
}
"#,
        ),
    ],
    test_program: r#"program main
  use, intrinsic :: ISO_C_BINDING
  use except
  implicit none
  real(C_DOUBLE) :: r
  integer(C_INT) :: k

  r = careful_sqrt(-4.0_C_DOUBLE)
  write(*, '(A,1X,I0)') 'IERR1', ierr
  write(*, '(A,1X,A)') 'MSG1', get_serr()

  k = always_throws(5_C_INT)
  write(*, '(A,1X,I0)') 'IERR2', ierr
  write(*, '(A,1X,A)') 'MSG2', get_serr()

  ierr = 0
  r = careful_sqrt(16.0_C_DOUBLE)
  write(*, '(A,1X,I0)') 'IERR3', ierr
  write(*, '(A,1X,F8.3)') 'R3', r
end program
"#,
    prepare: None,
    expected_behavior: exception_check,
};

fn cpp_sum_check(_dir: &Path, stdout: &str) -> Result<(), String> {
    let v: f64 = stdout.trim().parse().map_err(|e| format!("{stdout:?}: {e}"))?;
    if v == 6.0 {
        Ok(())
    } else {
        Err(format!("cpp_sum([1,2,3]) = {v}"))
    }
}

pub const CPP_SUM: Fixture = Fixture {
    name: "cpp_sum",
    interface_file: r#"%module spans
%{
#include "sum_lib.hpp"
%}

%apply (SWIGTYPE *DATA, size_t SIZE) { (const double *data, size_t n) };

double cpp_sum(const double *data, size_t n);
"#,
    library_sources: &[
        ("sum_lib.hpp", "#include <cstddef>\ndouble cpp_sum(const double *data, size_t n);\n"),
        (
            "sum_lib.cxx",
            r#"#include "sum_lib.hpp"
double cpp_sum(const double *data, size_t n) {
  double s = 0;
  for (size_t i = 0; i < n; ++i) {
    s += data[i];
  }
  return s;
}
"#,
        ),
    ],
    test_program: r#"program main
  use, intrinsic :: ISO_C_BINDING
  use spans
  implicit none
  real(C_DOUBLE), target :: x(3) = [1.0_C_DOUBLE, 2.0_C_DOUBLE, 3.0_C_DOUBLE]

  write(*, '(ES26.17E3)') cpp_sum(x)
end program
"#,
    prepare: None,
    expected_behavior: cpp_sum_check,
};

pub const STRING_SAMPLES: &[&str] =
    &["", "a", "abc", "hello, world", "  padded  ", "quote \" and ' apostrophe", "ümlaut"];

fn strings_check(_dir: &Path, stdout: &str) -> Result<(), String> {
    if stdout.contains("MISMATCH") {
        return Err("char* and std::string round trips disagree".into());
    }
    let got: Vec<&str> = stdout.lines().filter_map(|l| l.strip_prefix('[')?.strip_suffix(']')).collect();
    if got == STRING_SAMPLES {
        Ok(())
    } else {
        Err(format!("round trip changed strings: {got:?}"))
    }
}

pub const STRINGS: Fixture = Fixture {
    name: "strings",
    interface_file: r#"%module echoes
%{
#include "echo_lib.hpp"
%}

std::string echo(const std::string &s);
const char *echo_chars(const char *s);
"#,
    library_sources: &[
        (
            "echo_lib.hpp",
            "#include <string>\nstd::string echo(const std::string &s);\nconst char *echo_chars(const char *s);\n",
        ),
        (
            "echo_lib.cxx",
            r#"#include "echo_lib.hpp"
std::string echo(const std::string &s) {
  return s;
}
const char *echo_chars(const char *s) {
  static std::string keep;
  keep = s;
  return keep.c_str();
}
"#,
        ),
    ],
    test_program: r#"program main
  use echoes
  implicit none
  character(len=32) :: samples(7)
  integer :: lens(7) = [0, 1, 3, 12, 10, 24, 7]
  integer :: i

  samples(1) = ''
  samples(2) = 'a'
  samples(3) = 'abc'
  samples(4) = 'hello, world'
  samples(5) = '  padded  '
  samples(6) = 'quote " and '' apostrophe'
  samples(7) = 'ümlaut'
  do i = 1, 7
    if (echo_chars(samples(i)(1:lens(i))) /= echo(samples(i)(1:lens(i)))) then
      write(*, '(A)') 'MISMATCH'
    end if
    write(*, '(A,A,A)') '[', echo(samples(i)(1:lens(i))), ']'
  end do
end program
"#,
    prepare: None,
    expected_behavior: strings_check,
};

pub const ALL: [&Fixture; 4] = [&SORT, &EXCEPTION, &CPP_SUM, &STRINGS];
