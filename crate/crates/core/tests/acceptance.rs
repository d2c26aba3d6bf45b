//! One line per acceptance criterion: PASS, FAIL, or SKIP with a reason.

mod common;

use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bindforge::diag::ids;
use bindforge::proxy::{parse_trace, random_trace, run_trace, WALKTHROUGH_TRACE};
use bindforge::typemaps::{c_encoding, fortran_truth};
use common::harness::{self, Outcome};
use common::{
    corpus, fortran_arity, generate_file, generate_str, generic_block, golden_dir, random_span_signature, rendered,
    symbol_sets, tokens,
};
use rand::SeedableRng;

type Check = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn overload_generic() -> Check {
    let start = Instant::now();
    let g = generate_str("%module example\nvoid myfunc(int x);\nvoid myfunc(double x);\n");
    let body = generic_block(&g.fortran_source, "myfunc").ok_or("no `interface myfunc` block")?;
    let want = tokens("module procedure myfunc__SWIG_0, myfunc__SWIG_1");
    ensure(tokens(&body) == want, format!("generic body is {body:?}"))?;
    ensure(g.fortran_source.contains("public :: myfunc\n"), "myfunc is not public")?;
    within(start, Duration::from_secs(1))?;
    Ok(format!("{:?}", start.elapsed()))
}

fn mixed_overload() -> Check {
    let g = generate_str("%module mixed\nvoid overloaded();\nint overloaded(int);\n");
    let warned = g.diagnostics.iter().filter(|d| d.id == ids::MIXED_OVERLOAD).count();
    ensure(warned > 0, "no W-mixed-overload")?;
    let leaked: Vec<String> =
        tokens(&g.fortran_source).into_iter().filter(|t| t.to_ascii_lowercase().contains("overloaded")).collect();
    ensure(leaked.is_empty(), format!("module still mentions {leaked:?}"))?;
    ensure(!g.c_source.contains("overloaded("), "C unit still calls overloaded")?;
    Ok(format!("{warned} warnings"))
}

fn ownership() -> Check {
    let start = Instant::now();
    let l = run_trace(&parse_trace(WALKTHROUGH_TRACE).map_err(|e| e.to_string())?)?;
    ensure(
        (l.total_allocated, l.total_freed, l.double_free_events) == (2, 2, 0),
        format!(
            "walkthrough gave allocated={} freed={} double_free={}",
            l.total_allocated, l.total_freed, l.double_free_events
        ),
    )?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x0a11_0c8e);
    for n in 0..10_000 {
        let ops = random_trace(&mut rng, 50, 8);
        let l = run_trace(&ops)?;
        if l.leaks() != 0 || l.double_free_events != 0 || l.use_after_free_events != 0 {
            let text: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
            return Err(format!("trace {n} unsafe: {l:?}\n{}", text.join("\n")));
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("10000 traces in {:?}", start.elapsed()))
}

fn bool_normalization() -> Check {
    for v in [-1, 0, 1, 2, i32::MAX] {
        ensure(fortran_truth(v) == (v != 0), format!("truth({v})"))?;
        ensure(matches!(c_encoding(fortran_truth(v)), 0 | 1), format!("encoding of truth({v})"))?;
    }
    let g = generate_str("%module flags\nbool negate(bool b);\n");
    ensure(g.fortran_source.contains("merge(1_C_INT, 0_C_INT, b)"), "argument not encoded as 0/1")?;
    ensure(g.fortran_source.contains("swig_result = (fresult /= 0)"), "result not read as nonzero")?;
    Ok(String::new())
}

fn array_span_arity() -> Check {
    let g = generate_str(
        "%module spans\n%apply (SWIGTYPE *DATA, size_t SIZE) { (const double *data, size_t n) };\ndouble cpp_sum(const double *data, size_t n);\n",
    );
    ensure(fortran_arity(&g.fortran_source, "cpp_sum") == Some(1), "cpp_sum is not unary")?;
    ensure(
        g.fortran_source.contains("real(C_DOUBLE), dimension(:), target, intent(in) :: data"),
        "data is not an assumed-shape array",
    )?;
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5ba2);
    for k in 0..100 {
        let sig = random_span_signature(&mut rng, k);
        let g = bindforge::driver::generate(sig.interface.as_bytes(), None).map_err(|d| format!("{d:?}"))?;
        let got = fortran_arity(&g.fortran_source, &format!("probe{k}"));
        ensure(got == Some(sig.cpp_params - sig.spans), format!("{}gave arity {got:?}", sig.interface))?;
    }
    Ok("100 signatures".into())
}

fn template_instantiation() -> Check {
    let sort = generate_file(&common::corpus_dir().join("sort.i"));
    let generics: Vec<_> = sort.plan.generics.iter().filter(|g| g.name == "sort").collect();
    ensure(generics.len() == 1, format!("{} generics named sort", generics.len()))?;
    ensure(generics[0].specifics.len() == 2, format!("sort has specifics {:?}", generics[0].specifics))?;
    let doit = generate_file(&common::corpus_dir().join("do_it.i"));
    for g in [&sort, &doit] {
        let publics = g.plan.public_names();
        for alias in ["sort_int", "sort_double", "do_it_int", "do_it_real"] {
            ensure(!publics.iter().any(|p| p.eq_ignore_ascii_case(alias)), format!("alias {alias} is public"))?;
            ensure(!g.fortran_source.contains(&format!("public :: {alias}")), format!("alias {alias} exported"))?;
        }
    }
    ensure(doit.plan.public_names().iter().any(|p| p == "do_it"), "do_it is not public")?;
    Ok(String::new())
}

fn snapshots() -> Check {
    let all = corpus();
    ensure(all.len() >= 10, format!("only {} interfaces", all.len()))?;
    for (stem, path) in &all {
        let a = rendered(stem, &generate_file(path));
        let b = rendered(stem, &generate_file(path));
        ensure(a == b, format!("{stem}: runs differ"))?;
        for (name, text) in &a {
            let golden =
                fs::read_to_string(golden_dir().join(stem).join(name)).map_err(|e| format!("{stem}/{name}: {e}"))?;
            ensure(&golden == text, format!("{stem}/{name} differs from golden"))?;
        }
    }
    Ok(format!("{} interfaces", all.len()))
}

fn bijection() -> Check {
    let mut total = 0;
    for (stem, path) in corpus() {
        let (f, c) = symbol_sets(&generate_file(&path));
        ensure(
            f == c,
            format!(
                "{stem}: only in Fortran {:?}, only in C {:?}",
                f.difference(&c).collect::<Vec<_>>(),
                c.difference(&f).collect::<Vec<_>>()
            ),
        )?;
        total += c.len();
    }
    Ok(format!("{total} symbols"))
}

fn report(id: &str, what: &str, outcome: Outcome, detail: &str) -> bool {
    let detail = match &outcome {
        Outcome::Pass => detail.to_string(),
        Outcome::Fail(e) | Outcome::Skipped(e) => e.clone(),
    };
    let detail = detail.lines().next().unwrap_or("").to_string();
    if detail.is_empty() {
        println!("{} {id} {what}", outcome.label());
    } else {
        println!("{} {id} {what} ({detail})", outcome.label());
    }
    if let Outcome::Fail(e) = &outcome {
        eprintln!("--- {id}\n{e}");
    }
    !matches!(outcome, Outcome::Fail(_))
}

fn main() -> ExitCode {
    let checks: [Criterion; 8] = [
        ("AC1", "overloads form the myfunc generic", overload_generic),
        ("AC2", "mixed function/subroutine overloads are dropped with a warning", mixed_overload),
        ("AC3", "ownership walkthrough and randomized traces are leak free", ownership),
        ("AC4", "bool crosses as nonzero truth and 0/1 encoding", bool_normalization),
        ("AC5", "array spans fuse into one assumed-shape argument", array_span_arity),
        ("AC6", "template instantiations share one generic, aliases stay private", template_instantiation),
        ("AC7", "corpus regenerates byte-identical to goldens", snapshots),
        ("AC8", "bind(C) interfaces and C exports are in bijection", bijection),
    ];
    let mut ok = true;
    for (id, what, check) in checks {
        let (outcome, detail) = match check() {
            Ok(d) => (Outcome::Pass, d),
            Err(e) => (Outcome::Fail(e), String::new()),
        };
        ok &= report(id, what, outcome, &detail);
    }
    let tc = harness::detect();
    for (id, what, fixture, detail) in [
        ("AC9", "sort end to end matches a reference sort", &harness::SORT, "10000 doubles"),
        ("AC10", "exception end to end sets and clears ierr", &harness::EXCEPTION, ""),
    ] {
        ok &= report(id, what, harness::run_fixture(fixture, tc.as_ref()), detail);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
