mod common;

use common::harness::{self, Outcome};

fn check(f: &harness::Fixture) {
    let tc = harness::detect();
    match harness::run_fixture(f, tc.as_ref()) {
        Outcome::Pass => {}
        Outcome::Skipped(why) => eprintln!("skipping {}: {why}", f.name),
        Outcome::Fail(log) => panic!("{} fixture failed:\n{log}", f.name),
    }
}

#[test]
fn sort_matches_reference() {
    check(&harness::SORT);
}

#[test]
fn exception_sets_and_clears_ierr() {
    check(&harness::EXCEPTION);
}

#[test]
fn cpp_sum_of_small_array() {
    check(&harness::CPP_SUM);
}

#[test]
fn strings_round_trip() {
    check(&harness::STRINGS);
}
