//! Acceptance gate: runs the nine reproducibility checks at full scale and
//! prints one line per check. Exits nonzero if any check fails.

use std::process::ExitCode;
use std::time::Instant;

use flag_orbits::finiteness::PatternEngine;
use flag_orbits::verify::{
    check_catalog_equivalence, check_catalog_tits, check_dl_equivalence, check_engine_equivalence,
    check_forbidden_tits, check_krull_schmidt, check_min_norm_partition, check_oracle_counts,
    check_relaxation_tables, run_oracle_suite, CheckResult, CATALOG_BOUNDS, ENGINE_BOUNDS,
};

fn report(result: CheckResult, started: Instant, failed: &mut u32) {
    println!("{} [{:.1}s]", result.line(), started.elapsed().as_secs_f64());
    if !result.passed {
        *failed += 1;
    }
}

fn main() -> ExitCode {
    let mut failed = 0;
    println!("acceptance: 9 checks");

    let t = Instant::now();
    report(check_forbidden_tits(), t, &mut failed);
    let t = Instant::now();
    report(check_catalog_tits(), t, &mut failed);
    let t = Instant::now();
    report(check_engine_equivalence(ENGINE_BOUNDS), t, &mut failed);
    let t = Instant::now();
    report(check_catalog_equivalence(CATALOG_BOUNDS, &PatternEngine::default()), t, &mut failed);
    let t = Instant::now();
    report(check_relaxation_tables(), t, &mut failed);

    let t = Instant::now();
    let outcomes = run_oracle_suite(true);
    report(check_oracle_counts(&outcomes), t, &mut failed);
    report(check_dl_equivalence(&outcomes), t, &mut failed);
    report(check_krull_schmidt(&outcomes), t, &mut failed);

    let t = Instant::now();
    report(check_min_norm_partition(30), t, &mut failed);

    if failed == 0 {
        println!("acceptance: all checks passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} check(s) failed");
        ExitCode::FAILURE
    }
}
