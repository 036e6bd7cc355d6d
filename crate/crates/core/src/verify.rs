//! The reproducibility suite: nine checks, each returning a pass/fail
//! line with a short detail string.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::catalog::{catalog_enumerate, catalog_member, families, semantic_q1_finite_with};
use crate::enumerate::partitions;
use crate::error::Result;
use crate::finiteness::{forbidden_patterns, ExhaustiveEngine, PatternEngine};
use crate::lambda::{min_norm_partition, DimVector};
use crate::oracle::{krull_schmidt_check, run_oracle, OracleConfig, OrbitMode};
use crate::orbits::{count_orbits, enumerate_orbits};
use crate::relaxation::{admissible_solutions, cases, relaxation_solutions};
use crate::universe::{for_each_valid, normalized_vectors, Bounds};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(id: u8, name: &'static str, failures: &[String], ok_detail: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            ok_detail
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!("{} failure(s): {}", failures.len(), shown.join("; "))
        };
        CheckResult { id, name, passed, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {}. {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

fn dv(s: &str) -> DimVector {
    s.parse().expect("built-in vector literal")
}

/// Integer minimisers ruled out of the list; each has `Q = 2`.
pub const EXCLUDED_TABLE_ENTRIES: [&str; 3] = [
    "4,4,3|3,2,6|2,2,1,1,5",
    "3,3,2,2|4,6|2,2,1,1,4",
    "2,2,2,1,1,1|4,5|3,2,4",
];

/// Every forbidden pattern has `Q = 0` and is infinite by brute force.
pub fn check_forbidden_tits() -> CheckResult {
    let exhaustive = ExhaustiveEngine::default();
    let mut failures = Vec::new();
    for f in forbidden_patterns() {
        let q = f.pattern.tits_form();
        if q != 0 {
            failures.push(format!("{} has Q = {q}", f.pattern));
        }
        match exhaustive.decide(&f.pattern) {
            Ok(v) if !v.finite => {}
            Ok(_) => failures.push(format!("{} judged finite", f.pattern)),
            Err(e) => failures.push(format!("{}: {e}", f.pattern)),
        }
    }
    CheckResult::new(
        1,
        "forbidden vectors have Q = 0",
        &failures,
        format!("{} vectors", forbidden_patterns().len()),
    )
}

/// Catalog members up to parameter 20 have `Q = 1`; excluded entries have
/// `Q = 2` and are not members.
pub fn check_catalog_tits() -> CheckResult {
    let mut failures = Vec::new();
    let mut checked = 0;
    for fam in families() {
        let xs = match fam.min_x {
            None => 0..=0,
            Some(m) => m..=20,
        };
        for x in xs {
            checked += 1;
            match fam.generate(x) {
                Ok(v) if v.tits_form() == 1 => {}
                Ok(v) => failures.push(format!("{} x={x}: Q({v}) = {}", fam.id, v.tits_form())),
                Err(e) => failures.push(format!("{} x={x}: {e}", fam.id)),
            }
        }
    }
    for s in EXCLUDED_TABLE_ENTRIES {
        let d = dv(s).normalize();
        if d.tits_form() != 2 {
            failures.push(format!("{s}: Q = {}", d.tits_form()));
        }
        if let Some(tag) = catalog_member(&d) {
            failures.push(format!("{s} is listed under {}", tag.family));
        }
    }
    CheckResult::new(
        2,
        "catalog vectors have Q = 1",
        &failures,
        format!("{checked} members, {} excluded entries", EXCLUDED_TABLE_ENTRIES.len()),
    )
}

pub const ENGINE_BOUNDS: Bounds = Bounds {
    max_weight: 6,
    max_r: 7,
    max_p: 4,
    max_q: 7,
};

pub const CATALOG_BOUNDS: Bounds = Bounds {
    max_weight: 12,
    max_r: 13,
    max_p: 4,
    max_q: 13,
};

/// Both finiteness engines agree on every valid vector within `bounds`.
pub fn check_engine_equivalence(bounds: Bounds) -> CheckResult {
    let pattern = PatternEngine::default();
    let exhaustive = ExhaustiveEngine::default();
    let mut failures = Vec::new();
    let mut infinite = 0u64;
    let seen = for_each_valid(bounds, |d| {
        let by_pattern = pattern.is_finite(d);
        match exhaustive.min_summand(d) {
            Ok(min) => {
                let by_summands = min.is_none_or(|(q, _)| q >= 1);
                if by_pattern != by_summands {
                    failures.push(format!("{d}: pattern {by_pattern}, exhaustive {by_summands}"));
                }
                infinite += u64::from(!by_summands);
            }
            Err(e) => failures.push(format!("{d}: {e}")),
        }
    });
    CheckResult::new(
        3,
        "pattern engine matches exhaustive engine",
        &failures,
        format!("{seen} vectors, {infinite} of infinite type"),
    )
}

/// Catalog membership equals `Q = 1` plus finite type on every normalized
/// vector within `bounds`, judged with `engine`.
pub fn check_catalog_equivalence(bounds: Bounds, engine: &PatternEngine) -> CheckResult {
    let mut failures = Vec::new();
    let mut members = BTreeSet::new();
    let all = normalized_vectors(bounds);
    for v in &all {
        let listed = catalog_member(v).is_some();
        let semantic = semantic_q1_finite_with(engine, v);
        if listed != semantic {
            failures.push(format!("{v}: listed {listed}, Q=1 and finite {semantic}"));
        }
        if semantic {
            members.insert(v.clone());
        }
    }
    // the enumerated list must agree too, restricted to the same shapes
    let within = |v: &DimVector| {
        v.shape().0 <= bounds.max_r && v.shape().1 <= bounds.max_p && v.shape().2 <= bounds.max_q
    };
    let listed: BTreeSet<_> = catalog_enumerate(bounds.max_weight as u64)
        .into_keys()
        .filter(|v| within(v))
        .collect();
    if failures.is_empty() && listed != members {
        let extra = listed.symmetric_difference(&members).next();
        failures.push(format!("enumerated list differs, e.g. at {}", extra.map(|v| v.to_text()).unwrap_or_default()));
    }
    CheckResult::new(
        4,
        "catalog matches Q = 1 and finite type",
        &failures,
        format!("{} normalized vectors, {} members", all.len(), members.len()),
    )
}

pub type PointSet = BTreeSet<(i64, i64)>;

/// The two reference `(x, y)` tables, keyed by case id: the solutions of
/// `0 < 2Q <= 2` and those admitting a vector of the case.
pub fn expected_tables(bound: i64) -> BTreeMap<&'static str, (PointSet, PointSet)> {
    let pts = |v: &[(i64, i64)]| v.iter().copied().collect::<BTreeSet<_>>();
    let family = |zs: std::ops::RangeInclusive<i64>, x_min: i64, slope: i64| {
        let mut out = BTreeSet::new();
        for x in x_min..=bound {
            for z in zs.clone() {
                let y = slope * x - z;
                if (1..=bound).contains(&y) {
                    out.insert((x, y));
                }
            }
        }
        out
    };
    let union = |a: BTreeSet<(i64, i64)>, b: BTreeSet<(i64, i64)>| a.union(&b).copied().collect::<BTreeSet<_>>();
    let none = BTreeSet::new();
    let mut t = BTreeMap::new();
    t.insert("1", (pts(&[(1, 1)]), pts(&[(1, 1)])));
    t.insert(
        "2",
        (
            union(pts(&[(1, 1), (1, 2)]), family(-1..=1, 2, 1)),
            union(pts(&[(1, 2)]), family(-1..=0, 2, 1)),
        ),
    );
    t.insert("3", (pts(&[(1, 1), (1, 2)]), none.clone()));
    t.insert(
        "4",
        (
            pts(&[(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (4, 6)]),
            pts(&[(2, 4), (3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (4, 6)]),
        ),
    );
    t.insert(
        "5",
        (
            union(pts(&[(1, 1), (1, 2)]), family(0..=3, 2, 2)),
            union(family(0..=0, 3, 2), family(1..=3, 4, 2)),
        ),
    );
    t.insert("6q3", (pts(&[(1, 1), (1, 2), (2, 1), (2, 2)]), none.clone()));
    t.insert("6q4", (pts(&[(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 3)]), none.clone()));
    t.insert(
        "6q5",
        (
            pts(&[
                (1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4),
                (3, 2), (3, 3), (3, 4), (4, 4), (4, 5), (5, 6),
            ]),
            pts(&[(4, 5), (5, 6)]),
        ),
    );
    t.insert(
        "7",
        (
            union(pts(&[(1, 1), (1, 2), (1, 3)]), family(-1..=2, 2, 2)),
            union(pts(&[(1, 3)]), family(-1..=2, 2, 2)),
        ),
    );
    t.insert("8", (pts(&[(2, 2), (2, 3), (2, 4), (2, 5), (2, 6)]), pts(&[(2, 6)])));
    t.insert("9q4", (pts(&[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)]), none.clone()));
    t.insert(
        "9q5",
        (
            pts(&[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (2, 4), (3, 4), (3, 5), (4, 6)]),
            pts(&[(3, 5), (4, 6)]),
        ),
    );
    t.insert(
        "10",
        (
            pts(&[(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 5)]),
            pts(&[(2, 4), (3, 3), (3, 4), (4, 5)]),
        ),
    );
    t
}

/// The solution sets reproduce both reference tables for `x, y <= 50`.
pub fn check_relaxation_tables() -> CheckResult {
    const BOUND: i64 = 50;
    let tables = expected_tables(BOUND);
    let mut failures = Vec::new();
    for c in cases() {
        let Some((first, second)) = tables.get(c.id) else {
            failures.push(format!("no reference table for case {}", c.id));
            continue;
        };
        let got = relaxation_solutions(c, BOUND, BOUND);
        if &got != first {
            let diff: Vec<_> = got.symmetric_difference(first).take(4).collect();
            failures.push(format!("case {}: solutions differ at {diff:?}", c.id));
        }
        let got = admissible_solutions(c, BOUND, BOUND);
        if &got != second {
            let diff: Vec<_> = got.symmetric_difference(second).take(4).collect();
            failures.push(format!("case {}: admissible solutions differ at {diff:?}", c.id));
        }
    }
    CheckResult::new(
        5,
        "relaxation solution tables",
        &failures,
        format!("{} cases, x, y <= {BOUND}", cases().len()),
    )
}

/// Dimension vectors checked against the finite-field oracle, with their
/// expected orbit counts where fixed in advance.
pub const ORACLE_SUITE: [&str; 12] = [
    "1|1|1,0",
    "2|1,1|1,1",
    "1,1|1,1|1,1",
    "1,1,1|1,2|1,1,1",
    "2,1|1,2|2,1",
    "1,1,1,1|2,2|1,1,2",
    "2,2|2,2|2,2",
    "1,1,1|1,1,1|1,2",
    "2,1|1,1,1|1,2",
    "3|2,1|1,2",
    "2,2|1,1,2|1,1,2",
    "1,1,1,1|1,3|1,1,1,1",
];

/// Suite members re-run over `F_3` (ambient dimension at most 3).
pub const ORACLE_SUITE_F3: [&str; 4] = ["1,1|1,1|1,1", "1,1,1|1,2|1,1,1", "2,1|1,2|2,1", "1,1,1|1,1,1|1,2"];

/// Outcome of one oracle run, kept for the three oracle checks.
#[derive(Debug, Clone)]
pub struct OracleOutcome {
    pub vector: String,
    pub p: u32,
    pub theory: Result<u128>,
    pub jl: Result<u64>,
    pub dl: Result<u64>,
    pub krull_schmidt: Vec<String>,
}

pub fn run_oracle_suite(include_f3: bool) -> Vec<OracleOutcome> {
    let mut runs: Vec<(&str, u32)> = ORACLE_SUITE.iter().map(|&s| (s, 2)).collect();
    if include_f3 {
        runs.extend(ORACLE_SUITE_F3.iter().map(|&s| (s, 3)));
    }
    runs.into_iter()
        .map(|(s, p)| {
            let d = dv(s);
            let cfg = OracleConfig::default();
            let jl_run = run_oracle(&d, p, OrbitMode::Jl, cfg);
            let krull_schmidt = match (&jl_run, &enumerate_orbits(&d)) {
                (Ok(run), Ok(families)) => krull_schmidt_failures(run, families),
                (Err(e), _) | (_, Err(e)) => vec![e.to_string()],
            };
            OracleOutcome {
                vector: s.to_string(),
                p,
                theory: count_orbits(&d),
                jl: jl_run.map(|r| r.orbits.len() as u64),
                dl: run_oracle(&d, p, OrbitMode::Dl, cfg).map(|r| r.orbits.len() as u64),
                krull_schmidt,
            }
        })
        .collect()
}

/// Each oracle orbit must split into a distinct family of the theory, and
/// every family must be hit.
fn krull_schmidt_failures(run: &crate::oracle::OracleRun, families: &[crate::orbits::DecompositionFamily]) -> Vec<String> {
    let mut failures = Vec::new();
    let mut hit = BTreeMap::new();
    for orbit in &run.orbits {
        match krull_schmidt_check(&orbit.representative) {
            Ok(fam) => {
                if !families.contains(&fam) {
                    failures.push(format!("orbit of {} splits as {fam}, not a listed family", orbit.representative));
                }
                *hit.entry(fam).or_insert(0) += 1;
            }
            Err(e) => failures.push(format!("{}: {e}", orbit.representative)),
        }
    }
    for fam in families {
        match hit.get(fam) {
            Some(1) => {}
            Some(n) => failures.push(format!("family {fam} hit by {n} orbits")),
            None => failures.push(format!("family {fam} hit by no orbit")),
        }
    }
    failures
}

fn show<T: std::fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error ({e})"),
    }
}

pub fn check_oracle_counts(outcomes: &[OracleOutcome]) -> CheckResult {
    let mut failures = Vec::new();
    for o in outcomes {
        let agree = matches!((&o.theory, &o.jl), (Ok(t), Ok(j)) if *t == *j as u128);
        if !agree {
            failures.push(format!("{} over F_{}: theory {}, oracle {}", o.vector, o.p, show(&o.theory), show(&o.jl)));
        }
    }
    for (s, expected) in [("1|1|1,0", 1), ("2|1,1|1,1", 1), ("1,1|1,1|1,1", 3)] {
        if let Some(o) = outcomes.iter().find(|o| o.vector == s && o.p == 2) {
            if !matches!(o.jl, Ok(n) if n == expected) {
                failures.push(format!("{s}: expected {expected} orbits, oracle {}", show(&o.jl)));
            }
        }
    }
    let f3 = outcomes.iter().filter(|o| o.p == 3).count();
    CheckResult::new(
        6,
        "orbit counts match the finite-field oracle",
        &failures,
        format!("{} runs, {f3} over F_3", outcomes.len()),
    )
}

pub fn check_dl_equivalence(outcomes: &[OracleOutcome]) -> CheckResult {
    let mut failures = Vec::new();
    for o in outcomes {
        if !matches!((&o.jl, &o.dl), (Ok(a), Ok(b)) if a == b) {
            failures.push(format!("{} over F_{}: jl {}, dl {}", o.vector, o.p, show(&o.jl), show(&o.dl)));
        }
    }
    CheckResult::new(
        7,
        "joint and double flag orbit counts agree",
        &failures,
        format!("{} runs", outcomes.len()),
    )
}

pub fn check_krull_schmidt(outcomes: &[OracleOutcome]) -> CheckResult {
    let failures: Vec<String> = outcomes
        .iter()
        .flat_map(|o| o.krull_schmidt.iter().map(move |f| format!("{} over F_{}: {f}", o.vector, o.p)))
        .collect();
    let reps: u64 = outcomes.iter().filter_map(|o| o.jl.as_ref().ok()).sum();
    CheckResult::new(
        8,
        "orbit representatives split as their families",
        &failures,
        format!("{reps} representatives"),
    )
}

/// `min_norm_partition(n, m)` attains the least `||.||^2` over partitions
/// of `n` into exactly `m` positive parts.
pub fn check_min_norm_partition(max_n: u32) -> CheckResult {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for n in 1..=max_n {
        let mut best = vec![u64::MAX; n as usize + 1];
        for part in partitions(n, n as usize) {
            let norm: u64 = part.iter().map(|&v| (v as u64).pow(2)).sum();
            let m = part.len();
            best[m] = best[m].min(norm);
        }
        for m in 1..=n {
            pairs += 1;
            match min_norm_partition(n as u64, m as u64) {
                Ok(c) if c.norm_sq() == best[m as usize] && c.len() == m as usize && c.weight() == n as u64 => {}
                Ok(c) => failures.push(format!("n={n} m={m}: {c} has {}, brute force {}", c.norm_sq(), best[m as usize])),
                Err(e) => failures.push(format!("n={n} m={m}: {e}")),
            }
        }
    }
    CheckResult::new(
        9,
        "balanced partitions minimise the square norm",
        &failures,
        format!("{pairs} pairs (n, m), n <= {max_n}"),
    )
}

/// Knobs for [`run_all`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub engine_bounds: Bounds,
    pub catalog_bounds: Bounds,
    /// Skip the oracle re-runs over `F_3`.
    pub quick: bool,
    pub pattern_engine: PatternEngine,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            engine_bounds: ENGINE_BOUNDS,
            catalog_bounds: CATALOG_BOUNDS,
            quick: false,
            pattern_engine: PatternEngine::default(),
        }
    }
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CheckResult> {
    let outcomes = run_oracle_suite(!opts.quick);
    vec![
        check_forbidden_tits(),
        check_catalog_tits(),
        check_engine_equivalence(opts.engine_bounds),
        check_catalog_equivalence(opts.catalog_bounds, &opts.pattern_engine),
        check_relaxation_tables(),
        check_oracle_counts(&outcomes),
        check_dl_equivalence(&outcomes),
        check_krull_schmidt(&outcomes),
        check_min_norm_partition(30),
    ]
}
