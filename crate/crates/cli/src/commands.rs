use std::fmt::Write as _;
use std::path::Path;

use flag_orbits::catalog::catalog_enumerate;
use flag_orbits::finiteness::{ExhaustiveEngine, PatternEngine, Verdict};
use flag_orbits::oracle::{run_oracle, OracleConfig, OrbitMode};
use flag_orbits::orbits::{count_orbits_with, enumerate_orbits_with};
use flag_orbits::relaxation::{admissible_solutions, case, cases, relaxation_2q, relaxation_solutions};
use flag_orbits::universe::Bounds;
use flag_orbits::verify::{run_all, VerifyOptions, CATALOG_BOUNDS, ENGINE_BOUNDS};
use flag_orbits::{DimVector, Error, Result};
use serde_json::json;

use crate::report::Outcome;
use crate::{Engine, OracleArgs, VectorArg, VerifyArgs};

#[derive(Clone, Copy)]
pub struct Budgets {
    pub max_summands: u128,
    pub max_points: u64,
}

/// Text or JSON, inline or from a file.
fn read_vector(arg: &VectorArg) -> Result<DimVector> {
    let raw = if Path::new(&arg.vector).is_file() {
        std::fs::read_to_string(&arg.vector)
            .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", arg.vector)))?
    } else {
        arg.vector.clone()
    };
    let raw = raw.trim();
    if raw.starts_with('{') {
        DimVector::from_json(raw)
    } else {
        raw.parse()
    }
}

pub fn tits(arg: &VectorArg) -> Result<Outcome> {
    let d = read_vector(arg)?;
    let q = d.tits_form();
    Ok(Outcome::new("tits", d.to_text(), json!({ "tits_form": q }), format!("Q({d}) = {q}\n")))
}

fn verdict_text(name: &str, v: &Verdict) -> String {
    match (&v.witness, v.finite) {
        (_, true) => format!("{name}: finite\n"),
        (Some(w), false) => format!("{name}: infinite, witness {w} (normal form {})\n", w.normalize()),
        (None, false) => format!("{name}: infinite\n"),
    }
}

pub fn finite(arg: &VectorArg, engine: Engine, budgets: Budgets) -> Result<Outcome> {
    let d = read_vector(arg)?;
    let pattern = (engine != Engine::Exhaustive).then(|| PatternEngine::default().decide(&d));
    let exhaustive = match engine {
        Engine::Pattern => None,
        _ => Some(ExhaustiveEngine::new(budgets.max_summands).decide(&d)?),
    };
    Ok(finite_outcome(&d, pattern, exhaustive))
}

fn finite_outcome(d: &DimVector, pattern: Option<Verdict>, exhaustive: Option<Verdict>) -> Outcome {
    let mut text = String::new();
    if let Some(v) = &pattern {
        text.push_str(&verdict_text("pattern", v));
    }
    if let Some(v) = &exhaustive {
        text.push_str(&verdict_text("exhaustive", v));
    }
    let finite = pattern.as_ref().or(exhaustive.as_ref()).map(|v| v.finite).unwrap_or(true);
    let result = json!({
        "finite": finite,
        "pattern": pattern,
        "exhaustive": exhaustive,
    });
    let outcome = Outcome::new("finite", d.to_text(), result, text);
    match (&pattern, &exhaustive) {
        (Some(p), Some(e)) if p.finite != e.finite => {
            outcome.fail(format!("engines disagree: pattern {}, exhaustive {}", p.finite, e.finite))
        }
        _ => outcome,
    }
}

pub fn catalog(max_weight: u64) -> Result<Outcome> {
    if max_weight == 0 {
        return Err(Error::InvalidConfig("--max-weight must be at least 1".into()));
    }
    let list = catalog_enumerate(max_weight);
    let mut text = String::new();
    let mut rows = Vec::new();
    for (v, tag) in &list {
        let param = tag.x.map(|x| format!(" x={x}")).unwrap_or_default();
        let mirror = if tag.mirrored { " mirrored" } else { "" };
        let _ = writeln!(text, "{v}\t{}{param}{mirror}", tag.family);
        rows.push(json!({ "vector": v, "tag": tag }));
    }
    let _ = writeln!(text, "{} vectors", list.len());
    Ok(Outcome::new("catalog", format!("max-weight={max_weight}"), rows, text))
}

pub fn orbits(arg: &VectorArg, list: bool, budgets: Budgets) -> Result<Outcome> {
    let d = read_vector(arg)?;
    if !list {
        let n = count_orbits_with(&d, budgets.max_summands)?;
        // u128 does not fit every JSON reader; counts stay far below u64
        let n = u64::try_from(n).map_err(|_| Error::Overflow("orbit count"))?;
        return Ok(Outcome::new("orbits count", d.to_text(), json!({ "orbits": n }), format!("{n}\n")));
    }
    let families = enumerate_orbits_with(&d, budgets.max_summands)?;
    let mut text = String::new();
    for f in &families {
        let _ = writeln!(text, "{f}");
    }
    let _ = writeln!(text, "{} orbits", families.len());
    Ok(Outcome::new("orbits list", d.to_text(), json!({ "families": families }), text))
}

pub fn oracle(args: &OracleArgs, reps: bool, budgets: Budgets) -> Result<Outcome> {
    let d = read_vector(&args.vector)?;
    let mode: OrbitMode = args.mode.parse()?;
    let cfg = OracleConfig {
        max_points: budgets.max_points,
    };
    let run = run_oracle(&d, args.field, mode, cfg)?;
    let command = if reps { "oracle reps" } else { "oracle count" };
    let mut text = String::new();
    if reps {
        for o in &run.orbits {
            let _ = writeln!(text, "{}  (size {})", o.representative, o.size);
        }
    }
    let _ = writeln!(
        text,
        "{} orbits on {} points over F_{} ({mode}, group order {})",
        run.orbits.len(),
        run.points,
        run.p,
        run.group_order
    );
    let result = if reps {
        serde_json::to_value(&run).expect("oracle runs serialize")
    } else {
        json!({
            "p": run.p,
            "mode": run.mode,
            "points": run.points,
            "group_order": run.group_order,
            "orbits": run.orbits.len(),
            "orbit_sizes": run.orbits.iter().map(|o| o.size).collect::<Vec<_>>(),
        })
    };
    Ok(Outcome::new(command, d.to_text(), result, text))
}

fn format_points(points: &std::collections::BTreeSet<(i64, i64)>) -> String {
    points.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(" ")
}

pub fn relax_solve(id: Option<&str>, x_max: i64, y_max: i64) -> Result<Outcome> {
    if x_max < 1 || y_max < 1 {
        return Err(Error::InvalidConfig("bounds must be at least 1".into()));
    }
    let selected = match id {
        Some(id) => vec![case(id)?],
        None => cases().iter().collect(),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in selected {
        let solutions = relaxation_solutions(c, x_max, y_max);
        let admissible = admissible_solutions(c, x_max, y_max);
        let _ = writeln!(text, "({}) 2Q = {}  [{}]", c.id, c.formula, c.domain);
        let _ = writeln!(text, "    0 < Q <= 1: {}", format_points(&solutions));
        let _ = writeln!(text, "    admissible: {}", format_points(&admissible));
        rows.push(json!({
            "case": c.id,
            "formula": c.formula,
            "domain": c.domain,
            "solutions": solutions,
            "admissible": admissible,
        }));
    }
    let input = format!("case={} x-max={x_max} y-max={y_max}", id.unwrap_or("all"));
    Ok(Outcome::new("relax solve", input, rows, text))
}

pub fn relax_eval(id: &str, x: i64, y: i64) -> Result<Outcome> {
    let c = case(id)?;
    let v = relaxation_2q(c, x, y)?;
    let result = json!({
        "case": c.id,
        "x": x,
        "y": y,
        "two_q": v.to_string(),
        "minimiser": c.integer_minimizer(x, y).map(|d| d.normalize().to_text()),
    });
    Ok(Outcome::new(
        "relax eval",
        format!("case={id} x={x} y={y}"),
        result,
        format!("2Q = {v}\n"),
    ))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome> {
    let scale = |b: Bounds, w: u32| Bounds {
        max_weight: w,
        max_r: b.max_r.min(w as usize + 1),
        max_q: b.max_q.min(w as usize + 1),
        ..b
    };
    let opts = VerifyOptions {
        engine_bounds: scale(ENGINE_BOUNDS, args.engine_weight),
        catalog_bounds: scale(CATALOG_BOUNDS, args.catalog_weight),
        quick: args.quick,
        ..VerifyOptions::default()
    };
    let results = run_all(&opts);
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(text, "{}", r.line());
    }
    let input = format!(
        "engine-weight={} catalog-weight={}{}",
        args.engine_weight,
        args.catalog_weight,
        if args.quick { " quick" } else { "" }
    );
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| r.line()).collect();
    let mut outcome = Outcome::new("verify", input, &results, text);
    if args.quick {
        outcome = outcome.note("oracle re-runs over F_3 skipped".into());
    }
    for f in failed {
        outcome = outcome.fail(f);
    }
    Ok(outcome)
}
