//! Finite-type decision for joint-flag dimension vectors.
//!
//! Two engines answer the same question independently:
//!
//! * [`ExhaustiveEngine`] checks that every summand `e` of `d` has
//!   `Q(e) >= 1`, scanning every component of every summand.
//! * [`PatternEngine`] looks for one of ten forbidden `Q = 0` vectors
//!   embedded as a summand of `d`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::enumerate::{BoundedCompositions, BoxIter};
use crate::error::{Error, Result};
use crate::lambda::{DimVector, NormalizedVector};

/// Default cap on the number of summands the exhaustive engine may scan.
pub const DEFAULT_MAX_SUMMANDS: u128 = 100_000_000;

/// Streams every summand of `d`: nonzero valid `e <= d` componentwise,
/// `d` itself included.
///
/// Order is lexicographic in `(b', c', a)`; the final parts of `b` and `c`
/// are forced by the heads.
pub fn summands(d: &DimVector) -> Summands<'_> {
    Summands::new(d)
}

pub struct Summands<'a> {
    d: &'a DimVector,
    b_iter: BoxIter,
    b_cur: Option<Vec<u32>>,
    c_iter: BoxIter,
    c_cur: Option<Vec<u32>>,
    a_iter: Option<BoundedCompositions>,
}

impl<'a> Summands<'a> {
    fn new(d: &'a DimVector) -> Self {
        let mut b_iter = BoxIter::new(d.b().head());
        let b_cur = b_iter.next();
        Summands {
            d,
            b_iter,
            b_cur,
            c_iter: BoxIter::new(d.c().head()),
            c_cur: None,
            a_iter: None,
        }
    }
}

impl Iterator for Summands<'_> {
    type Item = DimVector;

    fn next(&mut self) -> Option<DimVector> {
        loop {
            let b = self.b_cur.as_ref()?;
            if let (Some(a_iter), Some(c)) = (self.a_iter.as_mut(), self.c_cur.as_ref()) {
                if let Some(a) = a_iter.next_ref() {
                    let e = DimVector::from_heads(a.to_vec(), b.clone(), c.clone())
                        .expect("dominated heads form a valid vector");
                    if e.is_zero() {
                        continue;
                    }
                    return Some(e);
                }
                self.a_iter = None;
            }
            match self.c_iter.next() {
                Some(c) => {
                    let x: u64 = b.iter().map(|&v| v as u64).sum();
                    let y: u64 = c.iter().map(|&v| v as u64).sum();
                    if y <= self.d.b().last() as u64 && x <= self.d.c().last() as u64 {
                        self.a_iter = Some(BoundedCompositions::new(self.d.a().parts(), x + y));
                    }
                    self.c_cur = Some(c);
                }
                None => {
                    self.b_cur = self.b_iter.next();
                    self.c_iter = BoxIter::new(self.d.c().head());
                    self.c_cur = None;
                }
            }
        }
    }
}

// counts[s] = number of v <= caps with sum(v) = s
fn bounded_counts(caps: &[u32]) -> Vec<u128> {
    let mut counts = vec![1u128];
    for &cap in caps {
        let mut next = vec![0u128; counts.len() + cap as usize];
        for (s, &c) in counts.iter().enumerate() {
            for v in 0..=cap as usize {
                next[s + v] = next[s + v].saturating_add(c);
            }
        }
        counts = next;
    }
    counts
}

/// Exact number of summands of `d` (saturating).
pub fn summand_count(d: &DimVector) -> u128 {
    let na = bounded_counts(d.a().parts());
    let nb = bounded_counts(d.b().head());
    let nc = bounded_counts(d.c().head());
    let mut total: u128 = 0;
    for (x, &cb) in nb.iter().enumerate() {
        if x as u64 > d.c().last() as u64 {
            break;
        }
        for (y, &cc) in nc.iter().enumerate() {
            if y as u64 > d.b().last() as u64 {
                break;
            }
            if x + y == 0 {
                continue;
            }
            let ca = na.get(x + y).copied().unwrap_or(0);
            total = total.saturating_add(ca.saturating_mul(cb).saturating_mul(cc));
        }
    }
    total
}

/// Per-sum minimum of `||v||^2` over the box under `caps`, with an argmin.
fn min_norms(caps: &[u32]) -> Vec<Option<(u64, Vec<u32>)>> {
    let total: usize = caps.iter().map(|&c| c as usize).sum();
    let mut best: Vec<Option<(u64, Vec<u32>)>> = vec![None; total + 1];
    let mut it = BoxIter::new(caps);
    while let Some(v) = it.next_ref() {
        let s: usize = v.iter().map(|&p| p as usize).sum();
        let n: u64 = v.iter().map(|&p| (p as u64) * (p as u64)).sum();
        match &best[s] {
            Some((m, _)) if *m <= n => {}
            _ => best[s] = Some((n, v.to_vec())),
        }
    }
    best
}

/// Outcome of a finiteness query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub finite: bool,
    /// A summand certifying infinite type, when `finite` is false.
    pub witness: Option<DimVector>,
    /// Index into the pattern list, for pattern-engine witnesses.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pattern: Option<usize>,
}

/// Criterion "every summand has `Q >= 1`", evaluated by brute force.
#[derive(Debug, Clone, Copy)]
pub struct ExhaustiveEngine {
    pub max_summands: u128,
}

impl Default for ExhaustiveEngine {
    fn default() -> Self {
        ExhaustiveEngine {
            max_summands: DEFAULT_MAX_SUMMANDS,
        }
    }
}

impl ExhaustiveEngine {
    pub fn new(max_summands: u128) -> Self {
        ExhaustiveEngine { max_summands }
    }

    fn check_budget(&self, d: &DimVector) -> Result<()> {
        let box_size = |caps: &[u32]| {
            caps.iter()
                .fold(1u128, |acc, &c| acc.saturating_mul(c as u128 + 1))
        };
        let largest_box = box_size(d.a().parts())
            .max(box_size(d.b().head()))
            .max(box_size(d.c().head()));
        if largest_box > self.max_summands || summand_count(d) > self.max_summands {
            return Err(Error::BudgetExceeded {
                what: "summand count",
                limit: self.max_summands.min(u64::MAX as u128) as u64,
            });
        }
        Ok(())
    }

    /// Minimum Tits form over all summands of `d` with a minimising summand,
    /// or `None` for the zero vector.
    ///
    /// For fixed `x = |e_b'|` and `y = |e_c'|`, `2Q(e) = ||e_a||^2 +
    /// ||e_b'||^2 + ||e_c'||^2 - 2xy`, so each head is scanned once per sum
    /// instead of once per combination.
    pub fn min_summand(&self, d: &DimVector) -> Result<Option<(i64, DimVector)>> {
        self.check_budget(d)?;
        let ma = min_norms(d.a().parts());
        let mb = min_norms(d.b().head());
        let mc = min_norms(d.c().head());
        let mut best: Option<(i64, usize, usize)> = None;
        for (x, bx) in mb.iter().enumerate() {
            if x as u64 > d.c().last() as u64 {
                break;
            }
            let Some((nb, _)) = bx else { continue };
            for (y, cy) in mc.iter().enumerate() {
                if y as u64 > d.b().last() as u64 {
                    break;
                }
                if x + y == 0 {
                    continue;
                }
                let (Some((nc, _)), Some(Some((na, _)))) = (cy, ma.get(x + y)) else {
                    continue;
                };
                let twice = (*na + *nb + *nc) as i64 - 2 * (x as i64) * (y as i64);
                let q = twice / 2;
                if best.is_none_or(|(bq, _, _)| q < bq) {
                    best = Some((q, x, y));
                }
            }
        }
        Ok(best.map(|(q, x, y)| {
            let a = ma[x + y].as_ref().unwrap().1.clone();
            let b = mb[x].as_ref().unwrap().1.clone();
            let c = mc[y].as_ref().unwrap().1.clone();
            let e = DimVector::from_heads(a, b, c).expect("dominated heads form a valid vector");
            debug_assert_eq!(e.tits_form(), q);
            (q, e)
        }))
    }

    pub fn decide(&self, d: &DimVector) -> Result<Verdict> {
        Ok(match self.min_summand(d)? {
            Some((q, e)) if q < 1 => Verdict {
                finite: false,
                witness: Some(e),
                pattern: None,
            },
            _ => Verdict {
                finite: true,
                witness: None,
                pattern: None,
            },
        })
    }
}

/// One of the ten `Q = 0` vectors whose presence as a summand forces
/// infinitely many orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenPattern {
    pub pattern: NormalizedVector,
    /// True for the `b <-> c` mirror of a base pattern.
    pub mirrored: bool,
}

fn pattern_table() -> Vec<ForbiddenPattern> {
    // (a+, b'+, c'+) of the six base patterns; finals follow from the heads.
    let base: [(&[u32], &[u32], &[u32]); 6] = [
        (&[2, 2, 2], &[1, 1, 1], &[1, 1, 1]),
        (&[3, 3, 3], &[2, 2], &[1, 1, 1, 1, 1]),
        (&[1, 1, 1, 1], &[1, 1], &[1, 1]),
        (&[2, 2, 2, 2], &[3], &[1, 1, 1, 1, 1]),
        (&[1, 1, 1, 1, 1], &[2], &[1, 1, 1]),
        (&[1, 1, 1, 1, 1, 1, 1], &[3], &[2, 2]),
    ];
    let mut out = Vec::with_capacity(10);
    for (a, b, c) in base {
        let p = NormalizedVector::from_heads(a.to_vec(), b.to_vec(), c.to_vec())
            .expect("forbidden patterns are valid");
        let m = p.mirror();
        let self_mirror = m == p;
        out.push(ForbiddenPattern {
            pattern: p,
            mirrored: false,
        });
        if !self_mirror {
            out.push(ForbiddenPattern {
                pattern: m,
                mirrored: true,
            });
        }
    }
    out
}

/// The ten forbidden patterns, mirrors stored explicitly.
pub fn forbidden_patterns() -> &'static [ForbiddenPattern] {
    static TABLE: OnceLock<Vec<ForbiddenPattern>> = OnceLock::new();
    TABLE.get_or_init(pattern_table)
}

/// Assigns each demand to a distinct slot with capacity at least the demand.
/// Largest demand goes to the largest capacity; this greedy order is optimal
/// because feasibility is a threshold (nested-interval) structure.
fn assign(demands: &[u32], caps: &[u32]) -> Option<Vec<u32>> {
    let mut dem: Vec<u32> = demands.iter().copied().filter(|&v| v > 0).collect();
    dem.sort_unstable_by(|x, y| y.cmp(x));
    if dem.len() > caps.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..caps.len()).collect();
    order.sort_by(|&i, &j| caps[j].cmp(&caps[i]).then(i.cmp(&j)));
    let mut out = vec![0; caps.len()];
    for (k, &v) in dem.iter().enumerate() {
        let slot = order[k];
        if caps[slot] < v {
            return None;
        }
        out[slot] = v;
    }
    Some(out)
}

/// Embeds `pattern` into `d` as a summand, if possible.
pub fn embed(pattern: &DimVector, d: &DimVector) -> Option<DimVector> {
    if pattern.b().last() > d.b().last() || pattern.c().last() > d.c().last() {
        return None;
    }
    let a = assign(pattern.a().parts(), d.a().parts())?;
    let mut b = assign(pattern.b().head(), d.b().head())?;
    let mut c = assign(pattern.c().head(), d.c().head())?;
    b.push(pattern.b().last());
    c.push(pattern.c().last());
    let e = DimVector::from_parts(a, b, c).expect("embedded pattern stays valid");
    debug_assert!(e.le(d));
    Some(e)
}

/// Forbidden-pattern matcher over a configurable pattern list.
#[derive(Debug, Clone)]
pub struct PatternEngine {
    patterns: Vec<NormalizedVector>,
}

impl Default for PatternEngine {
    fn default() -> Self {
        PatternEngine {
            patterns: forbidden_patterns().iter().map(|p| p.pattern.clone()).collect(),
        }
    }
}

impl PatternEngine {
    /// Engine over a custom list, e.g. for mutation testing.
    pub fn with_patterns(patterns: Vec<NormalizedVector>) -> Self {
        PatternEngine { patterns }
    }

    pub fn patterns(&self) -> &[NormalizedVector] {
        &self.patterns
    }

    pub fn decide(&self, d: &DimVector) -> Verdict {
        for (i, p) in self.patterns.iter().enumerate() {
            if let Some(e) = embed(p, d) {
                return Verdict {
                    finite: false,
                    witness: Some(e),
                    pattern: Some(i),
                };
            }
        }
        Verdict {
            finite: true,
            witness: None,
            pattern: None,
        }
    }

    pub fn is_finite(&self, d: &DimVector) -> bool {
        self.patterns.iter().all(|p| embed(p, d).is_none())
    }
}

/// Exhaustive criterion with the default budget.
pub fn is_finite_exhaustive(d: &DimVector) -> Result<bool> {
    ExhaustiveEngine::default().decide(d).map(|v| v.finite)
}

/// Pattern criterion with the ten standard patterns, plus a witness.
pub fn is_finite_pattern(d: &DimVector) -> Verdict {
    PatternEngine::default().decide(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    /// Independent oracle: every entry in the box under `d`, validated.
    fn brute_summands(d: &DimVector) -> Vec<DimVector> {
        let caps: Vec<u32> = d.iter_entries().collect();
        let (r, p, _) = d.shape();
        BoxIter::new(&caps)
            .filter_map(|v| {
                DimVector::from_parts(v[..r].to_vec(), v[r..r + p].to_vec(), v[r + p..].to_vec()).ok()
            })
            .filter(|e| !e.is_zero())
            .collect()
    }

    #[test]
    fn summand_examples() {
        let d = dv("1|1|1,0");
        assert_eq!(summands(&d).collect::<Vec<_>>(), vec![d.clone()]);
        let d = dv("1,1|1,1|1,1");
        assert_eq!(brute_summands(&d).len(), 5);
        assert_eq!(summands(&d).count(), 5);
        assert_eq!(summand_count(&d), 5);
        assert_eq!(summands(&dv("0|0|0")).count(), 0);
    }

    #[test]
    fn streaming_matches_brute_force() {
        for s in ["2,1|1,1,1|1,2", "2,0,2|1,1,2|2,0,2", "3,3,3|2,2,5|1,1,1,1,1,4", "1,0,2|0,3|3,0"] {
            let d = dv(s);
            let mut fast: Vec<_> = summands(&d).collect();
            let mut slow = brute_summands(&d);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "{s}");
            assert_eq!(summand_count(&d), slow.len() as u128, "{s}");
            let naive_min = slow.iter().map(DimVector::tits_form).min();
            let engine_min = ExhaustiveEngine::default().min_summand(&d).unwrap().map(|(q, _)| q);
            assert_eq!(naive_min, engine_min, "{s}");
        }
    }

    #[test]
    fn exhaustive_examples() {
        assert!(is_finite_exhaustive(&dv("1,1|1,1|1,1")).unwrap());
        assert!(summands(&dv("1,1|1,1|1,1")).all(|e| e.tits_form() >= 1));
        assert!(!is_finite_exhaustive(&dv("2,2,2|1,1,1,3|1,1,1,3")).unwrap());
        assert!(is_finite_exhaustive(&dv("1|1|1,0")).unwrap());
    }

    #[test]
    fn exhaustive_budget() {
        let d = dv("2,2,2|1,1,1,3|1,1,1,3");
        assert!(matches!(
            ExhaustiveEngine::new(3).decide(&d),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn pattern_table_is_the_ten() {
        let pats = forbidden_patterns();
        assert_eq!(pats.len(), 10);
        let texts: Vec<String> = pats.iter().map(|p| p.pattern.to_text()).collect();
        assert_eq!(
            texts,
            vec![
                "2,2,2|1,1,1,3|1,1,1,3",
                "3,3,3|2,2,5|1,1,1,1,1,4",
                "3,3,3|1,1,1,1,1,4|2,2,5",
                "1,1,1,1|1,1,2|1,1,2",
                "2,2,2,2|3,5|1,1,1,1,1,3",
                "2,2,2,2|1,1,1,1,1,3|3,5",
                "1,1,1,1,1|2,3|1,1,1,2",
                "1,1,1,1,1|1,1,1,2|2,3",
                "1,1,1,1,1,1,1|3,4|2,2,3",
                "1,1,1,1,1,1,1|2,2,3|3,4",
            ]
        );
        for p in pats {
            assert_eq!(p.pattern.tits_form(), 0);
            assert!(!is_finite_exhaustive(&p.pattern).unwrap());
        }
    }

    #[test]
    fn pattern_examples() {
        let d = dv("3,3,3|2,2,5|1,1,1,1,1,4");
        let v = is_finite_pattern(&d);
        assert!(!v.finite);
        assert_eq!(v.witness.as_ref(), Some(&d));
        assert!(is_finite_pattern(&dv("1,1|1,1|1,1")).finite);

        let d = dv("2,2,1,1,1,1,1|3,1,5|2,2,1,4");
        let v = is_finite_pattern(&d);
        assert!(!v.finite);
        let w = v.witness.unwrap();
        assert!(forbidden_patterns().iter().any(|f| *w.normalize() == *f.pattern));
        assert!(w.le(&d));
        let seven = dv("1,1,1,1,1,1,1|3,4|2,2,3");
        let w7 = embed(&seven, &d).unwrap();
        assert_eq!(w7.normalize().as_dim(), &seven);
        assert!(d.checked_sub(&w7).unwrap().is_some());
        assert!(d.checked_sub(&w).unwrap().is_some());
        assert!(!is_finite_exhaustive(&d).unwrap());
    }

    #[test]
    fn embedding_respects_positions() {
        // pattern parts may sit anywhere among non-final slots, zeros between
        let d = dv("3,0,2,1,2|1,0,2,1,4|0,1,1,2,4");
        let w = is_finite_pattern(&d).witness.unwrap();
        assert_eq!(w.to_text(), "2,0,2,0,2|1,0,1,1,3|0,1,1,1,3");
        // too few slots in c'
        let d = dv("2,2,2|1,1,1,3|2,1,3");
        assert!(embed(&forbidden_patterns()[0].pattern, &d).is_none());
    }
}
