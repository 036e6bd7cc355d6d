//! Bounded universes of dimension vectors for exhaustive checks.

use crate::enumerate::{compositions, partitions};
use crate::lambda::{DimVector, NormalizedVector};

/// Bounds on `|a|` and on the shape `(r, p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_weight: u32,
    pub max_r: usize,
    pub max_p: usize,
    pub max_q: usize,
}

/// Calls `f` on every valid vector with `1 <= |a| <= max_weight` and shape
/// within bounds, zero parts allowed anywhere. Returns how many were visited.
pub fn for_each_valid<F: FnMut(&DimVector)>(bounds: Bounds, mut f: F) -> u64 {
    let mut seen = 0;
    for n in 1..=bounds.max_weight {
        for r in 1..=bounds.max_r {
            let a_all: Vec<Vec<u32>> = compositions(n, r).collect();
            for p in 1..=bounds.max_p {
                for q in 1..=bounds.max_q {
                    for x in 0..=n {
                        let y = n - x;
                        let b_heads: Vec<Vec<u32>> = compositions(x, p - 1).collect();
                        let c_heads: Vec<Vec<u32>> = compositions(y, q - 1).collect();
                        for bh in &b_heads {
                            for ch in &c_heads {
                                for a in &a_all {
                                    let d = DimVector::from_heads(a.clone(), bh.clone(), ch.clone())
                                        .expect("generated vectors are valid");
                                    f(&d);
                                    seen += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    seen
}

/// Every vector in `d+` form with `1 <= |a| <= max_weight` and shape within
/// bounds, sorted.
pub fn normalized_vectors(bounds: Bounds) -> Vec<NormalizedVector> {
    let mut out = Vec::new();
    for n in 1..=bounds.max_weight {
        let a_all = partitions(n, bounds.max_r);
        for x in 0..=n {
            let y = n - x;
            let b_heads = partitions(x, bounds.max_p.saturating_sub(1));
            let c_heads = partitions(y, bounds.max_q.saturating_sub(1));
            for a in &a_all {
                for bh in &b_heads {
                    for ch in &c_heads {
                        let v = NormalizedVector::from_heads(a.clone(), bh.clone(), ch.clone())
                            .expect("generated vectors are valid");
                        out.push(v);
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
