//! Orbits of finite-type joint flag varieties, counted through their
//! decompositions into rigid indecomposable pieces.
//!
//! An orbit of `Jl_d` corresponds to a multiset of finite-type `Q = 1`
//! vectors summing to `d`. Pieces are indexed position-explicitly: two
//! pieces with the same normal form but zero parts in different slots are
//! different pieces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::q1_summand_pool;
use crate::error::{Error, Result};
use crate::finiteness::{is_finite_pattern, DEFAULT_MAX_SUMMANDS};
use crate::lambda::{Composition, DimVector};

/// One vector of a decomposition with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilyEntry {
    pub vector: DimVector,
    pub multiplicity: u32,
}

/// A multiset of pieces, entries sorted by vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DecompositionFamily {
    entries: Vec<FamilyEntry>,
}

impl DecompositionFamily {
    /// Collects pieces, merging repeats.
    pub fn from_pieces<I: IntoIterator<Item = DimVector>>(pieces: I) -> Self {
        let mut counts: BTreeMap<DimVector, u32> = BTreeMap::new();
        for v in pieces {
            *counts.entry(v).or_default() += 1;
        }
        DecompositionFamily {
            entries: counts
                .into_iter()
                .map(|(vector, multiplicity)| FamilyEntry { vector, multiplicity })
                .collect(),
        }
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    /// Number of pieces counted with multiplicity.
    pub fn piece_count(&self) -> u32 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// `sum m_e * e`, or `None` for the empty family.
    pub fn total(&self) -> Result<Option<DimVector>> {
        let mut acc: Option<DimVector> = None;
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                acc = Some(match acc {
                    None => e.vector.clone(),
                    Some(s) => s.checked_add(&e.vector)?,
                });
            }
        }
        Ok(acc)
    }

    /// Stable orbit label, e.g. `1|0,1|1,0 + 1|1,0|0,1` or `2*1|1|1,0`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DecompositionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.multiplicity > 1 {
                write!(f, "{}*", e.multiplicity)?;
            }
            write!(f, "{}", e.vector)?;
        }
        Ok(())
    }
}

/// Vector-partition search of `d` over its piece pool.
struct Search {
    /// Pool entries flattened to `iter_entries` order, heaviest first.
    pool: Vec<Vec<u32>>,
    pool_vectors: Vec<DimVector>,
    memo: HashMap<(Vec<u32>, usize), u128>,
}

impl Search {
    fn new(d: &DimVector, max_summands: u128) -> Result<Self> {
        if !is_finite_pattern(d).finite {
            return Err(Error::NotFiniteType(d.to_text()));
        }
        let mut pool_vectors = q1_summand_pool(d, max_summands)?;
        pool_vectors.sort_by(|u, v| v.weight().cmp(&u.weight()).then_with(|| u.cmp(v)));
        let pool = pool_vectors.iter().map(|v| v.iter_entries().collect()).collect();
        Ok(Search {
            pool,
            pool_vectors,
            memo: HashMap::new(),
        })
    }

    fn max_multiplicity(residual: &[u32], piece: &[u32]) -> u32 {
        residual
            .iter()
            .zip(piece)
            .filter(|(_, &e)| e > 0)
            .map(|(&r, &e)| r / e)
            .min()
            .unwrap_or(0)
    }

    fn count(&mut self, residual: &[u32], from: usize) -> u128 {
        if residual.iter().all(|&v| v == 0) {
            return 1;
        }
        if from == self.pool.len() {
            return 0;
        }
        let key = (residual.to_vec(), from);
        if let Some(&n) = self.memo.get(&key) {
            return n;
        }
        let piece = self.pool[from].clone();
        let mut total = 0u128;
        let mut rest = residual.to_vec();
        for m in 0..=Self::max_multiplicity(residual, &piece) {
            if m > 0 {
                for (r, e) in rest.iter_mut().zip(&piece) {
                    *r -= e;
                }
            }
            total += self.count(&rest, from + 1);
        }
        self.memo.insert(key, total);
        total
    }

    fn collect(&mut self, residual: &[u32], from: usize, chosen: &mut Vec<usize>, out: &mut Vec<DecompositionFamily>) {
        if residual.iter().all(|&v| v == 0) {
            out.push(DecompositionFamily::from_pieces(
                chosen.iter().map(|&i| self.pool_vectors[i].clone()),
            ));
            return;
        }
        if self.count(residual, from) == 0 {
            return;
        }
        let piece = self.pool[from].clone();
        let mut rest = residual.to_vec();
        let depth = chosen.len();
        for m in 0..=Self::max_multiplicity(residual, &piece) {
            if m > 0 {
                for (r, e) in rest.iter_mut().zip(&piece) {
                    *r -= e;
                }
                chosen.push(from);
            }
            self.collect(&rest, from + 1, chosen, out);
        }
        chosen.truncate(depth);
    }
}

/// Number of `GL`-orbits on `Jl_d`, i.e. of decomposition families of `d`.
pub fn count_orbits(d: &DimVector) -> Result<u128> {
    count_orbits_with(d, DEFAULT_MAX_SUMMANDS)
}

pub fn count_orbits_with(d: &DimVector, max_summands: u128) -> Result<u128> {
    let mut s = Search::new(d, max_summands)?;
    let target: Vec<u32> = d.iter_entries().collect();
    Ok(s.count(&target, 0))
}

/// All decomposition families of `d`, sorted.
pub fn enumerate_orbits(d: &DimVector) -> Result<Vec<DecompositionFamily>> {
    enumerate_orbits_with(d, DEFAULT_MAX_SUMMANDS)
}

pub fn enumerate_orbits_with(d: &DimVector, max_summands: u128) -> Result<Vec<DecompositionFamily>> {
    let mut s = Search::new(d, max_summands)?;
    let target: Vec<u32> = d.iter_entries().collect();
    let mut out = Vec::new();
    s.collect(&target, 0, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// Parameters of the double flag variety `Fl_a(V2+V3) x Fl_b'(V2) x
/// Fl_c'(V3)` equivalent to a joint flag problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleFlagDatum {
    pub dim_v2: u64,
    pub dim_v3: u64,
    /// Flag type on `V2 + V3`.
    pub a: Vec<u32>,
    /// Flag type on `V2`.
    pub b_head: Vec<u32>,
    /// Flag type on `V3`.
    pub c_head: Vec<u32>,
}

pub fn jl_to_dl(d: &DimVector) -> DoubleFlagDatum {
    DoubleFlagDatum {
        dim_v2: d.x(),
        dim_v3: d.y(),
        a: d.a().parts().to_vec(),
        b_head: d.b().head().to_vec(),
        c_head: d.c().head().to_vec(),
    }
}

pub fn dl_to_jl(datum: &DoubleFlagDatum) -> Result<DimVector> {
    let sum = |v: &[u32]| v.iter().map(|&p| p as u64).sum::<u64>();
    let inconsistent = |what: &str| Err(Error::InconsistentDatum(what.to_string()));
    if sum(&datum.b_head) != datum.dim_v2 {
        return inconsistent("flag on V2 does not fill V2");
    }
    if sum(&datum.c_head) != datum.dim_v3 {
        return inconsistent("flag on V3 does not fill V3");
    }
    if sum(&datum.a) != datum.dim_v2 + datum.dim_v3 {
        return inconsistent("flag on V2+V3 has the wrong weight");
    }
    let a = Composition::new(datum.a.clone()).map_err(|e| Error::InconsistentDatum(e.to_string()))?;
    let d = DimVector::from_heads(a.parts().to_vec(), datum.b_head.clone(), datum.c_head.clone())?;
    Ok(d)
}
