//! Brute-force orbit counts over `F_2`, `F_3` and `F_5`.
//!
//! Every joint (or double) flag configuration of a small dimension vector
//! is listed, the whole general linear group (or its block-diagonal
//! subgroup) is enumerated, and orbits are closed by direct sweeping. This
//! is independent of the decomposition theory in [`crate::orbits`] and
//! serves as its ground truth.

mod field;
mod krull_schmidt;
mod lattice;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use field::{PrimeField, Row, Subspace};
pub use krull_schmidt::krull_schmidt_check;
use lattice::{GroupElements, Lattice, SubId};

use crate::error::{Error, Result};
use crate::lambda::DimVector;

/// Default cap on the number of configurations enumerated.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

/// Which orbit problem to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitMode {
    /// `GL(V)` on joint flags `(A, B, C)`.
    Jl,
    /// `GL(V2) x GL(V3)` on `Fl_a(V2+V3) x Fl_b'(V2) x Fl_c'(V3)`.
    Dl,
}

impl FromStr for OrbitMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jl" => Ok(OrbitMode::Jl),
            "dl" => Ok(OrbitMode::Dl),
            other => Err(Error::InvalidConfig(format!("unknown mode {other:?}, expected jl or dl"))),
        }
    }
}

impl fmt::Display for OrbitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitMode::Jl => "jl",
            OrbitMode::Dl => "dl",
        })
    }
}

/// A point: the proper members of the three chains in `F_p^dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FFFlagConfig {
    pub p: u32,
    pub dim: usize,
    pub a: Vec<Subspace>,
    pub b: Vec<Subspace>,
    pub c: Vec<Subspace>,
}

impl FFFlagConfig {
    /// Image under the invertible matrix `g`.
    pub fn transform(&self, g: &[Row]) -> Result<FFFlagConfig> {
        let field = PrimeField::new(self.p)?;
        let map = |chain: &[Subspace]| chain.iter().map(|s| s.transform(g, field)).collect();
        Ok(FFFlagConfig {
            p: self.p,
            dim: self.dim,
            a: map(&self.a),
            b: map(&self.b),
            c: map(&self.c),
        })
    }
}

impl fmt::Display for FFFlagConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain = |f: &mut fmt::Formatter<'_>, name: &str, subs: &[Subspace]| -> fmt::Result {
            write!(f, "{name}:")?;
            for s in subs {
                write!(f, " {s}")?;
            }
            Ok(())
        };
        chain(f, "A", &self.a)?;
        f.write_str("  ")?;
        chain(f, "B", &self.b)?;
        f.write_str("  ")?;
        chain(f, "C", &self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub max_points: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_points: DEFAULT_MAX_POINTS,
        }
    }
}

/// One orbit: its least point and its size.
#[derive(Debug, Clone, Serialize)]
pub struct OracleOrbit {
    pub representative: FFFlagConfig,
    pub size: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRun {
    pub p: u32,
    pub mode: OrbitMode,
    pub points: u64,
    pub group_order: u64,
    pub orbits: Vec<OracleOrbit>,
}

/// Largest ambient dimension whose full group is enumerated.
pub fn max_dimension(p: u32) -> usize {
    if p == 2 {
        4
    } else {
        3
    }
}

/// `|GL_n(F_p)|`.
pub fn gl_order(n: usize, p: u64) -> u128 {
    let q = p as u128;
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

/// Number of `k`-dimensional subspaces of `F_p^n`.
fn gaussian_binomial(n: u64, k: u64, p: u64) -> u128 {
    let q = p as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k as u32 {
        num *= q.pow(n as u32 - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Number of flags of type `parts` in `F_p^(sum parts)`.
fn flag_count(parts: &[u32], p: u64) -> u128 {
    let mut total = 0u64;
    let mut count = 1u128;
    for &part in parts {
        total += part as u64;
        count *= gaussian_binomial(total, part as u64, p);
    }
    count
}

/// Closed-form number of configurations the oracle lists for `d`.
pub fn point_count(d: &DimVector, p: u32, mode: OrbitMode) -> u128 {
    let p = p as u64;
    let (n, x, y) = (d.weight(), d.x(), d.y());
    let flags = flag_count(d.a().parts(), p) * flag_count(d.b().head(), p) * flag_count(d.c().head(), p);
    match mode {
        OrbitMode::Jl => flags * gaussian_binomial(n, x, p) * (p as u128).pow((x * y) as u32),
        OrbitMode::Dl => flags,
    }
}

struct PointSet {
    lattice: Lattice,
    group: GroupElements,
    stride: usize,
    lens: (usize, usize, usize),
    /// Sorted lexicographically.
    flat: Vec<SubId>,
    count: usize,
    /// `image_table[g * subs + s]`, when small enough to keep.
    image_table: Option<Vec<SubId>>,
}

impl PointSet {
    fn new(d: &DimVector, p: u32, mode: OrbitMode, cfg: OracleConfig) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let n = d.weight() as usize;
        if n > max_dimension(p) {
            return Err(Error::BudgetExceeded {
                what: "ambient dimension for full group enumeration",
                limit: max_dimension(p) as u64,
            });
        }
        let expected = point_count(d, p, mode);
        if expected > cfg.max_points as u128 {
            return Err(Error::BudgetExceeded {
                what: "finite-field point count",
                limit: cfg.max_points,
            });
        }
        let lattice = Lattice::new(field, n);
        let x = d.x() as usize;
        let whole = lattice.whole();
        let (b_within, c_within) = match mode {
            OrbitMode::Jl => (whole, whole),
            OrbitMode::Dl => (lattice.coordinate_span(0..x), lattice.coordinate_span(x..n)),
        };
        let a_chains = lattice.chains(d.a().head(), whole);
        let b_chains = lattice.chains(d.b().head(), b_within);
        let c_chains = lattice.chains(d.c().head(), c_within);
        let top = |chain: &[SubId]| chain.last().map_or(1u128, |&id| lattice.mask(id));
        let mut pairs = Vec::new();
        for bc in &b_chains {
            for cc in &c_chains {
                if top(bc) & top(cc) == 1 {
                    pairs.push((bc, cc));
                }
            }
        }
        let lens = (d.a().len() - 1, d.b().len() - 1, d.c().len() - 1);
        let stride = lens.0 + lens.1 + lens.2;
        let total = a_chains.len() * pairs.len();
        debug_assert_eq!(total as u128, expected);
        let mut flat = Vec::with_capacity(total * stride);
        for ac in &a_chains {
            for (bc, cc) in &pairs {
                flat.extend_from_slice(ac);
                flat.extend_from_slice(bc);
                flat.extend_from_slice(cc);
            }
        }

        let mut group = lattice.general_linear_group();
        if mode == OrbitMode::Dl {
            let (v2, v3) = (b_within, c_within);
            group = group.retain(|g| {
                g.iter().enumerate().all(|(i, &col)| {
                    let target = if i < x { v2 } else { v3 };
                    target >> col & 1 == 1
                })
            });
        }
        let subs = lattice.count();
        let image_table = (group.order() * subs <= 1 << 23).then(|| {
            group
                .iter()
                .flat_map(|g| (0..subs as SubId).map(|s| lattice.image(g, s)).collect::<Vec<_>>())
                .collect()
        });
        Ok(PointSet {
            lattice,
            group,
            stride,
            lens,
            flat,
            count: total,
            image_table,
        })
    }

    fn len(&self) -> usize {
        self.count
    }

    fn point(&self, i: usize) -> &[SubId] {
        &self.flat[i * self.stride..(i + 1) * self.stride]
    }

    fn find(&self, key: &[SubId]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.point(mid).cmp(key) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn image(&self, g_index: usize, s: SubId) -> SubId {
        match &self.image_table {
            Some(t) => t[g_index * self.lattice.count() + s as usize],
            None => self.lattice.image(self.group.get(g_index), s),
        }
    }

    fn config(&self, i: usize) -> FFFlagConfig {
        let pt = self.point(i);
        let (la, lb, _) = self.lens;
        let subs = |ids: &[SubId]| ids.iter().map(|&id| self.lattice.subspace(id)).collect();
        FFFlagConfig {
            p: self.lattice.field.p(),
            dim: self.lattice.n,
            a: subs(&pt[..la]),
            b: subs(&pt[la..la + lb]),
            c: subs(&pt[la + lb..]),
        }
    }

    fn sweep(&self) -> Vec<(usize, u64)> {
        let n = self.len();
        let mut visited = vec![false; n];
        let mut orbits = Vec::new();
        let mut image = vec![0 as SubId; self.stride];
        for seed in 0..n {
            if visited[seed] {
                continue;
            }
            let mut size = 0u64;
            for g in 0..self.group.order() {
                for (slot, &s) in image.iter_mut().zip(self.point(seed)) {
                    *slot = self.image(g, s);
                }
                let j = self.find(&image).expect("the group preserves the configuration set");
                if !visited[j] {
                    visited[j] = true;
                    size += 1;
                }
            }
            orbits.push((seed, size));
        }
        orbits
    }
}

/// Lists all points and sweeps them into orbits.
pub fn run_oracle(d: &DimVector, p: u32, mode: OrbitMode, cfg: OracleConfig) -> Result<OracleRun> {
    let set = PointSet::new(d, p, mode, cfg)?;
    let orbits = set
        .sweep()
        .into_iter()
        .map(|(seed, size)| OracleOrbit {
            representative: set.config(seed),
            size,
        })
        .collect();
    Ok(OracleRun {
        p,
        mode,
        points: set.len() as u64,
        group_order: set.group.order() as u64,
        orbits,
    })
}

/// Every joint flag configuration of `d` over `F_p`, in canonical order.
pub fn enumerate_jl_points(d: &DimVector, p: u32, cfg: OracleConfig) -> Result<Vec<FFFlagConfig>> {
    let set = PointSet::new(d, p, OrbitMode::Jl, cfg)?;
    Ok((0..set.len()).map(|i| set.config(i)).collect())
}

pub fn count_orbits_ff(d: &DimVector, p: u32, mode: OrbitMode) -> Result<u64> {
    Ok(run_oracle(d, p, mode, OracleConfig::default())?.orbits.len() as u64)
}

/// The least point of each `GL(V)`-orbit on `Jl_d(F_p^n)`.
pub fn orbit_representatives_ff(d: &DimVector, p: u32) -> Result<Vec<FFFlagConfig>> {
    Ok(run_oracle(d, p, OrbitMode::Jl, OracleConfig::default())?
        .orbits
        .into_iter()
        .map(|o| o.representative)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    #[test]
    fn point_examples() {
        let cfg = OracleConfig::default();
        assert_eq!(enumerate_jl_points(&dv("1,1|1,1|1,1"), 2, cfg).unwrap().len(), 18);
        assert_eq!(enumerate_jl_points(&dv("2|1,1|1,1"), 2, cfg).unwrap().len(), 6);
        assert_eq!(enumerate_jl_points(&dv("1|1|1,0"), 2, cfg).unwrap().len(), 1);
        let tiny = OracleConfig { max_points: 5 };
        assert!(matches!(
            enumerate_jl_points(&dv("2|1,1|1,1"), 2, tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_orbits_ff(&dv("1,1|1,1|1,1"), 2, OrbitMode::Jl).unwrap(), 3);
        assert_eq!(count_orbits_ff(&dv("2|1,1|1,1"), 2, OrbitMode::Jl).unwrap(), 1);
        assert_eq!(count_orbits_ff(&dv("1,1|1,1|1,1"), 2, OrbitMode::Dl).unwrap(), 3);
        assert!(matches!(
            count_orbits_ff(&dv("1,1,1,1,1|2,3|1,1,1,2"), 2, OrbitMode::Jl),
            Err(Error::BudgetExceeded { .. })
        ));
        assert_eq!(count_orbits_ff(&dv("1|1|1,0"), 7, OrbitMode::Jl), Err(Error::UnsupportedField(7)));
    }

    #[test]
    fn representative_examples() {
        let reps = orbit_representatives_ff(&dv("2|1,1|1,1"), 2).unwrap();
        assert_eq!(reps.len(), 1);
        let f = PrimeField::new(2).unwrap();
        assert_eq!(reps[0].b, vec![Subspace::span(f, 2, vec![vec![1, 0]])]);
        assert_eq!(reps[0].c, vec![Subspace::span(f, 2, vec![vec![0, 1]])]);
        assert_eq!(orbit_representatives_ff(&dv("1|1|1,0"), 2).unwrap().len(), 1);
        assert_eq!(orbit_representatives_ff(&dv("1,1|1,1|1,1"), 2).unwrap().len(), 3);
    }

    #[test]
    fn orbit_sizes_partition_points() {
        for s in ["1,1|1,1|1,1", "1,1,1|1,2|1,1,1", "2,1|1,2|2,1"] {
            for mode in [OrbitMode::Jl, OrbitMode::Dl] {
                let run = run_oracle(&dv(s), 2, mode, OracleConfig::default()).unwrap();
                assert_eq!(run.orbits.iter().map(|o| o.size).sum::<u64>(), run.points);
                assert_eq!(run.points as u128, point_count(&dv(s), 2, mode));
                for o in &run.orbits {
                    assert_eq!(run.group_order % o.size, 0);
                }
            }
        }
    }

    #[test]
    fn krull_schmidt_examples() {
        let one = dv("1|1|1,0");
        let reps = orbit_representatives_ff(&one, 2).unwrap();
        assert_eq!(krull_schmidt_check(&reps[0]).unwrap().label(), "1|1|1,0");

        let d = dv("1,1|1,1|1,1");
        let mut labels: Vec<String> = orbit_representatives_ff(&d, 2)
            .unwrap()
            .iter()
            .map(|c| krull_schmidt_check(c).unwrap().label())
            .collect();
        labels.sort();
        assert_eq!(
            labels,
            vec![
                "0,1|0,1|1,0 + 1,0|1,0|0,1",
                "0,1|1,0|0,1 + 1,0|0,1|1,0",
                "1,1|1,1|1,1",
            ]
        );
    }
}
