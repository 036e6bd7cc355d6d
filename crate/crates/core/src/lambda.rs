//! Compositions and joint-flag dimension vectors.
//!
//! A [`DimVector`] is a triple `(a, b, c)` of compositions describing the
//! dimension increments of three flags in a common space `V`. The `b` and
//! `c` flags are joint: their penultimate members are complementary, so the
//! last part of `b` equals `|c'|` and the last part of `c` equals `|b'|`,
//! where a primed composition drops its last part.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient dimension accepted. Keeps every square and the Tits form
/// comfortably inside `i64`.
pub const MAX_WEIGHT: u64 = (1 << 30) - 1;

/// An ordered tuple of nonnegative integers, zero parts allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::EmptyComposition);
        }
        let c = Composition(parts);
        if c.weight() > MAX_WEIGHT {
            return Err(Error::Overflow("composition weight"));
        }
        Ok(c)
    }

    /// Builds `(part^count)`, the composition with `count` equal parts.
    pub fn repeat(part: u32, count: usize) -> Result<Self> {
        Self::new(vec![part; count])
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(vec![0; len])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Compositions are never empty; provided for clippy's sake.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|a|`, the sum of the parts.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// `||a||^2`, the sum of the squared parts.
    pub fn norm_sq(&self) -> u64 {
        norm_sq(&self.0)
    }

    /// All parts but the last (`a'`).
    pub fn head(&self) -> &[u32] {
        &self.0[..self.0.len() - 1]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&p| p == 0)
    }

    /// `a+`: zero parts removed, the rest sorted weakly decreasing. May be
    /// empty when every part is zero.
    pub fn plus(&self) -> Vec<u32> {
        plus(&self.0)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

pub(crate) fn norm_sq(parts: &[u32]) -> u64 {
    parts.iter().map(|&p| (p as u64) * (p as u64)).sum()
}

pub(crate) fn plus(parts: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
    v.sort_unstable_by(|x, y| y.cmp(x));
    v
}

#[derive(Deserialize)]
struct RawDimVector {
    a: Vec<u32>,
    b: Vec<u32>,
    c: Vec<u32>,
}

impl TryFrom<RawDimVector> for DimVector {
    type Error = Error;
    fn try_from(raw: RawDimVector) -> Result<Self> {
        DimVector::from_parts(raw.a, raw.b, raw.c)
    }
}

/// A validated element of the joint-flag semigroup.
///
/// Invariants: `|a| = |b| = |c|` and `|b'| + |c'| = |a|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDimVector")]
pub struct DimVector {
    a: Composition,
    b: Composition,
    c: Composition,
}

/// The shape `(r, p, q)` = lengths of `a`, `b`, `c`.
pub type Shape = (usize, usize, usize);

impl DimVector {
    /// Checks every semigroup invariant.
    pub fn validate(a: Composition, b: Composition, c: Composition) -> Result<Self> {
        let (wa, wb, wc) = (a.weight(), b.weight(), c.weight());
        if wa != wb || wb != wc {
            return Err(Error::WeightMismatch { a: wa, b: wb, c: wc });
        }
        let bc = sum(b.head()) + sum(c.head());
        if bc != wa {
            return Err(Error::JointConditionViolated { a: wa, bc });
        }
        Ok(DimVector { a, b, c })
    }

    pub fn from_parts(a: Vec<u32>, b: Vec<u32>, c: Vec<u32>) -> Result<Self> {
        Self::validate(Composition::new(a)?, Composition::new(b)?, Composition::new(c)?)
    }

    /// Builds a vector from `a`, `b'`, `c'`, filling in the forced final parts.
    pub fn from_heads(a: Vec<u32>, b_head: Vec<u32>, c_head: Vec<u32>) -> Result<Self> {
        let x = sum(&b_head);
        let y = sum(&c_head);
        let mut b = b_head;
        b.push(u32::try_from(y).map_err(|_| Error::Overflow("final part"))?);
        let mut c = c_head;
        c.push(u32::try_from(x).map_err(|_| Error::Overflow("final part"))?);
        Self::from_parts(a, b, c)
    }

    pub fn zero(shape: Shape) -> Result<Self> {
        Self::validate(
            Composition::zeros(shape.0)?,
            Composition::zeros(shape.1)?,
            Composition::zeros(shape.2)?,
        )
    }

    pub fn a(&self) -> &Composition {
        &self.a
    }

    pub fn b(&self) -> &Composition {
        &self.b
    }

    pub fn c(&self) -> &Composition {
        &self.c
    }

    pub fn shape(&self) -> Shape {
        (self.a.len(), self.b.len(), self.c.len())
    }

    /// Ambient dimension `|a|`.
    pub fn weight(&self) -> u64 {
        self.a.weight()
    }

    /// `x = |b'|`, the dimension of the top proper member of the `b` flag.
    pub fn x(&self) -> u64 {
        sum(self.b.head())
    }

    /// `y = |c'|`.
    pub fn y(&self) -> u64 {
        sum(self.c.head())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// `Q(d) = (||a||^2 + ||b||^2 + ||c||^2 - |a|^2) / 2`.
    pub fn tits_form(&self) -> i64 {
        let n = self.weight() as i128;
        let twice = self.a.norm_sq() as i128 + self.b.norm_sq() as i128 + self.c.norm_sq() as i128
            - n * n;
        debug_assert!(twice % 2 == 0, "odd Tits numerator for {self}");
        (twice / 2) as i64
    }

    /// The `d+` form: zeros stripped, non-final parts sorted weakly
    /// decreasing, final parts of `b` and `c` pinned to `|c'|` and `|b'|`.
    pub fn normalize(&self) -> NormalizedVector {
        let mut a = self.a.plus();
        if a.is_empty() {
            a.push(0);
        }
        let mut b = plus(self.b.head());
        b.push(self.y() as u32);
        let mut c = plus(self.c.head());
        c.push(self.x() as u32);
        NormalizedVector(DimVector {
            a: Composition(a),
            b: Composition(b),
            c: Composition(c),
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize().as_dim() == self
    }

    /// Swaps the roles of the `b` and `c` flags.
    pub fn mirror(&self) -> DimVector {
        DimVector {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
        }
    }

    fn check_shape(&self, other: &DimVector) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// Componentwise `self - other`, or `None` when some entry would go
    /// negative. Linear constraints make any nonnegative difference valid.
    pub fn checked_sub(&self, other: &DimVector) -> Result<Option<DimVector>> {
        self.check_shape(other)?;
        fn sub(x: &Composition, y: &Composition) -> Option<Composition> {
            x.0.iter()
                .zip(&y.0)
                .map(|(&p, &q)| p.checked_sub(q))
                .collect::<Option<Vec<_>>>()
                .map(Composition)
        }
        Ok((|| {
            Some(DimVector {
                a: sub(&self.a, &other.a)?,
                b: sub(&self.b, &other.b)?,
                c: sub(&self.c, &other.c)?,
            })
        })())
    }

    pub fn checked_add(&self, other: &DimVector) -> Result<DimVector> {
        self.check_shape(other)?;
        fn add(x: &Composition, y: &Composition) -> Result<Vec<u32>> {
            x.0.iter()
                .zip(&y.0)
                .map(|(&p, &q)| p.checked_add(q).ok_or(Error::Overflow("addition")))
                .collect()
        }
        Self::from_parts(add(&self.a, &other.a)?, add(&self.b, &other.b)?, add(&self.c, &other.c)?)
    }

    /// Componentwise `self <= other` (same shape required).
    pub fn le(&self, other: &DimVector) -> bool {
        self.shape() == other.shape()
            && self
                .iter_entries()
                .zip(other.iter_entries())
                .all(|(p, q)| p <= q)
    }

    /// All entries in the order `a`, `b`, `c`.
    pub fn iter_entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.a.0.iter().chain(&self.b.0).chain(&self.c.0).copied()
    }

    /// Canonical pipe encoding, e.g. `2,2,2|1,1,1,3|1,1,1,3`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// `{"a":[..],"b":[..],"c":[..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("dimension vector serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: json_offset(s, e.line(), e.column()),
            msg: e.to_string(),
        })
    }
}

fn json_offset(s: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (i, l) in s.split('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len() + 1;
    }
    offset
}

fn sum(parts: &[u32]) -> u64 {
    parts.iter().map(|&p| p as u64).sum()
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}|{}", self.a, self.b, self.c)
    }
}

impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut segments = Vec::with_capacity(3);
        let mut offset = 0;
        for seg in s.split('|') {
            segments.push((offset, seg));
            offset += seg.len() + 1;
        }
        if segments.len() != 3 {
            let pos = if segments.len() < 3 {
                s.len()
            } else {
                segments[3].0 - 1
            };
            return Err(Error::Parse {
                pos,
                msg: format!("expected 3 '|'-separated compositions, found {}", segments.len()),
            });
        }
        let mut comps = Vec::with_capacity(3);
        for (start, seg) in segments {
            let mut parts = Vec::new();
            let mut tok_start = start;
            for tok in seg.split(',') {
                let lead = tok.len() - tok.trim_start().len();
                let t = tok.trim();
                let value = t.parse::<u32>().map_err(|_| Error::Parse {
                    pos: tok_start + lead,
                    msg: if t.is_empty() {
                        "empty part".to_string()
                    } else {
                        format!("invalid part {t:?}")
                    },
                })?;
                parts.push(value);
                tok_start += tok.len() + 1;
            }
            comps.push(Composition::new(parts)?);
        }
        let c = comps.pop().unwrap();
        let b = comps.pop().unwrap();
        let a = comps.pop().unwrap();
        DimVector::validate(a, b, c)
    }
}

/// A dimension vector in `d+` form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NormalizedVector(DimVector);

impl NormalizedVector {
    /// Accepts `d` only if it already is in `d+` form.
    pub fn new(d: DimVector) -> Option<Self> {
        d.is_normalized().then_some(NormalizedVector(d))
    }

    /// Builds from `a+`, `b'+`, `c'+`; the result is normalized whatever
    /// order the parts come in.
    pub fn from_heads(a: Vec<u32>, b_head: Vec<u32>, c_head: Vec<u32>) -> Result<Self> {
        Ok(DimVector::from_heads(a, b_head, c_head)?.normalize())
    }

    pub fn as_dim(&self) -> &DimVector {
        &self.0
    }

    pub fn into_dim(self) -> DimVector {
        self.0
    }

    pub fn mirror(&self) -> NormalizedVector {
        NormalizedVector(self.0.mirror())
    }
}

impl std::ops::Deref for NormalizedVector {
    type Target = DimVector;
    fn deref(&self) -> &DimVector {
        &self.0
    }
}

impl fmt::Display for NormalizedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Splits `n` into `m` positive parts differing pairwise by at most one,
/// returned weakly decreasing. This is the unique minimiser of `||.||^2`
/// among partitions of `n` with exactly `m` nonzero parts.
///
/// `n = 0` yields `m` zero parts.
pub fn min_norm_partition(n: u64, m: u64) -> Result<Composition> {
    if m == 0 || (n > 0 && m > n) {
        return Err(Error::Infeasible { n, m });
    }
    if n > MAX_WEIGHT {
        return Err(Error::Overflow("min_norm_partition"));
    }
    let (q, r) = (n / m, n % m);
    let parts = (0..m).map(|i| (q + u64::from(i < r)) as u32).collect();
    Composition::new(parts)
}
