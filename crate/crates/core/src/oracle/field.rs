//! Arithmetic and linear algebra over `F_p`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Row vectors and matrices over `F_p`, entries in `0..p`.
pub type Row = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const SUPPORTED: [u32; 3] = [2, 3, 5];

    pub fn new(p: u32) -> Result<Self> {
        if Self::SUPPORTED.contains(&p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::UnsupportedField(p))
        }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.p));
        (1..self.p).find(|&b| self.mul(a, b) == 1).expect("nonzero element")
    }

    /// Reduces `rows` in place to reduced row echelon form, dropping zero
    /// rows; returns the pivot columns.
    pub fn rref(self, rows: &mut Vec<Row>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(found) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, found);
            let inv = self.inv(rows[r][col]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows.len() {
                let factor = rows[i][col];
                if i != r && factor != 0 {
                    let pivot_row = rows[r].clone();
                    for (v, &pv) in rows[i].iter_mut().zip(&pivot_row) {
                        *v = self.sub(*v, self.mul(factor, pv));
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    pub fn rank(self, rows: &[Row]) -> usize {
        let mut m = rows.to_vec();
        self.rref(&mut m).len()
    }

    /// Basis of `{v : M v = 0}` for `M` with `ncols` columns.
    pub fn nullspace(self, rows: &[Row], ncols: usize) -> Vec<Row> {
        let mut m = rows.to_vec();
        let pivots = self.rref(&mut m);
        let mut out = Vec::new();
        for free in (0..ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = self.neg(row[free]);
            }
            out.push(v);
        }
        out
    }

    pub fn mat_mul(self, x: &[Row], y: &[Row]) -> Vec<Row> {
        let inner = y.len();
        let cols = y.first().map_or(0, Vec::len);
        x.iter()
            .map(|row| {
                (0..cols)
                    .map(|j| (0..inner).fold(0, |acc, k| self.add(acc, self.mul(row[k], y[k][j]))))
                    .collect()
            })
            .collect()
    }

    pub fn mat_vec(self, m: &[Row], v: &[u32]) -> Row {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| self.add(acc, self.mul(a, b))))
            .collect()
    }

    pub fn mat_pow(self, m: &[Row], k: usize) -> Vec<Row> {
        let n = m.len();
        let mut acc = identity(n);
        for _ in 0..k {
            acc = self.mat_mul(&acc, m);
        }
        acc
    }
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &[Row], ncols: usize) -> Vec<Row> {
    (0..ncols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

/// A subspace of `F_p^n`, stored by its reduced row echelon basis, which
/// makes equality of values equality of subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Row>,
}

impl Subspace {
    pub fn span(field: PrimeField, ambient: usize, vectors: Vec<Row>) -> Self {
        let mut rows = vectors;
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        field.rref(&mut rows);
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn whole(ambient: usize) -> Self {
        Subspace { ambient, rows: identity(ambient) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().position(|&v| v != 0).expect("echelon rows are nonzero"))
            .collect()
    }

    /// `{w : w . s = 0 for all s}`.
    pub fn perp(&self, field: PrimeField) -> Subspace {
        Subspace::span(field, self.ambient, field.nullspace(&self.rows, self.ambient))
    }

    pub fn sum(&self, other: &Subspace, field: PrimeField) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace::span(field, self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace, field: PrimeField) -> Subspace {
        self.perp(field).sum(&other.perp(field), field).perp(field)
    }

    pub fn contains(&self, other: &Subspace, field: PrimeField) -> bool {
        self.sum(other, field).dim() == self.dim()
    }

    /// Image under the matrix `g` acting on column vectors.
    pub fn transform(&self, g: &[Row], field: PrimeField) -> Subspace {
        let rows = self.rows.iter().map(|r| field.mat_vec(g, r)).collect();
        Subspace::span(field, self.ambient, rows)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for p in PrimeField::SUPPORTED {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
            }
        }
        assert_eq!(PrimeField::new(7), Err(Error::UnsupportedField(7)));
    }

    #[test]
    fn rref_and_nullspace() {
        let f = PrimeField::new(3).unwrap();
        let m = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let s = Subspace::span(f, 3, m.clone());
        assert_eq!(s.dim(), 1);
        assert_eq!(s.rows(), &[vec![1, 2, 0]]);
        let ns = f.nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(f.mat_vec(&m, v).iter().all(|&x| x == 0));
        }
        assert_eq!(f.nullspace(&[], 2), identity(2));
    }

    #[test]
    fn intersections() {
        let f = PrimeField::new(2).unwrap();
        let u = Subspace::span(f, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(f, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(&w, f), Subspace::span(f, 3, vec![vec![0, 1, 0]]));
        assert_eq!(u.intersect(&Subspace::zero(3), f).dim(), 0);
        assert!(Subspace::whole(3).contains(&u, f));
        assert!(!u.contains(&w, f));
        assert_eq!(u.to_string(), "[1,0,0;0,1,0]");
    }
}
