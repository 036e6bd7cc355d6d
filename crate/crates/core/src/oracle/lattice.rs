//! All subspaces of a tiny `F_p^n`, stored as bitmasks over its `p^n`
//! vectors, and the action of `GL_n(F_p)` on them.
//!
//! Vector `v` has index `sum v_i p^i`, so `e_1` is index 1. Subspace ids
//! are assigned in increasing mask order; comparing ids compares masks.

use std::collections::HashMap;

use super::field::{PrimeField, Row, Subspace};

pub(crate) type SubId = u16;

/// Group elements flattened with stride `n`.
pub(crate) struct GroupElements {
    flat: Vec<u8>,
    stride: usize,
    order: usize,
}

impl GroupElements {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize) -> &[u8] {
        &self.flat[i * self.stride..(i + 1) * self.stride]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> + '_ {
        (0..self.order).map(move |i| self.get(i))
    }

    /// Keeps the elements satisfying `keep`.
    pub fn retain<F: Fn(&[u8]) -> bool>(self, keep: F) -> GroupElements {
        let mut out = GroupElements {
            flat: Vec::new(),
            stride: self.stride,
            order: 0,
        };
        for g in self.iter().filter(|g| keep(g)) {
            out.flat.extend_from_slice(g);
            out.order += 1;
        }
        out
    }
}

pub(crate) struct Lattice {
    pub field: PrimeField,
    pub n: usize,
    size: usize,
    digits: Vec<u8>,
    add: Vec<u8>,
    smul: Vec<u8>,
    masks: Vec<u128>,
    dims: Vec<usize>,
    /// Echelon basis of each subspace, as vector indices.
    bases: Vec<Vec<u8>>,
    by_mask: HashMap<u128, SubId>,
}

impl Lattice {
    /// Needs `p^n <= 128`.
    pub fn new(field: PrimeField, n: usize) -> Self {
        let p = field.p() as usize;
        let size = p.pow(n as u32);
        assert!(size <= 128, "ambient space too large for bitmask subspaces");
        let mut digits = vec![0u8; size * n];
        for v in 0..size {
            let mut rest = v;
            for i in 0..n {
                digits[v * n + i] = (rest % p) as u8;
                rest /= p;
            }
        }
        let index = |d: &[u8]| d.iter().rev().fold(0usize, |acc, &x| acc * p + x as usize);
        let mut add = vec![0u8; size * size];
        for u in 0..size {
            for v in 0..size {
                let s: Vec<u8> = (0..n)
                    .map(|i| ((digits[u * n + i] + digits[v * n + i]) as usize % p) as u8)
                    .collect();
                add[u * size + v] = index(&s) as u8;
            }
        }
        let mut smul = vec![0u8; p * size];
        for t in 0..p {
            for v in 0..size {
                let s: Vec<u8> = (0..n)
                    .map(|i| ((t * digits[v * n + i] as usize) % p) as u8)
                    .collect();
                smul[t * size + v] = index(&s) as u8;
            }
        }
        let mut lat = Lattice {
            field,
            n,
            size,
            digits,
            add,
            smul,
            masks: Vec::new(),
            dims: Vec::new(),
            bases: Vec::new(),
            by_mask: HashMap::new(),
        };
        lat.build_subspaces();
        lat
    }

    fn build_subspaces(&mut self) {
        let mut found: Vec<(u128, usize)> = vec![(1, 0)];
        let mut layer = vec![1u128];
        for k in 0..self.n {
            let mut next: Vec<u128> = Vec::new();
            for &s in &layer {
                for v in 1..self.size {
                    if s >> v & 1 == 0 {
                        let t = self.span_with(s, v as u8);
                        if !next.contains(&t) {
                            next.push(t);
                        }
                    }
                }
            }
            found.extend(next.iter().map(|&m| (m, k + 1)));
            layer = next;
        }
        found.sort();
        for (id, &(mask, dim)) in found.iter().enumerate() {
            self.by_mask.insert(mask, id as SubId);
            self.masks.push(mask);
            self.dims.push(dim);
            let sub = self.to_subspace_from_mask(mask);
            let basis = sub.rows().iter().map(|r| self.index_of(r)).collect();
            self.bases.push(basis);
        }
    }

    fn members(&self, mask: u128) -> impl Iterator<Item = u8> + '_ {
        (0..self.size as u8).filter(move |&v| mask >> v & 1 == 1)
    }

    fn vector(&self, v: u8) -> Row {
        (0..self.n).map(|i| self.digits[v as usize * self.n + i] as u32).collect()
    }

    fn index_of(&self, row: &[u32]) -> u8 {
        let p = self.field.p();
        row.iter().rev().fold(0u32, |acc, &x| acc * p + x) as u8
    }

    fn to_subspace_from_mask(&self, mask: u128) -> Subspace {
        let rows = self.members(mask).map(|v| self.vector(v)).collect();
        Subspace::span(self.field, self.n, rows)
    }

    /// `S + F_p v`.
    fn span_with(&self, mask: u128, v: u8) -> u128 {
        let mut out = mask;
        for s in self.members(mask) {
            for t in 1..self.field.p() as usize {
                let tv = self.smul[t * self.size + v as usize];
                out |= 1u128 << self.add[s as usize * self.size + tv as usize];
            }
        }
        out
    }

    pub fn count(&self) -> usize {
        self.masks.len()
    }

    #[cfg(test)]
    pub fn dim(&self, id: SubId) -> usize {
        self.dims[id as usize]
    }

    pub fn mask(&self, id: SubId) -> u128 {
        self.masks[id as usize]
    }

    pub fn subspace(&self, id: SubId) -> Subspace {
        let rows = self.bases[id as usize].iter().map(|&v| self.vector(v)).collect();
        Subspace::span(self.field, self.n, rows)
    }

    pub fn whole(&self) -> u128 {
        if self.size == 128 {
            u128::MAX
        } else {
            (1u128 << self.size) - 1
        }
    }

    /// `span(e_i : i in range)`.
    pub fn coordinate_span(&self, range: std::ops::Range<usize>) -> u128 {
        let p = self.field.p() as usize;
        range.fold(1u128, |m, i| self.span_with(m, p.pow(i as u32) as u8))
    }

    pub fn is_within(inner: u128, outer: u128) -> bool {
        inner & !outer == 0
    }

    /// Chains `S_1 <= ... <= S_k` inside `within` with `dim S_i` the
    /// partial sums of `heads`, in lexicographic order of ids.
    pub fn chains(&self, heads: &[u32], within: u128) -> Vec<Vec<SubId>> {
        let mut cum = Vec::with_capacity(heads.len());
        let mut acc = 0usize;
        for &h in heads {
            acc += h as usize;
            cum.push(acc);
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.extend_chain(&cum, within, 1, &mut cur, &mut out);
        out
    }

    fn extend_chain(&self, cum: &[usize], within: u128, prev: u128, cur: &mut Vec<SubId>, out: &mut Vec<Vec<SubId>>) {
        let Some(&target) = cum.get(cur.len()) else {
            out.push(cur.clone());
            return;
        };
        for id in 0..self.count() {
            let m = self.masks[id];
            if self.dims[id] == target && Self::is_within(prev, m) && Self::is_within(m, within) {
                cur.push(id as SubId);
                self.extend_chain(cum, within, m, cur, out);
                cur.pop();
            }
        }
    }

    /// Every ordered basis of `F_p^n`, as the images of `e_1..e_n`.
    pub fn general_linear_group(&self) -> GroupElements {
        let mut group = GroupElements {
            flat: Vec::new(),
            stride: self.n,
            order: 0,
        };
        let mut cur = Vec::with_capacity(self.n);
        self.extend_basis(1, &mut cur, &mut group);
        group
    }

    fn extend_basis(&self, span: u128, cur: &mut Vec<u8>, out: &mut GroupElements) {
        if cur.len() == self.n {
            out.flat.extend_from_slice(cur);
            out.order += 1;
            return;
        }
        for v in 1..self.size as u8 {
            if span >> v & 1 == 0 {
                cur.push(v);
                self.extend_basis(self.span_with(span, v), cur, out);
                cur.pop();
            }
        }
    }

    pub fn apply(&self, g: &[u8], v: u8) -> u8 {
        let mut acc = 0u8;
        for (i, &col) in g.iter().enumerate() {
            let d = self.digits[v as usize * self.n + i] as usize;
            if d != 0 {
                let term = self.smul[d * self.size + col as usize];
                acc = self.add[acc as usize * self.size + term as usize];
            }
        }
        acc
    }

    pub fn image(&self, g: &[u8], id: SubId) -> SubId {
        let mask = self.bases[id as usize]
            .iter()
            .fold(1u128, |m, &b| self.span_with(m, self.apply(g, b)));
        self.by_mask[&mask]
    }

    /// The matrix of `g` acting on column vectors.
    #[cfg(test)]
    pub fn matrix(&self, g: &[u8]) -> Vec<Row> {
        let cols: Vec<Row> = g.iter().map(|&c| self.vector(c)).collect();
        (0..self.n).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= q.pow(n - i) - 1;
            den *= q.pow(i + 1) - 1;
        }
        num / den
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for (p, n) in [(2, 4), (3, 3), (5, 2), (2, 0)] {
            let lat = Lattice::new(PrimeField::new(p).unwrap(), n);
            let expected: u64 = (0..=n as u32).map(|k| gaussian_binomial(n as u32, k, p as u64)).sum();
            assert_eq!(lat.count() as u64, expected, "p={p} n={n}");
            for id in 0..lat.count() as SubId {
                assert_eq!(lat.subspace(id).dim(), lat.dim(id));
                assert_eq!(lat.mask(id).count_ones() as u64, (p as u64).pow(lat.dim(id) as u32));
            }
        }
    }

    #[test]
    fn group_orders() {
        let order = |lat: &Lattice| lat.general_linear_group().order();
        assert_eq!(order(&Lattice::new(PrimeField::new(2).unwrap(), 2)), 6);
        assert_eq!(order(&Lattice::new(PrimeField::new(2).unwrap(), 3)), 168);
        assert_eq!(order(&Lattice::new(PrimeField::new(3).unwrap(), 2)), 48);
        assert_eq!(order(&Lattice::new(PrimeField::new(2).unwrap(), 0)), 1);
    }

    #[test]
    fn image_matches_matrix_action() {
        let f = PrimeField::new(3).unwrap();
        let lat = Lattice::new(f, 2);
        let group = lat.general_linear_group();
        for g in group.iter().take(10) {
            let m = lat.matrix(g);
            for id in 0..lat.count() as SubId {
                assert_eq!(lat.subspace(lat.image(g, id)), lat.subspace(id).transform(&m, f));
            }
        }
    }
}
