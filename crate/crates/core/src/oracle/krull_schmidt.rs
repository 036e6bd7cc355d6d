//! Decomposition of a flag configuration into indecomposable pieces.
//!
//! The configuration is a representation of a tree quiver with injective
//! arrows, so its endomorphisms are the maps `phi` of `V` with
//! `phi(S) <= S` for every chain subspace `S`. A piece is indecomposable
//! exactly when every endomorphism is nilpotent or invertible; otherwise
//! the Fitting decomposition of a bad endomorphism splits it.

use super::field::{transpose, PrimeField, Row, Subspace};
use super::FFFlagConfig;
use crate::error::{Error, Result};
use crate::lambda::DimVector;
use crate::orbits::DecompositionFamily;

/// Largest endomorphism algebra searched element by element.
const MAX_ALGEBRA_SIZE: u64 = 1 << 22;

/// Splits `config` and returns the dimension vectors of its pieces.
pub fn krull_schmidt_check(config: &FFFlagConfig) -> Result<DecompositionFamily> {
    let field = PrimeField::new(config.p)?;
    let lens = (config.a.len(), config.b.len(), config.c.len());
    let subs: Vec<Subspace> = config.a.iter().chain(&config.b).chain(&config.c).cloned().collect();
    let mut pieces = Vec::new();
    split(field, config.dim, subs, &mut pieces)?;
    let vectors = pieces
        .into_iter()
        .map(|(m, dims)| piece_vector(m, &dims, lens))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionFamily::from_pieces(vectors))
}

fn piece_vector(m: usize, dims: &[usize], (la, lb, lc): (usize, usize, usize)) -> Result<DimVector> {
    let increments = |chain: &[usize]| {
        let mut prev = 0;
        let mut out = Vec::with_capacity(chain.len() + 1);
        for &d in chain.iter().chain(std::iter::once(&m)) {
            out.push((d - prev) as u32);
            prev = d;
        }
        out
    };
    let a = increments(&dims[..la]);
    let b = increments(&dims[la..la + lb]);
    let c = increments(&dims[la + lb..la + lb + lc]);
    DimVector::from_parts(a, b, c).map_err(|e| Error::SplittingFailed(format!("piece is not a valid vector: {e}")))
}

fn split(field: PrimeField, m: usize, subs: Vec<Subspace>, out: &mut Vec<(usize, Vec<usize>)>) -> Result<()> {
    if m == 0 {
        return Ok(());
    }
    let basis = endomorphisms(field, m, &subs);
    let Some(phi) = find_splitting(field, m, &basis)? else {
        out.push((m, subs.iter().map(Subspace::dim).collect()));
        return Ok(());
    };
    let psi = field.mat_pow(&phi, m);
    let kernel = Subspace::span(field, m, field.nullspace(&psi, m));
    let image = Subspace::span(field, m, transpose(&psi, m));
    if kernel.dim() == 0 || image.dim() == 0 || kernel.dim() + image.dim() != m {
        return Err(Error::SplittingFailed("Fitting decomposition is degenerate".into()));
    }
    for part in [kernel, image] {
        let restricted: Vec<Subspace> = subs.iter().map(|s| restrict(field, s, &part)).collect();
        split(field, part.dim(), restricted, out)?;
    }
    Ok(())
}

/// `S cap W`, written in the coordinates of `W`'s echelon basis.
fn restrict(field: PrimeField, s: &Subspace, w: &Subspace) -> Subspace {
    let pivots = w.pivots();
    let meet = s.intersect(w, field);
    let rows = meet.rows().iter().map(|r| pivots.iter().map(|&c| r[c]).collect()).collect();
    Subspace::span(field, w.dim(), rows)
}

/// Basis of `{phi : phi(S) <= S for all S}` as `m x m` matrices.
fn endomorphisms(field: PrimeField, m: usize, subs: &[Subspace]) -> Vec<Vec<Row>> {
    let mut equations: Vec<Row> = Vec::new();
    for s in subs {
        let perp = s.perp(field);
        for w in perp.rows() {
            for v in s.rows() {
                let mut eq = vec![0; m * m];
                for i in 0..m {
                    for j in 0..m {
                        eq[i * m + j] = field.mul(w[i], v[j]);
                    }
                }
                equations.push(eq);
            }
        }
    }
    field
        .nullspace(&equations, m * m)
        .into_iter()
        .map(|flat| flat.chunks(m).map(<[u32]>::to_vec).collect())
        .collect()
}

/// An endomorphism that is neither nilpotent nor invertible, if any.
fn find_splitting(field: PrimeField, m: usize, basis: &[Vec<Row>]) -> Result<Option<Vec<Row>>> {
    let splits = |phi: &Vec<Row>| {
        field.rank(phi) < m && field.mat_pow(phi, m).iter().flatten().any(|&v| v != 0)
    };
    if let Some(phi) = basis.iter().find(|phi| splits(phi)) {
        return Ok(Some(phi.clone()));
    }
    let k = basis.len() as u32;
    let size = (field.p() as u64).checked_pow(k).unwrap_or(u64::MAX);
    if size > MAX_ALGEBRA_SIZE {
        return Err(Error::SplittingFailed(format!(
            "endomorphism algebra of dimension {k} is too large to search"
        )));
    }
    let mut coeffs = vec![0u32; basis.len()];
    loop {
        // odometer over all coefficient vectors
        let Some(pos) = coeffs.iter().position(|&c| c + 1 < field.p()) else {
            return Ok(None);
        };
        coeffs[pos] += 1;
        for c in &mut coeffs[..pos] {
            *c = 0;
        }
        let mut phi = vec![vec![0; m]; m];
        for (c, b) in coeffs.iter().zip(basis) {
            if *c == 0 {
                continue;
            }
            for i in 0..m {
                for j in 0..m {
                    phi[i][j] = field.add(phi[i][j], field.mul(*c, b[i][j]));
                }
            }
        }
        if splits(&phi) {
            return Ok(Some(phi));
        }
    }
}
