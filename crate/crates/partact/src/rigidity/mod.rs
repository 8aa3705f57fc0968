//! Projections onto irreducible components for the free permutation and free
//! orthogonal quantum groups, exact witnesses of non-symmetric vectors in
//! H_n ⊂ H_k ⊗ H_k, and the truncated spectral algebra of the first-column
//! action.
//!
//! Operators on (ℂ^N)^⊗k are dense exact matrices, so the tensor dimension is
//! capped by [`DENSE_BUDGET`].

mod algebra;
mod fusion;
#[cfg(test)]
mod tests;
mod witness;

pub use algebra::{first_column_algebra, spectral_product, SpectralComponent, TruncatedAlgebra};
pub use fusion::{
    fusion_decomposition, fusion_projection, fusion_projection_in, fusion_range_from_chain,
    FusionProjection,
};
pub use witness::{
    eigenspace_verdict, highest_weight_span_families, witness, witness_in, witness_indices,
    Verdict, Witness,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{solve_consistent, span_projection, Matrix, Scalar, Vector};
use crate::partitions::{enumerate, enumerate_projective, named, CategorySpec, Partition};
use crate::tensorrep::{t_p, TensorSpace};

/// Largest tensor dimension handled with dense matrices.
pub const DENSE_BUDGET: usize = 1024;

pub(crate) fn dense_dim(n: u32, k: usize) -> Result<usize> {
    let space = TensorSpace::with_budget(n as usize, k, DENSE_BUDGET)?;
    Ok(space.dim())
}

fn require_noncrossing(category: &CategorySpec, points: usize) -> Result<()> {
    if category.is_noncrossing_within(points.min(8)) {
        Ok(())
    } else {
        Err(Error::NotNonCrossing(category.name().to_string()))
    }
}

/// Q_p = N^{−β(p)/2} T_p as a dense matrix.
pub fn q_matrix(p: &Partition, n: u32) -> Result<Matrix> {
    if !p.is_projective() {
        return Err(Error::NotProjective(p.to_string()));
    }
    dense_dim(n, p.upper())?;
    let beta = p.block_stats().nonthrough as i32;
    Ok(t_p(p, n as usize)?
        .to_matrix()
        .scale(&Scalar::half_power(n, -beta)))
}

/// Q_p as a sparse operator.
pub fn q_p(p: &Partition, n: u32) -> Result<crate::tensorrep::SparseOperator> {
    let m = q_matrix(p, n)?;
    let space = TensorSpace::new(n as usize, p.upper())?;
    crate::tensorrep::SparseOperator::from_matrix(&m, space, space)
}

/// Vectors spanning Ran(T_p): the columns of T_{p_u*}, where p = p_u*∘p_u.
fn range_vectors(p: &Partition, n: u32) -> Result<Vec<Vector>> {
    let (down, _) = p.through_block_factorize()?;
    let t = t_p(&down, n as usize)?;
    let dim = t.codomain.dim();
    Ok((0..t.domain.dim())
        .map(|j| {
            let mut v = vec![Scalar::zero(); dim];
            for (i, x) in t.column(j) {
                v[*i] = x.clone();
            }
            v
        })
        .collect())
}

/// The elements of `below` not dominated by another element of `below`.
fn maximal(below: &[Partition]) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for q in below {
        let mut covered = false;
        for r in below {
            if r != q && r.dominates(q)? {
                covered = true;
                break;
            }
        }
        if !covered {
            out.push(q.clone());
        }
    }
    Ok(out)
}

/// Projection onto the supremum of the ranges of Q_q, q ∈ `family`.
pub fn supremum_projection(family: &[Partition], n: u32, k: usize) -> Result<Matrix> {
    let dim = dense_dim(n, k)?;
    let top = maximal(family)?;
    let vectors: Vec<Vector> = top
        .par_iter()
        .map(|q| range_vectors(q, n))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(span_projection(&vectors, dim))
}

/// The projective partitions of 𝒞(k,k) strictly dominated by p.
pub fn strictly_below(category: &CategorySpec, p: &Partition) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    for q in enumerate_projective(category, p.upper())? {
        if q != *p && p.dominates(&q)? {
            out.push(q);
        }
    }
    Ok(out)
}

/// P_p = Q_p − ⋁_{q ≺ p, q ≠ p} Q_q.
pub fn minimal_projection(category: &CategorySpec, p: &Partition, n: u32) -> Result<Matrix> {
    require_noncrossing(category, 2 * p.upper())?;
    if !category.contains(p) {
        return Err(Error::NotInCategory(p.to_string()));
    }
    let q = q_matrix(p, n)?;
    let below = strictly_below(category, p)?;
    Ok(q.sub(&supremum_projection(&below, n, p.upper())?))
}

/// P_{|⊙k} = id − R_{|⊙k}.
pub fn p_identity_projection(category: &CategorySpec, k: usize, n: u32) -> Result<Matrix> {
    minimal_projection(category, &named::identity(k), n)
}

/// R_{|⊙k}, the supremum of Q_q over projective q ≺ |⊙k, q ≠ |⊙k.
pub fn r_identity_projection(category: &CategorySpec, k: usize, n: u32) -> Result<Matrix> {
    let below = strictly_below(category, &named::identity(k))?;
    supremum_projection(&below, n, k)
}

pub fn is_projection(m: &Matrix) -> bool {
    m.is_symmetric() && m.mul(m) == *m
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionBundle {
    pub n: u32,
    pub k: usize,
    pub category: String,
    pub identity: Matrix,
    /// P_p for each projective p ∈ 𝒞(k,k).
    pub minimal: Vec<(Partition, Matrix)>,
    /// Q_p for each projective p ∈ 𝒞(k,k).
    pub normalized: Vec<(Partition, Matrix)>,
}

impl ProjectionBundle {
    pub fn get(&self, p: &Partition) -> Option<&Matrix> {
        self.minimal.iter().find(|(q, _)| q == p).map(|(_, m)| m)
    }

    /// Idempotency and symmetry; P_p P_q = 0 when p and q have different
    /// numbers of through-blocks (inequivalent in the non-crossing setting);
    /// the ranges together span the whole space and the traces add up to its
    /// dimension.
    pub fn audit(&self) -> std::result::Result<(), String> {
        for (p, m) in self.minimal.iter().chain(&self.normalized) {
            if !is_projection(m) {
                return Err(format!("operator for {p} is not an orthogonal projection"));
            }
        }
        for (i, (p, a)) in self.minimal.iter().enumerate() {
            for (q, b) in &self.minimal[i + 1..] {
                if p.block_stats().through != q.block_stats().through && !a.mul(b).is_zero() {
                    return Err(format!("P_{p} P_{q} ≠ 0"));
                }
            }
        }
        let dim = self.identity.rows();
        let columns: Vec<Vector> = self
            .minimal
            .iter()
            .flat_map(|(_, m)| m.column_basis().into_iter().map(|j| m.column(j)))
            .collect();
        if span_projection(&columns, dim) != Matrix::identity(dim) {
            return Err("the ranges of the minimal projections do not span the space".into());
        }
        let traces = self
            .minimal
            .iter()
            .fold(Scalar::zero(), |acc, (_, m)| &acc + &m.trace());
        if traces != Scalar::int(dim as i64) {
            return Err(format!("the traces add up to {traces}, not {dim}"));
        }
        Ok(())
    }
}

pub fn minimal_projections(category: &CategorySpec, k: usize, n: u32) -> Result<ProjectionBundle> {
    require_noncrossing(category, 2 * k)?;
    dense_dim(n, k)?;
    let ps = enumerate_projective(category, k)?;
    let minimal: Vec<(Partition, Matrix)> = ps
        .par_iter()
        .map(|p| Ok((p.clone(), minimal_projection(category, p, n)?)))
        .collect::<Result<_>>()?;
    let normalized: Vec<(Partition, Matrix)> = ps
        .par_iter()
        .map(|p| Ok((p.clone(), q_matrix(p, n)?)))
        .collect::<Result<_>>()?;
    let identity = minimal
        .iter()
        .find(|(p, _)| *p == named::identity(k))
        .map(|(_, m)| m.clone())
        .expect("the identity partition is projective");
    Ok(ProjectionBundle {
        n,
        k,
        category: category.name().to_string(),
        identity,
        minimal,
        normalized,
    })
}

/// Coefficients c_r with op = Σ c_r T_r over r ∈ 𝒞(k,l), or
/// InconsistentSystem when op is not in their span.
pub fn partition_expansion(
    op: &Matrix,
    category: &CategorySpec,
    k: usize,
    l: usize,
    n: u32,
) -> Result<Vec<(Partition, Scalar)>> {
    let rows = dense_dim(n, k + l)?;
    let rs = enumerate(category, k, l)?;
    let cols: Vec<Vector> = rs
        .par_iter()
        .map(|r| Ok(t_p(r, n as usize)?.to_matrix()))
        .map(|m: Result<Matrix>| m.map(|m| flatten(&m)))
        .collect::<Result<_>>()?;
    let a = Matrix::from_columns(&cols, rows);
    let (x, _) = solve_consistent(&a, &flatten(op)).ok_or_else(|| {
        Error::InconsistentSystem("operator is not a combination of partition maps".into())
    })?;
    Ok(rs
        .into_iter()
        .zip(x)
        .filter(|(_, c)| !c.is_zero())
        .collect())
}

fn flatten(m: &Matrix) -> Vector {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

pub fn tensor_square(m: &Matrix) -> Matrix {
    m.kron(m)
}
