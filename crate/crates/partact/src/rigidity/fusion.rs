//! The projections P_n^{k,k} of H_k ⊗ H_k onto the copy of H_n.

use serde::Serialize;

use super::{
    dense_dim, minimal_projection, p_identity_projection, q_matrix, supremum_projection,
    tensor_square,
};
use crate::error::{Error, Result};
use crate::exactmath::{span_projection, Matrix, Scalar, Vector};
use crate::partitions::{named, CategorySpec, Partition};

#[derive(Clone, Debug, Serialize)]
pub struct FusionProjection {
    #[serde(rename = "N")]
    pub size: u32,
    pub k: usize,
    pub n: usize,
    pub category: String,
    /// h̃_▯^{k,l} for odd n, h̃_□^{k,l} for even n.
    pub core: Partition,
    pub operator: Matrix,
    pub trace: Scalar,
    /// c with X² = cX, where X = (P⊗P)P_core(P⊗P).
    pub normalization: Scalar,
}

fn core_partition(category: &CategorySpec, k: usize, n: usize) -> Result<(Partition, usize)> {
    if n > 2 * k {
        return Err(Error::OutOfRange(format!(
            "n = {n} is above 2k = {}",
            2 * k
        )));
    }
    if n % 2 == 0 {
        let l = (2 * k - n) / 2;
        Ok((named::h_box_tilde(k, l)?, l))
    } else {
        if category.name() == "NC2" {
            return Err(Error::OutOfRange(format!(
                "odd n = {n} does not occur for NC2"
            )));
        }
        let l = (2 * k + 1 - n) / 2;
        Ok((named::h_bar_tilde(k, l)?, l))
    }
}

/// P_n^{k,k} for the free permutation group (category NC).
pub fn fusion_projection(size: u32, k: usize, n: usize) -> Result<FusionProjection> {
    fusion_projection_in(&CategorySpec::nc(), size, k, n)
}

/// P_n^{k,k} = X/c with X = (P_{|⊙k}⊗P_{|⊙k}) P_core (P_{|⊙k}⊗P_{|⊙k}) and X² = cX.
pub fn fusion_projection_in(
    category: &CategorySpec,
    size: u32,
    k: usize,
    n: usize,
) -> Result<FusionProjection> {
    let (core, _) = core_partition(category, k, n)?;
    dense_dim(size, 2 * k)?;
    let pp = tensor_square(&p_identity_projection(category, k, size)?);
    let pc = minimal_projection(category, &core, size)?;
    let x = pp.mul(&pc).mul(&pp);
    let x2 = x.mul(&x);
    let c = proportionality(&x2, &x).ok_or_else(|| {
        Error::NormalizationFailure(format!(
            "X² is not a nonzero multiple of X for k = {k}, n = {n}, N = {size}"
        ))
    })?;
    let operator = x.scale(&c.inv());
    Ok(FusionProjection {
        size,
        k,
        n,
        category: category.name().to_string(),
        core,
        trace: operator.trace(),
        operator,
        normalization: c,
    })
}

/// The scalar c with a = c·b, if b ≠ 0 and one exists.
fn proportionality(a: &Matrix, b: &Matrix) -> Option<Scalar> {
    let (i, j) = (0..b.rows())
        .flat_map(|i| (0..b.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !b.get(i, j).is_zero())?;
    let c = a.get(i, j) / b.get(i, j);
    (c != Scalar::zero() && b.scale(&c) == *a).then_some(c)
}

/// Projection onto Ran((P⊗P)(Q_core − R̃)), where R̃ is the supremum of the
/// Q_q for the chain members below the core: h̃_□^{k,l} when the core is
/// h̃_▯^{k,l}, and h̃_▯^{k,l'}, h̃_□^{k,l'} for every l' > l.
/// For NC this comes out as Σ_{m ≤ n} P_m^{k,k} once n ≥ 2, so it only
/// agrees with P_n^{k,k} for n ≤ 1.
pub fn fusion_range_from_chain(
    category: &CategorySpec,
    size: u32,
    k: usize,
    n: usize,
) -> Result<Matrix> {
    let (core, l) = core_partition(category, k, n)?;
    let mut chain = Vec::new();
    if n % 2 == 1 {
        chain.push(named::h_box_tilde(k, l)?);
    }
    for l2 in l + 1..=k {
        if category.name() != "NC2" {
            chain.push(named::h_bar_tilde(k, l2)?);
        }
        chain.push(named::h_box_tilde(k, l2)?);
    }
    let dim = dense_dim(size, 2 * k)?;
    let pp = tensor_square(&p_identity_projection(category, k, size)?);
    let r = supremum_projection(&chain, size, 2 * k)?;
    let y = pp.mul(&q_matrix(&core, size)?.sub(&r));
    let cols: Vec<Vector> = (0..dim).map(|j| y.column(j)).collect();
    Ok(span_projection(&cols, dim))
}

/// P_n^{k,k} for every n that occurs in H_k ⊗ H_k.
pub fn fusion_decomposition(
    category: &CategorySpec,
    size: u32,
    k: usize,
) -> Result<Vec<FusionProjection>> {
    let step = if category.name() == "NC2" { 2 } else { 1 };
    (0..=2 * k)
        .step_by(step)
        .map(|n| fusion_projection_in(category, size, k, n))
        .collect()
}
