//! Explicit vectors of H_n ⊂ H_k ⊗ H_k that are neither symmetric nor
//! antisymmetric under the flip σ_k.

use serde::Serialize;

use super::{dense_dim, fusion_projection_in, p_identity_projection, tensor_square};
use crate::error::{Error, Result};
use crate::exactmath::{dot, Scalar, Vector};
use crate::partitions::CategorySpec;
use crate::tensorrep::{
    basis_vector, flip_sigma, multi_index, tensor_vectors, vector_a, vector_xi_tilde, Parity,
    TensorSpace,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Symmetric,
    Antisymmetric,
    Neither,
}

/// Symmetric if σ_k v = v for every v, Antisymmetric if σ_k v = −v for
/// every v, Neither otherwise.
pub fn eigenspace_verdict(vectors: &[Vector], n: u32, k: usize) -> Result<Verdict> {
    let dim = TensorSpace::new(n as usize, 2 * k)?.dim();
    if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} in a space of dimension {dim}",
            v.len()
        )));
    }
    let sigma = flip_sigma(n as usize, k)?;
    let mut sym = true;
    let mut anti = true;
    for v in vectors {
        let s = sigma.apply(v)?;
        sym &= s == *v;
        anti &= s.iter().zip(v).all(|(a, b)| *a == -b);
    }
    Ok(match (sym, anti) {
        (true, _) => Verdict::Symmetric,
        (false, true) => Verdict::Antisymmetric,
        _ => Verdict::Neither,
    })
}

/// 𝐢 = (1,2,1,2,…) and 𝐢′ = (i_k, …, i_{k−l+1}, 3, ĩ_{k−l−1}, 3, ĩ_{k−l−3}, …),
/// with ĩ swapping 1 and 2.
pub fn witness_indices(k: usize, l: usize) -> (Vec<usize>, Vec<usize>) {
    let i: Vec<usize> = (0..k).map(|t| 1 + t % 2).collect();
    let mut ip: Vec<usize> = i[k - l..].iter().rev().copied().collect();
    let mut back = k - l;
    while ip.len() < k {
        ip.push(3);
        if ip.len() < k {
            back -= 2;
            ip.push(3 - i[back]);
        }
    }
    (i, ip)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    #[serde(rename = "N")]
    pub size: u32,
    pub k: usize,
    pub n: usize,
    pub category: String,
    pub parity: Parity,
    pub indices: (Vec<usize>, Vec<usize>),
    #[serde(serialize_with = "sparse")]
    pub xi: Vector,
    #[serde(serialize_with = "sparse")]
    pub eta: Vector,
    /// ⟨ξ, A_𝐢⊗A_𝐢′⟩ and ⟨ξ, A_𝐢′⊗A_𝐢⟩.
    pub c1: Scalar,
    pub c2: Scalar,
    /// ⟨η, A_𝐢⊗A_𝐢′⟩ and ⟨σ_k η, A_𝐢⊗A_𝐢′⟩.
    pub eta_pairings: (Scalar, Scalar),
    /// P_n^{k,k} η = η.
    pub member: bool,
    pub verdict: Verdict,
    /// P_n^{k,k} η, which lies in H_n whether or not η does.
    #[serde(serialize_with = "sparse")]
    pub projected: Vector,
    pub projected_verdict: Verdict,
}

fn sparse<S: serde::Serializer>(v: &Vector, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(None)?;
    for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        seq.serialize_element(&(i, x))?;
    }
    seq.end()
}

impl Witness {
    /// Neither symmetric nor antisymmetric, checked on η directly, with η in
    /// the range of P_n^{k,k}.
    pub fn is_sound(&self) -> bool {
        let Ok(sigma) = flip_sigma(self.size as usize, self.k) else {
            return false;
        };
        let Ok(s) = sigma.apply(&self.eta) else {
            return false;
        };
        let plus = s.iter().zip(&self.eta).any(|(a, b)| !(a + b).is_zero());
        let minus = s.iter().zip(&self.eta).any(|(a, b)| !(a - b).is_zero());
        self.member && plus && minus && self.verdict == Verdict::Neither
    }

    /// Whether P_n^{k,k} η is a nonzero vector of H_n outside both eigenspaces.
    pub fn projected_is_witness(&self) -> bool {
        self.projected.iter().any(|s| !s.is_zero()) && self.projected_verdict == Verdict::Neither
    }
}

pub fn witness(size: u32, k: usize, n: usize) -> Result<Witness> {
    witness_in(&CategorySpec::nc(), size, k, n)
}

pub fn witness_in(category: &CategorySpec, size: u32, k: usize, n: usize) -> Result<Witness> {
    if size < 4 {
        return Err(Error::Precondition(format!("N = {size} is below 4")));
    }
    if n < 2 || n > 2 * k {
        return Err(Error::Precondition(format!(
            "need 2 ≤ n ≤ 2k, got n = {n}, k = {k}"
        )));
    }
    dense_dim(size, 2 * k)?;
    let nn = size as usize;
    let parity = if n % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    };
    let (xi, i, ip) = if n == 2 * k {
        let j: Vec<usize> = (0..k).map(|t| 1 + t % 2).collect();
        let jp: Vec<usize> = (0..k).map(|t| if t % 2 == 0 { 3 } else { 1 }).collect();
        (
            tensor_vectors(&vector_a(&j, nn)?, &vector_a(&jp, nn)?),
            j,
            jp,
        )
    } else {
        let l = match parity {
            Parity::Even => (2 * k - n) / 2,
            Parity::Odd => (2 * k + 1 - n) / 2,
        };
        let (i, ip) = witness_indices(k, l);
        let middle = vector_xi_tilde(l, parity, nn, i[k - l])?;
        let left = basis_vector(&i[..k - l], nn)?;
        let right = basis_vector(&ip[l..], nn)?;
        (
            tensor_vectors(&tensor_vectors(&left, &middle), &right),
            i,
            ip,
        )
    };
    let pp = tensor_square(&p_identity_projection(category, k, size)?);
    let eta = pp.mul_vec(&xi);
    let fusion = fusion_projection_in(category, size, k, n)?;
    let projected = fusion.operator.mul_vec(&eta);
    let member = projected == eta;
    let projected_verdict = eigenspace_verdict(std::slice::from_ref(&projected), size, k)?;
    let ai = vector_a(&i, nn)?;
    let aip = vector_a(&ip, nn)?;
    let forward = tensor_vectors(&ai, &aip);
    let backward = tensor_vectors(&aip, &ai);
    let flipped = flip_sigma(nn, k)?.apply(&eta)?;
    let verdict = eigenspace_verdict(std::slice::from_ref(&eta), size, k)?;
    Ok(Witness {
        size,
        k,
        n,
        category: category.name().to_string(),
        parity,
        indices: (i, ip),
        c1: dot(&xi, &forward),
        c2: dot(&xi, &backward),
        eta_pairings: (dot(&eta, &forward), dot(&flipped, &forward)),
        xi,
        eta,
        member,
        verdict,
        projected,
        projected_verdict,
    })
}

/// The two vector families spanning Ran(R_{|⊙k}) for the free permutation
/// group: basis vectors with two equal adjacent indices, and elementary
/// tensors with Σ_i e_i in some slot.
pub fn highest_weight_span_families(k: usize, size: u32) -> Result<Vec<Vector>> {
    let nn = size as usize;
    let dim = dense_dim(size, k)?;
    let mut out = Vec::new();
    for pos in 0..dim {
        let idx = multi_index(pos, nn, k);
        if idx.windows(2).any(|w| w[0] == w[1]) {
            out.push(basis_vector(&idx, nn)?);
        }
    }
    let ones = vec![Scalar::one(); nn];
    for slot in 0..k {
        let rest = TensorSpace::new(nn, k - 1)?.dim();
        for pos in 0..rest {
            let idx = multi_index(pos, nn, k - 1);
            let left = basis_vector(&idx[..slot], nn)?;
            let right = basis_vector(&idx[slot..], nn)?;
            out.push(tensor_vectors(&tensor_vectors(&left, &ones), &right));
        }
    }
    Ok(out)
}
