//! Partitions as exact linear maps between tensor powers of ℂ^N.
//!
//! Basis vectors of (ℂ^N)^⊗k are ordered row-major with the leftmost slot
//! most significant. Multi-indices are 1-based, as in e₁ … e_N.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar, Vector};
use crate::partitions::Partition;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorSpace {
    pub n: usize,
    pub k: usize,
}

impl TensorSpace {
    pub fn new(n: usize, k: usize) -> Result<TensorSpace> {
        TensorSpace::with_budget(n, k, DEFAULT_BUDGET)
    }

    pub fn with_budget(n: usize, k: usize, budget: usize) -> Result<TensorSpace> {
        if n == 0 {
            return Err(Error::Precondition("N must be at least 1".into()));
        }
        let s = TensorSpace { n, k };
        match checked_pow(n, k) {
            Some(d) if d <= budget => Ok(s),
            _ => Err(Error::BoundExceeded(format!(
                "dimension {n}^{k} exceeds budget {budget}"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.k as u32)
    }
}

fn checked_pow(n: usize, k: usize) -> Option<usize> {
    (0..k).try_fold(1usize, |acc, _| acc.checked_mul(n))
}

/// Position of the basis vector e_{i₁} ⊗ … ⊗ e_{i_k}; indices are 1-based.
pub fn index_of(idx: &[usize], n: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + (i - 1))
}

/// Inverse of [`index_of`].
pub fn multi_index(mut pos: usize, n: usize, k: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in (0..k).rev() {
        out[slot] = pos % n + 1;
        pos /= n;
    }
    out
}

/// Exact operator stored by columns; each column is sorted by row with no
/// stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseOperator {
    pub domain: TensorSpace,
    pub codomain: TensorSpace,
    cols: Vec<Vec<(usize, Scalar)>>,
}

fn collect_column(acc: BTreeMap<usize, Scalar>) -> Vec<(usize, Scalar)> {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl SparseOperator {
    pub fn zero(domain: TensorSpace, codomain: TensorSpace) -> SparseOperator {
        SparseOperator {
            domain,
            codomain,
            cols: vec![Vec::new(); domain.dim()],
        }
    }

    pub fn identity(space: TensorSpace) -> SparseOperator {
        let cols = (0..space.dim()).map(|i| vec![(i, Scalar::one())]).collect();
        SparseOperator {
            domain: space,
            codomain: space,
            cols,
        }
    }

    pub fn from_matrix(
        m: &Matrix,
        domain: TensorSpace,
        codomain: TensorSpace,
    ) -> Result<SparseOperator> {
        if m.rows() != codomain.dim() || m.cols() != domain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for a map of dimension {} -> {}",
                m.rows(),
                m.cols(),
                domain.dim(),
                codomain.dim()
            )));
        }
        let cols = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m.get(i, j).is_zero())
                    .map(|i| (i, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        Ok(SparseOperator {
            domain,
            codomain,
            cols,
        })
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.codomain.dim(), self.domain.dim());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> &[(usize, Scalar)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.cols[j].binary_search_by_key(&i, |(r, _)| *r) {
            Ok(p) => self.cols[j][p].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// self ∘ other.
    pub fn compose(&self, other: &SparseOperator) -> Result<SparseOperator> {
        if other.codomain != self.domain {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {:?} after {:?}",
                self.domain, other.codomain
            )));
        }
        let cols = other
            .cols
            .par_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (m, v) in col {
                    for (r, w) in &self.cols[*m] {
                        *acc.entry(*r).or_insert_with(Scalar::zero) += &(v * w);
                    }
                }
                collect_column(acc)
            })
            .collect();
        Ok(SparseOperator {
            domain: other.domain,
            codomain: self.codomain,
            cols,
        })
    }

    /// Kronecker product self ⊗ other.
    pub fn tensor(&self, other: &SparseOperator) -> Result<SparseOperator> {
        if self.domain.n != other.domain.n {
            return Err(Error::DimensionMismatch(
                "tensor factors over different N".into(),
            ));
        }
        let n = self.domain.n;
        let domain = TensorSpace::new(n, self.domain.k + other.domain.k)?;
        let codomain = TensorSpace::new(n, self.codomain.k + other.codomain.k)?;
        let rb = other.codomain.dim();
        let mut cols = Vec::with_capacity(domain.dim());
        for ca in &self.cols {
            for cb in &other.cols {
                let mut col = Vec::with_capacity(ca.len() * cb.len());
                for (ra, va) in ca {
                    for (r2, vb) in cb {
                        col.push((ra * rb + r2, va * vb));
                    }
                }
                cols.push(col);
            }
        }
        Ok(SparseOperator {
            domain,
            codomain,
            cols,
        })
    }

    /// Transpose; all entries are real so this is the adjoint.
    pub fn adjoint(&self) -> SparseOperator {
        let mut cols = vec![Vec::new(); self.codomain.dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseOperator {
            domain: self.codomain,
            codomain: self.domain,
            cols,
        }
    }

    fn combine(&self, other: &SparseOperator, f: &Scalar) -> Result<SparseOperator> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::DimensionMismatch(
                "operands of a sum differ in shape".into(),
            ));
        }
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, Scalar> = a.iter().cloned().collect();
                for (r, v) in b {
                    *acc.entry(*r).or_insert_with(Scalar::zero) += &(v * f);
                }
                collect_column(acc)
            })
            .collect();
        Ok(SparseOperator {
            domain: self.domain,
            codomain: self.codomain,
            cols,
        })
    }

    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.combine(other, &Scalar::one())
    }

    pub fn sub(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.combine(other, &Scalar::int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> SparseOperator {
        if s.is_zero() {
            return SparseOperator::zero(self.domain, self.codomain);
        }
        let cols = self
            .cols
            .iter()
            .map(|c| c.iter().map(|(r, v)| (*r, v * s)).collect())
            .collect();
        SparseOperator {
            domain: self.domain,
            codomain: self.codomain,
            cols,
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vector> {
        if v.len() != self.domain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for domain of dimension {}",
                v.len(),
                self.domain.dim()
            )));
        }
        let mut out = vec![Scalar::zero(); self.codomain.dim()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i] += &(a * x);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for j in 0..self.cols.len().min(self.codomain.dim()) {
            t += &self.get(j, j);
        }
        t
    }
}

/// δ_p(i, j) as an operator: entry (j, i) is 1 exactly when points in a
/// common block of p carry equal indices.
pub fn t_p(p: &Partition, n: usize) -> Result<SparseOperator> {
    t_p_with_budget(p, n, DEFAULT_BUDGET)
}

pub fn t_p_with_budget(p: &Partition, n: usize, budget: usize) -> Result<SparseOperator> {
    let domain = TensorSpace::with_budget(n, p.upper(), budget)?;
    let codomain = TensorSpace::with_budget(n, p.lower(), budget)?;
    let cols = (0..domain.dim())
        .into_par_iter()
        .map(|c| {
            let idx = multi_index(c, n, p.upper());
            partition_column(p, n, &idx)
                .into_iter()
                .map(|r| (r, Scalar::one()))
                .collect()
        })
        .collect();
    Ok(SparseOperator {
        domain,
        codomain,
        cols,
    })
}

/// Row positions of the nonzero entries of T_p e_idx, sorted. Costs only the
/// size of the output, so it is usable where T_p itself is too large.
pub fn partition_column(p: &Partition, n: usize, idx: &[usize]) -> Vec<usize> {
    let up = p.upper_labels();
    let lo = p.lower_labels();
    let mut val = vec![0usize; p.num_blocks()];
    for (&b, &v) in up.iter().zip(idx) {
        if val[b as usize] == 0 {
            val[b as usize] = v;
        } else if val[b as usize] != v {
            return Vec::new();
        }
    }
    // lower-row-only blocks, in order of appearance
    let mut free: Vec<u16> = Vec::new();
    for &b in lo {
        if val[b as usize] == 0 && !free.contains(&b) {
            free.push(b);
        }
    }
    let combos = n.pow(free.len() as u32);
    let mut rows = Vec::with_capacity(combos);
    for f in 0..combos {
        let fv = multi_index(f, n, free.len());
        for (slot, &b) in free.iter().enumerate() {
            val[b as usize] = fv[slot];
        }
        rows.push(lo.iter().fold(0, |acc, &b| acc * n + (val[b as usize] - 1)));
    }
    rows.sort_unstable();
    rows
}

/// The flip x ⊗ y ↦ y ⊗ x on (ℂ^N)^⊗k ⊗ (ℂ^N)^⊗k.
pub fn flip_sigma(n: usize, k: usize) -> Result<SparseOperator> {
    let half = TensorSpace::new(n, k)?;
    let space = TensorSpace::new(n, 2 * k)?;
    let d = half.dim();
    let cols = (0..space.dim())
        .map(|c| vec![((c % d) * d + c / d, Scalar::one())])
        .collect();
    Ok(SparseOperator {
        domain: space,
        codomain: space,
        cols,
    })
}

pub fn basis_vector(idx: &[usize], n: usize) -> Result<Vector> {
    check_indices(idx, n)?;
    let mut v = vec![Scalar::zero(); TensorSpace::new(n, idx.len())?.dim()];
    v[index_of(idx, n)] = Scalar::one();
    Ok(v)
}

fn check_indices(idx: &[usize], n: usize) -> Result<()> {
    match idx.iter().find(|&&i| i == 0 || i > n) {
        Some(i) => Err(Error::OutOfRange(format!("index {i} not in 1..={n}"))),
        None => Ok(()),
    }
}

/// ẽ_𝐢: the sum over slots of e_𝐢 with that slot replaced by e_N.
pub fn e_tilde(idx: &[usize], n: usize) -> Result<Vector> {
    check_indices(idx, n)?;
    let mut v = vec![Scalar::zero(); TensorSpace::new(n, idx.len())?.dim()];
    for r in 0..idx.len() {
        let mut j = idx.to_vec();
        j[r] = n;
        v[index_of(&j, n)] += &Scalar::one();
    }
    Ok(v)
}

/// A_𝐢 = e_𝐢 − ẽ_𝐢.
pub fn vector_a(idx: &[usize], n: usize) -> Result<Vector> {
    let e = basis_vector(idx, n)?;
    let t = e_tilde(idx, n)?;
    Ok(e.iter().zip(&t).map(|(a, b)| a - b).collect())
}

pub fn tensor_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Σ_𝐫 e_𝐫 ⊗ e_{𝐫⁻¹} over 𝐫 ∈ {1..N}^m, where 𝐫⁻¹ is 𝐫 reversed.
pub fn mirrored_sum(m: usize, n: usize) -> Result<Vector> {
    let half = TensorSpace::new(n, m)?;
    let mut v = vec![Scalar::zero(); TensorSpace::new(n, 2 * m)?.dim()];
    for pos in 0..half.dim() {
        let mut r = multi_index(pos, n, m);
        let rev: Vec<usize> = r.iter().rev().copied().collect();
        r.extend(rev);
        v[index_of(&r, n)] = Scalar::one();
    }
    Ok(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

/// The middle vector of the witness construction on (ℂ^N)^⊗2l. In the odd
/// case it is e_a ⊗ (Σ e_𝐫⊗e_{𝐫⁻¹}) ⊗ e_a − (1/N) Σ e_{𝐫'}⊗e_{𝐫'⁻¹} with
/// 𝐫 of length l−1 and 𝐫' of length l; in the even case Σ e_𝐫⊗e_{𝐫⁻¹} with 𝐫
/// of length l.
pub fn vector_xi_tilde(l: usize, parity: Parity, n: usize, anchor: usize) -> Result<Vector> {
    match parity {
        Parity::Even => mirrored_sum(l, n),
        Parity::Odd => {
            if l == 0 {
                return Err(Error::OutOfRange("odd case needs l ≥ 1".into()));
            }
            let ea = basis_vector(&[anchor], n)?;
            let inner = mirrored_sum(l - 1, n)?;
            let left = tensor_vectors(&tensor_vectors(&ea, &inner), &ea);
            let sub = mirrored_sum(l, n)?;
            let f = Scalar::frac(1, n as i64);
            Ok(left.iter().zip(&sub).map(|(a, b)| a - &(b * &f)).collect())
        }
    }
}
