use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{r_n, FunctorSpec, Label, SpanElement};
use crate::error::{Error, Result};
use crate::exactmath::{dot, solve_consistent_many, Matrix, Scalar, Vector};

/// The Gram matrix of K_n over its spanning labels.
#[derive(Clone, Debug, Serialize)]
pub struct GramForm {
    pub degree: usize,
    pub labels: Vec<Label>,
    pub matrix: Matrix,
    #[serde(skip)]
    position: HashMap<Label, usize>,
}

impl GramForm {
    pub fn new(spec: &FunctorSpec, degree: usize, labels: Vec<Label>) -> Result<GramForm> {
        let rows: Vec<Vec<Scalar>> = labels
            .par_iter()
            .map(|a| {
                labels
                    .iter()
                    .map(|b| spec.label_inner(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let position = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(GramForm {
            degree,
            labels,
            matrix: Matrix::from_rows(rows),
            position,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_psd(&self) -> bool {
        self.matrix.is_psd()
    }

    pub fn position(&self, label: &Label) -> Option<usize> {
        self.position.get(label).copied()
    }

    /// Coordinates of x over the labels; fails on a label outside the basis.
    pub fn coords(&self, x: &SpanElement) -> Result<Vector> {
        if x.degree != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} vs {}",
                x.degree, self.degree
            )));
        }
        let mut v = vec![Scalar::zero(); self.len()];
        for (l, c) in x.terms() {
            let i = self.position(l).ok_or_else(|| {
                Error::NotInCategory(format!("{l} is not a label of degree {}", self.degree))
            })?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn element(&self, coords: &[Scalar]) -> SpanElement {
        let mut s = SpanElement::zero(self.degree);
        for (l, c) in self.labels.iter().zip(coords) {
            s.add_term(l.clone(), c);
        }
        s
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        dot(x, &self.matrix.mul_vec(y))
    }

    /// x = y in K_n, i.e. G(x − y) = 0.
    pub fn equal(&self, x: &[Scalar], y: &[Scalar]) -> bool {
        let d: Vector = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.matrix.mul_vec(&d).iter().all(Scalar::is_zero)
    }

    /// The sub-form on a subset of labels.
    pub fn restricted(&self, labels: &[Label]) -> Result<GramForm> {
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| {
                self.position(l)
                    .ok_or_else(|| Error::NotInCategory(format!("{l} is not a label")))
            })
            .collect::<Result<_>>()?;
        let position = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(GramForm {
            degree: self.degree,
            labels: labels.to_vec(),
            matrix: self.matrix.submatrix(&idx, &idx),
            position,
        })
    }
}

pub fn gram(spec: &FunctorSpec, n: usize) -> Result<GramForm> {
    GramForm::new(spec, n, spec.basis(n)?)
}

/// dim K_n.
pub fn k_dim(spec: &FunctorSpec, n: usize) -> Result<usize> {
    Ok(gram(spec, n)?.rank())
}

/// J_n in coordinates: J(label_p) = Σ_r coeffs[r][p] label_r.
#[derive(Clone, Debug, Serialize)]
pub struct JMap {
    pub form: GramForm,
    pub coeffs: Matrix,
}

impl JMap {
    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.coeffs.mul_vec(x)
    }

    pub fn apply_span(&self, x: &SpanElement) -> Result<SpanElement> {
        Ok(self.form.element(&self.apply(&self.form.coords(x)?)))
    }

    /// J² = id modulo the Gram kernel.
    pub fn is_involutive(&self) -> bool {
        let sq = self.coeffs.mul(&self.coeffs);
        let d = sq.sub(&Matrix::identity(self.form.len()));
        self.form.matrix.mul(&d).is_zero()
    }
}

/// Solves G·C = M where M[q][p] = ⟨φ(R_n)(1), ι(label_p ⊗ label_q)⟩.
pub fn j_map(spec: &FunctorSpec, n: usize) -> Result<JMap> {
    let form = gram(spec, n)?;
    let rvec = spec.phi_unchecked(&r_n(n), &spec.unit())?;
    let basis: Vec<SpanElement> = form
        .labels
        .iter()
        .map(|l| SpanElement::basis(n, l.clone()))
        .collect();
    let rows: Vec<Vec<Scalar>> = basis
        .par_iter()
        .map(|q| {
            basis
                .iter()
                .map(|p| spec.inner(&rvec, &spec.iota(p, q)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(rows);
    let coeffs = solve_consistent_many(&form.matrix, &m)
        .ok_or_else(|| Error::InconsistentSystem(format!("J_{n} has no solution")))?;
    Ok(JMap { coeffs, form })
}
