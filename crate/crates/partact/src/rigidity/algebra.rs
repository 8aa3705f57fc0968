//! The product of the spectral algebra B ≅ ⊕_n \overline{φ(u^n)} ⊗ H_n of
//! the first-column action of the free permutation group, and its
//! truncation B₀ ⊕ B₁.

use serde::Serialize;

use super::{fusion_projection, p_identity_projection, partition_expansion};
use crate::error::{Error, Result};
use crate::exactmath::{dot, solve_consistent, Matrix, Scalar, Vector};
use crate::functors::{FunctorSpec, Label, Model, SpanElement};
use crate::partitions::{CategorySpec, Partition};
use crate::tensorrep::tensor_vectors;

/// One term φ(P_n^{k,k})ι(ξ₁⊗ξ₂) ⊗ P_n^{k,k}(η₁⊗η₂) of a product.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralComponent {
    pub n: usize,
    pub functor_part: SpanElement,
    pub vector_part: Vector,
}

fn require_first_column(spec: &FunctorSpec) -> Result<()> {
    let ok = spec.category.name() == "NC"
        && matches!(&spec.model, Model::Projective { module, zero_through: false } if module.name() == "NC");
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} is not the first-column functor of NC",
            spec.describe()
        )))
    }
}

/// Decomposes (ξ̄₁⊗η₁)(ξ̄₂⊗η₂) over the components n = 0..2k of u^k ⊠ u^k.
pub fn spectral_product(
    spec: &FunctorSpec,
    k: usize,
    left: (&SpanElement, &[Scalar]),
    right: (&SpanElement, &[Scalar]),
) -> Result<Vec<SpectralComponent>> {
    require_first_column(spec)?;
    let product = spec.iota(left.0, right.0)?;
    let v = tensor_vectors(left.1, right.1);
    (0..=2 * k)
        .map(|n| {
            let p = fusion_projection(spec.n, k, n)?.operator;
            let terms = partition_expansion(&p, &CategorySpec::nc(), 2 * k, 2 * k, spec.n)?;
            Ok(SpectralComponent {
                n,
                functor_part: spec.phi_sum(&terms, 2 * k, &product)?,
                vector_part: p.mul_vec(&v),
            })
        })
        .collect()
}

/// Structure constants of B₀ ⊕ B₁ in the basis: the unit, then ξ̄_a ⊗ h_j
/// for a basis (ξ_a) of φ(P_|)K₁ and a basis (h_j) of H₁ = Ran P_|.
#[derive(Clone, Debug, Serialize)]
pub struct TruncatedAlgebra {
    #[serde(rename = "N")]
    pub size: u32,
    pub multiplicity: usize,
    pub dim: usize,
    /// structure[x][y] are the coordinates of e_x·e_y.
    pub structure: Vec<Vec<Vector>>,
}

impl TruncatedAlgebra {
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = vec![Scalar::zero(); self.dim];
        for (x, ax) in a.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
            for (y, by) in b.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                let c = ax * by;
                for (o, s) in out.iter_mut().zip(&self.structure[x][y]) {
                    if !s.is_zero() {
                        *o += &(&c * s);
                    }
                }
            }
        }
        out
    }

    fn unit_vector(&self, x: usize) -> Vector {
        let mut v = vec![Scalar::zero(); self.dim];
        v[x] = Scalar::one();
        v
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|x| (0..x).all(|y| self.structure[x][y] == self.structure[y][x]))
    }

    pub fn is_associative(&self) -> bool {
        (0..self.dim).all(|x| {
            (0..self.dim).all(|y| {
                (0..self.dim).all(|z| {
                    let l = self.product(&self.structure[x][y], &self.unit_vector(z));
                    let r = self.product(&self.unit_vector(x), &self.structure[y][z]);
                    l == r
                })
            })
        })
    }

    /// Whether the first basis vector is a two-sided unit.
    pub fn has_unit(&self) -> bool {
        let e = self.unit_vector(0);
        (0..self.dim).all(|x| {
            let v = self.unit_vector(x);
            self.product(&e, &v) == v && self.product(&v, &e) == v
        })
    }
}

/// Greedy choice of elements with linearly independent Gram rows.
fn independent(spec: &FunctorSpec, xs: Vec<SpanElement>) -> Result<Vec<SpanElement>> {
    let mut chosen: Vec<SpanElement> = Vec::new();
    for x in xs {
        let mut trial = chosen.clone();
        trial.push(x);
        let g = Matrix::from_fn(trial.len(), trial.len(), |i, j| {
            spec.inner(&trial[i], &trial[j]).unwrap_or_default()
        });
        if g.rank() == trial.len() {
            chosen = trial;
        }
    }
    Ok(chosen)
}

/// Solves G c = pairings for the coordinates c in a basis with Gram matrix G.
fn coordinates(basis_gram: &Matrix, pairings: Vector) -> Result<Vector> {
    solve_consistent(basis_gram, &pairings)
        .map(|(x, _)| x)
        .ok_or_else(|| Error::InconsistentSystem("element is outside the chosen span".into()))
}

/// B₀ ⊕ B₁ for the first-column action of the free permutation group at N.
/// Products of two B₁ elements are decomposed with P_n^{1,1}; the n = 2
/// component must vanish for the truncation to close.
pub fn first_column_algebra(size: u32) -> Result<TruncatedAlgebra> {
    let nc = CategorySpec::nc();
    let spec = FunctorSpec::projective(nc.clone(), size)?;
    let nn = size as usize;
    let p1 = p_identity_projection(&nc, 1, size)?;
    let p1_terms = partition_expansion(&p1, &nc, 1, 1, size)?;
    let images: Vec<SpanElement> = spec
        .basis(1)?
        .into_iter()
        .map(|l| spec.phi_sum(&p1_terms, 1, &SpanElement::basis(1, l)))
        .collect::<Result<_>>()?;
    let fs = independent(&spec, images)?;
    let gf = Matrix::from_fn(fs.len(), fs.len(), |i, j| {
        spec.inner(&fs[i], &fs[j]).unwrap_or_default()
    });
    let hs: Vec<Vector> = p1
        .column_basis()
        .into_iter()
        .map(|j| p1.column(j))
        .collect();
    let gh = Matrix::from_fn(hs.len(), hs.len(), |i, j| dot(&hs[i], &hs[j]));
    let m = fs.len();
    let dim = 1 + m * hs.len();

    // isometries up to scale from H_0 and H_1 into H_1 ⊗ H_1
    let fusion: Vec<Matrix> = (0..=2)
        .map(|n| fusion_projection(size, 1, n).map(|f| f.operator))
        .collect::<Result<_>>()?;
    let cup: Vector = (0..nn * nn)
        .map(|i| {
            if i / nn == i % nn {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
        .collect();
    let cup = Matrix::from_columns(&[cup], nn * nn);
    let w0 = fusion[0].mul(&cup);
    let fork = crate::tensorrep::t_p(&Partition::from_labels(1, 2, &[0, 0, 0]), nn)?.to_matrix();
    let w1 = fusion[1].mul(&fork).mul(&p1);
    let c0 = w0.transpose().mul(&w0).get(0, 0).clone();
    let c1m = w1.transpose().mul(&w1);
    let c1 = (0..nn)
        .find(|&i| !p1.get(i, i).is_zero())
        .map(|i| c1m.get(i, i) / p1.get(i, i))
        .ok_or_else(|| Error::NormalizationFailure("P_| is zero".into()))?;
    if c0.is_zero() || c1.is_zero() || c1m != p1.scale(&c1) {
        return Err(Error::NormalizationFailure(
            "intertwiners into H_1 ⊗ H_1 are not isometric up to scale".into(),
        ));
    }
    let w0t = partition_expansion(&w0.transpose(), &nc, 2, 0, size)?;
    let w1t = partition_expansion(&w1.transpose(), &nc, 2, 1, size)?;
    let empty = SpanElement::basis(0, Label::Part(Partition::empty()));

    let element = |x: usize| -> (usize, usize) { ((x - 1) / hs.len(), (x - 1) % hs.len()) };
    let mut structure = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
    for x in 0..dim {
        structure[0][x][x] = Scalar::one();
        structure[x][0][x] = Scalar::one();
    }
    for x in 1..dim {
        for y in 1..dim {
            let (a, i) = element(x);
            let (b, j) = element(y);
            let comps = spectral_product(&spec, 1, (&fs[a], &hs[i]), (&fs[b], &hs[j]))?;
            let top = &comps[2];
            if !spec.norm_sq(&top.functor_part)?.is_zero()
                && top.vector_part.iter().any(|s| !s.is_zero())
            {
                return Err(Error::Precondition(format!(
                    "B₁·B₁ has a component in B₂ for basis pair ({x}, {y})"
                )));
            }
            let out = &mut structure[x][y];
            // n = 0
            let k0 = spec.phi_sum(&w0t, 0, &comps[0].functor_part)?;
            let s0 = w0.transpose().mul_vec(&comps[0].vector_part)[0].clone();
            out[0] = &(&spec.inner(&k0, &empty)? * &s0) / &c0;
            // n = 1
            let k1 = spec.phi_sum(&w1t, 1, &comps[1].functor_part)?;
            let v1 = w1.transpose().mul_vec(&comps[1].vector_part);
            let beta = coordinates(
                &gf,
                fs.iter()
                    .map(|f| spec.inner(&k1, f))
                    .collect::<Result<_>>()?,
            )?;
            let gamma = coordinates(&gh, hs.iter().map(|h| dot(&v1, h)).collect())?;
            for (a2, ba) in beta.iter().enumerate() {
                for (j2, gj) in gamma.iter().enumerate() {
                    out[1 + a2 * hs.len() + j2] = &(ba * gj) / &c1;
                }
            }
        }
    }
    Ok(TruncatedAlgebra {
        size,
        multiplicity: m,
        dim,
        structure,
    })
}
