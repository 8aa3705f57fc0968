//! Exhaustive checks of the weak tensor functor identities on enumerated
//! morphisms and basis labels.

use rayon::prelude::*;
use serde::Serialize;

use super::{FunctorSpec, SpanElement};
use crate::error::Result;
use crate::exactmath::Scalar;
use crate::partitions::{enumerate_bounded, named, vertical_concat, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub identity: String,
    pub parameters: String,
    pub instances: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub functor: String,
    pub size_bound: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failed(&self, identity: &str) -> bool {
        self.failures().any(|c| c.identity == identity)
    }
}

/// Runs `f` on every item in parallel and keeps the first failure in item
/// order, so reports are reproducible.
fn run<T: Sync>(
    identity: &str,
    parameters: String,
    items: &[T],
    per_item: usize,
    f: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> Result<AxiomCheck> {
    let results: Vec<Option<String>> = items.par_iter().map(&f).collect::<Result<_>>()?;
    let counterexample = results.into_iter().flatten().next();
    Ok(AxiomCheck {
        identity: identity.to_string(),
        parameters,
        instances: items.len() * per_item,
        status: if counterexample.is_none() {
            "pass"
        } else {
            "fail"
        }
        .to_string(),
        counterexample,
    })
}

/// Verifies, for all morphisms with rows of at most `size_bound` points and
/// all basis labels: φ(id) = id, the adjoint relation, the composition rule
/// φ(r)φ(s) = N^{rl(r,s)}φ(rs), naturality of ι, associativity and unit of ι,
/// and that ι is isometric.
pub fn verify_functor_axioms(spec: &FunctorSpec, size_bound: usize) -> Result<AxiomReport> {
    let b = size_bound;
    let bases: Vec<Vec<SpanElement>> = (0..=b)
        .map(|n| {
            Ok(spec
                .basis(n)?
                .into_iter()
                .map(|l| SpanElement::basis(n, l))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mors: Vec<Vec<Vec<Partition>>> = (0..=b)
        .map(|k| {
            (0..=b)
                .map(|l| enumerate_bounded(&spec.category, k, l, spec.bound))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let nn = spec.n;
    let mut checks = Vec::new();

    for n in 0..=b {
        let id = named::identity(n);
        checks.push(run("phi(id) = id", format!("n={n}"), &bases[n], 1, |x| {
            let y = spec.phi_unchecked(&id, x)?;
            Ok((!spec.equal(&y, x)?).then(|| format!("φ(|^{n})({x}) = {y}")))
        })?);
    }

    for k in 0..=b {
        for l in 0..=b {
            let per = bases[k].len() * bases[l].len();
            checks.push(run("adjoint", format!("k={k}, l={l}"), &mors[k][l], per, |r| {
                let rs = r.involution();
                let images: Vec<SpanElement> =
                    bases[l].iter().map(|y| spec.phi_unchecked(&rs, y)).collect::<Result<_>>()?;
                for x in &bases[k] {
                    let rx = spec.phi_unchecked(r, x)?;
                    for (y, rsy) in bases[l].iter().zip(&images) {
                        let lhs = spec.inner(&rx, y)?;
                        let rhs = spec.inner(x, rsy)?;
                        if lhs != rhs {
                            return Ok(Some(format!(
                                "r = {r}, x = {x}, y = {y}: ⟨φ(r)x, y⟩ = {lhs} but ⟨x, φ(r*)y⟩ = {rhs}"
                            )));
                        }
                    }
                }
                Ok(None)
            })?);
        }
    }

    for m in 0..=b {
        for k in 0..=b {
            for l in 0..=b {
                let pairs: Vec<(&Partition, &Partition)> = mors[m][k]
                    .iter()
                    .flat_map(|s| mors[k][l].iter().map(move |r| (r, s)))
                    .collect();
                checks.push(run(
                    "composition",
                    format!("m={m}, k={k}, l={l}"),
                    &pairs,
                    bases[m].len(),
                    |&(r, s)| {
                        let (rs, loops) = vertical_concat(r, s)?;
                        let c = Scalar::power(nn, loops as i32);
                        for x in &bases[m] {
                            let lhs = spec.phi_unchecked(r, &spec.phi_unchecked(s, x)?)?;
                            let rhs = spec.phi_unchecked(&rs, x)?.scale(&c);
                            if !spec.equal(&lhs, &rhs)? {
                                return Ok(Some(format!(
                                    "r = {r}, s = {s}, x = {x}: {lhs} ≠ {rhs}"
                                )));
                            }
                        }
                        Ok(None)
                    },
                )?);
            }
        }
    }

    for k in 0..=b {
        for k2 in 0..=b - k {
            for l in 0..=b {
                for l2 in 0..=b - l {
                    let pairs: Vec<(&Partition, &Partition)> = mors[k][l]
                        .iter()
                        .flat_map(|r| mors[k2][l2].iter().map(move |s| (r, s)))
                        .collect();
                    let per = bases[k].len() * bases[k2].len();
                    let params = format!("r: {k}→{l}, s: {k2}→{l2}");
                    checks.push(run("tensor naturality", params, &pairs, per, |&(r, s)| {
                        let rs = r.horizontal_concat(s);
                        for x in &bases[k] {
                            let rx = spec.phi_unchecked(r, x)?;
                            for y in &bases[k2] {
                                let lhs = spec.phi_unchecked(&rs, &spec.iota(x, y)?)?;
                                let rhs = spec.iota(&rx, &spec.phi_unchecked(s, y)?)?;
                                if !spec.equal(&lhs, &rhs)? {
                                    return Ok(Some(format!(
                                        "r = {r}, s = {s}, x = {x}, y = {y}: φ(r⊙s)ι(x⊗y) = {lhs}, ι(φ(r)x⊗φ(s)y) = {rhs}"
                                    )));
                                }
                            }
                        }
                        Ok(None)
                    })?);
                }
            }
        }
    }

    let unit = spec.unit();
    for n in 0..=b {
        checks.push(run("iota unit", format!("n={n}"), &bases[n], 2, |x| {
            let left = spec.iota(&unit, x)?;
            let right = spec.iota(x, &unit)?;
            Ok((!spec.equal(&left, x)? || !spec.equal(&right, x)?)
                .then(|| format!("x = {x}: ι(1⊗x) = {left}, ι(x⊗1) = {right}")))
        })?);
    }

    for a in 0..=b {
        for c in 0..=b - a {
            let pairs: Vec<(&SpanElement, &SpanElement)> = bases[a]
                .iter()
                .flat_map(|x| bases[c].iter().map(move |y| (x, y)))
                .collect();
            let per = pairs.len();
            checks.push(run("iota isometry", format!("k={a}, l={c}"), &pairs, per, |&(x, y)| {
                let xy = spec.iota(x, y)?;
                for &(x2, y2) in &pairs {
                    let lhs = spec.inner(&xy, &spec.iota(x2, y2)?)?;
                    let rhs = spec.inner(x, x2)? * spec.inner(y, y2)?;
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "x = {x}, y = {y}, x' = {x2}, y' = {y2}: ⟨ι(x⊗y), ι(x'⊗y')⟩ = {lhs}, product = {rhs}"
                        )));
                    }
                }
                Ok(None)
            })?);
            for d in 0..=b - a - c {
                let triples: Vec<(&SpanElement, &SpanElement, &SpanElement)> = pairs
                    .iter()
                    .flat_map(|&(x, y)| bases[d].iter().map(move |z| (x, y, z)))
                    .collect();
                checks.push(run(
                    "iota associativity",
                    format!("{a}, {c}, {d}"),
                    &triples,
                    1,
                    |&(x, y, z)| {
                        let lhs = spec.iota(&spec.iota(x, y)?, z)?;
                        let rhs = spec.iota(x, &spec.iota(y, z)?)?;
                        Ok((!spec.equal(&lhs, &rhs)?)
                            .then(|| format!("x = {x}, y = {y}, z = {z}: {lhs} ≠ {rhs}")))
                    },
                )?);
            }
        }
    }

    Ok(AxiomReport {
        functor: spec.describe(),
        size_bound,
        checks,
    })
}
