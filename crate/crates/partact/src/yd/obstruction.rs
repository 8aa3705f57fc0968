//! The conditions on an unknown collection {a_k} as a polynomial system.
//!
//! a_k is parametrized by the images of a label basis B_k of K_k written in a
//! label basis B_{k+2} of K_{k+2}; every other label is first expanded over
//! B_k. Each label-level instance contributes the equations ⟨lhs − rhs, b⟩ = 0
//! for b ∈ B_m, which say lhs = rhs in K_m because B_m spans it.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check::{instances, Instance, Plan};
use super::{require_kmax, Condition, Maps, Span, YDCollection};
use crate::error::{Error, Result};
use crate::exactmath::{
    replay, staged_feasibility_with, Certificate, ConstraintSystem, Feasibility, Matrix, Poly,
    Scalar, SolverOptions,
};
use crate::functors::{gram, FunctorSpec, Label, SpanElement};

/// The unknown coefficient of `target` in a_k(`source`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unknown {
    pub k: usize,
    pub source: Label,
    pub target: Label,
}

struct SymbolicMaps<'a> {
    spec: &'a FunctorSpec,
    kmax: usize,
    /// B_k for k ≤ K_max + 2.
    bases: Vec<Vec<Label>>,
    /// Inverse Gram matrix of B_k, k ≤ K_max.
    inverses: Vec<Matrix>,
    /// Variable of (k, source, target).
    vars: BTreeMap<(usize, Label, Label), u32>,
}

impl Maps<Poly> for SymbolicMaps<'_> {
    fn spec(&self) -> &FunctorSpec {
        self.spec
    }

    fn kmax(&self) -> usize {
        self.kmax
    }

    fn image(&self, k: usize, label: &Label) -> Result<Span<Poly>> {
        let basis = self
            .bases
            .get(k)
            .filter(|_| k <= self.kmax)
            .ok_or_else(|| Error::BoundExceeded(format!("a_{k} with K_max = {}", self.kmax)))?;
        let of_basis = |b: &Label| {
            let mut out = Span::zero(k + 2);
            for t in &self.bases[k + 2] {
                out.add_term(t.clone(), &Poly::var(self.vars[&(k, b.clone(), t.clone())]));
            }
            out
        };
        if basis.contains(label) {
            return Ok(of_basis(label));
        }
        // label = Σ_b c_b b with G_B c = (⟨b, label⟩)_b
        let pairings: Vec<Scalar> = basis
            .iter()
            .map(|b| self.spec.label_inner(b, label))
            .collect::<Result<_>>()?;
        let coords = self.inverses[k].mul_vec(&pairings);
        let mut out = Span::zero(k + 2);
        for (b, c) in basis.iter().zip(&coords) {
            if !c.is_zero() {
                out = out.add(&of_basis(b).scaled(c))?;
            }
        }
        Ok(out)
    }
}

/// An assembled system together with the meaning of its variables.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ObstructionSystem {
    pub functor: String,
    pub kmax: usize,
    pub conditions: Vec<Condition>,
    pub bases: Vec<Vec<Label>>,
    pub unknowns: Vec<Unknown>,
    pub system: ConstraintSystem,
}

fn label_basis(spec: &FunctorSpec, k: usize) -> Result<(Vec<Label>, Matrix)> {
    let form = gram(spec, k)?;
    let cols = form.matrix.column_basis();
    let labels: Vec<Label> = cols.iter().map(|&i| form.labels[i].clone()).collect();
    Ok((labels, form.matrix.submatrix(&cols, &cols)))
}

/// Unknowns are the entries of a_k, k ≤ K_max, over label bases; instances
/// are (a0) at n = 1, (a1) with 2k ≤ K_max, (a2) for k, k' ≤ K_max, (a3)
/// with k + k' ≤ K_max and (a4) for k ≤ K_max, restricted to `conditions`.
/// Linear instances come first, so the quadratic ones from (a3) and (a5)
/// enter after linear staging.
pub fn assemble_obstruction(
    spec: &FunctorSpec,
    kmax: usize,
    conditions: &[Condition],
) -> Result<ObstructionSystem> {
    require_kmax(kmax)?;
    let built: Vec<(Vec<Label>, Matrix)> = (0..=kmax + 2)
        .into_par_iter()
        .map(|k| label_basis(spec, k))
        .collect::<Result<_>>()?;
    let bases: Vec<Vec<Label>> = built.iter().map(|(b, _)| b.clone()).collect();
    let inverses: Vec<Matrix> = built[..=kmax]
        .iter()
        .enumerate()
        .map(|(k, (_, g))| {
            g.inverse()
                .ok_or_else(|| Error::NormalizationFailure(format!("Gram of B_{k} is singular")))
        })
        .collect::<Result<_>>()?;

    let mut system = ConstraintSystem::new(spec.n);
    let mut vars = BTreeMap::new();
    let mut unknowns = Vec::new();
    for k in 0..=kmax {
        for b in &bases[k] {
            for t in &bases[k + 2] {
                let v = system.add_var(format!("a{k}[{b} -> {t}]"));
                vars.insert((k, b.clone(), t.clone()), v);
                unknowns.push(Unknown {
                    k,
                    source: b.clone(),
                    target: t.clone(),
                });
            }
        }
    }
    let maps = SymbolicMaps {
        spec,
        kmax,
        bases: bases.clone(),
        inverses,
        vars,
    };

    let inputs = |k: usize| Ok(bases[k].clone());
    let mut ordered: Vec<Condition> = conditions.to_vec();
    ordered.sort_by_key(|c| matches!(c, Condition::A3 | Condition::A5));
    ordered.dedup();
    let mut list: Vec<Instance> = Vec::new();
    let mut jmaps = BTreeMap::new();
    for cond in &ordered {
        let plan = Plan {
            conditions: vec![*cond],
            kmax,
            k: kmax,
            n: 1,
            inputs: &inputs,
        };
        let inst = instances(spec, &plan)?;
        // (a5) compares in degree k + n; keep it within the bases
        list.extend(inst.list.into_iter().filter(|i| i.degree() <= kmax + 2));
        jmaps.extend(inst.jmaps);
    }
    let equations: Vec<Vec<(String, Poly)>> = list
        .par_iter()
        .map(|it| {
            let (lhs, rhs) = it.evaluate(&maps, &jmaps)?;
            let diff = lhs.sub(&rhs)?;
            let tag = format!("{} {} @ {}", it.condition(), it.params(), it.input());
            bases[diff.degree]
                .iter()
                .map(|b| Ok((format!("{tag} | {b}"), diff.pair(spec, b)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (label, poly) in equations.into_iter().flatten() {
        system.push(label, poly);
    }
    Ok(ObstructionSystem {
        functor: spec.describe(),
        kmax,
        conditions: ordered,
        bases,
        unknowns,
        system,
    })
}

impl ObstructionSystem {
    /// The collection given by an assignment of the unknowns (missing ones
    /// are zero), extended from B_k to every label of K_k.
    pub fn collection(
        &self,
        spec: &FunctorSpec,
        values: &BTreeMap<u32, Scalar>,
    ) -> Result<YDCollection> {
        let mut maps = Vec::with_capacity(self.kmax + 1);
        let inverse: Vec<Matrix> = (0..=self.kmax)
            .map(|k| {
                let (_, g) = label_basis(spec, k)?;
                g.inverse().ok_or_else(|| {
                    Error::NormalizationFailure(format!("Gram of B_{k} is singular"))
                })
            })
            .collect::<Result<_>>()?;
        let mut var = 0u32;
        let mut images: Vec<BTreeMap<Label, SpanElement>> = Vec::new();
        for k in 0..=self.kmax {
            let mut table = BTreeMap::new();
            for b in &self.bases[k] {
                let mut img = SpanElement::zero(k + 2);
                for t in &self.bases[k + 2] {
                    img.add_term(t.clone(), &values.get(&var).cloned().unwrap_or_default());
                    var += 1;
                }
                table.insert(b.clone(), img);
            }
            images.push(table);
        }
        for (k, table) in images.iter().enumerate() {
            let basis = &self.bases[k];
            let mut full = BTreeMap::new();
            for l in spec.basis(k)? {
                let pairings: Vec<Scalar> = basis
                    .iter()
                    .map(|b| spec.label_inner(b, &l))
                    .collect::<Result<_>>()?;
                let coords = inverse[k].mul_vec(&pairings);
                let mut img = SpanElement::zero(k + 2);
                for (b, c) in basis.iter().zip(&coords) {
                    img = img.add(&table[b].scale(c))?;
                }
                full.insert(l, img);
            }
            maps.push(full);
        }
        YDCollection::explicit(spec.clone(), self.kmax, "solver witness", maps)
    }

    /// Values of the unknowns for a given collection.
    pub fn values_of(&self, c: &YDCollection) -> Result<BTreeMap<u32, Scalar>> {
        let mut out = BTreeMap::new();
        let mut coords = BTreeMap::new();
        for k in 0..=self.kmax {
            let basis = &self.bases[k + 2];
            let (_, g) = label_basis(&c.spec, k + 2)?;
            let inv = g.inverse().ok_or_else(|| {
                Error::NormalizationFailure(format!("Gram of B_{} is singular", k + 2))
            })?;
            for b in &self.bases[k] {
                let img = c.apply(&Span::basis(k, b.clone()))?;
                let pairings: Vec<Scalar> = basis
                    .iter()
                    .map(|t| img.pair(&c.spec, t))
                    .collect::<Result<_>>()?;
                coords.insert((k, b.clone()), inv.mul_vec(&pairings));
            }
        }
        for (v, u) in self.unknowns.iter().enumerate() {
            let pos = self.bases[u.k + 2]
                .iter()
                .position(|t| *t == u.target)
                .expect("target is a basis label");
            out.insert(v as u32, coords[&(u.k, u.source.clone())][pos].clone());
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Outcome {
    Feasible { values: BTreeMap<u32, Scalar> },
    Infeasible { certificate: Certificate },
    Undecided { residue: Vec<Poly> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Decision {
    pub functor: String,
    pub kmax: usize,
    pub conditions: Vec<Condition>,
    pub variables: usize,
    pub equations: usize,
    pub outcome: Outcome,
}

impl Decision {
    pub fn is_infeasible(&self) -> bool {
        matches!(self.outcome, Outcome::Infeasible { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Infeasible { certificate } => Some(certificate),
            _ => None,
        }
    }
}

/// Runs the staged solver on the structure conditions (a0)–(a4).
pub fn decide_obstruction(
    spec: &FunctorSpec,
    kmax: usize,
) -> Result<(ObstructionSystem, Decision)> {
    decide_obstruction_with(spec, kmax, &Condition::STRUCTURE, &SolverOptions::default())
}

pub fn decide_obstruction_with(
    spec: &FunctorSpec,
    kmax: usize,
    conditions: &[Condition],
    opts: &SolverOptions,
) -> Result<(ObstructionSystem, Decision)> {
    let sys = assemble_obstruction(spec, kmax, conditions)?;
    let outcome = match staged_feasibility_with(&sys.system, opts)? {
        Feasibility::Feasible(values) => Outcome::Feasible { values },
        Feasibility::Infeasible(certificate) => Outcome::Infeasible { certificate },
        Feasibility::Undecided { residue } => Outcome::Undecided { residue },
    };
    let decision = Decision {
        functor: sys.functor.clone(),
        kmax,
        conditions: sys.conditions.clone(),
        variables: sys.system.names.len(),
        equations: sys.system.equations.len(),
        outcome,
    };
    Ok((sys, decision))
}

/// Rebuilds the system for the decision's functor description and bounds and
/// replays its certificate against it.
pub fn replay_decision(spec: &FunctorSpec, decision: &Decision) -> std::result::Result<(), String> {
    let cert = decision
        .certificate()
        .ok_or("the decision carries no certificate")?;
    if spec.describe() != decision.functor {
        return Err(format!(
            "certificate is for {}, not {}",
            decision.functor,
            spec.describe()
        ));
    }
    let sys = assemble_obstruction(spec, decision.kmax, &decision.conditions)
        .map_err(|e| e.to_string())?;
    replay(&sys.system, cert)
}
