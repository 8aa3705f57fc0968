//! Instances of (a0)–(a5) on spanning morphisms and basis labels, and the
//! checker that evaluates them for an explicit collection.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{padded, Coefficient, Maps, Span, YDCollection};
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Scalar};
use crate::functors::{j_map, r_n, FunctorSpec, JMap, Label, SpanElement};
use crate::partitions::{enumerate, named, Partition};
use crate::rigidity::{minimal_projections, partition_expansion};
use crate::tensorrep::{index_of, multi_index};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A0,
    A1,
    A2,
    A3,
    A4,
    A5,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::A0,
        Condition::A1,
        Condition::A2,
        Condition::A3,
        Condition::A4,
        Condition::A5,
    ];

    /// The conditions a Yetter-Drinfeld structure requires; (a5) only adds
    /// braided commutativity.
    pub const STRUCTURE: [Condition; 5] = [
        Condition::A0,
        Condition::A1,
        Condition::A2,
        Condition::A3,
        Condition::A4,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Condition::A0 => "a0",
            Condition::A1 => "a1",
            Condition::A2 => "a2",
            Condition::A3 => "a3",
            Condition::A4 => "a4",
            Condition::A5 => "a5",
        }
    }

    pub fn parse(s: &str) -> Result<Condition> {
        Condition::ALL
            .into_iter()
            .find(|c| c.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown condition {s}")))
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Instances use k ≤ `k` and iterates aⁿ with 1 ≤ n ≤ `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub k: usize,
    pub n: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { k: 2, n: 2 }
    }
}

/// One label-level identity lhs = rhs.
#[derive(Clone, Debug)]
pub(crate) enum Instance {
    /// φ(P ⊠ |^k ⊠ Q) aᵐ_k x = 0, with P and Q given by partition expansions.
    A0 {
        m: usize,
        k: usize,
        pair: String,
        left: Vec<(Partition, Scalar)>,
        right: Vec<(Partition, Scalar)>,
        x: Label,
    },
    /// a_{2k} φ(R_k) 1 = φ(R_{k+1}) 1.
    A1 { k: usize },
    /// a_{k'} φ(r) x = φ(|⊙r⊙|) a_k x.
    A2 { r: Partition, x: Label },
    /// a_{k+k'} ι(x⊗y) = φ(|^{1+k} ⊙ R₁* ⊙ |^{k'+1}) ι(a_k x ⊗ a_{k'} y).
    A3 {
        x: (usize, Label),
        y: (usize, Label),
    },
    /// J_{k+2} a_k x = a_k J_k x.
    A4 { k: usize, x: Label },
    /// φ(R_m* ⊙ |^{k+m}) ι(x ⊗ aᵐ_k y) = ι(y ⊗ x), x ∈ K_m, y ∈ K_k.
    A5 {
        m: usize,
        x: Label,
        y: (usize, Label),
    },
}

impl Instance {
    pub(crate) fn condition(&self) -> Condition {
        match self {
            Instance::A0 { .. } => Condition::A0,
            Instance::A1 { .. } => Condition::A1,
            Instance::A2 { .. } => Condition::A2,
            Instance::A3 { .. } => Condition::A3,
            Instance::A4 { .. } => Condition::A4,
            Instance::A5 { .. } => Condition::A5,
        }
    }

    /// The morphism-level parameters, shared by all labels of one family.
    pub(crate) fn params(&self) -> String {
        match self {
            Instance::A0 { m, k, pair, .. } => format!("n={m} k={k} {pair}"),
            Instance::A1 { k } => format!("k={k}"),
            Instance::A2 { r, .. } => format!("k={} k'={} r={r}", r.upper(), r.lower()),
            Instance::A3 { x, y } => format!("k={} k'={}", x.0, y.0),
            Instance::A4 { k, .. } => format!("k={k}"),
            Instance::A5 { m, y, .. } => format!("n={} k={}", m - 1, y.0),
        }
    }

    pub(crate) fn input(&self) -> String {
        match self {
            Instance::A1 { .. } => "1".to_string(),
            Instance::A0 { x, .. } | Instance::A2 { x, .. } | Instance::A4 { x, .. } => {
                x.to_string()
            }
            Instance::A3 { x, y } => format!("{}⊗{}", x.1, y.1),
            Instance::A5 { x, y, .. } => format!("{x}⊗{}", y.1),
        }
    }

    /// Degree in which the two sides are compared.
    pub(crate) fn degree(&self) -> usize {
        match self {
            Instance::A0 { m, k, .. } => k + 2 * m,
            Instance::A1 { k } => 2 * k + 2,
            Instance::A2 { r, .. } => r.lower() + 2,
            Instance::A3 { x, y } => x.0 + y.0 + 2,
            Instance::A4 { k, .. } => k + 2,
            Instance::A5 { m, y, .. } => y.0 + m,
        }
    }

    pub(crate) fn evaluate<C: Coefficient, M: Maps<C>>(
        &self,
        maps: &M,
        jmaps: &BTreeMap<usize, JMap>,
    ) -> Result<(Span<C>, Span<C>)> {
        let spec = maps.spec();
        let unit = || Span::<C>::from_element(&spec.unit());
        match self {
            Instance::A0 {
                m,
                k,
                left,
                right,
                x,
                ..
            } => {
                let y = maps.iterate(*m, &Span::basis(*k, x.clone()))?;
                let deg = k + 2 * m;
                let pad_right: Vec<(Partition, Scalar)> = right
                    .iter()
                    .map(|(s, c)| (padded(m + k, s, 0), c.clone()))
                    .collect();
                let pad_left: Vec<(Partition, Scalar)> = left
                    .iter()
                    .map(|(r, c)| (padded(0, r, k + m), c.clone()))
                    .collect();
                let lhs = y
                    .phi_sum(spec, &pad_right, deg)?
                    .phi_sum(spec, &pad_left, deg)?;
                Ok((lhs, Span::zero(deg)))
            }
            Instance::A1 { k } => {
                let lhs = maps.apply(&unit().phi(spec, &r_n(*k))?)?;
                Ok((lhs, unit().phi(spec, &r_n(k + 1))?))
            }
            Instance::A2 { r, x } => {
                let xs = Span::basis(r.upper(), x.clone());
                let lhs = maps.apply(&xs.phi(spec, r)?)?;
                let rhs = maps.apply(&xs)?.phi(spec, &padded(1, r, 1))?;
                Ok((lhs, rhs))
            }
            Instance::A3 { x, y } => {
                let xs = Span::basis(x.0, x.1.clone());
                let ys = Span::basis(y.0, y.1.clone());
                let lhs = maps.apply(&xs.iota(spec, &ys)?)?;
                let cap = padded(1 + x.0, &named::pair_upper(), y.0 + 1);
                let rhs = maps
                    .apply(&xs)?
                    .iota(spec, &maps.apply(&ys)?)?
                    .phi(spec, &cap)?;
                Ok((lhs, rhs))
            }
            Instance::A4 { k, x } => {
                let j = |d: usize| {
                    jmaps
                        .get(&d)
                        .ok_or_else(|| Error::Precondition(format!("J_{d} was not prepared")))
                };
                let xs = Span::basis(*k, x.clone());
                let lhs = maps.apply(&xs)?.apply_j(j(k + 2)?)?;
                let rhs = maps.apply(&xs.apply_j(j(*k)?)?)?;
                Ok((lhs, rhs))
            }
            Instance::A5 { m, x, y } => {
                let xs = Span::basis(*m, x.clone());
                let ys = Span::basis(y.0, y.1.clone());
                let cap = r_n(*m)
                    .involution()
                    .horizontal_concat(&named::identity(y.0 + m));
                let lhs = xs.iota(spec, &maps.iterate(*m, &ys)?)?.phi(spec, &cap)?;
                Ok((lhs, ys.iota(spec, &xs)?))
            }
        }
    }
}

/// Which instances to generate. `inputs(k)` lists the labels of K_k to test.
pub(crate) struct Plan<'a> {
    pub conditions: Vec<Condition>,
    pub kmax: usize,
    /// k, k' range of (a2) and of the single-degree conditions.
    pub k: usize,
    /// Iterate depths for (a0) and (a5).
    pub n: usize,
    pub inputs: &'a (dyn Fn(usize) -> Result<Vec<Label>> + Sync),
}

/// Instances of the plan, J maps they need, and notes on skipped conditions.
pub(crate) struct Instances {
    pub list: Vec<Instance>,
    pub jmaps: BTreeMap<usize, JMap>,
    pub disabled: BTreeMap<Condition, String>,
}

/// F P F for the index reversal F on (ℂ^N)^⊗m.
fn mirrored(p: &Matrix, n: usize, m: usize) -> Matrix {
    let rev = |i: usize| {
        let mut idx = multi_index(i, n, m);
        idx.reverse();
        index_of(&idx, n)
    };
    Matrix::from_fn(p.rows(), p.cols(), |i, j| p.get(rev(i), rev(j)).clone())
}

/// Pairs (P_x, P_y) of minimal projections at tensor power m with
/// P_x · F P_y F = 0, as partition expansions. The first leg of aᵐ_k carries
/// the conjugate representation, identified with u^⊠m through the reversal F.
fn a0_pairs(
    spec: &FunctorSpec,
    m: usize,
) -> Result<Vec<(String, Vec<(Partition, Scalar)>, Vec<(Partition, Scalar)>)>> {
    let bundle = minimal_projections(&spec.category, m, spec.n)?;
    let nn = spec.n as usize;
    let expansions: Vec<(Partition, Matrix, Vec<(Partition, Scalar)>)> = bundle
        .minimal
        .par_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(x, p)| {
            Ok((
                x.clone(),
                p.clone(),
                partition_expansion(p, &spec.category, m, m, spec.n)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (x, px, ex) in &expansions {
        for (y, py, ey) in &expansions {
            if px.mul(&mirrored(py, nn, m)).is_zero() {
                out.push((format!("P={x} Q={y}"), ex.clone(), ey.clone()));
            }
        }
    }
    Ok(out)
}

pub(crate) fn instances(spec: &FunctorSpec, plan: &Plan) -> Result<Instances> {
    let mut list = Vec::new();
    let mut jmaps = BTreeMap::new();
    let mut disabled = BTreeMap::new();
    let want = |c: Condition| plan.conditions.contains(&c);
    if want(Condition::A0) {
        if spec.category.is_noncrossing_within(8) {
            for m in 1..=plan.n {
                let pairs = a0_pairs(spec, m)?;
                for k in 0..=plan.k {
                    for x in (plan.inputs)(k)? {
                        for (pair, left, right) in &pairs {
                            list.push(Instance::A0 {
                                m,
                                k,
                                pair: pair.clone(),
                                left: left.clone(),
                                right: right.clone(),
                                x: x.clone(),
                            });
                        }
                    }
                }
            }
        } else {
            disabled.insert(
                Condition::A0,
                format!(
                    "{} is not non-crossing; minimal projections are not available",
                    spec.category.name()
                ),
            );
        }
    }
    if want(Condition::A1) {
        list.extend((0..=plan.kmax / 2).map(|k| Instance::A1 { k }));
    }
    if want(Condition::A2) {
        for k in 0..=plan.k {
            let xs = (plan.inputs)(k)?;
            for kp in 0..=plan.k {
                for r in enumerate(&spec.category, k, kp)? {
                    list.extend(xs.iter().map(|x| Instance::A2 {
                        r: r.clone(),
                        x: x.clone(),
                    }));
                }
            }
        }
    }
    if want(Condition::A3) {
        for k in 0..=plan.k {
            for kp in 0..=plan.k {
                if k + kp > plan.kmax {
                    continue;
                }
                let xs = (plan.inputs)(k)?;
                let ys = (plan.inputs)(kp)?;
                for x in &xs {
                    list.extend(ys.iter().map(|y| Instance::A3 {
                        x: (k, x.clone()),
                        y: (kp, y.clone()),
                    }));
                }
            }
        }
    }
    if want(Condition::A4) {
        let degrees: Vec<usize> = (0..=plan.k).flat_map(|k| [k, k + 2]).collect();
        let built: Vec<(usize, JMap)> = degrees
            .into_par_iter()
            .map(|d| Ok((d, j_map(spec, d)?)))
            .collect::<Result<_>>()?;
        jmaps.extend(built);
        for k in 0..=plan.k {
            list.extend((plan.inputs)(k)?.into_iter().map(|x| Instance::A4 { k, x }));
        }
    }
    if want(Condition::A5) {
        for m in 1..=plan.n {
            let xs = (plan.inputs)(m)?;
            for k in 0..=plan.k {
                let ys = (plan.inputs)(k)?;
                for x in &xs {
                    list.extend(ys.iter().map(|y| Instance::A5 {
                        m,
                        x: x.clone(),
                        y: (k, y.clone()),
                    }));
                }
            }
        }
    }
    Ok(Instances {
        list,
        jmaps,
        disabled,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not checked; the report's note says why.
    Disabled,
}

/// A label-level instance where the two sides differ.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub instance: String,
    pub input: String,
    pub lhs: SpanElement,
    pub rhs: SpanElement,
    /// ‖lhs − rhs‖².
    pub defect: Scalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    pub condition: Condition,
    pub status: Status,
    pub note: Option<String>,
    /// Morphism-level parameter sets, in generation order.
    pub instances: Vec<String>,
    /// Number of label-level identities evaluated.
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YDReport {
    pub functor: String,
    pub collection: String,
    pub kmax: usize,
    pub bounds: Bounds,
    pub conditions: Vec<ConditionReport>,
}

impl YDReport {
    /// No condition failed. Disabled conditions do not count as failures.
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, c: Condition) -> Option<&ConditionReport> {
        self.conditions.iter().find(|r| r.condition == c)
    }

    pub fn passed(&self, c: Condition) -> bool {
        self.get(c).is_some_and(|r| r.status == Status::Pass)
    }

    pub fn failed(&self, c: Condition) -> bool {
        self.get(c).is_some_and(|r| r.status == Status::Fail)
    }
}

/// Counterexamples kept per condition.
const MAX_COUNTEREXAMPLES: usize = 5;

/// Evaluates every instance of (a0)–(a5) within `bounds`.
pub fn check_conditions(c: &YDCollection, bounds: Bounds) -> Result<YDReport> {
    check_conditions_for(c, bounds, &Condition::ALL)
}

pub fn check_conditions_for(
    c: &YDCollection,
    bounds: Bounds,
    conditions: &[Condition],
) -> Result<YDReport> {
    if bounds.n == 0 {
        return Err(Error::Precondition(
            "iterate depth must be at least 1".into(),
        ));
    }
    if bounds.k > c.kmax || bounds.k + 2 * (bounds.n - 1) > c.kmax {
        return Err(Error::BoundExceeded(format!(
            "k ≤ {} with iterates up to n = {} need a_j for j ≤ {}, but K_max = {}",
            bounds.k,
            bounds.n,
            bounds.k + 2 * (bounds.n - 1),
            c.kmax
        )));
    }
    let spec = &c.spec;
    let inputs = |k: usize| spec.basis(k);
    let plan = Plan {
        conditions: conditions.to_vec(),
        kmax: c.kmax,
        k: bounds.k,
        n: bounds.n,
        inputs: &inputs,
    };
    let inst = instances(spec, &plan)?;
    let results: Vec<(usize, Option<Counterexample>)> = inst
        .list
        .par_iter()
        .enumerate()
        .map(|(i, it)| {
            let (lhs, rhs) = it.evaluate(c, &inst.jmaps)?;
            let diff = lhs.sub(&rhs)?.to_element();
            let defect = spec.norm_sq(&diff)?;
            Ok((
                i,
                (!defect.is_zero()).then(|| Counterexample {
                    instance: it.params(),
                    input: it.input(),
                    lhs: lhs.to_element(),
                    rhs: rhs.to_element(),
                    defect,
                }),
            ))
        })
        .collect::<Result<_>>()?;
    let mut reports: Vec<ConditionReport> = conditions
        .iter()
        .map(|&cond| ConditionReport {
            condition: cond,
            status: if inst.disabled.contains_key(&cond) {
                Status::Disabled
            } else {
                Status::Pass
            },
            note: inst.disabled.get(&cond).cloned(),
            instances: Vec::new(),
            checked: 0,
            counterexamples: Vec::new(),
        })
        .collect();
    for (i, ce) in results {
        let it = &inst.list[i];
        let rep = reports
            .iter_mut()
            .find(|r| r.condition == it.condition())
            .expect("condition was requested");
        let params = it.params();
        if !rep.instances.contains(&params) {
            rep.instances.push(params);
        }
        rep.checked += 1;
        if let Some(ce) = ce {
            rep.status = Status::Fail;
            if rep.counterexamples.len() < MAX_COUNTEREXAMPLES {
                rep.counterexamples.push(ce);
            }
        }
    }
    Ok(YDReport {
        functor: spec.describe(),
        collection: c.name.clone(),
        kmax: c.kmax,
        bounds,
        conditions: reports,
    })
}
