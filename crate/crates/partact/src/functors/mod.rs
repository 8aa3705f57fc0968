//! Spectral functors at tensor powers: K_n as a formal span of labels with an
//! exact Gram metric, the action φ of a category of partitions on it, and the
//! tensor comparison maps ι.
//!
//! Equality in K_n is always Gram-kernel equality: since the form is positive
//! semidefinite, x = y exactly when ‖x − y‖² = 0.

mod axioms;
mod gram;
#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Scalar, Vector};
use crate::partitions::{
    enumerate_bounded, named, shifted_concat_1, shifted_concat_2_with_loops, vertical_concat,
    CategorySpec, Partition,
};
use crate::tensorrep::{index_of, multi_index, partition_column, TensorSpace, DEFAULT_BUDGET};

pub use axioms::{verify_functor_axioms, AxiomCheck, AxiomReport};
pub use gram::{gram, j_map, k_dim, GramForm, JMap};

/// Where the vectors of K_n live.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// η_p for projective p of the module category, optionally only those
    /// without through-blocks.
    Projective {
        module: CategorySpec,
        zero_through: bool,
    },
    /// T_p for p in the module category on the lower row, with `shift` extra
    /// points (0, 1 or 2).
    Line { module: CategorySpec, shift: usize },
    /// K_n = (ℂ^N)^⊗n and φ(r) = T_r.
    CanonicalCG,
}

/// A deliberate corruption of φ, used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mutation {
    /// φ(r) forgets the N^{rl} factor.
    DropLoopFactor,
}

#[derive(Clone, Debug)]
pub struct FunctorSpec {
    /// Morphisms act from this category.
    pub category: CategorySpec,
    pub model: Model,
    pub n: u32,
    /// Largest number of points enumerated for a basis.
    pub bound: usize,
    /// Largest tensor dimension materialized.
    pub budget: usize,
    pub mutation: Option<Mutation>,
}

pub const DEFAULT_FUNCTOR_BOUND: usize = 12;

impl FunctorSpec {
    pub fn new(category: CategorySpec, model: Model, n: u32) -> Result<FunctorSpec> {
        if n == 0 {
            return Err(Error::Precondition("N must be at least 1".into()));
        }
        if let Model::Line { shift, .. } = &model {
            if *shift > 2 {
                return Err(Error::OutOfRange(format!("shift {shift} not in 0..=2")));
            }
        }
        Ok(FunctorSpec {
            category,
            model,
            n,
            bound: DEFAULT_FUNCTOR_BOUND,
            budget: DEFAULT_BUDGET,
            mutation: None,
        })
    }

    /// (𝒞, Proj_𝒞).
    pub fn projective(category: CategorySpec, n: u32) -> Result<FunctorSpec> {
        let module = category.clone();
        FunctorSpec::new(
            category,
            Model::Projective {
                module,
                zero_through: false,
            },
            n,
        )
    }

    /// (𝒞, Proj⁰_𝒞').
    pub fn projective_zero(
        category: CategorySpec,
        module: CategorySpec,
        n: u32,
    ) -> Result<FunctorSpec> {
        FunctorSpec::new(
            category,
            Model::Projective {
                module,
                zero_through: true,
            },
            n,
        )
    }

    /// (𝒞, 𝒞'(0, • + shift)).
    pub fn line(
        category: CategorySpec,
        module: CategorySpec,
        shift: usize,
        n: u32,
    ) -> Result<FunctorSpec> {
        FunctorSpec::new(category, Model::Line { module, shift }, n)
    }

    pub fn canonical(category: CategorySpec, n: u32) -> Result<FunctorSpec> {
        FunctorSpec::new(category, Model::CanonicalCG, n)
    }

    pub fn with_bound(mut self, bound: usize) -> FunctorSpec {
        self.bound = bound;
        self
    }

    pub fn with_budget(mut self, budget: usize) -> FunctorSpec {
        self.budget = budget;
        self
    }

    pub fn with_mutation(mut self, m: Mutation) -> FunctorSpec {
        self.mutation = Some(m);
        self
    }

    pub fn shift(&self) -> usize {
        match &self.model {
            Model::Line { shift, .. } => *shift,
            _ => 0,
        }
    }

    pub fn describe(&self) -> String {
        let model = match &self.model {
            Model::Projective {
                module,
                zero_through: false,
            } => format!("proj:{}", module.name()),
            Model::Projective {
                module,
                zero_through: true,
            } => format!("proj0:{}", module.name()),
            Model::Line { module, shift: 0 } => format!("line:{}", module.name()),
            Model::Line { module, shift } => format!("shift{shift}:{}", module.name()),
            Model::CanonicalCG => "cg".to_string(),
        };
        format!("{} / {} / N={}", self.category.name(), model, self.n)
    }

    fn nn(&self) -> usize {
        self.n as usize
    }

    /// The labels spanning K_n.
    pub fn basis(&self, n: usize) -> Result<Vec<Label>> {
        match &self.model {
            Model::Projective {
                module,
                zero_through,
            } => {
                let all = enumerate_bounded(module, n, n, self.bound)?;
                Ok(all
                    .into_iter()
                    .filter(|p| {
                        p.is_projective() && (!zero_through || p.block_stats().through == 0)
                    })
                    .map(Label::Part)
                    .collect())
            }
            Model::Line { module, shift } => {
                Ok(enumerate_bounded(module, 0, n + shift, self.bound)?
                    .into_iter()
                    .map(Label::Part)
                    .collect())
            }
            Model::CanonicalCG => {
                let space = TensorSpace::with_budget(self.nn(), n, self.budget)?;
                Ok((0..space.dim())
                    .map(|i| Label::Index(multi_index(i, self.nn(), n)))
                    .collect())
            }
        }
    }

    /// Degree of a label, in unshifted bookkeeping.
    pub fn label_degree(&self, l: &Label) -> Result<usize> {
        match (&self.model, l) {
            (Model::Projective { .. }, Label::Part(p)) => Ok(p.upper()),
            (Model::Line { shift, .. }, Label::Part(p)) => {
                p.lower().checked_sub(*shift).ok_or_else(|| {
                    Error::DegreeMismatch(format!("{p} is shorter than the shift {shift}"))
                })
            }
            (Model::CanonicalCG, Label::Index(i)) => Ok(i.len()),
            _ => Err(Error::Precondition(format!(
                "label {l} does not belong to this model"
            ))),
        }
    }

    /// The unit of K_0.
    pub fn unit(&self) -> SpanElement {
        let label = match &self.model {
            Model::Projective { .. } => Label::Part(Partition::empty()),
            Model::Line { shift, .. } => Label::Part(match shift {
                0 => Partition::empty(),
                1 => Partition::from_labels(0, 1, &[0]),
                _ => named::pair_lower(),
            }),
            Model::CanonicalCG => Label::Index(Vec::new()),
        };
        SpanElement::basis(0, label)
    }

    /// Inner product of two labels.
    pub fn label_inner(&self, a: &Label, b: &Label) -> Result<Scalar> {
        match (&self.model, a, b) {
            (Model::Projective { .. }, Label::Part(p), Label::Part(q)) => {
                let (_, loops) = vertical_concat(q, p)?;
                Ok(Scalar::power(self.n, loops as i32))
            }
            (Model::Line { shift, .. }, Label::Part(p), Label::Part(q)) => {
                let (_, loops) = vertical_concat(&q.involution(), p)?;
                let e = loops as i32 - i32::from(*shift > 0);
                Ok(Scalar::power(self.n, e))
            }
            (Model::CanonicalCG, Label::Index(i), Label::Index(j)) => {
                if i.len() != j.len() {
                    return Err(Error::DegreeMismatch(format!("{} vs {}", i.len(), j.len())));
                }
                Ok(if i == j {
                    Scalar::one()
                } else {
                    Scalar::zero()
                })
            }
            _ => Err(Error::Precondition(format!(
                "labels {a}, {b} do not belong to this model"
            ))),
        }
    }

    pub fn inner(&self, x: &SpanElement, y: &SpanElement) -> Result<Scalar> {
        if x.degree != y.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} vs {}",
                x.degree, y.degree
            )));
        }
        let mut acc = Scalar::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let g = self.label_inner(a, b)?;
                if !g.is_zero() {
                    acc += &(&(ca * cb) * &g);
                }
            }
        }
        Ok(acc)
    }

    pub fn norm_sq(&self, x: &SpanElement) -> Result<Scalar> {
        self.inner(x, x)
    }

    /// Gram-kernel equality.
    pub fn equal(&self, x: &SpanElement, y: &SpanElement) -> Result<bool> {
        Ok(self.norm_sq(&x.sub(y)?)?.is_zero())
    }

    /// φ(r) applied to x, checking that r lies in the acting category.
    pub fn phi(&self, r: &Partition, x: &SpanElement) -> Result<SpanElement> {
        if !self.category.contains(r) {
            return Err(Error::NotInCategory(format!(
                "{r} is not in {}",
                self.category.name()
            )));
        }
        self.phi_unchecked(r, x)
    }

    /// φ(r) applied to x for any partition r, linearly.
    pub fn phi_unchecked(&self, r: &Partition, x: &SpanElement) -> Result<SpanElement> {
        if r.upper() != x.degree {
            return Err(Error::DegreeMismatch(format!(
                "{r} acts on degree {}, got {}",
                r.upper(),
                x.degree
            )));
        }
        let mut out = SpanElement::zero(r.lower());
        match &self.model {
            Model::Projective { .. } => {
                let rstar = r.involution();
                for (label, c) in &x.terms {
                    let p = label.partition()?;
                    let (rp, loops) = vertical_concat(r, p)?;
                    let (rprs, _) = vertical_concat(&rp, &rstar)?;
                    out.add_term(Label::Part(rprs), &(c * &self.loop_factor(loops)));
                }
            }
            Model::Line { shift, .. } => {
                let rs = r.horizontal_concat(&named::identity(*shift));
                for (label, c) in &x.terms {
                    let (rp, loops) = vertical_concat(&rs, label.partition()?)?;
                    out.add_term(Label::Part(rp), &(c * &self.loop_factor(loops)));
                }
            }
            Model::CanonicalCG => {
                TensorSpace::with_budget(self.nn(), r.lower(), self.budget)?;
                for (label, c) in &x.terms {
                    for row in partition_column(r, self.nn(), label.index()?) {
                        out.add_term(Label::Index(multi_index(row, self.nn(), r.lower())), c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// φ(Σ c_r T_r) applied to x, for an intertwiner given by its partition
    /// expansion with rows of `lower` points.
    pub fn phi_sum(
        &self,
        terms: &[(Partition, Scalar)],
        lower: usize,
        x: &SpanElement,
    ) -> Result<SpanElement> {
        let mut out = SpanElement::zero(lower);
        for (r, c) in terms {
            if r.lower() != lower {
                return Err(Error::DegreeMismatch(format!(
                    "{r} does not end in degree {lower}"
                )));
            }
            out = out.add(&self.phi_unchecked(r, x)?.scale(c))?;
        }
        Ok(out)
    }

    fn loop_factor(&self, loops: usize) -> Scalar {
        match self.mutation {
            Some(Mutation::DropLoopFactor) => Scalar::one(),
            None => Scalar::power(self.n, loops as i32),
        }
    }

    /// ι(x ⊗ y), extended bilinearly from labels.
    pub fn iota(&self, x: &SpanElement, y: &SpanElement) -> Result<SpanElement> {
        let mut out = SpanElement::zero(x.degree + y.degree);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                let c = ca * cb;
                let (label, loops) = self.iota_labels(a, b)?;
                out.add_term(label, &(&c * &Scalar::power(self.n, loops as i32)));
            }
        }
        Ok(out)
    }

    fn iota_labels(&self, a: &Label, b: &Label) -> Result<(Label, usize)> {
        match (&self.model, a, b) {
            (Model::Projective { .. }, Label::Part(p), Label::Part(q))
            | (Model::Line { shift: 0, .. }, Label::Part(p), Label::Part(q)) => {
                Ok((Label::Part(p.horizontal_concat(q)), 0))
            }
            (Model::Line { shift: 1, .. }, Label::Part(p), Label::Part(q)) => {
                Ok((Label::Part(shifted_concat_1(p, q)?), 0))
            }
            (Model::Line { .. }, Label::Part(p), Label::Part(q)) => {
                let (r, loops) = shifted_concat_2_with_loops(p, q)?;
                Ok((Label::Part(r), loops))
            }
            (Model::CanonicalCG, Label::Index(i), Label::Index(j)) => {
                Ok((Label::Index(i.iter().chain(j).copied().collect()), 0))
            }
            _ => Err(Error::Precondition(format!(
                "labels {a}, {b} do not belong to this model"
            ))),
        }
    }

    /// The vector that a span element stands for in (ℂ^N)^⊗m, where m is the
    /// degree plus the shift. Inner products agree with the Gram form.
    pub fn concretize(&self, x: &SpanElement) -> Result<Vector> {
        let m = x.degree + self.shift();
        let space = TensorSpace::with_budget(self.nn(), m, self.budget)?;
        let mut v = vec![Scalar::zero(); space.dim()];
        let scale = if self.shift() > 0 {
            Scalar::half_power(self.n, -1)
        } else {
            Scalar::one()
        };
        for (label, c) in &x.terms {
            match label {
                Label::Index(i) => v[index_of(i, self.nn())] += c,
                Label::Part(p) => {
                    let c = c * &scale;
                    for pos in 0..space.dim() {
                        let lower = multi_index(pos, self.nn(), m);
                        if delta_first_column(p, &lower) {
                            v[pos] += &c;
                        }
                    }
                }
            }
        }
        Ok(v)
    }
}

/// δ_p with every upper point carrying the index 1.
fn delta_first_column(p: &Partition, lower: &[usize]) -> bool {
    let mut val = vec![0usize; p.num_blocks()];
    for &b in p.upper_labels() {
        val[b as usize] = 1;
    }
    for (&b, &i) in p.lower_labels().iter().zip(lower) {
        let slot = &mut val[b as usize];
        if *slot == 0 {
            *slot = i;
        } else if *slot != i {
            return false;
        }
    }
    true
}

/// The nested pairing R_n ∈ P(0, 2n).
pub fn r_n(n: usize) -> Partition {
    named::nest_pair(n)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Part(Partition),
    Index(Vec<usize>),
}

impl Label {
    pub fn partition(&self) -> Result<&Partition> {
        match self {
            Label::Part(p) => Ok(p),
            Label::Index(_) => Err(Error::Precondition("expected a partition label".into())),
        }
    }

    pub fn index(&self) -> Result<&[usize]> {
        match self {
            Label::Index(i) => Ok(i),
            Label::Part(_) => Err(Error::Precondition("expected a multi-index label".into())),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Part(p) => write!(f, "{p}"),
            Label::Index(i) => {
                write!(f, "e(")?;
                for (n, x) in i.iter().enumerate() {
                    if n > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A formal combination of labels of one degree. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanElement {
    pub degree: usize,
    #[serde(with = "term_list")]
    terms: BTreeMap<Label, Scalar>,
}

// JSON object keys must be strings, so the terms travel as a list of pairs.
mod term_list {
    use super::{Label, Scalar};
    use serde::{Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Label, Scalar>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Label, Scalar>, D::Error> {
        let v: Vec<(Label, Scalar)> = Vec::deserialize(d)?;
        Ok(v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

impl SpanElement {
    pub fn zero(degree: usize) -> SpanElement {
        SpanElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(degree: usize, label: Label) -> SpanElement {
        let mut s = SpanElement::zero(degree);
        s.terms.insert(label, Scalar::one());
        s
    }

    /// η_p (or T_p) for a partition label of the given degree.
    pub fn of(degree: usize, p: Partition) -> SpanElement {
        SpanElement::basis(degree, Label::Part(p))
    }

    pub fn add_term(&mut self, label: Label, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(label).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, label: &Label) -> Scalar {
        self.terms.get(label).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &SpanElement) -> Result<SpanElement> {
        if self.degree != o.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} vs {}",
                self.degree, o.degree
            )));
        }
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &SpanElement) -> Result<SpanElement> {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> SpanElement {
        let mut out = SpanElement::zero(self.degree);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), &(c * s));
        }
        out
    }
}

impl fmt::Display for SpanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (l, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpanElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free-function form of [`FunctorSpec::phi`].
pub fn phi_apply(spec: &FunctorSpec, r: &Partition, x: &SpanElement) -> Result<SpanElement> {
    spec.phi(r, x)
}

pub fn iota(spec: &FunctorSpec, x: &SpanElement, y: &SpanElement) -> Result<SpanElement> {
    spec.iota(x, y)
}

pub fn concretize(spec: &FunctorSpec, x: &SpanElement) -> Result<Vector> {
    spec.concretize(x)
}

/// The same model with morphisms drawn from a smaller category.
pub fn restrict(spec: &FunctorSpec, smaller: &CategorySpec) -> Result<FunctorSpec> {
    let rows = spec.bound.min(8);
    if !smaller.is_subcategory_of(&spec.category, rows) {
        return Err(Error::NotASubcategory(format!(
            "{} is not contained in {} up to {rows} points",
            smaller.name(),
            spec.category.name()
        )));
    }
    let mut out = spec.clone();
    out.category = smaller.clone();
    Ok(out)
}

/// Checks the module axioms up to `degree`: closure of the labels under ι and
/// under the action of every morphism of the acting category.
pub fn module_audit(spec: &FunctorSpec, degree: usize) -> std::result::Result<(), String> {
    let err = |e: Error| e.to_string();
    let bases: Vec<Vec<Label>> = (0..=degree)
        .map(|n| spec.basis(n))
        .collect::<Result<_>>()
        .map_err(err)?;
    let member = |n: usize, l: &Label| bases[n].contains(l);
    for a in 0..=degree {
        for b in 0..=degree - a {
            for x in &bases[a] {
                for y in &bases[b] {
                    let (l, _) = spec.iota_labels(x, y).map_err(err)?;
                    if !member(a + b, &l) {
                        return Err(format!("ι({x} ⊗ {y}) = {l} is not a label"));
                    }
                }
            }
        }
    }
    for k in 0..=degree {
        for l in 0..=degree {
            for r in enumerate_bounded(&spec.category, k, l, spec.bound).map_err(err)? {
                for x in &bases[k] {
                    let image = spec
                        .phi_unchecked(&r, &SpanElement::basis(k, x.clone()))
                        .map_err(err)?;
                    let bad = image
                        .terms()
                        .find(|(lab, _)| !member(l, lab))
                        .map(|(lab, _)| lab.to_string());
                    if let Some(bad) = bad {
                        return Err(format!("φ({r}) sends {x} to {bad}, which is not a label"));
                    }
                }
            }
        }
    }
    Ok(())
}
