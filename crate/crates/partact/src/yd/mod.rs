//! Yetter-Drinfeld collections {a_k : K_k → K_{k+2}} over a spectral functor:
//! explicit collections and their condition checker, and symbolic collections
//! whose conditions become a polynomial system for the feasibility solver.
//!
//! Spans carry a generic coefficient so that the same instance code serves
//! both: exact scalars when checking a given collection, polynomials in the
//! unknown matrix entries when looking for one.

mod check;
mod obstruction;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Poly, Scalar};
use crate::functors::{gram, FunctorSpec, JMap, Label, Model, SpanElement};
use crate::partitions::{named, CategorySpec, Partition};

pub use check::{
    check_conditions, check_conditions_for, Bounds, Condition, ConditionReport, Counterexample,
    Status, YDReport,
};
pub use obstruction::{
    assemble_obstruction, decide_obstruction, decide_obstruction_with, replay_decision, Decision,
    ObstructionSystem, Outcome, Unknown,
};

/// Largest degree for which maps a_k are built.
pub const MAX_KMAX: usize = 8;

pub trait Coefficient: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_scalar(s: &Scalar) -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign(&mut self, o: &Self);
    fn scaled(&self, s: &Scalar) -> Self;
    fn times(&self, o: &Self) -> Self;
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        *self += o;
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self * s
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coefficient for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant(s.clone())
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add_assign(&mut self, o: &Self) {
        Poly::add_assign(self, o);
    }
    fn scaled(&self, s: &Scalar) -> Self {
        self.scale(s)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

/// A formal combination of labels of one degree.
#[derive(Clone, PartialEq)]
pub struct Span<C> {
    pub degree: usize,
    terms: BTreeMap<Label, C>,
}

impl<C: Coefficient> Span<C> {
    pub fn zero(degree: usize) -> Self {
        Span {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(degree: usize, label: Label) -> Self {
        let mut s = Span::zero(degree);
        s.add_term(label, &C::from_scalar(&Scalar::one()));
        s
    }

    pub fn from_element(x: &SpanElement) -> Self {
        let mut s = Span::zero(x.degree);
        for (l, c) in x.terms() {
            s.add_term(l.clone(), &C::from_scalar(c));
        }
        s
    }

    pub fn add_term(&mut self, label: Label, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Label, &C)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_degree(&self, o: &Self) -> Result<()> {
        if self.degree == o.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch(format!(
                "{} vs {}",
                self.degree, o.degree
            )))
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_degree(o)?;
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scaled(&Scalar::int(-1)))
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Span::zero(self.degree);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), &c.scaled(s));
        }
        out
    }

    pub fn times(&self, c: &C) -> Self {
        let mut out = Span::zero(self.degree);
        for (l, x) in &self.terms {
            out.add_term(l.clone(), &x.times(c));
        }
        out
    }

    /// φ(r), extended linearly from labels.
    pub fn phi(&self, spec: &FunctorSpec, r: &Partition) -> Result<Self> {
        if r.upper() != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{r} acts on degree {}, got {}",
                r.upper(),
                self.degree
            )));
        }
        let mut out = Span::zero(r.lower());
        for (l, c) in &self.terms {
            let image = spec.phi_unchecked(r, &SpanElement::basis(self.degree, l.clone()))?;
            for (m, s) in image.terms() {
                out.add_term(m.clone(), &c.scaled(s));
            }
        }
        Ok(out)
    }

    /// φ(Σ c_r T_r) for an expansion whose partitions all end in `lower` points.
    pub fn phi_sum(
        &self,
        spec: &FunctorSpec,
        terms: &[(Partition, Scalar)],
        lower: usize,
    ) -> Result<Self> {
        let mut out = Span::zero(lower);
        for (r, s) in terms {
            out = out.add(&self.phi(spec, r)?.scaled(s))?;
        }
        Ok(out)
    }

    /// ι(self ⊗ o), bilinear in the coefficients.
    pub fn iota(&self, spec: &FunctorSpec, o: &Self) -> Result<Self> {
        let mut out = Span::zero(self.degree + o.degree);
        for (a, ca) in &self.terms {
            let x = SpanElement::basis(self.degree, a.clone());
            for (b, cb) in &o.terms {
                let image = spec.iota(&x, &SpanElement::basis(o.degree, b.clone()))?;
                let c = ca.times(cb);
                for (m, s) in image.terms() {
                    out.add_term(m.clone(), &c.scaled(s));
                }
            }
        }
        Ok(out)
    }

    /// ⟨self, label⟩ under the Gram form.
    pub fn pair(&self, spec: &FunctorSpec, label: &Label) -> Result<C> {
        let mut acc = C::zero();
        for (l, c) in &self.terms {
            let g = spec.label_inner(l, label)?;
            if !g.is_zero() {
                acc.add_assign(&c.scaled(&g));
            }
        }
        Ok(acc)
    }

    /// J in coordinates over the labels of `j.form`, linearly in the
    /// coefficients.
    pub fn apply_j(&self, j: &JMap) -> Result<Self> {
        if j.form.degree != self.degree {
            return Err(Error::DegreeMismatch(format!(
                "J_{} applied in degree {}",
                j.form.degree, self.degree
            )));
        }
        let mut out = Span::zero(self.degree);
        for (l, c) in &self.terms {
            let p = j.form.position(l).ok_or_else(|| {
                Error::NotInCategory(format!("{l} is not a label of K_{}", self.degree))
            })?;
            for (r, target) in j.form.labels.iter().enumerate() {
                let s = j.coeffs.get(r, p);
                if !s.is_zero() {
                    out.add_term(target.clone(), &c.scaled(s));
                }
            }
        }
        Ok(out)
    }
}

impl Span<Scalar> {
    pub fn to_element(&self) -> SpanElement {
        let mut out = SpanElement::zero(self.degree);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c);
        }
        out
    }
}

impl Span<Poly> {
    pub fn eval(&self, value: &dyn Fn(u32) -> Scalar) -> Span<Scalar> {
        let mut out = Span::zero(self.degree);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), &c.eval(value));
        }
        out
    }
}

impl<C: fmt::Debug> fmt::Debug for Span<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}]", self.degree)?;
        f.debug_map()
            .entries(self.terms.iter().map(|(l, c)| (l.to_string(), c)))
            .finish()
    }
}

/// Anything that can produce a_k on a label of K_k.
pub trait Maps<C: Coefficient>: Sync {
    fn spec(&self) -> &FunctorSpec;
    fn kmax(&self) -> usize;
    fn image(&self, k: usize, label: &Label) -> Result<Span<C>>;

    /// a_k x, with k the degree of x.
    fn apply(&self, x: &Span<C>) -> Result<Span<C>> {
        let k = x.degree;
        if k > self.kmax() {
            return Err(Error::BoundExceeded(format!(
                "a_{k} requested with K_max = {}",
                self.kmax()
            )));
        }
        let mut out = Span::zero(k + 2);
        for (l, c) in x.terms() {
            out = out.add(&self.image(k, l)?.times(c))?;
        }
        Ok(out)
    }

    /// aⁿ_k x = a_{k+2(n−1)} ∘ ⋯ ∘ a_k x.
    fn iterate(&self, n: usize, x: &Span<C>) -> Result<Span<C>> {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.apply(&y)?;
        }
        Ok(y)
    }
}

/// Maps a_k given by the image of every spanning label of K_k, k ≤ K_max.
#[derive(Clone, Debug)]
pub struct YDCollection {
    pub spec: FunctorSpec,
    pub kmax: usize,
    pub name: String,
    maps: Vec<BTreeMap<Label, SpanElement>>,
}

impl Maps<Scalar> for YDCollection {
    fn spec(&self) -> &FunctorSpec {
        &self.spec
    }

    fn kmax(&self) -> usize {
        self.kmax
    }

    fn image(&self, k: usize, label: &Label) -> Result<Span<Scalar>> {
        let table = self
            .maps
            .get(k)
            .ok_or_else(|| Error::BoundExceeded(format!("a_{k} with K_max = {}", self.kmax)))?;
        let x = table
            .get(label)
            .ok_or_else(|| Error::NotInCategory(format!("{label} is not a label of K_{k}")))?;
        Ok(Span::from_element(x))
    }
}

fn require_kmax(kmax: usize) -> Result<()> {
    if kmax > MAX_KMAX {
        return Err(Error::BoundExceeded(format!(
            "K_max = {kmax} is above {MAX_KMAX}"
        )));
    }
    Ok(())
}

impl YDCollection {
    /// A collection from explicit images; every label of K_k, k ≤ K_max, must
    /// be present and map into degree k + 2.
    pub fn explicit(
        spec: FunctorSpec,
        kmax: usize,
        name: impl Into<String>,
        maps: Vec<BTreeMap<Label, SpanElement>>,
    ) -> Result<YDCollection> {
        require_kmax(kmax)?;
        if maps.len() != kmax + 1 {
            return Err(Error::SizeMismatch(format!(
                "{} maps for K_max = {kmax}",
                maps.len()
            )));
        }
        for (k, table) in maps.iter().enumerate() {
            for l in spec.basis(k)? {
                let img = table
                    .get(&l)
                    .ok_or_else(|| Error::Precondition(format!("a_{k} has no image for {l}")))?;
                if img.degree != k + 2 {
                    return Err(Error::DegreeMismatch(format!(
                        "a_{k}({l}) has degree {}",
                        img.degree
                    )));
                }
            }
        }
        Ok(YDCollection {
            spec,
            kmax,
            name: name.into(),
            maps,
        })
    }

    fn from_rule(
        spec: FunctorSpec,
        kmax: usize,
        name: &str,
        rule: impl Fn(usize, &Label) -> Result<SpanElement>,
    ) -> Result<YDCollection> {
        require_kmax(kmax)?;
        let maps = (0..=kmax)
            .map(|k| {
                spec.basis(k)?
                    .into_iter()
                    .map(|l| Ok((l.clone(), rule(k, &l)?)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<Vec<_>>>()?;
        YDCollection::explicit(spec, kmax, name, maps)
    }

    /// a_k(e_𝐢) = Σ_j e_j ⊗ e_𝐢 ⊗ e_j on K_k = (ℂ^N)^⊗k.
    pub fn canonical_cg(category: CategorySpec, n: u32, kmax: usize) -> Result<YDCollection> {
        let spec = FunctorSpec::canonical(category, n)?;
        YDCollection::from_rule(spec, kmax, "canonical", |k, l| {
            let i = l.index()?;
            let mut out = SpanElement::zero(k + 2);
            for j in 1..=n as usize {
                let idx: Vec<usize> = std::iter::once(j)
                    .chain(i.iter().copied())
                    .chain(std::iter::once(j))
                    .collect();
                out.add_term(Label::Index(idx), &Scalar::one());
            }
            Ok(out)
        })
    }

    /// a_k(T_p) = T_p nested in a pair, on an unshifted line model.
    pub fn nesting(spec: FunctorSpec, kmax: usize) -> Result<YDCollection> {
        if !matches!(spec.model, Model::Line { shift: 0, .. }) {
            return Err(Error::Precondition(format!(
                "{} is not an unshifted line model",
                spec.describe()
            )));
        }
        YDCollection::from_rule(spec, kmax, "nesting", |k, l| {
            Ok(SpanElement::basis(
                k + 2,
                Label::Part(l.partition()?.nest_in_pair()?),
            ))
        })
    }

    /// The same collection with a_k multiplied by `factor`.
    pub fn scaled(&self, k: usize, factor: &Scalar) -> Result<YDCollection> {
        let mut out = self.clone();
        let table = out
            .maps
            .get_mut(k)
            .ok_or_else(|| Error::BoundExceeded(format!("a_{k} with K_max = {}", self.kmax)))?;
        for img in table.values_mut() {
            *img = img.scale(factor);
        }
        out.name = format!("{} with a_{k} scaled by {factor}", self.name);
        Ok(out)
    }

    /// a_k as a matrix from the label coordinates of K_k to those of K_{k+2}.
    pub fn matrix(&self, k: usize) -> Result<Matrix> {
        let table = self
            .maps
            .get(k)
            .ok_or_else(|| Error::BoundExceeded(format!("a_{k} with K_max = {}", self.kmax)))?;
        let source = self.spec.basis(k)?;
        let target = gram(&self.spec, k + 2)?;
        let cols = source
            .iter()
            .map(|l| target.coords(&table[l]))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(&cols, target.len()))
    }
}

pub fn canonical_cg_collection(
    category: CategorySpec,
    n: u32,
    kmax: usize,
) -> Result<YDCollection> {
    YDCollection::canonical_cg(category, n, kmax)
}

pub fn nesting_collection(spec: FunctorSpec, kmax: usize) -> Result<YDCollection> {
    YDCollection::nesting(spec, kmax)
}

/// |^a ⊙ r ⊙ |^b.
pub(crate) fn padded(a: usize, r: &Partition, b: usize) -> Partition {
    named::identity(a)
        .horizontal_concat(r)
        .horizontal_concat(&named::identity(b))
}
