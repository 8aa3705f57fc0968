//! Staged feasibility for systems of polynomial equations of degree at most two.
//!
//! The solver alternates between a linear stage (every monomial of degree two
//! is treated as an independent symbol, so each reduced row is a genuine
//! consequence of the system) and substitution of the linear relations found.
//! When nothing linear is left it inspects the nonlinear residue for
//! quadratics that cannot vanish over the reals, and splits on univariate
//! quadratics with roots in the scalar field. Every conclusion is recorded as
//! a sequence of steps that [`replay`] checks independently.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::poly::{monomial_degree, Monomial, Poly};
use super::rat::Rat;
use super::scalar::{is_perfect_square, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Equation {
    pub label: String,
    pub poly: Poly,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ConstraintSystem {
    pub names: Vec<String>,
    pub equations: Vec<Equation>,
    /// Radicand used when a root of a quadratic needs √N.
    pub root: u32,
}

impl ConstraintSystem {
    pub fn new(root: u32) -> ConstraintSystem {
        ConstraintSystem {
            names: Vec::new(),
            equations: Vec::new(),
            root,
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> u32 {
        self.names.push(name.into());
        (self.names.len() - 1) as u32
    }

    pub fn push(&mut self, label: impl Into<String>, poly: Poly) {
        if !poly.is_zero() {
            self.equations.push(Equation {
                label: label.into(),
                poly,
            });
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.equations
            .iter()
            .map(|e| e.poly.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn name(&self, v: u32) -> String {
        self.names
            .get(v as usize)
            .cloned()
            .unwrap_or_else(|| format!("x{v}"))
    }

    /// Checks an assignment by substitution into every equation.
    pub fn satisfied_by(&self, value: &dyn Fn(u32) -> Scalar) -> std::result::Result<(), String> {
        for e in &self.equations {
            let v = e.poly.eval(value);
            if !v.is_zero() {
                return Err(format!("{} evaluates to {v}", e.label));
            }
        }
        Ok(())
    }
}

/// Reference to an equation inside a derivation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Src {
    Orig(String),
    Derived(usize),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Contradiction {
    /// The source equation reads c = 0 with c ≠ 0.
    NonzeroConstant,
    /// The source equation equals ±(Σ wⱼ Lⱼ² + c) with wⱼ ≥ 0 and c > 0,
    /// so it has no real solution.
    SumOfSquares {
        sign: i32,
        weights: Vec<Scalar>,
        forms: Vec<Poly>,
        constant: Scalar,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Step {
    /// Derived equation Σ cᵢ·srcᵢ, which must equal `result`.
    Combine {
        terms: Vec<(Src, Scalar)>,
        result: Poly,
    },
    /// The source reads var + rest = 0; var is replaced by −rest everywhere.
    Substitute {
        var: u32,
        source: Src,
    },
    /// The source is univariate in var and factors as lead·Π(var − root);
    /// each case continues with var fixed to the matching root.
    Branch {
        var: u32,
        source: Src,
        roots: Vec<Scalar>,
        cases: Vec<Vec<Step>>,
    },
    Contradict {
        source: Src,
        kind: Contradiction,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub steps: Vec<Step>,
}

impl Certificate {
    /// Contradiction kinds at the leaves of the derivation tree.
    pub fn leaf_kinds(&self) -> Vec<&Contradiction> {
        fn walk<'a>(steps: &'a [Step], out: &mut Vec<&'a Contradiction>) {
            for s in steps {
                match s {
                    Step::Contradict { kind, .. } => out.push(kind),
                    Step::Branch { cases, .. } => cases.iter().for_each(|c| walk(c, out)),
                    _ => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.steps, &mut out);
        out
    }

    pub fn all_leaves_constant(&self) -> bool {
        let k = self.leaf_kinds();
        !k.is_empty()
            && k.iter()
                .all(|c| matches!(c, Contradiction::NonzeroConstant))
    }

    /// Labels of the original equations the derivation uses.
    pub fn used_labels(&self) -> Vec<String> {
        fn walk(steps: &[Step], out: &mut Vec<String>) {
            for s in steps {
                match s {
                    Step::Combine { terms, .. } => {
                        for (src, _) in terms {
                            if let Src::Orig(l) = src {
                                out.push(l.clone());
                            }
                        }
                    }
                    Step::Substitute {
                        source: Src::Orig(l),
                        ..
                    }
                    | Step::Contradict {
                        source: Src::Orig(l),
                        ..
                    } => out.push(l.clone()),
                    Step::Branch { source, cases, .. } => {
                        if let Src::Orig(l) = source {
                            out.push(l.clone());
                        }
                        cases.iter().for_each(|c| walk(c, out));
                    }
                    _ => {}
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.steps, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Feasibility {
    Feasible(BTreeMap<u32, Scalar>),
    Infeasible(Certificate),
    Undecided { residue: Vec<Poly> },
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub max_branch_depth: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_branch_depth: 8,
        }
    }
}

// ---------------------------------------------------------------------------
// working state shared by the solver and the replayer

#[derive(Clone)]
struct State {
    labels: HashMap<String, usize>,
    orig: Vec<Poly>,
    derived: Vec<Poly>,
    subs: Vec<(u32, Poly)>,
}

impl State {
    fn new(sys: &ConstraintSystem) -> State {
        State {
            labels: sys
                .equations
                .iter()
                .enumerate()
                .map(|(i, e)| (e.label.clone(), i))
                .collect(),
            orig: sys.equations.iter().map(|e| e.poly.clone()).collect(),
            derived: Vec::new(),
            subs: Vec::new(),
        }
    }

    fn get(&self, s: &Src) -> std::result::Result<&Poly, String> {
        match s {
            Src::Orig(l) => self
                .labels
                .get(l)
                .map(|&i| &self.orig[i])
                .ok_or_else(|| format!("unknown equation {l:?}")),
            Src::Derived(i) => self
                .derived
                .get(*i)
                .ok_or_else(|| format!("unknown derived equation {i}")),
        }
    }

    fn substitute(&mut self, var: u32, expr: &Poly) {
        for p in self.orig.iter_mut().chain(self.derived.iter_mut()) {
            *p = p.substitute(var, expr);
        }
        self.subs.push((var, expr.clone()));
    }

    fn src_of(&self, key: (u8, usize), sys_labels: &[String]) -> Src {
        if key.0 == 0 {
            Src::Orig(sys_labels[key.1].clone())
        } else {
            Src::Derived(key.1)
        }
    }
}

/// Returns `Some((var, rest))` when p = c·var + rest with rest free of var
/// and of degree ≤ 1, normalized so that the coefficient of var is one.
fn linear_head(p: &Poly, var: u32) -> Option<Poly> {
    let key: Monomial = vec![(var, 1)];
    let c = p.coeff(&key);
    if c.is_zero() {
        return None;
    }
    let mut rest = Poly::zero();
    for (m, k) in p.terms() {
        if *m == key {
            continue;
        }
        if m.iter().any(|&(v, _)| v == var) {
            return None;
        }
        rest.add_term(m.clone(), k.clone());
    }
    Some(rest.scale(&c.inv()))
}

/// A variable that p contains only as a degree-one term, and that every
/// current equation contains only in that form.
fn eliminable(p: &Poly, state: &State) -> Option<u32> {
    let linear_only = |q: &Poly, v: u32| {
        q.terms()
            .all(|(m, _)| !m.iter().any(|&(x, _)| x == v) || *m == vec![(v, 1)])
    };
    p.vars().into_iter().find(|&v| {
        linear_head(p, v).is_some()
            && state
                .orig
                .iter()
                .chain(state.derived.iter())
                .all(|q| linear_only(q, v))
    })
}

/// Univariate coefficients (c₀, c₁, c₂, …) when p only involves `var`.
fn univariate(p: &Poly) -> Option<(u32, Vec<Scalar>)> {
    let vars = p.vars();
    if vars.len() != 1 {
        return None;
    }
    let v = *vars.iter().next().unwrap();
    let deg = p.degree() as usize;
    let mut c = vec![Scalar::zero(); deg + 1];
    for (m, k) in p.terms() {
        c[monomial_degree(m) as usize] = k.clone();
    }
    Some((v, c))
}

/// Square root inside ℚ or ℚ·√root of a rational value, if it exists.
pub fn field_sqrt(d: &Scalar, root: u32) -> Option<Scalar> {
    let r = d.as_rational()?;
    if r.signum() < 0 {
        return None;
    }
    if r.is_zero() {
        return Some(Scalar::zero());
    }
    let sq = |x: &Rat| -> Option<Rat> {
        let n = x.numer();
        let dd = x.denom();
        let (ns, ds) = (n.sqrt(), dd.sqrt());
        if &ns * &ns == n && &ds * &ds == dd {
            Some(Rat::from_big(num_rational::BigRational::new(ns, ds)))
        } else {
            None
        }
    };
    if let Some(s) = sq(r) {
        return Some(Scalar::rational(s));
    }
    if root > 1 && is_perfect_square(root as u64).is_none() {
        let q = r / &Rat::int(root as i64);
        if let Some(s) = sq(&q) {
            return Some(Scalar::with_root(Rat::ZERO, s, root));
        }
    }
    None
}

/// Completes squares: p = sign·(Σ wⱼ Lⱼ² + c) with wⱼ ≥ 0, c > 0.
fn positive_squares(p: &Poly) -> Option<Contradiction> {
    if p.degree() > 2 {
        return None;
    }
    'sign: for sign in [1, -1] {
        let mut rest = p.scale(&Scalar::int(sign as i64));
        let mut weights = Vec::new();
        let mut forms = Vec::new();
        let vars: Vec<u32> = rest.vars().into_iter().collect();
        for v in vars {
            let a = rest.coeff(&vec![(v, 2)]);
            // h collects the terms linear in v: rest = a v² + v·h + r
            let mut h = Poly::zero();
            let mut r = Poly::zero();
            for (m, c) in rest.terms() {
                match m.iter().find(|&&(x, _)| x == v) {
                    Some(&(_, 2)) => {}
                    Some(&(_, 1)) => {
                        let other: Monomial = m.iter().copied().filter(|&(x, _)| x != v).collect();
                        h.add_term(other, c.clone());
                    }
                    Some(_) => continue 'sign,
                    None => r.add_term(m.clone(), c.clone()),
                }
            }
            match a.signum() {
                0 => {
                    if !h.is_zero() {
                        continue 'sign;
                    }
                }
                s if s < 0 => continue 'sign,
                _ => {
                    let inv2a = (&a * &Scalar::int(2)).inv();
                    let mut form = Poly::var(v);
                    form.add_scaled(&h, &inv2a);
                    let hh = h.mul(&h);
                    r.add_scaled(&hh, &(-(&Scalar::int(4) * &a).inv()));
                    weights.push(a);
                    forms.push(form);
                }
            }
            rest = r;
        }
        let c = rest.as_constant()?;
        if c.signum() > 0 {
            return Some(Contradiction::SumOfSquares {
                sign,
                weights,
                forms,
                constant: c,
            });
        }
    }
    None
}

fn check_contradiction(p: &Poly, kind: &Contradiction) -> std::result::Result<(), String> {
    match kind {
        Contradiction::NonzeroConstant => match p.as_constant() {
            Some(c) if !c.is_zero() => Ok(()),
            _ => Err(format!(
                "expected a nonzero constant, found {}",
                p.render(&|v| format!("x{v}"))
            )),
        },
        Contradiction::SumOfSquares {
            sign,
            weights,
            forms,
            constant,
        } => {
            if weights.len() != forms.len() {
                return Err("weights and forms differ in length".into());
            }
            if weights.iter().any(|w| w.signum() < 0) || constant.signum() <= 0 {
                return Err("negative weight or nonpositive constant".into());
            }
            let mut s = Poly::constant(constant.clone());
            for (w, f) in weights.iter().zip(forms) {
                if f.degree() > 1 {
                    return Err("square of a nonlinear form".into());
                }
                s.add_scaled(&f.mul(f), w);
            }
            if *sign != 1 && *sign != -1 {
                return Err("sign must be ±1".into());
            }
            if s.scale(&Scalar::int(*sign as i64)) == *p {
                Ok(())
            } else {
                Err("sum of squares does not match the equation".into())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// linear stage

type ColKey = (u8, Monomial);
type Row = BTreeMap<ColKey, Scalar>;
type Combo = BTreeMap<(u8, usize), Scalar>;

fn col_key(m: &Monomial) -> ColKey {
    let d = monomial_degree(m);
    let rank = if d >= 2 {
        0
    } else if d == 1 {
        1
    } else {
        2
    };
    (rank, m.clone())
}

fn row_of(p: &Poly) -> Row {
    p.terms().map(|(m, c)| (col_key(m), c.clone())).collect()
}

fn poly_of(r: &Row) -> Poly {
    let mut p = Poly::zero();
    for ((_, m), c) in r {
        p.add_term(m.clone(), c.clone());
    }
    p
}

fn axpy<K: Ord + Clone>(dst: &mut BTreeMap<K, Scalar>, src: &BTreeMap<K, Scalar>, f: &Scalar) {
    for (k, v) in src {
        let t = v * f;
        match dst.entry(k.clone()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !t.is_zero() {
                    e.insert(t);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &t;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

struct Echelon {
    rows: Vec<(Row, Combo)>,
    lead: HashMap<ColKey, usize>,
}

enum LinearOutcome {
    Contradiction(Combo, Poly),
    Done(Echelon),
}

fn linear_stage(state: &State) -> LinearOutcome {
    let mut ech = Echelon {
        rows: Vec::new(),
        lead: HashMap::new(),
    };
    let sources = state
        .orig
        .iter()
        .enumerate()
        .map(|(i, p)| ((0u8, i), p))
        .chain(state.derived.iter().enumerate().map(|(i, p)| ((1u8, i), p)));
    for (key, p) in sources {
        if p.is_zero() {
            continue;
        }
        let mut row = row_of(p);
        let mut combo: Combo = BTreeMap::new();
        combo.insert(key, Scalar::one());
        loop {
            let Some((lead, c)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
                break;
            };
            let Some(&pi) = ech.lead.get(&lead) else {
                break;
            };
            let f = -c;
            let (prow, pcombo) = &ech.rows[pi];
            axpy(&mut row, prow, &f);
            axpy(&mut combo, pcombo, &f);
        }
        let Some((lead, c)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            continue;
        };
        if lead.0 == 2 {
            return LinearOutcome::Contradiction(combo, poly_of(&row));
        }
        let inv = c.inv();
        if !inv.is_one() {
            for v in row.values_mut() {
                *v = &*v * &inv;
            }
            for v in combo.values_mut() {
                *v = &*v * &inv;
            }
        }
        ech.lead.insert(lead, ech.rows.len());
        ech.rows.push((row, combo));
    }
    LinearOutcome::Done(ech)
}

/// Fully reduces the rows whose leading column is a variable of degree one
/// against each other and returns them.
fn reduced_linear_rows(ech: &Echelon) -> Vec<(Row, Combo)> {
    let mut lin: Vec<(Row, Combo)> = ech
        .rows
        .iter()
        .filter(|(r, _)| r.keys().next().is_some_and(|k| k.0 == 1))
        .cloned()
        .collect();
    lin.sort_by(|a, b| b.0.keys().next().cmp(&a.0.keys().next()));
    // lin is ordered by descending lead; eliminate each lead from rows with smaller leads
    for i in 0..lin.len() {
        let lead = lin[i].0.keys().next().unwrap().clone();
        let (pr, pc) = lin[i].clone();
        for (j, item) in lin.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            if let Some(c) = item.0.get(&lead).cloned() {
                let f = -c;
                axpy(&mut item.0, &pr, &f);
                axpy(&mut item.1, &pc, &f);
            }
        }
    }
    lin
}

fn combo_terms(state: &State, combo: &Combo, labels: &[String]) -> Vec<(Src, Scalar)> {
    combo
        .iter()
        .map(|(k, v)| (state.src_of(*k, labels), v.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// solver

pub fn staged_feasibility(sys: &ConstraintSystem) -> Result<Feasibility> {
    staged_feasibility_with(sys, &SolverOptions::default())
}

pub fn staged_feasibility_with(
    sys: &ConstraintSystem,
    opts: &SolverOptions,
) -> Result<Feasibility> {
    if sys.max_degree() > 2 {
        return Err(Error::DegreeTooHigh(sys.max_degree()));
    }
    let labels: Vec<String> = sys.equations.iter().map(|e| e.label.clone()).collect();
    let mut uniq = labels.clone();
    uniq.sort();
    uniq.dedup();
    if uniq.len() != labels.len() {
        return Err(Error::Precondition("equation labels must be unique".into()));
    }
    let state = State::new(sys);
    let mut steps = Vec::new();
    let out = solve(state, &mut steps, &labels, sys, opts, 0);
    Ok(match out {
        Outcome::Infeasible => Feasibility::Infeasible(Certificate { steps }),
        Outcome::Feasible(a) => {
            let value = |v: u32| a.get(&v).cloned().unwrap_or_else(Scalar::zero);
            match sys.satisfied_by(&value) {
                Ok(()) => Feasibility::Feasible(a),
                Err(_) => Feasibility::Undecided {
                    residue: Vec::new(),
                },
            }
        }
        Outcome::Undecided(r) => Feasibility::Undecided { residue: r },
    })
}

enum Outcome {
    Feasible(BTreeMap<u32, Scalar>),
    Infeasible,
    Undecided(Vec<Poly>),
}

fn assignment_from(state: &State, fixed: &BTreeMap<u32, Scalar>) -> BTreeMap<u32, Scalar> {
    let mut a = fixed.clone();
    for (v, e) in state.subs.iter().rev() {
        let val = e.eval(&|x| a.get(&x).cloned().unwrap_or_else(Scalar::zero));
        a.insert(*v, val);
    }
    a
}

fn solve(
    mut state: State,
    steps: &mut Vec<Step>,
    labels: &[String],
    sys: &ConstraintSystem,
    opts: &SolverOptions,
    depth: usize,
) -> Outcome {
    let ech = loop {
        match linear_stage(&state) {
            LinearOutcome::Contradiction(combo, p) => {
                let idx = state.derived.len();
                steps.push(Step::Combine {
                    terms: combo_terms(&state, &combo, labels),
                    result: p.clone(),
                });
                state.derived.push(p);
                steps.push(Step::Contradict {
                    source: Src::Derived(idx),
                    kind: Contradiction::NonzeroConstant,
                });
                return Outcome::Infeasible;
            }
            LinearOutcome::Done(ech) => {
                let lin = reduced_linear_rows(&ech);
                if lin.is_empty() {
                    break ech;
                }
                let mut pending = Vec::new();
                for (row, combo) in &lin {
                    let p = poly_of(row);
                    let idx = state.derived.len();
                    steps.push(Step::Combine {
                        terms: combo_terms(&state, combo, labels),
                        result: p.clone(),
                    });
                    state.derived.push(p.clone());
                    let var = row.keys().next().unwrap().1[0].0;
                    pending.push((var, idx));
                }
                for (var, idx) in pending {
                    let rest = linear_head(&state.derived[idx], var).expect("reduced linear row");
                    steps.push(Step::Substitute {
                        var,
                        source: Src::Derived(idx),
                    });
                    state.substitute(var, &rest.neg());
                }
            }
        }
    };

    if state
        .orig
        .iter()
        .chain(state.derived.iter())
        .all(Poly::is_zero)
    {
        return Outcome::Feasible(assignment_from(&state, &BTreeMap::new()));
    }

    // the nonlinear residue: rows of the echelon form, each a combination of current equations
    let residue: Vec<(Poly, &Combo)> = ech.rows.iter().map(|(r, c)| (poly_of(r), c)).collect();

    // zero assignment of the remaining unknowns
    let zero_ok = residue
        .iter()
        .all(|(p, _)| p.eval(&|_| Scalar::zero()).is_zero());
    if zero_ok {
        let a = assignment_from(&state, &BTreeMap::new());
        let value = |v: u32| a.get(&v).cloned().unwrap_or_else(Scalar::zero);
        if sys.satisfied_by(&value).is_ok() {
            return Outcome::Feasible(a);
        }
    }

    for (p, combo) in &residue {
        if let Some(kind) = positive_squares(p) {
            let idx = state.derived.len();
            steps.push(Step::Combine {
                terms: combo_terms(&state, combo, labels),
                result: p.clone(),
            });
            steps.push(Step::Contradict {
                source: Src::Derived(idx),
                kind,
            });
            return Outcome::Infeasible;
        }
    }

    // a residue linear in a variable that occurs only linearly everywhere:
    // solving for it keeps every equation of degree at most two
    let pick = residue
        .iter()
        .find_map(|(p, combo)| eliminable(p, &state).map(|v| (v, p.clone(), (*combo).clone())));
    if let Some((var, p, combo)) = pick {
        let idx = state.derived.len();
        steps.push(Step::Combine {
            terms: combo_terms(&state, &combo, labels),
            result: p.clone(),
        });
        state.derived.push(p.clone());
        let rest = linear_head(&p, var).expect("eliminable variable");
        steps.push(Step::Substitute {
            var,
            source: Src::Derived(idx),
        });
        state.substitute(var, &rest.neg());
        return solve(state, steps, labels, sys, opts, depth);
    }

    if depth < opts.max_branch_depth {
        for (p, combo) in &residue {
            let Some((var, c)) = univariate(p) else {
                continue;
            };
            let Some(roots) = quadratic_roots(&c, sys.root) else {
                continue;
            };
            let idx = state.derived.len();
            let mut branch_steps = Vec::new();
            let mut base = state.clone();
            base.derived.push(p.clone());
            let combine = Step::Combine {
                terms: combo_terms(&state, combo, labels),
                result: p.clone(),
            };
            let mut cases = Vec::new();
            let mut undecided = None;
            for r in &roots {
                let mut st = base.clone();
                st.substitute(var, &Poly::constant(r.clone()));
                let mut case_steps = Vec::new();
                match solve(st, &mut case_steps, labels, sys, opts, depth + 1) {
                    Outcome::Infeasible => cases.push(case_steps),
                    Outcome::Feasible(mut a) => {
                        a.insert(var, r.clone());
                        let full = assignment_from(&state, &a);
                        return Outcome::Feasible(full);
                    }
                    Outcome::Undecided(res) => {
                        undecided = Some(res);
                        break;
                    }
                }
            }
            if let Some(res) = undecided {
                // try the next candidate before giving up
                let _ = res;
                continue;
            }
            branch_steps.push(combine);
            branch_steps.push(Step::Branch {
                var,
                source: Src::Derived(idx),
                roots,
                cases,
            });
            steps.extend(branch_steps);
            return Outcome::Infeasible;
        }
    }

    Outcome::Undecided(residue.into_iter().map(|(p, _)| p).collect())
}

/// All roots of c₀ + c₁x + c₂x² in the scalar field when they exist there.
fn quadratic_roots(c: &[Scalar], root: u32) -> Option<Vec<Scalar>> {
    match c.len() {
        2 => Some(vec![-(&c[0] / &c[1])]),
        3 => {
            let (a, b, k) = (&c[2], &c[1], &c[0]);
            let disc = &(b * b) - &(&Scalar::int(4) * &(a * k));
            if disc.signum() < 0 {
                return None;
            }
            let s = field_sqrt(&disc, root)?;
            let two_a = a * &Scalar::int(2);
            let r1 = &(&-b + &s) / &two_a;
            let r2 = &(&-b - &s) / &two_a;
            if r1 == r2 {
                Some(vec![r1])
            } else {
                Some(vec![r1, r2])
            }
        }
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// replay

/// Re-derives the certificate from the system's equations. Only labels are
/// used to find original equations, so a certificate for a subsystem replays
/// against any larger system.
pub fn replay(sys: &ConstraintSystem, cert: &Certificate) -> std::result::Result<(), String> {
    let state = State::new(sys);
    replay_steps(state, &cert.steps)
}

fn replay_steps(mut state: State, steps: &[Step]) -> std::result::Result<(), String> {
    for (i, step) in steps.iter().enumerate() {
        match step {
            Step::Combine { terms, result } => {
                let mut acc = Poly::zero();
                for (src, c) in terms {
                    acc.add_scaled(state.get(src)?, c);
                }
                if acc != *result {
                    return Err(format!(
                        "step {i}: combination does not give the stated equation"
                    ));
                }
                state.derived.push(acc);
            }
            Step::Substitute { var, source } => {
                let p = state.get(source)?;
                let rest = linear_head(p, *var)
                    .ok_or_else(|| format!("step {i}: source is not linear in x{var}"))?;
                state.substitute(*var, &rest.neg());
            }
            Step::Contradict { source, kind } => {
                check_contradiction(state.get(source)?, kind)
                    .map_err(|e| format!("step {i}: {e}"))?;
                return Ok(());
            }
            Step::Branch {
                var,
                source,
                roots,
                cases,
            } => {
                let p = state.get(source)?.clone();
                let (v, c) = univariate(&p)
                    .ok_or_else(|| format!("step {i}: branch source is not univariate"))?;
                if v != *var || roots.len() != cases.len() || roots.is_empty() {
                    return Err(format!("step {i}: malformed branch"));
                }
                // p must equal lead·Π(x − r) so that the cases are exhaustive
                let lead = c.last().unwrap().clone();
                let mut prod = Poly::constant(lead);
                for r in roots {
                    let mut f = Poly::var(*var);
                    f.add_term(Vec::new(), -r);
                    prod = prod.mul(&f);
                }
                if prod != p {
                    return Err(format!("step {i}: roots do not factor the branch equation"));
                }
                for (r, case) in roots.iter().zip(cases) {
                    let mut st = state.clone();
                    st.substitute(*var, &Poly::constant(r.clone()));
                    replay_steps(st, case).map_err(|e| format!("step {i}, case {r}: {e}"))?;
                }
                return Ok(());
            }
        }
    }
    Err("derivation ends without a contradiction".into())
}
