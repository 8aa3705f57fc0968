//! Sparse multivariate polynomials with exact coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::scalar::Scalar;

/// A monomial as sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = Vec<(u32, u32)>;

pub fn monomial_degree(m: &Monomial) -> u32 {
    m.iter().map(|&(_, e)| e).sum()
}

pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: Monomial = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(Monomial, Scalar)>", into = "Vec<(Monomial, Scalar)>")]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl From<Vec<(Monomial, Scalar)>> for Poly {
    fn from(v: Vec<(Monomial, Scalar)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in v {
            p.add_term(m, c);
        }
        p
    }
}

impl From<Poly> for Vec<(Monomial, Scalar)> {
    fn from(p: Poly) -> Self {
        p.terms.into_iter().collect()
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn var(v: u32) -> Poly {
        Poly::monomial(vec![(v, 1)], Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Vec::new())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(monomial_degree).max().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is the constant c (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms
            .keys()
            .flat_map(|m| m.iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, o: &Poly, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c * s);
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::int(-1));
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(monomial_mul(m1, m2), c1 * c2);
            }
        }
        r
    }

    /// Replaces variable `v` by the polynomial `e`.
    pub fn substitute(&self, v: u32, e: &Poly) -> Poly {
        if !self.terms.keys().any(|m| m.iter().any(|&(x, _)| x == v)) {
            return self.clone();
        }
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let mut rest: Monomial = Vec::with_capacity(m.len());
            let mut exp = 0;
            for &(x, k) in m {
                if x == v {
                    exp = k;
                } else {
                    rest.push((x, k));
                }
            }
            let mut piece = Poly::monomial(rest, c.clone());
            for _ in 0..exp {
                piece = piece.mul(e);
            }
            r.add_assign(&piece);
        }
        r
    }

    /// Evaluates with every variable assigned; missing variables count as zero.
    pub fn eval(&self, value: &dyn Fn(u32) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                t = &t * &value(v).pow(e);
                if t.is_zero() {
                    break;
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn render(&self, names: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            if m.is_empty() {
                let _ = write!(out, "{c}");
                continue;
            }
            if !c.is_one() {
                let _ = write!(out, "({c})*");
            }
            let parts: Vec<String> = m
                .iter()
                .map(|&(v, e)| {
                    if e == 1 {
                        names(v)
                    } else {
                        format!("{}^{e}", names(v))
                    }
                })
                .collect();
            out.push_str(&parts.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_substitution() {
        let x = Poly::var(0);
        let y = Poly::var(1);
        let p = x.add(&y).mul(&x.sub(&y)); // x² − y²
        assert_eq!(p.degree(), 2);
        assert_eq!(p.len(), 2);
        let q = p.substitute(1, &x); // x² − x² = 0
        assert!(q.is_zero());
        let r = p.substitute(0, &Poly::constant(Scalar::int(3)));
        assert_eq!(r.eval(&|_| Scalar::int(2)), Scalar::int(5));
    }
}
