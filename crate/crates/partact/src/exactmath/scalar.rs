//! Elements a + b·√N of ℚ[√N].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::Rat;

/// Exact scalar `a + b·√root`. The radical part is only present when `b != 0`,
/// in which case `root` is the (non-square) session parameter; otherwise
/// `root == 0`. Scalars with different nonzero roots never meet in one
/// computation.
#[derive(Clone, Default)]
pub struct Scalar {
    a: Rat,
    b: Rat,
    root: u32,
}

pub fn is_perfect_square(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c * c == n)
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            a: Rat::ZERO,
            b: Rat::ZERO,
            root: 0,
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            a: Rat::ONE,
            b: Rat::ZERO,
            root: 0,
        }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar {
            a: Rat::int(n),
            b: Rat::ZERO,
            root: 0,
        }
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar {
            a: Rat::new(n, d),
            b: Rat::ZERO,
            root: 0,
        }
    }

    pub fn rational(a: Rat) -> Scalar {
        Scalar {
            a,
            b: Rat::ZERO,
            root: 0,
        }
    }

    /// `a + b·√n`, folding √n when n is a perfect square.
    pub fn with_root(a: Rat, b: Rat, n: u32) -> Scalar {
        if b.is_zero() {
            return Scalar::rational(a);
        }
        if let Some(s) = is_perfect_square(n as u64) {
            return Scalar::rational(&a + &(&b * &Rat::int(s as i64)));
        }
        Scalar { a, b, root: n }
    }

    /// N^{e/2}.
    pub fn half_power(n: u32, e: i32) -> Scalar {
        let base = Rat::int(n as i64);
        if e % 2 == 0 {
            Scalar::rational(base.pow(e / 2))
        } else {
            // e = 2q + 1 with q = floor(e/2)
            let q = e.div_euclid(2);
            Scalar::with_root(Rat::ZERO, base.pow(q), n)
        }
    }

    /// N^e for an integer exponent.
    pub fn power(n: u32, e: i32) -> Scalar {
        Scalar::rational(Rat::int(n as i64).pow(e))
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn join_root(&self, o: &Scalar) -> u32 {
        match (self.root, o.root) {
            (0, r) | (r, 0) => r,
            (r, s) => {
                assert_eq!(r, s, "scalars over different radicands");
                r
            }
        }
    }

    fn build(a: Rat, b: Rat, root: u32) -> Scalar {
        if b.is_zero() {
            Scalar { a, b, root: 0 }
        } else {
            Scalar { a, b, root }
        }
    }

    /// Conjugate a − b√N.
    pub fn conj(&self) -> Scalar {
        Scalar::build(self.a.clone(), -&self.b, self.root)
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Scalar::rational(self.a.recip());
        }
        // (a - b√N)/(a² - N b²)
        let n = Rat::int(self.root as i64);
        let norm = &(&self.a * &self.a) - &(&n * &(&self.b * &self.b));
        let inv = norm.recip();
        Scalar::build(&self.a * &inv, -&(&self.b * &inv), self.root)
    }

    /// Sign of the real number a + b√N.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // opposite signs: compare a² with N b²
        let a2 = &self.a * &self.a;
        let nb2 = &Rat::int(self.root as i64) * &(&self.b * &self.b);
        match a2.cmp(&nb2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses "a", "a/b", "c√N", "a+c√N", "a-c√N" with rational a, c.
    pub fn parse(s: &str, n: u32) -> Option<Scalar> {
        let s = s.trim();
        let Some(pos) = s.find('√') else {
            return Rat::parse(s).map(Scalar::rational);
        };
        let head = &s[..pos];
        let tail = s[pos + '√'.len_utf8()..].trim();
        let root: u32 = if tail.is_empty() {
            n
        } else {
            tail.parse().ok()?
        };
        // split head into rational part and coefficient at the last +/- not at position 0
        let bytes = head.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' {
                split = Some(i);
                break;
            }
        }
        let (a_str, c_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let c = match c_str.trim() {
            "" | "+" => Rat::ONE,
            "-" => -Rat::ONE,
            t => Rat::parse(t.trim_start_matches('+'))?,
        };
        Some(Scalar::with_root(Rat::parse(a_str)?, c, root))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        self.a == o.a && self.b == o.b && (self.b.is_zero() || self.root == o.root)
    }
}
impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, o: &Scalar) -> Option<Ordering> {
        Some((self - o).signum().cmp(&0))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn add(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar {
                a: &self.a + &o.a,
                b: Rat::ZERO,
                root: 0,
            };
        }
        let root = self.join_root(o);
        Scalar::build(&self.a + &o.a, &self.b + &o.b, root)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn sub(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar {
                a: &self.a - &o.a,
                b: Rat::ZERO,
                root: 0,
            };
        }
        let root = self.join_root(o);
        Scalar::build(&self.a - &o.a, &self.b - &o.b, root)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[inline]
    fn mul(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar {
                a: &self.a * &o.a,
                b: Rat::ZERO,
                root: 0,
            };
        }
        let root = self.join_root(o);
        let n = Rat::int(root as i64);
        let a = &(&self.a * &o.a) + &(&n * &(&self.b * &o.b));
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Scalar::build(a, b, root)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        if self.b.is_zero() && o.b.is_zero() {
            return Scalar {
                a: &self.a / &o.a,
                b: Rat::ZERO,
                root: 0,
            };
        }
        self * &o.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            root: self.root,
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    #[inline]
    fn add_assign(&mut self, o: &Scalar) {
        if o.is_zero() {
            return;
        }
        *self = &*self + o;
    }
}
impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self += &o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        if o.is_zero() {
            return;
        }
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}
impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = if self.b.is_one() {
            String::new()
        } else if self.b == -Rat::ONE {
            "-".to_string()
        } else {
            self.b.to_string()
        };
        if self.a.is_zero() {
            write!(f, "{coeff}√{}", self.root)
        } else if self.b.signum() < 0 {
            write!(f, "{}{coeff}√{}", self.a, self.root)
        } else {
            write!(f, "{}+{coeff}√{}", self.a, self.root)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        // the radicand is spelled out after the √ sign, so no session value is needed
        Scalar::parse(&s, 0).ok_or_else(|| serde::de::Error::custom(format!("bad scalar {s:?}")))
    }
}
