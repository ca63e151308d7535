//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients over the fixed symbols `z, t, lambda, c, mu`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const NVARS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    T,
    Lambda,
    C,
    Mu,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::T, Var::Lambda, Var::C, Var::Mu];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::T => "t",
            Var::Lambda => "lambda",
            Var::C => "c",
            Var::Mu => "mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector indexed by [`Var::index`].
///
/// Ordered graded-lexicographically: total degree first, then lexicographic
/// with `z > t > lambda > c > mu`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a += b;
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a -= b;
        }
        out
    }

    fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a = (*a).min(b);
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in canonical form: no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: impl Into<BigInt>, mono: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(mono, c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    /// Symbols that occur with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exp(*v) > 0))
            .collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Coefficient of `v^k`, as a polynomial in the other symbols.
    pub fn coeff_in(&self, v: Var, k: u32) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                let mut rest = *m;
                rest.0[v.index()] = 0;
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Coefficients `[c_0, ..., c_deg]` of `self` as a polynomial in `v`.
    pub fn coefficients_in(&self, v: Var) -> Vec<IntPoly> {
        match self.degree_in(v) {
            None => vec![],
            Some(d) => (0..=d).map(|k| self.coeff_in(v, k)).collect(),
        }
    }

    /// `sum_k coeffs[k] v^k`.
    pub fn from_coefficients(v: Var, coeffs: &[IntPoly]) -> IntPoly {
        let mut out = IntPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            out = &out + &(c * &IntPoly::term(1, Monomial::var(v, k as u32)));
        }
        out
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut out = IntPoly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero();
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(*m, a * c);
        }
        out
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(*first, |g, m| g.gcd(m)),
        }
    }

    /// Replaces every occurrence of `from` by `to`.
    pub fn rename(&self, from: Var, to: Var) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm.0[from.index()];
            mm.0[from.index()] = 0;
            mm.0[to.index()] += e;
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Substitutes an integer for `v`.
    pub fn specialize(&self, v: Var, value: &BigInt) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = mm.0[v.index()];
            mm.0[v.index()] = 0;
            out.add_term(mm, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Numeric evaluation; symbols missing from `values` evaluate to 0.
    pub fn eval(&self, values: &[(Var, Complex64)]) -> Complex64 {
        let lookup = |v: Var| {
            values
                .iter()
                .find(|(w, _)| *w == v)
                .map(|(_, x)| *x)
                .unwrap_or_default()
        };
        let xs: Vec<Complex64> = Var::ALL.into_iter().map(lookup).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                m.0.iter()
                    .zip(&xs)
                    .fold(coeff, |acc, (e, x)| acc * x.powu(*e))
            })
            .sum()
    }

    /// Exact division; `None` if `divisor` does not divide `self` over the integers.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = IntPoly::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let t = IntPoly::term(q, m.div(&lm));
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Sign of the leading coefficient of the top power of `v`.
    pub fn leading_sign_in(&self, v: Var) -> i32 {
        let Some(d) = self.degree_in(v) else { return 0 };
        match self.coeff_in(v, d).leading() {
            Some((_, c)) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        self.scale(&-BigInt::one())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $f(self, rhs: IntPoly) -> IntPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

/// Canonical rendering: terms in descending graded-lex order, `*` between
/// factors, explicit `^` exponents, unit coefficients omitted.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = Var::ALL
                .into_iter()
                .filter(|v| m.exp(*v) > 0)
                .map(|v| match m.exp(v) {
                    1 => v.name().to_string(),
                    e => format!("{}^{}", v.name(), e),
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Parses sums of products such as `2*t*lambda^2 - 10*t*lambda + 1`.
impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty input"));
        }
        let mut out = IntPoly::zero();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else if !first {
                return Err(err("expected + or -"));
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            rest = tail;
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let mut coeff = sign;
            let mut mono = Monomial::one();
            for factor in term.split('*') {
                if let Ok(v) = factor.parse::<BigInt>() {
                    coeff *= v;
                    continue;
                }
                let (name, e) = match factor.split_once('^') {
                    Some((name, e)) => (name, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let v = Var::from_name(name).ok_or_else(|| err("unknown symbol"))?;
                mono.0[v.index()] += e;
            }
            out.add_term(mono, coeff);
        }
        Ok(out)
    }
}
