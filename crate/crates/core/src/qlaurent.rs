//! Exact Laurent polynomials in `q` over the rationals, rational functions in
//! `q`, and the q-integers / q-binomials built from them.
//!
//! Everything here is exact. Equality is coefficient-wise on a canonical form
//! (no zero coefficients are ever stored), so `==` is the correctness test used
//! throughout the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely supported map `exponent -> coefficient`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(rat(1), 0)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(rat(1), exp)
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Specialization at `q = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// The image under `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Units of the Laurent ring are the nonzero monomials.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(c.recip(), -e))
    }

    /// Exact division. Fails if `divisor` is zero or leaves a nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::InexactDivision("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (sa, a) = to_poly(self);
        let (sb, b) = to_poly(divisor);
        let (quot, rem) = poly_div_rem(&a, &b);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("({self}) / ({divisor})")));
        }
        Ok(from_poly(sa - sb, &quot))
    }
}

/// Writes `p = q^shift * P(q)` with `P(0) != 0`; `P` in increasing degree.
fn to_poly(p: &LaurentPoly) -> (i64, Vec<BigRational>) {
    let Some(lo) = p.min_exp() else {
        return (0, Vec::new());
    };
    let hi = p.max_exp().unwrap_or(lo);
    let coeffs = (lo..=hi).map(|e| p.coeff(e)).collect();
    (lo, coeffs)
}

fn from_poly(shift: i64, coeffs: &[BigRational]) -> LaurentPoly {
    LaurentPoly::from_terms(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (shift + k as i64, c.clone())),
    )
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn poly_div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("nonempty").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let k = rem.len() - b.len();
        let c = rem.last().expect("nonempty") / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_monic_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = poly_div_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in x.iter_mut() {
            *c /= &lead;
        }
    }
    x
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $T:ty) => {
        impl $tr<$T> for $T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$T> for $T {
            type Output = $T;
            fn $method(self, rhs: &$T) -> $T {
                (&self).$method(rhs)
            }
        }
        impl $tr<$T> for &$T {
            type Output = $T;
            fn $method(self, rhs: $T) -> $T {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

forward_binop!(Add, add, LaurentPoly);
forward_binop!(Sub, sub, LaurentPoly);
forward_binop!(Mul, mul, LaurentPoly);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical rendering: decreasing exponents, e.g. `q^2 + 1 + q^-2`,
/// `2*q - 1/3*q^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                e => format!("q^{e}"),
            };
            if var.is_empty() {
                f.write_str(&fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_term(body: &str) -> Result<(i64, BigRational)> {
    let bad = || Error::Parse(format!("bad term `{body}`"));
    match body.split_once('q') {
        None => Ok((0, parse_rational(body)?)),
        Some((coef, exp)) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { rat(1) } else { parse_rational(coef)? };
            let e = if exp.is_empty() {
                1
            } else {
                exp.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            Ok((e, c))
        }
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let chars: Vec<char> = compact.chars().collect();
        let mut out = LaurentPoly::zero();
        let mut start = 0;
        let mut k = 0;
        while k <= chars.len() {
            let at_split = k == chars.len()
                || (k > start && (chars[k] == '+' || chars[k] == '-') && chars[k - 1] != '^');
            if at_split {
                let piece: String = chars[start..k].iter().collect();
                let (sign, body) = match piece.chars().next() {
                    Some('-') => (-1, &piece[1..]),
                    Some('+') => (1, &piece[1..]),
                    _ => (1, piece.as_str()),
                };
                if body.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in `{s}`")));
                }
                let (e, c) = parse_term(body)?;
                out.add_term(e, c * rat(sign));
                start = k;
            }
            k += 1;
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `Q(q)`, kept reduced: the denominator is a monic polynomial
/// with nonzero constant term and is coprime to the numerator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (sn, n) = to_poly(&num);
        let (sd, d) = to_poly(&den);
        let g = poly_monic_gcd(&n, &d);
        let (n, _) = poly_div_rem(&n, &g);
        let (d, _) = poly_div_rem(&d, &g);
        let lead = d.last().expect("nonzero denominator").clone();
        let n: Vec<_> = n.iter().map(|c| c / &lead).collect();
        let d: Vec<_> = d.iter().map(|c| c / &lead).collect();
        Ok(Self { num: from_poly(sn - sd, &n), den: from_poly(0, &d) })
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some` when the value lies in the Laurent ring.
    pub fn as_laurent(&self) -> Option<LaurentPoly> {
        self.den.is_one().then(|| self.num.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
            .expect("product of nonzero denominators")
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den - &o.num * &self.den, &self.den * &o.den)
            .expect("product of nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("product of nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Domain("division by zero in Q(q)".into()));
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, den: self.den.clone() }
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// `[m]_{q^d} = (q^{dm} - q^{-dm}) / (q^d - q^{-d})`.
pub fn qint(m: u32, d: u32) -> LaurentPoly {
    assert!(d >= 1, "qint needs d >= 1");
    let (m, d) = (i64::from(m), i64::from(d));
    let num = LaurentPoly::q_pow(d * m) - LaurentPoly::q_pow(-d * m);
    let den = LaurentPoly::q_pow(d) - LaurentPoly::q_pow(-d);
    num.div_exact(&den).expect("q-integers are Laurent polynomials")
}

/// `[m]_{q^d}` for a possibly negative `m`, using `[-m] = -[m]`.
pub fn qint_signed(m: i64, d: u32) -> LaurentPoly {
    let v = qint(m.unsigned_abs() as u32, d);
    if m < 0 {
        -v
    } else {
        v
    }
}

pub fn qfactorial(m: u32, d: u32) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, k| acc * qint(k, d))
}

/// Gaussian binomial `[m choose r]_{q^d}` computed as a ratio of q-factorials.
pub fn qbinom(m: u32, r: u32, d: u32) -> Result<LaurentPoly> {
    if r > m {
        return Err(Error::Domain(format!("qbinom needs r <= m, got r = {r}, m = {m}")));
    }
    if d == 0 {
        return Err(Error::Domain("qbinom needs d >= 1".into()));
    }
    let den = qfactorial(r, d) * qfactorial(m - r, d);
    qfactorial(m, d).div_exact(&den)
}

pub fn eval_at_one(p: &LaurentPoly) -> BigRational {
    p.eval_at_one()
}
