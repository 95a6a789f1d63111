//! Exact Laurent polynomials and truncated power series over the rationals.
//!
//! Jones-side values live in [`HalfLaurent`] (exponents of `t` in steps of
//! one half), Conway polynomials in [`ZLaurent`], and Kauffman brackets in
//! [`BracketPoly`]. Expansions around `t = 1` are [`TruncSeries`] in the
//! variable `u = t - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default truncation order for expansions about `t = 1`.
pub const DEFAULT_ORDER: usize = 12;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// The variable a [`Laurent`] polynomial is written in.
pub trait Variable {
    const SYMBOL: &'static str;
    /// Number of stored exponent steps per unit power of the variable.
    const STEPS_PER_UNIT: i64;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HalfT;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarZ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarA;

impl Variable for HalfT {
    const SYMBOL: &'static str = "t";
    const STEPS_PER_UNIT: i64 = 2;
}

impl Variable for VarZ {
    const SYMBOL: &'static str = "z";
    const STEPS_PER_UNIT: i64 = 1;
}

impl Variable for VarA {
    const SYMBOL: &'static str = "A";
    const STEPS_PER_UNIT: i64 = 1;
}

/// `u = t - 1`, used only to print truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarU;

impl Variable for VarU {
    const SYMBOL: &'static str = "u";
    const STEPS_PER_UNIT: i64 = 1;
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Exponents are stored as integers counting `1 / V::STEPS_PER_UNIT`; zero
/// coefficients are never stored.
pub struct Laurent<V> {
    terms: BTreeMap<i64, Rational>,
    _var: PhantomData<V>,
}

/// Polynomial in `t^{1/2}`; the stored exponent counts halves.
pub type HalfLaurent = Laurent<HalfT>;
/// Polynomial in `z` with integer exponents.
pub type ZLaurent = Laurent<VarZ>;
/// Kauffman bracket values in `A`.
pub type BracketPoly = Laurent<VarA>;

impl<V> Clone for Laurent<V> {
    fn clone(&self) -> Self {
        Laurent { terms: self.terms.clone(), _var: PhantomData }
    }
}

impl<V> PartialEq for Laurent<V> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<V> Eq for Laurent<V> {}

impl<V> fmt::Debug for Laurent<V>
where
    V: Variable,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<V> Default for Laurent<V> {
    fn default() -> Self {
        Laurent { terms: BTreeMap::new(), _var: PhantomData }
    }
}

impl<V> Laurent<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c * x^(steps / STEPS_PER_UNIT)`.
    pub fn monomial(steps: i64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(steps, c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    pub fn add_term(&mut self, steps: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(steps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&steps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, steps: i64) -> Rational {
        self.terms.get(&steps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    /// Multiplies every exponent by `k` (substitution `x -> x^k`).
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Substitution `x -> -x`, valid for integer-step variables.
    pub fn negate_variable(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| if e.rem_euclid(2) == 1 { (*e, -c) } else { (*e, c.clone()) }))
    }

    pub fn shift(&self, steps: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e + steps, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `x = 1`.
    pub fn eval_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Reinterprets the stored exponents in another variable.
    pub fn cast<W>(self) -> Laurent<W> {
        Laurent { terms: self.terms, _var: PhantomData }
    }
}

impl<V: Variable> fmt::Display for Laurent<V> {
    /// Canonical ascending-exponent form, e.g. `-t^(-4) + t^(-3) + t^(-1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match (e, V::STEPS_PER_UNIT) {
                (0, _) => None,
                (e, 1) => Some(if *e == 1 { String::new() } else { format!("^{e}") }),
                (e, s) if e % s == 0 => {
                    let p = e / s;
                    Some(if p == 1 { String::new() } else { format!("^{p}") })
                }
                (e, s) => Some(format!("^({e}/{s})")),
            };
            match power {
                None => write!(f, "{}", format_rational(&mag))?,
                Some(p) => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    write!(f, "{}{}", V::SYMBOL, p)?;
                }
            }
        }
        Ok(())
    }
}

impl<V> Add for &Laurent<V> {
    type Output = Laurent<V>;
    fn add(self, rhs: Self) -> Laurent<V> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<V> Sub for &Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: Self) -> Laurent<V> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<V> Mul for &Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: Self) -> Laurent<V> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<V> Neg for &Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, -c)))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<V> $tr for Laurent<V> {
            type Output = Laurent<V>;
            fn $m(self, rhs: Self) -> Laurent<V> {
                (&self).$m(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl<V> Neg for Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        -&self
    }
}

/// Truncated Taylor series `c_0 + c_1 u + ... + c_N u^N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl fmt::Display for TruncSeries {
    /// Ascending powers of `u = t - 1` followed by the truncation marker.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p: Laurent<VarU> = Laurent::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(k as i64, c.clone());
        }
        write!(f, "{p} + O(u^{})", self.coeffs.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `u` itself.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    /// Builds a series from leading coefficients, padding or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        TruncSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn arith(&self, other: &Self, op: SeriesOp) -> Result<Self> {
        self.check_order(other)?;
        Ok(match op {
            SeriesOp::Add => self.add_unchecked(other),
            SeriesOp::Sub => self.sub_unchecked(other),
            SeriesOp::Mul => self.mul_unchecked(other),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Add)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Sub)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.arith(other, SeriesOp::Mul)
    }

    pub(crate) fn add_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        TruncSeries { coeffs }
    }

    pub(crate) fn sub_unchecked(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        TruncSeries { coeffs }
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn neg(&self) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::SingularInversion);
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// Binomial expansion of `t^(halves/2) = (1 + u)^(halves/2)`.
    pub fn half_power(halves: i64, order: usize) -> Self {
        let alpha = ratio(halves, 2);
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut c = Rational::one();
        coeffs.push(c.clone());
        for n in 1..=order {
            c = c * (&alpha - rat(n as i64 - 1)) / rat(n as i64);
            coeffs.push(c.clone());
        }
        TruncSeries { coeffs }
    }

    /// `i!` times the coefficient of `u^i`, i.e. the `i`-th derivative at `t = 1`.
    pub fn derivative_at_one(&self, i: usize) -> Result<Rational> {
        if i > self.order() {
            return Err(Error::InsufficientTruncation { need: i, have: self.order() });
        }
        Ok(&self.coeffs[i] * Rational::from_integer(factorial(i)))
    }

    /// Re-expands in `h` where `u = e^h - 1`.
    pub fn in_h(&self) -> Self {
        let n = self.order();
        let mut exp_m1 = Self::zero(n);
        let mut fact = BigInt::one();
        for k in 1..=n {
            fact *= BigInt::from(k);
            exp_m1.coeffs[k] = Rational::new(BigInt::one(), fact.clone());
        }
        let mut acc = Self::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_unchecked(&exp_m1);
            acc.coeffs[0] += c;
        }
        acc
    }
}

/// Expands a polynomial in `t^{1/2}` about `t = 1`.
pub fn laurent_to_series(p: &HalfLaurent, order: usize) -> TruncSeries {
    let mut acc = TruncSeries::zero(order);
    for (halves, c) in p.terms() {
        acc = acc.add_unchecked(&TruncSeries::half_power(halves, order).scale(c));
    }
    acc
}

/// Series of `t^{1/2} + t^{-1/2}` about `t = 1`.
pub fn delta_series(order: usize) -> TruncSeries {
    TruncSeries::half_power(1, order).add_unchecked(&TruncSeries::half_power(-1, order))
}
