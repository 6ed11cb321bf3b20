//! Exact scalar arithmetic.
//!
//! Two scalar fields drive every computation in this crate:
//! - [`Rational`]: arbitrary-precision rationals (exact-point mode);
//! - [`RatFunc`]: univariate rational functions in a formal parameter with
//!   rational coefficients (symbolic mode).
//!
//! Both implement the [`Scalar`] trait, and all the symmetric-function and
//! operator machinery is generic over it, so "switch to symbolic mode" is a
//! type parameter, not a runtime branch. Claims involving two independent
//! parameters at once are certified by seeded multi-point evaluation
//! ([`identity_test`]) instead of a bivariate fraction field.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, Signed};
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always reduced with positive
/// denominator (the backing type maintains both invariants).
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(p: i64, q: i64) -> Rational {
    assert!(q != 0);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses "p/q" or "p".
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|e| Error::Cache(format!("bad rational {s:?}: {e}")))
}

/// The common field interface of [`Rational`] and [`RatFunc`].
///
/// Division is explicit and checked: a vanishing divisor is an error to be
/// diagnosed (resonance, degeneracy, pole), never a panic in library code.
pub trait Scalar:
    Clone
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_rational(q: Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    fn checked_inv(&self) -> Result<Self> {
        Self::one().checked_div(self)
    }

    /// Division by a value the caller knows to be nonzero.
    fn div_exact(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("divisor is nonzero")
    }

    fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }
}

// ---------------------------------------------------------------------------
// Polynomials over the rationals
// ---------------------------------------------------------------------------

/// Dense univariate polynomial with rational coefficients. `coeffs[k]` is the
/// coefficient of x^k; no trailing zeros are stored, so zero is the empty vec.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn var() -> Self {
        Poly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg divisor.
    pub fn divmod(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![Rational::zero(); qlen];
        for k in (0..qlen).rev() {
            let c = &rem[k + ddeg] / &dlead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => {
                let inv = Rational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Monic gcd via a primitive pseudo-remainder sequence over the integers,
    /// which keeps intermediate coefficients small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = to_primitive_int(self);
        let mut b = to_primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = int_pseudo_rem(&a, &b);
            if r.is_empty() {
                break;
            }
            a = b;
            b = int_primitive(r);
        }
        let q = Poly::from_coeffs(b.into_iter().map(Rational::from_integer).collect());
        q.monic()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Clears denominators and removes integer content; result is primitive with
/// positive leading coefficient, as a coefficient vector over BigInt.
fn to_primitive_int(p: &Poly) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = num::integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    int_primitive(ints)
}

fn int_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    if v.is_empty() {
        return v;
    }
    let mut content = BigInt::zero();
    for c in &v {
        content = num::integer::gcd(content, c.clone());
    }
    if v.last().unwrap().sign() == Sign::Minus {
        content = -content;
    }
    v.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of integer polynomials: lc(b)^(deg a - deg b + 1) * a mod b.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for j in 0..=db {
            let t = &lr * &b[j];
            r[shift + j] -= t;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        if r.is_empty() {
            break;
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Univariate rational function in a formal parameter, kept in lowest terms
/// with a monic denominator; zero is 0/1. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds num/den in canonical form. Panics when den = 0; fraction
    /// construction from user input goes through [`RatFunc::checked_div`].
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divmod(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divmod(&g);
        debug_assert!(r2.is_zero());
        let lead_inv = Rational::one() / den.leading().unwrap();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }

    /// The formal variable.
    pub fn var() -> Self {
        RatFunc {
            num: Poly::var(),
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// Exact evaluation at a rational point; reports poles.
    pub fn eval_at(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint {
                point: x.to_string(),
            });
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl<'a, 'b> Add<&'b RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'b RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl<'a, 'b> Sub<&'b RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'b RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl<'a, 'b> Mul<&'b RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'b RatFunc) -> RatFunc {
        // cross-reduce first; keeps the gcd arguments small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, _) = self.num.divmod(&g1);
        let (d2, _) = rhs.den.divmod(&g1);
        let (n2, _) = rhs.num.divmod(&g2);
        let (d1, _) = self.den.divmod(&g2);
        let num = n1.mul(&n2);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = d1.mul(&d2);
        let lead_inv = Rational::one() / den.leading().unwrap();
        RatFunc {
            num: num.scale(&lead_inv),
            den: den.scale(&lead_inv),
        }
    }
}

impl<'b> Add<&'b RatFunc> for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'b RatFunc) -> RatFunc {
        &self + rhs
    }
}

impl<'b> Sub<&'b RatFunc> for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'b RatFunc) -> RatFunc {
        &self - rhs
    }
}

impl<'b> Mul<&'b RatFunc> for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'b RatFunc) -> RatFunc {
        &self * rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl<'a> Neg for &'a RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Scalar for RatFunc {
    fn from_rational(q: Rational) -> Self {
        RatFunc::constant(q)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::new(
            self.num.mul(&rhs.den),
            self.den.mul(&rhs.num),
        ))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            if self.num.degree().unwrap_or(0) == 0 {
                return write!(f, "{}", self.num);
            }
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

// ---------------------------------------------------------------------------
// Randomized identity testing
// ---------------------------------------------------------------------------

/// Evaluator outcome at one sample point: `None` signals a pole, triggering a
/// resample within the retry budget.
pub type Eval<'a> = dyn Fn(&[Rational]) -> Option<Rational> + 'a;

/// Uniform rational with numerator and denominator in [1, 10^6].
pub fn sample_rational<R: Rng>(rng: &mut R) -> Rational {
    let p = rng.random_range(1..=1_000_000i64);
    let q = rng.random_range(1..=1_000_000i64);
    rat(p, q)
}

/// Tests lhs = rhs at `trials` independently sampled rational tuples.
///
/// Deterministic for a given seed. When the difference of the two sides is a
/// polynomial of total degree < `trials` in the sampled variables, agreement
/// at all points certifies the identity; otherwise it is a Schwartz–Zippel
/// style randomized check. Points where either side reports a pole are
/// resampled, up to 64 attempts per trial.
pub fn identity_test(
    lhs: &Eval<'_>,
    rhs: &Eval<'_>,
    nvars: usize,
    trials: u32,
    seed: u64,
) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let mut attempts = 0u32;
        loop {
            let point: Vec<Rational> = (0..nvars).map(|_| sample_rational(&mut rng)).collect();
            match (lhs(&point), rhs(&point)) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Ok(false);
                    }
                    break;
                }
                _ => {
                    attempts += 1;
                    if attempts >= 64 {
                        return Err(Error::RetryBudgetExhausted { attempts });
                    }
                }
            }
        }
    }
    Ok(true)
}
