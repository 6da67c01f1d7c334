//! Exact scalars of the form `a + b*pi + c/pi` with rational `a`, `b`, `c`.
//!
//! Every exponent and every log discrepancy handled by this crate lives in
//! this set. Sums and rational multiples stay inside it, and two elements
//! can always be compared exactly. When the `pi` parts differ the
//! comparison is decided by evaluating the difference on a certified
//! enclosure of `pi` which is refined until it excludes zero. Since `pi` is
//! transcendental, `a + b*pi + c/pi` vanishes only when all three
//! coefficients do.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for building the rational `n/d`. Panics if `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("internal error: could not separate {0} from zero after {1} refinements of pi")]
    ComparisonCapExceeded(String, u32),
}

/// Number of precision doublings `compare` may perform before giving up.
pub const COMPARE_DOUBLINGS: u32 = 10;
/// Decimal digits of the first enclosure of `pi` used by `compare`.
pub const COMPARE_START_DIGITS: u32 = 8;

/// Value `a + b*pi + c/pi`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ExactScalar {
    a: Rational,
    b: Rational,
    c: Rational,
}

impl ExactScalar {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        ExactScalar { a, b, c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(integer(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        ExactScalar { a: q, b: Rational::zero(), c: Rational::zero() }
    }

    /// `q * pi`.
    pub fn pi_multiple(q: Rational) -> Self {
        ExactScalar { a: Rational::zero(), b: q, c: Rational::zero() }
    }

    /// `q / pi`.
    pub fn inv_pi_multiple(q: Rational) -> Self {
        ExactScalar { a: Rational::zero(), b: Rational::zero(), c: q }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `pi`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Coefficient of `1/pi`.
    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero() && self.c.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        ExactScalar { a: &self.a * q, b: &self.b * q, c: &self.c * q }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        if k == 1 {
            return self.clone();
        }
        let k = BigInt::from(k);
        let mul = |r: &Rational| {
            if r.is_zero() {
                Rational::zero()
            } else {
                r * &k
            }
        };
        ExactScalar { a: mul(&self.a), b: mul(&self.b), c: mul(&self.c) }
    }

    /// Product, when it stays in the set: `pi^2` and `pi^-2` terms must cancel.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let pi2 = &self.b * &other.b;
        let inv_pi2 = &self.c * &other.c;
        if !pi2.is_zero() || !inv_pi2.is_zero() {
            return None;
        }
        let a = &self.a * &other.a + &self.b * &other.c + &self.c * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        let c = &self.a * &other.c + &self.c * &other.a;
        Some(ExactScalar { a, b, c })
    }

    /// Reciprocal of a single-term scalar (`q`, `q*pi` or `q/pi`).
    pub fn checked_recip(&self) -> Option<Self> {
        match (self.a.is_zero(), self.b.is_zero(), self.c.is_zero()) {
            (false, true, true) => Some(Self::from_rational(self.a.recip())),
            (true, false, true) => Some(Self::inv_pi_multiple(self.b.recip())),
            (true, true, false) => Some(Self::pi_multiple(self.c.recip())),
            _ => None,
        }
    }

    /// Enclosure `[lo, hi]` of the value, given `pi_lo < pi < pi_hi`.
    pub fn enclose(&self, pi_lo: &Rational, pi_hi: &Rational) -> (Rational, Rational) {
        let mut lo = self.a.clone();
        let mut hi = self.a.clone();
        if !self.b.is_zero() {
            let (x, y) = (&self.b * pi_lo, &self.b * pi_hi);
            if self.b.is_positive() {
                lo += x;
                hi += y;
            } else {
                lo += y;
                hi += x;
            }
        }
        if !self.c.is_zero() {
            let (x, y) = (&self.c / pi_hi, &self.c / pi_lo);
            if self.c.is_positive() {
                lo += x;
                hi += y;
            } else {
                lo += y;
                hi += x;
            }
        }
        (lo, hi)
    }

    /// Exact sign, refining `pi` as needed.
    pub fn try_signum(&self) -> Result<Ordering, ScalarError> {
        if self.is_rational() {
            return Ok(self.a.cmp(&Rational::zero()));
        }
        let zero = Rational::zero();
        for level in 0..=COMPARE_DOUBLINGS {
            let (pi_lo, pi_hi) = cached_pi(level);
            let (lo, hi) = self.enclose(pi_lo, pi_hi);
            if lo > zero {
                return Ok(Ordering::Greater);
            }
            if hi < zero {
                return Ok(Ordering::Less);
            }
        }
        Err(ScalarError::ComparisonCapExceeded(self.to_string(), COMPARE_DOUBLINGS))
    }

    pub fn try_compare(&self, other: &Self) -> Result<Ordering, ScalarError> {
        if self.b == other.b && self.c == other.c {
            return Ok(self.a.cmp(&other.a));
        }
        (self - other).try_signum()
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Sign of the value. Panics if the comparison cap is exceeded.
    pub fn signum(&self) -> Ordering {
        self.try_signum().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * std::f64::consts::PI + f(&self.c) / std::f64::consts::PI
    }
}

/// Componentwise sum.
pub fn add(x: &ExactScalar, y: &ExactScalar) -> ExactScalar {
    x + y
}

/// Componentwise product with a rational.
pub fn scale(x: &ExactScalar, q: &Rational) -> ExactScalar {
    x.scale(q)
}

/// Exact ordering of two scalars.
pub fn compare(x: &ExactScalar, y: &ExactScalar) -> Result<Ordering, ScalarError> {
    x.try_compare(y)
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_compare(other).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b, c: &self.c + &rhs.c }
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        &self + &rhs
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
        self.c += &rhs.c;
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b, c: &self.c - &rhs.c }
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        &self - &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { a: -&self.a, b: -&self.b, c: -&self.c }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

fn fmt_magnitude(q: &Rational, suffix: &str) -> String {
    let q = q.abs();
    match (suffix, q.is_one(), q.denom().is_one()) {
        ("", _, _) => q.to_string(),
        ("*pi", true, _) => "pi".to_string(),
        ("*pi", false, true) => format!("{}*pi", q.numer()),
        ("*pi", false, false) => format!("{}/{}*pi", q.numer(), q.denom()),
        (_, _, true) => format!("{}/pi", q.numer()),
        (_, _, false) => format!("{}/{}/pi", q.numer(), q.denom()),
    }
}

impl fmt::Display for ExactScalar {
    /// Prints in the grammar accepted by [`crate::parse::parse_scalar`], e.g. `2 - 6/pi`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [(&self.a, ""), (&self.b, "*pi"), (&self.c, "/pi")];
        let mut first = true;
        for (q, suffix) in parts {
            if q.is_zero() {
                continue;
            }
            let body = fmt_magnitude(q, suffix);
            match (first, q.is_negative()) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ExactScalar", 3)?;
        s.serialize_field("a", &self.a.to_string())?;
        s.serialize_field("b", &self.b.to_string())?;
        s.serialize_field("c", &self.c.to_string())?;
        s.end()
    }
}

/// Scaled arctangent series for `atan(1/x)`.
///
/// Returns `(sum, n)` with `|scale * atan(1/x) - sum| < n + 1`.
///
/// Proof of the bound. Write `T_k = scale / ((2k+1) x^(2k+1))` for the exact
/// terms, so `scale * atan(1/x) = sum_k (-1)^k T_k`. The loop keeps
/// `power = floor(scale / x^(2k+1))`; this is exact because
/// `floor(floor(m / u) / v) = floor(m / (u v))` for positive integers. The
/// added term is `q_k = floor(power / (2k+1))`, and from
/// `power <= scale / x^(2k+1) < power + 1` we get `q_k <= T_k < q_k + 1`.
/// The loop stops at the first `n` with `power == 0`, where `T_n < 1`. The
/// `n` truncations contribute an error of magnitude `< n`, and since the
/// `T_k` decrease to zero the alternating tail `sum_{k >= n}` has magnitude
/// at most `T_n < 1`.
fn arctan_inv_scaled(x: u32, scale: &BigInt) -> (BigInt, u64) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = scale / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    (sum, k)
}

/// Rational enclosure `lo < pi < hi` of width at most `10^-digits`.
///
/// Uses Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)` evaluated in
/// fixed point with scale `S = 10^(digits + guard)`. With `(A5, n5)` and
/// `(A239, n239)` from [`arctan_inv_scaled`],
/// `|S pi - (16 A5 - 4 A239)| < E := 16 (n5 + 1) + 4 (n239 + 1)`,
/// so `(P - E)/S < pi < (P + E)/S` strictly. The width is `2E/S`, and the
/// guard digits are grown until `2E <= 10^guard`.
pub fn pi_interval(digits: u32) -> (Rational, Rational) {
    let digits = digits.max(1);
    let mut guard = 4 + (digits as f64).log10().ceil() as u32;
    loop {
        let scale = BigInt::from(10u32).pow(digits + guard);
        let (a5, n5) = arctan_inv_scaled(5, &scale);
        let (a239, n239) = arctan_inv_scaled(239, &scale);
        let centre = a5 * 16 - a239 * 4;
        let err = BigInt::from(16 * (n5 + 1) + 4 * (n239 + 1));
        if &err * 2 <= BigInt::from(10u32).pow(guard) {
            let lo = Rational::new(&centre - &err, scale.clone());
            let hi = Rational::new(centre + err, scale);
            return (lo, hi);
        }
        guard += 4;
    }
}

fn cached_pi(level: u32) -> &'static (Rational, Rational) {
    static LEVELS: [OnceLock<(Rational, Rational)>; (COMPARE_DOUBLINGS + 1) as usize] =
        [const { OnceLock::new() }; (COMPARE_DOUBLINGS + 1) as usize];
    LEVELS[level as usize].get_or_init(|| pi_interval(COMPARE_START_DIGITS << level))
}
