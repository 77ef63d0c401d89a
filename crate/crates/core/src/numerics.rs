//! Scalar value model shared by every module.
//!
//! A [`Scalar`] is an exact arbitrary-precision integer, an exact rational
//! kept in lowest terms, or an `f64` that is compared through a
//! [`Tolerance`]. Mixed arithmetic promotes to the weaker of the two modes
//! (`ExactInt < ExactRat < Float`). Exact results that happen to be integral
//! are demoted back to `Int`, so every exact value has one representation.

use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Backend of a [`Scalar`], ordered from strongest to weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    ExactInt,
    ExactRat,
    Float,
}

#[derive(Debug, Clone)]
pub enum Scalar {
    Int(BigInt),
    /// Always lowest terms with a positive denominator.
    Rat(BigRational),
    Float(f64),
}

/// Comparison tolerance used whenever a float takes part in a comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-12,
            rel_eps: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Self {
        Tolerance { abs_eps, rel_eps }
    }

    pub fn absolute(abs_eps: f64) -> Self {
        Tolerance {
            abs_eps,
            rel_eps: 0.0,
        }
    }
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Int(BigInt::from(v))
    }

    /// Exact `num/den`. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rat(BigRational::new(num.into(), den.into())).normalized()
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn zero() -> Self {
        Scalar::Int(BigInt::zero())
    }

    pub fn one() -> Self {
        Scalar::Int(BigInt::one())
    }

    /// Integral finite floats below 2^53 become exact integers; everything else stays a float.
    pub fn from_real(v: f64) -> Self {
        if v.is_finite() && v.fract() == 0.0 && v.abs() < 9.007_199_254_740_992e15 {
            Scalar::Int(BigInt::from(v as i64))
        } else {
            Scalar::Float(v)
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r).normalized()
    }

    /// Parses a decimal literal (`-12`, `0.125`, `3e-2`) into an exact value.
    pub fn parse_exact(s: &str) -> Option<Self> {
        parse_decimal(s).map(Scalar::from_rational)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Int(_) => Mode::ExactInt,
            Scalar::Rat(_) => Mode::ExactRat,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    /// Demotes an integral rational to `Int`.
    pub fn normalized(self) -> Self {
        match self {
            Scalar::Rat(r) if r.denom().is_one() => Scalar::Int(r.numer().clone()),
            other => other,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Int(i) => i.to_f64().unwrap_or(f64::NAN),
            Scalar::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(f) => *f,
        }
    }

    /// The exact rational value, or `None` for floats.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Int(i) => Some(BigRational::from_integer(i.clone())),
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Float(_) => None,
        }
    }

    /// Same value, float mode.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    /// Integer value of exact integers and of integral finite floats.
    pub fn integer_value(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(i) => Some(i.clone()),
            Scalar::Rat(_) => None,
            Scalar::Float(f) if f.is_finite() && f.fract() == 0.0 => BigInt::from_f64(*f),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        self.integer_value().is_some()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(i) => i.is_zero(),
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(i) => i.is_one(),
            Scalar::Rat(r) => r.is_one(),
            Scalar::Float(f) => *f == 1.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Scalar::Float(f) => f.is_finite(),
            _ => true,
        }
    }

    /// Sign relative to zero; `None` for NaN.
    pub fn sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Int(i) => Some(i.sign_cmp()),
            Scalar::Rat(r) => Some(r.numer().sign_cmp()),
            Scalar::Float(f) => f.partial_cmp(&0.0),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Some(Ordering::Greater)
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Some(Ordering::Less)
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Int(i) => Scalar::Int(i.abs()),
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(match (self, rhs) {
            (Scalar::Float(a), _) => Scalar::Float(a / rhs.to_f64()),
            (_, Scalar::Float(b)) => Scalar::Float(self.to_f64() / b),
            _ => {
                let (a, b) = (self.exact_rational(), rhs.exact_rational());
                Scalar::from_rational(a / b)
            }
        })
    }

    /// Largest exact power [`Scalar::pow_bigint`] will build, in bits (4 MiB).
    pub const MAX_EXACT_POWER_BITS: u64 = 1 << 25;

    /// Integer power with an arbitrary-size exponent. Negative exponents take
    /// the reciprocal; `0^n` with `n < 0` is a domain error.
    pub fn pow_bigint(&self, n: &BigInt) -> Result<Scalar> {
        if self.is_zero() {
            return match n.sign() {
                Sign::Plus => Ok(self.clone()),
                Sign::NoSign => Ok(unit_like(self)),
                Sign::Minus => Err(Error::domain("zero raised to a negative power")),
            };
        }
        let odd = n.is_odd();
        if let Scalar::Float(b) = self {
            let r = match n.to_i32() {
                Some(k) => b.powi(k),
                None => {
                    let mag = b.abs().powf(n.to_f64().unwrap_or(f64::INFINITY));
                    if *b < 0.0 && odd {
                        -mag
                    } else {
                        mag
                    }
                }
            };
            return Ok(Scalar::Float(r));
        }
        if self.is_one() {
            return Ok(Scalar::one());
        }
        if self.abs().is_one() {
            return Ok(Scalar::int(if odd { -1 } else { 1 }));
        }
        let mag = n
            .magnitude()
            .to_u64()
            .ok_or_else(|| Error::Resource(format!("exponent {n} is too large for exact mode")))?;
        let base_bits = match self {
            Scalar::Rat(r) => r.numer().bits().max(r.denom().bits()),
            other => other.integer_value().map_or(0, |i| i.bits()),
        };
        if base_bits.saturating_mul(mag) > Self::MAX_EXACT_POWER_BITS {
            return Err(Error::Resource(format!(
                "{self}^{n} needs more than {} bits in exact mode",
                Self::MAX_EXACT_POWER_BITS
            )));
        }
        let p = int_pow(self, mag);
        if n.is_negative() {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn powi(&self, n: i64) -> Result<Scalar> {
        self.pow_bigint(&BigInt::from(n))
    }

    /// Real power `self^exponent` on the real branch.
    ///
    /// Integer exponents accept any base. Non-integer exponents need a
    /// non-negative base. Exact inputs stay exact when the root is exact
    /// (`(9/4)^(1/2) = 3/2`), otherwise the result is a float.
    pub fn pow_real(&self, exponent: &Scalar) -> Result<Scalar> {
        if let Some(n) = exponent.integer_value() {
            if exponent.is_exact() {
                return self.pow_bigint(&n);
            }
            return self.to_float().pow_bigint(&n);
        }
        if self.is_negative() {
            return Err(Error::domain(format!(
                "negative base {self} with non-integer exponent {exponent}"
            )));
        }
        if self.is_zero() {
            return if exponent.is_positive() {
                Ok(self.clone())
            } else {
                Err(Error::domain("zero raised to a negative power"))
            };
        }
        if let (Some(base), Scalar::Rat(e)) = (self.to_rational(), exponent) {
            if let (Some(p), Some(r)) = (e.numer().to_i64(), e.denom().to_u32()) {
                if let Some(root) = exact_root(&base, r) {
                    return Scalar::from_rational(root).powi(p);
                }
            }
        }
        Ok(Scalar::Float(self.to_f64().powf(exponent.to_f64())))
    }

    /// Canonical text: integers in full, rationals as terminating decimals
    /// when possible and `p/q` otherwise, floats in shortest round-trip form.
    pub fn to_decimal_string(&self) -> String {
        match self {
            Scalar::Int(i) => i.to_string(),
            Scalar::Rat(r) => terminating_decimal(r).unwrap_or_else(|| format!("{}/{}", r.numer(), r.denom())),
            Scalar::Float(f) => format!("{f}"),
        }
    }

    /// `self * 10^decimals`, truncated toward zero.
    pub fn truncate_scaled(&self, decimals: u32) -> Option<BigInt> {
        let r = match self {
            Scalar::Float(f) => BigRational::from_float(*f)?,
            other => other.exact_rational(),
        };
        let scaled = r * BigRational::from_integer(BigInt::from(10u32).pow(decimals));
        Some(scaled.to_integer())
    }

    /// Decimal text truncated (not rounded) to `decimals` places, trailing zeros dropped.
    pub fn truncated(&self, decimals: u32) -> String {
        match self {
            Scalar::Int(i) => i.to_string(),
            _ => match self.truncate_scaled(decimals) {
                Some(v) => format_scaled(&v, decimals),
                None => format!("{}", self.to_f64()),
            },
        }
    }

    fn exact_rational(&self) -> BigRational {
        match self {
            Scalar::Int(i) => BigRational::from_integer(i.clone()),
            Scalar::Rat(r) => r.clone(),
            Scalar::Float(f) => BigRational::from_float(*f).unwrap_or_else(BigRational::zero),
        }
    }
}

fn unit_like(s: &Scalar) -> Scalar {
    if s.is_exact() {
        Scalar::one()
    } else {
        Scalar::Float(1.0)
    }
}

/// Exact `r`-th root of a non-negative rational, if it exists.
fn exact_root(v: &BigRational, r: u32) -> Option<BigRational> {
    if r == 0 || v.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let c = n.nth_root(r);
        (num_traits::pow(c.clone(), r as usize) == *n).then_some(c)
    };
    Some(BigRational::new(root(v.numer())?, root(v.denom())?))
}

fn terminating_decimal(r: &BigRational) -> Option<String> {
    let mut d = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = r * BigRational::from_integer(BigInt::from(10).pow(places));
    Some(format_scaled(&scaled.to_integer(), places))
}

/// Formats `v / 10^places`, dropping trailing zeros.
fn format_scaled(v: &BigInt, places: u32) -> String {
    let digits = v.magnitude().to_string();
    let sign = if v.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let places = places as usize;
    let padded = if digits.len() <= places {
        let mut s = "0".repeat(places + 1 - digits.len());
        s.push_str(&digits);
        s
    } else {
        digits
    };
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Parses `[-+]digits[.digits][(e|E)[-+]digits]` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut digits = String::with_capacity(int_part.len() + frac_part.len());
    digits.push_str(int_part);
    digits.push_str(frac_part);
    let mut numer: BigInt = digits.parse().ok()?;
    if negative {
        numer = -numer;
    }
    let shift = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    // Keep literal exponents in a range that cannot blow up memory.
    if shift.unsigned_abs() > 10_000 {
        return None;
    }
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        BigRational::from_integer(numer * ten.pow(shift as u32))
    } else {
        BigRational::new(numer, ten.pow(shift.unsigned_abs()))
    })
}

/// Brings both operands to their weakest common mode.
pub fn promote(a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
    let mode = a.mode().max(b.mode());
    (convert(a, mode), convert(b, mode))
}

fn convert(s: &Scalar, mode: Mode) -> Scalar {
    match (s, mode) {
        (_, m) if s.mode() == m => s.clone(),
        (_, Mode::Float) => s.to_float(),
        (Scalar::Int(i), Mode::ExactRat) => Scalar::Rat(BigRational::from_integer(i.clone())),
        _ => s.clone(),
    }
}

/// Exact comparison between exact values; any float operand switches to
/// `|a-b| <= abs_eps || |a-b| <= rel_eps * max(|a|, |b|)`.
pub fn approx_equal(a: &Scalar, b: &Scalar, tol: Tolerance) -> bool {
    if a.is_exact() && b.is_exact() {
        return a == b;
    }
    let (x, y) = (a.to_f64(), b.to_f64());
    if x.to_bits() == y.to_bits() || x == y {
        return true;
    }
    let diff = (x - y).abs();
    diff <= tol.abs_eps || diff <= tol.rel_eps * x.abs().max(y.abs())
}

/// `base^n` by repeated squaring: O(log n) multiplications, exact in exact modes.
pub fn int_pow(base: &Scalar, n: u64) -> Scalar {
    let mut result = unit_like(base);
    let mut square = base.clone();
    let mut n = n;
    while n > 0 {
        if n & 1 == 1 {
            result = &result * &square;
        }
        n >>= 1;
        if n > 0 {
            square = &square * &square;
        }
    }
    result
}

fn combine(
    a: &Scalar,
    b: &Scalar,
    int_op: impl FnOnce(&BigInt, &BigInt) -> BigInt,
    rat_op: impl FnOnce(BigRational, BigRational) -> BigRational,
    float_op: impl FnOnce(f64, f64) -> f64,
) -> Scalar {
    match (a, b) {
        (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(int_op(x, y)),
        (Scalar::Float(x), _) => Scalar::Float(float_op(*x, b.to_f64())),
        (_, Scalar::Float(y)) => Scalar::Float(float_op(a.to_f64(), *y)),
        _ => Scalar::from_rational(rat_op(a.exact_rational(), b.exact_rational())),
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                combine(self, rhs, |x, y| x $op y, |x, y| x $op y, |x, y| x $op y)
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                &self $op &rhs
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                &self $op rhs
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(i) => Scalar::Int(-i),
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Exact values compare by value regardless of representation; floats compare
/// with `==`; an exact value never equals a float.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => false,
            (Scalar::Int(a), Scalar::Int(b)) => a == b,
            _ => self.exact_rational() == other.exact_rational(),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            Some(self.exact_rational().cmp(&other.exact_rational()))
        } else {
            self.to_f64().partial_cmp(&other.to_f64())
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(i) => write!(f, "{i}"),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => write!(f, "{x}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::int(v.into())
    }
}

impl From<f64> for Scalar {
    fn from(v: f64) -> Self {
        Scalar::Float(v)
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::Int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        match self.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }
}
