//! Deformed numbers `x_q` over the naturals, integers, rationals and reals.
//!
//! The closed form is `x_q = ([1 + (1-q)g]^x - 1)/(1-q)` for a generator `g`;
//! with `g = 1` the base is `2 - q`. Sequences built by iterating the q-sum
//! (`nat_sequence`) are kept separate from the closed form so that each can
//! check the other.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::ops::{q_sum, DeformParam};

/// A deformed number together with the data that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct QNumber {
    pub pre_image: Scalar,
    pub generator: Scalar,
    pub q: DeformParam,
    pub value: Scalar,
}

/// Behaviour of `x_q` as `x` grows without bound.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitResult {
    Divergent,
    Identity,
    Finite(Scalar),
    Unsupported,
}

/// `x_q` for generator `g = 1`.
pub fn to_qnumber(x: &Scalar, p: &DeformParam) -> Result<QNumber> {
    to_qnumber_with(x, p, &Scalar::one())
}

/// `x_q` for an arbitrary generator.
///
/// A non-positive base `1 + (1-q)g` only admits integer `x` (the real branch
/// of a negative base is undefined); a zero base admits `x >= 0`.
pub fn to_qnumber_with(x: &Scalar, p: &DeformParam, g: &Scalar) -> Result<QNumber> {
    let value = qnumber_value(x, p, g)?;
    Ok(QNumber {
        pre_image: x.clone(),
        generator: g.clone(),
        q: p.clone(),
        value,
    })
}

pub(crate) fn qnumber_value(x: &Scalar, p: &DeformParam, g: &Scalar) -> Result<Scalar> {
    if g.is_zero() {
        return Err(Error::domain("generator must be non-zero"));
    }
    if p.uses_classical_formulas() {
        return Ok(x * g);
    }
    let e = p.one_minus_q();
    let base = &Scalar::one() + &(&e * g);
    match base.sign() {
        Some(Ordering::Equal) => {
            return match x.sign() {
                Some(Ordering::Less) | None => Err(Error::domain(format!(
                    "x = {x} < 0 is undefined when the base 1 + (1-q)g is zero"
                ))),
                Some(Ordering::Equal) => Ok(Scalar::zero()),
                // 0^x = 0, so x_q = -1/(1-q), which equals g here.
                Some(Ordering::Greater) => Ok(g.clone()),
            };
        }
        Some(Ordering::Less) if !x.is_integer() => {
            return Err(Error::domain(format!(
                "non-integer x = {x} with negative base {base} has no real value"
            )));
        }
        _ => {}
    }
    if !base.is_exact() || !x.is_exact() {
        if let Some(n) = x.integer_value() {
            let power = base.to_float().pow_bigint(&n)?;
            return (&power - &Scalar::Float(1.0)).checked_div(&e);
        }
        // Positive base, real exponent: expm1 keeps precision for small x·ln(base).
        let (b, xf, ef) = (base.to_f64(), x.to_f64(), e.to_f64());
        return Ok(Scalar::Float((xf * b.ln()).exp_m1() / ef));
    }
    let power = base.pow_real(x)?;
    (&power - &Scalar::one()).checked_div(&e)
}

/// Inverse of the closed form: `log(1 + (1-q)v)/log(1 + (1-q)g)`.
///
/// Exact when the answer is an integer power of an exact base.
pub fn from_qnumber(v: &Scalar, p: &DeformParam) -> Result<Scalar> {
    from_qnumber_with(v, p, &Scalar::one())
}

pub fn from_qnumber_with(v: &Scalar, p: &DeformParam, g: &Scalar) -> Result<Scalar> {
    if g.is_zero() {
        return Err(Error::domain("generator must be non-zero"));
    }
    if p.uses_classical_formulas() {
        return v.checked_div(g);
    }
    let e = p.one_minus_q();
    let base = &Scalar::one() + &(&e * g);
    if !base.is_positive() {
        return Err(Error::domain(format!(
            "base 1 + (1-q)g = {base} is not positive; the closed form is not invertible"
        )));
    }
    let arg = &Scalar::one() + &(&e * v);
    if !arg.is_positive() {
        return Err(Error::domain(format!("{v} is at or beyond the bound -1/(1-q)")));
    }
    let x = arg.to_f64().ln() / base.to_f64().ln();
    if base.is_exact() && arg.is_exact() && x.is_finite() {
        let n = x.round();
        if (x - n).abs() < 1e-6 && n.abs() <= 1e6 {
            let candidate = Scalar::from_real(n);
            if let Some(k) = candidate.integer_value() {
                if base.pow_bigint(&k)? == arg {
                    return Ok(candidate);
                }
            }
        }
    }
    Ok(Scalar::Float(x))
}

/// `[0_q, 1_q, …, (count-1)_q]` by repeated `⊕_q 1`.
pub fn nat_sequence(count: usize, p: &DeformParam) -> Vec<Scalar> {
    let one = Scalar::one();
    let mut out = Vec::with_capacity(count);
    let mut current = Scalar::zero();
    for _ in 0..count {
        let next = q_sum(&current, &one, p);
        out.push(current);
        current = next;
    }
    out
}

/// `[lo_q, …, hi_q]` from the closed form, exact when `q` is.
pub fn int_sequence(lo: i64, hi: i64, p: &DeformParam) -> Result<Vec<Scalar>> {
    if lo > hi {
        return Err(Error::invalid(format!("empty range {lo}..={hi}")));
    }
    (lo..=hi)
        .map(|n| qnumber_value(&Scalar::int(n), p, &Scalar::one()))
        .collect()
}

/// Heine's number `[n]_H = (H^n - 1)/(H - 1)`; `[n]_1 = n`.
pub fn heine(n: &Scalar, h: &Scalar) -> Result<Scalar> {
    if h.is_one() {
        return Ok(n.clone());
    }
    let power = if h.is_zero() {
        match n.sign() {
            Some(Ordering::Greater) => h.clone(),
            Some(Ordering::Equal) => Scalar::one(),
            _ => return Err(Error::domain("H = 0 requires n >= 0")),
        }
    } else if h.is_exact() && n.is_exact() {
        h.pow_real(n)?
    } else if let Some(k) = n.integer_value() {
        h.to_float().pow_bigint(&k)?
    } else if h.is_negative() {
        return Err(Error::domain(format!("negative H = {h} with non-integer n = {n}")));
    } else {
        Scalar::Float(h.to_f64().powf(n.to_f64()))
    };
    (&power - &Scalar::one()).checked_div(&(h - &Scalar::one()))
}

/// The Peano successor `v ↦ v ⊕_q 1`.
pub fn successor(v: &Scalar, p: &DeformParam) -> Scalar {
    q_sum(v, &Scalar::one(), p)
}

/// Limit of `x_q` as `x → ∞`.
///
/// With `integer_arguments` the finite-limit range extends to `2 < q < 3`,
/// where the negative base `2 - q ∈ (-1, 0)` still drives `n_q` to `1/(q-1)`.
pub fn limit_of(p: &DeformParam, integer_arguments: bool) -> LimitResult {
    if p.is_classical() {
        return LimitResult::Identity;
    }
    let q = p.q();
    let finite = || match (q - &Scalar::one()).recip() {
        Ok(v) => LimitResult::Finite(v),
        Err(_) => LimitResult::Unsupported,
    };
    if *q < Scalar::one() {
        LimitResult::Divergent
    } else if *q <= Scalar::int(2) || (integer_arguments && *q < Scalar::int(3)) {
        finite()
    } else {
        LimitResult::Unsupported
    }
}
