//! The ◇_q product, conjugate of ordinary multiplication under
//! `φ(x) = ln(1 + (1-q)x) / ln(2 - q)`.
//!
//! Because `φ(x ⊕_q y) = φ(x) + φ(y)` and `φ(x ◇_q y) = φ(x)·φ(y)`, the pair
//! (⊕_q, ◇_q) is the real field transported through `φ`, so ◇_q distributes
//! over ⊕_q on the whole interval where `1 + (1-q)x > 0`.

use alloc::format;

#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::ops::DeformParam;

/// Real domain of ◇_q for a fixed `q < 2`, `q ≠ 1`.
///
/// The interval is `x > -1/(1-q)` for `q < 1` and `x < 1/(q-1)` for
/// `1 < q < 2`; both are `1 + (1-q)x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiamondDomain {
    one_minus_q: f64,
    ln_base: f64,
}

impl DiamondDomain {
    pub fn new(p: &DeformParam) -> Result<Self> {
        if p.uses_classical_formulas() {
            return Err(Error::invalid("q = 1 has no deformed domain; ◇_1 is ordinary multiplication"));
        }
        let q = p.q_f64();
        if q >= 2.0 {
            return Err(Error::unsupported(format!(
                "◇_q needs ln(2-q) real and non-zero; q = {q} is outside q < 2"
            )));
        }
        Ok(DiamondDomain {
            one_minus_q: 1.0 - q,
            ln_base: (2.0 - q).ln(),
        })
    }

    /// The excluded end point `-1/(1-q)`.
    pub fn bound(&self) -> f64 {
        -1.0 / self.one_minus_q
    }

    pub fn contains(&self, x: f64) -> bool {
        1.0 + self.one_minus_q * x > 0.0
    }

    /// `φ(x)`; the error names the operand when it lies outside the domain.
    pub fn phi(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::domain(format!(
                "{x} is outside the ◇_q domain bounded by {}",
                self.bound()
            )));
        }
        Ok((self.one_minus_q * x).ln_1p() / self.ln_base)
    }

    /// `φ⁻¹(t) = ((2-q)^t - 1)/(1-q)`.
    pub fn phi_inv(&self, t: f64) -> f64 {
        (t * self.ln_base).exp_m1() / self.one_minus_q
    }
}

/// `x ◇_q y = φ⁻¹(φ(x)·φ(y))`; plain multiplication at `q = 1`.
pub fn diamond(x: &Scalar, y: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if p.uses_classical_formulas() {
        return Ok(x * y);
    }
    let dom = DiamondDomain::new(p)?;
    let (fx, fy) = (dom.phi(x.to_f64())?, dom.phi(y.to_f64())?);
    // 1 = 1_q is the identity and 0 = 0_q annihilates.
    if x.is_one() {
        return Ok(y.clone());
    }
    if y.is_one() {
        return Ok(x.clone());
    }
    if x.is_zero() || y.is_zero() {
        return Ok(if x.is_exact() && y.is_exact() {
            Scalar::zero()
        } else {
            Scalar::Float(0.0)
        });
    }
    Ok(Scalar::Float(dom.phi_inv(fx * fy)))
}

/// `φ⁻¹(1/φ(x))`, the ◇_q-inverse of a non-zero `x`.
pub fn diamond_inverse(x: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if p.uses_classical_formulas() {
        return x.recip();
    }
    let dom = DiamondDomain::new(p)?;
    let fx = dom.phi(x.to_f64())?;
    if x.is_zero() || fx == 0.0 {
        return Err(Error::domain("0 has no ◇_q-inverse"));
    }
    if x.is_one() {
        return Ok(x.clone());
    }
    Ok(Scalar::Float(dom.phi_inv(1.0 / fx)))
}
