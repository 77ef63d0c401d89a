//! The a-sums/a-products and k-sums/k-products, with their deformed numbers.
//!
//! Four of the eight operations are q-operations in disguise:
//!
//! | op    | definition          |
//! |-------|---------------------|
//! | `+_a` | `⊕_q`, `q = 1 - a`  |
//! | `×_a` | `⊗_q`, `q = 1 - a`  |
//! | `⊞_k` | `⊗_q`, `q = 1 - k`  |
//! | `⊠_k` | `⊕_q`, `q = 1 - k`, i.e. `x + y + kxy` |
//!
//! The other four are evaluated from their own closed forms.

use alloc::format;

#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::ops::{q_product, q_sum, DeformParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    K,
}

/// `Low` is the subscripted operation (`+_a`), `High` the superscripted one (`+^a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Sum,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AltOpId {
    pub family: Family,
    pub variant: Variant,
    pub kind: Kind,
}

impl AltOpId {
    pub const A_SUM: AltOpId = AltOpId::new(Family::A, Variant::Low, Kind::Sum);
    pub const A_SUM_HIGH: AltOpId = AltOpId::new(Family::A, Variant::High, Kind::Sum);
    pub const A_PROD: AltOpId = AltOpId::new(Family::A, Variant::Low, Kind::Product);
    pub const A_PROD_HIGH: AltOpId = AltOpId::new(Family::A, Variant::High, Kind::Product);
    pub const K_SUM: AltOpId = AltOpId::new(Family::K, Variant::Low, Kind::Sum);
    pub const K_SUM_HIGH: AltOpId = AltOpId::new(Family::K, Variant::High, Kind::Sum);
    pub const K_PROD: AltOpId = AltOpId::new(Family::K, Variant::Low, Kind::Product);
    pub const K_PROD_HIGH: AltOpId = AltOpId::new(Family::K, Variant::High, Kind::Product);

    pub const ALL: [AltOpId; 8] = [
        Self::A_SUM,
        Self::A_SUM_HIGH,
        Self::A_PROD,
        Self::A_PROD_HIGH,
        Self::K_SUM,
        Self::K_SUM_HIGH,
        Self::K_PROD,
        Self::K_PROD_HIGH,
    ];

    pub const fn new(family: Family, variant: Variant, kind: Kind) -> Self {
        AltOpId { family, variant, kind }
    }

    /// Stable ASCII identifier used in reports.
    pub fn name(&self) -> &'static str {
        match (self.family, self.variant, self.kind) {
            (Family::A, Variant::Low, Kind::Sum) => "a_sum",
            (Family::A, Variant::High, Kind::Sum) => "a_sum_hi",
            (Family::A, Variant::Low, Kind::Product) => "a_prod",
            (Family::A, Variant::High, Kind::Product) => "a_prod_hi",
            (Family::K, Variant::Low, Kind::Sum) => "k_sum",
            (Family::K, Variant::High, Kind::Sum) => "k_sum_hi",
            (Family::K, Variant::Low, Kind::Product) => "k_prod",
            (Family::K, Variant::High, Kind::Product) => "k_prod_hi",
        }
    }

    pub fn symbol(&self) -> &'static str {
        match (self.family, self.variant, self.kind) {
            (Family::A, Variant::Low, Kind::Sum) => "+_a",
            (Family::A, Variant::High, Kind::Sum) => "+^a",
            (Family::A, Variant::Low, Kind::Product) => "×_a",
            (Family::A, Variant::High, Kind::Product) => "×^a",
            (Family::K, Variant::Low, Kind::Sum) => "⊞_k",
            (Family::K, Variant::High, Kind::Sum) => "⊞^k",
            (Family::K, Variant::Low, Kind::Product) => "⊠_k",
            (Family::K, Variant::High, Kind::Product) => "⊠^k",
        }
    }
}

/// Deformed numbers built from the a- and k-sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AltNumberId {
    /// `x^(a) = [a ln x + g^a]^(1/a)`, generated by `+^a`.
    AHigh,
    /// `x^[k] = (x^k (1 + kg) - 1)/k`, generated by `⊞^k`.
    KHigh,
    /// `x_[k] = [x g^k - (x - 1)]^(1/k)`, generated by `⊞_k`.
    KLow,
}

impl AltNumberId {
    /// The sum whose iteration on the generator produces these numbers.
    pub fn generating_sum(&self) -> AltOpId {
        match self {
            AltNumberId::AHigh => AltOpId::A_SUM_HIGH,
            AltNumberId::KHigh => AltOpId::K_SUM_HIGH,
            AltNumberId::KLow => AltOpId::K_SUM,
        }
    }
}

fn check_param(param: f64) -> Result<Scalar> {
    if param == 0.0 || !param.is_finite() {
        return Err(Error::invalid(format!("parameter must be finite and non-zero, got {param}")));
    }
    Ok(Scalar::from_real(param))
}

fn q_for(param: &Scalar) -> Result<DeformParam> {
    DeformParam::new(&Scalar::one() - param)
}

/// Evaluates one of the eight a-/k-operations.
pub fn alt_binary(id: AltOpId, x: &Scalar, y: &Scalar, param: f64) -> Result<Scalar> {
    let k = check_param(param)?;
    let one = Scalar::one();
    match (id.family, id.variant, id.kind) {
        (Family::A, Variant::Low, Kind::Sum) | (Family::K, Variant::Low, Kind::Product) => {
            Ok(q_sum(x, y, &q_for(&k)?))
        }
        (Family::A, Variant::Low, Kind::Product) | (Family::K, Variant::Low, Kind::Sum) => {
            q_product(x, y, &q_for(&k)?)
        }
        (Family::A, Variant::High, Kind::Sum) => {
            // a·ln(e^u + e^v) evaluated as log-sum-exp
            let u = x.pow_real(&k)?.to_f64() / param;
            let v = y.pow_real(&k)?.to_f64() / param;
            let (hi, lo) = if u >= v { (u, v) } else { (v, u) };
            let inner = param * (hi + (lo - hi).exp().ln_1p());
            Scalar::Float(inner).pow_real(&Scalar::Float(1.0 / param))
        }
        (Family::A, Variant::High, Kind::Product) => {
            let (lx, ly) = (log_shifted(x, param)?, log_shifted(y, param)?);
            Ok(Scalar::Float((lx * ly / param).exp_m1() / param))
        }
        (Family::K, Variant::High, Kind::Sum) => {
            let inv = k.recip()?;
            let px = (&one + &(&k * x)).pow_real(&inv)?;
            let py = (&one + &(&k * y)).pow_real(&inv)?;
            let total = (&px + &py).pow_real(&k)?;
            (&total - &one).checked_div(&k)
        }
        (Family::K, Variant::High, Kind::Product) => {
            let xk = x.pow_real(&k)?;
            let yk = y.pow_real(&k)?;
            let xyk = (x * y).pow_real(&k)?;
            let bracket = (&(&(&xyk - &xk) - &yk) + &(&k + &one)).checked_div(&k)?;
            bracket.pow_real(&k.recip()?)
        }
    }
}

/// `ln(1 + a x)`, requiring `1 + a x > 0`.
fn log_shifted(x: &Scalar, a: f64) -> Result<f64> {
    let ax = a * x.to_f64();
    if 1.0 + ax <= 0.0 {
        return Err(Error::domain(format!("1 + a·x <= 0 for x = {x}, a = {a}")));
    }
    Ok(ax.ln_1p())
}

/// Closed-form deformed number for the given family.
pub fn alt_number(id: AltNumberId, x: &Scalar, g: &Scalar, param: f64) -> Result<Scalar> {
    let k = check_param(param)?;
    let one = Scalar::one();
    match id {
        AltNumberId::AHigh => {
            if !x.is_positive() {
                return Err(Error::domain(format!("x^(a) requires x > 0, got {x}")));
            }
            let inner = param * x.to_f64().ln() + g.pow_real(&k)?.to_f64();
            Scalar::Float(inner).pow_real(&Scalar::Float(1.0 / param))
        }
        AltNumberId::KHigh => {
            let scaled = &x.pow_real(&k)? * &(&one + &(&k * g));
            (&scaled - &one).checked_div(&k)
        }
        AltNumberId::KLow => {
            let base = &(x * &g.pow_real(&k)?) - &(x - &one);
            base.pow_real(&k.recip()?)
        }
    }
}
