//! q-sum, q-product, q-logarithm, q-exponential and their inverse elements.
//!
//! Every operation has an exact classical branch at `q = 1`. Float
//! parameters within `1e-12` of one also take the classical branch, since
//! the general formulas divide by `1 - q`.

use alloc::format;
use core::cmp::Ordering;

#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::numerics::Scalar;

const NEAR_ONE: f64 = 1e-12;

/// The deformation parameter `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformParam {
    q: Scalar,
}

impl DeformParam {
    pub fn new(q: impl Into<Scalar>) -> Result<Self> {
        let q = q.into();
        if !q.is_finite() {
            return Err(Error::invalid(format!("q must be finite, got {q}")));
        }
        Ok(DeformParam { q })
    }

    /// Integral values become exact; `from_f64(0.0)` is the exact `q = 0`.
    pub fn from_f64(q: f64) -> Result<Self> {
        Self::new(Scalar::from_real(q))
    }

    pub fn classical() -> Self {
        DeformParam { q: Scalar::one() }
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }

    pub fn q_f64(&self) -> f64 {
        self.q.to_f64()
    }

    /// `1 - q`, exact whenever `q` is.
    pub fn one_minus_q(&self) -> Scalar {
        &Scalar::one() - &self.q
    }

    /// `2 - q`, the base of the closed form of `n_q`.
    pub fn two_minus_q(&self) -> Scalar {
        &Scalar::int(2) - &self.q
    }

    /// True iff `q = 1` exactly.
    pub fn is_classical(&self) -> bool {
        self.q.is_one()
    }

    /// True when the classical formulas are used (`q = 1`, or a float `q` with `|1-q| < 1e-12`).
    pub fn uses_classical_formulas(&self) -> bool {
        self.is_classical() || (!self.q.is_exact() && (1.0 - self.q_f64()).abs() < NEAR_ONE)
    }

    /// Same parameter in float mode.
    pub fn to_float(&self) -> Self {
        DeformParam { q: self.q.to_float() }
    }

    /// True when `1 - q` is an exact integer, the regime where q-sums of integers stay integers.
    pub fn has_integer_one_minus_q(&self) -> bool {
        let d = self.one_minus_q();
        d.is_exact() && d.is_integer()
    }
}

/// `x ⊕_q y = x + y + (1-q)xy`.
pub fn q_sum(x: &Scalar, y: &Scalar, p: &DeformParam) -> Scalar {
    if p.uses_classical_formulas() {
        return x + y;
    }
    let cross = &(&p.one_minus_q() * x) * y;
    &(x + y) + &cross
}

/// The `y'` with `y ⊕_q y' = 0`: `-y / (1 + (1-q)y)`.
pub fn q_opposite(y: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if p.uses_classical_formulas() {
        return Ok(-y);
    }
    let denom = &Scalar::one() + &(&p.one_minus_q() * y);
    if denom.is_zero() {
        return Err(Error::domain(format!("{y} = -1/(1-q) has no q-opposite")));
    }
    (-y).checked_div(&denom)
}

/// `x ⊗_q y = [x^(1-q) + y^(1-q) - 1]_+^(1/(1-q))` for `x, y > 0`.
///
/// A non-positive bracket is cut off to zero when `1/(1-q) > 0` and is a
/// domain error otherwise.
pub fn q_product(x: &Scalar, y: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::domain(format!(
            "q-product requires positive operands, got {x} and {y}"
        )));
    }
    if p.uses_classical_formulas() {
        return Ok(x * y);
    }
    let e = p.one_minus_q();
    let bracket = &(&x.pow_real(&e)? + &y.pow_real(&e)?) - &Scalar::one();
    cutoff_power(&bracket, &e)
}

/// The `y'` with `y ⊗_q y' = 1`: `(2 - y^(1-q))^(1/(1-q))`.
pub fn q_inverse(y: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if !y.is_positive() {
        return Err(Error::domain(format!("q-inverse requires a positive operand, got {y}")));
    }
    if p.uses_classical_formulas() {
        return y.recip();
    }
    let e = p.one_minus_q();
    let base = &Scalar::int(2) - &y.pow_real(&e)?;
    if !base.is_positive() {
        return Err(Error::domain(format!("{y} has no q-inverse: 2 - y^(1-q) <= 0")));
    }
    base.pow_real(&e.recip()?)
}

/// `ln_q x = (x^(1-q) - 1)/(1-q)` for `x > 0`.
pub fn q_log(x: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if !x.is_positive() {
        return Err(Error::domain(format!("q-logarithm requires x > 0, got {x}")));
    }
    if p.uses_classical_formulas() {
        return Ok(Scalar::Float(x.to_f64().ln()));
    }
    let e = p.one_minus_q();
    let power = x.pow_real(&e)?;
    // expm1 only pays off when x^(1-q) is close to 1
    if power.is_exact() || (power.to_f64() - 1.0).abs() >= 0.5 {
        return (&power - &Scalar::one()).checked_div(&e);
    }
    let e = e.to_f64();
    Ok(Scalar::Float((e * x.to_f64().ln()).exp_m1() / e))
}

/// `e_q^x = [1 + (1-q)x]_+^(1/(1-q))`.
pub fn q_exp(x: &Scalar, p: &DeformParam) -> Result<Scalar> {
    if p.uses_classical_formulas() {
        return Ok(Scalar::Float(x.to_f64().exp()));
    }
    let e = p.one_minus_q();
    let bracket = &Scalar::one() + &(&e * x);
    if !bracket.is_exact() && bracket.is_positive() && (bracket.to_f64() - 1.0).abs() < 0.5 {
        let e = e.to_f64();
        return Ok(Scalar::Float(((e * x.to_f64()).ln_1p() / e).exp()));
    }
    cutoff_power(&bracket, &e)
}

/// `[bracket]_+^(1/e)` with the zero-vs-error split on the sign of `1/e`.
fn cutoff_power(bracket: &Scalar, e: &Scalar) -> Result<Scalar> {
    match bracket.sign() {
        Some(Ordering::Greater) => bracket.pow_real(&e.recip()?),
        Some(_) if e.is_positive() => Ok(if bracket.is_exact() {
            Scalar::zero()
        } else {
            Scalar::Float(0.0)
        }),
        Some(_) => Err(Error::domain(
            "cutoff bracket is non-positive and 1/(1-q) < 0 (zero to a negative power)",
        )),
        None => Err(Error::domain("bracket is NaN")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_equal, Mode, Tolerance};
    use proptest::prelude::*;

    fn q(v: f64) -> DeformParam {
        DeformParam::from_f64(v).unwrap()
    }

    fn close(a: &Scalar, b: f64) -> bool {
        approx_equal(a, &Scalar::float(b), Tolerance::new(1e-12, 1e-12))
    }

    #[test]
    fn q_sum_examples() {
        assert_eq!(q_sum(&Scalar::int(1), &Scalar::int(1), &q(0.0)), Scalar::int(3));
        assert_eq!(q_sum(&Scalar::int(7), &Scalar::int(7), &q(0.0)), Scalar::int(63));
        assert_eq!(q_sum(&Scalar::float(1.0), &Scalar::float(1.0), &q(1.5)), Scalar::float(1.5));
        for qv in [-2.0, 0.0, 0.5, 1.0, 3.0] {
            assert_eq!(q_sum(&Scalar::int(9), &Scalar::zero(), &q(qv)).to_f64(), 9.0);
        }
    }

    #[test]
    fn q_sum_stays_exact() {
        let v = q_sum(&Scalar::int(5), &Scalar::int(3), &q(-1.0));
        assert_eq!(v.mode(), Mode::ExactInt);
        assert_eq!(v, Scalar::int(38));
    }

    #[test]
    fn q_opposite_examples() {
        assert_eq!(q_opposite(&Scalar::zero(), &q(0.3)).unwrap().to_f64(), 0.0);
        assert_eq!(q_opposite(&Scalar::int(1), &q(0.0)).unwrap(), Scalar::ratio(-1, 2));
        assert!(matches!(q_opposite(&Scalar::int(-1), &q(0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn q_product_examples() {
        for qv in [-1.0, 0.0, 0.5, 2.5] {
            let x = Scalar::float(1.7);
            assert!(close(&q_product(&x, &Scalar::int(1), &q(qv)).unwrap(), 1.7));
        }
        assert_eq!(q_product(&Scalar::int(2), &Scalar::int(2), &q(0.0)).unwrap(), Scalar::int(3));
        assert!(q_product(&Scalar::int(2), &Scalar::int(2), &q(3.0)).is_err());
        assert!(q_product(&Scalar::int(2), &Scalar::int(0), &q(0.5)).is_err());
        assert!(q_product(&Scalar::int(-2), &Scalar::int(1), &q(0.5)).is_err());
    }

    #[test]
    fn q_product_matches_exp_of_log_sum() {
        // e_q^{ln_q 2 + ln_q 2} is the oracle for 2 ⊗_0 2.
        let p = q(0.0);
        let l = q_log(&Scalar::int(2), &p).unwrap();
        let oracle = q_exp(&(&l + &l), &p).unwrap();
        assert_eq!(q_product(&Scalar::int(2), &Scalar::int(2), &p).unwrap(), oracle);
    }

    #[test]
    fn q_product_cutoff_returns_zero_for_q_below_one() {
        // bracket 0.1^0.5 * 2 - 1 < 0 with exponent 2 > 0
        let v = q_product(&Scalar::float(0.1), &Scalar::float(0.1), &q(0.5)).unwrap();
        assert_eq!(v.to_f64(), 0.0);
    }

    #[test]
    fn q_inverse_examples() {
        assert_eq!(q_inverse(&Scalar::int(1), &q(0.7)).unwrap().to_f64(), 1.0);
        assert_eq!(q_inverse(&Scalar::ratio(3, 2), &q(0.0)).unwrap(), Scalar::ratio(1, 2));
        // 2 - 2^{-2} = 7/4 > 0: the inverse exists and is (7/4)^{-1/2}.
        let inv = q_inverse(&Scalar::int(2), &q(3.0)).unwrap();
        assert!(close(&inv, (4.0f64 / 7.0).sqrt()));
        assert!(close(&q_product(&Scalar::int(2), &inv, &q(3.0)).unwrap(), 1.0));
        // 2 - 3^1 < 0 at q = 0
        assert!(q_inverse(&Scalar::int(3), &q(0.0)).is_err());
        assert!(q_inverse(&Scalar::int(0), &q(0.0)).is_err());
    }

    #[test]
    fn q_log_examples() {
        assert_eq!(q_log(&Scalar::int(1), &q(0.4)).unwrap().to_f64(), 0.0);
        assert_eq!(q_log(&Scalar::int(2), &q(0.0)).unwrap(), Scalar::int(1));
        let p = q(0.0);
        let six = q_log(&Scalar::int(6), &p).unwrap();
        assert_eq!(six, Scalar::int(5));
        let sum = q_sum(&q_log(&Scalar::int(2), &p).unwrap(), &q_log(&Scalar::int(3), &p).unwrap(), &p);
        assert_eq!(six, sum);
        assert!(q_log(&Scalar::zero(), &p).is_err());
        assert!(q_log(&Scalar::int(-1), &p).is_err());
    }

    #[test]
    fn q_exp_examples() {
        assert_eq!(q_exp(&Scalar::zero(), &q(0.4)).unwrap().to_f64(), 1.0);
        assert_eq!(q_exp(&Scalar::int(2), &q(0.0)).unwrap(), Scalar::int(3));
        assert_eq!(q_exp(&Scalar::int(-3), &q(0.0)).unwrap(), Scalar::zero());
        // bracket 1 - 0.5*4 < 0 with exponent -2
        assert!(q_exp(&Scalar::float(4.0), &q(1.5)).is_err());
    }

    #[test]
    fn classical_branch() {
        let p = DeformParam::classical();
        assert!(p.is_classical());
        assert_eq!(q_sum(&Scalar::int(2), &Scalar::int(3), &p), Scalar::int(5));
        assert_eq!(q_product(&Scalar::int(2), &Scalar::int(3), &p).unwrap(), Scalar::int(6));
        assert!(close(&q_log(&Scalar::float(2.0), &p).unwrap(), core::f64::consts::LN_2));
        assert!(close(&q_exp(&Scalar::float(1.0), &p).unwrap(), core::f64::consts::E));
        let near = DeformParam::new(Scalar::float(1.0 + 1e-13)).unwrap();
        assert!(!near.is_classical());
        assert!(near.uses_classical_formulas());
    }

    #[test]
    fn non_finite_q_rejected() {
        assert!(DeformParam::from_f64(f64::NAN).is_err());
        assert!(DeformParam::from_f64(f64::INFINITY).is_err());
    }

    #[test]
    fn continuity_near_one() {
        let xs = [0.3, 0.9, 1.0, 1.7, 2.5];
        for qv in [1.0 + 1e-8, 1.0 - 1e-8] {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            for &a in &xs {
                for &b in &xs {
                    let (x, y) = (Scalar::float(a), Scalar::float(b));
                    let rel = |v: &Scalar, c: f64| (v.to_f64() - c).abs() / c.abs().max(1.0);
                    assert!(rel(&q_sum(&x, &y, &p), a + b) <= 1e-6);
                    assert!(rel(&q_product(&x, &y, &p).unwrap(), a * b) <= 1e-6);
                    assert!(rel(&q_log(&x, &p).unwrap(), a.ln()) <= 1e-6);
                    assert!(rel(&q_exp(&x, &p).unwrap(), a.exp()) <= 1e-6);
                }
            }
        }
    }

    #[test]
    fn non_distributive_for_every_q_in_grid() {
        let grid = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.5, 2.0, 2.5, 3.0];
        let operands = [0.5, 0.8, 1.3, 2.0, 3.0];
        for qv in grid {
            let p = q(qv);
            let x = Scalar::float(2.0);
            let found = operands.iter().any(|&a| {
                operands.iter().any(|&b| {
                    let (y, z) = (Scalar::float(a), Scalar::float(b));
                    match (q_product(&x, &(&y + &z), &p), q_product(&x, &y, &p), q_product(&x, &z, &p)) {
                        (Ok(l), Ok(r1), Ok(r2)) => (l.to_f64() - (r1.to_f64() + r2.to_f64())).abs() > 1e-9,
                        _ => false,
                    }
                })
            });
            assert!(found, "no non-distributivity witness for q = {qv}");
        }
    }

    fn any_q() -> impl Strategy<Value = f64> {
        prop_oneof![-3.0f64..0.99, 1.01f64..3.0]
    }

    proptest! {
        #[test]
        fn q_sum_associative_commutative(
            x in -0.3f64..3.0, y in -0.3f64..3.0, z in -0.3f64..3.0, qv in any_q(),
        ) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let (x, y, z) = (Scalar::float(x), Scalar::float(y), Scalar::float(z));
            let tol = Tolerance::new(1e-9, 1e-9);
            prop_assert!(approx_equal(&q_sum(&q_sum(&x, &y, &p), &z, &p), &q_sum(&x, &q_sum(&y, &z, &p), &p), tol));
            prop_assert!(approx_equal(&q_sum(&x, &y, &p), &q_sum(&y, &x, &p), tol));
        }

        #[test]
        fn q_sum_exact_associativity(x in -50i64..50, y in -50i64..50, z in -50i64..50, qi in -4i64..4) {
            let p = DeformParam::new(Scalar::int(qi)).unwrap();
            let (x, y, z) = (Scalar::int(x), Scalar::int(y), Scalar::int(z));
            prop_assert_eq!(q_sum(&q_sum(&x, &y, &p), &z, &p), q_sum(&x, &q_sum(&y, &z, &p), &p));
        }

        #[test]
        fn q_product_associative_commutative(
            x in 0.5f64..2.0, y in 0.5f64..2.0, z in 0.5f64..2.0, qv in -2.0f64..0.9,
        ) {
            // q < 1 with operands >= 0.5 keeps every bracket positive.
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let (x, y, z) = (Scalar::float(x), Scalar::float(y), Scalar::float(z));
            let tol = Tolerance::new(1e-9, 1e-9);
            let xy = q_product(&x, &y, &p).unwrap();
            let yz = q_product(&y, &z, &p).unwrap();
            let (Ok(l), Ok(r)) = (q_product(&xy, &z, &p), q_product(&x, &yz, &p)) else {
                return Ok(());
            };
            prop_assert!(approx_equal(&l, &r, tol));
            prop_assert!(approx_equal(&xy, &q_product(&y, &x, &p).unwrap(), tol));
        }

        #[test]
        fn exp_log_round_trip(x in 0.05f64..20.0, qv in any_q()) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let x = Scalar::float(x);
            let tol = Tolerance::new(1e-9, 1e-9);
            let l = q_log(&x, &p).unwrap();
            prop_assert!(approx_equal(&q_exp(&l, &p).unwrap(), &x, tol));
        }

        #[test]
        fn log_exp_round_trip(x in -0.4f64..0.4, qv in any_q()) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let bracket = 1.0 + (1.0 - qv) * x;
            prop_assume!(bracket > 1e-3);
            let x = Scalar::float(x);
            let e = q_exp(&x, &p).unwrap();
            prop_assert!(approx_equal(&q_log(&e, &p).unwrap(), &x, Tolerance::new(1e-9, 1e-9)));
        }

        #[test]
        fn log_of_product_is_q_sum_of_logs(x in 0.1f64..10.0, y in 0.1f64..10.0, qv in any_q()) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let (sx, sy) = (Scalar::float(x), Scalar::float(y));
            let lhs = q_log(&Scalar::float(x * y), &p).unwrap();
            let rhs = q_sum(&q_log(&sx, &p).unwrap(), &q_log(&sy, &p).unwrap(), &p);
            prop_assert!(approx_equal(&lhs, &rhs, Tolerance::new(1e-9, 1e-9)));
        }

        #[test]
        fn exp_of_sum_is_q_product_of_exps(x in 0.0f64..0.4, y in 0.0f64..0.4, qv in any_q()) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            prop_assume!(1.0 + (1.0 - qv) * (x + y) > 1e-3);
            let lhs = q_exp(&Scalar::float(x + y), &p).unwrap();
            let ex = q_exp(&Scalar::float(x), &p).unwrap();
            let ey = q_exp(&Scalar::float(y), &p).unwrap();
            let rhs = q_product(&ex, &ey, &p).unwrap();
            prop_assert!(approx_equal(&lhs, &rhs, Tolerance::new(1e-9, 1e-9)));
        }

        #[test]
        fn opposite_and_inverse_satisfy_definitions(y in 0.1f64..3.0, qv in any_q()) {
            let p = DeformParam::new(Scalar::float(qv)).unwrap();
            let y = Scalar::float(y);
            let tol = Tolerance::new(1e-9, 1e-9);
            if let Ok(o) = q_opposite(&y, &p) {
                prop_assert!(approx_equal(&q_sum(&y, &o, &p), &Scalar::float(0.0), tol));
            }
            if let Ok(i) = q_inverse(&y, &p) {
                prop_assert!(approx_equal(&q_product(&y, &i, &p).unwrap(), &Scalar::float(1.0), tol));
            }
        }
    }
}
