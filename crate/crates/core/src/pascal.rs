//! q-Pascal triangles.
//!
//! Edges hold the generator `g` and every interior entry is the q-sum of
//! its two parents. Because ⊕_q maps `x_q ⊕ y_q` to `(x + y)_q`, entry
//! `(n, k)` equals `(C(n, k))_q`; [`entry_closed`] computes that value
//! independently and serves as the oracle for the recurrence.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::ops::{q_sum, DeformParam};
use crate::qnumbers::to_qnumber_with;

/// Default cap on the estimated decimal digits of the largest exact entry.
pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriangleMode {
    Exact,
    Float,
}

impl TriangleMode {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleMode::Exact => "exact",
            TriangleMode::Float => "float",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    q: DeformParam,
    g: Scalar,
    rows: Vec<Vec<Scalar>>,
    mode: TriangleMode,
}

impl Triangle {
    pub fn q(&self) -> &DeformParam {
        &self.q
    }

    pub fn generator(&self) -> &Scalar {
        &self.g
    }

    pub fn mode(&self) -> TriangleMode {
        self.mode
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry `k` of row `n`, both counted from zero.
    pub fn entry(&self, n: usize, k: usize) -> Option<&Scalar> {
        self.rows.get(n)?.get(k)
    }
}

/// Builds `rows` rows with generator 1 and the default digit cap.
pub fn build_triangle(rows: usize, p: &DeformParam) -> Result<Triangle> {
    build_triangle_with(rows, p, &Scalar::one(), DEFAULT_DIGIT_CAP)
}

/// Builds a triangle by the q-sum recurrence.
///
/// Exact arithmetic is used when `1 - q` and `g` are integers; a rational
/// `q` with non-integer `1 - q` and any float input give a float triangle.
pub fn build_triangle_with(rows: usize, p: &DeformParam, g: &Scalar, digit_cap: u64) -> Result<Triangle> {
    if rows == 0 {
        return Err(Error::invalid("a triangle needs at least one row"));
    }
    if !g.is_finite() {
        return Err(Error::invalid(format!("generator {g} is not finite")));
    }
    let exact = p.has_integer_one_minus_q() && g.is_integer() && g.is_exact();
    let (p, g, mode) = if exact {
        (p.clone(), g.clone(), TriangleMode::Exact)
    } else {
        (p.to_float(), g.to_float(), TriangleMode::Float)
    };
    if mode == TriangleMode::Exact {
        let digits = digit_estimate(rows, &p, &g);
        if digits > digit_cap as f64 {
            return Err(Error::Resource(format!(
                "largest entry of a {rows}-row triangle needs about {digits:.0} digits (cap {digit_cap})"
            )));
        }
    }
    let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(rows);
    out.push(vec![g.clone()]);
    for n in 1..rows {
        let prev = &out[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(g.clone());
        for k in 1..n {
            row.push(q_sum(&prev[k - 1], &prev[k], &p));
        }
        row.push(g.clone());
        out.push(row);
    }
    Ok(Triangle { q: p, g, rows: out, mode })
}

/// Decimal digits of `(2-q)^C(n, n/2)`-sized entries, from `log10|1 + (1-q)g|`.
fn digit_estimate(rows: usize, p: &DeformParam, g: &Scalar) -> f64 {
    let n = rows - 1;
    let c = binomial(n as u64, n as u64 / 2).to_f64().unwrap_or(f64::INFINITY);
    let base = (Scalar::one() + p.one_minus_q() * g.clone()).to_f64().abs();
    if base <= 1.0 {
        return 0.0;
    }
    c * Float::log10(base)
}

/// `C(n, k)` in exact integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(C(n, k))_q`, the closed form of entry `(n, k)`.
pub fn entry_closed(n: u64, k: u64, p: &DeformParam) -> Result<Scalar> {
    entry_closed_with(n, k, p, &Scalar::one())
}

pub fn entry_closed_with(n: u64, k: u64, p: &DeformParam, g: &Scalar) -> Result<Scalar> {
    if k > n {
        return Err(Error::invalid(format!("entry ({n}, {k}) lies outside the triangle")));
    }
    Ok(to_qnumber_with(&Scalar::Int(binomial(n, k)), p, g)?.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternLabel {
    Increasing,
    Asymptotic,
    Fixed,
    SubUnitBounded,
    SelfSimilarBinary,
    Unsupported,
}

impl PatternLabel {
    pub fn name(&self) -> &'static str {
        match self {
            PatternLabel::Increasing => "increasing",
            PatternLabel::Asymptotic => "asymptotic",
            PatternLabel::Fixed => "fixed",
            PatternLabel::SubUnitBounded => "sub-unit-bounded",
            PatternLabel::SelfSimilarBinary => "self-similar-binary",
            PatternLabel::Unsupported => "unsupported",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternClass {
    pub label: PatternLabel,
    /// Limit of `n_q` as `n` grows, where it is finite.
    pub limit_value: Option<Scalar>,
}

/// Pattern of the q-Pascal triangle for `p`.
pub fn classify(p: &DeformParam) -> PatternClass {
    let q = p.q();
    let limit = || (q - &Scalar::one()).recip().ok();
    let (label, limit_value) = if p.uses_classical_formulas() || *q <= Scalar::one() {
        (PatternLabel::Increasing, None)
    } else if *q < Scalar::int(2) {
        (PatternLabel::Asymptotic, limit())
    } else if *q == Scalar::int(2) || q.to_f64() == 2.0 {
        (PatternLabel::Fixed, Some(Scalar::one()))
    } else if *q < Scalar::int(3) {
        (PatternLabel::SubUnitBounded, limit())
    } else if *q == Scalar::int(3) || q.to_f64() == 3.0 {
        (PatternLabel::SelfSimilarBinary, None)
    } else {
        (PatternLabel::Unsupported, None)
    };
    PatternClass { label, limit_value }
}

/// Centered text pyramid with entries truncated to `decimals` places.
pub fn render_text(t: &Triangle, decimals: u32) -> String {
    let lines: Vec<String> = t
        .rows
        .iter()
        .map(|row| row.iter().map(|v| v.truncated(decimals)).collect::<Vec<_>>().join(" "))
        .collect();
    let width = lines.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for line in &lines {
        let pad = (width - line.chars().count()) / 2;
        out.extend(core::iter::repeat_n(' ', pad));
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// One comma-separated row per line, values at full precision.
pub fn render_csv(t: &Triangle) -> String {
    let mut out = String::new();
    for row in &t.rows {
        let cells: Vec<String> = row.iter().map(|v| v.to_decimal_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{approx_equal, Tolerance};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn q(v: f64) -> DeformParam {
        DeformParam::from_f64(v).unwrap()
    }

    fn ints(row: &[Scalar]) -> Vec<i64> {
        row.iter().map(|v| v.integer_value().unwrap().to_i64().unwrap()).collect()
    }

    #[test]
    fn q0_bottom_row() {
        let t = build_triangle(7, &q(0.0)).unwrap();
        assert_eq!(t.mode(), TriangleMode::Exact);
        assert_eq!(ints(&t.rows()[6]), [1, 63, 32767, 1048575, 32767, 63, 1]);
        assert_eq!(ints(&t.rows()[3]), [1, 7, 7, 1]);
    }

    #[test]
    fn q2_is_all_ones() {
        let t = build_triangle(7, &q(2.0)).unwrap();
        assert!(t.rows().iter().flatten().all(|v| v.is_one()));
    }

    #[test]
    fn q3_is_pascal_mod_2() {
        let t = build_triangle(64, &q(3.0)).unwrap();
        assert_eq!(t.mode(), TriangleMode::Exact);
        for (n, row) in t.rows().iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                let lucas = (k & (n - k)) == 0;
                assert_eq!(v, &Scalar::int(lucas as i64), "({n}, {k})");
            }
        }
    }

    #[test]
    fn q15_row_five_truncates() {
        let t = build_triangle(9, &q(1.5)).unwrap();
        assert_eq!(t.mode(), TriangleMode::Float);
        let row: Vec<String> = t.rows()[4].iter().map(|v| v.truncated(3)).collect();
        assert_eq!(row, ["1", "1.875", "1.968", "1.875", "1"]);
        assert_eq!(t.rows()[8][1].truncated(3), "1.992");
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(entry_closed(6, 3, &q(0.0)).unwrap(), Scalar::int(1048575));
        assert_eq!(entry_closed(5, 2, &q(0.0)).unwrap(), Scalar::int(1023));
        for qv in [-1.0, 0.5, 2.5] {
            assert!(entry_closed(9, 0, &q(qv)).unwrap().is_one());
        }
        assert!(entry_closed(2, 3, &q(0.0)).is_err());
    }

    #[test]
    fn recurrence_matches_closed_form() {
        for qv in [-1.0, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0] {
            let p = q(qv);
            let t = build_triangle(17, &p).unwrap();
            for (n, row) in t.rows().iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let c = entry_closed(n as u64, k as u64, &p).unwrap();
                    if t.mode() == TriangleMode::Exact {
                        assert_eq!(v, &c, "q={qv} ({n}, {k})");
                    } else {
                        assert!(approx_equal(v, &c, Tolerance::new(0.0, 1e-9)), "q={qv} ({n}, {k})");
                    }
                }
            }
        }
    }

    #[test]
    fn rational_q_falls_back_to_float() {
        let p = DeformParam::new(Scalar::ratio(1, 2)).unwrap();
        assert_eq!(build_triangle(4, &p).unwrap().mode(), TriangleMode::Float);
        let t = build_triangle_with(4, &q(0.0), &Scalar::float(0.5), DEFAULT_DIGIT_CAP).unwrap();
        assert_eq!(t.mode(), TriangleMode::Float);
        assert_eq!(t.rows()[3][0], Scalar::float(0.5));
    }

    #[test]
    fn generator_edges_and_oracle() {
        let g = Scalar::int(2);
        let p = q(-1.0);
        let t = build_triangle_with(8, &p, &g, DEFAULT_DIGIT_CAP).unwrap();
        for n in 0..8u64 {
            for k in 0..=n {
                let c = entry_closed_with(n, k, &p, &g).unwrap();
                assert_eq!(t.entry(n as usize, k as usize).unwrap(), &c);
            }
        }
    }

    #[test]
    fn digit_cap() {
        assert!(matches!(build_triangle(40, &q(0.0)), Err(Error::Resource(_))));
        assert!(matches!(
            build_triangle_with(20, &q(0.0), &Scalar::one(), 1000),
            Err(Error::Resource(_))
        ));
        assert!(build_triangle(20, &q(0.0)).is_ok());
        assert!(build_triangle(200, &q(3.0)).is_ok());
        assert!(build_triangle(0, &q(0.0)).is_err());
    }

    #[test]
    fn classification() {
        let label = |v: f64| classify(&q(v)).label;
        assert_eq!(label(0.0), PatternLabel::Increasing);
        assert_eq!(label(1.0), PatternLabel::Increasing);
        assert_eq!(label(-3.0), PatternLabel::Increasing);
        assert_eq!(classify(&q(1.5)), PatternClass {
            label: PatternLabel::Asymptotic,
            limit_value: Some(Scalar::float(2.0)),
        });
        assert_eq!(label(2.0), PatternLabel::Fixed);
        assert_eq!(label(2.5), PatternLabel::SubUnitBounded);
        assert_eq!(label(3.0), PatternLabel::SelfSimilarBinary);
        assert_eq!(label(3.5), PatternLabel::Unsupported);
        assert_eq!(PatternLabel::SelfSimilarBinary.name(), "self-similar-binary");
    }

    #[test]
    fn asymptotic_bounds() {
        for qv in [1.2, 1.5, 1.8] {
            let lim = 1.0 / (qv - 1.0);
            let t = build_triangle(30, &q(qv)).unwrap();
            for row in &t.rows()[2..] {
                for v in &row[1..row.len() - 1] {
                    let v = v.to_f64();
                    assert!(v > 1.0 && v <= lim * (1.0 + 1e-12), "q={qv}: {v}");
                }
            }
            let gaps: Vec<f64> = (1..15).map(|n| (t.rows()[2 * n][n].to_f64() - lim).abs()).collect();
            assert!(gaps.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        }
    }

    #[test]
    fn sub_unit_bounds() {
        for qv in [2.2, 2.5, 2.9] {
            let t = build_triangle(20, &q(qv)).unwrap();
            for v in t.rows().iter().flatten() {
                let v = v.to_f64();
                assert!(v > 0.0 && v <= 1.0, "q={qv}: {v}");
            }
        }
    }

    #[test]
    fn text_and_csv() {
        let t = build_triangle(3, &q(2.0)).unwrap();
        assert_eq!(render_text(&t, 3), "  1\n 1 1\n1 1 1\n");
        assert_eq!(render_csv(&build_triangle(1, &q(0.0)).unwrap()), "1\n");
        let t = build_triangle(3, &q(0.0)).unwrap();
        assert_eq!(render_csv(&t), "1\n1,1\n1,3,1\n");
        assert_eq!(t.mode().name().to_string(), "exact");
    }

    proptest! {
        #[test]
        fn rows_are_symmetric(qv in prop_oneof![Just(-1.0), Just(0.0), Just(3.0), -2.0f64..2.9], rows in 1usize..17) {
            let t = build_triangle(rows, &q(qv)).unwrap();
            for row in t.rows() {
                for k in 0..row.len() {
                    let (a, b) = (&row[k], &row[row.len() - 1 - k]);
                    if t.mode() == TriangleMode::Exact {
                        prop_assert_eq!(a, b);
                    } else {
                        prop_assert!(approx_equal(a, b, Tolerance::default()));
                    }
                }
            }
        }
    }
}
