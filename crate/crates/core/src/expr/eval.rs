use alloc::format;
use core::fmt;

use super::ast::{BinOp, Expr, ExprKind, Func, Span};
use crate::diamond::diamond;
use crate::error::Error;
use crate::numerics::Scalar;
use crate::ops::{q_exp, q_inverse, q_log, q_opposite, q_product, q_sum, DeformParam};
use crate::qnumbers::{heine, to_qnumber_with};

/// Settings shared by every node of one evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalContext {
    pub q: DeformParam,
    /// Keep literals exact; otherwise they are converted to `f64` first.
    pub exact: bool,
    /// Base `H` used by `heine(n)`.
    pub heine_base: Option<Scalar>,
    /// Generator used by `qnum(x)`.
    pub generator: Scalar,
}

impl EvalContext {
    pub fn new(q: DeformParam) -> Self {
        EvalContext {
            q,
            exact: false,
            heine_base: None,
            generator: Scalar::one(),
        }
    }

    pub fn exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn with_heine_base(mut self, h: Scalar) -> Self {
        self.heine_base = Some(h);
        self
    }

    pub fn with_generator(mut self, g: Scalar) -> Self {
        self.generator = g;
        self
    }
}

/// An evaluation failure and the span of the node that raised it.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalError {
    pub span: Span,
    pub error: Error,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}..{}: {}", self.span.start, self.span.end, self.error)
    }
}

pub fn evaluate(expr: &Expr, ctx: &EvalContext) -> Result<Scalar, EvalError> {
    let q = if ctx.exact { ctx.q.clone() } else { ctx.q.to_float() };
    Evaluator { ctx, q: &q }.eval(expr)
}

struct Evaluator<'a> {
    ctx: &'a EvalContext,
    q: &'a DeformParam,
}

impl Evaluator<'_> {
    fn eval(&self, expr: &Expr) -> Result<Scalar, EvalError> {
        let at = |error: Error| EvalError { span: expr.span, error };
        let p = self.q;
        match &expr.kind {
            ExprKind::Literal(v) => Ok(if self.ctx.exact { v.clone() } else { v.to_float() }),
            ExprKind::Neg(e) => Ok(-self.eval(e)?),
            ExprKind::Binary(op, l, r) => {
                let (x, y) = (self.eval(l)?, self.eval(r)?);
                match op {
                    BinOp::QAdd => Ok(q_sum(&x, &y, p)),
                    BinOp::QSub => q_opposite(&y, p).map(|ny| q_sum(&x, &ny, p)).map_err(at),
                    BinOp::QMul => q_product(&x, &y, p).map_err(at),
                    BinOp::QDiv => q_inverse(&y, p).and_then(|iy| q_product(&x, &iy, p)).map_err(at),
                    BinOp::DMul => diamond(&x, &y, p).map_err(at),
                }
            }
            ExprKind::Call(func, arg) => {
                let v = self.eval(arg)?;
                match func {
                    Func::QExp => q_exp(&v, p),
                    Func::QLn => q_log(&v, p),
                    Func::QNum => to_qnumber_with(&v, p, &self.ctx.generator).map(|n| n.value),
                    Func::Heine => match &self.ctx.heine_base {
                        Some(h) => heine(&v, h),
                        None => Err(Error::InvalidArgument(format!("heine({v}) needs a base H"))),
                    },
                }
                .map_err(at)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::numerics::{approx_equal, Tolerance};

    fn run(src: &str, q: f64, exact: bool) -> Result<Scalar, EvalError> {
        let ctx = EvalContext::new(DeformParam::from_f64(q).unwrap()).exact(exact);
        evaluate(&parse(src).unwrap(), &ctx)
    }

    #[test]
    fn examples() {
        assert_eq!(run("1 q+ 1", 0.0, true).unwrap(), Scalar::int(3));
        assert_eq!(run("1 q+ 1", 0.0, false).unwrap(), Scalar::float(3.0));
        assert_eq!(run("qnum(10)", 0.0, true).unwrap(), Scalar::int(1023));
        let v = run("qln(2) q+ qln(3)", 0.0, false).unwrap();
        assert!(approx_equal(&v, &Scalar::int(5), Tolerance::default()));
        let w = run("qln(6)", 0.0, false).unwrap();
        assert!(approx_equal(&v, &w, Tolerance::default()));
    }

    #[test]
    fn subtraction_and_division_invert() {
        for q in [-1.0, 0.0, 0.5, 1.5] {
            let v = run("(2.5 q+ 0.75) q- 0.75", q, false).unwrap();
            assert!(approx_equal(&v, &Scalar::float(2.5), Tolerance::default()), "q={q}: {v}");
            let v = run("(2.5 q* 0.75) q/ 0.75", q, false).unwrap();
            assert!(approx_equal(&v, &Scalar::float(2.5), Tolerance::new(1e-10, 1e-10)), "q={q}: {v}");
        }
        assert_eq!(run("3 q- 1", 0.0, true).unwrap(), Scalar::int(1));
    }

    #[test]
    fn errors_carry_spans() {
        let err = run("1 q+ 2 q* 0", 0.5, false).unwrap_err();
        assert_eq!(err.span, Span::new(5, 11));
        assert!(err.error.is_domain());
        let err = run("1 d* 2", 2.5, false).unwrap_err();
        assert!(matches!(err.error, Error::Unsupported(_)));
        let err = run("heine(3)", 0.0, false).unwrap_err();
        assert_eq!(err.span, Span::new(0, 8));
    }

    #[test]
    fn heine_uses_context_base() {
        let ctx = EvalContext::new(DeformParam::from_f64(0.0).unwrap())
            .exact(true)
            .with_heine_base(Scalar::int(2));
        assert_eq!(evaluate(&parse("heine(10)").unwrap(), &ctx).unwrap(), Scalar::int(1023));
    }

    #[test]
    fn negation_and_diamond() {
        assert_eq!(run("-(1 q+ 1)", 0.0, true).unwrap(), Scalar::int(-3));
        let v = run("3 d* 7", 0.0, false).unwrap();
        assert!(approx_equal(&v, &Scalar::int(63), Tolerance::default()));
    }
}
