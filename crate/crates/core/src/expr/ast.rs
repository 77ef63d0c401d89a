use alloc::boxed::Box;
use core::fmt;

use crate::numerics::Scalar;

/// Half-open byte range `[start, end)` into the source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn join(self, other: Span) -> Span {
        Span::new(self.start.min(other.start), self.end.max(other.end))
    }

    pub fn contains(&self, inner: &Span) -> bool {
        self.start <= inner.start && inner.end <= self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    QAdd,
    QSub,
    QMul,
    QDiv,
    DMul,
}

impl BinOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            BinOp::QAdd => "q+",
            BinOp::QSub => "q-",
            BinOp::QMul => "q*",
            BinOp::QDiv => "q/",
            BinOp::DMul => "d*",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BinOp::QAdd => "qadd",
            BinOp::QSub => "qsub",
            BinOp::QMul => "qmul",
            BinOp::QDiv => "qdiv",
            BinOp::DMul => "dmul",
        }
    }

    /// 1 for the additive level, 2 for the multiplicative level.
    pub fn precedence(&self) -> u8 {
        match self {
            BinOp::QAdd | BinOp::QSub => 1,
            BinOp::QMul | BinOp::QDiv | BinOp::DMul => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    QExp,
    QLn,
    QNum,
    Heine,
}

impl Func {
    pub const ALL: [Func; 4] = [Func::QExp, Func::QLn, Func::QNum, Func::Heine];

    pub fn name(&self) -> &'static str {
        match self {
            Func::QExp => "qexp",
            Func::QLn => "qln",
            Func::QNum => "qnum",
            Func::Heine => "heine",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Literal(Scalar),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

/// A parsed expression. The derived equality compares spans too; use
/// [`Expr::same_structure`] to compare trees only.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Self {
        Expr { kind, span }
    }

    pub fn literal(v: impl Into<Scalar>) -> Self {
        Expr::new(ExprKind::Literal(v.into()), Span::default())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(e: Expr) -> Self {
        Expr::new(ExprKind::Neg(Box::new(e)), Span::default())
    }

    pub fn binary(op: BinOp, l: Expr, r: Expr) -> Self {
        Expr::new(ExprKind::Binary(op, Box::new(l), Box::new(r)), Span::default())
    }

    pub fn call(f: Func, arg: Expr) -> Self {
        Expr::new(ExprKind::Call(f, Box::new(arg)), Span::default())
    }

    /// Equality of node kinds and literal values, ignoring spans.
    pub fn same_structure(&self, other: &Expr) -> bool {
        match (&self.kind, &other.kind) {
            (ExprKind::Literal(a), ExprKind::Literal(b)) => a == b,
            (ExprKind::Neg(a), ExprKind::Neg(b)) => a.same_structure(b),
            (ExprKind::Binary(o1, l1, r1), ExprKind::Binary(o2, l2, r2)) => {
                o1 == o2 && l1.same_structure(l2) && r1.same_structure(r2)
            }
            (ExprKind::Call(f1, a1), ExprKind::Call(f2, a2)) => f1 == f2 && a1.same_structure(a2),
            _ => false,
        }
    }

    /// Every child span lies inside its parent's.
    pub fn spans_nest(&self) -> bool {
        let inside = |c: &Expr| self.span.contains(&c.span) && c.spans_nest();
        match &self.kind {
            ExprKind::Literal(_) => true,
            ExprKind::Neg(e) | ExprKind::Call(_, e) => inside(e),
            ExprKind::Binary(_, l, r) => inside(l) && inside(r),
        }
    }

    pub fn depth(&self) -> usize {
        match &self.kind {
            ExprKind::Literal(_) => 1,
            ExprKind::Neg(e) | ExprKind::Call(_, e) => 1 + e.depth(),
            ExprKind::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

/// Prints source text that parses back to the same structure, with only
/// the parentheses the grammar needs.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Literal(v) => {
                if v.is_negative() {
                    write!(f, "(-{})", v.abs().to_decimal_string())
                } else {
                    f.write_str(&v.to_decimal_string())
                }
            }
            ExprKind::Neg(e) => match e.kind {
                ExprKind::Binary(..) => write!(f, "-({e})"),
                _ => write!(f, "-{e}"),
            },
            ExprKind::Call(func, arg) => write!(f, "{}({arg})", func.name()),
            ExprKind::Binary(op, l, r) => {
                let prec = op.precedence();
                let needs = |e: &Expr, strict: bool| match &e.kind {
                    ExprKind::Binary(o, ..) => o.precedence() < prec || (strict && o.precedence() == prec),
                    _ => false,
                };
                write_operand(f, l, needs(l, false))?;
                write!(f, " {} ", op.symbol())?;
                write_operand(f, r, needs(r, true))
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}
