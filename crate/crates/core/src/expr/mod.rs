//! A small expression language over the deformed operations.
//!
//! ```text
//! expr   := term { ("q+" | "q-") term }
//! term   := factor { ("q*" | "q/" | "d*") factor }
//! factor := NUMBER | "-" factor | "(" expr ")" | FN "(" expr ")"
//! FN     := "qexp" | "qln" | "qnum" | "heine"
//! ```
//!
//! `⊕ ⊖ ⊗ ⊘ ◇` are accepted as aliases of `q+ q- q* q/ d*`.

mod ast;
mod eval;
mod parser;

pub use ast::{BinOp, Expr, ExprKind, Func, Span};
pub use eval::{evaluate, EvalContext, EvalError};
pub use parser::{parse, parse_bytes, ParseError, MAX_DEPTH};
