//! Deformed arithmetic: the q-sum and q-product, deformed numbers, the
//! distributive ◇_q product, alternative a-/k-operations, q-Pascal
//! triangles and an expression language over them.
//!
//! The crate is `no_std` and only needs `alloc`. Values are [`Scalar`]s
//! that stay exact (big integers or rationals) whenever the operation
//! allows it and fall back to `f64` otherwise.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alt;
pub mod diamond;
pub mod error;
pub mod expr;
pub mod laws;
pub mod numerics;
pub mod ops;
pub mod pascal;
pub mod qnumbers;

pub use alt::{alt_binary, alt_number, AltNumberId, AltOpId};
pub use diamond::{diamond, diamond_inverse, DiamondDomain};
pub use error::{Error, Result};
pub use numerics::{approx_equal, promote, Mode, Scalar, Tolerance};
pub use ops::{q_exp, q_inverse, q_log, q_opposite, q_product, q_sum, DeformParam};
pub use qnumbers::{from_qnumber, heine, int_sequence, nat_sequence, to_qnumber, to_qnumber_with, QNumber};
