//! Multiplication in characteristic three.
//!
//! * [`gf3`]: bit-sliced GF(3) scalars and vectors.
//! * [`polymul`]: schoolbook, recursive Karatsuba/classical multiplication
//!   and their compilation to pruned gate circuits.
//! * [`field397`]: the field GF(3^97) with modulus `x^97 + x^16 + 2`.
//! * [`lfsr`]: a cycle-level digit-serial LFSR multiplier for GF(3^97).
//! * [`tower`]: the extensions GF(3^(2·97)) and GF(3^(6·97)) with 18- and
//!   15-multiplication products.
//! * [`pipeline`]: a three-stage single-multiplier schedule for the
//!   15-multiplication product.

pub mod error;
pub mod field397;
pub mod gf3;
pub mod lfsr;
pub mod pipeline;
pub mod polymul;
pub mod tower;

pub use error::{Error, Result};
pub use field397::F97Element;
pub use gf3::{Trit, TritVector};
pub use lfsr::{LfsrConfig, LfsrCost, LfsrState};
pub use pipeline::{build_schedule, Schedule};
pub use polymul::{Circuit, CostReport, MethodExpr, Poly};
pub use tower::{Fp2Element, Fp6Element, MulCounter, ProductTrace};
