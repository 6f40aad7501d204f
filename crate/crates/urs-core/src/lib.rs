//! Exact symbolic kernel for the two-parameter quantum groups
//! U_{r,s}(gl_n) and U_{r,s}(sl_n).
//!
//! The crate realizes the algebras by their triangular presentations over
//! the fraction field Q(u, v) with r = u^2 and s = v^2, pairs the upper and
//! lower Borel-type subalgebras through a Hopf pairing, rebuilds the algebra
//! as a Drinfel'd double, and constructs the braiding (R-matrix), quantum
//! Yang-Baxter/hexagon verifications and the quantum Casimir operator on
//! truncated highest-weight modules.  All arithmetic is exact; every check
//! is an identity decided by canonical-form equality.

pub mod algebra;
pub mod braiding;
pub mod cat_o;
pub mod checks;
pub mod double;
pub mod error;
pub mod hopf;
pub mod jsonio;
pub mod morphisms;
pub mod oracle;
pub mod pairing;
pub mod report;
pub mod scalar;
pub mod weight;

pub use algebra::{Algebra, Element, Gen, Kind, Params, TermKey};
pub use error::{Result, UrsError};
pub use scalar::{Rat, Scalar};
pub use weight::Weight;
