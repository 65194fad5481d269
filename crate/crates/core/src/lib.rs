//! Exact and numeric tools for the Weyl-algebra encoding of qubits in a
//! rotor's angular momentum.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod angle;
pub mod error;
pub mod exact_linalg;
pub mod gns;
pub mod optics;
pub mod oracle;
pub mod qubit;
pub mod qudit;
pub mod report;
pub mod scalar;

pub use algebra::{AlgebraElement, FloatTerm, WeylTerm, WordKey};
pub use angle::RationalAngle;
pub use error::{Error, Result};
pub use oracle::{TruncatedOperator, Window};
pub use report::{Entry, Mode, Report, Status};
pub use scalar::{Cyclotomic, Rational, Scalar};
