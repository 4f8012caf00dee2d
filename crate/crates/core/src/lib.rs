//! Exact computations around cubic threefolds, their discriminant quintics and the second
//! Gaussian map of the associated odd Prym pairs.
//!
//! Everything runs over ℚ or a prime field; every identity is checked by linear algebra on
//! graded pieces of polynomial rings.

pub mod error;
pub mod families;
pub mod field;
pub mod gauss;
pub mod lift;
pub mod linalg;
pub mod jacobian;
pub mod poly;
pub mod symbolic;
pub mod threefold;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldKind};
pub use linalg::{Matrix, Subspace};
pub use poly::{Monomial, MonomialBasis, Polynomial, VarSet};
