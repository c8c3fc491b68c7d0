//! Exact computation in rational group rings of finite groups: character
//! tables, central idempotents, reduced norms, reduced characteristic
//! polynomials and generalised adjoints, plus probes of their integrality.

pub mod chartab;
pub mod clifford;
pub mod cyclo;
pub mod denom;
pub mod error;
pub mod group;
pub mod groupring;
pub mod repro;
pub mod scalar;

pub use cyclo::{Cyclo, Rational};
pub use error::{GrcError, Result};
pub use group::{builtin_group, load_group, Group, Subgroup, BUILTIN_SUITE};
