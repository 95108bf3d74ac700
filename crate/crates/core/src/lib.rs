//! Exact truncated Laurent q-series over cyclotomic fields, specialised to the
//! level-three world of the cubic theta functions `a(q)`, `b(q)`, `c(q)`.
//!
//! - [`cyclonum`]: the coefficient field `Q(ζ_N)`.
//! - [`qlaurent`]: [`PiSeries`], truncated Laurent series in `q^{1/D}` with a
//!   factored-out power of `π`.
//! - [`generators`]: eta quotients, Eisenstein series, the cubic theta
//!   functions and related divisor-sum series.
//! - [`thetalab`]: theta constants with rational characteristics, their
//!   `ζ`-derivatives and values at rational points `r + sτ`.
//! - [`identities`]: the registry of identities and the exact verifier.

pub mod cyclonum;
pub mod generators;
pub mod identities;
pub mod qlaurent;
pub mod thetalab;

pub use cyclonum::{CycloContext, CycloError, CycloNumber};

pub use qlaurent::{PiSeries, RationalExp, SeriesContext, SeriesError};
pub use identities::{registry, verify, verify_all, Category, IdentityRecord, VerifyReport};
pub use thetalab::{RationalPoint, ThetaChar};

