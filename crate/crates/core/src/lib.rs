//! Character-twisted elliptic functions, Eisenstein series and exact
//! q-series, together with a catalog that machine-verifies the identities
//! relating them.
//!
//! The crate is organized in four layers:
//!
//! - [`characters`]: exact Dirichlet character arithmetic (enumeration,
//!   conductors, Gauss sums, Kronecker symbols) over roots of unity;
//! - [`qseries`]: truncated formal power series in q with exact rational
//!   coefficients, and expanders for eta quotients, Lambert series,
//!   Eisenstein q-expansions and quadratic-form theta series;
//! - [`analytic`]: high-precision complex evaluation of theta functions,
//!   the Weierstrass pe function, the twisted sums g(z|tau;chi) and their
//!   companions, and twisted Eisenstein lattice sums;
//! - [`verify`]: the identity catalog, samplers and the verification suite
//!   producing structured reports.

pub mod arith;
pub mod characters;
pub mod qseries;
pub mod analytic;
pub mod verify;
