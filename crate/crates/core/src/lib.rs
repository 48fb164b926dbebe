//! Exact-arithmetic verification and counterexample search for a small
//! catalog of combinatorial and 2-adic identities.
//!
//! The crate evaluates both sides of each identity independently over
//! unbounded integers ([`exact`]), cross-checks them against brute-force
//! enumeration oracles ([`oracles`]), and sweeps bounded parameter domains in
//! parallel with deterministic, reproducible output ([`sweep`]). One of the
//! identities in the catalog is an unproven conjecture; the sweep engine
//! doubles as a counterexample hunter for it.
//!
//! ```
//! use identikit::identities::eval_theorem_perm;
//!
//! // P(n, k) - P(n-m, k) = m * sum_r C(k, r) P(m-r-1, r-1) P(n-m+r, k-r)
//! let record = eval_theorem_perm(2, 4, 8).unwrap();
//! assert!(record.holds);
//! assert_eq!(record.lhs.to_decimal(), "44");
//! ```
//!
//! The `identikit` binary exposes the same functionality as `verify`,
//! `sweep` and `search` subcommands; see the book under `book/` for a guided
//! tour.

pub mod dyadic;
pub mod exact;
pub mod identities;
pub mod oracles;
pub mod report;
pub mod sweep;

pub use exact::ExactInt;
pub use identities::{IdentityId, ParamPoint, VerificationRecord};

// Every fenced Rust block in the book runs as a doctest, so the guide can
// never drift from the library.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    pub mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/identities.md")]
    pub mod identities {}
    #[doc = include_str!("../../../book/src/dyadic.md")]
    pub mod dyadic {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    pub mod oracles {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    pub mod sweeps {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
