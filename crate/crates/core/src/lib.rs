//! Capacitated coalition-formation games with fair cost-sharing.
//!
//! Participants form coalitions of at most `K` members to share a replaceable
//! resource (a hotel room, a taxi ride, a transferable pass). Each coalition
//! `G` has a cost `c(G)` satisfying `c(∅) = 0`, `c(G) > 0` for non-empty `G`,
//! and monotonicity `c(H) ≤ c(G)` for `H ⊆ G`. The cost is divided among the
//! members by a cost-sharing mechanism, and a coalition structure (a partition
//! of the participants into coalitions of size ≤ K) is *stable* when no group
//! can break away and strictly lower every deserter's payment.
//!
//! The crate provides:
//!
//! - the domain model: coalitions, partitions, cost oracles with the
//!   monotonicity axioms, canonical resources ([`model`], [`oracle`]);
//! - six cost-sharing mechanisms: equal split, proportional split,
//!   egalitarian, Nash bargaining with and without the non-negative payment
//!   constraint, and facility-wise usage-based sharing ([`mechanisms`]);
//! - stability analysis: blocking-coalition search, greedy sink construction
//!   of stable structures, improvement dynamics, preference-cycle detection,
//!   and a splitting refinement that enforces strictly positive Nash payments
//!   ([`stability`]);
//! - exact social-optimum solvers (bitmask subset DP and a brute-force
//!   cross-check) and empirical strong-price-of-anarchy measurement
//!   ([`optimum`]);
//! - three sharing-economy backends (hotel rooms, taxi rides, passes) plus
//!   explicit exclusive-cost tables ([`domains`]);
//! - deterministic generators for the tight lower-bound families and random
//!   instance families ([`generators`]);
//! - JSON instance files and analysis reports ([`instance`]).

pub mod domains;
pub mod generators;
pub mod instance;
pub mod mechanisms;
pub mod model;
pub mod optimum;
pub mod oracle;
pub mod stability;

pub use instance::{Instance, Oracle};
pub use mechanisms::{Mechanism, PaymentVector};
pub use model::{Coalition, CoalitionStructure, Mask, ParticipantId};
pub use oracle::{CostOracle, Game, Resource, ResourceOracle};

/// Comparison tolerance shared by every strictness test in the crate.
///
/// Payments are binary floating point; "strictly smaller" in blocking and
/// stability checks means smaller by more than `EPS`.
pub const EPS: f64 = 1e-9;

/// Environment variable that lifts all size guards when set to `1` or `true`.
///
/// Guards exist so that desk-scale tools fail fast instead of grinding on an
/// instance that is combinatorially out of reach. Overriding them is at your
/// own risk.
pub const GUARD_OVERRIDE_ENV: &str = "COALITION_GUARD_OVERRIDE";

/// Errors produced by the analysis operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("instance has no participants")]
    EmptyInstance,

    #[error("malformed coalition structure: {0}")]
    InvalidPartition(String),

    #[error("coalition {0:?} is infeasible (no resource can serve it)")]
    InfeasibleCoalition(Vec<ParticipantId>),

    #[error("invalid argument: {0}")]
    BadArgument(String),

    #[error("participant {participant} is not a member of coalition {coalition:?}")]
    NotAMember {
        participant: ParticipantId,
        coalition: Vec<ParticipantId>,
    },

    #[error("{mechanism} is not supported on this oracle: {reason}")]
    UnsupportedMechanism { mechanism: String, reason: String },

    #[error("size guard exceeded for {operation}: {actual} > {limit} (set {GUARD_OVERRIDE_ENV}=1 to override)")]
    ResourceLimit {
        operation: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("no stable coalition structure exists for this instance and mechanism")]
    NoStableStructure {
        cycle: Option<stability::PreferenceCycle>,
    },

    #[error("instance file error: {0}")]
    Format(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guards_overridden() -> bool {
    matches!(
        std::env::var(GUARD_OVERRIDE_ENV).as_deref(),
        Ok("1") | Ok("true") | Ok("TRUE") | Ok("yes")
    )
}

/// Enforce a size guard unless [`GUARD_OVERRIDE_ENV`] is set.
pub(crate) fn check_guard(operation: &'static str, actual: u128, limit: u128) -> Result<()> {
    if actual > limit && !guards_overridden() {
        return Err(Error::ResourceLimit {
            operation,
            actual,
            limit,
        });
    }
    Ok(())
}

/// `H_k = 1 + 1/2 + … + 1/k`, the harmonic number that bounds the strong
/// price of anarchy of equal-split sharing.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|s| 1.0 / s as f64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_small_values() {
        assert!((harmonic(1) - 1.0).abs() < 1e-12);
        assert!((harmonic(2) - 1.5).abs() < 1e-12);
        assert!((harmonic(3) - 11.0 / 6.0).abs() < 1e-12);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-12);
    }
}
