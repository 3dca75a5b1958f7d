//! Sharing-economy backends realizing the canonical-resource model.
//!
//! Each backend turns a domain description into a [`ResourceOracle`]:
//! feasibility rules decide which coalitions can share at all, the cheapest
//! resource is selected deterministically, and its cost decomposes into
//! facilities (days, road segments, timeslots) with per-member utilization.

mod hotel;
mod pass;
mod taxi;
mod xtable;

pub use hotel::{HotelOracle, Traveler};
pub use pass::PassOracle;
pub use taxi::{Edge, Passenger, TaxiOracle};
pub use xtable::{XEntry, XTableOracle};

use crate::model::{members_of, Coalition, Mask};
use crate::oracle::{for_each_subset, Game, Resource};
use crate::{check_guard, Error, Result, EPS};
use serde::Serialize;

/// One monotone-utilization violation: the facilities attributed to `subset`
/// cost more under its own best resource than under the superset's.
#[derive(Clone, Debug, Serialize)]
pub struct UtilizationViolation {
    pub subset: Coalition,
    pub superset: Coalition,
    pub subset_utilization: f64,
    pub superset_utilization: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct UtilizationReport {
    pub checked_pairs: usize,
    pub violations: Vec<UtilizationViolation>,
}

impl UtilizationReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }
}

const MONOTONE_EXHAUSTIVE_MAX_N: usize = 10;

/// Check the monotone-utilization condition: for every `H ⊆ G`, the total
/// cost of the facilities utilized by the members of `H` must not shrink
/// when evaluated inside the larger coalition `G`.
///
/// Hotel instances satisfy this with equality (a member's stay days do not
/// depend on the coalition); pass sharing violates it in general because a
/// new member shrinks the idle-slot attribution.
pub fn check_monotone_utilization(game: &Game) -> Result<UtilizationReport> {
    check_guard(
        "check_monotone_utilization",
        game.n as u128,
        MONOTONE_EXHAUSTIVE_MAX_N as u128,
    )?;
    let oracle = game
        .resource_oracle()
        .ok_or_else(|| Error::UnsupportedMechanism {
            mechanism: "usage".into(),
            reason: "monotone utilization is defined for resource oracles only".into(),
        })?;
    let mut report = UtilizationReport::default();
    let mut supersets = Vec::new();
    for_each_subset(game.n, game.k, &mut |g| {
        if g.count_ones() >= 2 {
            supersets.push(g);
        }
    });
    for &g in &supersets {
        let Some(res_g) = oracle.best_resource(g) else {
            continue;
        };
        for h in proper_nonempty_subsets(g) {
            let Some(res_h) = oracle.best_resource(h) else {
                continue;
            };
            report.checked_pairs += 1;
            let own = utilized_cost(&res_h, h);
            let inherited = utilized_cost(&res_g, h);
            if own > inherited + EPS * inherited.abs().max(1.0) {
                report.violations.push(UtilizationViolation {
                    subset: Coalition::from_mask(h).unwrap(),
                    superset: Coalition::from_mask(g).unwrap(),
                    subset_utilization: own,
                    superset_utilization: inherited,
                });
            }
        }
    }
    Ok(report)
}

/// Cost of the facilities of `res` utilized by at least one member of `h`.
fn utilized_cost(res: &Resource, h: Mask) -> f64 {
    res.facilities
        .iter()
        .filter(|f| f.users & h != 0)
        .map(|f| f.cost)
        .sum()
}

fn proper_nonempty_subsets(g: Mask) -> impl Iterator<Item = Mask> {
    let mut sub = g;
    let mut done = false;
    std::iter::from_fn(move || {
        while !done {
            sub = sub.wrapping_sub(1) & g;
            if sub == 0 {
                done = true;
                return None;
            }
            if sub != g {
                return Some(sub);
            }
        }
        None
    })
}

/// Shared helper: members of `g` in ascending order.
pub(crate) fn member_vec(g: Mask) -> Vec<usize> {
    members_of(g).collect()
}
