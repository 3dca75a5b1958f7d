//! Fair cost-sharing mechanisms.
//!
//! Every mechanism is budget balanced: the members' payments sum to the
//! coalition cost. A member's utility is `u_i = c_i − p_i(G)`, the saving
//! relative to staying alone.
//!
//! - equal split: `p_i = c(G) / |G|`
//! - proportional split: `p_i = c_i · c(G) / Σ_j c_j`
//! - egalitarian: `p_i = c_i − (Σ_j c_j − c(G)) / |G|`, equalizing utilities;
//!   payments may be negative (low-default members get compensated)
//! - Nash bargaining: maximizes `Π_i u_i` over budget-balanced payments.
//!   Without the non-negativity constraint this coincides with the
//!   egalitarian solution; with it, a water-filling closed form applies
//!   (members with small defaults pay nothing).
//! - usage based: each facility's cost splits equally among its users,
//!   `p_i = Σ_{f ∈ ℱ_i} c^f / |users(f)|`.

use crate::model::{bit, members_of, Coalition, Mask, ParticipantId};
use crate::oracle::{Game, Resource};
use crate::{Error, Result, EPS};
use serde::{Deserialize, Serialize};

/// The cost-sharing mechanisms supported by the analyses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mechanism {
    #[serde(rename = "equal")]
    EqualSplit,
    #[serde(rename = "proportional")]
    ProportionalSplit,
    #[serde(rename = "egalitarian")]
    Egalitarian,
    #[serde(rename = "nash-unconstrained")]
    NashUnconstrained,
    #[serde(rename = "nash")]
    NashNonNegative,
    #[serde(rename = "usage")]
    UsageBased,
}

impl Mechanism {
    pub const ALL: [Mechanism; 6] = [
        Mechanism::EqualSplit,
        Mechanism::ProportionalSplit,
        Mechanism::Egalitarian,
        Mechanism::NashUnconstrained,
        Mechanism::NashNonNegative,
        Mechanism::UsageBased,
    ];

    /// Usage-based sharing needs a resource oracle; the rest only need costs.
    pub fn requires_resource(&self) -> bool {
        matches!(self, Mechanism::UsageBased)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mechanism::EqualSplit => "equal",
            Mechanism::ProportionalSplit => "proportional",
            Mechanism::Egalitarian => "egalitarian",
            Mechanism::NashUnconstrained => "nash-unconstrained",
            Mechanism::NashNonNegative => "nash",
            Mechanism::UsageBased => "usage",
        }
    }
}

impl std::str::FromStr for Mechanism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Mechanism::EqualSplit),
            "proportional" => Ok(Mechanism::ProportionalSplit),
            "egalitarian" => Ok(Mechanism::Egalitarian),
            "nash" => Ok(Mechanism::NashNonNegative),
            "nash-unconstrained" => Ok(Mechanism::NashUnconstrained),
            "usage" => Ok(Mechanism::UsageBased),
            other => Err(Error::BadArgument(format!("unknown mechanism {other:?}"))),
        }
    }
}

impl std::fmt::Display for Mechanism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-member payments and utilities for one coalition under one mechanism.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PaymentVector {
    pub members: Vec<ParticipantId>,
    pub payments: Vec<f64>,
    pub utilities: Vec<f64>,
    pub mechanism: Mechanism,
}

impl PaymentVector {
    fn build(coalition: Mask, payments: Vec<f64>, game: &Game, mechanism: Mechanism) -> Self {
        let members: Vec<ParticipantId> = members_of(coalition).collect();
        let utilities = members
            .iter()
            .zip(&payments)
            .map(|(&i, &p)| game.default_cost(i) - p)
            .collect();
        PaymentVector {
            members,
            payments,
            utilities,
            mechanism,
        }
    }

    pub fn coalition(&self) -> Coalition {
        Coalition::from_members(&self.members).expect("payment vector over a non-empty coalition")
    }

    /// Payment of participant `i`, if a member.
    pub fn payment_of(&self, i: ParticipantId) -> Option<f64> {
        self.members
            .iter()
            .position(|&m| m == i)
            .map(|idx| self.payments[idx])
    }

    pub fn total(&self) -> f64 {
        self.payments.iter().sum()
    }
}

fn require_feasible(game: &Game, g: Mask) -> Result<f64> {
    let c = game.cost(g);
    if !c.is_finite() {
        return Err(Error::InfeasibleCoalition(members_of(g).collect()));
    }
    Ok(c)
}

/// Equal split: `p_i = c(G) / |G|`.
pub fn pay_equal(g: Mask, game: &Game) -> Result<PaymentVector> {
    let c = require_feasible(game, g)?;
    let share = c / g.count_ones() as f64;
    let payments = vec![share; g.count_ones() as usize];
    Ok(PaymentVector::build(g, payments, game, Mechanism::EqualSplit))
}

/// Proportional split: `p_i = c_i · c(G) / Σ_j c_j`.
pub fn pay_proportional(g: Mask, game: &Game) -> Result<PaymentVector> {
    let c = require_feasible(game, g)?;
    let total_default = game.sum_defaults(g);
    let payments = members_of(g)
        .map(|i| game.default_cost(i) * c / total_default)
        .collect();
    Ok(PaymentVector::build(
        g,
        payments,
        game,
        Mechanism::ProportionalSplit,
    ))
}

/// Egalitarian solution: everyone keeps the same utility
/// `(Σ_j c_j − c(G)) / |G|`; payments may be negative.
pub fn pay_egalitarian(g: Mask, game: &Game) -> Result<PaymentVector> {
    let c = require_feasible(game, g)?;
    let surplus_per_head = (game.sum_defaults(g) - c) / g.count_ones() as f64;
    let payments = members_of(g)
        .map(|i| game.default_cost(i) - surplus_per_head)
        .collect();
    Ok(PaymentVector::build(g, payments, game, Mechanism::Egalitarian))
}

/// Nash bargaining solution.
///
/// Unconstrained, the optimum of `Π u_i` on the budget hyperplane equalizes
/// utilities, i.e. coincides with [`pay_egalitarian`]. With `nonnegative`,
/// the water-filling closed form applies: sort members by descending default
/// cost, find the largest `m` such that member `m` still pays strictly more
/// than zero at the common utility level of the first `m` members, charge
/// `p_s = c_s − (Σ_{t≤m} c_t − c(G)) / m` for `s ≤ m` and zero for the rest.
/// `m = 1` is always admissible: some member pays because `c(G) > 0`.
pub fn pay_nash(g: Mask, game: &Game, nonnegative: bool) -> Result<PaymentVector> {
    if !nonnegative {
        let mut pv = pay_egalitarian(g, game)?;
        pv.mechanism = Mechanism::NashUnconstrained;
        return Ok(pv);
    }
    let c = require_feasible(game, g)?;
    let members: Vec<ParticipantId> = members_of(g).collect();
    // Descending default cost; ties resolved by ascending index.
    let mut order: Vec<usize> = (0..members.len()).collect();
    let defaults: Vec<f64> = members.iter().map(|&i| game.default_cost(i)).collect();
    order.sort_by(|&a, &b| {
        defaults[b]
            .partial_cmp(&defaults[a])
            .unwrap()
            .then(members[a].cmp(&members[b]))
    });
    let sorted: Vec<f64> = order.iter().map(|&idx| defaults[idx]).collect();
    let mut prefix = vec![0.0; sorted.len() + 1];
    for (s, &cs) in sorted.iter().enumerate() {
        prefix[s + 1] = prefix[s] + cs;
    }
    let mut m = 1;
    for cand in (2..=sorted.len()).rev() {
        if sorted[cand - 1] > (prefix[cand - 1] - c) / (cand as f64 - 1.0) {
            m = cand;
            break;
        }
    }
    let level = (prefix[m] - c) / m as f64;
    let mut payments = vec![0.0; members.len()];
    for (s, &idx) in order.iter().enumerate() {
        payments[idx] = if s < m { sorted[s] - level } else { 0.0 };
    }
    Ok(PaymentVector::build(
        g,
        payments,
        game,
        Mechanism::NashNonNegative,
    ))
}

/// Usage-based (facility-wise Shapley) sharing on the best resource:
/// `p_i = Σ_{f ∈ ℱ_i(r(G))} c^f / |users(f)|`.
///
/// Budget balanced whenever every positive-cost facility of the resource is
/// utilized by at least one member.
pub fn pay_usage(g: Mask, game: &Game) -> Result<PaymentVector> {
    let res = best_resource_for(game, g)?;
    let members: Vec<ParticipantId> = members_of(g).collect();
    let mut payments = vec![0.0; members.len()];
    for f in &res.facilities {
        let users = f.users.count_ones();
        if users == 0 {
            continue;
        }
        let share = f.cost / users as f64;
        for (idx, &i) in members.iter().enumerate() {
            if f.users & bit(i) != 0 {
                payments[idx] += share;
            }
        }
    }
    Ok(PaymentVector::build(g, payments, game, Mechanism::UsageBased))
}

fn best_resource_for(game: &Game, g: Mask) -> Result<Resource> {
    let ro = game.resource_oracle().ok_or_else(|| Error::UnsupportedMechanism {
        mechanism: "usage".into(),
        reason: "this oracle exposes no canonical resources".into(),
    })?;
    ro.best_resource(g)
        .ok_or_else(|| Error::InfeasibleCoalition(members_of(g).collect()))
}

/// `X_G(L)`: the cost of facilities of `r(G)` utilized by exactly the
/// members of `L` and nobody else in `G`.
///
/// Summing `X_G(L)/|L|` over the sets `L` containing a member reproduces the
/// usage-based payment.
pub fn exclusive_cost(g: Mask, l: Mask, game: &Game) -> Result<f64> {
    if l == 0 || l & !g != 0 {
        return Err(Error::BadArgument(format!(
            "exclusive_cost requires ∅ ≠ L ⊆ G, got L={:?} G={:?}",
            members_of(l).collect::<Vec<_>>(),
            members_of(g).collect::<Vec<_>>()
        )));
    }
    let res = best_resource_for(game, g)?;
    Ok(res
        .facilities
        .iter()
        .filter(|f| f.users & g == l)
        .map(|f| f.cost)
        .sum())
}

/// Utility `u_i = c_i − p_i` of a member of a payment vector.
pub fn utility_of(i: ParticipantId, pv: &PaymentVector, game: &Game) -> Result<f64> {
    let idx = pv
        .members
        .iter()
        .position(|&m| m == i)
        .ok_or(Error::NotAMember {
            participant: i,
            coalition: pv.members.clone(),
        })?;
    Ok(game.default_cost(i) - pv.payments[idx])
}

/// Compute the payment vector of `g` under `mechanism`.
pub fn payments(mechanism: Mechanism, g: Mask, game: &Game) -> Result<PaymentVector> {
    match mechanism {
        Mechanism::EqualSplit => pay_equal(g, game),
        Mechanism::ProportionalSplit => pay_proportional(g, game),
        Mechanism::Egalitarian => pay_egalitarian(g, game),
        Mechanism::NashUnconstrained => pay_nash(g, game, false),
        Mechanism::NashNonNegative => pay_nash(g, game, true),
        Mechanism::UsageBased => pay_usage(g, game),
    }
}

/// Budget balance within the crate tolerance, relative to `max(1, c)`.
pub fn budget_balanced(pv: &PaymentVector, cost: f64) -> bool {
    (pv.total() - cost).abs() <= EPS * cost.abs().max(1.0)
}
