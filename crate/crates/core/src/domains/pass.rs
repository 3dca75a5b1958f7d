//! Pass sharing.
//!
//! Users carry a set of required timeslots; a pass from the catalog carries a
//! set of allowable slots at a uniform per-slot rate. A coalition is feasible
//! when no two members' required slots overlap and some pass covers the union
//! of requirements. A member utilizes their own slots plus every idle slot of
//! the pass (idle slots are everyone's responsibility), so budget balance
//! always holds.

use crate::model::{bit, full_mask, Mask};
use crate::oracle::{CostOracle, Facility, Resource, ResourceOracle};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Resource oracle for pass sharing.
pub struct PassOracle {
    users: Vec<BTreeSet<u32>>,
    passes: Vec<BTreeSet<u32>>,
    rate: f64,
}

impl PassOracle {
    pub fn new(users: Vec<BTreeSet<u32>>, passes: Vec<BTreeSet<u32>>, rate: f64) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if users.iter().any(|t| t.is_empty()) {
            return Err(Error::Format("every user needs at least one timeslot".into()));
        }
        if passes.is_empty() {
            return Err(Error::Format("the pass catalog is empty".into()));
        }
        if passes.iter().any(|t| t.is_empty()) {
            return Err(Error::Format("passes must cover at least one timeslot".into()));
        }
        if !rate.is_finite() || rate <= 0.0 {
            return Err(Error::Format(format!("slot rate must be positive, got {rate}")));
        }
        Ok(PassOracle { users, passes, rate })
    }

    /// Convenience catalog: the single universal pass over the whole slot
    /// universe of the users.
    pub fn with_universal_pass(users: Vec<BTreeSet<u32>>, rate: f64) -> Result<Self> {
        let universe: BTreeSet<u32> = users.iter().flatten().copied().collect();
        Self::new(users, vec![universe], rate)
    }

    pub fn users(&self) -> &[BTreeSet<u32>] {
        &self.users
    }

    pub fn passes(&self) -> &[BTreeSet<u32>] {
        &self.passes
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl CostOracle for PassOracle {
    fn participants(&self) -> usize {
        self.users.len()
    }

    fn cost(&self, g: Mask) -> f64 {
        self.best_resource(g)
            .map_or(f64::INFINITY, |r| r.total_cost)
    }
}

impl ResourceOracle for PassOracle {
    fn best_resource(&self, g: Mask) -> Option<Resource> {
        let members = super::member_vec(g);
        if members.is_empty() || g & !full_mask(self.users.len()) != 0 {
            return None;
        }
        let mut union: BTreeSet<u32> = BTreeSet::new();
        for &i in &members {
            for &slot in &self.users[i] {
                if !union.insert(slot) {
                    return None; // overlapping required slots
                }
            }
        }
        // Cheapest covering pass; catalog order breaks ties.
        let best = self
            .passes
            .iter()
            .filter(|p| union.iter().all(|s| p.contains(s)))
            .min_by(|a, b| a.len().cmp(&b.len()))?;
        let facilities = best
            .iter()
            .map(|&slot| {
                let owner = members.iter().find(|&&i| self.users[i].contains(&slot));
                let users = match owner {
                    Some(&i) => bit(i),
                    None => members.iter().fold(0, |acc, &i| acc | bit(i)),
                };
                Facility {
                    label: format!("slot:{slot}"),
                    cost: self.rate,
                    users,
                }
            })
            .collect();
        Some(Resource {
            total_cost: best.len() as f64 * self.rate,
            facilities,
        })
    }
}
