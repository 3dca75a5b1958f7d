//! Explicit exclusive-cost tables.
//!
//! An entry lists, for one coalition, the exclusive cost `X_G(L)` of every
//! member subset `L` that carries cost: the table *is* the resource, with one
//! facility per listed subset, utilized by exactly that subset. The tight
//! lower-bound families and the cyclic taxi example are specified this way.
//!
//! With `Completion::Case3`, a coalition missing from the table decomposes
//! into the cheapest partition of exactly-listed entries (lexicographically
//! smallest pieces on cost ties) and inherits their facilities side by side.
//! With `Completion::None`, unlisted coalitions are infeasible.

use crate::model::{cmp_masks_lex, full_mask, members_of, Coalition, Mask};
use crate::oracle::{Completion, CostOracle, Facility, Resource, ResourceOracle};
use crate::{Error, Result};
use std::collections::HashMap;

/// Exclusive-cost table of one coalition.
#[derive(Clone, Debug)]
pub struct XEntry {
    pub members: Mask,
    /// `(subset, X(subset))` rows with positive cost.
    pub parts: Vec<(Mask, f64)>,
}

impl XEntry {
    pub fn cost(&self) -> f64 {
        self.parts.iter().map(|(_, c)| c).sum()
    }
}

/// Resource oracle backed by explicit exclusive-cost tables.
pub struct XTableOracle {
    n: usize,
    entries: Vec<XEntry>,
    by_mask: HashMap<Mask, usize>,
    per_member: Vec<Vec<usize>>,
    completion: Completion,
}

impl XTableOracle {
    pub fn new(n: usize, mut entries: Vec<XEntry>, completion: Completion) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        entries.sort_by(|a, b| cmp_masks_lex(a.members, b.members));
        let mut by_mask = HashMap::with_capacity(entries.len());
        for (idx, e) in entries.iter().enumerate() {
            if e.members == 0 || e.members & !full_mask(n) != 0 {
                return Err(Error::Format(
                    "exclusive-cost entry with empty or out-of-range members".into(),
                ));
            }
            let mut total = 0.0;
            for &(subset, cost) in &e.parts {
                if subset == 0 || subset & !e.members != 0 {
                    return Err(Error::Format(
                        "exclusive-cost subset must be a non-empty subset of the entry members"
                            .into(),
                    ));
                }
                if !cost.is_finite() || cost < 0.0 {
                    return Err(Error::Format(format!(
                        "exclusive cost must be finite and non-negative, got {cost}"
                    )));
                }
                total += cost;
            }
            if total <= 0.0 {
                return Err(Error::Format(
                    "exclusive-cost entry must carry positive total cost".into(),
                ));
            }
            if by_mask.insert(e.members, idx).is_some() {
                return Err(Error::Format("duplicate exclusive-cost entry".into()));
            }
        }
        let mut per_member = vec![Vec::new(); n];
        for (idx, e) in entries.iter().enumerate() {
            for i in members_of(e.members) {
                per_member[i].push(idx);
            }
        }
        Ok(XTableOracle {
            n,
            entries,
            by_mask,
            per_member,
            completion,
        })
    }

    pub fn entries(&self) -> &[XEntry] {
        &self.entries
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    /// Cheapest partition of `s` into exactly-listed entries; pieces compare
    /// lexicographically on cost ties so the decomposition is deterministic.
    fn best_partition(&self, s: Mask, memo: &mut HashMap<Mask, Option<(f64, usize)>>) -> Option<f64> {
        if s == 0 {
            return Some(0.0);
        }
        if let Some(&cached) = memo.get(&s) {
            return cached.map(|(c, _)| c);
        }
        let low = s.trailing_zeros() as usize;
        let mut best: Option<(f64, usize)> = None;
        for &idx in &self.per_member[low] {
            let e = &self.entries[idx];
            if e.members & !s != 0 {
                continue;
            }
            if let Some(tail) = self.best_partition(s & !e.members, memo) {
                let total = e.cost() + tail;
                // Entries are sorted lexicographically, so the first match at
                // equal cost is the canonical one.
                if best.map_or(true, |(c, _)| total < c) {
                    best = Some((total, idx));
                }
            }
        }
        memo.insert(s, best);
        best.map(|(c, _)| c)
    }

    fn partition_pieces(&self, g: Mask) -> Option<Vec<usize>> {
        let mut memo = HashMap::new();
        self.best_partition(g, &mut memo)?;
        let mut pieces = Vec::new();
        let mut rest = g;
        while rest != 0 {
            let (_, idx) = memo[&rest]?;
            pieces.push(idx);
            rest &= !self.entries[idx].members;
        }
        Some(pieces)
    }
}

impl CostOracle for XTableOracle {
    fn participants(&self) -> usize {
        self.n
    }

    fn cost(&self, g: Mask) -> f64 {
        if g == 0 {
            return 0.0;
        }
        if let Some(&idx) = self.by_mask.get(&g) {
            return self.entries[idx].cost();
        }
        match self.completion {
            Completion::None => f64::INFINITY,
            Completion::Case3 => {
                let mut memo = HashMap::new();
                self.best_partition(g, &mut memo).unwrap_or(f64::INFINITY)
            }
        }
    }
}

impl ResourceOracle for XTableOracle {
    fn best_resource(&self, g: Mask) -> Option<Resource> {
        if g == 0 {
            return None;
        }
        let pieces: Vec<usize> = if let Some(&idx) = self.by_mask.get(&g) {
            vec![idx]
        } else {
            match self.completion {
                Completion::None => return None,
                Completion::Case3 => self.partition_pieces(g)?,
            }
        };
        let mut total = 0.0;
        let mut facilities = Vec::new();
        for (pi, &idx) in pieces.iter().enumerate() {
            let e = &self.entries[idx];
            total += e.cost();
            for (si, &(subset, cost)) in e.parts.iter().enumerate() {
                facilities.push(Facility {
                    label: format!("x{pi}.{si}:{}", mask_label(subset)),
                    cost,
                    users: subset,
                });
            }
        }
        Some(Resource {
            total_cost: total,
            facilities,
        })
    }
}

fn mask_label(m: Mask) -> String {
    let ids: Vec<String> = members_of(m).map(|i| i.to_string()).collect();
    ids.join("+")
}

/// Convenience constructor for entries given member lists.
pub fn xentry(members: &[usize], parts: &[(&[usize], f64)]) -> XEntry {
    let members_mask = Coalition::from_members(members).unwrap().mask();
    XEntry {
        members: members_mask,
        parts: parts
            .iter()
            .map(|(subset, cost)| (Coalition::from_members(subset).unwrap().mask(), *cost))
            .collect(),
    }
}
