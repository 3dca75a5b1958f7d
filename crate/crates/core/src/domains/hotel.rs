//! Hotel-room sharing.
//!
//! Travelers carry an arrival day, a departure day, and a set of acceptable
//! locations. A coalition books one room for the union span
//! `[min t_in, max t_out]` at a location every member accepts; the cheapest
//! such location wins (smallest id on ties). Facilities are the span days at
//! the booked location's daily rates, and a member utilizes exactly the days
//! of their own stay.

use crate::model::{bit, Mask};
use crate::oracle::{CostOracle, Facility, Resource, ResourceOracle};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Traveler {
    pub t_in: i64,
    pub t_out: i64,
    pub areas: BTreeSet<u32>,
}

/// Resource oracle for hotel-room sharing.
pub struct HotelOracle {
    travelers: Vec<Traveler>,
    /// Daily rate per (location, day). A location missing a rate for some
    /// span day is not bookable for that span.
    rates: BTreeMap<u32, BTreeMap<i64, f64>>,
}

impl HotelOracle {
    pub fn new(travelers: Vec<Traveler>, rates: BTreeMap<u32, BTreeMap<i64, f64>>) -> Result<Self> {
        if travelers.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (i, t) in travelers.iter().enumerate() {
            if t.t_in > t.t_out {
                return Err(Error::Format(format!(
                    "traveler {i} has t_in {} after t_out {}",
                    t.t_in, t.t_out
                )));
            }
            if t.areas.is_empty() {
                return Err(Error::Format(format!("traveler {i} accepts no location")));
            }
        }
        for (loc, days) in &rates {
            for (day, rate) in days {
                if !rate.is_finite() || *rate <= 0.0 {
                    return Err(Error::Format(format!(
                        "rate for location {loc} day {day} must be positive, got {rate}"
                    )));
                }
            }
        }
        Ok(HotelOracle { travelers, rates })
    }

    pub fn travelers(&self) -> &[Traveler] {
        &self.travelers
    }

    pub fn rates(&self) -> &BTreeMap<u32, BTreeMap<i64, f64>> {
        &self.rates
    }

    fn span_cost(&self, loc: u32, from: i64, to: i64) -> Option<f64> {
        let days = self.rates.get(&loc)?;
        let mut total = 0.0;
        for day in from..=to {
            total += days.get(&day)?;
        }
        Some(total)
    }
}

impl CostOracle for HotelOracle {
    fn participants(&self) -> usize {
        self.travelers.len()
    }

    fn cost(&self, g: Mask) -> f64 {
        self.best_resource(g)
            .map_or(f64::INFINITY, |r| r.total_cost)
    }
}

impl ResourceOracle for HotelOracle {
    fn best_resource(&self, g: Mask) -> Option<Resource> {
        let members = super::member_vec(g);
        if members.is_empty() {
            return None;
        }
        let mut common: Option<BTreeSet<u32>> = None;
        let mut from = i64::MAX;
        let mut to = i64::MIN;
        for &i in &members {
            let t = self.travelers.get(i)?;
            from = from.min(t.t_in);
            to = to.max(t.t_out);
            common = Some(match common {
                None => t.areas.clone(),
                Some(c) => c.intersection(&t.areas).copied().collect(),
            });
        }
        let common = common?;
        // Cheapest location for the span; BTreeSet iteration gives the
        // smallest id on cost ties.
        let mut best: Option<(f64, u32)> = None;
        for &loc in &common {
            if let Some(cost) = self.span_cost(loc, from, to) {
                if best.map_or(true, |(c, _)| cost < c) {
                    best = Some((cost, loc));
                }
            }
        }
        let (total, loc) = best?;
        let day_rates = &self.rates[&loc];
        let facilities = (from..=to)
            .map(|day| {
                let mut users: Mask = 0;
                for &i in &members {
                    let t = &self.travelers[i];
                    if t.t_in <= day && day <= t.t_out {
                        users |= bit(i);
                    }
                }
                Facility {
                    label: format!("day:{day}@{loc}"),
                    cost: day_rates[&day],
                    users,
                }
            })
            .collect();
        Some(Resource {
            total_cost: total,
            facilities,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::{pay_usage, payments, Mechanism};
    use crate::model::Coalition;
    use crate::oracle::Game;

    fn uniform_rates(locs: &[u32], days: std::ops::RangeInclusive<i64>, rate: f64) -> BTreeMap<u32, BTreeMap<i64, f64>> {
        locs.iter()
            .map(|&l| (l, days.clone().map(|d| (d, rate)).collect()))
            .collect()
    }

    fn mask(members: &[usize]) -> Mask {
        Coalition::from_members(members).unwrap().mask()
    }

    #[test]
    fn single_traveler_three_days() {
        let oracle = HotelOracle::new(
            vec![Traveler {
                t_in: 1,
                t_out: 3,
                areas: [0].into(),
            }],
            uniform_rates(&[0], 1..=3, 10.0),
        )
        .unwrap();
        let res = oracle.best_resource(mask(&[0])).unwrap();
        assert_eq!(res.total_cost, 30.0);
        assert_eq!(res.facilities.len(), 3);
        assert!(res.facilities.iter().all(|f| f.users == 1));
    }

    #[test]
    fn disjoint_areas_infeasible() {
        let oracle = HotelOracle::new(
            vec![
                Traveler { t_in: 1, t_out: 2, areas: [0].into() },
                Traveler { t_in: 1, t_out: 2, areas: [1].into() },
            ],
            uniform_rates(&[0, 1], 1..=2, 1.0),
        )
        .unwrap();
        assert!(oracle.best_resource(mask(&[0, 1])).is_none());
        assert!(oracle.cost(mask(&[0, 1])).is_infinite());
        // Singletons stay feasible.
        assert_eq!(oracle.cost(mask(&[0])), 2.0);
    }

    #[test]
    fn span_rule_and_overlap_days() {
        // Stays [1,3] and [2,5] at rate 1/day share days {2,3}; the room
        // covers days 1..=5 for cost 5.
        let oracle = HotelOracle::new(
            vec![
                Traveler { t_in: 1, t_out: 3, areas: [0].into() },
                Traveler { t_in: 2, t_out: 5, areas: [0].into() },
            ],
            uniform_rates(&[0], 1..=5, 1.0),
        )
        .unwrap();
        let res = oracle.best_resource(mask(&[0, 1])).unwrap();
        assert_eq!(res.total_cost, 5.0);
        let shared: Vec<_> = res
            .facilities
            .iter()
            .filter(|f| f.users == 0b11)
            .map(|f| f.label.clone())
            .collect();
        assert_eq!(shared, vec!["day:2@0", "day:3@0"]);
    }

    #[test]
    fn cheapest_common_location_wins() {
        let mut rates = uniform_rates(&[0, 1], 1..=2, 2.0);
        rates.get_mut(&1).unwrap().insert(1, 1.0);
        let oracle = HotelOracle::new(
            vec![Traveler { t_in: 1, t_out: 2, areas: [0, 1].into() }],
            rates,
        )
        .unwrap();
        let res = oracle.best_resource(mask(&[0])).unwrap();
        assert_eq!(res.total_cost, 3.0);
        assert!(res.facilities[0].label.ends_with("@1"));
    }

    #[test]
    fn usage_payment_matches_stay_minus_half_overlap() {
        // Unit rate, K = 2: p_i = τ_i − τ_{i,j}/2, checked against the
        // generic facility-split path.
        let oracle = HotelOracle::new(
            vec![
                Traveler { t_in: 0, t_out: 3, areas: [0].into() },
                Traveler { t_in: 2, t_out: 6, areas: [0].into() },
            ],
            uniform_rates(&[0], 0..=6, 1.0),
        )
        .unwrap();
        let game = Game::with_resource(2, 2, &oracle);
        let pv = pay_usage(mask(&[0, 1]), &game).unwrap();
        let tau0 = 4.0;
        let tau1 = 5.0;
        let overlap = 2.0; // days 2 and 3
        assert!((pv.payments[0] - (tau0 - overlap / 2.0)).abs() < 1e-12);
        assert!((pv.payments[1] - (tau1 - overlap / 2.0)).abs() < 1e-12);
        let generic = payments(Mechanism::UsageBased, mask(&[0, 1]), &game).unwrap();
        assert_eq!(pv.payments, generic.payments);
    }
}
