//! Taxi-ride sharing.
//!
//! Passengers carry a source, a destination, an earliest departure slot, and
//! a latest arrival slot on a directed road network with per-edge fares and
//! travel times. A coalition shares one ride: an ordering of the pickups and
//! dropoffs in which each pickup precedes its dropoff, with consecutive stops
//! connected by minimum-fare paths. The ride departs at the latest start
//! forced by the earliest-departure constraints (which maximizes the slack
//! against the arrival deadlines); an ordering is feasible when every
//! deadline then holds. The cheapest feasible ordering wins, first one on
//! fare ties.
//!
//! Facilities are the traversed road segments; a member utilizes the
//! segments between their pickup stop and their dropoff stop (the segment
//! leaving the pickup stop included, the one leaving the dropoff excluded).

use crate::model::{bit, Mask};
use crate::oracle::{CostOracle, Facility, Resource, ResourceOracle};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Passenger {
    pub v_s: u32,
    pub v_d: u32,
    pub t_s: i64,
    pub t_d: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Edge {
    pub u: u32,
    pub v: u32,
    pub fare: f64,
    pub time: i64,
}

/// Rides with more members than this are not searched (orderings grow as
/// `(2m)!/2^m`). Within the capacity bounds of the analyses this never
/// binds.
const MAX_RIDE_MEMBERS: usize = 6;

#[derive(Clone, Copy)]
struct PathTo {
    fare: f64,
    time: i64,
    parent_edge: Option<usize>,
}

/// Resource oracle for taxi-ride sharing.
pub struct TaxiOracle {
    passengers: Vec<Passenger>,
    edges: Vec<Edge>,
    nodes: Vec<u32>,
    /// `paths[s][t]`: minimum-fare path data from node index `s` to `t`.
    paths: Vec<Vec<Option<PathTo>>>,
    node_index: HashMap<u32, usize>,
}

impl TaxiOracle {
    pub fn new(passengers: Vec<Passenger>, edges: Vec<Edge>) -> Result<Self> {
        if passengers.is_empty() {
            return Err(Error::EmptyInstance);
        }
        for (i, p) in passengers.iter().enumerate() {
            if p.v_s == p.v_d {
                return Err(Error::Format(format!(
                    "passenger {i} has identical source and destination {}",
                    p.v_s
                )));
            }
            if p.t_s >= p.t_d {
                return Err(Error::Format(format!(
                    "passenger {i} has empty time window [{}, {}]",
                    p.t_s, p.t_d
                )));
            }
        }
        for (j, e) in edges.iter().enumerate() {
            if !e.fare.is_finite() || e.fare <= 0.0 || e.time <= 0 {
                return Err(Error::Format(format!(
                    "edge {j} must have positive fare and travel time"
                )));
            }
        }
        let mut nodes: Vec<u32> = edges
            .iter()
            .flat_map(|e| [e.u, e.v])
            .chain(passengers.iter().flat_map(|p| [p.v_s, p.v_d]))
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        let node_index: HashMap<u32, usize> =
            nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (j, e) in edges.iter().enumerate() {
            adjacency[node_index[&e.u]].push(j);
        }
        let paths = (0..nodes.len())
            .map(|s| dijkstra_min_fare(s, &nodes, &edges, &adjacency, &node_index))
            .collect();
        Ok(TaxiOracle {
            passengers,
            edges,
            nodes,
            paths,
            node_index,
        })
    }

    pub fn passengers(&self) -> &[Passenger] {
        &self.passengers
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn path_between(&self, from: u32, to: u32) -> Option<(f64, i64, Vec<usize>)> {
        if from == to {
            return Some((0.0, 0, Vec::new()));
        }
        let s = *self.node_index.get(&from)?;
        let t = *self.node_index.get(&to)?;
        self.paths[s][t]?;
        let mut rev = Vec::new();
        let mut cur = t;
        while cur != s {
            let info = self.paths[s][cur]?;
            let e = info.parent_edge?;
            rev.push(e);
            cur = self.node_index[&self.edges[e].u];
        }
        rev.reverse();
        let info = self.paths[s][t].unwrap();
        Some((info.fare, info.time, rev))
    }

    /// Evaluate one pickup/dropoff ordering; `events[j]` is `2i` for the
    /// pickup of member `i` (position in `members`) and `2i+1` for the drop.
    fn evaluate_ordering(&self, members: &[usize], events: &[usize]) -> Option<RideCandidate> {
        let stop_node = |event: usize| {
            let p = &self.passengers[members[event / 2]];
            if event % 2 == 0 {
                p.v_s
            } else {
                p.v_d
            }
        };
        let mut legs = Vec::with_capacity(events.len().saturating_sub(1));
        let mut offsets = vec![0i64; events.len()];
        let mut fare = 0.0;
        for j in 0..events.len() - 1 {
            let (leg_fare, leg_time, leg_edges) =
                self.path_between(stop_node(events[j]), stop_node(events[j + 1]))?;
            fare += leg_fare;
            offsets[j + 1] = offsets[j] + leg_time;
            legs.push(leg_edges);
        }
        let mut pick_pos = vec![usize::MAX; members.len()];
        let mut drop_pos = vec![usize::MAX; members.len()];
        for (pos, &event) in events.iter().enumerate() {
            if event % 2 == 0 {
                pick_pos[event / 2] = pos;
            } else {
                drop_pos[event / 2] = pos;
            }
        }
        // Latest start forced by the earliest-departure constraints.
        let mut departure = i64::MIN;
        for (idx, &m) in members.iter().enumerate() {
            let p = &self.passengers[m];
            departure = departure.max(p.t_s - offsets[pick_pos[idx]]);
        }
        for (idx, &m) in members.iter().enumerate() {
            let p = &self.passengers[m];
            if offsets[drop_pos[idx]] <= offsets[pick_pos[idx]] {
                return None; // must strictly move between pickup and dropoff
            }
            if departure + offsets[drop_pos[idx]] > p.t_d {
                return None;
            }
        }
        Some(RideCandidate {
            fare,
            legs,
            pick_pos,
            drop_pos,
        })
    }
}

struct RideCandidate {
    fare: f64,
    legs: Vec<Vec<usize>>,
    pick_pos: Vec<usize>,
    drop_pos: Vec<usize>,
}

fn dijkstra_min_fare(
    source: usize,
    nodes: &[u32],
    edges: &[Edge],
    adjacency: &[Vec<usize>],
    node_index: &HashMap<u32, usize>,
) -> Vec<Option<PathTo>> {
    let mut best: Vec<Option<PathTo>> = vec![None; nodes.len()];
    best[source] = Some(PathTo {
        fare: 0.0,
        time: 0,
        parent_edge: None,
    });
    let mut done = vec![false; nodes.len()];
    loop {
        // Linear-scan extraction keeps the tie-breaking deterministic:
        // smallest (fare, time, node index).
        let mut next: Option<usize> = None;
        for v in 0..nodes.len() {
            if done[v] {
                continue;
            }
            if let Some(info) = best[v] {
                let better = match next {
                    None => true,
                    Some(u) => {
                        let cur = best[u].unwrap();
                        (info.fare, info.time) < (cur.fare, cur.time)
                    }
                };
                if better {
                    next = Some(v);
                }
            }
        }
        let Some(u) = next else { break };
        done[u] = true;
        let base = best[u].unwrap();
        for &j in &adjacency[u] {
            let e = &edges[j];
            let v = node_index[&e.v];
            if done[v] {
                continue;
            }
            let cand = (base.fare + e.fare, base.time + e.time);
            let improves = match best[v] {
                None => true,
                Some(cur) => cand < (cur.fare, cur.time),
            };
            if improves {
                best[v] = Some(PathTo {
                    fare: cand.0,
                    time: cand.1,
                    parent_edge: Some(j),
                });
            }
        }
    }
    best
}

impl CostOracle for TaxiOracle {
    fn participants(&self) -> usize {
        self.passengers.len()
    }

    fn cost(&self, g: Mask) -> f64 {
        self.best_resource(g)
            .map_or(f64::INFINITY, |r| r.total_cost)
    }
}

impl ResourceOracle for TaxiOracle {
    fn best_resource(&self, g: Mask) -> Option<Resource> {
        let members = super::member_vec(g);
        if members.is_empty() || members.len() > MAX_RIDE_MEMBERS {
            return None;
        }
        if members.iter().any(|&i| i >= self.passengers.len()) {
            return None;
        }
        let mut best: Option<(RideCandidate, Vec<usize>)> = None;
        let mut events = Vec::with_capacity(2 * members.len());
        enumerate_orderings(members.len(), &mut events, &mut |ordering| {
            if let Some(cand) = self.evaluate_ordering(&members, ordering) {
                if best.as_ref().map_or(true, |(b, _)| cand.fare < b.fare) {
                    best = Some((cand, ordering.to_vec()));
                }
            }
        });
        let (cand, _) = best?;
        let mut facilities = Vec::new();
        for (j, leg_edges) in cand.legs.iter().enumerate() {
            let mut users: Mask = 0;
            for (idx, &i) in members.iter().enumerate() {
                if cand.pick_pos[idx] <= j && j < cand.drop_pos[idx] {
                    users |= bit(i);
                }
            }
            for (step, &e) in leg_edges.iter().enumerate() {
                facilities.push(Facility {
                    label: format!("leg{j}.{step}:{}->{}", self.edges[e].u, self.edges[e].v),
                    cost: self.edges[e].fare,
                    users,
                });
            }
        }
        Some(Resource {
            total_cost: cand.fare,
            facilities,
        })
    }
}

/// All interleavings of `m` pickup/dropoff pairs with each pickup before its
/// dropoff, generated in ascending event-id order.
fn enumerate_orderings(m: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if prefix.len() == 2 * m {
        visit(prefix);
        return;
    }
    for event in 0..2 * m {
        if prefix.contains(&event) {
            continue;
        }
        if event % 2 == 1 && !prefix.contains(&(event - 1)) {
            continue;
        }
        prefix.push(event);
        enumerate_orderings(m, prefix, visit);
        prefix.pop();
    }
}
