//! Instance files and the oracle backends they select.
//!
//! An instance is `{ "n": …, "k": …, "oracle": { "kind": …, … } }` where the
//! oracle kind is one of:
//!
//! - `table` — explicit coalition costs with a completion rule,
//! - `hotel` — travelers with stay windows and acceptable locations,
//! - `taxi` — passengers on a fare/time road network,
//! - `pass` — users with required timeslots and a pass catalog,
//! - `xtable` — explicit exclusive-cost tables (the lower-bound families).
//!
//! Costs are plain decimals; infinity is never serialized, infeasibility is
//! derived from the backend's feasibility rules.

use crate::domains::{HotelOracle, PassOracle, TaxiOracle, XEntry, XTableOracle};
use crate::domains::{Edge, Passenger, Traveler};
use crate::model::{Coalition, Mask, MAX_PARTICIPANTS};
use crate::oracle::{Completion, CostOracle, CostTable, Game, ResourceOracle};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Oracle backend of an instance.
pub enum Oracle {
    Table(CostTable),
    Hotel(HotelOracle),
    Taxi(TaxiOracle),
    Pass(PassOracle),
    XTable(XTableOracle),
}

impl Oracle {
    pub fn kind(&self) -> &'static str {
        match self {
            Oracle::Table(_) => "table",
            Oracle::Hotel(_) => "hotel",
            Oracle::Taxi(_) => "taxi",
            Oracle::Pass(_) => "pass",
            Oracle::XTable(_) => "xtable",
        }
    }

    pub fn cost_oracle(&self) -> &dyn CostOracle {
        match self {
            Oracle::Table(o) => o,
            Oracle::Hotel(o) => o,
            Oracle::Taxi(o) => o,
            Oracle::Pass(o) => o,
            Oracle::XTable(o) => o,
        }
    }

    pub fn resource_oracle(&self) -> Option<&dyn ResourceOracle> {
        match self {
            Oracle::Table(_) => None,
            Oracle::Hotel(o) => Some(o),
            Oracle::Taxi(o) => Some(o),
            Oracle::Pass(o) => Some(o),
            Oracle::XTable(o) => Some(o),
        }
    }
}

/// A loaded game instance: participant count, capacity, oracle.
pub struct Instance {
    pub n: usize,
    pub k: usize,
    pub oracle: Oracle,
}

impl Instance {
    pub fn new(n: usize, k: usize, oracle: Oracle) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        if n > MAX_PARTICIPANTS {
            return Err(Error::Format(format!(
                "{n} participants exceed the {MAX_PARTICIPANTS}-participant limit"
            )));
        }
        if k == 0 {
            return Err(Error::Format("capacity k must be at least 1".into()));
        }
        if oracle.cost_oracle().participants() != n {
            return Err(Error::Format(format!(
                "oracle describes {} participants but the instance declares {n}",
                oracle.cost_oracle().participants()
            )));
        }
        if let Oracle::Table(t) = &oracle {
            t.check_complete(k.min(n))?;
        }
        Ok(Instance { n, k, oracle })
    }

    /// Borrowed handle for the analysis operations.
    pub fn game(&self) -> Game<'_> {
        match self.oracle.resource_oracle() {
            Some(r) => Game::with_resource(self.n, self.k, r),
            None => Game::new(self.n, self.k, self.oracle.cost_oracle()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: InstanceSpec =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&InstanceSpec::render(self)).expect("instance serializes")
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
    }
}

#[derive(Serialize, Deserialize)]
struct InstanceSpec {
    n: usize,
    k: usize,
    oracle: OracleSpec,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum OracleSpec {
    Table {
        entries: Vec<TableRow>,
        completion: Completion,
    },
    Hotel {
        travelers: Vec<Traveler>,
        rates: BTreeMap<u32, BTreeMap<i64, f64>>,
    },
    Taxi {
        passengers: Vec<Passenger>,
        edges: Vec<Edge>,
    },
    Pass {
        users: Vec<BTreeSet<u32>>,
        passes: Vec<BTreeSet<u32>>,
        rate: f64,
    },
    XTable {
        tables: Vec<XRow>,
        completion: Completion,
    },
}

#[derive(Serialize, Deserialize)]
struct TableRow {
    members: Vec<usize>,
    cost: f64,
}

#[derive(Serialize, Deserialize)]
struct XRow {
    members: Vec<usize>,
    x: Vec<XPart>,
}

#[derive(Serialize, Deserialize)]
struct XPart {
    subset: Vec<usize>,
    cost: f64,
}

impl InstanceSpec {
    fn build(self) -> Result<Instance> {
        let oracle = match self.oracle {
            OracleSpec::Table { entries, completion } => {
                let rows = entries
                    .into_iter()
                    .map(|row| Ok((Coalition::from_members(&row.members)?, row.cost)))
                    .collect::<Result<Vec<_>>>()?;
                Oracle::Table(CostTable::new(self.n, rows, completion)?)
            }
            OracleSpec::Hotel { travelers, rates } => {
                Oracle::Hotel(HotelOracle::new(travelers, rates)?)
            }
            OracleSpec::Taxi { passengers, edges } => {
                Oracle::Taxi(TaxiOracle::new(passengers, edges)?)
            }
            OracleSpec::Pass { users, passes, rate } => {
                Oracle::Pass(PassOracle::new(users, passes, rate)?)
            }
            OracleSpec::XTable { tables, completion } => {
                let entries = tables
                    .into_iter()
                    .map(|row| {
                        let members = Coalition::from_members(&row.members)?.mask();
                        let parts = row
                            .x
                            .into_iter()
                            .map(|p| Ok((Coalition::from_members(&p.subset)?.mask(), p.cost)))
                            .collect::<Result<Vec<(Mask, f64)>>>()?;
                        Ok(XEntry { members, parts })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Oracle::XTable(XTableOracle::new(self.n, entries, completion)?)
            }
        };
        Instance::new(self.n, self.k, oracle)
    }

    fn render(instance: &Instance) -> InstanceSpec {
        let members_of = |m: Mask| Coalition::from_mask(m).unwrap().members();
        let oracle = match &instance.oracle {
            Oracle::Table(t) => OracleSpec::Table {
                entries: t
                    .entries()
                    .iter()
                    .map(|&(mask, cost)| TableRow {
                        members: members_of(mask),
                        cost,
                    })
                    .collect(),
                completion: t.completion(),
            },
            Oracle::Hotel(h) => OracleSpec::Hotel {
                travelers: h.travelers().to_vec(),
                rates: h.rates().clone(),
            },
            Oracle::Taxi(t) => OracleSpec::Taxi {
                passengers: t.passengers().to_vec(),
                edges: t.edges().to_vec(),
            },
            Oracle::Pass(p) => OracleSpec::Pass {
                users: p.users().to_vec(),
                passes: p.passes().to_vec(),
                rate: p.rate(),
            },
            Oracle::XTable(x) => OracleSpec::XTable {
                tables: x
                    .entries()
                    .iter()
                    .map(|e| XRow {
                        members: members_of(e.members),
                        x: e.parts
                            .iter()
                            .map(|&(subset, cost)| XPart {
                                subset: members_of(subset),
                                cost,
                            })
                            .collect(),
                    })
                    .collect(),
                completion: x.completion(),
            },
        };
        InstanceSpec {
            n: instance.n,
            k: instance.k,
            oracle,
        }
    }
}

/// Companion file emitted next to generated instances, naming the certified
/// structures and the ratio they witness.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sidecar {
    pub family: String,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<Certified>,
    /// The instance is expected to admit no stable structure at all.
    #[serde(default)]
    pub expect_no_stable: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certified {
    pub stable: crate::model::CoalitionStructure,
    pub optimum: crate::model::CoalitionStructure,
    pub ratio_num: i64,
    pub ratio_den: i64,
    /// Mechanisms under which `stable` is certified stable.
    pub mechanisms: Vec<crate::mechanisms::Mechanism>,
}

impl Sidecar {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_instance_roundtrip() {
        let text = r#"{
            "n": 2, "k": 2,
            "oracle": {
                "kind": "table",
                "entries": [
                    {"members": [0], "cost": 1.0},
                    {"members": [1], "cost": 1.0},
                    {"members": [0, 1], "cost": 1.5}
                ],
                "completion": "none"
            }
        }"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.n, 2);
        assert_eq!(inst.game().cost(0b11), 1.5);
        let again = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(inst.to_json(), again.to_json());
    }

    #[test]
    fn incomplete_table_fails_to_load() {
        let text = r#"{
            "n": 2, "k": 2,
            "oracle": {
                "kind": "table",
                "entries": [
                    {"members": [0], "cost": 1.0},
                    {"members": [1], "cost": 1.0}
                ],
                "completion": "none"
            }
        }"#;
        let err = Instance::from_json(text).unwrap_err();
        assert!(err.to_string().contains("missing coalition"));
    }

    #[test]
    fn pass_instance_loads() {
        let text = r#"{
            "n": 2, "k": 2,
            "oracle": {
                "kind": "pass",
                "users": [[1, 2], [4]],
                "passes": [[1, 2, 3, 4, 5]],
                "rate": 1.0
            }
        }"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.game().cost(0b11), 5.0);
        assert!(inst.game().resource_oracle().is_some());
    }

    #[test]
    fn participant_count_mismatch_rejected() {
        let text = r#"{
            "n": 3, "k": 2,
            "oracle": {
                "kind": "pass",
                "users": [[1], [2]],
                "passes": [[1, 2]],
                "rate": 1.0
            }
        }"#;
        assert!(Instance::from_json(text).is_err());
    }
}
