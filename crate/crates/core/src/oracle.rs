//! Cost oracles, canonical resources, and the axioms they must satisfy.
//!
//! A cost oracle assigns every non-empty coalition `G` a cost subject to
//!
//! - (C1) `c(∅) = 0` and `c(G) > 0` for `G ≠ ∅`;
//! - (C2) monotonicity: `c(H) ≤ c(G)` whenever `H ⊆ G`.
//!
//! Coalitions that no resource can serve get cost `+∞`; infeasibility must be
//! upward-monotone (a superset of an infeasible coalition is infeasible), so
//! the sentinel preserves (C1)/(C2).
//!
//! A resource oracle additionally produces the cheapest *canonical resource*
//! for a coalition: a cost decomposed into facilities (days, road segments,
//! timeslots) together with the facility set each member utilizes.

use crate::model::{bit, cmp_masks_lex, full_mask, members_of, Coalition, CoalitionStructure, Mask};
use crate::{check_guard, Error, Result, EPS};
use rand::Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Cost function over coalitions, identified by bitmask.
///
/// Returns `f64::INFINITY` for infeasible coalitions and `0.0` only for the
/// empty mask. Implementations must be pure: the same mask always yields the
/// same cost, regardless of evaluation order or thread.
pub trait CostOracle: Sync {
    /// Number of participants.
    fn participants(&self) -> usize;

    /// Cost of the coalition encoded by `g`.
    fn cost(&self, g: Mask) -> f64;

    /// Default cost `c_i = c({i})`; always finite for a valid oracle.
    fn default_cost(&self, i: usize) -> f64 {
        self.cost(bit(i))
    }
}

/// One facility of a canonical resource: a unit of cost together with the
/// set of coalition members that utilize it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facility {
    pub label: String,
    pub cost: f64,
    /// Members (as a submask of the owning coalition) that utilize this
    /// facility.
    pub users: Mask,
}

/// The cheapest canonical resource serving a coalition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Resource {
    pub total_cost: f64,
    pub facilities: Vec<Facility>,
}

impl Resource {
    /// Sum of facility costs; must match `total_cost` within 1e-9 relative.
    pub fn facility_sum(&self) -> f64 {
        self.facilities.iter().map(|f| f.cost).sum()
    }

    /// Facilities utilized by participant `i`.
    pub fn facilities_of(&self, i: usize) -> impl Iterator<Item = &Facility> {
        self.facilities.iter().filter(move |f| f.users & bit(i) != 0)
    }

    /// Union of all members' facility sets covers every positive-cost
    /// facility. Budget balance of usage-based sharing needs this.
    pub fn covers_all_facilities(&self) -> bool {
        self.facilities.iter().all(|f| f.cost <= EPS || f.users != 0)
    }
}

/// Cost oracle that can also exhibit the cheapest canonical resource.
///
/// `cost(g)` must equal `best_resource(g)` total cost (`+∞` when `None`).
/// Ties among equal-cost resources break deterministically, lexicographically
/// smallest encoding first.
pub trait ResourceOracle: CostOracle {
    fn best_resource(&self, g: Mask) -> Option<Resource>;
}

/// Borrowed handle bundling an instance's dimensions with its oracle;
/// the uniform argument of the analysis operations.
#[derive(Clone, Copy)]
pub struct Game<'a> {
    pub n: usize,
    pub k: usize,
    oracle: &'a dyn CostOracle,
    resource: Option<&'a dyn ResourceOracle>,
}

impl<'a> Game<'a> {
    pub fn new(n: usize, k: usize, oracle: &'a dyn CostOracle) -> Self {
        Game {
            n,
            k,
            oracle,
            resource: None,
        }
    }

    pub fn with_resource(n: usize, k: usize, resource: &'a dyn ResourceOracle) -> Self {
        Game {
            n,
            k,
            oracle: resource,
            resource: Some(resource),
        }
    }

    #[inline]
    pub fn cost(&self, g: Mask) -> f64 {
        self.oracle.cost(g)
    }

    #[inline]
    pub fn default_cost(&self, i: usize) -> f64 {
        self.oracle.default_cost(i)
    }

    #[inline]
    pub fn feasible(&self, g: Mask) -> bool {
        self.cost(g).is_finite()
    }

    pub fn sum_defaults(&self, g: Mask) -> f64 {
        members_of(g).map(|i| self.default_cost(i)).sum()
    }

    pub fn oracle(&self) -> &'a dyn CostOracle {
        self.oracle
    }

    pub fn resource_oracle(&self) -> Option<&'a dyn ResourceOracle> {
        self.resource
    }
}

/// Total cost of a coalition structure: `Σ_{G∈P} c(G)`, `+∞` if any
/// coalition is infeasible.
pub fn structure_cost(p: &CoalitionStructure, game: &Game) -> Result<f64> {
    p.validate(game.n, game.k)?;
    Ok(p.coalitions().iter().map(|c| game.cost(c.mask())).sum())
}

/// The default coalition structure `{{0},…,{n−1}}`.
pub fn default_structure(n: usize) -> Result<CoalitionStructure> {
    CoalitionStructure::singletons(n)
}

/// Small memo for repeated cost queries inside one algorithm run.
#[derive(Default)]
pub struct CostMemo {
    map: HashMap<Mask, f64>,
}

impl CostMemo {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn cost(&mut self, game: &Game, g: Mask) -> f64 {
        if let Some(&c) = self.map.get(&g) {
            return c;
        }
        let c = game.cost(g);
        self.map.insert(g, c);
        c
    }
}

// ---------------------------------------------------------------------------
// Explicit cost tables
// ---------------------------------------------------------------------------

/// Completion rule for subsets missing from an explicit table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Completion {
    /// No completion: loading fails if any coalition of size ≤ K is missing.
    None,
    /// Piecewise completion: an unlisted coalition is split into pieces, each
    /// contained in some listed entry, minimizing the summed entry costs.
    /// This reproduces the piecewise cost rules of the tight lower-bound
    /// families, where the listed entries are the maximal unit-cost sets.
    Case3,
}

/// Cost oracle backed by an explicit table of coalition costs.
pub struct CostTable {
    n: usize,
    entries: Vec<(Mask, f64)>,
    by_mask: HashMap<Mask, f64>,
    completion: Completion,
    /// Entry indices containing each participant, for the piecewise cover.
    per_member: Vec<Vec<usize>>,
}

impl CostTable {
    /// Build a table from `(members, cost)` rows.
    pub fn new(n: usize, rows: Vec<(Coalition, f64)>, completion: Completion) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut entries: Vec<(Mask, f64)> = Vec::with_capacity(rows.len());
        let mut by_mask = HashMap::with_capacity(rows.len());
        for (c, cost) in rows {
            if c.mask() & !full_mask(n) != 0 {
                return Err(Error::Format(format!(
                    "table entry {c:?} references a participant outside 0..{n}"
                )));
            }
            if !cost.is_finite() || cost <= 0.0 {
                return Err(Error::Format(format!(
                    "table entry {c:?} has non-positive or non-finite cost {cost}"
                )));
            }
            if by_mask.insert(c.mask(), cost).is_some() {
                return Err(Error::Format(format!("duplicate table entry {c:?}")));
            }
            entries.push((c.mask(), cost));
        }
        entries.sort_by(|a, b| cmp_masks_lex(a.0, b.0));
        let mut per_member = vec![Vec::new(); n];
        for (idx, (mask, _)) in entries.iter().enumerate() {
            for i in members_of(*mask) {
                per_member[i].push(idx);
            }
        }
        Ok(CostTable {
            n,
            entries,
            by_mask,
            completion,
            per_member,
        })
    }

    pub fn completion(&self) -> Completion {
        self.completion
    }

    pub fn entries(&self) -> &[(Mask, f64)] {
        &self.entries
    }

    /// With `Completion::None` every coalition of size ≤ `k` must be listed.
    pub fn check_complete(&self, k: usize) -> Result<()> {
        if self.completion == Completion::Case3 {
            // Every participant still needs some covering entry, otherwise
            // even its singleton cost is undefined.
            for i in 0..self.n {
                if self.per_member[i].is_empty() {
                    return Err(Error::Format(format!(
                        "participant {i} is not covered by any table entry"
                    )));
                }
            }
            return Ok(());
        }
        let mut missing = None;
        for_each_subset(self.n, k, &mut |mask| {
            if missing.is_none() && !self.by_mask.contains_key(&mask) {
                missing = Some(mask);
            }
        });
        if let Some(mask) = missing {
            let c = Coalition::from_mask(mask).unwrap();
            return Err(Error::Format(format!(
                "table with completion \"none\" is missing coalition {c:?}"
            )));
        }
        Ok(())
    }

    /// Minimum summed cost of a partition of `g` into pieces, each piece
    /// contained in some listed entry. `+∞` when some member is uncovered.
    fn completed_cost(&self, g: Mask) -> f64 {
        let mut memo: HashMap<Mask, f64> = HashMap::new();
        self.cover_rec(g, &mut memo)
    }

    fn cover_rec(&self, s: Mask, memo: &mut HashMap<Mask, f64>) -> f64 {
        if s == 0 {
            return 0.0;
        }
        if let Some(&v) = memo.get(&s) {
            return v;
        }
        let low = s.trailing_zeros() as usize;
        let mut best = f64::INFINITY;
        for &idx in &self.per_member[low] {
            let (emask, ecost) = self.entries[idx];
            let avail = emask & s;
            // Every subset of `avail` containing `low` is a candidate piece
            // priced at this entry's cost; cheaper covering entries for the
            // same piece are reached through their own index.
            let rest_bits = avail & !bit(low);
            let mut sub = rest_bits;
            loop {
                let piece = sub | bit(low);
                let tail = self.cover_rec(s & !piece, memo);
                let total = ecost + tail;
                if total < best {
                    best = total;
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest_bits;
            }
        }
        memo.insert(s, best);
        best
    }
}

impl CostOracle for CostTable {
    fn participants(&self) -> usize {
        self.n
    }

    fn cost(&self, g: Mask) -> f64 {
        if g == 0 {
            return 0.0;
        }
        if let Some(&c) = self.by_mask.get(&g) {
            return c;
        }
        match self.completion {
            Completion::None => f64::INFINITY,
            Completion::Case3 => self.completed_cost(g),
        }
    }
}

/// Enumerate all non-empty masks over `0..n` of size ≤ `k`, ascending size,
/// lexicographic within size.
pub fn for_each_subset(n: usize, k: usize, f: &mut dyn FnMut(Mask)) {
    fn rec(n: usize, start: usize, left: usize, acc: Mask, f: &mut dyn FnMut(Mask)) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..n {
            rec(n, i + 1, left - 1, acc | bit(i), f);
        }
    }
    for size in 1..=k.min(n) {
        rec(n, 0, size, 0, f);
    }
}

// ---------------------------------------------------------------------------
// Truncation
// ---------------------------------------------------------------------------

/// Truncated view of an oracle: `c'(G) = min(c(G), Σ_{j∈G} c_j)`.
///
/// Truncation preserves (C1) and (C2) and is idempotent. Infeasible
/// coalitions stay infeasible: the cap applies to finite costs only.
pub struct TruncatedOracle<'a> {
    inner: &'a dyn CostOracle,
    defaults: Vec<f64>,
}

impl<'a> TruncatedOracle<'a> {
    pub fn new(inner: &'a dyn CostOracle) -> Self {
        let defaults = (0..inner.participants())
            .map(|i| inner.default_cost(i))
            .collect();
        TruncatedOracle { inner, defaults }
    }
}

impl CostOracle for TruncatedOracle<'_> {
    fn participants(&self) -> usize {
        self.inner.participants()
    }

    fn cost(&self, g: Mask) -> f64 {
        let c = self.inner.cost(g);
        if !c.is_finite() {
            return c;
        }
        let cap: f64 = members_of(g).map(|i| self.defaults[i]).sum();
        c.min(cap)
    }

    fn default_cost(&self, i: usize) -> f64 {
        self.defaults[i]
    }
}

/// Build the truncated oracle for `oracle`. See [`TruncatedOracle`].
pub fn truncated_oracle<'a>(oracle: &'a dyn CostOracle) -> TruncatedOracle<'a> {
    TruncatedOracle::new(oracle)
}

// ---------------------------------------------------------------------------
// Oracle validation
// ---------------------------------------------------------------------------

/// How `validate_oracle` explores the subset lattice.
#[derive(Clone, Copy, Debug)]
pub enum ValidateMode {
    /// All coalitions of size ≤ K and all their one-member-removed subsets.
    Exhaustive,
    /// `pairs` random pairs `H ⊂ G`, reproducible from `seed`.
    Sampled { pairs: usize, seed: u64 },
}

/// A single axiom violation found by [`validate_oracle`].
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// (C1): non-positive cost on a non-empty coalition.
    NonPositiveCost { coalition: Coalition, cost: f64 },
    /// (C2): a subset costing more than its superset.
    Monotonicity {
        subset: Coalition,
        superset: Coalition,
        subset_cost: f64,
        superset_cost: f64,
    },
    /// Infeasibility not upward-monotone: feasible superset of an infeasible
    /// coalition.
    InfeasibleSubset { subset: Coalition, superset: Coalition },
    /// Resource facility costs do not sum to the coalition cost.
    FacilitySum {
        coalition: Coalition,
        facility_sum: f64,
        cost: f64,
    },
    /// A positive-cost facility of the best resource is utilized by nobody,
    /// which breaks budget balance of usage-based sharing.
    UncoveredFacility { coalition: Coalition, facility: String },
    /// A facility lists users outside the coalition.
    ForeignUser { coalition: Coalition, facility: String },
}

/// Result of checking the (C1)/(C2) axioms and the resource consistency
/// rules. Violations are report content, not errors.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidationReport {
    pub checked_coalitions: usize,
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

const VALIDATE_EXHAUSTIVE_MAX_N: usize = 20;

/// Check the cost axioms over the coalition lattice of `game`.
///
/// Exhaustive mode requires `n ≤ 20`; sampled mode draws random `H ⊂ G`
/// pairs. When the oracle exposes resources, the facility-sum and coverage
/// rules are checked on every visited feasible coalition.
pub fn validate_oracle(game: &Game, mode: ValidateMode) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    match mode {
        ValidateMode::Exhaustive => {
            check_guard(
                "validate_oracle (exhaustive)",
                game.n as u128,
                VALIDATE_EXHAUSTIVE_MAX_N as u128,
            )?;
            let mut masks = Vec::new();
            for_each_subset(game.n, game.k, &mut |m| masks.push(m));
            for &g in &masks {
                check_coalition(game, g, &mut report);
                // Immediate-subset monotonicity implies the full relation by
                // transitivity.
                for i in members_of(g) {
                    let h = g & !bit(i);
                    if h != 0 {
                        check_pair(game, h, g, &mut report);
                    }
                }
            }
        }
        ValidateMode::Sampled { pairs, seed } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..pairs {
                let size = rng.gen_range(1..=game.k.min(game.n));
                let g = random_subset(&mut rng, game.n, size);
                check_coalition(game, g, &mut report);
                if size > 1 {
                    let drop = nth_member(g, rng.gen_range(0..size));
                    check_pair(game, g & !bit(drop), g, &mut report);
                }
            }
        }
    }
    Ok(report)
}

fn check_coalition(game: &Game, g: Mask, report: &mut ValidationReport) {
    report.checked_coalitions += 1;
    let c = game.cost(g);
    if c.is_finite() && c <= 0.0 {
        report.violations.push(Violation::NonPositiveCost {
            coalition: Coalition::from_mask(g).unwrap(),
            cost: c,
        });
    }
    if g.count_ones() == 1 && !c.is_finite() {
        // Singletons must always be feasible.
        report.violations.push(Violation::NonPositiveCost {
            coalition: Coalition::from_mask(g).unwrap(),
            cost: c,
        });
    }
    if let Some(res_oracle) = game.resource_oracle() {
        if let Some(res) = res_oracle.best_resource(g) {
            let coalition = Coalition::from_mask(g).unwrap();
            let sum = res.facility_sum();
            if (sum - c).abs() > EPS * c.abs().max(1.0) {
                report.violations.push(Violation::FacilitySum {
                    coalition,
                    facility_sum: sum,
                    cost: c,
                });
            }
            for f in &res.facilities {
                if f.cost > EPS && f.users == 0 {
                    report.violations.push(Violation::UncoveredFacility {
                        coalition,
                        facility: f.label.clone(),
                    });
                }
                if f.users & !g != 0 {
                    report.violations.push(Violation::ForeignUser {
                        coalition,
                        facility: f.label.clone(),
                    });
                }
            }
        } else if c.is_finite() {
            // cost says feasible, resource says not: surface as a sum
            // mismatch against which callers can debug.
            report.violations.push(Violation::FacilitySum {
                coalition: Coalition::from_mask(g).unwrap(),
                facility_sum: f64::INFINITY,
                cost: c,
            });
        }
    }
}

fn check_pair(game: &Game, h: Mask, g: Mask, report: &mut ValidationReport) {
    report.checked_pairs += 1;
    let ch = game.cost(h);
    let cg = game.cost(g);
    match (ch.is_finite(), cg.is_finite()) {
        (true, true) => {
            if ch > cg + EPS * cg.abs().max(1.0) {
                report.violations.push(Violation::Monotonicity {
                    subset: Coalition::from_mask(h).unwrap(),
                    superset: Coalition::from_mask(g).unwrap(),
                    subset_cost: ch,
                    superset_cost: cg,
                });
            }
        }
        (false, true) => {
            report.violations.push(Violation::InfeasibleSubset {
                subset: Coalition::from_mask(h).unwrap(),
                superset: Coalition::from_mask(g).unwrap(),
            });
        }
        _ => {}
    }
}

fn random_subset(rng: &mut impl Rng, n: usize, size: usize) -> Mask {
    let mut mask = 0;
    while (mask as Mask).count_ones() < size as u32 {
        mask |= bit(rng.gen_range(0..n));
    }
    mask
}

fn nth_member(g: Mask, idx: usize) -> usize {
    members_of(g).nth(idx).expect("index within coalition size")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: usize, rows: &[(&[usize], f64)], completion: Completion) -> CostTable {
        let rows = rows
            .iter()
            .map(|(m, c)| (Coalition::from_members(m).unwrap(), *c))
            .collect();
        CostTable::new(n, rows, completion).unwrap()
    }

    fn mask(members: &[usize]) -> Mask {
        Coalition::from_members(members).unwrap().mask()
    }

    #[test]
    fn structure_cost_sums_defaults() {
        // P_self with c_i = 1 for n = 3 sums to 3.
        let t = table(
            3,
            &[(&[0], 1.0), (&[1], 1.0), (&[2], 1.0)],
            Completion::Case3,
        );
        let game = Game::new(3, 3, &t);
        let p = default_structure(3).unwrap();
        assert_eq!(structure_cost(&p, &game).unwrap(), 3.0);
    }

    #[test]
    fn structure_cost_pair_plus_singleton() {
        // {{0,1},{2}} with pair cost 1.0 and c_2 = 0.1 totals 1.1.
        let t = table(
            3,
            &[
                (&[0], 1.0),
                (&[1], 1.0),
                (&[2], 0.1),
                (&[0, 1], 1.0),
                (&[0, 2], 1.0),
                (&[1, 2], 1.0),
                (&[0, 1, 2], 1.0),
            ],
            Completion::None,
        );
        let game = Game::new(3, 3, &t);
        let p = CoalitionStructure::new(vec![
            Coalition::from_members(&[0, 1]).unwrap(),
            Coalition::singleton(2),
        ]);
        let c = structure_cost(&p, &game).unwrap();
        assert!((c - 1.1).abs() < 1e-12);
    }

    #[test]
    fn structure_cost_rejects_malformed() {
        let t = table(3, &[(&[0], 1.0), (&[1], 1.0), (&[2], 1.0)], Completion::Case3);
        let game = Game::new(3, 2, &t);
        let p = CoalitionStructure::new(vec![Coalition::from_members(&[0, 1, 2]).unwrap()]);
        assert!(structure_cost(&p, &game).is_err());
    }

    #[test]
    fn default_structure_shapes() {
        assert_eq!(default_structure(1).unwrap().len(), 1);
        let p = default_structure(3).unwrap();
        assert_eq!(
            p.coalitions().iter().map(|c| c.members()).collect::<Vec<_>>(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert!(default_structure(0).is_err());
        assert_eq!(default_structure(18).unwrap().len(), 18);
    }

    #[test]
    fn case3_completion_takes_cheapest_cover() {
        // Two overlapping unit-cost entries; their union costs 2 via the
        // two-piece cover, and listed entries win exactly.
        let t = table(4, &[(&[0, 1], 1.0), (&[1, 2], 1.0), (&[3], 1.0)], Completion::Case3);
        assert_eq!(t.cost(mask(&[0, 1])), 1.0);
        assert_eq!(t.cost(mask(&[0])), 1.0);
        assert_eq!(t.cost(mask(&[0, 1, 2])), 2.0);
        assert_eq!(t.cost(mask(&[0, 2])), 2.0);
        assert_eq!(t.cost(mask(&[0, 1, 2, 3])), 3.0);
    }

    #[test]
    fn completion_none_misses_are_infeasible_and_flagged() {
        let t = table(2, &[(&[0], 1.0), (&[1], 1.0)], Completion::None);
        assert!(t.cost(mask(&[0, 1])).is_infinite());
        assert!(t.check_complete(2).is_err());
        assert!(t.check_complete(1).is_ok());
    }

    #[test]
    fn truncation_caps_at_sum_of_defaults() {
        let t = table(
            2,
            &[(&[0], 1.0), (&[1], 1.0), (&[0, 1], 3.0)],
            Completion::None,
        );
        let tr = truncated_oracle(&t);
        assert_eq!(tr.cost(mask(&[0, 1])), 2.0);

        let t2 = table(
            2,
            &[(&[0], 2.0), (&[1], 1.0), (&[0, 1], 2.4)],
            Completion::None,
        );
        let tr2 = truncated_oracle(&t2);
        assert_eq!(tr2.cost(mask(&[0, 1])), 2.4);
        // Singleton cap equals the value itself.
        assert_eq!(tr2.cost(mask(&[0])), 2.0);
        assert_eq!(tr2.cost(mask(&[1])), 1.0);
    }

    #[test]
    fn truncation_is_idempotent_exhaustively() {
        // Random monotone tables on n ≤ 12, truncate twice, compare.
        use rand::Rng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n = rng.gen_range(2..=6usize);
            let mut rows: Vec<(Coalition, f64)> = Vec::new();
            let mut costs: HashMap<Mask, f64> = HashMap::new();
            for_each_subset(n, n, &mut |m| {
                let floor = members_of(m)
                    .map(|i| costs.get(&(m & !bit(i))).copied().unwrap_or(0.0))
                    .fold(0.0f64, f64::max)
                    .max(0.05);
                let c = floor + rng.gen_range(0.0..2.0);
                costs.insert(m, c);
                rows.push((Coalition::from_mask(m).unwrap(), c));
            });
            let t = CostTable::new(n, rows, Completion::None).unwrap();
            let once = TruncatedOracle::new(&t);
            let twice = TruncatedOracle::new(&once);
            for_each_subset(n, n, &mut |m| {
                assert_eq!(once.cost(m), twice.cost(m));
            });
        }
    }

    #[test]
    fn validation_flags_constructed_monotonicity_violation() {
        // c({0}) = 2 > c({0,1}) = 1 is a (C2) violation.
        let t = table(
            2,
            &[(&[0], 2.0), (&[1], 1.0), (&[0, 1], 1.0)],
            Completion::None,
        );
        let game = Game::new(2, 2, &t);
        let report = validate_oracle(&game, ValidateMode::Exhaustive).unwrap();
        assert!(!report.is_clean());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Monotonicity { .. })));
    }

    #[test]
    fn validation_guard_respected() {
        let t = table(2, &[(&[0], 1.0), (&[1], 1.0)], Completion::Case3);
        let game = Game {
            n: 21,
            k: 2,
            ..Game::new(2, 2, &t)
        };
        assert!(matches!(
            validate_oracle(&game, ValidateMode::Exhaustive),
            Err(Error::ResourceLimit { .. })
        ));
    }
}
