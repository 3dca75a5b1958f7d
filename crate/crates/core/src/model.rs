//! Participants, coalitions, and coalition structures.
//!
//! Participants are dense indices `0..n`. A coalition is a non-empty subset
//! of participants, stored as a bitmask so that subset enumeration and the
//! partition DP stay cheap; the canonical I/O form is the ascending member
//! list. Masks are 128-bit, which caps instances at 128 participants — wide
//! enough for the tight lower-bound families (`K·K! = 96` at `K = 4`).

use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Dense participant index in `0..n`.
pub type ParticipantId = usize;

/// Bitmask over participant indices.
pub type Mask = u128;

/// Largest supported participant count.
pub const MAX_PARTICIPANTS: usize = 128;

/// Mask with the single bit for participant `i` set.
#[inline]
pub fn bit(i: ParticipantId) -> Mask {
    debug_assert!(i < MAX_PARTICIPANTS);
    1u128 << i
}

/// Mask with bits `0..n` set.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    debug_assert!(n <= MAX_PARTICIPANTS);
    if n == MAX_PARTICIPANTS {
        Mask::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Iterate the set bits of a mask in ascending order.
pub fn members_of(mask: Mask) -> MaskIter {
    MaskIter(mask)
}

/// Iterator over the participants in a mask, ascending.
pub struct MaskIter(Mask);

impl Iterator for MaskIter {
    type Item = ParticipantId;

    #[inline]
    fn next(&mut self) -> Option<ParticipantId> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as ParticipantId;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// A non-empty coalition of participants in canonical (bitmask) form.
///
/// Ordering is lexicographic on the ascending member list, with shorter
/// prefixes first: `{0,1} < {0,1,2} < {0,2}`. All deterministic tie-breaking
/// in the crate uses this order.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Coalition {
    mask: Mask,
}

impl Coalition {
    /// Build a coalition from a bitmask. Returns `None` for the empty mask.
    pub fn from_mask(mask: Mask) -> Option<Self> {
        if mask == 0 {
            None
        } else {
            Some(Coalition { mask })
        }
    }

    /// Build a coalition from a member list; duplicates collapse.
    pub fn from_members(members: &[ParticipantId]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::BadArgument("coalition must be non-empty".into()));
        }
        let mut mask = 0;
        for &i in members {
            if i >= MAX_PARTICIPANTS {
                return Err(Error::BadArgument(format!(
                    "participant index {i} exceeds the {MAX_PARTICIPANTS}-participant limit"
                )));
            }
            mask |= bit(i);
        }
        Ok(Coalition { mask })
    }

    /// Singleton coalition `{i}`.
    pub fn singleton(i: ParticipantId) -> Self {
        Coalition { mask: bit(i) }
    }

    #[inline]
    pub fn mask(&self) -> Mask {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, i: ParticipantId) -> bool {
        i < MAX_PARTICIPANTS && self.mask & bit(i) != 0
    }

    /// Members in ascending order (the canonical serialized form).
    pub fn members(&self) -> Vec<ParticipantId> {
        members_of(self.mask).collect()
    }

    /// Smallest member index.
    pub fn min_member(&self) -> ParticipantId {
        self.mask.trailing_zeros() as ParticipantId
    }
}

impl std::fmt::Debug for Coalition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (idx, m) in members_of(self.mask).enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        cmp_masks_lex(self.mask, other.mask)
    }
}

/// Lexicographic comparison of two masks viewed as ascending member lists,
/// shorter prefix first.
pub fn cmp_masks_lex(a: Mask, b: Mask) -> std::cmp::Ordering {
    let mut x = a;
    let mut y = b;
    loop {
        match (x == 0, y == 0) {
            (true, true) => return std::cmp::Ordering::Equal,
            (true, false) => return std::cmp::Ordering::Less,
            (false, true) => return std::cmp::Ordering::Greater,
            (false, false) => {
                let i = x.trailing_zeros();
                let j = y.trailing_zeros();
                if i != j {
                    return i.cmp(&j);
                }
                x &= x - 1;
                y &= y - 1;
            }
        }
    }
}

impl Serialize for Coalition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coalition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<ParticipantId>::deserialize(deserializer)?;
        Coalition::from_members(&members).map_err(serde::de::Error::custom)
    }
}

/// A partition of all `n` participants into coalitions of size ≤ K.
///
/// Canonical form sorts the coalitions by their smallest member, which is a
/// total order because the coalitions are disjoint.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoalitionStructure {
    coalitions: Vec<Coalition>,
}

impl CoalitionStructure {
    /// Build and canonicalize a structure without validating the capacity
    /// bound or coverage; use [`CoalitionStructure::validate`] for that.
    pub fn new(mut coalitions: Vec<Coalition>) -> Self {
        coalitions.sort_by_key(|c| c.min_member());
        CoalitionStructure { coalitions }
    }

    /// The default structure `{{0},{1},…,{n−1}}` in which everyone stays alone.
    pub fn singletons(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        Ok(CoalitionStructure {
            coalitions: (0..n).map(Coalition::singleton).collect(),
        })
    }

    pub fn coalitions(&self) -> &[Coalition] {
        &self.coalitions
    }

    pub fn len(&self) -> usize {
        self.coalitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coalitions.is_empty()
    }

    /// The coalition containing participant `i`, if any.
    pub fn coalition_of(&self, i: ParticipantId) -> Option<&Coalition> {
        self.coalitions.iter().find(|c| c.contains(i))
    }

    /// Check that the coalitions are pairwise disjoint, cover exactly
    /// `0..n`, and respect the capacity bound `k`.
    pub fn validate(&self, n: usize, k: usize) -> Result<()> {
        let mut seen: Mask = 0;
        for c in &self.coalitions {
            if c.len() > k {
                return Err(Error::InvalidPartition(format!(
                    "coalition {c:?} exceeds capacity {k}"
                )));
            }
            if seen & c.mask() != 0 {
                return Err(Error::InvalidPartition(format!(
                    "coalition {c:?} overlaps an earlier coalition"
                )));
            }
            seen |= c.mask();
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPartition(format!(
                "coalitions do not cover exactly 0..{n}"
            )));
        }
        Ok(())
    }

    /// Canonical key for hashing visited structures in dynamics.
    pub fn key(&self) -> Vec<Mask> {
        self.coalitions.iter().map(|c| c.mask()).collect()
    }
}

impl std::fmt::Debug for CoalitionStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (idx, c) in self.coalitions.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coalition_canonical_members() {
        let c = Coalition::from_members(&[3, 1, 2]).unwrap();
        assert_eq!(c.members(), vec![1, 2, 3]);
        assert_eq!(c.len(), 3);
        assert_eq!(c.min_member(), 1);
    }

    #[test]
    fn empty_coalition_rejected() {
        assert!(Coalition::from_members(&[]).is_err());
        assert!(Coalition::from_mask(0).is_none());
    }

    #[test]
    fn lexicographic_order_shorter_prefix_first() {
        let c01 = Coalition::from_members(&[0, 1]).unwrap();
        let c012 = Coalition::from_members(&[0, 1, 2]).unwrap();
        let c02 = Coalition::from_members(&[0, 2]).unwrap();
        assert!(c01 < c012);
        assert!(c012 < c02);
    }

    #[test]
    fn singletons_structure() {
        let p = CoalitionStructure::singletons(3).unwrap();
        assert_eq!(p.len(), 3);
        p.validate(3, 1).unwrap();
        assert!(CoalitionStructure::singletons(0).is_err());

        let p18 = CoalitionStructure::singletons(18).unwrap();
        assert_eq!(p18.len(), 18);
        p18.validate(18, 3).unwrap();
    }

    #[test]
    fn validate_rejects_overlap_capacity_and_gaps() {
        let a = Coalition::from_members(&[0, 1]).unwrap();
        let b = Coalition::from_members(&[1, 2]).unwrap();
        let p = CoalitionStructure::new(vec![a, b]);
        assert!(p.validate(3, 2).is_err());

        let p = CoalitionStructure::new(vec![Coalition::from_members(&[0, 1, 2]).unwrap()]);
        assert!(p.validate(3, 2).is_err());
        p.validate(3, 3).unwrap();

        let p = CoalitionStructure::new(vec![a]);
        assert!(p.validate(3, 2).is_err());
    }

    proptest! {
        // Canonical-form round trip: JSON encode/decode is the identity.
        #[test]
        fn coalition_roundtrip(members in proptest::collection::btree_set(0usize..64, 1..12)) {
            let members: Vec<_> = members.into_iter().collect();
            let c = Coalition::from_members(&members).unwrap();
            let json = serde_json::to_string(&c).unwrap();
            let back: Coalition = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(c, back);
            prop_assert_eq!(back.members(), members);
        }

        #[test]
        fn structure_roundtrip(assignment in proptest::collection::vec(0usize..4, 1..12)) {
            // Interpret the vector as a restricted-growth-ish block assignment.
            let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 4];
            for (i, &b) in assignment.iter().enumerate() {
                blocks[b].push(i);
            }
            let coalitions: Vec<_> = blocks
                .iter()
                .filter(|b| !b.is_empty())
                .map(|b| Coalition::from_members(b).unwrap())
                .collect();
            let p = CoalitionStructure::new(coalitions);
            let json = serde_json::to_string(&p).unwrap();
            let back: CoalitionStructure = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(p, back);
        }
    }
}
