//! Set families over a finite universe: union closure, element
//! frequency, and abundant-element detection.
//!
//! A family is a duplicate-free ordered list of member sets, each a
//! [`BitSet`] of the family's universe width. The union-closed closure
//! `⟨F⟩` always contains the empty set, and the empty set counts toward
//! the family size when testing abundance. Abundance is inclusive:
//! element `x` is abundant when `2·frequency(x) >= |F|`. All threshold
//! comparisons are done on doubled integers so no fractions appear.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;

/// Dense 0-based element index into a family's universe.
pub type ElementId = usize;

/// A member set of a family; width equals the owning family's universe size.
pub type MemberSet = BitSet;

/// Default bound on the number of sets a closure may reach.
pub const CLOSURE_CAP_DEFAULT: usize = 1 << 24;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("element index {index} out of range for universe size {universe}")]
    IndexOutOfRange { index: usize, universe: usize },
    #[error("member set width {width} does not match universe size {universe}")]
    WidthMismatch { width: usize, universe: usize },
    #[error("union closure exceeded the cap of {cap} member sets")]
    CapacityExceeded { cap: usize },
}

/// Outcome of checking a family against the union-closed conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UccVerdict {
    /// The closure has an abundant element.
    Holds,
    /// No abundant element: a counterexample candidate.
    Fails,
    /// The closure is `{∅}`, which the conjecture excludes.
    Degenerate,
}

/// An ordered, duplicate-free collection of member sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    universe_size: usize,
    sets: Vec<MemberSet>,
}

impl SetFamily {
    /// Builds a family, silently collapsing duplicate sets (families are
    /// sets of sets). Errors if any member's width disagrees with the
    /// universe size.
    pub fn new(universe_size: usize, sets: Vec<MemberSet>) -> Result<Self, FamilyError> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(sets.len());
        for s in sets {
            if s.width() != universe_size {
                return Err(FamilyError::WidthMismatch {
                    width: s.width(),
                    universe: universe_size,
                });
            }
            if seen.insert(s.clone()) {
                kept.push(s);
            }
        }
        Ok(SetFamily {
            universe_size,
            sets: kept,
        })
    }

    /// Builds a family from index lists, validating every index.
    pub fn from_index_sets(
        universe_size: usize,
        sets: &[Vec<usize>],
    ) -> Result<Self, FamilyError> {
        let mut members = Vec::with_capacity(sets.len());
        for indices in sets {
            let mut m = BitSet::new(universe_size);
            for &i in indices {
                if i >= universe_size {
                    return Err(FamilyError::IndexOutOfRange {
                        index: i,
                        universe: universe_size,
                    });
                }
                m.insert(i);
            }
            members.push(m);
        }
        SetFamily::new(universe_size, members)
    }

    pub fn empty(universe_size: usize) -> Self {
        SetFamily {
            universe_size,
            sets: Vec::new(),
        }
    }

    #[inline]
    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    #[inline]
    pub fn sets(&self) -> &[MemberSet] {
        &self.sets
    }

    pub fn contains(&self, s: &MemberSet) -> bool {
        self.sets.iter().any(|m| m == s)
    }

    /// Order-insensitive family equality.
    pub fn same_sets(&self, other: &SetFamily) -> bool {
        if self.universe_size != other.universe_size || self.sets.len() != other.sets.len() {
            return false;
        }
        let mut a = self.sets.clone();
        let mut b = other.sets.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Union of all member sets.
    pub fn universe(&self) -> MemberSet {
        let mut u = BitSet::new(self.universe_size);
        for s in &self.sets {
            u.union_with(s);
        }
        u
    }

    /// Number of member sets containing `x`.
    pub fn frequency(&self, x: ElementId) -> Result<usize, FamilyError> {
        if x >= self.universe_size {
            return Err(FamilyError::IndexOutOfRange {
                index: x,
                universe: self.universe_size,
            });
        }
        Ok(self.sets.iter().filter(|s| s.contains(x)).count())
    }

    /// Inclusive abundance test: `2·frequency(x) >= |F|`.
    ///
    /// For even family sizes an element can sit exactly on the
    /// threshold; the tie counts as abundant, mirroring the inclusive
    /// rare threshold on the graph side.
    pub fn is_abundant(&self, x: ElementId) -> Result<bool, FamilyError> {
        Ok(2 * self.frequency(x)? >= self.sets.len())
    }

    /// Ascending list of all abundant elements.
    pub fn abundant_elements(&self) -> Vec<ElementId> {
        (0..self.universe_size)
            .filter(|&x| 2 * self.sets.iter().filter(|s| s.contains(x)).count() >= self.sets.len())
            .collect()
    }

    /// True iff the union of any two members is again a member.
    pub fn is_union_closed(&self) -> bool {
        let have: HashSet<&MemberSet> = self.sets.iter().collect();
        for (i, a) in self.sets.iter().enumerate() {
            for b in &self.sets[i..] {
                if !have.contains(&a.union(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest union-closed superset of this family's sets plus `∅`.
    pub fn close(&self) -> Result<UnionClosedFamily, FamilyError> {
        self.close_capped(CLOSURE_CAP_DEFAULT)
    }

    /// Closure with an explicit cap on the number of member sets.
    ///
    /// Worklist algorithm: new unions are pushed onto a frontier and
    /// combined against everything found so far, with a hash set for
    /// dedup. Output-sensitive and exact.
    pub fn close_capped(&self, cap: usize) -> Result<UnionClosedFamily, FamilyError> {
        let mut known: HashSet<MemberSet> = HashSet::new();
        let mut members: Vec<MemberSet> = Vec::new();
        let mut frontier: Vec<MemberSet> = Vec::new();

        let empty = BitSet::new(self.universe_size);
        known.insert(empty.clone());
        members.push(empty);

        for s in &self.sets {
            if known.insert(s.clone()) {
                members.push(s.clone());
                frontier.push(s.clone());
            }
        }
        if members.len() > cap {
            return Err(FamilyError::CapacityExceeded { cap });
        }

        while let Some(s) = frontier.pop() {
            // Index loop: `members` grows while we scan it, but unions with
            // sets appended later are discovered when those sets are popped.
            for i in 0..members.len() {
                let u = s.union(&members[i]);
                if !known.contains(&u) {
                    if members.len() == cap {
                        return Err(FamilyError::CapacityExceeded { cap });
                    }
                    known.insert(u.clone());
                    members.push(u.clone());
                    frontier.push(u);
                }
            }
        }

        members.sort();
        Ok(UnionClosedFamily {
            family: SetFamily {
                universe_size: self.universe_size,
                sets: members,
            },
        })
    }

    /// Verdict for the union-closed conjecture on `⟨F⟩`.
    pub fn ucc_verdict(&self) -> Result<UccVerdict, FamilyError> {
        self.ucc_verdict_capped(CLOSURE_CAP_DEFAULT)
    }

    pub fn ucc_verdict_capped(&self, cap: usize) -> Result<UccVerdict, FamilyError> {
        let closed = self.close_capped(cap)?;
        if closed.len() == 1 {
            return Ok(UccVerdict::Degenerate);
        }
        if closed.abundant_elements().is_empty() {
            Ok(UccVerdict::Fails)
        } else {
            Ok(UccVerdict::Holds)
        }
    }

    /// Structural predicates used by the known-results suites.
    pub fn predicates(&self) -> FamilyPredicates {
        let universe = self.universe();
        let has_singleton = self.sets.iter().any(|s| s.count() == 1);
        let has_full_universe_set =
            self.universe_size > 0 && self.sets.iter().any(|s| *s == BitSet::full(self.universe_size));
        let min_member_size = self.sets.iter().map(|s| s.count()).min();
        let max_member_size = self.sets.iter().map(|s| s.count()).max();
        let max_frequency = (0..self.universe_size)
            .map(|x| self.sets.iter().filter(|s| s.contains(x)).count())
            .max()
            .unwrap_or(0);

        // Separating: any two distinct universe elements are told apart
        // by some member containing exactly one of them.
        let elems = universe.to_indices();
        let mut is_separating = true;
        'outer: for (i, &x) in elems.iter().enumerate() {
            for &y in &elems[i + 1..] {
                if !self
                    .sets
                    .iter()
                    .any(|s| s.contains(x) != s.contains(y))
                {
                    is_separating = false;
                    break 'outer;
                }
            }
        }

        FamilyPredicates {
            has_singleton,
            has_full_universe_set,
            is_separating,
            min_member_size,
            max_member_size,
            max_frequency,
        }
    }
}

/// Predicate summary for a family.
///
/// `has_full_universe_set` reads "a set of maximal cardinality" as a
/// member equal to the declared universe; `max_member_size` is reported
/// alongside so the weaker "largest member" reading stays visible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyPredicates {
    pub has_singleton: bool,
    pub has_full_universe_set: bool,
    pub is_separating: bool,
    pub min_member_size: Option<usize>,
    pub max_member_size: Option<usize>,
    pub max_frequency: usize,
}

/// A family known to be union-closed and to contain `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionClosedFamily {
    family: SetFamily,
}

impl UnionClosedFamily {
    pub fn as_family(&self) -> &SetFamily {
        &self.family
    }

    pub fn into_family(self) -> SetFamily {
        self.family
    }

    pub fn contains_empty(&self) -> bool {
        true
    }
}

impl std::ops::Deref for UnionClosedFamily {
    type Target = SetFamily;

    fn deref(&self) -> &SetFamily {
        &self.family
    }
}

pub mod json {
    //! Family JSON document:
    //! `{"universe": <int>, "labels": [<string>...] (optional), "sets": [[<int>...], ...]}`.
    //!
    //! Indices are 0-based; out-of-range indices are rejected. Duplicate
    //! member sets are collapsed with a counter in the returned document.

    use super::*;
    use std::path::Path;

    #[derive(Debug, Error)]
    pub enum JsonError {
        #[error("json: {0}")]
        Syntax(#[from] serde_json::Error),
        #[error("io: {0}")]
        Io(#[from] std::io::Error),
        #[error("set {set} has element {index} out of range for universe {universe}")]
        OutOfRange {
            set: usize,
            index: usize,
            universe: usize,
        },
        #[error("labels array has {got} entries but universe is {universe}")]
        LabelCountMismatch { got: usize, universe: usize },
    }

    #[derive(Debug, Serialize, Deserialize)]
    struct RawDoc {
        universe: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        sets: Vec<Vec<usize>>,
    }

    /// A parsed family file plus read metadata.
    #[derive(Debug, Clone)]
    pub struct FamilyDocument {
        pub family: SetFamily,
        pub labels: Option<Vec<String>>,
        /// Number of duplicate member sets collapsed while reading.
        pub duplicates_collapsed: usize,
    }

    pub fn from_str(text: &str) -> Result<FamilyDocument, JsonError> {
        let raw: RawDoc = serde_json::from_str(text)?;
        if let Some(labels) = &raw.labels {
            if labels.len() != raw.universe {
                return Err(JsonError::LabelCountMismatch {
                    got: labels.len(),
                    universe: raw.universe,
                });
            }
        }
        let mut members = Vec::with_capacity(raw.sets.len());
        for (k, indices) in raw.sets.iter().enumerate() {
            let mut m = BitSet::new(raw.universe);
            for &i in indices {
                if i >= raw.universe {
                    return Err(JsonError::OutOfRange {
                        set: k,
                        index: i,
                        universe: raw.universe,
                    });
                }
                m.insert(i);
            }
            members.push(m);
        }
        let before = members.len();
        let family = SetFamily::new(raw.universe, members).expect("widths match by construction");
        let duplicates_collapsed = before - family.len();
        Ok(FamilyDocument {
            family,
            labels: raw.labels,
            duplicates_collapsed,
        })
    }

    pub fn read_file<P: AsRef<Path>>(path: P) -> Result<FamilyDocument, JsonError> {
        let text = std::fs::read_to_string(path)?;
        from_str(&text)
    }

    /// Serializes a family with sets as sorted index lists, set order
    /// preserved. Byte-identical across runs for equal input.
    pub fn to_string(family: &SetFamily, labels: Option<&[String]>) -> String {
        let raw = RawDoc {
            universe: family.universe_size(),
            labels: labels.map(|l| l.to_vec()),
            sets: family.sets().iter().map(|s| s.to_indices()).collect(),
        };
        serde_json::to_string_pretty(&raw).expect("family document serializes")
    }

    pub fn write_file<P: AsRef<Path>>(
        path: P,
        family: &SetFamily,
        labels: Option<&[String]>,
    ) -> Result<(), JsonError> {
        std::fs::write(path, to_string(family, labels) + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(universe: usize, sets: &[&[usize]]) -> SetFamily {
        let sets: Vec<Vec<usize>> = sets.iter().map(|s| s.to_vec()).collect();
        SetFamily::from_index_sets(universe, &sets).unwrap()
    }

    #[test]
    fn close_empty_family_is_empty_set_only() {
        let closed = fam(2, &[]).close().unwrap();
        assert_eq!(closed.len(), 1);
        assert!(closed.sets()[0].is_empty());
    }

    #[test]
    fn close_two_singletons() {
        let closed = fam(2, &[&[0], &[1]]).close().unwrap();
        let expect = fam(2, &[&[], &[0], &[1], &[0, 1]]);
        assert!(closed.as_family().same_sets(&expect));
    }

    #[test]
    fn close_three_pairs_over_three_elements() {
        // Brute-force fixed point by hand: the three pairs union to the
        // full triple and nothing else is new.
        let closed = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]).close().unwrap();
        let expect = fam(3, &[&[], &[0, 1], &[1, 2], &[0, 2], &[0, 1, 2]]);
        assert_eq!(closed.len(), 5);
        assert!(closed.as_family().same_sets(&expect));
    }

    #[test]
    fn close_is_idempotent() {
        let f = fam(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let once = f.close().unwrap();
        let twice = once.as_family().close().unwrap();
        assert_eq!(once.as_family().sets(), twice.as_family().sets());
    }

    #[test]
    fn closure_cap_is_enforced() {
        let f = fam(5, &[&[0], &[1], &[2], &[3], &[4]]);
        match f.close_capped(10) {
            Err(FamilyError::CapacityExceeded { cap: 10 }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
        assert_eq!(f.close_capped(32).unwrap().len(), 32);
    }

    #[test]
    fn universe_is_union_of_members() {
        assert!(fam(2, &[]).universe().is_empty());
        assert_eq!(fam(2, &[&[0], &[1]]).universe().to_indices(), vec![0, 1]);
        assert_eq!(
            fam(3, &[&[0, 1], &[2]]).universe().to_indices(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn frequency_counts_membership() {
        let f = fam(2, &[&[0], &[0, 1]]);
        assert_eq!(f.frequency(0).unwrap(), 2);
        assert_eq!(f.frequency(1).unwrap(), 1);
        assert!(matches!(
            f.frequency(2),
            Err(FamilyError::IndexOutOfRange { .. })
        ));
        // Enumerate the 4 closure sets of {{0},{1}} by hand: ∅,{0},{1},{0,1}.
        let closed = fam(2, &[&[0], &[1]]).close().unwrap();
        assert_eq!(closed.frequency(0).unwrap(), 2);
    }

    #[test]
    fn abundance_is_inclusive() {
        let f = fam(1, &[&[], &[0]]);
        assert!(f.is_abundant(0).unwrap()); // 2·1 >= 2

        let closed = fam(2, &[&[0], &[1]]).close().unwrap();
        assert!(closed.is_abundant(0).unwrap()); // freq 2, |F| 4
        assert_eq!(closed.abundant_elements(), vec![0, 1]);

        // Power set of 3 elements: frequency 4 of 8.
        let power: Vec<Vec<usize>> = (0u8..8)
            .map(|m| (0..3).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        let f = SetFamily::from_index_sets(3, &power).unwrap();
        assert!(f.is_abundant(0).unwrap());
    }

    #[test]
    fn abundant_elements_edge_cases() {
        assert!(fam(1, &[&[]]).abundant_elements().is_empty());
        assert_eq!(fam(1, &[&[], &[0]]).abundant_elements(), vec![0]);
    }

    #[test]
    fn verdicts() {
        assert_eq!(fam(2, &[]).ucc_verdict().unwrap(), UccVerdict::Degenerate);
        assert_eq!(fam(1, &[&[]]).ucc_verdict().unwrap(), UccVerdict::Degenerate);
        assert_eq!(fam(1, &[&[0]]).ucc_verdict().unwrap(), UccVerdict::Holds);
        // Each element has frequency 3 in the 5-set closure; 6 >= 5.
        assert_eq!(
            fam(3, &[&[0, 1], &[1, 2], &[0, 2]]).ucc_verdict().unwrap(),
            UccVerdict::Holds
        );
    }

    #[test]
    fn union_closed_test() {
        assert!(fam(1, &[&[], &[0]]).is_union_closed());
        assert!(!fam(2, &[&[0], &[1]]).is_union_closed());
        let closed = fam(3, &[&[0, 1], &[1, 2]]).close().unwrap();
        assert!(closed.as_family().is_union_closed());
    }

    #[test]
    fn predicates_examples() {
        let p = fam(1, &[&[0]]).predicates();
        assert!(p.has_singleton);

        let p = fam(2, &[&[0, 1]]).predicates();
        assert!(p.has_full_universe_set);
        assert!(!p.is_separating);
        assert_eq!(p.min_member_size, Some(2));
        assert_eq!(p.max_member_size, Some(2));

        // {0} separates 0 from 1.
        let p = fam(2, &[&[0], &[0, 1]]).predicates();
        assert!(p.is_separating);
        assert_eq!(p.max_frequency, 2);

        let p = fam(2, &[]).predicates();
        assert_eq!(p.min_member_size, None);
        assert!(p.is_separating); // vacuous
    }

    #[test]
    fn duplicates_collapse_in_constructor_and_reader() {
        let f = SetFamily::from_index_sets(2, &[vec![0], vec![0], vec![1]]).unwrap();
        assert_eq!(f.len(), 2);

        let doc =
            json::from_str(r#"{"universe": 2, "sets": [[0], [0], [1, 1]]}"#).unwrap();
        assert_eq!(doc.family.len(), 2);
        assert_eq!(doc.duplicates_collapsed, 1);
    }

    #[test]
    fn json_rejects_out_of_range_and_bad_labels() {
        assert!(matches!(
            json::from_str(r#"{"universe": 2, "sets": [[2]]}"#),
            Err(json::JsonError::OutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            json::from_str(r#"{"universe": 2, "labels": ["a"], "sets": []}"#),
            Err(json::JsonError::LabelCountMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let f = fam(3, &[&[0, 2], &[1]]);
        let text = json::to_string(&f, None);
        let doc = json::from_str(&text).unwrap();
        assert!(doc.family.same_sets(&f));
    }
}
