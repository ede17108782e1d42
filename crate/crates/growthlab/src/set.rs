//! Finite element sets with constant-time membership and a deterministic
//! (lexicographic) iteration order.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Coords, Element, Group};

/// A finite, duplicate-free set of canonical elements of one group.
///
/// Members are kept sorted lexicographically by coordinates, so iteration,
/// hashing into reports, and greedy tie-breaks are reproducible bit for bit.
/// Sets are immutable after construction and safe to share across threads.
#[derive(Clone)]
pub struct ElementSet {
    group: Group,
    members: Vec<Element>,
    lookup: HashSet<Coords>,
}

impl ElementSet {
    /// Builds a set from elements, deduplicating and sorting.
    /// All elements must belong to `group`.
    pub fn from_elements(group: &Group, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut members: Vec<Element> = Vec::new();
        let mut lookup: HashSet<Coords> = HashSet::new();
        for e in elements {
            if e.group() != group {
                return Err(Error::SpecMismatch);
            }
            if lookup.insert(Coords::from_slice(e.coords())) {
                members.push(e);
            }
        }
        members.sort_unstable();
        Ok(ElementSet {
            group: group.clone(),
            members,
            lookup,
        })
    }

    /// Builds a set from raw coordinate tuples.
    pub fn from_coords(group: &Group, coords: &[Vec<i64>]) -> Result<Self> {
        let elems = coords
            .iter()
            .map(|c| group.element(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(group, elems)
    }

    /// The singleton `{e}`.
    pub fn singleton_identity(group: &Group) -> Self {
        Self::from_elements(group, [group.identity()]).expect("identity belongs to its group")
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.group() == &self.group && self.lookup.contains(e.coords())
    }

    /// Members in lexicographic coordinate order.
    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.members.iter()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    /// Least member in lexicographic coordinate order.
    pub fn lex_min(&self) -> Option<&Element> {
        self.members.first()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&self.group.identity())
    }

    /// Whether the set equals its own inverse set.
    pub fn is_symmetric(&self) -> Result<bool> {
        for e in &self.members {
            if !self.contains(&e.inv()?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The set of inverses.
    pub fn inverse_set(&self) -> Result<ElementSet> {
        let inverses = self
            .members
            .iter()
            .map(|e| e.inv())
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(&self.group, inverses)
    }

    /// Union, deduplicated.
    pub fn union(&self, other: &ElementSet) -> Result<ElementSet> {
        if self.group != other.group {
            return Err(Error::SpecMismatch);
        }
        Self::from_elements(
            &self.group,
            self.members.iter().chain(other.members.iter()).cloned(),
        )
    }

    /// Adjoins the identity element.
    pub fn with_identity(&self) -> ElementSet {
        if self.contains_identity() {
            return self.clone();
        }
        Self::from_elements(
            &self.group,
            self.members
                .iter()
                .cloned()
                .chain(std::iter::once(self.group.identity())),
        )
        .expect("members share the group")
    }

    /// Minkowski product `self · other`, deduplicated, with a budget cap on
    /// the number of distinct results.
    pub fn minkowski(&self, other: &ElementSet, budget: crate::Budget) -> Result<ElementSet> {
        if self.group != other.group {
            return Err(Error::SpecMismatch);
        }
        let mut lookup: HashSet<Coords> = HashSet::new();
        let mut members: Vec<Element> = Vec::new();
        for a in &self.members {
            for b in &other.members {
                let p = a.mul(b)?;
                if lookup.insert(Coords::from_slice(p.coords())) {
                    members.push(p);
                    if members.len() > budget.limit {
                        return Err(Error::BudgetExceeded {
                            needed: members.len(),
                            limit: budget.limit,
                        });
                    }
                }
            }
        }
        members.sort_unstable();
        Ok(ElementSet {
            group: self.group.clone(),
            members,
            lookup,
        })
    }

    /// True if every member of `self` is a member of `other`.
    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.group == other.group && self.members.iter().all(|e| other.contains(e))
    }

    /// Coordinate rows in lexicographic order, for reports.
    pub fn coord_rows(&self) -> Vec<Vec<i64>> {
        self.members.iter().map(|e| e.coords().to_vec()).collect()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for ElementSet {}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members.iter()).finish()
    }
}
