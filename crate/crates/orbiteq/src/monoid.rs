//! Elements of the acting monoid and of its enveloping lattice-ordered group.
//!
//! The acting monoid is realized as vectors of non-negative integers under
//! componentwise addition; the enveloping group is the corresponding vector
//! group with the componentwise order, so every group element has a canonical
//! fraction decomposition into positive and negative parts.

use serde::{Deserialize, Serialize};
use std::fmt;

/// An element of the acting monoid: a vector of non-negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonoidElement(pub Vec<u32>);

/// An element of the enveloping group: a vector of integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement(pub Vec<i64>);

impl MonoidElement {
    pub fn zero(rank: usize) -> Self {
        MonoidElement(vec![0; rank])
    }

    /// The i-th standard generator e_i.
    pub fn generator(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        MonoidElement(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Total degree: the sum of the coordinates.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MonoidElement) -> MonoidElement {
        MonoidElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn to_group(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|&c| c as i64).collect())
    }

    /// Formal difference self − other in the enveloping group.
    pub fn sub(&self, other: &MonoidElement) -> GroupElement {
        GroupElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
        )
    }

    /// Graded-lexicographic comparison: by total degree, then by coordinates.
    pub fn grlex_key(&self) -> (u32, Vec<u32>) {
        (self.degree(), self.0.clone())
    }
}

impl GroupElement {
    pub fn zero(rank: usize) -> Self {
        GroupElement(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        GroupElement(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|c| -c).collect())
    }

    /// Positive part g ∨ 0.
    pub fn positive_part(&self) -> MonoidElement {
        MonoidElement(self.0.iter().map(|&c| c.max(0) as u32).collect())
    }

    /// Negative part (−g) ∨ 0, so that g = positive_part − negative_part.
    pub fn negative_part(&self) -> MonoidElement {
        MonoidElement(self.0.iter().map(|&c| (-c).max(0) as u32).collect())
    }

    /// Canonical reduced fraction g = a − b with a ∧ b = 0 componentwise.
    pub fn lattice_decompose(&self) -> (MonoidElement, MonoidElement) {
        (self.positive_part(), self.negative_part())
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All monoid elements of the given rank with total degree ≤ `max_degree`,
/// in graded-lexicographic order.
pub fn monoid_ball(rank: usize, max_degree: u32) -> Vec<MonoidElement> {
    let mut out = Vec::new();
    let mut coords = vec![0u32; rank];
    collect_degree_ball(rank, max_degree, 0, &mut coords, &mut out);
    out.sort_by_key(MonoidElement::grlex_key);
    out
}

fn collect_degree_ball(
    rank: usize,
    budget: u32,
    pos: usize,
    coords: &mut Vec<u32>,
    out: &mut Vec<MonoidElement>,
) {
    if pos == rank {
        out.push(MonoidElement(coords.clone()));
        return;
    }
    for c in 0..=budget {
        coords[pos] = c;
        collect_degree_ball(rank, budget - c, pos + 1, coords, out);
    }
    coords[pos] = 0;
}

/// All group elements of the given rank with every coordinate in `lo..=hi`,
/// ordered lexicographically.
pub fn group_box(rank: usize, lo: i64, hi: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let mut coords = vec![0i64; rank];
    collect_box(rank, lo, hi, 0, &mut coords, &mut out);
    out
}

fn collect_box(
    rank: usize,
    lo: i64,
    hi: i64,
    pos: usize,
    coords: &mut Vec<i64>,
    out: &mut Vec<GroupElement>,
) {
    if pos == rank {
        out.push(GroupElement(coords.clone()));
        return;
    }
    for c in lo..=hi {
        coords[pos] = c;
        collect_box(rank, lo, hi, pos + 1, coords, out);
    }
    coords[pos] = 0;
}
