//! Locally constant maps into the acting monoids and groups, tabulated on
//! cylinders at a fixed depth.
//!
//! Continuity on a totally disconnected compact space means uniform local
//! constancy, so a table on depth-D cylinders is the canonical finite witness
//! of a continuous map. Tables loaded at mixed depths are normalized by
//! refining every entry to the common maximal depth.

use crate::error::{Error, Result};
use crate::monoid::{GroupElement, MonoidElement};
use crate::sft::Sft;
use crate::word::Word;
use std::collections::BTreeMap;

/// Table for maps P × X → S: (m, depth-D word of X) ↦ value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsoeTable {
    pub depth: usize,
    pub entries: BTreeMap<(MonoidElement, Word), MonoidElement>,
}

impl CsoeTable {
    pub fn new(depth: usize) -> CsoeTable {
        CsoeTable {
            depth,
            entries: BTreeMap::new(),
        }
    }

    /// Tabulate a function of (m, cylinder) over a degree ball.
    pub fn tabulate(
        sft: &Sft,
        depth: usize,
        ball: &[MonoidElement],
        f: impl Fn(&MonoidElement, &Word) -> MonoidElement,
    ) -> CsoeTable {
        let mut entries = BTreeMap::new();
        for m in ball {
            for w in sft.admissible_words(depth) {
                entries.insert((m.clone(), w.clone()), f(m, &w));
            }
        }
        CsoeTable { depth, entries }
    }

    pub fn lookup(&self, m: &MonoidElement, word: &Word) -> Result<&MonoidElement> {
        if word.len() < self.depth {
            return Err(Error::Undetermined {
                depth: self.depth,
                context: format!("table at depth {} queried with a shorter word", self.depth),
            });
        }
        self.entries
            .get(&(m.clone(), word.prefix(self.depth)))
            .ok_or_else(|| Error::TableIncomplete(format!("(m={m}, |w|={})", self.depth)))
    }

    /// Refine every cylinder to a deeper common depth.
    pub fn refined_to(&self, sft: &Sft, depth: usize) -> CsoeTable {
        if depth <= self.depth {
            return self.clone();
        }
        let mut entries = BTreeMap::new();
        for ((m, w), v) in &self.entries {
            for ext in sft.extensions(w, depth) {
                entries.insert((m.clone(), ext), v.clone());
            }
        }
        CsoeTable { depth, entries }
    }
}

/// Table for maps on related pairs: (m, n, word of X, word of Y) ↦ value.
/// The two word components may live at different depths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub depth_x: usize,
    pub depth_y: usize,
    pub entries: BTreeMap<(MonoidElement, MonoidElement, Word, Word), MonoidElement>,
}

impl PairTable {
    pub fn new(depth_x: usize, depth_y: usize) -> PairTable {
        PairTable {
            depth_x,
            depth_y,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(
        &mut self,
        m: MonoidElement,
        n: MonoidElement,
        wx: Word,
        wy: Word,
        value: MonoidElement,
    ) {
        self.entries.insert((m, n, wx, wy), value);
    }

    pub fn lookup(
        &self,
        m: &MonoidElement,
        n: &MonoidElement,
        wx: &Word,
        wy: &Word,
    ) -> Result<&MonoidElement> {
        if wx.len() < self.depth_x || wy.len() < self.depth_y {
            return Err(Error::Undetermined {
                depth: self.depth_x.max(self.depth_y),
                context: "pair table queried with shorter words".into(),
            });
        }
        self.entries
            .get(&(
                m.clone(),
                n.clone(),
                wx.prefix(self.depth_x),
                wy.prefix(self.depth_y),
            ))
            .ok_or_else(|| Error::TableIncomplete(format!("(m={m}, n={n}, pair entry)")))
    }
}

/// Table for maps X → ℕ₀ on cylinders (the path-counting exponents of
/// one-sided shift orbit equivalence).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordTable {
    pub depth: usize,
    pub entries: BTreeMap<Word, u32>,
}

impl WordTable {
    pub fn constant(sft: &Sft, depth: usize, value: u32) -> WordTable {
        let entries = sft
            .admissible_words(depth)
            .into_iter()
            .map(|w| (w, value))
            .collect();
        WordTable { depth, entries }
    }

    pub fn lookup(&self, word: &Word) -> Result<u32> {
        if word.len() < self.depth {
            return Err(Error::Undetermined {
                depth: self.depth,
                context: "word table queried with a shorter word".into(),
            });
        }
        self.entries
            .get(&word.prefix(self.depth))
            .copied()
            .ok_or_else(|| Error::TableIncomplete(format!("word table at depth {}", self.depth)))
    }

    pub fn refined_to(&self, sft: &Sft, depth: usize) -> WordTable {
        if depth <= self.depth {
            return self.clone();
        }
        let mut entries = BTreeMap::new();
        for (w, v) in &self.entries {
            for ext in sft.extensions(w, depth) {
                entries.insert(ext, *v);
            }
        }
        WordTable { depth, entries }
    }

    /// Totality over the admissible words at the table depth.
    pub fn is_total_on(&self, sft: &Sft) -> bool {
        sft.admissible_words(self.depth)
            .iter()
            .all(|w| self.entries.contains_key(w))
    }

    /// Canonical reduced form: collapse to the minimal depth at which the
    /// map is constant on cylinders.
    pub fn reduced(&self, sft: &Sft) -> WordTable {
        let mut cur = self.clone();
        'outer: while cur.depth > 0 {
            let mut parent: BTreeMap<Word, u32> = BTreeMap::new();
            for w in sft.admissible_words(cur.depth - 1) {
                let mut value: Option<u32> = None;
                for ext in sft.extensions(&w, cur.depth) {
                    match (value, cur.entries.get(&ext)) {
                        (_, None) => break 'outer,
                        (None, Some(v)) => value = Some(*v),
                        (Some(a), Some(v)) if a == *v => {}
                        _ => break 'outer,
                    }
                }
                parent.insert(w, value.expect("pruned graphs have extensions"));
            }
            cur = WordTable {
                depth: cur.depth - 1,
                entries: parent,
            };
        }
        cur
    }
}

/// Table for the group-action form: (m, n, word) ↦ value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTable {
    pub depth: usize,
    pub entries: BTreeMap<(MonoidElement, MonoidElement, Word), MonoidElement>,
}

impl TripleTable {
    pub fn new(depth: usize) -> TripleTable {
        TripleTable {
            depth,
            entries: BTreeMap::new(),
        }
    }

    pub fn lookup(
        &self,
        m: &MonoidElement,
        n: &MonoidElement,
        word: &Word,
    ) -> Result<&MonoidElement> {
        if word.len() < self.depth {
            return Err(Error::Undetermined {
                depth: self.depth,
                context: "triple table queried with a shorter word".into(),
            });
        }
        self.entries
            .get(&(m.clone(), n.clone(), word.prefix(self.depth)))
            .ok_or_else(|| Error::TableIncomplete(format!("(m={m}, n={n}, word entry)")))
    }
}

/// Table for group-valued cocycle data on cylinders: (g, word) ↦ value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupWordTable {
    pub depth: usize,
    pub entries: BTreeMap<(GroupElement, Word), GroupElement>,
}

impl GroupWordTable {
    pub fn new(depth: usize) -> GroupWordTable {
        GroupWordTable {
            depth,
            entries: BTreeMap::new(),
        }
    }

    pub fn lookup(&self, g: &GroupElement, word: &Word) -> Result<&GroupElement> {
        if word.len() < self.depth {
            return Err(Error::Undetermined {
                depth: self.depth,
                context: "group table queried with a shorter word".into(),
            });
        }
        self.entries
            .get(&(g.clone(), word.prefix(self.depth)))
            .ok_or_else(|| Error::TableIncomplete(format!("(g={g}, word entry)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::monoid_ball;
    use crate::standard;

    #[test]
    fn refinement_preserves_lookup() {
        let gm = standard::golden_mean();
        let ball = monoid_ball(1, 2);
        let t = CsoeTable::tabulate(&gm, 1, &ball, |m, _| m.clone());
        let r = t.refined_to(&gm, 3);
        assert_eq!(r.depth, 3);
        for w in gm.admissible_words(3) {
            let m = &ball[2];
            assert_eq!(t.lookup(m, &w).unwrap(), r.lookup(m, &w).unwrap());
        }
    }

    #[test]
    fn shallow_queries_are_undetermined() {
        let gm = standard::golden_mean();
        let t = WordTable::constant(&gm, 2, 7);
        assert!(t.lookup(&Word(vec![0])).is_err());
        assert_eq!(t.lookup(&Word(vec![0, 0, 1])).unwrap(), 7);
    }
}
