//! Clopen subsets of a shift space as finite unions of cylinders.
//!
//! The normal form keeps every cylinder at one common depth, sorted and
//! deduplicated, so set equality at a common depth is syntactic equality.

use crate::error::{Error, Result};
use crate::point::TruncatedPoint;
use crate::sft::Sft;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopenSet {
    depth: usize,
    words: Vec<Word>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet {
            depth: 0,
            words: Vec::new(),
        }
    }

    /// The whole space, as the depth-0 cylinder of the empty word.
    pub fn whole_space() -> Self {
        ClopenSet {
            depth: 0,
            words: vec![Word::empty()],
        }
    }

    pub fn cylinder(word: Word) -> Self {
        ClopenSet {
            depth: word.len(),
            words: vec![word],
        }
    }

    /// Normalize a family of cylinders of mixed depths: refine everything to
    /// the maximum depth, sort, deduplicate.
    pub fn from_words(sft: &Sft, words: &[Word]) -> Result<ClopenSet> {
        for w in words {
            if !sft.word_admissible(w.symbols()) {
                return Err(Error::BadSymbol(format!(
                    "cylinder word '{}' is not admissible",
                    sft.format_word(w)
                )));
            }
        }
        let depth = words.iter().map(Word::len).max().unwrap_or(0);
        let mut out = Vec::new();
        for w in words {
            out.extend(sft.extensions(w, depth));
        }
        out.sort();
        out.dedup();
        Ok(ClopenSet { depth, words: out })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Re-express at a deeper common depth.
    pub fn refine_to(&self, sft: &Sft, depth: usize) -> ClopenSet {
        if depth <= self.depth {
            return self.clone();
        }
        let mut out = Vec::new();
        for w in &self.words {
            out.extend(sft.extensions(w, depth));
        }
        out.sort();
        out.dedup();
        ClopenSet { depth, words: out }
    }

    /// Set equality, decided at the larger of the two depths.
    pub fn eq_as_sets(&self, sft: &Sft, other: &ClopenSet) -> bool {
        let d = self.depth.max(other.depth);
        self.refine_to(sft, d).words == other.refine_to(sft, d).words
    }

    pub fn union(&self, sft: &Sft, other: &ClopenSet) -> ClopenSet {
        let d = self.depth.max(other.depth);
        let mut a = self.refine_to(sft, d).words;
        a.extend(other.refine_to(sft, d).words);
        a.sort();
        a.dedup();
        ClopenSet { depth: d, words: a }
    }

    pub fn intersect(&self, sft: &Sft, other: &ClopenSet) -> ClopenSet {
        let d = self.depth.max(other.depth);
        let a = self.refine_to(sft, d);
        let b = other.refine_to(sft, d);
        let words = a
            .words
            .into_iter()
            .filter(|w| b.words.binary_search(w).is_ok())
            .collect();
        ClopenSet { depth: d, words }
    }

    /// Membership of a point; `None` when the point is not determined deep
    /// enough to decide.
    pub fn contains_point(&self, x: &TruncatedPoint) -> Option<bool> {
        let t = x.truncate(self.depth).ok()?;
        Some(self.words.binary_search(&t).is_ok())
    }

    /// Whether the cylinder of `word` is entirely inside this set (requires
    /// `word` at least as deep as the set).
    pub fn contains_cylinder(&self, word: &Word) -> bool {
        if word.len() < self.depth {
            return false;
        }
        self.words.binary_search(&word.prefix(self.depth)).is_ok()
    }
}
