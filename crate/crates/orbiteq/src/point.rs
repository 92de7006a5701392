//! Exactly representable points of a shift space.
//!
//! A point is a finite truncation, optionally completed by an eventually
//! periodic tail. With a tail the point is fully determined and queries at
//! any depth are exact; without one, queries beyond the truncation report
//! "undetermined".

use crate::error::{Error, Result};
use crate::sft::Sft;
use crate::word::{Symbol, Word};

/// Eventually periodic continuation: `preperiod · period · period · …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tail {
    pub preperiod: Word,
    pub period: Word,
}

/// A point known on a finite prefix, exact when a tail is present.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedPoint {
    prefix: Word,
    tail: Option<Tail>,
}

impl TruncatedPoint {
    /// A point known only on the given prefix.
    pub fn finite(prefix: Word) -> Self {
        TruncatedPoint { prefix, tail: None }
    }

    /// The fully periodic point `period^∞`.
    pub fn periodic(period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        TruncatedPoint {
            prefix: Word::empty(),
            tail: Some(Tail {
                preperiod: Word::empty(),
                period,
            }),
        }
    }

    /// The point `prefix · preperiod · period^∞`.
    pub fn eventually_periodic(prefix: Word, preperiod: Word, period: Word) -> Self {
        assert!(!period.is_empty(), "period must be nonempty");
        TruncatedPoint {
            prefix,
            tail: Some(Tail { preperiod, period }),
        }
    }

    /// Extend a word to a concrete point with the deterministic canonical
    /// tail of the space.
    pub fn canonical_in_cylinder(sft: &Sft, prefix: &Word) -> Self {
        let (pre, per) = sft.canonical_tail_from(prefix.last());
        TruncatedPoint::eventually_periodic(prefix.clone(), pre, per)
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    pub fn has_tail(&self) -> bool {
        self.tail.is_some()
    }

    /// Depth to which the point is determined; `None` means every depth.
    pub fn determined_len(&self) -> Option<usize> {
        match self.tail {
            Some(_) => None,
            None => Some(self.prefix.len()),
        }
    }

    pub fn is_determined_to(&self, depth: usize) -> bool {
        match self.determined_len() {
            None => true,
            Some(l) => l >= depth,
        }
    }

    pub fn symbol_at(&self, i: usize) -> Option<Symbol> {
        if i < self.prefix.len() {
            return Some(self.prefix.symbols()[i]);
        }
        let t = self.tail.as_ref()?;
        let j = i - self.prefix.len();
        if j < t.preperiod.len() {
            Some(t.preperiod.symbols()[j])
        } else {
            let k = (j - t.preperiod.len()) % t.period.len();
            Some(t.period.symbols()[k])
        }
    }

    /// The first `depth` symbols, or `Undetermined`.
    pub fn truncate(&self, depth: usize) -> Result<Word> {
        let mut v = Vec::with_capacity(depth);
        for i in 0..depth {
            match self.symbol_at(i) {
                Some(s) => v.push(s),
                None => {
                    return Err(Error::Undetermined {
                        depth,
                        context: format!("point determined only to depth {}", self.prefix.len()),
                    })
                }
            }
        }
        Ok(Word(v))
    }

    /// Drop the first `n` symbols.
    pub fn shift(&self, n: usize) -> Result<TruncatedPoint> {
        match &self.tail {
            None => {
                if n > self.prefix.len() {
                    return Err(Error::Undetermined {
                        depth: n,
                        context: "cannot shift past the known prefix".into(),
                    });
                }
                Ok(TruncatedPoint::finite(self.prefix.suffix_from(n)))
            }
            Some(t) => {
                let known = self.prefix.len() + t.preperiod.len();
                if n <= known {
                    let mut rest: Vec<Symbol> = Vec::new();
                    rest.extend_from_slice(self.prefix.symbols());
                    rest.extend_from_slice(t.preperiod.symbols());
                    let rest = Word(rest.split_off(n));
                    Ok(TruncatedPoint::eventually_periodic(
                        Word::empty(),
                        rest,
                        t.period.clone(),
                    ))
                } else {
                    let k = (n - known) % t.period.len();
                    let mut rot = t.period.symbols()[k..].to_vec();
                    rot.extend_from_slice(&t.period.symbols()[..k]);
                    Ok(TruncatedPoint::periodic(Word(rot)))
                }
            }
        }
    }

    /// Prepend a word.
    pub fn prepend(&self, w: &Word) -> TruncatedPoint {
        TruncatedPoint {
            prefix: w.concat(&self.prefix),
            tail: self.tail.clone(),
        }
    }

    /// Compare the first `depth` symbols. `Some(false)` needs a genuine
    /// disagreement at a determined position; `None` means not enough data.
    pub fn eq_at_depth(&self, other: &TruncatedPoint, depth: usize) -> Option<bool> {
        for i in 0..depth {
            match (self.symbol_at(i), other.symbol_at(i)) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return Some(false);
                    }
                }
                _ => return None,
            }
        }
        Some(true)
    }

    /// Exact equality of the underlying points, when decidable: two points
    /// with tails agree iff they agree up to the common preperiod plus the
    /// lcm of the periods.
    pub fn eq_exact(&self, other: &TruncatedPoint) -> Option<bool> {
        match (&self.tail, &other.tail) {
            (Some(t1), Some(t2)) => {
                let pre = (self.prefix.len() + t1.preperiod.len())
                    .max(other.prefix.len() + t2.preperiod.len());
                let bound = pre + lcm(t1.period.len(), t2.period.len());
                for i in 0..bound {
                    if self.symbol_at(i) != other.symbol_at(i) {
                        return Some(false);
                    }
                }
                Some(true)
            }
            _ => {
                let known = self
                    .determined_len()
                    .unwrap_or(usize::MAX)
                    .min(other.determined_len().unwrap_or(usize::MAX));
                for i in 0..known {
                    if self.symbol_at(i) != other.symbol_at(i) {
                        return Some(false);
                    }
                }
                None
            }
        }
    }

    /// Check the whole known sequence against the allowed 2-blocks,
    /// including the wrap of the period onto itself.
    pub fn admissible_in(&self, sft: &Sft) -> bool {
        let mut chain: Vec<Symbol> = Vec::new();
        chain.extend_from_slice(self.prefix.symbols());
        if let Some(t) = &self.tail {
            chain.extend_from_slice(t.preperiod.symbols());
            chain.extend_from_slice(t.period.symbols());
            chain.extend_from_slice(t.period.symbols());
        }
        sft.word_admissible(&chain)
    }

    /// Render as `prefix`, `prefix(u v^inf)` or `(v^inf)` style text.
    pub fn display(&self, sft: &Sft) -> String {
        let p = sft.format_word(&self.prefix);
        match &self.tail {
            None => format!("{p}…?"),
            Some(t) => {
                let u = sft.format_word(&t.preperiod);
                let v = sft.format_word(&t.period);
                if u.is_empty() {
                    format!("{p}({v})^inf")
                } else {
                    format!("{p}{u}({v})^inf")
                }
            }
        }
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sft::validate_sft;

    #[test]
    fn symbols_of_eventually_periodic_point() {
        // 01 then 1 then (10)^inf = 011101010…
        let x = TruncatedPoint::eventually_periodic(
            Word(vec![0, 1]),
            Word(vec![1]),
            Word(vec![1, 0]),
        );
        let got: Vec<Symbol> = (0..8).map(|i| x.symbol_at(i).unwrap()).collect();
        assert_eq!(got, vec![0, 1, 1, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn shift_rotates_period() {
        let x = TruncatedPoint::eventually_periodic(Word(vec![0]), Word::empty(), Word(vec![0, 1]));
        let y = x.shift(2).unwrap(); // drops "0 0", lands inside the period
        let got: Vec<Symbol> = (0..4).map(|i| y.symbol_at(i).unwrap()).collect();
        assert_eq!(got, vec![1, 0, 1, 0]);
    }

    #[test]
    fn finite_point_is_undetermined_past_prefix() {
        let x = TruncatedPoint::finite(Word(vec![0, 1]));
        assert_eq!(x.symbol_at(1), Some(1));
        assert_eq!(x.symbol_at(2), None);
        assert!(x.truncate(3).is_err());
        assert!(x.eq_at_depth(&x, 3).is_none());
    }

    #[test]
    fn exact_equality_of_different_presentations() {
        // (01)^inf written two ways.
        let a = TruncatedPoint::periodic(Word(vec![0, 1]));
        let b = TruncatedPoint::eventually_periodic(
            Word(vec![0, 1]),
            Word::empty(),
            Word(vec![0, 1, 0, 1]),
        );
        assert_eq!(a.eq_exact(&b), Some(true));
        let c = TruncatedPoint::periodic(Word(vec![1, 0]));
        assert_eq!(a.eq_exact(&c), Some(false));
    }

    #[test]
    fn admissibility_checks_period_wrap() {
        let gm = validate_sft("GM", &["0", "1"], &["11"]).unwrap();
        let ok = TruncatedPoint::periodic(Word(vec![0, 1]));
        assert!(ok.admissible_in(&gm));
        // period "1" wraps onto the forbidden block 11
        let bad = TruncatedPoint::periodic(Word(vec![1]));
        assert!(!bad.admissible_in(&gm));
    }
}
