//! Property tests for the algebraic laws of the core calculus.

use orbiteq::clopen::ClopenSet;
use orbiteq::monoid::GroupElement;
use orbiteq::point::TruncatedPoint;
use orbiteq::progressive::{maps_equal, ProgressiveMap};
use orbiteq::standard;
use orbiteq::word::{Symbol, Word};
use proptest::prelude::*;
use std::collections::BTreeMap;

/// A sliding-block self-map of the full 2-shift from a truth table over the
/// window words (always admissible since F2 allows every block).
fn sliding_from_bits(window: usize, bits: &[Symbol]) -> ProgressiveMap {
    let f2 = standard::f2();
    let mut rule = BTreeMap::new();
    for (i, w) in f2.admissible_words(window).into_iter().enumerate() {
        rule.insert(w, bits[i]);
    }
    ProgressiveMap::sliding_block(&f2, &f2, window, rule).expect("valid sliding map")
}

fn sliding_strategy() -> impl Strategy<Value = ProgressiveMap> {
    (1usize..=3)
        .prop_flat_map(|window| {
            proptest::collection::vec(0u16..2, 1 << window)
                .prop_map(move |bits| sliding_from_bits(window, &bits))
        })
        .no_shrink()
}

fn point_strategy() -> impl Strategy<Value = TruncatedPoint> {
    (
        proptest::collection::vec(0u16..2, 0..4),
        proptest::collection::vec(0u16..2, 1..4),
    )
        .prop_map(|(prefix, period)| {
            TruncatedPoint::eventually_periodic(Word(prefix), Word::empty(), Word(period))
        })
}

proptest! {
    /// Sliding evaluation of eventually periodic points agrees with
    /// symbol-by-symbol brute force for the first 50 symbols.
    #[test]
    fn sliding_apply_matches_brute_force(f in sliding_strategy(), x in point_strategy()) {
        let window = f.sliding_window().unwrap();
        let image = f.apply_point(&x, 50).unwrap();
        let got = image.truncate(50).unwrap();
        let mut expected = Vec::new();
        for i in 0..50 {
            let win: Word = (i..i + window).map(|j| x.symbol_at(j).unwrap()).collect();
            expected.push(f.apply_word(win.symbols(), 1).unwrap().symbols()[0]);
        }
        prop_assert_eq!(got.symbols(), &expected[..]);
    }

    /// Composition is associative on every jointly supported depth.
    #[test]
    fn composition_is_associative(
        f in sliding_strategy(),
        g in sliding_strategy(),
        h in sliding_strategy(),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert!(maps_equal(&left, &right, 5).unwrap().is_verified());
    }

    /// Equality at depth is reflexive and symmetric, with matching witnesses.
    #[test]
    fn maps_equal_symmetric_reflexive(f in sliding_strategy(), g in sliding_strategy()) {
        prop_assert!(maps_equal(&f, &f, 4).unwrap().is_verified());
        let ab = maps_equal(&f, &g, 4).unwrap();
        let ba = maps_equal(&g, &f, 4).unwrap();
        prop_assert_eq!(ab.status == orbiteq::progressive::EqStatus::VerifiedAtDepth,
                        ba.status == orbiteq::progressive::EqStatus::VerifiedAtDepth);
        prop_assert_eq!(ab.witness, ba.witness);
    }

    /// Refutation witnesses re-verify by direct application.
    #[test]
    fn refutation_witnesses_reverify(f in sliding_strategy(), g in sliding_strategy()) {
        let cert = maps_equal(&f, &g, 4).unwrap();
        if let Some(w) = cert.witness {
            let a = f.apply_word(w.symbols(), 4).unwrap();
            let b = g.apply_word(w.symbols(), 4).unwrap();
            prop_assert_ne!(a, b);
        }
    }

    /// Clopen normalization is idempotent and membership of determined
    /// points is invariant.
    #[test]
    fn clopen_normalization_is_canonical(
        words in proptest::collection::vec(proptest::collection::vec(0u16..2, 0..4), 0..5),
        x in point_strategy(),
    ) {
        let gm = standard::golden_mean();
        let admissible: Vec<Word> = words
            .into_iter()
            .map(Word)
            .filter(|w| gm.word_admissible(w.symbols()))
            .collect();
        prop_assume!(x.admissible_in(&gm));
        let c = ClopenSet::from_words(&gm, &admissible).unwrap();
        let again = ClopenSet::from_words(&gm, c.words()).unwrap();
        prop_assert_eq!(&c, &again);
        let before: Option<bool> = admissible
            .iter()
            .map(|w| x.truncate(w.len()).map(|t| t == *w).unwrap_or(false))
            .fold(None, |acc, hit| Some(acc.unwrap_or(false) || hit));
        if let Some(expected) = before {
            prop_assert_eq!(c.contains_point(&x), Some(expected));
            let refined = c.refine_to(&gm, c.depth() + 2);
            prop_assert_eq!(refined.contains_point(&x), Some(expected));
        }
    }

    /// Lattice decomposition: g = a − b, both parts non-negative, reduced in
    /// every coordinate.
    #[test]
    fn lattice_decomposition_properties(coords in proptest::collection::vec(-5i64..=5, 1..4)) {
        let g = GroupElement(coords);
        let (a, b) = g.lattice_decompose();
        prop_assert_eq!(a.sub(&b), g);
        for i in 0..a.rank() {
            prop_assert!(a.0[i] == 0 || b.0[i] == 0);
        }
    }

    /// Expanding a sliding map into depth tables always passes table
    /// validation (prefix consistency, totality, admissibility).
    #[test]
    fn expanded_tables_validate(f in sliding_strategy()) {
        let f2 = standard::f2();
        let mut moduli = Vec::new();
        let mut tables = Vec::new();
        for n in 1..=4usize {
            let m = f.modulus(n).unwrap();
            let mut t = BTreeMap::new();
            for w in f2.admissible_words(m) {
                t.insert(w.clone(), f.apply_word(w.symbols(), n).unwrap());
            }
            moduli.push(m);
            tables.push(t);
        }
        let table_map = ProgressiveMap::from_tables(&f2, &f2, moduli, tables).unwrap();
        prop_assert!(maps_equal(&table_map, &f, 4).unwrap().is_verified());
    }
}
