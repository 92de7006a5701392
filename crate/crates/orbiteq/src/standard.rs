//! Canonical example systems: the full 2-shift, the golden-mean shift, the
//! 2-block recoding, the binary odometer, and a few deliberately defective
//! actions for exercising the checkers.

use crate::action::MonoidAction;
use crate::error::{Error, Result};
use crate::progressive::{ProgressiveHomeo, ProgressiveMap};
use crate::sft::{validate_sft, Sft};
use crate::word::{Symbol, Word};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The full 2-shift on symbols 0, 1.
pub fn f2() -> Arc<Sft> {
    Arc::new(validate_sft("F2", &["0", "1"], &[]).expect("F2 is valid"))
}

/// The golden-mean shift: 0, 1 with 11 forbidden.
pub fn golden_mean() -> Arc<Sft> {
    Arc::new(validate_sft("GM", &["0", "1"], &["11"]).expect("GM is valid"))
}

/// The 2-block presentation of the full 2-shift: symbols ab with
/// (ab)(cd) allowed iff b = c.
pub fn two_block_f2() -> Arc<Sft> {
    let labels = ["00", "01", "10", "11"];
    let mut forbidden = Vec::new();
    for a in labels {
        for b in labels {
            if a.chars().nth(1) != b.chars().next() {
                forbidden.push(format!("{a}.{b}"));
            }
        }
    }
    let fb: Vec<&str> = forbidden.iter().map(String::as_str).collect();
    Arc::new(validate_sft("F2x2", &labels, &fb).expect("two-block F2 is valid"))
}

/// The 2-block conjugacy Φ2: F2 → F2x2 with its inverse (read the first
/// letter of each block).
pub fn phi2() -> (Arc<Sft>, ProgressiveHomeo) {
    let dom = f2();
    let cod = two_block_f2();
    let mut fwd_rule = BTreeMap::new();
    for a in 0..2u16 {
        for b in 0..2u16 {
            let label = format!("{a}{b}");
            let s = cod
                .labels()
                .iter()
                .position(|l| *l == label)
                .expect("block symbol") as Symbol;
            fwd_rule.insert(Word(vec![a, b]), s);
        }
    }
    let forward = ProgressiveMap::sliding_block(&dom, &cod, 2, fwd_rule).expect("phi2 forward");
    let mut inv_rule = BTreeMap::new();
    for (i, label) in cod.labels().iter().enumerate() {
        let first: String = label.chars().take(1).collect();
        let s = first.parse::<u16>().expect("binary label");
        inv_rule.insert(Word(vec![i as Symbol]), s);
    }
    let inverse = ProgressiveMap::sliding_block(&cod, &dom, 1, inv_rule).expect("phi2 inverse");
    let homeo = ProgressiveHomeo::new(forward, inverse).expect("phi2 homeo");
    (cod, homeo)
}

/// The rank-1 shift action on a space.
pub fn shift_action(sft: &Arc<Sft>) -> MonoidAction {
    MonoidAction::new(
        &format!("shift-{}", sft.name()),
        Arc::clone(sft),
        vec![ProgressiveMap::shift(sft)],
        None,
    )
    .expect("shift action")
}

/// Rank-2 action on F2 whose generators both act as the shift; it violates
/// essential freeness at the pair ((1,0),(0,1)).
pub fn duplicated_generator_action() -> MonoidAction {
    let space = f2();
    MonoidAction::new(
        "dup-shift",
        Arc::clone(&space),
        vec![ProgressiveMap::shift(&space), ProgressiveMap::shift(&space)],
        None,
    )
    .expect("duplicated action")
}

/// Rank-2 action on F2 with σ and the Φ2-conjugated shift (computed as an
/// honest triple composite).
pub fn conjugated_pair_action() -> MonoidAction {
    let space = f2();
    let (cod, phi) = phi2();
    let sigma2b = ProgressiveMap::shift(&cod);
    let conj = phi
        .inverse
        .compose(&sigma2b)
        .and_then(|m| m.compose(&phi.forward))
        .expect("conjugated shift");
    MonoidAction::new(
        "sigma-and-conjugate",
        Arc::clone(&space),
        vec![ProgressiveMap::shift(&space), conj],
        None,
    )
    .expect("conjugated pair action")
}

/// Rank-2 action pairing σ with the first-symbol flip; the generators do not
/// commute, so the action axioms fail.
pub fn broken_commutativity_action() -> MonoidAction {
    let space = f2();
    let flip = flip_first_map(&space, 6).expect("flip map");
    MonoidAction::new(
        "broken-commutativity",
        Arc::clone(&space),
        vec![ProgressiveMap::shift(&space), flip],
        None,
    )
    .expect("broken action")
}

/// Rank-1 action on F2 generated by the constant-symbol collapse; the
/// generator is not surjective.
pub fn collapse_action() -> MonoidAction {
    let space = f2();
    let mut rule = BTreeMap::new();
    rule.insert(Word(vec![0]), 0);
    rule.insert(Word(vec![1]), 0);
    let collapse = ProgressiveMap::sliding_block(&space, &space, 1, rule).expect("collapse map");
    MonoidAction::new("collapse", Arc::clone(&space), vec![collapse], None)
        .expect("collapse action")
}

fn binary_space_check(sft: &Sft) -> Result<()> {
    if sft.num_symbols() != 2 || !sft.allowed(0, 0) || !sft.allowed(1, 1) || !sft.allowed(0, 1) {
        return Err(Error::DomainMismatch(
            "odometer tables need the full 2-shift".into(),
        ));
    }
    Ok(())
}

/// Binary adding machine x ↦ x + 1 (least significant symbol first),
/// tabulated with modulus n up to `n_max`.
pub fn odometer_map(sft: &Arc<Sft>, n_max: usize) -> Result<ProgressiveMap> {
    binary_space_check(sft)?;
    tabulate_bitwise(sft, n_max, |w| {
        let mut out = Vec::with_capacity(w.len());
        let mut carry = 1u16;
        for &b in w {
            out.push(b ^ carry);
            carry &= b;
        }
        out
    })
}

/// Inverse of the adding machine, x ↦ x − 1.
pub fn odometer_inverse(sft: &Arc<Sft>, n_max: usize) -> Result<ProgressiveMap> {
    binary_space_check(sft)?;
    tabulate_bitwise(sft, n_max, |w| {
        let mut out = Vec::with_capacity(w.len());
        let mut borrow = 1u16;
        for &b in w {
            out.push(b ^ borrow);
            borrow &= 1 - b;
        }
        out
    })
}

/// Flip of the first symbol; an involutive homeomorphism of F2 that is not
/// shift-commuting.
pub fn flip_first_map(sft: &Arc<Sft>, n_max: usize) -> Result<ProgressiveMap> {
    binary_space_check(sft)?;
    tabulate_bitwise(sft, n_max, |w| {
        let mut out = w.to_vec();
        out[0] = 1 - out[0];
        out
    })
}

fn tabulate_bitwise(
    sft: &Arc<Sft>,
    n_max: usize,
    f: impl Fn(&[Symbol]) -> Vec<Symbol>,
) -> Result<ProgressiveMap> {
    let mut moduli = Vec::with_capacity(n_max);
    let mut tables = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut t = BTreeMap::new();
        for w in sft.admissible_words(n) {
            t.insert(w.clone(), Word(f(w.symbols())));
        }
        moduli.push(n);
        tables.push(t);
    }
    ProgressiveMap::from_tables(sft, sft, moduli, tables)
}

/// The rank-1 odometer action of the non-negative integers on F2 by
/// homeomorphisms, with tabulated inverses.
pub fn odometer_action(n_max: usize) -> Result<MonoidAction> {
    let space = f2();
    let add = odometer_map(&space, n_max)?;
    let sub = odometer_inverse(&space, n_max)?;
    MonoidAction::new("odometer", space, vec![add], Some(vec![sub]))
}
