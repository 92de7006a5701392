//! Orbit equivalence of one-sided shift spaces in the path-counting form:
//! continuous exponent maps k, l on X and k′, l′ on Y with
//! σ_Y^{k(x)}(φ(σ_X(x))) = σ_Y^{l(x)}(φ(x)), and the two-way conversion to
//! the relation form for the rank-1 shift actions.

use super::csoe::eq_check_on;
use super::tables::{PairTable, WordTable};
use super::{degree_pairs, fibered_pairs, CoeData};
use crate::action::MonoidAction;
use crate::error::{Error, Result};
use crate::monoid::MonoidElement;
use crate::point::TruncatedPoint;
use crate::progressive::{maps_equal_on, ProgressiveHomeo};
use crate::report::Report;
use crate::word::Word;

/// Path-counting orbit equivalence data between two shift spaces.
#[derive(Clone, Debug)]
pub struct ShiftCoeData {
    pub phi: ProgressiveHomeo,
    pub k: WordTable,
    pub l: WordTable,
    pub kp: WordTable,
    pub lp: WordTable,
}

fn require_unit_shift(act: &MonoidAction, side: &str) -> Result<()> {
    if act.rank() == 1 && act.shift_powers() == Some(vec![1]) {
        Ok(())
    } else {
        Err(Error::NotRankOne(format!(
            "the {side} action must be the rank-1 shift action"
        )))
    }
}

/// Verify both path-counting equations cylinder by cylinder.
pub fn verify_shift_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &ShiftCoeData,
    depth: usize,
) -> Result<Report> {
    require_unit_shift(act_x, "domain")?;
    require_unit_shift(act_y, "codomain")?;
    let mut report = Report::new("shift_coe");
    let x_space = act_x.space();
    let y_space = act_y.space();

    let dx = data.k.depth.max(data.l.depth);
    for w in x_space.admissible_words(dx) {
        let s = data.k.lookup(&w)?;
        let t = data.l.lookup(&w)?;
        let lhs = act_y
            .action_map(&MonoidElement(vec![s]))?
            .compose(&data.phi.forward)?
            .compose(&act_x.action_map(&MonoidElement(vec![1]))?)?;
        let rhs = act_y
            .action_map(&MonoidElement(vec![t]))?
            .compose(&data.phi.forward)?;
        report.push(eq_check_on(
            format!("path_count_x[w={}]", x_space.format_word(&w)),
            &lhs,
            &rhs,
            depth,
            &w,
            x_space,
        )?);
    }

    let dy = data.kp.depth.max(data.lp.depth);
    for w in y_space.admissible_words(dy) {
        let s = data.kp.lookup(&w)?;
        let t = data.lp.lookup(&w)?;
        let lhs = act_x
            .action_map(&MonoidElement(vec![s]))?
            .compose(&data.phi.inverse)?
            .compose(&act_y.action_map(&MonoidElement(vec![1]))?)?;
        let rhs = act_x
            .action_map(&MonoidElement(vec![t]))?
            .compose(&data.phi.inverse)?;
        report.push(eq_check_on(
            format!("path_count_y[w={}]", y_space.format_word(&w)),
            &lhs,
            &rhs,
            depth,
            &w,
            y_space,
        )?);
    }

    Ok(report)
}

/// Iterated exponent k^n(x) = Σ_{i<n} k(σ^i(x)), read off a word of length
/// at least depth(k) + n − 1.
fn iterated_exponent(table: &WordTable, n: u32, word: &Word) -> Result<u32> {
    let mut sum = 0u32;
    for i in 0..n as usize {
        sum += table.lookup(&word.suffix_from(i))?;
    }
    Ok(sum)
}

/// Convert path-counting data to relation data:
/// a1(m, n, x, y) = l^m(x) + k^n(y) and b1(m, n, x, y) = k^m(x) + l^n(y),
/// symmetrically on the other side. The path-counting equations are checked
/// first and the conversion is refused with a concrete witness point when
/// they fail.
pub fn shift_coe_to_semigroup(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &ShiftCoeData,
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<CoeData> {
    require_unit_shift(act_x, "domain")?;
    require_unit_shift(act_y, "codomain")?;
    refuse_if_refuted(act_x, act_y, data, depth)?;

    let dx = data.k.depth.max(data.l.depth);
    let depth_x = (dx + degree_bound as usize).saturating_sub(1).max(1).max(dx);
    let mut a1 = PairTable::new(depth_x, depth_x);
    let mut b1 = PairTable::new(depth_x, depth_x);
    for (m, n) in degree_pairs(1, degree_bound) {
        let set = fibered_pairs(act_x, &m, &n, depth_x, depth_x, depth, period_bound)?;
        for (wx, wy) in set.pairs {
            let lm = iterated_exponent(&data.l, m.0[0], &wx)?;
            let kn = iterated_exponent(&data.k, n.0[0], &wy)?;
            let km = iterated_exponent(&data.k, m.0[0], &wx)?;
            let ln = iterated_exponent(&data.l, n.0[0], &wy)?;
            a1.insert(
                m.clone(),
                n.clone(),
                wx.clone(),
                wy.clone(),
                MonoidElement(vec![lm + kn]),
            );
            b1.insert(m.clone(), n.clone(), wx, wy, MonoidElement(vec![km + ln]));
        }
    }

    let dy = data.kp.depth.max(data.lp.depth);
    let depth_y = (dy + degree_bound as usize).saturating_sub(1).max(1).max(dy);
    let mut a2 = PairTable::new(depth_y, depth_y);
    let mut b2 = PairTable::new(depth_y, depth_y);
    for (s, t) in degree_pairs(1, degree_bound) {
        let set = fibered_pairs(act_y, &s, &t, depth_y, depth_y, depth, period_bound)?;
        for (wu, wv) in set.pairs {
            let ls = iterated_exponent(&data.lp, s.0[0], &wu)?;
            let kt = iterated_exponent(&data.kp, t.0[0], &wv)?;
            let ks = iterated_exponent(&data.kp, s.0[0], &wu)?;
            let lt = iterated_exponent(&data.lp, t.0[0], &wv)?;
            a2.insert(
                s.clone(),
                t.clone(),
                wu.clone(),
                wv.clone(),
                MonoidElement(vec![ls + kt]),
            );
            b2.insert(s.clone(), t.clone(), wu, wv, MonoidElement(vec![ks + lt]));
        }
    }

    Ok(CoeData {
        phi: data.phi.clone(),
        a1,
        b1,
        a2,
        b2,
        degree_bound,
    })
}

fn refuse_if_refuted(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &ShiftCoeData,
    depth: usize,
) -> Result<()> {
    let x_space = act_x.space();
    let dx = data.k.depth.max(data.l.depth);
    for w in x_space.admissible_words(dx) {
        let s = data.k.lookup(&w)?;
        let t = data.l.lookup(&w)?;
        let lhs = act_y
            .action_map(&MonoidElement(vec![s]))?
            .compose(&data.phi.forward)?
            .compose(&act_x.action_map(&MonoidElement(vec![1]))?)?;
        let rhs = act_y
            .action_map(&MonoidElement(vec![t]))?
            .compose(&data.phi.forward)?;
        let d = depth.min(lhs.max_depth()).min(rhs.max_depth());
        let cert = maps_equal_on(&lhs, &rhs, d, &w)?;
        if let Some(witness) = cert.witness {
            let point = TruncatedPoint::canonical_in_cylinder(x_space, &witness);
            return Err(Error::VerificationFailed(format!(
                "path-count equation fails at the point {}",
                point.display(x_space)
            )));
        }
    }
    Ok(())
}

/// Read path-counting data back off the degree-(1,0) entries:
/// k(x) = b1(1, 0, x, σ(x)) and l(x) = a1(1, 0, x, σ(x)), symmetrically for
/// the primed maps.
pub fn semigroup_to_shift_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
) -> Result<ShiftCoeData> {
    require_unit_shift(act_x, "domain")?;
    require_unit_shift(act_y, "codomain")?;
    let one = MonoidElement(vec![1]);
    let zero = MonoidElement(vec![0]);

    let x_space = act_x.space();
    let dk = data.a1.depth_x.max(data.a1.depth_y + 1);
    let mut k = WordTable {
        depth: dk,
        entries: Default::default(),
    };
    let mut l = WordTable {
        depth: dk,
        entries: Default::default(),
    };
    for u in x_space.admissible_words(dk) {
        let shifted = u.suffix_from(1);
        k.entries.insert(
            u.clone(),
            data.b1.lookup(&one, &zero, &u, &shifted)?.0[0],
        );
        l.entries.insert(
            u.clone(),
            data.a1.lookup(&one, &zero, &u, &shifted)?.0[0],
        );
    }

    let y_space = act_y.space();
    let dkp = data.a2.depth_x.max(data.a2.depth_y + 1);
    let mut kp = WordTable {
        depth: dkp,
        entries: Default::default(),
    };
    let mut lp = WordTable {
        depth: dkp,
        entries: Default::default(),
    };
    for u in y_space.admissible_words(dkp) {
        let shifted = u.suffix_from(1);
        kp.entries.insert(
            u.clone(),
            data.b2.lookup(&one, &zero, &u, &shifted)?.0[0],
        );
        lp.entries.insert(
            u.clone(),
            data.a2.lookup(&one, &zero, &u, &shifted)?.0[0],
        );
    }

    Ok(ShiftCoeData {
        phi: data.phi.clone(),
        k: k.reduced(x_space),
        l: l.reduced(x_space),
        kp: kp.reduced(y_space),
        lp: lp.reduced(y_space),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::progressive::ProgressiveMap;
    use crate::standard;

    pub(crate) fn identity_shift_coe() -> (MonoidAction, MonoidAction, ShiftCoeData) {
        let f2 = standard::f2();
        let act_x = standard::shift_action(&f2);
        let act_y = standard::shift_action(&f2);
        let id = ProgressiveMap::identity(&f2);
        let phi = ProgressiveHomeo::new(id.clone(), id).unwrap();
        let data = ShiftCoeData {
            phi,
            k: WordTable::constant(&f2, 0, 0),
            l: WordTable::constant(&f2, 0, 1),
            kp: WordTable::constant(&f2, 0, 0),
            lp: WordTable::constant(&f2, 0, 1),
        };
        (act_x, act_y, data)
    }

    #[test]
    fn identity_data_verifies() {
        let (act_x, act_y, data) = identity_shift_coe();
        let report = verify_shift_coe(&act_x, &act_y, &data, 5).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn identity_conversion_gives_degree_tables() {
        let (act_x, act_y, data) = identity_shift_coe();
        let coe = shift_coe_to_semigroup(&act_x, &act_y, &data, 3, 5, 4).unwrap();
        // a1(m, n, ·, ·) = l^m + k^n = m and b1 = k^m + l^n = n.
        for ((m, _, _, _), v) in &coe.a1.entries {
            assert_eq!(v, m);
        }
        for ((_, n, _, _), v) in &coe.b1.entries {
            assert_eq!(v, n);
        }
        let report = super::super::verify_coe(&act_x, &act_y, &coe, 5, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn wrong_exponents_are_refused_with_a_point() {
        let (act_x, act_y, mut data) = identity_shift_coe();
        data.k = WordTable::constant(act_x.space(), 0, 1); // k ≡ 1, l ≡ 1, φ = id
        let err = shift_coe_to_semigroup(&act_x, &act_y, &data, 2, 5, 4).unwrap_err();
        match err {
            Error::VerificationFailed(msg) => assert!(msg.contains("point")),
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_recovers_exponent_tables() {
        let (act_x, act_y, data) = identity_shift_coe();
        let coe = shift_coe_to_semigroup(&act_x, &act_y, &data, 3, 5, 4).unwrap();
        let back = semigroup_to_shift_coe(&act_x, &act_y, &coe).unwrap();
        // Tables agree as functions after refining to the recovered depth.
        let k_ref = data.k.refined_to(act_x.space(), back.k.depth);
        assert_eq!(back.k, k_ref);
        let l_ref = data.l.refined_to(act_x.space(), back.l.depth);
        assert_eq!(back.l, l_ref);
        let kp_ref = data.kp.refined_to(act_y.space(), back.kp.depth);
        assert_eq!(back.kp, kp_ref);
        let lp_ref = data.lp.refined_to(act_y.space(), back.lp.depth);
        assert_eq!(back.lp, lp_ref);
    }

    #[test]
    fn non_shift_actions_are_rejected() {
        let (_, act_y, data) = identity_shift_coe();
        let odo = standard::odometer_action(6).unwrap();
        let err = verify_shift_coe(&odo, &act_y, &data, 4).unwrap_err();
        assert!(matches!(err, Error::NotRankOne(_)));
    }
}
