//! Orbit equivalence for actions by homeomorphisms, reindexed to the group
//! form: tables a1, b1 on (m, n, x) with the second point θ_n⁻¹(θ_m(x)), and
//! the induced cocycle pair for the extended group actions. The lattice
//! order of the enveloping group gives the canonical decomposition back into
//! monoid data.

use super::csoe::eq_check_on;
use super::tables::{GroupWordTable, PairTable, TripleTable};
use super::{degree_pairs, CoeData};
use crate::action::MonoidAction;
use crate::error::{Error, Result};
use crate::monoid::{GroupElement, MonoidElement};
use crate::progressive::ProgressiveHomeo;
use crate::report::{CheckStatus, Report};
use std::collections::BTreeMap;

/// Orbit equivalence data in the group-action form.
#[derive(Clone, Debug)]
pub struct GroupCoeData {
    pub phi: ProgressiveHomeo,
    /// X-side tables: (m, n, word of X) ↦ element of S.
    pub a1: TripleTable,
    pub b1: TripleTable,
    /// Y-side tables: (s, t, word of Y) ↦ element of P.
    pub a2: TripleTable,
    pub b2: TripleTable,
    /// Cocycle of the extended group action on X, valued in the group of Y.
    pub li_a: GroupWordTable,
    /// Cocycle of the extended group action on Y, valued in the group of X.
    pub li_b: GroupWordTable,
    pub degree_bound: u32,
}

/// Canonical reduced fraction of a group element: g = a − b with
/// componentwise a ∧ b = 0.
pub fn lattice_decompose(g: &GroupElement) -> (MonoidElement, MonoidElement) {
    g.lattice_decompose()
}

fn require_homeo(act: &MonoidAction, side: &str) -> Result<()> {
    if act.by_homeomorphisms() {
        Ok(())
    } else {
        Err(Error::NotHomeomorphisms(format!(
            "the {side} action must be by homeomorphisms"
        )))
    }
}

/// Verify the group-form equations on every tabulated cylinder:
/// ρ_{a1(m,n,·)} ∘ φ = ρ_{b1(m,n,·)} ∘ φ ∘ θ̃_{m−n} on X (and symmetrically
/// on Y), plus the cocycle-pair equation φ ∘ θ̃_g = ρ̃_{a(g,·)} ∘ φ.
pub fn verify_group_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &GroupCoeData,
    depth: usize,
) -> Result<Report> {
    require_homeo(act_x, "domain")?;
    require_homeo(act_y, "codomain")?;
    let mut report = Report::new("group_coe");
    let x_space = act_x.space();
    let y_space = act_y.space();

    for (m, n) in degree_pairs(act_x.rank(), data.degree_bound) {
        let ext = act_x.extend_to_group(&m.sub(&n), depth)?;
        for wx in x_space.admissible_words(data.a1.depth) {
            let va = data.a1.lookup(&m, &n, &wx)?.clone();
            let vb = data.b1.lookup(&m, &n, &wx)?.clone();
            let lhs = act_y.action_map(&va)?.compose(&data.phi.forward)?;
            let rhs = act_y
                .action_map(&vb)?
                .compose(&data.phi.forward.compose(&ext)?)?;
            report.push(eq_check_on(
                format!(
                    "group_transport_x[m={m},n={n},w={}]",
                    x_space.format_word(&wx)
                ),
                &lhs,
                &rhs,
                depth.min(lhs.max_depth()).min(rhs.max_depth()),
                &wx,
                x_space,
            )?);
        }
    }

    for (s, t) in degree_pairs(act_y.rank(), data.degree_bound) {
        let ext = act_y.extend_to_group(&s.sub(&t), depth)?;
        for wy in y_space.admissible_words(data.a2.depth) {
            let va = data.a2.lookup(&s, &t, &wy)?.clone();
            let vb = data.b2.lookup(&s, &t, &wy)?.clone();
            let lhs = act_x.action_map(&va)?.compose(&data.phi.inverse)?;
            let rhs = act_x
                .action_map(&vb)?
                .compose(&data.phi.inverse.compose(&ext)?)?;
            report.push(eq_check_on(
                format!(
                    "group_transport_y[s={s},t={t},w={}]",
                    y_space.format_word(&wy)
                ),
                &lhs,
                &rhs,
                depth.min(lhs.max_depth()).min(rhs.max_depth()),
                &wy,
                y_space,
            )?);
        }
    }

    for ((g, wx), value) in &data.li_a.entries {
        let theta_g = act_x.extend_to_group(g, depth)?;
        let rho_a = act_y.extend_to_group(value, depth)?;
        let lhs = data.phi.forward.compose(&theta_g)?;
        let rhs = rho_a.compose(&data.phi.forward)?;
        report.push(eq_check_on(
            format!("group_cocycle_x[g={g},w={}]", x_space.format_word(wx)),
            &lhs,
            &rhs,
            depth.min(lhs.max_depth()).min(rhs.max_depth()),
            wx,
            x_space,
        )?);
    }
    for ((h, wy), value) in &data.li_b.entries {
        let rho_h = act_y.extend_to_group(h, depth)?;
        let theta_b = act_x.extend_to_group(value, depth)?;
        let lhs = data.phi.inverse.compose(&rho_h)?;
        let rhs = theta_b.compose(&data.phi.inverse)?;
        report.push(eq_check_on(
            format!("group_cocycle_y[h={h},w={}]", y_space.format_word(wy)),
            &lhs,
            &rhs,
            depth.min(lhs.max_depth()).min(rhs.max_depth()),
            wy,
            y_space,
        )?);
    }

    Ok(report)
}

/// Reindex relation data of a homeomorphism action to the group form by
/// evaluating the second point along the graph of θ̃_{m−n}, and emit the
/// cocycle pair for the extended group actions. The result is verified; a
/// refutation aborts the conversion.
pub fn semigroup_to_group(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
    depth: usize,
) -> Result<(GroupCoeData, Report)> {
    require_homeo(act_x, "domain")?;
    require_homeo(act_y, "codomain")?;

    let (a1, b1, li_a) = reindex_side(act_x, &data.a1, &data.b1, data.degree_bound, depth)?;
    let (a2, b2, li_b) = reindex_side(act_y, &data.a2, &data.b2, data.degree_bound, depth)?;
    let out = GroupCoeData {
        phi: data.phi.clone(),
        a1,
        b1,
        a2,
        b2,
        li_a,
        li_b,
        degree_bound: data.degree_bound,
    };
    let report = verify_group_coe(act_x, act_y, &out, depth)?;
    if report.status() == CheckStatus::Refuted {
        let fail = report.first_failure().expect("refuted report has failure");
        return Err(Error::VerificationFailed(format!(
            "{}: {}",
            fail.name,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    Ok((out, report))
}

fn reindex_side(
    act: &MonoidAction,
    a_table: &PairTable,
    b_table: &PairTable,
    degree_bound: u32,
    depth: usize,
) -> Result<(TripleTable, TripleTable, GroupWordTable)> {
    let space = act.space();
    let pairs = degree_pairs(act.rank(), degree_bound);
    let mut word_depth = a_table.depth_x;
    let mut exts = BTreeMap::new();
    for (m, n) in &pairs {
        let ext = act.extend_to_group(&m.sub(n), depth)?;
        word_depth = word_depth.max(ext.modulus(a_table.depth_y)?);
        exts.insert((m.clone(), n.clone()), ext);
    }

    let mut a_out = TripleTable::new(word_depth);
    let mut b_out = TripleTable::new(word_depth);
    let mut li = GroupWordTable::new(word_depth);
    for (m, n) in &pairs {
        let ext = &exts[&(m.clone(), n.clone())];
        let g = m.sub(n);
        for wx in space.admissible_words(word_depth) {
            let wy = ext.apply_word(wx.symbols(), a_table.depth_y)?;
            let va = a_table.lookup(m, n, &wx, &wy)?.clone();
            let vb = b_table.lookup(m, n, &wx, &wy)?.clone();
            let value = va.sub(&vb);
            a_out
                .entries
                .insert((m.clone(), n.clone(), wx.clone()), va);
            b_out
                .entries
                .insert((m.clone(), n.clone(), wx.clone()), vb);
            match li.entries.get(&(g.clone(), wx.clone())) {
                None => {
                    li.entries.insert((g.clone(), wx.clone()), value);
                }
                Some(prev) if *prev == value => {}
                Some(prev) => {
                    return Err(Error::WellDefinednessFailed(format!(
                        "cylinder '{}' with g = {g}: {prev} vs {value}",
                        space.format_word(&wx)
                    )))
                }
            }
        }
    }
    Ok((a_out, b_out, li))
}

/// Decompose a group-form cocycle back into monoid data along the lattice
/// order: a1 = a(g, ·) ∨ 0 and b1 = a1 − a(g, ·), with the second point of
/// each pair read off the graph of θ̃_{m−n}.
pub fn group_to_semigroup(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &GroupCoeData,
    depth: usize,
) -> Result<CoeData> {
    require_homeo(act_x, "domain")?;
    require_homeo(act_y, "codomain")?;
    let (a1, b1) = decompose_side(act_x, &data.li_a, data.degree_bound, depth)?;
    let (a2, b2) = decompose_side(act_y, &data.li_b, data.degree_bound, depth)?;
    Ok(CoeData {
        phi: data.phi.clone(),
        a1,
        b1,
        a2,
        b2,
        degree_bound: data.degree_bound,
    })
}

fn decompose_side(
    act: &MonoidAction,
    li: &GroupWordTable,
    degree_bound: u32,
    depth: usize,
) -> Result<(PairTable, PairTable)> {
    let space = act.space();
    let pairs = degree_pairs(act.rank(), degree_bound);
    let depth_y = li.depth;
    let mut depth_x = li.depth;
    let mut exts = BTreeMap::new();
    for (m, n) in &pairs {
        let ext = act.extend_to_group(&m.sub(n), depth)?;
        depth_x = depth_x.max(ext.modulus(depth_y)?);
        exts.insert((m.clone(), n.clone()), ext);
    }
    let mut a_out = PairTable::new(depth_x, depth_y);
    let mut b_out = PairTable::new(depth_x, depth_y);
    for (m, n) in &pairs {
        let ext = &exts[&(m.clone(), n.clone())];
        let g = m.sub(n);
        for wx in space.admissible_words(depth_x) {
            let value = li.lookup(&g, &wx)?.clone();
            let (pos, neg) = lattice_decompose(&value);
            let wy = ext.apply_word(wx.symbols(), depth_y)?;
            a_out.insert(m.clone(), n.clone(), wx.clone(), wy.clone(), pos);
            b_out.insert(m.clone(), n.clone(), wx.clone(), wy, neg);
        }
    }
    Ok((a_out, b_out))
}
