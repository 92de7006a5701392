//! Continuous orbit equivalence of the two-sided relation form: the
//! verifier quantifies over cylinder pairs of the fibered sets with
//! eventually periodic related extensions, and the conversions realize the
//! correspondence with étale groupoid isomorphisms in both directions.

use super::tables::PairTable;
use super::{degree_pairs, fibered_pairs, related_extensions, FiberedPairSet};
use crate::action::MonoidAction;
use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::groupoid::{
    compose_elements, make_groupoid_element, sample_group_elements, sample_shift_elements,
    GroupoidElement,
};
use crate::monoid::{GroupElement, MonoidElement};
use crate::progressive::ProgressiveHomeo;
use crate::report::{Check, Report};
use crate::word::Word;
use std::collections::BTreeMap;

/// Two-sided orbit equivalence data: a homeomorphism φ with transport tables
/// on the fibered pair sets of both actions.
#[derive(Clone, Debug)]
pub struct CoeData {
    pub phi: ProgressiveHomeo,
    /// X-side tables valued in the acting monoid of Y.
    pub a1: PairTable,
    pub b1: PairTable,
    /// Y-side tables valued in the acting monoid of X.
    pub a2: PairTable,
    pub b2: PairTable,
    pub degree_bound: u32,
}

/// Verify the relation transport equations pointwise on eventually periodic
/// representatives of every tabulated cylinder pair.
pub fn verify_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
    depth: usize,
    period_bound: usize,
) -> Result<Report> {
    let mut report = Report::new("coe");
    verify_side(
        &mut report,
        "x",
        act_x,
        act_y,
        &data.phi,
        false,
        &data.a1,
        &data.b1,
        data.degree_bound,
        depth,
        period_bound,
    )?;
    verify_side(
        &mut report,
        "y",
        act_y,
        act_x,
        &data.phi,
        true,
        &data.a2,
        &data.b2,
        data.degree_bound,
        depth,
        period_bound,
    )?;
    Ok(report)
}

/// One direction of the relation transport: for every (m, n) within the
/// bound and every fibered cylinder pair, check
/// ρ_{a1}(φ(x)) = ρ_{b1}(φ(y)) on related representatives.
#[allow(clippy::too_many_arguments)]
fn verify_side(
    report: &mut Report,
    side: &str,
    act_src: &MonoidAction,
    act_dst: &MonoidAction,
    phi: &ProgressiveHomeo,
    inverse_direction: bool,
    a_table: &PairTable,
    b_table: &PairTable,
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<()> {
    let src_space = act_src.space();
    let transport = if inverse_direction {
        &phi.inverse
    } else {
        &phi.forward
    };
    for (m, n) in degree_pairs(act_src.rank(), degree_bound) {
        let set = fibered_pairs(
            act_src,
            &m,
            &n,
            a_table.depth_x,
            a_table.depth_y,
            depth,
            period_bound,
        )?;
        // Entries within the bound must be supported by a related pair.
        for (em, en, wx, wy) in a_table.entries.keys() {
            if *em == m && *en == n && !set.contains(wx, wy) {
                return Err(Error::NoRelatedExtension(format!(
                    "table entry (m={m}, n={n}, '{}', '{}') has no related extension",
                    src_space.format_word(wx),
                    src_space.format_word(wy)
                )));
            }
        }
        for (wx, wy) in &set.pairs {
            let va = a_table.lookup(&m, &n, wx, wy)?.clone();
            let vb = b_table.lookup(&m, &n, wx, wy)?.clone();
            let name = format!(
                "relation_transport_{side}[m={m},n={n},wx={},wy={}]",
                src_space.format_word(wx),
                src_space.format_word(wy)
            );
            let witnesses =
                related_extensions(act_src, &m, &n, wx, wy, depth, period_bound, 2)?;
            if witnesses.is_empty() {
                return Err(Error::NoRelatedExtension(format!(
                    "fibered pair ('{}', '{}') lost its witness",
                    src_space.format_word(wx),
                    src_space.format_word(wy)
                )));
            }
            let rho_a = act_dst.action_map(&va)?;
            let rho_b = act_dst.action_map(&vb)?;
            let mut failure = None;
            let mut undetermined = None;
            for (x, y) in &witnesses {
                let d = depth
                    .min(rho_a.max_depth())
                    .min(rho_b.max_depth())
                    .min(transport.max_depth());
                if d < depth {
                    undetermined = Some(format!("supported depth {d} < requested {depth}"));
                    continue;
                }
                let need_a = rho_a.modulus(depth)?;
                let need_b = rho_b.modulus(depth)?;
                let transported = (|| -> Result<_> {
                    let fx = transport.apply_point(x, need_a)?;
                    let fy = transport.apply_point(y, need_b)?;
                    let lhs = rho_a.apply_point(&fx, depth)?;
                    let rhs = rho_b.apply_point(&fy, depth)?;
                    Ok((lhs, rhs))
                })();
                let (lhs, rhs) = match transported {
                    Ok(v) => v,
                    Err(Error::Undetermined { .. }) | Err(Error::DepthUnsupported { .. }) => {
                        undetermined = Some(format!("witness undetermined at depth {depth}"));
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                match lhs.eq_at_depth(&rhs, depth) {
                    Some(true) => {}
                    Some(false) => {
                        failure = Some(format!(
                            "witness x = {}, y = {}",
                            x.display(src_space),
                            y.display(src_space)
                        ));
                        break;
                    }
                    None => {
                        undetermined = Some(format!("witness undetermined at depth {depth}"));
                    }
                }
            }
            report.push(match (failure, undetermined) {
                (Some(w), _) => Check::refuted(name, w),
                (None, Some(u)) => Check::undetermined(name, u),
                (None, None) => Check::verified(name),
            });
        }
    }
    Ok(())
}

/// Group-valued cocycle tables on cylinder pairs: (g, wx, wy) ↦ value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    pub depth_x: usize,
    pub depth_y: usize,
    pub entries: BTreeMap<(GroupElement, Word, Word), GroupElement>,
}

impl CocycleTable {
    pub fn eval(&self, e: &GroupoidElement) -> Result<GroupElement> {
        let wx = e.x.truncate(self.depth_x)?;
        let wy = e.y.truncate(self.depth_y)?;
        self.entries
            .get(&(e.g.clone(), wx, wy))
            .cloned()
            .ok_or_else(|| Error::TableIncomplete(format!("cocycle entry for g = {}", e.g)))
    }
}

/// The groupoid cocycles induced by orbit equivalence data: a = a1 − b1 on
/// the groupoid of X and b = a2 − b2 on the groupoid of Y.
#[derive(Clone, Debug)]
pub struct GroupoidCocyclePair {
    pub a: CocycleTable,
    pub b: CocycleTable,
}

/// Build the cocycle pair, checking that a1 − b1 is well defined on
/// overlapping fibered sets, multiplicative on sampled composable pairs, and
/// mutually inverse with the other side.
pub fn groupoid_cocycle_from_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
    depth: usize,
    period_bound: usize,
) -> Result<(GroupoidCocyclePair, Report)> {
    let mut report = Report::new("groupoid_cocycle");
    let a = cocycle_side(
        act_x,
        &data.a1,
        &data.b1,
        data.degree_bound,
        depth,
        period_bound,
    )?;
    let b = cocycle_side(
        act_y,
        &data.a2,
        &data.b2,
        data.degree_bound,
        depth,
        period_bound,
    )?;
    report.push(Check::verified("well_definedness"));

    let samples = sample_elements_for(act_x, depth)?;
    let mut law_checked = 0usize;
    for (i, e1) in samples.iter().enumerate() {
        for (j, e2) in samples.iter().enumerate() {
            if !crate::groupoid::points_match(&e1.y, &e2.x, depth) {
                continue;
            }
            let prod = compose_elements(act_x, e1, e2, depth)?;
            let (Ok(c1), Ok(c2), Ok(cp)) = (a.eval(e1), a.eval(e2), a.eval(&prod)) else {
                continue;
            };
            law_checked += 1;
            if cp != c1.add(&c2) {
                return Err(Error::CocycleLawFailed(format!(
                    "pair ({i}, {j}): a(γ₁γ₂) = {cp} but a(γ₁)+a(γ₂) = {}",
                    c1.add(&c2)
                )));
            }
        }
    }
    report.push(Check::verified(format!(
        "cocycle_multiplicative[{law_checked} pairs]"
    )));

    let mut inv_checked = 0usize;
    for (i, e) in samples.iter().enumerate() {
        let Ok(aval) = a.eval(e) else { continue };
        let fx = data.phi.forward.apply_point(&e.x, b.depth_x)?;
        let fy = data.phi.forward.apply_point(&e.y, b.depth_y)?;
        let key = (aval.clone(), fx.truncate(b.depth_x)?, fy.truncate(b.depth_y)?);
        let Some(back) = b.entries.get(&key) else {
            continue;
        };
        inv_checked += 1;
        if *back != e.g {
            return Err(Error::InversionFailed(format!(
                "sample {i}: b(φx, a(γ), φy) = {back} but c(γ) = {}",
                e.g
            )));
        }
    }
    report.push(Check::verified(format!(
        "cocycle_inversion[{inv_checked} samples]"
    )));

    Ok((GroupoidCocyclePair { a, b }, report))
}

fn cocycle_side(
    act: &MonoidAction,
    a_table: &PairTable,
    b_table: &PairTable,
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<CocycleTable> {
    let mut entries: BTreeMap<(GroupElement, Word, Word), GroupElement> = BTreeMap::new();
    let mut sources: BTreeMap<(GroupElement, Word, Word), (MonoidElement, MonoidElement)> =
        BTreeMap::new();
    for (m, n) in degree_pairs(act.rank(), degree_bound) {
        let set = fibered_pairs(
            act,
            &m,
            &n,
            a_table.depth_x,
            a_table.depth_y,
            depth,
            period_bound,
        )?;
        let g = m.sub(&n);
        for (wx, wy) in &set.pairs {
            let va = a_table.lookup(&m, &n, wx, wy)?;
            let vb = b_table.lookup(&m, &n, wx, wy)?;
            let value = va.sub(vb);
            let key = (g.clone(), wx.clone(), wy.clone());
            match entries.get(&key) {
                None => {
                    entries.insert(key.clone(), value);
                    sources.insert(key, (m.clone(), n.clone()));
                }
                Some(prev) if *prev == value => {}
                Some(prev) => {
                    let (m0, n0) = &sources[&key];
                    return Err(Error::WellDefinednessFailed(format!(
                        "pair ('{}', '{}') with g = {g}: witness (m={m0}, n={n0}) gives {prev} \
                         but witness (m={m}, n={n}) gives {value}",
                        act.space().format_word(wx),
                        act.space().format_word(wy)
                    )));
                }
            }
        }
    }
    Ok(CocycleTable {
        depth_x: a_table.depth_x,
        depth_y: a_table.depth_y,
        entries,
    })
}

fn sample_elements_for(act: &MonoidAction, depth: usize) -> Result<Vec<GroupoidElement>> {
    if act.shift_powers().is_some() {
        sample_shift_elements(act, 8, 2, 1, depth, 23)
    } else if act.by_homeomorphisms() {
        sample_group_elements(act, 16, 1, depth, 23)
    } else {
        Ok(Vec::new())
    }
}

/// The images of sampled groupoid elements under the isomorphism
/// Ψ(x, g, y) = (φ(x), a(x, g, y), φ(y)), with homomorphism and inversion
/// checks over every composable pair in the sample.
pub fn groupoid_iso_from_coe(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
    elements: &[GroupoidElement],
    depth: usize,
    period_bound: usize,
) -> Result<(Vec<GroupoidElement>, Report)> {
    let (_, mut report) = groupoid_cocycle_from_coe(act_x, act_y, data, depth, period_bound)?;
    report.kind = "groupoid_iso".into();

    let psi = |e: &GroupoidElement| -> Result<GroupoidElement> {
        let (m, n) = &e.witness;
        let wx = e.x.truncate(data.a1.depth_x)?;
        let wy = e.y.truncate(data.a1.depth_y)?;
        let s = data.a1.lookup(m, n, &wx, &wy)?.clone();
        let t = data.b1.lookup(m, n, &wx, &wy)?.clone();
        let rho_s = act_y.action_map(&s)?;
        let rho_t = act_y.action_map(&t)?;
        let need = rho_s.modulus(depth)?.max(rho_t.modulus(depth)?).max(depth);
        let fx = data.phi.forward.apply_point(&e.x, need)?;
        let fy = data.phi.forward.apply_point(&e.y, need)?;
        make_groupoid_element(act_y, fx, s, t, fy, depth)
    };

    let mut images = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        let img = psi(e)?;
        report.push(Check::verified(format!("image[{i}]")));
        images.push(img);
    }

    for (i, e1) in elements.iter().enumerate() {
        for (j, e2) in elements.iter().enumerate() {
            if !crate::groupoid::points_match(&e1.y, &e2.x, depth) {
                continue;
            }
            let name = format!("homomorphism[{i},{j}]");
            let prod = compose_elements(act_x, e1, e2, depth)?;
            let lhs = match psi(&prod) {
                Ok(v) => v,
                Err(Error::TableIncomplete(w)) => {
                    report.push(Check::undetermined(name, format!("composite degree: {w}")));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let rhs = compose_elements(act_y, &images[i], &images[j], depth)?;
            match lhs.eq_at_depth(&rhs, depth) {
                Some(true) => report.push(Check::verified(name)),
                Some(false) => report.push(Check::refuted(
                    name,
                    format!("Ψ(γ₁γ₂) ≠ Ψ(γ₁)Ψ(γ₂): {} vs {}", lhs.g, rhs.g),
                )),
                None => report.push(Check::undetermined(name, "points too shallow")),
            }
        }
    }

    for (i, (e, img)) in elements.iter().zip(&images).enumerate() {
        let name = format!("inversion[{i}]");
        let (s, t) = &img.witness;
        let wu = img.x.truncate(data.a2.depth_x)?;
        let wv = img.y.truncate(data.a2.depth_y)?;
        let m_back = data.a2.lookup(s, t, &wu, &wv)?.clone();
        let n_back = data.b2.lookup(s, t, &wu, &wv)?.clone();
        let theta_m = act_x.action_map(&m_back)?;
        let theta_n = act_x.action_map(&n_back)?;
        let need = theta_m
            .modulus(depth)?
            .max(theta_n.modulus(depth)?)
            .max(depth);
        let bx = data.phi.inverse.apply_point(&img.x, need)?;
        let by = data.phi.inverse.apply_point(&img.y, need)?;
        let back = make_groupoid_element(act_x, bx, m_back, n_back, by, depth)?;
        match back.eq_at_depth(e, depth) {
            Some(true) => report.push(Check::verified(name)),
            Some(false) => report.push(Check::refuted(
                name,
                format!("Ψ̃(Ψ(γ)) has g = {} but γ has g = {}", back.g, e.g),
            )),
            None => report.push(Check::undetermined(name, "points too shallow")),
        }
    }

    Ok((images, report))
}

/// One tabulated correspondence of basic bisections: the source
/// Σ(U, src_m, src_n, V) maps to an image bisection with degrees
/// (img_m, img_n) under φ.
#[derive(Clone, Debug)]
pub struct IsoEntry {
    pub src_m: MonoidElement,
    pub src_n: MonoidElement,
    pub u: ClopenSet,
    pub v: ClopenSet,
    pub img_m: MonoidElement,
    pub img_n: MonoidElement,
}

/// A groupoid isomorphism tabulated at the bisection level, in both
/// directions.
#[derive(Clone, Debug)]
pub struct GroupoidIsoData {
    pub phi: ProgressiveHomeo,
    pub x_entries: Vec<IsoEntry>,
    pub y_entries: Vec<IsoEntry>,
}

/// Tabulate the bisection-level isomorphism induced by orbit equivalence
/// data: every fibered cylinder pair is refined to a genuine bisection
/// Σ(U, m, n, V) with θ_m(U) = θ_n(V), carrying the table values (a1, b1)
/// as image degrees.
pub fn build_groupoid_iso(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    data: &CoeData,
    image_depth: usize,
    depth: usize,
    period_bound: usize,
) -> Result<GroupoidIsoData> {
    let x_entries = iso_side(
        act_x,
        &data.a1,
        &data.b1,
        data.degree_bound,
        image_depth,
        depth,
        period_bound,
    )?;
    let y_entries = iso_side(
        act_y,
        &data.a2,
        &data.b2,
        data.degree_bound,
        image_depth,
        depth,
        period_bound,
    )?;
    Ok(GroupoidIsoData {
        phi: data.phi.clone(),
        x_entries,
        y_entries,
    })
}

fn iso_side(
    act: &MonoidAction,
    a_table: &PairTable,
    b_table: &PairTable,
    degree_bound: u32,
    image_depth: usize,
    depth: usize,
    period_bound: usize,
) -> Result<Vec<IsoEntry>> {
    let space = act.space();
    let mut entries = Vec::new();
    for (m, n) in degree_pairs(act.rank(), degree_bound) {
        let fm = act.action_map(&m)?;
        let fn_ = act.action_map(&n)?;
        let d = image_depth.min(fm.max_depth()).min(fn_.max_depth());
        // Bisection sources must be fine enough for injectivity; refine the
        // fibered cylinders to the injectivity partition depth of each map.
        let lh_m = crate::progressive::check_local_homeo(&fm, d)?;
        let lh_n = crate::progressive::check_local_homeo(&fn_, d)?;
        if !lh_m.injective || !lh_n.injective {
            return Err(Error::NotBisectionForm(format!(
                "no injectivity partition for (m={m}, n={n}) at depth {d}"
            )));
        }
        let pm = lh_m.partition.iter().map(Word::len).max().unwrap_or(0);
        let pn = lh_n.partition.iter().map(Word::len).max().unwrap_or(0);
        let set = fibered_pairs(
            act,
            &m,
            &n,
            a_table.depth_x,
            a_table.depth_y,
            depth,
            period_bound,
        )?;
        for (wx, wy) in &set.pairs {
            let img_m_value = a_table.lookup(&m, &n, wx, wy)?.clone();
            let img_n_value = b_table.lookup(&m, &n, wx, wy)?.clone();
            for rx in space.extensions(wx, pm.max(wx.len())) {
                for ry in space.extensions(wy, pn.max(wy.len())) {
                    if related_extensions(act, &m, &n, &rx, &ry, depth, period_bound, 1)?
                        .is_empty()
                    {
                        continue;
                    }
                    let cu = ClopenSet::cylinder(rx.clone());
                    let cv = ClopenSet::cylinder(ry.clone());
                    let img = fm
                        .image_clopen(&cu, d)?
                        .intersect(space, &fn_.image_clopen(&cv, d)?);
                    if img.is_empty() {
                        return Err(Error::NotBisectionForm(format!(
                            "related pair ('{}', '{}') has no common image",
                            space.format_word(&rx),
                            space.format_word(&ry)
                        )));
                    }
                    let u = cu.intersect(space, &fm.preimage_clopen(&img, d)?);
                    let v = cv.intersect(space, &fn_.preimage_clopen(&img, d)?);
                    let bis =
                        crate::groupoid::Bisection::new(u.clone(), m.clone(), n.clone(), v.clone());
                    bis.validate(act, d)?;
                    entries.push(IsoEntry {
                        src_m: m.clone(),
                        src_n: n.clone(),
                        u,
                        v,
                        img_m: img_m_value.clone(),
                        img_n: img_n_value.clone(),
                    });
                }
            }
        }
    }
    Ok(entries)
}

/// Run the clopen-cover extraction: for each degree pair, cover the fibered
/// set with the tabulated bisections and read off constant table values.
/// Fails with `CoverIncomplete` when a related cylinder pair is covered by
/// no bisection.
pub fn coe_from_groupoid_iso(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    iso: &GroupoidIsoData,
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<CoeData> {
    let (a1, b1) = cover_side(
        act_x,
        &iso.x_entries,
        degree_bound,
        depth,
        period_bound,
    )?;
    let (a2, b2) = cover_side(
        act_y,
        &iso.y_entries,
        degree_bound,
        depth,
        period_bound,
    )?;
    Ok(CoeData {
        phi: iso.phi.clone(),
        a1,
        b1,
        a2,
        b2,
        degree_bound,
    })
}

fn cover_side(
    act: &MonoidAction,
    entries: &[IsoEntry],
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<(PairTable, PairTable)> {
    let space = act.space();
    let depth_x = entries.iter().map(|e| e.u.depth()).max().unwrap_or(1);
    let depth_y = entries.iter().map(|e| e.v.depth()).max().unwrap_or(1);
    let mut a = PairTable::new(depth_x, depth_y);
    let mut b = PairTable::new(depth_x, depth_y);
    for (m, n) in degree_pairs(act.rank(), degree_bound) {
        let set: FiberedPairSet =
            fibered_pairs(act, &m, &n, depth_x, depth_y, depth, period_bound)?;
        for (wx, wy) in &set.pairs {
            let hit = entries.iter().find(|e| {
                e.src_m == m
                    && e.src_n == n
                    && e.u.contains_cylinder(wx)
                    && e.v.contains_cylinder(wy)
            });
            match hit {
                Some(e) => {
                    a.insert(m.clone(), n.clone(), wx.clone(), wy.clone(), e.img_m.clone());
                    b.insert(m.clone(), n.clone(), wx.clone(), wy.clone(), e.img_n.clone());
                }
                None => {
                    return Err(Error::CoverIncomplete(format!(
                        "related pair (m={m}, n={n}, '{}', '{}') is not covered",
                        space.format_word(wx),
                        space.format_word(wy)
                    )))
                }
            }
        }
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::super::csoe::tests::phi2_csoe;
    use super::super::csoe_to_coe;
    use super::*;
    use crate::point::TruncatedPoint;

    fn phi2_coe() -> (MonoidAction, MonoidAction, CoeData) {
        let (act_x, act_y, data) = phi2_csoe(1, 2);
        let coe = csoe_to_coe(&act_x, &act_y, &data, 5, 4).unwrap();
        (act_x, act_y, coe)
    }

    #[test]
    fn phi2_coe_verifies() {
        let (act_x, act_y, coe) = phi2_coe();
        let report = verify_coe(&act_x, &act_y, &coe, 5, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn corrupted_pair_entry_is_refuted() {
        let (act_x, act_y, mut coe) = phi2_coe();
        let key = coe
            .b1
            .entries
            .keys()
            .find(|(m, n, _, _)| m.degree() == 1 && n.degree() == 0)
            .unwrap()
            .clone();
        coe.b1.entries.insert(key, MonoidElement(vec![2]));
        let report = verify_coe(&act_x, &act_y, &coe, 5, 4).unwrap();
        assert!(!report.passed());
        assert!(report
            .first_failure()
            .unwrap()
            .name
            .starts_with("relation_transport_x"));
    }

    #[test]
    fn cocycle_pair_on_identity_data_is_canonical() {
        let (act_x, act_y, coe) = phi2_coe();
        let (pair, report) =
            groupoid_cocycle_from_coe(&act_x, &act_y, &coe, 5, 4).unwrap();
        assert!(report.passed());
        for ((g, _, _), v) in &pair.a.entries {
            assert_eq!(g, v); // conjugacy transports the canonical cocycle
        }
    }

    #[test]
    fn well_definedness_violation_is_caught() {
        let (act_x, act_y, mut coe) = phi2_coe();
        // Corrupt one entry of a1 on a pair whose (wx, wy) also lies in the
        // fibered set of another witness of the same g.
        let key = coe
            .a1
            .entries
            .keys()
            .find(|(m, n, _, _)| m.degree() == 2 && n.degree() == 1)
            .unwrap()
            .clone();
        coe.a1.entries.insert(key, MonoidElement(vec![3]));
        let err = groupoid_cocycle_from_coe(&act_x, &act_y, &coe, 5, 4).unwrap_err();
        assert!(matches!(
            err,
            Error::WellDefinednessFailed(_) | Error::CocycleLawFailed(_)
        ));
    }

    #[test]
    fn groupoid_iso_maps_units_to_units() {
        let (act_x, act_y, coe) = phi2_coe();
        let x = TruncatedPoint::periodic(Word(vec![0, 1]));
        let unit = make_groupoid_element(
            &act_x,
            x.clone(),
            MonoidElement(vec![0]),
            MonoidElement(vec![0]),
            x,
            6,
        )
        .unwrap();
        let (images, report) =
            groupoid_iso_from_coe(&act_x, &act_y, &coe, &[unit], 5, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        assert_eq!(images[0].is_unit_at_depth(5), Some(true));
    }

    #[test]
    fn groupoid_iso_homomorphism_on_samples() {
        let (act_x, act_y, coe) = phi2_coe();
        let elements = sample_shift_elements(&act_x, 10, 2, 1, 6, 41).unwrap();
        let (_, report) =
            groupoid_iso_from_coe(&act_x, &act_y, &coe, &elements, 5, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        assert!(report.checks.iter().any(|c| c.name.starts_with("homomorphism")));
        assert!(report.checks.iter().any(|c| c.name.starts_with("inversion")));
    }

    #[test]
    fn bisection_iso_roundtrip_preserves_cocycle_values() {
        let (act_x, act_y, coe) = phi2_coe();
        let iso = build_groupoid_iso(&act_x, &act_y, &coe, 2, 5, 4).unwrap();
        let back = coe_from_groupoid_iso(&act_x, &act_y, &iso, coe.degree_bound, 5, 4).unwrap();
        let report = verify_coe(&act_x, &act_y, &back, 4, 4).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        // Cocycle values a1 − b1 agree with the original on every refined pair.
        for ((m, n, wx, wy), va) in &back.a1.entries {
            let vb = back.b1.entries[&(m.clone(), n.clone(), wx.clone(), wy.clone())].clone();
            let ova = coe.a1.lookup(m, n, wx, wy).unwrap();
            let ovb = coe.b1.lookup(m, n, wx, wy).unwrap();
            assert_eq!(va.sub(&vb), ova.sub(ovb));
        }
    }

    #[test]
    fn missing_cover_is_reported() {
        let (act_x, act_y, coe) = phi2_coe();
        let mut iso = build_groupoid_iso(&act_x, &act_y, &coe, 2, 5, 4).unwrap();
        iso.x_entries.retain(|e| {
            !(e.src_m == MonoidElement(vec![1]) && e.src_n == MonoidElement(vec![0]))
        });
        let err =
            coe_from_groupoid_iso(&act_x, &act_y, &iso, coe.degree_bound, 5, 4).unwrap_err();
        assert!(matches!(err, Error::CoverIncomplete(_)));
    }
}
