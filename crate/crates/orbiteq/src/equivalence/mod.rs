//! Continuous orbit equivalence data and its exact, depth-bounded verifiers
//! and converters.
//!
//! The submodules follow the several equivalence notions: one-sided data
//! (`csoe`), two-sided relation data (`coe`), the path-counting form for
//! rank-1 shift actions (`shift`), and the group-action form for actions by
//! homeomorphisms (`group`). Everything is driven by the fibered pair sets
//! computed here: the cylinder pairs that admit related extensions.

pub mod coe;
pub mod csoe;
pub mod group;
pub mod shift;
pub mod tables;

pub use coe::{
    build_groupoid_iso, coe_from_groupoid_iso, groupoid_cocycle_from_coe, groupoid_iso_from_coe,
    verify_coe, CocycleTable, CoeData, GroupoidCocyclePair, GroupoidIsoData, IsoEntry,
};
pub use csoe::{
    check_derived_identities, csoe_to_coe, semigroupoid_iso_extract, semigroupoid_iso_forward,
    verify_csoe, CsoeData, SemiGroupoidIso,
};
pub use group::{
    group_to_semigroup, lattice_decompose, semigroup_to_group, verify_group_coe, GroupCoeData,
};
pub use shift::{semigroup_to_shift_coe, shift_coe_to_semigroup, verify_shift_coe, ShiftCoeData};

use crate::action::MonoidAction;
use crate::error::Result;
use crate::monoid::MonoidElement;
use crate::point::TruncatedPoint;
use crate::word::Word;

/// The cylinder pairs of a relation: pairs of words admitting extensions x, y
/// with θ_m(x) = θ_n(y).
#[derive(Clone, Debug)]
pub struct FiberedPairSet {
    pub m: MonoidElement,
    pub n: MonoidElement,
    pub depth_x: usize,
    pub depth_y: usize,
    pub pairs: Vec<(Word, Word)>,
}

impl FiberedPairSet {
    pub fn contains(&self, wx: &Word, wy: &Word) -> bool {
        self.pairs
            .binary_search_by(|(a, b)| (a, b).cmp(&(wx, wy)))
            .is_ok()
    }
}

/// Related eventually periodic extensions of a cylinder pair, up to
/// `max_count` of them.
///
/// Pure shift powers are decided exactly by merging the prefix constraints;
/// homeomorphism actions are decided through the graph of the extended group
/// action; other actions fall back to a bounded tail search.
pub fn related_extensions(
    act: &MonoidAction,
    m: &MonoidElement,
    n: &MonoidElement,
    wx: &Word,
    wy: &Word,
    depth: usize,
    period_bound: usize,
    max_count: usize,
) -> Result<Vec<(TruncatedPoint, TruncatedPoint)>> {
    if let Some(powers) = act.shift_powers() {
        let a: usize = powers.iter().zip(&m.0).map(|(&p, &e)| p * e as usize).sum();
        let b: usize = powers.iter().zip(&n.0).map(|(&p, &e)| p * e as usize).sum();
        if a <= wx.len() && b <= wy.len() {
            return Ok(shift_related_exact(act, a, b, wx, wy, period_bound, max_count));
        }
        return shift_related_with_gaps(act, a, b, wx, wy, period_bound, max_count);
    }
    if act.by_homeomorphisms() {
        return homeo_related(act, m, n, wx, wy, depth, max_count);
    }
    bounded_search_related(act, m, n, wx, wy, depth, period_bound, max_count)
}

/// σ^a(x) = σ^b(y) with both offsets inside the known prefixes: the merged
/// tail is pinned by the suffixes wx[a..] and wy[b..]; the pair is related
/// iff those agree on their overlap.
fn shift_related_exact(
    act: &MonoidAction,
    a: usize,
    b: usize,
    wx: &Word,
    wy: &Word,
    period_bound: usize,
    max_count: usize,
) -> Vec<(TruncatedPoint, TruncatedPoint)> {
    let space = act.space();
    let pin_x = wx.suffix_from(a);
    let pin_y = wy.suffix_from(b);
    let overlap = pin_x.len().min(pin_y.len());
    if pin_x.symbols()[..overlap] != pin_y.symbols()[..overlap] {
        return Vec::new();
    }
    let pinned = if pin_x.len() >= pin_y.len() { pin_x } else { pin_y };
    // The side whose suffix is exhausted still constrains the first tail
    // symbol through its last kept symbol.
    let req_x = (a > 0 && a == wx.len()).then(|| wx.symbols()[a - 1]);
    let req_y = (b > 0 && b == wy.len()).then(|| wy.symbols()[b - 1]);

    let mut anchors: Vec<(Word, Option<crate::word::Symbol>)> = Vec::new();
    if let Some(first) = pinned.first() {
        if req_x.is_some_and(|v| !space.allowed(v, first))
            || req_y.is_some_and(|v| !space.allowed(v, first))
        {
            return Vec::new();
        }
        anchors.push((pinned.clone(), pinned.last()));
    } else {
        // Nothing pinned: choose a first tail symbol satisfying both junctions.
        for s in 0..space.num_symbols() as crate::word::Symbol {
            if req_x.is_some_and(|v| !space.allowed(v, s))
                || req_y.is_some_and(|v| !space.allowed(v, s))
            {
                continue;
            }
            anchors.push((Word(vec![s]), Some(s)));
        }
    }

    let mut out: Vec<(TruncatedPoint, TruncatedPoint)> = Vec::new();
    for (head, anchor) in anchors {
        let mut tails = Vec::new();
        let (c_pre, c_per) = space.canonical_tail_from(anchor);
        tails.push((c_pre, c_per));
        tails.extend(space.enumerate_tails(anchor, 1, period_bound));
        for (pre, per) in tails {
            let t = TruncatedPoint::eventually_periodic(head.clone(), pre, per);
            let x = t.prepend(&wx.prefix(a));
            let y = t.prepend(&wy.prefix(b));
            if !x.admissible_in(space) || !y.admissible_in(space) {
                continue;
            }
            if out.iter().all(|(px, _)| px.eq_exact(&x) != Some(true)) {
                out.push((x, y));
            }
            if out.len() >= max_count {
                return out;
            }
        }
    }
    out
}

/// σ^a(x) = σ^b(y) with an offset beyond a known prefix: enumerate the free
/// gap words explicitly.
fn shift_related_with_gaps(
    act: &MonoidAction,
    a: usize,
    b: usize,
    wx: &Word,
    wy: &Word,
    period_bound: usize,
    max_count: usize,
) -> Result<Vec<(TruncatedPoint, TruncatedPoint)>> {
    let space = act.space();
    let mut out: Vec<(TruncatedPoint, TruncatedPoint)> = Vec::new();
    // Extend both words to cover their offsets, then reuse the exact case.
    let need_x = a.max(wx.len());
    let need_y = b.max(wy.len());
    for ex in space.extensions(wx, need_x) {
        for ey in space.extensions(wy, need_y) {
            for (x, y) in shift_related_exact(act, a, b, &ex, &ey, period_bound, max_count) {
                if out.iter().all(|(px, _)| px.eq_exact(&x) != Some(true)) {
                    out.push((x, y));
                }
                if out.len() >= max_count {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}

/// Homeomorphism actions: the relation is the graph y = θ̃_{m−n}(x).
fn homeo_related(
    act: &MonoidAction,
    m: &MonoidElement,
    n: &MonoidElement,
    wx: &Word,
    wy: &Word,
    depth: usize,
    max_count: usize,
) -> Result<Vec<(TruncatedPoint, TruncatedPoint)>> {
    let g = m.sub(n);
    let ext = act.extend_to_group(&g, depth)?;
    let need = ext.modulus(wy.len())?.max(wx.len());
    if need > ext.max_depth() + wx.len() {
        // paranoia guard; moduli of tabulated homeomorphisms are finite
    }
    let space = act.space();
    // Produce the second point as deep as the extension supports, so the
    // witness survives later transport checks.
    let y_depth = if ext.is_complete() {
        wy.len().max(depth)
    } else {
        ext.max_depth()
    };
    let mut out = Vec::new();
    for u in space.extensions(wx, need) {
        let img = ext.apply_word(u.symbols(), wy.len())?;
        if img != *wy {
            continue;
        }
        let x = TruncatedPoint::canonical_in_cylinder(space, &u);
        let y = ext.apply_point(&x, y_depth)?;
        out.push((x, y));
        if out.len() >= max_count {
            break;
        }
    }
    Ok(out)
}

/// General bounded search: enumerate eventually periodic candidates on both
/// sides and compare the images at the depth.
#[allow(clippy::too_many_arguments)]
fn bounded_search_related(
    act: &MonoidAction,
    m: &MonoidElement,
    n: &MonoidElement,
    wx: &Word,
    wy: &Word,
    depth: usize,
    period_bound: usize,
    max_count: usize,
) -> Result<Vec<(TruncatedPoint, TruncatedPoint)>> {
    let fm = act.action_map(m)?;
    let fn_ = act.action_map(n)?;
    let d = depth.min(fm.max_depth()).min(fn_.max_depth());
    let space = act.space();
    let mut out = Vec::new();
    let xs: Vec<TruncatedPoint> = space
        .enumerate_tails(wx.last(), 1, period_bound)
        .into_iter()
        .map(|(pre, per)| TruncatedPoint::eventually_periodic(wx.clone(), pre, per))
        .collect();
    let ys: Vec<TruncatedPoint> = space
        .enumerate_tails(wy.last(), 1, period_bound)
        .into_iter()
        .map(|(pre, per)| TruncatedPoint::eventually_periodic(wy.clone(), pre, per))
        .collect();
    'outer: for x in &xs {
        let fx = fm.apply_point(x, d)?;
        for y in &ys {
            let fy = fn_.apply_point(y, d)?;
            if fx.eq_at_depth(&fy, d) == Some(true) {
                out.push((x.clone(), y.clone()));
                if out.len() >= max_count {
                    break 'outer;
                }
                break;
            }
        }
    }
    Ok(out)
}

/// Enumerate the fibered pair set at the given word depths.
pub fn fibered_pairs(
    act: &MonoidAction,
    m: &MonoidElement,
    n: &MonoidElement,
    depth_x: usize,
    depth_y: usize,
    compare_depth: usize,
    period_bound: usize,
) -> Result<FiberedPairSet> {
    let space = act.space();
    let mut pairs = Vec::new();
    for wx in space.admissible_words(depth_x) {
        for wy in space.admissible_words(depth_y) {
            let found =
                related_extensions(act, m, n, &wx, &wy, compare_depth, period_bound, 1)?;
            if !found.is_empty() {
                pairs.push((wx.clone(), wy));
            }
        }
    }
    pairs.sort();
    Ok(FiberedPairSet {
        m: m.clone(),
        n: n.clone(),
        depth_x,
        depth_y,
        pairs,
    })
}

/// All ordered pairs (m, n) of the degree ball, in graded-lexicographic
/// order of the pair.
pub fn degree_pairs(rank: usize, degree_bound: u32) -> Vec<(MonoidElement, MonoidElement)> {
    let ball = crate::monoid::monoid_ball(rank, degree_bound);
    let mut pairs = Vec::new();
    for m in &ball {
        for n in &ball {
            pairs.push((m.clone(), n.clone()));
        }
    }
    pairs.sort_by_key(|(m, n)| (m.degree() + n.degree(), m.grlex_key(), n.grlex_key()));
    pairs
}

/// Helper shared by the verifiers: both actions certified essentially free
/// up to the bound (the hypothesis of the identity lemmas).
pub(crate) fn freeness_gate(
    act_x: &MonoidAction,
    act_y: &MonoidAction,
    degree_bound: u32,
    depth: usize,
    period_bound: usize,
) -> Result<bool> {
    let fx = act_x.essentially_free(degree_bound, depth, period_bound)?;
    let fy = act_y.essentially_free(degree_bound, depth, period_bound)?;
    Ok(fx.all_free() && fy.all_free())
}
