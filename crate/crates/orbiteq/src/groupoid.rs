//! The semi-groupoid and the transformation groupoid of an action, as an
//! element and bisection calculus.
//!
//! The groupoid is never materialized: elements are triples (x, g, y)
//! carrying an explicit witness pair (m, n) with g = m − n and
//! θ_m(x) = θ_n(y) verified at a depth, and its topology is exercised
//! through cylinder-based bisections only.

use crate::action::MonoidAction;
use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::monoid::{GroupElement, MonoidElement};
use crate::point::TruncatedPoint;
use crate::progressive::ProgressiveMap;
use crate::report::{Check, Report};
use crate::word::Word;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// An element (m, x) of the semi-groupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiGroupoidElement {
    pub m: MonoidElement,
    pub x: TruncatedPoint,
}

/// An element (x, g, y) of the transformation groupoid with its witness
/// (m, n): g = m − n and θ_m(x) = θ_n(y).
#[derive(Clone, Debug)]
pub struct GroupoidElement {
    pub x: TruncatedPoint,
    pub g: GroupElement,
    pub y: TruncatedPoint,
    pub witness: (MonoidElement, MonoidElement),
}

impl GroupoidElement {
    /// The unit (x, e, x) at a point.
    pub fn unit(rank: usize, x: TruncatedPoint) -> GroupoidElement {
        GroupoidElement {
            x: x.clone(),
            g: GroupElement::zero(rank),
            y: x,
            witness: (MonoidElement::zero(rank), MonoidElement::zero(rank)),
        }
    }

    pub fn is_unit_at_depth(&self, depth: usize) -> Option<bool> {
        if !self.g.is_zero() {
            return Some(false);
        }
        self.x.eq_at_depth(&self.y, depth)
    }

    /// Range r(x,g,y) = x as a unit element.
    pub fn range(&self) -> GroupoidElement {
        GroupoidElement::unit(self.g.rank(), self.x.clone())
    }

    /// Domain d(x,g,y) = y as a unit element.
    pub fn domain(&self) -> GroupoidElement {
        GroupoidElement::unit(self.g.rank(), self.y.clone())
    }

    /// Inverse (y, −g, x) with the witness swapped.
    pub fn inverse(&self) -> GroupoidElement {
        GroupoidElement {
            x: self.y.clone(),
            g: self.g.neg(),
            y: self.x.clone(),
            witness: (self.witness.1.clone(), self.witness.0.clone()),
        }
    }

    /// Componentwise comparison at a depth; witnesses are representation
    /// data and do not participate.
    pub fn eq_at_depth(&self, other: &GroupoidElement, depth: usize) -> Option<bool> {
        if self.g != other.g {
            return Some(false);
        }
        match (
            self.x.eq_at_depth(&other.x, depth),
            self.y.eq_at_depth(&other.y, depth),
        ) {
            (Some(a), Some(b)) => Some(a && b),
            _ => None,
        }
    }
}

/// The canonical cocycle c(x, g, y) = g.
pub fn canonical_cocycle(e: &GroupoidElement) -> GroupElement {
    e.g.clone()
}

/// Composability test for sampled elements: exact equality of the points
/// when decidable, the depth-truncated comparison otherwise.
pub fn points_match(a: &TruncatedPoint, b: &TruncatedPoint, depth: usize) -> bool {
    match a.eq_exact(b) {
        Some(v) => v,
        None => a.eq_at_depth(b, depth) == Some(true),
    }
}

/// Compose semi-groupoid elements: (m, x)(n, y) = (m + n, y) when
/// x = θ_n(y), verified at the depth.
pub fn sg_compose(
    act: &MonoidAction,
    p: &SemiGroupoidElement,
    q: &SemiGroupoidElement,
    depth: usize,
) -> Result<SemiGroupoidElement> {
    let map = act.action_map(&q.m)?;
    let d = depth.min(map.max_depth());
    let t = map.apply_point(&q.x, d)?;
    match p.x.eq_at_depth(&t, d) {
        Some(true) => Ok(SemiGroupoidElement {
            m: p.m.add(&q.m),
            x: q.x.clone(),
        }),
        Some(false) => Err(Error::NotComposable(format!(
            "θ_{}(y) differs from x within depth {d}",
            q.m
        ))),
        None => Err(Error::Undetermined {
            depth: d,
            context: "composability of semi-groupoid elements".into(),
        }),
    }
}

/// Construct a groupoid element after verifying θ_m(x) = θ_n(y) at the depth.
pub fn make_groupoid_element(
    act: &MonoidAction,
    x: TruncatedPoint,
    m: MonoidElement,
    n: MonoidElement,
    y: TruncatedPoint,
    depth: usize,
) -> Result<GroupoidElement> {
    let fm = act.action_map(&m)?;
    let fn_ = act.action_map(&n)?;
    let d = depth.min(fm.max_depth()).min(fn_.max_depth());
    let a = fm.apply_point(&x, d)?;
    let b = fn_.apply_point(&y, d)?;
    match a.eq_at_depth(&b, d) {
        Some(true) => Ok(GroupoidElement {
            g: m.sub(&n),
            witness: (m, n),
            x,
            y,
        }),
        Some(false) => Err(Error::NotRelated(format!(
            "θ_{m}(x) and θ_{n}(y) differ within depth {d}"
        ))),
        None => Err(Error::Undetermined {
            depth: d,
            context: "relation of the two points".into(),
        }),
    }
}

/// Compose groupoid elements: (x, g, y)(y, h, z) = (x, g + h, z). The
/// composite witness is rebalanced canonically: with witnesses (m1, n1) and
/// (m2, n2), take p = (m2 − n1) ∨ 0, q = (n1 − m2) ∨ 0 and use
/// (m1 + p, n2 + q).
pub fn compose_elements(
    act: &MonoidAction,
    a: &GroupoidElement,
    b: &GroupoidElement,
    depth: usize,
) -> Result<GroupoidElement> {
    match a.y.eq_at_depth(&b.x, depth) {
        Some(true) => {}
        Some(false) => {
            return Err(Error::NotComposable(format!(
                "d(a) and r(b) differ within depth {depth}"
            )))
        }
        None => {
            return Err(Error::Undetermined {
                depth,
                context: "composability of groupoid elements".into(),
            })
        }
    }
    let diff = a.witness.1.sub(&b.witness.0).neg(); // m2 − n1
    let p = diff.positive_part();
    let q = diff.negative_part();
    let m = a.witness.0.add(&p);
    let n = b.witness.1.add(&q);
    // The rebalanced witness must relate the outer points.
    make_groupoid_element(act, a.x.clone(), m, n, b.y.clone(), depth)
}

/// A basic bisection Σ(U, m, n, V).
#[derive(Clone, Debug)]
pub struct Bisection {
    pub u: ClopenSet,
    pub m: MonoidElement,
    pub n: MonoidElement,
    pub v: ClopenSet,
}

impl Bisection {
    pub fn new(u: ClopenSet, m: MonoidElement, n: MonoidElement, v: ClopenSet) -> Bisection {
        Bisection { u, m, n, v }
    }

    /// Check the defining invariants at a depth: θ_m injective on U, θ_n
    /// injective on V (both across the whole clopen set), and
    /// θ_m(U) = θ_n(V) as clopen sets.
    pub fn validate(&self, act: &MonoidAction, depth: usize) -> Result<()> {
        let fm = act.action_map(&self.m)?;
        let fn_ = act.action_map(&self.n)?;
        let d = depth.min(fm.max_depth()).min(fn_.max_depth());
        injective_on(&fm, &self.u, d)?;
        injective_on(&fn_, &self.v, d)?;
        let img_u = fm.image_clopen(&self.u, d)?;
        let img_v = fn_.image_clopen(&self.v, d)?;
        if !img_u.eq_as_sets(act.space(), &img_v) {
            return Err(Error::NotBisectionForm(format!(
                "θ_{}(U) and θ_{}(V) differ as clopen sets at depth {d}",
                self.m, self.n
            )));
        }
        Ok(())
    }
}

fn injective_on(f: &ProgressiveMap, set: &ClopenSet, depth: usize) -> Result<()> {
    let m = f.modulus(depth)?;
    let mut seen: BTreeMap<Word, Word> = BTreeMap::new();
    for w in set.words() {
        for ext in f.domain().extensions(w, m.max(w.len())) {
            let out = f.apply_word(ext.symbols(), depth)?;
            if let Some(prev) = seen.get(&out) {
                if *prev != ext {
                    return Err(Error::NotBisectionForm(format!(
                        "map is not injective at depth {depth}: '{}' and '{}' collide",
                        f.domain().format_word(prev),
                        f.domain().format_word(&ext)
                    )));
                }
            } else {
                seen.insert(out, ext);
            }
        }
    }
    Ok(())
}

/// Evaluate the partial homeomorphism of a bisection: the unique u ∈ U with
/// θ_m(u) = θ_n(z).
pub fn bisection_eval(
    act: &MonoidAction,
    b: &Bisection,
    z: &TruncatedPoint,
    depth: usize,
) -> Result<TruncatedPoint> {
    match b.v.contains_point(z) {
        Some(true) => {}
        Some(false) => return Err(Error::NotInV("the point is outside V".into())),
        None => {
            return Err(Error::Undetermined {
                depth: b.v.depth(),
                context: "membership in V".into(),
            })
        }
    }
    let fm = act.action_map(&b.m)?;
    let fn_ = act.action_map(&b.n)?;
    let d = depth.min(fm.max_depth()).min(fn_.max_depth());
    let t = fn_.apply_point(z, d)?;

    // Shift powers invert exactly: u = a · θ_n(z) for the unique admissible
    // length-p prefix a keeping u inside U.
    if let Some(p) = fm.as_shift_power() {
        let mut candidates = Vec::new();
        for a in act.space().admissible_words(p) {
            let u = t.prepend(&a);
            if u.admissible_in(act.space()) && b.u.contains_point(&u) == Some(true) {
                candidates.push(u);
            }
        }
        return match candidates.len() {
            1 => Ok(candidates.pop().expect("one candidate")),
            0 => Err(Error::InversionFailed(
                "no preimage in U; the bisection invariant is violated".into(),
            )),
            _ => Err(Error::InversionFailed(
                "ambiguous preimage in U; the bisection invariant is violated".into(),
            )),
        };
    }

    let target = t.truncate(d)?;
    let m_in = fm.modulus(d)?;
    let mut candidate: Option<Word> = None;
    for w in b.u.words() {
        for ext in act.space().extensions(w, m_in.max(w.len())) {
            if fm.apply_word(ext.symbols(), d)? == target {
                match &candidate {
                    None => candidate = Some(ext),
                    Some(prev) if *prev == ext => {}
                    Some(_) => {
                        return Err(Error::InversionFailed(
                            "ambiguous preimage in U; the bisection invariant is violated".into(),
                        ))
                    }
                }
            }
        }
    }
    candidate
        .map(TruncatedPoint::finite)
        .ok_or_else(|| Error::InversionFailed("no preimage at depth".into()))
}

/// Verify the groupoid axioms over every composable pair and triple found in
/// a sample of elements: unit and inverse laws, range/domain compatibility,
/// associativity, and multiplicativity of the canonical cocycle.
pub fn verify_axioms(
    act: &MonoidAction,
    elements: &[GroupoidElement],
    depth: usize,
) -> Result<Report> {
    let mut report = Report::new("groupoid_axioms");
    let rank = act.rank();

    for (i, e) in elements.iter().enumerate() {
        // Witness consistency g = m − n is structural; re-verify it as data.
        let name = format!("element[{i}].witness");
        if e.witness.0.sub(&e.witness.1) == e.g {
            report.push(Check::verified(name));
        } else {
            report.push(Check::refuted(name, format!("g ≠ m − n for g = {}", e.g)));
        }

        let unit_l = compose_elements(act, &e.range(), e, depth)?;
        push_eq(&mut report, format!("element[{i}].left_unit"), &unit_l, e, depth);
        let unit_r = compose_elements(act, e, &e.domain(), depth)?;
        push_eq(&mut report, format!("element[{i}].right_unit"), &unit_r, e, depth);

        let inv = e.inverse();
        let into_range = compose_elements(act, e, &inv, depth)?;
        push_eq(
            &mut report,
            format!("element[{i}].inverse_law"),
            &into_range,
            &e.range(),
            depth,
        );
        let into_domain = compose_elements(act, &inv, e, depth)?;
        push_eq(
            &mut report,
            format!("element[{i}].inverse_law_flipped"),
            &into_domain,
            &e.domain(),
            depth,
        );
        let _ = rank;
    }

    let mut composable = Vec::new();
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            if points_match(&a.y, &b.x, depth) {
                composable.push((i, j));
            }
        }
    }

    for &(i, j) in &composable {
        let ab = compose_elements(act, &elements[i], &elements[j], depth)?;
        let name = format!("pair[{i},{j}]");
        push_eq(
            &mut report,
            format!("{name}.range"),
            &ab.range(),
            &elements[i].range(),
            depth,
        );
        push_eq(
            &mut report,
            format!("{name}.domain"),
            &ab.domain(),
            &elements[j].domain(),
            depth,
        );
        let sum = canonical_cocycle(&elements[i]).add(&canonical_cocycle(&elements[j]));
        if canonical_cocycle(&ab) == sum {
            report.push(Check::verified(format!("{name}.cocycle_additive")));
        } else {
            report.push(Check::refuted(
                format!("{name}.cocycle_additive"),
                format!("c(ab) = {} but c(a)+c(b) = {}", ab.g, sum),
            ));
        }
    }

    for &(i, j) in &composable {
        for &(j2, k) in &composable {
            if j2 != j {
                continue;
            }
            let ab = compose_elements(act, &elements[i], &elements[j], depth)?;
            let bc = compose_elements(act, &elements[j], &elements[k], depth)?;
            let left = compose_elements(act, &ab, &elements[k], depth)?;
            let right = compose_elements(act, &elements[i], &bc, depth)?;
            push_eq(
                &mut report,
                format!("triple[{i},{j},{k}].associativity"),
                &left,
                &right,
                depth,
            );
        }
    }

    Ok(report)
}

fn push_eq(
    report: &mut Report,
    name: String,
    a: &GroupoidElement,
    b: &GroupoidElement,
    depth: usize,
) {
    match a.eq_at_depth(b, depth) {
        Some(true) => report.push(Check::verified(name)),
        Some(false) => report.push(Check::refuted(name, format!("differ within depth {depth}"))),
        None => report.push(Check::undetermined(
            name,
            format!("cannot compare at depth {depth}"),
        )),
    }
}

/// The isomorphism of the groupoid of a homeomorphism action with the
/// transformation groupoid of the extended group action: forward image
/// (x, g), inverse reconstruction (x, g, θ̃_g(x)) with the roundtrip
/// verified at the depth.
pub fn group_case_iso(
    act: &MonoidAction,
    e: &GroupoidElement,
    depth: usize,
) -> Result<(TruncatedPoint, GroupElement)> {
    let ext = act.extend_to_group(&e.g, depth)?;
    let d = depth.min(ext.max_depth());
    let y = ext.apply_point(&e.x, d)?;
    match y.eq_at_depth(&e.y, d) {
        Some(true) => Ok((e.x.clone(), e.g.clone())),
        Some(false) => Err(Error::RoundtripFailed(format!(
            "y differs from θ̃_g(x) within depth {d}"
        ))),
        None => Err(Error::Undetermined {
            depth: d,
            context: "roundtrip comparison".into(),
        }),
    }
}

/// Deterministic pseudo-random eventually periodic point of the space.
pub fn random_point(act: &MonoidAction, rng: &mut ChaCha8Rng) -> TruncatedPoint {
    let space = act.space();
    let depth = rng.gen_range(0..=3);
    let words = space.admissible_words(depth);
    let prefix = words.choose(rng).expect("admissible words exist").clone();
    let tails = space.enumerate_tails(prefix.last(), 2, 3);
    let (pre, per) = tails.choose(rng).expect("tails exist").clone();
    TruncatedPoint::eventually_periodic(prefix, pre, per)
}

/// Sample groupoid elements of a shift-power action in composable chains:
/// each chain contributes `chain_len` elements with consecutive ones
/// composable. Deterministic in the seed.
pub fn sample_shift_elements(
    act: &MonoidAction,
    chains: usize,
    chain_len: usize,
    degree_bound: u32,
    depth: usize,
    seed: u64,
) -> Result<Vec<GroupoidElement>> {
    let powers = act.shift_powers().ok_or_else(|| {
        Error::DomainMismatch("sampling chains needs a pure shift action".into())
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ball = crate::monoid::monoid_ball(act.rank(), degree_bound);
    let mut out = Vec::new();
    for _ in 0..chains {
        let mut lower = random_point(act, &mut rng);
        let mut chain = Vec::new();
        for _ in 0..chain_len {
            let m = ball.choose(&mut rng).unwrap().clone();
            let n = ball.choose(&mut rng).unwrap().clone();
            // Solve θ_m(x) = θ_n(y) for x given y: prepend an admissible
            // word of length a = Σ powers·m to t = θ_n(y).
            let a: usize = powers
                .iter()
                .zip(&m.0)
                .map(|(&p, &e)| p * e as usize)
                .sum();
            let t = act.action_map(&n)?.apply_point(&lower, depth)?;
            let mut prefixes: Vec<Word> = act
                .space()
                .admissible_words(a)
                .into_iter()
                .filter(|w| t.prepend(w).admissible_in(act.space()))
                .collect();
            prefixes.shuffle(&mut rng);
            let x = t.prepend(prefixes.first().ok_or_else(|| {
                Error::VerificationFailed("no admissible prefix for sampling".into())
            })?);
            let el = make_groupoid_element(act, x.clone(), m, n, lower.clone(), depth)?;
            chain.push(el);
            lower = x;
        }
        chain.reverse();
        out.extend(chain);
    }
    Ok(out)
}

/// Sample groupoid elements of an action by homeomorphisms as graphs of the
/// extended group action: (x, g, θ̃_g(x)).
pub fn sample_group_elements(
    act: &MonoidAction,
    count: usize,
    coord_bound: i64,
    depth: usize,
    seed: u64,
) -> Result<Vec<GroupoidElement>> {
    if !act.by_homeomorphisms() {
        return Err(Error::NotHomeomorphisms(
            "graph sampling needs a homeomorphism action".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let x = random_point(act, &mut rng);
        let g = GroupElement(
            (0..act.rank())
                .map(|_| rng.gen_range(-coord_bound..=coord_bound))
                .collect(),
        );
        let ext = act.extend_to_group(&g, depth)?;
        let d = depth.min(ext.max_depth());
        let y = ext.apply_point(&x, d)?;
        out.push(make_groupoidelement_graph(act, x, g, y, d)?);
    }
    Ok(out)
}

fn make_groupoidelement_graph(
    act: &MonoidAction,
    x: TruncatedPoint,
    g: GroupElement,
    y: TruncatedPoint,
    depth: usize,
) -> Result<GroupoidElement> {
    let m = g.positive_part();
    let n = g.negative_part();
    make_groupoid_element(act, x, m, n, y, depth)
}
