//! Actions of the free abelian monoid on a shift space by surjective local
//! homeomorphisms, together with orbit computations, the essential-freeness
//! checker, and the extension to a group action when every generator is a
//! homeomorphism.

use crate::error::{Error, Result};
use crate::monoid::{monoid_ball, GroupElement, MonoidElement};
use crate::point::TruncatedPoint;
use crate::progressive::{
    check_local_homeo, maps_equal, maps_equal_on, EqualityCertificate, LocalHomeoReport,
    ProgressiveMap,
};
use crate::sft::Sft;
use crate::word::Word;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct MonoidAction {
    name: String,
    space: Arc<Sft>,
    generators: Vec<ProgressiveMap>,
    inverses: Option<Vec<ProgressiveMap>>,
}

/// Per-pair certificate for the essential-freeness check.
#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub pair: (MonoidElement, MonoidElement),
    pub depth: usize,
    /// True when the verdict comes from the exact criterion for pure shift
    /// actions rather than a depth-bounded comparison.
    pub exact: bool,
    pub status: FreenessStatus,
}

#[derive(Clone, Debug)]
pub enum FreenessStatus {
    /// One separating eventually periodic point per depth cylinder.
    Free { witnesses: Vec<(Word, TruncatedPoint)> },
    /// A cylinder on which the two maps verify as equal at the depth.
    NotFree { cylinder: Word },
}

impl FreenessCertificate {
    pub fn is_free(&self) -> bool {
        matches!(self.status, FreenessStatus::Free { .. })
    }
}

#[derive(Clone, Debug)]
pub struct FreenessReport {
    pub degree_bound: u32,
    pub depth: usize,
    pub certificates: Vec<FreenessCertificate>,
}

impl FreenessReport {
    pub fn all_free(&self) -> bool {
        self.certificates.iter().all(FreenessCertificate::is_free)
    }

    pub fn first_failure(&self) -> Option<&FreenessCertificate> {
        self.certificates.iter().find(|c| !c.is_free())
    }
}

/// Aggregate report for the action axioms at a depth.
#[derive(Clone, Debug)]
pub struct ActionAxiomReport {
    pub depth: usize,
    pub identity: EqualityCertificate,
    pub commutativity: Vec<(usize, usize, EqualityCertificate)>,
    pub local_homeo: Vec<LocalHomeoReport>,
    pub inverse_roundtrips: Vec<(usize, EqualityCertificate, EqualityCertificate)>,
}

impl ActionAxiomReport {
    pub fn passed(&self) -> bool {
        self.identity.is_verified()
            && self.commutativity.iter().all(|(_, _, c)| c.is_verified())
            && self.local_homeo.iter().all(LocalHomeoReport::passed)
            && self
                .inverse_roundtrips
                .iter()
                .all(|(_, a, b)| a.is_verified() && b.is_verified())
    }
}

impl MonoidAction {
    pub fn new(
        name: &str,
        space: Arc<Sft>,
        generators: Vec<ProgressiveMap>,
        inverses: Option<Vec<ProgressiveMap>>,
    ) -> Result<MonoidAction> {
        if generators.is_empty() {
            return Err(Error::BadDocument("action needs at least one generator".into()));
        }
        for g in &generators {
            if !g.domain().same_presentation(&space) || !g.codomain().same_presentation(&space) {
                return Err(Error::DomainMismatch(format!(
                    "generator of '{name}' does not act on '{}'",
                    space.name()
                )));
            }
        }
        if let Some(inv) = &inverses {
            if inv.len() != generators.len() {
                return Err(Error::NotHomeomorphisms(
                    "need one inverse per generator".into(),
                ));
            }
            for g in inv {
                if !g.domain().same_presentation(&space)
                    || !g.codomain().same_presentation(&space)
                {
                    return Err(Error::DomainMismatch(format!(
                        "inverse generator of '{name}' does not act on '{}'",
                        space.name()
                    )));
                }
            }
        }
        Ok(MonoidAction {
            name: name.to_string(),
            space,
            generators,
            inverses,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Arc<Sft> {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[ProgressiveMap] {
        &self.generators
    }

    pub fn by_homeomorphisms(&self) -> bool {
        self.inverses.is_some()
    }

    /// When every generator is a power of the shift, the vector of powers.
    pub fn shift_powers(&self) -> Option<Vec<usize>> {
        self.generators
            .iter()
            .map(ProgressiveMap::as_shift_power)
            .collect()
    }

    fn check_rank(&self, m: &MonoidElement) -> Result<()> {
        if m.rank() != self.rank() {
            return Err(Error::DomainMismatch(format!(
                "element of rank {} against action of rank {}",
                m.rank(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// The map of a monoid element: generators composed in coordinate order.
    pub fn action_map(&self, m: &MonoidElement) -> Result<ProgressiveMap> {
        self.check_rank(m)?;
        let mut acc = ProgressiveMap::identity(&self.space);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = self.generators[i].compose(&acc)?;
            }
        }
        Ok(acc)
    }

    /// Inverse of the map of a monoid element (homeomorphism actions only).
    pub fn inverse_map(&self, m: &MonoidElement) -> Result<ProgressiveMap> {
        self.check_rank(m)?;
        let inv = self.inverses.as_ref().ok_or_else(|| {
            Error::NotHomeomorphisms(format!("action '{}' has no tabulated inverses", self.name))
        })?;
        let mut acc = ProgressiveMap::identity(&self.space);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = inv[i].compose(&acc)?;
            }
        }
        Ok(acc)
    }

    /// The group extension θ̃_g = θ_n⁻¹ ∘ θ_m for g = m − n in canonical
    /// reduced form, with a well-definedness check across a second
    /// factorization.
    pub fn extend_to_group(&self, g: &GroupElement, depth: usize) -> Result<ProgressiveMap> {
        if g.rank() != self.rank() {
            return Err(Error::DomainMismatch(format!(
                "element of rank {} against action of rank {}",
                g.rank(),
                self.rank()
            )));
        }
        let m = g.positive_part();
        let n = g.negative_part();
        let canonical = self.inverse_map(&n)?.compose(&self.action_map(&m)?)?;
        let ones = MonoidElement(vec![1; self.rank()]);
        let alt = self
            .inverse_map(&n.add(&ones))?
            .compose(&self.action_map(&m.add(&ones))?)?;
        let d = depth.min(canonical.max_depth()).min(alt.max_depth());
        let cert = maps_equal(&canonical, &alt, d)?;
        if !cert.is_verified() {
            return Err(Error::VerificationFailed(format!(
                "two factorizations of g = {g} disagree at depth {d}; the supplied inverses are inconsistent"
            )));
        }
        Ok(canonical)
    }

    /// Check θ_e = id, generator commutativity and the local-homeomorphism
    /// property of every generator; failures land in the report.
    pub fn verify_action_axioms(&self, depth: usize) -> Result<ActionAxiomReport> {
        let id = ProgressiveMap::identity(&self.space);
        let zero_map = self.action_map(&MonoidElement::zero(self.rank()))?;
        let identity = maps_equal(&zero_map, &id, depth.min(zero_map.max_depth()))?;

        let mut commutativity = Vec::new();
        for i in 0..self.rank() {
            for j in (i + 1)..self.rank() {
                let fg = self.generators[i].compose(&self.generators[j])?;
                let gf = self.generators[j].compose(&self.generators[i])?;
                let d = depth.min(fg.max_depth()).min(gf.max_depth());
                commutativity.push((i, j, maps_equal(&fg, &gf, d)?));
            }
        }

        let mut local_homeo = Vec::new();
        for g in &self.generators {
            local_homeo.push(check_local_homeo(g, depth.min(g.max_depth()))?);
        }

        let mut inverse_roundtrips = Vec::new();
        if let Some(invs) = &self.inverses {
            for (i, inv) in invs.iter().enumerate() {
                let back = inv.compose(&self.generators[i])?;
                let forth = self.generators[i].compose(inv)?;
                let d = depth.min(back.max_depth()).min(forth.max_depth());
                inverse_roundtrips.push((
                    i,
                    maps_equal(&back, &id, d)?,
                    maps_equal(&forth, &id, d)?,
                ));
            }
        }

        Ok(ActionAxiomReport {
            depth,
            identity,
            commutativity,
            local_homeo,
            inverse_roundtrips,
        })
    }

    /// The finite set {θ_m(x) : |m| ≤ degree_bound} as depth-truncations,
    /// deduplicated at the depth.
    pub fn one_sided_orbit(
        &self,
        x: &TruncatedPoint,
        degree_bound: u32,
        depth: usize,
    ) -> Result<Vec<TruncatedPoint>> {
        if !x.has_tail() {
            return Err(Error::Undetermined {
                depth,
                context: "orbit computation needs an eventually periodic point".into(),
            });
        }
        let mut seen: BTreeMap<Word, TruncatedPoint> = BTreeMap::new();
        for m in monoid_ball(self.rank(), degree_bound) {
            let map = self.action_map(&m)?;
            let y = map.apply_point(x, depth.min(map.max_depth()))?;
            let key = y.truncate(depth.min(map.max_depth()))?;
            seen.entry(key).or_insert(y);
        }
        Ok(seen.into_values().collect())
    }

    /// Least (m, n) in graded-lexicographic order with θ_m(x) = θ_n(y)
    /// verified at the depth; `None` if no pair within the bound works.
    pub fn orbit_related(
        &self,
        x: &TruncatedPoint,
        y: &TruncatedPoint,
        degree_bound: u32,
        depth: usize,
    ) -> Result<Option<(MonoidElement, MonoidElement)>> {
        if !x.has_tail() || !y.has_tail() {
            return Err(Error::Undetermined {
                depth,
                context: "orbit relation needs eventually periodic points".into(),
            });
        }
        let ball = monoid_ball(self.rank(), degree_bound);
        let mut pairs: Vec<(MonoidElement, MonoidElement)> = Vec::new();
        for m in &ball {
            for n in &ball {
                pairs.push((m.clone(), n.clone()));
            }
        }
        pairs.sort_by_key(|(m, n)| {
            (
                m.degree() + n.degree(),
                m.grlex_key(),
                n.grlex_key(),
            )
        });
        for (m, n) in pairs {
            let fm = self.action_map(&m)?;
            let fn_ = self.action_map(&n)?;
            let d = depth.min(fm.max_depth()).min(fn_.max_depth());
            let a = fm.apply_point(x, d)?;
            let b = fn_.apply_point(y, d)?;
            if a.eq_at_depth(&b, d) == Some(true) {
                return Ok(Some((m, n)));
            }
        }
        Ok(None)
    }

    /// Decide whether the interior of {x : θ_m(x) = θ_n(x)} is empty.
    ///
    /// For pure shift actions the criterion is exact: distinct shift powers
    /// always separate on a space without isolated points, and identical
    /// powers mean the maps coincide. For general actions the verdict is
    /// depth-bounded.
    pub fn equalizer_interior_empty(
        &self,
        m: &MonoidElement,
        n: &MonoidElement,
        depth: usize,
        period_bound: usize,
    ) -> Result<FreenessCertificate> {
        if m == n {
            return Err(Error::BadDocument(
                "equalizer check needs distinct monoid elements".into(),
            ));
        }
        let fm = self.action_map(m)?;
        let fn_ = self.action_map(n)?;
        let d = depth.min(fm.max_depth()).min(fn_.max_depth());

        if let Some(powers) = self.shift_powers() {
            let a: usize = powers
                .iter()
                .zip(&m.0)
                .map(|(&p, &e)| p * e as usize)
                .sum();
            let b: usize = powers
                .iter()
                .zip(&n.0)
                .map(|(&p, &e)| p * e as usize)
                .sum();
            if a == b {
                return Ok(FreenessCertificate {
                    pair: (m.clone(), n.clone()),
                    depth: d,
                    exact: true,
                    status: FreenessStatus::NotFree {
                        cylinder: Word::empty(),
                    },
                });
            }
            let mut witnesses = Vec::new();
            for w in self.space.admissible_words(depth) {
                let x = self
                    .separating_point(&fm, &fn_, &w, d, period_bound)
                    .or_else(|| {
                        let widen = period_bound + self.space.num_symbols() + a.abs_diff(b) + 1;
                        self.separating_point(&fm, &fn_, &w, d, widen)
                    })
                    .ok_or_else(|| {
                        Error::VerificationFailed(format!(
                            "no separating point found in cylinder '{}' within the period bound",
                            self.space.format_word(&w)
                        ))
                    })?;
                witnesses.push((w, x));
            }
            return Ok(FreenessCertificate {
                pair: (m.clone(), n.clone()),
                depth: d,
                exact: true,
                status: FreenessStatus::Free { witnesses },
            });
        }

        let mut witnesses = Vec::new();
        for w in self.space.admissible_words(depth) {
            let cert = maps_equal_on(&fm, &fn_, d, &w)?;
            match cert.witness {
                None => {
                    return Ok(FreenessCertificate {
                        pair: (m.clone(), n.clone()),
                        depth: d,
                        exact: false,
                        status: FreenessStatus::NotFree { cylinder: w },
                    })
                }
                Some(u) => {
                    let x = TruncatedPoint::canonical_in_cylinder(&self.space, &u);
                    witnesses.push((w, x));
                }
            }
        }
        Ok(FreenessCertificate {
            pair: (m.clone(), n.clone()),
            depth: d,
            exact: false,
            status: FreenessStatus::Free { witnesses },
        })
    }

    fn separating_point(
        &self,
        fm: &ProgressiveMap,
        fn_: &ProgressiveMap,
        cylinder: &Word,
        depth: usize,
        period_bound: usize,
    ) -> Option<TruncatedPoint> {
        let pre_slack = 2.min(period_bound);
        for (pre, per) in self
            .space
            .enumerate_tails(cylinder.last(), pre_slack, period_bound)
        {
            let x = TruncatedPoint::eventually_periodic(cylinder.clone(), pre, per);
            let a = fm.apply_point(&x, depth).ok()?;
            let b = fn_.apply_point(&x, depth).ok()?;
            let differ = match a.eq_exact(&b) {
                Some(v) => !v,
                None => a.eq_at_depth(&b, depth) == Some(false),
            };
            if differ {
                return Some(x);
            }
        }
        None
    }

    /// Run the equalizer check over every distinct pair in the degree ball,
    /// larger element first, in graded-lexicographic order.
    pub fn essentially_free(
        &self,
        degree_bound: u32,
        depth: usize,
        period_bound: usize,
    ) -> Result<FreenessReport> {
        let ball = monoid_ball(self.rank(), degree_bound);
        let mut pairs = Vec::new();
        for i in 1..ball.len() {
            for j in 0..i {
                pairs.push((ball[i].clone(), ball[j].clone()));
            }
        }
        let certificates: Result<Vec<_>> = pairs
            .par_iter()
            .map(|(m, n)| self.equalizer_interior_empty(m, n, depth, period_bound))
            .collect();
        Ok(FreenessReport {
            degree_bound,
            depth,
            certificates: certificates?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn action_map_of_zero_is_identity() {
        let act = standard::shift_action(&standard::f2());
        let theta_e = act.action_map(&MonoidElement(vec![0])).unwrap();
        let id = ProgressiveMap::identity(act.space());
        assert!(maps_equal(&theta_e, &id, 5).unwrap().is_verified());
    }

    #[test]
    fn iterated_shift_matches_square() {
        let act = standard::shift_action(&standard::f2());
        let theta2 = act.action_map(&MonoidElement(vec![2])).unwrap();
        let sigma = ProgressiveMap::shift(act.space());
        let square = sigma.compose(&sigma).unwrap();
        assert!(maps_equal(&theta2, &square, 4).unwrap().is_verified());
    }

    #[test]
    fn rank_two_composite_is_order_independent() {
        // Generators σ and the Φ2-conjugated shift on F2.
        let act = standard::conjugated_pair_action();
        let m = MonoidElement(vec![1, 1]);
        let composite = act.action_map(&m).unwrap();
        let other = act.generators()[0]
            .compose(&act.generators()[1])
            .unwrap();
        let d = 4.min(composite.max_depth()).min(other.max_depth());
        assert!(maps_equal(&composite, &other, d).unwrap().is_verified());
    }

    #[test]
    fn axioms_pass_on_golden_mean_shift() {
        let act = standard::shift_action(&standard::golden_mean());
        let report = act.verify_action_axioms(4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn non_commuting_generators_are_refuted_with_witness() {
        let act = standard::broken_commutativity_action();
        let report = act.verify_action_axioms(3).unwrap();
        assert!(!report.passed());
        let (_, _, cert) = &report.commutativity[0];
        assert!(!cert.is_verified());
        assert!(cert.witness.is_some());
    }

    #[test]
    fn non_surjective_generator_fails_local_homeo() {
        let act = standard::collapse_action();
        let report = act.verify_action_axioms(3).unwrap();
        assert!(!report.passed());
        assert!(!report.local_homeo[0].surjective);
    }

    #[test]
    fn orbit_of_fixed_point_is_singleton() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::periodic(Word(vec![0]));
        let orbit = act.one_sided_orbit(&x, 3, 6).unwrap();
        assert_eq!(orbit.len(), 1);
    }

    #[test]
    fn orbit_of_period_two_point() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::periodic(Word(vec![0, 1]));
        let orbit = act.one_sided_orbit(&x, 2, 6).unwrap();
        assert_eq!(orbit.len(), 2); // (01)^inf and (10)^inf
    }

    #[test]
    fn orbit_of_transient_point() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::eventually_periodic(
            Word(vec![0, 0, 1]),
            Word::empty(),
            Word(vec![0]),
        );
        let orbit = act.one_sided_orbit(&x, 3, 6).unwrap();
        assert_eq!(orbit.len(), 4); // 0010^inf, 010^inf, 10^inf, 0^inf
    }

    #[test]
    fn orbit_related_is_reflexive_with_trivial_pair() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::periodic(Word(vec![0, 1]));
        let (m, n) = act.orbit_related(&x, &x, 2, 6).unwrap().unwrap();
        assert!(m.is_zero() && n.is_zero());
    }

    #[test]
    fn orbit_related_finds_shift_pair() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::eventually_periodic(Word(vec![1]), Word::empty(), Word(vec![0]));
        let y = TruncatedPoint::periodic(Word(vec![0]));
        let (m, n) = act.orbit_related(&x, &y, 2, 6).unwrap().unwrap();
        assert_eq!((m, n), (MonoidElement(vec![1]), MonoidElement(vec![0])));
        // The alternating points are related both ways; the graded-lex
        // least pair is (0,1) since x = σ(y) as well.
        let x = TruncatedPoint::periodic(Word(vec![0, 1]));
        let y = TruncatedPoint::periodic(Word(vec![1, 0]));
        let (m, n) = act.orbit_related(&x, &y, 2, 6).unwrap().unwrap();
        assert_eq!((m, n), (MonoidElement(vec![0]), MonoidElement(vec![1])));
    }

    #[test]
    fn orbit_related_reverifies_pointwise() {
        let act = standard::shift_action(&standard::f2());
        let x = TruncatedPoint::eventually_periodic(Word(vec![1, 1]), Word::empty(), Word(vec![0]));
        let y = TruncatedPoint::periodic(Word(vec![0]));
        let (m, n) = act.orbit_related(&x, &y, 3, 6).unwrap().unwrap();
        let a = act.action_map(&m).unwrap().apply_point(&x, 6).unwrap();
        let b = act.action_map(&n).unwrap().apply_point(&y, 6).unwrap();
        assert_eq!(a.eq_at_depth(&b, 6), Some(true));
    }

    #[test]
    fn shift_action_is_free_and_witnesses_reverify() {
        let act = standard::shift_action(&standard::f2());
        let cert = act
            .equalizer_interior_empty(&MonoidElement(vec![1]), &MonoidElement(vec![0]), 2, 4)
            .unwrap();
        assert!(cert.is_free());
        assert!(cert.exact);
        let fm = act.action_map(&MonoidElement(vec![1])).unwrap();
        let fn_ = act.action_map(&MonoidElement(vec![0])).unwrap();
        if let FreenessStatus::Free { witnesses } = &cert.status {
            assert_eq!(witnesses.len(), 4); // cylinders of depth 2
            for (w, x) in witnesses {
                assert_eq!(x.truncate(w.len()).unwrap(), *w);
                let a = fm.apply_point(x, 6).unwrap();
                let b = fn_.apply_point(x, 6).unwrap();
                assert_eq!(a.eq_exact(&b), Some(false));
            }
        }
    }

    #[test]
    fn golden_mean_equalizer_is_free() {
        let act = standard::shift_action(&standard::golden_mean());
        let cert = act
            .equalizer_interior_empty(&MonoidElement(vec![2]), &MonoidElement(vec![1]), 3, 4)
            .unwrap();
        assert!(cert.is_free());
        assert!(cert.exact);
    }

    #[test]
    fn duplicated_generators_are_not_free() {
        let act = standard::duplicated_generator_action();
        let report = act.essentially_free(3, 4, 4).unwrap();
        assert!(!report.all_free());
        let fail = report.first_failure().unwrap();
        assert_eq!(
            fail.pair,
            (MonoidElement(vec![1, 0]), MonoidElement(vec![0, 1]))
        );
        assert!(matches!(
            fail.status,
            FreenessStatus::NotFree { ref cylinder } if cylinder.is_empty()
        ));
    }

    #[test]
    fn f2_shift_free_up_to_bound() {
        let act = standard::shift_action(&standard::f2());
        let report = act.essentially_free(3, 4, 4).unwrap();
        assert!(report.all_free());
    }

    #[test]
    fn group_extension_identities() {
        let act = standard::odometer_action(8).unwrap();
        let id = ProgressiveMap::identity(act.space());
        // g = 0 → identity
        let zero = act.extend_to_group(&GroupElement(vec![0]), 4).unwrap();
        assert!(maps_equal(&zero, &id, 4.min(zero.max_depth())).unwrap().is_verified());
        // g = m in the monoid → the monoid map itself
        let plus = act.extend_to_group(&GroupElement(vec![2]), 4).unwrap();
        let theta2 = act.action_map(&MonoidElement(vec![2])).unwrap();
        let d = 4.min(plus.max_depth()).min(theta2.max_depth());
        assert!(maps_equal(&plus, &theta2, d).unwrap().is_verified());
        // g = −1 → the tabulated inverse
        let minus = act.extend_to_group(&GroupElement(vec![-1]), 4).unwrap();
        let inv = act.inverse_map(&MonoidElement(vec![1])).unwrap();
        let d = 4.min(minus.max_depth()).min(inv.max_depth());
        assert!(maps_equal(&minus, &inv, d).unwrap().is_verified());
    }

    #[test]
    fn group_extension_needs_inverses() {
        let act = standard::shift_action(&standard::f2());
        let err = act.extend_to_group(&GroupElement(vec![-1]), 4).unwrap_err();
        assert!(matches!(err, Error::NotHomeomorphisms(_)));
    }

    #[test]
    fn anti_homomorphism_law_within_bound() {
        let act = standard::shift_action(&standard::golden_mean());
        for m in monoid_ball(1, 2) {
            for n in monoid_ball(1, 2) {
                if m.degree() + n.degree() > 3 {
                    continue;
                }
                let lhs = act.action_map(&n.add(&m)).unwrap();
                let rhs = act
                    .action_map(&n)
                    .unwrap()
                    .compose(&act.action_map(&m).unwrap())
                    .unwrap();
                let d = 4.min(lhs.max_depth()).min(rhs.max_depth());
                assert!(maps_equal(&lhs, &rhs, d).unwrap().is_verified());
            }
        }
    }
}
