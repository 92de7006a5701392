//! Finitely tabulated continuous maps between shift spaces.
//!
//! A progressive map carries an explicit modulus of continuity: to produce
//! `n` output symbols it reads `m(n)` input symbols. Two presentations are
//! supported: depth-indexed tables up to a declared maximal output depth, and
//! sliding-block rules (shift-commuting maps with a finite window), which
//! determine the map completely and work at every depth.
//!
//! Equality of maps is decided exactly at a declared depth by enumerating
//! admissible input words; refutations always come with a least witness.

use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::point::TruncatedPoint;
use crate::sft::Sft;
use crate::word::{Symbol, Word};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Effective "no bound" for sliding-block maps.
pub const UNBOUNDED_DEPTH: usize = usize::MAX / 4;

#[derive(Clone, Debug)]
pub struct ProgressiveMap {
    domain: Arc<Sft>,
    codomain: Arc<Sft>,
    kind: MapKind,
}

#[derive(Clone, Debug)]
enum MapKind {
    Table {
        /// `moduli[n]` = input depth needed for output depth `n`; entry 0 is 0.
        moduli: Vec<usize>,
        /// `tables[n]` maps admissible length-`moduli[n]` words to length-`n`
        /// words; entry 0 is the trivial table.
        tables: Vec<BTreeMap<Word, Word>>,
    },
    Sliding {
        window: usize,
        rule: BTreeMap<Word, Symbol>,
    },
}

/// Outcome of a depth-bounded equality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqStatus {
    VerifiedAtDepth,
    Refuted,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct EqualityCertificate {
    pub status: EqStatus,
    pub depth: usize,
    pub witness: Option<Word>,
}

impl EqualityCertificate {
    pub fn verified(depth: usize) -> Self {
        EqualityCertificate {
            status: EqStatus::VerifiedAtDepth,
            depth,
            witness: None,
        }
    }

    pub fn refuted(depth: usize, witness: Word) -> Self {
        EqualityCertificate {
            status: EqStatus::Refuted,
            depth,
            witness: Some(witness),
        }
    }

    pub fn undetermined(depth: usize) -> Self {
        EqualityCertificate {
            status: EqStatus::Undetermined,
            depth,
            witness: None,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.status == EqStatus::VerifiedAtDepth
    }
}

/// A cylinder on which injectivity at depth could not be certified, with the
/// colliding pair of input words.
#[derive(Clone, Debug)]
pub struct InjectivityFailure {
    pub cylinder: Word,
    pub left: Word,
    pub right: Word,
}

/// Result of `check_local_homeo`: a cylinder partition on which the map
/// separates points distinguishable at the checked depth, plus a
/// surjectivity-at-depth status.
#[derive(Clone, Debug)]
pub struct LocalHomeoReport {
    pub depth: usize,
    pub injective: bool,
    pub partition: Vec<Word>,
    pub injectivity_failures: Vec<InjectivityFailure>,
    pub surjective: bool,
    pub missing_words: Vec<Word>,
}

impl LocalHomeoReport {
    pub fn passed(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn partition_as_clopen(&self) -> Vec<ClopenSet> {
        self.partition
            .iter()
            .map(|w| ClopenSet::cylinder(w.clone()))
            .collect()
    }
}

impl ProgressiveMap {
    /// Identity map of a space: window-1 sliding rule.
    pub fn identity(sft: &Arc<Sft>) -> ProgressiveMap {
        let rule = (0..sft.num_symbols() as Symbol)
            .map(|s| (Word(vec![s]), s))
            .collect();
        ProgressiveMap {
            domain: Arc::clone(sft),
            codomain: Arc::clone(sft),
            kind: MapKind::Sliding { window: 1, rule },
        }
    }

    /// The shift map, dropping the first symbol: window-2 rule `ab ↦ b`.
    pub fn shift(sft: &Arc<Sft>) -> ProgressiveMap {
        let mut rule = BTreeMap::new();
        for a in 0..sft.num_symbols() as Symbol {
            for b in 0..sft.num_symbols() as Symbol {
                if sft.allowed(a, b) {
                    rule.insert(Word(vec![a, b]), b);
                }
            }
        }
        ProgressiveMap {
            domain: Arc::clone(sft),
            codomain: Arc::clone(sft),
            kind: MapKind::Sliding { window: 2, rule },
        }
    }

    /// A sliding-block map from an explicit window rule. The rule must be
    /// total on admissible windows, and consecutive windows must produce
    /// allowed 2-blocks of the codomain.
    pub fn sliding_block(
        domain: &Arc<Sft>,
        codomain: &Arc<Sft>,
        window: usize,
        rule: BTreeMap<Word, Symbol>,
    ) -> Result<ProgressiveMap> {
        if window == 0 {
            return Err(Error::BadDocument("window must be at least 1".into()));
        }
        for w in domain.admissible_words(window) {
            match rule.get(&w) {
                None => {
                    return Err(Error::TableIncomplete(format!(
                        "window '{}'",
                        domain.format_word(&w)
                    )))
                }
                Some(&s) => {
                    if s as usize >= codomain.num_symbols() {
                        return Err(Error::BadSymbol(format!(
                            "rule output {s} out of range for '{}'",
                            codomain.name()
                        )));
                    }
                }
            }
        }
        for (k, _) in rule.iter() {
            if k.len() != window || !domain.word_admissible(k.symbols()) {
                return Err(Error::BadSymbol(format!(
                    "rule key of length {} is not an admissible window",
                    k.len()
                )));
            }
        }
        for u in domain.admissible_words(window + 1) {
            let a = rule[&u.prefix(window)];
            let b = rule[&u.suffix_from(1)];
            if !codomain.allowed(a, b) {
                return Err(Error::BadSymbol(format!(
                    "rule image of '{}' contains the disallowed block {}{}",
                    domain.format_word(&u),
                    codomain.label(a),
                    codomain.label(b),
                )));
            }
        }
        Ok(ProgressiveMap {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            kind: MapKind::Sliding { window, rule },
        })
    }

    /// A depth-tabulated map. `moduli` lists `m(n)` for `n = 1..=n_max`;
    /// `tables[i]` is the table for output depth `i + 1`.
    pub fn from_tables(
        domain: &Arc<Sft>,
        codomain: &Arc<Sft>,
        moduli: Vec<usize>,
        tables: Vec<BTreeMap<Word, Word>>,
    ) -> Result<ProgressiveMap> {
        if moduli.is_empty() || moduli.len() != tables.len() {
            return Err(Error::BadDocument(
                "need one table per declared output depth".into(),
            ));
        }
        let mut full_moduli = vec![0usize];
        full_moduli.extend(&moduli);
        let mut full_tables = vec![BTreeMap::new()];
        full_tables.extend(tables);
        let map = ProgressiveMap {
            domain: Arc::clone(domain),
            codomain: Arc::clone(codomain),
            kind: MapKind::Table {
                moduli: full_moduli,
                tables: full_tables,
            },
        };
        map.validate_tables()?;
        Ok(map)
    }

    fn validate_tables(&self) -> Result<()> {
        let MapKind::Table { moduli, tables } = &self.kind else {
            return Ok(());
        };
        let n_max = moduli.len() - 1;
        for n in 1..=n_max {
            if moduli[n] < moduli[n - 1] {
                return Err(Error::BadDocument(format!(
                    "modulus must be monotone: m({n}) < m({})",
                    n - 1
                )));
            }
            let words = self.domain.admissible_words(moduli[n]);
            let table = &tables[n];
            if table.len() != words.len() {
                for k in table.keys() {
                    if k.len() != moduli[n] || !self.domain.word_admissible(k.symbols()) {
                        return Err(Error::BadSymbol(format!(
                            "table {n} keyed by a word that is not admissible at depth {}",
                            moduli[n]
                        )));
                    }
                }
            }
            for w in &words {
                let out = table.get(w).ok_or_else(|| {
                    Error::TableIncomplete(format!(
                        "depth-{n} table lacks '{}'",
                        self.domain.format_word(w)
                    ))
                })?;
                if out.len() != n || !self.codomain.word_admissible(out.symbols()) {
                    return Err(Error::BadSymbol(format!(
                        "output '{}' at depth {n} is not admissible",
                        self.codomain.format_word(out)
                    )));
                }
                if n > 1 {
                    let prev = &tables[n - 1][&w.prefix(moduli[n - 1])];
                    if !prev.is_prefix_of(out) {
                        return Err(Error::BadDocument(format!(
                            "prefix consistency fails at depth {n} on '{}'",
                            self.domain.format_word(w)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &Arc<Sft> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Sft> {
        &self.codomain
    }

    /// Largest supported output depth.
    pub fn max_depth(&self) -> usize {
        match &self.kind {
            MapKind::Table { moduli, .. } => moduli.len() - 1,
            MapKind::Sliding { .. } => UNBOUNDED_DEPTH,
        }
    }

    /// Sliding-block maps determine the underlying continuous map completely.
    pub fn is_complete(&self) -> bool {
        matches!(self.kind, MapKind::Sliding { .. })
    }

    pub fn sliding_window(&self) -> Option<usize> {
        match &self.kind {
            MapKind::Sliding { window, .. } => Some(*window),
            MapKind::Table { .. } => None,
        }
    }

    /// Input depth required to determine `depth` output symbols.
    pub fn modulus(&self, depth: usize) -> Result<usize> {
        if depth == 0 {
            return Ok(0);
        }
        match &self.kind {
            MapKind::Table { moduli, .. } => {
                if depth >= moduli.len() {
                    Err(Error::DepthUnsupported {
                        requested: depth,
                        max: moduli.len() - 1,
                        context: "tabulated map".into(),
                    })
                } else {
                    Ok(moduli[depth])
                }
            }
            MapKind::Sliding { window, .. } => Ok(depth + window - 1),
        }
    }

    /// Detect a pure power of the shift: `window w` rule returning the symbol
    /// at a fixed offset `p` is the map σ^p.
    pub fn as_shift_power(&self) -> Option<usize> {
        let MapKind::Sliding { window, rule } = &self.kind else {
            return None;
        };
        if !self.domain.same_presentation(&self.codomain) {
            return None;
        }
        (0..*window).find(|&p| rule.iter().all(|(w, &s)| w.symbols()[p] == s))
    }

    /// The length-`depth` output determined by an input word of length at
    /// least `modulus(depth)`.
    pub fn apply_word(&self, input: &[Symbol], depth: usize) -> Result<Word> {
        let m = self.modulus(depth)?;
        if input.len() < m {
            return Err(Error::Undetermined {
                depth,
                context: format!("need {m} input symbols, have {}", input.len()),
            });
        }
        if depth == 0 {
            return Ok(Word::empty());
        }
        match &self.kind {
            MapKind::Table { tables, .. } => tables[depth]
                .get(&Word(input[..m].to_vec()))
                .cloned()
                .ok_or_else(|| {
                    Error::TableIncomplete(format!(
                        "no entry for '{}' at depth {depth}",
                        self.domain.format_word(&Word(input[..m].to_vec()))
                    ))
                }),
            MapKind::Sliding { window, rule } => {
                let mut out = Vec::with_capacity(depth);
                for i in 0..depth {
                    let win = Word(input[i..i + window].to_vec());
                    match rule.get(&win) {
                        Some(&s) => out.push(s),
                        None => {
                            return Err(Error::TableIncomplete(format!(
                                "no rule for window '{}'",
                                self.domain.format_word(&win)
                            )))
                        }
                    }
                }
                Ok(Word(out))
            }
        }
    }

    /// Evaluate on a point. Sliding-block maps propagate eventual
    /// periodicity exactly; tabulated maps return the requested truncation.
    pub fn apply_point(&self, x: &TruncatedPoint, depth: usize) -> Result<TruncatedPoint> {
        if let (MapKind::Sliding { window, rule }, Some(tail)) = (&self.kind, x.tail()) {
            let head = x.prefix().len() + tail.preperiod.len();
            let period = tail.period.len();
            let at = |i: usize| x.symbol_at(i).expect("tailed point is total");
            let eval = |i: usize| -> Result<Symbol> {
                let win: Word = (i..i + window).map(at).collect();
                rule.get(&win).copied().ok_or_else(|| {
                    Error::TableIncomplete(format!(
                        "no rule for window '{}'",
                        self.domain.format_word(&win)
                    ))
                })
            };
            let mut head_syms = Vec::with_capacity(head);
            for i in 0..head {
                head_syms.push(eval(i)?);
            }
            let mut per_syms = Vec::with_capacity(period);
            for i in head..head + period {
                per_syms.push(eval(i)?);
            }
            return Ok(TruncatedPoint::eventually_periodic(
                Word(head_syms),
                Word::empty(),
                Word(per_syms),
            ));
        }
        let m = self.modulus(depth)?;
        let input = x.truncate(m)?;
        Ok(TruncatedPoint::finite(
            self.apply_word(input.symbols(), depth)?,
        ))
    }

    /// Composite `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ProgressiveMap) -> Result<ProgressiveMap> {
        if !other.codomain.same_presentation(&self.domain) {
            return Err(Error::DomainMismatch(format!(
                "cannot compose: '{}' feeds '{}'",
                other.codomain.name(),
                self.domain.name()
            )));
        }
        if let (
            MapKind::Sliding {
                window: wf,
                rule: _,
            },
            MapKind::Sliding {
                window: wg,
                rule: _,
            },
        ) = (&self.kind, &other.kind)
        {
            let window = wf + wg - 1;
            let mut rule = BTreeMap::new();
            for u in other.domain.admissible_words(window) {
                let mid = other.apply_word(u.symbols(), *wf)?;
                let out = self.apply_word(mid.symbols(), 1)?;
                rule.insert(u, out.symbols()[0]);
            }
            return Ok(ProgressiveMap {
                domain: Arc::clone(&other.domain),
                codomain: Arc::clone(&self.codomain),
                kind: MapKind::Sliding { window, rule },
            });
        }
        // At least one side is tabulated: produce a tabulated composite on
        // the jointly supported depths.
        let mut n_max = 0usize;
        while n_max < self.max_depth() {
            let need = match self.modulus(n_max + 1) {
                Ok(m) => m,
                Err(_) => break,
            };
            if need > other.max_depth() {
                break;
            }
            n_max += 1;
        }
        if n_max == 0 {
            return Err(Error::DepthUnsupported {
                requested: 1,
                max: 0,
                context: "composite supports no positive depth".into(),
            });
        }
        let mut moduli = Vec::with_capacity(n_max);
        let mut tables = Vec::with_capacity(n_max);
        for n in 1..=n_max {
            let mid_depth = self.modulus(n)?;
            let in_depth = other.modulus(mid_depth)?;
            let mut table = BTreeMap::new();
            for w in other.domain.admissible_words(in_depth) {
                let mid = other.apply_word(w.symbols(), mid_depth)?;
                let out = self.apply_word(mid.symbols(), n)?;
                table.insert(w, out);
            }
            moduli.push(in_depth);
            tables.push(table);
        }
        ProgressiveMap::from_tables(&other.domain, &self.codomain, moduli, tables)
    }

    /// Image of a clopen set at the given output depth.
    pub fn image_clopen(&self, set: &ClopenSet, depth: usize) -> Result<ClopenSet> {
        let m = self.modulus(depth)?;
        let mut words = Vec::new();
        for w in set.words() {
            for ext in self.domain.extensions(w, m.max(w.len())) {
                words.push(self.apply_word(ext.symbols(), depth)?);
            }
        }
        words.sort();
        words.dedup();
        ClopenSet::from_words(&self.codomain, &words)
    }

    /// Cylinders of depth `modulus(depth)` whose image at `depth` lies in the
    /// given clopen set (the preimage as a clopen set).
    pub fn preimage_clopen(&self, set: &ClopenSet, depth: usize) -> Result<ClopenSet> {
        let d = depth.max(set.depth());
        let m = self.modulus(d)?;
        let mut words = Vec::new();
        for w in self.domain.admissible_words(m) {
            let out = self.apply_word(w.symbols(), d)?;
            if set.contains_cylinder(&out) {
                words.push(w);
            }
        }
        ClopenSet::from_words(&self.domain, &words)
    }
}

/// Decide equality of two maps at a depth by exhausting admissible inputs.
pub fn maps_equal(
    f: &ProgressiveMap,
    g: &ProgressiveMap,
    depth: usize,
) -> Result<EqualityCertificate> {
    maps_equal_on(f, g, depth, &Word::empty())
}

/// Equality restricted to a cylinder.
pub fn maps_equal_on(
    f: &ProgressiveMap,
    g: &ProgressiveMap,
    depth: usize,
    cylinder: &Word,
) -> Result<EqualityCertificate> {
    if !f.domain.same_presentation(&g.domain) || !f.codomain.same_presentation(&g.codomain) {
        return Err(Error::DomainMismatch(
            "maps_equal needs a common domain and codomain".into(),
        ));
    }
    let m = f.modulus(depth)?.max(g.modulus(depth)?);
    for w in f.domain.extensions(cylinder, m) {
        let a = f.apply_word(w.symbols(), depth)?;
        let b = g.apply_word(w.symbols(), depth)?;
        if a != b {
            return Ok(EqualityCertificate::refuted(depth, w));
        }
    }
    Ok(EqualityCertificate::verified(depth))
}

/// Certify local injectivity on a cylinder partition and surjectivity at a
/// depth.
///
/// A cylinder is certified when distinct admissible extensions to the full
/// input depth give distinct outputs; cylinders are refined until they pass
/// or until refining further would leave a single extension.
pub fn check_local_homeo(f: &ProgressiveMap, depth: usize) -> Result<LocalHomeoReport> {
    let m = f.modulus(depth)?;

    let mut partition = Vec::new();
    let mut failures = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(Word::empty());
    while let Some(w) = queue.pop_front() {
        let exts = f.domain.extensions(&w, m);
        let mut seen: BTreeMap<Word, Word> = BTreeMap::new();
        let mut collision = None;
        for e in &exts {
            let out = f.apply_word(e.symbols(), depth)?;
            if let Some(prev) = seen.get(&out) {
                collision = Some((prev.clone(), e.clone()));
                break;
            }
            seen.insert(out, e.clone());
        }
        match collision {
            None => partition.push(w),
            Some((l, r)) => {
                if w.len() + 1 < m {
                    let next: Vec<Symbol> = match w.last() {
                        Some(v) => f.domain.successors(v).collect(),
                        None => (0..f.domain.num_symbols() as Symbol).collect(),
                    };
                    for s in next {
                        let mut c = w.clone();
                        c.push(s);
                        queue.push_back(c);
                    }
                } else {
                    failures.push(InjectivityFailure {
                        cylinder: w,
                        left: l,
                        right: r,
                    });
                }
            }
        }
    }
    partition.sort_by_key(|w| (w.len(), w.clone()));
    failures.sort_by_key(|f| (f.cylinder.len(), f.cylinder.clone()));

    let mut image: Vec<Word> = Vec::new();
    for w in f.domain.admissible_words(m) {
        image.push(f.apply_word(w.symbols(), depth)?);
    }
    image.sort();
    image.dedup();
    let missing: Vec<Word> = f
        .codomain
        .admissible_words(depth)
        .into_iter()
        .filter(|w| image.binary_search(w).is_err())
        .collect();

    Ok(LocalHomeoReport {
        depth,
        injective: failures.is_empty(),
        partition,
        injectivity_failures: failures,
        surjective: missing.is_empty(),
        missing_words: missing,
    })
}

/// A homeomorphism presented by mutually inverse progressive maps.
#[derive(Clone, Debug)]
pub struct ProgressiveHomeo {
    pub forward: ProgressiveMap,
    pub inverse: ProgressiveMap,
}

impl ProgressiveHomeo {
    pub fn new(forward: ProgressiveMap, inverse: ProgressiveMap) -> Result<Self> {
        if !forward.domain.same_presentation(&inverse.codomain)
            || !forward.codomain.same_presentation(&inverse.domain)
        {
            return Err(Error::DomainMismatch(
                "inverse must swap domain and codomain".into(),
            ));
        }
        Ok(ProgressiveHomeo { forward, inverse })
    }

    /// Verify both roundtrips against the identity, at the deepest jointly
    /// supported depth up to `depth`. Returns (inverse∘forward, forward∘inverse).
    pub fn verify_roundtrip(
        &self,
        depth: usize,
    ) -> Result<(EqualityCertificate, EqualityCertificate)> {
        let back = self.inverse.compose(&self.forward)?;
        let d1 = depth.min(back.max_depth());
        let c1 = maps_equal(&back, &ProgressiveMap::identity(&self.forward.domain), d1)?;
        let forth = self.forward.compose(&self.inverse)?;
        let d2 = depth.min(forth.max_depth());
        let c2 = maps_equal(&forth, &ProgressiveMap::identity(&self.forward.codomain), d2)?;
        Ok((c1, c2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn shift_drops_first_symbol() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        // x = 0110(0)^inf, out_depth 3 → 110
        let x = TruncatedPoint::eventually_periodic(
            Word(vec![0, 1, 1, 0]),
            Word::empty(),
            Word(vec![0]),
        );
        let y = sigma.apply_point(&x, 3).unwrap();
        assert_eq!(y.truncate(3).unwrap(), Word(vec![1, 1, 0]));
        assert!(y.has_tail());
    }

    #[test]
    fn identity_returns_prefix() {
        let gm = standard::golden_mean();
        let id = ProgressiveMap::identity(&gm);
        let x = TruncatedPoint::periodic(Word(vec![0, 1]));
        assert_eq!(
            id.apply_point(&x, 4).unwrap().truncate(4).unwrap(),
            Word(vec![0, 1, 0, 1])
        );
    }

    #[test]
    fn two_block_recoding_evaluates_directly() {
        let (_, phi) = standard::phi2();
        // x = 0110…, depth 3 → (01)(11)(10); codomain labels sort as
        // 00,01,10,11 so the expected internal word is [1,3,2].
        let x = TruncatedPoint::finite(Word(vec![0, 1, 1, 0]));
        let y = phi.forward.apply_point(&x, 3).unwrap();
        assert_eq!(y.truncate(3).unwrap(), Word(vec![1, 3, 2]));
    }

    #[test]
    fn composition_adds_windows() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let sigma2 = sigma.compose(&sigma).unwrap();
        assert_eq!(sigma2.modulus(3).unwrap(), 5); // n ↦ n + 2
        let cert = maps_equal(&sigma2, &sigma.compose(&sigma).unwrap(), 4).unwrap();
        assert!(cert.is_verified());
    }

    #[test]
    fn compose_with_identity_is_identity_law() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let id = ProgressiveMap::identity(&f2);
        let fid = sigma.compose(&id).unwrap();
        assert!(maps_equal(&fid, &sigma, 5).unwrap().is_verified());
        let idf = id.compose(&sigma).unwrap();
        assert!(maps_equal(&idf, &sigma, 5).unwrap().is_verified());
    }

    #[test]
    fn shift_vs_identity_refuted_with_least_witness() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let id = ProgressiveMap::identity(&f2);
        let cert = maps_equal(&sigma, &id, 1).unwrap();
        assert_eq!(cert.status, EqStatus::Refuted);
        assert_eq!(cert.witness.unwrap(), Word(vec![0, 1])); // "01"
    }

    #[test]
    fn refutation_witness_reverifies_by_application() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let id = ProgressiveMap::identity(&f2);
        let cert = maps_equal(&sigma, &id, 1).unwrap();
        let w = cert.witness.unwrap();
        let a = sigma.apply_word(w.symbols(), 1).unwrap();
        let b = id.apply_word(w.symbols(), 1).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn two_block_roundtrip_verifies_to_depth_five() {
        let (_, phi) = standard::phi2();
        let back = phi.inverse.compose(&phi.forward).unwrap();
        let id = ProgressiveMap::identity(&standard::f2());
        assert!(maps_equal(&back, &id, 5).unwrap().is_verified());
        let (c1, c2) = phi.verify_roundtrip(5).unwrap();
        assert!(c1.is_verified() && c2.is_verified());
    }

    #[test]
    fn maps_equal_is_symmetric_and_reflexive() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let id = ProgressiveMap::identity(&f2);
        assert!(maps_equal(&sigma, &sigma, 5).unwrap().is_verified());
        let ab = maps_equal(&sigma, &id, 3).unwrap();
        let ba = maps_equal(&id, &sigma, 3).unwrap();
        assert_eq!(ab.status, ba.status);
        assert_eq!(ab.witness, ba.witness);
    }

    #[test]
    fn local_homeo_of_shift() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        let report = check_local_homeo(&sigma, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.partition, vec![Word(vec![0]), Word(vec![1])]);
    }

    #[test]
    fn local_homeo_of_identity_is_global() {
        let gm = standard::golden_mean();
        let id = ProgressiveMap::identity(&gm);
        let report = check_local_homeo(&id, 4).unwrap();
        assert!(report.passed());
        assert_eq!(report.partition, vec![Word::empty()]);
    }

    #[test]
    fn collapse_map_fails_surjectivity_with_witness() {
        let f2 = standard::f2();
        let mut rule = BTreeMap::new();
        rule.insert(Word(vec![0]), 0);
        rule.insert(Word(vec![1]), 0);
        let collapse = ProgressiveMap::sliding_block(&f2, &f2, 1, rule).unwrap();
        let report = check_local_homeo(&collapse, 1).unwrap();
        assert!(!report.surjective);
        assert_eq!(report.missing_words, vec![Word(vec![1])]); // "1"
        assert!(!report.injective);
    }

    #[test]
    fn shift_power_detection() {
        let f2 = standard::f2();
        let sigma = ProgressiveMap::shift(&f2);
        assert_eq!(sigma.as_shift_power(), Some(1));
        assert_eq!(ProgressiveMap::identity(&f2).as_shift_power(), Some(0));
        assert_eq!(sigma.compose(&sigma).unwrap().as_shift_power(), Some(2));
        let (_, phi) = standard::phi2();
        assert_eq!(phi.forward.as_shift_power(), None);
    }

    #[test]
    fn tabulated_map_validation_catches_prefix_break() {
        let f2 = standard::f2();
        let id = ProgressiveMap::identity(&f2);
        // Expand the identity to tables, then corrupt depth 2.
        let mut moduli = Vec::new();
        let mut tables = Vec::new();
        for n in 1..=2usize {
            let m = id.modulus(n).unwrap();
            let mut t = BTreeMap::new();
            for w in f2.admissible_words(m) {
                t.insert(w.clone(), id.apply_word(w.symbols(), n).unwrap());
            }
            moduli.push(m);
            tables.push(t);
        }
        assert!(ProgressiveMap::from_tables(&f2, &f2, moduli.clone(), tables.clone()).is_ok());
        tables[1].insert(Word(vec![0, 0]), Word(vec![1, 0]));
        let err = ProgressiveMap::from_tables(&f2, &f2, moduli, tables).unwrap_err();
        assert!(matches!(err, Error::BadDocument(_)));
    }

    #[test]
    fn depth_errors_are_reported() {
        let f2 = standard::f2();
        let odo = standard::odometer_map(&f2, 3).unwrap();
        assert!(odo.modulus(3).is_ok());
        assert!(matches!(
            odo.modulus(4),
            Err(Error::DepthUnsupported { .. })
        ));
        let x = TruncatedPoint::finite(Word(vec![0]));
        assert!(matches!(
            odo.apply_point(&x, 3),
            Err(Error::Undetermined { .. })
        ));
    }
}
