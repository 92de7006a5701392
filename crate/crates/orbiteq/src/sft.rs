//! Shift spaces of finite type in 2-block (vertex/edge) presentation.
//!
//! A shift space is loaded from an alphabet and a finite set of forbidden
//! words. Forbidden words longer than two symbols are recoded away at load
//! time into a higher-block presentation, so that every algorithm in the
//! crate only ever sees allowed/disallowed 2-blocks. The recoding map is kept
//! so user-facing symbols round-trip.

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Record of a higher-block recoding: internal symbol `i` stands for the
/// block `blocks[i]` of original symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recode {
    pub original_alphabet: Vec<String>,
    pub block_len: usize,
    pub blocks: Vec<Vec<u16>>,
}

/// A nonempty shift of finite type without isolated points, presented by
/// allowed 2-blocks over a finite alphabet.
#[derive(Clone, Debug)]
pub struct Sft {
    name: String,
    alphabet: Vec<String>,
    allowed: Vec<Vec<bool>>,
    recode: Option<Recode>,
}

/// Validate a raw alphabet-plus-forbidden-words presentation and produce the
/// pruned 2-block presentation.
///
/// Fails with `EmptyShift` when no bi-infinite admissible sequence survives,
/// with `IsolatedPoints` when some cylinder contains a single point, and with
/// `BadSymbol` when a forbidden word mentions an unknown symbol.
pub fn validate_sft(name: &str, alphabet: &[&str], forbidden: &[&str]) -> Result<Sft> {
    let labels: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
    let mut words = Vec::new();
    for f in forbidden {
        words.push(tokenize(&labels, f)?);
    }
    Sft::build(name, labels, &words)
}

/// Split a word string into symbol indices over the given labels.
///
/// Words are plain strings when every label is a single character; otherwise
/// (or whenever a dot appears) tokens are separated by `.`.
pub fn tokenize(labels: &[String], text: &str) -> Result<Vec<u16>> {
    let lookup = |tok: &str| -> Result<u16> {
        labels
            .iter()
            .position(|l| l == tok)
            .map(|i| i as u16)
            .ok_or_else(|| Error::BadSymbol(format!("'{tok}' is not in the alphabet")))
    };
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if text.contains('.') {
        return text.split('.').map(lookup).collect();
    }
    if labels.iter().all(|l| l.chars().count() == 1) {
        return text.chars().map(|c| lookup(&c.to_string())).collect();
    }
    // Multi-character labels without separators: accept only a single token.
    if labels.iter().any(|l| l == text) {
        return Ok(vec![lookup(text)?]);
    }
    Err(Error::BadSymbol(format!(
        "cannot tokenize '{text}' over a multi-character alphabet; separate symbols with '.'"
    )))
}

impl Sft {
    /// Build from an alphabet and forbidden words given as index sequences.
    pub fn build(name: &str, alphabet: Vec<String>, forbidden: &[Vec<u16>]) -> Result<Sft> {
        if alphabet.is_empty() {
            return Err(Error::BadSymbol("alphabet is empty".into()));
        }
        if alphabet.len() > 4096 {
            return Err(Error::BadDocument(format!(
                "alphabet of {} symbols is beyond the supported size",
                alphabet.len()
            )));
        }
        for (i, a) in alphabet.iter().enumerate() {
            if a.is_empty() || a.contains('.') || a.contains('|') {
                return Err(Error::BadSymbol(format!(
                    "label '{a}' is empty or contains a reserved character"
                )));
            }
            if alphabet[..i].contains(a) {
                return Err(Error::BadSymbol(format!("label '{a}' appears twice")));
            }
        }
        for w in forbidden {
            if w.is_empty() {
                return Err(Error::EmptyShift("the empty word is forbidden".into()));
            }
            if let Some(&s) = w.iter().find(|&&s| s as usize >= alphabet.len()) {
                return Err(Error::BadSymbol(format!("symbol index {s} out of range")));
            }
        }

        let max_len = forbidden.iter().map(|w| w.len()).max().unwrap_or(0);
        if max_len > 2 {
            let blocks = (alphabet.len() as u64).checked_pow(max_len as u32 - 1);
            if blocks.is_none_or(|b| b > 1 << 20) {
                return Err(Error::BadDocument(format!(
                    "recoding forbidden words of length {max_len} over {} symbols is beyond the \
                     supported size",
                    alphabet.len()
                )));
            }
        }
        let (labels, allowed, recode) = if max_len <= 2 {
            let n = alphabet.len();
            let mut allowed = vec![vec![true; n]; n];
            let mut banned = vec![false; n];
            for w in forbidden {
                match w.len() {
                    1 => banned[w[0] as usize] = true,
                    2 => allowed[w[0] as usize][w[1] as usize] = false,
                    _ => unreachable!(),
                }
            }
            for (i, &b) in banned.iter().enumerate() {
                if b {
                    for j in 0..n {
                        allowed[i][j] = false;
                        allowed[j][i] = false;
                    }
                }
            }
            (alphabet, allowed, None)
        } else {
            Self::higher_block(&alphabet, forbidden, max_len)?
        };

        // Prune vertices until every survivor has an allowed predecessor and
        // successor.
        let n = labels.len();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                let has_out = (0..n).any(|w| alive[w] && allowed[v][w]);
                let has_in = (0..n).any(|u| alive[u] && allowed[u][v]);
                if !has_out || !has_in {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if alive.iter().all(|&a| !a) {
            return Err(Error::EmptyShift(format!(
                "'{name}': no bi-extendable symbol survives pruning"
            )));
        }

        let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        let final_labels: Vec<String> = keep.iter().map(|&v| labels[v].clone()).collect();
        let mut final_allowed = vec![vec![false; keep.len()]; keep.len()];
        for (i, &v) in keep.iter().enumerate() {
            for (j, &w) in keep.iter().enumerate() {
                final_allowed[i][j] = allowed[v][w];
            }
        }
        let final_recode = recode.map(|r: Recode| Recode {
            original_alphabet: r.original_alphabet,
            block_len: r.block_len,
            blocks: keep.iter().map(|&v| r.blocks[v].clone()).collect(),
        });

        let sft = Sft {
            name: name.to_string(),
            alphabet: final_labels,
            allowed: final_allowed,
            recode: final_recode,
        };
        sft.check_no_isolated_points()?;
        Ok(sft)
    }

    /// Recode forbidden words of length > 2 into a block presentation whose
    /// symbols are the admissible (L−1)-blocks of the original alphabet.
    fn higher_block(
        alphabet: &[String],
        forbidden: &[Vec<u16>],
        max_len: usize,
    ) -> Result<(Vec<String>, Vec<Vec<bool>>, Option<Recode>)> {
        let block_len = max_len - 1;
        let has_factor = |w: &[u16]| -> bool {
            forbidden.iter().any(|f| {
                w.len() >= f.len() && w.windows(f.len()).any(|win| win == f.as_slice())
            })
        };
        let mut blocks: Vec<Vec<u16>> = Vec::new();
        let mut stack: Vec<Vec<u16>> = (0..alphabet.len() as u16).map(|s| vec![s]).collect();
        stack.reverse();
        while let Some(w) = stack.pop() {
            if has_factor(&w) {
                continue;
            }
            if w.len() == block_len {
                blocks.push(w);
                continue;
            }
            for s in (0..alphabet.len() as u16).rev() {
                let mut ext = w.clone();
                ext.push(s);
                stack.push(ext);
            }
        }
        if blocks.is_empty() {
            return Err(Error::EmptyShift(
                "no admissible block survives the forbidden words".into(),
            ));
        }
        let single = alphabet.iter().all(|l| l.chars().count() == 1);
        let labels: Vec<String> = blocks
            .iter()
            .map(|b| {
                let toks: Vec<&str> = b.iter().map(|&s| alphabet[s as usize].as_str()).collect();
                if single {
                    toks.concat()
                } else {
                    toks.join(".")
                }
            })
            .collect();
        let m = blocks.len();
        let mut allowed = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                if blocks[i][1..] == blocks[j][..block_len - 1] {
                    let mut fused = blocks[i].clone();
                    fused.push(blocks[j][block_len - 1]);
                    allowed[i][j] = !has_factor(&fused);
                }
            }
        }
        let recode = Recode {
            original_alphabet: alphabet.to_vec(),
            block_len,
            blocks,
        };
        Ok((labels, allowed, Some(recode)))
    }

    /// Every vertex must reach a vertex of out-degree ≥ 2; otherwise some
    /// cylinder determines its point completely.
    fn check_no_isolated_points(&self) -> Result<()> {
        let n = self.alphabet.len();
        for start in 0..n {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            let mut ok = false;
            while let Some(v) = stack.pop() {
                if self.out_degree(v as Symbol) >= 2 {
                    ok = true;
                    break;
                }
                for w in 0..n {
                    if self.allowed[v][w] && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if !ok {
                return Err(Error::IsolatedPoints(format!(
                    "'{}': every continuation of '{}' is forced",
                    self.name, self.alphabet[start]
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.alphabet
    }

    pub fn label(&self, s: Symbol) -> &str {
        &self.alphabet[s as usize]
    }

    pub fn recode(&self) -> Option<&Recode> {
        self.recode.as_ref()
    }

    pub fn allowed(&self, a: Symbol, b: Symbol) -> bool {
        self.allowed[a as usize][b as usize]
    }

    pub fn out_degree(&self, v: Symbol) -> usize {
        self.allowed[v as usize].iter().filter(|&&b| b).count()
    }

    pub fn successors(&self, v: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        self.allowed[v as usize]
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(j, _)| j as Symbol)
    }

    /// Presentation equality: same labels and same allowed blocks, names
    /// notwithstanding.
    pub fn same_presentation(&self, other: &Sft) -> bool {
        self.alphabet == other.alphabet && self.allowed == other.allowed
    }

    pub fn word_admissible(&self, w: &[Symbol]) -> bool {
        if w.iter().any(|&s| s as usize >= self.alphabet.len()) {
            return false;
        }
        w.windows(2).all(|p| self.allowed(p[0], p[1]))
    }

    /// All admissible words of exactly the given length, lexicographically
    /// sorted; length 0 yields the empty word.
    pub fn admissible_words(&self, depth: usize) -> Vec<Word> {
        self.extensions(&Word::empty(), depth)
    }

    /// All admissible words of length `len` extending `prefix` (for
    /// `len ≤ |prefix|` the truncation of the prefix itself).
    pub fn extensions(&self, prefix: &Word, len: usize) -> Vec<Word> {
        if len <= prefix.len() {
            return vec![prefix.prefix(len)];
        }
        if !self.word_admissible(prefix.symbols()) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut cur = prefix.clone();
        self.extend_rec(&mut cur, len, &mut out);
        out
    }

    fn extend_rec(&self, cur: &mut Word, len: usize, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let range: Vec<Symbol> = match cur.last() {
            Some(v) => self.successors(v).collect(),
            None => (0..self.alphabet.len() as Symbol).collect(),
        };
        for s in range {
            cur.push(s);
            self.extend_rec(cur, len, out);
            cur.0.pop();
        }
    }

    /// Deterministic eventually periodic continuation after `vertex` (after
    /// nothing, when `None`): returns (preperiod, period), the latter
    /// nonempty.
    pub fn canonical_tail_from(&self, vertex: Option<Symbol>) -> (Word, Word) {
        let mut seq: Vec<Symbol> = Vec::new();
        let mut seen: std::collections::HashMap<Symbol, usize> = std::collections::HashMap::new();
        let mut cur = match vertex {
            Some(v) => self
                .successors(v)
                .next()
                .expect("pruned graph has successors"),
            None => 0,
        };
        loop {
            if let Some(&at) = seen.get(&cur) {
                let pre = Word(seq[..at].to_vec());
                let per = Word(seq[at..].to_vec());
                return (pre, per);
            }
            seen.insert(cur, seq.len());
            seq.push(cur);
            cur = self
                .successors(cur)
                .next()
                .expect("pruned graph has successors");
        }
    }

    /// Enumerate eventually periodic tails continuing `vertex`: preperiods up
    /// to `pre_slack` symbols followed by an admissible cycle of length
    /// 1..=`max_period`, in lexicographic order.
    pub fn enumerate_tails(
        &self,
        vertex: Option<Symbol>,
        pre_slack: usize,
        max_period: usize,
    ) -> Vec<(Word, Word)> {
        let mut out = Vec::new();
        let prefix = match vertex {
            Some(v) => Word(vec![v]),
            None => Word::empty(),
        };
        for pre_len in 0..=pre_slack {
            for pre in self.extensions(&prefix, prefix.len() + pre_len) {
                let anchor = pre.last();
                for per_len in 1..=max_period {
                    for per in self.extensions_from(anchor, per_len) {
                        let closes = self.allowed(per.last().unwrap(), per.first().unwrap());
                        if closes {
                            out.push((pre.suffix_from(prefix.len()), per));
                        }
                    }
                }
            }
        }
        out
    }

    fn extensions_from(&self, vertex: Option<Symbol>, len: usize) -> Vec<Word> {
        match vertex {
            Some(v) => self
                .successors(v)
                .flat_map(|s| self.extensions(&Word(vec![s]), len))
                .collect(),
            None => self.admissible_words(len),
        }
    }

    /// Parse a word over the final (internal) alphabet.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let toks = tokenize(&self.alphabet, text)?;
        let w = Word(toks);
        if !self.word_admissible(w.symbols()) {
            return Err(Error::BadSymbol(format!(
                "word '{text}' is not admissible in '{}'",
                self.name
            )));
        }
        Ok(w)
    }

    /// Render a word with the final alphabet labels.
    pub fn format_word(&self, w: &Word) -> String {
        let toks: Vec<&str> = w.symbols().iter().map(|&s| self.label(s)).collect();
        if self.alphabet.iter().all(|l| l.chars().count() == 1) {
            toks.concat()
        } else {
            toks.join(".")
        }
    }

    /// Encode a word over the original (pre-recoding) alphabet into the
    /// internal presentation. Identity when no recoding happened.
    pub fn encode_user_word(&self, text: &str) -> Result<Word> {
        match &self.recode {
            None => self.parse_word(text),
            Some(r) => {
                let toks = tokenize(&r.original_alphabet, text)?;
                if toks.len() < r.block_len {
                    return Err(Error::BadSymbol(format!(
                        "word '{text}' is shorter than the recoding block length {}",
                        r.block_len
                    )));
                }
                let mut syms = Vec::new();
                for win in toks.windows(r.block_len) {
                    match r.blocks.iter().position(|b| b == win) {
                        Some(i) => syms.push(i as Symbol),
                        None => {
                            return Err(Error::BadSymbol(format!(
                                "word '{text}' is not admissible in '{}'",
                                self.name
                            )))
                        }
                    }
                }
                let w = Word(syms);
                if !self.word_admissible(w.symbols()) {
                    return Err(Error::BadSymbol(format!(
                        "word '{text}' is not admissible in '{}'",
                        self.name
                    )));
                }
                Ok(w)
            }
        }
    }

    /// Decode an internal word back to original-alphabet tokens.
    pub fn decode_word(&self, w: &Word) -> Vec<String> {
        match &self.recode {
            None => w.symbols().iter().map(|&s| self.label(s).to_string()).collect(),
            Some(r) => {
                let mut toks: Vec<String> = Vec::new();
                for (i, &s) in w.symbols().iter().enumerate() {
                    let block = &r.blocks[s as usize];
                    if i == 0 {
                        for &o in block {
                            toks.push(r.original_alphabet[o as usize].clone());
                        }
                    } else {
                        toks.push(r.original_alphabet[*block.last().unwrap() as usize].clone());
                    }
                }
                toks
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_two_shift_has_four_blocks() {
        let sft = validate_sft("F2", &["0", "1"], &[]).unwrap();
        assert_eq!(sft.num_symbols(), 2);
        let mut count = 0;
        for a in 0..2 {
            for b in 0..2 {
                if sft.allowed(a, b) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn golden_mean_blocks_match_brute_force() {
        let sft = validate_sft("GM", &["0", "1"], &["11"]).unwrap();
        // Oracle: enumerate all 2-blocks and drop those containing "11".
        let mut expected = Vec::new();
        for a in ["0", "1"] {
            for b in ["0", "1"] {
                let w = format!("{a}{b}");
                if !w.contains("11") {
                    expected.push(w);
                }
            }
        }
        let mut got = Vec::new();
        for a in 0..2u16 {
            for b in 0..2u16 {
                if sft.allowed(a, b) {
                    got.push(format!("{}{}", sft.label(a), sft.label(b)));
                }
            }
        }
        assert_eq!(got, expected); // {00, 01, 10}
    }

    #[test]
    fn singleton_space_is_rejected() {
        let err = validate_sft("point", &["a"], &[]).unwrap_err();
        assert!(matches!(err, Error::IsolatedPoints(_)));
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let err = validate_sft("bad", &["0", "1"], &["12"]).unwrap_err();
        assert!(matches!(err, Error::BadSymbol(_)));
    }

    #[test]
    fn everything_forbidden_is_empty() {
        let err = validate_sft("none", &["0", "1"], &["00", "01", "10", "11"]).unwrap_err();
        assert!(matches!(err, Error::EmptyShift(_)));
    }

    #[test]
    fn admissible_word_counts_via_transfer_matrix() {
        let gm = validate_sft("GM", &["0", "1"], &["11"]).unwrap();
        // Independent oracle: powers of the transition matrix [[1,1],[1,0]].
        let m = [[1u64, 1], [1, 0]];
        let mut counts = vec![1u64, 1]; // words of length 1 starting at each vertex
        for depth in 1..=8usize {
            assert_eq!(
                gm.admissible_words(depth).len() as u64,
                counts.iter().sum::<u64>()
            );
            counts = (0..2)
                .map(|i| (0..2).map(|j| m[i][j] * counts[j]).sum())
                .collect();
        }
        assert_eq!(gm.admissible_words(3).len(), 5);
        assert_eq!(gm.admissible_words(0), vec![Word::empty()]);
    }

    #[test]
    fn lexicographic_enumeration() {
        let gm = validate_sft("GM", &["0", "1"], &["11"]).unwrap();
        let words: Vec<String> = gm
            .admissible_words(3)
            .iter()
            .map(|w| gm.format_word(w))
            .collect();
        assert_eq!(words, vec!["000", "001", "010", "100", "101"]);
    }

    #[test]
    fn long_forbidden_words_are_recoded() {
        // Forbidding "111" forces a 2-block recoding on blocks of length 2.
        let sft = validate_sft("no111", &["0", "1"], &["111"]).unwrap();
        assert_eq!(sft.num_symbols(), 4); // 00, 01, 10, 11 all admissible
        let r = sft.recode().unwrap();
        assert_eq!(r.block_len, 2);
        // Internal words of length n correspond to user words of length n+1;
        // count length-3 user words: 8 minus the single forbidden one.
        assert_eq!(sft.admissible_words(2).len(), 7);
        let w = sft.encode_user_word("0110").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(sft.decode_word(&w).concat(), "0110");
    }

    #[test]
    fn pruning_removes_stranded_symbols() {
        // 1 has no outgoing block, so it is pruned; what remains is a single
        // fixed point, which the isolated-point check rejects.
        let err = validate_sft("s", &["0", "1"], &["10", "11"]).unwrap_err();
        assert!(matches!(err, Error::IsolatedPoints(_)));
    }

    #[test]
    fn canonical_tail_is_admissible_and_periodic() {
        let gm = validate_sft("GM", &["0", "1"], &["11"]).unwrap();
        let (pre, per) = gm.canonical_tail_from(Some(1));
        assert!(!per.is_empty());
        let mut chain = vec![1u16];
        chain.extend_from_slice(pre.symbols());
        chain.extend_from_slice(per.symbols());
        chain.extend_from_slice(per.symbols());
        assert!(gm.word_admissible(&chain));
        assert!(gm.allowed(per.last().unwrap(), per.first().unwrap()));
    }
}
