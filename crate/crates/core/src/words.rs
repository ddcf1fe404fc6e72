//! Free words over `{a, b}` and the two length-reducing rewriting systems:
//! `{aab → a, abb → b}` presenting 𝒞 and `{ab → ε}` presenting ℬ(a,b).
//!
//! Word reduction is the ground-truth oracle for every closed-form product in
//! [`crate::algebra`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{BicyclicNF, CanonC};

/// Default upper bound on the length of a parsed word.
pub const DEFAULT_MAX_WORD_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid character {ch:?} at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("word of length {len} exceeds the cap of {cap} letters")]
    TooLong { len: usize, cap: usize },
    #[error("the empty word does not denote an element of 𝒞")]
    EmptyWord,
    #[error("irreducible word {word} is not of the form b^k (ab)^l a^m")]
    ShapeViolation { word: Word },
    #[error("rule {lhs} -> {rhs} does not shorten words")]
    NotLengthReducing { lhs: Word, rhs: Word },
    #[error("critical pair on {word} does not join: {left} vs {right}")]
    ConfluenceFailure { word: Word, left: Word, right: Word },
}

impl WordError {
    /// Stable upper-case code used in reports and vector files.
    pub fn code(&self) -> &'static str {
        match self {
            WordError::InvalidCharacter { .. } => "INVALID_CHARACTER",
            WordError::TooLong { .. } => "WORD_TOO_LONG",
            WordError::EmptyWord => "EMPTY_WORD",
            WordError::ShapeViolation { .. } => "SHAPE_VIOLATION",
            WordError::NotLengthReducing { .. } => "NOT_LENGTH_REDUCING",
            WordError::ConfluenceFailure { .. } => "CONFLUENCE_FAILURE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    A,
    B,
}

impl Generator {
    pub fn as_char(self) -> char {
        match self {
            Generator::A => 'a',
            Generator::B => 'b',
        }
    }
}

/// A finite, possibly empty, sequence of generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    /// Shortlex comparison: by length, then lexicographic with `a < b`.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    /// All words of length exactly `n`, in lexicographic order.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        assert!(n < 64, "word enumeration limited to length < 64");
        (0u64..(1u64 << n)).map(move |bits| {
            Word((0..n)
                .map(|i| if bits >> (n - 1 - i) & 1 == 0 { Generator::A } else { Generator::B })
                .collect())
        })
    }

    fn repeat(g: Generator, n: u64) -> impl Iterator<Item = Generator> {
        std::iter::repeat_n(g, n as usize)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.0 {
            write!(f, "{}", g.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl From<CanonC> for Word {
    fn from(x: CanonC) -> Word {
        from_normal_c(x)
    }
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    parse_word_capped(text, DEFAULT_MAX_WORD_LEN)
}

/// Parse `a`/`b` text, ignoring whitespace, rejecting words longer than `cap`.
pub fn parse_word_capped(text: &str, cap: usize) -> Result<Word, WordError> {
    let mut letters = Vec::new();
    for (pos, ch) in text.chars().enumerate() {
        let g = match ch {
            'a' => Generator::A,
            'b' => Generator::B,
            c if c.is_whitespace() => continue,
            c => return Err(WordError::InvalidCharacter { ch: c, pos }),
        };
        if letters.len() == cap {
            return Err(WordError::TooLong { len: letters.len() + 1, cap });
        }
        letters.push(g);
    }
    Ok(Word(letters))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

/// Order in which redexes are contracted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// Single left-to-right pass with a stack; always contracts the redex
    /// that ends first. This is the canonical engine.
    LeftmostInnermost,
    /// Repeatedly rescan and contract the redex starting leftmost.
    LeftmostScan,
    /// Repeatedly rescan and contract the redex starting rightmost.
    RightmostScan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub word: Word,
    pub steps: usize,
}

/// A finite set of strictly length-reducing rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Rule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<(Word, Word)>) -> Result<Self, WordError> {
        let rules = rules
            .into_iter()
            .map(|(lhs, rhs)| {
                if rhs.len() >= lhs.len() {
                    Err(WordError::NotLengthReducing { lhs, rhs })
                } else {
                    Ok(Rule { lhs, rhs })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RewriteSystem { rules })
    }

    /// Parse rules written as `lhs>rhs` separated by commas, e.g. `"ab>a,ba>b"`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut rules = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (l, r) = part.split_once('>').ok_or(WordError::InvalidCharacter {
                ch: ',',
                pos: 0,
            })?;
            rules.push((parse_word(l)?, parse_word(r)?));
        }
        RewriteSystem::new(rules)
    }

    /// `{aab → a, abb → b}`.
    pub fn redei() -> Self {
        use Generator::{A, B};
        RewriteSystem {
            rules: vec![
                Rule { lhs: Word(vec![A, A, B]), rhs: Word(vec![A]) },
                Rule { lhs: Word(vec![A, B, B]), rhs: Word(vec![B]) },
            ],
        }
    }

    /// `{ab → ε}`.
    pub fn bicyclic() -> Self {
        use Generator::{A, B};
        RewriteSystem { rules: vec![Rule { lhs: Word(vec![A, B]), rhs: Word::empty() }] }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn reduce(&self, w: &Word) -> Word {
        self.reduce_counted(w, ReductionStrategy::LeftmostInnermost).word
    }

    pub fn reduce_counted(&self, w: &Word, strategy: ReductionStrategy) -> Reduction {
        match strategy {
            ReductionStrategy::LeftmostInnermost => self.reduce_stack(w),
            ReductionStrategy::LeftmostScan => self.reduce_scan(w, false),
            ReductionStrategy::RightmostScan => self.reduce_scan(w, true),
        }
    }

    fn reduce_stack(&self, w: &Word) -> Reduction {
        let mut out: Vec<Generator> = Vec::with_capacity(w.len());
        let mut pending: Vec<Generator> = w.0.iter().rev().copied().collect();
        let mut steps = 0;
        while let Some(g) = pending.pop() {
            out.push(g);
            if let Some(rule) = self.rules.iter().find(|r| out.ends_with(&r.lhs.0)) {
                out.truncate(out.len() - rule.lhs.len());
                pending.extend(rule.rhs.0.iter().rev());
                steps += 1;
            }
        }
        Reduction { word: Word(out), steps }
    }

    fn redex_at(&self, w: &[Generator], pos: usize) -> Option<&Rule> {
        self.rules.iter().find(|r| w[pos..].starts_with(&r.lhs.0))
    }

    fn reduce_scan(&self, w: &Word, rightmost: bool) -> Reduction {
        let mut cur = w.0.clone();
        let mut steps = 0;
        loop {
            let found = if rightmost {
                (0..cur.len()).rev().find_map(|i| self.redex_at(&cur, i).map(|r| (i, r)))
            } else {
                (0..cur.len()).find_map(|i| self.redex_at(&cur, i).map(|r| (i, r)))
            };
            match found {
                None => return Reduction { word: Word(cur), steps },
                Some((i, rule)) => {
                    cur.splice(i..i + rule.lhs.len(), rule.rhs.0.iter().copied());
                    steps += 1;
                }
            }
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        (0..w.len()).all(|i| self.redex_at(&w.0, i).is_none())
    }

    /// Enumerate every overlap between left-hand sides, contract it both
    /// ways, and check that the two results reduce to the same word.
    pub fn critical_pairs_check(&self) -> Result<ConfluenceReport, WordError> {
        let mut superpositions = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs.0, &r2.lhs.0);
                // Proper overlaps: a suffix of l1 equals a prefix of l2.
                for o in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - o..] == l2[..o] {
                        let mut word = l1.clone();
                        word.extend_from_slice(&l2[o..]);
                        let mut left = r1.rhs.0.clone();
                        left.extend_from_slice(&l2[o..]);
                        let mut right = l1[..l1.len() - o].to_vec();
                        right.extend_from_slice(&r2.rhs.0);
                        superpositions.push(self.join(Word(word), Word(left), Word(right))?);
                    }
                }
                // Inclusions: l2 occurs inside l1 (distinct rules only).
                if i != j && l2.len() <= l1.len() {
                    for pos in 0..=(l1.len() - l2.len()) {
                        if l1[pos..pos + l2.len()] == l2[..] {
                            let mut right = l1[..pos].to_vec();
                            right.extend_from_slice(&r2.rhs.0);
                            right.extend_from_slice(&l1[pos + l2.len()..]);
                            superpositions.push(self.join(
                                r1.lhs.clone(),
                                r1.rhs.clone(),
                                Word(right),
                            )?);
                        }
                    }
                }
            }
        }
        Ok(ConfluenceReport { superpositions })
    }

    fn join(&self, word: Word, left: Word, right: Word) -> Result<Superposition, WordError> {
        let (nl, nr) = (self.reduce(&left), self.reduce(&right));
        if nl != nr {
            return Err(WordError::ConfluenceFailure { word, left: nl, right: nr });
        }
        Ok(Superposition { word, left, right, joined: nl })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superposition {
    pub word: Word,
    pub left: Word,
    pub right: Word,
    pub joined: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub superpositions: Vec<Superposition>,
}

pub fn reduce_c(w: &Word) -> Result<Word, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    Ok(RewriteSystem::redei().reduce(w))
}

/// Match an irreducible word against `b^k (ab)^l a^m`.
pub fn match_normal_shape(w: &Word) -> Option<(u64, u64, u64)> {
    use Generator::{A, B};
    let s = w.letters();
    let mut i = 0;
    let mut k = 0;
    while i < s.len() && s[i] == B {
        k += 1;
        i += 1;
    }
    let mut l = 0;
    while i + 1 < s.len() && s[i] == A && s[i + 1] == B {
        l += 1;
        i += 2;
    }
    let m = (s.len() - i) as u64;
    if s[i..].iter().all(|g| *g == A) {
        Some((k, l, m))
    } else {
        None
    }
}

pub fn to_normal_c(w: &Word) -> Result<CanonC, WordError> {
    let r = reduce_c(w)?;
    match match_normal_shape(&r) {
        Some((k, l, m)) => CanonC::new(k, l, m).map_err(|_| WordError::ShapeViolation { word: r }),
        None => Err(WordError::ShapeViolation { word: r }),
    }
}

/// `b^k (ab)^l a^m` spelled out.
pub fn from_normal_c(x: CanonC) -> Word {
    use Generator::{A, B};
    let (k, l, m) = x.triple();
    let mut v = Vec::with_capacity((k + 2 * l + m) as usize);
    v.extend(Word::repeat(B, k));
    for _ in 0..l {
        v.push(A);
        v.push(B);
    }
    v.extend(Word::repeat(A, m));
    Word(v)
}

pub fn to_normal_b(w: &Word) -> BicyclicNF {
    let r = RewriteSystem::bicyclic().reduce(w);
    let i = r.letters().iter().take_while(|g| **g == Generator::B).count();
    debug_assert!(r.letters()[i..].iter().all(|g| *g == Generator::A));
    BicyclicNF::new(i as u64, (r.len() - i) as u64)
}

pub fn from_normal_b(x: BicyclicNF) -> Word {
    Word(Word::repeat(Generator::B, x.i).chain(Word::repeat(Generator::A, x.j)).collect())
}

/// Product in 𝒞 computed by concatenating normal-form words and rewriting.
pub fn oracle_mul_c(x: CanonC, y: CanonC) -> CanonC {
    let w = from_normal_c(x).concat(&from_normal_c(y));
    to_normal_c(&w).expect("concatenation of nonempty words reduces to a normal form")
}

/// Product in ℬ(a,b) computed by concatenation and rewriting.
pub fn oracle_mul_b(x: BicyclicNF, y: BicyclicNF) -> BicyclicNF {
    to_normal_b(&from_normal_b(x).concat(&from_normal_b(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    fn c(k: u64, l: u64, m: u64) -> CanonC {
        CanonC::new(k, l, m).unwrap()
    }

    #[test]
    fn parsing() {
        use Generator::{A, B};
        assert_eq!(w("aab").letters(), &[A, A, B]);
        assert_eq!(w(" a a\tb\n"), w("aab"));
        assert!(w("").is_empty());
        assert_eq!(parse_word("abx"), Err(WordError::InvalidCharacter { ch: 'x', pos: 2 }));
        assert_eq!(parse_word_capped("abab", 3), Err(WordError::TooLong { len: 4, cap: 3 }));
        assert!(parse_word_capped("aba", 3).is_ok());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_c(&w("aab")).unwrap(), w("a"));
        assert_eq!(reduce_c(&w("ba")).unwrap(), w("ba"));
        assert_eq!(reduce_c(&w("aabb")).unwrap(), w("ab"));
        assert_eq!(reduce_c(&w("")), Err(WordError::EmptyWord));
    }

    #[test]
    fn normal_forms() {
        assert_eq!(to_normal_c(&w("bbababaa")).unwrap(), c(2, 2, 2));
        assert_eq!(to_normal_c(&w("aab")).unwrap(), c(0, 0, 1));
        assert_eq!(to_normal_c(&w("aabb")).unwrap(), c(0, 1, 0));
        assert_eq!(to_normal_c(&w("")), Err(WordError::EmptyWord));
        assert_eq!(from_normal_c(c(1, 1, 0)), w("bab"));
        assert_eq!(from_normal_c(c(0, 1, 0)), w("ab"));
        assert_eq!(from_normal_c(c(2, 0, 3)), w("bbaaa"));
        assert_eq!(to_normal_b(&w("ab")), BicyclicNF::IDENTITY);
        // two ab cancellations leave "baaaaa"
        assert_eq!(to_normal_b(&w("baababaaaa")), BicyclicNF::new(1, 5));
        assert_eq!(to_normal_b(&w("baabbbaaaa")), BicyclicNF::new(2, 4));
        assert_eq!(to_normal_b(&w("")), BicyclicNF::IDENTITY);
    }

    #[test]
    fn shape_matcher_rejects_bad_words() {
        assert_eq!(match_normal_shape(&w("bab")), Some((1, 1, 0)));
        assert_eq!(match_normal_shape(&w("aab")), None);
        assert_eq!(match_normal_shape(&w("bba")), Some((2, 0, 1)));
        assert_eq!(match_normal_shape(&w("abba")), None);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_mul_c(c(2, 0, 1), c(1, 3, 0)), c(2, 4, 0));
        assert_eq!(oracle_mul_c(c(0, 0, 2), c(1, 0, 0)), c(0, 0, 1));
        assert_eq!(oracle_mul_c(c(0, 0, 1), c(1, 0, 0)), c(0, 1, 0));
        assert_eq!(oracle_mul_b(BicyclicNF::new(1, 2), BicyclicNF::new(3, 4)), BicyclicNF::new(2, 4));
    }

    #[test]
    fn redei_critical_pairs() {
        let rep = RewriteSystem::redei().critical_pairs_check().unwrap();
        assert_eq!(rep.superpositions.len(), 1);
        let sp = &rep.superpositions[0];
        assert_eq!(sp.word, w("aabb"));
        assert_eq!(sp.joined, w("ab"));
    }

    #[test]
    fn bicyclic_has_no_superpositions() {
        let rep = RewriteSystem::bicyclic().critical_pairs_check().unwrap();
        assert!(rep.superpositions.is_empty());
    }

    #[test]
    fn non_confluent_control_is_caught() {
        let sys = RewriteSystem::parse("ab>a,ba>b").unwrap();
        match sys.critical_pairs_check() {
            Err(WordError::ConfluenceFailure { word, .. }) => assert_eq!(word, w("aba")),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn rules_must_shrink() {
        assert!(matches!(RewriteSystem::parse("ab>ba"), Err(WordError::NotLengthReducing { .. })));
    }

    #[test]
    fn long_input_is_linear() {
        let text: String = "ab".repeat(200_000) + "aab";
        let x = to_normal_c(&w(&text)).unwrap();
        assert_eq!(x, c(0, 200_000, 1));
    }

    fn arb_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop_oneof![Just(Generator::A), Just(Generator::B)], 1..=max)
            .prop_map(Word::new)
    }

    proptest! {
        #[test]
        fn strategies_agree(word in arb_word(40)) {
            let sys = RewriteSystem::redei();
            let inner = sys.reduce_counted(&word, ReductionStrategy::LeftmostInnermost);
            let left = sys.reduce_counted(&word, ReductionStrategy::LeftmostScan);
            let right = sys.reduce_counted(&word, ReductionStrategy::RightmostScan);
            prop_assert_eq!(&inner.word, &left.word);
            prop_assert_eq!(&inner.word, &right.word);
            prop_assert_eq!(inner.word.len() + 2 * inner.steps, word.len());
            prop_assert!(sys.is_irreducible(&inner.word));
        }

        #[test]
        fn normal_form_round_trip(k in 0u64..30, l in 0u64..30, m in 0u64..30) {
            prop_assume!(k + l + m > 0);
            let x = c(k, l, m);
            prop_assert_eq!(to_normal_c(&from_normal_c(x)).unwrap(), x);
        }
    }
}
