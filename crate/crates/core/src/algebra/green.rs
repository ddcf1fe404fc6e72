//! Bounded witness search for Green's relations and for simplicity.
//!
//! All products are computed on words through the rewriting oracle, so these
//! searches do not depend on the closed-form product. A `None` only means that
//! no witness exists within the length bound.
//!
//! Words are explored breadth first by length and, within a length, in
//! lexicographic order with `a < b`; the first witness in that order is
//! returned, so results are deterministic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, CanonC};
use crate::words::{oracle_mul_c, to_normal_c, Generator, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GreenSide {
    /// `x·S¹ = y·S¹`
    R,
    /// `S¹·x = S¹·y`
    L,
}

impl FromStr for GreenSide {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "R" | "r" => Ok(GreenSide::R),
            "L" | "l" => Ok(GreenSide::L),
            _ => Err(AlgebraError::Parse { what: "Green side (R|L)", input: s.to_string() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPair {
    pub u: Word,
    pub v: Word,
}

impl fmt::Display for WitnessPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={} v={}", self.u, self.v)
    }
}

/// Element denoted by a nonempty word.
pub fn eval_word(w: &Word) -> Option<CanonC> {
    to_normal_c(w).ok()
}

const GENERATORS: [(Generator, CanonC); 2] = [(Generator::A, CanonC::A), (Generator::B, CanonC::B)];

/// Elements `start·w` (or `w·start`) for words `w` of each exact length,
/// each with the lexicographically least such `w`. Built lazily.
struct Layers {
    start: CanonC,
    append: bool,
    layers: Vec<BTreeMap<CanonC, Word>>,
}

impl Layers {
    fn right_of(start: CanonC) -> Self {
        Layers { start, append: true, layers: Vec::new() }
    }

    fn left_of(start: CanonC) -> Self {
        Layers { start, append: false, layers: Vec::new() }
    }

    fn extend_word(&self, w: &Word, g: Generator) -> Word {
        if self.append {
            let mut out = w.clone();
            out.push(g);
            out
        } else {
            Word::new(std::iter::once(g).chain(w.letters().iter().copied()).collect())
        }
    }

    fn product(&self, z: CanonC, g: CanonC) -> CanonC {
        if self.append {
            oracle_mul_c(z, g)
        } else {
            oracle_mul_c(g, z)
        }
    }

    /// Layer for words of length `len >= 1`.
    fn layer(&mut self, len: usize) -> &BTreeMap<CanonC, Word> {
        while self.layers.len() < len {
            let prev: Vec<(CanonC, Word)> = match self.layers.last() {
                None => vec![(self.start, Word::empty())],
                Some(l) => l.iter().map(|(z, w)| (*z, w.clone())).collect(),
            };
            let mut next: BTreeMap<CanonC, Word> = BTreeMap::new();
            for (z, w) in &prev {
                for (g, gc) in GENERATORS {
                    let target = self.product(*z, gc);
                    let cand = self.extend_word(w, g);
                    match next.get(&target) {
                        Some(best) if *best <= cand => {}
                        _ => {
                            next.insert(target, cand);
                        }
                    }
                }
            }
            self.layers.push(next);
        }
        &self.layers[len - 1]
    }

    /// First word, in shortlex order, of length `<= maxlen` reaching `target`.
    fn first_reaching(&mut self, target: CanonC, maxlen: usize) -> Option<Word> {
        (1..=maxlen).find_map(|len| self.layer(len).get(&target).cloned())
    }
}

/// For side R: `u, v` with `x·u = y` and `y·v = x`; for side L: `u·x = y`
/// and `v·y = x`. Both words nonempty and of length `<= maxlen`.
pub fn green_witness(side: GreenSide, x: CanonC, y: CanonC, maxlen: usize) -> Option<WitnessPair> {
    let (mut from_x, mut from_y) = match side {
        GreenSide::R => (Layers::right_of(x), Layers::right_of(y)),
        GreenSide::L => (Layers::left_of(x), Layers::left_of(y)),
    };
    let u = from_x.first_reaching(y, maxlen)?;
    let v = from_y.first_reaching(x, maxlen)?;
    Some(WitnessPair { u, v })
}

/// `x 𝓗 y` within the bound: equal, or both 𝓡- and 𝓛-witnesses exist.
pub fn h_related(x: CanonC, y: CanonC, maxlen: usize) -> bool {
    x == y
        || (green_witness(GreenSide::R, x, y, maxlen).is_some()
            && green_witness(GreenSide::L, x, y, maxlen).is_some())
}

/// Heuristic length bound for [`simple_witness`]: twice the total exponent
/// count of both elements, plus four.
pub fn default_simple_bound(x: CanonC, y: CanonC) -> usize {
    let (k, l, m) = x.triple();
    let (n, p, q) = y.triple();
    (2 * (k + l + m + n + p + q) + 4) as usize
}

/// Nonempty `u, v` of length `<= maxlen` with `u·x·v = y`.
///
/// Candidates are ordered by `|u| + |v|`, then `u` in shortlex order, then `v`.
pub fn simple_witness(x: CanonC, y: CanonC, maxlen: usize) -> Option<WitnessPair> {
    if maxlen == 0 {
        return None;
    }
    let mut left = Layers::left_of(x);
    let mut right: HashMap<CanonC, Layers> = HashMap::new();
    for total in 2..=2 * maxlen {
        let lo = total.saturating_sub(maxlen).max(1);
        let hi = (total - 1).min(maxlen);
        for ulen in lo..=hi {
            let vlen = total - ulen;
            let mut candidates: Vec<(Word, CanonC)> =
                left.layer(ulen).iter().map(|(z, u)| (u.clone(), *z)).collect();
            candidates.sort();
            for (u, z) in candidates {
                let layers = right.entry(z).or_insert_with(|| Layers::right_of(z));
                if let Some(v) = layers.layer(vlen).get(&y) {
                    return Some(WitnessPair { u, v: v.clone() });
                }
            }
        }
    }
    None
}
