//! Reduction of words to their polynomials `|w⟩`.
//!
//! A word is sorted toward the base word `aabbcc…` by adjacent
//! transpositions. Each transposition costs a sum of shorter words carrying
//! a factor of `K`, so the recursion terminates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use crate::algebra::{DiagramPoly, RatFunN, UPoly, Q};
use crate::error::{Error, Result};
use crate::word::{canonical_ids, partners_of, Word};

/// Which transposition is expanded next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Schedule {
    /// Fix the leftmost unpaired slot by pulling its partner leftward.
    #[default]
    LeftmostDefect,
    /// Fix the rightmost unpaired slot by pushing its partner rightward.
    RightmostDefect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReduceOptions {
    /// Drop commutator terms for letters whose two occurrences both lie in
    /// the tail after the transposition; those terms cancel in pairs.
    pub skip_paired_tail: bool,
    pub schedule: Schedule,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { skip_paired_tail: true, schedule: Schedule::LeftmostDefect }
    }
}

/// A linear combination of words with `DiagramPoly` coefficients.
///
/// Words are stored canonical and like terms are merged.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightedWordSum {
    terms: BTreeMap<Word, DiagramPoly>,
}

impl WeightedWordSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, coeff: DiagramPoly, word: Word) {
        if coeff.is_zero() {
            return;
        }
        let word = word.canonical();
        let entry = self.terms.entry(word).or_insert_with(DiagramPoly::zero);
        *entry = &*entry + &coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &DiagramPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ coeff · |word⟩`.
    pub fn evaluate(&self, reducer: &Reducer) -> DiagramPoly {
        self.terms.iter().fold(DiagramPoly::zero(), |acc, (w, c)| &acc + &(c * &reducer.reduce(w)))
    }
}

/// Memoizing reducer. The cache is keyed by canonical word.
#[derive(Debug, Default)]
pub struct Reducer {
    options: ReduceOptions,
    cache: RwLock<HashMap<Vec<u16>, DiagramPoly>>,
}

impl Reducer {
    pub fn new(options: ReduceOptions) -> Self {
        Reducer { options, cache: RwLock::new(HashMap::new()) }
    }

    pub fn options(&self) -> ReduceOptions {
        self.options
    }

    pub fn reduce(&self, w: &Word) -> DiagramPoly {
        let ids = canonical_ids(&w.ids());
        self.reduce_ids(ids)
    }

    /// Number of cached canonical words.
    pub fn cache_len(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    /// Snapshot of the cache, sorted by word.
    pub fn cache_entries(&self) -> Vec<(Word, DiagramPoly)> {
        let cache = self.cache.read().unwrap();
        let mut out: Vec<(Word, DiagramPoly)> =
            cache.iter().map(|(ids, p)| (Word::from_ids_unchecked(ids.clone()), p.clone())).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// Seeds the cache, e.g. from a persisted file. The word is canonicalized first.
    pub fn insert_cached(&self, w: &Word, p: DiagramPoly) {
        self.cache.write().unwrap().insert(canonical_ids(&w.ids()), p);
    }

    fn reduce_ids(&self, ids: Vec<u16>) -> DiagramPoly {
        if let Some(p) = self.cache.read().unwrap().get(&ids) {
            return p.clone();
        }
        let k = ids.len() / 2;
        let mut cur = ids.clone();
        let mut acc = DiagramPoly::zero();
        while let Some(i) = next_transposition(&cur, self.options.schedule) {
            for (coeff, word) in commutator_terms(&cur, i, self.options.skip_paired_tail) {
                acc = &acc + &(&coeff * &self.reduce_ids(canonical_ids(&word)));
            }
            cur.swap(i, i + 1);
        }
        let result = &acc + &DiagramPoly::theta_pow(k as u32);
        self.cache.write().unwrap().insert(ids, result.clone());
        result
    }

    /// Expansion of `|w⟩ − |(i, i+1)·w⟩` for the 1-based position `i`.
    pub fn transpose_step(&self, w: &Word, i: usize) -> Result<WeightedWordSum> {
        let len = w.len();
        if i == 0 || i >= len {
            return Err(Error::Index { index: i, max: len.saturating_sub(1) });
        }
        let mut out = WeightedWordSum::new();
        for (coeff, ids) in commutator_terms(&w.ids(), i - 1, self.options.skip_paired_tail) {
            out.add(coeff, Word::from_ids_unchecked(ids));
        }
        Ok(out)
    }
}

/// 0-based index `i` of the next transposition `(i, i+1)`, or `None` on the base word.
fn next_transposition(ids: &[u16], schedule: Schedule) -> Option<usize> {
    let partners = partners_of(ids);
    match schedule {
        Schedule::LeftmostDefect => {
            let p = (0..ids.len()).step_by(2).find(|&p| ids[p] != ids[p + 1])?;
            Some(partners[p] - 1)
        }
        Schedule::RightmostDefect => {
            let q = (1..ids.len()).step_by(2).rev().find(|&q| ids[q] != ids[q - 1])?;
            Some(partners[q])
        }
    }
}

/// Terms of `|w⟩ − |(i, i+1)·w⟩` (0-based `i`), words of length `2k − 2`, not canonicalized.
fn commutator_terms(ids: &[u16], i: usize, skip_paired_tail: bool) -> Vec<(DiagramPoly, Vec<u16>)> {
    let len = ids.len();
    let (x, y) = (ids[i], ids[i + 1]);
    if x == y || i + 2 >= len {
        return Vec::new();
    }
    let partners = partners_of(ids);
    let k_n1 = DiagramPoly::term(0, 1, RatFunN::n_plus(-1));
    let k = DiagramPoly::k();
    let minus_k = -&k;

    // positions in the shortened word are shifted by 2 past i
    let shorten = |edits: &[(usize, u16)]| -> Vec<u16> {
        let mut v: Vec<u16> = ids.to_vec();
        for &(pos, letter) in edits {
            v[pos] = letter;
        }
        v.remove(i + 1);
        v.remove(i);
        v
    };

    let mut out = Vec::new();
    for j in i + 2..len {
        let z = ids[j];
        if z == x {
            out.push((k_n1.clone(), shorten(&[(j, y)])));
        } else if z == y {
            out.push((-&k_n1, shorten(&[(j, x)])));
        } else {
            let o = partners[j];
            if skip_paired_tail && o >= i + 2 {
                continue;
            }
            out.push((minus_k.clone(), shorten(&[(o, y), (j, x)])));
            out.push((k.clone(), shorten(&[(o, x), (j, y)])));
        }
    }
    out
}

fn default_reducer() -> &'static Reducer {
    static DEFAULT: OnceLock<Reducer> = OnceLock::new();
    DEFAULT.get_or_init(Reducer::default)
}

/// Process-wide reducer with the default options.
pub fn global_reducer() -> &'static Reducer {
    default_reducer()
}

/// `|w⟩` using the shared process-wide cache.
pub fn reduce(w: &Word) -> DiagramPoly {
    default_reducer().reduce(w)
}

/// See [`Reducer::transpose_step`].
pub fn transpose_step(w: &Word, i: usize) -> Result<WeightedWordSum> {
    default_reducer().transpose_step(w, i)
}

/// Top component of a reduced word's polynomial when `θ` and `n` have weight 1
/// and `K` weight 0: from each `θ^a K^b c(n)` keep the `n^b` part of `c`.
pub fn leading_part(p: &DiagramPoly, k: usize) -> Result<DiagramPoly> {
    let grade = |reason: String| Error::Grade { k, reason };
    if p.is_zero() {
        return Ok(DiagramPoly::zero());
    }
    if p.homogeneous_degree() != Some(k as u32) {
        return Err(grade("terms are not all of θ,K-degree k".into()));
    }
    let mut out = DiagramPoly::zero();
    for (a, b, c) in p.terms() {
        if !c.is_polynomial() {
            return Err(grade(format!("coefficient {c} of θ^{a}K^{b} is not a polynomial in n")));
        }
        let num = c.num();
        if num.degree().is_some_and(|d| d > b as usize) {
            return Err(grade(format!("coefficient {c} of θ^{a}K^{b} has n-degree above {b}")));
        }
        let mut e = vec![Q::zero(); b as usize + 1];
        e[b as usize] = num.coeff(b as usize);
        out.add_term(a, b, RatFunN::from_poly(UPoly::from_coeffs(e)));
    }
    Ok(out)
}
