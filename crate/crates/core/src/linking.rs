//! Linking operators: joining two positions of a diagram, with closed loops
//! counted as circles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{DiagramPoly, RatFunN};
use crate::error::{Error, Result};
use crate::reduction::Reducer;
use crate::word::Word;

/// Disjoint pairs `(i, j)`, `i < j`, stored sorted. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkSpec {
    pairs: Vec<(usize, usize)>,
}

impl LinkSpec {
    /// Orders each pair, sorts, and rejects repeated indices.
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        pairs.sort();
        let mut seen: Vec<usize> = pairs.iter().flat_map(|&(i, j)| [i, j]).collect();
        seen.sort();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Overlap(w[0]));
        }
        if let Some(&zero) = seen.first().filter(|&&i| i == 0) {
            return Err(Error::Index { index: zero, max: 0 });
        }
        Ok(LinkSpec { pairs })
    }

    pub fn empty() -> Self {
        LinkSpec { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs `l`.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.pairs.iter().map(|p| p.1).max().unwrap_or(0)
    }

    /// Parses `i:j[,i:j...]`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(LinkSpec::empty());
        }
        let pairs = text
            .split(',')
            .map(|part| {
                let (a, b) = part.split_once(':').ok_or_else(|| Error::Parse(format!("expected i:j, got `{part}`")))?;
                let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{s}`")));
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        LinkSpec::new(pairs)
    }

    /// Label such as `1:2,3:4`, empty for no pairs.
    pub fn label(&self) -> String {
        self.pairs.iter().map(|(i, j)| format!("{i}:{j}")).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for LinkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl std::str::FromStr for LinkSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LinkSpec::parse(s)
    }
}

/// `n^circles · |word⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkedWord {
    pub circles: usize,
    pub word: Word,
}

impl LinkedWord {
    pub fn value(&self, reducer: &Reducer) -> DiagramPoly {
        reducer.reduce(&self.word).scalar_mul(&RatFunN::n().pow(self.circles as u32))
    }
}

/// `L(i; j)` on 1-based positions.
pub fn link(w: &Word, i: usize, j: usize) -> Result<LinkedWord> {
    if i >= j {
        return Err(Error::Index { index: i, max: j.saturating_sub(1) });
    }
    multi_link(w, &LinkSpec::new([(i, j)])?)
}

/// Applies every pair of `spec` to `w`; positions refer to the original word.
pub fn multi_link(w: &Word, spec: &LinkSpec) -> Result<LinkedWord> {
    let len = w.len();
    if let Some(&(_, j)) = spec.pairs().iter().find(|&&(_, j)| j > len) {
        return Err(Error::Index { index: j, max: len });
    }
    let mut slots: Vec<Option<u16>> = w.ids().into_iter().map(Some).collect();
    let mut circles = 0;
    for &(i, j) in spec.pairs() {
        let (a, b) = (slots[i - 1].take().unwrap(), slots[j - 1].take().unwrap());
        if a == b {
            circles += 1;
        } else {
            // the remaining slots always form a word, so `b` occurs once more
            let other = slots.iter_mut().flatten().find(|l| **l == b).expect("second occurrence");
            *other = a;
        }
    }
    let ids: Vec<u16> = slots.into_iter().flatten().collect();
    Ok(LinkedWord { circles, word: Word::from_ids_unchecked(crate::word::canonical_ids(&ids)) })
}

/// `a₁a₂⋯a_k a_k⋯a₂a₁`.
pub fn tau(k: usize) -> Word {
    let ids: Vec<u16> = (0..k as u16).chain((0..k as u16).rev()).collect();
    Word::from_ids_unchecked(ids)
}

/// `a₁⋯a_k a_{σ(1)}⋯a_{σ(k)}` for a permutation given as 1-based images.
pub fn tau_sigma(sigma: &[usize]) -> Result<Word> {
    let k = sigma.len();
    let mut seen = vec![false; k];
    for &s in sigma {
        if s == 0 || s > k || std::mem::replace(&mut seen[s - 1], true) {
            return Err(Error::Index { index: s, max: k });
        }
    }
    let ids: Vec<u16> = (0..k as u16).chain(sigma.iter().map(|&s| (s - 1) as u16)).collect();
    Ok(Word::from_ids_unchecked(ids))
}

/// Links, on the right half of `τ(k)`, the letters `a_{i₁}` with `a_{i₂}` for every pair of `spec`.
pub fn tau_linked(k: usize, spec: &LinkSpec) -> Result<Word> {
    let sigma: Vec<usize> = (1..=k).rev().collect();
    tau_sigma_linked(&sigma, spec)
}

/// As [`tau_linked`], starting from [`tau_sigma`].
pub fn tau_sigma_linked(sigma: &[usize], spec: &LinkSpec) -> Result<Word> {
    let k = sigma.len();
    if spec.max_index() > k {
        return Err(Error::Index { index: spec.max_index(), max: k });
    }
    let mut right_pos = vec![0; k + 1];
    for (t, &s) in sigma.iter().enumerate() {
        right_pos[s] = k + t + 1;
    }
    let positions = LinkSpec::new(spec.pairs().iter().map(|&(a, b)| (right_pos[a], right_pos[b])))?;
    let start = tau_sigma(sigma)?;
    let linked = multi_link(&start, &positions)?;
    if linked.circles != 0 {
        return Err(Error::CircleUnexpected { k, circles: linked.circles });
    }
    Ok(linked.word)
}
