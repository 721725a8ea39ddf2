//! Words in which every letter occurs exactly twice.
//!
//! A word of length `2k` is the same thing as a perfect matching on the
//! positions `1..=2k`, or a Brauer diagram with all vertices in one row.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the half-length accepted by [`enumerate_words`].
pub const DEFAULT_K_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u16);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word from raw letter ids, checking that each id occurs exactly twice.
    pub fn from_ids(ids: &[u16]) -> Result<Self> {
        let mut counts: HashMap<u16, usize> = HashMap::new();
        for &id in ids {
            *counts.entry(id).or_default() += 1;
        }
        if let Some((&id, &count)) = counts.iter().filter(|(_, &c)| c != 2).min_by_key(|(&id, _)| id) {
            return Err(Error::LetterCount { token: letter_name(id), count });
        }
        Ok(Word { letters: ids.iter().map(|&i| Letter(i)).collect() })
    }

    /// Unchecked constructor for internal callers that preserve the invariant.
    pub(crate) fn from_ids_unchecked(ids: Vec<u16>) -> Self {
        debug_assert!(Word::from_ids(&ids).is_ok());
        Word { letters: ids.into_iter().map(Letter).collect() }
    }

    /// Builds the word whose letters pair up the given 1-based positions.
    pub fn from_pairing(pairs: &[(usize, usize)]) -> Result<Self> {
        let len = pairs.len() * 2;
        let mut ids = vec![u16::MAX; len];
        for (letter, &(i, j)) in pairs.iter().enumerate() {
            for p in [i, j] {
                if p == 0 || p > len {
                    return Err(Error::Index { index: p, max: len });
                }
                if ids[p - 1] != u16::MAX {
                    return Err(Error::Overlap(p));
                }
                ids[p - 1] = letter as u16;
            }
        }
        Ok(Word::from_ids_unchecked(ids).canonical())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn ids(&self) -> Vec<u16> {
        self.letters.iter().map(|l| l.0).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Half-length `k`.
    pub fn half_len(&self) -> usize {
        self.letters.len() / 2
    }

    /// Position of the other occurrence of the letter at each position (0-based).
    pub fn partners(&self) -> Vec<usize> {
        partners_of(&self.ids())
    }

    /// Pairing view: 1-based position pairs `(i, j)` with `i < j`, sorted by `i`.
    pub fn pairing(&self) -> Vec<(usize, usize)> {
        self.partners().iter().enumerate().filter(|(i, &j)| *i < j).map(|(i, &j)| (i + 1, j + 1)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        let mut next = 0u16;
        for l in &self.letters {
            if l.0 == next {
                next += 1;
            } else if l.0 > next {
                return false;
            }
        }
        true
    }

    /// Renames letters in order of first occurrence.
    pub fn canonical(&self) -> Word {
        Word { letters: canonical_ids(&self.ids()).into_iter().map(Letter).collect() }
    }

    /// Reflection of the diagram: the letter sequence reversed, then canonicalized.
    pub fn reverse(&self) -> Word {
        let mut ids = self.ids();
        ids.reverse();
        Word::from_ids_unchecked(canonical_ids(&ids))
    }

    /// Juxtaposition `uv`, with `v`'s letters shifted past `u`'s alphabet.
    pub fn concat(&self, other: &Word) -> Word {
        let u = canonical_ids(&self.ids());
        let shift = self.half_len() as u16;
        let ids: Vec<u16> = u.into_iter().chain(canonical_ids(&other.ids()).into_iter().map(|id| id + shift)).collect();
        Word::from_ids_unchecked(canonical_ids(&ids))
    }

    /// True when the word is `aabbcc…`, i.e. every pair is adjacent at (2t-1, 2t).
    pub fn is_base(&self) -> bool {
        self.letters.chunks(2).all(|c| c[0] == c[1])
    }

    /// The base word `aabbcc…` of half-length `k`.
    pub fn base(k: usize) -> Word {
        Word::from_ids_unchecked((0..k as u16).flat_map(|i| [i, i]).collect())
    }
}

impl fmt::Display for Word {
    /// Contiguous letters when the alphabet fits in `a..z`, otherwise comma-separated ids.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|l| l.0 < 26) {
            for l in &self.letters {
                write!(f, "{}", (b'a' + l.0 as u8) as char)?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.0.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

fn letter_name(id: u16) -> String {
    if id < 26 {
        ((b'a' + id as u8) as char).to_string()
    } else {
        id.to_string()
    }
}

pub(crate) fn partners_of(ids: &[u16]) -> Vec<usize> {
    let mut first: HashMap<u16, usize> = HashMap::with_capacity(ids.len() / 2);
    let mut partner = vec![usize::MAX; ids.len()];
    for (pos, &id) in ids.iter().enumerate() {
        if let Some(p) = first.remove(&id) {
            partner[p] = pos;
            partner[pos] = p;
        } else {
            first.insert(id, pos);
        }
    }
    partner
}

pub(crate) fn canonical_ids(ids: &[u16]) -> Vec<u16> {
    let mut rename: HashMap<u16, u16> = HashMap::with_capacity(ids.len() / 2);
    ids.iter()
        .map(|id| {
            let next = rename.len() as u16;
            *rename.entry(*id).or_insert(next)
        })
        .collect()
}

/// Parses `aabccb` style text or comma-separated tokens (`x,y,x,y`).
///
/// Tokens map to letters in order of first appearance; the word is not
/// otherwise canonicalized, so distinct tokens keep their relative names.
pub fn parse_word(text: &str) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Word::empty());
    }
    let tokens: Vec<String> = if text.contains(',') {
        text.split(',')
            .enumerate()
            .map(|(index, t)| {
                let t = t.trim();
                if t.is_empty() {
                    Err(Error::EmptyToken { input: text.to_string(), index })
                } else {
                    Ok(t.to_string())
                }
            })
            .collect::<Result<_>>()?
    } else {
        text.chars()
            .map(|c| if c.is_ascii_lowercase() { Ok(c.to_string()) } else { Err(Error::InvalidCharacter(c)) })
            .collect::<Result<_>>()?
    };

    let mut counts: Vec<(String, usize)> = Vec::new();
    for t in &tokens {
        match counts.iter_mut().find(|(name, _)| name == t) {
            Some(entry) => entry.1 += 1,
            None => counts.push((t.clone(), 1)),
        }
    }
    if let Some((token, count)) = counts.iter().find(|(_, c)| *c != 2) {
        return Err(Error::LetterCount { token: token.clone(), count: *count });
    }

    let ids: Vec<u16> = if !text.contains(',') {
        // alphabet position, so "bbaa" stays [b,b,a,a]
        tokens.iter().map(|t| (t.as_bytes()[0] - b'a') as u16).collect()
    } else if let Ok(values) = tokens.iter().map(|t| t.parse::<u16>()).collect::<std::result::Result<Vec<u16>, _>>() {
        values
    } else {
        let mut names: Vec<&str> = counts.iter().map(|(n, _)| n.as_str()).collect();
        names.sort();
        tokens.iter().map(|t| names.iter().position(|n| n == t).unwrap() as u16).collect()
    };
    Ok(Word::from_ids_unchecked(ids))
}

/// Double factorial `(2k-1)!!`, the number of perfect matchings on `2k` points.
pub fn double_factorial_odd(k: usize) -> u128 {
    (1..=k as u128).map(|i| 2 * i - 1).product()
}

/// All canonical words of half-length `k`, capped at [`DEFAULT_K_CAP`].
pub fn enumerate_words(k: usize) -> Result<Vec<Word>> {
    enumerate_words_capped(k, DEFAULT_K_CAP)
}

/// All canonical words of half-length `k`.
///
/// The smallest open position is paired first, partners in ascending order.
pub fn enumerate_words_capped(k: usize, cap: usize) -> Result<Vec<Word>> {
    if k > cap {
        return Err(Error::SizeLimit { requested: k, cap });
    }
    let mut out = Vec::with_capacity(double_factorial_odd(k) as usize);
    let mut ids = vec![u16::MAX; 2 * k];
    fill_matchings(&mut ids, 0, &mut out);
    Ok(out)
}

fn fill_matchings(ids: &mut [u16], next_letter: u16, out: &mut Vec<Word>) {
    let Some(first) = ids.iter().position(|&x| x == u16::MAX) else {
        out.push(Word::from_ids_unchecked(ids.to_vec()));
        return;
    };
    ids[first] = next_letter;
    for partner in first + 1..ids.len() {
        if ids[partner] == u16::MAX {
            ids[partner] = next_letter;
            fill_matchings(ids, next_letter + 1, out);
            ids[partner] = u16::MAX;
        }
    }
    ids[first] = u16::MAX;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    AsciiArc,
    Dot,
}

impl std::str::FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ascii" | "ascii-arc" => Ok(RenderFormat::AsciiArc),
            "dot" => Ok(RenderFormat::Dot),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramRender {
    pub format: RenderFormat,
    pub text: String,
}

pub fn render(w: &Word, format: RenderFormat) -> DiagramRender {
    let text = match format {
        RenderFormat::AsciiArc => render_ascii(w),
        RenderFormat::Dot => render_dot(w),
    };
    DiagramRender { format, text }
}

/// Arc levels: shorter arcs sit lower, an arc is raised above every
/// already-placed arc whose span overlaps its own.
fn arc_levels(pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| (pairs[i].1 - pairs[i].0, pairs[i].0));
    let mut level = vec![0usize; pairs.len()];
    for (placed, &i) in order.iter().enumerate() {
        let (a, b) = pairs[i];
        let below = order[..placed]
            .iter()
            .filter(|&&j| {
                let (c, d) = pairs[j];
                c <= b && a <= d
            })
            .map(|&j| level[j])
            .max()
            .unwrap_or(0);
        level[i] = below + 1;
    }
    level
}

// Vertices sit in columns 0, 4, 8, …; each arc is a `+---+` bar on its
// level with `|` legs down to the vertex row, which shows the letters.
#[allow(clippy::needless_range_loop)]
fn render_ascii(w: &Word) -> String {
    if w.is_empty() {
        return String::from("(empty)");
    }
    let pairs = w.pairing();
    let levels = arc_levels(&pairs);
    let height = levels.iter().copied().max().unwrap_or(0);
    let width = 4 * (w.len() - 1) + 1;
    let mut grid = vec![vec![' '; width]; height];
    // row 0 is the top line
    for (&(a, b), &lvl) in pairs.iter().zip(&levels) {
        let (ca, cb) = (4 * (a - 1), 4 * (b - 1));
        let row = height - lvl;
        for c in ca + 1..cb {
            if grid[row][c] == ' ' {
                grid[row][c] = '-';
            }
        }
        grid[row][ca] = '+';
        grid[row][cb] = '+';
        for r in row + 1..height {
            grid[r][ca] = '|';
            grid[r][cb] = '|';
        }
    }
    let mut lines: Vec<String> =
        grid.into_iter().map(|r| r.into_iter().collect::<String>().trim_end().to_string()).collect();
    let name = w.to_string();
    let labels: Vec<String> = if name.contains(',') {
        w.letters().iter().map(|l| l.0.to_string()).collect()
    } else {
        name.chars().map(|c| c.to_string()).collect()
    };
    let mut bottom = String::new();
    for (i, label) in labels.iter().enumerate() {
        let col = 4 * i;
        while bottom.chars().count() < col {
            bottom.push(' ');
        }
        bottom.push_str(label);
    }
    lines.push(bottom);
    lines.join("\n")
}

fn render_dot(w: &Word) -> String {
    let mut out = String::from("graph word {\n  node [shape=circle];\n");
    let name = w.to_string();
    let labels: Vec<String> = if name.contains(',') || w.is_empty() {
        w.letters().iter().map(|l| l.0.to_string()).collect()
    } else {
        name.chars().map(|c| c.to_string()).collect()
    };
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  v{} [label=\"{}:{}\", pos=\"{},0!\"];\n", i + 1, i + 1, label, i + 1));
    }
    if !w.is_empty() {
        let ranks: Vec<String> = (1..=w.len()).map(|i| format!("v{i}")).collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", ranks.join("; ")));
    }
    for (a, b) in w.pairing() {
        out.push_str(&format!("  v{a} -- v{b};\n"));
    }
    out.push_str("}\n");
    out
}
