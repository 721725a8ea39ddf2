//! Shared helpers for the integration tests, including an independent
//! brute-force evaluator of word polynomials.
#![allow(dead_code)]

use std::collections::BTreeMap;

use sfdc_core::algebra::{RatFunN, UPoly, Q};
use sfdc_core::{DiagramPoly, Word};

/// Integer polynomial in `(θ, K, n)`, keyed by exponents.
pub type IntPoly = BTreeMap<(u32, u32, u32), i128>;

fn add_into(acc: &mut IntPoly, p: &IntPoly, scale: &IntPoly) {
    for (&(a, b, c), &x) in p {
        for (&(d, e, f), &y) in scale {
            let slot = acc.entry((a + d, b + e, c + f)).or_insert(0);
            *slot += x * y;
        }
    }
    acc.retain(|_, v| *v != 0);
}

fn theta_pow(k: usize) -> IntPoly {
    IntPoly::from([((k as u32, 0, 0), 1)])
}

/// Matching view: `m[i]` is the partner of position `i`.
fn matching(w: &[u16]) -> Vec<usize> {
    let mut m = vec![0; w.len()];
    for i in 0..w.len() {
        for j in 0..w.len() {
            if i != j && w[i] == w[j] {
                m[i] = j;
            }
        }
    }
    m
}

/// Drops positions `i` and `i + 1` from a matching after re-pairing some positions.
fn surgery(m: &[usize], i: usize, joins: &[(usize, usize)]) -> Vec<usize> {
    let mut m = m.to_vec();
    for &(x, y) in joins {
        m[x] = y;
        m[y] = x;
    }
    let keep: Vec<usize> = (0..m.len()).filter(|&p| p != i && p != i + 1).collect();
    let new_index = |p: usize| keep.iter().position(|&q| q == p).unwrap();
    keep.iter().map(|&p| new_index(m[p])).collect()
}

/// `|w⟩` by the defining recursion: no cache, no cancellation shortcut,
/// positions handled as a matching rather than letters.
pub fn brute_reduce(m: &[usize]) -> IntPoly {
    let len = m.len();
    let Some(p) = (0..len).step_by(2).find(|&p| m[p] != p + 1) else {
        return theta_pow(len / 2);
    };
    // bring the partner of p next to it, one transposition at a time
    let i = m[p] - 1;
    let mut swapped = m.to_vec();
    let (a, b) = (m[i], m[i + 1]);
    swapped[i] = b;
    swapped[i + 1] = a;
    swapped[a] = i + 1;
    swapped[b] = i;
    let mut acc = brute_reduce(&swapped);
    let k_n1: IntPoly = IntPoly::from([((0, 1, 1), 1), ((0, 1, 0), -1)]);
    let minus_k_n1: IntPoly = k_n1.iter().map(|(&e, &c)| (e, -c)).collect();
    let k: IntPoly = IntPoly::from([((0, 1, 0), 1)]);
    let minus_k: IntPoly = IntPoly::from([((0, 1, 0), -1)]);
    let (x_other, y_other) = (m[i], m[i + 1]);
    for j in i + 2..len {
        if j == x_other {
            // the letter at i: j now carries the letter of i+1
            add_into(&mut acc, &brute_reduce(&surgery(m, i, &[(j, y_other)])), &k_n1);
        } else if j == y_other {
            add_into(&mut acc, &brute_reduce(&surgery(m, i, &[(j, x_other)])), &minus_k_n1);
        } else {
            let o = m[j];
            // o takes the letter of i+1 and j the letter of i, then the reverse
            add_into(&mut acc, &brute_reduce(&surgery(m, i, &[(o, y_other), (j, x_other)])), &minus_k);
            add_into(&mut acc, &brute_reduce(&surgery(m, i, &[(o, x_other), (j, y_other)])), &k);
        }
    }
    acc
}

pub fn brute_reduce_word(w: &Word) -> IntPoly {
    brute_reduce(&matching(&w.ids()))
}

pub fn int_to_diagram(p: &IntPoly) -> DiagramPoly {
    let mut grouped: BTreeMap<(u32, u32), Vec<Q>> = BTreeMap::new();
    for (&(a, b, c), &x) in p {
        let v = grouped.entry((a, b)).or_default();
        if v.len() <= c as usize {
            v.resize(c as usize + 1, Q::from_integer(0.into()));
        }
        v[c as usize] = Q::from_integer(x.into());
    }
    let mut out = DiagramPoly::zero();
    for ((a, b), coeffs) in grouped {
        out.add_term(a, b, RatFunN::from_poly(UPoly::from_coeffs(coeffs)));
    }
    out
}

/// All permutations of `1..=k` as 1-based images.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i + 1);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Word from letters given as 1-based indices into `a₁, a₂, …`.
pub fn word_of(letters: &[usize]) -> Word {
    let ids: Vec<u16> = letters.iter().map(|&l| (l - 1) as u16).collect();
    Word::from_ids(&ids).unwrap()
}

/// `θ(θ + Kn)(θ + 2Kn)⋯` with the given multiples of `Kn`.
pub fn theta_kn_product(multiples: &[i64]) -> DiagramPoly {
    multiples.iter().fold(DiagramPoly::one(), |acc, &m| {
        let factor = &DiagramPoly::theta() + &DiagramPoly::term(0, 1, RatFunN::n() * RatFunN::from_int(m));
        &acc * &factor
    })
}
