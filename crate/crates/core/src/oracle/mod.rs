//! Exact check of the word calculus on the unit sphere `Sⁿ` (`K = 1`).
//!
//! Eigenfunctions are harmonic polynomials restricted to the sphere;
//! covariant derivatives are ambient partial derivatives projected onto the
//! tangent space in every slot; parallel tensors are contracted with the
//! metric `P = δ − q qᵀ` and the volume form at a rational point `q`.

pub mod harmonic;
pub mod points;
pub mod poly;
pub mod tensor;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use harmonic::{eigenspace_dim, make_eigenfunction, HarmonicEigenfunction};
pub use points::{sphere_points, SpherePoint};
pub use poly::SpherePoly;
pub use tensor::{AmbientTensorField, DerivativeTower, EvaluatedTensor};

use crate::algebra::{q as qi, Q};
use crate::error::{Error, Result};
use crate::reduction::reduce;
use crate::word::Word;

/// `P^{ab} = δ_{ab} − q_a q_b`.
fn metric_inverse(q: &SpherePoint) -> Vec<Vec<Q>> {
    let c = q.coords();
    (0..c.len()).map(|a| (0..c.len()).map(|b| if a == b { qi(1) } else { qi(0) } - &c[a] * &c[b]).collect()).collect()
}

fn index_tuples(nvars: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..nvars.pow(len as u32)).map(move |mut flat| {
        let mut idx = vec![0; len];
        for s in (0..len).rev() {
            idx[s] = flat % nvars;
            flat /= nvars;
        }
        idx
    })
}

fn f_at(tower: &mut DerivativeTower, q: &SpherePoint) -> Result<Q> {
    let fq = tower.get(0)?.eval(q).values[0].clone();
    if fq.is_zero() {
        return Err(Error::BasePoint);
    }
    Ok(fq)
}

/// `(∇^{2k} f)` contracted along the pairing of `w` with `P`, divided by `f(q)`.
pub fn contract_word(tower: &mut DerivativeTower, w: &Word, q: &SpherePoint) -> Result<Q> {
    let fq = f_at(tower, q)?;
    let t = tower.get(w.len())?.eval(q);
    Ok(contract_pairing(&t, &w.pairing(), q) / fq)
}

/// Full contraction of an evaluated tensor along 1-based slot pairs.
pub fn contract_pairing(t: &EvaluatedTensor, pairs: &[(usize, usize)], q: &SpherePoint) -> Q {
    let p = metric_inverse(q);
    let mut acc = Q::zero();
    for (flat, idx) in index_tuples(t.nvars, t.rank).enumerate() {
        let v = &t.values[flat];
        if v.is_zero() {
            continue;
        }
        let weight = pairs.iter().fold(qi(1), |w, &(i, j)| w * &p[idx[i - 1]][idx[j - 1]]);
        acc += v * weight;
    }
    acc
}

/// Engine prediction for [`contract_word`]: `|w⟩` at `θ = −p(p+n−1)`, `K = 1`.
pub fn engine_value(w: &Word, n: usize, p: usize) -> Result<Q> {
    let lambda = (p * (p + n - 1)) as i64;
    reduce(w).substitute(&qi(-lambda), &qi(1), n as i64)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `Λ^{a₁…a_n}(q) = Σ_b ε_{b a₁…a_n} q_b`.
fn volume_component(idx: &[usize], q: &SpherePoint) -> Q {
    let nvars = idx.len() + 1;
    let mut acc = Q::zero();
    for (b, qb) in q.coords().iter().enumerate() {
        let mut perm = Vec::with_capacity(nvars);
        perm.push(b);
        perm.extend_from_slice(idx);
        let mut sorted = perm.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == nvars {
            acc += qb * qi(permutation_sign(&perm));
        }
    }
    acc
}

/// A permutation of `0..r` drawn from `seed`.
pub fn seeded_permutation(r: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..r).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// `(∇^{2k+n} f)(σ(θ^{⊗k} ⊗ Λ))` at `q`: slot `s` of the derivative receives
/// position `sigma[s]` of `θ^{⊗k} ⊗ Λ`.
pub fn contract_volume_at(tower: &mut DerivativeTower, k: usize, sigma: &[usize], q: &SpherePoint) -> Result<Q> {
    let nvars = q.coords().len();
    let n = nvars - 1;
    let rank = 2 * k + n;
    assert_eq!(sigma.len(), rank);
    let t = tower.get(rank)?.eval(q);
    let p = metric_inverse(q);
    let mut acc = Q::zero();
    let mut pos = vec![0; rank];
    for (flat, idx) in index_tuples(nvars, rank).enumerate() {
        let v = &t.values[flat];
        if v.is_zero() {
            continue;
        }
        for (s, &a) in idx.iter().enumerate() {
            pos[sigma[s]] = a;
        }
        let mut weight = volume_component(&pos[2 * k..], q);
        for pair in 0..k {
            weight *= &p[pos[2 * pair]][pos[2 * pair + 1]];
        }
        acc += v * weight;
    }
    Ok(acc)
}

/// [`contract_volume_at`] for the first basis eigenfunction at the first standard point.
pub fn contract_volume(n: usize, p: usize, k: usize, sigma_seed: u64) -> Result<Q> {
    let f = make_eigenfunction(n, p, 0)?;
    let mut tower = DerivativeTower::new(f.reduced);
    let sigma = seeded_permutation(2 * k + n, sigma_seed);
    contract_volume_at(&mut tower, k, &sigma, &sphere_points(n, 1)[0])
}

/// Tangent vectors `Z_s = P e_{frame[s]}` at `q`.
fn frame_vectors(frame: &[usize], q: &SpherePoint) -> Vec<Vec<Q>> {
    let p = metric_inverse(q);
    frame.iter().map(|&a| p.iter().map(|row| row[a].clone()).collect()).collect()
}

fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Checks at `q`, for 1-based `i`:
/// `(∇^m f)(…Z_i, Z_{i+1}…) − (∇^m f)(…Z_{i+1}, Z_i…) = Σ_{j>i+1} (∇^{m−2} f)(…, −R(Z_i, Z_{i+1})Z_j, …)`
/// with `Z_i, Z_{i+1}` removed on the right, and the symmetry of the last two slots.
pub fn commutation_check(
    tower: &mut DerivativeTower,
    m: usize,
    i: usize,
    frame: &[usize],
    q: &SpherePoint,
) -> Result<bool> {
    check_index(m, i)?;
    let top = tower.get(m)?.eval(q);
    let low = tower.get(m - 2)?.eval(q);
    Ok(commutation_holds(&top, &low, i, &frame_vectors(frame, q)))
}

fn check_index(m: usize, i: usize) -> Result<()> {
    if i == 0 || i >= m {
        return Err(Error::Index { index: i, max: m.saturating_sub(1) });
    }
    Ok(())
}

fn commutation_holds(top: &EvaluatedTensor, low: &EvaluatedTensor, i: usize, z: &[Vec<Q>]) -> bool {
    let m = top.rank;
    let swap = |v: &[Vec<Q>], a: usize| {
        let mut v = v.to_vec();
        v.swap(a, a + 1);
        v
    };
    let base = top.apply(z);
    if base != top.apply(&swap(z, m - 2)) {
        return false;
    }
    let (a, b) = (i - 1, i);
    let lhs = &base - top.apply(&swap(z, a));
    let mut rhs = Q::zero();
    for j in i + 1..m {
        // −R(Z_i, Z_{i+1})Z_j = g(Z_i, Z_j) Z_{i+1} − g(Z_{i+1}, Z_j) Z_i
        let (gi, gi1) = (dot(&z[a], &z[j]), dot(&z[b], &z[j]));
        let w: Vec<Q> = (0..z[j].len()).map(|c| &gi * &z[b][c] - &gi1 * &z[a][c]).collect();
        let args: Vec<Vec<Q>> =
            (0..m).filter(|&s| s != a && s != b).map(|s| if s == j { w.clone() } else { z[s].clone() }).collect();
        rhs += low.apply(&args);
    }
    lhs == rhs
}

/// [`commutation_check`] over every frame choice `{0..N}^m`.
pub fn commutation_check_all_frames(tower: &mut DerivativeTower, m: usize, i: usize, q: &SpherePoint) -> Result<bool> {
    check_index(m, i)?;
    let top = tower.get(m)?.eval(q);
    let low = tower.get(m - 2)?.eval(q);
    let nvars = q.coords().len();
    Ok(index_tuples(nvars, m).all(|frame| commutation_holds(&top, &low, i, &frame_vectors(&frame, q))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q_frac;

    fn tower(n: usize, p: usize, index: usize) -> DerivativeTower {
        DerivativeTower::new(make_eigenfunction(n, p, index).unwrap().reduced)
    }

    #[test]
    fn laplacian_word() {
        let mut t = tower(2, 1, 0);
        let bad = SpherePoint::new(vec![q_frac(3, 5), q_frac(4, 5), q_frac(0, 1)]).unwrap();
        assert_eq!(contract_word(&mut t, &"aa".parse().unwrap(), &bad), Err(Error::BasePoint));
        let good = SpherePoint::new(vec![q_frac(3, 5), q_frac(0, 1), q_frac(4, 5)]).unwrap();
        assert_eq!(contract_word(&mut t, &"aa".parse().unwrap(), &good).unwrap(), qi(-2));
        assert_eq!(contract_word(&mut t, &"abba".parse().unwrap(), &good).unwrap(), qi(2));
        assert_eq!(contract_word(&mut t, &Word::empty(), &good).unwrap(), qi(1));
    }

    #[test]
    fn engine_matches_on_k2() {
        for (n, p) in [(2, 1), (2, 2), (3, 1)] {
            let mut t = tower(n, p, 0);
            for q in sphere_points(n, 2) {
                for w in crate::word::enumerate_words(2).unwrap() {
                    assert_eq!(
                        contract_word(&mut t, &w, &q).unwrap(),
                        engine_value(&w, n, p).unwrap(),
                        "{w} n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn volume_vanishes() {
        assert_eq!(contract_volume(2, 1, 0, 7).unwrap(), qi(0));
        assert_eq!(contract_volume(3, 1, 0, 7).unwrap(), qi(0));
        assert_eq!(contract_volume(2, 2, 1, 11).unwrap(), qi(0));
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }

    #[test]
    fn commutation_small() {
        let mut t = tower(2, 2, 0);
        let q = &sphere_points(2, 1)[0];
        assert!(commutation_check_all_frames(&mut t, 3, 1, q).unwrap());
        assert!(commutation_check_all_frames(&mut t, 3, 2, q).unwrap());
        // the first two slots do not commute, so the curvature term is exercised
        let z = frame_vectors(&[0, 1, 0], q);
        let top = t.get(3).unwrap().eval(q);
        let mut swapped = z.clone();
        swapped.swap(0, 1);
        assert_ne!(top.apply(&z), top.apply(&swapped));
    }
}
