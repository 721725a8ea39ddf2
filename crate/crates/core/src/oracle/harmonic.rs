//! Harmonic homogeneous polynomials, i.e. Laplace eigenfunctions on `Sⁿ`.

use num_integer::Integer;

use super::poly::{mono_degree, pack, Mono, SpherePoly};
use crate::algebra::Q;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicEigenfunction {
    pub n: usize,
    pub p: usize,
    pub index: usize,
    /// Ambient harmonic polynomial, homogeneous of degree `p`.
    pub poly: SpherePoly,
    /// `poly` reduced modulo the sphere.
    pub reduced: SpherePoly,
}

impl HarmonicEigenfunction {
    /// `λ = p(p + n − 1)`, so that `Δf = −λf`.
    pub fn lambda(&self) -> i64 {
        (self.p * (self.p + self.n - 1)) as i64
    }
}

/// Monomials of degree `p` in `n + 1` variables whose last exponent is 0 or 1,
/// ordered by last exponent descending, then exponents of `x₁, x₂, …` descending.
fn basis_monomials(n: usize, p: usize) -> Vec<Mono> {
    let nvars = n + 1;
    let mut out = Vec::new();
    for last in [1u32, 0] {
        if (last as usize) > p {
            continue;
        }
        let mut exps = vec![0u32; nvars];
        exps[nvars - 1] = last;
        compositions(p as u32 - last, 0, nvars - 1, &mut exps, &mut out);
    }
    out
}

fn compositions(rest: u32, v: usize, free: usize, exps: &mut Vec<u32>, out: &mut Vec<Mono>) {
    if v + 1 == free {
        exps[v] = rest;
        out.push(pack(exps));
        return;
    }
    for e in (0..=rest).rev() {
        exps[v] = e;
        compositions(rest - e, v + 1, free, exps, out);
    }
}

/// Dimension of the degree-`p` eigenspace on `Sⁿ`.
pub fn eigenspace_dim(n: usize, p: usize) -> usize {
    basis_monomials(n, p).len()
}

/// The `index`-th basis element: the harmonic projection
/// `h + Σ_j a_j r^{2j} Δ^j h` of the `index`-th basis monomial `h`,
/// scaled to a primitive integer polynomial.
pub fn make_eigenfunction(n: usize, p: usize, index: usize) -> Result<HarmonicEigenfunction> {
    if n < 1 || n + 1 > super::poly::MAX_VARS {
        return Err(Error::Index { index: n, max: super::poly::MAX_VARS - 1 });
    }
    let monos = basis_monomials(n, p);
    let &h = monos.get(index).ok_or(Error::Index { index, max: monos.len().saturating_sub(1) })?;
    let nvars = n + 1;
    debug_assert_eq!(mono_degree(h, nvars), p as u32);

    let big_n = nvars as i64;
    let mut coeffs: Vec<Q> = vec![Q::from_integer(1.into())];
    for j in 0..p / 2 {
        let j = j as i64;
        let d = 2 * (j + 1) * (big_n + 2 * p as i64 - 2 * j - 4);
        let next = -coeffs[j as usize].clone() / Q::from_integer(d.into());
        coeffs.push(next);
    }
    let lcm = coeffs.iter().fold(num_bigint::BigInt::from(1), |l, c| l.lcm(c.denom()));
    let mut poly = SpherePoly::zero(nvars);
    let mut lap = SpherePoly::monomial(nvars, h, 1);
    let mut r_pow = SpherePoly::constant(nvars, 1);
    for c in &coeffs {
        let scale: i128 = (c * Q::from_integer(lcm.clone())).to_integer().try_into().map_err(|_| Error::Overflow)?;
        poly = poly.add(&r_pow.mul(&lap)?.scale(scale)?)?;
        lap = lap.laplacian()?;
        r_pow = r_pow.mul(&SpherePoly::r_squared(nvars))?;
    }
    let content = poly.content();
    let poly = if content > 1 { divide(&poly, content) } else { poly };
    assert!(poly.laplacian()?.is_zero(), "harmonic projection failed");
    assert!(poly.is_homogeneous(p as u32) && !poly.is_zero());
    let reduced = poly.reduce_sphere()?;
    Ok(HarmonicEigenfunction { n, p, index, poly, reduced })
}

fn divide(p: &SpherePoly, c: i128) -> SpherePoly {
    let mut out = SpherePoly::zero(p.nvars());
    for (m, x) in p.terms() {
        out.add_term(m, x / c).expect("exact division");
    }
    out
}
