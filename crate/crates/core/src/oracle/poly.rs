//! Integer polynomials in `x₁..x_N`, optionally kept in normal form modulo
//! `x₁² + ⋯ + x_N² − 1` (every monomial has `x_N`-degree at most 1).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Q;
use crate::error::{Error, Result};

/// Bits per exponent in a packed monomial.
const BITS: u32 = 8;
const MASK: u64 = (1 << BITS) - 1;
pub const MAX_VARS: usize = 8;

/// Packed exponent vector, `BITS` bits per variable.
pub type Mono = u64;

pub fn exp(m: Mono, v: usize) -> u32 {
    ((m >> (BITS * v as u32)) & MASK) as u32
}

fn unit(v: usize) -> Mono {
    1 << (BITS * v as u32)
}

pub fn mono_degree(m: Mono, nvars: usize) -> u32 {
    (0..nvars).map(|v| exp(m, v)).sum()
}

pub fn pack(exps: &[u32]) -> Mono {
    exps.iter().enumerate().fold(0, |acc, (v, &e)| {
        assert!(e <= MASK as u32, "exponent overflow");
        acc | ((e as u64) << (BITS * v as u32))
    })
}

fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SpherePoly {
    nvars: usize,
    terms: BTreeMap<Mono, i128>,
}

impl SpherePoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        SpherePoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: i128) -> Self {
        let mut p = SpherePoly::zero(nvars);
        p.add_term(0, c).expect("fresh term");
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut p = SpherePoly::zero(nvars);
        p.add_term(unit(v), 1).expect("fresh term");
        p
    }

    pub fn monomial(nvars: usize, m: Mono, c: i128) -> Self {
        let mut p = SpherePoly::zero(nvars);
        p.add_term(m, c).expect("fresh term");
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mono, i128)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: i128) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let e = self.terms.entry(m).or_insert(0);
        *e = checked_add(*e, c)?;
        if *e == 0 {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn add(&self, other: &SpherePoly) -> Result<SpherePoly> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SpherePoly) -> Result<SpherePoly> {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, -c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: i128) -> Result<SpherePoly> {
        let mut out = SpherePoly::zero(self.nvars);
        for (m, x) in self.terms() {
            out.add_term(m, checked_mul(x, c)?)?;
        }
        Ok(out)
    }

    /// Plain product, no sphere reduction.
    pub fn mul(&self, other: &SpherePoly) -> Result<SpherePoly> {
        let mut out = SpherePoly::zero(self.nvars);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(a + b, checked_mul(x, y)?)?;
            }
        }
        Ok(out)
    }

    /// `x_v · self`, no sphere reduction.
    pub fn mul_var(&self, v: usize) -> SpherePoly {
        SpherePoly { nvars: self.nvars, terms: self.terms.iter().map(|(&m, &c)| (m + unit(v), c)).collect() }
    }

    pub fn partial(&self, v: usize) -> Result<SpherePoly> {
        let mut out = SpherePoly::zero(self.nvars);
        for (m, c) in self.terms() {
            let e = exp(m, v);
            if e > 0 {
                out.add_term(m - unit(v), checked_mul(c, e as i128)?)?;
            }
        }
        Ok(out)
    }

    pub fn laplacian(&self) -> Result<SpherePoly> {
        let mut out = SpherePoly::zero(self.nvars);
        for v in 0..self.nvars {
            out = out.add(&self.partial(v)?.partial(v)?)?;
        }
        Ok(out)
    }

    /// `x₁² + ⋯ + x_N²`.
    pub fn r_squared(nvars: usize) -> SpherePoly {
        let mut p = SpherePoly::zero(nvars);
        for v in 0..nvars {
            p.add_term(2 * unit(v), 1).expect("fresh term");
        }
        p
    }

    /// Normal form modulo the sphere: `x_N² → 1 − Σ_{i<N} x_i²` until every `x_N`-degree is at most 1.
    pub fn reduce_sphere(&self) -> Result<SpherePoly> {
        let last = self.nvars - 1;
        let mut out = SpherePoly::zero(self.nvars);
        let mut pending: Vec<(Mono, i128)> = self.terms().collect();
        while let Some((m, c)) = pending.pop() {
            if exp(m, last) < 2 {
                out.add_term(m, c)?;
                continue;
            }
            let base = m - 2 * unit(last);
            pending.push((base, c));
            for v in 0..last {
                pending.push((base + 2 * unit(v), -c));
            }
        }
        Ok(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(|&m| exp(m, self.nvars - 1) < 2)
    }

    /// Homogeneous of degree `d` (zero counts as homogeneous).
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|&m| mono_degree(m, self.nvars) == d)
    }

    pub fn content(&self) -> i128 {
        self.terms.values().fold(0i128, |g, &c| gcd(g, c.abs()))
    }

    /// Exact value at `x = u / d`, i.e. `Σ c·u^α·d^{D−|α|} / d^D`.
    pub fn eval(&self, point: &ScaledPoint) -> Q {
        let max_deg = self.terms.keys().map(|&m| mono_degree(m, self.nvars)).max().unwrap_or(0);
        let mut acc = BigInt::zero();
        for (m, c) in self.terms() {
            let mut t = BigInt::from(c);
            for v in 0..self.nvars {
                t *= &point.powers[v][exp(m, v) as usize];
            }
            t *= &point.denom_powers[(max_deg - mono_degree(m, self.nvars)) as usize];
            acc += t;
        }
        Q::new(acc, point.denom_powers[max_deg as usize].clone())
    }

    pub fn to_string_vars(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let key = |m: Mono| (mono_degree(m, self.nvars), (0..self.nvars).map(|v| exp(m, v)).collect::<Vec<_>>());
        let mut sorted: Vec<(&Mono, &i128)> = self.terms.iter().collect();
        sorted.sort_by_key(|(m, _)| std::cmp::Reverse(key(**m)));
        for (m, c) in sorted {
            let mut factors = Vec::new();
            for v in 0..self.nvars {
                match exp(*m, v) {
                    0 => {}
                    1 => factors.push(format!("x{}", v + 1)),
                    e => factors.push(format!("x{}^{e}", v + 1)),
                }
            }
            let body = factors.join("*");
            let sign = if *c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            out.push_str(sign);
            match (mag, body.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (1, false) => out.push_str(&body),
                _ => out.push_str(&format!("{mag}*{body}")),
            }
        }
        out
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A rational point written as integer numerators over one common denominator,
/// with powers cached for evaluation.
#[derive(Clone, Debug)]
pub struct ScaledPoint {
    powers: Vec<Vec<BigInt>>,
    denom_powers: Vec<BigInt>,
}

impl ScaledPoint {
    pub fn new(coords: &[Q], max_degree: usize) -> Self {
        let denom = coords.iter().fold(BigInt::one(), |l, c| num_integer::Integer::lcm(&l, c.denom()));
        let nums: Vec<BigInt> = coords.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
        let pow_list = |b: &BigInt| {
            let mut v = vec![BigInt::one()];
            for i in 0..max_degree {
                let next = &v[i] * b;
                v.push(next);
            }
            v
        };
        ScaledPoint { powers: nums.iter().map(pow_list).collect(), denom_powers: pow_list(&denom) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q_frac;

    #[test]
    fn reduction_mod_sphere() {
        // x3^2 on S² is 1 − x1² − x2²
        let p = SpherePoly::monomial(3, pack(&[0, 0, 2]), 1).reduce_sphere().unwrap();
        assert_eq!(p.to_string_vars(), "-x1^2-x2^2+1");
        let r = SpherePoly::r_squared(3).reduce_sphere().unwrap();
        assert_eq!(r, SpherePoly::constant(3, 1));
        let p = SpherePoly::monomial(3, pack(&[1, 0, 3]), 2).reduce_sphere().unwrap();
        assert!(p.is_reduced());
    }

    #[test]
    fn calculus() {
        let x = SpherePoly::var(2, 0);
        let y = SpherePoly::var(2, 1);
        let p = x.mul(&x).unwrap().sub(&y.mul(&y).unwrap()).unwrap();
        assert!(p.laplacian().unwrap().is_zero());
        assert_eq!(p.partial(0).unwrap(), x.scale(2).unwrap());
        assert!(matches!(SpherePoly::constant(2, i128::MAX).scale(2), Err(Error::Overflow)));
    }

    #[test]
    fn evaluation() {
        let p = SpherePoly::monomial(3, pack(&[1, 0, 1]), 5).add(&SpherePoly::constant(3, 1)).unwrap();
        let q = ScaledPoint::new(&[q_frac(3, 5), q_frac(0, 1), q_frac(4, 5)], 4);
        assert_eq!(p.eval(&q), q_frac(5 * 12 + 25, 25));
    }
}
