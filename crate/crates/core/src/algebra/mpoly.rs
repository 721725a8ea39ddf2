use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::{q, UPoly, Q};

/// Variable slots of [`MPoly`].
pub const VAR_N: usize = 0;
pub const VAR_THETA: usize = 1;
pub const VAR_K: usize = 2;
pub const NVARS: usize = 3;

pub type Exp = [u32; NVARS];

/// Sparse polynomial in `(n, θ, K)` over `ℚ`.
///
/// Terms are keyed by exponent vectors; the `BTreeMap` order is lex with
/// `n > θ > K`, and the last key is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exp, Q>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        MPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        MPoly::monomial([0; NVARS], c)
    }

    pub fn int(c: i64) -> Self {
        MPoly::constant(q(c))
    }

    pub fn monomial(e: Exp, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        MPoly { terms }
    }

    pub fn var(v: usize) -> Self {
        let mut e = [0; NVARS];
        e[v] = 1;
        MPoly::monomial(e, Q::one())
    }

    pub fn n() -> Self {
        MPoly::var(VAR_N)
    }

    pub fn theta() -> Self {
        MPoly::var(VAR_THETA)
    }

    pub fn k() -> Self {
        MPoly::var(VAR_K)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exp, Q)>) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &Q)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, e: Exp, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; NVARS]).is_some_and(|c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.is_zero() {
            Some(Q::zero())
        } else if self.is_constant() {
            self.terms.get(&[0; NVARS]).cloned()
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(&Exp, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn mul_monomial(&self, e: &Exp, c: &Q) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(f, x)| {
                    let mut g = *f;
                    for i in 0..NVARS {
                        g[i] += e[i];
                    }
                    (g, x * c)
                })
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(MPoly::one(), |acc, _| &acc * self)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Replaces variable `v` by the rational `value`.
    pub fn substitute(&self, v: usize, value: &Q) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut f = *e;
            f[v] = 0;
            out.add_term(f, c * pow_q(value, e[v]));
        }
        out
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| (0..NVARS).fold(c.clone(), |acc, i| acc * pow_q(&point[i], e[i])))
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Coefficients with respect to `v`, index = power of `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<MPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            let mut f = *e;
            f[v] = 0;
            out[e[v] as usize].add_term(f, c.clone());
        }
        out
    }

    fn lc_in(&self, v: usize) -> MPoly {
        let d = self.degree_in(v).unwrap_or(0);
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if e[v] == d {
                let mut f = *e;
                f[v] = 0;
                out.add_term(f, c.clone());
            }
        }
        out
    }

    /// Exact division, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (de, dc) = d.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((re, rc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
            let mut qe = [0; NVARS];
            for i in 0..NVARS {
                if re[i] < de[i] {
                    return None;
                }
                qe[i] = re[i] - de[i];
            }
            let qc = rc / &dc;
            rem = &rem - &d.mul_monomial(&qe, &qc);
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `d` as polynomials in `v`.
    fn prem_in(&self, d: &MPoly, v: usize) -> MPoly {
        let dd = d.degree_in(v).unwrap_or(0);
        let lc = d.lc_in(v);
        let mut r = self.clone();
        while !r.is_zero() {
            let rd = r.degree_in(v).unwrap();
            if rd < dd {
                break;
            }
            let mut shift = [0; NVARS];
            shift[v] = rd - dd;
            let t = &r.lc_in(v) * &d.mul_monomial(&shift, &Q::one());
            r = &(&lc * &r) - &t;
        }
        r
    }

    fn content_in(&self, v: usize) -> MPoly {
        self.coeffs_in(v).into_iter().filter(|c| !c.is_zero()).fold(MPoly::zero(), |g, c| {
            if g.is_one() {
                g
            } else {
                g.gcd(&c)
            }
        })
    }

    fn primitive_in(&self, v: usize) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Greatest common divisor with leading coefficient one.
    ///
    /// Primitive pseudo-remainder sequence in the highest variable present,
    /// recursing on contents in the remaining variables.
    pub fn gcd(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return MPoly::one();
        }
        let v = (0..NVARS).rev().find(|&v| self.involves(v) || other.involves(v)).unwrap();
        let ca = self.content_in(v);
        let cb = other.content_in(v);
        let c = ca.gcd(&cb);
        let mut f = self.div_exact(&ca).expect("content divides").integer_primitive().0;
        let mut g = other.div_exact(&cb).expect("content divides").integer_primitive().0;
        if f.degree_in(v) == Some(0) || g.degree_in(v) == Some(0) {
            return c.monic();
        }
        if !images_share_factor(&f, &g, v) {
            return c.monic();
        }
        if f.degree_in(v) < g.degree_in(v) {
            std::mem::swap(&mut f, &mut g);
        }
        loop {
            let r = f.prem_in(&g, v);
            if r.is_zero() {
                break;
            }
            if r.degree_in(v) == Some(0) {
                g = MPoly::one();
                break;
            }
            f = g;
            // dropping the rational content keeps coefficient growth in check
            g = r.primitive_in(v).integer_primitive().0;
        }
        (&c * &g.primitive_in(v)).monic()
    }

    /// Multiplies through by the lcm of coefficient denominators and divides
    /// by the gcd of numerators, keeping the sign of the leading term.
    pub fn integer_primitive(&self) -> (MPoly, Q) {
        if self.is_zero() {
            return (MPoly::zero(), Q::one());
        }
        let lcm = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let gcd = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * &lcm / c.denom())));
        let factor = Q::new(lcm, gcd);
        (self.scale(&factor), factor.recip())
    }

    /// Text form with the given variable names, terms ordered θ-degree first.
    pub fn to_string_with(&self, names: [&str; NVARS]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Exp> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b[1], b[2], b[0]).cmp(&(a[1], a[2], a[0])));
        let mut out = String::new();
        for e in keys {
            let c = &self.terms[e];
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let mut factors = Vec::new();
            for (v, name) in [(VAR_N, names[0]), (VAR_K, names[2]), (VAR_THETA, names[1])] {
                match e[v] {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    d => factors.push(format!("{name}^{d}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    factors.insert(0, a.to_string());
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

pub(crate) fn pow_q(x: &Q, e: u32) -> Q {
    let mut acc = Q::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(["n", "θ", "K"]))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let (mut big, small) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(*e, c.clone());
        }
        big
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &rhs.terms {
                let mut g = *e;
                for i in 0..NVARS {
                    g[i] += f[i];
                }
                out.add_term(g, c * d);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

/// `false` only when the gcd of `f` and `g` provably does not involve `v`:
/// at a point where neither leading coefficient in `v` vanishes, the degree
/// of the gcd of the univariate images bounds the degree of the true gcd.
fn images_share_factor(f: &MPoly, g: &MPoly, v: usize) -> bool {
    const SAMPLES: [[i64; NVARS]; 3] = [[3, -2, 5], [7, 4, -3], [-5, 11, 2]];
    for sample in SAMPLES {
        let (mut fi, mut gi) = (f.clone(), g.clone());
        for u in (0..NVARS).filter(|&u| u != v) {
            fi = fi.substitute(u, &q(sample[u]));
            gi = gi.substitute(u, &q(sample[u]));
        }
        if fi.degree_in(v) != f.degree_in(v) || gi.degree_in(v) != g.degree_in(v) {
            continue;
        }
        let image = |p: &MPoly| {
            UPoly::from_coeffs(
                p.coeffs_in(v).iter().map(|c| c.constant_value().expect("other variables substituted")).collect(),
            )
        };
        if image(&fi).gcd(&image(&gi)).degree() == Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> MPoly {
        MPoly::n()
    }
    fn t() -> MPoly {
        MPoly::theta()
    }
    fn k() -> MPoly {
        MPoly::k()
    }

    #[test]
    fn exact_division() {
        let a = &(&n() + &MPoly::int(2)) * &(&t() - &k());
        assert_eq!(a.div_exact(&(&t() - &k())).unwrap(), &n() + &MPoly::int(2));
        assert!(a.div_exact(&(&t() + &k())).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let common = &(&t() + &(&k() * &n())) * &(&n() - &MPoly::int(1));
        let a = &common * &(&t() - &k());
        let b = &common * &(&(&t() * &t()) + &n());
        assert_eq!(a.gcd(&b), common.monic());
        assert!(t().gcd(&k()).is_one());
        assert!(MPoly::int(3).gcd(&t()).is_one());
        assert_eq!(MPoly::zero().gcd(&a.scale(&q(5))), a.monic());
    }

    #[test]
    fn gcd_with_rational_coefficients() {
        let a = &(&t().scale(&super::super::upoly::q_frac(1, 2)) + &k()) * &n();
        let b = &(&t() + &k().scale(&q(2))) * &t();
        assert_eq!(a.gcd(&b), (&t() + &k().scale(&q(2))).monic());
    }

    #[test]
    fn display_order() {
        let p = &(&t() * &t()) + &(&(&n() - &MPoly::int(1)) * &(&k() * &t()));
        assert_eq!(p.to_string(), "θ^2+n*K*θ-K*θ");
    }
}
