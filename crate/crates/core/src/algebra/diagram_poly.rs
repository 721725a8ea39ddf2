use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::field::FieldElem;
use super::mpoly::{MPoly, VAR_K, VAR_N, VAR_THETA};
use super::ratfun::RatFunN;
use super::upoly::{q, UPoly, Q};
use crate::error::{Error, Result};

/// Polynomial in `θ` and `K` with coefficients in `ℚ(n)`.
///
/// Terms are keyed by `(θ-degree, K-degree)` and listed with the θ-degree
/// descending, then the K-degree descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiagramPoly {
    terms: BTreeMap<(u32, u32), RatFunN>,
}

/// One term of the JSON form; coefficient lists are ascending in `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub a: u32,
    pub b: u32,
    pub num_coeffs: Vec<String>,
    pub den_coeffs: Vec<String>,
}

impl DiagramPoly {
    pub fn zero() -> Self {
        DiagramPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        DiagramPoly::term(0, 0, RatFunN::one())
    }

    pub fn term(a: u32, b: u32, c: RatFunN) -> Self {
        let mut p = DiagramPoly::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn theta() -> Self {
        DiagramPoly::term(1, 0, RatFunN::one())
    }

    pub fn k() -> Self {
        DiagramPoly::term(0, 1, RatFunN::one())
    }

    pub fn theta_pow(a: u32) -> Self {
        DiagramPoly::term(a, 0, RatFunN::one())
    }

    pub fn constant(c: RatFunN) -> Self {
        DiagramPoly::term(0, 0, c)
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: RatFunN) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms in canonical order: θ-degree descending, then K-degree descending.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &RatFunN)> {
        self.terms.iter().rev().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn coeff(&self, a: u32, b: u32) -> RatFunN {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(RatFunN::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(d)` when every term has `θ-degree + K-degree = d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|(a, b)| a + b);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn scalar_mul(&self, c: &RatFunN) -> Self {
        if c.is_zero() {
            return DiagramPoly::zero();
        }
        DiagramPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(DiagramPoly::one(), |acc, _| &acc * self)
    }

    /// Sets `K = 0`.
    pub fn without_k(&self) -> Self {
        DiagramPoly { terms: self.terms.iter().filter(|((_, b), _)| *b == 0).map(|(e, c)| (*e, c.clone())).collect() }
    }

    /// Exact value at rational `θ`, `K` and integer `n`.
    pub fn substitute(&self, theta: &Q, k_const: &Q, n_val: i64) -> Result<Q> {
        let mut acc = Q::zero();
        for (&(a, b), c) in &self.terms {
            let cv = c.eval_int(n_val)?;
            acc += cv * super::mpoly::pow_q(theta, a) * super::mpoly::pow_q(k_const, b);
        }
        Ok(acc)
    }

    /// Substitutes an integer `n`, leaving a polynomial in `θ, K` with rational coefficients.
    pub fn substitute_n(&self, n_val: i64) -> Result<Self> {
        let mut out = DiagramPoly::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, RatFunN::from_q(c.eval_int(n_val)?));
        }
        Ok(out)
    }

    pub fn to_field(&self) -> FieldElem {
        let den = self.terms.values().fold(UPoly::one(), |l, c| {
            let g = l.gcd(c.den());
            &l * &c.den().div_rem(&g).0
        });
        let mut num = MPoly::zero();
        for (&(a, b), c) in &self.terms {
            let scaled = &(c.num() * &den).div_rem(c.den()).0;
            for (i, x) in scaled.coeffs().iter().enumerate() {
                let mut e = [0u32; 3];
                e[VAR_N] = i as u32;
                e[VAR_THETA] = a;
                e[VAR_K] = b;
                num.add_term(e, x.clone());
            }
        }
        FieldElem::new(num, upoly_to_mpoly(&den))
    }

    /// Converts a field element whose denominator involves `n` only.
    pub fn from_field(x: &FieldElem) -> Result<Self> {
        if x.den().involves(VAR_THETA) || x.den().involves(VAR_K) {
            return Err(Error::NotDivisible);
        }
        let den = mpoly_to_upoly(x.den());
        let mut by_deg: BTreeMap<(u32, u32), Vec<Q>> = BTreeMap::new();
        for (e, c) in x.num().terms() {
            let v = by_deg.entry((e[VAR_THETA], e[VAR_K])).or_default();
            let i = e[VAR_N] as usize;
            if v.len() <= i {
                v.resize(i + 1, Q::zero());
            }
            v[i] += c;
        }
        let mut out = DiagramPoly::zero();
        for ((a, b), coeffs) in by_deg {
            out.add_term(a, b, RatFunN::new(UPoly::from_coeffs(coeffs), den.clone()));
        }
        Ok(out)
    }

    /// Canonical string, e.g. `θ^2 + (n-1)*K*θ`.
    pub fn to_canonical_string(&self) -> String {
        self.render("θ")
    }

    /// Canonical string with `t` in place of `θ`.
    pub fn to_ascii_string(&self) -> String {
        self.render("t")
    }

    fn render(&self, theta: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (a, b, c) in self.terms() {
            let neg = c.is_negative_lead();
            let c = if neg { -c } else { c.clone() };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || (a == 0 && b == 0) {
                let s = c.to_string();
                let plain = c.is_polynomial() && c.num().term_count() == 1;
                factors.push(if plain { s } else { format!("({s})") });
            }
            match b {
                0 => {}
                1 => factors.push("K".into()),
                _ => factors.push(format!("K^{b}")),
            }
            match a {
                0 => {}
                1 => factors.push(theta.into()),
                _ => factors.push(format!("{theta}^{a}")),
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(a, b, c)| JsonTerm {
                a,
                b,
                num_coeffs: c.num().coeffs().iter().map(|x| x.to_string()).collect(),
                den_coeffs: c.den().coeffs().iter().map(|x| x.to_string()).collect(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self> {
        let parse = |v: &[String]| -> Result<UPoly> {
            v.iter()
                .map(|s| s.parse::<Q>().map_err(|e| Error::Parse(format!("coefficient `{s}`: {e}"))))
                .collect::<Result<Vec<Q>>>()
                .map(UPoly::from_coeffs)
        };
        let mut out = DiagramPoly::zero();
        for t in terms {
            let den = parse(&t.den_coeffs)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            out.add_term(t.a, t.b, RatFunN::new(parse(&t.num_coeffs)?, den));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        DiagramPoly::from_json_terms(&terms)
    }
}

pub(crate) fn upoly_to_mpoly(p: &UPoly) -> MPoly {
    MPoly::from_terms(p.coeffs().iter().enumerate().map(|(i, c)| ([i as u32, 0, 0], c.clone())))
}

pub(crate) fn mpoly_to_upoly(p: &MPoly) -> UPoly {
    let mut coeffs = vec![Q::zero(); p.degree_in(VAR_N).map_or(0, |d| d as usize + 1)];
    for (e, c) in p.terms() {
        coeffs[e[VAR_N] as usize] += c;
    }
    UPoly::from_coeffs(coeffs)
}

impl fmt::Display for DiagramPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl std::str::FromStr for DiagramPoly {
    type Err = Error;

    /// Parses expressions over `n`, `θ` (or `t`) and `K`; the value must be
    /// polynomial in `θ, K`.
    fn from_str(s: &str) -> Result<Self> {
        let x = super::parse::parse_expr(s)?;
        DiagramPoly::from_field(&x).map_err(|_| Error::Parse(format!("`{s}` is not polynomial in θ and K")))
    }
}

impl Add for &DiagramPoly {
    type Output = DiagramPoly;
    fn add(self, rhs: &DiagramPoly) -> DiagramPoly {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &DiagramPoly {
    type Output = DiagramPoly;
    fn sub(self, rhs: &DiagramPoly) -> DiagramPoly {
        self + &(-rhs)
    }
}

impl Neg for &DiagramPoly {
    type Output = DiagramPoly;
    fn neg(self) -> DiagramPoly {
        DiagramPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &DiagramPoly {
    type Output = DiagramPoly;
    fn mul(self, rhs: &DiagramPoly) -> DiagramPoly {
        let mut out = DiagramPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a + a2, b + b2, c * c2);
            }
        }
        out
    }
}

/// `θ + c(n)·K`, the linear factors that appear in dominant components and products.
pub fn theta_plus_k(c: RatFunN) -> DiagramPoly {
    let mut p = DiagramPoly::theta();
    p.add_term(0, 1, c);
    p
}

/// Product of the factors `θ + K·p(n+p-1)` for `p = 0..k`.
pub fn spectral_product(k: usize) -> DiagramPoly {
    (0..k as i64).fold(DiagramPoly::one(), |acc, p| {
        let c = &RatFunN::from_int(p) * &RatFunN::n_plus(p - 1);
        &acc * &theta_plus_k(c)
    })
}

impl From<i64> for DiagramPoly {
    fn from(v: i64) -> Self {
        DiagramPoly::constant(RatFunN::from_q(q(v)))
    }
}
