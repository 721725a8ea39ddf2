use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::mpoly::{MPoly, NVARS, VAR_K, VAR_N, VAR_THETA};
use super::upoly::Q;
use crate::error::{Error, Result};

/// Element of `ℚ(n, θ, K)` in lowest terms with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: MPoly,
    den: MPoly,
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl FieldElem {
    pub fn new(num: MPoly, den: MPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return FieldElem::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        FieldElem::normalized(num, den)
    }

    /// Makes the denominator monic; the caller guarantees lowest terms.
    fn normalized(num: MPoly, den: MPoly) -> Self {
        let inv = den.leading().map(|(_, c)| c.recip()).unwrap();
        FieldElem { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn zero() -> Self {
        FieldElem { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> Self {
        FieldElem::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        FieldElem { num: p, den: MPoly::one() }
    }

    pub fn from_q(c: Q) -> Self {
        FieldElem::from_poly(MPoly::constant(c))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::SingularSystem { kernel: vec![] });
        }
        Ok(FieldElem::new(self.den.clone(), self.num.clone()))
    }

    /// True when the value depends on `n` only.
    pub fn is_free_of_theta_k(&self) -> bool {
        !self.num.involves(VAR_THETA)
            && !self.num.involves(VAR_K)
            && !self.den.involves(VAR_THETA)
            && !self.den.involves(VAR_K)
    }

    pub fn substitute(&self, v: usize, value: &Q) -> Result<Self> {
        let den = self.den.substitute(v, value);
        if den.is_zero() {
            return Err(Error::Pole(value.to_integer().try_into().unwrap_or(i64::MAX)));
        }
        Ok(FieldElem::new(self.num.substitute(v, value), den))
    }

    pub fn substitute_n(&self, n: i64) -> Result<Self> {
        let den = self.den.substitute(VAR_N, &super::upoly::q(n));
        if den.is_zero() {
            return Err(Error::Pole(n));
        }
        Ok(FieldElem::new(self.num.substitute(VAR_N, &super::upoly::q(n)), den))
    }

    pub fn eval(&self, point: &[Q; NVARS]) -> Option<Q> {
        let d = self.den.eval(point);
        if num_traits::Zero::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &MPoly| if p.term_count() > 1 { format!("({p})") } else { p.to_string() };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return FieldElem::new(&self.num + &rhs.num, self.den.clone());
        }
        // with g = gcd(b, d), only g can share a factor with a·(d/g) + c·(b/g)
        let g = self.den.gcd(&rhs.den);
        let (bg, dg) = (self.den.div_exact(&g).unwrap(), rhs.den.div_exact(&g).unwrap());
        let num = &(&self.num * &dg) + &(&rhs.num * &bg);
        if num.is_zero() {
            return FieldElem::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() { (num, g) } else { (num.div_exact(&h).unwrap(), g.div_exact(&h).unwrap()) };
        FieldElem::normalized(num, &(&bg * &dg) * &g)
    }
}

impl Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        if self.is_zero() || rhs.is_zero() {
            return FieldElem::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return FieldElem::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        FieldElem::normalized(&n1 * &n2, &d1 * &d2)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.recip().expect("division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let t = MPoly::theta();
        let n = MPoly::n();
        // (θ n + θ)/(n^2 - 1) = θ/(n-1)
        let num = &(&t * &n) + &t;
        let den = &(&n * &n) - &MPoly::int(1);
        let x = FieldElem::new(num, den);
        assert_eq!(x.num(), &t);
        assert_eq!(x.den(), &(&n - &MPoly::int(1)));
        assert!(x.num().gcd(x.den()).is_one());
    }

    #[test]
    fn arithmetic_roundtrip() {
        let a = FieldElem::new(MPoly::theta(), MPoly::n());
        let b = FieldElem::new(MPoly::k(), &MPoly::n() + &MPoly::int(2));
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        let p = &(&a * &b) / &b;
        assert_eq!(p, a);
        assert_eq!(a.to_string(), "θ/n");
    }
}
