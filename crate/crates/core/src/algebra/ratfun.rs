use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::upoly::{q, UPoly, Q};
use crate::error::{Error, Result};

/// Element of `ℚ(n)`, kept as `num/den` with coprime parts and a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunN {
    num: UPoly,
    den: UPoly,
}

impl RatFunN {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunN::zero();
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading();
        RatFunN { num: num.scale(&lc.recip()), den: den.scale(&lc.recip()) }
    }

    pub fn zero() -> Self {
        RatFunN { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RatFunN::from_poly(UPoly::one())
    }

    pub fn from_poly(p: UPoly) -> Self {
        RatFunN { num: p, den: UPoly::one() }
    }

    pub fn from_q(c: Q) -> Self {
        RatFunN::from_poly(UPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        RatFunN::from_q(q(c))
    }

    /// The symbol `n`.
    pub fn n() -> Self {
        RatFunN::from_poly(UPoly::var())
    }

    /// `n + c`.
    pub fn n_plus(c: i64) -> Self {
        RatFunN::from_poly(UPoly::shifted_var(c))
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunN::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunN { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Exact value at an integer `n`.
    pub fn eval_int(&self, n: i64) -> Result<Q> {
        self.eval(&q(n)).ok_or(Error::Pole(n))
    }

    pub fn eval(&self, n: &Q) -> Option<Q> {
        let d = self.den.eval(n);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(n) / d)
        }
    }

    /// Leading coefficient sign of the numerator, used for display.
    pub(crate) fn is_negative_lead(&self) -> bool {
        self.num.leading().is_negative()
    }

    /// `p(n)/q(n)` with parentheses around multi-term parts, e.g. `(n-1)/(n+2)`.
    pub fn to_string_in(&self, var: &str) -> String {
        let wrap = |p: &UPoly| {
            let s = p.to_string_in(var);
            if p.term_count() > 1
                || (p.term_count() == 1 && p.degree() > Some(0) && !p.leading().is_one() && !(-p.leading()).is_one())
            {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.to_string_in(var)
        } else {
            format!("{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Display for RatFunN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("n"))
    }
}

impl Add for &RatFunN {
    type Output = RatFunN;
    fn add(self, rhs: &RatFunN) -> RatFunN {
        if self.den == rhs.den {
            return RatFunN::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunN::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunN {
    type Output = RatFunN;
    fn sub(self, rhs: &RatFunN) -> RatFunN {
        self + &(-rhs)
    }
}

impl Mul for &RatFunN {
    type Output = RatFunN;
    fn mul(self, rhs: &RatFunN) -> RatFunN {
        if self.is_zero() || rhs.is_zero() {
            return RatFunN::zero();
        }
        RatFunN::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &RatFunN {
    type Output = RatFunN;
    fn div(self, rhs: &RatFunN) -> RatFunN {
        self * &rhs.recip()
    }
}

impl Neg for &RatFunN {
    type Output = RatFunN;
    fn neg(self) -> RatFunN {
        RatFunN { num: -&self.num, den: self.den.clone() }
    }
}

impl Zero for RatFunN {
    fn zero() -> Self {
        RatFunN::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RatFunN {
    type Output = RatFunN;
    fn add(self, rhs: RatFunN) -> RatFunN {
        &self + &rhs
    }
}

impl One for RatFunN {
    fn one() -> Self {
        RatFunN::one()
    }
}

impl Mul for RatFunN {
    type Output = RatFunN;
    fn mul(self, rhs: RatFunN) -> RatFunN {
        &self * &rhs
    }
}
