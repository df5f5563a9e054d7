use std::collections::BTreeMap;
use std::fmt;

use super::{ConstraintSet, Elim, Field, MultiPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Quotient of two polynomials with a nonzero denominator.
///
/// No gcd is taken. The only simplifications are exact division of the
/// numerator by the denominator and folding constant denominators into the
/// numerator. Equality is decided by cross-multiplication, so `Hash` is not
/// implemented.
#[derive(Clone)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn var(name: &str) -> Self {
        Self::from_poly(MultiPoly::var(name))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    /// The polynomial, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        self.den
            .constant_value()
            .map(|c| self.num.scale(&c.inv().expect("denominator is nonzero")))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                num,
                den: MultiPoly::one(),
            };
        }
        if let Some(c) = den.constant_value() {
            return RatFunc {
                num: num.scale(&c.inv().expect("denominator is nonzero")),
                den: MultiPoly::one(),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RatFunc {
                num: q,
                den: MultiPoly::one(),
            };
        }
        RatFunc { num, den }
    }

    pub fn eval<R: Field>(&self, assignment: &BTreeMap<String, R>) -> Result<R> {
        let n = self.num.eval(assignment)?;
        let d = self.den.eval(assignment)?;
        n.div(&d)
            .ok_or_else(|| Error::ConstraintViolated(self.den.to_string()))
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        Self::from_poly(MultiPoly::zero())
    }
    fn one() -> Self {
        Self::from_poly(MultiPoly::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::from_poly(MultiPoly::from_i64(v))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self::normalized(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(Self::from_poly(MultiPoly::constant(r.clone())))
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(Self::normalized(self.den.clone(), self.num.clone()))
        }
    }
    fn characteristic(&self) -> u32 {
        0
    }
}

impl Elim for RatFunc {
    fn certified_nonzero(&self, c: &ConstraintSet) -> bool {
        c.certifies(&self.num)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div(d)
    }
    fn pivot_cost(&self) -> usize {
        self.num.pivot_cost() + self.den.pivot_cost()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn r(n: &str, d: &str) -> RatFunc {
        RatFunc::new(parse_poly(n).unwrap(), parse_poly(d).unwrap()).unwrap()
    }

    #[test]
    fn cancels_exact_quotients() {
        let x = r("x*x - 1", "x - 1");
        assert_eq!(x.as_poly().unwrap(), parse_poly("x + 1").unwrap());
    }

    #[test]
    fn equality_by_cross_multiplication() {
        assert_eq!(r("2*x", "2*x*y"), r("1", "y"));
        assert_ne!(r("1", "y"), r("1", "x"));
    }

    #[test]
    fn field_operations() {
        let a = r("k", "k*n - l*m");
        let b = r("n", "1");
        let prod = a.mul(&b).sub(&r("l*m", "k*n - l*m"));
        assert_eq!(prod, r("k*n - l*m", "k*n - l*m"));
        assert!(prod.is_one());
        assert_eq!(a.mul(&a.inv().unwrap()), RatFunc::one());
    }
}
