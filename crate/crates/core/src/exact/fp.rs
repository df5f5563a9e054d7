use std::fmt;

use super::rational::mod_inverse;
use super::{ConstraintSet, Elim, Field, Rational, Ring};

/// Element of the prime field `F_P`, stored as its least nonnegative residue.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub const fn modulus() -> u32 {
        P
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Ring for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.mod_p(P).map(Fp)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            mod_inverse(self.0 as u64, P as u64).map(|v| Fp(v as u32))
        }
    }
    fn characteristic(&self) -> u32 {
        P
    }
}

impl<const P: u32> Elim for Fp<P> {
    fn certified_nonzero(&self, _c: &ConstraintSet) -> bool {
        self.0 != 0
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_negation() {
        type F = Fp<5>;
        for v in 1..5 {
            let x = F::new(v);
            assert_eq!(x.mul(&x.inv().unwrap()), F::one());
        }
        assert_eq!(F::new(-1).value(), 4);
        assert_eq!(F::new(2).neg().value(), 3);
        assert!(F::zero().inv().is_none());
    }

    #[test]
    fn rational_reduction() {
        type F = Fp<7>;
        assert_eq!(F::from_rational(&Rational::new(1, 2)), Some(F::new(4)));
        assert_eq!(F::from_rational(&Rational::new(1, 7)), None);
    }
}
