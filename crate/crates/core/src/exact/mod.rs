//! Exact scalar domains: rationals, prime fields, multivariate polynomials
//! over the rationals, and quotients of such polynomials.
//!
//! Every domain implements [`Ring`]. Fields additionally implement [`Field`].
//! [`Elim`] is the interface the fraction-free elimination in [`elim`] needs:
//! exact division and a way to certify that a pivot is nonzero.

mod constraints;
pub mod elim;
mod fp;
mod gf;
mod parse;
mod poly;
mod ratfunc;
mod rational;

pub use constraints::ConstraintSet;
pub use elim::{ff_rank, Echelon};
pub use fp::Fp;
pub use gf::Gf;
pub use parse::parse_poly;
pub use poly::{MultiPoly, Vars};
pub use ratfunc::RatFunc;
pub use rational::Rational;

use std::fmt::Debug;

/// A commutative ring with identity.
///
/// Arithmetic is by reference so that big-number domains avoid needless
/// clones. The operator traits of `std::ops` are intentionally not required.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Builds `self` in the ring from a rational constant. Fails when the
    /// denominator is not invertible (prime fields).
    fn from_rational(r: &Rational) -> Option<Self>;

    /// Ring-specific compatibility of two elements (same modulus, ...).
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }

    /// Characteristic of the field (0 for the rationals and rational functions).
    fn characteristic(&self) -> u32;
}

/// Operations needed by fraction-free Gaussian elimination.
pub trait Elim: Ring {
    /// True when the element is nonzero for every parameter specialization
    /// satisfying `c`.
    fn certified_nonzero(&self, c: &ConstraintSet) -> bool;

    /// Exact quotient, `None` when `d` does not divide `self`.
    fn exact_div(&self, d: &Self) -> Option<Self>;

    /// Pivot preference; smaller is better.
    fn pivot_cost(&self) -> usize {
        0
    }
}

/// A finite field whose elements can be listed.
pub trait FiniteField: Field + Elim + Copy {
    fn elements() -> Vec<Self>;
}

impl<const Q: u32> FiniteField for Gf<Q> {
    fn elements() -> Vec<Self> {
        Gf::<Q>::elements().collect()
    }
}

impl<const P: u32> FiniteField for Fp<P> {
    fn elements() -> Vec<Self> {
        (0..P as i64).map(Fp::new).collect()
    }
}
