use std::fmt;

use super::{ConstraintSet, Elim, Field, Rational, Ring};

const MAX_Q: usize = 32;

/// Addition and multiplication tables of a field with at most 32 elements.
pub struct Tables {
    pub q: u32,
    pub p: u32,
    add: [[u8; MAX_Q]; MAX_Q],
    mul: [[u8; MAX_Q]; MAX_Q],
    neg: [u8; MAX_Q],
    inv: [u8; MAX_Q],
}

const fn prime_of(q: u32) -> (u32, u32) {
    let mut p = 2;
    while p <= q {
        if q.is_multiple_of(p) {
            let mut k = 0;
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
                k += 1;
            }
            assert!(r == 1, "order must be a prime power");
            return (p, k);
        }
        p += 1;
    }
    panic!("order must be at least 2")
}

/// Multiplies `a0 + a1 t` by `b0 + b1 t` modulo `t^2 - c1 t - c0`.
const fn quad_mul(a: (u32, u32), b: (u32, u32), c: (u32, u32), p: u32) -> (u32, u32) {
    let t0 = a.0 * b.0 % p;
    let t1 = (a.0 * b.1 + a.1 * b.0) % p;
    let t2 = a.1 * b.1 % p;
    ((t0 + t2 * c.0) % p, (t1 + t2 * c.1) % p)
}

/// Finds `(c0, c1)` with `t^2 - c1 t - c0` irreducible over F_p.
const fn irreducible(p: u32) -> (u32, u32) {
    let mut c0 = 1;
    while c0 < p {
        let mut c1 = 0;
        while c1 < p {
            let mut has_root = false;
            let mut x = 0;
            while x < p {
                if (x * x + (p - c1) * x + (p - c0)).is_multiple_of(p) {
                    has_root = true;
                }
                x += 1;
            }
            if !has_root {
                return (c0, c1);
            }
            c1 += 1;
        }
        c0 += 1;
    }
    panic!("no irreducible quadratic")
}

pub const fn build(q: u32) -> Tables {
    assert!(q as usize <= MAX_Q);
    let (p, k) = prime_of(q);
    assert!(k <= 2, "only prime fields and their quadratic extensions");
    let c = if k == 2 { irreducible(p) } else { (0, 0) };
    let mut t = Tables {
        q,
        p,
        add: [[0; MAX_Q]; MAX_Q],
        mul: [[0; MAX_Q]; MAX_Q],
        neg: [0; MAX_Q],
        inv: [0; MAX_Q],
    };
    let mut a = 0;
    while a < q {
        let ea = (a % p, a / p);
        let mut b = 0;
        while b < q {
            let eb = (b % p, b / p);
            let s = ((ea.0 + eb.0) % p, (ea.1 + eb.1) % p);
            t.add[a as usize][b as usize] = (s.0 + p * s.1) as u8;
            let m = quad_mul(ea, eb, c, p);
            t.mul[a as usize][b as usize] = (m.0 + p * m.1) as u8;
            b += 1;
        }
        a += 1;
    }
    let mut a = 0;
    while a < q {
        let mut b = 0;
        while b < q {
            if t.add[a as usize][b as usize] == 0 {
                t.neg[a as usize] = b as u8;
            }
            if t.mul[a as usize][b as usize] == 1 {
                t.inv[a as usize] = b as u8;
            }
            b += 1;
        }
        a += 1;
    }
    t
}

/// Element of the finite field with `Q` elements (`Q` a prime or the square
/// of a prime, at most 32). Elements of the prime subfield are `0..p`; an
/// element `a + b t` of a quadratic extension is encoded as `a + p b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf<const Q: u32>(u8);

impl<const Q: u32> Gf<Q> {
    pub const TABLES: Tables = build(Q);

    pub fn new(code: u8) -> Self {
        assert!((code as u32) < Q);
        Gf(code)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn characteristic_prime() -> u32 {
        Self::TABLES.p
    }

    /// All field elements in code order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..Q as u8).map(Gf)
    }

    /// The generator `t` of a quadratic extension over the prime field.
    pub fn t() -> Self {
        assert!(Self::TABLES.p != Q);
        Gf(Self::TABLES.p as u8)
    }
}

impl<const Q: u32> fmt::Debug for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const Q: u32> fmt::Display for Gf<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Self::TABLES.p as u8;
        if (self.0) < p {
            write!(f, "{}", self.0)
        } else {
            write!(f, "{}+{}t", self.0 % p, self.0 / p)
        }
    }
}

impl<const Q: u32> Ring for Gf<Q> {
    fn zero() -> Self {
        Gf(0)
    }
    fn one() -> Self {
        Gf(1)
    }
    fn from_i64(v: i64) -> Self {
        Gf(v.rem_euclid(Self::TABLES.p as i64) as u8)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        Gf(Self::TABLES.add[self.0 as usize][rhs.0 as usize])
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Gf(Self::TABLES.add[self.0 as usize][Self::TABLES.neg[rhs.0 as usize] as usize])
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Gf(Self::TABLES.mul[self.0 as usize][rhs.0 as usize])
    }
    fn neg(&self) -> Self {
        Gf(Self::TABLES.neg[self.0 as usize])
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        r.mod_p(Self::TABLES.p).map(|v| Gf(v as u8))
    }
}

impl<const Q: u32> Field for Gf<Q> {
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(Gf(Self::TABLES.inv[self.0 as usize]))
        }
    }
    fn characteristic(&self) -> u32 {
        Self::TABLES.p
    }
}

impl<const Q: u32> Elim for Gf<Q> {
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

    fn field_axioms<const Q: u32>() {
        let all: Vec<Gf<Q>> = Gf::<Q>::elements().collect();
        for a in &all {
            assert_eq!(a.add(&a.neg()), Gf::zero());
            if !a.is_zero() {
                assert_eq!(a.mul(&a.inv().unwrap()), Gf::one());
            }
            for b in &all {
                assert_eq!(a.mul(b), b.mul(a));
                for c in &all {
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        field_axioms::<2>();
        field_axioms::<3>();
        field_axioms::<4>();
        field_axioms::<5>();
        field_axioms::<9>();
        field_axioms::<25>();
    }

    #[test]
    fn extension_contains_square_roots() {
        // -1 is not a square mod 3 but is one in F_9
        let minus_one = Gf::<9>::from_i64(-1);
        assert!(Gf::<9>::elements().any(|x| x.mul(&x) == minus_one));
        assert!(!Gf::<3>::elements().any(|x| x.mul(&x) == Gf::<3>::from_i64(-1)));
    }
}
