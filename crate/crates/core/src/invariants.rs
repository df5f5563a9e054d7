//! Structural invariants of subalgebras of the 3×3 matrix algebra.
//!
//! Everything here works on a concrete [`Subspace`] that is already known to
//! be a subalgebra. The radical is computed with the ambient trace form in
//! characteristic zero, and as the largest nilpotent ideal over finite
//! fields.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::catalog::Template;
use crate::error::{Error, Result};
use crate::exact::{elim, ConstraintSet, Elim, Field, FiniteField, Gf, Rational, Ring};
use crate::matrix::{Mat3, Subspace};

/// The automorphism-invariant data used to tell orbits apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// Dimensions of rad, rad² and rad³.
    pub rad_dims: [usize; 3],
    pub ss_dim: usize,
    pub has_unit: bool,
    pub has_left_unit: bool,
    pub has_right_unit: bool,
    /// `S·rad = 0`.
    pub rad_in_left_ann: bool,
    /// `rad·S = 0`.
    pub rad_in_right_ann: bool,
    /// Dimension of the two-sided annihilator `{x ∈ S : xS = Sx = 0}`.
    pub ann_dim: usize,
    /// Largest matrix rank of an element of S.
    pub generic_rank: usize,
    /// Largest matrix rank of an element of the radical.
    pub rad_generic_rank: usize,
    /// Distinct matrix ranks of nonzero idempotents.
    pub idempotent_ranks: Vec<usize>,
    /// Some nonzero idempotent `e` has `e·rad² = rad²·e = 0`.
    pub idempotent_kills_rad2: bool,
}

impl Fingerprint {
    /// The fingerprint of the transposed subalgebra.
    pub fn transposed(&self) -> Fingerprint {
        let mut t = self.clone();
        std::mem::swap(&mut t.has_left_unit, &mut t.has_right_unit);
        std::mem::swap(&mut t.rad_in_left_ann, &mut t.rad_in_right_ann);
        t
    }

    /// Equal to `other` or to its transpose, i.e. not separated by any
    /// automorphism or antiautomorphism.
    pub fn same_up_to_transpose(&self, other: &Fingerprint) -> bool {
        self == other || *self == other.transposed()
    }

    /// Names of the fields in which the two fingerprints differ, taking the
    /// transpose into account when `anti` is set.
    pub fn differences(&self, other: &Fingerprint, anti: bool) -> Vec<&'static str> {
        let mut out = Vec::new();
        let pairs: [(&'static str, bool); 13] = [
            ("dim", self.dim == other.dim),
            ("rad_dims", self.rad_dims == other.rad_dims),
            ("ss_dim", self.ss_dim == other.ss_dim),
            ("has_unit", self.has_unit == other.has_unit),
            ("has_left_unit", self.has_left_unit == other.has_left_unit),
            (
                "has_right_unit",
                self.has_right_unit == other.has_right_unit,
            ),
            (
                "rad_in_left_ann",
                self.rad_in_left_ann == other.rad_in_left_ann,
            ),
            (
                "rad_in_right_ann",
                self.rad_in_right_ann == other.rad_in_right_ann,
            ),
            ("ann_dim", self.ann_dim == other.ann_dim),
            ("generic_rank", self.generic_rank == other.generic_rank),
            (
                "rad_generic_rank",
                self.rad_generic_rank == other.rad_generic_rank,
            ),
            (
                "idempotent_ranks",
                self.idempotent_ranks == other.idempotent_ranks,
            ),
            (
                "idempotent_kills_rad2",
                self.idempotent_kills_rad2 == other.idempotent_kills_rad2,
            ),
        ];
        for (name, same) in pairs {
            if !same {
                out.push(name);
            }
        }
        if anti && !out.is_empty() {
            let t = other.transposed();
            let swapped = self.differences(&t, false);
            if swapped.is_empty() {
                return swapped;
            }
            // report whichever comparison leaves the fewest differences
            if swapped.len() < out.len() {
                return swapped;
            }
        }
        out
    }
}

/// The seven isomorphism types of two-dimensional associative algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwoDimType {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    D7,
}

impl fmt::Display for TwoDimType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn span<F: Elim>(mats: Vec<Mat3<F>>) -> Subspace<F> {
    Subspace::span(mats, ConstraintSet::new()).expect("concrete spans never need certificates")
}

fn basis_of<F: Field + Elim>(mats: Vec<Mat3<F>>) -> Vec<Mat3<F>> {
    span(mats).basis()
}

fn products<F: Ring>(a: &[Mat3<F>], b: &[Mat3<F>]) -> Vec<Mat3<F>> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.mul(y)))
        .collect()
}

/// Dimensions of `r`, `r²` and `r³` for a basis `r` of an ideal.
fn power_dims<F: Field + Elim>(r: &[Mat3<F>]) -> [usize; 3] {
    let r2 = basis_of(products(r, r));
    let r3 = basis_of(products(&r2, r));
    [r.len(), r2.len(), r3.len()]
}

/// Jacobson radical in characteristic zero: the kernel of the trace form
/// `(x, y) ↦ tr(xy)` restricted to `s`, with the identity matrix added to
/// the probes so non-unital subalgebras are handled too.
pub fn radical<F: Field + Elim>(s: &Subspace<F>) -> Result<Subspace<F>> {
    if F::one().characteristic() != 0 {
        return Err(Error::CharNotZero);
    }
    let b = s.basis();
    if b.is_empty() {
        return Ok(Subspace::zero());
    }
    let mut probes = b.clone();
    probes.push(Mat3::identity());
    let rows: Vec<Vec<F>> = probes
        .iter()
        .map(|y| b.iter().map(|x| x.mul(y).trace()).collect())
        .collect();
    let null = elim::nullspace(&rows, b.len());
    Ok(span(
        null.iter().map(|c| Mat3::combination(c, &b)).collect(),
    ))
}

/// Calls `f` on every coefficient vector of length `n` over `elems`.
fn for_each_vector<F: Copy>(elems: &[F], n: usize, mut f: impl FnMut(&[F])) {
    let mut idx = vec![0usize; n];
    let mut cur: Vec<F> = vec![elems[0]; n];
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            idx[k] += 1;
            if idx[k] < elems.len() {
                cur[k] = elems[idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = elems[0];
            k += 1;
        }
    }
}

const ENUMERATION_LIMIT: u128 = 5_000_000;

fn enumeration_size<F: FiniteField>(dim: usize) -> Result<u128> {
    let q = F::elements().len() as u128;
    match q.checked_pow(dim as u32) {
        Some(n) if n <= ENUMERATION_LIMIT => Ok(n),
        _ => Err(Error::NotSupported(format!(
            "enumerating {q}^{dim} elements exceeds the limit"
        ))),
    }
}

/// Radical over a finite field: the sum of all nilpotent principal ideals,
/// found by enumerating the nilpotent elements of `s`.
pub fn radical_finite<F: FiniteField>(s: &Subspace<F>) -> Result<Subspace<F>> {
    let b = s.basis();
    enumeration_size::<F>(b.len())?;
    let elems = F::elements();
    let mut rad: Subspace<F> = Subspace::zero();
    for_each_vector(&elems, b.len(), |c| {
        let x = Mat3::combination(c, &b);
        if x.is_zero() || !x.mul(&x).mul(&x).is_zero() || rad.contains(&x) {
            return;
        }
        let mut gens = vec![x.clone()];
        for a in &b {
            gens.push(a.mul(&x));
            gens.push(x.mul(a));
            for c in &b {
                gens.push(a.mul(&x).mul(c));
            }
        }
        let ideal = basis_of(gens);
        let cube = products(&products(&ideal, &ideal), &ideal);
        if cube.iter().all(Mat3::is_zero) {
            let mut all = rad.basis();
            all.extend(ideal);
            rad = span(all);
        }
    });
    Ok(rad)
}

/// Whether some `u ∈ span(b)` satisfies `u·g = g` (if `left`) and `g·u = g`
/// (if `right`) for every basis element `g`.
fn has_identity_like<F: Field + Elim>(b: &[Mat3<F>], left: bool, right: bool) -> bool {
    if b.is_empty() {
        return false;
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for g in b {
        let sides: Vec<Vec<Mat3<F>>> = [(left, true), (right, false)]
            .into_iter()
            .filter(|(on, _)| *on)
            .map(|(_, l)| {
                b.iter()
                    .map(|x| if l { x.mul(g) } else { g.mul(x) })
                    .collect()
            })
            .collect();
        for prods in sides {
            for k in 0..9 {
                rows.push(prods.iter().map(|p| p.coords()[k].clone()).collect());
                rhs.push(g.coords()[k].clone());
            }
        }
    }
    elim::solve(&rows, &rhs).is_some()
}

fn annihilator_dim<F: Field + Elim>(b: &[Mat3<F>]) -> usize {
    if b.is_empty() {
        return 0;
    }
    let mut rows: Vec<Vec<F>> = Vec::new();
    for g in b {
        for k in 0..9 {
            rows.push(b.iter().map(|x| x.mul(g).coords()[k].clone()).collect());
            rows.push(b.iter().map(|x| g.mul(x).coords()[k].clone()).collect());
        }
    }
    elim::nullspace(&rows, b.len()).len()
}

/// Largest rank among a fixed pseudo-random sample of combinations; equal to
/// the generic rank with overwhelming probability over ℚ.
fn generic_rank<F: Field + Elim>(b: &[Mat3<F>]) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = 0;
    for _ in 0..12 {
        let c: Vec<F> = b
            .iter()
            .map(|_| F::from_i64(rng.gen_range(-50..=50)))
            .collect();
        best = best.max(Mat3::combination(&c, b).rank());
    }
    best
}

/// The part of the fingerprint that does not need idempotents.
fn structural<F: Field + Elim>(s: &Subspace<F>, rad: &Subspace<F>) -> Fingerprint {
    let b = s.basis();
    let r = rad.basis();
    let zero_products = |x: &[Mat3<F>], y: &[Mat3<F>]| products(x, y).iter().all(Mat3::is_zero);
    Fingerprint {
        dim: b.len(),
        rad_dims: power_dims(&r),
        ss_dim: b.len() - r.len(),
        has_unit: has_identity_like(&b, true, true),
        has_left_unit: has_identity_like(&b, true, false),
        has_right_unit: has_identity_like(&b, false, true),
        rad_in_left_ann: zero_products(&b, &r),
        rad_in_right_ann: zero_products(&r, &b),
        ann_dim: annihilator_dim(&b),
        generic_rank: generic_rank(&b),
        rad_generic_rank: generic_rank(&r),
        idempotent_ranks: Vec::new(),
        idempotent_kills_rad2: false,
    }
}

fn kills<F: Field + Elim>(e: &Mat3<F>, rad2: &[Mat3<F>]) -> bool {
    rad2.iter()
        .all(|r| e.mul(r).is_zero() && r.mul(e).is_zero())
}

/// Fingerprint of a concrete rational subalgebra.
///
/// Idempotent data is exact for dimension at most 2. In higher dimension it
/// is read off the reduction modulo the first prime from 7 on that divides no
/// denominator of the canonical basis.
pub fn fingerprint(s: &Subspace<Rational>) -> Result<Fingerprint> {
    let rad = radical(s)?;
    let mut fp = structural(s, &rad);
    let r = rad.basis();
    let rad2 = basis_of(products(&r, &r));
    if fp.dim <= 2 {
        let idem = idempotents(s)?;
        fp.idempotent_ranks = idem.ranks();
        fp.idempotent_kills_rad2 = idem.elements.iter().any(|e| kills(e, &rad2));
    } else {
        let (ranks, killer) = idempotent_data_mod_p(&s.basis(), &rad2)?;
        fp.idempotent_ranks = ranks;
        fp.idempotent_kills_rad2 = killer;
    }
    Ok(fp)
}

/// Fingerprint over a finite field, with every field found by enumeration.
pub fn fingerprint_finite<F: FiniteField>(s: &Subspace<F>) -> Result<Fingerprint> {
    let rad = radical_finite(s)?;
    let mut fp = structural(s, &rad);
    let r = rad.basis();
    let rad2 = basis_of(products(&r, &r));
    let idem = idempotents_finite(s)?;
    fp.idempotent_ranks = idem
        .iter()
        .map(Mat3::rank)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    fp.idempotent_kills_rad2 = idem.iter().any(|e| kills(e, &rad2));
    Ok(fp)
}

fn reduce<const P: u32>(mats: &[Mat3<Rational>]) -> Option<Vec<Mat3<Gf<P>>>> {
    mats.iter()
        .map(|m| {
            m.try_map(|x| Gf::<P>::from_rational(x).ok_or(Error::SingularMatrix))
                .ok()
        })
        .collect()
}

fn idempotent_data_at<const P: u32>(
    b: &[Mat3<Rational>],
    rad2: &[Mat3<Rational>],
) -> Option<Result<(Vec<usize>, bool)>> {
    let bp = reduce::<P>(b)?;
    let r2 = reduce::<P>(rad2)?;
    let s = span(bp);
    if s.dim() != b.len() || span(r2.clone()).dim() != rad2.len() {
        return None;
    }
    Some(idempotents_finite(&s).map(|idem| {
        let ranks = idem.iter().map(Mat3::rank).collect::<BTreeSet<_>>();
        (
            ranks.into_iter().collect(),
            idem.iter().any(|e| kills(e, &r2)),
        )
    }))
}

fn idempotent_data_mod_p(
    b: &[Mat3<Rational>],
    rad2: &[Mat3<Rational>],
) -> Result<(Vec<usize>, bool)> {
    if let Some(r) = idempotent_data_at::<7>(b, rad2) {
        return r;
    }
    if let Some(r) = idempotent_data_at::<11>(b, rad2) {
        return r;
    }
    if let Some(r) = idempotent_data_at::<13>(b, rad2) {
        return r;
    }
    Err(Error::NotSupported(
        "no small prime gives a faithful reduction".to_string(),
    ))
}

/// Nonzero idempotents of a subalgebra of dimension at most 2 over ℚ.
#[derive(Clone, Debug)]
pub struct Idempotents {
    pub elements: Vec<Mat3<Rational>>,
    /// True when the idempotents form a one-parameter family; `elements`
    /// then holds sample members of that family plus any isolated ones.
    pub family: bool,
}

impl Idempotents {
    pub fn ranks(&self) -> Vec<usize> {
        self.elements
            .iter()
            .map(Mat3::rank)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Evaluates `c[0] + c[1] t + ...` at `t`.
fn horner(c: &[Rational], t: &Rational) -> Rational {
    c.iter()
        .rev()
        .fold(Rational::zero(), |acc, x| acc.mul(t).add(x))
}

fn divisors(n: &BigInt) -> Option<Vec<i128>> {
    let n = n.abs().to_i128()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots of a polynomial given by its coefficients in increasing
/// degree, found with the rational root theorem.
pub fn rational_roots(c: &[Rational]) -> Vec<Rational> {
    let mut c: Vec<Rational> = c.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = BTreeSet::new();
    while c[0].is_zero() {
        roots.insert(Rational::zero());
        c.remove(0);
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let last = ints.last().expect("nonempty");
        if let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(last)) {
            for p in &ps {
                for q in &qs {
                    for sign in [1i128, -1] {
                        let t = Rational::new(BigInt::from(sign * p), BigInt::from(*q));
                        if horner(&c, &t).is_zero() {
                            roots.insert(t);
                        }
                    }
                }
            }
        }
    }
    roots.into_iter().collect()
}

/// Idempotents of a rational subalgebra of dimension at most 2.
///
/// With basis `g1, g2`, every idempotent is a multiple of `g2` or of
/// `w(t) = g1 + t g2`. Writing `w² = A(t) g1 + B(t) g2`, the direction `w(t)`
/// carries the idempotent `w/A(t)` exactly when `B(t) = t A(t)` and
/// `A(t) ≠ 0`, so the candidates are the roots of a cubic.
pub fn idempotents(s: &Subspace<Rational>) -> Result<Idempotents> {
    let b = s.basis();
    let coords = |m: &Mat3<Rational>| -> Vec<Rational> {
        s.coordinates(m).expect("products stay inside a subalgebra")
    };
    match b.len() {
        0 => Ok(Idempotents {
            elements: Vec::new(),
            family: false,
        }),
        1 => {
            let c = coords(&b[0].mul(&b[0]));
            let elements = match c[0].inv() {
                Some(i) => vec![b[0].scale(&i)],
                None => Vec::new(),
            };
            Ok(Idempotents {
                elements,
                family: false,
            })
        }
        2 => {
            let (g1, g2) = (&b[0], &b[1]);
            let c11 = coords(&g1.mul(g1));
            let c12 = coords(&g1.mul(g2));
            let c21 = coords(&g2.mul(g1));
            let c22 = coords(&g2.mul(g2));
            let a = [c11[0].clone(), c12[0].add(&c21[0]), c22[0].clone()];
            let bq = [c11[1].clone(), c12[1].add(&c21[1]), c22[1].clone()];
            // C(t) = B(t) - t A(t)
            let cubic = [
                bq[0].clone(),
                bq[1].sub(&a[0]),
                bq[2].sub(&a[1]),
                a[2].neg(),
            ];
            let w = |t: &Rational| g1.add(&g2.scale(t));
            let mut elements = Vec::new();
            let mut family = false;
            if cubic.iter().all(Ring::is_zero) {
                family = true;
                let mut t = 0i64;
                while elements.len() < 3 && t < 50 {
                    let tr = Rational::from_int(t);
                    if let Some(i) = horner(&a, &tr).inv() {
                        elements.push(w(&tr).scale(&i));
                    }
                    t += 1;
                }
            } else {
                for t in rational_roots(&cubic) {
                    if let Some(i) = horner(&a, &t).inv() {
                        elements.push(w(&t).scale(&i));
                    }
                }
            }
            if c22[0].is_zero() {
                if let Some(i) = c22[1].inv() {
                    elements.push(g2.scale(&i));
                }
            }
            Ok(Idempotents { elements, family })
        }
        d => Err(Error::NotSupported(format!(
            "exact idempotents need dimension at most 2, got {d}"
        ))),
    }
}

/// All nonzero idempotents of a subalgebra over a finite field.
pub fn idempotents_finite<F: FiniteField>(s: &Subspace<F>) -> Result<Vec<Mat3<F>>> {
    let b = s.basis();
    enumeration_size::<F>(b.len())?;
    let mut out = Vec::new();
    for_each_vector(&F::elements(), b.len(), |c| {
        let x = Mat3::combination(c, &b);
        if !x.is_zero() && x.mul(&x) == x {
            out.push(x);
        }
    });
    Ok(out)
}

/// Isomorphism type of a two-dimensional subalgebra in characteristic zero.
pub fn classify_2dim<F: Field + Elim>(s: &Subspace<F>) -> Result<TwoDimType> {
    if s.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: s.dim(),
        });
    }
    let rad = radical(s)?;
    let b = s.basis();
    Ok(match rad.dim() {
        2 => {
            if products(&b, &b).iter().all(Mat3::is_zero) {
                TwoDimType::D1
            } else {
                TwoDimType::D2
            }
        }
        0 => TwoDimType::D7,
        _ => {
            let left = has_identity_like(&b, true, false);
            let right = has_identity_like(&b, false, true);
            match (left, right) {
                (true, true) => TwoDimType::D4,
                (true, false) => TwoDimType::D5,
                (false, true) => TwoDimType::D6,
                (false, false) => TwoDimType::D3,
            }
        }
    })
}

/// Faithful 3×3 realization of an abstract two-dimensional algebra: the left
/// regular representation on its unitization with basis `(1, e1, e2)`.
pub fn realize_template(t: &Template) -> Subspace<Rational> {
    let mut table = [[[0i64; 2]; 2]; 2];
    for (i, j, c) in &t.products {
        table[*i][*j] = *c;
    }
    let gens = (0..2)
        .map(|i| {
            let mut m = [[0i64; 3]; 3];
            m[i + 1][0] = 1;
            for j in 0..2 {
                for k in 0..2 {
                    m[k + 1][j + 1] = table[i][j][k];
                }
            }
            Mat3::from_ints(m)
        })
        .collect();
    span(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::templates;

    type Q = Mat3<Rational>;

    fn e(i: usize, j: usize) -> Q {
        Q::unit(i, j)
    }

    fn qspan(g: Vec<Q>) -> Subspace<Rational> {
        span(g)
    }

    fn is_ideal(s: &Subspace<Rational>, r: &Subspace<Rational>) -> bool {
        let b = s.basis();
        let rb = r.basis();
        products(&b, &rb)
            .iter()
            .chain(products(&rb, &b).iter())
            .all(|p| r.contains(p))
    }

    #[test]
    fn radical_of_full_algebra_is_zero() {
        let all = qspan((0..9).map(Q::basis).collect());
        assert_eq!(radical(&all).unwrap().dim(), 0);
    }

    #[test]
    fn radical_of_seven_dim_algebra() {
        let m7 = qspan(vec![
            e(1, 1),
            e(1, 2),
            e(1, 3),
            e(2, 2),
            e(2, 3),
            e(3, 2),
            e(3, 3),
        ]);
        let r = radical(&m7).unwrap();
        assert_eq!(r, qspan(vec![e(1, 2), e(1, 3)]));
        assert!(is_ideal(&m7, &r));
    }

    #[test]
    fn radical_of_upper_triangular() {
        let u6 = qspan(vec![e(1, 1), e(1, 2), e(1, 3), e(2, 2), e(2, 3), e(3, 3)]);
        let r = radical(&u6).unwrap();
        assert_eq!(r, qspan(vec![e(1, 2), e(1, 3), e(2, 3)]));
        assert_eq!(power_dims(&r.basis()), [3, 1, 0]);
    }

    #[test]
    fn finite_radical_matches_trace_radical() {
        type F = Gf<3>;
        let g = |i, j| Mat3::<F>::unit(i, j);
        let u6 = span(vec![g(1, 1), g(1, 2), g(1, 3), g(2, 2), g(2, 3), g(3, 3)]);
        let r = radical_finite(&u6).unwrap();
        assert_eq!(r, span(vec![g(1, 2), g(1, 3), g(2, 3)]));
    }

    #[test]
    fn trace_radical_rejects_positive_characteristic() {
        let s = span(vec![Mat3::<Gf<5>>::unit(2, 1)]);
        assert!(matches!(radical(&s), Err(Error::CharNotZero)));
    }

    #[test]
    fn templates_classify_as_themselves() {
        let expected = [
            TwoDimType::D1,
            TwoDimType::D2,
            TwoDimType::D3,
            TwoDimType::D4,
            TwoDimType::D5,
            TwoDimType::D6,
            TwoDimType::D7,
        ];
        for (t, want) in templates().iter().zip(expected) {
            let s = realize_template(t);
            assert!(s.is_subalgebra().closed, "{}", t.id);
            assert_eq!(classify_2dim(&s).unwrap(), want, "{}", t.id);
        }
    }

    #[test]
    fn classify_small_examples() {
        assert_eq!(
            classify_2dim(&qspan(vec![e(2, 1), e(3, 1)])).unwrap(),
            TwoDimType::D1
        );
        let v = e(3, 1).add(&e(2, 3));
        assert_eq!(v.mul(&v), e(2, 1));
        assert_eq!(
            classify_2dim(&qspan(vec![e(2, 1), v])).unwrap(),
            TwoDimType::D2
        );
        let s = qspan(vec![e(2, 1).add(&e(2, 2)), e(3, 1).add(&e(3, 2))]);
        assert_eq!(classify_2dim(&s).unwrap(), TwoDimType::D6);
        assert!(matches!(
            classify_2dim(&qspan(vec![e(2, 1)])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn idempotents_of_nilpotent_plane_are_empty() {
        let idem = idempotents(&qspan(vec![e(2, 1), e(3, 1)])).unwrap();
        assert!(idem.elements.is_empty());
    }

    #[test]
    fn idempotents_found_exactly() {
        // F+F: e11 and e22 plus their sum
        let idem = idempotents(&qspan(vec![e(1, 1), e(2, 2)])).unwrap();
        assert_eq!(idem.elements.len(), 3);
        assert_eq!(idem.ranks(), vec![1, 2]);
        // F⋊N with left unit: e11, e12 gives the family e11 + t e12
        let idem = idempotents(&qspan(vec![e(1, 1), e(1, 2)])).unwrap();
        assert!(idem.family);
        for x in &idem.elements {
            assert_eq!(&x.mul(x), x);
        }
    }

    #[test]
    fn rational_root_finder() {
        let r = |n: i64, d: i64| Rational::new(n, d);
        // (2t - 1)(t + 3) t = 2t^3 + 5t^2 - 3t
        let roots = rational_roots(&[r(0, 1), r(-3, 1), r(5, 1), r(2, 1)]);
        assert_eq!(roots, vec![r(-3, 1), r(0, 1), r(1, 2)]);
        assert!(rational_roots(&[r(-2, 1), r(0, 1), r(1, 1)]).is_empty());
    }

    #[test]
    fn transpose_swaps_one_sided_fields() {
        let s = qspan(vec![e(2, 1).add(&e(2, 2)), e(3, 1).add(&e(3, 2))]);
        let a = fingerprint(&s).unwrap();
        let b = fingerprint(&s.transpose().unwrap()).unwrap();
        assert_eq!(a.transposed(), b);
        assert!(a.has_right_unit && !a.has_left_unit);
    }
}
