//! Splitting Rota–Baxter operators.
//!
//! A decomposition `A = S ⊕ B` gives the operator `R(s + b) = −λ·b`, which
//! satisfies `R(x)R(y) = R(R(x)y + xR(y) + λxy)`. The swapped decomposition
//! gives `R̃(s + b) = −λ·s`, and `R + R̃ = −λ·Id`.
//!
//! Operators are stored scaled: `images[k]` holds the coordinates of
//! `scale·R(e_k)`. For a parametric entry the scale is the determinant of
//! the quotient matrix of S modulo B, so every coordinate is a polynomial
//! and the identity, multiplied through by `scale²`, becomes a polynomial
//! identity:
//!
//! `R̂(x)R̂(y) = R̂(R̂(x)y + xR̂(y) + λ·scale·xy)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::exact::{elim, Elim, Field, MultiPoly, RatFunc, Rational, Ring};
use crate::matrix::{Mat3, Subspace};

/// Name of the symbolic weight.
pub const WEIGHT_VAR: &str = "lambda";

#[derive(Clone, Debug, PartialEq)]
pub struct RbOperator<T> {
    /// Row `k` holds the coordinates of `scale·R(e_k)`, in the order
    /// e11, e12, ..., e33.
    pub images: Vec<Vec<T>>,
    pub scale: T,
    pub weight: T,
    pub source: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RbCheck {
    pub holds: bool,
    /// First basis pair `(i, j)` (coordinate indices) where it fails.
    pub witness: Option<(usize, usize)>,
}

fn unit<T: Ring>(k: usize) -> Vec<T> {
    (0..9)
        .map(|i| if i == k { T::one() } else { T::zero() })
        .collect()
}

/// The linear map with rows `images` applied to the vector `x`.
fn apply<T: Ring>(images: &[Vec<T>], x: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); 9];
    for (c, row) in x.iter().zip(images) {
        if c.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            *o = o.add(&c.mul(r));
        }
    }
    out
}

fn matmul<T: Ring>(x: &[T], y: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); 9];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = T::zero();
            for k in 0..3 {
                acc = acc.add(&x[3 * i + k].mul(&y[3 * k + j]));
            }
            out[3 * i + j] = acc;
        }
    }
    out
}

fn axpy<T: Ring>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn scaled<T: Ring>(c: &T, v: &[T]) -> Vec<T> {
    v.iter().map(|x| c.mul(x)).collect()
}

impl<T: Ring> RbOperator<T> {
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        apply(&self.images, x)
    }

    /// `R̂ + R̂'` for operators sharing scale and weight.
    pub fn sum(&self, other: &RbOperator<T>) -> Result<RbOperator<T>> {
        if self.scale != other.scale || self.weight != other.weight {
            return Err(Error::DomainMismatch(
                "operators have different scales or weights".to_string(),
            ));
        }
        Ok(RbOperator {
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| axpy(a, b))
                .collect(),
            scale: self.scale.clone(),
            weight: self.weight.clone(),
            source: format!("{} + {}", self.source, other.source),
        })
    }

    /// Whether the operator is `c·Id` for the given scalar `c`.
    pub fn is_scalar(&self, c: &T) -> bool {
        let target = self.scale.mul(c);
        (0..9).all(|k| self.images[k] == scaled(&target, &unit::<T>(k)))
    }
}

/// Checks the weight-λ Rota–Baxter identity on all 81 ordered pairs of
/// matrix units.
pub fn check_rb_identity<T: Ring>(r: &RbOperator<T>) -> RbCheck {
    let lam_scale = r.weight.mul(&r.scale);
    for i in 0..9 {
        for j in 0..9 {
            let (x, y) = (unit::<T>(i), unit::<T>(j));
            let (rx, ry) = (&r.images[i], &r.images[j]);
            let lhs = matmul(rx, ry);
            let z = axpy(
                &axpy(&matmul(rx, &y), &matmul(&x, ry)),
                &scaled(&lam_scale, &matmul(&x, &y)),
            );
            if lhs != r.apply(&z) {
                return RbCheck {
                    holds: false,
                    witness: Some((i, j)),
                };
            }
        }
    }
    RbCheck {
        holds: true,
        witness: None,
    }
}

/// The splitting operator `R(s + b) = −λ·b` of a concrete decomposition,
/// through the full change of basis to `S ⊕ B`.
pub fn splitting_rb<F: Field + Elim>(
    s: &Subspace<F>,
    b: &Subspace<F>,
    weight: F,
) -> Result<RbOperator<F>> {
    if weight.is_zero() {
        return Err(Error::NotSupported(
            "the weight must be nonzero".to_string(),
        ));
    }
    let sb = s.basis();
    let bb = b.basis();
    if sb.len() + bb.len() != 9 {
        return Err(Error::NotDirectSum);
    }
    let rows: Vec<Vec<F>> = sb.iter().chain(&bb).map(Mat3::to_vec).collect();
    let inv = elim::inverse(&rows).ok_or(Error::NotDirectSum)?;
    let neg = weight.neg();
    let images = (0..9)
        .map(|k| {
            // coordinates of e_k in the basis (S, B), keeping the B part
            let mut out = vec![F::zero(); 9];
            for (c, row) in inv[k].iter().zip(&rows).skip(sb.len()) {
                out = axpy(&out, &scaled(&c.mul(&neg), row));
            }
            out
        })
        .collect();
    Ok(RbOperator {
        images,
        scale: F::one(),
        weight,
        source: String::new(),
    })
}

/// Reduction of vectors modulo a constant subspace `B`, read off at the
/// non-pivot columns of its reduced echelon form.
struct Quotient {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    fn new(b: &[Mat3<Rational>]) -> Quotient {
        let m: Vec<Vec<Rational>> = b.iter().map(Mat3::to_vec).collect();
        let (rows, pivots) = elim::rref(&m);
        let rows: Vec<_> = rows.into_iter().take(pivots.len()).collect();
        let free = (0..9).filter(|c| !pivots.contains(c)).collect();
        Quotient { rows, pivots, free }
    }

    fn coords(&self, x: &[MultiPoly]) -> Vec<MultiPoly> {
        let mut v = x.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (vi, ri) in v.iter_mut().zip(row) {
                if !ri.is_zero() {
                    *vi = vi.sub(&c.scale(ri));
                }
            }
        }
        self.free.iter().map(|&f| v[f].clone()).collect()
    }
}

fn minor<T: Clone>(m: &[Vec<T>], skip_row: usize, skip_col: usize) -> Vec<Vec<T>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn adjugate<T: Elim>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![T::one()]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = elim::determinant(&minor(m, j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        d.neg()
                    }
                })
                .collect()
        })
        .collect()
}

/// The splitting operator of a catalog entry and of its swapped
/// decomposition, symbolic in the entry parameters and in the weight.
#[derive(Clone, Debug)]
pub struct SplittingPair {
    /// `R(s + b) = −λ·b`.
    pub r: RbOperator<MultiPoly>,
    /// `R̃(s + b) = −λ·s`.
    pub r_tilde: RbOperator<MultiPoly>,
}

pub fn entry_operators(e: &CatalogEntry) -> Result<SplittingPair> {
    let b = e.complement()?;
    let q = Quotient::new(&b.generators);
    let gens: Vec<Vec<MultiPoly>> = e.s_generators.iter().map(Mat3::to_vec).collect();
    if gens.len() != q.free.len() {
        return Err(Error::NotDirectSum);
    }
    let qm: Vec<Vec<MultiPoly>> = gens.iter().map(|g| q.coords(g)).collect();
    let delta = elim::determinant(&qm);
    if delta.is_zero() {
        return Err(Error::NotDirectSum);
    }
    let adj = adjugate(&qm);
    // delta·(S-component of e_k) for each matrix unit
    let proj_s: Vec<Vec<MultiPoly>> = (0..9)
        .map(|k| {
            let qx = q.coords(&unit::<MultiPoly>(k));
            let mut out = vec![MultiPoly::zero(); 9];
            for (i, qi) in qx.iter().enumerate() {
                if qi.is_zero() {
                    continue;
                }
                for (j, g) in gens.iter().enumerate() {
                    out = axpy(&out, &scaled(&qi.mul(&adj[i][j]), g));
                }
            }
            out
        })
        .collect();
    let lam = MultiPoly::var(WEIGHT_VAR);
    let neg = lam.neg();
    let r_images = proj_s
        .iter()
        .enumerate()
        .map(|(k, ps)| {
            let b_part: Vec<MultiPoly> = unit::<MultiPoly>(k)
                .iter()
                .zip(ps)
                .map(|(x, p)| delta.mul(x).sub(p))
                .collect();
            scaled(&neg, &b_part)
        })
        .collect();
    let t_images = proj_s.iter().map(|ps| scaled(&neg, ps)).collect();
    let op = |images, tag: &str| RbOperator {
        images,
        scale: delta.clone(),
        weight: lam.clone(),
        source: format!("{}{tag}", e.id),
    };
    Ok(SplittingPair {
        r: op(r_images, ""),
        r_tilde: op(t_images, "~"),
    })
}

impl RbOperator<MultiPoly> {
    /// The concrete operator at a parameter assignment (which must include
    /// the weight).
    pub fn specialize(&self, values: &BTreeMap<String, Rational>) -> Result<RbOperator<Rational>> {
        let scale = self.scale.eval(values)?;
        let inv = scale
            .inv()
            .ok_or_else(|| Error::ConstraintViolated(self.scale.to_string()))?;
        let images = self
            .images
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| Ok(x.eval(values)?.mul(&inv)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(RbOperator {
            images,
            scale: Rational::one(),
            weight: self.weight.eval(values)?,
            source: self.source.clone(),
        })
    }

    /// Entries of `R` itself as rational functions, row `k` being `R(e_k)`.
    pub fn matrix9(&self) -> Vec<Vec<RatFunc>> {
        self.images
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| RatFunc::new(x.clone(), self.scale.clone()).expect("nonzero scale"))
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let m: Vec<Vec<String>> = self
            .matrix9()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect();
        json!({
            "source": self.source,
            "weight": self.weight.to_string(),
            "matrix9": m,
        })
    }
}

impl RbOperator<Rational> {
    pub fn to_json(&self) -> Value {
        let inv = self.scale.inv().expect("nonzero scale");
        let m: Vec<Vec<String>> = self
            .images
            .iter()
            .map(|r| r.iter().map(|x| x.mul(&inv).to_string()).collect())
            .collect();
        json!({
            "source": self.source,
            "weight": self.weight.to_string(),
            "matrix9": m,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RbReport {
    pub entry_id: String,
    /// Determinant of the quotient matrix of S modulo B; R has it as
    /// denominator.
    pub denominator: String,
    /// The denominator is nonzero under the entry constraints.
    pub denominator_certified: bool,
    pub identity: RbCheck,
    pub complement_identity: RbCheck,
    /// `R(s) = 0` and `R(b) = −λb` on generators, and likewise for `R̃`.
    pub defining_property: bool,
    /// `R + R̃ = −λ·Id`.
    pub sum_is_minus_weight: bool,
}

impl RbReport {
    pub fn passed(&self) -> bool {
        self.denominator_certified
            && self.identity.holds
            && self.complement_identity.holds
            && self.defining_property
            && self.sum_is_minus_weight
    }
}

fn defining_property(e: &CatalogEntry, pair: &SplittingPair) -> Result<bool> {
    let lam_scale = pair.r.weight.mul(&pair.r.scale).neg();
    let zero = vec![MultiPoly::zero(); 9];
    for g in &e.s_generators {
        let v = g.to_vec();
        if pair.r.apply(&v) != zero || pair.r_tilde.apply(&v) != scaled(&lam_scale, &v) {
            return Ok(false);
        }
    }
    for g in &e.complement()?.generators {
        let v: Vec<MultiPoly> = g
            .to_vec()
            .iter()
            .map(|x| MultiPoly::constant(x.clone()))
            .collect();
        if pair.r.apply(&v) != scaled(&lam_scale, &v) || pair.r_tilde.apply(&v) != zero {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_rb_entry(e: &CatalogEntry) -> Result<RbReport> {
    let pair = entry_operators(e)?;
    let sum = pair.r.sum(&pair.r_tilde)?;
    Ok(RbReport {
        entry_id: e.id.clone(),
        denominator: pair.r.scale.to_string(),
        denominator_certified: pair.r.scale.certified_nonzero(&e.constraints),
        identity: check_rb_identity(&pair.r),
        complement_identity: check_rb_identity(&pair.r_tilde),
        defining_property: defining_property(e, &pair)?,
        sum_is_minus_weight: sum.is_scalar(&pair.r.weight.neg()),
    })
}

/// Reports in input order.
pub fn verify_rb_all(entries: &[CatalogEntry]) -> Result<Vec<RbReport>> {
    entries.par_iter().map(verify_rb_entry).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{builtin_catalog, find};
    use crate::exact::ConstraintSet;
    use crate::verifier::draw_assignment;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn concrete(id: &str) -> (Subspace<Rational>, Subspace<Rational>) {
        let cat = builtin_catalog();
        find(&cat, id)
            .unwrap()
            .specialize(&BTreeMap::new())
            .unwrap()
    }

    #[test]
    fn r1_values() {
        let (s, b) = concrete("R1");
        let r = splitting_rb(&s, &b, q(3)).unwrap();
        assert!(r.images[3].iter().all(|x| x.is_zero()));
        assert_eq!(r.images[0], scaled(&q(-3), &unit::<Rational>(0)));
    }

    #[test]
    fn projection_identity() {
        let (s, b) = concrete("T6");
        let r = splitting_rb(&s, &b, q(2)).unwrap();
        for k in 0..9 {
            assert_eq!(r.apply(&r.images[k]), scaled(&q(-2), &r.images[k]));
        }
    }

    #[test]
    fn identity_in_s_is_killed() {
        let cat = builtin_catalog();
        let e = find(&cat, "S1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = draw_assignment(e, &mut rng).unwrap().unwrap();
        let (s, b) = e.specialize(&v).unwrap();
        let r = splitting_rb(&s, &b, q(1)).unwrap();
        let id = Mat3::<Rational>::identity().to_vec();
        assert!(r.apply(&id).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn zero_and_minus_weight_operators() {
        let zero = RbOperator {
            images: vec![vec![q(0); 9]; 9],
            scale: q(1),
            weight: q(1),
            source: String::new(),
        };
        assert!(check_rb_identity(&zero).holds);
        let minus = RbOperator {
            images: (0..9)
                .map(|k| scaled(&q(-5), &unit::<Rational>(k)))
                .collect(),
            scale: q(1),
            weight: q(5),
            source: String::new(),
        };
        assert!(check_rb_identity(&minus).holds);
    }

    #[test]
    fn non_subalgebra_split_fails_with_witness() {
        let s = Subspace::span(
            vec![Mat3::unit(1, 2), Mat3::unit(2, 1)],
            ConstraintSet::new(),
        )
        .unwrap();
        let others: Vec<_> = [0, 2, 4, 5, 6, 7, 8]
            .iter()
            .map(|&k| Mat3::basis(k))
            .collect();
        let b = Subspace::span(others, ConstraintSet::new()).unwrap();
        let c = check_rb_identity(&splitting_rb(&s, &b, q(1)).unwrap());
        assert!(!c.holds);
        assert!(c.witness.is_some());
    }

    #[test]
    fn not_a_direct_sum() {
        let (s, _) = concrete("R1");
        assert!(matches!(
            splitting_rb(&s, &s, q(1)),
            Err(Error::NotDirectSum)
        ));
    }

    #[test]
    fn symbolic_matches_concrete_route() {
        let cat = builtin_catalog();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for id in ["R8", "S5", "U7@M1", "V3", "Y9"] {
            let e = find(&cat, id).unwrap();
            let pair = entry_operators(e).unwrap();
            for _ in 0..3 {
                let mut v = draw_assignment(e, &mut rng).unwrap().unwrap();
                let (s, b) = e.specialize(&v).unwrap();
                v.insert(WEIGHT_VAR.to_string(), q(-7));
                let direct = splitting_rb(&s, &b, q(-7)).unwrap();
                let via = pair.r.specialize(&v).unwrap();
                assert_eq!(direct.images, via.images, "{id}");
            }
        }
    }

    #[test]
    fn all_entries_symbolic() {
        for r in verify_rb_all(&builtin_catalog()).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}
