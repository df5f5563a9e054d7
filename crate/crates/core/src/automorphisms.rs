//! Automorphisms and antiautomorphisms of the matrix algebra, stored as
//! 9×9 coordinate matrices whose row `k` holds the image of basis matrix `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{elim, ConstraintSet, Elim, Field, MultiPoly, RatFunc, Ring};
use crate::matrix::{Mat3, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    Automorphism,
    Antiautomorphism,
}

#[derive(Clone, Debug)]
pub struct AlgebraMap<T> {
    matrix9: Vec<Vec<T>>,
    pub kind: MapKind,
    pub params: Vec<(String, T)>,
    pub constraints: ConstraintSet,
}

/// First basis pair `(i, j)` (coordinate indices) on which the
/// multiplicativity check fails, or `Singular` if the map is not invertible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapFailure {
    Product(usize, usize),
    Singular,
}

impl<T: Field + Elim> AlgebraMap<T> {
    pub fn from_images(images: Vec<Mat3<T>>, kind: MapKind) -> Result<Self> {
        if images.len() != 9 {
            return Err(Error::DimensionMismatch {
                expected: 9,
                found: images.len(),
            });
        }
        Ok(AlgebraMap {
            matrix9: images.iter().map(Mat3::to_vec).collect(),
            kind,
            params: Vec::new(),
            constraints: ConstraintSet::new(),
        })
    }

    pub fn identity() -> Self {
        Self::from_images((0..9).map(Mat3::basis).collect(), MapKind::Automorphism)
            .expect("nine images")
    }

    pub fn matrix9(&self) -> &[Vec<T>] {
        &self.matrix9
    }

    pub fn image(&self, x: &Mat3<T>) -> Mat3<T> {
        let mut out = vec![T::zero(); 9];
        for (c, row) in x.coords().iter().zip(&self.matrix9) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.add(&c.mul(r));
            }
        }
        Mat3::from_coords(out).expect("nine coordinates")
    }

    pub fn basis_image(&self, k: usize) -> Mat3<T> {
        Mat3::from_coords(self.matrix9[k].clone()).expect("nine coordinates")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AlgebraMap<T>) -> AlgebraMap<T> {
        let images = (0..9).map(|k| self.image(&other.basis_image(k))).collect();
        let kind = if self.kind == other.kind {
            MapKind::Automorphism
        } else {
            MapKind::Antiautomorphism
        };
        let mut m = Self::from_images(images, kind).expect("nine images");
        m.constraints = self.constraints.merge(&other.constraints);
        m
    }

    pub fn determinant(&self) -> T {
        elim::determinant(&self.matrix9)
    }

    /// Checks multiplicativity (reversed for antiautomorphisms) on all 81
    /// basis pairs and invertibility of the coordinate matrix.
    pub fn check(&self) -> std::result::Result<(), MapFailure> {
        let imgs: Vec<Mat3<T>> = (0..9).map(|k| self.basis_image(k)).collect();
        for i in 0..9 {
            for j in 0..9 {
                let (a, b) = (i / 3, i % 3);
                let (c, d) = (j / 3, j % 3);
                let lhs = if b == c {
                    imgs[3 * a + d].clone()
                } else {
                    Mat3::zero()
                };
                let rhs = match self.kind {
                    MapKind::Automorphism => imgs[i].mul(&imgs[j]),
                    MapKind::Antiautomorphism => imgs[j].mul(&imgs[i]),
                };
                if lhs != rhs {
                    return Err(MapFailure::Product(i, j));
                }
            }
        }
        if !self.determinant().certified_nonzero(&self.constraints) {
            return Err(MapFailure::Singular);
        }
        Ok(())
    }

    pub fn is_algebra_map(&self) -> bool {
        self.check().is_ok()
    }

    /// Image of a subspace: the span of the images of its generators.
    pub fn apply(&self, s: &Subspace<T>) -> Result<Subspace<T>> {
        Subspace::span(
            s.generators().iter().map(|g| self.image(g)).collect(),
            s.constraints().merge(&self.constraints),
        )
    }
}

/// X ↦ T⁻¹XT.
pub fn conjugation<T: Field + Elim>(t: &Mat3<T>) -> Result<AlgebraMap<T>> {
    let tinv = t.inverse().ok_or(Error::SingularMatrix)?;
    let images = (0..9).map(|k| tinv.mul(&Mat3::basis(k)).mul(t)).collect();
    AlgebraMap::from_images(images, MapKind::Automorphism)
}

/// Θ_ij: conjugation by the permutation matrix swapping indices `i` and `j`
/// (1-based), e.g. Θ_12 uses T = e12 + e21 + e33.
pub fn theta<T: Field + Elim>(i: usize, j: usize) -> AlgebraMap<T> {
    let k = 6 - i - j;
    let t = Mat3::unit(i, j)
        .add(&Mat3::unit(j, i))
        .add(&Mat3::unit(k, k));
    conjugation(&t).expect("permutation matrices are invertible")
}

pub fn transpose_map<T: Field + Elim>() -> AlgebraMap<T> {
    AlgebraMap::from_images(
        (0..9).map(|k| Mat3::basis(k).transpose()).collect(),
        MapKind::Antiautomorphism,
    )
    .expect("nine images")
}

fn m<T: Ring>(rows: [[T; 3]; 3]) -> Mat3<T> {
    Mat3::from_rows(rows)
}

/// The automorphism family preserving span{e11,e12,e13,e22,e23,e32,e33},
/// written out image by image. Requires Δ = κν − λμ ≠ 0.
#[allow(clippy::too_many_arguments)]
pub fn phi_map<T: Field + Elim>(
    beta: &T,
    gamma: &T,
    kappa: &T,
    lambda: &T,
    mu: &T,
    nu: &T,
) -> Result<AlgebraMap<T>> {
    let delta = kappa.mul(nu).sub(&lambda.mul(mu));
    let dinv = delta.inv().ok_or(Error::SingularMatrix)?;
    let z = T::zero;
    let (b, g, k, l, u, n) = (beta, gamma, kappa, lambda, mu, nu);
    // γμ − βν and βλ − γκ recur in every lower block
    let p = g.mul(u).sub(&b.mul(n));
    let q = b.mul(l).sub(&g.mul(k));
    let e11 = m([
        [T::one(), b.clone(), g.clone()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let e12 = m([
        [z(), k.clone(), l.clone()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let e13 = m([
        [z(), u.clone(), n.clone()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let e21 = m([
        [p.clone(), b.mul(&p), g.mul(&p)],
        [n.clone(), b.mul(n), g.mul(n)],
        [u.neg(), b.mul(u).neg(), g.mul(u).neg()],
    ])
    .scale(&dinv);
    let e22 = m([
        [z(), k.mul(&p), l.mul(&p)],
        [z(), k.mul(n), l.mul(n)],
        [z(), k.mul(u).neg(), l.mul(u).neg()],
    ])
    .scale(&dinv);
    let e23 = m([
        [z(), u.mul(&p), n.mul(&p)],
        [z(), u.mul(n), n.mul(n)],
        [z(), u.mul(u).neg(), u.mul(n).neg()],
    ])
    .scale(&dinv);
    let e31 = m([
        [q.clone(), b.mul(&q), g.mul(&q)],
        [l.neg(), b.mul(l).neg(), g.mul(l).neg()],
        [k.clone(), b.mul(k), g.mul(k)],
    ])
    .scale(&dinv);
    let e32 = m([
        [z(), k.mul(&q), l.mul(&q)],
        [z(), k.mul(l).neg(), l.mul(l).neg()],
        [z(), k.mul(k), k.mul(l)],
    ])
    .scale(&dinv);
    let e33 = m([
        [z(), u.mul(&q), n.mul(&q)],
        [z(), l.mul(u).neg(), l.mul(n).neg()],
        [z(), k.mul(u), k.mul(n)],
    ])
    .scale(&dinv);
    let mut map = AlgebraMap::from_images(
        vec![e11, e12, e13, e21, e22, e23, e31, e32, e33],
        MapKind::Automorphism,
    )?;
    map.params = ["beta", "gamma", "kappa", "lambda", "mu", "nu"]
        .iter()
        .zip([b, g, k, l, u, n])
        .map(|(s, v)| (s.to_string(), v.clone()))
        .collect();
    Ok(map)
}

/// The automorphism family preserving the upper triangular matrices,
/// written out image by image. Requires α, δ ≠ 0.
pub fn psi_map<T: Field + Elim>(
    alpha: &T,
    beta: &T,
    gamma: &T,
    delta: &T,
    epsilon: &T,
) -> Result<AlgebraMap<T>> {
    let (a, b, g, d, e) = (alpha, beta, gamma, delta, epsilon);
    let ainv = a.inv().ok_or(Error::SingularMatrix)?;
    let dinv = d.inv().ok_or(Error::SingularMatrix)?;
    let z = T::zero;
    let o = T::one;
    let q = b.mul(e).sub(&g.mul(d));
    let e_d = e.mul(&dinv);
    let e11 = m([
        [o(), b.clone(), g.clone()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let e12 = m([
        [z(), d.clone(), e.clone()],
        [z(), z(), z()],
        [z(), z(), z()],
    ]);
    let e13 = m([[z(), z(), a.clone()], [z(), z(), z()], [z(), z(), z()]]);
    let e21 = m([
        [b.neg(), b.mul(b).neg(), b.mul(g).neg()],
        [o(), b.clone(), g.clone()],
        [z(), z(), z()],
    ])
    .scale(&dinv);
    let e22 = m([
        [z(), b.neg(), b.mul(&e_d).neg()],
        [z(), o(), e_d.clone()],
        [z(), z(), z()],
    ]);
    let e23 = m([
        [z(), z(), a.mul(b).neg()],
        [z(), z(), a.clone()],
        [z(), z(), z()],
    ])
    .scale(&dinv);
    let e31 = m([
        [q.clone(), b.mul(&q), g.mul(&q)],
        [e.neg(), b.mul(e).neg(), g.mul(e).neg()],
        [d.clone(), b.mul(d), g.mul(d)],
    ])
    .scale(&ainv.mul(&dinv));
    let e32 = m([
        [z(), q.clone(), e.mul(&q).mul(&dinv)],
        [z(), e.neg(), e.mul(e).mul(&dinv).neg()],
        [z(), d.clone(), e.clone()],
    ])
    .scale(&ainv);
    let e33 = m([
        [z(), z(), q.clone()],
        [z(), z(), e.neg()],
        [z(), z(), d.clone()],
    ])
    .scale(&dinv);
    let mut map = AlgebraMap::from_images(
        vec![e11, e12, e13, e21, e22, e23, e31, e32, e33],
        MapKind::Automorphism,
    )?;
    map.params = ["alpha", "beta", "gamma", "delta", "epsilon"]
        .iter()
        .zip([a, b, g, d, e])
        .map(|(s, v)| (s.to_string(), v.clone()))
        .collect();
    Ok(map)
}

fn rv(name: &str) -> RatFunc {
    RatFunc::var(name)
}

/// φ with all six parameters symbolic, under Δ ≠ 0.
pub fn phi_symbolic() -> AlgebraMap<RatFunc> {
    let mut m = phi_map(
        &rv("beta"),
        &rv("gamma"),
        &rv("kappa"),
        &rv("lambda"),
        &rv("mu"),
        &rv("nu"),
    )
    .expect("Δ is a nonzero polynomial");
    let delta = MultiPoly::var("kappa")
        .mul(&MultiPoly::var("nu"))
        .sub(&MultiPoly::var("lambda").mul(&MultiPoly::var("mu")));
    m.constraints = ConstraintSet::with_nonzero([delta]);
    m
}

/// ψ with all five parameters symbolic, under α ≠ 0 and δ ≠ 0.
pub fn psi_symbolic() -> AlgebraMap<RatFunc> {
    let mut m = psi_map(
        &rv("alpha"),
        &rv("beta"),
        &rv("gamma"),
        &rv("delta"),
        &rv("epsilon"),
    )
    .expect("α, δ are nonzero polynomials");
    m.constraints = ConstraintSet::with_nonzero([MultiPoly::var("alpha"), MultiPoly::var("delta")]);
    m
}

/// Applies a symbolic map to a polynomial subspace and clears the
/// denominators of each image generator, which must be certified nonzero
/// under the combined constraints.
pub fn apply_map_poly(
    map: &AlgebraMap<RatFunc>,
    s: &Subspace<MultiPoly>,
) -> Result<Subspace<MultiPoly>> {
    let constraints = s.constraints().merge(&map.constraints);
    let mut gens = Vec::new();
    for g in s.generators() {
        let img = map.image(&g.map(|p| RatFunc::from_poly(p.clone())));
        gens.push(clear_denominators(&img, &constraints)?);
    }
    Subspace::span(gens, constraints)
}

/// True when the map is an invertible algebra map sending every generator
/// of `s` back into `s`; invertibility then makes the image all of `s`.
pub fn preserves(map: &AlgebraMap<RatFunc>, s: &Subspace<MultiPoly>) -> Result<bool> {
    if !map.is_algebra_map() {
        return Ok(false);
    }
    let constraints = s.constraints().merge(&map.constraints);
    for g in s.generators() {
        let img = map.image(&g.map(|p| RatFunc::from_poly(p.clone())));
        if !s.contains(&clear_denominators(&img, &constraints)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplies a rational-function matrix by the product of its distinct
/// denominators.
pub fn clear_denominators(m: &Mat3<RatFunc>, c: &ConstraintSet) -> Result<Mat3<MultiPoly>> {
    let mut dens: Vec<MultiPoly> = Vec::new();
    for x in m.coords() {
        let d = x.den();
        if !d.is_constant() && !dens.contains(d) && !dens.iter().any(|e| e.div_exact(d).is_some()) {
            dens.retain(|e| d.div_exact(e).is_none());
            dens.push(d.clone());
        }
    }
    let scale = dens.iter().fold(MultiPoly::one(), |acc, d| acc.mul(d));
    if !c.certifies(&scale) {
        return Err(Error::UndecidedPivot {
            pivot: scale.to_string(),
        });
    }
    let f = RatFunc::from_poly(scale);
    m.scale(&f).try_map(|x| {
        x.as_poly()
            .ok_or_else(|| Error::NotSupported(format!("denominator left in {x}")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Fp, Rational};

    type Q = Rational;

    fn q(v: i64) -> Q {
        Q::from_int(v)
    }

    fn e(i: usize, j: usize) -> Mat3<Q> {
        Mat3::unit(i, j)
    }

    #[test]
    fn theta_maps() {
        let t12 = theta::<Q>(1, 2);
        assert_eq!(t12.image(&e(1, 1)), e(2, 2));
        let t23 = theta::<Q>(2, 3);
        assert_eq!(t23.image(&e(2, 2)), e(3, 3));
        assert!(t12.is_algebra_map());
    }

    #[test]
    fn conjugation_by_identity_is_identity() {
        let c = conjugation(&Mat3::<Q>::identity()).unwrap();
        assert_eq!(c.matrix9(), AlgebraMap::<Q>::identity().matrix9());
        assert!(matches!(conjugation(&e(1, 1)), Err(Error::SingularMatrix)));
    }

    #[test]
    fn phi_special_values() {
        let (o, z) = (q(1), q(0));
        let t23 = phi_map(&z, &z, &z, &o, &o, &z).unwrap();
        assert_eq!(t23.matrix9(), theta::<Q>(2, 3).matrix9());
        let id = phi_map(&z, &z, &o, &z, &z, &o).unwrap();
        assert_eq!(id.matrix9(), AlgebraMap::<Q>::identity().matrix9());
        let (b, g) = (q(3), q(-2));
        let phi = phi_map(&b, &g, &q(2), &q(1), &q(1), &q(1)).unwrap();
        assert_eq!(
            phi.image(&e(1, 1)),
            e(1, 1).add(&e(1, 2).scale(&b)).add(&e(1, 3).scale(&g))
        );
        assert!(matches!(
            phi_map(&z, &z, &o, &o, &o, &o),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn psi_special_values() {
        let (o, z) = (q(1), q(0));
        let id = psi_map(&o, &z, &z, &o, &z).unwrap();
        assert_eq!(id.matrix9(), AlgebraMap::<Q>::identity().matrix9());
        let a = q(5);
        let psi = psi_map(&a, &q(2), &q(3), &q(7), &q(-1)).unwrap();
        assert_eq!(psi.image(&e(1, 3)), e(1, 3).scale(&a));
    }

    #[test]
    fn transpose_is_antiautomorphism() {
        let t = transpose_map::<Q>();
        assert_eq!(t.image(&e(1, 2)), e(2, 1));
        assert_eq!(
            t.compose(&t).matrix9(),
            AlgebraMap::<Q>::identity().matrix9()
        );
        assert!(t.is_algebra_map());
        let mut as_auto = t.clone();
        as_auto.kind = MapKind::Automorphism;
        assert!(!as_auto.is_algebra_map());
    }

    #[test]
    fn non_multiplicative_map_rejected() {
        let mut images: Vec<Mat3<Q>> = (0..9).map(Mat3::basis).collect();
        images[0] = e(1, 2);
        let m = AlgebraMap::from_images(images, MapKind::Automorphism).unwrap();
        assert_eq!(m.check(), Err(MapFailure::Product(0, 0)));
    }

    #[test]
    fn finite_field_phi() {
        type F = Fp<5>;
        let v = |x: i64| F::new(x);
        let phi = phi_map(&v(1), &v(2), &v(3), &v(4), &v(0), &v(2)).unwrap();
        assert!(phi.is_algebra_map());
    }

    #[test]
    fn theta23_swaps_index_block() {
        let s: Subspace<Q> = Subspace::span(vec![e(2, 2), e(2, 3)], ConstraintSet::new()).unwrap();
        let img = theta::<Q>(2, 3).apply(&s).unwrap();
        let want = Subspace::span(vec![e(3, 3), e(3, 2)], ConstraintSet::new()).unwrap();
        assert_eq!(img, want);
    }
}
