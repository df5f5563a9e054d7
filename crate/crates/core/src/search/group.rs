//! Finite groups of automorphisms and antiautomorphisms over small fields,
//! and their action on complements through canonical cell vectors.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::automorphisms::{phi_map, AlgebraMap};
use crate::error::{Error, Result};
use crate::exact::{elim, Gf, Rational, Ring};
use crate::matrix::Mat3;

pub type V9<const Q: u32> = [Gf<Q>; 9];

pub fn to_v9<const Q: u32>(m: &Mat3<Gf<Q>>) -> V9<Q> {
    *m.coords()
}

pub fn from_v9<const Q: u32>(v: &V9<Q>) -> Mat3<Gf<Q>> {
    Mat3::from_coords(v.to_vec()).expect("nine coordinates")
}

/// A linear map of the matrix space; row `k` is the image of basis `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Map9<const Q: u32> {
    pub rows: [V9<Q>; 9],
    pub anti: bool,
}

impl<const Q: u32> Map9<Q> {
    pub fn identity() -> Self {
        let mut rows = [[Gf::zero(); 9]; 9];
        for (k, r) in rows.iter_mut().enumerate() {
            r[k] = Gf::one();
        }
        Map9 { rows, anti: false }
    }

    #[inline]
    pub fn apply(&self, x: &V9<Q>) -> V9<Q> {
        let mut out = [Gf::zero(); 9];
        for (c, row) in x.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.add(&c.mul(r));
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Map9<Q>) -> Map9<Q> {
        let mut rows = [[Gf::zero(); 9]; 9];
        for (r, f) in rows.iter_mut().zip(&first.rows) {
            *r = self.apply(f);
        }
        Map9 {
            rows,
            anti: self.anti != first.anti,
        }
    }

    pub fn from_algebra_map(m: &AlgebraMap<Gf<Q>>) -> Self {
        let mut rows = [[Gf::zero(); 9]; 9];
        for (r, src) in rows.iter_mut().zip(m.matrix9()) {
            r.copy_from_slice(src);
        }
        Map9 {
            rows,
            anti: m.kind == crate::automorphisms::MapKind::Antiautomorphism,
        }
    }

    /// `X ↦ T⁻¹XT`, or `X ↦ T⁻¹XᵀT` when `anti` is set.
    pub fn conjugation(t: &Mat3<Gf<Q>>, anti: bool) -> Option<Self> {
        let tinv = t.inverse()?;
        let mut rows = [[Gf::zero(); 9]; 9];
        for (k, r) in rows.iter_mut().enumerate() {
            let b = Mat3::<Gf<Q>>::basis(k);
            let b = if anti { b.transpose() } else { b };
            *r = to_v9(&tinv.mul(&b).mul(t));
        }
        Some(Map9 { rows, anti })
    }

    /// The same map over a field containing this one; codes of the prime
    /// subfield are shared.
    pub fn lift<const R: u32>(&self) -> Map9<R> {
        assert_eq!(
            Gf::<Q>::characteristic_prime(),
            Gf::<R>::characteristic_prime()
        );
        let mut rows = [[Gf::<R>::zero(); 9]; 9];
        for (r, s) in rows.iter_mut().zip(&self.rows) {
            for (x, y) in r.iter_mut().zip(s) {
                *x = Gf::new(y.code());
            }
        }
        Map9 {
            rows,
            anti: self.anti,
        }
    }
}

/// A fixed complement reduced into `F_Q`, with the coordinate split used to
/// describe every complementary subspace by a unique cell vector.
///
/// A subspace `S` complementary to `M` has a unique basis `s_k = e_{f_k} + m_k`
/// with `m_k ∈ M`, where the `f_k` are the non-pivot columns of the reduced
/// echelon form of `M`. Its cells are the `M`-coordinates of the `m_k`.
#[derive(Clone, Debug)]
pub struct ComplementFp<const Q: u32> {
    rows: Vec<V9<Q>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl<const Q: u32> ComplementFp<Q> {
    pub fn new(gens: &[Mat3<Rational>]) -> Result<Self> {
        let reduced: Vec<Vec<Gf<Q>>> = gens
            .iter()
            .map(|g| {
                g.coords()
                    .iter()
                    .map(|x| {
                        Gf::<Q>::from_rational(x).ok_or_else(|| {
                            Error::NotSupported(format!("{x} is not defined in F_{Q}"))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let (rows, pivots) = elim::rref(&reduced);
        let rows: Vec<V9<Q>> = rows
            .into_iter()
            .map(|r| r.try_into().expect("nine coordinates"))
            .collect();
        let free = (0..9).filter(|c| !pivots.contains(c)).collect();
        Ok(ComplementFp { rows, pivots, free })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.free.len()
    }

    pub fn cell_count(&self) -> usize {
        self.dim() * self.codim()
    }

    fn reduce(&self, x: &V9<Q>) -> V9<Q> {
        let mut out = *x;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = out[p];
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = o.sub(&c.mul(r));
            }
        }
        out
    }

    pub fn contains(&self, x: &V9<Q>) -> bool {
        self.reduce(x).iter().all(Ring::is_zero)
    }

    pub fn preserved_by(&self, g: &Map9<Q>) -> bool {
        self.rows.iter().all(|r| self.contains(&g.apply(r)))
    }

    /// Cell vector of `span(gens)`, or `None` when the span is not a
    /// complement.
    pub fn cells(&self, gens: &[V9<Q>]) -> Option<Vec<u8>> {
        let k = self.codim();
        if gens.len() != k {
            return None;
        }
        let q: Vec<Vec<Gf<Q>>> = gens
            .iter()
            .map(|g| {
                let r = self.reduce(g);
                self.free.iter().map(|&f| r[f]).collect()
            })
            .collect();
        let qinv = elim::inverse(&q)?;
        let mut cells = Vec::with_capacity(self.cell_count());
        for row in &qinv {
            let mut s = [Gf::<Q>::zero(); 9];
            for (c, g) in row.iter().zip(gens) {
                if c.is_zero() {
                    continue;
                }
                for (x, y) in s.iter_mut().zip(g) {
                    *x = x.add(&c.mul(y));
                }
            }
            cells.extend(self.pivots.iter().map(|&p| s[p].code()));
        }
        Some(cells)
    }

    /// The canonical basis described by a cell vector.
    pub fn canonical_basis(&self, cells: &[u8]) -> Vec<V9<Q>> {
        let d = self.dim();
        self.free
            .iter()
            .enumerate()
            .map(|(i, &f)| {
                let mut s = [Gf::<Q>::zero(); 9];
                s[f] = Gf::one();
                for (r, row) in self.rows.iter().enumerate() {
                    let c = Gf::<Q>::new(cells[i * d + r]);
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in s.iter_mut().zip(row) {
                        *x = x.add(&c.mul(y));
                    }
                }
                s
            })
            .collect()
    }

    /// Cells of the image of the complement described by `cells`.
    pub fn act(&self, g: &Map9<Q>, cells: &[u8]) -> Vec<u8> {
        let images: Vec<V9<Q>> = self
            .canonical_basis(cells)
            .iter()
            .map(|s| g.apply(s))
            .collect();
        self.cells(&images)
            .expect("an invertible map preserving M maps complements to complements")
    }

    /// Whether the complement described by `cells` is closed under products.
    pub fn is_subalgebra(&self, cells: &[u8]) -> bool {
        let basis: Vec<Mat3<Gf<Q>>> = self.canonical_basis(cells).iter().map(from_v9).collect();
        let rows: Vec<Vec<Gf<Q>>> = basis.iter().map(Mat3::to_vec).collect();
        let r = elim::rank(&rows);
        basis.iter().all(|a| {
            basis.iter().all(|b| {
                let mut with = rows.clone();
                with.push(a.mul(b).to_vec());
                elim::rank(&with) == r
            })
        })
    }
}

/// Every automorphism and antiautomorphism over `F_Q` preserving `m`,
/// found by running through all invertible 3×3 matrices up to scalars.
pub fn stabilizer<const Q: u32>(m: &ComplementFp<Q>) -> Vec<Map9<Q>> {
    let q = Q as u64;
    let total = q.pow(9);
    let mut out: Vec<Map9<Q>> = (0..total)
        .into_par_iter()
        .flat_map_iter(|code| {
            let mut c = code;
            let mut e = [Gf::<Q>::zero(); 9];
            for x in e.iter_mut() {
                *x = Gf::new((c % q) as u8);
                c /= q;
            }
            // one representative per scalar class
            let first = e.iter().find(|x| !x.is_zero()).copied();
            let mut found = Vec::new();
            if first.is_some_and(|f| f.is_one()) {
                let t = Mat3::from_coords(e.to_vec()).expect("nine coordinates");
                if !t.det().is_zero() {
                    for anti in [false, true] {
                        let g = Map9::conjugation(&t, anti).expect("invertible");
                        if m.preserved_by(&g) {
                            found.push(g);
                        }
                    }
                }
            }
            found.into_iter()
        })
        .collect();
    out.sort();
    out
}

/// All maps of the φ family over `F_Q` that preserve `m`.
pub fn phi_family<const Q: u32>(m: &ComplementFp<Q>) -> Vec<Map9<Q>> {
    let elems: Vec<Gf<Q>> = Gf::<Q>::elements().collect();
    let q = elems.len();
    let mut out: Vec<Map9<Q>> = (0..q * q)
        .into_par_iter()
        .flat_map_iter(|bg| {
            let beta = elems[bg / q];
            let gamma = elems[bg % q];
            let mut found = Vec::new();
            for &k in &elems {
                for &l in &elems {
                    for &u in &elems {
                        for &n in &elems {
                            if k.mul(&n).sub(&l.mul(&u)).is_zero() {
                                continue;
                            }
                            let map = phi_map(&beta, &gamma, &k, &l, &u, &n)
                                .expect("nonzero determinant");
                            let g = Map9::from_algebra_map(&map);
                            if m.preserved_by(&g) {
                                found.push(g);
                            }
                        }
                    }
                }
            }
            found.into_iter()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Representatives `h` with `stab = ⋃ family·h`.
pub fn coset_representatives<const Q: u32>(stab: &[Map9<Q>], family: &[Map9<Q>]) -> Vec<Map9<Q>> {
    let mut covered: HashSet<Map9<Q>> = HashSet::new();
    let mut reps = Vec::new();
    for g in stab {
        if covered.contains(g) {
            continue;
        }
        reps.push(g.clone());
        for f in family {
            covered.insert(f.compose(g));
        }
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::complement;

    fn cfp<const Q: u32>(id: &str) -> ComplementFp<Q> {
        ComplementFp::new(&complement(id).unwrap().generators).unwrap()
    }

    #[test]
    fn cells_round_trip() {
        let m = cfp::<3>("M7");
        assert_eq!(m.codim(), 2);
        let cells: Vec<u8> = (0..m.cell_count()).map(|i| (i % 3) as u8).collect();
        let basis = m.canonical_basis(&cells);
        assert_eq!(m.cells(&basis).unwrap(), cells);
        // any other basis of the same span gives the same cells
        let mixed = vec![
            {
                let mut v = basis[0];
                for (x, y) in v.iter_mut().zip(&basis[1]) {
                    *x = x.add(y);
                }
                v
            },
            basis[1],
        ];
        assert_eq!(m.cells(&mixed).unwrap(), cells);
    }

    #[test]
    fn stabilizer_of_m7_is_the_phi_family() {
        let m = cfp::<2>("M7");
        let stab = stabilizer(&m);
        let fam = phi_family(&m);
        // |F_2|^2 choices of (β, γ) times |GL_2(F_2)| = 6
        assert_eq!(fam.len(), 4 * 6);
        assert_eq!(stab, fam);
        assert!(stab.iter().all(|g| !g.anti));
    }

    #[test]
    fn upper_triangular_stabilizer_includes_antiautomorphisms() {
        let m = cfp::<3>("U6");
        let stab = stabilizer(&m);
        let fam = phi_family(&m);
        // ψ family: α, δ ∈ F_3^*, β, γ, ε ∈ F_3
        assert_eq!(fam.len(), 2 * 2 * 27);
        let reps = coset_representatives(&stab, &fam);
        assert_eq!(stab.len(), fam.len() * reps.len());
        assert_eq!(reps.len(), 2);
        assert!(reps.iter().any(|g| g.anti));
    }

    #[test]
    fn group_is_closed_under_composition() {
        let m = cfp::<2>("L5-3");
        let stab = stabilizer(&m);
        let set: HashSet<_> = stab.iter().cloned().collect();
        for a in &stab {
            for b in &stab {
                assert!(set.contains(&a.compose(b)));
            }
        }
    }
}
