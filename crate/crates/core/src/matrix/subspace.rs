use super::Mat3;
use crate::error::Result;
use crate::exact::{elim, ConstraintSet, Echelon, Elim, Field};

/// A linear subspace of the 9-dimensional matrix space, kept together with
/// its generators and the constraints under which its rank was certified.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    generators: Vec<Mat3<T>>,
    echelon: Echelon<T>,
    constraints: ConstraintSet,
}

/// Outcome of a closure test; `witness` is the first generator pair whose
/// product leaves the span.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Closure {
    pub closed: bool,
    pub witness: Option<(usize, usize)>,
}

impl<T: Elim> Subspace<T> {
    pub fn span(generators: Vec<Mat3<T>>, constraints: ConstraintSet) -> Result<Self> {
        let rows: Vec<Vec<T>> = generators.iter().map(Mat3::to_vec).collect();
        let echelon = Echelon::new(9, &rows, &constraints)?;
        Ok(Subspace {
            generators,
            echelon,
            constraints,
        })
    }

    pub fn zero() -> Self {
        Self::span(Vec::new(), ConstraintSet::new()).expect("empty span")
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn generators(&self) -> &[Mat3<T>] {
        &self.generators
    }

    pub fn constraints(&self) -> &ConstraintSet {
        &self.constraints
    }

    pub fn echelon(&self) -> &Echelon<T> {
        &self.echelon
    }

    pub fn contains(&self, m: &Mat3<T>) -> bool {
        self.echelon.contains(m.coords())
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Mat3::identity())
    }

    pub fn is_subalgebra(&self) -> Closure {
        for (i, a) in self.generators.iter().enumerate() {
            for (j, b) in self.generators.iter().enumerate() {
                if !self.contains(&a.mul(b)) {
                    return Closure {
                        closed: false,
                        witness: Some((i, j)),
                    };
                }
            }
        }
        Closure {
            closed: true,
            witness: None,
        }
    }

    /// Whether the two subspaces are complementary: dimensions add up to 9
    /// and the stacked generators have full rank under the merged
    /// constraints.
    pub fn is_direct_sum(&self, other: &Subspace<T>) -> Result<bool> {
        if self.dim() + other.dim() != 9 {
            return Ok(false);
        }
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        let merged = self.constraints.merge(&other.constraints);
        Ok(Subspace::span(gens, merged)?.dim() == 9)
    }

    /// The subspace spanned by `self ∪ other`.
    pub fn sum(&self, other: &Subspace<T>) -> Result<Subspace<T>> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Subspace::span(gens, self.constraints.merge(&other.constraints))
    }

    pub fn same_space(&self, other: &Subspace<T>) -> bool {
        self.dim() == other.dim() && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn transpose(&self) -> Result<Self> {
        Self::span(
            self.generators.iter().map(Mat3::transpose).collect(),
            self.constraints.clone(),
        )
    }

    pub fn with_constraints(&self, extra: &ConstraintSet) -> Result<Self> {
        Self::span(self.generators.clone(), self.constraints.merge(extra))
    }
}

impl<F: Field + Elim> Subspace<F> {
    /// Canonical reduced row echelon form of the coordinate matrix, so two
    /// subspaces are equal exactly when these agree.
    pub fn canonical(&self) -> Vec<Vec<F>> {
        let rows: Vec<Vec<F>> = self.generators.iter().map(Mat3::to_vec).collect();
        elim::rref(&rows).0
    }

    /// Basis given by the canonical rows.
    pub fn basis(&self) -> Vec<Mat3<F>> {
        self.canonical()
            .into_iter()
            .map(|r| Mat3::from_coords(r).expect("nine coordinates"))
            .collect()
    }

    /// Coordinates of `m` with respect to [`Self::basis`], if `m` lies in
    /// the subspace.
    pub fn coordinates(&self, m: &Mat3<F>) -> Option<Vec<F>> {
        let basis = self.basis();
        let cols: Vec<Vec<F>> = (0..9)
            .map(|k| basis.iter().map(|b| b.coords()[k].clone()).collect())
            .collect();
        elim::solve(&cols, m.coords())
    }
}

impl<F: Field + Elim> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, MultiPoly, Rational, Ring};

    type Q = Mat3<Rational>;

    fn e(i: usize, j: usize) -> Q {
        Q::unit(i, j)
    }

    fn qspan(g: Vec<Q>) -> Subspace<Rational> {
        Subspace::span(g, ConstraintSet::new()).unwrap()
    }

    fn m7() -> Subspace<Rational> {
        qspan(vec![
            e(1, 1),
            e(1, 2),
            e(1, 3),
            e(2, 2),
            e(2, 3),
            e(3, 2),
            e(3, 3),
        ])
    }

    #[test]
    fn spans_and_dimensions() {
        assert_eq!(qspan(vec![e(2, 1), e(3, 1)]).dim(), 2);
        assert_eq!(qspan(vec![Q::identity()]).dim(), 1);
        assert_eq!(qspan(vec![Q::zero()]).dim(), 0);
    }

    #[test]
    fn membership() {
        let s = qspan(vec![e(2, 1), e(3, 1)]);
        assert!(s.contains(&e(2, 1).add(&e(3, 1).scale(&Rational::from_int(2)))));
        assert!(!s.contains(&e(1, 1)));
    }

    #[test]
    fn closure_with_witness() {
        assert!(qspan(vec![e(2, 1), e(3, 1)]).is_subalgebra().closed);
        let c = qspan(vec![e(1, 2), e(2, 1)]).is_subalgebra();
        assert!(!c.closed);
        assert_eq!(c.witness, Some((0, 1)));
    }

    #[test]
    fn direct_sums() {
        let s = qspan(vec![e(2, 1), e(3, 1)]);
        assert!(s.is_direct_sum(&m7()).unwrap());
        assert!(m7().is_direct_sum(&s).unwrap());
        let bad = qspan(vec![e(1, 1), e(2, 1)]);
        assert!(!bad.is_direct_sum(&m7()).unwrap());
    }

    #[test]
    fn identity_membership() {
        assert!(m7().contains_identity());
        assert!(!qspan(vec![e(2, 1), e(3, 1)]).contains_identity());
        let t5 = qspan(vec![
            e(2, 1).add(&e(2, 2)),
            e(1, 1).add(&e(2, 2)).add(&e(3, 1)),
            e(1, 2).add(&e(2, 1)).add(&e(3, 2)),
        ]);
        assert!(!t5.contains_identity());
    }

    #[test]
    fn transpose_of_m7_differs() {
        let t = m7().transpose().unwrap();
        assert_eq!(t.dim(), 7);
        assert!(t != m7());
        assert!(t.is_subalgebra().closed);
    }

    #[test]
    fn span_is_idempotent() {
        let s = qspan(vec![e(2, 1).add(&e(2, 2)), e(3, 1).add(&e(3, 2)), e(2, 1)]);
        let again = qspan(s.basis());
        assert_eq!(s, again);
    }

    fn pm(rows: [[&str; 3]; 3]) -> Mat3<MultiPoly> {
        Mat3::parse(&rows).unwrap()
    }

    #[test]
    fn symbolic_r8_closure() {
        // (R8): e21 + (1-y) e22 + e23, e31 + e22 + e23 + y e33 with y != 0
        let v1 = pm([["0", "0", "0"], ["1", "1 - y", "1"], ["0", "0", "0"]]);
        let v2 = pm([["0", "0", "0"], ["0", "1", "1"], ["1", "0", "y"]]);
        let c = ConstraintSet::with_nonzero([parse_poly("y").unwrap()]);
        let s = Subspace::span(vec![v1.clone(), v2], c).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v1.mul(&v1)));
        assert!(s.is_subalgebra().closed);
    }

    #[test]
    fn rescaled_generator_gives_equal_span() {
        let f = parse_poly("f").unwrap();
        let c = ConstraintSet::with_nonzero([f.clone()]);
        let v = pm([["0", "0", "0"], ["1", "d", "1"], ["0", "1", "f"]]);
        let w = pm([["0", "0", "0"], ["0", "1", "f"], ["1", "1", "1"]]);
        let a = Subspace::span(vec![v.clone(), w.clone()], c.clone()).unwrap();
        let b = Subspace::span(vec![v.scale(&f), w], c).unwrap();
        assert!(a.same_space(&b) && b.same_space(&a));
        assert!(!a.contains(&Mat3::<MultiPoly>::unit(1, 1)));
        assert!(a.contains(&v.scale(&MultiPoly::from_i64(3))));
    }
}
