//! Fraction-free (Bareiss) elimination with certified pivots, plus reduced
//! row echelon form and related solvers over fields.

use super::{ConstraintSet, Elim, Field};
use crate::error::{Error, Result};

/// Result of fraction-free elimination.
///
/// `rows[k]` is the k-th pivot row exactly as Bareiss elimination left it,
/// with its pivot in column `pivots[k]`. Keeping these rows lets further
/// vectors be reduced as if they had been appended to the original matrix.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    ncols: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Elim> Echelon<T> {
    /// Runs Bareiss elimination with full pivoting. Candidate pivots are
    /// tried cheapest first; a candidate is accepted only if it is certified
    /// nonzero under `c`.
    pub fn new(ncols: usize, input: &[Vec<T>], c: &ConstraintSet) -> Result<Self> {
        let mut a: Vec<Vec<T>> = input.to_vec();
        for row in &a {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch {
                    expected: ncols,
                    found: row.len(),
                });
            }
        }
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = T::one();
        let mut k = 0;
        while k < a.len() {
            let mut cands: Vec<(usize, usize, usize)> = Vec::new();
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, v) in row.iter().enumerate() {
                    if !v.is_zero() && !pivots.contains(&j) {
                        cands.push((v.pivot_cost(), i, j));
                    }
                }
            }
            if cands.is_empty() {
                break;
            }
            cands.sort();
            let chosen = cands
                .iter()
                .find(|&&(_, i, j)| a[i][j].certified_nonzero(c))
                .copied();
            let Some((_, pi, pj)) = chosen else {
                let (_, i, j) = cands[0];
                return Err(Error::UndecidedPivot {
                    pivot: format!("{:?}", a[i][j]),
                });
            };
            a.swap(k, pi);
            let (top, rest) = a.split_at_mut(k + 1);
            let prow = &top[k];
            let piv = prow[pj].clone();
            for row in rest.iter_mut() {
                let f = row[pj].clone();
                for j in 0..ncols {
                    if pivots.contains(&j) {
                        continue;
                    }
                    if j == pj {
                        row[j] = T::zero();
                        continue;
                    }
                    let v = piv.mul(&row[j]).sub(&f.mul(&prow[j]));
                    row[j] = if prev.is_one() {
                        v
                    } else {
                        v.exact_div(&prev).expect("Bareiss division is exact")
                    };
                }
            }
            pivots.push(pj);
            prev = piv;
            k += 1;
        }
        a.truncate(k);
        Ok(Echelon {
            ncols,
            rows: a,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    /// One certified-nonzero polynomial per pivot. Bareiss pivots are
    /// nested minors, so each is reported divided by its predecessor when
    /// that division is exact (the ordinary Gaussian pivot).
    pub fn certificates(&self) -> Vec<T> {
        let mut prev = T::one();
        let mut out = Vec::new();
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let piv = r[p].clone();
            out.push(piv.exact_div(&prev).unwrap_or_else(|| piv.clone()));
            prev = piv;
        }
        out
    }

    /// Continues the elimination on `v` as if it were an extra input row.
    /// The result vanishes exactly when `v` lies in the row space.
    pub fn residual(&self, v: &[T]) -> Vec<T> {
        let mut v = v.to_vec();
        let mut prev = T::one();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let piv = &row[p];
            let f = v[p].clone();
            for j in 0..self.ncols {
                let nv = piv.mul(&v[j]).sub(&f.mul(&row[j]));
                v[j] = if prev.is_one() {
                    nv
                } else {
                    nv.exact_div(&prev).expect("Bareiss division is exact")
                };
            }
            prev = piv.clone();
        }
        v
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.residual(v).iter().all(T::is_zero)
    }
}

/// Rank of `m` over the fraction field, valid for every specialization
/// satisfying `c`, together with the pivot certificates used.
pub fn ff_rank<T: Elim>(m: &[Vec<T>], c: &ConstraintSet) -> Result<(usize, Vec<T>)> {
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let e = Echelon::new(ncols, m, c)?;
    Ok((e.rank(), e.certificates()))
}

/// Reduced row echelon form over a field: pivots are the leftmost nonzero
/// columns, normalized to 1, and zero rows are dropped. This is a canonical
/// form of the row space.
pub fn rref<F: Field>(m: &[Vec<F>]) -> (Vec<Vec<F>>, Vec<usize>) {
    let mut a: Vec<Vec<F>> = m.to_vec();
    let ncols = a.first().map(Vec::len).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(pi) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, pi);
        let inv = a[r][col].inv().expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = v.mul(&inv);
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = x.sub(&f.mul(p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    rref(m).1.len()
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn nullspace<F: Field>(m: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|j| !pivots.contains(j)) {
        let mut x = vec![F::zero(); ncols];
        x[free] = F::one();
        for (row, &p) in r.iter().zip(&pivots) {
            x[p] = row[free].neg();
        }
        basis.push(x);
    }
    basis
}

/// One solution of `m·x = b`, if any.
pub fn solve<F: Field>(m: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let aug: Vec<Vec<F>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![F::zero(); ncols];
    for (row, &p) in r.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Inverse of a square matrix over a field.
pub fn inverse<F: Field>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let aug: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by fraction-free elimination (no certification needed).
pub fn determinant<T: Elim>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a = m.to_vec();
    let mut prev = T::one();
    let mut sign = false;
    for k in 0..n {
        let Some(pi) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return T::zero();
        };
        if pi != k {
            a.swap(k, pi);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return T::one();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, MultiPoly, Rational, Ring};
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    fn pm(rows: &[&[&str]]) -> Vec<Vec<MultiPoly>> {
        rows.iter()
            .map(|r| r.iter().map(|s| parse_poly(s).unwrap()).collect())
            .collect()
    }

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| Rational::from_int(v)).collect())
            .collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let m = pm(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]]);
        assert_eq!(ff_rank(&m, &ConstraintSet::new()).unwrap().0, 3);
    }

    #[test]
    fn diagonal_certified_by_constraint() {
        let m = pm(&[&["f", "0"], &["0", "f"]]);
        let c = ConstraintSet::with_nonzero([parse_poly("f").unwrap()]);
        let (r, certs) = ff_rank(&m, &c).unwrap();
        assert_eq!(r, 2);
        assert_eq!(certs, vec![parse_poly("f").unwrap(); 2]);
        assert!(matches!(
            ff_rank(&m, &ConstraintSet::new()),
            Err(Error::UndecidedPivot { .. })
        ));
    }

    #[test]
    fn residual_detects_membership() {
        let m = pm(&[&["x", "1", "0"], &["0", "y", "1"]]);
        let e = Echelon::new(3, &m, &ConstraintSet::new()).unwrap();
        let inside = pm(&[&["2*x", "2 + y", "1"]]).remove(0);
        let outside = pm(&[&["1", "0", "0"]]).remove(0);
        assert!(e.contains(&inside));
        assert!(!e.contains(&outside));
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(determinant(&m), Rational::from_int(18));
        let inv = inverse(&m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(Rational::zero(), |acc, k| acc.add(&m[i][k].mul(&inv[k][j])));
                assert_eq!(
                    s,
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                );
            }
        }
        let p = pm(&[&["a", "b"], &["c", "d"]]);
        assert_eq!(determinant(&p), parse_poly("a*d - b*c").unwrap());
    }

    #[test]
    fn nullspace_and_solve() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        let b = vec![Rational::from_int(1), Rational::from_int(2)];
        assert!(solve(&m, &b).is_some());
        let b = vec![Rational::from_int(1), Rational::from_int(3)];
        assert!(solve(&m, &b).is_none());
    }

    /// A parametric matrix with a rank drop along y = 0, and its rank under
    /// the constraint y != 0 checked against specializations.
    fn parametric() -> Vec<Vec<MultiPoly>> {
        pm(&[
            &["1", "x", "y", "0"],
            &["x", "x*x + y", "x*y", "y"],
            &["0", "y", "y*y", "y*x"],
        ])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]
        #[test]
        fn ff_rank_agrees_with_specializations(x in -10i64..=10, y in -10i64..=10) {
            prop_assume!(y != 0);
            let c = ConstraintSet::with_nonzero([parse_poly("y").unwrap()]);
            let m = parametric();
            let (r, _) = ff_rank(&m, &c).unwrap();
            let env: BTreeMap<String, Rational> =
                [("x".to_string(), Rational::from_int(x)), ("y".to_string(), Rational::from_int(y))].into();
            let spec: Vec<Vec<Rational>> = m.iter()
                .map(|row| row.iter().map(|p| p.eval(&env).unwrap()).collect())
                .collect();
            prop_assert_eq!(r, rank(&spec));
        }
    }
}
