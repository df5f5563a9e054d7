use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{elim, parse_poly, Field, MultiPoly, Rational, Ring};

/// Names of the coordinates, in the fixed flattening order.
pub const COORD_NAMES: [&str; 9] = [
    "e11", "e12", "e13", "e21", "e22", "e23", "e31", "e32", "e33",
];

/// A 3×3 matrix stored row-major, which is also the coordinate order
/// e11, e12, e13, e21, e22, e23, e31, e32, e33.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3<T> {
    e: [T; 9],
}

impl<T: Ring> Mat3<T> {
    pub fn zero() -> Self {
        Mat3 {
            e: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn identity() -> Self {
        Mat3 {
            e: std::array::from_fn(|k| if k % 4 == 0 { T::one() } else { T::zero() }),
        }
    }

    /// The matrix unit e_ij with 1-based indices, as in the notation e_12.
    pub fn unit(i: usize, j: usize) -> Self {
        assert!((1..=3).contains(&i) && (1..=3).contains(&j));
        let mut m = Self::zero();
        m.e[3 * (i - 1) + (j - 1)] = T::one();
        m
    }

    /// The k-th basis matrix in coordinate order (0-based).
    pub fn basis(k: usize) -> Self {
        Self::unit(k / 3 + 1, k % 3 + 1)
    }

    pub fn from_coords(c: Vec<T>) -> Result<Self> {
        let n = c.len();
        let e: [T; 9] = c.try_into().map_err(|_| Error::DimensionMismatch {
            expected: 9,
            found: n,
        })?;
        Ok(Mat3 { e })
    }

    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        let [r0, r1, r2] = rows;
        let mut it = r0.into_iter().chain(r1).chain(r2);
        Mat3 {
            e: std::array::from_fn(|_| it.next().expect("nine entries")),
        }
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Self::from_rows(rows.map(|r| r.map(T::from_i64)))
    }

    pub fn coords(&self) -> &[T; 9] {
        &self.e
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.e.to_vec()
    }

    /// Entry at 0-based row `i`, column `j`.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[3 * i + j]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(T::is_zero)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| {
                let (i, j) = (k / 3, k % 3);
                let mut acc = self.e[3 * i].mul(&rhs.e[j]);
                for l in 1..3 {
                    acc = acc.add(&self.e[3 * i + l].mul(&rhs.e[3 * l + j]));
                }
                acc
            }),
        }
    }

    /// Product with a domain check (e.g. differing prime moduli).
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let ok = self.e.iter().zip(&rhs.e).all(|(a, b)| a.compatible(b));
        if !ok {
            return Err(Error::DomainMismatch("incompatible matrix entries".into()));
        }
        Ok(self.mul(rhs))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| self.e[k].add(&rhs.e[k])),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| self.e[k].sub(&rhs.e[k])),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| self.e[k].mul(c)),
        }
    }

    pub fn neg(&self) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| self.e[k].neg()),
        }
    }

    pub fn transpose(&self) -> Self {
        Mat3 {
            e: std::array::from_fn(|k| self.e[3 * (k % 3) + k / 3].clone()),
        }
    }

    pub fn trace(&self) -> T {
        self.e[0].add(&self.e[4]).add(&self.e[8])
    }

    pub fn det(&self) -> T {
        let m = &self.e;
        let t1 = m[0].mul(&m[4].mul(&m[8]).sub(&m[5].mul(&m[7])));
        let t2 = m[1].mul(&m[3].mul(&m[8]).sub(&m[5].mul(&m[6])));
        let t3 = m[2].mul(&m[3].mul(&m[7]).sub(&m[4].mul(&m[6])));
        t1.sub(&t2).add(&t3)
    }

    /// Classical adjugate, so that `m · adj(m) = det(m) · E`.
    pub fn adjugate(&self) -> Self {
        let m = |i: usize, j: usize| &self.e[3 * i + j];
        Mat3 {
            e: std::array::from_fn(|k| {
                let (i, j) = (k / 3, k % 3);
                // cofactor of (j, i)
                let r: Vec<usize> = (0..3).filter(|&x| x != j).collect();
                let c: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                let minor = m(r[0], c[0])
                    .mul(m(r[1], c[1]))
                    .sub(&m(r[0], c[1]).mul(m(r[1], c[0])));
                if (i + j) % 2 == 0 {
                    minor
                } else {
                    minor.neg()
                }
            }),
        }
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3 {
            e: std::array::from_fn(|k| f(&self.e[k])),
        }
    }

    pub fn try_map<U: Ring>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mat3<U>> {
        Mat3::from_coords(self.e.iter().map(f).collect::<Result<Vec<U>>>()?)
    }

    /// Sum of `coeffs[k] * mats[k]`.
    pub fn combination(coeffs: &[T], mats: &[Mat3<T>]) -> Self {
        coeffs
            .iter()
            .zip(mats)
            .fold(Self::zero(), |acc, (c, m)| acc.add(&m.scale(c)))
    }
}

impl<F: Field> Mat3<F> {
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det().inv()?;
        Some(self.adjugate().scale(&d))
    }

    /// Matrix rank of the 3×3 matrix itself.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<F>> = (0..3).map(|i| self.e[3 * i..3 * i + 3].to_vec()).collect();
        elim::rank(&rows)
    }
}

impl Mat3<MultiPoly> {
    /// Parses nine grammar strings given row by row.
    pub fn parse<S: AsRef<str>>(rows: &[[S; 3]; 3]) -> Result<Self> {
        let mut v = Vec::with_capacity(9);
        for row in rows {
            for s in row {
                v.push(parse_poly(s.as_ref())?);
            }
        }
        Self::from_coords(v)
    }

    /// Parses a linear combination of matrix units such as
    /// `e21 + (1 - y)*e22 + e23`; `E` stands for the identity matrix.
    pub fn from_combination(src: &str) -> Result<Self> {
        let chars: Vec<char> = src.chars().collect();
        let mut expanded = String::new();
        for (k, &c) in chars.iter().enumerate() {
            let alnum = |i: Option<&char>| i.is_some_and(|c| c.is_ascii_alphanumeric());
            if c == 'E'
                && !alnum(k.checked_sub(1).and_then(|i| chars.get(i)))
                && !alnum(chars.get(k + 1))
            {
                expanded.push_str("(e11 + e22 + e33)");
            } else {
                expanded.push(c);
            }
        }
        let poly = parse_poly(&expanded)?;
        let slot = |name: &str| COORD_NAMES.iter().position(|n| *n == name);
        let unit_idx: Vec<Option<usize>> = poly.vars().iter().map(|v| slot(v)).collect();
        let mut coeffs: Vec<MultiPoly> = vec![MultiPoly::zero(); 9];
        for (exps, c) in poly.terms() {
            let mut which = None;
            let mut rest = MultiPoly::constant(c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match unit_idx[i] {
                    Some(k) if e == 1 && which.is_none() => which = Some(k),
                    Some(_) => {
                        return Err(Error::Parse {
                            line: 1,
                            column: 1,
                            message: format!("`{src}` is not linear in the matrix units"),
                        })
                    }
                    None => rest = rest.mul(&MultiPoly::var(&poly.vars()[i]).pow(e as u32)),
                }
            }
            let Some(k) = which else {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("`{src}` has a term without a matrix unit"),
                });
            };
            coeffs[k] = coeffs[k].add(&rest);
        }
        Self::from_coords(coeffs)
    }

    pub fn eval<R: Ring>(&self, assignment: &BTreeMap<String, R>) -> Result<Mat3<R>> {
        self.try_map(|p| p.eval(assignment))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .e
            .iter()
            .flat_map(|p| p.vars().iter().cloned())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

impl Mat3<Rational> {
    pub fn to_poly(&self) -> Mat3<MultiPoly> {
        self.map(|r| MultiPoly::constant(r.clone()))
    }
}

impl<T: fmt::Display> Mat3<T> {
    pub fn to_strings(&self) -> [[String; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.e[3 * i + j].to_string()))
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    /// Compact linear-combination form, e.g. `e21 + e22 - 2*e33`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.e.iter().enumerate() {
            let s = c.to_string();
            if s == "0" {
                continue;
            }
            let term = if s == "1" {
                COORD_NAMES[k].to_string()
            } else if s == "-1" {
                format!("-{}", COORD_NAMES[k])
            } else if s.contains(' ') {
                format!("({s})*{}", COORD_NAMES[k])
            } else {
                format!("{s}*{}", COORD_NAMES[k])
            };
            if first {
                write!(f, "{term}")?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[T]> = self.e.chunks(3).collect();
        write!(f, "{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use proptest::prelude::*;

    type Q = Mat3<Rational>;

    #[test]
    fn structure_constants() {
        assert_eq!(Q::unit(1, 2).mul(&Q::unit(2, 1)), Q::unit(1, 1));
        assert!(Q::unit(2, 1).mul(&Q::unit(2, 3)).is_zero());
        let x = Q::unit(2, 1).add(&Q::unit(2, 2)).add(&Q::unit(3, 3));
        assert_eq!(x.mul(&x), x);
    }

    #[test]
    fn adjugate_and_inverse() {
        let t = Q::from_ints([[1, 2, 0], [0, 1, 3], [4, 0, 1]]);
        let inv = t.inverse().unwrap();
        assert_eq!(t.mul(&inv), Q::identity());
        assert_eq!(t.adjugate().mul(&t), Q::identity().scale(&t.det()));
        assert!(Q::unit(1, 1).inverse().is_none());
    }

    #[test]
    fn display_and_parse() {
        let m = Mat3::parse(&[["0", "0", "0"], ["f", "f*d", "f"], ["0", "1", "f"]]).unwrap();
        assert_eq!(m.to_string(), "f*e21 + d*f*e22 + f*e23 + e32 + f*e33");
        assert_eq!(m.variables(), vec!["d".to_string(), "f".to_string()]);
    }

    #[test]
    fn combinations() {
        let m = Mat3::from_combination("e21 + (1 - y)*e22 + e23").unwrap();
        let want = Mat3::parse(&[["0", "0", "0"], ["1", "1 - y", "1"], ["0", "0", "0"]]).unwrap();
        assert_eq!(m, want);
        let e = Mat3::from_combination("E - e11").unwrap();
        assert_eq!(e, Mat3::from_ints([[0, 0, 0], [0, 1, 0], [0, 0, 1]]));
        assert!(Mat3::from_combination("e11*e22").is_err());
        assert!(Mat3::from_combination("e11 + 1").is_err());
    }

    #[test]
    fn same_domain_product_is_accepted() {
        let a = Mat3::<Fp<3>>::identity();
        assert!(a.try_mul(&a).is_ok());
    }

    fn mat() -> impl Strategy<Value = Q> {
        prop::array::uniform9(-5i64..6).prop_map(|a| {
            Q::from_coords(a.iter().map(|&v| Rational::from_int(v)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn associativity_and_unit(a in mat(), b in mat(), c in mat()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&Q::identity()), a.clone());
            prop_assert_eq!(Q::identity().mul(&a), a.clone());
            prop_assert_eq!(a.mul(&b).transpose(), b.transpose().mul(&a.transpose()));
        }
    }
}
