use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{elim, MultiPoly, Rational, Ring};
use crate::matrix::{Mat3, Subspace};

/// A product `v_i v_j` together with the coefficients the pattern author
/// expects in front of each generator.
#[derive(Clone, Debug)]
pub struct DeclaredProduct {
    pub i: usize,
    pub j: usize,
    pub coefficients: Vec<MultiPoly>,
}

impl DeclaredProduct {
    /// Parses coefficient strings, e.g. `(0, 0, ["d", "f"])` for
    /// `v1² = d v1 + f v2`.
    pub fn parse(i: usize, j: usize, coefficients: &[&str]) -> Result<Self> {
        Ok(DeclaredProduct {
            i,
            j,
            coefficients: coefficients
                .iter()
                .map(|s| crate::exact::parse_poly(s))
                .collect::<Result<_>>()?,
        })
    }
}

/// The polynomial conditions for the span of a pattern to be closed.
#[derive(Clone, Debug, Serialize)]
pub struct ClosureSystem {
    /// Distinct nonzero equations, up to sign.
    #[serde(serialize_with = "as_strings")]
    pub equations: Vec<MultiPoly>,
    /// Number of coordinate equations before dropping zeros and repeats:
    /// one per product and complement coordinate.
    pub raw_count: usize,
    /// For every ordered product `(i, j)`, its coefficients on the pattern
    /// generators.
    #[serde(serialize_with = "coefficient_strings")]
    pub coefficients: Vec<((usize, usize), Vec<MultiPoly>)>,
}

fn as_strings<S: serde::Serializer>(v: &[MultiPoly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

fn coefficient_strings<S: serde::Serializer>(
    v: &[((usize, usize), Vec<MultiPoly>)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(
        v.iter()
            .map(|((i, j), c)| (i, j, c.iter().map(|p| p.to_string()).collect::<Vec<_>>())),
    )
}

/// Splits a matrix into coordinates along a complement `M` and along the
/// chosen quotient columns.
struct Splitter {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Splitter {
    fn new(m: &Subspace<Rational>) -> Self {
        let (rows, pivots) = elim::rref(&m.canonical());
        let free = (0..9).filter(|c| !pivots.contains(c)).collect();
        Splitter { rows, pivots, free }
    }

    /// `(quotient coordinates, M coordinates)` of `x`.
    fn split(&self, x: &Mat3<MultiPoly>) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
        let mcoords: Vec<MultiPoly> = self.pivots.iter().map(|&p| x.coords()[p].clone()).collect();
        let mut rest: Vec<MultiPoly> = x.coords().to_vec();
        for (row, c) in self.rows.iter().zip(&mcoords) {
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    rest[k] = rest[k].sub(&c.mul(&MultiPoly::constant(r.clone())));
                }
            }
        }
        (
            self.free.iter().map(|&k| rest[k].clone()).collect(),
            mcoords,
        )
    }
}

/// Derives the closure system of `span(pattern)` relative to the
/// complement `m`.
///
/// Each product `v_i v_j` is written as `Σ c_k v_k + r` with `r ∈ M`, where
/// the `c_k` are read off the quotient by `M`. Because the pattern spans a
/// complement of `M`, the span is closed exactly when every `r` vanishes, so
/// the system consists of the `M`-coordinates of all the `r`.
pub fn derive_closure_system(
    pattern: &[Mat3<MultiPoly>],
    m: &Subspace<Rational>,
    declared: &[DeclaredProduct],
) -> Result<ClosureSystem> {
    let sp = Splitter::new(m);
    let k = pattern.len();
    if sp.free.len() != k {
        return Err(Error::PatternMismatch(format!(
            "{k} generators cannot complete a complement of dimension {}",
            sp.pivots.len()
        )));
    }
    // quotient coordinates of the generators must be constant and invertible
    let mut q: Vec<Vec<Rational>> = Vec::with_capacity(k);
    for (i, g) in pattern.iter().enumerate() {
        let (quot, _) = sp.split(g);
        let row = quot
            .iter()
            .map(|p| p.constant_value())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| {
                Error::PatternMismatch(format!(
                    "generator {i} has non-constant coordinates modulo the complement"
                ))
            })?;
        q.push(row);
    }
    let qinv = elim::inverse(&q).ok_or_else(|| {
        Error::PatternMismatch("generators are dependent modulo the complement".to_string())
    })?;
    let qinv: Vec<Vec<MultiPoly>> = qinv
        .into_iter()
        .map(|r| r.into_iter().map(MultiPoly::constant).collect())
        .collect();

    let mut equations: Vec<MultiPoly> = Vec::new();
    let mut coefficients = Vec::new();
    let mut raw_count = 0;
    for i in 0..k {
        for j in 0..k {
            let x = pattern[i].mul(&pattern[j]);
            let (quot, _) = sp.split(&x);
            // c = quot · Q⁻¹
            let c: Vec<MultiPoly> = (0..k)
                .map(|l| {
                    (0..k).fold(MultiPoly::zero(), |acc, t| {
                        acc.add(&quot[t].mul(&qinv[t][l]))
                    })
                })
                .collect();
            let combo = Mat3::combination(&c, pattern);
            let residual = x.sub(&combo);
            let (_, mcoords) = sp.split(&residual);
            raw_count += mcoords.len();
            for p in mcoords {
                if p.is_zero() || equations.contains(&p) || equations.contains(&p.neg()) {
                    continue;
                }
                equations.push(p);
            }
            coefficients.push(((i, j), c));
        }
    }

    for d in declared {
        let Some((_, c)) = coefficients
            .iter()
            .find(|((i, j), _)| *i == d.i && *j == d.j)
        else {
            return Err(Error::PatternMismatch(format!(
                "declared product ({}, {}) is out of range",
                d.i, d.j
            )));
        };
        if *c != d.coefficients {
            let show = |v: &[MultiPoly]| {
                v.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::PatternMismatch(format!(
                "product ({}, {}) has coefficients [{}] but [{}] were declared",
                d.i,
                d.j,
                show(c),
                show(&d.coefficients)
            )));
        }
    }

    Ok(ClosureSystem {
        equations,
        raw_count,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::complement;
    use crate::exact::{parse_poly, ConstraintSet};

    fn pm(rows: [[&str; 3]; 3]) -> Mat3<MultiPoly> {
        Mat3::parse(&rows).unwrap()
    }

    fn m7() -> Subspace<Rational> {
        complement("M7").unwrap().subspace()
    }

    fn theorem1_pattern() -> Vec<Mat3<MultiPoly>> {
        vec![
            pm([["0", "b", "c"], ["1", "d", "e"], ["0", "f", "g"]]),
            pm([["0", "q", "r"], ["0", "s", "t"], ["1", "x", "y"]]),
        ]
    }

    #[test]
    fn nilpotent_plane_has_empty_system() {
        let pat = vec![
            pm([["0", "0", "0"], ["1", "0", "0"], ["0", "0", "0"]]),
            pm([["0", "0", "0"], ["0", "0", "0"], ["1", "0", "0"]]),
        ];
        let sys = derive_closure_system(&pat, &m7(), &[]).unwrap();
        assert!(sys.equations.is_empty());
        assert_eq!(sys.raw_count, 4 * 7);
    }

    #[test]
    fn theorem1_system_contains_ft_minus_eg() {
        let declared = [
            DeclaredProduct::parse(0, 0, &["d", "f"]).unwrap(),
            DeclaredProduct::parse(1, 1, &["t", "y"]).unwrap(),
            DeclaredProduct::parse(0, 1, &["e", "g"]).unwrap(),
            DeclaredProduct::parse(1, 0, &["s", "x"]).unwrap(),
        ];
        let sys = derive_closure_system(&theorem1_pattern(), &m7(), &declared).unwrap();
        let target = parse_poly("f*t - e*g").unwrap();
        assert!(sys
            .equations
            .iter()
            .any(|p| *p == target || *p == target.neg()));
    }

    #[test]
    fn wrong_declaration_is_rejected() {
        let declared = [DeclaredProduct::parse(0, 0, &["f", "d"]).unwrap()];
        let err = derive_closure_system(&theorem1_pattern(), &m7(), &declared).unwrap_err();
        assert!(matches!(err, Error::PatternMismatch(_)));
    }

    #[test]
    fn pattern_inside_complement_is_rejected() {
        let pat = vec![
            pm([["1", "0", "0"], ["0", "0", "0"], ["0", "0", "0"]]),
            pm([["0", "0", "0"], ["0", "0", "0"], ["1", "0", "0"]]),
        ];
        assert!(matches!(
            derive_closure_system(&pat, &m7(), &[]),
            Err(Error::PatternMismatch(_))
        ));
    }

    #[test]
    fn system_vanishing_matches_closure_at_points() {
        use rand::{Rng, SeedableRng};
        let pat = theorem1_pattern();
        let sys = derive_closure_system(&pat, &m7(), &[]).unwrap();
        let vars: Vec<String> = ["b", "c", "d", "e", "f", "g", "q", "r", "s", "t", "x", "y"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut closed_seen = 0;
        for trial in 0..400 {
            // mostly sparse points so that closed spans actually occur
            let vals: std::collections::BTreeMap<String, Rational> = vars
                .iter()
                .map(|v| {
                    let x = if rng.gen_bool(0.7) {
                        0
                    } else {
                        rng.gen_range(-2..=2)
                    };
                    (v.clone(), Rational::from_int(x))
                })
                .collect();
            let gens: Vec<Mat3<Rational>> = pat.iter().map(|g| g.eval(&vals).unwrap()).collect();
            let s = Subspace::span(gens, ConstraintSet::new()).unwrap();
            let closed = s.is_subalgebra().closed;
            let vanishes = sys
                .equations
                .iter()
                .all(|p| p.eval(&vals).unwrap().is_zero());
            assert_eq!(closed, vanishes, "trial {trial}");
            closed_seen += closed as usize;
        }
        assert!(closed_seen > 0);
    }
}
