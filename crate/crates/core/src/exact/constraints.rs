use std::collections::BTreeMap;

use super::{MultiPoly, Ring};
use crate::error::{Error, Result};

/// Side conditions on parameters: polynomials that must not vanish, and
/// pairs that must not vanish simultaneously.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSet {
    pub nonzero: Vec<MultiPoly>,
    pub not_both_zero: Vec<(MultiPoly, MultiPoly)>,
}

impl ConstraintSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_nonzero(polys: impl IntoIterator<Item = MultiPoly>) -> Self {
        ConstraintSet {
            nonzero: polys.into_iter().collect(),
            not_both_zero: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.nonzero.is_empty() && self.not_both_zero.is_empty()
    }

    /// Union of two constraint sets, dropping exact duplicates.
    pub fn merge(&self, other: &ConstraintSet) -> ConstraintSet {
        let mut out = self.clone();
        for p in &other.nonzero {
            if !out.nonzero.contains(p) {
                out.nonzero.push(p.clone());
            }
        }
        for pair in &other.not_both_zero {
            if !out.not_both_zero.contains(pair) {
                out.not_both_zero.push(pair.clone());
            }
        }
        out
    }

    /// Every parameter name mentioned by a constraint, sorted.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .nonzero
            .iter()
            .chain(self.not_both_zero.iter().flat_map(|(a, b)| [a, b]))
            .flat_map(|p| p.vars().iter().cloned())
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Syntactic certificate that `p` is nonzero wherever the constraints
    /// hold: after dividing out constraint polynomials as often as possible,
    /// a nonzero constant must remain.
    pub fn certifies(&self, p: &MultiPoly) -> bool {
        if p.is_zero() {
            return false;
        }
        let mut q = p.clone();
        'outer: loop {
            if q.is_constant() {
                return true;
            }
            for c in &self.nonzero {
                if c.is_constant() {
                    continue;
                }
                if let Some(r) = q.div_exact(c) {
                    q = r;
                    continue 'outer;
                }
            }
            return false;
        }
    }

    /// First violated constraint under a concrete assignment, rendered in
    /// the polynomial grammar (pairs as `(a, b)`).
    pub fn first_violation<R: Ring>(
        &self,
        assignment: &BTreeMap<String, R>,
    ) -> Result<Option<String>> {
        for p in &self.nonzero {
            if p.eval(assignment)?.is_zero() {
                return Ok(Some(p.to_string()));
            }
        }
        for (a, b) in &self.not_both_zero {
            if a.eval(assignment)?.is_zero() && b.eval(assignment)?.is_zero() {
                return Ok(Some(format!("({a}, {b})")));
            }
        }
        Ok(None)
    }

    pub fn satisfied<R: Ring>(&self, assignment: &BTreeMap<String, R>) -> Result<bool> {
        Ok(self.first_violation(assignment)?.is_none())
    }

    pub fn check<R: Ring>(&self, assignment: &BTreeMap<String, R>) -> Result<()> {
        match self.first_violation(assignment)? {
            Some(p) => Err(Error::ConstraintViolated(p)),
            None => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, Rational};

    fn env(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
            .collect()
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn nonzero_constraints() {
        let c = ConstraintSet::with_nonzero([p("f")]);
        assert!(c.satisfied(&env(&[("f", 1)])).unwrap());
        let c = ConstraintSet::with_nonzero([p("y")]);
        assert!(!c.satisfied(&env(&[("y", 0)])).unwrap());
    }

    #[test]
    fn not_both_zero_pairs() {
        let c = ConstraintSet {
            nonzero: vec![],
            not_both_zero: vec![(p("e"), p("u"))],
        };
        assert!(!c.satisfied(&env(&[("e", 0), ("u", 0)])).unwrap());
        assert!(c.satisfied(&env(&[("e", 0), ("u", 2)])).unwrap());
    }

    #[test]
    fn missing_variable_is_an_error() {
        let c = ConstraintSet::with_nonzero([p("e*u - 1")]);
        assert!(matches!(
            c.satisfied(&env(&[("e", 1)])),
            Err(Error::MissingVariable(_))
        ));
    }

    #[test]
    fn certification_uses_products_of_constraints() {
        let c = ConstraintSet::with_nonzero([p("e"), p("e*u - 1")]);
        assert!(c.certifies(&p("-3*e*e*(e*u - 1)")));
        assert!(c.certifies(&p("7")));
        assert!(!c.certifies(&p("u")));
        assert!(!c.certifies(&p("e + 1")));
    }
}
