//! Every classified decomposition, with its parameters, side conditions and
//! fixed complement.

mod builtin;
pub mod io;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use builtin::{builtin_catalog, complements, templates, FIVE_DIM_IDS};

use crate::error::{Error, Result};
use crate::exact::{ConstraintSet, MultiPoly, Rational};
use crate::matrix::{Mat3, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitalComponent {
    S,
    B,
    #[serde(rename = "both")]
    Both,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub theorem: u8,
    pub s_generators: Vec<Mat3<MultiPoly>>,
    pub complement_id: String,
    pub params: Vec<String>,
    pub constraints: ConstraintSet,
    pub unital_component: UnitalComponent,
    pub notes: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplementDef {
    pub id: String,
    pub label: String,
    pub generators: Vec<Mat3<Rational>>,
    pub dim: usize,
    pub unital: bool,
}

/// Structure constants of a 2-dimensional algebra: `(i, j, c)` means
/// `e_i e_j = c[0] e1 + c[1] e2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Template {
    pub id: String,
    pub name: String,
    pub products: Vec<(usize, usize, [i64; 2])>,
}

pub fn complement(id: &str) -> Result<ComplementDef> {
    complements()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

pub fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

impl ComplementDef {
    pub fn subspace(&self) -> Subspace<Rational> {
        Subspace::span(self.generators.clone(), ConstraintSet::new()).expect("constant span")
    }

    pub fn poly_subspace(&self) -> Subspace<MultiPoly> {
        Subspace::span(
            self.generators.iter().map(Mat3::to_poly).collect(),
            ConstraintSet::new(),
        )
        .expect("constant span")
    }
}

impl CatalogEntry {
    pub fn complement(&self) -> Result<ComplementDef> {
        complement(&self.complement_id)
    }

    pub fn s_subspace(&self) -> Result<Subspace<MultiPoly>> {
        Subspace::span(self.s_generators.clone(), self.constraints.clone())
    }

    pub fn b_subspace(&self) -> Result<Subspace<MultiPoly>> {
        let c = self.complement()?;
        Subspace::span(
            c.generators.iter().map(Mat3::to_poly).collect(),
            self.constraints.clone(),
        )
    }

    /// Concrete S and B for a parameter assignment, after checking the
    /// side conditions.
    pub fn specialize(
        &self,
        values: &BTreeMap<String, Rational>,
    ) -> Result<(Subspace<Rational>, Subspace<Rational>)> {
        for p in &self.params {
            if !values.contains_key(p) {
                return Err(Error::MissingVariable(p.clone()));
            }
        }
        self.constraints.check(values)?;
        let gens = self
            .s_generators
            .iter()
            .map(|g| g.eval(values))
            .collect::<Result<Vec<_>>>()?;
        let s = Subspace::span(gens, ConstraintSet::new())?;
        Ok((s, self.complement()?.subspace()))
    }

    /// Generators specialized into any ring (prime fields for the search).
    pub fn specialize_gens<R: crate::exact::Ring>(
        &self,
        values: &BTreeMap<String, R>,
    ) -> Result<Vec<Mat3<R>>> {
        self.constraints.check(values)?;
        self.s_generators.iter().map(|g| g.eval(values)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    #[test]
    fn tally_per_theorem() {
        let cat = builtin_catalog();
        let mut counts = [0usize; 9];
        for e in &cat {
            counts[e.theorem as usize] += 1;
        }
        assert_eq!(&counts[1..], &[10, 12, 6, 15, 6, 7, 11, 4]);
        assert_eq!(cat.len(), 71);
        let mut ids: Vec<&str> = cat.iter().map(|e| e.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 71);
        assert!(find(&cat, "U3@M2").is_err());
    }

    #[test]
    fn declared_constraints() {
        let cat = builtin_catalog();
        let r9 = find(&cat, "R9").unwrap();
        assert_eq!(r9.constraints.nonzero, vec![MultiPoly::var("y")]);
        let s12 = find(&cat, "S12").unwrap();
        let shown: Vec<String> = s12
            .constraints
            .nonzero
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(shown, vec!["e", "e*u - 1"]);
    }

    #[test]
    fn specialization() {
        let cat = builtin_catalog();
        let r9 = find(&cat, "R9").unwrap();
        let bad: BTreeMap<String, Rational> = [("y".to_string(), q(0))].into();
        match r9.specialize(&bad) {
            Err(Error::ConstraintViolated(p)) => assert_eq!(p, "y"),
            other => panic!("unexpected {other:?}"),
        }
        let (s, b) = find(&cat, "R1")
            .unwrap()
            .specialize(&BTreeMap::new())
            .unwrap();
        assert_eq!((s.dim(), b.dim()), (2, 7));
        let vals: BTreeMap<String, Rational> =
            [("f".to_string(), q(1)), ("d".to_string(), q(0))].into();
        let (s, b) = find(&cat, "R10").unwrap().specialize(&vals).unwrap();
        assert!(s.is_subalgebra().closed && s.is_direct_sum(&b).unwrap());
    }

    #[test]
    fn five_dimensional_records() {
        let mut unital = 0;
        for id in FIVE_DIM_IDS {
            let c = complement(id).unwrap();
            let s = c.subspace();
            assert_eq!(s.dim(), 5);
            assert!(s.is_subalgebra().closed);
            assert_eq!(s.contains_identity(), c.unital);
            unital += usize::from(c.unital);
        }
        assert_eq!(unital, 4);
        assert!(!complement("M1").unwrap().unital && !complement("M2").unwrap().unital);
    }
}
