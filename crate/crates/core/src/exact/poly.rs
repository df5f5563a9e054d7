use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ConstraintSet, Elim, Rational, Ring};
use crate::error::{Error, Result};

/// Sorted, duplicate-free list of parameter names. The position of a name is
/// its index in every exponent vector, and the order defines the
/// lexicographic monomial order.
pub type Vars = Arc<[String]>;

type Monomial = Vec<u16>;

/// Sparse multivariate polynomial with rational coefficients.
///
/// The representation is canonical: no zero coefficients are stored and the
/// variable list holds exactly the variables that occur. Structural equality
/// is therefore polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

fn empty_vars() -> Vars {
    Arc::from(Vec::<String>::new())
}

impl MultiPoly {
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        MultiPoly {
            vars: Arc::from(vec![name.to_string()]),
            terms,
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: empty_vars(),
            terms,
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents, coefficient)` in increasing lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(
                self.terms
                    .values()
                    .next()
                    .cloned()
                    .unwrap_or_else(Rational::zero),
            )
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&[u16], &Rational)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, c)| (m.as_slice(), c))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul(c)))
                .collect(),
        }
    }

    /// Splits off the rational content: `self = content * primitive`, where
    /// `primitive` has coprime integer coefficients and a positive leading
    /// coefficient.
    pub fn primitive_part(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::one(), Self::zero());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self
            .leading()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
        {
            content = content.neg();
        }
        let inv = Rational::new(content.denom().clone(), content.numer().clone());
        (content, self.scale(&inv))
    }

    fn from_parts(vars: Vars, terms: BTreeMap<Monomial, Rational>) -> Self {
        let mut p = MultiPoly { vars, terms };
        p.trim();
        p
    }

    /// Drops variables that no longer occur.
    fn trim(&mut self) {
        let n = self.vars.len();
        if n == 0 {
            return;
        }
        let mut used = vec![false; n];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        if used.iter().all(|&u| u) {
            return;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| used[i]).collect();
        let vars: Vec<String> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(m, c)| (keep.iter().map(|&i| m[i]).collect(), c))
            .collect();
        self.vars = Arc::from(vars);
        self.terms = terms;
    }

    fn remap(&self, target: &Vars) -> BTreeMap<Monomial, Rational> {
        if Arc::ptr_eq(&self.vars, target) || *self.vars == **target {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.binary_search(v).expect("target covers variables"))
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut nm = vec![0u16; target.len()];
                for (i, &e) in m.iter().enumerate() {
                    nm[idx[i]] = e;
                }
                (nm, c.clone())
            })
            .collect()
    }

    fn union_vars(a: &Vars, b: &Vars) -> Vars {
        if Arc::ptr_eq(a, b) || **a == **b || b.is_empty() {
            return a.clone();
        }
        if a.is_empty() {
            return b.clone();
        }
        let mut v: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
        v.sort();
        v.dedup();
        Arc::from(v)
    }

    fn combine(&self, rhs: &Self, negate: bool) -> Self {
        let vars = Self::union_vars(&self.vars, &rhs.vars);
        let mut terms = self.remap(&vars);
        for (m, c) in rhs.remap(&vars) {
            let c = if negate { c.neg() } else { c };
            match terms.get_mut(&m) {
                Some(v) => {
                    *v = v.add(&c);
                    if v.is_zero() {
                        terms.remove(&m);
                    }
                }
                None => {
                    terms.insert(m, c);
                }
            }
        }
        Self::from_parts(vars, terms)
    }

    /// Evaluates the polynomial in any ring, given values for its variables.
    pub fn eval<R: Ring>(&self, assignment: &BTreeMap<String, R>) -> Result<R> {
        let values: Vec<&R> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c).ok_or_else(|| {
                Error::DomainMismatch(format!("coefficient {c} not representable"))
            })?;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&values[i].pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for some of the variables; the rest are kept.
    pub fn substitute(&self, values: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let full: BTreeMap<String, MultiPoly> = self
            .vars
            .iter()
            .map(|v| {
                (
                    v.clone(),
                    values.get(v).cloned().unwrap_or_else(|| MultiPoly::var(v)),
                )
            })
            .collect();
        self.eval(&full).expect("all variables assigned")
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.vars.binary_search_by(|v| v.as_str().cmp(var)) {
            Ok(i) => self.terms.keys().map(|m| m[i] as u32).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.constant_value() {
            let inv = Rational::new(c.denom().clone(), c.numer().clone());
            return Some(self.scale(&inv));
        }
        let vars = Self::union_vars(&self.vars, &d.vars);
        let dterms = d.remap(&vars);
        let (dm, dc) = dterms
            .iter()
            .next_back()
            .map(|(m, c)| (m.clone(), c.clone()))?;
        let dinv = Rational::new(dc.denom().clone(), dc.numer().clone());
        let mut rem = self.remap(&vars);
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = lm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let qc = lc.mul(&dinv);
            for (m, c) in &dterms {
                let pm: Monomial = m.iter().zip(&qm).map(|(a, b)| a + b).collect();
                let delta = c.mul(&qc);
                match rem.get_mut(&pm) {
                    Some(v) => {
                        *v = v.sub(&delta);
                        if v.is_zero() {
                            rem.remove(&pm);
                        }
                    }
                    None => {
                        rem.insert(pm, delta.neg());
                    }
                }
            }
            quot.insert(qm, qc);
        }
        Some(Self::from_parts(vars, quot))
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly {
            vars: empty_vars(),
            terms: BTreeMap::new(),
        }
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(Rational::from_int(v))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        self.combine(rhs, false)
    }
    fn sub(&self, rhs: &Self) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, true)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let vars = Self::union_vars(&self.vars, &rhs.vars);
        let a = self.remap(&vars);
        let b = rhs.remap(&vars);
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &a {
            for (mb, cb) in &b {
                let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let c = ca.mul(cb);
                match terms.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Self::from_parts(vars, terms)
    }
    fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(Self::constant(r.clone()))
    }
}

impl Elim for MultiPoly {
    fn certified_nonzero(&self, c: &ConstraintSet) -> bool {
        c.certifies(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
    fn pivot_cost(&self) -> usize {
        match self.constant_value() {
            Some(c) if c.abs().is_one() => 0,
            Some(_) => 1,
            None => 16 * self.total_degree() as usize + self.terms.len(),
        }
    }
}

impl fmt::Display for MultiPoly {
    /// Prints in the catalog grammar: integer or `a/b` coefficients are
    /// avoided where possible, powers are spelled out as products.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = m.iter().all(|&e| e == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    factors.push(self.vars[i].clone());
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<i64> for MultiPoly {
    fn from(v: i64) -> Self {
        MultiPoly::from_i64(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s).unwrap()
    }

    fn env(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), Rational::from_int(*v)))
            .collect()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p("1 - y").eval(&env(&[("y", 0)])).unwrap(), Rational::one());
        assert_eq!(
            p("e*u - 1").eval(&env(&[("e", 1), ("u", 1)])).unwrap(),
            Rational::zero()
        );
        let rel = p("d*(m - p) - e");
        assert_eq!(
            rel.eval(&env(&[("d", 2), ("m", 3), ("p", 1), ("e", 4)]))
                .unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn eval_reports_missing_variable() {
        match p("x + y").eval(&env(&[("x", 1)])) {
            Err(Error::MissingVariable(v)) => assert_eq!(v, "y"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trims_cancelled_variables() {
        let a = p("x + y");
        let b = p("y");
        let d = a.sub(&b);
        assert_eq!(d.vars(), &["x".to_string()]);
        assert_eq!(d, MultiPoly::var("x"));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = p("(x + y)*(x - 2*y*z + 1)");
        assert_eq!(f.div_exact(&p("x + y")).unwrap(), p("x - 2*y*z + 1"));
        assert!(p("x*x + 1").div_exact(&p("x + 1")).is_none());
        assert_eq!(p("6*x").div_exact(&p("3")).unwrap(), p("2*x"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["3*e*u - 1", "-x*x*y + 2*y - 7", "0", "-1", "m*m - m*p + 1"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "{s}");
        }
        assert_eq!(p("e*u-1").to_string(), "e*u - 1");
    }

    #[test]
    fn primitive_part_strips_content() {
        let (c, pp) = p("-4*x + 6").primitive_part();
        assert_eq!(c, Rational::from_int(-2));
        assert_eq!(pp, p("2*x - 3"));
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((-3i64..4, 0u16..3, 0u16..3, 0u16..2), 1..5).prop_map(|ts| {
            ts.into_iter().fold(MultiPoly::zero(), |acc, (c, a, b, d)| {
                let mut t = MultiPoly::from_i64(c);
                for _ in 0..a {
                    t = t.mul(&MultiPoly::var("a"));
                }
                for _ in 0..b {
                    t = t.mul(&MultiPoly::var("b"));
                }
                for _ in 0..d {
                    t = t.mul(&MultiPoly::var("c"));
                }
                acc.add(&t)
            })
        })
    }

    proptest! {
        #[test]
        fn eval_is_ring_homomorphism(f in small_poly(), g in small_poly(), a in -5i64..6, b in -5i64..6, c in -5i64..6) {
            let s = env(&[("a", a), ("b", b), ("c", c)]);
            let fg = f.mul(&g).eval(&s).unwrap();
            prop_assert_eq!(fg, f.eval(&s).unwrap().mul(&g.eval(&s).unwrap()));
            let fpg = f.add(&g).eval(&s).unwrap();
            prop_assert_eq!(fpg, f.eval(&s).unwrap().add(&g.eval(&s).unwrap()));
        }

        #[test]
        fn product_divides_exactly(f in small_poly(), g in small_poly()) {
            prop_assume!(!g.is_zero());
            prop_assert_eq!(f.mul(&g).div_exact(&g).unwrap(), f);
        }
    }
}
