//! Backtracking enumeration of the common zeros of a polynomial system over
//! a prime field.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::MultiPoly;

/// A polynomial with coefficients reduced mod p; monomials refer to
/// positions in the search order.
#[derive(Clone, Debug)]
struct CPoly {
    terms: Vec<(u32, Vec<(usize, u32)>)>,
}

impl CPoly {
    #[inline]
    fn eval(&self, vals: &[u32], p: u32) -> u32 {
        let mut acc: u64 = 0;
        for (c, mono) in &self.terms {
            let mut t = *c as u64;
            for &(pos, e) in mono {
                for _ in 0..e {
                    t = t * vals[pos] as u64 % p as u64;
                }
            }
            acc += t;
        }
        (acc % p as u64) as u32
    }
}

struct Compiled {
    p: u32,
    /// `order[d]` is the variable index assigned at depth `d`.
    order: Vec<usize>,
    /// Equations whose last variable is assigned at depth `d`.
    buckets: Vec<Vec<CPoly>>,
    /// Equations without variables that do not vanish make the system
    /// inconsistent.
    inconsistent: bool,
}

fn compile(equations: &[MultiPoly], vars: &[String], p: u32) -> Result<Compiled> {
    let n = vars.len();
    // variable sets of each equation
    let mut eq_vars: Vec<Vec<usize>> = Vec::with_capacity(equations.len());
    for eq in equations {
        let mut vs = Vec::new();
        for v in eq.vars() {
            let idx = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::MissingVariable(v.clone()))?;
            vs.push(idx);
        }
        eq_vars.push(vs);
    }
    // greedy order: next variable completes the most equations, then
    // occurs in the most pending equations, then comes first
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in (0..n).filter(|&v| !placed[v]) {
            let mut completes = 0;
            let mut occurs = 0;
            for vs in &eq_vars {
                if !vs.contains(&v) || vs.iter().all(|w| placed[*w]) {
                    continue;
                }
                occurs += 1;
                if vs.iter().all(|w| *w == v || placed[*w]) {
                    completes += 1;
                }
            }
            let better = match best {
                None => true,
                Some((_, c, o)) => (completes, occurs) > (c, o),
            };
            if better {
                best = Some((v, completes, occurs));
            }
        }
        let (v, _, _) = best.expect("a variable remains");
        placed[v] = true;
        order.push(v);
    }
    let mut pos_of = vec![0; n];
    for (d, v) in order.iter().enumerate() {
        pos_of[*v] = d;
    }
    let mut buckets = vec![Vec::new(); n];
    let mut inconsistent = false;
    for (eq, vs) in equations.iter().zip(&eq_vars) {
        let mut terms = Vec::new();
        for (exps, coef) in eq.terms() {
            let c = coef.mod_p(p).ok_or_else(|| {
                Error::NotSupported(format!("coefficient {coef} is not defined mod {p}"))
            })?;
            if c == 0 {
                continue;
            }
            let mono = exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = &eq.vars()[i];
                    let idx = vars.iter().position(|x| x == name).expect("checked above");
                    (pos_of[idx], *e as u32)
                })
                .collect();
            terms.push((c, mono));
        }
        if terms.is_empty() {
            continue;
        }
        let poly = CPoly { terms };
        match vs.iter().map(|v| pos_of[*v]).max() {
            Some(d) => buckets[d].push(poly),
            None => inconsistent = true,
        }
    }
    Ok(Compiled {
        p,
        order,
        buckets,
        inconsistent,
    })
}

struct Budget<'a> {
    shared: &'a AtomicU64,
    local: u64,
    limit: u64,
}

impl Budget<'_> {
    const FLUSH: u64 = 4096;

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.local += 1;
        if self.local == Self::FLUSH {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
        self.local = 0;
        if total > self.limit {
            return Err(Error::BudgetExceeded {
                nodes: total,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

impl Compiled {
    fn ok_at(&self, depth: usize, vals: &[u32]) -> bool {
        self.buckets[depth]
            .iter()
            .all(|e| e.eval(vals, self.p) == 0)
    }

    fn dfs(
        &self,
        depth: usize,
        vals: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        budget: &mut Budget,
    ) -> Result<()> {
        if depth == self.order.len() {
            out.push(vals.clone());
            return Ok(());
        }
        for x in 0..self.p {
            budget.tick()?;
            vals[depth] = x;
            if self.ok_at(depth, vals) {
                self.dfs(depth + 1, vals, out, budget)?;
            }
        }
        vals[depth] = 0;
        Ok(())
    }

    /// Surviving assignments of the first `k` search positions.
    fn prefixes(&self, k: usize) -> Vec<Vec<u32>> {
        let n = self.order.len();
        let mut level = vec![vec![0u32; n]];
        for depth in 0..k {
            let mut next = Vec::new();
            for v in &level {
                for x in 0..self.p {
                    let mut w = v.clone();
                    w[depth] = x;
                    if self.ok_at(depth, &w) {
                        next.push(w);
                    }
                }
            }
            level = next;
        }
        level
    }
}

/// All points of `F_p^n` (`n = vars.len()`) where every equation vanishes,
/// as value vectors in the order of `vars`, sorted lexicographically.
///
/// `node_limit` bounds the number of partial assignments tried; exceeding it
/// yields [`Error::BudgetExceeded`]. The result does not depend on how the
/// work is split across threads.
pub fn solve_mod_p(
    equations: &[MultiPoly],
    vars: &[String],
    p: u32,
    node_limit: u64,
) -> Result<Vec<Vec<u8>>> {
    let c = compile(equations, vars, p)?;
    if c.inconsistent {
        return Ok(Vec::new());
    }
    let n = vars.len();
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    // split on a prefix wide enough to feed the thread pool
    let mut k = 0;
    let mut width = 1u64;
    while k < n && width < 512 {
        width *= p as u64;
        k += 1;
    }
    let counter = AtomicU64::new(0);
    let chunks: Vec<Vec<Vec<u32>>> = c
        .prefixes(k)
        .into_par_iter()
        .map(|mut v| {
            let mut out = Vec::new();
            let mut budget = Budget {
                shared: &counter,
                local: 0,
                limit: node_limit,
            };
            c.dfs(k, &mut v, &mut out, &mut budget)?;
            budget.flush()?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut sols: Vec<Vec<u8>> = chunks
        .into_iter()
        .flatten()
        .map(|v| {
            let mut s = vec![0u8; n];
            for (d, var) in c.order.iter().enumerate() {
                s[*var] = v[d] as u8;
            }
            s
        })
        .collect();
    sols.sort_unstable();
    Ok(sols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_poly;

    fn polys(src: &[&str]) -> Vec<MultiPoly> {
        src.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn brute(eqs: &[MultiPoly], vars: &[String], p: u32) -> Vec<Vec<u8>> {
        use crate::exact::{Fp, Ring};
        let n = vars.len();
        let mut out = Vec::new();
        for code in 0..(p as usize).pow(n as u32) {
            let mut c = code;
            let mut vals = vec![0u8; n];
            for i in (0..n).rev() {
                vals[i] = (c % p as usize) as u8;
                c /= p as usize;
            }
            let assign: std::collections::BTreeMap<String, Fp<3>> = vars
                .iter()
                .zip(&vals)
                .map(|(v, x)| (v.clone(), Fp::new(*x as i64)))
                .collect();
            if eqs.iter().all(|e| e.eval(&assign).unwrap().is_zero()) {
                out.push(vals);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force() {
        let eqs = polys(&["x*y - z", "x*x - x", "y*z + w"]);
        let vars = names(&["w", "x", "y", "z"]);
        assert_eq!(
            solve_mod_p(&eqs, &vars, 3, 1_000_000).unwrap(),
            brute(&eqs, &vars, 3)
        );
    }

    #[test]
    fn free_variables_are_enumerated() {
        let eqs = polys(&["a"]);
        let sols = solve_mod_p(&eqs, &names(&["a", "b"]), 2, 1000).unwrap();
        assert_eq!(sols, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn inconsistent_constant() {
        let eqs = polys(&["1"]);
        assert!(solve_mod_p(&eqs, &names(&["a"]), 2, 1000)
            .unwrap()
            .is_empty());
        // 3 vanishes mod 3
        let eqs = polys(&["3"]);
        assert_eq!(solve_mod_p(&eqs, &names(&["a"]), 3, 1000).unwrap().len(), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let vars: Vec<String> = (0..12).map(|i| format!("x{i}")).collect();
        let err = solve_mod_p(&[], &vars, 3, 10_000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn unknown_variable_is_reported() {
        let eqs = polys(&["q"]);
        assert!(matches!(
            solve_mod_p(&eqs, &names(&["a"]), 2, 10),
            Err(Error::MissingVariable(_))
        ));
    }
}
