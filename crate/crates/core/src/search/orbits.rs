use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::group::{coset_representatives, phi_family, stabilizer, to_v9, ComplementFp, Map9};
use super::patterns::PivotPattern;
use super::solve::solve_mod_p;
use crate::catalog::{complement, CatalogEntry};
use crate::error::{Error, Result};
use crate::exact::{ConstraintSet, Gf, MultiPoly, Ring};
use crate::matrix::{Mat3, Subspace};
use crate::verifier::derive_closure_system;

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Apply the pattern's fixed zeros (slice mode) instead of searching the
    /// full cube.
    pub use_fixed_zeros: bool,
    /// Maximal number of search nodes.
    pub node_limit: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            use_fixed_zeros: true,
            node_limit: 100_000_000,
        }
    }
}

/// Solutions of a pattern over `F_p`, as value vectors over `letters`.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub pattern: String,
    pub prime: u32,
    pub fixed_zeros_applied: bool,
    pub letters: Vec<String>,
    pub solutions: Vec<Vec<u8>>,
}

fn check_prime(p: u32) -> Result<()> {
    if [2, 3, 5].contains(&p) {
        Ok(())
    } else {
        Err(Error::NotSupported(format!(
            "finite-field search supports p in {{2, 3, 5}}, got {p}"
        )))
    }
}

/// All assignments of `F_p` values to the free letters for which the
/// pattern spans a subalgebra complementary to its fixed complement, in
/// lexicographic order.
pub fn enumerate_complements_fp(
    pat: &PivotPattern,
    p: u32,
    opts: &SearchOptions,
) -> Result<Enumeration> {
    check_prime(p)?;
    let gens = pat.generators_with(opts.use_fixed_zeros);
    let m = complement(&pat.complement_id)?.subspace();
    let declared = if opts.use_fixed_zeros {
        &pat.declared[..]
    } else {
        &[]
    };
    let system = derive_closure_system(&gens, &m, declared)?;
    let letters = pat.free_letters(opts.use_fixed_zeros);
    let solutions = solve_mod_p(&system.equations, &letters, p, opts.node_limit)?;
    Ok(Enumeration {
        pattern: pat.name.clone(),
        prime: p,
        fixed_zeros_applied: opts.use_fixed_zeros,
        letters,
        solutions,
    })
}

fn eval_gens<const P: u32>(
    gens: &[Mat3<MultiPoly>],
    letters: &[String],
    values: &[u8],
) -> Result<Vec<Mat3<Gf<P>>>> {
    let assign: BTreeMap<String, Gf<P>> = letters
        .iter()
        .zip(values)
        .map(|(l, v)| (l.clone(), Gf::new(*v)))
        .collect();
    gens.iter().map(|g| g.eval(&assign)).collect()
}

/// Unpruned oracle: runs through the whole cube and tests each candidate
/// span directly with linear algebra.
pub fn brute_force_complements<const P: u32>(
    pat: &PivotPattern,
    use_fixed_zeros: bool,
) -> Result<Vec<Vec<u8>>> {
    let gens = pat.generators_with(use_fixed_zeros);
    let letters = pat.free_letters(use_fixed_zeros);
    let m = complement(&pat.complement_id)?;
    let mgens: Vec<Mat3<Gf<P>>> = m
        .generators
        .iter()
        .map(|g| g.map(|x| Gf::<P>::from_rational(x).expect("integral complement")))
        .collect();
    let mspace = Subspace::span(mgens, ConstraintSet::new())?;
    let f = letters.len() as u32;
    let total = (P as u64)
        .checked_pow(f)
        .filter(|t| *t <= 50_000_000)
        .ok_or(Error::BudgetExceeded {
            nodes: u64::MAX,
            limit: 50_000_000,
        })?;
    let mut out: Vec<Vec<u8>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let mut vals = vec![0u8; f as usize];
            for v in vals.iter_mut().rev() {
                *v = (c % P as u64) as u8;
                c /= P as u64;
            }
            let concrete = eval_gens::<P>(&gens, &letters, &vals).ok()?;
            let s = Subspace::span(concrete, ConstraintSet::new()).ok()?;
            let ok = s.dim() == gens.len()
                && s.is_subalgebra().closed
                && s.is_direct_sum(&mspace).ok()?;
            ok.then_some(vals)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Orbits of a solution list: `orbit_of[i]` is the index of the
/// lexicographically least solution in the orbit of solution `i`.
#[derive(Clone, Debug, Serialize)]
pub struct Orbits {
    pub orbit_of: Vec<usize>,
    pub representatives: Vec<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut j = i;
        while self.0[j] != r {
            let next = self.0[j];
            self.0[j] = r;
            j = next;
        }
        r
    }

    /// Joins two classes, keeping the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Cells of every solution, and the reverse lookup.
struct Indexed<const P: u32> {
    m: ComplementFp<P>,
    cells: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

fn index_solutions<const P: u32>(pat: &PivotPattern, en: &Enumeration) -> Result<Indexed<P>> {
    let m = ComplementFp::<P>::new(&complement(&pat.complement_id)?.generators)?;
    let gens = pat.generators_with(en.fixed_zeros_applied);
    let cells: Vec<Vec<u8>> = en
        .solutions
        .par_iter()
        .map(|vals| {
            let concrete = eval_gens::<P>(&gens, &en.letters, vals)?;
            let v: Vec<_> = concrete.iter().map(to_v9).collect();
            m.cells(&v).ok_or_else(|| {
                Error::PatternMismatch("a solution does not span a complement".to_string())
            })
        })
        .collect::<Result<_>>()?;
    let index = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    Ok(Indexed { m, cells, index })
}

fn partition<const P: u32>(ix: &Indexed<P>, group: &[Map9<P>]) -> Orbits {
    let edges: Vec<(usize, usize)> = ix
        .cells
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, c)| {
            let mut e = Vec::new();
            for g in group {
                if let Some(&j) = ix.index.get(&ix.m.act(g, c)) {
                    if j != i {
                        e.push((i, j));
                    }
                }
            }
            e.into_iter()
        })
        .collect();
    let mut uf = UnionFind((0..ix.cells.len()).collect());
    for (a, b) in edges {
        uf.union(a, b);
    }
    let orbit_of: Vec<usize> = (0..ix.cells.len()).map(|i| uf.find(i)).collect();
    let mut representatives: Vec<usize> = orbit_of.clone();
    representatives.sort_unstable();
    representatives.dedup();
    Orbits {
        orbit_of,
        representatives,
    }
}

/// Partitions solutions into orbits of the group of automorphisms and
/// antiautomorphisms over `F_P` that preserve the complement.
pub fn orbit_partition<const P: u32>(
    pat: &PivotPattern,
    en: &Enumeration,
    group: &[Map9<P>],
) -> Result<Orbits> {
    let ix = index_solutions::<P>(pat, en)?;
    for g in group {
        if !ix.m.preserved_by(g) {
            return Err(Error::GroupMismatch(format!(
                "a group element moves {} off itself",
                pat.complement_id
            )));
        }
    }
    Ok(partition(&ix, group))
}

/// Catalog entries whose complement and theorem match the pattern.
pub fn entries_for(pat: &PivotPattern, catalog: &[CatalogEntry]) -> Vec<CatalogEntry> {
    catalog
        .iter()
        .filter(|&e| e.complement_id == pat.complement_id && e.theorem == pat.theorem)
        .cloned()
        .collect()
}

/// A constraint-satisfying specialization of a catalog entry over `F_Q`.
pub struct Specialization {
    pub entry: String,
    pub values: BTreeMap<String, u8>,
    /// `None` if the specialized span is not a complement.
    pub cells: Option<Vec<u8>>,
    pub closed: bool,
}

impl Specialization {
    pub fn label(&self) -> String {
        if self.values.is_empty() {
            return self.entry.clone();
        }
        let v: Vec<String> = self
            .values
            .iter()
            .map(|(k, x)| format!("{k}={x}"))
            .collect();
        format!("{}({})", self.entry, v.join(", "))
    }
}

pub fn specializations<const Q: u32>(
    entries: &[CatalogEntry],
    m: &ComplementFp<Q>,
) -> Result<Vec<Specialization>> {
    let elems: Vec<Gf<Q>> = Gf::<Q>::elements().collect();
    let mut out = Vec::new();
    for e in entries {
        let n = e.params.len();
        let total = (Q as usize).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut assign: BTreeMap<String, Gf<Q>> = BTreeMap::new();
            for name in e.params.iter().rev() {
                assign.insert(name.clone(), elems[c % Q as usize]);
                c /= Q as usize;
            }
            if !e.constraints.satisfied(&assign)? {
                continue;
            }
            let gens: Vec<Mat3<Gf<Q>>> = e
                .s_generators
                .iter()
                .map(|g| g.eval(&assign))
                .collect::<Result<_>>()?;
            let v: Vec<_> = gens.iter().map(to_v9).collect();
            let cells = m.cells(&v);
            let closed = cells.as_ref().is_some_and(|c| m.is_subalgebra(c));
            out.push(Specialization {
                entry: e.id.clone(),
                values: assign.iter().map(|(k, x)| (k.clone(), x.code())).collect(),
                cells,
                closed,
            });
        }
    }
    Ok(out)
}

/// Coverage of a pattern enumeration by the catalog over `F_p`.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub pattern: String,
    pub prime: u32,
    pub fixed_zeros_applied: bool,
    pub letters: Vec<String>,
    pub group_order: usize,
    pub total_solutions: usize,
    pub orbit_count: usize,
    pub matched: usize,
    /// Lexicographically least member of each unmatched orbit.
    pub unmatched_reps: Vec<Vec<u8>>,
    /// Per unmatched orbit: whether it contains a catalog specialization once
    /// the field is extended to `F_{p²}` (a square root obstruction).
    pub unmatched_explained: Vec<bool>,
    pub specializations: usize,
    /// Catalog specializations that are degenerate over `F_p` or that do not
    /// occur in the enumeration.
    pub soundness_failures: Vec<String>,
}

impl OrbitReport {
    pub fn complete(&self) -> bool {
        self.matched == self.orbit_count
    }

    pub fn sound(&self) -> bool {
        self.soundness_failures.is_empty()
    }

    /// Every unmatched orbit is accounted for by the field extension.
    pub fn explained(&self) -> bool {
        self.unmatched_explained.iter().all(|b| *b)
    }
}

fn explain_over_extension<const P: u32, const Q: u32>(
    pat: &PivotPattern,
    stab: &[Map9<P>],
    reps: &[Vec<u8>],
    catalog: &[CatalogEntry],
) -> Result<Vec<bool>> {
    if reps.is_empty() {
        return Ok(Vec::new());
    }
    let gens = &complement(&pat.complement_id)?.generators;
    let mp = ComplementFp::<P>::new(gens)?;
    let mq = ComplementFp::<Q>::new(gens)?;
    let fam_p = phi_family(&mp);
    let cosets: Vec<Map9<Q>> = coset_representatives(stab, &fam_p)
        .iter()
        .map(Map9::lift)
        .collect();
    let fam_q = phi_family(&mq);
    let targets: HashSet<Vec<u8>> = specializations::<Q>(&entries_for(pat, catalog), &mq)?
        .into_iter()
        .filter(|s| s.closed)
        .filter_map(|s| s.cells)
        .collect();
    Ok(reps
        .iter()
        .map(|cells| {
            cosets.iter().any(|h| {
                let moved = mq.act(h, cells);
                fam_q
                    .par_iter()
                    .any(|f| targets.contains(&mq.act(f, &moved)))
            })
        })
        .collect())
}

fn coverage<const P: u32, const Q: u32>(
    pat: &PivotPattern,
    opts: &SearchOptions,
    catalog: &[CatalogEntry],
) -> Result<OrbitReport> {
    let en = enumerate_complements_fp(pat, P, opts)?;
    let ix = index_solutions::<P>(pat, &en)?;
    let stab = stabilizer(&ix.m);
    let orbits = partition(&ix, &stab);

    let mut matched_roots: HashSet<usize> = HashSet::new();
    let mut failures = Vec::new();
    let specs = specializations::<P>(&entries_for(pat, catalog), &ix.m)?;
    for s in &specs {
        let Some(cells) = &s.cells else {
            failures.push(format!("{}: not a complement over F_{P}", s.label()));
            continue;
        };
        if !s.closed {
            failures.push(format!("{}: not a subalgebra over F_{P}", s.label()));
            continue;
        }
        let hit = stab
            .par_iter()
            .find_map_first(|g| ix.index.get(&ix.m.act(g, cells)).copied());
        match hit {
            Some(i) => {
                matched_roots.insert(orbits.orbit_of[i]);
            }
            None => failures.push(format!("{}: not found in the enumeration", s.label())),
        }
    }
    let unmatched: Vec<usize> = orbits
        .representatives
        .iter()
        .copied()
        .filter(|r| !matched_roots.contains(r))
        .collect();
    let unmatched_cells: Vec<Vec<u8>> = unmatched.iter().map(|&r| ix.cells[r].clone()).collect();
    let unmatched_explained =
        explain_over_extension::<P, Q>(pat, &stab, &unmatched_cells, catalog)?;
    Ok(OrbitReport {
        pattern: pat.name.clone(),
        prime: P,
        fixed_zeros_applied: opts.use_fixed_zeros,
        letters: en.letters.clone(),
        group_order: stab.len(),
        total_solutions: en.solutions.len(),
        orbit_count: orbits.representatives.len(),
        matched: orbits.representatives.len() - unmatched.len(),
        unmatched_reps: unmatched.iter().map(|&r| en.solutions[r].clone()).collect(),
        unmatched_explained,
        specializations: specs.len(),
        soundness_failures: failures,
    })
}

/// Enumerates, partitions into orbits and matches against the entries of
/// `catalog` for the pattern's theorem and complement.
pub fn coverage_report(
    pat: &PivotPattern,
    p: u32,
    opts: &SearchOptions,
    catalog: &[CatalogEntry],
) -> Result<OrbitReport> {
    check_prime(p)?;
    match p {
        2 => coverage::<2, 4>(pat, opts, catalog),
        3 => coverage::<3, 9>(pat, opts, catalog),
        _ => coverage::<5, 25>(pat, opts, catalog),
    }
}

/// Outcome of an exhaustive search for a group element carrying one
/// subalgebra onto another.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub prime: u32,
    pub complement_id: String,
    pub group_order: usize,
    pub mapped: bool,
    /// Whether an automorphism (not only an antiautomorphism) does it.
    pub mapped_by_automorphism: bool,
    /// The least mapping element, as field codes of the images of the
    /// matrix units.
    pub witness: Option<SweepWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepWitness {
    pub anti: bool,
    pub images: Vec<Vec<u8>>,
}

fn sweep<const P: u32>(
    complement_id: &str,
    a: &[Mat3<crate::exact::Rational>],
    b: &[Mat3<crate::exact::Rational>],
) -> Result<SweepResult> {
    let m = ComplementFp::<P>::new(&complement(complement_id)?.generators)?;
    let reduce = |gens: &[Mat3<crate::exact::Rational>]| -> Result<Vec<u8>> {
        let v: Vec<_> = gens
            .iter()
            .map(|g| to_v9(&g.map(|x| Gf::<P>::from_rational(x).expect("integral generators"))))
            .collect();
        m.cells(&v)
            .ok_or_else(|| Error::NotSupported(format!("not a complement over F_{P}")))
    };
    let (ca, cb) = (reduce(a)?, reduce(b)?);
    let stab = stabilizer(&m);
    let hits: Vec<&Map9<P>> = stab.par_iter().filter(|g| m.act(g, &ca) == cb).collect();
    Ok(SweepResult {
        prime: P,
        complement_id: complement_id.to_string(),
        group_order: stab.len(),
        mapped: !hits.is_empty(),
        mapped_by_automorphism: hits.iter().any(|g| !g.anti),
        witness: hits.first().map(|g| SweepWitness {
            anti: g.anti,
            images: g
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.code()).collect())
                .collect(),
        }),
    })
}

/// Whether some automorphism or antiautomorphism over `F_p` preserving the
/// complement maps `span(a)` onto `span(b)`.
pub fn group_sweep(
    complement_id: &str,
    a: &[Mat3<crate::exact::Rational>],
    b: &[Mat3<crate::exact::Rational>],
    p: u32,
) -> Result<SweepResult> {
    check_prime(p)?;
    match p {
        2 => sweep::<2>(complement_id, a, b),
        3 => sweep::<3>(complement_id, a, b),
        _ => sweep::<5>(complement_id, a, b),
    }
}

/// Soundness over `F_p`: every constraint-satisfying specialization of the
/// pattern's catalog entries is a complementary subalgebra occurring in the
/// full-cube enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub pattern: String,
    pub prime: u32,
    pub total_solutions: usize,
    pub specializations: usize,
    pub failures: Vec<String>,
}

fn soundness<const P: u32>(
    pat: &PivotPattern,
    node_limit: u64,
    catalog: &[CatalogEntry],
) -> Result<SoundnessReport> {
    let opts = SearchOptions {
        use_fixed_zeros: false,
        node_limit,
    };
    let en = enumerate_complements_fp(pat, P, &opts)?;
    let ix = index_solutions::<P>(pat, &en)?;
    let specs = specializations::<P>(&entries_for(pat, catalog), &ix.m)?;
    let mut failures = Vec::new();
    for s in &specs {
        match &s.cells {
            None => failures.push(format!("{}: not a complement over F_{P}", s.label())),
            Some(c) if !ix.index.contains_key(c) => {
                failures.push(format!("{}: missing from the enumeration", s.label()))
            }
            Some(_) => {}
        }
    }
    Ok(SoundnessReport {
        pattern: pat.name.clone(),
        prime: P,
        total_solutions: en.solutions.len(),
        specializations: specs.len(),
        failures,
    })
}

pub fn soundness_report(
    pat: &PivotPattern,
    p: u32,
    node_limit: u64,
    catalog: &[CatalogEntry],
) -> Result<SoundnessReport> {
    check_prime(p)?;
    match p {
        2 => soundness::<2>(pat, node_limit, catalog),
        3 => soundness::<3>(pat, node_limit, catalog),
        _ => soundness::<5>(pat, node_limit, catalog),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::search::pattern;

    #[test]
    fn theorem1_coverage_is_complete_over_f2() {
        let pat = pattern("7-2").unwrap();
        let r = coverage_report(&pat, 2, &SearchOptions::default(), &builtin_catalog()).unwrap();
        assert!(r.complete() && r.sound(), "{r:?}");
        assert_eq!(r.group_order, 24);
    }

    #[test]
    fn full_cube_soundness_over_f2() {
        let pat = pattern("6-3").unwrap();
        let r = soundness_report(&pat, 2, 10_000_000, &builtin_catalog()).unwrap();
        assert!(r.failures.is_empty(), "{r:?}");
        assert!(r.specializations > 0);
    }

    #[test]
    fn empty_catalog_matches_nothing() {
        let pat = pattern("7-2").unwrap();
        let r = coverage_report(&pat, 2, &SearchOptions::default(), &[]).unwrap();
        assert_eq!(r.matched, 0);
        assert_eq!(r.specializations, 0);
    }

    #[test]
    fn pruned_search_matches_brute_force_over_f2() {
        for name in ["7-2", "6-3"] {
            let pat = pattern(name).unwrap();
            for fz in [true, false] {
                let opts = SearchOptions {
                    use_fixed_zeros: fz,
                    ..Default::default()
                };
                let en = enumerate_complements_fp(&pat, 2, &opts).unwrap();
                let brute = brute_force_complements::<2>(&pat, fz).unwrap();
                assert_eq!(en.solutions, brute, "{name} fixed_zeros={fz}");
            }
        }
    }

    #[test]
    fn orbit_representatives_are_lex_least() {
        let pat = pattern("7-2").unwrap();
        let opts = SearchOptions {
            use_fixed_zeros: false,
            ..Default::default()
        };
        let en = enumerate_complements_fp(&pat, 3, &opts).unwrap();
        let m = ComplementFp::<3>::new(&complement("M7").unwrap().generators).unwrap();
        let orbits = orbit_partition::<3>(&pat, &en, &stabilizer(&m)).unwrap();
        for (i, r) in orbits.orbit_of.iter().enumerate() {
            assert!(*r <= i);
            assert_eq!(orbits.orbit_of[*r], *r);
        }
    }

    #[test]
    fn unsupported_prime() {
        let pat = pattern("7-2").unwrap();
        assert!(matches!(
            enumerate_complements_fp(&pat, 7, &SearchOptions::default()),
            Err(Error::NotSupported(_))
        ));
    }
}
