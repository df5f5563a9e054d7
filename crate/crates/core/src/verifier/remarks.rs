//! Machine checks of the orbit-distinctness remarks: the invariants each
//! remark names, and pairwise separation of the listed subalgebras under
//! automorphisms and antiautomorphisms preserving the complement.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::automorphisms::{AlgebraMap, MapKind};
use crate::catalog::{builtin_catalog, complement, find, CatalogEntry, FIVE_DIM_IDS};
use crate::error::Result;
use crate::exact::Rational;
use crate::invariants::{classify_2dim, fingerprint, idempotents, Fingerprint, TwoDimType};
use crate::matrix::{Mat3, Subspace};
use crate::search::{group_sweep, SweepWitness};

/// Primes used for the exhaustive group sweep when fingerprints agree.
pub const SWEEP_PRIMES: [u32; 2] = [3, 5];

#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub a: String,
    pub b: String,
    /// No automorphism preserving the complement maps one onto the other.
    pub separated_by_automorphisms: bool,
    /// Neither an automorphism nor an antiautomorphism preserving the
    /// complement maps one onto the other.
    pub separated: bool,
    pub justification: String,
    /// An exact map over the rationals carrying one onto the other, when the
    /// finite sweep found one that lifts.
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub kind: MapKind,
    /// Images of e11, e12, ..., e33.
    pub images: Vec<[[String; 3]; 3]>,
    pub is_algebra_map: bool,
    pub preserves_complement: bool,
    pub maps_a_onto_b: bool,
}

impl Counterexample {
    pub fn verified(&self) -> bool {
        self.is_algebra_map && self.preserves_complement && self.maps_a_onto_b
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub remark: u8,
    pub facts: Vec<Fact>,
    pub pairs: Vec<PairCheck>,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.facts.iter().all(|f| f.holds) && self.pairs.iter().all(|p| p.separated)
    }
}

/// A subalgebra under study: its label, generators and fingerprint.
struct Subject {
    id: String,
    complement_id: String,
    gens: Vec<Mat3<Rational>>,
    space: Subspace<Rational>,
    fp: Fingerprint,
}

fn entry_subject(cat: &[CatalogEntry], id: &str) -> Result<Subject> {
    let e = find(cat, id)?;
    let gens = e.specialize_gens::<Rational>(&BTreeMap::new())?;
    let (space, _) = e.specialize(&BTreeMap::new())?;
    let fp = fingerprint(&space)?;
    Ok(Subject {
        id: id.to_string(),
        complement_id: e.complement_id.clone(),
        gens,
        space,
        fp,
    })
}

fn complement_subject(id: &str) -> Result<Subject> {
    let c = complement(id)?;
    let space = c.subspace();
    let fp = fingerprint(&space)?;
    Ok(Subject {
        id: id.to_string(),
        complement_id: String::new(),
        gens: c.generators,
        space,
        fp,
    })
}

fn fact(statement: impl Into<String>, holds: bool) -> Fact {
    Fact {
        statement: statement.into(),
        holds,
    }
}

fn one_sided_unit(f: &Fingerprint) -> bool {
    !f.has_unit && (f.has_left_unit || f.has_right_unit)
}

/// Reads a finite-field witness over the rationals, taking each code to
/// its representative of least absolute value.
fn lift_witness(w: &SweepWitness, p: u32, a: &Subject, b: &Subject) -> Result<Counterexample> {
    let lift = |c: u8| {
        let c = c as i64;
        Rational::from_int(if 2 * c > p as i64 { c - p as i64 } else { c })
    };
    let images: Vec<Mat3<Rational>> = w
        .images
        .iter()
        .map(|r| Mat3::from_coords(r.iter().map(|c| lift(*c)).collect()))
        .collect::<Result<_>>()?;
    let kind = if w.anti {
        MapKind::Antiautomorphism
    } else {
        MapKind::Automorphism
    };
    let map = AlgebraMap::from_images(images.clone(), kind)?;
    let m = complement(&a.complement_id)?.subspace();
    Ok(Counterexample {
        kind,
        images: images.iter().map(Mat3::to_strings).collect(),
        is_algebra_map: map.is_algebra_map(),
        preserves_complement: map.apply(&m)?.same_space(&m),
        maps_a_onto_b: map.apply(&a.space)?.same_space(&b.space),
    })
}

/// Separates two subalgebras by fingerprint, up to transpose when
/// antiautomorphisms are in play, falling back to an exhaustive sweep of the
/// finite stabilizer groups.
fn separate(a: &Subject, b: &Subject) -> Result<PairCheck> {
    let plain = a.fp.differences(&b.fp, false);
    let twisted = a.fp.differences(&b.fp, true);
    let mut check = PairCheck {
        a: a.id.clone(),
        b: b.id.clone(),
        separated_by_automorphisms: !plain.is_empty(),
        separated: !twisted.is_empty(),
        justification: String::new(),
        counterexample: None,
    };
    if !twisted.is_empty() {
        check.justification = format!(
            "fingerprints differ up to transpose in {}",
            twisted.join(", ")
        );
        return Ok(check);
    }
    if a.complement_id.is_empty() || a.complement_id != b.complement_id {
        check.justification = "fingerprints agree up to transpose and no sweep applies".to_string();
        return Ok(check);
    }
    let mut auto_hit = false;
    let mut any_hit = Vec::new();
    let mut orders = Vec::new();
    for p in SWEEP_PRIMES {
        let r = group_sweep(&a.complement_id, &a.gens, &b.gens, p)?;
        orders.push(format!("{} over F_{p}", r.group_order));
        auto_hit |= r.mapped_by_automorphism;
        if let Some(w) = &r.witness {
            any_hit.push(p);
            if check.counterexample.as_ref().is_none_or(|c| !c.verified()) {
                check.counterexample = Some(lift_witness(w, p, a, b)?);
            }
        }
    }
    check.separated_by_automorphisms &= !auto_hit;
    check.separated = any_hit.is_empty();
    let prefix = if plain.is_empty() {
        "fingerprints agree".to_string()
    } else {
        format!(
            "fingerprints differ only without transposing ({})",
            plain.join(", ")
        )
    };
    check.justification = if check.separated {
        format!(
            "{prefix}; no automorphism or antiautomorphism preserving {} maps one onto the other (group orders {})",
            a.complement_id,
            orders.join(", ")
        )
    } else {
        let lifted = match &check.counterexample {
            Some(c) if c.verified() => {
                format!("; the witness lifts to an exact {:?} over Q", c.kind)
            }
            _ => String::new(),
        };
        format!(
            "{prefix}; an element of the stabilizer of {} maps one onto the other over F_p for p in {any_hit:?}{lifted}",
            a.complement_id
        )
    };
    Ok(check)
}

fn all_pairs(subjects: &[Subject]) -> Result<Vec<PairCheck>> {
    let mut out = Vec::new();
    for (i, a) in subjects.iter().enumerate() {
        for b in &subjects[i + 1..] {
            out.push(separate(a, b)?);
        }
    }
    Ok(out)
}

fn subjects(cat: &[CatalogEntry], ids: &[&str]) -> Result<Vec<Subject>> {
    ids.iter().map(|id| entry_subject(cat, id)).collect()
}

fn by_id<'a>(s: &'a [Subject], id: &str) -> &'a Fingerprint {
    &s.iter().find(|x| x.id == id).expect("subject listed").fp
}

fn remark1(cat: &[CatalogEntry]) -> Result<RemarkReport> {
    let ids = ["R1", "R2", "R3", "R4", "R5", "R6", "R7"];
    let types = [
        TwoDimType::D1,
        TwoDimType::D2,
        TwoDimType::D3,
        TwoDimType::D4,
        TwoDimType::D5,
        TwoDimType::D6,
        TwoDimType::D7,
    ];
    let subs = subjects(cat, &ids)?;
    let mut facts = Vec::new();
    let mut kinds = Vec::new();
    for (s, t) in subs.iter().zip(types) {
        let got = classify_2dim(&s.space)?;
        facts.push(fact(
            format!("{} is of type {t} (found {got})", s.id),
            got == t,
        ));
        kinds.push(got);
    }
    let r5 = idempotents(&subs[4].space)?.ranks();
    let r6 = idempotents(&subs[5].space)?.ranks();
    facts.push(fact(
        format!("idempotent ranks of R5 {r5:?} and R6 {r6:?} are disjoint"),
        r5.iter().all(|r| !r6.contains(r)),
    ));
    let mut pairs = Vec::new();
    for i in 0..subs.len() {
        for j in i + 1..subs.len() {
            let distinct = kinds[i] != kinds[j];
            let mut check = separate(&subs[i], &subs[j])?;
            if distinct {
                check.separated = true;
                check.separated_by_automorphisms = true;
                check.justification = format!(
                    "types {} and {}; {}",
                    kinds[i], kinds[j], check.justification
                );
            }
            pairs.push(check);
        }
    }
    Ok(RemarkReport {
        remark: 1,
        facts,
        pairs,
    })
}

fn remark3(cat: &[CatalogEntry]) -> Result<RemarkReport> {
    let ids = ["T1", "T2", "T3", "T4", "T5", "T6"];
    let subs = subjects(cat, &ids)?;
    let f = |id| by_id(&subs, id);
    let facts = vec![
        fact(
            "T1 is the only nilpotent one",
            ids.iter()
                .all(|id| (f(id).rad_dims[0] == f(id).dim) == (*id == "T1")),
        ),
        fact(
            "T2 and T3 are the only ones with a one-dimensional semisimple part",
            ids.iter()
                .all(|id| (f(id).ss_dim == 1) == (*id == "T2" || *id == "T3")),
        ),
        fact(
            "T2 has a nonzero annihilator and T3 does not",
            f("T2").ann_dim > 0 && f("T3").ann_dim == 0,
        ),
        fact(
            "T4, T5 and T6 have a one-dimensional radical",
            ["T4", "T5", "T6"].iter().all(|id| f(id).rad_dims[0] == 1),
        ),
        fact(
            "T5 is unital and T4, T6 are not",
            f("T5").has_unit && !f("T4").has_unit && !f("T6").has_unit,
        ),
        fact(
            "T4 and T6 are antiisomorphic by fingerprint",
            f("T4").transposed() == *f("T6"),
        ),
    ];
    Ok(RemarkReport {
        remark: 3,
        facts,
        pairs: all_pairs(&subs)?,
    })
}

fn remark4() -> Result<RemarkReport> {
    let subs: Vec<Subject> = FIVE_DIM_IDS
        .iter()
        .map(|id| complement_subject(id))
        .collect::<Result<_>>()?;
    let f = |id| by_id(&subs, id);
    let only = |pred: &dyn Fn(&Fingerprint) -> bool, want: &[&str]| {
        FIVE_DIM_IDS
            .iter()
            .all(|id| pred(f(id)) == want.contains(id))
    };
    let facts = vec![
        fact(
            "L5-1 is the only semisimple one",
            only(&|x| x.rad_dims[0] == 0, &["L5-1"]),
        ),
        fact(
            "L5-2 is the only one with a two-dimensional radical",
            only(&|x| x.rad_dims[0] == 2, &["L5-2"]),
        ),
        fact(
            "M1 and M2 are the only non-unital ones",
            only(&|x| !x.has_unit, &["M1", "M2"]),
        ),
        fact(
            "M1 has an idempotent annihilating rad² and M2 has none",
            f("M1").idempotent_kills_rad2 && !f("M2").idempotent_kills_rad2,
        ),
        fact(
            "L5-6 has an idempotent annihilating rad² and L5-3 has none",
            f("L5-6").idempotent_kills_rad2 && !f("L5-3").idempotent_kills_rad2,
        ),
    ];
    Ok(RemarkReport {
        remark: 4,
        facts,
        pairs: all_pairs(&subs)?,
    })
}

fn remark6(cat: &[CatalogEntry]) -> Result<RemarkReport> {
    let ids = ["X1", "X2", "X3", "X4", "X5", "X6", "X7"];
    let subs = subjects(cat, &ids)?;
    let f = |id| by_id(&subs, id);
    let facts = vec![
        fact(
            "X5 is the only semisimple one",
            ids.iter()
                .all(|id| (f(id).rad_dims[0] == 0) == (*id == "X5")),
        ),
        fact(
            "the radical is three-dimensional in X1 to X4 but not in X6, X7",
            ["X1", "X2", "X3", "X4"]
                .iter()
                .all(|id| f(id).rad_dims[0] == 3)
                && ["X6", "X7"].iter().all(|id| f(id).rad_dims[0] != 3),
        ),
        fact(
            "X3 has a one-sided unit and X1, X2, X4 do not",
            one_sided_unit(f("X3")) && ["X1", "X2", "X4"].iter().all(|id| !one_sided_unit(f(id))),
        ),
        fact(
            "idempotent ranks of X4 differ from those of X1 and X2",
            f("X4").idempotent_ranks != f("X1").idempotent_ranks
                && f("X4").idempotent_ranks != f("X2").idempotent_ranks,
        ),
        fact(
            "X1 has an idempotent annihilating rad² and X2 has none",
            f("X1").idempotent_kills_rad2 && !f("X2").idempotent_kills_rad2,
        ),
        fact(
            "the radical of X6 lies in its left annihilator",
            f("X6").rad_in_left_ann,
        ),
        fact(
            "the radical of X7 lies in neither annihilator",
            !f("X7").rad_in_left_ann && !f("X7").rad_in_right_ann,
        ),
    ];
    Ok(RemarkReport {
        remark: 6,
        facts,
        pairs: all_pairs(&subs)?,
    })
}

fn remark7(cat: &[CatalogEntry]) -> Result<RemarkReport> {
    let ids = ["Z1", "Z2", "Z3", "Z4"];
    let subs = subjects(cat, &ids)?;
    let f = |id| by_id(&subs, id);
    let facts = vec![
        fact(
            "the radical is three-dimensional in Z1, Z3 but not in Z2, Z4",
            f("Z1").rad_dims[0] == 3
                && f("Z3").rad_dims[0] == 3
                && f("Z2").rad_dims[0] != 3
                && f("Z4").rad_dims[0] != 3,
        ),
        fact(
            "Z3 has a one-sided unit and Z1 does not",
            one_sided_unit(f("Z3")) && !one_sided_unit(f("Z1")),
        ),
        fact(
            "the radical of Z4 lies in its left annihilator",
            f("Z4").rad_in_left_ann,
        ),
        fact(
            "the radical of Z2 lies in neither annihilator",
            !f("Z2").rad_in_left_ann && !f("Z2").rad_in_right_ann,
        ),
    ];
    Ok(RemarkReport {
        remark: 7,
        facts,
        pairs: all_pairs(&subs)?,
    })
}

/// Checks Remarks 1, 3, 4, 6 and 7 on the built-in catalog.
pub fn verify_remarks() -> Result<Vec<RemarkReport>> {
    let cat = builtin_catalog();
    Ok(vec![
        remark1(&cat)?,
        remark3(&cat)?,
        remark4()?,
        remark6(&cat)?,
        remark7(&cat)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remarks_other_than_three_hold() {
        for r in verify_remarks().unwrap() {
            if r.remark != 3 {
                assert!(r.passed(), "{}", serde_json::to_string_pretty(&r).unwrap());
            }
        }
    }

    #[test]
    fn t4_t6_are_separated_only_by_automorphisms() {
        let r = verify_remarks().unwrap();
        let r3 = r.iter().find(|r| r.remark == 3).unwrap();
        assert!(r3.facts.iter().all(|f| f.holds));
        for p in &r3.pairs {
            assert!(p.separated_by_automorphisms, "{p:?}");
            let is_t4_t6 = p.a == "T4" && p.b == "T6";
            assert_eq!(p.separated, !is_t4_t6, "{p:?}");
        }
        let pair = r3
            .pairs
            .iter()
            .find(|p| p.a == "T4" && p.b == "T6")
            .unwrap();
        let c = pair.counterexample.as_ref().unwrap();
        assert_eq!(c.kind, MapKind::Antiautomorphism);
        assert!(c.verified(), "{c:?}");
    }
}
