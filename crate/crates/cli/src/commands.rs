use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};

use m3decomp::catalog::{self, builtin_catalog, find, CatalogEntry};
use m3decomp::invariants::{classify_2dim, fingerprint};
use m3decomp::rota_baxter::{entry_operators, verify_rb_all};
use m3decomp::search::{
    builtin_patterns, coverage_report, pattern, soundness_report, SearchOptions,
};
use m3decomp::verifier::{
    compare_with_printed, derive_closure_system, sample_assignment, verify_all, verify_remarks,
    Mode,
};

use crate::output::{Failure, Outcome, Table};
use crate::{DeriveArgs, InvariantsArgs, ModeArg, RbArgs, SearchArgs, Selection, VerifyArgs};

/// Environment variable naming a catalog JSON file to use instead of the
/// built-in one.
pub const CATALOG_ENV: &str = "M3DECOMP_CATALOG";

struct Catalog {
    entries: Vec<CatalogEntry>,
    origin: String,
}

fn load_catalog() -> Result<Catalog, Failure> {
    match std::env::var_os(CATALOG_ENV) {
        Some(path) => {
            let path = PathBuf::from(path);
            let entries = catalog::io::load(&path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(Catalog {
                entries,
                origin: path.display().to_string(),
            })
        }
        None => Ok(Catalog {
            entries: builtin_catalog(),
            origin: "builtin".to_string(),
        }),
    }
}

fn select(cat: &Catalog, sel: &Selection) -> Result<Vec<CatalogEntry>, Failure> {
    if sel.all {
        return Ok(cat.entries.clone());
    }
    if sel.entry.is_empty() {
        return Err(Failure::Usage(
            "pass --all or at least one --entry".to_string(),
        ));
    }
    sel.entry
        .iter()
        .map(|id| find(&cat.entries, id).cloned().map_err(Failure::from))
        .collect()
}

fn selection_json(sel: &Selection) -> Value {
    if sel.all {
        json!("all")
    } else {
        json!(sel.entry)
    }
}

fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "FAIL" }.to_string()
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    let mode = match (a.mode, a.seed) {
        (ModeArg::Symbolic, _) => Mode::Symbolic,
        (ModeArg::Specialized, Some(seed)) => Mode::Specialized { n: a.n, seed },
        (ModeArg::Specialized, None) => {
            return Err(Failure::Usage(
                "--seed is required with --mode specialized".to_string(),
            ))
        }
    };
    let cat = load_catalog()?;
    let entries = select(&cat, &a.select)?;
    let reports = verify_all(&entries, mode)?;
    let mut table = Table::new(&[
        "entry",
        "closure_s",
        "closure_b",
        "direct_sum",
        "unital",
        "method",
    ]);
    let mut failures = Vec::new();
    for r in &reports {
        let method = match r.method {
            m3decomp::verifier::Method::Symbolic => "symbolic".to_string(),
            m3decomp::verifier::Method::Specialized { count, seed } => {
                format!("specialized n={count} seed={seed}")
            }
        };
        table.push(vec![
            r.entry_id.clone(),
            format!("{:?}", r.closure_s).to_lowercase(),
            format!("{:?}", r.closure_b).to_lowercase(),
            format!("{:?}", r.direct_sum).to_lowercase(),
            format!("{:?}", r.unital).to_lowercase(),
            if r.downgraded {
                format!("{method} (downgraded)")
            } else {
                method
            },
        ]);
        if !r.passed() {
            failures.push(format!("{}: {}", r.entry_id, r.failures.join("; ")));
        }
    }
    Ok(Outcome {
        command: "verify",
        config: json!({
            "catalog": cat.origin,
            "selection": selection_json(&a.select),
            "mode": format!("{:?}", a.mode).to_lowercase(),
            "n": a.n,
            "seed": a.seed,
        }),
        results: serde_json::to_value(&reports).expect("serializable"),
        failures,
        table,
        document: None,
    })
}

pub fn search(a: &SearchArgs) -> Result<Outcome, Failure> {
    if ![2, 3, 5].contains(&a.prime) {
        return Err(Failure::Usage(format!(
            "--prime must be 2, 3 or 5, got {}",
            a.prime
        )));
    }
    let cat = load_catalog()?;
    let patterns = if a.pattern == "all" {
        builtin_patterns()
    } else {
        vec![pattern(&a.pattern)?]
    };
    let opts = SearchOptions {
        use_fixed_zeros: !a.full_cube,
        node_limit: a.node_limit,
    };
    let mut failures = Vec::new();
    let mut table = Table::new(&[
        "pattern",
        "prime",
        "solutions",
        "orbits",
        "matched",
        "explained",
        "group",
        "sound",
    ]);
    let mut coverage = Vec::new();
    let mut soundness = Vec::new();
    for pat in &patterns {
        let r = coverage_report(pat, a.prime, &opts, &cat.entries)?;
        for f in &r.soundness_failures {
            failures.push(format!("{} over F_{}: {f}", r.pattern, r.prime));
        }
        for (rep, ok) in r.unmatched_reps.iter().zip(&r.unmatched_explained) {
            if !*ok {
                failures.push(format!(
                    "{} over F_{}: unmatched orbit {rep:?} over letters {}",
                    r.pattern,
                    r.prime,
                    r.letters.join("")
                ));
            }
        }
        let explained = r.unmatched_explained.iter().filter(|b| **b).count();
        table.push(vec![
            r.pattern.clone(),
            r.prime.to_string(),
            r.total_solutions.to_string(),
            r.orbit_count.to_string(),
            r.matched.to_string(),
            format!("{explained}/{}", r.unmatched_reps.len()),
            r.group_order.to_string(),
            verdict(r.sound()),
        ]);
        coverage.push(r);
        if a.soundness {
            let s = soundness_report(pat, a.prime, a.node_limit, &cat.entries)?;
            for f in &s.failures {
                failures.push(format!("{} over F_{} (full cube): {f}", s.pattern, s.prime));
            }
            soundness.push(s);
        }
    }
    Ok(Outcome {
        command: "search",
        config: json!({
            "catalog": cat.origin,
            "pattern": a.pattern,
            "prime": a.prime,
            "full_cube": a.full_cube,
            "soundness": a.soundness,
            "node_limit": a.node_limit,
        }),
        results: json!({ "coverage": coverage, "soundness": soundness }),
        failures,
        table,
        document: None,
    })
}

pub fn invariants(a: &InvariantsArgs) -> Result<Outcome, Failure> {
    if a.remarks {
        return remarks();
    }
    let cat = load_catalog()?;
    let entries = select(&cat, &a.select)?;
    let rows: Vec<Result<Value, Failure>> = entries
        .par_iter()
        .map(|e| {
            let values = sample_assignment(e, a.seed)?.ok_or_else(|| {
                Failure::Check(format!("{}: no constraint-satisfying assignment", e.id))
            })?;
            let (s, _) = e.specialize(&values)?;
            let fp = fingerprint(&s)?;
            let kind = if s.dim() == 2 {
                Some(classify_2dim(&s)?.to_string())
            } else {
                None
            };
            let assignment: serde_json::Map<String, Value> = values
                .iter()
                .map(|(k, v)| (k.clone(), json!(v.to_string())))
                .collect();
            Ok(json!({
                "entry": e.id,
                "assignment": assignment,
                "fingerprint": fp,
                "two_dim_type": kind,
            }))
        })
        .collect();
    let rows: Vec<Value> = rows.into_iter().collect::<Result<_, _>>()?;
    let mut table = Table::new(&[
        "entry",
        "dim",
        "rad",
        "ss",
        "unit",
        "ann",
        "idempotent ranks",
        "type",
    ]);
    for r in &rows {
        let fp = &r["fingerprint"];
        let unit = if fp["has_unit"] == json!(true) {
            "two-sided"
        } else if fp["has_left_unit"] == json!(true) {
            "left"
        } else if fp["has_right_unit"] == json!(true) {
            "right"
        } else {
            "none"
        };
        table.push(vec![
            r["entry"].as_str().unwrap_or_default().to_string(),
            fp["dim"].to_string(),
            fp["rad_dims"].to_string(),
            fp["ss_dim"].to_string(),
            unit.to_string(),
            fp["ann_dim"].to_string(),
            fp["idempotent_ranks"].to_string(),
            r["two_dim_type"].as_str().unwrap_or("-").to_string(),
        ]);
    }
    Ok(Outcome {
        command: "invariants",
        config: json!({
            "catalog": cat.origin,
            "selection": selection_json(&a.select),
            "seed": a.seed,
        }),
        results: Value::Array(rows),
        failures: Vec::new(),
        table,
        document: None,
    })
}

fn remarks() -> Result<Outcome, Failure> {
    let reports = verify_remarks()?;
    let mut table = Table::new(&["remark", "subject", "result", "detail"]);
    let mut failures = Vec::new();
    for r in &reports {
        for f in &r.facts {
            table.push(vec![
                r.remark.to_string(),
                f.statement.clone(),
                verdict(f.holds),
                String::new(),
            ]);
            if !f.holds {
                failures.push(format!("remark {}: {}", r.remark, f.statement));
            }
        }
        for p in &r.pairs {
            let subject = format!("{} vs {}", p.a, p.b);
            table.push(vec![
                r.remark.to_string(),
                subject.clone(),
                verdict(p.separated),
                p.justification.clone(),
            ]);
            if !p.separated {
                failures.push(format!(
                    "remark {}: {subject} not separated: {}",
                    r.remark, p.justification
                ));
            }
        }
    }
    Ok(Outcome {
        command: "invariants",
        config: json!({ "remarks": true }),
        results: serde_json::to_value(&reports).expect("serializable"),
        failures,
        table,
        document: None,
    })
}

pub fn rb(a: &RbArgs) -> Result<Outcome, Failure> {
    let cat = load_catalog()?;
    let entries = select(&cat, &a.select)?;
    let reports = verify_rb_all(&entries)?;
    let mut table = Table::new(&[
        "entry",
        "identity",
        "complement",
        "R + R~ = -lambda Id",
        "denominator",
    ]);
    let mut failures = Vec::new();
    for r in &reports {
        table.push(vec![
            r.entry_id.clone(),
            verdict(r.identity.holds),
            verdict(r.complement_identity.holds),
            verdict(r.sum_is_minus_weight),
            r.denominator.clone(),
        ]);
        if !r.passed() {
            failures.push(format!(
                "{}: identity {:?}, complement {:?}, defining property {}, sum {}, denominator certified {}",
                r.entry_id,
                r.identity.witness,
                r.complement_identity.witness,
                r.defining_property,
                r.sum_is_minus_weight,
                r.denominator_certified
            ));
        }
    }
    let mut results = serde_json::to_value(&reports).expect("serializable");
    if a.matrices {
        let ops: Vec<Value> = entries
            .par_iter()
            .map(|e| {
                let pair = entry_operators(e)?;
                Ok(json!({ "r": pair.r.to_json(), "r_tilde": pair.r_tilde.to_json() }))
            })
            .collect::<Result<_, m3decomp::Error>>()?;
        for (rep, op) in results.as_array_mut().expect("array").iter_mut().zip(ops) {
            rep["operators"] = op;
        }
    }
    Ok(Outcome {
        command: "rb",
        config: json!({
            "catalog": cat.origin,
            "selection": selection_json(&a.select),
            "matrices": a.matrices,
        }),
        results,
        failures,
        table,
        document: None,
    })
}

pub fn export() -> Result<Outcome, Failure> {
    let cat = load_catalog()?;
    let mut table = Table::new(&["entry", "theorem", "complement", "params", "unital"]);
    for e in &cat.entries {
        table.push(vec![
            e.id.clone(),
            e.theorem.to_string(),
            e.complement_id.clone(),
            e.params.join(","),
            format!("{:?}", e.unital_component),
        ]);
    }
    Ok(Outcome {
        command: "export",
        config: json!({ "catalog": cat.origin }),
        results: Value::Null,
        failures: Vec::new(),
        table,
        document: Some(catalog::io::to_string(&cat.entries)),
    })
}

pub fn derive_system(a: &DeriveArgs) -> Result<Outcome, Failure> {
    let pat = pattern(&a.pattern)?;
    let fixed = !a.no_fixed_zeros;
    let m = catalog::complement(&pat.complement_id)?.subspace();
    let declared = if fixed { &pat.declared[..] } else { &[] };
    let system = derive_closure_system(&pat.generators_with(fixed), &m, declared)?;
    let mut table = Table::new(&["#", "equation"]);
    for (i, eq) in system.equations.iter().enumerate() {
        table.push(vec![(i + 1).to_string(), format!("{eq} = 0")]);
    }
    let mut failures = Vec::new();
    let comparison = match a.compare_prime {
        Some(_) if !fixed => {
            return Err(Failure::Usage(
                "--compare-prime needs the fixed zeros the printed systems assume".to_string(),
            ))
        }
        Some(p) => {
            let c = compare_with_printed(&pat.name, p, 100_000_000)?;
            if !c.equal() {
                failures.push(format!(
                    "{} over F_{p}: {} points only in the derived system, {} only in the printed one",
                    c.pattern,
                    c.derived_only.len(),
                    c.printed_only.len()
                ));
            }
            table.push(vec![
                "=".to_string(),
                format!(
                    "F_{p} zero sets: derived {}, printed {}, {}",
                    c.derived_solutions,
                    c.printed_solutions,
                    if c.equal() { "equal" } else { "DIFFERENT" }
                ),
            ]);
            Some(c)
        }
        None => None,
    };
    Ok(Outcome {
        command: "derive-system",
        config: json!({
            "pattern": pat.name,
            "fixed_zeros": fixed,
            "compare_prime": a.compare_prime,
        }),
        results: json!({
            "pattern": pat.name,
            "complement_id": pat.complement_id,
            "letters": pat.free_letters(fixed),
            "fixed_zeros": if fixed { pat.fixed_zeros.clone() } else { Vec::new() },
            "raw_count": system.raw_count,
            "equations": system.equations.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "comparison": comparison,
        }),
        failures,
        table,
        document: None,
    })
}
