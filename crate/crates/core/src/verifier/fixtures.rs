//! Reduced closure systems as printed in the source, for comparison with the
//! systems derived here. Products written `X × Y` there are expanded into
//! the individual equations `x·y = 0`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::catalog::complement;
use crate::error::{Error, Result};
use crate::exact::{parse_poly, MultiPoly};
use crate::search::{pattern, solve_mod_p};
use crate::verifier::derive_closure_system;

pub struct PrintedSystem {
    pub pattern: &'static str,
    /// Substitutions stated alongside the system, written as polynomials
    /// that vanish (e.g. `n - g` for `n = g`).
    pub equations: &'static [&'static str],
}

const THEOREM1: &[&str] = &[
    "b",
    "c",
    "q",
    "r",
    "f*(e - s)",
    "f*(g - x)",
    "t*(e - s)",
    "t*(g - x)",
    "f*t - e*g",
    "f*t - s*x",
    "g*(g - d) + f*(e - y)",
    "x*(d - x) + f*(y - s)",
    "s*(s - y) + t*(x - d)",
    "e*(y - e) + t*(d - g)",
    "d*(s - e) + e*x - g*s",
    "y*(g - x) + e*x - g*s",
];

const THEOREM2: &[&str] = &[
    "e*(b - r)",
    "e*(d - t)",
    "e*(f - x)",
    "u*(b - r)",
    "u*(d - t)",
    "u*(f - x)",
    "b*x - f*r",
    "b + d*f - e*u",
    "r + t*x - e*u",
    "b*c - b*f + e*s",
    "r*c - r*x + e*s",
    "b*d - b*y + s*f",
    "r*t - r*y + s*x",
    "f*f - c*f + d*e - e*y",
    "x*x - c*x + t*e - e*y",
    "t*t - t*y + u*x - u*c - s",
    "d*d - d*y + u*f - u*c - s",
    "d*r + s*f - s*x - b*t",
    "r + d*x + c*t - b - f*t - c*d",
    "b + d*x + f*y - r - f*t - x*y",
];

const THEOREM6: &[&str] = &[
    "c",
    "h",
    "i",
    "j",
    "k",
    "m",
    "p",
    "q",
    "s",
    "x",
    "n - g",
    "b*g",
    "d*g",
    "d*y",
    "g*u",
    "b*(u - y)",
    "y*(y + 1)",
    "g*(y + 1)",
    "u*(u - 2*y - 1)",
    "d*u - v*(y + 1)",
    "a*(u - y) - d*u + v",
    "a*d - b*(u + 1)",
];

pub const PRINTED_SYSTEMS: &[PrintedSystem] = &[
    PrintedSystem {
        pattern: "7-2",
        equations: THEOREM1,
    },
    PrintedSystem {
        pattern: "6-3",
        equations: THEOREM2,
    },
    PrintedSystem {
        pattern: "5-4-l3",
        equations: THEOREM6,
    },
];

pub fn printed_system(pattern_name: &str) -> Result<&'static PrintedSystem> {
    let canonical = pattern(pattern_name)?.name;
    PRINTED_SYSTEMS
        .iter()
        .find(|s| s.pattern == canonical)
        .ok_or_else(|| Error::NotSupported(format!("no printed system for pattern {canonical}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemComparison {
    pub pattern: String,
    pub prime: u32,
    pub letters: Vec<String>,
    pub derived_equations: usize,
    pub derived_raw_count: usize,
    pub printed_equations: usize,
    pub derived_solutions: usize,
    pub printed_solutions: usize,
    /// Points of the derived system that the printed one lacks.
    pub derived_only: Vec<Vec<u8>>,
    /// Points of the printed system that the derived one lacks.
    pub printed_only: Vec<Vec<u8>>,
}

impl SystemComparison {
    pub fn equal(&self) -> bool {
        self.derived_only.is_empty() && self.printed_only.is_empty()
    }
}

/// Compares the zero sets over `F_p` of the derived closure system (with the
/// pattern's fixed zeros) and of the printed reduced system.
pub fn compare_with_printed(
    pattern_name: &str,
    p: u32,
    node_limit: u64,
) -> Result<SystemComparison> {
    let pat = pattern(pattern_name)?;
    let fixture = printed_system(pattern_name)?;
    let m = complement(&pat.complement_id)?.subspace();
    let derived = derive_closure_system(&pat.generators_with(true), &m, &pat.declared)?;
    let printed: Vec<MultiPoly> = fixture
        .equations
        .iter()
        .map(|s| parse_poly(s))
        .collect::<Result<_>>()?;
    let letters = pat.free_letters(true);
    let a = solve_mod_p(&derived.equations, &letters, p, node_limit)?;
    let b = solve_mod_p(&printed, &letters, p, node_limit)?;
    let sa: BTreeSet<&Vec<u8>> = a.iter().collect();
    let sb: BTreeSet<&Vec<u8>> = b.iter().collect();
    Ok(SystemComparison {
        pattern: pat.name.clone(),
        prime: p,
        letters,
        derived_equations: derived.equations.len(),
        derived_raw_count: derived.raw_count,
        printed_equations: printed.len(),
        derived_solutions: a.len(),
        printed_solutions: b.len(),
        derived_only: sa.difference(&sb).map(|v| (*v).clone()).collect(),
        printed_only: sb.difference(&sa).map(|v| (*v).clone()).collect(),
    })
}
