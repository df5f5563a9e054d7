//! Generator patterns for complements of each fixed subalgebra, as they open
//! the proofs of the classification theorems.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::complement;
use crate::error::{Error, Result};
use crate::exact::MultiPoly;
use crate::matrix::Mat3;
use crate::verifier::DeclaredProduct;

/// Shape of one pattern cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Zero,
    One,
    Free,
}

#[derive(Clone, Debug)]
pub struct PivotPattern {
    pub name: String,
    pub theorem: u8,
    pub complement_id: String,
    pub generators: Vec<Mat3<MultiPoly>>,
    /// Letters set to zero by a reduction step; the group action recovers
    /// the rest of each orbit.
    pub fixed_zeros: Vec<String>,
    /// Expected product coefficients once the fixed zeros are applied.
    pub declared: Vec<DeclaredProduct>,
}

impl PivotPattern {
    /// Letters in order of first appearance, reading generators row by row.
    pub fn letters(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for g in &self.generators {
            for x in g.coords() {
                for v in x.vars() {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
        }
        out
    }

    /// Letters left free after the optional fixed zeros.
    pub fn free_letters(&self, use_fixed_zeros: bool) -> Vec<String> {
        self.letters()
            .into_iter()
            .filter(|l| !(use_fixed_zeros && self.fixed_zeros.contains(l)))
            .collect()
    }

    /// Generators with the fixed zeros substituted when requested.
    pub fn generators_with(&self, use_fixed_zeros: bool) -> Vec<Mat3<MultiPoly>> {
        if !use_fixed_zeros || self.fixed_zeros.is_empty() {
            return self.generators.clone();
        }
        let subst: BTreeMap<String, MultiPoly> = self
            .fixed_zeros
            .iter()
            .map(|z| (z.clone(), MultiPoly::zero()))
            .collect();
        self.generators
            .iter()
            .map(|g| g.map(|x| x.substitute(&subst)))
            .collect()
    }

    pub fn shapes(&self) -> Vec<[[Cell; 3]; 3]> {
        self.generators
            .iter()
            .map(|g| {
                let mut s = [[Cell::Zero; 3]; 3];
                for (i, row) in s.iter_mut().enumerate() {
                    for (j, c) in row.iter_mut().enumerate() {
                        let x = g.get(i, j);
                        *c = if x.is_zero() {
                            Cell::Zero
                        } else if x.is_constant() {
                            Cell::One
                        } else {
                            Cell::Free
                        };
                    }
                }
                s
            })
            .collect()
    }
}

use crate::exact::Ring;

type Rows = [[&'static str; 3]; 3];

const E: Rows = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]];

struct Spec {
    name: &'static str,
    aliases: &'static [&'static str],
    theorem: u8,
    complement: &'static str,
    gens: &'static [Rows],
    fixed: &'static [&'static str],
    declared: &'static [(usize, usize, &'static [&'static str])],
}

const SPECS: &[Spec] = &[
    Spec {
        name: "7-2",
        aliases: &["thm1"],
        theorem: 1,
        complement: "M7",
        gens: &[
            [["a", "b", "c"], ["1", "d", "e"], ["0", "f", "g"]],
            [["p", "q", "r"], ["0", "s", "t"], ["1", "x", "y"]],
        ],
        fixed: &["a", "p"],
        declared: &[
            (0, 0, &["d", "f"]),
            (1, 1, &["t", "y"]),
            (0, 1, &["e", "g"]),
            (1, 0, &["s", "x"]),
        ],
    },
    Spec {
        name: "6-3",
        aliases: &["thm2"],
        theorem: 2,
        complement: "M6",
        gens: &[
            E,
            [["0", "a", "b"], ["1", "c", "d"], ["0", "e", "f"]],
            [["0", "r", "s"], ["0", "t", "u"], ["1", "x", "y"]],
        ],
        fixed: &["a"],
        declared: &[
            (1, 1, &["0", "c", "e"]),
            (2, 2, &["s", "u", "y"]),
            (1, 2, &["b", "d", "f"]),
            (2, 1, &["r", "t", "x"]),
        ],
    },
    Spec {
        name: "6-3-upper",
        aliases: &["thm3"],
        theorem: 3,
        complement: "U6",
        gens: &[
            [["a", "b", "c"], ["1", "d", "e"], ["0", "0", "f"]],
            [["g", "h", "i"], ["0", "j", "k"], ["1", "0", "l"]],
            [["m", "n", "s"], ["0", "p", "q"], ["0", "1", "r"]],
        ],
        fixed: &["a", "l", "r"],
        declared: &[],
    },
    Spec {
        name: "5-4-m1",
        aliases: &["thm4", "thm4-m1"],
        theorem: 4,
        complement: "M1",
        gens: &[
            E,
            [["a", "b", "c"], ["1", "d", "e"], ["0", "0", "0"]],
            [["g", "h", "i"], ["0", "j", "k"], ["1", "0", "0"]],
            [["m", "n", "s"], ["0", "p", "q"], ["0", "1", "0"]],
        ],
        fixed: &["a"],
        declared: &[],
    },
    Spec {
        // the same shape read against the other non-unital complement
        name: "5-4-m2",
        aliases: &["thm4-m2"],
        theorem: 4,
        complement: "M2",
        gens: &[
            E,
            [["a", "b", "c"], ["1", "0", "d"], ["0", "0", "e"]],
            [["g", "h", "i"], ["0", "0", "k"], ["1", "0", "l"]],
            [["m", "n", "s"], ["0", "0", "q"], ["0", "1", "r"]],
        ],
        fixed: &[],
        declared: &[],
    },
    Spec {
        name: "5-4-l1",
        aliases: &["thm5"],
        theorem: 5,
        complement: "L5-1",
        gens: &[
            [["a", "0", "0"], ["1", "b", "c"], ["0", "d", "e"]],
            [["g", "0", "0"], ["0", "h", "i"], ["1", "j", "k"]],
            [["m", "1", "0"], ["0", "n", "s"], ["0", "p", "q"]],
            [["u", "0", "1"], ["0", "v", "x"], ["0", "y", "z"]],
        ],
        fixed: &["a", "m", "u"],
        declared: &[],
    },
    Spec {
        name: "5-4-l3",
        aliases: &["thm6"],
        theorem: 6,
        complement: "L5-3",
        gens: &[
            [["a", "b", "c"], ["1", "d", "e"], ["0", "0", "d"]],
            [["g", "h", "i"], ["0", "j", "k"], ["1", "0", "j"]],
            [["m", "n", "s"], ["0", "p", "q"], ["0", "1", "p"]],
            [["u", "v", "x"], ["0", "y", "z"], ["0", "0", "y + 1"]],
        ],
        fixed: &["e", "z"],
        declared: &[
            (0, 0, &["a + d", "0", "0", "-b"]),
            (0, 1, &["g", "d", "0", "-h"]),
            (0, 2, &["m", "0", "d", "-n"]),
            (0, 3, &["u", "0", "0", "d - v"]),
            (1, 0, &["j", "a", "b", "c"]),
            (1, 1, &["k", "g + j", "h", "i"]),
            (1, 2, &["0", "m", "j + n", "s - k"]),
            (1, 3, &["0", "u", "v", "j + x"]),
            (2, 0, &["p", "1", "d", "0"]),
            (2, 1, &["q", "p", "j", "k"]),
            (2, 2, &["0", "0", "2*p", "0"]),
            (2, 3, &["0", "0", "y", "p"]),
            (3, 0, &["y", "0", "0", "d"]),
            (3, 1, &["0", "y + 1", "0", "j"]),
            (3, 2, &["0", "0", "y + 1", "p"]),
            (3, 3, &["0", "0", "0", "2*y + 1"]),
        ],
    },
    Spec {
        name: "5-4-l2",
        aliases: &["thm7"],
        theorem: 7,
        complement: "L5-2",
        gens: &[
            [["a", "b", "c"], ["1", "d", "0"], ["0", "0", "e"]],
            [["g", "h", "i"], ["0", "j", "0"], ["1", "0", "k"]],
            [["m", "n", "s"], ["0", "p", "0"], ["0", "1", "q"]],
            [["u", "v", "x"], ["0", "y", "1"], ["0", "0", "z"]],
        ],
        fixed: &["a"],
        declared: &[],
    },
    Spec {
        name: "5-4-l6",
        aliases: &["thm8"],
        theorem: 8,
        complement: "L5-6",
        gens: &[
            [["a", "b", "c"], ["1", "d", "e"], ["0", "0", "a"]],
            [["g", "h", "i"], ["0", "j", "k"], ["1", "0", "g"]],
            [["m", "n", "s"], ["0", "p", "q"], ["0", "1", "m"]],
            [["u", "v", "x"], ["0", "y", "z"], ["0", "0", "u + 1"]],
        ],
        fixed: &["d", "e", "p"],
        declared: &[],
    },
];

fn build(spec: &Spec) -> Result<PivotPattern> {
    complement(spec.complement)?;
    Ok(PivotPattern {
        name: spec.name.to_string(),
        theorem: spec.theorem,
        complement_id: spec.complement.to_string(),
        generators: spec.gens.iter().map(Mat3::parse).collect::<Result<_>>()?,
        fixed_zeros: spec.fixed.iter().map(|s| s.to_string()).collect(),
        declared: spec
            .declared
            .iter()
            .map(|(i, j, c)| DeclaredProduct::parse(*i, *j, c))
            .collect::<Result<_>>()?,
    })
}

pub fn builtin_patterns() -> Vec<PivotPattern> {
    SPECS
        .iter()
        .map(|s| build(s).expect("built-in patterns parse"))
        .collect()
}

/// Looks a pattern up by name or alias (e.g. `7-2` or `thm1`).
pub fn pattern(name: &str) -> Result<PivotPattern> {
    SPECS
        .iter()
        .find(|s| s.name == name || s.aliases.contains(&name))
        .map(build)
        .unwrap_or_else(|| Err(Error::UnknownId(name.to_string())))
}

pub fn pattern_names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}
