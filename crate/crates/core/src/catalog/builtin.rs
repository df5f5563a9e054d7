use super::{CatalogEntry, ComplementDef, Template, UnitalComponent};
use crate::exact::{parse_poly, ConstraintSet};
use crate::matrix::Mat3;

fn combo(s: &str) -> Mat3<crate::exact::MultiPoly> {
    Mat3::from_combination(s).unwrap_or_else(|e| panic!("builtin generator `{s}`: {e}"))
}

fn complement(id: &str, label: &str, gens: &[&str], unital: bool) -> ComplementDef {
    let generators: Vec<_> = gens
        .iter()
        .map(|g| combo(g).map(|p| p.constant_value().expect("complements are constant")))
        .collect();
    ComplementDef {
        id: id.to_string(),
        label: label.to_string(),
        dim: generators.len(),
        generators,
        unital,
    }
}

/// The fixed subalgebras: the complements of the eight theorems and the
/// six 5-dimensional subalgebras.
pub fn complements() -> Vec<ComplementDef> {
    vec![
        complement(
            "M7",
            "7-dim maximal subalgebra",
            &["e11", "e12", "e13", "e22", "e23", "e32", "e33"],
            true,
        ),
        complement(
            "M6",
            "6-dim non-unital subalgebra",
            &["e12", "e13", "e22", "e23", "e32", "e33"],
            false,
        ),
        complement(
            "U6",
            "upper triangular matrices",
            &["e11", "e12", "e13", "e22", "e23", "e33"],
            true,
        ),
        complement(
            "L5-1",
            "5-dim subalgebra 1",
            &["e11", "e22", "e23", "e32", "e33"],
            true,
        ),
        complement(
            "L5-2",
            "5-dim subalgebra 2",
            &["e11", "e12", "e13", "e22", "e33"],
            true,
        ),
        complement(
            "L5-3",
            "5-dim subalgebra 3",
            &["e11", "e12", "e13", "e23", "e22 + e33"],
            true,
        ),
        complement(
            "M1",
            "5-dim subalgebra 4",
            &["e11", "e12", "e13", "e22", "e23"],
            false,
        ),
        complement(
            "M2",
            "5-dim subalgebra 5",
            &["e11", "e12", "e13", "e23", "e33"],
            false,
        ),
        complement(
            "L5-6",
            "5-dim subalgebra 6",
            &["e11 + e33", "e12", "e13", "e22", "e23"],
            true,
        ),
    ]
}

/// Ids of the six 5-dimensional subalgebras, in list order.
pub const FIVE_DIM_IDS: [&str; 6] = ["L5-1", "L5-2", "L5-3", "M1", "M2", "L5-6"];

struct Spec<'a> {
    id: &'a str,
    gens: &'a [&'a str],
    nonzero: &'a [&'a str],
    notes: &'a str,
}

const fn plain<'a>(id: &'a str, gens: &'a [&'a str]) -> Spec<'a> {
    Spec {
        id,
        gens,
        nonzero: &[],
        notes: "",
    }
}

const R10_NOTE: &str = "first generator multiplied by f to clear the entry 1/f";

const THEOREM1: &[Spec] = &[
    plain("R1", &["e21", "e31"]),
    plain("R2", &["e21", "e31 + e23"]),
    plain("R3", &["e21 + e22", "e31"]),
    plain("R4", &["e21 + e22 + e33", "e31 + e32"]),
    plain("R5", &["e21 + e22 + e33", "e31"]),
    plain("R6", &["e21 + e22", "e31 + e32"]),
    plain("R7", &["e21 + e22", "e31 + e33"]),
    Spec {
        id: "R8",
        gens: &["e21 + (1 - y)*e22 + e23", "e31 + e22 + e23 + y*e33"],
        nonzero: &["y"],
        notes: "",
    },
    Spec {
        id: "R9",
        gens: &["e21 + e22 + e33", "e31 + e32 + e23 + y*e33"],
        nonzero: &["y"],
        notes: "",
    },
    Spec {
        id: "R10",
        gens: &[
            "f*e21 + f*d*e22 + f*e23 + e32 + f*e33",
            "e22 + f*e23 + e31 + e32 + (1 + f*(1 - d))*e33",
        ],
        nonzero: &["f"],
        notes: R10_NOTE,
    },
];

const THEOREM2_EXTRA: &[Spec] = &[
    plain(
        "S11",
        &[
            "E",
            "e21 + e13 + d*e23 + e32",
            "e31 + e12 + e23 + d*(e22 + e33)",
        ],
    ),
    Spec {
        id: "S12",
        gens: &[
            "E",
            "(e*u - 1)*e13 + e21 + e22 + e23 + e*e32 + e33",
            "(e*u - 1)*e12 + e22 + u*e23 + e31 + e32 + e33",
        ],
        nonzero: &["e", "e*u - 1"],
        notes: "",
    },
];

const THEOREM3: &[Spec] = &[
    plain("T1", &["e21", "e31", "e32"]),
    plain("T2", &["e21 + e22", "e31", "e32"]),
    plain("T3", &["e21 + e22 + e33", "e31", "e32"]),
    plain("T4", &["e21 + e22", "e11 + e22 + e31", "e31 + e32"]),
    plain("T5", &["e21 + e22", "e11 + e22 + e31", "e12 + e21 + e32"]),
    plain(
        "T6",
        &[
            "e21 + e22 + e13 - e23 + e33",
            "e11 + e22 + e31",
            "e12 - e22 + e32",
        ],
    ),
];

const U7_NOTE: &str =
    "generators as derived in the proof: e21 + e22 where the statement prints e12 + e22, \
     and m(m + 1) where the statement prints m(m - 1)";
const U8_NOTE: &str =
    "second generator e21 + e22 - e23 as derived in the proof; the statement prints e12 + e22 - e32";

const THEOREM4: &[Spec] = &[
    plain("U1", &["E", "e21", "e31", "e32"]),
    plain("U2", &["E", "e21 + e22", "e31", "e32"]),
    plain("U3", &["E", "e21", "e31", "e32 + e22"]),
    plain(
        "U4",
        &["E", "e21 + e22", "e31 + e13 - e23", "e11 + e12 + e31 + e32"],
    ),
    plain(
        "U5",
        &["E", "e21", "e31", "e11 + p*e22 + (1 - p)*e23 + e32"],
    ),
    plain(
        "U6",
        &[
            "E",
            "e21 - e23",
            "e31 + e11 - e13 - e33",
            "e11 + e12 - e13 + p*e22 + (1 - p)*e23 + e32",
        ],
    ),
    Spec {
        id: "U7",
        gens: &[
            "E",
            "e21 + e22",
            "e31 + m*(m + 1)*(e13 - e23) - e33",
            "e31 + e32 + (m + 1)*(e11 + e12)",
        ],
        nonzero: &[],
        notes: U7_NOTE,
    },
    Spec {
        id: "U8",
        gens: &[
            "E",
            "e21 + e22 - e23",
            "(m - p + 1)*(e11 + e12 - e13) + e31 + e32 - e33",
            "e11 + e31 + (m - 1)*(m - p + 1)*e13 - m*(m - p)*e23 + (p - 1)*e33",
        ],
        nonzero: &[],
        notes: U8_NOTE,
    },
];

const THEOREM5: &[Spec] = &[
    plain(
        "V1",
        &[
            "e21 - e23",
            "e11 + e22 + e31",
            "e12 + e32",
            "e13 + e22 + e33",
        ],
    ),
    plain(
        "V2",
        &[
            "e21 - e23",
            "e11 + e22 + e31",
            "e12 + e23 + e32",
            "e13 + e22 + e33",
        ],
    ),
    plain("V3", &["e21 - e23", "e11 + e31", "e12 + e32", "e13 + e33"]),
    plain(
        "V4",
        &["e21 + e22 - e23", "e11 + e31", "e12 + e32", "e13 + e33"],
    ),
    plain(
        "V5",
        &[
            "e21 - e23",
            "e11 + e22 + e31",
            "e12 + e22 + s*e23 + e32",
            "e13 + e22 + e33",
        ],
    ),
    plain(
        "V6",
        &[
            "e21 + b*e22 - (b + 1)*e23",
            "e11 + e21 + e31",
            "e12 + e22 + e32",
            "e13 + e23 + e33",
        ],
    ),
];

const THEOREM6: &[Spec] = &[
    plain("X1", &["e21", "e22", "e31", "e32"]),
    plain("X2", &["e21", "e31", "e32", "e33"]),
    plain("X3", &["e21", "e31", "e32", "e11 + e22"]),
    plain("X4", &["e21", "e31", "e32", "e11 + e33"]),
    plain("X5", &["e11 + e31", "e12 + e32", "e21", "e22"]),
    plain("X6", &["e21 + e12", "e31", "e32", "e11 + e22"]),
    plain("X7", &["e21 + e22", "e31", "e32", "e33"]),
];

const THEOREM7: &[Spec] = &[
    plain("Y1", &["e21", "e31", "e32 + e33", "e22 + e23"]),
    plain("Y2", &["e21", "e31", "e22 + e32", "e23 + e33"]),
    plain("Y3", &["e21", "e31", "e11 + e22 + e23", "e11 + e32 + e33"]),
    plain("Y4", &["e21", "e31", "e11 + e22 + e32", "e11 + e23 + e33"]),
    plain("Y5", &["e21 + e22", "e31 - e33", "e32 + e33", "e22 + e23"]),
    plain(
        "Y6",
        &[
            "e21 - e31",
            "e12 + e13 + e31",
            "e11 + e32 + e33",
            "e11 + e22 + e23",
        ],
    ),
    plain(
        "Y7",
        &[
            "e21 - e23",
            "e11 + e21 + e31",
            "e12 + e22 + e32",
            "e13 + e23 + e33",
        ],
    ),
    plain(
        "Y8",
        &[
            "e21 + e22 + e33",
            "e21 + e31",
            "e11 + e12 - e13 + e22 + e32",
            "e22 - e23 + e32 - e33",
        ],
    ),
    plain(
        "Y9",
        &[
            "e21 + e22 - (x + 1)*e23",
            "x*e11 + e21 + e31",
            "x*e12 + e22 + e32",
            "x*e13 + e23 + e33",
        ],
    ),
    plain(
        "Y10",
        &[
            "e21 + d*e22",
            "e11 + e31 + d*(e12 + e32)",
            "e22 + e23",
            "e12 + e13 + e32 + e33",
        ],
    ),
    plain(
        "Y11",
        &[
            "e21 - e31 + e22 + e33",
            "c*(e12 + e13) + e21 + e22",
            "e11 + e12 + e32 + e33",
            "e11 - e13 + e22 + e23",
        ],
    ),
];

const THEOREM8: &[Spec] = &[
    plain("Z1", &["e11", "e21", "e31", "e32"]),
    plain("Z2", &["e11", "e21", "e31", "e32 + e33"]),
    plain("Z3", &["e11 + e22", "e21", "e31", "e32"]),
    plain("Z4", &["e11 + e22", "e21 + e12", "e31", "e32"]),
];

fn build(
    theorem: u8,
    complement_id: &str,
    unital: UnitalComponent,
    spec: &Spec,
    id: String,
) -> CatalogEntry {
    let s_generators: Vec<_> = spec.gens.iter().map(|g| combo(g)).collect();
    let constraints = ConstraintSet::with_nonzero(
        spec.nonzero
            .iter()
            .map(|p| parse_poly(p).expect("builtin constraint")),
    );
    let mut params: Vec<String> = s_generators.iter().flat_map(|g| g.variables()).collect();
    params.sort();
    params.dedup();
    CatalogEntry {
        id,
        theorem,
        s_generators,
        complement_id: complement_id.to_string(),
        params,
        constraints,
        unital_component: unital,
        notes: spec.notes.to_string(),
    }
}

/// All 71 classified decompositions.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    use UnitalComponent::{B, S};
    let mut out = Vec::new();
    for s in THEOREM1 {
        out.push(build(1, "M7", B, s, s.id.to_string()));
    }
    for s in THEOREM1 {
        let mut gens = vec!["E"];
        gens.extend_from_slice(s.gens);
        let id = format!("S{}", &s.id[1..]);
        let spec = Spec {
            id: &id,
            gens: &gens,
            nonzero: s.nonzero,
            notes: s.notes,
        };
        out.push(build(2, "M6", S, &spec, id.clone()));
    }
    for s in THEOREM2_EXTRA {
        out.push(build(2, "M6", S, s, s.id.to_string()));
    }
    for s in THEOREM3 {
        out.push(build(3, "U6", B, s, s.id.to_string()));
    }
    for m in ["M1", "M2"] {
        for s in THEOREM4 {
            // the two cases coincide over M2 and only U2 is kept
            if m == "M2" && s.id == "U3" {
                continue;
            }
            out.push(build(4, m, S, s, format!("{}@{m}", s.id)));
        }
    }
    for (theorem, comp, list) in [
        (5, "L5-1", THEOREM5),
        (6, "L5-3", THEOREM6),
        (7, "L5-2", THEOREM7),
        (8, "L5-6", THEOREM8),
    ] {
        for s in list {
            out.push(build(theorem, comp, B, s, s.id.to_string()));
        }
    }
    out
}

/// The seven 2-dimensional algebra types, as nonzero products of basis
/// elements e1, e2 (indices 0 and 1).
pub fn templates() -> Vec<Template> {
    let t = |id: &str, name: &str, products: &[(usize, usize, [i64; 2])]| Template {
        id: id.to_string(),
        name: name.to_string(),
        products: products.to_vec(),
    };
    vec![
        t("D1", "N+N", &[]),
        t("D2", "N^2", &[(0, 0, [0, 1])]),
        t("D3", "F+N", &[(0, 0, [1, 0])]),
        t(
            "D4",
            "F x N unital",
            &[(0, 0, [1, 0]), (0, 1, [0, 1]), (1, 0, [0, 1])],
        ),
        t("D5", "F x N left unital", &[(0, 0, [1, 0]), (0, 1, [0, 1])]),
        t(
            "D6",
            "F x N right unital",
            &[(0, 0, [1, 0]), (1, 0, [0, 1])],
        ),
        t("D7", "F+F", &[(0, 0, [1, 0]), (1, 1, [0, 1])]),
    ]
}
