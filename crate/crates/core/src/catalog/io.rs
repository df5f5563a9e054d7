//! JSON catalog files.
//!
//! Layout: `{"schema_version": 1, "entries": [...]}` where each entry has
//! `id`, `theorem`, `complement_id`, `s_generators` (3×3 arrays of grammar
//! strings), `params`, `constraints` (`nonzero`, `not_both_zero`),
//! `unital_component` and `notes`.

use std::path::Path;

use serde_json::{json, Map, Value};

use super::{CatalogEntry, UnitalComponent};
use crate::error::{Error, Result};
use crate::exact::{parse_poly, ConstraintSet, MultiPoly};
use crate::matrix::Mat3;

pub const SCHEMA_VERSION: u64 = 1;

pub fn to_json(entries: &[CatalogEntry]) -> Value {
    let list: Vec<Value> = entries.iter().map(entry_json).collect();
    json!({ "schema_version": SCHEMA_VERSION, "entries": list })
}

fn entry_json(e: &CatalogEntry) -> Value {
    let gens: Vec<[[String; 3]; 3]> = e.s_generators.iter().map(Mat3::to_strings).collect();
    let nonzero: Vec<String> = e
        .constraints
        .nonzero
        .iter()
        .map(|p| p.to_string())
        .collect();
    let pairs: Vec<[String; 2]> = e
        .constraints
        .not_both_zero
        .iter()
        .map(|(a, b)| [a.to_string(), b.to_string()])
        .collect();
    json!({
        "id": e.id,
        "theorem": e.theorem,
        "complement_id": e.complement_id,
        "s_generators": gens,
        "params": e.params,
        "constraints": { "nonzero": nonzero, "not_both_zero": pairs },
        "unital_component": e.unital_component,
        "notes": e.notes,
    })
}

pub fn to_string(entries: &[CatalogEntry]) -> String {
    serde_json::to_string_pretty(&to_json(entries)).expect("catalog serializes") + "\n"
}

pub fn save(path: &Path, entries: &[CatalogEntry]) -> Result<()> {
    std::fs::write(path, to_string(entries))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Vec<CatalogEntry>> {
    from_str(&std::fs::read_to_string(path)?)
}

pub fn from_str(src: &str) -> Result<Vec<CatalogEntry>> {
    let root: Value = serde_json::from_str(src).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::Schema("<root>".into()))?;
    match obj.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => {}
        _ => return Err(Error::Schema("schema_version".into())),
    }
    let list = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("entries".into()))?;
    let ctx = Ctx { src };
    list.iter().map(|v| ctx.entry(v)).collect()
}

struct Ctx<'a> {
    src: &'a str,
}

impl Ctx<'_> {
    /// Parses a grammar string; on failure the position is translated to
    /// the first occurrence of that string literal in the file.
    fn poly(&self, s: &str) -> Result<MultiPoly> {
        parse_poly(s).map_err(|err| match err {
            Error::Parse {
                column, message, ..
            } => {
                let quoted = serde_json::to_string(s).unwrap_or_default();
                let (line, col) = match self.src.find(&quoted) {
                    Some(off) => {
                        let before = &self.src[..off];
                        let line = before.matches('\n').count() + 1;
                        let col = off - before.rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
                        (line, col + column)
                    }
                    None => (0, column),
                };
                Error::Parse {
                    line,
                    column: col,
                    message: format!("in `{s}`: {message}"),
                }
            }
            other => other,
        })
    }

    fn entry(&self, v: &Value) -> Result<CatalogEntry> {
        let o = v
            .as_object()
            .ok_or_else(|| Error::Schema("entries[]".into()))?;
        let id = str_field(o, "id")?.to_string();
        let theorem = o
            .get("theorem")
            .and_then(Value::as_u64)
            .filter(|t| (1..=8).contains(t))
            .ok_or_else(|| Error::Schema("theorem".into()))? as u8;
        let complement_id = str_field(o, "complement_id")?.to_string();
        super::complement(&complement_id).map_err(|_| Error::Schema("complement_id".into()))?;
        let gens = o
            .get("s_generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("s_generators".into()))?;
        let mut s_generators = Vec::new();
        for g in gens {
            s_generators.push(self.matrix(g)?);
        }
        let params: Vec<String> = o
            .get("params")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Schema("params".into()))?
            .iter()
            .map(|p| {
                p.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::Schema("params".into()))
            })
            .collect::<Result<_>>()?;
        let constraints = self.constraints(o.get("constraints"))?;
        for name in constraints.variables() {
            if !params.contains(&name) {
                return Err(Error::Schema("constraints".into()));
            }
        }
        let unital_component: UnitalComponent = o
            .get("unital_component")
            .cloned()
            .and_then(|u| serde_json::from_value(u).ok())
            .ok_or_else(|| Error::Schema("unital_component".into()))?;
        let notes = match o.get("notes") {
            None => String::new(),
            Some(n) => n
                .as_str()
                .ok_or_else(|| Error::Schema("notes".into()))?
                .to_string(),
        };
        Ok(CatalogEntry {
            id,
            theorem,
            s_generators,
            complement_id,
            params,
            constraints,
            unital_component,
            notes,
        })
    }

    fn matrix(&self, v: &Value) -> Result<Mat3<MultiPoly>> {
        let bad = || Error::Schema("s_generators".into());
        let rows = v.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
        let mut coords = Vec::with_capacity(9);
        for r in rows {
            let cells = r.as_array().filter(|c| c.len() == 3).ok_or_else(bad)?;
            for c in cells {
                coords.push(self.poly(c.as_str().ok_or_else(bad)?)?);
            }
        }
        Mat3::from_coords(coords)
    }

    fn constraints(&self, v: Option<&Value>) -> Result<ConstraintSet> {
        let bad = || Error::Schema("constraints".into());
        let o = v.and_then(Value::as_object).ok_or_else(bad)?;
        let mut c = ConstraintSet::new();
        if let Some(list) = o.get("nonzero") {
            for p in list.as_array().ok_or_else(bad)? {
                c.nonzero.push(self.poly(p.as_str().ok_or_else(bad)?)?);
            }
        }
        if let Some(list) = o.get("not_both_zero") {
            for pair in list.as_array().ok_or_else(bad)? {
                let pr = pair.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
                let a = self.poly(pr[0].as_str().ok_or_else(bad)?)?;
                let b = self.poly(pr[1].as_str().ok_or_else(bad)?)?;
                c.not_both_zero.push((a, b));
            }
        }
        Ok(c)
    }
}

fn str_field<'a>(o: &'a Map<String, Value>, name: &str) -> Result<&'a str> {
    o.get(name)
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Schema(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;

    #[test]
    fn round_trip() {
        let cat = builtin_catalog();
        let text = to_string(&cat);
        let back = from_str(&text).unwrap();
        assert_eq!(back.len(), 71);
        assert_eq!(back, cat);
        assert_eq!(to_string(&back), text);
    }

    fn one_entry(gen_cell: &str, with_complement: bool) -> String {
        let comp = if with_complement {
            r#""complement_id": "M7","#
        } else {
            ""
        };
        format!(
            r#"{{"schema_version": 1, "entries": [{{
  "id": "R10", "theorem": 1, {comp}
  "s_generators": [[["0","0","0"],["1","d","1"],["0","{gen_cell}","1"]]],
  "params": ["d", "f"], "constraints": {{"nonzero": ["f"]}},
  "unital_component": "B", "notes": ""
}}]}}"#
        )
    }

    #[test]
    fn division_is_a_parse_error() {
        match from_str(&one_entry("1/f", true)) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 3);
                assert!(message.contains("division"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_complement_is_a_schema_error() {
        match from_str(&one_entry("f", false)) {
            Err(Error::Schema(field)) => assert_eq!(field, "complement_id"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(from_str(&one_entry("f", true)).is_ok());
    }

    #[test]
    fn malformed_json_reports_position() {
        match from_str("{\n  \"schema_version\": 1,\n  \"entries\": [ }") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
