//! Manifold model files (JSON).
//!
//! ```json
//! {
//!   "name": "blowup",
//!   "basis": ["L", "E1"],
//!   "gram": [[1, 0], [0, -1]],
//!   "K": [-3, 1],
//!   "area": ["3", "1"],
//!   "b2plus": 1,
//!   "exceptional": ["E1"],
//!   "minimal": false,
//!   "gr0_table": [{"class": "L", "value": 1}],
//!   "torus_table": [{"class": "L - E1", "label": "+0", "cover": 1}],
//!   "sphere_table": [{"class": "E1", "count": 1}]
//! }
//! ```
//!
//! `K` may also be a class expression. Area entries are `"p/q"` strings or
//! integers. Only `name`, `basis`, `gram`, `K` and `area` are required. Every
//! violation is reported with the JSON path of the offending value and its
//! line in the file.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_rational::Rational64;
use serde_json::{Map, Value};

use crate::expr::parse_class;
use crate::lattice::{HClass, IntersectionLattice};
use crate::model::ManifoldModel;
use crate::torus::{TorusEntry, TorusLabel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub file: String,
    pub line: Option<usize>,
    /// JSON path such as `sphere_table[2].class`; empty for the whole document.
    pub path: String,
    pub message: String,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let Some(line) = self.line {
            write!(f, ":{line}")?;
        }
        if !self.path.is_empty() {
            write!(f, ": {}", self.path)?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for LoadError {}

pub fn load_model_file(path: &Path) -> Result<ManifoldModel, LoadError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| LoadError {
        file: file.clone(),
        line: None,
        path: String::new(),
        message: e.to_string(),
    })?;
    load_model_str(&text, &file)
}

/// Parses and validates a model document; `file` only labels diagnostics.
pub fn load_model_str(text: &str, file: &str) -> Result<ManifoldModel, LoadError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| LoadError {
        file: file.to_string(),
        line: Some(e.line()),
        path: String::new(),
        message: format!("invalid JSON: {e}"),
    })?;
    let lines = LineIndex::build(text);
    let v = Validator { file, lines: &lines };
    v.model(&doc)
}

/// Line on which the value at each JSON path starts.
struct LineIndex {
    lines: HashMap<String, usize>,
}

impl LineIndex {
    fn build(text: &str) -> Self {
        let mut scanner = Scanner { chars: text.chars().collect(), pos: 0, line: 1, lines: HashMap::new() };
        scanner.value(String::new());
        LineIndex { lines: scanner.lines }
    }

    /// Line of `path`, falling back to the closest enclosing path.
    fn line(&self, path: &str) -> Option<usize> {
        let mut p = path.to_string();
        loop {
            if let Some(&l) = self.lines.get(&p) {
                return Some(l);
            }
            if p.is_empty() {
                return None;
            }
            let cut = p.rfind(['.', '[']).unwrap_or(0);
            p.truncate(cut);
        }
    }
}

/// Minimal JSON walker over text already known to parse.
struct Scanner {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    lines: HashMap<String, usize>,
}

impl Scanner {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn string(&mut self) -> String {
        let mut out = String::new();
        self.bump();
        while let Some(c) = self.bump() {
            match c {
                '"' => break,
                '\\' => {
                    if let Some(e) = self.bump() {
                        out.push(e);
                    }
                }
                _ => out.push(c),
            }
        }
        out
    }

    fn value(&mut self, path: String) {
        self.skip_ws();
        self.lines.insert(path.clone(), self.line);
        match self.peek() {
            Some('{') => {
                self.bump();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some('}') | None => {
                            self.bump();
                            return;
                        }
                        Some(',') => {
                            self.bump();
                        }
                        Some('"') => {
                            let key = self.string();
                            self.skip_ws();
                            self.bump(); // ':'
                            let child = if path.is_empty() { key } else { format!("{path}.{key}") };
                            self.value(child);
                        }
                        Some(_) => {
                            self.bump();
                        }
                    }
                }
            }
            Some('[') => {
                self.bump();
                let mut index = 0;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(']') | None => {
                            self.bump();
                            return;
                        }
                        Some(',') => {
                            self.bump();
                        }
                        _ => {
                            self.value(format!("{path}[{index}]"));
                            index += 1;
                        }
                    }
                }
            }
            Some('"') => {
                self.string();
            }
            _ => {
                while matches!(self.peek(), Some(c) if !matches!(c, ',' | ']' | '}') && !c.is_whitespace()) {
                    self.bump();
                }
            }
        }
    }
}

const FIELDS: [&str; 11] = [
    "name",
    "basis",
    "gram",
    "K",
    "area",
    "b2plus",
    "exceptional",
    "minimal",
    "gr0_table",
    "torus_table",
    "sphere_table",
];

struct Validator<'a> {
    file: &'a str,
    lines: &'a LineIndex,
}

impl Validator<'_> {
    fn err(&self, path: &str, message: impl Into<String>) -> LoadError {
        LoadError {
            file: self.file.to_string(),
            line: self.lines.line(path),
            path: path.to_string(),
            message: message.into(),
        }
    }

    fn object<'v>(&self, v: &'v Value, path: &str) -> Result<&'v Map<String, Value>, LoadError> {
        v.as_object().ok_or_else(|| self.err(path, "expected an object"))
    }

    fn array<'v>(&self, v: &'v Value, path: &str) -> Result<&'v Vec<Value>, LoadError> {
        v.as_array().ok_or_else(|| self.err(path, "expected an array"))
    }

    fn int(&self, v: &Value, path: &str) -> Result<i64, LoadError> {
        v.as_i64().ok_or_else(|| self.err(path, "expected an integer"))
    }

    fn string<'v>(&self, v: &'v Value, path: &str) -> Result<&'v str, LoadError> {
        v.as_str().ok_or_else(|| self.err(path, "expected a string"))
    }

    fn required<'v>(&self, obj: &'v Map<String, Value>, key: &str, parent: &str) -> Result<&'v Value, LoadError> {
        obj.get(key).ok_or_else(|| self.err(parent, format!("missing field `{key}`")))
    }

    fn rational(&self, v: &Value, path: &str) -> Result<Rational64, LoadError> {
        if let Some(n) = v.as_i64() {
            return Ok(Rational64::from_integer(n));
        }
        let s = v.as_str().ok_or_else(|| self.err(path, "expected a rational \"p/q\" or an integer"))?;
        let bad = || self.err(path, format!("malformed rational `{s}`"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim().parse::<i64>().map_err(|_| bad())?, q.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        if q == 0 {
            return Err(self.err(path, "zero denominator"));
        }
        Ok(Rational64::new(p, q))
    }

    fn class(&self, lattice: &std::sync::Arc<IntersectionLattice>, v: &Value, path: &str) -> Result<HClass, LoadError> {
        let s = self.string(v, path)?;
        parse_class(lattice, s).map_err(|e| self.err(path, e.to_string()))
    }

    fn model(&self, doc: &Value) -> Result<ManifoldModel, LoadError> {
        let obj = self.object(doc, "")?;
        for key in obj.keys() {
            if !FIELDS.contains(&key.as_str()) {
                return Err(self.err(key, format!("unknown field `{key}`")));
            }
        }
        let name = self.string(self.required(obj, "name", "")?, "name")?.to_string();

        let basis_v = self.array(self.required(obj, "basis", "")?, "basis")?;
        let mut basis = Vec::new();
        for (i, s) in basis_v.iter().enumerate() {
            basis.push(self.string(s, &format!("basis[{i}]"))?.to_string());
        }
        let rank = basis.len();

        let gram_v = self.array(self.required(obj, "gram", "")?, "gram")?;
        if gram_v.len() != rank {
            return Err(self.err("gram", format!("expected {rank} rows, found {}", gram_v.len())));
        }
        let mut gram = Vec::new();
        for (i, row) in gram_v.iter().enumerate() {
            let rp = format!("gram[{i}]");
            let row = self.array(row, &rp)?;
            if row.len() != rank {
                return Err(self.err(&rp, format!("expected {rank} entries, found {}", row.len())));
            }
            let mut r = Vec::new();
            for (j, x) in row.iter().enumerate() {
                r.push(self.int(x, &format!("gram[{i}][{j}]"))?);
            }
            gram.push(r);
        }

        let area_v = self.array(self.required(obj, "area", "")?, "area")?;
        if area_v.len() != rank {
            return Err(self.err("area", format!("expected {rank} entries, found {}", area_v.len())));
        }
        let mut area = Vec::new();
        for (i, x) in area_v.iter().enumerate() {
            area.push(self.rational(x, &format!("area[{i}]"))?);
        }

        let b2plus = match obj.get("b2plus") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let b = self.int(v, "b2plus")?;
                Some(u32::try_from(b).map_err(|_| self.err("b2plus", "must be a non-negative integer"))?)
            }
        };

        // K as an expression is parsed against the basis first; parity is
        // checked when the real lattice is built.
        let k_v = self.required(obj, "K", "")?;
        let canonical = match k_v {
            Value::Array(xs) => {
                if xs.len() != rank {
                    return Err(self.err("K", format!("expected {rank} entries, found {}", xs.len())));
                }
                xs.iter()
                    .enumerate()
                    .map(|(i, x)| self.int(x, &format!("K[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?
            }
            Value::String(_) => {
                let provisional = self.lattice(&name, &basis, &gram, vec![0; rank], &area, b2plus, true)?;
                self.class(&provisional, k_v, "K")?.coords().to_vec()
            }
            _ => return Err(self.err("K", "expected an integer array or a class expression")),
        };
        let lattice = self.lattice(&name, &basis, &gram, canonical, &area, b2plus, false)?;

        let mut model = ManifoldModel::new(lattice.clone());
        if let Some(v) = obj.get("exceptional") {
            for (i, e) in self.array(v, "exceptional")?.iter().enumerate() {
                let p = format!("exceptional[{i}]");
                let e = self.class(&lattice, e, &p)?;
                model = model.with_exceptional(e).map_err(|err| self.err(&p, err.to_string()))?;
            }
        }
        if let Some(v) = obj.get("minimal") {
            let m = v.as_bool().ok_or_else(|| self.err("minimal", "expected true or false"))?;
            model = model.with_minimal(m).map_err(|err| self.err("minimal", err.to_string()))?;
        }
        if let Some(v) = obj.get("gr0_table") {
            for (i, entry) in self.array(v, "gr0_table")?.iter().enumerate() {
                let p = format!("gr0_table[{i}]");
                let e = self.entry(entry, &p, &["class", "value"])?;
                let class = self.class(&lattice, self.required(e, "class", &p)?, &format!("{p}.class"))?;
                let value = self.int(self.required(e, "value", &p)?, &format!("{p}.value"))?;
                model = model.with_gr0(class, value).map_err(|err| self.err(&format!("{p}.class"), err.to_string()))?;
            }
        }
        if let Some(v) = obj.get("torus_table") {
            for (i, entry) in self.array(v, "torus_table")?.iter().enumerate() {
                let p = format!("torus_table[{i}]");
                let e = self.entry(entry, &p, &["class", "label", "cover"])?;
                let class = self.class(&lattice, self.required(e, "class", &p)?, &format!("{p}.class"))?;
                let lp = format!("{p}.label");
                let label: TorusLabel = self
                    .string(self.required(e, "label", &p)?, &lp)?
                    .parse()
                    .map_err(|err: crate::torus::SeriesError| self.err(&lp, err.to_string()))?;
                let cover = match e.get("cover") {
                    None => 1,
                    Some(c) => {
                        let cp = format!("{p}.cover");
                        let c = self.int(c, &cp)?;
                        if c < 1 || c > u32::MAX as i64 {
                            return Err(self.err(&cp, "cover multiplicity must be a positive integer"));
                        }
                        c as u32
                    }
                };
                model = model
                    .with_torus(class, TorusEntry::new(label, cover))
                    .map_err(|err| self.err(&format!("{p}.class"), err.to_string()))?;
            }
        }
        if let Some(v) = obj.get("sphere_table") {
            for (i, entry) in self.array(v, "sphere_table")?.iter().enumerate() {
                let p = format!("sphere_table[{i}]");
                let e = self.entry(entry, &p, &["class", "count"])?;
                let class = self.class(&lattice, self.required(e, "class", &p)?, &format!("{p}.class"))?;
                let cp = format!("{p}.count");
                let count = self
                    .required(e, "count", &p)?
                    .as_u64()
                    .ok_or_else(|| self.err(&cp, "expected a non-negative integer"))?;
                model = model.with_sphere(class, count).map_err(|err| self.err(&format!("{p}.class"), err.to_string()))?;
            }
        }
        Ok(model)
    }

    fn entry<'v>(&self, v: &'v Value, path: &str, allowed: &[&str]) -> Result<&'v Map<String, Value>, LoadError> {
        let obj = self.object(v, path)?;
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.err(&format!("{path}.{key}"), format!("unknown field `{key}`")));
            }
        }
        Ok(obj)
    }

    #[allow(clippy::too_many_arguments)]
    fn lattice(
        &self,
        name: &str,
        basis: &[String],
        gram: &[Vec<i64>],
        canonical: Vec<i64>,
        area: &[Rational64],
        b2plus: Option<u32>,
        provisional: bool,
    ) -> Result<std::sync::Arc<IntersectionLattice>, LoadError> {
        use crate::lattice::LatticeError as E;
        // The provisional lattice only serves to parse K against the basis
        // symbols, so a zero form (trivially compatible with K = 0) suffices.
        let gram = if provisional { vec![vec![0; basis.len()]; basis.len()] } else { gram.to_vec() };
        let result = IntersectionLattice::new(name, basis.to_vec(), gram, canonical, area.to_vec(), b2plus);
        result.map_err(|e| match &e {
            E::EmptyBasis | E::DuplicateSymbol(_) | E::InvalidSymbol(_) => self.err("basis", e.to_string()),
            E::NotSymmetric { row, col } => self.err(&format!("gram[{row}][{col}]"), e.to_string()),
            E::NotCharacteristic { .. } => self.err("K", e.to_string()),
            E::DimensionMismatch { .. } | E::LatticeMismatch { .. } => self.err("", e.to_string()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{
  "name": "blowup",
  "basis": ["L", "E1"],
  "gram": [[1, 0], [0, -1]],
  "K": "-3L + E1",
  "area": ["3", "1/1"],
  "exceptional": ["E1"],
  "minimal": false,
  "gr0_table": [{"class": "L", "value": 1}],
  "torus_table": [{"class": "L - E1", "label": "+0", "cover": 1}],
  "sphere_table": [
    {"class": "E1", "count": 1},
    {"class": "3L", "count": 12}
  ]
}"#;

    #[test]
    fn loads_valid_file() {
        let m = load_model_str(GOOD, "good.json").unwrap();
        assert_eq!(m.lattice().canonical_coords(), &[-3, 1]);
        assert_eq!(m.exceptional().len(), 1);
        assert_eq!(m.sphere_table().len(), 2);
        assert_eq!(m.b2_plus(), 1);
    }

    #[test]
    fn reports_line_and_path() {
        let bad = GOOD.replace("\"3L\"", "\"3Q\"");
        let err = load_model_str(&bad, "bad.json").unwrap_err();
        assert_eq!(err.line, Some(13));
        assert_eq!(err.path, "sphere_table[1].class");
        assert!(err.to_string().starts_with("bad.json:13: sphere_table[1].class: unknown symbol"));
    }

    #[test]
    fn rejects_invariant_violations() {
        let err = load_model_str(&GOOD.replace("\"-3L + E1\"", "\"-2L\""), "f").unwrap_err();
        assert_eq!(err.path, "K");
        let err = load_model_str(&GOOD.replace("[[1, 0], [0, -1]]", "[[1, 1], [0, -1]]"), "f").unwrap_err();
        assert_eq!(err.path, "gram[0][1]");
        let err = load_model_str(&GOOD.replace("\"exceptional\": [\"E1\"]", "\"exceptional\": [\"L\"]"), "f")
            .unwrap_err();
        assert_eq!((err.path.as_str(), err.line), ("exceptional[0]", Some(7)));
        let err = load_model_str(&GOOD.replace("\"minimal\": false", "\"minimal\": true"), "f").unwrap_err();
        assert_eq!(err.path, "minimal");
        let err = load_model_str(&GOOD.replace("\"+0\"", "\"+7\""), "f").unwrap_err();
        assert_eq!(err.path, "torus_table[0].label");
        let err = load_model_str(&GOOD.replace("\"1/1\"", "\"1/0\""), "f").unwrap_err();
        assert_eq!(err.path, "area[1]");
        let err = load_model_str(&GOOD.replace("\"name\"", "\"nmae\""), "f").unwrap_err();
        assert!(err.message.contains("unknown field"));
        let err = load_model_str("{\"name\": ", "f").unwrap_err();
        assert!(err.message.starts_with("invalid JSON"));
    }
}
