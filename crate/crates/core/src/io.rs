//! JSON documents for lattices, isometries and groups.
//!
//! Integers are JSON numbers, or decimal strings when they do not fit in 64
//! bits. Parsing is strict: unknown keys are rejected and every error names
//! the offending field.

use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::error::Error;
use crate::fixtures;
use crate::group::GroupSpec;
use crate::isometry::Isometry;
use crate::lattice::Lattice;
use crate::linalg::IntMatrix;

/// An error tied to a location in an input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadError {
    pub field: String,
    pub kind: LoadErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadErrorKind {
    /// The document could not be read or does not have the expected shape.
    Syntax(String),
    /// The document parsed but violates a mathematical constructor invariant.
    Invalid(Error),
}

impl LoadError {
    fn syntax(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            kind: LoadErrorKind::Syntax(msg.into()),
        }
    }

    fn invalid(field: impl Into<String>, err: Error) -> Self {
        Self {
            field: field.into(),
            kind: LoadErrorKind::Invalid(err),
        }
    }

    fn within(mut self, prefix: &str) -> Self {
        self.field = if self.field.is_empty() {
            prefix.to_string()
        } else if self.field.starts_with('[') {
            format!("{prefix}{}", self.field)
        } else {
            format!("{prefix}.{}", self.field)
        };
        self
    }
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let loc = if self.field.is_empty() {
            "document"
        } else {
            &self.field
        };
        match &self.kind {
            LoadErrorKind::Syntax(m) => write!(f, "{loc}: {m}"),
            LoadErrorKind::Invalid(e) => write!(f, "{loc}: {e}"),
        }
    }
}

impl std::error::Error for LoadError {}

pub type LoadResult<T> = std::result::Result<T, LoadError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeDoc {
    pub name: Option<String>,
    pub rank: usize,
    pub gram: Vec<Vec<BigInt>>,
    pub cone_ref: Vec<BigInt>,
}

/// A lattice given by bundled name or file path, or inline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeRef {
    Named(String),
    Inline(LatticeDoc),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometryDoc {
    pub name: Option<String>,
    pub lattice: LatticeRef,
    pub matrix: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDoc {
    pub name: Option<String>,
    pub lattice: LatticeRef,
    pub generators: Vec<Vec<Vec<BigInt>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Lattice(LatticeDoc),
    Isometry(IsometryDoc),
    Group(GroupDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Lattice(_) => "lattice",
            Document::Isometry(_) => "isometry",
            Document::Group(_) => "group",
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            Document::Lattice(d) => d.name.as_deref(),
            Document::Isometry(d) => d.name.as_deref(),
            Document::Group(d) => d.name.as_deref(),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            Document::Lattice(d) => d.to_value(),
            Document::Isometry(d) => d.to_value(),
            Document::Group(d) => d.to_value(),
        }
    }

    /// Canonical serialization: sorted keys, two-space indent, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        canonical_string(&self.to_value())
    }
}

/// Parses any of the three document kinds, chosen by which keys are present.
pub fn parse_document(text: &str) -> LoadResult<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        LoadError::syntax(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = v
        .as_object()
        .ok_or_else(|| LoadError::syntax("", "expected a JSON object"))?;
    if obj.contains_key("generators") {
        GroupDoc::from_value(obj).map(Document::Group)
    } else if obj.contains_key("matrix") {
        IsometryDoc::from_value(obj).map(Document::Isometry)
    } else if obj.contains_key("gram") {
        LatticeDoc::from_value(obj).map(Document::Lattice)
    } else {
        Err(LoadError::syntax(
            "",
            "cannot tell the document kind: expected one of \"gram\", \"matrix\" or \"generators\"",
        ))
    }
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> LoadResult<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(LoadError::syntax(k.clone(), "unknown field"));
        }
    }
    Ok(())
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str) -> LoadResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| LoadError::syntax(key, "missing required field"))
}

fn parse_name(obj: &Map<String, Value>) -> LoadResult<Option<String>> {
    match obj.get("name") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(LoadError::syntax("name", "expected a string")),
    }
}

fn parse_int(v: &Value, field: &str) -> LoadResult<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(LoadError::syntax(
                    field,
                    format!("expected an integer, got {n}"),
                ))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| LoadError::syntax(field, format!("expected an integer, got \"{s}\""))),
        other => Err(LoadError::syntax(
            field,
            format!("expected an integer, got {other}"),
        )),
    }
}

fn parse_vector(v: &Value, field: &str) -> LoadResult<Vec<BigInt>> {
    let arr = v
        .as_array()
        .ok_or_else(|| LoadError::syntax(field, "expected an array of integers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| parse_int(x, &format!("{field}[{i}]")))
        .collect()
}

fn parse_matrix(v: &Value, field: &str) -> LoadResult<Vec<Vec<BigInt>>> {
    let arr = v
        .as_array()
        .ok_or_else(|| LoadError::syntax(field, "expected an array of rows"))?;
    if arr.is_empty() {
        return Err(LoadError::syntax(field, "matrix has no rows"));
    }
    let rows: Vec<Vec<BigInt>> = arr
        .iter()
        .enumerate()
        .map(|(i, r)| parse_vector(r, &format!("{field}[{i}]")))
        .collect::<LoadResult<_>>()?;
    let n = rows.len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(LoadError::syntax(
                format!("{field}[{i}]"),
                format!(
                    "row has {} entries, expected {n} for a square matrix",
                    r.len()
                ),
            ));
        }
    }
    Ok(rows)
}

impl LatticeDoc {
    fn from_value(obj: &Map<String, Value>) -> LoadResult<Self> {
        check_keys(obj, &["name", "rank", "gram", "cone_ref"])?;
        let rank_v = required(obj, "rank")?;
        let rank = rank_v
            .as_u64()
            .filter(|&r| r >= 1)
            .ok_or_else(|| LoadError::syntax("rank", "expected a positive integer"))?
            as usize;
        let gram = parse_matrix(required(obj, "gram")?, "gram")?;
        if gram.len() != rank {
            return Err(LoadError::syntax(
                "gram",
                format!("matrix is {0}x{0}, expected rank {rank}", gram.len()),
            ));
        }
        let cone_ref = parse_vector(required(obj, "cone_ref")?, "cone_ref")?;
        if cone_ref.len() != rank {
            return Err(LoadError::syntax(
                "cone_ref",
                format!("vector has length {}, expected rank {rank}", cone_ref.len()),
            ));
        }
        Ok(Self {
            name: parse_name(obj)?,
            rank,
            gram,
            cone_ref,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        if let Some(n) = &self.name {
            m.insert("name".into(), Value::String(n.clone()));
        }
        m.insert("rank".into(), Value::from(self.rank));
        m.insert("gram".into(), matrix_json(&self.gram));
        m.insert("cone_ref".into(), vector_json(&self.cone_ref));
        Value::Object(m)
    }

    pub fn build(&self) -> LoadResult<Lattice> {
        let gram = IntMatrix::from_rows(&self.gram).map_err(|e| LoadError::invalid("gram", e))?;
        if !gram.is_symmetric() {
            return Err(LoadError::syntax("gram", "matrix is not symmetric"));
        }
        let field = |e: &Error| match e {
            Error::BadReference(_) => "cone_ref",
            _ => "gram",
        };
        let lat = Lattice::new(gram, self.cone_ref.clone())
            .map_err(|e| LoadError::invalid(field(&e), e))?;
        Ok(match &self.name {
            Some(n) => lat.with_name(n.clone()),
            None => lat,
        })
    }
}

impl LatticeRef {
    fn from_value(v: &Value) -> LoadResult<Self> {
        match v {
            Value::String(s) => Ok(LatticeRef::Named(s.clone())),
            Value::Object(o) => LatticeDoc::from_value(o)
                .map(LatticeRef::Inline)
                .map_err(|e| e.within("lattice")),
            _ => Err(LoadError::syntax(
                "lattice",
                "expected a lattice name, path or inline object",
            )),
        }
    }

    fn to_value(&self) -> Value {
        match self {
            LatticeRef::Named(s) => Value::String(s.clone()),
            LatticeRef::Inline(d) => d.to_value(),
        }
    }

    /// Bundled name first, then a path relative to `base`.
    pub fn resolve(&self, base: Option<&Path>) -> LoadResult<Lattice> {
        match self {
            LatticeRef::Inline(d) => d.build().map_err(|e| e.within("lattice")),
            LatticeRef::Named(name) => {
                if let Some(src) = fixtures::lattice_source(name) {
                    return load_lattice_text(src).map_err(|e| e.within("lattice"));
                }
                let path = match base {
                    Some(b) => b.join(name),
                    None => PathBuf::from(name),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    LoadError::syntax(
                        "lattice",
                        format!(
                            "\"{name}\" is not a bundled lattice and {} cannot be read: {e}",
                            path.display()
                        ),
                    )
                })?;
                load_lattice_text(&text).map_err(|e| e.within("lattice"))
            }
        }
    }
}

fn load_lattice_text(text: &str) -> LoadResult<Lattice> {
    match parse_document(text)? {
        Document::Lattice(d) => d.build(),
        other => Err(LoadError::syntax(
            "",
            format!("expected a lattice document, found {}", other.kind()),
        )),
    }
}

impl IsometryDoc {
    fn from_value(obj: &Map<String, Value>) -> LoadResult<Self> {
        check_keys(obj, &["name", "lattice", "matrix"])?;
        Ok(Self {
            name: parse_name(obj)?,
            lattice: LatticeRef::from_value(required(obj, "lattice")?)?,
            matrix: parse_matrix(required(obj, "matrix")?, "matrix")?,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        if let Some(n) = &self.name {
            m.insert("name".into(), Value::String(n.clone()));
        }
        m.insert("lattice".into(), self.lattice.to_value());
        m.insert("matrix".into(), matrix_json(&self.matrix));
        Value::Object(m)
    }

    pub fn build(&self, base: Option<&Path>) -> LoadResult<Isometry> {
        let lat = Arc::new(self.lattice.resolve(base)?);
        build_isometry(lat, &self.matrix, "matrix")
    }
}

fn build_isometry(lat: Arc<Lattice>, rows: &[Vec<BigInt>], field: &str) -> LoadResult<Isometry> {
    if rows.len() != lat.rank() {
        return Err(LoadError::syntax(
            field,
            format!(
                "matrix is {0}x{0}, lattice rank is {1}",
                rows.len(),
                lat.rank()
            ),
        ));
    }
    let m = IntMatrix::from_rows(rows).map_err(|e| LoadError::invalid(field, e))?;
    Isometry::new(lat, m).map_err(|e| LoadError::invalid(field, e))
}

impl GroupDoc {
    fn from_value(obj: &Map<String, Value>) -> LoadResult<Self> {
        check_keys(obj, &["name", "lattice", "generators"])?;
        let gens_v = required(obj, "generators")?
            .as_array()
            .ok_or_else(|| LoadError::syntax("generators", "expected an array of matrices"))?;
        if gens_v.is_empty() {
            return Err(LoadError::syntax(
                "generators",
                "a group needs at least one generator",
            ));
        }
        let generators = gens_v
            .iter()
            .enumerate()
            .map(|(i, g)| parse_matrix(g, &format!("generators[{i}]")))
            .collect::<LoadResult<_>>()?;
        Ok(Self {
            name: parse_name(obj)?,
            lattice: LatticeRef::from_value(required(obj, "lattice")?)?,
            generators,
        })
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        if let Some(n) = &self.name {
            m.insert("name".into(), Value::String(n.clone()));
        }
        m.insert("lattice".into(), self.lattice.to_value());
        m.insert(
            "generators".into(),
            Value::Array(self.generators.iter().map(|g| matrix_json(g)).collect()),
        );
        Value::Object(m)
    }

    pub fn build(&self, base: Option<&Path>) -> LoadResult<GroupSpec> {
        let lat = Arc::new(self.lattice.resolve(base)?);
        let gens = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| build_isometry(lat.clone(), g, &format!("generators[{i}]")))
            .collect::<LoadResult<Vec<_>>>()?;
        GroupSpec::new(lat, gens).map_err(|e| LoadError::invalid("generators", e))
    }
}

/// A validated object loaded from a document.
#[derive(Debug, Clone)]
pub enum Loaded {
    Lattice(Lattice),
    Isometry(Isometry),
    Group(GroupSpec),
}

/// Reads, parses and validates a document from disk.
pub fn load_path(path: &Path) -> LoadResult<(Document, Loaded)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::syntax("", format!("cannot read file: {e}")))?;
    load_text(&text, path.parent())
}

/// Parses and validates a document; `base` resolves relative lattice paths.
pub fn load_text(text: &str, base: Option<&Path>) -> LoadResult<(Document, Loaded)> {
    let doc = parse_document(text)?;
    let loaded = match &doc {
        Document::Lattice(d) => Loaded::Lattice(d.build()?),
        Document::Isometry(d) => Loaded::Isometry(d.build(base)?),
        Document::Group(d) => Loaded::Group(d.build(base)?),
    };
    Ok((doc, loaded))
}

pub fn load_isometry(path: &Path) -> LoadResult<Isometry> {
    match load_path(path)? {
        (_, Loaded::Isometry(g)) => Ok(g),
        (doc, _) => Err(LoadError::syntax(
            "",
            format!("expected an isometry document, found {}", doc.kind()),
        )),
    }
}

pub fn load_group(path: &Path) -> LoadResult<GroupSpec> {
    match load_path(path)? {
        (_, Loaded::Group(g)) => Ok(g),
        (doc, _) => Err(LoadError::syntax(
            "",
            format!("expected a group document, found {}", doc.kind()),
        )),
    }
}

/// Integers that fit in `i64` become JSON numbers, larger ones decimal strings.
pub fn int_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(i) => Value::from(i),
        Err(_) => Value::String(x.to_string()),
    }
}

pub fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn matrix_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(rows.iter().map(|r| vector_json(r)).collect())
}

/// Rebuilds every object with keys in sorted order.
pub fn canonicalize(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), canonicalize(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(canonicalize).collect()),
        other => other.clone(),
    }
}

pub fn canonical_string(v: &Value) -> String {
    let mut s =
        serde_json::to_string_pretty(&canonicalize(v)).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn errors_name_the_field() {
        let e = parse_document(r#"{"rank": 2, "gram": [[0, 1], [1, "x"]], "cone_ref": [1, 1]}"#)
            .unwrap_err();
        assert_eq!(e.field, "gram[1][1]");
        let e = parse_document(r#"{"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": [1]}"#)
            .unwrap_err();
        assert_eq!(e.field, "cone_ref");
        let e = parse_document(
            r#"{"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": [1, 1], "extra": 0}"#,
        )
        .unwrap_err();
        assert_eq!(e.field, "extra");
        let e = parse_document("{\n  \"rank\": 2,\n  \"gram\": [[0, 1], [1, 0]\n}").unwrap_err();
        assert!(e.field.starts_with("line "), "{e}");
    }

    #[test]
    fn invariant_violations_are_typed() {
        let (_, _) = load_text(
            r#"{"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": [1, 1]}"#,
            None,
        )
        .unwrap();
        let e = load_text(
            r#"{"rank": 2, "gram": [[0, 1], [2, 0]], "cone_ref": [1, 1]}"#,
            None,
        )
        .unwrap_err();
        assert_eq!(e.field, "gram");
        let e = load_text(
            r#"{"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": [1, 0]}"#,
            None,
        )
        .unwrap_err();
        assert!(matches!(
            e.kind,
            LoadErrorKind::Invalid(Error::BadReference(_))
        ));
        assert_eq!(e.field, "cone_ref");
        let e = load_text(
            r#"{"lattice": "gram_u", "matrix": [[-1, 0], [0, -1]]}"#,
            None,
        )
        .unwrap_err();
        assert_eq!(e.kind, LoadErrorKind::Invalid(Error::NotInOPrime));
        let e = load_text(
            r#"{"lattice": "gram_u", "generators": [[[0, 1], [1, 0]], [[1, 1], [0, 1]]]}"#,
            None,
        )
        .unwrap_err();
        assert_eq!(e.field, "generators[1]");
        assert_eq!(e.kind, LoadErrorKind::Invalid(Error::NotIsometry));
    }

    #[test]
    fn inline_lattices_and_big_integers() {
        let text = r#"{"lattice": {"rank": 2, "gram": [[0, 1], [1, 0]], "cone_ref": ["1", 1]}, "matrix": [[0, 1], [1, 0]]}"#;
        let (doc, loaded) = load_text(text, None).unwrap();
        assert!(matches!(loaded, Loaded::Isometry(_)));
        let again = parse_document(&doc.to_canonical_string()).unwrap();
        assert_eq!(doc, again);
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_json(&big), Value::String(big.to_string()));
        assert_eq!(parse_int(&int_json(&big), "x").unwrap(), big);
    }

    #[test]
    fn canonical_key_order() {
        let v: Value = serde_json::from_str(r#"{"b": 1, "a": {"d": 2, "c": 3}}"#).unwrap();
        assert_eq!(
            canonical_string(&v),
            "{\n  \"a\": {\n    \"c\": 3,\n    \"d\": 2\n  },\n  \"b\": 1\n}\n"
        );
    }

    #[test]
    fn unknown_lattice_names_fail_cleanly() {
        let e = load_text(
            r#"{"lattice": "no_such_lattice.json", "matrix": [[1]]}"#,
            Some(Path::new("/nonexistent")),
        )
        .unwrap_err();
        assert_eq!(e.field, "lattice");
    }
}
