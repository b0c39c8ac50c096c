//! Manifest files: TOML with expression strings.
//!
//! ```toml
//! [manifold]
//! coordinates = ["t1", "t2", "t3"]
//! prepotential = "1/2*t1^2*t3 + ..."      # or c_tables = [[["..."]]]
//! metric = [["0", "0", "1"], ["0", "1", "0"], ["1", "0", "0"]]
//! unit = "d_t1"
//! euler = "t1*d_t1 + ..."                 # optional, inferred when absent
//! expected_D = "4/3"                      # optional cross-check
//!
//! [submanifold]                           # optional
//! coordinates = ["tau1", "tau2"]
//! parameters = ["k2"]                     # optional
//! map = ["tau1 - 2/3*k2^2*tau2^3", "k2*tau2^2", "tau2"]
//!
//! [options]                               # optional
//! term_ceiling = 1000000
//! strict = false
//! ```

use std::fmt;
use std::ops::Range;
use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::Spanned;

use frobsub_core::algebra::{MPoly, Rational, Vars, DEFAULT_TERM_CEILING};
use frobsub_core::frobenius::{
    infer_diagonal_euler, reconstruct_prepotential, AmbientManifold, InferredEuler, Tables,
};
use frobsub_core::geometry::Embedding;
use frobsub_core::parser::{parse_polynomial, parse_vector_field, ParseError, BASIS_PREFIX};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ManifestError {
    #[error("{origin}: {message}")]
    Io { origin: String, message: String },
    #[error("{origin}:{at}: {message}")]
    Syntax {
        origin: String,
        at: Location,
        message: String,
    },
    #[error("{origin}:{at}: {key}: {}", source.kind)]
    Expression {
        origin: String,
        at: Location,
        key: String,
        source: ParseError,
    },
    #[error("{origin}: {key}: {message}")]
    Invalid {
        origin: String,
        key: String,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub term_ceiling: usize,
    pub strict: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            term_ceiling: DEFAULT_TERM_CEILING,
            strict: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Manifest {
    pub origin: String,
    /// Hex sha256 of the file bytes.
    pub digest: String,
    pub ambient: AmbientManifold,
    /// Present when the Euler field was omitted and inferred.
    pub inferred_euler: Option<InferredEuler>,
    pub expected_d: Option<Rational>,
    pub submanifold: Option<Embedding>,
    pub options: Options,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    manifold: RawManifold,
    submanifold: Option<RawSubmanifold>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifold {
    coordinates: Spanned<Vec<Spanned<String>>>,
    prepotential: Option<Spanned<Scalar>>,
    c_tables: Option<Spanned<Vec<Vec<Vec<Spanned<Scalar>>>>>>,
    metric: Spanned<Vec<Vec<Spanned<Scalar>>>>,
    unit: Spanned<String>,
    euler: Option<Spanned<String>>,
    #[serde(rename = "expected_D")]
    expected_d: Option<Spanned<Scalar>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubmanifold {
    coordinates: Spanned<Vec<Spanned<String>>>,
    #[serde(default)]
    parameters: Vec<Spanned<String>>,
    map: Spanned<Vec<Spanned<Scalar>>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    term_ceiling: Option<usize>,
    strict: Option<bool>,
}

/// Expression given either as a string or as a bare integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Str(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(v) => v.to_string(),
            Scalar::Str(s) => s.clone(),
        }
    }
}

pub fn load_manifest(path: &Path) -> Result<Manifest, ManifestError> {
    let origin = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|e| ManifestError::Io {
        origin: origin.clone(),
        message: e.to_string(),
    })?;
    let text = String::from_utf8(bytes).map_err(|_| ManifestError::Io {
        origin: origin.clone(),
        message: "manifest is not valid UTF-8".into(),
    })?;
    parse_manifest(&text, &origin)
}

/// Parses and validates manifest text; `origin` names it in error messages.
pub fn parse_manifest(text: &str, origin: &str) -> Result<Manifest, ManifestError> {
    let ctx = Context { text, origin };
    let raw: RawManifest = toml::from_str(text).map_err(|e| ManifestError::Syntax {
        origin: origin.into(),
        at: e
            .span()
            .map(|s| ctx.location(s.start))
            .unwrap_or(Location { line: 1, column: 1 }),
        message: e.message().trim().replace('\n', "; "),
    })?;
    let options = Options {
        term_ceiling: raw.options.term_ceiling.unwrap_or(DEFAULT_TERM_CEILING),
        strict: raw.options.strict.unwrap_or(false),
    };
    if options.term_ceiling == 0 {
        return Err(ctx.invalid("options.term_ceiling", "must be positive"));
    }
    let m = &raw.manifold;

    let names = ctx.names(m.coordinates.get_ref(), "manifold.coordinates", &[])?;
    let coords = Vars::new(names.clone());
    let dim = names.len();
    let no_vars = Vars::new(Vec::<String>::new());

    let metric = ctx.matrix(&m.metric, dim, "manifold.metric", &no_vars)?;
    for i in 0..dim {
        for j in 0..i {
            if metric[i][j] != metric[j][i] {
                return Err(ctx.invalid("manifold.metric", "metric not symmetric"));
            }
        }
    }
    let unit = ctx.field(&m.unit, "manifold.unit", &coords)?;
    let given_euler = m
        .euler
        .as_ref()
        .map(|e| ctx.field(e, "manifold.euler", &coords))
        .transpose()?;
    let expected_d = m
        .expected_d
        .as_ref()
        .map(|d| ctx.constant(d, "manifold.expected_D", &no_vars))
        .transpose()?;

    let (prepotential, lower) = match (&m.prepotential, &m.c_tables) {
        (Some(_), Some(_)) => {
            return Err(ctx.invalid(
                "manifold",
                "give either prepotential or c_tables, not both",
            ))
        }
        (None, None) => {
            return Err(ctx.invalid("manifold", "one of prepotential or c_tables is required"))
        }
        (Some(f), None) => (Some(ctx.scalar(f, "manifold.prepotential", &coords)?), None),
        (None, Some(tables)) => (None, Some(ctx.tables(tables, dim, &coords)?)),
    };
    let invalid = |key: &str, e: &dyn fmt::Display| ctx.invalid(key, &e.to_string());

    let (euler, inferred_euler) = match given_euler {
        Some(e) => (e, None),
        None => {
            let f = match (&prepotential, &lower) {
                (Some(f), _) => f.clone(),
                (None, Some(lower)) => reconstruct_prepotential(lower, &coords)
                    .map_err(|e| invalid("manifold.c_tables", &e))?,
                (None, None) => unreachable!(),
            };
            let inferred = infer_diagonal_euler(&f, &metric, &unit)
                .map_err(|e| invalid("manifold.euler", &e))?;
            (inferred.field.clone(), Some(inferred))
        }
    };
    let ambient = match (prepotential, lower) {
        (Some(f), _) => AmbientManifold::from_prepotential(f, metric, unit, euler),
        (None, Some(lower)) => AmbientManifold::from_tables(coords, metric, lower, unit, euler),
        (None, None) => unreachable!(),
    }
    .map_err(|e| invalid("manifold", &e))?;

    let submanifold = raw
        .submanifold
        .as_ref()
        .map(|s| ctx.submanifold(s, &names))
        .transpose()?;

    let digest = Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect();
    Ok(Manifest {
        origin: origin.into(),
        digest,
        ambient,
        inferred_euler,
        expected_d,
        submanifold,
        options,
    })
}

struct Context<'a> {
    text: &'a str,
    origin: &'a str,
}

impl Context<'_> {
    fn location(&self, offset: usize) -> Location {
        let offset = offset.min(self.text.len());
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        Location {
            line,
            column: before[line_start..].chars().count() + 1,
        }
    }

    fn invalid(&self, key: &str, message: &str) -> ManifestError {
        ManifestError::Invalid {
            origin: self.origin.into(),
            key: key.into(),
            message: message.into(),
        }
    }

    /// Maps a position inside a string value back to the file.
    fn expression_error(&self, span: Range<usize>, key: &str, err: ParseError) -> ManifestError {
        let raw = &self.text[span.start.min(self.text.len())..span.end.min(self.text.len())];
        let quote = if raw.starts_with("\"\"\"") || raw.starts_with("'''") {
            3
        } else if raw.starts_with('"') || raw.starts_with('\'') {
            1
        } else {
            0
        };
        let mut start = span.start + quote;
        // A multi-line string drops a newline right after the opening quotes.
        if quote == 3 && self.text[start..].starts_with('\n') {
            start += 1;
        }
        let base = self.location(start);
        let at = if err.pos.line == 1 {
            Location {
                line: base.line,
                column: base.column + err.pos.column - 1,
            }
        } else {
            Location {
                line: base.line + err.pos.line - 1,
                column: err.pos.column,
            }
        };
        ManifestError::Expression {
            origin: self.origin.into(),
            at,
            key: key.into(),
            source: err,
        }
    }

    fn names(
        &self,
        list: &[Spanned<String>],
        key: &str,
        taken: &[String],
    ) -> Result<Vec<String>, ManifestError> {
        let mut out: Vec<String> = Vec::new();
        for name in list {
            let name = name.get_ref();
            let valid = name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(self.invalid(key, &format!("`{name}` is not a valid identifier")));
            }
            if name.starts_with(BASIS_PREFIX) {
                return Err(self.invalid(
                    key,
                    &format!("`{name}` clashes with the basis prefix `{BASIS_PREFIX}`"),
                ));
            }
            if out.contains(name) || taken.contains(name) {
                return Err(self.invalid(key, &format!("duplicate name `{name}`")));
            }
            out.push(name.clone());
        }
        Ok(out)
    }

    fn scalar(&self, s: &Spanned<Scalar>, key: &str, vars: &Vars) -> Result<MPoly, ManifestError> {
        parse_polynomial(&s.get_ref().text(), vars)
            .map_err(|e| self.expression_error(s.span(), key, e))
    }

    fn constant(
        &self,
        s: &Spanned<Scalar>,
        key: &str,
        no_vars: &Vars,
    ) -> Result<Rational, ManifestError> {
        let p = self.scalar(s, key, no_vars)?;
        Ok(p.constant_value().unwrap_or_default())
    }

    fn field(&self, s: &Spanned<String>, key: &str, coords: &Vars) -> Result<Vec<MPoly>, ManifestError> {
        parse_vector_field(s.get_ref(), coords).map_err(|e| self.expression_error(s.span(), key, e))
    }

    fn matrix(
        &self,
        rows: &Spanned<Vec<Vec<Spanned<Scalar>>>>,
        dim: usize,
        key: &str,
        no_vars: &Vars,
    ) -> Result<Vec<Vec<Rational>>, ManifestError> {
        let rows = rows.get_ref();
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(self.invalid(key, &format!("expected a {dim}x{dim} matrix")));
        }
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| self.constant(v, &format!("{key}[{}][{}]", i + 1, j + 1), no_vars))
                    .collect()
            })
            .collect()
    }

    fn tables(
        &self,
        tables: &Spanned<Vec<Vec<Vec<Spanned<Scalar>>>>>,
        dim: usize,
        coords: &Vars,
    ) -> Result<Tables, ManifestError> {
        let key = "manifold.c_tables";
        let t = tables.get_ref();
        let shape_ok = t.len() == dim
            && t.iter()
                .all(|a| a.len() == dim && a.iter().all(|b| b.len() == dim));
        if !shape_ok {
            return Err(self.invalid(key, &format!("expected a {dim}x{dim}x{dim} array")));
        }
        let mut parsed = Vec::with_capacity(dim * dim * dim);
        for (i, a) in t.iter().enumerate() {
            for (j, b) in a.iter().enumerate() {
                for (k, v) in b.iter().enumerate() {
                    let key = format!("{key}[{}][{}][{}]", i + 1, j + 1, k + 1);
                    parsed.push(self.scalar(v, &key, coords)?);
                }
            }
        }
        Ok(Tables::from_fn(dim, |i, j, k| {
            parsed[(i * dim + j) * dim + k].clone()
        }))
    }

    fn submanifold(
        &self,
        s: &RawSubmanifold,
        ambient_names: &[String],
    ) -> Result<Embedding, ManifestError> {
        let sub = self.names(s.coordinates.get_ref(), "submanifold.coordinates", ambient_names)?;
        let mut taken = ambient_names.to_vec();
        taken.extend(sub.iter().cloned());
        let params = self.names(&s.parameters, "submanifold.parameters", &taken)?;
        if sub.is_empty() {
            return Err(self.invalid("submanifold.coordinates", "at least one coordinate is required"));
        }
        let map = s.map.get_ref();
        if map.len() != ambient_names.len() {
            return Err(self.invalid(
                "submanifold.map",
                &format!(
                    "{} components given for a {}-dimensional ambient manifold",
                    map.len(),
                    ambient_names.len()
                ),
            ));
        }
        if sub.len() > map.len() {
            return Err(self.invalid(
                "submanifold.coordinates",
                "more submanifold coordinates than ambient dimensions",
            ));
        }
        let mut ring_names = sub.clone();
        ring_names.extend(params.iter().cloned());
        let ring = Vars::new(ring_names);
        let map = map
            .iter()
            .enumerate()
            .map(|(i, v)| self.scalar(v, &format!("submanifold.map[{}]", i + 1), &ring))
            .collect::<Result<Vec<_>, _>>()?;
        Embedding::new(&sub, &params, map)
            .map_err(|e| self.invalid("submanifold", &e.to_string()))
    }
}
