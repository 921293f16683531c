//! Presentation declaration files (TOML):
//!
//! ```toml
//! kind = "regular"          # graph-form | graph-multivector | regular | scaled-top
//! dim = 4
//! p = 2
//! omega = "dx1^dx2^dx3"     # graph-form, regular
//! s = [1, 2]                # regular: 1-based frame columns spanning S
//! frame = [[1, 0], [0, 1]]  # regular, optional: columns F e_i (integers or "p/q")
//! # pi = "Dx1^Dx2^Dx3"      # graph-multivector
//! # f = "x1"                # scaled-top, with top = "dx1^dx2^dx3"
//! ```

use std::path::Path;

use diracspace_core::linalg::Vector;
use diracspace_core::presentations::Presentation;
use diracspace_core::Rat;
use serde::Deserialize;

use crate::parse::{parse_form, parse_multivec, parse_poly, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum PresError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Format(String),
    #[error("field `{field}`: {source}")]
    Expr { field: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] diracspace_core::CoreError),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresFile {
    kind: String,
    dim: usize,
    p: Option<usize>,
    omega: Option<String>,
    pi: Option<String>,
    f: Option<String>,
    top: Option<String>,
    s: Option<Vec<usize>>,
    frame: Option<Vec<Vec<Entry>>>,
}

fn need<'a>(v: &'a Option<String>, field: &str, kind: &str) -> Result<&'a str, PresError> {
    v.as_deref().ok_or_else(|| PresError::Format(format!("kind `{kind}` needs field `{field}`")))
}

fn expr<T>(field: &str, r: Result<T, ParseError>) -> Result<T, PresError> {
    r.map_err(|source| PresError::Expr { field: field.to_string(), source })
}

fn rat_entry(e: &Entry) -> Result<Rat, PresError> {
    match e {
        Entry::Int(v) => Ok(Rat::from_integer((*v).into())),
        Entry::Text(t) => {
            let bad = || PresError::Format(format!("invalid rational `{t}` in frame"));
            let (num, den) = t.split_once('/').unwrap_or((t.as_str(), "1"));
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            let den: i64 = den.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            Ok(Rat::new(num.into(), den.into()))
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresError> {
    let file: PresFile = toml::from_str(text).map_err(|e| PresError::Format(e.to_string()))?;
    let n = file.dim;
    if n == 0 {
        return Err(PresError::Format("dim must be positive".into()));
    }
    let kind = file.kind.as_str();
    let p = || file.p.ok_or_else(|| PresError::Format(format!("kind `{kind}` needs field `p`")));
    Ok(match kind {
        "graph-form" => {
            let p = p()?;
            Presentation::graph_form(p, expr("omega", parse_form(need(&file.omega, "omega", kind)?, n, p + 1))?)?
        }
        "graph-multivector" => {
            let p = p()?;
            Presentation::graph_multivector(p, expr("pi", parse_multivec(need(&file.pi, "pi", kind)?, n, p + 1))?)?
        }
        "regular" => {
            let p = p()?;
            let omega = expr("omega", parse_form(need(&file.omega, "omega", kind)?, n, p + 1))?;
            let s = file.s.clone().ok_or_else(|| PresError::Format("kind `regular` needs field `s`".into()))?;
            if s.iter().any(|&i| i == 0 || i > n) {
                return Err(PresError::Format(format!("`s` entries must lie in 1..={n}")));
            }
            let s: Vec<usize> = s.into_iter().map(|i| i - 1).collect();
            match &file.frame {
                None => Presentation::regular_coordinate(p, s, omega)?,
                Some(cols) => {
                    let frame: Vec<Vector> =
                        cols.iter().map(|c| c.iter().map(rat_entry).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
                    Presentation::regular(p, frame, s, omega)?
                }
            }
        }
        "scaled-top" => {
            let f = expr("f", parse_poly(need(&file.f, "f", kind)?, n))?;
            let top = expr("top", parse_form(need(&file.top, "top", kind)?, n, n))?;
            Presentation::scaled_top(f, top)?
        }
        other => return Err(PresError::Format(format!("unknown kind `{other}`"))),
    })
}

pub fn read_presentation(path: &Path) -> Result<Presentation, PresError> {
    let text = std::fs::read_to_string(path).map_err(|source| PresError::Io { path: path.display().to_string(), source })?;
    parse_presentation(&text)
}
