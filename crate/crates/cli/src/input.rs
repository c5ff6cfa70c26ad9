//! Reading complexes, partitions and facet orders from files.

use std::path::{Path, PathBuf};

use extenders::{Face, Interval, IntervalPartition, SimplicialComplex, Vertex};
use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
}

/// A complex as read from disk.
#[derive(Clone, Debug)]
pub struct ComplexDocument {
    pub path: PathBuf,
    pub name: Option<String>,
    pub complex: SimplicialComplex,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonComplex {
    facets: Vec<Vec<Vertex>>,
    #[serde(default)]
    name: Option<String>,
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{' | '['))
}

fn json_error(path: &Path, e: serde_json::Error) -> InputError {
    InputError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_json(path: &Path, text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| json_error(path, e))
}

fn complex_of(facets: Vec<Face>) -> SimplicialComplex {
    if facets.is_empty() {
        SimplicialComplex::void()
    } else {
        SimplicialComplex::from_facets(facets)
    }
}

pub fn read_complex(path: &Path) -> Result<ComplexDocument, InputError> {
    let text = read_text(path)?;
    parse_complex(path, &text)
}

pub fn parse_complex(path: &Path, text: &str) -> Result<ComplexDocument, InputError> {
    if looks_like_json(text) {
        let doc: JsonComplex = serde_json::from_str(text).map_err(|e| json_error(path, e))?;
        let facets = doc.facets.into_iter().map(Face::new).collect();
        return Ok(ComplexDocument {
            path: path.to_path_buf(),
            name: doc.name,
            complex: complex_of(facets),
        });
    }
    let facets = parse_face_lines(path, text)?;
    Ok(ComplexDocument {
        path: path.to_path_buf(),
        name: None,
        complex: complex_of(facets),
    })
}

/// One face per line. `-` is the empty face, `#` starts a comment.
fn parse_face_lines(path: &Path, text: &str) -> Result<Vec<Face>, InputError> {
    let mut faces = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        faces.push(parse_face(path, n + 1, line, content)?);
    }
    Ok(faces)
}

fn parse_face(path: &Path, line_no: usize, line: &str, content: &str) -> Result<Face, InputError> {
    if content.trim() == "-" {
        return Ok(Face::empty());
    }
    let mut labels = Vec::new();
    for (column, token) in tokens(line, content) {
        let err = |message: String| InputError::Parse {
            path: path.to_path_buf(),
            line: line_no,
            column,
            message,
        };
        let v: Vertex = token.parse().map_err(|_| {
            err(format!(
                "expected a nonnegative integer vertex label, found `{token}`"
            ))
        })?;
        if labels.contains(&v) {
            return Err(err(format!("vertex {v} repeated in one face")));
        }
        labels.push(v);
    }
    Ok(Face::new(labels))
}

/// Whitespace-separated tokens of `content` with their 1-based columns in `line`.
fn tokens<'a>(line: &'a str, content: &'a str) -> impl Iterator<Item = (usize, &'a str)> + 'a {
    let base = content.as_ptr() as usize - line.as_ptr() as usize;
    content.split_whitespace().map(move |t| {
        let offset = base + (t.as_ptr() as usize - content.as_ptr() as usize);
        (line[..offset].chars().count() + 1, t)
    })
}

/// A partition file: a JSON list of `{"bottom", "top"}` records, an object
/// with an `intervals` list, or text lines `bottom | top`.
pub fn read_partition(path: &Path) -> Result<IntervalPartition, InputError> {
    let text = read_text(path)?;
    if looks_like_json(&text) {
        let mut value = parse_json(path, &text)?;
        if let Some(inner) = value.get_mut("intervals") {
            value = inner.take();
        }
        return serde_json::from_value(value).map_err(|e| InputError::Invalid {
            path: path.to_path_buf(),
            message: format!("not a list of intervals: {e}"),
        });
    }
    let mut intervals = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(bar) = content.find('|') else {
            return Err(InputError::Parse {
                path: path.to_path_buf(),
                line: n + 1,
                column: 1,
                message: "expected `bottom | top`".into(),
            });
        };
        let (bottom, top) = (&content[..bar], &content[bar + 1..]);
        let side = |part: &str| {
            if part.trim().is_empty() {
                Ok(Face::empty())
            } else {
                parse_face(path, n + 1, line, part)
            }
        };
        intervals.push(Interval::new(side(bottom)?, side(top)?));
    }
    Ok(IntervalPartition::new(intervals))
}

/// A facet order: a JSON list of faces, an object with an `order` list, or one face per line.
pub fn read_order(path: &Path) -> Result<Vec<Face>, InputError> {
    let text = read_text(path)?;
    if looks_like_json(&text) {
        let mut value = parse_json(path, &text)?;
        if let Some(inner) = value.get_mut("order") {
            value = inner.take();
        }
        return serde_json::from_value(value).map_err(|e| InputError::Invalid {
            path: path.to_path_buf(),
            message: format!("not a list of faces: {e}"),
        });
    }
    parse_face_lines(path, &text)
}
