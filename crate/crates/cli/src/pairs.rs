//! Structure-code pair selection: the two built-in pairs by name, or a pair
//! loaded from a comma-separated `file:D,S` argument.

use std::fs;
use std::str::FromStr;

use framed_voa::codes::named::{d_flat, d_natural, s_flat, s_natural};
use framed_voa::codes::{BitWord, CodePair, LinearCode};

use crate::config::{usage, CliError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairSpec {
    Moonshine,
    Baby,
    Files { d: String, s: String },
}

impl FromStr for PairSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "moonshine" => Ok(PairSpec::Moonshine),
            "baby" => Ok(PairSpec::Baby),
            other => {
                let rest = other.strip_prefix("file:").ok_or_else(|| {
                    usage(format!(
                        "pair must be 'moonshine', 'baby', or 'file:<D>,<S>', got '{other}'"
                    ))
                })?;
                let (d, s) = rest.split_once(',').ok_or_else(|| {
                    usage("file pair needs two comma-separated paths: file:<D>,<S>")
                })?;
                if d.is_empty() || s.is_empty() {
                    return Err(usage("file pair needs two comma-separated paths: file:<D>,<S>"));
                }
                Ok(PairSpec::Files { d: d.to_string(), s: s.to_string() })
            }
        }
    }
}

impl PairSpec {
    /// Resolves the spec to a display name and a validated pair.
    pub fn resolve(&self) -> Result<(String, CodePair), CliError> {
        match self {
            PairSpec::Moonshine => {
                let pair = CodePair::new(d_natural(), s_natural())
                    .map_err(|e| usage(format!("moonshine pair rejected: {e}")))?;
                Ok(("moonshine".to_string(), pair))
            }
            PairSpec::Baby => {
                let pair = CodePair::new(d_flat().0, s_flat())
                    .map_err(|e| usage(format!("baby pair rejected: {e}")))?;
                Ok(("baby".to_string(), pair))
            }
            PairSpec::Files { d, s } => {
                let d_code = load_code(d)?;
                let s_code = load_code(s)?;
                let pair = CodePair::new(d_code, s_code)
                    .map_err(|e| usage(format!("pair ({d}, {s}) rejected: {e}")))?;
                Ok((format!("{d},{s}"), pair))
            }
        }
    }
}

/// Loads a generator matrix: one 0/1 row per line, blank lines and lines
/// starting with '#' skipped, all rows the same length.
pub fn load_code(path: &str) -> Result<LinearCode, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read '{path}': {e}")))?;
    let mut rows: Vec<BitWord> = Vec::new();
    let mut len: Option<usize> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match len {
            None => {
                if line.len() > 64 {
                    return Err(usage(format!(
                        "'{path}' line {}: rows longer than 64 are not supported",
                        lineno + 1
                    )));
                }
                len = Some(line.len());
            }
            Some(n) if n != line.len() => {
                return Err(usage(format!(
                    "'{path}' line {}: row length {} differs from {}",
                    lineno + 1,
                    line.len(),
                    n
                )));
            }
            Some(_) => {}
        }
        let mut w = BitWord::zero(line.len());
        for (i, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                other => {
                    return Err(usage(format!(
                        "'{path}' line {}: unexpected character '{other}' (rows are 0/1 strings)",
                        lineno + 1
                    )));
                }
            }
        }
        rows.push(w);
    }
    let len = len.ok_or_else(|| usage(format!("'{path}' contains no generator rows")))?;
    Ok(LinearCode::span(len, &rows))
}
