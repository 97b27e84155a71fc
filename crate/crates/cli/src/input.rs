//! Vector input: inline `--values` or a file with one vector per line.
//!
//! Entries are separated by commas and/or whitespace. `#` starts a comment
//! that runs to the end of the line, and blank lines are skipped.

use std::fs;
use std::path::Path;

use symineq::{ExactScalar, PositiveVector, ScalarError, VectorError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}:{line}:{column}: bad entry {token:?}: {source}")]
    Token {
        origin: String,
        line: usize,
        column: usize,
        token: String,
        source: ScalarError,
    },
    #[error("{origin}:{line}: {source}")]
    Vector {
        origin: String,
        line: usize,
        source: VectorError,
    },
    #[error("{origin}: no vectors found")]
    NoVectors { origin: String },
    #[error("{origin}:{line}: vector has {n} entries, above the cap of {cap}; raise it with --max-n")]
    TooLarge {
        origin: String,
        line: usize,
        n: usize,
        cap: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputVector {
    pub line: usize,
    pub vector: PositiveVector,
}

pub fn read_file(path: &Path, cap: usize) -> Result<Vec<InputVector>, InputError> {
    let origin = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Io {
        path: origin.clone(),
        source,
    })?;
    parse_vectors(&text, &origin, cap)
}

pub fn parse_inline(values: &str, cap: usize) -> Result<Vec<InputVector>, InputError> {
    parse_vectors(values, "--values", cap)
}

pub fn parse_vectors(text: &str, origin: &str, cap: usize) -> Result<Vec<InputVector>, InputError> {
    let mut vectors = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut entries = Vec::new();
        for (column, token) in tokens(content) {
            let value = ExactScalar::parse(token).map_err(|source| InputError::Token {
                origin: origin.to_string(),
                line,
                column,
                token: token.to_string(),
                source,
            })?;
            entries.push(value);
        }
        if entries.is_empty() {
            continue;
        }
        if entries.len() > cap {
            return Err(InputError::TooLarge {
                origin: origin.to_string(),
                line,
                n: entries.len(),
                cap,
            });
        }
        let vector = PositiveVector::new(entries).map_err(|source| InputError::Vector {
            origin: origin.to_string(),
            line,
            source,
        })?;
        vectors.push(InputVector { line, vector });
    }
    if vectors.is_empty() {
        return Err(InputError::NoVectors {
            origin: origin.to_string(),
        });
    }
    Ok(vectors)
}

/// Tokens with their 1-based character column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut start_column = 0;
    for (column, (byte, ch)) in line.char_indices().enumerate() {
        let separator = ch == ',' || ch.is_whitespace();
        match (separator, start) {
            (false, None) => {
                start = Some(byte);
                start_column = column + 1;
            }
            (true, Some(s)) => {
                out.push((start_column, &line[s..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((start_column, &line[s..]));
    }
    out
}

/// Comma-separated floats for `maximize --start`.
pub fn parse_floats(text: &str) -> Result<Vec<f64>, String> {
    tokens(text)
        .into_iter()
        .map(|(column, token)| {
            token
                .parse::<f64>()
                .map_err(|e| format!("--start:1:{column}: bad entry {token:?}: {e}"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let text = "# corpus\n1, 2, 3\n\n  5 5 5 5   # uniform\n1/2,0.25\n";
        let vectors = parse_vectors(text, "t", 20).unwrap();
        assert_eq!(vectors.len(), 3);
        assert_eq!(vectors[0].line, 2);
        assert_eq!(vectors[1].line, 4);
        assert_eq!(vectors[1].vector.to_string(), "5,5,5,5");
        assert_eq!(vectors[2].vector.to_string(), "1/2,1/4");
    }

    #[test]
    fn reports_line_and_column() {
        let err = parse_vectors("1,2,3\n4, 5x, 6\n", "data.txt", 20).unwrap_err();
        assert_eq!(
            err.to_string(),
            "data.txt:2:4: bad entry \"5x\": malformed scalar literal \"5x\""
        );
        match err {
            InputError::Token { line, column, .. } => assert_eq!((line, column), (2, 4)),
            other => panic!("{other:?}"),
        }
        let err = parse_vectors("1/0", "v", 20).unwrap_err();
        assert!(matches!(
            err,
            InputError::Token {
                column: 1,
                source: ScalarError::ZeroDenominator(_),
                ..
            }
        ));
    }

    #[test]
    fn rejects_nonpositive_and_empty() {
        let err = parse_inline("1,0,3", 20).unwrap_err();
        assert_eq!(
            err.to_string(),
            "--values:1: entry 0 at index 1 is not strictly positive"
        );
        assert!(matches!(
            parse_inline("  # nothing", 20),
            Err(InputError::NoVectors { .. })
        ));
    }

    #[test]
    fn enforces_cap() {
        assert!(matches!(
            parse_inline("1 2 3 4", 3),
            Err(InputError::TooLarge { n: 4, cap: 3, .. })
        ));
        assert!(parse_inline("1 2 3 4", 4).is_ok());
    }

    #[test]
    fn float_list() {
        assert_eq!(parse_floats("0.6,0.1, 0.3").unwrap(), vec![0.6, 0.1, 0.3]);
        assert!(parse_floats("0.6,x").is_err());
    }
}
