//! Matrix files: a JSON object `{"n": 2, "rows": [[1,1],[1,0]]}` or plain
//! text with one row per line and entries separated by spaces.

use std::fs;
use std::path::Path;

use super::{MatrixError, RawMatrix};

/// Parse either file format into a square-checked raw array. Entry range is
/// not checked here; pass the result to [`super::validate`] or
/// [`super::IntMatrix::new`].
pub fn parse_matrix(text: &str) -> Result<Vec<Vec<i64>>, MatrixError> {
    let trimmed = text.trim_start();
    let rows = if trimmed.starts_with('{') {
        let raw: RawMatrix = serde_json::from_str(trimmed).map_err(|e| MatrixError::Parse(e.to_string()))?;
        if raw.n != raw.rows.len() {
            return Err(MatrixError::Parse(format!("declared n = {} but {} rows given", raw.n, raw.rows.len())));
        }
        raw.rows
    } else {
        text.lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(lineno, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<i64>()
                            .map_err(|_| MatrixError::Parse(format!("line {}: bad entry {tok:?}", lineno + 1)))
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<i64>>, _>>()?
    };
    if rows.is_empty() {
        return Err(MatrixError::Empty);
    }
    Ok(rows)
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<Vec<Vec<i64>>, MatrixError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| MatrixError::Parse(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}
