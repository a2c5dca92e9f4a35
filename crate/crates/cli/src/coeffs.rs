//! Plain-text coefficient files: line `n` holds `re im` for `a_{n-1}`.

use std::fs;
use std::path::Path;

use bohr_core::Complex;

use crate::error::{CliError, Result};

pub fn parse_coefficients(text: &str, path: &str) -> Result<Vec<Complex>> {
    let err = |line: usize, message: String| CliError::Parse {
        path: path.to_string(),
        line,
        message,
    };
    let lines: Vec<&str> = text.lines().collect();
    // Trailing blank lines are tolerated; interior ones would shift indices.
    let used = lines
        .iter()
        .rposition(|l| !l.trim().is_empty())
        .map_or(0, |i| i + 1);
    if used == 0 {
        return Err(err(1, "no coefficients".into()));
    }
    let mut out = Vec::with_capacity(used);
    for (i, line) in lines[..used].iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(err(
                i + 1,
                format!("expected `re im`, found {} field(s)", tokens.len()),
            ));
        }
        let mut parts = [0.0; 2];
        for (slot, tok) in parts.iter_mut().zip(&tokens) {
            let v: f64 = tok
                .parse()
                .map_err(|_| err(i + 1, format!("invalid number `{tok}`")))?;
            if !v.is_finite() {
                return Err(err(i + 1, format!("non-finite value `{tok}`")));
            }
            *slot = v;
        }
        out.push(Complex::new(parts[0], parts[1]));
    }
    Ok(out)
}

pub fn read_coefficients(path: &Path) -> Result<Vec<Complex>> {
    let shown = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        action: "read",
        path: shown.clone(),
        source,
    })?;
    parse_coefficients(&text, &shown)
}
