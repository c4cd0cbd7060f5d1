//! Plain-text ideal files.
//!
//! Line 1 holds the variable count `n`; every later non-empty line not
//! starting with `#` holds `n` nonnegative exponents of one generator.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedIdeal {
    pub ideal: MonomialIdeal,
    /// Notes about duplicate or redundant generator lines.
    pub warnings: Vec<String>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_ideal(text: &str) -> Result<ParsedIdeal> {
    let mut lines = content_lines(text);
    let (first, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing variable count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: first,
        message: format!("expected a variable count, found {header:?}"),
    })?;
    let mut gens = Vec::new();
    let mut seen: HashMap<Monomial, usize> = HashMap::new();
    let mut warnings = Vec::new();
    for (line, body) in lines {
        let exps = body
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| Error::Parse {
                    line,
                    message: format!("{tok:?} is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        if exps.len() != n {
            return Err(Error::Parse {
                line,
                message: format!("expected {n} exponents, found {}", exps.len()),
            });
        }
        let u = Monomial::new(exps);
        if let Some(prev) = seen.get(&u) {
            warnings.push(format!("line {line}: duplicate of line {prev}, dropped"));
            continue;
        }
        seen.insert(u.clone(), line);
        gens.push((line, u));
    }
    let ideal = MonomialIdeal::minimize(n, gens.iter().map(|(_, u)| u.clone()).collect())
        .map_err(|e| Error::Parse {
            line: first,
            message: e.to_string(),
        })?;
    for (line, u) in &gens {
        if !ideal.generators().contains(u) {
            warnings.push(format!("line {line}: {u} is not a minimal generator, dropped"));
        }
    }
    Ok(ParsedIdeal { ideal, warnings })
}

/// Inverse of [`parse_ideal`] for minimal generating sets.
pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("{}\n", ideal.nvars());
    for g in ideal.generators() {
        let row: Vec<String> = g.exponents().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
