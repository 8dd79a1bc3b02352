//! Theory files: one formula per line, `#` comments, optional `@atoms`
//! declaration.

use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::{parse, Alphabet, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theory {
    pub formulas: Vec<Formula>,
    /// Atoms from an `@atoms` line, if any.
    pub declared: Option<Alphabet>,
}

impl Theory {
    pub fn new(formulas: Vec<Formula>) -> Self {
        Theory {
            formulas,
            declared: None,
        }
    }

    /// Declared atoms, or the atoms of the formulas in sorted order.
    pub fn alphabet(&self) -> Alphabet {
        self.declared
            .clone()
            .unwrap_or_else(|| Alphabet::of_formulas(&self.formulas))
    }

    pub fn is_temporal(&self) -> bool {
        self.formulas.iter().any(Formula::is_temporal)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }
}

/// Cuts a line at the first `#` that is not the constant `#t` or `#f`.
fn strip_comment(line: &str) -> &str {
    let b = line.as_bytes();
    for (i, &c) in b.iter().enumerate() {
        if c != b'#' {
            continue;
        }
        let constant = matches!(b.get(i + 1), Some(b't' | b'f'))
            && !b.get(i + 2).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_');
        if !constant {
            return &line[..i];
        }
    }
    line
}

impl FromStr for Theory {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut formulas = Vec::new();
        let mut declared: Option<Alphabet> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("@atoms") {
                let names: Vec<&str> = rest.split_whitespace().collect();
                let a = Alphabet::from_names(&names)?;
                declared = Some(match declared {
                    Some(d) => d.union(&a)?,
                    None => a,
                });
                continue;
            }
            let phi = parse(line).map_err(|e| match e {
                Error::Syntax { offset, expected, found } => Error::InvalidArgument(format!(
                    "line {}: syntax error at byte {offset}: expected one of {expected:?}, found {found}",
                    n + 1
                )),
                other => other,
            })?;
            formulas.push(phi);
        }
        if let Some(d) = &declared {
            for phi in &formulas {
                d.check(phi)?;
            }
        }
        Ok(Theory { formulas, declared })
    }
}
