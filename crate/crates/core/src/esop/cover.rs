//! XOR-of-products covers and PLA-style text ingestion.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use super::cube::{Cube, MAX_VARS};
use crate::error::{Error, Result};

/// An ordered set of cubes combined with XOR.
///
/// Duplicate cubes are rejected on construction: two identical terms cancel
/// under XOR, so a cover containing them is almost certainly a bug upstream.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EsopCover {
    num_vars: usize,
    cubes: Vec<Cube>,
}

impl EsopCover {
    pub fn new(num_vars: usize, cubes: Vec<Cube>) -> Result<EsopCover> {
        if num_vars > MAX_VARS {
            return Err(Error::MalformedCover(format!(
                "{num_vars} variables exceeds the limit of {MAX_VARS}"
            )));
        }
        let mut seen = HashSet::with_capacity(cubes.len());
        for c in &cubes {
            if c.len() != num_vars {
                return Err(Error::MalformedCover(format!(
                    "cube {c} has {} symbols, cover has {num_vars} variables",
                    c.len()
                )));
            }
            if !seen.insert(*c) {
                return Err(Error::MalformedCover(format!("duplicate cube {c}")));
            }
        }
        Ok(EsopCover { num_vars, cubes })
    }

    /// Builds a cover from cubes already known to be well formed.
    pub(crate) fn from_parts_unchecked(num_vars: usize, cubes: Vec<Cube>) -> EsopCover {
        debug_assert!(cubes.iter().all(|c| c.len() == num_vars));
        EsopCover { num_vars, cubes }
    }

    pub fn empty(num_vars: usize) -> EsopCover {
        EsopCover {
            num_vars,
            cubes: Vec::new(),
        }
    }

    /// Parses cubes written as strings, e.g. `["00", "01", "10"]`.
    pub fn parse_cubes<S: AsRef<str>>(num_vars: usize, cubes: &[S]) -> Result<EsopCover> {
        let cubes = cubes
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<Cube>>>()?;
        EsopCover::new(num_vars, cubes)
    }

    /// Reads the PLA-like text format: one cube per line over `0`, `1`, `-`;
    /// `#` starts a comment line; an optional leading `.i N` fixes the
    /// variable count (otherwise the first cube decides).
    pub fn from_pla(text: &str) -> Result<EsopCover> {
        let mut declared: Option<usize> = None;
        let mut seen_any = false;
        let mut cubes = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = lineno + 1;
            if let Some(rest) = line.strip_prefix(".i") {
                if seen_any {
                    return Err(Error::Pla {
                        line: lineno,
                        msg: ".i must be the first non-comment line".into(),
                    });
                }
                let n = rest.trim().parse::<usize>().map_err(|e| Error::Pla {
                    line: lineno,
                    msg: format!("bad variable count: {e}"),
                })?;
                declared = Some(n);
                seen_any = true;
                continue;
            }
            seen_any = true;
            let cube: Cube = line.parse().map_err(|e: Error| Error::Pla {
                line: lineno,
                msg: e.to_string(),
            })?;
            let n = *declared.get_or_insert(cube.len());
            if cube.len() != n {
                return Err(Error::Pla {
                    line: lineno,
                    msg: format!("cube has {} symbols, expected {n}", cube.len()),
                });
            }
            cubes.push(cube);
        }
        EsopCover::new(declared.unwrap_or(0), cubes)
    }

    /// Writes the cover in the format accepted by [`EsopCover::from_pla`].
    pub fn to_pla(&self) -> String {
        let mut out = format!(".i {}\n", self.num_vars);
        for c in &self.cubes {
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// The cubes as a sorted vector, for order-insensitive comparison.
    pub fn sorted_cubes(&self) -> Vec<Cube> {
        let mut v = self.cubes.clone();
        v.sort();
        v
    }

    pub fn cube_strings(&self) -> Vec<String> {
        self.cubes.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for EsopCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cubes.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.cubes.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for EsopCover {
    type Err = Error;

    fn from_str(s: &str) -> Result<EsopCover> {
        EsopCover::from_pla(s)
    }
}
