use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::MAX_VARS;
use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    field: Field,
    vars: Vec<String>,
}

/// The standard graded polynomial ring `GF(p)[x_0, ..., x_n]`.
///
/// Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    pub fn new(p: u32, vars: Vec<String>) -> Result<Ring> {
        let field = Field::new(p)?;
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable required".into()));
        }
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "at most {MAX_VARS} variables supported"
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v
                .chars()
                .next()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData { field, vars })))
    }

    /// `GF(p)[x0, ..., x{nvars-1}]`.
    pub fn standard(p: u32, nvars: usize) -> Result<Ring> {
        Ring::new(p, (0..nvars).map(|i| format!("x{i}")).collect())
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.0.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    /// `n` for `R = K[x_0..x_n]`, so that `dim R = n + 1`.
    pub fn n(&self) -> i64 {
        self.nvars() as i64 - 1
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({})[{}]",
            self.field().characteristic(),
            self.0.vars.join(",")
        )
    }
}
