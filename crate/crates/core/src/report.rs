//! Violation records shared by every checker.

use crate::scalar::{render_rational, Rational};
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// One violated identity: which check, where (basis labels), and the nonzero
/// part of the residual keyed by basis label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub at: Vec<String>,
    #[serde(serialize_with = "serialize_residual")]
    pub residual: BTreeMap<String, Rational>,
}

impl Finding {
    pub fn new(check: impl Into<String>, at: Vec<String>, residual: BTreeMap<String, Rational>) -> Self {
        Finding {
            check: check.into(),
            at,
            residual,
        }
    }

    /// Residual given as coordinates in a named basis; zero entries are dropped.
    pub fn from_vector(check: impl Into<String>, at: Vec<String>, names: &[String], v: &[Rational]) -> Self {
        Finding::new(check, at, labelled(names, v))
    }
}

pub fn labelled(names: &[String], v: &[Rational]) -> BTreeMap<String, Rational> {
    names
        .iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .map(|(n, x)| (n.clone(), x.clone()))
        .collect()
}

fn serialize_residual<S: Serializer>(r: &BTreeMap<String, Rational>, s: S) -> Result<S::Ok, S::Error> {
    let mut map = s.serialize_map(Some(r.len()))?;
    for (k, v) in r {
        map.serialize_entry(k, &render_rational(v))?;
    }
    map.end()
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at ({}):", self.check, self.at.join(", "))?;
        if self.residual.is_empty() {
            write!(f, " violated")?;
        }
        for (k, v) in &self.residual {
            write!(f, " {}·{}", v, k)?;
        }
        Ok(())
    }
}
