//! Monopole data: graded critical points and the integer coefficients that
//! define the equivariant Floer differential.
//!
//! The reducible point `θ` is never listed explicitly. It has grading 0 and is
//! referred to by the reserved id [`THETA`] in coefficient endpoints.

mod curated;
mod generate;
mod io;
mod reverse;
mod validate;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::window::Window;

pub use curated::{curated_library, i0, i1, i1_prime, i2, i3, i4, i5, i6};
pub use generate::{generate_instances, sample_instances, synthetic_instance, GeneratorConfig};
pub use io::{content_hash, parse, serialize, serialize_string};
pub use reverse::{reverse_orientation, reverse_with_signs, ReversalSigns};
pub use validate::{validate, Rule, ValidationReport, Violation};

pub const THETA: &str = "theta";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriticalPoint {
    pub id: String,
    pub gr: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficient {
    pub from: String,
    pub to: String,
    #[serde(with = "crate::serde_int")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonopoleData {
    pub name: String,
    pub points: Vec<CriticalPoint>,
    pub n: Vec<Coefficient>,
    pub m: Vec<Coefficient>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("invalid monopole data: {0}")]
    Invalid(String),
}

impl MonopoleData {
    pub fn new(name: impl Into<String>) -> Self {
        MonopoleData {
            name: name.into(),
            points: Vec::new(),
            n: Vec::new(),
            m: Vec::new(),
        }
    }

    pub fn with_point(mut self, id: &str, gr: i64) -> Self {
        self.points.push(CriticalPoint {
            id: id.to_string(),
            gr,
        });
        self
    }

    pub fn with_n(mut self, from: &str, to: &str, value: i64) -> Self {
        self.n.push(Coefficient {
            from: from.to_string(),
            to: to.to_string(),
            value: BigInt::from(value),
        });
        self
    }

    pub fn with_m(mut self, from: &str, to: &str, value: i64) -> Self {
        self.m.push(Coefficient {
            from: from.to_string(),
            to: to.to_string(),
            value: BigInt::from(value),
        });
        self
    }

    /// Sorts points by id and coefficients by endpoints, and drops zero coefficients.
    pub fn canonicalize(&mut self) {
        self.points.sort_by(|a, b| a.id.cmp(&b.id));
        for list in [&mut self.n, &mut self.m] {
            list.retain(|c| !c.value.is_zero());
            list.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
        }
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }

    /// Grading of a point id; `θ` has grading 0.
    pub fn grading(&self, id: &str) -> Option<i64> {
        if id == THETA {
            return Some(0);
        }
        self.points.iter().find(|p| p.id == id).map(|p| p.gr)
    }

    pub fn grading_span(&self) -> Option<(i64, i64)> {
        let lo = self.points.iter().map(|p| p.gr).min()?;
        let hi = self.points.iter().map(|p| p.gr).max()?;
        Some((lo, hi))
    }

    /// `[min gr − 4, max gr + 6]`, or `[−4, 6]` without irreducibles.
    pub fn default_window(&self) -> Window {
        match self.grading_span() {
            Some((lo, hi)) => Window::new(lo - 4, hi + 6),
            None => Window::new(-4, 6),
        }
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }
}

/// Index-based view of (structurally sound) monopole data used by the
/// complex builder. Points are numbered in canonical id order.
#[derive(Clone, Debug)]
pub struct PointTable {
    pub ids: Vec<String>,
    pub gr: Vec<i64>,
    /// `n_ab` as adjacency lists `a -> [(b, n_ab)]`.
    pub n_out: Vec<Vec<(usize, BigInt)>>,
    /// `n_aθ` (zero unless `gr(a) = 1`).
    pub n_to_theta: Vec<BigInt>,
    /// `n_θd` as `[(d, n_θd)]`.
    pub n_from_theta: Vec<(usize, BigInt)>,
    /// `m_ac` as adjacency lists.
    pub m_out: Vec<Vec<(usize, BigInt)>>,
}

impl PointTable {
    /// Builds the table; endpoints that do not resolve are reported as a schema error.
    pub fn new(data: &MonopoleData) -> Result<Self, DataError> {
        let mut order: Vec<&CriticalPoint> = data.points.iter().collect();
        order.sort_by(|a, b| a.id.cmp(&b.id));
        let ids: Vec<String> = order.iter().map(|p| p.id.clone()).collect();
        let gr: Vec<i64> = order.iter().map(|p| p.gr).collect();
        let np = ids.len();
        let lookup = |id: &str, field: &str| -> Result<Option<usize>, DataError> {
            if id == THETA {
                return Ok(None);
            }
            ids.binary_search_by(|x| x.as_str().cmp(id))
                .map(Some)
                .map_err(|_| DataError::Schema {
                    field: field.to_string(),
                    message: format!("unknown point `{id}`"),
                })
        };
        let mut table = PointTable {
            ids: ids.clone(),
            gr,
            n_out: vec![Vec::new(); np],
            n_to_theta: vec![BigInt::zero(); np],
            n_from_theta: Vec::new(),
            m_out: vec![Vec::new(); np],
        };
        for c in &data.n {
            if c.value.is_zero() {
                continue;
            }
            match (lookup(&c.from, "n")?, lookup(&c.to, "n")?) {
                (Some(a), Some(b)) => table.n_out[a].push((b, c.value.clone())),
                (Some(a), None) => table.n_to_theta[a] += &c.value,
                (None, Some(d)) => table.n_from_theta.push((d, c.value.clone())),
                (None, None) => {
                    return Err(DataError::Schema {
                        field: "n".into(),
                        message: "coefficient from theta to theta".into(),
                    })
                }
            }
        }
        for c in &data.m {
            if c.value.is_zero() {
                continue;
            }
            match (lookup(&c.from, "m")?, lookup(&c.to, "m")?) {
                (Some(a), Some(b)) => table.m_out[a].push((b, c.value.clone())),
                _ => {
                    return Err(DataError::Schema {
                        field: "m".into(),
                        message: "m-coefficients are defined between irreducible points only".into(),
                    })
                }
            }
        }
        for list in table.n_out.iter_mut().chain(table.m_out.iter_mut()) {
            list.sort_by_key(|(i, _)| *i);
        }
        table.n_from_theta.sort_by_key(|(i, _)| *i);
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|x| x.as_str().cmp(id)).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_windows() {
        assert_eq!(i0().default_window(), Window::new(-4, 6));
        assert_eq!(i1().default_window(), Window::new(-6, 7));
    }

    #[test]
    fn table_resolves_theta_edges() {
        let t = PointTable::new(&i6()).unwrap();
        let a = t.index_of("a").unwrap();
        let d = t.index_of("d").unwrap();
        assert_eq!(t.n_to_theta[a], BigInt::from(1));
        assert_eq!(t.n_from_theta, vec![(d, BigInt::from(1))]);
    }

    #[test]
    fn canonicalize_sorts_and_drops_zeros() {
        let d = MonopoleData::new("x")
            .with_point("b", 0)
            .with_point("a", 1)
            .with_n("a", "b", 0)
            .canonical();
        assert_eq!(d.points[0].id, "a");
        assert!(d.n.is_empty());
    }
}
