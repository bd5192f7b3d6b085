//! Structural checks and the quadratic identities that make `D² = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Coefficient, MonopoleData, PointTable, THETA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "empty-id")]
    EmptyId,
    #[serde(rename = "reserved-id")]
    ReservedId,
    #[serde(rename = "duplicate-id")]
    DuplicateId,
    #[serde(rename = "unknown-point")]
    UnknownPoint,
    #[serde(rename = "placement")]
    Placement,
    #[serde(rename = "duplicate-coefficient")]
    DuplicateCoefficient,
    /// `Σ_b n_ab n_bc = 0` for irreducible `a` and `c` irreducible or `θ`, grading gap 2.
    #[serde(rename = "A")]
    A,
    /// `Σ_d n_θd n_db = 0` for `gr(b) = −3`.
    #[serde(rename = "A-theta")]
    ATheta,
    /// `Σ n_ac m_cd − Σ m_ac n_cd = 0` for irreducible `a`, `d` with grading gap 3.
    #[serde(rename = "B")]
    B,
    /// The gap-3 identity for `gr(a) = 1`, `gr(d) = −2`, including `n_aθ n_θd`.
    #[serde(rename = "B'")]
    BPrime,
}

impl Rule {
    pub fn is_structural(self) -> bool {
        !matches!(self, Rule::A | Rule::ATheta | Rule::B | Rule::BPrime)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Rule::EmptyId => "empty-id",
            Rule::ReservedId => "reserved-id",
            Rule::DuplicateId => "duplicate-id",
            Rule::UnknownPoint => "unknown-point",
            Rule::Placement => "placement",
            Rule::DuplicateCoefficient => "duplicate-coefficient",
            Rule::A => "A",
            Rule::ATheta => "A-theta",
            Rule::B => "B",
            Rule::BPrime => "B'",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: Rule,
    pub points: Vec<String>,
    #[serde(
        with = "crate::serde_int::option",
        skip_serializing_if = "Option::is_none",
        default
    )]
    pub value: Option<BigInt>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ({}) {}", self.rule, self.points.join(", "), self.detail)?;
        if let Some(v) = &self.value {
            write!(f, " = {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| (a.rule, &a.points).cmp(&(b.rule, &b.points)));
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn summary(&self) -> String {
        if self.ok {
            return "valid".to_string();
        }
        self.violations
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Checks ids, coefficient placement and the identities A, A-theta, B and B'.
///
/// Identity checks run only when the data is structurally sound, since they
/// need every endpoint to resolve.
pub fn validate(data: &MonopoleData) -> ValidationReport {
    let structural = structural_violations(data);
    if !structural.is_empty() {
        return ValidationReport::from_violations(structural);
    }
    let table = PointTable::new(data).expect("structurally sound data resolves");
    ValidationReport::from_violations(identity_violations(&table))
}

pub(crate) fn structural_violations(data: &MonopoleData) -> Vec<Violation> {
    let mut out = Vec::new();
    let structural = |rule, points: Vec<String>, detail: String| Violation {
        rule,
        points,
        value: None,
        detail,
    };
    let mut grading = BTreeMap::new();
    for p in &data.points {
        if p.id.is_empty() {
            out.push(structural(Rule::EmptyId, vec![], "point id must be non-empty".into()));
        } else if p.id == THETA {
            out.push(structural(
                Rule::ReservedId,
                vec![p.id.clone()],
                "`theta` is reserved for the reducible point".into(),
            ));
        } else if grading.insert(p.id.as_str(), p.gr).is_some() {
            out.push(structural(
                Rule::DuplicateId,
                vec![p.id.clone()],
                "point id listed twice".into(),
            ));
        }
    }
    let resolve = |id: &str| -> Option<Option<i64>> {
        if id == THETA {
            Some(None)
        } else {
            grading.get(id).map(|&g| Some(g))
        }
    };
    let check_list = |list: &[Coefficient], field: &str, out: &mut Vec<Violation>| {
        let mut seen = BTreeSet::new();
        for c in list {
            let points = vec![c.from.clone(), c.to.clone()];
            if !seen.insert((c.from.as_str(), c.to.as_str())) {
                out.push(structural(
                    Rule::DuplicateCoefficient,
                    points.clone(),
                    format!("{field}-coefficient listed twice"),
                ));
            }
            let (Some(from), Some(to)) = (resolve(&c.from), resolve(&c.to)) else {
                out.push(structural(
                    Rule::UnknownPoint,
                    points,
                    format!("{field}-coefficient endpoint is not a listed point"),
                ));
                continue;
            };
            if c.value.is_zero() {
                continue;
            }
            let placed = match (field, from, to) {
                ("n", Some(a), Some(b)) => a - b == 1,
                ("n", Some(a), None) => a == 1,
                ("n", None, Some(d)) => d == -2,
                ("m", Some(a), Some(c)) => a - c == 2,
                _ => false,
            };
            if !placed {
                let rule_text = if field == "n" {
                    "n-coefficients need gr(from) - gr(to) = 1, gr(from) = 1 into theta, or gr(to) = -2 out of theta"
                } else {
                    "m-coefficients need irreducible endpoints with gr(from) - gr(to) = 2"
                };
                out.push(structural(Rule::Placement, points, rule_text.into()));
            }
        }
    };
    check_list(&data.n, "n", &mut out);
    check_list(&data.m, "m", &mut out);
    out
}

fn identity_violations(t: &PointTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |rule, points: Vec<String>, value: BigInt, detail: &str| {
        out.push(Violation {
            rule,
            points,
            value: Some(value),
            detail: detail.to_string(),
        })
    };
    for a in 0..t.len() {
        // A: two n-steps from a, landing on an irreducible point or on theta
        let mut two_step: BTreeMap<usize, BigInt> = BTreeMap::new();
        let mut into_theta = BigInt::zero();
        for (b, nab) in &t.n_out[a] {
            for (c, nbc) in &t.n_out[*b] {
                *two_step.entry(*c).or_default() += nab * nbc;
            }
            if t.gr[*b] == 1 {
                into_theta += nab * &t.n_to_theta[*b];
            }
        }
        for (c, v) in two_step {
            if !v.is_zero() {
                push(Rule::A, vec![t.ids[a].clone(), t.ids[c].clone()], v, "sum_b n_ab n_bc");
            }
        }
        if !into_theta.is_zero() {
            push(
                Rule::A,
                vec![t.ids[a].clone(), THETA.to_string()],
                into_theta,
                "sum_b n_ab n_b,theta",
            );
        }

        // B and B': mixed n/m paths of grading length 3
        let mut gap3: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, nac) in &t.n_out[a] {
            for (d, mcd) in &t.m_out[*c] {
                *gap3.entry(*d).or_default() += nac * mcd;
            }
        }
        for (c, mac) in &t.m_out[a] {
            for (d, ncd) in &t.n_out[*c] {
                *gap3.entry(*d).or_default() -= mac * ncd;
            }
        }
        if t.gr[a] == 1 {
            for (d, ntd) in &t.n_from_theta {
                *gap3.entry(*d).or_default() += &t.n_to_theta[a] * ntd;
            }
        }
        for (d, v) in gap3 {
            if v.is_zero() {
                continue;
            }
            let (rule, detail) = if t.gr[a] == 1 && t.gr[d] == -2 {
                (Rule::BPrime, "sum n_ac m_cd + n_a,theta n_theta,d - sum m_ac n_cd")
            } else {
                (Rule::B, "sum n_ac m_cd - sum m_ac n_cd")
            };
            push(rule, vec![t.ids[a].clone(), t.ids[d].clone()], v, detail);
        }
    }

    let mut from_theta: BTreeMap<usize, BigInt> = BTreeMap::new();
    for (d, ntd) in &t.n_from_theta {
        for (b, ndb) in &t.n_out[*d] {
            *from_theta.entry(*b).or_default() += ntd * ndb;
        }
    }
    for (b, v) in from_theta {
        if !v.is_zero() {
            push(
                Rule::ATheta,
                vec![THETA.to_string(), t.ids[b].clone()],
                v,
                "sum_d n_theta,d n_db",
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn curated_instances_are_valid() {
        for d in curated_library() {
            let r = validate(&d);
            assert!(r.ok, "{}: {}", d.name, r.summary());
        }
    }

    #[test]
    fn i1_prime_violates_b_prime_by_one() {
        let r = validate(&i1_prime());
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert_eq!(v.rule, Rule::BPrime);
        assert_eq!(v.points, vec!["a".to_string(), "d".to_string()]);
        assert_eq!(v.value, Some(BigInt::from(1)));
    }

    #[test]
    fn structural_rules() {
        let d = MonopoleData::new("x").with_point("a", 0).with_point("a", 1);
        assert_eq!(validate(&d).violations[0].rule, Rule::DuplicateId);
        let d = MonopoleData::new("x").with_point(THETA, 0);
        assert_eq!(validate(&d).violations[0].rule, Rule::ReservedId);
        let d = MonopoleData::new("x").with_point("a", 2).with_point("b", 0).with_n("a", "b", 1);
        assert_eq!(validate(&d).violations[0].rule, Rule::Placement);
        let d = MonopoleData::new("x").with_point("a", 1).with_n("a", "z", 1);
        assert_eq!(validate(&d).violations[0].rule, Rule::UnknownPoint);
        let d = MonopoleData::new("x").with_point("a", 2).with_m("a", THETA, 1);
        assert_eq!(validate(&d).violations[0].rule, Rule::Placement);
    }

    #[test]
    fn identity_a_with_theta_target() {
        let d = MonopoleData::new("x")
            .with_point("a", 2)
            .with_point("b", 1)
            .with_n("a", "b", 1)
            .with_n("b", THETA, 2);
        let r = validate(&d);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, Rule::A);
        assert_eq!(r.violations[0].value, Some(BigInt::from(2)));
    }

    #[test]
    fn identity_a_with_theta_source() {
        let d = MonopoleData::new("x")
            .with_point("d", -2)
            .with_point("b", -3)
            .with_n(THETA, "d", 1)
            .with_n("d", "b", -1);
        let r = validate(&d);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, Rule::ATheta);
        assert_eq!(r.violations[0].value, Some(BigInt::from(-1)));
    }

    #[test]
    fn identity_b_off_the_theta_band() {
        let d = MonopoleData::new("x")
            .with_point("a", 2)
            .with_point("c", 0)
            .with_point("d", -1)
            .with_m("a", "c", 1)
            .with_n("c", "d", 1);
        let r = validate(&d);
        assert_eq!(r.violations[0].rule, Rule::B);
        assert_eq!(r.violations[0].value, Some(BigInt::from(-1)));
    }
}
