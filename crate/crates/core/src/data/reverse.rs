//! Orientation reversal `Y ↦ −Y`.
//!
//! Point ids are kept, gradings become `−gr − 1`, and every coefficient is
//! transported to the reversed pair of endpoints with a sign depending on its
//! type. The frozen signs are the unique choice (among all sixteen) for which
//! the duality pairing is adjoint to the differential.

use super::{validate, Coefficient, CriticalPoint, DataError, MonopoleData, THETA};

/// Signs applied when transporting each coefficient type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ReversalSigns {
    /// `n_ab` feeds `n_{b⁻a⁻}`.
    pub irreducible_n: i8,
    /// `n_aθ` feeds `n_{θa⁻}`.
    pub into_theta: i8,
    /// `n_θd` feeds `n_{d⁻θ}`.
    pub out_of_theta: i8,
    /// `m_ac` feeds `m_{c⁻a⁻}`.
    pub m: i8,
}

impl ReversalSigns {
    pub const FROZEN: ReversalSigns = ReversalSigns {
        irreducible_n: -1,
        into_theta: 1,
        out_of_theta: 1,
        m: 1,
    };

    /// All sixteen sign choices, in a fixed order.
    pub fn all() -> Vec<ReversalSigns> {
        let s = [1i8, -1];
        let mut out = Vec::with_capacity(16);
        for &irreducible_n in &s {
            for &into_theta in &s {
                for &out_of_theta in &s {
                    for &m in &s {
                        out.push(ReversalSigns {
                            irreducible_n,
                            into_theta,
                            out_of_theta,
                            m,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Reverses orientation with the frozen sign convention; the input must be valid.
pub fn reverse_orientation(data: &MonopoleData) -> Result<MonopoleData, DataError> {
    let report = validate(data);
    if !report.ok {
        return Err(DataError::Invalid(report.summary()));
    }
    Ok(reverse_with_signs(data, ReversalSigns::FROZEN))
}

/// Reverses orientation with an arbitrary sign choice and no validation.
pub fn reverse_with_signs(data: &MonopoleData, signs: ReversalSigns) -> MonopoleData {
    let name = match data.name.strip_prefix('-') {
        Some(rest) => rest.to_string(),
        None => format!("-{}", data.name),
    };
    let points = data
        .points
        .iter()
        .map(|p| CriticalPoint {
            id: p.id.clone(),
            gr: -p.gr - 1,
        })
        .collect();
    let flip = |c: &Coefficient, sign: i8| Coefficient {
        from: c.to.clone(),
        to: c.from.clone(),
        value: &c.value * i64::from(sign),
    };
    let n = data
        .n
        .iter()
        .map(|c| {
            let sign = if c.to == THETA {
                signs.into_theta
            } else if c.from == THETA {
                signs.out_of_theta
            } else {
                signs.irreducible_n
            };
            flip(c, sign)
        })
        .collect();
    let m = data.m.iter().map(|c| flip(c, signs.m)).collect();
    MonopoleData {
        name,
        points,
        n,
        m,
    }
    .canonical()
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn gradings_and_theta_edges_of_i1() {
        let r = reverse_orientation(&i1()).unwrap();
        assert_eq!(r.name, "-I1");
        assert_eq!(r.grading("a"), Some(-2));
        assert_eq!(r.grading("d"), Some(1));
        assert_eq!(r.n.len(), 1);
        assert_eq!((r.n[0].from.as_str(), r.n[0].to.as_str()), (THETA, "a"));
        assert_eq!(r.n[0].value, BigInt::from(1));
    }

    #[test]
    fn i2_edge_reversed_with_magnitude_two() {
        let r = reverse_orientation(&i2()).unwrap();
        assert_eq!(r.grading("a"), Some(-2));
        assert_eq!(r.grading("b"), Some(-1));
        assert_eq!((r.n[0].from.as_str(), r.n[0].to.as_str()), ("b", "a"));
        assert_eq!(r.n[0].value, BigInt::from(-2));
    }

    #[test]
    fn double_reversal_is_identity() {
        for d in curated_library() {
            let rr = reverse_orientation(&reverse_orientation(&d).unwrap()).unwrap();
            assert_eq!(rr, d.clone().canonical());
        }
    }

    #[test]
    fn reversal_preserves_validity() {
        for d in curated_library() {
            assert!(validate(&reverse_orientation(&d).unwrap()).ok, "{}", d.name);
        }
    }

    #[test]
    fn invalid_input_rejected() {
        assert!(matches!(reverse_orientation(&i1_prime()), Err(DataError::Invalid(_))));
    }
}
