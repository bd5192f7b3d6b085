//! The u-action, the homotopy `H` with `u − Ω⁻¹ = DH + HD`, and the induced
//! ℤ[u]-module structure on homology.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{ChainMapSlice, Flavor, FloerComplex};
use crate::data::MonopoleData;
use crate::homology::{induced_on_homology, Homology, HomologyClassMap};
use crate::linalg::{GroupMap, SparseIntMatrix};
use crate::window::Window;
use crate::Error;

fn require_equivariant(flavor: Flavor, operation: &str) -> Result<(), Error> {
    match flavor {
        Flavor::Infinity | Flavor::Minus | Flavor::Plus => Ok(()),
        _ => Err(Error::Unsupported {
            operation: operation.to_string(),
            flavor,
        }),
    }
}

/// Matrix of `u` from degree `n` to degree `n − 2`.
pub fn u_chain_map(cx: &FloerComplex, n: i64) -> Result<SparseIntMatrix, Error> {
    require_equivariant(cx.flavor(), "u-action")?;
    Ok(cx.map_matrix(cx, n, -2, |g| cx.u_image(g)))
}

/// Matrix of `H` from degree `n` to degree `n − 1`.
pub fn homotopy_h(cx: &FloerComplex, n: i64) -> SparseIntMatrix {
    cx.map_matrix(cx, n, -1, |g| cx.h_image(g))
}

/// `(u − Ω⁻¹) − (D H + H D)` at degree `n`.
pub fn homotopy_defect(cx: &FloerComplex, n: i64) -> Result<SparseIntMatrix, Error> {
    let lhs = &u_chain_map(cx, n)? - &cx.omega_inverse(n);
    let dh = &cx.differential(n - 1) * &homotopy_h(cx, n);
    let hd = &homotopy_h(cx, n - 1) * &cx.differential(n);
    Ok(&lhs - &(&dh + &hd))
}

/// First degree of the window where the homotopy identity fails.
pub fn homotopy_failure(cx: &FloerComplex, window: Window) -> Result<Option<i64>, Error> {
    for n in window.degrees() {
        if !homotopy_defect(cx, n)?.is_zero() {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn verify_u_homotopy(data: &MonopoleData, flavor: Flavor, window: Window) -> Result<bool, Error> {
    let cx = FloerComplex::new(data, flavor)?;
    Ok(homotopy_failure(&cx, window)?.is_none())
}

/// First degree where `D u ≠ u D`.
pub fn u_chain_failure(cx: &FloerComplex, window: Window) -> Result<Option<i64>, Error> {
    for n in window.degrees() {
        let left = &cx.differential(n - 2) * &u_chain_map(cx, n)?;
        let right = &u_chain_map(cx, n - 1)? * &cx.differential(n);
        if left != right {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn u_slice(cx: &FloerComplex, degrees: Window) -> Result<ChainMapSlice, Error> {
    require_equivariant(cx.flavor(), "u-action")?;
    Ok(ChainMapSlice::build(cx.flavor(), cx.flavor(), -2, degrees, |n| {
        cx.map_matrix(cx, n, -2, |g| cx.u_image(g))
    }))
}

pub fn omega_inverse_slice(cx: &FloerComplex, degrees: Window) -> ChainMapSlice {
    ChainMapSlice::build(cx.flavor(), cx.flavor(), -2, degrees, |n| cx.omega_inverse(n))
}

/// The induced actions of `u` and `Ω⁻¹` on homology and where they agree.
#[derive(Clone, Debug)]
pub struct UModule {
    pub u: HomologyClassMap,
    pub omega_inverse: HomologyClassMap,
    /// Degrees where the two induced maps differ.
    pub disagreements: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotenceReport {
    /// Smallest `p` with `u^p = 0` on `H_n`, per degree; `None` if not reached in the window.
    pub exponents: BTreeMap<i64, Option<usize>>,
    pub all_nilpotent: bool,
}

/// Induced `u` on the homology over `window`; needs `h` to cover `window`
/// widened by two degrees below.
pub fn u_module_structure(cx: &FloerComplex, h: &Homology, window: Window) -> Result<UModule, Error> {
    let degrees = Window::new(window.lo - 1, window.hi + 1);
    let u = induced_on_homology(cx, cx, h, h, &u_slice(cx, degrees)?, window)?;
    let omega_inverse = induced_on_homology(cx, cx, h, h, &omega_inverse_slice(cx, degrees), window)?;
    let disagreements = u
        .maps
        .iter()
        .filter(|(n, f)| omega_inverse.maps.get(n) != Some(*f))
        .map(|(&n, _)| n)
        .collect();
    Ok(UModule {
        u,
        omega_inverse,
        disagreements,
    })
}

/// Iterates induced `u` down from each degree until it becomes zero or
/// leaves the window.
pub fn nilpotence(u: &HomologyClassMap, window: Window) -> Result<NilpotenceReport, Error> {
    let mut exponents = BTreeMap::new();
    for &n in u.maps.keys() {
        let mut power: Option<GroupMap> = None;
        let mut found = None;
        let mut degree = n;
        for p in 1..=window.len() {
            let Some(step) = u.maps.get(&degree) else {
                break;
            };
            let next = match &power {
                None => step.clone(),
                Some(prev) => step.compose(prev)?,
            };
            degree -= 2;
            if next.is_zero() {
                found = Some(p);
                break;
            }
            power = Some(next);
        }
        exponents.insert(n, found);
    }
    let all_nilpotent = exponents.values().all(Option::is_some);
    Ok(NilpotenceReport {
        exponents,
        all_nilpotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Generator;
    use crate::data::{i0, i1, i2, i3, i6};
    use num_bigint::BigInt;

    #[test]
    fn u_on_i3_eta_a() {
        let cx = FloerComplex::new(&i3(), Flavor::Plus).unwrap();
        let t = cx.table();
        let (a, c) = (t.index_of("a").unwrap(), t.index_of("c").unwrap());
        let u = u_chain_map(&cx, 2).unwrap();
        let j = cx.slice(2).position(&Generator::eta(a, 0)).unwrap();
        let i = cx.slice(0).position(&Generator::eta(c, 0)).unwrap();
        assert_eq!(u.get(i, j), BigInt::from(3));
        assert_eq!(u.column(j).iter().filter(|v| **v != BigInt::from(0)).count(), 1);
    }

    #[test]
    fn u_on_i0_and_i1() {
        let cx = FloerComplex::new(&i0(), Flavor::Infinity).unwrap();
        assert_eq!(u_chain_map(&cx, 4).unwrap(), SparseIntMatrix::identity(1));
        let cx = FloerComplex::new(&i1(), Flavor::Plus).unwrap();
        let a = cx.table().index_of("a").unwrap();
        let u = u_chain_map(&cx, 2).unwrap();
        let j = cx.slice(2).position(&Generator::one(a, 0)).unwrap();
        let i = cx.slice(0).position(&Generator::theta(0)).unwrap();
        assert_eq!(u.get(i, j), BigInt::from(1));
    }

    #[test]
    fn h_values() {
        let cx = FloerComplex::new(&i1(), Flavor::Plus).unwrap();
        let a = cx.table().index_of("a").unwrap();
        let h = homotopy_h(&cx, 2);
        let j = cx.slice(2).position(&Generator::one(a, 0)).unwrap();
        let i = cx.slice(1).position(&Generator::eta(a, 0)).unwrap();
        assert_eq!(h.get(i, j), BigInt::from(1));
        let cx0 = FloerComplex::new(&i0(), Flavor::Infinity).unwrap();
        assert!((-6..=6).all(|n| homotopy_h(&cx0, n).is_zero()));
        let cx2 = FloerComplex::new(&i2(), Flavor::Plus).unwrap();
        let b = cx2.table().index_of("b").unwrap();
        let j = cx2.slice(0).position(&Generator::eta(b, 0)).unwrap();
        assert!(homotopy_h(&cx2, 0).column(j).iter().all(|v| *v == BigInt::from(0)));
    }

    #[test]
    fn homotopy_identity_holds_on_curated_instances() {
        let w = Window::new(-8, 8);
        for d in [i0(), i1(), i6()] {
            for f in [Flavor::Infinity, Flavor::Minus, Flavor::Plus] {
                assert!(verify_u_homotopy(&d, f, w).unwrap(), "{} {f}", d.name);
                let cx = FloerComplex::new(&d, f).unwrap();
                assert_eq!(u_chain_failure(&cx, w).unwrap(), None);
            }
        }
    }

    #[test]
    fn u_undefined_on_hat() {
        let cx = FloerComplex::new(&i0(), Flavor::Hat).unwrap();
        assert!(matches!(u_chain_map(&cx, 0), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn u_module_on_i0_plus() {
        let cx = FloerComplex::new(&i0(), Flavor::Plus).unwrap();
        let w = Window::new(-2, 8);
        let h = Homology::compute(&cx, Window::new(-4, 8)).unwrap();
        let m = u_module_structure(&cx, &h, w).unwrap();
        assert!(m.disagreements.is_empty());
        for r in 1..=4 {
            assert!(m.u.at(2 * r).unwrap().is_isomorphism());
        }
        assert!(m.u.at(0).unwrap().is_zero());
        let nil = nilpotence(&m.u, w).unwrap();
        assert!(nil.all_nilpotent);
        assert_eq!(nil.exponents[&4], Some(3));
    }
}
