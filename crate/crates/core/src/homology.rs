//! Homology over ℤ, induced maps on homology and symbolic stable tails.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{ChainMapSlice, Flavor, FloerComplex, GradedComplex};
use crate::data::MonopoleData;
use crate::linalg::{kernel_basis, AbelianGroupInvariants, GroupMap, PresentedGroup, SparseIntMatrix, Subquotient};
use crate::window::Window;
use crate::Error;

/// `ker D_n / im D_{n+1}` with recorded cycle representatives.
#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub degree: i64,
    quotient: Subquotient,
}

impl HomologyDegree {
    pub fn compute<C: GradedComplex + ?Sized>(c: &C, n: i64) -> Result<Self, Error> {
        let cycles = kernel_basis(&c.boundary(n));
        let boundaries = c.boundary(n + 1);
        Ok(HomologyDegree {
            degree: n,
            quotient: Subquotient::new(&cycles, &boundaries)?,
        })
    }

    pub fn invariants(&self) -> AbelianGroupInvariants {
        self.quotient.invariants()
    }

    pub fn presented(&self) -> PresentedGroup {
        PresentedGroup::new(self.quotient.orders().to_vec())
    }

    /// Cycle representatives of the generators of [`Self::presented`].
    pub fn representatives(&self) -> &[Vec<BigInt>] {
        self.quotient.generators()
    }

    /// Class of a cycle in the generators of [`Self::presented`].
    pub fn class_of(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>, Error> {
        Ok(self.quotient.coords(cycle)?)
    }

    pub fn is_zero(&self) -> bool {
        self.quotient.num_generators() == 0
    }
}

/// Homology in every degree of a window, computed in parallel.
#[derive(Clone, Debug)]
pub struct Homology {
    pub window: Window,
    pub degrees: BTreeMap<i64, HomologyDegree>,
}

impl Homology {
    pub fn compute<C: GradedComplex + ?Sized>(c: &C, window: Window) -> Result<Self, Error> {
        let degrees = window
            .degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| HomologyDegree::compute(c, n).map(|h| (n, h)))
            .collect::<Result<BTreeMap<_, _>, _>>()?;
        Ok(Homology { window, degrees })
    }

    pub fn at(&self, n: i64) -> Option<&HomologyDegree> {
        self.degrees.get(&n)
    }

    pub fn groups(&self) -> BTreeMap<i64, AbelianGroupInvariants> {
        self.degrees.iter().map(|(&n, h)| (n, h.invariants())).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    /// The complex agrees with the Laurent complex beyond the window, hence is 2-periodic.
    Periodic,
    /// The complex vanishes beyond the window.
    Zero,
}

/// Homology of all degrees beyond one end of a window, described by parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tail {
    pub kind: TailKind,
    /// First degree outside the window covered by the description.
    pub from: i64,
    pub even: AbelianGroupInvariants,
    pub odd: AbelianGroupInvariants,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedAbelianGroup {
    pub window: Window,
    pub groups: BTreeMap<i64, AbelianGroupInvariants>,
    pub tail_above: Option<Tail>,
    pub tail_below: Option<Tail>,
}

impl GradedAbelianGroup {
    pub fn at(&self, n: i64) -> Option<&AbelianGroupInvariants> {
        self.groups.get(&n)
    }

    /// The group in any degree, using the tails outside the window.
    pub fn extended(&self, n: i64) -> Option<AbelianGroupInvariants> {
        if let Some(g) = self.groups.get(&n) {
            return Some(g.clone());
        }
        let tail = if n > self.window.hi {
            self.tail_above.as_ref()
        } else {
            self.tail_below.as_ref()
        }?;
        Some(if n.rem_euclid(2) == 0 {
            tail.even.clone()
        } else {
            tail.odd.clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.groups.values().all(AbelianGroupInvariants::is_zero)
            && [&self.tail_above, &self.tail_below]
                .iter()
                .all(|t| t.as_ref().is_none_or(|t| t.even.is_zero() && t.odd.is_zero()))
    }
}

fn parity_pair(
    groups: &BTreeMap<i64, AbelianGroupInvariants>,
    a: i64,
    b: i64,
) -> (AbelianGroupInvariants, AbelianGroupInvariants) {
    let (ga, gb) = (groups[&a].clone(), groups[&b].clone());
    if a.rem_euclid(2) == 0 {
        (ga, gb)
    } else {
        (gb, ga)
    }
}

/// Tail above the window, if it can be verified from the edge degrees.
fn tail_above(cx: &FloerComplex, window: Window, groups: &BTreeMap<i64, AbelianGroupInvariants>) -> Option<Tail> {
    let hi = window.hi;
    if window.len() < 4 {
        return None;
    }
    match cx.flavor() {
        Flavor::Infinity | Flavor::Plus => {
            // saturation is monotone upward for these flavors
            let saturated = cx.is_saturated(hi - 2) && cx.is_saturated(hi - 1);
            let periodic = cx.differential(hi + 1) == cx.differential(hi - 1)
                && cx.differential(hi + 2) == cx.differential(hi);
            if !(saturated && periodic) {
                return None;
            }
            let (even, odd) = parity_pair(groups, hi - 1, hi);
            Some(Tail {
                kind: TailKind::Periodic,
                from: hi + 1,
                even,
                odd,
                verified: true,
            })
        }
        _ => {
            let bounded = cx.support().1.is_some_and(|s| s <= hi);
            let empty = cx.slice(hi + 1).is_empty() && cx.slice(hi + 2).is_empty();
            (bounded && empty).then(|| zero_tail(hi + 1))
        }
    }
}

fn tail_below(cx: &FloerComplex, window: Window, groups: &BTreeMap<i64, AbelianGroupInvariants>) -> Option<Tail> {
    let lo = window.lo;
    if window.len() < 4 {
        return None;
    }
    match cx.flavor() {
        Flavor::Infinity | Flavor::Minus => {
            let saturated = cx.is_saturated(lo + 1) && cx.is_saturated(lo + 2);
            let periodic = cx.differential(lo - 1) == cx.differential(lo + 1)
                && cx.differential(lo) == cx.differential(lo + 2);
            if !(saturated && periodic) {
                return None;
            }
            let (even, odd) = parity_pair(groups, lo, lo + 1);
            Some(Tail {
                kind: TailKind::Periodic,
                from: lo - 1,
                even,
                odd,
                verified: true,
            })
        }
        _ => {
            let bounded = cx.support().0.is_some_and(|s| s >= lo);
            let empty = cx.slice(lo - 1).is_empty() && cx.slice(lo - 2).is_empty();
            (bounded && empty).then(|| zero_tail(lo - 1))
        }
    }
}

fn zero_tail(from: i64) -> Tail {
    Tail {
        kind: TailKind::Zero,
        from,
        even: AbelianGroupInvariants::zero(),
        odd: AbelianGroupInvariants::zero(),
        verified: true,
    }
}

/// Homology over a window with verified tails, plus the computed degrees.
pub fn graded_homology_of(cx: &FloerComplex, window: Window) -> Result<(GradedAbelianGroup, Homology), Error> {
    let h = Homology::compute(cx, window)?;
    let groups = h.groups();
    let graded = GradedAbelianGroup {
        window,
        tail_above: tail_above(cx, window, &groups),
        tail_below: tail_below(cx, window, &groups),
        groups,
    };
    Ok((graded, h))
}

pub fn homology_at(data: &MonopoleData, flavor: Flavor, n: i64) -> Result<AbelianGroupInvariants, Error> {
    let cx = FloerComplex::new(data, flavor)?;
    Ok(HomologyDegree::compute(&cx, n)?.invariants())
}

pub fn graded_homology(data: &MonopoleData, flavor: Flavor, window: Window) -> Result<GradedAbelianGroup, Error> {
    let cx = FloerComplex::new(data, flavor)?;
    Ok(graded_homology_of(&cx, window)?.0)
}

/// A chain map's action on homology, degree by degree.
#[derive(Clone, Debug)]
pub struct HomologyClassMap {
    pub source: Flavor,
    pub target: Flavor,
    pub shift: i64,
    pub maps: BTreeMap<i64, GroupMap>,
}

impl HomologyClassMap {
    pub fn at(&self, n: i64) -> Option<&GroupMap> {
        self.maps.get(&n)
    }

    /// `self ∘ inner` on the degrees where both are defined.
    pub fn compose(&self, inner: &HomologyClassMap) -> Result<HomologyClassMap, Error> {
        let mut maps = BTreeMap::new();
        for (&n, g) in &inner.maps {
            if let Some(f) = self.maps.get(&(n + inner.shift)) {
                maps.insert(n, f.compose(g)?);
            }
        }
        Ok(HomologyClassMap {
            source: inner.source,
            target: self.target,
            shift: self.shift + inner.shift,
            maps,
        })
    }
}

/// Checks `D_tgt F_n = F_{n−1} D_src` for every `n` in `degrees`.
pub fn check_chain_map(
    src: &dyn GradedComplex,
    tgt: &dyn GradedComplex,
    map: &ChainMapSlice,
    degrees: Window,
) -> Result<(), Error> {
    for n in degrees.degrees() {
        let (Some(f_n), Some(f_prev)) = (map.at(n), map.at(n - 1)) else {
            return Err(Error::WindowTooSmall {
                window: degrees,
                reason: format!("chain map not given at degree {} or {}", n, n - 1),
            });
        };
        let left = &tgt.boundary(n + map.shift) * f_n;
        let right = f_prev * &src.boundary(n);
        if left != right {
            return Err(Error::NotChainMap { degree: n });
        }
    }
    Ok(())
}

/// The action of `map` on the homology classes recorded in `src_h`, landing
/// in the classes of `tgt_h`. The chain-map property is checked first on the
/// window plus one degree above.
pub fn induced_on_homology(
    src: &dyn GradedComplex,
    tgt: &dyn GradedComplex,
    src_h: &Homology,
    tgt_h: &Homology,
    map: &ChainMapSlice,
    window: Window,
) -> Result<HomologyClassMap, Error> {
    check_chain_map(src, tgt, map, Window::new(window.lo, window.hi + 1))?;
    let maps = window
        .degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let too_small = |what: &str| Error::WindowTooSmall {
                window,
                reason: format!("{what} missing at degree {n}"),
            };
            let hs = src_h.at(n).ok_or_else(|| too_small("source homology"))?;
            let ht = tgt_h.at(n + map.shift).ok_or_else(|| too_small("target homology"))?;
            let f = map.at(n).ok_or_else(|| too_small("chain map"))?;
            let cols = hs
                .representatives()
                .iter()
                .map(|z| ht.class_of(&f.mul_vec(z)))
                .collect::<Result<Vec<_>, _>>()?;
            let matrix = SparseIntMatrix::from_columns(ht.presented().num_generators(), &cols);
            Ok((n, GroupMap::new(hs.presented(), ht.presented(), matrix)?))
        })
        .collect::<Result<BTreeMap<_, _>, Error>>()?;
    Ok(HomologyClassMap {
        source: map.source,
        target: map.target,
        shift: map.shift,
        maps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{i0, i1, i2};

    fn z() -> AbelianGroupInvariants {
        AbelianGroupInvariants::free(1)
    }

    #[test]
    fn i0_plus_is_a_tower() {
        let g = graded_homology(&i0(), Flavor::Plus, Window::new(-4, 10)).unwrap();
        for (&n, grp) in &g.groups {
            let expected = if n >= 0 && n % 2 == 0 { z() } else { AbelianGroupInvariants::zero() };
            assert_eq!(grp, &expected, "degree {n}");
        }
        let above = g.tail_above.unwrap();
        assert_eq!((above.even, above.odd), (z(), AbelianGroupInvariants::zero()));
        assert_eq!(g.tail_below.unwrap().kind, TailKind::Zero);
    }

    #[test]
    fn i1_plus_values() {
        let expected = [(-2, 1), (-1, 0), (0, 0), (1, 0), (2, 1), (3, 0), (4, 1)];
        for (n, r) in expected {
            let g = homology_at(&i1(), Flavor::Plus, n).unwrap();
            assert_eq!(g, AbelianGroupInvariants::free(r), "degree {n}");
        }
    }

    #[test]
    fn i2_plus_degree_zero_has_two_torsion() {
        let g = homology_at(&i2(), Flavor::Plus, 0).unwrap();
        assert_eq!(g, AbelianGroupInvariants::new(1, vec![BigInt::from(2)]));
    }

    #[test]
    fn i0_minus_and_hat() {
        let g = graded_homology(&i0(), Flavor::Minus, Window::new(-8, 4)).unwrap();
        for (&n, grp) in &g.groups {
            let expected = if n <= -2 && n % 2 == 0 { z() } else { AbelianGroupInvariants::zero() };
            assert_eq!(grp, &expected, "degree {n}");
        }
        let below = g.tail_below.unwrap();
        assert_eq!((below.even, below.odd), (z(), AbelianGroupInvariants::zero()));
        let g = graded_homology(&i0(), Flavor::Hat, Window::new(-4, 6)).unwrap();
        assert!(g.groups.iter().all(|(&n, grp)| (n == 0) == !grp.is_zero()));
    }

    #[test]
    fn infinity_pattern_on_i1() {
        let g = graded_homology(&i1(), Flavor::Infinity, Window::new(-8, 8)).unwrap();
        for (&n, grp) in &g.groups {
            let expected = if n % 2 == 0 { z() } else { AbelianGroupInvariants::zero() };
            assert_eq!(grp, &expected);
        }
        assert!(g.tail_above.is_some() && g.tail_below.is_some());
    }

    #[test]
    fn omega_inverse_on_i0_plus_homology() {
        let cx = FloerComplex::new(&i0(), Flavor::Plus).unwrap();
        let w = Window::new(-2, 8);
        let h_src = Homology::compute(&cx, w).unwrap();
        let h_tgt = Homology::compute(&cx, Window::new(-4, 6)).unwrap();
        let map = ChainMapSlice::build(Flavor::Plus, Flavor::Plus, -2, w.widen(1), |n| cx.omega_inverse(n));
        let induced = induced_on_homology(&cx, &cx, &h_src, &h_tgt, &map, w).unwrap();
        for r in 1..=4 {
            assert!(induced.at(2 * r).unwrap().is_isomorphism());
        }
        assert!(induced.at(0).unwrap().is_zero());
    }

    #[test]
    fn identity_map_induces_identity() {
        let cx = FloerComplex::new(&i2(), Flavor::Plus).unwrap();
        let w = Window::new(-2, 4);
        let h = Homology::compute(&cx, w).unwrap();
        let map = ChainMapSlice::build(Flavor::Plus, Flavor::Plus, 0, w.widen(1), |n| {
            SparseIntMatrix::identity(cx.rank(n))
        });
        let induced = induced_on_homology(&cx, &cx, &h, &h, &map, w).unwrap();
        for (n, f) in &induced.maps {
            let g = f.source().num_generators();
            assert_eq!(f.matrix(), &SparseIntMatrix::identity(g), "degree {n}");
        }
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let cx = FloerComplex::new(&i2(), Flavor::Plus).unwrap();
        let w = Window::new(-2, 4);
        let h = Homology::compute(&cx, w).unwrap();
        // H is not a chain map
        let map = ChainMapSlice::build(Flavor::Plus, Flavor::Plus, -1, w.widen(1), |n| {
            cx.map_matrix(&cx, n, -1, |g| cx.h_image(g))
        });
        let r = induced_on_homology(&cx, &cx, &h, &h, &map, w);
        assert!(matches!(r, Err(Error::NotChainMap { .. })));
    }
}
