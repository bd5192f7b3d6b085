//! Orientation-reversal duality: the pairing between the complexes of `Y`
//! and `−Y`, its adjointness with `D` and `Ω⁻¹`, cohomology of the dual
//! complex, and the resulting isomorphisms of graded groups.
//!
//! The pairing matches `Ω^k η_a` with `Ω^{−k−1} 1_a`, `Ω^k 1_a` with
//! `Ω^{−k−1} η_a` and `Ω^k 1_θ` with `Ω^{−k−1} 1_θ`, so paired degrees sum to
//! `−2`. For the hat flavor the partner is shifted by one power of `Ω` into
//! the `k = 0` slice and paired degrees sum to `0`.

use serde::{Deserialize, Serialize};

use crate::complex::{Flavor, FloerComplex, Generator, GeneratorKind, GradedComplex};
use crate::data::{reverse_orientation, reverse_with_signs, MonopoleData, ReversalSigns};
use crate::homology::{GradedAbelianGroup, Homology};
use crate::linalg::{AbelianGroupInvariants, SparseIntMatrix};
use crate::window::Window;
use crate::Error;

/// The flavor of `−Y` whose complex is dual to the given flavor of `Y`.
pub fn paired_flavor(flavor: Flavor) -> Result<Flavor, Error> {
    match flavor {
        Flavor::Infinity => Ok(Flavor::Infinity),
        Flavor::Plus => Ok(Flavor::Minus),
        Flavor::Minus => Ok(Flavor::Plus),
        Flavor::Hat => Ok(Flavor::Hat),
        Flavor::NonEquivariant => Err(Error::Unsupported {
            operation: "duality pairing".into(),
            flavor,
        }),
    }
}

/// Degree on `−Y` paired with degree `n` on `Y`.
pub fn paired_degree(flavor: Flavor, n: i64) -> i64 {
    match flavor {
        Flavor::Hat => -n,
        _ => -2 - n,
    }
}

/// The generator of `−Y` that pairs to one with `g`.
pub fn partner(g: &Generator, flavor: Flavor) -> Generator {
    let k = -g.k - 1 + i64::from(flavor == Flavor::Hat);
    match (g.kind, g.point) {
        (GeneratorKind::ThetaOne, _) => Generator::theta(k),
        (GeneratorKind::Eta, Some(a)) => Generator::one(a, k),
        (GeneratorKind::One, Some(a)) => Generator::eta(a, k),
        _ => unreachable!("irreducible generators carry a point"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingSlice {
    pub degree: i64,
    pub flavor: Flavor,
    pub paired: Flavor,
    /// Rows: degree-`n` basis of `Y`; columns: paired-degree basis of `−Y`.
    pub matrix: SparseIntMatrix,
}

/// Pairing between `y` in degree `n` and `rev` in the paired degree.
pub fn pairing_slice(y: &FloerComplex, rev: &FloerComplex, n: i64) -> PairingSlice {
    let rows = y.slice(n);
    let cols = rev.slice(paired_degree(y.flavor(), n));
    let mut matrix = SparseIntMatrix::zeros(rows.len(), cols.len());
    for (i, g) in rows.basis.iter().enumerate() {
        if let Some(j) = cols.position(&partner(g, y.flavor())) {
            matrix.set(i, j, 1.into());
        }
    }
    PairingSlice {
        degree: n,
        flavor: y.flavor(),
        paired: rev.flavor(),
        matrix,
    }
}

/// Pairing of `flavor` for `data` with the paired flavor of the reversed data.
pub fn pairing_matrix(data: &MonopoleData, flavor: Flavor, n: i64) -> Result<PairingSlice, Error> {
    let rev = reverse_orientation(data)?;
    let y = FloerComplex::new(data, flavor)?;
    let r = FloerComplex::new(&rev, paired_flavor(flavor)?)?;
    Ok(pairing_slice(&y, &r, n))
}

/// Every generator's partner has the expected degree on `−Y`.
pub fn paired_degrees_consistent(y: &FloerComplex, rev: &FloerComplex, window: Window) -> bool {
    window.degrees().all(|n| {
        let target = paired_degree(y.flavor(), n);
        y.slice(n)
            .basis
            .iter()
            .all(|g| partner(g, y.flavor()).degree(rev.table()) == target)
    })
}

/// `⟨Dξ, η⟩ = ⟨ξ, Dη⟩` at every degree of the window.
pub fn d_adjoint(y: &FloerComplex, rev: &FloerComplex, window: Window) -> bool {
    window.degrees().all(|n| {
        let a = y.differential(n + 1);
        let b = rev.differential(paired_degree(y.flavor(), n));
        let lhs = &a.transpose() * &pairing_slice(y, rev, n).matrix;
        let rhs = &pairing_slice(y, rev, n + 1).matrix * &b;
        lhs == rhs
    })
}

/// `⟨Ω⁻¹ξ, η⟩ = ⟨ξ, Ω⁻¹η⟩` at every degree of the window.
pub fn omega_adjoint(y: &FloerComplex, rev: &FloerComplex, window: Window) -> bool {
    window.degrees().all(|n| {
        let w = y.omega_inverse(n);
        let lhs = &w.transpose() * &pairing_slice(y, rev, n - 2).matrix;
        let rhs = &pairing_slice(y, rev, n).matrix * &rev.omega_inverse(paired_degree(y.flavor(), n - 2));
        lhs == rhs
    })
}

/// Adjointness of `D` and `Ω⁻¹` on the Laurent complexes and on Plus against
/// Minus, under the frozen reversal signs.
pub fn verify_adjointness(data: &MonopoleData, window: Window) -> Result<bool, Error> {
    let rev = reverse_orientation(data)?;
    adjoint_under(data, &rev, window)
}

fn adjoint_under(data: &MonopoleData, rev: &MonopoleData, window: Window) -> Result<bool, Error> {
    for flavor in [Flavor::Infinity, Flavor::Plus] {
        let y = FloerComplex::new(data, flavor)?;
        let r = FloerComplex::new_unchecked(rev, paired_flavor(flavor)?)?;
        if !(d_adjoint(&y, &r, window) && omega_adjoint(&y, &r, window)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjointness when the reversal uses an arbitrary sign choice.
pub fn adjoint_with_signs(data: &MonopoleData, signs: ReversalSigns, window: Window) -> Result<bool, Error> {
    adjoint_under(data, &reverse_with_signs(data, signs), window)
}

/// The dual complex `Hom(C, ℤ)`, regraded so that `C'_m = C^{−m}` and the
/// transposed differential lowers degree.
struct DualComplex<'a> {
    cx: &'a FloerComplex,
}

impl GradedComplex for DualComplex<'_> {
    fn rank(&self, m: i64) -> usize {
        self.cx.slice(-m).len()
    }

    fn boundary(&self, m: i64) -> SparseIntMatrix {
        self.cx.differential(-m + 1).transpose()
    }
}

/// `H^n = ker(D_{n+1}ᵀ) / im(D_nᵀ)` for `n` in the window.
pub fn cohomology_of(cx: &FloerComplex, window: Window) -> Result<GradedAbelianGroup, Error> {
    let h = Homology::compute(&DualComplex { cx }, Window::new(-window.hi, -window.lo))?;
    let groups = h.groups().into_iter().map(|(m, g)| (-m, g)).collect();
    Ok(GradedAbelianGroup {
        window,
        groups,
        tail_above: None,
        tail_below: None,
    })
}

pub fn cohomology(data: &MonopoleData, flavor: Flavor, window: Window) -> Result<GradedAbelianGroup, Error> {
    cohomology_of(&FloerComplex::new(data, flavor)?, window)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityDegree {
    /// Cohomological degree on `Y`.
    pub degree: i64,
    /// Homological degree on `−Y`.
    pub paired_degree: i64,
    pub cohomology: AbelianGroupInvariants,
    pub homology: AbelianGroupInvariants,
    pub matches: bool,
}

/// `H^n(C_flavor(Y)) ≅ H_{paired}(C_paired(−Y))` across the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityPair {
    pub flavor: Flavor,
    pub paired: Flavor,
    /// The pairing is a signed permutation in every degree.
    pub perfect_pairing: bool,
    pub paired_degrees_consistent: bool,
    pub d_adjoint: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_adjoint: Option<bool>,
    pub degrees: Vec<DualityDegree>,
    pub all_match: bool,
}

impl DualityPair {
    pub fn passed(&self) -> bool {
        self.perfect_pairing
            && self.paired_degrees_consistent
            && self.d_adjoint
            && self.omega_adjoint != Some(false)
            && self.all_match
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub window: Window,
    pub reversed: String,
    pub pairs: Vec<DualityPair>,
    /// Adjointness on the Laurent complexes.
    pub laurent_adjoint: bool,
    /// Reversing twice returns the original data.
    pub double_reversal: bool,
    pub passed: bool,
}

impl DualityReport {
    /// First degree where cohomology and homology of the reversed data differ.
    pub fn first_mismatch(&self) -> Option<(Flavor, &DualityDegree)> {
        self.pairs
            .iter()
            .flat_map(|p| p.degrees.iter().map(move |d| (p.flavor, d)))
            .find(|(_, d)| !d.matches)
    }
}

fn duality_pair(y: &FloerComplex, rev: &FloerComplex, window: Window) -> Result<DualityPair, Error> {
    let flavor = y.flavor();
    let cohomology = cohomology_of(y, window)?;
    let paired_window = match flavor {
        Flavor::Hat => Window::new(-window.hi, -window.lo),
        _ => window.dual(),
    };
    let homology = Homology::compute(rev, paired_window)?.groups();
    let degrees: Vec<DualityDegree> = window
        .degrees()
        .map(|n| {
            let m = paired_degree(flavor, n);
            let c = cohomology.groups[&n].clone();
            let h = homology[&m].clone();
            DualityDegree {
                degree: n,
                paired_degree: m,
                matches: c == h,
                cohomology: c,
                homology: h,
            }
        })
        .collect();
    let perfect_pairing = window.degrees().all(|n| {
        let p = pairing_slice(y, rev, n).matrix;
        p.is_signed_permutation() || (p.rows() == 0 && p.cols() == 0)
    });
    let omega_adjoint = (flavor != Flavor::Hat).then(|| omega_adjoint(y, rev, window));
    Ok(DualityPair {
        flavor,
        paired: rev.flavor(),
        perfect_pairing,
        paired_degrees_consistent: paired_degrees_consistent(y, rev, window),
        d_adjoint: d_adjoint(y, rev, window),
        omega_adjoint,
        all_match: degrees.iter().all(|d| d.matches),
        degrees,
    })
}

/// Complex-level and group-level duality between `Y` and `−Y` for the
/// Plus/Minus, Minus/Plus and hat pairings.
pub fn duality_check(data: &MonopoleData, window: Window) -> Result<DualityReport, Error> {
    let rev = reverse_orientation(data)?;
    let mut pairs = Vec::new();
    for flavor in [Flavor::Plus, Flavor::Minus, Flavor::Hat] {
        let y = FloerComplex::new(data, flavor)?;
        let r = FloerComplex::new(&rev, paired_flavor(flavor)?)?;
        pairs.push(duality_pair(&y, &r, window)?);
    }
    let inf = FloerComplex::new(data, Flavor::Infinity)?;
    let inf_rev = FloerComplex::new(&rev, Flavor::Infinity)?;
    let laurent_adjoint = d_adjoint(&inf, &inf_rev, window) && omega_adjoint(&inf, &inf_rev, window);
    let double_reversal = reverse_orientation(&rev)? == data.clone().canonical();
    let passed = laurent_adjoint && double_reversal && pairs.iter().all(DualityPair::passed);
    Ok(DualityReport {
        window,
        reversed: rev.name.clone(),
        pairs,
        laurent_adjoint,
        double_reversal,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{curated_library, i0, i1, i2, i3, i6};
    use num_bigint::BigInt;

    #[test]
    fn pairing_examples() {
        let p = pairing_matrix(&i0(), Flavor::Plus, 0).unwrap();
        assert_eq!(p.matrix, SparseIntMatrix::identity(1));
        let d = i1();
        let p = pairing_matrix(&d, Flavor::Plus, 1).unwrap();
        let y = FloerComplex::new(&d, Flavor::Plus).unwrap();
        let rev = FloerComplex::new(&reverse_orientation(&d).unwrap(), Flavor::Minus).unwrap();
        let a = y.table().index_of("a").unwrap();
        let i = y.slice(1).position(&Generator::eta(a, 0)).unwrap();
        let j = rev.slice(-3).position(&Generator::one(a, -1)).unwrap();
        assert_eq!(p.matrix.get(i, j), BigInt::from(1));
        assert!(p.matrix.is_signed_permutation());
    }

    #[test]
    fn frozen_signs_are_the_unique_adjoint_choice() {
        let w = Window::new(-6, 6);
        let corpus = [i1(), i2(), i3(), i6()];
        let passing: Vec<ReversalSigns> = ReversalSigns::all()
            .into_iter()
            .filter(|&s| corpus.iter().all(|d| adjoint_with_signs(d, s, w).unwrap()))
            .collect();
        assert_eq!(passing, [ReversalSigns::FROZEN]);
    }

    #[test]
    fn adjointness_on_curated_instances() {
        for d in curated_library() {
            assert!(verify_adjointness(&d, Window::new(-6, 6)).unwrap(), "{}", d.name);
        }
    }

    #[test]
    fn cohomology_examples() {
        let w = Window::new(-4, 6);
        let c = cohomology(&i0(), Flavor::Plus, w).unwrap();
        for n in w.degrees() {
            let want = if n >= 0 && n % 2 == 0 { 1 } else { 0 };
            assert_eq!(c.groups[&n], AbelianGroupInvariants::free(want), "{n}");
        }
        let c = cohomology(&i2(), Flavor::Plus, w).unwrap();
        assert!(c.groups[&1].torsion().contains(&BigInt::from(2)));
        for d in curated_library() {
            let c = cohomology(&d, Flavor::Infinity, w).unwrap();
            for n in w.degrees() {
                assert_eq!(c.groups[&n].free_rank(), usize::from(n % 2 == 0));
                assert!(c.groups[&n].torsion().is_empty());
            }
        }
    }

    #[test]
    fn duality_holds_on_curated_and_doubly_reversed_instances() {
        for d in curated_library() {
            let w = d.default_window();
            let r = duality_check(&d, w).unwrap();
            assert!(r.passed, "{}: {:?}", d.name, r);
            let rr = reverse_orientation(&reverse_orientation(&d).unwrap()).unwrap();
            assert!(duality_check(&rr, w).unwrap().passed);
        }
        let r = duality_check(&i1(), Window::new(-8, 8)).unwrap();
        assert!(r.passed);
    }
}
