//! Generator bases and differentials of the five flavors.
//!
//! Every map here is first written on the Laurent complex (all Ω-powers) and
//! then restricted: targets that are not admissible in the flavor are dropped.
//! Because no map raises the Ω-power, this realizes `Minus` as a subcomplex,
//! `Plus` as the quotient by it and `Hat` as the `k = 0` slice of `Plus`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::data::{validate, DataError, MonopoleData, PointTable};
use crate::linalg::SparseIntMatrix;
use crate::window::Window;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Infinity,
    Minus,
    Plus,
    Hat,
    #[serde(rename = "noneq")]
    NonEquivariant,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::Infinity,
        Flavor::Minus,
        Flavor::Plus,
        Flavor::Hat,
        Flavor::NonEquivariant,
    ];

    pub fn admits(self, kind: GeneratorKind, k: i64) -> bool {
        match self {
            Flavor::Infinity => true,
            Flavor::Minus => k < 0,
            Flavor::Plus => k >= 0,
            Flavor::Hat => k == 0,
            Flavor::NonEquivariant => kind == GeneratorKind::Eta && k == 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Infinity => "infinity",
            Flavor::Minus => "minus",
            Flavor::Plus => "plus",
            Flavor::Hat => "hat",
            Flavor::NonEquivariant => "noneq",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Ordered so that sorting generators yields the canonical basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    ThetaOne,
    Eta,
    One,
}

/// `Ω^k ⊗ η_a`, `Ω^k ⊗ 1_a` or `Ω^k ⊗ 1_θ`; `point` indexes the point table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub point: Option<usize>,
    pub kind: GeneratorKind,
    pub k: i64,
}

impl Generator {
    pub fn theta(k: i64) -> Self {
        Generator {
            point: None,
            kind: GeneratorKind::ThetaOne,
            k,
        }
    }

    pub fn eta(a: usize, k: i64) -> Self {
        Generator {
            point: Some(a),
            kind: GeneratorKind::Eta,
            k,
        }
    }

    pub fn one(a: usize, k: i64) -> Self {
        Generator {
            point: Some(a),
            kind: GeneratorKind::One,
            k,
        }
    }

    pub fn degree(&self, table: &PointTable) -> i64 {
        match (self.kind, self.point) {
            (GeneratorKind::ThetaOne, _) => 2 * self.k,
            (GeneratorKind::Eta, Some(a)) => 2 * self.k + table.gr[a],
            (GeneratorKind::One, Some(a)) => 2 * self.k + table.gr[a] + 1,
            _ => unreachable!("irreducible generators carry a point"),
        }
    }

    /// The same generator with Ω-power shifted by `dk`.
    pub fn shifted(&self, dk: i64) -> Self {
        Generator {
            k: self.k + dk,
            ..*self
        }
    }

    pub fn label(&self, table: &PointTable) -> String {
        let omega = match self.k {
            0 => "1".to_string(),
            1 => "W".to_string(),
            k => format!("W^{k}"),
        };
        match (self.kind, self.point) {
            (GeneratorKind::ThetaOne, _) => format!("{omega}*1_theta"),
            (GeneratorKind::Eta, Some(a)) => format!("{omega}*eta_{}", table.ids[a]),
            (GeneratorKind::One, Some(a)) => format!("{omega}*1_{}", table.ids[a]),
            _ => unreachable!(),
        }
    }
}

/// The basis of one flavor in one total degree, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSlice {
    pub degree: i64,
    pub basis: Vec<Generator>,
}

impl DegreeSlice {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn position(&self, g: &Generator) -> Option<usize> {
        self.basis.binary_search(g).ok()
    }
}

/// A chain complex given degreewise by ranks and boundary matrices `C_n → C_{n−1}`.
pub trait GradedComplex: Sync {
    fn rank(&self, n: i64) -> usize;
    fn boundary(&self, n: i64) -> SparseIntMatrix;
}

/// Linear combination of generators.
pub type Chain = Vec<(Generator, BigInt)>;

/// One flavor of the complex for a fixed dataset.
#[derive(Clone, Debug)]
pub struct FloerComplex {
    table: Arc<PointTable>,
    flavor: Flavor,
}

impl FloerComplex {
    /// Validates the data (identities included) before building.
    pub fn new(data: &MonopoleData, flavor: Flavor) -> Result<Self, Error> {
        let report = validate(data);
        if !report.ok {
            return Err(DataError::Invalid(report.summary()).into());
        }
        Self::new_unchecked(data, flavor)
    }

    /// Builds without checking the identities; endpoints must still resolve.
    pub fn new_unchecked(data: &MonopoleData, flavor: Flavor) -> Result<Self, Error> {
        Ok(FloerComplex {
            table: Arc::new(PointTable::new(data)?),
            flavor,
        })
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        FloerComplex {
            table: Arc::clone(&self.table),
            flavor,
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn table(&self) -> &PointTable {
        &self.table
    }

    fn admits(&self, g: &Generator) -> bool {
        self.flavor.admits(g.kind, g.k)
    }

    /// Admissible generators of total degree `n`. Each point contributes at
    /// most one generator per degree, `θ` only in even degrees.
    pub fn slice(&self, n: i64) -> DegreeSlice {
        let mut basis = Vec::new();
        if n.rem_euclid(2) == 0 {
            let g = Generator::theta(n.div_euclid(2));
            if self.admits(&g) {
                basis.push(g);
            }
        }
        for (a, &gr) in self.table.gr.iter().enumerate() {
            let r = n - gr;
            let g = if r.rem_euclid(2) == 0 {
                Generator::eta(a, r.div_euclid(2))
            } else {
                Generator::one(a, (r - 1).div_euclid(2))
            };
            if self.admits(&g) {
                basis.push(g);
            }
        }
        basis.sort();
        DegreeSlice { degree: n, basis }
    }

    pub fn differential(&self, n: i64) -> SparseIntMatrix {
        self.map_matrix(self, n, -1, |g| self.d_image(g))
    }

    /// `D` applied to a generator in the Laurent complex (no truncation).
    pub fn d_image(&self, g: &Generator) -> Chain {
        let t = &*self.table;
        let mut out = Vec::new();
        match (g.kind, g.point) {
            (GeneratorKind::Eta, Some(a)) => {
                for (b, v) in &t.n_out[a] {
                    out.push((Generator::eta(*b, g.k), v.clone()));
                }
                for (c, v) in &t.m_out[a] {
                    out.push((Generator::one(*c, g.k), v.clone()));
                }
                out.push((Generator::one(a, g.k - 1), -BigInt::one()));
                if !t.n_to_theta[a].is_zero() {
                    out.push((Generator::theta(g.k), t.n_to_theta[a].clone()));
                }
            }
            (GeneratorKind::One, Some(a)) => {
                for (b, v) in &t.n_out[a] {
                    out.push((Generator::one(*b, g.k), -v));
                }
            }
            (GeneratorKind::ThetaOne, _) => {
                for (d, v) in &t.n_from_theta {
                    out.push((Generator::one(*d, g.k), v.clone()));
                }
            }
            _ => unreachable!(),
        }
        out
    }

    /// The u-action on a generator in the Laurent complex.
    pub fn u_image(&self, g: &Generator) -> Chain {
        let t = &*self.table;
        let mut out = Vec::new();
        match (g.kind, g.point) {
            (GeneratorKind::Eta, Some(a)) => {
                for (c, v) in &t.m_out[a] {
                    out.push((Generator::eta(*c, g.k), v.clone()));
                }
            }
            (GeneratorKind::One, Some(a)) => {
                for (c, v) in &t.m_out[a] {
                    out.push((Generator::one(*c, g.k), v.clone()));
                }
                if !t.n_to_theta[a].is_zero() {
                    out.push((Generator::theta(g.k), t.n_to_theta[a].clone()));
                }
            }
            (GeneratorKind::ThetaOne, _) => {
                for (d, v) in &t.n_from_theta {
                    out.push((Generator::eta(*d, g.k), v.clone()));
                }
                out.push((Generator::theta(g.k - 1), BigInt::one()));
            }
            _ => unreachable!(),
        }
        out
    }

    /// The homotopy `H(Ω^k 1_a) = Ω^k η_a`, zero on other generators.
    pub fn h_image(&self, g: &Generator) -> Chain {
        match (g.kind, g.point) {
            (GeneratorKind::One, Some(a)) => vec![(Generator::eta(a, g.k), BigInt::one())],
            _ => Vec::new(),
        }
    }

    /// Matrix of a Laurent-level map from `self` in degree `n` to `target`
    /// in degree `n + shift`, dropping targets not admissible in `target`.
    pub fn map_matrix<F>(&self, target: &FloerComplex, n: i64, shift: i64, f: F) -> SparseIntMatrix
    where
        F: Fn(&Generator) -> Chain,
    {
        let src = self.slice(n);
        let tgt = target.slice(n + shift);
        let mut m = SparseIntMatrix::zeros(tgt.len(), src.len());
        for (j, g) in src.basis.iter().enumerate() {
            for (h, v) in f(g) {
                if let Some(i) = tgt.position(&h) {
                    m.add_to(i, j, &v);
                }
            }
        }
        m
    }

    /// The map induced by the identity on common generators, between two
    /// flavors of the same data (inclusions and projections).
    pub fn identity_map(&self, target: &FloerComplex, n: i64) -> SparseIntMatrix {
        self.map_matrix(target, n, 0, |g| vec![(*g, BigInt::one())])
    }

    /// `Ω^k ↦ Ω^{k−1}` within this flavor, degree `n → n − 2`.
    pub fn omega_inverse(&self, n: i64) -> SparseIntMatrix {
        self.map_matrix(self, n, -2, |g| vec![(g.shifted(-1), BigInt::one())])
    }

    /// The first degree of `window` where `D_{n−1} D_n ≠ 0`, if any.
    pub fn d_squared_failure(&self, window: Window) -> Option<i64> {
        window.degrees().find(|&n| {
            let prod = &self.differential(n - 1) * &self.differential(n);
            !prod.is_zero()
        })
    }

    pub fn check_d_squared(&self, window: Window) -> bool {
        self.d_squared_failure(window).is_none()
    }

    /// Is the degree-`n` basis the full Laurent basis?
    pub fn is_saturated(&self, n: i64) -> bool {
        self.slice(n).len() == self.with_flavor(Flavor::Infinity).slice(n).len()
    }

    /// The chain with the given coordinates in the degree-`n` basis.
    pub fn coordinates_to_chain(&self, n: i64, coords: &[BigInt]) -> Chain {
        let slice = self.slice(n);
        slice
            .basis
            .iter()
            .zip(coords)
            .filter(|(_, v)| !v.is_zero())
            .map(|(g, v)| (*g, v.clone()))
            .collect()
    }

    /// Coordinates of a chain in the degree-`n` basis; `None` if a term is not
    /// admissible there.
    pub fn chain_to_coordinates(&self, n: i64, chain: &Chain) -> Option<Vec<BigInt>> {
        let slice = self.slice(n);
        let mut out = vec![BigInt::zero(); slice.len()];
        for (g, v) in chain {
            if v.is_zero() {
                continue;
            }
            out[slice.position(g)?] += v;
        }
        Some(out)
    }

    /// Degrees outside which the basis is empty, for flavors with bounded support.
    pub fn support(&self) -> (Option<i64>, Option<i64>) {
        let lo_gr = self.table.gr.iter().copied().min().unwrap_or(0).min(0);
        let hi_gr = self.table.gr.iter().copied().max().map_or(0, |g| (g + 1).max(0));
        match self.flavor {
            Flavor::Infinity => (None, None),
            Flavor::Plus => (Some(lo_gr), None),
            Flavor::Minus => (None, Some(hi_gr - 2)),
            Flavor::Hat | Flavor::NonEquivariant => (Some(lo_gr), Some(hi_gr)),
        }
    }

    /// Readable labels for the basis of degree `n`.
    pub fn labels(&self, n: i64) -> Vec<String> {
        self.slice(n)
            .basis
            .iter()
            .map(|g| g.label(&self.table))
            .collect()
    }
}

impl GradedComplex for FloerComplex {
    fn rank(&self, n: i64) -> usize {
        self.slice(n).len()
    }

    fn boundary(&self, n: i64) -> SparseIntMatrix {
        self.differential(n)
    }
}

/// Per-degree matrices of a degree-homogeneous map, keyed by source degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMapSlice {
    pub source: Flavor,
    pub target: Flavor,
    pub shift: i64,
    pub matrices: BTreeMap<i64, SparseIntMatrix>,
}

impl ChainMapSlice {
    pub fn build<F>(source: Flavor, target: Flavor, shift: i64, degrees: Window, f: F) -> Self
    where
        F: Fn(i64) -> SparseIntMatrix + Sync,
    {
        use rayon::prelude::*;
        let matrices = degrees
            .degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|n| (n, f(n)))
            .collect();
        ChainMapSlice {
            source,
            target,
            shift,
            matrices,
        }
    }

    pub fn at(&self, n: i64) -> Option<&SparseIntMatrix> {
        self.matrices.get(&n)
    }
}

/// Which of the structural maps between flavors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructuralMap {
    /// `CF^− → CF^∞`.
    InclusionMinus,
    /// `CF^∞ → CF^+`.
    ProjectionPlus,
    /// `ĈF → CF^+`.
    InclusionHat,
    /// `Ω^k ↦ Ω^{k−1}` within one flavor.
    OmegaInverse,
}

/// Matrix of a structural map at source degree `n`. `context` names the
/// flavor for `OmegaInverse` and is ignored otherwise.
pub fn structural_map(cx: &FloerComplex, which: StructuralMap, context: Flavor, n: i64) -> SparseIntMatrix {
    let (src, tgt) = match which {
        StructuralMap::InclusionMinus => (Flavor::Minus, Flavor::Infinity),
        StructuralMap::ProjectionPlus => (Flavor::Infinity, Flavor::Plus),
        StructuralMap::InclusionHat => (Flavor::Hat, Flavor::Plus),
        StructuralMap::OmegaInverse => return cx.with_flavor(context).omega_inverse(n),
    };
    cx.with_flavor(src).identity_map(&cx.with_flavor(tgt), n)
}

impl StructuralMap {
    pub fn shift(self) -> i64 {
        match self {
            StructuralMap::OmegaInverse => -2,
            _ => 0,
        }
    }
}

/// Convenience constructors matching the per-degree operations.
pub fn generators_in_degree(data: &MonopoleData, flavor: Flavor, n: i64) -> Result<DegreeSlice, Error> {
    Ok(FloerComplex::new(data, flavor)?.slice(n))
}

pub fn differential_matrix(data: &MonopoleData, flavor: Flavor, n: i64) -> Result<SparseIntMatrix, Error> {
    Ok(FloerComplex::new(data, flavor)?.differential(n))
}

pub fn check_d_squared(data: &MonopoleData, flavor: Flavor, window: Window) -> Result<bool, Error> {
    Ok(FloerComplex::new(data, flavor)?.check_d_squared(window))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{i0, i1, i1_prime, i3};

    fn cx(d: &MonopoleData, f: Flavor) -> FloerComplex {
        FloerComplex::new(d, f).unwrap()
    }

    #[test]
    fn i0_plus_slices() {
        let c = cx(&i0(), Flavor::Plus);
        assert_eq!(c.slice(4).basis, vec![Generator::theta(2)]);
        assert!(c.slice(-1).is_empty());
        for n in -4..=10 {
            assert!(c.differential(n).is_zero());
        }
    }

    #[test]
    fn i1_plus_degree_two() {
        let c = cx(&i1(), Flavor::Plus);
        let t = c.table();
        let (a, d) = (t.index_of("a").unwrap(), t.index_of("d").unwrap());
        assert_eq!(
            c.slice(2).basis,
            vec![Generator::theta(1), Generator::one(a, 0), Generator::eta(d, 2)]
        );
    }

    #[test]
    fn i1_differential_of_eta_a() {
        let plus = cx(&i1(), Flavor::Plus);
        let a = plus.table().index_of("a").unwrap();
        let src = plus.slice(1);
        let j = src.position(&Generator::eta(a, 0)).unwrap();
        let dm = plus.differential(1);
        let tgt = plus.slice(0);
        let col: Vec<_> = dm.column(j);
        assert_eq!(col[tgt.position(&Generator::theta(0)).unwrap()], BigInt::from(1));
        assert_eq!(col.iter().filter(|v| !v.is_zero()).count(), 1);

        let inf = plus.with_flavor(Flavor::Infinity);
        let dm = inf.differential(1);
        let tgt = inf.slice(0);
        let j = inf.slice(1).position(&Generator::eta(a, 0)).unwrap();
        let col = dm.column(j);
        assert_eq!(col[tgt.position(&Generator::one(a, -1)).unwrap()], BigInt::from(-1));
        assert_eq!(col[tgt.position(&Generator::theta(0)).unwrap()], BigInt::from(1));
    }

    #[test]
    fn d_squared_detects_b_prime_defect() {
        let w = Window::new(-8, 8);
        assert!(cx(&i1(), Flavor::Infinity).check_d_squared(w));
        let bad = FloerComplex::new_unchecked(&i1_prime(), Flavor::Infinity).unwrap();
        assert!(!bad.check_d_squared(w));
        assert!(FloerComplex::new(&i1_prime(), Flavor::Infinity).is_err());
    }

    #[test]
    fn omega_inverse_on_i0_plus() {
        let c = cx(&i0(), Flavor::Plus);
        assert_eq!(c.omega_inverse(2), SparseIntMatrix::identity(1));
        assert!(c.omega_inverse(0).is_zero());
        assert_eq!(c.omega_inverse(0).rows(), 0);
    }

    #[test]
    fn i1_projection_in_degree_one_is_identity() {
        let c = cx(&i1(), Flavor::Infinity);
        let p = structural_map(&c, StructuralMap::ProjectionPlus, Flavor::Plus, 1);
        assert_eq!(p, SparseIntMatrix::identity(2));
    }

    #[test]
    fn short_exact_sequence_degreewise() {
        let c = cx(&i3(), Flavor::Infinity);
        for n in -6..=8 {
            let i = structural_map(&c, StructuralMap::InclusionMinus, Flavor::Minus, n);
            let p = structural_map(&c, StructuralMap::ProjectionPlus, Flavor::Plus, n);
            assert!((&p * &i).is_zero());
            assert_eq!(i.nnz(), i.cols());
            assert_eq!(p.nnz(), p.rows());
        }
    }
}
