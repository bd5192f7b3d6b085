//! Finitely generated abelian groups in canonical form, and homomorphisms
//! between groups presented as `ℤ^g / ⊕ order_i·ℤ`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::{self, cokernel_invariants};
use super::matrix::SparseIntMatrix;
use super::LinalgError;

/// `ℤ^free_rank ⊕ ℤ/t_1 ⊕ ... ⊕ ℤ/t_m` with `t_1 | t_2 | ... | t_m` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroupInvariants {
    free_rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    torsion: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    /// Canonicalizes an arbitrary list of positive torsion orders (ones are dropped,
    /// the rest rewritten as an invariant-factor chain).
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        let torsion: Vec<BigInt> = torsion.into_iter().map(|t| t.abs()).collect();
        assert!(torsion.iter().all(|t| !t.is_zero()), "torsion orders must be nonzero");
        let is_chain = torsion.iter().all(|t| !t.is_one())
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if is_chain {
            return AbelianGroupInvariants { free_rank, torsion };
        }
        let n = torsion.len();
        let mut diag = SparseIntMatrix::zeros(n, n);
        for (i, t) in torsion.into_iter().enumerate() {
            diag.set(i, i, t);
        }
        let c = cokernel_invariants(&diag);
        AbelianGroupInvariants {
            free_rank,
            torsion: c.torsion,
        }
    }

    pub fn zero() -> Self {
        AbelianGroupInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: BigInt) -> Self {
        if order.is_zero() {
            Self::free(1)
        } else {
            Self::new(0, vec![order])
        }
    }

    /// Group with one cyclic summand per entry; `0` stands for `ℤ`.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let free_rank = orders.iter().filter(|o| o.is_zero()).count();
        let torsion = orders.iter().filter(|o| !o.is_zero()).cloned().collect();
        Self::new(free_rank, torsion)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// At most one cyclic summand.
    pub fn is_cyclic(&self) -> bool {
        self.free_rank + self.torsion.len() <= 1
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        Self::new(self.free_rank + other.free_rank, torsion)
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// `ℤ^g / ⊕ order_i·ℤ`, where an order of `0` marks a free generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedGroup {
    orders: Vec<BigInt>,
}

impl PresentedGroup {
    pub fn new(orders: Vec<BigInt>) -> Self {
        assert!(orders.iter().all(|o| !o.is_one() && o >= &BigInt::zero()));
        PresentedGroup { orders }
    }

    pub fn trivial() -> Self {
        PresentedGroup { orders: Vec::new() }
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn invariants(&self) -> AbelianGroupInvariants {
        AbelianGroupInvariants::from_orders(&self.orders)
    }

    /// Columns spanning the relation lattice inside `ℤ^g`.
    pub fn relations(&self) -> SparseIntMatrix {
        let g = self.orders.len();
        let torsion: Vec<usize> = (0..g).filter(|&i| !self.orders[i].is_zero()).collect();
        let mut r = SparseIntMatrix::zeros(g, torsion.len());
        for (j, &i) in torsion.iter().enumerate() {
            r.set(i, j, self.orders[i].clone());
        }
        r
    }

    /// Reduces a coordinate vector into canonical residues.
    pub fn reduce(&self, v: &mut [BigInt]) {
        for (x, o) in v.iter_mut().zip(&self.orders) {
            if !o.is_zero() {
                *x = x.mod_floor(o);
            }
        }
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        v.iter().zip(&self.orders).all(|(x, o)| {
            if o.is_zero() {
                x.is_zero()
            } else {
                x.is_multiple_of(o)
            }
        })
    }
}

/// A homomorphism of presented groups, given by an integer matrix on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    source: PresentedGroup,
    target: PresentedGroup,
    matrix: SparseIntMatrix,
}

impl GroupMap {
    /// Checks well-definedness (relations map into relations) and reduces
    /// entries modulo the target orders.
    pub fn new(
        source: PresentedGroup,
        target: PresentedGroup,
        matrix: SparseIntMatrix,
    ) -> Result<Self, LinalgError> {
        assert_eq!(matrix.rows(), target.num_generators());
        assert_eq!(matrix.cols(), source.num_generators());
        for (j, o) in source.orders.iter().enumerate() {
            if o.is_zero() {
                continue;
            }
            let image: Vec<BigInt> = matrix.column(j).into_iter().map(|x| x * o).collect();
            if !target.is_zero_element(&image) {
                return Err(LinalgError::IllDefinedMap { generator: j });
            }
        }
        let mut reduced = SparseIntMatrix::zeros(matrix.rows(), matrix.cols());
        for (i, j, v) in matrix.entries() {
            let o = &target.orders[i];
            let x = if o.is_zero() { v.clone() } else { v.mod_floor(o) };
            reduced.set(i, j, x);
        }
        Ok(GroupMap {
            source,
            target,
            matrix: reduced,
        })
    }

    pub fn zero(source: PresentedGroup, target: PresentedGroup) -> Self {
        let matrix = SparseIntMatrix::zeros(target.num_generators(), source.num_generators());
        GroupMap {
            source,
            target,
            matrix,
        }
    }

    pub fn source(&self) -> &PresentedGroup {
        &self.source
    }

    pub fn target(&self) -> &PresentedGroup {
        &self.target
    }

    pub fn matrix(&self) -> &SparseIntMatrix {
        &self.matrix
    }

    /// Lattice in `ℤ^{g_target}` spanned by the image and the target relations.
    pub fn image_lattice(&self) -> SparseIntMatrix {
        let rel = self.target.relations();
        SparseIntMatrix::hcat(self.matrix.rows(), &[&self.matrix, &rel])
    }

    /// Lattice in `ℤ^{g_source}` of elements mapping into the target relations.
    pub fn kernel_lattice(&self) -> SparseIntMatrix {
        lattice::preimage(&self.matrix, &self.target.relations())
    }

    pub fn image_invariants(&self) -> AbelianGroupInvariants {
        lattice::subquotient_invariants(&self.image_lattice(), &self.target.relations())
            .expect("relations lie in the image lattice")
    }

    pub fn kernel_invariants(&self) -> AbelianGroupInvariants {
        lattice::subquotient_invariants(&self.kernel_lattice(), &self.source.relations())
            .expect("well-defined maps send relations to relations")
    }

    pub fn cokernel_invariants(&self) -> AbelianGroupInvariants {
        cokernel_invariants(&self.image_lattice())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.kernel_invariants().is_zero() && self.cokernel_invariants().is_zero()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupMap) -> Result<GroupMap, LinalgError> {
        if inner.target != self.source {
            return Err(LinalgError::ShapeMismatch);
        }
        GroupMap::new(
            inner.source.clone(),
            self.target.clone(),
            &self.matrix * &inner.matrix,
        )
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`, as equality of lattices in the generators of `B`.
pub fn is_exact_at(f: &GroupMap, g: &GroupMap) -> bool {
    assert_eq!(f.target, g.source, "maps do not compose");
    lattice::lattice_eq(&f.image_lattice(), &g.kernel_lattice())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn canonical_form_merges_coprime_orders() {
        let g = AbelianGroupInvariants::new(1, vec![b(2), b(3)]);
        assert_eq!(g.torsion(), &[b(6)]);
        assert_eq!(g.to_string(), "Z + Z/6");
        let g = AbelianGroupInvariants::new(0, vec![b(4), b(1), b(2)]);
        assert_eq!(g.torsion(), &[b(2), b(4)]);
    }

    #[test]
    fn multiplication_by_two_on_z() {
        let z = PresentedGroup::new(vec![b(0)]);
        let f = GroupMap::new(z.clone(), z, SparseIntMatrix::from_rows(1, 1, &[&[2]])).unwrap();
        assert!(f.kernel_invariants().is_zero());
        assert_eq!(f.cokernel_invariants(), AbelianGroupInvariants::cyclic(b(2)));
        assert_eq!(f.image_invariants(), AbelianGroupInvariants::free(1));
    }

    #[test]
    fn ill_defined_map_rejected() {
        let z2 = PresentedGroup::new(vec![b(2)]);
        let z = PresentedGroup::new(vec![b(0)]);
        let r = GroupMap::new(z2, z, SparseIntMatrix::from_rows(1, 1, &[&[1]]));
        assert!(matches!(r, Err(LinalgError::IllDefinedMap { generator: 0 })));
    }

    #[test]
    fn short_exact_sequence_z_z_z2() {
        let z = PresentedGroup::new(vec![b(0)]);
        let z2 = PresentedGroup::new(vec![b(2)]);
        let f = GroupMap::new(z.clone(), z.clone(), SparseIntMatrix::from_rows(1, 1, &[&[2]])).unwrap();
        let g = GroupMap::new(z, z2.clone(), SparseIntMatrix::from_rows(1, 1, &[&[1]])).unwrap();
        assert!(is_exact_at(&f, &g));
        assert!(g.compose(&f).unwrap().is_zero());
        let bad = GroupMap::new(
            PresentedGroup::new(vec![b(0)]),
            PresentedGroup::new(vec![b(0)]),
            SparseIntMatrix::from_rows(1, 1, &[&[4]]),
        )
        .unwrap();
        assert!(!is_exact_at(&bad, &g));
        assert_eq!(g.kernel_invariants(), AbelianGroupInvariants::free(1));
        assert!(GroupMap::zero(z2.clone(), z2).is_zero());
    }
}
