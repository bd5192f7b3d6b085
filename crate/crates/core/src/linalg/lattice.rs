//! Kernels, images, cokernels and subquotients of integer lattices.
//!
//! Lattices are represented by matrices whose columns generate them. Every
//! operation here reduces to one Smith normal form computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::AbelianGroupInvariants;
use super::matrix::SparseIntMatrix;
use super::snf::{smith_normal_form, SnfResult};
use super::LinalgError;

/// Columns form a ℤ-basis of `ker M`, taken from the trailing columns of `V`.
pub fn kernel_basis(m: &SparseIntMatrix) -> SparseIntMatrix {
    let snf = smith_normal_form(m);
    kernel_from_snf(&snf, m.cols())
}

fn kernel_from_snf(snf: &SnfResult, cols: usize) -> SparseIntMatrix {
    let keep: Vec<usize> = (snf.rank()..cols).collect();
    snf.v.select_cols(&keep)
}

/// Invariants of `ℤ^rows / im M`.
pub fn cokernel_invariants(m: &SparseIntMatrix) -> AbelianGroupInvariants {
    let snf = smith_normal_form(m);
    AbelianGroupInvariants::new(
        m.rows() - snf.rank(),
        snf.invariant_factors()
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect(),
    )
}

pub fn rank(m: &SparseIntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// A ℤ-basis (as columns) of the lattice spanned by the columns of `m`.
pub fn lattice_basis(m: &SparseIntMatrix) -> SparseIntMatrix {
    let snf = smith_normal_form(m);
    let uinv = snf.u_inverse();
    let cols: Vec<Vec<BigInt>> = snf
        .invariant_factors()
        .iter()
        .enumerate()
        .map(|(i, d)| uinv.column(i).into_iter().map(|x| x * d).collect())
        .collect();
    SparseIntMatrix::from_columns(m.rows(), &cols)
}

/// Solves `A x = b` over the integers, reusing one factorization of `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    snf: SnfResult,
    rows: usize,
}

impl Solver {
    pub fn new(a: &SparseIntMatrix) -> Self {
        Solver {
            snf: smith_normal_form(a),
            rows: a.rows(),
        }
    }

    /// Some integral solution, or `None` when `b` is outside the column lattice of `A`.
    /// When `A` has full column rank the solution is unique.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows, "right-hand side has wrong length");
        let y = self.snf.u.mul_vec(b);
        let factors = self.snf.invariant_factors();
        let mut z = vec![BigInt::zero(); self.snf.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            match factors.get(i) {
                Some(d) => {
                    let (q, r) = yi.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    z[i] = q;
                }
                None if !yi.is_zero() => return None,
                None => {}
            }
        }
        Some(self.snf.v.mul_vec(&z))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

/// Is every column of `sub` an integral combination of the columns of `lattice`?
pub fn lattice_contains(lattice: &SparseIntMatrix, sub: &SparseIntMatrix) -> bool {
    if sub.is_zero() {
        return true;
    }
    let solver = Solver::new(lattice);
    sub.columns().iter().all(|c| solver.contains(c))
}

/// Equality of the lattices spanned by the columns of `a` and `b`.
pub fn lattice_eq(a: &SparseIntMatrix, b: &SparseIntMatrix) -> bool {
    lattice_contains(a, b) && lattice_contains(b, a)
}

/// Basis of `{x : M x ∈ span(L)}`.
pub fn preimage(m: &SparseIntMatrix, l: &SparseIntMatrix) -> SparseIntMatrix {
    let joined = SparseIntMatrix::hcat(m.rows(), &[m, &-l]);
    let k = kernel_basis(&joined);
    let top: Vec<usize> = (0..m.cols()).collect();
    lattice_basis(&k.select_rows(&top))
}

/// Invariants of `span(Z) / span(B)`; fails if some column of `B` is outside `span(Z)`.
pub fn subquotient_invariants(
    z: &SparseIntMatrix,
    b: &SparseIntMatrix,
) -> Result<AbelianGroupInvariants, LinalgError> {
    Ok(Subquotient::new(z, b)?.invariants())
}

/// The quotient `span(Z) / span(B)` with a normalized generating set.
///
/// Generators are cycle vectors in the ambient lattice; `coords` expresses any
/// element of `span(Z)` in terms of them, reduced modulo the orders.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    basis: SparseIntMatrix,
    basis_solver: Solver,
    change: SparseIntMatrix,
    kept: Vec<usize>,
    orders: Vec<BigInt>,
    generators: Vec<Vec<BigInt>>,
}

impl Subquotient {
    pub fn new(z: &SparseIntMatrix, b: &SparseIntMatrix) -> Result<Self, LinalgError> {
        assert_eq!(z.rows(), b.rows(), "subquotient ambient mismatch");
        let basis = if rank(z) == z.cols() {
            z.clone()
        } else {
            lattice_basis(z)
        };
        let basis_solver = Solver::new(&basis);
        let mut x_cols = Vec::with_capacity(b.cols());
        for (j, col) in b.columns().into_iter().enumerate() {
            match basis_solver.solve(&col) {
                Some(x) => x_cols.push(x),
                None => return Err(LinalgError::Containment { column: j }),
            }
        }
        let x = SparseIntMatrix::from_columns(basis.cols(), &x_cols);
        let snf = smith_normal_form(&x);
        let factors = snf.invariant_factors();
        let rz = basis.cols();
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..rz {
            let order = factors.get(i).cloned().unwrap_or_else(BigInt::zero);
            if !order.is_one() {
                kept.push(i);
                orders.push(order);
            }
        }
        let uinv = snf.u_inverse();
        let generators = kept
            .iter()
            .map(|&i| basis.mul_vec(&uinv.column(i)))
            .collect();
        Ok(Subquotient {
            ambient: z.rows(),
            basis,
            basis_solver,
            change: snf.u.clone(),
            kept,
            orders,
            generators,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Orders of the generators: `0` for a free summand, otherwise a torsion order > 1.
    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Representative vectors of the generators, in the ambient basis.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn invariants(&self) -> AbelianGroupInvariants {
        AbelianGroupInvariants::from_orders(&self.orders)
    }

    /// Basis of the numerator lattice.
    pub fn numerator(&self) -> &SparseIntMatrix {
        &self.basis
    }

    /// Coordinates of `v` in terms of `generators`, reduced into `[0, order)` for
    /// torsion generators. Fails if `v` is not in the numerator lattice.
    pub fn coords(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        let y = self
            .basis_solver
            .solve(v)
            .ok_or(LinalgError::NotInLattice)?;
        let c = self.change.mul_vec(&y);
        Ok(self
            .kept
            .iter()
            .zip(&self.orders)
            .map(|(&i, ord)| {
                if ord.is_zero() {
                    c[i].clone()
                } else {
                    c[i].mod_floor(ord)
                }
            })
            .collect())
    }

    /// Is `v` zero in the quotient?
    pub fn is_trivial(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coords(v)?.iter().all(Zero::is_zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_invariants(&SparseIntMatrix::zeros(2, 3));
        assert_eq!((c.free_rank(), c.torsion().len()), (2, 0));
        let c = cokernel_invariants(&SparseIntMatrix::from_rows(1, 1, &[&[2]]));
        assert_eq!((c.free_rank(), c.torsion()), (0, &big(&[2])[..]));
        let c = cokernel_invariants(&SparseIntMatrix::from_rows(2, 2, &[&[1, 0], &[0, 3]]));
        assert_eq!((c.free_rank(), c.torsion()), (0, &big(&[3])[..]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&SparseIntMatrix::from_rows(1, 2, &[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        let col = k.column(0);
        assert!(col == big(&[1, -1]) || col == big(&[-1, 1]));
        assert_eq!(kernel_basis(&SparseIntMatrix::identity(2)).cols(), 0);
        let k = kernel_basis(&SparseIntMatrix::zeros(1, 2));
        assert_eq!(k.cols(), 2);
        assert!(k.is_signed_permutation());
    }

    #[test]
    fn subquotient_examples() {
        let i2 = SparseIntMatrix::identity(2);
        let g = subquotient_invariants(&i2, &SparseIntMatrix::from_rows(2, 1, &[&[1], &[-1]])).unwrap();
        assert_eq!(g, AbelianGroupInvariants::free(1));
        let g = subquotient_invariants(
            &SparseIntMatrix::identity(1),
            &SparseIntMatrix::from_rows(1, 1, &[&[2]]),
        )
        .unwrap();
        assert_eq!(g, AbelianGroupInvariants::new(0, big(&[2])));
        let i3 = SparseIntMatrix::identity(3);
        assert_eq!(subquotient_invariants(&i3, &i3).unwrap(), AbelianGroupInvariants::zero());
    }

    #[test]
    fn containment_failure_is_reported() {
        let z = SparseIntMatrix::from_rows(2, 1, &[&[2], &[0]]);
        let b = SparseIntMatrix::from_rows(2, 1, &[&[1], &[0]]);
        assert!(matches!(
            subquotient_invariants(&z, &b),
            Err(LinalgError::Containment { column: 0 })
        ));
    }

    #[test]
    fn coords_reduce_modulo_orders() {
        let z = SparseIntMatrix::identity(2);
        let b = SparseIntMatrix::from_rows(2, 1, &[&[0], &[4]]);
        let q = Subquotient::new(&z, &b).unwrap();
        assert_eq!(q.invariants(), AbelianGroupInvariants::new(1, big(&[4])));
        assert!(q.is_trivial(&big(&[0, 8])).unwrap());
        assert!(!q.is_trivial(&big(&[0, 2])).unwrap());
        for (g, ord) in q.generators().iter().zip(q.orders()) {
            let c = q.coords(g).unwrap();
            assert_eq!(c.iter().filter(|x| !x.is_zero()).count(), 1, "order {ord}");
        }
    }

    #[test]
    fn rank_deficient_numerator() {
        let z = SparseIntMatrix::from_rows(2, 3, &[&[2, 4, 0], &[0, 0, 3]]);
        let b = SparseIntMatrix::from_rows(2, 1, &[&[2], &[3]]);
        let g = subquotient_invariants(&z, &b).unwrap();
        assert_eq!(g, AbelianGroupInvariants::free(1));
    }

    #[test]
    fn preimage_of_even_lattice() {
        let m = SparseIntMatrix::from_rows(1, 2, &[&[1, 1]]);
        let l = SparseIntMatrix::from_rows(1, 1, &[&[2]]);
        let p = preimage(&m, &l);
        let expected = SparseIntMatrix::from_rows(2, 2, &[&[1, 2], &[-1, 0]]);
        assert!(lattice_eq(&p, &expected));
    }

    #[test]
    fn solver_rejects_non_members() {
        let a = SparseIntMatrix::from_rows(2, 1, &[&[2], &[2]]);
        let s = Solver::new(&a);
        assert_eq!(s.solve(&big(&[4, 4])), Some(big(&[2])));
        assert_eq!(s.solve(&big(&[2, 4])), None);
        assert_eq!(s.solve(&big(&[1, 1])), None);
    }
}
