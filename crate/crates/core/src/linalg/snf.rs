//! Smith normal form over the integers.
//!
//! The elimination runs on a dense working copy. It is first attempted in
//! checked `i64` arithmetic; if any intermediate value would overflow, the
//! whole computation is redone with `BigInt`, so results never depend on word
//! size.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::SparseIntMatrix;

/// `U · M · V = S` with `U`, `V` unimodular and `S` diagonal with `d_1 | d_2 | ... | d_r`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub u: SparseIntMatrix,
    pub s: SparseIntMatrix,
    pub v: SparseIntMatrix,
    pub(crate) u_inv: SparseIntMatrix,
    invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// The nonzero diagonal entries of `S`, all positive, in divisibility order.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Inverse of the left transform, so that `M = U⁻¹ · S · V⁻¹`.
    pub fn u_inverse(&self) -> &SparseIntMatrix {
        &self.u_inv
    }
}

/// Computes the Smith normal form of `m`, with both transforms.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let small: Option<Vec<i64>> = {
        let mut dense = vec![0i64; rows * cols];
        let mut ok = true;
        for (i, j, v) in m.entries() {
            match v.to_i64() {
                Some(x) => dense[i * cols + j] = x,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        ok.then_some(dense)
    };
    if let Some(dense) = small {
        if let Some(w) = Work::new(dense, rows, cols).run() {
            return w.finish();
        }
    }
    let mut dense = vec![<BigInt as Zero>::zero(); rows * cols];
    for (i, j, v) in m.entries() {
        dense[i * cols + j] = v.clone();
    }
    Work::new(dense, rows, cols)
        .run()
        .expect("bigint elimination cannot overflow")
        .finish()
}

pub(crate) trait Scalar: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn checked_neg(&self) -> Option<Self>;
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn checked_add_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn checked_div(&self, p: &Self) -> Option<Self>;
    fn divides(&self, x: &Self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn checked_add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_add(q.checked_mul(*x)?)
    }
    fn checked_div(&self, p: &Self) -> Option<Self> {
        i64::checked_div(*self, *p)
    }
    fn divides(&self, x: &Self) -> bool {
        // self is a nonzero pivot; i64::MIN % -1 is the only overflow case
        x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn checked_add_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self + q * x)
    }
    fn checked_div(&self, p: &Self) -> Option<Self> {
        Some(self / p)
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Dense elimination state: `a` is the working matrix, and `u`, `u_inv`, `v`
/// track the accumulated row and column operations.
struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    u: Vec<T>,
    u_inv: Vec<T>,
    v: Vec<T>,
    rank: usize,
}

fn identity<T: Scalar>(n: usize) -> Vec<T> {
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    m
}

impl<T: Scalar> Work<T> {
    fn new(a: Vec<T>, rows: usize, cols: usize) -> Self {
        Work {
            rows,
            cols,
            a,
            u: identity(rows),
            u_inv: identity(rows),
            v: identity(cols),
            rank: 0,
        }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (n, m) = (self.cols, self.rows);
        for c in 0..n {
            self.a.swap(i * n + c, j * n + c);
        }
        for c in 0..m {
            self.u.swap(i * m + c, j * m + c);
            self.u_inv.swap(c * m + i, c * m + j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.cols;
        for r in 0..self.rows {
            self.a.swap(r * n + i, r * n + j);
        }
        for r in 0..n {
            self.v.swap(r * n + i, r * n + j);
        }
    }

    /// row_i -= q * row_t
    fn row_axpy(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let (n, m) = (self.cols, self.rows);
        for c in 0..n {
            let x = self.a[t * n + c].clone();
            if !x.is_zero() {
                self.a[i * n + c] = self.a[i * n + c].checked_sub_mul(q, &x)?;
            }
        }
        for c in 0..m {
            let x = self.u[t * m + c].clone();
            if !x.is_zero() {
                self.u[i * m + c] = self.u[i * m + c].checked_sub_mul(q, &x)?;
            }
            // inverse picks up the opposite column operation: col_t += q * col_i
            let y = self.u_inv[c * m + i].clone();
            if !y.is_zero() {
                self.u_inv[c * m + t] = self.u_inv[c * m + t].checked_add_mul(q, &y)?;
            }
        }
        Some(())
    }

    /// col_j -= q * col_t
    fn col_axpy(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        let n = self.cols;
        for r in 0..self.rows {
            let x = self.a[r * n + t].clone();
            if !x.is_zero() {
                self.a[r * n + j] = self.a[r * n + j].checked_sub_mul(q, &x)?;
            }
        }
        for r in 0..n {
            let x = self.v[r * n + t].clone();
            if !x.is_zero() {
                self.v[r * n + j] = self.v[r * n + j].checked_sub_mul(q, &x)?;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        let (n, m) = (self.cols, self.rows);
        for c in 0..n {
            self.a[t * n + c] = self.a[t * n + c].checked_neg()?;
        }
        for c in 0..m {
            self.u[t * m + c] = self.u[t * m + c].checked_neg()?;
            self.u_inv[c * m + t] = self.u_inv[c * m + t].checked_neg()?;
        }
        Some(())
    }

    fn min_abs_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = self.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Self> {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_abs_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.at(i, t).is_zero() {
                        let q = self.at(i, t).checked_div(self.at(t, t))?;
                        self.row_axpy(i, t, &q)?;
                        clean &= self.at(i, t).is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.at(t, j).is_zero() {
                        let q = self.at(t, j).checked_div(self.at(t, t))?;
                        self.col_axpy(j, t, &q)?;
                        clean &= self.at(t, j).is_zero();
                    }
                }
                if !clean {
                    // a remainder smaller than the pivot survived; promote it
                    let mut best: Option<(bool, usize)> = None;
                    let mut best_val = self.at(t, t).clone();
                    for i in t + 1..self.rows {
                        let x = self.at(i, t);
                        if !x.is_zero() && x.abs_lt(&best_val) {
                            best_val = x.clone();
                            best = Some((true, i));
                        }
                    }
                    for j in t + 1..self.cols {
                        let x = self.at(t, j);
                        if !x.is_zero() && x.abs_lt(&best_val) {
                            best_val = x.clone();
                            best = Some((false, j));
                        }
                    }
                    match best {
                        Some((true, i)) => self.swap_rows(t, i),
                        Some((false, j)) => self.swap_cols(t, j),
                        None => unreachable!("remainders are smaller than the pivot"),
                    }
                    continue;
                }
                let pivot = self.at(t, t).clone();
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !pivot.divides(self.at(i, j))));
                match offender {
                    Some(i) => {
                        let minus_one = T::one().checked_neg()?;
                        self.row_axpy(t, i, &minus_one)?;
                    }
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Some(self)
    }

    fn finish(self) -> SnfResult {
        let to_sparse = |data: &[T], r: usize, c: usize| {
            let mut m = SparseIntMatrix::zeros(r, c);
            for i in 0..r {
                for j in 0..c {
                    let x = &data[i * c + j];
                    if !x.is_zero() {
                        m.set(i, j, x.to_bigint());
                    }
                }
            }
            m
        };
        let invariant_factors: Vec<BigInt> =
            (0..self.rank).map(|i| self.at(i, i).to_bigint()).collect();
        let mut s = SparseIntMatrix::zeros(self.rows, self.cols);
        for (i, d) in invariant_factors.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        SnfResult {
            u: to_sparse(&self.u, self.rows, self.rows),
            s,
            v: to_sparse(&self.v, self.cols, self.cols),
            u_inv: to_sparse(&self.u_inv, self.rows, self.rows),
            invariant_factors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &SparseIntMatrix) -> SnfResult {
        let r = smith_normal_form(m);
        assert_eq!(&(&r.u * m) * &r.v, r.s, "U M V != S for {m:?}");
        assert_eq!(&r.u * &r.u_inv, SparseIntMatrix::identity(m.rows()));
        let f = r.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "divisibility chain broken: {f:?}");
        }
        assert!(f.iter().all(|d| d.is_positive()));
        r
    }

    #[test]
    fn zero_one_by_one() {
        let r = check(&SparseIntMatrix::zeros(1, 1));
        assert!(r.s.is_zero());
        assert_eq!(r.u, SparseIntMatrix::identity(1));
        assert_eq!(r.v, SparseIntMatrix::identity(1));
    }

    #[test]
    fn two_by_two_example() {
        let r = check(&SparseIntMatrix::from_rows(2, 2, &[&[2, 4], &[6, 8]]));
        assert_eq!(r.invariant_factors(), &[BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn identity_is_fixed() {
        let r = check(&SparseIntMatrix::identity(3));
        assert_eq!(r.s, SparseIntMatrix::identity(3));
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let res = check(&SparseIntMatrix::zeros(r, c));
            assert_eq!(res.rank(), 0);
            assert_eq!(res.v.rows(), c);
            assert_eq!(res.u.rows(), r);
        }
    }

    #[test]
    fn falls_back_to_bigint_on_overflow() {
        let big = i64::MAX;
        let m = SparseIntMatrix::from_rows(2, 2, &[&[big, big - 1], &[big - 2, -big]]);
        let r = check(&m);
        assert_eq!(r.rank(), 2);
        let det: BigInt = r.invariant_factors().iter().product();
        let expected = BigInt::from(big) * BigInt::from(-big)
            - BigInt::from(big - 1) * BigInt::from(big - 2);
        assert_eq!(det, expected.abs());
    }
}
