//! Shared test support: the seeded corpus and an independent dense
//! brute-force homology oracle.
//!
//! The oracle works straight from the raw [`MonopoleData`] lists. It keeps
//! points in input order, looks coefficients up by linear scan, stores every
//! matrix densely and reduces with a textbook Smith normal form. None of the
//! crate's complex builder, sparse matrices or lattice code is used.

#![allow(dead_code)]

use eqfloer::data::{self, GeneratorConfig, THETA};
use eqfloer::{Flavor, MonopoleData};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub const CORPUS_SEED: u64 = 20_240_917;
pub const CORPUS_GENERATED: usize = 60;
pub const CORPUS_MAX_POINTS: usize = 12;

/// The valid curated instances followed by the seeded random instances.
pub fn corpus() -> Vec<MonopoleData> {
    let mut out: Vec<MonopoleData> = data::curated_library()
        .into_iter()
        .filter(|d| data::validate(d).ok)
        .collect();
    out.extend(generated());
    out
}

pub fn generated() -> Vec<MonopoleData> {
    data::sample_instances(GeneratorConfig::new(CORPUS_SEED, CORPUS_MAX_POINTS, CORPUS_GENERATED))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Theta(i64),
    Eta(usize, i64),
    One(usize, i64),
}

fn admissible(flavor: Flavor, cell: &Cell) -> bool {
    let (k, eta) = match cell {
        Cell::Theta(k) | Cell::One(_, k) => (*k, false),
        Cell::Eta(_, k) => (*k, true),
    };
    match flavor {
        Flavor::Infinity => true,
        Flavor::Minus => k < 0,
        Flavor::Plus => k >= 0,
        Flavor::Hat => k == 0,
        Flavor::NonEquivariant => eta && k == 0,
    }
}

/// The generators of degree `n`, with points in input order.
pub fn cells(data: &MonopoleData, flavor: Flavor, n: i64) -> Vec<Cell> {
    let mut out = Vec::new();
    if n.rem_euclid(2) == 0 {
        out.push(Cell::Theta(n / 2));
    }
    for (i, p) in data.points.iter().enumerate() {
        let r = n - p.gr;
        if r.rem_euclid(2) == 0 {
            out.push(Cell::Eta(i, r / 2));
        } else {
            out.push(Cell::One(i, (r - 1) / 2));
        }
    }
    out.retain(|c| admissible(flavor, c));
    out
}

fn lookup(list: &[data::Coefficient], from: &str, to: &str) -> BigInt {
    let mut total = BigInt::zero();
    for c in list {
        if c.from == from && c.to == to {
            total += &c.value;
        }
    }
    total
}

/// `D` applied to one generator, as a list of (target, coefficient).
fn boundary(data: &MonopoleData, cell: &Cell) -> Vec<(Cell, BigInt)> {
    let pts = &data.points;
    let mut out = Vec::new();
    match cell {
        Cell::Eta(a, k) => {
            let id = &pts[*a].id;
            for (b, q) in pts.iter().enumerate() {
                out.push((Cell::Eta(b, *k), lookup(&data.n, id, &q.id)));
                out.push((Cell::One(b, *k), lookup(&data.m, id, &q.id)));
            }
            out.push((Cell::One(*a, k - 1), BigInt::from(-1)));
            out.push((Cell::Theta(*k), lookup(&data.n, id, THETA)));
        }
        Cell::One(a, k) => {
            let id = &pts[*a].id;
            for (b, q) in pts.iter().enumerate() {
                out.push((Cell::One(b, *k), -lookup(&data.n, id, &q.id)));
            }
        }
        Cell::Theta(k) => {
            for (d, q) in pts.iter().enumerate() {
                out.push((Cell::One(d, *k), lookup(&data.n, THETA, &q.id)));
            }
        }
    }
    out
}

/// Dense matrix of `D_n : C_n → C_{n−1}`, rows indexed by `cells(n − 1)`.
pub fn dense_differential(data: &MonopoleData, flavor: Flavor, n: i64) -> Vec<Vec<BigInt>> {
    let source = cells(data, flavor, n);
    let target = cells(data, flavor, n - 1);
    let mut m = vec![vec![BigInt::zero(); source.len()]; target.len()];
    for (j, c) in source.iter().enumerate() {
        for (t, v) in boundary(data, c) {
            if let Some(i) = target.iter().position(|x| *x == t) {
                m[i][j] += v;
            }
        }
    }
    m
}

/// Rank by fraction-free Gaussian elimination.
pub fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Absolute values of the nonzero Smith diagonal, by repeated pivoting on
/// the smallest entry.
pub fn naive_snf_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let pivot_row = a[t].clone();
        for row in a[t + 1..].iter_mut() {
            let q = &row[t] / &pivot_row[t];
            for (x, p) in row[t..].iter_mut().zip(&pivot_row[t..]) {
                *x -= &q * p;
            }
            clean &= row[t].is_zero();
        }
        for j in t + 1..cols {
            let q = &a[t][j] / &a[t][t];
            for row in a[t..].iter_mut() {
                let v = &q * &row[t];
                row[j] -= v;
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
        if let Some(i) = bad {
            let source = a[i].clone();
            for (x, y) in a[t][t..].iter_mut().zip(&source[t..]) {
                *x += y;
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Free rank and torsion invariant factors (all greater than one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn oracle_homology(data: &MonopoleData, flavor: Flavor, n: i64) -> OracleGroup {
    let dim = cells(data, flavor, n).len();
    let out = dense_differential(data, flavor, n);
    let inc = dense_differential(data, flavor, n + 1);
    let free_rank = dim - bareiss_rank(&out) - bareiss_rank(&inc);
    let one = BigInt::from(1);
    let torsion = naive_snf_diagonal(&inc).into_iter().filter(|d| *d != one).collect();
    OracleGroup { free_rank, torsion }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
