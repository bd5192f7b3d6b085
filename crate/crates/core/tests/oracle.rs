//! The dense brute-force oracle against the exact engine.

mod common;

use common::{bareiss_rank, big, dense_differential, naive_snf_diagonal, oracle_homology, OracleGroup};
use eqfloer::data::{curated_library, i1, i2, validate};
use eqfloer::homology::homology_at;
use eqfloer::Flavor;
use num_bigint::BigInt;
use num_traits::Zero;

fn dense(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| big(v)).collect()).collect()
}

fn z() -> OracleGroup {
    OracleGroup {
        free_rank: 1,
        torsion: vec![],
    }
}

fn zero() -> OracleGroup {
    OracleGroup {
        free_rank: 0,
        torsion: vec![],
    }
}

#[test]
fn naive_snf_on_hand_examples() {
    assert_eq!(naive_snf_diagonal(&dense(&[&[2, 0], &[0, 3]])), vec![big(1), big(6)]);
    assert_eq!(naive_snf_diagonal(&dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])), vec![big(2), big(6), big(12)]);
    assert_eq!(naive_snf_diagonal(&dense(&[&[0, 0], &[0, 0]])), Vec::<BigInt>::new());
    assert_eq!(naive_snf_diagonal(&dense(&[&[4, 6]])), vec![big(2)]);
}

#[test]
fn bareiss_rank_on_hand_examples() {
    assert_eq!(bareiss_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
    assert_eq!(bareiss_rank(&dense(&[&[0, 1, 2], &[0, 2, 5], &[0, 0, 0]])), 2);
    assert_eq!(bareiss_rank(&dense(&[&[3]])), 1);
    assert_eq!(bareiss_rank(&[]), 0);
}

#[test]
fn oracle_differential_squares_to_zero_on_curated() {
    for d in curated_library().into_iter().filter(|d| validate(d).ok) {
        let w = d.default_window();
        for f in Flavor::ALL {
            for n in w.degrees() {
                let a = dense_differential(&d, f, n);
                let b = dense_differential(&d, f, n - 1);
                for row in &b {
                    for j in 0..a.first().map_or(0, Vec::len) {
                        let s: BigInt = row.iter().zip(&a).map(|(x, r)| x * &r[j]).sum();
                        assert!(s.is_zero(), "{} {f} degree {n}", d.name);
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_reproduces_the_plus_values_of_i1() {
    let d = i1();
    assert_eq!(oracle_homology(&d, Flavor::Plus, -2), z());
    for n in -1..=1 {
        assert_eq!(oracle_homology(&d, Flavor::Plus, n), zero());
    }
    assert_eq!(oracle_homology(&d, Flavor::Plus, 2), z());
    assert_eq!(oracle_homology(&d, Flavor::Plus, 3), zero());
    assert_eq!(oracle_homology(&d, Flavor::Plus, 4), z());
}

#[test]
fn oracle_sees_the_torsion_of_i2() {
    let g = oracle_homology(&i2(), Flavor::Plus, 0);
    assert_eq!(g.free_rank, 1);
    assert_eq!(g.torsion, vec![big(2)]);
}

fn agree(d: &eqfloer::MonopoleData, f: Flavor, n: i64) {
    let engine = homology_at(d, f, n).unwrap();
    let oracle = oracle_homology(d, f, n);
    assert_eq!(engine.free_rank(), oracle.free_rank, "{} {f} degree {n}", d.name);
    assert_eq!(engine.torsion(), oracle.torsion.as_slice(), "{} {f} degree {n}", d.name);
}

#[test]
fn engine_matches_oracle_on_curated_instances() {
    for d in curated_library().into_iter().filter(|d| validate(d).ok) {
        for f in Flavor::ALL {
            for n in d.default_window().degrees() {
                agree(&d, f, n);
            }
        }
    }
}

#[test]
fn engine_matches_oracle_on_generated_instances() {
    for d in common::generated().iter().take(20) {
        for f in [Flavor::Infinity, Flavor::Plus, Flavor::Hat, Flavor::NonEquivariant] {
            for n in d.default_window().degrees() {
                agree(d, f, n);
            }
        }
    }
}
