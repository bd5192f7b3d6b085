//! Seeded random instances, filtered by [`validate`](super::validate).

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{curated_library, validate, Coefficient, CriticalPoint, MonopoleData, THETA};

pub const MIN_GRADING: i64 = -4;
pub const MAX_GRADING: i64 = 4;
pub const MAX_COEFFICIENT: i64 = 3;
const DENSITIES: [f64; 3] = [0.2, 0.4, 0.6];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    /// Upper bound on the number of irreducible points per instance.
    pub max_points: usize,
    /// Stop after this many valid random instances.
    pub count: usize,
    /// Give up after this many candidates.
    pub max_attempts: usize,
}

impl GeneratorConfig {
    pub fn new(seed: u64, max_points: usize, count: usize) -> Self {
        GeneratorConfig {
            seed,
            max_points,
            count,
            max_attempts: count.saturating_mul(1000).max(1),
        }
    }
}

/// The curated library followed by every valid instance among `attempts` random candidates.
pub fn generate_instances(seed: u64, size: usize, attempts: usize) -> Vec<MonopoleData> {
    let mut out = curated_library();
    out.extend(sample_instances(GeneratorConfig {
        seed,
        max_points: size,
        count: usize::MAX,
        max_attempts: attempts,
    }));
    out
}

/// Random valid instances only, stopping after `count` successes or `max_attempts` candidates.
pub fn sample_instances(cfg: GeneratorConfig) -> Vec<MonopoleData> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    if cfg.max_points == 0 {
        return out;
    }
    for attempt in 0..cfg.max_attempts {
        if out.len() >= cfg.count {
            break;
        }
        let name = format!("gen-{}-{}", cfg.seed, attempt);
        let candidate = random_candidate(&mut rng, &name, cfg.max_points, "p");
        if validate(&candidate).ok {
            out.push(candidate);
        }
    }
    out
}

/// One candidate with `1..=max_points` points named `{prefix}0, {prefix}1, ...`.
fn random_candidate(rng: &mut ChaCha8Rng, name: &str, max_points: usize, prefix: &str) -> MonopoleData {
    let count = rng.gen_range(1..=max_points);
    let density = *DENSITIES.choose(rng).expect("nonempty");
    let points: Vec<CriticalPoint> = (0..count)
        .map(|i| CriticalPoint {
            id: format!("{prefix}{i}"),
            gr: rng.gen_range(MIN_GRADING..=MAX_GRADING),
        })
        .collect();
    let value = |rng: &mut ChaCha8Rng| -> Option<BigInt> {
        if !rng.gen_bool(density) {
            return None;
        }
        let mut v = rng.gen_range(1..=MAX_COEFFICIENT);
        if rng.gen_bool(0.5) {
            v = -v;
        }
        Some(BigInt::from(v))
    };
    let mut n = Vec::new();
    let mut m = Vec::new();
    let coefficient = |from: &str, to: &str, value: BigInt| Coefficient {
        from: from.to_string(),
        to: to.to_string(),
        value,
    };
    for a in &points {
        for b in &points {
            if a.gr - b.gr == 1 {
                if let Some(v) = value(rng) {
                    n.push(coefficient(&a.id, &b.id, v));
                }
            }
            if a.gr - b.gr == 2 {
                if let Some(v) = value(rng) {
                    m.push(coefficient(&a.id, &b.id, v));
                }
            }
        }
        if a.gr == 1 {
            if let Some(v) = value(rng) {
                n.push(coefficient(&a.id, THETA, v));
            }
        }
        if a.gr == -2 {
            if let Some(v) = value(rng) {
                n.push(coefficient(THETA, &a.id, v));
            }
        }
    }
    MonopoleData {
        name: name.to_string(),
        points,
        n,
        m,
    }
    .canonical()
}

/// A valid instance with exactly `points` irreducibles, assembled from small
/// random valid blocks. Blocks share `θ`, so the union is revalidated after
/// each block and a block that creates a cross term is resampled.
pub fn synthetic_instance(seed: u64, points: usize) -> MonopoleData {
    const BLOCK: usize = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut union = MonopoleData::new(format!("synthetic-{seed}-{points}"));
    let mut block = 0;
    while union.points.len() < points {
        let want = BLOCK.min(points - union.points.len());
        let prefix = format!("b{block}_p");
        let candidate = loop {
            let c = random_candidate(&mut rng, "block", want, &prefix);
            if !validate(&c).ok {
                continue;
            }
            let mut merged = union.clone();
            merged.points.extend(c.points.iter().cloned());
            merged.n.extend(c.n.iter().cloned());
            merged.m.extend(c.m.iter().cloned());
            if validate(&merged).ok {
                break merged;
            }
        };
        union = candidate;
        block += 1;
    }
    union.canonical()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_zero_size_zero_contains_i0() {
        let out = generate_instances(0, 0, 10);
        assert!(out.iter().any(|d| d.name == "I0" && d.points.is_empty()));
    }

    #[test]
    fn output_is_valid_and_deterministic() {
        let a = generate_instances(7, 6, 300);
        let b = generate_instances(7, 6, 300);
        assert_eq!(a, b);
        assert!(a.len() > curated_library().len());
        assert!(a.iter().all(|d| validate(d).ok));
    }

    #[test]
    fn synthetic_instance_has_requested_size() {
        let d = synthetic_instance(3, 10);
        assert_eq!(d.points.len(), 10);
        assert!(validate(&d).ok);
        assert_eq!(d, synthetic_instance(3, 10));
    }
}
