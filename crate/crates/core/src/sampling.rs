//! Seeded random draws on the positive sphere.
//!
//! Each sample index gets its own ChaCha stream, so results do not depend on
//! how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Independent generator for sample `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Absolute values of standard normals, normalized to unit length.
pub fn positive_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n)
            .map(|_| rng.sample::<f64, _>(StandardNormal).abs())
            .collect();
        if normalize(&mut v) {
            return v;
        }
    }
}

/// A point of the positive sphere supported on a random subset of
/// coordinates (between one and `n` of them).
pub fn sparse_positive_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let support = rng.random_range(1..=n);
    let mut idx: Vec<usize> = (0..n).collect();
    // partial Fisher-Yates
    for i in 0..support {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    loop {
        let mut v = vec![0.0; n];
        for &i in &idx[..support] {
            v[i] = rng.sample::<f64, _>(StandardNormal).abs();
        }
        if normalize(&mut v) {
            return v;
        }
    }
}

/// Mixture used by the Monte-Carlo checks: one draw in four is sparse.
pub fn mixed_positive_sphere<R: Rng + ?Sized>(rng: &mut R, n: usize, index: usize) -> Vec<f64> {
    if index % 4 == 3 {
        sparse_positive_sphere(rng, n)
    } else {
        positive_sphere(rng, n)
    }
}

pub(crate) fn normalize(v: &mut [f64]) -> bool {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_lie_on_positive_sphere() {
        let mut rng = stream_rng(3, 0);
        for i in 0..200 {
            let v = mixed_positive_sphere(&mut rng, 7, i);
            let norm: f64 = v.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-14);
            assert!(v.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn streams_are_reproducible() {
        let a = positive_sphere(&mut stream_rng(9, 41), 5);
        let b = positive_sphere(&mut stream_rng(9, 41), 5);
        let c = positive_sphere(&mut stream_rng(9, 42), 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sparse_draws_have_zeros() {
        let mut rng = stream_rng(1, 1);
        let zeros = (0..100)
            .map(|_| sparse_positive_sphere(&mut rng, 6))
            .filter(|v| v.contains(&0.0))
            .count();
        assert!(zeros > 50);
    }
}
