use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{norm, orthonormalize_columns, Matrix};

const PRIMES: [u32; 32] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109,
    113, 127, 131,
];

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= b;
        r += f * (index % base as u64) as f64;
        index /= base as u64;
    }
    r
}

/// Standard normal draw by Box–Muller.
pub fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| gaussian(rng)).collect();
        let l = norm(&v);
        if l > 1e-12 {
            return v.into_iter().map(|x| x / l).collect();
        }
    }
}

/// Haar-ish random orthogonal matrix via Gram–Schmidt of a Gaussian matrix.
pub fn random_orthogonal<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, |_, _| gaussian(rng));
        if let Ok(q) = orthonormalize_columns(&g) {
            return q;
        }
    }
}

/// Low-discrepancy points on the unit sphere `S^{n-1}`.
///
/// Halton sequences with a seeded Cranley–Patterson shift, mapped to normals
/// by Box–Muller and normalized. The stream is a pure function of the seed.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    dim: usize,
    shift: Vec<f64>,
    index: u64,
}

impl SphereSampler {
    pub fn new(dim: usize, seed: u64) -> Self {
        let mut rng = rng_from_seed(seed);
        let coords = 2 * dim.div_ceil(2);
        let shift = (0..coords).map(|_| rng.gen::<f64>()).collect();
        Self { dim, shift, index: 1 }
    }
}

impl Iterator for SphereSampler {
    type Item = Vec<f64>;

    fn next(&mut self) -> Option<Vec<f64>> {
        loop {
            let i = self.index;
            self.index += 1;
            let mut v = Vec::with_capacity(self.shift.len());
            for pair in 0..self.shift.len() / 2 {
                let b1 = PRIMES[(2 * pair) % PRIMES.len()];
                let b2 = PRIMES[(2 * pair + 1) % PRIMES.len()];
                let u1 = (halton(i, b1) + self.shift[2 * pair]).fract();
                let u2 = (halton(i, b2) + self.shift[2 * pair + 1]).fract();
                let r = (-2.0 * (1.0 - u1).max(1e-300).ln()).sqrt();
                let a = std::f64::consts::TAU * u2;
                v.push(r * a.cos());
                v.push(r * a.sin());
            }
            v.truncate(self.dim);
            let l = norm(&v);
            if l > 1e-12 {
                return Some(v.into_iter().map(|x| x / l).collect());
            }
        }
    }
}
