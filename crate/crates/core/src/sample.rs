//! Deterministic random rationals for pointwise spot checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Element;
use crate::linalg::{Rational, Subspace};

pub const DEFAULT_SEED: u64 = 0x5eed_f1de;

/// Seeded source of small rationals: numerators in `[-9, 9]`, denominators in `[1, 9]`.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.random_range(-9..=9);
        let den: i64 = self.rng.random_range(1..=9);
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(BigInt::from(0)) {
                return r;
            }
        }
    }

    pub fn vector(&mut self, len: usize) -> Vec<Rational> {
        (0..len).map(|_| self.rational()).collect()
    }

    pub fn element(&mut self, dim: usize) -> Element {
        Element::new(self.vector(dim))
    }

    /// Random combination of the basis of `space`.
    pub fn combination(&mut self, space: &Subspace) -> Vec<Rational> {
        let mut out = vec![Rational::from_integer(BigInt::from(0)); space.ambient_dim()];
        for b in space.basis_vectors() {
            let c = self.rational();
            for (o, x) in out.iter_mut().zip(&b) {
                *o += &c * x;
            }
        }
        out
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::new(DEFAULT_SEED)
    }
}
