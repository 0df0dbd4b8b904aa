//! Random sources used by the optimizer.
//!
//! The engine never talks to a concrete generator; it pulls uniform and
//! standard-normal variates through [`RandomSource`]. Production runs use
//! [`SeededSource`] (ChaCha8, identical streams on every platform), tests use
//! [`ScriptedSource`] to force particular branches.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub trait RandomSource {
    /// A draw from `Uniform[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// A draw from `N(0, 1)`.
    fn standard_normal(&mut self) -> f64;

    fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.uniform()
    }
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }

    fn standard_normal(&mut self) -> f64 {
        (**self).standard_normal()
    }
}

/// Deterministic generator seeded from a 64-bit value.
#[derive(Debug, Clone)]
pub struct SeededSource {
    rng: ChaCha8Rng,
}

impl SeededSource {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RandomSource for SeededSource {
    fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn standard_normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }
}

/// Replays pre-recorded values, falling back to a seeded generator once a
/// queue runs dry.
#[derive(Debug, Clone)]
pub struct ScriptedSource {
    uniforms: VecDeque<f64>,
    normals: VecDeque<f64>,
    fallback: SeededSource,
}

impl ScriptedSource {
    pub fn new(uniforms: impl IntoIterator<Item = f64>, normals: impl IntoIterator<Item = f64>) -> Self {
        Self {
            uniforms: uniforms.into_iter().collect(),
            normals: normals.into_iter().collect(),
            fallback: SeededSource::new(0),
        }
    }

    pub fn push_uniforms(&mut self, values: impl IntoIterator<Item = f64>) {
        self.uniforms.extend(values);
    }

    pub fn push_normals(&mut self, values: impl IntoIterator<Item = f64>) {
        self.normals.extend(values);
    }

    pub fn remaining(&self) -> (usize, usize) {
        (self.uniforms.len(), self.normals.len())
    }
}

impl RandomSource for ScriptedSource {
    fn uniform(&mut self) -> f64 {
        self.uniforms
            .pop_front()
            .unwrap_or_else(|| self.fallback.uniform())
    }

    fn standard_normal(&mut self) -> f64 {
        self.normals
            .pop_front()
            .unwrap_or_else(|| self.fallback.standard_normal())
    }
}

/// Derives the seed of run `index` from an experiment's master seed.
///
/// This is SplitMix64 applied to `master + (index + 1) * 0x9E3779B97F4A7C15`
/// (wrapping arithmetic). Ports to other languages must reproduce the test
/// vectors in this module.
pub fn split_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
