//! Seeded randomness.
//!
//! Every random component draws from its own ChaCha8 stream. The stream for
//! `(seed, label)` is keyed by 32 bytes taken from a SplitMix64 sequence whose
//! state starts at `seed XOR fnv1a64(label)`. Labels are fixed strings such as
//! `"quadratic/H"`, so adding a component never perturbs existing streams.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

fn fnv1a64(label: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Sub-seed for a labelled component.
pub fn derive_seed(seed: u64, label: &str) -> u64 {
    let mut state = seed ^ fnv1a64(label);
    splitmix64(&mut state)
}

pub fn stream(seed: u64, label: &str) -> StreamRng {
    let mut state = seed ^ fnv1a64(label);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform on `[0, 1)` with 53 random bits.
pub fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Exponential with rate `lambda`, by inverse CDF `-ln(1 - U) / lambda`.
pub fn exponential<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> f64 {
    -(1.0 - uniform(rng)).ln() / lambda
}

/// Dirichlet(1, ..., 1) weights of length `k`.
pub fn flat_dirichlet<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..k).map(|_| exponential(rng, 1.0)).collect();
    let total: f64 = w.iter().sum();
    if total > 0.0 {
        for v in w.iter_mut() {
            *v /= total;
        }
    } else {
        w = vec![1.0 / k as f64; k];
    }
    w
}

pub fn permutation<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    p.shuffle(rng);
    p
}
