#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use susyloops::{Grid, SeedSpec, StateVector, SusyChain};

pub fn reference_seeds() -> Vec<SeedSpec> {
    vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 2.0)]
}

pub fn reference_chain() -> SusyChain {
    SusyChain::new(reference_seeds(), Grid::default()).unwrap()
}

/// Random chain of order `k` inside the alternating ν windows, |ε| ≤ 3.
pub fn random_valid_seeds(rng: &mut ChaCha8Rng, k: usize) -> Vec<SeedSpec> {
    let mut eps = rng.gen_range(-1.5..0.4);
    (0..k)
        .map(|i| {
            if i > 0 {
                eps -= rng.gen_range(0.15..0.7);
            }
            let nu = if i % 2 == 0 {
                rng.gen_range(-0.9..0.9)
            } else {
                let m: f64 = rng.gen_range(1.2..3.0);
                if rng.gen_bool(0.5) {
                    m
                } else {
                    -m
                }
            };
            SeedSpec::new(eps, nu)
        })
        .collect()
}

pub fn random_state(rng: &mut ChaCha8Rng, k: usize, len: usize) -> StateVector {
    let mut s = StateVector::zeros(k, len);
    for v in s.b.iter_mut().chain(s.c.iter_mut()) {
        *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    s.normalized()
}
