//! Cross-module invariants checked against independent oracles.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use susyloops::algebra::SpectrumDescriptor;
use susyloops::numverify::{compare_spectrum, discretize, low_eigenvalues};
use susyloops::specfun::{hyper_0fq, kummer_1f1};
use susyloops::susychain::potential_wronskian;
use susyloops::{Grid, SusyChain};

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Partial sum of a hypergeometric series in exact arithmetic until the
/// terms fall below 1e−40 of the sum.
fn exact_series(ratio: impl Fn(u32) -> BigRational) -> f64 {
    let mut term = BigRational::one();
    let mut sum = BigRational::one();
    let tiny = rational(1, 10).pow(40);
    for n in 0..2000 {
        term *= ratio(n);
        sum += &term;
        if !term.is_zero() && (&term / &sum).abs() < tiny && n > 10 {
            break;
        }
    }
    sum.to_f64().unwrap()
}

#[test]
fn series_match_exact_rational_sums() {
    let cases = [((1, 4), (1, 2), (3, 1)), ((7, 4), (3, 2), (25, 2)), ((-5, 2), (1, 2), (4, 1)), ((3, 10), (3, 2), (40, 1))];
    for (a, b, y) in cases {
        let (ar, br, yr) = (rational(a.0, a.1), rational(b.0, b.1), rational(y.0, y.1));
        let want = exact_series(|n| {
            let n = BigRational::from_integer(n.into());
            (&ar + &n) * &yr / ((&br + &n) * (n + BigRational::one()))
        });
        let af = a.0 as f64 / a.1 as f64;
        let bf = b.0 as f64 / b.1 as f64;
        let yf = y.0 as f64 / y.1 as f64;
        let got = kummer_1f1(af, bf, yf).unwrap().value;
        assert!((got - want).abs() <= 1e-13 * want.abs(), "1F1({af}, {bf}; {yf}) = {got}, exact {want}");
    }

    let denoms = [rational(3, 2), rational(5, 2), rational(17, 10), rational(27, 10)];
    for y in [1i64, 9, 30] {
        let yr = BigRational::from_integer(y.into());
        let want = exact_series(|n| {
            let n = BigRational::from_integer(n.into());
            let mut d = n.clone() + BigRational::one();
            for q in &denoms {
                d *= q + &n;
            }
            &yr / d
        });
        let got = hyper_0fq(&[1.5, 2.5, 1.7, 2.7], y as f64).unwrap().value;
        assert!((got - want).abs() <= 1e-13 * want, "0F4(y = {y}) = {got}, exact {want}");
    }
}

fn reference_eigen_error(n_points: usize) -> f64 {
    let chain = SusyChain::new(common::reference_seeds(), Grid::new(-12.0, 12.0, n_points).unwrap()).unwrap();
    let h = discretize(&potential_wronskian(&chain).unwrap()).unwrap();
    let eigs = low_eigenvalues(&h, 6).unwrap();
    eigs.iter()
        .zip([-1.2, -1.0, 0.5, 1.5, 2.5, 3.5])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

#[test]
fn grid_refinement_is_second_order() {
    let coarse = reference_eigen_error(1201);
    let fine = reference_eigen_error(2401);
    assert!(coarse / fine >= 3.5, "h error {coarse:e}, h/2 error {fine:e}");
}

#[test]
fn random_chains_are_regular_and_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for k in 1..=3 {
        for _ in 0..20 {
            let seeds = common::random_valid_seeds(&mut rng, k);
            let chain = SusyChain::new(seeds.clone(), Grid::default()).unwrap();
            assert!(chain.window_violations().is_empty());
            let pot = potential_wronskian(&chain).unwrap();
            assert!(pot.v.iter().all(|v| v.is_finite()), "{seeds:?}");

            let spectrum = SpectrumDescriptor::new(chain.epsilons()).unwrap();
            let cutoff = 4.0;
            let analytic: Vec<f64> = spectrum
                .lowest_levels(k + 8)
                .into_iter()
                .filter(|&e| e < cutoff)
                .collect();
            let report = compare_spectrum(&discretize(&pot).unwrap(), &analytic, cutoff).unwrap();
            assert!(report.passes(), "{seeds:?}: {report:?}");
        }
    }
}
