//! Analytic spectrum of a partner against a finite-difference Hamiltonian.
//!
//! ```text
//! cargo run --release --example spectrum_oracle
//! ```

use susyloops::algebra::SpectrumDescriptor;
use susyloops::numverify::{compare_spectrum, discretize};
use susyloops::susychain::potential_wronskian;
use susyloops::{Grid, SeedSpec, SusyChain};

fn main() -> susyloops::Result<()> {
    let chains = [
        vec![SeedSpec::new(-0.5, 0.0)],
        vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 2.0)],
        vec![SeedSpec::new(0.2, 0.4), SeedSpec::new(-0.7, -1.5), SeedSpec::new(-1.6, 0.1)],
    ];
    for seeds in chains {
        let chain = SusyChain::new(seeds, Grid::default())?;
        let spectrum = SpectrumDescriptor::new(chain.epsilons())?;
        let analytic: Vec<f64> = spectrum
            .lowest_levels(chain.order() + 4)
            .into_iter()
            .filter(|e| *e < 4.0)
            .collect();
        let h = discretize(&potential_wronskian(&chain)?)?;
        let report = compare_spectrum(&h, &analytic, 4.0)?;
        println!("ε = {:?}", chain.epsilons());
        for (a, n) in report.analytic.iter().zip(&report.numeric) {
            println!("  {a:>8.4}  {n:>12.8}  {:>9.2e}", (a - n).abs());
        }
        println!(
            "  max error {:.2e}, {} levels below {}: {}",
            report.max_abs_err,
            report.numeric_below_cutoff,
            report.cutoff,
            if report.passes() { "ok" } else { "MISMATCH" }
        );
    }
    Ok(())
}
