//! Geometric phase of coherent states as a function of `r = |z|`.
//!
//! Prints `β(r)` for the oscillator, the first-order partner with
//! `ε = −1/2` and the second-order partner with `ε = (−1, −6/5)`, each from
//! the closed `₀F_{2k}` ratio and from the coefficient sum.
//!
//! ```text
//! cargo run --example geometric_phase > beta.csv
//! ```

use num_rational::Ratio;
use susyloops::loops::{coherent_phase_closed_form, coherent_phase_formula, coherent_phase_sum};
use susyloops::SpectrumDescriptor;

fn main() -> susyloops::Result<()> {
    let f = coherent_phase_formula(&[Ratio::<i64>::from_integer(-1), Ratio::new(-6, 5)]);
    eprintln!("second-order prefactor: {}·π r²", f.prefactor);

    let spectra = [
        SpectrumDescriptor::oscillator(),
        SpectrumDescriptor::new(vec![-0.5])?,
        SpectrumDescriptor::new(vec![-1.0, -1.2])?,
    ];
    println!("r,beta_k0,beta_k1,beta_k2,max_route_gap");
    for i in 0..=40 {
        let r = 0.1 * i as f64;
        let mut row = Vec::new();
        let mut gap = 0.0f64;
        for s in &spectra {
            let closed = coherent_phase_closed_form(s, r)?;
            let sum = coherent_phase_sum(s, r)?.beta;
            gap = gap.max((closed - sum).abs());
            row.push(format!("{closed:.12}"));
        }
        println!("{r:.1},{},{gap:.1e}", row.join(","));
    }
    Ok(())
}
