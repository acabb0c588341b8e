//! Seed solutions of the oscillator equation at an arbitrary energy.
//!
//! Prints `u`, `u′` and the Riccati residual `α′ + α² − (x² − 2ε)` for a few
//! seeds, with `α′` from a central difference of `α = u′/u`.
//!
//! ```text
//! cargo run --example seed_solutions
//! ```

use susyloops::seed::{alpha1, eval_seed};
use susyloops::SeedSpec;

fn main() -> susyloops::Result<()> {
    let seeds = [
        SeedSpec::new(-1.0, 0.0),
        SeedSpec::new(-1.2, 2.0),
        SeedSpec::new(-0.5, 0.3),
    ];
    println!("{:>6} {:>5} {:>6} {:>14} {:>14} {:>11}", "ε", "ν", "x", "u", "u′", "riccati");
    for s in seeds {
        for x in [-3.0, -1.0, 0.0, 1.0, 3.0] {
            let e = eval_seed(s, x, 1)?;
            let a = alpha1(s, x)?;
            let h = 1e-4;
            let da = (alpha1(s, x + h)? - alpha1(s, x - h)?) / (2.0 * h);
            let residual = da + a * a - (x * x - 2.0 * s.epsilon);
            println!(
                "{:>6} {:>5} {:>6} {:>14.6e} {:>14.6e} {:>11.2e}",
                s.epsilon, s.nu, x, e.u, e.deriv(1), residual
            );
        }
    }
    Ok(())
}
