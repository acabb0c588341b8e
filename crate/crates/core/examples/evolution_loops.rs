//! Evolution loops: `U(τ) = e^{iφ}` on the whole space when every
//! `1/2 − ε_j` is rational.

use num_complex::Complex64;
use num_rational::Ratio;
use susyloops::loops::{detect_loops, evolve, geometric_phase_state};
use susyloops::{LoopReport, SpectrumDescriptor, StateVector};

fn main() -> susyloops::Result<()> {
    let exact = [Ratio::from_integer(-1), Ratio::new(-6, 5)];
    let spectrum = SpectrumDescriptor::new(vec![-1.0, -1.2])?;
    let lp = detect_loops(&spectrum, Some(&exact))?;
    println!("{lp:?}");
    println!("τ/π = {}, e^(iφ) = {}", lp.tau / std::f64::consts::PI, lp.phase_factor());

    // A superposition over isolated and ladder levels returns after τ.
    let mut st = StateVector::zeros(2, 4);
    st.b[0] = Complex64::new(0.6, 0.0);
    st.b[1] = Complex64::new(0.0, 0.3);
    st.c[0] = Complex64::new(0.5, 0.0);
    st.c[3] = Complex64::new(0.1, -0.2);
    let st = st.normalized();
    for t in [lp.tau / 3.0, lp.tau / 2.0, lp.tau] {
        let back = evolve(&spectrum, &st, t);
        println!("t = {:>7.4}: max |c(t) − c(0)| = {:.2e}", t, back.max_coefficient_error(&st));
    }
    let phase = geometric_phase_state(&spectrum, &st, &lp)?;
    println!("global loop: β = {:.12}, β mod 2π = {:.12}", phase.beta, phase.beta_mod);

    // Only the ladder closes after 2π.
    let partial = LoopReport::partial();
    let ladder = StateVector::ladder_level(2, 2, 4);
    let phase = geometric_phase_state(&spectrum, &ladder, &partial)?;
    println!("partial loop on |E = 5/2⟩: β = {:.12}", phase.beta);
    Ok(())
}
