//! Nonlinear coherent states `L⁻|z⟩ = z|z⟩`.
//!
//! The normalization is computed from its closed hypergeometric form and
//! by summing the coefficients; both are printed along with the
//! eigenvalue residual and the energy.

use num_complex::Complex64;
use susyloops::states::{coherent_state, eigenvalue_residual, energy_expectation};
use susyloops::SpectrumDescriptor;

fn main() -> susyloops::Result<()> {
    let spectrum = SpectrumDescriptor::new(vec![-1.0, -1.2])?;
    for z in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(3.0, 3.0)] {
        let cs = coherent_state(&spectrum, z)?;
        println!("z = {z}");
        println!("  N closed {:.15e}  N summed {:.15e}", cs.normalization, cs.normalization_direct);
        println!("  ladder terms {}  discarded mass ≤ {:.1e}", cs.state.c.len(), cs.tail);
        println!("  ‖L⁻|z⟩ − z|z⟩‖ = {:.2e}", eigenvalue_residual(&spectrum, &cs));
        println!("  ⟨H⟩ = {:.10}", energy_expectation(&spectrum, &cs.state));
        let lead: Vec<String> = cs.state.c.iter().take(4).map(|c| format!("{c:.6}")).collect();
        println!("  c₀..c₃ = {}", lead.join(", "));
    }
    Ok(())
}
