//! Polynomial Heisenberg algebra of the natural ladder operators.
//!
//! Prints `q(E)` and `p(E) = q(E+1) − q(E)` with exact rational coefficients
//! and checks `[L⁻, L⁺] = p(H)` on the first ladder levels.

use num_rational::Ratio;
use susyloops::algebra::{build_polynomials, build_polynomials_exact, ladder_action, Direction};
use susyloops::{SpectrumDescriptor, StateVector};

fn main() -> susyloops::Result<()> {
    let exact = [Ratio::from_integer(-1), Ratio::new(-6, 5)];
    let polys = build_polynomials_exact(&exact);
    let show = |c: &[Ratio<i128>]| c.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    println!("q coefficients (ascending): {}", show(&polys.q.coeffs));
    println!("p coefficients (ascending): {}", show(&polys.p.coeffs));

    let spectrum = SpectrumDescriptor::new(vec![-1.0, -1.2])?;
    let p = build_polynomials(&spectrum).p;
    for n in 0..6 {
        let st = StateVector::ladder_level(2, n, 12);
        let du = ladder_action(&spectrum, Direction::Down, &ladder_action(&spectrum, Direction::Up, &st));
        let ud = ladder_action(&spectrum, Direction::Up, &ladder_action(&spectrum, Direction::Down, &st));
        let e = spectrum.level(n);
        println!(
            "E = {e:>4}: ⟨[L⁻,L⁺]⟩ = {:>12.4}, p(E) = {:>12.4}",
            (du.c[n] - ud.c[n]).re,
            p.eval(e)
        );
    }
    for j in 0..2 {
        let iso = StateVector::isolated_level(2, j, 4);
        let up = ladder_action(&spectrum, Direction::Up, &iso).norm();
        println!("‖L⁺|ε_{}⟩‖ = {up}", j + 1);
    }
    Ok(())
}
