//! Second-order partner with `ε = (−1, −6/5)` and `ν = (0, 2)`.
//!
//! Builds `V₂` by the Wronskian formula and by the Riccati chain, reports
//! their sup-norm distance and writes `x, V₀, V₂` as CSV to stdout.
//!
//! ```text
//! cargo run --example second_order_potential > v2.csv
//! ```

use susyloops::susychain::{potential_wronskian, riccati_chain};
use susyloops::{Grid, SeedSpec, SusyChain};

fn main() -> susyloops::Result<()> {
    let seeds = vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 2.0)];
    let chain = SusyChain::new(seeds, Grid::new(-6.0, 6.0, 241)?)?;

    let wronskian = potential_wronskian(&chain)?;
    let riccati = riccati_chain(&chain)?.final_potential();
    eprintln!("sup |V_W − V_R| = {:.3e}", wronskian.sup_distance(&riccati));

    let (i_min, v_min) = wronskian
        .v
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    eprintln!("minimum V₂ = {v_min:.6} at x = {:.2}", chain.grid().x(i_min));

    println!("x,v0,v2");
    for (i, v) in wronskian.v.iter().enumerate() {
        let x = chain.grid().x(i);
        println!("{x:.4},{:.10},{v:.10}", 0.5 * x * x);
    }
    Ok(())
}
