//! Finite-difference oracle for the analytic spectrum.
//!
//! `H = −½ d²/dx² + V` is discretized with the 3-point stencil and Dirichlet
//! conditions at the grid ends, giving a symmetric tridiagonal matrix whose
//! lowest eigenvalues are found by Sturm-sequence bisection.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::susychain::{Grid, PotentialTable};

/// Largest number of eigenvalues [`low_eigenvalues`] will extract.
pub const MAX_EIGS: usize = 32;
/// Default bracket width for bisection.
pub const BRACKET_WIDTH: f64 = 1e-10;
/// Level agreement required by the oracle.
pub const AGREEMENT_TOL: f64 = 1e-3;

/// Symmetric tridiagonal discretization over the interior grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedHamiltonian {
    pub grid: Grid,
    /// `1/h² + V(x_i)` at interior nodes.
    pub diagonal: Vec<f64>,
    /// `−1/(2h²)` between neighbouring interior nodes.
    pub off_diagonal: Vec<f64>,
}

pub fn discretize(pot: &PotentialTable) -> Result<DiscretizedHamiltonian> {
    let n = pot.grid.n_points;
    if pot.v.len() != n {
        return Err(Error::InvalidArgument("potential length does not match grid".into()));
    }
    if let Some(i) = pot.v.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "potential is not finite at x = {}",
            pot.grid.x(i)
        )));
    }
    let h2 = pot.grid.spacing().powi(2);
    let diagonal: Vec<f64> = pot.v[1..n - 1].iter().map(|v| 1.0 / h2 + v).collect();
    let off_diagonal = vec![-0.5 / h2; diagonal.len().saturating_sub(1)];
    Ok(DiscretizedHamiltonian {
        grid: pot.grid,
        diagonal,
        off_diagonal,
    })
}

impl DiscretizedHamiltonian {
    /// Number of eigenvalues strictly below `lambda` (sign changes of the
    /// `LDLᵀ` pivots).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for (i, a) in self.diagonal.iter().enumerate() {
            let coupling = if i == 0 { 0.0 } else { self.off_diagonal[i - 1].powi(2) / d };
            d = a - lambda - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_diagonal[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off_diagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }
}

/// The `count` smallest eigenvalues, each bracketed to [`BRACKET_WIDTH`].
pub fn low_eigenvalues(h: &DiscretizedHamiltonian, count: usize) -> Result<Vec<f64>> {
    low_eigenvalues_with_width(h, count, BRACKET_WIDTH)
}

pub fn low_eigenvalues_with_width(h: &DiscretizedHamiltonian, count: usize, width: f64) -> Result<Vec<f64>> {
    if count > MAX_EIGS || count > h.diagonal.len() {
        return Err(Error::InvalidArgument(format!(
            "requested {count} eigenvalues (max {MAX_EIGS}, matrix size {})",
            h.diagonal.len()
        )));
    }
    let (glo, ghi) = h.gershgorin();
    let mut eigs = Vec::with_capacity(count);
    let mut lo = glo;
    for j in 0..count {
        // smallest λ with at least j + 1 eigenvalues below it
        let mut a = lo;
        let mut b = ghi;
        while b - a > width {
            let mid = 0.5 * (a + b);
            if h.count_below(mid) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let e = 0.5 * (a + b);
        eigs.push(e);
        lo = a;
    }
    Ok(eigs)
}

/// `max_E |e^{−iEτ} − e^{iφ}|`.
pub fn loop_residual(eigs: &[f64], tau: f64, phi: f64) -> f64 {
    let target = Complex64::from_polar(1.0, phi);
    eigs.iter()
        .map(|e| (Complex64::from_polar(1.0, -e * tau) - target).norm())
        .fold(0.0, f64::max)
}

/// Analytic versus discretized levels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    pub max_abs_err: f64,
    /// Discretized eigenvalues below `cutoff`.
    pub numeric_below_cutoff: usize,
    pub cutoff: f64,
}

impl SpectrumReport {
    /// Every analytic level matched within [`AGREEMENT_TOL`] and no extra
    /// discretized level below the cutoff.
    pub fn passes(&self) -> bool {
        let expected_below = self.analytic.iter().filter(|e| **e < self.cutoff).count();
        self.max_abs_err <= AGREEMENT_TOL && self.numeric_below_cutoff == expected_below
    }
}

/// Compares sorted `analytic` levels with the lowest discretized eigenvalues.
pub fn compare_spectrum(h: &DiscretizedHamiltonian, analytic: &[f64], cutoff: f64) -> Result<SpectrumReport> {
    let mut analytic = analytic.to_vec();
    analytic.sort_by(f64::total_cmp);
    let numeric = low_eigenvalues(h, analytic.len())?;
    let max_abs_err = analytic
        .iter()
        .zip(&numeric)
        .map(|(a, n)| (a - n).abs())
        .fold(0.0, f64::max);
    Ok(SpectrumReport {
        analytic,
        numeric,
        max_abs_err,
        numeric_below_cutoff: h.count_below(cutoff),
        cutoff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn oscillator_table(grid: Grid, shift: f64) -> PotentialTable {
        PotentialTable {
            grid,
            v: grid.points().iter().map(|x| 0.5 * x * x + shift).collect(),
            order: 0,
        }
    }

    #[test]
    fn structure() {
        let h = discretize(&oscillator_table(Grid::default(), 0.0)).unwrap();
        assert_eq!(h.diagonal.len(), 2399);
        assert!(h.off_diagonal.iter().all(|o| *o == -0.5 / 1e-4 || (o + 5000.0).abs() < 1e-8));
    }

    #[test]
    fn oscillator_levels() {
        let h = discretize(&oscillator_table(Grid::default(), 0.0)).unwrap();
        let eigs = low_eigenvalues(&h, 5).unwrap();
        for (n, e) in eigs.iter().enumerate() {
            assert!((e - (n as f64 + 0.5)).abs() < 1e-3, "n = {n}: {e}");
        }
        assert!(loop_residual(&eigs, 2.0 * std::f64::consts::PI, std::f64::consts::PI) <= 1e-2);
    }

    #[test]
    fn shifted_oscillator_levels() {
        let h = discretize(&oscillator_table(Grid::default(), -1.0)).unwrap();
        let eigs = low_eigenvalues(&h, 3).unwrap();
        for (e, expected) in eigs.iter().zip([-0.5, 0.5, 1.5]) {
            assert!((e - expected).abs() < 1e-3);
        }
    }

    #[test]
    fn two_by_two() {
        // [[2, −1], [−1, 3]] → (5 ∓ √5)/2
        let h = DiscretizedHamiltonian {
            grid: Grid::default(),
            diagonal: vec![2.0, 3.0],
            off_diagonal: vec![-1.0],
        };
        let eigs = low_eigenvalues(&h, 2).unwrap();
        assert_relative_eq!(eigs[0], (5.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-9);
        assert_relative_eq!(eigs[1], (5.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-9);
        assert!(low_eigenvalues(&h, 3).is_err());
    }

    #[test]
    fn exact_levels_close_the_loop() {
        let levels = [-1.2, -1.0, 0.5, 1.5, 2.5, 3.5];
        let r = loop_residual(&levels, 20.0 * std::f64::consts::PI, 0.0);
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn non_finite_potential_rejected() {
        let mut t = oscillator_table(Grid::new(-1.0, 1.0, 5).unwrap(), 0.0);
        t.v[2] = f64::NAN;
        assert!(discretize(&t).is_err());
    }
}
