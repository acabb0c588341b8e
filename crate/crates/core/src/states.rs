//! States over `Sp(H_k)` and the nonlinear coherent states `L_k^-|z⟩ = z|z⟩`.
//!
//! ```text
//! |z⟩ = N(r) Σ_n zⁿ |n⟩ / √(n! Π_i Γ(n + 1/2 − ε_i) Γ(n + 3/2 − ε_i))
//! N(r)² = Π_i Γ(1/2 − ε_i) Γ(3/2 − ε_i) / ₀F_{2k}(1/2 − ε_i…, 3/2 − ε_i…; r²)
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{ladder_action, Direction, SpectrumDescriptor};
use crate::error::{Error, Result};
use crate::specfun::{hyper_0fq, log_gamma};

/// Largest accepted `|z|`.
pub const R_MAX: f64 = 20.0;
/// Hard cap on the number of ladder coefficients of a coherent state.
pub const N_MAX_CAP: usize = 4096;
/// Largest tolerated truncated probability mass.
pub const TAIL_TOL: f64 = 1e-12;

/// Coefficients `b_j` over the isolated levels (chain order) and `c_n` over
/// the infinite ladder.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StateVector {
    pub b: Vec<Complex64>,
    pub c: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(k: usize, ladder_len: usize) -> Self {
        Self {
            b: vec![Complex64::new(0.0, 0.0); k],
            c: vec![Complex64::new(0.0, 0.0); ladder_len],
        }
    }

    /// `|ψ_n^k⟩`.
    pub fn ladder_level(k: usize, n: usize, ladder_len: usize) -> Self {
        let mut s = Self::zeros(k, ladder_len.max(n + 1));
        s.c[n] = Complex64::new(1.0, 0.0);
        s
    }

    /// `|ψ_{ε_j}^k⟩`, 0-based `j` in chain order.
    pub fn isolated_level(k: usize, j: usize, ladder_len: usize) -> Self {
        let mut s = Self::zeros(k, ladder_len);
        s.b[j] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.b.iter().chain(&self.c).map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn isolated_weight(&self) -> f64 {
        self.b.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    pub fn normalized(mut self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            for v in self.b.iter_mut().chain(self.c.iter_mut()) {
                *v /= n;
            }
        }
        self
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            b: self.b.iter().map(|v| v * s).collect(),
            c: self.c.iter().map(|v| v * s).collect(),
        }
    }

    /// `‖self − other‖`, padding the shorter ladder with zeros.
    pub fn distance(&self, other: &Self) -> f64 {
        fn diff(a: &[Complex64], b: &[Complex64]) -> f64 {
            let zero = Complex64::new(0.0, 0.0);
            (0..a.len().max(b.len()))
                .map(|i| (a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).norm_sqr())
                .sum()
        }
        (diff(&self.b, &other.b) + diff(&self.c, &other.c)).sqrt()
    }

    /// Largest coefficient-wise `|a_i − b_i|`.
    pub fn max_coefficient_error(&self, other: &Self) -> f64 {
        let zero = Complex64::new(0.0, 0.0);
        let m = |a: &[Complex64], b: &[Complex64]| {
            (0..a.len().max(b.len()))
                .map(|i| (a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).norm())
                .fold(0.0, f64::max)
        };
        m(&self.b, &other.b).max(m(&self.c, &other.c))
    }
}

#[derive(Serialize, Deserialize)]
struct StateVectorJson {
    isolated: Vec<[f64; 2]>,
    ladder: Vec<[f64; 2]>,
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |v: &[Complex64]| v.iter().map(|c| [c.re, c.im]).collect();
        StateVectorJson {
            isolated: pairs(&self.b),
            ladder: pairs(&self.c),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = StateVectorJson::deserialize(deserializer)?;
        let conv = |v: Vec<[f64; 2]>| v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect();
        Ok(Self {
            b: conv(j.isolated),
            c: conv(j.ladder),
        })
    }
}

/// Eigenstate of `L_k^-` with eigenvalue `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherentState {
    pub z: [f64; 2],
    pub r: f64,
    pub state: StateVector,
    /// `N(r)` from the closed `₀F_{2k}` form.
    pub normalization: f64,
    /// `N(r)` from direct summation of the squared coefficients.
    pub normalization_direct: f64,
    /// Upper bound on the discarded probability mass.
    pub tail: f64,
}

impl CoherentState {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.z[0], self.z[1])
    }
}

/// `ln Π_i Γ(n + 1/2 − ε_i) Γ(n + 3/2 − ε_i)`.
fn ln_gamma_products(epsilons: &[f64], n: f64) -> Result<f64> {
    let mut s = 0.0;
    for e in epsilons {
        s += log_gamma(n + 0.5 - e)?.ln_abs + log_gamma(n + 1.5 - e)?.ln_abs;
    }
    Ok(s)
}

/// Lower parameters `(1/2 − ε_i…, 3/2 − ε_i…)` of the normalization series.
pub fn normalization_denoms(spectrum: &SpectrumDescriptor) -> Vec<f64> {
    let e = spectrum.epsilons();
    e.iter().map(|e| 0.5 - e).chain(e.iter().map(|e| 1.5 - e)).collect()
}

/// Builds `|z⟩` with an adaptive ladder length.
pub fn coherent_state(spectrum: &SpectrumDescriptor, z: Complex64) -> Result<CoherentState> {
    let r = z.norm();
    if !(r <= R_MAX) {
        return Err(Error::InvalidArgument(format!("|z| = {r} exceeds {R_MAX}")));
    }
    let eps = spectrum.epsilons();
    let k = eps.len();
    let ln0 = ln_gamma_products(eps, 0.0)?;

    // ln |c_n/c_0|² = 2n ln r − ln n! − ln ΠΓΓ(n) + ln ΠΓΓ(0)
    let mut ln_w: Vec<f64> = vec![0.0];
    let mut tail = 0.0;
    if r > 0.0 {
        let ln_r2 = 2.0 * r.ln();
        let mut n = 1usize;
        loop {
            if n >= N_MAX_CAP {
                return Err(Error::Truncation {
                    tail: f64::NAN,
                    tol: TAIL_TOL,
                    n_max: N_MAX_CAP,
                });
            }
            let nf = n as f64;
            let lw = nf * ln_r2 - log_gamma(nf + 1.0)?.ln_abs - ln_gamma_products(eps, nf)? + ln0;
            ln_w.push(lw);
            // |c_{n+1}/c_n|² = r² / q(E_{n+1})
            let ratio = r * r / spectrum.q(spectrum.level(n + 1));
            let peak = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            if ratio < 0.5 {
                // geometric bound on the remaining mass, relative to the peak term
                let bound = (lw - peak).exp() * ratio / (1.0 - ratio);
                if bound < 1e-32 {
                    tail = bound;
                    break;
                }
            }
            n += 1;
        }
    }

    let peak = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = ln_w.iter().map(|lw| (lw - peak).exp()).sum();
    let ln_sum = peak + sum.ln();
    if tail >= TAIL_TOL {
        return Err(Error::Truncation {
            tail,
            tol: TAIL_TOL,
            n_max: ln_w.len() - 1,
        });
    }

    let theta = z.arg();
    let c: Vec<Complex64> = ln_w
        .iter()
        .enumerate()
        .map(|(n, lw)| Complex64::from_polar((0.5 * (lw - ln_sum)).exp(), n as f64 * theta))
        .collect();

    // N(r)² = ΠΓ(1/2−ε)Γ(3/2−ε) / ₀F_{2k}(…; r²)
    let closed = hyper_0fq(&normalization_denoms(spectrum), r * r)?.value;
    let normalization = (0.5 * (ln0 - closed.ln())).exp();
    let normalization_direct = (0.5 * (ln0 - ln_sum)).exp();
    let rel = (normalization - normalization_direct).abs() / normalization;
    if rel > 1e-10 {
        return Err(Error::Mismatch {
            what: "coherent-state normalization".into(),
            a: normalization,
            b: normalization_direct,
        });
    }

    Ok(CoherentState {
        z: [z.re, z.im],
        r,
        state: StateVector {
            b: vec![Complex64::new(0.0, 0.0); k],
            c,
        },
        normalization,
        normalization_direct,
        tail,
    })
}

/// `‖L_k^-|z⟩ − z|z⟩‖`.
pub fn eigenvalue_residual(spectrum: &SpectrumDescriptor, cs: &CoherentState) -> f64 {
    let lowered = ladder_action(spectrum, Direction::Down, &cs.state);
    lowered.distance(&cs.state.scaled(cs.z()))
}

/// `⟨ψ|H_k|ψ⟩ = Σ_j ε_j |b_j|² + Σ_n (n + 1/2) |c_n|²`.
pub fn energy_expectation(spectrum: &SpectrumDescriptor, state: &StateVector) -> f64 {
    let iso: f64 = spectrum
        .epsilons()
        .iter()
        .zip(&state.b)
        .map(|(e, b)| e * b.norm_sqr())
        .sum();
    let ladder: f64 = state
        .c
        .iter()
        .enumerate()
        .map(|(n, c)| spectrum.level(n) * c.norm_sqr())
        .sum();
    iso + ladder
}
