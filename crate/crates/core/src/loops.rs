//! Evolution loops of `U(t) = e^{−iH_k t}` and the Aharonov–Anandan phases of
//! the states they make cyclic.
//!
//! Every `H_k` has a partial loop: `U(2π) = −1` on the span of the infinite
//! ladder. When all factorization energies are rational,
//! `ε_j = 1/2 − l_j/m_j`, the loop is global with period `τ = 2Mπ`,
//! `M = lcm{m_j}`, and `U(τ) = e^{−iMπ}`.
//!
//! For a cyclic state with `|ψ(τ)⟩ = e^{iφ}|ψ(0)⟩` the geometric phase is
//! `β = φ + τ⟨H⟩`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::algebra::SpectrumDescriptor;
use crate::error::{Error, Result};
use crate::specfun::hyper_0fq;
use crate::states::{coherent_state, energy_expectation, StateVector};

/// Tolerance for comparing declared rationals with stored energies.
pub const RATIONAL_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoopKind {
    None,
    Partial,
    Global,
}

/// Detected loop: `U(τ) = e^{iφ}` on the loop subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopReport {
    pub kind: LoopKind,
    pub tau: f64,
    /// Overall phase reduced to `(−π, π]`.
    pub phi: f64,
    /// Unreduced phase `−Mπ`.
    pub phi_raw: f64,
    /// Coprime `(l_j, m_j)` with `ε_j = 1/2 − l_j/m_j`, when declared.
    pub rationals: Option<Vec<(i64, i64)>>,
    /// `M = lcm{m_j}` for global loops.
    pub lcm: Option<i64>,
}

/// `−Mπ` reduced to `(−π, π]`, decided by the parity of `M`.
fn reduced_phase(m: i64) -> f64 {
    if m.is_odd() {
        PI
    } else {
        0.0
    }
}

impl LoopReport {
    /// The loop every partner has: `τ = 2π`, `φ = −π`, on the infinite ladder.
    pub fn partial() -> Self {
        Self {
            kind: LoopKind::Partial,
            tau: 2.0 * PI,
            phi: reduced_phase(1),
            phi_raw: -PI,
            rationals: None,
            lcm: None,
        }
    }

    /// `e^{iφ}`.
    pub fn phase_factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phi)
    }
}

/// Reads `(l, m)` with `l/m = 1/2 − ε` in lowest terms.
pub fn loop_rational(epsilon: Ratio<i64>) -> Result<(i64, i64)> {
    let lm = Ratio::new(1, 2) - epsilon;
    if *lm.numer() <= 0 {
        return Err(Error::InvalidArgument(format!(
            "ε = {epsilon} is not below 1/2"
        )));
    }
    Ok((*lm.numer(), *lm.denom()))
}

/// Reports the partial loop, and the global loop when exact rationals for
/// every `ε_j` are supplied (chain order).
pub fn detect_loops(spectrum: &SpectrumDescriptor, rational_eps: Option<&[Ratio<i64>]>) -> Result<LoopReport> {
    let Some(rats) = rational_eps else {
        return Ok(LoopReport::partial());
    };
    if rats.len() != spectrum.order() {
        return Err(Error::InvalidArgument(format!(
            "{} rationals for {} isolated levels",
            rats.len(),
            spectrum.order()
        )));
    }
    let mut pairs = Vec::with_capacity(rats.len());
    for (i, (r, e)) in rats.iter().zip(spectrum.epsilons()).enumerate() {
        let rf = r.to_f64().unwrap_or(f64::NAN);
        if !((rf - e).abs() <= RATIONAL_MATCH_TOL) {
            return Err(Error::RationalMismatch {
                index: i + 1,
                rational: r.to_string(),
                stored: *e,
            });
        }
        pairs.push(loop_rational(*r)?);
    }
    let m = pairs.iter().fold(1i64, |acc, (_, m)| acc.lcm(m));
    Ok(LoopReport {
        kind: LoopKind::Global,
        tau: 2.0 * PI * m as f64,
        phi: reduced_phase(m),
        phi_raw: -PI * m as f64,
        rationals: Some(pairs),
        lcm: Some(m),
    })
}

/// `U(t)|ψ⟩`: `b_j ↦ e^{−iε_j t} b_j`, `c_n ↦ e^{−i(n+1/2)t} c_n`.
pub fn evolve(spectrum: &SpectrumDescriptor, state: &StateVector, t: f64) -> StateVector {
    StateVector {
        b: state
            .b
            .iter()
            .zip(spectrum.epsilons())
            .map(|(b, e)| b * Complex64::from_polar(1.0, -e * t))
            .collect(),
        c: state
            .c
            .iter()
            .enumerate()
            .map(|(n, c)| c * Complex64::from_polar(1.0, -spectrum.level(n) * t))
            .collect(),
    }
}

/// Geometric phase of a cyclic evolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    pub beta: f64,
    /// `β` reduced to `[0, 2π)`.
    pub beta_mod: f64,
    /// Total (unreduced) phase acquired over one period.
    pub phi: f64,
    /// Dynamical contribution `−τ⟨H⟩`.
    pub dynamical: f64,
}

impl PhaseResult {
    fn new(beta: f64, phi: f64, dynamical: f64) -> Self {
        Self {
            beta,
            beta_mod: beta.rem_euclid(2.0 * PI),
            phi,
            dynamical,
        }
    }
}

/// Normalization tolerance for states entering phase computations.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// `β` of a cyclic state under `lp`, computed from the closed formula
/// (`2π Σ n|c_n|²` for partial loops, `2Mπ(Σ n|c_n|² − Σ l_j/m_j |b_j|²)` for
/// global ones) and checked against `φ + τ⟨H⟩`.
pub fn geometric_phase_state(
    spectrum: &SpectrumDescriptor,
    state: &StateVector,
    lp: &LoopReport,
) -> Result<PhaseResult> {
    let norm_sq = state.norm_sq();
    if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let ladder_moment: f64 = state
        .c
        .iter()
        .enumerate()
        .map(|(n, c)| n as f64 * c.norm_sqr())
        .sum();
    let beta = match lp.kind {
        LoopKind::None => {
            return Err(Error::InvalidArgument("no loop to evaluate a phase on".into()));
        }
        LoopKind::Partial => {
            let w = state.isolated_weight();
            if w > 0.0 {
                return Err(Error::NotCyclic { weight: w });
            }
            lp.tau * ladder_moment
        }
        LoopKind::Global => {
            let pairs = lp
                .rationals
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("global loop without rationals".into()))?;
            let iso: f64 = pairs
                .iter()
                .zip(&state.b)
                .map(|((l, m), b)| *l as f64 / *m as f64 * b.norm_sqr())
                .sum();
            lp.tau * (ladder_moment - iso)
        }
    };
    let energy = energy_expectation(spectrum, state);
    let dynamical = -lp.tau * energy;
    let first_principles = lp.phi_raw - dynamical;
    let scale = 1f64.max(lp.phi_raw.abs() + dynamical.abs());
    if (first_principles - beta).abs() > 1e-12 * scale {
        return Err(Error::Mismatch {
            what: "geometric phase (formula vs φ + τ⟨H⟩)".into(),
            a: beta,
            b: first_principles,
        });
    }
    Ok(PhaseResult::new(beta, lp.phi_raw, dynamical))
}

/// Ingredients of the closed-form coherent-state phase
/// `β = prefactor · π r² · ₀F_{2k}(upper; r²) / ₀F_{2k}(lower; r²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentPhaseFormula<T> {
    /// `2 / Π_i (1/2 − ε_i)(3/2 − ε_i)`.
    pub prefactor: T,
    /// `(3/2 − ε_i…, 5/2 − ε_i…)`.
    pub upper: Vec<T>,
    /// `(1/2 − ε_i…, 3/2 − ε_i…)`.
    pub lower: Vec<T>,
}

/// Assembles [`CoherentPhaseFormula`] in any numeric field (floats or exact rationals).
pub fn coherent_phase_formula<T: Clone + Num>(epsilons: &[T]) -> CoherentPhaseFormula<T> {
    let one = T::one();
    let two = one.clone() + one.clone();
    let half = one.clone() / two.clone();
    let shifted = |s: T| -> Vec<T> { epsilons.iter().map(|e| s.clone() - e.clone()).collect() };
    let h1 = half.clone();
    let h3 = half.clone() + one.clone();
    let h5 = h3.clone() + one.clone();
    let denom = epsilons.iter().fold(one.clone(), |acc, e| {
        acc * (h1.clone() - e.clone()) * (h3.clone() - e.clone())
    });
    let mut upper = shifted(h3.clone());
    upper.extend(shifted(h5));
    let mut lower = shifted(h1);
    lower.extend(shifted(h3));
    CoherentPhaseFormula {
        prefactor: two / denom,
        upper,
        lower,
    }
}

/// Closed-form `β(r)` of the nonlinear coherent states.
pub fn coherent_phase_closed_form(spectrum: &SpectrumDescriptor, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::InvalidArgument(format!("r = {r} must be non-negative")));
    }
    let f = coherent_phase_formula(spectrum.epsilons());
    let y = r * r;
    let upper = hyper_0fq(&f.upper, y)?.value;
    let lower = hyper_0fq(&f.lower, y)?.value;
    Ok(f.prefactor * PI * y * upper / lower)
}

/// `β(r)` as `2π Σ n|c_n|²` over the coefficients of `|z = r⟩`.
pub fn coherent_phase_sum(spectrum: &SpectrumDescriptor, r: f64) -> Result<PhaseResult> {
    let cs = coherent_state(spectrum, Complex64::new(r, 0.0))?;
    geometric_phase_state(spectrum, &cs.state, &LoopReport::partial())
}

/// Relative agreement required between the two coherent-phase routes.
pub const COHERENT_PHASE_TOL: f64 = 1e-9;

/// Coherent-state phase from the closed form, verified against the coefficient sum.
pub fn geometric_phase_coherent(spectrum: &SpectrumDescriptor, r: f64) -> Result<PhaseResult> {
    let closed = coherent_phase_closed_form(spectrum, r)?;
    let sum = coherent_phase_sum(spectrum, r)?;
    if (closed - sum.beta).abs() > COHERENT_PHASE_TOL * closed.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Mismatch {
            what: format!("coherent-state phase at r = {r}"),
            a: closed,
            b: sum.beta,
        });
    }
    Ok(PhaseResult::new(closed, sum.phi, sum.dynamical))
}
