//! Polynomial Heisenberg algebra of the oscillator SUSY partners.
//!
//! The natural ladder operators `L_k^± = B_k^+ a^± B_k` satisfy
//! `[H_k, L_k^±] = ±L_k^±` and
//!
//! ```text
//! L_k^+ L_k^- = q(H_k) = (H_k − 1/2) Π_i (H_k − ε_i − 1)(H_k − ε_i)
//! [L_k^-, L_k^+] = p(H_k) = q(H_k + 1) − q(H_k)
//! ```
//!
//! The spectrum splits into `k` one-step ladders (the isolated levels `ε_j`,
//! annihilated by both operators) and one infinite ladder `n + 1/2`.
//! Everything here acts algebraically on the `H_k` eigenbasis; matrix
//! elements of `L_k^-` are taken real and non-negative, `√q(E_n)`.

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::states::StateVector;

/// `Sp(H_k) = {ε_k, …, ε₁} ∪ {n + 1/2 : n ≥ 0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDescriptor {
    /// Chain order `ε₁ > ε₂ > … > ε_k`; `b_j` of a [`StateVector`] refers to `epsilons[j]`.
    epsilons: Vec<f64>,
}

impl SpectrumDescriptor {
    pub fn new(epsilons: Vec<f64>) -> Result<Self> {
        if let Some(e) = epsilons.iter().find(|e| !e.is_finite() || **e >= 0.5) {
            return Err(Error::InvalidArgument(format!(
                "isolated level {e} must be finite and below 1/2"
            )));
        }
        if epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "isolated levels must be given strictly decreasing (ε₁ > ε₂ > …)".into(),
            ));
        }
        Ok(Self { epsilons })
    }

    /// The plain oscillator, `k = 0`.
    pub fn oscillator() -> Self {
        Self { epsilons: vec![] }
    }

    pub fn order(&self) -> usize {
        self.epsilons.len()
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    /// `(ε_k, …, ε₁)`, strictly increasing.
    pub fn isolated_ascending(&self) -> Vec<f64> {
        self.epsilons.iter().rev().copied().collect()
    }

    pub const LADDER_BASE: f64 = 0.5;

    /// Energy of the `n`-th level of the infinite ladder.
    pub fn level(&self, n: usize) -> f64 {
        n as f64 + Self::LADDER_BASE
    }

    pub fn ladder_count(&self) -> usize {
        self.order() + 1
    }

    /// The `count` lowest levels in increasing order.
    pub fn lowest_levels(&self, count: usize) -> Vec<f64> {
        let mut levels = self.isolated_ascending();
        let mut n = 0;
        while levels.len() < count {
            levels.push(self.level(n));
            n += 1;
        }
        levels.truncate(count);
        levels
    }

    /// `q(E)` evaluated from its root product.
    pub fn q(&self, energy: f64) -> f64 {
        self.epsilons
            .iter()
            .fold(energy - 0.5, |acc, e| acc * (energy - e - 1.0) * (energy - e))
    }
}

/// Dense polynomial, coefficients in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial<T> {
    pub coeffs: Vec<T>,
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn from_roots(roots: &[T]) -> Self {
        let mut coeffs = vec![T::one()];
        for r in roots {
            // multiply by (E − r)
            let mut next = vec![T::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() - c.clone() * r.clone();
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, x: T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `E ↦ q(E + 1)`, via repeated synthetic division (Taylor shift).
    pub fn shift_by_one(&self) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                c[j] = c[j].clone() + c[j + 1].clone();
            }
        }
        Self { coeffs: c }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs: Vec<T> = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(T::zero);
                a - b
            })
            .collect();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }
}

/// `q` of degree `2k + 1` and `p(E) = q(E + 1) − q(E)` of degree `2k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LadderPolynomials<T> {
    pub q: Polynomial<T>,
    pub p: Polynomial<T>,
}

fn ladder_roots<T: Clone + Num>(epsilons: &[T]) -> Vec<T> {
    let one = T::one();
    let half = one.clone() / (one.clone() + one.clone());
    let mut roots = vec![half];
    for e in epsilons {
        roots.push(e.clone() + one.clone());
        roots.push(e.clone());
    }
    roots
}

fn ladder_polynomials<T: Clone + Num>(epsilons: &[T]) -> LadderPolynomials<T> {
    let q = Polynomial::from_roots(&ladder_roots(epsilons));
    let p = q.shift_by_one().sub(&q);
    LadderPolynomials { q, p }
}

/// Expands `q` from its roots `{1/2} ∪ {ε_i + 1} ∪ {ε_i}` and derives `p`.
pub fn build_polynomials(spectrum: &SpectrumDescriptor) -> LadderPolynomials<f64> {
    ladder_polynomials(spectrum.epsilons())
}

/// Exact-rational counterpart of [`build_polynomials`].
pub fn build_polynomials_exact(epsilons: &[Ratio<i64>]) -> LadderPolynomials<Ratio<i128>> {
    let wide: Vec<Ratio<i128>> = epsilons
        .iter()
        .map(|r| Ratio::new(*r.numer() as i128, *r.denom() as i128))
        .collect();
    ladder_polynomials(&wide)
}

impl<T> LadderPolynomials<T>
where
    T: Clone + Num + Signed,
    Ratio<i128>: From<T>,
{
    /// JSON with exact coefficient pairs `[numerator, denominator]`.
    pub fn to_exact_json(&self) -> serde_json::Value {
        let pairs = |p: &Polynomial<T>| -> Vec<[String; 2]> {
            p.coeffs
                .iter()
                .map(|c| {
                    let r: Ratio<i128> = c.clone().into();
                    [r.numer().to_string(), r.denom().to_string()]
                })
                .collect()
        };
        serde_json::json!({ "q": pairs(&self.q), "p": pairs(&self.p) })
    }
}

impl LadderPolynomials<Ratio<i128>> {
    pub fn to_f64(&self) -> LadderPolynomials<f64> {
        let conv = |p: &Polynomial<Ratio<i128>>| Polynomial {
            coeffs: p.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect(),
        };
        LadderPolynomials {
            q: conv(&self.q),
            p: conv(&self.p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// Action of `L_k^+` (`Up`) or `L_k^-` (`Down`) in the `H_k` eigenbasis.
///
/// Isolated levels are annihilated in both directions. On the infinite
/// ladder `L⁻|n⟩ = √q(E_n)|n−1⟩` and `L⁺|n⟩ = √q(E_n + 1)|n+1⟩`; the `Up`
/// result is one level longer than its input.
pub fn ladder_action(spectrum: &SpectrumDescriptor, direction: Direction, state: &StateVector) -> StateVector {
    let b = vec![Complex64::new(0.0, 0.0); state.b.len()];
    let len = state.c.len();
    let c = match direction {
        Direction::Down => {
            let mut out = vec![Complex64::new(0.0, 0.0); len];
            for n in 1..len {
                out[n - 1] = state.c[n] * spectrum.q(spectrum.level(n)).max(0.0).sqrt();
            }
            out
        }
        Direction::Up => {
            let mut out = vec![Complex64::new(0.0, 0.0); len + 1];
            for n in 0..len {
                out[n + 1] = state.c[n] * spectrum.q(spectrum.level(n) + 1.0).max(0.0).sqrt();
            }
            out
        }
    };
    StateVector { b, c }
}
