//! Seed solutions of the oscillator Schrödinger equation
//! `−u″/2 + (x²/2) u = ε u` for arbitrary `ε`:
//!
//! ```text
//! u(x; ε, ν) = e^{−x²/2} [ ₁F₁((1−2ε)/4, 1/2; x²)
//!              + 2νx Γ((3−2ε)/4)/Γ((1−2ε)/4) ₁F₁((3−2ε)/4, 3/2; x²) ]
//! ```
//!
//! normalized so that `u(0) = 1`. The first derivative is taken term by term
//! in closed form; higher derivatives follow from `u″ = (x² − 2ε) u`
//! expanded with the Leibniz rule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use twofloat::TwoFloat;

use crate::specfun::{is_nonpositive_integer, kummer_1f1_dd, log_gamma};

/// Largest derivative order [`eval_seed`] will produce.
pub const MAX_DERIV: usize = 12;


/// `|u|` below this is treated as a node.
pub const NODE_THRESHOLD: f64 = 1e-280;

/// Factorization energy `ε` and asymmetry parameter `ν` of one seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub epsilon: f64,
    pub nu: f64,
}

impl SeedSpec {
    pub fn new(epsilon: f64, nu: f64) -> Self {
        Self { epsilon, nu }
    }

    fn even_param(&self) -> f64 {
        (1.0 - 2.0 * self.epsilon) / 4.0
    }

    fn odd_param(&self) -> f64 {
        (3.0 - 2.0 * self.epsilon) / 4.0
    }

    /// `u′(0) = 2ν Γ((3−2ε)/4) / Γ((1−2ε)/4)`.
    ///
    /// Zero when `Γ((1−2ε)/4)` has a pole (terminating even solutions) or
    /// when `ν = 0`.
    pub fn odd_coefficient(&self) -> Result<f64> {
        if self.nu == 0.0 || is_nonpositive_integer(self.even_param()) {
            return Ok(0.0);
        }
        let odd = self.odd_param();
        if is_nonpositive_integer(odd) {
            return Err(Error::GammaPole { arg: odd });
        }
        let num = log_gamma(odd)?;
        let den = log_gamma(self.even_param())?;
        Ok(2.0 * self.nu * num.sign * den.sign * (num.ln_abs - den.ln_abs).exp())
    }
}

/// Value and derivatives of a seed at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedEval {
    pub x: f64,
    pub u: f64,
    /// `u′, u″, …, u^{(d)}`.
    pub derivatives: Vec<f64>,
}

impl SeedEval {
    /// `u^{(order)}`, with order 0 being `u` itself.
    pub fn deriv(&self, order: usize) -> f64 {
        if order == 0 {
            self.u
        } else {
            self.derivatives[order - 1]
        }
    }
}

/// Evaluates `u, u′, …, u^{(max_deriv)}` at `x`.
pub fn eval_seed(spec: SeedSpec, x: f64, max_deriv: usize) -> Result<SeedEval> {
    let mut d: Vec<f64> = seed_derivatives_dd(spec, x, max_deriv)?
        .into_iter()
        .map(f64::from)
        .collect();
    let u = d.remove(0);
    Ok(SeedEval {
        x,
        u,
        derivatives: d,
    })
}

/// `u, u′, …, u^{(max_deriv)}` in double-double precision.
pub(crate) fn seed_derivatives_dd(
    spec: SeedSpec,
    x: f64,
    max_deriv: usize,
) -> Result<Vec<TwoFloat>> {
    if max_deriv == 0 || max_deriv > MAX_DERIV {
        return Err(Error::InvalidArgument(format!(
            "derivative order {max_deriv} outside 1..={MAX_DERIV}"
        )));
    }
    let c = spec.odd_coefficient()?;
    let y = TwoFloat::new_mul(x, x);
    let xd = TwoFloat::from(x);
    let one = TwoFloat::from(1.0);
    let (a1, b1) = (TwoFloat::new_sub(1.0, 2.0 * spec.epsilon) / 4.0, 0.5);
    let f1 = kummer_1f1_dd(a1, b1.into(), y)?;
    let f1y = a1 / b1 * kummer_1f1_dd(a1 + one, (b1 + 1.0).into(), y)?;
    let (f2, f2y) = if c == 0.0 {
        (TwoFloat::from(0.0), TwoFloat::from(0.0))
    } else {
        let (a2, b2) = (TwoFloat::new_sub(3.0, 2.0 * spec.epsilon) / 4.0, 1.5);
        let f2 = kummer_1f1_dd(a2, b2.into(), y)?;
        (f2, a2 / b2 * kummer_1f1_dd(a2 + one, (b2 + 1.0).into(), y)?)
    };

    // Bracket s(y) and its x-derivative; u = e^{−y/2} s, u′ = e^{−y/2}(s′ − x s).
    // The Gaussian is a common factor of every entry, so plain f64 suffices.
    let s = f1 + c * xd * f2;
    let ds = 2.0 * xd * f1y + c * (f2 + 2.0 * y * f2y);
    let gauss = (-0.5 * x * x).exp();

    let mut d = Vec::with_capacity(max_deriv + 1);
    d.push(s * gauss);
    d.push((ds - xd * s) * gauss);
    let well = y - 2.0 * spec.epsilon;
    for m in 0..max_deriv - 1 {
        // u^{(m+2)} = (x² − 2ε) u^{(m)} + 2m x u^{(m−1)} + m(m−1) u^{(m−2)}
        let mf = m as f64;
        let mut next = well * d[m];
        if m >= 1 {
            next += 2.0 * mf * xd * d[m - 1];
        }
        if m >= 2 {
            next += mf * (mf - 1.0) * d[m - 2];
        }
        d.push(next);
    }
    Ok(d)
}

/// Logarithmic derivative `α₁ = u′/u`, a solution of `α′ + α² = x² − 2ε`.
pub fn alpha1(spec: SeedSpec, x: f64) -> Result<f64> {
    let e = eval_seed(spec, x, 1)?;
    if e.u.abs() < NODE_THRESHOLD {
        return Err(Error::SeedNode {
            x,
            magnitude: e.u.abs(),
        });
    }
    Ok(e.derivatives[0] / e.u)
}

/// Normalized oscillator eigenfunction `ψₙ(x)` of `H₀ = −½ d²/dx² + x²/2`.
pub fn oscillator_eigenfunction(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    for j in 0..n {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Classic RK4 on u″ = (x² − 2ε) u from x = 0.
    fn rk4_oracle(spec: SeedSpec, u0: f64, du0: f64, x_end: f64, steps: usize) -> (f64, f64) {
        let h = x_end / steps as f64;
        let f = |x: f64, u: f64, v: f64| (v, (x * x - 2.0 * spec.epsilon) * u);
        let (mut x, mut u, mut v) = (0.0, u0, du0);
        for _ in 0..steps {
            let k1 = f(x, u, v);
            let k2 = f(x + h / 2.0, u + h / 2.0 * k1.0, v + h / 2.0 * k1.1);
            let k3 = f(x + h / 2.0, u + h / 2.0 * k2.0, v + h / 2.0 * k2.1);
            let k4 = f(x + h, u + h * k3.0, v + h * k3.1);
            u += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            v += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            x += h;
        }
        (u, v)
    }

    #[test]
    fn ground_state_seed() {
        let spec = SeedSpec::new(0.5, 0.0);
        for x in [-3.0, -0.4, 0.0, 1.1, 5.0] {
            let e = eval_seed(spec, x, 2).unwrap();
            assert_relative_eq!(e.u, (-x * x / 2.0).exp(), max_relative = 1e-14);
            assert_relative_eq!(alpha1(spec, x).unwrap(), -x, epsilon = 1e-13);
        }
        // Pole of Γ((1−2ε)/4) ⇒ ν-term suppressed even for ν ≠ 0.
        assert_eq!(SeedSpec::new(0.5, 3.0).odd_coefficient().unwrap(), 0.0);
    }

    #[test]
    fn inverted_ground_state_seed() {
        let spec = SeedSpec::new(-0.5, 0.0);
        assert_relative_eq!(eval_seed(spec, 1.0, 1).unwrap().u, 0.5_f64.exp(), max_relative = 1e-14);
        for x in [-2.0, 0.3, 7.5] {
            assert_relative_eq!(alpha1(spec, x).unwrap(), x, max_relative = 1e-13);
        }
    }

    #[test]
    fn odd_pole_is_an_error_only_with_nu() {
        // (3 − 2ε)/4 = 0 at ε = 3/2 (first odd eigenstate).
        assert!(matches!(
            SeedSpec::new(1.5, 1.0).odd_coefficient(),
            Err(Error::GammaPole { .. })
        ));
        assert_eq!(SeedSpec::new(1.5, 0.0).odd_coefficient().unwrap(), 0.0);
    }

    #[test]
    fn matches_runge_kutta_oracle() {
        let spec = SeedSpec::new(-1.0, 0.0);
        let (u_rk, du_rk) = rk4_oracle(spec, 1.0, 0.0, 0.7, 7000);
        let e = eval_seed(spec, 0.7, 1).unwrap();
        assert_relative_eq!(e.u, u_rk, max_relative = 1e-11);
        assert_relative_eq!(e.derivatives[0], du_rk, max_relative = 1e-11);
        // 50-digit reference
        assert_relative_eq!(e.u, 1.5562881985431425522610, max_relative = 1e-13);

        let (u_rk, du_rk) = rk4_oracle(spec, 1.0, 0.0, 1.3, 13_000);
        assert_relative_eq!(alpha1(spec, 1.3).unwrap(), du_rk / u_rk, max_relative = 1e-10);
        assert_relative_eq!(
            alpha1(spec, 1.3).unwrap(),
            1.7027405538484199211461,
            max_relative = 1e-13
        );

        let spec = SeedSpec::new(-1.2, 2.0);
        let c = spec.odd_coefficient().unwrap();
        let (u_rk, _) = rk4_oracle(spec, 1.0, c, -0.9, 9000);
        let e = eval_seed(spec, -0.9, 1).unwrap();
        assert_relative_eq!(e.u, u_rk, max_relative = 1e-10);
        assert_relative_eq!(e.u, -1.8060105218963199756, max_relative = 1e-13);
    }

    #[test]
    fn derivative_order_bounds() {
        let spec = SeedSpec::new(-1.0, 0.3);
        assert!(eval_seed(spec, 0.0, 0).is_err());
        assert!(eval_seed(spec, 0.0, 13).is_err());
        assert_eq!(eval_seed(spec, 0.2, 12).unwrap().derivatives.len(), 12);
    }

    #[test]
    fn higher_derivatives_match_finite_differences() {
        let spec = SeedSpec::new(-0.7, 0.4);
        let x = 0.9;
        let h = 1e-4;
        let e0 = eval_seed(spec, x, 6).unwrap();
        let ep = eval_seed(spec, x + h, 6).unwrap();
        let em = eval_seed(spec, x - h, 6).unwrap();
        for m in 1..6 {
            let fd = (ep.deriv(m - 1) - em.deriv(m - 1)) / (2.0 * h);
            assert_relative_eq!(fd, e0.deriv(m), max_relative = 1e-6);
        }
    }

    #[test]
    fn oscillator_eigenfunctions_are_orthonormal() {
        let h = 0.01;
        let xs: Vec<f64> = (0..2401).map(|i| -12.0 + i as f64 * h).collect();
        for n in 0..4 {
            for m in 0..4 {
                let s: f64 = xs
                    .iter()
                    .map(|&x| oscillator_eigenfunction(n, x) * oscillator_eigenfunction(m, x))
                    .sum::<f64>()
                    * h;
                let expected = if n == m { 1.0 } else { 0.0 };
                assert!((s - expected).abs() < 1e-10, "<{n}|{m}> = {s}");
            }
        }
    }

    fn arb_spec() -> impl Strategy<Value = SeedSpec> {
        (-3.0f64..0.45, -3.0f64..3.0).prop_map(|(e, n)| SeedSpec::new(e, n))
    }

    proptest! {
        #[test]
        fn riccati_identity(spec in arb_spec(), x in -6.0f64..6.0) {
            let e = eval_seed(spec, x, 2).unwrap();
            prop_assume!(e.u.abs() > 1e-6);
            let a = e.derivatives[0] / e.u;
            let da = e.derivatives[1] / e.u - a * a;
            let rhs = x * x - 2.0 * spec.epsilon;
            prop_assert!((da + a * a - rhs).abs() <= 1e-8 * rhs.abs().max(1.0));
        }

        #[test]
        fn schrodinger_consistency(spec in arb_spec(), x in -10.0f64..10.0) {
            let e = eval_seed(spec, x, 2).unwrap();
            let expected = 2.0 * (x * x / 2.0 - spec.epsilon) * e.u;
            prop_assert!((e.derivatives[1] - expected).abs() <= 1e-9 * expected.abs().max(f64::MIN_POSITIVE));
        }

        #[test]
        fn parity(eps in -3.0f64..0.45, nu in -3.0f64..3.0, x in -8.0f64..8.0) {
            let even = SeedSpec::new(eps, 0.0);
            let a = eval_seed(even, x, 1).unwrap().u;
            let b = eval_seed(even, -x, 1).unwrap().u;
            prop_assert!((a - b).abs() <= 1e-13 * a.abs());
            let p = eval_seed(SeedSpec::new(eps, nu), x, 1).unwrap().u;
            let q = eval_seed(SeedSpec::new(eps, -nu), -x, 1).unwrap().u;
            prop_assert!((p - q).abs() <= 1e-12 * p.abs().max(1.0));
        }

        #[test]
        fn initial_data(spec in arb_spec()) {
            let e = eval_seed(spec, 0.0, 1).unwrap();
            prop_assert_eq!(e.u, 1.0);
            prop_assert_eq!(e.derivatives[0], spec.odd_coefficient().unwrap());
        }
    }
}
