//! k-th order SUSY partners of the oscillator.
//!
//! The partner potential is built along two independent routes which serve
//! as oracles for each other:
//!
//! - the Wronskian formula `V_k = x²/2 − {ln W(u₁, …, u_k)}″`, with `W`, `W′`
//!   and `W″` assembled from closed-form seed derivatives;
//! - the iterated Riccati chain, where each `α_i(x, ε_i)` comes from the
//!   finite-difference (Bäcklund) formula applied to level `i − 1` and
//!   `V_i = V_{i−1} − α_i′`.
//!
//! The chain also applies the intertwiner `B_k^+ = A_k^+ ⋯ A_1^+` to grid
//! functions, `A_i^+ = (−d/dx + α_i)/√2`.
//!
//! Far from the origin every seed log-derivative approaches `x` and the
//! chain depends on differences of order `Δε/x`, so both routes run in
//! double-double arithmetic and round to `f64` only at the end.

use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::dd;
use crate::error::{Error, Result};
use crate::seed::{seed_derivatives_dd, SeedSpec};

/// Formats a value with 17 significant digits.
pub fn format_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Uniform grid on `[x_min, x_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            x_min: -12.0,
            x_max: 12.0,
            n_points: 2401,
        }
    }
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        let g = Self {
            x_min,
            x_max,
            n_points,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_points < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 points, got {}",
                self.n_points
            )));
        }
        if !(self.x_max > self.x_min) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "bad interval [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }
}

/// Ordered seeds on a grid.
///
/// Seeds are stored in chain order `ε₁ > ε₂ > … > ε_k`, all below `1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyChain {
    seeds: Vec<SeedSpec>,
    grid: Grid,
    window_violations: Vec<usize>,
}

impl SusyChain {
    /// Validates ordering and the alternating `ν` windows
    /// (`|ν₁| < 1, |ν₂| > 1, |ν₃| < 1, …`).
    ///
    /// Window violations only produce a warning; the Wronskian node scan
    /// decides whether the transformation is singular.
    pub fn new(seeds: Vec<SeedSpec>, grid: Grid) -> Result<Self> {
        grid.validate()?;
        for (i, s) in seeds.iter().enumerate() {
            if !s.epsilon.is_finite() || !s.nu.is_finite() {
                return Err(Error::InvalidChain(format!("seed {} is not finite", i + 1)));
            }
            if s.epsilon >= 0.5 {
                return Err(Error::InvalidChain(format!(
                    "ε_{} = {} must lie below the ground level 1/2",
                    i + 1,
                    s.epsilon
                )));
            }
        }
        for (i, w) in seeds.windows(2).enumerate() {
            if w[1].epsilon >= w[0].epsilon {
                return Err(Error::InvalidChain(format!(
                    "factorization energies must strictly decrease: ε_{} = {} , ε_{} = {}",
                    i + 1,
                    w[0].epsilon,
                    i + 2,
                    w[1].epsilon
                )));
            }
        }
        let window_violations: Vec<usize> = seeds
            .iter()
            .enumerate()
            .filter(|(i, s)| {
                if i % 2 == 0 {
                    s.nu.abs() >= 1.0
                } else {
                    s.nu.abs() <= 1.0
                }
            })
            .map(|(i, _)| i + 1)
            .collect();
        for i in &window_violations {
            log::warn!(
                "seed {i} (ν = {}) is outside its non-singularity window; relying on the Wronskian node scan",
                seeds[i - 1].nu
            );
        }
        Ok(Self {
            seeds,
            grid,
            window_violations,
        })
    }

    pub fn seeds(&self) -> &[SeedSpec] {
        &self.seeds
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn order(&self) -> usize {
        self.seeds.len()
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.seeds.iter().map(|s| s.epsilon).collect()
    }

    /// 1-based indices of seeds outside their `ν` window.
    pub fn window_violations(&self) -> &[usize] {
        &self.window_violations
    }
}

/// Tabulated potential.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialTable {
    pub grid: Grid,
    pub v: Vec<f64>,
    pub order: usize,
}

impl PotentialTable {
    /// CSV with header `x,v`, 17 significant digits, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,v\n");
        for (i, v) in self.v.iter().enumerate() {
            out.push_str(&format_sig17(self.grid.x(i)));
            out.push(',');
            out.push_str(&format_sig17(*v));
            out.push('\n');
        }
        out
    }

    pub fn sup_distance(&self, other: &PotentialTable) -> f64 {
        self.v
            .iter()
            .zip(&other.v)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Wronskian and its first two derivatives on a grid.
///
/// Stored values are scaled: the true Wronskian is `w[i] · exp(ln_scale[i])`
/// and likewise for `dw`, `d2w`.
#[derive(Debug, Clone, PartialEq)]
pub struct WronskianTable {
    pub grid: Grid,
    pub w: Vec<f64>,
    pub dw: Vec<f64>,
    pub d2w: Vec<f64>,
    pub ln_scale: Vec<f64>,
}

/// Scaled Wronskian data at one point, see [`WronskianTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WronskianPoint {
    pub w: f64,
    pub dw: f64,
    pub d2w: f64,
    pub ln_scale: f64,
}

impl WronskianPoint {
    pub fn unscaled(&self) -> (f64, f64, f64) {
        let s = self.ln_scale.exp();
        (self.w * s, self.dw * s, self.d2w * s)
    }
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(mut m: Vec<Vec<TwoFloat>>) -> TwoFloat {
    let n = m.len();
    let mut det = TwoFloat::from(1.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].hi().abs().total_cmp(&m[b][col].hi().abs()))
            .unwrap_or(col);
        if m[pivot][col].hi() == 0.0 {
            return TwoFloat::from(0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = dd::div(m[row][col], m[col][col]);
            if f.hi() != 0.0 {
                for c in col..n {
                    let v = m[col][c];
                    m[row][c] -= f * v;
                }
            }
        }
    }
    det
}

/// Scaled `W`, `W′`, `W″` in double-double precision.
struct PointDd {
    w: TwoFloat,
    dw: TwoFloat,
    d2w: TwoFloat,
    ln_scale: f64,
}

impl PointDd {
    fn rounded(&self) -> WronskianPoint {
        WronskianPoint {
            w: self.w.into(),
            dw: self.dw.into(),
            d2w: self.d2w.into(),
            ln_scale: self.ln_scale,
        }
    }
}

/// `derivs[j][m]` is the `m`-th derivative of seed `j`, orders `0..=k+1`.
fn wronskian_from_derivs(derivs: &[Vec<TwoFloat>]) -> PointDd {
    let k = derivs.len();
    let one = TwoFloat::from(1.0);
    if k == 0 {
        return PointDd {
            w: one,
            dw: TwoFloat::from(0.0),
            d2w: TwoFloat::from(0.0),
            ln_scale: 0.0,
        };
    }
    let max_abs = |vals: &mut dyn Iterator<Item = TwoFloat>| {
        let s = vals.map(|v| v.hi().abs()).fold(0.0, f64::max);
        if s > 0.0 {
            s
        } else {
            1.0
        }
    };
    // rows: derivative orders 0..=k+1, columns: seeds
    let mut table: Vec<Vec<TwoFloat>> = (0..k + 2)
        .map(|m| derivs.iter().map(|d| d[m]).collect())
        .collect();
    let mut ln_scale = 0.0;
    for j in 0..k {
        let s = max_abs(&mut table.iter().map(|row| row[j]));
        for row in table.iter_mut() {
            row[j] /= s;
        }
        ln_scale += s.ln();
    }
    let row_scale: Vec<f64> = table
        .iter_mut()
        .map(|row| {
            let s = max_abs(&mut row.iter().copied());
            for v in row.iter_mut() {
                *v /= s;
            }
            s
        })
        .collect();
    ln_scale += row_scale[..k].iter().map(|s| s.ln()).sum::<f64>();

    // Determinant over the given derivative orders, relative to the base row set 0..k.
    let det_rows = |orders: &[usize]| -> TwoFloat {
        let m: Vec<Vec<TwoFloat>> = orders.iter().map(|&o| table[o].clone()).collect();
        let mut factor = one;
        for (pos, &o) in orders.iter().enumerate() {
            factor *= TwoFloat::new_div(row_scale[o], row_scale[pos]);
        }
        determinant(m) * factor
    };

    let base: Vec<usize> = (0..k).collect();
    let w = det_rows(&base);
    // W′: last row raised by one order.
    let mut first = base.clone();
    first[k - 1] = k;
    let dw = det_rows(&first);
    // W″: last row raised again, plus the second-to-last row raised.
    let mut second = base.clone();
    second[k - 1] = k + 1;
    let mut d2w = det_rows(&second);
    if k >= 2 {
        let mut other = base;
        other[k - 2] = k - 1;
        other[k - 1] = k;
        d2w += det_rows(&other);
    }
    PointDd {
        w,
        dw,
        d2w,
        ln_scale,
    }
}

fn wronskian_dd(seeds: &[SeedSpec], x: f64) -> Result<PointDd> {
    let order = seeds.len() + 1;
    let derivs = seeds
        .iter()
        .map(|s| seed_derivatives_dd(*s, x, order))
        .collect::<Result<Vec<_>>>()?;
    Ok(wronskian_from_derivs(&derivs))
}

/// Wronskian `W(u₁, …, u_k)` and derivatives at a single point.
pub fn wronskian_at(seeds: &[SeedSpec], x: f64) -> Result<WronskianPoint> {
    Ok(wronskian_dd(seeds, x)?.rounded())
}

const WRONSKIAN_FLOOR_LN: f64 = -575.646_273_248_511_4; // ln(1e−250)

/// Tabulates the Wronskian, scans it for nodes and forms `V_k` pointwise.
fn wronskian_scan(chain: &SusyChain) -> Result<(WronskianTable, Vec<f64>)> {
    let grid = chain.grid;
    let n = grid.n_points;
    let mut table = WronskianTable {
        grid,
        w: Vec::with_capacity(n),
        dw: Vec::with_capacity(n),
        d2w: Vec::with_capacity(n),
        ln_scale: Vec::with_capacity(n),
    };
    let mut v = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.x(i);
        let p = wronskian_dd(&chain.seeds, x)?;
        let w = p.w.hi();
        if w == 0.0 || w.abs().ln() + p.ln_scale < WRONSKIAN_FLOOR_LN {
            return Err(Error::WronskianNode { x });
        }
        if let Some(&prev) = table.w.last() {
            if (prev > 0.0) != (w > 0.0) {
                return Err(Error::WronskianNode {
                    x: x - 0.5 * grid.spacing(),
                });
            }
        }
        let r1 = dd::div(p.dw, p.w);
        let r2 = dd::div(p.d2w, p.w);
        v.push(f64::from(TwoFloat::new_mul(x, x) * 0.5 - (r2 - r1 * r1)));
        let r = p.rounded();
        table.w.push(r.w);
        table.dw.push(r.dw);
        table.d2w.push(r.d2w);
        table.ln_scale.push(r.ln_scale);
    }
    Ok((table, v))
}

/// Tabulates the Wronskian and scans it for nodes.
pub fn wronskian_table(chain: &SusyChain) -> Result<WronskianTable> {
    Ok(wronskian_scan(chain)?.0)
}

/// `V_k = x²/2 − (W″W − W′²)/W²`.
pub fn potential_wronskian(chain: &SusyChain) -> Result<PotentialTable> {
    let (_, v) = wronskian_scan(chain)?;
    Ok(PotentialTable {
        grid: chain.grid,
        v,
        order: chain.order(),
    })
}

/// The tabulated `α_i(x, ε_i)` and intermediate potentials `V_0, …, V_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RiccatiChain {
    pub grid: Grid,
    pub epsilons: Vec<f64>,
    /// `alphas[i]` holds `α_{i+1}(x, ε_{i+1})` on the grid.
    pub alphas: Vec<Vec<f64>>,
    /// `potentials[i]` holds `V_i`; `potentials[0]` is the oscillator.
    pub potentials: Vec<Vec<f64>>,
}

impl RiccatiChain {
    pub fn order(&self) -> usize {
        self.alphas.len()
    }

    pub fn final_potential(&self) -> PotentialTable {
        PotentialTable {
            grid: self.grid,
            v: self.potentials.last().cloned().unwrap_or_default(),
            order: self.order(),
        }
    }

    /// `α_i′` from the Riccati identity `α_i′ = 2(V_{i−1} − ε_i) − α_i²`, 1-based `level`.
    pub fn alpha_derivative(&self, level: usize) -> Vec<f64> {
        let a = &self.alphas[level - 1];
        let v = &self.potentials[level - 1];
        let e = self.epsilons[level - 1];
        a.iter()
            .zip(v)
            .map(|(a, v)| 2.0 * (v - e) - a * a)
            .collect()
    }
}

/// Projective `(numerator, denominator)` pair, kept at unit max-norm so that
/// poles of the auxiliary solutions stay representable.
#[derive(Debug, Clone, Copy)]
struct Ratio {
    num: TwoFloat,
    den: TwoFloat,
}

impl Ratio {
    fn normalized(num: TwoFloat, den: TwoFloat) -> Self {
        let s = num.hi().abs().max(den.hi().abs());
        if s > 0.0 && s.is_finite() {
            Self {
                num: num / s,
                den: den / s,
            }
        } else {
            Self { num, den }
        }
    }
}

/// Builds `α_1, …, α_k` with the finite-difference formula
/// `α_i(ε) = −α_{i−1}(ε_{i−1}) − 2(ε_{i−1} − ε)/[α_{i−1}(ε_{i−1}) − α_{i−1}(ε)]`
/// and the potentials `V_i = V_{i−1} − α_i′`.
pub fn riccati_chain(chain: &SusyChain) -> Result<RiccatiChain> {
    let grid = chain.grid;
    let k = chain.order();
    let eps = chain.epsilons();
    let mut alphas = vec![Vec::with_capacity(grid.n_points); k];
    let mut potentials = vec![Vec::with_capacity(grid.n_points); k + 1];
    for i in 0..grid.n_points {
        let x = grid.x(i);
        // level-1 solutions α₁(x, ε_j) = u_j′/u_j for every seed
        let mut level: Vec<Ratio> = chain
            .seeds
            .iter()
            .map(|s| seed_derivatives_dd(*s, x, 1).map(|d| Ratio::normalized(d[1], d[0])))
            .collect::<Result<_>>()?;
        let mut v = TwoFloat::new_mul(x, x) * 0.5;
        potentials[0].push(f64::from(v));
        for lvl in 0..k {
            let base = level[lvl];
            let a = dd::div(base.num, base.den);
            if base.den.hi() == 0.0 || !a.hi().is_finite() {
                return Err(Error::RiccatiSingular { level: lvl + 1, x });
            }
            alphas[lvl].push(f64::from(a));
            // V_i = V_{i−1} − α_i′ = −V_{i−1} + 2ε_i + α_i²
            v = -v + 2.0 * eps[lvl] + a * a;
            potentials[lvl + 1].push(f64::from(v));
            let (p, q) = (base.num, base.den);
            for j in lvl + 1..k {
                let (s, t) = (level[j].num, level[j].den);
                let gap = p * t - s * q;
                let delta = eps[lvl] - eps[j];
                level[j] = Ratio::normalized(-p * gap - 2.0 * delta * q * q * t, q * gap);
            }
        }
    }

    Ok(RiccatiChain {
        grid,
        epsilons: eps,
        alphas,
        potentials,
    })
}

/// First derivative with 4th-order central differences, one-sided at the edges.
pub fn derivative4(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    assert!(n >= 5, "derivative4 needs at least 5 points");
    let mut d = vec![0.0; n];
    let c = 1.0 / (12.0 * h);
    d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    for i in 2..n - 2 {
        d[i] = c * (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]);
    }
    d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
    d[n - 1] =
        -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
    d
}

/// `B_k^+ f = A_k^+ ⋯ A_1^+ f` on the grid.
pub fn apply_intertwiner(riccati: &RiccatiChain, f: &[f64]) -> Result<Vec<f64>> {
    if f.len() != riccati.grid.n_points {
        return Err(Error::InvalidArgument(format!(
            "grid function has {} samples, grid has {}",
            f.len(),
            riccati.grid.n_points
        )));
    }
    if riccati.grid.n_points < 5 {
        return Err(Error::InvalidGrid("intertwiner needs at least 5 points".into()));
    }
    let h = riccati.grid.spacing();
    let mut g = f.to_vec();
    for alpha in &riccati.alphas {
        let dg = derivative4(&g, h);
        g = g
            .iter()
            .zip(&dg)
            .zip(alpha)
            .map(|((g, dg), a)| (a * g - dg) * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
    }
    Ok(g)
}

/// Relative residual `‖H g − E g‖ / ‖g‖` on the points `margin..n−margin`,
/// with `H = −½ d²/dx² + V` discretized by the 5-point 4th-order stencil.
pub fn eigen_residual(grid: &Grid, potential: &[f64], g: &[f64], energy: f64, margin: usize) -> f64 {
    let n = grid.n_points;
    let h2 = grid.spacing().powi(2);
    let lo = margin.max(2);
    let hi = n.saturating_sub(margin.max(2));
    let mut num = 0.0;
    let mut den = 0.0;
    for i in lo..hi {
        let d2 = (-g[i + 2] + 16.0 * g[i + 1] - 30.0 * g[i] + 16.0 * g[i - 1] - g[i - 2]) / (12.0 * h2);
        let r = -0.5 * d2 + potential[i] * g[i] - energy * g[i];
        num += r * r;
        den += g[i] * g[i];
    }
    (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::{eval_seed, oscillator_eigenfunction};
    use approx::assert_relative_eq;

    fn reference_chain() -> SusyChain {
        SusyChain::new(
            vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 2.0)],
            Grid::default(),
        )
        .unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Grid::new(0.0, 1.0, 2).is_err());
        assert!(Grid::new(1.0, 1.0, 10).is_err());
        let g = Grid::default();
        assert_relative_eq!(g.spacing(), 0.01, max_relative = 1e-14);
        assert_eq!(g.x(2400), 12.0);
    }

    #[test]
    fn chain_validation() {
        let g = Grid::default();
        assert!(SusyChain::new(vec![SeedSpec::new(0.5, 0.0)], g).is_err());
        assert!(SusyChain::new(vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.0, 2.0)], g).is_err());
        assert!(SusyChain::new(vec![SeedSpec::new(-1.2, 0.0), SeedSpec::new(-1.0, 2.0)], g).is_err());
        let c = SusyChain::new(vec![SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 0.5)], g).unwrap();
        assert_eq!(c.window_violations(), &[2]);
        assert!(reference_chain().window_violations().is_empty());
    }

    #[test]
    fn first_order_wronskian_is_the_seed() {
        let spec = SeedSpec::new(-0.8, 0.3);
        for x in [-2.0, 0.0, 1.5] {
            let (w, dw, d2w) = wronskian_at(&[spec], x).unwrap().unscaled();
            let e = eval_seed(spec, x, 2).unwrap();
            assert_relative_eq!(w, e.u, max_relative = 1e-13);
            assert_relative_eq!(dw, e.deriv(1), max_relative = 1e-13, epsilon = 1e-15);
            assert_relative_eq!(d2w, e.deriv(2), max_relative = 1e-13);
        }
    }

    #[test]
    fn even_pair_wronskian_parity() {
        // Two even seeds: W is odd, so W(0) = 0 and W′(0) = u₁u₂″ − u₁″u₂ = 2(ε₁ − ε₂).
        let seeds = [SeedSpec::new(-1.0, 0.0), SeedSpec::new(-1.2, 0.0)];
        let (w, dw, d2w) = wronskian_at(&seeds, 0.0).unwrap().unscaled();
        assert_eq!(w, 0.0);
        assert_relative_eq!(dw, 2.0 * (-1.0 + 1.2), max_relative = 1e-13);
        assert!(d2w.abs() < 1e-14);
        let (wp, ..) = wronskian_at(&seeds, 0.7).unwrap().unscaled();
        let (wm, ..) = wronskian_at(&seeds, -0.7).unwrap().unscaled();
        assert_relative_eq!(wp, -wm, max_relative = 1e-13);
        // and the chain built from them is singular
        let chain = SusyChain::new(seeds.to_vec(), Grid::default()).unwrap();
        assert!(matches!(wronskian_table(&chain), Err(Error::WronskianNode { .. })));
    }

    #[test]
    fn wronskian_derivatives_match_finite_differences() {
        let seeds = [SeedSpec::new(-0.6, 0.2), SeedSpec::new(-1.1, 1.7), SeedSpec::new(-2.0, -0.4)];
        let x = 0.8;
        let h = 1e-5;
        let (_, dw, d2w) = wronskian_at(&seeds, x).unwrap().unscaled();
        let (wp, dwp, _) = wronskian_at(&seeds, x + h).unwrap().unscaled();
        let (wm, dwm, _) = wronskian_at(&seeds, x - h).unwrap().unscaled();
        assert_relative_eq!((wp - wm) / (2.0 * h), dw, max_relative = 1e-7);
        assert_relative_eq!((dwp - dwm) / (2.0 * h), d2w, max_relative = 1e-7);
    }

    #[test]
    fn reference_wronskian_is_one_signed() {
        let t = wronskian_table(&reference_chain()).unwrap();
        let sign = t.w[0].signum();
        assert!(t.w.iter().all(|w| w.signum() == sign));
        assert!(t.ln_scale.iter().all(|s| s.is_finite()));
    }

    #[test]
    fn shifted_oscillator() {
        let chain = SusyChain::new(vec![SeedSpec::new(-0.5, 0.0)], Grid::default()).unwrap();
        let v = potential_wronskian(&chain).unwrap();
        let r = riccati_chain(&chain).unwrap().final_potential();
        for (i, x) in chain.grid().points().iter().enumerate() {
            assert!((v.v[i] - (x * x / 2.0 - 1.0)).abs() < 1e-11);
            assert!((r.v[i] - (x * x / 2.0 - 1.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn ground_state_seed_shifts_up() {
        // Evaluation only: ε = 1/2 is outside the chain contract.
        let g = Grid::new(-5.0, 5.0, 101).unwrap();
        let seeds = [SeedSpec::new(0.5, 0.0)];
        for x in g.points() {
            let p = wronskian_at(&seeds, x).unwrap();
            let v = 0.5 * x * x - (p.d2w / p.w - (p.dw / p.w).powi(2));
            assert!((v - (0.5 * x * x + 1.0)).abs() < 1e-11);
        }
    }

    #[test]
    fn empty_chain_is_the_oscillator() {
        let chain = SusyChain::new(vec![], Grid::default()).unwrap();
        let v = potential_wronskian(&chain).unwrap();
        let r = riccati_chain(&chain).unwrap();
        assert_eq!(r.order(), 0);
        for (i, x) in chain.grid().points().iter().enumerate() {
            assert_eq!(v.v[i], 0.5 * x * x);
            assert_eq!(r.final_potential().v[i], 0.5 * x * x);
        }
    }

    #[test]
    fn third_order_tail_matches_high_precision() {
        // Near-degenerate log-derivatives at large |x|; mpmath, 60 digits.
        let seeds = vec![
            SeedSpec::new(-1.0137042968723353, 0.09122494543192561),
            SeedSpec::new(-1.3389756326429976, -1.3238236619977553),
            SeedSpec::new(-2.038695358706943, -0.5393453414623235),
        ];
        let chain = SusyChain::new(seeds, Grid::new(11.95, 11.97, 3).unwrap()).unwrap();
        let w = potential_wronskian(&chain).unwrap();
        let r = riccati_chain(&chain).unwrap().final_potential();
        let want = 68.400_577_002_769_393_076_606_85;
        assert!((w.v[0] - want).abs() < 1e-12, "{}", w.v[0]);
        assert!((r.v[0] - want).abs() < 1e-12, "{}", r.v[0]);
    }

    #[test]
    fn reference_routes_agree_and_shape() {
        let chain = reference_chain();
        let w = potential_wronskian(&chain).unwrap();
        let r = riccati_chain(&chain).unwrap().final_potential();
        let d = w.sup_distance(&r);
        assert!(d <= 1e-8, "sup distance {d}");
        let mid = 1200;
        assert!(w.v[mid] < 0.0, "V₂(0) = {}", w.v[mid]);
        // V_k → x²/2 − k with a c/x² tail, c = Σ(−ε_j − ½) − k(k−1)/2 = 0.2
        for i in [0, 2400] {
            let x = chain.grid().x(i);
            let tail = (w.v[i] - x * x / 2.0 + 2.0) * x * x;
            assert!((tail - 0.2).abs() < 0.05, "x = {x}: x²(V − x²/2 + k) = {tail}");
        }
    }

    #[test]
    fn riccati_levels_satisfy_their_equations() {
        let chain = reference_chain();
        let rc = riccati_chain(&chain).unwrap();
        let h = chain.grid().spacing();
        for level in 1..=2 {
            let a = &rc.alphas[level - 1];
            let v = &rc.potentials[level - 1];
            let e = rc.epsilons[level - 1];
            for i in 1..a.len() - 1 {
                // midpoint check between neighbours
                let da = (a[i + 1] - a[i - 1]) / (2.0 * h);
                let lhs = da + a[i] * a[i];
                let rhs = 2.0 * (v[i] - e);
                assert!((lhs - rhs).abs() <= 1e-3 * rhs.abs().max(1.0));
            }
            let dal = rc.alpha_derivative(level);
            for i in 1..a.len() - 1 {
                let da = (a[i + 1] - a[i - 1]) / (2.0 * h);
                assert!((da - dal[i]).abs() <= 1e-3, "level {level}, i {i}");
            }
        }
    }

    #[test]
    fn intertwiner_first_order_raises() {
        let chain = SusyChain::new(vec![SeedSpec::new(-0.5, 0.0)], Grid::default()).unwrap();
        let rc = riccati_chain(&chain).unwrap();
        let xs = chain.grid().points();
        let psi0: Vec<f64> = xs.iter().map(|&x| oscillator_eigenfunction(0, x)).collect();
        let g = apply_intertwiner(&rc, &psi0).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            assert!((g[i] - oscillator_eigenfunction(1, x)).abs() < 1e-8);
        }
        let pot = rc.final_potential();
        assert!(eigen_residual(chain.grid(), &pot.v, &g, 0.5, 4) < 1e-6);
        let zero = apply_intertwiner(&rc, &vec![0.0; xs.len()]).unwrap();
        assert!(zero.iter().all(|v| *v == 0.0));
        assert!(apply_intertwiner(&rc, &[0.0; 3]).is_err());
    }

    #[test]
    fn reference_intertwiner_residuals() {
        let chain = reference_chain();
        let rc = riccati_chain(&chain).unwrap();
        let pot = potential_wronskian(&chain).unwrap();
        let xs = chain.grid().points();
        for n in 0..3 {
            let psi: Vec<f64> = xs.iter().map(|&x| oscillator_eigenfunction(n, x)).collect();
            let g = apply_intertwiner(&rc, &psi).unwrap();
            let res = eigen_residual(chain.grid(), &pot.v, &g, n as f64 + 0.5, 4);
            assert!(res <= 1e-3, "n = {n}: residual {res}");
        }
    }

    #[test]
    fn csv_format() {
        let g = Grid::new(-1.0, 1.0, 3).unwrap();
        let t = PotentialTable {
            grid: g,
            v: vec![0.5, 0.0, 0.5],
            order: 0,
        };
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,v"));
        assert_eq!(lines.next(), Some("-1.0000000000000000e0,5.0000000000000000e-1"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn derivative4_is_exact_for_quartics() {
        let h = 0.1;
        let f: Vec<f64> = (0..20).map(|i| (i as f64 * h).powi(4)).collect();
        let d = derivative4(&f, h);
        for (i, v) in d.iter().enumerate() {
            let x = i as f64 * h;
            assert!((v - 4.0 * x.powi(3)).abs() < 1e-9, "i={i}");
        }
    }
}
