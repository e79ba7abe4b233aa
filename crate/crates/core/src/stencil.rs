//! Scalar stencil kernels: point-value interpolation, Ai-WENO-Z weights,
//! SBM slope limiting, and the Boole quadrature used for the nonconservative
//! cell integrals.
//!
//! Every kernel acts on one scalar sequence. Callers apply them component-wise,
//! either to conserved/primitive variables or to characteristic variables.

use std::sync::OnceLock;

/// Six consecutive cell values `w[0..6]` = cells `j-2 ..= j+3` around the
/// interface `j+1/2`.
pub type Stencil6 = [f64; 6];

/// Fifth-order unlimited interpolation from the left, cells `j-2..=j+2`.
#[inline]
pub fn interp5_minus(w: &Stencil6) -> f64 {
    (3.0 * w[0] - 20.0 * w[1] + 90.0 * w[2] + 60.0 * w[3] - 5.0 * w[4]) / 128.0
}

/// Fifth-order unlimited interpolation from the right, cells `j-1..=j+3`.
#[inline]
pub fn interp5_plus(w: &Stencil6) -> f64 {
    (-5.0 * w[1] + 60.0 * w[2] + 90.0 * w[3] - 20.0 * w[4] + 3.0 * w[5]) / 128.0
}

/// Parameters of the affine-invariant WENO-Z weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WenoParams {
    pub p: i32,
    /// Floor added to the normalized smoothness measures.
    pub eps: f64,
    /// Floor added to the mean smoothness measure before normalizing.
    pub mu: f64,
    /// Linear weights reproducing [`interp5_minus`].
    pub d: [f64; 3],
}

impl Default for WenoParams {
    fn default() -> Self {
        Self {
            p: 2,
            eps: 1e-40,
            mu: 1e-300,
            d: [1.0 / 16.0, 10.0 / 16.0, 5.0 / 16.0],
        }
    }
}

/// Quadratic sub-interpolants at `x_{j+1/2}` from five values `j-2..=j+2`.
#[inline]
pub fn sub_interpolants(w: &[f64; 5]) -> [f64; 3] {
    [
        (3.0 * w[0] - 10.0 * w[1] + 15.0 * w[2]) / 8.0,
        (-w[1] + 6.0 * w[2] + 3.0 * w[3]) / 8.0,
        (3.0 * w[2] + 6.0 * w[3] - w[4]) / 8.0,
    ]
}

/// Jiang-Shu smoothness measures of the three sub-stencils.
#[inline]
pub fn smoothness(w: &[f64; 5]) -> [f64; 3] {
    const C: f64 = 13.0 / 12.0;
    let a0 = w[0] - 2.0 * w[1] + w[2];
    let b0 = w[0] - 4.0 * w[1] + 3.0 * w[2];
    let a1 = w[1] - 2.0 * w[2] + w[3];
    let b1 = w[1] - w[3];
    let a2 = w[2] - 2.0 * w[3] + w[4];
    let b2 = 3.0 * w[2] - 4.0 * w[3] + w[4];
    [
        C * a0 * a0 + 0.25 * b0 * b0,
        C * a1 * a1 + 0.25 * b1 * b1,
        C * a2 * a2 + 0.25 * b2 * b2,
    ]
}

/// Nonlinear weights for the left-biased value built from `w[0..5]`.
///
/// The measures are divided by their mean before the Z weighting, so the
/// weights are unchanged when the data are mapped by `w -> lambda w + c`.
#[inline]
pub fn aiweno_z_weights(w: &[f64; 5], wp: &WenoParams) -> [f64; 3] {
    let beta = smoothness(w);
    let mean = (beta[0] + beta[1] + beta[2]) / 3.0;
    let scale = 1.0 / (mean + wp.mu);
    let b = beta.map(|x| x * scale);
    let tau = (b[0] - b[2]).abs();
    let mut alpha = [0.0; 3];
    for k in 0..3 {
        alpha[k] = wp.d[k] * (1.0 + (tau / (b[k] + wp.eps)).powi(wp.p));
    }
    let sum = alpha[0] + alpha[1] + alpha[2];
    alpha.map(|a| a / sum)
}

#[inline]
fn aiweno_z_five(w: &[f64; 5], wp: &WenoParams) -> f64 {
    let omega = aiweno_z_weights(w, wp);
    let q = sub_interpolants(w);
    omega[0] * q[0] + omega[1] * q[1] + omega[2] * q[2]
}

/// Ai-WENO-Z value `u^-_{j+1/2}` from `w[0..5]`.
#[inline]
pub fn aiweno_z_minus(s: &Stencil6, wp: &WenoParams) -> f64 {
    aiweno_z_five(&[s[0], s[1], s[2], s[3], s[4]], wp)
}

/// Ai-WENO-Z value `u^+_{j+1/2}`, the mirror image of [`aiweno_z_minus`] on `w[1..6]`.
#[inline]
pub fn aiweno_z_plus(s: &Stencil6, wp: &WenoParams) -> f64 {
    aiweno_z_five(&[s[5], s[4], s[3], s[2], s[1]], wp)
}

/// Parameters of the two-parameter SBM limiter. The defaults are overcompressive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SbmParams {
    pub theta: f64,
    pub tau: f64,
}

impl Default for SbmParams {
    fn default() -> Self {
        Self {
            theta: 2.0,
            tau: -0.25,
        }
    }
}

/// SBM limiter function.
#[inline]
pub fn sbm_phi(r: f64, sp: &SbmParams) -> f64 {
    if r <= 0.0 || r.is_nan() {
        0.0
    } else if r <= 1.0 {
        (r * sp.theta).min(1.0 + sp.tau * (r - 1.0))
    } else {
        let s = 1.0 / r;
        r * (s * sp.theta).min(1.0 + sp.tau * (s - 1.0))
    }
}

/// Limited slope for cell `j` from `g_{j-1}, g_j, g_{j+1}`. A flat left
/// difference yields a zero slope.
#[inline]
pub fn sbm_slope(gm: f64, g0: f64, gp: f64, dx: f64, sp: &SbmParams) -> f64 {
    let back = g0 - gm;
    if back == 0.0 {
        return 0.0;
    }
    sbm_phi((gp - g0) / back, sp) * back / dx
}

/// Slopes in cells `j` and `j+1` from `g_{j-1}, g_j, g_{j+1}, g_{j+2}`.
#[inline]
pub fn sbm_slope_pair(g: [f64; 4], dx: f64, sp: &SbmParams) -> (f64, f64) {
    (
        sbm_slope(g[0], g[1], g[2], dx, sp),
        sbm_slope(g[1], g[2], g[3], dx, sp),
    )
}

#[inline]
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a > 0.0 {
        a.min(b)
    } else {
        a.max(b)
    }
}

/// Quartic interpolation at `x_{j-1/4}` and `x_{j+1/4}` from cells `j-2..=j+2`.
#[inline]
pub fn interp_quarter(w: &[f64; 5]) -> (f64, f64) {
    (
        (-45.0 * w[0] + 420.0 * w[1] + 1890.0 * w[2] - 252.0 * w[3] + 35.0 * w[4]) / 2048.0,
        (35.0 * w[0] - 252.0 * w[1] + 1890.0 * w[2] + 420.0 * w[3] - 45.0 * w[4]) / 2048.0,
    )
}

/// Boole quadrature nodes inside a cell, in units of `dx` relative to the center.
pub const BOOLE_NODES: [f64; 5] = [-0.5, -0.25, 0.0, 0.25, 0.5];

/// Integral over one cell from values at [`BOOLE_NODES`].
#[inline]
pub fn boole_integrate(f: &[f64; 5], dx: f64) -> f64 {
    dx * (7.0 * f[0] + 32.0 * f[1] + 12.0 * f[2] + 32.0 * f[3] + 7.0 * f[4]) / 90.0
}

/// Coefficients mapping five cell values `j-2..=j+2` to the value and the
/// (unit-spacing) derivative of their quartic interpolant at each Boole node.
#[derive(Debug)]
pub struct QuarticTables {
    pub value: [[f64; 5]; 5],
    pub deriv: [[f64; 5]; 5],
}

/// Lagrange basis on the nodes `-2..=2`, evaluated with its derivative.
fn lagrange(m: usize, x: f64) -> (f64, f64) {
    let nodes = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut denom = 1.0;
    for (n, &xn) in nodes.iter().enumerate() {
        if n != m {
            denom *= nodes[m] - xn;
        }
    }
    let mut value = 1.0;
    for (n, &xn) in nodes.iter().enumerate() {
        if n != m {
            value *= x - xn;
        }
    }
    let mut deriv = 0.0;
    for (skip, _) in nodes.iter().enumerate().filter(|&(s, _)| s != m) {
        let mut term = 1.0;
        for (n, &xn) in nodes.iter().enumerate() {
            if n != m && n != skip {
                term *= x - xn;
            }
        }
        deriv += term;
    }
    (value / denom, deriv / denom)
}

pub fn quartic_tables() -> &'static QuarticTables {
    static TABLES: OnceLock<QuarticTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let mut value = [[0.0; 5]; 5];
        let mut deriv = [[0.0; 5]; 5];
        for (q, &x) in BOOLE_NODES.iter().enumerate() {
            for m in 0..5 {
                let (v, d) = lagrange(m, x);
                value[q][m] = v;
                deriv[q][m] = d;
            }
        }
        QuarticTables { value, deriv }
    })
}

/// Values and `x`-derivatives at the five Boole nodes of the quartic through
/// the cell values `j-2..=j+2`.
#[inline]
pub fn cell_quadrature_nodes(w: &[f64; 5], dx: f64) -> ([f64; 5], [f64; 5]) {
    let t = quartic_tables();
    let mut vals = [0.0; 5];
    let mut ders = [0.0; 5];
    for q in 0..5 {
        let mut v = 0.0;
        let mut d = 0.0;
        // offsets from the center keep constants exact
        for m in 0..5 {
            let dw = w[m] - w[2];
            v += t.value[q][m] * dw;
            d += t.deriv[q][m] * dw;
        }
        vals[q] = w[2] + v;
        ders[q] = d / dx;
    }
    // the interior quarter nodes use the closed-form rational weights
    let (qm, qp) = interp_quarter(w);
    vals[1] = qm;
    vals[2] = w[2];
    vals[3] = qp;
    (vals, ders)
}

/// Fifth-order flux correction from FV fluxes at interfaces `j-3/2..=j+5/2`:
/// `F - (dx^2/24) F_xx + (7 dx^4/5760) F_xxxx` with central differences, in
/// which the mesh spacing cancels.
#[inline]
pub fn aweno_correct(f: [f64; 5]) -> f64 {
    let d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / 12.0;
    let d4 = f[0] - 4.0 * f[1] + 6.0 * f[2] - 4.0 * f[3] + f[4];
    f[2] - d2 / 24.0 + 7.0 / 5760.0 * d4
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Value of the unique interpolating polynomial through `(xs, ys)` at `x`,
    /// by Neville's scheme. Independent of every table above.
    fn neville(xs: &[f64], ys: &[f64], x: f64) -> f64 {
        let mut p = ys.to_vec();
        let n = xs.len();
        for m in 1..n {
            for i in 0..n - m {
                p[i] = ((x - xs[i + m]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + m]);
            }
        }
        p[0]
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn interp5_constant_and_polynomial() {
        assert_eq!(interp5_minus(&[3.5; 6]), 3.5);
        assert_eq!(interp5_plus(&[3.5; 6]), 3.5);
        let lin: Stencil6 = std::array::from_fn(|k| k as f64);
        // stencil cell j is index 2, interface at 2.5
        assert_eq!(interp5_minus(&lin), 2.5);
        assert_eq!(interp5_plus(&lin), 2.5);
        let quart: Stencil6 = std::array::from_fn(|k| (k as f64 - 1.3).powi(4) - 2.0 * k as f64);
        let xs = [0.0, 1.0, 2.0, 3.0, 4.0];
        let exact_m = neville(&xs, &quart[0..5], 2.5);
        let exact_p = neville(&xs, &quart[1..6], 1.5);
        assert!(rel(interp5_minus(&quart), exact_m) < 1e-12);
        assert!(rel(interp5_plus(&quart), exact_p) < 1e-12);
    }

    #[test]
    fn ideal_weights_reproduce_interp5() {
        // coefficient-by-coefficient over the unit basis
        let d = WenoParams::default().d;
        for m in 0..5 {
            let mut w = [0.0; 5];
            w[m] = 1.0;
            let q = sub_interpolants(&w);
            let combo = d[0] * q[0] + d[1] * q[1] + d[2] * q[2];
            let mut s = [0.0; 6];
            s[m] = 1.0;
            assert_eq!(combo, interp5_minus(&s), "basis {m}");
        }
    }

    #[test]
    fn aiweno_constant_uses_linear_weights() {
        let wp = WenoParams::default();
        assert_eq!(aiweno_z_weights(&[2.0; 5], &wp), wp.d);
        assert_eq!(aiweno_z_minus(&[2.0; 6], &wp), 2.0);
        assert_eq!(aiweno_z_plus(&[2.0; 6], &wp), 2.0);
    }

    #[test]
    fn aiweno_step_selects_smooth_substencil() {
        let wp = WenoParams::default();
        let s = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0];
        let v = aiweno_z_minus(&s, &wp);
        assert!((0.0..=1.0).contains(&v));
        // enumerate sub-stencils: only stencil 0 (cells j-2..j) avoids the jump
        let w5 = [0.0, 0.0, 0.0, 1.0, 1.0];
        let beta = smoothness(&w5);
        let q = sub_interpolants(&w5);
        let smooth: Vec<usize> = (0..3).filter(|&k| beta[k] == 0.0).collect();
        assert_eq!(smooth, vec![0]);
        let oracle = q[0];
        assert!((v - oracle).abs() < 1e-12, "{v} vs {oracle}");
        let vp = aiweno_z_plus(&s, &wp);
        assert!((vp - 1.0).abs() < 1e-12);
    }

    #[test]
    fn aiweno_eoc_on_sine() {
        let wp = WenoParams::default();
        let err = |h: f64| {
            let mut worst: f64 = 0.0;
            for n in 0..50 {
                let x0 = 0.37 + n as f64 * 0.11;
                let s: Stencil6 = std::array::from_fn(|k| (x0 + (k as f64 - 2.0) * h).sin());
                let exact = (x0 + 0.5 * h).sin();
                worst = worst.max((aiweno_z_minus(&s, &wp) - exact).abs());
            }
            worst
        };
        let e1 = err(0.2);
        let e2 = err(0.1);
        let eoc = (e1 / e2).log2();
        assert!(eoc >= 4.5, "eoc = {eoc}, errors {e1:e} {e2:e}");
    }

    #[test]
    fn sbm_examples() {
        let sp = SbmParams::default();
        assert_eq!(sbm_phi(-1.0, &sp), 0.0);
        assert_eq!(sbm_phi(0.0, &sp), 0.0);
        assert_eq!(sbm_phi(0.25, &sp), 0.5);
        assert_eq!(sbm_phi(4.0, &sp), 2.0);
        assert_eq!(sbm_phi(1.0, &sp), 1.0);
    }

    #[test]
    fn sbm_slope_examples() {
        let sp = SbmParams::default();
        assert_eq!(sbm_slope_pair([2.0; 4], 0.1, &sp), (0.0, 0.0));
        assert_eq!(sbm_slope_pair([0.0, 0.0, 1.0, 1.0], 1.0, &sp), (0.0, 0.0));
        assert_eq!(sbm_slope_pair([0.0, 1.0, 2.0, 3.0], 1.0, &sp), (1.0, 1.0));
    }

    #[test]
    fn minmod_examples() {
        assert_eq!(minmod(1.0, 2.0), 1.0);
        assert_eq!(minmod(-1.0, 2.0), 0.0);
        assert_eq!(minmod(-3.0, -2.0), -2.0);
    }

    #[test]
    fn quarter_points() {
        assert_eq!(interp_quarter(&[4.0; 5]), (4.0, 4.0));
        let lin = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(interp_quarter(&lin), (2.75, 3.25));
        let sq = lin.map(|x: f64| x * x);
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        let (m, p) = interp_quarter(&sq);
        assert!(rel(m, neville(&xs, &sq, 2.75)) < 1e-14);
        assert!(rel(p, neville(&xs, &sq, 3.25)) < 1e-14);
    }

    #[test]
    fn quarter_table_matches_closed_form() {
        let t = quartic_tables();
        let expect_m = [-45.0, 420.0, 1890.0, -252.0, 35.0].map(|c| c / 2048.0);
        let expect_p = [35.0, -252.0, 1890.0, 420.0, -45.0].map(|c| c / 2048.0);
        for m in 0..5 {
            assert!((t.value[1][m] - expect_m[m]).abs() < 1e-15);
            assert!((t.value[3][m] - expect_p[m]).abs() < 1e-15);
        }
        let edge = [3.0, -20.0, 90.0, 60.0, -5.0].map(|c| c / 128.0);
        for m in 0..5 {
            assert!((t.value[4][m] - edge[m]).abs() < 1e-15);
        }
    }

    #[test]
    fn quadrature_nodes_on_polynomials() {
        let (v, d) = cell_quadrature_nodes(&[1.5; 5], 0.3);
        assert_eq!(v, [1.5; 5]);
        assert!(d.iter().all(|x| x.abs() < 1e-14));

        let dx = 0.1;
        let lin: [f64; 5] = std::array::from_fn(|m| (m as f64 - 2.0) * dx);
        let (_, d) = cell_quadrature_nodes(&lin, dx);
        for x in d {
            assert!((x - 1.0).abs() < 1e-12);
        }

        // degree-4 polynomial sampled around x_j = 0.7
        let poly = |x: f64| 1.0 + x - 2.0 * x * x + 0.5 * x.powi(3) + 3.0 * x.powi(4);
        let dpoly = |x: f64| 1.0 - 4.0 * x + 1.5 * x * x + 12.0 * x.powi(3);
        let xc = 0.7;
        let w: [f64; 5] = std::array::from_fn(|m| poly(xc + (m as f64 - 2.0) * dx));
        let (v, d) = cell_quadrature_nodes(&w, dx);
        for q in 0..5 {
            let x = xc + BOOLE_NODES[q] * dx;
            assert!(rel(v[q], poly(x)) < 1e-12);
            assert!(rel(d[q], dpoly(x)) < 1e-12, "node {q}: {} vs {}", d[q], dpoly(x));
        }
    }

    #[test]
    fn boole_examples() {
        assert!((boole_integrate(&[1.0; 5], 0.2) - 0.2).abs() < 1e-16);
        let dx = 0.3;
        let sq = BOOLE_NODES.map(|s| (s * dx).powi(2));
        assert!(rel(boole_integrate(&sq, dx), dx.powi(3) / 12.0) < 1e-14);
        let quint = BOOLE_NODES.map(|s| (s * dx).powi(5));
        assert!(boole_integrate(&quint, dx).abs() < 1e-18);
    }

    #[test]
    fn boole_of_quartic_nodes_is_exact() {
        let dx = 0.25;
        let xc = -0.4;
        let poly = |x: f64| 2.0 - x + 0.3 * x.powi(2) - 1.7 * x.powi(3) + 0.9 * x.powi(4);
        let anti = |x: f64| 2.0 * x - 0.5 * x * x + 0.1 * x.powi(3) - 1.7 / 4.0 * x.powi(4) + 0.18 * x.powi(5);
        let w: [f64; 5] = std::array::from_fn(|m| poly(xc + (m as f64 - 2.0) * dx));
        let (v, _) = cell_quadrature_nodes(&w, dx);
        let exact = anti(xc + 0.5 * dx) - anti(xc - 0.5 * dx);
        assert!(rel(boole_integrate(&v, dx), exact) < 1e-12);
    }

    #[test]
    fn correction_stencils() {
        assert_eq!(aweno_correct([2.0; 5]), 2.0);
        // fluxes sampled from a quintic at interface positions -2..=2 (unit spacing):
        // F_xx and F_xxxx stencils are exact on it up to their truncation
        let f = |x: f64| 0.3 * x.powi(5) - x.powi(4) + 0.5 * x.powi(3) + 2.0 * x * x - x + 1.0;
        let fxx = |x: f64| 6.0 * x.powi(3) - 12.0 * x * x + 3.0 * x + 4.0;
        let samples: [f64; 5] = std::array::from_fn(|m| f(m as f64 - 2.0));
        let d2 = (-samples[0] + 16.0 * samples[1] - 30.0 * samples[2] + 16.0 * samples[3] - samples[4]) / 12.0;
        let d4 = samples[0] - 4.0 * samples[1] + 6.0 * samples[2] - 4.0 * samples[3] + samples[4];
        assert!((d2 - fxx(0.0)).abs() < 1e-12);
        assert!((d4 - (-24.0)).abs() < 1e-12);
        let expect = f(0.0) - fxx(0.0) / 24.0 + 7.0 / 5760.0 * -24.0;
        assert!((aweno_correct(samples) - expect).abs() < 1e-12);
    }
}
