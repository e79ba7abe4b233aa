//! Right-hand side of the conservative system with region-driven interface
//! states, flux selection and A-WENO corrections.
//!
//! Line kernels index a padded line of cells; padded interface `i` separates
//! cells `i` and `i + 1`. The FV fluxes of one line live on interfaces
//! `GHOST - 3 ..= GHOST + n + 1`, stored from index 0, so physical interface
//! `p` (between physical cells `p - 1` and `p`) sits at index `p + 2`.

use crate::eos::{cons_to_prim, Conserved, GasModel, Primitive};
use crate::flux::{char_basis, cu_flux, ldcu_flux_kind, roe_average, FluxKind};
use crate::grid::{Direction, Field, GridSpec, GHOST};
use crate::indicator::{RegionMap, RegionTag};
use crate::stencil::{
    aiweno_z_minus, aiweno_z_plus, aweno_correct, interp5_minus, interp5_plus, sbm_slope_pair, SbmParams,
    WenoParams,
};
use crate::sweep::{sweep_add, Tally};

/// Number of FV interfaces a line of `n` physical cells needs.
#[inline]
pub fn fv_len(n: usize) -> usize {
    n + 5
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservativeParams {
    pub gas: GasModel,
    pub weno: WenoParams,
    pub sbm: SbmParams,
    /// Add the gravity source `(0, 0, rho, rho v)` (2-D only).
    pub gravity: bool,
    /// Per-direction `dt / (h w)` for the flux positivity limiter, where `w`
    /// is the direction's share of the CFL budget; `None` disables it.
    pub pp_lambda: Option<[f64; 2]>,
}

impl ConservativeParams {
    pub fn new(gas: GasModel) -> Self {
        Self {
            gas,
            weno: WenoParams::default(),
            sbm: SbmParams::default(),
            gravity: false,
            pp_lambda: None,
        }
    }
}

/// Safety-net events during one RHS evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RhsCounters {
    /// Interfaces whose reconstructed states were inadmissible and were
    /// replaced by the adjacent cell values.
    pub positivity_fallbacks: usize,
    /// RC interfaces where the LDCU fan degenerated and CU was used.
    pub ldcu_fallbacks: usize,
    /// Interfaces whose final flux was blended toward the first-order flux.
    pub flux_limited: usize,
}

impl Tally for RhsCounters {
    fn merge(self, o: Self) -> Self {
        RhsCounters {
            positivity_fallbacks: self.positivity_fallbacks + o.positivity_fallbacks,
            ldcu_fallbacks: self.ldcu_fallbacks + o.ldcu_fallbacks,
            flux_limited: self.flux_limited + o.flux_limited,
        }
    }
}

/// Left and right states `(U-, U+)` at each FV interface of a line.
/// `tags` holds the extended tags (see [`RegionMap::extended_line`]).
pub fn interface_states_line<const N: usize>(
    cells: &[[f64; N]],
    tags: &[RegionTag],
    dx: f64,
    params: &ConservativeParams,
    counters: &mut RhsCounters,
) -> Vec<([f64; N], [f64; N])> {
    let n = cells.len() - 2 * GHOST;
    debug_assert_eq!(tags.len(), fv_len(n));
    let gas = &params.gas;
    let prims: Vec<Primitive<N>> = cells.iter().map(|c| cons_to_prim(&Conserved(*c), gas)).collect();
    let mut out = Vec::with_capacity(fv_len(n));
    for (m, &tag) in tags.iter().enumerate() {
        let i = GHOST - 3 + m;
        let (l, r) = match tag {
            RegionTag::S => unlimited_states(&cells[i - 2..=i + 3]),
            RegionTag::RNC | RegionTag::RC => {
                let avg = roe_average(&prims[i], &prims[i + 1], gas);
                let basis = char_basis(&avg, gas);
                if tag == RegionTag::RNC {
                    let g: [[f64; N]; 6] = std::array::from_fn(|s| basis.to_char(&cells[i - 2 + s]));
                    let mut gl = [0.0; N];
                    let mut gr = [0.0; N];
                    for c in 0..N {
                        let w: [f64; 6] = std::array::from_fn(|s| g[s][c]);
                        gl[c] = aiweno_z_minus(&w, &params.weno);
                        gr[c] = aiweno_z_plus(&w, &params.weno);
                    }
                    (basis.from_char(&gl), basis.from_char(&gr))
                } else {
                    let g: [[f64; N]; 4] = std::array::from_fn(|s| basis.to_char(&cells[i - 1 + s]));
                    let mut gl = [0.0; N];
                    let mut gr = [0.0; N];
                    for c in 0..N {
                        let (s0, s1) = sbm_slope_pair([g[0][c], g[1][c], g[2][c], g[3][c]], dx, &params.sbm);
                        gl[c] = g[1][c] + 0.5 * dx * s0;
                        gr[c] = g[2][c] - 0.5 * dx * s1;
                    }
                    (basis.from_char(&gl), basis.from_char(&gr))
                }
            }
        };
        if Conserved(l).is_admissible(gas) && Conserved(r).is_admissible(gas) {
            out.push((l, r));
        } else {
            counters.positivity_fallbacks += 1;
            out.push((cells[i], cells[i + 1]));
        }
    }
    out
}

/// Component-wise fifth-order unlimited values from cells `i-2..=i+3`.
#[inline]
pub fn unlimited_states<const N: usize>(w: &[[f64; N]]) -> ([f64; N], [f64; N]) {
    let mut l = [0.0; N];
    let mut r = [0.0; N];
    for c in 0..N {
        let s: [f64; 6] = std::array::from_fn(|k| w[k][c]);
        l[c] = interp5_minus(&s);
        r[c] = interp5_plus(&s);
    }
    (l, r)
}

/// CU flux at S and RNC interfaces, LDCU at RC interfaces.
pub fn fv_flux_line<const N: usize>(
    states: &[([f64; N], [f64; N])],
    tags: &[RegionTag],
    gas: &GasModel,
    counters: &mut RhsCounters,
) -> Vec<[f64; N]> {
    states
        .iter()
        .zip(tags)
        .map(|((l, r), &tag)| {
            let (ul, ur) = (Conserved(*l), Conserved(*r));
            if tag == RegionTag::RC {
                let (f, kind) = ldcu_flux_kind(&ul, &ur, gas);
                if kind == FluxKind::LdcuFallback {
                    counters.ldcu_fallbacks += 1;
                }
                f
            } else {
                cu_flux(&ul, &ur, gas)
            }
        })
        .collect()
}

/// Final fluxes at the `n + 1` physical interfaces. RC interfaces keep their
/// FV flux; the others get the fourth- and second-derivative corrections
/// built from whatever FV fluxes their neighbors hold.
pub fn aweno_flux_line<const N: usize>(fv: &[[f64; N]], tags: &[RegionTag]) -> Vec<[f64; N]> {
    let n = fv.len() - 5;
    (0..=n)
        .map(|p| {
            let m = p + 2;
            if tags[m] == RegionTag::RC {
                fv[m]
            } else {
                std::array::from_fn(|c| aweno_correct([fv[m - 2][c], fv[m - 1][c], fv[m][c], fv[m + 1][c], fv[m + 2][c]]))
            }
        })
        .collect()
}

/// First-order Rusanov flux of two cell values.
#[inline]
pub fn rusanov_flux<const N: usize>(ul: &[f64; N], ur: &[f64; N], gas: &GasModel) -> [f64; N] {
    let (cl, cr) = (Conserved(*ul), Conserved(*ur));
    let (vl, vr) = (cons_to_prim(&cl, gas), cons_to_prim(&cr, gas));
    let a = (vl.u().abs() + gas.sound_speed_clamped(vl.rho(), vl.p()))
        .max(vr.u().abs() + gas.sound_speed_clamped(vr.rho(), vr.p()));
    let fl = crate::eos::flux_from_both(&cl, &vl);
    let fr = crate::eos::flux_from_both(&cr, &vr);
    std::array::from_fn(|c| 0.5 * (fl[c] + fr[c]) - 0.5 * a * (ur[c] - ul[c]))
}

/// Blend `fh` toward the Rusanov flux so that the half-cell updates
/// `u_l - 2 lambda F` and `u_r + 2 lambda F` stay admissible. Returns `None`
/// when `fh` already passes.
pub fn limit_flux<const N: usize>(
    ul: &[f64; N],
    ur: &[f64; N],
    fh: &[f64; N],
    lambda: f64,
    gas: &GasModel,
) -> Option<[f64; N]> {
    let floor = |u: &[f64; N]| {
        let c = Conserved(*u);
        (1e-13 * c.rho(), 1e-13 * c.pressure(gas))
    };
    let (fl_rho, fl_p) = floor(ul);
    let (fr_rho, fr_p) = floor(ur);
    let ok = |f: &[f64; N]| {
        let a = Conserved::<N>(std::array::from_fn(|c| ul[c] - 2.0 * lambda * f[c]));
        let b = Conserved::<N>(std::array::from_fn(|c| ur[c] + 2.0 * lambda * f[c]));
        a.rho() > fl_rho && b.rho() > fr_rho && a.pressure(gas) > fl_p && b.pressure(gas) > fr_p
    };
    if ok(fh) {
        return None;
    }
    let flo = rusanov_flux(ul, ur, gas);
    let blend = |t: f64| -> [f64; N] { std::array::from_fn(|c| t * fh[c] + (1.0 - t) * flo[c]) };
    if !ok(&flo) {
        return Some(flo);
    }
    // the admissible set is convex, so the passing thetas form [0, theta*]
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(&blend(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(blend(lo))
}

/// `-(F_{j+1/2} - F_{j-1/2}) / dx` for the physical cells of one line,
/// limited with `params.pp_lambda[0]` when set.
pub fn line_rhs_conservative<const N: usize>(
    cells: &[[f64; N]],
    tags: &[RegionTag],
    dx: f64,
    params: &ConservativeParams,
    out: &mut [[f64; N]],
) -> RhsCounters {
    line_rhs_limited(cells, tags, dx, params, params.pp_lambda.map(|l| l[0]), out)
}

fn line_rhs_limited<const N: usize>(
    cells: &[[f64; N]],
    tags: &[RegionTag],
    dx: f64,
    params: &ConservativeParams,
    lambda: Option<f64>,
    out: &mut [[f64; N]],
) -> RhsCounters {
    let mut counters = RhsCounters::default();
    let states = interface_states_line(cells, tags, dx, params, &mut counters);
    let fv = fv_flux_line(&states, tags, &params.gas, &mut counters);
    let mut f = aweno_flux_line(&fv, tags);
    if let Some(lambda) = lambda {
        for (p, fp) in f.iter_mut().enumerate() {
            let (l, r) = (&cells[GHOST + p - 1], &cells[GHOST + p]);
            if let Some(lim) = limit_flux(l, r, fp, lambda, &params.gas) {
                *fp = lim;
                counters.flux_limited += 1;
            }
        }
    }
    let inv = 1.0 / dx;
    for (j, o) in out.iter_mut().enumerate() {
        for c in 0..N {
            o[c] = -(f[j + 1][c] - f[j][c]) * inv;
        }
    }
    counters
}

/// Region maps for the active directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regions {
    pub x: RegionMap,
    pub y: Option<RegionMap>,
}

impl Regions {
    pub fn uniform(grid: &GridSpec, tag: RegionTag) -> Self {
        Self {
            x: RegionMap::uniform(grid, Direction::X, tag),
            y: grid.is_2d().then(|| RegionMap::uniform(grid, Direction::Y, tag)),
        }
    }
}

/// `dU/dt` on the physical cells (ghost entries are zero). `u` must have its
/// ghost layers filled. `periodic` flags the x and y directions.
pub fn rhs_conservative<const N: usize>(
    u: &Field<N>,
    regions: &Regions,
    grid: &GridSpec,
    params: &ConservativeParams,
    periodic: [bool; 2],
) -> (Field<N>, RhsCounters) {
    let mut out = Field::<N>::zeros(grid);
    let mut counters = sweep_add(u, grid, Direction::X, &mut out, |line, cells, o| {
        let mut tags = Vec::with_capacity(fv_len(grid.nx));
        regions.x.extended_line(line, periodic[0], &mut tags);
        line_rhs_limited(cells, &tags, grid.dx, params, params.pp_lambda.map(|l| l[0]), o)
    });
    if let Some(ry) = &regions.y {
        let cy = sweep_add(u, grid, Direction::Y, &mut out, |line, cells, o| {
            let mut tags = Vec::with_capacity(fv_len(grid.ny));
            ry.extended_line(line, periodic[1], &mut tags);
            line_rhs_limited(cells, &tags, grid.dy, params, params.pp_lambda.map(|l| l[1]), o)
        });
        counters = counters.merge(cy);
    }
    if params.gravity && N == 4 {
        for k in grid.rows() {
            for i in GHOST..GHOST + grid.nx {
                let s = *u.at(i, k);
                let o = out.at_mut(i, k);
                o[2] += s[0];
                o[N - 1] += s[2];
            }
        }
    }
    (out, counters)
}
