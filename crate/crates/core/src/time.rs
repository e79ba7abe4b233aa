//! Time stepping and the adaptive run driver.

use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::boundary::{fill_ghosts, BoundarySpec, Vars};
use crate::conservative::{rhs_conservative, ConservativeParams, Regions};
use crate::eos::{cons_to_prim, Conserved, GasModel};
use crate::error::{Result, SolverError};
use crate::flux::local_speeds;
use crate::grid::{Direction, Field, GridSpec, GHOST};
use crate::indicator::{discrepancy_fields, region_map_from_indicator, AdaptionCoefficients, RegionTag};
use crate::primitive::rhs_primitive;

/// Shu-Osher stages `u_s = a u^n + b (u_{s-1} + c dt L(u_{s-1}))` as `(a, b, c)`.
pub const SSP_RK3: [(f64, f64, f64); 3] = [(0.0, 1.0, 1.0), (0.75, 0.25, 1.0), (1.0 / 3.0, 2.0 / 3.0, 1.0)];

/// One SSP-RK3 step. `stage` fills the ghost layers of its argument in place
/// and returns the right-hand side.
pub fn ssp_rk3<const N: usize, E>(
    u: &mut Field<N>,
    dt: f64,
    mut stage: impl FnMut(&mut Field<N>) -> std::result::Result<Field<N>, E>,
) -> std::result::Result<(), E> {
    let u0 = u.clone();
    for (a, b, c) in SSP_RK3 {
        let l = stage(u)?;
        for ((x, x0), lx) in u.data.iter_mut().zip(&u0.data).zip(&l.data) {
            for m in 0..N {
                x[m] = a * x0[m] + b * (x[m] + c * dt * lx[m]);
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Dual-formulation adaptive scheme.
    Adaptive,
    /// Ai-WENO-Z A-WENO everywhere (all interfaces RNC).
    Aweno,
    /// Evolve the primitive system alone; for debugging and accuracy checks.
    PrimitiveOnly,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Adaptive => "adaptive",
            Scheme::Aweno => "aweno",
            Scheme::PrimitiveOnly => "primitive-only",
        }
    }
}

impl FromStr for Scheme {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adaptive" => Ok(Scheme::Adaptive),
            "aweno" => Ok(Scheme::Aweno),
            "primitive-only" => Ok(Scheme::PrimitiveOnly),
            other => Err(SolverError::Config(format!(
                "unknown scheme `{other}` (expected adaptive, aweno or primitive-only)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub scheme: Scheme,
    pub cfl: f64,
    /// Detection runs on steps `s` (0-based) with `s % detect_every == 0`.
    pub detect_every: usize,
    pub kappas: AdaptionCoefficients,
    /// Freeze every interface at this tag and skip detection.
    pub force_tag: Option<RegionTag>,
    /// Constant time step instead of the CFL estimate.
    pub fixed_dt: Option<f64>,
    /// Gravity source in `+y` (2-D only).
    pub gravity: bool,
    /// Blend final fluxes toward a first-order flux where the step would
    /// otherwise lose positivity.
    pub positivity_limiter: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Adaptive,
            cfl: 0.45,
            detect_every: 3,
            kappas: AdaptionCoefficients::default(),
            force_tag: None,
            fixed_dt: None,
            gravity: false,
            positivity_limiter: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.detect_every == 0 {
            return Err(SolverError::Config("detect-every must be at least 1".into()));
        }
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return Err(SolverError::Config(format!("cfl must be positive, got {}", self.cfl)));
        }
        let k = &self.kappas;
        if !(k.kappa_rhou > 0.0 && k.kappa_rhov > 0.0 && k.kappa_p > 0.0) {
            return Err(SolverError::Config("adaption coefficients must be positive".into()));
        }
        if let Some(dt) = self.fixed_dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(SolverError::Config(format!("fixed dt must be positive, got {dt}")));
            }
        }
        Ok(())
    }
}

/// Diagnostics of one step. Region counts describe the maps in force after
/// the step, i.e. the fresh classification on detection steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepStats {
    pub step: usize,
    /// Time at the end of the step.
    pub t: f64,
    pub dt: f64,
    pub detected: bool,
    pub counts_x: [usize; 3],
    pub counts_y: Option<[usize; 3]>,
    pub positivity_fallbacks: usize,
    pub ldcu_fallbacks: usize,
    pub flux_limited: usize,
    /// The primitive step produced unusable data; the maps fell back to all-RNC.
    pub primitive_failure: bool,
    pub conservative_ms: f64,
    pub primitive_ms: f64,
    pub indicator_ms: f64,
    pub wall_ms: f64,
}

/// Accumulated counters over a run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunTotals {
    pub steps: usize,
    pub detections: usize,
    pub positivity_fallbacks: usize,
    pub ldcu_fallbacks: usize,
    pub flux_limited: usize,
    pub primitive_failures: usize,
    pub conservative_ms: f64,
    pub primitive_ms: f64,
    pub indicator_ms: f64,
    pub wall_ms: f64,
}

pub struct RunState<const N: usize> {
    pub t: f64,
    pub step: usize,
    pub u: Field<N>,
    pub regions: Regions,
    pub totals: RunTotals,
    pub history: Vec<StepStats>,
}

pub struct Solver<const N: usize> {
    pub grid: GridSpec,
    pub gas: GasModel,
    pub boundary: BoundarySpec,
    pub config: SolverConfig,
    pub state: RunState<N>,
    params: ConservativeParams,
}

/// Time step from the CFL condition, with one-sided speeds taken from the
/// cell states adjacent to every physical interface. `u` needs filled ghosts.
pub fn cfl_dt<const N: usize>(u: &Field<N>, gas: &GasModel, grid: &GridSpec, cfl: f64, step: usize) -> Result<f64> {
    let (sx, sy) = max_speeds(u, gas, grid, step)?;
    dt_from_speeds(sx, sy, grid, cfl, step)
}

fn dt_from_speeds(sx: f64, sy: f64, grid: &GridSpec, cfl: f64, step: usize) -> Result<f64> {
    let dt = if grid.is_2d() {
        cfl / (sx / grid.dx + sy / grid.dy)
    } else {
        cfl * grid.dx / sx
    };
    if dt.is_finite() && dt > 0.0 {
        Ok(dt)
    } else {
        Err(SolverError::NonFiniteSpeed { step })
    }
}

/// Largest one-sided local speeds over the x- and y-interfaces (`sy = 0` in 1-D).
pub fn max_speeds<const N: usize>(u: &Field<N>, gas: &GasModel, grid: &GridSpec, step: usize) -> Result<(f64, f64)> {
    let prim = |i: usize, k: usize| -> Result<_> {
        let c = Conserved(*u.at(i, k));
        if !c.is_admissible(gas) {
            return Err(positivity(step, i, k, &c, gas));
        }
        Ok(cons_to_prim(&c, gas))
    };
    let mut sx = 0.0f64;
    for k in grid.rows() {
        let mut left = prim(GHOST - 1, k)?;
        for i in GHOST..=GHOST + grid.nx {
            let right = prim(i, k)?;
            sx = sx.max(local_speeds(&left, &right, gas).max_abs());
            left = right;
        }
    }
    let mut sy = 0.0f64;
    if grid.is_2d() {
        for i in GHOST..GHOST + grid.nx {
            let mut below = rot_prim(prim(i, GHOST - 1)?);
            for k in GHOST..=GHOST + grid.ny {
                let above = rot_prim(prim(i, k)?);
                sy = sy.max(local_speeds(&below, &above, gas).max_abs());
                below = above;
            }
        }
    }
    Ok((sx, sy))
}

/// `dt / (h w)` per direction, `w` being the direction's share of
/// `sx/dx + sy/dy`.
pub fn limiter_lambdas(dt: f64, sx: f64, sy: f64, grid: &GridSpec) -> [f64; 2] {
    if !grid.is_2d() {
        return [dt / grid.dx, 0.0];
    }
    let (rx, ry) = (sx / grid.dx, sy / grid.dy);
    let total = rx + ry;
    let share = |r: f64| if total > 0.0 && r > 0.0 { r / total } else { 0.5 };
    [dt / (grid.dx * share(rx)), dt / (grid.dy * share(ry))]
}

fn rot_prim<const N: usize>(v: crate::eos::Primitive<N>) -> crate::eos::Primitive<N> {
    crate::eos::Primitive(crate::sweep::rot(v.0))
}

fn positivity<const N: usize>(step: usize, i: usize, k: usize, c: &Conserved<N>, gas: &GasModel) -> SolverError {
    SolverError::Positivity {
        step,
        i,
        k,
        rho: c.rho(),
        p: c.pressure(gas),
    }
}

impl<const N: usize> Solver<N> {
    /// `u0` holds conserved point values on the physical cells.
    pub fn new(grid: GridSpec, gas: GasModel, boundary: BoundarySpec, config: SolverConfig, u0: Field<N>) -> Result<Self> {
        config.validate()?;
        boundary.validate::<N>(&gas, grid.is_2d())?;
        if (N == 4) != grid.is_2d() {
            return Err(SolverError::Config(format!("{N}-component state on a {}-D mesh", if grid.is_2d() { 2 } else { 1 })));
        }
        let mut u = u0;
        fill_ghosts(&mut u, &boundary, &grid, Vars::Conserved, &gas);
        let initial = match (config.force_tag, config.scheme) {
            (Some(tag), _) => tag,
            // the first step runs the non-adaptive scheme
            _ => RegionTag::RNC,
        };
        let regions = Regions::uniform(&grid, initial);
        let mut params = ConservativeParams::new(gas);
        params.gravity = config.gravity;
        Ok(Self {
            grid,
            gas,
            boundary,
            config,
            state: RunState {
                t: 0.0,
                step: 0,
                u,
                regions,
                totals: RunTotals::default(),
                history: Vec::new(),
            },
            params,
        })
    }

    pub fn params(&self) -> &ConservativeParams {
        &self.params
    }

    fn detects(&self, step: usize) -> bool {
        self.config.scheme == Scheme::Adaptive && self.config.force_tag.is_none() && step % self.config.detect_every == 0
    }

    /// Advance by one step of at most `max_dt`.
    pub fn advance(&mut self, max_dt: f64) -> Result<StepStats> {
        let start = Instant::now();
        let step = self.state.step;
        let (grid, gas, bc) = (&self.grid, &self.gas, &self.boundary);
        let periodic = bc.periodic();
        fill_ghosts(&mut self.state.u, bc, grid, Vars::Conserved, gas);
        let (sx, sy) = max_speeds(&self.state.u, gas, grid, step)?;
        let dt = match self.config.fixed_dt {
            Some(dt) => dt,
            None => dt_from_speeds(sx, sy, grid, self.config.cfl, step)?,
        }
        .min(max_dt);
        let mut params = self.params;
        if self.config.positivity_limiter {
            params.pp_lambda = Some(limiter_lambdas(dt, sx, sy, grid));
        }

        let detect = self.detects(step);
        let mut stats = StepStats {
            step,
            t: 0.0,
            dt,
            detected: detect,
            counts_x: [0; 3],
            counts_y: None,
            positivity_fallbacks: 0,
            ldcu_fallbacks: 0,
            flux_limited: 0,
            primitive_failure: false,
            conservative_ms: 0.0,
            primitive_ms: 0.0,
            indicator_ms: 0.0,
            wall_ms: 0.0,
        };

        let vstart = if detect || self.config.scheme == Scheme::PrimitiveOnly {
            Some(self.state.u.to_primitive(gas)?)
        } else {
            None
        };

        if self.config.scheme != Scheme::PrimitiveOnly {
            let t0 = Instant::now();
            let regions = &self.state.regions;
            let params = &params;
            ssp_rk3(&mut self.state.u, dt, |u| -> Result<Field<N>> {
                fill_ghosts(u, bc, grid, Vars::Conserved, gas);
                let (l, c) = rhs_conservative(u, regions, grid, params, periodic);
                stats.positivity_fallbacks += c.positivity_fallbacks;
                stats.ldcu_fallbacks += c.ldcu_fallbacks;
                stats.flux_limited += c.flux_limited;
                Ok(l)
            })?;
            stats.conservative_ms = ms(t0);
        }

        if let Some(mut v) = vstart {
            let t0 = Instant::now();
            let gravity = self.config.gravity;
            let ok = ssp_rk3(&mut v, dt, |v| -> Result<Field<N>> {
                fill_ghosts(v, bc, grid, Vars::Primitive, gas);
                let (l, c) = rhs_primitive(v, grid, gas, gravity);
                if c.zero_density_nodes > 0 {
                    return Err(SolverError::ZeroDensity { cell: 0 });
                }
                Ok(l)
            })
            .is_ok()
                && v.all_finite();
            stats.primitive_ms = ms(t0);
            if self.config.scheme == Scheme::PrimitiveOnly {
                if !ok {
                    return Err(SolverError::NonFiniteSpeed { step });
                }
                self.state.u = v.to_conserved(gas);
            } else {
                let t1 = Instant::now();
                if ok {
                    let ind = discrepancy_fields(&self.state.u, &v, grid, gas);
                    let kap = &self.config.kappas;
                    self.state.regions.x = region_map_from_indicator(&ind, kap, grid, Direction::X, periodic[0]);
                    if grid.is_2d() {
                        self.state.regions.y = Some(region_map_from_indicator(&ind, kap, grid, Direction::Y, periodic[1]));
                    }
                } else {
                    stats.primitive_failure = true;
                    self.state.regions = Regions::uniform(grid, RegionTag::RNC);
                }
                stats.indicator_ms = ms(t1);
            }
        }

        self.check_positivity(step)?;
        self.state.t += dt;
        self.state.step += 1;
        stats.t = self.state.t;
        stats.counts_x = self.state.regions.x.counts();
        stats.counts_y = self.state.regions.y.as_ref().map(|m| m.counts());
        stats.wall_ms = ms(start);

        let tot = &mut self.state.totals;
        tot.steps += 1;
        tot.detections += detect as usize;
        tot.positivity_fallbacks += stats.positivity_fallbacks;
        tot.ldcu_fallbacks += stats.ldcu_fallbacks;
        tot.flux_limited += stats.flux_limited;
        tot.primitive_failures += stats.primitive_failure as usize;
        tot.conservative_ms += stats.conservative_ms;
        tot.primitive_ms += stats.primitive_ms;
        tot.indicator_ms += stats.indicator_ms;
        tot.wall_ms += stats.wall_ms;
        self.state.history.push(stats.clone());
        Ok(stats)
    }

    fn check_positivity(&self, step: usize) -> Result<()> {
        let u = &self.state.u;
        for k in self.grid.rows() {
            for i in GHOST..GHOST + self.grid.nx {
                let c = Conserved(*u.at(i, k));
                if !c.is_admissible(&self.gas) {
                    return Err(positivity(step, i - GHOST, k.saturating_sub(if self.grid.is_2d() { GHOST } else { 0 }), &c, &self.gas));
                }
            }
        }
        Ok(())
    }

    /// Step until `t_end` is reached exactly, calling `on_step` after each step.
    pub fn run_to(&mut self, t_end: f64, mut on_step: impl FnMut(&StepStats)) -> Result<()> {
        while self.state.t < t_end {
            let remaining = t_end - self.state.t;
            let stats = self.advance(remaining)?;
            on_step(&stats);
            if stats.dt >= remaining {
                self.state.t = t_end;
            }
        }
        Ok(())
    }

    /// Physical-cell conserved totals times the cell volume.
    pub fn totals(&self) -> [f64; N] {
        self.state.u.totals(&self.grid)
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}
