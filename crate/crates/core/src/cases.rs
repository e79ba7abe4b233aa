//! Benchmark registry and initial data.
//!
//! Initial data are point values at cell centers. A center lying exactly on
//! a break takes the state listed second (the `x >= break` side).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::boundary::{BoundaryKind, BoundarySpec};
use crate::eos::{prim_to_cons, GasModel, Primitive};
use crate::error::{Result, SolverError};
use crate::grid::{Field, GridSpec, GHOST};
use crate::indicator::AdaptionCoefficients;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum InitialData {
    /// Constant `left` for `x < x_shock`, else `(1 + amplitude sin(wavenumber x), 0, 1)`.
    ShockWave {
        x_shock: f64,
        left: [f64; 3],
        amplitude: f64,
        wavenumber: f64,
    },
    /// `states[m]` on `[breaks[m-1], breaks[m])`.
    Piecewise1D { breaks: Vec<f64>, states: Vec<[f64; 3]> },
    /// Four constant quadrants around `(x_mid, y_mid)`.
    Quadrants {
        x_mid: f64,
        y_mid: f64,
        ne: [f64; 4],
        nw: [f64; 4],
        sw: [f64; 4],
        se: [f64; 4],
    },
    /// `inside` where `x + y < threshold`, `outside` elsewhere.
    Diagonal {
        threshold: f64,
        inside: [f64; 4],
        outside: [f64; 4],
    },
    /// Heavy fluid over light fluid in hydrostatic balance under `+y` gravity,
    /// with a single-mode vertical velocity perturbation.
    RayleighTaylor { interface: f64 },
    /// `rho = 1 + amplitude sin(wavenumber x)` advected with constant `u`, `p`.
    SineDensity {
        amplitude: f64,
        wavenumber: f64,
        velocity: f64,
        pressure: f64,
    },
    Uniform { state: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct CaseSpec {
    pub name: String,
    pub description: String,
    pub dim: usize,
    pub x_range: (f64, f64),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_range: Option<(f64, f64)>,
    pub nx: usize,
    #[serde(default)]
    pub ny: usize,
    pub gamma: f64,
    pub boundary: BoundarySpec,
    pub kappas: AdaptionCoefficients,
    pub t_final: f64,
    #[serde(default)]
    pub gravity: bool,
    pub initial: InitialData,
}

fn kappas(rhou: f64, rhov: f64, p: f64) -> AdaptionCoefficients {
    AdaptionCoefficients {
        kappa_rhou: rhou,
        kappa_rhov: rhov,
        kappa_p: p,
    }
}

fn case_1d(name: &str, description: &str, x: (f64, f64), nx: usize, bc: BoundaryKind, k: AdaptionCoefficients, t: f64, init: InitialData) -> CaseSpec {
    CaseSpec {
        name: name.into(),
        description: description.into(),
        dim: 1,
        x_range: x,
        y_range: None,
        nx,
        ny: 0,
        gamma: 1.4,
        boundary: BoundarySpec::all(bc),
        kappas: k,
        t_final: t,
        gravity: false,
        initial: init,
    }
}

fn case_2d(name: &str, description: &str, x: (f64, f64), y: (f64, f64), n: (usize, usize), bc: BoundarySpec, k: AdaptionCoefficients, t: f64, init: InitialData) -> CaseSpec {
    CaseSpec {
        name: name.into(),
        description: description.into(),
        dim: 2,
        x_range: x,
        y_range: Some(y),
        nx: n.0,
        ny: n.1,
        gamma: 1.4,
        boundary: bc,
        kappas: k,
        t_final: t,
        gravity: false,
        initial: init,
    }
}

/// Every registered case.
pub fn registry() -> Vec<CaseSpec> {
    let free = BoundaryKind::Free;
    let wall = BoundaryKind::Reflective;
    let mut rt = case_2d(
        "ex6",
        "Rayleigh-Taylor instability with gravity",
        (0.0, 0.25),
        (0.0, 1.0),
        (150, 600),
        BoundarySpec {
            left: wall.clone(),
            right: wall.clone(),
            bottom: BoundaryKind::Dirichlet { state: vec![2.0, 0.0, 0.0, 1.0] },
            top: BoundaryKind::Dirichlet { state: vec![1.0, 0.0, 0.0, 2.5] },
        },
        kappas(1.2, 1.2, 1.0),
        2.95,
        InitialData::RayleighTaylor { interface: 0.5 },
    );
    rt.gamma = 5.0 / 3.0;
    rt.gravity = true;
    vec![
        case_1d(
            "ex1",
            "shock-density wave interaction",
            (-5.0, 15.0),
            600,
            free.clone(),
            kappas(1e-3, 1e-3, 1e-5),
            5.0,
            InitialData::ShockWave {
                x_shock: -4.0,
                left: [27.0 / 7.0, 4.0 * 35f64.sqrt() / 9.0, 31.0 / 3.0],
                amplitude: 0.2,
                wavenumber: 5.0,
            },
        ),
        case_1d(
            "ex2",
            "shock-entropy wave interaction",
            (-5.0, 5.0),
            400,
            free.clone(),
            kappas(5e-3, 5e-3, 1e-3),
            5.0,
            InitialData::ShockWave {
                x_shock: -4.5,
                left: [1.51695, 0.523346, 1.805],
                amplitude: 0.1,
                wavenumber: 20.0,
            },
        ),
        case_1d(
            "ex3-blast",
            "interacting blast waves",
            (0.0, 1.0),
            400,
            wall.clone(),
            kappas(1e-4, 1e-4, 5e-2),
            0.038,
            InitialData::Piecewise1D {
                breaks: vec![0.1, 0.9],
                states: vec![[1.0, 0.0, 1000.0], [1.0, 0.0, 0.01], [1.0, 0.0, 100.0]],
            },
        ),
        case_2d(
            "ex4-config3",
            "2-D Riemann problem, configuration 3",
            (0.0, 1.2),
            (0.0, 1.2),
            (400, 400),
            BoundarySpec::all(free.clone()),
            kappas(1e-2, 1e-2, 5e-2),
            1.0,
            InitialData::Quadrants {
                x_mid: 1.0,
                y_mid: 1.0,
                ne: [1.5, 0.0, 0.0, 1.5],
                nw: [0.5323, 1.206, 0.0, 0.3],
                sw: [0.138, 1.206, 1.206, 0.029],
                se: [0.5323, 0.0, 1.206, 0.3],
            },
        ),
        case_2d(
            "ex4-config12",
            "2-D Riemann problem, configuration 12",
            (0.0, 0.6),
            (0.0, 0.6),
            (400, 400),
            BoundarySpec::all(free.clone()),
            kappas(0.9, 0.9, 1.0),
            0.5,
            InitialData::Quadrants {
                x_mid: 0.5,
                y_mid: 0.5,
                ne: [0.5313, 0.0, 0.0, 0.4],
                nw: [1.0, 0.7276, 0.0, 1.0],
                sw: [0.8, 0.0, 0.0, 1.0],
                se: [1.0, 0.0, 0.7276, 1.0],
            },
        ),
        case_2d(
            "ex5",
            "implosion",
            (0.0, 0.3),
            (0.0, 0.3),
            (250, 250),
            BoundarySpec::all(wall),
            kappas(5e-2, 5e-2, 2e-2),
            2.5,
            InitialData::Diagonal {
                threshold: 0.15,
                inside: [0.125, 0.0, 0.0, 0.14],
                outside: [1.0, 0.0, 0.0, 1.0],
            },
        ),
        rt,
        case_1d(
            "smooth-contact-advection",
            "periodic advection of a sine density wave (exact solution known)",
            (-1.0, 1.0),
            40,
            BoundaryKind::Periodic,
            AdaptionCoefficients::default(),
            2.0,
            InitialData::SineDensity {
                amplitude: 0.5,
                wavenumber: PI,
                velocity: 1.0,
                pressure: 1.0,
            },
        ),
    ]
}

pub fn case_names() -> Vec<String> {
    registry().into_iter().map(|c| c.name).collect()
}

pub fn case_lookup(name: &str) -> Result<CaseSpec> {
    registry()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| SolverError::UnknownCase {
            name: name.into(),
            available: case_names().join(", "),
        })
}

impl CaseSpec {
    pub fn validate(&self) -> Result<()> {
        let gas = GasModel::new(self.gamma)?;
        match self.dim {
            1 => self.boundary.validate::<3>(&gas, false)?,
            2 => {
                if self.y_range.is_none() {
                    return Err(SolverError::Config(format!("case `{}` is 2-D but has no y-range", self.name)));
                }
                self.boundary.validate::<4>(&gas, true)?
            }
            d => return Err(SolverError::Config(format!("unsupported dimension {d}"))),
        }
        let k = &self.kappas;
        if !(k.kappa_rhou > 0.0 && k.kappa_rhov > 0.0 && k.kappa_p > 0.0) {
            return Err(SolverError::Config("adaption coefficients must be positive".into()));
        }
        let expected = if self.dim == 1 { 3 } else { 4 };
        let width_ok = match &self.initial {
            InitialData::ShockWave { .. } | InitialData::Piecewise1D { .. } | InitialData::SineDensity { .. } => self.dim == 1,
            InitialData::Quadrants { .. } | InitialData::Diagonal { .. } | InitialData::RayleighTaylor { .. } => self.dim == 2,
            InitialData::Uniform { state } => state.len() == expected,
        };
        if !width_ok {
            return Err(SolverError::Config(format!("initial data of `{}` does not match dimension {}", self.name, self.dim)));
        }
        if let InitialData::Piecewise1D { breaks, states } = &self.initial {
            if states.len() != breaks.len() + 1 {
                return Err(SolverError::Config("piecewise data needs one more state than breaks".into()));
            }
        }
        Ok(())
    }

    pub fn gas(&self) -> GasModel {
        GasModel { gamma: self.gamma }
    }

    /// Mesh with optional overrides of the default cell counts.
    pub fn grid(&self, nx: Option<usize>, ny: Option<usize>) -> Result<GridSpec> {
        let nx = nx.unwrap_or(self.nx);
        match self.y_range {
            None => GridSpec::new_1d(nx, self.x_range.0, self.x_range.1),
            Some(y) => GridSpec::new_2d(nx, ny.unwrap_or(self.ny), self.x_range, y),
        }
    }

    /// Primitive state at `x` (1-D cases).
    pub fn primitive_1d(&self, x: f64) -> [f64; 3] {
        match &self.initial {
            InitialData::ShockWave {
                x_shock,
                left,
                amplitude,
                wavenumber,
            } => {
                if x < *x_shock {
                    *left
                } else {
                    [1.0 + amplitude * (wavenumber * x).sin(), 0.0, 1.0]
                }
            }
            InitialData::Piecewise1D { breaks, states } => {
                let m = breaks.iter().take_while(|&&b| x >= b).count();
                states[m]
            }
            InitialData::SineDensity {
                amplitude,
                wavenumber,
                velocity,
                pressure,
            } => [1.0 + amplitude * (wavenumber * x).sin(), *velocity, *pressure],
            InitialData::Uniform { state } => [state[0], state[1], state[2]],
            _ => [f64::NAN; 3],
        }
    }

    /// Primitive state at `(x, y)` (2-D cases).
    pub fn primitive_2d(&self, x: f64, y: f64) -> [f64; 4] {
        match &self.initial {
            InitialData::Quadrants {
                x_mid,
                y_mid,
                ne,
                nw,
                sw,
                se,
            } => match (x < *x_mid, y < *y_mid) {
                (false, false) => *ne,
                (true, false) => *nw,
                (true, true) => *sw,
                (false, true) => *se,
            },
            InitialData::Diagonal {
                threshold,
                inside,
                outside,
            } => {
                if x + y < *threshold {
                    *inside
                } else {
                    *outside
                }
            }
            InitialData::RayleighTaylor { interface } => {
                let (rho, p) = rt_hydrostatic(y, *interface);
                let c = (self.gamma * p / rho).sqrt();
                [rho, 0.0, -0.025 * c * (8.0 * PI * x).cos(), p]
            }
            InitialData::Uniform { state } => [state[0], state[1], state[2], state[3]],
            _ => [f64::NAN; 4],
        }
    }

    /// Exact solution where one is known, as primitive variables.
    pub fn exact_1d(&self, x: f64, t: f64) -> Option<[f64; 3]> {
        match &self.initial {
            InitialData::SineDensity { velocity, .. } if self.boundary.periodic()[0] => {
                let (a, b) = self.x_range;
                let xs = a + (x - velocity * t - a).rem_euclid(b - a);
                Some(self.primitive_1d(xs))
            }
            InitialData::Uniform { .. } => Some(self.primitive_1d(x)),
            _ => None,
        }
    }
}

/// Unperturbed `(rho, p)` of the Rayleigh-Taylor setup.
pub fn rt_hydrostatic(y: f64, interface: f64) -> (f64, f64) {
    if y < interface {
        (2.0, 2.0 * y + 1.0)
    } else {
        (1.0, y + 1.5)
    }
}

/// Conserved field sampled at cell centers of a 1-D mesh.
pub fn init_fields_1d(spec: &CaseSpec, grid: &GridSpec) -> Result<(Field<3>, Field<3>)> {
    check_dim(spec, grid, 1)?;
    let gas = spec.gas();
    let mut v = Field::<3>::zeros(grid);
    for j in 0..grid.nx {
        *v.at_mut(j + GHOST, 0) = spec.primitive_1d(grid.x_center(j));
    }
    let u = to_conserved_physical(&v, grid, &gas);
    Ok((u, v))
}

pub fn init_fields_2d(spec: &CaseSpec, grid: &GridSpec) -> Result<(Field<4>, Field<4>)> {
    check_dim(spec, grid, 2)?;
    let gas = spec.gas();
    let mut v = Field::<4>::zeros(grid);
    for k in 0..grid.ny {
        for j in 0..grid.nx {
            *v.at_mut(j + GHOST, k + GHOST) = spec.primitive_2d(grid.x_center(j), grid.y_center(k));
        }
    }
    let u = to_conserved_physical(&v, grid, &gas);
    Ok((u, v))
}

fn to_conserved_physical<const N: usize>(v: &Field<N>, grid: &GridSpec, gas: &GasModel) -> Field<N> {
    let mut u = Field::<N>::zeros(grid);
    for k in grid.rows() {
        for i in GHOST..GHOST + grid.nx {
            *u.at_mut(i, k) = prim_to_cons(&Primitive(*v.at(i, k)), gas).0;
        }
    }
    u
}

fn check_dim(spec: &CaseSpec, grid: &GridSpec, dim: usize) -> Result<()> {
    spec.validate()?;
    if spec.dim != dim || grid.is_2d() != (dim == 2) {
        return Err(SolverError::Config(format!("case `{}` is {}-D", spec.name, spec.dim)));
    }
    Ok(())
}
