//! Ideal-gas model, state vectors and physical fluxes.
//!
//! States are fixed-size arrays: `N = 3` holds the 1-D system `(rho, rho u, E)`,
//! `N = 4` the 2-D system `(rho, rho u, rho v, E)`. Component 1 is always the
//! x-momentum (or x-velocity), component `N - 1` the energy (or pressure).
//! All fluxes here are x-direction fluxes; the y-direction is obtained by
//! swapping components 1 and 2 (see [`rotate`]).

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolverError};

/// Ideal gas with constant specific-heat ratio.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    pub gamma: f64,
}

impl GasModel {
    pub const AIR: GasModel = GasModel { gamma: 1.4 };

    pub fn new(gamma: f64) -> Result<Self> {
        if gamma > 1.0 && gamma.is_finite() {
            Ok(Self { gamma })
        } else {
            Err(SolverError::Config(format!("gamma must exceed 1, got {gamma}")))
        }
    }

    /// `c = sqrt(gamma p / rho)`. NaN for inadmissible input.
    #[inline]
    pub fn sound_speed(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * p / rho).sqrt()
    }

    /// Sound speed with a negative radicand clamped to zero. Only used on the
    /// evolved primitive solution, which may leave the admissible set.
    #[inline]
    pub fn sound_speed_clamped(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * p / rho).max(0.0).sqrt()
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::AIR
    }
}

/// Point value of the conserved variables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conserved<const N: usize>(pub [f64; N]);

/// Point value of the primitive variables `(rho, u[, v], p)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive<const N: usize>(pub [f64; N]);

pub type Conserved1D = Conserved<3>;
pub type Conserved2D = Conserved<4>;
pub type Primitive1D = Primitive<3>;
pub type Primitive2D = Primitive<4>;

impl<const N: usize> Conserved<N> {
    #[inline]
    pub fn rho(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn energy(&self) -> f64 {
        self.0[N - 1]
    }

    /// Pressure from the equation of state. Does not check admissibility.
    #[inline]
    pub fn pressure(&self, gas: &GasModel) -> f64 {
        let rho = self.0[0];
        let mut m2 = 0.0;
        for k in 1..N - 1 {
            m2 += self.0[k] * self.0[k];
        }
        (gas.gamma - 1.0) * (self.0[N - 1] - 0.5 * m2 / rho)
    }

    /// Physically admissible: finite, positive density and pressure.
    #[inline]
    pub fn is_admissible(&self, gas: &GasModel) -> bool {
        let p = self.pressure(gas);
        self.0[0] > 0.0 && p > 0.0 && p.is_finite()
    }
}

impl<const N: usize> Primitive<N> {
    #[inline]
    pub fn rho(&self) -> f64 {
        self.0[0]
    }

    /// Normal (x) velocity.
    #[inline]
    pub fn u(&self) -> f64 {
        self.0[1]
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.0[N - 1]
    }
}

/// Conserved to primitive. Requires `rho != 0`; callers that need a
/// diagnostic use [`crate::grid::Field::to_primitive`].
#[inline]
pub fn cons_to_prim<const N: usize>(u: &Conserved<N>, gas: &GasModel) -> Primitive<N> {
    let rho = u.0[0];
    let inv = 1.0 / rho;
    let mut v = [0.0; N];
    v[0] = rho;
    let mut ke = 0.0;
    for k in 1..N - 1 {
        v[k] = u.0[k] * inv;
        ke += v[k] * v[k];
    }
    v[N - 1] = (gas.gamma - 1.0) * (u.0[N - 1] - 0.5 * rho * ke);
    Primitive(v)
}

/// Primitive to conserved. Accepts inadmissible states.
#[inline]
pub fn prim_to_cons<const N: usize>(v: &Primitive<N>, gas: &GasModel) -> Conserved<N> {
    let rho = v.0[0];
    let mut u = [0.0; N];
    u[0] = rho;
    let mut ke = 0.0;
    for k in 1..N - 1 {
        u[k] = rho * v.0[k];
        ke += v.0[k] * v.0[k];
    }
    u[N - 1] = v.0[N - 1] / (gas.gamma - 1.0) + 0.5 * rho * ke;
    Conserved(u)
}

/// x-direction Euler flux `(rho u, rho u^2 + p, rho u v, (E + p) u)`.
#[inline]
pub fn phys_flux_x<const N: usize>(u: &Conserved<N>, gas: &GasModel) -> [f64; N] {
    let v = cons_to_prim(u, gas);
    flux_from_both(u, &v)
}

/// Flux when both representations are at hand.
#[inline]
pub(crate) fn flux_from_both<const N: usize>(u: &Conserved<N>, v: &Primitive<N>) -> [f64; N] {
    let vel = v.0[1];
    let p = v.0[N - 1];
    let mut f = [0.0; N];
    f[0] = u.0[1];
    for k in 1..N - 1 {
        f[k] = u.0[k] * vel;
    }
    f[1] += p;
    f[N - 1] = (u.0[N - 1] + p) * vel;
    f
}

/// y-direction flux of a 2-D state.
#[inline]
pub fn phys_flux_y(u: &Conserved2D, gas: &GasModel) -> [f64; 4] {
    let r = Conserved(rotate(u.0));
    rotate(phys_flux_x(&r, gas))
}

/// Swap the two momentum (velocity) components of a 2-D state. This maps
/// y-direction quantities onto the x-direction kernels and back.
#[inline]
pub fn rotate(mut a: [f64; 4]) -> [f64; 4] {
    a.swap(1, 2);
    a
}

/// Primitive-system flux in x: `(rho u, u^2/2, 0, p u)`.
#[inline]
pub fn prim_flux_x<const N: usize>(v: &Primitive<N>) -> [f64; N] {
    let u = v.0[1];
    let mut f = [0.0; N];
    f[0] = v.0[0] * u;
    f[1] = 0.5 * u * u;
    f[N - 1] = v.0[N - 1] * u;
    f
}
