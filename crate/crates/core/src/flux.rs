//! Interface fluxes and the local characteristic machinery.
//!
//! All functions work in the x-direction on `N`-component states; y-direction
//! callers rotate their states first (see [`crate::eos::rotate`]).

use crate::eos::{cons_to_prim, flux_from_both, Conserved, GasModel, Primitive};
use crate::stencil::minmod;

/// Lower bound on the magnitude of the one-sided speeds.
pub const SPEED_FLOOR: f64 = 1e-10;

/// Relative size below which the LDCU contact-speed denominator is treated as zero.
const LDCU_DEGENERATE: f64 = 1e-12;

/// One-sided local speeds of propagation, `a_minus < 0 < a_plus`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpeedPair {
    pub a_plus: f64,
    pub a_minus: f64,
}

impl SpeedPair {
    #[inline]
    pub fn max_abs(&self) -> f64 {
        self.a_plus.max(-self.a_minus)
    }
}

/// `a+ = max(u- + c-, u+ + c+, delta)`, `a- = min(u- - c-, u+ - c+, -delta)`.
/// Sound speeds use the clamped radicand so the pair stays ordered even on
/// inadmissible primitive states.
#[inline]
pub fn local_speeds<const N: usize>(vl: &Primitive<N>, vr: &Primitive<N>, gas: &GasModel) -> SpeedPair {
    let cl = gas.sound_speed_clamped(vl.rho(), vl.p());
    let cr = gas.sound_speed_clamped(vr.rho(), vr.p());
    let (ul, ur) = (vl.u(), vr.u());
    SpeedPair {
        a_plus: (ul + cl).max(ur + cr).max(SPEED_FLOOR),
        a_minus: (ul - cl).min(ur - cr).min(-SPEED_FLOOR),
    }
}

/// Which finite-volume flux produced an interface value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FluxKind {
    Cu,
    Ldcu,
    /// LDCU requested but its star states were degenerate; CU was used.
    LdcuFallback,
}

/// Central-upwind flux with the minmod anti-diffusion term.
#[inline]
pub fn cu_flux<const N: usize>(ul: &Conserved<N>, ur: &Conserved<N>, gas: &GasModel) -> [f64; N] {
    let vl = cons_to_prim(ul, gas);
    let vr = cons_to_prim(ur, gas);
    let fl = flux_from_both(ul, &vl);
    let fr = flux_from_both(ur, &vr);
    let s = local_speeds(&vl, &vr, gas);
    cu_from_parts(ul, ur, &fl, &fr, s)
}

#[inline]
fn cu_from_parts<const N: usize>(
    ul: &Conserved<N>,
    ur: &Conserved<N>,
    fl: &[f64; N],
    fr: &[f64; N],
    s: SpeedPair,
) -> [f64; N] {
    let (ap, am) = (s.a_plus, s.a_minus);
    let inv = 1.0 / (ap - am);
    let mut out = [0.0; N];
    for c in 0..N {
        let star = (ap * ur.0[c] - am * ul.0[c] - (fr[c] - fl[c])) * inv;
        let q = minmod(ur.0[c] - star, star - ul.0[c]);
        out[c] = (ap * fl[c] - am * fr[c]) * inv + ap * am * inv * (ur.0[c] - ul.0[c] - q);
    }
    out
}

/// Anti-diffusion term `q` of [`cu_flux`], exposed for property checks.
pub fn cu_antidiffusion<const N: usize>(ul: &Conserved<N>, ur: &Conserved<N>, gas: &GasModel) -> [f64; N] {
    let vl = cons_to_prim(ul, gas);
    let vr = cons_to_prim(ur, gas);
    let fl = flux_from_both(ul, &vl);
    let fr = flux_from_both(ur, &vr);
    let s = local_speeds(&vl, &vr, gas);
    let inv = 1.0 / (s.a_plus - s.a_minus);
    std::array::from_fn(|c| {
        let star = (s.a_plus * ur.0[c] - s.a_minus * ul.0[c] - (fr[c] - fl[c])) * inv;
        minmod(ur.0[c] - star, star - ul.0[c])
    })
}

/// Star states of the two-state Riemann fan behind [`ldcu_flux`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FanStates<const N: usize> {
    pub speeds: SpeedPair,
    pub contact_speed: f64,
    pub left: Conserved<N>,
    pub right: Conserved<N>,
}

/// Build the fan `a- < u* < a+` with star states `U*_L`, `U*_R`.
///
/// Density and momentum follow from fan conservation with a shared contact
/// velocity `u*`; transverse velocities stay with their side of the contact;
/// the shared pressure `p*` closes the energy balance. Returns `None` when the
/// fan is degenerate (vanishing mass contrast, non-positive star density or
/// pressure).
pub fn ldcu_fan<const N: usize>(ul: &Conserved<N>, ur: &Conserved<N>, gas: &GasModel) -> Option<FanStates<N>> {
    let vl = cons_to_prim(ul, gas);
    let vr = cons_to_prim(ur, gas);
    let fl = flux_from_both(ul, &vl);
    let fr = flux_from_both(ur, &vr);
    let s = local_speeds(&vl, &vr, gas);
    fan_from_parts(ul, ur, &vl, &vr, &fl, &fr, s)
}

#[inline]
fn fan_from_parts<const N: usize>(
    ul: &Conserved<N>,
    ur: &Conserved<N>,
    vl: &Primitive<N>,
    vr: &Primitive<N>,
    fl: &[f64; N],
    fr: &[f64; N],
    s: SpeedPair,
) -> Option<FanStates<N>> {
    let (ap, am) = (s.a_plus, s.a_minus);
    let w: [f64; N] = std::array::from_fn(|c| ap * ur.0[c] - am * ul.0[c] - (fr[c] - fl[c]));
    let scale = ap * ur.0[0] - am * ul.0[0];
    if !(w[0].abs() > LDCU_DEGENERATE * scale.abs()) {
        return None;
    }
    let ustar = w[1] / w[0];
    if !(ustar > am && ustar < ap) {
        return None;
    }
    // mass fluxes through the two acoustic waves; the ratio forms keep
    // rho*_L = rho_L bitwise when u* = u_L
    let ml = vl.rho() * (vl.u() - am);
    let mr = vr.rho() * (ap - vr.u());
    let rho_l = vl.rho() * ((vl.u() - am) / (ustar - am));
    let rho_r = vr.rho() * ((ap - vr.u()) / (ap - ustar));
    if !(rho_l > 0.0 && rho_r > 0.0) {
        return None;
    }
    let mut transverse_ke = 0.0;
    for k in 2..N - 1 {
        transverse_ke += ml * vl.0[k] * vl.0[k] + mr * vr.0[k] * vr.0[k];
    }
    // p*/(gamma-1) as an increment on the left internal energy, so a
    // stationary contact returns it unchanged
    let e = N - 1;
    let ke_l = 0.5 * vl.rho() * (1..e).map(|k| vl.0[k] * vl.0[k]).sum::<f64>();
    let base = ul.0[e] - ke_l;
    let num = (ap - am) * ke_l + ap * (ur.0[e] - ul.0[e]) - (fr[e] - fl[e])
        - 0.5 * ustar * ustar * w[0]
        - 0.5 * transverse_ke;
    let eint = base + num / (ap - am);
    if !(eint > 0.0) {
        return None;
    }
    let star = |rho: f64, v: &Primitive<N>| {
        let mut u = [0.0; N];
        u[0] = rho;
        u[1] = rho * ustar;
        let mut ke = ustar * ustar;
        for k in 2..e {
            u[k] = rho * v.0[k];
            ke += v.0[k] * v.0[k];
        }
        u[e] = eint + 0.5 * rho * ke;
        Conserved(u)
    };
    Some(FanStates {
        speeds: s,
        contact_speed: ustar,
        left: star(rho_l, vl),
        right: star(rho_r, vr),
    })
}

/// Low-dissipation central-upwind flux: the flux of the fan region containing
/// the interface. Isolated contact waves are transported exactly. Falls back
/// to [`cu_flux`] for degenerate fans.
#[inline]
pub fn ldcu_flux<const N: usize>(ul: &Conserved<N>, ur: &Conserved<N>, gas: &GasModel) -> [f64; N] {
    ldcu_flux_kind(ul, ur, gas).0
}

#[inline]
pub fn ldcu_flux_kind<const N: usize>(
    ul: &Conserved<N>,
    ur: &Conserved<N>,
    gas: &GasModel,
) -> ([f64; N], FluxKind) {
    let vl = cons_to_prim(ul, gas);
    let vr = cons_to_prim(ur, gas);
    let fl = flux_from_both(ul, &vl);
    let fr = flux_from_both(ur, &vr);
    let s = local_speeds(&vl, &vr, gas);
    match fan_from_parts(ul, ur, &vl, &vr, &fl, &fr, s) {
        Some(fan) => {
            let f = if fan.contact_speed >= 0.0 {
                std::array::from_fn(|c| fl[c] + s.a_minus * (fan.left.0[c] - ul.0[c]))
            } else {
                std::array::from_fn(|c| fr[c] + s.a_plus * (fan.right.0[c] - ur.0[c]))
            };
            (f, FluxKind::Ldcu)
        }
        None => (cu_from_parts(ul, ur, &fl, &fr, s), FluxKind::LdcuFallback),
    }
}

/// Interface-averaged state used to linearize the flux Jacobian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeAverage<const N: usize> {
    /// Velocities; index 0 is the normal component.
    pub vel: [f64; 3],
    pub enthalpy: f64,
    pub c2: f64,
}

/// Roe average of two primitive states. Falls back to the arithmetic mean of
/// the primitive variables when the averaged sound speed is not real.
pub fn roe_average<const N: usize>(vl: &Primitive<N>, vr: &Primitive<N>, gas: &GasModel) -> RoeAverage<N> {
    let gm1 = gas.gamma - 1.0;
    let enthalpy = |v: &Primitive<N>| {
        let mut q2 = 0.0;
        for k in 1..N - 1 {
            q2 += v.0[k] * v.0[k];
        }
        gas.gamma / gm1 * v.p() / v.rho() + 0.5 * q2
    };
    let s = vl.rho().max(0.0).sqrt();
    let t = vr.rho().max(0.0).sqrt();
    let inv = 1.0 / (s + t);
    let mut vel = [0.0; 3];
    for k in 1..N - 1 {
        vel[k - 1] = (s * vl.0[k] + t * vr.0[k]) * inv;
    }
    let h = (s * enthalpy(vl) + t * enthalpy(vr)) * inv;
    let q2: f64 = vel.iter().map(|x| x * x).sum();
    let c2 = gm1 * (h - 0.5 * q2);
    if c2 > 0.0 && c2.is_finite() {
        return RoeAverage { vel, enthalpy: h, c2 };
    }
    let mean = Primitive::<N>(std::array::from_fn(|c| 0.5 * (vl.0[c] + vr.0[c])));
    let mut vel = [0.0; 3];
    for k in 1..N - 1 {
        vel[k - 1] = mean.0[k];
    }
    let h = enthalpy(&mean);
    let q2: f64 = vel.iter().map(|x| x * x).sum();
    RoeAverage {
        vel,
        enthalpy: h,
        c2: gm1 * (h - 0.5 * q2),
    }
}

/// Right eigenvectors (columns) of the x-flux Jacobian at an averaged state,
/// their inverse, and the eigenvalues in ascending order
/// `u - c, u (xN-2), u + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CharBasis<const N: usize> {
    pub r: [[f64; N]; N],
    pub rinv: [[f64; N]; N],
    pub eigenvalues: [f64; N],
}

pub fn char_basis<const N: usize>(avg: &RoeAverage<N>, gas: &GasModel) -> CharBasis<N> {
    let c = avg.c2.sqrt();
    let u = avg.vel[0];
    let h = avg.enthalpy;
    let q2: f64 = avg.vel[..N - 2].iter().map(|x| x * x).sum();
    let gm1 = gas.gamma - 1.0;
    let b1 = gm1 / avg.c2;
    let b2 = 0.5 * b1 * q2;
    let last = N - 1;

    let mut r = [[0.0; N]; N];
    let mut rinv = [[0.0; N]; N];
    let mut eigenvalues = [u; N];
    eigenvalues[0] = u - c;
    eigenvalues[last] = u + c;

    // acoustic waves
    r[0][0] = 1.0;
    r[1][0] = u - c;
    r[last][0] = h - u * c;
    r[0][last] = 1.0;
    r[1][last] = u + c;
    r[last][last] = h + u * c;
    // entropy wave
    r[0][1] = 1.0;
    r[1][1] = u;
    r[last][1] = 0.5 * q2;
    for k in 2..last {
        let vk = avg.vel[k - 1];
        r[k][0] = vk;
        r[k][last] = vk;
        r[k][1] = vk;
    }
    // shear waves occupy columns 2..last
    for k in 2..last {
        r[k][k] = 1.0;
        r[last][k] = avg.vel[k - 1];
    }

    rinv[0][0] = 0.5 * (b2 + u / c);
    rinv[0][1] = 0.5 * (-b1 * u - 1.0 / c);
    rinv[0][last] = 0.5 * b1;
    rinv[last][0] = 0.5 * (b2 - u / c);
    rinv[last][1] = 0.5 * (-b1 * u + 1.0 / c);
    rinv[last][last] = 0.5 * b1;
    rinv[1][0] = 1.0 - b2;
    rinv[1][1] = b1 * u;
    rinv[1][last] = -b1;
    for k in 2..last {
        let vk = avg.vel[k - 1];
        rinv[0][k] = -0.5 * b1 * vk;
        rinv[last][k] = -0.5 * b1 * vk;
        rinv[1][k] = b1 * vk;
        rinv[k][0] = -vk;
        rinv[k][k] = 1.0;
    }
    CharBasis { r, rinv, eigenvalues }
}

impl<const N: usize> CharBasis<N> {
    #[inline]
    pub fn to_char(&self, u: &[f64; N]) -> [f64; N] {
        mat_vec(&self.rinv, u)
    }

    #[inline]
    pub fn from_char(&self, g: &[f64; N]) -> [f64; N] {
        mat_vec(&self.r, g)
    }
}

#[inline]
pub(crate) fn mat_vec<const N: usize>(m: &[[f64; N]; N], x: &[f64; N]) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        let mut acc = 0.0;
        for j in 0..N {
            acc += m[i][j] * x[j];
        }
        out[i] = acc;
    }
    out
}

/// Map a list of conserved states to characteristic variables.
pub fn to_char<const N: usize>(values: &[[f64; N]], basis: &CharBasis<N>) -> Vec<[f64; N]> {
    values.iter().map(|u| basis.to_char(u)).collect()
}

pub fn from_char<const N: usize>(values: &[[f64; N]], basis: &CharBasis<N>) -> Vec<[f64; N]> {
    values.iter().map(|g| basis.from_char(g)).collect()
}
