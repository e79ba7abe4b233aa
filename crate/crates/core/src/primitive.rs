//! Right-hand side of the primitive system `V_t + F~(V)_x = B(V) V_x` in
//! global-flux form `V_t + (F~(V) - R)_x = 0`, `R_x = B(V) V_x`.
//!
//! Line layout follows [`crate::conservative`]: FV interfaces
//! `GHOST - 3 ..= GHOST + n + 1` are stored from index 0.

use crate::eos::{prim_flux_x, GasModel, Primitive};
use crate::flux::local_speeds;
use crate::grid::{Direction, Field, GridSpec, GHOST};
use crate::stencil::{aweno_correct, boole_integrate, cell_quadrature_nodes, interp5_minus, interp5_plus};
use crate::sweep::{sweep_add, Tally};

/// Index of the anchor `R = 0` (the left physical interface) in a line's
/// antiderivative array.
pub const ANCHOR: usize = 2;

/// `B(V) V_x` for the x-direction: `(0, -p_x/rho, -u v_x, -(gamma-1) p u_x)`.
#[inline]
pub fn eval_bvx<const N: usize>(v: &[f64; N], vx: &[f64; N], gas: &GasModel) -> [f64; N] {
    let mut out = [0.0; N];
    out[1] = -vx[N - 1] / v[0];
    for k in 2..N - 1 {
        out[k] = -v[1] * vx[k];
    }
    out[N - 1] = -(gas.gamma - 1.0) * v[N - 1] * vx[1];
    out
}

/// Boole-rule integral of `B(V) V_x` over the middle cell of `w`
/// (cells `j-2..=j+2`). Returns `None` if a node density vanishes.
pub fn cell_nonco_integral<const N: usize>(w: &[[f64; N]], dx: f64, gas: &GasModel) -> Option<[f64; N]> {
    let mut vals = [[0.0; N]; 5];
    let mut ders = [[0.0; N]; 5];
    for c in 0..N {
        let s: [f64; 5] = std::array::from_fn(|k| w[k][c]);
        let (v, d) = cell_quadrature_nodes(&s, dx);
        for q in 0..5 {
            vals[q][c] = v[q];
            ders[q][c] = d[q];
        }
    }
    let mut f = [[0.0; N]; 5];
    for q in 0..5 {
        if vals[q][0] == 0.0 {
            return None;
        }
        f[q] = eval_bvx(&vals[q], &ders[q], gas);
    }
    Some(std::array::from_fn(|c| {
        boole_integrate(&[f[0][c], f[1][c], f[2][c], f[3][c], f[4][c]], dx)
    }))
}

/// `R` with `R[m] - R[m - 1] = b[m - 1]` and `R[anchor] = 0`.
pub fn build_antiderivative<const N: usize>(b: &[[f64; N]], anchor: usize) -> Vec<[f64; N]> {
    let mut r = vec![[0.0; N]; b.len() + 1];
    for m in anchor + 1..r.len() {
        r[m] = std::array::from_fn(|c| r[m - 1][c] + b[m - 1][c]);
    }
    for m in (0..anchor).rev() {
        r[m] = std::array::from_fn(|c| r[m + 1][c] - b[m][c]);
    }
    r
}

/// Simplified path-conservative central-upwind flux of the global flux
/// `K = F~(V) - R` with a shared `R` at the interface.
#[inline]
pub fn primitive_fv_flux<const N: usize>(vl: &[f64; N], vr: &[f64; N], r: &[f64; N], gas: &GasModel) -> [f64; N] {
    let s = local_speeds(&Primitive(*vl), &Primitive(*vr), gas);
    let fl = prim_flux_x(&Primitive(*vl));
    let fr = prim_flux_x(&Primitive(*vr));
    let (ap, am) = (s.a_plus, s.a_minus);
    let inv = 1.0 / (ap - am);
    std::array::from_fn(|c| {
        let kl = fl[c] - r[c];
        let kr = fr[c] - r[c];
        (ap * kl - am * kr) * inv + ap * am * inv * (vr[c] - vl[c])
    })
}

/// Primitive-step events.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PrimCounters {
    pub zero_density_nodes: usize,
}

impl Tally for PrimCounters {
    fn merge(self, o: Self) -> Self {
        PrimCounters {
            zero_density_nodes: self.zero_density_nodes + o.zero_density_nodes,
        }
    }
}

/// Global fluxes `K` at the FV interfaces of one padded line.
pub fn global_flux_line<const N: usize>(cells: &[[f64; N]], dx: f64, gas: &GasModel, counters: &mut PrimCounters) -> Vec<[f64; N]> {
    let n = cells.len() - 2 * GHOST;
    // B for cells GHOST-2 ..= GHOST+n+1
    let b: Vec<[f64; N]> = (GHOST - 2..=GHOST + n + 1)
        .map(|c| {
            cell_nonco_integral(&cells[c - 2..=c + 2], dx, gas).unwrap_or_else(|| {
                counters.zero_density_nodes += 1;
                [f64::NAN; N]
            })
        })
        .collect();
    let r = build_antiderivative(&b, ANCHOR);
    r.iter()
        .enumerate()
        .map(|(m, rm)| {
            let i = GHOST - 3 + m;
            let mut vl = [0.0; N];
            let mut vr = [0.0; N];
            for c in 0..N {
                let s: [f64; 6] = std::array::from_fn(|k| cells[i - 2 + k][c]);
                vl[c] = interp5_minus(&s);
                vr[c] = interp5_plus(&s);
            }
            primitive_fv_flux(&vl, &vr, rm, gas)
        })
        .collect()
}

/// `-(K_{j+1/2} - K_{j-1/2}) / dx` with the A-WENO correction at every interface.
pub fn line_rhs_primitive<const N: usize>(cells: &[[f64; N]], dx: f64, gas: &GasModel, out: &mut [[f64; N]]) -> PrimCounters {
    let mut counters = PrimCounters::default();
    let k = global_flux_line(cells, dx, gas, &mut counters);
    let n = out.len();
    let corrected: Vec<[f64; N]> = (0..=n)
        .map(|p| {
            let m = p + 2;
            std::array::from_fn(|c| aweno_correct([k[m - 2][c], k[m - 1][c], k[m][c], k[m + 1][c], k[m + 2][c]]))
        })
        .collect();
    let inv = 1.0 / dx;
    for (j, o) in out.iter_mut().enumerate() {
        for c in 0..N {
            o[c] = -(corrected[j + 1][c] - corrected[j][c]) * inv;
        }
    }
    counters
}

/// `dV/dt` on the physical cells. With `gravity`, the source `(0, 0, 1, 0)`
/// is added (2-D only).
pub fn rhs_primitive<const N: usize>(
    v: &Field<N>,
    grid: &GridSpec,
    gas: &GasModel,
    gravity: bool,
) -> (Field<N>, PrimCounters) {
    let mut out = Field::<N>::zeros(grid);
    let mut counters = sweep_add(v, grid, Direction::X, &mut out, |_, cells, o| {
        line_rhs_primitive(cells, grid.dx, gas, o)
    });
    if grid.is_2d() {
        let cy = sweep_add(v, grid, Direction::Y, &mut out, |_, cells, o| {
            line_rhs_primitive(cells, grid.dy, gas, o)
        });
        counters = counters.merge(cy);
    }
    if gravity && N == 4 {
        for k in grid.rows() {
            for i in GHOST..GHOST + grid.nx {
                out.at_mut(i, k)[2] += 1.0;
            }
        }
    }
    (out, counters)
}
