//! Uniform Cartesian meshes and padded cell fields.

use serde::{Deserialize, Serialize};

use crate::eos::{cons_to_prim, prim_to_cons, Conserved, GasModel, Primitive};
use crate::error::{Result, SolverError};

/// Ghost layers on each side of every active direction. The A-WENO correction
/// at a physical interface reaches FV fluxes two interfaces away, and each FV
/// flux reads three cells on either side.
pub const GHOST: usize = 5;

/// Smallest mesh accepted per active direction.
pub const MIN_CELLS: usize = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    X,
    Y,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::X => "x",
            Direction::Y => "y",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    /// 0 for one-dimensional meshes.
    pub ny: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub dx: f64,
    pub dy: f64,
}

impl GridSpec {
    pub fn new_1d(nx: usize, xmin: f64, xmax: f64) -> Result<Self> {
        check_cells(nx, "nx")?;
        Ok(Self {
            nx,
            ny: 0,
            xmin,
            xmax,
            ymin: 0.0,
            ymax: 0.0,
            dx: (xmax - xmin) / nx as f64,
            dy: 0.0,
        })
    }

    pub fn new_2d(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self> {
        check_cells(nx, "nx")?;
        check_cells(ny, "ny")?;
        Ok(Self {
            nx,
            ny,
            xmin: x.0,
            xmax: x.1,
            ymin: y.0,
            ymax: y.1,
            dx: (x.1 - x.0) / nx as f64,
            dy: (y.1 - y.0) / ny as f64,
        })
    }

    pub fn is_2d(&self) -> bool {
        self.ny > 0
    }

    /// Padded extent in x.
    pub fn px(&self) -> usize {
        self.nx + 2 * GHOST
    }

    /// Padded extent in y (1 for 1-D meshes).
    pub fn py(&self) -> usize {
        if self.is_2d() {
            self.ny + 2 * GHOST
        } else {
            1
        }
    }

    /// Padded row indices holding physical cells.
    pub fn rows(&self) -> std::ops::Range<usize> {
        if self.is_2d() {
            GHOST..GHOST + self.ny
        } else {
            0..1
        }
    }

    /// Physical cell count.
    pub fn cells(&self) -> usize {
        self.nx * self.ny.max(1)
    }

    /// Center of physical cell `j` (0-based).
    pub fn x_center(&self, j: usize) -> f64 {
        self.xmin + (j as f64 + 0.5) * self.dx
    }

    pub fn y_center(&self, k: usize) -> f64 {
        self.ymin + (k as f64 + 0.5) * self.dy
    }

    /// Cell volume entering L1 norms and sums.
    pub fn cell_volume(&self) -> f64 {
        if self.is_2d() {
            self.dx * self.dy
        } else {
            self.dx
        }
    }
}

fn check_cells(n: usize, name: &str) -> Result<()> {
    if n < MIN_CELLS {
        Err(SolverError::Config(format!(
            "{name} = {n} is below the stencil minimum of {MIN_CELLS} cells"
        )))
    } else {
        Ok(())
    }
}

/// Cell-centered field on the padded mesh, row-major (`x` fastest).
#[derive(Clone, Debug, PartialEq)]
pub struct Field<const N: usize> {
    pub data: Vec<[f64; N]>,
    px: usize,
    py: usize,
}

impl<const N: usize> Field<N> {
    pub fn zeros(grid: &GridSpec) -> Self {
        Self::filled(grid, [0.0; N])
    }

    pub fn filled(grid: &GridSpec, value: [f64; N]) -> Self {
        Self {
            data: vec![value; grid.px() * grid.py()],
            px: grid.px(),
            py: grid.py(),
        }
    }

    #[inline]
    pub fn px(&self) -> usize {
        self.px
    }

    #[inline]
    pub fn py(&self) -> usize {
        self.py
    }

    #[inline]
    pub fn idx(&self, i: usize, k: usize) -> usize {
        k * self.px + i
    }

    #[inline]
    pub fn at(&self, i: usize, k: usize) -> &[f64; N] {
        &self.data[k * self.px + i]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, k: usize) -> &mut [f64; N] {
        &mut self.data[k * self.px + i]
    }

    pub fn row(&self, k: usize) -> &[[f64; N]] {
        &self.data[k * self.px..(k + 1) * self.px]
    }

    pub fn row_mut(&mut self, k: usize) -> &mut [[f64; N]] {
        &mut self.data[k * self.px..(k + 1) * self.px]
    }

    /// Value at physical cell `(j, k)`, 0-based.
    pub fn physical(&self, grid: &GridSpec, j: usize, k: usize) -> [f64; N] {
        let row = if grid.is_2d() { k + GHOST } else { 0 };
        *self.at(j + GHOST, row)
    }

    /// Iterate physical cells as `(j, k, value)` in row-major order.
    pub fn iter_physical<'a>(
        &'a self,
        grid: &'a GridSpec,
    ) -> impl Iterator<Item = (usize, usize, [f64; N])> + 'a {
        let ny = grid.ny.max(1);
        (0..ny).flat_map(move |k| (0..grid.nx).map(move |j| (j, k, self.physical(grid, j, k))))
    }

    /// Component sums over physical cells times the cell volume.
    pub fn totals(&self, grid: &GridSpec) -> [f64; N] {
        let mut acc = [0.0; N];
        for k in grid.rows() {
            let row = self.row(k);
            for cell in &row[GHOST..GHOST + grid.nx] {
                for c in 0..N {
                    acc[c] += cell[c];
                }
            }
        }
        let vol = grid.cell_volume();
        acc.map(|a| a * vol)
    }

    /// Interpret as conserved variables and convert every cell.
    pub fn to_primitive(&self, gas: &GasModel) -> Result<Field<N>> {
        let mut out = self.clone();
        for (n, (o, u)) in out.data.iter_mut().zip(&self.data).enumerate() {
            if u[0] == 0.0 {
                return Err(SolverError::ZeroDensity { cell: n });
            }
            *o = cons_to_prim(&Conserved(*u), gas).0;
        }
        Ok(out)
    }

    /// Interpret as primitive variables and convert every cell.
    pub fn to_conserved(&self, gas: &GasModel) -> Field<N> {
        let mut out = self.clone();
        for (o, v) in out.data.iter_mut().zip(&self.data) {
            *o = prim_to_cons(&Primitive(*v), gas).0;
        }
        out
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|c| c.iter().all(|x| x.is_finite()))
    }
}
