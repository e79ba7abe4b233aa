//! Ghost-layer fills.

use serde::{Deserialize, Serialize};

use crate::eos::{prim_to_cons, GasModel, Primitive};
use crate::error::{Result, SolverError};
use crate::grid::{Field, GridSpec, GHOST};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum BoundaryKind {
    /// Zero-gradient outflow.
    Free,
    /// Solid wall: mirrored cells with the normal velocity negated.
    Reflective,
    /// Fixed primitive state `(rho, u[, v], p)` in every ghost layer.
    Dirichlet { state: Vec<f64> },
    Periodic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundarySpec {
    pub left: BoundaryKind,
    pub right: BoundaryKind,
    /// Ignored on 1-D meshes.
    pub bottom: BoundaryKind,
    pub top: BoundaryKind,
}

impl BoundarySpec {
    pub fn all(kind: BoundaryKind) -> Self {
        Self {
            left: kind.clone(),
            right: kind.clone(),
            bottom: kind.clone(),
            top: kind,
        }
    }

    /// Periodicity flags for `[x, y]`.
    pub fn periodic(&self) -> [bool; 2] {
        [
            self.left == BoundaryKind::Periodic,
            self.bottom == BoundaryKind::Periodic,
        ]
    }

    pub fn validate<const N: usize>(&self, gas: &GasModel, two_d: bool) -> Result<()> {
        let mut sides = vec![("left", &self.left), ("right", &self.right)];
        if two_d {
            sides.push(("bottom", &self.bottom));
            sides.push(("top", &self.top));
        }
        for (name, kind) in &sides {
            if let BoundaryKind::Dirichlet { state } = kind {
                if state.len() != N {
                    return Err(SolverError::Config(format!(
                        "{name} Dirichlet state has {} components, expected {N}",
                        state.len()
                    )));
                }
                let v = Primitive::<N>(std::array::from_fn(|c| state[c]));
                if !(v.rho() > 0.0 && v.p() > 0.0 && prim_to_cons(&v, gas).is_admissible(gas)) {
                    return Err(SolverError::Config(format!("{name} Dirichlet state is not admissible")));
                }
            }
        }
        let pair = |a: &BoundaryKind, b: &BoundaryKind| (*a == BoundaryKind::Periodic) == (*b == BoundaryKind::Periodic);
        if !pair(&self.left, &self.right) || (two_d && !pair(&self.bottom, &self.top)) {
            return Err(SolverError::Config("periodic boundaries must be set on both opposite sides".into()));
        }
        Ok(())
    }
}

/// What a field holds; decides how Dirichlet states are written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vars {
    Conserved,
    Primitive,
}

fn dirichlet_value<const N: usize>(state: &[f64], vars: Vars, gas: &GasModel) -> [f64; N] {
    let v = Primitive::<N>(std::array::from_fn(|c| state[c]));
    match vars {
        Vars::Primitive => v.0,
        Vars::Conserved => prim_to_cons(&v, gas).0,
    }
}

/// Fill every ghost layer. x-ghosts are set on physical rows first, then
/// y-ghosts on full padded rows, so corners follow the y rule.
pub fn fill_ghosts<const N: usize>(field: &mut Field<N>, spec: &BoundarySpec, grid: &GridSpec, vars: Vars, gas: &GasModel) {
    let nx = grid.nx;
    for k in grid.rows() {
        let row = field.row_mut(k);
        fill_line(row, nx, 1, &spec.left, &spec.right, vars, gas);
    }
    if grid.is_2d() {
        let ny = grid.ny;
        let px = grid.px();
        for i in 0..px {
            let mut col: Vec<[f64; N]> = (0..grid.py()).map(|k| *field.at(i, k)).collect();
            fill_line(&mut col, ny, 2, &spec.bottom, &spec.top, vars, gas);
            for k in (0..GHOST).chain(GHOST + ny..grid.py()) {
                *field.at_mut(i, k) = col[k];
            }
        }
    }
}

/// Fill ghosts of one padded line of `n` physical cells. `normal` is the
/// component negated at walls.
fn fill_line<const N: usize>(
    line: &mut [[f64; N]],
    n: usize,
    normal: usize,
    lo: &BoundaryKind,
    hi: &BoundaryKind,
    vars: Vars,
    gas: &GasModel,
) {
    for l in 1..=GHOST {
        let g = GHOST - l;
        line[g] = match lo {
            BoundaryKind::Free => line[GHOST],
            BoundaryKind::Reflective => {
                let mut s = line[GHOST + l - 1];
                s[normal] = -s[normal];
                s
            }
            BoundaryKind::Dirichlet { state } => dirichlet_value(state, vars, gas),
            BoundaryKind::Periodic => line[GHOST + n - l],
        };
        let g = GHOST + n - 1 + l;
        line[g] = match hi {
            BoundaryKind::Free => line[GHOST + n - 1],
            BoundaryKind::Reflective => {
                let mut s = line[GHOST + n - l];
                s[normal] = -s[normal];
                s
            }
            BoundaryKind::Dirichlet { state } => dirichlet_value(state, vars, gas),
            BoundaryKind::Periodic => line[GHOST + l - 1],
        };
    }
}
