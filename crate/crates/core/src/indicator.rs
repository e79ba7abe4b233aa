//! Dual-formulation smoothness indicator and interface classification.

use serde::{Deserialize, Serialize};

use crate::eos::{cons_to_prim, prim_to_cons, Conserved, GasModel, Primitive};
use crate::grid::{Direction, Field, GridSpec};

/// Interface class. The numeric codes are the ones written to region files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionTag {
    /// Smooth: unlimited interpolation, CU flux, A-WENO correction.
    S = 0,
    /// Rough, near a contact: SBM-limited linear reconstruction, LDCU flux.
    RC = 1,
    /// Rough elsewhere: Ai-WENO-Z interpolation, CU flux, A-WENO correction.
    RNC = 2,
}

impl RegionTag {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(c: u8) -> Option<Self> {
        match c {
            0 => Some(RegionTag::S),
            1 => Some(RegionTag::RC),
            2 => Some(RegionTag::RNC),
            _ => None,
        }
    }
}

/// One tag per physical interface along `dir`. A line is a grid row for x
/// and a grid column for y; interface `p` of a line separates physical
/// cells `p - 1` and `p`, so each line holds `n + 1` tags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionMap {
    pub dir: Direction,
    /// Physical cells along `dir`.
    pub n: usize,
    pub lines: usize,
    pub tags: Vec<RegionTag>,
}

impl RegionMap {
    pub fn uniform(grid: &GridSpec, dir: Direction, tag: RegionTag) -> Self {
        let (n, lines) = line_shape(grid, dir);
        Self {
            dir,
            n,
            lines,
            tags: vec![tag; (n + 1) * lines],
        }
    }

    #[inline]
    pub fn get(&self, line: usize, p: usize) -> RegionTag {
        self.tags[line * (self.n + 1) + p]
    }

    pub fn set(&mut self, line: usize, p: usize, tag: RegionTag) {
        self.tags[line * (self.n + 1) + p] = tag;
    }

    pub fn line(&self, line: usize) -> &[RegionTag] {
        &self.tags[line * (self.n + 1)..(line + 1) * (self.n + 1)]
    }

    /// Counts of `[S, RC, RNC]`.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0; 3];
        for t in &self.tags {
            c[t.code() as usize] += 1;
        }
        c
    }

    /// Tags for interfaces `-2 ..= n + 2` of a line (the FV-flux halo of the
    /// correction stencil). Ghost interfaces take the nearest physical tag,
    /// or wrap around on periodic lines.
    pub fn extended_line(&self, line: usize, periodic: bool, out: &mut Vec<RegionTag>) {
        let tags = self.line(line);
        let n = self.n as isize;
        out.clear();
        for p in -2..=n + 2 {
            let q = if periodic { p.rem_euclid(n) } else { p.clamp(0, n) };
            out.push(tags[q as usize]);
        }
    }
}

/// Physical cells along `dir` and the number of lines.
pub fn line_shape(grid: &GridSpec, dir: Direction) -> (usize, usize) {
    match dir {
        Direction::X => (grid.nx, grid.ny.max(1)),
        Direction::Y => (grid.ny, grid.nx),
    }
}

/// Adaption coefficients. `kappa_rhov` is ignored in one dimension.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptionCoefficients {
    pub kappa_rhou: f64,
    pub kappa_rhov: f64,
    pub kappa_p: f64,
}

impl Default for AdaptionCoefficients {
    fn default() -> Self {
        Self {
            kappa_rhou: 1.0,
            kappa_rhov: 1.0,
            kappa_p: 1.0,
        }
    }
}

/// Squared discrepancies per physical cell, row-major with `x` fastest.
/// `eps_rhov` is empty in one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorField {
    pub nx: usize,
    pub ny: usize,
    pub eps_rhou: Vec<f64>,
    pub eps_rhov: Vec<f64>,
    pub eps_p: Vec<f64>,
}

/// `(rho u)` and `p` discrepancies between `U` and the conserved image of
/// `V*`, squared.
pub fn discrepancy_fields<const N: usize>(
    u: &Field<N>,
    vstar: &Field<N>,
    grid: &GridSpec,
    gas: &GasModel,
) -> IndicatorField {
    let cells = grid.cells();
    let mut eps_rhou = Vec::with_capacity(cells);
    let mut eps_rhov = Vec::with_capacity(if N == 4 { cells } else { 0 });
    let mut eps_p = Vec::with_capacity(cells);
    for ((j, k, uc), (_, _, vc)) in u.iter_physical(grid).zip(vstar.iter_physical(grid)) {
        debug_assert!(j < grid.nx && k < grid.ny.max(1));
        let us = prim_to_cons(&Primitive(vc), gas);
        let pu = cons_to_prim(&Conserved(uc), gas).p();
        eps_rhou.push(sq(uc[1] - us.0[1]));
        if N == 4 {
            eps_rhov.push(sq(uc[2] - us.0[2]));
        }
        eps_p.push(sq(pu - vc[N - 1]));
    }
    IndicatorField {
        nx: grid.nx,
        ny: grid.ny.max(1),
        eps_rhou,
        eps_rhov,
        eps_p,
    }
}

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

const SMOOTHING: [f64; 5] = [1.0, 4.0, 8.0, 4.0, 1.0];

/// Smooth one raw component along `dir` with the `(1,4,8,4,1)/18` stencil and
/// return it with its mean over physical cells. Cells outside the domain take
/// the nearest physical value, or wrap on periodic directions.
pub fn smooth_and_average(
    raw: &[f64],
    nx: usize,
    ny: usize,
    dir: Direction,
    periodic: bool,
) -> (Vec<f64>, f64) {
    let mut out = vec![0.0; raw.len()];
    let (n, stride) = match dir {
        Direction::X => (nx as isize, 1usize),
        Direction::Y => (ny as isize, nx),
    };
    let index = |p: isize| -> usize {
        if periodic {
            p.rem_euclid(n) as usize
        } else {
            p.clamp(0, n - 1) as usize
        }
    };
    for k in 0..ny {
        for j in 0..nx {
            let (base, pos) = match dir {
                Direction::X => (k * nx, j as isize),
                Direction::Y => (j, k as isize),
            };
            let mut acc = 0.0;
            for (m, w) in SMOOTHING.iter().enumerate() {
                acc += w * raw[base + index(pos + m as isize - 2) * stride];
            }
            out[k * nx + j] = acc / 18.0;
        }
    }
    let avg = out.iter().sum::<f64>() / out.len() as f64;
    (out, avg)
}

/// Classify every physical interface along `dir`.
///
/// `mom` and `p` are smoothed cell fields. Interface values are the maximum of
/// the two adjacent cells; boundary interfaces see one physical neighbor,
/// or the wrapped neighbor on periodic directions.
#[allow(clippy::too_many_arguments)]
pub fn classify(
    mom: &[f64],
    mom_avg: f64,
    p: &[f64],
    p_avg: f64,
    kappa_mom: f64,
    kappa_p: f64,
    grid: &GridSpec,
    dir: Direction,
    periodic: bool,
) -> RegionMap {
    let mut map = RegionMap::uniform(grid, dir, RegionTag::S);
    let nx = grid.nx;
    let (n, lines) = line_shape(grid, dir);
    let thr_mom = kappa_mom * mom_avg;
    let thr_p = kappa_p * p_avg;
    for line in 0..lines {
        let cell = |q: usize| match dir {
            Direction::X => line * nx + q,
            Direction::Y => q * nx + line,
        };
        for iface in 0..=n {
            let (a, b) = neighbors(iface, n, periodic);
            let em = mom[cell(a)].max(mom[cell(b)]);
            let ep = p[cell(a)].max(p[cell(b)]);
            let tag = if em <= thr_mom {
                RegionTag::S
            } else if ep <= thr_p {
                RegionTag::RC
            } else {
                RegionTag::RNC
            };
            map.set(line, iface, tag);
        }
    }
    map
}

fn neighbors(iface: usize, n: usize, periodic: bool) -> (usize, usize) {
    if iface == 0 || iface == n {
        if periodic {
            (n - 1, 0)
        } else if iface == 0 {
            (0, 0)
        } else {
            (n - 1, n - 1)
        }
    } else {
        (iface - 1, iface)
    }
}

/// Full indicator pass for one direction: smooth, average, classify.
pub fn region_map_from_indicator(
    field: &IndicatorField,
    kappas: &AdaptionCoefficients,
    grid: &GridSpec,
    dir: Direction,
    periodic: bool,
) -> RegionMap {
    let (raw_mom, kappa_mom) = match dir {
        Direction::X => (&field.eps_rhou, kappas.kappa_rhou),
        Direction::Y => (&field.eps_rhov, kappas.kappa_rhov),
    };
    let (sm, am) = smooth_and_average(raw_mom, field.nx, field.ny, dir, periodic);
    let (sp, ap) = smooth_and_average(&field.eps_p, field.nx, field.ny, dir, periodic);
    classify(&sm, am, &sp, ap, kappa_mom, kappas.kappa_p, grid, dir, periodic)
}
