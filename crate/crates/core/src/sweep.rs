//! Dimension-by-dimension sweeps: hand each grid line to an x-direction
//! kernel and gather the per-cell results.
//!
//! y-lines are passed with components 1 and 2 swapped, so every kernel only
//! ever sees x-direction data.

use rayon::prelude::*;

use crate::grid::{Direction, Field, GridSpec, GHOST};

/// Swap the two velocity-like components of a 2-D state; identity in 1-D.
#[inline]
pub fn rot<const N: usize>(mut a: [f64; N]) -> [f64; N] {
    if N == 4 {
        a.swap(1, 2);
    }
    a
}

/// Counters merged across lines.
pub trait Tally: Default + Send {
    fn merge(self, other: Self) -> Self;
}

/// Apply `kernel(line, padded_line, out)` to every line along `dir` and add
/// `out` into the physical cells of `acc`. `out` has one entry per physical
/// cell of the line and arrives zeroed.
pub fn sweep_add<const N: usize, C, K>(
    field: &Field<N>,
    grid: &GridSpec,
    dir: Direction,
    acc: &mut Field<N>,
    kernel: K,
) -> C
where
    C: Tally,
    K: Fn(usize, &[[f64; N]], &mut [[f64; N]]) -> C + Sync,
{
    match dir {
        Direction::X => {
            let nx = grid.nx;
            let px = grid.px();
            let rows = grid.rows();
            let first = rows.start;
            acc.data
                .par_chunks_mut(px)
                .enumerate()
                .filter(|(k, _)| rows.contains(k))
                .map(|(k, out_row)| {
                    let mut buf = vec![[0.0; N]; nx];
                    let c = kernel(k - first, field.row(k), &mut buf);
                    for (o, b) in out_row[GHOST..GHOST + nx].iter_mut().zip(&buf) {
                        for m in 0..N {
                            o[m] += b[m];
                        }
                    }
                    c
                })
                .reduce(C::default, C::merge)
        }
        Direction::Y => {
            let ny = grid.ny;
            let py = grid.py();
            let results: Vec<(Vec<[f64; N]>, C)> = (0..grid.nx)
                .into_par_iter()
                .map(|j| {
                    let col: Vec<[f64; N]> = (0..py).map(|k| rot(*field.at(j + GHOST, k))).collect();
                    let mut buf = vec![[0.0; N]; ny];
                    let c = kernel(j, &col, &mut buf);
                    (buf, c)
                })
                .collect();
            let mut total = C::default();
            for (j, (buf, c)) in results.into_iter().enumerate() {
                for (k, b) in buf.into_iter().enumerate() {
                    let o = acc.at_mut(j + GHOST, k + GHOST);
                    let b = rot(b);
                    for m in 0..N {
                        o[m] += b[m];
                    }
                }
                total = total.merge(c);
            }
            total
        }
    }
}
