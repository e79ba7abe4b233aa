//! Plain-text solution and region files, L1 norms and the run manifest.
//!
//! Solution files carry one header line
//! `# columns: x[,y],rho,u[,v],p,E; case=<name>; t=<t>; nx=<nx>[,ny=<ny>]`
//! followed by one comma-separated row per cell, `x` fastest. Region files
//! carry `# direction,j,k,tag` and one row per physical interface.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conservative::Regions;
use crate::eos::{cons_to_prim, Conserved, GasModel};
use crate::error::{Result, SolverError};
use crate::grid::{Direction, Field, GridSpec};
use crate::indicator::{RegionMap, RegionTag};
use crate::time::StepStats;

pub fn solution_columns(two_d: bool) -> Vec<&'static str> {
    if two_d {
        vec!["x", "y", "rho", "u", "v", "p", "E"]
    } else {
        vec!["x", "rho", "u", "p", "E"]
    }
}

pub fn write_solution<const N: usize>(
    path: &Path,
    case: &str,
    t: f64,
    grid: &GridSpec,
    u: &Field<N>,
    gas: &GasModel,
) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    let two_d = grid.is_2d();
    let mesh = if two_d {
        format!("nx={},ny={}", grid.nx, grid.ny)
    } else {
        format!("nx={}", grid.nx)
    };
    writeln!(w, "# columns: {}; case={case}; t={t:.16e}; {mesh}", solution_columns(two_d).join(","))?;
    for (j, k, c) in u.iter_physical(grid) {
        let v = cons_to_prim(&Conserved(c), gas);
        let mut row = vec![grid.x_center(j)];
        if two_d {
            row.push(grid.y_center(k));
        }
        row.extend_from_slice(&v.0);
        row.push(c[N - 1]);
        let line: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionFile {
    pub columns: Vec<String>,
    pub case: String,
    pub t: f64,
    pub nx: usize,
    /// 0 for 1-D files.
    pub ny: usize,
    pub rows: Vec<Vec<f64>>,
}

impl SolutionFile {
    pub fn is_2d(&self) -> bool {
        self.ny > 0
    }

    /// Number of leading coordinate columns.
    pub fn coords(&self) -> usize {
        if self.is_2d() {
            2
        } else {
            1
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let c = self.columns.iter().position(|n| n == name)?;
        Some(self.rows.iter().map(|r| r[c]).collect())
    }

    /// Cell size inferred from the coordinates.
    pub fn spacing(&self) -> (f64, f64) {
        let dx = if self.nx > 1 { self.rows[1][0] - self.rows[0][0] } else { 1.0 };
        let dy = if self.is_2d() && self.ny > 1 {
            self.rows[self.nx][1] - self.rows[0][1]
        } else {
            1.0
        };
        (dx, dy)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> SolverError {
    SolverError::Parse { line, msg: msg.into() }
}

pub fn read_solution(path: &Path) -> Result<SolutionFile> {
    let text = fs::read_to_string(path)?;
    parse_solution(&text)
}

pub fn parse_solution(text: &str) -> Result<SolutionFile> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let header = header
        .strip_prefix("# columns:")
        .ok_or_else(|| parse_err(1, "expected `# columns:` header"))?;
    let mut parts = header.split(';').map(str::trim);
    let columns: Vec<String> = parts
        .next()
        .unwrap_or_default()
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    let (mut case, mut t, mut nx, mut ny) = (String::new(), None, None, 0usize);
    for part in parts {
        for kv in part.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(|| parse_err(1, format!("malformed field `{kv}`")))?;
            let num = |s: &str| s.trim().parse::<f64>().map_err(|e| parse_err(1, format!("{k}: {e}")));
            let int = |s: &str| s.trim().parse::<usize>().map_err(|e| parse_err(1, format!("{k}: {e}")));
            match k.trim() {
                "case" => case = v.trim().to_string(),
                "t" => t = Some(num(v)?),
                "nx" => nx = Some(int(v)?),
                "ny" => ny = int(v)?,
                other => return Err(parse_err(1, format!("unknown header field `{other}`"))),
            }
        }
    }
    let t = t.ok_or_else(|| parse_err(1, "missing t"))?;
    let nx = nx.ok_or_else(|| parse_err(1, "missing nx"))?;
    let mut rows = Vec::with_capacity(nx * ny.max(1));
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(n + 1, e.to_string()))?;
        if row.len() != columns.len() {
            return Err(parse_err(n + 1, format!("expected {} values, found {}", columns.len(), row.len())));
        }
        rows.push(row);
    }
    if rows.len() != nx * ny.max(1) {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {} rows, found {}", nx * ny.max(1), rows.len()),
        ));
    }
    Ok(SolutionFile {
        columns,
        case,
        t,
        nx,
        ny,
        rows,
    })
}

/// Per-component `sum |a - b| dx [dy]` over the non-coordinate columns.
pub fn l1_error(a: &SolutionFile, b: &SolutionFile) -> Result<Vec<(String, f64)>> {
    if a.columns != b.columns {
        return Err(SolverError::MeshMismatch(format!(
            "column sets differ: [{}] vs [{}]",
            a.columns.join(","),
            b.columns.join(",")
        )));
    }
    if (a.nx, a.ny) != (b.nx, b.ny) {
        return Err(SolverError::MeshMismatch(format!(
            "{}x{} cells vs {}x{} cells",
            a.nx, a.ny, b.nx, b.ny
        )));
    }
    let nc = a.coords();
    let (dx, dy) = a.spacing();
    let tol = 1e-9 * dx.abs().min(dy.abs());
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        if (0..nc).any(|c| (ra[c] - rb[c]).abs() > tol) {
            return Err(SolverError::MeshMismatch("cell centers differ".into()));
        }
    }
    let vol = dx * dy;
    Ok((nc..a.columns.len())
        .map(|c| {
            let s: f64 = a.rows.iter().zip(&b.rows).map(|(ra, rb)| (ra[c] - rb[c]).abs()).sum();
            (a.columns[c].clone(), s * vol)
        })
        .collect())
}

/// L1 norms against a function of the coordinates returning the
/// non-coordinate columns.
pub fn l1_error_exact(a: &SolutionFile, exact: impl Fn(&[f64]) -> Vec<f64>) -> Vec<(String, f64)> {
    let nc = a.coords();
    let (dx, dy) = a.spacing();
    let mut acc = vec![0.0; a.columns.len() - nc];
    for r in &a.rows {
        let e = exact(&r[..nc]);
        for (c, s) in acc.iter_mut().enumerate() {
            *s += (r[nc + c] - e[c]).abs();
        }
    }
    a.columns[nc..]
        .iter()
        .cloned()
        .zip(acc.into_iter().map(|s| s * dx * dy))
        .collect()
}

pub fn write_regions(path: &Path, regions: &Regions) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "# direction,j,k,tag")?;
    for map in std::iter::once(&regions.x).chain(regions.y.as_ref()) {
        // rows stay in x-fastest order for both directions
        match map.dir {
            Direction::X => {
                for k in 0..map.lines {
                    for j in 0..=map.n {
                        writeln!(w, "x,{j},{k},{}", map.get(k, j).code())?;
                    }
                }
            }
            Direction::Y => {
                for k in 0..=map.n {
                    for j in 0..map.lines {
                        writeln!(w, "y,{j},{k},{}", map.get(j, k).code())?;
                    }
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// Region maps read back from a file, for a mesh of `nx` by `ny` cells
/// (`ny = 0` in 1-D).
pub fn read_regions(path: &Path, nx: usize, ny: usize) -> Result<(RegionMap, Option<RegionMap>)> {
    let text = fs::read_to_string(path)?;
    let lines_x = ny.max(1);
    let mut x = RegionMap {
        dir: Direction::X,
        n: nx,
        lines: lines_x,
        tags: vec![RegionTag::S; (nx + 1) * lines_x],
    };
    let mut y = (ny > 0).then(|| RegionMap {
        dir: Direction::Y,
        n: ny,
        lines: nx,
        tags: vec![RegionTag::S; (ny + 1) * nx],
    });
    let mut seen = [0usize; 2];
    for (n, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 4 {
            return Err(parse_err(n + 1, "expected direction,j,k,tag"));
        }
        let j: usize = f[1].parse().map_err(|_| parse_err(n + 1, "bad j"))?;
        let k: usize = f[2].parse().map_err(|_| parse_err(n + 1, "bad k"))?;
        let tag = f[3]
            .parse::<u8>()
            .ok()
            .and_then(RegionTag::from_code)
            .ok_or_else(|| parse_err(n + 1, "tag must be 0, 1 or 2"))?;
        match f[0] {
            "x" if j <= nx && k < lines_x => {
                x.set(k, j, tag);
                seen[0] += 1;
            }
            "y" if y.is_some() && j < nx && k <= ny => {
                y.as_mut().unwrap().set(j, k, tag);
                seen[1] += 1;
            }
            _ => return Err(parse_err(n + 1, format!("interface `{line}` outside the {nx}x{ny} mesh"))),
        }
    }
    if seen[0] != x.tags.len() || seen[1] != y.as_ref().map_or(0, |m| m.tags.len()) {
        return Err(SolverError::MeshMismatch("region file does not cover every interface".into()));
    }
    Ok((x, y))
}

/// One diagnostics line: `step t dt nS nRC nRNC [nS nRC nRNC] wall_ms`.
pub fn diagnostics_line(s: &StepStats) -> String {
    let mut out = format!(
        "{} {:.10e} {:.10e} {} {} {}",
        s.step, s.t, s.dt, s.counts_x[0], s.counts_x[1], s.counts_x[2]
    );
    if let Some(c) = s.counts_y {
        out.push_str(&format!(" {} {} {}", c[0], c[1], c[2]));
    }
    out.push_str(&format!(" {:.3}", s.wall_ms));
    out
}

/// Record of a run written next to its outputs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: serde_json::Value,
    pub grid: GridSpec,
    pub gamma: f64,
    pub t_final: f64,
    pub totals: crate::time::RunTotals,
    pub outputs: Vec<String>,
    pub region_counts: Vec<RegionCountEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionCountEntry {
    pub step: usize,
    pub t: f64,
    pub detected: bool,
    pub x: [usize; 3],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<[usize; 3]>,
}

impl From<&StepStats> for RegionCountEntry {
    fn from(s: &StepStats) -> Self {
        Self {
            step: s.step,
            t: s.t,
            detected: s.detected,
            x: s.counts_x,
            y: s.counts_y,
        }
    }
}

pub fn write_manifest(path: &Path, m: &Manifest) -> Result<()> {
    let text = serde_json::to_string_pretty(m).map_err(|e| SolverError::Config(e.to_string()))?;
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::{prim_to_cons, Primitive};
    use crate::grid::GHOST;

    fn sample_1d() -> (GridSpec, Field<3>) {
        let g = GridSpec::new_1d(12, 0.0, 1.2).unwrap();
        let mut u = Field::<3>::zeros(&g);
        for j in 0..12 {
            let x = g.x_center(j);
            *u.at_mut(j + GHOST, 0) = prim_to_cons(&Primitive([1.0 + x, 0.1, 1.0 / 3.0]), &GasModel::AIR).0;
        }
        (g, u)
    }

    #[test]
    fn solution_round_trip_is_lossless() {
        let dir = tempfile::tempdir().unwrap();
        let (g, u) = sample_1d();
        let p = dir.path().join("s.csv");
        write_solution(&p, "demo", 0.1 + 0.2, &g, &u, &GasModel::AIR).unwrap();
        let f = read_solution(&p).unwrap();
        assert_eq!(f.t, 0.1 + 0.2);
        assert_eq!((f.nx, f.ny, f.case.as_str()), (12, 0, "demo"));
        let e = f.column("E").unwrap();
        for j in 0..12 {
            assert_eq!(e[j], u.physical(&g, j, 0)[2]);
        }
        let zero = l1_error(&f, &f).unwrap();
        assert!(zero.iter().all(|(_, v)| *v == 0.0));
    }

    #[test]
    fn l1_errors_and_mismatches() {
        let dir = tempfile::tempdir().unwrap();
        let (g, u) = sample_1d();
        let p = dir.path().join("a.csv");
        write_solution(&p, "a", 0.0, &g, &u, &GasModel::AIR).unwrap();
        let a = read_solution(&p).unwrap();
        let mut b = a.clone();
        for r in &mut b.rows {
            r[1] += 0.5;
        }
        let e = l1_error(&a, &b).unwrap();
        assert_eq!(e[0].0, "rho");
        assert!((e[0].1 - 0.5 * 1.2).abs() < 1e-12);
        let mut c = a.clone();
        c.columns.push("extra".into());
        assert!(matches!(l1_error(&a, &c), Err(SolverError::MeshMismatch(_))));
        let g2 = GridSpec::new_1d(13, 0.0, 1.2).unwrap();
        let u2 = Field::<3>::filled(&g2, [1.0, 0.0, 1.0]);
        let p2 = dir.path().join("b.csv");
        write_solution(&p2, "b", 0.0, &g2, &u2, &GasModel::AIR).unwrap();
        assert!(l1_error(&a, &read_solution(&p2).unwrap()).is_err());
        let ex = l1_error_exact(&a, |x| vec![1.0 + x[0], 0.1, 1.0 / 3.0, 0.0]);
        assert!(ex[0].1 < 1e-14);
    }

    #[test]
    fn malformed_rows_name_their_line() {
        let text = "# columns: x,rho,u,p,E; case=a; t=0; nx=2\n0,1,0,1,2.5\n1,1,zz,1,2.5\n";
        match parse_solution(text) {
            Err(SolverError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn regions_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = GridSpec::new_2d(12, 14, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let mut r = Regions::uniform(&g, RegionTag::S);
        r.x.set(3, 4, RegionTag::RC);
        r.y.as_mut().unwrap().set(5, 14, RegionTag::RNC);
        let p = dir.path().join("r.csv");
        write_regions(&p, &r).unwrap();
        let (x, y) = read_regions(&p, 12, 14).unwrap();
        assert_eq!(x, r.x);
        assert_eq!(y, r.y);
        assert!(read_regions(&p, 12, 13).is_err());
    }
}
