//! File-producing runs: configuration, snapshots and the run manifest.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cases::{case_lookup, init_fields_1d, init_fields_2d, CaseSpec};
use crate::error::{Result, SolverError};
use crate::grid::{Field, GridSpec};
use crate::indicator::AdaptionCoefficients;
use crate::io::{diagnostics_line, write_manifest, write_regions, write_solution, Manifest, RegionCountEntry};
use crate::time::{RunTotals, Scheme, Solver, SolverConfig};

/// Run options. Config-file keys match the command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct RunConfig {
    pub case: String,
    #[serde(default)]
    pub nx: Option<usize>,
    #[serde(default)]
    pub ny: Option<usize>,
    #[serde(default = "default_scheme")]
    pub scheme: Scheme,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    #[serde(default)]
    pub kappa_rhou: Option<f64>,
    #[serde(default)]
    pub kappa_rhov: Option<f64>,
    #[serde(default)]
    pub kappa_p: Option<f64>,
    #[serde(default = "default_detect_every")]
    pub detect_every: usize,
    #[serde(default)]
    pub t_final: Option<f64>,
    #[serde(default = "default_out")]
    pub out: PathBuf,
    /// Directory for region maps; defaults to `out`.
    #[serde(default)]
    pub regions_out: Option<PathBuf>,
    /// Intermediate output times; the final time is always written.
    #[serde(default)]
    pub snapshots: Vec<f64>,
    /// Run on a single worker thread.
    #[serde(default)]
    pub deterministic: bool,
    /// Inline case definition used instead of the registry entry.
    #[serde(default)]
    pub case_spec: Option<CaseSpec>,
}

fn default_scheme() -> Scheme {
    Scheme::Adaptive
}
fn default_cfl() -> f64 {
    0.45
}
fn default_detect_every() -> usize {
    3
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn for_case(case: &str) -> Self {
        Self {
            case: case.into(),
            nx: None,
            ny: None,
            scheme: default_scheme(),
            cfl: default_cfl(),
            kappa_rhou: None,
            kappa_rhov: None,
            kappa_p: None,
            detect_every: default_detect_every(),
            t_final: None,
            out: default_out(),
            regions_out: None,
            snapshots: Vec::new(),
            deterministic: false,
            case_spec: None,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| SolverError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml(&fs::read_to_string(path)?)
    }

    /// The case definition with every override applied.
    pub fn resolve_case(&self) -> Result<CaseSpec> {
        let mut spec = match &self.case_spec {
            Some(s) => s.clone(),
            None => case_lookup(&self.case)?,
        };
        spec.validate()?;
        if let Some(k) = self.kappa_rhou {
            spec.kappas.kappa_rhou = k;
        }
        if let Some(k) = self.kappa_rhov {
            spec.kappas.kappa_rhov = k;
        }
        if let Some(k) = self.kappa_p {
            spec.kappas.kappa_p = k;
        }
        if let Some(t) = self.t_final {
            spec.t_final = t;
        }
        if !(spec.t_final > 0.0 && spec.t_final.is_finite()) {
            return Err(SolverError::Config(format!("t-final must be positive, got {}", spec.t_final)));
        }
        Ok(spec)
    }

    pub fn solver_config(&self, spec: &CaseSpec) -> SolverConfig {
        SolverConfig {
            scheme: self.scheme,
            cfl: self.cfl,
            detect_every: self.detect_every,
            kappas: spec.kappas,
            force_tag: None,
            fixed_dt: None,
            gravity: spec.gravity,
            positivity_limiter: true,
        }
    }

    /// Sorted output times in `(0, t_final]`, ending at `t_final`.
    pub fn output_times(&self, t_final: f64) -> Result<Vec<f64>> {
        let mut times = Vec::with_capacity(self.snapshots.len() + 1);
        for &t in &self.snapshots {
            if !(t > 0.0 && t <= t_final) {
                return Err(SolverError::Config(format!("snapshot time {t} outside (0, {t_final}]")));
            }
            times.push(t);
        }
        times.push(t_final);
        times.sort_by(f64::total_cmp);
        times.dedup();
        Ok(times)
    }
}

/// What a run produced.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub case: CaseSpec,
    pub grid: GridSpec,
    pub totals: RunTotals,
    pub outputs: Vec<PathBuf>,
    pub manifest: PathBuf,
}

/// Run a configuration and write its artifacts.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    if cfg.deterministic {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .map_err(|e| SolverError::Config(e.to_string()))?;
        pool.install(|| run_inner(cfg))
    } else {
        run_inner(cfg)
    }
}

fn run_inner(cfg: &RunConfig) -> Result<RunReport> {
    let spec = cfg.resolve_case()?;
    let grid = spec.grid(cfg.nx, cfg.ny)?;
    let solver_cfg = cfg.solver_config(&spec);
    solver_cfg.validate()?;
    let times = cfg.output_times(spec.t_final)?;
    fs::create_dir_all(&cfg.out)?;
    let regions_dir = cfg.regions_out.clone().unwrap_or_else(|| cfg.out.clone());
    fs::create_dir_all(&regions_dir)?;
    if spec.dim == 1 {
        let (u0, _) = init_fields_1d(&spec, &grid)?;
        drive::<3>(cfg, spec, grid, solver_cfg, u0, &times, &regions_dir)
    } else {
        let (u0, _) = init_fields_2d(&spec, &grid)?;
        drive::<4>(cfg, spec, grid, solver_cfg, u0, &times, &regions_dir)
    }
}

fn drive<const N: usize>(
    cfg: &RunConfig,
    spec: CaseSpec,
    grid: GridSpec,
    solver_cfg: SolverConfig,
    u0: Field<N>,
    times: &[f64],
    regions_dir: &Path,
) -> Result<RunReport> {
    let gas = spec.gas();
    let mut solver = Solver::new(grid.clone(), gas, spec.boundary.clone(), solver_cfg.clone(), u0)?;
    let mut diag = BufWriter::new(fs::File::create(cfg.out.join("diagnostics.txt"))?);
    let mut outputs = Vec::new();
    let mut io_err = None;
    for (n, &t) in times.iter().enumerate() {
        solver.run_to(t, |s| {
            if let Err(e) = writeln!(diag, "{}", diagnostics_line(s)) {
                io_err.get_or_insert(e);
            }
        })?;
        if let Some(e) = io_err.take() {
            return Err(e.into());
        }
        let sol = cfg.out.join(format!("solution_{n:03}.csv"));
        write_solution(&sol, &spec.name, solver.state.t, &grid, &solver.state.u, &gas)?;
        let reg = regions_dir.join(format!("regions_{n:03}.csv"));
        write_regions(&reg, &solver.state.regions)?;
        outputs.push(sol);
        outputs.push(reg);
    }
    diag.flush()?;

    let mut echo = serde_json::to_value(cfg).map_err(|e| SolverError::Config(e.to_string()))?;
    if let Some(obj) = echo.as_object_mut() {
        // the values actually used, after overrides
        let k: &AdaptionCoefficients = &solver_cfg.kappas;
        obj.insert("kappa-rhou".into(), k.kappa_rhou.into());
        obj.insert("kappa-rhov".into(), k.kappa_rhov.into());
        obj.insert("kappa-p".into(), k.kappa_p.into());
        obj.insert("t-final".into(), spec.t_final.into());
        obj.insert("cfl".into(), solver_cfg.cfl.into());
        obj.insert("detect-every".into(), solver_cfg.detect_every.into());
    }
    let manifest = Manifest {
        config: echo,
        grid: grid.clone(),
        gamma: spec.gamma,
        t_final: spec.t_final,
        totals: solver.state.totals,
        outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        region_counts: solver.state.history.iter().map(RegionCountEntry::from).collect(),
    };
    let manifest_path = cfg.out.join("manifest.json");
    write_manifest(&manifest_path, &manifest)?;
    Ok(RunReport {
        case: spec,
        grid,
        totals: solver.state.totals,
        outputs,
        manifest: manifest_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_keys_match_flags() {
        let cfg = RunConfig::from_toml(
            r#"
case = "ex1"
nx = 60
scheme = "aweno"
kappa-p = 0.5
detect-every = 2
t-final = 0.1
snapshots = [0.05]
"#,
        )
        .unwrap();
        assert_eq!(cfg.scheme, Scheme::Aweno);
        assert_eq!(cfg.detect_every, 2);
        let spec = cfg.resolve_case().unwrap();
        assert_eq!(spec.kappas.kappa_p, 0.5);
        assert_eq!(cfg.output_times(0.1).unwrap(), vec![0.05, 0.1]);
        assert!(RunConfig::from_toml("case = \"ex1\"\nbogus = 1\n").is_err());
    }

    #[test]
    fn bad_snapshot_times() {
        let mut cfg = RunConfig::for_case("ex1");
        cfg.snapshots = vec![2.0];
        assert!(cfg.output_times(1.0).is_err());
    }

    #[test]
    fn small_mesh_names_stencil_minimum() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = RunConfig::for_case("ex1");
        cfg.nx = Some(5);
        cfg.out = dir.path().to_path_buf();
        let err = run(&cfg).unwrap_err().to_string();
        assert!(err.contains("stencil minimum"), "{err}");
    }
}
