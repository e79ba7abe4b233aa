use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use dfeuler::cases::{case_lookup, registry};
use dfeuler::driver::{run, RunConfig};
use dfeuler::io::{l1_error, l1_error_exact, read_solution};
use dfeuler::time::Scheme;

#[derive(Parser)]
#[command(name = "dfeuler", version, about = "Adaptive dual-formulation A-WENO Euler solver")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a registered case and write solution, region and diagnostics files.
    Run(RunArgs),
    /// Per-component L1 difference between two solution files, or against
    /// the exact solution of the case named in the file.
    L1 {
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long)]
        exact: bool,
    },
    /// List registered cases.
    Cases,
}

#[derive(Args)]
struct RunArgs {
    /// TOML file with the same keys as these flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    /// adaptive, aweno or primitive-only
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(long)]
    cfl: Option<f64>,
    #[arg(long)]
    kappa_rhou: Option<f64>,
    #[arg(long)]
    kappa_rhov: Option<f64>,
    #[arg(long)]
    kappa_p: Option<f64>,
    #[arg(long)]
    detect_every: Option<usize>,
    #[arg(long)]
    t_final: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    regions_out: Option<PathBuf>,
    /// Comma-separated output times.
    #[arg(long, value_delimiter = ',')]
    snapshots: Option<Vec<f64>>,
    /// Single worker thread.
    #[arg(long)]
    deterministic: bool,
}

impl RunArgs {
    fn into_config(self) -> anyhow::Result<RunConfig> {
        let mut cfg = match (&self.config, &self.case) {
            (Some(path), _) => RunConfig::load(path).with_context(|| format!("reading {}", path.display()))?,
            (None, Some(case)) => RunConfig::for_case(case),
            (None, None) => bail!("either --case or --config is required"),
        };
        if let Some(c) = self.case {
            cfg.case = c;
        }
        macro_rules! set {
            ($($f:ident),*) => { $( if self.$f.is_some() { cfg.$f = self.$f; } )* };
        }
        set!(nx, ny, kappa_rhou, kappa_rhov, kappa_p, t_final, regions_out);
        if let Some(s) = self.scheme {
            cfg.scheme = s;
        }
        if let Some(c) = self.cfl {
            cfg.cfl = c;
        }
        if let Some(d) = self.detect_every {
            cfg.detect_every = d;
        }
        if let Some(o) = self.out {
            cfg.out = o;
        }
        if let Some(s) = self.snapshots {
            cfg.snapshots = s;
        }
        cfg.deterministic |= self.deterministic;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> anyhow::Result<()> {
    match Cli::parse().cmd {
        Cmd::Run(args) => {
            let cfg = args.into_config()?;
            let report = run(&cfg)?;
            let t = report.totals;
            println!(
                "{} {}: {} steps, {} detections, {} positivity fallbacks, {:.1} ms",
                report.case.name,
                cfg.scheme.name(),
                t.steps,
                t.detections,
                t.positivity_fallbacks,
                t.wall_ms
            );
            println!("manifest: {}", report.manifest.display());
        }
        Cmd::L1 { a, b, exact } => {
            let fa = read_solution(&a).with_context(|| format!("reading {}", a.display()))?;
            let norms = match (b, exact) {
                (Some(b), false) => {
                    let fb = read_solution(&b).with_context(|| format!("reading {}", b.display()))?;
                    l1_error(&fa, &fb)?
                }
                (None, true) => {
                    let case = case_lookup(&fa.case)?;
                    let gas = case.gas();
                    if case.exact_1d(0.0, fa.t).is_none() {
                        bail!("case `{}` has no exact solution", case.name);
                    }
                    l1_error_exact(&fa, |x| {
                        let v = case.exact_1d(x[0], fa.t).expect("checked above");
                        let e = v[2] / (gas.gamma - 1.0) + 0.5 * v[0] * v[1] * v[1];
                        vec![v[0], v[1], v[2], e]
                    })
                }
                _ => bail!("give either a second file or --exact"),
            };
            for (name, v) in norms {
                println!("{name} {v:.16e}");
            }
        }
        Cmd::Cases => {
            for c in registry() {
                println!("{:<26} {}D  {}", c.name, c.dim, c.description);
            }
        }
    }
    Ok(())
}
