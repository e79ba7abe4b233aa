//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary. Failures are reported but the exit status stays 0
//! unless `ACCEPTANCE_STRICT` is set.

use std::time::Instant;

use dfeuler::boundary::{fill_ghosts, BoundaryKind, BoundarySpec, Vars};
use dfeuler::cases::{case_lookup, init_fields_1d, init_fields_2d, CaseSpec};
use dfeuler::eos::{phys_flux_x, prim_to_cons, Conserved, GasModel, Primitive};
use dfeuler::flux::{cu_antidiffusion, cu_flux, ldcu_fan, ldcu_flux};
use dfeuler::grid::{Field, GridSpec};
use dfeuler::indicator::RegionTag;
use dfeuler::primitive::rhs_primitive;
use dfeuler::stencil::{
    aiweno_z_minus, aiweno_z_plus, boole_integrate, cell_quadrature_nodes, interp5_minus, interp5_plus, interp_quarter,
    sbm_phi, SbmParams, WenoParams,
};
use dfeuler::time::{Scheme, Solver, SolverConfig};

type Outcome = Result<String, String>;

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> f64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, a: f64, b: f64) -> f64 {
        a + (b - a) * self.next()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit_s: f64) -> Result<f64, String> {
    let t = start.elapsed().as_secs_f64();
    ensure(t < limit_s, format!("took {t:.1} s, limit {limit_s} s"))?;
    Ok(t)
}

// 1. interpolation, quadrature, weights and limiter identities
fn kernels() -> Outcome {
    let start = Instant::now();
    let mut rng = Rng(0x2545f4914f6cdd1d);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let c: [f64; 5] = std::array::from_fn(|_| rng.range(-3.0, 3.0));
        let dx = rng.range(0.01, 0.5);
        let x0 = rng.range(-1.0, 1.0);
        let poly = |x: f64| c.iter().rev().fold(0.0, |acc, &k| acc * x + k);
        let dpoly = |x: f64| (1..5).rev().fold(0.0, |acc, k| acc * x + k as f64 * c[k]);
        let s: [f64; 6] = std::array::from_fn(|k| poly(x0 + (k as f64 - 2.0) * dx));
        worst = worst.max(rel(interp5_minus(&s), poly(x0 + 0.5 * dx)));
        worst = worst.max(rel(interp5_plus(&s), poly(x0 + 0.5 * dx)));
        let w: [f64; 5] = std::array::from_fn(|k| s[k]);
        let (qm, qp) = interp_quarter(&w);
        worst = worst.max(rel(qm, poly(x0 - 0.25 * dx)));
        worst = worst.max(rel(qp, poly(x0 + 0.25 * dx)));
        let (vals, ders) = cell_quadrature_nodes(&w, dx);
        for (q, t) in [-0.5, -0.25, 0.0, 0.25, 0.5].iter().enumerate() {
            worst = worst.max(rel(vals[q], poly(x0 + t * dx)));
            worst = worst.max(rel(ders[q], dpoly(x0 + t * dx)));
        }
        // antiderivative of the quartic, evaluated directly
        let prim = |x: f64| (0..5).fold(0.0, |acc, k| acc + c[k] * x.powi(k as i32 + 1) / (k as f64 + 1.0));
        let nodes: [f64; 5] = std::array::from_fn(|q| poly(x0 + (q as f64 - 2.0) * 0.25 * dx));
        worst = worst.max(rel(boole_integrate(&nodes, dx), prim(x0 + 0.5 * dx) - prim(x0 - 0.5 * dx)));
    }
    ensure(worst <= 1e-12, format!("polynomial reproduction error {worst:e}"))?;

    let wp = WenoParams::default();
    let mut affine: f64 = 0.0;
    for _ in 0..200 {
        let s: [f64; 6] = std::array::from_fn(|_| rng.range(-5.0, 5.0));
        let shift = rng.range(-20.0, 20.0);
        let (m0, p0) = (aiweno_z_minus(&s, &wp), aiweno_z_plus(&s, &wp));
        for lambda in [1e-30, 1e30] {
            let t = s.map(|x| lambda * (x + shift));
            let (m1, p1) = (aiweno_z_minus(&t, &wp), aiweno_z_plus(&t, &wp));
            let scale = lambda * (m0.abs() + shift.abs()).max(1.0);
            affine = affine.max((m1 - lambda * (m0 + shift)).abs() / scale);
            let scale = lambda * (p0.abs() + shift.abs()).max(1.0);
            affine = affine.max((p1 - lambda * (p0 + shift)).abs() / scale);
        }
    }
    ensure(affine <= 1e-12, format!("Ai-WENO-Z affine invariance error {affine:e}"))?;

    let sp = SbmParams::default();
    ensure(sbm_phi(1.0, &sp) == 1.0, "phi(1) != 1")?;
    let mut sym: f64 = 0.0;
    for _ in 0..1000 {
        let r = 10f64.powf(rng.range(-3.0, 3.0));
        sym = sym.max((sbm_phi(r, &sp) - r * sbm_phi(1.0 / r, &sp)).abs() / r.max(1.0));
    }
    ensure(sym <= 1e-14, format!("phi(r) = r phi(1/r) violated by {sym:e}"))?;
    let t = within(start, 1.0)?;
    Ok(format!(
        "poly err {worst:.1e}, affine err {affine:.1e}, sbm symmetry {sym:.1e}, {t:.3} s"
    ))
}

fn random_state<const N: usize>(rng: &mut Rng, gas: &GasModel) -> Conserved<N> {
    let v: [f64; N] = std::array::from_fn(|c| match c {
        0 => rng.range(0.1, 5.0),
        c if c == N - 1 => rng.range(0.1, 5.0),
        _ => rng.range(-2.0, 2.0),
    });
    prim_to_cons(&Primitive(v), gas)
}

// 2. CU and LDCU properties
fn fluxes() -> Outcome {
    let start = Instant::now();
    let gas = GasModel::AIR;
    let mut rng = Rng(0x9e3779b97f4a7c15);
    let mut consistency: f64 = 0.0;
    let mut fan: f64 = 0.0;
    let mut antidiff_ok = true;
    for _ in 0..500 {
        let u: Conserved<4> = random_state(&mut rng, &gas);
        let f = phys_flux_x(&u, &gas);
        for (a, b) in cu_flux(&u, &u, &gas).iter().zip(&f) {
            consistency = consistency.max(rel(*a, *b));
        }
        for (a, b) in ldcu_flux(&u, &u, &gas).iter().zip(&f) {
            consistency = consistency.max(rel(*a, *b));
        }
        let (ul, ur): (Conserved<4>, Conserved<4>) = (random_state(&mut rng, &gas), random_state(&mut rng, &gas));
        let q = cu_antidiffusion(&ul, &ur, &gas);
        for c in 0..4 {
            antidiff_ok &= q[c].abs() <= 0.5 * (ur.0[c] - ul.0[c]).abs() * (1.0 + 1e-14);
        }
        if let Some(st) = ldcu_fan(&ul, &ur, &gas) {
            let (ap, am, us) = (st.speeds.a_plus, st.speeds.a_minus, st.contact_speed);
            let (fl, fr) = (phys_flux_x(&ul, &gas), phys_flux_x(&ur, &gas));
            for c in 0..4 {
                let lhs = (us - am) * st.left.0[c] + (ap - us) * st.right.0[c];
                let rhs = ap * ur.0[c] - am * ul.0[c] - (fr[c] - fl[c]);
                fan = fan.max((lhs - rhs).abs() / rhs.abs().max(1.0));
            }
        }
    }
    ensure(consistency <= 1e-13, format!("consistency error {consistency:e}"))?;
    ensure(fan <= 1e-12, format!("fan conservation error {fan:e}"))?;
    ensure(antidiff_ok, "anti-diffusion exceeds half the jump")?;

    // stationary contacts of the blast-wave and Riemann-problem kind
    let mut contact: f64 = 0.0;
    for (rl, rr, p) in [(1.0, 0.125, 1.0), (5.99924, 5.99242, 460.894), (1.4, 1.0, 1.0), (0.1, 10.0, 0.01)] {
        let ul = prim_to_cons(&Primitive([rl, 0.0, p]), &gas);
        let ur = prim_to_cons(&Primitive([rr, 0.0, p]), &gas);
        let f = ldcu_flux(&ul, &ur, &gas);
        contact = contact.max(f[0].abs()).max(f[2].abs());
        ensure((f[1] - p).abs() <= 1e-14 * p, format!("contact momentum flux {} vs p {p}", f[1]))?;
    }
    ensure(contact <= 1e-14, format!("stationary contact mass/energy flux {contact:e}"))?;
    let t = within(start, 1.0)?;
    Ok(format!(
        "consistency {consistency:.1e}, fan {fan:.1e}, contact flux {contact:.1e}, {t:.3} s"
    ))
}

fn smooth_case() -> CaseSpec {
    case_lookup("smooth-contact-advection").unwrap()
}

/// L1 density error at `t` on `n` cells with `dt` proportional to `dx^{5/3}`.
fn smooth_error(n: usize, scheme: Scheme) -> Result<f64, String> {
    let c = smooth_case();
    let g = c.grid(Some(n), None).map_err(|e| e.to_string())?;
    let (u, _) = init_fields_1d(&c, &g).map_err(|e| e.to_string())?;
    let dx40 = (c.x_range.1 - c.x_range.0) / 40.0;
    // |u| + c at the density minimum
    let smax = 1.0 + (1.4f64 / 0.5).sqrt();
    let cfg = SolverConfig {
        scheme,
        force_tag: Some(RegionTag::S),
        fixed_dt: Some(0.45 * dx40 / smax * (g.dx / dx40).powf(5.0 / 3.0)),
        ..SolverConfig::default()
    };
    let mut s = Solver::new(g.clone(), c.gas(), c.boundary.clone(), cfg, u).map_err(|e| e.to_string())?;
    s.run_to(c.t_final, |_| {}).map_err(|e| e.to_string())?;
    Ok(s.state
        .u
        .iter_physical(&g)
        .map(|(j, _, v)| (v[0] - c.exact_1d(g.x_center(j), c.t_final).unwrap()[0]).abs() * g.dx)
        .sum())
}

fn eoc_of(scheme: Scheme) -> Result<(Vec<f64>, Vec<f64>), String> {
    let e = [40, 80, 160].iter().map(|&n| smooth_error(n, scheme)).collect::<Result<Vec<_>, _>>()?;
    let eoc = vec![(e[0] / e[1]).log2(), (e[1] / e[2]).log2()];
    Ok((e, eoc))
}

// 3. fifth order of the conservative scheme
fn eoc_conservative() -> Outcome {
    let start = Instant::now();
    let (e, eoc) = eoc_of(Scheme::Adaptive)?;
    ensure(eoc.iter().all(|&r| r >= 4.5), format!("EOC {eoc:?}, errors {e:?}"))?;
    let t = within(start, 60.0)?;
    Ok(format!("L1 {:.2e} {:.2e} {:.2e}, EOC {:.3} {:.3}, {t:.1} s", e[0], e[1], e[2], eoc[0], eoc[1]))
}

// 4. fifth order of the primitive solver and exact balance of constants
fn eoc_primitive() -> Outcome {
    let start = Instant::now();
    let (e, eoc) = eoc_of(Scheme::PrimitiveOnly)?;
    ensure(eoc.iter().all(|&r| r >= 4.5), format!("EOC {eoc:?}, errors {e:?}"))?;
    let gas = GasModel::AIR;
    let g1 = GridSpec::new_1d(24, 0.0, 1.0).unwrap();
    let mut v1 = Field::<3>::filled(&g1, [1.3, -0.7, 2.2]);
    fill_ghosts(&mut v1, &BoundarySpec::all(BoundaryKind::Periodic), &g1, Vars::Primitive, &gas);
    let (r1, _) = rhs_primitive(&v1, &g1, &gas, false);
    let g2 = GridSpec::new_2d(16, 20, (0.0, 1.0), (0.0, 2.0)).unwrap();
    let mut v2 = Field::<4>::filled(&g2, [0.8, 0.4, -1.1, 3.0]);
    fill_ghosts(&mut v2, &BoundarySpec::all(BoundaryKind::Free), &g2, Vars::Primitive, &gas);
    let (r2, _) = rhs_primitive(&v2, &g2, &gas, false);
    let zero = r1.data.iter().flatten().all(|&x| x == 0.0) && r2.data.iter().flatten().all(|&x| x == 0.0);
    ensure(zero, "constant-state primitive RHS is not exactly zero")?;
    let t = within(start, 60.0)?;
    Ok(format!(
        "L1 {:.2e} {:.2e} {:.2e}, EOC {:.3} {:.3}, constant RHS exactly 0, {t:.1} s",
        e[0], e[1], e[2], eoc[0], eoc[1]
    ))
}

fn relative_drift<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    (0..N).map(|c| (a[c] - b[c]).abs() / a[c].abs().max(1e-300)).fold(0.0, f64::max)
}

// 5. conservation
fn conservation() -> Outcome {
    let start = Instant::now();
    let c = smooth_case();
    let g = c.grid(Some(80), None).unwrap();
    let (u, _) = init_fields_1d(&c, &g).map_err(|e| e.to_string())?;
    let mut s = Solver::new(g, c.gas(), c.boundary.clone(), SolverConfig::default(), u).map_err(|e| e.to_string())?;
    let before = s.totals();
    for _ in 0..100 {
        s.advance(f64::INFINITY).map_err(|e| e.to_string())?;
    }
    // zero x-momentum would make a relative drift meaningless; it is 1 here
    let d1 = relative_drift(&before, &s.totals());
    ensure(d1 <= 1e-11, format!("1-D periodic drift {d1:e}"))?;

    let c = case_lookup("ex5").unwrap();
    let g = c.grid(Some(125), Some(125)).unwrap();
    let (u, _) = init_fields_2d(&c, &g).map_err(|e| e.to_string())?;
    let cfg = SolverConfig {
        kappas: c.kappas,
        ..SolverConfig::default()
    };
    let mut s = Solver::new(g, c.gas(), c.boundary.clone(), cfg, u).map_err(|e| e.to_string())?;
    let m0 = s.totals()[0];
    s.run_to(0.5, |_| {}).map_err(|e| e.to_string())?;
    let d2 = (s.totals()[0] - m0).abs() / m0;
    ensure(d2 <= 1e-6, format!("implosion mass drift {d2:e}"))?;
    let t = within(start, 300.0)?;
    Ok(format!("periodic drift {d1:.1e}, implosion mass drift {d2:.1e}, {t:.1} s"))
}

struct Run1d {
    grid: GridSpec,
    rho: Vec<f64>,
    solver_ms: f64,
    positivity_fallbacks: usize,
    flux_limited: usize,
    x_tags: Vec<RegionTag>,
}

fn run_1d(case: &str, nx: usize, scheme: Scheme) -> Result<Run1d, String> {
    let c = case_lookup(case).unwrap();
    let g = c.grid(Some(nx), None).map_err(|e| e.to_string())?;
    let (u, _) = init_fields_1d(&c, &g).map_err(|e| e.to_string())?;
    let cfg = SolverConfig {
        scheme,
        kappas: c.kappas,
        ..SolverConfig::default()
    };
    let mut s = Solver::new(g.clone(), c.gas(), c.boundary.clone(), cfg, u).map_err(|e| e.to_string())?;
    let t0 = Instant::now();
    s.run_to(c.t_final, |_| {}).map_err(|e| format!("{case} {}: {e}", scheme.name()))?;
    let solver_ms = t0.elapsed().as_secs_f64() * 1e3;
    Ok(Run1d {
        rho: s.state.u.iter_physical(&g).map(|(_, _, v)| v[0]).collect(),
        grid: g,
        solver_ms,
        positivity_fallbacks: s.state.totals.positivity_fallbacks,
        flux_limited: s.state.totals.flux_limited,
        x_tags: s.state.regions.x.line(0).to_vec(),
    })
}

/// Cells strictly inside the band between the two plateaus of the contact
/// near `x = 0.6`, with a 10% margin at each end.
fn contact_width(r: &Run1d) -> usize {
    let g = &r.grid;
    let at = |x: f64| r.rho[((x - g.xmin) / g.dx).floor() as usize];
    let lo = at(0.55);
    let hi = (0..g.nx)
        .filter(|&j| (0.60..=0.625).contains(&g.x_center(j)))
        .map(|j| r.rho[j])
        .fold(f64::MIN, f64::max);
    let margin = 0.1 * (hi - lo);
    (0..g.nx)
        .filter(|&j| (0.55..=0.625).contains(&g.x_center(j)))
        .filter(|&j| r.rho[j] > lo + margin && r.rho[j] < hi - margin)
        .count()
}

// 6. blast waves
fn blast_wave() -> Outcome {
    let start = Instant::now();
    let a = run_1d("ex3-blast", 400, Scheme::Adaptive)?;
    let w = run_1d("ex3-blast", 400, Scheme::Aweno)?;
    let (ca, cw) = (contact_width(&a), contact_width(&w));
    let t = start.elapsed().as_secs_f64();
    let detail = format!(
        "contact cells adaptive {ca} vs A-WENO {cw}; interface fallbacks {} / {}; limited fluxes {} / {}; {t:.1} s",
        a.positivity_fallbacks, w.positivity_fallbacks, a.flux_limited, w.flux_limited
    );
    ensure(ca < cw, format!("adaptive contact not sharper: {detail}"))?;
    ensure(
        a.positivity_fallbacks == 0 && w.positivity_fallbacks == 0,
        format!("positivity fallbacks fired: {detail}"),
    )?;
    within(start, 300.0)?;
    Ok(detail)
}

/// Fine-mesh interface positions where the pressure jumps by more than 2%
/// between neighboring cells, one per cluster.
fn shock_positions(g: &GridSpec, p: &[f64]) -> Vec<f64> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut last: Option<usize> = None;
    for j in 1..p.len() {
        let jump = (p[j] - p[j - 1]).abs() / p[j].min(p[j - 1]);
        if jump <= 0.02 {
            continue;
        }
        let x = g.xmin + j as f64 * g.dx;
        match (last, out.last_mut()) {
            (Some(l), Some(s)) if j - l <= 3 => {
                if jump > s.1 {
                    *s = (x, jump);
                }
            }
            _ => out.push((x, jump)),
        }
        last = Some(j);
    }
    out.into_iter().map(|s| s.0).collect()
}

// 7 and 8. efficiency and indicator behavior on the shock-density wave case
fn shock_density(reference: &mut Option<(GridSpec, Vec<f64>)>) -> (Outcome, Outcome) {
    let start = Instant::now();
    let runs = run_1d("ex1", 600, Scheme::Adaptive).and_then(|a| Ok((a, run_1d("ex1", 600, Scheme::Aweno)?)));
    let (a, w) = match runs {
        Ok(r) => r,
        Err(e) => return (Err(e.clone()), Err(e)),
    };
    let dx = a.grid.dx;
    let diff: f64 = a.rho.iter().zip(&w.rho).map(|(x, y)| (x - y).abs() * dx).sum();
    let norm: f64 = w.rho.iter().map(|x| x.abs() * dx).sum();
    let ratio = a.solver_ms / w.solver_ms;
    let t = start.elapsed().as_secs_f64();
    let t7 = t;
    let c7 = (|| {
        let detail = format!(
            "adaptive {:.0} ms vs A-WENO {:.0} ms (ratio {ratio:.2}), L1 difference {:.2}% of norm, {t:.1} s",
            a.solver_ms,
            w.solver_ms,
            100.0 * diff / norm
        );
        ensure(ratio <= 0.9, format!("too slow: {detail}"))?;
        ensure(diff <= 0.05 * norm, format!("solutions differ: {detail}"))?;
        ensure(t < 120.0, format!("runtime: {detail}"))?;
        Ok(detail)
    })();

    let c8 = (|| {
        let start = Instant::now();
        let c = case_lookup("ex1").unwrap();
        let g = c.grid(Some(2400), None).map_err(|e| e.to_string())?;
        let (u, _) = init_fields_1d(&c, &g).map_err(|e| e.to_string())?;
        let cfg = SolverConfig {
            scheme: Scheme::Aweno,
            ..SolverConfig::default()
        };
        let mut s = Solver::new(g.clone(), c.gas(), c.boundary.clone(), cfg, u).map_err(|e| e.to_string())?;
        s.run_to(c.t_final, |_| {}).map_err(|e| e.to_string())?;
        let gas = c.gas();
        let p: Vec<f64> = s
            .state
            .u
            .iter_physical(&g)
            .map(|(_, _, v)| Conserved(v).pressure(&gas))
            .collect();
        *reference = Some((g.clone(), p.clone()));
        let shocks = shock_positions(&g, &p);
        let n = a.x_tags.len();
        let non_s = a.x_tags.iter().filter(|&&t| t != RegionTag::S).count();
        let frac = non_s as f64 / n as f64;
        let mut missed = Vec::new();
        for &xs in &shocks {
            for q in 0..n {
                let xq = a.grid.xmin + q as f64 * dx;
                if (xq - xs).abs() <= 2.0 * dx + 1e-12 && a.x_tags[q] == RegionTag::S {
                    missed.push(format!("{xq:.3}"));
                }
            }
        }
        let t = start.elapsed().as_secs_f64();
        let bundled = t7 + t;
        let detail = format!(
            "non-S fraction {:.1}%, {} reference shocks, {} S interfaces within 2 cells of a shock{}, {t:.1} s",
            100.0 * frac,
            shocks.len(),
            missed.len(),
            if missed.is_empty() { String::new() } else { format!(" (at x = {})", missed.join(", ")) }
        );
        ensure(bundled < 120.0, format!("runtime with criterion 7 {bundled:.1} s: {detail}"))?;
        ensure(frac < 0.25, format!("too many non-S interfaces: {detail}"))?;
        ensure(!shocks.is_empty() && missed.is_empty(), format!("shock not flagged: {detail}"))?;
        Ok(detail)
    })();
    (c7, c8)
}

fn smoke_2d(case: &str, nx: usize, ny: usize, t_end: f64) -> Result<String, String> {
    let c = case_lookup(case).unwrap();
    let g = c.grid(Some(nx), Some(ny)).map_err(|e| e.to_string())?;
    let (u, _) = init_fields_2d(&c, &g).map_err(|e| e.to_string())?;
    let cfg = SolverConfig {
        kappas: c.kappas,
        gravity: c.gravity,
        ..SolverConfig::default()
    };
    let mut s = Solver::new(g, c.gas(), c.boundary.clone(), cfg, u).map_err(|e| e.to_string())?;
    let mut full = [false; 2];
    // every step ends with a positivity check; an inadmissible cell aborts the run
    s.run_to(t_end, |st| {
        if st.detected {
            full[0] |= st.counts_x.iter().all(|&n| n > 0);
            full[1] |= st.counts_y.is_some_and(|c| c.iter().all(|&n| n > 0));
        }
    })
    .map_err(|e| format!("{case}: {e}"))?;
    ensure(full[0] && full[1], format!("{case}: some direction never showed all three tags"))?;
    let tot = s.state.totals;
    Ok(format!(
        "{case} {nx}x{ny} to t={t_end}: {} steps, {} limited fluxes",
        tot.steps, tot.flux_limited
    ))
}

// 9. 2-D desk-scale runs
fn smoke() -> Outcome {
    let start = Instant::now();
    let a = smoke_2d("ex4-config3", 100, 100, 1.0)?;
    let b = smoke_2d("ex6", 75, 300, 1.95)?;
    let t = within(start, 1800.0)?;
    Ok(format!("{a}; {b}; {t:.0} s"))
}

fn main() {
    let mut failures = 0;
    let mut report = |n: usize, name: &str, r: Outcome| {
        match &r {
            Ok(d) => println!("PASS criterion {n} {name}: {d}"),
            Err(d) => {
                failures += 1;
                println!("FAIL criterion {n} {name}: {d}")
            }
        }
    };
    report(1, "kernel exactness", kernels());
    report(2, "flux suite", fluxes());
    report(3, "fifth-order EOC, conservative", eoc_conservative());
    report(4, "fifth-order EOC, primitive; balance", eoc_primitive());
    report(5, "conservation", conservation());
    report(6, "blast wave contact", blast_wave());
    let mut reference = None;
    let (c7, c8) = shock_density(&mut reference);
    report(7, "efficiency", c7);
    report(8, "indicator placement", c8);
    report(9, "2-D smoke", smoke());
    println!("{failures} of 9 criteria failed");
    if failures > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
