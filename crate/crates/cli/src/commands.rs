use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rotsurf::geodesics::integrate;
use rotsurf::io::{self, Drifts, RunConfig, RunSummary};
use rotsurf::physics::energy_report;
use rotsurf::surfaces::surface_mesh;
use rotsurf::verify::{run_suite, Suite};
use rotsurf::{FormulaVariant, GeomError};
use serde::Serialize;

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_DEGENERATE: u8 = 3;
pub const EXIT_EARLY: u8 = 4;

pub struct Opts {
    pub config: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub variant: Option<FormulaVariant>,
}

pub struct Failure {
    pub code: u8,
    pub msg: String,
}

fn config_err(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_CONFIG,
        msg: msg.to_string(),
    }
}

fn fail(msg: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_FAIL,
        msg: msg.to_string(),
    }
}

type Outcome = Result<u8, Failure>;

fn load(o: &Opts) -> Result<RunConfig, Failure> {
    let path = o.config.as_ref().ok_or_else(|| config_err("--config is required"))?;
    let mut cfg = RunConfig::from_path(path).map_err(config_err)?;
    if let Some(v) = o.variant {
        cfg.variant = v;
    }
    Ok(cfg)
}

fn out_dir(o: &Opts, cfg: Option<&RunConfig>) -> Result<PathBuf, Failure> {
    let dir = o
        .out
        .clone()
        .or_else(|| cfg.and_then(|c| c.output.dir.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| fail(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

fn write(dir: &Path, name: &str, text: &str) -> Result<PathBuf, Failure> {
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| fail(format!("cannot write {}: {e}", p.display())))?;
    Ok(p)
}

/// Wall-clock and version go here, never into the data files.
#[derive(Serialize)]
struct RunInfo<'a> {
    command: &'a str,
    version: &'a str,
    unix_time: u64,
    config: &'a RunConfig,
    files: Vec<String>,
}

fn write_run_info(dir: &Path, stem: &str, command: &str, cfg: &RunConfig, files: &[PathBuf]) -> Result<(), Failure> {
    let info = RunInfo {
        command,
        version: env!("CARGO_PKG_VERSION"),
        unix_time: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        config: cfg,
        files: files.iter().map(|p| p.display().to_string()).collect(),
    };
    write(dir, &format!("{stem}_{command}.run.json"), &io::to_json(&info))?;
    Ok(())
}

pub fn surface(o: &Opts) -> Outcome {
    let cfg = load(o)?;
    let grid = cfg.grid.ok_or_else(|| config_err("surface needs a [grid] section"))?;
    if grid.is_empty() {
        return Err(config_err("empty surface grid"));
    }
    let profile = cfg.profile_curve().map_err(config_err)?;
    let path = cfg.angle_path().map_err(config_err)?;
    let (rows, summary) =
        surface_mesh(cfg.family, &profile, &path, &grid, cfg.variant).map_err(fail)?;
    let dir = out_dir(o, Some(&cfg))?;
    let stem = cfg.stem();
    let files = vec![
        write(&dir, &format!("{stem}_mesh.csv"), &io::mesh_csv(&rows))?,
        write(&dir, &format!("{stem}_mesh_summary.json"), &io::to_json(&summary))?,
    ];
    write_run_info(&dir, &stem, "surface", &cfg, &files)?;
    println!("{} mesh, {} rows, variant {}", cfg.family.name(), summary.rows, cfg.variant.name());
    println!("  K    min {:.6e}  max {:.6e}  mean {:.6e}", summary.k_min, summary.k_max, summary.k_mean);
    println!(
        "  |closed - numeric|  max {:.3e}  mean {:.3e}",
        summary.deviation_max, summary.deviation_mean
    );
    println!("  degenerate frames  {}", summary.degenerate);
    if summary.degenerate * 10 > summary.rows {
        return Err(Failure {
            code: EXIT_DEGENERATE,
            msg: format!(
                "degenerate normal frame at {}/{} grid points: {}",
                summary.degenerate,
                summary.rows,
                summary.degenerate_reason.unwrap_or_default()
            ),
        });
    }
    Ok(0)
}

fn print_drifts(d: &Drifts, cfg: &RunConfig) {
    let th = &cfg.thresholds;
    let rows = [
        ("E", Some(d.e), th.energy),
        ("p_a", Some(d.p_a), th.momentum),
        ("p_b", Some(d.p_b), th.momentum),
        ("clairaut1", Some(d.clairaut1), th.clairaut),
        ("clairaut2", Some(d.clairaut2), th.clairaut),
        ("residual", d.residual, th.residual),
    ];
    println!("  {:<10} {:>12} {:>10}", "quantity", "max drift", "limit");
    for (name, x, lim) in rows {
        match x {
            Some(x) => println!("  {name:<10} {x:>12.3e} {lim:>10.1e}"),
            None => println!("  {name:<10} {:>12} {lim:>10.1e}", "n/a"),
        }
    }
}

#[derive(Serialize)]
struct TrajectoryJson<'a> {
    meta: &'a rotsurf::geodesics::TrajectoryMeta,
    variant: FormulaVariant,
    columns: &'a [&'a str],
    samples: Vec<serde_json::Value>,
}

fn trajectory_json(tr: &rotsurf::geodesics::Trajectory, variant: FormulaVariant) -> String {
    let samples = tr
        .samples
        .iter()
        .map(|s| {
            let (x, r) = (&s.state, &s.record);
            serde_json::json!({
                "s": r.s, "a": x.a, "b": x.b, "t": x.t, "va": x.va, "vb": x.vb, "vt": x.vt,
                "E": r.e, "p_a": r.p_a, "p_b": r.p_b, "clairaut1": r.clairaut1,
                "clairaut2": r.clairaut2, "V": r.v, "phi": r.phi, "theta": r.theta, "l": r.l,
            })
        })
        .collect();
    io::to_json(&TrajectoryJson {
        meta: &tr.meta,
        variant,
        columns: &io::TRAJECTORY_COLUMNS,
        samples,
    })
}

pub fn geodesic(o: &Opts, allow_early: bool) -> Outcome {
    let cfg = load(o)?;
    let m = cfg.metric().map_err(config_err)?;
    let st0 = cfg.initial_state(&m).map_err(config_err)?;
    let tr = integrate(&m, st0, cfg.s_end, &cfg.integrator).map_err(fail)?;
    let chart = cfg.initial.and_then(|i| i.chart).map(|c| (c.phi, c.theta));
    let summary = RunSummary::from_trajectory(&tr, cfg.variant, chart);
    let energy = energy_report(&tr, cfg.variant);
    let dir = out_dir(o, Some(&cfg))?;
    let stem = cfg.stem();
    let files = vec![
        write(&dir, &format!("{stem}_trajectory.csv"), &io::trajectory_csv(&tr))?,
        write(&dir, &format!("{stem}_trajectory.json"), &trajectory_json(&tr, cfg.variant))?,
        write(&dir, &format!("{stem}_energy.json"), &io::to_json(&energy))?,
        write(&dir, &format!("{stem}_summary.csv"), &io::summary_csv(std::slice::from_ref(&summary)))?,
    ];
    write_run_info(&dir, &stem, "geodesic", &cfg, &files)?;
    println!(
        "{} geodesic, {} steps, s = {}, termination {}",
        cfg.family.name(),
        tr.meta.steps,
        tr.last().record.s,
        tr.meta.termination.label()
    );
    print_drifts(&summary.drifts, &cfg);
    if !tr.meta.termination.is_completed() && !allow_early {
        return Err(Failure {
            code: EXIT_EARLY,
            msg: format!(
                "integration stopped early: {}",
                serde_json::to_string(&tr.meta.termination).unwrap_or_default()
            ),
        });
    }
    let bad = summary.drifts.violations(&cfg.thresholds);
    if !bad.is_empty() {
        return Err(fail(format!("drift above threshold: {}", bad.join(", "))));
    }
    Ok(0)
}

pub fn sweep(o: &Opts, workers: Option<usize>) -> Outcome {
    let cfg = load(o)?;
    io::sweep_nodes(&cfg).map_err(config_err)?;
    cfg.metric().map_err(config_err)?;
    let workers = workers.unwrap_or_else(|| {
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
    });
    let rows = io::run_sweep(&cfg, workers).map_err(|e| match e {
        GeomError::Invalid(_) => config_err(e),
        e => fail(e),
    })?;
    let dir = out_dir(o, Some(&cfg))?;
    let stem = cfg.stem();
    let files = vec![write(&dir, &format!("{stem}_sweep.csv"), &io::summary_csv(&rows))?];
    write_run_info(&dir, &stem, "sweep", &cfg, &files)?;
    let done = rows.iter().filter(|r| r.termination == "completed").count();
    println!("{} sweep, {} nodes, {done} completed, {workers} workers", cfg.family.name(), rows.len());
    Ok(0)
}

pub fn check(o: &Opts, only: Option<&str>) -> Outcome {
    let suites = match only {
        Some(name) => vec![name.parse::<Suite>().map_err(config_err)?],
        None => Suite::ALL.to_vec(),
    };
    let variant = o.variant.unwrap_or_default();
    let mut reports = Vec::new();
    for s in suites {
        let (rep, secs) = run_suite(s, variant);
        eprintln!(
            "{:<13} {}  {:.2} s, {} checks",
            s.name(),
            if rep.passed { "pass" } else { "FAIL" },
            secs,
            rep.lines.iter().filter(|l| l.gating).count()
        );
        for l in rep.lines.iter().filter(|l| l.gating && !l.passed) {
            eprintln!("    failed: {}: {} (limit {}) {}", l.label, l.value, l.threshold, l.detail);
        }
        reports.push(rep);
    }
    let json = io::to_json(&reports);
    if let Some(dir) = &o.out {
        std::fs::create_dir_all(dir).map_err(fail)?;
        write(dir, "check_report.json", &json)?;
    }
    print!("{json}");
    if reports.iter().all(|r| r.passed) {
        Ok(0)
    } else {
        Ok(EXIT_FAIL)
    }
}

pub fn plot(o: &Opts) -> Outcome {
    let cfg = load(o)?;
    let m = cfg.metric().map_err(config_err)?;
    let st0 = cfg.initial_state(&m).map_err(config_err)?;
    let tr = integrate(&m, st0, cfg.s_end, &cfg.integrator).map_err(fail)?;
    let dir = out_dir(o, Some(&cfg))?;
    let stem = cfg.stem();
    let files = vec![
        write(&dir, &format!("{stem}_drift.svg"), &io::drift_svg(&tr))?,
        write(&dir, &format!("{stem}_orbit.svg"), &io::orbit_svg(&tr))?,
    ];
    write_run_info(&dir, &stem, "plot", &cfg, &files)?;
    for f in &files {
        println!("wrote {}", f.display());
    }
    Ok(0)
}
