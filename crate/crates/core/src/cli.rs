//! Subcommands of the `se2-frames` binary. Each writes its files into
//! `out_dir` and returns a printable summary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::ExperimentConfig;
use crate::cutoff::{covering_counts, cutoff_frame_bounds, heuristic_check, multiplicity_field};
use crate::error::{Error, Result};
use crate::export::{format_f64, format_opt, write_csv, write_log_heatmap};
use crate::framefield::{frame_report, omega_grid, sweep, FrameReport};
use crate::gramian::{build_gramian, spectrum, HERMITIAN_TOL};
use crate::lattice::{count_field, Point};
use crate::oracle::{identity_check, IdentityReport};
use crate::wavelet::{calderon_continuous, calderon_semidiscrete};

/// Where and what to write.
#[derive(Clone, Debug)]
pub struct Output {
    pub dir: PathBuf,
    pub png: bool,
}

impl Output {
    pub fn new(dir: impl Into<PathBuf>, png: bool) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir, png })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub struct Analysis {
    pub report: FrameReport,
    pub summary: String,
}

/// Sweeps the spectra of `G(omega)` and writes `field.csv`, `report.json`
/// and, with PNG output, `lambda_min.png` / `lambda_max.png`.
pub fn cmd_analyze(cfg: &ExperimentConfig, out: &Output) -> Result<Analysis> {
    let spec = cfg.sampling_spec()?;
    let field = sweep(&spec, &cfg.sweep_config()?)?;
    let report = frame_report(&field, field.cell_area, spec.num_generators());
    let lo = field.mean_lambda_min();
    let hi = field.mean_lambda_max();
    write_csv(
        &out.path("field.csv"),
        &["omega1", "omega2", "n", "mean_lambda_min", "mean_lambda_max"],
        field.grid.iter().enumerate().map(|(i, w)| {
            vec![
                format_f64(w[0]),
                format_f64(w[1]),
                field.counts[i].to_string(),
                format_opt(lo[i]),
                format_opt(hi[i]),
            ]
        }),
    )?;
    write_json(&out.path("report.json"), &report)?;
    if out.png {
        write_log_heatmap(&out.path("lambda_min.png"), &lo, field.grid_size)?;
        write_log_heatmap(&out.path("lambda_max.png"), &hi, field.grid_size)?;
    }

    let mut s = String::new();
    let _ = writeln!(s, "grid {0}x{0}, {1} repetitions, seed {2}", cfg.grid, cfg.repetitions, cfg.seed);
    let _ = writeln!(
        s,
        "max n(omega) = {}, N = {}: {}",
        report.max_n,
        report.num_generators,
        if report.feasible { "feasible" } else { "INFEASIBLE (N < max n)" }
    );
    let _ = writeln!(s, "A = {:e}", report.lower);
    let _ = writeln!(s, "B = {:e}", report.upper);
    let _ = writeln!(s, "kappa (pooled) = {:e}", report.kappa);
    let _ = writeln!(
        s,
        "kappa (per repetition) = {:e} +/- {:e}",
        report.kappa_mean, report.kappa_std
    );
    let _ = writeln!(s, "kappa (mean fields) = {:e}", report.kappa_mean_field);
    let _ = writeln!(
        s,
        "near-singular cells = {:.1}%, empty cells = {}",
        100.0 * report.near_singular_fraction,
        report.empty_cells
    );
    if report.degenerate {
        let _ = writeln!(s, "DEGENERATE: no positive lower frame bound");
    }
    Ok(Analysis { report, summary: s })
}

/// `calderon.csv` on a `grid x grid` cell-centered grid of `[-rho, rho]^2`
/// with the semidiscrete Calderon function, its continuous counterpart and
/// the reciprocal inside `B(0, rho)`.
pub fn cmd_calderon(cfg: &ExperimentConfig, out: &Output) -> Result<String> {
    let w = cfg.wavelet()?;
    let angles = cfg.angles();
    let m = cfg.grid;
    let h = 2.0 * cfg.rho / m as f64;
    let mut values = Vec::with_capacity(m * m);
    let mut reciprocal = Vec::with_capacity(m * m);
    let mut rows = Vec::with_capacity(m * m);
    let mut extreme: Option<(f64, f64)> = None;
    for j in 0..m {
        for i in 0..m {
            let xi = Point::new(-cfg.rho + (i as f64 + 0.5) * h, -cfg.rho + (j as f64 + 0.5) * h);
            let c = calderon_semidiscrete(&xi, &w, &angles);
            let r = (xi.norm() < cfg.rho).then(|| 1.0 / c);
            if let Some(r) = r {
                extreme = Some(match extreme {
                    None => (c, r),
                    Some((lo, hi)) => (lo.min(c), hi.max(r)),
                });
            }
            rows.push(vec![
                format_f64(xi[0]),
                format_f64(xi[1]),
                format_f64(c),
                format_f64(calderon_continuous(&xi, &w)),
                format_opt(r),
            ]);
            values.push(Some(c));
            reciprocal.push(r);
        }
    }
    write_csv(
        &out.path("calderon.csv"),
        &["xi1", "xi2", "calderon", "calderon_continuous", "reciprocal"],
        rows,
    )?;
    if out.png {
        write_log_heatmap(&out.path("calderon.png"), &values, m)?;
        write_log_heatmap(&out.path("calderon_reciprocal.png"), &reciprocal, m)?;
    }
    let mut s = format!("N = {}, grid {m}x{m} on [-rho, rho]^2\n", angles.len());
    if let Some((lo, hi)) = extreme {
        let _ = writeln!(s, "min C inside B(0, rho) = {lo:e}");
        let _ = writeln!(s, "max 1/C inside B(0, rho) = {hi:e}");
    }
    Ok(s)
}

/// Covering counts `m, M` for the cutoff wavelet of side `L`, the resulting
/// bounds, and `covering.csv` with the multiplicity field.
pub fn cmd_covering(cfg: &ExperimentConfig, out: &Output) -> Result<String> {
    let l = cfg
        .cutoff_length
        .ok_or_else(|| Error::config("L", "missing; the covering bounds need L"))?;
    let angles = cfg.angles();
    let count = covering_counts(cfg.p, l, cfg.rho, &angles, cfg.resolution)?;
    let bounds = cutoff_frame_bounds(&count, l, cfg.sigma)?;
    let heuristic = heuristic_check(cfg.p, l, cfg.rho)?;
    let field = multiplicity_field(cfg.p, l, cfg.rho, &angles, cfg.resolution, 0.0)?;
    write_csv(
        &out.path("covering.csv"),
        &["xi1", "xi2", "count"],
        field
            .iter()
            .map(|s| vec![format_f64(s.xi[0]), format_f64(s.xi[1]), s.count.to_string()]),
    )?;
    write_json(
        &out.path("covering.json"),
        &serde_json::json!({ "count": count, "bounds": bounds, "heuristic": heuristic }),
    )?;

    let mut s = String::new();
    let _ = writeln!(s, "N = {}, L = {l}, polar resolution {}", angles.len(), count.resolution);
    let _ = writeln!(s, "m = {}, M = {}", count.min, count.max);
    let _ = writeln!(s, "lower = {:e}, upper = {:e}", bounds.lower, bounds.upper);
    match bounds.kappa_bound {
        Some(k) => {
            let _ = writeln!(s, "kappa <= {k:e}");
        }
        None => {
            let _ = writeln!(s, "WARNING: m = 0, degenerate covering, no lower bound");
        }
    }
    let _ = writeln!(s, "{heuristic}");
    Ok(s)
}

/// Both sides of the sampled-energy identity, written to `oracle.json`.
pub fn cmd_oracle(cfg: &ExperimentConfig, out: &Output) -> Result<(IdentityReport, String)> {
    let tf = cfg
        .test_function
        .as_ref()
        .ok_or_else(|| Error::config("test_function", "missing"))?;
    let f = cfg.test_function()?;
    let spec = cfg.fixed_spec()?;
    let report = identity_check(&f, &spec, tf.tail_tol, tf.grid)?;
    write_json(&out.path("oracle.json"), &report)?;
    let s = format!(
        "lattice sum        = {}\nquadratic integral = {}\nrelative error     = {:e}\n",
        format_f64(report.energy_sum),
        format_f64(report.quadratic_form_integral),
        report.relative_error
    );
    Ok((report, s))
}

/// `G(omega)` at the configured `omega` as `gramian_real.csv` /
/// `gramian_imag.csv`, with its spectrum in `spectrum.csv`.
pub fn cmd_gramian(cfg: &ExperimentConfig, out: &Output) -> Result<String> {
    let omega = cfg.omega.map(|w| Point::new(w[0], w[1])).unwrap_or_else(Point::zeros);
    let spec = cfg.fixed_spec()?;
    let g = build_gramian(&omega, &spec)?;
    let n = g.dim();
    let header: Vec<String> = (0..n).map(|j| format!("c{j}")).collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let part = |f: fn(&nalgebra::Complex<f64>) -> f64| {
        (0..n)
            .map(|i| (0..n).map(|j| format_f64(f(&g.entries[(i, j)]))).collect())
            .collect::<Vec<Vec<String>>>()
    };
    write_csv(&out.path("gramian_real.csv"), &header, part(|z| z.re))?;
    write_csv(&out.path("gramian_imag.csv"), &header, part(|z| z.im))?;
    let sp = spectrum(&g)?;
    write_csv(
        &out.path("spectrum.csv"),
        &["eigenvalue"],
        sp.eigenvalues.iter().map(|v| vec![format_f64(*v)]),
    )?;

    let mut s = String::new();
    let _ = writeln!(s, "omega = ({}, {}), |V| = {n}", omega[0], omega[1]);
    for (c, p) in g.indices.coords.iter().zip(&g.indices.points) {
        let _ = writeln!(s, "  nu = {c:?} -> ({}, {})", p[0], p[1]);
    }
    if n <= 8 {
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| {
                    let z = g.entries[(i, j)];
                    format!("{:+.6e}{:+.6e}i", z.re, z.im)
                })
                .collect();
            let _ = writeln!(s, "  [{}]", row.join(", "));
        }
    }
    let defect = g.hermitian_defect();
    let _ = writeln!(
        s,
        "Hermitian: {} (defect {defect:e})",
        if defect <= HERMITIAN_TOL { "PASS" } else { "FAIL" }
    );
    let ev: Vec<String> = sp.eigenvalues.iter().map(|v| format!("{v:e}")).collect();
    let _ = writeln!(s, "spectrum: [{}]", ev.join(", "));
    Ok(s)
}

/// `count.csv`: `n(omega) = |V_rho(omega)|` on the dual cell grid.
pub fn cmd_count(cfg: &ExperimentConfig, out: &Output) -> Result<String> {
    let dual = cfg.lattice()?.annihilator();
    let grid = omega_grid(&dual.centered_cell(), cfg.grid);
    let field = count_field(&grid, cfg.rho, &dual);
    write_csv(
        &out.path("count.csv"),
        &["omega1", "omega2", "n"],
        grid.iter()
            .zip(&field.counts)
            .map(|(w, n)| vec![format_f64(w[0]), format_f64(w[1]), n.to_string()]),
    )?;
    if out.png {
        let values: Vec<Option<f64>> = field.counts.iter().map(|&n| Some(n as f64)).collect();
        write_log_heatmap(&out.path("count.png"), &values, cfg.grid)?;
    }
    let min = field.counts.iter().min().copied().unwrap_or(0);
    Ok(format!(
        "grid {0}x{0}: min n = {min}, max n = {1}, N = {2}\n",
        cfg.grid, field.max, cfg.num_angles
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn run_dir() -> (tempfile::TempDir, Output) {
        let dir = tempfile::tempdir().unwrap();
        let out = Output::new(dir.path().join("o"), true).unwrap();
        (dir, out)
    }

    #[test]
    fn analyze_smoke_run() {
        let cfg = parse_config(
            r#"{"p":0.5,"sigma":0.6366,"rho":0.7071,"num_angles":4,"grid":1,"repetitions":1}"#,
        )
        .unwrap();
        let (_d, out) = run_dir();
        let a = cmd_analyze(&cfg, &out).unwrap();
        let csv = fs::read_to_string(out.path("field.csv")).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "omega1,omega2,n,mean_lambda_min,mean_lambda_max");
        assert!(a.summary.contains("feasible"));
        assert!(out.path("lambda_min.png").exists());
        assert!(out.path("report.json").exists());
    }

    #[test]
    fn gramian_singleton() {
        let cfg = parse_config(
            r#"{"p":0.5,"sigma":0.6366197723675814,"rho":0.3,"num_angles":4,"omega":[0,0]}"#,
        )
        .unwrap();
        let (_d, out) = run_dir();
        let s = cmd_gramian(&cfg, &out).unwrap();
        assert!(s.contains("Hermitian: PASS"), "{s}");
        let re = fs::read_to_string(out.path("gramian_real.csv")).unwrap();
        let v: f64 = re.lines().nth(1).unwrap().parse().unwrap();
        assert!((v - 4.0 * (-4.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn gramian_spectrum_is_ascending() {
        let cfg = parse_config(r#"{"p":0.5,"sigma":0.6,"rho":1.5,"num_angles":9,"omega":[0.1,0.2]}"#)
            .unwrap();
        let (_d, out) = run_dir();
        cmd_gramian(&cfg, &out).unwrap();
        let sp: Vec<f64> = fs::read_to_string(out.path("spectrum.csv"))
            .unwrap()
            .lines()
            .skip(1)
            .map(|l| l.parse().unwrap())
            .collect();
        assert!(sp.len() > 1);
        assert!(sp.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn calderon_mask() {
        let cfg = parse_config(r#"{"p":0.5,"sigma":0.6,"rho":1,"num_angles":6,"grid":10}"#).unwrap();
        let (_d, out) = run_dir();
        cmd_calderon(&cfg, &out).unwrap();
        let mut rdr = csv::Reader::from_path(out.path("calderon.csv")).unwrap();
        let mut rows = 0;
        for rec in rdr.records() {
            let rec = rec.unwrap();
            let x: f64 = rec[0].parse().unwrap();
            let y: f64 = rec[1].parse().unwrap();
            let c: f64 = rec[2].parse().unwrap();
            if (x * x + y * y).sqrt() >= 1.0 {
                assert_eq!(&rec[4], "");
            } else {
                let r: f64 = rec[4].parse().unwrap();
                assert!((r * c - 1.0).abs() < 1e-15);
            }
            rows += 1;
        }
        assert_eq!(rows, 100);
    }

    #[test]
    fn covering_reports() {
        let cfg = parse_config(
            r#"{"p":0.5,"sigma":0.6366197723675814,"rho":0.7071067811865476,"num_angles":4,"L":1,"resolution":128}"#,
        )
        .unwrap();
        let (_d, out) = run_dir();
        let s = cmd_covering(&cfg, &out).unwrap();
        assert!(s.contains("m = 1, M = 2"), "{s}");
        assert!(s.contains("kappa <= 1.09196"), "{s}");
        let none = parse_config(r#"{"p":0.5,"sigma":0.6,"rho":3,"num_angles":4,"L":1,"resolution":64}"#)
            .unwrap();
        assert!(cmd_covering(&none, &out).unwrap().contains("WARNING"));
        let missing = parse_config(r#"{"p":0.5,"sigma":0.6,"rho":1,"num_angles":4}"#).unwrap();
        assert!(matches!(cmd_covering(&missing, &out), Err(Error::Config { .. })));
    }

    #[test]
    fn count_field_csv() {
        let cfg =
            parse_config(r#"{"p":0.5,"sigma":0.6,"rho":1.618,"num_angles":14,"grid":32}"#).unwrap();
        let (_d, out) = run_dir();
        let s = cmd_count(&cfg, &out).unwrap();
        assert!(s.contains("max n = "));
        let csv = fs::read_to_string(out.path("count.csv")).unwrap();
        assert_eq!(csv.lines().count(), 32 * 32 + 1);
    }

    #[test]
    fn oracle_json() {
        let cfg = parse_config(
            r#"{"p":0.5,"sigma":0.6,"rho":1,"num_angles":2,
                "test_function":{"bumps":[{"center":[0.2,0.1],"radius":0.4,"coeff":[1,0]}]}}"#,
        )
        .unwrap();
        let (_d, out) = run_dir();
        let (r, s) = cmd_oracle(&cfg, &out).unwrap();
        assert!(r.relative_error < 1e-3, "{s}");
        let json: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(out.path("oracle.json")).unwrap()).unwrap();
        assert!(json["relative_error"].as_f64().unwrap() < 1e-3);
    }
}
