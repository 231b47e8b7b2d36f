//! JSON experiment configuration.
//!
//! ```json
//! {"p": 0.5, "sigma": 0.6366, "rho": 0.7071, "num_angles": 4}
//! ```
//!
//! `sigma` may be replaced by the shape factor `p_sigma`. Optional keys:
//! `angles`, `shifts`, `lattice_basis` (rows), `grid`, `repetitions`, `seed`,
//! `output_dir`, `L` and `resolution` for the covering bounds, `omega` for a
//! single Gramian, and `test_function` for the identity oracle.

use std::path::{Path, PathBuf};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::cutoff::DEFAULT_RESOLUTION;
use crate::error::{Error, Result};
use crate::framefield::{draw_shifts, SamplingSpec, Shifts, SweepConfig};
use crate::lattice::{Lattice2D, Point};
use crate::oracle::{BandLimitedTestFunction, Bump};
use crate::wavelet::{uniform_angles, WaveletParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpConfig {
    pub center: [f64; 2],
    pub radius: f64,
    /// `[re, im]`
    pub coeff: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFunctionConfig {
    pub bumps: Vec<BumpConfig>,
    #[serde(default = "default_tail_tol")]
    pub tail_tol: f64,
    #[serde(default = "default_oracle_grid")]
    pub grid: usize,
}

fn default_tail_tol() -> f64 {
    1e-8
}

fn default_oracle_grid() -> usize {
    16
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub p: f64,
    pub sigma: f64,
    pub rho: f64,
    pub num_angles: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<Vec<[f64; 2]>>,
    #[serde(default = "identity_rows")]
    pub lattice_basis: [[f64; 2]; 2],
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default = "default_repetitions")]
    pub repetitions: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub cutoff_length: Option<f64>,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_function: Option<TestFunctionConfig>,
}

fn identity_rows() -> [[f64; 2]; 2] {
    [[1.0, 0.0], [0.0, 1.0]]
}

fn default_grid() -> usize {
    256
}

fn default_repetitions() -> usize {
    20
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

// the on-disk form, before sigma / p_sigma are reconciled
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    p: f64,
    sigma: Option<f64>,
    p_sigma: Option<f64>,
    rho: f64,
    num_angles: usize,
    #[serde(default)]
    angles: Option<Vec<f64>>,
    #[serde(default)]
    shifts: Option<Vec<[f64; 2]>>,
    #[serde(default = "identity_rows")]
    lattice_basis: [[f64; 2]; 2],
    #[serde(default = "default_grid")]
    grid: usize,
    #[serde(default = "default_repetitions")]
    repetitions: usize,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_output_dir")]
    output_dir: PathBuf,
    #[serde(rename = "L", default)]
    cutoff_length: Option<f64>,
    #[serde(default = "default_resolution")]
    resolution: usize,
    #[serde(default)]
    omega: Option<[f64; 2]>,
    #[serde(default)]
    test_function: Option<TestFunctionConfig>,
}

fn positive(path: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::config(path, format!("must be a positive number, got {v}")))
    }
}

fn at_least_one(path: &str, v: usize) -> Result<()> {
    if v >= 1 {
        Ok(())
    } else {
        Err(Error::config(path, "must be at least 1"))
    }
}

fn finite(path: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        None => Ok(()),
        Some(i) => Err(Error::config(format!("{path}[{i}]"), "must be finite")),
    }
}

/// Parses and validates a JSON configuration.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| {
        let path = e
            .to_string()
            .split('`')
            .nth(1)
            .map(str::to_owned)
            .unwrap_or_else(|| "<document>".into());
        Error::config(path, e.to_string())
    })?;
    positive("p", raw.p)?;
    let sigma = match (raw.sigma, raw.p_sigma) {
        (Some(s), None) => {
            positive("sigma", s)?;
            s
        }
        (None, Some(ps)) => {
            positive("p_sigma", ps)?;
            ps / raw.p
        }
        (Some(_), Some(_)) => {
            return Err(Error::config("sigma", "give either sigma or p_sigma, not both"))
        }
        (None, None) => return Err(Error::config("sigma", "missing; give sigma or p_sigma")),
    };
    let cfg = ExperimentConfig {
        p: raw.p,
        sigma,
        rho: raw.rho,
        num_angles: raw.num_angles,
        angles: raw.angles,
        shifts: raw.shifts,
        lattice_basis: raw.lattice_basis,
        grid: raw.grid,
        repetitions: raw.repetitions,
        seed: raw.seed,
        output_dir: raw.output_dir,
        cutoff_length: raw.cutoff_length,
        resolution: raw.resolution,
        omega: raw.omega,
        test_function: raw.test_function,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
    parse_config(&text)
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        positive("p", self.p)?;
        positive("sigma", self.sigma)?;
        positive("rho", self.rho)?;
        at_least_one("num_angles", self.num_angles)?;
        at_least_one("grid", self.grid)?;
        at_least_one("repetitions", self.repetitions)?;
        at_least_one("resolution", self.resolution)?;
        if let Some(a) = &self.angles {
            finite("angles", a)?;
            if a.len() != self.num_angles {
                return Err(Error::config(
                    "angles",
                    format!("{} angles given, num_angles is {}", a.len(), self.num_angles),
                ));
            }
        }
        if let Some(s) = &self.shifts {
            finite("shifts", &s.concat())?;
            if s.len() != self.num_angles {
                return Err(Error::config(
                    "shifts",
                    format!("{} shifts given, num_angles is {}", s.len(), self.num_angles),
                ));
            }
        }
        finite("lattice_basis", &self.lattice_basis.concat())?;
        let lattice = self.lattice()?;
        if let Some(l) = self.cutoff_length {
            positive("L", l)?;
        }
        if let Some(w) = self.omega {
            finite("omega", &w)?;
        }
        if let Some(tf) = &self.test_function {
            positive("test_function.tail_tol", tf.tail_tol)?;
            at_least_one("test_function.grid", tf.grid)?;
            let f = self.test_function_of(tf)?;
            f.check_band_limit(self.rho)
                .map_err(|e| Error::config("test_function.bumps", e.to_string()))?;
        }
        let path = if self.shifts.is_some() { "shifts" } else { "angles" };
        SamplingSpec::new(self.wavelet()?, lattice, self.rho, self.angles(), self.shifts())
            .map_err(|e| Error::config(path, e.to_string()))?;
        Ok(())
    }

    pub fn wavelet(&self) -> Result<WaveletParams> {
        WaveletParams::new(self.p, self.sigma).map_err(|e| Error::config("p", e.to_string()))
    }

    pub fn lattice(&self) -> Result<Lattice2D> {
        Lattice2D::from_rows(self.lattice_basis)
            .map_err(|e| Error::config("lattice_basis", e.to_string()))
    }

    /// Explicit angles, or `2 pi k / N`.
    pub fn angles(&self) -> Vec<f64> {
        self.angles
            .clone()
            .unwrap_or_else(|| uniform_angles(self.num_angles))
    }

    pub fn shifts(&self) -> Shifts {
        match &self.shifts {
            Some(s) => Shifts::Fixed(s.iter().map(|a| Point::new(a[0], a[1])).collect()),
            None => Shifts::Random,
        }
    }

    pub fn sampling_spec(&self) -> Result<SamplingSpec> {
        SamplingSpec::new(
            self.wavelet()?,
            self.lattice()?,
            self.rho,
            self.angles(),
            self.shifts(),
        )
    }

    /// The sampling spec with explicit shifts. Random shifts are replaced by
    /// those of repetition 0 of a sweep with the same seed.
    pub fn fixed_spec(&self) -> Result<SamplingSpec> {
        let spec = self.sampling_spec()?;
        Ok(match spec.shifts {
            Shifts::Fixed(_) => spec,
            Shifts::Random => spec.with_shifts(draw_shifts(self.seed, 0, self.num_angles)),
        })
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        SweepConfig::new(self.grid, self.repetitions, self.seed)
    }

    pub fn test_function(&self) -> Result<BandLimitedTestFunction> {
        match &self.test_function {
            Some(tf) => self.test_function_of(tf),
            None => Err(Error::config("test_function", "missing")),
        }
    }

    fn test_function_of(&self, tf: &TestFunctionConfig) -> Result<BandLimitedTestFunction> {
        BandLimitedTestFunction::new(
            tf.bumps
                .iter()
                .map(|b| Bump {
                    center: Point::new(b.center[0], b.center[1]),
                    radius: b.radius,
                    coeff: Complex::new(b.coeff[0], b.coeff[1]),
                })
                .collect(),
        )
        .map_err(|e| Error::config("test_function.bumps", e.to_string()))
    }

    /// Command-line overrides.
    pub fn with_overrides(
        mut self,
        grid: Option<usize>,
        repetitions: Option<usize>,
        seed: Option<u64>,
    ) -> Result<Self> {
        if let Some(g) = grid {
            self.grid = g;
        }
        if let Some(r) = repetitions {
            self.repetitions = r;
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}
