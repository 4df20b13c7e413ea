use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::twist::CharacterPoint;
use crate::word::{Surface, Twist};

/// One configuration shared by every command; each command reads the fields it needs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub surface: String,
    /// Twist short names (`T`, `U`, `W`).
    pub program: Vec<String>,
    /// Boundary trace targets; orbits start from a Haar sample when absent.
    pub targets: Option<Vec<f64>>,
    /// Half-width of the boundary window.
    pub window: f64,
    /// Explicit starting point `[a, b, c, x, y, z, d]`.
    pub start: Option<[f64; 7]>,
    pub orbit: OrbitConfig,
    pub verify: VerifyConfig,
    pub equidistribute: EquidistConfig,
    pub ergodicity: ErgodicityConfig,
    pub volume: VolumeConfig,
    pub flow: FlowConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OrbitConfig {
    pub steps: usize,
    /// `cycle` repeats the program; `random` draws from it i.i.d.
    pub mode: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub trace_words: usize,
    pub trace_reps: usize,
    pub max_word_len: usize,
    pub oracle_samples: usize,
    pub fricke_samples: usize,
    pub rotation_samples: usize,
    pub flow_samples: usize,
    /// Twist label (e.g. `N13.T`) whose map gets a corrupted coefficient; for testing
    /// that the suite catches it.
    pub fault: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EquidistConfig {
    /// Short twist name; defaults to the first program entry.
    pub twist: Option<String>,
    pub points: usize,
    pub doublings: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ErgodicityConfig {
    pub steps: usize,
    pub time_batches: usize,
    pub space_batches: usize,
    pub space_batch_size: usize,
    pub start_width: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VolumeConfig {
    pub genus: u32,
    pub epsilon: f64,
    pub samples: u64,
    pub series_tol: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    pub samples: usize,
    /// Times at which trajectories are recorded, for the CSV.
    pub times: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            surface: "N13".into(),
            program: vec!["T".into(), "U".into(), "W".into()],
            targets: None,
            window: 0.05,
            start: None,
            orbit: OrbitConfig::default(),
            verify: VerifyConfig::default(),
            equidistribute: EquidistConfig::default(),
            ergodicity: ErgodicityConfig::default(),
            volume: VolumeConfig::default(),
            flow: FlowConfig::default(),
        }
    }
}

impl Default for OrbitConfig {
    fn default() -> Self {
        OrbitConfig {
            steps: 1000,
            mode: "cycle".into(),
        }
    }
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trace_words: 500,
            trace_reps: 1000,
            max_word_len: 24,
            oracle_samples: 10_000,
            fricke_samples: 100_000,
            rotation_samples: 1000,
            flow_samples: 1000,
            fault: None,
        }
    }
}

impl Default for EquidistConfig {
    fn default() -> Self {
        EquidistConfig {
            twist: None,
            points: 10_000,
            doublings: 4,
        }
    }
}

impl Default for ErgodicityConfig {
    fn default() -> Self {
        ErgodicityConfig {
            steps: 1_000_000,
            time_batches: 100,
            space_batches: 16,
            space_batch_size: 4000,
            start_width: 1e-4,
        }
    }
}

impl Default for VolumeConfig {
    fn default() -> Self {
        VolumeConfig {
            genus: 4,
            epsilon: 0.15,
            samples: 10_000_000,
            series_tol: 1e-10,
        }
    }
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            samples: 1000,
            times: 64,
        }
    }
}

fn bad(field: &str, message: impl Into<String>) -> LabError {
    LabError::Config {
        field: field.into(),
        message: message.into(),
    }
}

impl ExperimentConfig {
    /// Parses JSON; syntax and unknown-field errors carry line and column.
    pub fn from_json(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig = serde_json::from_str(text).map_err(|e| {
            bad(
                "<json>",
                format!("{e}"),
            )
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::from_json(&text)
    }

    /// Compact JSON used to echo the configuration into outputs.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let surface = self.surface()?;
        self.twists()?;
        if let Some(t) = &self.targets {
            let want = match surface {
                Surface::N22 => 2,
                Surface::N13 => 3,
                Surface::N31 => 1,
            };
            if t.len() != want {
                return Err(bad("targets", format!("{} has {want} boundary traces", surface.name())));
            }
        }
        if !(self.window > 0.0) {
            return Err(bad("window", "must be positive"));
        }
        if let Some(s) = &self.start {
            if s.iter().any(|v| !v.is_finite()) {
                return Err(bad("start", "must be finite"));
            }
        }
        if !matches!(self.orbit.mode.as_str(), "cycle" | "random") {
            return Err(bad("orbit.mode", "expected \"cycle\" or \"random\""));
        }
        if self.verify.max_word_len == 0 {
            return Err(bad("verify.max_word_len", "must be positive"));
        }
        if let Some(f) = &self.verify.fault {
            if !Twist::ALL.iter().any(|t| &t.label() == f) {
                return Err(bad("verify.fault", format!("unknown twist {f}")));
            }
        }
        if let Some(t) = &self.equidistribute.twist {
            Twist::lookup(surface, t).map_err(|e| bad("equidistribute.twist", e.to_string()))?;
        }
        if self.equidistribute.points == 0 {
            return Err(bad("equidistribute.points", "must be positive"));
        }
        if self.volume.genus < 4 {
            return Err(bad("volume.genus", "the series diverges below 4"));
        }
        if !(self.volume.epsilon > 0.0 && self.volume.epsilon < std::f64::consts::FRAC_PI_4) {
            return Err(bad("volume.epsilon", "must lie in (0, pi/4)"));
        }
        if self.volume.samples < 10_000 {
            return Err(bad("volume.samples", "need at least 1e4"));
        }
        if !(self.volume.series_tol > 0.0) {
            return Err(bad("volume.series_tol", "must be positive"));
        }
        if !(self.ergodicity.start_width > 0.0) {
            return Err(bad("ergodicity.start_width", "must be positive"));
        }
        Ok(())
    }

    pub fn surface(&self) -> Result<Surface> {
        Surface::parse(&self.surface).map_err(|e| bad("surface", e.to_string()))
    }

    pub fn twists(&self) -> Result<Vec<Twist>> {
        let s = self.surface()?;
        if self.program.is_empty() {
            return Err(bad("program", "empty twist program"));
        }
        self.program
            .iter()
            .map(|n| Twist::lookup(s, n).map_err(|e| bad("program", e.to_string())))
            .collect()
    }

    pub fn start_point(&self) -> Option<CharacterPoint> {
        self.start.map(CharacterPoint::from_array)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = ExperimentConfig::default();
        let back = ExperimentConfig::from_json(&c.echo()).unwrap();
        assert_eq!(c, back);
        assert_eq!(ExperimentConfig::from_json("{}").unwrap(), c);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let e = ExperimentConfig::from_json("{\n  \"seed\": 3,\n  \"sed\": 4\n}").unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("sed") && msg.contains("line 3"), "{msg}");
        let e = ExperimentConfig::from_json(r#"{"volume": {"genus": 3}}"#).unwrap_err();
        assert!(e.to_string().contains("volume.genus"));
        let e = ExperimentConfig::from_json(r#"{"surface": "N22", "program": ["T"]}"#).unwrap_err();
        assert!(e.to_string().contains("program"));
        let e = ExperimentConfig::from_json(r#"{"targets": [0, 0]}"#).unwrap_err();
        assert!(e.to_string().contains("targets"));
    }
}
