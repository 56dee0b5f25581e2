//! Flat run configuration shared by JSON config files and command-line flags.

use clap::Args;
use gravent::experiments::{SweepSpec, SweepVariable};
use gravent::{BellState, Error, OrbitParams, QuadConfig};
use serde::{Deserialize, Serialize};

/// Every key is optional so that a file and the flags can be layered.
/// Keys are the flag names in snake case.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Swept variable: q, tau_ratio or z.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variable: Option<SweepVariable>,
    /// Lower end of the sweep.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lo: Option<f64>,
    /// Upper end of the sweep.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
    /// Number of grid points (at least 2).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Squared charge ratio ξ².
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi2: Option<f64>,
    /// Orbit radius in units of r_s.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    /// Centroid momentum p³/mc.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Momentum spread of the wave packet.
    #[arg(long, allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Proper time in units of τ_s.
    #[arg(long = "tau-ratio", visible_alias = "tau_ratio", allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_ratio: Option<f64>,
    /// Initial Bell state: chi1..chi4.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bell: Option<BellState>,
    /// Report E = 0 next to horizons and where quadrature fails.
    #[arg(long = "stationary-phase", visible_alias = "stationary_phase", num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationary_phase: Option<bool>,
    /// Cap on the Gauss–Hermite node count.
    #[arg(long = "quad-nodes", visible_alias = "quad_nodes")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quad_nodes: Option<usize>,
    /// Free-form provenance notes carried into the output.
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<Vec<String>>,
}

/// A resolution failure that is the caller's fault (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, UsageError> {
        serde_json::from_str(text).map_err(|e| UsageError(format!("invalid config: {e}")))
    }

    /// `other`'s keys win.
    pub fn overlay(self, other: &SweepConfig) -> SweepConfig {
        SweepConfig {
            variable: other.variable.or(self.variable),
            lo: other.lo.or(self.lo),
            hi: other.hi.or(self.hi),
            samples: other.samples.or(self.samples),
            xi2: other.xi2.or(self.xi2),
            z: other.z.or(self.z),
            q: other.q.or(self.q),
            beta: other.beta.or(self.beta),
            tau_ratio: other.tau_ratio.or(self.tau_ratio),
            bell: other.bell.or(self.bell),
            stationary_phase: other.stationary_phase.or(self.stationary_phase),
            quad_nodes: other.quad_nodes.or(self.quad_nodes),
            notes: other.notes.clone().or(self.notes),
        }
    }

    /// The fully explicit config of a sweep; the swept parameter is omitted.
    pub fn from_spec(spec: &SweepSpec) -> Self {
        let f = spec.fixed;
        let skip = |v: SweepVariable, x: f64| (spec.variable != v).then_some(x);
        SweepConfig {
            variable: Some(spec.variable),
            lo: Some(spec.lo),
            hi: Some(spec.hi),
            samples: Some(spec.samples),
            xi2: Some(f.xi2),
            z: skip(SweepVariable::Z, f.z),
            q: skip(SweepVariable::Q, f.q),
            beta: Some(f.beta),
            tau_ratio: skip(SweepVariable::TauRatio, f.tau_ratio),
            bell: Some(spec.bell),
            stationary_phase: Some(spec.stationary_phase),
            quad_nodes: Some(spec.quad.max_nodes),
            notes: Some(spec.notes.clone()),
        }
    }

    /// Builds a validated, normalised sweep. Missing keys are usage errors;
    /// out-of-range values are domain errors.
    pub fn resolve(&self) -> Result<Result<SweepSpec, Error>, UsageError> {
        let need = |v: Option<f64>, key: &str| v.ok_or_else(|| UsageError(format!("missing required --{key}")));
        let variable = self.variable.ok_or_else(|| UsageError("missing required --variable".into()))?;
        let lo = need(self.lo, "lo")?;
        let hi = need(self.hi, "hi")?;
        let swept = |v: SweepVariable, value: Option<f64>, key: &str| {
            if variable == v {
                Ok(value.unwrap_or(lo))
            } else {
                need(value, key)
            }
        };
        let fixed = OrbitParams {
            xi2: need(self.xi2, "xi2")?,
            z: swept(SweepVariable::Z, self.z, "z")?,
            q: swept(SweepVariable::Q, self.q, "q")?,
            beta: need(self.beta, "beta")?,
            tau_ratio: swept(SweepVariable::TauRatio, self.tau_ratio, "tau-ratio")?,
        };
        let quad = match self.quad_nodes {
            Some(n) => QuadConfig::with_node_cap(n),
            None => QuadConfig::from_env(),
        };
        Ok(quad.and_then(|quad| SweepSpec {
            variable,
            lo,
            hi,
            samples: self.samples.unwrap_or(400),
            fixed,
            bell: self.bell.unwrap_or(BellState::Chi1),
            quad,
            stationary_phase: self.stationary_phase.unwrap_or(false),
            notes: self.notes.clone().unwrap_or_default(),
        }
        .normalized()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gravent::experiments::figure_preset;

    #[test]
    fn preset_round_trips_through_json() {
        let spec = figure_preset(4).unwrap();
        let cfg = SweepConfig::from_spec(&spec);
        let text = serde_json::to_string(&cfg).unwrap();
        let back = SweepConfig::from_json(&text).unwrap();
        assert_eq!(back, cfg);
        assert_eq!(back.resolve().unwrap().unwrap(), spec);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(SweepConfig::from_json(r#"{"xi2": 0.1, "colour": "red"}"#).is_err());
    }

    #[test]
    fn flags_override_file() {
        let file = SweepConfig {
            q: Some(0.6),
            beta: Some(1.0),
            ..Default::default()
        };
        let flags = SweepConfig {
            q: Some(2.0),
            ..Default::default()
        };
        let merged = file.overlay(&flags);
        assert_eq!((merged.q, merged.beta), (Some(2.0), Some(1.0)));
    }

    #[test]
    fn missing_keys_are_usage_errors() {
        let cfg = SweepConfig {
            variable: Some(SweepVariable::Q),
            lo: Some(0.0),
            hi: Some(1.0),
            ..Default::default()
        };
        let err = cfg.resolve().unwrap_err();
        assert!(err.0.contains("--xi2"));
    }
}
