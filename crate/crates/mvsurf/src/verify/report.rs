//! Structured pass/fail records for the identity checks, serializable as
//! JSON with a stable field order so that reports are reproducible
//! byte-for-byte from (seed, prime) once timing is stripped.

use serde::{Deserialize, Serialize};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// All trials degenerate; nothing was learned.
    Inconclusive,
    /// det(F) vanished identically across redraws: admissible for the
    /// general-support checks, distinct from failure.
    ZeroBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "undetermined")]
    Undetermined,
}

impl Sign {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
            Sign::Undetermined => "undetermined",
        }
    }
}

/// Echo of the randomized-trial configuration, for reproducibility.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub prime: String,
    pub trials: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: serde_json::Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sign: Option<Sign>,
    pub observed: serde_json::Value,
    pub trials: Vec<serde_json::Value>,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl VerificationReport {
    /// Pass and zero-branch both count as "no failure".
    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::ZeroBranch)
    }

    pub fn with_timing(mut self, start: Instant) -> Self {
        self.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        self
    }

    /// Compact JSON with the timing field removed; byte-identical across
    /// runs with the same (command, seed, prime).
    pub fn canonical_json(&self) -> String {
        let mut clone = self.clone();
        clone.timing_ms = None;
        serde_json::to_string(&clone).expect("report serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One human-readable line per check.
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::ZeroBranch => "zero-branch",
        };
        let sign = self
            .sign
            .map(|s| format!(" sign={}", s.as_str()))
            .unwrap_or_default();
        let timing = self
            .timing_ms
            .map(|t| format!(" ({t:.1} ms)"))
            .unwrap_or_default();
        let params = compact_params(&self.params);
        format!("{:<12} {params:<32} {status}{sign}{timing}", self.check)
    }
}

fn compact_params(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", compact_params(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => {
            let s = other.to_string();
            if s.len() > 24 {
                format!("{}..", &s[..22])
            } else {
                s
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport {
            check: "identity".into(),
            params: serde_json::json!({"m": 1, "n": 1}),
            status: Status::Pass,
            sign: Some(Sign::Minus),
            observed: serde_json::json!({}),
            trials: vec![],
            config: ConfigEcho {
                prime: "101".into(),
                trials: 2,
                seed: 0,
                mutation: None,
            },
            timing_ms: Some(12.5),
        }
    }

    #[test]
    fn canonical_json_strips_timing() {
        let r = sample();
        let c = r.canonical_json();
        assert!(!c.contains("timing_ms"));
        assert!(c.contains("\"sign\":\"-1\""));
        let mut r2 = sample();
        r2.timing_ms = Some(99.0);
        assert_eq!(c, r2.canonical_json());
    }

    #[test]
    fn status_serialization() {
        assert_eq!(
            serde_json::to_string(&Status::ZeroBranch).unwrap(),
            "\"zero-branch\""
        );
    }
}
