//! Certificate and summary records emitted by the verification pipeline.

use std::time::Instant;

use serde::Serialize;

/// One verified claim: either every instance over its quantifier ranges
/// reduced/evaluated as required, or the failing witnesses are listed.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub id: String,
    pub quantifier_ranges: String,
    pub instances_checked: usize,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
    pub pass: bool,
}

impl Certificate {
    /// A certificate that failed before any instance could run (for example
    /// because the build it depends on failed).
    pub fn aborted(id: &str, reason: String) -> Certificate {
        Certificate {
            id: id.to_string(),
            quantifier_ranges: String::new(),
            instances_checked: 0,
            failures: vec![reason],
            elapsed_ms: 0,
            pass: false,
        }
    }
}

/// Incremental builder used by the certification loops.
pub struct CertCheck {
    id: String,
    quantifier_ranges: String,
    instances: usize,
    failures: Vec<String>,
    started: Instant,
}

impl CertCheck {
    pub fn new(id: &str, quantifier_ranges: &str) -> Self {
        CertCheck {
            id: id.to_string(),
            quantifier_ranges: quantifier_ranges.to_string(),
            instances: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Records one instance; `witness` is stored when `ok` is false.
    pub fn instance(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn finish(self) -> Certificate {
        Certificate {
            id: self.id,
            quantifier_ranges: self.quantifier_ranges,
            instances_checked: self.instances,
            pass: self.failures.is_empty(),
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Top-level run summary.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub p: usize,
    pub q: usize,
    pub dimension: Option<usize>,
    pub status: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_pass_tracks_failures() {
        let mut c = CertCheck::new("demo", "i in 1..=2");
        c.instance(true, || unreachable!());
        c.instance(false, || "i=2".to_string());
        let cert = c.finish();
        assert!(!cert.pass);
        assert_eq!(cert.instances_checked, 2);
        assert_eq!(cert.failures, vec!["i=2".to_string()]);
    }

    #[test]
    fn serializes_to_expected_shape() {
        let cert = Certificate {
            id: "lemma:I".into(),
            quantifier_ranges: "i in 1..=p; j in 1..=q".into(),
            instances_checked: 6,
            failures: vec![],
            elapsed_ms: 0,
            pass: true,
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"id":"lemma:I","quantifier_ranges":"i in 1..=p; j in 1..=q","instances_checked":6,"failures":[],"elapsed_ms":0,"pass":true}"#
        );
    }
}
