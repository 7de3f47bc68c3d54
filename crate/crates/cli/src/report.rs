//! The `key: value` run report printed after every command.

use std::fmt::Write as _;
use std::time::Instant;

use sha2::{Digest, Sha256};
use stabletrace::{DoubleTrace, StabilityReport};

pub struct RunReport {
    started: Instant,
    lines: Vec<(String, String)>,
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport {
            started: Instant::now(),
            lines: vec![("command".into(), command.into())],
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn digest(&mut self, role: &str, path: &str, bytes: &[u8]) {
        let hash = hex::encode(Sha256::digest(bytes));
        self.push(format!("input.{role}"), format!("{path} sha256:{hash}"));
    }

    /// Verdict plus the per-vertex passage component sizes.
    pub fn stability(&mut self, w: &DoubleTrace, r: &StabilityReport) {
        let host = w.host();
        self.push("kind", r.kind);
        self.push("stable", r.stable);
        self.push(
            "max_stable_order",
            r.max_stable_order
                .map_or("unbounded".to_owned(), |k| k.to_string()),
        );
        let reps: Vec<String> = r.repetitions.iter().map(|x| x.describe(host)).collect();
        self.push(
            "repetitions",
            if reps.is_empty() {
                "none".to_owned()
            } else {
                reps.join(" ")
            },
        );
        for v in host.vertices() {
            let sizes: Vec<String> = r.component_sizes[v].iter().map(usize::to_string).collect();
            self.push(
                format!("vertex.{}", host.name(v)),
                format!("components={}", sizes.join(",")),
            );
        }
    }

    pub fn render(&self, exit: u8) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "exit: {exit}");
        let _ = writeln!(out, "elapsed_ms: {}", self.started.elapsed().as_millis());
        out
    }
}
