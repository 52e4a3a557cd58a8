//! Run reports: one row per check, rendered both for humans and for
//! machines.

use std::fmt::Write as _;
use std::time::Instant;

use tetreq_core::verify::CheckResult;

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub check: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seconds: f64,
}

/// Report of one command invocation. Field order in the machine rendering
/// is stable.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: String,
    pub seed: Option<u64>,
    pub rows: Vec<ReportRow>,
    /// Free-form informational lines printed before the check table.
    pub notes: Vec<String>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), seed: None, rows: Vec::new(), notes: Vec::new() }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn push(&mut self, check: CheckResult, seconds: f64) {
        self.rows.push(ReportRow {
            check: check.name,
            residual: check.residual,
            tolerance: check.tolerance,
            pass: check.pass,
            seconds,
        });
    }

    /// Run `f`, timing it, and absorb every check of the produced report.
    pub fn time<E>(
        &mut self,
        f: impl FnOnce() -> Result<tetreq_core::verify::VerifyReport, E>,
    ) -> Result<(), E> {
        let start = Instant::now();
        let verify = f()?;
        let seconds = start.elapsed().as_secs_f64() / verify.checks.len().max(1) as f64;
        for check in verify.checks {
            self.push(check, seconds);
        }
        Ok(())
    }

    pub fn overall_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    /// Human-readable table followed by the machine-readable block.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "tetreq {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for note in &self.notes {
            let _ = writeln!(out, "{note}");
        }
        if !self.rows.is_empty() {
            let width = self.rows.iter().map(|r| r.check.len()).max().unwrap().max(5);
            let _ = writeln!(
                out,
                "{:width$}  {:>13}  {:>9}  {:>8}  result",
                "check", "residual", "tolerance", "seconds"
            );
            for r in &self.rows {
                let _ = writeln!(
                    out,
                    "{:width$}  {:>13.6e}  {:>9.1e}  {:>8.3}  {}",
                    r.check,
                    r.residual,
                    r.tolerance,
                    r.seconds,
                    if r.pass { "pass" } else { "FAIL" }
                );
            }
        }
        let _ = writeln!(out, "overall: {}", if self.overall_pass() { "pass" } else { "FAIL" });
        let _ = writeln!(out, "-- machine-readable --");
        let _ = writeln!(out, "command {}", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        for r in &self.rows {
            let _ = writeln!(
                out,
                "result check=\"{}\" residual={:e} tolerance={:e} pass={} seconds={:.6}",
                r.check,
                r.residual,
                r.tolerance,
                u8::from(r.pass),
                r.seconds
            );
        }
        let _ = writeln!(
            out,
            "overall pass={} version={}",
            u8::from(self.overall_pass()),
            env!("CARGO_PKG_VERSION")
        );
        out
    }
}
