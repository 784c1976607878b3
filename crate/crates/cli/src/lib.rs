//! Run configuration, computations and report rendering behind the
//! `stieltjes` binary.

pub mod compute;
pub mod report;

use stieltjes_core::audit::{AuditConfig, Family, Verdict};
use stieltjes_core::precision::{DEFAULT_PRECISION, MIN_PRECISION};
use stieltjes_core::{Error, Exec};

pub mod exit {
    pub const OK: i32 = 0;
    pub const RIGOROUS_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const IO: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub tolerance: Option<f64>,
    pub ids: Vec<String>,
    pub family: Option<Family>,
    pub format: Format,
    /// Worker threads; `Some(1)` runs everything sequentially.
    pub jobs: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: DEFAULT_PRECISION,
            tolerance: None,
            ids: Vec::new(),
            family: None,
            format: Format::default(),
            jobs: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < MIN_PRECISION {
            return Err(format!("precision must be at least {MIN_PRECISION} bits"));
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(format!("tolerance must be positive, got {t}"));
            }
        }
        if self.jobs == Some(0) {
            return Err("--jobs must be at least 1".into());
        }
        Ok(())
    }

    pub fn exec(&self) -> Exec {
        if self.jobs == Some(1) {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    pub fn audit_config(&self) -> AuditConfig {
        let mut cfg = AuditConfig::default()
            .with_prec(self.precision_bits)
            .with_exec(self.exec());
        cfg.tolerance_override = self.tolerance;
        cfg
    }
}

/// Exit status of `verify`: a failing or unevaluable rigorous case fails the
/// run; deviations in the audit family never do.
pub fn verify_exit_code(outcomes: impl IntoIterator<Item = (Family, Verdict)>) -> i32 {
    let mut errored = false;
    for (family, verdict) in outcomes {
        match (family, verdict) {
            (Family::Rigorous, Verdict::Fail) => return exit::RIGOROUS_FAILURE,
            (_, Verdict::Error) => errored = true,
            _ => {}
        }
    }
    if errored {
        exit::NON_CONVERGENCE
    } else {
        exit::OK
    }
}

pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::NonConvergence { .. } | Error::NonFinite { .. } => exit::NON_CONVERGENCE,
        _ => exit::USAGE,
    }
}
