//! Single-quantity computations for the `compute` subcommand.

use serde::Serialize;
use stieltjes_core::audit::{compute_dn_table, AuditContext};
use stieltjes_core::bell::bell_complete;
use stieltjes_core::constants::constants;
use stieltjes_core::hasse::{eta_sequence, stieltjes_gammas};
use stieltjes_core::{Error, Result, XReal};

use crate::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// Stieltjes constant gamma_n(u) from the Hasse series.
    #[value(name = "gamma_n")]
    GammaN,
    /// eta_n from the log-derivative expansion of zeta.
    #[value(name = "eta_n")]
    EtaN,
    /// Complete Bell polynomial Y_n.
    Bell,
    /// n-th derivative of Gamma at 1.
    #[value(name = "gamma_deriv")]
    GammaDeriv,
    /// d_n = (-1)^n int_0^1 Omega(y) ln^n|ln y| dy by quadrature.
    Dn,
}

#[derive(Debug, Clone, Serialize)]
pub struct Computed {
    pub label: String,
    pub value: String,
    pub error_estimate: Option<String>,
    pub work: u64,
}

/// Parses `a`, `a/b` or a decimal literal.
pub fn parse_argument(s: &str, prec: u32) -> Result<XReal> {
    let bad = || Error::Domain {
        op: "parse_argument",
        detail: format!("cannot parse `{s}`"),
    };
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(XReal::ratio(a, b, prec));
    }
    XReal::parse(s.trim(), prec).ok_or_else(bad)
}

pub fn compute(target: Target, n: u32, u: &str, cfg: &RunConfig) -> Result<Vec<Computed>> {
    let prec = cfg.precision_bits;
    let digits = XReal::decimal_digits_for(prec);
    let audit = cfg.audit_config();
    let show = |label: String, v: &XReal, err: Option<&XReal>, work: u64| Computed {
        label,
        value: v.to_decimal(digits),
        error_estimate: err.map(|e| e.to_sci(3)),
        work,
    };
    match target {
        Target::GammaN => {
            let uu = parse_argument(u, prec)?;
            let g = stieltjes_gammas(n, &uu, &audit.hasse)?;
            let last = &g[n as usize];
            Ok(vec![show(
                format!("gamma_{n}({u})"),
                &last.value,
                Some(&last.error_estimate),
                audit.hasse.n_max as u64 + 1,
            )])
        }
        Target::EtaN => {
            let g = stieltjes_gammas(n, &XReal::one(prec), &audit.hasse)?;
            let values: Vec<XReal> = g.iter().map(|s| s.value.clone()).collect();
            let eta = eta_sequence(&values);
            Ok(vec![show(
                format!("eta_{n}"),
                &eta[n as usize],
                None,
                audit.hasse.n_max as u64 + 1,
            )])
        }
        Target::Bell => Ok(vec![Computed {
            label: format!("Y_{n}"),
            value: bell_complete(n).to_string(),
            error_estimate: None,
            work: 0,
        }]),
        Target::GammaDeriv => {
            let v = constants(prec).gamma_derivative_at_one(n);
            Ok(vec![show(format!("Gamma^({n})(1)"), &v, None, 0)])
        }
        Target::Dn => {
            let ctx = AuditContext::new(audit);
            let table = compute_dn_table(n, &ctx)?;
            let e = &table.entries[n as usize];
            Ok(vec![show(format!("d_{n}"), &e.d, Some(&e.error_estimate), 0)])
        }
    }
}
