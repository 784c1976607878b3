//! Report documents and their JSON, CSV and text renderings.
//!
//! Every number is a decimal string whose digit count follows from the
//! working precision, so a report is byte-identical across runs with the
//! same configuration.

use serde::Serialize;
use stieltjes_core::audit::{
    adjudicate_stieltjes_families, compute_dn_table, registry, run_cases, select_cases, AuditContext, AuditReport,
    CaseFilter, Winner,
};
use stieltjes_core::constants::constants;
use stieltjes_core::hasse::eta_sequence;
use stieltjes_core::{Result, XReal};

use crate::{Format, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub id: String,
    pub family: String,
    pub params: Vec<(String, String)>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub abs_residual: Option<String>,
    pub rel_residual: Option<String>,
    pub tolerance: String,
    pub verdict: String,
    pub anchor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub work: u64,
}

impl CaseRecord {
    pub fn new(r: &AuditReport, digits: usize) -> Self {
        CaseRecord {
            id: r.id.clone(),
            family: r.family.to_string(),
            params: r.params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            lhs: r.lhs.as_ref().map(|s| s.value.to_decimal(digits)),
            rhs: r.rhs.as_ref().map(|s| s.value.to_decimal(digits)),
            abs_residual: r.abs_residual.as_ref().map(|v| v.to_sci(6)),
            rel_residual: r.rel_residual.as_ref().map(|v| v.to_sci(6)),
            tolerance: format!("{:e}", r.tolerance),
            verdict: r.verdict.to_string(),
            anchor: r.anchor.to_string(),
            note: r.note.map(str::to_string),
            error: r.error.clone(),
            work: r.work(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub stieltjes_cli: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub precision: u32,
    /// Significant digits in every decimal value.
    pub digits: usize,
    pub hasse_terms: usize,
    pub quad_tolerance: String,
    pub tolerance_override: Option<String>,
    pub versions: Versions,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsBlock {
    pub gamma: String,
    pub gamma_n: Vec<String>,
    pub eta_n: Vec<String>,
    pub dn: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjudicationBlock {
    pub first_moment: String,
    pub first_moment_error: String,
    pub single_weight_prediction: String,
    pub single_weight_residual: String,
    pub double_weight_prediction: String,
    pub double_weight_residual: String,
    pub conclusive: bool,
    pub winner: Winner,
    pub second_moment: String,
    pub second_single_weight_residual: String,
    pub second_double_weight_residual: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDoc {
    pub meta: Meta,
    pub constants: ConstantsBlock,
    pub adjudication: AdjudicationBlock,
    pub cases: Vec<CaseRecord>,
}

/// Number of `gamma_n`, `eta_n` values in the constants block.
const CONSTANT_ORDERS: u32 = 4;
/// Number of `d_n` values in the constants block.
const DN_ORDERS: u32 = 5;

/// Evaluates the selected cases, in parallel unless `cfg.jobs == Some(1)`.
pub fn verify(cfg: &RunConfig) -> Result<Vec<AuditReport>> {
    let filter = CaseFilter {
        ids: cfg.ids.clone(),
        family: cfg.family,
    };
    let cases = select_cases(&filter)?;
    let ctx = AuditContext::new(cfg.audit_config());
    Ok(run_cases(&cases, &ctx))
}

pub fn build_report(cfg: &RunConfig) -> Result<ReportDoc> {
    let prec = cfg.precision_bits;
    let digits = XReal::decimal_digits_for(prec);
    let audit = cfg.audit_config();
    let meta = Meta {
        precision: prec,
        digits,
        hasse_terms: audit.hasse.n_max,
        quad_tolerance: format!("{:e}", audit.quad_tolerance),
        tolerance_override: audit.tolerance_override.map(|t| format!("{t:e}")),
        versions: Versions {
            stieltjes_cli: env!("CARGO_PKG_VERSION"),
        },
    };
    let ctx = AuditContext::new(audit);
    let cases = if cfg.ids.is_empty() && cfg.family.is_none() {
        registry()
    } else {
        select_cases(&CaseFilter {
            ids: cfg.ids.clone(),
            family: cfg.family,
        })?
    };
    let reports = run_cases(&cases, &ctx);

    let gammas: Vec<XReal> = (0..CONSTANT_ORDERS).map(|k| ctx.gamma_n(k)).collect::<Result<_>>()?;
    let eta = eta_sequence(&gammas);
    let dn = compute_dn_table(DN_ORDERS - 1, &ctx)?;
    let constants = ConstantsBlock {
        gamma: constants(prec).euler_gamma().to_decimal(digits),
        gamma_n: gammas.iter().map(|g| g.to_decimal(digits)).collect(),
        eta_n: eta.iter().map(|e| e.to_decimal(digits)).collect(),
        dn: dn.entries.iter().map(|e| e.d.to_decimal(digits)).collect(),
    };

    let a = adjudicate_stieltjes_families(&ctx)?;
    let adjudication = AdjudicationBlock {
        first_moment: a.i1.to_decimal(digits),
        first_moment_error: a.i1_error.to_sci(3),
        single_weight_prediction: a.single_weight.predicted.to_decimal(digits),
        single_weight_residual: a.single_weight.residual.to_sci(6),
        double_weight_prediction: a.double_weight.predicted.to_decimal(digits),
        double_weight_residual: a.double_weight.residual.to_sci(6),
        conclusive: a.conclusive,
        winner: a.winner,
        second_moment: a.i2.to_decimal(digits),
        second_single_weight_residual: a.single_weight_second.residual.to_sci(6),
        second_double_weight_residual: a.double_weight_second.residual.to_sci(6),
    };

    Ok(ReportDoc {
        meta,
        constants,
        adjudication,
        cases: reports.iter().map(|r| CaseRecord::new(r, digits)).collect(),
    })
}

fn cases_csv(cases: &[CaseRecord]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = [
        "id",
        "family",
        "verdict",
        "lhs",
        "rhs",
        "abs_residual",
        "rel_residual",
        "tolerance",
        "anchor",
        "error",
    ];
    // writing to a Vec cannot fail
    w.write_record(header).expect("csv header");
    for c in cases {
        let o = |v: &Option<String>| v.clone().unwrap_or_default();
        w.write_record([
            c.id.clone(),
            c.family.clone(),
            c.verdict.clone(),
            o(&c.lhs),
            o(&c.rhs),
            o(&c.abs_residual),
            o(&c.rel_residual),
            c.tolerance.clone(),
            c.anchor.clone(),
            o(&c.error),
        ])
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

fn short(v: &Option<String>, n: usize) -> String {
    match v {
        Some(s) if s.len() > n => s[..n].to_string(),
        Some(s) => s.clone(),
        None => "-".into(),
    }
}

fn cases_text(cases: &[CaseRecord]) -> String {
    let mut out = String::new();
    for c in cases {
        out.push_str(&format!(
            "{:<36} {:<15} {:<16} abs={:<14} lhs={:<22} rhs={:<22}",
            c.id,
            c.family,
            c.verdict,
            c.abs_residual.as_deref().unwrap_or("-"),
            short(&c.lhs, 22),
            short(&c.rhs, 22),
        ));
        if let Some(e) = &c.error {
            out.push_str(&format!(" error: {e}"));
        }
        out.push('\n');
    }
    out
}

pub fn render_cases(reports: &[AuditReport], format: Format, digits: usize) -> String {
    let cases: Vec<CaseRecord> = reports.iter().map(|r| CaseRecord::new(r, digits)).collect();
    match format {
        Format::Json => serde_json::to_string_pretty(&cases).expect("serializable") + "\n",
        Format::Csv => cases_csv(&cases),
        Format::Text => cases_text(&cases),
    }
}

pub fn render_report(doc: &ReportDoc, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
        Format::Csv => cases_csv(&doc.cases),
        Format::Text => {
            let c = &doc.constants;
            let mut out = format!(
                "precision {} bits, {} digits\ngamma = {}\n",
                doc.meta.precision, doc.meta.digits, c.gamma
            );
            for (k, g) in c.gamma_n.iter().enumerate() {
                out.push_str(&format!("gamma_{k} = {g}\n"));
            }
            for (k, e) in c.eta_n.iter().enumerate() {
                out.push_str(&format!("eta_{k} = {e}\n"));
            }
            for (k, d) in c.dn.iter().enumerate() {
                out.push_str(&format!("d_{k} = {d}\n"));
            }
            let a = &doc.adjudication;
            out.push_str(&format!(
                "first log-log moment {} : single-weight residual {}, double-weight residual {}, winner {:?}{}\n",
                short(&Some(a.first_moment.clone()), 24),
                a.single_weight_residual,
                a.double_weight_residual,
                a.winner,
                if a.conclusive { "" } else { " (inconclusive)" }
            ));
            out + &cases_text(&doc.cases)
        }
    }
}
