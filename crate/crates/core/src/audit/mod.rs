//! Registry of integral and series identities, each checked by evaluating
//! its two sides through independent routes.

mod registry;
mod suites;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hasse::{stieltjes_gammas, HasseConfig, StieltjesValue};
use crate::par::{map_slice, Exec};
use crate::precision::XReal;
use crate::quad::{QuadOptions, QuadResult};

pub use registry::{binomial_log_power_case, registry};
pub use suites::{
    adjudicate_stieltjes_families, compute_dn_table, limit_suite, reconstruct_gamma_via_dn, sign_suites, Adjudication,
    DnEntry, DnTable, FamilyCheck, LimitSeries, SignCheck, Winner,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    /// Identities with a complete derivation; every case must pass.
    Rigorous,
    /// Results built on the continuous-parameter continuation; numerical
    /// disagreement is an expected, documented outcome.
    Section2Audit,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Rigorous => "RIGOROUS",
            Family::Section2Audit => "SECTION2_AUDIT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    AuditDeviation,
    /// An evaluator failed (non-convergence, domain error).
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::AuditDeviation => "AUDIT_DEVIATION",
            Verdict::Error => "ERROR",
        })
    }
}

/// Library modules an evaluator draws on; used to check that the two sides
/// of a case are computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Module {
    PrecisionCore,
    Constants,
    Bell,
    ZetaGamma,
    Hasse,
    Quadrature,
    Polylog,
    Coppo,
}

impl Module {
    /// Modules that both sides may share.
    pub fn is_shared_basis(self) -> bool {
        matches!(self, Module::PrecisionCore | Module::Constants)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// The claim is `lhs > rhs`.
    Greater,
}

/// One evaluated side of an identity.
#[derive(Debug, Clone)]
pub struct Side {
    pub value: XReal,
    pub error_estimate: XReal,
    pub work: u64,
}

impl Side {
    pub fn exact(value: XReal) -> Self {
        Side {
            error_estimate: XReal::zero(64),
            value,
            work: 0,
        }
    }
}

impl From<QuadResult> for Side {
    fn from(q: QuadResult) -> Self {
        Side {
            value: q.value,
            error_estimate: q.error_estimate,
            work: q.evaluations,
        }
    }
}

type Evaluator = Arc<dyn Fn(&AuditContext) -> Result<Side> + Send + Sync>;

pub struct IdentityCase {
    pub id: String,
    pub family: Family,
    pub params: Vec<(&'static str, String)>,
    pub anchor: &'static str,
    pub tolerance: f64,
    pub relation: Relation,
    pub lhs_modules: &'static [Module],
    pub rhs_modules: &'static [Module],
    /// Extra remark carried into reports, e.g. for inferred variants.
    pub note: Option<&'static str>,
    lhs: Evaluator,
    rhs: Evaluator,
}

impl fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("family", &self.family)
            .field("params", &self.params)
            .field("tolerance", &self.tolerance)
            .finish_non_exhaustive()
    }
}

impl IdentityCase {
    /// Identifier without the parameter suffix, e.g. `EQ_B_2` for `EQ_B_2:n=3`.
    pub fn base_id(&self) -> &str {
        self.id.split(':').next().unwrap_or(&self.id)
    }

    /// Modules used by both sides outside the shared basis.
    pub fn shared_modules(&self) -> Vec<Module> {
        let mut shared: Vec<Module> = self
            .lhs_modules
            .iter()
            .filter(|m| !m.is_shared_basis() && self.rhs_modules.contains(m))
            .copied()
            .collect();
        shared.sort();
        shared.dedup();
        shared
    }

    pub fn evaluate_lhs(&self, ctx: &AuditContext) -> Result<Side> {
        (self.lhs)(ctx)
    }

    pub fn evaluate_rhs(&self, ctx: &AuditContext) -> Result<Side> {
        (self.rhs)(ctx)
    }
}

#[derive(Debug, Clone)]
pub struct AuditConfig {
    pub prec: u32,
    pub exec: Exec,
    pub hasse: HasseConfig,
    /// Target accuracy of every quadrature.
    pub quad_tolerance: f64,
    /// Replaces every case tolerance when set.
    pub tolerance_override: Option<f64>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            prec: crate::precision::DEFAULT_PRECISION,
            exec: Exec::default(),
            hasse: HasseConfig::default(),
            quad_tolerance: 1e-20,
            tolerance_override: None,
        }
    }
}

impl AuditConfig {
    pub fn with_prec(mut self, prec: u32) -> Self {
        self.prec = prec.max(crate::precision::MIN_PRECISION);
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self.hasse.exec = exec;
        self
    }
}

type GammaSlot = Arc<OnceLock<Result<Vec<StieltjesValue>>>>;

/// Evaluation context: configuration plus memoized Hasse-series Stieltjes
/// constants, which several cases consume.
pub struct AuditContext {
    pub cfg: AuditConfig,
    gammas: Mutex<HashMap<(i64, i64), GammaSlot>>,
}

/// Highest Stieltjes order kept in the context cache.
pub const CACHED_GAMMA_ORDER: u32 = 3;

impl AuditContext {
    pub fn new(cfg: AuditConfig) -> Self {
        AuditContext {
            cfg,
            gammas: Mutex::new(HashMap::new()),
        }
    }

    pub fn prec(&self) -> u32 {
        self.cfg.prec
    }

    pub fn quad(&self) -> QuadOptions {
        QuadOptions::new(self.cfg.prec, self.cfg.quad_tolerance).with_exec(self.cfg.exec)
    }

    /// `gamma_p(num/den)` from the Hasse series, `p <= 3`.
    pub fn stieltjes(&self, p: u32, num: i64, den: i64) -> Result<StieltjesValue> {
        if p > CACHED_GAMMA_ORDER {
            return Err(Error::domain(
                "AuditContext::stieltjes",
                format!("order {p} > {CACHED_GAMMA_ORDER}"),
            ));
        }
        let slot = {
            let mut map = self.gammas.lock().unwrap_or_else(|e| e.into_inner());
            map.entry((num, den)).or_default().clone()
        };
        let all = slot.get_or_init(|| {
            let u = XReal::ratio(num, den, self.cfg.prec);
            stieltjes_gammas(CACHED_GAMMA_ORDER, &u, &self.cfg.hasse)
        });
        match all {
            Ok(v) => Ok(v[p as usize].clone()),
            Err(e) => Err(e.clone()),
        }
    }

    /// `gamma_p = gamma_p(1)` as a bare value.
    pub fn gamma_n(&self, p: u32) -> Result<XReal> {
        Ok(self.stieltjes(p, 1, 1)?.value)
    }
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub id: String,
    pub family: Family,
    pub anchor: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub note: Option<&'static str>,
    pub tolerance: f64,
    pub lhs: Option<Side>,
    pub rhs: Option<Side>,
    pub abs_residual: Option<XReal>,
    pub rel_residual: Option<XReal>,
    pub verdict: Verdict,
    pub error: Option<String>,
}

impl AuditReport {
    pub fn work(&self) -> u64 {
        self.lhs.as_ref().map_or(0, |s| s.work) + self.rhs.as_ref().map_or(0, |s| s.work)
    }
}

/// Evaluates both sides of `case` and classifies the outcome.
pub fn evaluate_case(case: &IdentityCase, ctx: &AuditContext) -> AuditReport {
    let tolerance = ctx.cfg.tolerance_override.unwrap_or(case.tolerance);
    let mut report = AuditReport {
        id: case.id.clone(),
        family: case.family,
        anchor: case.anchor,
        params: case.params.clone(),
        note: case.note,
        tolerance,
        lhs: None,
        rhs: None,
        abs_residual: None,
        rel_residual: None,
        verdict: Verdict::Error,
        error: None,
    };
    let (lhs, rhs) = match (case.evaluate_lhs(ctx), case.evaluate_rhs(ctx)) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            report.error = l.err().or(r.err()).map(|e| e.to_string());
            return report;
        }
    };
    let diff = &lhs.value - &rhs.value;
    let abs = diff.abs();
    let scale = lhs.value.abs().max_ref(&rhs.value.abs()).clone();
    let rel = if scale.is_zero() { abs.clone() } else { &abs / &scale };
    let holds = match case.relation {
        Relation::Equal => {
            let measured = if scale > XReal::one(64) { &rel } else { &abs };
            measured.to_f64() <= tolerance
        }
        Relation::Greater => diff.is_positive() && abs > (&lhs.error_estimate + &rhs.error_estimate),
    };
    report.verdict = match (holds, case.family) {
        (true, _) => Verdict::Pass,
        (false, Family::Rigorous) => Verdict::Fail,
        (false, Family::Section2Audit) => Verdict::AuditDeviation,
    };
    report.abs_residual = Some(abs);
    report.rel_residual = Some(rel);
    report.lhs = Some(lhs);
    report.rhs = Some(rhs);
    report
}

/// Which cases to run.
#[derive(Debug, Clone, Default)]
pub struct CaseFilter {
    /// Exact id or base id (the part before `:`).
    pub ids: Vec<String>,
    pub family: Option<Family>,
}

impl CaseFilter {
    pub fn matches(&self, case: &IdentityCase) -> bool {
        let id_ok = self.ids.is_empty() || self.ids.iter().any(|i| *i == case.id || i == case.base_id());
        id_ok && self.family.is_none_or(|f| f == case.family)
    }
}

/// Cases selected by `filter`, in registry order. Unknown ids are an error.
pub fn select_cases(filter: &CaseFilter) -> Result<Vec<IdentityCase>> {
    let all = registry();
    for id in &filter.ids {
        if !all.iter().any(|c| c.id == *id || c.base_id() == id) {
            return Err(Error::UnknownCase(id.clone()));
        }
    }
    Ok(all.into_iter().filter(|c| filter.matches(c)).collect())
}

/// Evaluates `cases` (in parallel when configured) and returns reports in
/// input order.
pub fn run_cases(cases: &[IdentityCase], ctx: &AuditContext) -> Vec<AuditReport> {
    map_slice(cases, ctx.cfg.exec, |c| evaluate_case(c, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_anchored() {
        let cases = registry();
        let mut ids: Vec<&str> = cases.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(cases.iter().all(|c| !c.anchor.is_empty()));
    }

    #[test]
    fn sides_are_independent() {
        for c in registry() {
            assert!(
                c.shared_modules().is_empty(),
                "{} shares {:?}",
                c.id,
                c.shared_modules()
            );
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let f = CaseFilter {
            ids: vec!["NO_SUCH".into()],
            family: None,
        };
        assert!(matches!(select_cases(&f), Err(Error::UnknownCase(_))));
        let f = CaseFilter {
            ids: vec!["EQ_B_2".into()],
            family: None,
        };
        assert_eq!(select_cases(&f).unwrap().len(), 20);
    }
}
