//! Double-exponential quadrature: tanh-sinh on `(0, 1)` and exp-sinh on
//! `(0, inf)`, refined by halving the step until two successive levels agree.
//!
//! Abscissas never touch the endpoints. On the unit interval every node is
//! handed to the integrand as a [`UnitPoint`] carrying both `y` and `1 - y`,
//! so integrands singular at `y = 1` can be evaluated without cancellation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::par::{map_slice, Exec};
use crate::precision::{UnitPoint, XReal};

pub const DEFAULT_MAX_LEVEL: u32 = 12;
pub const DEFAULT_MIN_LEVEL: u32 = 4;

#[derive(Debug, Clone)]
pub struct QuadOptions {
    /// Working precision of abscissas, weights and integrand values.
    pub prec: u32,
    pub tolerance: XReal,
    pub max_level: u32,
    pub min_level: u32,
    pub exec: Exec,
}

impl QuadOptions {
    pub fn new(prec: u32, tolerance: f64) -> Self {
        QuadOptions {
            prec,
            tolerance: XReal::from_f64(tolerance, 64),
            max_level: DEFAULT_MAX_LEVEL,
            min_level: DEFAULT_MIN_LEVEL,
            exec: Exec::default(),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_max_level(mut self, level: u32) -> Self {
        self.max_level = level;
        self
    }

    /// Requested tolerance raised to the floor `2^(-prec + 16)`.
    pub fn effective_tolerance(&self) -> XReal {
        let floor = XReal::pow2(16 - self.prec as i32, 64);
        self.tolerance.max_ref(&floor).clone()
    }
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub value: XReal,
    /// Difference between the last two levels.
    pub error_estimate: XReal,
    pub evaluations: u64,
    pub converged: bool,
    /// Inter-level differences, one per refinement step.
    pub level_differences: Vec<XReal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Rule {
    TanhSinh,
    ExpSinh,
}

#[derive(Debug)]
struct Node {
    x: XReal,
    /// `1 - x` for tanh-sinh nodes; unused on the half-line.
    c: XReal,
    w: XReal,
}

type NodeCache = Mutex<HashMap<(Rule, u32, u32), Arc<[Node]>>>;

fn cache() -> &'static NodeCache {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Range of `t` outside which the nodes are negligible at `prec` bits.
fn t_range(rule: Rule, prec: u32) -> (f64, f64) {
    let ln2 = std::f64::consts::LN_2;
    let half_pi = std::f64::consts::FRAC_PI_2;
    match rule {
        Rule::TanhSinh => {
            // 1 - x ~ exp(-2s) with s = pi/2 sinh t
            let s = (prec as f64 + 64.0) * ln2 / 2.0;
            let t = (s / half_pi).asinh();
            (-t, t)
        }
        Rule::ExpSinh => {
            let left = ((prec as f64 + 64.0) * ln2 / half_pi).asinh();
            let right = ((prec as f64 + 32.0) * ln2 / half_pi).asinh();
            (-left, right)
        }
    }
}

/// Nodes added at `level`: multiples of `2^-level` that were not present
/// at coarser levels (all integers at level 0).
fn level_nodes(rule: Rule, prec: u32, level: u32) -> Arc<[Node]> {
    let key = (rule, prec, level);
    if let Some(n) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
        return n.clone();
    }
    let nodes: Arc<[Node]> = build_nodes(rule, prec, level).into();
    cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(key)
        .or_insert(nodes)
        .clone()
}

fn build_nodes(rule: Rule, prec: u32, level: u32) -> Vec<Node> {
    let (lo, hi) = t_range(rule, prec);
    let scale = (1u64 << level) as f64;
    let (kmin, kmax) = ((lo * scale).ceil() as i64, (hi * scale).floor() as i64);
    let step = if level == 0 { 1 } else { 2 };
    let mut k = if level == 0 || kmin.rem_euclid(2) == 1 {
        kmin
    } else {
        kmin + 1
    };
    let wp = prec + 16;
    let half_pi = XReal::pi(wp).div_i64(2);
    let mut out = Vec::new();
    while k <= kmax {
        let t = (&XReal::from_i64(k, wp) / &XReal::pow2(level as i32, wp)).with_prec(wp);
        let s = &half_pi * &t.sinh();
        let dsdt = &half_pi * &t.cosh();
        let node = match rule {
            Rule::TanhSinh => {
                let two_s = s.mul_i64(2);
                let x = (XReal::one(wp) + (-&two_s).exp()).recip();
                let c = (XReal::one(wp) + two_s.exp()).recip();
                let w = &(&dsdt * &x) * &c.mul_i64(2);
                Node {
                    x: x.with_prec(prec),
                    c: c.with_prec(prec),
                    w: w.with_prec(prec),
                }
            }
            Rule::ExpSinh => {
                let x = s.exp();
                let w = &dsdt * &x;
                Node {
                    x: x.with_prec(prec),
                    c: XReal::zero(64),
                    w: w.with_prec(prec),
                }
            }
        };
        if node.w.is_positive() {
            out.push(node);
        }
        k += step;
    }
    out
}

fn check_finite(op: &'static str, v: XReal, at: &XReal) -> Result<XReal> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { op, at: at.to_sci(12) })
    }
}

fn integrate<E>(rule: Rule, op: &'static str, eval: E, opts: &QuadOptions) -> Result<QuadResult>
where
    E: Fn(&Node) -> Result<XReal> + Sync + Send,
{
    let prec = opts.prec;
    let tol = opts.effective_tolerance();
    let half_tol = tol.div_i64(2);
    let mut total = XReal::zero(prec);
    let mut evaluations = 0u64;
    let mut previous: Option<XReal> = None;
    let mut diffs = Vec::new();
    for level in 0..=opts.max_level {
        let nodes = level_nodes(rule, prec, level);
        let values = map_slice(&nodes, opts.exec, |n| eval(n).map(|v| &v * &n.w));
        evaluations += nodes.len() as u64;
        for v in values {
            total = total + v?;
        }
        let estimate = &total / &XReal::pow2(level as i32, prec);
        if let Some(prev) = previous.as_ref() {
            let diff = (&estimate - prev).abs();
            diffs.push(diff.clone());
            if level >= opts.min_level && diff <= half_tol {
                return Ok(QuadResult {
                    value: estimate,
                    error_estimate: diff,
                    evaluations,
                    converged: true,
                    level_differences: diffs,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence {
        op,
        work: evaluations,
        estimate: diffs.last().map_or(f64::INFINITY, XReal::to_f64),
    })
}

/// `int_0^1 f(y) dy` by tanh-sinh quadrature.
pub fn integrate_unit<F>(f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&UnitPoint) -> Result<XReal> + Sync + Send,
{
    integrate(
        Rule::TanhSinh,
        "integrate_unit",
        |n| {
            let pt = UnitPoint {
                y: n.x.clone(),
                c: n.c.clone(),
            };
            check_finite("integrate_unit", f(&pt)?, &n.x)
        },
        opts,
    )
}

/// `int_0^inf f(x) dx` by exp-sinh quadrature.
pub fn integrate_halfline<F>(f: F, opts: &QuadOptions) -> Result<QuadResult>
where
    F: Fn(&XReal) -> Result<XReal> + Sync + Send,
{
    integrate(
        Rule::ExpSinh,
        "integrate_halfline",
        |n| check_finite("integrate_halfline", f(&n.x)?, &n.x),
        opts,
    )
}
