//! The identity cases, each with a quadrature or series route on one side
//! and a closed form or Hasse-series route on the other.

use std::sync::Arc;

use rug::Rational;

use super::{AuditContext, Family, IdentityCase, Module, Relation, Side};
use crate::constants::constants;
use crate::coppo::stieltjes_via_coppo;
use crate::error::Result;
use crate::hasse::digamma_hasse;
use crate::polylog::{dilog_at, li_nielsen};
use crate::precision::{binomial_row, bose_kernel, factorial, omega_at, sum_series, Acceleration, UnitPoint, XReal};
use crate::quad::{integrate_halfline, integrate_unit};
use crate::zeta::{digamma, gamma, hurwitz_zeta, log_gamma_integer, riemann_zeta, zeta_prime_2};

use Module::*;

const QUAD: &[Module] = &[Quadrature, PrecisionCore];
const QUAD_POOL: &[Module] = &[Quadrature, PrecisionCore, Constants];
const QUAD_LI: &[Module] = &[Quadrature, Polylog, PrecisionCore, Constants];
const QUAD_COPPO: &[Module] = &[Coppo, Quadrature, PrecisionCore, Constants];
const ZG: &[Module] = &[ZetaGamma, PrecisionCore, Constants];
const HASSE: &[Module] = &[Hasse, PrecisionCore, Constants];
const LI: &[Module] = &[Polylog, PrecisionCore, Constants];
const POOL: &[Module] = &[PrecisionCore, Constants];
const EXACT: &[Module] = &[PrecisionCore];

const TOL_QUAD: f64 = 1e-10;
const TOL_HASSE: f64 = 1e-6;
const TOL_SERIES: f64 = 1e-8;

#[allow(clippy::too_many_arguments)]
fn case<L, R>(
    id: String,
    family: Family,
    anchor: &'static str,
    tolerance: f64,
    lhs_modules: &'static [Module],
    lhs: L,
    rhs_modules: &'static [Module],
    rhs: R,
) -> IdentityCase
where
    L: Fn(&AuditContext) -> Result<Side> + Send + Sync + 'static,
    R: Fn(&AuditContext) -> Result<Side> + Send + Sync + 'static,
{
    IdentityCase {
        id,
        family,
        params: Vec::new(),
        anchor,
        tolerance,
        relation: Relation::Equal,
        lhs_modules,
        rhs_modules,
        note: None,
        lhs: Arc::new(lhs),
        rhs: Arc::new(rhs),
    }
}

impl IdentityCase {
    fn param(mut self, name: &'static str, value: impl ToString) -> Self {
        self.params.push((name, value.to_string()));
        self
    }

    fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    fn greater(mut self) -> Self {
        self.relation = Relation::Greater;
        self
    }
}

fn id_with(base: &str, params: &[(&str, String)]) -> String {
    let tail: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{base}:{}", tail.join(","))
}

fn frac(num: i64, den: i64) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn exact(v: XReal) -> Result<Side> {
    Ok(Side::exact(v))
}

/// `1 - e^-x` without cancellation.
fn one_minus_exp_neg(x: &XReal) -> XReal {
    -(-x).exp_m1()
}

/// `y^(u-1)` from `ln y`.
fn y_pow(ln_y: &XReal, num: i64, den: i64) -> XReal {
    if num == den {
        return XReal::one(ln_y.prec());
    }
    (&XReal::ratio(num - den, den, ln_y.prec()) * ln_y).exp()
}

/// `sum_j C(n,j) (-1)^j f(j)`.
fn alt_binomial(n: u32, prec: u32, f: impl Fn(i64) -> XReal) -> XReal {
    let row = binomial_row(n);
    let mut acc = XReal::zero(prec + 32);
    for (j, c) in row.iter().enumerate() {
        let t = f(j as i64).with_prec(prec + 32).mul_integer(c);
        acc = if j % 2 == 0 { acc + t } else { acc - t };
    }
    acc.with_prec(prec)
}

fn unit(ctx: &AuditContext, f: impl Fn(&UnitPoint) -> Result<XReal> + Send + Sync) -> Result<Side> {
    Ok(integrate_unit(f, &ctx.quad())?.into())
}

fn halfline(ctx: &AuditContext, f: impl Fn(&XReal) -> Result<XReal> + Send + Sync) -> Result<Side> {
    Ok(integrate_halfline(f, &ctx.quad())?.into())
}

/// `1/(1 - e^-t) - 1/t = 1 + (1/(e^t - 1) - 1/t)`.
fn bose_plus_one(t: &XReal) -> Result<XReal> {
    Ok(bose_kernel(t)? + XReal::one(t.prec()))
}

/// `sum_k C(n,k) (-1)^k Gamma^(n-k)(1) [gamma_k(x) + ln^(k+1) x / (k+1)]`.
fn gamma_hat_convolution(ctx: &AuditContext, n: u32, x: i64) -> Result<Side> {
    let p = ctx.prec();
    let c = constants(p);
    let ln_x = XReal::from_i64(x, p).ln();
    let row = binomial_row(n);
    let mut value = XReal::zero(p);
    let mut err = XReal::zero(64);
    for k in 0..=n {
        let g = ctx.stieltjes(k, x, 1)?;
        let hat = g.value + ln_x.powi(k as i32 + 1).div_i64(k as i64 + 1);
        let coef = c.gamma_derivative_at_one(n - k).mul_integer(&row[k as usize]);
        err = err + (&coef * &g.error_estimate).abs();
        let t = &coef * &hat;
        value = if k % 2 == 0 { value + t } else { value - t };
    }
    Ok(Side {
        value,
        error_estimate: err,
        work: 0,
    })
}

/// `int_0^1 Omega(y) y^(u-1) (ln|ln y|)^j dy`.
fn omega_loglog_moment(ctx: &AuditContext, j: u32, num: i64, den: i64) -> Result<Side> {
    unit(ctx, move |pt| {
        let l = pt.ln();
        let mut v = &omega_at(pt) * &y_pow(&l, num, den);
        if j > 0 {
            v = &v * &(-&l).ln().powi(j as i32);
        }
        Ok(v)
    })
}

/// Combines Hasse values linearly, propagating their error estimates.
fn combine(terms: &[(XReal, &Side)], constant: XReal) -> Side {
    let mut value = constant;
    let mut err = XReal::zero(64);
    let mut work = 0;
    for (k, s) in terms {
        value = value + k * &s.value;
        err = err + (k * &s.error_estimate).abs();
        work += s.work;
    }
    Side {
        value,
        error_estimate: err,
        work,
    }
}

fn gamma_side(ctx: &AuditContext, p: u32, num: i64, den: i64) -> Result<Side> {
    let g = ctx.stieltjes(p, num, den)?;
    Ok(Side {
        value: g.value,
        error_estimate: g.error_estimate,
        work: 0,
    })
}

/// Case for `int_0^1 y^(u-1) (1-y)^n / ln^r y dy = 1/Gamma(r) sum_j C(n,j)(-1)^j (u+j)^(r-1) ln(u+j)`.
///
/// The integral diverges at `y = 1` when `n < r`; such triples are still
/// constructible so that the divergence can be observed.
pub fn binomial_log_power_case(r: u32, u: i64, n: u32) -> IdentityCase {
    let params = vec![("r", r.to_string()), ("u", u.to_string()), ("n", n.to_string())];
    let c = case(
        id_with("EQ_1_5", &params),
        Family::Rigorous,
        "unit-interval form of the binomial-exponential integral with inverse log powers",
        TOL_QUAD,
        QUAD,
        move |ctx| {
            unit(ctx, move |pt| {
                let l = pt.ln();
                Ok(&(&y_pow(&l, u, 1) * &pt.c.powi(n as i32)) / &l.powi(r as i32))
            })
        },
        EXACT,
        move |ctx| {
            let p = ctx.prec();
            let s = alt_binomial(n, p, |j| {
                let x = XReal::from_i64(u + j, p + 32);
                &x.powi(r as i32 - 1) * &x.ln()
            });
            exact(&s / &XReal::from_integer(&factorial(r - 1), p))
        },
    );
    params.into_iter().fold(c, |c, (k, v)| c.param(k, v))
}

fn rigorous_cases(out: &mut Vec<IdentityCase>) {
    use Family::Rigorous as R;

    for &(un, ud, pn, pd, n) in &[(1, 1, 2, 1, 3u32), (3, 2, 5, 2, 2), (2, 1, 1, 2, 4)] {
        let params = vec![("u", frac(un, ud)), ("p", frac(pn, pd)), ("n", n.to_string())];
        let c = case(
            id_with("EQ_1_1", &params),
            R,
            "Laplace transform of (1-e^-x)^n x^(p-1)",
            TOL_QUAD,
            QUAD,
            move |ctx| {
                let p = ctx.prec();
                let u = XReal::ratio(un, ud, p);
                let pm1 = XReal::ratio(pn - pd, pd, p);
                halfline(ctx, move |x| {
                    let e = (&(&pm1 * &x.ln()) - &(&u * x)).exp();
                    Ok(&e * &one_minus_exp_neg(x).powi(n as i32))
                })
            },
            ZG,
            move |ctx| {
                let p = ctx.prec();
                let pw = XReal::ratio(pn, pd, p + 32);
                let s = alt_binomial(n, p, |j| {
                    let x = XReal::ratio(un + j * ud, ud, p + 32);
                    (-&(&pw * &x.ln())).exp()
                });
                exact(&gamma(&XReal::ratio(pn, pd, p))? * &s)
            },
        );
        out.push(params.into_iter().fold(c, |c, (k, v)| c.param(k, v)));
    }

    for r in 1..=3u32 {
        for u in 1..=2i64 {
            for n in r..=3u32 {
                let params = vec![("r", r.to_string()), ("u", u.to_string()), ("n", n.to_string())];
                let c = case(
                    id_with("EQ_1_2", &params),
                    R,
                    "binomial-exponential integral with inverse powers of x",
                    TOL_QUAD,
                    QUAD,
                    move |ctx| {
                        let uu = XReal::from_i64(u, ctx.prec());
                        halfline(ctx, move |x| {
                            let v = &(-&(&uu * x)).exp() * &one_minus_exp_neg(x).powi(n as i32);
                            Ok(&v / &x.powi(r as i32))
                        })
                    },
                    EXACT,
                    move |ctx| {
                        let p = ctx.prec();
                        let s = alt_binomial(n, p, |j| {
                            let x = XReal::from_i64(u + j, p + 32);
                            &x.powi(r as i32 - 1) * &x.ln()
                        });
                        let v = &s / &XReal::from_integer(&factorial(r - 1), p);
                        exact(if r % 2 == 1 { -v } else { v })
                    },
                );
                out.push(params.into_iter().fold(c, |c, (k, v)| c.param(k, v)));
            }
        }
    }

    for n in [1u32, 2, 5] {
        out.push(
            case(
                format!("EQ_1_3:n={n}"),
                R,
                "binomial-exponential integral, u = 1 and r = 1",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    halfline(ctx, move |x| {
                        Ok(&(&(-x).exp() * &one_minus_exp_neg(x).powi(n as i32)) / x)
                    })
                },
                EXACT,
                move |ctx| {
                    let p = ctx.prec();
                    exact(-alt_binomial(n, p, |j| XReal::from_i64(1 + j, p + 32).ln()))
                },
            )
            .param("n", n),
        );
    }

    for n in [1u32, 2, 5] {
        out.push(
            case(
                format!("EQ_1_4:n={n}"),
                R,
                "integral of (1-y)^n / ln y over the unit interval",
                TOL_QUAD,
                QUAD,
                move |ctx| unit(ctx, move |pt| Ok(&pt.c.powi(n as i32) / &pt.ln())),
                EXACT,
                move |ctx| {
                    let p = ctx.prec();
                    exact(alt_binomial(n, p, |j| XReal::from_i64(1 + j, p + 32).ln()))
                },
            )
            .param("n", n),
        );
    }

    for r in 1..=3u32 {
        for u in 1..=2i64 {
            for n in r..=3u32 {
                out.push(binomial_log_power_case(r, u, n));
            }
        }
    }

    for &(num, den) in &[(1, 1), (2, 1), (3, 2)] {
        out.push(
            case(
                format!("EQ_1_9:u={}", frac(num, den)),
                R,
                "Hasse series for the digamma function",
                TOL_HASSE,
                HASSE,
                move |ctx| {
                    let h = digamma_hasse(&XReal::ratio(num, den, ctx.prec()), &ctx.cfg.hasse)?;
                    Ok(Side {
                        value: h.value,
                        error_estimate: h.error_estimate,
                        work: h.terms as u64,
                    })
                },
                ZG,
                move |ctx| exact(digamma(&XReal::ratio(num, den, ctx.prec()))?),
            )
            .param("u", frac(num, den)),
        );
    }

    for &(num, den) in &[(1, 2), (1, 1), (2, 1), (3, 1)] {
        out.push(
            case(
                format!("EQ_1_10:u={}", frac(num, den)),
                R,
                "Binet-type integral of the Omega kernel against y^(u-1)",
                TOL_QUAD,
                QUAD,
                move |ctx| omega_loglog_moment(ctx, 0, num, den),
                ZG,
                move |ctx| {
                    let u = XReal::ratio(num, den, ctx.prec());
                    exact(u.ln() - digamma(&u)?)
                },
            )
            .param("u", frac(num, den)),
        );
    }

    out.push(case(
        "EQ_1_11".into(),
        R,
        "Euler's constant as the integral of the Omega kernel",
        1e-12,
        QUAD,
        |ctx| unit(ctx, |pt| Ok(omega_at(pt))),
        POOL,
        |ctx| exact(constants(ctx.prec()).euler_gamma()),
    ));

    for &(num, den) in &[(1, 2), (2, 1), (3, 1)] {
        out.push(
            case(
                format!("EQ_1_12:u={}", frac(num, den)),
                R,
                "digamma as minus the integral of 1/ln y + y^(u-1)/(1-y)",
                TOL_QUAD,
                ZG,
                move |ctx| exact(digamma(&XReal::ratio(num, den, ctx.prec()))?),
                QUAD,
                move |ctx| {
                    let s = unit(ctx, move |pt| {
                        let a = XReal::ratio(num - den, den, pt.prec());
                        let l = pt.ln();
                        Ok(omega_at(pt) + &(&a * &l).exp_m1() / &pt.c)
                    })?;
                    Ok(Side { value: -s.value, ..s })
                },
            )
            .param("u", frac(num, den)),
        );
    }

    for &(num, den) in &[(1, 2), (2, 1), (5, 1)] {
        out.push(
            case(
                format!("EQ_1_13:u={}", frac(num, den)),
                R,
                "logarithm as the integral of (y^(u-1) - 1)/ln y",
                TOL_QUAD,
                EXACT,
                move |ctx| exact(XReal::ratio(num, den, ctx.prec()).ln()),
                QUAD,
                move |ctx| {
                    unit(ctx, move |pt| {
                        let a = XReal::ratio(num - den, den, pt.prec());
                        let l = pt.ln();
                        Ok(&(&a * &l).exp_m1() / &l)
                    })
                },
            )
            .param("u", frac(num, den)),
        );
    }

    for &(num, den) in &[(1, 2), (1, 1), (2, 1)] {
        out.push(
            case(
                format!("EQ_1_14:u={}", frac(num, den)),
                R,
                "Laplace transform of the Bose kernel",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    let u = XReal::ratio(num, den, ctx.prec());
                    halfline(ctx, move |x| Ok(&bose_kernel(x)? * &(-&(&u * x)).exp()))
                },
                ZG,
                move |ctx| {
                    let p = ctx.prec();
                    let u = XReal::ratio(num, den, p);
                    exact(u.ln() - digamma(&(&u + &XReal::one(p)))?)
                },
            )
            .param("u", frac(num, den)),
        );
    }

    for t in [1u32, 2, 3, 10] {
        out.push(
            case(
                format!("EQ_1_15:t={t}"),
                R,
                "Bose kernel against (1 - e^-tx)/x",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    let tt = XReal::from_i64(t as i64, ctx.prec());
                    halfline(ctx, move |x| {
                        Ok(&(&bose_kernel(x)? * &one_minus_exp_neg(&(&tt * x))) / x)
                    })
                },
                ZG,
                move |ctx| {
                    let p = ctx.prec();
                    let tt = XReal::from_i64(t as i64, p);
                    exact(&(&tt * &tt.ln()) - &tt - log_gamma_integer(t, p)?)
                },
            )
            .param("t", t),
        );
    }

    for t in [2u32, 3, 10] {
        out.push(
            case(
                format!("EQ_1_16:t={t}"),
                R,
                "Bose kernel against (e^-x - e^-tx)/x",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    let tm1 = XReal::from_i64(t as i64 - 1, ctx.prec());
                    halfline(ctx, move |x| {
                        let d = &(-x).exp() * &one_minus_exp_neg(&(&tm1 * x));
                        Ok(&(&bose_kernel(x)? * &d) / x)
                    })
                },
                ZG,
                move |ctx| {
                    let p = ctx.prec();
                    let tt = XReal::from_i64(t as i64, p);
                    exact(&(&tt * &tt.ln()) - &tt + XReal::one(p) - log_gamma_integer(t, p)?)
                },
            )
            .param("t", t),
        );
    }

    for n in 1..=20u32 {
        out.push(
            case(
                format!("EQ_B_2:n={n}"),
                R,
                "moments of the Omega kernel give gamma - (H_n - ln(n+1))",
                TOL_QUAD,
                QUAD,
                move |ctx| unit(ctx, move |pt| Ok(&omega_at(pt) * &pt.y.powi(n as i32))),
                POOL,
                move |ctx| {
                    let p = ctx.prec();
                    let h: Rational = (1..=n).map(|k| Rational::from((1, k))).sum();
                    let v = constants(p).euler_gamma() - XReal::from_rational(&h, p)
                        + XReal::from_i64(n as i64 + 1, p).ln();
                    exact(v)
                },
            )
            .param("n", n),
        );
    }

    for n in [1u32, 2, 5, 10] {
        out.push(
            case(
                format!("EQ_B_4:n={n}"),
                R,
                "H_n - ln n - gamma as a Laplace transform of 1/x - 1/(e^x - 1)",
                TOL_QUAD,
                POOL,
                move |ctx| {
                    let p = ctx.prec();
                    let h: Rational = (1..=n).map(|k| Rational::from((1, k))).sum();
                    let v =
                        XReal::from_rational(&h, p) - XReal::from_i64(n as i64, p).ln() - constants(p).euler_gamma();
                    exact(v)
                },
                QUAD,
                move |ctx| {
                    let nn = XReal::from_i64(n as i64, ctx.prec());
                    halfline(ctx, move |x| Ok(-(&bose_kernel(x)? * &(-&(&nn * x)).exp())))
                },
            )
            .param("n", n),
        );
    }

    let zeta_combo = |ctx: &AuditContext, with_zp2: bool| -> Result<Side> {
        let p = ctx.prec();
        let g = crate::zeta::euler_gamma(p);
        let mut v = riemann_zeta(3, p)?.mul_i64(2) - &g * &riemann_zeta(2, p)?;
        if with_zp2 {
            v = v + zeta_prime_2(p);
        }
        exact(v)
    };

    out.push(case(
        "EQ_B_5".into(),
        R,
        "dilogarithm of e^-x against 1/x - 1/(e^x - 1)",
        TOL_SERIES,
        ZG,
        move |ctx| zeta_combo(ctx, true),
        QUAD_LI,
        |ctx| {
            halfline(ctx, |x| {
                let c = one_minus_exp_neg(x);
                if !c.is_positive() {
                    return Ok(XReal::zero(x.prec()));
                }
                let pt = UnitPoint { y: (-x).exp(), c };
                Ok(-(&dilog_at(&pt) * &bose_kernel(x)?))
            })
        },
    ));

    out.push(case(
        "EQ_B_6".into(),
        R,
        "dilogarithm against 1/(t-1) - 1/(t ln t) on the unit interval",
        TOL_SERIES,
        ZG,
        move |ctx| zeta_combo(ctx, true),
        QUAD_LI,
        |ctx| {
            unit(ctx, |pt| {
                // 1/(t-1) - 1/(t ln t) = -Omega(t) - (1-t)/(t ln t)
                let k = -omega_at(pt) - &pt.c / &(&pt.y * &pt.ln());
                Ok(&dilog_at(pt) * &k)
            })
        },
    ));

    out.push(case(
        "EQ_B_8".into(),
        R,
        "zeta'(2) as the integral of (zeta(2) t - Li_2(t))/(t ln t)",
        TOL_SERIES,
        ZG,
        |ctx| exact(zeta_prime_2(ctx.prec())),
        QUAD_LI,
        |ctx| {
            let z2 = constants(ctx.prec()).zeta(2);
            unit(ctx, move |pt| {
                let l = pt.ln();
                let num = if pt.c < XReal::ratio(1, 2, 64) {
                    // Li_2(t) = zeta(2) - ln t ln(1-t) - Li_2(1-t)
                    let comp = UnitPoint {
                        y: pt.c.clone(),
                        c: pt.y.clone(),
                    };
                    -(&z2 * &pt.c) + &l * &pt.c.ln() + dilog_at(&comp)
                } else {
                    &z2 * &pt.y - dilog_at(pt)
                };
                Ok(&num / &(&pt.y * &l))
            })
        },
    ));

    out.push(case(
        "EQ_B_10".into(),
        R,
        "2 zeta(3) - gamma zeta(2) as the integral of Li_2(t)/(t-1) - zeta(2)/ln t",
        TOL_SERIES,
        ZG,
        move |ctx| zeta_combo(ctx, false),
        QUAD_LI,
        |ctx| {
            let z2 = constants(ctx.prec()).zeta(2);
            unit(ctx, move |pt| {
                if pt.c < XReal::ratio(1, 2, 64) {
                    let comp = UnitPoint {
                        y: pt.c.clone(),
                        c: pt.y.clone(),
                    };
                    let tail = &(&pt.ln() * &pt.c.ln()) + &dilog_at(&comp);
                    Ok(-(&z2 * &omega_at(pt)) + &tail / &pt.c)
                } else {
                    Ok(-(&dilog_at(pt) / &pt.c) - &z2 / &pt.ln())
                }
            })
        },
    ));

    out.push(case(
        "EQ_B_11".into(),
        R,
        "integral of (t-1) Li_2(t)/(t ln t) against the series of ln(1 + 1/n)/n^2",
        TOL_SERIES,
        QUAD_LI,
        |ctx| unit(ctx, |pt| Ok(-(&(&pt.c * &dilog_at(pt)) / &(&pt.y * &pt.ln())))),
        EXACT,
        |ctx| {
            let wp = ctx.prec() + 32;
            let tol = XReal::from_f64(1e-12, 64).with_prec(wp);
            let r = sum_series(
                |n| {
                    let x = XReal::from_i64(n as i64, wp);
                    &x.recip().ln_1p() / &x.square()
                },
                1,
                &tol,
                Acceleration::default(),
            )?;
            Ok(Side {
                value: r.value.with_prec(ctx.prec()),
                error_estimate: r.error_estimate,
                work: r.terms_used,
            })
        },
    ));

    out.push(
        case(
            "EQ_B_15:x=1/2".into(),
            R,
            "antiderivative of ln ln(1/t) through the logarithmic integral",
            TOL_QUAD,
            QUAD,
            |ctx| {
                let p = ctx.prec();
                let half = XReal::ratio(1, 2, p);
                let ln_half = half.ln();
                let s = unit(ctx, move |pt| Ok((-(&ln_half + &pt.ln())).ln()))?;
                Ok(Side {
                    value: &s.value * &half,
                    ..s
                })
            },
            LI,
            |ctx| {
                let x = XReal::ratio(1, 2, ctx.prec());
                exact(&x * &(-x.ln()).ln() - li_nielsen(&x)?)
            },
        )
        .param("x", "1/2"),
    );

    for n in 0..=2u32 {
        out.push(
            case(
                format!("EQ_B_21:n={n}"),
                R,
                "Stieltjes constants through monic polynomials of ln ln(1/t)",
                TOL_HASSE,
                QUAD_COPPO,
                move |ctx| Ok(stieltjes_via_coppo(n as usize, &ctx.quad())?.into()),
                HASSE,
                move |ctx| gamma_side(ctx, n, 1, 1),
            )
            .param("n", n),
        );
    }

    for s in [2u32, 3] {
        for x in [1i64, 2] {
            out.push(
                case(
                    format!("EQ_B_25:s={s},x={x}"),
                    R,
                    "Hurwitz zeta minus its pole part as a Laplace transform",
                    TOL_QUAD,
                    ZG,
                    move |ctx| {
                        let p = ctx.prec();
                        let xx = XReal::from_i64(x, p);
                        let pole = xx.powi(1 - s as i32).div_i64(s as i64 - 1);
                        let v = hurwitz_zeta(s, &xx)? - pole;
                        exact(v.mul_integer(&factorial(s - 1)))
                    },
                    QUAD,
                    move |ctx| {
                        let xx = XReal::from_i64(x, ctx.prec());
                        halfline(ctx, move |t| {
                            let e = (&t.ln().mul_i64(s as i64 - 1) - &(&xx * t)).exp();
                            Ok(&e * &bose_plus_one(t)?)
                        })
                    },
                )
                .param("s", s)
                .param("x", x),
            );
        }
    }

    for (base, x, anchor) in [
        (
            "EQ_B_26",
            2i64,
            "log-power Laplace transform against shifted Stieltjes constants",
        ),
        ("EQ_B_27", 1, "log-power Laplace transform against Stieltjes constants"),
    ] {
        for n in 0..=3u32 {
            out.push(
                case(
                    if x == 1 {
                        format!("{base}:n={n}")
                    } else {
                        format!("{base}:n={n},x={x}")
                    },
                    R,
                    anchor,
                    TOL_HASSE,
                    HASSE,
                    move |ctx| gamma_hat_convolution(ctx, n, x),
                    QUAD,
                    move |ctx| {
                        let xx = XReal::from_i64(x, ctx.prec());
                        halfline(ctx, move |t| {
                            let mut v = &(-&(&xx * t)).exp() * &bose_plus_one(t)?;
                            if n > 0 {
                                v = &v * &t.ln().powi(n as i32);
                            }
                            Ok(v)
                        })
                    },
                )
                .param("n", n)
                .param("x", x),
            );
        }
    }

    for (base, x, anchor) in [
        (
            "EQ_B_28",
            2i64,
            "Omega-kernel log-log moments against shifted Stieltjes constants",
        ),
        ("EQ_B_29", 1, "Omega-kernel log-log moments against Stieltjes constants"),
    ] {
        for n in 0..=3u32 {
            out.push(
                case(
                    if x == 1 {
                        format!("{base}:n={n}")
                    } else {
                        format!("{base}:n={n},x={x}")
                    },
                    R,
                    anchor,
                    TOL_HASSE,
                    HASSE,
                    move |ctx| gamma_hat_convolution(ctx, n, x),
                    QUAD,
                    move |ctx| omega_loglog_moment(ctx, n, x, 1),
                )
                .param("n", n)
                .param("x", x),
            );
        }
    }

    out.push(case(
        "EQ_B_30".into(),
        R,
        "gamma_1 from the first log-log moment of the Omega kernel",
        TOL_HASSE,
        HASSE,
        |ctx| gamma_side(ctx, 1, 1, 1),
        QUAD_POOL,
        |ctx| {
            let g = constants(ctx.prec()).euler_gamma();
            let i1 = omega_loglog_moment(ctx, 1, 1, 1)?;
            Ok(Side {
                value: -g.square() - &i1.value,
                ..i1
            })
        },
    ));

    out.push(case(
        "EQ_C_1".into(),
        R,
        "integral of ln ln(1/t) over the unit interval",
        TOL_QUAD,
        QUAD,
        |ctx| unit(ctx, |pt| Ok(pt.ln_abs_ln())),
        POOL,
        |ctx| exact(-constants(ctx.prec()).euler_gamma()),
    ));

    out.push(case(
        "EQ_ZETA3_LOG2".into(),
        R,
        "2 zeta(3) as the integral of ln^2 y/(1-y)",
        TOL_QUAD,
        ZG,
        |ctx| exact(riemann_zeta(3, ctx.prec())?.mul_i64(2)),
        QUAD,
        |ctx| unit(ctx, |pt| Ok(&pt.ln().square() / &pt.c)),
    ));

    for (a, p) in [(1i64, 2u32), (2, 3)] {
        out.push(
            case(
                format!("EQ_3_KERNEL:a={a},p={p}"),
                R,
                "Laplace transform of x^p/(1-e^-x), the generating kernel of the Hasse series",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    let aa = XReal::from_i64(a, ctx.prec());
                    halfline(ctx, move |x| {
                        let e = (&x.ln().mul_i64(p as i64) - &(&aa * x)).exp();
                        Ok(&e / &one_minus_exp_neg(x))
                    })
                },
                ZG,
                move |ctx| {
                    let z = hurwitz_zeta(p + 1, &XReal::from_i64(a, ctx.prec()))?;
                    exact(z.mul_integer(&factorial(p)))
                },
            )
            .param("a", a)
            .param("p", p),
        );
    }

    for n in 0..=4u32 {
        out.push(
            case(
                format!("EQ_2_6:n={n}"),
                R,
                "sign of the Omega-kernel log-log moments alternates",
                0.0,
                QUAD,
                move |ctx| {
                    let s = omega_loglog_moment(ctx, n, 1, 1)?;
                    Ok(Side {
                        value: if n % 2 == 1 { -s.value } else { s.value },
                        ..s
                    })
                },
                EXACT,
                |ctx| exact(XReal::zero(ctx.prec())),
            )
            .param("n", n)
            .greater(),
        );
    }
}

fn section2_cases(out: &mut Vec<IdentityCase>) {
    use Family::Section2Audit as S;

    for u in [1i64, 2] {
        out.push(
            case(
                format!("EQ_2_4:u={u}"),
                S,
                "first log-log moment of Omega against y^(u-1) via the continued Hasse parameter",
                TOL_HASSE,
                QUAD,
                move |ctx| omega_loglog_moment(ctx, 1, u, 1),
                HASSE,
                move |ctx| {
                    let p = ctx.prec();
                    let g = constants(p).euler_gamma();
                    let lu = XReal::from_i64(u, p).ln();
                    let g0 = gamma_side(ctx, 0, u, 1)?;
                    let g1 = gamma_side(ctx, 1, u, 1)?;
                    let k = -lu.square() - &g * &lu;
                    Ok(combine(&[(XReal::from_i64(-2, p), &g1), (-&g, &g0)], k))
                },
            )
            .param("u", u),
        );
    }

    out.push(case(
        "EQ_2_5".into(),
        S,
        "first log-log moment of Omega as -(2 gamma_1 + gamma^2)",
        TOL_HASSE,
        QUAD,
        |ctx| omega_loglog_moment(ctx, 1, 1, 1),
        HASSE,
        |ctx| {
            let p = ctx.prec();
            let g = constants(p).euler_gamma();
            let g1 = gamma_side(ctx, 1, 1, 1)?;
            Ok(combine(&[(XReal::from_i64(-2, p), &g1)], -g.square()))
        },
    ));

    let second_moment_rhs = |ctx: &AuditContext, u: i64| -> Result<Side> {
        let p = ctx.prec();
        let c = constants(p);
        let g = c.euler_gamma();
        let lu = XReal::from_i64(u, p).ln();
        let g0 = gamma_side(ctx, 0, u, 1)?;
        let g1 = gamma_side(ctx, 1, u, 1)?;
        let g2 = gamma_side(ctx, 2, u, 1)?;
        let b = c.zeta(2) - g.square();
        let k = lu.powi(3) + &g.mul_i64(2) * &lu.square() - &b * &lu;
        Ok(combine(
            &[(XReal::from_i64(3, p), &g2), (g.mul_i64(4), &g1), (-b, &g0)],
            k,
        ))
    };

    for u in [1i64, 2] {
        out.push(
            case(
                format!("EQ_2_9:u={u}"),
                S,
                "second log-log moment of Omega against y^(u-1) via the continued Hasse parameter",
                TOL_HASSE,
                QUAD,
                move |ctx| omega_loglog_moment(ctx, 2, u, 1),
                HASSE,
                move |ctx| second_moment_rhs(ctx, u),
            )
            .param("u", u),
        );
    }

    out.push(case(
        "EQ_2_10".into(),
        S,
        "second log-log moment of Omega as 3 gamma_2 + 4 gamma gamma_1 - (zeta(2) - gamma^2) gamma",
        TOL_HASSE,
        QUAD,
        |ctx| omega_loglog_moment(ctx, 2, 1, 1),
        HASSE,
        move |ctx| second_moment_rhs(ctx, 1),
    ));

    out.push(
        case(
            "EQ_2_11".into(),
            S,
            "positivity of 3 gamma_2 + 4 gamma gamma_1 - (zeta(2) - gamma^2) gamma",
            0.0,
            HASSE,
            move |ctx| second_moment_rhs(ctx, 1),
            EXACT,
            |ctx| exact(XReal::zero(ctx.prec())),
        )
        .greater(),
    );

    let pi_zeta_form = |ctx: &AuditContext, doubled: bool, plus_gamma: bool| -> Result<Side> {
        let p = ctx.prec();
        let c = constants(p);
        let g = c.euler_gamma();
        let pi2 = c.pi().square();
        let z2 = c.zeta(2);
        let v = if doubled {
            pi2.mul_i64(4) * c.zeta_prime_minus_one() + &z2 * &(&g + &c.ln_2pi().mul_i64(2))
        } else {
            pi2.mul_i64(2) * c.zeta_prime_minus_one() + &z2 * &c.ln_2pi()
        };
        exact(if plus_gamma { v + g } else { v })
    };

    let log_weighted = |ctx: &AuditContext, over_complement: bool| -> Result<Side> {
        let s = unit(ctx, move |pt| {
            let l = pt.ln();
            let w = if over_complement { pt.c.recip() } else { omega_at(pt) };
            Ok(-(&(&w * &l) * &(-&l).ln()))
        })?;
        Ok(s)
    };

    out.push(case(
        "EQ_2_14".into(),
        S,
        "Omega-weighted integral of -ln y ln|ln y| through zeta'(-1)",
        TOL_QUAD,
        QUAD,
        move |ctx| log_weighted(ctx, false),
        POOL,
        move |ctx| pi_zeta_form(ctx, true, true),
    ));
    out.push(
        case(
            "EQ_2_14_DERIVED".into(),
            S,
            "Omega-weighted integral of -ln y ln|ln y| through zeta'(-1), single-weight variant",
            TOL_QUAD,
            QUAD,
            move |ctx| log_weighted(ctx, false),
            POOL,
            move |ctx| pi_zeta_form(ctx, false, true),
        )
        .note("inferred variant: gamma_1 enters once, as in the unit-interval moment identities"),
    );
    out.push(case(
        "EQ_2_15".into(),
        S,
        "integral of -ln y ln|ln y|/(1-y) through zeta'(-1)",
        TOL_QUAD,
        QUAD,
        move |ctx| log_weighted(ctx, true),
        POOL,
        move |ctx| pi_zeta_form(ctx, true, false),
    ));
    out.push(
        case(
            "EQ_2_15_DERIVED".into(),
            S,
            "integral of -ln y ln|ln y|/(1-y) through zeta'(-1), single-weight variant",
            TOL_QUAD,
            QUAD,
            move |ctx| log_weighted(ctx, true),
            POOL,
            move |ctx| pi_zeta_form(ctx, false, false),
        )
        .note("inferred variant: gamma_1 enters once, as in the unit-interval moment identities"),
    );

    for m in 0..=3u32 {
        out.push(
            case(
                format!("EQ_3_12:m={m}"),
                S,
                "(m+1) gamma_m as a Gamma-derivative convolution of Omega log-log moments",
                TOL_HASSE,
                HASSE,
                move |ctx| {
                    let g = gamma_side(ctx, m, 1, 1)?;
                    Ok(combine(
                        &[(XReal::from_i64(m as i64 + 1, ctx.prec()), &g)],
                        XReal::zero(ctx.prec()),
                    ))
                },
                QUAD_POOL,
                move |ctx| {
                    let p = ctx.prec();
                    let c = constants(p);
                    let row = binomial_row(m);
                    // coefficient of L^(m-k): C(m,k) (-1)^(m-k) Gamma^(k)(1)
                    let coef: Vec<XReal> = (0..=m)
                        .map(|k| {
                            let v = c.gamma_derivative_at_one(k).mul_integer(&row[k as usize]);
                            if (m - k) % 2 == 1 {
                                -v
                            } else {
                                v
                            }
                        })
                        .collect();
                    unit(ctx, move |pt| {
                        let l = pt.ln_abs_ln();
                        let mut poly = XReal::zero(pt.prec());
                        // Horner in L over powers m-k, k = 0..m
                        for c in &coef[..=m as usize] {
                            poly = &(&poly * &l) + c;
                        }
                        Ok(&poly * &omega_at(pt))
                    })
                },
            )
            .param("m", m),
        );
    }

    for m in 0..=3u32 {
        out.push(
            case(
                format!("EQ_3_15:m={m}"),
                S,
                "(m+1) gamma_m as a binomial convolution of c_k and d_(m-k)",
                TOL_HASSE,
                HASSE,
                move |ctx| {
                    let g = gamma_side(ctx, m, 1, 1)?;
                    Ok(combine(
                        &[(XReal::from_i64(m as i64 + 1, ctx.prec()), &g)],
                        XReal::zero(ctx.prec()),
                    ))
                },
                QUAD_POOL,
                move |ctx| {
                    let p = ctx.prec();
                    let c = constants(p);
                    let row = binomial_row(m);
                    let mut sides = Vec::new();
                    for k in 0..=m {
                        // d_j = (-1)^j I_j
                        let i = omega_loglog_moment(ctx, m - k, 1, 1)?;
                        let d = if (m - k) % 2 == 1 { -&i.value } else { i.value.clone() };
                        // (-1)^k c_k = Gamma^(k)(1)
                        let coef = c.gamma_derivative_at_one(k).mul_integer(&row[k as usize]);
                        sides.push((coef, Side { value: d, ..i }));
                    }
                    let refs: Vec<(XReal, &Side)> = sides.iter().map(|(k, s)| (k.clone(), s)).collect();
                    Ok(combine(&refs, XReal::zero(p)))
                },
            )
            .param("m", m),
        );
    }

    for (a, p) in [(1i64, 2u32), (2, 3)] {
        out.push(
            case(
                format!("EQ_3_KERNEL_PRINTED:a={a},p={p}"),
                S,
                "Laplace transform of x^(p-1) ln(1-e^-x)/(1-e^-x) against the Hasse zeta series",
                TOL_QUAD,
                QUAD,
                move |ctx| {
                    let aa = XReal::from_i64(a, ctx.prec());
                    halfline(ctx, move |x| {
                        let c = one_minus_exp_neg(x);
                        let e = (&x.ln().mul_i64(p as i64 - 1) - &(&aa * x)).exp();
                        Ok(&(&e * &c.ln()) / &c)
                    })
                },
                ZG,
                move |ctx| {
                    // Gamma(p) sum_n 1/(n+1) sum_k C(n,k)(-1)^k (a+k)^-p = p! zeta(p+1, a)
                    let z = hurwitz_zeta(p + 1, &XReal::from_i64(a, ctx.prec()))?;
                    exact(z.mul_integer(&factorial(p)))
                },
            )
            .param("a", a)
            .param("p", p),
        );
    }
}

/// All identity cases in a fixed order.
pub fn registry() -> Vec<IdentityCase> {
    let mut out = Vec::new();
    rigorous_cases(&mut out);
    section2_cases(&mut out);
    out
}
