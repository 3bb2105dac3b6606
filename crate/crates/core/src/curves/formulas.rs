//! The closed formulas for #C in terms of φ, χ_4, G and 2G2.

use serde::Serialize;

use super::{brute_count, trace_frobenius, CurveParams, EdwardsParams, EllipticParams};
use crate::chars::MultChar;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::padic::{g_fast, GnnEvaluator};

/// One named summand of a formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub name: String,
    pub value: i64,
}

fn term(name: &str, value: i64) -> Term {
    Term {
        name: name.to_string(),
        value,
    }
}

/// A formula count with its per-term breakdown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaCount {
    pub count: i64,
    pub terms: Vec<Term>,
    /// Number of G (or 2G2) evaluations performed.
    pub g_evaluations: usize,
}

impl FormulaCount {
    fn from_terms(terms: Vec<Term>, g_evaluations: usize) -> Self {
        FormulaCount {
            count: terms.iter().map(|t| t.value).sum(),
            terms,
            g_evaluations,
        }
    }
}

/// How G(t) is evaluated.
#[derive(Debug, Clone, Copy)]
pub enum GPath<'a, 'f> {
    /// The closed form.
    Fast,
    /// 2G2[1/4, 3/4; 0, 1/2 | t] through the p-adic engine.
    Padic(&'a GnnEvaluator<'f>),
    /// Both; a mismatch is an error.
    Both(&'a GnnEvaluator<'f>),
}

impl GPath<'_, '_> {
    pub fn name(&self) -> &'static str {
        match self {
            GPath::Fast => "fast",
            GPath::Padic(_) => "padic",
            GPath::Both(_) => "both",
        }
    }
}

fn padic_integer(field: &FieldCtx, ev: &GnnEvaluator<'_>, t: FqElem) -> Result<i64> {
    let v = ev.eval(t)?;
    v.as_integer().ok_or_else(|| {
        Error::RecognitionFailure(format!("G({}) = {v} is not an integer", field.format(t)))
    })
}

/// G(t) along the requested path.
pub fn g_value(field: &FieldCtx, path: GPath<'_, '_>, t: FqElem) -> Result<i64> {
    match path {
        GPath::Fast => g_fast(field, t),
        GPath::Padic(ev) => padic_integer(field, ev, t),
        GPath::Both(ev) => {
            let fast = g_fast(field, t)?;
            let padic = ev.eval(t)?;
            if padic.as_integer() != Some(fast) {
                return Err(Error::PathDisagreement {
                    t: field.format(t),
                    fast,
                    padic: padic.to_string(),
                });
            }
            Ok(fast)
        }
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(what.to_string()))
    }
}

/// χ_4(u) + χ̄_4(u), an integer in {0, ±2}; `conj` swaps χ_4 for χ̄_4.
fn chi4_pair(field: &FieldCtx, u: FqElem, conj: bool) -> i64 {
    let mut chi = MultChar::quartic(field).expect("q = 1 mod 4");
    if conj {
        chi = chi.conj();
    }
    let s = chi.eval_exact(field, u).expect("order 4") + chi.conj().eval_exact(field, u).expect("order 4");
    s.as_integer().expect("χ + χ̄ is rational")
}

/// I₂′ = φ(ae(c² - 4ab)) (χ_4 + χ̄_4)(de/ab) when q = 1 mod 4, else 0.
/// `conj` evaluates with χ_{3(q-1)/4} in place of χ_{(q-1)/4}.
pub fn i2_prime(field: &FieldCtx, cp: &CurveParams, conj: bool) -> Result<i64> {
    if field.q() % 4 != 1 {
        return Ok(0);
    }
    let u = field.div(field.mul(cp.d, cp.e), field.mul(cp.a, cp.b))?;
    let phi = field.quad_char(field.mul(field.mul(cp.a, cp.e), cp.disc(field)));
    Ok(phi * chi4_pair(field, u, conj))
}

/// #C when af = ce and c² ≠ 4ab:
///
/// q - 2 + φ(bd) + φ(ad) - φ(ae) + φ(abde D) + I₂′
///   + φ(D) sum_y φ(y(y-1)(1+u_y)) + q δ(ab = de)(1 + φ(ae)) + X,
///
/// D = c² - 4ab, u_y = 16de(1-y)(c² - 4aby)/D²,
/// X = φ(ad) sum_{y ∉ {1, c²/4ab}} φ(y) G(-1/u_y).
pub fn mt1_count(field: &FieldCtx, cp: &CurveParams, path: GPath<'_, '_>) -> Result<FormulaCount> {
    require(cp.af_eq_ce(field), "af = ce")?;
    let disc = cp.disc(field);
    require(!disc.is_zero(), "c² - 4ab ≠ 0")?;
    let phi = |x: FqElem| field.quad_char(x);
    let q = field.q() as i64;
    let (a, b, c, d, e) = (cp.a, cp.b, cp.c, cp.d, cp.e);
    let ab = field.mul(a, b);
    let de = field.mul(d, e);
    let c2 = field.square(c);
    let one = field.one();

    let k = field.div(
        field.mul(field.from_int(16), de),
        field.square(disc),
    )?;
    let u = |y: FqElem| {
        let lin = field.sub(c2, field.mul(field.mul(field.from_int(4), ab), y));
        field.mul(k, field.mul(field.sub(one, y), lin))
    };
    let excluded = field.div(c2, field.mul(field.from_int(4), ab))?;

    let mut sum_phi = 0i64;
    let mut x_sum = 0i64;
    let mut evals = 0;
    for y in field.elements() {
        let uy = u(y);
        let inner = field.mul(field.mul(y, field.sub(y, one)), field.add(one, uy));
        sum_phi += phi(inner);
        if y != one && y != excluded {
            let t = field.neg(field.inv(uy)?);
            x_sum += phi(y) * g_value(field, path, t)?;
            evals += 1;
        }
    }
    let delta = cp.ab_eq_de(field);
    let terms = vec![
        term("q-2", q - 2),
        term("phi(bd)", phi(field.mul(b, d))),
        term("phi(ad)", phi(field.mul(a, d))),
        term("-phi(ae)", -phi(field.mul(a, e))),
        term("phi(abde(c^2-4ab))", phi(field.mul(field.mul(ab, de), disc))),
        term("I2'", i2_prime(field, cp, false)?),
        term("phi(c^2-4ab)*sum phi(y(y-1)(1+u_y))", phi(disc) * sum_phi),
        term(
            "q*delta(ab=de)*(1+phi(ae))",
            if delta { q * (1 + phi(field.mul(a, e))) } else { 0 },
        ),
        term("X", phi(field.mul(a, d)) * x_sum),
    ];
    Ok(FormulaCount::from_terms(terms, evals))
}

/// q · 2G2[1/2, 1/2; 1/4, 3/4 | t] as an integer.
fn q_times_half(field: &FieldCtx, half: &GnnEvaluator<'_>, t: FqElem) -> Result<i64> {
    let v = half.eval(t)?;
    v.times_integer(field.q() as i128)
        .map(|n| n as i64)
        .ok_or_else(|| {
            Error::RecognitionFailure(format!(
                "q * 2G2(half | {}) = q * {v} is not an integer",
                field.format(t)
            ))
        })
}

/// #C when af = ce and c² = 4ab:
///
/// q - 1 - qφ(ad) H(4de/c²) - q H(c²/4de) + (qδ(ab = de) - 1)(1 + φ(ae)),
///
/// H = 2G2[1/2, 1/2; 1/4, 3/4 | ·] from `half`.
pub fn mt6_count(field: &FieldCtx, cp: &CurveParams, half: &GnnEvaluator<'_>) -> Result<FormulaCount> {
    require(cp.af_eq_ce(field), "af = ce")?;
    require(cp.disc(field).is_zero(), "c² = 4ab")?;
    let phi = |x: FqElem| field.quad_char(x);
    let q = field.q() as i64;
    let de = field.mul(cp.d, cp.e);
    let c2 = field.square(cp.c);
    let four = field.from_int(4);
    let t1 = field.div(field.mul(four, de), c2)?;
    let t2 = field.div(c2, field.mul(four, de))?;
    let delta = cp.ab_eq_de(field) as i64;
    let terms = vec![
        term("q-1", q - 1),
        term(
            "-q*phi(ad)*H(4de/c^2)",
            -phi(field.mul(cp.a, cp.d)) * q_times_half(field, half, t1)?,
        ),
        term("-q*H(c^2/4de)", -q_times_half(field, half, t2)?),
        term(
            "(q*delta(ab=de)-1)*(1+phi(ae))",
            (q * delta - 1) * (1 + phi(field.mul(cp.a, cp.e))),
        ),
    ];
    Ok(FormulaCount::from_terms(terms, 2))
}

/// 2q - 2 + (q-1)φ(ad) if q = 1 mod 4, 2q - 2 - (q-1)φ(ad) otherwise;
/// needs af = ce, c² = -4ab, ab = de.
pub fn cor_1_4_count(field: &FieldCtx, cp: &CurveParams) -> Result<i64> {
    require(cp.af_eq_ce(field), "af = ce")?;
    let four_ab = field.mul(field.from_int(4), field.mul(cp.a, cp.b));
    require(field.square(cp.c) == field.neg(four_ab), "c² = -4ab")?;
    require(cp.ab_eq_de(field), "ab = de")?;
    let q = field.q() as i64;
    let sign = if q % 4 == 1 { 1 } else { -1 };
    Ok(2 * q - 2 + sign * (q - 1) * field.quad_char(field.mul(cp.a, cp.d)))
}

/// 2q - 3 + (q-2)φ(ad) if q = 1 mod 8, 2q - 1 + qφ(ad) if q = 5 mod 8;
/// needs q = 1 mod 4, af = ce, c² = 4ab, ab = de.
pub fn cor_1_6_count(field: &FieldCtx, cp: &CurveParams) -> Result<i64> {
    let q = field.q() as i64;
    require(q % 4 == 1, "q = 1 mod 4")?;
    require(cp.af_eq_ce(field), "af = ce")?;
    require(cp.disc(field).is_zero(), "c² = 4ab")?;
    require(cp.ab_eq_de(field), "ab = de")?;
    let phi_ad = field.quad_char(field.mul(cp.a, cp.d));
    Ok(if q % 8 == 1 {
        2 * q - 3 + (q - 2) * phi_ad
    } else {
        2 * q - 1 + q * phi_ad
    })
}

/// Affine count of the Edwards-type curve:
///
/// sum_{y ∉ {1, -α²/4β}} φ(y) G(-1/v_y) + sum_y φ(y(y-1)(1+v_y)) + J₂,
///
/// v_y = 16k⁴ℓ(1-y)(α² + 4βy)/(α² + 4β)², J₂ = q - (χ_4 + χ̄_4)(-ℓ/β)
/// when q = 1 mod 4 and q otherwise.
pub fn cor_1_5_count(field: &FieldCtx, ep: &EdwardsParams, path: GPath<'_, '_>) -> Result<FormulaCount> {
    let ep = EdwardsParams::new(field, ep.alpha, ep.beta, ep.k, ep.ell)?;
    let phi = |x: FqElem| field.quad_char(x);
    let q = field.q() as i64;
    let one = field.one();
    let four = field.from_int(4);
    let alpha2 = field.square(ep.alpha);
    let delta = ep.delta(field);
    let k4l = field.mul(field.square(field.square(ep.k)), ep.ell);
    let scale = field.div(field.mul(field.from_int(16), k4l), field.square(delta))?;
    let v = |y: FqElem| {
        let lin = field.add(alpha2, field.mul(field.mul(four, ep.beta), y));
        field.mul(scale, field.mul(field.sub(one, y), lin))
    };
    let excluded = field.neg(field.div(alpha2, field.mul(four, ep.beta))?);
    let mut g_sum = 0i64;
    let mut phi_sum = 0i64;
    let mut evals = 0;
    for y in field.elements() {
        let vy = v(y);
        phi_sum += phi(field.mul(field.mul(y, field.sub(y, one)), field.add(one, vy)));
        if y != one && y != excluded {
            g_sum += phi(y) * g_value(field, path, field.neg(field.inv(vy)?))?;
            evals += 1;
        }
    }
    let j2 = if q % 4 == 1 {
        let u = field.neg(field.div(ep.ell, ep.beta)?);
        q - chi4_pair(field, u, false)
    } else {
        q
    };
    let terms = vec![
        term("sum phi(y)G(-1/v_y)", g_sum),
        term("sum phi(y(y-1)(1+v_y))", phi_sum),
        term("J2", j2),
    ];
    Ok(FormulaCount::from_terms(terms, evals))
}

/// (a_q(E_{h,g}) by brute force, q φ(-hg) 2G2[1/2, 1/2; 1/4, 3/4 | 4g/h²]).
pub fn bs1_trace_values(field: &FieldCtx, ep: &EllipticParams, half: &GnnEvaluator<'_>) -> Result<(i64, i64)> {
    let ep = EllipticParams::new(ep.h, ep.g)?;
    let brute = trace_frobenius(field, &ep)?;
    let t = field.div(field.mul(field.from_int(4), ep.g), field.square(ep.h))?;
    let phi = field.quad_char(field.neg(field.mul(ep.h, ep.g)));
    Ok((brute, phi * q_times_half(field, half, t)?))
}

pub fn bs1_trace_check(field: &FieldCtx, ep: &EllipticParams, half: &GnnEvaluator<'_>) -> Result<bool> {
    let (brute, formula) = bs1_trace_values(field, ep, half)?;
    Ok(brute == formula)
}

/// q - 1 - φ(-aeh) a_q(E_{h,g}) - φ(-hg) a_q(E_{4/h,1/g}) + (qδ(ab = de) - 1)(1 + φ(ae)),
/// with both traces counted directly; needs af = ce, c² = 4ab, c²g = h²de.
pub fn cor2_rhs(field: &FieldCtx, cp: &CurveParams, ep: &EllipticParams) -> Result<FormulaCount> {
    require(cp.af_eq_ce(field), "af = ce")?;
    require(cp.disc(field).is_zero(), "c² = 4ab")?;
    let ep = EllipticParams::new(ep.h, ep.g)?;
    let (h, g) = (ep.h, ep.g);
    require(
        field.mul(field.square(cp.c), g) == field.mul(field.square(h), field.mul(cp.d, cp.e)),
        "c²g = h²de",
    )?;
    let phi = |x: FqElem| field.quad_char(x);
    let q = field.q() as i64;
    let a1 = trace_frobenius(field, &ep)?;
    let dual = EllipticParams::new(field.div(field.from_int(4), h)?, field.inv(g)?)?;
    let a2 = trace_frobenius(field, &dual)?;
    let delta = cp.ab_eq_de(field) as i64;
    let terms = vec![
        term("q-1", q - 1),
        term(
            "-phi(-aeh)*a_q(E_{h,g})",
            -phi(field.neg(field.mul(field.mul(cp.a, cp.e), h))) * a1,
        ),
        term("-phi(-hg)*a_q(E_{4/h,1/g})", -phi(field.neg(field.mul(h, g))) * a2),
        term(
            "(q*delta(ab=de)-1)*(1+phi(ae))",
            (q * delta - 1) * (1 + phi(field.mul(cp.a, cp.e))),
        ),
    ];
    Ok(FormulaCount::from_terms(terms, 0))
}

pub fn cor2_check(field: &FieldCtx, cp: &CurveParams, ep: &EllipticParams) -> Result<bool> {
    let rhs = cor2_rhs(field, cp, ep)?;
    Ok(brute_count(field, cp) as i64 == rhs.count)
}
