//! McCarthy's nGn: for parameters a_1..a_n (upper), b_1..b_n (lower) and
//! t in F_q^x,
//!
//! nGn = -1/(q-1) sum_{s=0}^{q-2} (-1)^{sn} ω̄^s(t)
//!        prod_k prod_{i<r} (-p)^{e(k,i,s)}
//!          Γ_p(⟨(a_k - s/(q-1)) p^i⟩) / Γ_p(⟨a_k p^i⟩)
//!          Γ_p(⟨(-b_k + s/(q-1)) p^i⟩) / Γ_p(⟨-b_k p^i⟩)
//!
//! with e(k,i,s) = -⌊⟨a_k p^i⟩ - s p^i/(q-1)⌋ - ⌊⟨-b_k p^i⟩ + s p^i/(q-1)⌋.
//! Everything except ω̄^s(t) is independent of t, so it is prepared once.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use super::{floor, frac, PadicCtx, Precision, QpValue, Rational, STABILITY_EXTRA};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Upper and lower parameter lists of an nGn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnnParams {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
}

impl GnnParams {
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        if upper.is_empty() || upper.len() != lower.len() {
            return Err(Error::BadParams(
                "nGn needs equally many (>= 1) upper and lower parameters".into(),
            ));
        }
        Ok(GnnParams { upper, lower })
    }

    /// [1/4, 3/4; 0, 1/2], the set whose values are G(t).
    pub fn g_function() -> Self {
        GnnParams {
            upper: vec![Rational::new(1, 4), Rational::new(3, 4)],
            lower: vec![Rational::from_integer(0), Rational::new(1, 2)],
        }
    }

    /// [1/2, 1/2; 1/4, 3/4], the set tied to traces of Frobenius.
    pub fn half() -> Self {
        GnnParams {
            upper: vec![Rational::new(1, 2), Rational::new(1, 2)],
            lower: vec![Rational::new(1, 4), Rational::new(3, 4)],
        }
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn n(&self) -> usize {
        self.upper.len()
    }
}

impl fmt::Display for GnnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "[{}; {}]", join(&self.upper), join(&self.lower))
    }
}

/// A p-adic value recognized as the rational numerator/denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognizedRational {
    pub numerator: i128,
    pub denominator: u128,
    pub raw: QpValue,
}

impl RecognizedRational {
    pub fn as_integer(&self) -> Option<i64> {
        (self.denominator == 1).then_some(self.numerator as i64)
    }

    /// Same rational value, ignoring the raw residue.
    pub fn same_value(&self, other: &RecognizedRational) -> bool {
        self.numerator == other.numerator && self.denominator == other.denominator
    }

    /// numerator * k / denominator if that is an integer.
    pub fn times_integer(&self, k: i128) -> Option<i128> {
        let n = self.numerator * k;
        (n % self.denominator as i128 == 0).then(|| n / self.denominator as i128)
    }
}

impl fmt::Display for RecognizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == 1 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, self.denominator)
        }
    }
}

fn describe(v: &QpValue) -> String {
    let coeffs: Vec<String> = v.mantissa.coeffs().iter().map(|c| c.to_string()).collect();
    format!("p^{} * [{}]", v.valuation, coeffs.join(", "))
}

/// Balanced lift of the constant coordinate times p^valuation; fails when
/// a non-constant coordinate survives or |value| > bound.
pub fn rational_recognize(ctx: &PadicCtx<'_>, v: &QpValue, bound: u128) -> Result<RecognizedRational> {
    if !v.mantissa.is_constant() {
        return Err(Error::RecognitionFailure(format!(
            "non-constant coordinates survive: {}",
            describe(v)
        )));
    }
    let p = ctx.field().p() as i128;
    let lifted = ctx.zmod().balanced(v.mantissa.constant_term());
    let overflow = || Error::RecognitionFailure(format!("value out of range: {}", describe(v)));
    let (mut num, mut den) = if v.valuation >= 0 {
        let scale = p.checked_pow(v.valuation as u32).ok_or_else(overflow)?;
        (lifted.checked_mul(scale).ok_or_else(overflow)?, 1i128)
    } else {
        (lifted, p.checked_pow((-v.valuation) as u32).ok_or_else(overflow)?)
    };
    let g = num.gcd(&den);
    if g > 1 {
        num /= g;
        den /= g;
    }
    if num.unsigned_abs() > bound.saturating_mul(den as u128) {
        return Err(Error::RecognitionFailure(format!(
            "|{num}/{den}| exceeds the bound {bound}: {}",
            describe(v)
        )));
    }
    Ok(RecognizedRational {
        numerator: num,
        denominator: den as u128,
        raw: v.clone(),
    })
}

/// nGn with its t-independent coefficients precomputed at one precision.
#[derive(Debug, Clone)]
pub struct PreparedGnn<'f> {
    ctx: PadicCtx<'f>,
    params: GnnParams,
    /// Coefficient of ω̄^s(t), with p^{E_s - e_min} and -1/(q-1) folded in.
    coeffs: Vec<u128>,
    e_min: i32,
    bound: u128,
}

impl<'f> PreparedGnn<'f> {
    pub fn new(ctx: PadicCtx<'f>, params: GnnParams) -> Result<Self> {
        let field = ctx.field();
        let p = field.p() as i128;
        for x in params.upper.iter().chain(&params.lower) {
            if x.denom() % p == 0 {
                return Err(Error::BadDenominator {
                    den: *x.denom() as i64,
                    p: field.p(),
                });
            }
        }
        let zm = ctx.zmod();
        let n = (field.q() - 1) as i128;
        let r = field.r();
        let len = params.n() as i128;
        let mut memo: HashMap<Rational, u128> = HashMap::new();
        let mut gamma = |x: Rational| -> u128 {
            *memo
                .entry(x)
                .or_insert_with(|| ctx.gamma_p_rational(x).expect("p ∤ den checked above"))
        };

        let mut exps = Vec::with_capacity(n as usize);
        let mut units = Vec::with_capacity(n as usize);
        for s in 0..n {
            let mut e_total: i128 = 0;
            let mut num = 1u128;
            let mut den = 1u128;
            for (a, b) in params.upper.iter().zip(&params.lower) {
                for i in 0..r {
                    let pi = Rational::from_integer(p.pow(i));
                    let shift = Rational::new(s, n) * pi;
                    let a0 = frac(*a * pi);
                    let b0 = frac(-*b * pi);
                    e_total += -floor(a0 - shift) - floor(b0 + shift);
                    num = zm.mul(num, gamma(frac((*a - Rational::new(s, n)) * pi)));
                    num = zm.mul(num, gamma(frac((-*b + Rational::new(s, n)) * pi)));
                    den = zm.mul(den, zm.mul(gamma(a0), gamma(b0)));
                }
            }
            let mut unit = zm.mul(num, zm.inv(den).expect("Γ_p values are units"));
            // (-1)^{sn} (-1)^{E}
            if (s * len + e_total).rem_euclid(2) == 1 {
                unit = zm.neg(unit);
            }
            exps.push(e_total as i32);
            units.push(unit);
        }
        let e_min = *exps.iter().min().expect("q - 1 >= 2 terms");
        let minus_inv_n = zm.neg(zm.inv(n as u128).expect("q - 1 is a unit"));
        let pp = field.p() as u128;
        let coeffs = exps
            .iter()
            .zip(units)
            .map(|(&e, u)| {
                let shift = (e - e_min) as u32;
                let scale = if shift >= ctx.precision() {
                    0
                } else {
                    pp.pow(shift)
                };
                zm.mul(zm.mul(u, scale), minus_inv_n)
            })
            .collect();
        let bound = 4 * field.q() as u128;
        Ok(PreparedGnn {
            ctx,
            params,
            coeffs,
            e_min,
            bound,
        })
    }

    pub fn ctx(&self) -> &PadicCtx<'f> {
        &self.ctx
    }

    pub fn params(&self) -> &GnnParams {
        &self.params
    }

    pub fn precision(&self) -> u32 {
        self.ctx.precision()
    }

    /// Least p-exponent among the summands.
    pub fn valuation_floor(&self) -> i32 {
        self.e_min
    }

    /// Overrides the recognition bound (default 4q).
    pub fn with_bound(mut self, bound: u128) -> Self {
        self.bound = bound;
        self
    }

    /// The unrecognized value p^{e_min} * mantissa.
    pub fn eval_raw(&self, t: FqElem) -> Result<QpValue> {
        let k = self.ctx.field().dlog(t).map_err(|_| Error::DivZero)? as usize;
        let table = self.ctx.teich_table();
        let n = table.len();
        let mut acc = super::ZqElem::zero(self.ctx.r());
        let ring = &self.ctx.ring;
        for (s, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            // ω̄^s(t) = ω(g)^{-s k}
            let idx = (n - (s * k) % n) % n;
            ring.add_scaled(&mut acc, &table[idx], c);
        }
        Ok(QpValue {
            mantissa: acc,
            valuation: self.e_min,
        })
    }

    pub fn eval(&self, t: FqElem) -> Result<RecognizedRational> {
        let raw = self.eval_raw(t)?;
        rational_recognize(&self.ctx, &raw, self.bound)
    }
}

/// Evaluates at the working precision and, when enabled, again at
/// M + 4; a value that changes between the two is an error.
#[derive(Debug, Clone)]
pub struct GnnEvaluator<'f> {
    main: PreparedGnn<'f>,
    check: Option<PreparedGnn<'f>>,
}

impl<'f> GnnEvaluator<'f> {
    pub fn new(
        field: &'f FieldCtx,
        params: GnnParams,
        precision: Precision,
        stability_check: bool,
    ) -> Result<Self> {
        let ctx = PadicCtx::new(field, precision)?;
        let m = ctx.precision();
        let main = PreparedGnn::new(ctx, params.clone())?;
        let check = if stability_check {
            let hi = PadicCtx::new(field, Precision::Fixed(m + STABILITY_EXTRA))?;
            Some(PreparedGnn::new(hi, params)?)
        } else {
            None
        };
        Ok(GnnEvaluator { main, check })
    }

    pub fn main(&self) -> &PreparedGnn<'f> {
        &self.main
    }

    pub fn precision(&self) -> u32 {
        self.main.precision()
    }

    pub fn check_precision(&self) -> Option<u32> {
        self.check.as_ref().map(|c| c.precision())
    }

    pub fn eval(&self, t: FqElem) -> Result<RecognizedRational> {
        let v = self.main.eval(t)?;
        if let Some(check) = &self.check {
            let unstable = Error::PrecisionUnstable {
                low: self.main.precision(),
                high: check.precision(),
            };
            match check.eval(t) {
                Ok(w) if w.same_value(&v) => {}
                _ => return Err(unstable),
            }
        }
        Ok(v)
    }
}
