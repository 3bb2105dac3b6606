//! Point counts on ay² + bx² + cxy = d + ex²y² + fx³y: brute force, the
//! character-sum / p-adic formulas, elliptic traces, and samplers.

mod formulas;
mod sample;

pub use formulas::{
    bs1_trace_check, bs1_trace_values, cor2_check, cor2_rhs, cor_1_4_count, cor_1_5_count,
    cor_1_6_count, g_value, i2_prime, mt1_count, mt6_count, FormulaCount, GPath, Term,
};
pub use sample::{sample_params, Family, Sample};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// The six coefficients, all nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CurveParams {
    pub a: FqElem,
    pub b: FqElem,
    pub c: FqElem,
    pub d: FqElem,
    pub e: FqElem,
    pub f: FqElem,
}

impl CurveParams {
    pub fn new(coeffs: [FqElem; 6]) -> Result<Self> {
        if coeffs.iter().any(|x| x.is_zero()) {
            return Err(Error::BadParams("all six coefficients must be nonzero".into()));
        }
        let [a, b, c, d, e, f] = coeffs;
        Ok(CurveParams { a, b, c, d, e, f })
    }

    /// Integer coefficients reduced into the prime field.
    pub fn from_ints(field: &FieldCtx, coeffs: [i64; 6]) -> Result<Self> {
        Self::new(coeffs.map(|v| field.from_int(v)))
    }

    pub fn coeffs(&self) -> [FqElem; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn af_eq_ce(&self, field: &FieldCtx) -> bool {
        field.mul(self.a, self.f) == field.mul(self.c, self.e)
    }

    /// c² - 4ab.
    pub fn disc(&self, field: &FieldCtx) -> FqElem {
        let four_ab = field.mul(field.from_int(4), field.mul(self.a, self.b));
        field.sub(field.square(self.c), four_ab)
    }

    /// [ab = de].
    pub fn ab_eq_de(&self, field: &FieldCtx) -> bool {
        field.mul(self.a, self.b) == field.mul(self.d, self.e)
    }

    pub fn describe(&self, field: &FieldCtx) -> Vec<(String, String)> {
        ["a", "b", "c", "d", "e", "f"]
            .iter()
            .zip(self.coeffs())
            .map(|(n, v)| (n.to_string(), field.format(v)))
            .collect()
    }
}

/// y² - βx² + αxy = k²(1 + ℓ(y² + αxy)x²) with ℓ and Δ/ℓ non-squares,
/// Δ = α² + 4β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdwardsParams {
    pub alpha: FqElem,
    pub beta: FqElem,
    pub k: FqElem,
    pub ell: FqElem,
}

impl EdwardsParams {
    pub fn new(field: &FieldCtx, alpha: FqElem, beta: FqElem, k: FqElem, ell: FqElem) -> Result<Self> {
        let ep = EdwardsParams { alpha, beta, k, ell };
        if [alpha, beta, k, ell].iter().any(|x| x.is_zero()) {
            return Err(Error::BadParams("α, β, k, ℓ must be nonzero".into()));
        }
        let delta = ep.delta(field);
        if delta.is_zero() {
            return Err(Error::PreconditionViolated("Δ = α² + 4β must be nonzero".into()));
        }
        if field.quad_char(ell) != -1 || field.quad_char(field.div(delta, ell)?) != -1 {
            return Err(Error::PreconditionViolated("ℓ and Δ/ℓ must be non-squares".into()));
        }
        Ok(ep)
    }

    /// α² + 4β.
    pub fn delta(&self, field: &FieldCtx) -> FqElem {
        field.add(
            field.square(self.alpha),
            field.mul(field.from_int(4), self.beta),
        )
    }

    /// a = 1, b = -β, c = α, d = k², e = k²ℓ, f = k²ℓα.
    pub fn to_curve(&self, field: &FieldCtx) -> CurveParams {
        let k2 = field.square(self.k);
        let e = field.mul(k2, self.ell);
        CurveParams {
            a: field.one(),
            b: field.neg(self.beta),
            c: self.alpha,
            d: k2,
            e,
            f: field.mul(e, self.alpha),
        }
    }

    pub fn describe(&self, field: &FieldCtx) -> Vec<(String, String)> {
        [("alpha", self.alpha), ("beta", self.beta), ("k", self.k), ("ell", self.ell)]
            .iter()
            .map(|(n, v)| (n.to_string(), field.format(*v)))
            .collect()
    }
}

/// E_{h,g}: y² = x³ + hx² + gx with h, g nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EllipticParams {
    pub h: FqElem,
    pub g: FqElem,
}

impl EllipticParams {
    pub fn new(h: FqElem, g: FqElem) -> Result<Self> {
        if h.is_zero() || g.is_zero() {
            return Err(Error::PreconditionViolated("E_{h,g} needs h ≠ 0 and g ≠ 0".into()));
        }
        Ok(EllipticParams { h, g })
    }

    pub fn describe(&self, field: &FieldCtx) -> Vec<(String, String)> {
        vec![
            ("h".to_string(), field.format(self.h)),
            ("g".to_string(), field.format(self.g)),
        ]
    }
}

/// Number of affine (x, y) in F_q² on the curve.
pub fn brute_count(field: &FieldCtx, cp: &CurveParams) -> u64 {
    let xs: Vec<FqElem> = field.element_list();
    let x2: Vec<FqElem> = xs.iter().map(|&x| field.square(x)).collect();
    let x3: Vec<FqElem> = xs.iter().zip(&x2).map(|(&x, &s)| field.mul(x, s)).collect();
    let bx2: Vec<FqElem> = x2.iter().map(|&s| field.mul(cp.b, s)).collect();
    let mut count = 0;
    for &y in &xs {
        let y2 = field.square(y);
        // ay² - d + x(cy) + x²(b - ey²) - x³(fy), grouped per y
        let c0 = field.sub(field.mul(cp.a, y2), cp.d);
        let c1 = field.mul(cp.c, y);
        let c2 = field.neg(field.mul(cp.e, y2));
        let c3 = field.neg(field.mul(cp.f, y));
        for i in 0..xs.len() {
            let mut v = field.add(c0, field.mul(c1, xs[i]));
            v = field.add(v, bx2[i]);
            v = field.add(v, field.mul(c2, x2[i]));
            v = field.add(v, field.mul(c3, x3[i]));
            if v.is_zero() {
                count += 1;
            }
        }
    }
    count
}

/// #{(x, y) : y² = x³ + hx² + gx}, without the point at infinity.
pub fn ec_affine_count(field: &FieldCtx, ep: &EllipticParams) -> Result<u64> {
    EllipticParams::new(ep.h, ep.g)?;
    let total: i64 = field
        .elements()
        .map(|x| {
            let x2 = field.square(x);
            let rhs = field.add(
                field.mul(x2, field.add(x, ep.h)),
                field.mul(ep.g, x),
            );
            1 + field.quad_char(rhs)
        })
        .sum();
    Ok(total as u64)
}

/// a_q(E) = q + 1 - #E(F_q), where #E includes the point at infinity.
pub fn trace_frobenius(field: &FieldCtx, ep: &EllipticParams) -> Result<i64> {
    let affine = ec_affine_count(field, ep)? as i64;
    Ok(field.q() as i64 + 1 - (affine + 1))
}
