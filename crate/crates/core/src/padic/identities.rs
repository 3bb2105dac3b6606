//! Floor-function lemmas, Γ_p product formulas and the unit part of the
//! Gross–Koblitz evaluation of g(φ)².

use serde::Serialize;

use super::{floor, frac, PadicCtx, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PadicIdentity {
    /// ⌊jp^i/(q-1)⌋ + ⌊-djp^i/(q-1)⌋ = sum_{h=1}^{d-1} ⌊⟨hp^i/d⟩ - jp^i/(q-1)⌋ - 1,
    /// for d >= 2, p ∤ d, 1 <= j <= q-2.
    FloorLemmaD { d: u64, j: u64, i: u32 },
    /// ⌊ljp^i/(q-1)⌋ = sum_{h=0}^{l-1} ⌊⟨-hp^i/l⟩ + jp^i/(q-1)⌋, p ∤ l, 0 <= j <= q-2.
    FloorLemmaL { l: u64, j: u64, i: u32 },
    /// ω(t^{-tj}) prod_i Γ_p(⟨-tp^ij/(q-1)⟩) prod_{h=1}^{t-1} Γ_p(⟨hp^i/t⟩)
    ///   = prod_i prod_{h=0}^{t-1} Γ_p(⟨p^i(1+h)/t - p^ij/(q-1)⟩).
    GammaProductNeg { t: u64, j: u64 },
    /// ω(t^{tj}) prod_i Γ_p(⟨tp^ij/(q-1)⟩) prod_{h=1}^{t-1} Γ_p(⟨hp^i/t⟩)
    ///   = prod_i prod_{h=0}^{t-1} Γ_p(⟨p^ih/t + p^ij/(q-1)⟩).
    GammaProductPos { t: u64, j: u64 },
    /// q φ(-1) = (-p)^r prod_i Γ_p(⟨p^i/2⟩)², checked on units:
    /// φ(-1) = (-1)^r prod_i Γ_p(⟨p^i/2⟩)² mod p^M.
    GrossKoblitzUnit,
}

impl PadicIdentity {
    pub fn name(&self) -> &'static str {
        match self {
            PadicIdentity::FloorLemmaD { .. } => "floor_lemma_d",
            PadicIdentity::FloorLemmaL { .. } => "floor_lemma_l",
            PadicIdentity::GammaProductNeg { .. } => "gamma_product_neg",
            PadicIdentity::GammaProductPos { .. } => "gamma_product_pos",
            PadicIdentity::GrossKoblitzUnit => "gross_koblitz_unit",
        }
    }
}

impl PadicCtx<'_> {
    /// Whether the identity holds: exactly for floors, mod p^M otherwise.
    pub fn padic_identity_holds(&self, id: PadicIdentity) -> Result<bool> {
        let f = self.field();
        let p = f.p() as i128;
        let q = f.q() as i128;
        let n = q - 1;
        let r = f.r();
        let zm = self.zmod();
        let bad = |msg: String| Err(Error::BadParams(msg));
        let coprime = |x: u64| x as i128 % p != 0;
        match id {
            PadicIdentity::FloorLemmaD { d, j, i } => {
                if d < 2 || !coprime(d) || j < 1 || j as i128 > q - 2 || i >= r {
                    return bad(format!("floor_lemma_d out of range: d={d}, j={j}, i={i}"));
                }
                let (d, x) = (d as i128, Rational::new(j as i128 * p.pow(i), n));
                let lhs = floor(x) + floor(-x * d);
                let rhs: i128 = (1..d)
                    .map(|h| floor(frac(Rational::new(h * p.pow(i), d)) - x))
                    .sum::<i128>()
                    - 1;
                Ok(lhs == rhs)
            }
            PadicIdentity::FloorLemmaL { l, j, i } => {
                if l < 1 || !coprime(l) || j as i128 > q - 2 || i >= r {
                    return bad(format!("floor_lemma_l out of range: l={l}, j={j}, i={i}"));
                }
                let (l, x) = (l as i128, Rational::new(j as i128 * p.pow(i), n));
                let lhs = floor(x * l);
                let rhs: i128 = (0..l)
                    .map(|h| floor(frac(Rational::new(-h * p.pow(i), l)) + x))
                    .sum();
                Ok(lhs == rhs)
            }
            PadicIdentity::GammaProductNeg { t, j } | PadicIdentity::GammaProductPos { t, j } => {
                if t < 1 || !coprime(t) || j as i128 > q - 2 {
                    return bad(format!("gamma product out of range: t={t}, j={j}"));
                }
                let neg = matches!(id, PadicIdentity::GammaProductNeg { .. });
                let sign: i128 = if neg { -1 } else { 1 };
                let (t, j) = (t as i128, j as i128);
                let g = |x: Rational| self.gamma_p_rational(frac(x)).expect("p ∤ den");
                // ω(t^{±tj}); t lies in F_p
                let base = f.from_int(t as i64);
                let w = self.teichmuller_pow(base, (sign * t * j) as i64)?;
                let mut lhs = 1u128;
                let mut rhs = 1u128;
                for i in 0..r {
                    let pi = p.pow(i);
                    let x = Rational::new(pi * j, n);
                    lhs = zm.mul(lhs, g(x * (sign * t)));
                    for h in 1..t {
                        lhs = zm.mul(lhs, g(Rational::new(h * pi, t)));
                    }
                    for h in 0..t {
                        let arg = if neg {
                            Rational::new(pi * (1 + h), t) - x
                        } else {
                            Rational::new(pi * h, t) + x
                        };
                        rhs = zm.mul(rhs, g(arg));
                    }
                }
                let lhs = self.scale(&w, lhs);
                Ok(lhs == self.constant(rhs as i128))
            }
            PadicIdentity::GrossKoblitzUnit => {
                let half = self.gamma_p(1, 2)?;
                let mut prod = 1u128;
                for _ in 0..r {
                    prod = zm.mul(prod, zm.mul(half, half));
                }
                if r % 2 == 1 {
                    prod = zm.neg(prod);
                }
                let phi_minus_one = f.quad_char(f.from_int(-1)) as i128;
                Ok(prod == zm.reduce_i128(phi_minus_one))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use crate::padic::Precision;

    #[test]
    fn floor_lemma_d_q13() {
        let f = FieldCtx::new(13, 1).unwrap();
        let ctx = PadicCtx::new(&f, Precision::Fixed(4)).unwrap();
        for j in 1..=11 {
            assert!(ctx
                .padic_identity_holds(PadicIdentity::FloorLemmaD { d: 4, j, i: 0 })
                .unwrap());
        }
    }

    #[test]
    fn floor_lemma_l_q9() {
        let f = FieldCtx::new(3, 2).unwrap();
        let ctx = PadicCtx::new(&f, Precision::Fixed(4)).unwrap();
        for j in 0..=7 {
            for i in 0..2 {
                assert!(ctx
                    .padic_identity_holds(PadicIdentity::FloorLemmaL { l: 2, j, i })
                    .unwrap());
            }
        }
    }

    #[test]
    fn gross_koblitz_unit_q5() {
        let f = FieldCtx::new(5, 1).unwrap();
        let ctx = PadicCtx::new(&f, Precision::Fixed(8)).unwrap();
        assert!(ctx.padic_identity_holds(PadicIdentity::GrossKoblitzUnit).unwrap());
    }

    #[test]
    fn gamma_products_q9() {
        let f = FieldCtx::new(3, 2).unwrap();
        let ctx = PadicCtx::new(&f, Precision::Auto).unwrap();
        for t in [2, 4] {
            for j in 0..8 {
                assert!(ctx.padic_identity_holds(PadicIdentity::GammaProductNeg { t, j }).unwrap());
                assert!(ctx.padic_identity_holds(PadicIdentity::GammaProductPos { t, j }).unwrap());
            }
        }
    }

    #[test]
    fn preconditions() {
        let f = FieldCtx::new(5, 1).unwrap();
        let ctx = PadicCtx::new(&f, Precision::Fixed(4)).unwrap();
        assert!(ctx
            .padic_identity_holds(PadicIdentity::FloorLemmaD { d: 5, j: 1, i: 0 })
            .is_err());
        assert!(ctx
            .padic_identity_holds(PadicIdentity::GammaProductNeg { t: 10, j: 1 })
            .is_err());
    }
}
