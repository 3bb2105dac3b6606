//! The unramified ring Z_q truncated mod p^M: Morita's Γ_p, Teichmüller
//! lifts, McCarthy's nGn with rational recognition, and p-adic identity checks.

mod closed_form;
mod gamma;
mod identities;
mod ngn;
mod ring;

pub use closed_form::g_fast;
pub use identities::PadicIdentity;
pub use ngn::{rational_recognize, GnnEvaluator, GnnParams, PreparedGnn, RecognizedRational};
pub use ring::{ZMod, ZqElem};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use gamma::GammaTables;
use ring::{ZqRing, MODULUS_BITS};

/// Exact rationals for fractional parts and floors.
pub type Rational = Ratio<i128>;

/// Safety margin in the auto-precision rule p^M > MARGIN * q^2.
pub const SAFETY_MARGIN: f64 = 4.0e6;

/// Extra digits used by the stability re-check.
pub const STABILITY_EXTRA: u32 = 4;

/// Working precision request.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Precision {
    /// Smallest M with p^M > 4e6 q^2.
    #[default]
    Auto,
    /// Auto plus k extra digits.
    AutoPlus(u32),
    Fixed(u32),
}

/// Smallest M with p^M > 4e6 q^2.
pub fn auto_precision(p: u64, q: u64) -> u32 {
    let target = SAFETY_MARGIN * (q as f64) * (q as f64);
    let mut m = 1;
    let mut pm = p as f64;
    while pm <= target {
        m += 1;
        pm *= p as f64;
    }
    m
}

/// A value p^valuation * mantissa of Q_q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QpValue {
    pub mantissa: ZqElem,
    pub valuation: i32,
}

/// Z_q / p^M attached to a field, with Γ_p tables and the Teichmüller table
/// of the generator's powers built eagerly.
#[derive(Debug, Clone)]
pub struct PadicCtx<'f> {
    field: &'f FieldCtx,
    m: u32,
    ring: ZqRing,
    gamma: GammaTables,
    /// teich[k] = ω(g^k).
    teich: Vec<ZqElem>,
    below_safety: bool,
}

impl<'f> PadicCtx<'f> {
    pub fn new(field: &'f FieldCtx, precision: Precision) -> Result<Self> {
        let auto = auto_precision(field.p(), field.q());
        let m = match precision {
            Precision::Auto => auto,
            Precision::AutoPlus(k) => auto + k,
            Precision::Fixed(m) => m,
        };
        if m < 2 {
            return Err(Error::BadPrecision {
                m,
                reason: "at least 2 digits are required".into(),
            });
        }
        let pm = (field.p() as u128)
            .checked_pow(m)
            .filter(|&v| v < (1u128 << MODULUS_BITS))
            .ok_or(Error::PrecisionTooLarge { p: field.p(), m })?;
        let below_safety = m < auto;
        if below_safety {
            log::warn!(
                "precision {m} for q = {} is below the recognition safety bound {auto}",
                field.q()
            );
        }
        let zm = ZMod::new(pm);
        let ring = ZqRing {
            zm,
            modulus: field.modulus()[..field.r() as usize]
                .iter()
                .map(|&c| c as u128)
                .collect(),
        };
        // q - 1 = -1 mod p is a unit
        debug_assert!(zm.inv((field.q() - 1) as u128).is_some());
        let gamma = GammaTables::new(field.p(), m, zm);
        let mut ctx = PadicCtx {
            field,
            m,
            ring,
            gamma,
            teich: Vec::new(),
            below_safety,
        };
        let w = ctx.teichmuller(field.generator())?;
        let n = (field.q() - 1) as usize;
        let mut table = Vec::with_capacity(n);
        let mut cur = ctx.one();
        for _ in 0..n {
            table.push(cur.clone());
            cur = ctx.ring.mul(&cur, &w);
        }
        debug_assert_eq!(cur, ctx.one());
        ctx.teich = table;
        Ok(ctx)
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn precision(&self) -> u32 {
        self.m
    }

    /// p^M.
    pub fn modulus_pm(&self) -> u128 {
        self.ring.zm.modulus()
    }

    pub fn zmod(&self) -> ZMod {
        self.ring.zm
    }

    /// The lifted field modulus, monic, low degree first.
    pub fn lifted_modulus(&self) -> Vec<u128> {
        let mut v = self.ring.modulus.clone();
        v.push(1);
        v
    }

    pub fn is_below_safety_bound(&self) -> bool {
        self.below_safety
    }

    pub fn r(&self) -> u32 {
        self.field.r()
    }

    pub fn one(&self) -> ZqElem {
        ZqElem::constant(1, self.r())
    }

    pub fn constant(&self, c: i128) -> ZqElem {
        ZqElem::constant(self.ring.zm.reduce_i128(c), self.r())
    }

    pub fn add(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        self.ring.add(x, y)
    }

    pub fn sub(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        self.ring.sub(x, y)
    }

    pub fn mul(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        self.ring.mul(x, y)
    }

    pub fn scale(&self, x: &ZqElem, c: u128) -> ZqElem {
        self.ring.scale(x, c)
    }

    pub fn pow(&self, x: &ZqElem, e: u128) -> ZqElem {
        self.ring.pow(x, e)
    }

    /// Coordinates of x read as integers in [0, p).
    pub fn naive_lift(&self, x: FqElem) -> ZqElem {
        ZqElem::from_vec(self.field.coeffs(x).into_iter().map(|c| c as u128).collect())
    }

    /// Reduction mod p, coordinate-wise.
    pub fn reduce_to_field(&self, x: &ZqElem) -> Result<FqElem> {
        let p = self.field.p() as u128;
        let c: Vec<i64> = x.coeffs().iter().map(|&v| (v % p) as i64).collect();
        self.field.from_coeffs(&c)
    }

    /// ω(x): the fixed point of t -> t^q starting from the naive lift.
    pub fn teichmuller(&self, x: FqElem) -> Result<ZqElem> {
        if x.is_zero() {
            return Err(Error::TeichOfZero);
        }
        let q = self.field.q() as u128;
        let mut t = self.naive_lift(x);
        // each step gains at least one digit
        for _ in 0..=self.m + 1 {
            let next = self.ring.pow(&t, q);
            if next == t {
                return Ok(t);
            }
            t = next;
        }
        unreachable!("Teichmüller iteration did not stabilize")
    }

    /// ω(x)^k via the generator table; k may be negative.
    pub fn teichmuller_pow(&self, x: FqElem, k: i64) -> Result<ZqElem> {
        let d = self.field.dlog(x).map_err(|_| Error::TeichOfZero)? as i128;
        let n = self.teich.len() as i128;
        Ok(self.teich[(d * k as i128).rem_euclid(n) as usize].clone())
    }

    pub(crate) fn teich_table(&self) -> &[ZqElem] {
        &self.teich
    }

    /// Γ_p(n) for an integer n, taken mod p^M.
    pub fn gamma_p_int(&self, n: i128) -> u128 {
        self.gamma.gamma_int(self.ring.zm.reduce_i128(n))
    }

    /// Γ_p(num/den) via the integer lift of num/den mod p^M.
    pub fn gamma_p(&self, num: i128, den: i128) -> Result<u128> {
        let zm = &self.ring.zm;
        let p = self.field.p() as i128;
        if den == 0 || den % p == 0 {
            return Err(Error::BadDenominator {
                den: den as i64,
                p: self.field.p(),
            });
        }
        let inv = zm.inv(zm.reduce_i128(den)).expect("p ∤ den");
        Ok(self.gamma.gamma_int(zm.mul(zm.reduce_i128(num), inv)))
    }

    pub fn gamma_p_rational(&self, x: Rational) -> Result<u128> {
        self.gamma_p(*x.numer(), *x.denom())
    }
}

/// ⟨x⟩, the fractional part in [0, 1).
pub fn frac(x: Rational) -> Rational {
    x - x.floor()
}

/// ⌊x⌋ as an integer.
pub fn floor(x: Rational) -> i128 {
    x.floor().to_integer()
}
