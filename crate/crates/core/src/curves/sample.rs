//! Deterministic constructive samplers for each verified family.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{CurveParams, EdwardsParams, EllipticParams};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Mt1,
    Mt6,
    Cor14,
    Cor15,
    Cor16,
    Cor2,
    /// Elliptic curves E_{h,g} for the trace formula.
    Bs1,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Mt1,
        Family::Mt6,
        Family::Cor14,
        Family::Cor15,
        Family::Cor16,
        Family::Cor2,
        Family::Bs1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Mt1 => "mt1",
            Family::Mt6 => "mt6",
            Family::Cor14 => "cor_1_4",
            Family::Cor15 => "cor_1_5",
            Family::Cor16 => "cor_1_6",
            Family::Cor2 => "cor_2",
            Family::Bs1 => "bs1",
        }
    }

    fn salt(&self) -> u64 {
        *self as u64 + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::BadParams(format!("unknown family `{s}`")))
    }
}

/// One sampled instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sample {
    Curve(CurveParams),
    Edwards(EdwardsParams),
    CurveWithElliptic(CurveParams, EllipticParams),
    Elliptic(EllipticParams),
}

impl Sample {
    pub fn describe(&self, field: &FieldCtx) -> Vec<(String, String)> {
        match self {
            Sample::Curve(cp) => cp.describe(field),
            Sample::Edwards(ep) => ep.describe(field),
            Sample::CurveWithElliptic(cp, ep) => {
                let mut v = cp.describe(field);
                v.extend(ep.describe(field));
                v
            }
            Sample::Elliptic(ep) => ep.describe(field),
        }
    }
}

fn unit(field: &FieldCtx, rng: &mut ChaCha8Rng) -> FqElem {
    let idx = rng.gen_range(1..field.q()) as u32;
    field.elem(idx).expect("index below q")
}

fn div(field: &FieldCtx, x: FqElem, y: FqElem) -> FqElem {
    field.div(x, y).expect("sampled denominators are units")
}

/// c = 2s, b = s²/a, so c² = 4ab.
fn mt6_tuple(field: &FieldCtx, rng: &mut ChaCha8Rng, ab_eq_de: bool) -> CurveParams {
    let (a, s) = (unit(field, rng), unit(field, rng));
    let c = field.mul(field.from_int(2), s);
    let b = div(field, field.square(s), a);
    let d = unit(field, rng);
    let e = if ab_eq_de {
        div(field, field.mul(a, b), d)
    } else {
        unit(field, rng)
    };
    let f = div(field, field.mul(c, e), a);
    CurveParams { a, b, c, d, e, f }
}

fn unsatisfiable(family: Family, field: &FieldCtx, reason: &str) -> Error {
    Error::Unsatisfiable {
        family: family.name().to_string(),
        q: field.q(),
        reason: reason.to_string(),
    }
}

/// `count` deterministic tuples meeting the family's preconditions.
/// Algebraic constraints are solved for; only unit and square-class
/// conditions are met by rejection.
pub fn sample_params(field: &FieldCtx, family: Family, seed: u64, count: usize) -> Result<Vec<Sample>> {
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (family.salt() << 32) ^ q,
    );
    match family {
        Family::Cor16 if q % 4 != 1 => {
            return Err(unsatisfiable(family, field, "needs q = 1 mod 4"));
        }
        Family::Cor15 if q <= 3 => {
            return Err(unsatisfiable(
                family,
                field,
                "needs a nonzero square Δ ≠ α², impossible with one nonzero square",
            ));
        }
        _ => {}
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = match family {
            Family::Mt1 => {
                let (a, b, c, d, e) = (
                    unit(field, &mut rng),
                    unit(field, &mut rng),
                    unit(field, &mut rng),
                    unit(field, &mut rng),
                    unit(field, &mut rng),
                );
                let f = div(field, field.mul(c, e), a);
                let cp = CurveParams { a, b, c, d, e, f };
                if cp.disc(field).is_zero() {
                    continue;
                }
                Sample::Curve(cp)
            }
            Family::Mt6 => Sample::Curve(mt6_tuple(field, &mut rng, false)),
            Family::Cor16 => Sample::Curve(mt6_tuple(field, &mut rng, true)),
            Family::Cor14 => {
                let (a, c, d) = (unit(field, &mut rng), unit(field, &mut rng), unit(field, &mut rng));
                // b = -c²/(4a), e = ab/d
                let b = field.neg(div(field, field.square(c), field.mul(field.from_int(4), a)));
                let e = div(field, field.mul(a, b), d);
                let f = div(field, field.mul(c, e), a);
                Sample::Curve(CurveParams { a, b, c, d, e, f })
            }
            Family::Cor15 => {
                let ell = unit(field, &mut rng);
                if field.quad_char(ell) != -1 {
                    continue;
                }
                let alpha = unit(field, &mut rng);
                // Δ = w² a nonzero square different from α², β = (Δ - α²)/4
                let w = unit(field, &mut rng);
                let (delta, alpha2) = (field.square(w), field.square(alpha));
                if delta == alpha2 {
                    continue;
                }
                let beta = div(field, field.sub(delta, alpha2), field.from_int(4));
                let k = unit(field, &mut rng);
                Sample::Edwards(EdwardsParams::new(field, alpha, beta, k, ell)?)
            }
            Family::Cor2 => {
                let cp = mt6_tuple(field, &mut rng, false);
                let h = unit(field, &mut rng);
                // g = h²de/c²
                let g = div(
                    field,
                    field.mul(field.square(h), field.mul(cp.d, cp.e)),
                    field.square(cp.c),
                );
                Sample::CurveWithElliptic(cp, EllipticParams { h, g })
            }
            Family::Bs1 => Sample::Elliptic(EllipticParams {
                h: unit(field, &mut rng),
                g: unit(field, &mut rng),
            }),
        };
        out.push(s);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mt1_tuples_satisfy_constraints() {
        let f = FieldCtx::new(13, 1).unwrap();
        let v = sample_params(&f, Family::Mt1, 1, 5).unwrap();
        assert_eq!(v.len(), 5);
        for s in v {
            let Sample::Curve(cp) = s else { panic!() };
            assert!(cp.af_eq_ce(&f));
            assert!(!cp.disc(&f).is_zero());
        }
    }

    #[test]
    fn cor14_tuples_at_q7() {
        let f = FieldCtx::new(7, 1).unwrap();
        for s in sample_params(&f, Family::Cor14, 1, 5).unwrap() {
            let Sample::Curve(cp) = s else { panic!() };
            let four_ab = f.mul(f.from_int(4), f.mul(cp.a, cp.b));
            assert_eq!(f.square(cp.c), f.neg(four_ab));
            assert!(cp.ab_eq_de(&f));
        }
    }

    #[test]
    fn cor16_unsatisfiable_at_q7() {
        let f = FieldCtx::new(7, 1).unwrap();
        assert!(matches!(
            sample_params(&f, Family::Cor16, 1, 5),
            Err(Error::Unsatisfiable { .. })
        ));
    }

    #[test]
    fn deterministic() {
        let f = FieldCtx::new(3, 2).unwrap();
        for fam in Family::ALL {
            assert_eq!(
                sample_params(&f, fam, 7, 10).ok(),
                sample_params(&f, fam, 7, 10).ok()
            );
        }
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
    }
}
