use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Closed form of G(t) = 2G2[1/4, 3/4; 0, 1/2 | t]:
/// ±1 at t = 1 (+1 iff q = ±1 mod 8), φ(2)(φ(1+a) + φ(1-a)) when
/// (t-1)/t = a², and 0 when (t-1)/t is a non-square.
pub fn g_fast(field: &FieldCtx, t: FqElem) -> Result<i64> {
    if t.is_zero() {
        return Err(Error::DivZero);
    }
    if t == field.one() {
        return Ok(if matches!(field.q() % 8, 1 | 7) { 1 } else { -1 });
    }
    let ratio = field.div(field.sub(t, field.one()), t)?;
    Ok(match field.sqrt(ratio) {
        // a ≠ ±1 here, since a² = 1 would force t - 1 = t
        Some(a) => {
            let one = field.one();
            field.quad_char(field.from_int(2))
                * (field.quad_char(field.add(one, a)) + field.quad_char(field.sub(one, a)))
        }
        None => 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(g_fast(&f5, f5.one()).unwrap(), -1);
        let f7 = FieldCtx::new(7, 1).unwrap();
        assert_eq!(g_fast(&f7, f7.one()).unwrap(), 1);
        let f13 = FieldCtx::new(13, 1).unwrap();
        assert_eq!(g_fast(&f13, f13.from_int(2)).unwrap(), 0);
        assert_eq!(g_fast(&f13, f13.zero()), Err(Error::DivZero));
    }

    #[test]
    fn values_are_small() {
        let f = FieldCtx::new(3, 3).unwrap();
        for t in f.units() {
            assert!(g_fast(&f, t).unwrap().abs() <= 2);
        }
    }
}
