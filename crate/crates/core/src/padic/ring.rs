//! Residues mod p^M (up to 126 bits) and the unramified ring Z_q / p^M.

use serde::Serialize;

/// Largest supported bit length of p^M.
pub(crate) const MODULUS_BITS: u32 = 126;

/// Arithmetic in Z / m for m < 2^126.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZMod {
    m: u128,
}

impl ZMod {
    pub fn new(m: u128) -> Self {
        assert!(m >= 2 && m < (1u128 << MODULUS_BITS));
        ZMod { m }
    }

    pub fn modulus(&self) -> u128 {
        self.m
    }

    pub fn reduce_i128(&self, x: i128) -> u128 {
        x.rem_euclid(self.m as i128) as u128
    }

    pub fn add(&self, a: u128, b: u128) -> u128 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }

    pub fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }

    pub fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.m - a
        }
    }

    pub fn mul(&self, a: u128, b: u128) -> u128 {
        if self.m <= u64::MAX as u128 {
            return ((a % self.m) * (b % self.m)) % self.m;
        }
        // shift-and-add; operands stay below 2^127
        let (mut a, mut b) = (a % self.m, b % self.m);
        let mut acc = 0u128;
        while b > 0 {
            if b & 1 == 1 {
                acc = self.add(acc, a);
            }
            a = self.add(a, a);
            b >>= 1;
        }
        acc
    }

    pub fn pow(&self, mut base: u128, mut e: u128) -> u128 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a unit; `None` when gcd(a, m) > 1.
    pub fn inv(&self, a: u128) -> Option<u128> {
        let (mut old_r, mut r) = ((a % self.m) as i128, self.m as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let qt = old_r / r;
            (old_r, r) = (r, old_r - qt * r);
            (old_s, s) = (s, old_s - qt * s);
        }
        (old_r == 1).then(|| self.reduce_i128(old_s))
    }

    /// Representative in (-m/2, m/2].
    pub fn balanced(&self, a: u128) -> i128 {
        if a > self.m / 2 {
            a as i128 - self.m as i128
        } else {
            a as i128
        }
    }
}

/// An element of Z_q / p^M: coordinates in the power basis of the lifted
/// modulus, each in [0, p^M).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ZqElem {
    coeffs: Vec<u128>,
}

impl ZqElem {
    pub(crate) fn from_vec(coeffs: Vec<u128>) -> Self {
        ZqElem { coeffs }
    }

    pub fn zero(r: u32) -> Self {
        ZqElem {
            coeffs: vec![0; r as usize],
        }
    }

    pub fn constant(c: u128, r: u32) -> Self {
        let mut z = Self::zero(r);
        z.coeffs[0] = c;
        z
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> u128 {
        self.coeffs[0]
    }

    /// No basis powers >= 1 survive.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Z_q / p^M given by a monic lifted modulus of degree r.
#[derive(Debug, Clone)]
pub(crate) struct ZqRing {
    pub(crate) zm: ZMod,
    /// Lifted modulus coefficients, low degree first, without the leading 1.
    pub(crate) modulus: Vec<u128>,
}

impl ZqRing {
    pub(crate) fn r(&self) -> usize {
        self.modulus.len()
    }

    pub(crate) fn add(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        ZqElem::from_vec(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| self.zm.add(a, b))
                .collect(),
        )
    }

    pub(crate) fn sub(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        ZqElem::from_vec(
            x.coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| self.zm.sub(a, b))
                .collect(),
        )
    }

    pub(crate) fn scale(&self, x: &ZqElem, c: u128) -> ZqElem {
        ZqElem::from_vec(x.coeffs.iter().map(|&a| self.zm.mul(a, c)).collect())
    }

    /// acc += c * x
    pub(crate) fn add_scaled(&self, acc: &mut ZqElem, x: &ZqElem, c: u128) {
        for (a, &b) in acc.coeffs.iter_mut().zip(&x.coeffs) {
            *a = self.zm.add(*a, self.zm.mul(b, c));
        }
    }

    pub(crate) fn mul(&self, x: &ZqElem, y: &ZqElem) -> ZqElem {
        let r = self.r();
        if r == 1 {
            return ZqElem::from_vec(vec![self.zm.mul(x.coeffs[0], y.coeffs[0])]);
        }
        let mut prod = vec![0u128; 2 * r - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                prod[i + j] = self.zm.add(prod[i + j], self.zm.mul(a, b));
            }
        }
        // t^r = -sum modulus[i] t^i
        for k in (r..2 * r - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                prod[k - r + i] = self.zm.sub(prod[k - r + i], self.zm.mul(c, m));
            }
        }
        prod.truncate(r);
        ZqElem::from_vec(prod)
    }

    pub(crate) fn pow(&self, x: &ZqElem, mut e: u128) -> ZqElem {
        let mut acc = ZqElem::constant(1, self.r() as u32);
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let z = ZMod::new(125);
        assert_eq!(z.mul(57, 57), 124);
        assert_eq!(z.pow(57, 4), 1);
        assert_eq!(z.inv(2), Some(63));
        assert_eq!(z.inv(5), None);
        assert_eq!(z.balanced(123), -2);
        assert_eq!(z.balanced(62), 62);
        assert_eq!(z.reduce_i128(-1), 124);
    }

    #[test]
    fn wide_modulus_matches_narrow_reasoning() {
        // 3^78 > 2^64 exercises the shift-and-add path
        let m = 3u128.pow(78);
        let z = ZMod::new(m);
        let a = m - 1;
        assert_eq!(z.mul(a, a), 1);
        let x = 123_456_789_012_345_678_901u128;
        assert_eq!(z.mul(z.inv(x).unwrap(), x), 1);
    }
}
