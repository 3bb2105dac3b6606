//! Morita's Γ_p on integers in [0, p^M), reduced mod p^M.
//!
//! A flat prefix-product table over [0, p^M) is far too large at working
//! precision, so partial products are tabulated per digit level instead.
//! For k >= 1 let Q_k(x) = prod_{1 <= j < p^k, p ∤ j} (x + j). The product
//! over the block [m p^k, (m+1) p^k) is Q_k(m p^k) = R_k(m), where
//! R_k(y) = Q_k(p^k y). The coefficient of y^i in R_k is divisible by
//! p^{k i}, so R_k only needs degree < ceil(M / k) mod p^M, and
//! R_{k+1}(z) = prod_{m<p} R_k(p z + m).

use super::ring::ZMod;

#[derive(Debug, Clone)]
pub(crate) struct GammaTables {
    p: u128,
    m: u32,
    zm: ZMod,
    /// levels[k-1] = coefficients of R_k, low degree first.
    levels: Vec<Vec<u128>>,
}

fn trunc_len(m: u32, k: u32) -> usize {
    m.div_ceil(k) as usize
}

impl GammaTables {
    pub(crate) fn new(p: u64, m: u32, zm: ZMod) -> Self {
        let pp = p as u128;
        let mut levels: Vec<Vec<u128>> = Vec::new();
        if m >= 2 {
            // R_1(y) = prod_{j=1}^{p-1} (p y + j)
            let len1 = trunc_len(m, 1);
            let mut r1 = vec![0u128; len1];
            r1[0] = 1;
            for j in 1..pp {
                for i in (0..len1).rev() {
                    let lower = if i > 0 { zm.mul(pp, r1[i - 1]) } else { 0 };
                    r1[i] = zm.add(zm.mul(j, r1[i]), lower);
                }
            }
            levels.push(r1);
            for k in 1..m - 1 {
                let len = trunc_len(m, k + 1);
                let prev = &levels[k as usize - 1];
                let mut acc = vec![0u128; len];
                acc[0] = 1;
                for shift in 0..pp {
                    let comp = compose_linear(&zm, prev, pp, shift, len);
                    acc = mul_trunc(&zm, &acc, &comp, len);
                }
                levels.push(acc);
            }
        }
        GammaTables {
            p: pp,
            m,
            zm,
            levels,
        }
    }

    fn eval_level(&self, k: u32, y: u128) -> u128 {
        let coeffs = &self.levels[k as usize - 1];
        coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| self.zm.add(self.zm.mul(acc, y), c))
    }

    /// prod_{0 < j < n, p ∤ j} j mod p^M.
    fn restricted_factorial(&self, n: u128) -> u128 {
        let zm = &self.zm;
        let pm = zm.modulus();
        debug_assert!(n < pm);
        let mut digits = Vec::with_capacity(self.m as usize);
        let mut rest = n;
        for _ in 0..self.m {
            digits.push(rest % self.p);
            rest /= self.p;
        }
        let mut acc = 1u128 % pm;
        let mut base_quot = 0u128; // base / p^k at the current level
        for k in (1..self.m).rev() {
            let d = digits[k as usize];
            for m in 0..d {
                acc = zm.mul(acc, self.eval_level(k, base_quot + m));
            }
            base_quot = (base_quot + d) * self.p;
        }
        // base_quot is now the integer base of the last partial block
        for t in 1..digits[0] {
            acc = zm.mul(acc, base_quot + t);
        }
        acc
    }

    /// Γ_p(n) for an integer representative n in [0, p^M).
    pub(crate) fn gamma_int(&self, n: u128) -> u128 {
        if n == 0 {
            return 1 % self.zm.modulus();
        }
        let v = self.restricted_factorial(n);
        if n % 2 == 1 {
            self.zm.neg(v)
        } else {
            v
        }
    }
}

/// f(p z + s) truncated to `len` coefficients.
fn compose_linear(zm: &ZMod, f: &[u128], p: u128, s: u128, len: usize) -> Vec<u128> {
    let mut out = vec![0u128; len];
    for &c in f.iter().rev() {
        // out = out * (p z + s) + c
        for i in (0..len).rev() {
            let lower = if i > 0 { zm.mul(p, out[i - 1]) } else { 0 };
            out[i] = zm.add(zm.mul(s, out[i]), lower);
        }
        out[0] = zm.add(out[0], c);
    }
    out
}

fn mul_trunc(zm: &ZMod, a: &[u128], b: &[u128], len: usize) -> Vec<u128> {
    let mut out = vec![0u128; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = zm.add(out[i + j], zm.mul(x, y));
        }
    }
    out
}
