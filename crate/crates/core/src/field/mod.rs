//! Fully tabulated finite fields F_q, q = p^r with p odd.
//!
//! Elements are stored by their canonical index `sum coeffs[i] * p^i`, where
//! `coeffs` are the coordinates in the power basis of the defining modulus.
//! Multiplication goes through discrete-log tables built once at
//! construction; the context is immutable afterwards.

mod poly;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) use poly::prime_factors;

/// Default bound on q; brute-force counting is quadratic in q.
pub const DEFAULT_SIZE_CAP: u64 = 3000;

/// An element of F_q, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// Canonical index `sum coeffs[i] * p^i`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A finite field of odd characteristic together with its log tables.
#[derive(Clone)]
pub struct FieldCtx {
    p: u64,
    r: u32,
    q: u64,
    modulus: Vec<u64>,
    generator: FqElem,
    /// `exp[k]` is the index of generator^k, k in [0, q-1).
    exp: Vec<u32>,
    /// `log[x]` is the discrete log of element index x; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    pow_p: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^r} with the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_cap(p, r, DEFAULT_SIZE_CAP)
    }

    /// Builds F_q for a prime power q (convenience for `q`-style field lists).
    pub fn from_order(q: u64, cap: u64) -> Result<Self> {
        let (p, r) = split_prime_power(q).ok_or(Error::NonOddPrime(q))?;
        Self::with_cap(p, r, cap)
    }

    pub fn with_cap(p: u64, r: u32, cap: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NonOddPrime(p));
        }
        if r == 0 {
            return Err(Error::BadDegree);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= cap && q <= u32::MAX as u64)
            .ok_or(Error::TooLarge {
                size: p.saturating_pow(r),
                cap,
            })?;

        let modulus = least_irreducible(p, r);
        let decode = |idx: u64| -> Vec<u64> {
            let mut v = Vec::with_capacity(r as usize);
            let mut n = idx;
            for _ in 0..r {
                v.push(n % p);
                n /= p;
            }
            v
        };
        let encode = |f: &[u64]| -> u32 {
            f.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
        };

        let order = q - 1;
        let factors = prime_factors(order);
        let generator = (1..q)
            .find(|&idx| {
                let g = decode(idx);
                factors.iter().all(|&l| {
                    let h = poly::pow_poly_mod(&g, order / l, &modulus, p);
                    !(h.len() == 1 && h[0] == 1)
                })
            })
            .expect("F_q^x is cyclic, a generator always exists");

        let g = decode(generator);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur: Vec<u64> = vec![1];
        for k in 0..order {
            let idx = encode(&cur);
            exp.push(idx);
            log[idx as usize] = k as u32;
            cur = poly::mul_mod(&cur, &g, &modulus, p);
        }
        debug_assert!(log[1..].iter().all(|&l| l != u32::MAX));

        let pow_p: Vec<u32> = (0..r).map(|i| p.pow(i) as u32).collect();
        let mut ctx = FieldCtx {
            p,
            r,
            q,
            modulus,
            generator: FqElem(generator as u32),
            exp,
            log,
            trace: Vec::new(),
            pow_p,
        };
        ctx.trace = (0..q as u32)
            .map(|idx| {
                let x = FqElem(idx);
                let t = (0..r).fold(FqElem::ZERO, |acc, i| {
                    acc_add(&ctx, acc, ctx.pow(x, p.pow(i) as i64))
                });
                assert!(
                    (t.0 as u64) < p,
                    "trace left the prime field; modulus construction is broken"
                );
                t.0
            })
            .collect();
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Monic defining polynomial, coefficients low degree first (length r+1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q as u32).map(FqElem)
    }

    /// Nonzero elements in canonical order.
    pub fn units(&self) -> impl Iterator<Item = FqElem> + '_ {
        (1..self.q as u32).map(FqElem)
    }

    pub fn element_list(&self) -> Vec<FqElem> {
        self.elements().collect()
    }

    /// Element from its canonical index; `None` when out of range.
    pub fn elem(&self, index: u32) -> Option<FqElem> {
        ((index as u64) < self.q).then_some(FqElem(index))
    }

    /// Coordinates in the power basis, each in [0, p).
    pub fn coeffs(&self, x: FqElem) -> Vec<u64> {
        let mut n = x.0 as u64;
        (0..self.r)
            .map(|_| {
                let c = n % self.p;
                n /= self.p;
                c
            })
            .collect()
    }

    /// Element with the given coordinates; missing trailing entries are zero,
    /// negative entries are reduced mod p.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FqElem> {
        if coeffs.len() > self.r as usize {
            return Err(Error::Parse(format!(
                "{} coordinates given for an extension of degree {}",
                coeffs.len(),
                self.r
            )));
        }
        let p = self.p as i64;
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c.rem_euclid(p) as u64);
        Ok(FqElem(idx as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        acc_add(self, x, y)
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        if self.r == 1 {
            return FqElem(((self.p - x.0 as u64) % self.p) as u32);
        }
        let p = self.p as u32;
        let mut out = 0u32;
        let mut n = x.0;
        for &w in &self.pow_p {
            let c = n % p;
            n /= p;
            out += ((p - c) % p) * w;
        }
        FqElem(out)
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        if x.0 == 0 || y.0 == 0 {
            return FqElem::ZERO;
        }
        let k = self.log[x.0 as usize] as u64 + self.log[y.0 as usize] as u64;
        FqElem(self.exp[(k % (self.q - 1)) as usize])
    }

    pub fn square(&self, x: FqElem) -> FqElem {
        self.mul(x, x)
    }

    pub fn inv(&self, x: FqElem) -> Result<FqElem> {
        if x.0 == 0 {
            return Err(Error::DivZero);
        }
        let k = self.log[x.0 as usize] as u64;
        Ok(FqElem(self.exp[((self.q - 1 - k) % (self.q - 1)) as usize]))
    }

    pub fn div(&self, x: FqElem, y: FqElem) -> Result<FqElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// x^e; the exponent is taken mod q-1 for nonzero x. 0^0 = 1, 0^e = 0 for
    /// e > 0, and 0^e for e < 0 panics-free returns zero.
    pub fn pow(&self, x: FqElem, e: i64) -> FqElem {
        if x.0 == 0 {
            return if e == 0 { FqElem::ONE } else { FqElem::ZERO };
        }
        let n = (self.q - 1) as i64;
        let k = (self.log[x.0 as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        FqElem(self.exp[k as usize])
    }

    /// generator^k for any integer k.
    pub fn gen_pow(&self, k: i64) -> FqElem {
        FqElem(self.exp[k.rem_euclid((self.q - 1) as i64) as usize])
    }

    pub fn dlog(&self, x: FqElem) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log[x.0 as usize] as u64)
    }

    /// Absolute trace to F_p, as an integer in [0, p).
    pub fn trace(&self, x: FqElem) -> u64 {
        self.trace[x.0 as usize] as u64
    }

    /// x -> x^p.
    pub fn frobenius(&self, x: FqElem) -> FqElem {
        self.pow(x, self.p as i64)
    }

    /// Quadratic character with phi(0) = 0.
    pub fn quad_char(&self, x: FqElem) -> i64 {
        if x.0 == 0 {
            0
        } else if self.log[x.0 as usize] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Canonical square root generator^(dlog/2), or `None` for non-squares.
    pub fn sqrt(&self, x: FqElem) -> Option<FqElem> {
        if x.0 == 0 {
            return Some(FqElem::ZERO);
        }
        let k = self.log[x.0 as usize];
        (k % 2 == 0).then(|| FqElem(self.exp[(k / 2) as usize]))
    }

    pub fn is_square(&self, x: FqElem) -> bool {
        self.quad_char(x) >= 0
    }

    /// Human-readable form: the integer for prime fields, `c0:c1:...` otherwise.
    pub fn format(&self, x: FqElem) -> String {
        if self.r == 1 {
            x.0.to_string()
        } else {
            self.coeffs(x)
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(":")
        }
    }

    /// Parses `n` (integer, reduced into F_p) or `c0:c1:...` coordinates.
    pub fn parse(&self, s: &str) -> Result<FqElem> {
        let parts: Vec<i64> = s
            .trim()
            .split(':')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("cannot parse `{s}` as a field element")))
            })
            .collect::<Result<_>>()?;
        self.from_coeffs(&parts)
    }
}

fn acc_add(ctx: &FieldCtx, x: FqElem, y: FqElem) -> FqElem {
    let p = ctx.p as u32;
    if ctx.r == 1 {
        return FqElem((x.0 + y.0) % p);
    }
    let (mut a, mut b) = (x.0, y.0);
    let mut out = 0u32;
    for &w in &ctx.pow_p {
        out += ((a % p + b % p) % p) * w;
        a /= p;
        b /= p;
    }
    FqElem(out)
}

/// Least monic irreducible of degree r, coefficients compared low degree first.
fn least_irreducible(p: u64, r: u32) -> Vec<u64> {
    let count = p.pow(r);
    (0..count)
        .map(|n| {
            // c0 is the most significant key of the lexicographic order
            let mut coeffs = vec![0u64; r as usize + 1];
            let mut m = n;
            for i in (0..r as usize).rev() {
                coeffs[i] = m % p;
                m /= p;
            }
            coeffs[r as usize] = 1;
            coeffs
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Splits q = p^r with p prime; `None` unless q is a prime power.
pub fn split_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = 0;
    let mut n = q;
    while n % p == 0 {
        n /= p;
        r += 1;
    }
    (n == 1).then_some((p, r))
}
