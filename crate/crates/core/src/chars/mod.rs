//! Multiplicative characters of F_q, Gauss and Jacobi sums, Greene's `2F1`.
//!
//! A character is identified by an index `j` mod `q-1`:
//! `chi_j(g^k) = zeta_{q-1}^{jk}` for the canonical generator `g`, and
//! `chi_j(0) = 0` for every `j`, the trivial character included.

mod identities;
mod value;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

pub use identities::{orthogonality_characters_defect, orthogonality_elements_defect, Identity};
pub use value::{GaussianRational, SumValue};

/// Absolute tolerance for the complex engine: 1e-6 * q^(5/2).
pub fn tolerance(q: u64) -> f64 {
    1e-6 * (q as f64).powf(2.5)
}

/// A multiplicative character `chi_j` on F_q^x, with `modulus = q - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultChar {
    index: u64,
    modulus: u64,
}

impl MultChar {
    pub fn new(index: i64, modulus: u64) -> Self {
        MultChar {
            index: index.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn trivial(field: &FieldCtx) -> Self {
        Self::new(0, field.q() - 1)
    }

    /// The quadratic character phi.
    pub fn quadratic(field: &FieldCtx) -> Self {
        let n = field.q() - 1;
        Self::new((n / 2) as i64, n)
    }

    /// chi_4 = chi_{(q-1)/4}; `None` when q = 3 mod 4.
    pub fn quartic(field: &FieldCtx) -> Option<Self> {
        let n = field.q() - 1;
        (n % 4 == 0).then(|| Self::new((n / 4) as i64, n))
    }

    /// All q-1 characters in index order.
    pub fn all(field: &FieldCtx) -> impl Iterator<Item = MultChar> {
        let n = field.q() - 1;
        (0..n).map(move |j| MultChar::new(j as i64, n))
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    /// delta(A): 1 for the trivial character, 0 otherwise.
    pub fn delta(&self) -> i64 {
        self.is_trivial() as i64
    }

    pub fn order(&self) -> u64 {
        self.modulus / num_integer::gcd(self.index, self.modulus)
    }

    /// Order divides 4, so values lie in {0, ±1, ±i}.
    pub fn has_exact_values(&self) -> bool {
        (4 * self.index) % self.modulus == 0
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.index as i64), self.modulus)
    }

    pub fn pow(&self, e: i64) -> Self {
        let n = self.modulus as i128;
        Self::new(
            ((self.index as i128 * e as i128).rem_euclid(n)) as i64,
            self.modulus,
        )
    }

    /// The exact value for characters of order dividing 4.
    pub fn eval_exact(&self, field: &FieldCtx, x: FqElem) -> Option<GaussianRational> {
        if !self.has_exact_values() {
            return None;
        }
        if x.is_zero() {
            return Some(GaussianRational::ZERO);
        }
        let k = 4 * self.index / self.modulus;
        let d = field.dlog(x).ok()?;
        Some(GaussianRational::i_pow(k * d % 4))
    }
}

impl std::ops::Mul for MultChar {
    type Output = MultChar;
    fn mul(self, o: MultChar) -> MultChar {
        debug_assert_eq!(self.modulus, o.modulus);
        MultChar::new(((self.index + o.index) % self.modulus) as i64, self.modulus)
    }
}

/// How sums should be evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Exact whenever every character involved has order dividing 4.
    Auto,
    /// Always complex double precision.
    Complex,
}

/// Which formula evaluates Greene's `2F1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Greene2F1Method {
    /// The defining character sum.
    CharSum,
    /// Greene's binomial-coefficient expansion.
    BinomSum,
}

/// Complex root tables and the eagerly built Gauss-sum table for one field.
pub struct CharTable<'f> {
    field: &'f FieldCtx,
    unit_roots: Vec<Complex64>,
    additive: Vec<Complex64>,
    gauss: Vec<Complex64>,
}

fn roots_of_unity(n: u64) -> Vec<Complex64> {
    (0..n)
        .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64))
        .collect()
}

impl<'f> CharTable<'f> {
    pub fn new(field: &'f FieldCtx) -> Self {
        let n = field.q() - 1;
        let unit_roots = roots_of_unity(n);
        let additive = roots_of_unity(field.p());
        // theta(g^k) for k in [0, n)
        let theta_by_log: Vec<Complex64> = (0..n as i64)
            .map(|k| additive[field.trace(field.gen_pow(k)) as usize])
            .collect();
        let gauss = (0..n)
            .map(|j| {
                theta_by_log
                    .iter()
                    .enumerate()
                    .map(|(k, th)| unit_roots[((j * k as u64) % n) as usize] * th)
                    .sum()
            })
            .collect();
        CharTable {
            field,
            unit_roots,
            additive,
            gauss,
        }
    }

    pub fn field(&self) -> &'f FieldCtx {
        self.field
    }

    pub fn n(&self) -> u64 {
        self.field.q() - 1
    }

    pub fn tolerance(&self) -> f64 {
        tolerance(self.field.q())
    }

    pub fn chi(&self, j: i64) -> MultChar {
        MultChar::new(j, self.n())
    }

    pub fn eps(&self) -> MultChar {
        MultChar::trivial(self.field)
    }

    pub fn phi(&self) -> MultChar {
        MultChar::quadratic(self.field)
    }

    pub fn characters(&self) -> impl Iterator<Item = MultChar> {
        MultChar::all(self.field)
    }

    pub fn eval_complex(&self, chi: MultChar, x: FqElem) -> Complex64 {
        if x.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        let d = self.field.dlog(x).expect("nonzero");
        self.unit_roots[((chi.index * d) % self.n()) as usize]
    }

    /// chi(x), exact or complex per the engine.
    pub fn char_eval_with(&self, engine: Engine, chi: MultChar, x: FqElem) -> SumValue {
        match (engine, chi.eval_exact(self.field, x)) {
            (Engine::Auto, Some(v)) => SumValue::Exact(v),
            (Engine::Auto, None) if x.is_zero() => SumValue::ZERO,
            _ => SumValue::Complex(self.eval_complex(chi, x)),
        }
    }

    pub fn char_eval(&self, chi: MultChar, x: FqElem) -> SumValue {
        self.char_eval_with(Engine::Auto, chi, x)
    }

    /// theta(x) = zeta_p^{tr x}.
    pub fn theta(&self, x: FqElem) -> Complex64 {
        self.additive[self.field.trace(x) as usize]
    }

    /// g(chi) = sum_x chi(x) theta(x); exactly -1 for the trivial character.
    pub fn gauss_sum(&self, chi: MultChar) -> SumValue {
        if chi.is_trivial() {
            SumValue::int(-1)
        } else {
            SumValue::Complex(self.gauss[chi.index as usize])
        }
    }

    pub fn gauss_complex(&self, chi: MultChar) -> Complex64 {
        if chi.is_trivial() {
            Complex64::new(-1.0, 0.0)
        } else {
            self.gauss[chi.index as usize]
        }
    }

    /// g(chi) by direct summation, bypassing the table.
    pub fn gauss_sum_direct(&self, chi: MultChar) -> Complex64 {
        self.field
            .units()
            .map(|x| self.eval_complex(chi, x) * self.theta(x))
            .sum()
    }

    /// J(A, B) = sum_x A(x) B(1 - x).
    pub fn jacobi_sum_with(&self, engine: Engine, a: MultChar, b: MultChar) -> SumValue {
        let f = self.field;
        f.elements()
            .map(|x| {
                self.char_eval_with(engine, a, x)
                    * self.char_eval_with(engine, b, f.sub(f.one(), x))
            })
            .sum()
    }

    pub fn jacobi_sum(&self, a: MultChar, b: MultChar) -> SumValue {
        self.jacobi_sum_with(Engine::Auto, a, b)
    }

    /// (A choose B) = B(-1)/q * J(A, conj B).
    pub fn binom_with(&self, engine: Engine, a: MultChar, b: MultChar) -> SumValue {
        let f = self.field;
        let minus_one = f.neg(f.one());
        (self.char_eval_with(engine, b, minus_one) * self.jacobi_sum_with(engine, a, b.conj()))
            .scale(1, f.q() as i64)
    }

    pub fn binom(&self, a: MultChar, b: MultChar) -> SumValue {
        self.binom_with(Engine::Auto, a, b)
    }

    /// Greene's `2F1(A, B; C | x)`.
    pub fn greene_2f1_with(
        &self,
        engine: Engine,
        a: MultChar,
        b: MultChar,
        c: MultChar,
        x: FqElem,
        method: Greene2F1Method,
    ) -> SumValue {
        let f = self.field;
        let q = f.q() as i64;
        if x.is_zero() {
            return SumValue::ZERO;
        }
        match method {
            Greene2F1Method::CharSum => {
                let minus_one = f.neg(f.one());
                let prefactor = self.char_eval_with(engine, b * c, minus_one);
                let bbar_c = b.conj() * c;
                let abar = a.conj();
                let sum: SumValue = f
                    .elements()
                    .map(|y| {
                        self.char_eval_with(engine, b, y)
                            * self.char_eval_with(engine, bbar_c, f.sub(f.one(), y))
                            * self.char_eval_with(engine, abar, f.sub(f.one(), f.mul(x, y)))
                    })
                    .sum();
                (prefactor * sum).scale(1, q)
            }
            Greene2F1Method::BinomSum => {
                let sum: SumValue = self
                    .characters()
                    .map(|chi| {
                        self.binom_with(engine, a * chi, chi)
                            * self.binom_with(engine, b * chi, c * chi)
                            * self.char_eval_with(engine, chi, x)
                    })
                    .sum();
                sum.scale(q, q - 1)
            }
        }
    }

    pub fn greene_2f1(
        &self,
        a: MultChar,
        b: MultChar,
        c: MultChar,
        x: FqElem,
        method: Greene2F1Method,
    ) -> SumValue {
        self.greene_2f1_with(Engine::Auto, a, b, c, x, method)
    }

    /// sum over psi of g(conj psi) g(conj psi * phi) g(psi^2 phi) psi(x/4).
    pub fn g_char_sum(&self, x: FqElem) -> Result<SumValue> {
        let f = self.field;
        if x.is_zero() {
            return Err(Error::DivZero);
        }
        let phi = self.phi();
        let arg = f.div(x, f.from_int(4))?;
        let total: Complex64 = self
            .characters()
            .map(|psi| {
                self.gauss_complex(psi.conj())
                    * self.gauss_complex(psi.conj() * phi)
                    * self.gauss_complex(psi.pow(2) * phi)
                    * self.eval_complex(psi, arg)
            })
            .sum();
        Ok(SumValue::Complex(total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_values() {
        let f = FieldCtx::new(13, 1).unwrap();
        let t = CharTable::new(&f);
        for j in 0..12 {
            assert_eq!(t.char_eval(t.chi(j), f.zero()), SumValue::ZERO);
            assert!(t.char_eval(t.chi(j), f.one()).distance(&SumValue::ONE) < 1e-12);
        }
        for x in f.elements() {
            assert_eq!(
                t.char_eval(t.phi(), x),
                SumValue::int(f.quad_char(x)),
                "phi mismatch at {x}"
            );
        }
        assert_eq!(t.chi(5).order(), 12);
        assert_eq!(t.chi(4).order(), 3);
        assert!(t.chi(3).has_exact_values());
        assert!(!t.chi(2).has_exact_values());
    }

    #[test]
    fn gauss_sum_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let t = CharTable::new(&f);
        assert_eq!(t.gauss_sum(t.eps()), SumValue::int(-1));
        let g = t.gauss_complex(t.phi());
        assert!((g * g - Complex64::new(5.0, 0.0)).norm() < t.tolerance());
        for chi in t.characters().filter(|c| !c.is_trivial()) {
            assert!((t.gauss_complex(chi).norm_sqr() - 5.0).abs() < t.tolerance());
            assert!((t.gauss_complex(chi) - t.gauss_sum_direct(chi)).norm() < 1e-9);
        }
    }

    #[test]
    fn jacobi_examples() {
        for (p, r) in [(5, 1), (7, 1), (3, 2)] {
            let f = FieldCtx::new(p, r).unwrap();
            let t = CharTable::new(&f);
            let q = f.q() as i64;
            let phi_m1 = f.quad_char(f.neg(f.one()));
            assert_eq!(t.jacobi_sum(t.eps(), t.eps()), SumValue::int(q - 2));
            assert_eq!(t.jacobi_sum(t.phi(), t.eps()), SumValue::int(-1));
            assert_eq!(t.jacobi_sum(t.phi(), t.phi()), SumValue::int(-phi_m1));
        }
    }

    #[test]
    fn binom_examples() {
        let f = FieldCtx::new(7, 1).unwrap();
        let t = CharTable::new(&f);
        let q = f.q() as i128;
        assert_eq!(
            t.binom(t.phi(), t.eps()),
            SumValue::Exact(GaussianRational::new(-1, 0, q))
        );
        assert_eq!(
            t.binom(t.eps(), t.eps()),
            SumValue::Exact(GaussianRational::new(q - 2, 0, q))
        );
    }

    #[test]
    fn binom_matches_independent_double_loop() {
        // (A choose B) = B(-1)/q * sum_x A(x) conj(B)(1-x), summed here with
        // explicit angles rather than the table-driven engine.
        let f = FieldCtx::new(3, 2).unwrap();
        let t = CharTable::new(&f);
        let n = 8i64;
        let chi = |j: i64, x: FqElem| -> Complex64 {
            if x.is_zero() {
                return Complex64::new(0.0, 0.0);
            }
            let k = (j * f.dlog(x).unwrap() as i64).rem_euclid(n);
            Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
        };
        for a in 0..n {
            for b in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for x in f.elements() {
                    s += chi(a, x) * chi(-b, f.sub(f.one(), x));
                }
                let expected = chi(b, f.neg(f.one())) * s / 9.0;
                let got = t.binom(t.chi(a), t.chi(b)).to_complex();
                assert!((got - expected).norm() < 1e-9, "A={a} B={b}");
            }
        }
    }

    #[test]
    fn greene_examples() {
        let f = FieldCtx::new(13, 1).unwrap();
        let t = CharTable::new(&f);
        let phi = t.phi();
        for m in [Greene2F1Method::CharSum, Greene2F1Method::BinomSum] {
            assert_eq!(t.greene_2f1(t.chi(1), t.chi(2), t.chi(3), f.zero(), m), SumValue::ZERO);
        }
        let x = f.from_int(2);
        let a = t.greene_2f1(phi, phi, phi, x, Greene2F1Method::CharSum);
        let b = t.greene_2f1(phi, phi, phi, x, Greene2F1Method::BinomSum);
        assert!(a.is_exact());
        assert!(a.distance(&b) < t.tolerance());
    }

    #[test]
    fn exact_and_complex_engines_agree() {
        let f = FieldCtx::new(13, 1).unwrap();
        let t = CharTable::new(&f);
        let quartic: Vec<MultChar> = (0..4).map(|k| t.chi(3 * k)).collect();
        for &a in &quartic {
            for &b in &quartic {
                let e = t.jacobi_sum_with(Engine::Auto, a, b);
                let c = t.jacobi_sum_with(Engine::Complex, a, b);
                assert!(e.is_exact() && !c.is_exact());
                assert!(e.distance(&c) < 1e-9);
            }
        }
    }

    #[test]
    fn prop1_examples() {
        let f = FieldCtx::new(5, 1).unwrap();
        let t = CharTable::new(&f);
        let v = t.g_char_sum(f.one()).unwrap();
        assert!(v.distance(&SumValue::int(-20)) < t.tolerance());
        assert_eq!(t.g_char_sum(f.zero()), Err(Error::DivZero));

        // at q = 9 every value is q(q-1) times an integer in {0, ±1, ±2}
        let f = FieldCtx::new(3, 2).unwrap();
        let t = CharTable::new(&f);
        for x in f.units() {
            let z = t.g_char_sum(x).unwrap().to_complex() / 72.0;
            assert!(z.im.abs() < 1e-6);
            assert!((z.re - z.re.round()).abs() < 1e-6);
            assert!(z.re.round().abs() <= 2.0);
        }
    }
}
