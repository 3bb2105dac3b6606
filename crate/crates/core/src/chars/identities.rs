//! Classical identities for Gauss sums, Jacobi sums and Greene's `2F1`,
//! each evaluated as a defect |LHS - RHS| in the complex engine.

use num_complex::Complex64;

use super::{CharTable, Greene2F1Method, MultChar};
use crate::error::{Error, Result};
use crate::field::FqElem;

/// One instance of an identity, with the characters/elements it quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// theta(alpha) = 1/(q-1) sum_chi g(conj chi) chi(alpha), alpha != 0.
    ThetaExpansion { alpha: FqElem },
    /// g(chi) g(conj chi) = q chi(-1) - (q-1) delta(chi).
    GaussReflection { chi: MultChar },
    /// J(A,B) = g(A) g(B) / g(AB) + (q-1) B(-1) delta(AB).
    JacobiGauss { a: MultChar, b: MultChar },
    /// prod_{chi^m = eps} g(A chi) = -g(A^m) A(m^-m) prod_{chi^m = eps} g(chi).
    DavenportHasse { m: u64, a: MultChar },
    /// 1/(q-1) sum_chi g(A chi) g(B conj chi) g(C chi) g(D conj chi)
    ///   = g(AB) g(AD) g(BC) g(CD) / g(ABCD) + q(q-1) AC(-1) delta(ABCD).
    HpFourGauss {
        a: MultChar,
        b: MultChar,
        c: MultChar,
        d: MultChar,
    },
    /// 2F1(A,B;C|x) = C(-1) conj(AB)C(1-x) 2F1(conj(A)C, conj(B)C; C|x)
    ///   + A(-1) (B choose conj(A)C) delta(1-x).
    GreeneTransform {
        a: MultChar,
        b: MultChar,
        c: MultChar,
        x: FqElem,
    },
    /// The character-sum and binomial-sum forms of 2F1 agree.
    Greene2F1Forms {
        a: MultChar,
        b: MultChar,
        c: MultChar,
        x: FqElem,
    },
}

impl Identity {
    pub fn name(&self) -> &'static str {
        match self {
            Identity::ThetaExpansion { .. } => "theta_expansion",
            Identity::GaussReflection { .. } => "gauss_reflection",
            Identity::JacobiGauss { .. } => "jacobi_gauss",
            Identity::DavenportHasse { .. } => "davenport_hasse",
            Identity::HpFourGauss { .. } => "hp_four_gauss",
            Identity::GreeneTransform { .. } => "greene_transform",
            Identity::Greene2F1Forms { .. } => "greene_2f1_forms",
        }
    }
}

impl CharTable<'_> {
    /// |LHS - RHS| of the identity; a passing check has defect below
    /// [`CharTable::tolerance`].
    pub fn identity_defect(&self, identity: Identity) -> Result<f64> {
        let f = self.field;
        let q = f.q() as f64;
        let n = self.n();
        let minus_one = f.neg(f.one());
        let g = |chi: MultChar| self.gauss_complex(chi);
        let ev = |chi: MultChar, x: FqElem| self.eval_complex(chi, x);
        let delta = |chi: MultChar| chi.delta() as f64;

        let (lhs, rhs): (Complex64, Complex64) = match identity {
            Identity::ThetaExpansion { alpha } => {
                if alpha.is_zero() {
                    return Err(Error::BadParams("theta expansion needs alpha != 0".into()));
                }
                let s: Complex64 = self.characters().map(|chi| g(chi.conj()) * ev(chi, alpha)).sum();
                (self.theta(alpha), s / (q - 1.0))
            }
            Identity::GaussReflection { chi } => (
                g(chi) * g(chi.conj()),
                q * ev(chi, minus_one) - (q - 1.0) * delta(chi),
            ),
            Identity::JacobiGauss { a, b } => (
                self.jacobi_sum_with(super::Engine::Complex, a, b).to_complex(),
                g(a) * g(b) / g(a * b) + (q - 1.0) * ev(b, minus_one) * delta(a * b),
            ),
            Identity::DavenportHasse { m, a } => {
                if m == 0 || n % m != 0 {
                    return Err(Error::BadParams(format!(
                        "Davenport-Hasse needs q = 1 mod m, got q = {}, m = {m}",
                        f.q()
                    )));
                }
                let step = (n / m) as i64;
                let kernel: Vec<MultChar> = (0..m as i64).map(|k| self.chi(k * step)).collect();
                let lhs: Complex64 = kernel.iter().map(|&chi| g(a * chi)).product();
                let m_elem = f.from_int(m as i64);
                let m_pow = f.pow(m_elem, -(m as i64));
                let prod: Complex64 = kernel.iter().map(|&chi| g(chi)).product();
                (lhs, -g(a.pow(m as i64)) * ev(a, m_pow) * prod)
            }
            Identity::HpFourGauss { a, b, c, d } => {
                let s: Complex64 = self
                    .characters()
                    .map(|chi| g(a * chi) * g(b * chi.conj()) * g(c * chi) * g(d * chi.conj()))
                    .sum();
                let abcd = a * b * c * d;
                (
                    s / (q - 1.0),
                    g(a * b) * g(a * d) * g(b * c) * g(c * d) / g(abcd)
                        + q * (q - 1.0) * ev(a * c, minus_one) * delta(abcd),
                )
            }
            Identity::GreeneTransform { a, b, c, x } => {
                let engine = super::Engine::Complex;
                let lhs = self
                    .greene_2f1_with(engine, a, b, c, x, Greene2F1Method::CharSum)
                    .to_complex();
                let one_minus_x = f.sub(f.one(), x);
                let first = ev(c, minus_one)
                    * ev((a * b).conj() * c, one_minus_x)
                    * self
                        .greene_2f1_with(
                            engine,
                            a.conj() * c,
                            b.conj() * c,
                            c,
                            x,
                            Greene2F1Method::CharSum,
                        )
                        .to_complex();
                let second = if one_minus_x.is_zero() {
                    ev(a, minus_one) * self.binom_with(engine, b, a.conj() * c).to_complex()
                } else {
                    Complex64::new(0.0, 0.0)
                };
                (lhs, first + second)
            }
            Identity::Greene2F1Forms { a, b, c, x } => {
                let engine = super::Engine::Complex;
                (
                    self.greene_2f1_with(engine, a, b, c, x, Greene2F1Method::CharSum)
                        .to_complex(),
                    self.greene_2f1_with(engine, a, b, c, x, Greene2F1Method::BinomSum)
                        .to_complex(),
                )
            }
        };
        Ok((lhs - rhs).norm())
    }
}

/// max over chi of |sum_x chi(x) - (q-1) delta(chi)|.
pub fn orthogonality_elements_defect(table: &CharTable<'_>) -> f64 {
    let f = table.field();
    let n = (f.q() - 1) as i64;
    table
        .characters()
        .map(|chi| {
            let s: super::SumValue = f.elements().map(|x| table.char_eval(chi, x)).sum();
            s.distance(&super::SumValue::int(n * chi.delta()))
        })
        .fold(0.0, f64::max)
}

/// max over x != 0 of |sum_chi chi(x) - (q-1) [x = 1]|.
pub fn orthogonality_characters_defect(table: &CharTable<'_>) -> f64 {
    let f = table.field();
    let n = (f.q() - 1) as f64;
    f.units()
        .map(|x| {
            let s: Complex64 = table.characters().map(|chi| table.eval_complex(chi, x)).sum();
            let expected = if x == f.one() { n } else { 0.0 };
            (s - Complex64::new(expected, 0.0)).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::SumValue;
    use crate::field::FieldCtx;

    #[test]
    fn gauss_reflection_all_characters_q9() {
        let f = FieldCtx::new(3, 2).unwrap();
        let t = CharTable::new(&f);
        for chi in t.characters() {
            let d = t.identity_defect(Identity::GaussReflection { chi }).unwrap();
            assert!(d < t.tolerance(), "{chi:?}: {d}");
        }
    }

    #[test]
    fn davenport_hasse_m2_q13() {
        let f = FieldCtx::new(13, 1).unwrap();
        let t = CharTable::new(&f);
        let d = t
            .identity_defect(Identity::DavenportHasse { m: 2, a: t.chi(1) })
            .unwrap();
        assert!(d < t.tolerance());
        assert!(matches!(
            t.identity_defect(Identity::DavenportHasse { m: 5, a: t.chi(1) }),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn four_gauss_trivial_characters_q5() {
        let f = FieldCtx::new(5, 1).unwrap();
        let t = CharTable::new(&f);
        let e = t.eps();
        let d = t
            .identity_defect(Identity::HpFourGauss { a: e, b: e, c: e, d: e })
            .unwrap();
        assert!(d < t.tolerance());
    }

    #[test]
    fn orthogonality_is_exact_on_exact_path() {
        let f = FieldCtx::new(13, 1).unwrap();
        let t = CharTable::new(&f);
        for j in [0, 3, 6, 9] {
            let chi = t.chi(j);
            let s: SumValue = f.elements().map(|x| t.char_eval(chi, x)).sum();
            assert_eq!(s, SumValue::int(12 * chi.delta()));
        }
        assert!(orthogonality_elements_defect(&t) < t.tolerance());
        assert!(orthogonality_characters_defect(&t) < t.tolerance());
    }

    #[test]
    fn theta_expansion_rejects_zero() {
        let f = FieldCtx::new(5, 1).unwrap();
        let t = CharTable::new(&f);
        assert!(t.identity_defect(Identity::ThetaExpansion { alpha: f.zero() }).is_err());
        let d = t.identity_defect(Identity::ThetaExpansion { alpha: f.one() }).unwrap();
        assert!(d < t.tolerance());
    }
}
