use proptest::prelude::*;

use hypercount::chars::{CharTable, MultChar};
use hypercount::curves::{
    brute_count, mt1_count, sample_params, trace_frobenius, EllipticParams, Family, GPath, Sample,
};
use hypercount::padic::{g_fast, GnnEvaluator, GnnParams, PadicCtx, Precision};
use hypercount::{FieldCtx, FqElem};

const ORDERS: [u64; 10] = [3, 5, 7, 9, 11, 13, 25, 27, 49, 125];

fn any_field() -> impl Strategy<Value = FieldCtx> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| FieldCtx::from_order(q, 10_000).unwrap())
}

fn elem(f: &FieldCtx, i: u64) -> FqElem {
    f.elem((i % f.q()) as u32).unwrap()
}

fn unit(f: &FieldCtx, i: u64) -> FqElem {
    f.elem((1 + i % (f.q() - 1)) as u32).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_ring_axioms(f in any_field(), i: u64, j: u64, k: u64) {
        let (x, y, z) = (elem(&f, i), elem(&f, j), elem(&f, k));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
    }

    #[test]
    fn field_units(f in any_field(), i: u64, j: u64) {
        let (x, y) = (unit(&f, i), elem(&f, j));
        prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        prop_assert_eq!(f.mul(f.div(y, x).unwrap(), x), y);
        prop_assert_eq!(f.gen_pow(f.dlog(x).unwrap() as i64), x);
        prop_assert_eq!(f.pow(x, (f.q() - 1) as i64), f.one());
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative(f in any_field(), i: u64, j: u64) {
        let (x, y) = (elem(&f, i), elem(&f, j));
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.frobenius(f.mul(x, y)), f.mul(f.frobenius(x), f.frobenius(y)));
        prop_assert_eq!(f.trace(f.frobenius(x)), f.trace(x));
    }

    #[test]
    fn quadratic_character(f in any_field(), i: u64, j: u64) {
        let (x, y) = (elem(&f, i), elem(&f, j));
        prop_assert_eq!(f.quad_char(f.mul(x, y)), f.quad_char(x) * f.quad_char(y));
        prop_assert_eq!(f.quad_char(f.square(x)), if x.is_zero() { 0 } else { 1 });
        if let Some(s) = f.sqrt(x) {
            prop_assert_eq!(f.square(s), x);
        } else {
            prop_assert_eq!(f.quad_char(x), -1);
        }
    }

    #[test]
    fn format_parse_round_trip(f in any_field(), i: u64) {
        let x = elem(&f, i);
        prop_assert_eq!(f.parse(&f.format(x)).unwrap(), x);
    }

    #[test]
    fn characters_multiplicative(f in any_field(), a: u64, i: u64, j: u64) {
        let t = CharTable::new(&f);
        let chi = MultChar::new((a % t.n()) as i64, t.n());
        let (x, y) = (elem(&f, i), elem(&f, j));
        let lhs = t.eval_complex(chi, f.mul(x, y));
        let rhs = t.eval_complex(chi, x) * t.eval_complex(chi, y);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn gauss_sum_norm(f in any_field(), a: u64) {
        let t = CharTable::new(&f);
        let chi = MultChar::new((a % t.n()) as i64, t.n());
        let g = t.gauss_complex(chi).norm_sqr();
        let expected = if chi.is_trivial() { 1.0 } else { f.q() as f64 };
        prop_assert!((g - expected).abs() < t.tolerance(), "|g|^2 = {}", g);
    }

    #[test]
    fn teichmuller_lifts(f in any_field(), i: u64, j: u64) {
        let ctx = PadicCtx::new(&f, Precision::Auto).unwrap();
        let (x, y) = (unit(&f, i), unit(&f, j));
        let (wx, wy) = (ctx.teichmuller(x).unwrap(), ctx.teichmuller(y).unwrap());
        prop_assert_eq!(ctx.reduce_to_field(&wx).unwrap(), x);
        prop_assert_eq!(ctx.mul(&wx, &wy), ctx.teichmuller(f.mul(x, y)).unwrap());
        prop_assert_eq!(ctx.pow(&wx, (f.q() - 1) as u128), ctx.one());
    }

    #[test]
    fn gamma_functional_equation(f in any_field(), n in -500i128..500) {
        // Γ_p(x + 1) = -x Γ_p(x) for p ∤ x, and -Γ_p(x) otherwise
        let ctx = PadicCtx::new(&f, Precision::Auto).unwrap();
        let zm = ctx.zmod();
        let p = f.p() as i128;
        let (g0, g1) = (ctx.gamma_p_int(n), ctx.gamma_p_int(n + 1));
        let factor = if n % p == 0 { zm.reduce_i128(-1) } else { zm.reduce_i128(-n) };
        prop_assert_eq!(g1, zm.mul(factor, g0));
    }

    #[test]
    fn g_closed_form_matches_padic(f in any_field(), i: u64) {
        let t = unit(&f, i);
        let ev = GnnEvaluator::new(&f, GnnParams::g_function(), Precision::Auto, true).unwrap();
        let padic = ev.eval(t).unwrap().as_integer();
        prop_assert_eq!(padic, Some(g_fast(&f, t).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mt1_matches_brute_force(f in any_field(), seed: u64) {
        for s in sample_params(&f, Family::Mt1, seed, 2).unwrap() {
            let Sample::Curve(cp) = s else { unreachable!() };
            let formula = mt1_count(&f, &cp, GPath::Fast).unwrap().count;
            prop_assert_eq!(formula, brute_count(&f, &cp) as i64);
        }
    }

    #[test]
    fn hasse_bound(f in any_field(), i: u64, j: u64) {
        let ep = EllipticParams::new(unit(&f, i), unit(&f, j)).unwrap();
        let a = trace_frobenius(&f, &ep).unwrap();
        prop_assert!((a * a) as u64 <= 4 * f.q());
    }
}
