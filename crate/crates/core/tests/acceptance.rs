//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

use std::process::ExitCode;
use std::time::Instant;

use hypercount::curves::{
    bs1_trace_values, brute_count, cor2_rhs, cor_1_4_count, cor_1_5_count, cor_1_6_count,
    mt1_count, mt6_count, sample_params, CurveParams, Family, GPath, Sample,
};
use hypercount::padic::{g_fast, GnnEvaluator, GnnParams, PadicCtx, Precision, PreparedGnn};
use hypercount::verify::{verify_identities, Status, VerifyOptions};
use hypercount::{FieldCtx, Result};

const QS: [u64; 11] = [5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29];

fn field(q: u64) -> FieldCtx {
    FieldCtx::from_order(q, 10_000).expect("odd prime power")
}

fn g_eval(f: &FieldCtx) -> GnnEvaluator<'_> {
    GnnEvaluator::new(f, GnnParams::g_function(), Precision::Auto, false).unwrap()
}

fn half_eval(f: &FieldCtx) -> GnnEvaluator<'_> {
    GnnEvaluator::new(f, GnnParams::half(), Precision::Auto, false).unwrap()
}

/// Outcome of one criterion: pass flag and a short detail line.
struct Outcome(bool, String);

fn collect(failures: Vec<String>, checked: usize, extra: &str) -> Outcome {
    if failures.is_empty() {
        Outcome(true, format!("{checked} checks{extra}"))
    } else {
        let n = failures.len();
        let shown: Vec<&str> = failures.iter().take(6).map(String::as_str).collect();
        Outcome(false, format!("{n} of {checked} checks failed{extra}: {}", shown.join("; ")))
    }
}

fn mt1_both(f: &FieldCtx, cp: &CurveParams) -> Result<i64> {
    let ev = g_eval(f);
    Ok(mt1_count(f, cp, GPath::Both(&ev))?.count)
}

/// Counts for fixed integer coefficients against per-q expected values.
fn example(coeffs: [i64; 6], cases: &[(u64, i64)], general: impl Fn(&FieldCtx, &CurveParams) -> Result<i64>) -> Vec<String> {
    let mut failures = Vec::new();
    for &(q, expected) in cases {
        let f = field(q);
        let cp = CurveParams::from_ints(&f, coeffs).unwrap();
        let brute = brute_count(&f, &cp) as i64;
        let formula = general(&f, &cp);
        if brute != expected || formula.as_ref().ok() != Some(&expected) {
            failures.push(format!("q={q}: expected {expected}, brute {brute}, formula {formula:?}"));
        }
    }
    failures
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(u64, i64)> = [5, 13, 17, 25, 29].iter().map(|&q| (q, 3 * (q as i64 - 1))).collect();
    cases.extend([7u64, 11, 19, 23, 27].iter().map(|&q| (q, q as i64 - 1)));
    let failures = example([1, -1, 2, 1, -1, -2], &cases, mt1_both);
    let secs = start.elapsed().as_secs_f64();
    let mut out = collect(failures, cases.len(), &format!(", {secs:.3} s"));
    if secs >= 1.0 {
        out.0 = false;
        out.1.push_str(" (over 1 s)");
    }
    out
}

fn criterion_2() -> Outcome {
    let mut cases: Vec<(u64, i64)> = [5, 13, 17, 25, 29].iter().map(|&q| (q, q as i64 - 1)).collect();
    cases.extend([7u64, 11, 19, 23, 27].iter().map(|&q| (q, 3 * (q as i64 - 1))));
    collect(example([1, -1, 2, -1, 1, 2], &cases, mt1_both), cases.len(), "")
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(u64, i64)> = [17, 25, 41].iter().map(|&q| (q, 3 * q as i64 - 5)).collect();
    cases.extend([5u64, 13, 29].iter().map(|&q| (q, 3 * q as i64 - 1)));
    let general = |f: &FieldCtx, cp: &CurveParams| -> Result<i64> {
        let mt6 = mt6_count(f, cp, &half_eval(f))?.count;
        let closed = cor_1_6_count(f, cp)?;
        // report a disagreement between the two evaluators as a wrong count
        Ok(if mt6 == closed { mt6 } else { i64::MIN })
    };
    collect(example([1, 1, 2, 1, 1, 2], &cases, general), cases.len(), "")
}

fn curve_samples(f: &FieldCtx, fam: Family, n: usize) -> Vec<CurveParams> {
    sample_params(f, fam, 1, n)
        .unwrap()
        .into_iter()
        .map(|s| match s {
            Sample::Curve(cp) => cp,
            _ => unreachable!(),
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let (mut failures, mut checked) = (Vec::new(), 0);
    for q in QS {
        let f = field(q);
        for cp in curve_samples(&f, Family::Mt1, 50) {
            checked += 1;
            let brute = brute_count(&f, &cp) as i64;
            match mt1_count(&f, &cp, GPath::Fast) {
                Ok(fc) if fc.count == brute => {}
                other => failures.push(format!("q={q} {cp:?}: brute {brute}, formula {other:?}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let mut out = collect(failures, checked, &format!(", {secs:.2} s"));
    if secs >= 300.0 {
        out.0 = false;
    }
    out
}

fn criterion_5() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for q in QS {
        let f = field(q);
        let half = half_eval(&f);
        for cp in curve_samples(&f, Family::Mt6, 50) {
            checked += 1;
            let brute = brute_count(&f, &cp) as i64;
            match mt6_count(&f, &cp, &half) {
                Ok(fc) if fc.count == brute => {}
                other => failures.push(format!("q={q} {cp:?}: brute {brute}, formula {other:?}")),
            }
        }
    }
    collect(failures, checked, "")
}

fn criterion_6() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for q in QS {
        let f = field(q);
        let ev = g_eval(&f);
        for t in f.units() {
            checked += 1;
            let fast = g_fast(&f, t);
            let padic = ev.eval(t).map(|v| v.as_integer());
            if !matches!((&fast, &padic), (Ok(a), Ok(Some(b))) if a == b) {
                failures.push(format!("q={q} t={}: fast {fast:?}, padic {padic:?}", f.format(t)));
            }
        }
        let expected = if q % 8 == 1 || q % 8 == 7 { 1 } else { -1 };
        checked += 1;
        let g1 = ev.eval(f.one()).map(|v| v.as_integer());
        if !matches!(g1, Ok(Some(v)) if v == expected) {
            failures.push(format!("q={q}: G(1) = {g1:?}, expected {expected}"));
        }
    }
    collect(failures, checked, "")
}

fn criterion_7() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for q in QS {
        let f = field(q);
        let half = half_eval(&f);
        for s in sample_params(&f, Family::Bs1, 1, 20).unwrap() {
            let Sample::Elliptic(ep) = s else { unreachable!() };
            checked += 1;
            match bs1_trace_values(&f, &ep, &half) {
                Ok((b, v)) if b == v => {}
                other => failures.push(format!("q={q} {ep:?}: {other:?}")),
            }
        }
    }
    collect(failures, checked, "")
}

fn criterion_8() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    for q in QS {
        let f = field(q);
        for s in sample_params(&f, Family::Cor2, 1, 20).unwrap() {
            let Sample::CurveWithElliptic(cp, ep) = s else { unreachable!() };
            checked += 1;
            let brute = brute_count(&f, &cp) as i64;
            match cor2_rhs(&f, &cp, &ep) {
                Ok(fc) if fc.count == brute => {}
                other => failures.push(format!("q={q} {cp:?} {ep:?}: brute {brute}, rhs {other:?}")),
            }
        }
    }
    collect(failures, checked, "")
}

fn criterion_9() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    let mut push = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            failures.push(what);
        }
    };
    for q in QS {
        let f = field(q);
        for cp in curve_samples(&f, Family::Cor14, 20) {
            let brute = brute_count(&f, &cp) as i64;
            let closed = cor_1_4_count(&f, &cp);
            let general = mt1_count(&f, &cp, GPath::Fast).map(|c| c.count);
            push(
                closed.as_ref().ok() == Some(&brute) && general.as_ref().ok() == Some(&brute),
                format!("cor_1_4 q={q}: brute {brute}, closed {closed:?}, mt1 {general:?}"),
            );
        }
        if q % 4 == 1 {
            let half = half_eval(&f);
            for cp in curve_samples(&f, Family::Cor16, 20) {
                let brute = brute_count(&f, &cp) as i64;
                let closed = cor_1_6_count(&f, &cp);
                let general = mt6_count(&f, &cp, &half).map(|c| c.count);
                push(
                    closed.as_ref().ok() == Some(&brute) && general.as_ref().ok() == Some(&brute),
                    format!("cor_1_6 q={q}: brute {brute}, closed {closed:?}, mt6 {general:?}"),
                );
            }
        }
        for s in sample_params(&f, Family::Cor15, 1, 20).unwrap() {
            let Sample::Edwards(ep) = s else { unreachable!() };
            let cp = ep.to_curve(&f);
            let delta = ep.delta(&f);
            let classes = f.quad_char(ep.ell) == -1 && f.quad_char(f.div(delta, ep.ell).unwrap()) == -1;
            let brute = brute_count(&f, &cp) as i64;
            let closed = cor_1_5_count(&f, &ep, GPath::Fast).map(|c| c.count);
            let general = mt1_count(&f, &cp, GPath::Fast).map(|c| c.count);
            push(
                classes && closed.as_ref().ok() == Some(&brute) && general.as_ref().ok() == Some(&brute),
                format!("cor_1_5 q={q}: brute {brute}, closed {closed:?}, mt1 {general:?}, classes {classes}"),
            );
        }
    }
    collect(failures, checked, "")
}

/// Runs the identity suite and keeps the reports whose names are listed.
fn identity_failures(qs: &[u64], names: &[&str]) -> (Vec<String>, usize) {
    let (mut failures, mut checked) = (Vec::new(), 0);
    let opts = VerifyOptions {
        identity_samples: 200,
        ..Default::default()
    };
    for &q in qs {
        let f = field(q);
        for r in verify_identities(&f, &opts) {
            let name = r.params.get("identity").cloned().unwrap_or_default();
            if !names.contains(&name.as_str()) {
                continue;
            }
            checked += r.cases.unwrap_or(1);
            if r.status != Status::Pass {
                failures.push(format!("q={q} {name}: {}", r.reason.unwrap_or_default()));
            }
        }
    }
    (failures, checked)
}

fn criterion_10() -> Outcome {
    let names = [
        "theta_expansion",
        "gauss_reflection",
        "gauss_norm",
        "jacobi_gauss",
        "davenport_hasse",
        "hp_four_gauss",
        "greene_2f1_forms",
        "greene_transform",
        "orthogonality",
    ];
    let (mut failures, mut checked) = identity_failures(&[5, 7, 9, 13, 17, 25], &names);
    let (f2, c2) = identity_failures(&[5, 7, 9, 13], &["g_char_sum_bridge"]);
    failures.extend(f2);
    checked += c2;
    collect(failures, checked, " (case count)")
}

fn criterion_11() -> Outcome {
    let names = [
        "floor_lemma_d",
        "floor_lemma_l",
        "gamma_product_neg",
        "gamma_product_pos",
    ];
    let (mut failures, mut checked) = identity_failures(&[5, 9, 13], &names);
    let (f2, c2) = identity_failures(&QS, &["gross_koblitz_unit"]);
    failures.extend(f2);
    checked += c2;
    collect(failures, checked, " (case count)")
}

fn criterion_12() -> Outcome {
    let (mut failures, mut checked) = (Vec::new(), 0);
    let mut qs = QS.to_vec();
    qs.push(41);
    for q in qs {
        let f = field(q);
        for params in [GnnParams::g_function(), GnnParams::half()] {
            let lo = PadicCtx::new(&f, Precision::Auto).unwrap();
            let m = lo.precision();
            let hi = PadicCtx::new(&f, Precision::Fixed(m + 4)).unwrap();
            let lo = PreparedGnn::new(lo, params.clone()).unwrap();
            let hi = PreparedGnn::new(hi, params.clone()).unwrap();
            for t in f.units() {
                checked += 1;
                let (a, b) = (lo.eval(t), hi.eval(t));
                let same = matches!((&a, &b), (Ok(x), Ok(y)) if x.same_value(y));
                if !same {
                    failures.push(format!("q={q} {params} t={}: M={m} {a:?}, M={} {b:?}", f.format(t), m + 4));
                }
            }
        }
    }
    collect(failures, checked, "")
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("(1,-1,2,1,-1,-2) closed counts", criterion_1),
        ("(1,-1,2,-1,1,2) closed counts", criterion_2),
        ("(1,1,2,1,1,2) closed counts", criterion_3),
        ("mt1 against brute force", criterion_4),
        ("mt6 against brute force", criterion_5),
        ("G closed form against 2G2", criterion_6),
        ("elliptic trace via 2G2", criterion_7),
        ("cor_2 against brute force", criterion_8),
        ("cor_1_4, cor_1_5, cor_1_6 triple agreement", criterion_9),
        ("character-sum identities", criterion_10),
        ("p-adic lemmas", criterion_11),
        ("precision stability at M+4", criterion_12),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let Outcome(ok, detail) = run();
        all &= ok;
        println!(
            "criterion {:>2} {}: {name} ({detail}; {:.2} s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
