//! Verification campaigns: curve families against brute force, the
//! G-function end to end, and the character-sum and p-adic identity suites.
//! Each check yields a [`VerificationReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chars::{orthogonality_characters_defect, orthogonality_elements_defect, Identity};
use crate::chars::{CharTable, MultChar};
use crate::curves::{
    bs1_trace_values, brute_count, cor2_rhs, cor_1_4_count, cor_1_5_count, cor_1_6_count, i2_prime,
    mt1_count, mt6_count, sample_params, Family, FormulaCount, GPath, Sample, Term,
};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::padic::{g_fast, GnnEvaluator, GnnParams, PadicCtx, PadicIdentity, Precision, Rational};

/// A verification suite selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Suite {
    Family(Family),
    /// G(t) by closed form and by 2G2 at every t.
    GFunction,
    Identities,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Family(f) => f.name(),
            Suite::GFunction => "g_function",
            Suite::Identities => "identities",
        }
    }

    pub fn all() -> Vec<Suite> {
        let mut v: Vec<Suite> = Family::ALL.iter().map(|&f| Suite::Family(f)).collect();
        v.push(Suite::GFunction);
        v.push(Suite::Identities);
        v
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "g_function" => Ok(Suite::GFunction),
            "identities" => Ok(Suite::Identities),
            _ => s.parse().map(Suite::Family),
        }
    }
}

/// Which G path MT-1-type formulas use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GMode {
    #[default]
    Fast,
    Padic,
    Both,
}

impl FromStr for GMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(GMode::Fast),
            "padic" => Ok(GMode::Padic),
            "both" => Ok(GMode::Both),
            _ => Err(Error::BadParams(format!("unknown G path `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub precision: Precision,
    pub g_mode: GMode,
    /// Recompute every recognized value at M + 4.
    pub stability_check: bool,
    /// Overrides 1e-6 q^2.5 for the complex identity suite.
    pub tolerance: Option<f64>,
    /// Random character choices per identity when q > 9.
    pub identity_samples: usize,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            samples: 50,
            seed: 0,
            precision: Precision::Auto,
            g_mode: GMode::Fast,
            stability_check: true,
            tolerance: None,
            identity_samples: 200,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The outcome of one check.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub index: usize,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<i64>,
    /// Further evaluators that must agree (closed forms, general formulas).
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub other: BTreeMap<String, i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<Term>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_path: Option<String>,
    /// Largest |LHS - RHS| for tolerance-based checks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cases: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl VerificationReport {
    fn new(family: &str, index: usize) -> Self {
        VerificationReport {
            family: family.to_string(),
            index,
            params: BTreeMap::new(),
            brute: None,
            formula: None,
            other: BTreeMap::new(),
            terms: Vec::new(),
            g_path: None,
            max_defect: None,
            cases: None,
            status: Status::Pass,
            reason: None,
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn fail(&mut self, reason: impl Into<String>) {
        self.status = Status::Fail;
        if self.reason.is_none() {
            self.reason = Some(reason.into());
        }
    }

    fn set_formula(&mut self, fc: FormulaCount) {
        self.formula = Some(fc.count);
        self.terms = fc.terms;
    }
}

/// Field identification for reports.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FieldId {
    pub p: u64,
    pub r: u32,
    pub modulus: Vec<u64>,
}

impl FieldId {
    pub fn of(field: &FieldCtx) -> Self {
        FieldId {
            p: field.p(),
            r: field.r(),
            modulus: field.modulus().to_vec(),
        }
    }
}

fn timed<T>(enabled: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let out = f();
    (out, enabled.then(|| start.elapsed().as_secs_f64() * 1e3))
}

/// Runs one suite over one field.
pub fn run_suite(field: &FieldCtx, suite: Suite, opts: &VerifyOptions) -> Vec<VerificationReport> {
    match suite {
        Suite::Family(f) => verify_family(field, f, opts),
        Suite::GFunction => verify_g_function(field, opts),
        Suite::Identities => verify_identities(field, opts),
    }
}

fn evaluator<'f>(field: &'f FieldCtx, params: GnnParams, opts: &VerifyOptions) -> Result<GnnEvaluator<'f>> {
    GnnEvaluator::new(field, params, opts.precision, opts.stability_check)
}

fn error_report(family: &str, e: &Error) -> VerificationReport {
    let mut r = VerificationReport::new(family, 0);
    r.fail(e.to_string());
    r
}

/// Samples the family and checks every tuple against brute force.
pub fn verify_family(field: &FieldCtx, family: Family, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let name = family.name();
    let samples = match sample_params(field, family, opts.seed, opts.samples) {
        Ok(s) => s,
        Err(e @ Error::Unsatisfiable { .. }) => {
            let mut r = VerificationReport::new(name, 0);
            r.status = Status::Skipped;
            r.reason = Some(e.to_string());
            return vec![r];
        }
        Err(e) => return vec![error_report(name, &e)],
    };
    let needs_g = matches!(family, Family::Mt1 | Family::Cor14 | Family::Cor15);
    let g_ev = if needs_g && opts.g_mode != GMode::Fast {
        match evaluator(field, GnnParams::g_function(), opts) {
            Ok(ev) => Some(ev),
            Err(e) => return vec![error_report(name, &e)],
        }
    } else {
        None
    };
    let needs_half = matches!(family, Family::Mt6 | Family::Cor16 | Family::Bs1);
    let half_ev = if needs_half {
        match evaluator(field, GnnParams::half(), opts) {
            Ok(ev) => Some(ev),
            Err(e) => return vec![error_report(name, &e)],
        }
    } else {
        None
    };
    let path = match (opts.g_mode, &g_ev) {
        (GMode::Padic, Some(ev)) => GPath::Padic(ev),
        (GMode::Both, Some(ev)) => GPath::Both(ev),
        _ => GPath::Fast,
    };

    samples
        .iter()
        .enumerate()
        .map(|(index, sample)| {
            let mut rep = VerificationReport::new(name, index);
            rep.params = sample.describe(field).into_iter().collect();
            let (res, ms) = timed(opts.timings, || {
                check_sample(field, family, sample, path, half_ev.as_ref(), &mut rep)
            });
            if let Err(e) = res {
                rep.fail(e.to_string());
            }
            rep.timing_ms = ms;
            rep
        })
        .collect()
}

fn agree(rep: &mut VerificationReport) {
    let mut values: Vec<(String, i64)> = Vec::new();
    if let Some(b) = rep.brute {
        values.push(("brute".into(), b));
    }
    if let Some(f) = rep.formula {
        values.push(("formula".into(), f));
    }
    values.extend(rep.other.iter().map(|(k, v)| (k.clone(), *v)));
    if let Some((first, v0)) = values.first().cloned() {
        if let Some((k, v)) = values.iter().find(|(_, v)| *v != v0) {
            rep.fail(format!("{first} = {v0} but {k} = {v}"));
        }
    }
}

fn check_sample(
    field: &FieldCtx,
    family: Family,
    sample: &Sample,
    path: GPath<'_, '_>,
    half: Option<&GnnEvaluator<'_>>,
    rep: &mut VerificationReport,
) -> Result<()> {
    match (family, sample) {
        (Family::Mt1, Sample::Curve(cp)) => {
            rep.g_path = Some(path.name().into());
            rep.brute = Some(brute_count(field, cp) as i64);
            rep.set_formula(mt1_count(field, cp, path)?);
            let (i2, i2c) = (i2_prime(field, cp, false)?, i2_prime(field, cp, true)?);
            if i2 != i2c {
                rep.fail(format!("I2' depends on the choice of χ_4: {i2} vs {i2c}"));
            }
        }
        (Family::Mt6, Sample::Curve(cp)) => {
            rep.g_path = Some("padic".into());
            rep.brute = Some(brute_count(field, cp) as i64);
            rep.set_formula(mt6_count(field, cp, half.expect("half evaluator"))?);
        }
        (Family::Cor14, Sample::Curve(cp)) => {
            rep.g_path = Some(path.name().into());
            rep.brute = Some(brute_count(field, cp) as i64);
            rep.formula = Some(cor_1_4_count(field, cp)?);
            let general = mt1_count(field, cp, path)?;
            rep.other.insert("mt1".into(), general.count);
            rep.terms = general.terms;
        }
        (Family::Cor16, Sample::Curve(cp)) => {
            rep.g_path = Some("padic".into());
            rep.brute = Some(brute_count(field, cp) as i64);
            rep.formula = Some(cor_1_6_count(field, cp)?);
            let general = mt6_count(field, cp, half.expect("half evaluator"))?;
            rep.other.insert("mt6".into(), general.count);
            rep.terms = general.terms;
        }
        (Family::Cor15, Sample::Edwards(ep)) => {
            rep.g_path = Some(path.name().into());
            let cp = ep.to_curve(field);
            let delta = ep.delta(field);
            if field.quad_char(ep.ell) != -1 || field.quad_char(field.div(delta, ep.ell)?) != -1 {
                rep.fail("ℓ or Δ/ℓ is a square");
            }
            rep.brute = Some(brute_count(field, &cp) as i64);
            rep.set_formula(cor_1_5_count(field, ep, path)?);
            rep.other.insert("mt1".into(), mt1_count(field, &cp, path)?.count);
        }
        (Family::Cor2, Sample::CurveWithElliptic(cp, ep)) => {
            rep.brute = Some(brute_count(field, cp) as i64);
            rep.set_formula(cor2_rhs(field, cp, ep)?);
        }
        (Family::Bs1, Sample::Elliptic(ep)) => {
            rep.g_path = Some("padic".into());
            let (brute, formula) = bs1_trace_values(field, ep, half.expect("half evaluator"))?;
            rep.brute = Some(brute);
            rep.formula = Some(formula);
            if brute * brute > 4 * field.q() as i64 {
                rep.fail(format!("trace {brute} violates the Hasse bound"));
            }
        }
        _ => unreachable!("sampler returns the family's own sample kind"),
    }
    agree(rep);
    Ok(())
}

/// g_fast(t) against 2G2[1/4, 3/4; 0, 1/2 | t] for every t ≠ 0.
pub fn verify_g_function(field: &FieldCtx, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let name = Suite::GFunction.name();
    let ev = match evaluator(field, GnnParams::g_function(), opts) {
        Ok(ev) => ev,
        Err(e) => return vec![error_report(name, &e)],
    };
    field
        .units()
        .enumerate()
        .map(|(index, t)| {
            let mut rep = VerificationReport::new(name, index);
            rep.params.insert("t".into(), field.format(t));
            rep.g_path = Some("both".into());
            let (res, ms) = timed(opts.timings, || -> Result<()> {
                let fast = g_fast(field, t)?;
                rep.formula = Some(fast);
                let v = ev.eval(t)?;
                match v.as_integer() {
                    Some(n) => {
                        rep.other.insert("padic".into(), n);
                        if n != fast {
                            rep.fail(format!("closed form {fast}, p-adic {n}"));
                        }
                    }
                    None => rep.fail(format!("p-adic value {v} is not an integer")),
                }
                Ok(())
            });
            if let Err(e) = res {
                rep.fail(e.to_string());
            }
            rep.timing_ms = ms;
            rep
        })
        .collect()
}

/// Character choices: all of them when q <= 9, otherwise `n` random ones.
fn choices<T>(q: u64, n: usize, all: impl Iterator<Item = T>, rng: &mut ChaCha8Rng, draw: impl Fn(&mut ChaCha8Rng) -> T) -> Vec<T> {
    if q <= 9 {
        all.collect()
    } else {
        (0..n).map(|_| draw(rng)).collect()
    }
}

struct Aggregate {
    name: &'static str,
    cases: usize,
    max_defect: f64,
    error: Option<String>,
}

impl Aggregate {
    fn new(name: &'static str) -> Self {
        Aggregate {
            name,
            cases: 0,
            max_defect: 0.0,
            error: None,
        }
    }

    fn push(&mut self, d: Result<f64>) {
        self.cases += 1;
        match d {
            Ok(d) => self.max_defect = self.max_defect.max(d),
            Err(e) => {
                self.error.get_or_insert(e.to_string());
            }
        }
    }

    fn report(self, index: usize, tol: f64) -> VerificationReport {
        let mut rep = VerificationReport::new(Suite::Identities.name(), index);
        rep.params.insert("identity".into(), self.name.into());
        rep.cases = Some(self.cases);
        rep.max_defect = Some(self.max_defect);
        if let Some(e) = self.error {
            rep.fail(e);
        } else if !(self.max_defect < tol) {
            rep.fail(format!("defect {:.3e} exceeds tolerance {tol:.3e}", self.max_defect));
        }
        rep
    }
}

struct ExactCheck {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl ExactCheck {
    fn new(name: &'static str) -> Self {
        ExactCheck {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn push(&mut self, ok: Result<bool>, what: impl FnOnce() -> String) {
        self.cases += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => {
                self.failures += 1;
                self.first_failure.get_or_insert_with(what);
            }
            Err(e) => {
                self.failures += 1;
                self.first_failure.get_or_insert(e.to_string());
            }
        }
    }

    fn report(self, index: usize) -> VerificationReport {
        let mut rep = VerificationReport::new(Suite::Identities.name(), index);
        rep.params.insert("identity".into(), self.name.into());
        rep.cases = Some(self.cases);
        if self.failures > 0 {
            rep.fail(format!(
                "{} of {} cases fail, first: {}",
                self.failures,
                self.cases,
                self.first_failure.unwrap_or_default()
            ));
        }
        rep
    }
}

/// The character-sum identities (complex engine, tolerance-based) and the
/// p-adic identities (exact or mod p^M).
pub fn verify_identities(field: &FieldCtx, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let mut reports = char_identity_reports(field, opts);
    reports.extend(padic_identity_reports(field, opts));
    for (i, r) in reports.iter_mut().enumerate() {
        r.index = i;
    }
    reports
}

fn char_identity_reports(field: &FieldCtx, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let table = CharTable::new(field);
    let tol = opts.tolerance.unwrap_or_else(|| table.tolerance());
    let q = field.q();
    let n = table.n() as i64;
    let ns = opts.identity_samples;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ q.rotate_left(17));
    let chars: Vec<MultChar> = table.characters().collect();
    let rand_char = |rng: &mut ChaCha8Rng| MultChar::new(rng.gen_range(0..n), n as u64);
    let rand_elem = |rng: &mut ChaCha8Rng| field.elem(rng.gen_range(0..q) as u32).expect("index < q");
    let mut out = Vec::new();

    let mut agg = Aggregate::new("theta_expansion");
    for alpha in field.units() {
        agg.push(table.identity_defect(Identity::ThetaExpansion { alpha }));
    }
    out.push(agg);

    let mut agg = Aggregate::new("gauss_reflection");
    for &chi in &chars {
        agg.push(table.identity_defect(Identity::GaussReflection { chi }));
    }
    out.push(agg);

    let mut agg = Aggregate::new("gauss_norm");
    for &chi in chars.iter().filter(|c| !c.is_trivial()) {
        agg.push(Ok((table.gauss_complex(chi).norm_sqr() - q as f64).abs()));
    }
    out.push(agg);

    let mut agg = Aggregate::new("jacobi_gauss");
    let pairs = choices(
        q,
        ns,
        chars.iter().flat_map(|&a| chars.iter().map(move |&b| (a, b))),
        &mut rng,
        |r| (rand_char(r), rand_char(r)),
    );
    for (a, b) in pairs {
        agg.push(table.identity_defect(Identity::JacobiGauss { a, b }));
    }
    out.push(agg);

    let mut agg = Aggregate::new("davenport_hasse");
    for m in [2u64, 4] {
        if (q - 1) % m == 0 {
            for &a in &chars {
                agg.push(table.identity_defect(Identity::DavenportHasse { m, a }));
            }
        }
    }
    out.push(agg);

    let mut agg = Aggregate::new("hp_four_gauss");
    let quads = choices(
        q,
        ns,
        chars.iter().flat_map(|&a| {
            let chars = &chars;
            chars.iter().flat_map(move |&b| {
                chars
                    .iter()
                    .flat_map(move |&c| chars.iter().map(move |&d| (a, b, c, d)))
            })
        }),
        &mut rng,
        |r| (rand_char(r), rand_char(r), rand_char(r), rand_char(r)),
    );
    for (a, b, c, d) in quads {
        agg.push(table.identity_defect(Identity::HpFourGauss { a, b, c, d }));
    }
    out.push(agg);

    let elems = field.element_list();
    let triples_x = choices(
        q,
        ns,
        chars.iter().flat_map(|&a| {
            let (chars, elems) = (&chars, &elems);
            chars.iter().flat_map(move |&b| {
                chars
                    .iter()
                    .flat_map(move |&c| elems.iter().map(move |&x| (a, b, c, x)))
            })
        }),
        &mut rng,
        |r| (rand_char(r), rand_char(r), rand_char(r), rand_elem(r)),
    );
    let mut forms = Aggregate::new("greene_2f1_forms");
    let mut transform = Aggregate::new("greene_transform");
    for &(a, b, c, x) in &triples_x {
        forms.push(table.identity_defect(Identity::Greene2F1Forms { a, b, c, x }));
        transform.push(table.identity_defect(Identity::GreeneTransform { a, b, c, x }));
    }
    out.push(forms);
    out.push(transform);

    let mut agg = Aggregate::new("orthogonality");
    agg.push(Ok(orthogonality_elements_defect(&table)));
    agg.push(Ok(orthogonality_characters_defect(&table)));
    out.push(agg);

    // exact and complex engines agree on characters of order dividing 4
    let mut agg = Aggregate::new("exact_complex_agreement");
    let small: Vec<MultChar> = chars.iter().copied().filter(|c| c.has_exact_values()).collect();
    for &a in &small {
        for &b in &small {
            let exact = table.jacobi_sum(a, b);
            let complex = table.jacobi_sum_with(crate::chars::Engine::Complex, a, b);
            agg.push(Ok(exact.distance(&complex)));
        }
    }
    out.push(agg);

    let mut agg = Aggregate::new("g_char_sum_bridge");
    let qf = q as f64;
    for x in field.units() {
        let d = (|| -> Result<f64> {
            let lhs = table.g_char_sum(x)?;
            let g = g_fast(field, field.inv(x)?)? as f64;
            let phi = field.quad_char(field.neg(x)) as f64;
            Ok((lhs.to_complex() - num_complex::Complex64::new(qf * (qf - 1.0) * phi * g, 0.0)).norm())
        })();
        agg.push(d);
    }
    out.push(agg);

    out.into_iter()
        .enumerate()
        .map(|(i, a)| a.report(i, tol))
        .collect()
}

fn padic_identity_reports(field: &FieldCtx, opts: &VerifyOptions) -> Vec<VerificationReport> {
    let ctx = match PadicCtx::new(field, opts.precision) {
        Ok(c) => c,
        Err(e) => return vec![error_report(Suite::Identities.name(), &e)],
    };
    let p = field.p();
    let q = field.q();
    let r = field.r();
    let mut out = Vec::new();

    let mut chk = ExactCheck::new("floor_lemma_d");
    for d in [2u64, 4].into_iter().filter(|d| d % p != 0) {
        for j in 1..=q - 2 {
            for i in 0..r {
                let id = PadicIdentity::FloorLemmaD { d, j, i };
                chk.push(ctx.padic_identity_holds(id), || format!("{id:?}"));
            }
        }
    }
    out.push(chk);

    let mut chk = ExactCheck::new("floor_lemma_l");
    for l in [2u64, 4].into_iter().filter(|l| l % p != 0) {
        for j in 0..=q - 2 {
            for i in 0..r {
                let id = PadicIdentity::FloorLemmaL { l, j, i };
                chk.push(ctx.padic_identity_holds(id), || format!("{id:?}"));
            }
        }
    }
    out.push(chk);

    let mut neg = ExactCheck::new("gamma_product_neg");
    let mut pos = ExactCheck::new("gamma_product_pos");
    for t in [2u64, 4].into_iter().filter(|t| t % p != 0) {
        for j in 0..=q - 2 {
            let id = PadicIdentity::GammaProductNeg { t, j };
            neg.push(ctx.padic_identity_holds(id), || format!("{id:?}"));
            let id = PadicIdentity::GammaProductPos { t, j };
            pos.push(ctx.padic_identity_holds(id), || format!("{id:?}"));
        }
    }
    out.push(neg);
    out.push(pos);

    let mut chk = ExactCheck::new("gross_koblitz_unit");
    chk.push(ctx.padic_identity_holds(PadicIdentity::GrossKoblitzUnit), String::new);
    out.push(chk);

    // Γ_p(x) mod p^M is the same whether x is lifted mod p^M or mod p^{M+2}
    let mut chk = ExactCheck::new("gamma_well_defined");
    match PadicCtx::new(field, Precision::Fixed(ctx.precision() + 2)) {
        Ok(hi) => {
            let pm = ctx.modulus_pm();
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6a09e667 ^ q);
            for _ in 0..50 {
                let den = loop {
                    let d = rng.gen_range(1..40i128);
                    if d % p as i128 != 0 {
                        break d;
                    }
                };
                let num = rng.gen_range(-200..200i128);
                let x = Rational::new(num, den);
                let ok = ctx
                    .gamma_p_rational(x)
                    .and_then(|lo| hi.gamma_p_rational(x).map(|h| h % pm == lo));
                chk.push(ok, || format!("Γ_p({x})"));
            }
        }
        Err(e) => chk.push(Err(e), String::new),
    }
    out.push(chk);

    let mut chk = ExactCheck::new("teichmuller");
    let units: Vec<_> = field.units().collect();
    for &x in &units {
        let ok = ctx.teichmuller(x).map(|w| {
            ctx.pow(&w, (q - 1) as u128) == ctx.one() && ctx.reduce_to_field(&w).ok() == Some(x)
        });
        chk.push(ok, || format!("ω({})", field.format(x)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xbb67ae85 ^ q);
    for _ in 0..200 {
        let x = units[rng.gen_range(0..units.len())];
        let y = units[rng.gen_range(0..units.len())];
        let ok = (|| -> Result<bool> {
            let lhs = ctx.teichmuller(field.mul(x, y))?;
            Ok(lhs == ctx.mul(&ctx.teichmuller(x)?, &ctx.teichmuller(y)?))
        })();
        chk.push(ok, || format!("ω({} · {})", field.format(x), field.format(y)));
    }
    out.push(chk);

    out.into_iter()
        .enumerate()
        .map(|(i, c)| c.report(i))
        .collect()
}
