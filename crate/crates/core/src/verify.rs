//! Self-checks exposed through `bicrit verify <suite>`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::curves::{self, known};
use crate::algebra::{IntPoly, Var};
use crate::boettcher::{self, EKind};
use crate::error::{Error, Result};
use crate::family::{self, FamilyParams, DEFAULT_THETA};
use crate::orbit::{self, ClassTag, OrbitSettings, PointClass, DEFAULT_BUDGET, VERIFY_BUDGET};
use crate::sphere::ExtComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lemma1,
    Symmetry,
    Resultants,
    Critical,
    Greens,
    EAsymptotic,
    QkOrder,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lemma1,
        Suite::Symmetry,
        Suite::Resultants,
        Suite::Critical,
        Suite::Greens,
        Suite::EAsymptotic,
        Suite::QkOrder,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::Symmetry => "symmetry",
            Suite::Resultants => "resultants",
            Suite::Critical => "critical",
            Suite::Greens => "greens",
            Suite::EAsymptotic => "easymptotic",
            Suite::QkOrder => "qkorder",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of one suite. `output` holds informational `key=value` lines.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub output: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: vec![], output: vec![] }
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    fn info(&mut self, key: &str, value: impl fmt::Display) {
        self.output.push(format!("{key}={value}"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    match suite {
        Suite::Lemma1 => lemma1(),
        Suite::Symmetry => symmetry(),
        Suite::Resultants => resultants(),
        Suite::Critical => critical(),
        Suite::Greens => greens(),
        Suite::EAsymptotic => easymptotic(),
        Suite::QkOrder => qkorder(),
    }
}

/// `(7 - 3 sqrt 5)/2`, written without cancellation.
pub fn superattracting_t() -> f64 {
    2.0 / (7.0 + 3.0 * 5f64.sqrt())
}

/// Radical inverse of `i` in base `b` (van der Corput).
fn radical_inverse(mut i: u64, b: u64) -> f64 {
    let mut inv = 1.0 / b as f64;
    let mut x = 0.0;
    while i > 0 {
        x += (i % b) as f64 * inv;
        i /= b;
        inv /= b as f64;
    }
    x
}

/// `count` points of the closed disc `|z| <= radius` (Halton, area-uniform,
/// the last one on the rim).
pub fn disc_samples(radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|i| {
            let u = if i + 1 == count { 1.0 } else { radical_inverse(i as u64 + 1, 2) };
            let v = radical_inverse(i as u64 + 1, 3);
            Complex64::from_polar(radius * u.sqrt(), std::f64::consts::TAU * v)
        })
        .collect()
}

/// `count` parameters with `0 < |t| <= 1`, spiralling outward to `|t| = 1`.
pub fn unit_disc_params(count: usize) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| Complex64::from_polar((i + 1) as f64 / count as f64, golden * i as f64))
        .collect()
}

fn lemma1() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Lemma1);
    let r = 1.0 / 3.0;
    let mut worst = 0.0f64;
    let mut beta_ok = true;
    for t in unit_disc_params(50) {
        let p = FamilyParams::new(2, 1, t)?;
        let rad = r * t.norm();
        let disc = disc_samples(rad, 9000);
        let segment = (0..1000).map(|k| Complex64::new(k as f64 / 999.0, 0.0));
        for z in disc.into_iter().chain(segment) {
            let w = p.eval_map(ExtComplex::Finite(z)).norm();
            worst = worst.max(w / rad);
        }
        beta_ok &= p.v_beta().norm() > rad;
    }
    rep.check("trap image inside disc", worst < 1.0, format!("max |f_t(z)|/(r|t|) = {worst:.6}"));
    rep.check("v_beta outside disc", beta_ok, "50 parameters");

    let trap = family::trap_disc(2, 1, DEFAULT_THETA)?;
    let settings = OrbitSettings::with_budget(DEFAULT_BUDGET);
    let mut misses = vec![];
    for t in unit_disc_params(100) {
        let c = orbit::classify_parameter_with(&trap, t, &settings)?;
        if !matches!(c.alpha.outcome, PointClass::BasinZero { .. }) {
            misses.push(t);
        }
    }
    rep.check(
        "alpha orbit trapped for |t| <= 1",
        misses.is_empty(),
        format!("{} of 100 missed {misses:?}", misses.len()),
    );
    Ok(rep)
}

/// Polar grid of `k × k` parameters with `r_min <= |t| <= r_max`.
pub fn annulus_grid(k: usize, r_min: f64, r_max: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(k * k);
    for i in 0..k {
        let rho = r_min + (r_max - r_min) * i as f64 / (k - 1) as f64;
        for j in 0..k {
            // offset so no sample sits on the real axis
            let theta = std::f64::consts::TAU * (j as f64 + 0.37) / k as f64;
            out.push(Complex64::from_polar(rho, theta));
        }
    }
    out
}

/// Fraction of decided pairs `(t, t')`, `t' = (-1)^(d+1)/t`, whose classes
/// correspond under exchange of alpha and beta, with the pair counts.
pub fn symmetry_agreement(m: u32, n: u32, params: &[Complex64], budget: usize) -> Result<(f64, usize, usize)> {
    let trap = family::trap_disc(m, n, DEFAULT_THETA)?;
    let settings = OrbitSettings::with_budget(budget);
    let mut decided = 0;
    let mut agree = 0;
    for &t in params {
        let a = orbit::classify_parameter_with(&trap, t, &settings)?.class;
        let s = family::conjugate_param(t, m + n)?;
        let b = orbit::classify_parameter_with(&trap, s, &settings)?.class;
        if a.tag() == ClassTag::Undecided || b.tag() == ClassTag::Undecided {
            continue;
        }
        decided += 1;
        if a.mirror().tag() == b.tag() {
            agree += 1;
        }
    }
    let frac = if decided == 0 { 0.0 } else { agree as f64 / decided as f64 };
    Ok((frac, agree, decided))
}

fn symmetry() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Symmetry);
    let grid = annulus_grid(21, 0.2, 0.9);
    for (m, n) in [(2, 1), (3, 1), (2, 2)] {
        let (frac, agree, decided) = symmetry_agreement(m, n, &grid, DEFAULT_BUDGET)?;
        rep.check(
            &format!("mirror ({m},{n})"),
            frac >= 0.95 && decided > 0,
            format!("{agree}/{decided} decided pairs agree"),
        );
    }
    Ok(rep)
}

fn resultants() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Resultants);
    let rf = curves::multiplier_curve(2, 1)?;
    let rp = curves::pc_multiplier_curve(2, 1)?;
    let el = curves::eliminate_multiplier(&rf.primitive, &rp.primitive)?;
    rep.info("R_f", &rf.primitive);
    rep.info("R_f.content", &rf.content);
    rep.info("R_f.removed", join(&rf.removed_factors));
    rep.info("R_P", &rp.primitive);
    rep.info("R_P.content", &rp.content);
    rep.info("R_P.removed", join(&rp.removed_factors));
    rep.info("elimination", &el.raw);
    rep.check(
        "R_f",
        rf.verify() && curves::equal_up_to_sign(&rf.primitive, &known::rf_2_1()),
        format!("got {}", rf.primitive),
    );
    rep.check(
        "R_P",
        rp.verify() && curves::equal_up_to_sign(&rp.primitive, &known::rp_2_1()),
        format!("got {}", rp.primitive),
    );
    let sq = known::relation_2_1().pow(2);
    let k = curves::integer_multiple_of(&el.raw, &sq);
    rep.check(
        "elimination",
        k.is_some(),
        match &k {
            Some(k) => format!("{k} * ({})^2", known::relation_2_1()),
            None => format!("got {}", el.raw),
        },
    );
    let c1 = family::c_of_t(2, 1, Complex64::new(1.0, 0.0))?;
    rep.check("c_of_t(1) = -2", c1 == Complex64::new(-2.0, 0.0), format!("{c1}"));
    let c2 = family::c_of_t(2, 1, Complex64::new(superattracting_t(), 0.0))?;
    let err = (c2 + 4.5).norm();
    rep.check("c_of_t((7-3sqrt5)/2) = -9/2", err < 1e-12, format!("error {err:.3e}"));
    Ok(rep)
}

fn join(ps: &[IntPoly]) -> String {
    if ps.is_empty() {
        return "1".into();
    }
    ps.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join("*")
}

fn critical() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Critical);
    let mut worst = [0.0f64; 5];
    for m in 2..=6u32 {
        for n in 1..=6u32 {
            let cd = family::critical_data(m, n)?;
            let p = FamilyParams::new(m, n, Complex64::new(1.0, 0.0))?;
            let da = p.eval_derivative(ExtComplex::real(cd.alpha))?.norm();
            let db = p.eval_derivative(ExtComplex::real(cd.beta))?.norm();
            let vals = [
                (cd.alpha * cd.beta + 1.0).abs(),
                (cd.alpha + cd.beta + 2.0 * n as f64 / m as f64).abs(),
                da,
                db,
                ((cd.v_alpha_1 * cd.v_beta_1).abs() - 1.0).abs(),
            ];
            for (w, v) in worst.iter_mut().zip(vals) {
                *w = w.max(v);
            }
        }
    }
    rep.check("alpha*beta = -1", worst[0] < 1e-12, format!("{:.2e}", worst[0]));
    rep.check("alpha+beta = -2n/m", worst[1] < 1e-12, format!("{:.2e}", worst[1]));
    rep.check("f'(alpha) = 0", worst[2] < 1e-10, format!("{:.2e}", worst[2]));
    rep.check("f'(beta) = 0", worst[3] < 1e-10, format!("{:.2e}", worst[3]));
    rep.check("|v_alpha v_beta| = 1", worst[4] < 1e-9, format!("{:.2e}", worst[4]));

    let c = orbit::classify_parameter(2, 1, Complex64::new(1.0, 0.0), DEFAULT_BUDGET)?;
    let p = FamilyParams::new(2, 1, Complex64::new(1.0, 0.0))?;
    let escape = family::escape_radius(&p);
    rep.check(
        "t=1 both orbits resolve",
        c.class.tag() == ClassTag::BothEscape
            // the orbit starts at v_beta = f(beta), one step from the critical point
            && matches!(c.beta.outcome, PointClass::BasinInfinity { escape_time: 0 })
            && p.v_beta().norm() >= escape,
        format!("class {}, beta {:?}, R = {escape}", c.class.name(), c.beta.outcome),
    );

    let t = Complex64::new(superattracting_t(), 0.0);
    let p = FamilyParams::new(2, 1, t)?;
    let beta = ExtComplex::real(p.critical_data().beta);
    let tail: Vec<ExtComplex> = std::iter::successors(Some(p.v_beta()), |z| Some(p.eval_map(*z))).take(16).collect();
    let cycle = orbit::detect_cycle(&p, &tail, orbit::CYCLE_TOL);
    rep.check(
        "superattracting fixed point",
        cycle.is_some_and(|c| c.period == 1 && c.multiplier.norm() < 1e-8 && c.representative.dist(&beta) < 1e-8),
        format!("{cycle:?}"),
    );
    let rf = curves::multiplier_curve(2, 1)?.primitive;
    let at_zero = rf.eval(&[(Var::T, t), (Var::Lambda, Complex64::new(0.0, 0.0))]).norm();
    rep.check("R_f(t, 0) = 0", at_zero < 1e-10, format!("{at_zero:.2e}"));
    Ok(rep)
}

/// Up to `count` points of the `basin` (`true` for 0) of `f_t`, from a
/// deterministic spiral.
pub fn basin_samples(p: &FamilyParams, zero: bool, count: usize) -> Vec<ExtComplex> {
    let mut out = vec![];
    for k in 0..20 * count {
        let rho = if zero { 0.01 + 0.004 * (k % 250) as f64 } else { 1.05 + 0.05 * (k % 400) as f64 };
        let z = ExtComplex::Finite(Complex64::from_polar(rho, 1.1 * k as f64));
        let cls = orbit::classify_point(p, z, 2000);
        if (zero && cls.to_zero()) || (!zero && cls.to_infinity()) {
            out.push(z);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

/// Largest residual of `G(f(z)) - m G(z) - log|t|` and of
/// `Phi(f(z)) - t Phi(z)^m` over basin samples.
pub fn functional_residuals(p: &FamilyParams, count: usize) -> Result<(f64, f64, f64, usize)> {
    let m = p.m() as f64;
    let log_t = p.t().norm().ln();
    let (mut g0, mut ginf, mut phi) = (0.0f64, 0.0f64, 0.0f64);
    let zs = basin_samples(p, true, count);
    for z in &zs {
        let fz = p.eval_map(*z);
        let a = boettcher::green_zero(p, *z, 1e-15)?.value;
        let b = boettcher::green_zero(p, fz, 1e-15)?.value;
        g0 = g0.max((b - m * a - log_t).abs());
        let pa = boettcher::boettcher_coordinate(p, *z, 500)?.value.finite().unwrap_or_default();
        let pb = boettcher::boettcher_coordinate(p, fz, 500)?.value.finite().unwrap_or_default();
        phi = phi.max((pb - p.t() * pa.powu(p.m())).norm());
    }
    let ws = basin_samples(p, false, count);
    for z in &ws {
        let a = boettcher::green_infinity(p, *z, 1e-15)?.value;
        let b = boettcher::green_infinity(p, p.eval_map(*z), 1e-15)?.value;
        ginf = ginf.max((b - m * a - log_t).abs());
    }
    Ok((g0, ginf, phi, zs.len().min(ws.len())))
}

fn greens() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Greens);
    for (m, n, t) in [(2, 1, Complex64::new(0.9, 0.1)), (3, 2, Complex64::new(-0.5, 0.4)), (2, 1, Complex64::new(1.0, 0.0))] {
        let p = FamilyParams::new(m, n, t)?;
        let (g0, ginf, phi, count) = functional_residuals(&p, 100)?;
        rep.check(
            &format!("functional equations ({m},{n}) t={t}"),
            count == 100 && g0 < 1e-8 && ginf < 1e-8 && phi < 1e-8,
            format!("{count} samples; G0 {g0:.2e}, Ginf {ginf:.2e}, Phi {phi:.2e}"),
        );
    }
    Ok(rep)
}

/// `3 + 2 sqrt 2`: where the nontrivial fixed points of `f_t`, `(m, n) = (2, 1)`,
/// collide on the positive axis and the alpha orbit stops reaching 0.
pub fn parabolic_t() -> f64 {
    3.0 + 2.0 * 2f64.sqrt()
}

/// `|E_0|` along `t_j = t_p (1 - 10^-j)`, `j = 1..=steps`, for `(2, 1)`.
pub fn e0_radial_path(steps: i32) -> Result<Vec<(f64, f64)>> {
    (1..=steps)
        .map(|j| {
            let t = parabolic_t() * (1.0 - 10f64.powi(-j));
            let e = boettcher::e_value(2, 1, Complex64::new(t, 0.0), EKind::E0, VERIFY_BUDGET)?;
            Ok((t, e.value.norm()))
        })
        .collect()
}

fn easymptotic() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::EAsymptotic);
    for (m, n) in [(2u32, 1u32), (3, 1)] {
        let cd = family::critical_data(m, n)?;
        let mut worst = 0.0f64;
        for k in 0..8 {
            let t = Complex64::from_polar(1e-4, 0.8 * k as f64);
            let e = boettcher::e_value(m, n, t, EKind::E0, DEFAULT_BUDGET)?;
            let lead = cd.v_alpha_1.powi(m as i32 - 1) * t.powu(m);
            worst = worst.max((e.value / lead - 1.0).norm());
        }
        rep.check(&format!("E0 ~ f_1(alpha)^(m-1) t^m ({m},{n})"), worst < 1e-3, format!("{worst:.2e}"));
    }
    let path = e0_radial_path(5)?;
    let values: Vec<f64> = path.iter().map(|(_, e)| *e).collect();
    for (t, e) in &path {
        rep.info(&format!("E0_abs[t={t:.8}]"), format!("{e:.10}"));
    }
    let monotone = values.windows(2).all(|w| w[1] >= w[0]);
    let last = *values.last().unwrap_or(&0.0);
    rep.check("|E0| -> 1 toward the edge", monotone && last > 0.9, format!("{values:?}"));
    Ok(rep)
}

fn qkorder() -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::QkOrder);
    for (m, n, k) in [(2u32, 1u32, 1u32), (3, 1, 1), (2, 1, 2), (2, 2, 1)] {
        let est = orbit::q_k_zero_order(m, n, k)?;
        let expected = orbit::q_k_expected_order(m, k) as f64;
        rep.info(&format!("order[m={m},n={n},k={k}]"), format!("{est:.4}"));
        rep.check(
            &format!("ord Q_{k} ({m},{n})"),
            (est - expected).abs() <= 0.05,
            format!("estimated {est:.4}, expected {expected}"),
        );
    }
    Ok(rep)
}
