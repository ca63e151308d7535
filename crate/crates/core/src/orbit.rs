//! Orbit iteration, attracting-cycle detection, and classification of
//! dynamical-plane points and parameters.

use std::collections::VecDeque;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{self, FamilyParams, PcParams, TrapDisc, DEFAULT_THETA};
use crate::sphere::ExtComplex;

pub const DEFAULT_BUDGET: usize = 2000;
pub const VERIFY_BUDGET: usize = 100_000;
pub const MAX_PERIOD: usize = 64;
pub const CYCLE_TOL: f64 = 1e-9;
pub const CONFIRM_WINDOWS: usize = 3;

/// A map on the sphere with a superattracting fixed point at 0 (trapped by a
/// disc) and a guaranteed escape radius toward infinity.
pub trait Dynamics {
    fn step(&self, z: ExtComplex) -> ExtComplex;
    fn derivative(&self, z: ExtComplex) -> Option<Complex64>;
    /// `|z| < trap_radius` certifies attraction to 0.
    fn trap_radius(&self) -> f64;
    /// `|z| >= escape_radius` certifies escape to infinity.
    fn escape_radius(&self) -> f64;
}

/// `f_t` bundled with its trap and escape radii.
#[derive(Clone, Copy, Debug)]
pub struct FamilyMap {
    pub params: FamilyParams,
    trap: f64,
    escape: f64,
}

impl FamilyMap {
    pub fn new(params: FamilyParams, trap: &TrapDisc) -> Self {
        FamilyMap {
            params,
            trap: trap.radius_for(params.t().norm()),
            escape: family::escape_radius(&params),
        }
    }
}

impl Dynamics for FamilyMap {
    fn step(&self, z: ExtComplex) -> ExtComplex {
        self.params.eval_map(z)
    }

    fn derivative(&self, z: ExtComplex) -> Option<Complex64> {
        self.params.eval_derivative(z).ok()
    }

    fn trap_radius(&self) -> f64 {
        self.trap
    }

    fn escape_radius(&self) -> f64 {
        self.escape
    }
}

/// `P_c` bundled with its trap and escape radii.
#[derive(Clone, Copy, Debug)]
pub struct PcMap {
    pub params: PcParams,
    trap: f64,
    escape: f64,
}

impl PcMap {
    pub fn new(params: PcParams) -> Self {
        PcMap {
            params,
            trap: params.trap_radius(DEFAULT_THETA),
            escape: params.escape_radius(),
        }
    }
}

impl Dynamics for PcMap {
    fn step(&self, z: ExtComplex) -> ExtComplex {
        self.params.eval(z)
    }

    fn derivative(&self, z: ExtComplex) -> Option<Complex64> {
        self.params.derivative(z).ok()
    }

    fn trap_radius(&self) -> f64 {
        self.trap
    }

    fn escape_radius(&self) -> f64 {
        self.escape
    }
}

/// An attracting cycle found along an orbit tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cycle {
    pub period: usize,
    pub multiplier: Complex64,
    pub representative: ExtComplex,
}

/// Fate of a single orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PointClass {
    BasinZero { entry_time: usize },
    BasinInfinity { escape_time: usize },
    Cycle(Cycle),
    Undecided,
}

impl PointClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            PointClass::BasinZero { .. } => ClassTag::BasinZero,
            PointClass::BasinInfinity { .. } => ClassTag::BasinInfinity,
            PointClass::Cycle(_) => ClassTag::Cycle,
            PointClass::Undecided => ClassTag::Undecided,
        }
    }

    pub fn to_zero(&self) -> bool {
        matches!(self, PointClass::BasinZero { .. })
    }

    pub fn to_infinity(&self) -> bool {
        matches!(self, PointClass::BasinInfinity { .. })
    }

    /// The same fate seen through `z -> -1/z`, which swaps 0 and infinity.
    pub fn mirror(&self) -> PointClass {
        match *self {
            PointClass::BasinZero { entry_time } => PointClass::BasinInfinity { escape_time: entry_time },
            PointClass::BasinInfinity { escape_time } => PointClass::BasinZero { entry_time: escape_time },
            other => other,
        }
    }

    pub fn label(&self) -> String {
        match self {
            PointClass::BasinZero { entry_time } => format!("zero({entry_time})"),
            PointClass::BasinInfinity { escape_time } => format!("infinity({escape_time})"),
            PointClass::Cycle(c) => format!("cycle({})", c.period),
            PointClass::Undecided => "undecided".into(),
        }
    }
}

/// Classification of a parameter by the fates of both critical orbits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamClass {
    AlphaEscape(usize),
    BetaEscape(usize),
    AlphaResidual,
    BetaResidual,
    AlphaCycle(usize),
    BetaCycle(usize),
    BothEscape { alpha_level: usize, beta_level: usize },
    Undecided,
}

impl ParamClass {
    pub fn tag(&self) -> ClassTag {
        match self {
            ParamClass::AlphaEscape(_) => ClassTag::AlphaEscape,
            ParamClass::BetaEscape(_) => ClassTag::BetaEscape,
            ParamClass::AlphaResidual => ClassTag::AlphaResidual,
            ParamClass::BetaResidual => ClassTag::BetaResidual,
            ParamClass::AlphaCycle(_) => ClassTag::AlphaCycle,
            ParamClass::BetaCycle(_) => ClassTag::BetaCycle,
            ParamClass::BothEscape { .. } => ClassTag::BothEscape,
            ParamClass::Undecided => ClassTag::Undecided,
        }
    }

    /// Swap the roles of alpha and beta, as induced by `t -> +-1/t`.
    pub fn mirror(&self) -> ParamClass {
        match *self {
            ParamClass::AlphaEscape(k) => ParamClass::BetaEscape(k),
            ParamClass::BetaEscape(k) => ParamClass::AlphaEscape(k),
            ParamClass::AlphaResidual => ParamClass::BetaResidual,
            ParamClass::BetaResidual => ParamClass::AlphaResidual,
            ParamClass::AlphaCycle(p) => ParamClass::BetaCycle(p),
            ParamClass::BetaCycle(p) => ParamClass::AlphaCycle(p),
            ParamClass::BothEscape { alpha_level, beta_level } => ParamClass::BothEscape {
                alpha_level: beta_level,
                beta_level: alpha_level,
            },
            ParamClass::Undecided => ParamClass::Undecided,
        }
    }

    pub fn name(&self) -> &'static str {
        self.tag().name()
    }

    /// Escape level or cycle period, when the class carries one.
    pub fn level_or_period(&self) -> Option<usize> {
        match *self {
            ParamClass::AlphaEscape(k) | ParamClass::BetaEscape(k) => Some(k),
            ParamClass::AlphaCycle(p) | ParamClass::BetaCycle(p) => Some(p),
            ParamClass::BothEscape { alpha_level, .. } => Some(alpha_level),
            _ => None,
        }
    }
}

/// Variant names of [`ParamClass`] and [`PointClass`], without payloads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    AlphaEscape,
    BetaEscape,
    AlphaResidual,
    BetaResidual,
    AlphaCycle,
    BetaCycle,
    BothEscape,
    BasinZero,
    BasinInfinity,
    Cycle,
    Undecided,
}

impl ClassTag {
    pub const ALL: [ClassTag; 11] = [
        ClassTag::AlphaEscape,
        ClassTag::BetaEscape,
        ClassTag::AlphaResidual,
        ClassTag::BetaResidual,
        ClassTag::AlphaCycle,
        ClassTag::BetaCycle,
        ClassTag::BothEscape,
        ClassTag::BasinZero,
        ClassTag::BasinInfinity,
        ClassTag::Cycle,
        ClassTag::Undecided,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClassTag::AlphaEscape => "AlphaEscape",
            ClassTag::BetaEscape => "BetaEscape",
            ClassTag::AlphaResidual => "AlphaResidual",
            ClassTag::BetaResidual => "BetaResidual",
            ClassTag::AlphaCycle => "AlphaCycle",
            ClassTag::BetaCycle => "BetaCycle",
            ClassTag::BothEscape => "BothEscape",
            ClassTag::BasinZero => "BasinZero",
            ClassTag::BasinInfinity => "BasinInfinity",
            ClassTag::Cycle => "Cycle",
            ClassTag::Undecided => "Undecided",
        }
    }
}

/// Knobs for orbit iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitSettings {
    pub budget: usize,
    pub max_period: usize,
    pub tol: f64,
}

impl OrbitSettings {
    pub fn with_budget(budget: usize) -> Self {
        OrbitSettings { budget, ..Default::default() }
    }

    /// Cycle search starts after this many iterations.
    pub fn transient(&self) -> usize {
        self.budget / 2
    }
}

impl Default for OrbitSettings {
    fn default() -> Self {
        OrbitSettings {
            budget: DEFAULT_BUDGET,
            max_period: MAX_PERIOD,
            tol: CYCLE_TOL,
        }
    }
}

/// A stored orbit and its fate. `points[0]` is the seed.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub points: Vec<ExtComplex>,
    pub outcome: PointClass,
    pub first_trap_entry: Option<usize>,
    pub first_escape: Option<usize>,
}

/// Result of running an orbit without storing it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrbitFate {
    pub outcome: PointClass,
    /// Index of the last point examined.
    pub iterations: usize,
    /// The last point examined.
    pub last: ExtComplex,
}

fn run<D: Dynamics>(
    map: &D,
    seed: ExtComplex,
    settings: &OrbitSettings,
    mut store: Option<&mut Vec<ExtComplex>>,
) -> OrbitFate {
    let trap = map.trap_radius();
    let escape = map.escape_radius();
    let transient = settings.transient();
    let tail_cap = (CONFIRM_WINDOWS + 1) * settings.max_period;
    let mut tail: VecDeque<ExtComplex> = VecDeque::new();
    let mut z = seed;
    let mut i = 0usize;
    loop {
        if let Some(points) = store.as_deref_mut() {
            points.push(z);
        }
        let r = z.norm();
        if r < trap {
            return OrbitFate { outcome: PointClass::BasinZero { entry_time: i }, iterations: i, last: z };
        }
        if r >= escape {
            return OrbitFate { outcome: PointClass::BasinInfinity { escape_time: i }, iterations: i, last: z };
        }
        if i >= transient {
            if tail.len() == tail_cap {
                tail.pop_front();
            }
            tail.push_back(z);
            let since = i - transient + 1;
            if since.is_multiple_of(settings.max_period) || i == settings.budget {
                let found = detect_cycle_with(map, tail.make_contiguous(), settings.tol, settings.max_period);
                if let Some(cycle) = found {
                    return OrbitFate { outcome: PointClass::Cycle(cycle), iterations: i, last: z };
                }
            }
        }
        if i >= settings.budget {
            return OrbitFate { outcome: PointClass::Undecided, iterations: i, last: z };
        }
        z = map.step(z);
        i += 1;
    }
}

/// Runs an orbit under any [`Dynamics`] without storing the points.
pub fn orbit_fate<D: Dynamics>(map: &D, seed: ExtComplex, settings: &OrbitSettings) -> OrbitFate {
    run(map, seed, settings, None)
}

/// Iterates `f_t` from `z0` until the trap disc, the escape radius, an
/// attracting cycle, or the budget decides the outcome.
pub fn iterate_orbit(p: &FamilyParams, z0: ExtComplex, budget: usize, trap: &TrapDisc) -> OrbitRecord {
    let map = FamilyMap::new(*p, trap);
    iterate_with(&map, z0, &OrbitSettings::with_budget(budget))
}

pub fn iterate_with<D: Dynamics>(map: &D, z0: ExtComplex, settings: &OrbitSettings) -> OrbitRecord {
    let mut points = Vec::new();
    let fate = run(map, z0, settings, Some(&mut points));
    let (first_trap_entry, first_escape) = match fate.outcome {
        PointClass::BasinZero { entry_time } => (Some(entry_time), None),
        PointClass::BasinInfinity { escape_time } => (None, Some(escape_time)),
        _ => (None, None),
    };
    OrbitRecord { points, outcome: fate.outcome, first_trap_entry, first_escape }
}

/// Finds the minimal period `p <= max_period` such that the last
/// `CONFIRM_WINDOWS * p` points each match the point `p` steps earlier, and
/// returns it if the multiplier along one period is attracting.
pub fn detect_cycle_with<D: Dynamics>(
    map: &D,
    tail: &[ExtComplex],
    tol: f64,
    max_period: usize,
) -> Option<Cycle> {
    let len = tail.len();
    if tail.iter().any(|z| z.is_infinite()) {
        return None;
    }
    let max_p = max_period.min(len / (CONFIRM_WINDOWS + 1));
    for p in 1..=max_p {
        let stable = (0..CONFIRM_WINDOWS * p).all(|j| {
            let a = &tail[len - 1 - j];
            let b = &tail[len - 1 - j - p];
            a.dist(b) < tol * a.norm().max(1.0)
        });
        if !stable {
            continue;
        }
        let mut multiplier = Complex64::new(1.0, 0.0);
        for z in &tail[len - p..] {
            multiplier *= map.derivative(*z)?;
        }
        if multiplier.norm() < 1.0 {
            return Some(Cycle { period: p, multiplier, representative: tail[len - 1] });
        }
        return None;
    }
    None
}

/// [`detect_cycle_with`] for `f_t`.
pub fn detect_cycle(p: &FamilyParams, orbit_tail: &[ExtComplex], tol: f64) -> Option<Cycle> {
    let trap = family::trap_disc(p.m(), p.n(), DEFAULT_THETA).expect("default theta is feasible");
    detect_cycle_with(&FamilyMap::new(*p, &trap), orbit_tail, tol, MAX_PERIOD)
}

/// Fate of the orbit of `z` under `f_t`.
pub fn classify_point(p: &FamilyParams, z: ExtComplex, budget: usize) -> PointClass {
    let trap = family::trap_disc(p.m(), p.n(), DEFAULT_THETA).expect("default theta is feasible");
    orbit_fate(&FamilyMap::new(*p, &trap), z, &OrbitSettings::with_budget(budget)).outcome
}

/// A parameter classification with the raw fates of both critical orbits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamClassification {
    pub class: ParamClass,
    pub alpha: OrbitFate,
    pub beta: OrbitFate,
}

impl ParamClassification {
    pub fn iterations(&self) -> usize {
        self.alpha.iterations + self.beta.iterations
    }
}

/// Combines the fates of the alpha and beta critical orbits.
pub fn combine(alpha: &PointClass, beta: &PointClass) -> ParamClass {
    use PointClass::*;
    match (alpha, beta) {
        (BasinZero { entry_time }, BasinInfinity { escape_time }) => ParamClass::BothEscape {
            alpha_level: *entry_time,
            beta_level: *escape_time,
        },
        (BasinZero { .. }, BasinZero { .. }) => ParamClass::AlphaResidual,
        (BasinInfinity { .. }, BasinInfinity { .. }) => ParamClass::BetaResidual,
        (_, Cycle(c)) => ParamClass::BetaCycle(c.period),
        (Cycle(c), _) => ParamClass::AlphaCycle(c.period),
        (BasinZero { entry_time }, Undecided) => ParamClass::AlphaEscape(*entry_time),
        (Undecided, BasinInfinity { escape_time }) => ParamClass::BetaEscape(*escape_time),
        _ => ParamClass::Undecided,
    }
}

/// Classifies `t` with a prepared trap disc for `(m, n)`.
pub fn classify_parameter_with(
    trap: &TrapDisc,
    t: Complex64,
    settings: &OrbitSettings,
) -> Result<ParamClassification> {
    let p = FamilyParams::new(trap.m, trap.n, t)?;
    let map = FamilyMap::new(p, trap);
    let alpha = orbit_fate(&map, p.v_alpha(), settings);
    let beta = orbit_fate(&map, p.v_beta(), settings);
    Ok(ParamClassification {
        class: combine(&alpha.outcome, &beta.outcome),
        alpha,
        beta,
    })
}

/// Classifies the parameter `t` by iterating both critical values.
pub fn classify_parameter(m: u32, n: u32, t: Complex64, budget: usize) -> Result<ParamClassification> {
    let trap = family::trap_disc(m, n, DEFAULT_THETA)?;
    classify_parameter_with(&trap, t, &OrbitSettings::with_budget(budget))
}

/// `Q_k(t) = f_t^k(v^alpha_t)`.
pub fn q_k(m: u32, n: u32, k: u32, t: Complex64) -> Result<ExtComplex> {
    let p = FamilyParams::new(m, n, t)?;
    let mut z = p.v_alpha();
    for _ in 0..k {
        z = p.eval_map(z);
    }
    Ok(z)
}

/// Estimates the order of the zero of `Q_k` at `t = 0` from the slope of
/// `log|Q_k(t)|` against `log|t|` between `t = 1e-6` and `t = 1e-5`.
pub fn q_k_zero_order(m: u32, n: u32, k: u32) -> Result<f64> {
    let (t_hi, t_lo) = (1e-5, 1e-6);
    let sample = |t: f64| -> Result<f64> {
        let q = q_k(m, n, k, Complex64::new(t, 0.0))?.norm();
        if q.is_nan() || q < f64::MIN_POSITIVE || !q.is_finite() {
            return Err(Error::Underflow { k });
        }
        Ok(q.ln())
    };
    let (a, b) = (sample(t_hi)?, sample(t_lo)?);
    Ok((a - b) / (t_hi.ln() - t_lo.ln()))
}

/// `(m^(k+1) - 1)/(m - 1)`.
pub fn q_k_expected_order(m: u32, k: u32) -> u64 {
    (0..=k).map(|j| (m as u64).pow(j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fam(m: u32, n: u32, t: Complex64) -> FamilyParams {
        FamilyParams::new(m, n, t).unwrap()
    }

    fn default_trap(m: u32, n: u32) -> TrapDisc {
        family::trap_disc(m, n, DEFAULT_THETA).unwrap()
    }

    #[test]
    fn orbit_examples_at_t_one() {
        let p = fam(2, 1, c(1.0, 0.0));
        let trap = default_trap(2, 1);
        let rec = iterate_orbit(&p, ExtComplex::real(1.0), 100, &trap);
        assert_eq!(rec.outcome, PointClass::BasinZero { entry_time: 1 });
        assert_eq!(rec.first_trap_entry, Some(1));
        assert_eq!(rec.first_escape, None);

        let cd = p.critical_data();
        // |v^beta_1| = 1/v^alpha_1 ~ 11.09 >= R = 6
        assert!((cd.v_beta_1.abs() - 1.0 / cd.v_alpha_1).abs() < 1e-12);
        let rec = iterate_orbit(&p, ExtComplex::real(cd.beta), 100, &trap);
        assert_eq!(rec.outcome, PointClass::BasinInfinity { escape_time: 1 });
        assert_eq!(rec.first_escape, Some(1));

        let rec = iterate_orbit(&p, ExtComplex::real(cd.alpha), 100, &trap);
        assert!(rec.outcome.to_zero());
        assert!(rec.points[1].norm() < 1.0 / 3.0);
    }

    #[test]
    fn stored_orbit_follows_map() {
        let p = fam(3, 2, c(1.4, 0.9));
        let rec = iterate_orbit(&p, ExtComplex::new(0.7, 0.2), 500, &default_trap(3, 2));
        for w in rec.points.windows(2) {
            assert_eq!(p.eval_map(w[0]), w[1]);
        }
        assert!(rec.first_trap_entry.is_none() || rec.first_escape.is_none());
    }

    fn superattracting_beta_t() -> f64 {
        (7.0 - 3.0 * 5f64.sqrt()) / 2.0
    }

    #[test]
    fn beta_is_fixed_at_special_parameter() {
        let t = superattracting_beta_t();
        let p = fam(2, 1, c(t, 0.0));
        let cd = p.critical_data();
        assert!((t * cd.v_beta_1 - cd.beta).abs() < 1e-12);
        let rec = iterate_orbit(&p, p.v_beta(), DEFAULT_BUDGET, &default_trap(2, 1));
        match rec.outcome {
            PointClass::Cycle(cy) => {
                assert_eq!(cy.period, 1);
                assert!(cy.multiplier.norm() < 1e-8);
                assert!(cy.representative.dist(&ExtComplex::real(cd.beta)) < 1e-8);
            }
            other => panic!("expected a cycle, got {other:?}"),
        }
    }

    #[test]
    fn detect_cycle_on_sequences() {
        let p = fam(2, 1, c(1.0, 0.0));
        // orbit converging to 0
        let mut z = ExtComplex::real(0.3);
        let mut tail = vec![];
        for _ in 0..8 {
            tail.push(z);
            z = p.eval_map(z);
        }
        let cy = detect_cycle(&p, &tail, 1e-9).unwrap();
        assert_eq!(cy.period, 1);
        assert!(cy.multiplier.norm() < 1e-12);
        assert!(cy.representative.norm() < 1e-9);

        // a constant sequence at an attracting fixed point
        let t = 8.0;
        let p = fam(2, 1, c(t, 0.0));
        // fixed points: t z^2 + (1 - t) z + 1 = 0
        let disc = ((1.0 - t) * (1.0 - t) - 4.0 * t).sqrt();
        let w = ((t - 1.0) + disc) / (2.0 * t);
        let mult = p.eval_derivative(ExtComplex::real(w)).unwrap();
        assert!(mult.norm() < 1.0);
        let tail = vec![ExtComplex::real(w); 8];
        let cy = detect_cycle(&p, &tail, 1e-9).unwrap();
        assert_eq!(cy.period, 1);
        assert!((cy.multiplier - mult).norm() < 1e-15);

        // too short, or not periodic
        assert!(detect_cycle(&p, &tail[..3], 1e-9).is_none());
        let drift: Vec<_> = (0..20).map(|k| ExtComplex::real(k as f64 * 0.01)).collect();
        assert!(detect_cycle(&p, &drift, 1e-9).is_none());
    }

    #[test]
    fn detect_cycle_rejects_repelling() {
        let t = 8.0;
        let p = fam(2, 1, c(t, 0.0));
        let disc = ((1.0 - t) * (1.0 - t) - 4.0 * t).sqrt();
        let w = ((t - 1.0) - disc) / (2.0 * t);
        assert!(p.eval_derivative(ExtComplex::real(w)).unwrap().norm() > 1.0);
        assert!(detect_cycle(&p, &[ExtComplex::real(w); 8], 1e-9).is_none());
    }

    #[test]
    fn classify_point_examples() {
        let p = fam(2, 1, c(1.0, 0.0));
        assert_eq!(
            classify_point(&p, ExtComplex::real(-1.0), 100),
            PointClass::BasinInfinity { escape_time: 1 }
        );
        assert!((p.eval_map(ExtComplex::real(0.5)).norm() - 1.0 / 12.0).abs() < 1e-15);
        assert!(classify_point(&p, ExtComplex::real(0.5), 100).to_zero());

        let p = fam(2, 1, c(1e-2, 0.0));
        let beta = p.critical_data().beta;
        assert!(classify_point(&p, ExtComplex::real(beta), 100).to_zero());
        assert_eq!(classify_point(&p, ExtComplex::Infinity, 100), PointClass::BasinInfinity { escape_time: 0 });
    }

    #[test]
    fn classify_parameter_examples() {
        let r = classify_parameter(2, 1, c(1.0, 0.0), DEFAULT_BUDGET).unwrap();
        assert!(matches!(r.class, ParamClass::BothEscape { beta_level: 0, .. }));
        assert_eq!(r.class.name(), "BothEscape");
        let r = classify_parameter(2, 1, c(0.01, 0.0), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.class, ParamClass::AlphaResidual);
        let r = classify_parameter(2, 1, c(100.0, 0.0), DEFAULT_BUDGET).unwrap();
        assert_eq!(r.class, ParamClass::BetaResidual);
        assert!(classify_parameter(2, 1, c(0.0, 0.0), DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn combine_table() {
        let z = PointClass::BasinZero { entry_time: 2 };
        let inf = PointClass::BasinInfinity { escape_time: 3 };
        let cy = PointClass::Cycle(Cycle { period: 2, multiplier: c(0.1, 0.0), representative: ExtComplex::ZERO });
        let u = PointClass::Undecided;
        assert_eq!(combine(&z, &inf), ParamClass::BothEscape { alpha_level: 2, beta_level: 3 });
        assert_eq!(combine(&z, &z), ParamClass::AlphaResidual);
        assert_eq!(combine(&inf, &inf), ParamClass::BetaResidual);
        assert_eq!(combine(&z, &cy), ParamClass::BetaCycle(2));
        assert_eq!(combine(&cy, &inf), ParamClass::AlphaCycle(2));
        assert_eq!(combine(&z, &u), ParamClass::AlphaEscape(2));
        assert_eq!(combine(&u, &inf), ParamClass::BetaEscape(3));
        assert_eq!(combine(&inf, &z), ParamClass::Undecided);
        assert_eq!(combine(&u, &u), ParamClass::Undecided);
        for a in [z, inf, cy, u] {
            for b in [z, inf, cy, u] {
                if a.tag() == b.tag() && matches!(a, PointClass::Cycle(_)) {
                    // two attracting cycles: the beta one wins either way
                    continue;
                }
                assert_eq!(combine(&a, &b).mirror(), combine(&b.mirror(), &a.mirror()));
            }
        }
    }

    #[test]
    fn determinism() {
        let a = classify_parameter(2, 1, c(0.3, -0.6), DEFAULT_BUDGET).unwrap();
        let b = classify_parameter(2, 1, c(0.3, -0.6), DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
        let p = fam(2, 1, c(0.3, -0.6));
        let t = default_trap(2, 1);
        assert_eq!(iterate_orbit(&p, p.v_beta(), 300, &t), iterate_orbit(&p, p.v_beta(), 300, &t));
    }

    #[test]
    fn trap_and_escape_are_absorbing_along_orbits() {
        let trap = default_trap(2, 1);
        for k in 0..40 {
            let t = Complex64::from_polar(0.05 + k as f64 * 0.06, k as f64 * 0.9);
            let p = fam(2, 1, t);
            let map = FamilyMap::new(p, &trap);
            for seed in [p.v_alpha(), p.v_beta(), ExtComplex::new(0.3, 0.8)] {
                let rec = iterate_with(&map, seed, &OrbitSettings::with_budget(500));
                let mut z = *rec.points.last().unwrap();
                match rec.outcome {
                    PointClass::BasinZero { .. } => {
                        for _ in 0..30 {
                            z = p.eval_map(z);
                            assert!(z.norm() < map.trap_radius());
                        }
                    }
                    PointClass::BasinInfinity { .. } => {
                        for _ in 0..5 {
                            let w = p.eval_map(z);
                            assert!(w.norm() >= 2.0 * z.norm() || w.is_infinite());
                            z = w;
                        }
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn unit_disc_alpha_is_inactive() {
        for i in 0..100 {
            let t = Complex64::from_polar(0.01 + 0.99 * (i as f64 + 1.0) / 100.0, i as f64 * 2.4);
            let r = classify_parameter(2, 1, t, DEFAULT_BUDGET).unwrap();
            assert!(r.alpha.outcome.to_zero(), "t={t}");
            assert!(!matches!(r.class, ParamClass::AlphaCycle(_)));
        }
    }

    #[test]
    fn q_k_orders() {
        assert!((q_k_zero_order(2, 1, 0).unwrap() - 1.0).abs() < 1e-9);
        assert!((q_k_zero_order(2, 1, 1).unwrap() - 3.0).abs() < 0.05);
        assert!((q_k_zero_order(3, 1, 1).unwrap() - 4.0).abs() < 0.05);
        assert!((q_k_zero_order(2, 3, 2).unwrap() - 7.0).abs() < 0.05);
        assert_eq!(q_k_expected_order(2, 1), 3);
        assert_eq!(q_k_expected_order(3, 2), 13);
        assert!(matches!(q_k_zero_order(6, 1, 4), Err(Error::Underflow { k: 4 })));
    }
}
