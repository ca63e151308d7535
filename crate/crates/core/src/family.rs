//! The family `f_t(z) = t z^m ((1-z)/(1+z))^n`, its critical data, trap and
//! escape radii, and the comparison polynomials `P_c(z) = c z^m (z+1)^n`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sphere::ExtComplex;

/// Points closer than this to `-1` are treated as hitting the pole.
pub const POLE_EPS: f64 = 1e-13;

/// Default safety factor for [`trap_disc`].
pub const DEFAULT_THETA: f64 = 0.9;

/// One member of the family: exponents `m >= 2`, `n >= 1` and a finite `t != 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilyParams {
    m: u32,
    n: u32,
    t: Complex64,
}

fn check_exponents(m: u32, n: u32) -> Result<()> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidParams(format!(
            "need m >= 2 and n >= 1, got m={m}, n={n}"
        )));
    }
    Ok(())
}

impl FamilyParams {
    pub fn new(m: u32, n: u32, t: Complex64) -> Result<Self> {
        check_exponents(m, n)?;
        if !(t.re.is_finite() && t.im.is_finite()) || t == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParams(format!("t must be finite and nonzero, got {t}")));
        }
        Ok(FamilyParams { m, n, t })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.m + self.n
    }

    pub fn t(&self) -> Complex64 {
        self.t
    }

    pub fn with_t(&self, t: Complex64) -> Result<Self> {
        Self::new(self.m, self.n, t)
    }

    /// `f_t(z)`, total on the sphere.
    pub fn eval_map(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => ExtComplex::Infinity,
            ExtComplex::Finite(z) => {
                let one = Complex64::new(1.0, 0.0);
                let den = one + z;
                if den.norm() < POLE_EPS {
                    return ExtComplex::Infinity;
                }
                let q = (one - z) / den;
                ExtComplex::from(self.t * z.powu(self.m) * q.powu(self.n))
            }
        }
    }

    /// `f'_t(z) = t z^(m-1) (1-z)^(n-1) (m(1-z^2) - 2nz) / (1+z)^(n+1)`.
    pub fn eval_derivative(&self, z: ExtComplex) -> Result<Complex64> {
        let z = z.finite().ok_or(Error::UndefinedDerivative)?;
        let one = Complex64::new(1.0, 0.0);
        let den = one + z;
        if den.norm() < POLE_EPS {
            return Err(Error::UndefinedDerivative);
        }
        let (m, n) = (self.m as f64, self.n as f64);
        let crit = m * (one - z * z) - 2.0 * n * z;
        let w = self.t * z.powu(self.m - 1) * (one - z).powu(self.n - 1) * crit
            / den.powu(self.n + 1);
        if w.re.is_finite() && w.im.is_finite() {
            Ok(w)
        } else {
            Err(Error::UndefinedDerivative)
        }
    }

    pub fn critical_data(&self) -> CriticalData {
        critical_data(self.m, self.n).expect("exponents validated on construction")
    }

    /// `v^alpha_t = t v^alpha_1`.
    pub fn v_alpha(&self) -> ExtComplex {
        ExtComplex::from(self.t * self.critical_data().v_alpha_1)
    }

    /// `v^beta_t = t v^beta_1`.
    pub fn v_beta(&self) -> ExtComplex {
        ExtComplex::from(self.t * self.critical_data().v_beta_1)
    }

    /// The parameter of the conjugate map under `z -> -1/z`.
    pub fn conjugate(&self) -> Self {
        let t = conjugate_param(self.t, self.d()).expect("t is nonzero");
        FamilyParams { t, ..*self }
    }
}

/// The free critical points `alpha`, `beta` and the critical values of `f_1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalData {
    pub alpha: f64,
    pub beta: f64,
    pub v_alpha_1: f64,
    pub v_beta_1: f64,
}

/// Roots of `m z^2 + 2n z - m = 0` and their images under `f_1`.
pub fn critical_data(m: u32, n: u32) -> Result<CriticalData> {
    check_exponents(m, n)?;
    let (mf, nf) = (m as f64, n as f64);
    let s = nf.hypot(mf);
    // alpha = (-n + s)/m, rewritten to avoid cancellation
    let alpha = mf / (nf + s);
    let beta = -(nf + s) / mf;
    let f1 = |x: f64| x.powi(m as i32) * ((1.0 - x) / (1.0 + x)).powi(n as i32);
    Ok(CriticalData {
        alpha,
        beta,
        v_alpha_1: f1(alpha),
        v_beta_1: f1(beta),
    })
}

/// `1/t` for odd `d`, `-1/t` for even `d`.
pub fn conjugate_param(t: Complex64, d: u32) -> Result<Complex64> {
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParams("t must be nonzero".into()));
    }
    let inv = t.inv();
    Ok(if d % 2 == 1 { inv } else { -inv })
}

/// `g(r) = r^(m-1) ((1+r)/(1-r))^n`, strictly increasing on `(0, 1)`.
pub fn trap_growth(m: u32, n: u32, r: f64) -> f64 {
    r.powi(m as i32 - 1) * ((1.0 + r) / (1.0 - r)).powi(n as i32)
}

/// A disc around 0 that is forward invariant for every `0 < |t| <= 1` once
/// scaled by `|t|`, and that absorbs `f_t([0, 1])`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrapDisc {
    pub m: u32,
    pub n: u32,
    /// Radius at `|t| = 1`.
    pub radius_unit: f64,
    pub safety: f64,
}

impl TrapDisc {
    /// A trap disc with a caller-chosen radius, checked against both conditions.
    pub fn with_radius(m: u32, n: u32, r: f64, safety: f64) -> Result<Self> {
        let crit = critical_data(m, n)?;
        if !(r > crit.v_alpha_1 && r < 1.0 && trap_growth(m, n, r) <= safety) {
            return Err(Error::InvalidParams(format!(
                "radius {r} is not a trap radius for (m, n) = ({m}, {n}) at safety {safety}"
            )));
        }
        Ok(TrapDisc { m, n, radius_unit: r, safety })
    }

    /// Radius of a forward-invariant disc for `|t| = t_abs`.
    ///
    /// For `|t| <= 1` this is `r |t|`. For `|t| > 1` it is the largest `rho`
    /// with `|t| g(rho) <= safety`, which makes `f_t` a contraction on the disc.
    pub fn radius_for(&self, t_abs: f64) -> f64 {
        if t_abs <= 1.0 {
            return self.radius_unit * t_abs;
        }
        let target = self.safety / t_abs;
        let (mut lo, mut hi) = (0.0, self.radius_unit);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if trap_growth(self.m, self.n, mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Bisects `g(r) = theta` over `[v^alpha_1 + eps, 1 - eps]` and returns the
/// lower end of the final bracket, so `g(r) <= theta` always holds.
pub fn trap_disc(m: u32, n: u32, theta: f64) -> Result<TrapDisc> {
    const EPS: f64 = 1e-12;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParams(format!("theta must lie in (0, 1), got {theta}")));
    }
    let crit = critical_data(m, n)?;
    let (mut lo, mut hi) = (crit.v_alpha_1 + EPS, 1.0 - EPS);
    if trap_growth(m, n, lo) > theta {
        return Err(Error::TrapInfeasible { theta, lo, hi });
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if trap_growth(m, n, mid) <= theta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(TrapDisc { m, n, radius_unit: lo, safety: theta })
}

/// `R = max(2, (2 * 3^n / |t|)^(1/(m-1)))`; `|z| >= R` implies `|f_t(z)| >= 2|z|`.
pub fn escape_radius(p: &FamilyParams) -> f64 {
    let base = 2.0 * 3f64.powi(p.n as i32) / p.t.norm();
    base.powf(1.0 / (p.m as f64 - 1.0)).max(2.0)
}

/// `P_c(z) = c z^m (z+1)^n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PcParams {
    m: u32,
    n: u32,
    c: Complex64,
}

impl PcParams {
    pub fn new(m: u32, n: u32, c: Complex64) -> Result<Self> {
        check_exponents(m, n)?;
        if !(c.re.is_finite() && c.im.is_finite()) || c == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParams(format!("c must be finite and nonzero, got {c}")));
        }
        Ok(PcParams { m, n, c })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn eval(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => ExtComplex::Infinity,
            ExtComplex::Finite(z) => {
                ExtComplex::from(self.c * z.powu(self.m) * (z + 1.0).powu(self.n))
            }
        }
    }

    /// `P'_c(z) = c z^(m-1) (z+1)^(n-1) ((m+n) z + m)`.
    pub fn derivative(&self, z: ExtComplex) -> Result<Complex64> {
        let z = z.finite().ok_or(Error::UndefinedDerivative)?;
        let d = (self.m + self.n) as f64;
        let w = self.c
            * z.powu(self.m - 1)
            * (z + 1.0).powu(self.n - 1)
            * (d * z + self.m as f64);
        if w.re.is_finite() && w.im.is_finite() {
            Ok(w)
        } else {
            Err(Error::UndefinedDerivative)
        }
    }

    /// The free critical point `-m/(m+n)`.
    pub fn free_critical_point(&self) -> f64 {
        -(self.m as f64) / (self.m + self.n) as f64
    }

    /// Largest `rho` with `|c| rho^(m-1) (1+rho)^n <= theta`.
    pub fn trap_radius(&self, theta: f64) -> f64 {
        let target = theta / self.c.norm();
        let h = |r: f64| r.powi(self.m as i32 - 1) * (1.0 + r).powi(self.n as i32);
        let (mut lo, mut hi) = (0.0, 1.0);
        if h(hi) <= target {
            lo = hi;
        }
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if h(mid) <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// `R = max(2, (2^(n+1)/|c|)^(1/(d-1)))`; `|z| >= R` implies `|P_c(z)| >= 2|z|`.
    pub fn escape_radius(&self) -> f64 {
        let d = (self.m + self.n) as f64;
        (2f64.powi(self.n as i32 + 1) / self.c.norm())
            .powf(1.0 / (d - 1.0))
            .max(2.0)
    }
}

/// `P_c(z)` as a free function.
pub fn pc_eval(c: Complex64, m: u32, n: u32, z: ExtComplex) -> Result<ExtComplex> {
    Ok(PcParams::new(m, n, c)?.eval(z))
}

/// `c_t = -(t + 2 + 1/t)/2`, the parameter of the polynomial conjugate to
/// `f_t` for `(m, n) = (2, 1)` and `0 < |t| < 1`.
pub fn c_of_t(m: u32, n: u32, t: Complex64) -> Result<Complex64> {
    if (m, n) != (2, 1) {
        return Err(Error::Unsupported(format!(
            "the explicit correspondence is only known for (m, n) = (2, 1), got ({m}, {n})"
        )));
    }
    if t == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidParams("t must be nonzero".into()));
    }
    Ok(-0.5 * (t + 2.0 + t.inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn fam(m: u32, n: u32, t: Complex64) -> FamilyParams {
        FamilyParams::new(m, n, t).unwrap()
    }

    /// Golden-section maximization of x^2 (1-x)/(1+x) on [0, 1].
    fn max_on_unit_interval() -> f64 {
        let h = |x: f64| x * x * (1.0 - x) / (1.0 + x);
        let phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (0.0, 1.0);
        for _ in 0..200 {
            let x1 = b - phi * (b - a);
            let x2 = a + phi * (b - a);
            if h(x1) < h(x2) {
                a = x1;
            } else {
                b = x2;
            }
        }
        h(0.5 * (a + b))
    }

    #[test]
    fn rejects_bad_params() {
        assert!(FamilyParams::new(1, 1, c(1.0, 0.0)).is_err());
        assert!(FamilyParams::new(2, 0, c(1.0, 0.0)).is_err());
        assert!(FamilyParams::new(2, 1, c(0.0, 0.0)).is_err());
        assert!(FamilyParams::new(2, 1, c(f64::INFINITY, 0.0)).is_err());
        assert!(critical_data(1, 3).is_err());
        assert_eq!(fam(3, 4, c(1.0, 0.0)).d(), 7);
    }

    #[test]
    fn eval_map_special_points() {
        let p = fam(2, 1, c(1.0, 0.0));
        assert_eq!(p.eval_map(ExtComplex::real(1.0)), ExtComplex::ZERO);
        assert_eq!(p.eval_map(ExtComplex::ZERO), ExtComplex::ZERO);
        assert_eq!(p.eval_map(ExtComplex::real(-1.0)), ExtComplex::Infinity);
        assert_eq!(p.eval_map(ExtComplex::Infinity), ExtComplex::Infinity);
        assert_eq!(p.eval_map(ExtComplex::real(-1.0 + 1e-14)), ExtComplex::Infinity);
        assert!(p.eval_map(ExtComplex::real(1e200)).is_infinite());
    }

    #[test]
    fn value_at_alpha_matches_maximum() {
        let p = fam(2, 1, c(1.0, 0.0));
        let alpha = p.critical_data().alpha;
        let v = p.eval_map(ExtComplex::real(alpha)).finite().unwrap();
        let oracle = max_on_unit_interval();
        assert!((v.re - oracle).abs() < 1e-12, "{} vs {}", v.re, oracle);
        assert!((v.re - (5.0 * 5f64.sqrt() - 11.0) / 2.0).abs() < 1e-12);
        assert!((v.re - 0.0901699437).abs() < 1e-10);
    }

    #[test]
    fn derivative_vanishes_at_critical_points() {
        let p = fam(2, 1, c(1.0, 0.0));
        let cd = p.critical_data();
        for x in [cd.alpha, cd.beta] {
            assert!(p.eval_derivative(ExtComplex::real(x)).unwrap().norm() < 1e-14);
        }
        assert!(p.eval_derivative(ExtComplex::real(-1.0)).is_err());
        assert!(p.eval_derivative(ExtComplex::Infinity).is_err());
    }

    fn finite_difference(p: &FamilyParams, z: Complex64) -> Complex64 {
        let h = 1e-6;
        let f = |w: Complex64| p.eval_map(ExtComplex::Finite(w)).finite().unwrap();
        (f(z + h) - f(z - h)) / (2.0 * h)
    }

    #[test]
    fn derivative_matches_finite_difference_at_point_three() {
        let p = fam(2, 1, c(1.0, 0.0));
        let z = c(0.3, 0.0);
        let exact = p.eval_derivative(ExtComplex::Finite(z)).unwrap();
        let fd = finite_difference(&p, z);
        assert!((exact - fd).norm() / exact.norm() < 1e-6);
    }

    #[test]
    fn derivative_matches_finite_difference_grid() {
        // deterministic LCG so the sample set is fixed
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for m in 2..=4 {
            for n in 1..=3 {
                for _ in 0..100 {
                    let t = c(0.2 + 1.5 * next(), 1.5 * next() - 0.75);
                    let z = c(1.6 * next() - 0.8, 1.6 * next() - 0.8);
                    if (z + 1.0).norm() < 0.3 || z.norm() < 0.1 {
                        continue;
                    }
                    let p = fam(m, n, t);
                    let exact = p.eval_derivative(ExtComplex::Finite(z)).unwrap();
                    let fd = finite_difference(&p, z);
                    let scale = exact.norm().max(1e-3);
                    assert!((exact - fd).norm() / scale < 1e-6, "m={m} n={n} z={z} t={t}");
                }
            }
        }
    }

    #[test]
    fn critical_points_for_small_exponents() {
        let cd = critical_data(2, 1).unwrap();
        let s5 = 5f64.sqrt();
        assert!((cd.alpha - (s5 - 1.0) / 2.0).abs() < 1e-15);
        assert!((cd.beta + (s5 + 1.0) / 2.0).abs() < 1e-15);
        assert!((cd.alpha - 0.6180339887).abs() < 1e-10);

        let cd = critical_data(2, 2).unwrap();
        assert!((cd.alpha - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((cd.beta + 2f64.sqrt() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn critical_data_invariants() {
        for m in 2..=6u32 {
            for n in 1..=6u32 {
                let cd = critical_data(m, n).unwrap();
                assert!((cd.alpha * cd.beta + 1.0).abs() < 1e-12);
                assert!((cd.alpha + cd.beta + 2.0 * n as f64 / m as f64).abs() < 1e-12);
                assert!((cd.v_alpha_1 * cd.v_beta_1).abs() - 1.0 < 1e-9);
                assert!(0.0 < cd.alpha && cd.alpha < 1.0 && cd.beta.abs() > 1.0);
            }
        }
    }

    #[test]
    fn conjugate_param_examples() {
        assert_eq!(conjugate_param(c(2.0, 0.0), 3).unwrap(), c(0.5, 0.0));
        assert_eq!(conjugate_param(c(2.0, 0.0), 4).unwrap(), c(-0.5, 0.0));
        for d in [3, 4] {
            let t = c(0.3, 0.4);
            let back = conjugate_param(conjugate_param(t, d).unwrap(), d).unwrap();
            assert!((back - t).norm() < 1e-15);
        }
        assert!(conjugate_param(c(0.0, 0.0), 3).is_err());
    }

    #[test]
    fn trap_disc_examples() {
        // r = 1/3 is feasible at theta = 2/3 for (2, 1)
        assert!((trap_growth(2, 1, 1.0 / 3.0) - 2.0 / 3.0).abs() < 1e-15);
        let td = trap_disc(2, 1, 2.0 / 3.0 + 1e-12).unwrap();
        assert!((td.radius_unit - 1.0 / 3.0).abs() < 1e-9);
        assert!(TrapDisc::with_radius(2, 1, 1.0 / 3.0, 2.0 / 3.0 + 1e-12).is_ok());

        // g(r) = 1 has root sqrt(2) - 1 for (2, 1)
        let r = 2f64.sqrt() - 1.0;
        assert!((trap_growth(2, 1, r) - 1.0).abs() < 1e-14);

        let td = trap_disc(2, 1, DEFAULT_THETA).unwrap();
        assert!(trap_growth(2, 1, td.radius_unit) <= DEFAULT_THETA);
        assert!(td.radius_unit > critical_data(2, 1).unwrap().v_alpha_1);
    }

    #[test]
    fn trap_disc_infeasible_reports_bracket() {
        match trap_disc(2, 1, 0.05) {
            Err(Error::TrapInfeasible { lo, hi, .. }) => assert!(lo < hi),
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert!(trap_disc(2, 1, 1.0).is_err());
    }

    #[test]
    fn trap_growth_is_increasing() {
        for m in 2..=6 {
            for n in 1..=6 {
                let mut prev = 0.0;
                for i in 1..1000 {
                    let g = trap_growth(m, n, i as f64 / 1000.0);
                    assert!(g > prev);
                    prev = g;
                }
            }
        }
    }

    #[test]
    fn trap_radius_above_unit_modulus_contracts() {
        let td = trap_disc(2, 1, DEFAULT_THETA).unwrap();
        for t_abs in [1.5, 4.0, 30.0] {
            let rho = td.radius_for(t_abs);
            let p = fam(2, 1, c(0.0, t_abs));
            for k in 0..360 {
                let z = Complex64::from_polar(rho * 0.999, k as f64 * std::f64::consts::TAU / 360.0);
                assert!(p.eval_map(ExtComplex::Finite(z)).norm() < rho);
            }
        }
    }

    /// Samples |z| = R and checks the doubling bound.
    fn doubling_holds(p: &FamilyParams, radius: f64) -> bool {
        (0..360).all(|k| {
            let z = Complex64::from_polar(radius, k as f64 * std::f64::consts::TAU / 360.0);
            p.eval_map(ExtComplex::Finite(z)).norm() >= 2.0 * radius
        })
    }

    #[test]
    fn escape_radius_examples() {
        let p = fam(2, 1, c(1.0, 0.0));
        assert!((escape_radius(&p) - 6.0).abs() < 1e-12);
        assert!(doubling_holds(&p, 6.0));
        let p = fam(3, 1, c(1.0, 0.0));
        assert!((escape_radius(&p) - 6f64.sqrt()).abs() < 1e-12);
        assert!(doubling_holds(&p, escape_radius(&p)));
        let p = fam(2, 3, c(-0.01, 0.02));
        assert!(doubling_holds(&p, escape_radius(&p)));
        for x in [2.0, 3.0, 10.0, 1e6] {
            assert!((x - 1.0) / (x + 1.0) >= 1.0 / 3.0);
        }
    }

    #[test]
    fn pc_examples() {
        let cc = c(-4.5, 0.0);
        let w = pc_eval(cc, 2, 1, ExtComplex::real(-2.0 / 3.0)).unwrap().finite().unwrap();
        assert!((w - c(-2.0 / 3.0, 0.0)).norm() < 1e-15);
        for cc in [c(-4.5, 0.0), c(0.3, 1.2)] {
            assert_eq!(pc_eval(cc, 2, 1, ExtComplex::ZERO).unwrap(), ExtComplex::ZERO);
            assert_eq!(pc_eval(cc, 2, 1, ExtComplex::real(-1.0)).unwrap().norm(), 0.0);
        }
        let w = pc_eval(c(-2.0, 0.0), 2, 1, ExtComplex::real(1.0)).unwrap();
        assert_eq!(w, ExtComplex::real(-4.0));

        let pc = PcParams::new(3, 2, c(0.7, -0.2)).unwrap();
        for z in [pc.free_critical_point(), 0.0, -1.0] {
            assert!(pc.derivative(ExtComplex::real(z)).unwrap().norm() < 1e-15);
        }
        assert!(pc_eval(c(0.0, 0.0), 2, 1, ExtComplex::ZERO).is_err());
    }

    #[test]
    fn pc_radii() {
        let pc = PcParams::new(2, 1, c(-51.0, 0.0)).unwrap();
        let rho = pc.trap_radius(DEFAULT_THETA);
        let big = pc.escape_radius();
        for k in 0..360 {
            let u = Complex64::from_polar(1.0, k as f64 * std::f64::consts::TAU / 360.0);
            assert!(pc.eval(ExtComplex::Finite(u * rho * 0.999)).norm() < rho);
            assert!(pc.eval(ExtComplex::Finite(u * big)).norm() >= 2.0 * big);
        }
    }

    #[test]
    fn c_of_t_examples() {
        assert_eq!(c_of_t(2, 1, c(1.0, 0.0)).unwrap(), c(-2.0, 0.0));
        let t = (7.0 - 3.0 * 5f64.sqrt()) / 2.0;
        assert!((t - 0.14589803).abs() < 1e-8);
        assert!((c_of_t(2, 1, c(t, 0.0)).unwrap() + 4.5).norm() < 1e-12);
        assert!(c_of_t(2, 1, c(-1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(matches!(c_of_t(3, 1, c(0.5, 0.0)), Err(Error::Unsupported(_))));
        assert!(c_of_t(2, 1, c(0.0, 0.0)).is_err());
    }

    #[test]
    fn critical_values_scale() {
        let p = fam(3, 2, c(0.4, -0.7));
        let cd = p.critical_data();
        let va = p.eval_map(ExtComplex::real(cd.alpha)).finite().unwrap();
        let vb = p.eval_map(ExtComplex::real(cd.beta)).finite().unwrap();
        assert!((va - p.t() * cd.v_alpha_1).norm() < 1e-15);
        assert!((vb - p.t() * cd.v_beta_1).norm() < 1e-12 * vb.norm());
    }

    /// Deterministic sample set for the trap property: 50 t, 10^4 z each.
    #[test]
    fn trap_invariance_sampled() {
        for (m, n) in [(2, 1), (3, 2), (2, 4)] {
            let td = trap_disc(m, n, DEFAULT_THETA).unwrap();
            for i in 0..50 {
                let t = Complex64::from_polar(1.0 - i as f64 / 50.0, i as f64 * 0.731);
                let p = fam(m, n, t);
                let rt = td.radius_unit * t.norm();
                assert!(p.v_beta().norm() > rt);
                for j in 0..10_000u32 {
                    let z = if j % 5 == 0 {
                        ExtComplex::real(j as f64 / 10_000.0)
                    } else {
                        let u = ((j as f64 * 0.618_033_988_75) % 1.0).sqrt();
                        ExtComplex::Finite(Complex64::from_polar(rt * u, j as f64 * 2.399))
                    };
                    assert!(p.eval_map(z).norm() < rt);
                }
            }
        }
    }

    fn arb_t() -> impl Strategy<Value = Complex64> {
        (0.05f64..3.0, -3.2f64..3.2).prop_map(|(r, a)| Complex64::from_polar(r, a))
    }

    fn arb_z() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0)
            .prop_filter("away from 0, +-1", |(x, y)| {
                let z = Complex64::new(*x, *y);
                z.norm() > 0.05 && (z - 1.0).norm() > 0.05 && (z + 1.0).norm() > 0.05
            })
            .prop_map(|(x, y)| Complex64::new(x, y))
    }

    proptest! {
        #[test]
        fn scaling_in_t(m in 2u32..5, n in 1u32..4, t in arb_t(), z in arb_z()) {
            let p = fam(m, n, t);
            let one = fam(m, n, Complex64::new(1.0, 0.0));
            let a = p.eval_map(ExtComplex::Finite(z)).finite().unwrap();
            let b = t * one.eval_map(ExtComplex::Finite(z)).finite().unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1e-300));
        }

        #[test]
        fn conjugacy_identity(m in 2u32..5, n in 1u32..4, t in arb_t(), z in arb_z()) {
            let p = fam(m, n, t);
            let q = p.conjugate();
            let lhs = -p.eval_map(ExtComplex::Finite(-z.inv())).finite().unwrap().inv();
            let rhs = q.eval_map(ExtComplex::Finite(z)).finite().unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());
        }
    }
}
