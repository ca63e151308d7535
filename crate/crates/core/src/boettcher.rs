//! Green's functions of the two superattracting basins, the Böttcher
//! coordinate at 0, and the parameter maps `E_0`, `E_k`, `E_res`.
//!
//! Both Green's functions use the normalization `G(z) = log|z| + o(1)` at
//! their fixed point, so `G(f_t(z)) = m G(z) + log|t|` on either basin. The
//! series actually summed is
//!
//! ```text
//! G(z) = log|z| + sum_{k>=0} n log|(1 - z_k)/(1 + z_k)| / m^(k+1),   z_k = f_t^k(z)
//! ```
//!
//! which telescopes from `log|z_{k+1}| = log|t| + m log|z_k| + n log|q_k|`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::family::{self, FamilyParams, DEFAULT_THETA};
use crate::orbit::{self, Dynamics, FamilyMap, PointClass, VERIFY_BUDGET};
use crate::sphere::ExtComplex;

/// Product factors closer than this to 1 end the Böttcher product.
pub const FACTOR_EPS: f64 = 1e-14;
pub const DEFAULT_KMAX: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenValue {
    pub value: f64,
    pub iterations_used: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoettcherValue {
    pub value: ExtComplex,
    /// Factors whose principal argument exceeded `pi/2` in modulus.
    pub branch_warnings: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Basin {
    Zero,
    Infinity,
}

impl Basin {
    fn name(self) -> &'static str {
        match self {
            Basin::Zero => "0",
            Basin::Infinity => "infinity",
        }
    }

    fn inside<D: Dynamics>(self, map: &D, z: &ExtComplex) -> bool {
        match self {
            Basin::Zero => z.norm() < map.trap_radius(),
            Basin::Infinity => z.norm() >= map.escape_radius(),
        }
    }
}

/// `log|(1-z)/(1+z)|`, evaluated through `1/z` for large `|z|`.
fn log_abs_ratio(z: &ExtComplex) -> f64 {
    match z {
        ExtComplex::Infinity => 0.0,
        ExtComplex::Finite(z) if z.norm() > 1.0 => {
            let w = z.inv();
            ((w - 1.0) / (w + 1.0)).norm().ln()
        }
        ExtComplex::Finite(z) => ((1.0 - z) / (1.0 + z)).norm().ln(),
    }
}

fn green(map: &FamilyMap, z: ExtComplex, tol: f64, budget: usize, basin: Basin) -> Result<GreenValue> {
    let m = map.params.m() as f64;
    let n = map.params.n() as f64;
    let mut value = z.norm().ln();
    let mut zk = z;
    let mut scale = 1.0;
    let mut entered_at = None;
    for k in 0..=budget {
        if !value.is_finite() {
            // z or one of its images hit 0 or infinity exactly
            let ok = match basin {
                Basin::Zero => value == f64::NEG_INFINITY,
                Basin::Infinity => value == f64::INFINITY,
            };
            if !ok {
                break;
            }
            return Ok(GreenValue { value, iterations_used: k, converged: true });
        }
        if entered_at.is_none() && basin.inside(map, &zk) {
            entered_at = Some(k);
        }
        scale /= m;
        let inc = n * log_abs_ratio(&zk) * scale;
        value += inc;
        if entered_at.is_some() && inc.abs() < tol {
            return Ok(GreenValue { value, iterations_used: k + 1, converged: true });
        }
        if entered_at.is_none() {
            let other = match basin {
                Basin::Zero => Basin::Infinity,
                Basin::Infinity => Basin::Zero,
            };
            if other.inside(map, &zk) {
                break;
            }
        }
        zk = map.step(zk);
    }
    Err(Error::NotInBasin { target: basin.name(), budget })
}

/// `log|Phi_t(z)|` for `z` attracted to 0, with `budget` iterations allowed.
pub fn green_zero_with(map: &FamilyMap, z: ExtComplex, tol: f64, budget: usize) -> Result<GreenValue> {
    green(map, z, tol, budget, Basin::Zero)
}

/// Green's function of the basin of infinity, with `budget` iterations allowed.
pub fn green_infinity_with(map: &FamilyMap, z: ExtComplex, tol: f64, budget: usize) -> Result<GreenValue> {
    green(map, z, tol, budget, Basin::Infinity)
}

fn default_map(p: &FamilyParams) -> FamilyMap {
    let trap = family::trap_disc(p.m(), p.n(), DEFAULT_THETA).expect("default theta is feasible");
    FamilyMap::new(*p, &trap)
}

/// `G_0(z) = log|Phi_t(z)|`; tends to `-log|t|/(m-1)` at the basin boundary.
pub fn green_zero(p: &FamilyParams, z: ExtComplex, tol: f64) -> Result<GreenValue> {
    green_zero_with(&default_map(p), z, tol, VERIFY_BUDGET)
}

/// `G_inf(z) = log|z| + o(1)` near infinity; `G_inf(f_t(z)) = m G_inf(z) + log|t|`.
pub fn green_infinity(p: &FamilyParams, z: ExtComplex, tol: f64) -> Result<GreenValue> {
    green_infinity_with(&default_map(p), z, tol, VERIFY_BUDGET)
}

/// The Böttcher coordinate at 0 as the telescoping product
/// `Phi_t(z) = z prod_k (q_k^n)^(1/m^(k+1))` with principal-branch factors.
pub fn boettcher_with(map: &FamilyMap, z: ExtComplex, kmax: usize) -> Result<BoettcherValue> {
    let m = map.params.m() as f64;
    let n = map.params.n();
    let z0 = match z {
        ExtComplex::Infinity => {
            return Err(Error::NotInBasin { target: "0", budget: kmax });
        }
        ExtComplex::Finite(z0) => z0,
    };
    if z0 == Complex64::new(0.0, 0.0) {
        return Ok(BoettcherValue { value: ExtComplex::ZERO, branch_warnings: 0 });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 1.0;
    let mut warnings = 0;
    let mut zk = z;
    for _ in 0..kmax {
        let w = match zk {
            ExtComplex::Finite(w) => w,
            ExtComplex::Infinity => return Err(Error::NotInBasin { target: "0", budget: kmax }),
        };
        if w.norm() >= map.escape_radius() {
            return Err(Error::NotInBasin { target: "0", budget: kmax });
        }
        let factor = ((1.0 - w) / (1.0 + w)).powu(n);
        if factor == Complex64::new(0.0, 0.0) {
            // a preimage of 0
            return Ok(BoettcherValue { value: ExtComplex::ZERO, branch_warnings: warnings });
        }
        if factor.arg().abs() > std::f64::consts::FRAC_PI_2 {
            warnings += 1;
        }
        scale /= m;
        let term = factor.ln() * scale;
        sum += term;
        if w.norm() < map.trap_radius() && term.norm() < FACTOR_EPS {
            return Ok(BoettcherValue {
                value: ExtComplex::from(z0 * sum.exp()),
                branch_warnings: warnings,
            });
        }
        zk = map.step(zk);
    }
    Err(Error::Convergence { kmax, partial: z0 * sum.exp() })
}

pub fn boettcher_coordinate(p: &FamilyParams, z: ExtComplex, kmax: usize) -> Result<BoettcherValue> {
    boettcher_with(&default_map(p), z, kmax)
}

/// Which of the parameter maps to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EKind {
    /// `E_0(t) = t Phi_t(v^alpha_t)^(m-1)`.
    E0,
    /// `E_k(t) = t^(1/(m-1)) Phi_t(f_t^k(v^alpha_t))`, `k >= 1`.
    Ek(u32),
    /// `E_res(t) = t Phi_t(v^beta_t)^(m-1)`.
    Eres,
}

impl EKind {
    fn name(&self) -> &'static str {
        match self {
            EKind::E0 => "E0",
            EKind::Ek(_) => "Ek",
            EKind::Eres => "Eres",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EValue {
    pub value: Complex64,
    pub branch_warnings: usize,
}

/// Evaluates `E_0`, `E_k` or `E_res` at `t` after checking the locus with the
/// parameter classifier. `t^(1/(m-1))` uses the principal branch.
pub fn e_value(m: u32, n: u32, t: Complex64, kind: EKind, budget: usize) -> Result<EValue> {
    let trap = family::trap_disc(m, n, DEFAULT_THETA)?;
    let settings = orbit::OrbitSettings::with_budget(budget);
    let cls = orbit::classify_parameter_with(&trap, t, &settings)?;
    let p = FamilyParams::new(m, n, t)?;
    let map = FamilyMap::new(p, &trap);
    let domain = |reason: &str| Error::Domain { kind: kind.name(), reason: reason.to_string() };
    let power = (m - 1) as i32;
    match kind {
        EKind::E0 => {
            if !matches!(cls.alpha.outcome, PointClass::BasinZero { .. }) {
                return Err(domain("the alpha critical orbit is not attracted to 0"));
            }
            let phi = boettcher_with(&map, p.v_alpha(), budget)?;
            let phi_v = phi.value.finite().expect("finite in basin of 0");
            Ok(EValue { value: t * phi_v.powi(power), branch_warnings: phi.branch_warnings })
        }
        EKind::Eres => {
            if !matches!(cls.beta.outcome, PointClass::BasinZero { .. }) || t.norm() > 1.0 {
                return Err(domain("the beta critical value is not in the basin of 0 with |t| <= 1"));
            }
            let phi = boettcher_with(&map, p.v_beta(), budget)?;
            let phi_v = phi.value.finite().expect("finite in basin of 0");
            Ok(EValue { value: t * phi_v.powi(power), branch_warnings: phi.branch_warnings })
        }
        EKind::Ek(k) => {
            if k == 0 {
                return Err(domain("E_k needs k >= 1; use E0"));
            }
            if !matches!(cls.alpha.outcome, PointClass::BasinZero { .. }) {
                return Err(domain("the alpha critical orbit is not attracted to 0"));
            }
            let mut w = p.v_alpha();
            for _ in 0..k {
                w = p.eval_map(w);
            }
            let phi = boettcher_with(&map, w, budget)?;
            let phi_w = phi.value.finite().expect("finite in basin of 0");
            let root = (t.ln() / (m - 1) as f64).exp();
            Ok(EValue { value: root * phi_w, branch_warnings: phi.branch_warnings })
        }
    }
}
