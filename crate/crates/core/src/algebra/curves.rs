//! Fixed-point multiplier curves of `f_t` and `P_c`, and the relation
//! between `t` and `c` obtained by eliminating the multiplier.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::poly::{IntPoly, Var};
use super::resultant::{sylvester_resultant_keeping, ResultantReport};
use super::roots::polynomial_roots;
use crate::error::{Error, Result};
use crate::family::FamilyParams;
use crate::sphere::ExtComplex;

/// Largest `m + n` accepted by the symbolic pipeline.
pub const MAX_SYMBOLIC_DEGREE: u32 = 8;

fn guard(m: u32, n: u32) -> Result<()> {
    if m < 2 || n < 1 {
        return Err(Error::InvalidParams(format!("need m >= 2 and n >= 1, got ({m}, {n})")));
    }
    if m + n > MAX_SYMBOLIC_DEGREE {
        return Err(Error::SizeGuard { d: m + n, limit: MAX_SYMBOLIC_DEGREE });
    }
    Ok(())
}

fn lin(a: i64, b: i64) -> IntPoly {
    // a + b z
    &IntPoly::constant(a) + &IntPoly::term(b, super::poly::Monomial::var(Var::Z, 1))
}

fn z_pow(e: u32) -> IntPoly {
    IntPoly::var(Var::Z).pow(e)
}

/// Polynomial form of `f_t(z) = z` (the root `z = 0` removed) and of
/// `lambda = f'_t(z)` with denominators cleared:
///
/// ```text
/// p(z, t)          = t z^(m-1) (1-z)^n - (1+z)^n
/// q2(z, t, lambda) = lambda (1+z)^(n+1) - t z^(m-1) (1-z)^(n-1) (m(1-z^2) - 2nz)
/// ```
pub fn fixed_point_system(m: u32, n: u32) -> (IntPoly, IntPoly) {
    let t = IntPoly::var(Var::T);
    let lambda = IntPoly::var(Var::Lambda);
    let one_minus = lin(1, -1);
    let one_plus = lin(1, 1);
    let p = &(&(&t * &z_pow(m - 1)) * &one_minus.pow(n)) - &one_plus.pow(n);
    let crit = &(&IntPoly::constant(m as i64) * &(&IntPoly::one() - &z_pow(2))) - &lin(0, 2 * n as i64);
    let rhs = &(&(&t * &z_pow(m - 1)) * &one_minus.pow(n - 1)) * &crit;
    let q2 = &(&lambda * &one_plus.pow(n + 1)) - &rhs;
    (p, q2)
}

/// The same system for `P_c(z) = c z^m (z+1)^n`:
///
/// ```text
/// p(z, c)      = c z^(m-1) (z+1)^n - 1
/// q2(z, c, mu) = mu - c z^(m-1) (z+1)^(n-1) ((m+n) z + m)
/// ```
pub fn pc_fixed_point_system(m: u32, n: u32) -> (IntPoly, IntPoly) {
    let c = IntPoly::var(Var::C);
    let mu = IntPoly::var(Var::Mu);
    let zp1 = lin(1, 1);
    let p = &(&(&c * &z_pow(m - 1)) * &zp1.pow(n)) - &IntPoly::one();
    let deriv = &(&(&c * &z_pow(m - 1)) * &zp1.pow(n - 1)) * &lin(m as i64, (m + n) as i64);
    (p, &mu - &deriv)
}

/// `Res_z(p, q2)` for `f_t`: the relation between `t` and the multiplier of a
/// fixed point.
pub fn multiplier_curve(m: u32, n: u32) -> Result<ResultantReport> {
    guard(m, n)?;
    let (p, q2) = fixed_point_system(m, n);
    sylvester_resultant_keeping(&p, &q2, Var::Z, Var::Lambda)
}

/// `Res_z(p, q2)` for `P_c`.
pub fn pc_multiplier_curve(m: u32, n: u32) -> Result<ResultantReport> {
    guard(m, n)?;
    let (p, q2) = pc_fixed_point_system(m, n);
    sylvester_resultant_keeping(&p, &q2, Var::Z, Var::Mu)
}

/// `Res_lambda(rf, rp)`, after renaming `mu` to `lambda` in `rp`. The result
/// is split relative to `c`, so factors in `t` alone are reported as removed.
pub fn eliminate_multiplier(rf: &IntPoly, rp: &IntPoly) -> Result<ResultantReport> {
    let rp = if rp.contains(Var::Lambda) { rp.clone() } else { rp.rename(Var::Mu, Var::Lambda) };
    for q in [rf, &rp] {
        if !q.contains(Var::Lambda) {
            return Err(Error::MissingVariable("lambda"));
        }
    }
    sylvester_resultant_keeping(rf, &rp, Var::Lambda, Var::C)
}

/// Reference polynomials for `(m, n) = (2, 1)`.
pub mod known {
    use super::*;

    fn parse(s: &str) -> IntPoly {
        s.parse().expect("well-formed constant")
    }

    /// `2 t lambda^2 + (1 - 10t + t^2) lambda + (-2 + 14t - 2t^2)`.
    pub fn rf_2_1() -> IntPoly {
        parse("2*t*lambda^2 + lambda - 10*t*lambda + t^2*lambda - 2 + 14*t - 2*t^2")
    }

    /// `mu^2 - (c + 6) mu + (9 + 2c)`.
    pub fn rp_2_1() -> IntPoly {
        parse("mu^2 - c*mu - 6*mu + 9 + 2*c")
    }

    /// `1 + 2t + t^2 + 2tc`; its square is the eliminated relation.
    pub fn relation_2_1() -> IntPoly {
        parse("1 + 2*t + t^2 + 2*t*c")
    }
}

/// `a == b` or `a == -b`.
pub fn equal_up_to_sign(a: &IntPoly, b: &IntPoly) -> bool {
    a == b || *a == -b
}

/// Whether `a` is a nonzero integer multiple of `b`.
pub fn integer_multiple_of(a: &IntPoly, b: &IntPoly) -> Option<BigInt> {
    let (_, la) = a.leading()?;
    let (_, lb) = b.leading()?;
    let k = la / lb;
    if k == BigInt::from(0) {
        return None;
    }
    (b.scale(&k) == *a).then_some(k)
}

/// Nontrivial fixed points of `f_t` (numeric roots of `p(z, t)`) with their
/// multipliers `f'_t(z)`.
pub fn fixed_point_multipliers(params: &FamilyParams) -> Vec<(Complex64, Complex64)> {
    let (p, _) = fixed_point_system(params.m(), params.n());
    let t = params.t();
    let coeffs: Vec<Complex64> = p
        .coefficients_in(Var::Z)
        .iter()
        .map(|c| c.eval(&[(Var::T, t)]))
        .collect();
    polynomial_roots(&coeffs)
        .into_iter()
        .filter_map(|z| {
            let lambda = params.eval_derivative(ExtComplex::Finite(z)).ok()?;
            Some((z, lambda))
        })
        .collect()
}
