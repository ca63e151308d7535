//! Sylvester resultants by fraction-free (Bareiss) elimination, and the
//! bookkeeping that separates a resultant into content, extraneous factors
//! and a primitive part.
//!
//! Sign convention: the Sylvester matrix lists the `deg b` shifted rows of
//! `a` first, coefficients from the highest power down, so that
//! `Res(a, b) = lc(a)^deg(b) * prod_{a(x)=0} b(x)` and `Res(z - x, z - y) = x - y`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, Monomial, Var};
use crate::error::{Error, Result};

/// Sylvester matrix of `a` and `b` with respect to `var`.
pub fn sylvester_matrix(a: &IntPoly, b: &IntPoly, var: Var) -> Result<Vec<Vec<IntPoly>>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Degenerate("zero polynomial in resultant".into()));
    }
    let da = a.degree_in(var).unwrap_or(0) as usize;
    let db = b.degree_in(var).unwrap_or(0) as usize;
    if da == 0 || db == 0 {
        return Err(Error::Degenerate(format!(
            "both polynomials need positive degree in {}",
            var.name()
        )));
    }
    let size = da + db;
    let mut rows = vec![vec![IntPoly::zero(); size]; size];
    let ca = a.coefficients_in(var);
    let cb = b.coefficients_in(var);
    for i in 0..db {
        for (k, c) in ca.iter().enumerate() {
            rows[i][i + da - k] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in cb.iter().enumerate() {
            rows[db + i][i + db - k] = c.clone();
        }
    }
    Ok(rows)
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<IntPoly>>) -> IntPoly {
    let n = m.len();
    if n == 0 {
        return IntPoly::one();
    }
    let mut negate = false;
    let mut prev = IntPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return IntPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss step divides exactly");
            }
            m[i][k] = IntPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `Res_var(a, b)`.
pub fn resultant(a: &IntPoly, b: &IntPoly, var: Var) -> Result<IntPoly> {
    Ok(bareiss_determinant(sylvester_matrix(a, b, var)?))
}

/// A resultant split as `raw = content * prod(removed_factors) * primitive`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultantReport {
    pub raw: IntPoly,
    /// Signed integer content; the sign makes `primitive` positive-leading.
    pub content: BigInt,
    /// Factors free of `keep`, each primitive with positive leading coefficient.
    pub removed_factors: Vec<IntPoly>,
    pub primitive: IntPoly,
    /// The symbol whose coefficients were searched for common factors.
    pub keep: Option<Var>,
}

impl ResultantReport {
    /// Splits `raw`. With `keep = Some(v)`, monomial factors in the other
    /// symbols are removed, and so is the gcd of the `v`-coefficients when
    /// they are univariate in a single other symbol.
    pub fn new(raw: IntPoly, keep: Option<Var>) -> Self {
        if raw.is_zero() {
            return ResultantReport {
                raw: raw.clone(),
                content: BigInt::zero(),
                removed_factors: vec![],
                primitive: raw,
                keep,
            };
        }
        let mut content = raw.integer_content();
        let mut rest = raw.div_exact(&IntPoly::constant(content.clone())).expect("content divides");
        let mut removed = vec![];
        if let Some(v) = keep {
            let mut mono = rest.monomial_content();
            mono.0[v.index()] = 0;
            if mono != Monomial::one() {
                let f = IntPoly::term(1, mono);
                rest = rest.div_exact(&f).expect("monomial content divides");
                removed.push(f);
            }
            if let Some(g) = coefficient_gcd(&rest, v) {
                rest = rest.div_exact(&g).expect("coefficient gcd divides");
                removed.push(g);
            }
        }
        let sign = match keep {
            Some(v) if rest.contains(v) => rest.leading_sign_in(v),
            _ => {
                if rest.leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
                    -1
                } else {
                    1
                }
            }
        };
        if sign < 0 {
            rest = -rest;
            content = -content;
        }
        ResultantReport { raw, content, removed_factors: removed, primitive: rest, keep }
    }

    /// Checks `raw = content * prod(removed) * primitive` by exact multiplication.
    pub fn verify(&self) -> bool {
        let mut prod = IntPoly::constant(self.content.clone());
        for f in &self.removed_factors {
            prod = &prod * f;
        }
        &prod * &self.primitive == self.raw
    }
}

/// Resultant of `a` and `b` w.r.t. `var`, split relative to the first
/// multiplier symbol (`lambda`, then `mu`) present in the result.
pub fn sylvester_resultant(a: &IntPoly, b: &IntPoly, var: Var) -> Result<ResultantReport> {
    let raw = resultant(a, b, var)?;
    let keep = [Var::Lambda, Var::Mu].into_iter().find(|v| raw.contains(*v));
    Ok(ResultantReport::new(raw, keep))
}

pub fn sylvester_resultant_keeping(a: &IntPoly, b: &IntPoly, var: Var, keep: Var) -> Result<ResultantReport> {
    Ok(ResultantReport::new(resultant(a, b, var)?, Some(keep)))
}

/// Non-constant gcd of the `v`-coefficients of `p`, when all of them lie in
/// `Z[x]` for one symbol `x`.
fn coefficient_gcd(p: &IntPoly, v: Var) -> Option<IntPoly> {
    let coeffs: Vec<IntPoly> = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    let mut others: Vec<Var> = coeffs.iter().flat_map(|c| c.variables()).collect();
    others.sort();
    others.dedup();
    let [x] = others[..] else { return None };
    let mut g: Vec<BigInt> = vec![];
    for c in &coeffs {
        g = upoly_gcd(&g, &to_dense(c, x));
        if g.len() <= 1 {
            return None;
        }
    }
    Some(from_dense(&g, x))
}

fn to_dense(p: &IntPoly, x: Var) -> Vec<BigInt> {
    let d = p.degree_in(x).unwrap_or(0) as usize;
    let mut out = vec![BigInt::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exp(x) as usize] += c;
    }
    trim(out)
}

fn from_dense(coeffs: &[BigInt], x: Var) -> IntPoly {
    let mut out = IntPoly::zero();
    for (k, c) in coeffs.iter().enumerate() {
        out = &out + &IntPoly::term(c.clone(), Monomial::var(x, k as u32));
    }
    out
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

/// Primitive part with positive leading coefficient.
fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return vec![];
    }
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    v.iter().map(|c| c / &g * &sign).collect()
}

/// Pseudo-remainder of `a` by `b` (both dense, `b` nonzero).
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (k, bc) in b.iter().enumerate() {
            r[dr - db + k] -= &lr * bc;
        }
        r = trim(r);
    }
    r
}

/// Primitive gcd in `Z[x]`; an empty input acts as zero.
fn upoly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.is_empty() {
        return b;
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = prem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    a
}
