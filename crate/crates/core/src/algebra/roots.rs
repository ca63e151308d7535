//! Numeric roots of complex polynomials (Aberth–Ehrlich iteration).

use num_complex::Complex64;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `sum_k coeffs[k] z^k`, with multiplicity. Trailing zero
/// coefficients are dropped first.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.last().map(|c| c.norm() == 0.0).unwrap_or(false) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    // Cauchy bound for the initial circle
    let bound = 1.0 + coeffs[..deg].iter().map(|c| (c / lead).norm()).fold(0.0, f64::max);
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + k as f64 * std::f64::consts::TAU / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = horner(&coeffs, zs[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| (zs[i] - zs[j]).inv())
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                zs[i] -= step;
                moved = moved.max(step.norm() / zs[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    zs
}
