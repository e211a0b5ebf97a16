//! Floating-point polynomial root finding.
//!
//! Roots come from the eigenvalues of the companion matrix (complex Schur
//! form) followed by a few Newton steps on the original coefficients; when
//! the Schur iteration does not converge, Aberth–Ehrlich iteration from a
//! circle of starting points takes over. Continuation uses warm-started
//! Aberth–Ehrlich sweeps.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// A finite complex number rendered for reports.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ComplexApprox {
    pub re: f64,
    pub im: f64,
}

impl ComplexApprox {
    pub fn new(z: Complex64) -> Option<Self> {
        (z.re.is_finite() && z.im.is_finite()).then_some(Self { re: z.re, im: z.im })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// `re` and `im` with 15 significant digits.
    pub fn display(&self) -> String {
        format!("{:.14e}{:+.14e}i", self.re, self.im)
    }
}

/// Evaluate `Σ c_k x^k` and its derivative.
pub fn horner(coeffs: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[k] x^k` (ascending order), with
/// multiplicity. Leading zeros are dropped; the zero polynomial has no roots.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    // factor out roots at zero exactly
    let zeros = c.iter().take_while(|z| z.norm() == 0.0).count();
    let c = &c[zeros..];
    let d = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if d == 0 {
        return roots;
    }
    let lead = c[d];
    if d == 1 {
        roots.push(-c[0] / lead);
        return roots;
    }
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..d {
        m[(i, d - 1)] = -c[i] / lead;
    }
    let eig = nalgebra::Schur::try_new(m, 1e-15, 2000)
        .and_then(|s| s.eigenvalues())
        .map(|v| v.iter().copied().collect::<Vec<_>>())
        .filter(|v| v.len() == d && v.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    match eig {
        Some(eig) => roots.extend(eig.into_iter().map(|z| polish(c, z))),
        None => roots.extend(aberth(c, &initial_guesses(c))),
    }
    roots
}

/// Starting points on a circle of the Cauchy-bound radius, slightly rotated
/// off the axes.
pub fn initial_guesses(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d].norm();
    let radius = coeffs[..d]
        .iter()
        .map(|c| c.norm() / lead)
        .fold(0.0, f64::max)
        .max(1e-3);
    (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Aberth–Ehrlich simultaneous iteration from the given approximations.
pub fn aberth(coeffs: &[Complex64], start: &[Complex64]) -> Vec<Complex64> {
    let mut z = start.to_vec();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..z.len() {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..z.len())
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.into_iter().map(|r| polish(coeffs, r)).collect()
}

/// Aberth–Ehrlich from nearby approximations, for continuation. Returns
/// `None` unless every correction falls below `1e-13` relative within
/// `max_iter` sweeps.
pub fn aberth_warm(coeffs: &[Complex64], start: &[Complex64], max_iter: usize) -> Option<Vec<Complex64>> {
    let mut z = start.to_vec();
    for _ in 0..max_iter {
        let mut max_step: f64 = 0.0;
        for i in 0..z.len() {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..z.len() {
                if j != i {
                    sum += (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return None;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step < 1e-13 {
            return Some(z);
        }
    }
    None
}

/// Newton steps from `z`, keeping the best iterate.
pub fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut best_val, _) = horner(coeffs, z);
    for _ in 0..8 {
        let (p, dp) = horner(coeffs, z);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = z - p / dp;
        let (pn, _) = horner(coeffs, next);
        if pn.norm().is_nan() || pn.norm() >= best_val.norm() {
            break;
        }
        best_val = pn;
        z = next;
    }
    z
}

/// Roots of a real polynomial.
pub fn real_poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    poly_roots(&c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-10
    }

    #[test]
    fn quadratic_roots() {
        let r = real_poly_roots(&[1.0, 0.0, 1.0]);
        assert_eq!(r.len(), 2);
        assert!(r.iter().any(|&z| close(z, Complex64::new(0.0, 1.0))));
        assert!(r.iter().any(|&z| close(z, Complex64::new(0.0, -1.0))));
    }

    #[test]
    fn roots_with_zeros_and_leading_zero() {
        // x^2 (x - 3), stored with a trailing zero coefficient
        let r = real_poly_roots(&[0.0, 0.0, -3.0, 1.0, 0.0]);
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(r.iter().any(|&z| close(z, Complex64::new(3.0, 0.0))));
        assert!(real_poly_roots(&[2.0]).is_empty());
    }

    #[test]
    fn symmetric_pairs_converge() {
        let r = real_poly_roots(&[9.0, 0.0, -14.0, 0.0, 1.0]);
        assert_eq!(r.len(), 4);
        for z in &r {
            let (p, _) = horner(&[9.0, 0.0, -14.0, 0.0, 1.0].map(|x| Complex64::new(x, 0.0)), *z);
            assert!(p.norm() < 1e-9);
        }
    }

    #[test]
    fn aberth_from_circle() {
        let c = [2.0, -3.0, 1.0].map(|x| Complex64::new(x, 0.0));
        let mut r: Vec<f64> = aberth(&c, &initial_guesses(&c)).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] - 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degree_eight() {
        // (x-1)(x-2)...(x-8)
        let mut c = vec![1.0];
        for k in 1..=8 {
            let mut next = vec![0.0; c.len() + 1];
            for (i, v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * k as f64;
            }
            c = next;
        }
        let mut r: Vec<f64> = real_poly_roots(&c).iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (k, v) in r.iter().enumerate() {
            assert!((v - (k + 1) as f64).abs() < 1e-8);
        }
    }
}
