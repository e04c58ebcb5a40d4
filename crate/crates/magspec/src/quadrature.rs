//! Quadrature rules: a degree-4 symmetric triangle rule and Gauss–Legendre
//! rules on an interval.

/// One point of a barycentric triangle rule: `(l1, l2, l3, weight)`.
/// Weights sum to 1 and are multiplied by the triangle area on use.
pub type TrianglePoint = (f64, f64, f64, f64);

/// Six-point symmetric rule, exact for polynomials of total degree 4.
///
/// With piecewise-linear basis functions and an affine vector potential the
/// stiffness integrand has total degree at most 4, so assembly with this
/// rule is exact and the discrete eigenvalues are true Galerkin values.
pub const TRIANGLE_DEG4: [TrianglePoint; 6] = [
    (
        0.108103018168070,
        0.445948490915965,
        0.445948490915965,
        0.223381589678011,
    ),
    (
        0.445948490915965,
        0.108103018168070,
        0.445948490915965,
        0.223381589678011,
    ),
    (
        0.445948490915965,
        0.445948490915965,
        0.108103018168070,
        0.223381589678011,
    ),
    (
        0.816847572980459,
        0.091576213509771,
        0.091576213509771,
        0.109951743655322,
    ),
    (
        0.091576213509771,
        0.816847572980459,
        0.091576213509771,
        0.109951743655322,
    ),
    (
        0.091576213509771,
        0.091576213509771,
        0.816847572980459,
        0.109951743655322,
    ),
];

/// Gauss–Legendre nodes and weights on `[-1, 1]`, by Newton iteration on the
/// Legendre recurrence. Exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "gauss_legendre needs at least one node");
    let mut out = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((-x, w));
        if 2 * (i + 1) <= n {
            out.push((x, w));
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    out
}

/// Gauss–Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_rule_weights_sum_to_one() {
        let s: f64 = TRIANGLE_DEG4.iter().map(|p| p.3).sum();
        assert!((s - 1.0).abs() < 1e-14, "weight sum {s}");
    }

    #[test]
    fn triangle_rule_is_exact_to_degree_four() {
        // On the reference triangle {x ≥ 0, y ≥ 0, x + y ≤ 1}:
        // ∫ x^p y^q dA = p! q! / (p + q + 2)!
        let factorial = |m: u32| (1..=m).map(f64::from).product::<f64>().max(1.0);
        for p in 0..=4u32 {
            for q in 0..=(4 - p) {
                let exact = factorial(p) * factorial(q) / factorial(p + q + 2);
                // area of reference triangle is 1/2; weights sum to 1
                let approx: f64 = TRIANGLE_DEG4
                    .iter()
                    .map(|&(_, l2, l3, w)| {
                        // reference coordinates: x = l2, y = l3
                        0.5 * w * l2.powi(p as i32) * l3.powi(q as i32)
                    })
                    .sum();
                assert!(
                    (approx - exact).abs() < 1e-15,
                    "x^{p} y^{q}: {approx} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        for n in 1..=12usize {
            let rule = gauss_legendre(n);
            assert_eq!(rule.len(), n);
            let ws: f64 = rule.iter().map(|p| p.1).sum();
            assert!((ws - 2.0).abs() < 1e-13, "weights sum to interval length");
            // highest exact degree 2n-1
            for d in 0..(2 * n) {
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                let got: f64 = rule.iter().map(|&(x, w)| w * x.powi(d as i32)).sum();
                assert!(
                    (got - exact).abs() < 1e-12,
                    "n={n} degree {d}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn mapped_rule_integrates_on_interval() {
        let rule = gauss_legendre_on(8, 0.0, 3.0);
        let got: f64 = rule.iter().map(|&(x, w)| w * x * x).sum();
        assert!((got - 9.0).abs() < 1e-12, "∫₀³ x² = 9, got {got}");
    }
}
