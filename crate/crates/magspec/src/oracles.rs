//! Self-contained reference implementations used by the test suites.
//!
//! Everything here is deliberately naive — characteristic-determinant
//! scans, power series — and shares no code with the production solver
//! paths, so agreement between the two is meaningful evidence of
//! correctness rather than a tautology. Only small problems are supported.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Determinant of a small dense complex matrix by LU with partial
/// pivoting.
fn determinant(mut a: Vec<Complex64>, n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut piv = col;
        let mut best = a[col * n + col].norm();
        for r in col + 1..n {
            let v = a[r * n + col].norm();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for t in 0..n {
                a.swap(col * n + t, piv * n + t);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            for t in col..n {
                let sub = factor * a[col * n + t];
                a[r * n + t] -= sub;
            }
        }
    }
    det
}

fn char_value(k: &[Complex64], m: &[f64], n: usize, x: f64) -> f64 {
    let mut a = k.to_vec();
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] -= Complex64::new(x * m[i * n + j], 0.0);
        }
    }
    // det(K - xM) is real for a Hermitian pencil; the imaginary part is
    // roundoff noise
    determinant(a, n).re
}

/// All eigenvalues of the Hermitian pencil `(K, M)` (dimension ≤ 8, `M`
/// strictly diagonally dominant) found as sign changes of `det(K - xM)`
/// over a Gershgorin interval, refined by bisection.
///
/// Multiple eigenvalues produce no sign change and are missed; callers
/// assert on the returned count.
pub fn charpoly_eigenvalues(k: &[Complex64], m: &[f64], n: usize) -> Result<Vec<f64>> {
    if n == 0 || n > 8 || k.len() != n * n || m.len() != n * n {
        return Err(Error::InvalidInput(format!(
            "determinant oracle supports dimensions 1..=8, got n={n}, k:{}, m:{}",
            k.len(),
            m.len()
        )));
    }
    let mut mdom = f64::INFINITY;
    for i in 0..n {
        let mut off = 0.0;
        for j in 0..n {
            if j != i {
                off += m[i * n + j].abs();
            }
        }
        mdom = mdom.min(m[i * n + i] - off);
    }
    if mdom <= 0.0 {
        return Err(Error::InvalidInput(
            "determinant oracle needs a strictly diagonally dominant mass matrix".into(),
        ));
    }
    let mut kmax: f64 = 0.0;
    for i in 0..n {
        let row: f64 = (0..n).map(|j| k[i * n + j].norm()).sum();
        kmax = kmax.max(row);
    }
    let radius = kmax / mdom + 1.0;
    let samples = 20_000usize;
    let mut roots = Vec::new();
    let mut x_prev = -radius;
    let mut f_prev = char_value(k, m, n, x_prev);
    for s in 1..=samples {
        let x = -radius + 2.0 * radius * (s as f64) / (samples as f64);
        let f = char_value(k, m, n, x);
        if f == 0.0 {
            roots.push(x);
        } else if f_prev != 0.0 && f.signum() != f_prev.signum() {
            let (mut lo, mut hi) = (x_prev, x);
            let mut flo = f_prev;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                let fm = char_value(k, m, n, mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = f;
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * radius);
    Ok(roots)
}

/// A random dense Hermitian `K` (exactly Hermitian by construction) and a
/// strictly diagonally dominant symmetric `M`, for solver cross-checks.
pub fn random_hermitian_pencil(n: usize, seed: u64) -> (Vec<Complex64>, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..=i {
            if i == j {
                k[i * n + i] = Complex64::new(2.0 * rng.gen::<f64>() - 1.0, 0.0);
            } else {
                let re = rng.gen::<f64>() - 0.5;
                let im = rng.gen::<f64>() - 0.5;
                k[i * n + j] = Complex64::new(re, im);
                k[j * n + i] = Complex64::new(re, -im);
            }
        }
    }
    let mut m = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..=i {
            if i == j {
                m[i * n + i] = 1.0 + 0.2 * rng.gen::<f64>();
            } else {
                let v = (rng.gen::<f64>() - 0.5) * 0.8 / (n as f64);
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
    }
    (k, m)
}

/// `J₀(x)` by its power series (adequate for `|x| ≤ 12`).
pub fn bessel_j0(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..200 {
        term *= -q / ((k * k) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// First positive zero of `J₀`, by bisection on `[2, 3]`.
pub fn bessel_j0_first_zero() -> f64 {
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    debug_assert!(bessel_j0(lo) > 0.0 && bessel_j0(hi) < 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if bessel_j0(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_of_triangular_matrix() {
        let n = 3;
        let a = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(5.0, 1.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(7.0, -2.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-4.0, 0.0),
        ];
        let d = determinant(a, n);
        assert!((d.re + 24.0).abs() < 1e-12 && d.im.abs() < 1e-12);
    }

    #[test]
    fn charpoly_oracle_on_a_known_matrix() {
        // [[2, i], [-i, 2]] → {1, 3}
        let k = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let m = vec![1.0, 0.0, 0.0, 1.0];
        let roots = charpoly_eigenvalues(&k, &m, 2).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-10);
        assert!((roots[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn bessel_j0_series_and_zero() {
        assert!((bessel_j0(0.0) - 1.0).abs() < 1e-15);
        // frozen reference values
        assert!((bessel_j0(1.0) - 0.7651976865579666).abs() < 1e-14);
        assert!((bessel_j0(2.404825557695773)).abs() < 1e-14);
        let z = bessel_j0_first_zero();
        assert!((z - 2.404825557695773).abs() < 1e-13);
        assert!((z * z - 5.783185962946785).abs() < 1e-12);
    }
}
