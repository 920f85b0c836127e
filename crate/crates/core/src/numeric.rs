//! Floating-point root approximations. Never trusted for exact answers:
//! the census only uses them to discard candidates far above a bound.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::poly::IntPoly;

/// All complex roots of `p` (degree >= 1) by Aberth–Ehrlich iteration.
pub fn roots_f64(p: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::MAX))
        .collect();
    roots_of_coeffs(&c)
}

pub fn roots_of_coeffs(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    if n == 1 {
        return vec![Complex64::new(-c[0] / lead, 0.0)];
    }
    let radius = c[..n]
        .iter()
        .enumerate()
        .map(|(i, &x)| (x / lead).abs().powf(1.0 / (n - i) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius,
                0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64,
            )
        })
        .collect();
    let dc: Vec<f64> = (1..=n).map(|i| c[i] * i as f64).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = horner(c, &dc, z[i]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner(c: &[f64], dc: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    for &x in c.iter().rev() {
        v = v * z + x;
    }
    let mut dv = Complex64::new(0.0, 0.0);
    for &x in dc.iter().rev() {
        dv = dv * z + x;
    }
    (v, dv)
}

/// Approximate Mahler measure.
pub fn mahler_f64(p: &IntPoly) -> f64 {
    let lead = p.leading().to_f64().unwrap_or(f64::MAX).abs();
    roots_f64(&p.strip_zero_roots())
        .iter()
        .map(|r| r.norm().max(1.0))
        .product::<f64>()
        * lead
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_measure() {
        let m = mahler_f64(&IntPoly::from_i64s(&[-1, -1, 1]));
        assert!((m - 1.618_033_988_749_895).abs() < 1e-12);
        let m = mahler_f64(&IntPoly::from_i64s(&[0, 0, -2, 0, 0, 5]));
        assert!((m - 5.0).abs() < 1e-9);
    }
}
