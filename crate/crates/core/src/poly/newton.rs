//! Power sums and Newton identities over the integers.
//!
//! For `f` with leading coefficient `a` and roots `z_i`, the numbers `a z_i`
//! are algebraic integers, so their power sums are integers. Polynomials
//! whose roots are products or powers of the `a z_i` are rebuilt from power
//! sums with exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;

impl IntPoly {
    /// `Q_1..Q_count` with `Q_n = sum_i (a z_i)^n`.
    pub fn scaled_power_sums(&self, count: usize) -> Vec<BigInt> {
        let d = self.degree();
        let a = self.leading().clone();
        // c[i] = coefficient of t^(d-i)
        let c: Vec<&BigInt> = (0..=d).map(|i| self.coeff(d - i)).collect();
        let mut apow = vec![BigInt::one()];
        for i in 1..=d.max(count) {
            let next = &apow[i - 1] * &a;
            apow.push(next);
        }
        let mut q: Vec<BigInt> = Vec::with_capacity(count + 1);
        q.push(BigInt::from(d));
        for n in 1..=count {
            let mut acc = BigInt::zero();
            for i in 1..=n.min(d) {
                if i < n {
                    acc -= c[i] * &apow[i - 1] * &q[n - i];
                } else {
                    acc -= c[i] * &apow[n - 1] * BigInt::from(n);
                }
            }
            q.push(acc);
        }
        q.remove(0);
        q
    }
}

/// Monic polynomial of degree `s.len()` whose roots have power sums `s`
/// (all roots algebraic integers, so every division is exact).
pub fn from_power_sums(s: &[BigInt]) -> IntPoly {
    let e = elementary_from_power_sums(s, s.len());
    let n = s.len();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek.clone() } else { -ek };
    }
    IntPoly::new(coeffs)
}

/// `e_0..e_upto` from power sums `p_1..` (needs `s.len() >= upto`).
pub fn elementary_from_power_sums(s: &[BigInt], upto: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::one()];
    for k in 1..=upto {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!((&acc % BigInt::from(k)).is_zero());
        e.push(acc / BigInt::from(k));
    }
    e
}

fn binomial(n: usize, k: usize) -> usize {
    let mut r = 1usize;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Monic polynomial whose roots are the products `prod_{i in S} a z_i` over
/// all `j`-subsets `S` of the roots of `f` (with multiplicity).
pub fn subset_product_poly(f: &IntPoly, j: usize) -> IntPoly {
    let d = f.degree();
    assert!(j >= 1 && j <= d);
    let n = binomial(d, j);
    let q = f.scaled_power_sums(j * n);
    let mut v = Vec::with_capacity(n);
    for m in 1..=n {
        // power sums of u_i^m are Q_{im}
        let pm: Vec<BigInt> = (1..=j).map(|i| q[i * m - 1].clone()).collect();
        let e = elementary_from_power_sums(&pm, j);
        v.push(e[j].clone());
    }
    from_power_sums(&v)
}

/// Monic polynomial with roots `(a z_i)^n`.
pub fn power_roots_poly(f: &IntPoly, n: usize) -> IntPoly {
    let d = f.degree();
    let q = f.scaled_power_sums(d * n);
    let s: Vec<BigInt> = (1..=d).map(|k| q[k * n - 1].clone()).collect();
    from_power_sums(&s)
}

/// Monic polynomial with roots `(a z_i)(b w_j)` for roots `z` of `f`, `w` of `g`.
pub fn product_roots_poly(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let n = f.degree() * g.degree();
    let qf = f.scaled_power_sums(n);
    let qg = g.scaled_power_sums(n);
    let s: Vec<BigInt> = qf.iter().zip(&qg).map(|(x, y)| x * y).collect();
    from_power_sums(&s)
}

/// `p(c t)`.
pub fn scale_variable(p: &IntPoly, c: &BigInt) -> IntPoly {
    let mut pow = BigInt::one();
    let mut out = Vec::with_capacity(p.coeffs().len());
    for x in p.coeffs() {
        out.push(x * &pow);
        pow *= c;
    }
    IntPoly::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn power_sums_of_golden_ratio() {
        // Lucas numbers
        let q = p(&[-1, -1, 1]).scaled_power_sums(6);
        let want: Vec<BigInt> = [1, 3, 4, 7, 11, 18]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(q, want);
        // 2t - 1: a z = 1
        assert_eq!(p(&[-1, 2]).scaled_power_sums(3), vec![BigInt::one(); 3]);
    }

    #[test]
    fn rebuild_from_power_sums() {
        let f = p(&[6, -5, 1]);
        let q = f.scaled_power_sums(2);
        assert_eq!(from_power_sums(&q), f);
        let g = p(&[-7, 3, 0, 2, 1]);
        assert_eq!(from_power_sums(&g.scaled_power_sums(4)), g);
    }

    #[test]
    fn products_and_powers() {
        // sqrt2 * sqrt3 conjugates: roots +-sqrt6 twice
        let r = product_roots_poly(&p(&[-2, 0, 1]), &p(&[-3, 0, 1]));
        assert_eq!(r, &p(&[-6, 0, 1]) * &p(&[-6, 0, 1]));
        // squares of roots of t^2 - t - 1 satisfy t^2 - 3t + 1
        assert_eq!(power_roots_poly(&p(&[-1, -1, 1]), 2), p(&[1, -3, 1]));
        // pairs of roots of t^3 - 2: products 2^(2/3) * zeta, roots of t^3 - 4
        assert_eq!(
            subset_product_poly(&p(&[-2, 0, 0, 1]), 2),
            p(&[-4, 0, 0, 1])
        );
        // scaled: 2t^2 - 3t + 1 has roots 1, 1/2; a z = 2, 1 ; product 2
        assert_eq!(subset_product_poly(&p(&[1, -3, 2]), 2), p(&[-2, 1]));
    }
}
