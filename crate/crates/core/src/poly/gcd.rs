//! GCD, resultant and squarefree decomposition over `Z[t]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Output of [`IntPoly::squarefree_decomposition`]: `p = unit * prod f_i^m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Signed content of the input.
    pub unit: BigInt,
    /// Pairwise coprime, squarefree, primitive factors with positive leading
    /// coefficient, in increasing multiplicity.
    pub factors: Vec<(IntPoly, usize)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

impl IntPoly {
    /// Greatest common divisor in `Z[t]`, with positive leading coefficient.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.normalized_or_zero_abs();
        }
        if other.is_zero() {
            return self.normalized_or_zero_abs();
        }
        let c = self.content().unwrap().gcd(&other.content().unwrap());
        let mut a = self.primitive_part().unwrap();
        let mut b = other.primitive_part().unwrap();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == 0 {
                return IntPoly::constant(c);
            }
            let (_, r) = a.pseudo_divrem(&b);
            a = b;
            b = if r.is_zero() {
                r
            } else {
                r.primitive_part().unwrap()
            };
        }
        let g = a.normalized().unwrap();
        g.mul_scalar(&c)
    }

    fn normalized_or_zero_abs(&self) -> IntPoly {
        if self.is_zero() {
            IntPoly::zero()
        } else if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Resultant by the subresultant polynomial remainder sequence.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        let mut s = BigInt::one();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
            if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
                s = -s;
            }
        }
        if b.degree() == 0 {
            return Ok(s * num_traits::pow(b.leading().clone(), a.degree()));
        }
        let ca = a.content()?;
        let cb = b.content()?;
        a = a.div_scalar_exact(&ca);
        b = b.div_scalar_exact(&cb);
        let t = num_traits::pow(ca, b.degree()) * num_traits::pow(cb, a.degree());
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.degree() - b.degree();
            if a.degree() % 2 == 1 && b.degree() % 2 == 1 {
                s = -s;
            }
            let (_, r) = a.pseudo_divrem(&b);
            if r.is_zero() {
                return Ok(BigInt::zero());
            }
            a = b;
            let divisor = &g * num_traits::pow(h.clone(), delta);
            b = r.div_scalar_exact(&divisor);
            g = a.leading().clone();
            // h <- g^delta / h^(delta-1)
            h = if delta == 0 {
                h
            } else {
                num_traits::pow(g.clone(), delta) / num_traits::pow(h.clone(), delta - 1)
            };
            if b.degree() == 0 {
                let da = a.degree();
                let lb = b.leading().clone();
                let hh = if da == 0 {
                    // degenerate; not reached since deg a >= 1 here
                    lb
                } else {
                    num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
                };
                return Ok(s * t * hh);
            }
        }
    }

    /// Yun/Musser squarefree decomposition.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition> {
        let (unit, p) = self.split_unit()?;
        let mut factors = Vec::new();
        if p.degree() == 0 {
            return Ok(SquarefreeDecomposition { unit, factors });
        }
        let mut a = p.gcd(&p.derivative());
        let mut b = p.div_exact(&a).expect("gcd divides");
        let mut i = 1usize;
        while b.degree() > 0 {
            let c = a.gcd(&b);
            let f = b.div_exact(&c).expect("gcd divides");
            if f.degree() > 0 {
                factors.push((f.normalized()?, i));
            }
            a = a.div_exact(&c).expect("gcd divides");
            b = c;
            i += 1;
        }
        Ok(SquarefreeDecomposition { unit, factors })
    }

    /// The product of the distinct irreducible factors, primitive with
    /// positive leading coefficient.
    pub fn squarefree_part(&self) -> Result<IntPoly> {
        let (_, p) = self.split_unit()?;
        if p.degree() == 0 {
            return Ok(IntPoly::one());
        }
        let g = p.gcd(&p.derivative());
        p.div_exact(&g).expect("gcd divides").normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn sylvester_resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
        // determinant of the Sylvester matrix by fraction-free Bareiss elimination
        let (m, n) = (a.degree(), b.degree());
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (i, c) in a.coeffs().iter().rev().enumerate() {
                mat[r][r + i] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in b.coeffs().iter().rev().enumerate() {
                mat[n + r][r + i] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                match (k + 1..size).find(|&r| !mat[r][k].is_zero()) {
                    Some(r) => {
                        mat.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    mat[i][j] = (&mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j]) / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * prev
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(
            p(&[-2, 1]).resultant(&p(&[-3, 1])).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            p(&[-2, 0, 1]).resultant(&p(&[-2, 0, 1])).unwrap(),
            BigInt::zero()
        );
        // (sqrt2 - sqrt3)(sqrt2 + sqrt3)(-sqrt2 - sqrt3)(-sqrt2 + sqrt3) = (2-3)^2 = 1
        assert_eq!(
            p(&[-2, 0, 1]).resultant(&p(&[-3, 0, 1])).unwrap(),
            BigInt::from(1)
        );
        assert!(IntPoly::zero().resultant(&p(&[1, 1])).is_err());
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases = [
            (p(&[3, -1, 4, 1, -5]), p(&[2, 7, -1, 8])),
            (p(&[1, 0, 0, 0, 0, 2]), p(&[-3, 1, 1])),
            (p(&[6, 5, 1]), p(&[1, 3, 0, 2])),
            (p(&[2, 4, 6]), p(&[3, 9])),
            (p(&[-1, 0, 0, 7]), p(&[5, -2, 0, 0, 3])),
        ];
        for (a, b) in cases {
            let expect = sylvester_resultant(&a, &b);
            assert_eq!(a.resultant(&b).unwrap(), expect, "{a} vs {b}");
            // Res(b, a) = (-1)^(deg a deg b) Res(a, b)
            let sign = if a.degree() * b.degree() % 2 == 1 {
                -1
            } else {
                1
            };
            assert_eq!(b.resultant(&a).unwrap(), expect * sign);
        }
    }

    #[test]
    fn squarefree_examples() {
        // (t-1)^2 (t+2)
        let q = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        let sq = q.squarefree_decomposition().unwrap();
        assert_eq!(sq.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        let sq = p(&[-1, -1, 1]).squarefree_decomposition().unwrap();
        assert_eq!(sq.factors, vec![(p(&[-1, -1, 1]), 1)]);
        // 4 (t^2 - 2)^3
        let q = p(&[-2, 0, 1]).pow(3).mul_scalar(&BigInt::from(4));
        let sq = q.squarefree_decomposition().unwrap();
        assert_eq!(sq.unit, BigInt::from(4));
        assert_eq!(sq.factors, vec![(p(&[-2, 0, 1]), 3)]);
        assert_eq!(sq.expand(), q);
    }

    #[test]
    fn gcd_basics() {
        let a = &p(&[-1, 1]) * &p(&[1, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[2, 3]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[2, 4]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
    }
}
