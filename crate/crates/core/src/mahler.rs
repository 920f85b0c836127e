//! Exact Mahler measures and Weil heights.
//!
//! For a polynomial with leading coefficient `a` and `j` roots of modulus at
//! least one, every product `a z_S` over a `j`-subset `S` of the roots is an
//! algebraic integer, and the one over the roots outside the open disk is the
//! unique root of largest modulus of the subset-product polynomial. It is real
//! and its absolute value is the Mahler measure.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algnum::RealAlgebraic;
use crate::error::{Error, Result};
use crate::poly::newton::subset_product_poly;
use crate::poly::IntPoly;
use crate::rootloc::{count_unit_disk, RootCount};
use crate::Rational;

/// `M(p)`, as `|content|` times the product of the measures of the
/// irreducible factors.
pub fn mahler_exact(p: &IntPoly) -> Result<RealAlgebraic> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fa = p.factor()?;
    let mut m = RealAlgebraic::from_integer(fa.unit.abs());
    for (f, mult) in &fa.factors {
        let mf = mahler_direct(f)?;
        m = m.mul(&mf.pow_int(*mult as i64)?);
    }
    Ok(m)
}

/// `M(p)` straight from the roots of `p`, without factoring `p`.
pub fn mahler_direct(p: &IntPoly) -> Result<RealAlgebraic> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c = p.content()?;
    let f = p.primitive_part()?.strip_zero_roots();
    let f = if f.leading().is_negative() { -f } else { f };
    let (_, q) = f.power_structure();
    if q.degree() == 0 {
        return Ok(RealAlgebraic::from_integer(c * q.leading()));
    }
    let rc = count_unit_disk(&q)?;
    let m = primitive_measure(&q, &rc)?;
    Ok(m.mul(&RealAlgebraic::from_integer(c)))
}

/// Measure of a primitive `q` with positive leading coefficient, nonzero
/// constant term and known root counts.
pub(crate) fn primitive_measure(q: &IntPoly, rc: &RootCount) -> Result<RealAlgebraic> {
    let d = q.degree();
    let j = rc.not_inside();
    let a = q.leading();
    if j == 0 {
        return Ok(RealAlgebraic::from_integer(a.clone()));
    }
    if j == d {
        return Ok(RealAlgebraic::from_integer(q.constant_term().abs()));
    }
    let t = subset_product_poly(q, j);
    let v = max_abs_real_root(&t)?;
    // roots of t are a^j prod z; the measure is a prod z
    let scale = Rational::new(BigInt::from(1), num_traits::pow(a.clone(), j - 1));
    Ok(v.mul(&RealAlgebraic::from_rational(scale)))
}

/// `|x|` for the real root `x` of `t` of largest absolute value.
fn max_abs_real_root(t: &IntPoly) -> Result<RealAlgebraic> {
    let roots = RealAlgebraic::real_roots(t)?;
    let (first, last) = match (roots.first(), roots.last()) {
        (Some(f), Some(l)) => (f.abs(), l.abs()),
        _ => {
            return Err(Error::InvariantViolation(format!(
                "subset-product polynomial {t} has no real root"
            )))
        }
    };
    Ok(std::cmp::max(first, last))
}

/// `H` for every root of an irreducible polynomial: `M(p)^(1/deg p)`.
pub fn height_exact(p: &IntPoly) -> Result<RealAlgebraic> {
    let f = check_irreducible(p)?;
    mahler_direct(&f)?.nth_root_positive(f.degree())
}

/// Degree of the field generated by `H^d = M(p)`.
pub fn deg_of_height_power(p: &IntPoly) -> Result<usize> {
    let f = check_irreducible(p)?;
    Ok(mahler_direct(&f)?.degree())
}

fn check_irreducible(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let f = p.normalized()?;
    if !f.is_irreducible()? {
        return Err(Error::Reducible);
    }
    Ok(f)
}

/// Weil height of a rational number.
pub fn height_rational(x: &Rational) -> BigInt {
    if x.numer().is_zero() {
        return BigInt::from(1);
    }
    std::cmp::max(x.numer().abs(), x.denom().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::sturm::rational;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn phi() -> RealAlgebraic {
        RealAlgebraic::from_root(&p(&[-1, -1, 1]), &rational(1, 1), &rational(2, 1)).unwrap()
    }

    #[test]
    fn measure_examples() {
        assert_eq!(mahler_exact(&p(&[-1, -1, 1])).unwrap(), phi());
        assert_eq!(
            mahler_exact(&p(&[0, 0, 0, 6])).unwrap(),
            RealAlgebraic::from_integer(6)
        );
        let two_phi = mahler_exact(&(&p(&[-1, -1, 1]) * &p(&[-2, 1]))).unwrap();
        assert_eq!(two_phi.minpoly(), &p(&[-4, -2, 1]));
        assert_eq!(
            mahler_direct(&(&p(&[-1, -1, 1]) * &p(&[-2, 1]))).unwrap(),
            two_phi
        );
        assert!(mahler_exact(&IntPoly::zero()).is_err());
    }

    #[test]
    fn height_examples() {
        assert_eq!(
            height_exact(&p(&[-1, -1, 1])).unwrap().minpoly(),
            &p(&[-1, 0, -1, 0, 1])
        );
        let h = height_exact(&p(&[-8, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(h.minpoly(), &p(&[-8, 0, 0, 0, 0, 1]));
        let h = height_exact(&p(&[-2, 0, 0, 5])).unwrap();
        assert_eq!(h.minpoly(), &p(&[-5, 0, 0, 1]));
        assert_eq!(height_exact(&p(&[-1, 0, 1])), Err(Error::Reducible));
        assert_eq!(height_exact(&p(&[3])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn degree_of_height_power() {
        assert_eq!(deg_of_height_power(&p(&[-1, -1, 1])).unwrap(), 2);
        assert_eq!(deg_of_height_power(&p(&[-8, 0, 0, 0, 0, 1])).unwrap(), 1);
    }

    #[test]
    fn cyclotomic_and_salem_measures() {
        assert_eq!(
            mahler_exact(&p(&[1, 1, 1, 1, 1])).unwrap(),
            RealAlgebraic::one()
        );
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_exact(&lehmer).unwrap();
        assert_eq!(m.minpoly(), &lehmer);
        assert!((m.to_f64() - 1.176_280_818_259_917).abs() < 1e-12);
    }

    #[test]
    fn middle_subsets() {
        // (t^2 - 3t + 1)(t^2 - 5t + 1): two roots outside with product phi^2 * ...
        let f = p(&[1, -3, 1]);
        let g = p(&[1, -5, 1]);
        let fg = &f * &g;
        let m = mahler_direct(&fg).unwrap();
        assert_eq!(m, mahler_exact(&f).unwrap().mul(&mahler_exact(&g).unwrap()));
        // generic quartic with two roots inside
        let q = p(&[1, 3, -7, 1, 2]);
        let m = mahler_direct(&q).unwrap();
        let approx = crate::numeric::mahler_f64(&q);
        assert!((m.to_f64() - approx).abs() < 1e-9 * approx);
    }
}
