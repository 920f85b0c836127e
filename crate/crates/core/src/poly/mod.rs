//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! Coefficients are stored constant term first. The zero polynomial is the
//! empty coefficient vector; every other polynomial has a nonzero last entry.

mod factor;
mod gcd;
pub(crate) mod modp;
pub mod newton;
pub mod sturm;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use factor::Factorization;
pub use gcd::SquarefreeDecomposition;

#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// The linear polynomial `den * t - num`, vanishing at `num / den`.
    pub fn linear_root(num: &BigInt, den: &BigInt) -> Self {
        Self::new(vec![-num, den.clone()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        self.coeffs.get(i).unwrap_or(&BigInt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap_or(&BigInt::ZERO)
    }

    pub fn constant_term(&self) -> &BigInt {
        self.coeff(0)
    }

    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        Ok(g)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_ok_and(|c| c.is_one())
    }

    /// `p / content(p)`; the sign of the leading coefficient is kept.
    pub fn primitive_part(&self) -> Result<IntPoly> {
        let c = self.content()?;
        Ok(self.div_scalar_exact(&c))
    }

    /// Primitive part scaled so the leading coefficient is positive.
    pub fn normalized(&self) -> Result<IntPoly> {
        let p = self.primitive_part()?;
        Ok(if p.leading().is_negative() { -p } else { p })
    }

    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> IntPoly {
        if c.is_one() {
            return self.clone();
        }
        IntPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `t^deg(p) * p(1/t)` with trailing zeros stripped, so roots at zero
    /// become a degree drop.
    pub fn reverse(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        // leading zeros of the reversed vector are the former t-power
        let skip = c.iter().take_while(|x| x.is_zero()).count();
        IntPoly::new(c.split_off(skip))
    }

    /// `p(-t)`.
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(t^n)`.
    pub fn compose_power(&self, n: usize) -> IntPoly {
        assert!(n >= 1);
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.degree() * n + 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * n] = x.clone();
        }
        IntPoly::new(c)
    }

    /// The largest `m` with `p(t) = q(t^m)`, together with `q`.
    pub fn power_structure(&self) -> (usize, IntPoly) {
        let mut m = 0usize;
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() && i > 0 {
                m = m.gcd(&i);
            }
        }
        if m <= 1 {
            return (1, self.clone());
        }
        let q = IntPoly::new(self.coeffs.iter().step_by(m).cloned().collect());
        (m, q)
    }

    /// Number of roots at zero (the power of `t` dividing `p`).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p / t^m` where `m` is the zero-root multiplicity.
    pub fn strip_zero_roots(&self) -> IntPoly {
        let m = self.zero_root_multiplicity();
        IntPoly::new(self.coeffs[m..].to_vec())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let (num, den) = (x.numer(), x.denom());
        let n = self.degree() as u32;
        Rational::new(
            self.eval_homogeneous(num, den),
            num_traits::pow(den.clone(), n as usize),
        )
    }

    /// `den^deg * p(num/den)`, an integer.
    pub(crate) fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &dpow;
            dpow *= den;
        }
        // the loop multiplied the leading term by den^0 and the constant by den^deg
        acc
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        // denominators are positive, so den^deg > 0
        self.eval_homogeneous(x.numer(), x.denom())
            .cmp(&BigInt::zero())
    }

    /// Sign of `p(x)` as `x` tends to `+inf` (`positive`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let s = self.leading().cmp(&BigInt::zero());
        if positive || self.degree().is_multiple_of(2) {
            s
        } else {
            s.reverse()
        }
    }

    /// Pseudo-division: returns `(q, r)` with `lc(d)^(deg self - deg d + 1) * self = q*d + r`.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(!d.is_zero(), "pseudo-division by zero polynomial");
        if self.degree() < d.degree() || self.is_zero() {
            return (IntPoly::zero(), self.clone());
        }
        let dn = d.degree();
        let lc = d.leading().clone();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dn + 1;
        let mut q = vec![BigInt::zero(); steps];
        for k in (0..steps).rev() {
            let top = r[k + dn].clone();
            for c in q.iter_mut() {
                *c *= &lc;
            }
            q[k] += &top;
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &top * dc;
            }
            debug_assert!(r[k + dn].is_zero());
            r.truncate(k + dn);
        }
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Exact quotient in `Z[t]`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let dn = d.degree();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let steps = self.degree() - dn + 1;
        let mut q = vec![BigInt::zero(); steps];
        for k in (0..steps).rev() {
            let (quo, rem) = r[k + dn].div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            if !quo.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &quo * dc;
                }
            }
            q[k] = quo;
        }
        if r.iter().all(Zero::is_zero) {
            Some(IntPoly::new(q))
        } else {
            None
        }
    }

    pub fn pow(&self, n: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn max_norm(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_default()
    }

    /// Exact division by content followed by a sign flip when needed.
    pub(crate) fn split_unit(&self) -> Result<(BigInt, IntPoly)> {
        let c = self.content()?;
        let p = self.div_scalar_exact(&c);
        if p.leading().is_negative() {
            Ok((-c, -p))
        } else {
            Ok((c, p))
        }
    }
}

impl fmt::Display for IntPoly {
    /// Canonical text form: comma-separated coefficients, constant term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{self}]")
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty coefficient list".into()));
        }
        s.split(',')
            .map(|c| {
                c.trim()
                    .parse::<BigInt>()
                    .map_err(|e| Error::Parse(format!("bad coefficient {c:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -(self.clone())
    }
}

/// Product of a list of polynomials.
pub fn product<'a>(polys: impl IntoIterator<Item = &'a IntPoly>) -> IntPoly {
    polys.into_iter().fold(IntPoly::one(), |acc, p| &acc * p)
}
