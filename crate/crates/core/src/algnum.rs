//! Exact real algebraic numbers: an irreducible primitive minimal polynomial
//! and an isolating rational interval.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::newton::{power_roots_poly, product_roots_poly, scale_variable};
use crate::poly::sturm::{isolate_real_roots, refine_by_sign, SturmSequence};
use crate::poly::IntPoly;
use crate::Rational;

/// Refinement rounds allowed when selecting the factor that holds a root.
const MAX_SELECT_ROUNDS: usize = 256;

/// Interval-width independent identity of a real algebraic number: its
/// minimal polynomial and the index of the root among the real roots in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraicKey {
    pub minpoly: IntPoly,
    pub root_index: usize,
}

impl fmt::Display for AlgebraicKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "minpoly={};root={}", self.minpoly, self.root_index)
    }
}

impl FromStr for AlgebraicKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected minpoly=<coeffs>;root=<index>, got {s:?}"));
        let mut minpoly = None;
        let mut root_index = None;
        for part in s.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "minpoly" => minpoly = Some(v.parse::<IntPoly>()?),
                "root" => root_index = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "approx" => {}
                _ => return Err(bad()),
            }
        }
        Ok(AlgebraicKey {
            minpoly: minpoly.ok_or_else(bad)?,
            root_index: root_index.ok_or_else(bad)?,
        })
    }
}

#[derive(Clone)]
pub struct RealAlgebraic {
    minpoly: IntPoly,
    lo: Rational,
    hi: Rational,
}

fn two() -> Rational {
    Rational::from_integer(BigInt::from(2))
}

#[cfg(test)]
fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl RealAlgebraic {
    pub fn from_rational(x: Rational) -> Self {
        RealAlgebraic {
            minpoly: IntPoly::linear_root(x.numer(), x.denom()),
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Trusted constructor: `minpoly` irreducible, primitive, positive leading
    /// coefficient; `[lo, hi]` isolates one of its roots.
    pub(crate) fn from_parts(minpoly: IntPoly, lo: Rational, hi: Rational) -> Self {
        if minpoly.degree() == 1 {
            let x = Rational::new(-minpoly.coeff(0), minpoly.coeff(1).clone());
            return Self::from_rational(x);
        }
        debug_assert!(lo < hi);
        RealAlgebraic { minpoly, lo, hi }
    }

    /// The unique root of `p` in `[lo, hi]`; errors unless there is exactly one.
    pub fn from_root(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sq = p.squarefree_part()?;
        let n = SturmSequence::new(&sq).count_closed(lo, hi);
        if n != 1 {
            return Err(Error::InvalidArgument(format!(
                "{p} has {n} roots in [{lo}, {hi}], expected one"
            )));
        }
        let (lo, hi) = (lo.clone(), hi.clone());
        select_root(&sq, move |_| Ok((lo.clone(), hi.clone())))
    }

    /// The root with the given ascending index among the real roots of an
    /// irreducible primitive polynomial.
    pub fn from_key(key: &AlgebraicKey) -> Result<Self> {
        let f = key.minpoly.normalized()?;
        if f.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if f != key.minpoly || !f.is_irreducible()? {
            return Err(Error::InvalidArgument(format!(
                "{} is not a canonical minimal polynomial",
                key.minpoly
            )));
        }
        if f.degree() == 1 {
            if key.root_index != 0 {
                return Err(Error::InvalidArgument("root index out of range".into()));
            }
            return Ok(Self::from_parts(f, Rational::zero(), Rational::zero()));
        }
        let roots = isolate_real_roots(&f);
        let (lo, hi) = roots
            .get(key.root_index)
            .ok_or_else(|| Error::InvalidArgument("root index out of range".into()))?
            .clone();
        Ok(Self::from_parts(f, lo, hi))
    }

    /// All real roots of a nonzero polynomial, ascending, without repetition.
    pub fn real_roots(p: &IntPoly) -> Result<Vec<RealAlgebraic>> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for (f, _) in p.factor()?.factors {
            if f.degree() == 1 {
                out.push(Self::from_rational(Rational::new(
                    -f.coeff(0),
                    f.coeff(1).clone(),
                )));
                continue;
            }
            for (lo, hi) in isolate_real_roots(&f) {
                out.push(Self::from_parts(f.clone(), lo, hi));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.degree() == 1).then_some(&self.lo)
    }

    pub fn key(&self) -> AlgebraicKey {
        let root_index = if self.degree() == 1 {
            0
        } else {
            SturmSequence::new(&self.minpoly).count_below(&self.lo)
        };
        AlgebraicKey {
            minpoly: self.minpoly.clone(),
            root_index,
        }
    }

    /// Halve the isolating interval.
    fn bisect(&mut self) {
        if self.degree() == 1 {
            return;
        }
        let w = (&self.hi - &self.lo) / two();
        refine_by_sign(&self.minpoly, &mut self.lo, &mut self.hi, &w);
    }

    fn tighten(&mut self, eps: &Rational) {
        if self.degree() > 1 {
            refine_by_sign(&self.minpoly, &mut self.lo, &mut self.hi, eps);
        }
    }

    /// An interval of width at most `eps` containing the value.
    pub fn refine(&self, eps: &Rational) -> Result<(Rational, Rational)> {
        if !eps.is_positive() {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        let mut x = self.clone();
        x.tighten(eps);
        Ok((x.lo, x.hi))
    }

    /// Sign of the value; refines until zero is excluded.
    pub fn signum(&self) -> Ordering {
        let mut x = self.clone();
        loop {
            if x.lo.is_positive() {
                return Ordering::Greater;
            }
            if x.hi.is_negative() {
                return Ordering::Less;
            }
            if x.degree() == 1 {
                return Ordering::Equal;
            }
            x.bisect();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.minpoly.coeff(0).is_zero()
    }

    pub fn compare(&self, other: &RealAlgebraic) -> Ordering {
        let (mut x, mut y) = (self.clone(), other.clone());
        loop {
            if x.hi < y.lo {
                return Ordering::Less;
            }
            if y.hi < x.lo {
                return Ordering::Greater;
            }
            if x.degree() == 1 && y.degree() == 1 {
                return x.lo.cmp(&y.lo);
            }
            if x.minpoly == y.minpoly {
                // both isolate a single root; a shared root in the overlap means equality
                let a = std::cmp::max(&x.lo, &y.lo).clone();
                let b = std::cmp::min(&x.hi, &y.hi).clone();
                if SturmSequence::new(&x.minpoly).count_closed(&a, &b) > 0 {
                    return Ordering::Equal;
                }
            }
            x.bisect();
            y.bisect();
        }
    }

    pub fn compare_rational(&self, r: &Rational) -> Ordering {
        self.compare(&Self::from_rational(r.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        let mut x = self.clone();
        // isolating intervals can be far wider than the value
        x.tighten(&Rational::one());
        let scale = std::cmp::max(x.lo.abs(), x.hi.abs()) + Rational::one();
        x.tighten(&(scale / Rational::from_integer(BigInt::one() << 60usize)));
        ((&x.lo + &x.hi) / two()).to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal approximation with `digits` digits after the point.
    pub fn approx_decimal(&self, digits: usize) -> String {
        let ten_pow = num_traits::pow(BigInt::from(10), digits);
        let mut x = self.clone();
        x.tighten(&Rational::new(BigInt::one(), &ten_pow * 1000));
        let mid = (&x.lo + &x.hi) / two();
        format_decimal(&mid, digits)
    }

    pub fn neg(&self) -> Self {
        let f = self.minpoly.negate_var().normalized().expect("nonzero");
        Self::from_parts(f, -&self.hi, -&self.lo)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn excluding_zero(&self) -> Self {
        let mut x = self.clone();
        while x.degree() > 1 && !x.lo.is_positive() && !x.hi.is_negative() {
            x.bisect();
        }
        x
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        let x = self.excluding_zero();
        let f = x.minpoly.reverse().normalized()?;
        Ok(Self::from_parts(f, x.hi.recip(), x.lo.recip()))
    }

    fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_zero() || self.is_zero() {
            return Self::zero();
        }
        if let Some(x) = self.as_rational() {
            return Self::from_rational(x * r);
        }
        // y = r x: minpoly of y is f(y / r) cleared of denominators
        let (p, q) = (r.numer(), r.denom());
        let d = self.degree();
        let mut c = Vec::with_capacity(d + 1);
        let mut qpow = BigInt::one();
        let ppows: Vec<BigInt> = (0..=d).map(|i| num_traits::pow(p.clone(), d - i)).collect();
        for (i, fi) in self.minpoly.coeffs().iter().enumerate() {
            c.push(fi * &qpow * &ppows[i]);
            qpow *= q;
        }
        let f = IntPoly::new(c).normalized().expect("nonzero");
        let (a, b) = (&self.lo * r, &self.hi * r);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        Self::from_parts(f, lo, hi)
    }

    pub fn mul(&self, other: &RealAlgebraic) -> Self {
        if let Some(r) = other.as_rational() {
            return self.mul_rational(r);
        }
        if let Some(r) = self.as_rational() {
            return other.mul_rational(r);
        }
        let (f, g) = (&self.minpoly, &other.minpoly);
        // roots (a z)(b w); rescale by ab to get roots z w
        let ab = f.leading() * g.leading();
        let r = product_roots_poly(f, g);
        let r = rescale_roots(&r, &ab);
        let (mut x, mut y) = (self.clone(), other.clone());
        select_root(&r, move |round| {
            if round > 0 {
                x.bisect();
                y.bisect();
            }
            Ok(interval_mul(&x.lo, &x.hi, &y.lo, &y.hi))
        })
        .expect("product root selection")
    }

    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one());
        }
        if n < 0 {
            return self.recip()?.pow_int(-n);
        }
        let n = n as usize;
        if n == 1 {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(num_traits::pow(r.clone(), n)));
        }
        let f = &self.minpoly;
        let r = rescale_roots(
            &power_roots_poly(f, n),
            &num_traits::pow(f.leading().clone(), n),
        );
        let mut x = self.excluding_zero();
        select_root(&r, move |round| {
            if round > 0 {
                x.bisect();
            }
            let (a, b) = (
                num_traits::pow(x.lo.clone(), n),
                num_traits::pow(x.hi.clone(), n),
            );
            Ok(if a < b { (a, b) } else { (b, a) })
        })
    }

    /// The nonnegative real `n`-th root.
    pub fn nth_root_positive(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("root order must be positive".into()));
        }
        match self.signum() {
            Ordering::Less => return Err(Error::NegativeInput(self.to_string())),
            Ordering::Equal => return Ok(Self::zero()),
            Ordering::Greater => {}
        }
        if n == 1 {
            return Ok(self.clone());
        }
        if let Some(r) = self.as_rational() {
            if let (Some(a), Some(b)) = (exact_root(r.numer(), n), exact_root(r.denom(), n)) {
                return Ok(Self::from_rational(Rational::new(a, b)));
            }
        }
        let f = self.minpoly.clone();
        for p in prime_factors(n) {
            let fp = f.compose_power(p);
            if !fp.is_irreducible()? {
                // the value is a p-th power in its own field: step down one prime
                let y = self.root_in(&fp, p)?;
                return y.nth_root_positive(n / p);
            }
        }
        // Capelli: f(t^n) stays irreducible
        self.root_in(&f.compose_power(n), n)
    }

    /// The positive root `y` of `g` with `y^n = self`, where `g(t)` divides `f(t^n)`.
    fn root_in(&self, g: &IntPoly, n: usize) -> Result<Self> {
        let mut x = self.clone();
        while !x.lo.is_positive() {
            x.bisect();
        }
        let sturm = SturmSequence::new(&self.minpoly);
        let mut bits = 8usize;
        for _ in 0..MAX_SELECT_ROUNDS {
            let lo = nth_root_floor(&x.lo, n, bits);
            let hi = nth_root_ceil(&x.hi, n, bits);
            let (lo_n, hi_n) = (
                num_traits::pow(lo.clone(), n),
                num_traits::pow(hi.clone(), n),
            );
            if lo.is_positive() && sturm.count_closed(&lo_n, &hi_n) == 1 {
                if g.is_irreducible()? {
                    let g = g.normalized()?;
                    return Ok(Self::from_parts(g, lo, hi));
                }
                return select_root(g, move |_| Ok((lo.clone(), hi.clone())));
            }
            x.bisect();
            bits += 8;
        }
        Err(Error::RefinementExhausted(MAX_SELECT_ROUNDS))
    }

    /// `Some((a, b))` with `self = a^b`, `a` a natural number that is not a
    /// perfect power and `b` a positive rational.
    pub fn is_natural_power(&self) -> Result<Option<(BigInt, Rational)>> {
        if self.signum() != Ordering::Greater {
            return Err(Error::NegativeInput(self.to_string()));
        }
        let d = self.degree();
        let n = if d == 1 {
            let r = &self.lo;
            if !r.is_integer() {
                return Ok(None);
            }
            r.numer().clone()
        } else {
            // a^(p/q) in lowest terms has minimal polynomial t^q - a^p
            let f = &self.minpoly;
            let binomial = f.leading().is_one()
                && f.coeffs()[1..d].iter().all(Zero::is_zero)
                && f.coeff(0).is_negative();
            if !binomial {
                return Ok(None);
            }
            -f.coeff(0)
        };
        if n.is_one() {
            return Ok(Some((BigInt::one(), Rational::one())));
        }
        let (a, e) = perfect_power(&n);
        Ok(Some((a, Rational::new(BigInt::from(e), BigInt::from(d)))))
    }
}

/// Turn a monic polynomial with roots `c z_i` into a primitive one with roots `z_i`.
fn rescale_roots(r: &IntPoly, c: &BigInt) -> IntPoly {
    // r(c t) has roots z_i
    scale_variable(r, c).normalized().expect("nonzero")
}

fn interval_mul(a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> (Rational, Rational) {
    let prods = [a * c, a * d, b * c, b * d];
    let lo = prods.iter().min().unwrap().clone();
    let hi = prods.iter().max().unwrap().clone();
    (lo, hi)
}

/// Pick the irreducible factor of `p` holding the target value. `interval`
/// yields ever tighter enclosures of the target (argument: round number).
pub(crate) fn select_root(
    p: &IntPoly,
    mut interval: impl FnMut(usize) -> Result<(Rational, Rational)>,
) -> Result<RealAlgebraic> {
    let fa = p.factor()?;
    let factors: Vec<(IntPoly, SturmSequence)> = fa
        .factors
        .into_iter()
        .map(|(f, _)| {
            let s = SturmSequence::new(&f);
            (f, s)
        })
        .collect();
    for round in 0..MAX_SELECT_ROUNDS {
        let (lo, hi) = interval(round)?;
        let mut hit = None;
        let mut total = 0;
        for (f, s) in &factors {
            let c = s.count_closed(&lo, &hi);
            if c > 0 {
                total += c;
                hit = Some(f);
            }
        }
        if total == 1 {
            let f = hit.unwrap().clone();
            if f.degree() == 1 {
                return Ok(RealAlgebraic::from_rational(Rational::new(
                    -f.coeff(0),
                    f.coeff(1).clone(),
                )));
            }
            return Ok(RealAlgebraic::from_parts(f, lo, hi));
        }
        if total == 0 {
            return Err(Error::InvariantViolation(format!(
                "no root of {p} in [{lo}, {hi}]"
            )));
        }
    }
    Err(Error::RefinementExhausted(MAX_SELECT_ROUNDS))
}

/// Exact `n`-th root of a nonnegative integer, if it exists.
fn exact_root(x: &BigInt, n: usize) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n as u32);
    (num_traits::pow(r.clone(), n) == *x).then_some(r)
}

/// `n = a^e` with `e` maximal (`n >= 2`).
pub(crate) fn perfect_power(n: &BigInt) -> (BigInt, usize) {
    let bits = n.bits() as usize;
    for e in (2..=bits).rev() {
        if let Some(a) = exact_root(n, e) {
            return (a, e);
        }
    }
    (n.clone(), 1)
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest `k / 2^bits <= x^(1/n)` for `x >= 0`.
fn nth_root_floor(x: &Rational, n: usize, bits: usize) -> Rational {
    if !x.is_positive() {
        return Rational::zero();
    }
    let scaled = (x.numer() << (bits * n)) / x.denom();
    Rational::new(scaled.nth_root(n as u32), BigInt::one() << bits)
}

fn nth_root_ceil(x: &Rational, n: usize, bits: usize) -> Rational {
    let f = nth_root_floor(x, n, bits);
    if &num_traits::pow(f.clone(), n) == x {
        return f;
    }
    f + Rational::new(BigInt::one(), BigInt::one() << bits)
}

/// Round `x` to `digits` places after the decimal point.
pub fn format_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let rounded = (scaled + Rational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer();
    let neg = rounded.is_negative();
    let (int, frac) = rounded.abs().div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    let frac = frac.to_string();
    format!("{sign}{int}.{}{frac}", "0".repeat(digits - frac.len()))
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.key().fmt(f)
    }
}

impl fmt::Debug for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RealAlgebraic({} in [{}, {}])",
            self.minpoly, self.lo, self.hi
        )
    }
}

impl FromStr for RealAlgebraic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::from_key(&s.parse()?)
    }
}

impl Serialize for RealAlgebraic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.key().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealAlgebraic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let key = AlgebraicKey::deserialize(d)?;
        Self::from_key(&key).map_err(serde::de::Error::custom)
    }
}

#[allow(dead_code)]
pub(crate) fn rational_from(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse a positive real given as an integer, `p/q`, a decimal, `sqrt(x)`
/// or `x^(p/q)` with `x` rational.
pub fn parse_real(s: &str) -> Result<RealAlgebraic> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot read {s:?} as a number"));
    if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        return parse_real(inner)?.nth_root_positive(2);
    }
    if let Some((base, exp)) = s.split_once('^') {
        let exp = exp.trim().trim_start_matches('(').trim_end_matches(')');
        let e = parse_rational(exp).ok_or_else(bad)?;
        if !e.is_positive() {
            return Err(bad());
        }
        let q = e.denom().to_usize().ok_or_else(bad)?;
        let p = e.numer().to_i64().ok_or_else(bad)?;
        return parse_real(base)?.pow_int(p)?.nth_root_positive(q);
    }
    parse_rational(s)
        .map(RealAlgebraic::from_rational)
        .ok_or_else(bad)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n.trim().parse().ok()?, d));
    }
    if let Some((i, f)) = s.split_once('.') {
        if !f.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = i.starts_with('-');
        let whole: BigInt = if i.is_empty() || i == "-" {
            BigInt::zero()
        } else {
            i.parse().ok()?
        };
        let frac: BigInt = if f.is_empty() {
            BigInt::zero()
        } else {
            f.parse().ok()?
        };
        let scale = num_traits::pow(BigInt::from(10), f.len());
        let frac = Rational::new(frac, scale);
        let whole = Rational::from_integer(whole.abs());
        let v = whole + frac;
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}
