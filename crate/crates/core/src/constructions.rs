//! Explicit polynomial families with known heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algnum::RealAlgebraic;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p))
}

/// `N t^d - p` with `p` the smallest prime below `N` not dividing `N`, or
/// `t^d - 2` when `N = 2`. Irreducible by Eisenstein at `p`, all roots
/// inside the unit disk.
pub fn eisenstein_family(n: u64, d: usize) -> Result<IntPoly> {
    if n < 2 || d == 0 {
        return Err(Error::InvalidArgument("need N >= 2 and d >= 1".into()));
    }
    if n == 2 {
        return Ok(&IntPoly::monomial(BigInt::one(), d) - &IntPoly::constant(BigInt::from(2)));
    }
    // N - 1 has a prime factor coprime to N, so this always finds one
    let p = (2..n)
        .find(|&p| is_prime(p) && !n.is_multiple_of(p))
        .expect("prime below N");
    Ok(&IntPoly::monomial(BigInt::from(n), d) - &IntPoly::constant(BigInt::from(p)))
}

/// `x + y sqrt 2 >= 0`.
fn nonneg_surd2(x: &BigInt, y: &BigInt) -> bool {
    match (x.is_negative(), y.is_negative()) {
        (false, false) => true,
        (true, true) => false,
        // x >= 0 > y: x^2 >= 2y^2
        (false, true) => x * x >= BigInt::from(2) * y * y,
        (true, false) => BigInt::from(2) * y * y >= x * x,
    }
}

/// `(b1, b2)` with `(3 + 2 sqrt 2)^r = b1 + b2 sqrt 2`.
pub fn pell_power(r: u32) -> (BigInt, BigInt) {
    let (mut b1, mut b2) = (BigInt::one(), BigInt::zero());
    for _ in 0..r {
        let n1 = &b1 * 3 + &b2 * 4;
        let n2 = &b1 * 2 + &b2 * 3;
        b1 = n1;
        b2 = n2;
    }
    (b1, b2)
}

/// Quartics `(t^2 - g t + beta)(t^2 - g' t + beta')` with
/// `beta = (3 + 2 sqrt 2)^r`, `g = c1 + c2 sqrt 2`, `c1 = floor(c2 sqrt 2) + 1`
/// and `1 <= c2 <= floor((beta - 4) / (2 sqrt 2))`.
pub fn quartic_family(r: u32) -> Result<((BigInt, BigInt), Vec<IntPoly>)> {
    let (b1, b2) = pell_power(r);
    // beta >= 4 sqrt 2 + 8
    if !nonneg_surd2(&(&b1 - 8), &(&b2 - 4)) {
        return Err(Error::InvalidArgument(format!(
            "r = {r} gives beta below 4 sqrt 2 + 8"
        )));
    }
    let two = BigInt::from(2);
    let mut polys = Vec::new();
    let mut c2 = BigInt::one();
    // 2 sqrt 2 c2 <= beta - 4  <=>  (b1 - 4) + (b2 - 2 c2) sqrt 2 >= 0
    while nonneg_surd2(&(&b1 - 4), &(&b2 - &two * &c2)) {
        let c1 = (&two * &c2 * &c2).sqrt() + 1;
        let coeffs = vec![
            &b1 * &b1 - &two * &b2 * &b2,
            -&two * (&c1 * &b1 - &two * &c2 * &b2),
            &two * &b1 + &c1 * &c1 - &two * &c2 * &c2,
            -&two * &c1,
            BigInt::one(),
        ];
        polys.push(IntPoly::new(coeffs));
        c2 += 1;
    }
    Ok(((b1, b2), polys))
}

/// The positive real `a^(p/q)`.
pub fn surd(a: u64, p: u64, q: u64) -> Result<RealAlgebraic> {
    if a == 0 || p == 0 || q == 0 || p.gcd(&q) != 1 {
        return Err(Error::InvalidArgument(format!("surd({a}, {p}, {q})")));
    }
    RealAlgebraic::from_integer(a)
        .pow_int(p as i64)?
        .nth_root_positive(q as usize)
}
