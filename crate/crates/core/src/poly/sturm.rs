//! Sturm chains, real-root counting, isolation and Cauchy indices.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::IntPoly;
use crate::Rational;

/// A generalized Sturm chain `p0, p1, -rem(p0, p1), ...` with each entry
/// reduced to its primitive part (positive scaling keeps sign counts).
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut v = 0;
    for s in signs {
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

impl SturmSequence {
    /// The classical chain `p, p'`.
    pub fn new(p: &IntPoly) -> Self {
        Self::chain(p, &p.derivative())
    }

    /// Chain for `p1 / p0`; `V(a) - V(b)` is the Cauchy index of `p1/p0` on `(a, b)`.
    pub fn chain(p0: &IntPoly, p1: &IntPoly) -> Self {
        let mut chain = vec![p0.clone()];
        if p0.is_zero() || p1.is_zero() {
            return SturmSequence { chain };
        }
        chain.push(p1.clone());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let next = if a.degree() < b.degree() {
                -a
            } else {
                let (_, r) = a.pseudo_divrem(b);
                if r.is_zero() {
                    break;
                }
                // prem = lc(b)^(delta+1) * rem; keep -rem up to a positive factor
                let delta = a.degree() - b.degree();
                if b.leading().is_negative() && delta % 2 == 0 {
                    r
                } else {
                    -r
                }
            };
            chain.push(next.primitive_part().expect("nonzero remainder"));
        }
        SturmSequence { chain }
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.chain
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.chain.iter().map(|p| p.sign_at_infinity(positive)))
    }

    /// Distinct roots of `p0` in `(a, b]`, for `a <= b`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Distinct roots of `p0` in `[a, b]`.
    pub fn count_closed(&self, a: &Rational, b: &Rational) -> usize {
        let at_a = usize::from(self.chain[0].sign_at(a) == Ordering::Equal);
        self.count_half_open(a, b) + at_a
    }

    /// Distinct real roots of `p0`.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at_infinity(true))
    }

    /// Cauchy index of `p1/p0` over the whole real line.
    pub fn cauchy_index(&self) -> i64 {
        self.variations_at_infinity(false) as i64 - self.variations_at_infinity(true) as i64
    }

    /// Distinct roots below `x` (strictly), for `x` not a root.
    pub fn count_below(&self, x: &Rational) -> usize {
        self.variations_at_infinity(false)
            .saturating_sub(self.variations_at(x))
    }
}

/// A power of two strictly larger than the modulus of every complex root.
pub fn root_bound(p: &IntPoly) -> Rational {
    let lc_bits = p.leading().abs().bits() as i64;
    let max_bits = p.coeffs().iter().map(|c| c.abs().bits()).max().unwrap_or(0) as i64;
    // 1 + max|c_i| / |lc| < 2^(max_bits - lc_bits + 2)
    let k = (max_bits - lc_bits + 2).max(1) as usize;
    Rational::from_integer(BigInt::one() << k)
}

/// Isolating intervals `(lo, hi)` with `lo < hi`, neither endpoint a root,
/// each holding exactly one real root of `p`. Sorted ascending.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<(Rational, Rational)> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let sq = p.squarefree_part().expect("nonzero");
    let sturm = SturmSequence::new(&sq);
    let b = root_bound(&sq);
    let lo = -b.clone();
    let total = sturm.count_half_open(&lo, &b);
    let mut out = Vec::new();
    let mut stack = vec![(lo, b, total)];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push((lo, hi));
            continue;
        }
        let mid = split_point(&sq, &lo, &hi);
        let left = sturm.count_half_open(&lo, &mid);
        stack.push((mid.clone(), hi, n - left));
        stack.push((lo, mid, left));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// A point strictly between `lo` and `hi` that is not a root of `p`,
/// preferring the midpoint.
pub(crate) fn split_point(p: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let two = Rational::from_integer(BigInt::from(2));
    let mut mid = (lo + hi) / &two;
    let mut step = (hi - lo) / Rational::from_integer(BigInt::from(4));
    let mut toggle = false;
    while p.sign_at(&mid).is_eq() {
        mid = if toggle { &mid + &step } else { &mid - &step };
        step /= &two;
        toggle = !toggle;
    }
    mid
}

/// Bisect an isolating interval of `p` (no root at either endpoint, one
/// sign change) until its width is at most `eps`.
pub(crate) fn refine_by_sign(p: &IntPoly, lo: &mut Rational, hi: &mut Rational, eps: &Rational) {
    let s_lo = p.sign_at(lo);
    debug_assert!(!s_lo.is_eq());
    while &(&*hi - &*lo) > eps {
        let mid = (&*lo + &*hi) / Rational::from_integer(BigInt::from(2));
        let s = p.sign_at(&mid);
        if s.is_eq() {
            *lo = mid.clone();
            *hi = mid;
            return;
        }
        if s == s_lo {
            *lo = mid;
        } else {
            *hi = mid;
        }
    }
}

/// Whether `p` has a root in `[a, b]` according to its Sturm chain.
pub fn has_root_in(p: &IntPoly, a: &Rational, b: &Rational) -> bool {
    if p.is_zero() {
        return true;
    }
    let sq = p.squarefree_part().expect("nonzero");
    SturmSequence::new(&sq).count_closed(a, b) > 0
}

#[cfg(test)]
pub(crate) fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn counts_real_roots() {
        let f = p(&[-2, 0, 1]);
        let s = SturmSequence::new(&f);
        assert_eq!(s.count_real(), 2);
        assert_eq!(s.count_half_open(&rational(0, 1), &rational(2, 1)), 1);
        assert_eq!(SturmSequence::new(&p(&[1, 0, 1])).count_real(), 0);
        // (t-1)(t-2)(t-3) counts closed endpoints
        let g = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        let s = SturmSequence::new(&g);
        assert_eq!(s.count_closed(&rational(1, 1), &rational(3, 1)), 3);
        assert_eq!(s.count_half_open(&rational(1, 1), &rational(3, 1)), 2);
    }

    #[test]
    fn isolation_separates_close_roots() {
        // (t - 1/3)(t - 1/2)(t^2 - 2)
        let f = &(&p(&[-1, 3]) * &p(&[-1, 2])) * &p(&[-2, 0, 1]);
        let iv = isolate_real_roots(&f);
        assert_eq!(iv.len(), 4);
        for (lo, hi) in &iv {
            assert!(lo < hi);
            assert!(!f.sign_at(lo).is_eq() && !f.sign_at(hi).is_eq());
        }
        assert!(iv[1].0 < rational(1, 3) && rational(1, 3) < iv[1].1);
        assert!(iv[2].0 < rational(1, 2) && rational(1, 2) < iv[2].1);
    }

    #[test]
    fn cauchy_index_of_simple_pole() {
        // 1/t jumps from -inf to +inf
        assert_eq!(
            SturmSequence::chain(&p(&[0, 1]), &p(&[1])).cauchy_index(),
            1
        );
        assert_eq!(
            SturmSequence::chain(&p(&[0, 1]), &p(&[-1])).cauchy_index(),
            -1
        );
        // t / (t^2 - 1): two upward jumps
        assert_eq!(
            SturmSequence::chain(&p(&[-1, 0, 1]), &p(&[0, 1])).cauchy_index(),
            2
        );
    }
}
