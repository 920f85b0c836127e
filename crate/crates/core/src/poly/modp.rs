//! Polynomials over a prime field `F_p` with `p < 2^31`, stored as `u64`
//! coefficient vectors (constant term first, no trailing zeros).

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::One;
use rand::Rng;

pub(crate) type PolyP = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    pub p: u64,
}

fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &PolyP) -> usize {
    a.len().saturating_sub(1)
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Field { p }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn reduce_int(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((x % &m) + &m) % &m;
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }

    pub fn reduce_poly(&self, coeffs: &[BigInt]) -> PolyP {
        trim(coeffs.iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn poly_sub(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                .collect(),
        )
    }

    pub fn poly_mul(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut c = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + x * y) % self.p;
            }
        }
        trim(c)
    }

    pub fn scale(&self, a: &PolyP, s: u64) -> PolyP {
        trim(a.iter().map(|&x| self.mul(x, s)).collect())
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn divrem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let db = deg(b);
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let top = self.mul(r[k + db], inv);
            q[k] = top;
            if top == 0 {
                continue;
            }
            for (i, &bc) in b.iter().enumerate() {
                r[k + i] = self.sub(r[k + i], self.mul(top, bc));
            }
        }
        r.truncate(db);
        (trim(q), trim(r))
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.last().expect("xgcd of zero polynomials");
        let inv = self.inv(lc);
        (
            self.scale(&r0, inv),
            self.scale(&s0, inv),
            self.scale(&t0, inv),
        )
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &PolyP, exp: &BigUint, modulus: &PolyP) -> PolyP {
        let mut acc = vec![1u64];
        let b = self.rem(base, modulus);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = self.rem(&self.poly_mul(&acc, &acc), modulus);
            if exp.bit(i) {
                acc = self.rem(&self.poly_mul(&acc, &b), modulus);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, a: &PolyP) -> bool {
        let g = self.gcd(a, &self.derivative(a));
        g.len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(product of all irreducible factors of degree d, d)`.
    pub fn distinct_degree(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: PolyP = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = x.clone();
        let mut d = 0usize;
        while deg(&f) >= 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, &p, &f);
            let g = self.gcd(&self.poly_sub(&h, &x), &f);
            if deg(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if deg(&f) > 0 {
            let df = deg(&f);
            out.push((f, df));
        }
        out
    }

    /// Equal-degree splitting (Cantor–Zassenhaus, odd `p`).
    pub fn equal_degree<R: Rng>(&self, f: &PolyP, d: usize, rng: &mut R) -> Vec<PolyP> {
        let n = deg(f);
        if n == d {
            return vec![f.clone()];
        }
        let exp = (num_traits::pow(BigUint::from(self.p), d) - BigUint::one()) >> 1usize;
        loop {
            let a: PolyP = trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if deg(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if deg(&g) > 0 {
                g
            } else {
                let b = self.powmod(&a, &exp, f);
                let b1 = self.poly_sub(&b, &vec![1]);
                if b1.is_empty() {
                    continue;
                }
                self.gcd(&b1, f)
            };
            if deg(&split) > 0 && deg(&split) < n {
                let other = self.monic(&self.divrem(f, &split).0);
                let mut out = self.equal_degree(&split, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Full factorization of a monic squarefree polynomial into monic irreducibles.
    #[cfg(test)]
    pub fn factor_squarefree<R: Rng>(&self, f: &PolyP, rng: &mut R) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out
    }
}

/// Symmetric residue of `x` modulo `m` (in `(-m/2, m/2]`).
pub(crate) fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let mut r = x % m;
    if r.sign() == Sign::Minus {
        r += m;
    }
    if &r * 2 > *m {
        r -= m;
    }
    r
}

pub(crate) fn lift_poly(a: &PolyP) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Small primes above 2, by trial division.
pub(crate) fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        let mut k = 3;
        while k * k <= n {
            if n % k == 0 {
                return false;
            }
            k += 2;
        }
        true
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_mod_p_multiply_back() {
        let fp = Field::new(101);
        // (t^2+1)(t+3)(t^3+t+1)(t-5) over F_101
        let parts: Vec<PolyP> = vec![vec![1, 0, 1], vec![3, 1], vec![1, 1, 0, 1], vec![96, 1]];
        let f = parts.iter().fold(vec![1u64], |acc, q| fp.poly_mul(&acc, q));
        assert!(fp.is_squarefree(&f));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let fs = fp.factor_squarefree(&f, &mut rng);
        let back = fs.iter().fold(vec![1u64], |acc, q| fp.poly_mul(&acc, q));
        assert_eq!(back, f);
        assert!(fs.len() >= 4);
    }

    #[test]
    fn xgcd_bezout() {
        let fp = Field::new(31);
        let a = vec![1, 2, 0, 1];
        let b = vec![5, 0, 1];
        let (g, s, t) = fp.xgcd(&a, &b);
        let lhs = fp.poly_sub(&fp.poly_mul(&s, &a), &fp.scale(&fp.poly_mul(&t, &b), 30));
        assert_eq!(g, vec![1]);
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn symmetric_residues() {
        let m = BigInt::from(10);
        assert_eq!(symmetric_mod(&BigInt::from(7), &m), BigInt::from(-3));
        assert_eq!(symmetric_mod(&BigInt::from(-7), &m), BigInt::from(3));
        assert_eq!(symmetric_mod(&BigInt::from(5), &m), BigInt::from(5));
    }
}
