//! Factorization over the integers: squarefree decomposition, modular
//! factorization with degree-pattern witnesses, Hensel lifting and factor
//! recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{lift_poly, odd_primes, symmetric_mod, Field, PolyP};
use super::IntPoly;
use crate::error::{Error, Result};

/// `p = unit * prod f_i^m_i` with each `f_i` irreducible, primitive and with
/// positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u32);
        }
        acc
    }
}

/// How many good primes to sample for the degree-pattern witness.
const WITNESS_PRIMES: usize = 6;

impl IntPoly {
    pub fn factor(&self) -> Result<Factorization> {
        let sq = self.squarefree_decomposition()?;
        let mut factors = Vec::new();
        for (f, m) in sq.factors {
            for g in factor_squarefree(&f) {
                factors.push((g, m));
            }
        }
        factors.sort_by(|a, b| {
            (a.0.degree(), &a.0)
                .cmp(&(b.0.degree(), &b.0))
                .then(a.1.cmp(&b.1))
        });
        Ok(Factorization {
            unit: sq.unit,
            factors,
        })
    }

    /// Irreducibility over `Q` of a primitive polynomial of degree >= 1.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !self.is_primitive() {
            return Err(Error::NotPrimitive);
        }
        let p = if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        };
        if p.degree() == 1 {
            return Ok(true);
        }
        if p.constant_term().is_zero() {
            return Ok(false);
        }
        if p.degree() <= 3 {
            return Ok(rational_root(&p).is_none());
        }
        if !p.gcd(&p.derivative()).is_constant() {
            return Ok(false);
        }
        Ok(factor_squarefree(&p).len() == 1)
    }
}

/// A rational root `num/den` of `p`, if any. Used for degree <= 3 screens.
pub(crate) fn rational_root(p: &IntPoly) -> Option<(BigInt, BigInt)> {
    if p.constant_term().is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    if p.degree() == 2 {
        let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
        let disc = b * b - BigInt::from(4) * a * c;
        if disc.is_negative() {
            return None;
        }
        let s = disc.sqrt();
        if &s * &s != disc {
            return None;
        }
        let num = -b + &s;
        let den = a * 2;
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        return Some((num, den));
    }
    let lead_divs = divisors(&p.leading().abs());
    let const_divs = divisors(&p.constant_term().abs());
    for q in &lead_divs {
        for n in &const_divs {
            if !n.gcd(q).is_one() {
                continue;
            }
            for num in [n.clone(), -n] {
                if p.eval_homogeneous(&num, q).is_zero() {
                    return Some((num, q.clone()));
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let e = n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Irreducible factors of a squarefree primitive polynomial with positive
/// leading coefficient.
pub(crate) fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let z = f.zero_root_multiplicity();
    if z > 0 {
        out.push(IntPoly::from_i64s(&[0, 1]));
        f = f.strip_zero_roots();
    }
    if f.degree() == 0 {
        return out;
    }
    if f.degree() <= 3 {
        while let Some((num, den)) = rational_root(&f) {
            let lin = IntPoly::linear_root(&num, &den);
            f = f.div_exact(&lin).expect("rational root divides");
            out.push(lin);
            if f.degree() == 0 {
                break;
            }
        }
        if f.degree() > 0 {
            out.push(f);
        }
        return out;
    }
    out.extend(zassenhaus(&f));
    out
}

struct ModularImage {
    field: Field,
    factors: Vec<PolyP>,
}

fn possible_degrees(degs: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_u64 ^ n as u64);
    let mut best: Option<ModularImage> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for p in odd_primes() {
        if tried >= WITNESS_PRIMES {
            break;
        }
        let field = Field::new(p);
        if field.reduce_int(f.leading()) == 0 {
            continue;
        }
        let fp = field.monic(&field.reduce_poly(f.coeffs()));
        if !field.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let ddf = field.distinct_degree(&fp);
        let degs: Vec<usize> = ddf
            .iter()
            .flat_map(|(g, d)| std::iter::repeat_n(*d, (g.len() - 1) / d))
            .collect();
        if degs.len() == 1 {
            return vec![f.clone()];
        }
        let sums = possible_degrees(&degs);
        let merged: BTreeSet<usize> = match &allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        };
        if merged.iter().all(|&d| d == 0 || d == n) {
            return vec![f.clone()];
        }
        allowed = Some(merged);
        if best.as_ref().is_none_or(|b| degs.len() < b.factors.len()) {
            let mut factors = Vec::new();
            for (g, d) in ddf {
                factors.extend(field.equal_degree(&g, d, &mut rng));
            }
            best = Some(ModularImage { field, factors });
        }
    }
    let image = best.expect("some prime is good for a squarefree polynomial");
    let allowed = allowed.unwrap_or_default();
    recombine(f, image, &allowed)
}

/// Coefficient bound such that lifting past `2 * bound` lets symmetric
/// residues recover every `lc(f)/lc(g) * g` for a factor `g` of `f`.
fn lifting_bound(f: &IntPoly) -> BigInt {
    let norm2 = f.norm2_squared().sqrt() + 1u32;
    let two_n = BigInt::one() << f.degree();
    f.leading().abs() * two_n * norm2 * 2u32 + 1u32
}

fn recombine(f: &IntPoly, image: ModularImage, allowed: &BTreeSet<usize>) -> Vec<IntPoly> {
    let p = BigInt::from(image.field.p);
    let bound = lifting_bound(f);
    let mut modulus = p.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
    }
    let lifted = hensel_lift(f.coeffs(), &image.factors, image.field, &modulus);

    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in Combinations::new(remaining.len(), size) {
            let d: usize = subset.iter().map(|&i| remaining[i].len() - 1).sum();
            if !allowed.is_empty() && !allowed.contains(&d) {
                continue;
            }
            let lc = rest.leading().clone();
            // constant-term filter before forming the full product
            let mut c0 = lc.clone();
            for &i in &subset {
                c0 = symmetric_mod(&(c0 * &remaining[i][0]), &modulus);
            }
            if c0.is_zero() || !(lc.clone() * rest.constant_term()).is_multiple_of(&c0) {
                continue;
            }
            let mut g = vec![lc];
            for &i in &subset {
                g = mul_mod(&g, &remaining[i], &modulus);
            }
            let cand = IntPoly::new(g.iter().map(|c| symmetric_mod(c, &modulus)).collect());
            let cand = match cand.primitive_part() {
                Ok(c) => c,
                Err(_) => continue,
            };
            if let Some(q) = rest.div_exact(&cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                out.push(g.normalized().unwrap());
                rest = q;
                let keep: Vec<Vec<BigInt>> = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                remaining = keep;
            }
            None => size += 1,
        }
    }
    if rest.degree() > 0 {
        out.push(rest.normalized().unwrap());
    }
    out
}

struct Combinations {
    n: usize,
    idx: Vec<usize>,
    first: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            first: true,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let k = self.idx.len();
        if k > self.n {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(self.idx.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(self.idx.clone());
            }
        }
        None
    }
}

fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn reduce(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    reduce(&c, m)
}

fn add_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn sub_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic divisor modulo `m`.
fn divrem_monic_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().is_some_and(|c| c.is_one()));
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = r[k + db].mod_floor(m);
        if !top.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &top * bc;
            }
        }
        q[k] = top;
    }
    r.truncate(db);
    (reduce(&q, m), reduce(&r, m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Lift `f = lc(f) * prod factors (mod p)` to the same identity modulo
/// `modulus` (a power of `p`), returning monic lifted factors.
fn hensel_lift(
    f: &[BigInt],
    factors: &[PolyP],
    field: Field,
    modulus: &BigInt,
) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        let inv = mod_inverse(f.last().unwrap(), modulus);
        let g: Vec<BigInt> = f.iter().map(|c| c * &inv).collect();
        return vec![reduce(&g, modulus)];
    }
    let k = factors.len() / 2;
    let (left, right) = factors.split_at(k);
    let lcp = field.reduce_int(f.last().unwrap());
    let g0 = left
        .iter()
        .fold(vec![lcp], |acc, q| field.poly_mul(&acc, q));
    let h0 = right
        .iter()
        .fold(vec![1u64], |acc, q| field.poly_mul(&acc, q));
    let (gcd, s0, t0) = field.xgcd(&g0, &h0);
    debug_assert_eq!(gcd, vec![1]);
    // reduce so deg s < deg h and deg t < deg g
    let (q, s0) = field.divrem(&s0, &h0);
    // (s - q h) g + (t + q g) h = 1
    let t0 = field.poly_sub(&t0, &field.scale(&field.poly_mul(&q, &g0), field.p - 1));

    let p = BigInt::from(field.p);
    let mut m = p.clone();
    let mut g = lift_poly(&g0);
    let mut h = lift_poly(&h0);
    let mut s = lift_poly(&s0);
    let mut t = lift_poly(&t0);
    let fz = f.to_vec();
    while &m < modulus {
        let m2 = &m * &m;
        let e = sub_mod(&fz, &mul_mod(&g, &h, &m2), &m2);
        let (q, r) = divrem_monic_mod(&mul_mod(&s, &e, &m2), &h, &m2);
        let g_new = add_mod(
            &add_mod(&g, &mul_mod(&t, &e, &m2), &m2),
            &mul_mod(&q, &g, &m2),
            &m2,
        );
        let h_new = add_mod(&h, &r, &m2);
        let b = sub_mod(
            &add_mod(&mul_mod(&s, &g_new, &m2), &mul_mod(&t, &h_new, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = divrem_monic_mod(&mul_mod(&s, &b, &m2), &h_new, &m2);
        let s_new = sub_mod(&s, &d, &m2);
        let t_new = sub_mod(
            &sub_mod(&t, &mul_mod(&t, &b, &m2), &m2),
            &mul_mod(&c, &g_new, &m2),
            &m2,
        );
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    let g = reduce(&g, modulus);
    let h = reduce(&h, modulus);
    let mut out = hensel_lift(&g, left, field, modulus);
    out.extend(hensel_lift(&h, right, field, modulus));
    out
}
