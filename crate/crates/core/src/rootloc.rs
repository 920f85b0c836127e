//! Exact counts of roots inside, on and outside the unit circle.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::sturm::SturmSequence;
use crate::poly::IntPoly;
use crate::Rational;

/// Root counts with multiplicity: strictly inside, on, strictly outside.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootCount {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
}

impl RootCount {
    pub fn total(&self) -> usize {
        self.inside + self.on_circle + self.outside
    }

    /// Roots with modulus at least one.
    pub fn not_inside(&self) -> usize {
        self.on_circle + self.outside
    }

    fn scaled(self, m: usize) -> Self {
        RootCount {
            inside: self.inside * m,
            on_circle: self.on_circle * m,
            outside: self.outside * m,
        }
    }
}

impl std::ops::Add for RootCount {
    type Output = RootCount;
    fn add(self, o: RootCount) -> RootCount {
        RootCount {
            inside: self.inside + o.inside,
            on_circle: self.on_circle + o.on_circle,
            outside: self.outside + o.outside,
        }
    }
}

pub fn count_unit_disk(p: &IntPoly) -> Result<RootCount> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let zeros = p.zero_root_multiplicity();
    let mut total = RootCount {
        inside: zeros,
        ..Default::default()
    };
    let rest = p.strip_zero_roots();
    if rest.degree() == 0 {
        return Ok(total);
    }
    for (f, m) in rest.squarefree_decomposition()?.factors {
        total = total + count_squarefree(&f)?.scaled(m);
    }
    Ok(total)
}

/// Counts for a squarefree polynomial with nonzero constant term.
fn count_squarefree(f: &IntPoly) -> Result<RootCount> {
    if f.degree() == 1 {
        let (b, a) = (f.coeff(0).abs(), f.coeff(1).abs());
        return Ok(match b.cmp(&a) {
            std::cmp::Ordering::Less => RootCount {
                inside: 1,
                ..Default::default()
            },
            std::cmp::Ordering::Equal => RootCount {
                on_circle: 1,
                ..Default::default()
            },
            std::cmp::Ordering::Greater => RootCount {
                outside: 1,
                ..Default::default()
            },
        });
    }
    let g = f.gcd(&f.reverse());
    let (g, r) = if g.degree() == 0 {
        (None, f.clone())
    } else {
        let r = f.div_exact(&g).expect("gcd divides");
        (Some(g), r)
    };
    let mut count = RootCount::default();
    if let Some(g) = g {
        count = count + count_self_inversive(&g)?;
    }
    if r.degree() > 0 {
        let inside = inside_count_circle_free(&r)?;
        count = count
            + RootCount {
                inside,
                on_circle: 0,
                outside: r.degree() - inside,
            };
    }
    Ok(count)
}

/// `g` squarefree with root set closed under `z -> 1/z`.
fn count_self_inversive(g: &IntPoly) -> Result<RootCount> {
    let mut g = g.clone();
    let mut on = 0;
    for lin in [IntPoly::from_i64s(&[-1, 1]), IntPoly::from_i64s(&[1, 1])] {
        if let Some(q) = g.div_exact(&lin) {
            g = q;
            on += 1;
        }
    }
    if g.degree() == 0 {
        return Ok(RootCount {
            on_circle: on,
            ..Default::default()
        });
    }
    if g.degree() % 2 == 1 || g.reverse() != g {
        return Err(Error::InvariantViolation(format!(
            "self-inversive part {g} is not palindromic after removing +-1"
        )));
    }
    let h = trace_polynomial(&g);
    let two = Rational::from_integer(BigInt::from(2));
    let sturm = SturmSequence::new(&h);
    // h has no roots at +-2 since z = +-1 were removed
    let pairs = sturm.count_half_open(&-two.clone(), &two);
    let on_pairs = 2 * pairs;
    let off = g.degree() - on_pairs;
    Ok(RootCount {
        inside: off / 2,
        on_circle: on + on_pairs,
        outside: off / 2,
    })
}

/// For palindromic `g` of degree `2m`, the `h` of degree `m` with
/// `g(z) = z^m h(z + 1/z)`.
pub(crate) fn trace_polynomial(g: &IntPoly) -> IntPoly {
    let m = g.degree() / 2;
    // Dickson polynomials D_k(x) = z^k + z^-k
    let mut dickson: Vec<IntPoly> = Vec::with_capacity(m + 1);
    dickson.push(IntPoly::from_i64s(&[2]));
    if m >= 1 {
        dickson.push(IntPoly::from_i64s(&[0, 1]));
    }
    let x = IntPoly::from_i64s(&[0, 1]);
    for k in 2..=m {
        let next = &(&x * &dickson[k - 1]) - &dickson[k - 2];
        dickson.push(next);
    }
    let mut h = IntPoly::constant(g.coeff(m).clone());
    for (k, dk) in dickson.iter().enumerate().skip(1) {
        h = &h + &dk.mul_scalar(g.coeff(m + k));
    }
    h
}

/// Roots strictly inside the circle for a polynomial with no root on it.
fn inside_count_circle_free(r: &IntPoly) -> Result<usize> {
    let q = mobius(r);
    let n = q.degree();
    if n != r.degree() {
        return Err(Error::InvariantViolation(format!("{r} vanishes at 1")));
    }
    // q(iy) = re(y) + i im(y)
    let mut re = vec![BigInt::zero(); n + 1];
    let mut im = vec![BigInt::zero(); n + 1];
    for (k, c) in q.coeffs().iter().enumerate() {
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c,
            _ => im[k] = -c,
        }
    }
    let (re, im) = (IntPoly::new(re), IntPoly::new(im));
    if !re.gcd(&im).is_constant() {
        return Err(Error::InvariantViolation(format!(
            "{r} has a root on the unit circle after circle extraction"
        )));
    }
    // n_left - n_right, from the winding of q(iy)
    let diff = if n.is_multiple_of(2) {
        -SturmSequence::chain(&re, &im).cauchy_index()
    } else {
        SturmSequence::chain(&im, &re).cauchy_index()
    };
    let right = (n as i64 - diff) / 2;
    if (n as i64 - diff) % 2 != 0 || right < 0 || right > n as i64 {
        return Err(Error::InvariantViolation(format!(
            "inconsistent winding for {r}"
        )));
    }
    Ok(right as usize)
}

/// `(w+1)^n r((w-1)/(w+1))`: the open unit disk maps to the right half-plane.
fn mobius(r: &IntPoly) -> IntPoly {
    let n = r.degree();
    let wm1 = IntPoly::from_i64s(&[-1, 1]);
    let wp1 = IntPoly::from_i64s(&[1, 1]);
    let mut pm = vec![IntPoly::one()];
    let mut pp = vec![IntPoly::one()];
    for i in 1..=n {
        pm.push(&pm[i - 1] * &wm1);
        pp.push(&pp[i - 1] * &wp1);
    }
    let mut q = IntPoly::zero();
    for (i, c) in r.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        q = &q + &(&pm[i] * &pp[n - i]).mul_scalar(c);
    }
    q
}

/// Split off the product of the irreducible factors whose roots all lie on
/// the unit circle. Returns `(circle_part, remainder)` with the content kept
/// in the remainder, so their product is `p`.
pub fn circle_root_factor(p: &IntPoly) -> Result<(IntPoly, IntPoly)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fa = p.factor()?;
    let mut circle = IntPoly::one();
    let mut rest = IntPoly::constant(fa.unit.clone());
    for (f, m) in &fa.factors {
        let part = f.pow(*m as u32);
        let rc = count_unit_disk(f)?;
        if rc.on_circle == f.degree() {
            circle = &circle * &part;
        } else {
            rest = &rest * &part;
        }
    }
    if circle.leading().is_negative() {
        circle = -circle;
        rest = -rest;
    }
    debug_assert!(rest.leading().is_positive() == p.leading().is_positive() || rest.is_zero());
    Ok((circle, rest))
}
