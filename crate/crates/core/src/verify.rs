//! Self-checking suites shared by the command line and the test targets.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algnum::{AlgebraicKey, RealAlgebraic};
use crate::census::{census_b, mahler_hits, CensusOptions};
use crate::constructions::surd;
use crate::error::{Error, Result};
use crate::heightdyn::{height_of, iterate, Classification};
use crate::mahler::mahler_direct;
use crate::numeric::roots_f64;
use crate::poly::IntPoly;
use crate::rootloc::{count_unit_disk, RootCount};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const SUITES: [&str; 4] = ["lemma22", "dynamics", "multiplicativity", "rootloc-oracle"];

pub fn run_suite(name: &str, opts: &CensusOptions) -> Result<SuiteReport> {
    match name {
        "lemma22" => lemma22(opts),
        "dynamics" => dynamics(opts),
        "multiplicativity" => multiplicativity(1000, 7),
        "rootloc-oracle" => rootloc_oracle(10_000, 100, 11),
        _ => Err(Error::InvalidArgument(format!("unknown suite {name:?}"))),
    }
}

/// `{ n^(1/d) : lo <= n <= hi }` in ascending order.
pub fn nth_roots(d: usize, lo: u64, hi: u64) -> Result<Vec<RealAlgebraic>> {
    (lo..=hi)
        .map(|n| RealAlgebraic::from_integer(n).nth_root_positive(d))
        .collect()
}

/// Height sets of degree-`d` numbers with all or no conjugates inside.
pub fn lemma22(opts: &CensusOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lemma22");
    let sqrt10 = RealAlgebraic::from_integer(10).nth_root_positive(2)?;
    let cases: [(usize, usize, RealAlgebraic, u64, u64); 4] = [
        (0, 2, sqrt10.clone(), 1, 10),
        (2, 2, sqrt10, 2, 10),
        (0, 3, RealAlgebraic::from_integer(2), 2, 8),
        (3, 3, RealAlgebraic::from_integer(2), 2, 8),
    ];
    for (k, d, hmax, lo, hi) in cases {
        let (values, n) = census_b(k, d, &hmax, opts)?;
        let want = nth_roots(d, lo, hi)?;
        rep.check(values == want && n == want.len(), || {
            format!("census_b({k},{d},{hmax}) has {n} values, expected n^(1/{d}) for {lo}..={hi}")
        });
    }
    let (values, _) = census_b(0, 3, &RealAlgebraic::one(), opts)?;
    rep.check(values.is_empty(), || "census_b(0,3,1) is not empty".into());
    Ok(rep)
}

/// Fixed surds, monotone decrease of `H(H(x))` and the golden orbit.
pub fn dynamics(opts: &CensusOptions) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("dynamics");
    for a in 1..=10u64 {
        for q in 1..=4u64 {
            for p in (1..=5u64).filter(|p| num_integer::gcd(*p, q) == 1) {
                let s = surd(a, p, q)?;
                let h = height_of(&s)?;
                rep.check(h == s, || format!("height of {a}^({p}/{q}) is {h}"));
            }
        }
    }
    let mut failures = Vec::new();
    let checks = monotone_decrease(3, &RealAlgebraic::from_integer(10), opts, &mut failures)?;
    rep.checks += checks;
    rep.failures.extend(failures);

    let phi = RealAlgebraic::from_root(
        &IntPoly::from_i64s(&[-1, -1, 1]),
        &Rational::one(),
        &Rational::from_integer(BigInt::from(2)),
    )?;
    let r = iterate(&phi, 8, &Rational::new(BigInt::from(1), BigInt::from(50)))?;
    rep.check(
        matches!(r.classification, Classification::TendingToOne { .. }),
        || format!("golden orbit classified {:?}", r.classification),
    );
    rep.check(r.decreasing_verified, || {
        "golden orbit is not decreasing".into()
    });
    Ok(rep)
}

/// For every irreducible primitive polynomial of degree at most `dmax` and
/// measure at most `mmax`: `H(H(x)) <= H(x)`, with equality exactly when
/// `H(x)` is a natural power. Returns the number of checks.
pub fn monotone_decrease(
    dmax: usize,
    mmax: &RealAlgebraic,
    opts: &CensusOptions,
    failures: &mut Vec<String>,
) -> Result<usize> {
    let mut checks = 0;
    for d in 1..=dmax {
        let hits = mahler_hits(None, d, mmax, true, opts)?;
        let mut seen: HashMap<AlgebraicKey, ()> = HashMap::new();
        for h in hits {
            checks += 1;
            if seen.insert(h.measure.key(), ()).is_some() {
                continue;
            }
            let hx = h.measure.nth_root_positive(d)?;
            let hhx = height_of(&hx)?;
            let natural = hx.is_natural_power()?.is_some();
            match hhx.compare(&hx) {
                std::cmp::Ordering::Greater => {
                    failures.push(format!("H(H(x)) > H(x) for M = {}", h.measure))
                }
                std::cmp::Ordering::Equal if !natural => {
                    failures.push(format!("H fixes {hx}, which is not a natural power"))
                }
                std::cmp::Ordering::Less if natural => {
                    failures.push(format!("H moves the natural power {hx}"))
                }
                _ => {}
            }
        }
    }
    Ok(checks)
}

fn random_poly(rng: &mut ChaCha8Rng, dmax: usize, bound: i64) -> IntPoly {
    loop {
        let d = rng.gen_range(1..=dmax);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
        if c[d] == 0 {
            c[d] = if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        let p = IntPoly::from_i64s(&c);
        if p.degree() >= 1 {
            return p;
        }
    }
}

/// `M(AB) = M(A) M(B)` on random pairs, with each measure computed from
/// the roots of the polynomial itself.
pub fn multiplicativity(pairs: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("multiplicativity");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = random_poly(&mut rng, 3, 10);
        let b = random_poly(&mut rng, 3, 10);
        let lhs = mahler_direct(&(&a * &b))?;
        let rhs = mahler_direct(&a)?.mul(&mahler_direct(&b)?);
        rep.check(lhs == rhs, || {
            format!("M(AB) != M(A)M(B) for A = {a}, B = {b}")
        });
    }
    Ok(rep)
}

/// Root counts from floating-point roots, or `None` when some inclusion
/// disk meets the unit circle or the disks overlap.
pub fn certified_root_count(p: &IntPoly) -> Option<RootCount> {
    // zero roots are left to the caller
    let p = p.strip_zero_roots();
    let n = p.degree();
    if n == 0 {
        return Some(RootCount::default());
    }
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| num_traits::ToPrimitive::to_f64(x).unwrap())
        .collect();
    let z = roots_f64(&p);
    let lead = c[n];
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = Complex64::new(0.0, 0.0);
        let mut absval = 0.0f64;
        for &x in c.iter().rev() {
            v = v * z[i] + x;
            absval = absval * z[i].norm() + x.abs();
        }
        // rounding error of Horner evaluation
        let err = 4.0 * (n as f64 + 2.0) * f64::EPSILON * absval;
        let denom: f64 = (0..n)
            .filter(|&j| j != i)
            .map(|j| (z[i] - z[j]).norm())
            .product::<f64>()
            * lead.abs();
        if denom == 0.0 || !denom.is_finite() {
            return None;
        }
        // Gerschgorin-type inclusion radius, with a safety factor
        radii.push(2.0 * n as f64 * (v.norm() + err) / denom + 1e-12 * z[i].norm().max(1.0));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    let mut rc = RootCount::default();
    for i in 0..n {
        let m = z[i].norm();
        if m + radii[i] < 1.0 {
            rc.inside += 1;
        } else if m - radii[i] > 1.0 {
            rc.outside += 1;
        } else {
            return None;
        }
    }
    Some(rc)
}

/// The `n`-th cyclotomic polynomial.
pub fn cyclotomic(n: usize) -> IntPoly {
    let mut f = &IntPoly::monomial(BigInt::one(), n) - &IntPoly::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        f = f.div_exact(&cyclotomic(d)).expect("cyclotomic divisor");
    }
    f
}

/// Exact root location against the certified oracle on random
/// polynomials, and planted circle degrees on cyclotomic products.
pub fn rootloc_oracle(samples: usize, planted: usize, seed: u64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("rootloc-oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut certified, mut drawn) = (0, 0);
    // sample until `samples` cases are certified
    while certified < samples && drawn < 4 * samples {
        drawn += 1;
        let p = random_poly(&mut rng, 6, 20);
        let Some(oracle) = certified_root_count(&p) else {
            continue;
        };
        certified += 1;
        let exact = count_unit_disk(&p)?;
        let z = p.zero_root_multiplicity();
        let oracle = RootCount {
            inside: oracle.inside + z,
            ..oracle
        };
        rep.check(exact == oracle, || {
            format!("{p}: exact {exact:?}, oracle {oracle:?}")
        });
    }
    rep.check(certified == samples, || {
        format!("only {certified} of {drawn} samples certified")
    });
    let orders = [1usize, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12];
    let mut done = 0;
    while done < planted {
        let cofactor = random_poly(&mut rng, 4, 9);
        let Some(base) = certified_root_count(&cofactor) else {
            continue;
        };
        let mut p = cofactor.clone();
        let mut circle = 0;
        for _ in 0..rng.gen_range(1..=3) {
            let phi = cyclotomic(orders[rng.gen_range(0..orders.len())]);
            circle += phi.degree();
            p = &p * &phi;
        }
        let exact = count_unit_disk(&p)?;
        let want = RootCount {
            inside: base.inside + cofactor.zero_root_multiplicity(),
            on_circle: circle,
            outside: base.outside,
        };
        rep.check(exact == want, || {
            format!("{p}: exact {exact:?}, planted {want:?}")
        });
        done += 1;
    }
    Ok(rep)
}
