//! Exhaustive enumeration of integer polynomials by degree and Mahler
//! measure, grouped by exact height or measure.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algnum::{AlgebraicKey, RealAlgebraic};
use crate::error::{Error, Result};
use crate::mahler::primitive_measure;
use crate::numeric::roots_of_coeffs;
use crate::poly::IntPoly;
use crate::rootloc::{count_unit_disk, RootCount};
use crate::Rational;

/// Relative slack for the floating-point measure screen. Candidates whose
/// approximate measure exceeds the bound by less than this go through the
/// exact test.
const FLOAT_SCREEN_SLACK: f64 = 1e-2;

/// Highest degree for which the floating-point screen is used.
const FLOAT_SCREEN_MAX_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// `H` for number censuses, `M` for polynomial censuses.
    pub key: RealAlgebraic,
    pub d: usize,
    pub k: usize,
    pub count: u64,
    /// Degree of `H^d` (equivalently of `M`).
    pub deg_hd: usize,
}

/// Flat form of a [`CensusRecord`] for CSV and JSON output. The decimal
/// approximation is informative only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub key_minpoly: String,
    pub key_root_index: usize,
    pub key_approx: String,
    pub d: usize,
    pub k: usize,
    pub count: u64,
    #[serde(rename = "deg_Hd")]
    pub deg_hd: usize,
}

impl CensusRecord {
    pub fn to_row(&self) -> CensusRow {
        let key = self.key.key();
        CensusRow {
            key_minpoly: key.minpoly.to_string(),
            key_root_index: key.root_index,
            key_approx: self.key.approx_decimal(20),
            d: self.d,
            k: self.k,
            count: self.count,
            deg_hd: self.deg_hd,
        }
    }

    pub fn from_row(row: &CensusRow) -> Result<Self> {
        let key = AlgebraicKey {
            minpoly: row.key_minpoly.parse()?,
            root_index: row.key_root_index,
        };
        Ok(CensusRecord {
            key: RealAlgebraic::from_key(&key)?,
            d: row.d,
            k: row.k,
            count: row.count,
            deg_hd: row.deg_hd,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopeEstimate {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Count only positive-leading representatives of `A` and `-A`.
    pub identify_sign: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            threads: None,
            identify_sign: true,
        }
    }
}

/// One polynomial that passed every filter.
#[derive(Clone, Debug)]
pub struct Hit {
    pub coeffs: Vec<i64>,
    pub measure: RealAlgebraic,
    pub roots: RootCount,
}

#[derive(Clone, Debug)]
struct Request {
    d: usize,
    k: Option<usize>,
    mmax: RealAlgebraic,
    mmax_hi: f64,
    primitive_only: bool,
    irreducible_only: bool,
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r = 1i64;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

impl Request {
    fn new(d: usize, k: Option<usize>, mmax: &RealAlgebraic) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("degree must be at least 1".into()));
        }
        if let Some(k) = k {
            if k > d {
                return Err(Error::InvalidArgument(format!(
                    "k = {k} exceeds degree {d}"
                )));
            }
        }
        if mmax.compare(&RealAlgebraic::one()) == Ordering::Less {
            return Err(Error::InvalidArgument("bound must be at least 1".into()));
        }
        let (_, hi) = mmax.refine(&Rational::new(BigInt::from(1), BigInt::from(1u64 << 40)))?;
        let mmax_hi = num_traits::ToPrimitive::to_f64(&hi).unwrap_or(f64::MAX) * (1.0 + 1e-12);
        Ok(Request {
            d,
            k,
            mmax: mmax.clone(),
            mmax_hi,
            primitive_only: false,
            irreducible_only: false,
        })
    }

    /// `|a_i| <= binom(d, i) * M`.
    fn coefficient_bounds(&self) -> Vec<i64> {
        (0..=self.d)
            .map(|i| (binomial(self.d, i) as f64 * self.mmax_hi).floor() as i64)
            .collect()
    }

    fn evaluate(&self, c: &[i64]) -> Result<Option<Hit>> {
        let d = self.d;
        let (a0, ad) = (c[0], c[d]);
        if a0.unsigned_abs() as f64 > self.mmax_hi {
            return Ok(None);
        }
        if self.primitive_only && c.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            return Ok(None);
        }
        if self.irreducible_only && a0 == 0 && d > 1 {
            return Ok(None);
        }
        match self.k {
            // product of root moduli is |a0| / ad
            Some(0) if a0 == 0 || a0.abs() < ad => return Ok(None),
            Some(k) if k == d && a0.abs() >= ad => return Ok(None),
            _ => {}
        }
        if d <= FLOAT_SCREEN_MAX_DEGREE {
            let cf: Vec<f64> = c.iter().map(|&x| x as f64).collect();
            let m: f64 = roots_of_coeffs(&cf)
                .iter()
                .map(|z| z.norm().max(1.0))
                .product::<f64>()
                * ad as f64;
            if m > self.mmax_hi * (1.0 + FLOAT_SCREEN_SLACK) {
                return Ok(None);
            }
        }
        let p = IntPoly::from_i64s(c);
        if self.irreducible_only && !p.is_irreducible()? {
            return Ok(None);
        }
        let rc = count_unit_disk(&p)?;
        if self.k.is_some_and(|k| k != rc.inside) {
            return Ok(None);
        }
        let m = measure_with_count(&p, &rc)?;
        if m.compare(&self.mmax) == Ordering::Greater {
            return Ok(None);
        }
        Ok(Some(Hit {
            coeffs: c.to_vec(),
            measure: m,
            roots: rc,
        }))
    }

    /// Every hit, in lexicographic order of the coefficient vector read
    /// from the leading coefficient down.
    fn scan(&self, opts: &CensusOptions) -> Result<Vec<Hit>> {
        let bounds = self.coefficient_bounds();
        let d = self.d;
        let mut shards: Vec<(i64, Option<i64>)> = Vec::new();
        for ad in 1..=bounds[d] {
            if d >= 2 {
                for ad1 in -bounds[d - 1]..=bounds[d - 1] {
                    shards.push((ad, Some(ad1)));
                }
            } else {
                shards.push((ad, None));
            }
        }
        let run = || -> Result<Vec<Vec<Hit>>> {
            shards
                .par_iter()
                .map(|&(ad, ad1)| self.scan_shard(&bounds, ad, ad1))
                .collect()
        };
        let per_shard = with_threads(opts.threads, run)?;
        Ok(per_shard.into_iter().flatten().collect())
    }

    fn scan_shard(&self, bounds: &[i64], ad: i64, ad1: Option<i64>) -> Result<Vec<Hit>> {
        let d = self.d;
        let free = if ad1.is_some() { d - 1 } else { d };
        let mut c = vec![0i64; d + 1];
        c[d] = ad;
        if let Some(x) = ad1 {
            c[d - 1] = x;
        }
        // odometer over c[free-1] (most significant) .. c[0]
        for (i, slot) in c.iter_mut().enumerate().take(free) {
            *slot = -bounds[i];
        }
        let mut out = Vec::new();
        loop {
            if let Some(hit) = self.evaluate(&c)? {
                out.push(hit);
            }
            let mut i = 0;
            loop {
                if i == free {
                    return Ok(out);
                }
                if c[i] < bounds[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = -bounds[i];
                i += 1;
            }
        }
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => match rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
        {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// `M(p)` given the root counts of `p`.
pub(crate) fn measure_with_count(p: &IntPoly, rc: &RootCount) -> Result<RealAlgebraic> {
    let c = p.content()?;
    let z = p.zero_root_multiplicity();
    let mut f = p.primitive_part()?.strip_zero_roots();
    if f.leading() < &BigInt::from(0) {
        f = -f;
    }
    let m = if f.degree() == 0 {
        RealAlgebraic::from_integer(f.leading().clone())
    } else {
        let (pw, q) = f.power_structure();
        if pw > 1 {
            primitive_measure(&q, &count_unit_disk(&q)?)?
        } else {
            let rc = RootCount {
                inside: rc.inside - z,
                ..*rc
            };
            primitive_measure(&f, &rc)?
        }
    };
    Ok(m.mul(&RealAlgebraic::from_integer(c)))
}

/// Every degree-`d` polynomial with positive leading coefficient and
/// `M <= mmax`, in lexicographic order of the coefficient vector.
pub fn enumerate_bounded(d: usize, mmax: &Rational, primitive_only: bool) -> Result<Vec<IntPoly>> {
    let mut req = Request::new(d, None, &RealAlgebraic::from_rational(mmax.clone()))?;
    req.primitive_only = primitive_only;
    let mut polys: Vec<IntPoly> = req
        .scan(&CensusOptions::default())?
        .into_iter()
        .map(|h| IntPoly::from_i64s(&h.coeffs))
        .collect();
    polys.sort();
    Ok(polys)
}

/// Raw hits of a Mahler census, for callers that need the polynomials.
pub fn mahler_hits(
    k: Option<usize>,
    d: usize,
    mmax: &RealAlgebraic,
    irreducible_only: bool,
    opts: &CensusOptions,
) -> Result<Vec<Hit>> {
    let mut req = Request::new(d, k, mmax)?;
    req.irreducible_only = irreducible_only;
    req.primitive_only = irreducible_only;
    req.scan(opts)
}

fn group_by_measure(hits: &[Hit]) -> Vec<(RealAlgebraic, u64)> {
    let mut groups: BTreeMap<AlgebraicKey, (RealAlgebraic, u64)> = BTreeMap::new();
    for h in hits {
        groups
            .entry(h.measure.key())
            .and_modify(|e| e.1 += 1)
            .or_insert_with(|| (h.measure.clone(), 1));
    }
    let mut out: Vec<(RealAlgebraic, u64)> = groups.into_values().collect();
    out.sort_by(|a, b| a.0.compare(&b.0));
    out
}

/// Degree-`d` algebraic numbers with exactly `k` conjugates inside the open
/// unit disk and height at most `hmax`, one record per height value.
pub fn census_a(
    k: usize,
    d: usize,
    hmax: &RealAlgebraic,
    opts: &CensusOptions,
) -> Result<Vec<CensusRecord>> {
    if hmax.compare(&RealAlgebraic::one()) == Ordering::Less {
        return Err(Error::InvalidArgument(
            "height bound must be at least 1".into(),
        ));
    }
    let mmax = hmax.pow_int(d as i64)?;
    let hits = mahler_hits(Some(k), d, &mmax, true, opts)?;
    let groups = group_by_measure(&hits);
    let records = with_threads(opts.threads, || {
        groups
            .par_iter()
            .map(|(m, n)| {
                Ok(CensusRecord {
                    key: m.nth_root_positive(d)?,
                    d,
                    k,
                    count: d as u64 * n,
                    deg_hd: m.degree(),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(records)
}

/// The distinct heights of [`census_a`] and their number.
pub fn census_b(
    k: usize,
    d: usize,
    hmax: &RealAlgebraic,
    opts: &CensusOptions,
) -> Result<(Vec<RealAlgebraic>, usize)> {
    let values: Vec<RealAlgebraic> = census_a(k, d, hmax, opts)?
        .into_iter()
        .map(|r| r.key)
        .collect();
    let n = values.len();
    Ok((values, n))
}

/// All degree-`d` integer polynomials (any content, reducible allowed) with
/// `k` roots inside the open disk counted with multiplicity and `M <= mmax`,
/// one record per measure value.
pub fn census_mahler(
    k: usize,
    d: usize,
    mmax: &RealAlgebraic,
    opts: &CensusOptions,
) -> Result<Vec<CensusRecord>> {
    let hits = mahler_hits(Some(k), d, mmax, false, opts)?;
    let factor = if opts.identify_sign { 1 } else { 2 };
    Ok(group_by_measure(&hits)
        .into_iter()
        .map(|(m, n)| CensusRecord {
            deg_hd: m.degree(),
            key: m,
            d,
            k,
            count: factor * n,
        })
        .collect())
}

/// Least-squares line through `(log x, log y)`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<SlopeEstimate> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| x > 1.0 && y >= 1.0 && x.is_finite() && y.is_finite())
        .collect();
    if usable.len() < 2 {
        return Err(Error::InvalidArgument(
            "slope fit needs at least two points".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = usable.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "slope fit needs two distinct x values".into(),
        ));
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(SlopeEstimate {
        points: usable,
        slope,
        intercept,
        residual,
    })
}

/// Sum of record counts with key at most each threshold.
pub fn cumulative_counts(records: &[CensusRecord], thresholds: &[RealAlgebraic]) -> Vec<u64> {
    thresholds
        .iter()
        .map(|t| {
            records
                .iter()
                .filter(|r| r.key.compare(t) != Ordering::Greater)
                .map(|r| r.count)
                .sum()
        })
        .collect()
}

/// Number of records with key at most each threshold.
pub fn distinct_counts(records: &[CensusRecord], thresholds: &[RealAlgebraic]) -> Vec<u64> {
    thresholds
        .iter()
        .map(|t| {
            records
                .iter()
                .filter(|r| r.key.compare(t) != Ordering::Greater)
                .count() as u64
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn enumerate_linear() {
        let v = enumerate_bounded(1, &q(2), true).unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(enumerate_bounded(1, &q(1), false).unwrap().len(), 3);
        assert!(
            enumerate_bounded(1, &Rational::new(BigInt::from(1), BigInt::from(2)), true).is_err()
        );
    }

    #[test]
    fn kronecker_quadratics() {
        let v = enumerate_bounded(2, &q(1), true).unwrap();
        let has = |c: &[i64]| v.contains(&IntPoly::from_i64s(c));
        assert!(has(&[0, 0, 1]) && has(&[1, 1, 1]) && has(&[1, -1, 1]) && has(&[1, 0, 1]));
        assert!(!has(&[-2, 0, 1]));
        for p in &v {
            assert!(crate::numeric::roots_f64(p)
                .iter()
                .all(|z| z.norm() < 1.0 + 1e-6));
        }
    }

    #[test]
    fn linear_census_matches_closed_form() {
        let opts = CensusOptions::default();
        let recs = census_a(0, 1, &RealAlgebraic::from_integer(3), &opts).unwrap();
        let got: Vec<(String, u64)> = recs
            .iter()
            .map(|r| (r.key.approx_decimal(0), r.count))
            .collect();
        assert_eq!(got, vec![("1".into(), 2), ("2".into(), 2), ("3".into(), 4)]);
        let m = census_mahler(0, 1, &RealAlgebraic::from_integer(2), &opts).unwrap();
        let got: Vec<(String, u64)> = m
            .iter()
            .map(|r| (r.key.approx_decimal(0), r.count))
            .collect();
        assert_eq!(got, vec![("1".into(), 2), ("2".into(), 4)]);
    }

    #[test]
    fn screen_loses_nothing() {
        // brute force with exact measures over the same box
        for (d, m) in [(2usize, 3i64), (3, 2), (4, 1)] {
            let fast = enumerate_bounded(d, &q(m), false).unwrap();
            let b: Vec<i64> = (0..=d).map(|i| binomial(d, i) * m).collect();
            let mut slow = Vec::new();
            let mut c: Vec<i64> = b.iter().map(|x| -x).collect();
            'outer: loop {
                if c[d] > 0 {
                    let p = IntPoly::from_i64s(&c);
                    let mp = crate::mahler::mahler_exact(&p).unwrap();
                    if mp.compare_rational(&q(m)) != Ordering::Greater {
                        slow.push(p);
                    }
                }
                for i in 0..=d {
                    if c[i] < b[i] {
                        c[i] += 1;
                        continue 'outer;
                    }
                    c[i] = -b[i];
                }
                break;
            }
            slow.sort();
            assert_eq!(fast, slow, "d = {d}, M = {m}");
        }
    }

    #[test]
    fn slope_examples() {
        let s = fit_slope(&[(2.0, 16.0), (4.0, 256.0), (8.0, 4096.0)]).unwrap();
        assert!((s.slope - 4.0).abs() < 1e-12 && s.residual < 1e-12);
        let s = fit_slope(&[(2.0, 3.0), (4.0, 3.0), (8.0, 3.0)]).unwrap();
        assert!(s.slope.abs() < 1e-12);
        let s = fit_slope(&[(2.0, 10.0), (4.0, 35.0), (8.0, 130.0)]).unwrap();
        assert!((s.slope - 1.85).abs() < 0.01);
        assert!(fit_slope(&[(2.0, 1.0)]).is_err());
    }
}
