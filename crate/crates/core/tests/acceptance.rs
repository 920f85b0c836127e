//! Acceptance criteria 1 to 8, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use height_census::algnum::parse_real;
use height_census::census::{
    census_a, census_b, census_mahler, cumulative_counts, distinct_counts, fit_slope, CensusOptions,
};
use height_census::constructions::quartic_family;
use height_census::heightdyn::{height_of, iterate, Classification};
use height_census::mahler::{deg_of_height_power, height_exact, mahler_direct};
use height_census::numeric::mahler_f64;
use height_census::rootloc::count_unit_disk;
use height_census::verify::{lemma22, monotone_decrease, multiplicativity, rootloc_oracle};
use height_census::{IntPoly, RealAlgebraic};
use num_bigint::BigInt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn real(s: &str) -> RealAlgebraic {
    parse_real(s).unwrap()
}

fn within(budget: Duration, start: Instant) -> Result<(), String> {
    if start.elapsed() > budget {
        Err(format!("took {:?}, budget {:?}", start.elapsed(), budget))
    } else {
        Ok(())
    }
}

fn criterion1() -> Outcome {
    let start = Instant::now();
    let rep = lemma22(&CensusOptions::default()).map_err(|e| e.to_string())?;
    within(Duration::from_secs(30 * 60), start)?;
    if rep.passed() {
        Ok(format!(
            "{} exact set identities, {:.1?}",
            rep.checks,
            start.elapsed()
        ))
    } else {
        Err(rep.failures.join("; "))
    }
}

fn criterion2() -> Outcome {
    let rep = rootloc_oracle(10_000, 100, 11).map_err(|e| e.to_string())?;
    if rep.passed() {
        Ok(format!(
            "{} checks agree (10000 certified random, 100 planted)",
            rep.checks
        ))
    } else {
        Err(format!(
            "{} failures, first: {}",
            rep.failures.len(),
            rep.failures[0]
        ))
    }
}

fn criterion3() -> Outcome {
    let rep = multiplicativity(1000, 7).map_err(|e| e.to_string())?;
    if rep.passed() {
        Ok(format!("{} random pairs, zero failures", rep.checks))
    } else {
        Err(format!(
            "{} failures, first: {}",
            rep.failures.len(),
            rep.failures[0]
        ))
    }
}

fn slope_in(points: &[(f64, f64)], lo: f64, hi: f64) -> Outcome {
    let est = fit_slope(points).map_err(|e| e.to_string())?;
    let msg = format!(
        "points {:?}, slope {:.3} in [{lo}, {hi}]",
        points, est.slope
    );
    if (lo..=hi).contains(&est.slope) {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn criterion4a() -> Outcome {
    let start = Instant::now();
    let opts = CensusOptions::default();
    let (values, _) = census_b(0, 2, &real("sqrt(80)"), &opts).map_err(|e| e.to_string())?;
    let mut points = Vec::new();
    for n in [20u64, 40, 80] {
        let t = real(&format!("sqrt({n})"));
        let count = values.iter().filter(|v| **v <= t).count();
        if count as u64 != n {
            return Err(format!("|B(0,2,sqrt {n})| = {count}, expected {n}"));
        }
        points.push((t.to_f64(), count as f64));
    }
    within(Duration::from_secs(20 * 60), start)?;
    slope_in(&points, 1.8, 2.2).map(|m| format!("{m}, {:.1?}", start.elapsed()))
}

fn criterion4b() -> Outcome {
    let start = Instant::now();
    let recs = census_a(1, 2, &real("6"), &CensusOptions::default()).map_err(|e| e.to_string())?;
    let ts: Vec<RealAlgebraic> = (2..=6).map(RealAlgebraic::from_integer).collect();
    let counts = cumulative_counts(&recs, &ts);
    let points: Vec<(f64, f64)> = ts
        .iter()
        .zip(&counts)
        .map(|(t, &c)| (t.to_f64(), c as f64))
        .collect();
    within(Duration::from_secs(20 * 60), start)?;
    slope_in(&points, 5.0, 7.0).map(|m| format!("{m}, {:.1?}", start.elapsed()))
}

fn criterion4c() -> Outcome {
    let start = Instant::now();
    let recs =
        census_mahler(1, 2, &real("30"), &CensusOptions::default()).map_err(|e| e.to_string())?;
    let ms: Vec<RealAlgebraic> = [5, 10, 20, 30]
        .into_iter()
        .map(RealAlgebraic::from_integer)
        .collect();
    let counts = distinct_counts(&recs, &ms);
    let points: Vec<(f64, f64)> = ms
        .iter()
        .zip(&counts)
        .map(|(m, &c)| (m.to_f64(), c as f64))
        .collect();
    within(Duration::from_secs(20 * 60), start)?;
    slope_in(&points, 2.3, 3.7).map(|m| format!("{m}, {:.1?}", start.elapsed()))
}

fn criterion5() -> Outcome {
    let (_, polys) = quartic_family(2).map_err(|e| e.to_string())?;
    // H^4 = 17 + 12 sqrt 2 = root of t^2 - 34t + 1 above 33
    let beta = RealAlgebraic::real_roots(&IntPoly::from_i64s(&[1, -34, 1]))
        .map_err(|e| e.to_string())?[1]
        .clone();
    let h = beta.nth_root_positive(4).map_err(|e| e.to_string())?;
    let mut good = 0;
    for f in &polys {
        if !f.is_irreducible().map_err(|e| e.to_string())? {
            continue;
        }
        let k = count_unit_disk(f).map_err(|e| e.to_string())?.inside;
        let hf = height_exact(f).map_err(|e| e.to_string())?;
        if k != 2 || hf != h {
            return Err(format!("{f}: k = {k}, height {}", hf.approx_decimal(20)));
        }
        good += 1;
    }
    let msg = format!(
        "{good} of {} quartics irreducible with k = 2 and height {}",
        polys.len(),
        h.key()
    );
    if good >= 9 {
        Ok(msg)
    } else {
        Err(msg)
    }
}

/// `phi^(2^-n)` rounded to 20 digits, from integer square roots.
fn golden_root_decimal(n: u32) -> String {
    let digits = 60u32;
    let scale = BigInt::from(10).pow(digits);
    // phi = (1 + sqrt 5) / 2 at the given scale
    let mut x: BigInt = (&scale + (BigInt::from(5) * &scale * &scale).sqrt()) / 2;
    for _ in 0..n {
        x = (&x * &scale).sqrt();
    }
    let cut = BigInt::from(10).pow(digits - 20);
    let half: BigInt = &cut / 2;
    let rounded: BigInt = (x + half) / cut;
    let s = rounded.to_string();
    format!("{}.{}", &s[..1], &s[1..])
}

fn criterion6() -> Outcome {
    let opts = CensusOptions::default();
    // a: fixed surds
    let mut fixed = 0;
    for a in 1..=10u64 {
        for q in 1..=4u64 {
            for p in (1..=5u64).filter(|p| num_integer::gcd(*p, q) == 1) {
                let s = height_census::constructions::surd(a, p, q).map_err(|e| e.to_string())?;
                if height_of(&s).map_err(|e| e.to_string())? != s {
                    return Err(format!("6a: {a}^({p}/{q}) is not fixed"));
                }
                fixed += 1;
            }
        }
    }
    // b: monotone decrease with equality on natural powers
    let mut failures = Vec::new();
    let checked = monotone_decrease(3, &RealAlgebraic::from_integer(10), &opts, &mut failures)
        .map_err(|e| e.to_string())?;
    if !failures.is_empty() {
        return Err(format!(
            "6b: {} exceptions, first: {}",
            failures.len(),
            failures[0]
        ));
    }
    // c: golden orbit
    let phi = RealAlgebraic::real_roots(&IntPoly::from_i64s(&[-1, -1, 1]))
        .map_err(|e| e.to_string())?[1]
        .clone();
    let eps = real("1/50").as_rational().unwrap().clone();
    let r = iterate(&phi, 8, &eps).map_err(|e| format!("6c: {e}"))?;
    if r.trajectory[0].minpoly() != &IntPoly::from_i64s(&[-1, -1, 1])
        || r.trajectory[1].minpoly() != &IntPoly::from_i64s(&[-1, 0, -1, 0, 1])
    {
        return Err("6c: wrong minimal polynomials at steps 0 and 1".into());
    }
    for n in 0..=4u32 {
        let got = r.trajectory[n as usize].approx_decimal(20);
        let want = golden_root_decimal(n);
        if got != want {
            return Err(format!("6c: step {n} is {got}, expected {want}"));
        }
    }
    if !matches!(r.classification, Classification::TendingToOne { .. }) || !r.decreasing_verified {
        return Err(format!("6c: classified {:?}", r.classification));
    }
    Ok(format!(
        "{fixed} surds fixed; {checked} polynomials decrease with exact equality cases; golden orbit tends to 1 after {} steps within the envelope",
        r.trajectory.len() - 1
    ))
}

fn criterion7() -> Outcome {
    let (_, polys) = quartic_family(2).map_err(|e| e.to_string())?;
    let mut members = 0;
    for f in &polys {
        if f.is_irreducible().map_err(|e| e.to_string())? {
            let d = deg_of_height_power(f).map_err(|e| e.to_string())?;
            if d != 2 {
                return Err(format!("{f}: degree {d}, expected 2"));
            }
            members += 1;
        }
    }
    let d = deg_of_height_power(&IntPoly::from_i64s(&[-8, 0, 0, 0, 0, 1]))
        .map_err(|e| e.to_string())?;
    if d != 1 {
        return Err(format!("t^5 - 8: degree {d}, expected 1"));
    }
    // generic quartic with two roots outside the disk
    let g = IntPoly::from_i64s(&[2, 1, -9, 3, 1]);
    let d = deg_of_height_power(&g).map_err(|e| e.to_string())?;
    let m = mahler_direct(&g).map_err(|e| e.to_string())?;
    let mp = m.minpoly();
    let approx = mahler_f64(&g);
    let residual: f64 = mp.coeffs().iter().rev().fold(0.0, |acc, c| {
        acc * approx + num_traits::ToPrimitive::to_f64(c).unwrap()
    });
    let scale: f64 = mp
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| num_traits::ToPrimitive::to_f64(c).unwrap().abs() * approx.powi(i as i32))
        .sum();
    let irreducible = mp.is_irreducible().map_err(|e| e.to_string())?;
    if d != 6 || mp.degree() != 6 || !irreducible || residual.abs() > 1e-9 * scale {
        return Err(format!("{g}: degree {d}, minpoly of M {mp}"));
    }
    Ok(format!(
        "{members} quartic members give 2, t^5 - 8 gives 1, {g} gives 6 with minpoly of M {mp}"
    ))
}

fn csv_bytes(threads: usize) -> Result<String, String> {
    let opts = CensusOptions {
        threads: Some(threads),
        identify_sign: true,
    };
    let recs = census_mahler(1, 3, &real("4"), &opts).map_err(|e| e.to_string())?;
    let mut out = String::from("key_minpoly,key_root_index,key_approx,d,k,count,deg_Hd\n");
    for r in recs.iter().map(|r| r.to_row()) {
        out.push_str(&format!(
            "\"{}\",{},{},{},{},{},{}\n",
            r.key_minpoly, r.key_root_index, r.key_approx, r.d, r.k, r.count, r.deg_hd
        ));
    }
    Ok(out)
}

fn criterion8() -> Outcome {
    let one = csv_bytes(1)?;
    for t in [4, 8] {
        if csv_bytes(t)? != one {
            return Err(format!("output with {t} threads differs from 1 thread"));
        }
    }
    Ok(format!(
        "{} bytes identical for 1, 4 and 8 threads",
        one.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1", criterion1),
        ("2", criterion2),
        ("3", criterion3),
        ("4a", criterion4a),
        ("4b", criterion4b),
        ("4c", criterion4c),
        ("5", criterion5),
        ("6", criterion6),
        ("7", criterion7),
        ("8", criterion8),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(msg) => println!("criterion {name}: PASS ({:.1?}) {msg}", start.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({:.1?}) {msg}", start.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
