//! The height map `x -> H(x)` on real algebraic numbers and its orbits.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algnum::RealAlgebraic;
use crate::error::{Error, Result};
use crate::mahler::{height_rational, mahler_direct};
use crate::Rational;

/// Orbits stop once a minimal polynomial would exceed this degree.
pub const MAX_ORBIT_DEGREE: usize = 64;

/// The envelope check runs only while `deg x_1` is at most this.
const ENVELOPE_MAX_DEGREE: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Classification {
    /// `x_n = a^b` for every `n >= settled_at`.
    FixedSurd {
        a: BigInt,
        b: Rational,
        settled_at: usize,
    },
    /// The last value lies within `one_eps` of 1. Numerically indicated only.
    TendingToOne {
        interval: (Rational, Rational),
    },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub seed: RealAlgebraic,
    pub trajectory: Vec<RealAlgebraic>,
    pub classification: Classification,
    /// `x_n >= x_{n+1}` held at every recorded step `n >= 1`.
    pub decreasing_verified: bool,
}

/// `H(x)`, which depends only on the minimal polynomial of `x`.
pub fn height_of(x: &RealAlgebraic) -> Result<RealAlgebraic> {
    if let Some(r) = x.as_rational() {
        return Ok(RealAlgebraic::from_integer(height_rational(r)));
    }
    let f = x.minpoly();
    mahler_direct(f)?.nth_root_positive(f.degree())
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x <= x1^((1 - 1/d!)^(n-1))`, checked in logarithms with a small slack.
fn within_envelope(x: &RealAlgebraic, x1: &RealAlgebraic, d: usize, n: usize) -> bool {
    let f = factorial(d).to_f64().unwrap_or(f64::INFINITY);
    let bound = (1.0 - 1.0 / f).powi(n as i32 - 1) * x1.to_f64().ln();
    x.to_f64().ln() <= bound * (1.0 + 1e-9) + 1e-12
}

fn close_to_one(x: &RealAlgebraic, eps: &Rational) -> Result<Option<(Rational, Rational)>> {
    let (lo, hi) = x.refine(&(eps / BigInt::from(8)))?;
    let top = Rational::one() + eps;
    Ok((hi <= top).then_some((lo, hi)))
}

/// Iterate the height map from `seed` for at most `max_steps` steps.
pub fn iterate(seed: &RealAlgebraic, max_steps: usize, one_eps: &Rational) -> Result<OrbitReport> {
    if max_steps == 0 {
        return Err(Error::InvalidArgument(
            "max_steps must be at least 1".into(),
        ));
    }
    if !one_eps.is_positive() {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let mut traj = vec![seed.clone()];
    let mut decreasing = true;
    let settle = |traj: &mut Vec<RealAlgebraic>, n: usize| -> Result<Option<Classification>> {
        let x = &traj[n];
        if x.signum() != Ordering::Greater {
            return Ok(None);
        }
        let Some((a, b)) = x.is_natural_power()? else {
            return Ok(None);
        };
        let next = height_of(x)?;
        if next != *x {
            return Err(Error::InvariantViolation(format!(
                "surd {x} is not fixed by the height"
            )));
        }
        traj.push(next);
        Ok(Some(Classification::FixedSurd {
            a,
            b,
            settled_at: n,
        }))
    };
    if let Some(c) = settle(&mut traj, 0)? {
        return Ok(OrbitReport {
            seed: seed.clone(),
            trajectory: traj,
            classification: c,
            decreasing_verified: true,
        });
    }
    let mut classification = Classification::BudgetExhausted;
    for n in 1..=max_steps {
        let cur = &traj[n - 1];
        if cur.degree() > MAX_ORBIT_DEGREE {
            break;
        }
        let m_degree = mahler_direct(cur.minpoly())?.degree();
        if !(factorial(cur.degree()) % m_degree).is_zero() {
            return Err(Error::InvariantViolation(format!(
                "degree {m_degree} of the measure of {cur} does not divide {}!",
                cur.degree()
            )));
        }
        let next = height_of(cur)?;
        if n >= 2 && next.compare(&traj[n - 1]) == Ordering::Greater {
            decreasing = false;
        }
        if n >= 2
            && traj[1].degree() <= ENVELOPE_MAX_DEGREE
            && !within_envelope(&next, &traj[1], traj[1].degree(), n)
        {
            return Err(Error::InvariantViolation(format!(
                "step {n} leaves the contraction envelope"
            )));
        }
        if next.degree() > MAX_ORBIT_DEGREE {
            break;
        }
        traj.push(next);
        if let Some(c) = settle(&mut traj, n)? {
            classification = c;
            break;
        }
        if let Some(interval) = close_to_one(&traj[n], one_eps)? {
            classification = Classification::TendingToOne { interval };
            break;
        }
    }
    Ok(OrbitReport {
        seed: seed.clone(),
        trajectory: traj,
        classification,
        decreasing_verified: decreasing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::surd;
    use crate::poly::sturm::rational;
    use crate::poly::IntPoly;

    fn phi() -> RealAlgebraic {
        RealAlgebraic::from_root(
            &IntPoly::from_i64s(&[-1, -1, 1]),
            &rational(1, 1),
            &rational(2, 1),
        )
        .unwrap()
    }

    #[test]
    fn height_examples() {
        let h = height_of(&phi()).unwrap();
        assert_eq!(h.minpoly(), &IntPoly::from_i64s(&[-1, 0, -1, 0, 1]));
        let s = surd(2, 3, 5).unwrap();
        assert_eq!(height_of(&s).unwrap(), s);
        assert_eq!(
            height_of(&RealAlgebraic::zero()).unwrap(),
            RealAlgebraic::one()
        );
        assert_eq!(
            height_of(&RealAlgebraic::from_rational(rational(-3, 7))).unwrap(),
            RealAlgebraic::from_integer(7)
        );
    }

    #[test]
    fn surd_seeds_are_fixed() {
        let r = iterate(&surd(2, 3, 5).unwrap(), 4, &rational(1, 1000)).unwrap();
        assert_eq!(
            r.classification,
            Classification::FixedSurd {
                a: BigInt::from(2),
                b: rational(3, 5),
                settled_at: 0
            }
        );
        assert_eq!(r.trajectory.len(), 2);
        let r = iterate(&RealAlgebraic::from_integer(7), 4, &rational(1, 1000)).unwrap();
        assert!(matches!(
            r.classification,
            Classification::FixedSurd { settled_at: 0, .. }
        ));
        // -2 -> 2
        let r = iterate(&RealAlgebraic::from_integer(-2), 4, &rational(1, 1000)).unwrap();
        assert!(matches!(
            r.classification,
            Classification::FixedSurd { settled_at: 1, .. }
        ));
    }

    #[test]
    fn golden_orbit() {
        let r = iterate(&phi(), 8, &rational(1, 50)).unwrap();
        assert!(matches!(
            r.classification,
            Classification::TendingToOne { .. }
        ));
        assert!(r.decreasing_verified);
        assert_eq!(
            r.trajectory[1].minpoly(),
            &IntPoly::from_i64s(&[-1, 0, -1, 0, 1])
        );
        assert_eq!(r.trajectory.len(), 6);
        // tighter tolerance runs into the degree guard
        let r = iterate(&phi(), 12, &rational(1, 1000)).unwrap();
        assert_eq!(r.classification, Classification::BudgetExhausted);
    }
}
