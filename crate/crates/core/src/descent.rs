//! Stack to coarse-space descent of boundary coefficients.
//!
//! A boundary divisor along which the coarse map ramifies to order `e` with
//! stack coefficient `a` gets coefficient `(e − 1 + a)/e` downstairs, and the
//! μ_e-invariant sections of `mK + ⌊ma⌋B` have pole order at most
//! `m + e⌊(⌊ma⌋ − m)/e⌋` along `B`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, floor, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamifiedBoundary {
    e: u64,
    #[serde(with = "rational::as_string")]
    a: Rational,
}

impl RamifiedBoundary {
    pub fn new(e: u64, a: Rational) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidArgument(
                "ramification order must be >= 1".into(),
            ));
        }
        if !rational::in_unit_interval(&a) {
            return Err(Error::InvalidArgument(format!(
                "boundary coefficient {} is outside [0, 1]",
                rational::format(&a)
            )));
        }
        Ok(RamifiedBoundary { e, a })
    }

    pub fn e(&self) -> u64 {
        self.e
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }
}

pub fn coarse_coefficient(b: &RamifiedBoundary) -> Rational {
    let e = int(b.e as i64);
    (&e - Rational::one() + &b.a) / e
}

fn floor_div(x: &BigInt, e: u64) -> BigInt {
    x.div_floor(&BigInt::from(e))
}

/// Checks `e⌊m(e−1+a)/e⌋ − m(e−1) = m + e⌊(⌊ma⌋−m)/e⌋` together with its reduced
/// form `⌊(ma−m)/e⌋ = ⌊(⌊ma⌋−m)/e⌋`.
pub fn floor_identity_check(m: u64, e: u64, a: &Rational) -> Result<bool> {
    let b = RamifiedBoundary::new(e, a.clone())?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let m_q = int(m as i64);
    let m_z = BigInt::from(m);
    let e_z = BigInt::from(e);
    let floor_ma = floor(&(&m_q * a));

    let lhs = &e_z * floor(&(&m_q * coarse_coefficient(&b))) - &m_z * (&e_z - 1);
    let rhs = &m_z + &e_z * floor_div(&(&floor_ma - &m_z), e);
    let reduced_lhs = floor(&((&m_q * a - &m_q) / int(e as i64)));
    let reduced_rhs = floor_div(&(&floor_ma - &m_z), e);
    Ok(lhs == rhs && reduced_lhs == reduced_rhs)
}

/// Pole bound `m + e⌊(⌊ma⌋ − m)/e⌋` for μ_e-invariant sections along `B`.
pub fn invariant_vanishing_order(m: u64, e: u64, a: &Rational) -> Result<BigInt> {
    RamifiedBoundary::new(e, a.clone())?;
    if m == 0 {
        return Err(Error::InvalidArgument("m must be >= 1".into()));
    }
    let m_z = BigInt::from(m);
    let floor_ma = floor(&(int(m as i64) * a));
    let order = &m_z + BigInt::from(e) * floor_div(&(&floor_ma - &m_z), e);
    debug_assert!(order <= floor_ma);
    debug_assert!((&order - &m_z).mod_floor(&BigInt::from(e)).is_zero());
    Ok(order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCase {
    pub m: u64,
    pub e: u64,
    #[serde(with = "rational::as_string")]
    pub a: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub m_max: u64,
    pub e_max: u64,
    pub q_max: u64,
    pub cases: u64,
    pub failures: Vec<SweepCase>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Every `a = p/q` with `1 <= q <= q_max`, `0 <= p <= q`, unreduced pairs included.
pub fn sweep_coefficients(q_max: u64) -> Vec<Rational> {
    (1..=q_max)
        .flat_map(|q| (0..=q).map(move |p| Rational::new(BigInt::from(p), BigInt::from(q))))
        .collect()
}

/// Exhaustive floor-identity sweep over `m <= m_max`, `e <= e_max`, `q <= q_max`.
pub fn floor_identity_sweep(m_max: u64, e_max: u64, q_max: u64) -> SweepSummary {
    let coeffs = sweep_coefficients(q_max);
    let mut failures: Vec<SweepCase> = (1..=m_max)
        .into_par_iter()
        .flat_map_iter(|m| {
            let coeffs = &coeffs;
            (1..=e_max).flat_map(move |e| {
                coeffs.iter().filter_map(move |a| {
                    let ok = floor_identity_check(m, e, a).expect("sweep inputs are valid");
                    (!ok).then(|| SweepCase { m, e, a: a.clone() })
                })
            })
        })
        .collect();
    failures.sort_by(|x, y| (x.m, x.e, &x.a).cmp(&(y.m, y.e, &y.a)));
    SweepSummary {
        m_max,
        e_max,
        q_max,
        cases: m_max * e_max * coeffs.len() as u64,
        failures,
    }
}
