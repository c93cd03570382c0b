//! Dimension bookkeeping for the limit linear series `V_n` on a stable curve
//! with `r` elliptic tails attached to a core `D` of genus `g − r` at points
//! `p_1..p_r`.
//!
//! For `a >= 2`, `V_n(−aΣp_j) = Γ(D, ω_D^n((2n−a)Σp_j))`, whose dimension is
//! computed by Riemann–Roch whenever the degree exceeds `2g_D − 2`.

use serde::Serialize;

use crate::divisor::Genus;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TailConfiguration {
    pub g: u32,
    pub r: u32,
    pub g_d: u32,
}

impl TailConfiguration {
    pub fn new(g: u32, r: u32) -> Result<Self> {
        Genus::new(g)?;
        let g_d = g.checked_sub(r).ok_or_else(|| {
            Error::InvalidArgument(format!("{r} elliptic tails exceed genus {g}"))
        })?;
        if g_d == 0 && r < 3 {
            return Err(Error::InvalidArgument(
                "a rational core needs at least 3 tails".into(),
            ));
        }
        Ok(TailConfiguration { g, r, g_d })
    }
}

/// Rank of `π_*L^n`: `g` for `n = 1`, `(2n−1)(g−1)` otherwise.
pub fn rank_kn(g: Genus, n: u32) -> Result<u64> {
    let g = g.get() as u64;
    match n {
        0 => Err(Error::InvalidArgument("n must be >= 1".into())),
        1 => Ok(g),
        n => Ok((2 * n as u64 - 1) * (g - 1)),
    }
}

/// `h^0(D, ω_D^n((2n−a)Σp_j))` for `2 <= a <= 2n−1`.
pub fn h0_twisted(g_d: u32, r: u32, n: u32, a: u32) -> Result<u64> {
    if n < 2 || !(2..=2 * n - 1).contains(&a) {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and 2 <= a <= 2n-1, got n={n}, a={a}"
        )));
    }
    let (g_d, r, n, a) = (g_d as i64, r as i64, n as i64, a as i64);
    let degree = 2 * n * (g_d - 1) + (2 * n - a) * r;
    if degree < 0 {
        return Err(Error::NegativeDegree(degree));
    }
    let bound = 2 * g_d - 2;
    if degree <= bound {
        return Err(Error::Regime { degree, bound });
    }
    Ok((degree - g_d + 1) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    pub config: TailConfiguration,
    pub n: u32,
    /// `dim V_n(−aΣp_j)` for `a = 0..=2n−2`; `None` where Riemann–Roch does not apply.
    pub dims: Vec<Option<u64>>,
    pub regime_ok: Vec<bool>,
}

impl DimensionProfile {
    pub fn all_in_regime(&self) -> bool {
        self.regime_ok.iter().all(|&ok| ok)
    }
}

pub fn dimension_profile(cfg: &TailConfiguration, n: u32) -> Result<DimensionProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument("profiles need n >= 2".into()));
    }
    let k_n = rank_kn(Genus::new(cfg.g)?, n)?;
    let twisted = |a| match h0_twisted(cfg.g_d, cfg.r, n, a) {
        Ok(d) => Ok(Some(d)),
        Err(Error::Regime { .. } | Error::NegativeDegree(_)) => Ok(None),
        Err(e) => Err(e),
    };
    let at_two = twisted(2)?;
    let mut dims = vec![Some(k_n), at_two, at_two];
    for a in 3..=2 * n - 2 {
        dims.push(twisted(a)?);
    }
    let regime_ok = dims.iter().map(Option::is_some).collect();
    Ok(DimensionProfile {
        config: *cfg,
        n,
        dims,
        regime_ok,
    })
}

/// `h^0(ω_D^n((2n−2)Σp_j)) + r = k_n`: the σ_j^n fill out `V_n`.
pub fn decomposition_identity(g: u32, r: u32, n: u32) -> Result<bool> {
    let cfg = TailConfiguration::new(g, r)?;
    let k_n = rank_kn(Genus::new(g)?, n)?;
    if n == 1 {
        // V_1 = Γ(ω_D) + ⟨σ_1..σ_r⟩
        return Ok(cfg.g_d as u64 + r as u64 == k_n);
    }
    Ok(h0_twisted(cfg.g_d, r, n, 2)? + r as u64 == k_n)
}

/// Leading vanishing orders of `V_n` at the attachment points, as far as the
/// profile certifies them (at most three).
pub fn vanishing_sequence_head(cfg: &TailConfiguration, n: u32) -> Result<Vec<u32>> {
    if cfg.r == 0 {
        return Ok(vec![]);
    }
    let profile = dimension_profile(cfg, n)?;
    let mut values: Vec<u64> = Vec::with_capacity(profile.dims.len() + 1);
    for (a, d) in profile.dims.iter().enumerate() {
        values.push(d.ok_or_else(|| regime_error(cfg, n, a as u32))?);
    }
    values.push(h0_twisted(cfg.g_d, cfg.r, n, 2 * n - 1)?);
    Ok(values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(a, _)| a as u32)
        .take(3)
        .collect())
}

fn regime_error(cfg: &TailConfiguration, n: u32, a: u32) -> Error {
    let degree = 2 * n as i64 * (cfg.g_d as i64 - 1) + (2 * n as i64 - a as i64) * cfg.r as i64;
    Error::Regime {
        degree,
        bound: 2 * cfg.g_d as i64 - 2,
    }
}
