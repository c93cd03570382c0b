//! Wall crossings of the log canonical families: ray pairings, the δ_1
//! discrepancy, critical α values and the loci contracted at them.
//!
//! Every F-curve intersection of `K + αδ` (either model) is affine in α, so
//! walls are found by solving linear equations over ℚ.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::divisor::{log_canonical_divisor, DivisorClass, Genus, Model};
use crate::error::{Error, Result};
use crate::fcurves::{enumerate_fcurves, intersect, FCurve};
use crate::rational::{self, frac, int, Rational};

/// Intersection numbers of λ and δ_i with the elliptic-tail ray `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RayPairing {
    #[serde(with = "rational::as_string")]
    pub lambda_dot_r: Rational,
    #[serde(with = "rational::as_string")]
    pub delta0_dot_r: Rational,
    #[serde(with = "rational::as_string")]
    pub delta1_dot_r: Rational,
    #[serde(with = "rational::as_string")]
    pub deltai_dot_r: Rational,
}

impl RayPairing {
    pub fn elliptic_tail() -> Self {
        RayPairing {
            lambda_dot_r: frac(1, 12),
            delta0_dot_r: int(1),
            delta1_dot_r: frac(-1, 12),
            deltai_dot_r: int(0),
        }
    }
}

/// `D·R = a/12 − b_0 + b_1/12`.
pub fn pair_with_ray(d: &DivisorClass) -> Rational {
    let r = RayPairing::elliptic_tail();
    let b = d.delta_coeffs();
    let rest: Rational = b.iter().skip(2).map(|bi| bi * &r.deltai_dot_r).sum();
    d.lambda_coeff() * &r.lambda_dot_r - &b[0] * &r.delta0_dot_r - &b[1] * &r.delta1_dot_r - rest
}

/// The coefficient `c` in `K + αδ = T^*(K_ps + αδ^ps) + c·δ_1`, namely `9 − 11α`.
pub fn discrepancy_coefficient(alpha: &Rational) -> Result<Rational> {
    if !rational::in_unit_interval(alpha) {
        return Err(Error::AlphaOutOfRange(rational::format(alpha)));
    }
    let c = int(9) - int(11) * alpha;

    // The pullback term is orthogonal to R and δ_1·R = −1/12, so −c/12 = (K + αδ)·R.
    // Genus only matters for the shape of the class; any g >= 3 gives the same pairing.
    let g = Genus::new(3)?;
    let stack = log_canonical_divisor(g, alpha, Model::MgStack)?;
    let pullback = log_canonical_divisor(g, alpha, Model::PsPullback)?;
    let solved = int(-12) * pair_with_ray(&stack);
    assert_eq!(solved, c, "discrepancy disagrees with the ray pairing");
    assert!(pair_with_ray(&pullback).is_zero());
    // adding c·δ_1 lowers b_1 by c
    assert_eq!(&pullback.delta_coeffs()[1] - &c, stack.delta_coeffs()[1]);
    Ok(c)
}

/// `constant + slope·α`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Affine {
    #[serde(with = "rational::as_string")]
    pub constant: Rational,
    #[serde(with = "rational::as_string")]
    pub slope: Rational,
}

impl Affine {
    pub fn eval(&self, alpha: &Rational) -> Rational {
        &self.constant + &self.slope * alpha
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn root(&self) -> Option<Rational> {
        (!self.slope.is_zero()).then(|| -&self.constant / &self.slope)
    }
}

fn require_intersectable(model: Model) -> Result<()> {
    if model == Model::CoarseDagger {
        return Err(Error::InvalidArgument(
            "the coarse-space divisor is not intersected with curves; use mg or ps".into(),
        ));
    }
    Ok(())
}

/// Intersection of the model's `K + αδ` with `f`, as an affine function of α.
pub fn affine_intersection(g: Genus, model: Model, f: &FCurve) -> Result<Affine> {
    require_intersectable(model)?;
    let at0 = intersect(&log_canonical_divisor(g, &int(0), model)?, f)?;
    let at1 = intersect(&log_canonical_divisor(g, &int(1), model)?, f)?;
    Ok(Affine {
        slope: at1 - &at0,
        constant: at0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Wall {
    #[serde(with = "rational::as_string")]
    pub alpha: Rational,
    /// Only the first wall below 1 is backed by the nefness argument.
    pub certified: bool,
    /// Every F-curve whose intersection vanishes at this α, identically zero
    /// rows included.
    pub contracted: Vec<FCurve>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseReport {
    pub genus: Genus,
    pub model: Model,
    /// Sorted by decreasing α.
    pub walls: Vec<Wall>,
    /// Rows that vanish for every α (row A for the pullback model).
    pub identically_zero: Vec<FCurve>,
}

impl PhaseReport {
    pub fn critical_alphas(&self) -> Vec<Rational> {
        self.walls.iter().map(|w| w.alpha.clone()).collect()
    }

    pub fn wall(&self, alpha: &Rational) -> Option<&Wall> {
        self.walls.iter().find(|w| &w.alpha == alpha)
    }
}

/// Critical values in `[0, 1]`: roots of F-curve intersections that are
/// positive just above the root, i.e. affine rows with positive slope.
pub fn critical_alphas(g: Genus, model: Model) -> Result<PhaseReport> {
    require_intersectable(model)?;
    let rows: Vec<(FCurve, Affine)> = enumerate_fcurves(g)
        .into_iter()
        .map(|f| affine_intersection(g, model, &f).map(|a| (f, a)))
        .collect::<Result<_>>()?;

    let mut alphas: Vec<Rational> = rows
        .iter()
        .filter(|(_, a)| a.slope.is_positive())
        .filter_map(|(_, a)| a.root())
        .filter(rational::in_unit_interval)
        .collect();
    alphas.sort_by(|x, y| y.cmp(x));
    alphas.dedup();

    let walls = alphas
        .into_iter()
        .enumerate()
        .map(|(k, alpha)| {
            let contracted = rows
                .iter()
                .filter(|(_, a)| a.eval(&alpha).is_zero())
                .map(|(f, _)| *f)
                .collect();
            Wall {
                alpha,
                certified: k == 0,
                contracted,
            }
        })
        .collect();
    let identically_zero = rows
        .iter()
        .filter(|(_, a)| a.is_zero())
        .map(|(f, _)| *f)
        .collect();
    Ok(PhaseReport {
        genus: g,
        model,
        walls,
        identically_zero,
    })
}

/// Signs of every F-curve row at the walls, at the midpoints between them and
/// at the endpoints 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTable {
    pub samples: Vec<Rational>,
    pub rows: Vec<(FCurve, Affine, Vec<char>)>,
}

pub fn sign_table(g: Genus, model: Model) -> Result<SignTable> {
    let report = critical_alphas(g, model)?;
    let mut points = vec![int(0), int(1)];
    points.extend(report.critical_alphas());
    points.sort();
    points.dedup();
    let mut samples = Vec::new();
    for w in points.windows(2) {
        samples.push(w[0].clone());
        samples.push((&w[0] + &w[1]) / int(2));
    }
    samples.push(points.last().expect("non-empty").clone());

    let rows = enumerate_fcurves(g)
        .into_iter()
        .map(|f| {
            let a = affine_intersection(g, model, &f)?;
            let signs = samples
                .iter()
                .map(|x| {
                    let v = a.eval(x);
                    if v.is_positive() {
                        '+'
                    } else if v.is_negative() {
                        '-'
                    } else {
                        '0'
                    }
                })
                .collect();
            Ok((f, a, signs))
        })
        .collect::<Result<_>>()?;
    Ok(SignTable { samples, rows })
}

impl SignTable {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("family\tparams\tconstant\tslope");
        for x in &self.samples {
            out.push('\t');
            out.push_str(&rational::format(x));
        }
        out.push('\n');
        for (f, a, signs) in &self.rows {
            let params: Vec<String> = f.params().iter().map(u32::to_string).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}",
                f.family(),
                params.join(","),
                rational::format(&a.constant),
                rational::format(&a.slope)
            ));
            for s in signs {
                out.push('\t');
                out.push(*s);
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Locus {
    pub name: String,
    /// Genera of the components, in the order written.
    pub component_genera: Vec<u32>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedLoci {
    pub genus: Genus,
    /// Absent for g = 3, where the second component would have genus 1.
    pub t0: Option<Locus>,
    pub ti: Vec<Locus>,
    pub codimension: u32,
}

/// The loci contracted at α = 7/10 besides Δ_1.
pub fn contracted_loci_description(g: Genus) -> ContractedLoci {
    let gg = g.get();
    let t0 = (gg >= 4).then(|| Locus {
        name: "T_0".into(),
        component_genera: vec![1, gg - 2],
        description: format!(
            "C_1 ∪_{{p,q}} C_2 with g(C_1) = 1, g(C_2) = {}: two-pointed elliptic tails (elliptic bridges), from stratum D(1)",
            gg - 2
        ),
    });
    let ti = (1..=gg - 2)
        .map(|i| Locus {
            name: format!("T_{i}"),
            component_genera: vec![i, 1, gg - 1 - i],
            description: format!(
                "C_1 ∪_p C_2 ∪_q C_3 with g(C_1) = {i}, g(C_2) = 1, g(C_3) = {}, from stratum E with i+j = {}",
                gg - 1 - i,
                gg - 1
            ),
        })
        .collect();
    ContractedLoci {
        genus: g,
        t0,
        ti,
        codimension: 2,
    }
}

impl fmt::Display for ContractedLoci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Loci contracted at alpha = 7/10 in genus {} (besides Delta_1):",
            self.genus
        )?;
        match &self.t0 {
            Some(t0) => writeln!(f, "- {}: {}", t0.name, t0.description)?,
            None => writeln!(f, "- T_0: not defined for genus 3")?,
        }
        for t in &self.ti {
            writeln!(f, "- {}: {}", t.name, t.description)?;
        }
        writeln!(
            f,
            "These loci have codimension {}; the contraction at 7/10 is small.",
            self.codimension
        )
    }
}
