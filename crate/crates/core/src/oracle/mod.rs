//! Brute-force cross-checks of the main modules against independently
//! written evaluators.

pub mod graphs;
pub mod naive;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::descent;
use crate::divisor::Genus;
use crate::error::{Error, Result};
use crate::fcurves::enumerate_fcurves;
use crate::graph::{is_pseudostable, isomorphic};
use crate::linear_series::{h0_twisted, rank_kn};
use crate::rational::Rational;

use graphs::SmallGraph;

/// One comparison bucket. When every case agrees, `main` and `oracle` hold
/// the same summary; otherwise they hold the values at the first (smallest)
/// disagreeing case and `input` names that case.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub operation: String,
    pub input: Value,
    pub main: Value,
    pub oracle: Value,
    pub agree: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Fcurves,
    Pseudostability,
    Isomorphism,
    RiemannRoch,
    Floor,
}

impl Scope {
    pub const ALL: [Scope; 5] = [
        Scope::Fcurves,
        Scope::Pseudostability,
        Scope::Isomorphism,
        Scope::RiemannRoch,
        Scope::Floor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::Fcurves => "fcurves",
            Scope::Pseudostability => "pseudostability",
            Scope::Isomorphism => "isomorphism",
            Scope::RiemannRoch => "riemann-roch",
            Scope::Floor => "floor",
        }
    }

    /// Comma-separated scope names, or `all`.
    pub fn parse_list(s: &str) -> Result<Vec<Scope>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim) {
            if part == "all" {
                out.extend(Scope::ALL);
                continue;
            }
            let scope = Scope::ALL
                .into_iter()
                .find(|x| x.name() == part)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown oracle scope '{part}'")))?;
            out.push(scope);
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Size caps for each oracle scope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub fcurves_g_max: u32,
    pub graph_vertices: u32,
    pub graph_genus: u32,
    pub iso_genus: u32,
    pub rr_g_max: u32,
    pub rr_n_max: u32,
    pub floor_m_max: u64,
    pub floor_e_max: u64,
    pub floor_q_max: u64,
}

impl Bounds {
    pub fn default_bounds() -> Self {
        Bounds {
            fcurves_g_max: 30,
            graph_vertices: 5,
            graph_genus: 5,
            iso_genus: 4,
            rr_g_max: 30,
            rr_n_max: 6,
            floor_m_max: 200,
            floor_e_max: 20,
            floor_q_max: 12,
        }
    }

    pub fn quick() -> Self {
        Bounds {
            fcurves_g_max: 12,
            graph_vertices: 4,
            graph_genus: 4,
            iso_genus: 3,
            rr_g_max: 10,
            rr_n_max: 4,
            floor_m_max: 40,
            floor_e_max: 8,
            floor_q_max: 6,
        }
    }

    /// Largest accepted value of every field.
    pub fn caps() -> Self {
        Bounds {
            fcurves_g_max: 100,
            graph_vertices: 6,
            graph_genus: 6,
            iso_genus: 5,
            rr_g_max: 100,
            rr_n_max: 12,
            floor_m_max: 1000,
            floor_e_max: 50,
            floor_q_max: 30,
        }
    }

    fn fields(&self) -> [(&'static str, u64); 9] {
        [
            ("fcurves_g_max", self.fcurves_g_max as u64),
            ("graph_vertices", self.graph_vertices as u64),
            ("graph_genus", self.graph_genus as u64),
            ("iso_genus", self.iso_genus as u64),
            ("rr_g_max", self.rr_g_max as u64),
            ("rr_n_max", self.rr_n_max as u64),
            ("floor_m_max", self.floor_m_max),
            ("floor_e_max", self.floor_e_max),
            ("floor_q_max", self.floor_q_max),
        ]
    }

    fn set(&mut self, key: &str, value: u64) -> Result<()> {
        let small =
            || u32::try_from(value).map_err(|_| Error::BoundsExceeded(format!("{key}={value}")));
        match key {
            "fcurves_g_max" => self.fcurves_g_max = small()?,
            "graph_vertices" => self.graph_vertices = small()?,
            "graph_genus" => self.graph_genus = small()?,
            "iso_genus" => self.iso_genus = small()?,
            "rr_g_max" => self.rr_g_max = small()?,
            "rr_n_max" => self.rr_n_max = small()?,
            "floor_m_max" => self.floor_m_max = value,
            "floor_e_max" => self.floor_e_max = value,
            "floor_q_max" => self.floor_q_max = value,
            _ => return Err(Error::InvalidArgument(format!("unknown bound '{key}'"))),
        }
        Ok(())
    }

    pub fn check(&self) -> Result<()> {
        for ((key, value), (_, cap)) in self.fields().into_iter().zip(Bounds::caps().fields()) {
            if value > cap {
                return Err(Error::BoundsExceeded(format!(
                    "{key}={value} exceeds cap {cap}"
                )));
            }
        }
        Ok(())
    }
}

impl FromStr for Bounds {
    type Err = Error;

    /// `default`, `quick`, or either followed by `,key=value` overrides; a bare
    /// list of overrides starts from `default`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .peekable();
        let mut bounds = match parts.peek() {
            Some(&"quick") => {
                parts.next();
                Bounds::quick()
            }
            Some(&"default") => {
                parts.next();
                Bounds::default_bounds()
            }
            _ => Bounds::default_bounds(),
        };
        for part in parts {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("expected key=value, got '{part}'"))
            })?;
            let value: u64 = value
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value in '{part}'")))?;
            bounds.set(key, value)?;
        }
        bounds.check()?;
        Ok(bounds)
    }
}

/// Fold a stream of cases, ordered from small to large, into one report.
fn bucket<I>(operation: &str, summary_input: Value, cases: I) -> OracleReport
where
    I: IntoIterator<Item = (Value, Value, Value)>,
{
    let mut count = 0u64;
    for (input, main, oracle) in cases {
        if main != oracle {
            return OracleReport {
                operation: operation.into(),
                input,
                main,
                oracle,
                agree: false,
            };
        }
        count += 1;
    }
    let summary = json!({ "cases": count });
    OracleReport {
        operation: operation.into(),
        input: summary_input,
        main: summary.clone(),
        oracle: summary,
        agree: true,
    }
}

fn fcurve_reports(bounds: &Bounds) -> Vec<OracleReport> {
    (3..=bounds.fcurves_g_max)
        .into_par_iter()
        .map(|g| {
            let main: Vec<String> = enumerate_fcurves(Genus::new(g).expect("g >= 3"))
                .iter()
                .map(|f| f.to_string())
                .collect();
            let oracle: Vec<String> = naive::fcurves(g)
                .into_iter()
                .map(|(family, params)| {
                    if params.is_empty() {
                        family.to_string()
                    } else {
                        let p: Vec<String> = params.iter().map(u32::to_string).collect();
                        format!("{family}({})", p.join(","))
                    }
                })
                .collect();
            let agree = main == oracle;
            OracleReport {
                operation: "enumerate_fcurves".into(),
                input: json!({ "g": g }),
                main: json!(main),
                oracle: json!(oracle),
                agree,
            }
        })
        .collect()
}

fn pseudostability_reports(bounds: &Bounds) -> Vec<OracleReport> {
    let skeletons = graphs::skeletons(bounds.graph_vertices as usize, bounds.graph_genus);
    let mut jobs: Vec<(usize, u32)> = Vec::new();
    for n in 1..=bounds.graph_vertices as usize {
        for genus in 0..=bounds.graph_genus {
            jobs.push((n, genus));
        }
    }
    jobs.into_par_iter()
        .map(|(n, genus)| {
            let cases = skeletons
                .iter()
                .filter(|s| s.len() == n && s.genus() <= genus as i64)
                .flat_map(|s| {
                    graphs::labelings(s, genus - s.genus() as u32)
                        .into_iter()
                        .map(|g| {
                            let curve = g.to_curve_graph();
                            let main = is_pseudostable(&curve).holds;
                            let oracle = graphs::pseudostable_by_subsets(&g);
                            (
                                serde_json::to_value(&curve).expect("graph serializes"),
                                json!(main),
                                json!(oracle),
                            )
                        })
                });
            bucket(
                "is_pseudostable",
                json!({ "vertices": n, "genus": genus }),
                cases,
            )
        })
        .collect()
}

fn isomorphism_reports(bounds: &Bounds) -> Vec<OracleReport> {
    (3..=bounds.iso_genus)
        .map(|genus| {
            let all = graphs::stable_graphs(genus, 8);
            let keys: Vec<Vec<u32>> = all.iter().map(SmallGraph::canonical_key).collect();
            let curves: Vec<_> = all.iter().map(SmallGraph::to_curve_graph).collect();
            let reversed: Vec<_> = all.iter().map(|g| reverse(g).to_curve_graph()).collect();
            let mut pairs = Vec::new();
            for i in 0..all.len() {
                pairs.push((i, usize::MAX));
                for j in i + 1..all.len() {
                    if all[i].len() == all[j].len() && all[i].edge_count() == all[j].edge_count() {
                        pairs.push((i, j));
                    }
                }
            }
            let results: Vec<_> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let (other, key_equal) = if j == usize::MAX {
                        (&reversed[i], true)
                    } else {
                        (&curves[j], keys[i] == keys[j])
                    };
                    let main = isomorphic(&curves[i], other);
                    let input = json!([curves[i], other]);
                    (input, json!(main), json!(key_equal))
                })
                .collect();
            bucket(
                "isomorphic",
                json!({ "genus": genus, "graphs": all.len() }),
                results,
            )
        })
        .collect()
}

/// The same graph with its vertex order reversed.
fn reverse(g: &SmallGraph) -> SmallGraph {
    let n = g.len();
    let at = |v: usize| n - 1 - v;
    SmallGraph {
        h: (0..n).map(|v| g.h[at(v)]).collect(),
        c: (0..n).map(|v| g.c[at(v)]).collect(),
        mult: (0..n)
            .map(|i| (0..n).map(|j| g.mult[at(i)][at(j)]).collect())
            .collect(),
    }
}

fn riemann_roch_reports(bounds: &Bounds) -> Vec<OracleReport> {
    let mut out = Vec::new();
    let ranks = (3..=bounds.rr_g_max).flat_map(|g| {
        (1..=bounds.rr_n_max).map(move |n| {
            let main = rank_kn(Genus::new(g).expect("g >= 3"), n).ok();
            let oracle = naive::pluricanonical_rank(g as i64, n as i64);
            (json!({ "g": g, "n": n }), json!(main), json!(oracle))
        })
    });
    out.push(bucket(
        "rank_kn",
        json!({ "g_max": bounds.rr_g_max, "n_max": bounds.rr_n_max }),
        ranks,
    ));

    let sections = (3..=bounds.rr_g_max).flat_map(|g| {
        (0..=g).flat_map(move |r| {
            (2..=bounds.rr_n_max).flat_map(move |n| {
                (2..=2 * n - 1).map(move |a| {
                    let g_d = g - r;
                    let main = h0_twisted(g_d, r, n, a).ok();
                    let oracle = naive::twisted_sections(g_d as i64, r as i64, n as i64, a as i64);
                    (
                        json!({ "g_d": g_d, "r": r, "n": n, "a": a }),
                        json!(main),
                        json!(oracle),
                    )
                })
            })
        })
    });
    out.push(bucket(
        "h0_twisted",
        json!({ "g_max": bounds.rr_g_max, "n_max": bounds.rr_n_max }),
        sections,
    ));
    out
}

fn floor_reports(bounds: &Bounds) -> Vec<OracleReport> {
    let (m_max, q_max) = (bounds.floor_m_max, bounds.floor_q_max);
    (1..=bounds.floor_e_max)
        .into_par_iter()
        .map(|e| {
            let cases = (1..=m_max).flat_map(move |m| {
                (1..=q_max).flat_map(move |q| {
                    (0..=q).map(move |p| {
                        let a = Rational::new(BigInt::from(p), BigInt::from(q));
                        let main_holds =
                            descent::floor_identity_check(m, e, &a).expect("valid inputs");
                        let main_order =
                            descent::invariant_vanishing_order(m, e, &a).expect("valid inputs");
                        let (full, reduced, order) =
                            naive::floor_identity(m as i128, e as i128, p as i128, q as i128);
                        let input = json!({ "m": m, "e": e, "a": format!("{p}/{q}") });
                        (
                            input,
                            json!([main_holds, main_order.to_string()]),
                            json!([full && reduced, order.to_string()]),
                        )
                    })
                })
            });
            bucket(
                "floor_identity",
                json!({ "e": e, "m_max": m_max, "q_max": q_max }),
                cases,
            )
        })
        .collect()
}

/// Run the selected oracle comparisons. Reports are grouped by scope in the
/// order given by [`Scope::ALL`].
pub fn run_oracles(scopes: &[Scope], bounds: &Bounds) -> Result<Vec<OracleReport>> {
    bounds.check()?;
    let mut out = Vec::new();
    for scope in Scope::ALL {
        if !scopes.contains(&scope) {
            continue;
        }
        out.extend(match scope {
            Scope::Fcurves => fcurve_reports(bounds),
            Scope::Pseudostability => pseudostability_reports(bounds),
            Scope::Isomorphism => isomorphism_reports(bounds),
            Scope::RiemannRoch => riemann_roch_reports(bounds),
            Scope::Floor => floor_reports(bounds),
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleSummary {
    pub bounds: Bounds,
    pub all_agree: bool,
    pub by_operation: BTreeMap<String, (usize, usize)>,
    pub reports: Vec<OracleReport>,
}

/// Reports with a per-operation `(agreeing, total)` tally.
pub fn summarize(bounds: Bounds, reports: Vec<OracleReport>) -> OracleSummary {
    let mut by_operation: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for r in &reports {
        let entry = by_operation.entry(r.operation.clone()).or_default();
        entry.0 += r.agree as usize;
        entry.1 += 1;
    }
    OracleSummary {
        bounds,
        all_agree: reports.iter().all(|r| r.agree),
        by_operation,
        reports,
    }
}
