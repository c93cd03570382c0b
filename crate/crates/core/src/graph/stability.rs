use std::fmt;

use serde::Serialize;

use super::{arithmetic_genus, CurveGraph, SubcurveSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    Disconnected,
    Cusp {
        vertex: u32,
        cusps: u32,
    },
    GenusTooSmall {
        genus: u32,
    },
    /// A smooth rational component with fewer than three special points.
    UnstableRational {
        vertex: u32,
        special_points: u32,
    },
    /// A smooth elliptic component with no special point.
    UnstableElliptic {
        vertex: u32,
    },
    /// A connected genus-one subcurve meeting the rest in a single node.
    EllipticTail {
        subcurve: SubcurveSpec,
    },
    /// The dualizing sheaf has degree `2(h+c) − 2 + valence + m <= 0` here.
    NotAmple {
        vertex: u32,
        degree: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected => write!(f, "graph is disconnected"),
            Violation::Cusp { vertex, cusps } => write!(f, "vertex {vertex} has {cusps} cusp(s)"),
            Violation::GenusTooSmall { genus } => write!(f, "arithmetic genus {genus} < 3"),
            Violation::UnstableRational {
                vertex,
                special_points,
            } => {
                write!(
                    f,
                    "rational vertex {vertex} has {special_points} special point(s), needs 3"
                )
            }
            Violation::UnstableElliptic { vertex } => {
                write!(f, "elliptic vertex {vertex} has no special point")
            }
            Violation::EllipticTail { subcurve } => {
                write!(
                    f,
                    "genus-one subcurve {:?} meets the rest in one point",
                    subcurve.vertices
                )
            }
            Violation::NotAmple { vertex, degree } => {
                write!(
                    f,
                    "canonical degree {degree} on vertex {vertex} is not positive"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub reasons: Vec<Violation>,
}

impl Verdict {
    fn from_reasons(reasons: Vec<Violation>) -> Self {
        Verdict {
            holds: reasons.is_empty(),
            reasons,
        }
    }
}

/// Deligne–Mumford stability, restricted to arithmetic genus >= 3.
pub fn is_stable(g: &CurveGraph) -> Verdict {
    let Ok(genus) = arithmetic_genus(g) else {
        return Verdict::from_reasons(vec![Violation::Disconnected]);
    };
    let mut reasons = Vec::new();
    if genus < 3 {
        reasons.push(Violation::GenusTooSmall { genus });
    }
    for v in g.vertices() {
        let special = g.valence(v.id) + v.m;
        if v.c > 0 {
            reasons.push(Violation::Cusp {
                vertex: v.id,
                cusps: v.c,
            });
        }
        match v.h {
            0 if special < 3 => reasons.push(Violation::UnstableRational {
                vertex: v.id,
                special_points: special,
            }),
            1 if special < 1 => reasons.push(Violation::UnstableElliptic { vertex: v.id }),
            _ => {}
        }
    }
    Verdict::from_reasons(reasons)
}

/// Pseudostability: nodes and cusps only (true by construction), no genus-one
/// subcurve meeting the rest once, and an ample dualizing sheaf.
///
/// A connected proper subcurve meets the rest in exactly one node iff that node
/// is a bridge, so the genus-one condition is checked on both sides of every
/// bridge. Ampleness is checked componentwise.
pub fn is_pseudostable(g: &CurveGraph) -> Verdict {
    if !g.is_connected() {
        return Verdict::from_reasons(vec![Violation::Disconnected]);
    }
    let mut reasons: Vec<Violation> = genus_one_bridge_sides(g)
        .into_iter()
        .map(|subcurve| Violation::EllipticTail { subcurve })
        .collect();
    for v in g.vertices() {
        let degree = 2 * (v.h + v.c) as i64 - 2 + g.valence(v.id) as i64 + v.m as i64;
        if degree <= 0 {
            reasons.push(Violation::NotAmple {
                vertex: v.id,
                degree,
            });
        }
    }
    Verdict::from_reasons(reasons)
}

/// Bridge sides of genus one, as vertex masks, each with the bridge position.
pub(super) fn genus_one_sides(g: &CurveGraph) -> Vec<(u64, usize)> {
    let n = g.vertices().len();
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for (k, (a, b)) in g.edge_indices().enumerate() {
        if a == b {
            continue;
        }
        let side = g.component_of(a, full, Some(k));
        if side >> b & 1 == 1 {
            continue;
        }
        for s in [side, full & !side] {
            if g.subcurve_genus(s) == 1 {
                out.push((s, k));
            }
        }
    }
    out
}

fn genus_one_bridge_sides(g: &CurveGraph) -> Vec<SubcurveSpec> {
    let mut specs: Vec<SubcurveSpec> = genus_one_sides(g)
        .into_iter()
        .map(|(mask, _)| SubcurveSpec {
            vertices: g.ids_of(mask),
            attaching_edges: 1,
        })
        .collect();
    specs.sort();
    specs.dedup();
    specs
}
