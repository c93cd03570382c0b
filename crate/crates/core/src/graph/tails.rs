use serde::Serialize;

use super::stability::genus_one_sides;
use super::{arithmetic_genus, is_stable, isomorphic, CurveGraph, SubcurveSpec, Vertex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticTail {
    pub subcurve: SubcurveSpec,
    /// The attaching node as `[vertex in tail, vertex outside]`.
    pub node: [u32; 2],
}

fn require_stable(g: &CurveGraph) -> Result<()> {
    let v = is_stable(g);
    if v.holds {
        Ok(())
    } else {
        let why: Vec<String> = v.reasons.iter().map(ToString::to_string).collect();
        Err(Error::Precondition(format!(
            "graph is not stable of genus >= 3: {}",
            why.join("; ")
        )))
    }
}

/// Maximal connected genus-one subcurves meeting the rest of the curve in one node.
pub fn find_elliptic_tails(g: &CurveGraph) -> Result<Vec<EllipticTail>> {
    require_stable(g)?;
    maximal_tails(g)
}

fn maximal_tails(g: &CurveGraph) -> Result<Vec<EllipticTail>> {
    let sides = genus_one_sides(g);
    let mut maximal: Vec<(u64, usize)> = sides
        .iter()
        .filter(|(s, _)| !sides.iter().any(|(t, _)| t != s && s & t == *s))
        .copied()
        .collect();
    maximal.sort_unstable();
    maximal.dedup_by_key(|(s, _)| *s);

    for (i, (s, _)) in maximal.iter().enumerate() {
        for (t, _) in &maximal[i + 1..] {
            if s & t != 0 {
                return Err(Error::OverlappingTails(g.ids_of(*s), g.ids_of(*t)));
            }
        }
    }

    let mut tails: Vec<EllipticTail> = maximal
        .into_iter()
        .map(|(mask, k)| {
            let [a, b] = g.edges()[k];
            let a_inside = g.index_of(a).is_some_and(|i| mask >> i & 1 == 1);
            let node = if a_inside { [a, b] } else { [b, a] };
            EllipticTail {
                subcurve: SubcurveSpec {
                    vertices: g.ids_of(mask),
                    attaching_edges: 1,
                },
                node,
            }
        })
        .collect();
    tails.sort_by(|x, y| x.subcurve.vertices.cmp(&y.subcurve.vertices));
    Ok(tails)
}

/// Replaces every maximal elliptic tail by a cusp at its attachment point.
pub fn t_transform(g: &CurveGraph) -> Result<CurveGraph> {
    require_stable(g)?;
    collapse_tails(g)
}

/// The tail-to-cusp replacement without the stability precondition, so it can
/// be applied to images of [`t_transform`] (which carry cusps). A graph with no
/// genus-one bridge side is returned unchanged.
pub fn collapse_tails(g: &CurveGraph) -> Result<CurveGraph> {
    let tails = maximal_tails(g)?;
    if tails.is_empty() {
        return Ok(g.clone());
    }
    let removed: Vec<u32> = tails
        .iter()
        .flat_map(|t| t.subcurve.vertices.iter().copied())
        .collect();
    for &id in &removed {
        if g.vertex(id).is_some_and(|v| v.m > 0) {
            return Err(Error::MarkedTail(id));
        }
    }
    let mut vertices: Vec<Vertex> = g
        .vertices()
        .iter()
        .filter(|v| !removed.contains(&v.id))
        .copied()
        .collect();
    for t in &tails {
        let target = t.node[1];
        let v = vertices
            .iter_mut()
            .find(|v| v.id == target)
            .ok_or_else(|| Error::OverlappingTails(t.subcurve.vertices.clone(), vec![target]))?;
        v.c += 1;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| !removed.contains(&e[0]) && !removed.contains(&e[1]))
        .copied()
        .collect();
    CurveGraph::new(vertices, edges)
}

/// Whether two stable curves have the same image under the tail-to-cusp map,
/// up to isomorphism of labeled multigraphs.
pub fn t_equivalent(g1: &CurveGraph, g2: &CurveGraph) -> Result<bool> {
    require_stable(g1)?;
    require_stable(g2)?;
    let (a, b) = (arithmetic_genus(g1)?, arithmetic_genus(g2)?);
    if a != b {
        return Err(Error::GenusMismatch(a, b));
    }
    Ok(isomorphic(&t_transform(g1)?, &t_transform(g2)?))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{is_pseudostable, Vertex};
    use super::*;

    #[test]
    fn single_elliptic_tail() {
        let g = elliptic_tail(5);
        let tails = find_elliptic_tails(&g).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].subcurve.vertices, vec![0]);
        assert_eq!(tails[0].node, [0, 1]);
        assert_eq!(t_transform(&g).unwrap(), graph(&[(1, 4, 1)], &[]));
    }

    #[test]
    fn rational_two_cycle_tail_is_unstable() {
        // the two-cycle has genus one and one attaching node, but vertex 0 has
        // only two special points
        let g = graph(
            &[(0, 0, 0), (1, 0, 0), (2, 4, 0)],
            &[[0, 1], [0, 1], [1, 2]],
        );
        assert!(!is_stable(&g).holds);
        assert!(matches!(
            find_elliptic_tails(&g),
            Err(Error::Precondition(_))
        ));
        let ps = is_pseudostable(&g);
        assert!(
            ps.reasons.iter().any(|r| matches!(r,
            crate::graph::Violation::EllipticTail { subcurve } if subcurve.vertices == vec![0, 1]))
        );
    }

    #[test]
    fn nodal_rational_tail() {
        let g = graph(&[(0, 0, 0), (1, 4, 0)], &[[0, 0], [0, 1]]);
        let tails = find_elliptic_tails(&g).unwrap();
        assert_eq!(tails[0].subcurve.vertices, vec![0]);
        assert_eq!(t_transform(&g).unwrap(), graph(&[(1, 4, 1)], &[]));
    }

    #[test]
    fn genus_two_side_is_not_a_tail() {
        let g = graph(
            &[(0, 0, 0), (1, 0, 0), (2, 3, 0)],
            &[[0, 1], [0, 1], [0, 1], [1, 2]],
        );
        assert!(find_elliptic_tails(&g).unwrap().is_empty());
    }

    #[test]
    fn two_tails_on_one_vertex() {
        for genus in 4..8 {
            let g = graph(
                &[(0, 1, 0), (1, 1, 0), (2, genus - 2, 0)],
                &[[0, 2], [1, 2]],
            );
            let tails = find_elliptic_tails(&g).unwrap();
            assert_eq!(tails.len(), 2);
            let t = t_transform(&g).unwrap();
            assert_eq!(t, graph(&[(2, genus - 2, 2)], &[]));
            assert_eq!(arithmetic_genus(&t).unwrap(), genus);
        }
    }

    #[test]
    fn maximal_tail_swallows_inner_ones() {
        // {0, 1} has genus 2, so the only genus-one side is {0}
        let g = graph(
            &[(0, 1, 0), (1, 0, 0), (2, 2, 0)],
            &[[0, 1], [1, 1], [1, 2]],
        );
        let tails = find_elliptic_tails(&g).unwrap();
        assert_eq!(tails.len(), 1);
        assert_eq!(tails[0].subcurve.vertices, vec![0]);
    }

    #[test]
    fn tail_free_graph_is_unchanged() {
        let g = graph(&[(0, 2, 0), (1, 2, 0)], &[[0, 1]]);
        assert!(find_elliptic_tails(&g).unwrap().is_empty());
        assert_eq!(t_transform(&g).unwrap(), g);
    }

    #[test]
    fn transform_output_is_pseudostable_and_fixed() {
        let g = graph(
            &[(0, 1, 0), (1, 0, 0), (2, 1, 0), (3, 1, 0)],
            &[[0, 1], [1, 2], [1, 3], [2, 3]],
        );
        let t = t_transform(&g).unwrap();
        assert_eq!(arithmetic_genus(&t).unwrap(), arithmetic_genus(&g).unwrap());
        assert!(is_pseudostable(&t).holds, "{:?}", is_pseudostable(&t));
    }

    #[test]
    fn collapse_is_idempotent_on_images() {
        let g = graph(&[(0, 1, 0), (1, 1, 0), (2, 2, 0)], &[[0, 2], [1, 2]]);
        let t = t_transform(&g).unwrap();
        assert_eq!(t, graph(&[(2, 2, 2)], &[]));
        assert_eq!(collapse_tails(&t).unwrap(), t);
        assert!(t_transform(&t).is_err());
    }

    #[test]
    fn marked_tails_are_rejected() {
        let vertices = vec![
            Vertex {
                id: 0,
                h: 1,
                c: 0,
                m: 1,
            },
            Vertex::new(1, 3),
        ];
        let g = CurveGraph::new(vertices, vec![[0, 1]]).unwrap();
        assert!(matches!(t_transform(&g), Err(Error::MarkedTail(0))));
    }

    #[test]
    fn unstable_input_is_a_precondition_error() {
        assert!(matches!(
            t_transform(&graph(&[(0, 2, 1)], &[])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn equivalence_of_different_tails() {
        let a = elliptic_tail(5);
        let b = graph(&[(0, 0, 0), (1, 4, 0)], &[[0, 0], [0, 1]]);
        assert!(t_equivalent(&a, &b).unwrap());
        assert!(t_equivalent(&a, &a).unwrap());
    }

    #[test]
    fn equivalence_detects_different_attachment() {
        // D = two genus-1 components joined twice (genus 3); tail at vertex 1 vs.
        // D' = genus-2 and genus-1 joined once with the tail on the genus-1 side
        let g1 = graph(&[(0, 1, 0), (1, 2, 0), (2, 1, 0)], &[[0, 1], [1, 2]]);
        let g2 = graph(&[(0, 1, 0), (1, 1, 0), (2, 2, 0)], &[[0, 1], [1, 2]]);
        assert_eq!(t_transform(&g1).unwrap(), graph(&[(1, 2, 2)], &[]));
        assert_eq!(
            t_transform(&g2).unwrap(),
            graph(&[(1, 1, 1), (2, 2, 0)], &[[1, 2]])
        );
        assert!(!t_equivalent(&g1, &g2).unwrap());
    }

    #[test]
    fn equivalence_needs_equal_genus() {
        assert!(matches!(
            t_equivalent(&elliptic_tail(4), &elliptic_tail(5)),
            Err(Error::GenusMismatch(4, 5))
        ));
    }
}
