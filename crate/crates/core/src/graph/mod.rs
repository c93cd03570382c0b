//! Dual graphs of nodal-cuspidal curves.
//!
//! A vertex is an irreducible component with geometric genus `h`, `c` cusps
//! and `m` marked points; an edge is a node (loops allowed). The arithmetic
//! genus is `Σ(h_v + c_v) + E − V + 1`.

mod iso;
mod stability;
mod tails;

pub use iso::isomorphic;
pub use stability::{is_pseudostable, is_stable, Verdict, Violation};
pub use tails::{collapse_tails, find_elliptic_tails, t_equivalent, t_transform, EllipticTail};

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponential subcurve and isomorphism searches are refused beyond this.
pub const MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub h: u32,
    #[serde(default)]
    pub c: u32,
    #[serde(default)]
    pub m: u32,
}

impl Vertex {
    pub fn new(id: u32, h: u32) -> Self {
        Vertex { id, h, c: 0, m: 0 }
    }

    pub fn cusps(mut self, c: u32) -> Self {
        self.c = c;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveGraph {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
}

#[derive(Deserialize)]
struct CurveGraphRepr {
    vertices: Vec<Vertex>,
    edges: Vec<[u32; 2]>,
}

impl<'de> Deserialize<'de> for CurveGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CurveGraphRepr::deserialize(d)?;
        CurveGraph::new(r.vertices, r.edges).map_err(serde::de::Error::custom)
    }
}

impl CurveGraph {
    /// Vertices are kept sorted by id; each edge is stored as `[min, max]`.
    pub fn new(mut vertices: Vec<Vertex>, edges: Vec<[u32; 2]>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertices.len()));
        }
        vertices.sort_by_key(|v| v.id);
        if let Some(w) = vertices.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::InvalidGraph(format!(
                "duplicate vertex id {}",
                w[0].id
            )));
        }
        let mut edges: Vec<[u32; 2]> = edges
            .into_iter()
            .map(|[a, b]| [a.min(b), a.max(b)])
            .collect();
        for e in &edges {
            for end in e {
                if vertices.binary_search_by_key(end, |v| v.id).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "edge {e:?} references unknown vertex {end}"
                    )));
                }
            }
        }
        edges.sort_unstable();
        Ok(CurveGraph { vertices, edges })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[u32; 2]] {
        &self.edges
    }

    pub fn vertex(&self, id: u32) -> Option<&Vertex> {
        self.index_of(id).map(|k| &self.vertices[k])
    }

    fn index_of(&self, id: u32) -> Option<usize> {
        self.vertices.binary_search_by_key(&id, |v| v.id).ok()
    }

    fn edge_indices(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&[a, b]| {
            (
                self.index_of(a).expect("validated edge"),
                self.index_of(b).expect("validated edge"),
            )
        })
    }

    /// Half-edge count at each vertex; a loop contributes 2.
    pub fn valence(&self, id: u32) -> u32 {
        self.edges
            .iter()
            .map(|e| (e[0] == id) as u32 + (e[1] == id) as u32)
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let mask = (1u64 << self.vertices.len()) - 1;
        self.component_of(0, mask, None) == mask
    }

    /// Vertices reachable from index `start` inside `mask`, optionally ignoring
    /// one edge (by position in `edges`).
    fn component_of(&self, start: usize, mask: u64, skip_edge: Option<usize>) -> u64 {
        let adj = self.adjacency(skip_edge);
        let mut seen = 1u64 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn adjacency(&self, skip_edge: Option<usize>) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (k, (a, b)) in self.edge_indices().enumerate() {
            if Some(k) != skip_edge && a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Arithmetic genus of the subcurve on the vertices in `mask` (indices),
    /// assumed connected.
    fn subcurve_genus(&self, mask: u64) -> i64 {
        let inside = |k: usize| mask >> k & 1 == 1;
        let (mut genus, mut count) = (0i64, 0i64);
        for (k, v) in self.vertices.iter().enumerate() {
            if inside(k) {
                genus += (v.h + v.c) as i64;
                count += 1;
            }
        }
        let internal = self
            .edge_indices()
            .filter(|&(a, b)| inside(a) && inside(b))
            .count() as i64;
        genus + internal - count + 1
    }

    fn ids_of(&self, mask: u64) -> Vec<u32> {
        (0..self.vertices.len())
            .filter(|k| mask >> k & 1 == 1)
            .map(|k| self.vertices[k].id)
            .collect()
    }

    /// Edge multiplicities keyed by `[min id, max id]`.
    pub fn edge_multiplicities(&self) -> BTreeMap<[u32; 2], u32> {
        let mut out = BTreeMap::new();
        for e in &self.edges {
            *out.entry(*e).or_insert(0) += 1;
        }
        out
    }
}

/// `Σ(h_v + c_v) + b_1(G)`.
pub fn arithmetic_genus(g: &CurveGraph) -> Result<u32> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let full = (1u64 << g.vertices.len()) - 1;
    Ok(g.subcurve_genus(full) as u32)
}

/// A connected proper subcurve, given by its vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SubcurveSpec {
    pub vertices: Vec<u32>,
    pub attaching_edges: u32,
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn genus_of_simple_graphs() {
        assert_eq!(arithmetic_genus(&graph(&[(0, 7, 0)], &[])).unwrap(), 7);
        assert_eq!(arithmetic_genus(&elliptic_tail(6)).unwrap(), 6);
        assert_eq!(
            arithmetic_genus(&graph(&[(0, 0, 1)], &[[0, 0]])).unwrap(),
            2
        );
        assert_eq!(
            arithmetic_genus(&graph(&[(0, 0, 0), (1, 0, 0)], &[[0, 1], [0, 1], [0, 1]])).unwrap(),
            2
        );
    }

    #[test]
    fn disconnected_graph_has_no_genus() {
        let g = graph(&[(0, 2, 0), (1, 2, 0)], &[]);
        assert!(matches!(arithmetic_genus(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn validation() {
        assert!(CurveGraph::new(vec![], vec![]).is_err());
        assert!(CurveGraph::new(vec![Vertex::new(0, 1), Vertex::new(0, 2)], vec![]).is_err());
        assert!(CurveGraph::new(vec![Vertex::new(0, 1)], vec![[0, 3]]).is_err());
        let many = (0..21).map(|i| Vertex::new(i, 1)).collect();
        assert!(matches!(
            CurveGraph::new(many, vec![]),
            Err(Error::TooManyVertices(21))
        ));
    }

    #[test]
    fn json_format() {
        let g = CurveGraph::from_json(
            r#"{"vertices":[{"id":1,"h":2,"c":0,"m":0},{"id":0,"h":1}],"edges":[[1,0],[1,1]]}"#,
        )
        .unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"vertices":[{"id":0,"h":1,"c":0,"m":0},{"id":1,"h":2,"c":0,"m":0}],"edges":[[0,1],[1,1]]}"#
        );
        assert_eq!(g.valence(1), 3);
        assert_eq!(CurveGraph::from_json(&g.to_json()).unwrap(), g);
    }
}
