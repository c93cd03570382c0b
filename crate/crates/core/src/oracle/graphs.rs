//! Exhaustive generators and a subset-enumeration pseudostability checker for
//! small dual graphs. Self-contained: canonical forms, connectivity and genus
//! are recomputed here from scratch.

use std::collections::{BTreeMap, HashSet};

use crate::graph::{CurveGraph, Vertex};

/// Dense dual graph: per-vertex `(h, c)` and a symmetric multiplicity matrix
/// with loops on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub h: Vec<u32>,
    pub c: Vec<u32>,
    pub mult: Vec<Vec<u32>>,
}

impl SmallGraph {
    pub fn point(h: u32) -> Self {
        SmallGraph {
            h: vec![h],
            c: vec![0],
            mult: vec![vec![0]],
        }
    }

    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn edge_count(&self) -> u32 {
        let n = self.len();
        (0..n)
            .map(|i| (i..n).map(|j| self.mult[i][j]).sum::<u32>())
            .sum()
    }

    /// Half-edges at `v`.
    pub fn degree(&self, v: usize) -> u32 {
        (0..self.len())
            .map(|w| {
                if w == v {
                    2 * self.mult[v][v]
                } else {
                    self.mult[v][w]
                }
            })
            .sum()
    }

    pub fn genus(&self) -> i64 {
        let labels: i64 = self
            .h
            .iter()
            .zip(&self.c)
            .map(|(h, c)| (h + c) as i64)
            .sum();
        labels + self.edge_count() as i64 - self.len() as i64 + 1
    }

    fn add_vertex(&mut self, h: u32) -> usize {
        for row in &mut self.mult {
            row.push(0);
        }
        self.h.push(h);
        self.c.push(0);
        self.mult.push(vec![0; self.h.len()]);
        self.h.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize, k: u32) {
        self.mult[a][b] += k;
        if a != b {
            self.mult[b][a] += k;
        }
    }

    pub fn to_curve_graph(&self) -> CurveGraph {
        let n = self.len();
        let vertices = (0..n)
            .map(|v| Vertex {
                id: v as u32,
                h: self.h[v],
                c: self.c[v],
                m: 0,
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i..n {
                for _ in 0..self.mult[i][j] {
                    edges.push([i as u32, j as u32]);
                }
            }
        }
        CurveGraph::new(vertices, edges).expect("small graphs are valid")
    }

    pub fn from_curve_graph(g: &CurveGraph) -> Self {
        let index: BTreeMap<u32, usize> = g
            .vertices()
            .iter()
            .enumerate()
            .map(|(k, v)| (v.id, k))
            .collect();
        let n = index.len();
        let mut out = SmallGraph {
            h: g.vertices().iter().map(|v| v.h).collect(),
            c: g.vertices().iter().map(|v| v.c).collect(),
            mult: vec![vec![0; n]; n],
        };
        for [a, b] in g.edges() {
            out.add_edge(index[a], index[b], 1);
        }
        out
    }

    /// Bitmask of vertices reachable from `start` within `mask`.
    pub fn reach(&self, start: usize, mask: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..self.len() {
                if w != v && self.mult[v][w] > 0 && mask >> w & 1 == 1 && seen >> w & 1 == 0 {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let full = (1u32 << self.len()) - 1;
        self.reach(0, full) == full
    }

    /// Canonical key: the lexicographically least encoding over all vertex
    /// orders compatible with sorted local invariants.
    pub fn canonical_key(&self) -> Vec<u32> {
        let n = self.len();
        let invariant = |v: usize| (self.h[v], self.c[v], self.mult[v][v], self.degree(v));
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| invariant(v));
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match blocks.last_mut() {
                Some(b) if invariant(b[0]) == invariant(v) => b.push(v),
                _ => blocks.push(vec![v]),
            }
        }
        let mut head: Vec<u32> = Vec::with_capacity(4 * n + 1);
        head.push(n as u32);
        for &v in &order {
            let (h, c, l, d) = invariant(v);
            head.extend([h, c, l, d]);
        }

        let mut best: Option<Vec<u32>> = None;
        let mut perm: Vec<usize> = Vec::with_capacity(n);
        self.search_blocks(&blocks, 0, &mut perm, &mut best);
        head.extend(best.expect("at least one ordering"));
        head
    }

    fn search_blocks(
        &self,
        blocks: &[Vec<usize>],
        k: usize,
        perm: &mut Vec<usize>,
        best: &mut Option<Vec<u32>>,
    ) {
        if k == blocks.len() {
            let n = perm.len();
            let mut code = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in i + 1..n {
                    code.push(self.mult[perm[i]][perm[j]]);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        let mut block = blocks[k].clone();
        permute(&mut block, 0, &mut |p| {
            let base = perm.len();
            perm.extend_from_slice(p);
            self.search_blocks(blocks, k + 1, perm, best);
            perm.truncate(base);
        });
    }
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn locally_stable(g: &SmallGraph) -> bool {
    (0..g.len()).all(|v| {
        let d = g.degree(v);
        g.c[v] == 0 && !(g.h[v] == 0 && d < 3) && !(g.h[v] == 1 && d < 1)
    })
}

/// Graphs obtained from `g` by un-contracting one edge: a loop at a vertex of
/// positive genus, or splitting a vertex in two joined by a new edge.
fn degenerations(g: &SmallGraph, max_vertices: usize) -> Vec<SmallGraph> {
    let n = g.len();
    let mut out = Vec::new();
    for v in 0..n {
        if g.h[v] >= 1 {
            let mut x = g.clone();
            x.h[v] -= 1;
            x.add_edge(v, v, 1);
            out.push(x);
        }
        if n + 1 > max_vertices {
            continue;
        }
        let neighbours: Vec<(usize, u32)> = (0..n)
            .filter(|&w| w != v && g.mult[v][w] > 0)
            .map(|w| (w, g.mult[v][w]))
            .collect();
        let loops = g.mult[v][v];
        // how many edges to each neighbour move to the new vertex
        let mut shares = vec![0u32; neighbours.len()];
        loop {
            for moved_loops in 0..=loops {
                for split_loops in 0..=loops - moved_loops {
                    let kept_loops = loops - moved_loops - split_loops;
                    for h_new in 0..=g.h[v] {
                        let mut x = g.clone();
                        let w = x.add_vertex(h_new);
                        x.h[v] -= h_new;
                        for (&(u, _), &s) in neighbours.iter().zip(&shares) {
                            x.mult[v][u] -= s;
                            x.mult[u][v] -= s;
                            x.add_edge(w, u, s);
                        }
                        x.mult[v][v] = kept_loops;
                        x.mult[w][w] = moved_loops;
                        x.add_edge(v, w, 1 + split_loops);
                        if locally_stable(&x) {
                            out.push(x);
                        }
                    }
                }
            }
            // odometer over shares
            let mut i = 0;
            while i < shares.len() && shares[i] == neighbours[i].1 {
                shares[i] = 0;
                i += 1;
            }
            if i == shares.len() {
                break;
            }
            shares[i] += 1;
        }
    }
    out
}

/// Every stable dual graph of arithmetic genus `genus` with at most
/// `max_vertices` vertices, one per isomorphism class, ordered by edge count.
///
/// Contracting an edge of a stable graph gives a stable graph, so all of them
/// are reached from the smooth curve by repeated un-contraction.
pub fn stable_graphs(genus: u32, max_vertices: usize) -> Vec<SmallGraph> {
    let mut level = vec![SmallGraph::point(genus)];
    let mut out = level.clone();
    while !level.is_empty() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for x in degenerations(g, max_vertices) {
                if seen.insert(x.canonical_key()) {
                    next.push(x);
                }
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Connected multigraph shapes (all labels zero) with at most `max_vertices`
/// vertices and first Betti number at most `max_betti`, up to isomorphism.
pub fn skeletons(max_vertices: usize, max_betti: u32) -> Vec<SmallGraph> {
    let mut seen = HashSet::new();
    let start = SmallGraph::point(0);
    seen.insert(start.canonical_key());
    let mut frontier = vec![start];
    let mut out = Vec::new();
    while let Some(g) = frontier.pop() {
        let betti = g.genus() as u32;
        let n = g.len();
        let mut children = Vec::new();
        if n < max_vertices {
            for v in 0..n {
                let mut x = g.clone();
                let w = x.add_vertex(0);
                x.add_edge(v, w, 1);
                children.push(x);
            }
        }
        if betti < max_betti {
            for a in 0..n {
                for b in a..n {
                    let mut x = g.clone();
                    x.add_edge(a, b, 1);
                    children.push(x);
                }
            }
        }
        for x in children {
            if seen.insert(x.canonical_key()) {
                frontier.push(x);
            }
        }
        out.push(g);
    }
    out.sort_by_key(|g| (g.len(), g.edge_count()));
    out
}

/// Every assignment of `(h, c)` labels to the skeleton's vertices with total
/// `Σ(h + c) = budget`.
pub fn labelings(skeleton: &SmallGraph, budget: u32) -> Vec<SmallGraph> {
    let slots = 2 * skeleton.len();
    let mut out = Vec::new();
    let mut values = vec![0u32; slots];
    fill(&mut values, 0, budget, &mut |vals| {
        let mut g = skeleton.clone();
        for v in 0..g.len() {
            g.h[v] = vals[2 * v];
            g.c[v] = vals[2 * v + 1];
        }
        out.push(g);
    });
    out
}

fn fill(values: &mut [u32], k: usize, left: u32, f: &mut dyn FnMut(&[u32])) {
    if k + 1 == values.len() {
        values[k] = left;
        f(values);
        return;
    }
    for x in 0..=left {
        values[k] = x;
        fill(values, k + 1, left - x, f);
    }
}

/// Pseudostability straight from the subcurve definition: every connected
/// proper subcurve of genus one meets the rest at least twice, every one of
/// genus zero at least three times, and the whole curve has genus >= 2 (the
/// dualizing sheaf has positive degree).
pub fn pseudostable_by_subsets(g: &SmallGraph) -> bool {
    let n = g.len();
    let full = (1u32 << n) - 1;
    if g.reach(0, full) != full || g.genus() < 2 {
        return false;
    }
    for mask in 1..full {
        let first = mask.trailing_zeros() as usize;
        if g.reach(first, mask) != mask {
            continue;
        }
        let mut labels = 0i64;
        let mut inner = 0i64;
        let mut attaching = 0u32;
        for i in 0..n {
            if mask >> i & 1 == 0 {
                continue;
            }
            labels += (g.h[i] + g.c[i]) as i64;
            for j in 0..n {
                let m = g.mult[i][j];
                if mask >> j & 1 == 1 {
                    if j >= i {
                        inner += m as i64;
                    }
                } else {
                    attaching += m;
                }
            }
        }
        let genus = labels + inner - mask.count_ones() as i64 + 1;
        if (genus == 1 && attaching < 2) || (genus == 0 && attaching < 3) {
            return false;
        }
    }
    true
}
