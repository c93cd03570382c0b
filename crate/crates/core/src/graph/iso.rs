use super::CurveGraph;

/// Dense view: attributes and symmetric edge-multiplicity matrix (loops on the
/// diagonal).
struct Dense {
    attrs: Vec<(u32, u32, u32)>,
    mult: Vec<Vec<u32>>,
}

impl Dense {
    fn of(g: &CurveGraph) -> Self {
        let n = g.vertices().len();
        let mut mult = vec![vec![0; n]; n];
        for (a, b) in g.edge_indices() {
            mult[a][b] += 1;
            if a != b {
                mult[b][a] += 1;
            }
        }
        let attrs = g.vertices().iter().map(|v| (v.h, v.c, v.m)).collect();
        Dense { attrs, mult }
    }

    /// Attributes, loop count, and the sorted multiset of neighbour multiplicities.
    fn signature(&self, v: usize) -> ((u32, u32, u32), u32, Vec<u32>) {
        let mut row: Vec<u32> = (0..self.mult.len())
            .filter(|&w| w != v && self.mult[v][w] > 0)
            .map(|w| self.mult[v][w])
            .collect();
        row.sort_unstable();
        (self.attrs[v], self.mult[v][v], row)
    }
}

/// Isomorphism of attribute-labeled multigraphs, matching `h`, `c`, `m`, loop
/// counts and edge multiplicities.
pub fn isomorphic(a: &CurveGraph, b: &CurveGraph) -> bool {
    if a.vertices().len() != b.vertices().len() || a.edges().len() != b.edges().len() {
        return false;
    }
    let (da, db) = (Dense::of(a), Dense::of(b));
    let n = da.attrs.len();
    let sa: Vec<_> = (0..n).map(|v| da.signature(v)).collect();
    let sb: Vec<_> = (0..n).map(|v| db.signature(v)).collect();
    let (mut xa, mut xb) = (sa.clone(), sb.clone());
    xa.sort();
    xb.sort();
    if xa != xb {
        return false;
    }

    // Assign the vertices of `a` with the fewest candidates first.
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&w| sa[v] == sb[w]).collect())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| candidates[v].len());

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend(&da, &db, &order, &candidates, 0, &mut image, &mut used) {
        return false;
    }
    (0..n).all(|u| {
        da.attrs[u] == db.attrs[image[u]]
            && (0..n).all(|v| da.mult[u][v] == db.mult[image[u]][image[v]])
    })
}

fn extend(
    da: &Dense,
    db: &Dense,
    order: &[usize],
    candidates: &[Vec<usize>],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for &w in &candidates[v] {
        if used[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| da.mult[u][v] == db.mult[image[u]][w]);
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend(da, db, order, candidates, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
    }
    image[v] = usize::MAX;
    false
}
