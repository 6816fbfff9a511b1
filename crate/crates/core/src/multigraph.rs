//! Abstract multigraphs (loops and parallel edges allowed) and exact
//! isomorphism testing by backtracking.

use alloc::vec;
use alloc::vec::Vec;

use crate::ids::NodeId;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: Vec<NodeId>,
    /// Endpoint indices into `vertices`.
    pub edges: Vec<(usize, usize)>,
    /// Closed curves carrying no vertex.
    pub free_circles: usize,
}

impl Multigraph {
    pub fn new(vertices: Vec<NodeId>, edges: Vec<(usize, usize)>) -> Self {
        Self { vertices, edges, free_circles: 0 }
    }

    /// Symmetric multiplicity matrix; a loop counts once on the diagonal.
    fn multiplicities(&self) -> Vec<Vec<u32>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u32; n]; n];
        for &(a, b) in &self.edges {
            m[a][b] += 1;
            if a != b {
                m[b][a] += 1;
            }
        }
        m
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Exact isomorphism, ignoring vertex labels.
    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        let n = self.vertices.len();
        if n != other.vertices.len() || self.edges.len() != other.edges.len() || self.free_circles != other.free_circles
        {
            return false;
        }
        let (da, db) = (self.degrees(), other.degrees());
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let (ma, mb) = (self.multiplicities(), other.multiplicities());
        // assign high-degree vertices first; they prune hardest
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| da[y].cmp(&da[x]).then(x.cmp(&y)));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        extend(0, &order, &ma, &mb, &da, &db, &mut map, &mut used)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    depth: usize,
    order: &[usize],
    ma: &[Vec<u32>],
    mb: &[Vec<u32>],
    da: &[usize],
    db: &[usize],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..used.len() {
        if used[w] || da[v] != db[w] || ma[v][v] != mb[w][w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| ma[v][u] == mb[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(depth + 1, order, ma, mb, da, db, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
