//! Index-based rotation systems.
//!
//! Half-edge `h` lives at node `half_node[h]` and belongs to edge
//! `half_edge[h]`. Rotations are clockwise and list only live half-edges.

use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::OverPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Vertex,
    Crossing(OverPair),
}

#[derive(Clone, Debug)]
pub(crate) struct PlaneGraph {
    pub kind: Vec<Kind>,
    pub rot: Vec<Vec<usize>>,
    pub node_alive: Vec<bool>,
    pub half_node: Vec<usize>,
    pub half_edge: Vec<usize>,
    pub edge_ends: Vec<[usize; 2]>,
    pub edge_alive: Vec<bool>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl PlaneGraph {
    pub fn node_count(&self) -> usize {
        self.kind.len()
    }

    pub fn twin(&self, h: usize) -> usize {
        let [a, b] = self.edge_ends[self.half_edge[h]];
        if a == h {
            b
        } else {
            a
        }
    }

    pub fn position(&self, h: usize) -> usize {
        let n = self.half_node[h];
        self.rot[n].iter().position(|&x| x == h).expect("half-edge missing from its rotation")
    }

    pub fn succ_cw(&self, h: usize) -> usize {
        let r = &self.rot[self.half_node[h]];
        r[(self.position(h) + 1) % r.len()]
    }

    pub fn live_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_ends.len()).filter(|&e| self.edge_alive[e])
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.kind.len()).filter(|&n| self.node_alive[n])
    }

    pub fn live_edge_count(&self) -> usize {
        self.live_edges().count()
    }

    /// Orbits of `h -> succ_cw(twin(h))`, each a cyclic sequence of
    /// directed half-edges. Discovery order follows node order, then
    /// rotation order.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.half_node.len()];
        let mut out = Vec::new();
        for n in self.live_nodes() {
            for &start in &self.rot[n] {
                if seen[start] {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut h = start;
                while !seen[h] {
                    seen[h] = true;
                    orbit.push(h);
                    h = self.succ_cw(self.twin(h));
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Connected component label per node (`usize::MAX` for dead nodes)
    /// and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.node_count());
        for e in self.live_edges() {
            let [a, b] = self.edge_ends[e];
            uf.union(self.half_node[a], self.half_node[b]);
        }
        let mut label = vec![usize::MAX; self.node_count()];
        let mut root_label = vec![usize::MAX; self.node_count()];
        let mut count = 0;
        for n in self.live_nodes() {
            let r = uf.find(n);
            if root_label[r] == usize::MAX {
                root_label[r] = count;
                count += 1;
            }
            label[n] = root_label[r];
        }
        (label, count)
    }

    /// Per component: (nodes, edges, face orbits). An isolated node counts
    /// as having one face.
    pub fn euler_counts(&self) -> Vec<(usize, usize, usize)> {
        let (label, count) = self.components();
        let mut acc = vec![(0usize, 0usize, 0usize); count];
        for n in self.live_nodes() {
            acc[label[n]].0 += 1;
            if self.rot[n].is_empty() {
                acc[label[n]].2 += 1;
            }
        }
        for e in self.live_edges() {
            acc[label[self.half_node[self.edge_ends[e][0]]]].1 += 1;
        }
        for f in self.faces() {
            acc[label[self.half_node[f[0]]]].2 += 1;
        }
        acc
    }

    /// Regions of the plane cut out by the graph: component faces are
    /// traced separately, so their outer faces are merged here.
    pub fn regions(&self) -> usize {
        let counts = self.euler_counts();
        if counts.is_empty() {
            return 1;
        }
        counts.iter().map(|c| c.2).sum::<usize>() + 1 - counts.len()
    }

    /// Component label of the first component violating `V - E + F = 2`.
    pub fn first_nonspherical(&self) -> Option<usize> {
        self.euler_counts().iter().position(|&(v, e, f)| v + f != e + 2)
    }

    /// Detach node `n` into one stub per half-edge and label each rotation
    /// position of `n` by the connected component its stub falls in.
    /// Labels are numbered by first appearance in the rotation.
    pub fn stub_groups(&self, n: usize) -> Vec<usize> {
        let base = self.node_count();
        let deg = self.rot[n].len();
        let mut uf = UnionFind::new(base + deg);
        let end = |h: usize| {
            if self.half_node[h] == n {
                base + self.position(h)
            } else {
                self.half_node[h]
            }
        };
        for e in self.live_edges() {
            let [a, b] = self.edge_ends[e];
            uf.union(end(a), end(b));
        }
        let mut roots: Vec<usize> = Vec::new();
        (0..deg)
            .map(|i| {
                let r = uf.find(base + i);
                match roots.iter().position(|&x| x == r) {
                    Some(p) => p,
                    None => {
                        roots.push(r);
                        roots.len() - 1
                    }
                }
            })
            .collect()
    }

    /// Cut nodes in the detachment sense: articulation points of the
    /// loop-free multigraph, plus every node carrying a loop and at least
    /// one further half-edge.
    pub fn cut_nodes(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut disc = vec![0usize; n];
        let mut low = vec![0usize; n];
        let mut cut = vec![false; n];
        let mut timer = 1;
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in self.live_nodes() {
            if disc[root] != 0 {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (v, parent_edge, i) = *top;
                if i < self.rot[v].len() {
                    top.2 += 1;
                    let h = self.rot[v][i];
                    let e = self.half_edge[h];
                    let w = self.half_node[self.twin(h)];
                    if e == parent_edge || w == v {
                        continue;
                    }
                    if disc[w] == 0 {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(u, _, _)) = stack.last() {
                        low[u] = low[u].min(low[v]);
                        if u == root {
                            root_children += 1;
                        } else if low[v] >= disc[u] {
                            cut[u] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                cut[root] = true;
            }
        }
        for v in self.live_nodes() {
            let has_loop = self.rot[v].iter().any(|&h| self.half_node[self.twin(h)] == v);
            if has_loop && self.rot[v].len() > 2 {
                cut[v] = true;
            }
        }
        (0..n).filter(|&v| cut[v] && self.node_alive[v]).collect()
    }
}
