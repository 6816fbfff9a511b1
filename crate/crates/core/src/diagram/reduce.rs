//! Removal of nugatory crossings.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::{DiagramError, Edge, Node, NodeKind, PlanarDiagram};
use crate::ids::{HalfEdgeId, NodeId};

/// Crossings that are cut nodes of the underlying graph, sorted by id.
pub fn nugatory_crossings(d: &PlanarDiagram) -> Vec<NodeId> {
    let g = d.graph();
    let mut out: Vec<NodeId> = g
        .cut_nodes()
        .into_iter()
        .filter(|&n| !d.nodes()[n].kind.is_vertex())
        .map(|n| d.nodes()[n].id.clone())
        .collect();
    out.sort();
    out
}

/// Untwist nugatory crossings, smallest id first, until none is left.
pub fn reduce_diagram(d: &PlanarDiagram) -> Result<PlanarDiagram, DiagramError> {
    let mut cur = d.clone();
    while let Some(x) = nugatory_crossings(&cur).into_iter().next() {
        cur = untwist(&cur, &x)?;
    }
    Ok(cur)
}

/// Remove one nugatory crossing.
///
/// When the detached stubs split into two adjacent pairs, the side with
/// fewer nodes (ties: the lexicographically smaller id set) is turned over,
/// i.e. all its rotations are reversed, before the strands are spliced.
/// Reversing a crossing's rotation while keeping its over tag swaps which
/// strand is on top, so the turned side is a rigid half-turn of the
/// original rather than its mirror image.
pub fn untwist(d: &PlanarDiagram, x: &NodeId) -> Result<PlanarDiagram, DiagramError> {
    let g = d.graph();
    let xi = d.node_idx(x).ok_or_else(|| DiagramError::UnknownNode(x.clone()))?;
    if d.nodes()[xi].kind.is_vertex() {
        return Err(DiagramError::NotACrossing(x.clone()));
    }
    let groups = g.stub_groups(xi);
    if groups.iter().all(|&c| c == 0) {
        return Err(DiagramError::NotNugatory(x.clone()));
    }

    let mut nodes: Vec<Node> = d.nodes().to_vec();
    let split = (0..2).find(|&i| {
        let left = [groups[i], groups[i + 1]];
        !left.contains(&groups[(i + 2) % 4]) && !left.contains(&groups[(i + 3) % 4])
    });
    if let Some(i) = split {
        let side = |a: usize, b: usize| -> Vec<usize> {
            let starts = [g.rot[xi][a], g.rot[xi][b]].map(|h| g.half_node[g.twin(h)]);
            let mut seen = vec![false; g.node_count()];
            seen[xi] = true;
            let mut queue: VecDeque<usize> = VecDeque::new();
            for s in starts {
                if !seen[s] {
                    seen[s] = true;
                    queue.push_back(s);
                }
            }
            let mut out = Vec::new();
            while let Some(n) = queue.pop_front() {
                out.push(n);
                for &h in &g.rot[n] {
                    let m = g.half_node[g.twin(h)];
                    if !seen[m] {
                        seen[m] = true;
                        queue.push_back(m);
                    }
                }
            }
            out
        };
        let a = side(i, i + 1);
        let b = side((i + 2) % 4, (i + 3) % 4);
        let ids = |s: &[usize]| {
            let mut v: Vec<&NodeId> = s.iter().map(|&n| &d.nodes()[n].id).collect();
            v.sort();
            v
        };
        let flip = if a.len() != b.len() {
            if a.len() < b.len() {
                a
            } else {
                b
            }
        } else if ids(&a) <= ids(&b) {
            a
        } else {
            b
        };
        for n in flip {
            nodes[n].rotation.reverse();
        }
    }

    let ports: Vec<HalfEdgeId> = d.nodes()[xi].rotation.clone();
    nodes.remove(xi);
    let mut edges: Vec<Edge> = d.edges().to_vec();
    for (p, q) in [(0, 2), (1, 3)] {
        let ep = edges.iter().position(|e| e.ends.contains(&ports[p])).expect("port on an edge");
        let eq = edges.iter().position(|e| e.ends.contains(&ports[q])).expect("port on an edge");
        if ep == eq {
            return Err(DiagramError::ClosedVertexFreeComponent { edge: edges[ep].id.clone() });
        }
        let far = |e: &Edge, port: &HalfEdgeId| {
            if &e.ends[0] == port {
                e.ends[1].clone()
            } else {
                e.ends[0].clone()
            }
        };
        let a = far(&edges[ep], &ports[p]);
        let b = far(&edges[eq], &ports[q]);
        let id = core::cmp::min(&edges[ep].id, &edges[eq].id).clone();
        edges[ep] = Edge { id, ends: [a, b] };
        edges.remove(eq);
    }
    debug_assert!(nodes.iter().all(|n| !matches!(n.kind, NodeKind::Crossing(_)) || n.rotation.len() == 4));
    PlanarDiagram::new(d.name(), nodes, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::diagram::{add_kink, KinkSide, OverPair};
    use crate::ids::EdgeId;

    #[test]
    fn kinked_trefoil_reduces_back() {
        let t = build::trefoil_with_vertex();
        let k = add_kink(&t, &EdgeId::from("e1"), KinkSide::Left, OverPair::ZeroTwo).unwrap();
        assert_eq!(k.crossing_count(), 4);
        assert_eq!(nugatory_crossings(&k).len(), 1);
        let r = reduce_diagram(&k).unwrap();
        assert_eq!(r.crossing_count(), 3);
        assert!(r.check_spherical().is_ok());
        assert!(r.is_cut_point_free());
        assert_eq!(r.trace_strands().unwrap().len(), 1);
        assert_eq!(r.compute_faces().len(), 5);
        assert_eq!(r, t);
    }

    #[test]
    fn reduced_diagram_is_a_fixed_point() {
        let t = build::trefoil_with_vertex();
        assert_eq!(reduce_diagram(&t).unwrap(), t);
    }

    #[test]
    fn double_kink_on_a_loop() {
        let d = build::bouquet(1);
        let d = add_kink(&d, &EdgeId::from("l1"), KinkSide::Left, OverPair::ZeroTwo).unwrap();
        let d = add_kink(&d, &EdgeId::from("l1"), KinkSide::Right, OverPair::OneThree).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert!(d.check_spherical().is_ok());
        let r = reduce_diagram(&d).unwrap();
        assert_eq!(r.crossing_count(), 0);
        assert_eq!(r.edge_count(), 1);
        assert!(r.check_spherical().is_ok());
    }

    #[test]
    fn untwist_rejects_non_nugatory() {
        let t = build::trefoil_with_vertex();
        let x = t.nodes().iter().find(|n| !n.kind.is_vertex()).unwrap().id.clone();
        assert_eq!(untwist(&t, &x), Err(DiagramError::NotNugatory(x)));
    }
}
