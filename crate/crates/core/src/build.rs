//! Constructors for standard diagrams: trivial θ-curves and bouquets, knot
//! diagrams from PD codes, and the gluing operations used to assemble
//! larger examples from them.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagram::{DiagramError, Edge, Node, NodeKind, OverPair, PlanarDiagram};
use crate::ids::{EdgeId, HalfEdgeId, NodeId};

fn h(s: String) -> HalfEdgeId {
    HalfEdgeId::new(s)
}

/// Trivial θ-curve with `p` edges `e1..ep` between `u` and `v`.
pub fn theta(p: usize) -> PlanarDiagram {
    let u = (1..=p).map(|i| h(format!("u{i}"))).collect();
    let v = (1..=p).rev().map(|i| h(format!("v{i}"))).collect();
    let edges = (1..=p).map(|i| Edge::new(format!("e{i}"), format!("u{i}"), format!("v{i}"))).collect();
    PlanarDiagram::new(format!("theta-{p}"), vec![Node::vertex("u", u), Node::vertex("v", v)], edges)
        .expect("theta is well formed")
}

/// Trivial bouquet: `b` unknotted, unnested loops `l1..lb` at vertex `w`.
pub fn bouquet(b: usize) -> PlanarDiagram {
    let rot = (1..=b).flat_map(|i| [h(format!("l{i}a")), h(format!("l{i}b"))]).collect();
    let edges = (1..=b).map(|i| Edge::new(format!("l{i}"), format!("l{i}a"), format!("l{i}b"))).collect();
    PlanarDiagram::new(format!("bouquet-{b}"), vec![Node::vertex("w", rot)], edges).expect("bouquet is well formed")
}

/// Knot diagram from a PD code. Each entry lists the four edge labels at a
/// crossing counterclockwise, starting with the incoming under strand.
/// Crossings are named `x1, x2, ...` and edges `e{label}`. The result has no
/// vertex; add one with [`subdivide`] before running any algorithm.
pub fn from_pd(name: &str, pd: &[[u32; 4]]) -> Result<PlanarDiagram, DiagramError> {
    let mut nodes = Vec::new();
    let mut seen: Vec<(u32, HalfEdgeId)> = Vec::new();
    let mut edges = Vec::new();
    for (c, labels) in pd.iter().enumerate() {
        // counterclockwise (a, b, c, d) becomes clockwise (a, d, c, b)
        let order = [0usize, 3, 2, 1];
        let rot: Vec<HalfEdgeId> = order.iter().map(|&p| h(format!("x{}.{}", c + 1, p))).collect();
        for &p in &order {
            let label = labels[p];
            let half = h(format!("x{}.{}", c + 1, p));
            match seen.iter().position(|(l, _)| *l == label) {
                Some(i) => {
                    let (_, first) = seen.remove(i);
                    edges.push(Edge { id: EdgeId::new(format!("e{label}")), ends: [first, half] });
                }
                None => seen.push((label, half)),
            }
        }
        // the under strand sits at clockwise positions 0 and 2
        nodes.push(Node::crossing(format!("x{}", c + 1), rot, OverPair::OneThree));
    }
    if let Some((_, half)) = seen.into_iter().next() {
        return Err(DiagramError::DanglingHalfEdge(half));
    }
    edges.sort_by(|a: &Edge, b: &Edge| {
        let key = |e: &Edge| e.id.as_str()[1..].parse::<u32>().unwrap_or(0);
        key(a).cmp(&key(b))
    });
    PlanarDiagram::new(name, nodes, edges)
}

/// Put a degree-2 vertex `vertex` on `edge`. The edge keeps its id up to
/// the new vertex; the remainder is `{edge}'`.
pub fn subdivide(d: &PlanarDiagram, edge: &EdgeId, vertex: &str) -> Result<PlanarDiagram, DiagramError> {
    let e = d.edges().iter().position(|x| &x.id == edge).ok_or_else(|| DiagramError::UnknownEdge(edge.clone()))?;
    let mut edges = d.edges().to_vec();
    let [a, b] = edges[e].ends.clone();
    let (wa, wb) = (h(format!("{vertex}.a")), h(format!("{vertex}.b")));
    edges[e].ends = [a, wa.clone()];
    edges.insert(e + 1, Edge { id: EdgeId::new(format!("{edge}'")), ends: [wb.clone(), b] });
    let mut nodes = d.nodes().to_vec();
    nodes.push(Node::vertex(vertex, vec![wa, wb]));
    PlanarDiagram::new(d.name(), nodes, edges)
}

/// Subdivide two distinct edges on the boundary of face `face` with new
/// vertices `u` and `v` and join them by an edge `chord` drawn inside it.
pub fn add_chord(
    d: &PlanarDiagram,
    face: usize,
    seg1: &EdgeId,
    seg2: &EdgeId,
    [u, v]: [&str; 2],
) -> Result<PlanarDiagram, DiagramError> {
    let faces = d.compute_faces();
    let boundary = &faces.get(face).ok_or(DiagramError::FaceOutOfRange { face, faces: faces.len() })?.boundary;
    if seg1 == seg2 {
        return Err(DiagramError::SameSegment(seg1.clone()));
    }
    let mut nodes = d.nodes().to_vec();
    let mut edges = d.edges().to_vec();
    for (seg, w) in [(seg1, u), (seg2, v)] {
        let e = edges.iter().position(|x| &x.id == seg).ok_or_else(|| DiagramError::UnknownEdge(seg.clone()))?;
        let start = boundary
            .iter()
            .find(|b| edges[e].ends.contains(b))
            .ok_or_else(|| DiagramError::SegmentNotOnFace { edge: seg.clone(), face })?
            .clone();
        let end = if edges[e].ends[0] == start { edges[e].ends[1].clone() } else { edges[e].ends[0].clone() };
        // heading along the boundary the face is on the left, so the chord
        // leaves clockwise-before the forward half
        let (wa, wb, wc) = (h(format!("{w}.a")), h(format!("{w}.b")), h(format!("{w}.c")));
        edges[e].ends = [start, wa.clone()];
        edges.push(Edge { id: EdgeId::new(format!("{seg}'")), ends: [wb.clone(), end] });
        nodes.push(Node::vertex(w, vec![wc, wb, wa]));
    }
    edges.push(Edge::new("chord", format!("{u}.c"), format!("{v}.c")));
    PlanarDiagram::new(d.name(), nodes, edges)
}

/// Rename every id of `d` by prefixing it.
pub fn prefixed(d: &PlanarDiagram, prefix: &str) -> PlanarDiagram {
    let hp = |x: &HalfEdgeId| h(format!("{prefix}{x}"));
    let nodes = d
        .nodes()
        .iter()
        .map(|n| Node {
            id: NodeId::new(format!("{prefix}{}", n.id)),
            kind: n.kind,
            rotation: n.rotation.iter().map(hp).collect(),
        })
        .collect();
    let edges = d
        .edges()
        .iter()
        .map(|e| Edge { id: EdgeId::new(format!("{prefix}{}", e.id)), ends: [hp(&e.ends[0]), hp(&e.ends[1])] })
        .collect();
    PlanarDiagram::new(d.name(), nodes, edges).expect("renaming keeps validity")
}

/// Disjoint union; ids must not collide (use [`prefixed`]).
pub fn disjoint_union(name: &str, a: &PlanarDiagram, b: &PlanarDiagram) -> Result<PlanarDiagram, DiagramError> {
    let nodes = a.nodes().iter().chain(b.nodes()).cloned().collect();
    let edges = a.edges().iter().chain(b.edges()).cloned().collect();
    PlanarDiagram::new(name, nodes, edges)
}

/// Identify vertex `vb` of `b` with vertex `va` of `a`. The rotation of the
/// merged vertex is `a`'s followed by `b`'s, which places `b` in the face
/// of `a` between the last and first half-edge of `va`. Ids of `b` other
/// than `vb` must not collide with `a`.
pub fn wedge(
    name: &str,
    a: &PlanarDiagram,
    va: &NodeId,
    b: &PlanarDiagram,
    vb: &NodeId,
) -> Result<PlanarDiagram, DiagramError> {
    let mut nodes: Vec<Node> = a.nodes().to_vec();
    let ia = nodes
        .iter()
        .position(|n| &n.id == va && n.kind == NodeKind::Vertex)
        .ok_or_else(|| DiagramError::UnknownNode(va.clone()))?;
    let nb = b.node(vb).filter(|n| n.kind.is_vertex()).ok_or_else(|| DiagramError::UnknownNode(vb.clone()))?;
    nodes[ia].rotation.extend(nb.rotation.iter().cloned());
    nodes.extend(b.nodes().iter().filter(|n| &n.id != vb).cloned());
    let edges = a.edges().iter().chain(b.edges()).cloned().collect();
    PlanarDiagram::new(name, nodes, edges)
}

pub const TREFOIL_PD: [[u32; 4]; 3] = [[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]];
pub const FIGURE_EIGHT_PD: [[u32; 4]; 4] = [[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]];
pub const CINQUEFOIL_PD: [[u32; 4]; 5] = [[2, 8, 3, 7], [4, 10, 5, 9], [6, 2, 7, 1], [8, 4, 9, 3], [10, 6, 1, 5]];
pub const THREE_TWIST_PD: [[u32; 4]; 5] = [[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]];

fn knot_with_vertex(name: &str, pd: &[[u32; 4]]) -> PlanarDiagram {
    let k = from_pd(name, pd).expect("valid PD code");
    subdivide(&k, &EdgeId::from("e1"), "w").expect("e1 exists")
}

/// Trefoil with one vertex on an arc: 1 vertex, 3 crossings, 7 diagram edges.
pub fn trefoil_with_vertex() -> PlanarDiagram {
    knot_with_vertex("trefoil-v", &TREFOIL_PD)
}

pub fn figure_eight_with_vertex() -> PlanarDiagram {
    knot_with_vertex("figure-eight-v", &FIGURE_EIGHT_PD)
}

pub fn cinquefoil_with_vertex() -> PlanarDiagram {
    knot_with_vertex("cinquefoil-v", &CINQUEFOIL_PD)
}

/// A θ-curve with `pd.len()` crossings: the knot diagram plus a chord
/// across its first face joining two new vertices.
pub fn theta_curve_from_knot(name: &str, pd: &[[u32; 4]]) -> PlanarDiagram {
    let k = from_pd(name, pd).expect("valid PD code");
    let faces = k.compute_faces();
    let edge_of =
        |half: &HalfEdgeId| k.edges().iter().find(|e| e.ends.contains(half)).expect("half-edge on an edge").id.clone();
    let (fi, a, b) = faces
        .iter()
        .enumerate()
        .find_map(|(i, f)| {
            let a = edge_of(&f.boundary[0]);
            f.boundary.iter().map(&edge_of).find(|e| *e != a).map(|b| (i, a, b))
        })
        .expect("a face with two distinct edges");
    add_chord(&k, fi, &a, &b, ["u", "v"]).expect("chord fits the face")
}

/// Two trefoils sharing their vertex.
pub fn wedge_of_two_trefoils() -> PlanarDiagram {
    let t = trefoil_with_vertex();
    let s = prefixed(&t, "b.");
    wedge("wedge-two-trefoils", &t, &NodeId::from("w"), &s, &NodeId::from("b.w")).expect("wedge")
}

/// Trivial θ₃ next to a trefoil, not linked.
pub fn theta3_plus_trefoil() -> PlanarDiagram {
    let a = prefixed(&theta(3), "t.");
    let b = prefixed(&trefoil_with_vertex(), "k.");
    disjoint_union("theta3-plus-trefoil", &a, &b).expect("disjoint ids")
}

/// Two unknotted loops joined by an edge.
pub fn handcuff() -> PlanarDiagram {
    PlanarDiagram::new(
        "handcuff",
        vec![
            Node::vertex("u", vec![h("ua".into()), h("ub".into()), h("um".into())]),
            Node::vertex("v", vec![h("vm".into()), h("va".into()), h("vb".into())]),
        ],
        vec![Edge::new("lu", "ua", "ub"), Edge::new("m", "um", "vm"), Edge::new("lv", "va", "vb")],
    )
    .expect("handcuff is well formed")
}

/// Planar K4: centre `o` inside the triangle `a` (top), `b` (bottom right),
/// `c` (bottom left).
pub fn tetrahedron() -> PlanarDiagram {
    let n = |id: &str, r: [&str; 3]| Node::vertex(id, r.iter().map(|s| h((*s).into())).collect());
    PlanarDiagram::new(
        "tetrahedron",
        vec![
            n("o", ["oa", "ob", "oc"]),
            n("a", ["ao", "ac", "ab"]),
            n("b", ["bc", "bo", "ba"]),
            n("c", ["ca", "co", "cb"]),
        ],
        vec![
            Edge::new("oa", "oa", "ao"),
            Edge::new("ob", "ob", "bo"),
            Edge::new("oc", "oc", "co"),
            Edge::new("ab", "ab", "ba"),
            Edge::new("bc", "bc", "cb"),
            Edge::new("ca", "ca", "ac"),
        ],
    )
    .expect("tetrahedron is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_diagrams_are_spherical() {
        let all = [
            theta(3),
            theta(8),
            bouquet(1),
            bouquet(5),
            trefoil_with_vertex(),
            figure_eight_with_vertex(),
            cinquefoil_with_vertex(),
            theta_curve_from_knot("theta-5x", &CINQUEFOIL_PD),
            theta_curve_from_knot("theta-5y", &THREE_TWIST_PD),
            wedge_of_two_trefoils(),
            theta3_plus_trefoil(),
            handcuff(),
            tetrahedron(),
        ];
        for d in &all {
            assert!(d.check_spherical().is_ok(), "{}", d.name());
            assert!(d.trace_strands().is_ok(), "{}", d.name());
        }
    }

    #[test]
    fn trefoil_with_vertex_counts() {
        let t = trefoil_with_vertex();
        assert_eq!((t.vertex_count(), t.crossing_count(), t.edge_count()), (1, 3, 7));
        assert_eq!(t.nodes().len(), 4);
        // Euler: F = 2 - V + E
        assert_eq!(t.compute_faces().len(), 5);
        let strands = t.trace_strands().unwrap();
        assert_eq!(strands.len(), 1);
        assert!(strands[0].is_loop());
        assert_eq!(strands[0].edges.len(), 7);
        assert!(t.is_cut_point_free());
    }

    #[test]
    fn vertexless_knot_is_rejected() {
        let k = from_pd("trefoil", &TREFOIL_PD).unwrap();
        assert!(k.check_spherical().is_ok());
        assert!(matches!(k.trace_strands(), Err(DiagramError::ClosedVertexFreeComponent { .. })));
    }

    #[test]
    fn five_crossing_theta_counts() {
        let d = theta_curve_from_knot("theta-5x", &CINQUEFOIL_PD);
        assert_eq!((d.vertex_count(), d.crossing_count()), (2, 5));
        assert_eq!(d.trace_strands().unwrap().len(), 3);
        assert_eq!(d.compute_faces().len(), 8);
        assert!(d.is_cut_point_free());
    }
}
