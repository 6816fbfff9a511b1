//! Planar diagrams of spatial graphs.
//!
//! A [`PlanarDiagram`] is a rotation system on a plane multigraph whose
//! nodes are graph vertices or crossings. Rotations are listed clockwise.
//! Faces are the orbits of `h -> succ_cw(twin(h))`; with that convention the
//! face lies to the left of each directed half-edge of its boundary.

mod moves;
mod reduce;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use moves::{add_kink, insert_r2, KinkSide};
pub use reduce::{nugatory_crossings, reduce_diagram, untwist};

use crate::ids::{EdgeId, HalfEdgeId, NodeId, StrandId};
use crate::multigraph::Multigraph;
use crate::plane::{Kind, PlaneGraph};

/// Which pair of opposite rotation positions carries the over strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverPair {
    /// Positions 0 and 2.
    ZeroTwo,
    /// Positions 1 and 3.
    OneThree,
}

impl OverPair {
    pub fn as_str(self) -> &'static str {
        match self {
            OverPair::ZeroTwo => "02",
            OverPair::OneThree => "13",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "02" => Some(OverPair::ZeroTwo),
            "13" => Some(OverPair::OneThree),
            _ => None,
        }
    }

    /// Whether rotation position `pos` lies on the over strand.
    pub fn is_over(self, pos: usize) -> bool {
        match self {
            OverPair::ZeroTwo => pos.is_multiple_of(2),
            OverPair::OneThree => pos % 2 == 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            OverPair::ZeroTwo => OverPair::OneThree,
            OverPair::OneThree => OverPair::ZeroTwo,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Vertex,
    Crossing(OverPair),
}

impl NodeKind {
    pub fn is_vertex(self) -> bool {
        matches!(self, NodeKind::Vertex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    /// Clockwise.
    pub rotation: Vec<HalfEdgeId>,
}

impl Node {
    pub fn vertex(id: impl Into<NodeId>, rotation: Vec<HalfEdgeId>) -> Self {
        Self { id: id.into(), kind: NodeKind::Vertex, rotation }
    }

    pub fn crossing(id: impl Into<NodeId>, rotation: Vec<HalfEdgeId>, over: OverPair) -> Self {
        Self { id: id.into(), kind: NodeKind::Crossing(over), rotation }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub ends: [HalfEdgeId; 2],
}

impl Edge {
    pub fn new(id: impl Into<EdgeId>, a: impl Into<HalfEdgeId>, b: impl Into<HalfEdgeId>) -> Self {
        Self { id: id.into(), ends: [a.into(), b.into()] }
    }
}

/// A face as a cyclic sequence of directed half-edges. A half-edge is read
/// as pointing away from the node whose rotation lists it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub boundary: Vec<HalfEdgeId>,
}

/// A maximal edge path running straight through crossings; the strands
/// of a diagram are the edges of the spatial graph it depicts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub id: StrandId,
    pub edges: Vec<EdgeId>,
    pub ends: [NodeId; 2],
}

impl Strand {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    DuplicateNode(NodeId),
    DuplicateEdge(EdgeId),
    /// Listed twice in rotations, or twice among edge ends.
    DuplicateHalfEdge(HalfEdgeId),
    /// In a rotation but on no edge, or on an edge but in no rotation.
    DanglingHalfEdge(HalfEdgeId),
    CrossingArity {
        node: NodeId,
        found: usize,
    },
    IsolatedVertex(NodeId),
    /// The component containing `component` (its smallest node id) is not
    /// a sphere.
    Nonplanar {
        component: NodeId,
    },
    /// A strand closes up through crossings only.
    ClosedVertexFreeComponent {
        edge: EdgeId,
    },
    UnknownNode(NodeId),
    UnknownEdge(EdgeId),
    NotACrossing(NodeId),
    NotNugatory(NodeId),
    FaceOutOfRange {
        face: usize,
        faces: usize,
    },
    SameSegment(EdgeId),
    SegmentNotOnFace {
        edge: EdgeId,
        face: usize,
    },
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::DuplicateNode(id) => write!(f, "duplicate node id `{id}`"),
            DiagramError::DuplicateEdge(id) => write!(f, "duplicate edge id `{id}`"),
            DiagramError::DuplicateHalfEdge(id) => write!(f, "duplicate half-edge `{id}`"),
            DiagramError::DanglingHalfEdge(id) => write!(f, "dangling half-edge `{id}`"),
            DiagramError::CrossingArity { node, found } => {
                write!(f, "crossing arity: `{node}` lists {found} half-edges, expected 4")
            }
            DiagramError::IsolatedVertex(id) => write!(f, "vertex `{id}` has no half-edges"),
            DiagramError::Nonplanar { component } => {
                write!(f, "nonplanar rotation system in the component of `{component}`")
            }
            DiagramError::ClosedVertexFreeComponent { edge } => {
                write!(f, "closed vertex-free component through edge `{edge}`: add a vertex on every knotted circle")
            }
            DiagramError::UnknownNode(id) => write!(f, "unknown node `{id}`"),
            DiagramError::UnknownEdge(id) => write!(f, "unknown edge `{id}`"),
            DiagramError::NotACrossing(id) => write!(f, "`{id}` is not a crossing"),
            DiagramError::NotNugatory(id) => write!(f, "crossing `{id}` is not nugatory"),
            DiagramError::FaceOutOfRange { face, faces } => {
                write!(f, "face {face} out of range ({faces} faces)")
            }
            DiagramError::SameSegment(id) => {
                write!(f, "both segments lie on edge `{id}`; choose distinct edges")
            }
            DiagramError::SegmentNotOnFace { edge, face } => {
                write!(f, "edge `{edge}` is not on the boundary of face {face}")
            }
        }
    }
}

/// A structurally valid planar diagram.
///
/// Construction checks the half-edge bijection, crossing arity and vertex
/// degree. Sphericity and strand structure are checked separately by
/// [`PlanarDiagram::check_spherical`] and [`PlanarDiagram::trace_strands`].
#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    name: String,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    graph: PlaneGraph,
    half_names: Vec<HalfEdgeId>,
    node_index: BTreeMap<NodeId, usize>,
}

impl PartialEq for PlanarDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for PlanarDiagram {}

impl PlanarDiagram {
    pub fn new(name: impl Into<String>, nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self, DiagramError> {
        let mut node_index = BTreeMap::new();
        let mut half_index: BTreeMap<HalfEdgeId, usize> = BTreeMap::new();
        let mut half_names = Vec::new();
        let mut half_node = Vec::new();
        let mut rot = Vec::with_capacity(nodes.len());
        let mut kind = Vec::with_capacity(nodes.len());
        for (i, node) in nodes.iter().enumerate() {
            if node_index.insert(node.id.clone(), i).is_some() {
                return Err(DiagramError::DuplicateNode(node.id.clone()));
            }
            match node.kind {
                NodeKind::Crossing(over) => {
                    if node.rotation.len() != 4 {
                        return Err(DiagramError::CrossingArity { node: node.id.clone(), found: node.rotation.len() });
                    }
                    kind.push(Kind::Crossing(over));
                }
                NodeKind::Vertex => {
                    if node.rotation.is_empty() {
                        return Err(DiagramError::IsolatedVertex(node.id.clone()));
                    }
                    kind.push(Kind::Vertex);
                }
            }
            let mut r = Vec::with_capacity(node.rotation.len());
            for h in &node.rotation {
                let idx = half_names.len();
                if half_index.insert(h.clone(), idx).is_some() {
                    return Err(DiagramError::DuplicateHalfEdge(h.clone()));
                }
                half_names.push(h.clone());
                half_node.push(i);
                r.push(idx);
            }
            rot.push(r);
        }

        let mut edge_seen = BTreeMap::new();
        let mut half_edge = vec![usize::MAX; half_names.len()];
        let mut edge_ends = Vec::with_capacity(edges.len());
        for (e, edge) in edges.iter().enumerate() {
            if edge_seen.insert(edge.id.clone(), e).is_some() {
                return Err(DiagramError::DuplicateEdge(edge.id.clone()));
            }
            let mut ends = [0usize; 2];
            for (slot, h) in edge.ends.iter().enumerate() {
                let idx = *half_index.get(h).ok_or_else(|| DiagramError::DanglingHalfEdge(h.clone()))?;
                if half_edge[idx] != usize::MAX {
                    return Err(DiagramError::DuplicateHalfEdge(h.clone()));
                }
                half_edge[idx] = e;
                ends[slot] = idx;
            }
            edge_ends.push(ends);
        }
        if let Some(h) = half_edge.iter().position(|&e| e == usize::MAX) {
            return Err(DiagramError::DanglingHalfEdge(half_names[h].clone()));
        }

        let graph = PlaneGraph {
            node_alive: vec![true; kind.len()],
            kind,
            rot,
            half_node,
            half_edge,
            edge_alive: vec![true; edge_ends.len()],
            edge_ends,
        };
        Ok(Self { name: name.into(), nodes, edges, graph, half_names, node_index })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node(&self, id: &NodeId) -> Option<&Node> {
        self.node_index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.kind.is_vertex()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.len() - self.vertex_count()
    }

    /// Number of diagram edges (segments between nodes), not graph edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn graph(&self) -> &PlaneGraph {
        &self.graph
    }

    pub(crate) fn half_name(&self, h: usize) -> &HalfEdgeId {
        &self.half_names[h]
    }

    pub(crate) fn node_idx(&self, id: &NodeId) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub(crate) fn edge_idx(&self, id: &EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| &e.id == id)
    }

    pub fn compute_faces(&self) -> Vec<Face> {
        self.graph
            .faces()
            .into_iter()
            .map(|orbit| Face { boundary: orbit.into_iter().map(|h| self.half_names[h].clone()).collect() })
            .collect()
    }

    /// Node ids grouped by connected component; components are ordered by
    /// their smallest node id and ids within a component are sorted.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let (label, count) = self.graph.components();
        let mut groups: Vec<Vec<NodeId>> = vec![Vec::new(); count];
        for (i, node) in self.nodes.iter().enumerate() {
            groups[label[i]].push(node.id.clone());
        }
        for g in &mut groups {
            g.sort();
        }
        groups.sort();
        groups
    }

    pub fn check_spherical(&self) -> Result<(), DiagramError> {
        match self.graph.first_nonspherical() {
            None => Ok(()),
            Some(bad) => {
                let (label, _) = self.graph.components();
                let component = (0..self.nodes.len())
                    .filter(|&i| label[i] == bad)
                    .map(|i| self.nodes[i].id.clone())
                    .min()
                    .expect("component has a node");
                Err(DiagramError::Nonplanar { component })
            }
        }
    }

    /// Partition the diagram edges into strands, walking straight through
    /// crossings (position `i` continues at position `i + 2`).
    pub fn trace_strands(&self) -> Result<Vec<Strand>, DiagramError> {
        let g = &self.graph;
        let mut used = vec![false; self.edges.len()];
        let mut strands = Vec::new();
        for (n, node) in self.nodes.iter().enumerate() {
            if !node.kind.is_vertex() {
                continue;
            }
            for &start in &g.rot[n] {
                if used[g.half_edge[start]] {
                    continue;
                }
                let mut edges = Vec::new();
                let mut cur = start;
                let end = loop {
                    let e = g.half_edge[cur];
                    used[e] = true;
                    edges.push(self.edges[e].id.clone());
                    let t = g.twin(cur);
                    let m = g.half_node[t];
                    if g.kind[m] == Kind::Vertex {
                        break m;
                    }
                    cur = g.rot[m][(g.position(t) + 2) % 4];
                };
                strands.push(Strand {
                    id: StrandId::new(alloc::format!("s{}", strands.len() + 1)),
                    edges,
                    ends: [node.id.clone(), self.nodes[end].id.clone()],
                });
            }
        }
        if let Some(edge) = (0..self.edges.len()).filter(|&e| !used[e]).map(|e| self.edges[e].id.clone()).min() {
            return Err(DiagramError::ClosedVertexFreeComponent { edge });
        }
        Ok(strands)
    }

    /// The abstract multigraph depicted: vertex-kind nodes joined by strands.
    pub fn multigraph(&self) -> Result<Multigraph, DiagramError> {
        let strands = self.trace_strands()?;
        let vertices: Vec<NodeId> = self.nodes.iter().filter(|n| n.kind.is_vertex()).map(|n| n.id.clone()).collect();
        let idx = |id: &NodeId| vertices.iter().position(|v| v == id).expect("strand end is a vertex");
        let edges = strands.iter().map(|s| (idx(&s.ends[0]), idx(&s.ends[1]))).collect();
        Ok(Multigraph::new(vertices, edges))
    }

    /// Cut nodes of the underlying plane graph (crossings taken as
    /// 4-valent nodes) under detachment semantics.
    pub fn cut_nodes(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.graph.cut_nodes().into_iter().map(|n| self.nodes[n].id.clone()).collect();
        ids.sort();
        ids
    }

    pub fn is_cut_point_free(&self) -> bool {
        self.graph.cut_nodes().is_empty()
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    fn h(s: &str) -> HalfEdgeId {
        HalfEdgeId::from(s)
    }

    pub(crate) fn theta3(reversed: bool) -> PlanarDiagram {
        let v_rot = if reversed { vec![h("c'"), h("b'"), h("a'")] } else { vec![h("a'"), h("b'"), h("c'")] };
        PlanarDiagram::new(
            "theta3",
            vec![Node::vertex("u", vec![h("a"), h("b"), h("c")]), Node::vertex("v", v_rot)],
            vec![Edge::new("a", "a", "a'"), Edge::new("b", "b", "b'"), Edge::new("c", "c", "c'")],
        )
        .unwrap()
    }

    fn one_loop(prefix: &str) -> (Node, Edge) {
        let a = alloc::format!("{prefix}a");
        let b = alloc::format!("{prefix}b");
        (
            Node::vertex(prefix, vec![h(&a), h(&b)]),
            Edge::new(alloc::format!("{prefix}e").as_str(), a.as_str(), b.as_str()),
        )
    }

    #[test]
    fn theta3_parses_and_has_three_faces() {
        let d = theta3(true);
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 3);
        assert_eq!(d.compute_faces().len(), 3);
        assert!(d.check_spherical().is_ok());
    }

    #[test]
    fn unreversed_theta_is_toroidal() {
        let d = theta3(false);
        assert_eq!(d.compute_faces().len(), 1);
        assert_eq!(d.check_spherical(), Err(DiagramError::Nonplanar { component: NodeId::from("u") }));
    }

    #[test]
    fn single_loop_has_two_faces_and_no_cut_node() {
        let (n, e) = one_loop("w");
        let d = PlanarDiagram::new("loop", vec![n], vec![e]).unwrap();
        assert_eq!(d.compute_faces().len(), 2);
        assert!(d.cut_nodes().is_empty());
    }

    #[test]
    fn disjoint_loops_checked_per_component() {
        let (n1, e1) = one_loop("p");
        let (n2, e2) = one_loop("q");
        let d = PlanarDiagram::new("two", vec![n1, n2], vec![e1, e2]).unwrap();
        assert!(d.check_spherical().is_ok());
        assert_eq!(d.connected_components().len(), 2);
    }

    #[test]
    fn structural_errors() {
        let bad_arity = PlanarDiagram::new(
            "x",
            vec![
                Node::crossing("x", vec![h("a"), h("b"), h("c")], OverPair::ZeroTwo),
                Node::vertex("v", vec![h("a'"), h("b'"), h("c'")]),
            ],
            vec![Edge::new("a", "a", "a'"), Edge::new("b", "b", "b'"), Edge::new("c", "c", "c'")],
        );
        assert!(matches!(bad_arity, Err(DiagramError::CrossingArity { found: 3, .. })));

        let dangling =
            PlanarDiagram::new("d", vec![Node::vertex("v", vec![h("a"), h("b")])], vec![Edge::new("e", "a", "z")]);
        assert_eq!(dangling.unwrap_err(), DiagramError::DanglingHalfEdge(h("z")));

        let unused = PlanarDiagram::new(
            "d",
            vec![Node::vertex("v", vec![h("a"), h("b"), h("c")])],
            vec![Edge::new("e", "a", "b")],
        );
        assert_eq!(unused.unwrap_err(), DiagramError::DanglingHalfEdge(h("c")));

        let dup = PlanarDiagram::new(
            "d",
            vec![Node::vertex("v", vec![h("a"), h("b")]), Node::vertex("v", vec![h("c"), h("d")])],
            vec![Edge::new("e", "a", "b"), Edge::new("f", "c", "d")],
        );
        assert_eq!(dup.unwrap_err(), DiagramError::DuplicateNode(NodeId::from("v")));

        let iso = PlanarDiagram::new("d", vec![Node::vertex("v", vec![])], vec![]);
        assert_eq!(iso.unwrap_err(), DiagramError::IsolatedVertex(NodeId::from("v")));
    }

    #[test]
    fn cut_nodes_of_small_graphs() {
        // wedge of two loops
        let d = PlanarDiagram::new(
            "wedge",
            vec![Node::vertex("w", vec![h("a"), h("b"), h("c"), h("d")])],
            vec![Edge::new("l1", "a", "b"), Edge::new("l2", "c", "d")],
        )
        .unwrap();
        assert_eq!(d.cut_nodes(), vec![NodeId::from("w")]);
        assert!(!d.is_cut_point_free());

        // loop plus a pendant edge
        let d = PlanarDiagram::new(
            "lollipop",
            vec![Node::vertex("w", vec![h("a"), h("b"), h("c")]), Node::vertex("z", vec![h("c'")])],
            vec![Edge::new("l", "a", "b"), Edge::new("s", "c", "c'")],
        )
        .unwrap();
        assert_eq!(d.cut_nodes(), vec![NodeId::from("w")]);

        // two triangles sharing x
        let tri = |p: &str, q: &str| -> (Vec<Node>, Vec<Edge>) {
            let n = |s: &str| alloc::format!("{p}{s}");
            (
                vec![
                    Node::vertex(n("1").as_str(), vec![h(&n("1a")), h(&n("1b"))]),
                    Node::vertex(n("2").as_str(), vec![h(&n("2a")), h(&n("2b"))]),
                ],
                vec![
                    Edge::new(n("e1").as_str(), n("1a").as_str(), n("2b").as_str()),
                    Edge::new(n("e2").as_str(), n("2a").as_str(), alloc::format!("x{q}1").as_str()),
                    Edge::new(n("e3").as_str(), alloc::format!("x{q}2").as_str(), n("1b").as_str()),
                ],
            )
        };
        let (mut nodes, mut edges) = tri("p", "p");
        let (n2, e2) = tri("q", "q");
        nodes.extend(n2);
        edges.extend(e2);
        nodes.push(Node::vertex("x", vec![h("xp1"), h("xp2"), h("xq1"), h("xq2")]));
        let d = PlanarDiagram::new("bowtie", nodes, edges).unwrap();
        assert!(d.check_spherical().is_ok());
        assert_eq!(d.cut_nodes(), vec![NodeId::from("x")]);
        assert!(theta3(true).is_cut_point_free());
    }

    #[test]
    fn theta_strands() {
        let strands = theta3(true).trace_strands().unwrap();
        assert_eq!(strands.len(), 3);
        assert!(strands.iter().all(|s| !s.is_loop()));
    }
}
