//! Local diagram moves that add crossings: Reidemeister II fingers and
//! Reidemeister I kinks. Both leave the depicted spatial graph unchanged.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{DiagramError, Edge, Node, OverPair, PlanarDiagram};
use crate::ids::{EdgeId, HalfEdgeId};

/// Smallest `tag{n}.` prefix not used by any id of `d`.
fn fresh_prefix(d: &PlanarDiagram, tag: &str) -> String {
    let taken = |p: &str| {
        d.nodes().iter().any(|n| n.id.as_str().starts_with(p) || n.rotation.iter().any(|h| h.as_str().starts_with(p)))
            || d.edges().iter().any(|e| e.id.as_str().starts_with(p))
    };
    (1..).map(|n| format!("{tag}{n}.")).find(|p| !taken(p)).expect("unbounded search")
}

/// Push a finger of `seg1` across face `face` (index into
/// [`PlanarDiagram::compute_faces`]) and over `seg2`, creating two
/// crossings in Reidemeister II position. `seg1` is the over strand.
pub fn insert_r2(d: &PlanarDiagram, face: usize, seg1: &EdgeId, seg2: &EdgeId) -> Result<PlanarDiagram, DiagramError> {
    let g = d.graph();
    let faces = g.faces();
    let orbit = faces.get(face).ok_or(DiagramError::FaceOutOfRange { face, faces: faces.len() })?;
    if seg1 == seg2 {
        return Err(DiagramError::SameSegment(seg1.clone()));
    }
    let mut directed = [0usize; 2];
    for (slot, seg) in [seg1, seg2].into_iter().enumerate() {
        let e = d.edge_idx(seg).ok_or_else(|| DiagramError::UnknownEdge(seg.clone()))?;
        directed[slot] = *orbit
            .iter()
            .find(|&&h| g.half_edge[h] == e)
            .ok_or_else(|| DiagramError::SegmentNotOnFace { edge: seg.clone(), face })?;
    }
    // The face lies to the left of both directed half-edges: seg1 runs
    // along its bottom heading east, seg2 along its top heading west. The
    // finger rises from seg1, crosses seg2 at `x` (west) and returns at `y`.
    let [a1, b1] = [directed[0], g.twin(directed[0])].map(|h| d.half_name(h).clone());
    let [a2, b2] = [directed[1], g.twin(directed[1])].map(|h| d.half_name(h).clone());
    let p = fresh_prefix(d, "r2_");
    let n = |s: &str| HalfEdgeId::new(format!("{p}{s}"));
    let mut nodes: Vec<Node> = d.nodes().to_vec();
    nodes.push(Node::crossing(format!("{p}x"), vec![n("x0"), n("x1"), n("x2"), n("x3")], OverPair::ZeroTwo));
    nodes.push(Node::crossing(format!("{p}y"), vec![n("y0"), n("y1"), n("y2"), n("y3")], OverPair::ZeroTwo));

    let mut edges: Vec<Edge> = d.edges().to_vec();
    for e in edges.iter_mut() {
        if &e.id == seg1 {
            e.ends = [a1.clone(), n("x2")];
        } else if &e.id == seg2 {
            e.ends = [a2.clone(), n("y1")];
        }
    }
    edges.push(Edge { id: EdgeId::new(format!("{p}m1")), ends: [n("x0"), n("y0")] });
    edges.push(Edge { id: EdgeId::new(format!("{p}b1")), ends: [n("y2"), b1] });
    edges.push(Edge { id: EdgeId::new(format!("{p}m2")), ends: [n("y3"), n("x1")] });
    edges.push(Edge { id: EdgeId::new(format!("{p}b2")), ends: [n("x3"), b2] });
    PlanarDiagram::new(d.name(), nodes, edges)
}

/// Side of the directed edge (first end towards second) the kink loop
/// is drawn on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkSide {
    Left,
    Right,
}

/// Insert a Reidemeister I kink (a nugatory crossing) on `edge`.
pub fn add_kink(
    d: &PlanarDiagram,
    edge: &EdgeId,
    side: KinkSide,
    over: OverPair,
) -> Result<PlanarDiagram, DiagramError> {
    let e = d.edge_idx(edge).ok_or_else(|| DiagramError::UnknownEdge(edge.clone()))?;
    let [ha, hb] = d.edges()[e].ends.clone();
    let p = fresh_prefix(d, "k_");
    let n = |s: &str| HalfEdgeId::new(format!("{p}{s}"));
    let mut nodes = d.nodes().to_vec();
    nodes.push(Node::crossing(format!("{p}x"), vec![n("0"), n("1"), n("2"), n("3")], over));
    let mut edges = d.edges().to_vec();
    edges[e].ends = [ha, n("0")];
    let (lp, out) = match side {
        KinkSide::Left => ([n("1"), n("2")], n("3")),
        KinkSide::Right => ([n("2"), n("3")], n("1")),
    };
    edges.push(Edge { id: EdgeId::new(format!("{p}loop")), ends: lp });
    edges.push(Edge { id: EdgeId::new(format!("{p}out")), ends: [out, hb] });
    PlanarDiagram::new(d.name(), nodes, edges)
}
