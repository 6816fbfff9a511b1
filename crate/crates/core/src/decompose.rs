//! Cut-component decomposition and the page bound it predicts.
//!
//! A diagram is split along its connected components and then, repeatedly,
//! at every graph vertex that is a cut node in the detachment sense. Each
//! side of a cut vertex keeps its own copy of that vertex under the same
//! [`NodeId`], so the pieces can later be glued back at it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{DiagramError, Edge, Node, PlanarDiagram};
use crate::ids::{ComponentId, EdgeId, HalfEdgeId, NodeId};
use crate::presentation::ArcPresentation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutComponent {
    pub id: ComponentId,
    pub diagram: PlanarDiagram,
    pub is_bouquet: bool,
    pub crossings: usize,
    /// Graph edges, i.e. strands.
    pub edges: usize,
    pub vertices: usize,
}

impl CutComponent {
    /// `c + e`, plus one for a bouquet.
    pub fn predicted_pages(&self) -> usize {
        self.crossings + self.edges + usize::from(self.is_bouquet)
    }
}

/// Edge of the block forest: two components sharing the cut vertex `vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub child: usize,
    pub vertex: NodeId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutDecomposition {
    pub components: Vec<CutComponent>,
    pub tree: Vec<TreeEdge>,
}

impl CutDecomposition {
    pub fn bouquets(&self) -> usize {
        self.components.iter().filter(|c| c.is_bouquet).count()
    }

    pub fn crossings(&self) -> usize {
        self.components.iter().map(|c| c.crossings).sum()
    }

    pub fn edges(&self) -> usize {
        self.components.iter().map(|c| c.edges).sum()
    }

    pub fn bound(&self) -> usize {
        self.crossings() + self.edges() + self.bouquets()
    }
}

/// Restrict `d` to the half-edges in `keep`; nodes left without half-edges
/// are dropped.
fn restrict(d: &PlanarDiagram, keep: &[bool]) -> Result<PlanarDiagram, DiagramError> {
    let names: BTreeMap<&HalfEdgeId, usize> = (0..keep.len()).map(|h| (d.half_name(h), h)).collect();
    let kept = |x: &HalfEdgeId| keep[names[x]];
    let nodes: Vec<Node> = d
        .nodes()
        .iter()
        .filter_map(|n| {
            let rotation: Vec<HalfEdgeId> = n.rotation.iter().filter(|h| kept(h)).cloned().collect();
            (!rotation.is_empty()).then(|| Node { id: n.id.clone(), kind: n.kind, rotation })
        })
        .collect();
    let edges: Vec<Edge> = d.edges().iter().filter(|e| kept(&e.ends[0])).cloned().collect();
    debug_assert_eq!(keep.iter().filter(|&&k| k).count(), 2 * edges.len());
    PlanarDiagram::new(d.name(), nodes, edges)
}

/// Half-edge sets reachable from `seeds` without passing through `blocked`.
fn flood(d: &PlanarDiagram, seeds: &[usize], blocked: Option<usize>) -> Vec<bool> {
    let g = d.graph();
    let mut keep = vec![false; g.half_node.len()];
    let mut seen = vec![false; g.node_count()];
    let mut stack = Vec::new();
    let visit_half = |h: usize, keep: &mut Vec<bool>, stack: &mut Vec<usize>, seen: &mut Vec<bool>| {
        keep[h] = true;
        let t = g.twin(h);
        keep[t] = true;
        let m = g.half_node[t];
        if Some(m) != blocked && !seen[m] {
            seen[m] = true;
            stack.push(m);
        }
    };
    for &h in seeds {
        visit_half(h, &mut keep, &mut stack, &mut seen);
    }
    while let Some(n) = stack.pop() {
        for &h in &g.rot[n] {
            visit_half(h, &mut keep, &mut stack, &mut seen);
        }
    }
    keep
}

fn split_components(d: &PlanarDiagram) -> Result<Vec<PlanarDiagram>, DiagramError> {
    let g = d.graph();
    let (label, count) = g.components();
    (0..count)
        .map(|c| {
            let seed = g.live_nodes().find(|&n| label[n] == c).expect("nonempty component");
            restrict(d, &flood(d, &g.rot[seed], None))
        })
        .collect()
}

fn split_at_vertex(d: &PlanarDiagram, w: usize) -> Result<Vec<PlanarDiagram>, DiagramError> {
    let g = d.graph();
    let groups = g.stub_groups(w);
    let count = groups.iter().max().map_or(0, |m| m + 1);
    (0..count)
        .map(|k| {
            let seeds: Vec<usize> = g.rot[w].iter().zip(&groups).filter(|(_, &gk)| gk == k).map(|(&h, _)| h).collect();
            restrict(d, &flood(d, &seeds, Some(w)))
        })
        .collect()
}

/// Split `d` into cut-components. `d` should be reduced; crossings are
/// never split.
pub fn cut_decompose(d: &PlanarDiagram) -> Result<CutDecomposition, DiagramError> {
    let mut work = split_components(d)?;
    let mut done: Vec<PlanarDiagram> = Vec::new();
    while let Some(piece) = work.pop() {
        let g = piece.graph();
        let cut = g
            .cut_nodes()
            .into_iter()
            .filter(|&n| piece.nodes()[n].kind.is_vertex())
            .min_by(|&a, &b| piece.nodes()[a].id.cmp(&piece.nodes()[b].id));
        match cut {
            Some(w) => work.extend(split_at_vertex(&piece, w)?),
            None => done.push(piece),
        }
    }

    let key = |p: &PlanarDiagram| -> (NodeId, EdgeId) {
        let n = p.nodes().iter().map(|n| n.id.clone()).min().expect("component has a node");
        let e = p.edges().iter().map(|e| e.id.clone()).min().unwrap_or_else(|| EdgeId::from(""));
        (n, e)
    };
    done.sort_by_key(|p| key(p));

    let mut components = Vec::with_capacity(done.len());
    for (i, piece) in done.into_iter().enumerate() {
        let strands = piece.trace_strands()?;
        let vertices = piece.vertex_count();
        let id = ComponentId::new(format!("C{}", i + 1));
        components.push(CutComponent {
            crossings: piece.crossing_count(),
            edges: strands.len(),
            vertices,
            is_bouquet: vertices == 1 && strands.iter().all(|s| s.is_loop()),
            diagram: piece.with_name(format!("{}/{}", d.name(), id)),
            id,
        });
    }

    let mut sharing: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (i, c) in components.iter().enumerate() {
        for n in c.diagram.nodes().iter().filter(|n| n.kind.is_vertex()) {
            sharing.entry(n.id.clone()).or_default().push(i);
        }
    }
    let mut tree = Vec::new();
    for (vertex, comps) in sharing {
        for &child in comps.iter().skip(1) {
            tree.push(TreeEdge { parent: comps[0], child, vertex: vertex.clone() });
        }
    }
    tree.sort_by_key(|t| (t.parent, t.child));
    Ok(CutDecomposition { components, tree })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBound {
    pub id: ComponentId,
    pub crossings: usize,
    pub edges: usize,
    pub bouquet: bool,
    pub predicted_pages: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub components: Vec<ComponentBound>,
    pub crossings: usize,
    pub edges: usize,
    pub bouquets: usize,
    pub bound: usize,
    pub achieved_pages: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundExceeded {
    pub achieved: usize,
    pub bound: usize,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "presentation has {} pages, above the bound {}", self.achieved, self.bound)
    }
}

/// Per-component and total counts; with a presentation, its page count is
/// recorded and checked against the bound.
pub fn bound_report(dec: &CutDecomposition, assembled: Option<&ArcPresentation>) -> Result<BoundReport, BoundExceeded> {
    let components: Vec<ComponentBound> = dec
        .components
        .iter()
        .map(|c| ComponentBound {
            id: c.id.clone(),
            crossings: c.crossings,
            edges: c.edges,
            bouquet: c.is_bouquet,
            predicted_pages: c.predicted_pages(),
        })
        .collect();
    let bound = components.iter().map(|c| c.predicted_pages).sum();
    debug_assert_eq!(bound, dec.bound());
    let report = BoundReport {
        components,
        crossings: dec.crossings(),
        edges: dec.edges(),
        bouquets: dec.bouquets(),
        bound,
        achieved_pages: assembled.map(|p| p.page_count()),
    };
    match report.achieved_pages {
        Some(achieved) if achieved > bound => Err(BoundExceeded { achieved, bound }),
        _ => Ok(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn trivial_bouquet_splits_into_loops() {
        for b in 1..=5 {
            let dec = cut_decompose(&build::bouquet(b)).unwrap();
            assert_eq!(dec.components.len(), b);
            assert_eq!(dec.bouquets(), b);
            assert_eq!(dec.tree.len(), b - 1);
            assert!(dec.components.iter().all(|c| c.edges == 1 && c.crossings == 0));
            // star around the shared vertex
            assert!(dec.tree.iter().all(|t| t.parent == 0 && t.vertex.as_str() == "w"));
        }
    }

    #[test]
    fn theta_is_one_component() {
        let dec = cut_decompose(&build::theta(3)).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert!(!dec.components[0].is_bouquet);
        assert!(dec.tree.is_empty());
    }

    #[test]
    fn wedge_of_trefoils() {
        let dec = cut_decompose(&build::wedge_of_two_trefoils()).unwrap();
        assert_eq!(dec.components.len(), 2);
        assert_eq!(dec.bouquets(), 2);
        assert_eq!(dec.tree, vec![TreeEdge { parent: 0, child: 1, vertex: NodeId::from("w") }]);
        for c in &dec.components {
            assert_eq!((c.crossings, c.edges), (3, 1));
            assert!(c.diagram.is_cut_point_free());
            assert!(c.diagram.check_spherical().is_ok());
        }
    }

    #[test]
    fn handcuff_has_three_pieces() {
        let dec = cut_decompose(&build::handcuff()).unwrap();
        assert_eq!(dec.components.len(), 3);
        assert_eq!(dec.bouquets(), 2);
        assert_eq!(dec.tree.len(), 2);
        assert_eq!(dec.bound(), 5);
    }

    #[test]
    fn bounds_for_sharp_examples() {
        let bound = |d: &PlanarDiagram| bound_report(&cut_decompose(d).unwrap(), None).unwrap().bound;
        assert_eq!(bound(&build::trefoil_with_vertex()), 5);
        assert_eq!(bound(&build::theta(5)), 5);
        assert_eq!(bound(&build::bouquet(3)), 6);
        assert_eq!(bound(&build::figure_eight_with_vertex()), 6);
    }

    #[test]
    fn decomposition_is_idempotent_on_components() {
        let d = build::theta3_plus_trefoil();
        let dec = cut_decompose(&d).unwrap();
        assert_eq!(dec.components.len(), 2);
        for c in &dec.components {
            let again = cut_decompose(&c.diagram).unwrap();
            assert_eq!(again.components.len(), 1);
            assert_eq!(again.components[0].diagram.nodes(), c.diagram.nodes());
            assert_eq!(again.components[0].diagram.edges(), c.diagram.edges());
        }
    }
}
