//! Arc presentations: binding points on an axis and one arc per page.
//!
//! Levels run `1..=m` from bottom to top. A binding point is either a graph
//! vertex or a pass-through point where an edge crosses the axis from one
//! page to another; pass-through points carry exactly two arc ends.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::decompose::CutDecomposition;
use crate::ids::NodeId;
use crate::multigraph::Multigraph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BindingKind {
    Vertex(NodeId),
    Pass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BindingPoint {
    pub level: u32,
    pub kind: BindingKind,
    /// Expected number of arc ends. Always 2 for pass-through points;
    /// `None` on a vertex means the degree is not known and not checked.
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArcPresentation {
    pub binding: Vec<BindingPoint>,
    /// Page `i + 1` holds the arc `pages[i]`, stored as `[low, high]`.
    pub pages: Vec<[u32; 2]>,
}

/// A presentation whose levels are arbitrary ordered integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawPresentation {
    pub points: Vec<(i64, BindingKind, Option<usize>)>,
    pub arcs: Vec<[i64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    LevelGap { position: usize, level: u32 },
    DegenerateArc { page: usize, level: u32 },
    ArcOutOfRange { page: usize, level: u32 },
    UnusedLevel { level: u32 },
    PassDegree { level: u32, found: usize },
    VertexDegree { level: u32, expected: usize, found: usize },
    DuplicateVertex(NodeId),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LevelGap { position, level } => {
                write!(f, "binding point {position} has level {level}, expected {}", position + 1)
            }
            Violation::DegenerateArc { page, level } => {
                write!(f, "degenerate arc: page {page} joins level {level} to itself")
            }
            Violation::ArcOutOfRange { page, level } => {
                write!(f, "page {page} uses level {level}, which is not on the binding")
            }
            Violation::UnusedLevel { level } => write!(f, "level {level} is not the end of any arc"),
            Violation::PassDegree { level, found } => {
                write!(f, "pass-through level {level} has {found} arc ends, expected 2")
            }
            Violation::VertexDegree { level, expected, found } => {
                write!(f, "vertex level {level} has {found} arc ends, expected {expected}")
            }
            Violation::DuplicateVertex(id) => write!(f, "vertex `{id}` appears twice on the binding"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresentationError {
    MissingSharedVertex(NodeId),
    ComponentCountMismatch { expected: usize, found: usize },
    Invalid(Vec<Violation>),
}

impl fmt::Display for PresentationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationError::MissingSharedVertex(id) => {
                write!(f, "vertex `{id}` is not on the binding of both presentations")
            }
            PresentationError::ComponentCountMismatch { expected, found } => {
                write!(f, "expected {expected} component presentations, got {found}")
            }
            PresentationError::Invalid(v) => {
                write!(f, "invalid presentation:")?;
                for x in v {
                    write!(f, " {x};")?;
                }
                Ok(())
            }
        }
    }
}

fn ordered(a: u32, b: u32) -> [u32; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Order-preserving relabelling of raw levels onto `1..=m`.
pub fn normalize_levels(raw: &RawPresentation) -> ArcPresentation {
    let mut points = raw.points.clone();
    points.sort_by_key(|p| p.0);
    let level = |t: i64| -> u32 {
        let i = points.binary_search_by_key(&t, |p| p.0).expect("arc end is a binding point");
        i as u32 + 1
    };
    ArcPresentation {
        binding: points
            .iter()
            .enumerate()
            .map(|(i, (_, kind, degree))| BindingPoint { level: i as u32 + 1, kind: kind.clone(), degree: *degree })
            .collect(),
        pages: raw.arcs.iter().map(|&[a, b]| ordered(level(a), level(b))).collect(),
    }
}

impl ArcPresentation {
    pub fn page_count(&self) -> usize {
        self.pages.len()
    }

    pub fn level_count(&self) -> usize {
        self.binding.len()
    }

    pub fn vertex_level(&self, id: &NodeId) -> Option<u32> {
        self.binding.iter().find(|p| p.kind == BindingKind::Vertex(id.clone())).map(|p| p.level)
    }

    /// Arc ends per level (index `level - 1`), ignoring out-of-range ends.
    fn end_counts(&self) -> Vec<usize> {
        let mut ends = vec![0usize; self.binding.len()];
        for arc in &self.pages {
            for &l in arc {
                if l >= 1 && (l as usize) <= ends.len() {
                    ends[l as usize - 1] += 1;
                }
            }
        }
        ends
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let m = self.binding.len() as u32;
        for (i, p) in self.binding.iter().enumerate() {
            if p.level != i as u32 + 1 {
                out.push(Violation::LevelGap { position: i, level: p.level });
            }
        }
        for (i, p) in self.binding.iter().enumerate() {
            if let BindingKind::Vertex(id) = &p.kind {
                if self.binding[..i].iter().any(|q| q.kind == p.kind) {
                    out.push(Violation::DuplicateVertex(id.clone()));
                }
            }
        }
        for (i, &[a, b]) in self.pages.iter().enumerate() {
            if a == b {
                out.push(Violation::DegenerateArc { page: i + 1, level: a });
            }
            for l in [a, b] {
                if l == 0 || l > m {
                    out.push(Violation::ArcOutOfRange { page: i + 1, level: l });
                }
            }
        }
        let ends = self.end_counts();
        for (p, &found) in self.binding.iter().zip(&ends) {
            if found == 0 {
                out.push(Violation::UnusedLevel { level: p.level });
            }
            match (&p.kind, p.degree) {
                (BindingKind::Pass, _) if found != 2 => out.push(Violation::PassDegree { level: p.level, found }),
                (BindingKind::Vertex(_), Some(expected)) if expected != found => {
                    out.push(Violation::VertexDegree { level: p.level, expected, found })
                }
                _ => {}
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// The abstract multigraph: vertex points joined by arc paths that are
    /// spliced at every pass-through point.
    pub fn reconstruct_multigraph(&self) -> Result<Multigraph, Vec<Violation>> {
        self.validate()?;
        let m = self.binding.len();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (i, arc) in self.pages.iter().enumerate() {
            for &l in arc {
                at[l as usize - 1].push(i);
            }
        }
        let other = |arc: usize, l: usize| -> usize {
            let [a, b] = self.pages[arc];
            if a as usize - 1 == l {
                b as usize - 1
            } else {
                a as usize - 1
            }
        };
        let vertex_levels: Vec<usize> =
            (0..m).filter(|&l| matches!(self.binding[l].kind, BindingKind::Vertex(_))).collect();
        let vertices: Vec<NodeId> = vertex_levels
            .iter()
            .map(|&l| match &self.binding[l].kind {
                BindingKind::Vertex(id) => id.clone(),
                BindingKind::Pass => unreachable!(),
            })
            .collect();
        let index = |l: usize| vertex_levels.iter().position(|&x| x == l).expect("vertex level");
        let mut used = vec![false; self.pages.len()];
        let mut edges = Vec::new();
        // walks from `start` along `arc`; returns the vertex level reached
        let walk = |mut arc: usize, start: usize, used: &mut Vec<bool>| -> usize {
            let mut level = start;
            loop {
                used[arc] = true;
                level = other(arc, level);
                if self.binding[level].kind != BindingKind::Pass {
                    return level;
                }
                match at[level].iter().find(|&&a| !used[a]) {
                    Some(&next) => arc = next,
                    None => return level,
                }
            }
        };
        for &v in &vertex_levels {
            for &arc in &at[v] {
                if !used[arc] {
                    let end = walk(arc, v, &mut used);
                    edges.push((index(v), index(end)));
                }
            }
        }
        let mut free_circles = 0;
        for arc in 0..self.pages.len() {
            if !used[arc] {
                let start = self.pages[arc][0] as usize - 1;
                walk(arc, start, &mut used);
                free_circles += 1;
            }
        }
        Ok(Multigraph { vertices, edges, free_circles })
    }

    /// Cyclic relabelling `l -> ((l - 1 + shift) mod m) + 1`.
    pub fn rotate_levels(&self, shift: i64) -> ArcPresentation {
        let m = self.binding.len() as i64;
        if m == 0 {
            return self.clone();
        }
        let map = |l: u32| ((l as i64 - 1 + shift).rem_euclid(m) + 1) as u32;
        let mut binding: Vec<BindingPoint> =
            self.binding.iter().map(|p| BindingPoint { level: map(p.level), ..p.clone() }).collect();
        binding.sort_by_key(|p| p.level);
        ArcPresentation { binding, pages: self.pages.iter().map(|&[a, b]| ordered(map(a), map(b))).collect() }
    }
}

/// Stack `p2` on top of `p1`. With a shared vertex both are first rotated
/// so that it sits at the top of `p1` and the bottom of `p2`, and the two
/// copies are merged into one binding point.
pub fn combine_presentations(
    p1: &ArcPresentation,
    p2: &ArcPresentation,
    shared: Option<&NodeId>,
) -> Result<ArcPresentation, PresentationError> {
    let m1 = p1.binding.len() as u32;
    match shared {
        None => {
            let mut binding = p1.binding.clone();
            binding.extend(p2.binding.iter().map(|p| BindingPoint { level: p.level + m1, ..p.clone() }));
            let mut pages = p1.pages.clone();
            pages.extend(p2.pages.iter().map(|&[a, b]| [a + m1, b + m1]));
            Ok(ArcPresentation { binding, pages })
        }
        Some(v) => {
            let missing = || PresentationError::MissingSharedVertex(v.clone());
            let s1 = p1.vertex_level(v).ok_or_else(missing)?;
            let s2 = p2.vertex_level(v).ok_or_else(missing)?;
            let a = p1.rotate_levels(m1 as i64 - s1 as i64);
            let b = p2.rotate_levels(1 - s2 as i64);
            let mut binding = a.binding;
            let bottom = &b.binding[0];
            let top = binding.last_mut().expect("p1 holds the shared vertex");
            top.degree = match (top.degree, bottom.degree) {
                (Some(x), Some(y)) => Some(x + y),
                _ => None,
            };
            let lift = m1 - 1;
            binding.extend(b.binding[1..].iter().map(|p| BindingPoint { level: p.level + lift, ..p.clone() }));
            let mut pages = a.pages;
            pages.extend(b.pages.iter().map(|&[x, y]| [x + lift, y + lift]));
            Ok(ArcPresentation { binding, pages })
        }
    }
}

/// Glue one presentation per component along the block forest (depth
/// first, children in component order), then stack the resulting pieces.
pub fn assemble_full(dec: &CutDecomposition, parts: &[ArcPresentation]) -> Result<ArcPresentation, PresentationError> {
    let t = dec.components.len();
    if parts.len() != t {
        return Err(PresentationError::ComponentCountMismatch { expected: t, found: parts.len() });
    }
    let mut adj: Vec<Vec<(usize, &NodeId)>> = vec![Vec::new(); t];
    for e in &dec.tree {
        adj[e.parent].push((e.child, &e.vertex));
        adj[e.child].push((e.parent, &e.vertex));
    }
    for a in &mut adj {
        a.sort_by_key(|x| x.0);
    }
    fn visit(
        c: usize,
        adj: &[Vec<(usize, &NodeId)>],
        parts: &[ArcPresentation],
        seen: &mut [bool],
        acc: &mut ArcPresentation,
    ) -> Result<(), PresentationError> {
        for &(next, vertex) in &adj[c] {
            if !seen[next] {
                seen[next] = true;
                *acc = combine_presentations(acc, &parts[next], Some(vertex))?;
                visit(next, adj, parts, seen, acc)?;
            }
        }
        Ok(())
    }
    let mut seen = vec![false; t];
    let mut total: Option<ArcPresentation> = None;
    for root in 0..t {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut acc = parts[root].clone();
        visit(root, &adj, parts, &mut seen, &mut acc)?;
        total = Some(match total {
            None => acc,
            Some(p) => combine_presentations(&p, &acc, None)?,
        });
    }
    Ok(total.unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex(level: u32, id: &str, degree: usize) -> BindingPoint {
        BindingPoint { level, kind: BindingKind::Vertex(NodeId::from(id)), degree: Some(degree) }
    }

    fn pass(level: u32) -> BindingPoint {
        BindingPoint { level, kind: BindingKind::Pass, degree: Some(2) }
    }

    /// The two-page presentation of an unknotted loop at `id`.
    fn loop_at(id: &str) -> ArcPresentation {
        ArcPresentation { binding: vec![vertex(1, id, 2), pass(2)], pages: vec![[1, 2], [1, 2]] }
    }

    fn theta3(u: &str, v: &str) -> ArcPresentation {
        ArcPresentation { binding: vec![vertex(1, u, 3), vertex(2, v, 3)], pages: vec![[1, 2]; 3] }
    }

    #[test]
    fn normalize_is_order_isomorphism() {
        let raw = RawPresentation {
            points: vec![
                (7, BindingKind::Pass, Some(2)),
                (-2, BindingKind::Vertex(NodeId::from("w")), Some(2)),
                (0, BindingKind::Pass, Some(2)),
            ],
            arcs: vec![[-2, 0], [0, 7], [7, -2]],
        };
        let p = normalize_levels(&raw);
        assert_eq!(p.binding.iter().map(|b| b.level).collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(p.binding[0].kind, BindingKind::Vertex(NodeId::from("w")));
        assert_eq!(p.pages, vec![[1, 2], [2, 3], [1, 3]]);
        let again = RawPresentation {
            points: p.binding.iter().map(|b| (b.level as i64, b.kind.clone(), b.degree)).collect(),
            arcs: p.pages.iter().map(|&[a, b]| [a as i64, b as i64]).collect(),
        };
        assert_eq!(normalize_levels(&again), p);
    }

    #[test]
    fn validation_catches_defects() {
        assert!(theta3("u", "v").validate().is_ok());
        let degenerate =
            ArcPresentation { binding: vec![vertex(1, "w", 2), pass(2), pass(3)], pages: vec![[3, 3], [1, 2], [1, 2]] };
        let errs = degenerate.validate().unwrap_err();
        assert!(errs.contains(&Violation::DegenerateArc { page: 1, level: 3 }));
        let crowded = ArcPresentation {
            binding: vec![vertex(1, "u", 1), pass(2), vertex(3, "v", 2)],
            pages: vec![[1, 2], [2, 3], [2, 3]],
        };
        assert!(crowded.validate().unwrap_err().contains(&Violation::PassDegree { level: 2, found: 3 }));
    }

    #[test]
    fn reconstruct_small_presentations() {
        let g = theta3("u", "v").reconstruct_multigraph().unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (2, 3));
        let g = loop_at("w").reconstruct_multigraph().unwrap();
        assert_eq!(g.edges, vec![(0, 0)]);
    }

    #[test]
    fn rotation_full_cycle_is_identity() {
        let p =
            ArcPresentation { binding: vec![vertex(1, "w", 2), pass(2), pass(3)], pages: vec![[1, 2], [2, 3], [1, 3]] };
        assert_eq!(p.rotate_levels(0), p);
        assert_eq!(p.rotate_levels(3), p);
        assert_eq!(p.rotate_levels(-3), p);
        let r = p.rotate_levels(2);
        assert!(r.validate().is_ok());
        assert_eq!(r.vertex_level(&NodeId::from("w")), Some(3));
        assert!(r.reconstruct_multigraph().unwrap().is_isomorphic(&p.reconstruct_multigraph().unwrap()));
    }

    #[test]
    fn combine_two_loops_at_a_vertex() {
        let p = combine_presentations(&loop_at("w"), &loop_at("w"), Some(&NodeId::from("w"))).unwrap();
        assert_eq!(p.page_count(), 4);
        assert_eq!(p.level_count(), 3);
        assert!(p.validate().is_ok());
        let g = p.reconstruct_multigraph().unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 2));
    }

    #[test]
    fn disjoint_stack_of_thetas() {
        let p = combine_presentations(&theta3("a", "b"), &theta3("c", "d"), None).unwrap();
        assert_eq!((p.page_count(), p.level_count()), (6, 4));
        assert!(p.validate().is_ok());
    }

    #[test]
    fn missing_shared_vertex() {
        let err = combine_presentations(&loop_at("w"), &loop_at("z"), Some(&NodeId::from("w")));
        assert_eq!(err, Err(PresentationError::MissingSharedVertex(NodeId::from("w"))));
    }
}
