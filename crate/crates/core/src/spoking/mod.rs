//! The spoking construction on one cut-component.
//!
//! The state is a plane graph with a distinguished pivot vertex. Every
//! half-edge at the pivot carries a level token. Pulling an edge into the
//! pivot moves the crossing or vertex at its far end onto the axis, and
//! loops at the pivot with an end at the top or bottom of the token range
//! are turned into spokes. When no edge is left, each spoke is one page.

mod run;

pub use run::{conservation_check, run_spoking, ConservationViolation, SrvCounts, StepRecord, StepTrace};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::diagram::PlanarDiagram;
use crate::ids::{EdgeId, HalfEdgeId, NodeId};
use crate::plane::{Kind, PlaneGraph};
use crate::presentation::{BindingKind, RawPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LevelToken(pub i64);

impl fmt::Display for LevelToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenInfo {
    pub kind: BindingKind,
    /// Arc ends the token must carry in the final presentation.
    pub arc_ends: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spoke {
    pub ends: [LevelToken; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    Type1,
    Type2,
    Type3,
}

impl MoveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MoveKind::Type1 => "T1",
            MoveKind::Type2 => "T2",
            MoveKind::Type3 => "T3",
        }
    }
}

/// Order in which candidate pulling edges are tried.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CandidateOrder {
    /// Clockwise around the pivot, starting at its smallest half-edge id.
    #[default]
    Clockwise,
    /// A fresh random permutation at every step, from a seeded ChaCha8 stream.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpokingError {
    NoVertex,
    PivotNotInComponent(NodeId),
    PivotIsCrossing(NodeId),
    UnknownEdge(EdgeId),
    NotIncidentToPivot(EdgeId),
    PulledLoop(EdgeId),
    FarNodeNotCrossing(EdgeId),
    FarNodeNotVertex(EdgeId),
    NotALoopAtPivot(EdgeId),
    LoopAtPivot(EdgeId),
    NoPullingEdge,
    NotCutPointFree { step: usize, nodes: Vec<NodeId> },
    BouquetReached { step: usize },
    NoAdmissibleEdge { step: usize, dump: String },
    TokenImbalance { token: LevelToken, expected: usize, found: usize },
    Nonplanar { step: usize },
    NoProgress { step: usize },
}

impl fmt::Display for SpokingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpokingError::NoVertex => write!(f, "component has no vertex to use as pivot"),
            SpokingError::PivotNotInComponent(id) => write!(f, "pivot `{id}` is not a node of the component"),
            SpokingError::PivotIsCrossing(id) => write!(f, "pivot `{id}` is a crossing"),
            SpokingError::UnknownEdge(id) => write!(f, "no live edge `{id}`"),
            SpokingError::NotIncidentToPivot(id) => write!(f, "edge `{id}` does not end at the pivot"),
            SpokingError::PulledLoop(id) => write!(f, "edge `{id}` is a loop and cannot be pulled"),
            SpokingError::FarNodeNotCrossing(id) => write!(f, "far end of `{id}` is not a crossing"),
            SpokingError::FarNodeNotVertex(id) => write!(f, "far end of `{id}` is not a vertex"),
            SpokingError::NotALoopAtPivot(id) => write!(f, "edge `{id}` is not a loop at the pivot"),
            SpokingError::LoopAtPivot(id) => {
                write!(f, "loop `{id}` at the pivot could not be spoked off")
            }
            SpokingError::NoPullingEdge => write!(f, "no edge at the pivot"),
            SpokingError::NotCutPointFree { step, nodes } => {
                write!(f, "state after step {step} has cut nodes {nodes:?}")
            }
            SpokingError::BouquetReached { step } => {
                write!(f, "non-bouquet run became a bouquet diagram at step {step}")
            }
            SpokingError::NoAdmissibleEdge { step, dump } => {
                write!(f, "no pulling edge keeps the state cut-point free at step {step}\n{dump}")
            }
            SpokingError::TokenImbalance { token, expected, found } => {
                write!(f, "token {token} carries {found} arc ends, registered with {expected}")
            }
            SpokingError::Nonplanar { step } => write!(f, "state after step {step} is not spherical"),
            SpokingError::NoProgress { step } => write!(f, "step {step} did not shrink the diagram"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    Half(usize),
    Spoke(usize),
}

/// A plane graph that is a regular diagram away from the pivot, plus the
/// spokes already attached to the pivot.
#[derive(Clone, Debug)]
pub struct GraphSpokeDiagram {
    name: String,
    graph: PlaneGraph,
    half_names: Vec<HalfEdgeId>,
    edge_ids: Vec<EdgeId>,
    node_ids: Vec<NodeId>,
    pivot: usize,
    /// Clockwise order at the pivot: live half-edges and spoke slots.
    wheel: Vec<Slot>,
    level: Vec<Option<LevelToken>>,
    registry: BTreeMap<LevelToken, TokenInfo>,
    /// Token created by the latest move; always the highest or lowest.
    newest: LevelToken,
    spokes: Vec<Spoke>,
}

impl GraphSpokeDiagram {
    /// Initial state. Without an explicit pivot the smallest vertex id is used.
    pub fn new(d: &PlanarDiagram, pivot: Option<&NodeId>) -> Result<Self, SpokingError> {
        let pivot = match pivot {
            Some(id) => {
                let n = d.node_idx(id).ok_or_else(|| SpokingError::PivotNotInComponent(id.clone()))?;
                if !d.nodes()[n].kind.is_vertex() {
                    return Err(SpokingError::PivotIsCrossing(id.clone()));
                }
                n
            }
            None => d
                .nodes()
                .iter()
                .enumerate()
                .filter(|(_, n)| n.kind.is_vertex())
                .min_by(|a, b| a.1.id.cmp(&b.1.id))
                .map(|(i, _)| i)
                .ok_or(SpokingError::NoVertex)?,
        };
        let graph = d.graph().clone();
        let half_count = graph.half_node.len();
        let mut level = vec![None; half_count];
        for &h in &graph.rot[pivot] {
            level[h] = Some(LevelToken(0));
        }
        let mut registry = BTreeMap::new();
        registry.insert(
            LevelToken(0),
            TokenInfo { kind: BindingKind::Vertex(d.nodes()[pivot].id.clone()), arc_ends: graph.rot[pivot].len() },
        );
        Ok(Self {
            name: d.name().into(),
            wheel: graph.rot[pivot].iter().map(|&h| Slot::Half(h)).collect(),
            half_names: (0..half_count).map(|h| d.half_name(h).clone()).collect(),
            edge_ids: d.edges().iter().map(|e| e.id.clone()).collect(),
            node_ids: d.nodes().iter().map(|n| n.id.clone()).collect(),
            graph,
            pivot,
            level,
            registry,
            newest: LevelToken(0),
            spokes: Vec::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pivot(&self) -> &NodeId {
        &self.node_ids[self.pivot]
    }

    pub fn spokes(&self) -> &[Spoke] {
        &self.spokes
    }

    pub fn registry(&self) -> &BTreeMap<LevelToken, TokenInfo> {
        &self.registry
    }

    /// Spokes in clockwise slot order.
    pub fn spokes_in_order(&self) -> Vec<&Spoke> {
        self.wheel
            .iter()
            .filter_map(|s| match s {
                Slot::Spoke(i) => Some(&self.spokes[*i]),
                Slot::Half(_) => None,
            })
            .collect()
    }

    /// Live edges of the plane graph (spokes excluded).
    pub fn edge_count(&self) -> usize {
        self.graph.live_edge_count()
    }

    pub fn crossing_count(&self) -> usize {
        self.graph.live_nodes().filter(|&n| self.graph.kind[n] != Kind::Vertex).count()
    }

    /// Vertex-kind nodes, pivot included.
    pub fn vertex_count(&self) -> usize {
        self.graph.live_nodes().filter(|&n| self.graph.kind[n] == Kind::Vertex).count()
    }

    /// Regions of the spoke-free plane graph.
    pub fn region_count(&self) -> usize {
        self.graph.regions()
    }

    pub fn is_spherical(&self) -> bool {
        self.graph.first_nonspherical().is_none()
    }

    pub fn cut_nodes(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.graph.cut_nodes().into_iter().map(|n| self.node_ids[n].clone()).collect();
        ids.sort();
        ids
    }

    pub fn is_cut_point_free(&self) -> bool {
        self.graph.cut_nodes().is_empty()
    }

    /// The pivot is the only vertex and at least one edge is left.
    pub fn is_bouquet_diagram(&self) -> bool {
        self.vertex_count() == 1 && self.edge_count() > 0
    }

    /// Live half-edges at the pivot in clockwise order.
    pub fn pivot_half_edges(&self) -> Vec<HalfEdgeId> {
        self.graph.rot[self.pivot].iter().map(|&h| self.half_names[h].clone()).collect()
    }

    pub fn level_of(&self, h: &HalfEdgeId) -> Option<LevelToken> {
        let i = self.half_names.iter().position(|x| x == h)?;
        self.level[i]
    }

    /// A loop at the pivot, if any.
    pub fn loop_at_pivot(&self) -> Option<EdgeId> {
        self.graph.rot[self.pivot]
            .iter()
            .find(|&&h| self.far(h) == self.pivot)
            .map(|&h| self.edge_ids[self.graph.half_edge[h]].clone())
    }

    /// Every token carries exactly its registered number of arc ends.
    pub fn check_token_balance(&self) -> Result<(), SpokingError> {
        let mut found: BTreeMap<LevelToken, usize> = BTreeMap::new();
        for &h in &self.graph.rot[self.pivot] {
            *found.entry(self.level[h].expect("pivot half-edge has a token")).or_default() += 1;
        }
        for s in &self.spokes {
            for t in s.ends {
                *found.entry(t).or_default() += 1;
            }
        }
        for (&token, info) in &self.registry {
            let f = found.remove(&token).unwrap_or(0);
            if f != info.arc_ends {
                return Err(SpokingError::TokenImbalance { token, expected: info.arc_ends, found: f });
            }
        }
        match found.into_iter().next() {
            Some((token, f)) => Err(SpokingError::TokenImbalance { token, expected: 0, found: f }),
            None => Ok(()),
        }
    }

    /// Unnormalized presentation: one binding point per token, one arc per
    /// spoke in clockwise order.
    pub fn raw_presentation(&self) -> RawPresentation {
        RawPresentation {
            points: self.registry.iter().map(|(t, info)| (t.0, info.kind.clone(), Some(info.arc_ends))).collect(),
            arcs: self.spokes_in_order().iter().map(|s| [s.ends[0].0, s.ends[1].0]).collect(),
        }
    }

    /// Human-readable state for error reports.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "pivot {} in {}", self.pivot(), self.name);
        let _ = write!(s, "wheel:");
        for slot in &self.wheel {
            let _ = match *slot {
                Slot::Half(h) => write!(s, " {}@{}", self.half_names[h], self.level[h].map_or(0, |t| t.0)),
                Slot::Spoke(i) => write!(s, " spoke{{{},{}}}", self.spokes[i].ends[0], self.spokes[i].ends[1]),
            };
        }
        let _ = writeln!(s);
        for e in self.graph.live_edges() {
            let [a, b] = self.graph.edge_ends[e];
            let _ = writeln!(
                s,
                "edge {}: {} ({}) -- {} ({})",
                self.edge_ids[e],
                self.half_names[a],
                self.node_ids[self.graph.half_node[a]],
                self.half_names[b],
                self.node_ids[self.graph.half_node[b]],
            );
        }
        let _ = write!(s, "tokens:");
        for (t, info) in &self.registry {
            let _ = write!(s, " {t}:{}", info.arc_ends);
        }
        s
    }

    fn far(&self, h: usize) -> usize {
        self.graph.half_node[self.graph.twin(h)]
    }

    fn live_edge(&self, id: &EdgeId) -> Result<usize, SpokingError> {
        (0..self.edge_ids.len())
            .find(|&e| self.graph.edge_alive[e] && &self.edge_ids[e] == id)
            .ok_or_else(|| SpokingError::UnknownEdge(id.clone()))
    }

    /// (pivot end, far end) of a non-loop edge at the pivot.
    fn orient(&self, id: &EdgeId) -> Result<(usize, usize), SpokingError> {
        let e = self.live_edge(id)?;
        let [a, b] = self.graph.edge_ends[e];
        let (na, nb) = (self.graph.half_node[a], self.graph.half_node[b]);
        match (na == self.pivot, nb == self.pivot) {
            (true, true) => Err(SpokingError::PulledLoop(id.clone())),
            (true, false) => Ok((a, b)),
            (false, true) => Ok((b, a)),
            (false, false) => Err(SpokingError::NotIncidentToPivot(id.clone())),
        }
    }

    fn wheel_pos(&self, h: usize) -> usize {
        self.wheel.iter().position(|&s| s == Slot::Half(h)).expect("pivot half-edge is on the wheel")
    }

    fn sync_rotation(&mut self) {
        self.graph.rot[self.pivot] = self
            .wheel
            .iter()
            .filter_map(|s| match s {
                Slot::Half(h) => Some(*h),
                Slot::Spoke(_) => None,
            })
            .collect();
    }

    fn top(&self) -> LevelToken {
        *self.registry.keys().next_back().expect("registry holds the pivot token")
    }

    fn bottom(&self) -> LevelToken {
        *self.registry.keys().next().expect("registry holds the pivot token")
    }

    fn register(&mut self, k: LevelToken, info: TokenInfo) {
        self.registry.insert(k, info);
        self.newest = k;
    }

    fn kill_node(&mut self, n: usize) {
        self.graph.node_alive[n] = false;
        self.graph.rot[n].clear();
    }

    /// Pull the crossing at the far end of `edge` into the pivot.
    pub fn apply_type1(&mut self, edge: &EdgeId) -> Result<Vec<[LevelToken; 2]>, SpokingError> {
        let (hp, hx) = self.orient(edge)?;
        let x = self.graph.half_node[hx];
        let over = match self.graph.kind[x] {
            Kind::Crossing(o) => o,
            Kind::Vertex => return Err(SpokingError::FarNodeNotCrossing(edge.clone())),
        };
        let r = self.graph.rot[x].clone();
        let p = self.graph.position(hx);
        let [f1, fm, f2] = [r[(p + 1) % 4], r[(p + 2) % 4], r[(p + 3) % 4]];
        let i = self.level[hp];
        let k = if over.is_over((p + 1) % 4) { LevelToken(self.top().0 + 1) } else { LevelToken(self.bottom().0 - 1) };
        self.register(k, TokenInfo { kind: BindingKind::Pass, arc_ends: 2 });

        let w = self.wheel_pos(hp);
        self.wheel.splice(w..w + 1, [Slot::Half(f1), Slot::Half(fm), Slot::Half(f2)]);
        for f in [f1, fm, f2] {
            self.graph.half_node[f] = self.pivot;
        }
        self.level[hp] = None;
        self.level[fm] = i;
        self.level[f1] = Some(k);
        self.level[f2] = Some(k);
        self.graph.edge_alive[self.graph.half_edge[hp]] = false;
        self.kill_node(x);
        self.sync_rotation();
        Ok(self.spoke_off_extreme_loops())
    }

    /// Pull the vertex at the far end of `edge` into the pivot; `edge`
    /// becomes a loop at the pivot.
    pub fn apply_type2(&mut self, edge: &EdgeId) -> Result<Vec<[LevelToken; 2]>, SpokingError> {
        let (hp, hv) = self.orient(edge)?;
        let v = self.graph.half_node[hv];
        if self.graph.kind[v] != Kind::Vertex {
            return Err(SpokingError::FarNodeNotVertex(edge.clone()));
        }
        let r = self.graph.rot[v].clone();
        let p = self.graph.position(hv);
        let moved: Vec<usize> = (0..r.len()).map(|j| r[(p + j) % r.len()]).collect();
        let k = LevelToken(self.top().0 + 1);
        self.register(k, TokenInfo { kind: BindingKind::Vertex(self.node_ids[v].clone()), arc_ends: r.len() });

        let w = self.wheel_pos(hp);
        self.wheel.splice(w + 1..w + 1, moved.iter().map(|&h| Slot::Half(h)));
        for &h in &moved {
            self.graph.half_node[h] = self.pivot;
            self.level[h] = Some(k);
        }
        self.kill_node(v);
        self.sync_rotation();
        Ok(self.spoke_off_extreme_loops())
    }

    /// Replace the loop `edge` at the pivot by two spokes through a new
    /// pass-through token at the top.
    pub fn apply_type3(&mut self, edge: &EdgeId) -> Result<Vec<[LevelToken; 2]>, SpokingError> {
        let e = self.live_edge(edge)?;
        let ends = self.graph.edge_ends[e];
        if ends.iter().any(|&h| self.graph.half_node[h] != self.pivot) {
            return Err(SpokingError::NotALoopAtPivot(edge.clone()));
        }
        let k = LevelToken(self.top().0 + 1);
        self.register(k, TokenInfo { kind: BindingKind::Pass, arc_ends: 2 });
        let mut positions = ends.map(|h| self.wheel_pos(h));
        positions.sort_unstable();
        let mut emitted = Vec::new();
        for w in positions {
            let Slot::Half(h) = self.wheel[w] else { unreachable!() };
            let pair = [self.level[h].expect("pivot half-edge has a token"), k];
            self.level[h] = None;
            self.wheel[w] = Slot::Spoke(self.spokes.len());
            self.spokes.push(Spoke { ends: pair });
            emitted.push(pair);
        }
        self.graph.edge_alive[e] = false;
        self.sync_rotation();
        Ok(emitted)
    }

    /// Turn loops at the pivot into spokes while some loop has distinct end
    /// tokens, one of them the token created by the latest move. That token
    /// is above or below every other one, spoke ends included, so the loop
    /// can be slid off. The spoke takes the wheel slot of that end.
    ///
    /// A loop whose extreme end was created by an earlier move is left in
    /// place; the later move did not lift it.
    pub fn spoke_off_extreme_loops(&mut self) -> Vec<[LevelToken; 2]> {
        let mut emitted = Vec::new();
        loop {
            let k = self.newest;
            let found = self.wheel.iter().enumerate().find_map(|(w, slot)| {
                let Slot::Half(h) = *slot else { return None };
                let t = self.graph.twin(h);
                let (a, b) = (self.level[h]?, self.level[t]?);
                (self.graph.half_node[t] == self.pivot && a != b && a == k).then_some((w, h, t))
            });
            let Some((w, h, t)) = found else { break };
            let first = w < self.wheel_pos(t);
            let pair = if first {
                [self.level[h].unwrap(), self.level[t].unwrap()]
            } else {
                [self.level[t].unwrap(), self.level[h].unwrap()]
            };
            self.wheel[w] = Slot::Spoke(self.spokes.len());
            self.spokes.push(Spoke { ends: pair });
            let wt = self.wheel_pos(t);
            self.wheel.remove(wt);
            self.level[h] = None;
            self.level[t] = None;
            self.graph.edge_alive[self.graph.half_edge[h]] = false;
            self.sync_rotation();
            emitted.push(pair);
        }
        emitted
    }

    /// Type 1 or Type 2, by the kind of node at the far end of `edge`.
    pub fn pull(&mut self, edge: &EdgeId) -> Result<(MoveKind, Vec<[LevelToken; 2]>), SpokingError> {
        let (_, far) = self.orient(edge)?;
        match self.graph.kind[self.graph.half_node[far]] {
            Kind::Crossing(_) => Ok((MoveKind::Type1, self.apply_type1(edge)?)),
            Kind::Vertex => Ok((MoveKind::Type2, self.apply_type2(edge)?)),
        }
    }

    /// Non-loop edges at the pivot, clockwise from the smallest half-edge id.
    pub fn candidate_edges(&self) -> Vec<EdgeId> {
        let rot = &self.graph.rot[self.pivot];
        let Some(anchor) = (0..rot.len()).min_by(|&a, &b| self.half_names[rot[a]].cmp(&self.half_names[rot[b]])) else {
            return Vec::new();
        };
        (0..rot.len())
            .map(|j| rot[(anchor + j) % rot.len()])
            .filter(|&h| self.far(h) != self.pivot)
            .map(|h| self.edge_ids[self.graph.half_edge[h]].clone())
            .collect()
    }

    /// First candidate, clockwise, whose pull keeps the state cut-point free
    /// and, unless the state already is one, not a bouquet diagram.
    pub fn select_pulling_edge(&self) -> Result<EdgeId, SpokingError> {
        self.select_from(self.candidate_edges(), 0)
    }

    fn select_from(&self, candidates: Vec<EdgeId>, step: usize) -> Result<EdgeId, SpokingError> {
        if let Some(l) = self.loop_at_pivot() {
            return Err(SpokingError::LoopAtPivot(l));
        }
        if candidates.is_empty() {
            return Err(SpokingError::NoPullingEdge);
        }
        let bouquet = self.is_bouquet_diagram();
        for e in candidates {
            let mut next = self.clone();
            next.pull(&e)?;
            if next.is_cut_point_free() && (bouquet || !next.is_bouquet_diagram()) {
                return Ok(e);
            }
        }
        Err(SpokingError::NoAdmissibleEdge { step, dump: self.dump() })
    }

    pub(crate) fn select_with(&self, rng: Option<&mut ChaCha8Rng>, step: usize) -> Result<EdgeId, SpokingError> {
        let mut candidates = self.candidate_edges();
        if let Some(rng) = rng {
            candidates.shuffle(rng);
        }
        self.select_from(candidates, step)
    }
}
