use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CandidateOrder, GraphSpokeDiagram, LevelToken, MoveKind, SpokingError};
use crate::diagram::PlanarDiagram;
use crate::ids::{EdgeId, NodeId};
use crate::presentation::{normalize_levels, ArcPresentation};

/// Spokes, regions and vertices of a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrvCounts {
    pub spokes: usize,
    pub regions: usize,
    pub vertices: usize,
}

impl SrvCounts {
    pub fn total(self) -> usize {
        self.spokes + self.regions + self.vertices
    }
}

impl GraphSpokeDiagram {
    pub fn counts(&self) -> SrvCounts {
        SrvCounts { spokes: self.spokes.len(), regions: self.region_count(), vertices: self.vertex_count() }
    }

    /// Crossings, non-pivot vertices and plane edges; every step shrinks it.
    pub fn progress_measure(&self) -> usize {
        self.crossing_count() + self.vertex_count() - 1 + self.edge_count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub kind: MoveKind,
    pub pulled: EdgeId,
    pub counts: SrvCounts,
    /// Spokes created by the step, as raw tokens.
    pub emitted: Vec<[LevelToken; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub component: String,
    pub pivot: NodeId,
    pub initial: SrvCounts,
    pub steps: Vec<StepRecord>,
    /// Final level of every raw token.
    pub levels: BTreeMap<LevelToken, u32>,
}

impl StepTrace {
    pub fn level(&self, t: LevelToken) -> Option<u32> {
        self.levels.get(&t).copied()
    }

    pub fn type3_steps(&self) -> usize {
        self.steps.iter().filter(|s| s.kind == MoveKind::Type3).count()
    }
}

/// Run the construction to the end on a connected, cut-point free
/// component. Every step is checked for token balance, sphericity,
/// cut-point freeness, progress and, for non-bouquet components, that no
/// bouquet diagram is reached.
pub fn run_spoking(
    d: &PlanarDiagram,
    pivot: Option<&NodeId>,
    order: CandidateOrder,
) -> Result<(ArcPresentation, StepTrace), SpokingError> {
    let mut g = GraphSpokeDiagram::new(d, pivot)?;
    if !g.is_cut_point_free() {
        return Err(SpokingError::NotCutPointFree { step: 0, nodes: g.cut_nodes() });
    }
    let bouquet_run = g.is_bouquet_diagram();
    let mut rng = match order {
        CandidateOrder::Clockwise => None,
        CandidateOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let initial = g.counts();
    let mut steps = Vec::new();
    while g.edge_count() > 0 {
        let step = steps.len() + 1;
        let before = g.progress_measure();
        let (kind, pulled, emitted) = match g.loop_at_pivot() {
            Some(l) if g.edge_count() == 1 => {
                let emitted = g.apply_type3(&l)?;
                (MoveKind::Type3, l, emitted)
            }
            Some(l) => return Err(SpokingError::LoopAtPivot(l)),
            None => {
                let e = g.select_with(rng.as_mut(), step)?;
                let (kind, emitted) = g.pull(&e)?;
                (kind, e, emitted)
            }
        };
        g.check_token_balance()?;
        if !g.is_spherical() {
            return Err(SpokingError::Nonplanar { step });
        }
        if !g.is_cut_point_free() {
            return Err(SpokingError::NotCutPointFree { step, nodes: g.cut_nodes() });
        }
        if !bouquet_run && g.is_bouquet_diagram() {
            return Err(SpokingError::BouquetReached { step });
        }
        if g.progress_measure() >= before {
            return Err(SpokingError::NoProgress { step });
        }
        steps.push(StepRecord { step, kind, pulled, counts: g.counts(), emitted });
    }
    let levels = g.registry().keys().enumerate().map(|(i, &t)| (t, i as u32 + 1)).collect();
    let trace = StepTrace { component: g.name().into(), pivot: g.pivot().clone(), initial, steps, levels };
    Ok((normalize_levels(&g.raw_presentation()), trace))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationViolation {
    pub step: usize,
    pub kind: MoveKind,
    pub before: usize,
    pub after: usize,
}

impl fmt::Display for ConservationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {} ({}): S+R+V went from {} to {}", self.step, self.kind.as_str(), self.before, self.after)
    }
}

/// S+R+V is unchanged by Type 1 and Type 2 steps and grows by one in a
/// Type 3 step.
pub fn conservation_check(trace: &StepTrace) -> Result<(), ConservationViolation> {
    let mut before = trace.initial.total();
    for s in &trace.steps {
        let after = s.counts.total();
        let expected = before + usize::from(s.kind == MoveKind::Type3);
        if after != expected {
            return Err(ConservationViolation { step: s.step, kind: s.kind, before, after });
        }
        before = after;
    }
    Ok(())
}
