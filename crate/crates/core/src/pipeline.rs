//! End to end: reduce, decompose, spoke every component, glue the pieces
//! and check the result.

use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{bound_report, cut_decompose, BoundReport, CutDecomposition};
use crate::diagram::{reduce_diagram, DiagramError, PlanarDiagram};
use crate::ids::{ComponentId, NodeId};
use crate::presentation::{assemble_full, ArcPresentation, PresentationError, Violation};
use crate::spoking::{conservation_check, run_spoking, CandidateOrder, ConservationViolation, SpokingError, StepTrace};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PivotChoice {
    /// Smallest vertex id of each component.
    #[default]
    Auto,
    /// This vertex in the component that contains it, auto elsewhere.
    Fixed(NodeId),
    /// A random vertex per component.
    Seeded(u64),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineConfig {
    pub pivot: PivotChoice,
    /// Seeded orders are offset by the component index.
    pub order: CandidateOrder,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentRun {
    pub component: ComponentId,
    pub presentation: ArcPresentation,
    pub trace: StepTrace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineOutput {
    pub reduced: PlanarDiagram,
    pub decomposition: CutDecomposition,
    pub runs: Vec<ComponentRun>,
    pub presentation: ArcPresentation,
    pub report: BoundReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineError {
    Diagram(DiagramError),
    Pivot(SpokingError),
    Spoking { component: ComponentId, error: SpokingError },
    Conservation { component: ComponentId, violation: ConservationViolation },
    ComponentPages { component: ComponentId, pages: usize, predicted: usize },
    Assembly(PresentationError),
    Invalid(Vec<Violation>),
    Fidelity,
    Bound { achieved: usize, bound: usize },
}

impl From<DiagramError> for PipelineError {
    fn from(e: DiagramError) -> Self {
        PipelineError::Diagram(e)
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Diagram(e) => write!(f, "{e}"),
            PipelineError::Pivot(e) => write!(f, "{e}"),
            PipelineError::Spoking { component, error } => write!(f, "component {component}: {error}"),
            PipelineError::Conservation { component, violation } => {
                write!(f, "component {component}: conservation fails at {violation}")
            }
            PipelineError::ComponentPages { component, pages, predicted } => {
                write!(f, "component {component}: {pages} pages, expected {predicted}")
            }
            PipelineError::Assembly(e) => write!(f, "{e}"),
            PipelineError::Invalid(v) => write!(f, "{}", PresentationError::Invalid(v.clone())),
            PipelineError::Fidelity => {
                write!(f, "assembled presentation does not reconstruct the input graph")
            }
            PipelineError::Bound { achieved, bound } => {
                write!(f, "assembled presentation has {achieved} pages, bound is {bound}")
            }
        }
    }
}

fn choose_pivots(
    dec: &CutDecomposition,
    choice: &PivotChoice,
    reduced: &PlanarDiagram,
) -> Result<Vec<Option<NodeId>>, PipelineError> {
    match choice {
        PivotChoice::Auto => Ok(dec.components.iter().map(|_| None).collect()),
        PivotChoice::Fixed(id) => {
            let node =
                reduced.node(id).ok_or_else(|| PipelineError::Pivot(SpokingError::PivotNotInComponent(id.clone())))?;
            if !node.kind.is_vertex() {
                return Err(PipelineError::Pivot(SpokingError::PivotIsCrossing(id.clone())));
            }
            Ok(dec.components.iter().map(|c| c.diagram.node(id).map(|_| id.clone())).collect())
        }
        PivotChoice::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            Ok(dec
                .components
                .iter()
                .map(|c| {
                    let vertices: Vec<&NodeId> =
                        c.diagram.nodes().iter().filter(|n| n.kind.is_vertex()).map(|n| &n.id).collect();
                    vertices.choose(&mut rng).map(|&v| v.clone())
                })
                .collect())
        }
    }
}

pub fn run_pipeline(d: &PlanarDiagram, config: &PipelineConfig) -> Result<PipelineOutput, PipelineError> {
    d.check_spherical()?;
    let input_graph = d.multigraph()?;
    let reduced = reduce_diagram(d)?;
    let decomposition = cut_decompose(&reduced)?;
    let pivots = choose_pivots(&decomposition, &config.pivot, &reduced)?;

    let mut runs = Vec::with_capacity(decomposition.components.len());
    for (i, (c, pivot)) in decomposition.components.iter().zip(&pivots).enumerate() {
        let order = match config.order {
            CandidateOrder::Clockwise => CandidateOrder::Clockwise,
            CandidateOrder::Seeded(s) => CandidateOrder::Seeded(s.wrapping_add(i as u64)),
        };
        let (presentation, trace) = run_spoking(&c.diagram, pivot.as_ref(), order)
            .map_err(|error| PipelineError::Spoking { component: c.id.clone(), error })?;
        conservation_check(&trace)
            .map_err(|violation| PipelineError::Conservation { component: c.id.clone(), violation })?;
        if presentation.page_count() != c.predicted_pages() {
            return Err(PipelineError::ComponentPages {
                component: c.id.clone(),
                pages: presentation.page_count(),
                predicted: c.predicted_pages(),
            });
        }
        runs.push(ComponentRun { component: c.id.clone(), presentation, trace });
    }

    let parts: Vec<ArcPresentation> = runs.iter().map(|r| r.presentation.clone()).collect();
    let presentation = assemble_full(&decomposition, &parts).map_err(PipelineError::Assembly)?;
    presentation.validate().map_err(PipelineError::Invalid)?;
    let rebuilt = presentation.reconstruct_multigraph().map_err(PipelineError::Invalid)?;
    if !rebuilt.is_isomorphic(&input_graph) {
        return Err(PipelineError::Fidelity);
    }
    let report = bound_report(&decomposition, Some(&presentation))
        .map_err(|e| PipelineError::Bound { achieved: e.achieved, bound: e.bound })?;
    if report.achieved_pages != Some(report.bound) {
        return Err(PipelineError::Bound { achieved: presentation.page_count(), bound: report.bound });
    }
    Ok(PipelineOutput { reduced, decomposition, runs, presentation, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::diagram::{add_kink, KinkSide, OverPair};
    use crate::ids::EdgeId;

    fn pages(d: &PlanarDiagram) -> usize {
        run_pipeline(d, &PipelineConfig::default()).unwrap().presentation.page_count()
    }

    #[test]
    fn sharp_families() {
        for p in 3..=8 {
            assert_eq!(pages(&build::theta(p)), p);
        }
        for b in 1..=5 {
            assert_eq!(pages(&build::bouquet(b)), 2 * b);
        }
    }

    #[test]
    fn multi_component_entries() {
        assert_eq!(pages(&build::wedge_of_two_trefoils()), 10);
        assert_eq!(pages(&build::theta3_plus_trefoil()), 8);
        assert_eq!(pages(&build::handcuff()), 5);
    }

    #[test]
    fn kinks_are_removed_before_spoking() {
        let t = build::trefoil_with_vertex();
        let k = add_kink(&t, &EdgeId::from("e2"), KinkSide::Right, OverPair::ZeroTwo).unwrap();
        let out = run_pipeline(&k, &PipelineConfig::default()).unwrap();
        assert_eq!(out.reduced.crossing_count(), 3);
        assert_eq!(out.presentation.page_count(), 5);
    }

    #[test]
    fn pivot_override() {
        let d = build::theta3_plus_trefoil();
        let cfg = PipelineConfig { pivot: PivotChoice::Fixed(NodeId::from("t.v")), ..Default::default() };
        let out = run_pipeline(&d, &cfg).unwrap();
        assert_eq!(out.runs[0].trace.pivot.as_str(), "k.w");
        assert_eq!(out.runs[1].trace.pivot.as_str(), "t.v");
        let bad = PipelineConfig { pivot: PivotChoice::Fixed(NodeId::from("none")), ..Default::default() };
        assert_eq!(
            run_pipeline(&d, &bad).unwrap_err(),
            PipelineError::Pivot(SpokingError::PivotNotInComponent(NodeId::from("none")))
        );
    }

    #[test]
    fn seeded_pivots_stay_exact() {
        let d = build::tetrahedron();
        for seed in 0..10 {
            let cfg = PipelineConfig { pivot: PivotChoice::Seeded(seed), order: CandidateOrder::Seeded(seed) };
            assert_eq!(run_pipeline(&d, &cfg).unwrap().presentation.page_count(), 6);
        }
    }

    #[test]
    fn nonplanar_input_is_rejected() {
        let d = crate::diagram::tests::theta3(false);
        assert!(matches!(
            run_pipeline(&d, &PipelineConfig::default()),
            Err(PipelineError::Diagram(DiagramError::Nonplanar { .. }))
        ));
    }
}
