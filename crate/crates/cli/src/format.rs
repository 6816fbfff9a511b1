//! JSON file formats. Every writer goes through [`canonical`], which sorts
//! object keys and pretty-prints with a trailing newline, so equal values
//! always serialize to equal bytes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use arcspoke_core::{
    ArcPresentation, BindingKind, BindingPoint, BoundReport, ComponentId, CutDecomposition, Edge, HalfEdgeId, Node,
    NodeId, NodeKind, OverPair, PlanarDiagram, StepTrace,
};

use crate::error::CliError;

/// Text shown in every bound report.
pub const CERTIFICATE: &str =
    "pages <= c(D) + e + b(D), with c and b taken from the reduced diagram as drawn, not minimized over diagrams";

/// Sorted keys, two-space indent, trailing newline.
pub fn canonical<T: Serialize>(value: &T) -> String {
    // serde_json's default map is a BTreeMap, so going through Value sorts keys
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

/// One compact line, sorted keys, no newline.
fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("value serializes")
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum KindDto {
    Vertex,
    Crossing,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct NodeDto {
    id: String,
    kind: KindDto,
    rotation: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    over: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct EdgeDto {
    id: String,
    ends: [String; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct DiagramDto {
    name: String,
    nodes: Vec<NodeDto>,
    edges: Vec<EdgeDto>,
}

/// Parsed but not yet checked diagram file.
#[derive(Debug, Clone)]
pub struct DiagramFile(DiagramDto);

impl DiagramFile {
    /// Syntax and schema only. Failures are parse errors.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map(DiagramFile).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Structural checks: over tags, ids, half-edge bijection, arity.
    pub fn build(&self) -> Result<PlanarDiagram, CliError> {
        let mut nodes = Vec::with_capacity(self.0.nodes.len());
        for n in &self.0.nodes {
            let rotation = n.rotation.iter().map(|h| HalfEdgeId::new(h.as_str())).collect();
            let node = match (n.kind, &n.over) {
                (KindDto::Vertex, None) => Node::vertex(n.id.as_str(), rotation),
                (KindDto::Vertex, Some(_)) => {
                    return Err(CliError::Structure(format!("bad over tag: vertex `{}` has one", n.id)))
                }
                (KindDto::Crossing, None) => {
                    return Err(CliError::Structure(format!("bad over tag: crossing `{}` has none", n.id)))
                }
                (KindDto::Crossing, Some(tag)) => {
                    let over = OverPair::parse(tag).ok_or_else(|| {
                        CliError::Structure(format!(
                            "bad over tag `{tag}` on crossing `{}`, expected \"02\" or \"13\"",
                            n.id
                        ))
                    })?;
                    Node::crossing(n.id.as_str(), rotation, over)
                }
            };
            nodes.push(node);
        }
        let edges =
            self.0.edges.iter().map(|e| Edge::new(e.id.as_str(), e.ends[0].as_str(), e.ends[1].as_str())).collect();
        Ok(PlanarDiagram::new(self.0.name.as_str(), nodes, edges)?)
    }
}

pub fn parse_diagram(text: &str) -> Result<PlanarDiagram, CliError> {
    DiagramFile::parse(text)?.build()
}

pub fn diagram_json(d: &PlanarDiagram) -> String {
    let dto = DiagramDto {
        name: d.name().to_string(),
        nodes: d
            .nodes()
            .iter()
            .map(|n| NodeDto {
                id: n.id.to_string(),
                kind: if n.kind.is_vertex() { KindDto::Vertex } else { KindDto::Crossing },
                rotation: n.rotation.iter().map(|h| h.to_string()).collect(),
                over: match n.kind {
                    NodeKind::Crossing(o) => Some(o.as_str().to_string()),
                    NodeKind::Vertex => None,
                },
            })
            .collect(),
        edges: d
            .edges()
            .iter()
            .map(|e| EdgeDto { id: e.id.to_string(), ends: [e.ends[0].to_string(), e.ends[1].to_string()] })
            .collect(),
    };
    canonical(&dto)
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum PointKindDto {
    Vertex,
    Pass,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct PointDto {
    level: u32,
    kind: PointKindDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct PageDto {
    page: usize,
    arc: [u32; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
struct PresentationDto {
    binding: Vec<PointDto>,
    pages: Vec<PageDto>,
}

/// Reads a presentation file. Page numbers must run `1..n` in order; the
/// level rules are left to [`ArcPresentation::validate`].
pub fn parse_presentation(text: &str) -> Result<ArcPresentation, CliError> {
    let dto: PresentationDto = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut binding = Vec::with_capacity(dto.binding.len());
    for p in dto.binding {
        let point = match (p.kind, p.vertex_id) {
            (PointKindDto::Vertex, Some(id)) => {
                BindingPoint { level: p.level, kind: BindingKind::Vertex(NodeId::new(id)), degree: p.degree }
            }
            (PointKindDto::Vertex, None) => {
                return Err(CliError::Parse(format!("vertex point at level {} has no vertexId", p.level)))
            }
            (PointKindDto::Pass, Some(_)) => {
                return Err(CliError::Parse(format!("pass point at level {} has a vertexId", p.level)))
            }
            (PointKindDto::Pass, None) if p.degree.is_some() => {
                return Err(CliError::Parse(format!("pass point at level {} has a degree", p.level)))
            }
            (PointKindDto::Pass, None) => BindingPoint { level: p.level, kind: BindingKind::Pass, degree: Some(2) },
        };
        binding.push(point);
    }
    let mut pages = Vec::with_capacity(dto.pages.len());
    for (i, p) in dto.pages.into_iter().enumerate() {
        if p.page != i + 1 {
            return Err(CliError::Parse(format!("page {} listed in position {}", p.page, i + 1)));
        }
        pages.push(p.arc);
    }
    Ok(ArcPresentation { binding, pages })
}

pub fn presentation_json(p: &ArcPresentation) -> String {
    let dto = PresentationDto {
        binding: p
            .binding
            .iter()
            .map(|b| match &b.kind {
                BindingKind::Vertex(id) => PointDto {
                    level: b.level,
                    kind: PointKindDto::Vertex,
                    vertex_id: Some(id.to_string()),
                    degree: b.degree,
                },
                BindingKind::Pass => {
                    PointDto { level: b.level, kind: PointKindDto::Pass, vertex_id: None, degree: None }
                }
            })
            .collect(),
        pages: p.pages.iter().enumerate().map(|(i, arc)| PageDto { page: i + 1, arc: *arc }).collect(),
    };
    canonical(&dto)
}

pub fn report_json(r: &BoundReport) -> String {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "id": c.id.as_str(),
                "c": c.crossings,
                "e": c.edges,
                "bouquet": c.bouquet,
                "predictedPages": c.predicted_pages,
            })
        })
        .collect();
    canonical(&json!({
        "components": components,
        "totals": {
            "c": r.crossings,
            "e": r.edges,
            "b": r.bouquets,
            "bound": r.bound,
            "achievedPages": r.achieved_pages,
        },
        "certificate": CERTIFICATE,
    }))
}

pub fn decomposition_json(dec: &CutDecomposition) -> String {
    let components: Vec<Value> = dec
        .components
        .iter()
        .map(|c| {
            json!({
                "id": c.id.as_str(),
                "bouquet": c.is_bouquet,
                "c": c.crossings,
                "e": c.edges,
                "v": c.vertices,
                "predictedPages": c.predicted_pages(),
                "nodes": c.diagram.nodes().iter().map(|n| n.id.as_str()).collect::<Vec<_>>(),
                "edges": c.diagram.edges().iter().map(|e| e.id.as_str()).collect::<Vec<_>>(),
            })
        })
        .collect();
    let tree: Vec<Value> = dec
        .tree
        .iter()
        .map(|t| {
            json!({
                "parent": dec.components[t.parent].id.as_str(),
                "child": dec.components[t.child].id.as_str(),
                "vertex": t.vertex.as_str(),
            })
        })
        .collect();
    canonical(&json!({ "components": components, "tree": tree }))
}

/// One JSON line per step. Spokes are given by their levels in the
/// component's own presentation.
pub fn trace_jsonl(component: &ComponentId, trace: &StepTrace) -> String {
    let mut out = String::new();
    for s in &trace.steps {
        let spokes: Vec<[u32; 2]> =
            s.emitted.iter().map(|pair| pair.map(|t| trace.level(t).expect("every token has a final level"))).collect();
        let line = json!({
            "step": s.step,
            "type": s.kind.as_str(),
            "pulled": s.pulled.as_str(),
            "S": s.counts.spokes,
            "R": s.counts.regions,
            "V": s.counts.vertices,
            "spokesEmitted": spokes,
            "component": component.as_str(),
        });
        out.push_str(&compact(&line));
        out.push('\n');
    }
    out
}
