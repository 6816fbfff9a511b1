//! Built-in example diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use arcspoke_core::build;
use arcspoke_core::diagram::{add_kink, insert_r2, nugatory_crossings, KinkSide};
use arcspoke_core::{EdgeId, HalfEdgeId, OverPair, PlanarDiagram};

/// Name and one-line summary of every entry, in listing order.
pub const ENTRIES: &[(&str, &str)] = &[
    ("theta-3", "trivial theta-curve with 3 edges"),
    ("theta-4", "trivial theta-curve with 4 edges"),
    ("theta-5", "trivial theta-curve with 5 edges"),
    ("theta-6", "trivial theta-curve with 6 edges"),
    ("theta-7", "trivial theta-curve with 7 edges"),
    ("theta-8", "trivial theta-curve with 8 edges"),
    ("bouquet-1", "trivial bouquet with 1 loop"),
    ("bouquet-2", "trivial bouquet with 2 loops"),
    ("bouquet-3", "trivial bouquet with 3 loops"),
    ("bouquet-4", "trivial bouquet with 4 loops"),
    ("bouquet-5", "trivial bouquet with 5 loops"),
    ("trefoil-v", "trefoil with one vertex on it"),
    ("figure-eight-v", "figure-eight knot with one vertex on it"),
    ("cinquefoil-v", "cinquefoil with one vertex on it"),
    ("theta-5x", "5-crossing theta-curve: cinquefoil plus a chord"),
    ("wedge-two-trefoils", "two trefoils sharing their vertex"),
    ("theta3-plus-trefoil", "trivial theta-3 beside an unlinked trefoil"),
    ("handcuff", "two unknotted loops joined by an edge"),
    ("tetrahedron", "planar K4"),
    ("trefoil-v-kinked", "trefoil-v with one nugatory kink"),
    ("loop-double-kink", "unknotted loop with two nugatory kinks"),
    ("theta-6-r2x25", "theta-6 with 25 Reidemeister II fingers, 50 crossings"),
];

/// Seed of the `theta-6-r2x25` entry.
pub const FINGERS_SEED: u64 = 2024;

pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(n, _)| *n)
}

pub fn get(name: &str) -> Option<PlanarDiagram> {
    let d = match name {
        "trefoil-v" => build::trefoil_with_vertex(),
        "figure-eight-v" => build::figure_eight_with_vertex(),
        "cinquefoil-v" => build::cinquefoil_with_vertex(),
        "theta-5x" => build::theta_curve_from_knot("theta-5x", &build::CINQUEFOIL_PD),
        "wedge-two-trefoils" => build::wedge_of_two_trefoils(),
        "theta3-plus-trefoil" => build::theta3_plus_trefoil(),
        "handcuff" => build::handcuff(),
        "tetrahedron" => build::tetrahedron(),
        "trefoil-v-kinked" => {
            add_kink(&build::trefoil_with_vertex(), &EdgeId::from("e2"), KinkSide::Right, OverPair::ZeroTwo)
                .expect("e2 exists")
                .with_name(name)
        }
        "loop-double-kink" => {
            let l1 = EdgeId::from("l1");
            let once = add_kink(&build::bouquet(1), &l1, KinkSide::Left, OverPair::ZeroTwo).expect("l1 exists");
            add_kink(&once, &l1, KinkSide::Right, OverPair::OneThree).expect("l1 exists").with_name(name)
        }
        "theta-6-r2x25" => theta_with_fingers(6, 25, FINGERS_SEED),
        _ => {
            let (family, n) = name.rsplit_once('-')?;
            let n: usize = n.parse().ok()?;
            match (family, n) {
                ("theta", 3..=8) => build::theta(n),
                ("bouquet", 1..=5) => build::bouquet(n),
                _ => return None,
            }
        }
    };
    Some(d)
}

/// Distinct edges along a face boundary, in boundary order.
fn face_segments(d: &PlanarDiagram, boundary: &[HalfEdgeId]) -> Vec<EdgeId> {
    let mut segs: Vec<EdgeId> = Vec::new();
    for h in boundary {
        let e = &d.edges().iter().find(|e| e.ends.contains(h)).expect("half-edge lies on an edge").id;
        if !segs.contains(e) {
            segs.push(e.clone());
        }
    }
    segs
}

/// Trivial θ with `edges` edges and `fingers` random Reidemeister II
/// fingers, each between two edges of a common face. Fingers that would
/// leave a nugatory crossing are redrawn, so the result is reduced and has
/// `2 * fingers` crossings.
pub fn theta_with_fingers(edges: usize, fingers: usize, seed: u64) -> PlanarDiagram {
    let mut d = build::theta(edges);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut added = 0;
    while added < fingers {
        let faces = d.compute_faces();
        let f = rng.gen_range(0..faces.len());
        let segs = face_segments(&d, &faces[f].boundary);
        if segs.len() < 2 {
            continue;
        }
        let i = rng.gen_range(0..segs.len());
        let j = (i + rng.gen_range(1..segs.len())) % segs.len();
        let Ok(next) = insert_r2(&d, f, &segs[i], &segs[j]) else { continue };
        if nugatory_crossings(&next).is_empty() {
            d = next;
            added += 1;
        }
    }
    d.with_name(format!("theta-{edges}-r2x{fingers}"))
}
