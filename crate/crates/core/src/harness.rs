//! Test-instance generation and the unfold-validate pipeline: exhaustive
//! enumeration of small tree polycubes, seeded random growth, per-node
//! invariant checking and case-coverage accounting.

use crate::geom::{V3, ALL_DIRECTIONS};
use crate::model::{build_dual_tree, validate_orthotree, BoxId, Orthotree};
use crate::net::{
    check_connections, check_region, check_removable, validate_net, Net, NodeContext, PortContext,
};
use crate::surface::{RingFace, SurfaceAtlas};
use crate::unfolder::{self, context, frame::Frame, CaseId, UnfoldTrace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Deduplicated-by-translation canonical form of a polycube.
fn canonical(cells: &BTreeSet<V3>) -> Vec<V3> {
    let min = cells.iter().fold(V3(i32::MAX, i32::MAX, i32::MAX), |m, c| {
        V3(m.0.min(c.0), m.1.min(c.1), m.2.min(c.2))
    });
    let mut v: Vec<V3> = cells.iter().map(|&c| c - min).collect();
    v.sort();
    v
}

/// Every fixed polycube with up to `max_n` cells whose dual graph is a
/// tree and whose surface is a 2-manifold, deduplicated up to
/// translation.
pub fn enumerate_tree_polycubes(max_n: usize) -> Vec<Orthotree> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<V3>> = BTreeSet::new();
    let seed: BTreeSet<V3> = [V3(0, 0, 0)].into_iter().collect();
    let mut frontier = vec![seed.clone()];
    let first = canonical(&seed);
    seen.insert(first);
    let mut layer = 1usize;
    let accept = |cells: &BTreeSet<V3>| -> Option<Orthotree> {
        let v: Vec<V3> = cells.iter().copied().collect();
        let o = Orthotree::from_positions(&v).ok()?;
        validate_orthotree(&o).ok().then_some(o)
    };
    if let Some(o) = accept(&seed) {
        out.push(o);
    }
    while layer < max_n {
        let mut next_frontier = Vec::new();
        for shape in &frontier {
            for &cell in shape.iter() {
                for d in ALL_DIRECTIONS {
                    let cand = cell + d.vec();
                    if shape.contains(&cand) {
                        continue;
                    }
                    let mut grown = shape.clone();
                    grown.insert(cand);
                    let key = canonical(&grown);
                    if !seen.insert(key) {
                        continue;
                    }
                    // Enumerate through all shapes; only valid ones are
                    // emitted, but growth may pass through invalid ones
                    // is not needed: any tree polycube can be built by
                    // adding leaves, so restrict growth to valid shapes.
                    if let Some(o) = accept(&grown) {
                        out.push(o);
                        next_frontier.push(grown);
                    }
                }
            }
        }
        frontier = next_frontier;
        layer += 1;
    }
    out
}

/// Counts per size, for pinning regression constants.
pub fn enumeration_counts(max_n: usize) -> Vec<usize> {
    let mut counts = vec![0usize; max_n + 1];
    for o in enumerate_tree_polycubes(max_n) {
        counts[o.len()] += 1;
    }
    counts
}

#[derive(Debug, thiserror::Error)]
#[error("random growth stalled after {0} attempts")]
pub struct GrowthStuck(usize);

/// Seeded random tree polycube of exactly `n` boxes, grown by repeated
/// leaf attachment with rejection of invalid shapes.
pub fn random_tree_polycube(n: usize, seed: u64) -> Result<Orthotree, GrowthStuck> {
    'retry: for salt in 0..64u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(salt.wrapping_mul(0x9e3779b97f4a7c15)));
        let mut cells: BTreeSet<V3> = [V3(0, 0, 0)].into_iter().collect();
        let mut stall = 0usize;
        while cells.len() < n {
            let v: Vec<V3> = cells.iter().copied().collect();
            let base = *v.choose(&mut rng).unwrap();
            let d = ALL_DIRECTIONS[rng.gen_range(0..6)];
            let cand = base + d.vec();
            if cells.contains(&cand) {
                continue;
            }
            let mut grown: Vec<V3> = v.clone();
            grown.push(cand);
            let o = Orthotree::from_positions(&grown).expect("no duplicates");
            if validate_orthotree(&o).ok() {
                cells.insert(cand);
                stall = 0;
            } else {
                stall += 1;
                if stall > 200 {
                    continue 'retry;
                }
            }
        }
        let v: Vec<V3> = cells.iter().copied().collect();
        return Ok(Orthotree::from_positions(&v).expect("valid growth"));
    }
    Err(GrowthStuck(64))
}

/// Case hit counts plus the uncovered remainder of the full case table.
#[derive(Debug, Default, Clone)]
pub struct CoverageReport {
    pub hits: BTreeMap<String, usize>,
    /// Cases seen with at least one optional box absent, per case label.
    pub variant_hits: BTreeMap<String, usize>,
}

impl CoverageReport {
    pub fn record(&mut self, trace: &UnfoldTrace) {
        for node in trace.nodes.iter().flatten() {
            *self.hits.entry(node.case.to_string()).or_default() += 1;
            if let Some((mask, n)) = node.variant {
                if mask != (1u8 << n) - 1 {
                    *self
                        .variant_hits
                        .entry(node.case.to_string())
                        .or_default() += 1;
                }
            }
        }
    }

    pub fn uncovered(&self, want: &[String]) -> Vec<String> {
        want.iter()
            .filter(|w| !self.hits.contains_key(*w))
            .cloned()
            .collect()
    }
}

/// Every case label the fixture corpus must reach.
pub fn full_case_table() -> Vec<String> {
    let mut v: Vec<CaseId> = vec![
        CaseId::SingleBox,
        CaseId::Root,
        CaseId::LeafHead,
        CaseId::LeafHand,
        CaseId::C2_1,
        CaseId::C2_2,
        CaseId::C2_3,
        CaseId::C2_4,
        CaseId::C3_1,
        CaseId::C3_2 { ri_open: true },
        CaseId::C3_2 { ri_open: false },
        CaseId::C3_3,
        CaseId::C3_4,
        CaseId::C3_5 { kn_open: true },
        CaseId::C3_5 { kn_open: false },
        CaseId::C4_1,
        CaseId::C4_3,
        CaseId::C4_6,
        CaseId::C5_1 { reduce: false },
        CaseId::C5_1 { reduce: true },
        CaseId::C5_2 { ns: false },
        CaseId::C5_2 { ns: true },
        CaseId::C5_3,
        CaseId::C5_4 { reduce: false },
        CaseId::C5_4 { reduce: true },
        CaseId::C6,
    ];
    for sub in 1..=4 {
        v.push(CaseId::C3_6 { sub });
        v.push(CaseId::C4_4 { sub });
        v.push(CaseId::C4_7 { sub });
    }
    for sub in 1..=3 {
        v.push(CaseId::C4_2 { sub });
        v.push(CaseId::C4_5 { sub });
    }
    v.into_iter().map(|c| c.to_string()).collect()
}

/// One failed pipeline stage for one instance.
#[derive(Debug, Clone)]
pub struct SuiteFailure {
    pub positions: Vec<V3>,
    pub stage: String,
    pub detail: String,
}

/// Unfolds one orthotree and runs the full validation stack: global net
/// checks plus per-node region, connection and removability checks.
pub fn check_instance(o: &Orthotree) -> Result<UnfoldTrace, SuiteFailure> {
    let fail = |stage: &str, detail: String| SuiteFailure {
        positions: o.boxes().iter().map(|b| b.pos).collect(),
        stage: stage.to_string(),
        detail,
    };
    let (net, trace) = unfolder::unfold(o).map_err(|e| fail("unfold", e.to_string()))?;
    let atlas = SurfaceAtlas::new(o);
    if net.cells.len() != 16 * (4 * o.len() + 2) {
        return Err(fail(
            "coverage",
            format!("{} cells, expected {}", net.cells.len(), 16 * (4 * o.len() + 2)),
        ));
    }
    let report = validate_net(o, &atlas, &net);
    if !report.ok() {
        return Err(fail("validate_net", format!("{:?}", &report.violations[..report.violations.len().min(4)])));
    }
    check_nodes(o, &trace).map_err(|(stage, detail)| fail(&stage, detail))?;
    Ok(trace)
}

/// Per-node invariant checks over the recorded canonical sub-nets.
pub fn check_nodes(o: &Orthotree, trace: &UnfoldTrace) -> Result<(), (String, String)> {
    let tree = build_dual_tree(o).map_err(|e| ("tree".to_string(), e.to_string()))?;
    for node in trace.nodes.iter().flatten() {
        if matches!(node.case, CaseId::Root | CaseId::SingleBox) {
            continue;
        }
        let b = node.bx;
        // Reconstruct the frame's context facts through the recorded
        // canonical net: the sub-net must cover exactly the subtree's
        // open cells.
        let mut subtree = BTreeSet::new();
        collect_subtree(&tree, b, &mut subtree);
        let expected: BTreeSet<_> = SurfaceAtlas::new(o)
            .cells()
            .iter()
            .copied()
            .filter(|c| subtree.contains(&c.bx))
            .collect();
        let got: BTreeSet<_> = node.canonical.cells.keys().copied().collect();
        if expected != got {
            return Err((
                "node-coverage".to_string(),
                format!("box {b}: sub-net covers {} cells, expected {}", got.len(), expected.len()),
            ));
        }
        let ctx = node_context_for(o, &tree, node);
        check_region(&node.canonical, &ctx)
            .map_err(|e| ("check_I1".to_string(), format!("box {b} ({}): {e}", node.case)))?;
        check_connections(o, &node.canonical, &ctx)
            .map_err(|e| ("check_I2".to_string(), format!("box {b} ({}): {e}", node.case)))?;
        let ring = own_ring(o, &tree, b);
        check_removable_mirrored(o, &node.canonical, node.canonical_mirrored, &ring, &node.used_rings)
            .map_err(|e| ("check_I3".to_string(), format!("box {b} ({}): {e}", node.case)))?;
    }
    Ok(())
}

fn collect_subtree(tree: &crate::model::DualTree, b: BoxId, out: &mut BTreeSet<BoxId>) {
    out.insert(b);
    for &(_, c) in &tree.children[b] {
        collect_subtree(tree, c, out);
    }
}

/// The open ring faces of b's own ring (around the face shared with its
/// parent).
fn own_ring(o: &Orthotree, tree: &crate::model::DualTree, b: BoxId) -> Vec<RingFace> {
    let parent = tree.parent[b].expect("non-root");
    let to_parent = ALL_DIRECTIONS
        .into_iter()
        .find(|&d| o.neighbor(b, d) == Some(parent))
        .expect("parent is adjacent");
    crate::surface::ring_of(o, b, to_parent.face())
        .expect("shared face is closed")
        .into_iter()
        .filter(|rf| rf.is_open(o))
        .collect()
}

/// Builds the validator-facing context from the recorded traversal
/// facts. The canonical frame of a node is reconstructible from its
/// parent direction and the mirrored/reversed flags recorded in the
/// trace plus the entry port side; reversal swaps the two ports.
/// The context facts are a function of the node's recorded frame: for
/// reversed runs the half-turned net's ports line up with the true
/// frame's ports, so the recorded frame serves both.
fn node_context_for(
    o: &Orthotree,
    tree: &crate::model::DualTree,
    node: &crate::unfolder::NodeTrace,
) -> NodeContext {
    let frame = Frame {
        bx: node.bx,
        rot: node.frame_rot,
    };
    let ctx = context::node_ctx(o, tree, &frame);
    let conv = |p: &context::PortInfo| PortContext {
        outside: p.outside,
        next: p.next,
        next_open: p.next_open,
        next_adjacent_subtree: p.across_in_subtree,
    };
    NodeContext {
        entry: conv(&ctx.entry),
        exit: conv(&ctx.exit),
    }
}

fn check_removable_mirrored(
    o: &Orthotree,
    net: &Net,
    mirrored: bool,
    ring: &[RingFace],
    used: &[RingFace],
) -> Result<(), String> {
    if mirrored {
        // Transpose into a true development first.
        let t = unfolder::hand_first_of(net);
        check_removable(o, &t, ring, used)
    } else {
        check_removable(o, net, ring, used)
    }
}

/// Configuration for `run_suite`.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub max_n: usize,
    pub mode: GeneratorMode,
    pub seed: u64,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    Exhaustive,
    Random,
}

#[derive(Debug, Default)]
pub struct SuiteSummary {
    pub instances: usize,
    pub failures: Vec<SuiteFailure>,
    pub coverage: CoverageReport,
}

/// Runs the unfold-validate pipeline over generated instances. Any
/// failure is shrunk to a minimal reproducer by leaf deletion.
pub fn run_suite(config: &GeneratorConfig) -> SuiteSummary {
    let mut summary = SuiteSummary::default();
    let instances: Vec<Orthotree> = match config.mode {
        GeneratorMode::Exhaustive => enumerate_tree_polycubes(config.max_n),
        GeneratorMode::Random => (0..config.count)
            .filter_map(|k| {
                let n = 1 + ((config.seed ^ k as u64).wrapping_mul(0x2545f4914f6cdd1d) as usize)
                    % config.max_n;
                random_tree_polycube(n.max(1), config.seed.wrapping_add(k as u64)).ok()
            })
            .collect(),
    };
    for o in instances {
        summary.instances += 1;
        match check_instance(&o) {
            Ok(trace) => summary.coverage.record(&trace),
            Err(f) => summary.failures.push(shrink(&o, f)),
        }
    }
    summary
}

/// Shrinks a failing instance by deleting leaves while the failure
/// (any failure) persists.
pub fn shrink(_o: &Orthotree, original: SuiteFailure) -> SuiteFailure {
    let mut best = original;
    let mut current: Vec<V3> = best.positions.clone();
    loop {
        let mut improved = false;
        for k in 0..current.len() {
            if current.len() <= 1 {
                break;
            }
            let mut cand = current.clone();
            cand.remove(k);
            let Ok(o2) = Orthotree::from_positions(&cand) else {
                continue;
            };
            if !validate_orthotree(&o2).ok() {
                continue;
            }
            if let Err(f) = check_instance(&o2) {
                best = f;
                current = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            return best;
        }
    }
}

/// Deterministic instance stream for property tests.
pub fn sample_instances(seed: u64, count: usize, max_n: usize) -> Vec<Orthotree> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .filter_map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_tree_polycube(n, rng.gen()).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_box_shapes() {
        let shapes = enumeration_counts(2);
        assert_eq!(shapes[1], 1);
        assert_eq!(shapes[2], 3);
    }

    #[test]
    fn random_growth_is_deterministic() {
        let a = random_tree_polycube(5, 42).unwrap();
        let b = random_tree_polycube(5, 42).unwrap();
        let pa: Vec<V3> = a.boxes().iter().map(|x| x.pos).collect();
        let pb: Vec<V3> = b.boxes().iter().map(|x| x.pos).collect();
        assert_eq!(pa, pb);
    }

    #[test]
    fn random_growth_is_valid() {
        for seed in 0..10 {
            let o = random_tree_polycube(12, seed).unwrap();
            assert!(validate_orthotree(&o).ok());
            assert_eq!(o.open_face_count(), 4 * o.len() + 2);
        }
    }
}
