//! Recursive unfolding of an orthotree into a flat net.
//!
//! The algorithm walks the dual tree from a degree-1 root. Every box is
//! unfolded in a standard position given by a [`frame::Frame`]; its net
//! is assembled on a [`canvas::Canvas`] in canonical coordinates (entry
//! port on the segment (0,0)-(4,0), net above) and spliced into the
//! parent. Case programs per node degree mirror the published case
//! analysis; every output is checked by the independent validators in
//! [`crate::net`].

pub mod canvas;
mod cases;
pub mod context;
pub mod frame;

use crate::geom::{Rot3, V3};
use crate::model::{build_dual_tree, BoxId, DualTree, Orthotree, ValidationReport};
use crate::net::{ConnKind, Net, Port};
use crate::surface::RingFace;
use canvas::{BuildError, Canvas};
use context::{node_ctx, NodeCtx};
use frame::Frame;
use std::fmt;
use thiserror::Error;

/// Identifier of the unfolding case applied to one box.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CaseId {
    SingleBox,
    Root,
    LeafHead,
    LeafHand,
    C2_1,
    C2_2,
    C2_3,
    C2_4,
    C3_1,
    /// true: entry-side lateral face of the parent open (type-2 entry).
    C3_2 {
        ri_open: bool,
    },
    C3_3,
    C3_4,
    C3_5 {
        kn_open: bool,
    },
    C3_6 {
        sub: u8,
    },
    C4_1,
    C4_2 {
        sub: u8,
    },
    C4_3,
    C4_4 {
        sub: u8,
    },
    C4_5 {
        sub: u8,
    },
    C4_6,
    C4_7 {
        sub: u8,
    },
    C5_1 {
        reduce: bool,
    },
    C5_2 {
        ns: bool,
    },
    C5_3,
    C5_4 {
        reduce: bool,
    },
    C6,
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::SingleBox => write!(f, "single-box"),
            CaseId::Root => write!(f, "root"),
            CaseId::LeafHead => write!(f, "leaf-head"),
            CaseId::LeafHand => write!(f, "leaf-hand"),
            CaseId::C2_1 => write!(f, "2.1"),
            CaseId::C2_2 => write!(f, "2.2"),
            CaseId::C2_3 => write!(f, "2.3"),
            CaseId::C2_4 => write!(f, "2.4"),
            CaseId::C3_1 => write!(f, "3.1"),
            CaseId::C3_2 { ri_open } => {
                write!(f, "3.2/{}", if *ri_open { "lateral-open" } else { "lateral-closed" })
            }
            CaseId::C3_3 => write!(f, "3.3"),
            CaseId::C3_4 => write!(f, "3.4"),
            CaseId::C3_5 { kn_open } => {
                write!(f, "3.5/{}", if *kn_open { "back-open" } else { "back-closed" })
            }
            CaseId::C3_6 { sub } => write!(f, "3.6/{}", sub),
            CaseId::C4_1 => write!(f, "4.1"),
            CaseId::C4_2 { sub } => write!(f, "4.2/{}", sub),
            CaseId::C4_3 => write!(f, "4.3"),
            CaseId::C4_4 { sub } => write!(f, "4.4/{}", sub),
            CaseId::C4_5 { sub } => write!(f, "4.5/{}", sub),
            CaseId::C4_6 => write!(f, "4.6"),
            CaseId::C4_7 { sub } => write!(f, "4.7/{}", sub),
            CaseId::C5_1 { reduce } => {
                write!(f, "5.1/{}", if *reduce { "reduce" } else { "lateral-pair" })
            }
            CaseId::C5_2 { ns } => {
                write!(f, "5.2/{}", if *ns { "ns-pair" } else { "ij-pair" })
            }
            CaseId::C5_3 => write!(f, "5.3"),
            CaseId::C5_4 { reduce } => {
                write!(f, "5.4/{}", if *reduce { "reduce" } else { "ew-pair" })
            }
            CaseId::C6 => write!(f, "6"),
        }
    }
}

/// Per-node record of the recursive unfolding.
#[derive(Clone, Debug)]
pub struct NodeTrace {
    pub bx: BoxId,
    pub case: CaseId,
    /// The node's standard-position frame (local to world).
    pub frame_rot: Rot3,
    pub mirrored: bool,
    pub reversed: bool,
    pub entry_kind: Option<ConnKind>,
    pub exit_kind: Option<ConnKind>,
    /// Canonical sub-net (before any parent-side relocation).
    pub canonical: Net,
    /// Whether the canonical coordinates are a mirror image.
    pub canonical_mirrored: bool,
    /// Own ring faces used as connection strips.
    pub used_rings: Vec<RingFace>,
    /// Ring faces (of descendants) relocated by this node's assembly.
    pub relocated: Vec<RingFace>,
    /// Present-mask over this case's optional boxes, when it has any.
    pub variant: Option<(u8, u8)>,
}

#[derive(Clone, Debug, Default)]
pub struct UnfoldTrace {
    pub nodes: Vec<Option<NodeTrace>>,
}

impl UnfoldTrace {
    pub fn node(&self, b: BoxId) -> &NodeTrace {
        self.nodes[b].as_ref().expect("every box gets a trace node")
    }

    pub fn cases(&self) -> impl Iterator<Item = CaseId> + '_ {
        self.nodes.iter().flatten().map(|n| n.case)
    }
}

#[derive(Debug, Error)]
pub enum UnfoldError {
    #[error("input is not a valid orthotree: {0:?}")]
    InvalidInput(ValidationReport),
    #[error("internal case gap: {0}")]
    InternalCaseGap(String),
}

impl From<BuildError> for UnfoldError {
    fn from(e: BuildError) -> Self {
        UnfoldError::InternalCaseGap(e.to_string())
    }
}

pub(crate) struct Cx<'a> {
    pub o: &'a Orthotree,
    pub tree: &'a DualTree,
    pub trace: Vec<Option<NodeTrace>>,
}

impl<'a> Cx<'a> {
    /// Recursively unfolds the subtree at `frame.bx` and records its
    /// trace node. Returns the canonical canvas.
    pub fn unfold_node(&mut self, frame: Frame) -> Result<Canvas, BuildError> {
        let ctx = node_ctx(self.o, self.tree, &frame);
        let (canvas, case, used, relocated, variant, reversed) =
            cases::dispatch(self, frame, &ctx)?;
        debug_assert_eq!(canvas.mirrored, frame.mirrored());
        // Connection legality is a structural property of the case
        // programs; verify it eagerly so defects surface at build time.
        if canvas.entry_kind == ConnKind::Type2 && !ctx.entry.type2_legal() {
            return Err(BuildError::CaseGap("illegal type-2 entry"));
        }
        if canvas.exit_kind == ConnKind::Type2 && !ctx.exit.type2_legal() {
            return Err(BuildError::CaseGap("illegal type-2 exit"));
        }
        let canonical = canvas_to_net(&canvas);
        self.trace[frame.bx] = Some(NodeTrace {
            bx: frame.bx,
            case,
            frame_rot: frame.rot,
            mirrored: frame.mirrored(),
            reversed,
            entry_kind: Some(canvas.entry_kind),
            exit_kind: Some(canvas.exit_kind),
            canonical,
            canonical_mirrored: canvas.mirrored,
            used_rings: used,
            relocated,
            variant,
        });
        Ok(canvas)
    }

    pub fn ctx_of(&self, frame: &Frame) -> NodeCtx {
        node_ctx(self.o, self.tree, frame)
    }
}

fn canvas_to_net(c: &Canvas) -> Net {
    Net {
        cells: c.cells.clone(),
        entry: Some(c.entry),
        exit: Some(c.exit),
        entry_kind: Some(c.entry_kind),
        exit_kind: Some(c.exit_kind),
    }
}

/// Unfolds a valid orthotree into a net, with a full per-node trace.
pub fn unfold(o: &Orthotree) -> Result<(Net, UnfoldTrace), UnfoldError> {
    let report = crate::model::validate_orthotree(o);
    if !report.ok() {
        return Err(UnfoldError::InvalidInput(report));
    }
    let tree = build_dual_tree(o).expect("validated above");
    let mut cx = Cx {
        o,
        tree: &tree,
        trace: vec![None; o.len()],
    };

    if o.len() == 1 {
        let canvas = cases::single_box(&mut cx)?;
        cx.trace[0] = Some(NodeTrace {
            bx: 0,
            case: CaseId::SingleBox,
            frame_rot: Rot3::IDENTITY,
            mirrored: false,
            reversed: false,
            entry_kind: None,
            exit_kind: None,
            canonical: plain_net(&canvas),
            canonical_mirrored: false,
            used_rings: Vec::new(),
            relocated: Vec::new(),
            variant: None,
        });
        let net = plain_net(&canvas);
        return Ok((net, UnfoldTrace { nodes: cx.trace }));
    }

    // Root handling: reorient so the root's unique child is its local
    // back neighbor; the unfolding path starts on the root's top face
    // and ends on its bottom face.
    let root = tree.root;
    let (child_dir, _child) = (
        tree.children[root][0].0,
        tree.children[root][0].1,
    );
    let z = -child_dir.vec();
    let y = if z.1 == 0 { V3(0, 1, 0) } else { V3(0, 0, 1) };
    let x = y.cross(z);
    let root_frame = Frame {
        bx: root,
        rot: Rot3::from_cols(x, y, z),
    };
    let canvas = cases::root(&mut cx, root_frame)?;
    cx.trace[root] = Some(NodeTrace {
        bx: root,
        case: CaseId::Root,
        frame_rot: root_frame.rot,
        mirrored: false,
        reversed: false,
        entry_kind: None,
        exit_kind: None,
        canonical: plain_net(&canvas),
        canonical_mirrored: false,
        used_rings: Vec::new(),
        relocated: Vec::new(),
        variant: None,
    });
    debug_assert!(!canvas.mirrored);
    let net = plain_net(&canvas);
    Ok((net, UnfoldTrace { nodes: cx.trace }))
}

fn plain_net(c: &Canvas) -> Net {
    Net {
        cells: c.cells.clone(),
        entry: None,
        exit: None,
        entry_kind: None,
        exit_kind: None,
    }
}

/// Lemma-style transform of a head-first net into its hand-first
/// counterpart: counterclockwise quarter turn followed by a horizontal
/// reflection (jointly, the transpose), with ports tracked.
pub fn hand_first_of(net: &Net) -> Net {
    let mut out = Net::new();
    for (&c, &(x, y, r)) in &net.cells {
        out.cells.insert(c, (y, x, (1 + 4 - r) % 4));
    }
    out.entry = net.entry;
    out.exit = net.exit;
    out.entry_kind = net.entry_kind;
    out.exit_kind = net.exit_kind;
    out
}

/// Reverse traversal (half-turn) of a canonical sub-net: entry and exit
/// swap roles; the result is translated back to canonical position.
pub fn reverse_traversal(net: &Net) -> Net {
    let exit = net.exit.unwrap_or(Port { x: 0, y: 0 });
    let (tx, ty) = (exit.x + 4, exit.y);
    let mut out = Net::new();
    for (&c, &(x, y, r)) in &net.cells {
        out.cells.insert(c, (tx - x - 1, ty - y - 1, (r + 2) % 4));
    }
    out.entry = Some(Port { x: 0, y: 0 });
    out.exit = Some(Port { x: exit.x, y: exit.y });
    out.entry_kind = net.exit_kind;
    out.exit_kind = net.entry_kind;
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelocateError {
    #[error("ring face participates in a connection")]
    RingFaceInUse,
    #[error("removal would disconnect the net")]
    WouldDisconnect,
    #[error("target cells are occupied")]
    TargetOccupied,
}

/// Moves an unused open ring face of a net to an explicit planar target,
/// preserving the invariant that removal cannot disconnect the rest.
pub fn relocate_ring_face(
    o: &Orthotree,
    net: &Net,
    rf: RingFace,
    used: &[RingFace],
    target: [(i32, i32, u8); 4],
) -> Result<Net, RelocateError> {
    if used.iter().any(|u| u == &rf) {
        return Err(RelocateError::RingFaceInUse);
    }
    let cells = rf.cells(o);
    let mut out = net.clone();
    for c in cells {
        out.cells.remove(&c);
    }
    // Connectivity of the remainder over glued folds.
    if let Some((&seed, _)) = out.cells.iter().next() {
        let mut seen = std::collections::BTreeSet::from([seed]);
        let mut queue = std::collections::VecDeque::from([seed]);
        while let Some(c) = queue.pop_front() {
            for s in 0..4 {
                if let Some(nc) = crate::net::glued(o, &out, c, s) {
                    if seen.insert(nc) {
                        queue.push_back(nc);
                    }
                }
            }
        }
        if seen.len() != out.cells.len() {
            return Err(RelocateError::WouldDisconnect);
        }
    }
    let occupied: std::collections::BTreeSet<(i32, i32)> =
        out.cells.values().map(|&(x, y, _)| (x, y)).collect();
    for (k, c) in cells.into_iter().enumerate() {
        let (x, y, r) = target[k];
        if occupied.contains(&(x, y)) {
            return Err(RelocateError::TargetOccupied);
        }
        out.cells.insert(c, (x, y, r));
    }
    Ok(out)
}

pub use frame::Frame as NodeFrame;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_orthotree;
    use crate::net::validate_net;
    use crate::surface::SurfaceAtlas;

    #[test]
    fn single_box_unfolds_to_cross() {
        let o = parse_orthotree("0 0 0").unwrap();
        let (net, trace) = unfold(&o).unwrap();
        assert_eq!(net.cells.len(), 96);
        assert_eq!(trace.node(0).case, CaseId::SingleBox);
        let atlas = SurfaceAtlas::new(&o);
        let report = validate_net(&o, &atlas, &net);
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn domino_unfolds_and_validates() {
        let o = parse_orthotree("0 0 0\n1 0 0").unwrap();
        let (net, trace) = unfold(&o).unwrap();
        assert_eq!(net.cells.len(), 160);
        let atlas = SurfaceAtlas::new(&o);
        let report = validate_net(&o, &atlas, &net);
        assert!(report.ok(), "{:?}", report.violations);
        let cases: Vec<CaseId> = trace.cases().collect();
        assert!(cases.contains(&CaseId::Root));
        assert!(cases.contains(&CaseId::LeafHead));
    }
}
