//! Entry/exit context of a recursive node: the ring faces at and around
//! its ports, their open/closed state, and subtree adjacency. This is
//! what decides which connection kinds are legal (and which reception
//! strips a parent must provide).

use crate::geom::Direction;
use crate::model::{BoxId, DualTree, Orthotree};
use crate::surface::{cross, side_tangent, QuarterCell, RingFace};

use super::frame::{Frame, Loc};

/// One side (entry or exit) of a node's context.
#[derive(Clone, Copy, Debug)]
pub struct PortInfo {
    /// Open ring face just inside the subtree (e' / x').
    pub inside: RingFace,
    /// Open ring face just outside (e / x).
    pub outside: RingFace,
    /// Successor of e (predecessor of x) around the outside ring.
    pub next: RingFace,
    pub next_open: bool,
    /// The open strip across `next`'s port-collinear side, when `next`
    /// is open. This is the type-2 connection strip when it lies in the
    /// subtree.
    pub across: Option<RingFace>,
    pub across_in_subtree: bool,
}

impl PortInfo {
    pub fn type2_legal(&self) -> bool {
        self.next_open && self.across_in_subtree
    }
}

#[derive(Clone, Copy, Debug)]
pub struct NodeCtx {
    pub entry: PortInfo,
    pub exit: PortInfo,
}

/// True when `q` lies in the subtree rooted at `b`.
pub fn in_subtree(t: &DualTree, b: BoxId, q: BoxId) -> bool {
    let mut cur = Some(q);
    while let Some(c) = cur {
        if c == b {
            return true;
        }
        cur = t.parent[c];
    }
    false
}

/// The two open strips meeting along a port edge of the face shared by
/// `b` and its parent. `port` points from the shared face toward the
/// edge (local +y or -y mapped to the world).
fn port_faces(
    o: &Orthotree,
    b: BoxId,
    parent: BoxId,
    parent_dir: Direction,
    port: Direction,
) -> (RingFace, RingFace) {
    let inside = if o.face_open(b, port.face()) {
        RingFace {
            bx: b,
            face: port.face(),
            toward: parent_dir,
        }
    } else {
        let n = o.neighbor(b, port).expect("closed face has a neighbor");
        // The box above b cannot also touch the parent's column: that
        // would close a cycle in the dual tree.
        RingFace {
            bx: n,
            face: parent_dir.face(),
            toward: port.opposite(),
        }
    };
    let outside = if o.face_open(parent, port.face()) {
        RingFace {
            bx: parent,
            face: port.face(),
            toward: parent_dir.opposite(),
        }
    } else {
        let above = o
            .neighbor(parent, port)
            .expect("closed face has a neighbor");
        RingFace {
            bx: above,
            face: parent_dir.opposite().face(),
            toward: port.opposite(),
        }
    };
    debug_assert!(inside.is_open(o), "inside port face must be open");
    debug_assert!(outside.is_open(o), "outside port face must be open");
    (inside, outside)
}

/// The strip across `rf`'s side that lies in the plane of the ring's
/// closed face. Only defined when `rf` is open.
pub fn across_strip(o: &Orthotree, rf: RingFace) -> RingFace {
    let cell = rf.cells(o)[0];
    let s = (0..4)
        .find(|&s| side_tangent(cell.face, s) == rf.toward.vec())
        .expect("ring strip has a side toward its hugged face");
    let x = cross(o, cell, s);
    let t = side_tangent(x.cell.face, x.back);
    RingFace {
        bx: x.cell.bx,
        face: x.cell.face,
        toward: Direction::from_vec(t).expect("axis tangent"),
    }
}

fn port_info(
    o: &Orthotree,
    t: &DualTree,
    b: BoxId,
    parent: BoxId,
    parent_dir: Direction,
    port: Direction,
    next_normal: Direction,
) -> PortInfo {
    let (inside, outside) = port_faces(o, b, parent, parent_dir, port);
    let next = RingFace {
        bx: outside.bx,
        face: next_normal.face(),
        toward: outside.toward,
    };
    let next_open = next.is_open(o);
    let (across, across_in_subtree) = if next_open {
        let a = across_strip(o, next);
        let ins = in_subtree(t, b, a.bx);
        (Some(a), ins)
    } else {
        (None, false)
    };
    PortInfo {
        inside,
        outside,
        next,
        next_open,
        across,
        across_in_subtree,
    }
}

/// Context for both ports of the node unfolded in `frame`.
pub fn node_ctx(o: &Orthotree, t: &DualTree, frame: &Frame) -> NodeCtx {
    let b = frame.bx;
    let parent = t.parent[b].expect("context is for non-root nodes");
    let parent_dir = frame.dir(Loc::I);
    debug_assert_eq!(o.neighbor(b, parent_dir), Some(parent));
    let hand = frame.dir(Loc::E);
    let entry = port_info(o, t, b, parent, parent_dir, frame.dir(Loc::N), hand);
    let exit = port_info(
        o,
        t,
        b,
        parent,
        parent_dir,
        frame.dir(Loc::S),
        hand.opposite(),
    );
    NodeCtx { entry, exit }
}

/// The four quarter cells of a strip ordered along a world direction.
pub fn strip_ordered(o: &Orthotree, rf: RingFace, along: Direction) -> [QuarterCell; 4] {
    let mut cells = rf.cells(o);
    cells.sort_by_key(|c| {
        crate::surface::cell_center8(o.pos(c.bx), c.face, c.i, c.j).dot(along.vec())
    });
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{FaceLabel, Rot3, V3};
    use crate::model::{build_dual_tree, parse_orthotree};

    /// The degree-2 east-child configuration: I at front of A, E east.
    /// Checked against the ring-face table stated for this case.
    #[test]
    fn east_child_context_matches_paper_table() {
        let o = parse_orthotree("0 0 1\n0 0 0\n1 0 0").unwrap();
        let t = build_dual_tree(&o).unwrap();
        let a = o.id_at(V3(0, 0, 0)).unwrap();
        let _ = o.id_at(V3(1, 0, 0)).unwrap();
        let i = o.id_at(V3(0, 0, 1)).unwrap();
        assert_eq!(t.root, i);

        // A's frame: parent I at +z, entry toward +y, det +1.
        let fa = Frame {
            bx: a,
            rot: Rot3::IDENTITY,
        };
        // E entered hand-first with port on the top edge of R_A.
        let fe = fa.child_frame(&o, Loc::E, Loc::N, -1);
        assert!(fe.mirrored());
        let ctx = node_ctx(&o, &t, &fe);

        // e_E on T_A, successor on K_A (open, adjacent to the subtree).
        assert_eq!(ctx.entry.outside.bx, a);
        assert_eq!(ctx.entry.outside.face, FaceLabel::T);
        assert_eq!(ctx.entry.next.bx, a);
        assert_eq!(ctx.entry.next.face, FaceLabel::K);
        assert!(ctx.entry.next_open);
        assert!(ctx.entry.across_in_subtree);
        // x_E on B_A, predecessor on F_A (closed).
        assert_eq!(ctx.exit.outside.bx, a);
        assert_eq!(ctx.exit.outside.face, FaceLabel::B);
        assert_eq!(ctx.exit.next.bx, a);
        assert_eq!(ctx.exit.next.face, FaceLabel::F);
        assert!(!ctx.exit.next_open);
        assert!(!ctx.exit.type2_legal());
    }

    /// A's own context in the same solid: successor of e_A lies on a
    /// face of the parent's ring and is not adjacent to the subtree.
    #[test]
    fn parent_side_context() {
        let o = parse_orthotree("0 0 1\n0 0 0\n1 0 0").unwrap();
        let t = build_dual_tree(&o).unwrap();
        let a = o.id_at(V3(0, 0, 0)).unwrap();
        let i = o.id_at(V3(0, 0, 1)).unwrap();
        let fa = Frame {
            bx: a,
            rot: Rot3::IDENTITY,
        };
        let ctx = node_ctx(&o, &t, &fa);
        assert_eq!(ctx.entry.outside.bx, i);
        assert_eq!(ctx.entry.outside.face, FaceLabel::T);
        assert_eq!(ctx.entry.next.bx, i);
        assert_eq!(ctx.entry.next.face, FaceLabel::R);
        assert!(ctx.entry.next_open);
        // Across R_I's port-collinear side lies R_A: closed, so the
        // across strip continues onto E's surface, which is in T_A.
        assert!(ctx.entry.across_in_subtree);
    }
}
