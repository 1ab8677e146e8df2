//! Local frames for recursive unfolding.
//!
//! Every box is unfolded in a standard position: its parent attached to
//! the local front (+z), the entry port on the top edge of the shared
//! face (toward local +y). A frame with determinant -1 is a mirrored
//! frame used for hand-first sub-unfoldings; the case table and all
//! placements read the world through it, which realizes the reflection
//! argument without materializing a mirrored solid.

use crate::geom::{Direction, FaceLabel, Rot3, V3};
use crate::model::{BoxId, DualTree, Orthotree};

#[derive(Clone, Copy, Debug)]
pub struct Frame {
    pub bx: BoxId,
    /// Maps local coordinates to world coordinates.
    pub rot: Rot3,
}

/// Local directions in a frame, spelled like the paper's box letters.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Loc {
    E,
    W,
    N,
    S,
    I,
    J,
}

pub const CHILD_SLOTS: [Loc; 5] = [Loc::E, Loc::W, Loc::N, Loc::S, Loc::J];

impl Loc {
    pub fn vec(self) -> V3 {
        match self {
            Loc::E => V3(1, 0, 0),
            Loc::W => V3(-1, 0, 0),
            Loc::N => V3(0, 1, 0),
            Loc::S => V3(0, -1, 0),
            Loc::I => V3(0, 0, 1),
            Loc::J => V3(0, 0, -1),
        }
    }

    pub fn from_vec(v: V3) -> Loc {
        match v {
            V3(1, 0, 0) => Loc::E,
            V3(-1, 0, 0) => Loc::W,
            V3(0, 1, 0) => Loc::N,
            V3(0, -1, 0) => Loc::S,
            V3(0, 0, 1) => Loc::I,
            _ => Loc::J,
        }
    }

    pub fn opposite(self) -> Loc {
        Loc::from_vec(-self.vec())
    }
}

impl Frame {
    pub fn mirrored(&self) -> bool {
        self.rot.det() < 0
    }

    /// World direction of a local one.
    pub fn dir(&self, l: Loc) -> Direction {
        Direction::from_vec(self.rot.apply(l.vec())).expect("axis image")
    }

    /// Local direction of a world one.
    pub fn loc(&self, d: Direction) -> Loc {
        Loc::from_vec(self.rot.inverse().apply(d.vec()))
    }

    /// The world face of this box seen locally as `l`.
    pub fn face(&self, l: Loc) -> FaceLabel {
        self.dir(l).face()
    }

    /// Neighbor box in a local direction.
    pub fn nbr(&self, o: &Orthotree, l: Loc) -> Option<BoxId> {
        o.neighbor(self.bx, self.dir(l))
    }

    /// Whether the local face is open (on the surface).
    pub fn open(&self, o: &Orthotree, l: Loc) -> bool {
        o.face_open(self.bx, self.face(l))
    }

    /// Child boxes by local slot, read through the tree.
    pub fn children(&self, _o: &Orthotree, t: &DualTree, slots: &mut Vec<(Loc, BoxId)>) {
        slots.clear();
        for &(d, c) in &t.children[self.bx] {
            slots.push((self.loc(d), c));
        }
    }

    /// Frame for unfolding a child: parent toward local +z, entry port
    /// edge toward local +y, handedness per `det` (+1 head, -1 hand
    /// relative to the true world).
    pub fn child_frame(
        &self,
        o: &Orthotree,
        child_at: Loc,
        port_toward: Loc,
        det: i32,
    ) -> Frame {
        debug_assert!(child_at.vec().dot(port_toward.vec()) == 0);
        let z = -self.rot.apply(child_at.vec());
        let y = self.rot.apply(port_toward.vec());
        let x = y.cross(z).scale(det * self.rot.det());
        let bx = self
            .nbr(o, child_at)
            .expect("child frame requires an occupied slot");
        Frame {
            bx,
            rot: Rot3::from_cols(x, y, z),
        }
    }

    /// The same box reoriented by a local z-rotation of 180 degrees;
    /// used to build a case as its reverse traversal.
    pub fn flipped(&self) -> Frame {
        let f = Rot3::from_cols(V3(-1, 0, 0), V3(0, -1, 0), V3(0, 0, 1));
        Frame {
            bx: self.bx,
            rot: self.rot.compose(&f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_dual_tree, parse_orthotree};

    #[test]
    fn child_frame_points_back_at_parent() {
        let o = parse_orthotree("0 0 0\n1 0 0").unwrap();
        let t = build_dual_tree(&o).unwrap();
        let parent = Frame {
            bx: t.root,
            rot: Rot3::IDENTITY,
        };
        let f = parent.child_frame(&o, Loc::E, Loc::N, 1);
        assert_eq!(f.dir(Loc::I), Direction::W);
        assert_eq!(f.dir(Loc::N), Direction::N);
        assert_eq!(f.rot.det(), 1);
        let g = parent.child_frame(&o, Loc::E, Loc::N, -1);
        assert_eq!(g.rot.det(), -1);
        assert_eq!(g.dir(Loc::I), Direction::W);
    }

    #[test]
    fn flipped_swaps_lateral_axes() {
        let o = parse_orthotree("0 0 0\n1 0 0").unwrap();
        let t = build_dual_tree(&o).unwrap();
        let f = Frame {
            bx: t.root,
            rot: Rot3::IDENTITY,
        };
        let g = f.flipped();
        assert_eq!(g.dir(Loc::E), Direction::W);
        assert_eq!(g.dir(Loc::N), Direction::S);
        assert_eq!(g.dir(Loc::I), Direction::I);
    }
}
