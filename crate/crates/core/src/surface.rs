//! The 4x4 refined surface atlas: every open quarter-cell, exact
//! cross-edge adjacency with rotation bookkeeping, rings and the
//! entry/exit context used by the unfolder and the validators.
//!
//! Per-face frames are fixed globally. For each face `u` is the
//! j-direction and `v` the i-direction, with u x v = outward normal:
//!
//! | face | u  | v  |
//! |------|----|----|
//! | T    | +x | -z |
//! | B    | +x | +z |
//! | F    | +x | +y |
//! | K    | +x | -y |
//! | R    | -z | +y |
//! | L    | +z | +y |

use crate::geom::{Direction, FaceLabel, V3, ALL_FACES};
use crate::model::{BoxId, Orthotree};
use thiserror::Error;

/// One 1/4 x 1/4 element of a face's 4x4 grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct QuarterCell {
    pub bx: BoxId,
    pub face: FaceLabel,
    pub i: u8,
    pub j: u8,
}

impl QuarterCell {
    pub fn new(bx: BoxId, face: FaceLabel, i: u8, j: u8) -> QuarterCell {
        debug_assert!(i < 4 && j < 4);
        QuarterCell { bx, face, i, j }
    }
}

/// j-direction of the face frame.
pub fn face_u(f: FaceLabel) -> V3 {
    match f {
        FaceLabel::T | FaceLabel::B | FaceLabel::F | FaceLabel::K => V3(1, 0, 0),
        FaceLabel::R => V3(0, 0, -1),
        FaceLabel::L => V3(0, 0, 1),
    }
}

/// i-direction of the face frame.
pub fn face_v(f: FaceLabel) -> V3 {
    match f {
        FaceLabel::T => V3(0, 0, -1),
        FaceLabel::B => V3(0, 0, 1),
        FaceLabel::F => V3(0, 1, 0),
        FaceLabel::K => V3(0, -1, 0),
        FaceLabel::R | FaceLabel::L => V3(0, 1, 0),
    }
}

/// Center of a quarter cell in 1/8-lattice coordinates (odd components
/// on the face plane axes).
pub fn cell_center8(pos: V3, face: FaceLabel, i: u8, j: u8) -> V3 {
    let origin = face_origin8(pos, face);
    origin + face_u(face).scale(2 * j as i32 + 1) + face_v(face).scale(2 * i as i32 + 1)
}

/// The face corner where both frame coordinates are zero, in 1/8 units.
fn face_origin8(pos: V3, face: FaceLabel) -> V3 {
    let p8 = pos.scale(8);
    let n = face.normal().vec();
    let u = face_u(face);
    let v = face_v(face);
    // Start from the face-plane corner minimizing u and v coordinates.
    let comp = |axis: i32, n_c: i32, u_c: i32, v_c: i32| -> i32 {
        let mut c = axis;
        if n_c > 0 {
            c += 8;
        }
        if u_c < 0 || v_c < 0 {
            c += 8;
        }
        c
    };
    V3(
        comp(p8.0, n.0, u.0, v.0),
        comp(p8.1, n.1, u.1, v.1),
        comp(p8.2, n.2, u.2, v.2),
    )
}

/// Recovers (i, j) of the cell with the given center on a known face.
fn cell_from_center8(pos: V3, face: FaceLabel, center: V3) -> QuarterCell {
    let rel = center - face_origin8(pos, face);
    let j = (rel.dot(face_u(face)) - 1) / 2;
    let i = (rel.dot(face_v(face)) - 1) / 2;
    debug_assert!((0..4).contains(&i) && (0..4).contains(&j));
    QuarterCell {
        bx: usize::MAX, // caller fills the box id
        face,
        i: i as u8,
        j: j as u8,
    }
}

/// Sides of a quarter cell in frame coordinates.
/// 0 = +u, 1 = +v, 2 = -u, 3 = -v.
pub type Side = u8;

/// Result of stepping across one quarter-cell side on the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub cell: QuarterCell,
    /// The side of the target cell that faces back across the fold.
    pub back: Side,
}

/// Full refined-surface atlas of an orthotree.
#[derive(Clone, Debug)]
pub struct SurfaceAtlas {
    cells: Vec<QuarterCell>,
}

impl SurfaceAtlas {
    pub fn new(o: &Orthotree) -> SurfaceAtlas {
        let mut cells = Vec::new();
        for b in 0..o.len() {
            for f in ALL_FACES {
                if o.face_open(b, f) {
                    for i in 0..4 {
                        for j in 0..4 {
                            cells.push(QuarterCell::new(b, f, i, j));
                        }
                    }
                }
            }
        }
        SurfaceAtlas { cells }
    }

    pub fn cells(&self) -> &[QuarterCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The tangent direction out of a cell across side `s` at rotation 0.
pub fn side_tangent(face: FaceLabel, s: Side) -> V3 {
    match s & 3 {
        0 => face_u(face),
        1 => face_v(face),
        2 => -face_u(face),
        _ => -face_v(face),
    }
}

fn side_of_tangent(face: FaceLabel, t: V3) -> Side {
    for s in 0..4 {
        if side_tangent(face, s) == t {
            return s;
        }
    }
    unreachable!("tangent must be one of the four side directions")
}

/// Steps from `cell` across side `s` along the surface of `o`.
///
/// The three possible local shapes are a coplanar continuation onto the
/// neighbor box, a convex fold onto the same box, and a reflex fold onto
/// the diagonal box. Exactly one applies on a closed surface.
pub fn cross(o: &Orthotree, cell: QuarterCell, s: Side) -> Crossing {
    let pos = o.pos(cell.bx);
    let f = cell.face;
    let n = f.normal().vec();
    let center = cell_center8(pos, f, cell.i, cell.j);
    let d = side_tangent(f, s);
    let interior = center + d.scale(2);

    // Still on the same 4x4 face?
    let rel = interior - face_origin8(pos, f);
    let ju = rel.dot(face_u(f));
    let iv = rel.dot(face_v(f));
    if (0..8).contains(&ju) && (0..8).contains(&iv) {
        let mut c = cell_from_center8(pos, f, interior);
        c.bx = cell.bx;
        let back = side_of_tangent(f, -d);
        return Crossing { cell: c, back };
    }

    let d_dir = Direction::from_vec(d).expect("axis tangent");
    let n_dir = Direction::from_vec(n).expect("axis normal");
    if let Some(diag) = o
        .neighbor(cell.bx, d_dir)
        .and_then(|nb| o.neighbor(nb, n_dir))
    {
        // Reflex fold: the diagonal box's face looking back at us.
        let nf = FaceLabel::from_normal(d_dir.opposite());
        let ncenter = center + d + n;
        let mut c = cell_from_center8(o.pos(diag), nf, ncenter);
        c.bx = diag;
        let back = side_of_tangent(nf, -n);
        return Crossing { cell: c, back };
    }
    if let Some(nb) = o.neighbor(cell.bx, d_dir) {
        // Coplanar continuation.
        let ncenter = center + d.scale(2);
        let mut c = cell_from_center8(o.pos(nb), f, ncenter);
        c.bx = nb;
        let back = side_of_tangent(f, -d);
        return Crossing { cell: c, back };
    }
    // Convex fold onto this box.
    let nf = FaceLabel::from_normal(d_dir);
    let ncenter = center + d - n;
    let mut c = cell_from_center8(pos, nf, ncenter);
    c.bx = cell.bx;
    let back = side_of_tangent(nf, n);
    Crossing { cell: c, back }
}

/// Planar placement of a cell: position of its min corner plus the
/// number of ccw quarter turns applied to the face frame.
pub type Placement = (i32, i32, u8);

/// Planar direction of side `s` of a cell placed with rotation `r`.
pub fn side_planar_dir(s: Side, r: u8) -> u8 {
    (s + r) % 4
}

/// Develops across side `s` of a placed cell: returns the neighbor cell
/// and its forced placement so the shared fold is isometric.
pub fn develop_step(o: &Orthotree, cell: QuarterCell, p: Placement, s: Side) -> (QuarterCell, Placement) {
    let (x, y, r) = p;
    let d = side_planar_dir(s, r);
    let (dx, dy) = crate::geom::planar_dir(d);
    let x2 = x + dx;
    let y2 = y + dy;
    let crossing = cross(o, cell, s);
    // The back side of the target faces the opposite planar direction.
    let r2 = (d + 2 + 4 - crossing.back) % 4;
    (crossing.cell, (x2, y2, r2))
}

/// A 1/4 x 1 strip of `face` adjacent to the box edge shared with the
/// face toward `toward`; the atom the ring machinery works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RingFace {
    pub bx: BoxId,
    pub face: FaceLabel,
    /// The box-face direction this strip hugs.
    pub toward: Direction,
}

impl RingFace {
    /// The four quarter cells of the strip, ordered along the strip.
    pub fn cells(&self, o: &Orthotree) -> [QuarterCell; 4] {
        let _ = o;
        let f = self.face;
        let t = self.toward.vec();
        let u = face_u(f);
        let v = face_v(f);
        let mut out = [QuarterCell::new(self.bx, f, 0, 0); 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let (i, j) = if u == t {
                (k as u8, 3)
            } else if u == -t {
                (k as u8, 0)
            } else if v == t {
                (3, k as u8)
            } else {
                debug_assert!(v == -t);
                (0, k as u8)
            };
            *slot = QuarterCell::new(self.bx, f, i, j);
        }
        out
    }

    pub fn is_open(&self, o: &Orthotree) -> bool {
        o.face_open(self.bx, self.face)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("face {face:?} of box {bx} is not closed")]
    FaceNotClosed { bx: BoxId, face: FaceLabel },
}

/// The four ring faces of the band around `closed_face` of box `b`,
/// in cyclic order. Strips may lie on open or closed faces.
pub fn ring_of(o: &Orthotree, b: BoxId, closed_face: FaceLabel) -> Result<[RingFace; 4], RingError> {
    if o.face_open(b, closed_face) {
        return Err(RingError::FaceNotClosed {
            bx: b,
            face: closed_face,
        });
    }
    let axis = closed_face.normal().vec();
    // The four faces wrapping around the axis, in a fixed cyclic order.
    let mut dirs = Vec::new();
    let start = if axis.0 != 0 {
        V3(0, 1, 0)
    } else {
        V3(1, 0, 0)
    };
    let mut cur = start;
    for _ in 0..4 {
        dirs.push(cur);
        cur = axis.cross(cur);
    }
    let faces: Vec<RingFace> = dirs
        .iter()
        .map(|&d| RingFace {
            bx: b,
            face: FaceLabel::from_normal(Direction::from_vec(d).unwrap()),
            toward: closed_face.normal(),
        })
        .collect();
    Ok([faces[0], faces[1], faces[2], faces[3]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ALL_DIRECTIONS;
    use crate::model::parse_orthotree;

    #[test]
    fn frames_are_right_handed() {
        for f in ALL_FACES {
            assert_eq!(face_u(f).cross(face_v(f)), f.normal().vec());
        }
    }

    #[test]
    fn atlas_counts() {
        let one = parse_orthotree("0 0 0").unwrap();
        assert_eq!(SurfaceAtlas::new(&one).len(), 96);
        let domino = parse_orthotree("0 0 0\n1 0 0").unwrap();
        assert_eq!(SurfaceAtlas::new(&domino).len(), 160);
        let l = parse_orthotree("0 0 0\n1 0 0\n1 1 0").unwrap();
        assert_eq!(SurfaceAtlas::new(&l).len(), 16 * (4 * 3 + 2));
    }

    #[test]
    fn crossing_is_involutive() {
        for text in ["0 0 0", "0 0 0\n1 0 0", "0 0 0\n1 0 0\n1 1 0", "0 0 0\n1 0 0\n1 1 0\n1 1 1"]
        {
            let o = parse_orthotree(text).unwrap();
            let atlas = SurfaceAtlas::new(&o);
            for &c in atlas.cells() {
                for s in 0..4 {
                    let x = cross(&o, c, s);
                    let back = cross(&o, x.cell, x.back);
                    assert_eq!(back.cell, c, "{:?} side {}", c, s);
                    assert_eq!(back.back, s);
                }
            }
        }
    }

    #[test]
    fn every_cell_has_four_neighbors() {
        let o = parse_orthotree("0 0 0\n0 0 -1\n1 0 -1").unwrap();
        let atlas = SurfaceAtlas::new(&o);
        for &c in atlas.cells() {
            for s in 0..4 {
                let x = cross(&o, c, s);
                assert!(o.face_open(x.cell.bx, x.cell.face), "landed on closed face");
            }
        }
    }

    #[test]
    fn reflex_crossing_lands_on_diagonal_box() {
        // Boxes at origin and behind: crossing from T of the front box
        // over its back edge stays on the surface.
        let o = parse_orthotree("0 0 0\n0 1 -1").unwrap();
        // Not a valid orthotree (edge contact) but adjacency math still works
        // on the valid variant below.
        let _ = o;
        let o = parse_orthotree("0 0 0\n0 0 -1\n0 1 -1").unwrap();
        let front = o.id_at(V3(0, 0, 0)).unwrap();
        let upper = o.id_at(V3(0, 1, -1)).unwrap();
        // T of the front box, stepping back (side toward -z = +v? v(T) = -z).
        let c = QuarterCell::new(front, FaceLabel::T, 3, 1);
        let x = cross(&o, c, 1);
        assert_eq!(x.cell.bx, upper);
        assert_eq!(x.cell.face, FaceLabel::F);
    }

    #[test]
    fn ring_of_requires_closed_face() {
        let o = parse_orthotree("0 0 0\n1 0 0").unwrap();
        let a = o.id_at(V3(0, 0, 0)).unwrap();
        assert!(ring_of(&o, a, FaceLabel::R).is_ok());
        assert_eq!(
            ring_of(&o, a, FaceLabel::T),
            Err(RingError::FaceNotClosed {
                bx: a,
                face: FaceLabel::T
            })
        );
    }

    #[test]
    fn ring_strips_partition_the_band() {
        let o = parse_orthotree("0 0 0\n0 0 1").unwrap();
        let a = o.id_at(V3(0, 0, 0)).unwrap();
        let ring = ring_of(&o, a, FaceLabel::F).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for rf in ring {
            for c in rf.cells(&o) {
                // All strip cells hug the front face: their centers are
                // within a quarter unit of the z = 8 plane.
                let ctr = cell_center8(o.pos(a), rf.face, c.i, c.j);
                assert_eq!(ctr.2, 7, "{:?}", c);
                assert!(seen.insert(c));
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn rolling_cycle_returns_to_start() {
        // Developing the 4-cycle of quarter cells around any quarter
        // vertex that is not a box corner accumulates identity rotation.
        for text in ["0 0 0", "0 0 0\n1 0 0\n1 1 0", "0 0 0\n1 0 0\n1 1 0\n1 1 1"] {
            let o = parse_orthotree(text).unwrap();
            let atlas = SurfaceAtlas::new(&o);
            for &c in atlas.cells() {
                for s in 0..4u8 {
                    let center = cell_center8(o.pos(c.bx), c.face, c.i, c.j);
                    let corner =
                        center + side_tangent(c.face, s) + side_tangent(c.face, (s + 1) % 4);
                    let zeros = [corner.0, corner.1, corner.2]
                        .iter()
                        .filter(|&&v| v.rem_euclid(8) == 0)
                        .count();
                    if zeros >= 3 {
                        continue; // box corner: cone point, not flat
                    }
                    let mut cur = c;
                    let mut place = (0, 0, 0u8);
                    let mut side = s;
                    for _ in 0..4 {
                        // Cross, then take the next side around the vertex.
                        let d = side_planar_dir(side, place.2);
                        let (nc, np) = develop_step(&o, cur, place, side);
                        cur = nc;
                        place = np;
                        side = ((d + 1) % 4 + 4 - place.2 % 4) % 4;
                    }
                    assert_eq!(cur, c, "cycle around {:?}/{}", c, s);
                    assert_eq!(place, (0, 0, 0), "holonomy around {:?}/{}", c, s);
                }
            }
        }
    }

    #[test]
    fn direction_indexing_is_stable() {
        for d in ALL_DIRECTIONS {
            assert_eq!(ALL_DIRECTIONS[d.index()], d);
        }
    }
}
