//! Integer lattice geometry: axis directions, face labels, signed
//! permutation rotations and small planar helpers.
//!
//! Axis convention (fixed for the whole crate): +x = E, +y = N,
//! +z = I (front), -z = J (back).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer 3-vector on the lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct V3(pub i32, pub i32, pub i32);

impl V3 {
    pub const ZERO: V3 = V3(0, 0, 0);

    pub fn dot(self, o: V3) -> i32 {
        self.0 * o.0 + self.1 * o.1 + self.2 * o.2
    }

    pub fn cross(self, o: V3) -> V3 {
        V3(
            self.1 * o.2 - self.2 * o.1,
            self.2 * o.0 - self.0 * o.2,
            self.0 * o.1 - self.1 * o.0,
        )
    }

    pub fn scale(self, k: i32) -> V3 {
        V3(self.0 * k, self.1 * k, self.2 * k)
    }
}

impl Add for V3 {
    type Output = V3;
    fn add(self, o: V3) -> V3 {
        V3(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }
}

impl Sub for V3 {
    type Output = V3;
    fn sub(self, o: V3) -> V3 {
        V3(self.0 - o.0, self.1 - o.1, self.2 - o.2)
    }
}

impl Neg for V3 {
    type Output = V3;
    fn neg(self) -> V3 {
        V3(-self.0, -self.1, -self.2)
    }
}

impl fmt::Debug for V3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

/// Neighbor directions. E/W along +-x, N/S along +-y, I/J along +z/-z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Direction {
    E,
    W,
    N,
    S,
    I,
    J,
}

pub const ALL_DIRECTIONS: [Direction; 6] = [
    Direction::E,
    Direction::W,
    Direction::N,
    Direction::S,
    Direction::I,
    Direction::J,
];

impl Direction {
    pub fn vec(self) -> V3 {
        match self {
            Direction::E => V3(1, 0, 0),
            Direction::W => V3(-1, 0, 0),
            Direction::N => V3(0, 1, 0),
            Direction::S => V3(0, -1, 0),
            Direction::I => V3(0, 0, 1),
            Direction::J => V3(0, 0, -1),
        }
    }

    pub fn from_vec(v: V3) -> Option<Direction> {
        ALL_DIRECTIONS.iter().copied().find(|d| d.vec() == v)
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::E => Direction::W,
            Direction::W => Direction::E,
            Direction::N => Direction::S,
            Direction::S => Direction::N,
            Direction::I => Direction::J,
            Direction::J => Direction::I,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Direction::E => 0,
            Direction::W => 1,
            Direction::N => 2,
            Direction::S => 3,
            Direction::I => 4,
            Direction::J => 5,
        }
    }

    /// The face of a box looking toward this neighbor.
    pub fn face(self) -> FaceLabel {
        match self {
            Direction::E => FaceLabel::R,
            Direction::W => FaceLabel::L,
            Direction::N => FaceLabel::T,
            Direction::S => FaceLabel::B,
            Direction::I => FaceLabel::F,
            Direction::J => FaceLabel::K,
        }
    }
}

/// Face labels of a box: T/B top/bottom, L/R left/right, F/K front/back.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum FaceLabel {
    T,
    B,
    L,
    R,
    F,
    K,
}

pub const ALL_FACES: [FaceLabel; 6] = [
    FaceLabel::T,
    FaceLabel::B,
    FaceLabel::L,
    FaceLabel::R,
    FaceLabel::F,
    FaceLabel::K,
];

impl FaceLabel {
    /// Outward normal direction.
    pub fn normal(self) -> Direction {
        match self {
            FaceLabel::T => Direction::N,
            FaceLabel::B => Direction::S,
            FaceLabel::L => Direction::W,
            FaceLabel::R => Direction::E,
            FaceLabel::F => Direction::I,
            FaceLabel::K => Direction::J,
        }
    }

    pub fn from_normal(d: Direction) -> FaceLabel {
        d.face()
    }

    pub fn letter(self) -> char {
        match self {
            FaceLabel::T => 'T',
            FaceLabel::B => 'B',
            FaceLabel::L => 'L',
            FaceLabel::R => 'R',
            FaceLabel::F => 'F',
            FaceLabel::K => 'K',
        }
    }

    pub fn from_letter(c: char) -> Option<FaceLabel> {
        ALL_FACES.iter().copied().find(|f| f.letter() == c)
    }
}

impl fmt::Display for FaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Signed permutation matrix: an element of the cube symmetry group.
/// Columns are the images of the local x, y, z basis vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Rot3 {
    pub cols: [V3; 3],
}

impl Rot3 {
    pub const IDENTITY: Rot3 = Rot3 {
        cols: [V3(1, 0, 0), V3(0, 1, 0), V3(0, 0, 1)],
    };

    pub fn from_cols(x: V3, y: V3, z: V3) -> Rot3 {
        Rot3 { cols: [x, y, z] }
    }

    pub fn apply(&self, v: V3) -> V3 {
        self.cols[0].scale(v.0) + self.cols[1].scale(v.1) + self.cols[2].scale(v.2)
    }

    pub fn apply_dir(&self, d: Direction) -> Direction {
        Direction::from_vec(self.apply(d.vec())).expect("signed permutation maps axes to axes")
    }

    pub fn det(&self) -> i32 {
        self.cols[0].cross(self.cols[1]).dot(self.cols[2])
    }

    pub fn compose(&self, inner: &Rot3) -> Rot3 {
        Rot3 {
            cols: [
                self.apply(inner.cols[0]),
                self.apply(inner.cols[1]),
                self.apply(inner.cols[2]),
            ],
        }
    }

    pub fn inverse(&self) -> Rot3 {
        // Transpose works for signed permutation matrices.
        let r = |i: usize| V3(self.cols[0].at(i), self.cols[1].at(i), self.cols[2].at(i));
        Rot3 {
            cols: [r(0), r(1), r(2)],
        }
    }

    /// All 24 proper rotations of the cube.
    pub fn rotations() -> Vec<Rot3> {
        let mut out = Vec::new();
        let units = [
            V3(1, 0, 0),
            V3(-1, 0, 0),
            V3(0, 1, 0),
            V3(0, -1, 0),
            V3(0, 0, 1),
            V3(0, 0, -1),
        ];
        for &x in &units {
            for &y in &units {
                if x.dot(y) != 0 {
                    continue;
                }
                let z = x.cross(y);
                out.push(Rot3::from_cols(x, y, z));
            }
        }
        out
    }
}

impl V3 {
    pub fn at(&self, i: usize) -> i32 {
        match i {
            0 => self.0,
            1 => self.1,
            _ => self.2,
        }
    }
}

impl Mul<V3> for Rot3 {
    type Output = V3;
    fn mul(self, v: V3) -> V3 {
        self.apply(v)
    }
}

/// Planar quarter-cell coordinate.
pub type P2 = (i32, i32);

/// Unit planar direction for rotation index 0..3 (ccw: +x, +y, -x, -y).
pub fn planar_dir(r: u8) -> P2 {
    match r & 3 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_opposites_are_involutive() {
        for d in ALL_DIRECTIONS {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.vec() + d.opposite().vec(), V3::ZERO);
        }
    }

    #[test]
    fn face_direction_bijection() {
        for d in ALL_DIRECTIONS {
            assert_eq!(d.face().normal(), d);
        }
        for f in ALL_FACES {
            assert_eq!(f.normal().face(), f);
        }
    }

    #[test]
    fn twenty_four_rotations() {
        let rots = Rot3::rotations();
        assert_eq!(rots.len(), 24);
        for r in &rots {
            assert_eq!(r.det(), 1);
            let inv = r.inverse();
            assert_eq!(r.compose(&inv), Rot3::IDENTITY);
        }
    }
}
