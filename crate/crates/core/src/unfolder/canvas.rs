//! Canonical sub-net canvases with mirror-aware development math.
//!
//! A canvas stores placements of world quarter cells in the local
//! development plane of one recursive node. For a node whose frame has
//! determinant -1 the stored picture is the mirror image of the true
//! development; the transpose applied when a hand-first child is
//! spliced into its parent cancels the mirror, so the finished net is
//! always a true development.

use crate::geom::planar_dir;
use crate::model::Orthotree;
use crate::net::{ConnKind, Port};
use crate::surface::{cross, QuarterCell};
use std::collections::{BTreeMap, HashMap};

pub type Placement = (i32, i32, u8);

/// Side index transformed by the mirror convention.
fn mir_side(s: u8, mirrored: bool) -> u8 {
    if mirrored {
        (4 - s) % 4
    } else {
        s
    }
}

/// Stored planar direction of side `s` of a cell at rotation `r`.
pub fn side_dir_m(s: u8, r: u8, mirrored: bool) -> u8 {
    (r + mir_side(s, mirrored)) % 4
}

/// Side whose stored planar direction is `d` for rotation `r`.
pub fn side_for_dir(d: u8, r: u8, mirrored: bool) -> u8 {
    mir_side((d + 4 - r) % 4, mirrored)
}

/// Develops one step in stored planar direction `d` from a placed cell.
/// Returns the surface neighbor and its forced placement.
pub fn develop_dir(
    o: &Orthotree,
    cell: QuarterCell,
    p: Placement,
    d: u8,
    mirrored: bool,
) -> (QuarterCell, Placement) {
    let (x, y, r) = p;
    let s = side_for_dir(d, r, mirrored);
    let crossing = cross(o, cell, s);
    let (dx, dy) = planar_dir(d);
    let r2 = (d + 2 + 4 - side_dir_m(crossing.back, 0, mirrored)) % 4;
    (crossing.cell, (x + dx, y + dy, r2))
}

/// A canonical sub-net under construction or returned by a case.
#[derive(Clone, Debug)]
pub struct Canvas {
    pub cells: BTreeMap<QuarterCell, Placement>,
    pub occ: HashMap<(i32, i32), QuarterCell>,
    pub mirrored: bool,
    pub entry: Port,
    pub exit: Port,
    pub entry_kind: ConnKind,
    pub exit_kind: ConnKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    Collision {
        at: (i32, i32),
        incumbent: QuarterCell,
        cell: QuarterCell,
    },
    AlreadyPlaced(QuarterCell),
    NotPlaced(QuarterCell),
    CaseGap(&'static str),
}

impl std::fmt::Display for BuildError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BuildError::Collision { at, incumbent, cell } => {
                write!(f, "collision at {:?}: {:?} vs {:?}", at, incumbent, cell)
            }
            BuildError::AlreadyPlaced(c) => write!(f, "{:?} placed twice", c),
            BuildError::NotPlaced(c) => write!(f, "{:?} not placed yet", c),
            BuildError::CaseGap(m) => write!(f, "case gap: {}", m),
        }
    }
}

impl Canvas {
    pub fn new(mirrored: bool) -> Canvas {
        Canvas {
            cells: BTreeMap::new(),
            occ: HashMap::new(),
            mirrored,
            entry: Port { x: 0, y: 0 },
            exit: Port { x: 0, y: 0 },
            entry_kind: ConnKind::Type1,
            exit_kind: ConnKind::Type1,
        }
    }

    pub fn place(&mut self, c: QuarterCell, p: Placement) -> Result<(), BuildError> {
        if self.cells.contains_key(&c) {
            return Err(BuildError::AlreadyPlaced(c));
        }
        if let Some(&prev) = self.occ.get(&(p.0, p.1)) {
            return Err(BuildError::Collision {
                at: (p.0, p.1),
                incumbent: prev,
                cell: c,
            });
        }
        self.occ.insert((p.0, p.1), c);
        self.cells.insert(c, p);
        Ok(())
    }

    pub fn placement(&self, c: QuarterCell) -> Result<Placement, BuildError> {
        self.cells.get(&c).copied().ok_or(BuildError::NotPlaced(c))
    }

    pub fn at(&self, x: i32, y: i32) -> Option<QuarterCell> {
        self.occ.get(&(x, y)).copied()
    }

    /// Places the surface neighbor across stored direction `d`.
    pub fn grow(&mut self, o: &Orthotree, from: QuarterCell, d: u8) -> Result<QuarterCell, BuildError> {
        let p = self.placement(from)?;
        let (c2, p2) = develop_dir(o, from, p, d, self.mirrored);
        self.place(c2, p2)?;
        Ok(c2)
    }

    /// Grows `n` cells in a straight stored line; returns the last one.
    pub fn grow_line(
        &mut self,
        o: &Orthotree,
        from: QuarterCell,
        d: u8,
        n: usize,
    ) -> Result<QuarterCell, BuildError> {
        let mut cur = from;
        for _ in 0..n {
            cur = self.grow(o, cur, d)?;
        }
        Ok(cur)
    }

    /// Like `grow`, but tolerates the target being already placed at the
    /// forced position (shared boundaries between strips of one face).
    pub fn grow_or_check(
        &mut self,
        o: &Orthotree,
        from: QuarterCell,
        d: u8,
    ) -> Result<QuarterCell, BuildError> {
        let p = self.placement(from)?;
        let (c2, p2) = develop_dir(o, from, p, d, self.mirrored);
        match self.cells.get(&c2) {
            Some(&have) if have == p2 => Ok(c2),
            Some(_) => Err(BuildError::CaseGap("inconsistent refold")),
            None => {
                self.place(c2, p2)?;
                Ok(c2)
            }
        }
    }

    /// The transpose splice of Lemma-style hand-first composition:
    /// (x, y) -> (y, x), rotations conjugated, mirror flag flipped.
    pub fn transpose(&self) -> Canvas {
        let mut out = Canvas::new(!self.mirrored);
        for (&c, &(x, y, r)) in &self.cells {
            let p2 = (y, x, (1 + 4 - r) % 4);
            out.occ.insert((p2.0, p2.1), c);
            out.cells.insert(c, p2);
        }
        // Ports map to vertical segments; callers track that themselves.
        out.entry = self.entry;
        out.exit = self.exit;
        out.entry_kind = self.entry_kind;
        out.exit_kind = self.exit_kind;
        out
    }

    /// Half-turn of the whole canvas, translated so the old exit port
    /// becomes a canonical entry port at the origin. Entry/exit swap
    /// roles, as in the reverse-traversal lemma.
    pub fn reversed(&self) -> Canvas {
        let (tx, ty) = (self.exit.x + 4, self.exit.y);
        let mut out = Canvas::new(self.mirrored);
        for (&c, &(x, y, r)) in &self.cells {
            let p2 = (tx - x - 1, ty - y - 1, (r + 2) % 4);
            out.occ.insert((p2.0, p2.1), c);
            out.cells.insert(c, p2);
        }
        out.entry = Port { x: 0, y: 0 };
        out.exit = Port {
            x: self.exit.x,
            y: self.exit.y,
        };
        out.entry_kind = self.exit_kind;
        out.exit_kind = self.entry_kind;
        out
    }

    pub fn translated(&self, tx: i32, ty: i32) -> Canvas {
        let mut out = Canvas::new(self.mirrored);
        for (&c, &(x, y, r)) in &self.cells {
            out.occ.insert((x + tx, y + ty), c);
            out.cells.insert(c, (x + tx, y + ty, r));
        }
        out.entry = Port {
            x: self.entry.x + tx,
            y: self.entry.y + ty,
        };
        out.exit = Port {
            x: self.exit.x + tx,
            y: self.exit.y + ty,
        };
        out.entry_kind = self.entry_kind;
        out.exit_kind = self.exit_kind;
        out
    }

    /// Merges another canvas (already in this canvas's coordinates).
    pub fn absorb(&mut self, other: &Canvas) -> Result<(), BuildError> {
        debug_assert_eq!(self.mirrored, other.mirrored);
        for (&c, &p) in &other.cells {
            self.place(c, p)?;
        }
        Ok(())
    }
}
