//! Case programs for the recursive unfolding, one per node degree and
//! child arrangement, plus the root and single-box assemblies.
//!
//! Programs are written in local terms through the node's frame: the
//! parent is at local I, the entry port is the top edge of the shared
//! face. Mirrored configurations run the same programs through frames
//! of determinant -1; rotated configurations run them through a flipped
//! frame and take the half-turn of the result (reverse traversal).

use crate::geom::V3;
use crate::model::{BoxId, Orthotree};
use crate::net::{ConnKind, Port};
use crate::surface::{cell_center8, face_u, face_v, QuarterCell, RingFace};

use super::canvas::{side_dir_m, BuildError, Canvas};
use super::context::{node_ctx, NodeCtx};
use super::frame::{Frame, Loc};
use super::{CaseId, Cx};

type CaseOut = (
    Canvas,
    CaseId,
    Vec<RingFace>,
    Vec<RingFace>,
    Option<(u8, u8)>,
    bool,
);

/// Case builder: a canvas plus the node frame and bookkeeping.
pub(crate) struct Cb<'a, 'b> {
    pub cx: &'a mut Cx<'b>,
    pub f: Frame,
    pub cv: Canvas,
    pub used: Vec<RingFace>,
    pub relocated: Vec<RingFace>,
}

/// A spliced child's port segment in parent coordinates.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Seg {
    /// Horizontal unit segment from (x, y) to (x+4, y).
    H { x: i32, y: i32 },
    /// Vertical unit segment from (x, y) to (x, y+4).
    V { x: i32, y: i32 },
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Spliced {
    pub exit: Seg,
    pub entry_kind: ConnKind,
    pub exit_kind: ConnKind,
}

impl<'a, 'b> Cb<'a, 'b> {
    fn new(cx: &'a mut Cx<'b>, f: Frame) -> Self {
        let cv = Canvas::new(f.mirrored());
        Cb {
            cx,
            f,
            cv,
            used: Vec::new(),
            relocated: Vec::new(),
        }
    }

    fn o(&self) -> &'b Orthotree {
        self.cx.o
    }

    /// Ring-face strip of this box: face `at`, hugging face `hug`.
    fn strip(&self, at: Loc, hug: Loc) -> RingFace {
        RingFace {
            bx: self.f.bx,
            face: self.f.face(at),
            toward: self.f.dir(hug),
        }
    }

    /// Strip cells ordered by a local direction.
    fn cells_along(&self, rf: RingFace, along: Loc) -> [QuarterCell; 4] {
        super::context::strip_ordered(self.o(), rf, self.f.dir(along))
    }

    /// Places a cell with orientation fixed by two local-direction to
    /// stored-planar-direction correspondences.
    fn seed(
        &mut self,
        cell: QuarterCell,
        pos: (i32, i32),
        a: (Loc, u8),
        b: (Loc, u8),
    ) -> Result<(), BuildError> {
        let w1 = self.f.rot.apply(a.0.vec());
        let w2 = self.f.rot.apply(b.0.vec());
        let dir_of = |t: V3| -> Option<u8> {
            if t == w1 {
                Some(a.1)
            } else if t == -w1 {
                Some((a.1 + 2) % 4)
            } else if t == w2 {
                Some(b.1)
            } else if t == -w2 {
                Some((b.1 + 2) % 4)
            } else {
                None
            }
        };
        let du = dir_of(face_u(cell.face)).ok_or(BuildError::CaseGap("seed u"))?;
        let dv = dir_of(face_v(cell.face)).ok_or(BuildError::CaseGap("seed v"))?;
        let r = du;
        if dv != side_dir_m(1, r, self.cv.mirrored) {
            return Err(BuildError::CaseGap("seed handedness"));
        }
        self.cv.place(cell, (pos.0, pos.1, r))
    }

    /// Seeds a whole strip on a row or column, `cells[k]` at
    /// `(x0 + k*dx, y0 + k*dy)`.
    fn seed_strip(
        &mut self,
        cells: &[QuarterCell],
        start: (i32, i32),
        step: (i32, i32),
        a: (Loc, u8),
        b: (Loc, u8),
    ) -> Result<(), BuildError> {
        for (k, &c) in cells.iter().enumerate() {
            self.seed(
                c,
                (start.0 + step.0 * k as i32, start.1 + step.1 * k as i32),
                a,
                b,
            )?;
        }
        Ok(())
    }

    fn grow(&mut self, from: QuarterCell, d: u8) -> Result<QuarterCell, BuildError> {
        self.cv.grow(self.cx.o, from, d)
    }

    fn grow_line(&mut self, from: QuarterCell, d: u8, n: usize) -> Result<QuarterCell, BuildError> {
        self.cv.grow_line(self.cx.o, from, d, n)
    }

    fn grow_or_check(&mut self, from: QuarterCell, d: u8) -> Result<QuarterCell, BuildError> {
        self.cv.grow_or_check(self.cx.o, from, d)
    }

    /// Grows a chain of `n` cells starting by stepping `d` from `from`,
    /// returning all placed cells.
    fn grow_chain(
        &mut self,
        from: QuarterCell,
        d: u8,
        n: usize,
    ) -> Result<Vec<QuarterCell>, BuildError> {
        let mut out = Vec::with_capacity(n);
        let mut cur = from;
        for _ in 0..n {
            cur = self.grow(cur, d)?;
            out.push(cur);
        }
        Ok(out)
    }

    /// Extends every cell of `row` by `n` cells in direction `d`.
    fn extend_all(&mut self, row: &[QuarterCell], d: u8, n: usize) -> Result<(), BuildError> {
        for &c in row {
            self.grow_line(c, d, n)?;
        }
        Ok(())
    }

    /// Places the node's own type-1 entry connection strip alongside
    /// the entry port and fixes the canonical entry.
    fn entry_strip(&mut self, ctx: &NodeCtx) -> Result<[QuarterCell; 4], BuildError> {
        let e = ctx.entry.inside;
        let cells = self.cells_along_world(e, self.f.dir(Loc::E).vec());
        let inward = Loc::from_vec(self.f.rot.inverse().apply(-e.toward.vec()));
        self.seed_strip(&cells, (0, 0), (1, 0), (Loc::E, 0), (inward, 1))?;
        if e.bx == self.f.bx {
            self.used.push(e);
        }
        self.cv.entry = Port { x: 0, y: 0 };
        self.cv.entry_kind = ConnKind::Type1;
        Ok(cells)
    }

    fn cells_along_world(&self, rf: RingFace, along: V3) -> [QuarterCell; 4] {
        let o = self.o();
        let mut cells = rf.cells(o);
        cells.sort_by_key(|c| cell_center8(o.pos(c.bx), c.face, c.i, c.j).dot(along));
        cells
    }

    /// Unfolds a child and splices it head-first with its entry port at
    /// `(x, y)`-(x+4, y).
    fn child_head(
        &mut self,
        at: Loc,
        port_toward: Loc,
        pos: (i32, i32),
    ) -> Result<Spliced, BuildError> {
        let cf = self.f.child_frame(self.cx.o, at, port_toward, 1);
        let ccv = self.cx.unfold_node(cf)?;
        debug_assert_eq!(ccv.mirrored, self.cv.mirrored);
        let moved = ccv.translated(pos.0, pos.1);
        self.cv.absorb(&moved)?;
        Ok(Spliced {
            exit: Seg::H {
                x: moved.exit.x,
                y: moved.exit.y,
            },
            entry_kind: moved.entry_kind,
            exit_kind: moved.exit_kind,
        })
    }

    /// Unfolds a child and splices it hand-first: its transposed net
    /// extends right of the vertical port at `(x, y)`-(x, y+4).
    fn child_hand(
        &mut self,
        at: Loc,
        port_toward: Loc,
        pos: (i32, i32),
    ) -> Result<Spliced, BuildError> {
        let cf = self.f.child_frame(self.cx.o, at, port_toward, -1);
        let ccv = self.cx.unfold_node(cf)?;
        debug_assert_eq!(ccv.mirrored, !self.cv.mirrored);
        let t = ccv.transpose().translated(pos.0, pos.1);
        debug_assert_eq!(t.mirrored, self.cv.mirrored);
        let exit = Seg::V {
            x: pos.0 + ccv.exit.y,
            y: pos.1 + ccv.exit.x,
        };
        self.cv.absorb(&t)?;
        Ok(Spliced {
            exit,
            entry_kind: ccv.entry_kind,
            exit_kind: ccv.exit_kind,
        })
    }

    /// Places the outside strip beyond a spliced child's exit port (the
    /// child's exit ring face x). For a type-2 exit the predecessor
    /// strip along the exit extension is placed first and the x strip
    /// chained from its end. Returns the x-strip cells ordered along
    /// the port.
    fn beyond_exit(&mut self, sp: &Spliced) -> Result<Vec<QuarterCell>, BuildError> {
        match (sp.exit, sp.exit_kind) {
            (Seg::H { x, y }, ConnKind::Type1) => {
                let mut out = Vec::new();
                for k in 0..4 {
                    let below = self
                        .cv
                        .at(x + k, y - 1)
                        .ok_or(BuildError::CaseGap("missing type-1 exit strip"))?;
                    out.push(self.grow_or_check(below, 1)?);
                }
                Ok(out)
            }
            (Seg::H { x, y }, ConnKind::Type2) => {
                let mut prev = Vec::new();
                for k in 0..4 {
                    let below = self
                        .cv
                        .at(x - 4 + k, y - 1)
                        .ok_or(BuildError::CaseGap("missing type-2 exit strip"))?;
                    prev.push(self.grow_or_check(below, 1)?);
                }
                self.grow_chain(prev[3], 0, 4)
            }
            (Seg::V { x, y }, ConnKind::Type1) => {
                let mut out = Vec::new();
                for k in 0..4 {
                    let left = self
                        .cv
                        .at(x - 1, y + k)
                        .ok_or(BuildError::CaseGap("missing type-1 exit strip"))?;
                    out.push(self.grow_or_check(left, 0)?);
                }
                Ok(out)
            }
            (Seg::V { x, y }, ConnKind::Type2) => {
                let mut prev = Vec::new();
                for k in 0..4 {
                    let left = self
                        .cv
                        .at(x - 1, y - 4 + k)
                        .ok_or(BuildError::CaseGap("missing type-2 exit strip"))?;
                    prev.push(self.grow_or_check(left, 0)?);
                }
                self.grow_chain(prev[3], 1, 4)
            }
        }
    }

    /// Like `beyond_exit` for type-1 horizontal/vertical ports but
    /// placing only the listed strip positions.
    fn beyond_exit_partial(
        &mut self,
        sp: &Spliced,
        keep: &[i32],
    ) -> Result<Vec<QuarterCell>, BuildError> {
        debug_assert_eq!(sp.exit_kind, ConnKind::Type1);
        let mut out = Vec::new();
        for &k in keep {
            let (cell, d) = match sp.exit {
                Seg::H { x, y } => (self.cv.at(x + k, y - 1), 1),
                Seg::V { x, y } => (self.cv.at(x - 1, y + k), 0),
            };
            let below = cell.ok_or(BuildError::CaseGap("missing exit strip"))?;
            out.push(self.grow_or_check(below, d)?);
        }
        Ok(out)
    }

    fn finish(
        self,
        case: CaseId,
        variant: Option<(u8, u8)>,
    ) -> Result<CaseOut, BuildError> {
        Ok((self.cv, case, self.used, self.relocated, variant, false))
    }
}

/// Dispatches the case table for one non-root node.
pub(crate) fn dispatch(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let mut slots = Vec::new();
    frame.children(cx.o, cx.tree, &mut slots);
    slots.sort();
    let dirs: Vec<Loc> = slots.iter().map(|s| s.0).collect();

    use Loc::{E, J, N, S, W};
    match dirs.as_slice() {
        [] => leaf(cx, frame, ctx),
        [E] => c2_1(cx, frame, ctx),
        [W] => run_reversed(cx, frame, c2_1, Some(CaseId::C2_2)),
        [J] => c2_3(cx, frame, ctx),
        [N] => c2_4(cx, frame, ctx),
        [S] => run_reversed(cx, frame, c2_4, None),
        [E, J] => c3_1(cx, frame, ctx),
        [W, J] => run_reversed(cx, frame, c3_1, None),
        [N, J] => c3_2(cx, frame, ctx),
        [S, J] => run_reversed(cx, frame, c3_2, None),
        [E, W] => c3_3(cx, frame, ctx),
        [N, S] => c3_4(cx, frame, ctx),
        [E, N] => c3_5(cx, frame, ctx),
        [W, S] => run_reversed(cx, frame, c3_5, None),
        [W, N] => c3_6(cx, frame, ctx),
        [E, S] => run_reversed(cx, frame, c3_6, None),
        [E, W, J] => c4_1(cx, frame, ctx),
        [E, W, N] => c4_2(cx, frame, ctx),
        [E, W, S] => run_reversed(cx, frame, c4_2, None),
        [E, N, J] => c4_3(cx, frame, ctx),
        [W, S, J] => run_reversed(cx, frame, c4_3, None),
        [W, N, J] => c4_4(cx, frame, ctx),
        [E, S, J] => run_reversed(cx, frame, c4_4, None),
        [E, N, S] => c4_5(cx, frame, ctx),
        [W, N, S] => run_reversed(cx, frame, c4_5, Some(CaseId::C4_6)),
        [N, S, J] => c4_7(cx, frame, ctx),
        [E, W, N, S] => c5_1(cx, frame, ctx),
        [E, N, S, J] => c5_2(cx, frame, ctx),
        [W, N, S, J] => run_reversed(cx, frame, c5_2, Some(CaseId::C5_3)),
        [E, W, S, J] => c5_4(cx, frame, ctx),
        [E, W, N, J] => run_reversed(cx, frame, c5_4, None),
        [E, W, N, S, J] => c6(cx, frame, ctx),
        other => Err(BuildError::CaseGap(match other.len() {
            1 | 2 | 3 | 4 | 5 => "unreachable child arrangement",
            _ => "degree out of range",
        })),
    }
}

type CaseFn = fn(&mut Cx, Frame, &NodeCtx) -> Result<CaseOut, BuildError>;

/// Runs a case program as its reverse traversal: the frame is turned a
/// half turn about the local depth axis, the program builds the picture
/// of the rotated configuration, and the half-turn of that net (with
/// ports swapped) is the net of the true configuration.
fn run_reversed(
    cx: &mut Cx,
    frame: Frame,
    base: CaseFn,
    rename: Option<CaseId>,
) -> Result<CaseOut, BuildError> {
    let f2 = frame.flipped();
    let ctx2 = node_ctx(cx.o, cx.tree, &f2);
    let (cv, case, used, relocated, variant, _) = base(cx, f2, &ctx2)?;
    Ok((
        cv.reversed(),
        rename.unwrap_or(case),
        used,
        relocated,
        variant,
        true,
    ))
}

// ---------------------------------------------------------------------
// Root, single box, leaf
// ---------------------------------------------------------------------

/// The classical cross of a single cube.
pub(crate) fn single_box(cx: &mut Cx) -> Result<Canvas, BuildError> {
    let frame = Frame {
        bx: 0,
        rot: crate::geom::Rot3::IDENTITY,
    };
    let mut b = Cb::new(cx, frame);
    let tf = b.strip(Loc::N, Loc::I);
    let cells = b.cells_along(tf, Loc::E);
    b.seed_strip(&cells, (0, 0), (1, 0), (Loc::E, 0), (Loc::J, 1))?;
    // T, K, B stacked; F below; L/R flaps off K.
    b.extend_all(&cells, 1, 11)?;
    b.extend_all(&cells, 3, 4)?;
    let kw: Vec<QuarterCell> = (4..8).map(|y| b.cv.at(0, y).unwrap()).collect();
    b.extend_all(&kw, 2, 4)?;
    let ke: Vec<QuarterCell> = (4..8).map(|y| b.cv.at(3, y).unwrap()).collect();
    b.extend_all(&ke, 0, 4)?;
    Ok(b.cv)
}

/// Root assembly: the path starts on the root's top face, recursively
/// unfolds its back child and returns over the bottom face.
pub(crate) fn root(cx: &mut Cx, frame: Frame) -> Result<Canvas, BuildError> {
    let mut b = Cb::new(cx, frame);
    // Top-face strip below the child's entry port, then the rest of the
    // top face and the whole front face below it.
    let tstrip = b.strip(Loc::N, Loc::J);
    let cells = b.cells_along(tstrip, Loc::E);
    b.seed_strip(&cells, (0, -1), (1, 0), (Loc::E, 0), (Loc::I, 3))?;
    b.extend_all(&cells, 3, 7)?;
    // The lateral face beside the entry port extension receives a
    // type-2 entry connection when the child provides one.
    let rrow = b.grow_chain(cells[3], 0, 4)?;
    b.extend_all(&rrow, 3, 3)?;

    let sp = b.child_head(Loc::J, Loc::N, (0, 0))?;
    let x_strip = b.beyond_exit(&sp)?;
    b.extend_all(&x_strip, 1, 3)?;
    // The opposite lateral face sits left of the exit port; its strip
    // doubles as the type-2 exit reception.
    let (jx, jy) = match sp.exit {
        Seg::H { x, y } => (x, y),
        Seg::V { .. } => unreachable!("root child is spliced head-first"),
    };
    let lrow = match sp.exit_kind {
        ConnKind::Type2 => (0..4)
            .map(|k| {
                b.cv
                    .at(jx - 4 + k, jy)
                    .ok_or(BuildError::CaseGap("type-2 reception missing"))
            })
            .collect::<Result<Vec<_>, _>>()?,
        ConnKind::Type1 => b.grow_chain(x_strip[0], 2, 4)?,
    };
    b.extend_all(&lrow, 1, 3)?;
    Ok(b.cv)
}

/// Base case: a leaf unfolds its open faces along a straight path from
/// entry to exit, side faces flapped off the back face.
fn leaf(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let mut b = Cb::new(cx, frame);
    let cells = b.entry_strip(ctx)?;
    b.extend_all(&cells, 1, 11)?;
    let kw: Vec<QuarterCell> = (4..8).map(|y| b.cv.at(0, y).unwrap()).collect();
    b.extend_all(&kw, 2, 4)?;
    let ke: Vec<QuarterCell> = (4..8).map(|y| b.cv.at(3, y).unwrap()).collect();
    b.extend_all(&ke, 0, 4)?;
    b.cv.exit = Port { x: 0, y: 12 };
    b.cv.exit_kind = ConnKind::Type1;
    b.used.push(b.strip(Loc::S, Loc::I));
    let id = if frame.mirrored() {
        CaseId::LeafHand
    } else {
        CaseId::LeafHead
    };
    b.finish(id, None)
}

// ---------------------------------------------------------------------
// Degree 2
// ---------------------------------------------------------------------

/// Case 2.1: the single child sits east. The path crosses the top face,
/// unfolds the child hand-first, and climbs past the child's exit over
/// the remaining faces to the exit port.
fn c2_1(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let mut b = Cb::new(cx, frame);
    let e = b.entry_strip(ctx)?;
    // Top-face east column up to the child's port, then the back-face
    // east column occupying the conditional cell beside the extension.
    let t_east = b.grow_chain(e[3], 1, 3)?;
    b.grow_chain(t_east[2], 1, 4)?;

    let sp = b.child_hand(Loc::E, Loc::N, (4, 0))?;
    if sp.exit_kind != ConnKind::Type1 {
        return Err(BuildError::CaseGap("east child must exit type-1 here"));
    }
    // Partial exit ring strip: the two cells away from the front keep
    // the front row free for the exit connection.
    let x_e = b.beyond_exit_partial(&sp, &[2, 3])?;
    // Bottom face low block, then the climb: back, top remainder, west
    // flap, bottom front rows.
    b.extend_all(&x_e, 2, 3)?;
    let (px, py) = match sp.exit {
        Seg::V { x, y } => (x, y),
        Seg::H { .. } => unreachable!("hand splice"),
    };
    let b_low_top: Vec<QuarterCell> = (0..3)
        .map(|k| b.cv.at(px + 1 + k, py + 3).unwrap())
        .collect();
    let k_rows = b.extend_up_rows(&b_low_top, 4)?;
    let _t_rows = b.extend_up_rows(&k_rows, 3)?;
    // West flap rows grow rightward off the top remainder.
    let t_col: Vec<QuarterCell> = (0..3)
        .map(|k| b.cv.at(px + 3, py + 8 + k).unwrap())
        .collect();
    let mut l_right = Vec::new();
    for &c in &t_col {
        l_right.push(b.grow_line(c, 0, 4)?);
    }
    // Front row of the west flap.
    let l_top = b.grow_chain(*l_right.last().unwrap(), 1, 1)?;
    let l_top_row = b.grow_chain(l_top[0], 2, 3)?;
    let _ = l_top_row;
    // Bottom-face front rows right of the west flap.
    let b_top0 = b.grow(l_right[2], 0)?;
    let b_row_mid = b.grow_chain(b_top0, 0, 3)?;
    let b_top1 = b.grow(l_top[0], 0)?;
    b.grow_chain(b_top1, 0, 3)?;
    let _ = b_row_mid;
    b.cv.exit = Port {
        x: px + 8,
        y: py + 12,
    };
    b.cv.exit_kind = ConnKind::Type1;
    b.used.push(b.strip(Loc::S, Loc::I));
    b.finish(CaseId::C2_1, None)
}

impl<'a, 'b> Cb<'a, 'b> {
    /// Grows one row up from each cell and returns the new row.
    fn extend_up_rows(
        &mut self,
        row: &[QuarterCell],
        rows: usize,
    ) -> Result<Vec<QuarterCell>, BuildError> {
        let mut cur: Vec<QuarterCell> = row.to_vec();
        for _ in 0..rows {
            let mut next = Vec::with_capacity(cur.len());
            for &c in &cur {
                next.push(self.grow(c, 1)?);
            }
            cur = next;
        }
        Ok(cur)
    }
}

/// Case 2.3: the single child sits behind; its net stacks directly on
/// the top face, the remaining faces wrap around its exit.
fn c2_3(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let mut b = Cb::new(cx, frame);
    let e = b.entry_strip(ctx)?;
    b.extend_all(&e, 1, 3)?;
    // Lateral face beside the child's entry port extension.
    let t_back_e = b.cv.at(3, 3).unwrap();
    let r_row = b.grow_chain(t_back_e, 0, 4)?;
    b.extend_all(&r_row, 3, 3)?;

    let sp = b.child_head(Loc::J, Loc::N, (0, 4))?;
    let x_strip = b.beyond_exit(&sp)?;
    b.extend_all(&x_strip, 1, 3)?;
    let (jx, jy) = match sp.exit {
        Seg::H { x, y } => (x, y),
        Seg::V { .. } => unreachable!(),
    };
    let lrow = match sp.exit_kind {
        ConnKind::Type2 => (0..4)
            .map(|k| {
                b.cv
                    .at(jx - 4 + k, jy)
                    .ok_or(BuildError::CaseGap("type-2 reception missing"))
            })
            .collect::<Result<Vec<_>, _>>()?,
        ConnKind::Type1 => b.grow_chain(x_strip[0], 2, 4)?,
    };
    b.extend_all(&lrow, 1, 3)?;
    b.cv.exit = Port { x: jx, y: jy + 4 };
    b.cv.exit_kind = ConnKind::Type1;
    b.used.push(b.strip(Loc::S, Loc::I));
    b.finish(CaseId::C2_3, None)
}

/// Case 2.4: the single child sits on top and shares the entry port;
/// the remaining faces wrap around the child's exit and climb to the
/// exit port.
fn c2_4(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let mut b = Cb::new(cx, frame);
    let _ = ctx;
    let sp = b.child_head(Loc::N, Loc::I, (0, 0))?;
    b.cv.entry = Port { x: 0, y: 0 };
    b.cv.entry_kind = sp.entry_kind;
    let x_strip = b.beyond_exit(&sp)?;
    b.extend_all(&x_strip, 1, 3)?;
    let (nx, ny) = match sp.exit {
        Seg::H { x, y } => (x, y),
        Seg::V { .. } => unreachable!(),
    };
    // Left flap at the conditional cell left of the child's exit.
    let lrow = match sp.exit_kind {
        ConnKind::Type2 => (0..4)
            .map(|k| {
                b.cv
                    .at(nx - 4 + k, ny)
                    .ok_or(BuildError::CaseGap("type-2 reception missing"))
            })
            .collect::<Result<Vec<_>, _>>()?,
        ConnKind::Type1 => b.grow_chain(x_strip[0], 2, 4)?,
    };
    b.extend_all(&lrow, 1, 3)?;
    // Right flap chained off the exit strip's east end.
    let rrow = b.grow_chain(x_strip[3], 0, 4)?;
    b.extend_all(&rrow, 1, 3)?;
    // Bottom face above the back face.
    let k_top: Vec<QuarterCell> = (0..4).map(|k| b.cv.at(nx + k, ny + 3).unwrap()).collect();
    b.extend_all(&k_top, 1, 4)?;
    b.cv.exit = Port { x: nx, y: ny + 8 };
    b.cv.exit_kind = ConnKind::Type1;
    b.used.push(b.strip(Loc::S, Loc::I));
    b.finish(CaseId::C2_4, None)
}

// ---------------------------------------------------------------------
// Degree 3 and beyond: stubs completed in later sections.
// ---------------------------------------------------------------------

fn c3_1(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.1 not yet implemented"))
}

fn c3_2(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.2 not yet implemented"))
}

fn c3_3(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.3 not yet implemented"))
}

fn c3_4(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.4 not yet implemented"))
}

fn c3_5(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.5 not yet implemented"))
}

fn c3_6(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("3.6 not yet implemented"))
}

fn c4_1(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.1 not yet implemented"))
}

fn c4_2(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.2 not yet implemented"))
}

fn c4_3(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.3 not yet implemented"))
}

fn c4_4(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.4 not yet implemented"))
}

fn c4_5(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.5 not yet implemented"))
}

fn c4_7(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("4.7 not yet implemented"))
}

fn c5_1(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("5.1 not yet implemented"))
}

fn c5_2(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("5.2 not yet implemented"))
}

fn c5_4(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("5.4 not yet implemented"))
}

fn c6(cx: &mut Cx, frame: Frame, ctx: &NodeCtx) -> Result<CaseOut, BuildError> {
    let _ = (cx, frame, ctx);
    Err(BuildError::CaseGap("6 not yet implemented"))
}

const _: BoxId = 0;
