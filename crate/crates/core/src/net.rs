//! Planar nets on the quarter-unit lattice and the independent
//! validation oracles: net-ness (coverage, non-overlap, glued-edge
//! connectivity, isometry via fold-back, hole-freeness) and the
//! per-node region and connection invariants.

use crate::geom::planar_dir;
use crate::model::{BoxId, Orthotree};
use crate::surface::{
    cross, side_planar_dir, QuarterCell, RingFace, Side, SurfaceAtlas,
};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

/// Placement of one quarter cell: min-corner position and ccw quarter
/// turns applied to its face frame.
pub type Placement = (i32, i32, u8);

/// A horizontal unit port segment: `x..x+4` at height `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Port {
    pub x: i32,
    pub y: i32,
}

/// Connection kind a sub-net provides at a port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnKind {
    Type1,
    Type2,
}

#[derive(Clone, Debug)]
pub struct Net {
    pub cells: BTreeMap<QuarterCell, Placement>,
    /// Entry/exit ports in these coordinates; absent on the root net.
    pub entry: Option<Port>,
    pub exit: Option<Port>,
    pub entry_kind: Option<ConnKind>,
    pub exit_kind: Option<ConnKind>,
}

impl Net {
    pub fn new() -> Net {
        Net {
            cells: BTreeMap::new(),
            entry: None,
            exit: None,
            entry_kind: None,
            exit_kind: None,
        }
    }

    pub fn occupied(&self) -> HashMap<(i32, i32), QuarterCell> {
        let mut m = HashMap::with_capacity(self.cells.len());
        for (&c, &(x, y, _)) in &self.cells {
            m.insert((x, y), c);
        }
        m
    }

    pub fn bbox(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.cells.values();
        let &(x0, y0, _) = it.next()?;
        let (mut xa, mut ya, mut xb, mut yb) = (x0, y0, x0 + 1, y0 + 1);
        for &(x, y, _) in self.cells.values() {
            xa = xa.min(x);
            ya = ya.min(y);
            xb = xb.max(x + 1);
            yb = yb.max(y + 1);
        }
        Some((xa, ya, xb, yb))
    }
}

impl Default for Net {
    fn default() -> Self {
        Net::new()
    }
}

/// One failed check inside a validation report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetViolation {
    MissingCell(QuarterCell),
    ForeignCell(QuarterCell),
    Overlap {
        at: (i32, i32),
        a: QuarterCell,
        b: QuarterCell,
    },
    Disconnected {
        reached: usize,
        total: usize,
    },
    FoldMismatch {
        cell: QuarterCell,
        expected: Placement,
        found: Placement,
    },
    Hole {
        at: (i32, i32),
    },
}

#[derive(Clone, Debug, Default)]
pub struct NetReport {
    pub violations: Vec<NetViolation>,
}

impl NetReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Two placed cells are glued along a side when they are planar
/// neighbors there and the surface fold maps one placement exactly onto
/// the other.
pub fn glued(o: &Orthotree, net: &Net, c: QuarterCell, s: Side) -> Option<QuarterCell> {
    let &(x, y, r) = net.cells.get(&c)?;
    let d = side_planar_dir(s, r);
    let (dx, dy) = planar_dir(d);
    let crossing = cross(o, c, s);
    let &(nx, ny, nr) = net.cells.get(&crossing.cell)?;
    let want_r = (d + 2 + 4 - crossing.back) % 4;
    if (nx, ny) == (x + dx, y + dy) && nr == want_r {
        Some(crossing.cell)
    } else {
        None
    }
}

/// Full net validation: coverage, non-overlap, glued-edge connectivity,
/// fold-back isometry, and hole-freeness. Violations are reported, not
/// raised.
pub fn validate_net(o: &Orthotree, atlas: &SurfaceAtlas, net: &Net) -> NetReport {
    let mut violations = Vec::new();

    // (a) coverage: the placement domain must be exactly the open cells.
    let domain: BTreeSet<QuarterCell> = net.cells.keys().copied().collect();
    let want: BTreeSet<QuarterCell> = atlas.cells().iter().copied().collect();
    for &c in want.difference(&domain) {
        violations.push(NetViolation::MissingCell(c));
    }
    for &c in domain.difference(&want) {
        violations.push(NetViolation::ForeignCell(c));
    }

    // (b) non-overlap. The remaining checks assume injectivity, so an
    // overlapping placement short-circuits.
    let mut by_pos: HashMap<(i32, i32), QuarterCell> = HashMap::new();
    let mut overlapped = false;
    for (&c, &(x, y, _)) in &net.cells {
        if let Some(prev) = by_pos.insert((x, y), c) {
            overlapped = true;
            violations.push(NetViolation::Overlap {
                at: (x, y),
                a: prev,
                b: c,
            });
        }
    }
    if overlapped {
        return NetReport { violations };
    }

    // (c)+(d) connectivity and isometry via the fold-back simulator:
    // develop the surface from one seed cell across glued folds and
    // require every cell to land exactly on its claimed placement.
    if let Some((&seed, &seed_place)) = net.cells.iter().next() {
        let mut expected: BTreeMap<QuarterCell, Placement> = BTreeMap::new();
        expected.insert(seed, seed_place);
        let mut queue = VecDeque::from([seed]);
        while let Some(c) = queue.pop_front() {
            let p = expected[&c];
            for s in 0..4 {
                // Follow only folds the net claims (planar adjacency).
                if let Some(nc) = glued(o, net, c, s) {
                    let d = side_planar_dir(s, p.2);
                    let (dx, dy) = planar_dir(d);
                    let crossing = cross(o, c, s);
                    let forced = (p.0 + dx, p.1 + dy, (d + 2 + 4 - crossing.back) % 4);
                    match expected.get(&nc) {
                        None => {
                            expected.insert(nc, forced);
                            queue.push_back(nc);
                        }
                        Some(&have) if have != forced => {
                            violations.push(NetViolation::FoldMismatch {
                                cell: nc,
                                expected: forced,
                                found: have,
                            });
                        }
                        _ => {}
                    }
                }
            }
        }
        if expected.len() != net.cells.len() {
            violations.push(NetViolation::Disconnected {
                reached: expected.len(),
                total: net.cells.len(),
            });
        }
        for (c, &p) in &expected {
            if net.cells[c] != p {
                violations.push(NetViolation::FoldMismatch {
                    cell: *c,
                    expected: p,
                    found: net.cells[c],
                });
            }
        }
    }

    // (e) simplicity: the complement within a one-cell margin of the
    // bounding box must be connected (no holes).
    if let Some((xa, ya, xb, yb)) = net.bbox() {
        let (xa, ya, xb, yb) = (xa - 1, ya - 1, xb + 1, yb + 1);
        let filled: BTreeSet<(i32, i32)> = net.cells.values().map(|&(x, y, _)| (x, y)).collect();
        let mut seen: BTreeSet<(i32, i32)> = BTreeSet::new();
        let mut queue = VecDeque::from([(xa, ya)]);
        seen.insert((xa, ya));
        while let Some((x, y)) = queue.pop_front() {
            for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                let n = (x + dx, y + dy);
                if n.0 < xa || n.1 < ya || n.0 >= xb || n.1 >= yb {
                    continue;
                }
                if !filled.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        let total = ((xb - xa) * (yb - ya)) as usize;
        if seen.len() + filled.len() != total {
            // Some empty cell is unreachable from outside: a hole.
            for x in xa..xb {
                for y in ya..yb {
                    if !filled.contains(&(x, y)) && !seen.contains(&(x, y)) {
                        violations.push(NetViolation::Hole { at: (x, y) });
                    }
                }
            }
        }
    }

    NetReport { violations }
}

/// Entry/exit context of a sub-net, computed from the world surface.
#[derive(Clone, Debug)]
pub struct PortContext {
    /// The open ring face just beyond the port (on the complement side).
    pub outside: RingFace,
    /// Successor of the entry face / predecessor of the exit face.
    pub next: RingFace,
    pub next_open: bool,
    /// Whether the strip across `next`'s port-collinear side is an open
    /// face of the subtree (legality of a type-2 connection).
    pub next_adjacent_subtree: bool,
}

/// Context both ports of one sub-net need for I1/I2 checks.
#[derive(Clone, Debug)]
pub struct NodeContext {
    pub entry: PortContext,
    pub exit: PortContext,
}

impl NodeContext {
    pub fn xe_included(&self) -> bool {
        !self.entry.next_open
    }
    pub fn xx_included(&self) -> bool {
        !self.exit.next_open
    }
}

/// Region containment and port alignment (invariant I1 as far as the
/// region shape is concerned; coverage is validate_net's job).
///
/// The region certificate: a rectangle with two staircase bites removed
/// exists around the net exactly when the down-left closure of the
/// entry bite and the up-right closure of the exit bite avoid all
/// cells. XE/XX are the unit cells right of the entry port (below the
/// line) and left of the exit port (above the line).
pub fn check_region(net: &Net, ctx: &NodeContext) -> Result<(), String> {
    let entry = net.entry.ok_or("net has no entry port")?;
    let exit = net.exit.ok_or("net has no exit port")?;
    for (&c, &(x, y, _)) in &net.cells {
        // Entry side: below the port line, left of the port's right end.
        if y < entry.y && x < entry.x + 4 {
            return Err(format!("{c:?} at ({x},{y}) invades the entry quadrant"));
        }
        // The port row continues leftward only outside the region.
        if y == entry.y && x < entry.x {
            return Err(format!("{c:?} at ({x},{y}) lengthens the entry tread"));
        }
        // XE: unit cell right of the entry port, below the line.
        let in_xe = (entry.x + 4..entry.x + 8).contains(&x) && (entry.y - 4..entry.y).contains(&y);
        if in_xe && !ctx.xe_included() {
            return Err(format!("{c:?} at ({x},{y}) uses excluded XE"));
        }
        // Exit side, mirrored.
        if y >= exit.y && x >= exit.x {
            return Err(format!("{c:?} at ({x},{y}) invades the exit quadrant"));
        }
        if y == exit.y - 1 && x >= exit.x + 4 {
            return Err(format!("{c:?} at ({x},{y}) lengthens the exit tread"));
        }
        let in_xx = (exit.x - 4..exit.x).contains(&x) && (exit.y..exit.y + 4).contains(&y);
        if in_xx && !ctx.xx_included() {
            return Err(format!("{c:?} at ({x},{y}) uses excluded XX"));
        }
    }
    // The two bites must not interlock: the exit port lies up-right of
    // the entry port's forbidden quadrant.
    if exit.y < entry.y || (exit.y == entry.y && exit.x + 4 <= entry.x) {
        return Err("exit port not up-right of entry port".to_string());
    }
    Ok(())
}

/// I2: the provided connection kinds are legal for the context, and the
/// connection strips actually sit alongside the ports.
pub fn check_connections(o: &Orthotree, net: &Net, ctx: &NodeContext) -> Result<(), String> {
    let entry = net.entry.ok_or("no entry port")?;
    let exit = net.exit.ok_or("no exit port")?;
    let ek = net.entry_kind.ok_or("no entry connection")?;
    let xk = net.exit_kind.ok_or("no exit connection")?;

    let type2_entry_legal = ctx.entry.next_open && ctx.entry.next_adjacent_subtree;
    let type2_exit_legal = ctx.exit.next_open && ctx.exit.next_adjacent_subtree;
    if ek == ConnKind::Type2 && !type2_entry_legal {
        return Err("type-2 entry connection not permitted here".to_string());
    }
    if xk == ConnKind::Type2 && !type2_exit_legal {
        return Err("type-2 exit connection not permitted here".to_string());
    }

    // Geometric placement of the strips.
    let occupied = net.occupied();
    let strip_present = |x0: i32, y0: i32, horizontal_span: bool| -> bool {
        (0..4).any(|k| {
            let p = if horizontal_span {
                (x0 + k, y0)
            } else {
                (x0, y0 + k)
            };
            occupied.contains_key(&p)
        })
    };
    let _ = o;
    match ek {
        // Alongside the port, just above the line.
        ConnKind::Type1 => {
            if !strip_present(entry.x, entry.y, true) {
                return Err("type-1 entry strip missing".to_string());
            }
        }
        // Alongside the port extension.
        ConnKind::Type2 => {
            if !strip_present(entry.x + 4, entry.y, true) {
                return Err("type-2 entry strip missing".to_string());
            }
        }
    }
    match xk {
        ConnKind::Type1 => {
            if !strip_present(exit.x, exit.y - 1, true) {
                return Err("type-1 exit strip missing".to_string());
            }
        }
        ConnKind::Type2 => {
            if !strip_present(exit.x - 4, exit.y - 1, true) {
                return Err("type-2 exit strip missing".to_string());
            }
        }
    }
    Ok(())
}

/// I3: every open ring face of the node's own ring that is not used in
/// its entry/exit connections can be deleted without disconnecting the
/// glued-cell graph.
pub fn check_removable(
    o: &Orthotree,
    net: &Net,
    ring: &[RingFace],
    used: &[RingFace],
) -> Result<(), String> {
    for rf in ring {
        if !rf.is_open(o) {
            continue;
        }
        if used.iter().any(|u| u == rf) {
            continue;
        }
        let removed: BTreeSet<QuarterCell> = rf.cells(o).into_iter().collect();
        let mut rest = net.clone();
        for c in &removed {
            rest.cells.remove(c);
        }
        if rest.cells.is_empty() {
            continue;
        }
        // Glued-graph connectivity of the remainder.
        let (&seed, _) = rest.cells.iter().next().unwrap();
        let mut seen: BTreeSet<QuarterCell> = BTreeSet::from([seed]);
        let mut queue = VecDeque::from([seed]);
        while let Some(c) = queue.pop_front() {
            for s in 0..4 {
                if let Some(nc) = glued(o, &rest, c, s) {
                    if seen.insert(nc) {
                        queue.push_back(nc);
                    }
                }
            }
        }
        if seen.len() != rest.cells.len() {
            return Err(format!(
                "removing ring face {:?}/{:?} disconnects the net",
                rf.face, rf.toward
            ));
        }
    }
    Ok(())
}

/// Serializes a net in the `.net` text format: a header line followed by
/// one sorted line per cell.
pub fn write_net(o: &Orthotree, net: &Net) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "n={} cells={}", o.len(), net.cells.len());
    for (c, &(x, y, r)) in &net.cells {
        let _ = writeln!(
            out,
            "{} {} {} {} -> {} {} {}",
            c.bx,
            c.face.letter(),
            c.i,
            c.j,
            x,
            y,
            (r as u32) * 90
        );
    }
    out
}

/// Parses the `.net` format produced by [`write_net`].
pub fn read_net(text: &str) -> Result<(usize, Net), String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty net file")?;
    let n: usize = header
        .split(|c| c == '=' || c == ' ')
        .nth(1)
        .and_then(|t| t.parse().ok())
        .ok_or("bad header")?;
    let mut net = Net::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let bx: BoxId = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad box")?;
        let face = crate::geom::FaceLabel::from_letter(
            parts.next().ok_or("bad line")?.chars().next().ok_or("bad face")?,
        )
        .ok_or("bad face")?;
        let i: u8 = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad i")?;
        let j: u8 = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad j")?;
        let arrow = parts.next().ok_or("bad line")?;
        if arrow != "->" {
            return Err("missing arrow".to_string());
        }
        let x: i32 = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad x")?;
        let y: i32 = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad y")?;
        let deg: u32 = parts.next().ok_or("bad line")?.parse().map_err(|_| "bad rot")?;
        net.cells
            .insert(QuarterCell::new(bx, face, i, j), (x, y, (deg / 90) as u8));
    }
    Ok((n, net))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_orthotree;
    use crate::surface::cell_center8;
    use crate::geom::FaceLabel;

    /// Develop the whole surface of a single cube as the classical
    /// cross and validate it.
    fn cross_net(_o: &Orthotree) -> Net {
        let mut net = Net::new();
        // T at origin, developed by explicit frame placement.
        let place_face = |net: &mut Net, f: FaceLabel, x0: i32, y0: i32, r: u8| {
            for i in 0..4u8 {
                for j in 0..4u8 {
                    // rotate frame offsets
                    let (u, v) = (j as i32, i as i32);
                    let (dx, dy) = match r {
                        0 => (u, v),
                        1 => (-v + 3, u),
                        2 => (-u + 3, -v + 3),
                        _ => (v, -u + 3),
                    };
                    net.cells
                        .insert(QuarterCell::new(0, f, i, j), (x0 + dx, y0 + dy, r));
                }
            }
        };
        // Classic cross: F below, T, K, B stacked, L/R beside K.
        place_face(&mut net, FaceLabel::F, 0, -4, 0);
        place_face(&mut net, FaceLabel::T, 0, 0, 0);
        place_face(&mut net, FaceLabel::K, 0, 4, 0);
        place_face(&mut net, FaceLabel::B, 0, 8, 0);
        place_face(&mut net, FaceLabel::L, -4, 4, 2);
        place_face(&mut net, FaceLabel::R, 4, 4, 2);
        net
    }

    #[test]
    fn single_cube_cross_is_valid() {
        let o = parse_orthotree("0 0 0").unwrap();
        let atlas = SurfaceAtlas::new(&o);
        let net = cross_net(&o);
        let report = validate_net(&o, &atlas, &net);
        assert!(report.ok(), "{:?}", report.violations);
    }

    #[test]
    fn moved_cell_reports_overlap_or_mismatch() {
        let o = parse_orthotree("0 0 0").unwrap();
        let atlas = SurfaceAtlas::new(&o);
        let mut net = cross_net(&o);
        let victim = QuarterCell::new(0, FaceLabel::F, 0, 0);
        let target = net.cells[&QuarterCell::new(0, FaceLabel::F, 1, 1)];
        net.cells.insert(victim, target);
        let report = validate_net(&o, &atlas, &net);
        assert!(!report.ok());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, NetViolation::Overlap { .. })));
    }

    #[test]
    fn punched_hole_is_reported() {
        // An artificial ring of cells around an empty square: build a
        // fake net that is geometrically a ring. Coverage fails too, but
        // the hole check must fire.
        let o = parse_orthotree("0 0 0").unwrap();
        let atlas = SurfaceAtlas::new(&o);
        let mut net = cross_net(&o);
        // Translate the L face far away so the K area gets a hole?
        // Simpler: remove an interior cell; complement check sees no
        // hole (a missing cell is open to the outside through... not
        // here: an interior missing cell of the solid cross IS a hole).
        let interior = QuarterCell::new(0, FaceLabel::K, 1, 1);
        net.cells.remove(&interior);
        let report = validate_net(&o, &atlas, &net);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, NetViolation::Hole { .. })));
        let _ = cell_center8;
    }

    #[test]
    fn net_roundtrip() {
        let o = parse_orthotree("0 0 0").unwrap();
        let net = cross_net(&o);
        let text = write_net(&o, &net);
        let (n, back) = read_net(&text).unwrap();
        assert_eq!(n, 1);
        assert_eq!(back.cells, net.cells);
        assert_eq!(text, write_net(&o, &back));
    }
}
