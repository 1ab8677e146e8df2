//! Input solid model: unit boxes on the integer lattice, adjacency,
//! 2-manifold surface validation and the rooted dual tree.

use crate::geom::{Direction, FaceLabel, V3, ALL_DIRECTIONS};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use thiserror::Error;

pub type BoxId = usize;

/// A unit box identified by the lattice coordinates of its min corner.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GridBox {
    pub pos: V3,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("duplicate box at {0:?}")]
    DuplicateBox(V3),
    #[error("malformed line {line}: {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("empty input")]
    EmptyInput,
}

/// The input solid: boxes plus face adjacency.
#[derive(Clone, Debug)]
pub struct Orthotree {
    boxes: Vec<GridBox>,
    index: HashMap<V3, BoxId>,
    adj: Vec<[Option<BoxId>; 6]>,
}

impl Orthotree {
    pub fn from_positions(positions: &[V3]) -> Result<Orthotree, ParseError> {
        if positions.is_empty() {
            return Err(ParseError::EmptyInput);
        }
        let mut sorted: Vec<V3> = positions.to_vec();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(ParseError::DuplicateBox(w[0]));
            }
        }
        let boxes: Vec<GridBox> = sorted.iter().map(|&pos| GridBox { pos }).collect();
        let index: HashMap<V3, BoxId> = sorted.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let adj = boxes
            .iter()
            .map(|b| {
                let mut row = [None; 6];
                for d in ALL_DIRECTIONS {
                    row[d.index()] = index.get(&(b.pos + d.vec())).copied();
                }
                row
            })
            .collect();
        Ok(Orthotree { boxes, index, adj })
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn boxes(&self) -> &[GridBox] {
        &self.boxes
    }

    pub fn pos(&self, b: BoxId) -> V3 {
        self.boxes[b].pos
    }

    pub fn id_at(&self, p: V3) -> Option<BoxId> {
        self.index.get(&p).copied()
    }

    pub fn occupied(&self, p: V3) -> bool {
        self.index.contains_key(&p)
    }

    pub fn neighbor(&self, b: BoxId, d: Direction) -> Option<BoxId> {
        self.adj[b][d.index()]
    }

    pub fn degree(&self, b: BoxId) -> usize {
        self.adj[b].iter().filter(|n| n.is_some()).count()
    }

    /// A face is open when it lies on the surface of the solid.
    pub fn face_open(&self, b: BoxId, f: FaceLabel) -> bool {
        self.neighbor(b, f.normal()).is_none()
    }

    /// Number of open unit faces; equals 4n + 2 for any valid orthotree.
    pub fn open_face_count(&self) -> usize {
        self.boxes
            .iter()
            .enumerate()
            .map(|(b, _)| 6 - self.degree(b))
            .sum()
    }

    pub fn dual_edge_count(&self) -> usize {
        self.boxes
            .iter()
            .enumerate()
            .map(|(b, _)| self.degree(b))
            .sum::<usize>()
            / 2
    }
}

/// Parses the `.otree` text format: one `x y z` triple per line,
/// `#` starts a comment, blank lines ignored.
pub fn parse_orthotree(text: &str) -> Result<Orthotree, ParseError> {
    let mut positions = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let nums: Result<Vec<i32>, _> = line.split_whitespace().map(str::parse).collect();
        match nums {
            Ok(v) if v.len() == 3 => positions.push(V3(v[0], v[1], v[2])),
            _ => {
                return Err(ParseError::MalformedLine {
                    line: lineno + 1,
                    text: raw.to_string(),
                })
            }
        }
    }
    Orthotree::from_positions(&positions)
}

/// A named defect of the input solid. Violations are data, not faults.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Dual graph has a cycle (edge count exceeds n-1).
    DualCycle { edges: usize, boxes: usize },
    /// Dual graph is disconnected.
    Disconnected { reachable: usize, boxes: usize },
    /// A lattice edge with more than two incident surface faces (pinched edge).
    PinchedEdge { corner: V3, axis: usize },
    /// A lattice vertex whose incident surface faces do not form a single disk.
    PinchedVertex { corner: V3 },
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A unit surface face: the face of `cell` looking toward `out`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
struct UnitFace {
    cell: V3,
    out: Direction,
}

fn surface_faces(o: &Orthotree) -> Vec<UnitFace> {
    let mut out = Vec::new();
    for b in 0..o.len() {
        for d in ALL_DIRECTIONS {
            if o.neighbor(b, d).is_none() {
                out.push(UnitFace {
                    cell: o.pos(b),
                    out: d,
                });
            }
        }
    }
    out
}

/// The four lattice edges bounding a unit face, each as (corner, axis).
/// The edge runs from `corner` one unit along `axis`.
fn face_edges(f: UnitFace) -> [(V3, usize); 4] {
    let n = f.out.vec();
    // Anchor corner of the face: min corner of the cell shifted to the face plane.
    let base = f.cell
        + V3(
            if n.0 > 0 { 1 } else { 0 },
            if n.1 > 0 { 1 } else { 0 },
            if n.2 > 0 { 1 } else { 0 },
        );
    // The two in-plane axes.
    let axes: Vec<usize> = (0..3).filter(|&i| n.at(i) == 0).collect();
    let (a, b) = (axes[0], axes[1]);
    let unit = |i: usize| match i {
        0 => V3(1, 0, 0),
        1 => V3(0, 1, 0),
        _ => V3(0, 0, 1),
    };
    [
        (base, a),
        (base + unit(b), a),
        (base, b),
        (base + unit(a), b),
    ]
}

/// Validates the tree and 2-manifold conditions, naming each violation.
pub fn validate_orthotree(o: &Orthotree) -> ValidationReport {
    let mut violations = Vec::new();
    let n = o.len();

    // Connectivity over the dual graph.
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(b) = queue.pop_front() {
        for d in ALL_DIRECTIONS {
            if let Some(nb) = o.neighbor(b, d) {
                if !seen[nb] {
                    seen[nb] = true;
                    reached += 1;
                    queue.push_back(nb);
                }
            }
        }
    }
    if reached != n {
        violations.push(Violation::Disconnected {
            reachable: reached,
            boxes: n,
        });
    }
    let edges = o.dual_edge_count();
    if edges + 1 != n && reached == n {
        violations.push(Violation::DualCycle { edges, boxes: n });
    }

    // Manifold check on the quad complex of unit surface faces.
    let faces = surface_faces(o);
    let mut edge_faces: BTreeMap<(V3, usize), Vec<usize>> = BTreeMap::new();
    for (fi, &f) in faces.iter().enumerate() {
        for e in face_edges(f) {
            edge_faces.entry(e).or_default().push(fi);
        }
    }
    for (&(corner, axis), incident) in &edge_faces {
        if incident.len() != 2 {
            violations.push(Violation::PinchedEdge { corner, axis });
        }
    }
    if violations.iter().all(|v| !matches!(v, Violation::PinchedEdge { .. })) {
        // Vertex disk condition: faces around each lattice vertex form one cycle.
        let mut vertex_faces: BTreeMap<V3, BTreeSet<usize>> = BTreeMap::new();
        for (fi, &f) in faces.iter().enumerate() {
            for (corner, axis) in face_edges(f) {
                let unit = match axis {
                    0 => V3(1, 0, 0),
                    1 => V3(0, 1, 0),
                    _ => V3(0, 0, 1),
                };
                vertex_faces.entry(corner).or_default().insert(fi);
                vertex_faces.entry(corner + unit).or_default().insert(fi);
            }
        }
        for (&v, fs) in &vertex_faces {
            if fs.len() < 3 {
                continue;
            }
            // Two faces are linked at v when they share an edge incident to v.
            let fs: Vec<usize> = fs.iter().copied().collect();
            let mut linked = vec![Vec::new(); fs.len()];
            for i in 0..fs.len() {
                for j in i + 1..fs.len() {
                    let ei: BTreeSet<_> = face_edges(faces[fs[i]])
                        .into_iter()
                        .filter(|&(c, a)| edge_touches_vertex(c, a, v))
                        .collect();
                    let shared = face_edges(faces[fs[j]])
                        .into_iter()
                        .any(|e| edge_touches_vertex(e.0, e.1, v) && ei.contains(&e));
                    if shared {
                        linked[i].push(j);
                        linked[j].push(i);
                    }
                }
            }
            // Single cycle iff connected and every node has exactly two links.
            let mut comp = vec![false; fs.len()];
            let mut stack = vec![0usize];
            comp[0] = true;
            let mut count = 1;
            while let Some(i) = stack.pop() {
                for &j in &linked[i] {
                    if !comp[j] {
                        comp[j] = true;
                        count += 1;
                        stack.push(j);
                    }
                }
            }
            if count != fs.len() || linked.iter().any(|l| l.len() != 2) {
                violations.push(Violation::PinchedVertex { corner: v });
            }
        }
    }

    ValidationReport { violations }
}

fn edge_touches_vertex(corner: V3, axis: usize, v: V3) -> bool {
    let unit = match axis {
        0 => V3(1, 0, 0),
        1 => V3(0, 1, 0),
        _ => V3(0, 0, 1),
    };
    corner == v || corner + unit == v
}

/// Box classification by dual-tree degree and neighbor arrangement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoxClass {
    Leaf,
    Connector,
    Junction,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("orthotree failed validation")]
    InvalidInput,
}

/// The rooted dual tree with heights and box classes.
#[derive(Clone, Debug)]
pub struct DualTree {
    pub root: BoxId,
    pub parent: Vec<Option<BoxId>>,
    pub children: Vec<Vec<(Direction, BoxId)>>,
    pub height: Vec<usize>,
    pub class: Vec<BoxClass>,
}

/// Roots the dual tree at the lexicographically smallest degree-1 box.
/// A single-box input roots at the unique box (degree 0); the unfolder
/// special-cases it.
pub fn build_dual_tree(o: &Orthotree) -> Result<DualTree, TreeError> {
    if !validate_orthotree(o).ok() {
        return Err(TreeError::InvalidInput);
    }
    let n = o.len();
    let root = if n == 1 {
        0
    } else {
        (0..n)
            .filter(|&b| o.degree(b) == 1)
            .min_by_key(|&b| o.pos(b))
            .expect("a finite tree with >1 node has a leaf")
    };
    let mut parent = vec![None; n];
    let mut children: Vec<Vec<(Direction, BoxId)>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(b) = queue.pop_front() {
        order.push(b);
        for d in ALL_DIRECTIONS {
            if let Some(nb) = o.neighbor(b, d) {
                if !seen[nb] {
                    seen[nb] = true;
                    parent[nb] = Some(b);
                    children[b].push((d, nb));
                    queue.push_back(nb);
                }
            }
        }
    }
    let mut height = vec![0usize; n];
    for &b in order.iter().rev() {
        height[b] = children[b]
            .iter()
            .map(|&(_, c)| height[c] + 1)
            .max()
            .unwrap_or(0);
    }
    let class = (0..n).map(|b| classify(o, b)).collect();
    Ok(DualTree {
        root,
        parent,
        children,
        height,
        class,
    })
}

fn classify(o: &Orthotree, b: BoxId) -> BoxClass {
    match o.degree(b) {
        1 => BoxClass::Leaf,
        2 => {
            let dirs: Vec<Direction> = ALL_DIRECTIONS
                .into_iter()
                .filter(|&d| o.neighbor(b, d).is_some())
                .collect();
            if dirs[0] == dirs[1].opposite() {
                BoxClass::Connector
            } else {
                BoxClass::Junction
            }
        }
        _ => BoxClass::Junction,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("unknown box id {0}")]
    UnknownBox(BoxId),
}

pub fn classify_box(o: &Orthotree, t: &DualTree, b: BoxId) -> Result<BoxClass, ClassifyError> {
    if b >= o.len() {
        return Err(ClassifyError::UnknownBox(b));
    }
    Ok(t.class[b])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(text: &str) -> Orthotree {
        parse_orthotree(text).unwrap()
    }

    #[test]
    fn parse_single_box() {
        let o = tree("0 0 0");
        assert_eq!(o.len(), 1);
        assert_eq!(o.degree(0), 0);
    }

    #[test]
    fn parse_domino_adjacency() {
        let o = tree("0 0 0\n1 0 0");
        assert_eq!(o.len(), 2);
        let a = o.id_at(V3(0, 0, 0)).unwrap();
        let b = o.id_at(V3(1, 0, 0)).unwrap();
        assert_eq!(o.neighbor(a, Direction::E), Some(b));
        assert_eq!(o.neighbor(b, Direction::W), Some(a));
        assert_eq!(o.open_face_count(), 10);
    }

    #[test]
    fn parse_rejects_duplicates() {
        assert_eq!(
            parse_orthotree("0 0 0\n0 0 0").unwrap_err(),
            ParseError::DuplicateBox(V3(0, 0, 0))
        );
    }

    #[test]
    fn parse_rejects_malformed_and_empty() {
        assert!(matches!(
            parse_orthotree("0 0"),
            Err(ParseError::MalformedLine { line: 1, .. })
        ));
        assert_eq!(
            parse_orthotree("# only a comment\n").unwrap_err(),
            ParseError::EmptyInput
        );
    }

    #[test]
    fn square_block_has_dual_cycle() {
        let o = tree("0 0 0\n1 0 0\n0 1 0\n1 1 0");
        let report = validate_orthotree(&o);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::DualCycle { edges: 4, boxes: 4 })));
    }

    #[test]
    fn edge_touching_boxes_are_disconnected() {
        let o = tree("0 0 0\n1 1 0");
        let report = validate_orthotree(&o);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Disconnected { .. })));
    }

    #[test]
    fn l_tromino_is_valid() {
        let o = tree("0 0 0\n1 0 0\n1 1 0");
        assert!(validate_orthotree(&o).ok());
    }

    #[test]
    fn pinched_edge_detected() {
        // Boxes at (0,0,0) and (1,1,0) touch only along a lattice edge;
        // the connecting path runs through the z=1 layer.
        let q = tree("0 0 0\n1 1 0\n0 0 1\n0 1 1\n1 1 1");
        let report = validate_orthotree(&q);
        assert!(
            report
                .violations
                .iter()
                .any(|v| matches!(v, Violation::PinchedEdge { .. })),
            "expected pinched edge, got {:?}",
            report.violations
        );
    }

    #[test]
    fn pinched_vertex_detected() {
        // Boxes at (0,0,0) and (1,1,1) touch only at a corner; the long
        // bridge avoids any pinched edges.
        let q = tree(
            "0 0 0\n0 0 -1\n0 0 -2\n1 0 -2\n2 0 -2\n3 0 -2\n3 1 -2\n3 1 -1\n3 1 0\n3 1 1\n2 1 1\n1 1 1",
        );
        let report = validate_orthotree(&q);
        assert!(
            report
                .violations
                .iter()
                .any(|v| matches!(v, Violation::PinchedVertex { .. })),
            "expected pinched vertex, got {:?}",
            report.violations
        );
        assert!(!report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::PinchedEdge { .. })));
    }

    #[test]
    fn staircase_corner_contact_is_manifold() {
        // Skew tetromino: two corner-touching boxes joined through the
        // elbow cells; the corner vertex is a hexagonal disk.
        let q = tree("0 0 0\n1 0 0\n1 1 0\n1 1 1");
        assert!(validate_orthotree(&q).ok());
    }

    #[test]
    fn domino_tree_shape() {
        let o = tree("0 0 0\n1 0 0");
        let t = build_dual_tree(&o).unwrap();
        assert_eq!(o.pos(t.root), V3(0, 0, 0));
        assert_eq!(t.height[t.root], 1);
        assert_eq!(t.class[t.root], BoxClass::Leaf);
    }

    #[test]
    fn tritube_middle_is_connector() {
        let o = tree("0 0 0\n1 0 0\n2 0 0");
        let t = build_dual_tree(&o).unwrap();
        let mid = o.id_at(V3(1, 0, 0)).unwrap();
        assert_eq!(t.class[mid], BoxClass::Connector);
    }

    #[test]
    fn plus_sign_center_is_junction() {
        let o = tree("0 0 0\n1 0 0\n-1 0 0\n0 1 0\n0 -1 0");
        let t = build_dual_tree(&o).unwrap();
        let c = o.id_at(V3(0, 0, 0)).unwrap();
        assert_eq!(o.degree(c), 4);
        assert_eq!(t.class[c], BoxClass::Junction);
    }

    #[test]
    fn bent_degree_two_is_junction() {
        let o = tree("0 0 0\n1 0 0\n1 1 0");
        let t = build_dual_tree(&o).unwrap();
        let corner = o.id_at(V3(1, 0, 0)).unwrap();
        assert_eq!(t.class[corner], BoxClass::Junction);
    }

    #[test]
    fn open_face_identity() {
        for text in ["0 0 0", "0 0 0\n1 0 0", "0 0 0\n1 0 0\n1 1 0\n1 2 0"] {
            let o = tree(text);
            if validate_orthotree(&o).ok() {
                assert_eq!(o.open_face_count(), 4 * o.len() + 2);
            }
        }
    }
}
