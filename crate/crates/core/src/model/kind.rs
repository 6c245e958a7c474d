use serde::{Deserialize, Serialize};
use std::fmt;

/// Logical corner of a tile, listed clockwise starting from the upper left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CornerPos {
    UL,
    UR,
    LR,
    LL,
}

impl CornerPos {
    pub const ALL: [CornerPos; 4] = [CornerPos::UL, CornerPos::UR, CornerPos::LR, CornerPos::LL];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> CornerPos {
        Self::ALL[i % 4]
    }
}

/// Side of a tile. Side `i` joins corner `i` to corner `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SideLabel {
    U,
    R,
    D,
    L,
}

impl SideLabel {
    pub const ALL: [SideLabel; 4] = [SideLabel::U, SideLabel::R, SideLabel::D, SideLabel::L];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> SideLabel {
        Self::ALL[i % 4]
    }

    /// Boundary macro-edge type: 9 left, 10 right, 11 top, 12 bottom.
    pub fn boundary_type(self) -> u8 {
        match self {
            SideLabel::L => 9,
            SideLabel::R => 10,
            SideLabel::U => 11,
            SideLabel::D => 12,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InteriorLabel {
    A,
    B,
    C,
}

/// What a vertex is. Fixed at creation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VertexKind {
    Corner(CornerPos),
    EdgeMid(SideLabel),
    Interior(InteriorLabel),
    /// Midpoint of an interior macro-edge. The first label is the side it
    /// bisects in the tile on the edge's A-side, the second on the B-side.
    Side(SideLabel, SideLabel),
}

impl VertexKind {
    pub fn is_side_or_edge_mid(self) -> bool {
        matches!(self, VertexKind::Side(..) | VertexKind::EdgeMid(_))
    }

    pub fn is_interior(self) -> bool {
        matches!(self, VertexKind::Interior(_))
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexKind::Corner(c) => write!(f, "C{c:?}"),
            VertexKind::EdgeMid(s) => write!(f, "{s:?}"),
            VertexKind::Interior(i) => write!(f, "{i:?}"),
            VertexKind::Side(a, b) => write!(f, "{a:?}{b:?}"),
        }
    }
}

/// The eleven points of a once-subdivided tile, in its logical frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    UL,
    UR,
    LR,
    LL,
    U,
    R,
    D,
    L,
    A,
    B,
    C,
}

impl Point {
    pub const ALL: [Point; 11] = [
        Point::UL,
        Point::UR,
        Point::LR,
        Point::LL,
        Point::U,
        Point::R,
        Point::D,
        Point::L,
        Point::A,
        Point::B,
        Point::C,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn corner(c: CornerPos) -> Point {
        Self::ALL[c.index()]
    }

    pub fn side_mid(s: SideLabel) -> Point {
        Self::ALL[4 + s.index()]
    }

    pub fn as_corner(self) -> Option<CornerPos> {
        (self.index() < 4).then(|| CornerPos::from_index(self.index()))
    }
}

/// Position of a tile inside its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ChildPos {
    LeftUpper,
    Middle,
    RightUpper,
    RightLower,
    Lower,
    LeftLower,
}

impl ChildPos {
    pub const ALL: [ChildPos; 6] = [
        ChildPos::LeftUpper,
        ChildPos::Middle,
        ChildPos::RightUpper,
        ChildPos::RightLower,
        ChildPos::Lower,
        ChildPos::LeftLower,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Position {
    Child(ChildPos),
    Root,
    Pasted,
}

/// Each child as a clockwise 4-cycle of parent points.
pub const CHILD_CYCLES: [[Point; 4]; 6] = [
    [Point::UL, Point::U, Point::A, Point::L],
    [Point::U, Point::B, Point::C, Point::A],
    [Point::U, Point::UR, Point::R, Point::B],
    [Point::B, Point::R, Point::LR, Point::C],
    [Point::C, Point::LR, Point::D, Point::LL],
    [Point::L, Point::A, Point::C, Point::LL],
];

/// The eight interior macro-edges created by a subdivision, in slot order.
pub const INTERIOR_EDGES: [(Point, Point); 8] = [
    (Point::U, Point::A),
    (Point::A, Point::L),
    (Point::A, Point::C),
    (Point::B, Point::U),
    (Point::B, Point::R),
    (Point::C, Point::B),
    (Point::C, Point::LL),
    (Point::C, Point::LR),
];

/// Half-sides of the parent: (corner, midpoint) pairs, side by side.
pub fn half_sides() -> [(Point, Point); 8] {
    let mut out = [(Point::UL, Point::U); 8];
    for s in 0..4 {
        let mid = Point::side_mid(SideLabel::from_index(s));
        out[2 * s] = (Point::corner(CornerPos::from_index(s)), mid);
        out[2 * s + 1] = (mid, Point::corner(CornerPos::from_index(s + 1)));
    }
    out
}

/// Every point pair joined by a child side in the canonical incidence.
pub fn child_sides() -> Vec<(Point, Point)> {
    let mut v: Vec<_> = half_sides().to_vec();
    v.extend_from_slice(&INTERIOR_EDGES);
    v
}

/// Whether `p` and `q` are joined by a child side.
pub fn points_adjacent(p: Point, q: Point) -> bool {
    child_sides().iter().any(|&(a, b)| (a, b) == (p, q) || (a, b) == (q, p))
}
