//! GQ(2,2) in the duad model and the product near hexagon L3 x GQ(2,2).
//!
//! Point numbering is fixed:
//!
//! * GQ points are the duads of `{1..6}` in lexicographic order,
//!   `{1,2} = 0, {1,3} = 1, ..., {5,6} = 14`.
//! * Near-hexagon point `(layer, q)` has id `15 * layer + q`, layers `0..3`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::{bits_of, PointSet, GQ_MASK};

pub const GQ_POINTS: usize = 15;
pub const GQ_LINES: usize = 15;
pub const NH_POINTS: usize = 45;
pub const NH_LINES: usize = 60;
pub const LAYERS: usize = 3;

/// A two-element subset `{lo, hi}` of `{1..6}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Duad {
    lo: u8,
    hi: u8,
}

impl Duad {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        if a == b || !(1..=6).contains(&a) || !(1..=6).contains(&b) {
            return Err(Error::InvalidDuad(a, b));
        }
        Ok(Duad {
            lo: a.min(b),
            hi: a.max(b),
        })
    }

    pub fn lo(self) -> u8 {
        self.lo
    }

    pub fn hi(self) -> u8 {
        self.hi
    }

    /// Lexicographic rank, `0..15`.
    pub fn index(self) -> usize {
        DUADS.iter().position(|&d| d == (self.lo, self.hi)).unwrap()
    }

    pub fn from_index(i: usize) -> Self {
        let (lo, hi) = DUADS[i];
        Duad { lo, hi }
    }

    pub fn contains(self, x: u8) -> bool {
        self.lo == x || self.hi == x
    }

    /// Bit mask over `{1..6}`, element `k` at bit `k - 1`.
    pub fn element_mask(self) -> u8 {
        1 << (self.lo - 1) | 1 << (self.hi - 1)
    }

    pub fn is_disjoint(self, other: Duad) -> bool {
        self.element_mask() & other.element_mask() == 0
    }
}

impl fmt::Display for Duad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

const DUADS: [(u8, u8); 15] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (3, 4),
    (3, 5),
    (3, 6),
    (4, 5),
    (4, 6),
    (5, 6),
];

/// A point of GQ(2,2), identified with the duad of the same rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GqPoint(pub u8);

impl GqPoint {
    pub fn duad(self) -> Duad {
        Duad::from_index(self.0 as usize)
    }

    pub fn from_duad(d: Duad) -> Self {
        GqPoint(d.index() as u8)
    }
}

/// Three pairwise disjoint duads, i.e. a partition of `{1..6}` into duads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GqLine {
    pub points: [GqPoint; 3],
}

impl GqLine {
    pub fn mask(self) -> u64 {
        self.points.iter().fold(0, |m, p| m | 1 << p.0)
    }
}

/// GQ(2,2) with precomputed incidence tables.
#[derive(Clone, Debug)]
pub struct Gq {
    lines: Vec<GqLine>,
    line_masks: Vec<u64>,
    lines_through: [[u8; 3]; GQ_POINTS],
    /// Collinear points, excluding the point itself.
    neighbours: [u64; GQ_POINTS],
    grids: Vec<u64>,
}

/// Builds GQ(2,2): points are duads, collinear iff disjoint, and the lines
/// are the 15 partitions of `{1..6}` into three duads.
pub fn build_gq() -> Gq {
    let mut neighbours = [0u64; GQ_POINTS];
    for (i, nb) in neighbours.iter_mut().enumerate() {
        for j in 0..GQ_POINTS {
            if i != j && Duad::from_index(i).is_disjoint(Duad::from_index(j)) {
                *nb |= 1 << j;
            }
        }
    }

    let mut lines = Vec::with_capacity(GQ_LINES);
    for a in 0..GQ_POINTS {
        for b in a + 1..GQ_POINTS {
            for c in b + 1..GQ_POINTS {
                if neighbours[a] >> b & 1 == 1 && neighbours[a] >> c & 1 == 1 && neighbours[b] >> c & 1 == 1 {
                    lines.push(GqLine {
                        points: [GqPoint(a as u8), GqPoint(b as u8), GqPoint(c as u8)],
                    });
                }
            }
        }
    }
    let line_masks: Vec<u64> = lines.iter().map(|l| l.mask()).collect();

    let mut lines_through = [[0u8; 3]; GQ_POINTS];
    let mut fill = [0usize; GQ_POINTS];
    for (li, l) in lines.iter().enumerate() {
        for p in l.points {
            let p = p.0 as usize;
            lines_through[p][fill[p]] = li as u8;
            fill[p] += 1;
        }
    }

    // Grids: {{a, b} : a in S, b in T} for the ten 3|3 splits of {1..6}.
    let mut grids = Vec::with_capacity(10);
    for s in 0u8..64 {
        if s.count_ones() != 3 || s & 1 == 0 {
            continue;
        }
        let mask = (0..GQ_POINTS).fold(0u64, |m, i| {
            let d = Duad::from_index(i).element_mask();
            if (d & s).count_ones() == 1 {
                m | 1 << i
            } else {
                m
            }
        });
        grids.push(mask);
    }

    Gq {
        lines,
        line_masks,
        lines_through,
        neighbours,
        grids,
    }
}

/// Shape of the intersection of a set with one GQ(2,2)-quad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuadLabel {
    Full,
    Grid,
    Perp,
    Ovoid,
    GPerp,
    Line,
    TriTriad,
    UniTriad,
    SinglePoint,
    Empty,
    Other,
}

impl QuadLabel {
    pub const ALL: [QuadLabel; 11] = [
        QuadLabel::Full,
        QuadLabel::Grid,
        QuadLabel::Perp,
        QuadLabel::Ovoid,
        QuadLabel::GPerp,
        QuadLabel::Line,
        QuadLabel::TriTriad,
        QuadLabel::UniTriad,
        QuadLabel::SinglePoint,
        QuadLabel::Empty,
        QuadLabel::Other,
    ];

    /// Short name used in tables and fixtures.
    pub fn name(self) -> &'static str {
        match self {
            QuadLabel::Full => "full",
            QuadLabel::Grid => "grid",
            QuadLabel::Perp => "perp",
            QuadLabel::Ovoid => "ovoid",
            QuadLabel::GPerp => "g-perp",
            QuadLabel::Line => "line",
            QuadLabel::TriTriad => "tritr",
            QuadLabel::UniTriad => "unitr",
            QuadLabel::SinglePoint => "point",
            QuadLabel::Empty => "empty",
            QuadLabel::Other => "other",
        }
    }

    pub fn from_name(s: &str) -> Option<QuadLabel> {
        QuadLabel::ALL.into_iter().find(|l| l.name() == s)
    }
}

impl fmt::Display for QuadLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Gq {
    pub fn lines(&self) -> &[GqLine] {
        &self.lines
    }

    pub fn line_masks(&self) -> &[u64] {
        &self.line_masks
    }

    pub fn lines_through(&self, p: GqPoint) -> [u8; 3] {
        self.lines_through[p.0 as usize]
    }

    pub fn collinear(&self, a: GqPoint, b: GqPoint) -> bool {
        a == b || self.neighbours[a.0 as usize] >> b.0 & 1 == 1
    }

    /// The point together with every point collinear to it.
    pub fn perp(&self, p: GqPoint) -> PointSet {
        PointSet::gq(self.neighbours[p.0 as usize] | 1 << p.0)
    }

    /// The ten GQ(2,1) subquadrangles.
    pub fn grids(&self) -> &[u64] {
        &self.grids
    }

    /// Number of GQ lines entirely inside `s`.
    pub fn lines_inside(&self, s: PointSet) -> usize {
        self.line_masks.iter().filter(|&&m| m & s.bits() == m).count()
    }

    pub fn is_hyperplane(&self, s: PointSet) -> bool {
        assert_eq!(s.width(), 15);
        !s.is_full()
            && self.line_masks.iter().all(|&m| {
                let k = (m & s.bits()).count_ones();
                k == 1 || k == 3
            })
    }

    fn pairwise_noncollinear(&self, s: PointSet) -> bool {
        s.iter().all(|p| self.neighbours[p] & s.bits() == 0)
    }

    /// All points collinear with each member of the triad `s`.
    pub fn triad_centers(&self, s: PointSet) -> Result<PointSet> {
        if s.width() != 15 || s.len() != 3 || !self.pairwise_noncollinear(s) {
            return Err(Error::NotATriad);
        }
        let common = s.iter().fold(GQ_MASK, |m, p| m & self.neighbours[p]);
        Ok(PointSet::gq(common))
    }

    /// Centre of a g-perp: its unique point lying on both of its lines.
    pub fn gperp_center(&self, s: PointSet) -> Option<GqPoint> {
        let inside: Vec<u64> = self.line_masks.iter().copied().filter(|&m| m & s.bits() == m).collect();
        match inside.as_slice() {
            [a, b] if (a & b).count_ones() == 1 => Some(GqPoint((a & b).trailing_zeros() as u8)),
            _ => None,
        }
    }

    /// Classifies a subset of the 15 points by the shapes that occur as
    /// core-quad intersections.
    pub fn classify_subset(&self, s: PointSet) -> QuadLabel {
        assert_eq!(s.width(), 15, "classify_subset needs a 15-point set");
        match s.len() {
            0 => QuadLabel::Empty,
            1 => QuadLabel::SinglePoint,
            15 => QuadLabel::Full,
            3 => {
                if self.lines_inside(s) == 1 {
                    QuadLabel::Line
                } else if let Ok(c) = self.triad_centers(s) {
                    match c.len() {
                        3 => QuadLabel::TriTriad,
                        1 => QuadLabel::UniTriad,
                        _ => QuadLabel::Other,
                    }
                } else {
                    QuadLabel::Other
                }
            }
            5 => {
                if self.pairwise_noncollinear(s) {
                    QuadLabel::Ovoid
                } else if self.is_gperp(s) {
                    QuadLabel::GPerp
                } else {
                    QuadLabel::Other
                }
            }
            7 => {
                if s.iter().any(|p| self.perp(GqPoint(p as u8)) == s) {
                    QuadLabel::Perp
                } else {
                    QuadLabel::Other
                }
            }
            9 => {
                if self.grids.contains(&s.bits()) {
                    QuadLabel::Grid
                } else {
                    QuadLabel::Other
                }
            }
            _ => QuadLabel::Other,
        }
    }

    /// True if `s` is the perp of one of its points taken inside a grid.
    fn is_gperp(&self, s: PointSet) -> bool {
        let Some(c) = self.gperp_center(s) else {
            return false;
        };
        let perp = self.perp(c).bits();
        self.grids
            .iter()
            .any(|&g| g & s.bits() == s.bits() && perp & g == s.bits())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineKind {
    /// `{(l, q) : l in L3}` for a fixed GQ point `q`.
    TypeOne,
    /// `{(l, q) : q in L}` for a fixed layer `l` and GQ line `L`.
    TypeTwo,
}

/// A point `(layer, q)` of the near hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NhPoint {
    pub layer: u8,
    pub gq: GqPoint,
}

impl NhPoint {
    pub fn id(self) -> usize {
        15 * self.layer as usize + self.gq.0 as usize
    }

    pub fn from_id(id: usize) -> Self {
        assert!(id < NH_POINTS, "point id {id} out of range");
        NhPoint {
            layer: (id / 15) as u8,
            gq: GqPoint((id % 15) as u8),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NhLine {
    pub kind: LineKind,
    pub points: [u8; 3],
}

impl NhLine {
    pub fn mask(self) -> u64 {
        self.points.iter().fold(0, |m, &p| m | 1 << p)
    }
}

/// L3 x GQ(2,2) with its incidence tables.
///
/// Lines are ordered: the 15 type-one lines by GQ point, then the 45
/// type-two lines by layer and GQ line.
#[derive(Clone, Debug)]
pub struct NearHexagon {
    gq: Gq,
    lines: Vec<NhLine>,
    line_masks: Vec<u64>,
    lines_through: [[u8; 4]; NH_POINTS],
    neighbours: [u64; NH_POINTS],
}

pub fn build_near_hexagon() -> NearHexagon {
    let gq = build_gq();
    let mut lines = Vec::with_capacity(NH_LINES);
    for q in 0..GQ_POINTS as u8 {
        lines.push(NhLine {
            kind: LineKind::TypeOne,
            points: [q, q + 15, q + 30],
        });
    }
    for layer in 0..LAYERS as u8 {
        for l in gq.lines() {
            lines.push(NhLine {
                kind: LineKind::TypeTwo,
                points: l.points.map(|p| 15 * layer + p.0),
            });
        }
    }
    let line_masks: Vec<u64> = lines.iter().map(|l| l.mask()).collect();

    let mut lines_through = [[0u8; 4]; NH_POINTS];
    let mut fill = [0usize; NH_POINTS];
    let mut neighbours = [0u64; NH_POINTS];
    for (li, l) in lines.iter().enumerate() {
        for &p in &l.points {
            let p = p as usize;
            lines_through[p][fill[p]] = li as u8;
            fill[p] += 1;
            neighbours[p] |= l.mask() & !(1 << p);
        }
    }
    debug_assert!(fill.iter().all(|&f| f == 4));

    NearHexagon {
        gq,
        lines,
        line_masks,
        lines_through,
        neighbours,
    }
}

impl NearHexagon {
    pub fn gq(&self) -> &Gq {
        &self.gq
    }

    pub fn lines(&self) -> &[NhLine] {
        &self.lines
    }

    pub fn line_masks(&self) -> &[u64] {
        &self.line_masks
    }

    pub fn lines_through(&self, p: usize) -> [u8; 4] {
        self.lines_through[p]
    }

    pub fn neighbours(&self, p: usize) -> PointSet {
        PointSet::nh(self.neighbours[p])
    }

    /// Collinearity-graph distances from `p` to every point.
    pub fn distances_from(&self, p: usize) -> [u8; NH_POINTS] {
        let mut dist = [u8::MAX; NH_POINTS];
        dist[p] = 0;
        let mut queue = VecDeque::from([p]);
        while let Some(x) = queue.pop_front() {
            for y in bits_of(self.neighbours[x]) {
                if dist[y] == u8::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Points at non-maximal distance (at most 2) from `p`.
    pub fn singular_hyperplane(&self, p: usize) -> PointSet {
        let dist = self.distances_from(p);
        PointSet::from_points(45, (0..NH_POINTS).filter(|&q| dist[q] <= 2))
    }

    /// Proper subset meeting every line in one point or in the whole line.
    pub fn is_geometric_hyperplane(&self, s: PointSet) -> bool {
        assert_eq!(s.width(), 45, "hyperplane test needs a 45-point set");
        is_hyperplane_mask(&self.line_masks, s.bits())
    }

    /// Number of lines through `p` lying entirely in `core`.
    pub fn point_order(&self, core: PointSet, p: usize) -> Result<u8> {
        if !core.contains(p) {
            return Err(Error::PointNotInCore(p));
        }
        Ok(self.point_order_unchecked(core.bits(), p))
    }

    #[inline]
    pub(crate) fn point_order_unchecked(&self, core: u64, p: usize) -> u8 {
        self.lines_through[p]
            .iter()
            .filter(|&&l| {
                let m = self.line_masks[l as usize];
                m & core == m
            })
            .count() as u8
    }

    /// Number of near-hexagon lines entirely inside `s`.
    pub fn lines_inside(&self, s: PointSet) -> usize {
        self.line_masks.iter().filter(|&&m| m & s.bits() == m).count()
    }

    /// The part of `s` lying in `layer`, as a set of GQ points.
    pub fn layer_slice(&self, s: PointSet, layer: usize) -> PointSet {
        PointSet::gq(s.bits() >> (15 * layer) & GQ_MASK)
    }
}

pub(crate) fn is_hyperplane_mask(line_masks: &[u64], s: u64) -> bool {
    s != crate::pointset::NH_MASK
        && line_masks.iter().all(|&m| {
            let k = (m & s).count_ones();
            k == 1 || k == 3
        })
}
