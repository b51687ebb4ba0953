//! The F2 vector space of geometric hyperplanes.
//!
//! A hyperplane is identified by a 10-bit coordinate vector over the basis
//! `e1..e5 (x) f1, e1..e5 (x) f2`, where `e_i` is the ovoid of duads
//! containing `i`. Bits `0..5` hold the `f1` coefficients and bits `5..10`
//! the `f2` coefficients. With `x` the `f1` part and `y` the `f2` part,
//! the three layers are `(y, x, x + y)`, a zero layer meaning the quad is
//! deep.
//!
//! The Veldkamp sum is the complement of the symmetric difference, which
//! in coordinates is XOR. The zero vector stands for the full point set
//! and is never a hyperplane.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Duad, NearHexagon, LAYERS};
use crate::pointset::{PointSet, GQ_MASK, NH_MASK};

pub const HYPERPLANE_COUNT: usize = 1023;
pub const VELDKAMP_LINE_COUNT: usize = 174_251;
pub const GQ_HYPERPLANE_COUNT: usize = 31;
pub const GQ_VELDKAMP_LINE_COUNT: usize = 155;

const ALL_SIX: u8 = 0b11_1111;

/// Ovoid `e_i`: the five duads containing `i` (`i` in `1..=6`).
pub fn ovoid(i: u8) -> PointSet {
    assert!((1..=6).contains(&i));
    PointSet::from_points(15, (0..15).filter(|&k| Duad::from_index(k).contains(i)))
}

/// Vector of V(GQ(2,2)) over the basis `e1..e5` (bit `i - 1` for `e_i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GqVector(pub u8);

impl GqVector {
    pub const ZERO: GqVector = GqVector(0);

    /// Sum of `e_i` over the elements of `subset` (bit `k - 1` for element `k`).
    /// Uses `e6 = e1 + ... + e5`.
    pub fn from_element_set(subset: u8) -> Self {
        let subset = subset & ALL_SIX;
        let side = if subset & 0b10_0000 != 0 {
            !subset & ALL_SIX
        } else {
            subset
        };
        GqVector(side)
    }

    /// The point set of this vector; zero gives all 15 points.
    pub fn points(self) -> PointSet {
        let complement = (0..5)
            .filter(|&i| self.0 >> i & 1 == 1)
            .fold(0u64, |m, i| m ^ (!ovoid(i + 1)).bits());
        PointSet::gq(!complement & GQ_MASK)
    }

    pub fn to_partition(self) -> Option<SetPartition> {
        if self.0 == 0 {
            None
        } else {
            Some(SetPartition::canonical(self.0))
        }
    }
}

/// A split `{S | T}` of `{1..6}` into two nonempty sets, stored as the
/// side containing 1 (bit `k - 1` for element `k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SetPartition {
    s: u8,
}

impl SetPartition {
    pub fn new(s: u8, t: u8) -> Result<Self> {
        if s & t != 0 {
            return Err(Error::InvalidPartition("sides overlap"));
        }
        if s | t != ALL_SIX {
            return Err(Error::InvalidPartition("sides do not cover 1..6"));
        }
        if s == 0 || t == 0 {
            return Err(Error::InvalidPartition("empty side"));
        }
        Ok(Self::canonical(s))
    }

    fn canonical(s: u8) -> Self {
        let s = s & ALL_SIX;
        SetPartition {
            s: if s & 1 == 1 { s } else { !s & ALL_SIX },
        }
    }

    /// The side containing 1.
    pub fn s(self) -> u8 {
        self.s
    }

    pub fn t(self) -> u8 {
        !self.s & ALL_SIX
    }

    /// Side sizes, larger first.
    pub fn shape(self) -> (u32, u32) {
        let a = self.s.count_ones();
        let b = 6 - a;
        (a.max(b), a.min(b))
    }

    pub fn to_vector(self) -> GqVector {
        GqVector::from_element_set(self.s)
    }

    /// All 31 nontrivial splits.
    pub fn all() -> impl Iterator<Item = SetPartition> {
        (1u8..64)
            .filter(|s| s & 1 == 1 && *s != ALL_SIX)
            .map(|s| SetPartition { s })
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}|{}}}", elements(self.s()), elements(self.t()))
    }
}

fn elements(mask: u8) -> String {
    (1..=6u8)
        .filter(|k| mask >> (k - 1) & 1 == 1)
        .map(|k| char::from(b'0' + k))
        .collect()
}

/// Set-theoretic Veldkamp sum of `{A|B}` and `{C|D}`:
/// `{(A n C) u (B n D) | (A n D) u (B n C)}`.
pub fn partition_sum(p1: SetPartition, p2: SetPartition) -> Result<SetPartition> {
    let (a, b, c, d) = (p1.s(), p1.t(), p2.s(), p2.t());
    let left = (a & c) | (b & d);
    let right = (a & d) | (b & c);
    if left == 0 || right == 0 {
        return Err(Error::ZeroSum);
    }
    SetPartition::new(left, right)
}

/// Ordered quadruple `(A, B, C, D)` of pairwise disjoint subsets of
/// `{1..6}` covering it, with at most two empty parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadruple {
    parts: [u8; 4],
}

// Klein four-group acting on part positions.
const V4: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

impl Quadruple {
    pub fn new(a: u8, b: u8, c: u8, d: u8) -> Result<Self> {
        let parts = [a, b, c, d];
        if parts.iter().any(|&p| p & !ALL_SIX != 0) {
            return Err(Error::InvalidQuadruple("element outside 1..6"));
        }
        let mut seen = 0u8;
        for p in parts {
            if seen & p != 0 {
                return Err(Error::InvalidQuadruple("parts overlap"));
            }
            seen |= p;
        }
        if seen != ALL_SIX {
            return Err(Error::InvalidQuadruple("parts do not cover 1..6"));
        }
        if parts.iter().filter(|&&p| p == 0).count() > 2 {
            return Err(Error::InvalidQuadruple("three empty parts"));
        }
        Ok(Quadruple { parts })
    }

    /// Build from a part label `0..4` per element `1..6`.
    pub fn from_labels(labels: [u8; 6]) -> Result<Self> {
        let mut parts = [0u8; 4];
        for (k, &l) in labels.iter().enumerate() {
            if l > 3 {
                return Err(Error::InvalidQuadruple("label outside 0..4"));
            }
            parts[l as usize] |= 1 << k;
        }
        Self::new(parts[0], parts[1], parts[2], parts[3])
    }

    pub fn parts(self) -> [u8; 4] {
        self.parts
    }

    /// Which part holds each element `1..6`.
    pub fn labels(self) -> [u8; 6] {
        let mut out = [0u8; 6];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.parts.iter().position(|p| p >> k & 1 == 1).unwrap() as u8;
        }
        out
    }

    /// The four quadruples indexing the same hyperplane.
    pub fn v4_images(self) -> [Quadruple; 4] {
        V4.map(|perm| Quadruple {
            parts: perm.map(|i| self.parts[i]),
        })
    }

    /// Least image under the Klein four-group, comparing label sequences.
    pub fn canonical(self) -> Self {
        self.v4_images().into_iter().min_by_key(|q| q.labels()).unwrap()
    }

    /// Multiset of nonzero part sizes, largest first.
    pub fn shape(self) -> Vec<u32> {
        let mut sizes: Vec<u32> = self.parts.iter().map(|p| p.count_ones()).filter(|&n| n > 0).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Layer partitions `{A u B | C u D}`, `{A u C | B u D}`, `{A u D | B u C}`
    /// as GQ vectors (zero for a trivial split).
    pub fn layers(self) -> [GqVector; 3] {
        let [a, b, c, d] = self.parts;
        [a | b, a | c, a | d].map(GqVector::from_element_set)
    }
}

impl fmt::Display for Quadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.parts.map(elements);
        write!(f, "({a},{b},{c},{d})")
    }
}

/// The eight orbit types of hyperplanes, keyed by quadruple shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HyperplaneType {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
}

impl HyperplaneType {
    pub const ALL: [HyperplaneType; 8] = [
        HyperplaneType::H1,
        HyperplaneType::H2,
        HyperplaneType::H3,
        HyperplaneType::H4,
        HyperplaneType::H5,
        HyperplaneType::H6,
        HyperplaneType::H7,
        HyperplaneType::H8,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_shape(shape: &[u32]) -> Option<Self> {
        use HyperplaneType::*;
        Some(match shape {
            [3, 3] => H1,
            [4, 2] => H2,
            [5, 1] => H3,
            [2, 2, 1, 1] => H4,
            [2, 2, 2] => H5,
            [3, 1, 1, 1] => H6,
            [3, 2, 1] => H7,
            [4, 1, 1] => H8,
            _ => return None,
        })
    }

    pub fn partition(self) -> &'static [u32] {
        use HyperplaneType::*;
        match self {
            H1 => &[3, 3],
            H2 => &[4, 2],
            H3 => &[5, 1],
            H4 => &[2, 2, 1, 1],
            H5 => &[2, 2, 2],
            H6 => &[3, 1, 1, 1],
            H7 => &[3, 2, 1],
            H8 => &[4, 1, 1],
        }
    }

    pub fn name(self) -> &'static str {
        ["H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8"][self.index()]
    }
}

impl fmt::Display for HyperplaneType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Coordinate vector of a hyperplane, `1..=1023`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperplaneId(pub u16);

impl HyperplaneId {
    pub fn new(v: u32) -> Result<Self> {
        if v == 0 || v > 1023 {
            return Err(Error::HyperplaneOutOfRange(v));
        }
        Ok(HyperplaneId(v as u16))
    }

    /// Layer vectors `(y, x, x + y)`.
    pub fn layers(self) -> [GqVector; 3] {
        let x = (self.0 & 0x1f) as u8;
        let y = (self.0 >> 5) as u8;
        [GqVector(y), GqVector(x), GqVector(x ^ y)]
    }

    pub fn from_layers(layers: [GqVector; 3]) -> Self {
        debug_assert_eq!(layers[0].0 ^ layers[1].0, layers[2].0);
        HyperplaneId(layers[1].0 as u16 | (layers[0].0 as u16) << 5)
    }

    /// Basis vector `e_k`, `k` in `1..=10`.
    pub fn basis(k: u8) -> Self {
        assert!((1..=10).contains(&k));
        HyperplaneId(1 << (k - 1))
    }
}

impl fmt::Display for HyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Point set of the vector `id` (the zero vector gives all 45 points).
pub fn points_of(id: u16) -> u64 {
    HyperplaneId(id)
        .layers()
        .iter()
        .enumerate()
        .fold(0u64, |m, (l, v)| m | v.points().bits() << (15 * l))
}

/// Veldkamp sum in coordinates.
pub fn veldkamp_sum(h1: HyperplaneId, h2: HyperplaneId) -> Result<HyperplaneId> {
    if h1 == h2 {
        return Err(Error::ZeroSum);
    }
    Ok(HyperplaneId(h1.0 ^ h2.0))
}

/// Veldkamp sum on point sets: complement of the symmetric difference.
pub fn veldkamp_sum_points(a: PointSet, b: PointSet) -> Result<PointSet> {
    let s = !(a ^ b);
    if s.is_full() {
        return Err(Error::ZeroSum);
    }
    Ok(s)
}

pub fn hyperplane_from_quadruple(q: Quadruple) -> HyperplaneId {
    HyperplaneId::from_layers(q.layers())
}

/// Inverse of [`hyperplane_from_quadruple`], returning the canonical
/// representative (the one with `1` in `A`).
pub fn quadruple_from_hyperplane(h: HyperplaneId) -> Quadruple {
    let [m1, m2, _] = h.layers();
    let side_of_one = |v: GqVector| -> u8 {
        if v.0 == 0 {
            ALL_SIX
        } else if v.0 & 1 == 1 {
            v.0
        } else {
            !v.0 & ALL_SIX
        }
    };
    let s1 = side_of_one(m1);
    let s2 = side_of_one(m2);
    let q = Quadruple {
        parts: [s1 & s2, s1 & !s2, s2 & !s1, ALL_SIX & !s1 & !s2],
    };
    debug_assert!(Quadruple::new(q.parts[0], q.parts[1], q.parts[2], q.parts[3]).is_ok());
    q
}

pub fn hyperplane_type(h: HyperplaneId) -> HyperplaneType {
    HyperplaneType::from_shape(&quadruple_from_hyperplane(h).shape())
        .expect("every valid quadruple has one of the eight shapes")
}

/// A hyperplane with its three mutually consistent representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hyperplane {
    pub id: HyperplaneId,
    pub points: PointSet,
    pub quadruple: Quadruple,
}

impl Hyperplane {
    pub fn from_id(id: HyperplaneId) -> Self {
        Hyperplane {
            id,
            points: PointSet::nh(points_of(id.0)),
            quadruple: quadruple_from_hyperplane(id),
        }
    }

    pub fn kind(&self) -> HyperplaneType {
        hyperplane_type(self.id)
    }
}

/// The six ovoids of GQ(2,2) and the ten basis hyperplanes.
#[derive(Clone, Debug)]
pub struct OvoidBasis {
    pub ovoids: [PointSet; 6],
    pub basis: [Hyperplane; 10],
}

pub fn ovoid_basis() -> OvoidBasis {
    OvoidBasis {
        ovoids: std::array::from_fn(|i| ovoid(i as u8 + 1)),
        basis: std::array::from_fn(|k| Hyperplane::from_id(HyperplaneId::basis(k as u8 + 1))),
    }
}

/// Every hyperplane, indexed by coordinate vector, with reverse lookup from
/// point sets.
#[derive(Clone, Debug)]
pub struct HyperplaneSpace {
    masks: Vec<u64>,
    types: Vec<Option<HyperplaneType>>,
    by_mask: HashMap<u64, u16>,
}

impl HyperplaneSpace {
    pub fn build() -> Self {
        let masks: Vec<u64> = (0..=HYPERPLANE_COUNT as u16).map(points_of).collect();
        let types = (0..=HYPERPLANE_COUNT as u16)
            .map(|v| (v != 0).then(|| hyperplane_type(HyperplaneId(v))))
            .collect();
        let by_mask = masks.iter().enumerate().skip(1).map(|(v, &m)| (m, v as u16)).collect();
        HyperplaneSpace { masks, types, by_mask }
    }

    /// Point mask of vector `v` (`v = 0` is the full set).
    #[inline]
    pub fn mask(&self, v: u16) -> u64 {
        self.masks[v as usize]
    }

    pub fn points(&self, h: HyperplaneId) -> PointSet {
        PointSet::nh(self.masks[h.0 as usize])
    }

    #[inline]
    pub fn kind(&self, h: HyperplaneId) -> HyperplaneType {
        self.types[h.0 as usize].expect("nonzero id")
    }

    pub fn id_of(&self, points: PointSet) -> Result<HyperplaneId> {
        self.by_mask
            .get(&points.bits())
            .map(|&v| HyperplaneId(v))
            .ok_or(Error::NotAHyperplane)
    }

    pub(crate) fn id_of_mask(&self, mask: u64) -> Option<u16> {
        self.by_mask.get(&mask).copied()
    }

    pub fn ids(&self) -> impl Iterator<Item = HyperplaneId> {
        (1..=HYPERPLANE_COUNT as u16).map(HyperplaneId)
    }

    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        self.ids().map(Hyperplane::from_id)
    }
}

/// Hyperplanes as spans of the basis, checked against the predicate.
pub fn enumerate_hyperplanes(nh: &NearHexagon) -> Vec<Hyperplane> {
    let out: Vec<Hyperplane> = (1..=HYPERPLANE_COUNT as u16)
        .map(|v| Hyperplane::from_id(HyperplaneId(v)))
        .collect();
    debug_assert!(out.iter().all(|h| nh.is_geometric_hyperplane(h.points)));
    out
}

/// Distinct hyperplanes obtained from every valid ordered quadruple.
pub fn hyperplanes_from_quadruples() -> Vec<HyperplaneId> {
    let mut ids: Vec<HyperplaneId> = all_quadruples().map(hyperplane_from_quadruple).collect();
    ids.sort_unstable();
    ids.dedup();
    ids
}

/// All 4092 ordered quadruples.
pub fn all_quadruples() -> impl Iterator<Item = Quadruple> {
    (0..4096u32).filter_map(|code| {
        let labels: [u8; 6] = std::array::from_fn(|k| (code >> (2 * k) & 3) as u8);
        Quadruple::from_labels(labels).ok()
    })
}

/// Unordered triple `{h1, h2, h1 + h2}`, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VeldkampLine {
    ids: [u16; 3],
}

impl VeldkampLine {
    pub fn through(h1: HyperplaneId, h2: HyperplaneId) -> Result<Self> {
        let h3 = veldkamp_sum(h1, h2)?;
        let mut ids = [h1.0, h2.0, h3.0];
        ids.sort_unstable();
        Ok(VeldkampLine { ids })
    }

    /// From three ids, which must be closed under the sum.
    pub fn from_sorted_unchecked(ids: [u16; 3]) -> Self {
        debug_assert!(ids[0] < ids[1] && ids[1] < ids[2] && ids[0] ^ ids[1] == ids[2]);
        VeldkampLine { ids }
    }

    pub fn ids(self) -> [HyperplaneId; 3] {
        self.ids.map(HyperplaneId)
    }

    pub fn raw(self) -> [u16; 3] {
        self.ids
    }

    /// Points common to all three members.
    pub fn core(self, space: &HyperplaneSpace) -> PointSet {
        PointSet::nh(self.core_mask(space))
    }

    #[inline]
    pub(crate) fn core_mask(self, space: &HyperplaneSpace) -> u64 {
        self.ids.iter().fold(NH_MASK, |m, &v| m & space.mask(v))
    }
}

impl fmt::Display for VeldkampLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.ids[0], self.ids[1], self.ids[2])
    }
}

/// All Veldkamp lines of a space of dimension `dim`, sorted.
pub fn lines_of_dimension(dim: u32) -> Vec<VeldkampLine> {
    let top = 1u16 << dim;
    let mut out = Vec::new();
    for a in 1..top {
        for b in a + 1..top {
            let c = a ^ b;
            if c > b {
                out.push(VeldkampLine { ids: [a, b, c] });
            }
        }
    }
    out
}

pub fn enumerate_veldkamp_lines() -> Vec<VeldkampLine> {
    lines_of_dimension(10)
}

/// Dense index from a line to its position in [`enumerate_veldkamp_lines`].
#[derive(Clone, Debug)]
pub struct LineIndex {
    lines: Vec<VeldkampLine>,
    slot: Vec<u32>,
}

impl LineIndex {
    pub fn new(lines: Vec<VeldkampLine>) -> Self {
        let mut slot = vec![u32::MAX; 1 << 20];
        for (i, l) in lines.iter().enumerate() {
            slot[(l.ids[0] as usize) << 10 | l.ids[1] as usize] = i as u32;
        }
        LineIndex { lines, slot }
    }

    pub fn lines(&self) -> &[VeldkampLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    #[inline]
    pub fn index_of(&self, l: VeldkampLine) -> usize {
        self.slot[(l.ids[0] as usize) << 10 | l.ids[1] as usize] as usize
    }

    /// Index of the line through two distinct nonzero vectors.
    #[inline]
    pub fn index_through(&self, a: u16, b: u16) -> usize {
        let c = a ^ b;
        let mut t = [a, b, c];
        t.sort_unstable();
        self.slot[(t[0] as usize) << 10 | t[1] as usize] as usize
    }
}

/// Layer slices of a hyperplane point set, each either all 15 points or
/// a hyperplane of GQ(2,2).
pub fn layer_slices(points: PointSet) -> [PointSet; LAYERS] {
    std::array::from_fn(|l| PointSet::gq(points.bits() >> (15 * l) & GQ_MASK))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_gq, build_near_hexagon, QuadLabel};

    fn duads(pairs: &[(u8, u8)]) -> PointSet {
        PointSet::from_points(15, pairs.iter().map(|&(a, b)| Duad::new(a, b).unwrap().index()))
    }

    fn set(elems: &[u8]) -> u8 {
        elems.iter().fold(0, |m, &k| m | 1 << (k - 1))
    }

    #[test]
    fn ovoids_and_their_relation() {
        let b = ovoid_basis();
        assert_eq!(b.ovoids[0], duads(&[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]));
        // complement-XOR of all six ovoids is empty: their Veldkamp sum is the zero element
        let total = b.ovoids.iter().fold(0u64, |m, o| m ^ (!*o).bits());
        assert_eq!(total, 0);
        // the only dependence: no other nonempty subset sums to zero
        for subset in 1u8..63 {
            let s = (0..6)
                .filter(|i| subset >> i & 1 == 1)
                .fold(0u64, |m, i| m ^ (!b.ovoids[i]).bits());
            assert_ne!(s, 0, "subset {subset:06b}");
        }
        let nh = build_near_hexagon();
        for h in &b.basis {
            assert!(nh.is_geometric_hyperplane(h.points));
        }
    }

    #[test]
    fn ovoid_sums() {
        let gq = build_gq();
        let e = |i: u8| GqVector::from_element_set(1 << (i - 1));
        let sum2 = GqVector(e(1).0 ^ e(2).0).points();
        assert_eq!(sum2, gq.perp(crate::geometry::GqPoint(0)));
        let sum3 = GqVector(e(1).0 ^ e(2).0 ^ e(3).0).points();
        let grid = PointSet::from_points(
            15,
            (0..15).filter(|&k| {
                let d = Duad::from_index(k);
                (d.lo() <= 3) != (d.hi() <= 3)
            }),
        );
        assert_eq!(sum3, grid);
        assert_eq!(gq.classify_subset(sum3), QuadLabel::Grid);
        assert_eq!(GqVector(0).points(), PointSet::full(15));
        assert_eq!(e(6).points(), ovoid(6));
    }

    #[test]
    fn gq_vectors_are_the_31_hyperplanes() {
        let gq = build_gq();
        let mut seen = std::collections::HashSet::new();
        for v in 1u8..32 {
            let p = GqVector(v).points();
            assert!(gq.is_hyperplane(p));
            seen.insert(p);
        }
        assert_eq!(seen.len(), 31);
    }

    #[test]
    fn partition_sum_examples() {
        let p = |s: &[u8]| SetPartition::new(set(s), !set(s) & ALL_SIX).unwrap();
        assert_eq!(partition_sum(p(&[1]), p(&[2])).unwrap(), p(&[1, 2]));
        assert_eq!(partition_sum(p(&[1, 2, 3]), p(&[1, 2, 3])), Err(Error::ZeroSum));
        assert_eq!(partition_sum(p(&[5]), p(&[3])).unwrap().shape(), (4, 2));
        assert_eq!(SetPartition::all().count(), 31);
        assert_eq!(p(&[1, 2]).to_string(), "{12|3456}");
        assert!(SetPartition::new(set(&[1]), set(&[2])).is_err());
    }

    #[test]
    fn partition_sum_agrees_with_vector_sum() {
        for p1 in SetPartition::all() {
            for p2 in SetPartition::all() {
                let vs = p1.to_vector().0 ^ p2.to_vector().0;
                match partition_sum(p1, p2) {
                    Ok(s) => {
                        assert_ne!(p1, p2);
                        assert_eq!(s.to_vector().0, vs);
                        let pts = veldkamp_sum_points(p1.to_vector().points(), p2.to_vector().points()).unwrap();
                        assert_eq!(pts, s.to_vector().points());
                    }
                    Err(e) => {
                        assert_eq!(p1, p2);
                        assert_eq!(e, Error::ZeroSum);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_shapes_match_hyperplane_kinds() {
        let gq = build_gq();
        for p in SetPartition::all() {
            let label = gq.classify_subset(p.to_vector().points());
            let expected = match p.shape() {
                (5, 1) => QuadLabel::Ovoid,
                (4, 2) => QuadLabel::Perp,
                (3, 3) => QuadLabel::Grid,
                _ => unreachable!(),
            };
            assert_eq!(label, expected, "{p}");
        }
    }

    #[test]
    fn quadruple_validation() {
        assert!(Quadruple::new(set(&[1, 2, 3]), set(&[4, 5, 6]), 0, 0).is_ok());
        assert!(Quadruple::new(ALL_SIX, 0, 0, 0).is_err());
        assert!(Quadruple::new(set(&[1, 2]), set(&[2, 3]), set(&[4, 5, 6]), 0).is_err());
        assert!(Quadruple::new(set(&[1, 2]), set(&[3]), set(&[4, 5]), 0).is_err());
        assert_eq!(all_quadruples().count(), 4092);
    }

    #[test]
    fn deep_top_layer_when_c_and_d_empty() {
        let q = Quadruple::new(set(&[1, 2]), set(&[3, 4, 5, 6]), 0, 0).unwrap();
        let h = Hyperplane::from_id(hyperplane_from_quadruple(q));
        let [l1, l2, l3] = layer_slices(h.points);
        assert!(l1.is_full());
        assert_eq!(l2, l3);
        assert!(!l2.is_full());
    }

    #[test]
    fn four_to_one_and_count() {
        for q in all_quadruples() {
            let h = hyperplane_from_quadruple(q);
            for img in q.v4_images() {
                assert_eq!(hyperplane_from_quadruple(img), h);
            }
            assert_eq!(quadruple_from_hyperplane(h), q.canonical());
        }
        assert_eq!(hyperplanes_from_quadruples().len(), (4usize.pow(6) - 4) / 4);
    }

    #[test]
    fn basis_e1_inverts_layer_by_layer() {
        let q = quadruple_from_hyperplane(HyperplaneId::basis(1));
        // layers (deep, e1, e1): A u B = everything, A u C = {1}
        assert_eq!(q.parts(), [set(&[1]), set(&[2, 3, 4, 5, 6]), 0, 0]);
        assert_eq!(hyperplane_from_quadruple(q), HyperplaneId::basis(1));
    }

    #[test]
    fn type_census() {
        let mut counts = [0usize; 8];
        for v in 1..=1023u16 {
            counts[hyperplane_type(HyperplaneId(v)).index()] += 1;
            let q = quadruple_from_hyperplane(HyperplaneId(v));
            assert!(q.parts().iter().filter(|&&p| p == 0).count() <= 2);
        }
        assert_eq!(counts, [30, 45, 18, 270, 90, 120, 360, 90]);
        assert_eq!(counts.iter().sum::<usize>(), 1023);
        let h1 = Quadruple::new(set(&[1, 2, 3]), set(&[4, 5, 6]), 0, 0).unwrap();
        assert_eq!(hyperplane_type(hyperplane_from_quadruple(h1)), HyperplaneType::H1);
    }

    #[test]
    fn enumeration_matches_quadruples_and_predicate() {
        let nh = build_near_hexagon();
        let hs = enumerate_hyperplanes(&nh);
        assert_eq!(hs.len(), 1023);
        let gq = nh.gq();
        for h in &hs {
            assert!(nh.is_geometric_hyperplane(h.points));
            let layers = layer_slices(h.points);
            for l in layers {
                assert!(l.is_full() || gq.is_hyperplane(l));
            }
            let s01 = !(layers[0] ^ layers[1]);
            assert_eq!(s01, layers[2]);
        }
        let from_q: Vec<_> = hyperplanes_from_quadruples();
        let from_basis: Vec<_> = hs.iter().map(|h| h.id).collect();
        assert_eq!(from_q, from_basis);
    }

    #[test]
    fn sum_is_complement_of_symmetric_difference() {
        let space = HyperplaneSpace::build();
        for a in 1..=1023u16 {
            for b in (a + 1..=1023).step_by(7) {
                let s = veldkamp_sum_points(space.points(HyperplaneId(a)), space.points(HyperplaneId(b))).unwrap();
                assert_eq!(s, space.points(HyperplaneId(a ^ b)));
            }
        }
        let h = HyperplaneId(77);
        assert_eq!(veldkamp_sum(h, h), Err(Error::ZeroSum));
        assert_eq!(
            veldkamp_sum_points(space.points(h), space.points(h)),
            Err(Error::ZeroSum)
        );
    }

    #[test]
    fn line_counts() {
        assert_eq!(enumerate_veldkamp_lines().len(), 174_251);
        assert_eq!(lines_of_dimension(5).len(), 155);
        let idx = LineIndex::new(enumerate_veldkamp_lines());
        for (i, l) in idx.lines().iter().enumerate().step_by(101) {
            assert_eq!(idx.index_of(*l), i);
            let [a, b, c] = l.raw();
            assert_eq!(idx.index_through(c, a), i);
            assert_eq!(a ^ b, c);
        }
    }

    #[test]
    fn line_members_share_their_pairwise_intersections() {
        let space = HyperplaneSpace::build();
        for l in enumerate_veldkamp_lines().into_iter().step_by(13) {
            let [a, b, c] = l.ids().map(|h| space.points(h));
            assert_eq!(a & b, a & c);
            assert_eq!(a & b, b & c);
            assert_eq!(a & b, l.core(&space));
        }
    }

    #[test]
    fn id_range_checked() {
        assert!(HyperplaneId::new(0).is_err());
        assert!(HyperplaneId::new(1024).is_err());
        assert_eq!(HyperplaneId::new(1023).unwrap().0, 1023);
    }
}
