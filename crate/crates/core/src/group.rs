//! The automorphism group `S6 x S3` acting on points, hyperplanes and
//! Veldkamp lines.
//!
//! `S6` permutes the elements `1..6` underlying the duads, diagonally in all
//! three layers; `S3` permutes the layers. In cycle notation the layers are
//! written `7, 8, 9` for layers `0, 1, 2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{Duad, NearHexagon, NH_POINTS};
use crate::pointset::{bits_of, PointSet};
use crate::veldkamp::{GqVector, HyperplaneId, HyperplaneSpace, VeldkampLine, HYPERPLANE_COUNT};

pub const GROUP_ORDER: usize = 4320;
pub const S6_ORDER: usize = 720;
pub const S3_ORDER: usize = 6;

/// Images of `0..6` (element `k` of `{1..6}` is `k - 1`).
pub type Perm6 = [u8; 6];
/// Images of layers `0..3`.
pub type Perm3 = [u8; 3];

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub sigma6: Perm6,
    pub sigma3: Perm3,
    #[serde(skip, default = "identity_points")]
    point_perm: [u8; NH_POINTS],
}

fn identity_points() -> [u8; NH_POINTS] {
    std::array::from_fn(|i| i as u8)
}

impl GroupElement {
    pub fn new(sigma6: Perm6, sigma3: Perm3) -> Self {
        assert!(is_perm(&sigma6) && is_perm(&sigma3), "not a permutation");
        let point_perm = std::array::from_fn(|id| {
            let (layer, q) = (id / 15, id % 15);
            let d = Duad::from_index(q);
            let image = Duad::new(sigma6[d.lo() as usize - 1] + 1, sigma6[d.hi() as usize - 1] + 1)
                .expect("permutation maps duads to duads");
            (15 * sigma3[layer] as usize + image.index()) as u8
        });
        GroupElement {
            sigma6,
            sigma3,
            point_perm,
        }
    }

    pub fn identity() -> Self {
        Self::new([0, 1, 2, 3, 4, 5], [0, 1, 2])
    }

    /// Builds an element from disjoint cycles written with `1..6` for
    /// elements and `7..9` for layers, e.g. `&[&[1, 2, 3], &[7, 8]]`.
    pub fn from_cycles(cycles: &[&[u8]]) -> Self {
        let mut sigma6: Perm6 = [0, 1, 2, 3, 4, 5];
        let mut sigma3: Perm3 = [0, 1, 2];
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                match (a, b) {
                    (1..=6, 1..=6) => sigma6[a as usize - 1] = b - 1,
                    (7..=9, 7..=9) => sigma3[a as usize - 7] = b - 7,
                    _ => panic!("cycle mixes elements and layers: {cycle:?}"),
                }
            }
        }
        Self::new(sigma6, sigma3)
    }

    pub fn point_perm(&self) -> &[u8; NH_POINTS] {
        &self.point_perm
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        let sigma6 = other.sigma6.map(|i| self.sigma6[i as usize]);
        let sigma3 = other.sigma3.map(|i| self.sigma3[i as usize]);
        Self::new(sigma6, sigma3)
    }

    pub fn inverse(&self) -> GroupElement {
        let mut s6 = [0u8; 6];
        for (i, &j) in self.sigma6.iter().enumerate() {
            s6[j as usize] = i as u8;
        }
        let mut s3 = [0u8; 3];
        for (i, &j) in self.sigma3.iter().enumerate() {
            s3[j as usize] = i as u8;
        }
        Self::new(s6, s3)
    }

    #[inline]
    pub fn apply_point(&self, p: usize) -> usize {
        self.point_perm[p] as usize
    }

    pub fn apply_mask(&self, mask: u64) -> u64 {
        bits_of(mask).fold(0, |m, p| m | 1 << self.point_perm[p])
    }

    pub fn apply_set(&self, s: PointSet) -> PointSet {
        assert_eq!(s.width(), 45);
        PointSet::nh(self.apply_mask(s.bits()))
    }

    /// Image of a 15-point set under `sigma6` alone.
    pub fn apply_gq_mask(&self, mask: u64) -> u64 {
        bits_of(mask).fold(0, |m, q| m | 1 << (self.point_perm[q] % 15))
    }

    /// `(cycle type of sigma6, cycle type of sigma3)`, parts descending.
    pub fn cycle_type(&self) -> (Vec<u8>, Vec<u8>) {
        (cycle_type(&self.sigma6), cycle_type(&self.sigma3))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({})", self)
    }
}

impl fmt::Display for GroupElement {
    /// Cycle notation with layers as `7, 8, 9`; `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (perm, offset) in [(&self.sigma6[..], 1u8), (&self.sigma3[..], 7u8)] {
            let mut seen = vec![false; perm.len()];
            for start in 0..perm.len() {
                if seen[start] || perm[start] as usize == start {
                    continue;
                }
                let mut cyc = Vec::new();
                let mut x = start;
                while !seen[x] {
                    seen[x] = true;
                    cyc.push((x as u8 + offset).to_string());
                    x = perm[x] as usize;
                }
                out.push('(');
                out.push_str(&cyc.join(" "));
                out.push(')');
            }
        }
        if out.is_empty() {
            out.push_str("id");
        }
        f.write_str(&out)
    }
}

fn is_perm(p: &[u8]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// Cycle lengths of a permutation, longest first, fixed points included.
pub fn cycle_type(perm: &[u8]) -> Vec<u8> {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = perm[x] as usize;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

/// Number of permutations of `n` points with the given cycle type:
/// `n! / prod(k^m_k * m_k!)`.
pub fn symmetric_class_size(parts: &[u8]) -> usize {
    let n: usize = parts.iter().map(|&p| p as usize).sum();
    let mut denom = 1usize;
    for k in 1..=n {
        let m = parts.iter().filter(|&&p| p as usize == k).count();
        denom *= k.pow(m as u32) * factorial(m);
    }
    factorial(n) / denom
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// A conjugacy class of `S6 x S3`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConjClass {
    pub cycle_type6: Vec<u8>,
    pub cycle_type3: Vec<u8>,
    pub representative: GroupElement,
    pub size: usize,
}

impl ConjClass {
    pub fn label(&self) -> String {
        self.representative.to_string()
    }
}

/// Partitions of 6 in the order used for the class table.
pub const PARTITIONS_OF_6: [&[u8]; 11] = [
    &[1, 1, 1, 1, 1, 1],
    &[2, 1, 1, 1, 1],
    &[2, 2, 1, 1],
    &[2, 2, 2],
    &[3, 1, 1, 1],
    &[3, 3],
    &[4, 1, 1],
    &[4, 2],
    &[3, 2, 1],
    &[5, 1],
    &[6],
];

pub const PARTITIONS_OF_3: [&[u8]; 3] = [&[1, 1, 1], &[2, 1], &[3]];

/// Permutation with consecutive cycles of the given lengths on `0..n`.
fn perm_of_type(parts: &[u8]) -> Vec<u8> {
    let n: usize = parts.iter().map(|&p| p as usize).sum();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut start = 0usize;
    for &len in parts {
        let len = len as usize;
        for i in 0..len {
            perm[start + i] = (start + (i + 1) % len) as u8;
        }
        start += len;
    }
    perm
}

/// One representative per pair of cycle types, with consecutive cycles
/// (`(3,3)` gives `(1 2 3)(4 5 6)`), layer factor outermost.
pub fn conjugacy_class_reps() -> Vec<ConjClass> {
    let mut out = Vec::with_capacity(33);
    for p3 in PARTITIONS_OF_3 {
        for p6 in PARTITIONS_OF_6 {
            let s6: Perm6 = perm_of_type(p6).try_into().unwrap();
            let s3: Perm3 = perm_of_type(p3).try_into().unwrap();
            out.push(ConjClass {
                cycle_type6: p6.to_vec(),
                cycle_type3: p3.to_vec(),
                representative: GroupElement::new(s6, s3),
                size: symmetric_class_size(p6) * symmetric_class_size(p3),
            });
        }
    }
    out
}

/// Classes of `S6` alone (layer part trivial).
pub fn s6_class_reps() -> Vec<ConjClass> {
    conjugacy_class_reps().into_iter().take(PARTITIONS_OF_6.len()).collect()
}

/// The generators `(1 2)`, `(1 2 3 4 5 6)`, `(7 8)`, `(7 8 9)`.
pub fn generators() -> [GroupElement; 4] {
    [
        GroupElement::from_cycles(&[&[1, 2]]),
        GroupElement::from_cycles(&[&[1, 2, 3, 4, 5, 6]]),
        GroupElement::from_cycles(&[&[7, 8]]),
        GroupElement::from_cycles(&[&[7, 8, 9]]),
    ]
}

/// All 4320 elements with the induced action on hyperplane coordinates.
pub struct Group {
    elements: Vec<GroupElement>,
    index: HashMap<(Perm6, Perm3), usize>,
    /// `coord[g * 1024 + v]` is the image of vector `v` under element `g`.
    coord: Vec<u16>,
    generator_ids: Vec<usize>,
}

impl Group {
    /// Closure of [`generators`]; elements sorted by `(sigma6, sigma3)`.
    pub fn build(space: &HyperplaneSpace) -> Self {
        let gens = generators();
        let mut seen: HashSet<(Perm6, Perm3)> = HashSet::new();
        let id = GroupElement::identity();
        seen.insert((id.sigma6, id.sigma3));
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert((h.sigma6, h.sigma3)) {
                    queue.push_back(h);
                }
            }
            elements.push(g);
        }
        elements.sort_by_key(|g| (g.sigma6, g.sigma3));
        let index: HashMap<_, _> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| ((g.sigma6, g.sigma3), i))
            .collect();

        let mut coord = vec![0u16; elements.len() * 1024];
        for (gi, g) in elements.iter().enumerate() {
            let basis_images: [u16; 10] = std::array::from_fn(|k| {
                let image = g.apply_mask(space.mask(1 << k));
                space
                    .id_of_mask(image)
                    .expect("automorphisms map hyperplanes to hyperplanes")
            });
            let row = &mut coord[gi * 1024..(gi + 1) * 1024];
            for v in 1..1024usize {
                let low = v.trailing_zeros() as usize;
                row[v] = row[v & (v - 1)] ^ basis_images[low];
            }
        }
        let generator_ids = gens.iter().map(|g| index[&(g.sigma6, g.sigma3)]).collect();
        Group {
            elements,
            index,
            coord,
            generator_ids,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElement) -> usize {
        self.index[&(g.sigma6, g.sigma3)]
    }

    pub fn generator_ids(&self) -> &[usize] {
        &self.generator_ids
    }

    /// Image table of element `gi` on coordinate vectors `0..1024`.
    #[inline]
    pub fn coord_row(&self, gi: usize) -> &[u16] {
        &self.coord[gi * 1024..(gi + 1) * 1024]
    }

    pub fn act_on_hyperplane(&self, g: &GroupElement, h: HyperplaneId) -> HyperplaneId {
        HyperplaneId(self.coord_row(self.index_of(g))[h.0 as usize])
    }

    pub fn act_on_line(&self, g: &GroupElement, l: VeldkampLine) -> VeldkampLine {
        act_on_line_with(self.coord_row(self.index_of(g)), l)
    }

    pub fn hyperplane_orbit(&self, h: HyperplaneId) -> Vec<HyperplaneId> {
        let mut orbit: Vec<u16> = (0..self.order()).map(|gi| self.coord_row(gi)[h.0 as usize]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        orbit.into_iter().map(HyperplaneId).collect()
    }

    /// `|G| / |orbit of h|`.
    pub fn stabilizer_order(&self, h: HyperplaneId) -> usize {
        self.order() / self.hyperplane_orbit(h).len()
    }

    /// Orbits of the 1023 hyperplanes, each sorted, ordered by least member.
    pub fn hyperplane_orbits(&self) -> Vec<Vec<HyperplaneId>> {
        let mut done = vec![false; HYPERPLANE_COUNT + 1];
        let mut out = Vec::new();
        for v in 1..=HYPERPLANE_COUNT as u16 {
            if done[v as usize] {
                continue;
            }
            let orbit = self.hyperplane_orbit(HyperplaneId(v));
            for h in &orbit {
                done[h.0 as usize] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Checks that every element maps the 60 lines onto themselves.
    pub fn preserves_lines(&self, nh: &NearHexagon) -> bool {
        let lines: HashSet<u64> = nh.line_masks().iter().copied().collect();
        self.elements
            .iter()
            .all(|g| nh.line_masks().iter().all(|&m| lines.contains(&g.apply_mask(m))))
    }
}

#[inline]
pub(crate) fn act_on_line_with(row: &[u16], l: VeldkampLine) -> VeldkampLine {
    let mut ids = l.raw().map(|v| row[v as usize]);
    ids.sort_unstable();
    VeldkampLine::from_sorted_unchecked(ids)
}

/// Image of a GQ vector under the `S6` part of `g`.
pub fn act_on_gq_vector(g: &GroupElement, v: GqVector) -> GqVector {
    let image = g.apply_gq_mask(v.points().bits());
    (0..32u8)
        .map(GqVector)
        .find(|w| w.points().bits() == image)
        .expect("S6 permutes the GQ hyperplanes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_near_hexagon;
    use crate::veldkamp::{hyperplane_from_quadruple, hyperplane_type, Quadruple};

    fn setup() -> (NearHexagon, HyperplaneSpace, Group) {
        let nh = build_near_hexagon();
        let space = HyperplaneSpace::build();
        let group = Group::build(&space);
        (nh, space, group)
    }

    #[test]
    fn order_and_identity() {
        let (nh, _, g) = setup();
        assert_eq!(g.order(), 4320);
        assert_eq!(g.order(), S6_ORDER * S3_ORDER);
        let id = GroupElement::identity();
        assert!((0..45).all(|p| id.apply_point(p) == p));
        assert!(g.preserves_lines(&nh));
    }

    #[test]
    fn composition_matches_point_perms() {
        let (_, _, g) = setup();
        for (i, a) in g.elements().iter().enumerate().step_by(37) {
            for b in g.elements().iter().skip(i % 11).step_by(53) {
                let ab = a.compose(b);
                for p in 0..45 {
                    assert_eq!(ab.apply_point(p), a.apply_point(b.apply_point(p)));
                }
                assert_eq!(a.compose(&a.inverse()), GroupElement::identity());
            }
        }
    }

    #[test]
    fn class_table() {
        let classes = conjugacy_class_reps();
        assert_eq!(classes.len(), 33);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 4320);
        let size_of = |label: &str| classes.iter().find(|c| c.label() == label).unwrap().size;
        assert_eq!(size_of("(1 2)"), 15);
        assert_eq!(size_of("(7 8 9)"), 2);
        assert_eq!(size_of("(1 2 3 4 5)(7 8)"), 432);
        assert_eq!(classes[0].label(), "id");
        assert_eq!(classes[5].label(), "(1 2 3)(4 5 6)");
    }

    #[test]
    fn class_sizes_by_counting_cycle_types() {
        let (_, _, g) = setup();
        let mut counts: HashMap<(Vec<u8>, Vec<u8>), usize> = HashMap::new();
        for e in g.elements() {
            *counts.entry(e.cycle_type()).or_default() += 1;
        }
        assert_eq!(counts.len(), 33);
        for c in conjugacy_class_reps() {
            assert_eq!(
                counts[&(c.cycle_type6.clone(), c.cycle_type3.clone())],
                c.size,
                "{}",
                c.label()
            );
            assert_eq!(
                c.representative.cycle_type(),
                (c.cycle_type6.clone(), c.cycle_type3.clone())
            );
        }
    }

    #[test]
    fn coordinate_action_matches_point_action() {
        let (_, space, g) = setup();
        for gi in (0..g.order()).step_by(17) {
            let e = g.element(gi);
            let row = g.coord_row(gi);
            for v in 1..1024u16 {
                assert_eq!(space.mask(row[v as usize]), e.apply_mask(space.mask(v)));
            }
        }
    }

    #[test]
    fn action_on_quadruples_relabels_and_permutes_places() {
        let (_, _, g) = setup();
        let q = Quadruple::new(0b000_011, 0b001_100, 0b010_000, 0b100_000).unwrap();
        let h = hyperplane_from_quadruple(q);
        // (1 2 3): relabel elements inside each part
        let s = GroupElement::from_cycles(&[&[1, 2, 3]]);
        let relabel = |m: u8| {
            (0..6)
                .filter(|k| m >> k & 1 == 1)
                .fold(0u8, |acc, k| acc | 1 << s.sigma6[k])
        };
        let [a, b, c, d] = q.parts().map(relabel);
        assert_eq!(
            g.act_on_hyperplane(&s, h),
            hyperplane_from_quadruple(Quadruple::new(a, b, c, d).unwrap())
        );
        // a layer swap is a place permutation of the quadruple
        let t = GroupElement::from_cycles(&[&[8, 9]]);
        let [a, b, c, d] = q.parts();
        assert_eq!(
            g.act_on_hyperplane(&t, h),
            hyperplane_from_quadruple(Quadruple::new(a, b, d, c).unwrap())
        );
        assert_eq!(g.act_on_hyperplane(&GroupElement::identity(), h), h);
    }

    #[test]
    fn table1_orbits_and_stabilizers() {
        let (_, _, g) = setup();
        let orbits = g.hyperplane_orbits();
        assert_eq!(orbits.len(), 8);
        let mut by_type: Vec<(usize, usize, usize)> = orbits
            .iter()
            .map(|o| {
                let t = hyperplane_type(o[0]);
                assert!(o.iter().all(|&h| hyperplane_type(h) == t));
                (t.index(), o.len(), g.stabilizer_order(o[0]))
            })
            .collect();
        by_type.sort();
        let sizes: Vec<_> = by_type.iter().map(|t| t.1).collect();
        let stabs: Vec<_> = by_type.iter().map(|t| t.2).collect();
        assert_eq!(sizes, [30, 45, 18, 270, 90, 120, 360, 90]);
        assert_eq!(stabs, [144, 96, 240, 16, 48, 36, 12, 48]);
        let h1 = hyperplane_from_quadruple(Quadruple::new(0b000_111, 0b111_000, 0, 0).unwrap());
        assert_eq!(g.hyperplane_orbit(h1).len(), 30);
    }

    #[test]
    fn action_is_linear_and_closes_lines() {
        let (_, _, g) = setup();
        for gi in (0..g.order()).step_by(29) {
            let row = g.coord_row(gi);
            for a in (1..1024u16).step_by(7) {
                for b in (1..1024u16).step_by(31) {
                    assert_eq!(row[(a ^ b) as usize], row[a as usize] ^ row[b as usize]);
                }
            }
        }
        let l = VeldkampLine::through(HyperplaneId(3), HyperplaneId(100)).unwrap();
        for e in g.elements().iter().step_by(97) {
            let [x, y, z] = g.act_on_line(e, l).raw();
            assert_eq!(x ^ y, z);
        }
        assert_eq!(g.act_on_line(&GroupElement::identity(), l), l);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let e = GroupElement::from_cycles(&[&[1, 2, 3, 4], &[5, 6], &[7, 8, 9]]);
        assert_eq!(e.to_string(), "(1 2 3 4)(5 6)(7 8 9)");
        assert_eq!(symmetric_class_size(&[3, 2, 1]), 120);
        assert_eq!(symmetric_class_size(&[1, 1, 1, 1, 1, 1]), 1);
    }
}
