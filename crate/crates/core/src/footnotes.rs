//! Geometric predicates that tell apart Veldkamp-line types sharing the
//! same core profile.
//!
//! Each [`Footnote`] applies to one family of cores (fixed point and line
//! counts, order histogram and quad shapes). The predicate is evaluated on
//! the core alone; its verdict names the table rows it points to.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Gq, GqPoint, NearHexagon, QuadLabel};
use crate::pointset::{PointSet, GQ_MASK};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Footnote {
    /// Two g-perp centres joined by a type-one line (25) or none (26).
    F1,
    /// The g-perp centre is on the type-one line through a triad centre (77) or not (76).
    F2,
    /// Triad centres joined by a type-one line (86) or not (87).
    F3,
    /// A g-perp line meets the type-one line through a triad centre (88) or not (89).
    F4,
    /// The type-one lines through the two triads cut a quad in an ovoid (114) or not (113).
    F5,
    /// A type-two line through the point meets the type-one line through the g-perp centre (120) or not (119).
    F6,
    /// Some triad holds, on type-one lines, the centres of the other two (133) or none does (134).
    F7,
    /// Triad centres joined by a type-one line (143) or not (144).
    F8,
    /// The point is on the type-one line through a centre of the tricentric triad (147) or not (148).
    F9,
    /// The point is on the type-one line through a unicentric triad centre (149) or not (150, 151).
    F10,
    /// The two triad centres lie in a common grid-quad (150) or not (151).
    F11,
    /// The type-one line through the triad centre hits the centre of the g-perp in the lower layer.
    Star,
    /// The point is on the type-one line through the centre of the triad in the lower layer.
    Dagger,
}

impl Footnote {
    pub const ALL: [Footnote; 13] = [
        Footnote::F1,
        Footnote::F2,
        Footnote::F3,
        Footnote::F4,
        Footnote::F5,
        Footnote::F6,
        Footnote::F7,
        Footnote::F8,
        Footnote::F9,
        Footnote::F10,
        Footnote::F11,
        Footnote::Star,
        Footnote::Dagger,
    ];

    pub fn tag(self) -> &'static str {
        use Footnote::*;
        match self {
            F1 => "1",
            F2 => "2",
            F3 => "3",
            F4 => "4",
            F5 => "5",
            F6 => "6",
            F7 => "7",
            F8 => "8",
            F9 => "9",
            F10 => "10",
            F11 => "11",
            Star => "star",
            Dagger => "dagger",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Footnote> {
        Footnote::ALL.into_iter().find(|f| f.tag() == tag)
    }

    /// Rows pointed to when the predicate holds and when it does not.
    pub fn rows(self) -> (&'static [u16], &'static [u16]) {
        use Footnote::*;
        match self {
            F1 => (&[25], &[26]),
            F2 => (&[77], &[76]),
            F3 => (&[86], &[87]),
            F4 => (&[88], &[89]),
            F5 => (&[114], &[113]),
            F6 => (&[120], &[119]),
            F7 => (&[133], &[134]),
            F8 => (&[143], &[144]),
            F9 => (&[147], &[148]),
            F10 => (&[149], &[150, 151]),
            F11 => (&[150], &[151]),
            Star => (&[50], &[50]),
            Dagger => (&[149], &[149]),
        }
    }

    /// Verdict of another footnote that selects the orbits this one splits.
    pub fn parent(self) -> Option<(Footnote, bool)> {
        match self {
            Footnote::F11 => Some((Footnote::F10, false)),
            Footnote::Dagger => Some((Footnote::F10, true)),
            _ => None,
        }
    }

    /// Core family the predicate is defined on.
    pub fn signature(self) -> CoreSignature {
        use Footnote::*;
        use QuadLabel::*;
        let sig = |pt, ln, orders, mut labels: [QuadLabel; 3]| {
            labels.sort_unstable();
            CoreSignature { pt, ln, orders, labels }
        };
        match self {
            F1 => sig(15, 9, [0, 6, 6, 3, 0], [GPerp, GPerp, GPerp]),
            F2 => sig(11, 4, [2, 6, 3, 0, 0], [GPerp, UniTriad, UniTriad]),
            F3 => sig(11, 3, [4, 6, 0, 1, 0], [UniTriad, GPerp, UniTriad]),
            F4 => sig(11, 3, [4, 5, 2, 0, 0], [GPerp, UniTriad, UniTriad]),
            F5 => sig(9, 2, [4, 4, 1, 0, 0], [Line, UniTriad, UniTriad]),
            F6 => sig(9, 2, [4, 4, 1, 0, 0], [SinglePoint, GPerp, UniTriad]),
            F7 => sig(9, 0, [9, 0, 0, 0, 0], [UniTriad, UniTriad, UniTriad]),
            F8 => sig(7, 1, [4, 3, 0, 0, 0], [UniTriad, UniTriad, SinglePoint]),
            F9 => sig(7, 0, [7, 0, 0, 0, 0], [TriTriad, SinglePoint, UniTriad]),
            F10 | F11 | Dagger => sig(7, 0, [7, 0, 0, 0, 0], [SinglePoint, UniTriad, UniTriad]),
            Star => sig(13, 6, [1, 6, 6, 0, 0], [GPerp, GPerp, UniTriad]),
        }
    }
}

impl fmt::Display for Footnote {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Footnote::Star => f.write_str("★"),
            Footnote::Dagger => f.write_str("†"),
            other => f.write_str(other.tag()),
        }
    }
}

/// The part of a core profile computable from the core point set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoreSignature {
    pub pt: u32,
    pub ln: u32,
    pub orders: [u32; 5],
    /// Sorted.
    pub labels: [QuadLabel; 3],
}

impl fmt::Display for CoreSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pt={} ln={} orders={:?} quads={}/{}/{}",
            self.pt, self.ln, self.orders, self.labels[0], self.labels[1], self.labels[2]
        )
    }
}

/// Outcome of a footnote predicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub footnote: Footnote,
    pub holds: bool,
    pub rows: &'static [u16],
}

/// A core split into its three layer slices.
struct CoreView<'a> {
    gq: &'a Gq,
    slices: [PointSet; 3],
    labels: [QuadLabel; 3],
}

impl<'a> CoreView<'a> {
    fn new(gq: &'a Gq, core: PointSet) -> Self {
        let slices = std::array::from_fn(|l| PointSet::gq(core.bits() >> (15 * l) & GQ_MASK));
        let labels = slices.map(|s| gq.classify_subset(s));
        CoreView { gq, slices, labels }
    }

    /// Layers carrying `label`, ascending.
    fn layers(&self, label: QuadLabel) -> Vec<usize> {
        (0..3).filter(|&l| self.labels[l] == label).collect()
    }

    fn one(&self, label: QuadLabel) -> usize {
        self.layers(label)[0]
    }

    fn unitr_center(&self, layer: usize) -> GqPoint {
        let c = self.gq.triad_centers(self.slices[layer]).expect("unicentric triad");
        GqPoint(c.iter().next().expect("one centre") as u8)
    }

    fn gperp_center(&self, layer: usize) -> GqPoint {
        self.gq.gperp_center(self.slices[layer]).expect("g-perp")
    }

    fn single_point(&self, layer: usize) -> GqPoint {
        GqPoint(self.slices[layer].iter().next().expect("one point") as u8)
    }

    fn has(&self, layer: usize, p: GqPoint) -> bool {
        self.slices[layer].contains(p.0 as usize)
    }
}

pub fn core_signature(nh: &NearHexagon, core: PointSet) -> CoreSignature {
    let mut orders = [0u32; 5];
    for p in core.iter() {
        orders[nh.point_order_unchecked(core.bits(), p) as usize] += 1;
    }
    let mut labels = CoreView::new(nh.gq(), core).labels;
    labels.sort_unstable();
    CoreSignature {
        pt: core.len() as u32,
        ln: nh.lines_inside(core) as u32,
        orders,
        labels,
    }
}

/// Evaluates `footnote` on a core from its family.
pub fn discriminate(nh: &NearHexagon, core: PointSet, footnote: Footnote) -> Result<Verdict> {
    let sig = core_signature(nh, core);
    if sig != footnote.signature() {
        return Err(Error::FootnoteMismatch {
            footnote: footnote.to_string(),
            profile: sig.to_string(),
        });
    }
    let gq = nh.gq();
    let v = CoreView::new(gq, core);
    use Footnote::*;
    use QuadLabel::*;
    let holds = match footnote {
        F1 => {
            let c: Vec<GqPoint> = (0..3).map(|l| v.gperp_center(l)).collect();
            c[0] == c[1] || c[0] == c[2] || c[1] == c[2]
        }
        F2 => {
            let g = v.gperp_center(v.one(GPerp));
            v.layers(UniTriad).iter().any(|&u| v.unitr_center(u) == g)
        }
        F3 | F8 => {
            let u = v.layers(UniTriad);
            v.unitr_center(u[0]) == v.unitr_center(u[1])
        }
        F4 => {
            let g = v.one(GPerp);
            v.layers(UniTriad).iter().any(|&u| v.has(g, v.unitr_center(u)))
        }
        F5 => {
            let u = v.layers(UniTriad);
            let shadow = v.slices[u[0]] | v.slices[u[1]];
            gq.classify_subset(shadow) == Ovoid
        }
        F6 => {
            let p = v.single_point(v.one(SinglePoint));
            let c = v.gperp_center(v.one(GPerp));
            p != c && gq.collinear(p, c)
        }
        F7 => (0..3).any(|i| (0..3).filter(|&j| j != i).all(|j| v.has(i, v.unitr_center(j)))),
        F9 => {
            let p = v.single_point(v.one(SinglePoint));
            let centers = gq.triad_centers(v.slices[v.one(TriTriad)]).expect("tricentric triad");
            centers.contains(p.0 as usize)
        }
        F10 => {
            let p = v.single_point(v.one(SinglePoint));
            v.layers(UniTriad).iter().any(|&u| v.unitr_center(u) == p)
        }
        F11 => {
            let u = v.layers(UniTriad);
            gq.collinear(v.unitr_center(u[0]), v.unitr_center(u[1]))
        }
        Star => {
            let c = v.unitr_center(v.one(UniTriad));
            v.gperp_center(v.layers(GPerp)[0]) == c
        }
        Dagger => {
            let p = v.single_point(v.one(SinglePoint));
            v.unitr_center(v.layers(UniTriad)[0]) == p
        }
    };
    let (yes, no) = footnote.rows();
    Ok(Verdict {
        footnote,
        holds,
        rows: if holds { yes } else { no },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_near_hexagon, Duad};

    fn q(a: u8, b: u8) -> usize {
        Duad::new(a, b).unwrap().index()
    }

    /// Layer 0 holds one point, layers 1 and 2 hold a triad each.
    fn point_and_two_triads(p: usize, t1: [usize; 3], t2: [usize; 3]) -> PointSet {
        let pts = std::iter::once(p).chain(t1.map(|x| 15 + x)).chain(t2.map(|x| 30 + x));
        PointSet::from_points(45, pts)
    }

    fn holds(core: PointSet, f: Footnote) -> bool {
        discriminate(&build_near_hexagon(), core, f).unwrap().holds
    }

    #[test]
    fn point_on_a_triad_centre() {
        let t1 = [q(1, 2), q(1, 3), q(1, 4)]; // centre 56
        let t2 = [q(1, 2), q(1, 3), q(1, 5)]; // centre 46
        let on_lower = point_and_two_triads(q(5, 6), t1, t2);
        let on_upper = point_and_two_triads(q(4, 6), t1, t2);
        let off = point_and_two_triads(q(2, 3), t1, t2);
        assert!(holds(on_lower, Footnote::F10));
        assert!(holds(on_upper, Footnote::F10));
        assert!(!holds(off, Footnote::F10));
        assert!(holds(on_lower, Footnote::Dagger));
        assert!(!holds(on_upper, Footnote::Dagger));
        let v = discriminate(&build_near_hexagon(), off, Footnote::F10).unwrap();
        assert_eq!(v.rows, &[150, 151]);
    }

    #[test]
    fn triad_centres_in_a_common_grid() {
        let t1 = [q(1, 2), q(1, 3), q(1, 4)]; // centre 56
        let apart = point_and_two_triads(q(2, 3), t1, [q(1, 2), q(1, 3), q(1, 5)]); // centre 46
        let joined = point_and_two_triads(q(2, 3), t1, [q(1, 2), q(1, 5), q(1, 6)]); // centre 34
        assert!(!holds(apart, Footnote::F11));
        assert!(holds(joined, Footnote::F11));
    }

    #[test]
    fn wrong_family_is_rejected() {
        let nh = build_near_hexagon();
        let grid = nh.gq().grids()[0];
        let core = PointSet::nh(grid | grid << 15 | grid << 30);
        for f in Footnote::ALL {
            let err = discriminate(&nh, core, f).unwrap_err();
            assert!(matches!(err, Error::FootnoteMismatch { .. }), "{f}");
        }
    }

    #[test]
    fn tags_round_trip() {
        for f in Footnote::ALL {
            assert_eq!(Footnote::from_tag(f.tag()), Some(f));
            let (yes, no) = f.rows();
            assert!(yes.iter().chain(no).all(|&r| (1..=156).contains(&r)));
        }
        assert_eq!(Footnote::from_tag("12"), None);
    }
}
