//! Fixed-width bit sets over the points of a quad (15) or of the whole
//! near hexagon (45).

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use serde::{Deserialize, Serialize};

/// Number of points of GQ(2,2).
pub const GQ_WIDTH: u8 = 15;
/// Number of points of the near hexagon.
pub const NH_WIDTH: u8 = 45;

pub(crate) const GQ_MASK: u64 = (1 << GQ_WIDTH) - 1;
pub(crate) const NH_MASK: u64 = (1 << NH_WIDTH) - 1;

/// A set of point ids `0..width`, stored as a bit mask.
///
/// Every set carries its width so that complements stay inside the
/// declared universe. Mixing widths in a binary operation is a bug and
/// panics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointSet {
    bits: u64,
    width: u8,
}

impl PointSet {
    pub fn new(bits: u64, width: u8) -> Self {
        assert!(width <= 64, "width {width} exceeds 64 bits");
        let full = full_mask(width);
        assert!(bits & !full == 0, "bits outside width {width}");
        PointSet { bits, width }
    }

    pub fn gq(bits: u64) -> Self {
        Self::new(bits, GQ_WIDTH)
    }

    pub fn nh(bits: u64) -> Self {
        Self::new(bits, NH_WIDTH)
    }

    pub fn empty(width: u8) -> Self {
        Self::new(0, width)
    }

    pub fn full(width: u8) -> Self {
        Self::new(full_mask(width), width)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(width: u8, points: I) -> Self {
        let mut bits = 0u64;
        for p in points {
            assert!(p < width as usize, "point {p} outside width {width}");
            bits |= 1 << p;
        }
        PointSet { bits, width }
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn width(self) -> u8 {
        self.width
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn is_full(self) -> bool {
        self.bits == full_mask(self.width)
    }

    #[inline]
    pub fn contains(self, p: usize) -> bool {
        p < self.width as usize && self.bits >> p & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: PointSet) -> bool {
        self.check_width(other);
        self.bits & !other.bits == 0
    }

    pub fn insert(&mut self, p: usize) {
        assert!(p < self.width as usize, "point {p} outside width {}", self.width);
        self.bits |= 1 << p;
    }

    pub fn iter(self) -> Points {
        Points(self.bits)
    }

    #[inline]
    fn check_width(self, other: PointSet) {
        assert_eq!(self.width, other.width, "point set width mismatch");
    }
}

#[inline]
pub(crate) fn full_mask(width: u8) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// Iterator over the members of a [`PointSet`] in increasing order.
#[derive(Clone, Debug)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

/// Iterate over the set bits of a raw mask.
#[inline]
pub(crate) fn bits_of(mask: u64) -> Points {
    Points(mask)
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        self.check_width(rhs);
        PointSet {
            bits: self.bits & rhs.bits,
            width: self.width,
        }
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        self.check_width(rhs);
        PointSet {
            bits: self.bits | rhs.bits,
            width: self.width,
        }
    }
}

impl BitXor for PointSet {
    type Output = PointSet;
    fn bitxor(self, rhs: PointSet) -> PointSet {
        self.check_width(rhs);
        PointSet {
            bits: self.bits ^ rhs.bits,
            width: self.width,
        }
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> PointSet {
        PointSet {
            bits: !self.bits & full_mask(self.width),
            width: self.width,
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[{}]", self.width)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_stays_in_width() {
        let s = PointSet::gq(0b101);
        let c = !s;
        assert_eq!(c.len(), 13);
        assert_eq!(c.bits() >> 15, 0);
        assert!((s | c).is_full());
        assert!((s & c).is_empty());
    }

    #[test]
    fn iteration_is_sorted() {
        let s = PointSet::from_points(45, [44, 3, 17]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 17, 44]);
        assert_eq!(s.iter().len(), 3);
    }

    #[test]
    #[should_panic(expected = "width mismatch")]
    fn mixed_widths_panic() {
        let _ = PointSet::gq(1) & PointSet::nh(1);
    }

    #[test]
    #[should_panic(expected = "outside width")]
    fn out_of_range_bits_rejected() {
        let _ = PointSet::gq(1 << 15);
    }
}
