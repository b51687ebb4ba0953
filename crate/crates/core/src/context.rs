use crate::geometry::{build_near_hexagon, NearHexagon};
use crate::group::Group;
use crate::veldkamp::{enumerate_veldkamp_lines, HyperplaneSpace, LineIndex};

/// Every structure the classification needs, built once.
pub struct Context {
    pub nh: NearHexagon,
    pub space: HyperplaneSpace,
    pub group: Group,
    pub lines: LineIndex,
}

impl Context {
    pub fn build() -> Self {
        let nh = build_near_hexagon();
        let space = HyperplaneSpace::build();
        let group = Group::build(&space);
        let lines = LineIndex::new(enumerate_veldkamp_lines());
        Context {
            nh,
            space,
            group,
            lines,
        }
    }
}
