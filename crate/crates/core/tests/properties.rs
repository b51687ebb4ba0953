use std::sync::OnceLock;

use proptest::prelude::*;
use veldkamp_core::classify::{core_profile, enumerate_orbits, OrbitPartition};
use veldkamp_core::veldkamp::{
    hyperplane_from_quadruple, partition_sum, quadruple_from_hyperplane, veldkamp_sum, veldkamp_sum_points, GqVector,
    SetPartition,
};
use veldkamp_core::{Context, HyperplaneId, PointSet, VeldkampLine};

fn ctx() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(Context::build)
}

fn orbits() -> &'static OrbitPartition {
    static O: OnceLock<OrbitPartition> = OnceLock::new();
    O.get_or_init(|| enumerate_orbits(ctx()))
}

fn distinct_pair() -> impl Strategy<Value = (u16, u16)> {
    (1u16..=1023, 1u16..=1023).prop_filter("distinct", |(a, b)| a != b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sum_is_an_involution((a, b) in distinct_pair()) {
        let (ha, hb) = (HyperplaneId(a), HyperplaneId(b));
        prop_assert_eq!(veldkamp_sum(veldkamp_sum(ha, hb)?, hb)?, ha);
    }

    #[test]
    fn coordinate_sum_matches_point_sum((a, b) in distinct_pair()) {
        let space = &ctx().space;
        let s = veldkamp_sum_points(space.points(HyperplaneId(a)), space.points(HyperplaneId(b)))?;
        prop_assert_eq!(s.bits(), space.mask(a ^ b));
        prop_assert!(ctx().nh.is_geometric_hyperplane(s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn action_is_linear((a, b) in distinct_pair(), gi in 0usize..4320) {
        let row = ctx().group.coord_row(gi);
        prop_assert_eq!(row[(a ^ b) as usize], row[a as usize] ^ row[b as usize]);
    }

    #[test]
    fn action_matches_points(a in 1u16..=1023, gi in 0usize..4320) {
        let c = ctx();
        let g = c.group.element(gi);
        let image = c.group.act_on_hyperplane(g, HyperplaneId(a));
        prop_assert_eq!(g.apply_set(c.space.points(HyperplaneId(a))), c.space.points(image));
    }

    #[test]
    fn profile_is_invariant(orbit in 0usize..156, gi in 0usize..4320) {
        let c = ctx();
        let rep = orbits().orbits[orbit].representative;
        let g = c.group.element(gi);
        let image = c.group.act_on_line(g, rep);
        prop_assert_eq!(core_profile(c, image).key(), core_profile(c, rep).key());
        prop_assert_eq!(orbits().orbit_of[c.lines.index_of(image)] as usize, orbit);
    }

    #[test]
    fn core_is_equivariant((a, b) in distinct_pair(), gi in 0usize..4320) {
        let c = ctx();
        let l = VeldkampLine::through(HyperplaneId(a), HyperplaneId(b))?;
        let g = c.group.element(gi);
        prop_assert_eq!(c.group.act_on_line(g, l).core(&c.space), g.apply_set(l.core(&c.space)));
    }

    #[test]
    fn quadruple_round_trip(a in 1u16..=1023) {
        let h = HyperplaneId(a);
        let q = quadruple_from_hyperplane(h);
        prop_assert_eq!(hyperplane_from_quadruple(q), h);
        for image in q.v4_images() {
            prop_assert_eq!(hyperplane_from_quadruple(image), h);
        }
    }
}

#[test]
fn gq_sum_is_an_involution_exhaustively() {
    let sets: Vec<PointSet> = (1..32u8).map(|v| GqVector(v).points()).collect();
    for &x in &sets {
        for &y in sets.iter().filter(|&&y| y != x) {
            let s = veldkamp_sum_points(x, y).unwrap();
            assert_eq!(veldkamp_sum_points(s, y).unwrap(), x);
        }
    }
}

#[test]
fn partition_sum_agrees_on_all_pairs() {
    let parts: Vec<SetPartition> = SetPartition::all().collect();
    assert_eq!(parts.len(), 31);
    for &p in &parts {
        for &q in parts.iter().filter(|&&q| q != p) {
            let by_sets = partition_sum(p, q).unwrap().to_vector().points();
            let by_points = veldkamp_sum_points(p.to_vector().points(), q.to_vector().points()).unwrap();
            assert_eq!(by_sets, by_points, "{p} + {q}");
        }
        assert!(partition_sum(p, p).is_err());
    }
}
