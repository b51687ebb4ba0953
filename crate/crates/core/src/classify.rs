//! Orbits of Veldkamp lines: Burnside counts with the fixed / swapped /
//! rotated split, direct orbit enumeration, and core profiles.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::geometry::{NearHexagon, QuadLabel};
use crate::group::{act_on_gq_vector, act_on_line_with, conjugacy_class_reps, s6_class_reps, ConjClass, GroupElement};
use crate::pointset::{bits_of, PointSet, GQ_MASK};
use crate::veldkamp::{lines_of_dimension, GqVector, HyperplaneSpace, HyperplaneType, VeldkampLine, HYPERPLANE_COUNT};

/// Lines fixed setwise by a class representative, split by how the
/// element moves the three members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixDecomposition {
    pub class: String,
    pub size: usize,
    /// All three members fixed.
    pub fix1: u64,
    /// One member fixed, the other two swapped.
    pub fix2: u64,
    /// Members permuted in a 3-cycle.
    pub fix3: u64,
    /// Setwise-fixed lines found by scanning every line, per case.
    pub scanned: [u64; 3],
    /// Dimension of the fixed subspace of the coordinate action.
    pub fixed_dim: u32,
}

impl FixDecomposition {
    pub fn total(&self) -> u64 {
        self.fix1 + self.fix2 + self.fix3
    }

    pub fn product(&self) -> u64 {
        self.total() * self.size as u64
    }

    pub fn consistent(&self) -> bool {
        self.scanned == [self.fix1, self.fix2, self.fix3]
    }
}

/// Counts the lines fixed by `g` two ways: from the hyperplane action
/// alone, and by scanning every line.
pub fn fix_decomposition(ctx: &Context, class: &ConjClass) -> FixDecomposition {
    let row = ctx.group.coord_row(ctx.group.index_of(&class.representative));
    let fixed = (1..=HYPERPLANE_COUNT).filter(|&v| row[v] as usize == v).count() as u64;
    let fixed_dim = (fixed + 1).trailing_zeros();
    debug_assert_eq!(1u64 << fixed_dim, fixed + 1);
    let fix1 = (fixed * fixed.saturating_sub(1)) / 6;

    let mut swapped = 0u64;
    let mut rotated = 0u64;
    for v in 1..=HYPERPLANE_COUNT as u16 {
        let gv = row[v as usize];
        if gv == v {
            continue;
        }
        let ggv = row[gv as usize];
        if ggv == v {
            // {v, gv, v + gv} with v + gv fixed
            swapped += 1;
        } else if ggv == v ^ gv {
            rotated += 1;
        }
    }

    let mut scanned = [0u64; 3];
    for &l in ctx.lines.lines() {
        let ids = l.raw();
        let image = act_on_line_with(row, l);
        if image != l {
            continue;
        }
        let fixed_members = ids.iter().filter(|&&v| row[v as usize] == v).count();
        match fixed_members {
            3 => scanned[0] += 1,
            1 => scanned[1] += 1,
            0 => scanned[2] += 1,
            _ => unreachable!("a setwise-fixed triple cannot fix exactly two members"),
        }
    }

    FixDecomposition {
        class: class.label(),
        size: class.size,
        fix1,
        fix2: swapped / 2,
        fix3: rotated / 3,
        scanned,
        fixed_dim,
    }
}

/// The full class table, in class-representative order.
pub fn fix_table(ctx: &Context) -> Vec<FixDecomposition> {
    conjugacy_class_reps()
        .par_iter()
        .map(|c| fix_decomposition(ctx, c))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    GqHyperplanes,
    GqLines,
    NhHyperplanes,
    NhLines,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideCount {
    pub action: Action,
    /// Sum over classes of class size times fixed-point count.
    pub weighted_sum: u64,
    pub group_order: u64,
    pub orbits: u64,
}

/// Orbit count as the class-weighted average number of fixed points.
pub fn burnside_count(ctx: &Context, action: Action) -> BurnsideCount {
    let (classes, group_order) = match action {
        Action::GqHyperplanes | Action::GqLines => (s6_class_reps(), 720u64),
        Action::NhHyperplanes | Action::NhLines => (conjugacy_class_reps(), ctx.group.order() as u64),
    };
    let weighted_sum: u64 = classes
        .par_iter()
        .map(|c| c.size as u64 * fixed_points(ctx, action, &c.representative))
        .sum();
    assert_eq!(weighted_sum % group_order, 0, "Burnside sum not divisible by |G|");
    BurnsideCount {
        action,
        weighted_sum,
        group_order,
        orbits: weighted_sum / group_order,
    }
}

fn fixed_points(ctx: &Context, action: Action, g: &GroupElement) -> u64 {
    match action {
        Action::GqHyperplanes | Action::GqLines => {
            let table: Vec<u16> = (0..32u8).map(|v| act_on_gq_vector(g, GqVector(v)).0 as u16).collect();
            if action == Action::GqHyperplanes {
                (1..32).filter(|&v| table[v] as usize == v).count() as u64
            } else {
                lines_of_dimension(5)
                    .into_iter()
                    .filter(|&l| act_on_line_with(&table, l) == l)
                    .count() as u64
            }
        }
        Action::NhHyperplanes => {
            let row = ctx.group.coord_row(ctx.group.index_of(g));
            (1..=HYPERPLANE_COUNT).filter(|&v| row[v] as usize == v).count() as u64
        }
        Action::NhLines => {
            let class = ConjClass {
                cycle_type6: vec![],
                cycle_type3: vec![],
                representative: g.clone(),
                size: 1,
            };
            fix_decomposition(ctx, &class).total()
        }
    }
}

/// Points common to all three members of the line.
pub fn core_of_line(space: &HyperplaneSpace, l: VeldkampLine) -> PointSet {
    l.core(space)
}

/// Invariant fingerprint of a Veldkamp line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoreProfile {
    pub pt: u32,
    pub ln: u32,
    /// Core points of order 0..=4.
    pub orders: [u32; 5],
    /// Members of type H1..H8.
    pub composition: [u8; 8],
    /// Core intersected with layers 0, 1, 2.
    pub quad_labels: [QuadLabel; 3],
}

/// Profile with the quad labels as a sorted multiset; equal for all lines
/// of an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProfileKey {
    pub pt: u32,
    pub ln: u32,
    pub orders: [u32; 5],
    pub composition: [u8; 8],
    pub labels: [QuadLabel; 3],
}

impl CoreProfile {
    pub fn key(&self) -> ProfileKey {
        let mut labels = self.quad_labels;
        labels.sort_unstable();
        ProfileKey {
            pt: self.pt,
            ln: self.ln,
            orders: self.orders,
            composition: self.composition,
            labels,
        }
    }
}

impl fmt::Display for ProfileKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comp: Vec<String> = HyperplaneType::ALL
            .iter()
            .zip(self.composition)
            .filter(|(_, n)| *n > 0)
            .map(|(t, n)| format!("{n}{t}"))
            .collect();
        write!(
            f,
            "pt={} ln={} orders={:?} comp={} quads={}/{}/{}",
            self.pt,
            self.ln,
            self.orders,
            comp.join("+"),
            self.labels[0],
            self.labels[1],
            self.labels[2]
        )
    }
}

pub fn core_profile(ctx: &Context, l: VeldkampLine) -> CoreProfile {
    profile_of(&ctx.nh, &ctx.space, l)
}

pub(crate) fn profile_of(nh: &NearHexagon, space: &HyperplaneSpace, l: VeldkampLine) -> CoreProfile {
    let core = l.core_mask(space);
    let mut orders = [0u32; 5];
    for p in bits_of(core) {
        orders[nh.point_order_unchecked(core, p) as usize] += 1;
    }
    let ln = nh.line_masks().iter().filter(|&&m| m & core == m).count() as u32;
    let mut composition = [0u8; 8];
    for h in l.ids() {
        composition[space.kind(h).index()] += 1;
    }
    let quad_labels =
        std::array::from_fn(|layer| nh.gq().classify_subset(PointSet::gq(core >> (15 * layer) & GQ_MASK)));
    CoreProfile {
        pt: core.count_ones(),
        ln,
        orders,
        composition,
        quad_labels,
    }
}

/// One orbit of Veldkamp lines.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitRecord {
    pub orbit_id: usize,
    pub size: usize,
    pub profile: CoreProfile,
    /// Least line of the orbit.
    pub representative: VeldkampLine,
    pub table3_row: Option<u16>,
    pub discriminator_note: Option<String>,
}

/// Orbit membership of every line.
pub struct OrbitPartition {
    /// Orbit id per line index.
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<OrbitRecord>,
}

/// Partitions all lines into orbits by closing under the generators.
///
/// Orbits are numbered in the report order: descending point count, then
/// line count, then order histogram, then composition.
pub fn enumerate_orbits(ctx: &Context) -> OrbitPartition {
    let n = ctx.lines.len();
    let rows: Vec<&[u16]> = ctx
        .group
        .generator_ids()
        .iter()
        .map(|&g| ctx.group.coord_row(g))
        .collect();
    let mut raw_orbit = vec![u32::MAX; n];
    let mut firsts = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if raw_orbit[start] != u32::MAX {
            continue;
        }
        let id = firsts.len() as u32;
        raw_orbit[start] = id;
        stack.push(start);
        let mut size = 0usize;
        while let Some(i) = stack.pop() {
            size += 1;
            let l = ctx.lines.lines()[i];
            for row in &rows {
                let j = ctx.lines.index_of(act_on_line_with(row, l));
                if raw_orbit[j] == u32::MAX {
                    raw_orbit[j] = id;
                    stack.push(j);
                }
            }
        }
        firsts.push(start);
        sizes.push(size);
    }

    let mut records: Vec<OrbitRecord> = firsts
        .iter()
        .zip(&sizes)
        .map(|(&first, &size)| {
            let representative = ctx.lines.lines()[first];
            OrbitRecord {
                orbit_id: 0,
                size,
                profile: core_profile(ctx, representative),
                representative,
                table3_row: None,
                discriminator_note: None,
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| report_order(&records[a], &records[b]));
    let mut renumber = vec![0u32; records.len()];
    for (new, &old) in order.iter().enumerate() {
        renumber[old] = new as u32;
    }
    for (old, r) in records.iter_mut().enumerate() {
        r.orbit_id = renumber[old] as usize;
    }
    records.sort_by_key(|r| r.orbit_id);
    let orbit_of = raw_orbit.into_iter().map(|o| renumber[o as usize]).collect();
    OrbitPartition {
        orbit_of,
        orbits: records,
    }
}

fn report_order(a: &OrbitRecord, b: &OrbitRecord) -> std::cmp::Ordering {
    let (pa, pb) = (&a.profile, &b.profile);
    pb.pt
        .cmp(&pa.pt)
        .then(pb.ln.cmp(&pa.ln))
        .then(pb.orders.cmp(&pa.orders))
        .then(pb.composition.cmp(&pa.composition))
        .then(pa.key().labels.cmp(&pb.key().labels))
        .then(a.representative.cmp(&b.representative))
}

/// Profiles of every line, in line-index order.
pub fn all_profiles(ctx: &Context) -> Vec<CoreProfile> {
    ctx.lines.lines().par_iter().map(|&l| core_profile(ctx, l)).collect()
}

/// Orbit ids grouped by shared profile key; only groups with more than
/// one orbit are returned.
pub fn profile_collisions(orbits: &[OrbitRecord]) -> BTreeMap<ProfileKey, Vec<usize>> {
    let mut groups: BTreeMap<ProfileKey, Vec<usize>> = BTreeMap::new();
    for o in orbits {
        groups.entry(o.profile.key()).or_default().push(o.orbit_id);
    }
    groups.retain(|_, v| v.len() > 1);
    groups
}
