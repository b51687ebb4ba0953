//! Computed tables, their serialized forms, and comparison against the
//! embedded expected values.

pub mod assign;
pub mod fixture;
pub mod table;
pub mod verify;

use crate::classify::{
    burnside_count, core_profile, enumerate_orbits, profile_collisions, Action, BurnsideCount, FixDecomposition,
    OrbitPartition,
};
use crate::context::Context;
use crate::error::Result;
use crate::veldkamp::{HyperplaneId, HyperplaneType, VeldkampLine};

pub use assign::{assign_rows, RowAssignment};
pub use fixture::ExpectedFixture;
pub use table::{Cell, Format, ReportRow, ReportTable};

/// One row of the hyperplane-type summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSummary {
    pub kind: HyperplaneType,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    /// Group orbits among hyperplanes of this type; one when the type is a single orbit.
    pub orbits: usize,
}

pub fn type_summaries(ctx: &Context) -> Vec<TypeSummary> {
    let orbits = ctx.group.hyperplane_orbits();
    HyperplaneType::ALL
        .iter()
        .map(|&kind| {
            let of_kind: Vec<_> = orbits.iter().filter(|o| ctx.space.kind(o[0]) == kind).collect();
            let members: usize = of_kind.iter().map(|o| o.len()).sum();
            TypeSummary {
                kind,
                orbit_size: members,
                stabilizer_order: ctx.group.stabilizer_order(of_kind[0][0]),
                orbits: of_kind.len(),
            }
        })
        .collect()
}

/// Orbits with their expected-row assignment.
pub struct Classification {
    pub partition: OrbitPartition,
    pub assignment: RowAssignment,
}

impl Classification {
    pub fn run(ctx: &Context, fixture: &ExpectedFixture) -> Self {
        let mut partition = enumerate_orbits(ctx);
        let assignment = assign_rows(ctx, &mut partition, &fixture.table3);
        Classification { partition, assignment }
    }
}

fn paren_partition(p: &[u32]) -> String {
    let parts: Vec<String> = p.iter().map(u32::to_string).collect();
    format!("({})", parts.join(" "))
}

pub fn table1(summaries: &[TypeSummary]) -> ReportTable {
    let mut t = ReportTable::new(
        "table1",
        "Hyperplane types under S6 x S3",
        &["name", "partition", "orbit_size", "stabilizer_order"],
    );
    for s in summaries {
        t.push(vec![
            s.kind.name().into(),
            paren_partition(s.kind.partition()).into(),
            s.orbit_size.into(),
            s.stabilizer_order.into(),
        ]);
    }
    t.meta("hyperplanes", summaries.iter().map(|s| s.orbit_size).sum::<usize>());
    t
}

pub fn table2(fix: &[FixDecomposition]) -> ReportTable {
    let mut t = ReportTable::new(
        "table2",
        "Veldkamp lines fixed by each conjugacy class",
        &["class", "fix1", "fix2", "fix3", "size", "product"],
    );
    for d in fix {
        t.push(vec![
            d.class.as_str().into(),
            d.fix1.into(),
            d.fix2.into(),
            d.fix3.into(),
            d.size.into(),
            d.product().into(),
        ]);
    }
    let total: u64 = fix.iter().map(FixDecomposition::product).sum();
    let order: usize = fix.iter().map(|d| d.size).sum();
    t.push(vec![
        "total".into(),
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        order.into(),
        total.into(),
    ]);
    t.meta("group_order", order);
    t.meta("grand_total", total);
    t.meta("orbits", total / order.max(1) as u64);
    t
}

pub fn table3(partition: &OrbitPartition) -> ReportTable {
    let mut t = ReportTable::new(
        "table3",
        "Orbits of Veldkamp lines by core profile",
        &[
            "orbit",
            "row",
            "pt",
            "ln",
            "o0",
            "o1",
            "o2",
            "o3",
            "o4",
            "H1",
            "H2",
            "H3",
            "H4",
            "H5",
            "H6",
            "H7",
            "H8",
            "first",
            "second",
            "third",
            "size",
            "collision",
            "note",
        ],
    );
    let collisions = profile_collisions(&partition.orbits);
    let group_of = |id: usize| {
        collisions
            .values()
            .position(|ids| ids.contains(&id))
            .map(|g| format!("c{}", g + 1))
    };
    for o in &partition.orbits {
        let p = &o.profile;
        let mut cells: Vec<Cell> = vec![
            o.orbit_id.into(),
            o.table3_row.map(u64::from).into(),
            p.pt.into(),
            p.ln.into(),
        ];
        cells.extend(p.orders.iter().map(|&n| Cell::from(n)));
        cells.extend(p.composition.iter().map(|&n| Cell::from(n)));
        cells.extend(p.quad_labels.iter().map(|l| Cell::from(l.name())));
        cells.push(o.size.into());
        cells.push(group_of(o.orbit_id).into());
        cells.push(o.discriminator_note.clone().filter(|s| !s.is_empty()).into());
        t.push(cells);
    }
    let matched: std::collections::BTreeSet<u16> = partition.orbits.iter().filter_map(|o| o.table3_row).collect();
    t.meta("orbits", partition.orbits.len());
    t.meta("lines", partition.orbits.iter().map(|o| o.size).sum::<usize>());
    t.meta("rows_matched", matched.len());
    t.meta("collision_groups", collisions.len());
    t
}

pub fn burnside_table(counts: &[BurnsideCount]) -> ReportTable {
    let mut t = ReportTable::new(
        "burnside",
        "Orbit counts by averaging fixed points",
        &["action", "weighted_sum", "group_order", "orbits"],
    );
    for c in counts {
        let name = match c.action {
            Action::GqHyperplanes => "gq-hyperplanes",
            Action::GqLines => "gq-veldkamp-lines",
            Action::NhHyperplanes => "nh-hyperplanes",
            Action::NhLines => "nh-veldkamp-lines",
        };
        t.push(vec![
            name.into(),
            c.weighted_sum.into(),
            c.group_order.into(),
            c.orbits.into(),
        ]);
    }
    t
}

pub fn all_burnside_counts(ctx: &Context) -> Vec<BurnsideCount> {
    [
        Action::GqHyperplanes,
        Action::GqLines,
        Action::NhHyperplanes,
        Action::NhLines,
    ]
    .into_iter()
    .map(|a| burnside_count(ctx, a))
    .collect()
}

/// Collision groups and how their orbits were told apart.
pub fn classify_table(partition: &OrbitPartition, burnside_orbits: u64) -> ReportTable {
    let mut t = ReportTable::new(
        "classify",
        "Orbits sharing a core profile",
        &["collision", "orbit", "size", "row", "pt", "ln", "note"],
    );
    for (g, ids) in profile_collisions(&partition.orbits).values().enumerate() {
        for &id in ids {
            let o = &partition.orbits[id];
            t.push(vec![
                format!("c{}", g + 1).into(),
                id.into(),
                o.size.into(),
                o.table3_row.map(u64::from).into(),
                o.profile.pt.into(),
                o.profile.ln.into(),
                o.discriminator_note.clone().filter(|s| !s.is_empty()).into(),
            ]);
        }
    }
    t.meta("orbits", partition.orbits.len());
    t.meta("burnside_orbits", burnside_orbits);
    t.meta(
        "unmatched_orbits",
        partition.orbits.iter().filter(|o| o.table3_row.is_none()).count(),
    );
    t
}

/// The line through two hyperplanes and where it sits in the classification.
pub fn orbit_of(ctx: &Context, classification: &Classification, h1: u32, h2: u32) -> Result<ReportTable> {
    let line = VeldkampLine::through(HyperplaneId::new(h1)?, HyperplaneId::new(h2)?)?;
    let idx = ctx.lines.index_of(line);
    let orbit = &classification.partition.orbits[classification.partition.orbit_of[idx] as usize];
    let p = core_profile(ctx, line);
    let mut t = ReportTable::new(
        "orbit-of",
        "Veldkamp line",
        &[
            "h1", "h2", "h3", "types", "pt", "ln", "orders", "labels", "orbit", "size", "row",
        ],
    );
    let ids = line.ids();
    let types: Vec<&str> = ids.iter().map(|&h| ctx.space.kind(h).name()).collect();
    let orders: Vec<String> = p.orders.iter().map(u32::to_string).collect();
    let labels: Vec<&str> = p.quad_labels.iter().map(|l| l.name()).collect();
    t.push(vec![
        h1.into(),
        h2.into(),
        (h1 ^ h2).into(),
        types.join(" ").into(),
        p.pt.into(),
        p.ln.into(),
        orders.join(" ").into(),
        labels.join(" ").into(),
        orbit.orbit_id.into(),
        orbit.size.into(),
        orbit.table3_row.map(u64::from).into(),
    ]);
    Ok(t)
}
