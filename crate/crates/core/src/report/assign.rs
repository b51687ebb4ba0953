//! Matching computed orbits to the expected rows of table 3.

use std::collections::BTreeSet;

use crate::classify::{profile_collisions, OrbitPartition};
use crate::context::Context;
use crate::footnotes::{discriminate, Footnote};
use crate::report::fixture::Table3Expected;

/// How a footnote predicate behaves on one orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FootnoteOutcome {
    pub footnote: Footnote,
    pub orbit: usize,
    pub holding: usize,
    pub size: usize,
}

impl FootnoteOutcome {
    pub fn is_constant(&self) -> bool {
        self.holding == 0 || self.holding == self.size
    }

    /// `Some(verdict)` when constant on the orbit.
    pub fn verdict(&self) -> Option<bool> {
        self.is_constant().then_some(self.holding == self.size)
    }

    fn token(&self) -> String {
        match self.verdict() {
            Some(true) => format!("fn{}=yes", self.footnote.tag()),
            Some(false) => format!("fn{}=no", self.footnote.tag()),
            None => format!("fn{}={}/{}", self.footnote.tag(), self.holding, self.size),
        }
    }
}

/// Line indices of every orbit.
pub fn orbit_members(partition: &OrbitPartition) -> Vec<Vec<u32>> {
    let mut members = vec![Vec::new(); partition.orbits.len()];
    for (i, &o) in partition.orbit_of.iter().enumerate() {
        members[o as usize].push(i as u32);
    }
    members
}

/// Evaluates `footnote` on every line of the orbit.
pub fn footnote_outcome(ctx: &Context, members: &[u32], orbit: usize, footnote: Footnote) -> Option<FootnoteOutcome> {
    let mut holding = 0;
    for &i in members {
        let core = ctx.lines.lines()[i as usize].core(&ctx.space);
        holding += discriminate(&ctx.nh, core, footnote).ok()?.holds as usize;
    }
    Some(FootnoteOutcome {
        footnote,
        orbit,
        holding,
        size: members.len(),
    })
}

/// Result of matching all orbits against the expected rows.
#[derive(Clone, Debug, Default)]
pub struct RowAssignment {
    /// Footnote outcomes gathered while matching, by orbit.
    pub outcomes: Vec<FootnoteOutcome>,
}

/// Fills in `table3_row` and `discriminator_note` on every orbit.
///
/// Orbits sharing a profile with several rows are narrowed by the notes on
/// those rows, in note order, as long as more than one candidate remains.
/// Split markers on the final row are evaluated for the annotation only.
pub fn assign_rows(ctx: &Context, partition: &mut OrbitPartition, rows: &[Table3Expected]) -> RowAssignment {
    let members = orbit_members(partition);
    let collisions = profile_collisions(&partition.orbits);
    let mut outcomes = Vec::new();
    for orbit in partition.orbits.iter_mut() {
        let key = orbit.profile.key();
        let mut candidates: Vec<&Table3Expected> = rows.iter().filter(|r| r.key == key).collect();
        let mut tokens = Vec::new();
        let tags: BTreeSet<Footnote> = candidates.iter().flat_map(|r| r.notes.iter().copied()).collect();
        for &f in tags.iter().filter(|f| !matches!(f, Footnote::Star | Footnote::Dagger)) {
            if candidates.len() < 2 || !candidates.iter().all(|r| r.notes.contains(&f)) {
                continue;
            }
            let Some(out) = footnote_outcome(ctx, &members[orbit.orbit_id], orbit.orbit_id, f) else {
                continue;
            };
            tokens.push(out.token());
            if let Some(v) = out.verdict() {
                let (yes, no) = f.rows();
                let allowed = if v { yes } else { no };
                candidates.retain(|r| allowed.contains(&r.row));
            }
            outcomes.push(out);
        }
        if let [row] = candidates[..] {
            for &f in row
                .notes
                .iter()
                .filter(|f| matches!(f, Footnote::Star | Footnote::Dagger))
            {
                if let Some(out) = footnote_outcome(ctx, &members[orbit.orbit_id], orbit.orbit_id, f) {
                    tokens.push(out.token());
                    outcomes.push(out);
                }
            }
            orbit.table3_row = Some(row.row);
        } else {
            orbit.table3_row = None;
        }
        if collisions.contains_key(&key) || !tokens.is_empty() {
            orbit.discriminator_note = Some(tokens.join(";"));
        }
    }
    RowAssignment { outcomes }
}

/// Orbits of the footnote's sibling group: those whose profile matches a row
/// the footnote points to.
pub fn sibling_orbits(partition: &OrbitPartition, rows: &[Table3Expected], footnote: Footnote) -> Vec<usize> {
    let (yes, no) = footnote.rows();
    let keys: BTreeSet<_> = rows
        .iter()
        .filter(|r| yes.contains(&r.row) || no.contains(&r.row))
        .map(|r| r.key)
        .collect();
    partition
        .orbits
        .iter()
        .filter(|o| keys.contains(&o.profile.key()))
        .map(|o| o.orbit_id)
        .collect()
}
