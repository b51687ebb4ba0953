//! Compares computed quantities with the expected fixture, one named check
//! at a time, grouped by acceptance criterion.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::classify::{core_profile, Action, BurnsideCount, FixDecomposition};
use crate::context::Context;
use crate::footnotes::Footnote;
use crate::geometry::{QuadLabel, GQ_POINTS, NH_POINTS};
use crate::group::conjugacy_class_reps;
use crate::pointset::PointSet;
use crate::report::assign::{footnote_outcome, orbit_members, sibling_orbits};
use crate::report::table::{check_schema, Format, ReportTable};
use crate::report::{
    all_burnside_counts, classify_table, table1, table2, table3, type_summaries, Cell, Classification, ExpectedFixture,
    TypeSummary,
};
use crate::veldkamp::{
    all_quadruples, enumerate_hyperplanes, hyperplanes_from_quadruples, partition_sum, veldkamp_sum,
    veldkamp_sum_points, GqVector, HyperplaneId, SetPartition, HYPERPLANE_COUNT,
};

pub const CRITERIA: u8 = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    /// Acceptance criterion 1..=10, or 0 for report-format checks.
    pub criterion: u8,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Debug>(criterion: u8, name: impl Into<String>, expected: T, actual: T) -> Self {
        Check {
            criterion,
            name: name.into(),
            passed: expected == actual,
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
        }
    }

    fn holds(criterion: u8, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Check {
            criterion,
            name: name.into(),
            expected: "ok".into(),
            actual: if ok { "ok".into() } else { detail },
            passed: ok,
        }
    }
}

/// Shared, lazily computed inputs for the checks.
pub struct Verifier<'a> {
    pub ctx: &'a Context,
    pub fixture: &'a ExpectedFixture,
    types: OnceLock<Vec<TypeSummary>>,
    fix: OnceLock<Vec<FixDecomposition>>,
    burnside: OnceLock<Vec<BurnsideCount>>,
    classification: OnceLock<Classification>,
    members: OnceLock<Vec<Vec<u32>>>,
}

impl<'a> Verifier<'a> {
    pub fn new(ctx: &'a Context, fixture: &'a ExpectedFixture) -> Self {
        Verifier {
            ctx,
            fixture,
            types: OnceLock::new(),
            fix: OnceLock::new(),
            burnside: OnceLock::new(),
            classification: OnceLock::new(),
            members: OnceLock::new(),
        }
    }

    pub fn types(&self) -> &[TypeSummary] {
        self.types.get_or_init(|| type_summaries(self.ctx))
    }

    pub fn fix_table(&self) -> &[FixDecomposition] {
        self.fix.get_or_init(|| crate::classify::fix_table(self.ctx))
    }

    pub fn burnside(&self) -> &[BurnsideCount] {
        self.burnside.get_or_init(|| all_burnside_counts(self.ctx))
    }

    pub fn classification(&self) -> &Classification {
        self.classification
            .get_or_init(|| Classification::run(self.ctx, self.fixture))
    }

    fn members(&self) -> &[Vec<u32>] {
        self.members
            .get_or_init(|| orbit_members(&self.classification().partition))
    }

    fn burnside_orbits(&self, action: Action) -> u64 {
        self.burnside()
            .iter()
            .find(|b| b.action == action)
            .map_or(0, |b| b.orbits)
    }

    /// Checks for one criterion; 0 gives the report-format checks.
    pub fn criterion(&self, n: u8) -> Vec<Check> {
        match n {
            0 => self.report_format(),
            1 => self.structure(),
            2 => self.hyperplane_census(),
            3 => self.gq_census(),
            4 => self.hyperplane_types(),
            5 => self.group_classes(),
            6 => self.fixed_lines(),
            7 => self.orbit_counts(),
            8 => self.profiles(),
            9 => self.properties(),
            10 => self.footnotes(),
            _ => Vec::new(),
        }
    }

    pub fn run_all(&self) -> VerifyReport {
        VerifyReport {
            checks: (0..=CRITERIA).flat_map(|n| self.criterion(n)).collect(),
        }
    }

    fn c(&self, name: &str) -> u64 {
        self.fixture.constant(name)
    }

    fn structure(&self) -> Vec<Check> {
        let gq = self.ctx.nh.gq();
        let nh = &self.ctx.nh;
        let per_point = |masks: &[u64], n: usize| -> Vec<u64> {
            let mut counts: Vec<u64> = (0..n)
                .map(|p| masks.iter().filter(|&&m| m >> p & 1 == 1).count() as u64)
                .collect();
            counts.sort_unstable();
            counts.dedup();
            counts
        };
        vec![
            Check::eq(1, "gq_points", self.c("gq_points"), GQ_POINTS as u64),
            Check::eq(1, "gq_lines", self.c("gq_lines"), gq.line_masks().len() as u64),
            Check::eq(
                1,
                "gq_lines_per_point",
                vec![self.c("gq_lines_per_point")],
                per_point(gq.line_masks(), GQ_POINTS),
            ),
            Check::eq(1, "nh_points", self.c("nh_points"), NH_POINTS as u64),
            Check::eq(1, "nh_lines", self.c("nh_lines"), nh.line_masks().len() as u64),
            Check::eq(
                1,
                "nh_lines_per_point",
                vec![self.c("nh_lines_per_point")],
                per_point(nh.line_masks(), NH_POINTS),
            ),
        ]
    }

    fn hyperplane_census(&self) -> Vec<Check> {
        let nh = &self.ctx.nh;
        let spans = enumerate_hyperplanes(nh);
        let passing = spans.iter().filter(|h| nh.is_geometric_hyperplane(h.points)).count() as u64;
        let from_quads: Vec<u16> = hyperplanes_from_quadruples().iter().map(|h| h.0).collect();
        let from_spans: Vec<u16> = spans.iter().map(|h| h.id.0).collect();
        let quads = all_quadruples().count() as u64;
        vec![
            Check::eq(2, "spans_passing_predicate", self.c("hyperplanes"), passing),
            Check::eq(2, "quadruple_image_equals_spans", from_spans.clone(), from_quads),
            Check::eq(2, "ordered_quadruples", 4u64.pow(6) - 4, quads),
            Check::eq(2, "quadruples_per_hyperplane", self.c("hyperplanes"), quads / 4),
        ]
    }

    fn gq_census(&self) -> Vec<Check> {
        let gq = self.ctx.nh.gq();
        let exhaustive = (0..1u64 << GQ_POINTS)
            .filter(|&m| gq.is_hyperplane(PointSet::gq(m)))
            .count() as u64;
        let mut labels: BTreeMap<QuadLabel, u64> = BTreeMap::new();
        for v in 1..32u8 {
            let pts = GqVector(v).points();
            if gq.is_hyperplane(pts) {
                *labels.entry(gq.classify_subset(pts)).or_default() += 1;
            }
        }
        let count = |l| labels.get(&l).copied().unwrap_or(0);
        vec![
            Check::eq(3, "gq_hyperplanes_exhaustive", self.c("gq_hyperplanes"), exhaustive),
            Check::eq(
                3,
                "gq_hyperplanes_from_vectors",
                self.c("gq_hyperplanes"),
                labels.values().sum(),
            ),
            Check::eq(3, "gq_perps", self.c("gq_perps"), count(QuadLabel::Perp)),
            Check::eq(3, "gq_grids", self.c("gq_grids"), count(QuadLabel::Grid)),
            Check::eq(3, "gq_ovoids", self.c("gq_ovoids"), count(QuadLabel::Ovoid)),
        ]
    }

    fn hyperplane_types(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let order = self.c("group_order") as usize;
        for (want, got) in self.fixture.table1.iter().zip(self.types()) {
            let n = &want.name;
            out.push(Check::eq(4, format!("{n}_name"), n.as_str(), got.kind.name()));
            out.push(Check::eq(
                4,
                format!("{n}_partition"),
                want.partition.as_slice(),
                got.kind.partition(),
            ));
            out.push(Check::eq(4, format!("{n}_single_orbit"), 1, got.orbits));
            out.push(Check::eq(4, format!("{n}_orbit_size"), want.orbit_size, got.orbit_size));
            out.push(Check::eq(
                4,
                format!("{n}_stabilizer_order"),
                want.stabilizer_order,
                got.stabilizer_order,
            ));
            out.push(Check::eq(
                4,
                format!("{n}_orbit_times_stabilizer"),
                order,
                got.orbit_size * got.stabilizer_order,
            ));
        }
        out.push(Check::eq(4, "rows", self.fixture.table1.len(), self.types().len()));
        out.push(Check::eq(
            4,
            "orbit_sizes_sum",
            self.c("hyperplanes") as usize,
            self.types().iter().map(|t| t.orbit_size).sum(),
        ));
        out
    }

    fn group_classes(&self) -> Vec<Check> {
        let group = &self.ctx.group;
        let reps = conjugacy_class_reps();
        let mut by_type: BTreeMap<(Vec<u8>, Vec<u8>), usize> = BTreeMap::new();
        for g in group.elements() {
            *by_type.entry(g.cycle_type()).or_default() += 1;
        }
        let mut out = vec![
            Check::eq(5, "group_order", self.c("group_order") as usize, group.order()),
            Check::eq(5, "classes", self.c("classes") as usize, reps.len()),
            Check::eq(5, "cycle_types_present", self.c("classes") as usize, by_type.len()),
        ];
        for want in &self.fixture.table2 {
            let rep = reps.iter().find(|c| c.label() == want.class);
            let counted = rep.and_then(|c| by_type.get(&c.representative.cycle_type()).copied());
            out.push(Check::eq(
                5,
                format!("size {}", want.class),
                Some(want.size),
                rep.map(|c| c.size),
            ));
            out.push(Check::eq(
                5,
                format!("counted {}", want.class),
                Some(want.size),
                counted,
            ));
        }
        out.push(Check::eq(
            5,
            "class_sizes_sum",
            self.c("group_order") as usize,
            reps.iter().map(|c| c.size).sum(),
        ));
        out
    }

    fn fixed_lines(&self) -> Vec<Check> {
        let fix = self.fix_table();
        let mut out = Vec::new();
        for want in &self.fixture.table2 {
            let got = fix.iter().find(|d| d.class == want.class);
            let c = &want.class;
            out.push(Check::eq(
                6,
                format!("fix {c}"),
                Some(want.fix),
                got.map(|d| [d.fix1, d.fix2, d.fix3]),
            ));
            out.push(Check::eq(
                6,
                format!("product {c}"),
                Some(want.product),
                got.map(FixDecomposition::product),
            ));
            out.push(Check::holds(
                6,
                format!("scan agrees {c}"),
                got.is_some_and(FixDecomposition::consistent),
                format!("{:?}", got.map(|d| d.scanned)),
            ));
        }
        let total: u64 = fix.iter().map(FixDecomposition::product).sum();
        let order = self.c("group_order");
        out.push(Check::eq(6, "grand_total", self.c("grand_total"), total));
        out.push(Check::eq(
            6,
            "grand_total_over_order",
            self.c("orbits"),
            total / order.max(1),
        ));
        out.push(Check::eq(6, "grand_total_divisible", 0, total % order.max(1)));
        out
    }

    fn orbit_counts(&self) -> Vec<Check> {
        let p = &self.classification().partition;
        let sizes: usize = p.orbits.iter().map(|o| o.size).sum();
        let lines = self.burnside_orbits(Action::NhLines);
        vec![
            Check::eq(7, "orbits_enumerated", self.c("orbits"), p.orbits.len() as u64),
            Check::eq(7, "orbit_sizes_sum", self.c("veldkamp_lines"), sizes as u64),
            Check::eq(7, "enumeration_equals_burnside", p.orbits.len() as u64, lines),
            Check::eq(7, "burnside_nh_lines", self.c("orbits"), lines),
            Check::eq(
                7,
                "burnside_gq_hyperplanes",
                self.c("gq_hyperplane_orbits"),
                self.burnside_orbits(Action::GqHyperplanes),
            ),
            Check::eq(
                7,
                "burnside_gq_lines",
                self.c("gq_line_orbits"),
                self.burnside_orbits(Action::GqLines),
            ),
            Check::eq(
                7,
                "burnside_nh_hyperplanes",
                self.c("nh_hyperplane_orbits"),
                self.burnside_orbits(Action::NhHyperplanes),
            ),
        ]
    }

    fn profiles(&self) -> Vec<Check> {
        let p = &self.classification().partition;
        let mut out = vec![
            Check::eq(8, "orbits", self.c("orbits"), p.orbits.len() as u64),
            Check::eq(
                8,
                "unmatched_orbits",
                Vec::<usize>::new(),
                p.orbits
                    .iter()
                    .filter(|o| o.table3_row.is_none())
                    .map(|o| o.orbit_id)
                    .collect(),
            ),
        ];
        for row in &self.fixture.table3 {
            let realised: Vec<_> = p.orbits.iter().filter(|o| o.table3_row == Some(row.row)).collect();
            let mut check = Check::eq(8, format!("row {} orbits", row.row), row.multiplicity(), realised.len());
            if realised.is_empty() {
                if let Some(near) = nearest_orbit(p, row) {
                    check.actual = format!("0 (nearest: orbit {} with {})", near.orbit_id, near.profile.key());
                }
            }
            out.push(check);
        }
        for spot in [1u16, 38, 99, 156] {
            let want = self.fixture.table3_row(spot).map(|r| r.key);
            let got: Vec<_> = p
                .orbits
                .iter()
                .filter(|o| o.table3_row == Some(spot))
                .map(|o| o.profile.key())
                .collect();
            out.push(Check::eq(
                8,
                format!("spot row {spot}"),
                want.into_iter().collect::<Vec<_>>(),
                got,
            ));
        }
        out
    }

    fn properties(&self) -> Vec<Check> {
        let ctx = self.ctx;
        let mut rng = StdRng::seed_from_u64(0x5eed_0009);

        let mut bad_pairs = Vec::new();
        for _ in 0..10_000 {
            let a = rng.gen_range(1..=HYPERPLANE_COUNT as u16);
            let mut b = rng.gen_range(1..=HYPERPLANE_COUNT as u16);
            while b == a {
                b = rng.gen_range(1..=HYPERPLANE_COUNT as u16);
            }
            let (ha, hb) = (HyperplaneId(a), HyperplaneId(b));
            let back = veldkamp_sum(ha, hb).and_then(|s| veldkamp_sum(s, hb));
            let pts = veldkamp_sum_points(ctx.space.points(ha), ctx.space.points(hb));
            let agrees = pts.ok().map(|s| s.bits()) == Some(ctx.space.mask(a ^ b));
            if back != Ok(ha) || !agrees {
                bad_pairs.push((a, b));
            }
        }

        let gq_sets: Vec<PointSet> = (1..32u8).map(|v| GqVector(v).points()).collect();
        let mut gq_bad = 0;
        for &x in &gq_sets {
            for &y in gq_sets.iter().filter(|&&y| y != x) {
                let back = veldkamp_sum_points(x, y).and_then(|s| veldkamp_sum_points(s, y));
                gq_bad += (back != Ok(x)) as usize;
            }
        }

        let parts: Vec<SetPartition> = SetPartition::all().collect();
        let mut sum_bad = 0;
        for &p in &parts {
            for &q in parts.iter().filter(|&&q| q != p) {
                let by_sets = partition_sum(p, q).map(|s| s.to_vector().points());
                let by_points = veldkamp_sum_points(p.to_vector().points(), q.to_vector().points());
                sum_bad += (by_sets != by_points) as usize;
            }
        }

        let mut invariance_bad = 0;
        let mut equivariance_bad = 0;
        let mut samples = 0;
        for o in &self.classification().partition.orbits {
            let key = o.profile.key();
            let core = o.representative.core(&ctx.space);
            for _ in 0..100 {
                let g = ctx.group.element(rng.gen_range(0..ctx.group.order()));
                let image = ctx.group.act_on_line(g, o.representative);
                invariance_bad += (core_profile(ctx, image).key() != key) as usize;
                equivariance_bad += (image.core(&ctx.space) != g.apply_set(core)) as usize;
                samples += 1;
            }
        }

        vec![
            Check::eq(9, "involution_random_pairs", Vec::<(u16, u16)>::new(), bad_pairs),
            Check::eq(9, "involution_gq_exhaustive", 0, gq_bad),
            Check::eq(9, "partition_sum_matches_veldkamp_sum", 0, sum_bad),
            Check::eq(9, "profile_invariance", 0, invariance_bad),
            Check::eq(9, "core_equivariance", 0, equivariance_bad),
            Check::eq(
                9,
                "invariance_samples",
                100 * self.classification().partition.orbits.len(),
                samples,
            ),
        ]
    }

    fn footnotes(&self) -> Vec<Check> {
        let p = &self.classification().partition;
        let rows = &self.fixture.table3;
        let mut out = Vec::new();
        for f in Footnote::ALL {
            let mut siblings = sibling_orbits(p, rows, f);
            if let Some((parent, verdict)) = f.parent() {
                siblings.retain(|&o| {
                    footnote_outcome(self.ctx, &self.members()[o], o, parent).and_then(|x| x.verdict()) == Some(verdict)
                });
            }
            let outcomes: Vec<_> = siblings
                .iter()
                .filter_map(|&o| footnote_outcome(self.ctx, &self.members()[o], o, f))
                .collect();
            let varying: Vec<String> = outcomes
                .iter()
                .filter(|o| !o.is_constant())
                .map(|o| format!("orbit {} holds on {}/{}", o.orbit, o.holding, o.size))
                .collect();
            out.push(Check::holds(
                10,
                format!("fn{} constant on orbits", f.tag()),
                varying.is_empty() && outcomes.len() == siblings.len(),
                varying.join("; "),
            ));
            let (yes, no) = f.rows();
            let want = if matches!(f, Footnote::Star | Footnote::Dagger) {
                // the marked row stands for two orbits, one on each side
                (1, 1)
            } else {
                (yes.len(), no.len())
            };
            let got = (
                outcomes.iter().filter(|o| o.verdict() == Some(true)).count(),
                outcomes.iter().filter(|o| o.verdict() == Some(false)).count(),
            );
            out.push(Check::eq(10, format!("fn{} separates holds/fails", f.tag()), want, got));
        }
        out
    }

    fn report_format(&self) -> Vec<Check> {
        let p = &self.classification().partition;
        let tables: Vec<ReportTable> = vec![
            table1(self.types()),
            table2(self.fix_table()),
            table3(p),
            classify_table(p, self.burnside_orbits(Action::NhLines)),
        ];
        let mut out = Vec::new();
        for t in &tables {
            let rendered = t.render(Format::Json);
            let result = serde_json::from_str(&rendered)
                .map_err(|e| e.to_string())
                .and_then(|doc| check_schema(&doc, t));
            out.push(Check::holds(
                0,
                format!("{} json schema", t.name),
                result.is_ok(),
                result.err().unwrap_or_default(),
            ));
            let again = match t.name {
                "table1" => table1(&type_summaries(self.ctx)),
                "table2" => table2(self.fix_table()),
                "table3" => table3(p),
                _ => t.clone(),
            };
            let stable = [Format::Text, Format::Csv, Format::Json]
                .iter()
                .all(|&f| again.render(f) == t.render(f));
            out.push(Check::holds(
                0,
                format!("{} deterministic", t.name),
                stable,
                "renderings differ",
            ));
        }
        out
    }
}

/// Orbit whose profile differs least from an expected row with no match.
fn nearest_orbit<'p>(
    p: &'p crate::classify::OrbitPartition,
    row: &crate::report::fixture::Table3Expected,
) -> Option<&'p crate::classify::OrbitRecord> {
    p.orbits.iter().filter(|o| o.table3_row.is_none()).min_by_key(|o| {
        let k = o.profile.key();
        let w = &row.key;
        let d = |a: u32, b: u32| a.abs_diff(b);
        d(k.pt, w.pt) * 100
            + d(k.ln, w.ln) * 100
            + k.orders.iter().zip(w.orders).map(|(&a, b)| d(a, b)).sum::<u32>()
            + k.composition
                .iter()
                .zip(w.composition)
                .map(|(&a, b)| d(a as u32, b as u32) * 10)
                .sum::<u32>()
            + k.labels.iter().zip(w.labels).filter(|(a, b)| *a != b).count() as u32 * 10
    })
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn criterion_passed(&self, n: u8) -> bool {
        self.checks.iter().filter(|c| c.criterion == n).all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn table(&self) -> ReportTable {
        let mut t = ReportTable::new(
            "verify",
            "Verification against expected values",
            &["criterion", "check", "status", "expected", "actual"],
        );
        for c in &self.checks {
            let (expected, actual) = if c.passed {
                (Cell::Empty, Cell::Empty)
            } else {
                (sanitize(&c.expected), sanitize(&c.actual))
            };
            t.push(vec![
                if c.criterion == 0 {
                    Cell::from("format")
                } else {
                    Cell::from(c.criterion)
                },
                c.name.as_str().into(),
                if c.passed { "PASS" } else { "FAIL" }.into(),
                expected,
                actual,
            ]);
        }
        t.meta("checks", self.checks.len());
        t.meta("failed", self.failures().count());
        t.meta("status", if self.passed() { "PASS" } else { "FAIL" });
        t
    }
}

/// Keeps diff text free of CSV separators.
fn sanitize(s: &str) -> Cell {
    Cell::Text(s.replace(", ", " ").replace(',', " ").replace('"', ""))
}

/// Convenience for one-shot use.
pub fn verify(ctx: &Context, fixture: &ExpectedFixture) -> VerifyReport {
    Verifier::new(ctx, fixture).run_all()
}
