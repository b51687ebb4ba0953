use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use veldkamp_core::classify::Action;
use veldkamp_core::geometry::NH_POINTS;
use veldkamp_core::report::verify::{Check, Verifier};
use veldkamp_core::report::{self, Classification, ExpectedFixture, Format, ReportTable};
use veldkamp_core::Context;

const USAGE_ERROR: u8 = 2;
const MISMATCH: u8 = 1;

#[derive(Parser)]
#[command(
    name = "veldkamp",
    version,
    about = "Veldkamp lines of the near hexagon L3 x GQ(2,2) and their orbits"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0, global = true)]
    threads: usize,

    /// Read expected values from this directory instead of the built-in copies.
    #[arg(long, global = true, hide = true)]
    fixture_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the geometry, hyperplanes and group and print their sizes.
    Build {
        /// Also check structural invariants against the expected counts.
        #[arg(long)]
        check: bool,
    },
    /// Print one of the three classification tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
    },
    /// Orbit counts by Burnside's lemma for the four actions.
    Burnside,
    /// Enumerate orbits and show how profile collisions are resolved.
    Classify,
    /// Compare every computed quantity with the expected values.
    Verify,
    /// Locate the line through two hyperplanes, given as coordinate vectors 1..1023.
    OrbitOf {
        #[arg(value_parser = parse_vector)]
        h1: u32,
        #[arg(value_parser = parse_vector)]
        h2: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Text => Format::Text,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// Decimal, or binary / hex with a `0b` / `0x` prefix.
fn parse_vector(s: &str) -> Result<u32, String> {
    let v = if let Some(b) = s.strip_prefix("0b") {
        u32::from_str_radix(b, 2)
    } else if let Some(h) = s.strip_prefix("0x") {
        u32::from_str_radix(h, 16)
    } else {
        s.parse()
    }
    .map_err(|e| format!("{s:?}: {e}"))?;
    if (1..=1023).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside 1..1023"))
    }
}

struct Output {
    text: String,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli, &out.text) {
            Ok(()) => ExitCode::from(out.status),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(USAGE_ERROR)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(MISMATCH)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    let fixture = match &cli.fixture_dir {
        Some(dir) => ExpectedFixture::from_dir(dir),
        None => ExpectedFixture::embedded(),
    }
    .map_err(|e| Failure::Mismatch(e.to_string()))?;
    let format = Format::from(cli.format);
    let ctx = Context::build();
    let ok = |table: ReportTable| {
        Ok(Output {
            text: table.render(format),
            status: 0,
        })
    };

    match &cli.command {
        Command::Build { check } => Ok(build(&ctx, &fixture, *check, format)),
        Command::Table { which } => {
            let verifier = Verifier::new(&ctx, &fixture);
            match which {
                1 => ok(report::table1(verifier.types())),
                2 => ok(report::table2(verifier.fix_table())),
                _ => ok(report::table3(&verifier.classification().partition)),
            }
        }
        Command::Burnside => ok(report::burnside_table(&report::all_burnside_counts(&ctx))),
        Command::Classify => {
            let classification = Classification::run(&ctx, &fixture);
            let burnside = veldkamp_core::classify::burnside_count(&ctx, Action::NhLines);
            ok(report::classify_table(&classification.partition, burnside.orbits))
        }
        Command::Verify => {
            let result = Verifier::new(&ctx, &fixture).run_all();
            let mut text = result.table().render(format);
            if format == Format::Text {
                text.push_str(&summary(result.checks.iter()));
            }
            Ok(Output {
                text,
                status: if result.passed() { 0 } else { MISMATCH },
            })
        }
        Command::OrbitOf { h1, h2 } => {
            if h1 == h2 {
                return Err(Failure::Usage(format!("h1 and h2 must differ (both {h1})")));
            }
            let classification = Classification::run(&ctx, &fixture);
            let table = report::orbit_of(&ctx, &classification, *h1, *h2).map_err(|e| Failure::Usage(e.to_string()))?;
            ok(table)
        }
    }
}

fn build(ctx: &Context, fixture: &ExpectedFixture, check: bool, format: Format) -> Output {
    let counts = (
        NH_POINTS,
        ctx.nh.line_masks().len(),
        ctx.space.ids().count(),
        ctx.group.order(),
    );
    let checks: Vec<Check> = if check {
        let verifier = Verifier::new(ctx, fixture);
        let mut checks: Vec<Check> = [1, 2, 3].into_iter().flat_map(|n| verifier.criterion(n)).collect();
        checks.extend(verifier.criterion(5).into_iter().filter(|c| c.name == "group_order"));
        let preserved = ctx.group.preserves_lines(&ctx.nh);
        checks.push(Check {
            criterion: 5,
            name: "group_preserves_lines".into(),
            expected: "true".into(),
            actual: preserved.to_string(),
            passed: preserved,
        });
        checks
    } else {
        Vec::new()
    };
    let passed = checks.iter().all(|c| c.passed);
    let status = if !check {
        None
    } else if passed {
        Some("OK")
    } else {
        Some("FAIL")
    };
    let text = match format {
        Format::Text => {
            let mut s = format!(
                "{} points, {} lines, {} hyperplanes, |G|={}",
                counts.0, counts.1, counts.2, counts.3
            );
            if let Some(st) = status {
                s.push_str(", ");
                s.push_str(st);
            }
            s.push('\n');
            for c in checks.iter().filter(|c| !c.passed) {
                s.push_str(&format!("FAIL {}: expected {}, got {}\n", c.name, c.expected, c.actual));
            }
            s
        }
        _ => {
            let mut t = ReportTable::new(
                "build",
                "Structure sizes",
                &["points", "lines", "hyperplanes", "group_order", "status"],
            );
            t.push(vec![
                counts.0.into(),
                counts.1.into(),
                counts.2.into(),
                counts.3.into(),
                status.into(),
            ]);
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            if !failed.is_empty() {
                t.meta("failed", failed.join(";"));
            }
            t.render(format)
        }
    };
    Output {
        text,
        status: if passed { 0 } else { MISMATCH },
    }
}

fn summary<'a>(checks: impl Iterator<Item = &'a Check>) -> String {
    let mut per: std::collections::BTreeMap<u8, (usize, usize)> = Default::default();
    for c in checks {
        let e = per.entry(c.criterion).or_default();
        e.0 += c.passed as usize;
        e.1 += 1;
    }
    let mut s = String::from("\n");
    for (n, (pass, total)) in per {
        let name = if n == 0 {
            "format".to_string()
        } else {
            format!("criterion {n}")
        };
        let status = if pass == total { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {name}: {pass}/{total}\n"));
    }
    s
}
