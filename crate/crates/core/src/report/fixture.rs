//! Expected values, stored as CSV and compiled into the binary.

use std::collections::BTreeMap;
use std::path::Path;

use crate::classify::ProfileKey;
use crate::error::{Error, Result};
use crate::footnotes::Footnote;
use crate::geometry::QuadLabel;

const TABLE1: &str = include_str!("../../fixtures/table1.csv");
const TABLE2: &str = include_str!("../../fixtures/table2.csv");
const TABLE3: &str = include_str!("../../fixtures/table3.csv");
const CONSTANTS: &str = include_str!("../../fixtures/constants.csv");

pub const FIXTURE_FILES: [&str; 4] = ["table1.csv", "table2.csv", "table3.csv", "constants.csv"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Expected {
    pub name: String,
    pub partition: Vec<u32>,
    pub orbit_size: usize,
    pub stabilizer: String,
    pub stabilizer_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Expected {
    pub class: String,
    pub fix: [u64; 3],
    pub size: usize,
    pub product: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table3Expected {
    pub row: u16,
    pub key: ProfileKey,
    /// Labels in the fixture's column order.
    pub listed_labels: [QuadLabel; 3],
    pub notes: Vec<Footnote>,
}

impl Table3Expected {
    /// Orbits the row stands for: two when it carries a split marker.
    pub fn multiplicity(&self) -> usize {
        if self
            .notes
            .iter()
            .any(|f| matches!(f, Footnote::Star | Footnote::Dagger))
        {
            2
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedFixture {
    pub table1: Vec<Table1Expected>,
    pub table2: Vec<Table2Expected>,
    pub table3: Vec<Table3Expected>,
    pub constants: BTreeMap<String, u64>,
}

impl ExpectedFixture {
    pub fn embedded() -> Result<Self> {
        Self::parse(TABLE1, TABLE2, TABLE3, CONSTANTS)
    }

    /// Loads the same four files from a directory instead of the embedded copies.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name)).map_err(|e| Error::Fixture {
                file: name.to_string(),
                line: 0,
                message: e.to_string(),
            })
        };
        Self::parse(
            &read(FIXTURE_FILES[0])?,
            &read(FIXTURE_FILES[1])?,
            &read(FIXTURE_FILES[2])?,
            &read(FIXTURE_FILES[3])?,
        )
    }

    pub fn parse(table1: &str, table2: &str, table3: &str, constants: &str) -> Result<Self> {
        Ok(ExpectedFixture {
            table1: records("table1.csv", table1, 5)?
                .map(parse_table1)
                .collect::<Result<_>>()?,
            table2: records("table2.csv", table2, 6)?
                .map(parse_table2)
                .collect::<Result<_>>()?,
            table3: records("table3.csv", table3, 20)?
                .map(parse_table3)
                .collect::<Result<_>>()?,
            constants: records("constants.csv", constants, 2)?
                .map(|r| Ok((r.fields[0].to_string(), r.num(1)?)))
                .collect::<Result<_>>()?,
        })
    }

    /// A named scalar; missing names read as zero so that the comparison fails loudly.
    pub fn constant(&self, name: &str) -> u64 {
        self.constants.get(name).copied().unwrap_or(0)
    }

    pub fn table3_row(&self, row: u16) -> Option<&Table3Expected> {
        self.table3.iter().find(|r| r.row == row)
    }
}

struct Record<'a> {
    file: &'static str,
    line: usize,
    fields: Vec<&'a str>,
}

impl Record<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Fixture {
            file: self.file.to_string(),
            line: self.line,
            message: message.into(),
        }
    }

    fn num<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        self.fields[i]
            .trim()
            .parse()
            .map_err(|_| self.err(format!("field {} is not a number: {:?}", i + 1, self.fields[i])))
    }

    fn label(&self, i: usize) -> Result<QuadLabel> {
        QuadLabel::from_name(self.fields[i]).ok_or_else(|| self.err(format!("unknown quad label {:?}", self.fields[i])))
    }
}

fn records<'a>(file: &'static str, text: &'a str, width: usize) -> Result<impl Iterator<Item = Record<'a>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let rec = Record {
            file,
            line: i + 1,
            fields,
        };
        if rec.fields.len() != width {
            return Err(rec.err(format!("expected {width} fields, found {}", rec.fields.len())));
        }
        out.push(rec);
    }
    Ok(out.into_iter())
}

fn parse_table1(r: Record) -> Result<Table1Expected> {
    let partition = r.fields[1]
        .split_whitespace()
        .map(|p| p.parse().map_err(|_| r.err("bad partition")))
        .collect::<Result<_>>()?;
    Ok(Table1Expected {
        name: r.fields[0].to_string(),
        partition,
        orbit_size: r.num(2)?,
        stabilizer: r.fields[3].to_string(),
        stabilizer_order: r.num(4)?,
    })
}

fn parse_table2(r: Record) -> Result<Table2Expected> {
    Ok(Table2Expected {
        class: r.fields[0].to_string(),
        fix: [r.num(1)?, r.num(2)?, r.num(3)?],
        size: r.num(4)?,
        product: r.num(5)?,
    })
}

fn parse_table3(r: Record) -> Result<Table3Expected> {
    let mut orders = [0u32; 5];
    for (k, o) in orders.iter_mut().enumerate() {
        *o = r.num(3 + k)?;
    }
    let mut composition = [0u8; 8];
    for (k, c) in composition.iter_mut().enumerate() {
        *c = r.num(8 + k)?;
    }
    let listed_labels = [r.label(16)?, r.label(17)?, r.label(18)?];
    let mut labels = listed_labels;
    labels.sort_unstable();
    let notes = r.fields[19]
        .split(';')
        .filter(|t| !t.is_empty())
        .map(|t| Footnote::from_tag(t).ok_or_else(|| r.err(format!("unknown note {t:?}"))))
        .collect::<Result<_>>()?;
    Ok(Table3Expected {
        row: r.num(0)?,
        key: ProfileKey {
            pt: r.num(1)?,
            ln: r.num(2)?,
            orders,
            composition,
            labels,
        },
        listed_labels,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_shapes() {
        let f = ExpectedFixture::embedded().unwrap();
        assert_eq!(f.table1.len(), 8);
        assert_eq!(f.table2.len(), 33);
        assert_eq!(f.table3.len(), 156);
        assert_eq!(f.constant("grand_total"), 682_560);
        assert!(f.table3.iter().enumerate().all(|(i, r)| r.row as usize == i + 1));
        assert_eq!(f.table3.iter().map(Table3Expected::multiplicity).sum::<usize>(), 158);
    }

    #[test]
    fn rows_sum_to_their_columns() {
        let f = ExpectedFixture::embedded().unwrap();
        for r in &f.table3 {
            assert_eq!(r.key.orders.iter().sum::<u32>(), r.key.pt, "row {}", r.row);
            assert_eq!(
                r.key.composition.iter().map(|&c| c as u32).sum::<u32>(),
                3,
                "row {}",
                r.row
            );
        }
        for r in &f.table2 {
            assert_eq!(r.fix.iter().sum::<u64>() * r.size as u64, r.product, "{}", r.class);
        }
    }

    #[test]
    fn malformed_input_names_the_line() {
        let bad = "row\n1,2\n";
        let err = ExpectedFixture::parse(TABLE1, TABLE2, bad, CONSTANTS).unwrap_err();
        assert!(matches!(err, Error::Fixture { line: 2, .. }), "{err}");
        let bad = CONSTANTS.replace("nh_points,45", "nh_points,x");
        assert!(ExpectedFixture::parse(TABLE1, TABLE2, TABLE3, &bad).is_err());
    }
}
