//! Published NN-class representatives for even n ≤ 30, and their verifier.
//!
//! The rows live in `data/table1.csv` (columns
//! `n,index,ab_code,cd_code,a,b,c,d,a*,b*,c*,d*`). The embedded copy is
//! guarded by a SHA-256 checksum so an accidental edit fails loudly.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::is_canonical;
use crate::codec::{decode_nn, encode_nn, NnCode};
use crate::error::{Error, Result};

const EMBEDDED: &str = include_str!("../data/table1.csv");
const EMBEDDED_SHA256: &str = "6e37e93b38c82b52a92279c946dd10273e8ed6203cd19b8473338bb192c93843";

/// Rows per n = 2, 4, …, 30.
pub const ROW_COUNTS: [(usize, usize); 15] = [
    (2, 1),
    (4, 2),
    (6, 2),
    (8, 3),
    (10, 8),
    (12, 14),
    (14, 11),
    (16, 24),
    (18, 20),
    (20, 18),
    (22, 32),
    (24, 12),
    (26, 3),
    (28, 20),
    (30, 9),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub index: usize,
    pub ab_code: String,
    pub cd_code: String,
    pub sums: [i32; 4],
    pub alt_sums: [i32; 4],
}

/// Flat CSV shape of a row.
#[derive(Deserialize)]
struct CsvRow {
    n: usize,
    index: usize,
    ab_code: String,
    cd_code: String,
    a: i32,
    b: i32,
    c: i32,
    d: i32,
    #[serde(rename = "a*")]
    a_alt: i32,
    #[serde(rename = "b*")]
    b_alt: i32,
    #[serde(rename = "c*")]
    c_alt: i32,
    #[serde(rename = "d*")]
    d_alt: i32,
}

impl From<CsvRow> for TableRow {
    fn from(r: CsvRow) -> Self {
        Self {
            n: r.n,
            index: r.index,
            ab_code: r.ab_code,
            cd_code: r.cd_code,
            sums: [r.a, r.b, r.c, r.d],
            alt_sums: [r.a_alt, r.b_alt, r.c_alt, r.d_alt],
        }
    }
}

impl TableRow {
    pub fn code_text(&self) -> String {
        format!("{};{}", self.ab_code, self.cd_code)
    }

    pub fn code(&self) -> Result<NnCode> {
        NnCode::new(&self.ab_code, &self.cd_code)
    }
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Parses table rows from CSV text.
pub fn parse_table(text: &str) -> Result<Vec<TableRow>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize::<CsvRow>()
        .map(|r| {
            r.map(TableRow::from)
                .map_err(|e| Error::TableData(e.to_string()))
        })
        .collect()
}

/// Reads table rows from a CSV file (no checksum).
pub fn load_table(path: &Path) -> Result<Vec<TableRow>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::TableData(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

/// All embedded rows, after checking the embedded data's checksum.
pub fn embedded_rows() -> Result<Vec<TableRow>> {
    let digest = sha256_hex(EMBEDDED);
    if digest != EMBEDDED_SHA256 {
        return Err(Error::TableData(format!(
            "embedded table checksum {digest} does not match {EMBEDDED_SHA256}"
        )));
    }
    parse_table(EMBEDDED)
}

/// Restricts `rows` to one n, failing when nothing matches.
pub fn select_rows(rows: Vec<TableRow>, n: Option<usize>) -> Result<Vec<TableRow>> {
    match n {
        None => Ok(rows),
        Some(n) => {
            let picked: Vec<_> = rows.into_iter().filter(|r| r.n == n).collect();
            if picked.is_empty() {
                Err(Error::UnknownTableSize(n))
            } else {
                Ok(picked)
            }
        }
    }
}

/// Embedded rows, optionally for a single n.
pub fn table1_rows(n: Option<usize>) -> Result<Vec<TableRow>> {
    select_rows(embedded_rows()?, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Check {
    Parses,
    Decodes,
    Canonical,
    Sums,
    AltSums,
    SumOfSquares,
    RoundTrip,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Parses,
        Check::Decodes,
        Check::Canonical,
        Check::Sums,
        Check::AltSums,
        Check::SumOfSquares,
        Check::RoundTrip,
    ];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Check::Parses => "parses",
            Check::Decodes => "decodes",
            Check::Canonical => "canonical",
            Check::Sums => "sums",
            Check::AltSums => "alt-sums",
            Check::SumOfSquares => "sum-of-squares",
            Check::RoundTrip => "round-trip",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowReport {
    pub n: usize,
    pub index: usize,
    pub code: String,
    /// Every check in [`Check::ALL`] order; checks that could not run
    /// because an earlier one failed are recorded as failed.
    pub checks: Vec<(Check, bool)>,
    pub detail: Option<String>,
}

impl RowReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|&(_, ok)| ok)
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|&(c, _)| c)
            .collect()
    }
}

fn squares(v: [i32; 4]) -> i32 {
    v.iter().map(|x| x * x).sum()
}

/// Runs every check on one row.
pub fn verify_row(row: &TableRow) -> RowReport {
    let mut results = Vec::with_capacity(Check::ALL.len());
    let mut detail = None;
    let target = 2 * (2 * row.n as i32 + 1);
    results.push((
        Check::SumOfSquares,
        squares(row.sums) == target && squares(row.alt_sums) == target,
    ));

    let code = row.code();
    results.push((Check::Parses, code.is_ok()));
    let code = code.map_err(|e| detail = Some(e.to_string())).ok();
    let code = code.filter(|c| {
        let ok = c.n() == row.n;
        if !ok {
            detail = Some(format!("code length implies n = {}", c.n()));
        }
        ok
    });

    let quad = code
        .as_ref()
        .and_then(|c| decode_nn(c).map_err(|e| detail = Some(e.to_string())).ok());
    results.push((Check::Decodes, quad.is_some()));
    match (&quad, &code) {
        (Some(q), Some(c)) => {
            results.push((Check::Canonical, is_canonical(q)));
            results.push((Check::Sums, q.sums() == row.sums));
            results.push((Check::AltSums, q.alt_sums() == row.alt_sums));
            results.push((Check::RoundTrip, encode_nn(q).as_ref() == Ok(c)));
        }
        _ => {
            for check in [
                Check::Canonical,
                Check::Sums,
                Check::AltSums,
                Check::RoundTrip,
            ] {
                results.push((check, false));
            }
        }
    }
    let checks = Check::ALL
        .iter()
        .map(|&c| *results.iter().find(|(k, _)| *k == c).unwrap())
        .collect();
    RowReport {
        n: row.n,
        index: row.index,
        code: row.code_text(),
        checks,
        detail,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn total(&self) -> usize {
        self.rows.len()
    }

    pub fn passed(&self) -> usize {
        self.rows.iter().filter(|r| r.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.passed() == self.total()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowReport> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} rows pass", self.passed(), self.total())
    }
}

/// Verifies the given rows.
pub fn verify_rows(rows: &[TableRow]) -> TableReport {
    TableReport {
        rows: rows.iter().map(verify_row).collect(),
    }
}

/// Verifies the embedded rows, optionally for a single n.
pub fn verify_table(n: Option<usize>) -> Result<TableReport> {
    Ok(verify_rows(&table1_rows(n)?))
}
