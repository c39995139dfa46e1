//! Input file formats and the built-in datasets.
//!
//! Two flat files are understood, both with a mandatory header line and
//! either comma- or tab-separated columns (the delimiter is sniffed from the
//! header):
//!
//! * pair counts: `order1,order2,count` — one row per unordered pair of
//!   distinct orders with the number of languages using that pair as primary
//!   alternating orders;
//! * dominant frequencies: `order,count` — languages where each order is the
//!   dominant one.
//!
//! Order tokens are case-insensitive. The canonical pair-count dataset and a
//! reference dominant-order file (counts taken from the World Atlas of
//! Language Structures, feature 81A) are embedded in the crate and shipped
//! under `data/`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::models::DominantFrequencies;
use crate::order::Order;
use crate::ring::ring_distance;

/// Errors raised while parsing or assembling datasets. Line numbers are
/// 1-based and include the header line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DataError {
    #[error("line 1: expected header `{expected}` (comma- or tab-separated), found `{found}`")]
    BadHeader {
        expected: &'static str,
        found: String,
    },
    #[error("line {line}: expected {expected} fields, found {found}")]
    MalformedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: unknown order token `{token}`")]
    UnknownOrder { line: usize, token: String },
    #[error("line {line}: count `{token}` must be a nonnegative integer")]
    NegativeCount { line: usize, token: String },
    #[error("line {line}: count `{token}` is not an integer")]
    BadCount { line: usize, token: String },
    #[error("line {line}: pair members must differ, got `{order}` twice")]
    SamePairMembers { line: usize, order: Order },
    #[error("line {line}: duplicate pair ({a}, {b})")]
    DuplicatePair { line: usize, a: Order, b: Order },
    #[error("line {line}: duplicate order `{order}`")]
    DuplicateOrder { line: usize, order: Order },
    #[error("empty dataset: no data rows after the header")]
    EmptyDataset,
    #[error("all frequency counts are zero")]
    AllZeroCounts,
}

/// Symmetric counts m(x, y) of languages whose primary alternating orders
/// are the unordered pair {x, y}.
///
/// Pairs are stored under a canonical key (members in enumeration order), so
/// serialization and iteration order are deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairCountTable {
    counts: BTreeMap<(Order, Order), u64>,
}

fn canonical_pair(x: Order, y: Order) -> (Order, Order) {
    if x.index() <= y.index() {
        (x, y)
    } else {
        (y, x)
    }
}

impl PairCountTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(x, y, count)` triples, rejecting same-member
    /// and duplicate pairs.
    pub fn from_rows<I>(rows: I) -> Result<Self, DataError>
    where
        I: IntoIterator<Item = (Order, Order, u64)>,
    {
        let mut table = Self::new();
        for (line, (x, y, count)) in rows.into_iter().enumerate() {
            table.insert(x, y, count).map_err(|e| match e {
                DataError::SamePairMembers { order, .. } => DataError::SamePairMembers {
                    line: line + 1,
                    order,
                },
                DataError::DuplicatePair { a, b, .. } => DataError::DuplicatePair {
                    line: line + 1,
                    a,
                    b,
                },
                other => other,
            })?;
        }
        Ok(table)
    }

    /// Inserts the count for an unordered pair. `x` and `y` must differ and
    /// the pair must not already be present.
    pub fn insert(&mut self, x: Order, y: Order, count: u64) -> Result<(), DataError> {
        if x == y {
            return Err(DataError::SamePairMembers { line: 0, order: x });
        }
        let key = canonical_pair(x, y);
        if self.counts.contains_key(&key) {
            return Err(DataError::DuplicatePair {
                line: 0,
                a: key.0,
                b: key.1,
            });
        }
        self.counts.insert(key, count);
        Ok(())
    }

    /// m(x, y), looked up symmetrically. Absent pairs count zero.
    pub fn count(&self, x: Order, y: Order) -> u64 {
        self.counts
            .get(&canonical_pair(x, y))
            .copied()
            .unwrap_or(0)
    }

    /// Rows in canonical order as `(x, y, count)` with `x` before `y`.
    pub fn rows(&self) -> impl Iterator<Item = (Order, Order, u64)> + '_ {
        self.counts.iter().map(|(&(x, y), &m)| (x, y, m))
    }

    /// Total number of languages, m.
    pub fn language_total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Sample size n = 2m: every language contributes both partners.
    pub fn sample_size(&self) -> u64 {
        2 * self.language_total()
    }

    /// True when the table holds no rows (zero-count rows still count as
    /// rows for round-trip purposes, but contribute no languages).
    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Number of languages whose pair sits at each ring distance class
    /// (index 0 holds d = 1).
    pub fn distance_class_totals(&self) -> [u64; 3] {
        let mut totals = [0u64; 3];
        for (x, y, m) in self.rows() {
            let d = ring_distance(x, y) as usize;
            totals[d - 1] += m;
        }
        totals
    }

    /// Languages contributing each order as one of their two partners: one
    /// slot per partner, so the six counts sum to n.
    pub fn slot_counts(&self) -> [u64; 6] {
        let mut slots = [0u64; 6];
        for (x, y, m) in self.rows() {
            slots[x.index()] += m;
            slots[y.index()] += m;
        }
        slots
    }

    /// Serializes the table in the pair-count file format.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(PAIR_HEADER);
        out.push('\n');
        for (x, y, m) in self.rows() {
            let _ = writeln!(out, "{x},{y},{m}");
        }
        out
    }
}

const PAIR_HEADER: &str = "order1,order2,count";
const FREQ_HEADER: &str = "order,count";

type NumberedRows<'t> = Vec<(usize, &'t str)>;

/// Splits the body into non-empty trimmed lines with their 1-based numbers,
/// and picks the delimiter from the header line.
fn header_and_rows<'t>(
    text: &'t str,
    expected_header: &'static str,
) -> Result<(char, NumberedRows<'t>), DataError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(DataError::BadHeader {
        expected: expected_header,
        found: String::new(),
    })?;
    let delimiter = if header.contains('\t') { '\t' } else { ',' };
    let expected_exact = expected_header.replace(',', &delimiter.to_string());
    if header != expected_exact {
        return Err(DataError::BadHeader {
            expected: expected_header,
            found: header.to_string(),
        });
    }
    Ok((delimiter, lines.collect()))
}

fn parse_order_field(line: usize, token: &str) -> Result<Order, DataError> {
    token.parse().map_err(|_| DataError::UnknownOrder {
        line,
        token: token.trim().to_string(),
    })
}

fn parse_count_field(line: usize, token: &str) -> Result<u64, DataError> {
    let trimmed = token.trim();
    if let Ok(v) = trimmed.parse::<u64>() {
        return Ok(v);
    }
    if trimmed.parse::<i64>().is_ok() {
        return Err(DataError::NegativeCount {
            line,
            token: trimmed.to_string(),
        });
    }
    Err(DataError::BadCount {
        line,
        token: trimmed.to_string(),
    })
}

/// Parses a pair-count file into a validated [`PairCountTable`].
pub fn parse_pair_counts(text: &str) -> Result<PairCountTable, DataError> {
    let (delimiter, rows) = header_and_rows(text, PAIR_HEADER)?;
    if rows.is_empty() {
        return Err(DataError::EmptyDataset);
    }
    let mut table = PairCountTable::new();
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(delimiter).collect();
        if fields.len() != 3 {
            return Err(DataError::MalformedRow {
                line,
                expected: 3,
                found: fields.len(),
            });
        }
        let x = parse_order_field(line, fields[0])?;
        let y = parse_order_field(line, fields[1])?;
        let count = parse_count_field(line, fields[2])?;
        table.insert(x, y, count).map_err(|e| match e {
            DataError::SamePairMembers { order, .. } => DataError::SamePairMembers { line, order },
            DataError::DuplicatePair { a, b, .. } => DataError::DuplicatePair { line, a, b },
            other => other,
        })?;
    }
    Ok(table)
}

/// Parses a dominant-frequency file. Orders may appear at most once;
/// missing orders default to zero, and at least one count must be positive.
pub fn parse_dominant_frequencies(text: &str) -> Result<DominantFrequencies, DataError> {
    let (delimiter, rows) = header_and_rows(text, FREQ_HEADER)?;
    if rows.is_empty() {
        return Err(DataError::EmptyDataset);
    }
    let mut counts = [0u64; 6];
    let mut seen = [false; 6];
    for (line, row) in rows {
        let fields: Vec<&str> = row.split(delimiter).collect();
        if fields.len() != 2 {
            return Err(DataError::MalformedRow {
                line,
                expected: 2,
                found: fields.len(),
            });
        }
        let order = parse_order_field(line, fields[0])?;
        if seen[order.index()] {
            return Err(DataError::DuplicateOrder { line, order });
        }
        seen[order.index()] = true;
        counts[order.index()] = parse_count_field(line, fields[1])?;
    }
    DominantFrequencies::new(counts).map_err(|_| DataError::AllZeroCounts)
}

/// The built-in pair-count dataset: the five observed pairs of primary
/// alternating orders.
pub fn canonical_dataset() -> PairCountTable {
    PairCountTable::from_rows([
        (Order::SOV, Order::SVO, 29),
        (Order::VSO, Order::VOS, 14),
        (Order::SVO, Order::VSO, 13),
        (Order::SVO, Order::VOS, 8),
        (Order::SOV, Order::OVS, 3),
    ])
    .expect("canonical rows are valid")
}

/// Contents of the shipped canonical pair-count file.
pub const CANONICAL_PAIR_COUNTS_CSV: &str = include_str!("../data/primary_alternating_orders.csv");

/// Contents of the shipped dominant-order reference file (WALS 81A counts).
pub const WALS_DOMINANT_ORDERS_CSV: &str = include_str!("../data/wals_dominant_orders.csv");

/// The shipped dominant-order reference counts, parsed.
pub fn wals_dominant_frequencies() -> DominantFrequencies {
    parse_dominant_frequencies(WALS_DOMINANT_ORDERS_CSV).expect("shipped reference file is valid")
}
