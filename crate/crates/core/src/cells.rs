//! Exact and approximate full-adder cells.
//!
//! Each cell is a literal 8-row truth table indexed by `(a, b, cin)` as the
//! binary number `a·4 + b·2 + cin`, plus the characterization figures measured
//! for that cell (transistor count, power, delay, power-delay product).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transistor count of the (always exact) half adder.
pub const HA_AREA: u64 = 14;

/// The twelve full-adder kinds: the exact mirror adder and eleven approximations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaKind {
    Exact,
    Ama1,
    Ama2,
    Ama3,
    Ama4,
    Ama5,
    Axa1,
    Axa2,
    Axa3,
    InXa1,
    InXa2,
    InXa3,
}

impl FaKind {
    pub const ALL: [FaKind; 12] = [
        FaKind::Exact,
        FaKind::Ama1,
        FaKind::Ama2,
        FaKind::Ama3,
        FaKind::Ama4,
        FaKind::Ama5,
        FaKind::Axa1,
        FaKind::Axa2,
        FaKind::Axa3,
        FaKind::InXa1,
        FaKind::InXa2,
        FaKind::InXa3,
    ];

    /// The eleven approximate kinds, in catalog order.
    pub const APPROXIMATE: [FaKind; 11] = [
        FaKind::Ama1,
        FaKind::Ama2,
        FaKind::Ama3,
        FaKind::Ama4,
        FaKind::Ama5,
        FaKind::Axa1,
        FaKind::Axa2,
        FaKind::Axa3,
        FaKind::InXa1,
        FaKind::InXa2,
        FaKind::InXa3,
    ];

    /// Short token used in design names (`E`, `M1`, `X2`, `In3`, ...).
    pub fn short_name(self) -> &'static str {
        match self {
            FaKind::Exact => "E",
            FaKind::Ama1 => "M1",
            FaKind::Ama2 => "M2",
            FaKind::Ama3 => "M3",
            FaKind::Ama4 => "M4",
            FaKind::Ama5 => "M5",
            FaKind::Axa1 => "X1",
            FaKind::Axa2 => "X2",
            FaKind::Axa3 => "X3",
            FaKind::InXa1 => "In1",
            FaKind::InXa2 => "In2",
            FaKind::InXa3 => "In3",
        }
    }

    pub fn long_name(self) -> &'static str {
        match self {
            FaKind::Exact => "Exact",
            FaKind::Ama1 => "AMA1",
            FaKind::Ama2 => "AMA2",
            FaKind::Ama3 => "AMA3",
            FaKind::Ama4 => "AMA4",
            FaKind::Ama5 => "AMA5",
            FaKind::Axa1 => "AXA1",
            FaKind::Axa2 => "AXA2",
            FaKind::Axa3 => "AXA3",
            FaKind::InXa1 => "InXA1",
            FaKind::InXa2 => "InXA2",
            FaKind::InXa3 => "InXA3",
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    /// Parses a leading kind token from `s`, returning the kind and the rest.
    pub(crate) fn split_token(s: &str) -> Option<(FaKind, &str)> {
        // Longest tokens first so "In1" is not read as something shorter.
        const TOKENS: [(&str, FaKind); 12] = [
            ("In1", FaKind::InXa1),
            ("In2", FaKind::InXa2),
            ("In3", FaKind::InXa3),
            ("M1", FaKind::Ama1),
            ("M2", FaKind::Ama2),
            ("M3", FaKind::Ama3),
            ("M4", FaKind::Ama4),
            ("M5", FaKind::Ama5),
            ("X1", FaKind::Axa1),
            ("X2", FaKind::Axa2),
            ("X3", FaKind::Axa3),
            ("E", FaKind::Exact),
        ];
        TOKENS
            .iter()
            .find(|(tok, _)| s.starts_with(tok))
            .map(|(tok, kind)| (*kind, &s[tok.len()..]))
    }
}

impl fmt::Display for FaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for FaKind {
    type Err = Error;

    /// Accepts either the short token (`M1`) or the long name (`AMA1`),
    /// case-insensitively.
    fn from_str(s: &str) -> Result<Self> {
        FaKind::ALL
            .iter()
            .copied()
            .find(|k| k.short_name().eq_ignore_ascii_case(s) || k.long_name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

impl Serialize for FaKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.short_name())
    }
}

impl<'de> Deserialize<'de> for FaKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Characterization figures of one cell.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellMetrics {
    /// Transistor count.
    pub size: u64,
    pub power_nw: f64,
    pub delay_ps: f64,
    /// Power-delay product as tabulated with the cell figures (nW·ps / 1000).
    pub pdp_fj: f64,
}

/// One row of a truth table: `(sum, cout)`.
pub type Row = (bool, bool);

/// A full-adder cell: kind, truth table and metrics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaCell {
    pub kind: FaKind,
    pub table: [Row; 8],
    pub metrics: CellMetrics,
}

impl FaCell {
    pub fn get(kind: FaKind) -> &'static FaCell {
        &CELLS[kind.index()]
    }

    #[inline]
    pub fn eval(&self, a: bool, b: bool, cin: bool) -> Row {
        self.table[row_index(a, b, cin)]
    }
}

#[inline]
fn row_index(a: bool, b: bool, cin: bool) -> usize {
    (a as usize) << 2 | (b as usize) << 1 | cin as usize
}

// (sum, cout) for inputs 000, 001, 010, 011, 100, 101, 110, 111.
const fn rows(r: [(u8, u8); 8]) -> [Row; 8] {
    let mut out = [(false, false); 8];
    let mut i = 0;
    while i < 8 {
        out[i] = (r[i].0 == 1, r[i].1 == 1);
        i += 1;
    }
    out
}

const fn cell(kind: FaKind, table: [(u8, u8); 8], size: u64, power_nw: f64, delay_ps: f64, pdp_fj: f64) -> FaCell {
    FaCell {
        kind,
        table: rows(table),
        metrics: CellMetrics {
            size,
            power_nw,
            delay_ps,
            pdp_fj,
        },
    }
}

// Characterization table, version 1.
#[rustfmt::skip]
static CELLS: [FaCell; 12] = [
    cell(FaKind::Exact, [(0,0),(1,0),(1,0),(0,1),(1,0),(0,1),(0,1),(1,1)], 28, 763.3, 244.0, 186.25),
    cell(FaKind::Ama1,  [(0,0),(1,0),(0,1),(0,1),(0,0),(0,1),(0,1),(1,1)], 20, 612.0, 195.0, 119.34),
    cell(FaKind::Ama2,  [(1,0),(1,0),(1,0),(0,1),(1,0),(0,1),(0,1),(0,1)], 14, 561.1, 366.0, 205.36),
    cell(FaKind::Ama3,  [(1,0),(1,0),(0,1),(0,1),(1,0),(0,1),(0,1),(0,1)], 11, 558.1, 360.0, 200.92),
    cell(FaKind::Ama4,  [(0,0),(1,0),(0,0),(1,0),(0,1),(0,1),(0,1),(1,1)], 15, 587.1, 196.0, 115.07),
    // Two buffers: sum = b, cout = a.
    cell(FaKind::Ama5,  [(0,0),(0,0),(1,0),(1,0),(0,1),(0,1),(1,1),(1,1)],  8, 412.1, 150.0,  61.82),
    cell(FaKind::Axa1,  [(0,0),(1,0),(0,1),(1,0),(0,1),(1,0),(0,1),(1,1)],  8, 676.2, 1155.0, 781.0),
    cell(FaKind::Axa2,  [(1,0),(1,0),(0,0),(0,1),(0,0),(0,1),(1,1),(1,1)],  6, 358.7, 838.0, 300.59),
    cell(FaKind::Axa3,  [(0,0),(1,0),(0,0),(0,1),(0,0),(0,1),(0,1),(1,1)],  8, 396.5, 1467.0, 582.0),
    cell(FaKind::InXa1, [(0,0),(1,1),(1,0),(0,1),(1,0),(0,1),(0,0),(1,1)],  6, 410.0, 740.0, 303.4),
    cell(FaKind::InXa2, [(0,0),(1,0),(1,0),(1,1),(1,0),(1,1),(0,1),(1,1)],  8, 355.1, 832.0, 295.44),
    cell(FaKind::InXa3, [(1,0),(1,0),(1,0),(0,1),(1,0),(0,1),(0,1),(0,1)],  6, 648.0, 767.0, 753.5),
];

/// Evaluates a full adder of the given kind.
#[inline]
pub fn fa_eval(kind: FaKind, a: bool, b: bool, cin: bool) -> Row {
    FaCell::get(kind).eval(a, b, cin)
}

/// Number of input triples on which `kind` differs from the exact adder in
/// sum, carry, or both.
pub fn fa_error_rows(kind: FaKind) -> usize {
    let exact = &FaCell::get(FaKind::Exact).table;
    let table = &FaCell::get(kind).table;
    exact.iter().zip(table).filter(|(e, t)| e != t).count()
}

/// Exact half adder: `(a ^ b, a & b)`.
#[inline]
pub fn ha_eval(a: bool, b: bool) -> Row {
    (a ^ b, a & b)
}

pub fn cell_metrics(kind: FaKind) -> CellMetrics {
    FaCell::get(kind).metrics
}
