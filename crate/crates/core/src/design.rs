//! Name-based design resolution shared by the sweep, blend and CLI paths.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::compose::{array16_names, build16, tree16_names};
use crate::error::{Error, Result};
use crate::mult8::{array8_designs, parse_name, tree8_designs, Arch, NetMultiplier};
use crate::multiplier::Multiplier;
use crate::FaKind;

/// The groups of designs that are characterized together.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignSet {
    Cells,
    Array8,
    Tree8,
    Array16,
    Tree16,
}

impl DesignSet {
    pub const ALL: [DesignSet; 5] = [
        DesignSet::Cells,
        DesignSet::Array8,
        DesignSet::Tree8,
        DesignSet::Array16,
        DesignSet::Tree16,
    ];

    /// Design names in catalog order; the exact baseline comes first.
    pub fn names(self) -> Vec<String> {
        match self {
            DesignSet::Cells => FaKind::ALL.iter().map(|k| k.short_name().to_string()).collect(),
            DesignSet::Array8 => array8_designs().iter().map(|c| c.name()).collect(),
            DesignSet::Tree8 => tree8_designs().iter().map(|c| c.name()).collect(),
            DesignSet::Array16 => array16_names(),
            DesignSet::Tree16 => tree16_names(),
        }
    }

    pub fn baseline(self) -> &'static str {
        match self {
            DesignSet::Cells => "E",
            DesignSet::Array8 => "EE",
            DesignSet::Tree8 => "CEE",
            DesignSet::Array16 => "16EE",
            DesignSet::Tree16 => "16CEE",
        }
    }

    /// Whether the set defaults to exhaustive error evaluation.
    pub fn exhaustive_by_default(self) -> bool {
        !matches!(self, DesignSet::Array16 | DesignSet::Tree16)
    }

    /// The set a multiplier design name belongs to.
    pub fn of_design(name: &str) -> Result<DesignSet> {
        let (wide, rest) = match name.strip_prefix("16") {
            Some(rest) => (true, rest),
            None => (false, name),
        };
        let cfg = parse_name(rest)?;
        Ok(match (wide, cfg.arch) {
            (false, Arch::Array) => DesignSet::Array8,
            (false, Arch::Tree) => DesignSet::Tree8,
            (true, Arch::Array) => DesignSet::Array16,
            (true, Arch::Tree) => DesignSet::Tree16,
        })
    }
}

impl fmt::Display for DesignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DesignSet::Cells => "cells",
            DesignSet::Array8 => "array8",
            DesignSet::Tree8 => "tree8",
            DesignSet::Array16 => "array16",
            DesignSet::Tree16 => "tree16",
        })
    }
}

impl FromStr for DesignSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DesignSet::ALL
            .into_iter()
            .find(|set| set.to_string() == s)
            .ok_or_else(|| Error::InvalidDesign {
                name: s.to_string(),
                reason: "expected one of cells, array8, tree8, array16, tree16".into(),
            })
    }
}

/// Builds a multiplier from an 8x8 (`EM1`, `CEM5`) or 16x16 (`16EM1`) name.
pub fn build_design(name: &str) -> Result<Arc<dyn Multiplier>> {
    if name.starts_with("16") {
        Ok(Arc::new(build16(name)?))
    } else {
        Ok(Arc::new(NetMultiplier::from_name(name)?))
    }
}
