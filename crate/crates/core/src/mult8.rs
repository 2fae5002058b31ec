//! Array and tree multipliers built from full/half-adder cells.
//!
//! Both builders are generic over the operand width `w`; the catalogued
//! designs use `w = 8`. Partial product `a_j·b_i` drives input wire
//! `i·w + j` and has weight `i + j`. A full adder is approximate (takes the
//! LSB kind) iff its sum output lands in a column below `w`, i.e. it
//! contributes to the least significant half of the product bits.
//!
//! * **Array**: `w - 1` rows of `w`-bit ripple-carry adders. Row `i` adds
//!   partial-product row `i` into the running sum; the first cell of each row
//!   (and both end cells of row 1) have only two inputs and are half adders.
//!   For `w = 8`: 48 FA + 8 HA, 21 FAs in the LSB region.
//! * **Tree**: Wallace reduction. Every stage places a full adder on each
//!   group of three bits in a column and a half adder on a remaining pair,
//!   until every column holds at most two bits; the two rows are then summed
//!   by an exact carry-propagate adder. For `w = 8`: 36 FA (18 in the LSB
//!   region) + 25 HA.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cells::FaKind;
use crate::error::{Error, Result};
use crate::multiplier::{low_mask, Multiplier};
use crate::net::{Census, CircuitNet, NetBuilder, OutputTerm, WireId};

/// Full adders in the LSB region of the 8x8 array.
pub const ARRAY8_LSB_FA: usize = 21;
/// Canonical 8x8 tree census used for area reporting.
pub const TREE8_FA: usize = 36;
pub const TREE8_LSB_FA: usize = 18;
pub const TREE8_HA: usize = 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Arch {
    Array,
    Tree,
}

/// A parsed design: architecture, kinds for the MSB and LSB regions, width.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplierConfig {
    pub arch: Arch,
    pub msb_kind: FaKind,
    pub lsb_kind: FaKind,
    pub width: u32,
}

impl MultiplierConfig {
    pub fn new(arch: Arch, msb_kind: FaKind, lsb_kind: FaKind) -> Self {
        MultiplierConfig {
            arch,
            msb_kind,
            lsb_kind,
            width: 8,
        }
    }

    pub fn with_width(mut self, width: u32) -> Self {
        self.width = width;
        self
    }

    pub fn exact(arch: Arch) -> Self {
        Self::new(arch, FaKind::Exact, FaKind::Exact)
    }

    /// Canonical name: `[C]<msb><lsb>`, e.g. `EM1`, `CM5M5`.
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// Kind of a full adder whose sum lands in `column`.
    pub fn kind_for_column(&self, column: u32) -> FaKind {
        if column < self.width {
            self.lsb_kind
        } else {
            self.msb_kind
        }
    }
}

impl fmt::Display for MultiplierConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arch == Arch::Tree {
            f.write_str("C")?;
        }
        write!(f, "{}{}", self.msb_kind, self.lsb_kind)
    }
}

impl FromStr for MultiplierConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_name(s)
    }
}

/// Parses an 8x8 design name such as `EM1`, `M5M5` or `CEIn1`.
pub fn parse_name(name: &str) -> Result<MultiplierConfig> {
    let invalid = |reason: &str| Error::InvalidDesign {
        name: name.to_string(),
        reason: reason.to_string(),
    };
    let (arch, rest) = match name.strip_prefix('C') {
        Some(rest) => (Arch::Tree, rest),
        None => (Arch::Array, name),
    };
    let (msb, rest) = FaKind::split_token(rest).ok_or_else(|| invalid("unknown MSB kind token"))?;
    let (lsb, rest) = FaKind::split_token(rest).ok_or_else(|| invalid("unknown LSB kind token"))?;
    if !rest.is_empty() {
        return Err(invalid("trailing characters"));
    }
    Ok(MultiplierConfig::new(arch, msb, lsb))
}

fn pp_wire(width: u32, i: u32, j: u32) -> WireId {
    i * width + j
}

/// Ripple-carry array multiplier.
pub fn build_array(cfg: &MultiplierConfig) -> CircuitNet {
    let w = cfg.width;
    assert!(w >= 2, "array width must be at least 2");
    let mut b = NetBuilder::new((w * w) as usize);
    let mut outputs = vec![OutputTerm {
        wire: pp_wire(w, 0, 0),
        weight: 0,
    }];
    let mut acc: BTreeMap<u32, WireId> = (1..w).map(|j| (j, pp_wire(w, 0, j))).collect();
    for i in 1..w {
        let mut next = BTreeMap::new();
        let mut carry: Option<WireId> = None;
        for j in 0..w {
            let col = i + j;
            let x = pp_wire(w, i, j);
            let sum = match (acc.remove(&col), carry) {
                (None, None) => x,
                (Some(y), None) => {
                    let (s, c) = b.ha(y, x, col);
                    carry = Some(c);
                    s
                }
                (None, Some(cin)) => {
                    let (s, c) = b.ha(x, cin, col);
                    carry = Some(c);
                    s
                }
                (Some(y), Some(cin)) => {
                    let (s, c) = b.fa(cfg.kind_for_column(col), x, y, cin, col);
                    carry = Some(c);
                    s
                }
            };
            next.insert(col, sum);
        }
        if let Some(c) = carry {
            next.insert(i + w, c);
        }
        let low = next.remove(&i).expect("row produces its lowest column");
        outputs.push(OutputTerm { wire: low, weight: i });
        acc = next;
    }
    outputs.extend(acc.into_iter().map(|(weight, wire)| OutputTerm { wire, weight }));
    b.finish(outputs)
}

/// Wallace-tree multiplier with an exact final two-row addition.
pub fn build_tree(cfg: &MultiplierConfig) -> CircuitNet {
    let w = cfg.width;
    assert!(w >= 2, "tree width must be at least 2");
    let n_cols = (2 * w + 1) as usize;
    let mut b = NetBuilder::new((w * w) as usize);
    let mut cols: Vec<Vec<WireId>> = vec![Vec::new(); n_cols];
    for i in 0..w {
        for j in 0..w {
            cols[(i + j) as usize].push(pp_wire(w, i, j));
        }
    }
    while cols.iter().any(|c| c.len() > 2) {
        let mut next: Vec<Vec<WireId>> = vec![Vec::new(); n_cols];
        for (c, bits) in cols.iter().enumerate() {
            let col = c as u32;
            let mut groups = bits.chunks_exact(3);
            for g in groups.by_ref() {
                let (s, carry) = b.fa(cfg.kind_for_column(col), g[0], g[1], g[2], col);
                next[c].push(s);
                next[c + 1].push(carry);
            }
            match *groups.remainder() {
                [x, y] => {
                    let (s, carry) = b.ha(x, y, col);
                    next[c].push(s);
                    next[c + 1].push(carry);
                }
                [x] => next[c].push(x),
                _ => {}
            }
        }
        cols = next;
    }
    let outputs = cols
        .iter()
        .enumerate()
        .flat_map(|(c, bits)| bits.iter().map(move |&wire| OutputTerm { wire, weight: c as u32 }))
        .collect();
    b.finish(outputs)
}

/// A built multiplier net with its configuration. Nets of width up to 8
/// carry a full product table.
#[derive(Clone, Debug)]
pub struct NetMultiplier {
    config: MultiplierConfig,
    name: String,
    net: CircuitNet,
    lut: Option<Vec<u32>>,
}

const LUT_MAX_WIDTH: u32 = 8;

impl NetMultiplier {
    pub fn new(config: MultiplierConfig) -> Self {
        let net = match config.arch {
            Arch::Array => build_array(&config),
            Arch::Tree => build_tree(&config),
        };
        if config.width == 8 {
            check_census8(&config, &net);
        }
        let mut m = NetMultiplier {
            config,
            name: config.name(),
            net,
            lut: None,
        };
        if config.width <= LUT_MAX_WIDTH {
            let side = 1u64 << config.width;
            let mut scratch = Vec::new();
            let mut inputs = Vec::new();
            let lut = (0..side * side)
                .map(|idx| m.eval_net(idx >> config.width, idx & (side - 1), &mut inputs, &mut scratch) as u32)
                .collect();
            m.lut = Some(lut);
        }
        m
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(parse_name(name)?))
    }

    pub fn config(&self) -> &MultiplierConfig {
        &self.config
    }

    pub fn net(&self) -> &CircuitNet {
        &self.net
    }

    fn eval_net(&self, a: u64, b: u64, inputs: &mut Vec<bool>, scratch: &mut Vec<bool>) -> u64 {
        let w = self.config.width;
        inputs.clear();
        for i in 0..w {
            for j in 0..w {
                inputs.push((a >> j) & (b >> i) & 1 == 1);
            }
        }
        self.net.eval_with(inputs, scratch) & low_mask(2 * w)
    }

    /// Evaluates the netlist directly, bypassing the product table.
    pub fn mul_structural(&self, a: u64, b: u64) -> u64 {
        self.eval_net(a, b, &mut Vec::new(), &mut Vec::new())
    }

    /// Census used for area reporting. For the 8x8 tree this is the
    /// canonical 36 FA (18 LSB) + 15 HA census; otherwise it is the
    /// structural census of the net.
    pub fn census(&self) -> Census {
        if self.config.arch == Arch::Tree && self.config.width == 8 {
            let mut fa = BTreeMap::new();
            *fa.entry(self.config.msb_kind).or_insert(0) += TREE8_FA - TREE8_LSB_FA;
            *fa.entry(self.config.lsb_kind).or_insert(0) += TREE8_LSB_FA;
            Census::from_counts(fa, TREE8_HA)
        } else {
            self.net.census()
        }
    }

    /// Census of the cells actually present in the net.
    pub fn structural_census(&self) -> Census {
        self.net.census()
    }
}

fn check_census8(cfg: &MultiplierConfig, net: &CircuitNet) {
    let census = net.census();
    match cfg.arch {
        Arch::Array => {
            assert_eq!((census.fa_total(), census.ha), (48, 8), "8x8 array census");
            assert_eq!(net.fa_below(8), ARRAY8_LSB_FA, "8x8 array LSB region");
        }
        Arch::Tree => {
            assert_eq!(census.fa_total(), TREE8_FA, "8x8 tree FA count");
            assert_eq!(net.fa_below(8), TREE8_LSB_FA, "8x8 tree LSB region");
            if census.ha != TREE8_HA {
                log::debug!(
                    "{cfg}: Wallace net has {} half adders; area uses the canonical {TREE8_HA}",
                    census.ha
                );
            }
        }
    }
}

impl Multiplier for NetMultiplier {
    fn name(&self) -> &str {
        &self.name
    }

    fn width(&self) -> u32 {
        self.config.width
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        match &self.lut {
            Some(lut) => lut[((a << self.config.width) | b) as usize] as u64,
            None => self.mul_structural(a, b),
        }
    }

    fn area(&self) -> u64 {
        self.census().area
    }
}

/// The 22 approximate 8x8 array variants plus `EE`, in catalog order.
pub fn array8_designs() -> Vec<MultiplierConfig> {
    let mut out = vec![MultiplierConfig::exact(Arch::Array)];
    for kind in FaKind::APPROXIMATE {
        out.push(MultiplierConfig::new(Arch::Array, FaKind::Exact, kind));
        out.push(MultiplierConfig::new(Arch::Array, kind, kind));
    }
    out
}

/// Kinds used for the compressor-based (tree) variants.
pub const TREE_KINDS: [FaKind; 4] = [FaKind::Ama3, FaKind::Ama5, FaKind::Axa2, FaKind::InXa1];

/// `CEE` plus the eight tree variants, in catalog order.
pub fn tree8_designs() -> Vec<MultiplierConfig> {
    let mut out = vec![MultiplierConfig::exact(Arch::Tree)];
    for kind in TREE_KINDS {
        out.push(MultiplierConfig::new(Arch::Tree, FaKind::Exact, kind));
        out.push(MultiplierConfig::new(Arch::Tree, kind, kind));
    }
    out
}
