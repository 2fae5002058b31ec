//! Higher-order multipliers from four half-width blocks.
//!
//! With `a = aH·2^h + aL` and `b = bH·2^h + bL` the product is
//! `HH(aH,bH)·2^2h + HL(aH,bL)·2^h + LH(aL,bH)·2^h + LL(aL,bL)`. The four
//! sub-products are summed exactly.

use std::sync::Arc;

use rayon::prelude::*;

use crate::cells::FaKind;
use crate::error::{Error, Result};
use crate::mult8::{parse_name, Arch, MultiplierConfig, NetMultiplier};
use crate::multiplier::{low_mask, Multiplier};

pub type Block = Arc<dyn Multiplier>;

/// Four blocks of equal width `h` forming a `2h`-bit multiplier.
#[derive(Clone)]
pub struct ComposedMultiplier {
    name: String,
    half: u32,
    /// `[HH, HL, LH, LL]`.
    blocks: [Block; 4],
}

impl std::fmt::Debug for ComposedMultiplier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComposedMultiplier")
            .field("name", &self.name)
            .field("blocks", &self.block_names())
            .finish()
    }
}

impl ComposedMultiplier {
    pub fn new(name: impl Into<String>, hh: Block, hl: Block, lh: Block, ll: Block) -> Result<Self> {
        let half = hh.width();
        let name = name.into();
        if [&hl, &lh, &ll].iter().any(|b| b.width() != half) {
            return Err(Error::InvalidDesign {
                name,
                reason: "blocks must share one width".into(),
            });
        }
        if 2 * half > 32 {
            return Err(Error::WidthTooLarge {
                width: 2 * half,
                what: "composition",
            });
        }
        Ok(ComposedMultiplier {
            name,
            half,
            blocks: [hh, hl, lh, ll],
        })
    }

    pub fn blocks(&self) -> &[Block; 4] {
        &self.blocks
    }

    pub fn block_names(&self) -> [&str; 4] {
        [
            self.blocks[0].name(),
            self.blocks[1].name(),
            self.blocks[2].name(),
            self.blocks[3].name(),
        ]
    }

    /// Evaluates a batch of operand pairs, fanning the four sub-products of
    /// each pair out over the rayon pool.
    pub fn mul_batch(&self, pairs: &[(u64, u64)]) -> Vec<u64> {
        pairs.par_iter().map(|&(a, b)| self.mul(a, b)).collect()
    }
}

impl Multiplier for ComposedMultiplier {
    fn name(&self) -> &str {
        &self.name
    }

    fn width(&self) -> u32 {
        2 * self.half
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let h = self.half;
        let mask = low_mask(h);
        let (ah, al, bh, bl) = (a >> h, a & mask, b >> h, b & mask);
        let [hh, hl, lh, ll] = &self.blocks;
        (hh.mul(ah, bh) << (2 * h)) + (hl.mul(ah, bl) << h) + (lh.mul(al, bh) << h) + ll.mul(al, bl)
    }

    fn area(&self) -> u64 {
        compose_area(self)
    }
}

/// Sum of the four block areas.
pub fn compose_area(m: &ComposedMultiplier) -> u64 {
    m.blocks.iter().map(|b| b.area()).sum()
}

/// Builds the placement scheme around a low block `ll` of the given
/// architecture: exact HH, `E<lsb>` partial variants for HL and LH.
pub fn compose_scheme(name: impl Into<String>, ll: MultiplierConfig) -> Result<ComposedMultiplier> {
    let hh = MultiplierConfig::exact(ll.arch).with_width(ll.width);
    let mid = MultiplierConfig {
        msb_kind: FaKind::Exact,
        ..ll
    };
    let mid_block: Block = Arc::new(NetMultiplier::new(mid));
    ComposedMultiplier::new(
        name,
        Arc::new(NetMultiplier::new(hh)),
        mid_block.clone(),
        mid_block,
        Arc::new(NetMultiplier::new(ll)),
    )
}

/// Builds a 16x16 design from its name, e.g. `16EM1`, `16CM5M5`.
pub fn build16(name: &str) -> Result<ComposedMultiplier> {
    let variant = name.strip_prefix("16").ok_or_else(|| Error::InvalidDesign {
        name: name.to_string(),
        reason: "16x16 names start with `16`".into(),
    })?;
    let ll = parse_name(variant).map_err(|_| Error::InvalidDesign {
        name: name.to_string(),
        reason: "unknown 8x8 variant".into(),
    })?;
    compose_scheme(name, ll)
}

/// `16EE` plus the 22 array variants.
pub fn array16_names() -> Vec<String> {
    crate::mult8::array8_designs()
        .iter()
        .map(|c| format!("16{c}"))
        .collect()
}

/// `16CEE` plus the 8 tree variants.
pub fn tree16_names() -> Vec<String> {
    crate::mult8::tree8_designs().iter().map(|c| format!("16{c}")).collect()
}

/// Architecture of a composed design's blocks.
pub fn arch_of(m: &ComposedMultiplier) -> Arch {
    if m.blocks[0].name().starts_with('C') {
        Arch::Tree
    } else {
        Arch::Array
    }
}
