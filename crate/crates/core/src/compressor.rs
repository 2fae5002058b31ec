//! n-to-k compressors built from full and half adders.
//!
//! Wiring per size (all full adders share one kind, half adders are exact):
//!
//! | size | cells        | structure                                                        |
//! |------|--------------|------------------------------------------------------------------|
//! | 3-2  | 1 FA         | `FA(x1,x2,x3)`                                                   |
//! | 4-3  | 1 FA + 2 HA  | `FA(x1,x2,x3)`, `HA(s,x4)`, `HA(c,c')`                           |
//! | 5-3  | 2 FA + 1 HA  | `FA(x1,x2,x3)`, `FA(s,x4,x5)`, `HA` of the two carries          |
//! | 6-3  | 3 FA + 1 HA  | two FAs, `HA` on their sums, `FA` on the three weight-2 bits     |
//! | 7-3  | 4 FA         | two FAs, `FA(sA,sB,x7)`, `FA` on the three carries               |
//! | 8-4  | 4 FA + 3 HA  | two FAs and an HA, FA on sums, FA on carries, two HAs to resolve |

use serde::Serialize;

use crate::cells::FaKind;
use crate::error::{Error, Result};
use crate::net::{CircuitNet, NetBuilder, OutputTerm};

/// Supported compressor sizes as `(inputs, outputs)`.
pub const SHAPES: [(usize, usize); 6] = [(3, 2), (4, 3), (5, 3), (6, 3), (7, 3), (8, 4)];

#[derive(Clone, Debug, Serialize)]
pub struct Compressor {
    pub n_in: usize,
    pub k_out: usize,
    pub kind: FaKind,
    pub net: CircuitNet,
}

impl Compressor {
    /// Catalog-style name, e.g. `8-4/M5`.
    pub fn name(&self) -> String {
        format!("{}-{}/{}", self.n_in, self.k_out, self.kind)
    }

    pub fn eval(&self, bits: &[bool]) -> Result<Vec<bool>> {
        compressor_eval(self, bits)
    }

    pub fn area(&self) -> u64 {
        compressor_area(self)
    }
}

fn term(wire: u32, weight: u32) -> OutputTerm {
    OutputTerm { wire, weight }
}

pub fn build_compressor(n_in: usize, kind: FaKind) -> Result<Compressor> {
    let k_out = SHAPES
        .iter()
        .find(|(n, _)| *n == n_in)
        .map(|(_, k)| *k)
        .ok_or(Error::UnsupportedCompressor(n_in))?;
    let mut b = NetBuilder::new(n_in);
    let outputs = match n_in {
        3 => {
            let (s, c) = b.fa(kind, 0, 1, 2, 0);
            vec![term(s, 0), term(c, 1)]
        }
        4 => {
            let (s, c) = b.fa(kind, 0, 1, 2, 0);
            let (o0, c1) = b.ha(s, 3, 0);
            let (o1, o2) = b.ha(c, c1, 1);
            vec![term(o0, 0), term(o1, 1), term(o2, 2)]
        }
        5 => {
            let (s1, c1) = b.fa(kind, 0, 1, 2, 0);
            let (o0, c2) = b.fa(kind, s1, 3, 4, 0);
            let (o1, o2) = b.ha(c1, c2, 1);
            vec![term(o0, 0), term(o1, 1), term(o2, 2)]
        }
        6 => {
            let (sa, ca) = b.fa(kind, 0, 1, 2, 0);
            let (sb, cb) = b.fa(kind, 3, 4, 5, 0);
            let (o0, c) = b.ha(sa, sb, 0);
            let (o1, o2) = b.fa(kind, ca, cb, c, 1);
            vec![term(o0, 0), term(o1, 1), term(o2, 2)]
        }
        7 => {
            let (sa, ca) = b.fa(kind, 0, 1, 2, 0);
            let (sb, cb) = b.fa(kind, 3, 4, 5, 0);
            let (o0, c) = b.fa(kind, sa, sb, 6, 0);
            let (o1, o2) = b.fa(kind, ca, cb, c, 1);
            vec![term(o0, 0), term(o1, 1), term(o2, 2)]
        }
        8 => {
            let (sa, ca) = b.fa(kind, 0, 1, 2, 0);
            let (sb, cb) = b.fa(kind, 3, 4, 5, 0);
            let (sc, cc) = b.ha(6, 7, 0);
            let (o0, c1) = b.fa(kind, sa, sb, sc, 0);
            let (s2, c2) = b.fa(kind, ca, cb, cc, 1);
            let (o1, c3) = b.ha(c1, s2, 1);
            let (o2, o3) = b.ha(c2, c3, 2);
            vec![term(o0, 0), term(o1, 1), term(o2, 2), term(o3, 3)]
        }
        _ => unreachable!(),
    };
    Ok(Compressor {
        n_in,
        k_out,
        kind,
        net: b.finish(outputs),
    })
}

/// Evaluates the compressor; output bit `i` has weight `2^i`.
pub fn compressor_eval(c: &Compressor, bits: &[bool]) -> Result<Vec<bool>> {
    if bits.len() != c.n_in {
        return Err(Error::InputLength {
            expected: c.n_in,
            got: bits.len(),
        });
    }
    Ok(c.net.eval_terms(bits))
}

/// Weighted value of a compressor output vector.
pub fn output_value(bits: &[bool]) -> u64 {
    bits.iter().enumerate().map(|(i, &b)| (b as u64) << i).sum()
}

pub fn compressor_area(c: &Compressor) -> u64 {
    c.net.census().area
}
