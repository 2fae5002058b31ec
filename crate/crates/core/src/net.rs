//! Structural netlists of full- and half-adder instances.
//!
//! A [`CircuitNet`] is the common representation of compressors and
//! multipliers. Wires are numbered densely: the first `n_inputs` wires are
//! primary inputs (partial-product bits for multipliers), every cell then
//! appends its sum and carry wires. Cells are stored in topological order, so
//! evaluation is a single forward pass.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cells::{ha_eval, FaCell, FaKind, HA_AREA};

pub type WireId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "kind")]
pub enum CellType {
    #[serde(rename = "FA")]
    Full(FaKind),
    #[serde(rename = "HA")]
    Half,
}

/// One adder instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    #[serde(flatten)]
    pub ty: CellType,
    /// `(a, b, cin)` for full adders; half adders use the first two.
    pub inputs: [WireId; 3],
    pub sum: WireId,
    pub carry: WireId,
    /// Bit position (weight) of the sum output.
    pub column: u32,
}

impl Cell {
    pub fn fa_kind(&self) -> Option<FaKind> {
        match self.ty {
            CellType::Full(kind) => Some(kind),
            CellType::Half => None,
        }
    }
}

/// A weighted output term: the value of the net is `Σ wire << weight`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OutputTerm {
    pub wire: WireId,
    pub weight: u32,
}

/// Cell counts and transistor area of a net. AND gates are not counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub fa: BTreeMap<FaKind, usize>,
    pub ha: usize,
    pub area: u64,
}

impl Census {
    pub fn from_counts(fa: BTreeMap<FaKind, usize>, ha: usize) -> Self {
        let area = fa
            .iter()
            .map(|(kind, n)| *n as u64 * FaCell::get(*kind).metrics.size)
            .sum::<u64>()
            + ha as u64 * HA_AREA;
        Census { fa, ha, area }
    }

    pub fn fa_total(&self) -> usize {
        self.fa.values().sum()
    }

    pub fn fa_of(&self, kind: FaKind) -> usize {
        self.fa.get(&kind).copied().unwrap_or(0)
    }
}

/// Immutable netlist. Build one with [`NetBuilder`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitNet {
    n_inputs: u32,
    n_wires: u32,
    cells: Vec<Cell>,
    outputs: Vec<OutputTerm>,
}

impl CircuitNet {
    pub fn n_inputs(&self) -> usize {
        self.n_inputs as usize
    }

    pub fn n_wires(&self) -> usize {
        self.n_wires as usize
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn outputs(&self) -> &[OutputTerm] {
        &self.outputs
    }

    /// Evaluates the net; `inputs[i]` drives wire `i`. Returns the weighted
    /// output sum.
    pub fn eval(&self, inputs: &[bool]) -> u64 {
        let mut scratch = Vec::new();
        self.eval_with(inputs, &mut scratch)
    }

    /// As [`eval`](Self::eval), reusing `scratch` for the wire values.
    pub fn eval_with(&self, inputs: &[bool], scratch: &mut Vec<bool>) -> u64 {
        self.eval_traced(inputs, scratch, |_, _, _| {})
    }

    /// Evaluates the net, calling `visit(cell_index, inputs, outputs)` for
    /// every cell in evaluation order.
    pub fn eval_traced<F>(&self, inputs: &[bool], scratch: &mut Vec<bool>, mut visit: F) -> u64
    where
        F: FnMut(usize, [bool; 3], (bool, bool)),
    {
        assert_eq!(inputs.len(), self.n_inputs(), "input vector length");
        scratch.clear();
        scratch.resize(self.n_wires(), false);
        scratch[..inputs.len()].copy_from_slice(inputs);
        for (idx, cell) in self.cells.iter().enumerate() {
            let [a, b, c] = cell.inputs.map(|w| scratch[w as usize]);
            let out = match cell.ty {
                CellType::Full(kind) => FaCell::get(kind).eval(a, b, c),
                CellType::Half => ha_eval(a, b),
            };
            scratch[cell.sum as usize] = out.0;
            scratch[cell.carry as usize] = out.1;
            visit(idx, [a, b, c], out);
        }
        self.outputs
            .iter()
            .map(|t| (scratch[t.wire as usize] as u64) << t.weight)
            .sum()
    }

    /// Values of the output terms, in declaration order.
    pub fn eval_terms(&self, inputs: &[bool]) -> Vec<bool> {
        let mut scratch = Vec::new();
        self.eval_with(inputs, &mut scratch);
        self.outputs.iter().map(|t| scratch[t.wire as usize]).collect()
    }

    pub fn census(&self) -> Census {
        let mut fa = BTreeMap::new();
        let mut ha = 0;
        for cell in &self.cells {
            match cell.ty {
                CellType::Full(kind) => *fa.entry(kind).or_insert(0) += 1,
                CellType::Half => ha += 1,
            }
        }
        Census::from_counts(fa, ha)
    }

    /// Full adders whose sum lands below `column`.
    pub fn fa_below(&self, column: u32) -> usize {
        self.cells
            .iter()
            .filter(|c| c.fa_kind().is_some() && c.column < column)
            .count()
    }

    /// Structural JSON listing (cells, kinds, columns, outputs).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("net serializes")
    }
}

/// Incremental construction of a [`CircuitNet`] in topological order.
#[derive(Debug)]
pub struct NetBuilder {
    n_inputs: u32,
    next_wire: u32,
    cells: Vec<Cell>,
}

impl NetBuilder {
    pub fn new(n_inputs: usize) -> Self {
        NetBuilder {
            n_inputs: n_inputs as u32,
            next_wire: n_inputs as u32,
            cells: Vec::new(),
        }
    }

    fn fresh(&mut self) -> WireId {
        let w = self.next_wire;
        self.next_wire += 1;
        w
    }

    fn check(&self, w: WireId) {
        assert!(w < self.next_wire, "wire {w} used before it is driven");
    }

    /// Adds a full adder; returns `(sum, carry)`.
    pub fn fa(&mut self, kind: FaKind, a: WireId, b: WireId, cin: WireId, column: u32) -> (WireId, WireId) {
        for w in [a, b, cin] {
            self.check(w);
        }
        let (sum, carry) = (self.fresh(), self.fresh());
        self.cells.push(Cell {
            ty: CellType::Full(kind),
            inputs: [a, b, cin],
            sum,
            carry,
            column,
        });
        (sum, carry)
    }

    /// Adds a half adder; returns `(sum, carry)`.
    pub fn ha(&mut self, a: WireId, b: WireId, column: u32) -> (WireId, WireId) {
        self.check(a);
        self.check(b);
        let (sum, carry) = (self.fresh(), self.fresh());
        self.cells.push(Cell {
            ty: CellType::Half,
            inputs: [a, b, b],
            sum,
            carry,
            column,
        });
        (sum, carry)
    }

    pub fn finish(self, outputs: Vec<OutputTerm>) -> CircuitNet {
        for t in &outputs {
            self.check(t.wire);
        }
        CircuitNet {
            n_inputs: self.n_inputs,
            n_wires: self.next_wire,
            cells: self.cells,
            outputs,
        }
    }
}
