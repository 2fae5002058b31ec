//! Bit-accurate simulation and design-space exploration of approximate
//! unsigned multipliers built from approximate full-adder cells.
//!
//! Structural circuits (cells, compressors, 8x8 array and Wallace-tree
//! multipliers) are evaluated at the bit level. 16x16 designs are composed
//! from four 8x8 blocks. Floating-point layers are generic over [`Scalar`];
//! the aliases below fix them to `f64`.

pub mod catalog;
pub mod cells;
pub mod compose;
pub mod compressor;
pub mod cost;
pub mod design;
pub mod error;
pub mod imaging;
pub mod metrics;
pub mod mult8;
pub mod multiplier;
pub mod net;
pub mod pareto;
pub mod sweep;

pub use catalog::{catalog_lookup, Catalog, CatalogEntry, EntryClass};
pub use cells::{cell_metrics, fa_error_rows, fa_eval, FaCell, FaKind};
pub use compose::{build16, ComposedMultiplier};
pub use compressor::{build_compressor, Compressor};
pub use cost::{fitness, pdp, reduction, Metric};
pub use design::{build_design, DesignSet};
pub use error::{Error, Result};
pub use imaging::{blend, blend_reference, read_pgm, snr, write_pgm, GrayImage};
pub use metrics::{eval_exhaustive, eval_sampled, Evaluator, MredConvention, Strategy};
pub use mult8::{Arch, MultiplierConfig, NetMultiplier};
pub use multiplier::{ExactMultiplier, Multiplier};
pub use net::{Census, CircuitNet};
pub use pareto::{dominates, pareto_front, Objective, ParetoPoint, Sense};

/// Floating-point type used by reports, costs and SNR.
pub trait Scalar: num_traits::Float + std::fmt::Debug + Send + Sync + 'static {}

impl<T: num_traits::Float + std::fmt::Debug + Send + Sync + 'static> Scalar for T {}

pub type ErrorReport = metrics::ErrorReport<f64>;
pub type FitnessCoeffs = cost::FitnessCoeffs<f64>;
