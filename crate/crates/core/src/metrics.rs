//! Error metrics of approximate multipliers.
//!
//! Counts and error-distance sums are accumulated in integers, so ER, MED
//! and the maximum error distance are exact and independent of how the input
//! space is split across workers. Relative errors are summed per fixed-size
//! chunk and the chunk sums are combined in chunk order, which makes MRED
//! bit-identical for any worker count as well.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiplier::{low_mask, Multiplier};
use crate::Scalar;

/// Widest multiplier that may be swept exhaustively (2^24 pairs).
pub const MAX_EXHAUSTIVE_WIDTH: u32 = 12;

/// Pairs per work chunk; fixed so that results do not depend on workers.
const CHUNK: u64 = 1 << 16;

/// Absolute error distance.
#[inline]
pub fn ed(exact: u64, approx: u64) -> u64 {
    exact.abs_diff(approx)
}

/// MED normalized by the largest exact product of a `width`-bit multiplier.
pub fn nmed<F: Scalar>(med: F, width: u32) -> F {
    let max = F::from(low_mask(width)).unwrap();
    med / (max * max)
}

/// Treatment of operand pairs whose exact product is zero in MRED.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MredConvention {
    /// Exclude them from the average and count them in `mred_skipped`.
    #[default]
    Skip,
    /// Count them with a relative error of zero.
    Zero,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Independent uniform operand pairs.
    #[default]
    Uniform,
    /// One uniform draw from each of `n` equal strata of the operand grid.
    Stratified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EvalMode {
    Exhaustive,
    Sampled { n: u64, seed: u64, strategy: Strategy },
}

/// Error metrics of one multiplier.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport<F> {
    pub width: u32,
    pub mode: EvalMode,
    pub mred_convention: MredConvention,
    /// Operand pairs evaluated.
    pub pairs: u64,
    /// Pairs with a wrong product.
    pub erroneous: u64,
    pub ed_sum: u128,
    pub ed_sq_sum: u128,
    pub max_ed: u64,
    pub mred_skipped: u64,
    pub er: F,
    pub med: F,
    pub nmed: F,
    pub mred: F,
}

impl<F: Scalar> ErrorReport<F> {
    /// Standard error of the MED estimate.
    pub fn med_std_error(&self) -> F {
        let n = F::from(self.pairs).unwrap();
        if self.pairs < 2 {
            return F::zero();
        }
        let mean = self.med;
        let mean_sq = F::from(self.ed_sq_sum).unwrap() / n;
        let var = (mean_sq - mean * mean) * n / (n - F::one());
        (var.max(F::zero()) / n).sqrt()
    }
}

#[derive(Clone, Copy, Debug)]
struct Tally<F> {
    pairs: u64,
    erroneous: u64,
    ed_sum: u128,
    ed_sq_sum: u128,
    max_ed: u64,
    zero_exact: u64,
    red_sum: F,
}

impl<F: Scalar> Tally<F> {
    fn new() -> Self {
        Tally {
            pairs: 0,
            erroneous: 0,
            ed_sum: 0,
            ed_sq_sum: 0,
            max_ed: 0,
            zero_exact: 0,
            red_sum: F::zero(),
        }
    }

    #[inline]
    fn add(&mut self, exact: u64, approx: u64) {
        let d = ed(exact, approx);
        self.pairs += 1;
        if d != 0 {
            self.erroneous += 1;
            self.ed_sum += d as u128;
            self.ed_sq_sum += (d as u128) * (d as u128);
            self.max_ed = self.max_ed.max(d);
        }
        if exact == 0 {
            self.zero_exact += 1;
        } else if d != 0 {
            self.red_sum = self.red_sum + F::from(d).unwrap() / F::from(exact).unwrap();
        }
    }

    fn merge(mut self, other: &Self) -> Self {
        self.pairs += other.pairs;
        self.erroneous += other.erroneous;
        self.ed_sum += other.ed_sum;
        self.ed_sq_sum += other.ed_sq_sum;
        self.max_ed = self.max_ed.max(other.max_ed);
        self.zero_exact += other.zero_exact;
        self.red_sum = self.red_sum + other.red_sum;
        self
    }
}

/// Evaluation settings: worker count and MRED convention.
#[derive(Clone, Copy, Debug, Default)]
pub struct Evaluator {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub mred: MredConvention,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers.max(1));
        self
    }

    pub fn mred(mut self, convention: MredConvention) -> Self {
        self.mred = convention;
        self
    }

    /// Every operand pair of `m`.
    pub fn exhaustive<F: Scalar, M: Multiplier + ?Sized>(&self, m: &M) -> Result<ErrorReport<F>> {
        self.exhaustive_below(m, m.width())
    }

    /// Every operand pair with both operands below `2^bits`. NMED is still
    /// normalized by the multiplier's full output range.
    pub fn exhaustive_below<F: Scalar, M: Multiplier + ?Sized>(&self, m: &M, bits: u32) -> Result<ErrorReport<F>> {
        if bits > MAX_EXHAUSTIVE_WIDTH || bits > m.width() {
            return Err(Error::WidthTooLarge {
                width: bits,
                what: "exhaustive evaluation",
            });
        }
        let total = 1u64 << (2 * bits);
        let mask = low_mask(bits);
        let tally = self.run(total.div_ceil(CHUNK), |chunk| {
            let mut t = Tally::new();
            for idx in chunk * CHUNK..((chunk + 1) * CHUNK).min(total) {
                let (a, b) = (idx >> bits, idx & mask);
                t.add(a * b, m.mul(a, b));
            }
            t
        })?;
        Ok(self.finish(m.width(), EvalMode::Exhaustive, tally))
    }

    /// `n` operand pairs drawn from a ChaCha8 stream seeded with `seed`.
    pub fn sampled<F: Scalar, M: Multiplier + ?Sized>(
        &self,
        m: &M,
        n: u64,
        seed: u64,
        strategy: Strategy,
    ) -> Result<ErrorReport<F>> {
        if n == 0 {
            return Err(Error::ZeroSamples);
        }
        let w = m.width();
        if w > 32 {
            return Err(Error::WidthTooLarge {
                width: w,
                what: "sampled evaluation",
            });
        }
        let mask = low_mask(w);
        let grid = 1u128 << (2 * w);
        if strategy == Strategy::Stratified && n as u128 > grid {
            return Err(Error::InvalidDesign {
                name: m.name().to_string(),
                reason: format!("{n} strata exceed the {grid}-pair operand grid"),
            });
        }
        let tally = self.run(n.div_ceil(CHUNK), |chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // One u64 (two 32-bit words) per sample.
            rng.set_word_pos(2 * start as u128);
            let mut t = Tally::new();
            for k in start..end {
                let draw = rng.next_u64();
                let (a, b) = match strategy {
                    Strategy::Uniform => (draw & mask, (draw >> w) & mask),
                    Strategy::Stratified => {
                        let lo = k as u128 * grid / n as u128;
                        let hi = (k as u128 + 1) * grid / n as u128;
                        let idx = (lo + draw as u128 % (hi - lo)) as u64;
                        (idx >> w, idx & mask)
                    }
                };
                t.add(a * b, m.mul(a, b));
            }
            t
        })?;
        Ok(self.finish(w, EvalMode::Sampled { n, seed, strategy }, tally))
    }

    fn run<F, G>(&self, chunks: u64, f: G) -> Result<Tally<F>>
    where
        F: Scalar,
        G: Fn(u64) -> Tally<F> + Sync,
    {
        let collect = || (0..chunks).into_par_iter().map(&f).collect::<Vec<_>>();
        let parts = match self.workers {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(std::io::Error::other(e)))?
                .install(collect),
            None => collect(),
        };
        Ok(parts.iter().fold(Tally::new(), |acc, t| acc.merge(t)))
    }

    fn finish<F: Scalar>(&self, width: u32, mode: EvalMode, t: Tally<F>) -> ErrorReport<F> {
        let n = F::from(t.pairs).unwrap();
        let med = F::from(t.ed_sum).unwrap() / n;
        let (mred_pairs, skipped) = match self.mred {
            MredConvention::Skip => (t.pairs - t.zero_exact, t.zero_exact),
            MredConvention::Zero => (t.pairs, 0),
        };
        let mred = if mred_pairs == 0 {
            F::zero()
        } else {
            t.red_sum / F::from(mred_pairs).unwrap()
        };
        ErrorReport {
            width,
            mode,
            mred_convention: self.mred,
            pairs: t.pairs,
            erroneous: t.erroneous,
            ed_sum: t.ed_sum,
            ed_sq_sum: t.ed_sq_sum,
            max_ed: t.max_ed,
            mred_skipped: skipped,
            er: F::from(t.erroneous).unwrap() / n,
            med,
            nmed: nmed(med, width),
            mred,
        }
    }
}

/// Exhaustive evaluation with default settings.
pub fn eval_exhaustive<F: Scalar, M: Multiplier + ?Sized>(m: &M) -> Result<ErrorReport<F>> {
    Evaluator::new().exhaustive(m)
}

/// Uniform seeded sampling with default settings.
pub fn eval_sampled<F: Scalar, M: Multiplier + ?Sized>(m: &M, n: u64, seed: u64) -> Result<ErrorReport<F>> {
    Evaluator::new().sampled(m, n, seed, Strategy::Uniform)
}
