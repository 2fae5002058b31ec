//! PDP, percentage reductions and the weighted fitness score.

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::Scalar;

/// Power-delay product: `power · delay / 1000`.
///
/// Multiplier and compressor rows store µW, giving femtojoules. Cell rows
/// store nW and so land on the scale the cell table prints as fJ.
pub fn pdp<F: Scalar>(entry: &CatalogEntry) -> Result<F> {
    let delay = entry.delay_ps.ok_or_else(|| Error::MissingMetric {
        name: entry.name.clone(),
        metric: "delay",
    })?;
    Ok(F::from(entry.power).unwrap() * F::from(delay).unwrap() / F::from(1000.0).unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Area,
    Pdp,
    Power,
    Delay,
}

fn metric_value<F: Scalar>(entry: &CatalogEntry, metric: Metric) -> Result<F> {
    let missing = |metric| Error::MissingMetric {
        name: entry.name.clone(),
        metric,
    };
    Ok(match metric {
        Metric::Area => F::from(entry.size).unwrap(),
        Metric::Power => F::from(entry.power).unwrap(),
        Metric::Delay => F::from(entry.delay_ps.ok_or_else(|| missing("delay"))?).unwrap(),
        Metric::Pdp => pdp(entry)?,
    })
}

/// `100 · (exact − design) / exact`; negative when the design is worse.
pub fn reduction<F: Scalar>(exact: &CatalogEntry, design: &CatalogEntry, metric: Metric) -> Result<F> {
    let base: F = metric_value(exact, metric)?;
    if base <= F::zero() {
        return Err(Error::ZeroBaseline("reduction"));
    }
    let value: F = metric_value(design, metric)?;
    Ok(reduction_of(base, value))
}

/// Percentage reduction of `value` relative to a positive `base`.
pub fn reduction_of<F: Scalar>(base: F, value: F) -> F {
    F::from(100.0).unwrap() * (base - value) / base
}

/// Weights for area, power, delay, error and PDP.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitnessCoeffs<F> {
    pub c1: F,
    pub c2: F,
    pub c3: F,
    pub c4: F,
    pub c5: F,
}

impl<F: Scalar> FitnessCoeffs<F> {
    pub fn new(c1: F, c2: F, c3: F, c4: F, c5: F) -> Result<Self> {
        let c = FitnessCoeffs { c1, c2, c3, c4, c5 };
        c.validate()?;
        Ok(c)
    }

    pub fn uniform(c: F) -> Result<Self> {
        Self::new(c, c, c, c, c)
    }

    fn validate(&self) -> Result<()> {
        for c in [self.c1, self.c2, self.c3, self.c4, self.c5] {
            if !(c >= F::zero() && c <= F::one()) {
                return Err(Error::CoefficientRange(c.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(())
    }

    pub fn scaled(&self, k: F) -> Result<Self> {
        Self::new(self.c1 * k, self.c2 * k, self.c3 * k, self.c4 * k, self.c5 * k)
    }
}

/// Weighted cost with area, power, delay and PDP normalized by `baseline`.
/// `error` is the error-row count for cells and ER for multipliers. Lower
/// is better.
pub fn fitness<F: Scalar>(
    entry: &CatalogEntry,
    error: F,
    coeffs: &FitnessCoeffs<F>,
    baseline: &CatalogEntry,
) -> Result<F> {
    coeffs.validate()?;
    let ratio = |m| -> Result<F> {
        let base: F = metric_value(baseline, m)?;
        if base <= F::zero() {
            return Err(Error::ZeroBaseline("fitness"));
        }
        Ok(metric_value::<F>(entry, m)? / base)
    };
    Ok(coeffs.c1 * ratio(Metric::Area)?
        + coeffs.c2 * ratio(Metric::Power)?
        + coeffs.c3 * ratio(Metric::Delay)?
        + coeffs.c4 * error
        + coeffs.c5 * ratio(Metric::Pdp)?)
}
