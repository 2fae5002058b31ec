//! Multi-objective dominance and Pareto fronts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Objective {
    pub name: String,
    pub sense: Sense,
}

impl Objective {
    pub fn max(name: impl Into<String>) -> Self {
        Objective {
            name: name.into(),
            sense: Sense::Maximize,
        }
    }

    pub fn min(name: impl Into<String>) -> Self {
        Objective {
            name: name.into(),
            sense: Sense::Minimize,
        }
    }
}

/// A named design with one value per objective. Values only need a partial
/// order, so exact rationals work as well as floats.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParetoPoint<T> {
    pub name: String,
    pub objectives: Vec<Objective>,
    pub values: Vec<T>,
}

impl<T> ParetoPoint<T> {
    pub fn new(name: impl Into<String>, objectives: Vec<Objective>, values: Vec<T>) -> Result<Self> {
        if objectives.len() != values.len() {
            return Err(Error::SchemaMismatch);
        }
        Ok(ParetoPoint {
            name: name.into(),
            objectives,
            values,
        })
    }
}

fn at_least<T: PartialOrd>(sense: Sense, a: &T, b: &T) -> bool {
    match sense {
        Sense::Maximize => a >= b,
        Sense::Minimize => a <= b,
    }
}

fn strictly<T: PartialOrd>(sense: Sense, a: &T, b: &T) -> bool {
    match sense {
        Sense::Maximize => a > b,
        Sense::Minimize => a < b,
    }
}

fn dominates_unchecked<T: PartialOrd>(p: &ParetoPoint<T>, q: &ParetoPoint<T>) -> bool {
    let mut better = false;
    for ((o, a), b) in p.objectives.iter().zip(&p.values).zip(&q.values) {
        if !at_least(o.sense, a, b) {
            return false;
        }
        better |= strictly(o.sense, a, b);
    }
    better
}

/// `p` is no worse than `q` everywhere and strictly better somewhere.
pub fn dominates<T: PartialOrd>(p: &ParetoPoint<T>, q: &ParetoPoint<T>) -> Result<bool> {
    if p.objectives != q.objectives || p.values.len() != q.values.len() {
        return Err(Error::SchemaMismatch);
    }
    Ok(dominates_unchecked(p, q))
}

/// Indices of the non-dominated points, ascending.
pub fn pareto_indices<T: PartialOrd>(points: &[ParetoPoint<T>]) -> Result<Vec<usize>> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    if points
        .iter()
        .any(|p| p.objectives != first.objectives || p.values.len() != first.values.len())
    {
        return Err(Error::SchemaMismatch);
    }
    // Incremental front: a newcomer either is dominated by a member or
    // evicts every member it dominates. Transitivity keeps earlier
    // rejections valid.
    let mut front: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if front.iter().any(|&j| dominates_unchecked(&points[j], p)) {
            continue;
        }
        front.retain(|&j| !dominates_unchecked(p, &points[j]));
        front.push(i);
    }
    front.sort_unstable();
    Ok(front)
}

/// The non-dominated points in input order.
pub fn pareto_front<T: PartialOrd>(points: &[ParetoPoint<T>]) -> Result<Vec<&ParetoPoint<T>>> {
    Ok(pareto_indices(points)?.into_iter().map(|i| &points[i]).collect())
}
