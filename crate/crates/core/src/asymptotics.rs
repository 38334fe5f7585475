//! Eventual quasilinearity of omega on a numerical monoid.
//!
//! For large `n`, `omega(n) = floor(n / n1) + c[n mod n1]` for an integer
//! intercept table `c`, where `n1` is the smallest generator. The fit reads the
//! table off the top of a computed series and then searches the whole series
//! for the last element where the model fails (the dissonance point).

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerical::NumericalMonoid;
use crate::omega::{omega_value, DEFAULT_SEARCH_BUDGET};

pub const DEFAULT_STABILITY_WINDOW: u64 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaSeries {
    pub monoid: NumericalMonoid,
    pub lo: i64,
    pub hi: i64,
    /// `(n, omega(n))` for every non-zero member in `[lo, hi]`, ascending.
    pub entries: Vec<(i64, u64)>,
}

pub fn omega_series(monoid: &NumericalMonoid, lo: i64, hi: i64) -> Result<OmegaSeries> {
    omega_series_with_budget(monoid, lo, hi, DEFAULT_SEARCH_BUDGET)
}

pub fn omega_series_with_budget(
    monoid: &NumericalMonoid,
    lo: i64,
    hi: i64,
    budget: u64,
) -> Result<OmegaSeries> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range [{lo}, {hi}]")));
    }
    let members: Vec<i64> = (lo.max(1)..=hi).filter(|&n| monoid.contains(n)).collect();
    let entries = members
        .par_iter()
        .map(|&n| omega_value(monoid, n, budget).map(|w| (n, w)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OmegaSeries { monoid: monoid.clone(), lo, hi, entries })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasilinearModel {
    pub n1: u64,
    /// `model(n) = floor(n / n1) + intercepts[n mod n1]`
    pub intercepts: Vec<i64>,
    /// Largest member of the series where omega differs from the model.
    /// `None` means the model fits the whole series.
    pub dissonance: Option<i64>,
    /// Lowest and highest element of the series the model was checked on.
    pub certified_from: i64,
    pub certified_through: i64,
}

impl QuasilinearModel {
    pub fn new(n1: u64, intercepts: Vec<i64>) -> Result<Self> {
        if n1 == 0 || intercepts.len() != n1 as usize {
            return Err(Error::InvalidArgument(format!(
                "need {n1} intercepts, got {}",
                intercepts.len()
            )));
        }
        Ok(QuasilinearModel {
            n1,
            intercepts,
            dissonance: None,
            certified_from: 0,
            certified_through: 0,
        })
    }

    pub fn eval(&self, n: i64) -> i64 {
        let n1 = self.n1 as i64;
        n.div_euclid(n1) + self.intercepts[n.rem_euclid(n1) as usize]
    }

    pub fn max_intercept(&self) -> i64 {
        *self.intercepts.iter().max().unwrap()
    }

    /// First element from which the model is known to hold through
    /// `certified_through`.
    pub fn tail_start(&self) -> i64 {
        self.dissonance.map_or(self.certified_from, |d| d + 1)
    }
}

pub fn fit_quasilinear(series: &OmegaSeries, stability_window: u64) -> Result<QuasilinearModel> {
    if stability_window == 0 {
        return Err(Error::InvalidArgument("stability window must be positive".into()));
    }
    let n1 = series.monoid.multiplicity();
    let needed = ((stability_window + 2) * n1) as usize;
    if series.entries.len() < needed {
        return Err(Error::SeriesTooShort { needed, have: series.entries.len() });
    }

    let floor = |n: i64| n.div_euclid(n1 as i64);
    let window_start = series.hi - (stability_window * n1) as i64 + 1;
    let mut intercepts: Vec<Option<i64>> = vec![None; n1 as usize];
    for &(n, w) in series.entries.iter().filter(|&&(n, _)| n >= window_start) {
        let r = n.rem_euclid(n1 as i64) as usize;
        let c = w as i64 - floor(n);
        match intercepts[r] {
            None => intercepts[r] = Some(c),
            Some(prev) if prev != c => return Err(Error::WindowUnstable { at: n }),
            Some(_) => {}
        }
    }
    // every element of the window must be a member, else the series stops
    // before the Frobenius number
    if let Some(gap) = (window_start..=series.hi).find(|&n| !series.monoid.contains(n)) {
        return Err(Error::WindowUnstable { at: gap });
    }
    let intercepts: Vec<i64> = intercepts.into_iter().map(|c| c.unwrap()).collect();
    let mut model = QuasilinearModel::new(n1, intercepts)?;
    model.dissonance = series
        .entries
        .iter()
        .rev()
        .find(|&&(n, w)| model.eval(n) != w as i64)
        .map(|&(n, _)| n);
    model.certified_from = series.entries.first().map_or(series.lo, |e| e.0);
    model.certified_through = series.hi;
    Ok(model)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub period: u64,
    /// True when the period is the full `n1`.
    pub full: bool,
}

/// Least `p | n1` for which `n -> model(n) - n / n1` is `p`-periodic.
pub fn minimal_period(model: &QuasilinearModel) -> PeriodReport {
    let n1 = model.n1 as i64;
    // compare n1 * model(n) - n exactly, over one full period of n
    let offset = |n: i64| n1 * model.eval(n) - n;
    let period = (1..=n1)
        .filter(|p| n1 % p == 0)
        .find(|&p| (0..n1).all(|r| offset(r) == offset(r + p)))
        .unwrap() as u64;
    PeriodReport { period, full: period == model.n1 }
}

/// `omega(n) / n` as an exact fraction.
pub fn asymptotic_ratio(monoid: &NumericalMonoid, n: i64) -> Result<Ratio<i64>> {
    asymptotic_ratio_with_budget(monoid, n, DEFAULT_SEARCH_BUDGET)
}

pub fn asymptotic_ratio_with_budget(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<Ratio<i64>> {
    if !monoid.contains(n) {
        return Err(Error::NotAMember(n.to_string()));
    }
    if n <= monoid.frobenius_number() {
        return Err(Error::BelowFrobenius(n));
    }
    let w = omega_value(monoid, n, budget)?;
    Ok(Ratio::new(w as i64, n))
}
