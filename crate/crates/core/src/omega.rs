//! Bullets and omega-primality in numerical monoids.
//!
//! A vector `a` in N^k is a bullet for `n` when `n` divides `sum a_i n_i` in the
//! monoid but no longer divides it after removing any single generator that
//! occurs in `a`. omega(n) is the largest length of a bullet.
//!
//! Every bullet lies in the box `a_i <= b_i`, where `b_i` is the least positive
//! multiple of `n_i` that `n` divides. [`bullets`] walks that box depth-first,
//! cutting a branch as soon as some generator already placed has become
//! removable, and solves for the last coordinate directly from the Apéry set of
//! the largest generator. [`bullets_box_scan`] is the literal exhaustive scan
//! and [`omega_oracle`] a length-ordered enumeration; both exist to check the
//! fast path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerical::{FactorizationVector, NumericalMonoid};

/// Default cap on candidate vectors examined by a bullet search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Default cap on vectors enumerated by [`omega_oracle`].
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BulletSet {
    pub element: i64,
    /// Lexicographically sorted.
    pub bullets: Vec<FactorizationVector>,
    pub bounds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaResult {
    pub element: i64,
    pub omega: u64,
    pub bullet_set: BulletSet,
    pub maximal_bullets: Vec<FactorizationVector>,
}

fn check_element(monoid: &NumericalMonoid, n: i64) -> Result<()> {
    if !monoid.contains(n) {
        return Err(Error::NotAMember(n.to_string()));
    }
    if n == 0 {
        return Err(Error::ZeroElement);
    }
    Ok(())
}

/// For each generator `n_i`, the least `b_i > 0` with `b_i n_i - n` in the monoid.
pub fn bullet_bounds(monoid: &NumericalMonoid, n: i64) -> Result<Vec<u64>> {
    check_element(monoid, n)?;
    Ok(monoid
        .generators()
        .iter()
        .map(|&g| {
            let g = g as i64;
            let start = ((n + g - 1) / g).max(1);
            (start..).find(|&b| monoid.contains(b * g - n)).unwrap() as u64
        })
        .collect())
}

pub fn is_bullet(monoid: &NumericalMonoid, n: i64, a: &[u64]) -> Result<bool> {
    if !monoid.contains(n) {
        return Err(Error::NotAMember(n.to_string()));
    }
    let gens = monoid.generators();
    if a.len() != gens.len() {
        return Err(Error::DimensionMismatch { expected: gens.len(), found: a.len() });
    }
    let total: i64 = a.iter().zip(gens).map(|(&ai, &g)| (ai * g) as i64).sum();
    if !monoid.contains(total - n) {
        return Ok(false);
    }
    Ok(a
        .iter()
        .zip(gens)
        .all(|(&ai, &g)| ai == 0 || !monoid.contains(total - g as i64 - n)))
}

pub fn bullets(monoid: &NumericalMonoid, n: i64) -> Result<BulletSet> {
    bullets_with_budget(monoid, n, DEFAULT_SEARCH_BUDGET)
}

/// Pruned box scan. `budget` caps the number of candidate vectors visited.
pub fn bullets_with_budget(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<BulletSet> {
    let bounds = bullet_bounds(monoid, n)?;
    let mut scan = Scan {
        monoid,
        n,
        bounds: &bounds,
        coords: vec![0; bounds.len()],
        visited: 0,
        budget,
        out: Vec::new(),
    };
    scan.descend(0, 0)?;
    let mut bullets: Vec<FactorizationVector> = scan
        .out
        .into_iter()
        .map(|c| FactorizationVector::from_valid(c, monoid.generators()))
        .collect();
    bullets.sort();
    Ok(BulletSet { element: n, bullets, bounds })
}

struct Scan<'a> {
    monoid: &'a NumericalMonoid,
    n: i64,
    bounds: &'a [u64],
    coords: Vec<u64>,
    visited: u64,
    budget: u64,
    out: Vec<Vec<u64>>,
}

impl Scan<'_> {
    fn tick(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// True if some generator among `coords[..=upto]` can be dropped from a
    /// vector of value `total` while keeping `n` as a divisor.
    fn has_removable(&self, upto: usize, total: i64) -> bool {
        let gens = self.monoid.generators();
        (0..=upto).any(|j| self.coords[j] > 0 && self.monoid.contains(total - gens[j] as i64 - self.n))
    }

    fn descend(&mut self, i: usize, prefix: i64) -> Result<()> {
        let gens = self.monoid.generators();
        let k = gens.len();
        if i + 1 == k {
            self.tick()?;
            let a = self.monoid.least_last_multiple(self.n - prefix);
            debug_assert!(a <= self.bounds[i]);
            self.coords[i] = a;
            let total = prefix + (a * gens[i]) as i64;
            if !self.has_removable(i, total) {
                self.out.push(self.coords.clone());
            }
            self.coords[i] = 0;
            return Ok(());
        }
        let g = gens[i] as i64;
        for a in 0..=self.bounds[i] {
            self.tick()?;
            self.coords[i] = a;
            let total = prefix + a as i64 * g;
            // once dead, every larger a_i is dead too
            if a > 0 && self.has_removable(i, total) {
                break;
            }
            self.descend(i + 1, total)?;
        }
        self.coords[i] = 0;
        Ok(())
    }
}

/// The literal scan of every vector in the box `prod [0, b_i]`. Budgeted on
/// the size of the box.
pub fn bullets_box_scan(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<BulletSet> {
    let bounds = bullet_bounds(monoid, n)?;
    let size = bounds
        .iter()
        .try_fold(1u64, |acc, &b| acc.checked_mul(b + 1))
        .unwrap_or(u64::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut bullets = Vec::new();
    let mut a = vec![0u64; bounds.len()];
    loop {
        if is_bullet(monoid, n, &a)? {
            bullets.push(FactorizationVector::from_valid(a.clone(), monoid.generators()));
        }
        // odometer, last coordinate fastest, so output is lexicographic
        let mut i = a.len();
        loop {
            if i == 0 {
                return Ok(BulletSet { element: n, bullets, bounds });
            }
            i -= 1;
            if a[i] < bounds[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
        }
    }
}

pub fn omega(monoid: &NumericalMonoid, n: i64) -> Result<OmegaResult> {
    omega_with_budget(monoid, n, DEFAULT_SEARCH_BUDGET)
}

pub fn omega_with_budget(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<OmegaResult> {
    check_element(monoid, n)?;
    let bullet_set = bullets_with_budget(monoid, n, budget)?;
    Ok(summarize(bullet_set))
}

pub(crate) fn summarize(bullet_set: BulletSet) -> OmegaResult {
    let omega = bullet_set.bullets.iter().map(|b| b.length).max().unwrap_or(0);
    let maximal_bullets = bullet_set
        .bullets
        .iter()
        .filter(|b| b.length == omega)
        .cloned()
        .collect();
    OmegaResult { element: bullet_set.element, omega, bullet_set, maximal_bullets }
}

/// Just the omega value, for callers that sweep many elements.
pub fn omega_value(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<u64> {
    omega_with_budget(monoid, n, budget).map(|r| r.omega)
}

/// omega(n) by enumerating every vector of length 1, 2, ..., sum b_i and
/// testing the bullet conditions directly. No pruning and no use of the
/// engine's search code.
pub fn omega_oracle(monoid: &NumericalMonoid, n: i64, budget: u64) -> Result<u64> {
    check_element(monoid, n)?;
    let gens = monoid.generators();
    let k = gens.len();
    let mut cap = 0u64;
    for &g in gens {
        let mut b = 1i64;
        while !monoid.contains(b * g as i64 - n) {
            b += 1;
        }
        cap += b as u64;
    }
    // number of vectors with length <= cap is C(cap + k, k)
    let mut total = 1u128;
    for i in 1..=k as u128 {
        total = total * (cap as u128 + i) / i;
    }
    if total > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }

    let holds = |v: &[u64]| {
        let s: i64 = v.iter().zip(gens).map(|(&a, &g)| (a * g) as i64).sum();
        monoid.contains(s - n)
            && v.iter().zip(gens).all(|(&a, &g)| a == 0 || !monoid.contains(s - g as i64 - n))
    };

    let mut best = 0;
    let mut v = vec![0u64; k];
    for len in 1..=cap {
        compositions(len, &mut v, 0, &mut |w| {
            if holds(w) {
                best = len;
            }
        });
    }
    Ok(best)
}

/// Calls `f` on every vector of non-negative integers summing to `len`.
fn compositions(len: u64, v: &mut [u64], i: usize, f: &mut impl FnMut(&[u64])) {
    if i + 1 == v.len() {
        v[i] = len;
        f(v);
        return;
    }
    for a in 0..=len {
        v[i] = a;
        compositions(len - a, v, i + 1, f);
    }
    v[i] = 0;
}
