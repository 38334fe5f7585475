//! Closed forms for omega in two-generator and interval monoids, and the
//! census of omega orderings among the generators of three-generator monoids.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerical::{gcd, NumericalMonoid};
use crate::omega::{omega_value, DEFAULT_SEARCH_BUDGET};

fn check_pair(n1: u64, n2: u64) -> Result<()> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::InvalidArgument(format!("generators {n1}, {n2} must exceed 1")));
    }
    if gcd(n1, n2) != 1 {
        return Err(Error::NotCoprime(n1, n2));
    }
    Ok(())
}

/// omega of `a1 n1 + a2 n2` in `<n1, n2>` from any one of its factorizations:
/// `max(ceil(a2/n1) n2 + a1, ceil(a1/n2) n1 + a2)`.
pub fn omega_two_gen_from_factorization(n1: u64, n2: u64, a1: u64, a2: u64) -> Result<u64> {
    check_pair(n1, n2)?;
    if a1 == 0 && a2 == 0 {
        return Err(Error::ZeroFactorization);
    }
    Ok((a2.div_ceil(n1) * n2 + a1).max(a1.div_ceil(n2) * n1 + a2))
}

/// The residue form of omega on `<n1, n2>`: `omega(q n1 + r) = q + a_of_r[r]`
/// for every member at or above `validity_threshold`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueTable {
    pub n1: u64,
    pub n2: u64,
    /// `a_of_r[r]` is the least `a >= 0` with `a n1 = r (mod n2)`.
    pub a_of_r: Vec<u64>,
    pub validity_threshold: i64,
    /// Largest element compared against the engine when certifying.
    pub horizon: i64,
}

impl ResidueTable {
    /// Certifies against the engine up to `3 n1 n2`.
    pub fn build(n1: u64, n2: u64) -> Result<Self> {
        Self::build_with_horizon(n1, n2, (3 * n1 * n2) as i64)
    }

    pub fn build_with_horizon(n1: u64, n2: u64, horizon: i64) -> Result<Self> {
        check_pair(n1, n2)?;
        if n1 > n2 {
            return Err(Error::InvalidArgument(format!("expected n1 < n2, got {n1} > {n2}")));
        }
        let a_of_r: Vec<u64> = (0..n1)
            .map(|r| (0..n2).find(|&a| (a * n1) % n2 == r % n2).expect("n1 is invertible mod n2"))
            .collect();
        let mut table = ResidueTable { n1, n2, a_of_r, validity_threshold: 0, horizon };

        let monoid = NumericalMonoid::new(&[n1 as i64, n2 as i64])?;
        let members: Vec<i64> = (1..=horizon).filter(|&n| monoid.contains(n)).collect();
        let agrees: Vec<bool> = members
            .par_iter()
            .map(|&n| omega_value(&monoid, n, DEFAULT_SEARCH_BUDGET).map(|w| w == table.formula(n)))
            .collect::<Result<_>>()?;
        table.validity_threshold = match agrees.iter().rposition(|&ok| !ok) {
            None => members.first().copied().unwrap_or(horizon + 1),
            Some(i) => members.get(i + 1).copied().unwrap_or(horizon + 1),
        };
        Ok(table)
    }

    fn formula(&self, n: i64) -> u64 {
        let q = n as u64 / self.n1;
        let r = n as u64 % self.n1;
        q + self.a_of_r[r as usize]
    }

    fn contains(&self, n: i64) -> bool {
        n >= 0 && (0..self.n1 as i64).any(|b| {
            let rest = n - b * self.n2 as i64;
            rest >= 0 && rest % self.n1 as i64 == 0
        })
    }

    pub fn omega(&self, n: i64) -> Result<u64> {
        if !self.contains(n) {
            return Err(Error::NotAMember(n.to_string()));
        }
        if n < self.validity_threshold {
            return Err(Error::BelowThreshold { n, threshold: self.validity_threshold });
        }
        Ok(self.formula(n))
    }
}

pub fn build_residue_table(n1: u64, n2: u64) -> Result<ResidueTable> {
    ResidueTable::build(n1, n2)
}

pub fn omega_two_gen_residue(table: &ResidueTable, n: i64) -> Result<u64> {
    table.omega(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalParity {
    /// `<2n-1, 2n, 2n+1>`
    Odd,
    /// `<2n, 2n+1, 2n+2>`
    Even,
}

/// `(generator, omega)` for the three generators of an interval monoid of
/// length three, from the known closed form.
pub fn interval_generator_omegas(n: u64, parity: IntervalParity) -> Result<Vec<(u64, u64)>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("interval parameter must be >= 2, got {n}")));
    }
    Ok(match parity {
        IntervalParity::Odd => vec![(2 * n - 1, n), (2 * n, n + 1), (2 * n + 1, n + 1)],
        IntervalParity::Even => vec![(2 * n, n), (2 * n + 1, n + 2), (2 * n + 2, n + 1)],
    })
}

/// A weak order on `(w1, w2, w3)`, stored as dense ranks (0 = smallest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderingPattern {
    pub ranks: [u8; 3],
}

impl OrderingPattern {
    pub fn classify(w: [u64; 3]) -> Self {
        let mut distinct: Vec<u64> = w.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let rank = |x: u64| distinct.iter().position(|&d| d == x).unwrap() as u8;
        OrderingPattern { ranks: [rank(w[0]), rank(w[1]), rank(w[2])] }
    }

    /// All 13 weak orders of three items.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::new();
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    let p = OrderingPattern::classify([a as u64, b as u64, c as u64]);
                    if p.ranks == [a, b, c] && !out.contains(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// `w1 > w2 > w3`, `w1 = w2 > w3` and `w3 < w1 < w2`.
    pub fn forbidden() -> [Self; 3] {
        [
            OrderingPattern { ranks: [2, 1, 0] },
            OrderingPattern { ranks: [1, 1, 0] },
            OrderingPattern { ranks: [1, 2, 0] },
        ]
    }

    pub fn is_forbidden(&self) -> bool {
        Self::forbidden().contains(self)
    }
}

impl fmt::Display for OrderingPattern {
    /// Ascending chain, e.g. `w2=w3<w1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = *self.ranks.iter().max().unwrap();
        for level in 0..=top {
            if level > 0 {
                write!(f, "<")?;
            }
            let names: Vec<String> = (0..3)
                .filter(|&i| self.ranks[i] == level)
                .map(|i| format!("w{}", i + 1))
                .collect();
            write!(f, "{}", names.join("="))?;
        }
        Ok(())
    }
}

impl Serialize for OrderingPattern {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingRow {
    pub generators: [u64; 3],
    pub omegas: [u64; 3],
    pub pattern: OrderingPattern,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderingCensus {
    pub bound: u64,
    /// Sorted by generator triple.
    pub rows: Vec<OrderingRow>,
}

impl OrderingCensus {
    pub fn counts(&self) -> BTreeMap<OrderingPattern, usize> {
        let mut counts: BTreeMap<_, _> = OrderingPattern::all().into_iter().map(|p| (p, 0)).collect();
        for row in &self.rows {
            *counts.get_mut(&row.pattern).unwrap() += 1;
        }
        counts
    }

    pub fn forbidden_hits(&self) -> Vec<&OrderingRow> {
        self.rows.iter().filter(|r| r.pattern.is_forbidden()).collect()
    }
}

/// omega values of the generators of `<n1, n2, n3>`, or `None` when the
/// triple is not a minimal generating set with gcd 1.
pub fn generator_omegas(triple: [u64; 3]) -> Result<Option<[u64; 3]>> {
    let raw = triple.map(|g| g as i64);
    let monoid = match NumericalMonoid::new(&raw) {
        Ok(m) if m.generators() == triple => m,
        Ok(_) | Err(Error::GcdNotOne(_)) | Err(Error::DegenerateMonoid) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut w = [0; 3];
    for (slot, &g) in w.iter_mut().zip(&triple) {
        *slot = omega_value(&monoid, g as i64, DEFAULT_SEARCH_BUDGET)?;
    }
    Ok(Some(w))
}

/// Every minimally generated `<n1, n2, n3>` with `n1 < n2 < n3 <= bound`,
/// classified by the order of its generators' omega values.
pub fn generator_ordering_scan(bound: u64) -> Result<OrderingCensus> {
    if bound < 3 {
        return Err(Error::InvalidArgument(format!("bound must be >= 3, got {bound}")));
    }
    let triples: Vec<[u64; 3]> = (2..=bound)
        .flat_map(|a| ((a + 1)..=bound).flat_map(move |b| ((b + 1)..=bound).map(move |c| [a, b, c])))
        .collect();
    let rows: Vec<Option<OrderingRow>> = triples
        .par_iter()
        .map(|&t| {
            generator_omegas(t).map(|w| {
                w.map(|omegas| OrderingRow {
                    generators: t,
                    omegas,
                    pattern: OrderingPattern::classify(omegas),
                })
            })
        })
        .collect::<Result<_>>()?;
    Ok(OrderingCensus { bound, rows: rows.into_iter().flatten().collect() })
}
