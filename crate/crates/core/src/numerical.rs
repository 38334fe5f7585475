//! Numerical monoids: cofinite additive submonoids of the non-negative integers.
//!
//! A [`NumericalMonoid`] is built from any list of positive integers with gcd 1.
//! Redundant generators are dropped, and membership is answered from a boolean
//! table up to the Frobenius number.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest sieve the constructor will allocate.
const MAX_SIEVE: u64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NumericalMonoid {
    generators: Vec<u64>,
    frobenius: i64,
    #[serde(skip)]
    members: Vec<bool>,
    /// `apery_last[c]` is the least member congruent to `c` mod the largest generator.
    #[serde(skip)]
    apery_last: Vec<i64>,
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl NumericalMonoid {
    /// Builds the monoid generated by `raw`, keeping only its minimal generators.
    pub fn new(raw: &[i64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = raw.iter().find(|&&g| g < 1) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let mut sorted: Vec<u64> = raw.iter().map(|&g| g as u64).collect();
        sorted.sort_unstable();
        sorted.dedup();

        let d = sorted.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::GcdNotOne(d));
        }
        if sorted[0] == 1 {
            return Err(Error::DegenerateMonoid);
        }

        // The Frobenius number is below n_1 * n_k, so the sieve covers every gap.
        let limit = sorted[0]
            .checked_mul(*sorted.last().unwrap())
            .filter(|&l| l <= MAX_SIEVE)
            .ok_or(Error::MonoidTooLarge(sorted[0].saturating_mul(*sorted.last().unwrap())))?
            as usize;

        let mut reach = vec![false; limit + 1];
        reach[0] = true;
        let mut generators = Vec::with_capacity(sorted.len());
        for &g in &sorted {
            let g = g as usize;
            if g <= limit && reach[g] {
                continue;
            }
            generators.push(g as u64);
            for v in g..=limit {
                if reach[v - g] {
                    reach[v] = true;
                }
            }
        }

        let frobenius = reach.iter().rposition(|&m| !m).expect("1 is not a member") as i64;
        reach.truncate(frobenius as usize + 1);

        let mut monoid = NumericalMonoid {
            generators,
            frobenius,
            members: reach,
            apery_last: Vec::new(),
        };
        let last = *monoid.generators.last().unwrap() as i64;
        let mut apery = vec![-1i64; last as usize];
        let mut missing = last;
        let mut m = 0i64;
        while missing > 0 {
            if monoid.contains(m) && apery[(m % last) as usize] < 0 {
                apery[(m % last) as usize] = m;
                missing -= 1;
            }
            m += 1;
        }
        monoid.apery_last = apery;
        Ok(monoid)
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn multiplicity(&self) -> u64 {
        self.generators[0]
    }

    pub fn frobenius_number(&self) -> i64 {
        self.frobenius
    }

    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            false
        } else if n > self.frobenius {
            true
        } else {
            self.members[n as usize]
        }
    }

    /// `a` divides `b` when `b - a` is a member.
    pub fn divides(&self, a: i64, b: i64) -> Result<bool> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::NotAMember(x.to_string()));
            }
        }
        Ok(self.contains(b - a))
    }

    /// Least `a >= 0` with `a * n_k - deficit` in the monoid, where `n_k` is
    /// the largest generator.
    pub(crate) fn least_last_multiple(&self, deficit: i64) -> u64 {
        let last = *self.generators.last().unwrap() as i64;
        let class = (-deficit).rem_euclid(last) as usize;
        let base = self.apery_last[class];
        let mut x = base;
        if x < -deficit {
            let steps = (-deficit - x + last - 1) / last;
            x += steps * last;
        }
        ((x + deficit) / last) as u64
    }

    /// Every factorization of `n`, in lexicographic order.
    pub fn factorizations(&self, n: i64) -> Result<Vec<FactorizationVector>> {
        if !self.contains(n) {
            return Err(Error::NotAMember(n.to_string()));
        }
        let mut out = Vec::new();
        let mut coords = vec![0u64; self.generators.len()];
        self.factor_rec(0, n as u64, &mut coords, &mut out);
        Ok(out)
    }

    fn factor_rec(&self, i: usize, rem: u64, coords: &mut [u64], out: &mut Vec<FactorizationVector>) {
        let g = self.generators[i];
        if i + 1 == self.generators.len() {
            if rem % g == 0 {
                coords[i] = rem / g;
                out.push(FactorizationVector::from_valid(coords.to_vec(), &self.generators));
            }
            return;
        }
        for a in 0..=rem / g {
            let left = rem - a * g;
            if !self.contains(left as i64) {
                continue;
            }
            coords[i] = a;
            self.factor_rec(i + 1, left, coords, out);
        }
        coords[i] = 0;
    }
}

/// A point of N^k read as a sum of generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorizationVector {
    pub coords: Vec<u64>,
    pub value: i64,
    pub length: u64,
}

impl FactorizationVector {
    pub fn new(monoid: &NumericalMonoid, coords: Vec<u64>) -> Result<Self> {
        let k = monoid.embedding_dimension();
        if coords.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: coords.len() });
        }
        Ok(Self::from_valid(coords, monoid.generators()))
    }

    pub(crate) fn from_valid(coords: Vec<u64>, generators: &[u64]) -> Self {
        let value = coords.iter().zip(generators).map(|(a, g)| (a * g) as i64).sum();
        let length = coords.iter().sum();
        FactorizationVector { coords, value, length }
    }
}

impl std::fmt::Display for FactorizationVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
