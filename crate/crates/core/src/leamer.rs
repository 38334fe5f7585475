//! Leamer monoids: pairs `(n, k)` with `k >= 1` such that the arithmetic run
//! `n, n + s, ..., n + ks` lies in a numerical monoid `Γ`, together with the
//! identity `(0, 0)`, under componentwise addition.
//!
//! Every computation is confined to an explicit box `0 <= n <= n_max`,
//! `0 <= k <= k_max`. omega draws its atoms from the irreducibles inside the
//! box, so it describes bullets built from those atoms only.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerical::NumericalMonoid;
use crate::search::{find_bullets, BulletSpace, Limits};

pub const DEFAULT_LEAMER_BUDGET: u64 = 20_000_000;

/// Largest multiple tried when looking for a per-atom cap.
pub const CAP_SEARCH_LIMIT: u64 = 10_000;

pub type Point = (u64, u64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeamerMonoid {
    pub gamma: NumericalMonoid,
    pub s: u64,
    pub n_max: u64,
    pub k_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LeamerPoint {
    pub n: u64,
    pub k: u64,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrreducibleCensus {
    pub irreducibles: Vec<Point>,
    /// Largest first coordinate among irreducibles with `k >= 2`.
    pub structural_bound: Option<u64>,
    /// The box reaches past twice the Frobenius number of `Γ`.
    pub dense_region_reached: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeamerOmega {
    pub element: Point,
    pub omega: u64,
    /// Each bullet as an ascending list of irreducibles.
    pub bullets: Vec<Vec<Point>>,
    pub maximal_bullets: Vec<Vec<Point>>,
    pub atom_count: usize,
}

impl LeamerMonoid {
    pub fn new(gamma: NumericalMonoid, s: u64, n_max: u64, k_max: u64) -> Result<Self> {
        if s == 0 {
            return Err(Error::InvalidArgument("step must be positive".into()));
        }
        if gamma.contains(s as i64) {
            return Err(Error::StepInGamma(s));
        }
        if n_max == 0 || k_max == 0 {
            return Err(Error::BoxTooSmall { n_max, k_max, reason: "box holds no non-identity point".into() });
        }
        Ok(LeamerMonoid { gamma, s, n_max, k_max })
    }

    pub fn contains(&self, (n, k): Point) -> bool {
        if k == 0 {
            return n == 0;
        }
        (0..=k).all(|i| self.gamma.contains((n + i * self.s) as i64))
    }

    fn in_box(&self, (n, k): Point) -> bool {
        n <= self.n_max && k <= self.k_max
    }

    fn grid(&self) -> Vec<Vec<bool>> {
        (0..=self.n_max)
            .map(|n| (0..=self.k_max).map(|k| self.contains((n, k))).collect())
            .collect()
    }

    /// Every member in the box, ordered by `n` then `k`.
    pub fn points(&self) -> Vec<LeamerPoint> {
        let grid = self.grid();
        let mut out = Vec::new();
        for n in 0..=self.n_max {
            for k in 0..=self.k_max {
                if grid[n as usize][k as usize] {
                    let irreducible = (n, k) != (0, 0) && !decomposes(&grid, n, k);
                    out.push(LeamerPoint { n, k, irreducible });
                }
            }
        }
        out
    }

    pub fn irreducibles(&self) -> IrreducibleCensus {
        let irreducibles: Vec<Point> =
            self.points().into_iter().filter(|p| p.irreducible).map(|p| (p.n, p.k)).collect();
        let structural_bound = irreducibles.iter().filter(|p| p.1 >= 2).map(|p| p.0).max();
        IrreducibleCensus {
            irreducibles,
            structural_bound,
            dense_region_reached: self.n_max as i64 > 2 * self.gamma.frobenius_number(),
        }
    }

    /// `x` divides `y`: `y - x` is a member.
    pub fn divides(&self, x: Point, y: Point) -> bool {
        y.0 >= x.0 && y.1 >= x.1 && self.contains((y.0 - x.0, y.1 - x.1))
    }

    /// Least `b >= 1` with `x | b * u`.
    pub fn cap(&self, u: Point, x: Point) -> Result<u64> {
        (1..=CAP_SEARCH_LIMIT)
            .find(|&b| self.divides(x, (b * u.0, b * u.1)))
            .ok_or(Error::CapNotFound { atom: u, limit: CAP_SEARCH_LIMIT })
    }

    pub fn omega(&self, x: Point) -> Result<LeamerOmega> {
        self.omega_with_budget(x, DEFAULT_LEAMER_BUDGET)
    }

    pub fn omega_with_budget(&self, x: Point, budget: u64) -> Result<LeamerOmega> {
        if !self.contains(x) {
            return Err(Error::NotAMember(format!("({}, {})", x.0, x.1)));
        }
        if x == (0, 0) {
            return Err(Error::ZeroElement);
        }
        if !self.in_box(x) {
            return Err(Error::InvalidArgument(format!(
                "({}, {}) lies outside the box ({}, {})",
                x.0, x.1, self.n_max, self.k_max
            )));
        }
        let atoms = self.irreducibles().irreducibles;
        let caps = atoms.par_iter().map(|&u| self.cap(u, x)).collect::<Result<Vec<_>>>()?;
        let space = LeamerSpace { monoid: self, x, atoms: &atoms, caps: &caps };
        let max_len = caps.iter().sum::<u64>() as usize;
        let found = find_bullets(&space, Limits { max_len, budget })?;
        let mut bullets: Vec<Vec<Point>> =
            found.into_iter().map(|idx| idx.into_iter().map(|i| atoms[i]).collect()).collect();
        bullets.sort();
        let omega = bullets.iter().map(|b| b.len() as u64).max().unwrap_or(0);
        let maximal_bullets = bullets.iter().filter(|b| b.len() as u64 == omega).cloned().collect();
        Ok(LeamerOmega { element: x, omega, bullets, maximal_bullets, atom_count: atoms.len() })
    }
}

fn decomposes(grid: &[Vec<bool>], n: u64, k: u64) -> bool {
    // k = 0 parts other than the identity are not members, so both parts have k >= 1
    (1..k).any(|k1| (0..=n).any(|n1| grid[n1 as usize][k1 as usize] && grid[(n - n1) as usize][(k - k1) as usize]))
}

struct LeamerSpace<'a> {
    monoid: &'a LeamerMonoid,
    x: Point,
    atoms: &'a [Point],
    caps: &'a [u64],
}

impl BulletSpace for LeamerSpace<'_> {
    type Acc = Point;

    fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    fn empty(&self) -> Point {
        (0, 0)
    }

    fn push(&self, acc: &Point, atom: usize) -> Point {
        (acc.0 + self.atoms[atom].0, acc.1 + self.atoms[atom].1)
    }

    fn divides(&self, acc: &Point) -> bool {
        self.monoid.divides(self.x, *acc)
    }

    fn divides_without(&self, acc: &Point, atom: usize) -> bool {
        let u = self.atoms[atom];
        self.monoid.divides(self.x, (acc.0 - u.0, acc.1 - u.1))
    }

    fn cap(&self, atom: usize) -> u64 {
        self.caps[atom]
    }
}
