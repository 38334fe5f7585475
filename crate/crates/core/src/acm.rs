//! Arithmetical congruence monoids `M(a, b) = {1} ∪ {n >= 1 : n = a (mod b)}`
//! under multiplication.
//!
//! When `a = 1` every member is a unit mod `b`, so `x` divides `y` in the monoid
//! exactly when it divides `y` as integers. omega is computed only in that case.
//! An irreducible matters to a bullet for `x` only through its valuations at
//! the primes of `x`, so the search runs over those exponent patterns. Each
//! pattern is realized by a concrete irreducible: the prime-power product
//! itself, or that product times the smallest prime of the complementary
//! residue class that does not divide `x`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerical::gcd;
use crate::search::{find_bullets, BulletSpace, Limits};

/// Largest integer the trial-division factorizer accepts.
pub const MAX_FACTOR_INPUT: u64 = 1_000_000_000_000;

pub const DEFAULT_ACM_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArithmeticCongruenceMonoid {
    pub a: u64,
    pub b: u64,
    pub regular_unit: bool,
}

/// Prime factorization by trial division, ascending primes.
pub fn factor_integer(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 || n > MAX_FACTOR_INPUT {
        return Err(Error::FactorizationFailed(n));
    }
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(out)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factor_integer(n).as_deref(), Ok([(_, 1)]))
}

fn divisors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factors {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for &d in &out {
            let mut pk = 1;
            for _ in 0..=e {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

impl ArithmeticCongruenceMonoid {
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a < 1 || a > b {
            return Err(Error::InvalidArgument(format!("need 1 <= a <= b, got a = {a}, b = {b}")));
        }
        if (a as u128 * a as u128) % b as u128 != (a % b) as u128 {
            return Err(Error::NotIdempotent { a, b });
        }
        Ok(ArithmeticCongruenceMonoid { a, b, regular_unit: a == 1 })
    }

    pub fn hilbert() -> Self {
        Self::new(1, 4).unwrap()
    }

    pub fn is_regular(&self) -> bool {
        gcd(self.a, self.b) == 1
    }

    /// 1 is the identity and counts as a member.
    pub fn contains(&self, n: u64) -> bool {
        n == 1 || (n >= 1 && n % self.b == self.a % self.b)
    }

    fn check_member(&self, n: u64) -> Result<()> {
        if !self.contains(n) {
            return Err(Error::NotAMember(n.to_string()));
        }
        Ok(())
    }

    pub fn is_irreducible(&self, n: u64) -> Result<bool> {
        self.check_member(n)?;
        if n == 1 {
            return Err(Error::ZeroElement);
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 && self.is_nonunit(d) && self.is_nonunit(n / d) {
                return Ok(false);
            }
            d += 1;
        }
        Ok(true)
    }

    fn is_nonunit(&self, n: u64) -> bool {
        n != 1 && self.contains(n)
    }

    pub fn factorizations(&self, n: u64) -> Result<Vec<Vec<u64>>> {
        self.factorizations_with_budget(n, DEFAULT_ACM_BUDGET)
    }

    /// Every factorization of `n` into irreducibles, each as an ascending list,
    /// in lexicographic order. The unit has the single empty factorization.
    pub fn factorizations_with_budget(&self, n: u64, budget: u64) -> Result<Vec<Vec<u64>>> {
        self.check_member(n)?;
        let atoms: Vec<u64> = divisors(&factor_integer(n)?)
            .into_iter()
            .filter(|&d| self.is_nonunit(d) && self.is_irreducible(d).unwrap_or(false))
            .collect();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut visited = 0u64;
        self.factor_rec(n, 0, &atoms, &mut chosen, &mut visited, budget, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn factor_rec(
        &self,
        rest: u64,
        from: usize,
        atoms: &[u64],
        chosen: &mut Vec<u64>,
        visited: &mut u64,
        budget: u64,
        out: &mut Vec<Vec<u64>>,
    ) -> Result<()> {
        if rest == 1 {
            out.push(chosen.clone());
            return Ok(());
        }
        for (i, &u) in atoms.iter().enumerate().skip(from) {
            if u > rest {
                break;
            }
            *visited += 1;
            if *visited > budget {
                return Err(Error::BudgetExceeded { budget });
            }
            if rest % u == 0 && self.contains(rest / u) {
                chosen.push(u);
                self.factor_rec(rest / u, i, atoms, chosen, visited, budget, out)?;
                chosen.pop();
            }
        }
        Ok(())
    }

    /// Smallest prime `q = target (mod b)` not dividing `x`, skipping the first `skip`.
    fn cofactor(&self, target: u64, x: u64, skip: usize) -> u64 {
        let mut seen = 0;
        let mut q = 2u64;
        loop {
            if q % self.b == target && x % q != 0 && is_prime(q) {
                if seen == skip {
                    return q;
                }
                seen += 1;
            }
            q += 1;
        }
    }

    fn inverse_mod_b(&self, p: u64) -> u64 {
        (0..self.b).find(|&t| (p % self.b) * t % self.b == 1 % self.b).unwrap()
    }

    pub fn omega(&self, x: u64) -> Result<AcmOmega> {
        self.omega_with(x, SearchOptions::default())
    }

    pub fn omega_with_budget(&self, x: u64, budget: u64) -> Result<AcmOmega> {
        self.omega_with(x, SearchOptions { budget, ..Default::default() })
    }

    pub(crate) fn omega_with(&self, x: u64, opts: SearchOptions) -> Result<AcmOmega> {
        if !self.regular_unit {
            return Err(Error::NotRegularUnit(self.a));
        }
        self.check_member(x)?;
        if x == 1 {
            return Err(Error::ZeroElement);
        }
        let factors = factor_integer(x)?;
        let exps: Vec<u32> = factors.iter().map(|f| f.1).collect();
        let big_omega: u32 = exps.iter().sum();

        let mut patterns = Vec::new();
        let mut c = vec![0u32; exps.len()];
        loop {
            // odometer over 0 <= c <= exps
            let mut i = 0;
            loop {
                if i == c.len() {
                    break;
                }
                if c[i] < exps[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = 0;
                i += 1;
            }
            if i == c.len() {
                break;
            }
            let pf: Vec<(u64, u32)> = factors.iter().zip(&c).map(|(&(p, _), &k)| (p, k)).collect();
            let value: u64 = pf.iter().map(|&(p, k)| p.pow(k)).product();
            let reducible = divisors(&pf)
                .into_iter()
                .any(|d| d > 1 && d < value && d % self.b == 1 % self.b);
            if reducible {
                continue;
            }
            let atom = if value % self.b == 1 % self.b {
                value
            } else {
                value * self.cofactor(self.inverse_mod_b(value), x, opts.cofactor_rank)
            };
            patterns.push(Pattern { exps: c.clone(), atom });
        }
        patterns.sort_by_key(|p| p.atom);
        if opts.reverse {
            patterns.reverse();
        }

        let space = AcmSpace { target: exps, patterns: &patterns };
        let max_len = big_omega as usize + opts.extra_len;
        let found = find_bullets(&space, Limits { max_len, budget: opts.budget })?;
        let mut bullets: Vec<Vec<u64>> = found
            .into_iter()
            .map(|idx| {
                let mut b: Vec<u64> = idx.into_iter().map(|i| patterns[i].atom).collect();
                b.sort_unstable();
                b
            })
            .collect();
        bullets.sort();
        let omega = bullets.iter().map(|b| b.len() as u64).max().unwrap_or(0);
        let maximal_bullets = bullets.iter().filter(|b| b.len() as u64 == omega).cloned().collect();
        let atoms = patterns.iter().map(|p| p.atom).collect::<BTreeSet<_>>().into_iter().collect();
        Ok(AcmOmega { element: x, omega, bullets, maximal_bullets, atoms })
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchOptions {
    pub cofactor_rank: usize,
    pub reverse: bool,
    pub extra_len: usize,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cofactor_rank: 0, reverse: false, extra_len: 0, budget: DEFAULT_ACM_BUDGET }
    }
}

struct Pattern {
    exps: Vec<u32>,
    atom: u64,
}

struct AcmSpace<'a> {
    target: Vec<u32>,
    patterns: &'a [Pattern],
}

impl BulletSpace for AcmSpace<'_> {
    type Acc = Vec<u32>;

    fn atom_count(&self) -> usize {
        self.patterns.len()
    }

    fn empty(&self) -> Vec<u32> {
        vec![0; self.target.len()]
    }

    fn push(&self, acc: &Vec<u32>, atom: usize) -> Vec<u32> {
        acc.iter().zip(&self.patterns[atom].exps).map(|(a, c)| a + c).collect()
    }

    fn divides(&self, acc: &Vec<u32>) -> bool {
        acc.iter().zip(&self.target).all(|(a, e)| a >= e)
    }

    fn may_extend(&self, acc: &Vec<u32>, atom: usize) -> bool {
        self.patterns[atom].exps.iter().zip(acc).zip(&self.target).any(|((c, a), e)| *c > 0 && a < e)
    }

    fn divides_without(&self, acc: &Vec<u32>, atom: usize) -> bool {
        acc.iter()
            .zip(&self.patterns[atom].exps)
            .zip(&self.target)
            .all(|((a, c), e)| a - c >= *e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AcmOmega {
    pub element: u64,
    pub omega: u64,
    /// Each bullet as an ascending list of irreducibles.
    pub bullets: Vec<Vec<u64>>,
    pub maximal_bullets: Vec<Vec<u64>>,
    /// The irreducibles the search drew from.
    pub atoms: Vec<u64>,
}
