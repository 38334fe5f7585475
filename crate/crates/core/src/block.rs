//! Block monoids: zero-sum sequences over a finite Abelian group.
//!
//! Groups are given by invariant factors and their elements are encoded as a
//! single index in mixed radix. A sequence is stored densely as one
//! multiplicity per group element, so divisibility is multiset containment.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::{find_bullets, BulletSpace, Limits};

/// Largest group order the enumeration accepts.
pub const MAX_GROUP_ORDER: usize = 64;

pub const DEFAULT_BLOCK_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteAbelianGroup {
    pub invariant_factors: Vec<u32>,
    pub order: usize,
}

impl FiniteAbelianGroup {
    /// Factors equal to 1 are dropped; an empty list is the trivial group.
    pub fn new(factors: &[u32]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::InvalidArgument("invariant factors must be positive".into()));
        }
        let invariant_factors: Vec<u32> = factors.iter().copied().filter(|&d| d > 1).collect();
        let order = invariant_factors
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d as usize))
            .filter(|&o| o <= MAX_GROUP_ORDER)
            .ok_or_else(|| Error::InvalidArgument(format!("group order exceeds {MAX_GROUP_ORDER}")))?;
        Ok(FiniteAbelianGroup { invariant_factors, order })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn index_of(&self, tuple: &[u32]) -> Result<usize> {
        if tuple.len() != self.invariant_factors.len()
            || tuple.iter().zip(&self.invariant_factors).any(|(x, d)| x >= d)
        {
            // the trivial group also accepts a single 0 coordinate
            if self.invariant_factors.is_empty() && tuple.iter().all(|&x| x == 0) {
                return Ok(0);
            }
            return Err(Error::ElementOutOfRange(tuple.to_vec()));
        }
        Ok(tuple
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize))
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.invariant_factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % d as usize) as u32;
            index /= d as usize;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.tuple_of(a), self.tuple_of(b));
        let sum: Vec<u32> = x
            .iter()
            .zip(&y)
            .zip(&self.invariant_factors)
            .map(|((p, q), d)| (p + q) % d)
            .collect();
        self.index_of(&sum).unwrap()
    }

    pub fn neg(&self, a: usize) -> usize {
        let neg: Vec<u32> = self
            .tuple_of(a)
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| (d - x) % d)
            .collect();
        self.index_of(&neg).unwrap()
    }

    fn sum_of(&self, counts: &[u32]) -> usize {
        let mut acc = vec![0u64; self.invariant_factors.len()];
        for (idx, &c) in counts.iter().enumerate() {
            for ((slot, x), d) in acc.iter_mut().zip(self.tuple_of(idx)).zip(&self.invariant_factors) {
                *slot = (*slot + c as u64 * x as u64) % *d as u64;
            }
        }
        let t: Vec<u32> = acc.into_iter().map(|x| x as u32).collect();
        self.index_of(&t).unwrap()
    }
}

/// A sequence over the group that sums to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroSumSequence {
    counts: Vec<u32>,
}

impl ZeroSumSequence {
    pub fn new(group: &FiniteAbelianGroup, pairs: &[(Vec<u32>, u32)]) -> Result<Self> {
        let counts = dense(group, pairs)?;
        if group.sum_of(&counts) != 0 {
            return Err(Error::NotZeroSum);
        }
        Ok(ZeroSumSequence { counts })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        ZeroSumSequence { counts: vec![0; group.order] }
    }

    pub fn len(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn multiplicity(&self, index: usize) -> u32 {
        self.counts[index]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn product(&self, other: &Self) -> Self {
        let counts = self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect();
        ZeroSumSequence { counts }
    }

    /// Sorted `(element, multiplicity)` pairs; this is the serialized form.
    pub fn to_pairs(&self, group: &FiniteAbelianGroup) -> Vec<(Vec<u32>, u32)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(i, &c)| (group.tuple_of(i), c))
            .collect()
    }

    /// Multiplicative notation, e.g. `[1]^3[2]^3`.
    pub fn display(&self, group: &FiniteAbelianGroup) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.to_pairs(group)
            .into_iter()
            .map(|(t, c)| {
                let coords: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                let base = format!("[{}]", if coords.is_empty() { "0".into() } else { coords.join("/") });
                if c == 1 {
                    base
                } else {
                    format!("{base}^{c}")
                }
            })
            .collect()
    }
}

fn dense(group: &FiniteAbelianGroup, pairs: &[(Vec<u32>, u32)]) -> Result<Vec<u32>> {
    let mut counts = vec![0u32; group.order];
    for (tuple, mult) in pairs {
        counts[group.index_of(tuple)?] += mult;
    }
    Ok(counts)
}

pub fn is_zero_sum(group: &FiniteAbelianGroup, pairs: &[(Vec<u32>, u32)]) -> Result<bool> {
    Ok(group.sum_of(&dense(group, pairs)?) == 0)
}

/// `x` divides `y` in the block monoid iff `x` is a sub-multiset of `y`.
pub fn block_divides(x: &ZeroSumSequence, y: &ZeroSumSequence) -> bool {
    x.counts.iter().zip(&y.counts).all(|(a, b)| a <= b)
}

/// All minimal zero-sum sequences (the atoms of the block monoid), sorted.
///
/// Zero-sum-free sequences are grown one element at a time, tracking the set
/// of their non-empty subsums as a bitmask; closing one with the negative of
/// its sum gives each minimal zero-sum sequence exactly once.
pub fn minimal_zero_sum_sequences(group: &FiniteAbelianGroup) -> Result<Vec<ZeroSumSequence>> {
    minimal_zero_sum_sequences_with_budget(group, DEFAULT_BLOCK_BUDGET)
}

pub fn minimal_zero_sum_sequences_with_budget(
    group: &FiniteAbelianGroup,
    budget: u64,
) -> Result<Vec<ZeroSumSequence>> {
    let order = group.order;
    let add: Vec<Vec<usize>> = (0..order).map(|a| (0..order).map(|b| group.add(a, b)).collect()).collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; order];
    let mut visited = 0u64;
    grow_zero_sum_free(&add, group, 0, 0, 0, &mut counts, &mut visited, budget, &mut out)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn grow_zero_sum_free(
    add: &[Vec<usize>],
    group: &FiniteAbelianGroup,
    from: usize,
    subsums: u64,
    sum: usize,
    counts: &mut Vec<u32>,
    visited: &mut u64,
    budget: u64,
    out: &mut Vec<ZeroSumSequence>,
) -> Result<()> {
    let closing = group.neg(sum);
    for g in from..add.len() {
        *visited += 1;
        if *visited > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        counts[g] += 1;
        if g == closing {
            out.push(ZeroSumSequence { counts: counts.clone() });
        } else {
            let mut next = subsums | (1 << g);
            let mut bits = subsums;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= 1 << add[s][g];
            }
            if next & 1 == 0 {
                grow_zero_sum_free(add, group, g, next, add[sum][g], counts, visited, budget, out)?;
            }
        }
        counts[g] -= 1;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockBullet {
    /// Atoms with multiplicity, in atom order.
    pub factors: Vec<(ZeroSumSequence, u32)>,
    pub length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockOmega {
    pub element: ZeroSumSequence,
    pub omega: u64,
    pub bullets: Vec<BlockBullet>,
    pub maximal_bullets: Vec<BlockBullet>,
}

struct BlockSpace<'a> {
    target: &'a ZeroSumSequence,
    atoms: Vec<ZeroSumSequence>,
}

impl BulletSpace for BlockSpace<'_> {
    type Acc = Vec<u32>;

    fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    fn empty(&self) -> Vec<u32> {
        vec![0; self.target.counts.len()]
    }

    fn push(&self, acc: &Vec<u32>, atom: usize) -> Vec<u32> {
        acc.iter().zip(&self.atoms[atom].counts).map(|(a, b)| a + b).collect()
    }

    fn divides(&self, acc: &Vec<u32>) -> bool {
        self.target.counts.iter().zip(acc).all(|(t, a)| t <= a)
    }

    fn divides_without(&self, acc: &Vec<u32>, atom: usize) -> bool {
        self.target
            .counts
            .iter()
            .zip(acc)
            .zip(&self.atoms[atom].counts)
            .all(|((t, a), u)| *t <= a - u)
    }

    fn cap(&self, _atom: usize) -> u64 {
        self.target.len()
    }

    fn may_extend(&self, acc: &Vec<u32>, atom: usize) -> bool {
        self.atoms[atom].counts.iter().zip(acc).zip(&self.target.counts).any(|((u, a), t)| *u > 0 && a < t)
    }
}

pub fn block_omega(group: &FiniteAbelianGroup, x: &ZeroSumSequence) -> Result<BlockOmega> {
    block_omega_with_budget(group, x, DEFAULT_BLOCK_BUDGET)
}

/// omega of a block by exhaustive bullet search over the atoms that share an
/// element with it. A bullet never has more atoms than `x` has terms.
pub fn block_omega_with_budget(
    group: &FiniteAbelianGroup,
    x: &ZeroSumSequence,
    budget: u64,
) -> Result<BlockOmega> {
    if x.is_empty() {
        return Err(Error::ZeroElement);
    }
    if x.counts.len() != group.order {
        return Err(Error::InvalidArgument("block belongs to a different group".into()));
    }
    let atoms: Vec<ZeroSumSequence> = minimal_zero_sum_sequences_with_budget(group, budget)?
        .into_iter()
        .filter(|u| u.counts.iter().zip(&x.counts).any(|(a, b)| *a > 0 && *b > 0))
        .collect();
    let space = BlockSpace { target: x, atoms };
    let found = find_bullets(&space, Limits { max_len: x.len() as usize, budget })?;

    let bullets: Vec<BlockBullet> = found
        .into_iter()
        .map(|idx| {
            let mut factors: Vec<(ZeroSumSequence, u32)> = Vec::new();
            for i in idx {
                match factors.last_mut() {
                    Some((u, c)) if *u == space.atoms[i] => *c += 1,
                    _ => factors.push((space.atoms[i].clone(), 1)),
                }
            }
            let length = factors.iter().map(|(_, c)| *c as u64).sum();
            BlockBullet { factors, length }
        })
        .collect();
    let omega = bullets.iter().map(|b| b.length).max().unwrap_or(0);
    let maximal_bullets = bullets.iter().filter(|b| b.length == omega).cloned().collect();
    Ok(BlockOmega { element: x.clone(), omega, bullets, maximal_bullets })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The same search with every atom allowed to extend every candidate.
    struct Unpruned<'a>(BlockSpace<'a>);

    impl BulletSpace for Unpruned<'_> {
        type Acc = Vec<u32>;
        fn atom_count(&self) -> usize {
            self.0.atom_count()
        }
        fn empty(&self) -> Vec<u32> {
            self.0.empty()
        }
        fn push(&self, acc: &Vec<u32>, atom: usize) -> Vec<u32> {
            self.0.push(acc, atom)
        }
        fn divides(&self, acc: &Vec<u32>) -> bool {
            self.0.divides(acc)
        }
        fn divides_without(&self, acc: &Vec<u32>, atom: usize) -> bool {
            self.0.divides_without(acc, atom)
        }
        fn cap(&self, atom: usize) -> u64 {
            self.0.cap(atom)
        }
    }

    #[test]
    fn pruning_keeps_every_bullet() {
        for factors in [vec![3], vec![4], vec![2, 2]] {
            let g = FiniteAbelianGroup::new(&factors).unwrap();
            let atoms = minimal_zero_sum_sequences(&g).unwrap();
            for (i, a) in atoms.iter().enumerate() {
                for b in &atoms[i..] {
                    let x = a.product(b);
                    let limits = Limits { max_len: x.len() as usize, budget: u64::MAX };
                    let pruned = find_bullets(&BlockSpace { target: &x, atoms: atoms.clone() }, limits).unwrap();
                    let full = find_bullets(&Unpruned(BlockSpace { target: &x, atoms: atoms.clone() }), limits).unwrap();
                    assert_eq!(pruned, full, "{factors:?} {}", x.display(&g));
                }
            }
        }
    }

    fn z3() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(3).unwrap()
    }

    fn seq(g: &FiniteAbelianGroup, pairs: &[(u32, u32)]) -> ZeroSumSequence {
        let p: Vec<(Vec<u32>, u32)> = pairs.iter().map(|&(e, c)| (vec![e], c)).collect();
        ZeroSumSequence::new(g, &p).unwrap()
    }

    #[test]
    fn zero_sum_checks() {
        let g = z3();
        assert_eq!(is_zero_sum(&g, &[(vec![1], 1), (vec![2], 1)]), Ok(true));
        assert_eq!(is_zero_sum(&g, &[(vec![1], 1)]), Ok(false));
        assert_eq!(is_zero_sum(&g, &[]), Ok(true));
        assert_eq!(is_zero_sum(&g, &[(vec![3], 1)]), Err(Error::ElementOutOfRange(vec![3])));
        assert_eq!(ZeroSumSequence::new(&g, &[(vec![1], 2)]), Err(Error::NotZeroSum));
    }

    #[test]
    fn atoms_of_small_groups() {
        let g = z3();
        let atoms = minimal_zero_sum_sequences(&g).unwrap();
        let mut expect = vec![seq(&g, &[(0, 1)]), seq(&g, &[(1, 3)]), seq(&g, &[(2, 3)]), seq(&g, &[(1, 1), (2, 1)])];
        expect.sort();
        assert_eq!(atoms, expect);

        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let mut expect = vec![seq(&g, &[(0, 1)]), seq(&g, &[(1, 2)])];
        expect.sort();
        assert_eq!(minimal_zero_sum_sequences(&g).unwrap(), expect);

        let g = FiniteAbelianGroup::new(&[]).unwrap();
        let atoms = minimal_zero_sum_sequences(&g).unwrap();
        assert_eq!(atoms.len(), 1);
        assert_eq!(atoms[0].len(), 1);
    }

    /// Independent check: no proper non-empty sub-multiset sums to zero.
    fn is_minimal_by_subsets(g: &FiniteAbelianGroup, u: &ZeroSumSequence) -> bool {
        let mut sub = vec![0u32; g.order];
        loop {
            let mut i = 0;
            loop {
                if i == g.order {
                    return true;
                }
                if sub[i] < u.counts[i] {
                    sub[i] += 1;
                    break;
                }
                sub[i] = 0;
                i += 1;
            }
            let size: u32 = sub.iter().sum();
            if size as u64 != u.len() && g.sum_of(&sub) == 0 {
                return false;
            }
        }
    }

    #[test]
    fn atoms_are_minimal_and_complete() {
        for factors in [&[4u32][..], &[2, 2], &[5], &[6], &[2, 4]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let atoms = minimal_zero_sum_sequences(&g).unwrap();
            for u in &atoms {
                assert_eq!(g.sum_of(&u.counts), 0);
                assert!(is_minimal_by_subsets(&g, u), "{factors:?} {}", u.display(&g));
            }
            // the Davenport constant of these groups is sum(d_i - 1) + 1
            let davenport: u64 = g.invariant_factors.iter().map(|&d| d as u64 - 1).sum::<u64>() + 1;
            assert_eq!(atoms.iter().map(|u| u.len()).max().unwrap(), davenport);
        }
    }

    #[test]
    fn divisibility_is_containment() {
        let g = z3();
        let pair = seq(&g, &[(1, 1), (2, 1)]);
        let big = seq(&g, &[(1, 3), (2, 3)]);
        assert!(block_divides(&pair, &big));
        assert!(!block_divides(&seq(&g, &[(1, 3)]), &pair));
        assert!(block_divides(&ZeroSumSequence::identity(&g), &pair));
    }

    #[test]
    fn omega_over_z3() {
        let g = z3();
        let w = |pairs: &[(u32, u32)]| block_omega(&g, &seq(&g, pairs)).unwrap();
        assert_eq!(w(&[(0, 1)]).omega, 1);
        let r = w(&[(1, 1), (2, 1)]);
        assert_eq!(r.omega, 2);
        assert_eq!(r.maximal_bullets.len(), 1);
        let lens: Vec<u32> = r.maximal_bullets[0].factors.iter().map(|(_, c)| *c).collect();
        assert_eq!(lens, vec![1, 1]);
        let r = w(&[(1, 3)]);
        assert_eq!(r.omega, 3);
        assert_eq!(r.maximal_bullets[0].factors, vec![(seq(&g, &[(1, 1), (2, 1)]), 3)]);
        assert_eq!(w(&[(2, 3)]).omega, 3);
        assert_eq!(w(&[(1, 3), (2, 3)]).omega, 3);
        assert_eq!(w(&[(0, 1), (1, 1), (2, 1)]).omega, 3);
        assert_eq!(block_omega(&g, &ZeroSumSequence::identity(&g)).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn z2_atom_is_prime_like() {
        let g = FiniteAbelianGroup::cyclic(2).unwrap();
        let u = seq(&g, &[(1, 2)]);
        // omega(g^2) = 1 over Z_2, unlike length(g^2) = 2
        assert_eq!(block_omega(&g, &u).unwrap().omega, 1);
    }
}
