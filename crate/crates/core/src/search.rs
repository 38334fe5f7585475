//! Bullet search over a finite list of atoms in an arbitrary commutative
//! cancellative monoid.
//!
//! Candidates are multisets of atoms, enumerated with non-decreasing atom
//! index. A candidate in which some atom can already be dropped while keeping
//! the target as a divisor is dead, and so is every multiset containing it, so
//! the whole subtree is skipped.

use crate::error::{Error, Result};

/// What the search needs to know about the ambient monoid and the target.
pub(crate) trait BulletSpace {
    /// Running product of the atoms chosen so far.
    type Acc: Clone;

    fn atom_count(&self) -> usize;
    fn empty(&self) -> Self::Acc;
    fn push(&self, acc: &Self::Acc, atom: usize) -> Self::Acc;
    /// The target divides `acc`.
    fn divides(&self, acc: &Self::Acc) -> bool;
    /// The target divides `acc` with one copy of `atom` removed.
    fn divides_without(&self, acc: &Self::Acc, atom: usize) -> bool;
    /// Most copies of `atom` a bullet can contain.
    fn cap(&self, _atom: usize) -> u64 {
        u64::MAX
    }
    /// False when no bullet extends `acc` by `atom`. In a bullet every atom
    /// must be needed, so this may reject atoms that add nothing the target
    /// still lacks at the moment they are added.
    fn may_extend(&self, _acc: &Self::Acc, _atom: usize) -> bool {
        true
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Limits {
    pub max_len: usize,
    pub budget: u64,
}

/// All bullets, each as a sorted list of atom indices, in lexicographic order.
pub(crate) fn find_bullets<S: BulletSpace>(space: &S, limits: Limits) -> Result<Vec<Vec<usize>>> {
    let mut walk = Walk {
        space,
        limits,
        chosen: Vec::new(),
        counts: vec![0; space.atom_count()],
        visited: 0,
        out: Vec::new(),
    };
    let acc = space.empty();
    walk.extend(&acc, 0)?;
    Ok(walk.out)
}

struct Walk<'a, S: BulletSpace> {
    space: &'a S,
    limits: Limits,
    chosen: Vec<usize>,
    counts: Vec<u64>,
    visited: u64,
    out: Vec<Vec<usize>>,
}

impl<S: BulletSpace> Walk<'_, S> {
    fn extend(&mut self, acc: &S::Acc, from: usize) -> Result<()> {
        if self.chosen.len() == self.limits.max_len {
            return Ok(());
        }
        for atom in from..self.space.atom_count() {
            if self.counts[atom] >= self.space.cap(atom) || !self.space.may_extend(acc, atom) {
                continue;
            }
            self.visited += 1;
            if self.visited > self.limits.budget {
                return Err(Error::BudgetExceeded { budget: self.limits.budget });
            }
            let next = self.space.push(acc, atom);
            self.chosen.push(atom);
            self.counts[atom] += 1;
            let dead = self
                .distinct_chosen()
                .any(|u| self.space.divides_without(&next, u));
            if !dead {
                if self.space.divides(&next) {
                    // adding anything more would make that addition removable
                    self.out.push(self.chosen.clone());
                } else {
                    self.extend(&next, atom)?;
                }
            }
            self.chosen.pop();
            self.counts[atom] -= 1;
        }
        Ok(())
    }

    fn distinct_chosen(&self) -> impl Iterator<Item = usize> + '_ {
        self.chosen
            .iter()
            .enumerate()
            .filter(|&(i, &a)| i == 0 || self.chosen[i - 1] != a)
            .map(|(_, &a)| a)
    }
}
