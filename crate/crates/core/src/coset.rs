//! Right coset spaces `Γ\G` and the right action of `G` on them.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

/// The right cosets `Γx` of a subgroup, with the action table `x ↦ xg`.
///
/// Cosets are numbered in order of their representative, the smallest
/// element index in the coset.
#[derive(Debug, Clone)]
pub struct CosetSpace<'g> {
    group: &'g FiniteGroup,
    subgroup: Subgroup<'g>,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    // row-major [coset][g]
    action: Vec<usize>,
}

impl<'g> CosetSpace<'g> {
    pub fn new(group: &'g FiniteGroup, subgroup: &Subgroup<'g>) -> Result<Self> {
        if !std::ptr::eq(group, subgroup.group()) {
            return Err(Error::SubgroupMismatch);
        }
        let n = group.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::with_capacity(subgroup.index());
        for x in group.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let k = reps.len();
            reps.push(x);
            for &h in subgroup.members() {
                coset_of[group.mul(h, x)] = k;
            }
        }
        let m = reps.len();
        let mut action = vec![0; m * n];
        for (k, &r) in reps.iter().enumerate() {
            for g in group.elements() {
                action[k * n + g] = coset_of[group.mul(r, g)];
            }
        }
        Ok(CosetSpace {
            group,
            subgroup: subgroup.clone(),
            reps,
            coset_of,
            action,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn subgroup(&self) -> &Subgroup<'g> {
        &self.subgroup
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g]
    }

    /// The coset `xg`.
    #[inline]
    pub fn act(&self, coset: usize, g: usize) -> usize {
        self.action[coset * self.group.order() + g]
    }

    /// `|X^g|`, the number of cosets fixed by `g`.
    pub fn fixed_point_count(&self, g: usize) -> usize {
        (0..self.len()).filter(|&x| self.act(x, g) == x).count()
    }

    /// `|X^g|` for every element, indexed by element.
    pub fn fixed_point_vector(&self) -> Vec<usize> {
        self.group
            .elements()
            .map(|g| self.fixed_point_count(g))
            .collect()
    }
}
