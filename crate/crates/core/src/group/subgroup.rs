use std::collections::{BTreeSet, VecDeque};

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup of a borrowed parent group, stored as a sorted member list.
#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    group: &'g FiniteGroup,
    members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    pub fn trivial(group: &'g FiniteGroup) -> Self {
        Subgroup {
            group,
            members: vec![group.identity()],
        }
    }

    pub fn full(group: &'g FiniteGroup) -> Self {
        Subgroup {
            group,
            members: group.elements().collect(),
        }
    }

    /// Smallest subgroup containing `generators`.
    pub fn closure(group: &'g FiniteGroup, generators: &[usize]) -> Result<Self> {
        for &g in generators {
            group.check_index(g)?;
        }
        let mut inside = vec![false; group.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in generators {
                let y = group.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        let sub = Subgroup { group, members };
        sub.check_lagrange()?;
        Ok(sub)
    }

    /// Validates an explicit member list.
    pub fn from_members(group: &'g FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        for &g in &members {
            group.check_index(g)?;
        }
        members.sort_unstable();
        members.dedup();
        let mut inside = vec![false; group.order()];
        for &g in &members {
            inside[g] = true;
        }
        if !inside[0] {
            return Err(Error::NotASubgroup("identity missing".into()));
        }
        for &a in &members {
            if !inside[group.inv(a)] {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &members {
                if !inside[group.mul(a, b)] {
                    return Err(Error::NotASubgroup(format!("{a}*{b} missing")));
                }
            }
        }
        let sub = Subgroup { group, members };
        sub.check_lagrange()?;
        Ok(sub)
    }

    fn check_lagrange(&self) -> Result<()> {
        if self.group.order().is_multiple_of(self.members.len()) {
            Ok(())
        } else {
            Err(Error::NotASubgroup(format!(
                "order {} does not divide {}",
                self.members.len(),
                self.group.order()
            )))
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// `{1}`, `G` and every cyclic subgroup `<g>`, without repeats, ordered by
    /// (order, members).
    pub fn cyclic_cover(group: &'g FiniteGroup) -> Vec<Subgroup<'g>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let cyclic = group
            .elements()
            .map(|g| Subgroup::closure(group, &[g]).expect("index in range"));
        for sub in std::iter::once(Subgroup::full(group)).chain(cyclic) {
            if seen.insert(sub.members.clone()) {
                out.push(sub);
            }
        }
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }
}
