use serde::Serialize;

use super::FiniteGroup;

/// Conjugacy classes of a group, computed by brute-force conjugation.
///
/// Class `k` has representative `representatives[k]`, the smallest element
/// index it contains, and classes are ordered by representative, so class 0
/// is always `{identity}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    centralizer_order: Vec<usize>,
    representatives: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ClassData {
    pub fn compute(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in group.elements() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut members = Vec::new();
            for h in group.elements() {
                let c = group.conjugate(g, h);
                if class_of[c] == usize::MAX {
                    class_of[c] = k;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        let centralizer_order = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .filter(|&h| group.mul(h, g) == group.mul(g, h))
                    .count()
            })
            .collect();
        let representatives: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let inverse_class = representatives
            .iter()
            .map(|&r| class_of[group.inv(r)])
            .collect();
        ClassData {
            classes,
            class_of,
            centralizer_order,
            representatives,
            inverse_class,
        }
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &[usize] {
        &self.classes[k]
    }

    pub fn class_size(&self, k: usize) -> usize {
        self.classes[k].len()
    }

    #[inline]
    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// `|Z_g|`, the number of elements commuting with `g`.
    #[inline]
    pub fn centralizer_order(&self, g: usize) -> usize {
        self.centralizer_order[g]
    }

    pub fn representative(&self, k: usize) -> usize {
        self.representatives[k]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn inverse_class(&self, k: usize) -> usize {
        self.inverse_class[k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn abelian_groups_have_singleton_classes() {
        let c5 = FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 0]]).unwrap();
        let cd = ClassData::compute(&c5);
        assert_eq!(cd.num_classes(), 5);
        assert!(c5.elements().all(|g| cd.centralizer_order(g) == 5));
    }

    #[test]
    fn s3_class_sizes() {
        // oracle: group permutations of 3 points by cycle type
        let g = s3();
        let labels = g.labels().unwrap();
        let cycle_type = |s: &str| s.matches('(').count() * 10 + s.split_whitespace().count();
        let cd = ClassData::compute(&g);
        let sizes: Vec<_> = (0..cd.num_classes()).map(|k| cd.class_size(k)).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        for x in g.elements() {
            for y in g.elements() {
                let same = cycle_type(&labels[x]) == cycle_type(&labels[y]);
                assert_eq!(same, cd.class_of(x) == cd.class_of(y));
            }
        }
    }

    #[test]
    fn orbit_stabilizer_and_inverse_involution() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        let cd = ClassData::compute(&g);
        for x in g.elements() {
            assert_eq!(
                cd.class_size(cd.class_of(x)) * cd.centralizer_order(x),
                g.order()
            );
        }
        for k in 0..cd.num_classes() {
            assert_eq!(cd.inverse_class(cd.inverse_class(k)), k);
        }
        assert_eq!(cd.class(0), &[0]);
        let total: usize = cd.classes().iter().map(Vec::len).sum();
        assert_eq!(total, g.order());
    }
}
