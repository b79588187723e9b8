//! Built-in groups addressed by name.

use crate::error::Result;
use crate::group::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Klein4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub family: Family,
    pub order: usize,
    pub description: String,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<FiniteGroup> {
        build_family(self.family)
    }
}

fn entry(family: Family) -> CatalogEntry {
    let (name, order, description) = match family {
        Family::Cyclic(n) => (
            format!("cyclic{n}"),
            n,
            format!("cyclic group of order {n}"),
        ),
        Family::Dihedral(n) => (
            format!("dihedral{n}"),
            2 * n,
            format!("symmetries of a regular {n}-gon"),
        ),
        Family::Symmetric(n) => (
            format!("symmetric{n}"),
            (1..=n).product(),
            format!("all permutations of {n} points"),
        ),
        Family::Alternating(n) => (
            format!("alternating{n}"),
            (1..=n).product::<usize>() / 2,
            format!("even permutations of {n} points"),
        ),
        Family::Quaternion8 => (
            "quaternion8".into(),
            8,
            "quaternion units {±1, ±i, ±j, ±k}".into(),
        ),
        Family::Klein4 => ("klein4".into(), 4, "Klein four-group C2 x C2".into()),
    };
    CatalogEntry {
        name,
        family,
        order,
        description,
    }
}

/// Every built-in group, in listing order.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (2..=12).map(|n| entry(Family::Cyclic(n))).collect();
    out.extend((3..=8).map(|n| entry(Family::Dihedral(n))));
    out.extend((3..=5).map(|n| entry(Family::Symmetric(n))));
    out.extend((4..=5).map(|n| entry(Family::Alternating(n))));
    out.push(entry(Family::Quaternion8));
    out.push(entry(Family::Klein4));
    out
}

pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

fn cycle(n: usize) -> Vec<usize> {
    (0..n).map(|i| (i + 1) % n).collect()
}

/// Image list of the cycle `(points[0] points[1] ...)` on `0..degree`.
fn cycle_on(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for (k, &a) in points.iter().enumerate() {
        p[a] = points[(k + 1) % points.len()];
    }
    p
}

pub fn build_family(family: Family) -> Result<FiniteGroup> {
    match family {
        Family::Cyclic(n) => FiniteGroup::from_permutations(&[cycle(n)]),
        Family::Dihedral(n) => {
            let reflection = (0..n).map(|i| (n - i) % n).collect();
            FiniteGroup::from_permutations(&[cycle(n), reflection])
        }
        Family::Symmetric(n) => FiniteGroup::from_permutations(&[cycle_on(n, &[0, 1]), cycle(n)]),
        Family::Alternating(n) => {
            let gens: Vec<Vec<usize>> = (2..n).map(|i| cycle_on(n, &[0, 1, i])).collect();
            FiniteGroup::from_permutations(&gens)
        }
        Family::Quaternion8 => quaternion8(),
        Family::Klein4 => FiniteGroup::from_permutations(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
    }
}

/// Q8 from its Cayley table. Index `u + 4s` is `(-1)^s` times unit `u` of
/// `1, i, j, k`.
fn quaternion8() -> Result<FiniteGroup> {
    // unit products: (sign, unit)
    const UNITS: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = UNITS[a % 4][b % 4];
                    u + 4 * ((s + a / 4 + b / 4) % 2)
                })
                .collect()
        })
        .collect();
    let labels = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    FiniteGroup::from_cayley_with_labels(&table, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ClassData;

    #[test]
    fn every_entry_builds_with_advertised_order() {
        let all = catalog();
        assert_eq!(all.len(), 11 + 6 + 3 + 2 + 2);
        for e in all {
            let g = e.build().unwrap();
            assert_eq!(g.order(), e.order, "{}", e.name);
        }
    }

    #[test]
    fn lookups() {
        assert_eq!(lookup("symmetric4").unwrap().order, 24);
        assert_eq!(lookup("quaternion8").unwrap().order, 8);
        assert_eq!(lookup("alternating5").unwrap().order, 60);
        assert!(lookup("cyclic13").is_none());
    }

    #[test]
    fn quaternion_structure() {
        let q = quaternion8().unwrap();
        assert!(!q.is_abelian());
        // i² = j² = k² = -1, a single involution
        let involutions: Vec<_> = q.elements().filter(|&x| q.element_order(x) == 2).collect();
        assert_eq!(involutions, vec![4]);
        assert_eq!(q.mul(1, 2), 3); // ij = k
        assert_eq!(q.mul(2, 1), 7); // ji = -k
        assert_eq!(ClassData::compute(&q).num_classes(), 5);
    }

    #[test]
    fn dihedral_and_klein_shapes() {
        let d4 = build_family(Family::Dihedral(4)).unwrap();
        assert_eq!(ClassData::compute(&d4).num_classes(), 5);
        let v4 = build_family(Family::Klein4).unwrap();
        assert!(v4.is_abelian());
        assert!(v4.elements().skip(1).all(|x| v4.element_order(x) == 2));
        let a4 = build_family(Family::Alternating(4)).unwrap();
        assert_eq!(ClassData::compute(&a4).num_classes(), 4);
    }
}
