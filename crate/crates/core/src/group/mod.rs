//! Finite groups given by a full multiplication table.
//!
//! Elements are plain indices `0..order`, with the identity always at index 0.
//! Groups are built either from a Cayley table or as the closure of a set of
//! permutations; both paths validate the group axioms before returning.

mod classes;
mod perm;
mod subgroup;

use std::collections::HashMap;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use classes::ClassData;
pub use perm::Permutation;
pub use subgroup::Subgroup;

use crate::error::{Error, Line, Result};

/// Above this order associativity is checked on a random sample of triples.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 200;
const SAMPLED_TRIPLES: usize = 200_000;

/// Default bound on the size of a permutation-group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a square Cayley table, `table[a][b] = a*b`.
    ///
    /// The identity is moved to index 0 by swapping it with whatever element
    /// held that index; all other indices keep their position.
    pub fn from_cayley(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_with_labels(table, None)
    }

    pub fn from_cayley_with_labels(
        table: &[Vec<usize>],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MalformedTable("table is empty".into()));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(c) = row.iter().position(|&v| v >= n) {
                return Err(Error::MalformedTable(format!(
                    "entry ({r}, {c}) = {} is out of range 0..{n}",
                    row[c]
                )));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::MalformedTable(format!(
                    "{} labels given for {n} elements",
                    l.len()
                )));
            }
        }
        check_latin(table)?;

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(Error::NoIdentity)?;

        // swap identity <-> 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(table[a][b]);
            }
        }
        let labels = labels.map(|mut l| {
            l.swap(0, identity);
            l
        });

        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mult[g * n + h] == 0)
                .expect("latin row contains identity");
            if mult[h * n + g] != 0 {
                return Err(Error::NoInverse { element: g });
            }
            inv[g] = h;
        }

        let group = FiniteGroup {
            order: n,
            mult,
            inv,
            labels,
        };
        group.check_associative()?;
        Ok(group)
    }

    /// The group generated by `generators` under composition, with the
    /// default closure cap.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_capped(generators, DEFAULT_CLOSURE_CAP)
    }

    /// Breadth-first closure from the identity. Each dequeued element `x` is
    /// extended by `x * s` for every generator `s` in input order, and new
    /// elements are numbered in discovery order.
    pub fn from_permutations_capped(generators: &[Vec<usize>], cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGeneratorSet);
        }
        let degree = generators[0].len();
        let gens = generators
            .iter()
            .enumerate()
            .map(|(k, images)| {
                if images.len() != degree {
                    return Err(Error::NotAPermutation {
                        generator: k,
                        degree,
                    });
                }
                Permutation::from_images(images.clone()).ok_or(Error::NotAPermutation {
                    generator: k,
                    degree,
                })
            })
            .collect::<Result<Vec<_>>>()?;

        let mut elements = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = elements[x].then(s);
                if !index.contains_key(&y) {
                    if elements.len() == cap {
                        return Err(Error::ClosureCapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut mult = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[a * n + b] = index[&elements[a].then(&elements[b])];
            }
        }
        let inv = elements.iter().map(|p| index[&p.inverse()]).collect();
        let labels = Some(elements.iter().map(|p| p.to_string()).collect());
        Ok(FiniteGroup {
            order: n,
            mult,
            inv,
            labels,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    /// `h g h^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv[h])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn check_index(&self, g: usize) -> Result<()> {
        if g < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: g,
                bound: self.order,
            })
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `g`: its label if the group carries labels, else `g<index>`.
    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.mult[a * self.order..(a + 1) * self.order]
    }

    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.elements().map(|a| self.row(a).to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)) {
                Ok(())
            } else {
                Err(Error::NotAssociative { a, b, c })
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                check(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )?;
            }
        }
        Ok(())
    }
}

fn check_latin(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    for (r, row) in table.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in row {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotLatinSquare {
                    line: Line::Row,
                    index: r,
                    value: v,
                });
            }
        }
    }
    for c in 0..n {
        let mut seen = vec![false; n];
        for row in table {
            let v = row[c];
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotLatinSquare {
                    line: Line::Column,
                    index: c,
                    value: v,
                });
            }
        }
    }
    Ok(())
}
