//! Irreducible character tables by the Burnside–Dixon class-sum method.
//!
//! The class sums `K_i` span the centre of the group algebra and multiply as
//! `K_i K_j = Σ_k a_ijk K_k`. For each irreducible `λ` the central character
//! `ω_λ(K_i) = |C_i| χ_λ(g_i) / d_λ` is a simultaneous right eigenvector of
//! the matrices `(M_i)_jk = a_ijk`, with eigenvalue `ω_λ(K_i)` for `M_i`. One
//! random real combination `Σ t_i M_i` has simple spectrum with probability
//! one, so its eigenvectors are exactly the central characters. Degrees follow
//! from `Σ_i ω(K_i) ω(K_i') / |C_i| = |G| / d²` where `i'` is the inverse class.

use std::cmp::Ordering;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};

/// Tolerance for orthogonality and eigen residuals.
pub const DEFAULT_TABLE_TOLERANCE: f64 = 1e-8;
/// Eigenvalues closer than this trigger a re-randomization.
pub const DEFAULT_COLLISION_GAP: f64 = 1e-6;
pub const DEFAULT_MAX_RETRIES: usize = 20;

// Character components smaller than this are stored as exact zeros.
const SNAP_ZERO: f64 = 1e-10;
// Values closer than this compare equal when ordering rows.
const ORDER_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableOptions {
    pub seed: u64,
    pub max_retries: usize,
    pub collision_gap: f64,
    pub tolerance: f64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
            collision_gap: DEFAULT_COLLISION_GAP,
            tolerance: DEFAULT_TABLE_TOLERANCE,
        }
    }
}

/// One irreducible character: its degree and its value on each class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Irrep {
    pub degree: usize,
    pub values: Vec<Complex64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    pub row_deviation: f64,
    pub column_deviation: f64,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CharacterTable<'g> {
    group: &'g FiniteGroup,
    classes: ClassData,
    rows: Vec<Irrep>,
    trivial_index: usize,
}

impl<'g> CharacterTable<'g> {
    pub fn compute(group: &'g FiniteGroup) -> Result<Self> {
        Self::compute_with(group, &TableOptions::default())
    }

    pub fn compute_with(group: &'g FiniteGroup, opts: &TableOptions) -> Result<Self> {
        let classes = ClassData::compute(group);
        let constants = structure_constants(group, &classes);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

        let mut omegas = None;
        for _ in 0..=opts.max_retries {
            let weights: Vec<f64> = (0..classes.num_classes())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            if let Some(found) = central_characters(&constants, &weights, opts.collision_gap) {
                omegas = Some(found);
                break;
            }
        }
        let omegas = omegas.ok_or(Error::DegenerateSpectrum {
            retries: opts.max_retries,
        })?;

        let order = group.order() as f64;
        let mut rows = Vec::with_capacity(omegas.len());
        for omega in omegas {
            let norm: Complex64 = (0..classes.num_classes())
                .map(|i| omega[i] * omega[classes.inverse_class(i)] / classes.class_size(i) as f64)
                .sum();
            let estimate = (order / norm.re).sqrt();
            let degree = estimate.round();
            if !degree.is_finite() || degree < 1.0 || (estimate - degree).abs() > 1e-6 {
                return Err(Error::NonIntegralDegree { estimate });
            }
            let values = (0..classes.num_classes())
                .map(|i| snap(omega[i] * degree / classes.class_size(i) as f64))
                .collect();
            rows.push(Irrep {
                degree: degree as usize,
                values,
            });
        }
        rows.sort_by(compare_rows);

        let trivial_index = rows
            .iter()
            .position(|r| r.values.iter().all(|v| (v - 1.0).norm() < ORDER_EPS))
            .ok_or(Error::OrthogonalityFailure {
                deviation: f64::NAN,
            })?;
        let table = CharacterTable {
            group,
            classes,
            rows,
            trivial_index,
        };
        let report = table.verify_orthogonality(opts.tolerance);
        if !report.pass {
            return Err(Error::OrthogonalityFailure {
                deviation: report.max_deviation,
            });
        }
        Ok(table)
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn rows(&self) -> &[Irrep] {
        &self.rows
    }

    pub fn num_irreps(&self) -> usize {
        self.rows.len()
    }

    pub fn trivial_index(&self) -> usize {
        self.trivial_index
    }

    pub fn degree(&self, irrep: usize) -> usize {
        self.rows[irrep].degree
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.degree).collect()
    }

    /// `χ_λ(g)` without bounds checks beyond the slice ones.
    #[inline]
    pub fn value(&self, irrep: usize, g: usize) -> Complex64 {
        self.rows[irrep].values[self.classes.class_of(g)]
    }

    pub fn character_value(&self, irrep: usize, g: usize) -> Result<Complex64> {
        if irrep >= self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index: irrep,
                bound: self.rows.len(),
            });
        }
        self.group.check_index(g)?;
        Ok(self.value(irrep, g))
    }

    /// Maximum deviation of both Schur orthogonality relations from the
    /// Kronecker pattern. Column sums are normalized by `sqrt(|Z_k| |Z_l|)`.
    pub fn verify_orthogonality(&self, tol: f64) -> OrthogonalityReport {
        let n = self.group.order() as f64;
        let k = self.classes.num_classes();
        let mut row_deviation: f64 = 0.0;
        for (a, ra) in self.rows.iter().enumerate() {
            for (b, rb) in self.rows.iter().enumerate() {
                let inner: Complex64 = (0..k)
                    .map(|c| ra.values[c] * rb.values[c].conj() * self.classes.class_size(c) as f64)
                    .sum::<Complex64>()
                    / n;
                let target = if a == b { 1.0 } else { 0.0 };
                row_deviation = row_deviation.max((inner - target).norm());
            }
        }
        let mut column_deviation: f64 = 0.0;
        for c in 0..k {
            for d in 0..k {
                let inner: Complex64 = self
                    .rows
                    .iter()
                    .map(|r| r.values[c] * r.values[d].conj())
                    .sum();
                let zc = self
                    .classes
                    .centralizer_order(self.classes.representative(c))
                    as f64;
                let zd = self
                    .classes
                    .centralizer_order(self.classes.representative(d))
                    as f64;
                let target = if c == d { zc } else { 0.0 };
                column_deviation = column_deviation.max((inner - target).norm() / (zc * zd).sqrt());
            }
        }
        if self.rows.len() != k {
            row_deviation = f64::MAX;
        }
        let max_deviation = row_deviation.max(column_deviation);
        OrthogonalityReport {
            row_deviation,
            column_deviation,
            max_deviation,
            pass: max_deviation < tol,
        }
    }

    /// A copy with one character value shifted by `delta`, bypassing all
    /// validation. Used for fault injection.
    pub fn perturbed(&self, irrep: usize, class: usize, delta: Complex64) -> Result<Self> {
        if irrep >= self.rows.len() {
            return Err(Error::IndexOutOfRange {
                index: irrep,
                bound: self.rows.len(),
            });
        }
        if class >= self.classes.num_classes() {
            return Err(Error::IndexOutOfRange {
                index: class,
                bound: self.classes.num_classes(),
            });
        }
        let mut out = self.clone();
        out.rows[irrep].values[class] += delta;
        Ok(out)
    }
}

/// `a[i][j][k]`: number of `x ∈ C_i` with `x⁻¹ z_k ∈ C_j`, for a fixed `z_k ∈ C_k`.
fn structure_constants(group: &FiniteGroup, classes: &ClassData) -> Vec<Vec<Vec<f64>>> {
    let k = classes.num_classes();
    let mut a = vec![vec![vec![0.0; k]; k]; k];
    for (c, &z) in classes.representatives().iter().enumerate() {
        for x in group.elements() {
            let y = group.mul(group.inv(x), z);
            a[classes.class_of(x)][classes.class_of(y)][c] += 1.0;
        }
    }
    a
}

/// Eigenvectors of `Σ t_i M_i`, each scaled so the identity-class entry is 1.
/// `None` if two eigenvalues are closer than `gap`.
fn central_characters(
    constants: &[Vec<Vec<f64>>],
    weights: &[f64],
    gap: f64,
) -> Option<Vec<Vec<Complex64>>> {
    let k = weights.len();
    let combined = DMatrix::from_fn(k, k, |j, l| {
        Complex64::new((0..k).map(|i| weights[i] * constants[i][j][l]).sum(), 0.0)
    });
    let (q, t) = Schur::try_new(combined, f64::EPSILON, 0)?.unpack();
    let eig: Vec<Complex64> = (0..k).map(|p| t[(p, p)]).collect();
    for p in 0..k {
        for r in p + 1..k {
            if (eig[p] - eig[r]).norm() < gap {
                return None;
            }
        }
    }

    let mut out = Vec::with_capacity(k);
    for p in 0..k {
        // back-substitute (T - t_pp) y = 0 with y_p = 1, y_j = 0 for j > p
        let mut y = DVector::from_element(k, Complex64::new(0.0, 0.0));
        y[p] = Complex64::new(1.0, 0.0);
        for j in (0..p).rev() {
            let s: Complex64 = (j + 1..=p).map(|l| t[(j, l)] * y[l]).sum();
            y[j] = -s / (t[(j, j)] - eig[p]);
        }
        let v = &q * y;
        if v[0].norm() < 1e-12 {
            return None;
        }
        let scale = v[0];
        out.push(v.iter().map(|x| x / scale).collect());
    }
    Some(out)
}

fn snap(z: Complex64) -> Complex64 {
    let clean = |x: f64| if x.abs() < SNAP_ZERO { 0.0 } else { x };
    Complex64::new(clean(z.re), clean(z.im))
}

/// Degree ascending, then values class by class in descending order of real
/// part and then imaginary part. The trivial character sorts first.
fn compare_rows(a: &Irrep, b: &Irrep) -> Ordering {
    a.degree.cmp(&b.degree).then_with(|| {
        for (x, y) in a.values.iter().zip(&b.values) {
            for (p, q) in [(x.re, y.re), (x.im, y.im)] {
                if (p - q).abs() > ORDER_EPS {
                    return q.partial_cmp(&p).unwrap_or(Ordering::Equal);
                }
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_cayley(&[vec![0]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(
            t.rows(),
            &[Irrep {
                degree: 1,
                values: vec![c(1.0, 0.0)]
            }]
        );
    }

    #[test]
    fn c2_table() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1]);
        assert_eq!(t.rows()[0].values, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(t.rows()[1].values, vec![c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(t.verify_orthogonality(1e-12).max_deviation, 0.0);
    }

    #[test]
    fn cyclic_tables_match_roots_of_unity() {
        // oracle: element j of the closure of one n-cycle is s^j, and the
        // characters are j ↦ exp(2πi jk/n)
        for n in 2..=12 {
            let gen: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let g = FiniteGroup::from_permutations(&[gen]).unwrap();
            let t = CharacterTable::compute(&g).unwrap();
            for k in 0..n {
                let expected: Vec<Complex64> = (0..n)
                    .map(|j| {
                        Complex64::from_polar(
                            1.0,
                            2.0 * std::f64::consts::PI * (j * k) as f64 / n as f64,
                        )
                    })
                    .collect();
                let found = t.rows().iter().any(|r| {
                    r.values
                        .iter()
                        .zip(&expected)
                        .all(|(a, b)| (a - b).norm() < 1e-9)
                });
                assert!(found, "C{n} missing character {k}");
            }
        }
    }

    #[test]
    fn s3_degrees_and_rows() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
        assert_eq!(t.trivial_index(), 0);
        // classes: identity, transpositions, 3-cycles
        let expect = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [2.0, 0.0, -1.0]];
        for (row, want) in t.rows().iter().zip(expect) {
            for (v, w) in row.values.iter().zip(want) {
                assert!((v - w).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn values_at_identity_and_inverses() {
        let g =
            FiniteGroup::from_permutations(&[vec![1, 2, 3, 4, 0], vec![0, 2, 4, 1, 3]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        for l in 0..t.num_irreps() {
            assert_eq!(t.character_value(l, 0).unwrap(), c(t.degree(l) as f64, 0.0));
            for x in g.elements() {
                let a = t.value(l, g.inv(x));
                assert!((a - t.value(l, x).conj()).norm() < 1e-9);
                assert!(t.value(l, x).norm() <= t.degree(l) as f64 + 1e-9);
            }
        }
        assert!(t.character_value(t.num_irreps(), 0).is_err());
        assert!(t.character_value(0, g.order()).is_err());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        let a = CharacterTable::compute_with(
            &g,
            &TableOptions {
                seed: 7,
                ..Default::default()
            },
        )
        .unwrap();
        let b = CharacterTable::compute_with(
            &g,
            &TableOptions {
                seed: 7,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.rows(), b.rows());
        // a different seed may change rounding noise but not the table
        let other = CharacterTable::compute_with(
            &g,
            &TableOptions {
                seed: 8,
                ..Default::default()
            },
        )
        .unwrap();
        for (x, y) in a.rows().iter().zip(other.rows()) {
            assert_eq!(x.degree, y.degree);
            for (p, q) in x.values.iter().zip(&y.values) {
                assert!((p - q).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn zero_retries_with_huge_gap_is_degenerate() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let opts = TableOptions {
            max_retries: 2,
            collision_gap: 1e6,
            ..Default::default()
        };
        assert_eq!(
            CharacterTable::compute_with(&g, &opts).unwrap_err(),
            Error::DegenerateSpectrum { retries: 2 }
        );
    }

    #[test]
    fn perturbation_breaks_orthogonality() {
        let g = FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        let bad = t.perturbed(2, 1, c(1e-3, 0.0)).unwrap();
        let report = bad.verify_orthogonality(DEFAULT_TABLE_TOLERANCE);
        assert!(!report.pass);
        assert!(report.max_deviation > 1e-4);
        assert!(t.perturbed(3, 0, c(0.0, 0.0)).is_err());
    }
}
