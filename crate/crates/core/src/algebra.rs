//! Functions on a finite group, i.e. elements of the group algebra `ℂ[G]`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction<'g> {
    group: &'g FiniteGroup,
    values: Vec<Complex64>,
}

impl<'g> GroupFunction<'g> {
    pub fn from_values(group: &'g FiniteGroup, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::InvalidFunction(format!(
                "{} values given for a group of order {}",
                values.len(),
                group.order()
            )));
        }
        if let Some(g) = values
            .iter()
            .position(|v| !v.re.is_finite() || !v.im.is_finite())
        {
            return Err(Error::InvalidFunction(format!(
                "value at element {g} is not finite"
            )));
        }
        Ok(GroupFunction { group, values })
    }

    pub fn zero(group: &'g FiniteGroup) -> Self {
        GroupFunction {
            group,
            values: vec![ZERO; group.order()],
        }
    }

    pub fn constant(group: &'g FiniteGroup, c: Complex64) -> Self {
        GroupFunction {
            group,
            values: vec![c; group.order()],
        }
    }

    /// Indicator of `{g}`.
    pub fn delta(group: &'g FiniteGroup, g: usize) -> Result<Self> {
        group.check_index(g)?;
        let mut f = Self::zero(group);
        f.values[g] = ONE;
        Ok(f)
    }

    /// Indicator of conjugacy class `class`.
    pub fn class_indicator(
        group: &'g FiniteGroup,
        classes: &ClassData,
        class: usize,
    ) -> Result<Self> {
        if class >= classes.num_classes() {
            return Err(Error::IndexOutOfRange {
                index: class,
                bound: classes.num_classes(),
            });
        }
        let mut f = Self::zero(group);
        for &g in classes.class(class) {
            f.values[g] = ONE;
        }
        Ok(f)
    }

    /// Real and imaginary parts uniform in `[-1, 1]`, reproducible from `seed`.
    pub fn random(group: &'g FiniteGroup, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = group
            .elements()
            .map(|_| Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
            .collect();
        GroupFunction { group, values }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, g: usize) -> Complex64 {
        self.values[g]
    }

    fn same_group(&self, other: &GroupFunction<'_>) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `(f1*f2)(g) = Σ_h f1(h) f2(h⁻¹g)`, by direct summation.
    pub fn convolve(&self, other: &GroupFunction<'g>) -> Result<GroupFunction<'g>> {
        self.same_group(other)?;
        let g = self.group;
        let mut out = vec![ZERO; g.order()];
        for h in g.elements() {
            let a = self.values[h];
            if a == ZERO {
                continue;
            }
            // h * x ranges over all elements as x does, and h⁻¹(hx) = x
            for x in g.elements() {
                out[g.mul(h, x)] += a * other.values[x];
            }
        }
        Ok(GroupFunction {
            group: g,
            values: out,
        })
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &GroupFunction<'g>, b: Complex64) -> Result<Self> {
        self.same_group(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Ok(GroupFunction {
            group: self.group,
            values,
        })
    }

    /// `f(C_g) = Σ_{h ∈ C_g} f(h)`.
    pub fn class_sum(&self, classes: &ClassData, g: usize) -> Complex64 {
        classes
            .class(classes.class_of(g))
            .iter()
            .map(|&h| self.values[h])
            .sum()
    }
}

/// `tr λ(f) = Σ_g f(g) χ_λ(g)`, the trace of the Fourier transform at `λ`.
pub fn fourier_trace(
    table: &CharacterTable<'_>,
    irrep: usize,
    f: &GroupFunction<'_>,
) -> Result<Complex64> {
    check_compatible(table, irrep, f)?;
    Ok(f.group
        .elements()
        .map(|g| f.values[g] * table.value(irrep, g))
        .sum())
}

/// `tr(λ(f1) λ(f2)) = Σ_{g,h} f1(g) f2(h) χ_λ(gh)`, using `λ(g)λ(h) = λ(gh)`.
pub fn fourier_trace_pair(
    table: &CharacterTable<'_>,
    irrep: usize,
    f1: &GroupFunction<'_>,
    f2: &GroupFunction<'_>,
) -> Result<Complex64> {
    check_compatible(table, irrep, f1)?;
    check_compatible(table, irrep, f2)?;
    let g = f1.group;
    let mut total = ZERO;
    for a in g.elements() {
        if f1.values[a] == ZERO {
            continue;
        }
        let inner: Complex64 = g
            .elements()
            .map(|b| f2.values[b] * table.value(irrep, g.mul(a, b)))
            .sum();
        total += f1.values[a] * inner;
    }
    Ok(total)
}

fn check_compatible(table: &CharacterTable<'_>, irrep: usize, f: &GroupFunction<'_>) -> Result<()> {
    if !std::ptr::eq(table.group(), f.group) {
        return Err(Error::GroupMismatch);
    }
    if irrep >= table.num_irreps() {
        return Err(Error::IndexOutOfRange {
            index: irrep,
            bound: table.num_irreps(),
        });
    }
    Ok(())
}

/// How a group function is described in input files and on the command line.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionSpec {
    Delta { element: usize },
    Class { class: usize },
    Constant { value: [f64; 2] },
    Values { values: Vec<[f64; 2]> },
    Random { seed: u64 },
}

impl FunctionSpec {
    pub fn build<'g>(
        &self,
        group: &'g FiniteGroup,
        classes: &ClassData,
    ) -> Result<GroupFunction<'g>> {
        match self {
            FunctionSpec::Delta { element } => GroupFunction::delta(group, *element),
            FunctionSpec::Class { class } => GroupFunction::class_indicator(group, classes, *class),
            FunctionSpec::Constant { value } => {
                let c = Complex64::new(value[0], value[1]);
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::InvalidFunction("constant is not finite".into()));
                }
                Ok(GroupFunction::constant(group, c))
            }
            FunctionSpec::Values { values } => GroupFunction::from_values(
                group,
                values
                    .iter()
                    .map(|[re, im]| Complex64::new(*re, *im))
                    .collect(),
            ),
            FunctionSpec::Random { seed } => Ok(GroupFunction::random(group, *seed)),
        }
    }
}

impl std::fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FunctionSpec::Delta { element } => write!(f, "delta:{element}"),
            FunctionSpec::Class { class } => write!(f, "class:{class}"),
            FunctionSpec::Constant { value } => write!(f, "constant:{},{}", value[0], value[1]),
            FunctionSpec::Values { values } => write!(f, "values[{}]", values.len()),
            FunctionSpec::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl std::str::FromStr for FunctionSpec {
    type Err = Error;

    /// Short form: `delta:<element>`, `class:<index>`, `constant:<re>[,<im>]`,
    /// `random:<seed>`. Explicit value lists are only accepted from files.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFunction(format!("cannot parse function spec `{s}`"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let arg = arg.trim();
        match kind.trim() {
            "delta" => Ok(FunctionSpec::Delta {
                element: arg.parse().map_err(|_| bad())?,
            }),
            "class" => Ok(FunctionSpec::Class {
                class: arg.parse().map_err(|_| bad())?,
            }),
            "random" => Ok(FunctionSpec::Random {
                seed: arg.parse().map_err(|_| bad())?,
            }),
            "constant" => {
                let mut parts = arg.split(',').map(|p| p.trim().parse::<f64>());
                let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
                let im = match parts.next() {
                    Some(p) => p.map_err(|_| bad())?,
                    None => 0.0,
                };
                if parts.next().is_some() {
                    return Err(bad());
                }
                Ok(FunctionSpec::Constant { value: [re, im] })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn delta_identities() {
        let g = s3();
        let e = GroupFunction::delta(&g, 0).unwrap();
        let f = GroupFunction::random(&g, 3);
        assert_eq!(e.convolve(&f).unwrap(), f);
        for a in g.elements() {
            for b in g.elements() {
                let lhs = GroupFunction::delta(&g, a)
                    .unwrap()
                    .convolve(&GroupFunction::delta(&g, b).unwrap())
                    .unwrap();
                assert_eq!(lhs, GroupFunction::delta(&g, g.mul(a, b)).unwrap());
            }
        }
        assert_eq!(e.values().iter().sum::<Complex64>(), ONE);
        assert!(GroupFunction::delta(&g, 6).is_err());
    }

    #[test]
    fn constant_convolution() {
        let g = s3();
        let one = GroupFunction::constant(&g, ONE);
        let out = one.convolve(&one).unwrap();
        assert!(out.values().iter().all(|v| *v == Complex64::new(6.0, 0.0)));
    }

    #[test]
    fn convolution_against_different_group_fails() {
        let g = s3();
        let h = s3();
        let a = GroupFunction::random(&g, 1);
        let b = GroupFunction::random(&h, 1);
        assert_eq!(a.convolve(&b).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn class_sums() {
        let g = s3();
        let cd = ClassData::compute(&g);
        let one = GroupFunction::constant(&g, ONE);
        for x in g.elements() {
            assert_eq!(
                one.class_sum(&cd, x).re as usize,
                cd.class_size(cd.class_of(x))
            );
            assert_eq!(GroupFunction::delta(&g, x).unwrap().class_sum(&cd, x), ONE);
        }
        let f = GroupFunction::random(&g, 9);
        for k in 0..cd.num_classes() {
            let first = f.class_sum(&cd, cd.class(k)[0]);
            assert!(cd.class(k).iter().all(|&x| f.class_sum(&cd, x) == first));
        }
    }

    #[test]
    fn fourier_trace_examples() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let e = GroupFunction::delta(&g, 0).unwrap();
        let one = GroupFunction::constant(&g, ONE);
        for l in 0..t.num_irreps() {
            assert!(close(
                fourier_trace(&t, l, &e).unwrap(),
                Complex64::new(t.degree(l) as f64, 0.0)
            ));
            let expected = if l == t.trivial_index() { 6.0 } else { 0.0 };
            assert!(close(
                fourier_trace(&t, l, &one).unwrap(),
                Complex64::new(expected, 0.0)
            ));
            for k in 0..t.classes().num_classes() {
                let ind = GroupFunction::class_indicator(&g, t.classes(), k).unwrap();
                let rep = t.classes().representative(k);
                let want = t.value(l, rep) * t.classes().class_size(k) as f64;
                assert!(close(fourier_trace(&t, l, &ind).unwrap(), want));
            }
            assert!(close(
                fourier_trace_pair(&t, l, &e, &e).unwrap(),
                Complex64::new(t.degree(l) as f64, 0.0)
            ));
            for a in g.elements() {
                for b in g.elements() {
                    let da = GroupFunction::delta(&g, a).unwrap();
                    let db = GroupFunction::delta(&g, b).unwrap();
                    assert!(close(
                        fourier_trace_pair(&t, l, &da, &db).unwrap(),
                        t.value(l, g.mul(a, b))
                    ));
                }
            }
        }
        assert!(fourier_trace(&t, 3, &e).is_err());
    }

    #[test]
    fn random_is_reproducible() {
        let g = s3();
        assert_eq!(GroupFunction::random(&g, 5), GroupFunction::random(&g, 5));
        assert_ne!(GroupFunction::random(&g, 5), GroupFunction::random(&g, 6));
        let f = GroupFunction::random(&g, 5);
        assert_eq!(f.values().len(), 6);
        assert!(f
            .values()
            .iter()
            .all(|v| v.re.abs() <= 1.0 && v.im.abs() <= 1.0));
    }

    #[test]
    fn from_values_validation() {
        let g = s3();
        assert!(GroupFunction::from_values(&g, vec![ONE; 5]).is_err());
        let mut v = vec![ONE; 6];
        v[2] = Complex64::new(f64::NAN, 0.0);
        assert!(GroupFunction::from_values(&g, v).is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "delta:3".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Delta { element: 3 }
        );
        assert_eq!(
            "class:1".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Class { class: 1 }
        );
        assert_eq!(
            "random:42".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Random { seed: 42 }
        );
        assert_eq!(
            "constant:1.5,-2".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Constant { value: [1.5, -2.0] }
        );
        assert_eq!(
            "constant:2".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::Constant { value: [2.0, 0.0] }
        );
        for bad in ["delta", "delta:x", "nope:1", "constant:1,2,3", "values:1"] {
            assert!(bad.parse::<FunctionSpec>().is_err(), "{bad}");
        }
        let g = s3();
        let cd = ClassData::compute(&g);
        let spec = FunctionSpec::Values {
            values: vec![[1.0, 0.0]; 6],
        };
        assert_eq!(
            spec.build(&g, &cd).unwrap(),
            GroupFunction::constant(&g, ONE)
        );
        assert!(FunctionSpec::Class { class: 3 }.build(&g, &cd).is_err());
    }
}
