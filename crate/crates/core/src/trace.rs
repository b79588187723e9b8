//! Traces of the right regular representation `R_Γ` on `V`-valued functions
//! on `Γ\G`, evaluated along several independent routes:
//!
//! * pointcount: `dim V · Σ_g f(g) |X^g|`
//! * geometric: `(dim V / |G|) · Σ_g |X^g| |Z_g| f(C_g)`
//! * spectral: `Σ_λ m_λ(Γ, V) tr λ(f)`
//! * direct: the literal matrix trace of `Σ_g f(g) R_Γ(g)`, the oracle the
//!   other three are measured against.
//!
//! Multiplicities come from `m_λ = (dim V / |G|) Σ_g |X^g| χ_λ(g⁻¹)` and are
//! certified integral by rounding with a residual bound.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{fourier_trace, fourier_trace_pair, GroupFunction};
use crate::chartable::{CharacterTable, DEFAULT_TABLE_TOLERANCE};
use crate::coset::CosetSpace;
use crate::error::{Error, Result};
use crate::group::{ClassData, FiniteGroup, Subgroup};

/// Residual bound for integer certificates.
pub const DEFAULT_ROUNDING_TOLERANCE: f64 = 1e-6;
/// Relative tolerance for comparing two evaluations of the same quantity.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-6;
/// Absolute floor below which differences are not scaled.
pub const ABSOLUTE_FLOOR: f64 = 1e-9;
/// Largest oracle matrix dimension `[G:Γ]·dim V` built by default.
pub const DEFAULT_ORACLE_CAP: usize = 512;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub rounding: f64,
    pub relative: f64,
    pub absolute_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rounding: DEFAULT_ROUNDING_TOLERANCE,
            relative: DEFAULT_RELATIVE_TOLERANCE,
            absolute_floor: ABSOLUTE_FLOOR,
        }
    }
}

impl Tolerances {
    /// Uses `tol` for both rounding and relative comparison.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            rounding: tol,
            relative: tol,
            ..Default::default()
        }
    }

    /// `|a - b|` scaled so that `deviation <= relative` is exactly
    /// `|a - b| <= max(relative · max(|a|, |b|), absolute_floor)`.
    pub fn deviation(&self, a: Complex64, b: Complex64) -> f64 {
        let scale = a
            .norm()
            .max(b.norm())
            .max(self.absolute_floor / self.relative);
        (a - b).norm() / scale
    }

    pub fn agree(&self, a: Complex64, b: Complex64) -> bool {
        self.deviation(a, b) <= self.relative
    }
}

/// One multiplicity before and after rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Multiplicity {
    pub raw: Complex64,
    pub value: u64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplicitySpectrum {
    pub entries: Vec<Multiplicity>,
}

impl MultiplicitySpectrum {
    pub fn values(&self) -> Vec<u64> {
        self.entries.iter().map(|m| m.value).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|m| m.residual).fold(0.0, f64::max)
    }
}

/// Both sides of a scalar identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub deviation: f64,
    pub pass: bool,
}

impl IdentityCheck {
    fn new(lhs: Complex64, rhs: Complex64, tol: &Tolerances) -> Self {
        let deviation = tol.deviation(lhs, rhs);
        IdentityCheck {
            lhs,
            rhs,
            deviation,
            pass: deviation <= tol.relative,
        }
    }
}

/// Everything needed to evaluate traces for one `(G, Γ, dim V)`.
#[derive(Debug, Clone)]
pub struct TraceContext<'a> {
    group: &'a FiniteGroup,
    cosets: CosetSpace<'a>,
    table: &'a CharacterTable<'a>,
    dimv: usize,
    fixed: Vec<usize>,
    tol: Tolerances,
    oracle_cap: usize,
}

impl<'a> TraceContext<'a> {
    pub fn new(
        subgroup: &Subgroup<'a>,
        table: &'a CharacterTable<'a>,
        dimv: usize,
    ) -> Result<Self> {
        let group = table.group();
        if dimv == 0 {
            return Err(Error::InvalidDimension);
        }
        let cosets = CosetSpace::new(group, subgroup)?;
        let fixed = cosets.fixed_point_vector();
        Ok(TraceContext {
            group,
            cosets,
            table,
            dimv,
            fixed,
            tol: Tolerances::default(),
            oracle_cap: DEFAULT_ORACLE_CAP,
        })
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_oracle_cap(mut self, cap: usize) -> Self {
        self.oracle_cap = cap;
        self
    }

    pub fn group(&self) -> &'a FiniteGroup {
        self.group
    }

    pub fn subgroup(&self) -> &Subgroup<'a> {
        self.cosets.subgroup()
    }

    pub fn cosets(&self) -> &CosetSpace<'a> {
        &self.cosets
    }

    pub fn table(&self) -> &'a CharacterTable<'a> {
        self.table
    }

    pub fn classes(&self) -> &'a ClassData {
        self.table.classes()
    }

    pub fn dimv(&self) -> usize {
        self.dimv
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn oracle_cap(&self) -> usize {
        self.oracle_cap
    }

    /// `|X^g|` for every element.
    pub fn fixed_points(&self) -> &[usize] {
        &self.fixed
    }

    /// `dim V_Γ = [G:Γ] · dim V`.
    pub fn representation_dimension(&self) -> usize {
        self.cosets.len() * self.dimv
    }

    pub fn oracle_available(&self) -> bool {
        self.representation_dimension() <= self.oracle_cap
    }

    /// `χ_{R_Γ}(g) = dim V · |X^g|`.
    pub fn char_regular(&self, g: usize) -> f64 {
        (self.dimv * self.fixed[g]) as f64
    }

    fn multiplicity_raw(&self, irrep: usize) -> Complex64 {
        let sum: Complex64 = self
            .group
            .elements()
            .map(|g| self.table.value(irrep, self.group.inv(g)) * self.fixed[g] as f64)
            .sum();
        sum * self.dimv as f64 / self.group.order() as f64
    }

    pub fn multiplicity(&self, irrep: usize) -> Result<Multiplicity> {
        if irrep >= self.table.num_irreps() {
            return Err(Error::IndexOutOfRange {
                index: irrep,
                bound: self.table.num_irreps(),
            });
        }
        let raw = self.multiplicity_raw(irrep);
        let rounded = raw.re.round();
        let residual = (raw - Complex64::new(rounded, 0.0)).norm();
        if residual >= self.tol.rounding || rounded < 0.0 {
            return Err(Error::NonIntegralMultiplicity {
                irrep,
                re: raw.re,
                im: raw.im,
                residual,
            });
        }
        Ok(Multiplicity {
            raw,
            value: rounded as u64,
            residual,
        })
    }

    /// All multiplicities, checked against `Σ_λ m_λ d_λ = [G:Γ] · dim V`.
    pub fn multiplicity_spectrum(&self) -> Result<MultiplicitySpectrum> {
        let entries = (0..self.table.num_irreps())
            .map(|l| self.multiplicity(l))
            .collect::<Result<Vec<_>>>()?;
        let actual: u64 = entries
            .iter()
            .enumerate()
            .map(|(l, m)| m.value * self.table.degree(l) as u64)
            .sum();
        let expected = self.representation_dimension() as u64;
        if actual != expected {
            return Err(Error::DimensionMismatch { expected, actual });
        }
        Ok(MultiplicitySpectrum { entries })
    }

    fn check_function(&self, f: &GroupFunction<'_>) -> Result<()> {
        if std::ptr::eq(self.group, f.group()) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    /// `dim V · Σ_g f(g) |X^g|`.
    pub fn trace_pointcount(&self, f: &GroupFunction<'_>) -> Result<Complex64> {
        self.check_function(f)?;
        let s: Complex64 = self
            .group
            .elements()
            .map(|g| f.at(g) * self.fixed[g] as f64)
            .sum();
        Ok(s * self.dimv as f64)
    }

    /// `(dim V / |G|) · Σ_g |X^g| |Z_g| f(C_g)`.
    pub fn trace_geometric(&self, f: &GroupFunction<'_>) -> Result<Complex64> {
        self.check_function(f)?;
        let classes = self.classes();
        // f(C_g) only depends on the class
        let class_sums: Vec<Complex64> = classes
            .classes()
            .iter()
            .map(|c| c.iter().map(|&h| f.at(h)).sum())
            .collect();
        let s: Complex64 = self
            .group
            .elements()
            .map(|g| {
                class_sums[classes.class_of(g)]
                    * (self.fixed[g] * classes.centralizer_order(g)) as f64
            })
            .sum();
        Ok(s * self.dimv as f64 / self.group.order() as f64)
    }

    /// `Σ_λ m_λ(Γ, V) · tr λ(f)` with certified integer multiplicities.
    pub fn trace_spectral(&self, f: &GroupFunction<'_>) -> Result<Complex64> {
        self.check_function(f)?;
        let spectrum = self.multiplicity_spectrum()?;
        let mut total = ZERO;
        for (l, m) in spectrum.entries.iter().enumerate() {
            if m.value > 0 {
                total += fourier_trace(self.table, l, f)? * m.value as f64;
            }
        }
        Ok(total)
    }

    /// Same as [`trace_spectral`](Self::trace_spectral) but with unrounded
    /// multiplicities, so it always yields a number.
    pub fn trace_spectral_unrounded(&self, f: &GroupFunction<'_>) -> Result<Complex64> {
        self.check_function(f)?;
        let mut total = ZERO;
        for l in 0..self.table.num_irreps() {
            total += fourier_trace(self.table, l, f)? * self.multiplicity_raw(l);
        }
        Ok(total)
    }

    /// Materializes `Σ_g f(g) R_Γ(g)` as a dense matrix in the basis
    /// `δ_x ⊗ v_k` and returns its trace. `R_Γ(g)` has a 1 in row `(x, k)`,
    /// column `(xg, k)`, where `xg` is found by multiplying the coset
    /// representative by `g`, not through the cached action table.
    pub fn trace_direct(&self, f: &GroupFunction<'_>) -> Result<Complex64> {
        self.check_function(f)?;
        let size = self.representation_dimension();
        if size > self.oracle_cap {
            return Err(Error::OracleTooLarge {
                size,
                cap: self.oracle_cap,
            });
        }
        let reps = self.cosets.representatives();
        let mut matrix = vec![ZERO; size * size];
        for g in self.group.elements() {
            let w = f.at(g);
            if w == ZERO {
                continue;
            }
            for (x, &r) in reps.iter().enumerate() {
                let y = self.cosets.coset_of(self.group.mul(r, g));
                for k in 0..self.dimv {
                    matrix[(x * self.dimv + k) * size + y * self.dimv + k] += w;
                }
            }
        }
        Ok((0..size).map(|i| matrix[i * size + i]).sum())
    }

    /// `|G|² = |Γ| Σ_λ Σ_g d_λ |X^g| χ_λ(g⁻¹)`. Independent of `dim V`.
    pub fn order_square_identity(&self) -> IdentityCheck {
        let s = self.weighted_fixed_point_sum(|g| self.fixed[g] as f64);
        let n = self.group.order() as f64;
        IdentityCheck::new(
            Complex64::new(n * n, 0.0),
            s * self.subgroup().order() as f64,
            &self.tol,
        )
    }

    /// `|G|² · dim V = |Γ| Σ_λ Σ_g d_λ χ_{R_Γ}(g) χ_λ(g⁻¹)`, the same identity
    /// written with the character of `R_Γ` in place of the fixed-point count.
    pub fn order_square_identity_scaled(&self) -> IdentityCheck {
        let s = self.weighted_fixed_point_sum(|g| self.char_regular(g));
        let n = self.group.order() as f64;
        IdentityCheck::new(
            Complex64::new(n * n * self.dimv as f64, 0.0),
            s * self.subgroup().order() as f64,
            &self.tol,
        )
    }

    fn weighted_fixed_point_sum(&self, weight: impl Fn(usize) -> f64) -> Complex64 {
        let mut s = ZERO;
        for l in 0..self.table.num_irreps() {
            let d = self.table.degree(l) as f64;
            for g in self.group.elements() {
                s += self.table.value(l, self.group.inv(g)) * d * weight(g);
            }
        }
        s
    }

    /// `Σ_λ m_λ² = (dim V² / |G|) Σ_g |X^g| |X^{g⁻¹}|`; the left side uses the
    /// rounded spectrum.
    pub fn multiplicity_square_sum(&self) -> Result<IdentityCheck> {
        let spectrum = self.multiplicity_spectrum()?;
        let lhs: u64 = spectrum.entries.iter().map(|m| m.value * m.value).sum();
        let pairs: usize = self
            .group
            .elements()
            .map(|g| self.fixed[g] * self.fixed[self.group.inv(g)])
            .sum();
        let d = self.dimv as f64;
        let rhs = d * d * pairs as f64 / self.group.order() as f64;
        Ok(IdentityCheck::new(
            Complex64::new(lhs as f64, 0.0),
            Complex64::new(rhs, 0.0),
            &self.tol,
        ))
    }
}

/// `tr R_{1}(f1*f2)` against `dim V · Σ_λ d_λ tr(λ(f1) λ(f2))`. At
/// `dim V = 1` this is the plain Plancherel formula; the left side is the
/// literal oracle trace whenever `|G| · dim V` is within `oracle_cap`.
pub fn plancherel_check(
    table: &CharacterTable<'_>,
    f1: &GroupFunction<'_>,
    f2: &GroupFunction<'_>,
    dimv: usize,
    tol: &Tolerances,
    oracle_cap: usize,
) -> Result<IdentityCheck> {
    let group = table.group();
    let trivial = Subgroup::trivial(group);
    let ctx = TraceContext::new(&trivial, table, dimv)?.with_oracle_cap(oracle_cap);
    let conv = f1.convolve(f2)?;
    let lhs = if ctx.oracle_available() {
        ctx.trace_direct(&conv)?
    } else {
        ctx.trace_pointcount(&conv)?
    };
    let mut rhs = ZERO;
    for l in 0..table.num_irreps() {
        rhs += fourier_trace_pair(table, l, f1, f2)? * table.degree(l) as f64;
    }
    Ok(IdentityCheck::new(lhs, rhs * dimv as f64, tol))
}

/// `|Z_g| F(C_g) = Σ_π χ_π(g⁻¹) tr π(F)`.
pub fn class_sum_expansion_check(
    table: &CharacterTable<'_>,
    g: usize,
    f: &GroupFunction<'_>,
    tol: &Tolerances,
) -> Result<IdentityCheck> {
    let group = table.group();
    group.check_index(g)?;
    let classes = table.classes();
    let lhs = f.class_sum(classes, g) * classes.centralizer_order(g) as f64;
    let mut rhs = ZERO;
    for l in 0..table.num_irreps() {
        rhs += table.value(l, group.inv(g)) * fourier_trace(table, l, f)?;
    }
    Ok(IdentityCheck::new(lhs, rhs, tol))
}

/// Outcome of one named check in a verification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub max_deviation: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub checks: Vec<CheckResult>,
    pub notices: Vec<String>,
    pub pass: bool,
}

impl Verification {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Running maximum of deviations for one check.
struct Tally {
    id: &'static str,
    description: &'static str,
    max_deviation: f64,
    pass: bool,
    evaluated: bool,
}

impl Tally {
    fn new(id: &'static str, description: &'static str) -> Self {
        Tally {
            id,
            description,
            max_deviation: 0.0,
            pass: true,
            evaluated: false,
        }
    }

    fn record(&mut self, deviation: f64, pass: bool) {
        self.evaluated = true;
        self.max_deviation = self.max_deviation.max(deviation);
        self.pass &= pass && deviation.is_finite();
    }

    fn identity(&mut self, check: IdentityCheck) {
        self.record(check.deviation, check.pass);
    }

    fn compare(&mut self, a: Complex64, b: Complex64, tol: &Tolerances) {
        self.identity(IdentityCheck::new(a, b, tol));
    }

    fn fail(&mut self, deviation: f64) {
        self.record(deviation, false);
    }

    fn finish(self) -> CheckResult {
        let max_deviation = if self.max_deviation.is_finite() {
            self.max_deviation
        } else {
            f64::MAX
        };
        CheckResult {
            id: self.id.to_string(),
            description: self.description.to_string(),
            max_deviation,
            pass: self.pass && self.evaluated,
        }
    }
}

/// Seeds for the second function of a random pair.
const PAIR_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Runs every identity for `ctx`, using one random function per seed.
///
/// Checks never abort the run: a failing prerequisite (for instance a
/// non-integral multiplicity) marks the dependent checks as failed and the
/// remaining checks still execute.
pub fn verify_all(ctx: &TraceContext<'_>, seeds: &[u64]) -> Verification {
    let group = ctx.group();
    let table = ctx.table();
    let tol = *ctx.tolerances();
    let n = group.order();
    let dimv = ctx.dimv();
    let mut checks = Vec::new();
    let mut notices = Vec::new();

    let mut t = Tally::new(
        "schur_orthogonality",
        "row and column orthogonality of the character table",
    );
    let ortho = table.verify_orthogonality(DEFAULT_TABLE_TOLERANCE);
    t.record(ortho.max_deviation, ortho.pass);
    checks.push(t.finish());

    let mut t = Tally::new(
        "inverse_conjugation",
        "chi(g^-1) = conj(chi(g)) via the inverse table",
    );
    for l in 0..table.num_irreps() {
        for g in group.elements() {
            t.compare(table.value(l, group.inv(g)), table.value(l, g).conj(), &tol);
        }
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "degree_square_sum",
        "sum of d^2 over irreducibles equals |G|",
    );
    let sum_sq: usize = table.degrees().iter().map(|d| d * d).sum();
    t.compare(
        Complex64::new(sum_sq as f64, 0.0),
        Complex64::new(n as f64, 0.0),
        &tol,
    );
    checks.push(t.finish());

    let mut t = Tally::new(
        "weighted_character_sum",
        "sum over g and irreducibles of d chi(g^-1) equals |G|",
    );
    let mut s = ZERO;
    for l in 0..table.num_irreps() {
        for g in group.elements() {
            s += table.value(l, group.inv(g)) * table.degree(l) as f64;
        }
    }
    t.compare(s, Complex64::new(n as f64, 0.0), &tol);
    checks.push(t.finish());

    let mut t = Tally::new(
        "permutation_character",
        "character of R_Gamma equals dim V times the fixed-point count and is a class function",
    );
    for g in group.elements() {
        let chi = ctx.char_regular(g);
        if ctx.oracle_available() {
            match GroupFunction::delta(group, g).and_then(|d| ctx.trace_direct(&d)) {
                Ok(direct) => t.compare(Complex64::new(chi, 0.0), direct, &tol),
                Err(_) => t.fail(f64::MAX),
            }
        }
        for h in group.elements() {
            let other = ctx.char_regular(group.conjugate(g, h));
            t.record((other - chi).abs(), other == chi);
        }
    }
    checks.push(t.finish());

    let spectrum = ctx.multiplicity_spectrum();
    let mut t = Tally::new(
        "multiplicity_integrality",
        "every multiplicity rounds to a nonnegative integer within the rounding tolerance",
    );
    for l in 0..table.num_irreps() {
        match ctx.multiplicity(l) {
            Ok(m) => t.record(m.residual, true),
            Err(Error::NonIntegralMultiplicity { residual, .. }) => t.fail(residual),
            Err(_) => t.fail(f64::MAX),
        }
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "dimension_count",
        "sum of m d over irreducibles equals [G:Gamma] dim V",
    );
    match &spectrum {
        Ok(_) => t.record(0.0, true),
        Err(Error::DimensionMismatch { expected, actual }) => {
            t.fail((*expected as f64 - *actual as f64).abs())
        }
        Err(_) => {
            // fall back to raw values to still report a number
            let raw: Complex64 = (0..table.num_irreps())
                .map(|l| ctx.multiplicity_raw(l) * table.degree(l) as f64)
                .sum();
            t.fail((raw - ctx.representation_dimension() as f64).norm());
        }
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "trivial_multiplicity",
        "the trivial representation occurs dim V times",
    );
    let raw_trivial: Complex64 = group
        .elements()
        .map(|g| Complex64::new(ctx.fixed[g] as f64, 0.0))
        .sum::<Complex64>()
        * dimv as f64
        / n as f64;
    t.compare(raw_trivial, Complex64::new(dimv as f64, 0.0), &tol);
    match ctx.multiplicity(table.trivial_index()) {
        Ok(m) => t.record((m.value as f64 - dimv as f64).abs(), m.value == dimv as u64),
        Err(_) => t.fail(f64::MAX),
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "regular_multiplicities",
        "for the trivial subgroup each irreducible occurs d dim V times",
    );
    match TraceContext::new(&Subgroup::trivial(group), table, dimv)
        .and_then(|c| c.with_tolerances(tol).multiplicity_spectrum())
    {
        Ok(sp) => {
            for (l, m) in sp.entries.iter().enumerate() {
                let want = (table.degree(l) * dimv) as u64;
                t.record((m.value as f64 - want as f64).abs(), m.value == want);
            }
        }
        Err(_) => t.fail(f64::MAX),
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "full_subgroup_multiplicities",
        "for Gamma = G only the trivial representation occurs, dim V times; sum of chi equals |G| m / dim V",
    );
    match TraceContext::new(&Subgroup::full(group), table, dimv)
        .and_then(|c| c.with_tolerances(tol).multiplicity_spectrum())
    {
        Ok(sp) => {
            for (l, m) in sp.entries.iter().enumerate() {
                let want = if l == table.trivial_index() {
                    dimv as u64
                } else {
                    0
                };
                t.record((m.value as f64 - want as f64).abs(), m.value == want);
                let chi_sum: Complex64 = group.elements().map(|g| table.value(l, g)).sum();
                let rhs = n as f64 / dimv as f64 * m.value as f64;
                t.compare(chi_sum, Complex64::new(rhs, 0.0), &tol);
            }
        }
        Err(_) => t.fail(f64::MAX),
    }
    checks.push(t.finish());

    let mut t = Tally::new(
        "order_square_identity",
        "|G|^2 = |Gamma| sum over irreducibles and g of d |X^g| chi(g^-1)",
    );
    t.identity(ctx.order_square_identity());
    checks.push(t.finish());

    let mut t = Tally::new(
        "order_square_identity_scaled",
        "|G|^2 dim V = |Gamma| sum over irreducibles and g of d chi_R(g) chi(g^-1)",
    );
    t.identity(ctx.order_square_identity_scaled());
    checks.push(t.finish());

    let mut t = Tally::new(
        "multiplicity_square_sum",
        "sum of m^2 = dim V^2 / |G| sum of |X^g| |X^(g^-1)|",
    );
    match ctx.multiplicity_square_sum() {
        Ok(c) => t.identity(c),
        Err(_) => t.fail(f64::MAX),
    }
    checks.push(t.finish());

    let functions: Vec<GroupFunction<'_>> = seeds
        .iter()
        .map(|&s| GroupFunction::random(group, s))
        .collect();

    let mut t = Tally::new(
        "identity_value_recovery",
        "f(1) = tr R_{1}(f) / (|G| dim V)",
    );
    match TraceContext::new(&Subgroup::trivial(group), table, dimv) {
        Ok(regular) => {
            let regular = regular.with_oracle_cap(ctx.oracle_cap());
            for f in &functions {
                let trace = if regular.oracle_available() {
                    regular.trace_direct(f)
                } else {
                    regular.trace_pointcount(f)
                };
                match trace {
                    Ok(tr) => t.compare(f.at(0), tr / (n * dimv) as f64, &tol),
                    Err(_) => t.fail(f64::MAX),
                }
            }
        }
        Err(_) => t.fail(f64::MAX),
    }
    checks.push(t.finish());

    let mut pointcount = Tally::new(
        "pointcount_trace",
        "dim V sum of f(g) |X^g| matches the oracle trace",
    );
    let mut geometric = Tally::new(
        "geometric_trace",
        "dim V / |G| sum of |X^g| |Z_g| f(C_g) matches the oracle trace",
    );
    let mut spectral = Tally::new(
        "spectral_trace",
        "sum of m tr lambda(f) matches the oracle trace",
    );
    let mut geo_vs_point = Tally::new(
        "pointcount_geometric_agreement",
        "|G| sum of f(g) |X^g| = sum of |X^g| |Z_g| f(C_g)",
    );
    if !ctx.oracle_available() {
        notices.push(format!(
            "oracle skipped: representation dimension {} exceeds cap {}; trace routes compared against the pointcount route",
            ctx.representation_dimension(),
            ctx.oracle_cap()
        ));
    }
    for f in &functions {
        let (Ok(p), Ok(gm)) = (ctx.trace_pointcount(f), ctx.trace_geometric(f)) else {
            pointcount.fail(f64::MAX);
            geometric.fail(f64::MAX);
            continue;
        };
        let reference = if ctx.oracle_available() {
            match ctx.trace_direct(f) {
                Ok(d) => d,
                Err(_) => {
                    pointcount.fail(f64::MAX);
                    continue;
                }
            }
        } else {
            p
        };
        pointcount.compare(p, reference, &tol);
        geometric.compare(gm, reference, &tol);
        match ctx.trace_spectral(f) {
            Ok(sp) => spectral.compare(sp, reference, &tol),
            Err(_) => match ctx.trace_spectral_unrounded(f) {
                Ok(sp) => spectral.fail(tol.deviation(sp, reference)),
                Err(_) => spectral.fail(f64::MAX),
            },
        }
        // both sides of the class-sum identity, before dividing by |G|
        let lhs = p / dimv as f64 * n as f64;
        let rhs = gm / dimv as f64 * n as f64;
        geo_vs_point.compare(lhs, rhs, &tol);
    }
    checks.push(pointcount.finish());
    checks.push(geometric.finish());
    checks.push(spectral.finish());
    checks.push(geo_vs_point.finish());

    let mut scaled = Tally::new(
        "plancherel",
        "tr R_{1}(f1*f2) = dim V sum of d tr(F f1(lambda) F f2(lambda))",
    );
    let mut unit = Tally::new(
        "plancherel_unit_dimension",
        "tr R_{1}(f1*f2) = sum of d tr(F f1(lambda) F f2(lambda)) with dim V = 1",
    );
    for (f1, &s) in functions.iter().zip(seeds) {
        let f2 = GroupFunction::random(group, s ^ PAIR_SEED_SALT);
        match plancherel_check(table, f1, &f2, dimv, &tol, ctx.oracle_cap()) {
            Ok(c) => scaled.identity(c),
            Err(_) => scaled.fail(f64::MAX),
        }
        match plancherel_check(table, f1, &f2, 1, &tol, ctx.oracle_cap()) {
            Ok(c) => unit.identity(c),
            Err(_) => unit.fail(f64::MAX),
        }
    }
    checks.push(scaled.finish());
    checks.push(unit.finish());

    let mut t = Tally::new(
        "class_sum_expansion",
        "|Z_g| F(C_g) = sum over irreducibles of chi(g^-1) tr pi(F), for every g",
    );
    for f in &functions {
        for g in group.elements() {
            match class_sum_expansion_check(table, g, f, &tol) {
                Ok(c) => t.identity(c),
                Err(_) => t.fail(f64::MAX),
            }
        }
    }
    checks.push(t.finish());

    if dimv > 1 {
        notices.push(format!(
            "order_square_identity: the fixed-point form holds for every dim V; written with chi_R = dim V |X^g| both sides carry the factor dim V = {dimv} (checked as order_square_identity_scaled)"
        ));
        notices.push(format!(
            "plancherel: tr R_{{1}}(f1*f2) grows linearly in dim V while the spectral side does not; the check multiplies the spectral side by dim V = {dimv}, and plancherel_unit_dimension checks the unscaled form at dim V = 1"
        ));
    }

    let pass = checks.iter().all(|c| c.pass);
    Verification {
        checks,
        notices,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(&[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn tolerance_semantics() {
        let tol = Tolerances::default();
        assert!(tol.agree(c(1e6), c(1e6 + 0.5)));
        assert!(!tol.agree(c(1e6), c(1e6 + 2.0)));
        assert!(tol.agree(c(0.0), c(5e-10)));
        assert!(!tol.agree(c(0.0), c(2e-9)));
    }

    #[test]
    fn char_regular_examples() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let gamma = Subgroup::closure(&g, &[1]).unwrap();
        let ctx = TraceContext::new(&gamma, &t, 2).unwrap();
        assert_eq!(ctx.char_regular(0), 6.0);
        let full = TraceContext::new(&Subgroup::full(&g), &t, 3).unwrap();
        assert!(g.elements().all(|x| full.char_regular(x) == 3.0));
        let reg = TraceContext::new(&Subgroup::trivial(&g), &t, 1).unwrap();
        assert!((1..6).all(|x| reg.char_regular(x) == 0.0));
    }

    #[test]
    fn s3_over_a3_multiplicities() {
        // oracle: inner products of the permutation character [2,0,2] (by
        // class) with the textbook S3 table, weighted by class sizes [1,3,2]
        let perm_char = [2.0, 0.0, 2.0];
        let sizes = [1.0, 3.0, 2.0];
        let textbook = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [2.0, 0.0, -1.0]];
        let oracle: Vec<u64> = textbook
            .iter()
            .map(|row| {
                let s: f64 = (0..3).map(|k| sizes[k] * perm_char[k] * row[k]).sum();
                (s / 6.0).round() as u64
            })
            .collect();
        assert_eq!(oracle, vec![1, 1, 0]);

        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let a3 = Subgroup::closure(&g, &[2]).unwrap();
        let ctx = TraceContext::new(&a3, &t, 1).unwrap();
        assert_eq!(ctx.multiplicity_spectrum().unwrap().values(), oracle);
    }

    #[test]
    fn spectrum_edge_subgroups() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        for dimv in 1..=3u64 {
            let reg = TraceContext::new(&Subgroup::trivial(&g), &t, dimv as usize).unwrap();
            let want: Vec<u64> = t.degrees().iter().map(|&d| d as u64 * dimv).collect();
            assert_eq!(reg.multiplicity_spectrum().unwrap().values(), want);
            let full = TraceContext::new(&Subgroup::full(&g), &t, dimv as usize).unwrap();
            assert_eq!(
                full.multiplicity_spectrum().unwrap().values(),
                vec![dimv, 0, 0]
            );
        }
        let ctx = TraceContext::new(&Subgroup::trivial(&g), &t, 1).unwrap();
        assert!(ctx.multiplicity(3).is_err());
    }

    #[test]
    fn multiplicity_square_sum_for_transposition_subgroup() {
        // oracle: Σ m² equals the number of G-orbits on X × X, counted here
        // by brute force on pairs of points of {0,1,2}
        let g = s3();
        let mut orbit_of = std::collections::HashMap::new();
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![1, 2, 0],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![2, 0, 1],
        ];
        let mut orbits = 0;
        for a in 0..3 {
            for b in 0..3 {
                if orbit_of.contains_key(&(a, b)) {
                    continue;
                }
                for p in &perms {
                    orbit_of.insert((p[a], p[b]), orbits);
                }
                orbits += 1;
            }
        }
        assert_eq!(orbits, 2);

        let t = CharacterTable::compute(&g).unwrap();
        let gamma = Subgroup::closure(&g, &[1]).unwrap();
        let ctx = TraceContext::new(&gamma, &t, 1).unwrap();
        let check = ctx.multiplicity_square_sum().unwrap();
        assert_eq!(check.lhs, c(orbits as f64));
        assert!(check.pass);
    }

    #[test]
    fn trace_routes_on_deltas() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        for gen in [None, Some(1), Some(2)] {
            let sub = match gen {
                None => Subgroup::trivial(&g),
                Some(x) => Subgroup::closure(&g, &[x]).unwrap(),
            };
            for dimv in 1..=3 {
                let ctx = TraceContext::new(&sub, &t, dimv).unwrap();
                let e = GroupFunction::delta(&g, 0).unwrap();
                let want = c((dimv * 6 / sub.order()) as f64);
                assert_eq!(ctx.trace_pointcount(&e).unwrap(), want);
                assert_eq!(ctx.trace_direct(&e).unwrap(), want);
                assert!((ctx.trace_spectral(&e).unwrap() - want).norm() < 1e-9);
                for x in g.elements() {
                    let d = GroupFunction::delta(&g, x).unwrap();
                    let expect = c((dimv * ctx.fixed_points()[x]) as f64);
                    assert_eq!(ctx.trace_direct(&d).unwrap(), expect);
                    assert!((ctx.trace_geometric(&d).unwrap() - expect).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn trivial_subgroup_trace_is_scaled_identity_value() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let ctx = TraceContext::new(&Subgroup::trivial(&g), &t, 2).unwrap();
        let f = GroupFunction::random(&g, 11);
        let want = f.at(0) * 12.0;
        assert!(ctx
            .tolerances()
            .agree(ctx.trace_pointcount(&f).unwrap(), want));
        assert!(ctx
            .tolerances()
            .agree(ctx.trace_spectral(&f).unwrap(), want));
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let ctx = TraceContext::new(&Subgroup::trivial(&g), &t, 3)
            .unwrap()
            .with_oracle_cap(17);
        let f = GroupFunction::random(&g, 0);
        assert_eq!(
            ctx.trace_direct(&f).unwrap_err(),
            Error::OracleTooLarge { size: 18, cap: 17 }
        );
        let v = verify_all(&ctx, &[0, 1]);
        assert!(v.pass, "{v:#?}");
        assert!(v.notices.iter().any(|n| n.starts_with("oracle skipped")));
    }

    #[test]
    fn invalid_inputs() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        assert_eq!(
            TraceContext::new(&Subgroup::trivial(&g), &t, 0).unwrap_err(),
            Error::InvalidDimension
        );
        let other = s3();
        assert_eq!(
            TraceContext::new(&Subgroup::trivial(&other), &t, 1).unwrap_err(),
            Error::SubgroupMismatch
        );
        let ctx = TraceContext::new(&Subgroup::trivial(&g), &t, 1).unwrap();
        let f = GroupFunction::random(&other, 0);
        assert_eq!(ctx.trace_pointcount(&f).unwrap_err(), Error::GroupMismatch);
        assert_eq!(ctx.trace_direct(&f).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn plancherel_and_class_sum_examples() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let tol = Tolerances::default();
        let e = GroupFunction::delta(&g, 0).unwrap();
        let check = plancherel_check(&t, &e, &e, 1, &tol, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(check.lhs, c(6.0));
        assert!(check.pass);
        for a in g.elements() {
            let da = GroupFunction::delta(&g, a).unwrap();
            let db = GroupFunction::delta(&g, g.inv(a)).unwrap();
            let check = plancherel_check(&t, &da, &db, 1, &tol, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(check.lhs, c(6.0));
            assert!(check.pass);
        }
        for x in g.elements() {
            let check = class_sum_expansion_check(&t, x, &e, &tol).unwrap();
            let want = if x == 0 { 6.0 } else { 0.0 };
            assert_eq!(check.lhs, c(want));
            assert!(check.pass, "{check:?}");
        }
    }

    #[test]
    fn trivial_group_verifies_exactly() {
        let g = FiniteGroup::from_cayley(&[vec![0]]).unwrap();
        let t = CharacterTable::compute(&g).unwrap();
        for dimv in 1..=3 {
            let ctx = TraceContext::new(&Subgroup::trivial(&g), &t, dimv).unwrap();
            let v = verify_all(&ctx, &[0, 1, 2]);
            assert!(v.pass);
            for check in &v.checks {
                assert_eq!(check.max_deviation, 0.0, "{}", check.id);
            }
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let bad = t.perturbed(2, 1, c(1e-3)).unwrap();
        let gamma = Subgroup::closure(&g, &[1]).unwrap();
        let ctx = TraceContext::new(&gamma, &bad, 1).unwrap();
        assert!(matches!(
            ctx.multiplicity(2),
            Err(Error::NonIntegralMultiplicity { irrep: 2, .. })
        ));
        let v = verify_all(&ctx, &[0]);
        assert!(!v.pass);
        assert!(!v.check("schur_orthogonality").unwrap().pass);
        assert!(!v.check("multiplicity_integrality").unwrap().pass);
        assert!(v.checks.iter().all(|c| c.max_deviation.is_finite()));
    }

    #[test]
    fn scaled_notices_only_above_unit_dimension() {
        let g = s3();
        let t = CharacterTable::compute(&g).unwrap();
        let one = TraceContext::new(&Subgroup::trivial(&g), &t, 1).unwrap();
        assert!(verify_all(&one, &[0]).notices.is_empty());
        let two = TraceContext::new(&Subgroup::trivial(&g), &t, 2).unwrap();
        let v = verify_all(&two, &[0]);
        assert_eq!(v.notices.len(), 2);
        assert!(v.pass);
    }
}
