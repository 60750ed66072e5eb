//! Integral cohomology of odd sphere bundles over evenly graded, torsion-free
//! bases.
//!
//! With the base concentrated in even degrees the Gysin sequence breaks into
//!
//! ```text
//! 0 → H^{2i-1}(E) → H^{2i-2r}(B) --·e--> H^{2i}(B) → H^{2i}(E) → 0
//! ```
//!
//! so even degrees are cokernels and odd degrees are kernels of cup product
//! with the Euler class `e ∈ H^{2r}(B)`.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;

use num_bigint::BigInt;

use crate::char_classes::euler_class_hol1;
use crate::exact_linalg::{cokernel_group, kernel, AbelianGroup};
use crate::graded_poly::GradedPolynomial;
use crate::quotient_ring::{PoincarePolynomial, PresentedGradedRing};
use crate::spaces::{partial_flag_ring, FlagSpec, Hol1Base};
use crate::{Error, Result};

/// Cohomology groups by degree; degrees not present are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub space: String,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub dimension: Option<u32>,
    groups: BTreeMap<u32, AbelianGroup>,
}

impl CohomologyTable {
    /// Trivial groups are dropped.
    pub fn new(
        space: impl Into<String>,
        n: Option<u32>,
        m: Option<u32>,
        dimension: Option<u32>,
        groups: BTreeMap<u32, AbelianGroup>,
    ) -> Self {
        CohomologyTable {
            space: space.into(),
            n,
            m,
            dimension,
            groups: groups
                .into_iter()
                .filter(|(_, g)| !g.is_trivial())
                .collect(),
        }
    }

    /// Nontrivial groups, ascending by degree.
    pub fn groups(&self) -> &BTreeMap<u32, AbelianGroup> {
        &self.groups
    }

    pub fn group(&self, degree: u32) -> AbelianGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    pub fn betti(&self, degree: u32) -> usize {
        self.groups.get(&degree).map_or(0, AbelianGroup::free_rank)
    }

    pub fn torsion(&self, degree: u32) -> Vec<BigInt> {
        self.groups
            .get(&degree)
            .map(|g| g.torsion().to_vec())
            .unwrap_or_default()
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.groups.keys().next_back().copied()
    }

    /// Rational Poincaré polynomial.
    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        let top = self.top_degree().unwrap_or(0);
        PoincarePolynomial::new((0..=top).map(|d| self.betti(d) as u64).collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.poincare_polynomial().alternating_sum()
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.space)?;
        if let Some(d) = self.dimension {
            write!(f, " (dimension {d})")?;
        }
        writeln!(f)?;
        for (d, g) in &self.groups {
            writeln!(f, "H^{d} = {g}")?;
        }
        Ok(())
    }
}

/// Cohomology of the `S^{2r-1}`-bundle over the base with Euler class `e`
/// (homogeneous of degree `2r`, or zero). Every degree of the base up to its
/// truncation must be free.
pub fn sphere_bundle_cohomology(
    base: &PresentedGradedRing,
    euler: &GradedPolynomial,
    fiber_rank: u32,
) -> Result<BTreeMap<u32, AbelianGroup>> {
    if fiber_rank == 0 {
        return Err(Error::InvalidParameters(
            "fiber rank must be positive".into(),
        ));
    }
    let shift = 2 * fiber_rank;
    match euler.homogeneous_degree() {
        Some(d) if d != shift => {
            return Err(Error::DegreeMismatch {
                expected: shift,
                found: d,
            })
        }
        None if !euler.is_zero() => return Err(Error::Inhomogeneous),
        _ => {}
    }
    let top = base.truncation_degree() + shift - 1;
    for d in (0..=base.truncation_degree()).step_by(2) {
        let b = base.degree_basis(d);
        if !b.is_free() {
            return Err(Error::NotFree {
                degree: d,
                torsion: b.torsion_report().iter().map(ToString::to_string).collect(),
            });
        }
    }

    let group_in = |degree: u32| -> Result<AbelianGroup> {
        if degree.is_multiple_of(2) {
            match degree.checked_sub(shift) {
                None => Ok(AbelianGroup::free(base.degree_basis(degree).rank())),
                Some(source) => Ok(cokernel_group(
                    &base.multiplication_matrix_of_degree(euler, shift, source)?,
                )),
            }
        } else {
            match (degree + 1).checked_sub(shift) {
                None => Ok(AbelianGroup::trivial()),
                Some(source) => Ok(AbelianGroup::free(
                    kernel(&base.multiplication_matrix_of_degree(euler, shift, source)?).rank,
                )),
            }
        }
    };

    let degrees: Vec<u32> = (0..=top).collect();
    let workers = thread::available_parallelism()
        .map_or(1, usize::from)
        .min(8);
    let chunk = degrees.len().div_ceil(workers).max(1);
    let results: Vec<Result<(u32, AbelianGroup)>> = thread::scope(|s| {
        let handles: Vec<_> = degrees
            .chunks(chunk)
            .map(|part| {
                let group_in = &group_in;
                s.spawn(move || {
                    part.iter()
                        .map(|&d| group_in(d).map(|g| (d, g)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

/// `Hol₁(Gr(n, m))` as the sphere bundle over the flag `[1, n-1, m]`.
pub fn hol1_table(n: u32, m: u32) -> Result<CohomologyTable> {
    let base = Hol1Base::new(n, m)?;
    let e = euler_class_hol1(&base)?;
    let groups = sphere_bundle_cohomology(&base.ring, &e, m)?;
    Ok(CohomologyTable::new(
        format!("Hol1(Gr({n},{m}))"),
        Some(n),
        Some(m),
        Some(hol1_dimension(n, m)),
        groups,
    ))
}

pub fn hol1_dimension(n: u32, m: u32) -> u32 {
    2 * n * (m + 1) + 2 * m - 3
}

/// `Rat₁(Gr(n, m))`: the sphere bundle of `m` copies of the tautological line
/// over `P^{n-1}`. Its Euler class `(−u)^m` vanishes because `m ≥ n`.
pub fn rat1_table(n: u32, m: u32) -> Result<CohomologyTable> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters("n and m must be positive".into()));
    }
    if n > m {
        return Err(Error::InvalidParameters(format!(
            "Rat1(Gr(n,m)) is only handled for n <= m, got n = {n}, m = {m}"
        )));
    }
    let blocks = if n == 1 { vec![1] } else { vec![1, n - 1] };
    let base = partial_flag_ring(&FlagSpec::new(blocks)?)?;
    let gens = base.generators().clone();
    let e = if gens.is_empty() {
        GradedPolynomial::zero(&gens)
    } else {
        (-&GradedPolynomial::var(&gens, 0)).pow(m)
    };
    let groups = sphere_bundle_cohomology(&base, &e, m)?;
    Ok(CohomologyTable::new(
        format!("Rat1(Gr({n},{m}))"),
        Some(n),
        Some(m),
        Some(2 * n + 2 * m - 3),
        groups,
    ))
}

/// Outcome of the Poincaré duality checks on a closed odd-dimensional
/// manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityReport {
    pub dimension: u32,
    pub betti_symmetry: bool,
    pub torsion_duality: bool,
    pub euler_characteristic_zero: bool,
    pub nothing_above_dimension: bool,
    pub failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.betti_symmetry
            && self.torsion_duality
            && self.euler_characteristic_zero
            && self.nothing_above_dimension
    }
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "pass" } else { "FAIL" };
        writeln!(f, "duality checks (dimension {}):", self.dimension)?;
        writeln!(f, "  betti symmetry: {}", mark(self.betti_symmetry))?;
        writeln!(f, "  torsion duality: {}", mark(self.torsion_duality))?;
        writeln!(
            f,
            "  euler characteristic zero: {}",
            mark(self.euler_characteristic_zero)
        )?;
        writeln!(
            f,
            "  nothing above dimension: {}",
            mark(self.nothing_above_dimension)
        )?;
        for msg in &self.failures {
            writeln!(f, "  {msg}")?;
        }
        Ok(())
    }
}

pub fn verify_duality(table: &CohomologyTable) -> Result<DualityReport> {
    let d = table
        .dimension
        .ok_or_else(|| Error::InvalidParameters("table has no manifold dimension".into()))?;
    let mut failures = Vec::new();

    let mut betti_symmetry = true;
    for i in 0..=d {
        if table.betti(i) != table.betti(d - i) {
            betti_symmetry = false;
            failures.push(format!(
                "b{i} = {} but b{} = {}",
                table.betti(i),
                d - i,
                table.betti(d - i)
            ));
        }
    }

    let mut torsion_duality = true;
    for i in 1..=d {
        let j = d - i + 1;
        if i < j && table.torsion(i) != table.torsion(j) {
            torsion_duality = false;
            failures.push(format!("torsion of H^{i} differs from torsion of H^{j}"));
        }
    }

    let chi = table.euler_characteristic();
    if chi != 0 {
        failures.push(format!("euler characteristic is {chi}"));
    }

    let above: Vec<u32> = table.groups().keys().copied().filter(|&k| k > d).collect();
    if !above.is_empty() {
        failures.push(format!("nonzero groups above the dimension: {above:?}"));
    }

    Ok(DualityReport {
        dimension: d,
        betti_symmetry,
        torsion_duality,
        euler_characteristic_zero: chi == 0,
        nothing_above_dimension: above.is_empty(),
        failures,
    })
}
