use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`
/// with `t₁ | t₂ | … | t_k` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Builds a group from an invariant-factor chain. Rejects entries below 2
    /// and broken divisibility.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if let Some(t) = torsion.iter().find(|t| **t < BigInt::from(2)) {
            return Err(Error::InvariantViolation(format!(
                "torsion coefficient {t} is not >= 2"
            )));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvariantViolation(
                "torsion coefficients do not form a divisibility chain".into(),
            ));
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    /// Quotient of `Z^generators` by a subgroup whose Smith invariant factors
    /// are `factors` (nonzero, divisibility chain).
    pub fn from_invariant_factors(generators: usize, factors: &[BigInt]) -> Self {
        assert!(factors.len() <= generators, "more factors than generators");
        AbelianGroup {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|f| !f.is_one()).cloned().collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Torsion split into prime-power cyclic factors, e.g. `Z/12 -> Z/3 ⊕ Z/4`.
    pub fn primary_decomposition(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for t in &self.torsion {
            for (p, e) in factorize(t) {
                out.push(num_traits::pow(p, e));
            }
        }
        out.sort();
        out
    }

    /// Display form with the torsion written as prime powers.
    pub fn to_primary_string(&self) -> String {
        render(self.free_rank, &self.primary_decomposition())
    }
}

fn factorize(n: &BigInt) -> BTreeMap<BigInt, usize> {
    let mut n = n.abs();
    let mut out = BTreeMap::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while (&n % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            n /= &p;
        }
        p += 1;
    }
    if n > BigInt::one() {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

fn render(free_rank: usize, torsion: &[BigInt]) -> String {
    let mut parts: Vec<String> = vec!["Z".to_string(); free_rank];
    parts.extend(torsion.iter().map(|t| format!("Z_{t}")));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.free_rank, &self.torsion))
    }
}

/// `Z^rows / (column span of M)`.
pub fn cokernel_group(m: &IntMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    AbelianGroup::from_invariant_factors(m.rows(), &snf.invariant_factors)
}

/// Kernel of `M : Z^cols -> Z^rows` with a saturated integral basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kernel {
    pub rank: usize,
    pub basis: Vec<Vec<BigInt>>,
}

pub fn kernel(m: &IntMatrix) -> Kernel {
    let snf = smith_normal_form(m);
    // Columns of the right transform past the rank are mapped to zero, and the
    // transform is unimodular, so they span a saturated sublattice.
    let basis: Vec<Vec<BigInt>> = (snf.rank()..m.cols())
        .map(|j| snf.right.column(j))
        .collect();
    Kernel {
        rank: basis.len(),
        basis,
    }
}

pub fn column_rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}
