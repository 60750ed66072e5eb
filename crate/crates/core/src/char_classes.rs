//! Chern-class bookkeeping inside a presented ring.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::graded_poly::{Generators, GradedPolynomial};
use crate::quotient_ring::PresentedGradedRing;
use crate::spaces::{complete_symmetric_xy, Hol1Base};
use crate::{Error, Result};

/// Total Chern class of a complex vector bundle of rank `rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    rank: u32,
    total: GradedPolynomial,
}

impl BundleClass {
    pub fn new(rank: u32, total: GradedPolynomial) -> Result<Self> {
        let constant = total.homogeneous_component(0);
        if constant != GradedPolynomial::one(total.generators()) {
            return Err(Error::InvalidBundle(
                "total Chern class must have constant term 1".into(),
            ));
        }
        if total.max_degree().unwrap_or(0) > 2 * rank {
            return Err(Error::InvalidBundle(format!(
                "class above degree {} for a rank {rank} bundle",
                2 * rank
            )));
        }
        Ok(BundleClass { rank, total })
    }

    pub fn trivial(gens: &Generators, rank: u32) -> Self {
        BundleClass {
            rank,
            total: GradedPolynomial::one(gens),
        }
    }

    /// Builds `1 + c_1 + … + c_r` from `[c_1, …, c_r]`.
    pub fn from_classes(gens: &Generators, classes: &[GradedPolynomial]) -> Result<Self> {
        let mut total = GradedPolynomial::one(gens);
        for c in classes {
            total = total.checked_add(c)?;
        }
        Self::new(classes.len() as u32, total)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn total(&self) -> &GradedPolynomial {
        &self.total
    }

    /// `c_k`; zero above the rank.
    pub fn chern(&self, k: u32) -> GradedPolynomial {
        self.total.homogeneous_component(2 * k)
    }

    pub fn top_class(&self) -> GradedPolynomial {
        self.chern(self.rank)
    }

    /// The dual bundle: `c_k ↦ (−1)^k c_k`.
    pub fn dual(&self) -> Self {
        let mut total = GradedPolynomial::zero(self.total.generators());
        for k in 0..=self.rank {
            let c = self.chern(k);
            total = if k % 2 == 0 { &total + &c } else { &total - &c };
        }
        BundleClass {
            rank: self.rank,
            total,
        }
    }

    /// Twist by a line bundle with first Chern class `line` (degree 2 or zero):
    /// `c_k(E⊗L) = Σ_j C(r−j, k−j) ℓ^{k−j} c_j(E)`.
    pub fn tensor_line(&self, line: &GradedPolynomial) -> Result<Self> {
        if line.generators() != self.total.generators() {
            return Err(Error::GeneratorMismatch);
        }
        if !line.is_zero() && line.homogeneous_degree() != Some(2) {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: line.max_degree().unwrap_or(0),
            });
        }
        let r = self.rank;
        let powers: Vec<GradedPolynomial> = (0..=r).map(|i| line.pow(i)).collect();
        let mut total = GradedPolynomial::zero(line.generators());
        for k in 0..=r {
            for j in 0..=k {
                let coeff = binomial(BigInt::from(r - j), BigInt::from(k - j));
                if coeff.is_zero() {
                    continue;
                }
                let term = (&powers[(k - j) as usize] * &self.chern(j)).scale(&coeff);
                total = &total + &term;
            }
        }
        Ok(BundleClass { rank: r, total })
    }

    /// Rewrites the class in the ring's chosen bases.
    pub fn reduced(&self, ring: &PresentedGradedRing) -> Result<Self> {
        Ok(BundleClass {
            rank: self.rank,
            total: ring.normal_form(&self.total)?,
        })
    }
}

/// Pulled-back quotient bundle `p₂*Q` on the flag `[1, n-1, m]`.
pub fn quotient_bundle(base: &Hol1Base) -> Result<BundleClass> {
    let gens = base.ring.generators();
    BundleClass::from_classes(gens, &base.pullbacks.p2_cbar_images[1..])
}

/// Euler class of the sphere bundle whose total space is `Hol₁(Gr(n, m))`:
/// the top Chern class of `L ⊗ p₂*(Q^∨)` with `c₁(L) = x`, living in degree
/// `2m` of the flag ring `[1, n-1, m]`. Returned unreduced.
pub fn euler_class_hol1(base: &Hol1Base) -> Result<GradedPolynomial> {
    let twisted = quotient_bundle(base)?
        .dual()
        .tensor_line(&base.pullbacks.p1_image)?;
    Ok(twisted.top_class())
}

/// `∂/∂x Σ_{i+j=m+1} xⁱyʲ` over the generators of the flag `[1, 1, m]`.
pub fn euler_closed_form_g2(base: &Hol1Base) -> Result<GradedPolynomial> {
    if base.n != 2 {
        return Err(Error::InvalidParameters(
            "the closed form applies to Gr(2, m) only".into(),
        ));
    }
    let gens = base.ring.generators();
    Ok(complete_symmetric_xy(gens, 0, 1, base.m + 1).partial_derivative_at(0))
}

/// Whether `total(E) · total(F) = 1` in the ring, degree by degree.
pub fn whitney_complementary(
    ring: &PresentedGradedRing,
    e: &BundleClass,
    f: &BundleClass,
) -> Result<bool> {
    let product = e.total().multiply(f.total())?;
    let defect = product.checked_sub(&ring.one())?;
    ring.is_zero(&defect)
}
