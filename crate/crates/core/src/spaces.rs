//! Ring presentations of Grassmannians and partial flag manifolds.
//!
//! A flag manifold `U(N) / U(a₁)×…×U(a_k)` is presented mechanically: one
//! Chern class `c{j}_{i}` of degree `2i` for each block `j` and `1 ≤ i ≤ a_j`,
//! modulo the positive-degree parts of `Π_j (1 + c{j}_1 + … + c{j}_{a_j})`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::graded_poly::{GeneratorSpec, Generators, GradedPolynomial, Monomial};
use crate::quotient_ring::PresentedGradedRing;
use crate::{Error, Result};

/// Block sizes of a partial flag manifold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagSpec {
    blocks: Vec<u32>,
}

impl FlagSpec {
    pub fn new(blocks: Vec<u32>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidParameters(
                "a flag needs at least one block".into(),
            ));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidParameters(
                "flag blocks must be positive".into(),
            ));
        }
        Ok(FlagSpec { blocks })
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    /// Dimension `N` of the ambient space.
    pub fn ambient_dimension(&self) -> u32 {
        self.blocks.iter().sum()
    }

    pub fn complex_dimension(&self) -> u32 {
        let mut total = 0;
        for (i, a) in self.blocks.iter().enumerate() {
            for b in &self.blocks[i + 1..] {
                total += a * b;
            }
        }
        total
    }

    /// Name of the Chern class `i` of block `j` (both 1-based).
    pub fn generator_name(block: usize, index: u32) -> String {
        format!("c{block}_{index}")
    }

    pub fn generators(&self) -> Generators {
        let specs = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| {
                (1..=a).map(move |i| {
                    GeneratorSpec::new(Self::generator_name(j + 1, i), 2 * i)
                        .expect("degree 2i is even and positive")
                })
            })
            .collect();
        Generators::new(specs).expect("generated names are distinct")
    }

    /// Total Chern class `1 + c{j}_1 + … + c{j}_{a_j}` of block `j` (0-based).
    pub fn block_total_class(&self, gens: &Generators, block: usize) -> GradedPolynomial {
        let offset: u32 = self.blocks[..block].iter().sum();
        let mut out = GradedPolynomial::one(gens);
        for i in 0..self.blocks[block] {
            out = &out + &GradedPolynomial::var(gens, (offset + i) as usize);
        }
        out
    }
}

impl fmt::Display for FlagSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "Fl({})", parts.join(","))
    }
}

pub fn partial_flag_ring(spec: &FlagSpec) -> Result<PresentedGradedRing> {
    let gens = spec.generators();
    let mut total = GradedPolynomial::one(&gens);
    for j in 0..spec.blocks.len() {
        total = &total * &spec.block_total_class(&gens, j);
    }
    let relations = (&total - &GradedPolynomial::one(&gens))
        .components()
        .into_values()
        .collect();
    PresentedGradedRing::new(gens, relations, 2 * spec.complex_dimension())
}

/// `Gr(n, m)`, the `n`-planes in `C^{n+m}`, as the two-block flag `[n, m]`.
pub fn grassmannian(n: u32, m: u32) -> Result<PresentedGradedRing> {
    partial_flag_ring(&FlagSpec::new(vec![n, m])?)
}

/// `P^m` as the flag `[1, m]`.
pub fn projective_space(m: u32) -> Result<PresentedGradedRing> {
    partial_flag_ring(&FlagSpec::new(vec![1, m])?)
}

/// Degree `2k` parts of `1 / total`, for `k = 0..=up_to`. `total` must have
/// constant term 1.
pub fn inverse_total_class(total: &GradedPolynomial, up_to: u32) -> Vec<GradedPolynomial> {
    let gens = total.generators();
    let parts: Vec<GradedPolynomial> = (0..=up_to)
        .map(|k| total.homogeneous_component(2 * k))
        .collect();
    let mut inverse = vec![GradedPolynomial::one(gens)];
    for k in 1..=up_to as usize {
        let mut next = GradedPolynomial::zero(gens);
        for i in 1..=k {
            next = &next - &(&parts[i] * &inverse[k - i]);
        }
        inverse.push(next);
    }
    inverse
}

/// `Gr(n, m)` on the generators `c1..cn` alone: the classes of the
/// complementary block are solved for recursively, and the relations are the
/// solved classes of degrees `2m+2 ..= 2m+2n`, which must vanish.
pub fn grassmannian_reduced_presentation(n: u32, m: u32) -> Result<PresentedGradedRing> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameters("n and m must be positive".into()));
    }
    let gens = Generators::new(
        (1..=n)
            .map(|i| GeneratorSpec::new(format!("c{i}"), 2 * i))
            .collect::<Result<_>>()?,
    )?;
    let mut total = GradedPolynomial::one(&gens);
    for i in 0..n as usize {
        total = &total + &GradedPolynomial::var(&gens, i);
    }
    let complement = inverse_total_class(&total, m + n);
    let relations = complement[(m + 1) as usize..].to_vec();
    PresentedGradedRing::new(gens, relations, 2 * n * m)
}

/// Pullbacks along the two projections of the flag `[1, n-1, m]`: to `P^{n+m-1}`
/// (first block) and to `Gr(n, m)` (first two blocks merged).
#[derive(Clone, Debug)]
pub struct PullbackImages {
    /// The generator of the first block.
    pub p1_image: GradedPolynomial,
    /// Chern classes `c_1..c_n` of the tautological `n`-plane bundle.
    pub p2_c_images: Vec<GradedPolynomial>,
    /// Classes `c̄_0..c̄_m` of the quotient bundle, `c̄_0 = 1`, written without
    /// the last block's generators.
    pub p2_cbar_images: Vec<GradedPolynomial>,
}

/// The flag manifold `[1, n-1, m]` fibred over `Gr(n, m)`, with the pullbacks
/// needed for the Euler class and display names for its generators.
#[derive(Clone, Debug)]
pub struct Hol1Base {
    pub n: u32,
    pub m: u32,
    pub spec: FlagSpec,
    pub ring: PresentedGradedRing,
    pub pullbacks: PullbackImages,
    /// Short names: `x` for the line, `y` (or `y1, y2, …`) for the middle
    /// block, `z1..zm` for the last block.
    pub aliases: Vec<String>,
}

impl Hol1Base {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidParameters("n and m must be positive".into()));
        }
        // For n = 1 the middle block is empty and the flag is just P^m.
        let blocks = if n == 1 {
            vec![1, m]
        } else {
            vec![1, n - 1, m]
        };
        let spec = FlagSpec::new(blocks)?;
        let ring = partial_flag_ring(&spec)?;
        let gens = ring.generators().clone();

        let mut aliases = vec!["x".to_string()];
        if n == 2 {
            aliases.push("y".into());
        } else if n > 2 {
            aliases.extend((1..n).map(|i| format!("y{i}")));
        }
        aliases.extend((1..=m).map(|k| format!("z{k}")));

        let tautological = if n == 1 {
            spec.block_total_class(&gens, 0)
        } else {
            &spec.block_total_class(&gens, 0) * &spec.block_total_class(&gens, 1)
        };
        let p2_c_images = (1..=n)
            .map(|k| tautological.homogeneous_component(2 * k))
            .collect();
        let pullbacks = PullbackImages {
            p1_image: GradedPolynomial::var(&gens, 0),
            p2_c_images,
            p2_cbar_images: inverse_total_class(&tautological, m),
        };
        Ok(Hol1Base {
            n,
            m,
            spec,
            ring,
            pullbacks,
            aliases,
        })
    }

    /// Renders a class of the base ring with the short generator names.
    pub fn render(&self, p: &GradedPolynomial) -> String {
        p.render_with(&self.aliases)
    }
}

pub fn pullback_images(n: u32, m: u32) -> Result<PullbackImages> {
    Ok(Hol1Base::new(n, m)?.pullbacks)
}

/// `Σ_{i+j=k} xⁱ yʲ` over the given two generators.
pub fn complete_symmetric_xy(gens: &Generators, x: usize, y: usize, k: u32) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero(gens);
    for i in 0..=k {
        let mut e = vec![0; gens.len()];
        e[x] += i;
        e[y] += k - i;
        out.add_term(Monomial::new(gens, e), BigInt::one());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_dimensions() {
        let s = FlagSpec::new(vec![1, 2, 3]).unwrap();
        assert_eq!(s.ambient_dimension(), 6);
        assert_eq!(s.complex_dimension(), 2 + 3 + 6);
        assert!(FlagSpec::new(vec![]).is_err());
        assert!(FlagSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn flag_112_matches_two_generator_presentation() {
        let r = partial_flag_ring(&FlagSpec::new(vec![1, 1, 2]).unwrap()).unwrap();
        assert_eq!(r.eliminated_generators(), vec!["c3_1", "c3_2"]);
        assert_eq!(
            r.poincare_polynomial().unwrap().to_string(),
            "1+2t^2+3t^4+3t^6+2t^8+t^10"
        );
        let g = r.generators().clone();
        let x = GradedPolynomial::var(&g, 0);
        let y = GradedPolynomial::var(&g, 1);
        let rel = &(&x + &y) * &(&(&x * &x) + &(&y * &y));
        assert!(r.is_zero(&rel).unwrap());
        assert!(r.is_zero(&x.pow(4)).unwrap());
        assert!(r.is_zero(&y.pow(4)).unwrap());
        assert!(!r.is_zero(&x.pow(3)).unwrap());
    }

    #[test]
    fn full_block_is_a_point() {
        let r = partial_flag_ring(&FlagSpec::new(vec![4]).unwrap()).unwrap();
        assert_eq!(r.poincare_polynomial().unwrap().to_string(), "1");
    }

    #[test]
    fn reduced_relations_for_gr_2_3() {
        let r = grassmannian_reduced_presentation(2, 3).unwrap();
        let rho1 = &r.relations()[0];
        assert_eq!(rho1.to_string(), "c1^4 - 3·c1^2·c2 + c2^2");
        let p = grassmannian_reduced_presentation(1, 3).unwrap();
        assert_eq!(p.relations()[0].to_string(), "c1^4");
        assert_eq!(
            p.poincare_polynomial().unwrap().to_string(),
            "1+t^2+t^4+t^6"
        );
    }

    #[test]
    fn pullbacks_for_n_2() {
        let b = Hol1Base::new(2, 3).unwrap();
        let p = &b.pullbacks;
        assert_eq!(b.render(&p.p1_image), "x");
        assert_eq!(b.render(&p.p2_c_images[0]), "x + y");
        assert_eq!(b.render(&p.p2_c_images[1]), "xy");
        assert_eq!(b.render(&p.p2_cbar_images[0]), "1");
        assert_eq!(b.render(&p.p2_cbar_images[2]), "x^2 + xy + y^2");
        assert_eq!(b.render(&p.p2_cbar_images[3]), "-x^3 - x^2y - xy^2 - y^3");
    }

    #[test]
    fn hol1_base_for_n_1_is_projective_space() {
        let b = Hol1Base::new(1, 3).unwrap();
        assert_eq!(b.spec.blocks(), &[1, 3]);
        assert_eq!(
            b.ring.poincare_polynomial().unwrap().to_string(),
            "1+t^2+t^4+t^6"
        );
        assert_eq!(b.pullbacks.p2_c_images.len(), 1);
    }
}
