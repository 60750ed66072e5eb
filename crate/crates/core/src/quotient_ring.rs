//! Presented graded rings `Z[generators] / (relations)` and their free bases
//! degree by degree.
//!
//! A degree piece `Q_d` is computed from the pieces below it. Every monomial of
//! positive degree is a generator times a monomial of lower degree, so `Q_d` is
//! a quotient of `⊕_g Q_{d - |g|}`. Since the generators of a polynomial ring
//! form a regular sequence, the kernel of that surjection is spanned by
//!
//! * Koszul rows `g·(h·b) − h·(g·b)` for generator pairs `g < h` and basis
//!   elements `b` of `Q_{d-|g|-|h|}`,
//! * the relations of exact degree `d`,
//! * `g·ρ` for leftover (torsion) relations `ρ` of lower pieces.
//!
//! The integer matrix this produces is small (its columns are pairs
//! `(g, b)`), and [`unit_pivot_echelon`] picks the basis: columns are ordered
//! by the monomial `g·b` in ascending graded-lex order, so the smallest
//! monomials become pivots and the basis consists of the largest monomials
//! that cannot be eliminated with a unit coefficient.
//!
//! Before any of this, a relation of the form `±g + (terms without g)`, with
//! `g` a generator of the relation's degree, is used to eliminate `g` by
//! substitution. Baum presentations of flag manifolds consist mostly of such
//! relations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exact_linalg::{smith_normal_form, unit_pivot_echelon, IntMatrix, UnitPivotEchelon};
use crate::graded_poly::{monomials_of_degree, Generators, GradedPolynomial, Monomial};
use crate::{Error, Result};

/// Rank of each degree, `coefficients[d]` being the coefficient of `t^d`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PoincarePolynomial {
    coefficients: Vec<u64>,
}

impl PoincarePolynomial {
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        PoincarePolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn coefficient(&self, d: usize) -> u64 {
        self.coefficients.get(d).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn at_one(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn alternating_sum(&self) -> i64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn product(&self, other: &Self) -> Self {
        if self.coefficients.is_empty() || other.coefficients.is_empty() {
            return Self::default();
        }
        let mut out = vec![0; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (d, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{c}t")?,
                (_, 1) => write!(f, "t^{d}")?,
                _ => write!(f, "{c}t^{d}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Change of coordinates used when the leftover relations of a degree are
/// nonzero: `w = V^T v` diagonalizes them, so the first `relation_rank`
/// entries of `w` are constrained modulo `factors` and the rest are free.
#[derive(Debug)]
struct SmithCoordinates {
    right_transposed: IntMatrix,
    relation_rank: usize,
    factors: Vec<BigInt>,
}

/// One degree of a presented ring: a spanning set of monomials, the relations
/// left among them, and a basis of the free part.
#[derive(Debug)]
pub struct DegreeBasis {
    degree: u32,
    /// Spanning monomials over the ring's full generator list, largest first.
    monomials: Vec<Monomial>,
    /// The same monomials over the working generators.
    core_monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Column `k` of the echelon system is the pair (working generator,
    /// index into the spanning set one generator-degree lower).
    columns: Vec<(usize, usize)>,
    column_index: HashMap<(usize, usize), usize>,
    echelon: Option<UnitPivotEchelon>,
    /// Relations left among the spanning monomials.
    residual: Vec<Vec<BigInt>>,
    torsion: Vec<BigInt>,
    rank: usize,
    smith: Option<SmithCoordinates>,
    basis: Vec<GradedPolynomial>,
    memo: Mutex<HashMap<Monomial, Arc<Vec<BigInt>>>>,
}

impl DegreeBasis {
    fn empty(degree: u32) -> Self {
        DegreeBasis {
            degree,
            monomials: Vec::new(),
            core_monomials: Vec::new(),
            index: HashMap::new(),
            columns: Vec::new(),
            column_index: HashMap::new(),
            echelon: None,
            residual: Vec::new(),
            torsion: Vec::new(),
            rank: 0,
            smith: None,
            basis: Vec::new(),
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Monomials whose classes span this degree, largest first. They form a
    /// basis exactly when [`Self::has_monomial_basis`] holds.
    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn has_monomial_basis(&self) -> bool {
        self.residual.is_empty()
    }

    /// Representatives of a basis of the free part. These are the basis
    /// monomials unless some relation among them survived.
    pub fn basis(&self) -> &[GradedPolynomial] {
        &self.basis
    }

    /// Free rank of this degree.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Invariant factors above 1 of the torsion found in this degree.
    pub fn torsion_report(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Relations among the basis monomials that no unit pivot could solve,
    /// as coordinate vectors over [`Self::basis_monomials`].
    pub fn residual_relations(&self) -> &[Vec<BigInt>] {
        &self.residual
    }

    /// No torsion in this degree.
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    fn require_free(&self) -> Result<()> {
        if self.is_free() {
            Ok(())
        } else {
            Err(Error::NotFree {
                degree: self.degree,
                torsion: self.torsion.iter().map(ToString::to_string).collect(),
            })
        }
    }

    /// Reduces a vector over the echelon columns to spanning coordinates.
    fn reduce_columns(&self, v: &[BigInt]) -> Vec<BigInt> {
        let echelon = self.echelon.as_ref().expect("positive degree");
        let mut out = echelon.reduce(v);
        out.reverse();
        out
    }

    /// Spanning coordinates to coordinates of the free part.
    fn project(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        match &self.smith {
            None => v,
            Some(s) => s.right_transposed.mul_vec(&v)[s.relation_rank..].to_vec(),
        }
    }

    fn vanishes(&self, v: &[BigInt], rational: bool) -> bool {
        match &self.smith {
            None => v.iter().all(Zero::is_zero),
            Some(s) => {
                let w = s.right_transposed.mul_vec(v);
                let (constrained, free) = w.split_at(s.relation_rank);
                free.iter().all(Zero::is_zero)
                    && (rational
                        || constrained
                            .iter()
                            .zip(&s.factors)
                            .all(|(x, f)| (x % f).is_zero()))
            }
        }
    }
}

#[derive(Debug)]
struct Core {
    gens: Generators,
    relations: BTreeMap<u32, Vec<GradedPolynomial>>,
    cache: Vec<OnceLock<Arc<DegreeBasis>>>,
}

/// A presented, evenly graded, commutative ring over the integers, truncated
/// above `truncation_degree` (everything above is declared zero).
#[derive(Clone, Debug)]
pub struct PresentedGradedRing {
    generators: Generators,
    relations: Vec<GradedPolynomial>,
    truncation: u32,
    /// Substitution for each eliminated generator, in working generators.
    substitutions: Vec<Option<GradedPolynomial>>,
    /// Full index -> working index for kept generators.
    working_index: Vec<Option<usize>>,
    /// Working index -> full index.
    working_to_full: Vec<usize>,
    core: Arc<Core>,
}

impl PresentedGradedRing {
    /// Builds a ring. Relations are split into homogeneous components; zero
    /// components are dropped and a nonzero constant term is rejected.
    pub fn new(
        generators: Generators,
        relations: Vec<GradedPolynomial>,
        truncation_degree: u32,
    ) -> Result<Self> {
        if !truncation_degree.is_multiple_of(2) {
            return Err(Error::OddTruncation(truncation_degree));
        }
        let mut split = Vec::new();
        for r in relations {
            if r.generators() != &generators {
                return Err(Error::GeneratorMismatch);
            }
            for (d, c) in r.components() {
                if d == 0 {
                    return Err(Error::ConstantRelation);
                }
                split.push(c);
            }
        }
        split.sort_by_key(|r| r.homogeneous_degree());

        let (substitutions, kept) = eliminate_linear_generators(&generators, &split)?;
        let working_to_full: Vec<usize> = (0..generators.len())
            .filter(|&i| substitutions[i].is_none())
            .collect();
        let mut working_index = vec![None; generators.len()];
        for (w, &f) in working_to_full.iter().enumerate() {
            working_index[f] = Some(w);
        }
        let working_gens = Generators::new(
            working_to_full
                .iter()
                .map(|&i| generators.get(i).clone())
                .collect(),
        )?;

        let mut core_relations: BTreeMap<u32, Vec<GradedPolynomial>> = BTreeMap::new();
        for r in kept {
            let r = project(&r, &working_gens, &working_index);
            if let Some(d) = r.homogeneous_degree() {
                core_relations.entry(d).or_default().push(r);
            }
        }

        let core = Arc::new(Core {
            gens: working_gens,
            relations: core_relations,
            cache: (0..=truncation_degree / 2)
                .map(|_| OnceLock::new())
                .collect(),
        });
        Ok(PresentedGradedRing {
            generators,
            relations: split,
            truncation: truncation_degree,
            substitutions,
            working_index,
            working_to_full,
            core,
        })
    }

    /// Same presentation, different truncation, fresh cache.
    pub fn with_truncation(&self, truncation_degree: u32) -> Result<Self> {
        Self::new(
            self.generators.clone(),
            self.relations.clone(),
            truncation_degree,
        )
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    /// Homogeneous relations as supplied (after splitting).
    pub fn relations(&self) -> &[GradedPolynomial] {
        &self.relations
    }

    pub fn truncation_degree(&self) -> u32 {
        self.truncation
    }

    pub fn generator(&self, name: &str) -> Result<GradedPolynomial> {
        GradedPolynomial::generator(&self.generators, name)
    }

    pub fn zero(&self) -> GradedPolynomial {
        GradedPolynomial::zero(&self.generators)
    }

    pub fn one(&self) -> GradedPolynomial {
        GradedPolynomial::one(&self.generators)
    }

    /// Names of generators that were solved for and substituted away.
    pub fn eliminated_generators(&self) -> Vec<String> {
        (0..self.generators.len())
            .filter(|&i| self.substitutions[i].is_some())
            .map(|i| self.generators.get(i).name().to_string())
            .collect()
    }

    /// The equivalent presentation on the remaining generators only.
    pub fn eliminated_presentation(&self) -> Result<PresentedGradedRing> {
        let relations = self.core.relations.values().flatten().cloned().collect();
        PresentedGradedRing::new(self.core.gens.clone(), relations, self.truncation)
    }

    /// Rewrites `p` without eliminated generators (still over the full list).
    pub fn substitute_eliminated(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        if p.generators() != &self.generators {
            return Err(Error::GeneratorMismatch);
        }
        let mut out = p.clone();
        for (i, s) in self.substitutions.iter().enumerate() {
            if let Some(s) = s {
                out = out.substitute(i, s)?;
            }
        }
        Ok(out)
    }

    pub fn degree_basis(&self, d: u32) -> Arc<DegreeBasis> {
        if !d.is_multiple_of(2) || d > self.truncation {
            return Arc::new(DegreeBasis::empty(d));
        }
        self.core.cache[(d / 2) as usize]
            .get_or_init(|| Arc::new(self.compute_degree(d)))
            .clone()
    }

    fn compute_degree(&self, d: u32) -> DegreeBasis {
        let core = &self.core;
        if d == 0 {
            let one = Monomial::one(core.gens.len());
            let mut b = DegreeBasis::empty(0);
            b.monomials = vec![Monomial::one(self.generators.len())];
            b.basis = vec![GradedPolynomial::one(&self.generators)];
            b.index.insert(one.clone(), 0);
            b.core_monomials = vec![one];
            b.rank = 1;
            return b;
        }
        let degs = core.gens.degrees();
        let n = degs.len();

        // Columns (g, k) meaning g · (basis element k in degree d - |g|).
        let mut cols: Vec<(Monomial, usize, usize)> = Vec::new();
        let mut lower: Vec<Option<Arc<DegreeBasis>>> = vec![None; n];
        for g in 0..n {
            if degs[g] > d {
                continue;
            }
            let below = self.degree_basis(d - degs[g]);
            for (k, m) in below.core_monomials.iter().enumerate() {
                cols.push((m.times_generator(g, degs[g]), g, k));
            }
            lower[g] = Some(below);
        }
        cols.sort();
        let column_index: HashMap<(usize, usize), usize> = cols
            .iter()
            .enumerate()
            .map(|(c, (_, g, k))| ((*g, *k), c))
            .collect();
        let ncols = cols.len();
        let place = |g: usize, v: &[BigInt], row: &mut Vec<BigInt>, sign: bool| {
            for (k, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let c = column_index[&(g, k)];
                if sign {
                    row[c] += x;
                } else {
                    row[c] -= x;
                }
            }
        };

        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        // Koszul rows.
        for g in 0..n {
            for h in g + 1..n {
                if degs[g] + degs[h] > d {
                    continue;
                }
                let base = self.degree_basis(d - degs[g] - degs[h]);
                for b in &base.core_monomials {
                    let hb = self.core_coordinates(&b.times_generator(h, degs[h]));
                    let gb = self.core_coordinates(&b.times_generator(g, degs[g]));
                    let mut row = vec![BigInt::zero(); ncols];
                    place(g, &hb, &mut row, true);
                    place(h, &gb, &mut row, false);
                    rows.push(row);
                }
            }
        }
        // Relations of exact degree d.
        for r in core.relations.get(&d).into_iter().flatten() {
            let mut row = vec![BigInt::zero(); ncols];
            for (m, c) in r.terms() {
                let g = m.support().next().expect("positive degree monomial");
                let below = self.core_coordinates(&m.div_generator(g, degs[g]).expect("divides"));
                let scaled: Vec<BigInt> = below.iter().map(|x| x * c).collect();
                place(g, &scaled, &mut row, true);
            }
            rows.push(row);
        }
        // Leftover relations from lower degrees.
        for (g, below) in lower.iter().enumerate().take(n) {
            if let Some(below) = below {
                for rho in &below.residual {
                    let mut row = vec![BigInt::zero(); ncols];
                    place(g, rho, &mut row, true);
                    rows.push(row);
                }
            }
        }

        let echelon = unit_pivot_echelon(rows, ncols);
        let mut core_monomials: Vec<Monomial> = echelon
            .free_columns
            .iter()
            .map(|&c| cols[c].0.clone())
            .collect();
        core_monomials.reverse();
        let mut residual: Vec<Vec<BigInt>> = echelon
            .residual
            .iter()
            .map(|r| r.iter().rev().cloned().collect())
            .collect();
        residual.retain(|r| r.iter().any(|x| !x.is_zero()));

        let monomials: Vec<Monomial> = core_monomials
            .iter()
            .map(|m| self.lift_monomial(m))
            .collect();
        let span = core_monomials.len();
        let (torsion, smith, basis) = if residual.is_empty() {
            let basis: Vec<GradedPolynomial> = monomials
                .iter()
                .map(|m| {
                    GradedPolynomial::from_monomial(&self.generators, m.clone(), BigInt::one())
                })
                .collect();
            (Vec::new(), None, basis)
        } else {
            let m = IntMatrix::new(
                residual.len(),
                span,
                residual.iter().flatten().cloned().collect(),
            )
            .expect("rectangular");
            let snf = smith_normal_form(&m);
            let r = snf.rank();
            let inverse = snf
                .right
                .unimodular_inverse()
                .expect("Smith transforms are unimodular");
            let basis = (r..span)
                .map(|j| {
                    let mut p = GradedPolynomial::zero(&self.generators);
                    for (mono, c) in monomials.iter().zip(inverse.row(j)) {
                        p.add_term(mono.clone(), c.clone());
                    }
                    p
                })
                .collect();
            let torsion = snf
                .invariant_factors
                .iter()
                .filter(|f| !f.is_one())
                .cloned()
                .collect();
            let smith = SmithCoordinates {
                right_transposed: snf.right.transpose(),
                relation_rank: r,
                factors: snf.invariant_factors,
            };
            (torsion, Some(smith), basis)
        };

        let index = core_monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        DegreeBasis {
            degree: d,
            rank: basis.len(),
            monomials,
            core_monomials,
            index,
            columns: cols.iter().map(|(_, g, k)| (*g, *k)).collect(),
            column_index,
            echelon: Some(echelon),
            residual,
            torsion,
            smith,
            basis,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Coordinates of a working-generator monomial in its degree's basis.
    fn core_coordinates(&self, m: &Monomial) -> Arc<Vec<BigInt>> {
        let d = m.degree();
        let basis = self.degree_basis(d);
        if basis.core_monomials.is_empty() {
            return Arc::new(Vec::new());
        }
        if let Some(&i) = basis.index.get(m) {
            let mut v = vec![BigInt::zero(); basis.core_monomials.len()];
            v[i] = BigInt::one();
            return Arc::new(v);
        }
        if let Some(v) = basis.memo.lock().expect("memo lock").get(m) {
            return v.clone();
        }
        let degs = self.core.gens.degrees();
        let g = m
            .support()
            .next()
            .expect("degree 0 is handled by the index");
        let below = self.core_coordinates(&m.div_generator(g, degs[g]).expect("divides"));
        let mut v = vec![BigInt::zero(); basis.columns.len()];
        for (k, x) in below.iter().enumerate() {
            if !x.is_zero() {
                v[basis.column_index[&(g, k)]] += x;
            }
        }
        let coords = Arc::new(basis.reduce_columns(&v));
        basis
            .memo
            .lock()
            .expect("memo lock")
            .insert(m.clone(), coords.clone());
        coords
    }

    fn lift_monomial(&self, m: &Monomial) -> Monomial {
        let mut e = vec![0; self.generators.len()];
        for (w, &x) in m.exponents().iter().enumerate() {
            e[self.working_to_full[w]] = x;
        }
        Monomial::new(&self.generators, e)
    }

    /// Coordinates of `p` over the spanning monomials of degree `d`.
    fn spanning_coordinates(&self, p: &GradedPolynomial, d: u32) -> Result<Vec<BigInt>> {
        let q = self.substitute_eliminated(p)?;
        if let Some(found) = q.max_degree() {
            if !q.is_homogeneous() || found != d {
                return Err(if q.is_homogeneous() {
                    Error::DegreeMismatch { expected: d, found }
                } else {
                    Error::Inhomogeneous
                });
            }
        }
        let basis = self.degree_basis(d);
        let mut out = vec![BigInt::zero(); basis.monomials.len()];
        if out.is_empty() {
            return Ok(out);
        }
        let q = project(&q, &self.core.gens, &self.working_index);
        for (m, c) in q.terms() {
            let v = self.core_coordinates(m);
            for (o, x) in out.iter_mut().zip(v.iter()) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        Ok(out)
    }

    /// Coordinates of `p`, homogeneous of degree `d` (or zero), over
    /// `degree_basis(d).basis()`. Torsion components are dropped.
    pub fn coordinates(&self, p: &GradedPolynomial, d: u32) -> Result<Vec<BigInt>> {
        let v = self.spanning_coordinates(p, d)?;
        Ok(self.degree_basis(d).project(v))
    }

    /// Coordinates of a nonzero homogeneous polynomial in the basis of its
    /// degree. The zero polynomial reduces to the empty vector.
    pub fn reduce(&self, p: &GradedPolynomial) -> Result<Vec<BigInt>> {
        if p.is_zero() {
            return Ok(Vec::new());
        }
        let d = p.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        self.coordinates(p, d)
    }

    /// Coordinates of every monomial of degree `d` that avoids the eliminated
    /// generators, keyed over the full generator list.
    pub fn reduction_map(&self, d: u32) -> BTreeMap<Monomial, Vec<BigInt>> {
        let basis = self.degree_basis(d);
        monomials_of_degree(&self.core.gens, d)
            .into_iter()
            .map(|m| {
                let v = if basis.monomials.is_empty() {
                    Vec::new()
                } else {
                    basis.project(self.core_coordinates(&m).as_ref().clone())
                };
                (self.lift_monomial(&m), v)
            })
            .collect()
    }

    /// Canonical representative: each homogeneous component rewritten in the
    /// chosen basis. Fails on degrees with torsion.
    pub fn normal_form(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        let mut out = self.zero();
        for (d, c) in self.substitute_eliminated(p)?.components() {
            let basis = self.degree_basis(d);
            basis.require_free()?;
            let coords = self.coordinates(&c, d)?;
            for (b, x) in basis.basis.iter().zip(coords) {
                out = &out + &b.scale(&x);
            }
        }
        Ok(out)
    }

    /// Whether `p` is zero in the ring (each component separately).
    pub fn is_zero(&self, p: &GradedPolynomial) -> Result<bool> {
        self.vanishes(p, false)
    }

    /// Whether `p` is zero after tensoring with the rationals.
    pub fn is_zero_rationally(&self, p: &GradedPolynomial) -> Result<bool> {
        self.vanishes(p, true)
    }

    fn vanishes(&self, p: &GradedPolynomial, rational: bool) -> Result<bool> {
        for (d, c) in self.substitute_eliminated(p)?.components() {
            let v = self.spanning_coordinates(&c, d)?;
            if !self.degree_basis(d).vanishes(&v, rational) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equal_in_ring(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> Result<bool> {
        self.is_zero(&a.checked_sub(b)?)
    }

    /// Matrix of multiplication by `e` from degree `d` to `d + |e|`; columns are
    /// the images of the source basis elements.
    pub fn multiplication_matrix(&self, e: &GradedPolynomial, d: u32) -> Result<IntMatrix> {
        let k = e.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        self.multiplication_matrix_of_degree(e, k, d)
    }

    /// As [`Self::multiplication_matrix`], with the degree of `e` given
    /// explicitly so that `e` may be zero.
    pub fn multiplication_matrix_of_degree(
        &self,
        e: &GradedPolynomial,
        e_degree: u32,
        d: u32,
    ) -> Result<IntMatrix> {
        if let Some(k) = e.homogeneous_degree() {
            if k != e_degree {
                return Err(Error::DegreeMismatch {
                    expected: e_degree,
                    found: k,
                });
            }
        } else if !e.is_zero() {
            return Err(Error::Inhomogeneous);
        }
        let source = self.degree_basis(d);
        let target = self.degree_basis(d + e_degree);
        source.require_free()?;
        target.require_free()?;
        let columns = source
            .basis
            .iter()
            .map(|b| self.coordinates(&(b * e), d + e_degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMatrix::from_columns(target.basis.len(), &columns))
    }

    /// Free ranks in degrees `0..=truncation`, torsion ignored.
    pub fn graded_ranks(&self) -> PoincarePolynomial {
        PoincarePolynomial::new(
            (0..=self.truncation)
                .map(|d| self.degree_basis(d).rank() as u64)
                .collect(),
        )
    }

    /// Poincaré polynomial; fails if some degree is not free.
    pub fn poincare_polynomial(&self) -> Result<PoincarePolynomial> {
        for d in (0..=self.truncation).step_by(2) {
            self.degree_basis(d).require_free()?;
        }
        Ok(self.graded_ranks())
    }

    /// Highest degree with a nonzero free part, up to the truncation.
    pub fn top_degree(&self) -> Option<u32> {
        (0..=self.truncation)
            .rev()
            .find(|&d| d % 2 == 0 && self.degree_basis(d).rank() > 0)
    }

    /// Products `monomial · relation` of exact degree `d`: generators of the
    /// degree-`d` part of the ideal.
    pub fn ideal_generators_in_degree(&self, d: u32) -> Vec<GradedPolynomial> {
        let mut out = Vec::new();
        for r in &self.relations {
            let k = r
                .homogeneous_degree()
                .expect("stored relations are homogeneous");
            if k > d {
                continue;
            }
            for m in monomials_of_degree(&self.generators, d - k) {
                let mono = GradedPolynomial::from_monomial(&self.generators, m, BigInt::one());
                out.push(&mono * r);
            }
        }
        out
    }
}

/// Re-expresses a polynomial free of eliminated generators over the working
/// generator list.
fn project(
    p: &GradedPolynomial,
    working: &Generators,
    working_index: &[Option<usize>],
) -> GradedPolynomial {
    let mut out = GradedPolynomial::zero(working);
    for (m, c) in p.terms() {
        let mut e = vec![0; working.len()];
        for (i, &x) in m.exponents().iter().enumerate() {
            if x == 0 {
                continue;
            }
            let w = working_index[i].expect("eliminated generator left in polynomial");
            e[w] = x;
        }
        out.add_term(Monomial::new(working, e), c.clone());
    }
    out
}

type Elimination = (Vec<Option<GradedPolynomial>>, Vec<GradedPolynomial>);

/// Solves relations `±g + (terms without g)` for `g`, lowest degree first, and
/// returns the substitutions plus the relations that were not consumed (with
/// all substitutions applied, zeros dropped).
fn eliminate_linear_generators(
    gens: &Generators,
    relations: &[GradedPolynomial],
) -> Result<Elimination> {
    let n = gens.len();
    let mut subs: Vec<Option<GradedPolynomial>> = vec![None; n];
    let mut kept: Vec<GradedPolynomial> = Vec::new();
    let apply =
        |p: &GradedPolynomial, subs: &[Option<GradedPolynomial>]| -> Result<GradedPolynomial> {
            let mut out = p.clone();
            for (i, s) in subs.iter().enumerate() {
                if let Some(s) = s {
                    out = out.substitute(i, s)?;
                }
            }
            Ok(out)
        };

    for r in relations {
        let r = apply(r, &subs)?;
        let Some(d) = r.homogeneous_degree() else {
            continue;
        };
        let candidate = (0..n).rev().find(|&i| {
            subs[i].is_none()
                && gens.get(i).degree() == d
                && r.coefficient(&Monomial::generator(gens, i)).abs().is_one()
        });
        let Some(i) = candidate else {
            kept.push(r);
            continue;
        };
        let g = Monomial::generator(gens, i);
        let c = r.coefficient(&g);
        let mut rest = r.clone();
        rest.add_term(g, -&c);
        // r = c·g + rest = 0 with c = ±1, so g = -c·rest.
        let value = rest.scale(&-c);
        for s in subs.iter_mut().flatten() {
            *s = s.substitute(i, &value)?;
        }
        subs[i] = Some(value);
    }
    let kept = kept
        .iter()
        .map(|r| apply(r, &subs))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|r| !r.is_zero())
        .collect();
    Ok((subs, kept))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Generators {
        Generators::from_pairs(&[("x", 2), ("y", 2)]).unwrap()
    }

    fn poly(gens: &Generators, terms: &[(&[u32], i64)]) -> GradedPolynomial {
        GradedPolynomial::from_terms(gens, terms.iter().map(|(e, c)| (e.to_vec(), *c)))
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Z[x, y] / ((x+y)(x²+y²), x⁴, y⁴)
    fn flag_124() -> PresentedGradedRing {
        let g = xy();
        let r1 = poly(
            &g,
            &[(&[3, 0], 1), (&[2, 1], 1), (&[1, 2], 1), (&[0, 3], 1)],
        );
        let r2 = poly(&g, &[(&[4, 0], 1)]);
        let r3 = poly(&g, &[(&[0, 4], 1)]);
        PresentedGradedRing::new(g, vec![r1, r2, r3], 10).unwrap()
    }

    fn render(ms: &[Monomial], g: &Generators) -> Vec<String> {
        ms.iter()
            .map(|m| GradedPolynomial::from_monomial(g, m.clone(), BigInt::one()).to_string())
            .collect()
    }

    #[test]
    fn degree_six_basis() {
        let r = flag_124();
        let b = r.degree_basis(6);
        assert_eq!(
            render(b.basis_monomials(), r.generators()),
            ["x^3", "x^2y", "xy^2"]
        );
        let g = r.generators();
        let y3 = poly(g, &[(&[0, 3], 1)]);
        assert_eq!(r.reduce(&y3).unwrap(), ints(&[-1, -1, -1]));
    }

    #[test]
    fn degree_zero_and_odd() {
        let r = flag_124();
        assert_eq!(r.degree_basis(0).rank(), 1);
        assert_eq!(r.degree_basis(5).rank(), 0);
        assert_eq!(r.degree_basis(12).rank(), 0);
    }

    #[test]
    fn degree_eight_relation_holds() {
        let r = flag_124();
        let g = r.generators();
        assert_eq!(r.degree_basis(8).rank(), 2);
        // x²y² = −x³y − xy³
        let lhs = poly(g, &[(&[2, 2], 1)]);
        let rhs = poly(g, &[(&[3, 1], -1), (&[1, 3], -1)]);
        assert!(r.equal_in_ring(&lhs, &rhs).unwrap());
    }

    #[test]
    fn poincare_of_flag() {
        let p = flag_124().poincare_polynomial().unwrap();
        assert_eq!(p.to_string(), "1+2t^2+3t^4+3t^6+2t^8+t^10");
        assert_eq!(p.at_one(), 12);
    }

    #[test]
    fn multiplication_by_euler_class() {
        let r = flag_124();
        let g = r.generators();
        let e = poly(g, &[(&[2, 0], 3), (&[1, 1], 2), (&[0, 2], 1)]);
        let m = r.multiplication_matrix(&e, 2).unwrap();
        assert_eq!(
            m,
            IntMatrix::from_rows(&[vec![3, -1], vec![2, 2], vec![1, 1]])
        );
        let m4 = r.multiplication_matrix(&e, 4).unwrap();
        let snf = smith_normal_form(&m4);
        assert_eq!(snf.invariant_factors, ints(&[1, 4]));
        let id = r.multiplication_matrix(&r.one(), 4).unwrap();
        assert_eq!(id, IntMatrix::identity(3));
    }

    #[test]
    fn chi_of_y_squared() {
        let r = flag_124();
        let g = r.generators();
        let e = poly(g, &[(&[2, 0], 3), (&[1, 1], 2), (&[0, 2], 1)]);
        let y2 = poly(g, &[(&[0, 2], 1)]);
        let expected = poly(g, &[(&[3, 1], -3), (&[1, 3], -1)]);
        assert!(r.equal_in_ring(&(&e * &y2), &expected).unwrap());
    }

    #[test]
    fn point_ring() {
        let r = PresentedGradedRing::new(Generators::empty(), vec![], 0).unwrap();
        assert_eq!(r.poincare_polynomial().unwrap().to_string(), "1");
    }

    #[test]
    fn linear_relations_are_substituted() {
        let g = Generators::from_pairs(&[("x", 2), ("y", 2), ("z", 2)]).unwrap();
        let rel = poly(&g, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]);
        let cube = poly(&g, &[(&[0, 0, 3], 1)]);
        let r = PresentedGradedRing::new(g.clone(), vec![rel, cube], 6).unwrap();
        assert_eq!(r.eliminated_generators(), vec!["z".to_string()]);
        // z = −x − y, so z³ = −(x+y)³ = 0
        let xy3 = poly(
            &g,
            &[
                (&[3, 0, 0], 1),
                (&[2, 1, 0], 3),
                (&[1, 2, 0], 3),
                (&[0, 3, 0], 1),
            ],
        );
        assert!(r.is_zero(&xy3).unwrap());
        assert_eq!(
            r.poincare_polynomial().unwrap().to_string(),
            "1+2t^2+3t^4+3t^6"
        );
    }

    #[test]
    fn torsion_is_reported() {
        let g = Generators::from_pairs(&[("c1", 2), ("c2", 4)]).unwrap();
        let r1 = poly(&g, &[(&[3, 0], 1), (&[1, 1], -2)]);
        let r2 = poly(&g, &[(&[4, 0], 1), (&[0, 2], -2)]);
        let r = PresentedGradedRing::new(g, vec![r1, r2], 8).unwrap();
        let b8 = r.degree_basis(8);
        assert_eq!(b8.torsion_report(), &ints(&[2])[..]);
        assert_eq!(b8.rank(), 1);
        assert!(matches!(
            r.poincare_polynomial(),
            Err(Error::NotFree { degree: 8, .. })
        ));
        assert_eq!(r.graded_ranks().to_string(), "1+t^2+2t^4+t^6+t^8");
    }

    #[test]
    fn inhomogeneous_reduce_is_rejected() {
        let r = flag_124();
        let p = poly(r.generators(), &[(&[1, 0], 1), (&[2, 0], 1)]);
        assert_eq!(r.reduce(&p), Err(Error::Inhomogeneous));
        assert!(PresentedGradedRing::new(xy(), vec![GradedPolynomial::one(&xy())], 4).is_err());
        assert!(PresentedGradedRing::new(xy(), vec![], 5).is_err());
    }

    #[test]
    fn poincare_display() {
        let p = PoincarePolynomial::new(vec![1, 0, 2, 0, 2, 0, 1, 1, 0, 2]);
        assert_eq!(p.to_string(), "1+2t^2+2t^4+t^6+t^7+2t^9");
        assert_eq!(p.alternating_sum(), 1 + 2 + 2 + 1 - 1 - 2);
    }
}
