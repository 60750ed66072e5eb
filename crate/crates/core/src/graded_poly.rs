//! Commutative polynomials over the integers on evenly graded generators.
//!
//! Every generator has even cohomological degree, so the polynomial ring is
//! honestly commutative and no Koszul signs appear. Monomials are ordered
//! graded-lexicographically with respect to the declared generator order.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    name: String,
    degree: u32,
}

impl GeneratorSpec {
    pub fn new(name: impl Into<String>, degree: u32) -> Result<Self> {
        let name = name.into();
        if degree < 2 || !degree.is_multiple_of(2) {
            return Err(Error::BadGeneratorDegree { name, degree });
        }
        Ok(GeneratorSpec { name, degree })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// Ordered, shared list of generators with distinct names.
#[derive(Clone, Debug, Eq)]
pub struct Generators(Arc<Vec<GeneratorSpec>>);

impl Generators {
    pub fn new(specs: Vec<GeneratorSpec>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &specs {
            if !seen.insert(g.name.as_str()) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Generators(Arc::new(specs)))
    }

    /// Convenience constructor from `(name, degree)` pairs.
    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(n, d)| GeneratorSpec::new(n, d))
                .collect::<Result<_>>()?,
        )
    }

    pub fn empty() -> Self {
        Generators(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> &GeneratorSpec {
        &self.0[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorSpec> {
        self.0.iter()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.0.iter().map(|g| g.degree).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|g| g.name.clone()).collect()
    }
}

impl PartialEq for Generators {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Exponent vector with its cached cohomological degree. The derived order
/// compares the degree first and then the exponents lexicographically, which
/// is graded lex with the first generator largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; n],
        }
    }

    pub fn new(gens: &Generators, exponents: Vec<u32>) -> Self {
        assert_eq!(exponents.len(), gens.len(), "exponent vector length");
        let degree = exponents
            .iter()
            .zip(gens.iter())
            .map(|(e, g)| e * g.degree)
            .sum();
        Monomial { degree, exponents }
    }

    pub fn generator(gens: &Generators, i: usize) -> Self {
        let mut e = vec![0; gens.len()];
        e[i] = 1;
        Self::new(gens, e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Multiplies by generator `i` of degree `deg`.
    pub fn times_generator(&self, i: usize, deg: u32) -> Monomial {
        let mut m = self.clone();
        m.exponents[i] += 1;
        m.degree += deg;
        m
    }

    /// Divides by generator `i` of degree `deg`, if it divides.
    pub fn div_generator(&self, i: usize, deg: u32) -> Option<Monomial> {
        if self.exponents[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exponents[i] -= 1;
        m.degree -= deg;
        Some(m)
    }

    /// Indices of generators dividing this monomial, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    fn render(&self, names: &[String], sep: &str) -> String {
        let mut factors = Vec::new();
        for (e, name) in self.exponents.iter().zip(names) {
            match e {
                0 => {}
                1 => factors.push(name.clone()),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        factors.join(sep)
    }
}

/// All monomials of cohomological degree exactly `d`, largest first.
pub fn monomials_of_degree(gens: &Generators, d: u32) -> Vec<Monomial> {
    fn go(degs: &[u32], i: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == degs.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in (0..=rest / degs[i]).rev() {
            cur.push(e);
            go(degs, i + 1, rest - e * degs[i], cur, out);
            cur.pop();
        }
    }
    let degs = gens.degrees();
    let mut raw = Vec::new();
    go(&degs, 0, d, &mut Vec::with_capacity(degs.len()), &mut raw);
    raw.into_iter()
        .map(|exponents| Monomial {
            degree: d,
            exponents,
        })
        .collect()
}

/// A polynomial with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPolynomial {
    gens: Generators,
    terms: BTreeMap<Monomial, BigInt>,
}

impl GradedPolynomial {
    pub fn zero(gens: &Generators) -> Self {
        GradedPolynomial {
            gens: gens.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(gens: &Generators, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(Monomial::one(gens.len()), c.into());
        p
    }

    pub fn one(gens: &Generators) -> Self {
        Self::constant(gens, 1)
    }

    pub fn var(gens: &Generators, i: usize) -> Self {
        Self::from_monomial(gens, Monomial::generator(gens, i), BigInt::one())
    }

    pub fn generator(gens: &Generators, name: &str) -> Result<Self> {
        Ok(Self::var(gens, gens.index_of(name)?))
    }

    pub fn from_monomial(gens: &Generators, m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(gens);
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms<C: Into<BigInt>>(
        gens: &Generators,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Self {
        let mut p = Self::zero(gens);
        for (e, c) in terms {
            p.add_term(Monomial::new(gens, e), c.into());
        }
        p
    }

    pub fn generators(&self) -> &Generators {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        assert_eq!(m.exponents.len(), self.gens.len(), "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.gens == other.gens {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    /// Exact commutative product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(GradedPolynomial {
            gens: self.gens.clone(),
            terms: acc,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.gens);
        }
        GradedPolynomial {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.gens);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self> {
        Ok(self.partial_derivative_at(self.gens.index_of(name)?))
    }

    pub fn partial_derivative_at(&self, i: usize) -> Self {
        let deg = self.gens.get(i).degree;
        let mut out = Self::zero(&self.gens);
        for (m, c) in &self.terms {
            let e = m.exponents[i];
            if let Some(q) = m.div_generator(i, deg) {
                out.add_term(q, c * BigInt::from(e));
            }
        }
        out
    }

    /// Sum of the terms of cohomological degree exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> Self {
        GradedPolynomial {
            gens: self.gens.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn components(&self) -> BTreeMap<u32, GradedPolynomial> {
        let mut out: BTreeMap<u32, GradedPolynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree)
                .or_insert_with(|| Self::zero(&self.gens))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// `Some(d)` when nonzero and homogeneous of degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).max()
    }

    /// Replaces generator `i` by `value` everywhere.
    pub fn substitute(&self, i: usize, value: &Self) -> Result<Self> {
        self.check_same(value)?;
        let mut powers = vec![Self::one(&self.gens)];
        let mut out = Self::zero(&self.gens);
        for (m, c) in &self.terms {
            let e = m.exponents[i] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty").multiply(value)?;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.exponents[i] = 0;
            rest.degree -= e as u32 * self.gens.get(i).degree;
            let head = Self::from_monomial(&self.gens, rest, c.clone());
            out = &out + &head.multiply(&powers[e])?;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over `target`, sending generator `i` to
    /// generator `mapping[i]` of the target list. Degrees must agree.
    pub fn rename_into(&self, target: &Generators, mapping: &[usize]) -> Result<Self> {
        assert_eq!(mapping.len(), self.gens.len(), "mapping arity");
        for (i, &j) in mapping.iter().enumerate() {
            if self.gens.get(i).degree != target.get(j).degree {
                return Err(Error::DegreeMismatch {
                    expected: self.gens.get(i).degree,
                    found: target.get(j).degree,
                });
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents.iter().enumerate() {
                e[mapping[i]] += x;
            }
            out.add_term(Monomial::new(target, e), c.clone());
        }
        Ok(out)
    }

    /// Renders with the given display names in place of generator names.
    pub fn render_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.gens.len(), "name list arity");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Juxtaposition is only unambiguous when every name in use is one char.
        let compact = self
            .terms
            .keys()
            .flat_map(Monomial::support)
            .all(|i| names[i].chars().count() == 1);
        let sep = if compact { "" } else { "·" };
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let body = m.render(names, sep);
            let mag = c.abs();
            let term = if body.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                body
            } else {
                format!("{mag}{sep}{body}")
            };
            match (k, c.is_negative()) {
                (0, false) => out.push_str(&term),
                (0, true) => {
                    out.push('-');
                    out.push_str(&term);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&term);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&term);
                }
            }
        }
        out
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(&self.gens.names()))
    }
}

// Operator impls panic on mismatched generator lists; use the `checked_*`
// methods or `multiply` when the inputs are not known to agree.

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.checked_add(rhs).expect("generator lists differ")
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.checked_sub(rhs).expect("generator lists differ")
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self.multiply(rhs).expect("generator lists differ")
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            gens: self.gens.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for GradedPolynomial {
    type Output = GradedPolynomial;
    fn add(self, rhs: GradedPolynomial) -> GradedPolynomial {
        &self + &rhs
    }
}

impl Sub for GradedPolynomial {
    type Output = GradedPolynomial;
    fn sub(self, rhs: GradedPolynomial) -> GradedPolynomial {
        &self - &rhs
    }
}

impl Mul for GradedPolynomial {
    type Output = GradedPolynomial;
    fn mul(self, rhs: GradedPolynomial) -> GradedPolynomial {
        &self * &rhs
    }
}

impl Neg for GradedPolynomial {
    type Output = GradedPolynomial;
    fn neg(self) -> GradedPolynomial {
        -&self
    }
}
