//! Row echelon forms of integer lattices.
//!
//! [`unit_pivot_echelon`] is the workhorse behind graded quotient bases: given
//! generators of a relation lattice `L ⊂ Z^n`, it scans columns in order and
//! turns a column into a pivot exactly when `L`, restricted to vectors that
//! vanish on the earlier pivots, contains a vector with a unit in that column.
//! The pivot set depends only on `L` and the column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn is_zero_row(row: &[BigInt]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// Number of nonzero entries plus their total bit length.
fn row_weight(row: &[BigInt]) -> u64 {
    row.iter()
        .filter(|x| !x.is_zero())
        .map(|x| 1 + x.bits())
        .sum()
}

fn sub_multiple(dst: &mut [BigInt], src: &[BigInt], factor: &BigInt) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d -= factor * s;
        }
    }
}

/// Combines the rows that are nonzero in column `j` by Euclidean steps until at
/// most one of them is nonzero there. Returns its index in `rows`. Zero rows are
/// dropped along the way.
fn gcd_reduce_column(rows: &mut Vec<Vec<BigInt>>, j: usize) -> Option<usize> {
    loop {
        let hits: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][j].is_zero()).collect();
        match hits.len() {
            0 => return None,
            1 => return Some(hits[0]),
            _ => {}
        }
        // Smallest entry first; among equals the sparsest row, to limit fill-in.
        let best = *hits
            .iter()
            .min_by_key(|&&i| (rows[i][j].abs(), row_weight(&rows[i])))
            .expect("nonempty");
        let pivot_row = rows[best].clone();
        for &i in &hits {
            if i == best {
                continue;
            }
            let q = rows[i][j].div_floor(&pivot_row[j]);
            sub_multiple(&mut rows[i], &pivot_row, &q);
        }
        rows.retain(|r| !is_zero_row(r));
    }
}

/// Reduced Hermite basis of a row lattice, built one row at a time.
///
/// Leading entries are positive and every entry sitting in another row's
/// leading column is reduced into `[0, lead)`. With unit leads those entries
/// are zero, which keeps rows sparse and coefficients small while thousands
/// of mostly redundant rows are absorbed.
struct HermiteBuilder {
    ncols: usize,
    /// Indexed by leading column.
    rows: Vec<Option<Vec<BigInt>>>,
}

impl HermiteBuilder {
    fn new(ncols: usize) -> Self {
        HermiteBuilder {
            ncols,
            rows: vec![None; ncols],
        }
    }

    fn first_nonzero(v: &[BigInt], from: usize) -> Option<usize> {
        (from..v.len()).find(|&j| !v[j].is_zero())
    }

    /// Reduces `v` at the leading columns `> after`, in increasing order.
    fn reduce_tail(&self, v: &mut [BigInt], after: usize) {
        for l in after + 1..self.ncols {
            if v[l].is_zero() {
                continue;
            }
            if let Some(r) = &self.rows[l] {
                let q = v[l].div_floor(&r[l]);
                sub_multiple(v, r, &q);
            }
        }
    }

    /// Stores `w` (leading column `j`, positive lead, tail already reduced) and
    /// reduces the rows above it in column `j`.
    fn place(&mut self, j: usize, w: Vec<BigInt>) {
        for e in 0..j {
            let Some(mut r) = self.rows[e].take() else {
                continue;
            };
            if !r[j].is_zero() {
                let q = r[j].div_floor(&w[j]);
                if !q.is_zero() {
                    sub_multiple(&mut r, &w, &q);
                    // Entries to the right of j may have left their ranges.
                    self.rows[j] = Some(w.clone());
                    self.reduce_tail(&mut r, j);
                    self.rows[j] = None;
                }
            }
            self.rows[e] = Some(r);
        }
        self.rows[j] = Some(w);
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        debug_assert_eq!(v.len(), self.ncols);
        let mut start = 0;
        loop {
            let Some(j) = Self::first_nonzero(&v, start) else {
                return;
            };
            start = j;
            match self.rows[j].take() {
                None => {
                    if v[j].is_negative() {
                        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.reduce_tail(&mut v, j);
                    self.place(j, v);
                    return;
                }
                Some(r) => {
                    let (a, b) = (r[j].clone(), v[j].clone());
                    if b.is_multiple_of(&a) {
                        let q = &b / &a;
                        sub_multiple(&mut v, &r, &q);
                        self.rows[j] = Some(r);
                        continue;
                    }
                    // [s t; b/g −a/g] is unimodular and clears column j in
                    // its second output.
                    let eg = a.extended_gcd(&b);
                    let (g, s, t) = (eg.gcd, eg.x, eg.y);
                    let mut w: Vec<BigInt> =
                        r.iter().zip(&v).map(|(x, y)| &s * x + &t * y).collect();
                    let (bg, ag) = (&b / &g, &a / &g);
                    v = r.iter().zip(&v).map(|(x, y)| &bg * x - &ag * y).collect();
                    if w[j].is_negative() {
                        w.iter_mut().for_each(|x| *x = -std::mem::take(x));
                    }
                    self.reduce_tail(&mut w, j);
                    self.place(j, w);
                }
            }
        }
    }

    fn finish(self) -> Vec<(usize, Vec<BigInt>)> {
        self.rows
            .into_iter()
            .enumerate()
            .filter_map(|(j, r)| r.map(|r| (j, r)))
            .collect()
    }
}

/// Hermite normal form of the row lattice as (leading column, row) pairs with
/// strictly increasing leading columns.
fn hermite_rows(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<(usize, Vec<BigInt>)> {
    let mut h = HermiteBuilder::new(ncols);
    for r in rows {
        h.insert(r);
    }
    h.finish()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitPivotEchelon {
    pub ncols: usize,
    /// Pivot columns, ascending.
    pub pivots: Vec<usize>,
    /// Non-pivot columns, ascending. These index a basis of the quotient when
    /// `residual` is empty.
    pub free_columns: Vec<usize>,
    /// `e_p ≡ Σ image[k]·e_{free_columns[k]}` modulo `L`, one entry per pivot.
    pub pivot_images: Vec<Vec<BigInt>>,
    /// Hermite basis of `L ∩ span(free columns)`, in free-column coordinates.
    pub residual: Vec<Vec<BigInt>>,
    /// Leading position of each residual row.
    residual_leads: Vec<usize>,
}

impl UnitPivotEchelon {
    /// Brings free-column coordinates to the canonical representative modulo
    /// the residual lattice.
    fn reduce_residual(&self, out: &mut [BigInt]) {
        for (lead, row) in self.residual_leads.iter().zip(&self.residual) {
            let q = out[*lead].div_floor(&row[*lead]);
            sub_multiple(out, row, &q);
        }
    }

    /// Coordinates of `v ∈ Z^ncols` on the free columns, modulo `L`.
    /// Canonical: vectors congruent modulo `L` give the same output.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ncols, "dimension mismatch");
        let mut out: Vec<BigInt> = self.free_columns.iter().map(|&c| v[c].clone()).collect();
        for (p, image) in self.pivots.iter().zip(&self.pivot_images) {
            let c = &v[*p];
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(image) {
                if !x.is_zero() {
                    *o += c * x;
                }
            }
        }
        self.reduce_residual(&mut out);
        out
    }
}

pub fn unit_pivot_echelon(rows: Vec<Vec<BigInt>>, ncols: usize) -> UnitPivotEchelon {
    for r in &rows {
        assert_eq!(r.len(), ncols, "row length mismatch");
    }
    // Same lattice, at most `ncols` rows, small entries. With unit leads the
    // scan below then finds a single candidate per pivot column.
    let mut active: Vec<Vec<BigInt>> = hermite_rows(rows, ncols)
        .into_iter()
        .map(|(_, r)| r)
        .collect();
    let mut pivot_rows: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut free_columns = Vec::new();

    for j in 0..ncols {
        match gcd_reduce_column(&mut active, j) {
            Some(i) if active[i][j].abs().is_one() => {
                let mut row = active.swap_remove(i);
                if row[j].is_negative() {
                    row.iter_mut().for_each(|x| *x = -std::mem::take(x));
                }
                pivot_rows.push((j, row));
            }
            _ => free_columns.push(j),
        }
    }

    // Back-substitute so every pivot row vanishes on all other pivots.
    for k in (0..pivot_rows.len()).rev() {
        let (head, tail) = pivot_rows.split_at_mut(k + 1);
        let row = &mut head[k].1;
        for (q, later) in tail.iter() {
            let c = row[*q].clone();
            sub_multiple(row, later, &c);
        }
    }

    let pivots = pivot_rows.iter().map(|(c, _)| *c).collect();
    let restricted = active
        .iter()
        .map(|row| free_columns.iter().map(|&c| row[c].clone()).collect())
        .collect();
    let (residual_leads, residual) = hermite_rows(restricted, free_columns.len())
        .into_iter()
        .unzip();
    let mut echelon = UnitPivotEchelon {
        ncols,
        pivots,
        free_columns,
        pivot_images: Vec::new(),
        residual,
        residual_leads,
    };
    echelon.pivot_images = pivot_rows
        .iter()
        .map(|(_, row)| {
            let mut image: Vec<BigInt> = echelon.free_columns.iter().map(|&c| -&row[c]).collect();
            echelon.reduce_residual(&mut image);
            image
        })
        .collect();
    echelon
}

/// Integer row lattice in Hermite echelon form, for membership queries.
#[derive(Clone, Debug)]
pub struct RowLattice {
    ncols: usize,
    /// (leading column, row), leading columns strictly increasing.
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowLattice {
    pub fn new(generators: Vec<Vec<BigInt>>, ncols: usize) -> Self {
        for r in &generators {
            assert_eq!(r.len(), ncols, "row length mismatch");
        }
        RowLattice {
            ncols,
            rows: hermite_rows(generators, ncols),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Integral membership.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ncols, "dimension mismatch");
        let mut v = v.to_vec();
        for (lead, row) in &self.rows {
            let (q, r) = v[*lead].div_rem(&row[*lead]);
            if !r.is_zero() {
                return false;
            }
            sub_multiple(&mut v, row, &q);
        }
        is_zero_row(&v)
    }

    /// Membership in the rational span.
    pub fn contains_rationally(&self, v: &[BigInt]) -> bool {
        let mut gens: Vec<Vec<BigInt>> = self.rows.iter().map(|(_, r)| r.clone()).collect();
        gens.push(v.to_vec());
        RowLattice::new(gens, self.ncols).rank() == self.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn unit_pivots_skip_non_units() {
        // Z^2 / (-2, 1): column 0 only offers a 2, column 1 has a unit.
        let e = unit_pivot_echelon(vec![ints(&[-2, 1])], 2);
        assert_eq!(e.pivots, vec![1]);
        assert_eq!(e.free_columns, vec![0]);
        assert_eq!(e.pivot_images, vec![ints(&[2])]);
        assert!(e.residual.is_empty());
    }

    #[test]
    fn gcd_of_column_decides_pivot() {
        // Rows (2, 1, 0) and (3, 0, 1): column 0 reaches gcd 1, after which
        // only (0, 3, -2) is left and neither remaining column has a unit.
        let e = unit_pivot_echelon(vec![ints(&[2, 1, 0]), ints(&[3, 0, 1])], 3);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.free_columns, vec![1, 2]);
        assert_eq!(e.residual, vec![ints(&[3, -2])]);
        let residual = RowLattice::new(e.residual.clone(), 2);
        for rel in [ints(&[2, 1, 0]), ints(&[3, 0, 1])] {
            assert!(residual.contains(&e.reduce(&rel)));
        }
    }

    #[test]
    fn torsion_is_left_in_residual() {
        let e = unit_pivot_echelon(vec![ints(&[0, -2, 1]), ints(&[-2, 0, 1])], 3);
        assert_eq!(e.pivots, vec![2]);
        assert_eq!(e.residual.len(), 1);
        assert_eq!(e.residual[0], ints(&[2, -2]));
    }

    #[test]
    fn lattice_membership() {
        let l = RowLattice::new(vec![ints(&[2, 0]), ints(&[0, 3])], 2);
        assert!(l.contains(&ints(&[4, -3])));
        assert!(!l.contains(&ints(&[1, 0])));
        assert!(l.contains_rationally(&ints(&[1, 0])));
        let line = RowLattice::new(vec![ints(&[1, 1])], 2);
        assert!(!line.contains_rationally(&ints(&[1, 0])));
    }
}
