use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `left · M · right = diagonal`, with `left` and `right` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form over the integers.
///
/// Pivots on an entry of minimal absolute value in the remaining block, clears
/// its row and column by Euclidean steps, and repeats; divisibility of the
/// diagonal is restored afterwards by an explicit gcd/lcm pass.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let mut rank = 0;
    while rank < rows.min(cols) {
        let t = rank;
        let Some((pi, pj)) = min_abs_in_block(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                left.add_row_multiple(i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                right.add_col_multiple(j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if clean {
                break;
            }
            // A remainder survived: it is smaller than the pivot, so move it in.
            let mut best = (t, t);
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                    best = (t, j);
                }
            }
            d.swap_rows(t, best.0);
            left.swap_rows(t, best.0);
            d.swap_cols(t, best.1);
            right.swap_cols(t, best.1);
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        rank += 1;
    }

    for i in 0..rank {
        for j in i + 1..rank {
            fix_divisibility(&mut d, &mut left, &mut right, i, j);
        }
    }

    let invariant_factors = (0..rank).map(|i| d[(i, i)].clone()).collect();
    SmithDecomposition {
        left,
        diagonal: d,
        right,
        invariant_factors,
    }
}

fn min_abs_in_block(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

/// Replaces diag(a, b) at positions (i, i), (j, j) by diag(gcd, lcm).
fn fix_divisibility(
    d: &mut IntMatrix,
    left: &mut IntMatrix,
    right: &mut IntMatrix,
    i: usize,
    j: usize,
) {
    let a = d[(i, i)].clone();
    let b = d[(j, j)].clone();
    if b.is_multiple_of(&a) {
        return;
    }
    let eg = a.extended_gcd(&b);
    let (g, s, t) = (eg.gcd, eg.x, eg.y);
    let one = BigInt::from(1);

    // [[a,0],[0,b]] -> [[a,0],[b,b]]
    d.add_col_multiple(i, j, &one);
    right.add_col_multiple(i, j, &one);

    // -> [[g, t·b], [0, a·b/g]]; the 2x2 row operation has determinant 1
    let r = -(&b / &g);
    let q = &a / &g;
    d.combine_rows(i, j, [&s, &t, &r, &q]);
    left.combine_rows(i, j, [&s, &t, &r, &q]);

    // -> [[g, 0], [0, lcm]]
    let f = -(&t * &b / &g);
    d.add_col_multiple(j, i, &f);
    right.add_col_multiple(j, i, &f);

    if d[(j, j)].is_negative() {
        d.negate_row(j);
        left.negate_row(j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.left * m) * &s.right, s.diagonal);
        assert_eq!(s.left.determinant().abs(), BigInt::from(1));
        assert_eq!(s.right.determinant().abs(), BigInt::from(1));
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    fn factors(s: &SmithDecomposition) -> Vec<i64> {
        s.invariant_factors
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    #[test]
    fn chi_from_degree_two() {
        let m = IntMatrix::from_rows(&[vec![3, -1], vec![2, 2], vec![1, 1]]);
        let s = check(&m);
        assert_eq!(factors(&s), vec![1, 4]);
        assert_eq!(
            s.diagonal,
            IntMatrix::from_rows(&[vec![1, 0], vec![0, 4], vec![0, 0]])
        );
    }

    #[test]
    fn chi_from_degree_four() {
        let m = IntMatrix::from_rows(&[vec![1, 1, -3], vec![-1, -1, -1]]);
        let s = check(&m);
        assert_eq!(
            s.diagonal,
            IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 4, 0]])
        );
    }

    #[test]
    fn identity_and_coprime_diagonal() {
        assert_eq!(factors(&check(&IntMatrix::identity(3))), vec![1, 1, 1]);
        let s = check(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(factors(&s), vec![1, 6]);
        let s = check(&IntMatrix::from_rows(&[vec![6, 0], vec![0, 4]]));
        assert_eq!(factors(&s), vec![2, 12]);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(check(&IntMatrix::zeros(0, 3)).invariant_factors.is_empty());
        assert!(check(&IntMatrix::zeros(3, 0)).invariant_factors.is_empty());
        assert!(check(&IntMatrix::zeros(2, 4)).invariant_factors.is_empty());
    }

    #[test]
    fn negative_entries_are_normalized() {
        let s = check(&IntMatrix::from_rows(&[vec![-5]]));
        assert_eq!(factors(&s), vec![5]);
        let s = check(&IntMatrix::from_rows(&[vec![-2, 4], vec![6, -8]]));
        // gcd of entries 2, determinant 16 - 24 = -8
        assert_eq!(factors(&s), vec![2, 4]);
    }
}
