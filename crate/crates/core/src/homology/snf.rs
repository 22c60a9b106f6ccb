//! Smith normal form over the integers.
//!
//! Diagonalizes an integer matrix by unimodular row and column operations,
//! yielding positive invariant factors in divisibility order. Pivots are
//! chosen by smallest absolute value to limit coefficient growth, which is
//! adequate at desk scale. All four transforms (left, right, and their
//! inverses) can be retained; the right inverse is what turns kernel
//! vectors into kernel-basis coordinates for the torsion computation.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// Unimodular factors with `left * input * right = diag(factors)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfTransforms {
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub right_inv: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Positive, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<SnfTransforms>,
}

impl SnfResult {
    /// The diagonal matrix the transforms produce, rebuilt from the factors.
    pub fn diagonal(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, f) in self.factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }
}

struct Calc {
    m: IntMatrix,
    t: Option<SnfTransforms>,
}

impl Calc {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.m.swap_rows(a, b);
        if let Some(t) = &mut self.t {
            t.left.swap_rows(a, b);
            t.left_inv.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.m.swap_cols(a, b);
        if let Some(t) = &mut self.t {
            t.right.swap_cols(a, b);
            t.right_inv.swap_rows(a, b);
        }
    }

    /// `row[dst] += k * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_row_multiple(dst, src, k);
        if let Some(t) = &mut self.t {
            t.left.add_row_multiple(dst, src, k);
            t.left_inv.add_col_multiple(src, dst, &-k);
        }
    }

    /// `col[dst] += k * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.m.add_col_multiple(dst, src, k);
        if let Some(t) = &mut self.t {
            t.right.add_col_multiple(dst, src, k);
            t.right_inv.add_row_multiple(src, dst, &-k);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.m.negate_row(r);
        if let Some(t) = &mut self.t {
            t.left.negate_row(r);
            t.left_inv.negate_col(r);
        }
    }
}

/// Computes the Smith normal form. With `with_transforms`, the returned
/// factor pair (and inverses) satisfies `left * m * right = diag(factors)`
/// with both determinants ±1.
pub fn smith_normal_form(m: &IntMatrix, with_transforms: bool) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let transforms = with_transforms.then(|| SnfTransforms {
        left: IntMatrix::identity(rows),
        left_inv: IntMatrix::identity(rows),
        right: IntMatrix::identity(cols),
        right_inv: IntMatrix::identity(cols),
    });
    let mut calc = Calc {
        m: m.clone(),
        t: transforms,
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = calc.m.min_nonzero_from(t) else {
            break;
        };
        calc.swap_rows(t, pr);
        calc.swap_cols(t, pc);

        // Clear column t, then row t; any leftover residue means a smaller
        // pivot exists, so re-select and repeat.
        let mut residue = false;
        for i in t + 1..rows {
            if !calc.m.get(i, t).is_zero() {
                let q = calc.m.get(i, t) / calc.m.get(t, t);
                calc.add_row(i, t, &-q);
                residue |= !calc.m.get(i, t).is_zero();
            }
        }
        if residue {
            continue;
        }
        for j in t + 1..cols {
            if !calc.m.get(t, j).is_zero() {
                let q = calc.m.get(t, j) / calc.m.get(t, t);
                calc.add_col(j, t, &-q);
                residue |= !calc.m.get(t, j).is_zero();
            }
        }
        if residue {
            continue;
        }

        // Divisibility: the pivot must divide the rest of the submatrix.
        // Folding an offending row into row t exposes the smaller gcd to
        // the next round.
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(calc.m.get(i, j) % calc.m.get(t, t)).is_zero() {
                    calc.add_row(t, i, &BigInt::from(1));
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    for i in 0..t {
        if calc.m.get(i, i).is_negative() {
            calc.negate_row(i);
        }
    }

    let factors: Vec<BigInt> = (0..t).map(|i| calc.m.get(i, i).clone()).collect();
    SnfResult {
        factors,
        rank: t,
        transforms: calc.t,
    }
}

/// A basis of the integer kernel of `m`, as columns (a full-rank direct
/// summand of Z^cols), together with the data needed to express kernel
/// vectors in that basis.
pub struct KernelBasis {
    pub rank: usize,
    right: IntMatrix,
    right_inv: IntMatrix,
}

impl KernelBasis {
    pub fn of(m: &IntMatrix) -> KernelBasis {
        let snf = smith_normal_form(m, true);
        let t = snf.transforms.expect("requested transforms");
        KernelBasis {
            rank: snf.rank,
            right: t.right,
            right_inv: t.right_inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.right.cols() - self.rank
    }

    /// The basis vectors themselves (columns of the right transform past
    /// the rank).
    pub fn basis_vector(&self, i: usize) -> Vec<BigInt> {
        self.right.column(self.rank + i)
    }

    /// Coordinates of a kernel vector in this basis. Returns `None` when
    /// the vector is not in the kernel lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.right_inv.mul_vec(v);
        if y[..self.rank].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(y[self.rank..].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify(m: &IntMatrix) -> SnfResult {
        let snf = smith_normal_form(m, true);
        let t = snf.transforms.as_ref().unwrap();
        let product = t.left.mul(m).mul(&t.right);
        assert_eq!(
            product,
            snf.diagonal(m.rows(), m.cols()),
            "L*M*R != diag for {m:?}"
        );
        assert_eq!(t.left.mul(&t.left_inv), IntMatrix::identity(m.rows()));
        assert_eq!(t.right.mul(&t.right_inv), IntMatrix::identity(m.cols()));
        assert_eq!(t.left.determinant().abs(), BigInt::from(1));
        assert_eq!(t.right.determinant().abs(), BigInt::from(1));
        for w in snf.factors.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "broken divisibility chain {:?}",
                snf.factors
            );
        }
        snf
    }

    #[test]
    fn one_by_one() {
        let snf = verify(&IntMatrix::from_rows(vec![vec![2]]));
        assert_eq!(snf.factors, vec![BigInt::from(2)]);
        assert_eq!(snf.rank, 1);
    }

    #[test]
    fn divisibility_normalization() {
        // gcd/lcm by hand: diag(2, 3) has factors 1, 6.
        let snf = verify(&IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn cycle_incidence_matrix() {
        // Directed triangle: rank |V| - 1 = 2, all factors 1.
        let d1 = IntMatrix::from_rows(vec![vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        let snf = verify(&d1);
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(snf.rank, 2);
    }

    #[test]
    fn empty_and_zero_matrices() {
        let snf = smith_normal_form(&IntMatrix::zeros(0, 3), true);
        assert_eq!(snf.rank, 0);
        assert!(snf.factors.is_empty());
        let snf = verify(&IntMatrix::zeros(2, 2));
        assert_eq!(snf.rank, 0);
    }

    #[test]
    fn negative_entries_normalize_to_positive_factors() {
        let snf = verify(&IntMatrix::from_rows(vec![vec![-4, 0], vec![0, -6]]));
        assert_eq!(snf.factors, vec![BigInt::from(2), BigInt::from(12)]);
    }

    #[test]
    fn kernel_basis_spans_and_coordinates_invert() {
        // d1 of the directed triangle has kernel generated by (1,1,1).
        let d1 = IntMatrix::from_rows(vec![vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        let kernel = KernelBasis::of(&d1);
        assert_eq!(kernel.dim(), 1);
        let b = kernel.basis_vector(0);
        assert!(d1.mul_vec(&b).iter().all(Zero::is_zero));
        let coords = kernel.coordinates(&b).unwrap();
        assert_eq!(coords, vec![BigInt::from(1)]);
        assert!(kernel
            .coordinates(&[BigInt::from(1), BigInt::from(0), BigInt::from(0)])
            .is_none());
    }
}
