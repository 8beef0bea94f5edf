//! The Jordan product on `V ≅ q(n)` induced by double brackets with the base
//! point.
//!
//! An element `x = (X₀, X₁)` of `q(n)` is the supermatrix
//! `A_x = [[X₀, X₁], [X₁, X₀]] ∈ gl(n|n)`. The pair `(A_x, −A_x)` acts on
//! `B ∈ gl(n|n)` by `A B − (−1)^{|B||D|} B D` with `D = −A_x`, and the base
//! point is `e = I`. The double bracket `[x, [y, e]]` then agrees with the
//! super-anticommutator `A_x A_y + (−1)^{|x||y|} A_y A_x` up to one global
//! scalar.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::repsim::superpoly::Parity;
use crate::scalar::{int, sign, ExactScalar};

/// A homogeneous element of `q(n)` given by its even and odd blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    even: Matrix,
    odd: Matrix,
    parity: Parity,
}

impl QMatrix {
    pub fn new(even: Matrix, odd: Matrix) -> Result<Self> {
        let n = even.rows();
        if even.cols() != n || odd.rows() != n || odd.cols() != n {
            return Err(Error::LengthMismatch { expected: n, got: odd.rows() });
        }
        let zero = |m: &Matrix| (0..n).all(|i| m.row(i).iter().all(Zero::is_zero));
        let parity = match (zero(&even), zero(&odd)) {
            (_, true) => Parity::Even,
            (true, false) => Parity::Odd,
            (false, false) => return Err(Error::Inhomogeneous("both blocks are nonzero".into())),
        };
        Ok(QMatrix { even, odd, parity })
    }

    pub fn identity(n: usize) -> Self {
        QMatrix { even: Matrix::identity(n), odd: Matrix::zeros(n, n), parity: Parity::Even }
    }

    /// The matrix unit `E_{kl}` (1-based) in the even or odd block.
    pub fn unit(n: usize, k: usize, l: usize, parity: Parity) -> Self {
        let mut m = Matrix::zeros(n, n);
        m[(k - 1, l - 1)] = int(1);
        match parity {
            Parity::Even => QMatrix { even: m, odd: Matrix::zeros(n, n), parity },
            Parity::Odd => QMatrix { even: Matrix::zeros(n, n), odd: m, parity },
        }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `[[X₀, X₁], [X₁, X₀]]`.
    pub fn supermatrix(&self) -> Matrix {
        let n = self.even.rows();
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.even[(i, j)].clone();
                m[(i + n, j + n)] = self.even[(i, j)].clone();
                m[(i, j + n)] = self.odd[(i, j)].clone();
                m[(i + n, j)] = self.odd[(i, j)].clone();
            }
        }
        m
    }
}

fn add_scaled(a: &Matrix, b: &Matrix, c: &ExactScalar) -> Matrix {
    let rows = (0..a.rows()).map(|i| a.row(i).iter().zip(b.row(i)).map(|(x, y)| x + c * y).collect()).collect();
    Matrix::from_rows(rows)
}

/// `[(A, D), B] = A B − (−1)^{|B||D|} B D`.
fn act(a: &Matrix, d: &Matrix, d_parity: Parity, b: &Matrix, b_parity: Parity) -> Matrix {
    let s = -sign(b_parity.is_odd() && d_parity.is_odd());
    add_scaled(&a.mul(b), &b.mul(d), &s)
}

/// `[x, [y, e]]` through the action of `(A, −A)` on `gl(n|n)`.
pub fn double_bracket(x: &QMatrix, y: &QMatrix) -> Matrix {
    let (ax, ay) = (x.supermatrix(), y.supermatrix());
    let neg = |m: &Matrix| add_scaled(&Matrix::zeros(m.rows(), m.cols()), m, &int(-1));
    let e = Matrix::identity(ax.rows());
    let ye = act(&ay, &neg(&ay), y.parity, &e, Parity::Even);
    act(&ax, &neg(&ax), x.parity, &ye, y.parity)
}

/// `A_x A_y + (−1)^{|x||y|} A_y A_x`.
pub fn anticommutator(x: &QMatrix, y: &QMatrix) -> Matrix {
    let (ax, ay) = (x.supermatrix(), y.supermatrix());
    add_scaled(&ax.mul(&ay), &ay.mul(&ax), &sign(x.parity.is_odd() && y.parity.is_odd()))
}

/// `c` with `M = c·N`, if it exists (`None` also when `N = 0 ≠ M`).
fn proportionality(m: &Matrix, nmat: &Matrix) -> Option<ExactScalar> {
    let mut ratio: Option<ExactScalar> = None;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let (a, b) = (&m[(i, j)], &nmat[(i, j)]);
            if b.is_zero() {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            let r = a / b;
            match &ratio {
                None => ratio = Some(r),
                Some(q) if *q != r => return None,
                Some(_) => {}
            }
        }
    }
    Some(ratio.unwrap_or_else(ExactScalar::zero))
}

/// The global scalar, measured once on `x = y = I`.
pub fn jordan_scalar(n: usize) -> ExactScalar {
    let id = QMatrix::identity(n);
    proportionality(&double_bracket(&id, &id), &anticommutator(&id, &id)).expect("identity products are proportional")
}

/// `[x, [y, e]] = c · (A_x A_y + (−1)^{|x||y|} A_y A_x)` with the global
/// scalar `c` of [`jordan_scalar`].
pub fn jordan_check(x: &QMatrix, y: &QMatrix, n: usize) -> bool {
    let c = jordan_scalar(n);
    let lhs = double_bracket(x, y);
    let rhs = anticommutator(x, y);
    let zero = Matrix::zeros(lhs.rows(), lhs.cols());
    lhs == add_scaled(&zero, &rhs, &c)
}

/// Runs [`jordan_check`] on every pair of matrix units in both parities.
pub fn jordan_check_all(n: usize) -> bool {
    let mut units = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            units.push(QMatrix::unit(n, k, l, Parity::Even));
            units.push(QMatrix::unit(n, k, l, Parity::Odd));
        }
    }
    units.iter().all(|x| units.iter().all(|y| jordan_check(x, y, n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_scalar_is_two() {
        for n in 1..=3 {
            assert_eq!(jordan_scalar(n), int(2));
        }
    }

    #[test]
    fn identity_pair() {
        let id = QMatrix::identity(2);
        assert!(jordan_check(&id, &id, 2));
        assert_eq!(anticommutator(&id, &id), add_scaled(&Matrix::zeros(4, 4), &Matrix::identity(4), &int(2)));
    }

    #[test]
    fn off_diagonal_and_odd_pairs() {
        let x = QMatrix::unit(2, 1, 2, Parity::Even);
        let y = QMatrix::unit(2, 2, 1, Parity::Even);
        assert!(jordan_check(&x, &y, 2));
        let (a, b) = (QMatrix::unit(2, 1, 1, Parity::Odd), QMatrix::unit(2, 1, 2, Parity::Odd));
        assert!(jordan_check(&a, &b, 2));
        // Both odd: the anticommutator carries a plus sign.
        let sum = add_scaled(&a.supermatrix().mul(&b.supermatrix()), &b.supermatrix().mul(&a.supermatrix()), &int(1));
        assert_eq!(anticommutator(&a, &b), sum);
        assert!(jordan_check_all(2));
    }

    #[test]
    fn inhomogeneous_input_is_rejected() {
        let m = Matrix::identity(2);
        assert!(matches!(QMatrix::new(m.clone(), m), Err(Error::Inhomogeneous(_))));
    }
}
