//! The block shapes the closed forms are assembled from.

use crate::field::Rational;
use crate::matrix::Matrix;

/// `X_{rows×cols}`: identity on top, zeros below.
pub fn x(rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |r, c| if r == c { Rational::one() } else { Rational::zero() })
}

/// `Y_{rows×cols}`: zeros on top, identity below.
pub fn y(rows: usize, cols: usize) -> Matrix {
    let shift = rows.saturating_sub(cols);
    Matrix::from_fn(rows, cols, |r, c| if r == c + shift { Rational::one() } else { Rational::zero() })
}

/// `Z_{rows×cols}(λ)`: ones on the diagonal, `λ` on the subdiagonal.
pub fn z(rows: usize, cols: usize, lambda: &Rational) -> Matrix {
    Matrix::from_fn(rows, cols, |r, c| {
        if r == c {
            Rational::one()
        } else if r == c + 1 {
            lambda.clone()
        } else {
            Rational::zero()
        }
    })
}

/// `Z_n(λ)^{-1}`, with entry `(−λ)^{r−c}` on and below the diagonal.
pub fn z_inv(n: usize, lambda: &Rational) -> Matrix {
    let neg = -lambda;
    let mut powers = vec![Rational::one()];
    for k in 1..n {
        let next = &powers[k - 1] * &neg;
        powers.push(next);
    }
    Matrix::from_fn(n, n, |r, c| if r >= c { powers[r - c].clone() } else { Rational::zero() })
}

/// `X` on every arm except arm 2, which uses `Y`.
pub fn jump(arm: usize, rows: usize, cols: usize) -> Matrix {
    if arm == 2 {
        y(rows, cols)
    } else {
        x(rows, cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn shapes() {
        assert_eq!(x(3, 2), Matrix::from_ints(3, 2, &[1, 0, 0, 1, 0, 0]));
        assert_eq!(y(3, 2), Matrix::from_ints(3, 2, &[0, 0, 1, 0, 0, 1]));
        assert_eq!(z(3, 2, &Rational::from_int(5)), Matrix::from_ints(3, 2, &[1, 0, 5, 1, 0, 5]));
        assert_eq!(x(1, 0).shape(), (1, 0));
    }

    proptest! {
        #[test]
        fn z_times_x_is_x_plus_lambda_y(n in 0usize..6, l in -4i64..5) {
            let lambda = Rational::from_int(l);
            let lhs = &z(n + 1, n + 1, &lambda) * &x(n + 1, n);
            let rhs = &x(n + 1, n) + &y(n + 1, n).scale(&lambda);
            prop_assert_eq!(&lhs, &rhs);
            prop_assert_eq!(lhs, z(n + 1, n, &lambda));
        }

        #[test]
        fn z_inverse(n in 0usize..6, num in -4i64..5, den in 1i64..4) {
            let lambda = Rational::new(num, den);
            prop_assert!((&z(n, n, &lambda) * &z_inv(n, &lambda)).is_identity());
        }
    }
}
