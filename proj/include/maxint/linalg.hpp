#pragma once

#include <Eigen/Dense>

namespace maxint {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Largest |A - A^T| entry.
double asymmetry(const Mat& A);

/// exp, square root, and real powers of a symmetric matrix via its
/// eigendecomposition. The result is symmetrized before returning.
Mat sym_expm(const Mat& A);
Mat sym_sqrtm(const Mat& A);
Mat sym_pow(const Mat& A, double exponent);

/// Symmetric polar factor sqrt(T T^T) rescaled to determinant one.
Mat det_one_symmetric(const Mat& T);

/// 2D rotation by `angle` radians.
Mat rotation2d(double angle);

/// Frobenius inner product <A, B> = tr(A^T B).
double frobenius_dot(const Mat& A, const Mat& B);

/// Numerical rank with a relative singular-value threshold.
int numerical_rank(const Mat& A, double rel_tol = 1e-10);

}  // namespace maxint
