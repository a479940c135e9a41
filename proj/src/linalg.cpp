#include "maxint/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace maxint {

namespace {

template <typename F>
Mat apply_spectral(const Mat& A, F&& f) {
  if (A.rows() != A.cols()) throw std::invalid_argument("spectral function: matrix is not square");
  const Mat S = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(S);
  if (eig.info() != Eigen::Success) throw std::runtime_error("spectral function: eigensolver failed");
  Vec d = eig.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = f(d(i));
  Mat R = eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().transpose();
  return 0.5 * (R + R.transpose());
}

}  // namespace

double asymmetry(const Mat& A) {
  if (A.rows() != A.cols()) return INFINITY;
  return (A - A.transpose()).cwiseAbs().maxCoeff();
}

Mat sym_expm(const Mat& A) {
  return apply_spectral(A, [](double x) { return std::exp(x); });
}

Mat sym_sqrtm(const Mat& A) {
  return apply_spectral(A, [](double x) {
    if (x < 0.0) throw std::domain_error("sym_sqrtm: matrix is not positive semidefinite");
    return std::sqrt(x);
  });
}

Mat sym_pow(const Mat& A, double exponent) {
  return apply_spectral(A, [exponent](double x) {
    if (x <= 0.0) throw std::domain_error("sym_pow: matrix is not positive definite");
    return std::pow(x, exponent);
  });
}

Mat det_one_symmetric(const Mat& T) {
  const Mat P = sym_sqrtm(T * T.transpose());
  const double det = P.determinant();
  if (!(det > 0.0)) throw std::domain_error("det_one_symmetric: singular transform");
  return P / std::pow(det, 1.0 / static_cast<double>(P.rows()));
}

Mat rotation2d(double angle) {
  Mat R(2, 2);
  const double c = std::cos(angle), s = std::sin(angle);
  R << c, -s, s, c;
  return R;
}

double frobenius_dot(const Mat& A, const Mat& B) { return A.cwiseProduct(B).sum(); }

int numerical_rank(const Mat& A, double rel_tol) {
  if (A.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(A);
  const Vec s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

}  // namespace maxint
