#include "maxint/ellipsoid.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace maxint {

namespace {

constexpr int kNet2d = 7200;
constexpr int kNetNd = 20000;

}  // namespace

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be positive");
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

Ellipsoid Ellipsoid::ball(int n, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("Ellipsoid: radius must be positive");
  return Ellipsoid{Mat::Identity(n, n), r};
}

Ellipsoid Ellipsoid::from_transform(const Mat& T, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("Ellipsoid: radius must be positive");
  if (T.rows() != T.cols()) throw std::invalid_argument("Ellipsoid: transform is not square");
  if (asymmetry(T) > 1e-9 * (1.0 + T.norm())) throw std::invalid_argument("Ellipsoid: transform is not symmetric");
  const Mat S = 0.5 * (T + T.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(S);
  if (eig.eigenvalues().minCoeff() <= 0.0) throw std::invalid_argument("Ellipsoid: transform is not positive definite");
  const double det = eig.eigenvalues().prod();
  return Ellipsoid{S / std::pow(det, 1.0 / static_cast<double>(S.rows())), r};
}

Ellipsoid Ellipsoid::from_shape_matrix(const Mat& Q) {
  const Mat root = sym_sqrtm(Q);
  const double det = root.determinant();
  if (!(det > 0.0)) throw std::invalid_argument("Ellipsoid: shape matrix is not positive definite");
  const double r = std::pow(det, 1.0 / static_cast<double>(Q.rows()));
  return Ellipsoid::from_transform(root / r, r);
}

double Ellipsoid::volume() const { return T.determinant() * std::pow(r, dim()) * unit_ball_volume(dim()); }

double Ellipsoid::support(const Vec& u) const { return r * (T * u).norm(); }

double Ellipsoid::gauge(const Vec& x) const { return T.llt().solve(x).norm() / r; }

Mat Ellipsoid::shape_matrix() const { return r * r * T * T; }

TracelessDirection::TracelessDirection(Mat A) : A_(std::move(A)) {
  if (A_.rows() != A_.cols()) throw std::invalid_argument("TracelessDirection: matrix is not square");
  const double scale = 1.0 + A_.norm();
  if (asymmetry(A_) > 1e-12 * scale) throw std::invalid_argument("TracelessDirection: matrix is not symmetric");
  if (std::abs(A_.trace()) > 1e-12 * scale) throw std::invalid_argument("TracelessDirection: matrix is not traceless");
  A_ = (0.5 * (A_ + A_.transpose())).eval();
}

TracelessDirection TracelessDirection::project(const Mat& A) {
  Mat S = 0.5 * (A + A.transpose());
  S.diagonal().array() -= S.trace() / static_cast<double>(S.rows());
  return TracelessDirection(std::move(S));
}

Ellipsoid step(const Ellipsoid& e, const TracelessDirection& A, double eta) {
  if (A.matrix().rows() != e.T.rows()) throw std::invalid_argument("step: dimension mismatch");
  const Mat Q = e.T * sym_expm(2.0 * eta * A.matrix()) * e.T;
  Mat Tn = sym_sqrtm(Q);
  Tn /= std::pow(Tn.determinant(), 1.0 / static_cast<double>(Tn.rows()));
  return Ellipsoid{0.5 * (Tn + Tn.transpose()), e.r};
}

Mat sphere_net(int n, int count) {
  Mat U(count, n);
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const double th = 2.0 * std::numbers::pi * i / count;
      U(i, 0) = std::cos(th);
      U(i, 1) = std::sin(th);
    }
  } else if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = 1.0 - 2.0 * (i + 0.5) / count;
      const double rad = std::sqrt(1.0 - z * z);
      U(i, 0) = rad * std::cos(golden * i);
      U(i, 1) = rad * std::sin(golden * i);
      U(i, 2) = z;
    }
  } else {
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> g;
    for (int i = 0; i < count; ++i) {
      for (int j = 0; j < n; ++j) U(i, j) = g(rng);
      U.row(i).normalize();
    }
  }
  return U;
}

namespace {

int net_size(int n) { return n == 2 ? kNet2d : kNetNd; }

}  // namespace

ContainmentResult ellipsoid_in_body(const Ellipsoid& e, const SymmetricBody& body) {
  if (body.dim() != e.dim()) throw std::invalid_argument("ellipsoid_in_body: dimension mismatch");
  ContainmentResult res;
  if (body.is_polytope()) {
    // E ⊆ K iff h_E(a_i) <= 1 for every facet normal.
    const Mat& F = body.polytope().facets;
    for (Eigen::Index i = 0; i < F.rows(); ++i)
      res.margin = std::max(res.margin, e.support(F.row(i).transpose()));
    res.exact = true;
  } else {
    const Mat U = sphere_net(e.dim(), net_size(e.dim()));
    const Mat P = e.r * U * e.T;  // rows r T u (T symmetric)
    for (Eigen::Index i = 0; i < P.rows(); ++i) res.margin = std::max(res.margin, body.gauge(P.row(i).transpose()));
    res.exact = false;
  }
  res.value = res.margin <= 1.0 + kBoundaryTol;
  return res;
}

ContainmentResult body_in_ellipsoid(const SymmetricBody& body, const Ellipsoid& e) {
  if (body.dim() != e.dim()) throw std::invalid_argument("body_in_ellipsoid: dimension mismatch");
  ContainmentResult res;
  if (body.is_polytope()) {
    const Mat& V = body.polytope().vertices;
    for (Eigen::Index i = 0; i < V.rows(); ++i) res.margin = std::max(res.margin, e.gauge(V.row(i).transpose()));
    res.exact = true;
  } else if (const auto* hb = std::get_if<HullBallPointsRep>(&body.shape())) {
    // K = M conv(rho B ∪ ±q) ⊆ E iff rho B ⊆ M^{-1}E and q ∈ M^{-1}E.
    const Mat M = body.transform().value_or(Mat::Identity(e.dim(), e.dim()));
    const Mat C = M.inverse() * e.r * e.T;  // M^{-1}E = C B
    Eigen::JacobiSVD<Mat> svd(C);
    const double ball_ratio = hb->rho / svd.singularValues().minCoeff();
    const double apex_ratio = C.fullPivLu().solve(hb->apex).norm();
    res.margin = std::max(ball_ratio, apex_ratio);
    res.exact = true;
  } else {
    // Boundary points of K along the net: x = u / ||u||_K.
    const Mat U = sphere_net(e.dim(), net_size(e.dim()));
    for (Eigen::Index i = 0; i < U.rows(); ++i) {
      const Vec u = U.row(i).transpose();
      res.margin = std::max(res.margin, e.gauge(u / body.gauge(u)));
    }
    res.exact = false;
  }
  res.value = res.margin <= 1.0 + kBoundaryTol;
  return res;
}

double hausdorff_distance(const Ellipsoid& a, const Ellipsoid& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("hausdorff_distance: dimension mismatch");
  // For the difference of support functions r|Tu| - s|Su| the extremes on the
  // net are refined by the eigen-directions of both shapes.
  const int n = a.dim();
  Mat U = sphere_net(n, net_size(n));
  Eigen::SelfAdjointEigenSolver<Mat> ea(a.T), eb(b.T);
  Mat extra(2 * n, n);
  extra << ea.eigenvectors().transpose(), eb.eigenvectors().transpose();
  double best = 0.0;
  auto consider = [&](const Vec& u) { best = std::max(best, std::abs(a.support(u) - b.support(u))); };
  for (Eigen::Index i = 0; i < U.rows(); ++i) consider(U.row(i).transpose());
  for (Eigen::Index i = 0; i < extra.rows(); ++i) consider(extra.row(i).transpose().normalized());
  return best;
}

}  // namespace maxint
