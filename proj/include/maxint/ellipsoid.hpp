#pragma once

#include "maxint/body.hpp"
#include "maxint/linalg.hpp"

namespace maxint {

/// Volume of the Euclidean unit ball, pi^{n/2} / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// Surface area of the unit sphere S^{n-1}, n * kappa_n.
double unit_sphere_area(int n);

/// The centered ellipsoid T(r B) with T symmetric positive definite and det T = 1.
struct Ellipsoid {
  Mat T;
  double r = 1.0;

  static Ellipsoid ball(int n, double r);
  /// Validates T (symmetry, positivity) and renormalizes it to det 1.
  static Ellipsoid from_transform(const Mat& T, double r);
  /// {x : x^T Q^{-1} x <= 1} for symmetric positive definite Q.
  static Ellipsoid from_shape_matrix(const Mat& Q);

  int dim() const { return static_cast<int>(T.rows()); }
  double volume() const;
  /// h_E(u) = r |T u|.
  double support(const Vec& u) const;
  /// ||x||_E = |T^{-1} x| / r.
  double gauge(const Vec& x) const;
  /// Q = r^2 T^2, so E = {x : x^T Q^{-1} x <= 1}.
  Mat shape_matrix() const;
};

/// Symmetric traceless matrix, the tangent direction of the det-1 constraint.
class TracelessDirection {
 public:
  /// Throws std::invalid_argument unless A is symmetric and traceless.
  explicit TracelessDirection(Mat A);
  /// Symmetrizes and removes the trace of an arbitrary square matrix.
  static TracelessDirection project(const Mat& A);

  const Mat& matrix() const { return A_; }
  double norm() const { return A_.norm(); }

 private:
  Mat A_;
};

/// T' = sqrt(T exp(2 eta A) T), renormalized to det 1, so that
/// step(e, A, t)(r B) = T e^{tA}(r B).
Ellipsoid step(const Ellipsoid& e, const TracelessDirection& A, double eta);

struct ContainmentResult {
  bool value = false;
  /// False when the answer comes from a finite direction net.
  bool exact = true;
  /// The worst ratio found (<= 1 means contained); 1 ± kBoundaryTol is touching.
  double margin = 0.0;
};

/// E ⊆ K.
ContainmentResult ellipsoid_in_body(const Ellipsoid& e, const SymmetricBody& body);
/// K ⊆ E.
ContainmentResult body_in_ellipsoid(const SymmetricBody& body, const Ellipsoid& e);

/// Hausdorff distance between two centered ellipsoids, max_u |h_E(u) - h_F(u)|,
/// evaluated on a dense direction net.
double hausdorff_distance(const Ellipsoid& a, const Ellipsoid& b);

/// Deterministic unit-vector net: equiangular in 2D, spherical Fibonacci in
/// 3D, seeded Gaussian directions otherwise.
Mat sphere_net(int n, int count);

}  // namespace maxint
