#pragma once

#include "maxint/body.hpp"
#include "maxint/ellipsoid.hpp"
#include "maxint/measure.hpp"

namespace maxint {

struct MveeResult {
  /// Optimal ellipsoid {x : x^T Q^{-1} x <= 1}.
  Mat Q;
  Vec weights;
  int iterations = 0;
  /// max_i p_i^T X^{-1} p_i / n - 1 at termination.
  double gap = 0.0;
};

/// Minimum-volume centered ellipsoid containing {±p_i}: Wolfe-Atwood
/// coordinate ascent with away steps on the weights, Q = n sum w_i p_i p_i^T.
MveeResult centered_mvee(const Mat& points, double tol = 1e-9, int max_iter = 100000);

/// Minimum-volume ellipsoid containing K.
Ellipsoid loewner(const SymmetricBody& body);
/// Maximum-volume ellipsoid contained in K (polar of the Loewner ellipsoid
/// of the polar body for polytopes; closed forms for the smooth variants).
Ellipsoid john(const SymmetricBody& body);

struct Landmarks {
  Ellipsoid john;
  Ellipsoid loewner;
  double r_J = 0.0;
  double r_L = 0.0;
  double r_M = 0.0;
  double vol_K = 0.0;
  double vol_K_std_error = 0.0;
};

Landmarks landmarks(const SymmetricBody& body, const Method& method);

/// rho = Vol(K ∩ r_M B) / Vol(K) and the implied constant C = rho^{-1/n}.
struct MPositionCertificate {
  double r_M = 0.0;
  double vol_K = 0.0;
  double intersection = 0.0;
  double rho = 0.0;
  double rho_std_error = 0.0;
  double C = 1.0;
};

/// Certificate for the body in its current position.
MPositionCertificate m_position_certificate(const SymmetricBody& body, const Method& method);

}  // namespace maxint
