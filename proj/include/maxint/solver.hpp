#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxint/body.hpp"
#include "maxint/ellipsoid.hpp"
#include "maxint/measure.hpp"

namespace maxint {

/// interior: r_J < r < r_L; below-john: the ellipsoid fits strictly inside K;
/// above-loewner: K fits strictly inside the ellipsoid.
enum class Regime { Interior, BelowJohn, AboveLoewner };
std::string to_string(Regime regime);

/// Gradient of T -> Vol(K ∩ T(rB)) over traceless symmetric directions.
///
/// In the ellipsoid frame K' = T^{-1} K the derivative of
/// t -> Vol(K' ∩ e^{tA} r B) at t = 0 is r^n <A, M>, where M is the second
/// moment of the unit sphere restricted to r^{-1} K'. Projecting onto the
/// traceless symmetric matrices gives G = r^n (M - tr(M)/n I).
struct GradientReport {
  Mat G;
  /// Moments of S^{n-1} ∩ r^{-1} K' (mass 0 when the cap is empty).
  MomentReport moments;
  double scale = 1.0;
  std::string method;
  /// The sphere r S^{n-1} lies inside K' (no outside cap).
  bool cap_full = false;
  /// The sphere misses K' entirely.
  bool cap_empty = false;
  bool tangency_degeneracy = false;
  /// Frobenius standard error of G (0 when exact).
  double std_error = 0.0;

  double norm() const { return G.norm(); }
};

GradientReport gradient(const SymmetricBody& body, const Ellipsoid& e, const Method& method);

struct SolverOptions {
  double grad_tol = 1e-9;
  int max_iter = 2000;
  double initial_step = 0.1;
  double armijo_c = 1e-4;
  double min_step = 1e-13;
  Method method = Exact2D{};
  /// Symmetric positive definite start, renormalized to det 1; identity if unset.
  std::optional<Mat> start;
};

struct TraceEntry {
  int iteration = 0;
  double m_value = 0.0;
  double grad_norm = 0.0;
  double step = 0.0;
};

struct PositionSolution {
  Ellipsoid ellipsoid;
  double m_value = 0.0;
  double m_std_error = 0.0;
  double grad_norm = 0.0;
  double grad_std_error = 0.0;
  double isotropy_residual = 0.0;
  MomentReport moments;
  int iterations = 0;
  std::vector<TraceEntry> trace;
  Regime regime = Regime::Interior;
  bool converged = false;
  bool noise_limited = false;
  bool line_search_stalled = false;
  /// Touching case r = r_J or r = r_L: interior regime with a full or empty cap.
  bool at_endpoint = false;
  bool tangency_degeneracy = false;
  std::vector<std::string> warnings;
};

/// Riemannian gradient ascent over det-1 symmetric positive definite T with
/// Armijo backtracking on the intersection volume.
PositionSolution solve(const SymmetricBody& body, double r, const SolverOptions& opts);

/// Runs `solve` from the default start plus `starts` seeded random starts and
/// returns every run; the best is the first entry with the largest m_value.
std::vector<PositionSolution> multistart(const SymmetricBody& body, double r, const SolverOptions& opts, int starts,
                                         std::uint64_t seed);
const PositionSolution& best_of(const std::vector<PositionSolution>& runs);

struct GridSpec {
  int s_count = 60;
  int phi_count = 60;
  double s_max = 2.0;
};

struct GridOracleResult {
  Ellipsoid ellipsoid;
  double m_value = 0.0;
  /// Planar grids: stretch s >= 1 and axis angle phi ∈ [0, pi).
  /// Spatial grids: the first two diagonal stretches.
  double s = 1.0;
  double phi = 0.0;
  double s2 = 1.0;
  double log_s_step = 0.0;
  double phi_step = 0.0;
};

/// Brute-force search over T(s, phi) = R_phi diag(s, 1/s) R_phi^T (n = 2) or
/// diag(s1, s2, 1/(s1 s2)) (n = 3, Monte Carlo with common random numbers).
GridOracleResult grid_oracle(const SymmetricBody& body, double r, const GridSpec& grid, const Method& method);

/// Stretch sqrt(lambda_max / lambda_min) and long-axis angle in [0, pi) of a planar T.
std::pair<double, double> planar_stretch_angle(const Mat& T);

}  // namespace maxint
