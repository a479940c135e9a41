#pragma once

#include <string>
#include <vector>

#include "maxint/landmarks.hpp"
#include "maxint/solver.hpp"

namespace maxint {

struct ProfileSample {
  double r = 0.0;
  double m_value = 0.0;
  double m_std_error = 0.0;
  double grad_norm = 0.0;
  Regime regime = Regime::Interior;
  bool converged = false;
  bool noise_limited = false;
  int iterations = 0;
  Mat T;
};

struct LawViolation {
  std::string law;
  double r_a = 0.0;
  double r_b = 0.0;
  double excess = 0.0;
};

struct RadiusProfile {
  std::vector<ProfileSample> samples;
  double r_J = 0.0;
  double r_L = 0.0;
  double r_M = 0.0;
  double kappa_n = 0.0;
  double vol_K = 0.0;
  std::string method;
  double tolerance = 0.0;
  std::vector<LawViolation> violations;

  bool all_converged() const;
};

struct SweepOptions {
  SolverOptions solver;
  bool warm_start = true;
};

/// m(r) over a sorted list of radii, checking
///   m = r^n kappa_n below r_J and m = Vol K above r_L,
///   monotonicity (strict between r_J and r_L),
///   m(s) <= (s/t)^n m(t) for t < s.
RadiusProfile sweep(const SymmetricBody& body, const std::vector<double>& radii, const SweepOptions& opts);

enum class LimitSide { John, Loewner };
std::string to_string(LimitSide side);
LimitSide limit_side_from_string(const std::string& s);

struct NormalizedBody {
  SymmetricBody body;
  /// body = map^{-1} K.
  Mat map;
  double radius = 1.0;
  std::string note;
};

/// Puts K in John position (J(K) = B) or Loewner position (L(K) = B).
NormalizedBody normalize_position(const SymmetricBody& body, LimitSide side);

struct Cluster {
  Vec direction;
  /// Probability mass of the cluster.
  double mass = 0.0;
};

struct LimitStep {
  double r = 0.0;
  Mat T;
  Regime regime = Regime::Interior;
  bool converged = false;
  bool degenerate = false;
  std::string note;
  MomentReport moments;
  std::vector<planar::Arc> arcs;
  std::vector<Cluster> clusters;
  double support_distance = 0.0;
};

struct LimitMeasureReport {
  LimitSide side = LimitSide::John;
  double window = 0.0;
  std::vector<LimitStep> steps;
  /// Contact set ∂K ∩ S^{n-1} used for the support distance.
  std::vector<Vec> contacts;
  bool contacts_exact = true;
  /// Diagnostics along the non-degenerate steps.
  bool residual_monotone = true;
  bool support_monotone = true;

  /// Last non-degenerate step, or nullptr.
  const LimitStep* finest() const;
};

struct LimitOptions {
  SolverOptions solver;
  /// Angular clustering window in radians.
  double window = 5.0 * 3.14159265358979323846 / 180.0;
  bool warm_start = true;
};

/// For K in John (side john, r_j decreasing to 1) or Loewner position (side
/// loewner, r_j increasing to 1): solves each radius, re-positions the body
/// and clusters the normalized outside / inside sphere measure.
LimitMeasureReport limit_measure(const SymmetricBody& body, LimitSide side, const std::vector<double>& radii,
                                 const LimitOptions& opts);

/// Greedy angular clustering of weighted unit directions.
std::vector<Cluster> cluster_directions(const std::vector<Vec>& dirs, const std::vector<double>& weights,
                                        double window);

struct MidpointResidual {
  double s = 0.0;
  double t = 0.0;
  /// 2 log phi((s+t)/2) - log phi(s) - log phi(t).
  double value = 0.0;
  double std_error = 0.0;
};

struct BProbeReport {
  Mat lambda;
  std::string method;
  std::vector<double> t;
  std::vector<double> phi;
  std::vector<double> phi_std_error;
  /// log phi(t_{i+1}) - 2 log phi(t_i) + log phi(t_{i-1}) at interior grid points.
  std::vector<double> second_diff;
  std::vector<double> second_diff_std_error;
  std::vector<MidpointResidual> midpoints;
  double max_second_diff = 0.0;
  double min_midpoint_residual = 0.0;
  bool truncated = false;
  bool counterexample = false;
  bool inconclusive = false;
};

std::vector<double> uniform_grid(double t_min, double t_max, double step);

/// phi(t) = Vol(e^{t Lambda} K ∩ B) on the grid, with log-concavity checks.
BProbeReport b_probe(const SymmetricBody& body, const Mat& lambda, const std::vector<double>& t_grid,
                     const Method& method, double tol = 1e-9);

}  // namespace maxint
