#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "maxint/body.hpp"
#include "maxint/ellipsoid.hpp"
#include "maxint/planar.hpp"

namespace maxint {

/// Closed-form planar kernels (n = 2 only).
struct Exact2D {};

/// Seeded Monte Carlo with `samples` draws.
struct MonteCarlo {
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
};

using Method = std::variant<Exact2D, MonteCarlo>;

std::string method_name(const Method& m);
bool is_exact(const Method& m);
/// Throws std::invalid_argument if the method cannot be used for this body.
void check_method(const SymmetricBody& body, const Method& m);

/// Raised when a restricted spherical measure has zero total mass.
class EmptyMeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Vol(K ∩ E). Exact planar area in the ellipsoid frame, or uniform sampling
/// inside E (ball samples mapped by r T) with a binomial standard error.
VolumeEstimate intersection_volume(const SymmetricBody& body, const Ellipsoid& e, const Method& method);

/// Vol(K): exact for polytopes (face-lattice decomposition), l_p balls
/// (closed form) and planar hull-ball-points; otherwise Monte Carlo in the
/// bounding box given by the support function.
VolumeEstimate body_volume(const SymmetricBody& body, const Method& method);

enum class Side { Inside, Outside };
std::string to_string(Side side);

/// Surface measure on S^{n-1} restricted to r^{-1} K (inside) or its
/// complement (outside). Planar measures are exact arc lists; otherwise a
/// seeded sample of unit vectors with inclusion flags.
struct RestrictedSphereMeasure {
  int dim = 2;
  Side side = Side::Inside;
  double radius = 1.0;

  std::vector<planar::Arc> arcs;
  /// Arcs where the body boundary lies on the sphere r S^1.
  std::vector<planar::Arc> contact_arcs;

  Mat samples;
  std::vector<char> included;
  std::optional<MonteCarlo> mc;

  bool exact() const { return !mc.has_value(); }
  bool tangency_degeneracy() const { return !contact_arcs.empty(); }
  /// sigma(A ∩ S^{n-1}).
  double mass() const;
  std::size_t included_count() const;

  /// An exact planar measure given directly by arcs (normalized on entry).
  static RestrictedSphereMeasure from_arcs(std::vector<planar::Arc> arcs);
};

RestrictedSphereMeasure restricted_measure(const SymmetricBody& body, double r, Side side, const Method& method);

/// Second-moment matrix of a restricted spherical measure.
struct MomentReport {
  Mat M;
  double mass = 0.0;
  /// || M / mass - I / n ||_F.
  double residual = 0.0;
  std::string method;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// Frobenius standard error of the traceless part of M (0 when exact).
  double traceless_std_error = 0.0;
  double mass_std_error = 0.0;
};

MomentReport moment_report(const RestrictedSphereMeasure& m);

/// Streaming Monte Carlo moments of sigma restricted to {x : in_region(x)}.
MomentReport sphere_moments_mc(int n, const std::function<bool(const Vec&)>& in_region, const MonteCarlo& mc);

}  // namespace maxint
