#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "maxint/linalg.hpp"
#include "maxint/polytope.hpp"

namespace maxint {

/// Single global tolerance on the gauge for membership and boundary tests.
inline constexpr double kBoundaryTol = 1e-9;

enum class BodyKind { PolytopeH, PolytopeV, LpBall, HullBallPoints };

std::string to_string(BodyKind kind);

/// {x : |<a_i, x>| <= 1} with one row a_i per ± pair.
struct PolytopeHRep {
  Mat rows;
};

/// conv{±v_i} with one row v_i per ± pair.
struct PolytopeVRep {
  Mat vertices;
};

/// {x : ||x / rho||_p <= 1}; p may be +infinity.
struct LpBallRep {
  int n = 2;
  double p = 2.0;
  double rho = 1.0;
};

/// conv(rho B ∪ {±apex}) with |apex| > rho.
struct HullBallPointsRep {
  double rho = 1.0;
  Vec apex;
};

/// A centrally symmetric convex body with exact gauge, support and membership.
///
/// Polytopes carry both their facet and vertex descriptions, so every query
/// is a closed-form max over rows. The smooth variants keep their canonical
/// parameters and compose linear images into a separate stored transform.
/// Instances are immutable and cheap to copy.
class SymmetricBody {
 public:
  using Shape = std::variant<PolytopeHRep, PolytopeVRep, LpBallRep, HullBallPointsRep>;

  static SymmetricBody polytope_h(Mat rows);
  static SymmetricBody polytope_v(Mat vertices);
  static SymmetricBody lp_ball(int n, double p, double rho);
  static SymmetricBody hull_ball_points(double rho, Vec apex);

  int dim() const { return dim_; }
  BodyKind kind() const;
  const Shape& shape() const { return shape_; }
  bool is_polytope() const { return polytope_ != nullptr; }

  /// Minkowski functional ||x||_K.
  double gauge(const Vec& x) const;
  /// h_K(u) for a unit vector u.
  double support(const Vec& u) const;
  /// h_K(y) for arbitrary y (positively homogeneous extension).
  double support_any(const Vec& y) const;
  bool contains(const Vec& x) const { return gauge(x) <= 1.0 + kBoundaryTol; }

  /// T K. Polytopes bake the map into their rows; smooth variants compose it.
  SymmetricBody linear_image(const Mat& T) const;
  /// Polar body; only defined for polytopes.
  SymmetricBody polar() const;

  /// Facet normals / vertex representatives (polytopes only).
  const SymmetricPolytope& polytope() const;
  /// Composed transform M with K = M K_canonical (smooth variants only).
  const std::optional<Mat>& transform() const { return map_; }
  const std::optional<Mat>& inverse_transform() const { return inv_map_; }

 private:
  SymmetricBody() = default;

  void check_dim(const Vec& x) const;
  double canonical_gauge(const Vec& x) const;
  double canonical_support(const Vec& y) const;

  Shape shape_;
  int dim_ = 0;
  std::shared_ptr<const SymmetricPolytope> polytope_;
  std::optional<Mat> map_;
  std::optional<Mat> inv_map_;
};

/// ||x||_p with p = +infinity allowed.
double lp_norm(const Vec& x, double p);
/// Conjugate exponent p / (p - 1).
double conjugate_exponent(double p);

}  // namespace maxint
