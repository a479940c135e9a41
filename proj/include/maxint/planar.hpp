#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "maxint/body.hpp"

namespace maxint::planar {

/// Angular interval [begin, end] in radians, begin < end.
struct Arc {
  double begin = 0.0;
  double end = 0.0;
  double length() const { return end - begin; }
  double midpoint() const { return 0.5 * (begin + end); }
};

enum class PieceKind { Line, Conic };

/// One piece of the boundary of a planar star body in polar form. A Line
/// piece lies on {<a, x> = 1}; a Conic piece lies on {x^T S x = 1}. Angles are
/// unwrapped and each piece spans less than pi.
struct RadialPiece {
  double theta0 = 0.0;
  double theta1 = 0.0;
  PieceKind kind = PieceKind::Line;
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
};

/// Boundary of a symmetric planar body as a contiguous list of pieces covering
/// one full turn starting at pieces.front().theta0.
struct RadialBoundary {
  std::vector<RadialPiece> pieces;
};

/// Arcs of the circle of radius r that lie in the body, plus the sub-arcs
/// where the body boundary coincides with the circle.
struct ArcSet {
  std::vector<Arc> arcs;
  std::vector<Arc> contact;
  bool tangency_degeneracy() const { return !contact.empty(); }
};

/// True for planar polytopes, l_1 / l_2 / l_inf balls and hull-ball-points.
bool supports_exact(const SymmetricBody& body);

/// Boundary of L K in polar form. Throws for unsupported variants.
RadialBoundary radial_boundary(const SymmetricBody& body, const Eigen::Matrix2d& L = Eigen::Matrix2d::Identity());

double radial_function(const RadialPiece& piece, double theta);
double radial_function(const RadialBoundary& boundary, double theta);

/// {theta : radial(theta) >= r}, normalized to sorted disjoint arcs in [0, 2 pi + ...).
ArcSet inside_arcs(const RadialBoundary& boundary, double r);

/// Area of K ∩ r B.
double area_within(const RadialBoundary& boundary, double r);
/// Area of K.
double area(const RadialBoundary& boundary);

/// Sorts, merges and wraps arcs so that begin ∈ [0, 2 pi) and arcs are disjoint.
std::vector<Arc> normalize_arcs(std::vector<Arc> arcs);
/// Complement of normalized arcs on the circle.
std::vector<Arc> complement_arcs(std::span<const Arc> arcs);
double total_length(std::span<const Arc> arcs);

/// Closed-form integral of u u^T over the arcs of the unit circle.
Eigen::Matrix2d arc_moments(std::span<const Arc> arcs);

/// Angular distance on the circle, in [0, pi].
double angular_distance(double a, double b);

}  // namespace maxint::planar
