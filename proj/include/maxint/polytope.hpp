#pragma once

#include "maxint/linalg.hpp"

namespace maxint {

/// Combinatorial description of a centrally symmetric polytope conv(±p_i).
/// Every ± pair is stored once: rows of `facets` are normals a with
/// P = {x : |<a, x>| <= 1}; rows of `vertices` are vertex representatives.
struct SymmetricPolytope {
  Mat facets;
  Mat vertices;
};

/// Facet normals of conv(±p_i) for the rows p_i of `points`, found by
/// enumerating every candidate supporting hyperplane through n signed points.
/// Throws std::invalid_argument when the points do not span R^n or when the
/// enumeration would exceed the desk-scale budget.
Mat symmetric_hull_facets(const Mat& points);

/// Builds both descriptions from vertex representatives.
SymmetricPolytope polytope_from_vertices(const Mat& vertices);

/// Builds both descriptions from facet normals (rows of {|<a, x>| <= 1}).
SymmetricPolytope polytope_from_facets(const Mat& rows);

/// Exact volume by recursive cone decomposition over the face lattice.
double polytope_volume(const SymmetricPolytope& poly);

/// Removes rows that are (numerically) ± duplicates of an earlier row and
/// flips every row so its first significant entry is positive.
Mat canonical_sign_rows(const Mat& rows, double tol = 1e-9);

}  // namespace maxint
