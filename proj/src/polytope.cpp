#include "maxint/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace maxint {

namespace {

constexpr double kIncidenceTol = 1e-9;
constexpr double kEnumerationBudget = 5e6;

double binomial(int m, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (m - k + i) / i;
  return c;
}

Vec canonical_sign(Vec v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12 * (1.0 + v.norm())) {
      if (v(i) < 0) v = -v;
      break;
    }
  }
  return v;
}

bool contains_row(const std::vector<Vec>& rows, const Vec& v, double tol) {
  for (const auto& r : rows)
    if ((r - v).norm() <= tol * (1.0 + v.norm()) || (r + v).norm() <= tol * (1.0 + v.norm()))
      return true;
  return false;
}

Mat stack(const std::vector<Vec>& rows, Eigen::Index n) {
  Mat out(static_cast<Eigen::Index>(rows.size()), n);
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

int affine_dim(const Mat& pts, const std::vector<int>& idx) {
  if (idx.size() <= 1) return 0;
  Mat D(pts.cols(), static_cast<Eigen::Index>(idx.size()) - 1);
  for (std::size_t i = 1; i < idx.size(); ++i)
    D.col(static_cast<Eigen::Index>(i) - 1) = (pts.row(idx[i]) - pts.row(idx[0])).transpose();
  return numerical_rank(D, 1e-9);
}

double distance_to_affine_hull(const Mat& pts, const std::vector<int>& idx, const Vec& c) {
  const Vec base = pts.row(idx[0]).transpose();
  if (idx.size() == 1) return (c - base).norm();
  Mat D(pts.cols(), static_cast<Eigen::Index>(idx.size()) - 1);
  for (std::size_t i = 1; i < idx.size(); ++i)
    D.col(static_cast<Eigen::Index>(i) - 1) = pts.row(idx[i]).transpose() - base;
  Eigen::JacobiSVD<Mat> svd(D, Eigen::ComputeThinU);
  const Vec s = svd.singularValues();
  Vec diff = c - base;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= 1e-9 * s(0)) break;
    const Vec u = svd.matrixU().col(i);
    diff -= u.dot(diff) * u;
  }
  return diff.norm();
}

// Face lattice volume: vol_k(F) = (1/k) sum_G dist(c_F, aff G) vol_{k-1}(G).
double face_volume(const Mat& pts, const std::vector<std::vector<int>>& facet_sets,
                   const std::vector<int>& face, int k) {
  if (k == 0) return 1.0;
  if (k == 1) {
    double best = 0.0;
    for (std::size_t i = 0; i < face.size(); ++i)
      for (std::size_t j = i + 1; j < face.size(); ++j)
        best = std::max(best, (pts.row(face[i]) - pts.row(face[j])).norm());
    return best;
  }
  Vec c = Vec::Zero(pts.cols());
  for (int i : face) c += pts.row(i).transpose();
  c /= static_cast<double>(face.size());

  std::set<std::vector<int>> subfaces;
  for (const auto& fs : facet_sets) {
    std::vector<int> s;
    std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(), std::back_inserter(s));
    if (s.size() < static_cast<std::size_t>(k) || s.size() == face.size()) continue;
    if (affine_dim(pts, s) == k - 1) subfaces.insert(std::move(s));
  }
  double vol = 0.0;
  for (const auto& s : subfaces)
    vol += distance_to_affine_hull(pts, s, c) * face_volume(pts, facet_sets, s, k - 1);
  return vol / k;
}

}  // namespace

Mat canonical_sign_rows(const Mat& rows, double tol) {
  std::vector<Vec> kept;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    Vec v = canonical_sign(rows.row(i).transpose());
    if (!contains_row(kept, v, tol)) kept.push_back(v);
  }
  return stack(kept, rows.cols());
}

Mat symmetric_hull_facets(const Mat& points) {
  const int m = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  if (n < 1 || m < n) throw std::invalid_argument("symmetric_hull_facets: fewer points than dimensions");
  if (numerical_rank(points) < n) throw std::invalid_argument("symmetric_hull_facets: points do not span R^n");
  if (binomial(m, n) * std::ldexp(1.0, n - 1) > kEnumerationBudget)
    throw std::invalid_argument("symmetric_hull_facets: polytope too large for facet enumeration");

  std::vector<Vec> facets;
  std::vector<int> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[static_cast<std::size_t>(i)] = i;
  Mat B(n, n);
  while (true) {
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      for (int j = 0; j < n; ++j) {
        const double sign = (j > 0 && (mask >> (j - 1)) & 1u) ? -1.0 : 1.0;
        B.row(j) = sign * points.row(pick[static_cast<std::size_t>(j)]);
      }
      Eigen::FullPivLU<Mat> lu(B);
      lu.setThreshold(1e-11);
      if (lu.rank() < n) continue;
      const Vec a = lu.solve(Vec::Ones(n));
      if ((points * a).cwiseAbs().maxCoeff() > 1.0 + kIncidenceTol) continue;
      const Vec c = canonical_sign(a);
      if (!contains_row(facets, c, 1e-9)) facets.push_back(c);
    }
    int i = n - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - n + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
  }
  if (facets.empty()) throw std::runtime_error("symmetric_hull_facets: no facets found");
  return stack(facets, n);
}

SymmetricPolytope polytope_from_vertices(const Mat& vertices) {
  SymmetricPolytope p;
  p.facets = symmetric_hull_facets(vertices);
  p.vertices = symmetric_hull_facets(p.facets);
  return p;
}

SymmetricPolytope polytope_from_facets(const Mat& rows) {
  SymmetricPolytope p;
  p.vertices = symmetric_hull_facets(rows);
  p.facets = symmetric_hull_facets(p.vertices);
  return p;
}

double polytope_volume(const SymmetricPolytope& poly) {
  const Eigen::Index k = poly.vertices.rows();
  const int n = static_cast<int>(poly.vertices.cols());
  Mat pts(2 * k, n);
  pts << poly.vertices, -poly.vertices;
  Mat normals(2 * poly.facets.rows(), n);
  normals << poly.facets, -poly.facets;

  std::vector<std::vector<int>> facet_sets;
  for (Eigen::Index f = 0; f < normals.rows(); ++f) {
    std::vector<int> s;
    const Vec vals = pts * normals.row(f).transpose();
    for (Eigen::Index i = 0; i < vals.size(); ++i)
      if (std::abs(vals(i) - 1.0) <= 1e-8) s.push_back(static_cast<int>(i));
    facet_sets.push_back(std::move(s));
  }
  std::vector<int> all(static_cast<std::size_t>(pts.rows()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return face_volume(pts, facet_sets, all, n);
}

}  // namespace maxint
