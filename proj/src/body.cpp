#include "maxint/body.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace maxint {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_rows(const Mat& rows, const char* what) {
  if (rows.cols() < 2) throw std::invalid_argument(std::string(what) + ": dimension must be at least 2");
  if (rows.rows() < 1) throw std::invalid_argument(std::string(what) + ": no rows given");
  if (!rows.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    if (rows.row(i).norm() == 0.0) throw std::invalid_argument(std::string(what) + ": zero row");
}

}  // namespace

std::string to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::PolytopeH: return "polytope-h";
    case BodyKind::PolytopeV: return "polytope-v";
    case BodyKind::LpBall: return "lp-ball";
    case BodyKind::HullBallPoints: return "hull-ball-points";
  }
  return "unknown";
}

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  // Scale by the max entry so large p does not overflow.
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)) / m, p);
  return m * std::pow(s, 1.0 / p);
}

double conjugate_exponent(double p) {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

SymmetricBody SymmetricBody::polytope_h(Mat rows) {
  require_rows(rows, "polytope_h");
  SymmetricBody b;
  b.dim_ = static_cast<int>(rows.cols());
  Mat canon = canonical_sign_rows(rows);
  b.polytope_ = std::make_shared<SymmetricPolytope>(polytope_from_facets(canon));
  b.shape_ = PolytopeHRep{std::move(canon)};
  return b;
}

SymmetricBody SymmetricBody::polytope_v(Mat vertices) {
  require_rows(vertices, "polytope_v");
  SymmetricBody b;
  b.dim_ = static_cast<int>(vertices.cols());
  Mat canon = canonical_sign_rows(vertices);
  b.polytope_ = std::make_shared<SymmetricPolytope>(polytope_from_vertices(canon));
  b.shape_ = PolytopeVRep{std::move(canon)};
  return b;
}

SymmetricBody SymmetricBody::lp_ball(int n, double p, double rho) {
  if (n < 2) throw std::invalid_argument("lp_ball: dimension must be at least 2");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_ball: exponent must be in [1, inf]");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("lp_ball: scale must be positive");
  SymmetricBody b;
  b.dim_ = n;
  b.shape_ = LpBallRep{n, p, rho};
  return b;
}

SymmetricBody SymmetricBody::hull_ball_points(double rho, Vec apex) {
  if (apex.size() < 2) throw std::invalid_argument("hull_ball_points: dimension must be at least 2");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("hull_ball_points: radius must be positive");
  if (!apex.allFinite() || !(apex.norm() > rho))
    throw std::invalid_argument("hull_ball_points: apex must lie strictly outside the ball");
  SymmetricBody b;
  b.dim_ = static_cast<int>(apex.size());
  b.shape_ = HullBallPointsRep{rho, std::move(apex)};
  return b;
}

BodyKind SymmetricBody::kind() const {
  return std::visit(overloaded{[](const PolytopeHRep&) { return BodyKind::PolytopeH; },
                               [](const PolytopeVRep&) { return BodyKind::PolytopeV; },
                               [](const LpBallRep&) { return BodyKind::LpBall; },
                               [](const HullBallPointsRep&) { return BodyKind::HullBallPoints; }},
                    shape_);
}

void SymmetricBody::check_dim(const Vec& x) const {
  if (x.size() != dim_)
    throw std::invalid_argument("dimension mismatch: body has n = " + std::to_string(dim_) + ", vector has " +
                                std::to_string(x.size()));
}

const SymmetricPolytope& SymmetricBody::polytope() const {
  if (!polytope_) throw std::logic_error("polytope(): body is not a polytope");
  return *polytope_;
}

double SymmetricBody::canonical_gauge(const Vec& x) const {
  return std::visit(
      overloaded{
          [&](const PolytopeHRep& h) { return (h.rows * x).cwiseAbs().maxCoeff(); },
          [&](const PolytopeVRep&) { return (polytope_->facets * x).cwiseAbs().maxCoeff(); },
          [&](const LpBallRep& l) { return lp_norm(x, l.p) / l.rho; },
          [&](const HullBallPointsRep& hb) {
            // Polar is (1/rho) B ∩ {|<q, y>| <= 1}; the gauge is its support function.
            const double xn = x.norm();
            if (xn == 0.0) return 0.0;
            const double qq = hb.apex.squaredNorm();
            const double t = hb.apex.dot(x);
            if (std::abs(t) <= hb.rho * xn) return xn / hb.rho;
            const double perp = std::sqrt(std::max(0.0, x.squaredNorm() - t * t / qq));
            return std::abs(t) / qq + perp * std::sqrt(1.0 / (hb.rho * hb.rho) - 1.0 / qq);
          }},
      shape_);
}

double SymmetricBody::canonical_support(const Vec& y) const {
  return std::visit(
      overloaded{[&](const PolytopeHRep&) { return (polytope_->vertices * y).cwiseAbs().maxCoeff(); },
                 [&](const PolytopeVRep& v) { return (v.vertices * y).cwiseAbs().maxCoeff(); },
                 [&](const LpBallRep& l) { return l.rho * lp_norm(y, conjugate_exponent(l.p)); },
                 [&](const HullBallPointsRep& hb) { return std::max(hb.rho * y.norm(), std::abs(hb.apex.dot(y))); }},
      shape_);
}

double SymmetricBody::gauge(const Vec& x) const {
  check_dim(x);
  if (inv_map_) return canonical_gauge(*inv_map_ * x);
  return canonical_gauge(x);
}

double SymmetricBody::support_any(const Vec& y) const {
  check_dim(y);
  if (map_) return canonical_support(map_->transpose() * y);
  return canonical_support(y);
}

double SymmetricBody::support(const Vec& u) const {
  check_dim(u);
  if (std::abs(u.norm() - 1.0) > 1e-9) throw std::invalid_argument("support: direction is not a unit vector");
  return support_any(u);
}

SymmetricBody SymmetricBody::linear_image(const Mat& T) const {
  if (T.rows() != dim_ || T.cols() != dim_) throw std::invalid_argument("linear_image: dimension mismatch");
  Eigen::FullPivLU<Mat> lu(T);
  if (lu.rank() < dim_ || std::abs(T.determinant()) < 1e-300)
    throw std::invalid_argument("linear_image: singular transform");
  const Mat Tinv = lu.inverse();

  SymmetricBody b = *this;
  if (polytope_) {
    // Rows map by a -> T^{-T} a, vertices by v -> T v; the face lattice is unchanged.
    auto poly = std::make_shared<SymmetricPolytope>();
    poly->facets = polytope_->facets * Tinv;
    poly->vertices = polytope_->vertices * T.transpose();
    b.polytope_ = std::move(poly);
    if (auto* h = std::get_if<PolytopeHRep>(&b.shape_)) h->rows = h->rows * Tinv;
    if (auto* v = std::get_if<PolytopeVRep>(&b.shape_)) v->vertices = v->vertices * T.transpose();
    return b;
  }
  b.map_ = map_ ? Mat(T * *map_) : T;
  b.inv_map_ = inv_map_ ? Mat(*inv_map_ * Tinv) : Tinv;
  return b;
}

SymmetricBody SymmetricBody::polar() const {
  if (const auto* h = std::get_if<PolytopeHRep>(&shape_)) return polytope_v(h->rows);
  if (const auto* v = std::get_if<PolytopeVRep>(&shape_)) return polytope_h(v->vertices);
  throw std::invalid_argument("polar: only polytope bodies are supported");
}

}  // namespace maxint
