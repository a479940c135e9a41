#include "maxint/planar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxint::planar {

namespace {

using Eigen::Matrix2d;
using Eigen::Vector2d;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAngleTol = 1e-12;
constexpr double kContactTol = 1e-10;

Vector2d unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

double cross(const Vector2d& p, const Vector2d& q) { return p.x() * q.y() - p.y() * q.x(); }

// Counter-clockwise angle from p to q in [0, 2 pi).
double ccw_angle(const Vector2d& p, const Vector2d& q) {
  double a = std::atan2(cross(p, q), p.dot(q));
  if (a < 0) a += kTwoPi;
  return a;
}

// Closed boundary given by CCW nodes; piece i joins node i to node i+1.
struct NodeLoop {
  std::vector<Vector2d> nodes;
  std::vector<PieceKind> kinds;
  std::vector<Matrix2d> conics;

  void map(const Matrix2d& L) {
    const Matrix2d Linv = L.inverse();
    for (auto& p : nodes) p = L * p;
    for (auto& S : conics) S = Linv.transpose() * S * Linv;
    if (L.determinant() < 0) {
      // Reflection: reverse orientation so the loop stays counter-clockwise.
      std::reverse(nodes.begin(), nodes.end());
      std::rotate(nodes.rbegin(), nodes.rbegin() + 1, nodes.rend());
      std::reverse(kinds.begin(), kinds.end());
      std::reverse(conics.begin(), conics.end());
    }
  }

  RadialBoundary build() const {
    RadialBoundary out;
    const std::size_t N = nodes.size();
    double theta = std::atan2(nodes[0].y(), nodes[0].x());
    for (std::size_t i = 0; i < N; ++i) {
      const Vector2d& p = nodes[i];
      const Vector2d& q = nodes[(i + 1) % N];
      RadialPiece piece;
      piece.theta0 = theta;
      piece.theta1 = theta + ccw_angle(p, q);
      piece.kind = kinds[i];
      if (kinds[i] == PieceKind::Line) {
        Matrix2d B;
        B.row(0) = p.transpose();
        B.row(1) = q.transpose();
        piece.a = B.fullPivLu().solve(Vector2d::Ones());
      } else {
        piece.S = conics[i];
      }
      theta = piece.theta1;
      out.pieces.push_back(piece);
    }
    return out;
  }
};

NodeLoop polygon_loop(const Mat& reps) {
  std::vector<Vector2d> pts;
  for (Eigen::Index i = 0; i < reps.rows(); ++i) {
    const Vector2d v = reps.row(i).transpose();
    pts.push_back(v);
    pts.push_back(-v);
  }
  std::sort(pts.begin(), pts.end(),
            [](const Vector2d& a, const Vector2d& b) { return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x()); });
  NodeLoop loop;
  loop.nodes = std::move(pts);
  loop.kinds.assign(loop.nodes.size(), PieceKind::Line);
  loop.conics.assign(loop.nodes.size(), Matrix2d::Zero());
  return loop;
}

NodeLoop conic_loop(double rho) {
  NodeLoop loop;
  for (int k = 0; k < 4; ++k) loop.nodes.push_back(rho * unit(k * std::numbers::pi / 2));
  loop.kinds.assign(4, PieceKind::Conic);
  loop.conics.assign(4, Matrix2d::Identity() / (rho * rho));
  return loop;
}

NodeLoop hull_ball_loop(const HullBallPointsRep& hb) {
  const Vector2d q = hb.apex;
  const double phi = std::atan2(q.y(), q.x());
  const double alpha = std::acos(hb.rho / q.norm());
  const Matrix2d circle = Matrix2d::Identity() / (hb.rho * hb.rho);
  NodeLoop loop;
  loop.nodes = {q, hb.rho * unit(phi + alpha), hb.rho * unit(phi + std::numbers::pi - alpha), -q,
                hb.rho * unit(phi + std::numbers::pi + alpha), hb.rho * unit(phi + kTwoPi - alpha)};
  loop.kinds = {PieceKind::Line, PieceKind::Conic, PieceKind::Line,
                PieceKind::Line, PieceKind::Conic, PieceKind::Line};
  loop.conics = {Matrix2d::Zero(), circle, Matrix2d::Zero(), Matrix2d::Zero(), circle, Matrix2d::Zero()};
  return loop;
}

// Sub-intervals of [t0, t1] where c0 + R cos(w t - psi) <= level.
std::vector<Arc> sublevel(double t0, double t1, double c0, double R, double w, double psi, double level) {
  if (R <= 0.0) return c0 <= level ? std::vector<Arc>{{t0, t1}} : std::vector<Arc>{};
  const double c = (level - c0) / R;
  if (c >= 1.0) return {{t0, t1}};
  if (c < -1.0) return {};
  const double delta = std::acos(c);
  // Excluded set: w t - psi ∈ (-delta, delta) + 2 pi k.
  std::vector<Arc> keep{{t0, t1}};
  const double kmin = std::floor((w * t0 - psi - delta) / kTwoPi) - 1;
  const double kmax = std::ceil((w * t1 - psi + delta) / kTwoPi) + 1;
  for (double k = kmin; k <= kmax; k += 1.0) {
    const double lo = (psi - delta + kTwoPi * k) / w;
    const double hi = (psi + delta + kTwoPi * k) / w;
    std::vector<Arc> next;
    for (const Arc& a : keep) {
      if (hi <= a.begin || lo >= a.end) {
        next.push_back(a);
        continue;
      }
      if (lo > a.begin) next.push_back({a.begin, lo});
      if (hi < a.end) next.push_back({hi, a.end});
    }
    keep = std::move(next);
  }
  std::erase_if(keep, [](const Arc& a) { return a.length() <= kAngleTol; });
  return keep;
}

// <u, S u> = c0 + R cos(2 theta - psi).
void conic_harmonics(const Matrix2d& S, double& c0, double& R, double& psi) {
  c0 = 0.5 * (S(0, 0) + S(1, 1));
  const double dc = 0.5 * (S(0, 0) - S(1, 1));
  R = std::hypot(dc, S(0, 1));
  psi = std::atan2(S(0, 1), dc);
}

bool on_circle(const RadialPiece& p, double r) {
  if (p.kind != PieceKind::Conic) return false;
  double c0, R, psi;
  conic_harmonics(p.S, c0, R, psi);
  const double level = 1.0 / (r * r);
  return std::abs(c0 - level) <= kContactTol * level && R <= kContactTol * level;
}

// Sub-intervals of the piece where the radial function is >= r.
std::vector<Arc> piece_inside(const RadialPiece& p, double r) {
  if (p.kind == PieceKind::Line) {
    const double an = p.a.norm();
    return sublevel(p.theta0, p.theta1, 0.0, an, 1.0, std::atan2(p.a.y(), p.a.x()), 1.0 / r);
  }
  if (on_circle(p, r)) return {{p.theta0, p.theta1}};
  double c0, R, psi;
  conic_harmonics(p.S, c0, R, psi);
  return sublevel(p.theta0, p.theta1, c0, R, 2.0, psi, 1.0 / (r * r));
}

// Area of the body sector between theta_a and theta_b on one piece.
double piece_area(const RadialPiece& p, double ta, double tb) {
  if (p.kind == PieceKind::Line) {
    const double phi = std::atan2(p.a.y(), p.a.x());
    return (std::tan(tb - phi) - std::tan(ta - phi)) / (2.0 * p.a.squaredNorm());
  }
  // Elliptic sector: (1 / (2 sqrt det S)) times the swept angle of S^{1/2} u.
  Eigen::SelfAdjointEigenSolver<Matrix2d> eig(p.S);
  const Matrix2d root = eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  const double swept = ccw_angle(root * unit(ta), root * unit(tb));
  return swept / (2.0 * std::sqrt(p.S.determinant()));
}

}  // namespace

bool supports_exact(const SymmetricBody& body) {
  if (body.dim() != 2) return false;
  if (const auto* l = std::get_if<LpBallRep>(&body.shape())) return l->p == 1.0 || l->p == 2.0 || std::isinf(l->p);
  return true;
}

RadialBoundary radial_boundary(const SymmetricBody& body, const Eigen::Matrix2d& L) {
  if (body.dim() != 2) throw std::invalid_argument("radial_boundary: body is not planar");
  NodeLoop loop;
  if (body.is_polytope()) {
    loop = polygon_loop(body.polytope().vertices);
  } else if (const auto* l = std::get_if<LpBallRep>(&body.shape())) {
    if (l->p == 2.0) {
      loop = conic_loop(l->rho);
    } else if (l->p == 1.0) {
      loop = polygon_loop(l->rho * Mat::Identity(2, 2));
    } else if (std::isinf(l->p)) {
      Mat reps(2, 2);
      reps << l->rho, l->rho, l->rho, -l->rho;
      loop = polygon_loop(reps);
    } else {
      throw std::invalid_argument("radial_boundary: exact planar kernel needs p in {1, 2, inf}");
    }
  } else if (const auto* hb = std::get_if<HullBallPointsRep>(&body.shape())) {
    loop = hull_ball_loop(*hb);
  }
  if (body.transform()) loop.map(Matrix2d(*body.transform()));
  if (!L.isIdentity(0.0)) loop.map(L);
  return loop.build();
}

double radial_function(const RadialPiece& p, double theta) {
  const Vector2d u = unit(theta);
  if (p.kind == PieceKind::Line) return 1.0 / p.a.dot(u);
  return 1.0 / std::sqrt(u.dot(p.S * u));
}

double radial_function(const RadialBoundary& b, double theta) {
  const double start = b.pieces.front().theta0;
  double t = start + std::fmod(std::fmod(theta - start, kTwoPi) + kTwoPi, kTwoPi);
  for (const auto& p : b.pieces)
    if (t <= p.theta1) return radial_function(p, t);
  return radial_function(b.pieces.back(), t);
}

ArcSet inside_arcs(const RadialBoundary& b, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("inside_arcs: radius must be positive");
  ArcSet out;
  for (const auto& p : b.pieces) {
    for (const Arc& a : piece_inside(p, r)) out.arcs.push_back(a);
    if (on_circle(p, r)) out.contact.push_back({p.theta0, p.theta1});
  }
  out.arcs = normalize_arcs(std::move(out.arcs));
  out.contact = normalize_arcs(std::move(out.contact));
  return out;
}

double area_within(const RadialBoundary& b, double r) {
  double total = 0.0;
  for (const auto& p : b.pieces) {
    double cursor = p.theta0;
    for (const Arc& a : piece_inside(p, r)) {
      if (a.begin > cursor) total += piece_area(p, cursor, a.begin);
      total += 0.5 * r * r * a.length();
      cursor = a.end;
    }
    if (p.theta1 > cursor) total += piece_area(p, cursor, p.theta1);
  }
  return total;
}

double area(const RadialBoundary& b) {
  double total = 0.0;
  for (const auto& p : b.pieces) total += piece_area(p, p.theta0, p.theta1);
  return total;
}

std::vector<Arc> normalize_arcs(std::vector<Arc> arcs) {
  for (auto& a : arcs) {
    const double len = a.length();
    double s = std::fmod(a.begin, kTwoPi);
    if (s < 0) s += kTwoPi;
    if (s >= kTwoPi) s -= kTwoPi;
    a = {s, s + len};
  }
  std::erase_if(arcs, [](const Arc& a) { return a.length() <= kAngleTol; });
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.begin < y.begin; });
  std::vector<Arc> merged;
  for (const Arc& a : arcs) {
    if (!merged.empty() && a.begin <= merged.back().end + kAngleTol)
      merged.back().end = std::max(merged.back().end, a.end);
    else
      merged.push_back(a);
  }
  if (merged.size() > 1 && merged.back().end + kAngleTol >= merged.front().begin + kTwoPi) {
    merged.front() = {merged.back().begin, std::max(merged.back().end, merged.front().end + kTwoPi)};
    merged.pop_back();
    std::sort(merged.begin(), merged.end(), [](const Arc& x, const Arc& y) { return x.begin < y.begin; });
  }
  if (!merged.empty() && total_length(merged) >= kTwoPi - kAngleTol) return {{0.0, kTwoPi}};
  return merged;
}

std::vector<Arc> complement_arcs(std::span<const Arc> arcs) {
  if (arcs.empty()) return {{0.0, kTwoPi}};
  std::vector<Arc> out;
  for (std::size_t i = 0; i + 1 < arcs.size(); ++i)
    if (arcs[i + 1].begin > arcs[i].end + kAngleTol) out.push_back({arcs[i].end, arcs[i + 1].begin});
  const double wrap_end = arcs.front().begin + kTwoPi;
  if (wrap_end > arcs.back().end + kAngleTol) out.push_back({arcs.back().end, wrap_end});
  return normalize_arcs(std::move(out));
}

double total_length(std::span<const Arc> arcs) {
  double s = 0.0;
  for (const Arc& a : arcs) s += a.length();
  return s;
}

Eigen::Matrix2d arc_moments(std::span<const Arc> arcs) {
  Matrix2d M = Matrix2d::Zero();
  for (const Arc& a : arcs) {
    const double len = a.end - a.begin;
    const double s2 = std::sin(2 * a.end) - std::sin(2 * a.begin);
    M(0, 0) += len / 2 + s2 / 4;
    M(1, 1) += len / 2 - s2 / 4;
    M(0, 1) += (std::cos(2 * a.begin) - std::cos(2 * a.end)) / 4;
  }
  M(1, 0) = M(0, 1);
  return M;
}

double angular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return d > std::numbers::pi ? kTwoPi - d : d;
}

}  // namespace maxint::planar
