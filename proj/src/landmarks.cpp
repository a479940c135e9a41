#include "maxint/landmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace maxint {

namespace {

// Closed-form touching radii of the canonical l_p ball.
std::pair<double, double> lp_touching_radii(const LpBallRep& l) {
  const double corner = std::isinf(l.p) ? std::sqrt(static_cast<double>(l.n))
                                        : std::pow(static_cast<double>(l.n), 0.5 - 1.0 / l.p);
  // corner = rho_K(diagonal) / rho_K(axis) relative factor.
  if (l.p >= 2.0) return {l.rho, l.rho * corner};
  return {l.rho * corner, l.rho};
}

// Orthonormal frame whose first column is along q.
Mat frame_along(const Vec& q) {
  const Eigen::Index n = q.size();
  Mat A = Mat::Identity(n, n);
  A.col(0) = q.normalized();
  Eigen::HouseholderQR<Mat> qr(A);
  Mat Qm = qr.householderQ();
  if (Qm.col(0).dot(q) < 0) Qm.col(0) *= -1.0;
  return Qm;
}

Mat hull_ball_shape(const HullBallPointsRep& hb, bool john_side) {
  const int n = static_cast<int>(hb.apex.size());
  const double d2 = hb.apex.squaredNorm();
  const double rho2 = hb.rho * hb.rho;
  double a2, b2;
  if (!john_side) {
    a2 = d2;
    b2 = rho2;
  } else if (d2 <= n * rho2) {
    a2 = rho2;
    b2 = rho2;
  } else {
    // Maximize a b^{n-1} subject to rho^2 a^2 + (d^2 - rho^2) b^2 <= rho^2 d^2.
    b2 = (n - 1) * rho2 * d2 / (n * (d2 - rho2));
    a2 = d2 - (d2 - rho2) * b2 / rho2;
  }
  Vec diag = Vec::Constant(n, b2);
  diag(0) = a2;
  const Mat F = frame_along(hb.apex);
  return F * diag.asDiagonal() * F.transpose();
}

Mat map_shape(const SymmetricBody& body, const Mat& Q) {
  if (!body.transform()) return Q;
  const Mat& M = *body.transform();
  return M * Q * M.transpose();
}

}  // namespace

MveeResult centered_mvee(const Mat& points, double tol, int max_iter) {
  const Eigen::Index m = points.rows();
  const int n = static_cast<int>(points.cols());
  if (m < 1 || numerical_rank(points) < n) throw std::invalid_argument("centered_mvee: points do not span R^n");
  MveeResult res;
  Vec u = Vec::Constant(m, 1.0 / static_cast<double>(m));
  Mat X = points.transpose() * u.asDiagonal() * points;
  Vec kappa(m);
  int it = 0;
  for (; it < max_iter; ++it) {
    const Mat Xinv = X.inverse();
    kappa = (points * Xinv).cwiseProduct(points).rowwise().sum();
    Eigen::Index j = 0;
    kappa.maxCoeff(&j);
    Eigen::Index k = -1;
    for (Eigen::Index i = 0; i < m; ++i)
      if (u(i) > 0.0 && (k < 0 || kappa(i) < kappa(k))) k = i;
    res.gap = kappa(j) / n - 1.0;
    if (res.gap <= tol) break;
    double beta;
    Eigen::Index idx;
    if (kappa(j) - n >= n - kappa(k)) {
      idx = j;
      beta = (kappa(j) - n) / (n * (kappa(j) - 1.0));
    } else {
      idx = k;
      const double drop = -u(k) / (1.0 - u(k));
      beta = kappa(k) > 1.0 ? (kappa(k) - n) / (n * (kappa(k) - 1.0)) : drop;
      beta = std::max(beta, drop);
    }
    u *= (1.0 - beta);
    u(idx) += beta;
    if (u(idx) < 1e-15) u(idx) = 0.0;
    const Vec p = points.row(idx).transpose();
    X = (1.0 - beta) * X + beta * p * p.transpose();
  }
  res.iterations = it;
  res.weights = u;
  res.Q = n * 0.5 * (X + X.transpose());
  return res;
}

Ellipsoid loewner(const SymmetricBody& body) {
  if (body.is_polytope()) return Ellipsoid::from_shape_matrix(centered_mvee(body.polytope().vertices).Q);
  if (const auto* l = std::get_if<LpBallRep>(&body.shape())) {
    const double rL = lp_touching_radii(*l).second;
    return Ellipsoid::from_shape_matrix(map_shape(body, rL * rL * Mat::Identity(l->n, l->n)));
  }
  const auto& hb = std::get<HullBallPointsRep>(body.shape());
  return Ellipsoid::from_shape_matrix(map_shape(body, hull_ball_shape(hb, false)));
}

Ellipsoid john(const SymmetricBody& body) {
  if (body.is_polytope()) {
    // J(K) = L(K°)°: the polar of {x^T Q^{-1} x <= 1} is {y^T Q y <= 1}.
    const Mat Q = centered_mvee(body.polytope().facets).Q;
    return Ellipsoid::from_shape_matrix(Q.inverse());
  }
  if (const auto* l = std::get_if<LpBallRep>(&body.shape())) {
    const double rJ = lp_touching_radii(*l).first;
    return Ellipsoid::from_shape_matrix(map_shape(body, rJ * rJ * Mat::Identity(l->n, l->n)));
  }
  const auto& hb = std::get<HullBallPointsRep>(body.shape());
  return Ellipsoid::from_shape_matrix(map_shape(body, hull_ball_shape(hb, true)));
}

Landmarks landmarks(const SymmetricBody& body, const Method& method) {
  Landmarks lm;
  lm.john = john(body);
  lm.loewner = loewner(body);
  lm.r_J = lm.john.r;
  lm.r_L = lm.loewner.r;
  const auto vk = body_volume(body, method);
  lm.vol_K = vk.value;
  lm.vol_K_std_error = vk.std_error;
  lm.r_M = std::pow(lm.vol_K / unit_ball_volume(body.dim()), 1.0 / body.dim());
  return lm;
}

MPositionCertificate m_position_certificate(const SymmetricBody& body, const Method& method) {
  const int n = body.dim();
  MPositionCertificate c;
  const auto vk = body_volume(body, method);
  c.vol_K = vk.value;
  c.r_M = std::pow(c.vol_K / unit_ball_volume(n), 1.0 / n);
  const auto inter = intersection_volume(body, Ellipsoid::ball(n, c.r_M), method);
  c.intersection = inter.value;
  c.rho = inter.value / c.vol_K;
  const double rel = std::hypot(inter.value > 0 ? inter.std_error / inter.value : 0.0, vk.std_error / vk.value);
  c.rho_std_error = c.rho * rel;
  if (!(c.rho > 0.0)) throw std::runtime_error("m_position_certificate: empty intersection");
  c.C = std::pow(c.rho, -1.0 / n);
  return c;
}

}  // namespace maxint
