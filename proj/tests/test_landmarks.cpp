#include <doctest.h>

#include <cmath>

#include "maxint/landmarks.hpp"

using namespace maxint;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// Boundary points of K along a fine direction net.
Mat boundary_points(const SymmetricBody& K, int count) {
  Mat net = sphere_net(K.dim(), count);
  for (Eigen::Index i = 0; i < net.rows(); ++i) net.row(i) /= K.gauge(net.row(i).transpose());
  return net;
}

void check_inside(const Ellipsoid& e, const SymmetricBody& K) {
  Mat net = sphere_net(K.dim(), 4000);
  for (Eigen::Index i = 0; i < net.rows(); ++i) {
    const Vec u = net.row(i).transpose();
    CHECK(e.support(u) <= K.support(u) + 1e-7);
  }
}

void check_contains(const Ellipsoid& e, const SymmetricBody& K) {
  Mat net = sphere_net(K.dim(), 4000);
  for (Eigen::Index i = 0; i < net.rows(); ++i) {
    const Vec u = net.row(i).transpose();
    CHECK(e.support(u) >= K.support(u) - 1e-7);
  }
}

}  // namespace

TEST_CASE("centered MVEE") {
  Mat sq(2, 2);
  sq << 1, 1, 1, -1;
  auto m = centered_mvee(sq);
  CHECK((m.Q - 2 * Mat::Identity(2, 2)).norm() < 1e-8);
  CHECK(m.gap <= 1e-9);
  auto c = centered_mvee(Mat::Identity(3, 3) + Mat::Constant(3, 3, 0.0));
  CHECK((c.Q - Mat::Identity(3, 3)).norm() < 1e-8);
  // extra interior points carry no weight
  Mat pts(3, 2);
  pts << 1, 1, 1, -1, 0.2, 0.1;
  auto p = centered_mvee(pts);
  CHECK(p.weights(2) < 1e-6);
  CHECK_THROWS(centered_mvee(Mat(Eigen::MatrixXd{{1, 0}})));
}

TEST_CASE("square and rectangle") {
  auto sq = SymmetricBody::polytope_h(Mat::Identity(2, 2));
  auto lm = landmarks(sq, Exact2D{});
  CHECK(lm.r_J == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lm.r_L == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(lm.vol_K == doctest::Approx(4.0));
  CHECK(lm.r_M == doctest::Approx(2 / std::sqrt(M_PI)));
  Mat rows(2, 2);
  rows << 0.5, 0, 0, 1;
  auto rect = SymmetricBody::polytope_h(rows);
  auto rl = landmarks(rect, Exact2D{});
  CHECK(rl.r_J == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(rl.r_L == doctest::Approx(2.0).epsilon(1e-8));
  Mat QJ(2, 2), QL(2, 2);
  QJ << 4, 0, 0, 1;
  QL << 8, 0, 0, 2;
  CHECK((rl.john.shape_matrix() - QJ).norm() < 1e-7);
  CHECK((rl.loewner.shape_matrix() - QL).norm() < 1e-7);
}

TEST_CASE("cube and cross polytope") {
  auto cube = SymmetricBody::polytope_h(Mat::Identity(3, 3));
  auto lm = landmarks(cube, MonteCarlo{});
  CHECK(lm.r_J == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(lm.r_L == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
  CHECK(lm.r_M == doctest::Approx(std::cbrt(8 / (4 * M_PI / 3))));
  auto cross = SymmetricBody::polytope_v(Mat::Identity(3, 3));
  auto lc = landmarks(cross, MonteCarlo{});
  CHECK(lc.r_J == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-8));
  CHECK(lc.r_L == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("l_p balls agree with polytopes and closed forms") {
  auto linf = SymmetricBody::lp_ball(3, INFINITY, 1.0);
  CHECK(john(linf).r == doctest::Approx(1.0));
  CHECK(loewner(linf).r == doctest::Approx(std::sqrt(3.0)));
  auto l1 = SymmetricBody::lp_ball(3, 1.0, 2.0);
  CHECK(john(l1).r == doctest::Approx(2 / std::sqrt(3.0)));
  CHECK(loewner(l1).r == doctest::Approx(2.0));
  auto l4 = SymmetricBody::lp_ball(2, 4.0, 1.0);
  CHECK(loewner(l4).r == doctest::Approx(std::pow(2.0, 0.25)));
  check_inside(john(l4), l4);
  check_contains(loewner(l4), l4);
  Mat T(2, 2);
  T << 1.5, 0.2, 0.0, 0.7;
  auto l4t = l4.linear_image(T);
  CHECK(john(l4t).r == doctest::Approx(std::sqrt(std::abs(T.determinant()))));
  check_inside(john(l4t), l4t);
}

TEST_CASE("ball-and-points hull against MVEE of boundary samples") {
  for (const Vec& q : {v2(std::sqrt(2.0), 0), v2(1.2, 0.9), v2(3.0, 0.5)}) {
    auto K = SymmetricBody::hull_ball_points(1.0, q);
    auto L = loewner(K);
    Mat pts = boundary_points(K, 3600);
    pts.conservativeResize(pts.rows() + 1, 2);
    pts.row(pts.rows() - 1) = q.transpose();
    auto ref = Ellipsoid::from_shape_matrix(centered_mvee(pts).Q);
    CHECK(L.r == doctest::Approx(ref.r).epsilon(1e-5));
    check_contains(L, K);
    auto J = john(K);
    check_inside(J, K);
    // John of K is polar to Loewner of K°; sample the boundary of K° = {y : h_K(y) <= 1}
    // and add its corners where the unit circle meets |<q, y>| = 1.
    Mat net = sphere_net(2, 3600);
    for (Eigen::Index i = 0; i < net.rows(); ++i) net.row(i) /= K.support(net.row(i).transpose());
    const double d = q.norm();
    Vec qh = q / d, qp(2);
    qp << -qh(1), qh(0);
    net.conservativeResize(net.rows() + 2, 2);
    net.row(net.rows() - 2) = (qh / d + std::sqrt(1 - 1 / (d * d)) * qp).transpose();
    net.row(net.rows() - 1) = (qh / d - std::sqrt(1 - 1 / (d * d)) * qp).transpose();
    auto jref = Ellipsoid::from_shape_matrix(centered_mvee(net).Q.inverse());
    CHECK(J.r == doctest::Approx(jref.r).epsilon(1e-5));
  }
  auto R = SymmetricBody::hull_ball_points(1.0, v2(std::sqrt(2.0), 0));
  CHECK(john(R).r == doctest::Approx(1.0));
  CHECK(loewner(R).r == doctest::Approx(std::pow(2.0, 0.25)));
}

TEST_CASE("M-position certificate") {
  auto sq = SymmetricBody::polytope_h(Mat::Identity(2, 2));
  auto c = m_position_certificate(sq, Exact2D{});
  const double r = 2 / std::sqrt(M_PI);
  const double area = r * r * (M_PI - 4 * std::acos(1 / r)) + 4 * std::sqrt(r * r - 1);
  CHECK(c.rho == doctest::Approx(area / 4).epsilon(1e-12));
  CHECK(c.C == doctest::Approx(std::pow(area / 4, -0.5)));
}
