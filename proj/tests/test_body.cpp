#include <doctest.h>

#include <cmath>
#include <random>

#include "maxint/body.hpp"
#include "maxint/measure.hpp"
#include "maxint/polytope.hpp"

using namespace maxint;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

Mat square_rows() { return Mat::Identity(2, 2); }

// Shoelace area of the polygon conv(±p_i), vertices sorted by angle.
double shoelace(const Mat& reps) {
  std::vector<std::pair<double, Vec>> pts;
  for (Eigen::Index i = 0; i < reps.rows(); ++i) {
    Vec p = reps.row(i).transpose();
    pts.push_back({std::atan2(p(1), p(0)), p});
    pts.push_back({std::atan2(-p(1), -p(0)), -p});
  }
  std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.first < b.first; });
  double a = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec& p = pts[i].second;
    const Vec& q = pts[(i + 1) % pts.size()].second;
    a += p(0) * q(1) - p(1) * q(0);
  }
  return 0.5 * a;
}

}  // namespace

TEST_CASE("square gauge, support, containment") {
  auto sq = SymmetricBody::polytope_h(square_rows());
  CHECK(sq.gauge(v2(0.5, -0.3)) == doctest::Approx(0.5));
  CHECK(sq.gauge(v2(-2, 1)) == doctest::Approx(2));
  CHECK(sq.support(v2(1, 1).normalized()) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq.contains(v2(1, 1)));
  CHECK_FALSE(sq.contains(v2(1.01, 0)));
  CHECK(sq.polytope().vertices.rows() == 2);
}

TEST_CASE("V and H descriptions agree") {
  Mat verts(2, 2);
  verts << 1, 1, 1, -1;
  auto v = SymmetricBody::polytope_v(verts);
  auto h = SymmetricBody::polytope_h(square_rows());
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    Vec x = v2(g(rng), g(rng));
    CHECK(v.gauge(x) == doctest::Approx(h.gauge(x)).epsilon(1e-12));
    CHECK(v.support_any(x) == doctest::Approx(h.support_any(x)).epsilon(1e-12));
  }
}

TEST_CASE("polar of the square is the cross polytope") {
  auto p = SymmetricBody::polytope_h(square_rows()).polar();
  CHECK(p.gauge(v2(0.3, -0.4)) == doctest::Approx(0.7));
  CHECK(polytope_volume(p.polytope()) == doctest::Approx(2.0));
}

TEST_CASE("random hexagon: area vs shoelace and gauge vs support duality") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(0.0, M_PI), rad(0.7, 1.4);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> a = {ang(rng), ang(rng), ang(rng)};
    std::sort(a.begin(), a.end());
    Mat reps(3, 2);
    for (int i = 0; i < 3; ++i) reps.row(i) << rad(rng) * std::cos(a[i]), rad(rng) * std::sin(a[i]);
    auto body = SymmetricBody::polytope_v(reps);
    const double expect = shoelace(body.polytope().vertices);
    CHECK(polytope_volume(body.polytope()) == doctest::Approx(expect).epsilon(1e-12));
    // gauge(x) = max_y <x, y> over the polar body.
    auto pol = body.polar();
    for (int k = 0; k < 50; ++k) {
      Vec x = v2(std::cos(k * 0.37), std::sin(k * 0.37));
      CHECK(body.gauge(x) == doctest::Approx(pol.support_any(x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("cube and cross polytope volumes") {
  auto cube = SymmetricBody::polytope_h(Mat::Identity(3, 3));
  auto cross = SymmetricBody::polytope_v(Mat::Identity(3, 3));
  CHECK(polytope_volume(cube.polytope()) == doctest::Approx(8.0));
  CHECK(polytope_volume(cross.polytope()) == doctest::Approx(4.0 / 3.0));
  CHECK(cube.polytope().vertices.rows() == 4);
  CHECK(cross.polytope().facets.rows() == 4);
}

TEST_CASE("random 3D polytope volume vs independent Monte Carlo") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  Mat pts(6, 3);
  for (Eigen::Index i = 0; i < pts.rows(); ++i)
    for (int k = 0; k < 3; ++k) pts(i, k) = g(rng);
  auto body = SymmetricBody::polytope_v(pts);
  const double exact = polytope_volume(body.polytope());
  Vec box(3);
  for (int k = 0; k < 3; ++k) box(k) = body.support(Vec::Unit(3, k));
  std::mt19937_64 r2(99);
  std::uniform_real_distribution<double> u(-1, 1);
  const int N = 400000;
  int hit = 0;
  for (int i = 0; i < N; ++i) {
    Vec x(3);
    for (int k = 0; k < 3; ++k) x(k) = box(k) * u(r2);
    hit += body.gauge(x) <= 1.0;
  }
  const double boxvol = 8 * box.prod();
  const double p = double(hit) / N;
  const double est = boxvol * p, se = boxvol * std::sqrt(p * (1 - p) / N);
  CHECK(std::abs(est - exact) <= 4 * se);
}

TEST_CASE("lp balls") {
  auto l1 = SymmetricBody::lp_ball(2, 1.0, 2.0);
  auto linf = SymmetricBody::lp_ball(3, INFINITY, 1.0);
  auto l3 = SymmetricBody::lp_ball(2, 3.0, 1.0);
  CHECK(l1.gauge(v2(1, 1)) == doctest::Approx(1.0));
  CHECK(l1.support(v2(1, 0)) == doctest::Approx(2.0));
  CHECK(l1.support(v2(1, 1).normalized()) == doctest::Approx(std::sqrt(2.0)));
  Vec x(3);
  x << 0.2, -0.9, 0.5;
  CHECK(linf.gauge(x) == doctest::Approx(0.9));
  // support of the unit l3 ball is the l_{3/2} norm
  Vec u = v2(0.6, 0.8);
  CHECK(l3.support(u) == doctest::Approx(std::pow(std::pow(0.6, 1.5) + std::pow(0.8, 1.5), 1 / 1.5)));
  CHECK(conjugate_exponent(3.0) == doctest::Approx(1.5));
  CHECK(conjugate_exponent(1.0) == INFINITY);
  CHECK_THROWS(SymmetricBody::lp_ball(2, 0.5, 1.0));
}

TEST_CASE("hull of ball and points") {
  Vec q = v2(std::sqrt(2.0), 0);
  auto hb = SymmetricBody::hull_ball_points(1.0, q);
  CHECK(hb.gauge(v2(1, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(hb.gauge(v2(0, 1)) == doctest::Approx(1.0));
  CHECK(hb.support(v2(1, 0)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(hb.support(v2(0, 1)) == doctest::Approx(1.0));
  // tangent point from q to the unit circle sits at 45 degrees
  CHECK(hb.gauge(v2(1, 1).normalized()) == doctest::Approx(1.0));
  // boundary of the tangent segment: q + t (u - q)
  Vec u = v2(1, 1).normalized();
  Vec mid = 0.5 * (q + u);
  CHECK(hb.gauge(mid) == doctest::Approx(1.0));
  CHECK_THROWS(SymmetricBody::hull_ball_points(1.0, v2(0.5, 0)));
}

TEST_CASE("linear images transform gauge and support") {
  Mat T(2, 2);
  T << 1.3, 0.4, -0.2, 0.9;
  std::vector<SymmetricBody> bodies = {SymmetricBody::polytope_h(square_rows()), SymmetricBody::lp_ball(2, 3, 1),
                                       SymmetricBody::hull_ball_points(1.0, v2(1.5, 0.5))};
  for (const auto& b : bodies) {
    auto tb = b.linear_image(T);
    for (int k = 0; k < 20; ++k) {
      Vec x = v2(std::cos(0.3 * k), 0.5 * std::sin(0.7 * k) + 0.1);
      CHECK(tb.gauge(T * x) == doctest::Approx(b.gauge(x)).epsilon(1e-10));
      CHECK(tb.support_any(x) == doctest::Approx(b.support_any(T.transpose() * x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("rejections") {
  Mat zero = Mat::Zero(1, 2);
  CHECK_THROWS(SymmetricBody::polytope_h(zero));
  Mat flat(1, 2);
  flat << 1, 0;
  CHECK_THROWS(SymmetricBody::polytope_h(flat));
  CHECK_THROWS(SymmetricBody::polytope_v(flat));
}
