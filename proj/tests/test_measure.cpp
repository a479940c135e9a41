#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "maxint/measure.hpp"
#include "maxint/planar.hpp"

using namespace maxint;

namespace {

Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

double circle_square_area(double r) {
  if (r <= 1) return M_PI * r * r;
  if (r >= std::sqrt(2.0)) return 4;
  return r * r * (M_PI - 4 * std::acos(1 / r)) + 4 * std::sqrt(r * r - 1);
}

// Area of K ∩ E by polar integration of the smaller radial function.
double polar_area(const SymmetricBody& K, const Ellipsoid& E, int N = 200000) {
  double s = 0;
  for (int i = 0; i < N; ++i) {
    const double t = (i + 0.5) * 2 * M_PI / N;
    const Vec u = v2(std::cos(t), std::sin(t));
    const double rho = std::min(1.0 / K.gauge(u), 1.0 / E.gauge(u));
    s += 0.5 * rho * rho;
  }
  return s * 2 * M_PI / N;
}

}  // namespace

TEST_CASE("circle-square area") {
  auto sq = SymmetricBody::polytope_h(Mat::Identity(2, 2));
  for (double r : {0.5, 0.9, 1.0, 1.05, 1.2, 1.35, 1.41, 1.5, 3.0}) {
    auto v = intersection_volume(sq, Ellipsoid::ball(2, r), Exact2D{});
    CHECK(v.value == doctest::Approx(circle_square_area(r)).epsilon(1e-13));
    CHECK(v.std_error == 0.0);
  }
}

TEST_CASE("exact planar areas vs polar integration") {
  Mat T(2, 2);
  T << 1.6, 0.3, 0.3, 0.68;
  std::vector<SymmetricBody> bodies = {
      SymmetricBody::polytope_h(Mat::Identity(2, 2)),
      SymmetricBody::lp_ball(2, 1, 1.3),
      SymmetricBody::lp_ball(2, INFINITY, 0.9),
      SymmetricBody::lp_ball(2, 2, 1.1),
      SymmetricBody::hull_ball_points(1.0, v2(std::sqrt(2.0), 0)),
      SymmetricBody::hull_ball_points(0.8, v2(1.1, 1.0)),
  };
  for (const auto& K : bodies) {
    for (double r : {0.7, 1.0, 1.2}) {
      auto E = Ellipsoid::from_transform(T, r);
      CHECK(intersection_volume(K, E, Exact2D{}).value == doctest::Approx(polar_area(K, E)).epsilon(1e-8));
      auto K2 = K.linear_image(T);
      CHECK(intersection_volume(K2, Ellipsoid::ball(2, r), Exact2D{}).value ==
            doctest::Approx(polar_area(K2, Ellipsoid::ball(2, r))).epsilon(1e-8));
    }
  }
}

TEST_CASE("body volumes") {
  auto hb = SymmetricBody::hull_ball_points(1.0, v2(std::sqrt(2.0), 0));
  // disc plus two kites: pi - pi/2 + 2 * (sqrt2 * 1/sqrt2) ... via polar integration
  CHECK(body_volume(hb, Exact2D{}).value ==
        doctest::Approx(polar_area(hb, Ellipsoid::ball(2, 100.0))).epsilon(1e-9));
  // closed form: half-disc (pi/2) plus two kites of area 1 each
  CHECK(body_volume(hb, Exact2D{}).value == doctest::Approx(M_PI / 2 + 2.0));
  CHECK(body_volume(SymmetricBody::lp_ball(3, 1, 1), MonteCarlo{}).value == doctest::Approx(4.0 / 3));
  CHECK(body_volume(SymmetricBody::lp_ball(2, 4, 1), Exact2D{}).value ==
        doctest::Approx(4 * std::pow(std::tgamma(1.25), 2) / std::tgamma(1.5)));
}

TEST_CASE("Monte Carlo intersection volume vs closed forms") {
  auto cube = SymmetricBody::polytope_h(Mat::Identity(3, 3));
  const double r = 1.2;
  const double oracle = 4 * M_PI * r * r * r / 3 - 2 * M_PI * (r - 1) * (r - 1) * (2 * r + 1);
  auto v = intersection_volume(cube, Ellipsoid::ball(3, r), MonteCarlo{400000, 17});
  CHECK(std::abs(v.value - oracle) <= 4 * v.std_error);
  auto sq = SymmetricBody::polytope_h(Mat::Identity(2, 2));
  auto w = intersection_volume(sq, Ellipsoid::ball(2, 1.2), MonteCarlo{200000, 3});
  CHECK(std::abs(w.value - circle_square_area(1.2)) <= 4 * w.std_error);
}

TEST_CASE("Monte Carlo is reproducible and thread-count independent") {
  auto cube = SymmetricBody::polytope_h(Mat::Identity(3, 3));
  setenv("MAXINT_THREADS", "1", 1);
  auto a = intersection_volume(cube, Ellipsoid::ball(3, 1.2), MonteCarlo{100000, 9});
  setenv("MAXINT_THREADS", "4", 1);
  auto b = intersection_volume(cube, Ellipsoid::ball(3, 1.2), MonteCarlo{100000, 9});
  unsetenv("MAXINT_THREADS");
  CHECK(a.value == b.value);
  auto c = intersection_volume(cube, Ellipsoid::ball(3, 1.2), MonteCarlo{100000, 10});
  CHECK(a.value != c.value);
}

TEST_CASE("arc moments") {
  using planar::Arc;
  std::vector<Arc> full = {{0, 2 * M_PI}};
  auto M = planar::arc_moments(full);
  CHECK(M(0, 0) == doctest::Approx(M_PI));
  CHECK(M(1, 1) == doctest::Approx(M_PI));
  CHECK(std::abs(M(0, 1)) < 1e-14);
  std::vector<Arc> contact = {{M_PI / 4, 3 * M_PI / 4}, {5 * M_PI / 4, 7 * M_PI / 4}};
  auto C = planar::arc_moments(contact);
  CHECK(C(0, 0) == doctest::Approx(M_PI / 2 - 1));
  CHECK(C(1, 1) == doctest::Approx(M_PI / 2 + 1));
  // single arc against numerical quadrature
  std::vector<Arc> one = {{0.3, 1.7}};
  Eigen::Matrix2d Q = Eigen::Matrix2d::Zero();
  const int N = 100000;
  for (int i = 0; i < N; ++i) {
    const double t = 0.3 + (i + 0.5) * 1.4 / N;
    Eigen::Vector2d u(std::cos(t), std::sin(t));
    Q += u * u.transpose() * (1.4 / N);
  }
  CHECK((planar::arc_moments(one) - Q).norm() < 1e-9);
}

TEST_CASE("restricted measures of the square") {
  auto sq = SymmetricBody::polytope_h(Mat::Identity(2, 2));
  const double r = 1.2;
  auto out = restricted_measure(sq, r, Side::Outside, Exact2D{});
  CHECK(out.mass() == doctest::Approx(8 * std::acos(1 / r)));
  auto in = restricted_measure(sq, r, Side::Inside, Exact2D{});
  CHECK(in.mass() + out.mass() == doctest::Approx(2 * M_PI));
  auto rep = moment_report(out);
  CHECK(rep.residual < 1e-12);
  CHECK_FALSE(out.tangency_degeneracy());
  CHECK_THROWS_AS(restricted_measure(sq, 0.9, Side::Outside, Exact2D{}), EmptyMeasureError);
  auto mc = restricted_measure(sq, r, Side::Outside, MonteCarlo{200000, 4});
  auto mrep = moment_report(mc);
  CHECK(std::abs(mrep.mass - out.mass()) <= 4 * mrep.mass_std_error);
}

TEST_CASE("tangency degeneracy of the ball-and-points hull") {
  auto hb = SymmetricBody::hull_ball_points(1.0, v2(std::sqrt(2.0), 0));
  auto m = restricted_measure(hb, 1.0, Side::Inside, Exact2D{});
  CHECK(m.tangency_degeneracy());
  CHECK(planar::total_length(m.contact_arcs) == doctest::Approx(M_PI));
  auto m2 = restricted_measure(hb, 1.1, Side::Inside, Exact2D{});
  CHECK_FALSE(m2.tangency_degeneracy());
}

TEST_CASE("method checks") {
  auto cube = SymmetricBody::polytope_h(Mat::Identity(3, 3));
  CHECK_THROWS(check_method(cube, Exact2D{}));
  CHECK_THROWS(check_method(cube, MonteCarlo{10, 1}));
  CHECK_NOTHROW(check_method(cube, MonteCarlo{}));
  CHECK_THROWS(check_method(SymmetricBody::lp_ball(2, 3, 1), Exact2D{}));
}
