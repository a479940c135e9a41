#include "maxint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace maxint {

bool RadiusProfile::all_converged() const {
  return std::all_of(samples.begin(), samples.end(), [](const ProfileSample& s) { return s.converged; });
}

RadiusProfile sweep(const SymmetricBody& body, const std::vector<double>& radii, const SweepOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("sweep: empty radius list");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw std::invalid_argument("sweep: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("sweep: radii must be strictly increasing");
  }
  const int n = body.dim();
  RadiusProfile prof;
  const Landmarks lm = landmarks(body, opts.solver.method);
  prof.r_J = lm.r_J;
  prof.r_L = lm.r_L;
  prof.r_M = lm.r_M;
  prof.vol_K = lm.vol_K;
  prof.kappa_n = unit_ball_volume(n);
  prof.method = method_name(opts.solver.method);
  const bool exact = is_exact(opts.solver.method);
  prof.tolerance = exact ? 1e-9 : 0.0;

  SolverOptions so = opts.solver;
  for (double r : radii) {
    const PositionSolution sol = solve(body, r, so);
    ProfileSample s;
    s.r = r;
    s.m_value = sol.m_value;
    s.m_std_error = sol.m_std_error;
    s.grad_norm = sol.grad_norm;
    s.regime = sol.regime;
    s.converged = sol.converged;
    s.noise_limited = sol.noise_limited;
    s.iterations = sol.iterations;
    s.T = sol.ellipsoid.T;
    prof.samples.push_back(s);
    if (opts.warm_start) so.start = sol.ellipsoid.T;
  }

  auto tol = [&](double se_a, double se_b) { return exact ? 1e-9 : std::max(1e-9, 4.0 * std::hypot(se_a, se_b)); };
  auto& v = prof.violations;
  for (const auto& s : prof.samples) {
    const double t = tol(s.m_std_error, lm.vol_K_std_error);
    if (s.r <= prof.r_J + 1e-12) {
      const double d = std::abs(s.m_value - std::pow(s.r, n) * prof.kappa_n);
      if (d > t) v.push_back({"ball-volume-below-john", s.r, s.r, d});
    }
    if (s.r >= prof.r_L - 1e-12) {
      const double d = std::abs(s.m_value - prof.vol_K);
      if (d > t) v.push_back({"body-volume-above-loewner", s.r, s.r, d});
    }
  }
  for (std::size_t i = 0; i < prof.samples.size(); ++i) {
    for (std::size_t j = i + 1; j < prof.samples.size(); ++j) {
      const auto& a = prof.samples[i];
      const auto& b = prof.samples[j];
      const double t = tol(a.m_std_error, b.m_std_error);
      if (a.m_value - b.m_value > t) v.push_back({"monotone", a.r, b.r, a.m_value - b.m_value});
      if (exact && a.r > prof.r_J && b.r < prof.r_L && !(b.m_value > a.m_value))
        v.push_back({"strictly-increasing", a.r, b.r, a.m_value - b.m_value});
      const double bound = std::pow(b.r / a.r, n) * a.m_value;
      if (b.m_value - bound > t) v.push_back({"scaling-bound", a.r, b.r, b.m_value - bound});
    }
  }
  return prof;
}

std::string to_string(LimitSide side) { return side == LimitSide::John ? "john" : "loewner"; }

LimitSide limit_side_from_string(const std::string& s) {
  if (s == "john") return LimitSide::John;
  if (s == "loewner") return LimitSide::Loewner;
  throw std::invalid_argument("unknown side '" + s + "' (expected john or loewner)");
}

NormalizedBody normalize_position(const SymmetricBody& body, LimitSide side) {
  const Ellipsoid e = side == LimitSide::John ? john(body) : loewner(body);
  const Mat map = e.r * e.T;
  NormalizedBody nb{body.linear_image(map.inverse()), map, e.r,
                    "mapped by (r T)^{-1} with r = " + std::to_string(e.r) + " so that the " + to_string(side) +
                        " ellipsoid is the unit ball"};
  return nb;
}

std::vector<Cluster> cluster_directions(const std::vector<Vec>& dirs, const std::vector<double>& weights,
                                        double window) {
  std::vector<Vec> seeds;
  std::vector<Vec> sums;
  std::vector<double> mass;
  double total = 0.0;
  const double cos_w = std::cos(window);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const double w = weights[i];
    if (!(w > 0.0)) continue;
    total += w;
    std::size_t k = 0;
    for (; k < seeds.size(); ++k)
      if (seeds[k].dot(dirs[i]) >= cos_w) break;
    if (k == seeds.size()) {
      seeds.push_back(dirs[i]);
      sums.push_back(Vec::Zero(dirs[i].size()));
      mass.push_back(0.0);
    }
    sums[k] += w * dirs[i];
    mass[k] += w;
  }
  std::vector<Cluster> out;
  for (std::size_t k = 0; k < seeds.size(); ++k) out.push_back({sums[k].normalized(), mass[k] / total});
  std::sort(out.begin(), out.end(), [](const Cluster& a, const Cluster& b) {
    const double ta = std::atan2(a.direction(1), a.direction(0));
    const double tb = std::atan2(b.direction(1), b.direction(0));
    return ta < tb;
  });
  return out;
}

const LimitStep* LimitMeasureReport::finest() const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    if (!it->degenerate) return &*it;
  return nullptr;
}

namespace {

Vec unit2(double theta) {
  Vec u(2);
  u << std::cos(theta), std::sin(theta);
  return u;
}

double angle_between(const Vec& a, const Vec& b) { return std::acos(std::clamp(a.dot(b), -1.0, 1.0)); }

double distance_to_set(const Vec& u, const std::vector<Vec>& set) {
  double best = std::numbers::pi;
  for (const auto& c : set) best = std::min(best, angle_between(u, c));
  return best;
}

// Joins the pieces of an arc that normalization split at angle 0.
std::vector<planar::Arc> join_wrapped(std::vector<planar::Arc> arcs) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (arcs.size() >= 2 && arcs.front().begin <= 1e-12 && arcs.back().end >= two_pi - 1e-12) {
    planar::Arc first = arcs.front();
    arcs.erase(arcs.begin());
    arcs.back().end = first.end + two_pi;
  }
  return arcs;
}

std::vector<Vec> contact_set(const SymmetricBody& body, LimitSide side, bool& exact) {
  std::vector<Vec> out;
  if (body.is_polytope()) {
    exact = true;
    const Mat& P = side == LimitSide::John ? body.polytope().facets : body.polytope().vertices;
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      const Vec p = P.row(i).transpose();
      if (std::abs(p.norm() - 1.0) <= 1e-6) {
        out.push_back(p.normalized());
        out.push_back(-p.normalized());
      }
    }
    return out;
  }
  exact = false;
  const int n = body.dim();
  const Mat net = sphere_net(n, n == 2 ? 7200 : 20000);
  for (Eigen::Index i = 0; i < net.rows(); ++i) {
    const Vec u = net.row(i).transpose();
    if (std::abs(body.gauge(u) - 1.0) <= 1e-4) out.push_back(u);
  }
  return out;
}

}  // namespace

LimitMeasureReport limit_measure(const SymmetricBody& body, LimitSide side, const std::vector<double>& radii,
                                 const LimitOptions& opts) {
  if (radii.empty()) throw std::invalid_argument("limit_measure: empty radius sequence");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (side == LimitSide::John && !(r > 1.0)) throw std::invalid_argument("limit_measure: john side needs r > 1");
    if (side == LimitSide::Loewner && !(r > 0.0 && r < 1.0))
      throw std::invalid_argument("limit_measure: loewner side needs 0 < r < 1");
    if (i > 0) {
      const bool toward_one = side == LimitSide::John ? r < radii[i - 1] : r > radii[i - 1];
      if (!toward_one) throw std::invalid_argument("limit_measure: radii must move monotonically toward 1");
    }
  }
  check_method(body, opts.solver.method);
  const int n = body.dim();
  LimitMeasureReport rep;
  rep.side = side;
  rep.window = opts.window;
  rep.contacts = contact_set(body, side, rep.contacts_exact);
  const Side mside = side == LimitSide::John ? Side::Outside : Side::Inside;

  SolverOptions so = opts.solver;
  for (double r : radii) {
    LimitStep st;
    st.r = r;
    const PositionSolution sol = solve(body, r, so);
    if (opts.warm_start) so.start = sol.ellipsoid.T;
    st.T = sol.ellipsoid.T;
    st.regime = sol.regime;
    st.converged = sol.converged;
    if (sol.regime != Regime::Interior || sol.at_endpoint) {
      st.degenerate = true;
      st.note = "regime " + to_string(sol.regime) + (sol.at_endpoint ? " (endpoint)" : "") + ": measure empty or full";
      rep.steps.push_back(std::move(st));
      continue;
    }
    const SymmetricBody moved = body.linear_image(sol.ellipsoid.T.inverse());
    RestrictedSphereMeasure meas;
    try {
      meas = restricted_measure(moved, r, mside, opts.solver.method);
    } catch (const EmptyMeasureError& e) {
      st.degenerate = true;
      st.note = e.what();
      rep.steps.push_back(std::move(st));
      continue;
    }
    st.moments = moment_report(meas);
    std::vector<Vec> dirs;
    std::vector<double> w;
    double support = 0.0;
    if (meas.exact()) {
      st.arcs = join_wrapped(meas.arcs);
      for (const auto& a : st.arcs) {
        dirs.push_back(unit2(a.midpoint()));
        w.push_back(a.length());
        constexpr int kProbe = 64;
        for (int k = 0; k <= kProbe; ++k)
          support = std::max(support, distance_to_set(unit2(a.begin + a.length() * k / kProbe), rep.contacts));
      }
    } else {
      for (Eigen::Index i = 0; i < meas.samples.rows(); ++i) {
        if (!meas.included[static_cast<std::size_t>(i)]) continue;
        const Vec u = meas.samples.row(i).transpose();
        dirs.push_back(u);
        w.push_back(1.0);
        support = std::max(support, distance_to_set(u, rep.contacts));
      }
    }
    if (n == 2 || !dirs.empty()) st.clusters = cluster_directions(dirs, w, opts.window);
    st.support_distance = rep.contacts.empty() ? std::numbers::pi : support;
    rep.steps.push_back(std::move(st));
  }

  const LimitStep* prev = nullptr;
  const double floor = 10.0 * opts.solver.grad_tol;
  for (const auto& st : rep.steps) {
    if (st.degenerate) continue;
    if (prev) {
      if (st.moments.residual > std::max(prev->moments.residual, floor) + 1e-12) rep.residual_monotone = false;
      if (st.support_distance > prev->support_distance + 1e-12) rep.support_monotone = false;
    }
    prev = &st;
  }
  return rep;
}

std::vector<double> uniform_grid(double t_min, double t_max, double step) {
  if (!(step > 0.0) || !(t_max >= t_min)) throw std::invalid_argument("uniform_grid: need step > 0 and t_max >= t_min");
  const long count = std::lround((t_max - t_min) / step) + 1;
  std::vector<double> t;
  for (long i = 0; i < count; ++i) t.push_back(t_min + static_cast<double>(i) * step);
  return t;
}

BProbeReport b_probe(const SymmetricBody& body, const Mat& lambda, const std::vector<double>& t_grid,
                     const Method& method, double tol) {
  const int n = body.dim();
  if (lambda.rows() != n || lambda.cols() != n) throw std::invalid_argument("b_probe: Lambda has the wrong size");
  if ((lambda - lambda.transpose()).norm() > 1e-12 * (1.0 + lambda.norm()))
    throw std::invalid_argument("b_probe: Lambda must be symmetric");
  if (std::abs(lambda.trace()) > 1e-12 * (1.0 + lambda.norm()))
    throw std::invalid_argument("b_probe: Lambda must be traceless");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("b_probe: grid must be strictly increasing");
  check_method(body, method);

  BProbeReport rep;
  rep.lambda = lambda;
  rep.method = method_name(method);
  const bool exact = is_exact(method);
  for (double t : t_grid) {
    // e^{t Lambda} K ∩ B has the volume of K ∩ e^{-t Lambda} B.
    const auto v = intersection_volume(body, Ellipsoid::from_transform(sym_expm(-t * lambda), 1.0), method);
    if (!(v.value > 0.0)) {
      rep.truncated = true;
      break;
    }
    rep.t.push_back(t);
    rep.phi.push_back(v.value);
    rep.phi_std_error.push_back(v.std_error);
  }
  const std::size_t m = rep.t.size();
  auto rel = [&](std::size_t i) { return rep.phi_std_error[i] / rep.phi[i]; };
  auto flag = [&](double value, double se) {
    if (value >= -tol) return;
    if (!exact && value >= -4.0 * se)
      rep.inconclusive = true;
    else
      rep.counterexample = true;
  };
  rep.max_second_diff = -INFINITY;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double d = std::log(rep.phi[i + 1]) - 2.0 * std::log(rep.phi[i]) + std::log(rep.phi[i - 1]);
    const double se = std::sqrt(rel(i + 1) * rel(i + 1) + 4.0 * rel(i) * rel(i) + rel(i - 1) * rel(i - 1));
    rep.second_diff.push_back(d);
    rep.second_diff_std_error.push_back(se);
    rep.max_second_diff = std::max(rep.max_second_diff, d);
    flag(-d, se);
  }
  rep.min_midpoint_residual = INFINITY;
  // Pairs whose midpoint is a grid point (uniform grids).
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 2; j < m; j += 2) {
      const std::size_t k = (i + j) / 2;
      const double mid = 0.5 * (rep.t[i] + rep.t[j]);
      if (std::abs(rep.t[k] - mid) > 1e-9 * (1.0 + std::abs(mid))) continue;
      MidpointResidual res;
      res.s = rep.t[i];
      res.t = rep.t[j];
      res.value = 2.0 * std::log(rep.phi[k]) - std::log(rep.phi[i]) - std::log(rep.phi[j]);
      res.std_error = std::sqrt(4.0 * rel(k) * rel(k) + rel(i) * rel(i) + rel(j) * rel(j));
      rep.min_midpoint_residual = std::min(rep.min_midpoint_residual, res.value);
      flag(res.value, res.std_error);
      rep.midpoints.push_back(res);
    }
  }
  if (rep.second_diff.empty()) rep.max_second_diff = 0.0;
  if (rep.midpoints.empty()) rep.min_midpoint_residual = 0.0;
  return rep;
}

}  // namespace maxint
