#include "maxint/solver.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "maxint/planar.hpp"
#include "maxint/sampling.hpp"

namespace maxint {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Interior: return "interior";
    case Regime::BelowJohn: return "r<=r_J";
    case Regime::AboveLoewner: return "r>=r_L";
  }
  return "unknown";
}

GradientReport gradient(const SymmetricBody& body, const Ellipsoid& e, const Method& method) {
  if (body.dim() != e.dim()) throw std::invalid_argument("gradient: dimension mismatch");
  check_method(body, method);
  const int n = e.dim();
  GradientReport rep;
  rep.scale = std::pow(e.r, n);
  rep.method = method_name(method);
  const double sigma = unit_sphere_area(n);

  if (is_exact(method)) {
    const Eigen::Matrix2d Tinv = Eigen::Matrix2d(e.T).inverse();
    const planar::ArcSet set = planar::inside_arcs(planar::radial_boundary(body, Tinv), e.r);
    rep.moments.M = planar::arc_moments(set.arcs);
    rep.moments.mass = planar::total_length(set.arcs);
    rep.moments.method = "exact-2d";
    rep.tangency_degeneracy = set.tangency_degeneracy();
    rep.cap_empty = set.arcs.empty();
    rep.cap_full = !rep.cap_empty && rep.moments.mass >= sigma - 1e-12;
  } else {
    const auto& mc = std::get<MonteCarlo>(method);
    const Mat rT = e.r * e.T;
    rep.moments = sphere_moments_mc(n, [&](const Vec& x) { return body.gauge(rT * x) <= 1.0; }, mc);
    rep.cap_empty = rep.moments.mass == 0.0;
    rep.cap_full = rep.moments.mass >= sigma * (1.0 - 1e-15);
    rep.std_error = rep.scale * rep.moments.traceless_std_error;
  }

  if (rep.moments.mass > 0.0)
    rep.moments.residual = (rep.moments.M / rep.moments.mass - Mat::Identity(n, n) / n).norm();
  if (rep.cap_full || rep.cap_empty) {
    // Full sphere: M = (sigma / n) I exactly; empty cap: M = 0. Either way G = 0.
    rep.G = Mat::Zero(n, n);
    if (rep.cap_full) {
      rep.moments.M = Mat::Identity(n, n) * sigma / n;
      rep.moments.mass = sigma;
      rep.moments.residual = 0.0;
    }
    return rep;
  }
  Mat G = rep.moments.M;
  G.diagonal().array() -= G.trace() / n;
  rep.G = rep.scale * 0.5 * (G + G.transpose());
  return rep;
}

namespace {

double objective(const SymmetricBody& body, const Ellipsoid& e, const Method& method) {
  return intersection_volume(body, e, method).value;
}

// Orthonormal basis of the traceless symmetric n x n matrices.
std::vector<Mat> traceless_basis(int n) {
  std::vector<Mat> basis;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      Mat E = Mat::Zero(n, n);
      E(i, k) = E(k, i) = std::sqrt(0.5);
      basis.push_back(E);
    }
  for (int k = 1; k < n; ++k) {
    Mat E = Mat::Zero(n, n);
    for (int i = 0; i < k; ++i) E(i, i) = 1.0;
    E(k, k) = -k;
    basis.push_back(E / std::sqrt(k * (k + 1.0)));
  }
  return basis;
}

// Newton step from a central-difference Hessian of the exact gradient.
// Near the optimum the objective is flat at round-off, so acceptance is
// decided by the gradient norm.
std::optional<Ellipsoid> newton_step(const SymmetricBody& body, const Ellipsoid& e, const GradientReport& g,
                                     const Method& method) {
  const int n = e.dim();
  const auto basis = traceless_basis(n);
  const auto d = static_cast<Eigen::Index>(basis.size());
  const double h = 1e-5;
  Mat H(d, d);
  Vec gv(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    gv(k) = frobenius_dot(g.G, basis[k]);
    const TracelessDirection dir(basis[k]);
    const Mat dG = gradient(body, step(e, dir, h), method).G - gradient(body, step(e, dir, -h), method).G;
    for (Eigen::Index j = 0; j < d; ++j) H(j, k) = frobenius_dot(dG, basis[j]) / (2.0 * h);
  }
  H = (0.5 * (H + H.transpose())).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eig(H);
  if (eig.eigenvalues().maxCoeff() >= 0.0) return std::nullopt;
  const Vec delta = -H.ldlt().solve(gv);
  Mat D = Mat::Zero(n, n);
  for (Eigen::Index k = 0; k < d; ++k) D += delta(k) * basis[k];
  const double len = D.norm();
  if (!(len > 0.0) || len > 0.5) return std::nullopt;
  return step(e, TracelessDirection(D / len), len);
}

void classify_final(const SymmetricBody& body, const GradientReport& g, PositionSolution& sol) {
  if (g.cap_full) {
    const auto in = ellipsoid_in_body(sol.ellipsoid, body);
    if (in.margin < 1.0 - kBoundaryTol) {
      sol.regime = Regime::BelowJohn;
    } else {
      sol.at_endpoint = true;
      sol.warnings.push_back("endpoint: ellipsoid touches the body from inside (full cap, r = r_J)");
    }
  } else if (g.cap_empty) {
    const auto out = body_in_ellipsoid(body, sol.ellipsoid);
    if (out.margin < 1.0 - kBoundaryTol) {
      sol.regime = Regime::AboveLoewner;
    } else {
      sol.at_endpoint = true;
      sol.warnings.push_back("endpoint: body touches the ellipsoid from inside (empty cap, r = r_L)");
    }
  }
}

void attach_certificate(const GradientReport& g, PositionSolution& sol) {
  sol.grad_norm = g.norm();
  sol.grad_std_error = g.std_error;
  sol.moments = g.moments;
  sol.isotropy_residual = g.moments.mass > 0.0 ? g.moments.residual : 0.0;
  if (g.tangency_degeneracy) {
    sol.tangency_degeneracy = true;
    sol.warnings.push_back(
        "tangency degeneracy: part of the body boundary lies on the sphere; the isotropy certificate may fail");
  }
}

}  // namespace

PositionSolution solve(const SymmetricBody& body, double r, const SolverOptions& opts) {
  if (!(r > 0.0)) throw std::invalid_argument("solve: radius must be positive");
  check_method(body, opts.method);
  const int n = body.dim();
  PositionSolution sol;
  sol.ellipsoid = opts.start ? Ellipsoid::from_transform(*opts.start, r) : Ellipsoid::ball(n, r);
  if (sol.ellipsoid.dim() != n) throw std::invalid_argument("solve: start transform has the wrong dimension");

  // Degenerate regimes: any contained ellipsoid is maximal (m = r^n kappa_n),
  // any containing one is maximal (m = Vol K).
  const auto in = ellipsoid_in_body(sol.ellipsoid, body);
  const auto out = body_in_ellipsoid(body, sol.ellipsoid);
  if (in.value && in.margin < 1.0 - kBoundaryTol) {
    sol.regime = Regime::BelowJohn;
    sol.m_value = sol.ellipsoid.volume();
    sol.converged = true;
    attach_certificate(gradient(body, sol.ellipsoid, opts.method), sol);
    sol.trace.push_back({0, sol.m_value, 0.0, 0.0});
    if (!in.exact) sol.warnings.push_back("containment decided on a direction net");
    return sol;
  }
  if (out.value && out.margin < 1.0 - kBoundaryTol) {
    sol.regime = Regime::AboveLoewner;
    const auto vk = body_volume(body, opts.method);
    sol.m_value = vk.value;
    sol.m_std_error = vk.std_error;
    sol.converged = true;
    attach_certificate(gradient(body, sol.ellipsoid, opts.method), sol);
    sol.trace.push_back({0, sol.m_value, 0.0, 0.0});
    if (!out.exact) sol.warnings.push_back("containment decided on a direction net");
    return sol;
  }

  const bool exact = is_exact(opts.method);
  double m = objective(body, sol.ellipsoid, opts.method);
  double last_step = 0.0;
  GradientReport g;
  int it = 0;
  for (;; ++it) {
    g = gradient(body, sol.ellipsoid, opts.method);
    const double gn = g.norm();
    sol.trace.push_back({it, m, gn, last_step});
    const bool isotropic = !exact || g.moments.residual <= opts.grad_tol;
    if (g.cap_full || g.cap_empty || (gn <= opts.grad_tol && isotropic)) {
      sol.converged = true;
      break;
    }
    if (!exact && gn < 3.0 * g.std_error) {
      sol.noise_limited = true;
      sol.converged = true;
      break;
    }
    if (it >= opts.max_iter) break;

    if (exact && gn < 1e-4) {
      if (auto cand = newton_step(body, sol.ellipsoid, g, opts.method)) {
        const double m_new = objective(body, *cand, opts.method);
        if (m_new >= m - 1e-12 * std::abs(m) && gradient(body, *cand, opts.method).norm() < gn) {
          last_step = (cand->T - sol.ellipsoid.T).norm();
          sol.ellipsoid = *cand;
          m = m_new;
          continue;
        }
      }
    }
    const TracelessDirection dir = TracelessDirection::project(g.G / gn);
    double eta = opts.initial_step;
    bool accepted = false;
    Ellipsoid cand;
    double m_cand = m;
    while (eta >= opts.min_step) {
      cand = step(sol.ellipsoid, dir, eta);
      m_cand = objective(body, cand, opts.method);
      if (m_cand >= m + opts.armijo_c * eta * gn) {
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      sol.line_search_stalled = true;
      if (!exact) {
        sol.noise_limited = true;
        sol.converged = true;
      }
      break;
    }
    // Quadratic model through m, the slope gn and the accepted point; keep the
    // model maximizer when it does better than the Armijo step.
    const double curvature = 2.0 * (m + gn * eta - m_cand) / (eta * eta);
    if (curvature > 0.0) {
      const double eta_q = gn / curvature;
      if (eta_q > 0.0 && std::abs(eta_q - eta) > 1e-3 * eta && eta_q < 4.0 * eta) {
        const Ellipsoid alt = step(sol.ellipsoid, dir, eta_q);
        const double m_alt = objective(body, alt, opts.method);
        if (m_alt > m_cand) {
          cand = alt;
          m_cand = m_alt;
          eta = eta_q;
        }
      }
    }
    sol.ellipsoid = cand;
    m = m_cand;
    last_step = eta;
  }
  sol.iterations = it;
  sol.m_value = m;
  if (!exact) sol.m_std_error = intersection_volume(body, sol.ellipsoid, opts.method).std_error;
  attach_certificate(g, sol);
  classify_final(body, g, sol);
  if (sol.regime == Regime::BelowJohn) sol.m_value = sol.ellipsoid.volume();
  if (!sol.converged) sol.warnings.push_back("max_iter reached before the gradient tolerance");
  if (sol.line_search_stalled && exact) sol.warnings.push_back("line search stalled");
  return sol;
}

std::vector<PositionSolution> multistart(const SymmetricBody& body, double r, const SolverOptions& opts, int starts,
                                         std::uint64_t seed) {
  std::vector<PositionSolution> runs;
  runs.push_back(solve(body, r, opts));
  const int n = body.dim();
  for (int k = 0; k < starts; ++k) {
    Engine rng = batch_engine(seed, Stream::Start, static_cast<std::uint64_t>(k));
    std::normal_distribution<double> g(0.0, 0.4);
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    SolverOptions o = opts;
    o.start = sym_expm(TracelessDirection::project(A).matrix());
    runs.push_back(solve(body, r, o));
  }
  return runs;
}

const PositionSolution& best_of(const std::vector<PositionSolution>& runs) {
  if (runs.empty()) throw std::invalid_argument("best_of: no runs");
  std::size_t best = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (runs[i].m_value > runs[best].m_value) best = i;
  return runs[best];
}

std::pair<double, double> planar_stretch_angle(const Mat& T) {
  Eigen::SelfAdjointEigenSolver<Mat> eig(T);
  const double s = std::sqrt(eig.eigenvalues()(1) / eig.eigenvalues()(0));
  const Vec v = eig.eigenvectors().col(1);
  double phi = std::atan2(v(1), v(0));
  if (phi < 0) phi += std::numbers::pi;
  if (phi >= std::numbers::pi) phi -= std::numbers::pi;
  return {s, phi};
}

GridOracleResult grid_oracle(const SymmetricBody& body, double r, const GridSpec& grid, const Method& method) {
  check_method(body, method);
  if (grid.s_count < 2 || grid.phi_count < 1 || !(grid.s_max > 1.0))
    throw std::invalid_argument("grid_oracle: grid needs s_count >= 2, phi_count >= 1, s_max > 1");
  GridOracleResult best;
  best.m_value = -1.0;
  const double log_max = std::log(grid.s_max);
  if (body.dim() == 2) {
    best.log_s_step = log_max / (grid.s_count - 1);
    best.phi_step = std::numbers::pi / grid.phi_count;
    for (int i = 0; i < grid.s_count; ++i) {
      const double s = std::exp(i * best.log_s_step);
      const int phis = i == 0 ? 1 : grid.phi_count;  // s = 1 is rotation invariant
      for (int j = 0; j < phis; ++j) {
        const double phi = j * best.phi_step;
        const Mat R = rotation2d(phi);
        Mat D = Mat::Zero(2, 2);
        D(0, 0) = s;
        D(1, 1) = 1.0 / s;
        const Ellipsoid e{R * D * R.transpose(), r};
        const double m = intersection_volume(body, e, method).value;
        if (m > best.m_value) {
          best.m_value = m;
          best.ellipsoid = e;
          best.s = s;
          best.phi = phi;
        }
      }
    }
    return best;
  }
  if (body.dim() == 3) {
    if (is_exact(method)) throw std::invalid_argument("grid_oracle: n = 3 needs monte-carlo");
    best.log_s_step = 2.0 * log_max / (grid.s_count - 1);
    for (int i = 0; i < grid.s_count; ++i) {
      for (int j = 0; j < grid.s_count; ++j) {
        const double s1 = std::exp(-log_max + i * best.log_s_step);
        const double s2 = std::exp(-log_max + j * best.log_s_step);
        Mat D = Mat::Zero(3, 3);
        D(0, 0) = s1;
        D(1, 1) = s2;
        D(2, 2) = 1.0 / (s1 * s2);
        const Ellipsoid e{D, r};
        const double m = intersection_volume(body, e, method).value;
        if (m > best.m_value) {
          best.m_value = m;
          best.ellipsoid = e;
          best.s = s1;
          best.s2 = s2;
        }
      }
    }
    return best;
  }
  throw std::invalid_argument("grid_oracle: only n = 2 or n = 3");
}

}  // namespace maxint
