#include "maxint/measure.hpp"

#include <cmath>
#include <numbers>

#include "maxint/sampling.hpp"

namespace maxint {

namespace {

constexpr std::size_t kMinSamples = 100;

struct MomentPartial {
  Mat sum_xx;
  Mat sum_dev_sq;
  std::size_t hits = 0;
};

}  // namespace

std::string method_name(const Method& m) { return std::holds_alternative<Exact2D>(m) ? "exact-2d" : "monte-carlo"; }

bool is_exact(const Method& m) { return std::holds_alternative<Exact2D>(m); }

void check_method(const SymmetricBody& body, const Method& m) {
  if (is_exact(m)) {
    if (body.dim() != 2) throw std::invalid_argument("exact-2d requires a planar body (n = 2)");
    if (!planar::supports_exact(body))
      throw std::invalid_argument("exact-2d is not available for this body (lp-ball needs p in {1, 2, inf})");
  } else if (std::get<MonteCarlo>(m).samples < kMinSamples) {
    throw std::invalid_argument("monte-carlo needs at least 100 samples");
  }
}

std::string to_string(Side side) { return side == Side::Inside ? "inside" : "outside"; }

VolumeEstimate intersection_volume(const SymmetricBody& body, const Ellipsoid& e, const Method& method) {
  if (body.dim() != e.dim()) throw std::invalid_argument("intersection_volume: dimension mismatch");
  check_method(body, method);
  if (is_exact(method)) {
    const Eigen::Matrix2d Tinv = Eigen::Matrix2d(e.T).inverse();
    return {planar::area_within(planar::radial_boundary(body, Tinv), e.r), 0.0};
  }
  const auto& mc = std::get<MonteCarlo>(method);
  const int n = e.dim();
  const Mat rT = e.r * e.T;
  const auto hits = run_batches<std::size_t>(mc.samples, [&](std::uint64_t b, std::size_t count) {
    Engine rng = batch_engine(mc.seed, Stream::Volume, b);
    std::size_t h = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (body.gauge(rT * sample_ball(rng, n)) <= 1.0) ++h;
    return h;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double N = static_cast<double>(mc.samples);
  const double p = total / N;
  const double vol = e.volume();
  return {vol * p, vol * std::sqrt(p * (1.0 - p) / N)};
}

VolumeEstimate body_volume(const SymmetricBody& body, const Method& method) {
  const int n = body.dim();
  if (body.is_polytope()) return {polytope_volume(body.polytope()), 0.0};
  const double det = body.transform() ? std::abs(body.transform()->determinant()) : 1.0;
  if (const auto* l = std::get_if<LpBallRep>(&body.shape())) {
    // Vol(B_p^n) = (2 Gamma(1 + 1/p))^n / Gamma(1 + n/p).
    const double inv_p = std::isinf(l->p) ? 0.0 : 1.0 / l->p;
    const double unit = std::pow(2.0 * std::tgamma(1.0 + inv_p), n) / std::tgamma(1.0 + n * inv_p);
    return {unit * std::pow(l->rho, n) * det, 0.0};
  }
  if (planar::supports_exact(body)) return {planar::area(planar::radial_boundary(body)), 0.0};
  if (is_exact(method)) throw std::invalid_argument("body_volume: no exact volume for this body");
  const auto& mc = std::get<MonteCarlo>(method);
  Vec half(n);
  for (int i = 0; i < n; ++i) half(i) = body.support(Vec::Unit(n, i));
  const auto hits = run_batches<std::size_t>(mc.samples, [&](std::uint64_t b, std::size_t count) {
    Engine rng = batch_engine(mc.seed, Stream::BodyVolume, b);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t h = 0;
    Vec x(n);
    for (std::size_t i = 0; i < count; ++i) {
      for (int j = 0; j < n; ++j) x(j) = half(j) * u(rng);
      if (body.gauge(x) <= 1.0) ++h;
    }
    return h;
  });
  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double N = static_cast<double>(mc.samples);
  const double p = total / N;
  const double box = std::pow(2.0, n) * half.prod();
  return {box * p, box * std::sqrt(p * (1.0 - p) / N)};
}

double RestrictedSphereMeasure::mass() const {
  if (exact()) return planar::total_length(arcs);
  return unit_sphere_area(dim) * static_cast<double>(included_count()) / static_cast<double>(samples.rows());
}

std::size_t RestrictedSphereMeasure::included_count() const {
  std::size_t c = 0;
  for (char f : included) c += f ? 1 : 0;
  return c;
}

RestrictedSphereMeasure RestrictedSphereMeasure::from_arcs(std::vector<planar::Arc> arcs) {
  RestrictedSphereMeasure m;
  m.dim = 2;
  m.arcs = planar::normalize_arcs(std::move(arcs));
  if (m.arcs.empty()) throw EmptyMeasureError("restricted measure: no arcs");
  return m;
}

RestrictedSphereMeasure restricted_measure(const SymmetricBody& body, double r, Side side, const Method& method) {
  if (!(r > 0.0)) throw std::invalid_argument("restricted_measure: radius must be positive");
  check_method(body, method);
  RestrictedSphereMeasure m;
  m.dim = body.dim();
  m.side = side;
  m.radius = r;
  if (is_exact(method)) {
    const planar::ArcSet set = planar::inside_arcs(planar::radial_boundary(body), r);
    m.arcs = side == Side::Inside ? set.arcs : planar::complement_arcs(set.arcs);
    m.contact_arcs = set.contact;
    if (m.arcs.empty())
      throw EmptyMeasureError("restricted measure: the " + to_string(side) + " region of r S^1 is empty");
    return m;
  }
  const auto& mc = std::get<MonteCarlo>(method);
  const int n = body.dim();
  m.mc = mc;
  m.samples.resize(static_cast<Eigen::Index>(mc.samples), n);
  m.included.assign(mc.samples, 0);
  run_batches<int>(mc.samples, [&](std::uint64_t b, std::size_t count) {
    Engine rng = batch_engine(mc.seed, Stream::Sphere, b);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t idx = b * kBatchSize + i;
      const Vec x = sample_sphere(rng, n);
      m.samples.row(static_cast<Eigen::Index>(idx)) = x.transpose();
      const bool in = body.gauge(r * x) <= 1.0;
      m.included[idx] = (side == Side::Inside) == in ? 1 : 0;
    }
    return 0;
  });
  if (m.included_count() == 0)
    throw EmptyMeasureError("restricted measure: no samples fell in the " + to_string(side) + " region");
  return m;
}

MomentReport moment_report(const RestrictedSphereMeasure& m) {
  MomentReport rep;
  const int n = m.dim;
  if (m.exact()) {
    rep.M = planar::arc_moments(m.arcs);
    rep.mass = planar::total_length(m.arcs);
    rep.method = "exact-2d";
  } else {
    const double sigma = unit_sphere_area(n);
    const double N = static_cast<double>(m.samples.rows());
    Mat sum_xx = Mat::Zero(n, n), sum_dev_sq = Mat::Zero(n, n);
    std::size_t hits = 0;
    const Mat I_n = Mat::Identity(n, n) / n;
    for (Eigen::Index i = 0; i < m.samples.rows(); ++i) {
      if (!m.included[static_cast<std::size_t>(i)]) continue;
      const Vec x = m.samples.row(i).transpose();
      const Mat xx = x * x.transpose();
      sum_xx += xx;
      sum_dev_sq += (xx - I_n).cwiseAbs2();
      ++hits;
    }
    rep.M = sigma * sum_xx / N;
    rep.mass = sigma * hits / N;
    const Mat mean_dev = (sum_xx - hits * I_n) / N;
    const Mat var = (sum_dev_sq / N - mean_dev.cwiseAbs2()).cwiseMax(0.0);
    rep.traceless_std_error = sigma * std::sqrt(var.sum() / N);
    const double p = hits / N;
    rep.mass_std_error = sigma * std::sqrt(p * (1 - p) / N);
    rep.method = "monte-carlo";
    rep.samples = static_cast<std::size_t>(N);
    rep.seed = m.mc->seed;
  }
  if (!(rep.mass > 0.0)) throw EmptyMeasureError("moment_report: measure has zero mass");
  rep.residual = (rep.M / rep.mass - Mat::Identity(n, n) / n).norm();
  return rep;
}

MomentReport sphere_moments_mc(int n, const std::function<bool(const Vec&)>& in_region, const MonteCarlo& mc) {
  if (mc.samples < kMinSamples) throw std::invalid_argument("monte-carlo needs at least 100 samples");
  const Mat I_n = Mat::Identity(n, n) / n;
  const auto parts = run_batches<MomentPartial>(mc.samples, [&](std::uint64_t b, std::size_t count) {
    Engine rng = batch_engine(mc.seed, Stream::Sphere, b);
    MomentPartial p{Mat::Zero(n, n), Mat::Zero(n, n), 0};
    for (std::size_t i = 0; i < count; ++i) {
      const Vec x = sample_sphere(rng, n);
      if (!in_region(x)) continue;
      const Mat xx = x * x.transpose();
      p.sum_xx += xx;
      p.sum_dev_sq += (xx - I_n).cwiseAbs2();
      ++p.hits;
    }
    return p;
  });
  Mat sum_xx = Mat::Zero(n, n), sum_dev_sq = Mat::Zero(n, n);
  std::size_t hits = 0;
  for (const auto& p : parts) {
    sum_xx += p.sum_xx;
    sum_dev_sq += p.sum_dev_sq;
    hits += p.hits;
  }
  const double sigma = unit_sphere_area(n);
  const double N = static_cast<double>(mc.samples);
  MomentReport rep;
  rep.M = sigma * sum_xx / N;
  rep.mass = sigma * hits / N;
  const Mat mean_dev = (sum_xx - hits * I_n) / N;
  const Mat var = (sum_dev_sq / N - mean_dev.cwiseAbs2()).cwiseMax(0.0);
  rep.traceless_std_error = sigma * std::sqrt(var.sum() / N);
  const double p = hits / N;
  rep.mass_std_error = sigma * std::sqrt(p * (1 - p) / N);
  rep.method = "monte-carlo";
  rep.samples = mc.samples;
  rep.seed = mc.seed;
  rep.residual = rep.mass > 0.0 ? (rep.M / rep.mass - Mat::Identity(n, n) / n).norm() : 0.0;
  return rep;
}

}  // namespace maxint
