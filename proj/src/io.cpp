#include "maxint/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "maxint/polytope.hpp"

#ifndef MAXINT_VERSION
#define MAXINT_VERSION "0.0.0"
#endif

namespace maxint {

std::string version_string() { return std::string("maxint ") + MAXINT_VERSION; }

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(row);
  }
  return out;
}

Json vector_to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Mat matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw std::invalid_argument("expected rows as non-empty arrays");
  Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw std::invalid_argument("rows have inconsistent lengths");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number()) throw std::invalid_argument("matrix entries must be numbers");
      const double x = j[i][k].get<double>();
      if (!std::isfinite(x)) throw std::invalid_argument("matrix entries must be finite");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = x;
    }
  }
  return m;
}

namespace {

Vec vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty numeric array");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw std::invalid_argument("vector entries must be numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    if (!std::isfinite(v(static_cast<Eigen::Index>(i)))) throw std::invalid_argument("vector entries must be finite");
  }
  return v;
}

// Full ± lists must be closed under negation; returns one row per pair.
Mat symmetric_representatives(const Mat& full, const char* what) {
  for (Eigen::Index i = 0; i < full.rows(); ++i) {
    bool found = false;
    for (Eigen::Index k = 0; k < full.rows() && !found; ++k)
      found = (full.row(i) + full.row(k)).norm() <= 1e-12 * (1.0 + full.row(i).norm());
    if (!found) throw std::invalid_argument(std::string(what) + ": input is not centrally symmetric");
  }
  return canonical_sign_rows(full);
}

double exponent_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return INFINITY;
    throw std::invalid_argument("p must be a number or \"inf\"");
  }
  if (!j.is_number()) throw std::invalid_argument("p must be a number or \"inf\"");
  return j.get<double>();
}

int dim_field(const Json& j) {
  if (!j.contains("n")) return 0;
  if (!j["n"].is_number_integer()) throw std::invalid_argument("n must be an integer");
  const int n = j["n"].get<int>();
  if (n < 1) throw std::invalid_argument("n must be positive");
  return n;
}

void check_dim(int declared, int actual) {
  if (declared != 0 && declared != actual)
    throw std::invalid_argument("declared n = " + std::to_string(declared) + " does not match the data (" +
                                std::to_string(actual) + ")");
}

}  // namespace

SymmetricBody body_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("body: expected a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw std::invalid_argument("body: missing \"type\"");
  const auto type = j["type"].get<std::string>();
  const int n = dim_field(j);
  auto polytope_data = [&](const char* reps, const char* full) {
    if (j.contains(reps) && j.contains(full))
      throw std::invalid_argument(std::string("body: give either \"") + reps + "\" or \"" + full + "\"");
    if (j.contains(reps)) return matrix_from_json(j[reps]);
    if (j.contains(full)) return symmetric_representatives(matrix_from_json(j[full]), full);
    throw std::invalid_argument(std::string("body: missing \"") + reps + "\"");
  };

  std::optional<SymmetricBody> body;
  if (type == "polytope-h") {
    const Mat rows = polytope_data("rows", "halfspaces");
    check_dim(n, static_cast<int>(rows.cols()));
    body = SymmetricBody::polytope_h(rows);
  } else if (type == "polytope-v") {
    const Mat verts = polytope_data("vertices", "points");
    check_dim(n, static_cast<int>(verts.cols()));
    body = SymmetricBody::polytope_v(verts);
  } else if (type == "lp-ball") {
    if (n == 0) throw std::invalid_argument("body: lp-ball needs \"n\"");
    if (!j.contains("p")) throw std::invalid_argument("body: lp-ball needs \"p\"");
    const double rho = j.contains("rho") ? j["rho"].get<double>() : 1.0;
    body = SymmetricBody::lp_ball(n, exponent_from_json(j["p"]), rho);
  } else if (type == "hull-ball-points") {
    if (!j.contains("apex")) throw std::invalid_argument("body: hull-ball-points needs \"apex\"");
    const Vec apex = vector_from_json(j["apex"]);
    check_dim(n, static_cast<int>(apex.size()));
    const double rho = j.contains("rho") ? j["rho"].get<double>() : 1.0;
    body = SymmetricBody::hull_ball_points(rho, apex);
  } else {
    throw std::invalid_argument("body: unknown type \"" + type + "\"");
  }
  if (j.contains("transform")) {
    const Mat T = matrix_from_json(j["transform"]);
    if (T.rows() != body->dim() || T.cols() != body->dim())
      throw std::invalid_argument("body: transform has the wrong size");
    if (!(std::abs(T.determinant()) > 1e-12)) throw std::invalid_argument("body: transform is singular");
    body = body->linear_image(T);
  }
  return *body;
}

Json body_to_json(const SymmetricBody& body) {
  Json j;
  j["type"] = to_string(body.kind());
  j["n"] = body.dim();
  switch (body.kind()) {
    case BodyKind::PolytopeH:
      j["rows"] = matrix_to_json(body.polytope().facets);
      return j;
    case BodyKind::PolytopeV:
      j["vertices"] = matrix_to_json(body.polytope().vertices);
      return j;
    case BodyKind::LpBall: {
      const auto& l = std::get<LpBallRep>(body.shape());
      if (std::isinf(l.p))
        j["p"] = "inf";
      else
        j["p"] = l.p;
      j["rho"] = l.rho;
      break;
    }
    case BodyKind::HullBallPoints: {
      const auto& hb = std::get<HullBallPointsRep>(body.shape());
      j["rho"] = hb.rho;
      j["apex"] = vector_to_json(hb.apex);
      break;
    }
  }
  if (body.transform()) j["transform"] = matrix_to_json(*body.transform());
  return j;
}

Json to_json(const Ellipsoid& e) { return Json{{"T", matrix_to_json(e.T)}, {"r", e.r}}; }

Ellipsoid ellipsoid_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("T") || !j.contains("r")) throw std::invalid_argument("ellipsoid: need T and r");
  return Ellipsoid::from_transform(matrix_from_json(j["T"]), j["r"].get<double>());
}

Json to_json(const MomentReport& m) {
  Json j;
  j["M"] = matrix_to_json(m.M);
  j["mass"] = m.mass;
  j["residual"] = m.residual;
  j["method"] = m.method;
  if (m.samples) {
    j["samples"] = m.samples;
    j["seed"] = m.seed;
    j["traceless_std_error"] = m.traceless_std_error;
    j["mass_std_error"] = m.mass_std_error;
  }
  return j;
}

Json to_json(const PositionSolution& s) {
  Json j;
  j["ellipsoid"] = to_json(s.ellipsoid);
  j["m_value"] = s.m_value;
  if (s.m_std_error > 0) j["m_std_error"] = s.m_std_error;
  j["grad_norm"] = s.grad_norm;
  if (s.grad_std_error > 0) j["grad_std_error"] = s.grad_std_error;
  j["isotropy_residual"] = s.isotropy_residual;
  j["regime"] = to_string(s.regime);
  j["iterations"] = s.iterations;
  j["converged"] = s.converged;
  j["noise_limited"] = s.noise_limited;
  j["line_search_stalled"] = s.line_search_stalled;
  j["at_endpoint"] = s.at_endpoint;
  j["tangency_degeneracy"] = s.tangency_degeneracy;
  j["moments"] = to_json(s.moments);
  j["warnings"] = s.warnings;
  Json trace = Json::array();
  for (const auto& t : s.trace)
    trace.push_back({{"iteration", t.iteration}, {"m_value", t.m_value}, {"grad_norm", t.grad_norm}, {"step", t.step}});
  j["trace"] = trace;
  return j;
}

Json to_json(const Landmarks& lm) {
  Json j;
  j["john"] = to_json(lm.john);
  j["loewner"] = to_json(lm.loewner);
  j["r_J"] = lm.r_J;
  j["r_L"] = lm.r_L;
  j["r_M"] = lm.r_M;
  j["vol_K"] = lm.vol_K;
  if (lm.vol_K_std_error > 0) j["vol_K_std_error"] = lm.vol_K_std_error;
  return j;
}

Json to_json(const MPositionCertificate& c) {
  Json j;
  j["r_M"] = c.r_M;
  j["vol_K"] = c.vol_K;
  j["intersection"] = c.intersection;
  j["rho"] = c.rho;
  j["rho_std_error"] = c.rho_std_error;
  j["C"] = c.C;
  return j;
}

Json to_json(const RadiusProfile& p) {
  Json j;
  j["r_J"] = p.r_J;
  j["r_L"] = p.r_L;
  j["r_M"] = p.r_M;
  j["kappa_n"] = p.kappa_n;
  j["vol_K"] = p.vol_K;
  j["method"] = p.method;
  Json samples = Json::array();
  for (const auto& s : p.samples) {
    Json e;
    e["r"] = s.r;
    e["m_value"] = s.m_value;
    if (s.m_std_error > 0) e["m_std_error"] = s.m_std_error;
    e["grad_norm"] = s.grad_norm;
    e["regime"] = to_string(s.regime);
    e["converged"] = s.converged;
    e["noise_limited"] = s.noise_limited;
    e["iterations"] = s.iterations;
    e["T"] = matrix_to_json(s.T);
    samples.push_back(e);
  }
  j["samples"] = samples;
  Json v = Json::array();
  for (const auto& x : p.violations) v.push_back({{"law", x.law}, {"r_a", x.r_a}, {"r_b", x.r_b}, {"excess", x.excess}});
  j["violations"] = v;
  return j;
}

namespace {

Json arcs_to_json(const std::vector<planar::Arc>& arcs) {
  Json out = Json::array();
  for (const auto& a : arcs) out.push_back(Json::array({a.begin, a.end}));
  return out;
}

}  // namespace

Json to_json(const LimitMeasureReport& r) {
  Json j;
  j["side"] = to_string(r.side);
  j["cluster_window_rad"] = r.window;
  Json contacts = Json::array();
  for (const auto& c : r.contacts) contacts.push_back(vector_to_json(c));
  j["contacts"] = contacts;
  j["contacts_exact"] = r.contacts_exact;
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    Json e;
    e["r"] = s.r;
    e["T"] = matrix_to_json(s.T);
    e["regime"] = to_string(s.regime);
    e["converged"] = s.converged;
    e["degenerate"] = s.degenerate;
    if (!s.note.empty()) e["note"] = s.note;
    if (!s.degenerate) {
      e["moments"] = to_json(s.moments);
      if (!s.arcs.empty()) e["arcs"] = arcs_to_json(s.arcs);
      Json cl = Json::array();
      for (const auto& c : s.clusters) cl.push_back({{"direction", vector_to_json(c.direction)}, {"mass", c.mass}});
      e["clusters"] = cl;
      e["support_distance"] = s.support_distance;
    }
    steps.push_back(e);
  }
  j["steps"] = steps;
  if (const auto* f = r.finest()) {
    j["finest_r"] = f->r;
    j["finest_isotropy_residual"] = f->moments.residual;
    j["finest_support_distance"] = f->support_distance;
  }
  j["residual_monotone"] = r.residual_monotone;
  j["support_monotone"] = r.support_monotone;
  return j;
}

Json to_json(const BProbeReport& r) {
  Json j;
  j["lambda"] = matrix_to_json(r.lambda);
  j["method"] = r.method;
  j["t"] = r.t;
  j["phi"] = r.phi;
  if (r.method != "exact-2d") j["phi_std_error"] = r.phi_std_error;
  j["second_diff"] = r.second_diff;
  j["max_second_diff"] = r.max_second_diff;
  Json mids = Json::array();
  for (const auto& m : r.midpoints) mids.push_back({{"s", m.s}, {"t", m.t}, {"residual", m.value}});
  j["midpoint_residuals"] = mids;
  j["min_midpoint_residual"] = r.min_midpoint_residual;
  j["truncated"] = r.truncated;
  j["counterexample"] = r.counterexample;
  j["inconclusive"] = r.inconclusive;
  return j;
}

Json to_json(const RestrictedSphereMeasure& m) {
  Json j;
  j["dim"] = m.dim;
  j["side"] = to_string(m.side);
  j["radius"] = m.radius;
  j["mass"] = m.mass();
  if (m.exact()) {
    j["arcs"] = arcs_to_json(m.arcs);
    j["contact_arcs"] = arcs_to_json(m.contact_arcs);
  } else {
    j["samples"] = m.samples.rows();
    j["included"] = m.included_count();
    j["seed"] = m.mc->seed;
  }
  return j;
}

void write_trace_csv(std::ostream& os, const std::vector<TraceEntry>& trace) {
  os << "iteration,m_value,grad_norm,step\n";
  for (const auto& t : trace)
    os << t.iteration << ',' << format_number(t.m_value) << ',' << format_number(t.grad_norm) << ','
       << format_number(t.step) << '\n';
}

void write_profile_csv(std::ostream& os, const RadiusProfile& p) {
  os << "r,m,m_std_error,grad_norm,regime,converged\n";
  for (const auto& s : p.samples)
    os << format_number(s.r) << ',' << format_number(s.m_value) << ',' << format_number(s.m_std_error) << ','
       << format_number(s.grad_norm) << ',' << to_string(s.regime) << ',' << (s.converged ? 1 : 0) << '\n';
}

void write_clusters_csv(std::ostream& os, const LimitMeasureReport& r) {
  os << "r,cluster,angle_deg,mass";
  const int n = r.contacts.empty() ? 0 : static_cast<int>(r.contacts.front().size());
  int dim = n;
  for (const auto& s : r.steps)
    if (!s.clusters.empty()) dim = static_cast<int>(s.clusters.front().direction.size());
  for (int i = 0; i < dim; ++i) os << ",u" << i + 1;
  os << '\n';
  for (const auto& s : r.steps) {
    for (std::size_t k = 0; k < s.clusters.size(); ++k) {
      const auto& c = s.clusters[k];
      const double ang = std::atan2(c.direction(1), c.direction(0)) * 180.0 / 3.14159265358979323846;
      os << format_number(s.r) << ',' << k << ',' << format_number(ang) << ',' << format_number(c.mass);
      for (Eigen::Index i = 0; i < c.direction.size(); ++i) os << ',' << format_number(c.direction(i));
      os << '\n';
    }
  }
}

void write_bprobe_csv(std::ostream& os, const BProbeReport& r) {
  os << "t,phi,phi_std_error,log_phi,second_diff\n";
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    os << format_number(r.t[i]) << ',' << format_number(r.phi[i]) << ',' << format_number(r.phi_std_error[i]) << ','
       << format_number(std::log(r.phi[i])) << ',';
    if (i > 0 && i + 1 < r.t.size()) os << format_number(r.second_diff[i - 1]);
    os << '\n';
  }
}

void write_midpoints_csv(std::ostream& os, const BProbeReport& r) {
  os << "s,t,residual,std_error\n";
  for (const auto& m : r.midpoints)
    os << format_number(m.s) << ',' << format_number(m.t) << ',' << format_number(m.value) << ','
       << format_number(m.std_error) << '\n';
}

void write_measure_csv(std::ostream& os, const RestrictedSphereMeasure& m) {
  if (m.exact()) {
    os << "kind,begin,end,length\n";
    for (const auto& a : m.arcs)
      os << "measure," << format_number(a.begin) << ',' << format_number(a.end) << ',' << format_number(a.length())
         << '\n';
    for (const auto& a : m.contact_arcs)
      os << "contact," << format_number(a.begin) << ',' << format_number(a.end) << ',' << format_number(a.length())
         << '\n';
    return;
  }
  for (int i = 0; i < m.dim; ++i) os << 'x' << i + 1 << ',';
  os << "included\n";
  for (Eigen::Index i = 0; i < m.samples.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.samples.cols(); ++k) os << format_number(m.samples(i, k)) << ',';
    os << (m.included[static_cast<std::size_t>(i)] ? 1 : 0) << '\n';
  }
}

}  // namespace maxint
