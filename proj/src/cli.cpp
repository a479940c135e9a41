#include "maxint/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "maxint/presets.hpp"

namespace maxint {

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
    out.push_back(x);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

namespace {

struct Resolved {
  Json body_json;
  std::string body_source;
  std::optional<SymmetricBody> body;
  Method method;
  Json config;
};

Json read_body_json(const std::string& arg, std::string& source) {
  std::size_t first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') {
    source = "inline";
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      throw std::invalid_argument(std::string("malformed body JSON: ") + e.what());
    }
  }
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open body file '" + arg + "'");
  source = "file:" + arg;
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed body JSON: ") + e.what());
  }
}

Resolved resolve(const RunConfig& cfg) {
  static const std::vector<std::string> commands = {"solve", "sweep", "landmarks", "limit", "bprobe", "isotropy"};
  if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
    throw std::invalid_argument("unknown command '" + cfg.command + "'");
  Resolved r;
  if (!cfg.preset.empty() && !cfg.body.empty()) throw std::invalid_argument("give either --preset or --body");
  if (!cfg.preset.empty()) {
    r.body_json = preset_json(cfg.preset);
    r.body_source = "preset:" + cfg.preset;
  } else if (!cfg.body.empty()) {
    r.body_json = read_body_json(cfg.body, r.body_source);
  } else {
    throw std::invalid_argument("a body is required (--preset or --body)");
  }
  r.body = body_from_json(r.body_json);
  const int n = r.body->dim();

  std::string mname = cfg.method;
  std::uint64_t seed = 0;
  if (mname == "auto") {
    mname = (n == 2 && planar::supports_exact(*r.body)) ? "exact-2d" : "mc";
    seed = cfg.seed.value_or(1);
  } else if (mname == "mc") {
    if (!cfg.seed) throw std::invalid_argument("--seed is required with --method mc");
    seed = *cfg.seed;
  } else if (mname != "exact-2d") {
    throw std::invalid_argument("unknown method '" + cfg.method + "' (expected exact-2d, mc or auto)");
  }
  if (mname == "exact-2d")
    r.method = Exact2D{};
  else
    r.method = MonteCarlo{cfg.mc_samples, seed};
  check_method(*r.body, r.method);

  if (!(cfg.grad_tol > 0.0)) throw std::invalid_argument("--grad-tol must be positive");
  if (cfg.max_iter < 0) throw std::invalid_argument("--max-iter must be non-negative");
  if (cfg.multistart < 0) throw std::invalid_argument("--multistart must be non-negative");
  if (!(cfg.cluster_window_deg > 0.0 && cfg.cluster_window_deg < 180.0))
    throw std::invalid_argument("--cluster-window must be in (0, 180) degrees");
  for (double x : cfg.radii)
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("radii must be positive");

  Json c;
  c["command"] = cfg.command;
  c["body_source"] = r.body_source;
  c["body"] = r.body_json;
  c["radii"] = cfg.radii;
  Json m;
  m["name"] = mname;
  if (mname == "mc") {
    m["samples"] = cfg.mc_samples;
    m["seed"] = seed;
  }
  c["method"] = m;
  c["solver"] = {{"grad_tol", cfg.grad_tol}, {"max_iter", cfg.max_iter}, {"multistart", cfg.multistart},
                 {"warm_start", cfg.warm_start}};
  if (cfg.command == "limit") {
    c["side"] = cfg.side;
    c["normalize"] = cfg.normalize;
    c["cluster_window_deg"] = cfg.cluster_window_deg;
  }
  if (cfg.command == "bprobe") {
    c["lambda"] = cfg.lambda;
    c["t_grid"] = {{"min", cfg.t_min}, {"max", cfg.t_max}, {"step", cfg.t_step}};
  }
  r.config = c;
  return r;
}

SolverOptions solver_options(const RunConfig& cfg, const Method& m) {
  SolverOptions o;
  o.grad_tol = cfg.grad_tol;
  o.max_iter = cfg.max_iter;
  o.method = m;
  return o;
}

class Artifacts {
 public:
  Artifacts(std::filesystem::path dir, Json header) : dir_(std::move(dir)), header_(std::move(header)) {
    std::filesystem::create_directories(dir_);
  }

  void json(const std::string& name, const Json& payload) const {
    Json j = header_;
    for (auto it = payload.begin(); it != payload.end(); ++it) j[it.key()] = it.value();
    std::ofstream os(dir_ / name, std::ios::binary);
    os << j.dump(2) << '\n';
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  }

  template <class Fn>
  void csv(const std::string& name, Fn&& fn) const {
    std::ofstream os(dir_ / name, std::ios::binary);
    os << "# " << header_["version"].get<std::string>() << " config=" << header_["config"].dump() << '\n';
    fn(os);
    if (!os) throw std::runtime_error("cannot write " + (dir_ / name).string());
  }

 private:
  std::filesystem::path dir_;
  Json header_;
};

double single_radius(const RunConfig& cfg, double fallback, bool has_fallback) {
  if (cfg.radii.empty()) {
    if (has_fallback) return fallback;
    throw std::invalid_argument("--r is required");
  }
  if (cfg.radii.size() != 1) throw std::invalid_argument("this command takes a single radius");
  return cfg.radii.front();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int cmd_solve(const RunConfig& cfg, const Resolved& res, const Artifacts& art, std::ostream& out) {
  const double r = single_radius(cfg, 0.0, false);
  const SolverOptions opts = solver_options(cfg, res.method);
  const auto runs = multistart(*res.body, r, opts, cfg.multistart, res.config["method"].value("seed", 1ull));
  const PositionSolution& best = best_of(runs);
  Json payload = to_json(best);
  if (runs.size() > 1) {
    Json all = Json::array();
    for (const auto& s : runs)
      all.push_back({{"m_value", s.m_value},
                     {"converged", s.converged},
                     {"isotropy_residual", s.isotropy_residual},
                     {"ellipsoid", to_json(s.ellipsoid)}});
    payload["multistart"] = all;
  }
  art.json("result.json", payload);
  art.csv("trace.csv", [&](std::ostream& os) { write_trace_csv(os, best.trace); });
  out << "solve r=" << format_number(r) << " m_value=" << format_number(best.m_value)
      << " isotropy_residual=" << format_number(best.isotropy_residual) << " regime=" << to_string(best.regime)
      << " converged=" << yes_no(best.converged) << " noise_limited=" << yes_no(best.noise_limited)
      << " tangency=" << yes_no(best.tangency_degeneracy) << '\n';
  return best.converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const RunConfig& cfg, const Resolved& res, const Artifacts& art, std::ostream& out) {
  if (cfg.radii.empty()) throw std::invalid_argument("--radii is required");
  SweepOptions so;
  so.solver = solver_options(cfg, res.method);
  so.warm_start = cfg.warm_start;
  const RadiusProfile prof = sweep(*res.body, cfg.radii, so);
  art.json("profile.json", to_json(prof));
  art.csv("profile.csv", [&](std::ostream& os) { write_profile_csv(os, prof); });
  out << "sweep points=" << prof.samples.size() << " r_J=" << format_number(prof.r_J)
      << " r_L=" << format_number(prof.r_L) << " violations=" << prof.violations.size()
      << " converged=" << yes_no(prof.all_converged()) << '\n';
  return prof.all_converged() && prof.violations.empty() ? kExitOk : kExitNotConverged;
}

int cmd_landmarks(const RunConfig&, const Resolved& res, const Artifacts& art, std::ostream& out) {
  const Landmarks lm = landmarks(*res.body, res.method);
  const MPositionCertificate cert = m_position_certificate(*res.body, res.method);
  Json payload = to_json(lm);
  payload["kappa_n"] = unit_ball_volume(res.body->dim());
  payload["m_position"] = to_json(cert);
  art.json("landmarks.json", payload);
  out << "landmarks r_J=" << format_number(lm.r_J) << " r_L=" << format_number(lm.r_L)
      << " r_M=" << format_number(lm.r_M) << " vol_K=" << format_number(lm.vol_K)
      << " rho=" << format_number(cert.rho) << " C=" << format_number(cert.C) << '\n';
  return kExitOk;
}

int cmd_limit(const RunConfig& cfg, const Resolved& res, const Artifacts& art, std::ostream& out) {
  if (cfg.radii.empty()) throw std::invalid_argument("--radii is required");
  const LimitSide side = limit_side_from_string(cfg.side);
  SymmetricBody body = *res.body;
  Json norm;
  if (cfg.normalize) {
    const NormalizedBody nb = normalize_position(body, side);
    body = nb.body;
    norm = {{"map", matrix_to_json(nb.map)}, {"radius", nb.radius}, {"note", nb.note}};
    out << "normalized to " << cfg.side << " position: " << nb.note << '\n';
  }
  LimitOptions lo;
  lo.solver = solver_options(cfg, res.method);
  lo.window = cfg.cluster_window_deg * std::numbers::pi / 180.0;
  lo.warm_start = cfg.warm_start;
  const LimitMeasureReport rep = limit_measure(body, side, cfg.radii, lo);
  Json payload = to_json(rep);
  if (cfg.normalize) payload["normalization"] = norm;
  art.json("limit.json", payload);
  art.csv("clusters.csv", [&](std::ostream& os) { write_clusters_csv(os, rep); });
  const LimitStep* f = rep.finest();
  if (!f) {
    out << "limit side=" << cfg.side << " all radii degenerate (measure empty or full)\n";
    return kExitNotConverged;
  }
  out << "limit side=" << cfg.side << " finest_r=" << format_number(f->r) << " clusters=" << f->clusters.size()
      << " masses=";
  if (f->clusters.size() <= 16) {
    for (std::size_t k = 0; k < f->clusters.size(); ++k) out << (k ? "," : "") << format_number(f->clusters[k].mass);
  } else {
    out << "see clusters.csv";
  }
  out << " isotropy_residual=" << format_number(f->moments.residual)
      << " support_distance=" << format_number(f->support_distance) << '\n';
  bool ok = true;
  for (const auto& s : rep.steps) ok = ok && s.converged;
  return ok ? kExitOk : kExitNotConverged;
}

int cmd_bprobe(const RunConfig& cfg, const Resolved& res, const Artifacts& art, std::ostream& out) {
  const int n = res.body->dim();
  std::vector<double> diag = cfg.lambda;
  if (diag.empty()) {
    if (n != 2) throw std::invalid_argument("--lambda is required for n != 2");
    diag = {1.0, -1.0};
  }
  if (static_cast<int>(diag.size()) != n) throw std::invalid_argument("--lambda needs n diagonal entries");
  Mat lambda = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) lambda(i, i) = diag[static_cast<std::size_t>(i)];
  const auto grid = uniform_grid(cfg.t_min, cfg.t_max, cfg.t_step);
  const BProbeReport rep = b_probe(*res.body, lambda, grid, res.method);
  art.json("bprobe.json", to_json(rep));
  art.csv("bprobe.csv", [&](std::ostream& os) { write_bprobe_csv(os, rep); });
  art.csv("midpoints.csv", [&](std::ostream& os) { write_midpoints_csv(os, rep); });
  out << "bprobe points=" << rep.t.size() << " max_second_diff=" << format_number(rep.max_second_diff)
      << " min_midpoint_residual=" << format_number(rep.min_midpoint_residual)
      << " counterexample=" << yes_no(rep.counterexample) << " inconclusive=" << yes_no(rep.inconclusive)
      << " truncated=" << yes_no(rep.truncated) << '\n';
  return kExitOk;
}

int cmd_isotropy(const RunConfig& cfg, const Resolved& res, const Artifacts& art, std::ostream& out) {
  const double r = single_radius(cfg, 1.0, true);
  const int n = res.body->dim();
  const GradientReport g = gradient(*res.body, Ellipsoid::ball(n, r), res.method);
  Json payload;
  payload["r"] = r;
  payload["grad_norm"] = g.norm();
  payload["gradient"] = matrix_to_json(g.G);
  payload["inside_moments"] = to_json(g.moments);
  payload["tangency_degeneracy"] = g.tangency_degeneracy;
  std::optional<RestrictedSphereMeasure> meas;
  try {
    meas = restricted_measure(*res.body, r, Side::Inside, res.method);
  } catch (const EmptyMeasureError&) {
  }
  double contact_residual = 0.0;
  if (meas) {
    payload["measure"] = to_json(*meas);
    if (!meas->contact_arcs.empty()) {
      const auto cm = moment_report(RestrictedSphereMeasure::from_arcs(meas->contact_arcs));
      contact_residual = cm.residual;
      payload["contact_moments"] = to_json(cm);
    }
    art.csv("measure.csv", [&](std::ostream& os) { write_measure_csv(os, *meas); });
  }
  art.json("isotropy.json", payload);
  out << "isotropy r=" << format_number(r) << " grad_norm=" << format_number(g.norm())
      << " inside_residual=" << format_number(g.moments.residual) << " tangency=" << yes_no(g.tangency_degeneracy);
  if (g.tangency_degeneracy) out << " contact_residual=" << format_number(contact_residual);
  out << '\n';
  return kExitOk;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resolved res;
  std::optional<Artifacts> art;
  try {
    res = resolve(cfg);
    art.emplace(cfg.out_dir, Json{{"version", version_string()}, {"config", res.config}});
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  try {
    if (cfg.command == "solve") return cmd_solve(cfg, res, *art, out);
    if (cfg.command == "sweep") return cmd_sweep(cfg, res, *art, out);
    if (cfg.command == "landmarks") return cmd_landmarks(cfg, res, *art, out);
    if (cfg.command == "limit") return cmd_limit(cfg, res, *art, out);
    if (cfg.command == "bprobe") return cmd_bprobe(cfg, res, *art, out);
    return cmd_isotropy(cfg, res, *art, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximal intersection positions of symmetric convex bodies"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);
  RunConfig cfg;
  std::string radii, lambda;
  double r = 0.0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset, "named body: square, cube3, crosspoly3, rect-2-1, remark14, disc");
    sub->add_option("--body", cfg.body, "body JSON (inline object or file path)");
    sub->add_option("--method", cfg.method, "exact-2d | mc | auto")->capture_default_str();
    sub->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count")->capture_default_str();
    sub->add_option("--seed", seed, "Monte Carlo seed (required with --method mc)");
    sub->add_option("--grad-tol", cfg.grad_tol, "gradient norm tolerance")->capture_default_str();
    sub->add_option("--max-iter", cfg.max_iter, "solver iteration cap")->capture_default_str();
    sub->add_option("--multistart", cfg.multistart, "extra seeded random starts")->capture_default_str();
    sub->add_option("--out-dir", cfg.out_dir, "artifact directory")->capture_default_str();
    sub->add_flag("!--no-warm-start", cfg.warm_start, "solve each radius from the identity");
  };
  auto add_r = [&](CLI::App* sub) { sub->add_option("--r", r, "radius"); };
  auto add_radii = [&](CLI::App* sub) { sub->add_option("--radii", radii, "comma-separated radii"); };

  auto* solve_cmd = app.add_subcommand("solve", "maximal intersection position at one radius");
  add_common(solve_cmd);
  add_r(solve_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "m(r) profile with monotonicity checks");
  add_common(sweep_cmd);
  add_radii(sweep_cmd);
  auto* lm_cmd = app.add_subcommand("landmarks", "John / Loewner ellipsoids, r_J, r_L, r_M and M-position ratio");
  add_common(lm_cmd);
  auto* limit_cmd = app.add_subcommand("limit", "limit measures as r approaches the John or Loewner radius");
  add_common(limit_cmd);
  add_radii(limit_cmd);
  limit_cmd->add_option("--side", cfg.side, "john | loewner")->capture_default_str();
  limit_cmd->add_option("--cluster-window", cfg.cluster_window_deg, "clustering window in degrees")
      ->capture_default_str();
  limit_cmd->add_flag("!--no-normalize", cfg.normalize, "body is already in John / Loewner position");
  auto* bprobe_cmd = app.add_subcommand("bprobe", "log-concavity probe of t -> Vol(e^{t Lambda} K ∩ B)");
  add_common(bprobe_cmd);
  bprobe_cmd->add_option("--lambda", lambda, "comma-separated traceless diagonal (default 1,-1)");
  bprobe_cmd->add_option("--t-min", cfg.t_min)->capture_default_str();
  bprobe_cmd->add_option("--t-max", cfg.t_max)->capture_default_str();
  bprobe_cmd->add_option("--t-step", cfg.t_step)->capture_default_str();
  auto* iso_cmd = app.add_subcommand("isotropy", "moments of the sphere measure for the body as given");
  add_common(iso_cmd);
  add_r(iso_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  CLI::App* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->get_option_no_throw("--r") && sub->count("--r")) cfg.radii = {r};
    if (sub->get_option_no_throw("--radii") && sub->count("--radii")) cfg.radii = parse_number_list(radii);
    if (sub->get_option_no_throw("--lambda") && sub->count("--lambda")) cfg.lambda = parse_number_list(lambda);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return run(cfg, out, err);
}

}  // namespace maxint
