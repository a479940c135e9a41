#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxint/cli.hpp"
#include "maxint/presets.hpp"

using namespace maxint;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("maxint_test_" + name);
  fs::remove_all(p);
  return p;
}

Json read_json(const fs::path& p) {
  std::ifstream in(p);
  return Json::parse(in);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_args(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::vector<const char*> argv = {"maxint"};
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

}  // namespace

TEST_CASE("number lists") {
  CHECK(parse_number_list("1.2,1.1, 1.05") == std::vector<double>{1.2, 1.1, 1.05});
  CHECK_THROWS(parse_number_list("1.2,x"));
  CHECK_THROWS(parse_number_list(""));
}

TEST_CASE("body JSON") {
  auto sq = body_from_json(Json::parse(R"({"type":"polytope-h","n":2,"rows":[[1,0],[0,1]]})"));
  CHECK(sq.kind() == BodyKind::PolytopeH);
  auto full = body_from_json(Json::parse(R"({"type":"polytope-v","points":[[1,1],[-1,-1],[1,-1],[-1,1]]})"));
  Vec x(2);
  x << 0.3, 0.2;
  CHECK(full.gauge(x) == doctest::Approx(sq.gauge(x)));
  CHECK_THROWS(body_from_json(Json::parse(R"({"type":"polytope-v","points":[[1,1],[-1,-1],[1,-1]]})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"type":"polytope-h","n":3,"rows":[[1,0],[0,1]]})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"type":"polytope-h","rows":[[1,0],[0]]})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"type":"triangle"})")));
  CHECK_THROWS(body_from_json(Json::parse(R"({"type":"lp-ball","n":2,"p":"two"})")));
  auto linf = body_from_json(Json::parse(R"({"type":"lp-ball","n":3,"p":"inf","rho":2})"));
  Vec y(3);
  y << 1, -3, 2;
  CHECK(linf.gauge(y) == doctest::Approx(1.5));
  auto t = body_from_json(Json::parse(R"({"type":"lp-ball","n":2,"p":3,"transform":[[2,0],[0,1]]})"));
  auto round = body_from_json(body_to_json(t));
  CHECK(round.gauge(x) == doctest::Approx(t.gauge(x)));
  for (const auto& name : preset_names()) {
    auto b = preset(name);
    auto again = body_from_json(body_to_json(b));
    Vec u = Vec::Ones(b.dim()) * 0.3;
    CHECK(again.gauge(u) == doctest::Approx(b.gauge(u)));
  }
  CHECK_THROWS(preset("pentagon"));
}

TEST_CASE("solve command") {
  auto dir = scratch("solve");
  std::string text;
  CHECK(run_args({"solve", "--preset", "square", "--r", "1.2", "--method", "exact-2d", "--out-dir", dir.string()},
                 &text) == kExitOk);
  auto j = read_json(dir / "result.json");
  const double r = 1.2;
  CHECK(j["m_value"].get<double>() ==
        doctest::Approx(r * r * (M_PI - 4 * std::acos(1 / r)) + 4 * std::sqrt(r * r - 1)));
  CHECK(j["isotropy_residual"].get<double>() <= 1e-6);
  CHECK(j["regime"] == "interior");
  CHECK(j["ellipsoid"]["r"].get<double>() == doctest::Approx(1.2));
  CHECK(j.contains("trace"));
  CHECK(j["version"].get<std::string>().find("maxint") == 0);
  CHECK(j["config"]["body"]["type"] == "polytope-h");
  CHECK(fs::exists(dir / "trace.csv"));
  CHECK(text.find("m_value=") != std::string::npos);
}

TEST_CASE("input errors exit 1") {
  auto dir = scratch("errors");
  CHECK(run_args({"solve", "--preset", "cube3", "--r", "1.2", "--method", "exact-2d", "--out-dir", dir.string()}) ==
        kExitInputError);
  CHECK(run_args({"solve", "--preset", "cube3", "--r", "1.2", "--method", "mc", "--out-dir", dir.string()}) ==
        kExitInputError);
  CHECK(run_args({"solve", "--body", "{\"type\": ", "--r", "1.2", "--out-dir", dir.string()}) == kExitInputError);
  CHECK(run_args({"solve", "--preset", "nonsense", "--r", "1.2", "--out-dir", dir.string()}) == kExitInputError);
  CHECK(run_args({"solve", "--preset", "square", "--out-dir", dir.string()}) == kExitInputError);
  CHECK(run_args({"frobnicate"}) == kExitInputError);
}

TEST_CASE("non-convergence exits 2") {
  auto dir = scratch("noconv");
  CHECK(run_args({"solve", "--preset", "rect-2-1", "--r", "1.6", "--max-iter", "0", "--out-dir", dir.string()}) ==
        kExitNotConverged);
}

TEST_CASE("landmarks command") {
  auto dir = scratch("landmarks");
  CHECK(run_args({"landmarks", "--preset", "cube3", "--out-dir", dir.string()}) == kExitOk);
  auto j = read_json(dir / "landmarks.json");
  CHECK(j["r_J"].get<double>() == doctest::Approx(1.0));
  CHECK(j["r_L"].get<double>() == doctest::Approx(std::sqrt(3.0)));
  CHECK(j["r_M"].get<double>() == doctest::Approx(std::cbrt(8 / (4 * M_PI / 3))));
  CHECK(j["vol_K"].get<double>() == doctest::Approx(8.0));
  CHECK(j.contains("john"));
  CHECK(j.contains("loewner"));
}

TEST_CASE("limit command") {
  auto dir = scratch("limit");
  std::string text;
  CHECK(run_args({"limit", "--preset", "square", "--side", "john", "--radii", "1.2,1.1,1.05,1.02", "--out-dir",
                  dir.string()},
                 &text) == kExitOk);
  auto j = read_json(dir / "limit.json");
  auto last = j["steps"].back();
  REQUIRE(last["clusters"].size() == 4);
  for (const auto& c : last["clusters"]) CHECK(c["mass"].get<double>() == doctest::Approx(0.25));
  CHECK(fs::exists(dir / "clusters.csv"));
  CHECK(text.find("normalized") != std::string::npos);
  CHECK(run_args({"limit", "--preset", "disc", "--side", "john", "--radii", "1.1", "--out-dir", dir.string()}) ==
        kExitNotConverged);
}

TEST_CASE("sweep, bprobe and isotropy commands") {
  auto dir = scratch("misc");
  CHECK(run_args({"sweep", "--preset", "square", "--radii", "0.5,1.2,2", "--out-dir", dir.string()}) == kExitOk);
  CHECK(read_json(dir / "profile.json")["samples"].size() == 3);
  CHECK(run_args({"bprobe", "--preset", "square", "--out-dir", dir.string()}) == kExitOk);
  CHECK(read_json(dir / "bprobe.json")["t"].size() == 25);
  std::string text;
  CHECK(run_args({"isotropy", "--preset", "remark14", "--r", "1", "--out-dir", dir.string()}, &text) == kExitOk);
  auto iso = read_json(dir / "isotropy.json");
  CHECK(iso["tangency_degeneracy"] == true);
  CHECK(iso["contact_moments"]["M"][0][0].get<double>() == doctest::Approx(M_PI / 2 - 1));
  CHECK(iso["contact_moments"]["residual"].get<double>() > 0.1);
}

TEST_CASE("identical seeds give byte-identical artifacts") {
  auto a = scratch("repro_a"), b = scratch("repro_b");
  for (const auto& d : {a, b})
    CHECK(run_args({"solve", "--preset", "cube3", "--r", "1.2", "--method", "mc", "--seed", "7", "--mc-samples",
                    "20000", "--max-iter", "5", "--out-dir", d.string()}) != kExitInputError);
  CHECK(slurp(a / "result.json") == slurp(b / "result.json"));
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  CHECK(!slurp(a / "result.json").empty());
}
