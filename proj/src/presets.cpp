#include "maxint/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace maxint {

std::vector<std::string> preset_names() { return {"square", "cube3", "crosspoly3", "rect-2-1", "remark14", "disc"}; }

Json preset_json(const std::string& name) {
  if (name == "square") return Json::parse(R"({"type":"polytope-h","n":2,"rows":[[1,0],[0,1]]})");
  if (name == "cube3") return Json::parse(R"({"type":"polytope-h","n":3,"rows":[[1,0,0],[0,1,0],[0,0,1]]})");
  if (name == "crosspoly3")
    return Json::parse(R"({"type":"polytope-v","n":3,"vertices":[[1,0,0],[0,1,0],[0,0,1]]})");
  // [-2, 2] x [-1, 1]
  if (name == "rect-2-1") return Json::parse(R"({"type":"polytope-h","n":2,"rows":[[0.5,0],[0,1]]})");
  if (name == "remark14") {
    Json j = Json::parse(R"({"type":"hull-ball-points","n":2,"rho":1})");
    j["apex"] = Json::array({std::sqrt(2.0), 0.0});
    return j;
  }
  if (name == "disc") return Json::parse(R"({"type":"lp-ball","n":2,"p":2,"rho":1})");
  throw std::invalid_argument("unknown preset '" + name + "'");
}

SymmetricBody preset(const std::string& name) { return body_from_json(preset_json(name)); }

}  // namespace maxint
