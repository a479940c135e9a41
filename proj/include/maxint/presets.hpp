#pragma once

#include <string>
#include <vector>

#include "maxint/io.hpp"

namespace maxint {

/// square, cube3, crosspoly3, rect-2-1, remark14, disc.
std::vector<std::string> preset_names();
Json preset_json(const std::string& name);
SymmetricBody preset(const std::string& name);

}  // namespace maxint
