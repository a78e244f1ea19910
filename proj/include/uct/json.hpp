#pragma once

// JSON helpers shared by reports and the command-line tool.

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace uct {

using Json = nlohmann::ordered_json;

/// A float rounded to 12 significant digits. Infinities become the strings
/// "+inf" and "-inf", NaN becomes null.
inline Json json_number(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

}  // namespace uct
