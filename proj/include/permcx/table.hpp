#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace permcx {

/// Rectangular text table with a named header, emitted as CSV or JSON.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;  // array of objects keyed by header
};

/// Shortest round-tripping decimal text; "nan" for NaN.
std::string format_number(double v);

}  // namespace permcx
