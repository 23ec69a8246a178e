#include "permcx/table.hpp"

#include <charconv>
#include <cmath>

namespace permcx {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string Table::to_csv() const {
  std::string out;
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row[i]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

nlohmann::json Table::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < header.size() && i < r.size(); ++i) {
      // numbers go out as numbers where the text parses fully
      double v = 0.0;
      auto [p, ec] = std::from_chars(r[i].data(), r[i].data() + r[i].size(), v);
      if (ec == std::errc() && p == r[i].data() + r[i].size() && std::isfinite(v)) {
        obj[header[i]] = v;
      } else {
        obj[header[i]] = r[i];
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

}  // namespace permcx
