#pragma once

// Command layer behind the permcx executable. A RunConfig fully determines a
// run; it round-trips through JSON so any output can be regenerated.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permcx/processes.hpp"

namespace permcx {

enum class Command { kGenerate, kCensus, kEntropy, kDecay, kExperiment, kXp };

const char* to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::kGenerate;
  std::string experiment;  // fig1..fig4, table1, table2

  std::vector<std::string> inputs;
  std::string output;  // empty: stdout
  std::string format = "csv";

  // Generator; `process` empty means the series come from `inputs`.
  std::string process;
  std::size_t length = 0;
  std::uint64_t seed = 1;
  double hurst = 0.5;
  double amplitude = 0.0;
  int period = 2;
  double x0 = 0.2002;
  double sigma = 2.0;
  double delta = 1.0;

  std::vector<int> orders;
  std::vector<double> alphas;
  std::string cls = "fac";
  std::optional<int> realizations;
  unsigned jobs = 1;
  std::optional<std::size_t> t_max;
  std::string model = "exp";

  /// Throws kInvalidArgument on inconsistent settings.
  void validate() const;
  /// Generator spec for realization `index` (seed + index).
  ProcessSpec process_spec(std::size_t length, std::size_t index) const;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// One real per line; blank lines and `#` comments are skipped.
std::vector<double> read_series(const std::string& path);
std::vector<double> read_series(std::istream& in, const std::string& label);

/// Runs the command, writing data to config.output (or `out`) and, for file
/// outputs, a `<output>.json` sidecar. Throws permcx::Error.
void run_command(const RunConfig& config, std::ostream& out);

}  // namespace permcx
