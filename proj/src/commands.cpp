#include "permcx/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "permcx/analysis.hpp"
#include "permcx/entropy.hpp"
#include "permcx/errors.hpp"
#include "permcx/experiments.hpp"
#include "permcx/ordinal.hpp"
#include "permcx/parallel.hpp"
#include "permcx/table.hpp"
#include "permcx/version.hpp"

namespace permcx {
namespace {

constexpr const char* kExperiments[] = {"fig1", "fig2", "fig3", "fig4", "table1", "table2"};

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, msg);
}

std::string full_precision(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int realizations_or(const RunConfig& c, int fallback) {
  return c.realizations.value_or(fallback);
}

// Series for census/entropy/decay: one per input file, or one per realization.
std::vector<std::vector<double>> load_series(const RunConfig& c, std::size_t default_length) {
  if (c.process.empty()) {
    std::vector<std::vector<double>> all;
    for (const auto& path : c.inputs) all.push_back(read_series(path));
    return all;
  }
  const std::size_t length = c.length ? c.length : default_length;
  return parallel_map(static_cast<std::size_t>(realizations_or(c, 1)), c.jobs,
                      [&](std::size_t i) { return generate(c.process_spec(length, i)); });
}

struct Sink {
  explicit Sink(const RunConfig& c, std::ostream& fallback) : config(c), out(&fallback) {
    if (!c.output.empty()) {
      file.open(c.output);
      if (!file) throw Error(ErrorCode::kIo, "cannot open '" + c.output + "' for writing");
      out = &file;
    }
  }

  void write_table(const Table& t) {
    if (config.format == "json") {
      *out << t.to_json().dump(2) << '\n';
    } else {
      *out << t.to_csv();
    }
    check();
  }

  void check() {
    if (!*out) throw Error(ErrorCode::kIo, "write failed for '" + name() + "'");
  }

  void sidecar(nlohmann::json extra) {
    if (config.output.empty()) return;
    nlohmann::json meta = std::move(extra);
    meta["version"] = kVersion;
    meta["config"] = config;
    const std::string path = config.output + ".json";
    std::ofstream side(path);
    side << meta.dump(2) << '\n';
    if (!side) throw Error(ErrorCode::kIo, "cannot write metadata '" + path + "'");
  }

  std::string name() const { return config.output.empty() ? "<stdout>" : config.output; }

  const RunConfig& config;
  std::ofstream file;
  std::ostream* out;
};

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? NAN : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::string ranks_text(PatternCode code, int order) {
  std::string s;
  for (int r : lehmer_decode(code, order)) {
    if (!s.empty()) s += ' ';
    s += std::to_string(r);
  }
  return s;
}

void cmd_generate(const RunConfig& c, std::ostream& out) {
  require(!c.process.empty(), "generate needs --process");
  require(c.length >= 1, "generate needs --length >= 1");
  const auto spec = c.process_spec(c.length, 0);
  const auto x = generate(spec);
  Sink sink(c, out);
  if (c.format == "json") {
    *sink.out << nlohmann::json(x).dump() << '\n';
  } else {
    for (double v : x) *sink.out << full_precision(v) << '\n';
  }
  sink.check();
  sink.sidecar({{"process", spec.describe()}, {"seed", spec.seed}, {"length", spec.length}});
}

void cmd_census(const RunConfig& c, std::ostream& out) {
  const auto series = load_series(c, 10000);
  const std::vector<int> orders = c.orders.empty() ? std::vector<int>{3} : c.orders;
  Table t;
  t.header = {"L", "code", "pattern", "count", "probability"};
  for (int L : orders) {
    PatternDistribution total(L);
    for (const auto& x : series) total.merge(pattern_census(x, L));
    for (const auto& [code, n] : total.counts()) {
      t.rows.push_back({std::to_string(L), std::to_string(code), ranks_text(code, L),
                        std::to_string(n), format_number(total.probability(code))});
    }
  }
  Sink sink(c, out);
  sink.write_table(t);
  sink.sidecar({{"series", series.size()}});
}

void cmd_entropy(const RunConfig& c, std::ostream& out) {
  const auto cls = ComplexityClass::parse(c.cls);
  const auto series = load_series(c, 50000);
  std::vector<int> orders = c.orders;
  if (orders.empty()) orders = {3, 4, 5, 6, 7};
  const std::vector<double> alphas = c.alphas.empty() ? std::vector<double>{1.0} : c.alphas;

  // reports[series][order][alpha]
  const auto reports = parallel_map(series.size(), c.jobs, [&](std::size_t i) {
    std::vector<std::vector<EntropyReport>> per_order;
    for (int L : orders) {
      const auto census = pattern_census(series[i], L);
      std::vector<EntropyReport> row;
      for (double a : alphas) row.push_back(entropy_report(census, cls, a));
      per_order.push_back(std::move(row));
    }
    return per_order;
  });

  Table t;
  t.header = {"L", "alpha", "class", "renyi_mean", "renyi_sd", "z_mean", "z_sd",
              "z_over_L_mean", "z_over_L_sd", "series"};
  for (std::size_t li = 0; li < orders.size(); ++li) {
    for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
      std::vector<double> r, z, zl;
      for (const auto& rep : reports) {
        r.push_back(rep[li][ai].renyi);
        z.push_back(rep[li][ai].z_value);
        zl.push_back(rep[li][ai].z_rate_term);
      }
      t.rows.push_back({std::to_string(orders[li]), format_number(alphas[ai]), cls.label(),
                        format_number(mean_of(r)), format_number(sd_of(r)),
                        format_number(mean_of(z)), format_number(sd_of(z)),
                        format_number(mean_of(zl)), format_number(sd_of(zl)),
                        std::to_string(series.size())});
    }
  }
  Sink sink(c, out);
  sink.write_table(t);
  sink.sidecar({{"series", series.size()}});
}

void cmd_decay(const RunConfig& c, std::ostream& out) {
  const DecayModel model = c.model == "stretched" ? DecayModel::kStretched
                                                  : DecayModel::kExponential;
  std::vector<int> orders = c.orders.empty() ? std::vector<int>{4} : c.orders;
  Table t;
  t.header = {"L", "model", "R", "C", "beta", "residual", "fit_start", "fit_end", "points"};

  std::vector<std::vector<double>> inputs;
  std::size_t common = 0;
  if (c.process.empty()) {
    for (const auto& path : c.inputs) inputs.push_back(read_series(path));
    require(!inputs.empty(), "decay needs --process or --input");
    common = inputs.front().size();
    for (const auto& x : inputs) common = std::min(common, x.size());
  }

  for (int L : orders) {
    std::vector<SeriesPoint> missing;
    if (!c.process.empty()) {
      EnsembleOptions opt{realizations_or(c, 35), c.seed, c.jobs};
      ProcessSpec base = c.process_spec(1, 0);
      missing = ensemble_missing(base, L, c.t_max.value_or(7000), opt);
    } else {
      std::vector<std::size_t> checkpoints;
      for (std::size_t T = static_cast<std::size_t>(L); T <= common; ++T) checkpoints.push_back(T);
      std::vector<std::vector<SeriesPoint>> runs;
      for (const auto& x : inputs) {
        std::span<const double> head(x.data(), common);
        runs.push_back(missing_series(census_trace(head, L, checkpoints)));
      }
      missing = ensemble_mean(runs);
    }
    const auto fit = fit_decay(missing, L, model);
    t.rows.push_back({std::to_string(L), c.model, format_number(fit.rate),
                      format_number(fit.prefactor), format_number(fit.beta),
                      format_number(fit.residual), format_number(fit.fit_range.first),
                      format_number(fit.fit_range.second), std::to_string(fit.points)});
  }
  Sink sink(c, out);
  sink.write_table(t);
  sink.sidecar({});
}

void cmd_experiment(const RunConfig& c, std::ostream& out) {
  const EnsembleOptions opt{realizations_or(c, 35), c.seed, c.jobs};
  const auto start = std::chrono::steady_clock::now();
  Table table;
  nlohmann::json meta;
  std::size_t mismatches = 0;
  const auto& name = c.experiment;

  if (name == "fig1") {
    auto d = c.alphas.empty()
                 ? run_fig1(opt, c.t_max.value_or(50000),
                            c.orders.empty() ? std::vector<int>{3, 4, 5, 6, 7} : c.orders)
                 : run_fig1(opt, c.t_max.value_or(50000),
                            c.orders.empty() ? std::vector<int>{3, 4, 5, 6, 7} : c.orders,
                            c.alphas);
    table = to_table(d);
  } else if (name == "fig2") {
    table = to_table(run_fig2(opt, c.t_max.value_or(7000), c.orders.empty() ? 6 : c.orders[0]));
  } else if (name == "fig3") {
    const auto d = run_fig3(opt, c.t_max.value_or(50), c.orders.empty() ? 6 : c.orders[0]);
    table = to_table(d);
    meta["ensemble_support"] = d.ensemble_support;
    meta["analytic_allowed"] = d.analytic_allowed;
  } else if (name == "fig4") {
    const int max_order = c.orders.empty() ? 14 : c.orders.back();
    table = to_table(c.alphas.empty() ? run_fig4(opt, c.t_max.value_or(50000), max_order)
                                      : run_fig4(opt, c.t_max.value_or(50000), max_order,
                                                 c.alphas));
  } else if (name == "table1") {
    table = to_table(run_table1(opt, c.t_max.value_or(7000),
                                c.orders.empty() ? std::vector<int>{4, 5, 6} : c.orders));
  } else if (name == "table2") {
    const auto d = run_table2();
    table = to_table(d);
    mismatches = d.mismatches;
    meta["cells"] = d.cells.size();
    meta["mismatches"] = d.mismatches;
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Sink sink(c, out);
  sink.write_table(table);
  meta["experiment"] = name;
  meta["runtime_seconds"] = seconds;
  if (name != "table2") {
    meta["seeds"] = {c.seed, c.seed + static_cast<std::uint64_t>(opt.realizations) - 1};
  }
  sink.sidecar(std::move(meta));
  if (mismatches) {
    throw Error(ErrorCode::kNumerical,
                std::to_string(mismatches) + " allowed-pattern counts differ from the reference");
  }
}

void cmd_xp(const RunConfig& c, std::ostream& out) {
  const int p = c.period;
  std::vector<int> orders = c.orders;
  if (orders.empty()) {
    for (int L = p; L <= 14; ++L) orders.push_back(L);
  }
  const std::vector<double> alphas = c.alphas.empty() ? std::vector<double>{0.0, 1.0} : c.alphas;
  Table t;
  t.header = {"p", "L", "nu", "mu", "N1", "N2", "P1", "P2", "allowed", "c"};
  for (double a : alphas) {
    t.header.push_back("R alpha=" + format_number(a));
    t.header.push_back("Z_sub/L alpha=" + format_number(a));
  }
  for (int L : orders) {
    const auto xp = xp_distribution(p, L);
    const auto cls = ComplexityClass::sub_factorial_linear(xp.c);
    std::vector<std::string> row{std::to_string(p), std::to_string(L), std::to_string(xp.nu),
                                 std::to_string(xp.mu), xp.n1.str(), xp.n2.str(),
                                 format_number(xp.p1), format_number(xp.p2), xp.allowed.str(),
                                 format_number(xp.c)};
    for (double a : alphas) {
      const double r = xp.renyi(a);
      row.push_back(format_number(r));
      row.push_back(format_number(z_from_renyi(r, cls) / L));
    }
    t.rows.push_back(std::move(row));
  }
  Sink sink(c, out);
  sink.write_table(t);
  sink.sidecar({});
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::kGenerate: return "generate";
    case Command::kCensus: return "census";
    case Command::kEntropy: return "entropy";
    case Command::kDecay: return "decay";
    case Command::kExperiment: return "experiment";
    case Command::kXp: return "xp";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (auto c : {Command::kGenerate, Command::kCensus, Command::kEntropy, Command::kDecay,
                 Command::kExperiment, Command::kXp}) {
    if (name == to_string(c)) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown command '" + name + "'");
}

void RunConfig::validate() const {
  require(format == "csv" || format == "json", "--format must be csv or json");
  require(model == "exp" || model == "stretched", "--model must be exp or stretched");
  require(jobs >= 1, "--jobs must be >= 1");
  require(!realizations || *realizations >= 1, "--realizations must be >= 1");
  for (int L : orders) {
    if (L < 2 || L > kMaxOrder) {
      throw Error(ErrorCode::kInvalidOrder,
                  "order must lie in [2, " + std::to_string(kMaxOrder) + "], got " +
                      std::to_string(L));
    }
  }
  for (double a : alphas) require(a >= 0.0 && std::isfinite(a), "alpha must be >= 0");
  ComplexityClass::parse(cls);
  if (command == Command::kExperiment) {
    require(std::find(std::begin(kExperiments), std::end(kExperiments), experiment) !=
                std::end(kExperiments),
            "unknown experiment '" + experiment + "'");
  }
  if (command == Command::kXp) require(period >= 2, "--period must be >= 2");
  if (!process.empty()) {
    process_spec(std::max<std::size_t>(length, 1), 0).validate();
  } else if (command == Command::kCensus || command == Command::kEntropy ||
             command == Command::kDecay) {
    require(!inputs.empty(), std::string(to_string(command)) + " needs --process or --input");
  }
}

ProcessSpec RunConfig::process_spec(std::size_t len, std::size_t index) const {
  ProcessSpec s;
  s.kind = parse_process_kind(process);
  s.length = len;
  s.seed = seed + index;
  s.hurst = hurst;
  s.amplitude = amplitude;
  s.period = period;
  s.x0 = x0;
  s.sigma = sigma;
  s.delta = delta;
  return s;
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = {{"command", to_string(c.command)},
       {"experiment", c.experiment},
       {"inputs", c.inputs},
       {"output", c.output},
       {"format", c.format},
       {"process", c.process},
       {"length", c.length},
       {"seed", c.seed},
       {"hurst", c.hurst},
       {"amplitude", c.amplitude},
       {"period", c.period},
       {"x0", c.x0},
       {"sigma", c.sigma},
       {"delta", c.delta},
       {"orders", c.orders},
       {"alphas", c.alphas},
       {"class", c.cls},
       {"jobs", c.jobs},
       {"model", c.model}};
  j["realizations"] = c.realizations ? nlohmann::json(*c.realizations) : nlohmann::json();
  j["t_max"] = c.t_max ? nlohmann::json(*c.t_max) : nlohmann::json();
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  RunConfig d;
  c.command = parse_command(j.value("command", std::string(to_string(d.command))));
  c.experiment = j.value("experiment", d.experiment);
  c.inputs = j.value("inputs", d.inputs);
  c.output = j.value("output", d.output);
  c.format = j.value("format", d.format);
  c.process = j.value("process", d.process);
  c.length = j.value("length", d.length);
  c.seed = j.value("seed", d.seed);
  c.hurst = j.value("hurst", d.hurst);
  c.amplitude = j.value("amplitude", d.amplitude);
  c.period = j.value("period", d.period);
  c.x0 = j.value("x0", d.x0);
  c.sigma = j.value("sigma", d.sigma);
  c.delta = j.value("delta", d.delta);
  c.orders = j.value("orders", d.orders);
  c.alphas = j.value("alphas", d.alphas);
  c.cls = j.value("class", d.cls);
  c.jobs = j.value("jobs", d.jobs);
  c.model = j.value("model", d.model);
  c.realizations.reset();
  c.t_max.reset();
  if (j.contains("realizations") && !j["realizations"].is_null()) {
    c.realizations = j["realizations"].get<int>();
  }
  if (j.contains("t_max") && !j["t_max"].is_null()) c.t_max = j["t_max"].get<std::size_t>();
}

std::vector<double> read_series(std::istream& in, const std::string& label) {
  std::vector<double> x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double v = 0.0;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e || !std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidData, label + ":" + std::to_string(lineno) +
                                               ": not a finite number: '" +
                                               std::string(b, e) + "'");
    }
    x.push_back(v);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, label + ": read failed");
  return x;
}

std::vector<double> read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_series(in, path);
}

void run_command(const RunConfig& config, std::ostream& out) {
  config.validate();
  switch (config.command) {
    case Command::kGenerate: return cmd_generate(config, out);
    case Command::kCensus: return cmd_census(config, out);
    case Command::kEntropy: return cmd_entropy(config, out);
    case Command::kDecay: return cmd_decay(config, out);
    case Command::kExperiment: return cmd_experiment(config, out);
    case Command::kXp: return cmd_xp(config, out);
  }
}

}  // namespace permcx
