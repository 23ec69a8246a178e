// permcx: command-line front end for the permutation complexity library.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "permcx/commands.hpp"
#include "permcx/errors.hpp"

namespace {

void add_process_flags(CLI::App* sub, permcx::RunConfig& c) {
  sub->add_option("--process", c.process,
                  "white-noise, fgn, fbm, noisy-logistic, noisy-schuster, periodic-noisy, "
                  "piecewise-linear, logistic, shift");
  sub->add_option("--hurst", c.hurst, "Hurst exponent (fgn, fbm)");
  sub->add_option("--amplitude", c.amplitude, "observational noise half-width (noisy maps)");
  sub->add_option("--period", c.period, "period of X_p");
  sub->add_option("--length", c.length, "series length");
  sub->add_option("--seed", c.seed, "base seed; realization i uses seed + i");
  sub->add_option("--x0", c.x0, "initial condition (maps)");
  sub->add_option("--sigma", c.sigma, "slope of the piecewise-linear map");
  sub->add_option("--delta", c.delta, "cycle separation of X_p");
}

void add_common_flags(CLI::App* sub, permcx::RunConfig& c) {
  sub->add_option("--output,-o", c.output, "output file (default stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--jobs", c.jobs, "worker threads for ensembles");
}

}  // namespace

int main(int argc, char** argv) {
  permcx::RunConfig config;
  std::string config_path;
  int realizations = -1;  // unset
  std::size_t t_max = 0;

  CLI::App app{"Permutation complexity analysis of time series"};
  app.require_subcommand(1);
  app.add_option("--config", config_path, "replay a run from its JSON metadata or config");

  auto* gen = app.add_subcommand("generate", "write a generated series, one value per line");
  auto* census = app.add_subcommand("census", "ordinal pattern counts");
  auto* entropy = app.add_subcommand("entropy", "Renyi and Z-entropies per order and alpha");
  auto* decay = app.add_subcommand("decay", "fit the missing-pattern decay law");
  auto* experiment = app.add_subcommand("experiment", "reproduce a figure or table dataset");
  auto* xp = app.add_subcommand("xp", "closed-form pattern statistics of X_p");

  for (auto* sub : {gen, census, entropy, decay, experiment, xp}) {
    add_common_flags(sub, config);
    add_process_flags(sub, config);
  }
  for (auto* sub : {census, entropy, decay, experiment, xp}) {
    sub->add_option("--order,--orders", config.orders, "pattern order(s)")->delimiter(',');
    sub->add_option("--input,-i", config.inputs, "series file(s)");
    sub->add_option("--realizations", realizations, "ensemble size");
  }
  for (auto* sub : {entropy, experiment, xp}) {
    sub->add_option("--alpha", config.alphas, "Renyi order(s)")->delimiter(',');
  }
  entropy->add_option("--class", config.cls, "exp:c, sub:c, subn:n or fac");
  decay->add_option("--model", config.model, "exp or stretched");
  for (auto* sub : {decay, experiment}) {
    sub->add_option("--t-max", t_max, "longest series length");
  }
  experiment->add_option("name", config.experiment, "fig1, fig2, fig3, fig4, table1, table2")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw permcx::Error(permcx::ErrorCode::kIo, "cannot open '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw permcx::Error(permcx::ErrorCode::kInvalidData, config_path + ": " + e.what());
      }
      config = (j.contains("config") ? j["config"] : j).get<permcx::RunConfig>();
    } else {
      for (auto* sub : app.get_subcommands()) config.command = permcx::parse_command(sub->get_name());
      if (realizations != -1) config.realizations = realizations;
      if (t_max > 0) config.t_max = t_max;
    }
    permcx::run_command(config, std::cout);
  } catch (const permcx::Error& e) {
    std::cerr << "permcx: " << permcx::to_string(e.code()) << ": " << e.what() << '\n';
    return permcx::exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "permcx: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
