#include "permcx/experiments.hpp"

#include <cmath>
#include <set>
#include <string>

#include "permcx/entropy.hpp"
#include "permcx/errors.hpp"
#include "permcx/ordinal.hpp"
#include "permcx/parallel.hpp"

namespace permcx {
namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& v) {
  MeanSd r;
  if (v.empty()) return r;
  for (double x : v) r.mean += x;
  r.mean /= static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

std::vector<std::size_t> stepped_checkpoints(std::size_t first, std::size_t last,
                                             std::size_t step) {
  std::vector<std::size_t> cps;
  for (std::size_t t = first; t <= last; t += step) cps.push_back(t);
  if (cps.empty() || cps.back() != last) cps.push_back(last);
  return cps;
}

// Reruns `body` and prefixes any library error with the process name.
template <class F>
auto for_process(const std::string& name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), name + ": " + e.what());
  }
}

std::string alpha_label(double a) { return "alpha=" + format_number(a); }

}  // namespace

std::vector<NamedProcess> factorial_suite() {
  return {
      {"WN", ProcessSpec::white_noise(0, 0)},
      {"fGn H=0.20", ProcessSpec::fgn(0.2, 0, 0)},
      {"fBm H=0.20", ProcessSpec::fbm(0.2, 0, 0)},
      {"fBm H=0.40", ProcessSpec::fbm(0.4, 0, 0)},
      {"fBm H=0.60", ProcessSpec::fbm(0.6, 0, 0)},
      {"Noisy LM", ProcessSpec::noisy_logistic(0.30, 0, 0, 0.2002)},
      {"Noisy SM", ProcessSpec::noisy_schuster(0.25, 0, 0, 0.2002)},
  };
}

ProcessSpec realization(const ProcessSpec& spec, std::size_t length,
                        std::uint64_t base_seed, std::size_t index) {
  ProcessSpec s = spec;
  s.length = length;
  s.seed = base_seed + index;
  return s;
}

Fig1Data run_fig1(const EnsembleOptions& opt, std::size_t t_max, std::vector<int> orders,
                  std::vector<double> alphas) {
  const auto suite = factorial_suite();
  Fig1Data d;
  d.orders = std::move(orders);
  d.alphas = std::move(alphas);
  d.t_max = t_max;
  const auto R = static_cast<std::size_t>(opt.realizations);

  for (const auto& proc : suite) {
    d.processes.push_back(proc.name);
    // values[r][alpha][order]
    const auto values = for_process(proc.name, [&] {
      return parallel_map(R, opt.jobs, [&](std::size_t r) {
        const auto x = generate(realization(proc.spec, t_max, opt.seed, r));
        std::vector<std::vector<double>> v(d.alphas.size(),
                                           std::vector<double>(d.orders.size()));
        for (std::size_t li = 0; li < d.orders.size(); ++li) {
          const auto census = stabilized_census(x, d.orders[li]);
          for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
            const double renyi = renyi_entropy(census.distribution, d.alphas[ai]);
            v[ai][li] = z_from_renyi(renyi, ComplexityClass::factorial()) / d.orders[li];
          }
        }
        return v;
      });
    });
    std::vector<std::vector<double>> mean(d.alphas.size(), std::vector<double>(d.orders.size()));
    auto sd = mean;
    for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
      for (std::size_t li = 0; li < d.orders.size(); ++li) {
        std::vector<double> col;
        for (const auto& v : values) col.push_back(v[ai][li]);
        const auto ms = mean_sd(col);
        mean[ai][li] = ms.mean;
        sd[ai][li] = ms.sd;
      }
    }
    d.mean.push_back(std::move(mean));
    d.sd.push_back(std::move(sd));
  }
  return d;
}

Fig2Data run_fig2(const EnsembleOptions& opt, std::size_t t_max, int order, std::size_t step) {
  Fig2Data d;
  d.order = order;
  d.checkpoints = stepped_checkpoints(order, t_max, step);
  const auto R = static_cast<std::size_t>(opt.realizations);
  for (const auto& proc : factorial_suite()) {
    d.processes.push_back(proc.name);
    const auto runs = for_process(proc.name, [&] {
      return parallel_map(R, opt.jobs, [&](std::size_t r) {
        const auto x = generate(realization(proc.spec, t_max, opt.seed, r));
        return pc_function_trace(census_trace(x, order, d.checkpoints));
      });
    });
    std::vector<double> mean;
    for (const auto& p : ensemble_mean(runs)) mean.push_back(p.value);
    d.mean_g.push_back(std::move(mean));
  }
  return d;
}

Fig3Data run_fig3(const EnsembleOptions& opt, std::size_t t_max, int order,
                  std::vector<int> periods) {
  Fig3Data d;
  d.order = order;
  d.periods = std::move(periods);
  d.checkpoints = stepped_checkpoints(order, t_max, 1);
  const auto R = static_cast<std::size_t>(opt.realizations);
  for (int p : d.periods) {
    const std::string name = "X_" + std::to_string(p);
    struct Run {
      std::vector<SeriesPoint> g;
      std::vector<PatternCode> codes;
    };
    const auto runs = for_process(name, [&] {
      return parallel_map(R, opt.jobs, [&](std::size_t r) {
        const auto x = generate(ProcessSpec::periodic_noisy(p, t_max, opt.seed + r));
        Run run;
        run.g = pc_function_trace(census_trace(x, order, d.checkpoints));
        const auto census = pattern_census(x, order);
        for (const auto& [code, n] : census.counts()) run.codes.push_back(code);
        return run;
      });
    });
    std::vector<std::vector<SeriesPoint>> traces;
    std::set<PatternCode> support;
    for (const auto& run : runs) {
      traces.push_back(run.g);
      support.insert(run.codes.begin(), run.codes.end());
    }
    std::vector<double> mean;
    for (const auto& pt : ensemble_mean(traces)) mean.push_back(pt.value);
    d.mean_g.push_back(std::move(mean));
    d.ensemble_support.push_back(support.size());
    d.analytic_allowed.push_back(xp_allowed_count(p, order).convert_to<std::uint64_t>());
  }
  return d;
}

Fig4Data run_fig4(const EnsembleOptions& opt, std::size_t t_max, int max_order,
                  std::vector<double> alphas) {
  Fig4Data d;
  d.alphas = std::move(alphas);
  d.t_max = t_max;
  const auto R = static_cast<std::size_t>(opt.realizations);
  const std::vector<std::pair<int, int>> families = {{2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};
  for (const auto& [p, mu] : families) {
    Fig4Curve curve;
    curve.period = p;
    curve.mu = mu;
    curve.c = xp_class_constant(p, mu);
    for (int L = mu; L <= max_order; L += p) {
      if (L >= 2) curve.orders.push_back(L);
    }
    const auto cls = ComplexityClass::sub_factorial_linear(curve.c);
    const std::string name = "X_{" + std::to_string(p) + "," + std::to_string(mu) + "}";
    const auto values = for_process(name, [&] {
      return parallel_map(R, opt.jobs, [&](std::size_t r) {
        const auto x = generate(ProcessSpec::periodic_noisy(p, t_max, opt.seed + r));
        std::vector<std::vector<double>> v(d.alphas.size(),
                                           std::vector<double>(curve.orders.size()));
        for (std::size_t li = 0; li < curve.orders.size(); ++li) {
          const auto census = pattern_census(x, curve.orders[li]);
          for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
            v[ai][li] = z_from_renyi(renyi_entropy(census, d.alphas[ai]), cls) /
                        curve.orders[li];
          }
        }
        return v;
      });
    });
    curve.mean.assign(d.alphas.size(), std::vector<double>(curve.orders.size()));
    curve.analytic.assign(d.alphas.size(), std::vector<double>(curve.orders.size()));
    for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
      for (std::size_t li = 0; li < curve.orders.size(); ++li) {
        std::vector<double> col;
        for (const auto& v : values) col.push_back(v[ai][li]);
        curve.mean[ai][li] = mean_sd(col).mean;
        const int L = curve.orders[li];
        curve.analytic[ai][li] =
            L < p ? NAN
                  : z_from_renyi(xp_distribution(p, L).renyi(d.alphas[ai]), cls) / L;
      }
    }
    d.curves.push_back(std::move(curve));
  }
  return d;
}

std::vector<SeriesPoint> ensemble_missing(const ProcessSpec& spec, int order,
                                          std::size_t t_max, const EnsembleOptions& opt) {
  const auto checkpoints = stepped_checkpoints(order, t_max, 1);
  const auto runs = parallel_map(
      static_cast<std::size_t>(opt.realizations), opt.jobs, [&](std::size_t r) {
        const auto x = generate(realization(spec, t_max, opt.seed, r));
        return missing_series(census_trace(x, order, checkpoints));
      });
  return ensemble_mean(runs);
}

const std::vector<std::vector<double>>& table1_reference() {
  static const std::vector<std::vector<double>> ref = {
      {4.43e-2, 8.47e-3, 1.40e-3},  // WN
      {4.93e-2, 8.17e-3, 1.21e-3},  // fGn H=0.20
      {4.20e-2, 7.52e-3, 1.13e-3},  // fBm H=0.20
      {3.76e-2, 6.32e-3, 8.12e-4},  // fBm H=0.40
      {3.24e-2, 4.07e-3, 5.05e-4},  // fBm H=0.60
      {3.36e-2, 5.55e-3, 7.54e-4},  // noisy LM
      {4.43e-2, 8.09e-3, 1.30e-3},  // noisy SM
  };
  return ref;
}

Table1Data run_table1(const EnsembleOptions& opt, std::size_t t_max, std::vector<int> orders) {
  Table1Data d;
  d.orders = std::move(orders);
  const auto suite = factorial_suite();
  const auto& ref = table1_reference();
  for (std::size_t i = 0; i < suite.size(); ++i) {
    d.processes.push_back(suite[i].name);
    std::vector<DecayFit> fits;
    std::vector<double> refs;
    for (int L : d.orders) {
      fits.push_back(for_process(suite[i].name, [&] {
        const auto m = ensemble_missing(suite[i].spec, L, t_max, opt);
        return fit_decay(m, L, DecayModel::kExponential);
      }));
      refs.push_back(L >= 4 && L <= 6 ? ref[i][L - 4] : NAN);
    }
    d.fits.push_back(std::move(fits));
    d.reference.push_back(std::move(refs));
  }
  return d;
}

Table2Data run_table2() {
  // Reference allowed-pattern counts of X_p, rows p = 2..6, columns L = p..14.
  static const std::vector<std::vector<std::uint64_t>> reference = {
      {2, 3, 4, 8, 12, 30, 48, 144, 240, 840, 1440, 5760, 10080},
      {3, 5, 8, 12, 28, 60, 108, 324, 864, 1728, 6336, 20160},
      {4, 7, 12, 20, 32, 80, 192, 432, 864, 2808, 8640},
      {5, 9, 16, 28, 48, 80, 208, 528, 1296, 3024},
      {6, 11, 20, 36, 64, 112, 192, 512, 1344},
  };
  Table2Data d;
  for (int p = 2; p <= 6; ++p) {
    const auto& row = reference[p - 2];
    for (std::size_t i = 0; i < row.size(); ++i) {
      const int L = p + static_cast<int>(i);
      Table2Cell cell{p, L, xp_allowed_count(p, L), row[i]};
      if (cell.computed != cell.reference) ++d.mismatches;
      d.cells.push_back(std::move(cell));
    }
  }
  return d;
}

Table to_table(const Fig1Data& d) {
  Table t;
  t.header.push_back("L");
  for (const auto& proc : d.processes) {
    for (double a : d.alphas) {
      t.header.push_back(proc + " " + alpha_label(a) + " mean");
      t.header.push_back(proc + " " + alpha_label(a) + " sd");
    }
  }
  for (std::size_t li = 0; li < d.orders.size(); ++li) {
    std::vector<std::string> row{std::to_string(d.orders[li])};
    for (std::size_t pi = 0; pi < d.processes.size(); ++pi) {
      for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
        row.push_back(format_number(d.mean[pi][ai][li]));
        row.push_back(format_number(d.sd[pi][ai][li]));
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const Fig2Data& d) {
  Table t;
  t.header.push_back("T");
  for (const auto& proc : d.processes) t.header.push_back(proc + " <g(" + std::to_string(d.order) + ",T)>");
  for (std::size_t i = 0; i < d.checkpoints.size(); ++i) {
    std::vector<std::string> row{std::to_string(d.checkpoints[i])};
    for (const auto& g : d.mean_g) row.push_back(format_number(g[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const Fig3Data& d) {
  Table t;
  t.header.push_back("T");
  for (int p : d.periods) {
    t.header.push_back("X_" + std::to_string(p) + " <g(" + std::to_string(d.order) + ",T)>");
  }
  for (std::size_t i = 0; i < d.checkpoints.size(); ++i) {
    std::vector<std::string> row{std::to_string(d.checkpoints[i])};
    for (const auto& g : d.mean_g) row.push_back(format_number(g[i]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const Fig4Data& d) {
  Table t;
  t.header = {"curve", "c", "L"};
  for (double a : d.alphas) {
    t.header.push_back(alpha_label(a) + " mean Z/L");
    t.header.push_back(alpha_label(a) + " analytic Z/L");
  }
  for (const auto& c : d.curves) {
    const std::string name =
        "X_{" + std::to_string(c.period) + "," + std::to_string(c.mu) + "}";
    for (std::size_t li = 0; li < c.orders.size(); ++li) {
      std::vector<std::string> row{name, format_number(c.c), std::to_string(c.orders[li])};
      for (std::size_t ai = 0; ai < d.alphas.size(); ++ai) {
        row.push_back(format_number(c.mean[ai][li]));
        row.push_back(format_number(c.analytic[ai][li]));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

Table to_table(const Table1Data& d) {
  Table t;
  t.header.push_back("process");
  for (int L : d.orders) {
    t.header.push_back("R L=" + std::to_string(L));
    t.header.push_back("reference L=" + std::to_string(L));
  }
  for (std::size_t i = 0; i < d.processes.size(); ++i) {
    std::vector<std::string> row{d.processes[i]};
    for (std::size_t li = 0; li < d.orders.size(); ++li) {
      row.push_back(format_number(d.fits[i][li].rate));
      row.push_back(format_number(d.reference[i][li]));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table to_table(const Table2Data& d) {
  Table t;
  t.header = {"p"};
  for (int L = 2; L <= 14; ++L) t.header.push_back("L=" + std::to_string(L));
  for (int p = 2; p <= 6; ++p) {
    std::vector<std::string> row{std::to_string(p)};
    for (int L = 2; L <= 14; ++L) {
      std::string cell = "-";
      for (const auto& c : d.cells) {
        if (c.period == p && c.order == L) cell = c.computed.str();
      }
      row.push_back(cell);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace permcx
