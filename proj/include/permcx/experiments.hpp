#pragma once

// Ensemble experiments: the seven-process factorial suite, the X_p
// family, and their figure/table datasets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "permcx/analysis.hpp"
#include "permcx/processes.hpp"
#include "permcx/table.hpp"

namespace permcx {

struct NamedProcess {
  std::string name;
  ProcessSpec spec;  // seed and length are filled in per realization
};

/// White noise, fGn H=0.2, fBm H=0.2/0.4/0.6, noisy logistic (a=0.30),
/// noisy Schuster (a=0.25).
std::vector<NamedProcess> factorial_suite();

/// Realization `index` of a process: seed = base_seed + index.
ProcessSpec realization(const ProcessSpec& spec, std::size_t length,
                        std::uint64_t base_seed, std::size_t index);

struct EnsembleOptions {
  int realizations = 35;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

// fig1: <Z_fac,alpha / L> for the factorial suite.
struct Fig1Data {
  std::vector<std::string> processes;
  std::vector<int> orders;
  std::vector<double> alphas;
  // [process][alpha][order]
  std::vector<std::vector<std::vector<double>>> mean, sd;
  std::size_t t_max = 0;
};
Fig1Data run_fig1(const EnsembleOptions& opt, std::size_t t_max = 50000,
                  std::vector<int> orders = {3, 4, 5, 6, 7},
                  std::vector<double> alphas = {0.5, 1.0, 1.5});

// fig2: <g(L,T)> against T for the factorial suite.
struct Fig2Data {
  std::vector<std::string> processes;
  int order = 6;
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<double>> mean_g;  // [process][checkpoint]
};
Fig2Data run_fig2(const EnsembleOptions& opt, std::size_t t_max = 7000, int order = 6,
                  std::size_t step = 50);

// fig3: <g(6,T)> for X_p, 2 <= p <= 6, 6 <= T <= 50.
struct Fig3Data {
  std::vector<int> periods;
  int order = 6;
  std::vector<std::size_t> checkpoints;
  std::vector<std::vector<double>> mean_g;       // [period][checkpoint]
  std::vector<std::size_t> ensemble_support;     // union over realizations at t_max
  std::vector<std::uint64_t> analytic_allowed;
};
Fig3Data run_fig3(const EnsembleOptions& opt, std::size_t t_max = 50, int order = 6,
                  std::vector<int> periods = {2, 3, 4, 5, 6});

// fig4: <Z_sub,alpha / L> for X_{p,mu}.
struct Fig4Curve {
  int period = 0;
  int mu = 0;
  double c = 0.0;
  std::vector<int> orders;
  std::vector<std::vector<double>> mean;      // [alpha][order]
  std::vector<std::vector<double>> analytic;  // [alpha][order]; NaN when L < p
};
struct Fig4Data {
  std::vector<double> alphas;
  std::vector<Fig4Curve> curves;
  std::size_t t_max = 0;
};
Fig4Data run_fig4(const EnsembleOptions& opt, std::size_t t_max = 50000, int max_order = 14,
                  std::vector<double> alphas = {0.5, 1.0, 1.5});

// table1: decay exponents R of the missing-pattern counts.
struct Table1Data {
  std::vector<std::string> processes;
  std::vector<int> orders;
  std::vector<std::vector<DecayFit>> fits;  // [process][order]
  std::vector<std::vector<double>> reference;
};
Table1Data run_table1(const EnsembleOptions& opt, std::size_t t_max = 7000,
                      std::vector<int> orders = {4, 5, 6});

/// Reference decay exponents, rows in factorial_suite() order, columns L=4,5,6.
const std::vector<std::vector<double>>& table1_reference();

/// Mean missing-pattern curve M_{L,T} over the ensemble, checkpoints L..t_max.
std::vector<SeriesPoint> ensemble_missing(const ProcessSpec& spec, int order,
                                          std::size_t t_max, const EnsembleOptions& opt);

// table2: exact allowed-pattern counts of X_p.
struct Table2Cell {
  int period = 0;
  int order = 0;
  BigInt computed;
  std::uint64_t reference = 0;
};
struct Table2Data {
  std::vector<Table2Cell> cells;
  std::size_t mismatches = 0;
};
Table2Data run_table2();

Table to_table(const Fig1Data& d);
Table to_table(const Fig2Data& d);
Table to_table(const Fig3Data& d);
Table to_table(const Fig4Data& d);
Table to_table(const Table1Data& d);
Table to_table(const Table2Data& d);

}  // namespace permcx
