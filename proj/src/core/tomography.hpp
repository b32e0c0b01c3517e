#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/qudit.hpp"

namespace qdl::tomo {

// Analyzer labels per arm, in canonical order:
//   basis:        b0 .. b{d-1}
//   pair states:  for each j < k (lexicographic): p+jk [p-jk] q+jk [q-jk]
// where p±jk = (|j> ± |k>)/sqrt(2) and q±jk = (|j> ± i|k>)/sqrt(2).
// The minimal set keeps only p+ and q+ per pair; the overcomplete set keeps
// all four.
std::vector<std::string> analyzer_labels(int d, bool overcomplete);
Eigen::VectorXcd analyzer_ket(int d, const std::string& label);

struct MeasurementSetting {
  std::vector<std::string> labels;  // one per arm
  Eigen::VectorXcd ket;             // product analyzer ket, arm 0 slowest
};

struct MeasurementSet {
  int qudit_dim = 0;
  int arms = 0;
  bool overcomplete = false;
  std::vector<MeasurementSetting> settings;
};

// Cartesian product of per-arm analyzers; arm 0 varies slowest.
MeasurementSet measurement_set(int d, int arms, bool overcomplete);

// p_i = <a_i| rho |a_i>, clamped to [0, 1].
std::vector<double> born_probabilities(const DensityMatrix& rho,
                                       const MeasurementSet& set);

// Poisson draws with mean shots * p_i, one independent rate per setting,
// consumed sequentially from a single seeded stream.
std::vector<long long> simulate_counts(const std::vector<double>& probs,
                                       long long shots, std::uint64_t seed);
std::vector<long long> exact_counts(const std::vector<double>& probs, long long shots);

struct CountRecord {
  std::vector<std::string> labels;
  long long count = 0;
  long long shots = 0;
};

struct CountData {
  std::vector<int> dims;
  bool overcomplete = false;
  std::vector<CountRecord> records;
};

CountData simulate_experiment(const DensityMatrix& rho, const MeasurementSet& set,
                              long long shots, std::uint64_t seed);
CountData exact_experiment(const DensityMatrix& rho, const MeasurementSet& set,
                           long long shots);

// Rebuilds the canonical measurement set described by the count metadata and
// checks the records line up with it.
MeasurementSet measurement_set_for(const CountData& data);

enum class Objective { Poisson, LeastSquares };

struct MleOptions {
  Objective objective = Objective::Poisson;
  int max_iters = 50000;
  int restarts = 3;  // perturbed restarts beyond the warm-started run
  bool record_history = false;
};

struct MleReport {
  DensityMatrix rho;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  int restarts = 0;
  Objective objective = Objective::Poisson;
  int setting_count = 0;
  int design_rank = 0;
  std::vector<double> history;
};

// Maximum-likelihood reconstruction over the Cholesky-style parametrization
// rho = T^dag T / tr(T^dag T), T complex lower triangular (D^2 real params).
// Warm start comes from linear inversion projected back onto density matrices.
MleReport reconstruct_mle(const CountData& data, const MeasurementSet& set,
                          const MleOptions& opt = {});

}  // namespace qdl::tomo
