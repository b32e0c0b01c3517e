#include "core/tomography.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/SVD>

#include "core/optim.hpp"

namespace qdl::tomo {

namespace {

constexpr double kProbFloor = 1e-12;
constexpr double kLsFloor = 1e-9;
constexpr double kRankTol = 1e-8;

void check_dim(int d) {
  if (d < 2) throw std::invalid_argument("analyzer dimension must be at least 2");
}

// uniform in (0, 1], portable across standard library implementations
double next_uniform(std::mt19937_64& rng) {
  return ((rng() >> 11) + 1.0) * 0x1.0p-53;
}

double next_normal(std::mt19937_64& rng) {
  const double u1 = next_uniform(rng);
  const double u2 = next_uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.1415926535897932384626433832795 * u2);
}

long long poisson_draw(double mean, std::mt19937_64& rng) {
  if (mean <= 0.0) return 0;
  long long count = 0;
  double acc = -std::log(next_uniform(rng));
  while (acc <= mean) {
    ++count;
    acc += -std::log(next_uniform(rng));
  }
  return count;
}

std::vector<double> params_from_T(const Eigen::MatrixXcd& T) {
  const int D = static_cast<int>(T.rows());
  std::vector<double> th;
  th.reserve(static_cast<size_t>(D) * D);
  for (int j = 0; j < D; ++j) th.push_back(T(j, j).real());
  for (int r = 1; r < D; ++r)
    for (int c = 0; c < r; ++c) {
      th.push_back(T(r, c).real());
      th.push_back(T(r, c).imag());
    }
  return th;
}

Eigen::MatrixXcd T_from_params(const std::vector<double>& th, int D) {
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(D, D);
  for (int j = 0; j < D; ++j) T(j, j) = th[j];
  size_t k = D;
  for (int r = 1; r < D; ++r)
    for (int c = 0; c < r; ++c) {
      T(r, c) = cxd(th[k], th[k + 1]);
      k += 2;
    }
  return T;
}

// Lower-triangular T with T^dag T = rho, via Cholesky of the index-reversed
// matrix. Requires rho positive definite.
Eigen::MatrixXcd reverse_cholesky(const Eigen::MatrixXcd& rho) {
  const int D = static_cast<int>(rho.rows());
  Eigen::MatrixXcd P(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) P(i, j) = rho(D - 1 - i, D - 1 - j);
  Eigen::LLT<Eigen::MatrixXcd> llt(P);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("reverse Cholesky failed on warm-start state");
  const Eigen::MatrixXcd M = llt.matrixL();
  Eigen::MatrixXcd U(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) U(i, j) = M(D - 1 - i, D - 1 - j);
  return U.adjoint();
}

}  // namespace

std::vector<std::string> analyzer_labels(int d, bool overcomplete) {
  check_dim(d);
  std::vector<std::string> out;
  for (int j = 0; j < d; ++j) out.push_back("b" + std::to_string(j));
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      const std::string jk = std::to_string(j) + std::to_string(k);
      out.push_back("p+" + jk);
      if (overcomplete) out.push_back("p-" + jk);
      out.push_back("q+" + jk);
      if (overcomplete) out.push_back("q-" + jk);
    }
  return out;
}

Eigen::VectorXcd analyzer_ket(int d, const std::string& label) {
  check_dim(d);
  const auto bad = [&] {
    return std::invalid_argument("bad analyzer label for dimension " +
                                 std::to_string(d) + ": " + label);
  };
  if (label.size() >= 2 && label[0] == 'b') {
    int j = 0;
    for (size_t i = 1; i < label.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(label[i]))) throw bad();
      j = 10 * j + (label[i] - '0');
    }
    if (j >= d) throw bad();
    Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(d);
    ket(j) = 1.0;
    return ket;
  }
  if (label.size() == 4 && (label[0] == 'p' || label[0] == 'q') &&
      (label[1] == '+' || label[1] == '-') &&
      std::isdigit(static_cast<unsigned char>(label[2])) &&
      std::isdigit(static_cast<unsigned char>(label[3]))) {
    const int j = label[2] - '0';
    const int k = label[3] - '0';
    if (j >= k || k >= d) throw bad();
    const double sign = label[1] == '+' ? 1.0 : -1.0;
    const cxd second = label[0] == 'p' ? cxd(sign, 0.0) : cxd(0.0, sign);
    Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(d);
    ket(j) = 1.0 / std::sqrt(2.0);
    ket(k) = second / std::sqrt(2.0);
    return ket;
  }
  throw bad();
}

MeasurementSet measurement_set(int d, int arms, bool overcomplete) {
  check_dim(d);
  if (arms < 1 || arms > 2)
    throw std::invalid_argument("measurement_set supports 1 or 2 arms");
  const auto labels = analyzer_labels(d, overcomplete);
  std::vector<Eigen::VectorXcd> kets;
  kets.reserve(labels.size());
  for (const auto& l : labels) kets.push_back(analyzer_ket(d, l));

  MeasurementSet set;
  set.qudit_dim = d;
  set.arms = arms;
  set.overcomplete = overcomplete;
  if (arms == 1) {
    for (size_t i = 0; i < labels.size(); ++i)
      set.settings.push_back({{labels[i]}, kets[i]});
  } else {
    for (size_t i = 0; i < labels.size(); ++i)
      for (size_t j = 0; j < labels.size(); ++j)
        set.settings.push_back({{labels[i], labels[j]}, kron(kets[i], kets[j])});
  }
  return set;
}

std::vector<double> born_probabilities(const DensityMatrix& rho,
                                       const MeasurementSet& set) {
  if (set.settings.empty()) throw std::invalid_argument("empty measurement set");
  if (rho.matrix.rows() != set.settings.front().ket.size())
    throw std::invalid_argument("state dimension does not match measurement set");
  std::vector<double> probs;
  probs.reserve(set.settings.size());
  for (const auto& s : set.settings) {
    const double p = (s.ket.adjoint() * rho.matrix * s.ket).value().real();
    probs.push_back(std::clamp(p, 0.0, 1.0));
  }
  return probs;
}

std::vector<long long> simulate_counts(const std::vector<double>& probs,
                                       long long shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  std::mt19937_64 rng(seed);
  std::vector<long long> counts;
  counts.reserve(probs.size());
  for (const double p : probs)
    counts.push_back(poisson_draw(static_cast<double>(shots) * p, rng));
  return counts;
}

std::vector<long long> exact_counts(const std::vector<double>& probs, long long shots) {
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
  std::vector<long long> counts;
  counts.reserve(probs.size());
  for (const double p : probs)
    counts.push_back(std::llround(static_cast<double>(shots) * p));
  return counts;
}

namespace {

CountData experiment(const DensityMatrix& rho, const MeasurementSet& set,
                     long long shots, const std::vector<long long>& counts) {
  CountData data;
  data.dims = rho.dims;
  data.overcomplete = set.overcomplete;
  data.records.reserve(counts.size());
  for (size_t i = 0; i < counts.size(); ++i)
    data.records.push_back({set.settings[i].labels, counts[i], shots});
  return data;
}

}  // namespace

CountData simulate_experiment(const DensityMatrix& rho, const MeasurementSet& set,
                              long long shots, std::uint64_t seed) {
  return experiment(rho, set, shots,
                    simulate_counts(born_probabilities(rho, set), shots, seed));
}

CountData exact_experiment(const DensityMatrix& rho, const MeasurementSet& set,
                           long long shots) {
  return experiment(rho, set, shots,
                    exact_counts(born_probabilities(rho, set), shots));
}

MeasurementSet measurement_set_for(const CountData& data) {
  if (data.dims.empty() || data.dims.size() > 2)
    throw std::invalid_argument("count data must describe 1 or 2 arms");
  const int d = data.dims.front();
  for (const int dim : data.dims)
    if (dim != d)
      throw std::invalid_argument("count data arms must share one dimension");
  MeasurementSet set = measurement_set(d, static_cast<int>(data.dims.size()),
                                       data.overcomplete);
  if (data.records.size() != set.settings.size())
    throw std::invalid_argument("count data does not match the canonical setting list");
  for (size_t i = 0; i < set.settings.size(); ++i)
    if (data.records[i].labels != set.settings[i].labels)
      throw std::invalid_argument("count record " + std::to_string(i) +
                                  " is out of canonical order");
  return set;
}

MleReport reconstruct_mle(const CountData& data, const MeasurementSet& set,
                          const MleOptions& opt) {
  const size_t M = set.settings.size();
  if (data.records.size() != M)
    throw std::invalid_argument("count records do not match measurement settings");
  const int D = static_cast<int>(set.settings.front().ket.size());
  const int P = D * D;

  Eigen::MatrixXcd A(D, M);
  Eigen::VectorXd counts(M), shots(M);
  for (size_t i = 0; i < M; ++i) {
    const auto& rec = data.records[i];
    if (rec.labels != set.settings[i].labels)
      throw std::invalid_argument("count record " + std::to_string(i) +
                                  " does not match its measurement setting");
    if (rec.count < 0) throw std::invalid_argument("counts must be non-negative");
    if (rec.shots <= 0) throw std::invalid_argument("record shots must be positive");
    A.col(i) = set.settings[i].ket;
    counts(i) = static_cast<double>(rec.count);
    shots(i) = static_cast<double>(rec.shots);
  }

  // Real design matrix over (diagonal, then re/im per lower off-diagonal).
  Eigen::MatrixXd design(M, P);
  for (size_t i = 0; i < M; ++i) {
    const auto& a = set.settings[i].ket;
    for (int j = 0; j < D; ++j) design(i, j) = std::norm(a(j));
    int col = D;
    for (int r = 1; r < D; ++r)
      for (int c = 0; c < r; ++c) {
        const cxd z = std::conj(a(r)) * a(c);
        design(i, col++) = 2.0 * z.real();
        design(i, col++) = -2.0 * z.imag();
      }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTol * sv(0)) ++rank;
  if (rank < P)
    throw std::runtime_error("measurement set cannot identify the state: design rank " +
                             std::to_string(rank) + " < " + std::to_string(P));

  // Linear inversion warm start, projected back onto density matrices.
  const Eigen::VectorXd freq = counts.array() / shots.array();
  const Eigen::VectorXd theta = svd.solve(freq);
  Eigen::MatrixXcd lin = Eigen::MatrixXcd::Zero(D, D);
  for (int j = 0; j < D; ++j) lin(j, j) = theta(j);
  int col = D;
  for (int r = 1; r < D; ++r)
    for (int c = 0; c < r; ++c) {
      lin(r, c) = cxd(theta(col), theta(col + 1));
      lin(c, r) = std::conj(lin(r, c));
      col += 2;
    }
  DensityMatrix warm = project_to_density(lin, data.dims);
  constexpr double kBlend = 1e-6;
  Eigen::MatrixXcd blended =
      (1.0 - kBlend) * warm.matrix +
      kBlend / D * Eigen::MatrixXcd::Identity(D, D);
  const std::vector<double> x0 = params_from_T(reverse_cholesky(blended));

  const auto objective = [&](const std::vector<double>& th) {
    const Eigen::MatrixXcd T = T_from_params(th, D);
    const double fro2 = T.squaredNorm();
    if (fro2 < 1e-300) return 1e300;
    const Eigen::MatrixXcd B = T * A;
    double total = 0.0;
    for (size_t i = 0; i < M; ++i) {
      const double p = std::max(B.col(i).squaredNorm() / fro2, kProbFloor);
      const double mu = shots(i) * p;
      if (opt.objective == Objective::Poisson)
        total += mu - counts(i) * std::log(mu);
      else
        total += (mu - counts(i)) * (mu - counts(i)) / std::max(mu, kLsFloor);
    }
    return total;
  };

  optim::SimplexOptions sopt;
  sopt.max_iters = opt.max_iters;
  sopt.record_history = opt.record_history;

  optim::SimplexResult best = optim::nelder_mead(objective, x0, sopt);
  double span = 0.0;
  for (const double v : x0) span = std::max(span, std::abs(v));
  for (int r = 0; r < opt.restarts; ++r) {
    std::mt19937_64 rng(9000 + static_cast<std::uint64_t>(r));
    std::vector<double> xp = x0;
    const double sigma = 0.02 * (1.0 + span);
    for (double& v : xp) v += sigma * next_normal(rng);
    optim::SimplexResult run = optim::nelder_mead(objective, xp, sopt);
    if (run.value < best.value) best = std::move(run);
  }

  const Eigen::MatrixXcd T = T_from_params(best.x, D);
  Eigen::MatrixXcd rho = T.adjoint() * T;
  rho /= rho.trace().real();
  rho = ((rho + rho.adjoint()) / 2.0).eval();

  MleReport report;
  report.rho = DensityMatrix{rho, data.dims};
  report.objective_value = best.value;
  report.iterations = best.iterations;
  report.converged = best.converged;
  report.restarts = opt.restarts;
  report.objective = opt.objective;
  report.setting_count = static_cast<int>(M);
  report.design_rank = rank;
  report.history = std::move(best.history);
  return report;
}

}  // namespace qdl::tomo
