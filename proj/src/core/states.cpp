#include "core/states.hpp"

#include <cmath>
#include <stdexcept>

namespace qdl {

StateVector max_entangled_pair(int d) {
  if (d < 2) throw std::invalid_argument("max_entangled_pair: d must be >= 2");
  VectorXcd amps = VectorXcd::Zero(d * d);
  for (int j = 0; j < d; ++j) amps(j * d + j) = 1.0;
  return normalized_state(std::move(amps), {d, d});
}

StateVector nonmax_qubit_pair(cxd eps) {
  VectorXcd amps = VectorXcd::Zero(4);
  amps(0) = 1.0;   // |00>
  amps(3) = eps;   // |11>
  return normalized_state(std::move(amps), {2, 2});
}

StateVector nonmax_qutrit_pair(cxd eps) {
  VectorXcd amps = VectorXcd::Zero(9);
  amps(2) = 1.0;   // |02>
  amps(4) = eps;   // |11>
  amps(6) = 1.0;   // |20>
  return normalized_state(std::move(amps), {3, 3});
}

DensityMatrix maximally_mixed(std::vector<int> dims) {
  const int n = total_dim(dims);
  MatrixXcd m = MatrixXcd::Identity(n, n) / static_cast<double>(n);
  return make_density(std::move(m), std::move(dims));
}

DensityMatrix depolarize(const DensityMatrix& rho, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarize: p must lie in [0,1]");
  const int n = static_cast<int>(rho.matrix.rows());
  MatrixXcd m = (1.0 - p) * rho.matrix +
                (p / n) * MatrixXcd::Identity(n, n);
  return make_density(std::move(m), rho.dims);
}

DensityMatrix mix_to_linear_entropy(const DensityMatrix& rho, double target) {
  if (target < 0.0 || target > 1.0)
    throw std::invalid_argument("mix_to_linear_entropy: target must lie in [0,1]");
  const double n = static_cast<double>(rho.matrix.rows());
  const double p_now = purity(rho);
  const double p_target = 1.0 - (n - 1.0) / n * target;
  const double a = p_now - 1.0 / n;
  if (a < 1e-14) {
    if (std::abs(p_target - p_now) < 1e-12) return rho;
    throw std::invalid_argument("state is already maximally mixed; target unreachable");
  }
  const double ratio = (p_now - p_target) / a;
  if (ratio < -1e-12)
    throw std::invalid_argument("target linear entropy is below the current value");
  if (ratio > 1.0 + 1e-12)
    throw std::invalid_argument("target linear entropy exceeds the maximally mixed limit");
  const double w = 1.0 - std::sqrt(std::max(0.0, 1.0 - ratio));
  const int d = static_cast<int>(n);
  MatrixXcd m = (1.0 - w) * rho.matrix +
                (w / n) * MatrixXcd::Identity(d, d);
  return make_density(std::move(m), rho.dims);
}

}  // namespace qdl
