#include "core/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/optim.hpp"
#include "core/states.hpp"

namespace qdl::ent {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841971693993751;

void require_two_qubits(const DensityMatrix& rho) {
  if (rho.dims != std::vector<int>{2, 2})
    throw std::invalid_argument("concurrence is defined for two qubits only");
}

Eigen::Matrix4cd spin_flip() {
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  return yy;
}

}  // namespace

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho);
  const Eigen::Matrix4cd yy = spin_flip();
  const Eigen::MatrixXcd root = psd_sqrt(rho.matrix);
  const Eigen::Matrix4cd tilde = yy * rho.matrix.conjugate() * yy;
  Eigen::Matrix4cd herm = root * tilde * root;
  herm = (herm + herm.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(herm);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("concurrence eigensolver failed");
  Eigen::Vector4d mu;
  for (int i = 0; i < 4; ++i) mu(i) = std::sqrt(std::max(es.eigenvalues()(i), 0.0));
  std::sort(mu.data(), mu.data() + 4, std::greater<double>());
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double tangle(const DensityMatrix& rho) {
  const double c = concurrence(rho);
  return c * c;
}

double eof_pure(const StateVector& psi, int subsystem) {
  if (psi.dims.size() != 2)
    throw std::invalid_argument("eof_pure expects a two-part state");
  if (subsystem < 0 || subsystem > 1)
    throw std::invalid_argument("subsystem must be 0 or 1");
  const DensityMatrix reduced = partial_trace(density_from_pure(psi), subsystem);
  return von_neumann_entropy(reduced);
}

double eof_upper_bound(const DensityMatrix& rho) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("eof_upper_bound expects a two-part state");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      ((rho.matrix + rho.matrix.adjoint()) / 2.0).eval());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eof_upper_bound eigensolver failed");
  double total = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w <= 1e-12) continue;
    StateVector v;
    v.amplitudes = es.eigenvectors().col(i);
    v.dims = rho.dims;
    total += w * eof_pure(v);
  }
  return total;
}

namespace {

StateVector family_state(NonMaxFamily family, cxd eps) {
  return family == NonMaxFamily::Qubit ? nonmax_qubit_pair(eps)
                                       : nonmax_qutrit_pair(eps);
}

double family_fidelity(const DensityMatrix& rho, NonMaxFamily family, cxd eps) {
  const StateVector psi = family_state(family, eps);
  return std::real(
      (psi.amplitudes.adjoint() * rho.matrix * psi.amplitudes).value());
}

}  // namespace

NonMaxFit fit_nonmax_entangled(const DensityMatrix& rho) {
  NonMaxFamily family;
  if (rho.dims == std::vector<int>{2, 2})
    family = NonMaxFamily::Qubit;
  else if (rho.dims == std::vector<int>{3, 3})
    family = NonMaxFamily::Qutrit;
  else
    throw std::invalid_argument(
        "fit_nonmax_entangled expects dims [2,2] or [3,3]");

  // 50 moduli in [0, 5] by 72 phases in [-pi, pi); deterministic tie-breaks.
  cxd best_eps = 0.0;
  double best_f = -1.0;
  for (int i = 0; i < 50; ++i) {
    const double mod = 5.0 * i / 49.0;
    for (int j = 0; j < 72; ++j) {
      const double arg = -kPi + 2.0 * kPi * j / 72.0;
      const cxd eps = std::polar(mod, arg);
      const double f = family_fidelity(rho, family, eps);
      bool better = f > best_f + 1e-15;
      if (!better && std::abs(f - best_f) <= 1e-15) {
        if (mod < std::abs(best_eps) - 1e-15)
          better = true;
        else if (std::abs(mod - std::abs(best_eps)) <= 1e-15) {
          const double ba = std::arg(best_eps);
          if (std::abs(arg) < std::abs(ba) - 1e-15)
            better = true;
          else if (std::abs(std::abs(arg) - std::abs(ba)) <= 1e-15 && arg < ba)
            better = true;
        }
      }
      if (better) {
        best_f = f;
        best_eps = eps;
      }
    }
  }

  const auto neg_f = [&](const std::vector<double>& x) {
    return -family_fidelity(rho, family, cxd(x[0], x[1]));
  };
  optim::SimplexOptions sopt;
  sopt.max_iters = 20000;
  const optim::SimplexResult run =
      optim::nelder_mead(neg_f, {best_eps.real(), best_eps.imag()}, sopt);

  NonMaxFit fit;
  fit.family = family;
  // keep the grid point unless the local search gains more than rounding
  // noise, so flat landscapes return the unperturbed grid optimum
  if (-run.value > best_f + 1e-12) {
    fit.epsilon = cxd(run.x[0], run.x[1]);
    fit.fidelity = -run.value;
  } else {
    fit.epsilon = best_eps;
    fit.fidelity = best_f;
  }
  return fit;
}

}  // namespace qdl::ent
