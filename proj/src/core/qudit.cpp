#include "core/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdl {

namespace {

void check_dims(const std::vector<int>& dims) {
  if (dims.empty()) throw std::invalid_argument("dims must be non-empty");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("each subsystem dimension must be >= 2");
}

// eigenvalues of a Hermitian matrix, ascending
VectorXd herm_eigenvalues(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue decomposition failed");
  return es.eigenvalues();
}

}  // namespace

int total_dim(const std::vector<int>& dims) {
  check_dims(dims);
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

StateVector make_state(VectorXcd amplitudes, std::vector<int> dims) {
  const int n = total_dim(dims);
  if (amplitudes.size() != n)
    throw std::invalid_argument("amplitude vector length " +
                                std::to_string(amplitudes.size()) +
                                " does not match dims product " + std::to_string(n));
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
    throw std::invalid_argument("state vector norm deviates from 1 beyond 1e-12");
  return StateVector{std::move(amplitudes), std::move(dims)};
}

StateVector normalized_state(VectorXcd amplitudes, std::vector<int> dims) {
  const double n = amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero vector");
  amplitudes /= n;
  return make_state(std::move(amplitudes), std::move(dims));
}

DensityMatrix make_density(MatrixXcd matrix, std::vector<int> dims) {
  const int n = total_dim(dims);
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::invalid_argument("density matrix must be " + std::to_string(n) + "x" +
                                std::to_string(n) + " for the given dims");
  const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol)
    throw std::invalid_argument("density matrix is not Hermitian within 1e-12");
  const double tr_err = std::abs(matrix.trace().real() - 1.0) +
                        std::abs(matrix.trace().imag());
  if (tr_err > kTraceTol)
    throw std::invalid_argument("density matrix trace deviates from 1 beyond 1e-10");
  const VectorXd ev = herm_eigenvalues(matrix);
  if (ev.minCoeff() < kEigFloor)
    throw std::invalid_argument("density matrix has an eigenvalue below -1e-10");
  return DensityMatrix{std::move(matrix), std::move(dims)};
}

DensityMatrix density_from_pure(const StateVector& psi) {
  MatrixXcd m = psi.amplitudes * psi.amplitudes.adjoint();
  return make_density(std::move(m), psi.dims);
}

DensityMatrix project_to_density(const MatrixXcd& matrix, const std::vector<int>& dims) {
  const int n = total_dim(dims);
  if (matrix.rows() != n || matrix.cols() != n)
    throw std::invalid_argument("matrix shape does not match dims");
  MatrixXcd h = 0.5 * (matrix + matrix.adjoint());
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue decomposition failed");
  VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double tr = ev.sum();
  if (tr < 1e-300) throw std::invalid_argument("matrix projects to zero");
  ev /= tr;
  MatrixXcd out = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint());
  return DensityMatrix{std::move(out), dims};
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

VectorXcd kron_vec(const VectorXcd& a, const VectorXcd& b) {
  VectorXcd out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

MatrixXcd psd_sqrt(const MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue decomposition failed");
  VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().adjoint();
}

MatrixXcd embed_at(const MatrixXcd& op, int subsystem, const std::vector<int>& dims) {
  check_dims(dims);
  if (subsystem < 0 || subsystem >= static_cast<int>(dims.size()))
    throw std::invalid_argument("subsystem index out of range");
  if (op.rows() != dims[subsystem] || op.cols() != dims[subsystem])
    throw std::invalid_argument("operator shape does not match subsystem dimension");
  MatrixXcd out = MatrixXcd::Identity(1, 1);
  for (size_t s = 0; s < dims.size(); ++s) {
    if (static_cast<int>(s) == subsystem)
      out = kron(out, op);
    else
      out = kron(out, MatrixXcd::Identity(dims[s], dims[s]));
  }
  return out;
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<int> dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  return make_density(kron(a.matrix, b.matrix), std::move(dims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  const auto& dims = rho.dims;
  if (dims.size() < 2)
    throw std::invalid_argument("partial trace requires at least two subsystems");
  if (keep < 0 || keep >= static_cast<int>(dims.size()))
    throw std::invalid_argument("keep index out of range");
  const int dk = dims[keep];
  // strides in the row-major mixed-radix layout
  std::vector<int> stride(dims.size());
  int acc = 1;
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= dims[s];
  }
  const int env = acc / dk;  // product of traced-out dimensions
  MatrixXcd out = MatrixXcd::Zero(dk, dk);
  // enumerate the traced-out multi-index directly
  std::vector<int> other_dims, other_stride;
  for (size_t s = 0; s < dims.size(); ++s)
    if (static_cast<int>(s) != keep) {
      other_dims.push_back(dims[s]);
      other_stride.push_back(stride[s]);
    }
  for (int m = 0; m < env; ++m) {
    int rem = m, base = 0;
    for (int s = static_cast<int>(other_dims.size()) - 1; s >= 0; --s) {
      base += (rem % other_dims[s]) * other_stride[s];
      rem /= other_dims[s];
    }
    for (int i = 0; i < dk; ++i)
      for (int j = 0; j < dk; ++j)
        out(i, j) += rho.matrix(base + i * stride[keep], base + j * stride[keep]);
  }
  out = 0.5 * (out + out.adjoint());
  return make_density(std::move(out), {dk});
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims != b.dims) throw std::invalid_argument("trace_distance: dims mismatch");
  const VectorXd ev = herm_eigenvalues(a.matrix - b.matrix);
  return 0.5 * ev.cwiseAbs().sum();
}

double root_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dims != b.dims) throw std::invalid_argument("fidelity: dims mismatch");
  const MatrixXcd sa = psd_sqrt(a.matrix);
  const MatrixXcd inner = sa * b.matrix * sa;
  const VectorXd ev = herm_eigenvalues(0.5 * (inner + inner.adjoint()));
  double f = ev.cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const double r = root_fidelity(a, b);
  return r * r;
}

double purity(const DensityMatrix& rho) { return rho.matrix.squaredNorm(); }

double linear_entropy(const DensityMatrix& rho) {
  const double n = static_cast<double>(rho.matrix.rows());
  const double sl = n / (n - 1.0) * (1.0 - purity(rho));
  return std::clamp(sl, 0.0, 1.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const VectorXd ev = herm_eigenvalues(rho.matrix);
  double s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double p = std::max(ev(i), 0.0);
    if (p > 0.0) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

DensityMatrix project_renormalize(const DensityMatrix& rho, const MatrixXcd& proj,
                                  int subsystem) {
  const MatrixXcd p = embed_at(proj, subsystem, rho.dims);
  MatrixXcd num = p * rho.matrix * p.adjoint();
  const double prob = num.trace().real();
  if (prob <= 1e-12)
    throw std::invalid_argument("projection has vanishing probability");
  num /= prob;
  num = 0.5 * (num + num.adjoint());
  return make_density(std::move(num), rho.dims);
}

DensityMatrix apply_subsystem_permutation(const DensityMatrix& rho, int subsystem,
                                          const std::vector<int>& perm) {
  if (subsystem < 0 || subsystem >= static_cast<int>(rho.dims.size()))
    throw std::invalid_argument("subsystem index out of range");
  const int d = rho.dims[subsystem];
  if (static_cast<int>(perm.size()) != d)
    throw std::invalid_argument("permutation length does not match subsystem dimension");
  std::vector<bool> seen(d, false);
  for (int v : perm) {
    if (v < 0 || v >= d || seen[v])
      throw std::invalid_argument("permutation is not a bijection on basis labels");
    seen[v] = true;
  }
  MatrixXcd u = MatrixXcd::Zero(d, d);
  for (int j = 0; j < d; ++j) u(perm[j], j) = 1.0;  // |j> -> |perm[j]>
  const MatrixXcd uf = embed_at(u, subsystem, rho.dims);
  MatrixXcd out = uf * rho.matrix * uf.adjoint();
  out = 0.5 * (out + out.adjoint());
  return make_density(std::move(out), rho.dims);
}

}  // namespace qdl
