#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

// Finite-dimensional quantum states on one or more qudits and the exact
// linear-algebraic operations everything else is built from. Subsystem
// ordering is row-major: the first subsystem varies slowest, so for dims
// {d1, d2} the basis index of |j,k> is j*d2 + k.

namespace qdl {

using cxd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// validation tolerances (internal; JSON loads accept 1e-6, see json_io)
inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigFloor = -1e-10;  // eigenvalues in [kEigFloor, 0) clamp to 0

struct StateVector {
  VectorXcd amplitudes;
  std::vector<int> dims;
};

struct DensityMatrix {
  MatrixXcd matrix;
  std::vector<int> dims;
};

int total_dim(const std::vector<int>& dims);

// validating constructors; throw std::invalid_argument on violation
StateVector make_state(VectorXcd amplitudes, std::vector<int> dims);
StateVector normalized_state(VectorXcd amplitudes, std::vector<int> dims);
DensityMatrix make_density(MatrixXcd matrix, std::vector<int> dims);
DensityMatrix density_from_pure(const StateVector& psi);

// Hermitize + clamp eigenvalues at 0 + renormalize trace; used to clean
// nearly-valid matrices (e.g. loaded from files) into exact validity.
DensityMatrix project_to_density(const MatrixXcd& matrix, const std::vector<int>& dims);

// basic building blocks
MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b);
VectorXcd kron_vec(const VectorXcd& a, const VectorXcd& b);
MatrixXcd psd_sqrt(const MatrixXcd& m);  // principal sqrt of a PSD Hermitian matrix
MatrixXcd embed_at(const MatrixXcd& op, int subsystem, const std::vector<int>& dims);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace(const DensityMatrix& rho, int keep);

// distance and overlap measures
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double root_fidelity(const DensityMatrix& a, const DensityMatrix& b);  // Tr sqrt(sqrt(a) b sqrt(a))
double fidelity(const DensityMatrix& a, const DensityMatrix& b);       // squared convention

// entropies
double purity(const DensityMatrix& rho);          // Tr rho^2
double linear_entropy(const DensityMatrix& rho);  // D/(D-1) (1 - Tr rho^2)
double von_neumann_entropy(const DensityMatrix& rho);  // base 2

// conditioning
DensityMatrix project_renormalize(const DensityMatrix& rho, const MatrixXcd& proj,
                                  int subsystem);
DensityMatrix apply_subsystem_permutation(const DensityMatrix& rho, int subsystem,
                                          const std::vector<int>& perm);

}  // namespace qdl
