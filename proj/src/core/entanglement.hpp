#pragma once

#include "core/qudit.hpp"

namespace qdl::ent {

// Two-qubit concurrence (Hermitian square-root construction) and its square.
double concurrence(const DensityMatrix& rho);
double tangle(const DensityMatrix& rho);

// Entropy of entanglement of a bipartite pure state: von Neumann entropy of
// the reduced state on `subsystem`, in bits.
double eof_pure(const StateVector& psi, int subsystem = 0);

// Average pure-state entanglement over the spectral decomposition. This is
// one admissible decomposition, so it upper-bounds the entanglement of
// formation.
double eof_upper_bound(const DensityMatrix& rho);

enum class NonMaxFamily { Qubit, Qutrit };

struct NonMaxFit {
  NonMaxFamily family = NonMaxFamily::Qubit;
  cxd epsilon = 0.0;
  double fidelity = 0.0;  // <psi(eps)| rho |psi(eps)>
};

// Best overlap with the one-parameter entangled family:
//   [2,2]: (|00> + eps|11>)/sqrt(1+|eps|^2)
//   [3,3]: (|02> + eps|11> + |20>)/sqrt(2+|eps|^2)
// Coarse modulus/phase grid followed by a simplex refinement.
NonMaxFit fit_nonmax_entangled(const DensityMatrix& rho);

}  // namespace qdl::ent
