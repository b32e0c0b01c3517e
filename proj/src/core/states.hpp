#pragma once

#include "core/qudit.hpp"

// Named two-qudit states used across the toolkit, plus simple noise models.

namespace qdl {

// (|00> + |11> + ... + |d-1,d-1>)/sqrt(d) on dims {d, d}
StateVector max_entangled_pair(int d);

// (|00> + eps |11>)/sqrt(1 + |eps|^2) on dims {2, 2}
StateVector nonmax_qubit_pair(cxd eps);

// (|02> + eps |11> + |20>)/sqrt(2 + |eps|^2) on dims {3, 3}
StateVector nonmax_qutrit_pair(cxd eps);

DensityMatrix maximally_mixed(std::vector<int> dims);

// (1-p) rho + p I/D
DensityMatrix depolarize(const DensityMatrix& rho, double p);

// Admix white noise w I/D + (1-w) rho with the smallest w >= 0 that reaches
// the requested linear entropy. Rejects targets below the current value or
// above the maximally mixed limit.
DensityMatrix mix_to_linear_entropy(const DensityMatrix& rho, double target);

}  // namespace qdl
