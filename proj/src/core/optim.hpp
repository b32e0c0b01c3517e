#pragma once

#include <functional>
#include <vector>

namespace qdl::optim {

struct SimplexOptions {
  int max_iters = 50000;
  // converged when the best value improves by less than
  // stall_improvement * (1 + |best|) over stall_window iterations
  double stall_improvement = 1e-8;
  int stall_window = 100;
  bool record_history = false;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // best value per iteration when recorded
};

// Downhill simplex (minimizes) with dimension-adaptive expansion/contraction
// coefficients. The initial simplex perturbs each coordinate by 5% (0.00025
// for exact zeros), matching the common fminsearch construction.
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const SimplexOptions& opt = {});

// Maximizes a unimodal function on [lo, hi]; returns the abscissa.
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-6);

}  // namespace qdl::optim
