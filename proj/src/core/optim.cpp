#include "core/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qdl::optim {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& x0, const SimplexOptions& opt) {
  const int n = static_cast<int>(x0.size());
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one parameter");

  // Gao & Han adaptive coefficients
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / n;
  const double gamma = 0.75 - 1.0 / (2.0 * n);
  const double delta = 1.0 - 1.0 / n;

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (int i = 0; i < n; ++i) {
    double& xi = simplex[i + 1][i];
    xi = xi != 0.0 ? 1.05 * xi : 0.00025;
  }
  std::vector<double> fv(n + 1);
  for (int i = 0; i <= n; ++i) fv[i] = f(simplex[i]);

  std::vector<int> order(n + 1);
  const auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    for (int i = 0; i <= n; ++i) {
      s2[i] = std::move(simplex[order[i]]);
      f2[i] = fv[order[i]];
    }
    simplex = std::move(s2);
    fv = std::move(f2);
  };
  sort_simplex();

  SimplexResult res;
  if (opt.record_history) res.history.reserve(1024);
  double window_best = fv[0];
  int window_anchor = 0;

  std::vector<double> centroid(n), cand(n);
  const auto affine = [&](double t, const std::vector<double>& worst) {
    for (int j = 0; j < n; ++j) cand[j] = centroid[j] + t * (centroid[j] - worst[j]);
    return f(cand);
  };

  int iter = 0;
  for (; iter < opt.max_iters; ++iter) {
    if (opt.record_history) res.history.push_back(fv[0]);
    if (iter - window_anchor >= opt.stall_window) {
      if (window_best - fv[0] <
          opt.stall_improvement * (1.0 + std::abs(fv[0]))) {
        res.converged = true;
        break;
      }
      window_best = fv[0];
      window_anchor = iter;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j] / n;
    const std::vector<double>& worst = simplex[n];

    const double fr = affine(alpha, worst);
    if (fr < fv[0]) {
      const std::vector<double> xr = cand;
      const double fe = affine(beta, worst);
      if (fe < fr) {
        simplex[n] = cand;
        fv[n] = fe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
      }
    } else if (fr < fv[n - 1]) {
      simplex[n] = cand;
      fv[n] = fr;
    } else {
      bool shrink = false;
      if (fr < fv[n]) {
        const double fc = affine(alpha * gamma, worst);
        if (fc <= fr) {
          simplex[n] = cand;
          fv[n] = fc;
        } else {
          shrink = true;
        }
      } else {
        const double fc = affine(-gamma, worst);
        if (fc < fv[n]) {
          simplex[n] = cand;
          fv[n] = fc;
        } else {
          shrink = true;
        }
      }
      if (shrink) {
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j)
            simplex[i][j] = simplex[0][j] + delta * (simplex[i][j] - simplex[0][j]);
          fv[i] = f(simplex[i]);
        }
      }
    }
    sort_simplex();
  }

  res.x = simplex[0];
  res.value = fv[0];
  res.iterations = iter;
  return res;
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  if (!(hi > lo)) throw std::invalid_argument("golden_section_max needs lo < hi");
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace qdl::optim
