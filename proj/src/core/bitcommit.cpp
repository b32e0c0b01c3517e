#include "core/bitcommit.hpp"

#include <cmath>
#include <stdexcept>

#include "core/optim.hpp"
#include "core/states.hpp"

namespace qdl::bc {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw std::invalid_argument("lambda must lie in [0, 1]");
}

void check_bit(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("bit must be 0 or 1");
}

}  // namespace

std::pair<StateVector, StateVector> logical_states(double lambda, double phi) {
  check_lambda(lambda);
  const cxd heavy = std::polar(std::sqrt(1.0 - lambda), phi);
  const double light = std::sqrt(lambda);
  Eigen::VectorXcd a0 = Eigen::VectorXcd::Zero(9);
  a0(5) = light;  // |12>
  a0(1) = heavy;  // |01>
  Eigen::VectorXcd a1 = Eigen::VectorXcd::Zero(9);
  a1(7) = heavy;  // |21>
  a1(3) = light;  // |10>
  return {StateVector{a0, {3, 3}}, StateVector{a1, {3, 3}}};
}

DensityMatrix prepare_logical(const DensityMatrix& source, int bit) {
  check_bit(bit);
  if (source.dims != std::vector<int>{3, 3})
    throw std::invalid_argument("source must be a two-qutrit state");
  Eigen::MatrixXcd filter = Eigen::MatrixXcd::Identity(3, 3);
  filter(bit == 0 ? 2 : 0, bit == 0 ? 2 : 0) = 0.0;
  DensityMatrix filtered = project_renormalize(source, filter, 0);
  const std::vector<int> perm =
      bit == 0 ? std::vector<int>{1, 0, 2} : std::vector<int>{0, 2, 1};
  return apply_subsystem_permutation(filtered, 0, perm);
}

DensityMatrix token_from_logical(const DensityMatrix& logical) {
  if (logical.dims.size() != 2)
    throw std::invalid_argument("logical state must have two arms");
  return partial_trace(logical, 1);
}

DensityMatrix ideal_token(double lambda, int bit) {
  check_lambda(lambda);
  check_bit(bit);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m(1, 1) = 1.0 - lambda;
  m(bit == 0 ? 2 : 0, bit == 0 ? 2 : 0) = lambda;
  return DensityMatrix{m, {3}};
}

double knowledge_gain(const DensityMatrix& token0, const DensityMatrix& token1) {
  return trace_distance(token0, token1) / 2.0;
}

double control(const DensityMatrix& token0, const DensityMatrix& token1) {
  return root_fidelity(token0, token1) / 2.0;
}

bool inside_qubit_region(double k, double c) {
  return 2.0 * k + 4.0 * c * c >= 1.0;
}

namespace {

CurvePoint measure_pair(const std::string& curve, double param,
                        const DensityMatrix& t0, const DensityMatrix& t1) {
  return CurvePoint{curve, param, knowledge_gain(t0, t1), control(t0, t1)};
}

}  // namespace

std::vector<CurvePoint> security_curves() {
  std::vector<CurvePoint> pts;
  pts.reserve(101 + 3 * 51);
  for (int i = 0; i <= 100; ++i) {
    const double lambda = i / 100.0;
    const auto [l0, l1] = logical_states(lambda, 0.0);
    pts.push_back(measure_pair("W", lambda,
                               token_from_logical(density_from_pure(l0)),
                               token_from_logical(density_from_pure(l1))));
  }
  for (int i = 0; i <= 50; ++i) {
    const double l = i / 100.0;
    Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(2, 2);
    m0(0, 0) = l;
    m0(1, 1) = 1.0 - l;
    Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(2, 2);
    m1(0, 0) = 1.0 - l;
    m1(1, 1) = l;
    pts.push_back(measure_pair("X", l, DensityMatrix{m0, {2}},
                               DensityMatrix{m1, {2}}));
  }
  for (const double lambda : {0.5, 0.27}) {
    const std::string name = lambda == 0.5 ? "Y" : "Z";
    for (int i = 0; i <= 50; ++i) {
      const double p = i / 100.0;
      pts.push_back(measure_pair(name, p,
                                 depolarize(ideal_token(lambda, 0), p),
                                 depolarize(ideal_token(lambda, 1), p)));
    }
  }
  return pts;
}

SecurityReport analyze_source(const DensityMatrix& source) {
  SecurityReport rep;
  rep.token0 = token_from_logical(prepare_logical(source, 0));
  rep.token1 = token_from_logical(prepare_logical(source, 1));
  rep.k = knowledge_gain(rep.token0, rep.token1);
  rep.c = control(rep.token0, rep.token1);
  rep.lambda_fit = optim::golden_section_max(
      [&](double lambda) {
        return (root_fidelity(rep.token0, ideal_token(lambda, 0)) +
                root_fidelity(rep.token1, ideal_token(lambda, 1))) /
               2.0;
      },
      0.0, 1.0, 1e-6);
  rep.token_fidelity0 = root_fidelity(rep.token0, ideal_token(rep.lambda_fit, 0));
  rep.token_fidelity1 = root_fidelity(rep.token1, ideal_token(rep.lambda_fit, 1));
  rep.residual0 = rep.token0.matrix(0, 0).real();
  rep.residual1 = rep.token1.matrix(2, 2).real();
  rep.inside_qubit_region = inside_qubit_region(rep.k, rep.c);
  return rep;
}

std::pair<DensityMatrix, DensityMatrix> residual_tokens(double lambda, double r) {
  check_lambda(lambda);
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("residual weight must lie in [0, 1]");
  Eigen::MatrixXcd m0 = Eigen::MatrixXcd::Zero(3, 3);
  m0(0, 0) = r;
  m0(1, 1) = (1.0 - r) * (1.0 - lambda);
  m0(2, 2) = (1.0 - r) * lambda;
  Eigen::MatrixXcd m1 = Eigen::MatrixXcd::Zero(3, 3);
  m1(0, 0) = (1.0 - r) * lambda;
  m1(1, 1) = (1.0 - r) * (1.0 - lambda);
  m1(2, 2) = r;
  return {DensityMatrix{m0, {3}}, DensityMatrix{m1, {3}}};
}

double residual_threshold(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("residual_threshold needs lambda strictly inside (0, 1)");
  const auto excess = [&](double r) {
    const auto [t0, t1] = residual_tokens(lambda, r);
    const double k = knowledge_gain(t0, t1);
    const double c = control(t0, t1);
    return 2.0 * k + 4.0 * c * c - 1.0;
  };
  constexpr int kSteps = 512;
  constexpr double kSpan = 0.5;
  double lo = 0.0, flo = excess(0.0);
  if (flo >= 0.0) return 0.0;
  double hi = -1.0;
  for (int i = 1; i <= kSteps; ++i) {
    const double r = kSpan * i / kSteps;
    const double fr = excess(r);
    if (fr >= 0.0) {
      hi = r;
      break;
    }
    lo = r;
    flo = fr;
  }
  if (hi < 0.0)
    throw std::runtime_error(
        "residual model never re-enters the qubit region on [0, 1/2]");
  while (hi - lo > 1e-6) {
    const double mid = (lo + hi) / 2.0;
    if (excess(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace qdl::bc
