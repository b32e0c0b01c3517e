#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/qudit.hpp"

namespace qdl::bc {

// Logical commitments on two qutrits, lambda in [0,1], phase phi on the
// heavier branch:
//   |0>_L = sqrt(lambda)|12> + e^{i phi} sqrt(1-lambda)|01>
//   |1>_L = e^{i phi} sqrt(1-lambda)|21> + sqrt(lambda)|10>
std::pair<StateVector, StateVector> logical_states(double lambda, double phi);

// Commits a bit from a shared two-qutrit source: a local filter on arm 0
// followed by a relabeling of arm 0.
//   bit 0: keep arm-0 components 0,1 then swap 0<->1
//   bit 1: keep arm-0 components 1,2 then swap 1<->2
DensityMatrix prepare_logical(const DensityMatrix& source, int bit);

// The token handed over is arm 1 of the logical state.
DensityMatrix token_from_logical(const DensityMatrix& logical);

// Tokens of the exact logical states: diag(0, 1-lambda, lambda) for bit 0
// and diag(lambda, 1-lambda, 0) for bit 1.
DensityMatrix ideal_token(double lambda, int bit);

// Receiver's distinguishability and sender's steering overlap, both halved
// so the ideal family lands on (lambda/2, (1-lambda)/2).
double knowledge_gain(const DensityMatrix& token0, const DensityMatrix& token1);
double control(const DensityMatrix& token0, const DensityMatrix& token1);

// Qubit protocols with token pairs diag(a, 1-a) / diag(1-a, a) trace out the
// frontier 2K + 4C^2 = 1; a (K, C) pair at or above it is reachable with
// qubits alone.
bool inside_qubit_region(double k, double c);

struct CurvePoint {
  std::string curve;
  double param;
  double k = 0.0;
  double c = 0.0;
};

// Reference curves, each computed through the token pipeline:
//   W: ideal qutrit family, lambda = i/100, i = 0..100
//   X: mirrored qubit family diag(l,1-l)/diag(1-l,l), l = i/100, i = 0..50
//   Y: depolarized qutrit tokens at lambda = 0.5, p = i/100, i = 0..50
//   Z: same at lambda = 0.27
std::vector<CurvePoint> security_curves();

struct SecurityReport {
  DensityMatrix token0;
  DensityMatrix token1;
  double k = 0.0;
  double c = 0.0;
  double lambda_fit = 0.0;
  double token_fidelity0 = 0.0;  // sqrt-fidelity against ideal_token(lambda_fit, b)
  double token_fidelity1 = 0.0;
  double residual0 = 0.0;  // <0|token0|0>
  double residual1 = 0.0;  // <2|token1|2>
  bool inside_qubit_region = false;
};

// Full security analysis of a candidate two-qutrit source state.
SecurityReport analyze_source(const DensityMatrix& source);

// Token pair with a fraction r of the weight moved onto the component that
// ideally stays empty.
std::pair<DensityMatrix, DensityMatrix> residual_tokens(double lambda, double r);

// Smallest residual weight at which the token pair stops beating every qubit
// protocol. Bisection to 1e-6 after a sign sweep over r in [0, 1/2].
double residual_threshold(double lambda);

}  // namespace qdl::bc
