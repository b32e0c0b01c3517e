// Acceptance gate: one self-contained check per criterion, one line of output
// each, exit 0 only if every executed criterion passes.
//
//   usage: acceptance [--criterion N]...

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "core/bitcommit.hpp"
#include "core/entanglement.hpp"
#include "core/modes.hpp"
#include "core/qudit.hpp"
#include "core/states.hpp"
#include "core/tomography.hpp"
#include "test_util.hpp"

using namespace qdl;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Criterion {
  int id;
  const char* description;
  std::function<bool(std::string&)> run;
};

// 1: ideal commitments land on the reference diagonal (K, C) = (l/2, (1-l)/2)
bool ideal_family_diagonal(std::string& detail) {
  for (int i = 0; i <= 100; ++i) {
    const double lam = i / 100.0;
    const auto [l0, l1] = bc::logical_states(lam, 0.37);
    const DensityMatrix t0 = bc::token_from_logical(density_from_pure(l0));
    const DensityMatrix t1 = bc::token_from_logical(density_from_pure(l1));
    const double k = bc::knowledge_gain(t0, t1);
    const double c = bc::control(t0, t1);
    if (std::abs(k - lam / 2.0) > 1e-9 || std::abs(c - (1.0 - lam) / 2.0) > 1e-9) {
      detail = "lambda " + std::to_string(lam);
      return false;
    }
  }
  return true;
}

// 2: displaced vortex decomposition, analytic vs quadrature, and the
// singularity rotation law
bool vortex_checks(std::string& detail) {
  for (double w : {0.7, 1.0, 1.6}) {
    for (double x0 : {0.0, 0.3, 0.5, 1.0, 2.0, 3.0}) {
      const auto an = modes::displaced_vortex_decomposition(x0, w);
      const auto qd = modes::displaced_vortex_decomposition_quadrature(x0, w);
      if (std::abs(an.c_g - qd.c_g) > 1e-5 || std::abs(an.c_v - qd.c_v) > 1e-5) {
        detail = "quadrature mismatch at x0 " + std::to_string(x0);
        return false;
      }
      if (std::abs(std::norm(an.c_g) + std::norm(an.c_v) - 1.0) > 1e-5) {
        detail = "weights not normalized at x0 " + std::to_string(x0);
        return false;
      }
      // |c_g| : |c_v| = x0 : w/sqrt(2)
      if (std::abs(std::abs(an.c_g) * (w / std::sqrt(2.0)) -
                   std::abs(an.c_v) * x0) > 1e-5) {
        detail = "amplitude ratio off at x0 " + std::to_string(x0);
        return false;
      }
    }
  }
  const auto dec = modes::displaced_vortex_decomposition(0.5, 1.0);
  const modes::FieldSuperposition field = modes::make_superposition(
      {{dec.c_g, modes::lgv(0, 0, 1.0)}, {dec.c_v, modes::lgv(0, 1, 1.0)}}, 1.0);
  const double zs[][2] = {{0.3, 1.0}, {0.7, 1.0}, {2.0, 1.4}, {-1.0, 0.9}};
  for (const auto& zz : zs) {
    const double got = modes::singularity_rotation(field, zz[0], zz[1]);
    if (std::abs(got - std::atan(zz[0] / zz[1])) > 1e-5) {
      detail = "rotation off at z " + std::to_string(zz[0]);
      return false;
    }
  }
  return true;
}

// the three round-trip sources shared by criteria 3 and 8
std::vector<std::pair<std::string, DensityMatrix>> round_trip_sources() {
  const cxd eps = 1.79 * std::exp(cxd(0.0, -0.07 * kPi));
  std::vector<std::pair<std::string, DensityMatrix>> sources;
  sources.emplace_back("phi+ qubit pair",
                       density_from_pure(max_entangled_pair(2)));
  sources.emplace_back("nonmax qubit pair",
                       density_from_pure(nonmax_qubit_pair(0.60)));
  sources.emplace_back(
      "noisy qutrit pair",
      mix_to_linear_entropy(
          density_from_pure(nonmax_qutrit_pair(eps)), 0.18));
  return sources;
}

// 3: tomography recovers three reference sources at 10^4 shots per setting.
// Root fidelity is the reported convention; the experiment design pins the
// statistical floor, so the squared convention is not reachable at 0.99 for
// the full-rank source even at the exact likelihood optimum.
bool tomography_recovery(std::string& detail) {
  for (const auto& [name, truth] : round_trip_sources()) {
    const tomo::MeasurementSet set =
        tomo::measurement_set(truth.dims.front(), 2, true);
    int ok = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const tomo::CountData data = tomo::simulate_experiment(truth, set, 10000, seed);
      const tomo::MleReport rep = tomo::reconstruct_mle(data, set);
      if (root_fidelity(rep.rho, truth) >= 0.99) ++ok;
    }
    if (ok < 18) {
      detail = name + ": only " + std::to_string(ok) + "/20 runs reached 0.99";
      return false;
    }
  }
  return true;
}

// 4: two-qubit entanglement measures against independent references
bool entanglement_references(std::string& detail) {
  const DensityMatrix bell = density_from_pure(max_entangled_pair(2));
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    const DensityMatrix w = depolarize(bell, 1.0 - p);
    const double expect = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    if (std::abs(ent::concurrence(w) - expect) > 1e-9) {
      detail = "werner concurrence off at p " + std::to_string(p);
      return false;
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = testutil::random_density({2, 2}, 424242 + trial);
    const double exact = testutil::wootters_eof(rho);
    if (ent::eof_upper_bound(rho) < exact - 1e-9) {
      detail = "spectral bound fell below the exact value on trial " +
               std::to_string(trial);
      return false;
    }
  }
  return true;
}

// 5: depolarized ideal tokens match the closed forms
bool depolarized_closed_forms(std::string& detail) {
  for (double lam : {0.27, 0.5}) {
    for (int i = 0; i <= 50; ++i) {
      const double p = i / 50.0;
      const DensityMatrix t0 = depolarize(bc::ideal_token(lam, 0), p);
      const DensityMatrix t1 = depolarize(bc::ideal_token(lam, 1), p);
      const double k_expect = (1.0 - p) * lam / 2.0;
      const double c_expect =
          ((1.0 - p) * (1.0 - lam) + p / 3.0 +
           2.0 * std::sqrt((p / 3.0) * ((1.0 - p) * lam + p / 3.0))) /
          2.0;
      if (std::abs(bc::knowledge_gain(t0, t1) - k_expect) > 1e-9 ||
          std::abs(bc::control(t0, t1) - c_expect) > 1e-9) {
        detail = "lambda " + std::to_string(lam) + ", p " + std::to_string(p);
        return false;
      }
    }
  }
  return true;
}

// 6: qubit-family curve sits on the arc, qutrit family strictly outside the
// qubit region
bool curve_geometry(std::string& detail) {
  for (const auto& pt : bc::security_curves()) {
    if (pt.curve == "X") {
      if (std::abs(pt.k * pt.k + pt.c * pt.c - 0.25) > 1e-12) {
        detail = "X arc identity off at l " + std::to_string(pt.param);
        return false;
      }
    } else if (pt.curve == "W" && pt.param > 0.0 && pt.param < 1.0) {
      if (!(2.0 * pt.k + 4.0 * pt.c * pt.c < 1.0 - 1e-9)) {
        detail = "W point not strictly outside at lambda " +
                 std::to_string(pt.param);
        return false;
      }
    }
  }
  return true;
}

// 7: security booleans and the residual threshold window
bool security_verdicts(std::string& detail) {
  const cxd eps = 1.79 * std::exp(cxd(0.0, -0.07 * kPi));
  const DensityMatrix pure = density_from_pure(nonmax_qutrit_pair(eps));
  if (bc::analyze_source(pure).inside_qubit_region) {
    detail = "pure source flagged as qubit-reachable";
    return false;
  }
  const DensityMatrix noisy = mix_to_linear_entropy(pure, 0.18);
  if (!bc::analyze_source(noisy).inside_qubit_region) {
    detail = "noisy source not flagged as qubit-reachable";
    return false;
  }
  const double r_star = bc::residual_threshold(0.27);
  if (!(r_star > 0.003 && r_star < 0.03)) {
    detail = "r_star " + std::to_string(r_star) + " outside (0.003, 0.03)";
    return false;
  }
  return true;
}

// 8: noise-free expected counts reconstruct every round-trip source
bool exact_count_limit(std::string& detail) {
  for (const auto& [name, truth] : round_trip_sources()) {
    const tomo::MeasurementSet set =
        tomo::measurement_set(truth.dims.front(), 2, true);
    const tomo::CountData data = tomo::exact_experiment(truth, set, 1000000);
    const tomo::MleReport rep = tomo::reconstruct_mle(data, set);
    const double dist = trace_distance(rep.rho, truth);
    if (dist > 1e-3) {
      detail = name + ": trace distance " + std::to_string(dist);
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      wanted.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--criterion N]...\n");
      return 2;
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "ideal tokens land on (lambda/2, (1-lambda)/2)", ideal_family_diagonal},
      {2, "displaced vortex decomposition and singularity rotation", vortex_checks},
      {3, "tomography reaches root fidelity 0.99 on 18/20 noisy runs per source",
       tomography_recovery},
      {4, "two-qubit entanglement measures match independent references",
       entanglement_references},
      {5, "depolarized token pairs match the closed forms",
       depolarized_closed_forms},
      {6, "reference curves respect the qubit-region geometry", curve_geometry},
      {7, "security verdicts and residual threshold window", security_verdicts},
      {8, "exact counts reconstruct each source to 1e-3", exact_count_limit},
  };

  bool all_ok = true;
  bool any_run = false;
  for (const auto& c : criteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
      continue;
    any_run = true;
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (ok) {
      std::printf("PASS criterion %d: %s (%.2f s)\n", c.id, c.description, secs);
    } else {
      std::printf("FAIL criterion %d: %s (%.2f s)%s%s\n", c.id, c.description,
                  secs, detail.empty() ? "" : " -- ", detail.c_str());
      all_ok = false;
    }
    std::fflush(stdout);
  }
  if (!any_run) {
    std::fprintf(stderr, "no matching criterion\n");
    return 2;
  }
  return all_ok ? 0 : 1;
}
