#include "quditlab/quditlab.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "core/bitcommit.hpp"
#include "core/entanglement.hpp"
#include "core/json_io.hpp"
#include "core/modes.hpp"
#include "core/qudit.hpp"
#include "core/states.hpp"
#include "core/tomography.hpp"

struct qdl_state {
  qdl::DensityMatrix dm;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
qdl_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return QDL_ERR_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    // malformed JSON handed in by the caller, not an internal failure
    g_last_error = e.what();
    return QDL_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QDL_ERR_BAD_ALLOC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QDL_ERR_RUNTIME;
  }
}

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

qdl_state* wrap(qdl::DensityMatrix dm) {
  return new qdl_state{std::move(dm)};
}

std::vector<int> dims_vec(const int* dims, int n_dims) {
  require(dims != nullptr && n_dims > 0, "dims must be a non-empty array");
  return {dims, dims + n_dims};
}

template <typename F>
qdl_status pair_measure(const qdl_state* a, const qdl_state* b, double* out, F&& f) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "states must not be null");
    require(out != nullptr, "out must not be null");
    *out = f(a->dm, b->dm);
    return QDL_OK;
  });
}

template <typename F>
qdl_status single_measure(const qdl_state* s, double* out, F&& f) {
  return guarded([&] {
    require(s != nullptr, "state must not be null");
    require(out != nullptr, "out must not be null");
    *out = f(s->dm);
    return QDL_OK;
  });
}

}  // namespace

extern "C" {

const char* qdl_version(void) { return "0.1.0"; }

int qdl_schema_version(void) { return 1; }

const char* qdl_status_name(qdl_status status) {
  switch (status) {
    case QDL_OK:
      return "ok";
    case QDL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case QDL_ERR_RUNTIME:
      return "runtime error";
    case QDL_ERR_BAD_ALLOC:
      return "out of memory";
  }
  return "unknown status";
}

const char* qdl_last_error(void) { return g_last_error.c_str(); }

void qdl_string_free(char* s) { std::free(s); }

void qdl_state_free(qdl_state* state) { delete state; }

qdl_status qdl_state_from_json(const char* json, qdl_state** out) {
  return guarded([&] {
    require(json != nullptr, "json must not be null");
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::io::density_from_json(nlohmann::json::parse(json)));
    return QDL_OK;
  });
}

qdl_status qdl_state_to_json(const qdl_state* state, char** out_json) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out_json != nullptr, "out_json must not be null");
    *out_json = dup_string(qdl::io::dump_json(qdl::io::density_to_json(state->dm)));
    return QDL_OK;
  });
}

qdl_status qdl_state_pure(const double* re, const double* im, const int* dims,
                          int n_dims, qdl_state** out) {
  return guarded([&] {
    require(re != nullptr, "re must not be null");
    require(out != nullptr, "out must not be null");
    const std::vector<int> dv = dims_vec(dims, n_dims);
    const int total = qdl::total_dim(dv);
    Eigen::VectorXcd amps(total);
    for (int i = 0; i < total; ++i)
      amps(i) = qdl::cxd(re[i], im ? im[i] : 0.0);
    *out = wrap(qdl::density_from_pure(qdl::normalized_state(amps, dv)));
    return QDL_OK;
  });
}

qdl_status qdl_state_maximally_mixed(const int* dims, int n_dims, qdl_state** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::maximally_mixed(dims_vec(dims, n_dims)));
    return QDL_OK;
  });
}

qdl_status qdl_state_max_entangled(int d, qdl_state** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::density_from_pure(qdl::max_entangled_pair(d)));
    return QDL_OK;
  });
}

qdl_status qdl_state_nonmax_qubit(double eps_re, double eps_im, qdl_state** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = wrap(
        qdl::density_from_pure(qdl::nonmax_qubit_pair(qdl::cxd(eps_re, eps_im))));
    return QDL_OK;
  });
}

qdl_status qdl_state_nonmax_qutrit(double eps_re, double eps_im, qdl_state** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = wrap(
        qdl::density_from_pure(qdl::nonmax_qutrit_pair(qdl::cxd(eps_re, eps_im))));
    return QDL_OK;
  });
}

qdl_status qdl_state_depolarize(const qdl_state* state, double p, qdl_state** out) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::depolarize(state->dm, p));
    return QDL_OK;
  });
}

qdl_status qdl_state_mix_to_linear_entropy(const qdl_state* state, double target,
                                           qdl_state** out) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::mix_to_linear_entropy(state->dm, target));
    return QDL_OK;
  });
}

qdl_status qdl_state_dims(const qdl_state* state, int* out_dims, int max_dims,
                          int* out_n_dims) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out_n_dims != nullptr, "out_n_dims must not be null");
    const int n = static_cast<int>(state->dm.dims.size());
    *out_n_dims = n;
    if (out_dims) {
      require(max_dims >= n, "dims buffer is too small");
      for (int i = 0; i < n; ++i) out_dims[i] = state->dm.dims[i];
    }
    return QDL_OK;
  });
}

qdl_status qdl_state_matrix(const qdl_state* state, double* out_re, double* out_im,
                            int max_entries) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out_re != nullptr && out_im != nullptr,
            "matrix buffers must not be null");
    const int n = static_cast<int>(state->dm.matrix.rows());
    require(max_entries >= n * n, "matrix buffers are too small");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out_re[i * n + j] = state->dm.matrix(i, j).real();
        out_im[i * n + j] = state->dm.matrix(i, j).imag();
      }
    return QDL_OK;
  });
}

qdl_status qdl_tensor(const qdl_state* a, const qdl_state* b, qdl_state** out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "states must not be null");
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::tensor(a->dm, b->dm));
    return QDL_OK;
  });
}

qdl_status qdl_partial_trace(const qdl_state* state, int keep, qdl_state** out) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out != nullptr, "out must not be null");
    *out = wrap(qdl::partial_trace(state->dm, keep));
    return QDL_OK;
  });
}

qdl_status qdl_trace_distance(const qdl_state* a, const qdl_state* b, double* out) {
  return pair_measure(a, b, out,
                      [](const auto& x, const auto& y) { return qdl::trace_distance(x, y); });
}

qdl_status qdl_fidelity(const qdl_state* a, const qdl_state* b, double* out) {
  return pair_measure(a, b, out,
                      [](const auto& x, const auto& y) { return qdl::fidelity(x, y); });
}

qdl_status qdl_root_fidelity(const qdl_state* a, const qdl_state* b, double* out) {
  return pair_measure(a, b, out,
                      [](const auto& x, const auto& y) { return qdl::root_fidelity(x, y); });
}

qdl_status qdl_purity(const qdl_state* state, double* out) {
  return single_measure(state, out, [](const auto& x) { return qdl::purity(x); });
}

qdl_status qdl_linear_entropy(const qdl_state* state, double* out) {
  return single_measure(state, out,
                        [](const auto& x) { return qdl::linear_entropy(x); });
}

qdl_status qdl_von_neumann_entropy(const qdl_state* state, double* out) {
  return single_measure(state, out,
                        [](const auto& x) { return qdl::von_neumann_entropy(x); });
}

qdl_status qdl_concurrence(const qdl_state* state, double* out) {
  return single_measure(state, out,
                        [](const auto& x) { return qdl::ent::concurrence(x); });
}

qdl_status qdl_tangle(const qdl_state* state, double* out) {
  return single_measure(state, out, [](const auto& x) { return qdl::ent::tangle(x); });
}

qdl_status qdl_eof_upper_bound(const qdl_state* state, double* out) {
  return single_measure(state, out,
                        [](const auto& x) { return qdl::ent::eof_upper_bound(x); });
}

qdl_status qdl_entanglement_report(const qdl_state* state, char** out_json) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out_json != nullptr, "out_json must not be null");
    *out_json =
        dup_string(qdl::io::dump_json(qdl::io::entanglement_report_json(state->dm)));
    return QDL_OK;
  });
}

qdl_status qdl_gouy_phase(int order, double z, double z_r, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    *out = qdl::modes::gouy_phase(order, z, z_r);
    return QDL_OK;
  });
}

qdl_status qdl_mode_amplitude(const char* label, double waist, double x, double y,
                              double* out_re, double* out_im) {
  return guarded([&] {
    require(label != nullptr, "label must not be null");
    require(out_re != nullptr && out_im != nullptr, "outputs must not be null");
    const qdl::cxd amp =
        qdl::modes::mode_amplitude(qdl::modes::parse_mode_label(label, waist), x, y);
    *out_re = amp.real();
    *out_im = amp.imag();
    return QDL_OK;
  });
}

qdl_status qdl_mode_raster(const char* label, double waist, int pixels,
                           double half_width_waists, double* out_intensity,
                           double* out_phase, int max_entries) {
  return guarded([&] {
    require(label != nullptr, "label must not be null");
    require(out_intensity != nullptr && out_phase != nullptr,
            "raster buffers must not be null");
    const qdl::modes::Raster raster = qdl::modes::mode_raster(
        qdl::modes::parse_mode_label(label, waist), pixels, half_width_waists);
    require(max_entries >= static_cast<int>(raster.intensity.size()),
            "raster buffers are too small");
    for (size_t i = 0; i < raster.intensity.size(); ++i) {
      out_intensity[i] = raster.intensity[i];
      out_phase[i] = raster.phase[i];
    }
    return QDL_OK;
  });
}

qdl_status qdl_modes_decompose(double displacement, double waist, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "out_json must not be null");
    *out_json = dup_string(
        qdl::io::dump_json(qdl::io::vortex_decomposition_json(displacement, waist)));
    return QDL_OK;
  });
}

qdl_status qdl_vortex_rotation(double displacement, double waist, double z,
                               double z_r, double* out) {
  return guarded([&] {
    require(out != nullptr, "out must not be null");
    const qdl::modes::VortexDecomposition dec =
        qdl::modes::displaced_vortex_decomposition(displacement, waist);
    const qdl::modes::FieldSuperposition field = qdl::modes::make_superposition(
        {{dec.c_g, qdl::modes::lgv(0, 0, waist)},
         {dec.c_v, qdl::modes::lgv(0, 1, waist)}},
        waist);
    *out = qdl::modes::singularity_rotation(field, z, z_r);
    return QDL_OK;
  });
}

qdl_status qdl_tomo_simulate(const qdl_state* state, int overcomplete,
                             long long shots, uint64_t seed, int exact,
                             char** out_counts_json) {
  return guarded([&] {
    require(state != nullptr, "state must not be null");
    require(out_counts_json != nullptr, "out_counts_json must not be null");
    const auto& dims = state->dm.dims;
    require(dims.size() <= 2, "tomography supports 1 or 2 arms");
    for (const int d : dims)
      require(d == dims.front(), "tomography arms must share one dimension");
    const qdl::tomo::MeasurementSet set = qdl::tomo::measurement_set(
        dims.front(), static_cast<int>(dims.size()), overcomplete != 0);
    const qdl::tomo::CountData data =
        exact != 0 ? qdl::tomo::exact_experiment(state->dm, set, shots)
                   : qdl::tomo::simulate_experiment(state->dm, set, shots, seed);
    *out_counts_json = dup_string(qdl::io::dump_json(qdl::io::counts_to_json(data)));
    return QDL_OK;
  });
}

qdl_status qdl_tomo_reconstruct(const char* counts_json, int max_iters,
                                int least_squares, int restarts,
                                qdl_state** out_state, char** out_report_json) {
  return guarded([&] {
    require(counts_json != nullptr, "counts_json must not be null");
    require(out_state != nullptr || out_report_json != nullptr,
            "at least one output must be requested");
    const qdl::tomo::CountData data =
        qdl::io::counts_from_json(nlohmann::json::parse(counts_json));
    const qdl::tomo::MeasurementSet set = qdl::tomo::measurement_set_for(data);
    qdl::tomo::MleOptions opt;
    if (max_iters > 0) opt.max_iters = max_iters;
    if (restarts >= 0) opt.restarts = restarts;
    opt.objective = least_squares != 0 ? qdl::tomo::Objective::LeastSquares
                                       : qdl::tomo::Objective::Poisson;
    const qdl::tomo::MleReport report = qdl::tomo::reconstruct_mle(data, set, opt);
    if (out_report_json)
      *out_report_json =
          dup_string(qdl::io::dump_json(qdl::io::tomo_report_json(report, set)));
    if (out_state) *out_state = wrap(report.rho);
    return QDL_OK;
  });
}

qdl_status qdl_bc_report(const qdl_state* source, char** out_json) {
  return guarded([&] {
    require(source != nullptr, "source must not be null");
    require(out_json != nullptr, "out_json must not be null");
    *out_json = dup_string(
        qdl::io::dump_json(qdl::io::bc_report_json(qdl::bc::analyze_source(source->dm))));
    return QDL_OK;
  });
}

qdl_status qdl_bc_security_point(const qdl_state* source, double* out_k,
                                 double* out_c) {
  return guarded([&] {
    require(source != nullptr, "source must not be null");
    require(out_k != nullptr && out_c != nullptr, "outputs must not be null");
    const qdl::DensityMatrix t0 =
        qdl::bc::token_from_logical(qdl::bc::prepare_logical(source->dm, 0));
    const qdl::DensityMatrix t1 =
        qdl::bc::token_from_logical(qdl::bc::prepare_logical(source->dm, 1));
    *out_k = qdl::bc::knowledge_gain(t0, t1);
    *out_c = qdl::bc::control(t0, t1);
    return QDL_OK;
  });
}

qdl_status qdl_bc_curves_csv(char** out_csv) {
  return guarded([&] {
    require(out_csv != nullptr, "out_csv must not be null");
    *out_csv = dup_string(qdl::io::curves_csv(qdl::bc::security_curves()));
    return QDL_OK;
  });
}

qdl_status qdl_bc_threshold(double lambda, char** out_json) {
  return guarded([&] {
    require(out_json != nullptr, "out_json must not be null");
    const double r_star = qdl::bc::residual_threshold(lambda);
    *out_json =
        dup_string(qdl::io::dump_json(qdl::io::bc_threshold_json(lambda, r_star)));
    return QDL_OK;
  });
}

}  // extern "C"
