#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>

#include <quditlab/quditlab.h>

namespace {

struct StateDeleter {
  void operator()(qdl_state* s) const { qdl_state_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { qdl_string_free(s); }
};
using State = std::unique_ptr<qdl_state, StateDeleter>;
using String = std::unique_ptr<char, StringDeleter>;

State make_max_entangled(int d) {
  qdl_state* raw = nullptr;
  REQUIRE(qdl_state_max_entangled(d, &raw) == QDL_OK);
  return State(raw);
}

}  // namespace

TEST_CASE("library identity") {
  CHECK(std::string(qdl_version()) == "0.1.0");
  CHECK(qdl_schema_version() == 1);
  CHECK(std::string(qdl_status_name(QDL_OK)) == "ok");
  CHECK(std::string(qdl_status_name(QDL_ERR_INVALID_ARGUMENT)) ==
        "invalid argument");
  CHECK(std::string(qdl_status_name(QDL_ERR_RUNTIME)) == "runtime error");
}

TEST_CASE("state lifecycle and json round trip") {
  const State state = make_max_entangled(3);

  int dims[4] = {0, 0, 0, 0};
  int n_dims = 0;
  REQUIRE(qdl_state_dims(state.get(), dims, 4, &n_dims) == QDL_OK);
  REQUIRE(n_dims == 2);
  CHECK(dims[0] == 3);
  CHECK(dims[1] == 3);

  double re[81], im[81];
  REQUIRE(qdl_state_matrix(state.get(), re, im, 81) == QDL_OK);
  CHECK(re[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));   // <00|rho|00>
  CHECK(re[4 * 9 + 4] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(im[0] == doctest::Approx(0.0).epsilon(1e-15));

  char* json_raw = nullptr;
  REQUIRE(qdl_state_to_json(state.get(), &json_raw) == QDL_OK);
  const String json(json_raw);
  CHECK(std::strstr(json.get(), "\"density/1\"") != nullptr);

  qdl_state* parsed_raw = nullptr;
  REQUIRE(qdl_state_from_json(json.get(), &parsed_raw) == QDL_OK);
  const State parsed(parsed_raw);
  double dist = -1.0;
  REQUIRE(qdl_trace_distance(state.get(), parsed.get(), &dist) == QDL_OK);
  CHECK(dist < 1e-9);
}

TEST_CASE("errors set status and message") {
  CHECK(qdl_state_max_entangled(3, nullptr) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(qdl_last_error()) > 0);

  qdl_state* out = nullptr;
  CHECK(qdl_state_max_entangled(1, &out) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);

  CHECK(qdl_state_from_json("{ not valid", &out) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(qdl_state_from_json("{\"schema\":\"density/9\"}", &out) ==
        QDL_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(qdl_last_error()) > 0);

  double x = 0.0;
  CHECK(qdl_trace_distance(nullptr, nullptr, &x) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(qdl_gouy_phase(-1, 0.0, 1.0, &x) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(qdl_bc_threshold(1.5, nullptr) == QDL_ERR_INVALID_ARGUMENT);
  char* s = nullptr;
  CHECK(qdl_bc_threshold(1.5, &s) == QDL_ERR_INVALID_ARGUMENT);
  CHECK(s == nullptr);
}

TEST_CASE("measures through the api") {
  const State phi = make_max_entangled(2);
  double v = -1.0;
  REQUIRE(qdl_trace_distance(phi.get(), phi.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
  REQUIRE(qdl_fidelity(phi.get(), phi.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(qdl_tangle(phi.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(qdl_concurrence(phi.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(qdl_eof_upper_bound(phi.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));

  qdl_state* half_raw = nullptr;
  REQUIRE(qdl_partial_trace(phi.get(), 0, &half_raw) == QDL_OK);
  const State half(half_raw);
  REQUIRE(qdl_purity(half.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-12));

  qdl_state* flat_raw = nullptr;
  REQUIRE(qdl_state_depolarize(phi.get(), 1.0, &flat_raw) == QDL_OK);
  const State flat(flat_raw);
  REQUIRE(qdl_linear_entropy(flat.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(qdl_von_neumann_entropy(flat.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));

  qdl_state* tempered_raw = nullptr;
  REQUIRE(qdl_state_mix_to_linear_entropy(phi.get(), 0.18, &tempered_raw) ==
          QDL_OK);
  const State tempered(tempered_raw);
  REQUIRE(qdl_linear_entropy(tempered.get(), &v) == QDL_OK);
  CHECK(v == doctest::Approx(0.18).epsilon(1e-9));
}

TEST_CASE("pure state constructor normalizes") {
  const double re[4] = {3.0, 0.0, 0.0, 4.0};
  const int dims[2] = {2, 2};
  qdl_state* raw = nullptr;
  REQUIRE(qdl_state_pure(re, nullptr, dims, 2, &raw) == QDL_OK);
  const State state(raw);
  double mre[16], mim[16];
  REQUIRE(qdl_state_matrix(state.get(), mre, mim, 16) == QDL_OK);
  CHECK(mre[0] == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(mre[15] == doctest::Approx(0.64).epsilon(1e-12));

  const double zero[4] = {0.0, 0.0, 0.0, 0.0};
  qdl_state* bad = nullptr;
  CHECK(qdl_state_pure(zero, nullptr, dims, 2, &bad) ==
        QDL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("spatial mode helpers") {
  double v = 0.0;
  REQUIRE(qdl_gouy_phase(0, 1.0, 1.0, &v) == QDL_OK);
  CHECK(v == doctest::Approx(std::atan(1.0)).epsilon(1e-12));

  double re = 0.0, im = 1.0;
  REQUIRE(qdl_mode_amplitude("HG00", 1.0, 0.0, 0.0, &re, &im) == QDL_OK);
  CHECK(re == doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846))
                  .epsilon(1e-12));
  CHECK(im == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(qdl_mode_amplitude("XX00", 1.0, 0.0, 0.0, &re, &im) ==
        QDL_ERR_INVALID_ARGUMENT);

  double intensity[64], phase[64];
  REQUIRE(qdl_mode_raster("LGV0+1", 1.0, 8, 3.0, intensity, phase, 64) ==
          QDL_OK);
  CHECK(qdl_mode_raster("LGV0+1", 1.0, 8, 3.0, intensity, phase, 63) ==
        QDL_ERR_INVALID_ARGUMENT);

  char* json_raw = nullptr;
  REQUIRE(qdl_modes_decompose(0.5, 1.0, &json_raw) == QDL_OK);
  const String json(json_raw);
  CHECK(std::strstr(json.get(), "vortex_decomposition/1") != nullptr);
  CHECK(std::strstr(json.get(), "c_g") != nullptr);

  REQUIRE(qdl_vortex_rotation(0.5, 1.0, 0.7, 1.0, &v) == QDL_OK);
  CHECK(v == doctest::Approx(std::atan(0.7)).epsilon(1e-9));
}

TEST_CASE("tomography round trip through the api") {
  qdl_state* truth_raw = nullptr;
  REQUIRE(qdl_state_nonmax_qubit(0.7, 0.1, &truth_raw) == QDL_OK);
  const State truth(truth_raw);

  char* counts_raw = nullptr;
  REQUIRE(qdl_tomo_simulate(truth.get(), 0, 2000, 5, 0, &counts_raw) == QDL_OK);
  const String counts(counts_raw);
  CHECK(std::strstr(counts.get(), "\"counts/1\"") != nullptr);
  CHECK(std::strstr(counts.get(), "\"minimal\"") != nullptr);

  qdl_state* rec_raw = nullptr;
  char* report_raw = nullptr;
  REQUIRE(qdl_tomo_reconstruct(counts.get(), 0, 0, 0, &rec_raw, &report_raw) ==
          QDL_OK);
  const State rec(rec_raw);
  const String report(report_raw);
  CHECK(std::strstr(report.get(), "\"tomo_report/1\"") != nullptr);
  CHECK(std::strstr(report.get(), "\"poisson\"") != nullptr);

  double fid = 0.0;
  REQUIRE(qdl_fidelity(rec.get(), truth.get(), &fid) == QDL_OK);
  CHECK(fid > 0.95);

  CHECK(qdl_tomo_reconstruct(counts.get(), 0, 0, 0, nullptr, nullptr) ==
        QDL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("bit commitment through the api") {
  qdl_state* src_raw = nullptr;
  REQUIRE(qdl_state_nonmax_qutrit(1.79, 0.0, &src_raw) == QDL_OK);
  const State src(src_raw);

  double k = -1.0, c = -1.0;
  REQUIRE(qdl_bc_security_point(src.get(), &k, &c) == QDL_OK);
  const double lam = 1.0 / (1.0 + 1.79 * 1.79);
  CHECK(k == doctest::Approx(lam / 2.0).epsilon(1e-9));
  CHECK(c == doctest::Approx((1.0 - lam) / 2.0).epsilon(1e-9));

  char* rep_raw = nullptr;
  REQUIRE(qdl_bc_report(src.get(), &rep_raw) == QDL_OK);
  const String rep(rep_raw);
  CHECK(std::strstr(rep.get(), "\"bc_report/1\"") != nullptr);
  CHECK(std::strstr(rep.get(), "inside_qubit_region") != nullptr);

  char* thr_raw = nullptr;
  REQUIRE(qdl_bc_threshold(0.27, &thr_raw) == QDL_OK);
  const String thr(thr_raw);
  CHECK(std::strstr(thr.get(), "\"bc_threshold/1\"") != nullptr);
  CHECK(std::strstr(thr.get(), "r_star") != nullptr);

  char* csv_raw = nullptr;
  REQUIRE(qdl_bc_curves_csv(&csv_raw) == QDL_OK);
  const String csv(csv_raw);
  CHECK(std::strncmp(csv.get(), "curve,param,k,c\n", 16) == 0);
}
