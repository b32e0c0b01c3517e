#include "core/json_io.hpp"

#include <cmath>
#include <stdexcept>

#include "core/entanglement.hpp"
#include "core/modes.hpp"
#include "core/states.hpp"

namespace qdl::io {

namespace {

using nlohmann::json;

constexpr double kLoadTol = 1e-6;

[[noreturn]] void fail(const std::string& doc, const std::string& msg) {
  throw std::invalid_argument(doc + " json: " + msg);
}

void check_schema(const json& j, const std::string& doc, const std::string& want) {
  if (!j.is_object()) fail(doc, "document must be an object");
  if (!j.contains("schema") || !j["schema"].is_string())
    fail(doc, "missing string field 'schema'");
  if (j["schema"].get<std::string>() != want)
    fail(doc, "unsupported schema '" + j["schema"].get<std::string>() +
                  "', expected '" + want + "'");
}

std::vector<int> dims_from(const json& j, const std::string& doc) {
  if (!j.contains("dims") || !j["dims"].is_array() || j["dims"].empty())
    fail(doc, "missing non-empty array field 'dims'");
  std::vector<int> dims;
  for (const auto& d : j["dims"]) {
    if (!d.is_number_integer() || d.get<int>() < 1)
      fail(doc, "'dims' entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  return dims;
}

json complex_json(const cxd& z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

nlohmann::json density_to_json(const DensityMatrix& rho) {
  const int n = static_cast<int>(rho.matrix.rows());
  json re = json::array(), im = json::array();
  for (int i = 0; i < n; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < n; ++j) {
      rrow.push_back(rho.matrix(i, j).real());
      irow.push_back(rho.matrix(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"schema", "density/1"},
              {"dims", rho.dims},
              {"matrix", json{{"re", std::move(re)}, {"im", std::move(im)}}}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  const std::string doc = "density";
  check_schema(j, doc, "density/1");
  const std::vector<int> dims = dims_from(j, doc);
  int total = 1;
  for (const int d : dims) total *= d;

  if (!j.contains("matrix") || !j["matrix"].is_object())
    fail(doc, "missing object field 'matrix'");
  const json& m = j["matrix"];
  for (const char* part : {"re", "im"}) {
    if (!m.contains(part) || !m[part].is_array() ||
        static_cast<int>(m[part].size()) != total)
      fail(doc, std::string("'matrix.") + part + "' must be an array of " +
                    std::to_string(total) + " rows");
  }
  Eigen::MatrixXcd mat(total, total);
  for (int i = 0; i < total; ++i) {
    const json& rrow = m["re"][i];
    const json& irow = m["im"][i];
    if (!rrow.is_array() || static_cast<int>(rrow.size()) != total)
      fail(doc, "'matrix.re[" + std::to_string(i) + "]' must have " +
                    std::to_string(total) + " entries");
    if (!irow.is_array() || static_cast<int>(irow.size()) != total)
      fail(doc, "'matrix.im[" + std::to_string(i) + "]' must have " +
                    std::to_string(total) + " entries");
    for (int k = 0; k < total; ++k) {
      if (!rrow[k].is_number() || !irow[k].is_number())
        fail(doc, "'matrix' entries must be numbers (row " + std::to_string(i) +
                      ", col " + std::to_string(k) + ")");
      mat(i, k) = cxd(rrow[k].get<double>(), irow[k].get<double>());
    }
  }

  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > kLoadTol)
    fail(doc, "'matrix' is not Hermitian within " + std::to_string(kLoadTol));
  if (std::abs(mat.trace().real() - 1.0) > kLoadTol ||
      std::abs(mat.trace().imag()) > kLoadTol)
    fail(doc, "'matrix' trace must be 1 within " + std::to_string(kLoadTol));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      ((mat + mat.adjoint()) / 2.0).eval());
  if (es.eigenvalues().minCoeff() < -kLoadTol)
    fail(doc, "'matrix' has an eigenvalue below -" + std::to_string(kLoadTol));

  return project_to_density(mat, dims);
}

nlohmann::json counts_to_json(const tomo::CountData& data) {
  json records = json::array();
  for (const auto& rec : data.records)
    records.push_back(json{{"labels", rec.labels},
                           {"count", rec.count},
                           {"shots", rec.shots}});
  return json{{"schema", "counts/1"},
              {"dims", data.dims},
              {"set", data.overcomplete ? "overcomplete" : "minimal"},
              {"records", std::move(records)}};
}

tomo::CountData counts_from_json(const nlohmann::json& j) {
  const std::string doc = "counts";
  check_schema(j, doc, "counts/1");
  tomo::CountData data;
  data.dims = dims_from(j, doc);
  if (!j.contains("set") || !j["set"].is_string())
    fail(doc, "missing string field 'set'");
  const std::string set = j["set"].get<std::string>();
  if (set != "minimal" && set != "overcomplete")
    fail(doc, "'set' must be 'minimal' or 'overcomplete'");
  data.overcomplete = set == "overcomplete";
  if (!j.contains("records") || !j["records"].is_array() || j["records"].empty())
    fail(doc, "missing non-empty array field 'records'");
  for (size_t i = 0; i < j["records"].size(); ++i) {
    const json& r = j["records"][i];
    const std::string at = "records[" + std::to_string(i) + "]";
    if (!r.is_object()) fail(doc, "'" + at + "' must be an object");
    if (!r.contains("labels") || !r["labels"].is_array())
      fail(doc, "'" + at + ".labels' must be an array");
    tomo::CountRecord rec;
    for (const auto& l : r["labels"]) {
      if (!l.is_string()) fail(doc, "'" + at + ".labels' entries must be strings");
      rec.labels.push_back(l.get<std::string>());
    }
    if (!r.contains("count") || !r["count"].is_number_integer() ||
        r["count"].get<long long>() < 0)
      fail(doc, "'" + at + ".count' must be a non-negative integer");
    if (!r.contains("shots") || !r["shots"].is_number_integer() ||
        r["shots"].get<long long>() <= 0)
      fail(doc, "'" + at + ".shots' must be a positive integer");
    rec.count = r["count"].get<long long>();
    rec.shots = r["shots"].get<long long>();
    data.records.push_back(std::move(rec));
  }
  return data;
}

nlohmann::json tomo_report_json(const tomo::MleReport& report,
                                const tomo::MeasurementSet& set) {
  json j{{"schema", "tomo_report/1"},
         {"state", density_to_json(report.rho)},
         {"objective",
          report.objective == tomo::Objective::Poisson ? "poisson" : "least_squares"},
         {"objective_value", report.objective_value},
         {"iterations", report.iterations},
         {"converged", report.converged},
         {"restarts", report.restarts},
         {"setting_count", report.setting_count},
         {"design_rank", report.design_rank},
         {"error_bars", nullptr},
         {"measurement_set",
          json{{"qudit_dim", set.qudit_dim},
               {"arms", set.arms},
               {"set", set.overcomplete ? "overcomplete" : "minimal"}}}};
  if (!report.history.empty()) j["history"] = report.history;
  return j;
}

nlohmann::json entanglement_report_json(const DensityMatrix& rho) {
  if (rho.dims.size() != 2)
    throw std::invalid_argument("entanglement report expects a two-arm state");
  json j{{"schema", "entanglement_report/1"},
         {"dims", rho.dims},
         {"fidelity_convention", "squared"},
         {"purity", purity(rho)},
         {"linear_entropy", linear_entropy(rho)},
         {"von_neumann_entropy", von_neumann_entropy(rho)},
         {"eof_upper_bound", ent::eof_upper_bound(rho)},
         {"eof_method", "spectral_decomposition"}};
  json warnings = json::array();
  const bool qubits = rho.dims == std::vector<int>{2, 2};
  const bool qutrits = rho.dims == std::vector<int>{3, 3};
  if (qubits) {
    const double c = ent::concurrence(rho);
    j["concurrence"] = c;
    j["tangle"] = c * c;
    j["fidelity_phi_plus"] =
        fidelity(rho, density_from_pure(max_entangled_pair(2)));
  } else {
    warnings.push_back("concurrence and tangle need a two-qubit state");
  }
  if (qutrits)
    j["fidelity_max_entangled_qutrit"] =
        fidelity(rho, density_from_pure(max_entangled_pair(3)));
  if (qubits || qutrits) {
    const ent::NonMaxFit fit = ent::fit_nonmax_entangled(rho);
    j["nonmax_fit"] =
        json{{"family", fit.family == ent::NonMaxFamily::Qubit ? "qubit" : "qutrit"},
             {"epsilon", complex_json(fit.epsilon)},
             {"epsilon_abs", std::abs(fit.epsilon)},
             {"epsilon_arg", std::arg(fit.epsilon)},
             {"fidelity", fit.fidelity}};
  } else {
    warnings.push_back("entangled-family fit needs dims [2,2] or [3,3]");
  }
  if (!warnings.empty()) j["warnings"] = std::move(warnings);
  return j;
}

nlohmann::json bc_report_json(const bc::SecurityReport& report) {
  return json{{"schema", "bc_report/1"},
              {"fidelity_convention", "sqrt"},
              {"k", report.k},
              {"c", report.c},
              {"lambda_fit", report.lambda_fit},
              {"inside_qubit_region", report.inside_qubit_region},
              {"qubit_boundary", "2*K + 4*C^2 = 1"},
              {"tokens", json{{"bit0", density_to_json(report.token0)},
                              {"bit1", density_to_json(report.token1)}}},
              {"token_fidelity", json{{"bit0", report.token_fidelity0},
                                      {"bit1", report.token_fidelity1}}},
              {"residuals", json{{"bit0", report.residual0},
                                 {"bit1", report.residual1}}}};
}

nlohmann::json bc_threshold_json(double lambda, double r_star) {
  return json{
      {"schema", "bc_threshold/1"},
      {"lambda", lambda},
      {"model",
       "token pair diag(r,(1-r)(1-lambda),(1-r)lambda) / "
       "diag((1-r)lambda,(1-r)(1-lambda),r)"},
      {"qubit_boundary", "2*K + 4*C^2 = 1"},
      {"r_star", r_star}};
}

std::string curves_csv(const std::vector<bc::CurvePoint>& points) {
  std::string out = "curve,param,k,c\n";
  for (const auto& p : points) {
    out += p.curve;
    out += ',';
    out += json(p.param).dump();
    out += ',';
    out += json(p.k).dump();
    out += ',';
    out += json(p.c).dump();
    out += '\n';
  }
  return out;
}

nlohmann::json vortex_decomposition_json(double displacement, double waist) {
  const modes::VortexDecomposition analytic =
      modes::displaced_vortex_decomposition(displacement, waist);
  const modes::VortexDecomposition quad =
      modes::displaced_vortex_decomposition_quadrature(displacement, waist);
  return json{{"schema", "vortex_decomposition/1"},
              {"displacement", displacement},
              {"waist", waist},
              {"c_g", complex_json(analytic.c_g)},
              {"c_v", complex_json(analytic.c_v)},
              {"weights", json{{"gauss", std::norm(analytic.c_g)},
                               {"vortex", std::norm(analytic.c_v)}}},
              {"quadrature", json{{"c_g", complex_json(quad.c_g)},
                                  {"c_v", complex_json(quad.c_v)}}}};
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace qdl::io
