// Command line front end. Everything flows through the public C API; this
// file only parses arguments, moves JSON strings around, and writes PGM
// images.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quditlab/quditlab.h"

namespace {

struct StateDeleter {
  void operator()(qdl_state* s) const { qdl_state_free(s); }
};
using StatePtr = std::unique_ptr<qdl_state, StateDeleter>;

struct StringDeleter {
  void operator()(char* s) const { qdl_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void die(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(1);
}

void check(qdl_status status) {
  if (status != QDL_OK)
    die(std::string(qdl_status_name(status)) + ": " + qdl_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) die("cannot write " + path);
  out << content;
  if (!out) die("write failed for " + path);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file(out_path, content);
}

StatePtr load_state(const std::string& path) {
  qdl_state* raw = nullptr;
  check(qdl_state_from_json(read_file(path).c_str(), &raw));
  return StatePtr(raw);
}

std::string state_json(const qdl_state* state) {
  char* raw = nullptr;
  check(qdl_state_to_json(state, &raw));
  const CString guard(raw);
  return std::string(raw);
}

void write_pgm(const std::string& path, int pixels,
               const std::vector<std::uint8_t>& bytes) {
  std::ostringstream header;
  header << "P5\n" << pixels << " " << pixels << "\n255\n";
  std::string content = header.str();
  content.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  write_file(path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qudit state toolkit: tomography, entanglement, spatial modes, "
               "and commitment-token security analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("quditlab ") + qdl_version() +
                                        " (schema version " +
                                        std::to_string(qdl_schema_version()) + ")");

  // ---- state make ----
  auto* state_cmd = app.add_subcommand("state", "build and transform states");
  state_cmd->require_subcommand(1);
  auto* make = state_cmd->add_subcommand("make", "write a named state as JSON");
  std::string kind, make_out, dims_arg = "3,3";
  double eps_abs = 1.0, eps_arg = 0.0, mix_sl = -1.0;
  make->add_option("--kind", kind, "phi-plus | max-qutrit | nonmax-qubit | "
                                   "nonmax-qutrit | maximally-mixed")
      ->required();
  make->add_option("--eps-abs", eps_abs, "family parameter modulus");
  make->add_option("--eps-arg", eps_arg, "family parameter phase (radians)");
  make->add_option("--dims", dims_arg, "comma separated dims for maximally-mixed");
  make->add_option("--mix-sl", mix_sl, "mix with white noise to this linear entropy");
  make->add_option("--out", make_out, "output file (default stdout)");

  // ---- modes ----
  auto* modes_cmd = app.add_subcommand("modes", "paraxial spatial modes");
  modes_cmd->require_subcommand(1);

  auto* decompose = modes_cmd->add_subcommand(
      "decompose", "displaced vortex in the Gauss/vortex basis");
  double dec_x0 = 0.0, dec_waist = 1.0;
  std::string dec_out;
  decompose->add_option("--displacement", dec_x0, "vortex displacement along +x")
      ->required();
  decompose->add_option("--waist", dec_waist, "beam waist");
  decompose->add_option("--out", dec_out, "output file (default stdout)");

  auto* gouy = modes_cmd->add_subcommand("gouy", "propagation phase and "
                                                 "singularity rotation");
  int gouy_order = 0;
  double gouy_z = 0.0, gouy_zr = 1.0, gouy_x0 = 0.0, gouy_waist = 1.0;
  std::string gouy_out;
  gouy->add_option("--order", gouy_order, "mode order")->required();
  gouy->add_option("--z", gouy_z, "propagation distance")->required();
  gouy->add_option("--zr", gouy_zr, "Rayleigh range")->required();
  gouy->add_option("--displacement", gouy_x0,
                   "also report the displaced-vortex singularity rotation");
  gouy->add_option("--waist", gouy_waist, "beam waist for the rotation");
  gouy->add_option("--out", gouy_out, "output file (default stdout)");

  auto* raster = modes_cmd->add_subcommand("raster", "intensity and phase PGM images");
  std::string raster_mode = "HG00", raster_prefix;
  int raster_pixels = 256;
  double raster_waist = 1.0, raster_half = 3.0;
  raster->add_option("--mode", raster_mode, "mode label, e.g. HG10 or LGV0+1")
      ->required();
  raster->add_option("--pixels", raster_pixels, "pixels per side");
  raster->add_option("--waist", raster_waist, "beam waist");
  raster->add_option("--half-width", raster_half, "half width in waists");
  raster->add_option("--out-prefix", raster_prefix, "prefix for .pgm/.json outputs")
      ->required();

  // ---- tomo ----
  auto* tomo_cmd = app.add_subcommand("tomo", "two-state-superposition tomography");
  tomo_cmd->require_subcommand(1);

  auto* simulate = tomo_cmd->add_subcommand("simulate", "measurement counts for a state");
  std::string sim_state, sim_set = "overcomplete", sim_out;
  long long sim_shots = 10000;
  std::uint64_t sim_seed = 1;
  bool sim_exact = false;
  simulate->add_option("--state", sim_state, "density JSON input")->required();
  simulate->add_option("--set", sim_set, "minimal | overcomplete");
  simulate->add_option("--shots", sim_shots, "shots per setting");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_flag("--exact", sim_exact, "round expected counts instead of sampling");
  simulate->add_option("--out", sim_out, "output file (default stdout)");

  auto* reconstruct = tomo_cmd->add_subcommand("reconstruct", "maximum-likelihood state fit");
  std::string rec_counts, rec_objective = "poisson", rec_out, rec_report;
  int rec_iters = 0, rec_restarts = -1;
  reconstruct->add_option("--counts", rec_counts, "counts JSON input")->required();
  reconstruct->add_option("--max-iters", rec_iters, "simplex iteration cap");
  reconstruct->add_option("--objective", rec_objective, "poisson | least-squares");
  reconstruct->add_option("--restarts", rec_restarts, "perturbed restarts");
  reconstruct->add_option("--out", rec_out, "reconstructed density JSON (default stdout)");
  reconstruct->add_option("--report", rec_report, "full fit report JSON");

  // ---- analyze ----
  auto* analyze = app.add_subcommand("analyze", "entanglement report for a state");
  std::string ana_rho, ana_out;
  analyze->add_option("--rho", ana_rho, "density JSON input")->required();
  analyze->add_option("--out", ana_out, "output file (default stdout)");

  // ---- bc ----
  auto* bc_cmd = app.add_subcommand("bc", "commitment-token security analysis");
  bc_cmd->require_subcommand(1);

  auto* bc_analyze = bc_cmd->add_subcommand("analyze", "token analysis of a source state");
  std::string bca_source, bca_out;
  bc_analyze->add_option("--source", bca_source, "two-qutrit density JSON")->required();
  bc_analyze->add_option("--out", bca_out, "output file (default stdout)");

  auto* bc_curves = bc_cmd->add_subcommand("curves", "reference security curves as CSV");
  std::string bcc_out;
  bc_curves->add_option("--out", bcc_out, "output file (default stdout)");

  auto* bc_threshold = bc_cmd->add_subcommand("threshold", "residual weight at the "
                                                           "qubit boundary");
  double bct_lambda = 0.27;
  std::string bct_out;
  bc_threshold->add_option("--lambda", bct_lambda, "ideal token parameter")->required();
  bc_threshold->add_option("--out", bct_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (make->parsed()) {
    qdl_state* raw = nullptr;
    if (kind == "phi-plus") {
      check(qdl_state_max_entangled(2, &raw));
    } else if (kind == "max-qutrit") {
      check(qdl_state_max_entangled(3, &raw));
    } else if (kind == "nonmax-qubit" || kind == "nonmax-qutrit") {
      const double re = eps_abs * std::cos(eps_arg);
      const double im = eps_abs * std::sin(eps_arg);
      check(kind == "nonmax-qubit" ? qdl_state_nonmax_qubit(re, im, &raw)
                                   : qdl_state_nonmax_qutrit(re, im, &raw));
    } else if (kind == "maximally-mixed") {
      std::vector<int> dims;
      std::stringstream ss(dims_arg);
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          dims.push_back(std::stoi(part));
        } catch (const std::exception&) {
          die("bad --dims entry: " + part);
        }
      }
      check(qdl_state_maximally_mixed(dims.data(), static_cast<int>(dims.size()),
                                      &raw));
    } else {
      std::cerr << "usage error: unknown --kind " << kind << "\n";
      return 2;
    }
    StatePtr state(raw);
    if (mix_sl >= 0.0) {
      qdl_state* mixed = nullptr;
      check(qdl_state_mix_to_linear_entropy(state.get(), mix_sl, &mixed));
      state.reset(mixed);
    }
    emit(state_json(state.get()), make_out);
    return 0;
  }

  if (decompose->parsed()) {
    char* raw = nullptr;
    check(qdl_modes_decompose(dec_x0, dec_waist, &raw));
    const CString guard(raw);
    emit(raw, dec_out);
    return 0;
  }

  if (gouy->parsed()) {
    double phase = 0.0;
    check(qdl_gouy_phase(gouy_order, gouy_z, gouy_zr, &phase));
    nlohmann::json j{{"schema", "gouy/1"},
                     {"order", gouy_order},
                     {"z", gouy_z},
                     {"zr", gouy_zr},
                     {"gouy_phase", phase}};
    if (gouy->count("--displacement") > 0) {
      double rotation = 0.0;
      check(qdl_vortex_rotation(gouy_x0, gouy_waist, gouy_z, gouy_zr, &rotation));
      j["displacement"] = gouy_x0;
      j["waist"] = gouy_waist;
      j["rotation"] = rotation;
    }
    emit(j.dump(2) + "\n", gouy_out);
    return 0;
  }

  if (raster->parsed()) {
    const size_t n = static_cast<size_t>(raster_pixels) * raster_pixels;
    std::vector<double> intensity(n), phase(n);
    check(qdl_mode_raster(raster_mode.c_str(), raster_waist, raster_pixels,
                          raster_half, intensity.data(), phase.data(),
                          static_cast<int>(n)));
    double peak = 0.0;
    for (const double v : intensity) peak = std::max(peak, v);
    std::vector<std::uint8_t> ibytes(n), pbytes(n);
    constexpr double kPi = 3.14159265358979323846;
    for (size_t i = 0; i < n; ++i) {
      ibytes[i] = static_cast<std::uint8_t>(
          std::lround(255.0 * (peak > 0.0 ? intensity[i] / peak : 0.0)));
      pbytes[i] =
          static_cast<std::uint8_t>(std::lround(255.0 * (phase[i] + kPi) / (2.0 * kPi)));
    }
    const std::string ipath = raster_prefix + "_intensity.pgm";
    const std::string ppath = raster_prefix + "_phase.pgm";
    write_pgm(ipath, raster_pixels, ibytes);
    write_pgm(ppath, raster_pixels, pbytes);
    nlohmann::json j{{"schema", "raster/1"},
                     {"mode", raster_mode},
                     {"pixels", raster_pixels},
                     {"waist", raster_waist},
                     {"half_width_waists", raster_half},
                     {"intensity_peak", peak},
                     {"files", nlohmann::json{{"intensity", ipath}, {"phase", ppath}}}};
    write_file(raster_prefix + ".json", j.dump(2) + "\n");
    return 0;
  }

  if (simulate->parsed()) {
    if (sim_set != "minimal" && sim_set != "overcomplete") {
      std::cerr << "usage error: --set must be minimal or overcomplete\n";
      return 2;
    }
    const StatePtr state = load_state(sim_state);
    char* raw = nullptr;
    check(qdl_tomo_simulate(state.get(), sim_set == "overcomplete" ? 1 : 0,
                            sim_shots, sim_seed, sim_exact ? 1 : 0, &raw));
    const CString guard(raw);
    emit(raw, sim_out);
    return 0;
  }

  if (reconstruct->parsed()) {
    if (rec_objective != "poisson" && rec_objective != "least-squares") {
      std::cerr << "usage error: --objective must be poisson or least-squares\n";
      return 2;
    }
    const std::string counts = read_file(rec_counts);
    qdl_state* raw_state = nullptr;
    char* raw_report = nullptr;
    check(qdl_tomo_reconstruct(counts.c_str(), rec_iters,
                               rec_objective == "least-squares" ? 1 : 0,
                               rec_restarts, &raw_state, &raw_report));
    const StatePtr state(raw_state);
    const CString report(raw_report);
    emit(state_json(state.get()), rec_out);
    if (!rec_report.empty()) write_file(rec_report, report.get());
    return 0;
  }

  if (analyze->parsed()) {
    const StatePtr state = load_state(ana_rho);
    char* raw = nullptr;
    check(qdl_entanglement_report(state.get(), &raw));
    const CString guard(raw);
    emit(raw, ana_out);
    return 0;
  }

  if (bc_analyze->parsed()) {
    const StatePtr source = load_state(bca_source);
    char* raw = nullptr;
    check(qdl_bc_report(source.get(), &raw));
    const CString guard(raw);
    emit(raw, bca_out);
    return 0;
  }

  if (bc_curves->parsed()) {
    char* raw = nullptr;
    check(qdl_bc_curves_csv(&raw));
    const CString guard(raw);
    emit(raw, bcc_out);
    return 0;
  }

  if (bc_threshold->parsed()) {
    char* raw = nullptr;
    check(qdl_bc_threshold(bct_lambda, &raw));
    const CString guard(raw);
    emit(raw, bct_out);
    return 0;
  }

  std::cerr << "usage error: no subcommand\n";
  return 2;
}
