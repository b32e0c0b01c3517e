#include "core/modes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qdl::modes {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795028841971693993751;
constexpr double kOverlapTol = 1e-7;
constexpr double kWindowWaists = 6.0;

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_waist(double w) {
  if (!(w > 0.0)) throw std::invalid_argument("waist must be positive");
}

// Gauss-Legendre nodes/weights on [-1, 1], cached per order
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

cxd tensor_quadrature(const std::function<cxd(double, double)>& f, double half, int n) {
  const auto& [xs, ws] = gauss_legendre(n);
  cxd acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = half * xs[i];
    cxd row = 0.0;
    for (int j = 0; j < n; ++j) row += ws[j] * f(x, half * xs[j]);
    acc += ws[i] * row;
  }
  return acc * (half * half);
}

}  // namespace

int ModeSpec::order() const {
  return family == ModeFamily::HG ? a + b : 2 * a + std::abs(b);
}

ModeSpec hg(int r, int s, double waist) {
  if (r < 0 || s < 0) throw std::invalid_argument("HG indices must be non-negative");
  check_waist(waist);
  return ModeSpec{ModeFamily::HG, r, s, waist};
}

ModeSpec lgv(int p, int l, double waist) {
  if (p < 0) throw std::invalid_argument("LGV radial index must be non-negative");
  check_waist(waist);
  return ModeSpec{ModeFamily::LGV, p, l, waist};
}

ModeSpec parse_mode_label(const std::string& label, double waist) {
  auto parse_tail = [&](size_t pos, ModeFamily fam) {
    if (pos + 1 > label.size() || !std::isdigit(static_cast<unsigned char>(label[pos])))
      throw std::invalid_argument("bad mode label: " + label);
    const int first = label[pos] - '0';
    size_t rest = pos + 1;
    if (rest < label.size() && label[rest] == ',') ++rest;
    if (rest >= label.size()) throw std::invalid_argument("bad mode label: " + label);
    size_t used = 0;
    int second;
    try {
      second = std::stoi(label.substr(rest), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad mode label: " + label);
    }
    if (rest + used != label.size())
      throw std::invalid_argument("bad mode label: " + label);
    return fam == ModeFamily::HG ? hg(first, second, waist) : lgv(first, second, waist);
  };
  if (label.rfind("LGV", 0) == 0) return parse_tail(3, ModeFamily::LGV);
  if (label.rfind("HG", 0) == 0) return parse_tail(2, ModeFamily::HG);
  throw std::invalid_argument("mode label must start with HG or LGV: " + label);
}

std::string mode_label(const ModeSpec& spec) {
  if (spec.family == ModeFamily::HG)
    return "HG" + std::to_string(spec.a) + "," + std::to_string(spec.b);
  const std::string sign = spec.b >= 0 ? "+" : "";
  return "LGV" + std::to_string(spec.a) + "," + sign + std::to_string(spec.b);
}

cxd mode_amplitude(const ModeSpec& spec, double x, double y) {
  const double w = spec.waist;
  const double gauss = std::exp(-(x * x + y * y) / (w * w));
  if (spec.family == ModeFamily::HG) {
    const int r = spec.a, s = spec.b;
    const double norm =
        std::sqrt(2.0 / (kPi * std::pow(2.0, r + s) * factorial(r) * factorial(s))) / w;
    return norm * std::hermite(static_cast<unsigned>(r), std::sqrt(2.0) * x / w) *
           std::hermite(static_cast<unsigned>(s), std::sqrt(2.0) * y / w) * gauss;
  }
  const int p = spec.a, l = spec.b, al = std::abs(l);
  const double rho2 = x * x + y * y;
  const double t = 2.0 * rho2 / (w * w);
  const double norm = std::sqrt(2.0 * factorial(p) / (kPi * factorial(p + al))) / w;
  // (x + i sgn(l) y)^|l| carries both r^|l| and the azimuthal phase
  cxd azim = 1.0;
  if (al > 0) {
    const cxd base(std::sqrt(2.0) * x / w,
                   std::sqrt(2.0) * (l > 0 ? y : -y) / w);
    azim = std::pow(base, al);
  }
  return norm * azim *
         std::assoc_laguerre(static_cast<unsigned>(p), static_cast<unsigned>(al), t) *
         gauss;
}

double gouy_phase(int order, double z, double z_r) {
  if (order < 0) throw std::invalid_argument("mode order must be non-negative");
  if (!(z_r > 0.0)) throw std::invalid_argument("Rayleigh range must be positive");
  return (order + 1.0) * std::atan(z / z_r);
}

cxd FieldSuperposition::amplitude(double x, double y) const {
  cxd acc = 0.0;
  for (const auto& [c, spec] : terms) acc += c * mode_amplitude(spec, x, y);
  return acc;
}

cxd FieldSuperposition::amplitude(double x, double y, double z, double z_r) const {
  cxd acc = 0.0;
  for (const auto& [c, spec] : terms) {
    const double psi = gouy_phase(spec.order(), z, z_r);
    acc += c * std::exp(cxd(0.0, -psi)) * mode_amplitude(spec, x, y);
  }
  return acc;
}

FieldSuperposition make_superposition(std::vector<std::pair<cxd, ModeSpec>> terms,
                                      double waist) {
  check_waist(waist);
  if (terms.empty()) throw std::invalid_argument("superposition needs at least one term");
  double norm2 = 0.0;
  for (auto& [c, spec] : terms) {
    if (std::abs(spec.waist - waist) > 0.0)
      throw std::invalid_argument("all terms must share the superposition waist");
    norm2 += std::norm(c);
  }
  if (norm2 < 1e-300) throw std::invalid_argument("superposition coefficients are all zero");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& [c, spec] : terms) c *= inv;
  return FieldSuperposition{std::move(terms), waist};
}

cxd quadrature_overlap(const std::function<cxd(double, double)>& a,
                       const std::function<cxd(double, double)>& b, double waist) {
  check_waist(waist);
  const double half = kWindowWaists * waist;
  const auto integrand = [&](double x, double y) {
    return std::conj(a(x, y)) * b(x, y);
  };
  static const int levels[] = {16, 24, 32, 48, 64, 96, 128};
  cxd prev = tensor_quadrature(integrand, half, levels[0]);
  for (size_t k = 1; k < std::size(levels); ++k) {
    const cxd cur = tensor_quadrature(integrand, half, levels[k]);
    if (std::abs(cur - prev) < kOverlapTol) return cur;
    prev = cur;
  }
  throw std::runtime_error("overlap quadrature did not converge within refinement limit");
}

cxd overlap(const FieldSuperposition& a, const FieldSuperposition& b) {
  if (std::abs(a.waist - b.waist) > 0.0)
    throw std::invalid_argument("overlap requires matching waists");
  return quadrature_overlap([&](double x, double y) { return a.amplitude(x, y); },
                            [&](double x, double y) { return b.amplitude(x, y); },
                            a.waist);
}

cxd overlap(const ModeSpec& a, const ModeSpec& b) {
  if (std::abs(a.waist - b.waist) > 0.0)
    throw std::invalid_argument("overlap requires matching waists");
  return quadrature_overlap([&](double x, double y) { return mode_amplitude(a, x, y); },
                            [&](double x, double y) { return mode_amplitude(b, x, y); },
                            a.waist);
}

std::function<cxd(double, double)> displaced_vortex_field(double x0, double waist) {
  check_waist(waist);
  const double w = waist;
  const double norm = 1.0 / std::sqrt(kPi * w * w / 2.0 * (x0 * x0 + w * w / 2.0));
  return [x0, w, norm](double x, double y) {
    return norm * cxd(x - x0, y) * std::exp(-(x * x + y * y) / (w * w));
  };
}

VortexDecomposition displaced_vortex_decomposition(double x0, double waist) {
  check_waist(waist);
  const double s = std::sqrt(x0 * x0 + waist * waist / 2.0);
  return VortexDecomposition{cxd(-x0 / s, 0.0), cxd(waist / std::sqrt(2.0) / s, 0.0)};
}

VortexDecomposition displaced_vortex_decomposition_quadrature(double x0, double waist) {
  const auto field = displaced_vortex_field(x0, waist);
  const ModeSpec g = lgv(0, 0, waist), v = lgv(0, 1, waist);
  const cxd cg = quadrature_overlap(
      [&](double x, double y) { return mode_amplitude(g, x, y); }, field, waist);
  const cxd cv = quadrature_overlap(
      [&](double x, double y) { return mode_amplitude(v, x, y); }, field, waist);
  return VortexDecomposition{cg, cv};
}

double singularity_rotation(const FieldSuperposition& field, double z, double z_r) {
  if (!(z_r > 0.0)) throw std::invalid_argument("Rayleigh range must be positive");
  cxd c_g = 0.0, c_v = 0.0;
  bool saw_g = false, saw_v = false;
  for (const auto& [c, spec] : field.terms) {
    if (spec.family == ModeFamily::LGV && spec.a == 0 && spec.b == 0) {
      c_g += c;
      saw_g = true;
    } else if (spec.family == ModeFamily::HG && spec.order() == 0) {
      c_g += c;
      saw_g = true;
    } else if (spec.family == ModeFamily::LGV && spec.a == 0 && spec.b == 1) {
      c_v += c;
      saw_v = true;
    } else {
      throw std::invalid_argument(
          "singularity_rotation expects a superposition of G and LGV(0,+1) only");
    }
  }
  if (!saw_g || !saw_v || std::abs(c_g) < 1e-12 || std::abs(c_v) < 1e-12)
    throw std::invalid_argument(
        "singularity_rotation needs non-degenerate G and LGV(0,+1) components");
  // Field zero: c_g e^{-i psi} G + c_v e^{-2i psi} V = 0 with shared Gaussian
  // envelope gives (x + iy)_zero = -(c_g/c_v) e^{+i psi} w/sqrt(2).
  const double w = field.waist;
  const auto zero_at = [&](double psi) {
    return -(c_g / c_v) * std::exp(cxd(0.0, psi)) * (w / std::sqrt(2.0));
  };
  const cxd z0 = zero_at(0.0);
  const cxd z1 = zero_at(std::atan(z / z_r));
  double delta = std::arg(z1) - std::arg(z0);
  while (delta <= -kPi) delta += 2.0 * kPi;
  while (delta > kPi) delta -= 2.0 * kPi;
  return delta;
}

Raster mode_raster(const ModeSpec& spec, int pixels, double half_width_waists) {
  if (pixels < 2) throw std::invalid_argument("raster needs at least 2 pixels per side");
  if (!(half_width_waists > 0.0))
    throw std::invalid_argument("raster half width must be positive");
  Raster out;
  out.pixels = pixels;
  out.half_width = half_width_waists;
  out.intensity.resize(static_cast<size_t>(pixels) * pixels);
  out.phase.resize(out.intensity.size());
  const double half = half_width_waists * spec.waist;
  for (int row = 0; row < pixels; ++row) {
    const double y = half - 2.0 * half * row / (pixels - 1);
    for (int col = 0; col < pixels; ++col) {
      const double x = -half + 2.0 * half * col / (pixels - 1);
      const cxd amp = mode_amplitude(spec, x, y);
      out.intensity[static_cast<size_t>(row) * pixels + col] = std::norm(amp);
      out.phase[static_cast<size_t>(row) * pixels + col] = std::arg(amp);
    }
  }
  return out;
}

}  // namespace qdl::modes
