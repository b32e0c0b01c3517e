#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "core/modes.hpp"

using namespace qdl::modes;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("mode labels parse and print") {
  const ModeSpec a = parse_mode_label("HG10", 1.0);
  CHECK(a.family == ModeFamily::HG);
  CHECK(a.a == 1);
  CHECK(a.b == 0);
  CHECK(mode_label(a) == "HG1,0");

  const ModeSpec b = parse_mode_label("LGV0+1", 2.0);
  CHECK(b.family == ModeFamily::LGV);
  CHECK(b.a == 0);
  CHECK(b.b == 1);
  CHECK(mode_label(b) == "LGV0,+1");

  const ModeSpec c = parse_mode_label("LGV1,-2", 1.0);
  CHECK(c.a == 1);
  CHECK(c.b == -2);
  CHECK(parse_mode_label(mode_label(c), 1.0).b == -2);

  CHECK_THROWS_AS(parse_mode_label("XY00", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parse_mode_label("HG1", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parse_mode_label("LGV", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parse_mode_label("HG1x", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hg(0, 0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(lgv(-1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("mode orders") {
  CHECK(hg(0, 0, 1.0).order() == 0);
  CHECK(hg(2, 1, 1.0).order() == 3);
  CHECK(lgv(0, -3, 1.0).order() == 3);
  CHECK(lgv(2, 1, 1.0).order() == 5);
}

TEST_CASE("fundamental mode peak amplitude") {
  // normalized HG00 peaks at sqrt(2/pi)/w
  for (double w : {1.0, 0.7, 2.5}) {
    const cxd peak = mode_amplitude(hg(0, 0, w), 0.0, 0.0);
    CHECK(peak.real() == doctest::Approx(std::sqrt(2.0 / kPi) / w).epsilon(1e-12));
    CHECK(peak.imag() == 0.0);
  }
  CHECK(std::abs(mode_amplitude(hg(0, 0, 1.0), 0.0, 0.0)) ==
        doctest::Approx(0.7978845608028654).epsilon(1e-12));
}

TEST_CASE("modes are orthonormal under quadrature") {
  const double w = 1.0;
  const ModeSpec hgs[] = {hg(0, 0, w), hg(1, 0, w), hg(0, 1, w), hg(1, 1, w),
                          hg(2, 0, w)};
  for (const auto& a : hgs)
    for (const auto& b : hgs) {
      const cxd ov = overlap(a, b);
      const double expect = (a.a == b.a && a.b == b.b) ? 1.0 : 0.0;
      CHECK(std::abs(ov - expect) < 1e-7);
    }

  const ModeSpec lgs[] = {lgv(0, 0, w), lgv(0, 1, w), lgv(0, -1, w),
                          lgv(1, 0, w), lgv(0, 2, w)};
  for (const auto& a : lgs)
    for (const auto& b : lgs) {
      const cxd ov = overlap(a, b);
      const double expect = (a.a == b.a && a.b == b.b) ? 1.0 : 0.0;
      CHECK(std::abs(ov - expect) < 1e-7);
    }
}

TEST_CASE("vortex pair recombines into first-order Hermite modes") {
  const double w = 1.3;
  const double inv = 1.0 / std::sqrt(2.0);
  // (LGV(0,+1) + LGV(0,-1))/sqrt(2) = HG10
  const FieldSuperposition sum = make_superposition(
      {{inv, lgv(0, 1, w)}, {inv, lgv(0, -1, w)}}, w);
  const cxd ov_x = quadrature_overlap(
      [&](double x, double y) { return mode_amplitude(hg(1, 0, w), x, y); },
      [&](double x, double y) { return sum.amplitude(x, y); }, w);
  CHECK(std::abs(ov_x - 1.0) < 1e-7);

  // (LGV(0,+1) - LGV(0,-1))/(i sqrt(2)) = HG01
  const FieldSuperposition diff = make_superposition(
      {{cxd(0.0, -inv), lgv(0, 1, w)}, {cxd(0.0, inv), lgv(0, -1, w)}}, w);
  const cxd ov_y = quadrature_overlap(
      [&](double x, double y) { return mode_amplitude(hg(0, 1, w), x, y); },
      [&](double x, double y) { return diff.amplitude(x, y); }, w);
  CHECK(std::abs(ov_y - 1.0) < 1e-7);
}

TEST_CASE("gouy phase formula") {
  CHECK(gouy_phase(0, 0.0, 1.0) == 0.0);
  CHECK(gouy_phase(0, 1.0, 1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-12));
  CHECK(gouy_phase(2, 1e12, 1.0) == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-6));
  CHECK(gouy_phase(1, -1.0, 1.0) == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(gouy_phase(-1, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gouy_phase(0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("displaced vortex decomposition") {
  for (double w : {1.0, 0.8}) {
    for (double x0 : {0.0, 0.3, 1.0, 2.5}) {
      const VortexDecomposition an = displaced_vortex_decomposition(x0, w);
      // exact unit weight split
      CHECK(std::norm(an.c_g) + std::norm(an.c_v) ==
            doctest::Approx(1.0).epsilon(1e-14));
      // amplitude ratio |c_g| : |c_v| = x0 : w/sqrt(2)
      CHECK(std::abs(an.c_g) * (w / std::sqrt(2.0)) ==
            doctest::Approx(std::abs(an.c_v) * x0).epsilon(1e-12));
      CHECK(an.c_v.real() > 0.0);
      CHECK(an.c_g.real() <= 0.0);

      const VortexDecomposition qd =
          displaced_vortex_decomposition_quadrature(x0, w);
      CHECK(std::abs(qd.c_g - an.c_g) < 1e-6);
      CHECK(std::abs(qd.c_v - an.c_v) < 1e-6);
    }
  }
}

TEST_CASE("displaced vortex field is normalized and vanishes at the vortex") {
  const double w = 1.1, x0 = 0.6;
  const auto field = displaced_vortex_field(x0, w);
  const cxd norm = quadrature_overlap(field, field, w);
  CHECK(std::abs(norm - 1.0) < 1e-7);
  CHECK(std::abs(field(x0, 0.0)) < 1e-14);
}

TEST_CASE("singularity rotation equals the relative propagation phase") {
  const double w = 1.0, x0 = 0.5;
  const VortexDecomposition dec = displaced_vortex_decomposition(x0, w);
  const FieldSuperposition field = make_superposition(
      {{dec.c_g, lgv(0, 0, w)}, {dec.c_v, lgv(0, 1, w)}}, w);
  for (double z : {-2.0, -0.5, 0.0, 0.3, 1.0, 5.0}) {
    const double zr = 1.4;
    CHECK(singularity_rotation(field, z, zr) ==
          doctest::Approx(std::atan(z / zr)).epsilon(1e-12));
  }

  // the reported zero really is a zero of the propagated field
  const double z = 0.8, zr = 1.0;
  const double psi = std::atan(z / zr);
  const cxd zero = -(dec.c_g / dec.c_v) * std::exp(cxd(0.0, psi)) *
                   (w / std::sqrt(2.0));
  CHECK(std::abs(field.amplitude(zero.real(), zero.imag(), z, zr)) < 1e-12);

  // pure single modes have no tracked singularity
  const FieldSuperposition pure_g =
      make_superposition({{1.0, lgv(0, 0, w)}}, w);
  CHECK_THROWS_AS(singularity_rotation(pure_g, 1.0, 1.0), std::invalid_argument);
  const FieldSuperposition higher = make_superposition(
      {{0.7, lgv(0, 0, w)}, {0.7, lgv(0, -1, w)}}, w);
  CHECK_THROWS_AS(singularity_rotation(higher, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("superposition constructor validates") {
  CHECK_THROWS_AS(make_superposition({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(
      make_superposition({{1.0, lgv(0, 0, 2.0)}}, 1.0),  // waist mismatch
      std::invalid_argument);
  CHECK_THROWS_AS(make_superposition({{0.0, lgv(0, 0, 1.0)}}, 1.0),
                  std::invalid_argument);
  const FieldSuperposition f = make_superposition(
      {{3.0, lgv(0, 0, 1.0)}, {4.0, lgv(0, 1, 1.0)}}, 1.0);
  CHECK(std::abs(f.terms[0].first) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::abs(f.terms[1].first) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("raster layout puts +y in row zero") {
  const Raster r = mode_raster(hg(0, 1, 1.0), 33, 3.0);
  REQUIRE(r.pixels == 33);
  REQUIRE(r.intensity.size() == 33u * 33u);
  const int mid = 16;
  // HG01 is odd in y: phase 0 above the axis, pi below, zero on the axis
  CHECK(r.phase[0 * 33 + mid] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(r.phase[32 * 33 + mid]) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(r.intensity[mid * 33 + mid] == doctest::Approx(0.0).epsilon(1e-15));
  // intensity symmetric under y -> -y
  CHECK(r.intensity[0 * 33 + mid] ==
        doctest::Approx(r.intensity[32 * 33 + mid]).epsilon(1e-12));
  CHECK_THROWS_AS(mode_raster(hg(0, 0, 1.0), 1, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(mode_raster(hg(0, 0, 1.0), 16, 0.0), std::invalid_argument);
}
