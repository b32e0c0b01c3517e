#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

// Paraxial transverse modes at the beam waist: Hermite-Gauss HG(r,s) and
// Laguerre-Gauss vortex modes LGV(p,l) with an (x +/- iy)^|l| azimuthal
// factor. The waist w is the 1/e^2 intensity radius, so amplitudes carry
// exp(-(x^2+y^2)/w^2). Propagation enters only through the Gouy phase
// (order+1) atan(z/zR), tracked as metadata.

namespace qdl::modes {

using cxd = std::complex<double>;

enum class ModeFamily { HG, LGV };

struct ModeSpec {
  ModeFamily family = ModeFamily::HG;
  int a = 0;        // HG: r (x index); LGV: p (radial)
  int b = 0;        // HG: s (y index); LGV: l (signed azimuthal)
  double waist = 1.0;
  int order() const;  // HG: r+s; LGV: 2p+|l|
};

ModeSpec hg(int r, int s, double waist);
ModeSpec lgv(int p, int l, double waist);

// compact labels like "HG10", "LGV0+1", "LGV0,-1"
ModeSpec parse_mode_label(const std::string& label, double waist);
std::string mode_label(const ModeSpec& spec);

// normalized amplitude at the waist plane
cxd mode_amplitude(const ModeSpec& spec, double x, double y);

double gouy_phase(int order, double z, double z_r);

struct FieldSuperposition {
  std::vector<std::pair<cxd, ModeSpec>> terms;
  double waist = 1.0;
  cxd amplitude(double x, double y) const;             // at the waist plane
  cxd amplitude(double x, double y, double z, double z_r) const;  // with Gouy phases
};

// normalizes the coefficient vector; all terms must share the waist
FieldSuperposition make_superposition(std::vector<std::pair<cxd, ModeSpec>> terms,
                                      double waist);

// <a|b> over the transverse plane by tensor-grid Gauss-Legendre quadrature
// on [-6w, 6w]^2, with the node count refined until successive estimates
// agree to 1e-7. Throws on non-convergence.
cxd quadrature_overlap(const std::function<cxd(double, double)>& a,
                       const std::function<cxd(double, double)>& b, double waist);
cxd overlap(const FieldSuperposition& a, const FieldSuperposition& b);
cxd overlap(const ModeSpec& a, const ModeSpec& b);

struct VortexDecomposition {
  cxd c_g;  // Gaussian component
  cxd c_v;  // LGV(0,+1) component
};

// Unit vortex displaced to (x0, 0): field prop. to ((x-x0) + iy) exp(-r^2/w^2).
// Exactly order <= 1, so two coefficients carry the whole field. Global phase
// fixed so c_v is real positive; the amplitude ratio is |c_g|:|c_v| = x0 : w/sqrt(2).
VortexDecomposition displaced_vortex_decomposition(double x0, double waist);
VortexDecomposition displaced_vortex_decomposition_quadrature(double x0, double waist);
std::function<cxd(double, double)> displaced_vortex_field(double x0, double waist);

// Azimuthal angle swept by the field zero of a {G, LGV(0,+1)} superposition
// between the waist and z; equals the relative Gouy phase atan(z/zR).
// Computed from the actual zero position at both planes.
double singularity_rotation(const FieldSuperposition& field, double z, double z_r);

struct Raster {
  int pixels = 0;
  double half_width = 0.0;  // in waist units
  std::vector<double> intensity;  // row-major, row 0 at y = +half_width
  std::vector<double> phase;      // radians in (-pi, pi]
};

Raster mode_raster(const ModeSpec& spec, int pixels, double half_width_waists);

}  // namespace qdl::modes
