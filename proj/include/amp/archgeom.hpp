#pragma once

// Rank-1 archimedean checks in the hyperbolic plane and 3-space models:
// the Plancherel factor beta(xi), Weyl discriminants of elliptic rotations,
// the H^3 spherical function and the bump-built test function k_xi, the
// displacement and tube geometry around an elliptic axis, and the polar
// metric expansion.  Closed forms are paired with independent numeric
// oracles (K-integrals, matrix models, Monte Carlo); asymptotic inequalities
// carry explicit fitted constants over declared grids.

#include "amp/basics.hpp"

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace amp {

enum class Model { H2, H3 };
std::string to_string(Model model);

struct SpectralParameter {
  std::vector<double> xi;  // one coordinate in the rank-1 models
  double norm = 0.0;
};
SpectralParameter spectral_parameter(double value);

struct PlancherelBeta {
  double value = 1.0;
  std::vector<std::pair<double, int>> factors;  // (<alpha, xi>, multiplicity)
};

// beta(xi) = prod (1 + |<alpha, xi>|)^{m(alpha)}: one real root with
// multiplicity 1 (H^2) or 2 (H^3), normalized so <alpha, xi> = |xi|.
PlancherelBeta beta(Model model, const SpectralParameter& xi);

struct EllipticElement {
  Model model = Model::H3;
  double angle = 0.0;         // eigenvalue angle theta; rotation by 2*theta
  double discriminant = 1.0;  // D(gamma)
  bool central = false;       // empty-product convention D = 1
};

// D(gamma) for gamma = diag(e^{i theta}, e^{-i theta}): 4 sin^2(theta) in
// H^2, 16 sin^4(theta) in H^3; central gamma returns 1 (flagged in the
// element form).
double weyl_discriminant_elliptic(Model model, double theta);
EllipticElement elliptic_element(Model model, double theta);
// Independent oracle: determinant of 1 - Ad(gamma) on g/g_gamma.
double weyl_discriminant_adjoint_oracle(Model model, double theta);

// Spherical function on H^3: sin(lambda r)/(lambda sinh r), = 1 at r = 0.
double spherical_h3(double lambda, double r);
// K-integral oracle: (1/2) int_{-1}^{1} (cosh r - u sinh r)^{-1-i lambda} du.
double spherical_h3_integral_oracle(double lambda, double r);

// Normalized Fourier transform squared of the radius-delta/2 cosine bump:
// h0(0) = 1, h0 >= 0, h0(lambda) = O((lambda delta)^{-6}).
double h0_value(double lambda, double delta);
// h_xi(lambda) = (h0(lambda - xi) + h0(lambda + xi))^2 (Weyl-symmetrized).
double h_xi_value(double lambda, double xi, double delta);
// Spherical inversion on H^3: (1/2 pi^2) int_0^inf h_xi(l) phi_l(r) l^2 dl.
double kxi_value(double r, double xi, double delta);

struct TestFunctionKxi {
  SpectralParameter xi;
  double h0_support_radius = 0.0;  // delta; k_xi is supported in r <= 2 delta
  std::vector<std::pair<double, double>> samples;  // (r, k_xi(r))
  double h_at_xi = 0.0;   // h_xi(xi), checked >= 1
  double h_floor = 0.0;   // min over |lambda - xi| <= 1, checked >= 1/16
  double k_at_zero = 0.0;
};

// Build k_xi and assert the positivity floor and normalization; delta must
// lie in (0, 1/2].
TestFunctionKxi build_kxi_h3(const SpectralParameter& xi, double delta);

// Geodesic displacement of a point at distance r from the rotation axis
// (H^3) or fixed point (H^2): cosh d = 1 + 2 sin^2(theta) sinh^2(r).
double displacement(Model model, double r, double theta);
// Independent 2x2 matrix model: cosh d = |m^{-1} gamma m|_F^2 / 2.
double displacement_matrix_oracle(Model model, double r, double theta);
// Radius of the displacement-< eps tube (exact inversion of the closed form).
double tube_radius_exact(Model model, double theta, double eps);

// Certified covering bound for the tube radius: c1 eps/D when eps/D <= 2,
// c2 log(eps/D) otherwise, with constants fitted per model over the declared
// grid theta in [0.05, pi/2], eps in [0.01, 5] and frozen.
double tube_radius_bound(Model model, double eps, double discriminant, double big_t);

// Volume of {p : d(p, gamma p) < eps}: per unit axis length in H^3
// (pi sinh^2 of the tube radius), total area in H^2.  Computed by
// quadrature over the radial coordinate.
double orbital_tube_volume(Model model, double theta, double eps);
// Monte Carlo cross-check with a fixed seed.
double orbital_tube_volume_mc(Model model, double theta, double eps, unsigned seed);
// Whether the tube exhausts the radius-r_max integration domain.
bool orbital_tube_saturated(Model model, double theta, double eps, double r_max);

struct MetricCheckReport {
  bool pass = false;
  double worst_rel_error = 0.0;
  double worst_radius = 0.0;
  bool angular_monotone = false;
  double witness_c = 0.5;  // angular coefficient >= sinh(c r) witnessed on the sample
};

// Finite-difference pullback of the metric in geodesic polar coordinates
// against ds^2 = dr^2 + sinh^2(r) dphi^2 at the sampled radii.
MetricCheckReport polar_metric_check(Model model, const std::vector<double>& radii);

// Upper half-space H^3 point distances through 2x2 complex matrices.
using Mat2c = std::array<std::complex<double>, 4>;  // row major
double h3_point_distance(const Mat2c& g1, const Mat2c& g2);
double h3_radial_part(const Mat2c& g);

struct FittedConstants {
  double tube_c1 = 0.0;         // tube_radius_bound, linear branch
  double tube_c2 = 0.0;         // tube_radius_bound, log branch
  double volume_c = 0.0;        // orbital volume <= C (eps/D)^2 for eps <= 2D
  double volume_a = 0.0;        // orbital volume <= C (eps/D)^A beyond
  double displacement_c = 0.0;  // d >= c sinh(r) D on the declared grid
  double spherical_c = 0.0;     // sup |phi_l(r)| (1 + l r)^{1/2}
  double kxi_ratio_c = 0.0;     // k_xi(0)/beta(xi) within [1/C, C]
  double kxi_decay_c = 0.0;     // sup k_xi(r) (1 + |xi| r)^{1/2} / beta(xi)
};
FittedConstants fitted_constants(Model model);

struct ArchCheck {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // worst ratio or error observed
  std::vector<std::pair<std::string, double>> fitted;
  std::string grid;  // the declared sample grid the check scanned
};

// Re-run the verification suites ("spherical", "discriminant",
// "displacement", "tube", "volume", "kxi", "metric", "radial", or "all").
std::vector<ArchCheck> verify_arch_suite(Model model, const std::string& suite, unsigned seed);

}  // namespace amp
