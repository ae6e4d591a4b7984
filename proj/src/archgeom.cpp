#include "amp/archgeom.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace amp {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw invalid_input(std::string(what) + " must be finite");
  }
}

// Adaptive Simpson quadrature with an absolute tolerance floored at 1e-12.
// Depth exhaustion with the error estimate still above tolerance is a
// numeric error: the integrand failed to resolve.
struct Quadrature {
  const std::function<double(double)>& f;
  const char* what;
  int max_depth = 44;
  mutable long evals = 0;
  static constexpr long kEvalBudget = 4000000;

  double eval(double x) const {
    if (++evals > kEvalBudget) {
      throw numeric_error(std::string("quadrature for ") + what +
                          " exceeded its evaluation budget");
    }
    return f(x);
  }

  double run(double a, double b, double tol) const {
    tol = std::max(tol, 1e-12);
    double fa = eval(a), fb = eval(b), m = 0.5 * (a + b), fm = eval(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return rec(a, fa, b, fb, m, fm, whole, tol, 0);
  }

  double rec(double a, double fa, double b, double fb, double m, double fm,
             double whole, double tol, int depth) const {
    double lm = 0.5 * (a + m), flm = eval(lm);
    double rm = 0.5 * (m + b), frm = eval(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol) {
      return left + right + err / 15.0;
    }
    if (depth >= max_depth) {
      std::ostringstream os;
      os << "quadrature for " << what << " did not converge on ["
         << a << ", " << b << "], error estimate " << std::abs(err) / 15.0;
      throw numeric_error(os.str());
    }
    double half = std::max(0.5 * tol, 1e-12);
    return rec(a, fa, m, fm, lm, flm, left, half, depth + 1) +
           rec(m, fm, b, fb, rm, frm, right, half, depth + 1);
  }
};

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, const char* what) {
  Quadrature q{f, what};
  return q.run(a, b, tol);
}

// acosh(1 + x) with a stable branch for small x >= 0.
double acosh1p(double x) {
  if (x < 0) x = 0;
  if (x < 1e-8) return std::sqrt(2.0 * x) * (1.0 - x / 12.0);
  return std::acosh(1.0 + x);
}

// 2x2 complex helpers for the matrix-model oracles.
Mat2c mat_mul2(const Mat2c& a, const Mat2c& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2c mat_inv2(const Mat2c& g) {
  std::complex<double> det = g[0] * g[3] - g[1] * g[2];
  if (std::abs(det - 1.0) > 1e-9) {
    throw invalid_input("matrix must have determinant 1");
  }
  return {g[3], -g[1], -g[2], g[0]};
}

// For det w = 1, |w|_F^2 - 2 equals |w00 - conj(w11)|^2 + |w01 + conj(w10)|^2,
// a cancellation-free form of 2 (cosh d - 1).
double frobenius2_minus_two(const Mat2c& w) {
  return std::norm(w[0] - std::conj(w[3])) + std::norm(w[1] + std::conj(w[2]));
}

Mat2c rotation_gamma(double theta) {  // diag(e^{i theta}, e^{-i theta})
  return {std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta)};
}

Mat2c axis_translation(double r) {  // moves the origin distance r off the axis
  double c = std::cosh(0.5 * r), s = std::sinh(0.5 * r);
  return {c, s, s, c};
}

double det_gauss(std::vector<std::vector<double>> m) {
  std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
    }
    if (std::abs(m[piv][col]) < 1e-14) return 0.0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      double factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

// Normalized Fourier transform of the radius-a cosine bump cos^2(pi t / 2a):
// B(x) = pi^2 sin(x) / (x (pi^2 - x^2)) at x = lambda a, with B(0) = 1 and
// removable singularities at x = pi.  |B(x)| = O(x^{-3}).
double bump_transform(double x) {
  x = std::abs(x);
  if (x < 1e-4) {
    return 1.0 + x * x * (1.0 / (kPi * kPi) - 1.0 / 6.0);
  }
  double dpi = x - kPi;
  if (std::abs(dpi) < 1e-4) {
    double sinc = std::abs(dpi) < 1e-14 ? 1.0 : std::sin(dpi) / dpi;
    return kPi * kPi * sinc / (x * (x + kPi));
  }
  return kPi * kPi * std::sin(x) / (x * (kPi * kPi - x * x));
}

void check_delta(double delta) {
  require_finite(delta, "delta");
  if (delta <= 0.0 || delta > 0.5) {
    throw invalid_input("bump support radius delta must lie in (0, 1/2]");
  }
}

// sin(lambda r) / (lambda sinh r) continued to lambda = 0.
double phi_lambda(double lambda, double r) {
  if (r == 0.0) return 1.0;
  double sh = std::sinh(r);
  if (lambda * r < 1e-8) {
    double u = lambda * r;
    return r * (1.0 - u * u / 6.0) / sh;
  }
  return std::sin(lambda * r) / (lambda * sh);
}

void check_model(Model model) {
  if (model != Model::H2 && model != Model::H3) {
    throw invalid_input("unknown model");
  }
}

double radial_density(Model model, double rho) {
  // Area element per unit axis length (H^3 tube) or arc length factor of the
  // circle of radius rho (H^2 disk); both integrate against 2 pi d rho.
  return model == Model::H3 ? std::sinh(rho) * std::cosh(rho) : std::sinh(rho);
}

double tube_cut_radius(Model model, double theta, double eps, double r_max) {
  // Bisect displacement(r) = eps; displacement is increasing in r.
  if (displacement(model, r_max, theta) < eps) return r_max;
  double lo = 0.0, hi = r_max;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (displacement(model, mid, theta) < eps ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::string to_string(Model model) {
  check_model(model);
  return model == Model::H2 ? "h2" : "h3";
}

SpectralParameter spectral_parameter(double value) {
  require_finite(value, "spectral parameter");
  SpectralParameter out;
  out.xi = {value};
  out.norm = std::abs(value);
  return out;
}

PlancherelBeta beta(Model model, const SpectralParameter& xi) {
  check_model(model);
  if (xi.xi.size() != 1) {
    throw invalid_input("spectral parameter must have one coordinate");
  }
  require_finite(xi.xi[0], "spectral parameter");
  int mult = model == Model::H3 ? 2 : 1;
  PlancherelBeta out;
  out.factors = {{std::abs(xi.xi[0]), mult}};
  out.value = std::pow(1.0 + std::abs(xi.xi[0]), mult);
  return out;
}

double weyl_discriminant_elliptic(Model model, double theta) {
  check_model(model);
  require_finite(theta, "angle");
  if (theta < 0.0 || theta > kPi) {
    throw invalid_input("elliptic angle must lie in [0, pi]");
  }
  if (theta == 0.0 || theta == kPi) return 1.0;  // central, empty product
  double s = std::sin(theta);
  double d = 4.0 * s * s;
  return model == Model::H3 ? d * d : d;
}

EllipticElement elliptic_element(Model model, double theta) {
  EllipticElement out;
  out.model = model;
  out.angle = theta;
  out.discriminant = weyl_discriminant_elliptic(model, theta);
  out.central = theta == 0.0 || theta == kPi;
  return out;
}

double weyl_discriminant_adjoint_oracle(Model model, double theta) {
  check_model(model);
  require_finite(theta, "angle");
  if (theta == 0.0 || theta == kPi) return 1.0;
  if (model == Model::H2) {
    // Ad of the rotation g = [[c, -s], [s, c]] on sl2(R)/so(2).  The
    // centralizer so(2) = span(E - F) has the Killing-orthogonal invariant
    // complement span{H, E + F}; extract that 2x2 block numerically.
    double c = std::cos(theta), s = std::sin(theta);
    auto ad = [&](double a, double b, double f) {
      // X = [[a, b], [f, -a]] -> g X g^{-1}, returned as (H, E, F) coords.
      double y00 = c * a - s * f, y01 = c * b + s * a;
      double y10 = s * a + c * f, y11 = s * b - c * a;
      double z00 = y00 * c + y01 * (-s);
      double z01 = y00 * s + y01 * c;
      double z10 = y10 * c + y11 * (-s);
      return std::array<double, 3>{z00, z01, z10};
    };
    auto img_h = ad(1.0, 0.0, 0.0);
    auto img_ef = ad(0.0, 1.0, 1.0);
    std::vector<std::vector<double>> m = {
        {1.0 - img_h[0], -img_ef[0]},
        {-0.5 * (img_h[1] + img_h[2]), 1.0 - 0.5 * (img_ef[1] + img_ef[2])}};
    return det_gauss(m);
  }
  // H^3: Ad of diag(e^{i theta}, e^{-i theta}) on sl2(C)/(C H) as a real
  // 4-space with basis {E, iE, F, iF}.
  Mat2c g = rotation_gamma(theta);
  Mat2c gi = mat_inv2(g);
  auto ad = [&](const Mat2c& x) { return mat_mul2(mat_mul2(g, x), gi); };
  Mat2c e = {0.0, 1.0, 0.0, 0.0};
  Mat2c f = {0.0, 0.0, 1.0, 0.0};
  Mat2c ie = {0.0, std::complex<double>(0.0, 1.0), 0.0, 0.0};
  Mat2c iff = {0.0, 0.0, std::complex<double>(0.0, 1.0), 0.0};
  std::array<Mat2c, 4> imgs = {ad(e), ad(ie), ad(f), ad(iff)};
  std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
  for (int col = 0; col < 4; ++col) {
    // coords: (Re e, Im e, Re f, Im f) = entries (0,1) and (1,0).
    m[0][col] = (col == 0 ? 1.0 : 0.0) - imgs[col][1].real();
    m[1][col] = (col == 1 ? 1.0 : 0.0) - imgs[col][1].imag();
    m[2][col] = (col == 2 ? 1.0 : 0.0) - imgs[col][2].real();
    m[3][col] = (col == 3 ? 1.0 : 0.0) - imgs[col][2].imag();
  }
  return det_gauss(m);
}

double spherical_h3(double lambda, double r) {
  require_finite(lambda, "lambda");
  require_finite(r, "radius");
  if (lambda <= 0.0) throw invalid_input("lambda must be positive");
  if (r < 0.0) throw invalid_input("radius must be nonnegative");
  return phi_lambda(lambda, r);
}

double spherical_h3_integral_oracle(double lambda, double r) {
  require_finite(lambda, "lambda");
  require_finite(r, "radius");
  if (lambda <= 0.0) throw invalid_input("lambda must be positive");
  if (r < 0.0) throw invalid_input("radius must be nonnegative");
  if (r == 0.0) return 1.0;
  double ch = std::cosh(r), sh = std::sinh(r);
  auto f = [&](double u) {
    double x = ch - u * sh;
    return std::cos(lambda * std::log(x)) / x;
  };
  return 0.5 * integrate(f, -1.0, 1.0, 1e-11, "spherical K-integral");
}

double h0_value(double lambda, double delta) {
  check_delta(delta);
  require_finite(lambda, "lambda");
  double b = bump_transform(lambda * 0.5 * delta);
  return b * b;
}

double h_xi_value(double lambda, double xi, double delta) {
  check_delta(delta);
  require_finite(lambda, "lambda");
  require_finite(xi, "xi");
  double s = h0_value(lambda - xi, delta) + h0_value(lambda + xi, delta);
  return s * s;
}

double kxi_value(double r, double xi, double delta) {
  check_delta(delta);
  require_finite(r, "radius");
  require_finite(xi, "xi");
  if (r < 0.0) throw invalid_input("radius must be nonnegative");
  if (xi < 0.0) throw invalid_input("xi must be nonnegative");
  // h_xi(l) l^2 decays like (a |l - xi|)^{-12} l^2; beyond aD = 60 the tail
  // is far below the quadrature floor.
  double cut = xi + 120.0 / delta;
  auto f = [&](double l) {
    return h_xi_value(l, xi, delta) * phi_lambda(l, r) * l * l /
           (2.0 * kPi * kPi);
  };
  double scale = (1.0 + xi) * (1.0 + xi);
  return integrate(f, 0.0, cut, 1e-10 * scale, "spherical inversion");
}

TestFunctionKxi build_kxi_h3(const SpectralParameter& xi, double delta) {
  check_delta(delta);
  if (xi.xi.size() != 1) {
    throw invalid_input("spectral parameter must have one coordinate");
  }
  require_finite(xi.xi[0], "spectral parameter");
  TestFunctionKxi out;
  out.xi = xi;
  out.h0_support_radius = delta;
  double x = xi.norm;
  out.h_at_xi = h_xi_value(x, x, delta);
  if (out.h_at_xi < 1.0 - 1e-12) {
    throw consistency_error("h_xi fails the normalization h_xi(xi) >= 1");
  }
  out.h_floor = out.h_at_xi;
  for (int i = -64; i <= 64; ++i) {
    double v = h_xi_value(x + i / 64.0, x, delta);
    if (v < -1e-15) throw consistency_error("h_xi must be nonnegative");
    out.h_floor = std::min(out.h_floor, v);
  }
  if (out.h_floor < 1.0 / 16.0) {
    throw consistency_error("h_xi fails the 1/16 floor on |lambda - xi| <= 1");
  }
  for (int i = 0; i <= 30; ++i) {
    double r = i * 0.05;
    out.samples.emplace_back(r, kxi_value(r, x, delta));
  }
  out.k_at_zero = out.samples.front().second;
  return out;
}

double displacement(Model model, double r, double theta) {
  check_model(model);
  require_finite(r, "radius");
  require_finite(theta, "angle");
  if (r < 0.0) throw invalid_input("radius must be nonnegative");
  if (theta < 0.0 || theta > kPi) {
    throw invalid_input("elliptic angle must lie in [0, pi]");
  }
  // cosh d = 1 + 2 sin^2(theta) sinh^2(r) rearranges to the cancellation-free
  // form sinh(d/2) = |sin theta| sinh(r).
  return 2.0 * std::asinh(std::abs(std::sin(theta)) * std::sinh(r));
}

double displacement_matrix_oracle(Model model, double r, double theta) {
  check_model(model);
  require_finite(r, "radius");
  require_finite(theta, "angle");
  if (r < 0.0) throw invalid_input("radius must be nonnegative");
  if (theta < 0.0 || theta > kPi) {
    throw invalid_input("elliptic angle must lie in [0, pi]");
  }
  // Conjugate the rotation to the point at distance r from its axis and
  // read the displacement off the Frobenius norm.  The same 2x2 computation
  // covers H^2 (real matrices embed in the complex ones).
  Mat2c m = axis_translation(r);
  return h3_point_distance(mat_mul2(rotation_gamma(theta), m), m);
}

double tube_radius_exact(Model model, double theta, double eps) {
  check_model(model);
  require_finite(theta, "angle");
  require_finite(eps, "epsilon");
  if (theta <= 0.0 || theta >= kPi) {
    throw invalid_input("tube radius needs a non-central angle in (0, pi)");
  }
  if (eps <= 0.0) throw invalid_input("epsilon must be positive");
  // Invert sinh(eps/2) = sin(theta) sinh(r).
  return std::asinh(std::sinh(0.5 * eps) / std::sin(theta));
}

double tube_radius_bound(Model model, double eps, double discriminant, double big_t) {
  check_model(model);
  require_finite(eps, "epsilon");
  require_finite(discriminant, "discriminant");
  require_finite(big_t, "T");
  if (big_t < 1.0) throw invalid_input("T must be at least 1");
  if (eps <= 0.0 || eps >= big_t) {
    throw invalid_input("epsilon must lie in (0, T)");
  }
  if (discriminant <= 0.0) {
    throw invalid_input("discriminant must be positive");
  }
  FittedConstants fc = fitted_constants(model);
  double x = eps / discriminant;
  return x <= 2.0 ? fc.tube_c1 * x : fc.tube_c2 * std::log(x);
}

double orbital_tube_volume(Model model, double theta, double eps) {
  check_model(model);
  require_finite(theta, "angle");
  require_finite(eps, "epsilon");
  if (theta <= 0.0 || theta >= kPi) {
    throw invalid_input("tube volume needs a non-central angle in (0, pi)");
  }
  if (eps <= 0.0) throw invalid_input("epsilon must be positive");
  const double r_max = 25.0;
  double cut = tube_cut_radius(model, theta, eps, r_max);
  if (cut == 0.0) return 0.0;
  auto f = [&](double rho) { return radial_density(model, rho); };
  return 2.0 * kPi * integrate(f, 0.0, cut, 1e-12 * std::max(1.0, std::cosh(cut)),
                               "tube volume");
}

double orbital_tube_volume_mc(Model model, double theta, double eps, unsigned seed) {
  check_model(model);
  require_finite(theta, "angle");
  require_finite(eps, "epsilon");
  if (theta <= 0.0 || theta >= kPi) {
    throw invalid_input("tube volume needs a non-central angle in (0, pi)");
  }
  if (eps <= 0.0) throw invalid_input("epsilon must be positive");
  const double r_max = 25.0;
  double cut = tube_cut_radius(model, theta, eps, r_max);
  double box = std::min(r_max, 1.25 * cut + 0.05);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, box);
  const int n = 400000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double rho = unif(rng);
    if (displacement(model, rho, theta) < eps) {
      sum += radial_density(model, rho);
    }
  }
  return 2.0 * kPi * box * sum / n;
}

bool orbital_tube_saturated(Model model, double theta, double eps, double r_max) {
  check_model(model);
  require_finite(r_max, "r_max");
  if (r_max <= 0.0) throw invalid_input("r_max must be positive");
  return displacement(model, r_max, theta) < eps;
}

MetricCheckReport polar_metric_check(Model model, const std::vector<double>& radii) {
  check_model(model);
  if (radii.empty()) throw invalid_input("metric check needs sample radii");
  MetricCheckReport out;
  out.pass = true;
  out.angular_monotone = true;
  double prev_coeff = 0.0;
  for (double r : radii) {
    require_finite(r, "radius");
    if (r <= 0.0 || r > 6.0) {
      throw invalid_input("metric check radii must lie in (0, 6]");
    }
    // Points at polar coordinates (r, +-h/2) via the matrix model: rotate
    // the translated origin around the axis through the base point.  The
    // step balances O(h^2 cosh^2 r) truncation against chord roundoff.
    double sh = std::sinh(r);
    double h = 1.5e-3 / std::cosh(r);
    Mat2c m = axis_translation(r);
    auto at_angle = [&](double phi) {
      // Rotation by phi around the axis is gamma with eigenvalue angle phi/2.
      return mat_mul2(rotation_gamma(0.5 * phi), m);
    };
    double chord = h3_point_distance(at_angle(-0.5 * h), at_angle(0.5 * h));
    double angular = chord / h;
    double rel = std::abs(angular / sh - 1.0);
    if (rel > out.worst_rel_error) {
      out.worst_rel_error = rel;
      out.worst_radius = r;
    }
    if (rel > 1e-6) out.pass = false;
    // The radial coefficient must be exactly 1: step along the axis ray,
    // where the finite difference has no truncation term at all.
    double hr = 1e-3;
    double radial =
        h3_point_distance(axis_translation(r + hr), axis_translation(r)) / hr;
    double rel_r = std::abs(radial - 1.0);
    if (rel_r > out.worst_rel_error) {
      out.worst_rel_error = rel_r;
      out.worst_radius = r;
    }
    if (rel_r > 1e-6) out.pass = false;
    if (angular < std::sinh(out.witness_c * r)) out.pass = false;
    if (angular <= prev_coeff) out.angular_monotone = false;
    prev_coeff = angular;
  }
  if (!std::is_sorted(radii.begin(), radii.end())) {
    out.angular_monotone = false;
  }
  return out;
}

double h3_point_distance(const Mat2c& g1, const Mat2c& g2) {
  std::complex<double> det1 = g1[0] * g1[3] - g1[1] * g1[2];
  if (std::abs(det1 - 1.0) > 1e-9) {
    throw invalid_input("matrix must have determinant 1");
  }
  Mat2c w = mat_mul2(mat_inv2(g2), g1);
  return acosh1p(0.5 * frobenius2_minus_two(w));
}

double h3_radial_part(const Mat2c& g) {
  return h3_point_distance(g, Mat2c{1.0, 0.0, 0.0, 1.0});
}

FittedConstants fitted_constants(Model model) {
  check_model(model);
  // Fitted once by max-ratio (or min-ratio) scans over the declared grids
  // and frozen with a few percent of headroom; the verification suites
  // re-scan the same grids against these values.  Observed extrema at the
  // time of fitting are quoted alongside.
  FittedConstants fc;
  if (model == Model::H3) {
    fc.tube_c1 = 8.2;          // scan max 8.000
    fc.tube_c2 = 4.4;          // scan max 4.180
    fc.volume_c = 215.0;       // scan max 205.3
    fc.volume_a = 0.55;        // scan max 0.503
    fc.displacement_c = 1e-4;  // scan min 1.135e-4
  } else {
    fc.tube_c1 = 2.1;          // scan max 2.000
    fc.tube_c2 = 4.1;          // scan max 3.898
    fc.volume_c = 13.5;        // scan max 12.64
    fc.volume_a = 1.75;        // scan max 1.630
    fc.displacement_c = 4e-4;  // scan min 4.540e-4
  }
  // Rank-1 spherical and test-function constants (exercised on H^3).
  fc.spherical_c = 1.25;  // scan sup 1.2026
  fc.kxi_ratio_c = 1.6;   // scan worst factor 1.494
  fc.kxi_decay_c = 1.6;   // scan worst 1.424
  return fc;
}

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * i / (n - 1));
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (double v : linspace(std::log(lo), std::log(hi), n)) {
    out.push_back(std::exp(v));
  }
  return out;
}

Mat2c random_sl2(std::mt19937& rng, bool complex_entries) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Mat2c g;
  std::complex<double> det;
  do {
    for (auto& entry : g) {
      entry = complex_entries
                  ? std::complex<double>(gauss(rng), gauss(rng))
                  : std::complex<double>(gauss(rng), 0.0);
    }
    det = g[0] * g[3] - g[1] * g[2];
    // Real matrices must keep a positive determinant to stay real.
  } while (complex_entries ? std::abs(det) < 1e-3 : det.real() < 1e-3);
  std::complex<double> root = std::sqrt(det);
  for (auto& entry : g) entry /= root;
  return g;
}

ArchCheck check_spherical(Model, unsigned) {
  ArchCheck out{"spherical", true, 0.0, {}};
  out.grid = "lambda in {0.5..100} x r in {1e-3..2} oracle; lambda log[1,100]x41, r lin(0,2]x40 sup";
  for (double lambda : {0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0}) {
    for (double r : {1e-3, 0.1, 0.5, 1.0, 2.0}) {
      double closed = spherical_h3(lambda, r);
      double oracle = spherical_h3_integral_oracle(lambda, r);
      double rel = std::abs(closed - oracle) /
                   std::max(1e-3, std::abs(closed));
      out.worst = std::max(out.worst, rel);
      if (rel > 1e-8) out.pass = false;
    }
  }
  double cap = fitted_constants(Model::H3).spherical_c;
  double sup = 0.0;
  for (double lambda : logspace(1.0, 100.0, 41)) {
    for (double r : linspace(0.05, 2.0, 40)) {
      sup = std::max(sup, std::abs(spherical_h3(lambda, r)) *
                              std::sqrt(1.0 + lambda * r));
    }
  }
  if (sup > cap || cap > 3.0) out.pass = false;
  out.fitted.emplace_back("sup_phi_sqrt", sup);
  out.fitted.emplace_back("sup_phi_sqrt_cap", cap);
  return out;
}

ArchCheck check_discriminant(Model model, unsigned) {
  ArchCheck out{"discriminant", true, 0.0, {}};
  out.grid = "theta lin[0.02, pi-0.02]x50, central endpoints, small-angle 1e-3";
  for (double theta : linspace(0.02, kPi - 0.02, 50)) {
    double closed = weyl_discriminant_elliptic(model, theta);
    double oracle = weyl_discriminant_adjoint_oracle(model, theta);
    double rel = std::abs(closed - oracle) / std::max(1e-12, closed);
    out.worst = std::max(out.worst, rel);
    if (rel > 1e-10) out.pass = false;
  }
  if (weyl_discriminant_elliptic(model, 0.0) != 1.0) out.pass = false;
  if (weyl_discriminant_elliptic(model, kPi) != 1.0) out.pass = false;
  double t = 1e-3;
  double lead = model == Model::H3 ? 16.0 * std::pow(t, 4) : 4.0 * t * t;
  double asym = weyl_discriminant_elliptic(model, t) / lead;
  if (std::abs(asym - 1.0) > 0.01) out.pass = false;
  out.fitted.emplace_back("small_angle_ratio", asym);
  return out;
}

ArchCheck check_displacement(Model model, unsigned) {
  ArchCheck out{"displacement", true, 0.0, {}};
  out.grid = "theta lin[0.05, pi/2]x25 x r lin[0,10]x26 oracle; theta x40, r lin[0.25,10]x40 bound";
  for (double theta : linspace(0.05, 0.5 * kPi, 25)) {
    for (double r : linspace(0.0, 10.0, 26)) {
      double closed = displacement(model, r, theta);
      double oracle = displacement_matrix_oracle(model, r, theta);
      double err = std::abs(closed - oracle);
      out.worst = std::max(out.worst, err);
      if (err > 1e-10) out.pass = false;
    }
  }
  double c = fitted_constants(model).displacement_c;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (double theta : linspace(0.05, 0.5 * kPi, 40)) {
    double disc = weyl_discriminant_elliptic(model, theta);
    for (double r : linspace(0.25, 10.0, 40)) {
      double ratio = displacement(model, r, theta) /
                     (std::sinh(r) * disc);
      min_ratio = std::min(min_ratio, ratio);
      if (ratio < c) out.pass = false;
    }
  }
  out.fitted.emplace_back("displacement_c", c);
  out.fitted.emplace_back("min_ratio", min_ratio);
  return out;
}

ArchCheck check_tube(Model model, unsigned) {
  ArchCheck out{"tube", true, 0.0, {}};
  out.grid = "theta lin[0.05, pi/2]x60 x eps log[0.01,5]x60, radius capped at 20";
  FittedConstants fc = fitted_constants(model);
  double worst = 0.0;
  for (double theta : linspace(0.05, 0.5 * kPi, 60)) {
    double disc = weyl_discriminant_elliptic(model, theta);
    for (double eps : logspace(0.01, 5.0, 60)) {
      double r_t = std::min(tube_radius_exact(model, theta, eps), 20.0);
      double bound = tube_radius_bound(model, eps, disc, 6.0);
      worst = std::max(worst, r_t / bound);
      if (r_t > bound * (1.0 + 1e-12)) out.pass = false;
    }
  }
  out.worst = worst;
  out.fitted.emplace_back("tube_c1", fc.tube_c1);
  out.fitted.emplace_back("tube_c2", fc.tube_c2);
  // Continuity across the case split, up to the fitted constants.
  double left = fc.tube_c1 * 2.0;
  double right = fc.tube_c2 * std::log(2.0 + 1e-9);
  double jump = left / right;
  if (jump < 0.05 || jump > 20.0) out.pass = false;
  out.fitted.emplace_back("split_jump", jump);
  return out;
}

ArchCheck check_volume(Model model, unsigned seed) {
  ArchCheck out{"volume", true, 0.0, {}};
  out.grid = "theta lin[0.1, pi/2]x12, eps log window [max(1e-6, D/50), min(2D, 1/2)]x8 and (2D, 5]x6";
  FittedConstants fc = fitted_constants(model);
  double worst_quad = 0.0, worst_shape = 0.0;
  for (double theta : linspace(0.1, 0.5 * kPi, 12)) {
    double disc = weyl_discriminant_elliptic(model, theta);
    double lo = std::max(1e-6, 2.0 * disc / 100.0);
    double hi = std::min(2.0 * disc, 0.5);
    if (lo >= hi) continue;
    for (double eps : logspace(lo, hi, 8)) {
      double v = orbital_tube_volume(model, theta, eps);
      double cut = tube_radius_exact(model, theta, eps);
      double closed = model == Model::H3
                          ? kPi * std::sinh(cut) * std::sinh(cut)
                          : 2.0 * kPi * (std::cosh(cut) - 1.0);
      double rel = std::abs(v - closed) / closed;
      worst_quad = std::max(worst_quad, rel);
      if (rel > 1e-9) out.pass = false;
      double shape = v / std::pow(eps / disc, 2.0);
      worst_shape = std::max(worst_shape, shape);
      if (shape > fc.volume_c) out.pass = false;
    }
    double lo2 = std::max(2.0 * disc, 1e-3) * 1.01;
    if (lo2 >= 5.0) continue;
    for (double eps : logspace(lo2, 5.0, 6)) {
      if (eps <= 2.0 * disc) continue;
      double v = orbital_tube_volume(model, theta, eps);
      double cap = fc.volume_c * std::pow(eps / disc, fc.volume_a);
      if (v > cap) out.pass = false;
      worst_shape = std::max(worst_shape, v / std::pow(eps / disc, fc.volume_a));
    }
  }
  out.worst = worst_shape;
  out.fitted.emplace_back("volume_c", fc.volume_c);
  out.fitted.emplace_back("volume_a", fc.volume_a);
  out.fitted.emplace_back("worst_quadrature_rel", worst_quad);
  double v = orbital_tube_volume(model, 0.5 * kPi, 0.1);
  double mc = orbital_tube_volume_mc(model, 0.5 * kPi, 0.1, seed);
  double rel = std::abs(mc - v) / v;
  out.fitted.emplace_back("mc_rel_error", rel);
  if (rel > 0.02) out.pass = false;
  return out;
}

ArchCheck check_kxi(Model, unsigned) {
  ArchCheck out{"kxi", true, 0.0, {}};
  out.grid = "xi in {5, 20, 50, 100, 200}, delta 1/2, r lin[0, 1.5]x31";
  FittedConstants fc = fitted_constants(Model::H3);
  double worst_ratio = 0.0, worst_decay = 0.0;
  for (double xi : {5.0, 20.0, 50.0, 100.0, 200.0}) {
    TestFunctionKxi k = build_kxi_h3(spectral_parameter(xi), 0.5);
    double b = beta(Model::H3, k.xi).value;
    double ratio = k.k_at_zero / b;
    worst_ratio = std::max(worst_ratio, std::max(ratio, 1.0 / ratio));
    if (ratio > fc.kxi_ratio_c || ratio < 1.0 / fc.kxi_ratio_c) {
      out.pass = false;
    }
    for (const auto& [r, kv] : k.samples) {
      double decay = std::abs(kv) * std::sqrt(1.0 + xi * r) / b;
      worst_decay = std::max(worst_decay, decay);
      if (decay > fc.kxi_decay_c) out.pass = false;
      if (r > 2.0 * k.h0_support_radius + 0.2 &&
          std::abs(kv) > 1e-5 * k.k_at_zero) {
        out.pass = false;  // support must be confined to r <= 2 delta
      }
    }
    if (k.h_at_xi < 1.0 - 1e-12 || k.h_floor < 1.0 / 16.0) out.pass = false;
  }
  out.worst = worst_decay;
  out.fitted.emplace_back("kxi_ratio_c", fc.kxi_ratio_c);
  out.fitted.emplace_back("worst_ratio", worst_ratio);
  out.fitted.emplace_back("kxi_decay_c", fc.kxi_decay_c);
  return out;
}

ArchCheck check_metric(Model model, unsigned) {
  ArchCheck out{"metric", true, 0.0, {}};
  out.grid = "r in {0.1, 0.5, 1, 2, 3, 4}";
  MetricCheckReport rep =
      polar_metric_check(model, {0.1, 0.5, 1.0, 2.0, 3.0, 4.0});
  out.pass = rep.pass && rep.angular_monotone;
  out.worst = rep.worst_rel_error;
  out.fitted.emplace_back("witness_c", rep.witness_c);
  return out;
}

ArchCheck check_radial(Model model, unsigned seed) {
  ArchCheck out{"radial", true, -std::numeric_limits<double>::infinity(), {}};
  out.grid = "200 seeded unimodular pairs";
  std::mt19937 rng(seed);
  for (int i = 0; i < 200; ++i) {
    Mat2c g1 = random_sl2(rng, model == Model::H3);
    Mat2c g2 = random_sl2(rng, model == Model::H3);
    double lhs = std::abs(h3_radial_part(g1) - h3_radial_part(g2));
    double rhs = h3_point_distance(g1, g2);
    double slack = lhs - rhs;
    out.worst = std::max(out.worst, slack);
    if (slack > 1e-9) out.pass = false;
  }
  return out;
}

}  // namespace

std::vector<ArchCheck> verify_arch_suite(Model model, const std::string& suite,
                                         unsigned seed) {
  check_model(model);
  std::vector<std::pair<std::string, ArchCheck (*)(Model, unsigned)>> table = {
      {"discriminant", check_discriminant}, {"displacement", check_displacement},
      {"tube", check_tube},                 {"volume", check_volume},
      {"metric", check_metric},             {"radial", check_radial}};
  if (model == Model::H3) {
    table.insert(table.begin(), {"spherical", check_spherical});
    table.push_back({"kxi", check_kxi});
  }
  std::vector<ArchCheck> out;
  bool found = false;
  for (const auto& [name, fn] : table) {
    if (suite == "all" || suite == name) {
      out.push_back(fn(model, seed));
      found = true;
    }
  }
  if (!found) {
    throw invalid_input("unknown verification suite: " + suite);
  }
  return out;
}

}  // namespace amp
