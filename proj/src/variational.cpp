#include "fracext/variational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracext/quadrature.hpp"
#include "fracext/special_functions.hpp"

namespace fracext {

namespace {

constexpr double kFarField = 40.0;
constexpr int kCellPoints = 20;

struct Element {
  double stiff;  // int y^b over the cell, divided by h^2
  double m00, m01, m11;
};

Element element(double y0, double y1, double b) {
  const double h = y1 - y0;
  Element e{};
  if (y0 == 0.0) {
    const double hb = std::pow(h, 1.0 + b);
    e.stiff = hb / (1.0 + b) / (h * h);
    e.m00 = hb * (1.0 / (1.0 + b) - 2.0 / (2.0 + b) + 1.0 / (3.0 + b));
    e.m01 = hb * (1.0 / (2.0 + b) - 1.0 / (3.0 + b));
    e.m11 = hb / (3.0 + b);
    return e;
  }
  const GaussRule& gl = gauss_legendre(kCellPoints);
  double m0 = 0.0;
  for (int i = 0; i < kCellPoints; ++i) {
    const double t = 0.5 * (1.0 + gl.x[i]);
    const double w = 0.5 * gl.w[i] * h * std::pow(y0 + h * t, b);
    m0 += w;
    e.m00 += w * (1.0 - t) * (1.0 - t);
    e.m01 += w * (1.0 - t) * t;
    e.m11 += w * t * t;
  }
  e.stiff = m0 / (h * h);
  return e;
}

void require_unit_interval(double s) {
  FracParams::from_order(s);
  if (!(s < 1.0)) throw std::domain_error("variational minimization supports s in (0, 1) only");
}

std::string tagged(const char* base, double s) {
  std::ostringstream os;
  os << base << "(s=" << s << ")";
  return os.str();
}

}  // namespace

std::vector<double> graded_mesh(double lambda, std::size_t elements) {
  if (elements < 2) throw std::invalid_argument("need at least two elements");
  const double y_max = kFarField / std::sqrt(lambda);
  std::vector<double> g(elements + 1);
  for (std::size_t i = 0; i <= elements; ++i) {
    const double r = static_cast<double>(i) / elements;
    g[i] = y_max * r * r;
  }
  return g;
}

ProfileMinimum minimize_profile(double s, double lambda, std::size_t elements, double trace) {
  require_unit_interval(s);
  if (!(lambda > 0.0)) throw std::domain_error("minimize_profile needs lambda > 0");
  const double b = 1.0 - 2.0 * s;
  const std::vector<double> y = graded_mesh(lambda, elements);
  const std::size_t n = y.size();
  std::vector<double> diag(n, 0.0), off(n - 1, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Element e = element(y[i], y[i + 1], b);
    diag[i] += e.stiff + lambda * e.m00;
    diag[i + 1] += e.stiff + lambda * e.m11;
    off[i] += -e.stiff + lambda * e.m01;
  }
  std::vector<double> x(n, 0.0);
  x[0] = trace;
  // interior unknowns 1..n-2, Thomas elimination
  const std::size_t m = n - 2;
  std::vector<double> c(m), d(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = k + 1;
    double rhs = (i == 1) ? -off[0] * trace : 0.0;
    double a = diag[i];
    if (k > 0) {
      const double lower = off[i - 1];
      a -= lower * c[k - 1];
      rhs -= lower * d[k - 1];
    }
    if (!(a > 0.0)) throw std::runtime_error("finite-element system is not positive definite");
    c[k] = (i + 1 < n - 1) ? off[i] / a : 0.0;
    d[k] = rhs / a;
  }
  for (std::size_t k = m; k-- > 0;) {
    x[k + 1] = d[k] - (k + 1 < m ? c[k] * x[k + 2] : 0.0);
  }
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    energy += diag[i] * x[i] * x[i];
    if (i + 1 < n) energy += 2.0 * off[i] * x[i] * x[i + 1];
  }
  ProfileMinimum out;
  out.min_value = 2.0 * energy;
  out.profile.grid = y;
  out.profile.values = std::move(x);
  out.profile.b = b;
  out.profile.lambda = lambda;
  return out;
}

double profile_l2_error(const ProfileMinimum& m, double s) {
  const ProfileFE& p = m.profile;
  const double root = std::sqrt(p.lambda);
  const GaussRule gj = gauss_jacobi_power(12, p.b);
  const GaussRule& gl = gauss_legendre(12);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < p.grid.size(); ++i) {
    const double y0 = p.grid[i], y1 = p.grid[i + 1], h = y1 - y0;
    auto diff = [&](double y) {
      const double t = (y - y0) / h;
      const double fe = (1.0 - t) * p.values[i] + t * p.values[i + 1];
      const double e = fe - psi(s, root * y);
      return e * e;
    };
    if (i == 0) {
      const double sc = std::pow(h, 1.0 + p.b);
      for (std::size_t k = 0; k < gj.x.size(); ++k) acc += sc * gj.w[k] * diff(h * gj.x[k]);
    } else {
      for (std::size_t k = 0; k < gl.x.size(); ++k) {
        const double y = y0 + 0.5 * h * (1.0 + gl.x[k]);
        acc += 0.5 * h * gl.w[k] * std::pow(y, p.b) * diff(y);
      }
    }
  }
  return std::sqrt(2.0 * acc);
}

CheckReport minimize_curve(const ModalVector& u, double s, std::size_t elements, double tol) {
  require_unit_interval(s);
  const Spectrum& sp = *u.spectrum;
  double lhs = 0.0;
  // kernel modes: the constant curve has zero energy
  for (std::size_t j = sp.kernel_dim; j < u.size(); ++j) {
    const double c = u.coeffs[j];
    if (c == 0.0) continue;
    lhs += c * c * minimize_profile(s, sp.eigenvalues[j], elements).min_value;
  }
  const double un = sobolev_norm(u, s);
  return make_report(tagged("minimize", s), lhs, 2.0 * dtn_constant(s) * un * un, tol);
}

NegativeMinimum minimize_negative(const ModalVector& zeta, double s, std::size_t elements, double tol) {
  require_unit_interval(s);
  const Spectrum& sp = *zeta.spectrum;
  for (std::size_t j = 0; j < sp.kernel_dim; ++j) {
    if (zeta.coeffs[j] != 0.0) {
      throw std::domain_error("minimize_negative: kernel mode " + std::to_string(j + 1) + " has nonzero coefficient");
    }
  }
  const double d = dtn_constant(s);
  double lhs = 0.0;
  std::vector<double> trace(zeta.size(), 0.0);
  for (std::size_t j = sp.kernel_dim; j < zeta.size(); ++j) {
    const double z = zeta.coeffs[j];
    if (z == 0.0) continue;
    // U = t psi_h: energy t^2 m - 4 d z t, minimized at t = 2 d z / m
    const double m = minimize_profile(s, sp.eigenvalues[j], elements).min_value;
    trace[j] = 2.0 * d * z / m;
    lhs += -4.0 * d * d * z * z / m;
  }
  const double zn = sobolev_norm(zeta, -s);
  NegativeMinimum out{make_report(tagged("minimize_negative", s), lhs, -2.0 * d * zn * zn, tol),
                      ModalVector(std::move(trace), zeta.spectrum)};
  return out;
}

CheckReport orthogonality_check(const ModalVector& u, const ModalVector& v, double s, const Profile& eta, double tol) {
  const FracParams p = FracParams::from_order(s);
  if (p.ceil_s > 2) throw std::domain_error("orthogonality_check supports ceil(s) <= 2");
  if (u.size() != v.size()) throw std::invalid_argument("u and v have different lengths");
  const Spectrum& sp = *u.spectrum;
  double lhs = 0.0, rhs = 0.0;
  const double eta0 = eta.at_zero();
  for (std::size_t j = sp.kernel_dim; j < u.size(); ++j) {
    const double w = u.coeffs[j] * v.coeffs[j];
    if (w == 0.0) continue;
    const double lambda = sp.eigenvalues[j];
    const double scale = 1.0 / std::sqrt(lambda);
    const WeightedGrid g = make_power_grid(p.b, std::min(1.0, scale), kFarField * std::max(1.0, scale), 96);
    const Profile ps = Profile::psi(s, lambda);
    double ip = 0.0;
    if (p.ceil_s == 1) {
      const Profile dps = ps.derivative(), deta = eta.derivative();
      ip = g.integrate_even([&](double y) { return dps(y) * deta(y) + lambda * ps(y) * eta(y); });
    } else {
      const Profile lp = ps.shifted_bessel(p.b, lambda), le = eta.shifted_bessel(p.b, lambda);
      ip = g.integrate_even([&](double y) { return lp(y) * le(y); });
    }
    lhs += w * ip;
    rhs += 2.0 * p.d_s * std::pow(lambda, s) * w * eta0;
  }
  const double floor = 1e-8;
  return make_report(tagged("orthogonality", s), lhs, rhs, tol, Relation::equal, floor);
}

std::string minimizer_csv(const ProfileMinimum& m, double s) {
  std::ostringstream os;
  os.precision(17);
  os << "y,minimizer,psi\n";
  const double root = std::sqrt(m.profile.lambda);
  for (std::size_t i = 0; i < m.profile.grid.size(); ++i) {
    const double y = m.profile.grid[i];
    os << y << ',' << m.profile.values[i] << ',' << psi(s, root * y) << '\n';
  }
  return os.str();
}

}  // namespace fracext
