#include "fracext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fracext/profile.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

namespace {

void check_grid(const std::vector<double>& grid, bool allow_zero) {
  if (grid.empty()) throw std::invalid_argument("empty grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid[i];
    if (!std::isfinite(y) || y < 0.0 || (!allow_zero && y == 0.0)) {
      throw std::domain_error("grid abscissa " + std::to_string(y) + " is not admissible");
    }
    if (i > 0 && !(y > grid[i - 1])) throw std::invalid_argument("grid must be strictly increasing");
  }
}

void require_positive_definite_on_support(const ModalVector& u, const char* what) {
  const Spectrum& sp = *u.spectrum;
  for (std::size_t j = 0; j < sp.kernel_dim; ++j) {
    if (u.coeffs[j] != 0.0) {
      throw std::domain_error(std::string(what) + ": kernel mode " + std::to_string(j + 1) +
                              " has nonzero coefficient");
    }
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double sign_of(int l) { return l % 2 == 0 ? 1.0 : -1.0; }

// B(s-l, 3/2) / B(s, 1/2)
double beta_three_halves(double s, int l) {
  return 0.5 * std::exp(std::lgamma(s - l) + std::lgamma(s + 0.5) - std::lgamma(s - l + 1.5) - std::lgamma(s));
}

// Curve with values psi_a(sqrt(lambda_j) y) w_j, no parameter validation on a.
std::vector<double> raw_curve(const ModalVector& w, double a, const std::vector<double>& grid) {
  const Spectrum& sp = *w.spectrum;
  const std::size_t n = grid.size();
  std::vector<double> v(sp.size() * n, 0.0);
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const double c = w.coeffs[j];
    if (c == 0.0) continue;
    if (j < sp.kernel_dim) {
      for (std::size_t i = 0; i < n; ++i) v[j * n + i] = c;
      continue;
    }
    const double root = std::sqrt(sp.eigenvalues[j]);
    for (std::size_t i = 0; i < n; ++i) v[j * n + i] = c * psi(a, root * grid[i]);
  }
  return v;
}

void axpy(std::vector<double>& acc, double c, const std::vector<double>& x) {
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += c * x[k];
}

// d/dy P_a[w] on the grid
std::vector<double> first_derivative_curve(const ModalVector& w, double a, const std::vector<double>& grid) {
  const std::size_t n = grid.size();
  std::vector<double> out;
  if (a > 1.0) {
    out = raw_curve(apply_power(w, 1.0), a - 1.0, grid);
    const double c = -1.0 / (2.0 * (a - 1.0));
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) out[j * n + i] *= c * grid[i];
  } else {
    out = raw_curve(apply_power(w, a), 1.0 - a, grid);
    const double c = -dtn_constant(a);
    for (std::size_t j = 0; j < w.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) out[j * n + i] *= c * std::pow(grid[i], 2.0 * a - 1.0);
  }
  return out;
}

std::vector<double> trace_exponents(double s, std::size_t count) {
  std::vector<double> e;
  for (int m = 1; m <= 4; ++m) {
    e.push_back(2.0 * m);
    e.push_back(2.0 * s + 2.0 * (m - 1));
  }
  std::sort(e.begin(), e.end());
  std::vector<double> out;
  for (double x : e) {
    if (!out.empty() && std::abs(x - out.back()) < 1e-9) continue;
    out.push_back(x);
    if (out.size() == count) break;
  }
  return out;
}

constexpr double kConormalStart = 1e-2;
constexpr int kConormalTerms = 3;

}  // namespace

ModalVector ExtensionCurve::column(std::size_t i) const {
  std::vector<double> c(modes());
  for (std::size_t j = 0; j < modes(); ++j) c[j] = (*this)(j, i);
  return ModalVector(std::move(c), spectrum);
}

std::vector<double> geometric_grid_points(double y_min, double y_max, std::size_t n) {
  if (n < 2 || !(y_min > 0.0) || !(y_max > y_min)) throw std::invalid_argument("invalid geometric grid request");
  std::vector<double> g(n);
  const double r = std::log(y_max / y_min) / (n - 1.0);
  for (std::size_t i = 0; i < n; ++i) g[i] = y_min * std::exp(r * i);
  g.back() = y_max;
  return g;
}

std::vector<double> default_curve_grid(const Spectrum& spectrum, std::size_t n) {
  const double lmax = spectrum.lambda_max();
  const double lmin = spectrum.kernel_dim < spectrum.size() ? spectrum.lambda_min_positive() : 1.0;
  return geometric_grid_points(1e-4 / std::sqrt(lmax > 0 ? lmax : 1.0), 40.0 / std::sqrt(lmin), n);
}

ExtensionCurve extend(const ModalVector& u, double s, const std::vector<double>& grid) {
  ExtensionCurve c;
  c.params = FracParams::from_order(s);
  check_grid(grid, true);
  c.spectrum = u.spectrum;
  c.grid = grid;
  c.values = raw_curve(u, s, grid);
  c.source = u;
  return c;
}

ExtensionCurve extend_negative(const ModalVector& zeta, double s, const std::vector<double>& grid) {
  require_positive_definite_on_support(zeta, "extend_negative");
  FracParams::from_order(s);
  return extend(apply_power(zeta, -s), s, grid);
}

ModalVector trace0(const ExtensionCurve& curve) {
  const std::size_t n = curve.points();
  if (curve.grid.front() == 0.0) return curve.column(0);
  const Spectrum& sp = *curve.spectrum;
  const double limit = 1e-3 / std::sqrt(std::max(sp.lambda_max(), 1e-300));
  if (curve.grid.front() > limit) {
    throw std::domain_error("trace0: grid starts at " + std::to_string(curve.grid.front()) +
                            ", needs points below " + std::to_string(limit));
  }
  if (n < 2) throw std::domain_error("trace0: need at least two grid points near the origin");
  const std::size_t used = std::min<std::size_t>(n, 4);
  const std::vector<double> exps = trace_exponents(curve.params.s, used - 1);
  std::vector<double> ys(curve.grid.begin(), curve.grid.begin() + used);
  std::vector<double> out(curve.modes());
  for (std::size_t j = 0; j < curve.modes(); ++j) {
    std::vector<double> fs(used);
    for (std::size_t i = 0; i < used; ++i) fs[i] = curve(j, i);
    out[j] = richardson_limit(ys, fs, exps);
  }
  return ModalVector(std::move(out), curve.spectrum);
}

ModalVector conormal_trace(const ModalVector& u, double s, ConormalMethod method) {
  const FracParams p = FracParams::from_order(s);
  const Spectrum& sp = *u.spectrum;
  const double a = s - p.floor_s;
  const double c = p.ceil_s - s;
  const std::vector<double> exps = {2.0 * c, 2.0, 2.0 * c + 2.0};
  const double y0 = kConormalStart / std::sqrt(sp.lambda_max() > 0 ? sp.lambda_max() : 1.0);
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t j = sp.kernel_dim; j < u.size(); ++j) {
    const double lambda = sp.eigenvalues[j];
    const double root = std::sqrt(lambda);
    const double uj = u.coeffs[j];
    if (uj == 0.0) continue;
    std::function<double(double)> f;
    if (method == ConormalMethod::analytic) {
      const double pref = -p.d_s * std::pow(lambda, s) * uj;
      f = [=](double y) { return pref * psi(c, root * y); };
    } else {
      // the reduced profile (D_b + lambda)^{floor s} psi_{s,lambda}, then y^b d/dy numerically
      const double pref = std::pow(lambda, p.floor_s) * p.d_s / dtn_constant(a) * uj;
      const double b = p.b;
      f = [=](double y) {
        auto reduced = [=](double t) { return pref * psi(a, root * t); };
        return std::pow(y, b) * fd_first(reduced, y, 1e-3 * y);
      };
    }
    out[j] = richardson_limit(f, y0, 0.5, std::vector<double>(exps.begin(), exps.begin() + kConormalTerms));
  }
  return ModalVector(std::move(out), u.spectrum);
}

ExtensionCurve derivative_curve(const ModalVector& u, double s, int order, const std::vector<double>& grid) {
  const FracParams p = FracParams::from_order(s);
  check_grid(grid, false);
  const int max_order = static_cast<int>(std::floor(2.0 * s));
  if (order < 1 || order > max_order) {
    throw std::domain_error("derivative order " + std::to_string(order) + " outside 1.." + std::to_string(max_order));
  }
  const std::size_t n = grid.size();
  std::vector<double> acc(u.size() * n, 0.0);
  if (order % 2 == 0) {
    const int m = order / 2;
    const ModalVector lm = apply_power(u, m);
    for (int l = 0; l <= m; ++l) axpy(acc, binomial(m, l) * sign_of(l) * beta_ratio(s, l), raw_curve(lm, s - l, grid));
  } else if ((order + 1) / 2 <= p.floor_s) {
    const int m = (order + 1) / 2;
    const ModalVector lm = apply_power(u, m);
    for (int l = 1; l <= m; ++l) {
      axpy(acc, binomial(m - 1, l - 1) * sign_of(l) * beta_three_halves(s, l), raw_curve(lm, s - l, grid));
    }
    for (std::size_t j = 0; j < u.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) acc[j * n + i] *= grid[i];
  } else {
    const int m = p.floor_s;
    const ModalVector lm = apply_power(u, m);
    for (int l = 0; l <= m; ++l) {
      axpy(acc, binomial(m, l) * sign_of(l) * beta_ratio(s, l), first_derivative_curve(lm, s - l, grid));
    }
  }
  ExtensionCurve c;
  c.params = p;
  c.spectrum = u.spectrum;
  c.grid = grid;
  c.values = std::move(acc);
  c.source = u;
  return c;
}

std::vector<ModalVector> taylor_expand(const ModalVector& u, double s, int k) {
  const FracParams p = FracParams::from_order(s);
  if (!(s > 1.0)) throw std::domain_error("taylor_expand needs s > 1");
  if (k < 1 || k > p.floor_s) throw std::domain_error("taylor_expand: k must lie in 1..floor(s)");
  std::vector<ModalVector> out{u};
  double fact = 1.0;
  for (int m = 1; m <= k; ++m) {
    fact *= (2.0 * m - 1.0) * (2.0 * m);
    ModalVector t = apply_power(u, m);
    const double c = taylor_kappa(s, m) / fact;
    for (double& v : t.coeffs) v *= c;
    out.push_back(std::move(t));
  }
  return out;
}

ModalVector taylor_remainder(const ModalVector& u, double s, int k, double y) {
  const FracParams p = FracParams::from_order(s);
  if (!(s > 1.0)) throw std::domain_error("taylor_remainder needs s > 1");
  if (k < 0 || k > p.floor_s) throw std::domain_error("taylor_remainder: k must lie in 0..floor(s)");
  const Spectrum& sp = *u.spectrum;
  std::vector<double> tcoef(k + 1);
  double fact = 1.0;
  tcoef[0] = 1.0;
  for (int m = 1; m <= k; ++m) {
    fact *= (2.0 * m - 1.0) * (2.0 * m);
    tcoef[m] = taylor_kappa(s, m) / fact;
  }
  const bool series_ok = std::abs(s - std::round(s)) > 0.05;
  const PsiSeries ser = psi_series_coefficients(s, 30);
  std::vector<double> out(u.size(), 0.0);
  for (std::size_t j = sp.kernel_dim; j < u.size(); ++j) {
    const double t = std::sqrt(sp.eigenvalues[j]) * y;
    double r = 0.0;
    if (series_ok && t <= 0.5) {
      const double t2 = t * t;
      double pw = 1.0, even = 0.0, sing = 0.0;
      for (std::size_t m = 0; m < ser.even.size(); ++m) {
        // the first k+1 even coefficients coincide with the Taylor ones
        if (static_cast<int>(m) > k) even += ser.even[m] * pw;
        sing += ser.singular[m] * pw;
        pw *= t2;
      }
      r = even + std::pow(t, 2.0 * s) * sing;
    } else {
      r = psi(s, t);
      double pw = 1.0;
      for (int m = 0; m <= k; ++m) {
        r -= tcoef[m] * pw;
        pw *= t * t;
      }
    }
    out[j] = r * u.coeffs[j];
  }
  return ModalVector(std::move(out), u.spectrum);
}

double fd_step(double y) { return std::max(1e-4, 1e-3 * y); }

double fd_first(const std::function<double(double)>& f, double y, double h) {
  auto d = [&](double hh) { return (-f(y + 2 * hh) + 8 * f(y + hh) - 8 * f(y - hh) + f(y - 2 * hh)) / (12 * hh); };
  const double dh = d(h), dh2 = d(0.5 * h);
  return dh2 + (dh2 - dh) / 15.0;
}

double fd_second(const std::function<double(double)>& f, double y, double h) {
  auto d = [&](double hh) {
    return (-f(y + 2 * hh) + 16 * f(y + hh) - 30 * f(y) + 16 * f(y - hh) - f(y - 2 * hh)) / (12 * hh * hh);
  };
  const double dh = d(h), dh2 = d(0.5 * h);
  return dh2 + (dh2 - dh) / 15.0;
}

namespace {

// one numerical application of (D_b + lambda) with a plain five-point stencil
std::function<double(double)> numerical_factor(std::function<double(double)> g, double b, double lambda,
                                               double h) {
  return [=](double y) {
    const double fm2 = g(y - 2 * h), fm1 = g(y - h), f0 = g(y), fp1 = g(y + h), fp2 = g(y + 2 * h);
    const double d1 = (-fp2 + 8 * fp1 - 8 * fm1 + fm2) / (12 * h);
    const double d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
    return -d2 - b * d1 / y + lambda * f0;
  };
}

}  // namespace

double ode_residual(const ModalVector& u, double s, double y, OdeScheme scheme) {
  const FracParams p = FracParams::from_order(s);
  if (!(y > 1e-3)) throw std::domain_error("ode_residual: y = " + std::to_string(y) + " is too small for the stencil");
  const Spectrum& sp = *u.spectrum;
  const double a = s - p.floor_s;
  double acc = 0.0;
  for (std::size_t j = sp.kernel_dim; j < u.size(); ++j) {
    const double uj = u.coeffs[j];
    if (uj == 0.0) continue;
    const double lambda = sp.eigenvalues[j];
    const double root = std::sqrt(lambda);
    double r = 0.0;
    switch (scheme) {
      case OdeScheme::collapsed: {
        const double pref = std::pow(lambda, p.floor_s) * p.d_s / dtn_constant(a);
        auto reduced = [=](double t) { return pref * psi(a, root * t); };
        const double h = 0.01 * std::min(y, 1.0 / root);
        r = -fd_second(reduced, y, h) - p.b * fd_first(reduced, y, h) / y + lambda * reduced(y);
        break;
      }
      case OdeScheme::collapsed_analytic: {
        const Profile reduced = Profile::psi(s, lambda).shifted_bessel_power(p.b, lambda, p.floor_s);
        r = reduced.shifted_bessel(p.b, lambda, false)(y);
        break;
      }
      case OdeScheme::full_numerical: {
        const int m = p.ceil_s;
        const double h = std::max(y, 0.2) * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (2.0 * m + 4.0));
        if (y - 2.0 * m * h <= 0.0) throw std::domain_error("ode_residual: y too small for the nested stencil");
        std::function<double(double)> g = [=](double t) { return psi(s, root * t); };
        for (int i = 0; i < m; ++i) g = numerical_factor(g, p.b, lambda, h);
        r = g(y);
        break;
      }
    }
    acc += r * r * uj * uj;
  }
  return std::sqrt(acc);
}

}  // namespace fracext
