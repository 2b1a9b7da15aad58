#include "fracext/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fracext/spectral_model.hpp"

namespace fracext {

namespace {

constexpr int kCellOrder = 16;
constexpr int kEndOrder = 12;
// the first cell ends this far below y_split
constexpr double kInnerRatio = 1e-24;

GaussRule compute_legendre(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// maps a Legendre cell [a, c] with weight y^b folded in
void add_cell(WeightedGrid& g, double a, double c, double expo) {
  const GaussRule& gl = gauss_legendre(kCellOrder);
  const double half = 0.5 * (c - a), mid = 0.5 * (c + a);
  for (int i = 0; i < kCellOrder; ++i) {
    const double y = mid + half * gl.x[i];
    g.nodes.push_back(y);
    g.weights.push_back(half * gl.w[i] * std::pow(y, expo));
  }
}

void add_singular_cell(WeightedGrid& g, double h, double expo) {
  const GaussRule gj = gauss_jacobi_power(kEndOrder, expo);
  const double scale = std::pow(h, 1.0 + expo);
  for (int i = 0; i < kEndOrder; ++i) {
    g.nodes.push_back(h * gj.x[i]);
    g.weights.push_back(scale * gj.w[i]);
  }
}

WeightedGrid geometric_grid(double expo, double y_split, double y_max, int n) {
  WeightedGrid g;
  g.b = expo;
  g.y_max = y_max;
  const double y0 = y_split * kInnerRatio;
  add_singular_cell(g, y0, expo);
  const double ratio = std::pow(y_split / y0, 1.0 / n);
  double a = y0;
  for (int i = 0; i < n; ++i) {
    const double c = (i == n - 1) ? y_split : a * ratio;
    add_cell(g, a, c, expo);
    a = c;
  }
  if (y_max > y_split) {
    const double h = (y_max - y_split) / n;
    for (int i = 0; i < n; ++i) add_cell(g, y_split + i * h, i == n - 1 ? y_max : y_split + (i + 1) * h, expo);
  }
  return g;
}

// y = y_max t^q on [0, 1]; the weight becomes q y_max^{1+b} t^{q(1+b)-1}
WeightedGrid transformed_grid(double b, double y_max, int n) {
  WeightedGrid g;
  g.b = b;
  g.y_max = y_max;
  constexpr double q = 4.0;
  const double e = q * (1.0 + b) - 1.0;
  const double pref = q * std::pow(y_max, 1.0 + b);
  const int cells = 2 * n;
  const double h = 1.0 / cells;
  const GaussRule gj = gauss_jacobi_power(kEndOrder, e);
  const double sc = std::pow(h, 1.0 + e);
  for (int i = 0; i < kEndOrder; ++i) {
    const double t = h * gj.x[i];
    g.nodes.push_back(y_max * std::pow(t, q));
    g.weights.push_back(pref * sc * gj.w[i]);
  }
  const GaussRule& gl = gauss_legendre(kCellOrder);
  for (int c = 1; c < cells; ++c) {
    const double a = c * h, mid = a + 0.5 * h;
    for (int i = 0; i < kCellOrder; ++i) {
      const double t = mid + 0.5 * h * gl.x[i];
      g.nodes.push_back(y_max * std::pow(t, q));
      g.weights.push_back(pref * 0.5 * h * gl.w[i] * std::pow(t, e));
    }
  }
  return g;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static std::mutex mtx;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_legendre(n)).first;
  return it->second;
}

GaussRule gauss_jacobi_power(int n, double a) {
  if (!(a > -1.0)) throw std::domain_error("gauss_jacobi_power: exponent must exceed -1");
  // monic Jacobi recurrence for weight (1-x)^0 (1+x)^a on [-1,1], then map to [0,1]
  const double alpha = 0.0, beta = a;
  std::vector<double> diag(n), off(n > 1 ? n - 1 : 0);
  for (int k = 0; k < n; ++k) {
    const double ab = alpha + beta;
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    diag[k] = (k == 0 && std::abs(ab + 2.0) > 0.0) ? (beta - alpha) / (ab + 2.0)
                                                   : (beta * beta - alpha * alpha) / den;
    if (k + 1 < n) {
      const double k1 = k + 1.0;
      const double num = 4.0 * k1 * (k1 + alpha) * (k1 + beta) * (k1 + ab);
      const double d2 = (2.0 * k1 + ab) * (2.0 * k1 + ab);
      off[k] = std::sqrt(num / (d2 * (2.0 * k1 + ab + 1.0) * (2.0 * k1 + ab - 1.0)));
    }
  }
  std::vector<double> z;
  tridiagonal_eigen(diag, off, &z);
  // total mass of (1+x)^a on [-1,1] is 2^{a+1}/(a+1); then map x -> (1+x)/2
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v0 = z[static_cast<std::size_t>(i) * n];
    r.x[i] = 0.5 * (1.0 + diag[i]);
    r.w[i] = v0 * v0 / (a + 1.0);
  }
  return r;
}

Grading parse_grading(const std::string& name) {
  if (name == "geometric") return Grading::geometric;
  if (name == "gauss_transformed") return Grading::gauss_transformed;
  throw std::invalid_argument("unknown grading \"" + name + "\" (geometric | gauss_transformed)");
}

WeightedGrid make_grid(double b, double y_max, int n, Grading grading, double y_split) {
  if (!(b > -1.0 && b < 1.0)) {
    throw std::domain_error("weight exponent b must lie in (-1, 1), got " + std::to_string(b));
  }
  if (n < 16) throw std::invalid_argument("grid needs n >= 16");
  if (!(y_max > 1.0)) throw std::invalid_argument("grid needs y_max > 1");
  if (grading == Grading::gauss_transformed) return transformed_grid(b, y_max, n);
  if (y_split <= 0.0) y_split = std::min(1.0, y_max / 40.0);
  return geometric_grid(b, y_split, y_max, n);
}

WeightedGrid make_power_grid(double exponent, double y_split, double y_max, int n) {
  if (!(exponent > -1.0)) throw std::domain_error("weight exponent must exceed -1");
  return geometric_grid(exponent, y_split, y_max, n);
}

double integrate_half_line(const std::function<double(double)>& f, double tol) {
  // x = exp(pi/2 sinh t)
  const double c = 0.5 * std::numbers::pi;
  double h = 0.5;
  auto sample = [&](double t) {
    const double x = std::exp(c * std::sinh(t));
    if (x == 0.0 || !std::isfinite(x)) return 0.0;
    const double v = f(x) * c * std::cosh(t) * x;
    return std::isfinite(v) ? v : 0.0;
  };
  const double t_max = 6.5;
  double sum = sample(0.0);
  for (double t = h; t <= t_max; t += h) sum += sample(t) + sample(-t);
  double prev = sum * h;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) add += sample(t) + sample(-t);
    sum += add;
    const double cur = sum * h;
    if (level >= 3 && std::abs(cur - prev) <= tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol) {
  // x = tanh(pi/2 sinh t), endpoint distance formed without cancellation
  const double c = 0.5 * std::numbers::pi;
  const double half = 0.5 * (b - a);
  auto sample = [&](double t) {
    const double u = c * std::sinh(t);
    const double ch = std::cosh(u);
    const double edge = std::exp(-std::abs(u)) / ch;
    const double w = c * std::cosh(t) / (ch * ch);
    const double x = t >= 0 ? b - half * edge : a + half * edge;
    if (w == 0.0 || x <= a || x >= b) return 0.0;
    const double v = f(x) * w;
    return std::isfinite(v) ? v : 0.0;
  };
  double h = 0.5;
  const double t_max = 5.0;
  double sum = sample(0.0);
  for (double t = h; t <= t_max; t += h) sum += sample(t) + sample(-t);
  double prev = sum * h * half;
  for (int level = 0; level < 10; ++level) {
    h *= 0.5;
    double add = 0.0;
    for (double t = h; t <= t_max; t += 2.0 * h) add += sample(t) + sample(-t);
    sum += add;
    const double cur = sum * h * half;
    if (level >= 3 && std::abs(cur - prev) <= tol * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    if (a[piv][k] == 0.0) throw std::runtime_error("singular extrapolation system");
    std::swap(a[k], a[piv]);
    std::swap(rhs[k], rhs[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      rhs[i] -= m * rhs[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k][j] * x[j];
    x[k] = s / a[k][k];
  }
  return x;
}

double richardson_limit(const std::vector<double>& ys, const std::vector<double>& fs,
                        const std::vector<double>& exponents) {
  const std::size_t n = exponents.size() + 1;
  if (ys.size() != n || fs.size() != n) throw std::invalid_argument("richardson_limit: need one sample more than exponents");
  // unknowns scaled by y_ref^e keep the system well conditioned
  const double y_ref = *std::max_element(ys.begin(), ys.end());
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    a[i][0] = 1.0;
    for (std::size_t k = 0; k < exponents.size(); ++k) a[i][k + 1] = std::pow(ys[i] / y_ref, exponents[k]);
  }
  return solve_dense(std::move(a), fs)[0];
}

double richardson_limit(const std::function<double(double)>& f, double y0, double ratio,
                        const std::vector<double>& exponents) {
  std::vector<double> ys, fs;
  double y = y0;
  for (std::size_t i = 0; i <= exponents.size(); ++i) {
    ys.push_back(y);
    fs.push_back(f(y));
    y *= ratio;
  }
  return richardson_limit(ys, fs, exponents);
}

}  // namespace fracext
