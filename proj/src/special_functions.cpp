#include "fracext/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fracext {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = 1.0e-16;
constexpr double kSeriesCutoff = 2.0;

// Taylor coefficients of 1/Gamma(z) = sum_k c_k z^k, k = 1..26.
constexpr std::array<double, 26> kInvGammaCoeffs = {
    1.0,
    0.5772156649015329,
    -0.6558780715202538,
    -0.0420026350340952,
    0.1665386113822915,
    -0.0421977345555443,
    -0.0096219715278770,
    0.0072189432466630,
    -0.0011651675918591,
    -0.0002152416741149,
    0.0001280502823882,
    -0.0000201348547807,
    -0.0000012504934821,
    0.0000011330272320,
    -0.0000002056338417,
    0.0000000061160950,
    0.0000000050020075,
    -0.0000000011812746,
    0.0000000001043427,
    0.0000000000077823,
    -0.0000000000036968,
    0.0000000000005100,
    -0.0000000000000206,
    -0.0000000000000054,
    0.0000000000000014,
    0.0000000000000001,
};

// Temme's auxiliary functions for |mu| <= 1/2:
//   gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
//   gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
struct TemmeGammas {
  double gam1;
  double gam2;
  double gampl;  // 1/Gamma(1+mu)
  double gammi;  // 1/Gamma(1-mu)
};

TemmeGammas temme_gammas(double mu) {
  TemmeGammas g{};
  // 1/Gamma(1+x) = sum_k c_k x^{k-1}
  double odd = 0.0;   // sum over odd k: c_k mu^{k-1}
  double even = 0.0;  // sum over even k: c_k mu^{k-2}
  const double mu2 = mu * mu;
  double p_odd = 1.0;
  double p_even = 1.0;
  for (std::size_t i = 0; i < kInvGammaCoeffs.size(); ++i) {
    const std::size_t k = i + 1;
    if (k % 2 == 1) {
      odd += kInvGammaCoeffs[i] * p_odd;
      p_odd *= mu2;
    } else {
      even += kInvGammaCoeffs[i] * p_even;
      p_even *= mu2;
    }
  }
  g.gam1 = -even;
  g.gam2 = odd;
  g.gampl = odd + mu * even;
  g.gammi = odd - mu * even;
  return g;
}

// Seed pair (e^x K_mu(x), e^x K_{mu+1}(x)) for |mu| <= 1/2.
std::array<double, 2> scaled_seed(double mu, double x) {
  if (x < kSeriesCutoff) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    for (int i = 1; i < 500; ++i) {
      const double di = i;
      ff = (di * ff + p + q) / (di * di - mu * mu);
      c *= d / di;
      p /= (di - mu);
      q /= (di + mu);
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - di * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    const double scale = std::exp(x);
    return {sum * scale, sum1 * (2.0 / x) * scale};
  }
  // Steed's continued fraction with Temme's normalization.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double kmu = std::sqrt(kPi / (2.0 * x)) / s;
  const double k1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, k1};
}

// log(e^x K_nu(x)) via forward recurrence with renormalization.
double log_scaled_bessel_k(double nu, double x) {
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  auto [kmu, k1] = scaled_seed(mu, x);
  double log_scale = 0.0;
  const double two_over_x = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * two_over_x * k1 + kmu;
    kmu = k1;
    k1 = next;
    if (k1 > 1.0e250) {
      kmu *= 1.0e-250;
      k1 *= 1.0e-250;
      log_scale += 250.0 * std::log(10.0);
    }
  }
  return std::log(kmu) + log_scale;
}

void require_positive_argument(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("bessel_k: argument must be positive, got " + std::to_string(x));
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// B(s-l, 3/2) / B(s, 1/2)
double beta_ratio_three_halves(double s, int l) {
  return 0.5 * std::exp(std::lgamma(s - l) + std::lgamma(s + 0.5) - std::lgamma(s - l + 1.5) -
                        std::lgamma(s));
}

// First derivative of psi_a at y > 0 from the Bessel index relations.
double psi_first_derivative(double a, double y) {
  if (a > 1.0) return -y * psi(a - 1.0, y) / (2.0 * (a - 1.0));
  if (a < 1.0) return -dtn_constant(a) * std::pow(y, 2.0 * a - 1.0) * psi(1.0 - a, y);
  // a == 1: psi_1 = y K_1(y), derivative -y K_0(y)
  return -y * bessel_k(0.0, y);
}

constexpr double kIntegerTolerance = 1.0e-12;

}  // namespace

bool is_integer_order(double s) { return std::abs(s - std::round(s)) < kIntegerTolerance; }

FracParams FracParams::from_order(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw std::domain_error("order s must be positive and finite, got " + std::to_string(s));
  }
  if (is_integer_order(s)) {
    throw std::domain_error("order s must be non-integer, got " + std::to_string(s));
  }
  FracParams p;
  p.s = s;
  p.floor_s = static_cast<int>(std::floor(s));
  p.ceil_s = p.floor_s + 1;
  p.b = 1.0 - 2.0 * (s - p.floor_s);
  p.c_s = kernel_normalization(s);
  p.d_s = dtn_constant(s);
  return p;
}

double kernel_normalization(double s) {
  if (s < 170.0) return std::pow(2.0, 1.0 - s) / std::tgamma(s);
  return std::exp((1.0 - s) * std::log(2.0) - std::lgamma(s));
}

double dtn_constant(double s) {
  if (!(s > 0.0) || is_integer_order(s)) {
    throw std::domain_error("dtn_constant: s must be positive and non-integer");
  }
  const int fl = static_cast<int>(std::floor(s));
  const double b = 1.0 - 2.0 * (s - fl);
  const double log_d = b * std::log(2.0) + std::lgamma(0.5 * (1.0 + b)) + std::lgamma(fl + 1.0) -
                       std::lgamma(s);
  if (s < 170.0) {
    return std::pow(2.0, b) * std::tgamma(0.5 * (1.0 + b)) * std::tgamma(fl + 1.0) / std::tgamma(s);
  }
  return std::exp(log_d);
}

double trace_constant(double b) {
  if (!(b > -1.0 && b < 1.0)) throw std::domain_error("trace_constant: b must lie in (-1, 1)");
  return std::pow(2.0, 1.0 + b) * std::tgamma(0.5 * (1.0 + b)) / std::tgamma(0.5 * (1.0 - b));
}

double taylor_kappa(double s, int m) {
  if (m < 1 || m > static_cast<int>(std::floor(s))) {
    throw std::domain_error("taylor_kappa: m must lie in 1..floor(s)");
  }
  double log_mag = std::lgamma(s - m) - std::lgamma(s) + std::lgamma(2.0 * m + 1.0) -
                   2.0 * m * std::log(2.0) - std::lgamma(m + 1.0);
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::exp(log_mag);
}

double beta_ratio(double s, int l) {
  if (l < 0 || l > static_cast<int>(std::floor(s))) {
    throw std::domain_error("beta_ratio: l must lie in 0..floor(s)");
  }
  if (l == 0) return 1.0;
  return std::exp(std::lgamma(s + 0.5) - std::lgamma(s) + std::lgamma(s - l) -
                  std::lgamma(s + 0.5 - l));
}

KernelConstants constants(const FracParams& params) {
  KernelConstants k;
  k.trace_constant = trace_constant(params.b);
  for (int m = 1; m <= params.floor_s; ++m) k.kappa.push_back(taylor_kappa(params.s, m));
  for (int l = 0; l <= params.floor_s; ++l) k.beta_ratio.push_back(beta_ratio(params.s, l));
  return k;
}

double bessel_k_scaled(double nu, double x) {
  require_positive_argument(x);
  const double lg = log_scaled_bessel_k(nu, x);
  if (lg > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error("bessel_k: K_nu(x) overflows for nu=" + std::to_string(nu) +
                              ", x=" + std::to_string(x));
  }
  return std::exp(lg);
}

double bessel_k(double nu, double x) {
  require_positive_argument(x);
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  auto [kmu, k1] = scaled_seed(mu, x);
  const double two_over_x = 2.0 / x;
  bool rescaled = false;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * two_over_x * k1 + kmu;
    kmu = k1;
    k1 = next;
    if (!std::isfinite(k1) || k1 > 1.0e250) {
      rescaled = true;
      break;
    }
  }
  if (!rescaled) {
    const double v = kmu * std::exp(-x);
    if (std::isfinite(v) && (v > std::numeric_limits<double>::min() || x > 700.0)) return v;
  }
  const double lg = log_bessel_k(nu, x);
  if (lg > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error("bessel_k: K_nu(x) overflows for nu=" + std::to_string(nu) +
                              ", x=" + std::to_string(x));
  }
  return std::exp(lg);
}

double log_bessel_k(double nu, double x) {
  require_positive_argument(x);
  return log_scaled_bessel_k(nu, x) - x;
}

PsiSeries psi_series_coefficients(double s, int terms) {
  if (is_integer_order(s)) throw std::domain_error("psi_series: s must be non-integer");
  PsiSeries out;
  out.even.resize(terms);
  out.singular.resize(terms);
  out.even[0] = 1.0;
  out.singular[0] = -std::exp(-2.0 * s * std::log(2.0) + std::lgamma(1.0 - s) - std::lgamma(1.0 + s));
  // lgamma drops the sign of Gamma(1-s) for s > 1
  if (std::tgamma(1.0 - s) < 0.0) out.singular[0] = -out.singular[0];
  for (int m = 1; m < terms; ++m) {
    out.even[m] = out.even[m - 1] * 0.25 / (m * (m - s));
    out.singular[m] = out.singular[m - 1] * 0.25 / (m * (m + s));
  }
  return out;
}

namespace {

// Distance from s to the nearest integer below which the split series is
// dominated by cancellation between its two parts.
constexpr double kSeriesIntegerGap = 0.05;
constexpr double kSeriesMaxArgument = 0.25;

double psi_from_series(double s, double t) {
  const PsiSeries ser = psi_series_coefficients(s, 30);
  const double t2 = t * t;
  double even = 0.0;
  double sing = 0.0;
  double p = 1.0;
  for (std::size_t m = 0; m < ser.even.size(); ++m) {
    even += ser.even[m] * p;
    sing += ser.singular[m] * p;
    p *= t2;
    if (p < 1.0e-40) break;
  }
  return even + std::pow(t, 2.0 * s) * sing;
}

}  // namespace

double psi(double s, double y) {
  if (!(s > 0.0)) throw std::domain_error("psi: s must be positive");
  const double t = std::abs(y);
  if (t == 0.0) return 1.0;
  if (t <= kSeriesMaxArgument && std::abs(s - std::round(s)) > kSeriesIntegerGap) {
    return psi_from_series(s, t);
  }
  const double log_value = std::log(kernel_normalization(s)) + s * std::log(t) + log_bessel_k(s, t);
  if (t < 600.0 && s < 30.0) {
    // direct product is more accurate when nothing under- or overflows
    const double k = bessel_k(s, t);
    const double v = kernel_normalization(s) * std::pow(t, s) * k;
    if (std::isfinite(v) && v > 1.0e-300) return v;
  }
  return std::exp(log_value);
}

double psi_lambda(double s, double lambda, double y) {
  if (!(lambda > 0.0)) {
    throw std::domain_error("psi_lambda: lambda must be positive, got " + std::to_string(lambda));
  }
  return psi(s, std::sqrt(lambda) * std::abs(y));
}

double psi_deriv(double s, double y, int order) {
  if (!(y > 0.0)) throw std::domain_error("psi_deriv: y must be positive");
  const int max_order = static_cast<int>(std::floor(2.0 * s));
  if (order < 1 || order > max_order) {
    throw std::domain_error("psi_deriv: order " + std::to_string(order) + " outside 1.." +
                            std::to_string(max_order));
  }
  if (order == 1) return psi_first_derivative(s, y);
  const int fl = static_cast<int>(std::floor(s));
  if (order % 2 == 0) {
    const int m = order / 2;
    double acc = 0.0;
    for (int l = 0; l <= m; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      acc += binomial(m, l) * sign * beta_ratio(s, l) * psi(s - l, y);
    }
    return acc;
  }
  const int m = (order + 1) / 2;  // order = 2m - 1
  if (m <= fl) {
    double acc = 0.0;
    for (int l = 1; l <= m; ++l) {
      const double sign = (l % 2 == 0) ? 1.0 : -1.0;
      acc += binomial(m - 1, l - 1) * sign * beta_ratio_three_halves(s, l) * psi(s - l, y);
    }
    return y * acc;
  }
  // order = 2 floor(s) + 1: differentiate the even formula term by term
  double acc = 0.0;
  for (int l = 0; l <= fl; ++l) {
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    acc += binomial(fl, l) * sign * beta_ratio(s, l) * psi_first_derivative(s - l, y);
  }
  return acc;
}

double psi_fourier(double s, double xi) {
  if (!(s > 0.0)) throw std::domain_error("psi_fourier: s must be positive");
  const double amp = std::sqrt(2.0) * std::exp(std::lgamma(s + 0.5) - std::lgamma(s));
  return amp * std::pow(1.0 + xi * xi, -0.5 * (1.0 + 2.0 * s));
}

double seminorm_sq(double s, double alpha) {
  if (!(s > 0.0)) throw std::domain_error("seminorm_sq: s must be positive");
  if (!(alpha > -0.5) || !(alpha < 2.0 * s + 0.5)) {
    throw std::domain_error("seminorm_sq: alpha must lie in (-1/2, 2s+1/2); the integral diverges");
  }
  const double log_v = 2.0 * std::lgamma(s + 0.5) - std::log(s) - std::lgamma(2.0 * s) -
                       2.0 * std::lgamma(s) + std::lgamma(alpha + 0.5) +
                       std::lgamma(2.0 * s - alpha + 0.5);
  return std::exp(log_v);
}

double psi_weighted_l2_sq(double s, double b) {
  if (!(b > -1.0)) throw std::domain_error("psi_weighted_l2_sq: b must exceed -1");
  // int_0^inf t^{mu-1} K_s(t)^2 dt with mu = 2s + b + 1
  const double mu = 2.0 * s + b + 1.0;
  const double log_mellin = 0.5 * std::log(kPi) - std::log(4.0) - std::lgamma(0.5 * (1.0 + mu)) +
                            std::lgamma(0.5 * mu) + std::lgamma(0.5 * mu - s) +
                            std::lgamma(0.5 * mu + s);
  const double c = kernel_normalization(s);
  return 2.0 * c * c * std::exp(log_mellin);
}

}  // namespace fracext
