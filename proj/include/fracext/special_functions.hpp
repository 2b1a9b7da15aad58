#pragma once

#include <vector>

namespace fracext {

/// Parameter bundle for a non-integer order s > 0.
///
/// Every kernel formula of the extension depends only on these numbers:
///   b   = 1 - 2 (s - floor(s)),              b in (-1, 1)
///   c_s = 2^{1-s} / Gamma(s)                 normalization of psi_s
///   d_s = 2^b Gamma((1+b)/2) floor(s)! / Gamma(s)   Dirichlet-to-Neumann constant
struct FracParams {
  double s = 0.5;
  int floor_s = 0;
  int ceil_s = 1;
  double b = 0.0;
  double c_s = 0.0;
  double d_s = 0.0;

  /// Throws std::domain_error for s <= 0 or integer s.
  static FracParams from_order(double s);
};

bool is_integer_order(double s);

double kernel_normalization(double s);  // c_s, any s > 0
double dtn_constant(double s);          // d_s, non-integer s > 0

/// Best constant m_b of the trace inequality ||psi||^2_{H^{1;b}} >= m_b |psi(0)|^2.
double trace_constant(double b);

/// kappa_{s,m} = (-1)^m Gamma(s-m)/Gamma(s) (2m)! / (2^{2m} m!), 1 <= m <= floor(s).
double taylor_kappa(double s, int m);

/// gamma_{s,l} = B(s-l, 1/2) / B(s, 1/2), 0 <= l <= floor(s).
double beta_ratio(double s, int l);

struct KernelConstants {
  double trace_constant = 0.0;    // m_b
  std::vector<double> kappa;      // kappa[m-1] = kappa_{s,m}, m = 1..floor(s)
  std::vector<double> beta_ratio; // beta_ratio[l] = gamma_{s,l}, l = 0..floor(s)
};

KernelConstants constants(const FracParams& params);

/// Macdonald function K_nu(x) for nu >= 0 (K_{-nu} = K_nu is folded in) and x > 0.
///
/// Temme series for x < 2, Steed continued fraction otherwise, then forward
/// recurrence in nu from the fractional seed pair. Throws std::domain_error for
/// x <= 0 and std::overflow_error when the value is not representable.
double bessel_k(double nu, double x);

/// e^x K_nu(x); avoids underflow for large x.
double bessel_k_scaled(double nu, double x);

/// log K_nu(x); finite wherever K_nu(x) itself would overflow or underflow.
double log_bessel_k(double nu, double x);

/// psi_s(y) = c_s |y|^s K_s(|y|), with psi_s(0) = 1.
double psi(double s, double y);

/// psi_{s,lambda}(y) = psi_s(sqrt(lambda) |y|). Throws for lambda <= 0.
double psi_lambda(double s, double lambda, double y);

/// Two-part expansion of psi_s near the origin for non-integer s:
///   psi_s(t) = sum_m even[m] t^{2m} + t^{2s} sum_m singular[m] t^{2m}.
/// even[0] == 1 exactly.
struct PsiSeries {
  std::vector<double> even;
  std::vector<double> singular;
};
PsiSeries psi_series_coefficients(double s, int terms);

/// k-th derivative of psi_s at y > 0, 1 <= k <= floor(2s).
double psi_deriv(double s, double y, int order);

/// Unitary Fourier transform of psi_s (s > 0, integer allowed).
double psi_fourier(double s, double xi);

/// int_R |xi|^{2 alpha} |psi_s^(xi)|^2 dxi, alpha in (-1/2, 2s + 1/2).
double seminorm_sq(double s, double alpha);

/// ||psi_s||^2 in L^{2;b}(R) from the Mellin transform of K_s^2.
double psi_weighted_l2_sq(double s, double b);

}  // namespace fracext
