#pragma once

#include <functional>
#include <vector>

#include "fracext/special_functions.hpp"
#include "fracext/spectral_model.hpp"

namespace fracext {

// values[j * grid.size() + i] = psi_s(sqrt(lambda_j) y_i) u_j; kernel modes are
// carried as constant rows.
struct ExtensionCurve {
  FracParams params;
  SpectrumPtr spectrum;
  std::vector<double> grid;
  std::vector<double> values;
  ModalVector source;

  std::size_t modes() const { return spectrum->size(); }
  std::size_t points() const { return grid.size(); }
  double operator()(std::size_t j, std::size_t i) const { return values[j * grid.size() + i]; }
  ModalVector column(std::size_t i) const;
};

// y_min * r^i up to y_max; defaults follow the spectrum scale.
std::vector<double> geometric_grid_points(double y_min, double y_max, std::size_t n);
std::vector<double> default_curve_grid(const Spectrum& spectrum, std::size_t n = 200);

ExtensionCurve extend(const ModalVector& u, double s, const std::vector<double>& grid);
// P_{-s}[zeta] = P_s[L^{-s} zeta]
ExtensionCurve extend_negative(const ModalVector& zeta, double s, const std::vector<double>& grid);

// Richardson extrapolation of the curve to y = 0 from its smallest abscissae.
ModalVector trace0(const ExtensionCurve& curve);

enum class ConormalMethod { analytic, finite_difference };

// lim y^b d/dy (D_b + L)^{floor s} P_s[u](y), extrapolated from y0, y0/2, ...
ModalVector conormal_trace(const ModalVector& u, double s, ConormalMethod method = ConormalMethod::analytic);

// d^k/dy^k P_s[u] on the grid, k = 1..floor(2s).
ExtensionCurve derivative_curve(const ModalVector& u, double s, int order, const std::vector<double>& grid);

// T_0..T_k with P_s[u](y) = sum_m T_m y^{2m} + o(y^{2k}).
std::vector<ModalVector> taylor_expand(const ModalVector& u, double s, int k);

// P_s[u](y) - sum_{m<=k} T_m y^{2m}, per mode, 0 <= k <= floor(s). Evaluated without cancellation
// from the two-part series near the origin.
ModalVector taylor_remainder(const ModalVector& u, double s, int k, double y);

enum class OdeScheme {
  collapsed,           // recurrence for the first floor(s) factors, finite differences for the last
  collapsed_analytic,  // recurrence, then the last factor through exact derivative relations
  full_numerical       // ceil(s) nested finite-difference applications
};

// H-norm of (D_b + L)^{ceil s} P_s[u] at y.
double ode_residual(const ModalVector& u, double s, double y, OdeScheme scheme = OdeScheme::collapsed);

// Fourth-order central differences with one Richardson level.
double fd_first(const std::function<double(double)>& f, double y, double h);
double fd_second(const std::function<double(double)>& f, double y, double h);
double fd_step(double y);

}  // namespace fracext
