#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace fracext {

struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
const GaussRule& gauss_legendre(int n);

// Gauss rule for int_0^1 x^a f(x) dx, a > -1 (Golub-Welsch on the shifted Jacobi recurrence).
GaussRule gauss_jacobi_power(int n, double a);

enum class Grading { geometric, gauss_transformed };

Grading parse_grading(const std::string& name);

// Nodes/weights for int_0^inf y^b f(y) dy. Integrals over R of even
// integrands are even_factor times the half-line value.
struct WeightedGrid {
  static constexpr double even_factor = 2.0;

  double b = 0.0;
  double y_max = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    // pairwise-free but fixed-order summation keeps the result deterministic
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double term = weights[i] * f(nodes[i]) - comp;
      const double t = acc + term;
      comp = (t - acc) - term;
      acc = t;
    }
    return acc;
  }

  template <class F>
  double integrate_even(F&& f) const {
    return even_factor * integrate(std::forward<F>(f));
  }
};

// y_split marks the end of the geometrically graded region; n is the cell
// count of each of the two regions. Throws for b outside (-1, 1) or n < 16.
WeightedGrid make_grid(double b, double y_max, int n = 64, Grading grading = Grading::geometric,
                       double y_split = -1.0);

// Same construction for any weight exponent > -1; used internally for
// Fourier-side integrals whose weights leave (-1, 1).
WeightedGrid make_power_grid(double exponent, double y_split, double y_max, int n);

// Double-exponential rule for int_0^inf f(x) dx with algebraic behaviour at
// both ends.
double integrate_half_line(const std::function<double(double)>& f, double tol = 1e-15);

// Tanh-sinh rule for int_a^b f(x) dx.
double integrate_interval(const std::function<double(double)>& f, double a, double b, double tol = 1e-15);

// Extrapolates f(y) = L + sum_e c_e y^e to y -> 0 from samples at
// y_i = y0 * ratio^i, i = 0..exponents.size().
double richardson_limit(const std::function<double(double)>& f, double y0, double ratio,
                        const std::vector<double>& exponents);

// Same with arbitrary abscissae (one more sample than exponents).
double richardson_limit(const std::vector<double>& ys, const std::vector<double>& fs,
                        const std::vector<double>& exponents);

// Solves the small dense system a x = rhs in place (partial pivoting).
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> rhs);

}  // namespace fracext
