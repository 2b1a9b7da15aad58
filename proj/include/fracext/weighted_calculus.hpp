#pragma once

#include <functional>
#include <string>
#include <utility>

#include <json.hpp>

#include "fracext/extension.hpp"
#include "fracext/profile.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

enum class Relation { equal, at_most, at_least };

// For inequalities rel_err measures the violation only (0 when satisfied).
// When |rhs| <= abs_floor the error is absolute and must not exceed abs_floor.
struct CheckReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

constexpr double kDefaultTol = 1e-6;
constexpr double kAbsFloor = 1e-12;

CheckReport make_report(std::string name, double lhs, double rhs, double tol, Relation rel = Relation::equal,
                        double abs_floor = kAbsFloor);
nlohmann::ordered_json to_json(const CheckReport& r);

// Grid adapted to the decay scale 1/sqrt(lambda).
WeightedGrid mode_grid(double b, double lambda, int n = 64);

// ||f||^2_{lambda, H^{k;b}} over R.
double mode_energy(const Profile& f, double lambda, int k, double b, const WeightedGrid& grid);
double mode_energy(const Profile& f, double lambda, int k, double b);
// Sampled profiles carry no derivative relations: only k = 1, by finite differences.
double mode_energy(const std::function<double(double)>& f, double lambda, int k, double b,
                   const WeightedGrid& grid);

double curve_energy(const ExtensionCurve& curve, int k, double b);
double curve_energy(const ModalVector& u, double s, int k, double b);

CheckReport energy_identity(double s, double lambda, double tol = kDefaultTol);
// {gradient-free part, gradient part}
std::pair<CheckReport, CheckReport> virial_check(double s, double tol = kDefaultTol);

CheckReport trace_inequality(double b, const Profile& profile, double tol = kDefaultTol);
// equality case at psi_{(1-b)/2}
CheckReport trace_sharpness(double b, double tol = kDefaultTol);

// (D_b psi, eta) against (psi', eta') in L^{2;b}(R); eta must vanish beyond
// support. numerical_eta switches eta' to finite differences.
CheckReport parts_check(const Profile& psi, const Profile& eta, double b, double support = 1.0,
                        bool numerical_eta = false, double tol = kDefaultTol);

// Transform of psi_s by quadrature in y.
double psi_fourier_numeric(double s, double xi);
CheckReport fourier_transform_check(double s, double xi, double tol = 1e-7);
// int_R |xi|^{2 alpha} |psi_s^|^2 by quadrature in xi
double seminorm_sq_numeric(double s, double alpha);
CheckReport seminorm_check(double s, double alpha, double tol = 1e-7);

// [[P_s u]]^2 in H^{alpha+1/2}(R -> H^{sigma-alpha}) against seminorm_sq(s, alpha+1/2) ||u||^2_sigma.
CheckReport fourier_isometry_seminorm(const ModalVector& u, double s, double sigma, double alpha,
                                      double tol = 1e-7);
// ||P_s u||_{L^{2;b}(R -> H^{sigma+(1+b)/2})} against ||psi_s||_{L^{2;b}} ||u||_sigma.
CheckReport fourier_isometry_l2(const ModalVector& u, double s, double sigma, double b, double tol = kDefaultTol);
// int_R ||d/dy P_s u||^2_{H^{fiber}} dy computed in y.
double h1_seminorm_sq_direct(const ModalVector& u, double s, double fiber_sigma);

}  // namespace fracext
