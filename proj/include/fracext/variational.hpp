#pragma once

#include <string>
#include <vector>

#include "fracext/profile.hpp"
#include "fracext/spectral_model.hpp"
#include "fracext/weighted_calculus.hpp"

namespace fracext {

struct ProfileFE {
  std::vector<double> grid;
  std::vector<double> values;
  double b = 0.0;
  double lambda = 1.0;
};

struct ProfileMinimum {
  double min_value = 0.0;  // over R
  ProfileFE profile;
};

constexpr std::size_t kDefaultElements = 4000;

// y_i = y_max (i/N)^2, y_max = 40/sqrt(lambda)
std::vector<double> graded_mesh(double lambda, std::size_t elements);

// Minimizes 2 int_0^{y_max} y^b (psi'^2 + lambda psi^2) over P1 functions with
// psi(0) = trace, psi(y_max) = 0; s in (0, 1), b = 1 - 2s.
ProfileMinimum minimize_profile(double s, double lambda, std::size_t elements = kDefaultElements,
                                double trace = 1.0);

// ||psi_h - psi_{s,lambda}||_{L^{2;b}(R)} from the nodal values
double profile_l2_error(const ProfileMinimum& m, double s);

CheckReport minimize_curve(const ModalVector& u, double s, std::size_t elements = kDefaultElements,
                           double tol = 1e-3);

struct NegativeMinimum {
  CheckReport report;
  ModalVector trace;  // minimizer trace, approximates L^{-s} zeta
};

NegativeMinimum minimize_negative(const ModalVector& zeta, double s, std::size_t elements = kDefaultElements,
                                  double tol = 1e-3);

// (P_s[u], V)_{H^{ceil s; b}} with V_j = v_j eta against 2 d_s sum lambda_j^s u_j v_j eta(0).
CheckReport orthogonality_check(const ModalVector& u, const ModalVector& v, double s, const Profile& eta,
                                double tol = 1e-5);

// Writes y, minimizer, closed-form profile rows.
std::string minimizer_csv(const ProfileMinimum& m, double s);

}  // namespace fracext
