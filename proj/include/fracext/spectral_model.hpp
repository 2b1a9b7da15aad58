#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fracext {

// Eigenvalues of a nonnegative self-adjoint operator, sorted nondecreasing.
// The first kernel_dim entries are exactly zero.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::size_t kernel_dim = 0;
  std::string label;

  std::size_t size() const { return eigenvalues.size(); }
  double lambda_min_positive() const;
  double lambda_max() const { return eigenvalues.back(); }
};

using SpectrumPtr = std::shared_ptr<const Spectrum>;

// Validates ordering and sign, counts the zero eigenvalues.
SpectrumPtr make_spectrum(std::vector<double> eigenvalues, std::string label);

struct ModalVector {
  std::vector<double> coeffs;
  SpectrumPtr spectrum;

  ModalVector() = default;
  ModalVector(std::vector<double> c, SpectrumPtr sp);

  std::size_t size() const { return coeffs.size(); }
  double operator[](std::size_t j) const { return coeffs[j]; }
};

// Column-major orthonormal eigenvectors: column j belongs to eigenvalues[j].
struct EigenBasis {
  std::size_t n = 0;
  std::vector<double> vectors;

  double operator()(std::size_t row, std::size_t col) const { return vectors[col * n + row]; }
  double gram_residual() const;
  std::vector<double> to_modal(const std::vector<double>& x) const;
  std::vector<double> from_modal(const std::vector<double>& c) const;
};

struct Operator {
  SpectrumPtr spectrum;
  std::shared_ptr<const EigenBasis> basis;  // null unless matrix-backed
};

Operator dirichlet_laplacian_1d(double length, std::size_t modes);
Operator neumann_laplacian_1d(double length, std::size_t modes);
// diag has n entries, offdiag n-1. Eigenvalues must come out nonnegative.
Operator tridiagonal_operator(const std::vector<double>& diag, const std::vector<double>& offdiag);
// Dense symmetric input; rejected unless symmetric, then reduced to the
// tridiagonal path when already tridiagonal.
Operator symmetric_matrix_operator(const std::vector<std::vector<double>>& matrix);
Operator explicit_eigenvalues(std::vector<double> values);

// {"kind": "...", ...}; see README for the accepted keys.
Operator build_operator(const nlohmann::json& descriptor);

// Symmetric tridiagonal eigensolver (implicit QL). On return d holds the
// eigenvalues in ascending order (stable for ties) and z, if non-null, the
// column-major eigenvectors.
void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>* z);

double sobolev_norm(const ModalVector& u, double sigma);
ModalVector apply_power(const ModalVector& u, double t);
std::pair<ModalVector, ModalVector> kernel_split(const ModalVector& u);
double duality_pairing(const ModalVector& zeta, const ModalVector& v);

}  // namespace fracext
