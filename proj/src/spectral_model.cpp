#include "fracext/spectral_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fracext {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void require_same_spectrum(const ModalVector& a, const ModalVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("modal vectors have different lengths (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
}

// weight lambda^t for a nonzero eigenvalue, or the kernel convention
double kernel_guard(const ModalVector& u, double t, const char* what) {
  const Spectrum& sp = *u.spectrum;
  for (std::size_t j = 0; j < sp.kernel_dim; ++j) {
    if (t < 0.0 && u.coeffs[j] != 0.0) {
      throw std::domain_error(std::string(what) + ": negative power touches kernel mode " +
                              std::to_string(j + 1) + " (coefficient " + fmt(u.coeffs[j]) + ")");
    }
  }
  return 0.0;
}

}  // namespace

double Spectrum::lambda_min_positive() const {
  if (kernel_dim >= eigenvalues.size()) throw std::domain_error("spectrum has no positive eigenvalue");
  return eigenvalues[kernel_dim];
}

SpectrumPtr make_spectrum(std::vector<double> eigenvalues, std::string label) {
  if (eigenvalues.empty()) throw std::invalid_argument("spectrum needs at least one eigenvalue");
  auto sp = std::make_shared<Spectrum>();
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    const double l = eigenvalues[j];
    if (!std::isfinite(l)) throw std::invalid_argument("eigenvalue " + std::to_string(j + 1) + " is not finite");
    if (l < 0.0) {
      throw std::domain_error("negative eigenvalue " + fmt(l) + " at position " + std::to_string(j + 1));
    }
    if (j > 0 && l < eigenvalues[j - 1]) throw std::invalid_argument("eigenvalues must be nondecreasing");
  }
  std::size_t k = 0;
  while (k < eigenvalues.size() && eigenvalues[k] == 0.0) ++k;
  sp->eigenvalues = std::move(eigenvalues);
  sp->kernel_dim = k;
  sp->label = std::move(label);
  return sp;
}

ModalVector::ModalVector(std::vector<double> c, SpectrumPtr sp) : coeffs(std::move(c)), spectrum(std::move(sp)) {
  if (!spectrum) throw std::invalid_argument("modal vector without spectrum");
  if (coeffs.size() != spectrum->size()) {
    throw std::invalid_argument("vector has " + std::to_string(coeffs.size()) + " coefficients but the spectrum has " +
                                std::to_string(spectrum->size()) + " modes");
  }
}

double EigenBasis::gram_residual() const {
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += (*this)(i, a) * (*this)(i, b);
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<double> EigenBasis::to_modal(const std::vector<double>& x) const {
  if (x.size() != n) throw std::invalid_argument("physical vector has wrong length");
  std::vector<double> c(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) c[j] += (*this)(i, j) * x[i];
  return c;
}

std::vector<double> EigenBasis::from_modal(const std::vector<double>& c) const {
  if (c.size() != n) throw std::invalid_argument("modal vector has wrong length");
  std::vector<double> x(n, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) x[i] += (*this)(i, j) * c[j];
  return x;
}

Operator dirichlet_laplacian_1d(double length, std::size_t modes) {
  if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
  if (modes < 1) throw std::invalid_argument("need at least one mode");
  std::vector<double> ev(modes);
  for (std::size_t j = 0; j < modes; ++j) {
    const double k = (j + 1) * std::numbers::pi / length;
    ev[j] = k * k;
  }
  return {make_spectrum(std::move(ev), "dirichlet_laplacian_1d(L=" + fmt(length) + ",J=" + std::to_string(modes) + ")"),
          nullptr};
}

Operator neumann_laplacian_1d(double length, std::size_t modes) {
  if (!(length > 0.0)) throw std::invalid_argument("interval length must be positive");
  if (modes < 1) throw std::invalid_argument("need at least one mode");
  std::vector<double> ev(modes);
  for (std::size_t j = 0; j < modes; ++j) {
    const double k = j * std::numbers::pi / length;
    ev[j] = k * k;
  }
  return {make_spectrum(std::move(ev), "neumann_laplacian_1d(L=" + fmt(length) + ",J=" + std::to_string(modes) + ")"),
          nullptr};
}

void tridiagonal_eigen(std::vector<double>& d, std::vector<double> e, std::vector<double>* z) {
  const std::size_t n = d.size();
  if (n == 0) return;
  e.resize(n, 0.0);
  if (z) {
    z->assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) (*z)[i * n + i] = 1.0;
  }
  auto Z = [&](std::size_t row, std::size_t col) -> double& { return (*z)[col * n + row]; };
  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 60) throw std::runtime_error("tridiagonal eigensolver did not converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;
        p = d[m];
        double c = 1.0, c2 = 1.0, c3 = 1.0;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              h = Z(k, i + 1);
              Z(k, i + 1) = s * Z(k, i) + c * h;
              Z(k, i) = c * Z(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  std::vector<double> ds(n);
  for (std::size_t j = 0; j < n; ++j) ds[j] = d[order[j]];
  d = std::move(ds);
  if (z) {
    std::vector<double> zs(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) zs[j * n + i] = (*z)[order[j] * n + i];
    *z = std::move(zs);
  }
}

Operator tridiagonal_operator(const std::vector<double>& diag, const std::vector<double>& offdiag) {
  const std::size_t n = diag.size();
  if (n < 1) throw std::invalid_argument("tridiagonal operator needs at least one diagonal entry");
  if (offdiag.size() != n - 1) {
    throw std::invalid_argument("off-diagonal must have " + std::to_string(n - 1) + " entries");
  }
  std::vector<double> d = diag;
  auto basis = std::make_shared<EigenBasis>();
  basis->n = n;
  tridiagonal_eigen(d, offdiag, &basis->vectors);
  // round-off can leave a null eigenvalue slightly negative
  const double scale = std::max(std::abs(d.front()), std::abs(d.back()));
  for (double& v : d) {
    if (v < 0.0 && v > -1e-13 * scale) v = 0.0;
    if (v > 0.0 && v < 1e-13 * scale) v = 0.0;
  }
  return {make_spectrum(std::move(d), "tridiagonal(n=" + std::to_string(n) + ")"), basis};
}

Operator symmetric_matrix_operator(const std::vector<std::vector<double>>& a) {
  const std::size_t n = a.size();
  if (n < 1) throw std::invalid_argument("empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("matrix is not square");
  std::vector<double> diag(n), off(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = a[i][i];
    for (std::size_t j = 0; j < n; ++j) {
      const double tol = 1e-12 * std::max({1.0, std::abs(a[i][j]), std::abs(a[j][i])});
      if (std::abs(a[i][j] - a[j][i]) > tol) {
        throw std::invalid_argument("matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if ((j > i + 1 || i > j + 1) && a[i][j] != 0.0) {
        throw std::invalid_argument("only tridiagonal matrices are supported");
      }
    }
    if (i + 1 < n) off[i] = a[i][i + 1];
  }
  return tridiagonal_operator(diag, off);
}

Operator explicit_eigenvalues(std::vector<double> values) {
  for (double v : values) {
    if (v < 0.0) throw std::domain_error("negative eigenvalue " + fmt(v) + " in explicit list");
  }
  std::stable_sort(values.begin(), values.end());
  return {make_spectrum(std::move(values), "explicit_eigenvalues"), nullptr};
}

Operator build_operator(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("operator descriptor needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "dirichlet_laplacian_1d" || kind == "neumann_laplacian_1d") {
    const double length = j.value("length", std::numbers::pi);
    const auto modes = j.at("modes").get<long long>();
    if (modes < 1) throw std::invalid_argument("need at least one mode");
    return kind == "dirichlet_laplacian_1d" ? dirichlet_laplacian_1d(length, modes)
                                            : neumann_laplacian_1d(length, modes);
  }
  if (kind == "tridiagonal") {
    if (j.contains("matrix")) return symmetric_matrix_operator(j.at("matrix").get<std::vector<std::vector<double>>>());
    const auto diag = j.at("diag").get<std::vector<double>>();
    std::vector<double> off = j.value("offdiag", std::vector<double>{});
    if (j.contains("lower")) {
      const auto lower = j.at("lower").get<std::vector<double>>();
      if (lower != off) throw std::invalid_argument("tridiagonal matrix is not symmetric");
    }
    return tridiagonal_operator(diag, off);
  }
  if (kind == "explicit_eigenvalues") return explicit_eigenvalues(j.at("values").get<std::vector<double>>());
  throw std::invalid_argument("unknown operator kind \"" + kind + "\"");
}

double sobolev_norm(const ModalVector& u, double sigma) {
  const Spectrum& sp = *u.spectrum;
  kernel_guard(u, sigma, "sobolev_norm");
  double acc = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double c = u.coeffs[j];
    if (j < sp.kernel_dim) {
      if (sigma == 0.0) acc += c * c;
      continue;
    }
    acc += std::pow(sp.eigenvalues[j], sigma) * c * c;
  }
  return std::sqrt(acc);
}

ModalVector apply_power(const ModalVector& u, double t) {
  if (t == 0.0) return u;
  const Spectrum& sp = *u.spectrum;
  kernel_guard(u, t, "apply_power");
  std::vector<double> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    out[j] = j < sp.kernel_dim ? 0.0 : std::pow(sp.eigenvalues[j], t) * u.coeffs[j];
  }
  return ModalVector(std::move(out), u.spectrum);
}

std::pair<ModalVector, ModalVector> kernel_split(const ModalVector& u) {
  std::vector<double> ker(u.size(), 0.0), perp(u.coeffs);
  for (std::size_t j = 0; j < u.spectrum->kernel_dim; ++j) {
    ker[j] = u.coeffs[j];
    perp[j] = 0.0;
  }
  return {ModalVector(std::move(ker), u.spectrum), ModalVector(std::move(perp), u.spectrum)};
}

double duality_pairing(const ModalVector& zeta, const ModalVector& v) {
  require_same_spectrum(zeta, v);
  double acc = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) acc += zeta.coeffs[j] * v.coeffs[j];
  return acc;
}

}  // namespace fracext
