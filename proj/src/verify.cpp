#include "fracext/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "fracext/extension.hpp"
#include "fracext/io.hpp"
#include "fracext/profile.hpp"
#include "fracext/special_functions.hpp"
#include "fracext/variational.hpp"

namespace fracext {

namespace {

std::string label(const std::string& base, double s, double lambda = std::numeric_limits<double>::quiet_NaN(),
                  const char* key = "lambda") {
  std::string out = base + "(s=" + format_human(s);
  if (!std::isnan(lambda)) out += std::string(",") + key + "=" + format_human(lambda);
  return out + ")";
}

CheckReport renamed(CheckReport r, std::string name) {
  r.name = std::move(name);
  return r;
}

ModalVector single_mode(double lambda, double coeff = 1.0) {
  return ModalVector({coeff}, make_spectrum({lambda}, "single_mode"));
}

std::vector<double> taylor_exponents(double s, int k) {
  const double e = 2.0 * s - 2.0 * k;
  std::vector<double> all{e, 2.0, e + 2.0, 4.0, e + 4.0};
  std::sort(all.begin(), all.end());
  all.resize(4);
  return all;
}

std::vector<CheckReport> check_energy(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  std::vector<CheckReport> out;
  for (double l : lambdas) out.push_back(renamed(energy_identity(s, l, tol.value_or(1e-6)), label("energy", s, l)));
  return out;
}

std::vector<CheckReport> check_virial(double s, std::optional<double> tol) {
  if (FracParams::from_order(s).floor_s % 2 != 0) return {};
  auto [a, b] = virial_check(s, tol.value_or(1e-6));
  return {renamed(a, label("virial_value", s)), renamed(b, label("virial_gradient", s))};
}

std::vector<CheckReport> check_dtn(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  std::vector<CheckReport> out;
  const double d = dtn_constant(s);
  for (double l : lambdas) {
    const ModalVector t = conormal_trace(single_mode(l), s, ConormalMethod::finite_difference);
    out.push_back(make_report(label("dtn", s, l), t[0], -d * std::pow(l, s), tol.value_or(1e-4)));
  }
  return out;
}

std::vector<CheckReport> check_taylor(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  if (!(s > 1.0)) return {};
  const int k = static_cast<int>(std::floor(s));
  std::vector<CheckReport> out;
  for (double l : lambdas) {
    const ModalVector u = single_mode(l);
    const double expected = taylor_expand(u, s, k)[k][0];
    const double y0 = 0.02 / std::sqrt(l);
    const double extracted = richardson_limit(
        [&](double y) { return taylor_remainder(u, s, k - 1, y)[0] / std::pow(y, 2.0 * k); }, y0, 0.5,
        taylor_exponents(s, k));
    out.push_back(make_report(label("taylor", s, l), extracted, expected, tol.value_or(1e-6)));
  }
  return out;
}

std::vector<CheckReport> check_ode(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  std::vector<CheckReport> out;
  const double bound = tol.value_or(1e-4);
  for (double l : lambdas) {
    const ModalVector u = single_mode(l);
    double worst = 0.0;
    for (double y : {0.2, 0.5, 1.0, 2.0, 5.0}) worst = std::max(worst, ode_residual(u, s, y, OdeScheme::collapsed));
    out.push_back(make_report(label("ode", s, l), worst, 0.0, bound, Relation::at_most, bound));
  }
  return out;
}

std::vector<CheckReport> check_trace_ineq(double s, std::optional<double> tol) {
  const double b = FracParams::from_order(s).b;
  const double t = tol.value_or(1e-6);
  const Profile mix = Profile::gaussian(1.0).scaled(0.7) + Profile::gaussian(3.0).scaled(0.3);
  return {renamed(trace_sharpness(b, t), label("trace_sharp", s)),
          renamed(trace_inequality(b, mix, t), label("trace_ineq", s))};
}

std::vector<CheckReport> check_parts(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  std::vector<CheckReport> out;
  const double b = FracParams::from_order(s).b;
  for (double l : lambdas) {
    // psi_s with s < 1 has a jump in y^b psi' at the origin; psi_{s+1} does not
    const Profile p = Profile::psi(s < 1.0 ? s + 1.0 : s, l);
    out.push_back(renamed(parts_check(p, Profile::bump(1.0), b, 1.0, false, tol.value_or(1e-6)), label("parts", s, l)));
    out.push_back(
        renamed(parts_check(p, Profile::bump(1.0), b, 1.0, true, tol.value_or(1e-6)), label("parts_fd", s, l)));
  }
  return out;
}

std::vector<CheckReport> check_fourier(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  const double t = tol.value_or(1e-7);
  std::vector<CheckReport> out;
  for (double xi : {0.0, 0.5, 2.0, 10.0}) {
    out.push_back(renamed(fourier_transform_check(s, xi, t), label("psi_transform", s, xi, "xi")));
  }
  out.push_back(renamed(seminorm_check(s, 0.0, t), label("psi_norms_alpha0", s)));
  out.push_back(renamed(seminorm_check(s, s, t), label("psi_norms_alpha_s", s)));
  const ModalVector u(std::vector<double>(lambdas.size(), 1.0), make_spectrum([&] {
                        auto v = lambdas;
                        std::sort(v.begin(), v.end());
                        return v;
                      }(), "verify"));
  out.push_back(renamed(fourier_isometry_seminorm(u, s, s, s, t), label("iso_seminorm", s)));
  const double b = FracParams::from_order(s).b;
  out.push_back(renamed(fourier_isometry_l2(u, s, 0.0, b, t), label("iso_l2", s)));
  return out;
}

std::vector<CheckReport> check_minimize(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  if (!(s < 1.0)) return {};
  std::vector<CheckReport> out;
  for (double l : lambdas) {
    out.push_back(renamed(minimize_curve(single_mode(l), s, kDefaultElements, tol.value_or(1e-3)),
                          label("minimize", s, l)));
  }
  return out;
}

std::vector<CheckReport> check_orthogonality(double s, const std::vector<double>& lambdas, std::optional<double> tol) {
  if (FracParams::from_order(s).ceil_s > 2) return {};
  std::vector<CheckReport> out;
  for (double l : lambdas) {
    const ModalVector u = single_mode(l);
    out.push_back(renamed(orthogonality_check(u, u, s, Profile::gaussian(1.0), tol.value_or(1e-5)),
                          label("orthogonality", s, l)));
    out.push_back(renamed(orthogonality_check(u, u, s, Profile::gaussian_moment(1.0), tol.value_or(1e-5)),
                          label("orthogonality_zero_trace", s, l)));
  }
  return out;
}

std::vector<ModalVector> random_vectors(const SpectrumPtr& sp, int count) {
  std::mt19937_64 gen(20240611);
  std::normal_distribution<double> dist;
  std::vector<ModalVector> out;
  for (int c = 0; c < count; ++c) {
    std::vector<double> v(sp->size());
    for (double& x : v) x = dist(gen);
    out.emplace_back(std::move(v), sp);
  }
  return out;
}

std::vector<CheckReport> check_nonexpansive(double s, std::optional<double> tol) {
  const Operator op = dirichlet_laplacian_1d(std::acos(-1.0), 16);
  const auto grid = default_curve_grid(*op.spectrum, 60);
  std::vector<CheckReport> out;
  for (double sigma : {-1.0, 0.0, 1.0, s}) {
    double worst = 0.0;
    for (const ModalVector& u : random_vectors(op.spectrum, 3)) {
      const ExtensionCurve c = extend(u, s, grid);
      const double un = sobolev_norm(u, sigma);
      for (std::size_t i = 0; i < c.points(); ++i) worst = std::max(worst, sobolev_norm(c.column(i), sigma) / un);
    }
    out.push_back(make_report(label("nonexpansive_sigma" + format_human(sigma), s), worst, 1.0, tol.value_or(1e-12),
                              Relation::at_most));
  }
  return out;
}

std::vector<CheckReport> check_commute(double s, std::optional<double> tol) {
  const Operator op = dirichlet_laplacian_1d(std::acos(-1.0), 16);
  const auto grid = default_curve_grid(*op.spectrum, 60);
  double worst = 0.0;
  for (const ModalVector& u : random_vectors(op.spectrum, 3)) {
    for (double sigma : {-0.5, 0.5, 1.0}) {
      const ExtensionCurve a = extend(apply_power(u, sigma), s, grid);
      const ExtensionCurve b = extend(u, s, grid);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const ModalVector col = apply_power(b.column(i), sigma);
        for (std::size_t j = 0; j < col.size(); ++j) {
          const double scale = std::max(std::abs(col[j]), std::numeric_limits<double>::min());
          worst = std::max(worst, std::abs(a(j, i) - col[j]) / scale);
        }
      }
    }
  }
  const double bound = tol.value_or(1e-13);
  return {make_report(label("commute", s), worst, 0.0, bound, Relation::at_most, bound)};
}

std::vector<CheckReport> check_holder(double s, std::optional<double> tol) {
  if (!(s < 1.0)) return {};
  const std::size_t n = 21;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = 1e-4 * std::pow(100.0, static_cast<double>(i) / (n - 1));
    const double lx = std::log(y), ly = std::log(std::abs(psi(s, y) - 1.0));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {make_report(label("holder_slope", s), slope, 2.0 * s, tol.value_or(0.05 / (2.0 * s)))};
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"energy", "virial",       "dtn",      "taylor",        "ode",
                                              "trace_ineq", "parts",    "fourier",  "minimize",      "orthogonality",
                                              "nonexpansive", "commute", "holder_slope"};
  return names;
}

std::vector<CheckReport> run_check(const std::string& name, double s, const std::vector<double>& lambdas,
                                   std::optional<double> tol) {
  if (lambdas.empty()) throw std::invalid_argument("verify needs at least one lambda");
  for (double l : lambdas)
    if (!(l > 0.0)) throw std::domain_error("verify lambdas must be positive");
  FracParams::from_order(s);
  if (name == "energy") return check_energy(s, lambdas, tol);
  if (name == "virial") return check_virial(s, tol);
  if (name == "dtn") return check_dtn(s, lambdas, tol);
  if (name == "taylor") return check_taylor(s, lambdas, tol);
  if (name == "ode") return check_ode(s, lambdas, tol);
  if (name == "trace_ineq") return check_trace_ineq(s, tol);
  if (name == "parts") return check_parts(s, lambdas, tol);
  if (name == "fourier") return check_fourier(s, lambdas, tol);
  if (name == "minimize") return check_minimize(s, lambdas, tol);
  if (name == "orthogonality") return check_orthogonality(s, lambdas, tol);
  if (name == "nonexpansive") return check_nonexpansive(s, tol);
  if (name == "commute") return check_commute(s, tol);
  if (name == "holder_slope") return check_holder(s, tol);
  throw std::invalid_argument("unknown check \"" + name + "\"");
}

unsigned thread_budget(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("FRACEXT_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::vector<CheckReport> run_verify(const VerifyConfig& config) {
  std::vector<std::string> names = config.checks.empty() ? check_names() : config.checks;
  for (const auto& n : names) {
    if (std::find(check_names().begin(), check_names().end(), n) == check_names().end()) {
      throw std::invalid_argument("unknown check \"" + n + "\"");
    }
  }
  for (double s : config.s_values) FracParams::from_order(s);
  struct Task {
    double s;
    std::string name;
  };
  std::vector<Task> tasks;
  for (double s : config.s_values)
    for (const auto& n : names) tasks.push_back({s, n});
  std::vector<std::vector<CheckReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = run_check(tasks[i].name, tasks[i].s, config.lambdas, config.tol);
      } catch (const std::exception& e) {
        CheckReport r;
        r.name = label(tasks[i].name, tasks[i].s) + ": " + e.what();
        r.lhs = r.rhs = r.rel_err = std::numeric_limits<double>::quiet_NaN();
        r.tol = config.tol.value_or(0.0);
        r.pass = false;
        results[i] = {r};
      }
    }
  };
  const unsigned n = std::min<unsigned>(thread_budget(config.threads), static_cast<unsigned>(tasks.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<CheckReport> flat;
  for (auto& r : results) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

}  // namespace fracext
