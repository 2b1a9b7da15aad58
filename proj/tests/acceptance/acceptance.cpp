// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fracext/extension.hpp"
#include "fracext/profile.hpp"
#include "fracext/variational.hpp"
#include "fracext/weighted_calculus.hpp"

using namespace fracext;

namespace {

struct Tally {
  bool ok = true;
  double worst = 0.0;
  std::string first_failure;

  void expect(bool cond, double err, const std::string& what) {
    if (std::isfinite(err)) worst = std::max(worst, err);
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ModalVector vec(std::vector<double> c, const std::vector<double>& spectrum) {
  return ModalVector(std::move(c), make_spectrum(spectrum, "acceptance"));
}

double d_ref(double s) {
  const double fl = std::floor(s);
  const double b = 1.0 - 2.0 * (s - fl);
  return std::pow(2.0, b) * std::tgamma(0.5 * (1.0 + b)) * std::tgamma(fl + 1.0) / std::tgamma(s);
}

double b_ref(double s) { return 1.0 - 2.0 * (s - std::floor(s)); }

Tally energy_isometry() {
  Tally t;
  for (double s : {0.25, 0.5, 0.75, 1.5, 2.5, 3.5})
    for (double lambda : {0.5, 1.0, 4.0, 10.0}) {
      const CheckReport r = energy_identity(s, lambda);
      const double e = rel(r.lhs, 2.0 * d_ref(s) * std::pow(lambda, s));
      t.expect(e <= 1e-6, e, r.name);
    }
  const double a = std::abs(energy_identity(0.5, 1.0).lhs - 2.0);
  const double b = std::abs(energy_identity(1.5, 1.0).lhs - 4.0);
  t.expect(a <= 1e-8, a, "hand value 2");
  t.expect(b <= 1e-8, b, "hand value 4");
  return t;
}

Tally curve_isometry() {
  Tally t;
  const ModalVector u = vec({1.0, 1.0, 1.0}, {1.0, 4.0, 9.0});
  for (double s : {0.5, 1.5}) {
    const double n = sobolev_norm(u, s);
    const double e = rel(curve_energy(u, s, static_cast<int>(std::ceil(s)), b_ref(s)), 2.0 * d_ref(s) * n * n);
    t.expect(e <= 1e-6, e, "s=" + std::to_string(s));
  }
  return t;
}

Tally dtn_trace() {
  Tally t;
  const ModalVector u = vec({1.0, 1.0}, {1.0, 4.0});
  for (double s : {0.3, 0.5, 1.5, 2.5})
    for (auto method : {ConormalMethod::analytic, ConormalMethod::finite_difference}) {
      const ModalVector c = conormal_trace(u, s, method);
      for (std::size_t j = 0; j < 2; ++j) {
        const double e = rel(c[j], -d_ref(s) * std::pow(u.spectrum->eigenvalues[j], s) * u[j]);
        t.expect(e <= 1e-4, e, "s=" + std::to_string(s));
      }
    }
  return t;
}

Tally ode() {
  Tally t;
  const ModalVector u = vec({1.0, -0.5, 0.25, 1.0}, {0.5, 1.0, 4.0, 10.0});
  const double norm = sobolev_norm(u, 0.0);
  const auto ys = geometric_grid_points(0.2, 5.0, 12);
  for (double s : {0.25, 0.5, 0.75, 1.5, 2.5, 3.5})
    for (double y : ys) {
      const double r = ode_residual(u, s, y, OdeScheme::collapsed) / norm;
      t.expect(r <= 1e-4, r, "s=" + std::to_string(s) + " y=" + std::to_string(y));
    }
  const ModalVector one = vec({1.0}, {1.0});
  for (double s : {0.5, 1.5})
    for (double y : ys) {
      const double r = ode_residual(one, s, y, OdeScheme::collapsed_analytic);
      t.expect(r <= 1e-12, r, "closed form s=" + std::to_string(s));
    }
  return t;
}

Tally recurrence() {
  Tally t;
  const auto ys = geometric_grid_points(0.1, 10.0, 25);
  for (double s : {1.5, 2.5, 3.7}) {
    const double b = b_ref(s);
    Profile p = Profile::psi(s, 1.0);
    for (int m = 1; m <= static_cast<int>(std::floor(s)); ++m) {
      p = p.shifted_bessel(b, 1.0, false);  // symbolic differentiation, not the recurrence
      const double k = d_ref(s) / d_ref(s - m);
      const Profile lower = Profile::psi(s - m, 1.0);
      for (double y : ys) {
        const double e = rel(p(y), k * lower(y));
        t.expect(e <= 1e-5, e, "s=" + std::to_string(s) + " m=" + std::to_string(m));
      }
    }
  }
  return t;
}

Tally virial() {
  Tally t;
  const auto [a, b] = virial_check(0.5);
  const auto [c, d] = virial_check(2.5);
  const double es[] = {rel(a.lhs, 1.0), rel(b.lhs, 1.0), rel(c.lhs, 40.0 / 9.0), rel(d.lhs, 8.0 / 9.0)};
  for (double e : es) t.expect(e <= 1e-6, e, "virial value");
  return t;
}

Tally trace_sharp() {
  Tally t;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> rate(0.2, 5.0), weight(-1.0, 1.0);
  for (double b : {-0.5, 0.0, 0.4}) {
    for (int trial = 0; trial < 20; ++trial) {
      Profile p = Profile::gaussian(rate(rng));
      for (int k = 0; k < 3; ++k) p = p + Profile::gaussian(rate(rng)).scaled(weight(rng));
      p = p + Profile::gaussian_moment(rate(rng)).scaled(weight(rng)) + Profile::bump(1.0 + rate(rng)).scaled(weight(rng));
      const CheckReport r = trace_inequality(b, p);
      t.expect(r.lhs >= r.rhs, r.rel_err, "random profile b=" + std::to_string(b));
    }
    const CheckReport s = trace_sharpness(b);
    t.expect(s.rel_err <= 1e-6, s.rel_err, s.name);
  }
  return t;
}

Tally variational_minimum() {
  Tally t;
  const ModalVector u = vec({1.0, 1.0}, {1.0, 4.0});
  const CheckReport r = minimize_curve(u, 0.5, 4000);
  t.expect(r.lhs >= 6.0, rel(r.lhs, 6.0), "below the closed form");
  t.expect(rel(r.lhs, 6.0) <= 1e-3, rel(r.lhs, 6.0), "distance to 6");
  const double e1 = minimize_curve(u, 0.5, 1000).lhs - 6.0;
  const double e2 = minimize_curve(u, 0.5, 2000).lhs - 6.0;
  const double e3 = r.lhs - 6.0;
  t.expect(e1 / e2 >= 1.7 && e2 / e3 >= 1.7, rel(r.lhs, 6.0), "refinement ratio");
  return t;
}

Tally negative_order() {
  Tally t;
  const NegativeMinimum m = minimize_negative(vec({1.0}, {1.0}), 0.5, 4000);
  const double e = rel(m.report.lhs, -2.0);
  t.expect(m.report.lhs >= -2.0 && e <= 1e-3, e, "minimum");
  const double tr = std::abs(m.trace[0] - 1.0);
  t.expect(tr <= 1e-3, tr, "trace");
  return t;
}

Tally orthogonality() {
  Tally t;
  const ModalVector u = vec({1.0, -0.5, 0.25}, {1.0, 4.0, 9.0});
  const ModalVector v = vec({0.3, 1.0, 2.0}, {1.0, 4.0, 9.0});
  const Profile eta = Profile::gaussian(1.0) + Profile::bump(2.0).scaled(0.5);
  for (double s : {0.5, 1.5}) {
    const CheckReport r = orthogonality_check(u, v, s, eta);
    t.expect(r.rel_err <= 1e-5, r.rel_err, r.name);
    const CheckReport z = orthogonality_check(u, v, s, Profile::gaussian_moment(1.0));
    t.expect(z.rhs == 0.0 && std::abs(z.lhs) <= 1e-8, std::abs(z.lhs), "V(0) = 0");
  }
  return t;
}

Tally taylor() {
  Tally t;
  const ModalVector one = vec({1.0}, {1.0});
  double prev = INFINITY;
  for (int n = 4; n <= 10; ++n) {
    const double y = std::ldexp(1.0, -n);
    const double r = std::abs(taylor_remainder(one, 2.5, 2, y)[0]) / std::pow(y, 4);
    t.expect(r < prev, 0.0, "monotone at n=" + std::to_string(n));
    prev = r;
  }
  const double c = taylor_expand(one, 1.5, 1)[1][0];
  t.expect(std::abs(c + 0.5) <= 1e-15, std::abs(c + 0.5), "coefficient of y^2");
  return t;
}

Tally fourier() {
  Tally t;
  for (double s : {0.25, 0.5, 1.5, 3.5}) {
    for (double xi : {0.0, 0.5, 2.0, 10.0}) {
      const CheckReport r = fourier_transform_check(s, xi);
      const double closed = std::sqrt(2.0) * std::tgamma(s + 0.5) / std::tgamma(s) * std::pow(1.0 + xi * xi, -s - 0.5);
      const double e = rel(r.lhs, closed);
      t.expect(e <= 1e-7, e, r.name);
    }
    for (double alpha : {0.0, 0.5 * s, s}) {
      const CheckReport r = seminorm_check(s, alpha);
      t.expect(r.rel_err <= 1e-7, r.rel_err, r.name);
    }
  }
  const ModalVector u = vec({1.0, 1.0}, {1.0, 4.0});
  const double n = sobolev_norm(u, 0.5);
  const double e = rel(h1_seminorm_sq_direct(u, 0.5, 0.0), n * n);
  t.expect(e <= 1e-7, e, "H^1 seminorm at s = 1/2");
  return t;
}

Tally nonexpansive_commute() {
  Tally t;
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Operator op = dirichlet_laplacian_1d(1.0, 16);
  const auto g = default_curve_grid(*op.spectrum);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> c(16);
    for (auto& x : c) x = dist(rng);
    const ModalVector u(c, op.spectrum);
    for (double s : {0.3, 0.5, 1.5, 2.5}) {
      const ExtensionCurve curve = extend(u, s, g);
      const ExtensionCurve powered = extend(apply_power(u, 0.5), s, g);
      for (std::size_t i = 0; i < g.size(); ++i) {
        const ModalVector col = curve.column(i);
        for (double sigma : {-1.0, 0.0, 0.5, 1.0}) {
          const double nu = sobolev_norm(u, sigma);
          const double excess = (sobolev_norm(col, sigma) - nu) / nu;
          t.expect(excess <= 1e-12, std::max(excess, 0.0), "nonexpansive");
        }
        const ModalVector a = apply_power(col, 0.5);
        for (std::size_t j = 0; j < 16; ++j) {
          const double d = std::abs(powered(j, i) - a[j]);
          t.expect(d <= 1e-12 * std::max(1.0, std::abs(a[j])), d, "commutation");
        }
      }
    }
  }
  return t;
}

Tally holder_slope() {
  Tally t;
  const auto g = geometric_grid_points(1e-4, 1e-2, 30);
  const ExtensionCurve c = extend(vec({1.0}, {1.0}), 0.3, g);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = std::log(g[i]), y = std::log(std::abs(c(0, i) - 1.0));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  const double n = static_cast<double>(g.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  t.expect(std::abs(slope - 0.6) <= 0.05, std::abs(slope - 0.6), "slope " + std::to_string(slope));
  return t;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Tally()> run;
  };
  const Criterion criteria[] = {
      {"energy isometry over the s x lambda matrix", energy_isometry},
      {"curve-level isometry", curve_isometry},
      {"Dirichlet-to-Neumann trace", dtn_trace},
      {"ODE residual", ode},
      {"index recurrence", recurrence},
      {"virial identities", virial},
      {"trace inequality and sharpness", trace_sharp},
      {"variational minimum", variational_minimum},
      {"negative-order minimum", negative_order},
      {"orthogonality", orthogonality},
      {"Taylor remainder", taylor},
      {"Fourier identities", fourier},
      {"nonexpansiveness and commutation", nonexpansive_commute},
      {"Holder slope probe", holder_slope},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Tally t;
    try {
      t = c.run();
    } catch (const std::exception& e) {
      t.ok = false;
      t.first_failure = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s (worst %.3g, %.2fs)%s%s\n", t.ok ? "PASS" : "FAIL", index, c.title, t.worst, secs,
                t.ok ? "" : ": ", t.first_failure.c_str());
    failed += !t.ok;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed ? 1 : 0;
}
