#pragma once

#include <string>
#include <vector>

namespace fracext {

// Even profiles on [0, inf) written as finite sums  coef * y^power * atom(y).
// Derivatives are exact: psi atoms use the Bessel index relations, so no
// finite differences enter anywhere in this representation.
enum class AtomKind { psi, gaussian, bump };

struct Atom {
  AtomKind kind = AtomKind::psi;
  double a = 0.5;       // psi: order; gaussian: rate alpha in e^{-alpha y^2}; bump: exponent q
  double lambda = 1.0;  // psi: spectral scaling; bump: support radius R

  double eval(double y) const;
  bool same_as(const Atom& o) const;
};

struct Term {
  double coef = 0.0;
  double power = 0.0;
  Atom atom;
};

class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Term> terms) : terms_(std::move(terms)) {}

  // psi_s(sqrt(lambda) y)
  static Profile psi(double s, double lambda = 1.0);
  // e^{-alpha y^2}
  static Profile gaussian(double alpha);
  // y^2 e^{-alpha y^2}; vanishes at the origin
  static Profile gaussian_moment(double alpha);
  // exp(-1/(1 - (y/R)^2)) for |y| < R, zero outside
  static Profile bump(double radius = 1.0);

  double operator()(double y) const;
  double at_zero() const;

  Profile derivative() const;
  // (D_b + lambda) f = -f'' - b f'/y + lambda f
  // With use_recurrence, a lone psi term whose weight matches its order is
  // lowered by the index recurrence instead of being differentiated.
  Profile shifted_bessel(double b, double lambda, bool use_recurrence = true) const;
  Profile shifted_bessel_power(double b, double lambda, int m) const;

  Profile operator+(const Profile& o) const;
  Profile scaled(double c) const;

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::string describe() const;

 private:
  Profile simplified() const;
  std::vector<Term> terms_;
};

}  // namespace fracext
