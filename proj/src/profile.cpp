#include "fracext/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracext/special_functions.hpp"

namespace fracext {

namespace {

constexpr double kMatchTol = 1e-12;
// relative size below which a combined coefficient is pure cancellation
constexpr double kCancelTol = 1e-12;

bool close(double x, double y) { return std::abs(x - y) <= kMatchTol * std::max(1.0, std::abs(x)); }

double weight_exponent(double a) { return 1.0 - 2.0 * (a - std::floor(a)); }

}  // namespace

double Atom::eval(double y) const {
  switch (kind) {
    case AtomKind::psi:
      return fracext::psi(a, std::sqrt(lambda) * std::abs(y));
    case AtomKind::gaussian:
      return std::exp(-a * y * y);
    case AtomKind::bump: {
      const double r = y / lambda;
      const double w = 1.0 - r * r;
      if (w <= 0.0) return 0.0;
      return std::pow(w, -a) * std::exp(-1.0 / w);
    }
  }
  return 0.0;
}

bool Atom::same_as(const Atom& o) const { return kind == o.kind && close(a, o.a) && close(lambda, o.lambda); }

Profile Profile::psi(double s, double lambda) {
  if (!(lambda > 0.0)) throw std::domain_error("psi profile needs lambda > 0");
  return Profile({Term{1.0, 0.0, Atom{AtomKind::psi, s, lambda}}});
}

Profile Profile::gaussian(double alpha) { return Profile({Term{1.0, 0.0, Atom{AtomKind::gaussian, alpha, 1.0}}}); }

Profile Profile::gaussian_moment(double alpha) {
  return Profile({Term{1.0, 2.0, Atom{AtomKind::gaussian, alpha, 1.0}}});
}

Profile Profile::bump(double radius) { return Profile({Term{1.0, 0.0, Atom{AtomKind::bump, 0.0, radius}}}); }

double Profile::operator()(double y) const {
  y = std::abs(y);
  double acc = 0.0;
  for (const Term& t : terms_) {
    const double a = t.atom.eval(y);
    if (a == 0.0) continue;
    acc += t.coef * (t.power == 0.0 ? 1.0 : std::pow(y, t.power)) * a;
  }
  return acc;
}

double Profile::at_zero() const {
  double acc = 0.0;
  for (const Term& t : terms_) {
    if (t.power < 0.0) throw std::domain_error("profile is singular at the origin");
    if (t.power == 0.0) acc += t.coef * t.atom.eval(0.0);
  }
  return acc;
}

Profile Profile::derivative() const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.power != 0.0) out.push_back(Term{t.coef * t.power, t.power - 1.0, t.atom});
    const Atom& at = t.atom;
    switch (at.kind) {
      case AtomKind::psi: {
        if (is_integer_order(at.a)) throw std::domain_error("psi profile derivative needs non-integer order");
        if (at.a > 1.0) {
          out.push_back(Term{-t.coef * at.lambda / (2.0 * (at.a - 1.0)), t.power + 1.0,
                             Atom{AtomKind::psi, at.a - 1.0, at.lambda}});
        } else {
          out.push_back(Term{-t.coef * dtn_constant(at.a) * std::pow(at.lambda, at.a), t.power + 2.0 * at.a - 1.0,
                             Atom{AtomKind::psi, 1.0 - at.a, at.lambda}});
        }
        break;
      }
      case AtomKind::gaussian:
        out.push_back(Term{-2.0 * at.a * t.coef, t.power + 1.0, at});
        break;
      case AtomKind::bump: {
        const double r2 = at.lambda * at.lambda;
        if (at.a != 0.0) {
          out.push_back(Term{2.0 * at.a * t.coef / r2, t.power + 1.0, Atom{AtomKind::bump, at.a + 1.0, at.lambda}});
        }
        out.push_back(Term{-2.0 * t.coef / r2, t.power + 1.0, Atom{AtomKind::bump, at.a + 2.0, at.lambda}});
        break;
      }
    }
  }
  return Profile(std::move(out)).simplified();
}

Profile Profile::shifted_bessel(double b, double lambda, bool use_recurrence) const {
  if (use_recurrence && terms_.size() == 1) {
    const Term& t = terms_[0];
    if (t.power == 0.0 && t.atom.kind == AtomKind::psi && close(t.atom.lambda, lambda) &&
        std::abs(b - weight_exponent(t.atom.a)) < 1e-14) {
      // the index-lowering recurrence
      const double a = t.atom.a;
      if (a < 1.0) return Profile();
      const double c = t.coef * lambda * dtn_constant(a) / dtn_constant(a - 1.0);
      return Profile({Term{c, 0.0, Atom{AtomKind::psi, a - 1.0, lambda}}});
    }
  }
  const Profile d1 = derivative();
  const Profile d2 = d1.derivative();
  std::vector<Term> out;
  for (const Term& t : d2.terms_) out.push_back(Term{-t.coef, t.power, t.atom});
  if (b != 0.0) {
    for (const Term& t : d1.terms_) out.push_back(Term{-b * t.coef, t.power - 1.0, t.atom});
  }
  if (lambda != 0.0) {
    for (const Term& t : terms_) out.push_back(Term{lambda * t.coef, t.power, t.atom});
  }
  return Profile(std::move(out)).simplified();
}

Profile Profile::shifted_bessel_power(double b, double lambda, int m) const {
  Profile p = *this;
  for (int i = 0; i < m; ++i) p = p.shifted_bessel(b, lambda);
  return p;
}

Profile Profile::operator+(const Profile& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return Profile(std::move(all)).simplified();
}

Profile Profile::scaled(double c) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.coef *= c;
  return Profile(std::move(out)).simplified();
}

Profile Profile::simplified() const {
  struct Group {
    Term term;
    double mass;
  };
  std::vector<Group> groups;
  for (const Term& t : terms_) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return std::abs(g.term.power - t.power) <= kMatchTol && g.term.atom.same_as(t.atom);
    });
    if (it == groups.end()) {
      groups.push_back(Group{t, std::abs(t.coef)});
    } else {
      it->term.coef += t.coef;
      it->mass += std::abs(t.coef);
    }
  }
  std::vector<Term> out;
  for (const Group& g : groups) {
    if (g.term.coef == 0.0 || std::abs(g.term.coef) <= kCancelTol * g.mass) continue;
    out.push_back(g.term);
  }
  Profile p;
  p.terms_ = std::move(out);
  return p;
}

std::string Profile::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (terms_.empty()) return "0";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i) os << " + ";
    os << t.coef;
    if (t.power != 0.0) os << "*y^" << t.power;
    switch (t.atom.kind) {
      case AtomKind::psi:
        os << "*psi[" << t.atom.a << "," << t.atom.lambda << "]";
        break;
      case AtomKind::gaussian:
        os << "*exp(-" << t.atom.a << "y^2)";
        break;
      case AtomKind::bump:
        os << "*bump[" << t.atom.a << ",R=" << t.atom.lambda << "]";
        break;
    }
  }
  return os.str();
}

}  // namespace fracext
