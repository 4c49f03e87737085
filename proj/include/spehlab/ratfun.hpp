#pragma once

// Exact one-variable rational functions with complex coefficients. All
// s-dependence of the level-zero local factors lives in the single
// indeterminate X = omega_Pi(pi) omega_rho(pi) q^{-cs}. Rational functions
// are kept reduced (common factors cancelled within tolerance) with monic
// denominators; equality is decided by cross-multiplication.

#include <vector>

#include "spehlab/common.hpp"

namespace spehlab {

constexpr double kCoeffTol = 1e-10;

struct Poly {
  std::vector<cd> c;  // c[i] is the coefficient of X^i

  Poly() : c{} {}
  Poly(std::initializer_list<cd> v) : c(v) { trim(); }
  static Poly constant(cd v) {
    Poly p;
    p.c = {v};
    p.trim();
    return p;
  }
  static Poly X() {
    Poly p;
    p.c = {cd(0.0), cd(1.0)};
    return p;
  }

  int degree() const { return int(c.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c.empty(); }

  double max_abs() const {
    double m = 0;
    for (auto& x : c) m = std::max(m, std::abs(x));
    return m;
  }

  void trim(double tol = kCoeffTol) {
    double scale = std::max(1.0, max_abs());
    while (!c.empty() && std::abs(c.back()) <= tol * scale) c.pop_back();
    for (auto& x : c)
      if (std::abs(x) <= tol * scale * 1e-2) x = 0.0;
  }

  cd eval(cd x) const {
    cd v = 0;
    for (int i = degree(); i >= 0; --i) v = v * x + c[i];
    return v;
  }

  Poly operator+(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.trim();
    return r;
  }
  Poly operator-(const Poly& o) const {
    Poly r;
    r.c.resize(std::max(c.size(), o.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.trim();
    return r;
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
  }
  Poly operator*(cd s) const {
    Poly r = *this;
    for (auto& x : r.c) x *= s;
    r.trim();
    return r;
  }

  // quotient and remainder
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    Poly rem = *this, quo;
    quo.c.assign(std::max<int>(0, degree() - d.degree() + 1), 0.0);
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      cd f = rem.c.back() / d.c.back();
      int shift = rem.degree() - d.degree();
      quo.c[shift] += f;
      for (int i = 0; i <= d.degree(); ++i) rem.c[i + shift] -= f * d.c[i];
      rem.c.pop_back();
      rem.trim();
    }
    quo.trim();
    return {quo, rem};
  }
};

inline Poly poly_gcd(Poly a, Poly b) {
  a.trim();
  b.trim();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  while (!b.is_zero()) {
    Poly r = a.divmod(b).second;
    double scale = std::max(1.0, b.max_abs());
    if (r.max_abs() <= kCoeffTol * scale) r = Poly();
    a = b;
    b = r;
  }
  // monic
  return a * (1.0 / a.c.back());
}

class RatFun {
 public:
  RatFun() : num_(Poly::constant(0.0)), den_(Poly::constant(1.0)) {}
  explicit RatFun(cd v) : num_(Poly::constant(v)), den_(Poly::constant(1.0)) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

  static RatFun X() { return RatFun(Poly::X(), Poly::constant(1.0)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  cd eval(cd x) const { return num_.eval(x) / den_.eval(x); }

  RatFun operator+(const RatFun& o) const { return RatFun(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  RatFun operator-(const RatFun& o) const { return RatFun(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  RatFun operator*(const RatFun& o) const { return RatFun(num_ * o.num_, den_ * o.den_); }
  RatFun operator/(const RatFun& o) const {
    if (o.is_zero()) throw DomainError("division by the zero rational function");
    return RatFun(num_ * o.den_, den_ * o.num_);
  }
  RatFun operator*(cd s) const { return RatFun(num_ * s, den_); }

  // cross-multiplied coefficient distance, normalized
  double eq_residual(const RatFun& o) const {
    Poly a = num_ * o.den_;
    Poly b = o.num_ * den_;
    Poly d = a - b;
    double scale = std::max({1.0, a.max_abs(), b.max_abs()});
    return d.max_abs() / scale;
  }
  bool operator==(const RatFun& o) const { return eq_residual(o) <= kCoeffTol; }

 private:
  void reduce() {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    num_.trim();
    den_.trim();
    if (num_.is_zero()) {
      den_ = Poly::constant(1.0);
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
      auto [qn, rn] = num_.divmod(g);
      auto [qd, rd] = den_.divmod(g);
      if (rn.max_abs() <= kCoeffTol * std::max(1.0, num_.max_abs()) &&
          rd.max_abs() <= kCoeffTol * std::max(1.0, den_.max_abs())) {
        num_ = qn;
        den_ = qd;
      }
    }
    cd lead = den_.c.back();
    num_ = num_ * (1.0 / lead);
    den_ = den_ * (1.0 / lead);
  }

  Poly num_, den_;
};

}  // namespace spehlab
