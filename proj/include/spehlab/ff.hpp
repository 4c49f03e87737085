#pragma once

// Prime-field arithmetic over F_q and the additive / multiplicative
// characters that seed everything else. q is restricted to primes <= 7;
// prime powers are out of scope.

#include <array>
#include <vector>

#include "spehlab/common.hpp"

namespace spehlab {

constexpr int kMaxQ = 7;

inline bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

inline void check_q(int q) {
  if (!is_prime(q)) throw DomainError("q must be prime, got " + std::to_string(q));
  if (q > kMaxQ) throw CapacityError("q = " + std::to_string(q) + " exceeds the q <= 7 envelope");
}

// Arithmetic context for F_q. Elements are plain ints in [0, q).
class PrimeField {
 public:
  explicit PrimeField(int q) : q_(q) {
    check_q(q);
    inv_.assign(q, 0);
    for (int x = 1; x < q; ++x)
      for (int y = 1; y < q; ++y)
        if (x * y % q == 1) inv_[x] = y;
    generator_ = 1;
    for (int g = 2; g < q; ++g) {
      int ord = 1, p = g;
      while (p != 1) { p = p * g % q; ++ord; }
      if (ord == q - 1) { generator_ = g; break; }
    }
    dlog_.assign(q, -1);
    int p = 1;
    for (int e = 0; e < q - 1; ++e) {
      dlog_[p] = e;
      p = p * generator_ % q;
    }
  }

  int q() const { return q_; }
  int add(int a, int b) const { return (a + b) % q_; }
  int sub(int a, int b) const { return (a - b % q_ + q_) % q_; }
  int mul(int a, int b) const { return a * b % q_; }
  int neg(int a) const { return (q_ - a % q_) % q_; }
  int inv(int a) const {
    if (a % q_ == 0) throw DomainError("inverse of 0 in F_" + std::to_string(q_));
    return inv_[a % q_];
  }
  // smallest primitive root mod q (1 for q = 2)
  int generator() const { return generator_; }
  // discrete log base generator(), defined on nonzero residues
  int dlog(int a) const {
    if (a % q_ == 0) throw DomainError("dlog of 0");
    return dlog_[a % q_];
  }

 private:
  int q_;
  std::vector<int> inv_;
  std::vector<int> dlog_;
  int generator_;
};

// psi: (F_q, +) -> C^x, psi(x) = e^{2 pi i * scale * x / q}. Nontrivial for
// scale != 0 mod q; the default scale 1 is used throughout.
class AdditiveCharacter {
 public:
  AdditiveCharacter(int q, int scale = 1) : q_(q), scale_(((scale % q) + q) % q) {
    check_q(q);
    if (scale_ == 0) throw DomainError("additive character must be nontrivial");
    table_.resize(q);
    for (int x = 0; x < q; ++x) table_[x] = unit_root(double(scale_) * x / q);
  }

  int q() const { return q_; }
  cd operator()(int x) const { return table_[((x % q_) + q_) % q_]; }

  AdditiveCharacter inverse() const { return AdditiveCharacter(q_, q_ - scale_); }

 private:
  int q_, scale_;
  std::vector<cd> table_;
};

// chi: F_q^x -> C^x with chi(generator) = e^{2 pi i * exponent / (q-1)}.
class MultiplicativeCharacter {
 public:
  MultiplicativeCharacter(int q, int exponent)
      : field_(q), exponent_(((exponent % (q - 1)) + (q - 1)) % (q - 1)) {}

  int q() const { return field_.q(); }
  int exponent() const { return exponent_; }
  bool trivial() const { return exponent_ == 0; }

  cd operator()(int x) const {
    if (x % field_.q() == 0) throw DomainError("multiplicative character at 0");
    return unit_root(double(exponent_) * field_.dlog(x) / (field_.q() - 1));
  }

  MultiplicativeCharacter inverse() const {
    return MultiplicativeCharacter(q(), (q() - 1 - exponent_) % (q() - 1));
  }

 private:
  PrimeField field_;
  int exponent_;
};

}  // namespace spehlab
