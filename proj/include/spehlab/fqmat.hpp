#pragma once

// Dense square matrices over F_q, fixed capacity 8x8 (the envelope is
// kc <= 6). Entries are residues in [0,q). These sit in every hot loop, so
// storage is a flat array with fixed stride and no heap traffic.

#include <array>
#include <cstdint>
#include <string>

#include "spehlab/ff.hpp"

namespace spehlab {

constexpr int kMaxN = 8;

struct FqMat {
  int n = 0;
  int q = 2;
  std::array<uint8_t, kMaxN * kMaxN> a{};

  FqMat() = default;
  FqMat(int n_, int q_) : n(n_), q(q_) {
    if (n_ < 1 || n_ > kMaxN) throw CapacityError("matrix size " + std::to_string(n_));
    check_q(q_);
  }

  uint8_t& at(int i, int j) { return a[i * kMaxN + j]; }
  uint8_t at(int i, int j) const { return a[i * kMaxN + j]; }

  static FqMat identity(int n, int q) {
    FqMat m(n, q);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static FqMat zero(int n, int q) { return FqMat(n, q); }

  bool operator==(const FqMat& o) const {
    if (n != o.n || q != o.q) return false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j) != o.at(i, j)) return false;
    return true;
  }
  bool operator!=(const FqMat& o) const { return !(*this == o); }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  FqMat operator*(const FqMat& o) const {
    FqMat r(n, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int s = 0;
        for (int l = 0; l < n; ++l) s += at(i, l) * o.at(l, j);
        r.at(i, j) = uint8_t(s % q);
      }
    return r;
  }

  FqMat transpose() const {
    FqMat r(n, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  int det() const {
    FqMat m = *this;
    PrimeField F(q);
    int d = 1;
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (m.at(r, col) != 0) { piv = r; break; }
      if (piv < 0) return 0;
      if (piv != col) {
        for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
        d = F.neg(d);
      }
      d = F.mul(d, m.at(col, col));
      int ipiv = F.inv(m.at(col, col));
      for (int r = col + 1; r < n; ++r) {
        if (m.at(r, col) == 0) continue;
        int f = F.mul(m.at(r, col), ipiv);
        for (int j = col; j < n; ++j)
          m.at(r, j) = uint8_t(F.sub(m.at(r, j), F.mul(f, m.at(col, j))));
      }
    }
    return d;
  }

  bool invertible() const { return det() != 0; }

  FqMat inverse() const {
    PrimeField F(q);
    FqMat m = *this;
    FqMat inv = identity(n, q);
    for (int col = 0; col < n; ++col) {
      int piv = -1;
      for (int r = col; r < n; ++r)
        if (m.at(r, col) != 0) { piv = r; break; }
      if (piv < 0) throw DomainError("singular matrix");
      if (piv != col)
        for (int j = 0; j < n; ++j) {
          std::swap(m.at(piv, j), m.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      int ipiv = F.inv(m.at(col, col));
      for (int j = 0; j < n; ++j) {
        m.at(col, j) = uint8_t(F.mul(m.at(col, j), ipiv));
        inv.at(col, j) = uint8_t(F.mul(inv.at(col, j), ipiv));
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || m.at(r, col) == 0) continue;
        int f = m.at(r, col);
        for (int j = 0; j < n; ++j) {
          m.at(r, j) = uint8_t(F.sub(m.at(r, j), F.mul(f, m.at(col, j))));
          inv.at(r, j) = uint8_t(F.sub(inv.at(r, j), F.mul(f, inv.at(col, j))));
        }
      }
    }
    return inv;
  }

  // Packed base-8 key; entries fit in 3 bits since q <= 7. Valid for n <= 6
  // (108 bits) and up to n = 8 where only used with q = 2.
  unsigned __int128 key() const {
    unsigned __int128 k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k = (k << 3) | at(i, j);
    return (k << 7) | unsigned(n * kMaxQ + q);
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        s += std::to_string(int(at(i, j)));
        s += (j + 1 < n) ? ' ' : (i + 1 < n ? ';' : ' ');
      }
    }
    return s;
  }
};

struct FqMatKeyHash {
  size_t operator()(unsigned __int128 k) const {
    uint64_t lo = uint64_t(k), hi = uint64_t(k >> 64);
    uint64_t x = lo ^ (hi * 0x9e3779b97f4a7c15ULL);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27; x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return size_t(x);
  }
};

// Copies src into dst with top-left corner at (r0, c0).
inline void put_block(FqMat& dst, int r0, int c0, const FqMat& src) {
  for (int i = 0; i < src.n; ++i)
    for (int j = 0; j < src.n; ++j) dst.at(r0 + i, c0 + j) = src.at(i, j);
}

inline void put_identity_block(FqMat& dst, int r0, int c0, int size) {
  for (int i = 0; i < size; ++i) dst.at(r0 + i, c0 + i) = 1;
}

}  // namespace spehlab
