#pragma once

// GL_n(F_q) enumeration, parabolic coset tables with canonical
// representatives, the unipotent groups U_(c^k) and Y(c1,c2,k), the kappa
// interleaving permutation, psi_{(k,c)}, and the structural block matrices
// used by the zeta operators.

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "spehlab/fqmat.hpp"

namespace spehlab {

constexpr long kMaxEnumeratedGroup = 1000000;
constexpr long kMaxModelDim = 23000;

// |GL_n(F_q)| as double (exact for the sizes we allow to enumerate).
inline double gl_order(int n, int q) {
  double o = 1.0, qn = 1.0;
  for (int i = 0; i < n; ++i) qn *= q;
  double qi = 1.0;
  for (int i = 0; i < n; ++i) {
    o *= (qn - qi);
    qi *= q;
  }
  return o;
}

using Composition = std::vector<int>;

inline void check_composition(int n, const Composition& parts) {
  int s = 0;
  for (int p : parts) {
    if (p <= 0) throw DomainError("composition parts must be positive");
    s += p;
  }
  if (s != n) throw DomainError("composition does not sum to n");
}

// [GL_n : P_composition] via the q-multinomial \prod_{i<=n}(q^i-1) over the
// per-block factorials. Fits in unsigned 64-bit throughout the envelope.
inline unsigned long long index_of_parabolic(int n, const Composition& parts, int q) {
  check_composition(n, parts);
  auto qfact = [&](int m) {
    unsigned __int128 v = 1;
    unsigned __int128 p = 1;
    for (int i = 1; i <= m; ++i) {
      p *= q;
      v *= (p - 1);
    }
    return v;
  };
  unsigned __int128 num = qfact(n), den = 1;
  for (int p : parts) den *= qfact(p);
  return (unsigned long long)(num / den);
}

// Full enumeration of GL_n(F_q) in a fixed canonical (odometer) order.
class GroupTable {
 public:
  GroupTable(int n, int q) : n_(n), q_(q) {
    check_q(q);
    if (gl_order(n, q) > double(kMaxEnumeratedGroup))
      throw CapacityError("|GL_" + std::to_string(n) + "(F_" + std::to_string(q) +
                          ")| exceeds the enumeration envelope");
    FqMat m(n, q);
    long total = 1;
    for (int i = 0; i < n * n; ++i) total *= q;
    for (long code = 0; code < total; ++code) {
      long c = code;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          m.at(i, j) = uint8_t(c % q);
          c /= q;
        }
      if (m.det() != 0) {
        index_.emplace(m.key(), int(elems_.size()));
        elems_.push_back(m);
      }
    }
  }

  int n() const { return n_; }
  int q() const { return q_; }
  int size() const { return int(elems_.size()); }
  const FqMat& operator[](int i) const { return elems_[i]; }
  const std::vector<FqMat>& elements() const { return elems_; }

  int index_of(const FqMat& m) const {
    auto it = index_.find(m.key());
    if (it == index_.end()) throw DomainError("element not in group table");
    return it->second;
  }

 private:
  int n_, q_;
  std::vector<FqMat> elems_;
  std::unordered_map<unsigned __int128, int, FqMatKeyHash> index_;
};

// Result of writing g = p * r with r the canonical representative of the
// coset Pg. Only the Levi blocks of p are kept; the unipotent part never
// enters the induced-model action.
struct CosetDecomp {
  int index = -1;
  int nblocks = 0;
  std::array<FqMat, kMaxN> levi;
};

// Canonical representatives for P\GL_n(F_q), P the standard parabolic of a
// composition. The canonical form reduces block rows bottom-up: each block is
// first cleared against the reduced-echelon pivots of the blocks below it,
// then brought to RREF itself; the inverses of the in-block transforms are
// exactly the Levi blocks of p.
class CosetTable {
 public:
  CosetTable(int n, Composition parts, int q) : n_(n), q_(q), parts_(std::move(parts)), F_(q) {
    check_composition(n_, parts_);
    count_ = index_of_parabolic(n_, parts_, q_);
    if (count_ > (unsigned long long)kMaxEnumeratedGroup)
      throw CapacityError("parabolic index too large to tabulate");

    // BFS over right multiplication by generators of GL_n.
    std::vector<FqMat> gens;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) {
          FqMat t = FqMat::identity(n_, q_);
          t.at(i, j) = 1;
          gens.push_back(t);
        }
    if (q_ > 2) {
      FqMat d = FqMat::identity(n_, q_);
      d.at(0, 0) = uint8_t(PrimeField(q_).generator());
      gens.push_back(d);
    }
    FqMat id = FqMat::identity(n_, q_);
    push(canonicalize(id).first);
    for (size_t head = 0; head < reps_.size(); ++head) {
      FqMat cur = reps_[head];
      for (const FqMat& g : gens) {
        FqMat r = canonicalize(cur * g).first;
        if (!index_.count(r.key())) push(r);
      }
    }
    if (reps_.size() != count_)
      throw DiagnosticError("coset enumeration mismatch: got " + std::to_string(reps_.size()) +
                            ", expected " + std::to_string(count_));
  }

  int n() const { return n_; }
  int q() const { return q_; }
  const Composition& parts() const { return parts_; }
  int size() const { return int(reps_.size()); }
  const FqMat& rep(int i) const { return reps_[i]; }

  // g = p * rep(index); levi holds the diagonal blocks of p in block order.
  void decompose(const FqMat& g, CosetDecomp& out) const {
    auto [r, levi] = canonicalize(g);
    auto it = index_.find(r.key());
    if (it == index_.end()) throw DomainError("matrix not reachable in coset table");
    out.index = it->second;
    out.nblocks = int(parts_.size());
    out.levi = levi;
  }

  CosetDecomp decompose(const FqMat& g) const {
    CosetDecomp d;
    decompose(g, d);
    return d;
  }

 private:
  void push(const FqMat& r) {
    index_.emplace(r.key(), int(reps_.size()));
    reps_.push_back(r);
  }

  // Returns (canonical representative, Levi blocks of p).
  std::pair<FqMat, std::array<FqMat, kMaxN>> canonicalize(const FqMat& g) const {
    FqMat m = g;
    std::array<FqMat, kMaxN> levi;
    int nb = int(parts_.size());
    // pivot positions (row, col) of already-canonical lower rows
    int pr[kMaxN], pc[kMaxN], np = 0;
    int row_end = n_;
    for (int b = nb - 1; b >= 0; --b) {
      int bs = parts_[b];
      int r0 = row_end - bs;
      // clear entries under the lower-block pivots
      for (int p = 0; p < np; ++p)
        for (int i = r0; i < r0 + bs; ++i) {
          int f = m.at(i, pc[p]);
          if (!f) continue;
          for (int j = 0; j < n_; ++j)
            m.at(i, j) = uint8_t(F_.sub(m.at(i, j), F_.mul(f, m.at(pr[p], j))));
        }
      // in-block RREF; T accumulates the row transform
      FqMat T = FqMat::identity(bs, q_);
      int next = 0;
      for (int col = 0; col < n_ && next < bs; ++col) {
        int piv = -1;
        for (int i = r0 + next; i < r0 + bs; ++i)
          if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r0 + next) {
          for (int j = 0; j < n_; ++j) std::swap(m.at(piv, j), m.at(r0 + next, j));
          for (int j = 0; j < bs; ++j) std::swap(T.at(piv - r0, j), T.at(next, j));
        }
        int ip = F_.inv(m.at(r0 + next, col));
        if (ip != 1) {
          for (int j = 0; j < n_; ++j) m.at(r0 + next, j) = uint8_t(F_.mul(m.at(r0 + next, j), ip));
          for (int j = 0; j < bs; ++j) T.at(next, j) = uint8_t(F_.mul(T.at(next, j), ip));
        }
        for (int i = r0; i < r0 + bs; ++i) {
          if (i == r0 + next) continue;
          int f = m.at(i, col);
          if (!f) continue;
          for (int j = 0; j < n_; ++j)
            m.at(i, j) = uint8_t(F_.sub(m.at(i, j), F_.mul(f, m.at(r0 + next, j))));
          for (int j = 0; j < bs; ++j)
            T.at(i - r0, j) = uint8_t(F_.sub(T.at(i - r0, j), F_.mul(f, T.at(next, j))));
        }
        pr[np] = r0 + next;
        pc[np] = col;
        ++np;
        ++next;
      }
      if (next != bs) throw DomainError("singular matrix in coset decomposition");
      levi[b] = T.inverse();
      row_end = r0;
    }
    return {m, levi};
  }

  int n_, q_;
  Composition parts_;
  PrimeField F_;
  unsigned long long count_ = 0;
  std::vector<FqMat> reps_;
  std::unordered_map<unsigned __int128, int, FqMatKeyHash> index_;
};

// ---- unipotent radicals and related data ----

// True iff u lies in U_(c^k): k diagonal identity blocks of size c, zero
// below the block diagonal.
inline bool in_unipotent_radical_ck(const FqMat& u, int k, int c) {
  if (u.n != k * c) return false;
  for (int bi = 0; bi < k; ++bi)
    for (int bj = 0; bj <= bi; ++bj)
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) {
          int want = (bi == bj && i == j) ? 1 : (bi == bj ? 0 : -1);
          int v = u.at(bi * c + i, bj * c + j);
          if (want < 0) {
            if (v != 0) return false;
          } else if (v != want) {
            return false;
          }
        }
  return true;
}

struct KcCharacterData {
  int k, c;
  AdditiveCharacter psi;
  KcCharacterData(int k_, int c_, AdditiveCharacter psi_) : k(k_), c(c_), psi(std::move(psi_)) {}
};

// psi_{(k,c)}(u) = psi(sum of traces of the first-superdiagonal c x c blocks).
inline cd psi_kc_eval(const KcCharacterData& data, const FqMat& u) {
  if (!in_unipotent_radical_ck(u, data.k, data.c))
    throw DomainError("element not in U_(c^k)");
  int s = 0;
  for (int b = 0; b + 1 < data.k; ++b)
    for (int i = 0; i < data.c; ++i) s += u.at(b * data.c + i, (b + 1) * data.c + i);
  return data.psi(s);
}

// Enumerates U_(c^k)(F_q): all strictly-upper block entries free.
inline std::vector<FqMat> enumerate_unipotent_ck(int k, int c, int q) {
  int cells = k * (k - 1) / 2 * c * c;
  double total = 1;
  for (int i = 0; i < cells; ++i) total *= q;
  if (total > 300000) throw CapacityError("U_(c^k) too large to enumerate");
  std::vector<std::pair<int, int>> pos;  // absolute (row, col) of free entries
  for (int bi = 0; bi < k; ++bi)
    for (int bj = bi + 1; bj < k; ++bj)
      for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) pos.emplace_back(bi * c + i, bj * c + j);
  std::vector<FqMat> out;
  out.reserve(long(total));
  long tot = long(total);
  for (long code = 0; code < tot; ++code) {
    FqMat u = FqMat::identity(k * c, q);
    long x = code;
    for (auto [r, cc] : pos) {
      u.at(r, cc) = uint8_t(x % q);
      x /= q;
    }
    out.push_back(u);
  }
  return out;
}

// kappa(c1, c2, k): the column-permutation matrix interleaving k blocks of
// c1 rows with k blocks of c2 rows, built from its displayed block pattern.
// Column 1 + a + b*c carries e_{1+a+b*c1} for a < c1 and
// e_{1+(a-c1)+k*c1+b*c2} otherwise (0-based below).
inline FqMat kappa_matrix(int c1, int c2, int k, int q) {
  if (c1 < 1 || c2 < 1 || k < 1) throw DomainError("kappa parameters must be positive");
  int c = c1 + c2, n = k * c;
  if (n > kMaxN) throw CapacityError("kappa size exceeds envelope");
  FqMat kap(n, q);
  for (int b = 0; b < k; ++b)
    for (int a = 0; a < c; ++a) {
      int col = a + b * c;
      int row = (a < c1) ? a + b * c1 : (a - c1) + k * c1 + b * c2;
      kap.at(row, col) = 1;
    }
  return kap;
}

// Y(c1,c2,k): lower block-unipotent [[I_{kc1},0],[Y,I_{kc2}]] with Y's
// strictly-upper block pattern y_{ij} in M_{c2 x c1}, 1 <= i < j <= k.
inline std::vector<FqMat> enumerate_y_group(int c1, int c2, int k, int q) {
  int n = k * (c1 + c2);
  if (n > kMaxN) throw CapacityError("Y group size exceeds envelope");
  std::vector<std::pair<int, int>> pos;
  for (int bi = 0; bi < k; ++bi)
    for (int bj = bi + 1; bj < k; ++bj)
      for (int i = 0; i < c2; ++i)
        for (int j = 0; j < c1; ++j)
          pos.emplace_back(k * c1 + bi * c2 + i, bj * c1 + j);
  double total = 1;
  for (size_t i = 0; i < pos.size(); ++i) total *= q;
  if (total > 300000) throw CapacityError("Y group too large to enumerate");
  long tot = long(total);
  std::vector<FqMat> out;
  out.reserve(tot);
  for (long code = 0; code < tot; ++code) {
    FqMat y = FqMat::identity(n, q);
    long x = code;
    for (auto [r, cc] : pos) {
      y.at(r, cc) = uint8_t(x % q);
      x /= q;
    }
    out.push_back(y);
  }
  return out;
}

// ---- structural matrices ----

// diag^k(h) = diag(h, ..., h), k copies of h in GL_c.
inline FqMat diag_k(const FqMat& h, int k) {
  FqMat m(h.n * k, h.q);
  for (int b = 0; b < k; ++b) put_block(m, b * h.n, b * h.n, h);
  return m;
}

// diag(h, I_{(k-1)c}) -- the zeta-operator argument.
inline FqMat zeta_argument(const FqMat& h, int k) {
  int c = h.n;
  FqMat m(k * c, h.q);
  put_block(m, 0, 0, h);
  put_identity_block(m, c, c, (k - 1) * c);
  return m;
}

// [[0, I_{(k-1)c}], [h, 0]] -- the matrix inside B-tilde.
inline FqMat b_tilde_argument(const FqMat& h, int k) {
  if (!h.invertible()) throw DomainError("b_tilde argument must be invertible");
  int c = h.n;
  FqMat m(k * c, h.q);
  put_identity_block(m, 0, c, (k - 1) * c);
  put_block(m, (k - 1) * c, 0, h);
  return m;
}

// [[0, I_c, 0], [0, 0, I_{(k-2)c}], [h, 0, X]] with X of shape c x (k-2)c
// (passed as the columns X in an FqMat buffer via a flat row-major span).
inline FqMat dual_zeta_argument(const FqMat& h, const std::vector<uint8_t>& xrow, int k) {
  if (k < 2) throw DomainError("dual zeta argument needs k >= 2");
  if (!h.invertible()) throw DomainError("dual zeta argument needs invertible h");
  int c = h.n;
  int xc = (k - 2) * c;
  if (int(xrow.size()) != c * xc) throw DomainError("X block has wrong shape");
  FqMat m(k * c, h.q);
  put_identity_block(m, 0, c, c);
  put_identity_block(m, c, 2 * c, xc);
  put_block(m, (k - 1) * c, 0, h);
  for (int i = 0; i < c; ++i)
    for (int j = 0; j < xc; ++j) m.at((k - 1) * c + i, 2 * c + j) = xrow[i * xc + j];
  return m;
}

// [[0, I_{(k-1)c}], [I_c, 0]] -- the long-element block matrix w_{(k-1)c|c}.
inline FqMat anti_diagonal_w(int k, int c, int q) {
  return b_tilde_argument(FqMat::identity(c, q), k);
}

// Enumerates the c x (k-2)c matrices X for the dual zeta sum as flat rows.
inline std::vector<std::vector<uint8_t>> enumerate_dual_zeta_X(int k, int c, int q) {
  int cells = c * (k - 2) * c;
  double total = 1;
  for (int i = 0; i < cells; ++i) total *= q;
  if (total > 300000) throw CapacityError("dual zeta X block too large");
  long tot = long(total);
  std::vector<std::vector<uint8_t>> out;
  out.reserve(tot);
  for (long code = 0; code < tot; ++code) {
    std::vector<uint8_t> x(cells, 0);
    long v = code;
    for (int i = 0; i < cells; ++i) {
      x[i] = uint8_t(v % q);
      v /= q;
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Random invertible matrix (rejection sampling).
inline FqMat random_invertible(int n, int q, Rng& rng) {
  for (;;) {
    FqMat m(n, q);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = uint8_t(rng.below(q));
    if (m.det() != 0) return m;
  }
}

// JSON for a matrix: {"n": n, "q": q, "rows": [[...], ...]}.
inline std::string matrix_json(const FqMat& m) {
  std::string s = "{\"n\": " + std::to_string(m.n) + ", \"q\": " + std::to_string(m.q) +
                  ", \"rows\": [";
  for (int i = 0; i < m.n; ++i) {
    s += '[';
    for (int j = 0; j < m.n; ++j) {
      s += std::to_string(int(m.at(i, j)));
      if (j + 1 < m.n) s += ", ";
    }
    s += ']';
    if (i + 1 < m.n) s += ", ";
  }
  s += "]}";
  return s;
}

}  // namespace spehlab
