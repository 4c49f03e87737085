#pragma once

// Explicit complex-matrix models of representations of GL_n(F_q).
// All irreducible cuspidal representations are obtained as constituents of
// the Gelfand-Graev representation Ind_{U_n}^{G} psi, decomposed by
// averaging a random Hermitian probe over the group (the decomposition is
// multiplicity free, so eigenspaces of the averaged probe are exactly the
// irreducible constituents).

#include <Eigen/Dense>
#include <algorithm>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "spehlab/glgroup.hpp"

namespace spehlab {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// <x,y> linear in x, conjugate-linear in y.
inline cd inner(const VectorXcd& x, const VectorXcd& y) { return y.dot(x); }

// Canonical representatives for U_n \ GL_n, U_n the full upper unitriangular
// group. Row i may absorb arbitrary combinations of the rows below it and
// nothing else, so the canonical form clears each row against the reduced
// echelon pivots of the rows beneath.
class UCosetTable {
 public:
  UCosetTable(int n, int q, const AdditiveCharacter& psi) : n_(n), q_(q), F_(q), psi_(psi) {
    double u_order = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) u_order *= q;
    double dim = gl_order(n, q) / u_order;
    if (dim > 20000) throw CapacityError("Gelfand-Graev dimension exceeds 20000");
    GroupTable G(n, q);
    for (int i = 0; i < G.size(); ++i) {
      FqMat r = canonical(G[i]);
      if (!index_.count(r.key())) {
        index_.emplace(r.key(), int(reps_.size()));
        reps_.push_back(r);
      }
    }
    if (double(reps_.size()) != dim) throw DiagnosticError("U-coset count mismatch");
  }

  int n() const { return n_; }
  int q() const { return q_; }
  int size() const { return int(reps_.size()); }
  const FqMat& rep(int i) const { return reps_[i]; }

  int identity_index() const { return index_.at(FqMat::identity(n_, q_).key()); }

  // m = u * rep(idx); returns (idx, psi(u)).
  std::pair<int, cd> decompose(const FqMat& m) const {
    FqMat r = canonical(m);
    int idx = index_.at(r.key());
    FqMat u = m * r.inverse();
    int s = 0;
    for (int i = 0; i + 1 < n_; ++i) s += u.at(i, i + 1);
    return {idx, psi_(s)};
  }

 private:
  FqMat canonical(const FqMat& g) const {
    FqMat m = g;
    for (int i = n_ - 2; i >= 0; --i) {
      // reduced echelon basis of rows i+1..n-1
      int rows = n_ - 1 - i;
      int pivcol[kMaxN], pivrow[kMaxN], np = 0;
      // gather lower rows into a scratch matrix (rows 0..rows-1)
      FqMat sc(n_, q_);
      for (int r = 0; r < rows; ++r)
        for (int j = 0; j < n_; ++j) sc.at(r, j) = m.at(i + 1 + r, j);
      int next = 0;
      for (int col = 0; col < n_ && next < rows; ++col) {
        int piv = -1;
        for (int r = next; r < rows; ++r)
          if (sc.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != next)
          for (int j = 0; j < n_; ++j) std::swap(sc.at(piv, j), sc.at(next, j));
        int ip = F_.inv(sc.at(next, col));
        for (int j = 0; j < n_; ++j) sc.at(next, j) = uint8_t(F_.mul(sc.at(next, j), ip));
        for (int r = 0; r < rows; ++r) {
          if (r == next || sc.at(r, col) == 0) continue;
          int f = sc.at(r, col);
          for (int j = 0; j < n_; ++j)
            sc.at(r, j) = uint8_t(F_.sub(sc.at(r, j), F_.mul(f, sc.at(next, j))));
        }
        pivcol[np] = col;
        pivrow[np] = next;
        ++np;
        ++next;
      }
      for (int p = 0; p < np; ++p) {
        int f = m.at(i, pivcol[p]);
        if (!f) continue;
        for (int j = 0; j < n_; ++j)
          m.at(i, j) = uint8_t(F_.sub(m.at(i, j), F_.mul(f, sc.at(pivrow[p], j))));
      }
    }
    return m;
  }

  int n_, q_;
  PrimeField F_;
  AdditiveCharacter psi_;
  std::vector<FqMat> reps_;
  std::unordered_map<unsigned __int128, int, FqMatKeyHash> index_;
};

// The Gelfand-Graev module: functions f on G with f(ug) = psi(u) f(g),
// right regular action, counting inner product on U\G. Every group element
// acts by a monomial matrix, computed on demand.
class GelfandGraev {
 public:
  GelfandGraev(int n, int q, AdditiveCharacter psi)
      : n_(n), q_(q), psi_(std::move(psi)),
        group_(std::make_shared<GroupTable>(n, q)),
        ucosets_(n, q, psi_) {}

  int n() const { return n_; }
  int q() const { return q_; }
  int dim() const { return ucosets_.size(); }
  const std::shared_ptr<GroupTable>& group() const { return group_; }
  const AdditiveCharacter& psi() const { return psi_; }
  const UCosetTable& ucosets() const { return ucosets_; }

  // (rho(g) v)_i = phase[i] * v[target[i]]
  void monomial(const FqMat& g, std::vector<int>& target, std::vector<cd>& phase) const {
    int d = dim();
    target.resize(d);
    phase.resize(d);
    for (int i = 0; i < d; ++i) {
      auto [j, ph] = ucosets_.decompose(ucosets_.rep(i) * g);
      target[i] = j;
      phase[i] = ph;
    }
  }

  VectorXcd apply(const FqMat& g, const VectorXcd& v) const {
    std::vector<int> t;
    std::vector<cd> ph;
    monomial(g, t, ph);
    VectorXcd out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = ph[i] * v[t[i]];
    return out;
  }

 private:
  int n_, q_;
  AdditiveCharacter psi_;
  std::shared_ptr<GroupTable> group_;
  UCosetTable ucosets_;
};

// Explicit unitary model with the complete element-indexed matrix table.
struct Rep {
  int n = 0, q = 2, dim = 0;
  std::shared_ptr<GroupTable> group;
  std::vector<MatrixXcd> mats;  // indexed like group->elements()
  bool known_irreducible = false;

  const MatrixXcd& operator()(const FqMat& g) const { return mats[group->index_of(g)]; }

  cd trace(const FqMat& g) const { return (*this)(g).trace(); }

  Rep contragredient() const {
    Rep r = *this;
    for (auto& m : r.mats) m = m.conjugate();
    return r;
  }
};

// The trivial character and, more generally, one-dimensional chi o det.
inline Rep det_character_rep(int n, int q, const MultiplicativeCharacter& chi,
                             std::shared_ptr<GroupTable> group = nullptr) {
  Rep r;
  r.n = n;
  r.q = q;
  r.dim = 1;
  r.group = group ? group : std::make_shared<GroupTable>(n, q);
  r.mats.reserve(r.group->size());
  for (int i = 0; i < r.group->size(); ++i) {
    MatrixXcd m(1, 1);
    m(0, 0) = chi((*r.group)[i].det());
    r.mats.push_back(m);
  }
  r.known_irreducible = true;
  return r;
}

inline bool is_isomorphic(const Rep& a, const Rep& b, double tol = 1e-6) {
  if (a.n != b.n || a.q != b.q || a.dim != b.dim) return false;
  for (int i = 0; i < a.group->size(); ++i)
    if (std::abs(a.mats[i].trace() - b.mats[i].trace()) > tol) return false;
  return true;
}

inline MatrixXcd tensor(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// Sum over the unipotent radical of each maximal standard parabolic; all of
// them vanish iff the representation is cuspidal.
inline bool cuspidality_test(const Rep& R, double tol = kDefaultTol) {
  for (int a = 1; a < R.n; ++a) {
    int b = R.n - a;
    long cnt = 1;
    for (int i = 0; i < a * b; ++i) cnt *= R.q;
    MatrixXcd S = MatrixXcd::Zero(R.dim, R.dim);
    for (long code = 0; code < cnt; ++code) {
      FqMat u = FqMat::identity(R.n, R.q);
      long x = code;
      for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) {
          u.at(i, a + j) = uint8_t(x % R.q);
          x /= R.q;
        }
      S += R(u);
    }
    if (S.cwiseAbs().maxCoeff() > tol * double(cnt)) return false;
  }
  return true;
}

inline MultiplicativeCharacter central_character(const Rep& R, double tol = kDefaultTol) {
  PrimeField F(R.q);
  std::vector<cd> vals(R.q, 1.0);
  for (int z = 1; z < R.q; ++z) {
    FqMat zi = FqMat::identity(R.n, R.q);
    for (int i = 0; i < R.n; ++i) zi.at(i, i) = uint8_t(z);
    const MatrixXcd& M = R(zi);
    cd w = M(0, 0);
    if ((M - w * MatrixXcd::Identity(R.dim, R.dim)).cwiseAbs().maxCoeff() > tol)
      throw DomainError("central element does not act by a scalar; representation not irreducible");
    vals[z] = w / std::abs(w);
  }
  int g = F.generator();
  cd wg = vals[g];
  for (int e = 0; e < R.q - 1; ++e) {
    if (std::abs(wg - unit_root(double(e) / (R.q - 1))) < 1e-6) {
      MultiplicativeCharacter chi(R.q, e);
      for (int z = 1; z < R.q; ++z)
        if (std::abs(chi(z) - vals[z]) > 1e-6)
          throw DiagnosticError("central character is not multiplicative");
      return chi;
    }
  }
  throw DiagnosticError("central character value is not a (q-1)-th root of unity");
}

// A cuspidal constituent carried with its Gelfand-Graev embedding: the
// Whittaker functional ell (bilinear coefficient vector, evaluation at the
// identity in the GG model) and the psi-eigenvector.
struct CuspidalRep {
  Rep rep;
  VectorXcd ell;         // ell(v) = ell.transpose() * v
  VectorXcd whit_vec;    // x with rep(u) x = psi(u) x for u in U_n
  MultiplicativeCharacter omega;  // central character
  int id = 0;

  cd whittaker(const FqMat& g, const VectorXcd& v) const {
    return ell.transpose() * (rep(g) * v);
  }
  cd bessel(const FqMat& g) const {
    return inner(rep(g) * whit_vec, whit_vec) / inner(whit_vec, whit_vec);
  }
  cd omega_minus1() const { return rep.q == 2 ? cd(1.0) : omega(rep.q - 1); }
};

struct GGConstituent {
  MatrixXcd basis;  // GG-dim x d, orthonormal columns
  int dim = 0;
  bool cuspidal = false;
};

struct GGDecomposition {
  std::shared_ptr<GelfandGraev> gg;
  std::vector<GGConstituent> constituents;  // sorted by (dim, trace sequence)
  std::vector<Rep> reps;                    // parallel to constituents (may be empty for big groups)
};

namespace detail {

inline MatrixXcd averaged_probe(const GelfandGraev& gg, Rng& rng) {
  int d = gg.dim();
  MatrixXcd A(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A(i, j) = rng.cgauss();
  MatrixXcd H = 0.5 * (A + A.adjoint());
  MatrixXcd acc = MatrixXcd::Zero(d, d);
  std::vector<int> t;
  std::vector<cd> ph;
  const GroupTable& G = *gg.group();
  for (int gi = 0; gi < G.size(); ++gi) {
    gg.monomial(G[gi], t, ph);
    // acc += M H M^dagger, with M the monomial matrix (M v)_i = ph_i v_{t_i}
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) acc(i, j) += ph[i] * H(t[i], t[j]) * std::conj(ph[j]);
  }
  return acc / double(G.size());
}

inline double character_norm(const GelfandGraev& gg, const MatrixXcd& Q) {
  const GroupTable& G = *gg.group();
  int d = gg.dim(), r = int(Q.cols());
  std::vector<int> t;
  std::vector<cd> ph;
  double s = 0;
  for (int gi = 0; gi < G.size(); ++gi) {
    gg.monomial(G[gi], t, ph);
    cd tr = 0;
    for (int i = 0; i < d; ++i) {
      // (M Q)(i, :) = ph_i Q(t_i, :)
      for (int l = 0; l < r; ++l) tr += std::conj(Q(i, l)) * ph[i] * Q(t[i], l);
    }
    s += std::norm(tr);
  }
  return s / double(G.size());
}

}  // namespace detail

// Multiplicity-free decomposition of the Gelfand-Graev module. Eigenvalue
// collisions of the averaged probe are retried with a fresh probe; three
// failures raise a diagnostic.
inline GGDecomposition decompose_multiplicity_free(std::shared_ptr<GelfandGraev> gg,
                                                   uint64_t seed = 0,
                                                   double tol = kDefaultTol) {
  int d = gg->dim();
  for (int attempt = 0; attempt < 3; ++attempt) {
    Rng rng(seed * 1000003 + attempt + 1);
    MatrixXcd Hbar = detail::averaged_probe(*gg, rng);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(Hbar);
    Eigen::VectorXd ev = es.eigenvalues();
    double spread = std::max(1.0, ev(d - 1) - ev(0));
    double gap = 1e-6 * spread;
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || ev(i) - ev(i - 1) > gap) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    GGDecomposition out;
    out.gg = gg;
    bool ok = true;
    for (auto [b, e] : clusters) {
      GGConstituent c;
      c.dim = e - b;
      c.basis = es.eigenvectors().middleCols(b, e - b);
      double cn = detail::character_norm(*gg, c.basis);
      if (std::abs(cn - 1.0) > 1e-5) { ok = false; break; }
      out.constituents.push_back(std::move(c));
    }
    if (!ok) continue;

    // deterministic order: by dimension, then by the lexicographically
    // smallest rounded trace sequence
    const GroupTable& G = *gg->group();
    std::vector<std::vector<double>> tracekeys(out.constituents.size());
    std::vector<int> t;
    std::vector<cd> ph;
    for (size_t ci = 0; ci < out.constituents.size(); ++ci) {
      const MatrixXcd& Q = out.constituents[ci].basis;
      std::vector<double>& key = tracekeys[ci];
      for (int gi = 0; gi < G.size(); ++gi) {
        gg->monomial(G[gi], t, ph);
        cd tr = 0;
        for (int i = 0; i < d; ++i)
          for (int l = 0; l < Q.cols(); ++l) tr += std::conj(Q(i, l)) * ph[i] * Q(t[i], l);
        key.push_back(std::round(tr.real() * 1e6) / 1e6);
        key.push_back(std::round(tr.imag() * 1e6) / 1e6);
      }
    }
    std::vector<int> order(out.constituents.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (out.constituents[x].dim != out.constituents[y].dim)
        return out.constituents[x].dim < out.constituents[y].dim;
      return tracekeys[x] < tracekeys[y];
    });
    std::vector<GGConstituent> sorted;
    for (int i : order) sorted.push_back(std::move(out.constituents[i]));
    out.constituents = std::move(sorted);

    // explicit Rep tables when affordable
    double sum_d2 = 0;
    for (const auto& c : out.constituents) sum_d2 += double(c.dim) * c.dim;
    if (double(G.size()) * sum_d2 <= 2e6) {
      for (auto& c : out.constituents) {
        Rep r;
        r.n = gg->n();
        r.q = gg->q();
        r.dim = c.dim;
        r.group = gg->group();
        r.mats.reserve(G.size());
        for (int gi = 0; gi < G.size(); ++gi) {
          gg->monomial(G[gi], t, ph);
          MatrixXcd MQ(d, c.dim);
          for (int i = 0; i < d; ++i) MQ.row(i) = ph[i] * c.basis.row(t[i]);
          r.mats.push_back(c.basis.adjoint() * MQ);
        }
        r.known_irreducible = true;
        c.cuspidal = cuspidality_test(r, tol);
        out.reps.push_back(std::move(r));
      }
    }
    return out;
  }
  throw DiagnosticError("Gelfand-Graev decomposition: probe eigenvalues failed to separate");
}

// All cuspidal representations of GL_n(F_q), each bundled with Whittaker
// data derived from its Gelfand-Graev embedding.
inline std::vector<CuspidalRep> cuspidal_representations(int n, int q, const AdditiveCharacter& psi,
                                                         uint64_t seed = 0) {
  auto gg = std::make_shared<GelfandGraev>(n, q, psi);
  GGDecomposition dec = decompose_multiplicity_free(gg, seed);
  if (dec.reps.empty()) throw CapacityError("group too large for explicit cuspidal models");

  // psi-projector in GG coordinates
  int d = gg->dim();
  std::vector<FqMat> U;
  {
    // U_n = U_(1^n)
    U = enumerate_unipotent_ck(n, 1, q);
  }
  std::vector<CuspidalRep> out;
  int id = 0;
  for (size_t ci = 0; ci < dec.constituents.size(); ++ci) {
    if (!dec.constituents[ci].cuspidal) continue;
    const MatrixXcd& Q = dec.constituents[ci].basis;
    CuspidalRep cr{dec.reps[ci], VectorXcd(), VectorXcd(), central_character(dec.reps[ci]), id++};
    int e_idx = gg->ucosets().identity_index();
    cr.ell = Q.row(e_idx).transpose();  // ell(v) = (Q v)[e]
    // psi-eigenvector: project a seeded random subspace vector
    bool found = false;
    for (int attempt = 0; attempt < 3 && !found; ++attempt) {
      Rng rng(seed * 7919 + ci * 101 + attempt + 13);
      VectorXcd x0(dec.reps[ci].dim);
      for (int i = 0; i < x0.size(); ++i) x0[i] = rng.cgauss();
      VectorXcd v0 = Q * x0;
      VectorXcd vp = VectorXcd::Zero(d);
      for (const FqMat& u : U) {
        int s = 0;
        for (int i = 0; i + 1 < n; ++i) s += u.at(i, i + 1);
        vp += std::conj(psi(s)) * gg->apply(u, v0);
      }
      vp /= double(U.size());
      VectorXcd x = Q.adjoint() * vp;
      if (x.norm() > 1e-8) {
        cr.whit_vec = x / x.norm();
        found = true;
      }
    }
    if (!found)
      throw DiagnosticError("psi-eigenvector projection returned zero on a generic constituent");
    out.push_back(std::move(cr));
  }
  return out;
}

struct ConstituentInfo {
  int dim = 0;
  bool cuspidal = false;
  int central_exponent = 0;
  bool self_dual = false;
};

// Listing of GG constituents without explicit matrix tables; works for
// groups where the eager Rep path is too costly.
inline std::vector<ConstituentInfo> constituent_listing(const GGDecomposition& dec,
                                                        double tol = kDefaultTol) {
  const GelfandGraev& gg = *dec.gg;
  const GroupTable& G = *gg.group();
  int n = gg.n(), q = gg.q(), d = gg.dim();
  std::vector<int> t;
  std::vector<cd> ph;
  std::vector<ConstituentInfo> out;
  // traces (per constituent, per group element) for self-duality
  std::vector<std::vector<cd>> traces(dec.constituents.size(),
                                      std::vector<cd>(G.size()));
  for (size_t ci = 0; ci < dec.constituents.size(); ++ci) {
    const MatrixXcd& Q = dec.constituents[ci].basis;
    for (int gi = 0; gi < G.size(); ++gi) {
      gg.monomial(G[gi], t, ph);
      cd tr = 0;
      for (int i = 0; i < d; ++i)
        for (int l = 0; l < Q.cols(); ++l) tr += std::conj(Q(i, l)) * ph[i] * Q(t[i], l);
      traces[ci][gi] = tr;
    }
  }
  PrimeField F(q);
  for (size_t ci = 0; ci < dec.constituents.size(); ++ci) {
    const MatrixXcd& Q = dec.constituents[ci].basis;
    ConstituentInfo info;
    info.dim = dec.constituents[ci].dim;
    // cuspidality: unipotent averages vanish for every maximal parabolic
    info.cuspidal = true;
    for (int a = 1; a < n && info.cuspidal; ++a) {
      int b = n - a;
      long cnt = 1;
      for (int i = 0; i < a * b; ++i) cnt *= q;
      MatrixXcd Y = MatrixXcd::Zero(d, Q.cols());
      for (long code = 0; code < cnt; ++code) {
        FqMat u = FqMat::identity(n, q);
        long x = code;
        for (int i = 0; i < a; ++i)
          for (int j = 0; j < b; ++j) {
            u.at(i, a + j) = uint8_t(x % q);
            x /= q;
          }
        gg.monomial(u, t, ph);
        for (int i = 0; i < d; ++i) Y.row(i) += ph[i] * Q.row(t[i]);
      }
      if ((Q.adjoint() * Y).cwiseAbs().maxCoeff() > tol * double(cnt)) info.cuspidal = false;
    }
    // central character exponent
    if (q > 2) {
      FqMat zi = FqMat::identity(n, q);
      int g0 = F.generator();
      for (int i = 0; i < n; ++i) zi.at(i, i) = uint8_t(g0);
      cd w = traces[ci][G.index_of(zi)] / double(info.dim);
      for (int e = 0; e < q - 1; ++e)
        if (std::abs(w - unit_root(double(e) / (q - 1))) < 1e-6) info.central_exponent = e;
    }
    // self-dual iff trace(g) == trace(g^{-1}) for all g
    info.self_dual = true;
    for (int gi = 0; gi < G.size() && info.self_dual; ++gi) {
      int inv = G.index_of(G[gi].inverse());
      if (std::abs(traces[ci][gi] - traces[ci][inv]) > 1e-6) info.self_dual = false;
    }
    out.push_back(info);
  }
  return out;
}

// JSON export: {"n","q","dim","generators":[...]} where the generator list
// holds the images of the elementary transvections (and the diagonal unit
// for q > 2), each as a matrix of [re, im] pairs.
inline std::string rep_json(const Rep& R) {
  auto mat_json = [](const MatrixXcd& m) {
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
      s += "[";
      for (int j = 0; j < m.cols(); ++j) {
        char buf[96];
        snprintf(buf, sizeof buf, "[%.17g, %.17g]", m(i, j).real(), m(i, j).imag());
        s += buf;
        if (j + 1 < m.cols()) s += ", ";
      }
      s += "]";
      if (i + 1 < m.rows()) s += ", ";
    }
    s += "]";
    return s;
  };
  std::vector<FqMat> gens;
  for (int i = 0; i < R.n; ++i)
    for (int j = 0; j < R.n; ++j)
      if (i != j) {
        FqMat t = FqMat::identity(R.n, R.q);
        t.at(i, j) = 1;
        gens.push_back(t);
      }
  if (R.q > 2) {
    FqMat d = FqMat::identity(R.n, R.q);
    d.at(0, 0) = uint8_t(PrimeField(R.q).generator());
    gens.push_back(d);
  }
  std::string s = "{\"n\": " + std::to_string(R.n) + ", \"q\": " + std::to_string(R.q) +
                  ", \"dim\": " + std::to_string(R.dim) + ", \"generators\": [";
  for (size_t i = 0; i < gens.size(); ++i) {
    s += mat_json(R(gens[i]));
    if (i + 1 < gens.size()) s += ", ";
  }
  s += "]}";
  return s;
}

// || (1/|G|) sum_g tau(g) (x) tau(g^{-1})  -  q^{k(k-1)/2}(q^k-1)/|G| * sw ||_inf
inline double swap_identity_residual(const Rep& tau) {
  const GroupTable& G = *tau.group;
  int dm = tau.dim;
  MatrixXcd acc = MatrixXcd::Zero(dm * dm, dm * dm);
  for (int gi = 0; gi < G.size(); ++gi) {
    const FqMat& g = G[gi];
    acc += tensor(tau(g), tau(g.inverse()));
  }
  acc /= double(G.size());
  double coeff = 1.0;
  for (int i = 0; i < tau.n * (tau.n - 1) / 2; ++i) coeff *= tau.q;
  double qk = 1.0;
  for (int i = 0; i < tau.n; ++i) qk *= tau.q;
  coeff = coeff * (qk - 1.0) / double(G.size());
  MatrixXcd sw = MatrixXcd::Zero(dm * dm, dm * dm);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) sw(i * dm + j, j * dm + i) = 1.0;
  return (acc - coeff * sw).cwiseAbs().maxCoeff();
}

}  // namespace spehlab
