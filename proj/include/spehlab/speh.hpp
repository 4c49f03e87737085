#pragma once

// The parabolic induction tau^{o c} of a cuspidal tau of GL_k(F_q), its
// Hecke operators h^0_w, the Speh and Steinberg projectors in sum and
// product form, (k,c) Whittaker vectors and functionals (recursive
// construction and averaging oracle), and Bessel-Speh functions.
//
// Vectors live on the canonical P_(k^c)\G coset representatives, one
// tau^{(x)c} block per coset. Operators are applied matrix-free; dense
// matrices are only materialized on demand for small models.

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "spehlab/repcore.hpp"

namespace spehlab {

// Poincare polynomial prod_{j=2}^{c} (1 + x + ... + x^{j-1}).
inline cd poincare_poly(int c, cd x) {
  cd out = 1.0;
  for (int j = 2; j <= c; ++j) {
    cd term = 0.0, p = 1.0;
    for (int i = 0; i < j; ++i) {
      term += p;
      p *= x;
    }
    out *= term;
  }
  return out;
}

// Elements of S_c with reduced words and lengths, BFS order.
struct SymmetricGroup {
  int c;
  std::vector<std::vector<int>> perms;        // images, 0-based
  std::vector<std::vector<int>> words;        // reduced words (1-based letters)
  std::vector<int> lengths;

  explicit SymmetricGroup(int c_) : c(c_) {
    std::vector<int> id(c);
    for (int i = 0; i < c; ++i) id[i] = i;
    perms.push_back(id);
    words.push_back({});
    lengths.push_back(0);
    std::unordered_map<std::string, int> seen;
    auto keyof = [](const std::vector<int>& p) {
      std::string s;
      for (int x : p) s += char('a' + x);
      return s;
    };
    seen[keyof(id)] = 0;
    for (size_t head = 0; head < perms.size(); ++head) {
      auto w = perms[head];
      auto word = words[head];
      for (int i = 1; i < c; ++i) {
        auto w2 = w;
        // left-multiply by s_i as functions: w2 = s_i o w
        for (int x = 0; x < c; ++x) {
          int y = w[x];
          if (y == i - 1) w2[x] = i;
          else if (y == i) w2[x] = i - 1;
        }
        auto k = keyof(w2);
        if (!seen.count(k)) {
          seen[k] = int(perms.size());
          perms.push_back(w2);
          auto nw = word;
          nw.insert(nw.begin(), i);
          words.push_back(nw);
          lengths.push_back(int(word.size()) + 1);
        }
      }
    }
  }
  int size() const { return int(perms.size()); }
};

class InducedModel {
 public:
  // tau: cuspidal representation of GL_k; builds tau^{o c} on GL_{kc} along
  // with the (k, c-1), ..., (k, 1) chain used by the recursive functional.
  InducedModel(std::shared_ptr<const CuspidalRep> tau, int c, AdditiveCharacter psi,
               uint64_t seed = 0)
      : k_(tau->rep.n), c_(c), q_(tau->rep.q), psi_(std::move(psi)), tau_(std::move(tau)) {
    if (k_ * c_ > 6) throw CapacityError("kc > 6 exceeds the envelope");
    tdim_ = tau_->rep.dim;
    tpow_ = 1;
    for (int i = 0; i < c_; ++i) tpow_ *= tdim_;
    seed_ = seed;
    if (c_ == 1) {
      dim_ = tdim_;
      v_whit_ = tau_->whit_vec;
      v_whit_ready_ = true;
      ell_rec_ = tau_->ell;
    } else {
      cosets_ = std::make_shared<CosetTable>(k_ * c_, Composition(c_, k_), q_);
      dim_ = long(cosets_->size()) * tpow_;
      if (dim_ > kMaxModelDim) throw CapacityError("induced model dimension exceeds envelope");
      sub_ = std::make_shared<InducedModel>(tau_, c_ - 1, psi_, seed);
      unip_ = enumerate_unipotent_ck(k_, c_, q_);
      unip_chars_.reserve(unip_.size());
      KcCharacterData kc{k_, c_, psi_};
      for (const FqMat& u : unip_) unip_chars_.push_back(psi_kc_eval(kc, u));
      ell_rec_ = kc_functional_recursive(1);
    }
  }

  int k() const { return k_; }
  int c() const { return c_; }
  int q() const { return q_; }
  int n() const { return k_ * c_; }
  long dim() const { return dim_; }
  int tdim() const { return tdim_; }
  long tpow() const { return tpow_; }
  const CuspidalRep& tau() const { return *tau_; }
  const AdditiveCharacter& psi() const { return psi_; }
  const CosetTable& cosets() const { return *cosets_; }
  const InducedModel& sub(int csub) const {
    if (csub == c_) return *this;
    if (c_ == 1 || csub > c_) throw DomainError("no sub-model of that size");
    return sub_->sub(csub);
  }
  // normalized (k,c) Whittaker vector inside the Speh subspace; built on
  // first use (the psi-average over U_(c^k) dominates large-model setup)
  const VectorXcd& whittaker_vector() const {
    if (!v_whit_ready_) {
      build_whittaker_vector(seed_);
      v_whit_ready_ = true;
    }
    return v_whit_;
  }
  // recursive (k,c) Whittaker functional, split (1, c-1); bilinear coefficients
  const VectorXcd& functional() const { return ell_rec_; }

  double qk() const {
    double p = 1;
    for (int i = 0; i < k_; ++i) p *= q_;
    return p;
  }

  // ---- action ----

  // (rho(g) f)(r) = tensor(tau(levi)) f(r') where r g = p r'.
  VectorXcd apply(const FqMat& g, const VectorXcd& v) const {
    if (c_ == 1) return tau_->rep(g) * v;
    VectorXcd out(dim_);
    CosetDecomp d;
    std::vector<cd> buf(tpow_), buf2(tpow_);
    for (int t = 0; t < cosets_->size(); ++t) {
      cosets_->decompose(cosets_->rep(t) * g, d);
      tensor_apply(d.levi, v.data() + long(d.index) * tpow_, buf.data(), buf2.data(), false);
      std::copy(buf.begin(), buf.end(), out.data() + long(t) * tpow_);
    }
    return out;
  }

  // f(x) for x anywhere in GL_{kc}: the tau^{(x)c}-valued evaluation.
  VectorXcd value_at(const VectorXcd& f, const FqMat& x) const {
    if (c_ == 1) return tau_->rep(x) * f;
    CosetDecomp d;
    cosets_->decompose(x, d);
    VectorXcd out(tpow_);
    std::vector<cd> buf(tpow_);
    tensor_apply(d.levi, f.data() + long(d.index) * tpow_, out.data(), buf.data(), false);
    return out;
  }

  // ---- Hecke operators ----

  // h^0_{s_i} = q^{-k(k-1)/2} omega_tau(-1) h_{s_i}, with
  // (h_{s_i} f)(x) = sum_{X in M_k} s_i . f(w_i u_X x).
  //
  // The (X, coset) -> (source coset, block operator) transitions are fixed
  // per model, so they are tabulated on first use when the table is small
  // enough; the flat-array fast path skips all matrix decompositions.
  VectorXcd hecke_h0(int i, const VectorXcd& v) const {
    if (c_ < 2) throw DomainError("hecke operators need c >= 2");
    if (i < 1 || i >= c_) throw DomainError("simple reflection index out of range");
    long nx = 1;
    for (int t = 0; t < k_ * k_; ++t) nx *= q_;
    cd norm = tau_->omega_minus1();
    for (int t = 0; t < k_ * (k_ - 1) / 2; ++t) norm /= double(q_);

    double table_bytes = double(nx) * cosets_->size() * (16.0 * tpow_ * tpow_ + 4.0);
    if (table_bytes <= 128.0 * 1024 * 1024) {
      const HeckeTable& T = hecke_table(i, nx);
      VectorXcd out = VectorXcd::Zero(dim_);
      long ncos = cosets_->size();
      for (long e = 0; e < nx * ncos; ++e) {
        Eigen::Map<const MatrixXcd> op(T.data.data() + e * tpow_ * tpow_, tpow_, tpow_);
        out.segment((e % ncos) * tpow_, tpow_) += op * v.segment(long(T.src[e]) * tpow_, tpow_);
      }
      return norm * out;
    }

    VectorXcd out = VectorXcd::Zero(dim_);
    CosetDecomp d;
    std::vector<cd> buf(tpow_), buf2(tpow_);
    for (long code = 0; code < nx; ++code) {
      FqMat m0 = hecke_translation(i, code);
      for (int t = 0; t < cosets_->size(); ++t) {
        cosets_->decompose(m0 * cosets_->rep(t), d);
        tensor_apply(d.levi, v.data() + long(d.index) * tpow_, buf.data(), buf2.data(), false);
        swap_slots(buf.data(), i - 1, buf2.data());
        for (long s = 0; s < tpow_; ++s) out[long(t) * tpow_ + s] += buf2[s];
      }
    }
    return norm * out;
  }

  // h^0_w along a reduced word (rightmost letter applied first).
  VectorXcd hecke_h0_word(const std::vector<int>& word, const VectorXcd& v) const {
    VectorXcd x = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = hecke_h0(*it, x);
    return x;
  }

  const SymmetricGroup& symmetric_group() const {
    if (!sym_) sym_ = std::make_unique<SymmetricGroup>(c_);
    return *sym_;
  }

  // ---- projectors ----

  VectorXcd speh_project_sum(const VectorXcd& v) const {
    const SymmetricGroup& S = symmetric_group();
    VectorXcd acc = VectorXcd::Zero(dim_);
    for (int w = 0; w < S.size(); ++w) acc += hecke_h0_word(S.words[w], v);
    return acc / poincare_poly(c_, qk());
  }

  // Product over pairs (i,j), i<j, in lexicographic order. dir=+1 applies the
  // first factor first; dir=-1 the last first. Both agree (tested).
  VectorXcd speh_project_product(const VectorXcd& v, int dir = +1) const {
    std::vector<std::pair<int, double>> factors;  // (letter j-i, constant)
    for (int i = 1; i < c_; ++i)
      for (int j = i + 1; j <= c_; ++j) {
        double denom = std::pow(qk(), double(j - i)) - 1.0;
        factors.emplace_back(j - i, (qk() - 1.0) / denom);
      }
    if (dir < 0) std::reverse(factors.begin(), factors.end());
    VectorXcd x = v;
    for (auto& [letter, cst] : factors) x = hecke_h0(letter, x) + cst * x;
    return x / poincare_poly(c_, qk());
  }

  VectorXcd steinberg_project_sum(const VectorXcd& v) const {
    const SymmetricGroup& S = symmetric_group();
    VectorXcd acc = VectorXcd::Zero(dim_);
    for (int w = 0; w < S.size(); ++w)
      acc += std::pow(-1.0 / qk(), double(S.lengths[w])) * hecke_h0_word(S.words[w], v);
    return acc / poincare_poly(c_, 1.0 / qk());
  }

  VectorXcd steinberg_project_product(const VectorXcd& v, int dir = +1) const {
    std::vector<std::pair<int, double>> factors;
    for (int i = 1; i < c_; ++i)
      for (int j = i + 1; j <= c_; ++j) {
        double denom = std::pow(qk(), double(i - j)) - 1.0;
        factors.emplace_back(j - i, (qk() - 1.0) / denom);
      }
    if (dir < 0) std::reverse(factors.begin(), factors.end());
    VectorXcd x = v;
    for (auto& [letter, cst] : factors) x = hecke_h0(letter, x) + cst * x;
    double sign = (c_ * (c_ - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    return sign * x / poincare_poly(c_, qk());
  }

  // ---- (k,c) Whittaker data ----

  // Projector onto the psi_{(k,c)}-eigenspace of the full model.
  VectorXcd psi_project(const VectorXcd& v) const {
    if (c_ == 1 && k_ == 1) return v;
    VectorXcd acc = VectorXcd::Zero(dim_);
    if (c_ == 1) {
      // U_(1^k) with the generic character: classical Whittaker projector
      auto U = enumerate_unipotent_ck(k_, 1, q_);
      for (const FqMat& u : U) {
        int s = 0;
        for (int i = 0; i + 1 < k_; ++i) s += u.at(i, i + 1);
        acc += std::conj(psi_(s)) * (tau_->rep(u) * v);
      }
      return acc / double(U.size());
    }
    for (size_t ui = 0; ui < unip_.size(); ++ui)
      acc += std::conj(unip_chars_[ui]) * apply(unip_[ui], v);
    return acc / double(unip_.size());
  }

  // Recursive (k,c) functional for the split (c1, c - c1), grounded in
  // ell_tau; returns bilinear coefficients on this model.
  VectorXcd kc_functional_recursive(int c1) const {
    if (c_ == 1) return tau_->ell;
    int c2 = c_ - c1;
    if (c1 < 1 || c2 < 1) throw DomainError("invalid split");
    const InducedModel& m1 = sub(c1);
    const InducedModel& m2 = sub(c2);
    const VectorXcd& L1 = m1.ell_rec_;
    const VectorXcd& L2 = m2.ell_rec_;
    FqMat kap = kappa_matrix(c1, c2, k_, q_);
    auto Y = enumerate_y_group(c1, c2, k_, q_);
    VectorXcd L = VectorXcd::Zero(dim_);
    int n1 = m1.c_ == 1 ? 1 : m1.cosets_->size();
    int n2 = m2.c_ == 1 ? 1 : m2.cosets_->size();
    CosetDecomp d;
    std::vector<cd> t12(tpow_), buf(tpow_), buf2(tpow_);
    for (const FqMat& y : Y) {
      FqMat base = y * kap;
      for (int r1 = 0; r1 < n1; ++r1) {
        const FqMat rep1 = m1.c_ == 1 ? FqMat::identity(k_, q_) : m1.cosets_->rep(r1);
        for (int r2 = 0; r2 < n2; ++r2) {
          const FqMat rep2 = m2.c_ == 1 ? FqMat::identity(k_ * c2, q_) : m2.cosets_->rep(r2);
          FqMat m(k_ * c_, q_);
          put_block(m, 0, 0, rep1);
          put_block(m, k_ * c1, k_ * c1, rep2);
          m = m * base;
          cosets_->decompose(m, d);
          // t12 = L1-block (x) L2-block
          for (long a = 0; a < m1.tpow_; ++a)
            for (long b = 0; b < m2.tpow_; ++b)
              t12[a * m2.tpow_ + b] =
                  L1[long(r1) * m1.tpow_ + a] * L2[long(r2) * m2.tpow_ + b];
          tensor_apply(d.levi, t12.data(), buf.data(), buf2.data(), true);
          for (long s = 0; s < tpow_; ++s) L[long(d.index) * tpow_ + s] += buf[s];
        }
      }
    }
    return L / double(Y.size());
  }

  // W_f(g) = ell(rho(g) f) for a bilinear functional ell.
  cd whittaker_function(const VectorXcd& ell, const VectorXcd& f, const FqMat& g) const {
    return ell.transpose() * apply(g, f);
  }

  // Bessel-Speh function: normalized matrix coefficient of v_whit.
  cd bessel(const FqMat& g) const {
    const VectorXcd& v = whittaker_vector();
    return inner(apply(g, v), v);
  }

  // ---- tensor helpers ----

  // out = (x)_s tau(levi_s)^(T?) applied to x; tmp is scratch of size tpow.
  void tensor_apply(const std::array<FqMat, kMaxN>& levi, const cd* x, cd* out, cd* tmp,
                    bool transpose) const {
    long total = tpow_;
    const cd* src = x;
    cd* dst = out;
    long pre = 1, post = total / tdim_;
    for (int s = 0; s < c_; ++s) {
      const MatrixXcd& A = tau_->rep(levi[s]);
      for (long p = 0; p < pre; ++p)
        for (long t = 0; t < post; ++t) {
          for (int i = 0; i < tdim_; ++i) {
            cd acc = 0;
            for (int j = 0; j < tdim_; ++j) {
              cd aij = transpose ? A(j, i) : A(i, j);
              acc += aij * src[(p * tdim_ + j) * post + t];
            }
            dst[(p * tdim_ + i) * post + t] = acc;
          }
        }
      src = dst;
      dst = (dst == out) ? tmp : out;
      pre *= tdim_;
      post /= tdim_;
    }
    if (src != out) std::copy(src, src + total, out);
  }

  // swap tensor slots s and s+1 (0-based)
  void swap_slots(const cd* x, int s, cd* out) const {
    long pre = 1;
    for (int i = 0; i < s; ++i) pre *= tdim_;
    long post = tpow_ / (pre * tdim_ * tdim_);
    for (long p = 0; p < pre; ++p)
      for (int a = 0; a < tdim_; ++a)
        for (int b = 0; b < tdim_; ++b)
          for (long t = 0; t < post; ++t)
            out[((p * tdim_ + b) * tdim_ + a) * post + t] =
                x[((p * tdim_ + a) * tdim_ + b) * post + t];
  }

  // dense matrix of an operator (small models only)
  MatrixXcd dense(const std::function<VectorXcd(const VectorXcd&)>& op) const {
    if (dim_ > 600) throw CapacityError("dense operator materialization limited to dim <= 600");
    MatrixXcd M(dim_, dim_);
    VectorXcd e = VectorXcd::Zero(dim_);
    for (long j = 0; j < dim_; ++j) {
      e[j] = 1.0;
      M.col(j) = op(e);
      e[j] = 0.0;
    }
    return M;
  }

  VectorXcd random_vector(Rng& rng) const {
    VectorXcd v(dim_);
    for (long i = 0; i < dim_; ++i) v[i] = rng.cgauss();
    return v / v.norm();
  }

  const std::vector<FqMat>& unipotent_radical() const { return unip_; }
  const std::vector<cd>& unipotent_characters() const { return unip_chars_; }

 private:
  struct HeckeTable {
    std::vector<int32_t> src;  // nx * ncosets entries, row block = X-code
    std::vector<cd> data;      // tpow^2 per entry, column-major blocks
  };

  // w_i * u_X for the X encoded by `code` in base q.
  FqMat hecke_translation(int i, long code) const {
    int n = k_ * c_;
    FqMat w(n, q_);
    for (int b = 0; b < c_; ++b) {
      int tb = (b == i - 1) ? i : (b == i ? i - 1 : b);
      put_identity_block(w, b * k_, tb * k_, k_);
    }
    FqMat u = FqMat::identity(n, q_);
    long x = code;
    for (int a = 0; a < k_; ++a)
      for (int b = 0; b < k_; ++b) {
        u.at((i - 1) * k_ + a, i * k_ + b) = uint8_t(x % q_);
        x /= q_;
      }
    return w * u;
  }

  const HeckeTable& hecke_table(int i, long nx) const {
    auto it = hecke_cache_.find(i);
    if (it != hecke_cache_.end()) return it->second;
    HeckeTable T;
    long ncos = cosets_->size();
    T.src.resize(nx * ncos);
    T.data.assign(nx * ncos * tpow_ * tpow_, cd(0.0));
    CosetDecomp d;
    std::vector<cd> e(tpow_), buf(tpow_), buf2(tpow_);
    for (long code = 0; code < nx; ++code) {
      FqMat m0 = hecke_translation(i, code);
      for (long t = 0; t < ncos; ++t) {
        cosets_->decompose(m0 * cosets_->rep(t), d);
        long idx = code * ncos + t;
        T.src[idx] = d.index;
        cd* block = T.data.data() + idx * tpow_ * tpow_;
        for (long col = 0; col < tpow_; ++col) {
          std::fill(e.begin(), e.end(), cd(0.0));
          e[col] = 1.0;
          tensor_apply(d.levi, e.data(), buf.data(), buf2.data(), false);
          swap_slots(buf.data(), i - 1, buf2.data());
          for (long row = 0; row < tpow_; ++row) block[col * tpow_ + row] = buf2[row];
        }
      }
    }
    return hecke_cache_.emplace(i, std::move(T)).first->second;
  }

  void build_whittaker_vector(uint64_t seed) const {
    for (int attempt = 0; attempt < 3; ++attempt) {
      Rng rng(seed * 27644437 + c_ * 257 + attempt + 5);
      VectorXcd v(dim_);
      for (long i = 0; i < dim_; ++i) v[i] = rng.cgauss();
      VectorXcd w = speh_project_product(psi_project(v / v.norm()));
      if (w.norm() > 1e-10) {
        v_whit_ = w / w.norm();
        return;
      }
    }
    throw DiagnosticError("(k,c) Whittaker vector projection returned zero");
  }

  int k_, c_, q_;
  AdditiveCharacter psi_;
  std::shared_ptr<const CuspidalRep> tau_;
  std::shared_ptr<CosetTable> cosets_;
  std::shared_ptr<InducedModel> sub_;
  uint64_t seed_ = 0;
  int tdim_ = 1;
  long tpow_ = 1, dim_ = 1;
  std::vector<FqMat> unip_;
  std::vector<cd> unip_chars_;
  mutable VectorXcd v_whit_;
  mutable bool v_whit_ready_ = false;
  VectorXcd ell_rec_;
  mutable std::unique_ptr<SymmetricGroup> sym_;
  mutable std::map<int, HeckeTable> hecke_cache_;
};

}  // namespace spehlab
