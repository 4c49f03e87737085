#pragma once

// Acceptance suite: one function per criterion (A1..A13 plus the stretch
// case S1), sharing heavy objects through a workspace cache. Each check
// reports the worst residual it saw; the suite passes when every check
// passes at the configured tolerance.

#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include "spehlab/levelzero.hpp"

namespace spehlab {

struct VerifyConfig {
  double tol = kDefaultTol;
  uint64_t seed = 0;
  double perturb = 0.0;  // control path: shifts gamma in the functional equations
  int threads = 1;
  std::optional<int> only_q;

  bool wants_q(int q) const { return !only_q || *only_q == q; }
};

struct CheckResult {
  std::string id;
  bool pass = false;
  double residual = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

class Workspace {
 public:
  explicit Workspace(uint64_t seed = 0) : seed_(seed) {}

  uint64_t seed() const { return seed_; }

  AdditiveCharacter psi(int q) { return AdditiveCharacter(q); }

  const std::vector<std::shared_ptr<CuspidalRep>>& cuspidals(int n, int q) {
    auto key = std::make_pair(n, q);
    auto it = cusp_.find(key);
    if (it == cusp_.end()) {
      std::vector<std::shared_ptr<CuspidalRep>> v;
      for (auto& c : cuspidal_representations(n, q, psi(q), seed_))
        v.push_back(std::make_shared<CuspidalRep>(std::move(c)));
      it = cusp_.emplace(key, std::move(v)).first;
    }
    return it->second;
  }

  std::shared_ptr<InducedModel> model(int q, int k, int c, int tau_id) {
    auto key = std::make_tuple(q, k, c, tau_id);
    auto it = models_.find(key);
    if (it == models_.end()) {
      auto tau = cuspidals(k, q).at(tau_id);
      it = models_.emplace(key, std::make_shared<InducedModel>(tau, c, psi(q), seed_)).first;
    }
    return it->second;
  }

  struct DenseOps {
    MatrixXcd speh_sum, speh_lr, speh_rl, st_sum, st_lr, st_rl;
  };

  const DenseOps& dense_projectors(int q, int k, int c, int tau_id) {
    auto key = std::make_tuple(q, k, c, tau_id);
    auto it = dense_.find(key);
    if (it == dense_.end()) {
      auto M = model(q, k, c, tau_id);
      DenseOps d;
      d.speh_sum = M->dense([&](const VectorXcd& x) { return M->speh_project_sum(x); });
      d.speh_lr = M->dense([&](const VectorXcd& x) { return M->speh_project_product(x, +1); });
      d.speh_rl = M->dense([&](const VectorXcd& x) { return M->speh_project_product(x, -1); });
      d.st_sum = M->dense([&](const VectorXcd& x) { return M->steinberg_project_sum(x); });
      d.st_lr = M->dense([&](const VectorXcd& x) { return M->steinberg_project_product(x, +1); });
      d.st_rl = M->dense([&](const VectorXcd& x) { return M->steinberg_project_product(x, -1); });
      it = dense_.emplace(key, std::move(d)).first;
    }
    return it->second;
  }

 private:
  uint64_t seed_;
  std::map<std::pair<int, int>, std::vector<std::shared_ptr<CuspidalRep>>> cusp_;
  std::map<std::tuple<int, int, int, int>, std::shared_ptr<InducedModel>> models_;
  std::map<std::tuple<int, int, int, int>, DenseOps> dense_;
};

namespace verify_detail {

struct Case {
  int k, c, q, tau_id;
};

// (k,c,q, tau) cases; tau indices per case
inline std::vector<Case> hecke_cases() {
  return {{1, 2, 3, 0}, {1, 2, 3, 1}, {1, 3, 2, 0}, {2, 2, 2, 0},
          {2, 2, 3, 0}, {2, 2, 3, 1}, {2, 2, 3, 2}, {2, 3, 2, 0}};
}

inline std::vector<Case> dense_projector_cases() {
  return {{1, 2, 3, 1}, {1, 3, 2, 0}, {2, 2, 2, 0}, {2, 2, 3, 0}};
}

inline double rank_of(const MatrixXcd& P) { return P.trace().real(); }

inline std::string fmt(double x) {
  char buf[32];
  snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

}  // namespace verify_detail

// A1: Hecke relations (quadratic, braid; the commuting relation is vacuous
// for c <= 3).
inline CheckResult check_A1(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A1"};
  std::ostringstream note;
  for (const Case& cs : hecke_cases()) {
    if (!cfg.wants_q(cs.q) || cs.c < 2) continue;
    auto M = ws.model(cs.q, cs.k, cs.c, cs.tau_id);
    Rng rng(ws.seed() + 101);
    for (int probe = 0; probe < 3; ++probe) {
      VectorXcd v = M->random_vector(rng);
      for (int i = 1; i < cs.c; ++i) {
        VectorXcd h = M->hecke_h0(i, v);
        double res = (M->hecke_h0(i, h) - M->qk() * v - (M->qk() - 1.0) * h).norm();
        r.residual = std::max(r.residual, res);
      }
      if (cs.c >= 3) {
        VectorXcd b1 = M->hecke_h0(1, M->hecke_h0(2, M->hecke_h0(1, v)));
        VectorXcd b2 = M->hecke_h0(2, M->hecke_h0(1, M->hecke_h0(2, v)));
        r.residual = std::max(r.residual, (b1 - b2).norm());
      }
    }
  }
  note << "quadratic+braid over envelope cases; commuting relation vacuous for c<=3; max residual "
       << fmt(r.residual);
  r.detail = note.str();
  r.pass = r.residual < cfg.tol;
  return r;
}

// A2: sum-form vs product-form projectors, both product orderings.
inline CheckResult check_A2(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A2"};
  for (const Case& cs : dense_projector_cases()) {
    if (!cfg.wants_q(cs.q)) continue;
    const auto& D = ws.dense_projectors(cs.q, cs.k, cs.c, cs.tau_id);
    r.residual = std::max(r.residual, (D.speh_sum - D.speh_lr).cwiseAbs().maxCoeff());
    r.residual = std::max(r.residual, (D.speh_sum - D.speh_rl).cwiseAbs().maxCoeff());
    r.residual = std::max(r.residual, (D.st_sum - D.st_lr).cwiseAbs().maxCoeff());
    r.residual = std::max(r.residual, (D.st_sum - D.st_rl).cwiseAbs().maxCoeff());
  }
  if (cfg.wants_q(2)) {  // (2,3,2) matrix-free probes
    auto M = ws.model(2, 2, 3, 0);
    Rng rng(ws.seed() + 202);
    for (int probe = 0; probe < 3; ++probe) {
      VectorXcd v = M->random_vector(rng);
      VectorXcd s = M->speh_project_sum(v);
      r.residual = std::max(r.residual, (s - M->speh_project_product(v, +1)).norm());
      r.residual = std::max(r.residual, (s - M->speh_project_product(v, -1)).norm());
      VectorXcd t = M->steinberg_project_sum(v);
      r.residual = std::max(r.residual, (t - M->steinberg_project_product(v, +1)).norm());
      r.residual = std::max(r.residual, (t - M->steinberg_project_product(v, -1)).norm());
    }
  }
  r.detail = "sum vs product (both orderings), Speh and Steinberg; max residual " + fmt(r.residual);
  r.pass = r.residual < cfg.tol;
  return r;
}

// A3: projector structure: idempotency, mutual annihilation, equivariance,
// rank comparison, image irreducibility (Hecke primitivity probe), and the
// k=1,c=2,q=3 rank-1 case.
inline CheckResult check_A3(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A3"};
  std::ostringstream note;
  bool structural_ok = true;

  auto primitivity = [&](InducedModel& M, auto&& proj) {
    Rng rng(ws.seed() + 303);
    const SymmetricGroup& S = M.symmetric_group();
    std::vector<VectorXcd> xs;
    for (int i = 0; i < 3; ++i) {
      VectorXcd x = proj(M.random_vector(rng));
      if (x.norm() < 1e-12) continue;
      xs.push_back(x / x.norm());
    }
    double worst = 0;
    for (int w = 0; w < S.size(); ++w) {
      cd lam = 0;
      for (size_t i = 0; i < xs.size(); ++i) {
        VectorXcd y = proj(M.hecke_h0_word(S.words[w], xs[i]));
        cd li = inner(y, xs[i]) / inner(xs[i], xs[i]);
        if (i == 0) lam = li;
        worst = std::max(worst, (y - li * xs[i]).norm());
        worst = std::max(worst, std::abs(li - lam));
      }
    }
    return worst;
  };

  for (const Case& cs : dense_projector_cases()) {
    if (!cfg.wants_q(cs.q)) continue;
    auto M = ws.model(cs.q, cs.k, cs.c, cs.tau_id);
    const auto& D = ws.dense_projectors(cs.q, cs.k, cs.c, cs.tau_id);
    const MatrixXcd &Ps = D.speh_lr, &St = D.st_lr;
    r.residual = std::max(r.residual, (Ps * Ps - Ps).cwiseAbs().maxCoeff());
    r.residual = std::max(r.residual, (St * St - St).cwiseAbs().maxCoeff());
    r.residual = std::max(r.residual, (Ps * St).cwiseAbs().maxCoeff());
    double rs = rank_of(Ps), rt = rank_of(St);
    if (std::abs(rs - std::round(rs)) > 1e-6 || std::abs(rt - std::round(rt)) > 1e-6)
      structural_ok = false;
    if (rs > rt + 1e-6) structural_ok = false;
    if (cs.k == 1 && cs.c == 2 && cs.q == 3 && std::abs(rs - 1.0) > 1e-6) structural_ok = false;
    // equivariance on 20 random group elements
    Rng rng(ws.seed() + 404);
    for (int t = 0; t < 20; ++t) {
      FqMat g = random_invertible(cs.k * cs.c, cs.q, rng);
      VectorXcd v = M->random_vector(rng);
      r.residual = std::max(
          r.residual, (M->speh_project_product(M->apply(g, v)) - M->apply(g, M->speh_project_product(v))).norm());
    }
    if (cs.c >= 2) r.residual = std::max(r.residual, primitivity(*M, [&](const VectorXcd& x) {
                     return M->speh_project_product(x);
                   }));
    note << "(" << cs.k << "," << cs.c << "," << cs.q << ") ranks " << rs << "/" << rt << "; ";
  }

  if (cfg.wants_q(2)) {  // (2,3,2) probes
    auto M = ws.model(2, 2, 3, 0);
    Rng rng(ws.seed() + 505);
    for (int t = 0; t < 3; ++t) {
      VectorXcd v = M->random_vector(rng);
      VectorXcd p = M->speh_project_product(v);
      r.residual = std::max(r.residual, (M->speh_project_product(p) - p).norm());
      VectorXcd s = M->steinberg_project_product(v);
      r.residual = std::max(r.residual, (M->steinberg_project_product(s) - s).norm());
      r.residual = std::max(r.residual, M->speh_project_product(s).norm());
    }
    for (int t = 0; t < 20; ++t) {
      FqMat g = random_invertible(6, 2, rng);
      VectorXcd v = M->random_vector(rng);
      r.residual = std::max(
          r.residual, (M->speh_project_product(M->apply(g, v)) - M->apply(g, M->speh_project_product(v))).norm());
    }
    r.residual = std::max(r.residual, primitivity(*M, [&](const VectorXcd& x) {
      return M->speh_project_product(x);
    }));
  }

  // full random-commutant cross-check on the enumerable (2,2,2) case
  if (cfg.wants_q(2)) {
    auto M = ws.model(2, 2, 2, 0);
    const auto& D = ws.dense_projectors(2, 2, 2, 0);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (D.speh_lr + D.speh_lr.adjoint()));
    int rk = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] > 0.5) ++rk;
    MatrixXcd B = es.eigenvectors().rightCols(rk);
    GroupTable G(4, 2);
    Rng rng(ws.seed() + 606);
    MatrixXcd H(rk, rk);
    for (int i = 0; i < rk; ++i)
      for (int j = 0; j < rk; ++j) H(i, j) = rng.cgauss();
    H = 0.5 * (H + H.adjoint());
    MatrixXcd acc = MatrixXcd::Zero(rk, rk);
    for (int gi = 0; gi < G.size(); ++gi) {
      MatrixXcd rg(M->dim(), rk);
      for (int col = 0; col < rk; ++col) rg.col(col) = M->apply(G[gi], VectorXcd(B.col(col)));
      MatrixXcd A = B.adjoint() * rg;
      acc += A * H * A.adjoint();
    }
    acc /= double(G.size());
    cd mean = acc.trace() / double(rk);
    r.residual = std::max(r.residual,
                          (acc - mean * MatrixXcd::Identity(rk, rk)).cwiseAbs().maxCoeff() /
                              std::max(1.0, std::abs(mean)));
    note << "commutant-average scalar on (2,2,2) Speh image; ";
  }

  r.detail = note.str() + "max residual " + fmt(r.residual);
  r.pass = structural_ok && r.residual < cfg.tol;
  return r;
}

// A4: the psi_{(k,c)}-eigenspace of the Speh subspace is one-dimensional.
inline CheckResult check_A4(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A4"};
  std::ostringstream note;
  bool ok = true;
  for (const Case& cs : std::vector<Case>{{2, 2, 2, 0}, {2, 2, 3, 0}}) {
    if (!cfg.wants_q(cs.q)) continue;
    auto M = ws.model(cs.q, cs.k, cs.c, cs.tau_id);
    MatrixXcd Ppsi = M->dense([&](const VectorXcd& x) { return M->psi_project(x); });
    const auto& D = ws.dense_projectors(cs.q, cs.k, cs.c, cs.tau_id);
    MatrixXcd P = Ppsi * D.speh_lr;
    double tr = P.trace().real();
    Eigen::JacobiSVD<MatrixXcd> svd(P);
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()[i] > 0.5) ++rank;
    if (std::abs(tr - 1.0) > 1e-6 || rank != 1) ok = false;
    r.residual = std::max(r.residual, std::abs(tr - 1.0));
    note << "(" << cs.k << "," << cs.c << "," << cs.q << ") trace " << tr << " rank " << rank
         << "; ";
  }
  if (cfg.wants_q(2)) {  // (2,3,2): seeded probe Gram rank
    auto M = ws.model(2, 2, 3, 0);
    Rng rng(ws.seed() + 707);
    std::vector<VectorXcd> xs;
    for (int i = 0; i < 3; ++i)
      xs.push_back(M->psi_project(M->speh_project_product(M->random_vector(rng))));
    MatrixXcd G(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) G(i, j) = inner(xs[j], xs[i]);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(G);
    double top = es.eigenvalues()(2);
    int rank = 0;
    for (int i = 0; i < 3; ++i)
      if (es.eigenvalues()(i) > 1e-10 * std::max(1.0, top)) ++rank;
    if (rank != 1 || top < 1e-10) ok = false;
    note << "(2,3,2) probe Gram rank " << rank << "; ";
  }
  r.detail = note.str();
  r.pass = ok;
  return r;
}

// A5: the recursive functional is a nonzero multiple of the averaging
// oracle <., v_W> on the Speh subspace, for every tested split; it is also
// psi_{(k,c)}-equivariant on the full model.
inline CheckResult check_A5(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A5"};
  std::ostringstream note;
  bool ok = true;
  struct SplitCase {
    Case cs;
    int c1;
  };
  for (const SplitCase& sc : std::vector<SplitCase>{
           {{2, 2, 2, 0}, 1}, {{2, 2, 3, 0}, 1}, {{2, 3, 2, 0}, 1}, {{2, 3, 2, 0}, 2}}) {
    if (!cfg.wants_q(sc.cs.q)) continue;
    auto M = ws.model(sc.cs.q, sc.cs.k, sc.cs.c, sc.cs.tau_id);
    VectorXcd L = sc.c1 == 1 ? M->functional() : M->kc_functional_recursive(sc.c1);
    VectorXcd Lavg = M->whittaker_vector().conjugate();
    Rng rng(ws.seed() + 808);
    std::vector<cd> as, bs;
    for (int t = 0; t < 10; ++t) {
      VectorXcd x = M->speh_project_product(M->random_vector(rng));
      x /= x.norm();
      as.push_back(L.transpose() * x);
      bs.push_back(Lavg.transpose() * x);
    }
    cd num = 0, den = 0;
    for (int t = 0; t < 10; ++t) {
      num += as[t] * std::conj(bs[t]);
      den += bs[t] * std::conj(bs[t]);
    }
    cd alpha = num / den;
    if (std::abs(alpha) < cfg.tol) ok = false;
    for (int t = 0; t < 10; ++t)
      r.residual = std::max(r.residual, std::abs(as[t] - alpha * bs[t]));
    // full-model psi-equivariance of the recursive functional
    const auto& U = M->unipotent_radical();
    const auto& ch = M->unipotent_characters();
    VectorXcd f = M->random_vector(rng);
    for (size_t ui = 0; ui < U.size(); ui += std::max<size_t>(1, U.size() / 16)) {
      cd lhs = L.transpose() * M->apply(U[ui], f);
      cd rhs = ch[ui] * cd(L.transpose() * f);
      r.residual = std::max(r.residual, std::abs(lhs - rhs));
    }
    note << "(" << sc.cs.k << "," << sc.cs.c << "," << sc.cs.q << ") split (" << sc.c1 << ","
         << sc.cs.c - sc.c1 << ") |alpha| " << std::abs(alpha) << "; ";
  }
  r.detail = note.str() + "max residual " + fmt(r.residual);
  r.pass = ok && r.residual < cfg.tol;
  return r;
}

// A6: Bessel-Speh equivariance B(diag^k(h) g) = omega_tau(det h) B(g), with
// B(e) = 1, across 200 random (h, g) pairs.
inline CheckResult check_A6(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A6"};
  struct CountedCase {
    Case cs;
    int count;
  };
  for (const CountedCase& cc : std::vector<CountedCase>{
           {{2, 2, 2, 0}, 100}, {{2, 2, 3, 0}, 70}, {{2, 3, 2, 0}, 30}}) {
    if (!cfg.wants_q(cc.cs.q)) continue;
    auto M = ws.model(cc.cs.q, cc.cs.k, cc.cs.c, cc.cs.tau_id);
    r.residual =
        std::max(r.residual, std::abs(M->bessel(FqMat::identity(M->n(), M->q())) - cd(1.0)));
    Rng rng(ws.seed() + 909);
    for (int t = 0; t < cc.count; ++t) {
      FqMat h = random_invertible(cc.cs.c, cc.cs.q, rng);
      FqMat g = random_invertible(M->n(), cc.cs.q, rng);
      cd lhs = M->bessel(diag_k(h, cc.cs.k) * g);
      cd rhs = M->tau().omega(h.det()) * M->bessel(g);
      r.residual = std::max(r.residual, std::abs(lhs - rhs));
    }
  }
  r.detail = "B(e)=1 and diag^k equivariance on 200 random (h,g); max residual " + fmt(r.residual);
  r.pass = r.residual < cfg.tol;
  return r;
}

// A7: |gamma-tilde| = 1 whenever tau-dual is not in the cuspidal support.
inline CheckResult check_A7(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A7"};
  std::ostringstream note;
  int rows = 0;
  if (cfg.wants_q(3)) {
    for (int t = 0; t < 3; ++t) {
      auto M = ws.model(3, 2, 1, t);
      for (int e = 0; e < 2; ++e) {
        Rep pi = det_character_rep(1, 3, MultiplicativeCharacter(3, e));
        auto g = gk_gamma(*M, pi);
        r.residual = std::max(r.residual, std::abs(std::abs(g.gamma_tilde) - 1.0));
        r.residual = std::max(r.residual, g.schur_residual);
        ++rows;
      }
    }
    // c = 2 with cuspidal pi not isomorphic to tau-dual
    auto M = ws.model(3, 2, 2, 0);
    for (int p = 1; p < 3; ++p) {
      Rep pi = ws.cuspidals(2, 3)[p]->rep;
      if (is_isomorphic(pi, M->tau().rep.contragredient())) continue;
      auto g = gk_gamma(*M, pi);
      r.residual = std::max(r.residual, std::abs(std::abs(g.gamma_tilde) - 1.0));
      r.residual = std::max(r.residual, g.schur_residual);
      ++rows;
    }
  }
  if (cfg.wants_q(2))
    note << "q=2,k=2,c=2 cuspidal pi != tau-dual: n/a (GL_2(F_2) has a single cuspidal); ";
  note << rows << " rows checked; max | |gamma|-1 | and Schur residual " << fmt(r.residual);
  r.detail = note.str();
  r.pass = r.residual < cfg.tol;
  return r;
}

// A8: exceptional value gamma-tilde = -q^{-c/2} for pi = tau-dual, k = c = 2.
inline CheckResult check_A8(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A8"};
  std::ostringstream note;
  bool flag_ok = true;
  for (int q : {2, 3}) {
    if (!cfg.wants_q(q)) continue;
    int ntau = q == 2 ? 1 : 3;
    for (int t = 0; t < ntau; ++t) {
      auto M = ws.model(q, 2, 2, t);
      Rep piD = M->tau().rep.contragredient();
      auto g = gk_gamma(*M, piD);
      double expect = -std::pow(double(q), -1.0);
      r.residual = std::max(r.residual, std::abs(g.gamma_tilde - cd(expect)));
      r.residual = std::max(r.residual, g.schur_residual);
      if (!g.exceptional) flag_ok = false;
      note << "q=" << q << " tau" << t << " gt=" << g.gamma_tilde.real() << "; ";
    }
  }
  r.detail = note.str() + "max residual " + fmt(r.residual);
  r.pass = flag_ok && r.residual < cfg.tol;
  return r;
}

// A9: operator functional equation Zdual(W) = gamma-tilde Z(W) for 10 random
// W per non-exceptional case.
inline CheckResult check_A9(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A9"};
  int rows = 0;
  auto run = [&](std::shared_ptr<InducedModel> M, const Rep& pi) {
    auto g = gk_gamma(*M, pi);
    cd gt = g.gamma_tilde + cfg.perturb;
    Rng rng(ws.seed() + 1111 + rows);
    for (int t = 0; t < 10; ++t) {
      VectorXcd f = M->c() == 1 ? M->random_vector(rng)
                                : M->speh_project_product(M->random_vector(rng));
      MatrixXcd Z = zeta_op(*M, M->functional(), f, pi);
      MatrixXcd dZ = dual_zeta_op(*M, M->functional(), f, pi);
      r.residual = std::max(r.residual, (dZ - gt * Z).cwiseAbs().maxCoeff());
    }
    ++rows;
  };
  if (cfg.wants_q(2)) run(ws.model(2, 2, 1, 0), det_character_rep(1, 2, MultiplicativeCharacter(2, 0)));
  if (cfg.wants_q(3)) {
    for (int e = 0; e < 2; ++e)
      run(ws.model(3, 2, 1, 0), det_character_rep(1, 3, MultiplicativeCharacter(3, e)));
    run(ws.model(3, 2, 1, 1), det_character_rep(1, 3, MultiplicativeCharacter(3, 0)));
    run(ws.model(3, 2, 1, 2), det_character_rep(1, 3, MultiplicativeCharacter(3, 1)));
    auto M = ws.model(3, 2, 2, 0);
    for (int p = 1; p < 3; ++p) {
      Rep pi = ws.cuspidals(2, 3)[p]->rep;
      if (!is_isomorphic(pi, M->tau().rep.contragredient())) run(M, pi);
    }
  }
  r.detail = std::to_string(rows) + " cases x 10 random W; max operator residual " +
             fmt(r.residual);
  r.pass = r.residual < cfg.tol;
  return r;
}

// A10: exceptional modified functional equation, long form (both T
// coefficients) and simple form; sensitivity control with gamma + 0.1.
inline CheckResult check_A10(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A10"};
  std::ostringstream note;
  bool control_ok = true;
  for (int q : {2, 3}) {
    if (!cfg.wants_q(q)) continue;
    auto M = ws.model(q, 2, 2, 0);
    Rep piD = M->tau().rep.contragredient();
    Rng rng(ws.seed() + 1212);
    for (int t = 0; t < 10; ++t) {
      VectorXcd f = M->speh_project_product(M->random_vector(rng));
      VectorXcd vPi(piD.dim), vD(piD.dim);
      for (int i = 0; i < piD.dim; ++i) {
        vPi[i] = rng.cgauss();
        vD[i] = rng.cgauss();
      }
      auto res = modified_fe_check(*M, piD, f, vPi, vD, cfg.perturb);
      r.residual = std::max({r.residual, res.long_t0, res.long_t1, res.simple});
    }
    // sensitivity on the Bessel datum: perturbing gamma by 0.1 must break it
    cd ellv = M->functional().transpose() * M->whittaker_vector();
    VectorXcd fB = M->whittaker_vector() / ellv;
    VectorXcd vD = M->tau().whit_vec;
    VectorXcd vPi = vD.conjugate() / vD.squaredNorm();
    auto bad = modified_fe_check(*M, piD, fB, vPi, vD, 0.1);
    if (bad.simple <= 1e-3) control_ok = false;
    note << "q=" << q << " perturbed control " << fmt(bad.simple) << "; ";
  }
  r.detail = note.str() + "max residual " + fmt(r.residual);
  r.pass = control_ok && r.residual < cfg.tol;
  return r;
}

// A11: Lambda_2-dual normalization equals 1/dim tau.
inline CheckResult check_A11(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A11"};
  std::ostringstream note;
  for (int q : {2, 3}) {
    if (!cfg.wants_q(q)) continue;
    int ntau = q == 2 ? 1 : 3;
    for (int t = 0; t < ntau; ++t) {
      auto M = ws.model(q, 2, 2, t);
      cd val = lambda2_dual_normalization(*M);
      double expect = 1.0 / M->tau().rep.dim;
      r.residual = std::max(r.residual, std::abs(val - cd(expect)));
      note << "q=" << q << " tau" << t << " value " << val.real() << "; ";
    }
  }
  r.detail = note.str() + "max residual " + fmt(r.residual);
  r.pass = r.residual < cfg.tol;
  return r;
}

// A12: local functional equation as an exact rational-function identity;
// exceptional local gamma matches the JPSS closed form coefficientwise.
inline CheckResult check_A12(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A12"};
  std::ostringstream note;
  bool control_ok = true;
  const double coeff_tol = 1e-10;
  // non-exceptional rows: constants on both sides
  if (cfg.wants_q(3)) {
    auto M = ws.model(3, 2, 1, 0);
    Rng rng(ws.seed() + 1313);
    for (int e = 0; e < 2; ++e) {
      Rep pi = det_character_rep(1, 3, MultiplicativeCharacter(3, e));
      auto g = gk_gamma(*M, pi);
      LevelZeroParams p;
      p.q = 3;
      p.k = 2;
      p.c = 1;
      p.exceptional = false;
      FqMat minus1(1, 3);
      minus1.at(0, 0) = 2;
      p.omega_pi_minus1 = pi(minus1)(0, 0);
      for (int t = 0; t < 2; ++t) {
        VectorXcd f = M->random_vector(rng);
        MatrixXcd Z = zeta_op(*M, M->functional(), f, pi);
        MatrixXcd dZ = dual_zeta_op(*M, M->functional(), f, pi);
        RatFun Zr = local_zeta(p, Z(0, 0), 0.0);
        RatFun dZr = local_dual_zeta(p, dZ(0, 0), 0.0);
        RatFun gam = local_gamma(p, g.gamma) + RatFun(cd(cfg.perturb));
        r.residual = std::max(r.residual, local_functional_equation_residual(p, Zr, dZr, gam));
      }
    }
  }
  // exceptional rows
  for (int q : {2, 3}) {
    if (!cfg.wants_q(q)) continue;
    auto M = ws.model(q, 2, 2, 0);
    Rep piD = M->tau().rep.contragredient();
    auto g = gk_gamma(*M, piD);
    LevelZeroParams p;
    p.q = q;
    p.k = 2;
    p.c = 2;
    p.exceptional = true;
    p.omega_tau_minus1 = M->tau().omega_minus1();
    p.omega_pi_minus1 = std::conj(M->tau().omega_minus1());
    Rng rng(ws.seed() + 1414);
    for (int t = 0; t < 3; ++t) {
      VectorXcd f, vPi(piD.dim), vD(piD.dim);
      if (t == 0) {  // Bessel datum
        cd ellv = M->functional().transpose() * M->whittaker_vector();
        f = M->whittaker_vector() / ellv;
        vD = M->tau().whit_vec;
        vPi = vD.conjugate() / vD.squaredNorm();
      } else {
        f = M->speh_project_product(M->random_vector(rng));
        for (int i = 0; i < piD.dim; ++i) {
          vPi[i] = rng.cgauss();
          vD[i] = rng.cgauss();
        }
      }
      auto ed = exceptional_data(*M, piD, f, vPi, vD);
      int c = 2;
      double bracket_pref = std::pow(double(q), -double(c) * c * (c - 2) / 2.0);
      RatFun Zr = local_zeta(p, ed.Zfin, ed.L2);
      RatFun dZr = local_dual_zeta(p, ed.dZfin, bracket_pref * ed.D2sum);
      RatFun gam = local_gamma(p, g.gamma) + RatFun(cd(cfg.perturb));
      double fe = local_functional_equation_residual(p, Zr, dZr, gam);
      r.residual = std::max(r.residual, fe);
      RatFun jp = jpss_gamma(p);
      r.residual = std::max(r.residual, gam.eq_residual(jp));
      if (t == 0) {
        // degrees and zero/pole placement of the exceptional local gamma
        if (gam.num().degree() != 1 || gam.den().degree() != 1) control_ok = false;
        double z = std::abs(gam.num().eval(1.0)) / std::max(1.0, gam.num().max_abs());
        double pl = std::abs(gam.den().eval(std::pow(double(q), -2.0)));
        if (z > coeff_tol || pl > coeff_tol) control_ok = false;
        // control: gamma off by 1e-2 must break the identity
        RatFun bad = local_gamma(p, g.gamma) + RatFun(cd(1e-2));
        if (local_functional_equation_residual(p, Zr, dZr, bad) <= coeff_tol) control_ok = false;
      }
    }
    note << "q=" << q << " exceptional identity ok; ";
  }
  r.detail = note.str() + "max coefficient residual " + fmt(r.residual);
  r.pass = control_ok && r.residual < coeff_tol;
  return r;
}

// A13: Appendix swap identity for every cuspidal of GL_2(F_2), GL_2(F_3),
// GL_3(F_2).
inline CheckResult check_A13(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"A13"};
  std::ostringstream note;
  int count = 0;
  auto run = [&](int n, int q) {
    for (const auto& tau : ws.cuspidals(n, q)) {
      r.residual = std::max(r.residual, swap_identity_residual(tau->rep));
      ++count;
    }
  };
  if (cfg.wants_q(2)) {
    run(2, 2);
    run(3, 2);
  }
  if (cfg.wants_q(3)) run(2, 3);
  note << count << " cuspidal representations; max residual " << fmt(r.residual);
  r.detail = note.str();
  r.pass = r.residual < cfg.tol;
  return r;
}

// S1 (stretch): matrix-free (k,c,q) = (3,2,2) pipeline; |gamma-tilde| = 1.
inline CheckResult check_S1(Workspace& ws, const VerifyConfig& cfg) {
  using namespace verify_detail;
  CheckResult r{"S1"};
  if (!cfg.wants_q(2)) {
    r.detail = "skipped by --q filter";
    r.pass = true;
    return r;
  }
  auto M = ws.model(2, 3, 2, 0);
  Rep pi = ws.cuspidals(2, 2)[0]->rep;
  auto g = gk_gamma(*M, pi);
  r.residual = std::max(std::abs(std::abs(g.gamma_tilde) - 1.0), g.schur_residual);
  std::ostringstream note;
  note << "(3,2,2) tau dim 3, model dim " << M->dim() << ", gamma-tilde = ("
       << g.gamma_tilde.real() << ", " << g.gamma_tilde.imag() << "), | |gt|-1 | = "
       << fmt(std::abs(std::abs(g.gamma_tilde) - 1.0));
  r.detail = note.str();
  r.pass = r.residual < 1e-6;
  return r;
}

using CheckFn = CheckResult (*)(Workspace&, const VerifyConfig&);

inline const std::vector<std::pair<std::string, CheckFn>>& all_checks() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"A1", check_A1},   {"A2", check_A2},   {"A3", check_A3},  {"A4", check_A4},
      {"A5", check_A5},   {"A6", check_A6},   {"A7", check_A7},  {"A8", check_A8},
      {"A9", check_A9},   {"A10", check_A10}, {"A11", check_A11}, {"A12", check_A12},
      {"A13", check_A13}, {"S1", check_S1},
  };
  return table;
}

inline std::vector<std::string> suite_criteria(const std::string& suite, bool with_stretch) {
  std::map<std::string, std::vector<std::string>> suites = {
      {"hecke", {"A1"}},
      {"projectors", {"A2", "A3"}},
      {"whittaker", {"A4", "A5", "A6"}},
      {"gamma", {"A7", "A8", "A9", "A10", "A11", "A13"}},
      {"local", {"A12"}},
      {"all", {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10", "A11", "A12", "A13"}},
      {"stretch", {"S1"}},
  };
  auto it = suites.find(suite);
  if (it == suites.end()) throw DomainError("unknown suite: " + suite);
  auto v = it->second;
  if (with_stretch && suite == "all") v.push_back("S1");
  return v;
}

inline CheckResult run_criterion(const std::string& id, Workspace& ws, const VerifyConfig& cfg) {
  for (const auto& [name, fn] : all_checks())
    if (name == id) {
      auto t0 = std::chrono::steady_clock::now();
      CheckResult r = fn(ws, cfg);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      return r;
    }
  throw DomainError("unknown criterion: " + id);
}

// Runs a suite; checks are independent and may run on a small worker pool,
// with results assembled in order.
inline SuiteReport run_suite(const std::string& suite, Workspace& ws, const VerifyConfig& cfg,
                             bool with_stretch = false) {
  SuiteReport rep;
  rep.suite = suite;
  auto ids = suite_criteria(suite, with_stretch);
  if (cfg.threads <= 1) {
    for (const auto& id : ids) rep.checks.push_back(run_criterion(id, ws, cfg));
    return rep;
  }
  // Each worker gets its own workspace so caches are not shared mutably.
  std::vector<std::future<CheckResult>> futs;
  for (const auto& id : ids)
    futs.push_back(std::async(std::launch::async, [id, &cfg]() {
      Workspace local(cfg.seed);
      return run_criterion(id, local, cfg);
    }));
  for (auto& f : futs) rep.checks.push_back(f.get());
  return rep;
}

}  // namespace spehlab
