#pragma once

// Finite Ginzburg-Kaplan theory: the class function B-tilde, the Gamma
// operator and its Schur scalar gamma-tilde, zeta and dual-zeta operators,
// the functional equation, and the exceptional-case functionals
// Lambda_1, Lambda_1-dual, Lambda_2, Lambda_2-dual with the modified
// functional equation.
//
// Pairings between pi (realized as the conjugate model tau-bar) and its
// contragredient are the plain bilinear dot product, which is invariant for
// unitary models.

#include "spehlab/speh.hpp"

namespace spehlab {

inline cd b_tilde(const InducedModel& M, const FqMat& h) {
  if (h.n != M.c() || !h.invertible()) throw DomainError("b_tilde needs h in GL_c");
  return M.bessel(b_tilde_argument(h, M.k()));
}

struct GammaResult {
  cd gamma_tilde = 0.0;
  cd gamma = 0.0;
  double schur_residual = 0.0;
  bool exceptional = false;
};

// Gamma(pi x tau, psi) = q^{(k-2)c^2/2} sum_h Btilde(h) pi(h); gamma-tilde is
// its Schur scalar, gamma = omega_pi(-1)^{k-1} gamma-tilde.
inline GammaResult gk_gamma(const InducedModel& M, const Rep& pi) {
  if (M.k() < 2) throw DomainError("gamma factor needs k >= 2");
  if (pi.n != M.c() || pi.q != M.q()) throw DomainError("pi must be a representation of GL_c(F_q)");
  const GroupTable& Gc = *pi.group;
  MatrixXcd Gamma = MatrixXcd::Zero(pi.dim, pi.dim);
  for (int gi = 0; gi < Gc.size(); ++gi)
    Gamma += b_tilde(M, Gc[gi]) * pi.mats[gi];
  Gamma *= std::pow(double(M.q()), double(M.k() - 2) * M.c() * M.c() / 2.0);
  GammaResult r;
  r.gamma_tilde = Gamma.trace() / double(pi.dim);
  r.schur_residual =
      (Gamma - r.gamma_tilde * MatrixXcd::Identity(pi.dim, pi.dim)).cwiseAbs().maxCoeff();
  cd w = pi.q == 2 ? cd(1.0) : central_character(pi)(pi.q - 1);
  r.gamma = ((M.k() - 1) % 2 ? w : cd(1.0)) * r.gamma_tilde;
  r.exceptional = (M.k() == M.c()) && is_isomorphic(pi, M.tau().rep.contragredient());
  return r;
}

// Z(W, pi x tau) = (1/|GL_c|) sum_h W(diag(h, I)) pi(h), W = W_f w.r.t. ell.
inline MatrixXcd zeta_op(const InducedModel& M, const VectorXcd& ell, const VectorXcd& f,
                         const Rep& pi) {
  const GroupTable& Gc = *pi.group;
  MatrixXcd Z = MatrixXcd::Zero(pi.dim, pi.dim);
  for (int gi = 0; gi < Gc.size(); ++gi)
    Z += M.whittaker_function(ell, f, zeta_argument(Gc[gi], M.k())) * pi.mats[gi];
  return Z / double(Gc.size());
}

// Dual zeta: q^{-(k-2)c^2/2}/|GL_c| sum_h sum_X W([[0,I_c,0],[0,0,I],[h,0,X]]) pi(h).
inline MatrixXcd dual_zeta_op(const InducedModel& M, const VectorXcd& ell, const VectorXcd& f,
                              const Rep& pi) {
  if (M.k() < 2) throw DomainError("dual zeta needs k >= 2");
  const GroupTable& Gc = *pi.group;
  auto Xs = enumerate_dual_zeta_X(M.k(), M.c(), M.q());
  MatrixXcd Z = MatrixXcd::Zero(pi.dim, pi.dim);
  for (int gi = 0; gi < Gc.size(); ++gi) {
    cd wsum = 0;
    for (const auto& x : Xs)
      wsum += M.whittaker_function(ell, f, dual_zeta_argument(Gc[gi], x, M.k()));
    Z += wsum * pi.mats[gi];
  }
  double pref = std::pow(double(M.q()), -double(M.k() - 2) * M.c() * M.c() / 2.0);
  return pref * Z / double(Gc.size());
}

// ---- exceptional case (pi = tau-dual, k = c) ----

// f as an element of tau o Speh(tau, c-1): the tau-coefficient matrix of the
// curried function at g. Rows index tau, columns the (c-1) sub-model.
inline MatrixXcd curry_front(const InducedModel& M, const VectorXcd& f, const FqMat& g) {
  const InducedModel& S = M.sub(M.c() - 1);
  int d = M.tdim();
  long sp = S.tpow();
  MatrixXcd out(d, S.dim());
  int nreps = (S.c() == 1) ? 1 : S.cosets().size();
  for (int r = 0; r < nreps; ++r) {
    FqMat m(M.n(), M.q());
    put_identity_block(m, 0, 0, M.k());
    put_block(m, M.k(), M.k(), S.c() == 1 ? FqMat::identity(S.n(), M.q()) : S.cosets().rep(r));
    VectorXcd val = M.value_at(f, m * g);
    for (int a = 0; a < d; ++a)
      for (long t = 0; t < sp; ++t) out(a, long(r) * sp + t) = val[a * sp + t];
  }
  return out;
}

// f as an element of Speh(tau, c-1) o tau; columns index tau.
inline MatrixXcd curry_back(const InducedModel& M, const VectorXcd& f, const FqMat& g) {
  const InducedModel& S = M.sub(M.c() - 1);
  int d = M.tdim();
  long sp = S.tpow();
  MatrixXcd out(S.dim(), d);
  int nreps = (S.c() == 1) ? 1 : S.cosets().size();
  for (int r = 0; r < nreps; ++r) {
    FqMat m(M.n(), M.q());
    put_block(m, 0, 0, S.c() == 1 ? FqMat::identity(S.n(), M.q()) : S.cosets().rep(r));
    put_identity_block(m, S.n(), S.n(), M.k());
    VectorXcd val = M.value_at(f, m * g);
    for (long t = 0; t < sp; ++t)
      for (int a = 0; a < d; ++a) out(long(r) * sp + t, a) = val[t * d + a];
  }
  return out;
}

namespace detail {

inline void check_exceptional_shape(const InducedModel& M) {
  if (M.k() != M.c()) throw DomainError("exceptional functionals need k = c");
  if (M.c() < 2) throw DomainError("exceptional functionals need c >= 2");
}

// diag(1, -g^{-1}) in GL_c
inline FqMat diag_one_neg_inv(const FqMat& g, int q) {
  PrimeField F(q);
  FqMat gi = g.inverse();
  FqMat m(g.n + 1, q);
  m.at(0, 0) = 1;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) m.at(1 + i, 1 + j) = uint8_t(F.neg(gi.at(i, j)));
  return m;
}

// diag(g, 1) in GL_c
inline FqMat diag_g_one(const FqMat& g, int q) {
  FqMat m(g.n + 1, q);
  put_block(m, 0, 0, g);
  m.at(g.n, g.n) = 1;
  return m;
}

}  // namespace detail

// Lambda_1 on tau (x) Speh(tau, c-1): the special-value functional of the
// lifted Whittaker function at diag(pi^m I_c, I_{c(c-1)}). The argument is
// the curried coefficient matrix (rows tau, cols sub-model).
inline cd lambda1_front(const InducedModel& M, const MatrixXcd& front) {
  detail::check_exceptional_shape(M);
  const InducedModel& S = M.sub(M.c() - 1);
  int q = M.q(), c = M.c();
  GroupTable G1(c - 1, q);
  FqMat kap = kappa_matrix(1, c - 1, c - 1, q);
  auto Y = enumerate_y_group(1, c - 1, c - 1, q);
  cd total = 0;
  for (int gi = 0; gi < G1.size(); ++gi) {
    const FqMat& g = G1[gi];
    // r_a = W_{e_a}(diag(1, -g^{-1})); the tau slot contracts to front^T r
    VectorXcd r = M.tau().rep(detail::diag_one_neg_inv(g, q)).transpose() * M.tau().ell;
    VectorXcd u = front.transpose() * r;
    FqMat lead(S.n(), q);
    put_block(lead, 0, 0, g);
    put_identity_block(lead, c - 1, c - 1, (c - 1) * (c - 1));
    for (const FqMat& y : Y)
      total += S.whittaker_function(S.functional(), u, lead * y * kap);
  }
  return total;
}

inline cd lambda1(const InducedModel& M, const VectorXcd& v_tau, const VectorXcd& F) {
  return lambda1_front(M, v_tau * F.transpose());
}

// Lambda_1-dual on Speh(tau, c-1) (x) tau; argument rows sub-model, cols tau.
inline cd lambda1_dual_back(const InducedModel& M, const MatrixXcd& back) {
  detail::check_exceptional_shape(M);
  const InducedModel& S = M.sub(M.c() - 1);
  int q = M.q(), c = M.c();
  PrimeField Fq(q);
  GroupTable G1(c - 1, q);
  FqMat kap = kappa_matrix(c - 1, 1, c - 1, q);
  auto Y = enumerate_y_group(c - 1, 1, c - 1, q);
  cd total = 0;
  for (int gi = 0; gi < G1.size(); ++gi) {
    const FqMat& g = G1[gi];
    VectorXcd r = M.tau().rep(detail::diag_g_one(g, q)).transpose() * M.tau().ell;
    VectorXcd u = back * r;
    FqMat gi_neg = g.inverse();
    for (int i = 0; i < c - 1; ++i)
      for (int j = 0; j < c - 1; ++j) gi_neg.at(i, j) = uint8_t(Fq.neg(gi_neg.at(i, j)));
    FqMat lead(S.n(), q);
    put_identity_block(lead, 0, 0, (c - 1) * (c - 1));
    put_block(lead, (c - 1) * (c - 1), (c - 1) * (c - 1), gi_neg);
    for (const FqMat& y : Y)
      total += S.whittaker_function(S.functional(), u, lead * y * kap);
  }
  return total;
}

inline cd lambda1_dual(const InducedModel& M, const VectorXcd& F, const VectorXcd& v_tau) {
  return lambda1_dual_back(M, F * v_tau.transpose());
}

// Lambda_2 on tau-dual (x) tau (x) tau (x) Speh(tau,c-1); the last two slots
// are passed as the curried coefficient matrix (rows tau, cols sub-model).
inline cd lambda2(const InducedModel& M, const VectorXcd& vPi, const VectorXcd& vPiDual,
                  const MatrixXcd& front) {
  detail::check_exceptional_shape(M);
  const InducedModel& S = M.sub(M.c() - 1);
  int q = M.q(), c = M.c();
  VectorXcd u = front.transpose() * vPi;  // pair slot 1 against slot 3
  GroupTable G1(c - 1, q);
  FqMat kap = kappa_matrix(1, c - 1, c - 1, q);
  auto Y = enumerate_y_group(1, c - 1, c - 1, q);
  cd total = 0;
  for (int gi = 0; gi < G1.size(); ++gi) {
    const FqMat& g = G1[gi];
    cd wv = M.tau().whittaker(detail::diag_one_neg_inv(g, q), vPiDual);
    FqMat lead(S.n(), q);
    put_block(lead, 0, 0, g);
    put_identity_block(lead, c - 1, c - 1, (c - 1) * (c - 1));
    for (const FqMat& y : Y)
      total += wv * S.whittaker_function(S.functional(), u, lead * y * kap);
  }
  return total / (double(G1.size()) * double(Y.size()));
}

// Lambda_2-dual on tau-dual (x) tau (x) Speh(tau,c-1) (x) tau; slots 3,4 are
// the curried matrix (rows sub-model, cols tau).
inline cd lambda2_dual(const InducedModel& M, const VectorXcd& vPi, const VectorXcd& vPiDual,
                       const MatrixXcd& back) {
  detail::check_exceptional_shape(M);
  const InducedModel& S = M.sub(M.c() - 1);
  int q = M.q(), c = M.c();
  PrimeField Fq(q);
  VectorXcd u = back * vPi;  // pair slot 1 against slot 4
  GroupTable G1(c - 1, q);
  FqMat kap = kappa_matrix(c - 1, 1, c - 1, q);
  auto Y = enumerate_y_group(c - 1, 1, c - 1, q);
  cd total = 0;
  for (int gi = 0; gi < G1.size(); ++gi) {
    const FqMat& g = G1[gi];
    cd wv = M.tau().whittaker(detail::diag_g_one(g, q), vPiDual);
    FqMat gneg = g.inverse();
    for (int i = 0; i < c - 1; ++i)
      for (int j = 0; j < c - 1; ++j) gneg.at(i, j) = uint8_t(Fq.neg(gneg.at(i, j)));
    FqMat lead(S.n(), q);
    put_identity_block(lead, 0, 0, (c - 1) * (c - 1));
    put_block(lead, (c - 1) * (c - 1), (c - 1) * (c - 1), gneg);
    for (const FqMat& y : Y)
      total += wv * S.whittaker_function(S.functional(), u, lead * y * kap);
  }
  return total / (double(G1.size()) * double(Y.size()));
}

// All finite ingredients of the exceptional (pi = tau-dual) identities for
// one datum (f, vPi, vPiDual).
struct ExceptionalData {
  cd Zfin = 0, dZfin = 0;       // <Z(W)v, v-dual>, <Z-dual(W)v, v-dual>
  cd L2 = 0;                    // <v (x) v-dual (x) f_{tau o Speh}(I), Lambda_2>
  cd D2sum = 0;                 // sum_X <v (x) v-dual (x) f_{Speh o tau}(w u_X), Lambda_2-dual>
};

inline ExceptionalData exceptional_data(const InducedModel& M, const Rep& pi, const VectorXcd& f,
                                        const VectorXcd& vPi, const VectorXcd& vPiDual) {
  detail::check_exceptional_shape(M);
  ExceptionalData out;
  const VectorXcd& ell = M.functional();
  MatrixXcd Z = zeta_op(M, ell, f, pi);
  MatrixXcd dZ = dual_zeta_op(M, ell, f, pi);
  out.Zfin = (Z * vPi).transpose() * vPiDual;
  out.dZfin = (dZ * vPi).transpose() * vPiDual;
  out.L2 = lambda2(M, vPi, vPiDual, curry_front(M, f, FqMat::identity(M.n(), M.q())));
  FqMat w = anti_diagonal_w(M.k(), M.c(), M.q());
  int c = M.c(), q = M.q();
  long nx = 1;
  for (int i = 0; i < c * (c - 2) * c; ++i) nx *= q;
  for (long code = 0; code < nx; ++code) {
    FqMat ux = FqMat::identity(M.n(), q);
    long x = code;
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < (c - 2) * c; ++j) {
        ux.at(i, 2 * c + j) = uint8_t(x % q);
        x /= q;
      }
    out.D2sum += lambda2_dual(M, vPi, vPiDual, curry_back(M, f, w * ux));
  }
  return out;
}

struct ModifiedFEResiduals {
  double long_t0 = 0;   // constant coefficient of the long-form identity
  double long_t1 = 0;   // T-coefficient
  double simple = 0;    // simple modified functional equation
};

// Checks the exceptional-case identities; gamma_perturb shifts the
// gamma-tilde value used in the simple form (sensitivity control).
inline ModifiedFEResiduals modified_fe_check(const InducedModel& M, const Rep& pi,
                                             const VectorXcd& f, const VectorXcd& vPi,
                                             const VectorXcd& vPiDual,
                                             double gamma_perturb = 0.0) {
  ExceptionalData d = exceptional_data(M, pi, f, vPi, vPiDual);
  int c = M.c();
  double q = M.q();
  double C2 = double(c) * (c - 1) / 2.0;
  double qc2 = std::pow(q, -C2);            // q^{-binom(c,2)}
  double qcC2 = std::pow(q, -double(c) * C2);  // q^{-c binom(c,2)}
  double qhalf = std::pow(q, double(c) / 2.0);
  ModifiedFEResiduals r;
  // (1-T) Zfin + q^{-C(c,2)} L2 T = (q^{c/2} T - q^{-c/2}) dZfin + q^{-c C(c,2)} D2sum
  r.long_t0 = std::abs(d.Zfin - (-1.0 / qhalf * d.dZfin + qcC2 * d.D2sum));
  r.long_t1 = std::abs(-d.Zfin + qc2 * d.L2 - qhalf * d.dZfin);
  cd gamma_tilde = -std::pow(q, -double(c) / 2.0) + gamma_perturb;
  r.simple = std::abs(d.dZfin - gamma_tilde * d.Zfin - std::pow(q, -double(c) * c / 2.0) * d.L2);
  return r;
}

// The Lambda_2-dual normalization: q^{(c-1) binom(c,2)} < v (x) v-dual (x)
// f_B(w), Lambda_2-dual > = 1/dim tau for the Bessel datum.
inline cd lambda2_dual_normalization(const InducedModel& M) {
  detail::check_exceptional_shape(M);
  const VectorXcd& x_psi = M.tau().whit_vec;
  VectorXcd vPiDual = x_psi;
  VectorXcd vPi = x_psi.conjugate() / x_psi.squaredNorm();  // bilinear pairing = 1
  cd ellv = M.functional().transpose() * M.whittaker_vector();
  if (std::abs(ellv) < 1e-12) throw DiagnosticError("recursive functional vanishes on v_W");
  VectorXcd fB = M.whittaker_vector() / ellv;  // W_{fB} = Bessel-Speh
  FqMat w = anti_diagonal_w(M.k(), M.c(), M.q());
  cd val = lambda2_dual(M, vPi, vPiDual, curry_back(M, fB, w));
  double pref = std::pow(double(M.q()), double(M.c() - 1) * M.c() * (M.c() - 1) / 2.0);
  return pref * val;
}

}  // namespace spehlab
