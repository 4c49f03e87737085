#pragma once

// Level-zero local factors, realized symbolically. The local field enters
// only through valuations, residue reductions, and the unit images
// omega(pi); all s-dependence sits in X = omega_Pi(pi) omega_rho(pi) q^{-cs}
// and Y = q^{-c}/X.

#include "spehlab/gamma.hpp"
#include "spehlab/ratfun.hpp"

namespace spehlab {

struct LevelZeroParams {
  int q = 2, k = 2, c = 1;
  cd u_Pi = 1.0;           // omega_Pi(uniformizer)
  cd u_rho = 1.0;          // omega_rho(uniformizer)
  cd omega_tau_minus1 = 1.0;
  cd omega_pi_minus1 = 1.0;
  bool exceptional = false;

  void check() const {
    if (std::abs(std::abs(u_Pi) - 1.0) > 1e-9 || std::abs(std::abs(u_rho) - 1.0) > 1e-9)
      throw DomainError("uniformizer images must be unit complex numbers");
    if (exceptional && k != c) throw DomainError("exceptional data requires k = c");
  }
};

// Y = q^{-c}/X as a rational function of X.
inline RatFun level_zero_Y(const LevelZeroParams& p) {
  double qc = std::pow(double(p.q), -double(p.c));
  return RatFun(Poly::constant(qc), Poly::X());
}

// Z(X) = Z_fin, or in the exceptional case
// Z_fin + q^{-c^2/2} (q^{c/2} X / (1-X)) lambda2_term.
inline RatFun local_zeta(const LevelZeroParams& p, cd z_fin, cd lambda2_term) {
  p.check();
  if (!p.exceptional) return RatFun(z_fin);
  RatFun X = RatFun::X();
  RatFun one(cd(1.0));
  double pref = std::pow(double(p.q), -double(p.c) * p.c / 2.0) * std::pow(double(p.q), p.c / 2.0);
  return RatFun(z_fin) + (X / (one - X)) * (pref * lambda2_term);
}

// Zdual(X) = dZ_fin, or dZ_fin + q^{-binom(c,2)} (Y/(1-Y)) lambda2dual_term,
// with lambda2dual_term the full X-summed bracket.
inline RatFun local_dual_zeta(const LevelZeroParams& p, cd dz_fin, cd lambda2dual_term) {
  p.check();
  if (!p.exceptional) return RatFun(dz_fin);
  RatFun Y = level_zero_Y(p);
  RatFun one(cd(1.0));
  double pref = std::pow(double(p.q), -double(p.c) * (p.c - 1) / 2.0);
  return RatFun(dz_fin) + (Y / (one - Y)) * (pref * lambda2dual_term);
}

// Non-exceptional: the constant gamma = omega_pi(-1)^{k-1} gamma-tilde.
// Exceptional: omega_tau(-1)^{c-1} q^{c/2} (-1 + (1-q^{-c})/(1-Y)).
inline RatFun local_gamma(const LevelZeroParams& p, cd gamma_fin) {
  p.check();
  if (!p.exceptional) return RatFun(gamma_fin);
  RatFun Y = level_zero_Y(p);
  RatFun one(cd(1.0));
  double qc = std::pow(double(p.q), -double(p.c));
  cd w = (p.c - 1) % 2 ? p.omega_tau_minus1 : cd(1.0);
  RatFun inner = RatFun(cd(-1.0)) + RatFun(cd(1.0 - qc)) / (one - Y);
  return inner * (w * std::pow(double(p.q), p.c / 2.0));
}

// The Jacquet--Piatetski-Shapiro--Shalika closed form, built along its own
// printed expression: omega_tau(-1)^{c-1} (q^{c(s-1/2)}/u) (1-X)/(1-Y),
// where q^{c(s-1/2)}/u = q^{-c/2}/X.
inline RatFun jpss_gamma(const LevelZeroParams& p) {
  p.check();
  if (p.k != p.c) throw DomainError("JPSS closed form stated for the exceptional case");
  RatFun X = RatFun::X();
  RatFun Y = level_zero_Y(p);
  RatFun one(cd(1.0));
  cd w = (p.c - 1) % 2 ? p.omega_tau_minus1 : cd(1.0);
  double qch = std::pow(double(p.q), -double(p.c) / 2.0);
  return (RatFun(cd(qch)) / X) * ((one - X) / (one - Y)) * w;
}

// dualZ(X) = omega_pi(-1)^{k-1} gamma(X) Z(X) as an identity of rational
// functions; returns the cross-multiplied coefficient residual.
inline double local_functional_equation_residual(const LevelZeroParams& p, const RatFun& Z,
                                                 const RatFun& dZ, const RatFun& gammaX) {
  cd w = (p.k - 1) % 2 ? p.omega_pi_minus1 : cd(1.0);
  return dZ.eq_residual(gammaX * Z * w);
}

// ---- lifted Whittaker evaluation rules ----

// Wraps a finite (k,c) Whittaker function W = W_f for lift evaluation: the
// lift takes the value u_rho^{val} psi_{(k,c)}(u-bar) W(k0-bar) on its
// supported set and 0 elsewhere.
struct LiftedWhittakerRule {
  const InducedModel* model = nullptr;
  VectorXcd f;       // vector in the Speh subspace defining W
  cd u_rho = 1.0;    // omega_rho(uniformizer)
  cd u_Pi = 1.0;     // used only by diagonal rules on the Pi side

  cd finite_W(const FqMat& g) const {
    return model->whittaker_function(model->functional(), f, g);
  }

  // z = pi^{valuation} (unit part folded into k0); u-bar in U_(c^k)(F_q).
  cd eval(int valuation, const FqMat& u_bar, const FqMat& k0) const {
    KcCharacterData kc{model->k(), model->c(), model->psi()};
    cd phase = psi_kc_eval(kc, u_bar);
    return std::pow(u_rho, valuation) * phase * finite_W(k0);
  }

  // Lift value at diag(t, I_{(k-1)c}), t = diag(pi^{i_1}, ..., pi^{i_c}).
  // Support: all i_j >= 0; for k > c only the all-zero vector survives; for
  // k = c only constant vectors i_j = m, with the Lambda_1 special value.
  cd eval_diag_front(const std::vector<int>& ivals) const {
    int k = model->k(), c = model->c();
    if (int(ivals.size()) != c) throw DomainError("need c valuations");
    bool all_zero = true, all_equal = true;
    for (int v : ivals) {
      if (v < 0) return 0.0;
      if (v != 0) all_zero = false;
      if (v != ivals[0]) all_equal = false;
    }
    if (all_zero) return finite_W(FqMat::identity(k * c, model->q()));
    if (k > c) return 0.0;
    if (k < c) throw DomainError("diagonal rule stated for k >= c");
    if (!all_equal) return 0.0;
    int m = ivals[0];
    MatrixXcd front = curry_front(*model, f, FqMat::identity(k * c, model->q()));
    double qpow =
        std::pow(double(model->q()), -double(m + 1) * (c - 1) * c * (c - 1) / 2.0);
    return std::pow(u_rho, m) * qpow * lambda1_front(*model, front);
  }

  // Lift value at diag(I_{(k-1)c}, t) with valuations -m (dual side).
  cd eval_diag_back(const std::vector<int>& ivals) const {
    int k = model->k(), c = model->c();
    if (int(ivals.size()) != c) throw DomainError("need c valuations");
    bool all_zero = true, all_equal = true;
    for (int v : ivals) {
      if (v > 0) return 0.0;
      if (v != 0) all_zero = false;
      if (v != ivals[0]) all_equal = false;
    }
    if (all_zero) return finite_W(FqMat::identity(k * c, model->q()));
    if (k > c) return 0.0;
    if (k < c) throw DomainError("diagonal rule stated for k >= c");
    if (!all_equal) return 0.0;
    int m = -ivals[0];
    MatrixXcd back = curry_back(*model, f, FqMat::identity(k * c, model->q()));
    double qpow =
        std::pow(double(model->q()), -double(m + 1) * (c - 1) * c * (c - 1) / 2.0);
    return std::pow(u_rho, -m) * qpow * lambda1_dual_back(*model, back);
  }
};

}  // namespace spehlab
