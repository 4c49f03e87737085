#include <catch2/catch_amalgamated.hpp>

#include "spehlab/levelzero.hpp"

using namespace spehlab;

namespace {

std::shared_ptr<InducedModel> model(int q, int k, int c, int tau_id = 0) {
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<InducedModel>> cache;
  auto key = std::make_tuple(q, k, c, tau_id);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto taus = cuspidal_representations(k, q, AdditiveCharacter(q), 0);
    it = cache.emplace(key, std::make_shared<InducedModel>(
                                std::make_shared<CuspidalRep>(taus[tau_id]), c,
                                AdditiveCharacter(q), 0))
             .first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("rational function arithmetic", "[levelzero]") {
  RatFun X = RatFun::X();
  RatFun one(cd(1.0));
  RatFun f = (one - X) / (one - X);
  CHECK(f == one);
  // 1/(1-X) + X/(1-X) = (1+X)/(1-X)
  RatFun lhs = one / (one - X) + X / (one - X);
  RatFun rhs = (one + X) / (one - X);
  CHECK(lhs == rhs);
  // (1-X) * 1/(1-X) = 1
  CHECK((one - X) * (one / (one - X)) == one);
  CHECK_THROWS_AS(one / RatFun(cd(0.0)), DomainError);
}

TEST_CASE("rational function equality is an equivalence with inverses", "[levelzero]") {
  Rng rng(3);
  auto randpoly = [&](int deg) {
    Poly p;
    for (int i = 0; i <= deg; ++i) p.c.push_back(rng.cgauss());
    p.trim();
    return p;
  };
  for (int t = 0; t < 100; ++t) {
    Poly a = randpoly(2), b = randpoly(2);
    if (a.is_zero() || b.is_zero()) continue;
    RatFun f(a, b), g(b, a);
    REQUIRE(f * g == RatFun(cd(1.0)));
    REQUIRE(f == f);
    // scaling both sides preserves equality
    RatFun f2(a * cd(2.5, 1.0), b * cd(2.5, 1.0));
    REQUIRE(f == f2);
    REQUIRE(f2 == f);
  }
}

TEST_CASE("local zeta shapes and poles", "[levelzero]") {
  LevelZeroParams p;
  p.q = 2;
  p.k = 2;
  p.c = 2;
  p.exceptional = false;
  RatFun z = local_zeta(p, cd(0.25, -0.5), cd(3.0));
  CHECK(z.num().degree() == 0);
  CHECK(z.den().degree() == 0);

  p.exceptional = true;
  RatFun ze = local_zeta(p, cd(0.25), cd(0.0));
  CHECK(ze == RatFun(cd(0.25)));  // vanishing correction term
  RatFun ze2 = local_zeta(p, cd(0.25), cd(1.0));
  CHECK(std::abs(ze2.den().eval(1.0)) < 1e-9);  // pole exactly at X = 1
  RatFun dz = local_dual_zeta(p, cd(0.5), cd(1.0));
  CHECK(std::abs(dz.den().eval(0.25)) < 1e-9);  // pole at X = q^{-c}
  // Y/(1-Y) at X = 2 q^{-c} evaluates to 1
  RatFun Y = level_zero_Y(p);
  RatFun yfrac = Y / (RatFun(cd(1.0)) - Y);
  CHECK(std::abs(yfrac.eval(cd(0.5)) - cd(1.0)) < 1e-12);

  LevelZeroParams bad = p;
  bad.k = 3;
  CHECK_THROWS_AS(local_zeta(bad, cd(1.0), cd(1.0)), DomainError);
}

TEST_CASE("exceptional local gamma: closed forms and zero/pole structure", "[levelzero]") {
  for (int q : {2, 3}) {
    LevelZeroParams p;
    p.q = q;
    p.k = p.c = 2;
    p.exceptional = true;
    p.omega_tau_minus1 = 1.0;
    RatFun g = local_gamma(p, cd(0.0));
    RatFun jp = jpss_gamma(p);
    CHECK(g.eq_residual(jp) < 1e-10);
    CHECK(g.num().degree() == 1);
    CHECK(g.den().degree() == 1);
    CHECK(std::abs(g.num().eval(1.0)) / g.num().max_abs() < 1e-10);       // zero at X = 1
    CHECK(std::abs(g.den().eval(std::pow(double(q), -2.0))) < 1e-10);     // pole at q^{-c}
  }
  // non-exceptional output is the constant gamma
  LevelZeroParams p;
  p.q = 3;
  p.k = 2;
  p.c = 1;
  RatFun g = local_gamma(p, cd(0.1, -0.7));
  CHECK(g == RatFun(cd(0.1, -0.7)));
}

TEST_CASE("local functional equation as an exact identity", "[levelzero]") {
  // non-exceptional constants
  {
    auto M = model(3, 2, 1);
    Rep pi = det_character_rep(1, 3, MultiplicativeCharacter(3, 1));
    auto gf = gk_gamma(*M, pi);
    LevelZeroParams p;
    p.q = 3;
    p.k = 2;
    p.c = 1;
    FqMat m1(1, 3);
    m1.at(0, 0) = 2;
    p.omega_pi_minus1 = pi(m1)(0, 0);
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
      VectorXcd f = M->random_vector(rng);
      cd Z = zeta_op(*M, M->functional(), f, pi)(0, 0);
      cd dZ = dual_zeta_op(*M, M->functional(), f, pi)(0, 0);
      double res = local_functional_equation_residual(p, local_zeta(p, Z, 0.0),
                                                      local_dual_zeta(p, dZ, 0.0),
                                                      local_gamma(p, gf.gamma));
      REQUIRE(res < 1e-8);
    }
  }
  // exceptional rational identity
  for (int q : {2, 3}) {
    auto M = model(q, 2, 2);
    Rep piD = M->tau().rep.contragredient();
    auto gf = gk_gamma(*M, piD);
    LevelZeroParams p;
    p.q = q;
    p.k = p.c = 2;
    p.exceptional = true;
    p.omega_tau_minus1 = M->tau().omega_minus1();
    p.omega_pi_minus1 = std::conj(M->tau().omega_minus1());
    Rng rng(11);
    VectorXcd f = M->speh_project_product(M->random_vector(rng));
    VectorXcd vPi(piD.dim), vD(piD.dim);
    for (int i = 0; i < piD.dim; ++i) {
      vPi[i] = rng.cgauss();
      vD[i] = rng.cgauss();
    }
    auto ed = exceptional_data(*M, piD, f, vPi, vD);
    RatFun Z = local_zeta(p, ed.Zfin, ed.L2);
    RatFun dZ = local_dual_zeta(p, ed.dZfin, ed.D2sum);
    RatFun gam = local_gamma(p, gf.gamma);
    REQUIRE(local_functional_equation_residual(p, Z, dZ, gam) < 1e-8);
    // control: a perturbed gamma breaks the identity
    RatFun gam_bad = gam + RatFun(cd(1e-2));
    CHECK(local_functional_equation_residual(p, Z, dZ, gam_bad) > 1e-8);
  }
}

TEST_CASE("lifted whittaker evaluation", "[levelzero]") {
  // (k,c) = (2,1): exhaustive over GL_2(F_2)
  {
    auto M = model(2, 2, 1);
    Rng rng(13);
    LiftedWhittakerRule rule{M.get(), M->random_vector(rng), unit_root(0.3), cd(1.0)};
    GroupTable G(2, 2);
    for (int i = 0; i < G.size(); ++i)
      REQUIRE(std::abs(rule.eval(0, FqMat::identity(2, 2), G[i]) - rule.finite_W(G[i])) < 1e-12);
    // valuation enters through u_rho; the psi factor through psi_{(k,c)}
    FqMat u = FqMat::identity(2, 2);
    u.at(0, 1) = 1;
    cd base = rule.finite_W(G[0]);
    CHECK(std::abs(rule.eval(2, u, G[0]) -
                   std::pow(unit_root(0.3), 2) * M->psi()(1) * base) < 1e-12);
  }
  // (k,c) = (2,2): sampled over GL_4(F_2); k = c diagonal rules
  {
    auto M = model(2, 2, 2);
    Rng rng(17);
    VectorXcd f = M->speh_project_product(M->random_vector(rng));
    LiftedWhittakerRule rule{M.get(), f, cd(1.0), cd(1.0)};
    for (int t = 0; t < 1000; ++t) {
      FqMat k0 = random_invertible(4, 2, rng);
      REQUIRE(std::abs(rule.eval(0, FqMat::identity(4, 2), k0) - rule.finite_W(k0)) < 1e-12);
    }
    CHECK(std::abs(rule.eval_diag_front({1, 0})) < 1e-14);  // mixed valuations vanish
    CHECK(std::abs(rule.eval_diag_back({0, 1})) < 1e-14);   // wrong sign vanishes
    cd v1 = rule.eval_diag_front({1, 1});
    cd v2 = rule.eval_diag_front({2, 2});
    CHECK(std::abs(v1) > 1e-12);
    CHECK(std::abs(v2 / v1 - cd(0.5)) < 1e-9);  // ratio q^{-(c-1) c(c-1)/2}
  }
  // k > c: nonzero diagonal valuations vanish (support logic only, so a raw
  // model vector is enough)
  {
    auto M = model(2, 3, 2);
    Rng rng(19);
    VectorXcd f = M->random_vector(rng);
    LiftedWhittakerRule rule{M.get(), f, cd(1.0), cd(1.0)};
    CHECK(std::abs(rule.eval_diag_front({1, 1})) < 1e-14);
    CHECK(std::abs(rule.eval_diag_front({2, 1})) < 1e-14);
    CHECK(std::abs(rule.eval_diag_front({0, 0}) -
                   rule.finite_W(FqMat::identity(6, 2))) < 1e-12);
  }
}
