#include <catch2/catch_amalgamated.hpp>

#include "spehlab/speh.hpp"

using namespace spehlab;

namespace {

std::shared_ptr<InducedModel> model(int q, int k, int c, int tau_id = 0) {
  static std::map<std::tuple<int, int, int, int>, std::shared_ptr<InducedModel>> cache;
  auto key = std::make_tuple(q, k, c, tau_id);
  auto it = cache.find(key);
  if (it == cache.end()) {
    static std::map<std::pair<int, int>, std::vector<std::shared_ptr<CuspidalRep>>> taus;
    auto tk = std::make_pair(k, q);
    if (!taus.count(tk)) {
      std::vector<std::shared_ptr<CuspidalRep>> v;
      for (auto& c2 : cuspidal_representations(k, q, AdditiveCharacter(q), 0))
        v.push_back(std::make_shared<CuspidalRep>(std::move(c2)));
      taus[tk] = v;
    }
    it = cache.emplace(key, std::make_shared<InducedModel>(taus[tk][tau_id], c,
                                                           AdditiveCharacter(q), 0))
             .first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("induced model dimensions", "[speh]") {
  CHECK(model(2, 2, 2)->dim() == 35);
  CHECK(model(3, 1, 2)->dim() == 4);
  CHECK(model(3, 2, 2)->dim() == 520);
}

TEST_CASE("induced model equivariance f(pg) = levi-action f(g)", "[speh]") {
  auto M = model(3, 2, 2);
  Rng rng(21);
  VectorXcd f = M->random_vector(rng);
  for (int t = 0; t < 100; ++t) {
    // random p in the parabolic: block Levi times unipotent
    FqMat p(4, 3);
    FqMat h1 = random_invertible(2, 3, rng), h2 = random_invertible(2, 3, rng);
    put_block(p, 0, 0, h1);
    put_block(p, 2, 2, h2);
    for (int i = 0; i < 2; ++i)
      for (int j = 2; j < 4; ++j) p.at(i, j) = uint8_t(rng.below(3));
    FqMat g = random_invertible(4, 3, rng);
    VectorXcd lhs = M->value_at(f, p * g);
    VectorXcd rhs(M->tpow());
    // tensor action tau(h1) (x) tau(h2) on f(g)
    VectorXcd val = M->value_at(f, g);
    const MatrixXcd &A = M->tau().rep(h1), &B = M->tau().rep(h2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        cd acc = 0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) acc += A(a, i) * B(b, j) * val[i * 2 + j];
        rhs[a * 2 + b] = acc;
      }
    REQUIRE((lhs - rhs).norm() < 1e-9);
  }
}

TEST_CASE("hecke operator eigenvalues on a principal series", "[speh]") {
  auto M = model(3, 1, 2, 1);
  MatrixXcd H = M->dense([&](const VectorXcd& x) { return M->hecke_h0(1, x); });
  Eigen::ComplexEigenSolver<MatrixXcd> es(H);
  for (int i = 0; i < H.rows(); ++i) {
    cd ev = es.eigenvalues()[i];
    bool near3 = std::abs(ev - cd(3.0)) < 1e-8;
    bool nearm1 = std::abs(ev - cd(-1.0)) < 1e-8;
    CHECK((near3 || nearm1));
  }
}

TEST_CASE("hecke quadratic relation", "[speh]") {
  for (auto M : {model(3, 1, 2, 1), model(2, 2, 2), model(3, 2, 2)}) {
    Rng rng(31);
    VectorXcd v = M->random_vector(rng);
    VectorXcd h = M->hecke_h0(1, v);
    CHECK((M->hecke_h0(1, h) - M->qk() * v - (M->qk() - 1.0) * h).norm() < 1e-8);
  }
}

TEST_CASE("hecke braid relation and reduced words", "[speh]") {
  auto M = model(2, 1, 3);
  Rng rng(41);
  VectorXcd v = M->random_vector(rng);
  VectorXcd a = M->hecke_h0(1, M->hecke_h0(2, M->hecke_h0(1, v)));
  VectorXcd b = M->hecke_h0(2, M->hecke_h0(1, M->hecke_h0(2, v)));
  CHECK((a - b).norm() < 1e-8);
  CHECK((M->hecke_h0_word({1, 2, 1}, v) - M->hecke_h0_word({2, 1, 2}, v)).norm() < 1e-8);
}

TEST_CASE("poincare polynomial", "[speh]") {
  CHECK(std::abs(poincare_poly(1, 5.0) - cd(1.0)) < 1e-12);
  CHECK(std::abs(poincare_poly(2, 2.0) - cd(3.0)) < 1e-12);
  CHECK(std::abs(poincare_poly(3, 2.0) - cd(21.0)) < 1e-12);
}

TEST_CASE("projector structure", "[speh]") {
  // c = 1: the projector is the identity
  auto M1 = model(2, 2, 1);
  Rng rng(51);
  VectorXcd v1 = M1->random_vector(rng);
  CHECK((M1->speh_project_product(v1) - v1).norm() < 1e-12);

  // k=1, c=2, q=3: rank 1 against rank q
  auto M = model(3, 1, 2, 1);
  MatrixXcd Ps = M->dense([&](const VectorXcd& x) { return M->speh_project_product(x); });
  MatrixXcd St = M->dense([&](const VectorXcd& x) { return M->steinberg_project_product(x); });
  CHECK(std::abs(Ps.trace().real() - 1.0) < 1e-8);
  CHECK(std::abs(St.trace().real() - 3.0) < 1e-8);
  CHECK((Ps * St).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((Ps * Ps - Ps).cwiseAbs().maxCoeff() < 1e-10);

  // sum and product forms agree on (2,2,2), both orderings
  auto M22 = model(2, 2, 2);
  MatrixXcd S = M22->dense([&](const VectorXcd& x) { return M22->speh_project_sum(x); });
  MatrixXcd Plr = M22->dense([&](const VectorXcd& x) { return M22->speh_project_product(x, 1); });
  MatrixXcd Prl = M22->dense([&](const VectorXcd& x) { return M22->speh_project_product(x, -1); });
  CHECK((S - Plr).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((S - Prl).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(std::abs(S.trace().real() - 7.0) < 1e-8);  // dim Speh for (2,2,2)
}

TEST_CASE("whittaker vector is the unique psi-eigenvector in the Speh image", "[speh]") {
  auto M = model(2, 2, 2);
  const VectorXcd& vW = M->whittaker_vector();
  CHECK(std::abs(vW.norm() - 1.0) < 1e-10);
  const auto& U = M->unipotent_radical();
  const auto& ch = M->unipotent_characters();
  for (size_t i = 0; i < U.size(); ++i)
    REQUIRE((M->apply(U[i], vW) - ch[i] * vW).norm() < 1e-8);
  // dense rank of the composite projector is 1
  MatrixXcd Ppsi = M->dense([&](const VectorXcd& x) { return M->psi_project(x); });
  MatrixXcd Ps = M->dense([&](const VectorXcd& x) { return M->speh_project_product(x); });
  CHECK(std::abs((Ppsi * Ps).trace().real() - 1.0) < 1e-8);
}

TEST_CASE("recursive functional: base case and proportionality", "[speh]") {
  // c = 1 grounds at evaluation-at-identity
  auto M1 = model(3, 2, 1);
  CHECK((M1->functional() - M1->tau().ell).norm() < 1e-12);

  auto M = model(2, 2, 2);
  VectorXcd L = M->functional();
  VectorXcd Lavg = M->whittaker_vector().conjugate();
  Rng rng(61);
  cd alpha = 0;
  for (int t = 0; t < 8; ++t) {
    VectorXcd x = M->speh_project_product(M->random_vector(rng));
    cd a = L.transpose() * x;
    cd b = Lavg.transpose() * x;
    if (t == 0) {
      alpha = a / b;
      CHECK(std::abs(alpha) > 1e-8);
    }
    REQUIRE(std::abs(a - alpha * b) < 1e-8);
  }
  // splits (1,2) and (2,1) of the c=3 model give proportional restrictions
  auto M3 = model(2, 2, 3);
  VectorXcd L12 = M3->functional();
  VectorXcd L21 = M3->kc_functional_recursive(2);
  cd ratio = 0;
  for (int t = 0; t < 5; ++t) {
    VectorXcd x = M3->speh_project_product(M3->random_vector(rng));
    cd a = L12.transpose() * x;
    cd b = L21.transpose() * x;
    if (t == 0) {
      ratio = a / b;
      CHECK(std::abs(ratio) > 1e-8);
    }
    REQUIRE(std::abs(a - ratio * b) < 1e-6 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("bessel-speh function", "[speh]") {
  auto M = model(2, 2, 2);
  CHECK(std::abs(M->bessel(FqMat::identity(4, 2)) - cd(1.0)) < 1e-10);
  Rng rng(71);
  for (int t = 0; t < 40; ++t) {
    FqMat h = random_invertible(2, 2, rng);
    FqMat g = random_invertible(4, 2, rng);
    REQUIRE(std::abs(M->bessel(diag_k(h, 2) * g) -
                     M->tau().omega(h.det()) * M->bessel(g)) < 1e-8);
  }
  // c = 1 reduces to the classical Bessel function
  auto M1 = model(2, 2, 1);
  FqMat w(2, 2);
  w.at(0, 1) = 1;
  w.at(1, 0) = 1;
  CHECK(std::abs(M1->bessel(w) - cd(-1.0)) < 1e-10);
}

TEST_CASE("whittaker functions are left psi-equivariant", "[speh]") {
  auto M = model(3, 2, 2);
  Rng rng(81);
  VectorXcd f = M->random_vector(rng);
  const VectorXcd& L = M->functional();
  // W_{v_W}(e) with the oracle functional <., v_W> equals |v_W|^2 = 1
  VectorXcd Lavg = M->whittaker_vector().conjugate();
  CHECK(std::abs(M->whittaker_function(Lavg, M->whittaker_vector(),
                                       FqMat::identity(4, 3)) - cd(1.0)) < 1e-10);
  const auto& U = M->unipotent_radical();
  const auto& ch = M->unipotent_characters();
  for (size_t i = 0; i < U.size(); i += 7) {
    FqMat g = random_invertible(4, 3, rng);
    REQUIRE(std::abs(M->whittaker_function(L, f, U[i] * g) -
                     ch[i] * M->whittaker_function(L, f, g)) < 1e-8);
  }
}
