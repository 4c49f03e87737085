#include <catch2/catch_amalgamated.hpp>

#include "spehlab/repcore.hpp"

using namespace spehlab;

namespace {

GGDecomposition& gg_decomposition(int n, int q) {
  static std::map<std::pair<int, int>, GGDecomposition> cache;
  auto key = std::make_pair(n, q);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto gg = std::make_shared<GelfandGraev>(n, q, AdditiveCharacter(q));
    it = cache.emplace(key, decompose_multiplicity_free(gg, 0)).first;
  }
  return it->second;
}

std::vector<CuspidalRep>& cuspidals(int n, int q) {
  static std::map<std::pair<int, int>, std::vector<CuspidalRep>> cache;
  auto key = std::make_pair(n, q);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, cuspidal_representations(n, q, AdditiveCharacter(q), 0)).first;
  return it->second;
}

std::vector<int> dims_of(const GGDecomposition& d) {
  std::vector<int> out;
  for (const auto& c : d.constituents) out.push_back(c.dim);
  return out;
}

}  // namespace

TEST_CASE("Gelfand-Graev dimensions", "[repcore]") {
  CHECK(GelfandGraev(2, 2, AdditiveCharacter(2)).dim() == 3);
  CHECK(GelfandGraev(2, 3, AdditiveCharacter(3)).dim() == 16);
  CHECK(GelfandGraev(3, 2, AdditiveCharacter(2)).dim() == 21);
}

TEST_CASE("multiplicity-free decompositions", "[repcore]") {
  CHECK(dims_of(gg_decomposition(2, 2)) == std::vector<int>{1, 2});
  CHECK(dims_of(gg_decomposition(2, 3)) == std::vector<int>{2, 2, 2, 3, 3, 4});
  CHECK(dims_of(gg_decomposition(3, 2)) == std::vector<int>{3, 3, 7, 8});
  // dims sum to the module dimension and constituents are pairwise distinct
  auto& d = gg_decomposition(2, 3);
  int total = 0;
  for (auto& c : d.constituents) total += c.dim;
  CHECK(total == 16);
  for (size_t i = 0; i < d.reps.size(); ++i)
    for (size_t j = i + 1; j < d.reps.size(); ++j)
      CHECK_FALSE(is_isomorphic(d.reps[i], d.reps[j]));
}

TEST_CASE("representation homomorphism property", "[repcore]") {
  auto& d = gg_decomposition(2, 3);
  Rng rng(5);
  for (const Rep& r : d.reps) {
    for (int t = 0; t < 200; ++t) {
      FqMat g = random_invertible(2, 3, rng);
      FqMat h = random_invertible(2, 3, rng);
      REQUIRE((r(g) * r(h) - r(g * h)).cwiseAbs().maxCoeff() < 1e-8);
    }
    // unitary
    FqMat g = random_invertible(2, 3, rng);
    REQUIRE((r(g) * r(g).adjoint() - MatrixXcd::Identity(r.dim, r.dim)).cwiseAbs().maxCoeff() <
            1e-8);
  }
}

TEST_CASE("cuspidality", "[repcore]") {
  auto& d22 = gg_decomposition(2, 2);
  CHECK(cuspidality_test(d22.reps[0]));        // the 1-dimensional constituent
  CHECK_FALSE(cuspidality_test(d22.reps[1]));  // Steinberg
  auto& d23 = gg_decomposition(2, 3);
  for (int i = 0; i < 3; ++i) CHECK(cuspidality_test(d23.reps[i]));  // the dim-2 constituents
  for (int i = 3; i < 6; ++i) CHECK_FALSE(cuspidality_test(d23.reps[i]));
}

TEST_CASE("cuspidal counts and dimensions", "[repcore]") {
  // count (q^2-q)/2 for GL_2, dimension prod_{i<k}(q^i-1)
  CHECK(cuspidals(2, 2).size() == 1);
  CHECK(cuspidals(2, 3).size() == 3);
  CHECK(cuspidals(2, 5).size() == 10);
  for (auto& c : cuspidals(2, 5)) CHECK(c.rep.dim == 4);
  // GL_3(F_2): two cuspidals of dimension (2-1)(4-1) = 3
  CHECK(cuspidals(3, 2).size() == 2);
  for (auto& c : cuspidals(3, 2)) CHECK(c.rep.dim == 3);
}

TEST_CASE("central characters", "[repcore]") {
  Rep triv = det_character_rep(2, 3, MultiplicativeCharacter(3, 0));
  CHECK(central_character(triv).trivial());
  for (auto& c : cuspidals(2, 2)) CHECK(std::abs(c.omega_minus1() - cd(1.0)) < 1e-12);
  for (auto& c : cuspidals(2, 3)) {
    FqMat mI(2, 3);
    mI.at(0, 0) = 2;
    mI.at(1, 1) = 2;
    cd w = c.omega_minus1();
    CHECK(std::abs(std::abs(w) - 1.0) < 1e-9);
    CHECK((c.rep(mI) - w * MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("Whittaker data and Bessel functions", "[repcore]") {
  auto& cs = cuspidals(2, 2);
  const CuspidalRep& sign = cs[0];
  CHECK(std::abs(sign.bessel(FqMat::identity(2, 2)) - cd(1.0)) < 1e-12);
  FqMat w(2, 2);
  w.at(0, 1) = 1;
  w.at(1, 0) = 1;
  CHECK(std::abs(sign.bessel(w) - cd(-1.0)) < 1e-12);

  // two-sided equivariance for a GL_2(F_3) cuspidal
  const CuspidalRep& tau = cuspidals(2, 3)[0];
  AdditiveCharacter psi(3);
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    FqMat g = random_invertible(2, 3, rng);
    for (int x = 0; x < 3; ++x) {
      FqMat u = FqMat::identity(2, 3);
      u.at(0, 1) = uint8_t(x);
      REQUIRE(std::abs(tau.bessel(u * g) - psi(x) * tau.bessel(g)) < 1e-8);
      REQUIRE(std::abs(tau.bessel(g * u) - psi(x) * tau.bessel(g)) < 1e-8);
    }
  }
  // classical gamma sums have modulus 1
  for (const CuspidalRep& c : cuspidals(2, 3)) {
    for (int e = 0; e < 2; ++e) {
      MultiplicativeCharacter chi(3, e);
      cd s = 0;
      for (int x = 1; x < 3; ++x) {
        FqMat m(2, 3);
        m.at(0, 1) = 1;
        m.at(1, 0) = uint8_t(x);
        s += c.bessel(m) * chi(x);
      }
      CHECK(std::abs(std::abs(s) - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("contragredient and isomorphism tests", "[repcore]") {
  const Rep& tau = cuspidals(2, 3)[0].rep;
  CHECK(is_isomorphic(tau.contragredient().contragredient(), tau));
  Rep triv = det_character_rep(1, 3, MultiplicativeCharacter(3, 0));
  CHECK(is_isomorphic(triv, triv));
  // exactly one self-dual cuspidal of GL_2(F_3)
  int selfdual = 0;
  for (auto& c : cuspidals(2, 3))
    if (is_isomorphic(c.rep, c.rep.contragredient())) ++selfdual;
  CHECK(selfdual == 1);
}

TEST_CASE("constituent listing matches the eager path", "[repcore]") {
  auto& d = gg_decomposition(3, 2);
  auto infos = constituent_listing(d);
  REQUIRE(infos.size() == d.constituents.size());
  int ncusp = 0;
  for (size_t i = 0; i < infos.size(); ++i) {
    CHECK(infos[i].dim == d.constituents[i].dim);
    CHECK(infos[i].cuspidal == d.constituents[i].cuspidal);
    if (infos[i].cuspidal) ++ncusp;
  }
  CHECK(ncusp == 2);
}

TEST_CASE("swap identity", "[repcore]") {
  // GL_1: exact for any character
  Rep chi = det_character_rep(1, 3, MultiplicativeCharacter(3, 1));
  CHECK(swap_identity_residual(chi) < 1e-12);
  CHECK(swap_identity_residual(cuspidals(2, 2)[0].rep) < 1e-8);
  for (auto& c : cuspidals(2, 3)) CHECK(swap_identity_residual(c.rep) < 1e-8);
}
