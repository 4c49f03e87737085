#include <catch2/catch_amalgamated.hpp>

#include "spehlab/glgroup.hpp"

using namespace spehlab;

TEST_CASE("group enumeration sizes", "[glgroup]") {
  CHECK(GroupTable(1, 2).size() == 1);
  CHECK(GroupTable(2, 3).size() == 48);
  CHECK(GroupTable(2, 2).size() == 6);
  CHECK_THROWS_AS(GroupTable(4, 3), CapacityError);
}

TEST_CASE("parabolic indices", "[glgroup]") {
  CHECK(index_of_parabolic(4, {2, 2}, 2) == 35);
  CHECK(index_of_parabolic(2, {1, 1}, 3) == 4);
  CHECK(index_of_parabolic(6, {3, 3}, 2) == 1395);
  CHECK_THROWS_AS(index_of_parabolic(4, {2, 3}, 2), DomainError);
}

TEST_CASE("coset table count matches the parabolic index", "[glgroup]") {
  CosetTable t1(4, {2, 2}, 2);
  CHECK(t1.size() == 35);
  CosetTable t2(6, {3, 3}, 2);
  CHECK((unsigned long long)t2.size() == index_of_parabolic(6, {3, 3}, 2));
  CosetTable t3(4, {2, 2}, 3);
  CHECK(t3.size() == 130);
}

TEST_CASE("coset decomposition recomposes", "[glgroup]") {
  struct Setup {
    int n, q;
    Composition parts;
  };
  for (const Setup& s : {Setup{4, 2, {2, 2}}, Setup{4, 3, {2, 2}}, Setup{3, 2, {1, 2}}}) {
    CosetTable table(s.n, s.parts, s.q);
    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
      FqMat g = random_invertible(s.n, s.q, rng);
      CosetDecomp d = table.decompose(g);
      FqMat p = g * table.rep(d.index).inverse();
      // p block upper-triangular with the reported Levi blocks
      int r0 = 0;
      for (size_t b = 0; b < s.parts.size(); ++b) {
        int bs = s.parts[b];
        for (int i = 0; i < bs; ++i)
          for (int j = 0; j < bs; ++j) REQUIRE(p.at(r0 + i, r0 + j) == d.levi[b].at(i, j));
        for (int i = r0 + bs; i < s.n; ++i)
          for (int j = r0; j < r0 + bs; ++j) REQUIRE(p.at(i, j) == 0);
        r0 += bs;
      }
      REQUIRE(p * table.rep(d.index) == g);
    }
  }
}

TEST_CASE("parabolic elements decompose over the identity coset", "[glgroup]") {
  CosetTable table(4, {2, 2}, 2);
  CosetDecomp d = table.decompose(FqMat::identity(4, 2));
  int id_idx = d.index;
  CHECK(table.rep(id_idx).is_identity());
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    FqMat p(4, 2);
    put_block(p, 0, 0, random_invertible(2, 2, rng));
    put_block(p, 2, 2, random_invertible(2, 2, rng));
    for (int i = 0; i < 2; ++i)
      for (int j = 2; j < 4; ++j) p.at(i, j) = uint8_t(rng.below(2));
    CHECK(table.decompose(p).index == id_idx);
  }
}

TEST_CASE("kappa interleaving matrix", "[glgroup]") {
  // k = 1: identity of size c1 + c2
  CHECK(kappa_matrix(2, 3, 1, 2).is_identity());
  // c1 = c2 = 1, k = 2: columns (e1, e3, e2, e4)
  FqMat k2 = kappa_matrix(1, 1, 2, 2);
  FqMat expect(4, 2);
  expect.at(0, 0) = 1;
  expect.at(2, 1) = 1;
  expect.at(1, 2) = 1;
  expect.at(3, 3) = 1;
  CHECK(k2 == expect);
  // always a permutation matrix
  for (auto [c1, c2, k] : {std::tuple{1, 2, 2}, {2, 1, 2}, {1, 1, 3}, {1, 2, 1}}) {
    FqMat kap = kappa_matrix(c1, c2, k, 3);
    CHECK((kap * kap.transpose()).is_identity());
  }
}

TEST_CASE("Y group enumeration", "[glgroup]") {
  CHECK(enumerate_y_group(1, 1, 1, 3).size() == 1);  // k = 1: identity only
  CHECK(enumerate_y_group(1, 1, 2, 3).size() == 3);
  CHECK(enumerate_y_group(1, 2, 2, 2).size() == 4);
  for (const FqMat& y : enumerate_y_group(1, 2, 2, 2)) CHECK(y.det() != 0);
}

TEST_CASE("psi_kc evaluation", "[glgroup]") {
  AdditiveCharacter psi3(3);
  KcCharacterData d22{2, 2, psi3};
  CHECK(std::abs(psi_kc_eval(d22, FqMat::identity(4, 3)) - cd(1.0)) < 1e-12);
  // X_1 = I_2 contributes trace 2
  FqMat u(4, 3);
  put_identity_block(u, 0, 0, 4);
  u.at(0, 2) = 1;
  u.at(1, 3) = 1;
  CHECK(std::abs(psi_kc_eval(d22, u) - unit_root(2.0 / 3.0)) < 1e-12);
  // k=3, c=1, q=2: psi(1+1) = 1
  AdditiveCharacter psi2(2);
  KcCharacterData d31{3, 1, psi2};
  FqMat u31 = FqMat::identity(3, 2);
  u31.at(0, 1) = 1;
  u31.at(1, 2) = 1;
  CHECK(std::abs(psi_kc_eval(d31, u31) - cd(1.0)) < 1e-12);
  // not in the radical
  FqMat bad = FqMat::identity(4, 3);
  bad.at(2, 0) = 1;
  CHECK_THROWS_AS(psi_kc_eval(d22, bad), DomainError);
}

TEST_CASE("psi_kc is multiplicative on the radical", "[glgroup]") {
  AdditiveCharacter psi2(2);
  KcCharacterData d{2, 2, psi2};
  auto U = enumerate_unipotent_ck(2, 2, 2);
  for (const FqMat& u1 : U)
    for (const FqMat& u2 : U)
      REQUIRE(std::abs(psi_kc_eval(d, u1 * u2) - psi_kc_eval(d, u1) * psi_kc_eval(d, u2)) < 1e-12);
}

TEST_CASE("structural matrices", "[glgroup]") {
  CHECK(diag_k(FqMat::identity(2, 3), 3).is_identity());
  // k=2, c=1 builder: [[0,1],[x,0]]
  FqMat h(1, 3);
  h.at(0, 0) = 2;
  FqMat b = b_tilde_argument(h, 2);
  CHECK(b.at(0, 1) == 1);
  CHECK(b.at(1, 0) == 2);
  CHECK(b.at(0, 0) == 0);
  // k=3, c=1 dual-zeta argument is invertible for any X
  FqMat h1(1, 2);
  h1.at(0, 0) = 1;
  for (uint8_t x : {0, 1}) {
    FqMat m = dual_zeta_argument(h1, {x}, 3);
    CHECK(m.det() != 0);
  }
  FqMat sing(2, 2);  // zero matrix, singular
  CHECK_THROWS_AS(b_tilde_argument(sing, 2), DomainError);
  CHECK(anti_diagonal_w(2, 2, 2) == b_tilde_argument(FqMat::identity(2, 2), 2));
}
