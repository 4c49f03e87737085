#include <catch2/catch_amalgamated.hpp>

#include "spehlab/ff.hpp"

using namespace spehlab;
using Catch::Approx;

TEST_CASE("prime field arithmetic", "[ff]") {
  PrimeField F3(3);
  CHECK(F3.add(2, 2) == 1);
  CHECK(F3.inv(2) == 2);
  PrimeField F5(5);
  CHECK(F5.mul(3, 4) == 2);
  CHECK(F5.mul(F5.inv(3), 3) == 1);
  CHECK(F5.neg(2) == 3);
}

TEST_CASE("field error paths and envelope", "[ff]") {
  PrimeField F3(3);
  CHECK_THROWS_AS(F3.inv(0), DomainError);
  CHECK_THROWS_AS(PrimeField(9), DomainError);    // not prime
  CHECK_THROWS_AS(PrimeField(11), CapacityError);  // prime beyond envelope
  CHECK_NOTHROW(PrimeField(7));
}

TEST_CASE("additive character values", "[ff]") {
  AdditiveCharacter psi3(3);
  CHECK(std::abs(psi3(0) - cd(1.0)) < 1e-12);
  CHECK(std::abs(psi3(1) - unit_root(1.0 / 3.0)) < 1e-12);
  AdditiveCharacter psi2(2);
  CHECK(std::abs(psi2(1) - cd(-1.0)) < 1e-12);
  CHECK_THROWS_AS(AdditiveCharacter(3, 0), DomainError);
}

TEST_CASE("additive character is a homomorphism with vanishing sum", "[ff]") {
  for (int q : {2, 3, 5, 7}) {
    AdditiveCharacter psi(q);
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        CHECK(std::abs(psi(x + y) - psi(x) * psi(y)) < 1e-12);
    cd s = 0;
    for (int x = 0; x < q; ++x) s += psi(x);
    CHECK(std::abs(s) < 1e-12);
  }
}

TEST_CASE("multiplicative character values", "[ff]") {
  MultiplicativeCharacter triv(5, 0);
  for (int x = 1; x < 5; ++x) CHECK(std::abs(triv(x) - cd(1.0)) < 1e-12);

  // q = 3: the order-2 character takes -1 at the generator 2
  MultiplicativeCharacter sgn(3, 1);
  CHECK(std::abs(sgn(2) - cd(-1.0)) < 1e-12);

  // q = 5, exponent 1 against the generator: oracle enumerates generator powers
  PrimeField F5(5);
  CHECK(F5.generator() == 2);
  int p = 1, dlog4 = -1;
  for (int e = 0; e < 4; ++e) {
    if (p == 4) dlog4 = e;
    p = p * 2 % 5;
  }
  REQUIRE(dlog4 == 2);
  cd expect = unit_root(double(dlog4) / 4.0);  // i^2 = -1
  MultiplicativeCharacter chi(5, 1);
  CHECK(std::abs(chi(4) - expect) < 1e-12);
  CHECK(std::abs(chi(4) - cd(-1.0)) < 1e-12);
  CHECK_THROWS_AS(chi(0), DomainError);
}

TEST_CASE("multiplicative character sums", "[ff]") {
  for (int q : {3, 5, 7}) {
    for (int e = 0; e < q - 1; ++e) {
      MultiplicativeCharacter chi(q, e);
      for (int x = 1; x < q; ++x)
        for (int y = 1; y < q; ++y)
          CHECK(std::abs(chi(x * y % q) - chi(x) * chi(y)) < 1e-12);
      cd s = 0;
      for (int x = 1; x < q; ++x) s += chi(x);
      if (e == 0)
        CHECK(std::abs(s - cd(q - 1.0)) < 1e-12);
      else
        CHECK(std::abs(s) < 1e-12);
    }
  }
}
