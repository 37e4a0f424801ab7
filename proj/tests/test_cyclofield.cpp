#include "doctest.h"

#include "amx/cyclofield.hpp"

using namespace amx;

namespace {

// parse a short power-basis element of Q(zeta_8)
CycloElement z8(std::vector<long> c) {
  QVec q;
  for (long x : c) q.push_back(Rat(x));
  return CycloElement(8, std::move(q));
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_polynomial(8) == std::vector<Int>{1, 0, 0, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  // Phi_105 is the first with a coefficient of magnitude 2
  std::vector<Int> p105 = cyclotomic_polynomial(105);
  CHECK(p105.size() == 49);
  CHECK(p105[7] == -2);
}

TEST_CASE("power-basis reduction and ring operations") {
  CycloElement z = cyclo_zeta(8);
  CHECK(z.pow(4) == -cyclo_one(8));
  CHECK(z.pow(8) == cyclo_one(8));
  CHECK(cyclo_zeta(8, 5) == -z);
  // (1 - zeta)^3 = 1 - 3z + 3z^2 - z^3
  CycloElement u = cyclo_one(8) - z;
  CHECK(u * u * u == z8({1, -3, 3, -1}));
  // sqrt2 = zeta + zeta^7 = zeta - zeta^3 squares to 2
  CycloElement sqrt2 = z + z.pow(7);
  CHECK(sqrt2 == z8({0, 1, 0, -1}));
  CHECK(sqrt2 * sqrt2 == cyclo_rational(8, Rat(2)));
  // distributivity and commutativity on a sample
  CycloElement a = z8({1, 2, 0, -1}), b = z8({0, 3, 1, 0}), c = z8({2, 0, 0, 5});
  CHECK(a * (b + c) == a * b + a * c);
  CHECK(a * b == b * a);
  CHECK(a + (b + c) == (a + b) + c);
  CHECK(a - a == cyclo_zero(8));
}

TEST_CASE("inverses and powers") {
  CycloElement z = cyclo_zeta(8);
  CHECK(z.inverse() == z.pow(7));
  CycloElement a = z8({1, 2, 0, -1});
  CHECK(a * a.inverse() == cyclo_one(8));
  CHECK(a.pow(-2) == (a * a).inverse());
  CHECK(a.pow(0) == cyclo_one(8));
  CHECK_THROWS_AS(cyclo_zero(8).inverse(), MathError);
  // the fundamental unit g1 = sqrt2 - 1 has inverse sqrt2 + 1
  CycloElement g1 = z8({-1, 1, 0, -1});
  CHECK(g1.inverse() == z8({1, 1, 0, -1}));
}

TEST_CASE("substitution endomorphisms act as ring maps") {
  CycloElement a = z8({1, 2, 0, -1}), b = z8({0, 3, 1, 0});
  for (long k : {1, 3, 5, 7}) {
    CHECK((a * b).subst(k) == a.subst(k) * b.subst(k));
    CHECK((a + b).subst(k) == a.subst(k) + b.subst(k));
    CHECK(cyclo_zeta(8).subst(k) == cyclo_zeta(8, k));
  }
  // Galois: subst(3) then subst(3) is subst(9) = identity on Q(zeta_8)
  CHECK(a.subst(3).subst(3) == a);
}

TEST_CASE("unit decompositions against the zeta_8 torsion and sqrt2 - 1") {
  CycloElement z = cyclo_zeta(8);
  CycloElement g1 = z8({-1, 1, 0, -1});  // sqrt2 - 1
  // zeta^3 - zeta + 1 = zeta^4 * g1
  CHECK(verify_unit_decomposition(z8({1, -1, 0, 1}), 4, IVec{1}, {g1}));
  // zeta^3 - zeta - 1 = zeta^4 * g1^{-1}
  CHECK(verify_unit_decomposition(z8({-1, -1, 0, 1}), 4, IVec{-1}, {g1}));
  // torsion alone
  CHECK(verify_unit_decomposition(-cyclo_one(8), 4, IVec{0}, {g1}));
  // wrong exponent or wrong torsion must fail
  CHECK(!verify_unit_decomposition(z8({1, -1, 0, 1}), 4, IVec{-1}, {g1}));
  CHECK(!verify_unit_decomposition(z8({1, -1, 0, 1}), 3, IVec{1}, {g1}));
  CHECK_THROWS_AS(verify_unit_decomposition(g1, 0, IVec{1}, {}), MathError);
  CHECK_THROWS_AS(verify_unit_decomposition(g1, 0, IVec{1}, {cyclo_zero(8)}), MathError);
}
