#include "doctest.h"

#include <set>

#include "amx/fingroup.hpp"

using namespace amx;

TEST_CASE("cyclic groups") {
  auto c4 = FinGroup::cyclic(4);
  CHECK(c4.order() == 4);
  int s = c4.generator("sigma");
  CHECK(c4.element_order(s) == 4);  // exponent 4
  CHECK(c4.power(s, 4) == c4.identity());
  CHECK(c4.inv(s) == c4.power(s, 3));
}

TEST_CASE("klein group") {
  auto k = FinGroup::klein();
  CHECK(k.order() == 4);
  for (int g = 0; g < 4; ++g) CHECK(k.mul(g, g) == k.identity());  // exponent 2
  CHECK(k.is_abelian());
  int s = k.generator("sigma"), t = k.generator("tau");
  CHECK(k.mul(s, t) != k.identity());
}

TEST_CASE("modular16 structure") {
  auto g = FinGroup::modular16();
  CHECK(g.order() == 16);
  int s = g.generator("sigma"), t = g.generator("tau");
  CHECK(g.element_order(s) == 8);
  CHECK(g.element_order(t) == 2);
  // relator tau sigma tau sigma^3 = e
  CHECK(g.mul(g.mul(g.mul(t, s), t), g.power(s, 3)) == g.identity());
  // tau sigma = sigma^5 tau
  CHECK(g.mul(t, s) == g.mul(g.power(s, 5), t));
  // order(tau sigma) = 8 since (tau sigma)^2 = sigma^6
  int ts = g.mul(t, s);
  CHECK(g.mul(ts, ts) == g.power(s, 6));
  CHECK(g.element_order(ts) == 8);
}

TEST_CASE("word storage and parsing") {
  auto g = FinGroup::modular16();
  for (int x = 0; x < g.order(); ++x) {
    CHECK(g.eval_word(g.word(x)) == x);
    CHECK(g.parse_word(g.element_name(x)) == x);
  }
  int s = g.generator("sigma"), t = g.generator("tau");
  CHECK(g.parse_word("sigma^4*tau*sigma") ==
        g.mul(g.mul(g.power(s, 4), t), s));
  CHECK(g.parse_word("e") == g.identity());
  CHECK_THROWS_AS(g.parse_word("rho"), MathError);
}

TEST_CASE("direct products") {
  auto z2z4 = FinGroup::direct_product(FinGroup::cyclic(2), FinGroup::cyclic(4));
  CHECK(z2z4.order() == 8);
  CHECK(z2z4.is_abelian());
  CHECK(z2z4.element_order(z2z4.generator("sigma_1")) == 2);
  CHECK(z2z4.element_order(z2z4.generator("sigma_2")) == 4);
}

TEST_CASE("subgroups of modular16") {
  auto g = FinGroup::modular16();
  int s = g.generator("sigma"), t = g.generator("tau");

  auto g1 = subgroup_from_generators(g, {s});
  CHECK(abelian_invariants(g, g1) == std::vector<Int>{8});

  auto g2 = subgroup_from_generators(g, {g.mul(t, s)});
  CHECK(abelian_invariants(g, g2) == std::vector<Int>{8});

  auto g3 = subgroup_from_generators(g, {t, g.power(s, 2)});
  CHECK(abelian_invariants(g, g3) == std::vector<Int>({2, 4}));

  auto triv = subgroup_from_generators(g, {g.identity()});
  CHECK(triv.elements.size() == 1);

  // the maximal abelian subgroups are exactly <sigma>, <tau sigma>, <tau, sigma^2>
  auto maxab = maximal_abelian_subgroups(g);
  REQUIRE(maxab.size() == 3);
  std::set<std::vector<int>> got;
  for (auto& H : maxab) got.insert(H.elements);
  CHECK(got.count(g1.elements) == 1);
  CHECK(got.count(g2.elements) == 1);
  CHECK(got.count(g3.elements) == 1);
}

TEST_CASE("all_subgroups and Lagrange") {
  auto k = FinGroup::klein();
  auto subs = all_subgroups(k);
  CHECK(subs.size() == 5);  // 1 trivial + 3 order-2 + whole
  for (auto& H : subs) CHECK(4 % H.elements.size() == 0);

  auto c4 = FinGroup::cyclic(4);
  auto syl = sylow(c4, 2);
  CHECK(syl.elements.size() == 4);  // whole group

  auto c6 = FinGroup::cyclic(6);
  CHECK(sylow(c6, 2).elements.size() == 2);
  CHECK(sylow(c6, 3).elements.size() == 3);
  CHECK(sylow(c6, 5).elements.size() == 1);  // p does not divide order
}

TEST_CASE("coset representatives") {
  auto g = FinGroup::modular16();
  auto h = subgroup_from_generators(g, {g.generator("sigma")});
  auto reps = left_coset_reps(g, h);
  REQUIRE(reps.size() == 2);
  // reps cover G disjointly
  std::set<int> all;
  for (int r : reps)
    for (int x : h.elements) all.insert(g.mul(r, x));
  CHECK(all.size() == 16);
}

TEST_CASE("bad tables rejected") {
  // non-associative magma
  std::vector<std::vector<int>> t = {{0, 1, 2}, {1, 2, 0}, {2, 1, 0}};
  CHECK_THROWS_AS(FinGroup(t, {}), MathError);
}
