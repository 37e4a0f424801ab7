#include "doctest.h"

#include "amx/gmod.hpp"

using namespace amx;

namespace {

IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows.begin()->size()) : 0;
  IntMatrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (long v : row) m.at(i, j++) = v;
    ++i;
  }
  return m;
}

IVec vec(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

GroupPtr klein() { return std::make_shared<FinGroup>(FinGroup::klein()); }
GroupPtr cyclic(int m) { return std::make_shared<FinGroup>(FinGroup::cyclic(m)); }

}  // namespace

TEST_CASE("trivial and sign modules") {
  auto G = klein();
  auto t = GModule::trivial_lattice(G, 1);
  CHECK(t.gens() == 1);
  CHECK(!t.is_faithful());

  // klein on Z with sigma -> -1, tau -> +1: valid since (-1)^2 = 1
  GModule sgn(G, FgAbGroup(1, IntMatrix(1, 0)),
              std::map<std::string, IntMatrix>{{"sigma", mat({{-1}})}, {"tau", mat({{1}})}});
  CHECK(sgn.act(G->generator("sigma")).at(0, 0) == -1);
  CHECK(!sgn.is_faithful());  // tau acts trivially

  // cyclic(4) on Z with sigma -> 2 is rejected: 2^4 != 1
  auto C4 = cyclic(4);
  CHECK_THROWS_AS(GModule(C4, FgAbGroup(1, IntMatrix(1, 0)),
                          std::map<std::string, IntMatrix>{{"sigma", mat({{2}})}}),
                  MathError);
}

TEST_CASE("regular and permutation modules") {
  auto G = klein();
  auto reg = GModule::regular(G);
  CHECK(reg.gens() == 4);
  CHECK(reg.is_faithful());
  for (int g = 0; g < 4; ++g) CHECK(reg.act(g) * reg.act(g) == IntMatrix::identity(4));

  // sigma swaps {0,infty}, tau fixes both
  auto perm = GModule::permutation(G, 2, {{"sigma", {1, 0}}, {"tau", {0, 1}}});
  CHECK(perm.act(G->generator("sigma")) == mat({{0, 1}, {1, 0}}));
  CHECK(perm.act(G->generator("tau")) == IntMatrix::identity(2));
}

TEST_CASE("tensor and dual") {
  auto G = cyclic(2);
  GModule sgn(G, FgAbGroup(1, IntMatrix(1, 0)),
              std::map<std::string, IntMatrix>{{"sigma", mat({{-1}})}});
  auto tt = tensor(sgn, sgn);
  // (-1)*(-1) = 1: trivial action
  CHECK(tt.act(G->generator("sigma")) == IntMatrix::identity(1));

  // dual of a rank-2 action is the contragredient
  GModule m2(G, FgAbGroup(2, IntMatrix(2, 0)),
             std::map<std::string, IntMatrix>{{"sigma", mat({{0, 1}, {1, 0}})}});
  auto d = dual(m2);
  int s = G->generator("sigma");
  CHECK(d.act(s) == m2.act(G->inv(s)).transpose());
  // double dual restores the original matrices
  auto dd = dual(d);
  for (int g = 0; g < 2; ++g) CHECK(dd.act(g) == m2.act(g));
}

TEST_CASE("tensor with torsion and restriction compatibility") {
  auto G = klein();
  GModule z2 = GModule::trivial(G, FgAbGroup(1, mat({{2}})));
  GModule lat(G, FgAbGroup(2, IntMatrix(2, 0)),
              std::map<std::string, IntMatrix>{{"sigma", mat({{0, 1}, {1, 0}})},
                                               {"tau", mat({{-1, 0}, {0, -1}})}});
  auto t = tensor(z2, lat);
  CHECK(t.underlying().invariant_factors() == std::vector<Int>({2, 2}));

  auto H = subgroup_from_generators(*G, {G->generator("sigma")});
  auto Hg = std::make_shared<FinGroup>(H.group);
  auto r1 = restrict_module(t, H, Hg);
  auto r2 = tensor(restrict_module(z2, H, Hg), restrict_module(lat, H, Hg));
  for (int g = 0; g < Hg->order(); ++g) CHECK(r1.act(g) == r2.act(g));
}

TEST_CASE("gmap validation") {
  auto G = cyclic(2);
  GModule sgn(G, FgAbGroup(1, IntMatrix(1, 0)),
              std::map<std::string, IntMatrix>{{"sigma", mat({{-1}})}});
  auto triv = GModule::trivial_lattice(G, 1);
  // x2: triv -> triv fine
  GMap f(triv, triv, mat({{2}}));
  CHECK(f.is_injective());
  CHECK(!f.is_surjective());
  // non-equivariant: sgn -> triv by identity
  CHECK_THROWS_AS(GMap(sgn, triv, mat({{1}})), MathError);
}

TEST_CASE("kernel of the degree map on the klein P1 divisor module") {
  auto G = klein();
  // Z[0] + Z[infty], sigma swaps, tau fixes
  auto div2 = GModule::permutation(G, 2, {{"sigma", {1, 0}}, {"tau", {0, 1}}});
  auto triv = GModule::trivial_lattice(G, 1);
  GMap deg(div2, triv, mat({{1, 1}}));
  auto incl = kernel_of(deg);
  CHECK(incl.source.gens() == 1);  // R = Z r, r = [0]-[infty]
  // sigma acts by -1 on r, tau by +1
  int s = G->generator("sigma"), t = G->generator("tau");
  CHECK(incl.source.act(s) == mat({{-1}}));
  CHECK(incl.source.act(t) == mat({{1}}));
  // inclusion composed into the target really lands in ker(deg)
  IVec r = incl.matrix.col(0);
  CHECK(vec_is_zero(deg.matrix.apply(r)));
}

TEST_CASE("kernel, image, cokernel basics") {
  auto G = cyclic(2);
  auto triv = GModule::trivial_lattice(G, 1);
  GMap idm = GMap::identity(triv);
  CHECK(kernel_of(idm).source.underlying().is_trivial());
  CHECK(cokernel_of(idm).target.underlying().is_trivial());

  GMap two(triv, triv, mat({{2}}));
  auto cok = cokernel_of(two);
  CHECK(cok.target.underlying().invariant_factors() == std::vector<Int>{2});

  auto img = image_of(two);
  CHECK(img.source.underlying().invariant_factors() == std::vector<Int>{0});  // 2Z = Z
}

TEST_CASE("direct sum") {
  auto G = cyclic(2);
  GModule sgn(G, FgAbGroup(1, IntMatrix(1, 0)),
              std::map<std::string, IntMatrix>{{"sigma", mat({{-1}})}});
  auto triv = GModule::trivial_lattice(G, 1);
  auto s = direct_sum(sgn, triv);
  CHECK(s.gens() == 2);
  CHECK(s.act(G->generator("sigma")) == mat({{-1, 0}, {0, 1}}));
  CHECK(s.is_faithful());
}

TEST_CASE("action inverse property") {
  auto G = std::make_shared<FinGroup>(FinGroup::modular16());
  // Z with sigma -> -1, tau -> -1 (both relators hold: orders 8 and 2 even)
  GModule m(G, FgAbGroup(1, IntMatrix(1, 0)),
            std::map<std::string, IntMatrix>{{"sigma", mat({{-1}})}, {"tau", mat({{-1}})}});
  for (int g = 0; g < 16; ++g) CHECK(m.act(g) * m.act(G->inv(g)) == IntMatrix::identity(1));
}

TEST_CASE("gtorus requires a lattice") {
  auto G = cyclic(2);
  CHECK_NOTHROW(GTorus(GModule::trivial_lattice(G, 3)));
  CHECK_THROWS_AS(GTorus(GModule::trivial(G, FgAbGroup(1, mat({{2}})))), MathError);
}
