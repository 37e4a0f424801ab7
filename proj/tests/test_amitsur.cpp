#include "doctest.h"

#include <memory>

#include "amx/amitsur.hpp"

using namespace amx;

namespace {

std::vector<Int> invf(const FgAbGroup& g) { return g.invariant_factors(); }

UnitModel qmodel() { return fg_model(2, {"two"}); }
UnitValue val2(int e) { return UnitValue{Rat(0), IVec{e}}; }

}  // namespace

TEST_CASE("built-in presentations validate") {
  for (const auto& p : {klein_p1(), klein_p1_enlarged(), toric_klein()}) {
    PresentationReport r = presentation_validate(p);
    CHECK(r.valid);
    CHECK(r.problems.empty());
  }
  PresentationReport rc = presentation_validate(cyclic_projective(4, val2(1), qmodel()));
  CHECK(rc.valid);
  // Pic of P^{m-1} is Z
  CHECK(rc.pic_invariants == std::vector<Int>{0});

  // non-injective divisor map: a unit with empty divisor
  EquivariantPresentation bad = klein_p1();
  bad.div_map = IntMatrix(2, 1);
  bad.twists["sigma"] = {Twist{unit_one(bad.model), IVec{1}}};
  bad.twists["tau"] = {Twist{unit_one(bad.model), IVec{1}}};
  PresentationReport rb = presentation_validate(bad);
  CHECK(!rb.valid);
}

TEST_CASE("lattice basis extraction") {
  PresentationModules m = presentation_modules(klein_p1());
  LatticeBasis lb = lattice_basis(m.pic.target);
  CHECK(lb.basis.gens() == 1);
  for (int g = 0; g < 4; ++g) CHECK(lb.basis.act(g) == IntMatrix::identity(1));
  CHECK((lb.to_basis * lb.from_basis) == IntMatrix::identity(1));
}

TEST_CASE("tensor resolutions of lattices validate and compute Ext") {
  auto K = std::make_shared<const FinGroup>(FinGroup::klein());
  FreeResolution P = auto_resolution(K, 4);
  GModule Z = GModule::trivial_lattice(K, 1);
  auto R = std::make_shared<const ModuleResolution>(tensor_lattice_resolution(P, Z));
  validate_module_resolution(*R);
  CHECK(invf(ext_group(Z, R, 2).group()) == std::vector<Int>{2, 2});

  GModule reg = GModule::regular(K);
  auto RR = std::make_shared<const ModuleResolution>(tensor_lattice_resolution(P, reg));
  validate_module_resolution(*RR);
  // Z[G] is cohomologically trivial
  CHECK(ext_group(Z, RR, 2).group().is_trivial());
}

TEST_CASE("klein projective line: partial kernel and low Amitsur groups") {
  EquivariantPresentation p = klein_p1();
  GTorus S = split_torus(p.G);
  auto P = std::make_shared<const FreeResolution>(auto_resolution(p.G, 8));

  FourTermExt E = alpha_class(p, S);
  CohGroup H0(E.D(), P, 0);
  CHECK(H0.group().free_rank() == 1);

  // kernel of partial^2 on Pic^G = Z is exactly 2Z; the class of [0]
  // generates Pic, and its degree-0 cocycle has value e_0
  Cochain gen{0, IntMatrix(E.D().gens(), P->ranks[0])};
  gen.values.at(0, 0) = 1;
  PartialResult d1 = partial(p, S, 2, gen, P);
  CHECK(d1.shifted);
  CohGroup H3(GModule::trivial_lattice(p.G, 1), P, 3);
  CHECK(!H3.is_coboundary(d1.cochain));
  PartialResult d2 = partial(p, S, 2, scale_cochain(2, gen), P);
  CHECK(H3.is_coboundary(d2.cochain));

  CHECK(amitsur_group(p, S, 2, P).order() == 2);
  CHECK(amitsur_group(p, S, 3, P).order() == 1);
  CHECK(amitsur_group(p, S, 4, P).order() == 4);
  CHECK(amitsur_group(p, S, 5, P).order() == 2);
}

TEST_CASE("cyclic projective spaces depend on the arithmetic of b") {
  UnitModel Q = qmodel();
  for (int m : {2, 3, 4}) {
    EquivariantPresentation p = cyclic_projective(m, val2(1), Q);
    GTorus S = split_torus(p.G);
    CHECK(amitsur_group(p, S, 2).order() == m);
    CHECK(amitsur_group(p, S, 3).order() == 1);
    CHECK(beta(p).nonzero);

    EquivariantPresentation ppow = cyclic_projective(m, val2(m), Q);
    CHECK(amitsur_group(ppow, S, 2).order() == 1);
    CHECK(!beta(ppow).nonzero);
  }
  // over an algebraically closed field every constant is an m-th power
  EquivariantPresentation pdiv = cyclic_projective(4, UnitValue{Rat(0), {}}, divisible_model());
  CHECK(!beta(pdiv).nonzero);
  CHECK(amitsur_group(pdiv, split_torus(pdiv.G), 2).order() == 1);
}

TEST_CASE("beta of the klein projective line is nonzero by both routes") {
  BetaResult b = beta(klein_p1());
  CHECK(b.nonzero);
  CHECK(b.shifted);
  CHECK(b.cochain.degree == 3);
}

TEST_CASE("free-orbit blowups preserve Amitsur groups and beta") {
  EquivariantPresentation p = klein_p1();
  EquivariantPresentation q = adjoin_free_orbit(p, 1);
  CHECK(presentation_validate(q).valid);
  GTorus S = split_torus(p.G);
  for (int n = 2; n <= 4; ++n)
    CHECK(invf(amitsur_group(p, S, n)) == invf(amitsur_group(q, S, n)));
  CHECK(beta(q).nonzero == beta(p).nonzero);
  EquivariantPresentation same = adjoin_free_orbit(p, 0);
  CHECK(same.divisor_labels == p.divisor_labels);
  CHECK(same.div_map == p.div_map);
}

TEST_CASE("the enlarged klein presentation gives the same Amitsur groups") {
  EquivariantPresentation a = klein_p1(), b = klein_p1_enlarged();
  GTorus S = split_torus(a.G);
  auto P = std::make_shared<const FreeResolution>(auto_resolution(a.G, 7));
  for (int n = 2; n <= 5; ++n)
    CHECK(invf(amitsur_group(a, S, n, P)) == invf(amitsur_group(b, S, n, P)));
  CHECK(beta(b).nonzero);
}

TEST_CASE("the toric klein example separates beta from the Amitsur groups") {
  EquivariantPresentation p = toric_klein();
  GTorus S = split_torus(p.G);
  CHECK(beta(p).nonzero);
  for (int n = 2; n <= 4; ++n) CHECK(amitsur_group(p, S, n).order() == 1);
}

TEST_CASE("restriction kernels over the klein group") {
  auto K = std::make_shared<const FinGroup>(FinGroup::klein());
  auto P = std::make_shared<const FreeResolution>(auto_resolution(K, 4));
  GModule Z = GModule::trivial_lattice(K, 1);
  std::vector<Subgroup> abelians = maximal_abelian_subgroups(*K);
  // klein is abelian: the only maximal abelian subgroup is the whole group,
  // so the kernel is trivial; use the proper C2's instead
  std::vector<Subgroup> c2s;
  for (int g = 1; g < 4; ++g) c2s.push_back(subgroup_from_generators(*K, {g}));
  RestrictionKernel k2 = bogomolov_kernel(K, P, Z, 2, c2s);
  CHECK(invf(k2.ambient.group()) == std::vector<Int>{2, 2});
  CHECK(k2.kernel.group.is_trivial());
  // restricting to a single C2 leaves one character undetected
  RestrictionKernel k1 = bogomolov_kernel(K, P, Z, 2, {c2s[0]});
  CHECK(k1.kernel.group.order() == 2);
}
