#include "doctest.h"

#include "amx/cohom.hpp"
#include "amx/io.hpp"

using namespace amx;

TEST_CASE("group references round-trip") {
  for (const std::string& ref : {"klein", "modular16", "cyclic:6"}) {
    FinGroup G = group_from_ref(ref);
    CHECK(group_ref(G) == ref);
  }
  CHECK(group_from_ref("cyclic:4").order() == 4);
  CHECK_THROWS_AS(group_from_ref("nonsense"), MathError);
  FinGroup odd = FinGroup::direct_product(FinGroup::cyclic(2), FinGroup::cyclic(3));
  CHECK_THROWS_AS(group_ref(odd), MathError);
}

TEST_CASE("bundled modular-group resolution loads, validates, and computes") {
  FreeResolution P = bundled_m16_resolution();
  CHECK(P.ranks == std::vector<int>{1, 2, 2, 2, 3, 4});
  CHECK(P.G->order() == 16);
  validate_resolution(P);  // throws on failure
  // cross-check against integral cohomology of the group
  auto PP = std::make_shared<const FreeResolution>(P);
  GModule Z = GModule::trivial_lattice(P.G, 1);
  CHECK(CohGroup(Z, PP, 2).group().invariant_factors() == std::vector<Int>{2, 4});
}

TEST_CASE("resolution serialization round-trips") {
  FreeResolution P = bundled_m16_resolution();
  std::string text = resolution_to_json(P);
  FreeResolution Q = resolution_from_json(text);
  REQUIRE(Q.ranks == P.ranks);
  for (int n = 1; n <= P.top(); ++n) CHECK(Q.expanded_d(n) == P.expanded_d(n));
  // serializing again yields the identical document
  CHECK(resolution_to_json(Q) == text);
}

TEST_CASE("malformed resolution documents are rejected") {
  CHECK_THROWS_AS(resolution_from_json("{\"schema\": \"presentation\"}"), MathError);
  // a corrupted differential must fail validation
  FreeResolution P = bundled_m16_resolution();
  P.diff[2].at(0, 0) = gr_add(P.diff[2].at(0, 0), gr_of(*P.G, P.G->generator("tau")));
  std::string text = resolution_to_json(P);
  CHECK_THROWS_AS(resolution_from_json(text), MathError);
  CHECK_NOTHROW(resolution_from_json(text, /*validate=*/false));
}

TEST_CASE("builtin presentations load and validate") {
  for (const std::string& name :
       {"klein-p1", "klein-p1-enlarged", "toric-klein", "cyclic:m=4,b=2", "cyclic:m=6,b=-12"}) {
    EquivariantPresentation p = builtin_presentation(name);
    PresentationReport rep = presentation_validate(p);
    for (const auto& msg : rep.problems) MESSAGE(name << ": " << msg);
    CHECK(rep.valid);
  }
  CHECK_THROWS_AS(builtin_presentation("cyclic:m=1,b=2"), MathError);
  CHECK_THROWS_AS(builtin_presentation("cyclic:m=4,b=0"), MathError);
  CHECK_THROWS_AS(builtin_presentation("unknown"), MathError);
}

TEST_CASE("module files round-trip") {
  auto G = std::make_shared<const FinGroup>(FinGroup::modular16());
  GModule reg = GModule::regular(G);
  std::string text = gmodule_to_json(reg);
  GModule back = gmodule_from_json(text);
  CHECK(back.gens() == reg.gens());
  for (int g = 0; g < G->order(); ++g) CHECK(back.act(g) == reg.act(g));
  CHECK(gmodule_to_json(back) == text);
  CHECK_THROWS_AS(gmodule_from_json("{\"schema\": \"resolution\"}"), MathError);
}

TEST_CASE("presentation serialization round-trips") {
  for (const std::string& name : {"klein-p1", "toric-klein", "cyclic:m=4,b=2"}) {
    EquivariantPresentation p = builtin_presentation(name);
    std::string text = presentation_to_json(p);
    EquivariantPresentation q = presentation_from_json(text);
    CHECK(presentation_to_json(q) == text);
    CHECK(q.divisor_labels == p.divisor_labels);
    CHECK(q.unit_labels == p.unit_labels);
    CHECK(q.div_map == p.div_map);
    CHECK(q.model.mode == p.model.mode);
    CHECK(q.model.torsion == p.model.torsion);
    CHECK(q.model.free_generators == p.model.free_generators);
    CHECK(presentation_validate(q).valid);
  }
}
