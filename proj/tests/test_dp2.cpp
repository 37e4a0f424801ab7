#include "doctest.h"

#include "amx/dp2.hpp"
#include "amx/io.hpp"

using namespace amx;

TEST_CASE("bundled del Pezzo dataset is internally consistent") {
  DP2Dataset ds = bundled_dp2_dataset();
  CHECK(ds.curves.size() == 56);
  CHECK(ds.eta.size() == 8);
  CHECK(ds.model.mode == UnitModel::Mode::FG);
  CHECK(ds.model.torsion == 8);
  CHECK(ds.model.free_generators == std::vector<std::string>{"eps", "pi"});
  DP2Report rep = dp2_validate(ds);
  for (const auto& p : rep.problems) MESSAGE(p);
  CHECK(rep.valid);
}

TEST_CASE("dataset validation rejects corrupted data") {
  SUBCASE("broken permutation") {
    DP2Dataset ds = bundled_dp2_dataset();
    std::swap(ds.sigma_perm[0], ds.sigma_perm[1]);
    CHECK(!dp2_validate(ds).valid);
  }
  SUBCASE("non-bijective permutation") {
    DP2Dataset ds = bundled_dp2_dataset();
    ds.tau_perm[3] = ds.tau_perm[4];
    CHECK(!dp2_validate(ds).valid);
  }
  SUBCASE("corrupted coordinates") {
    DP2Dataset ds = bundled_dp2_dataset();
    ds.coords.at(2, 17) += 1;
    CHECK(!dp2_validate(ds).valid);
  }
  SUBCASE("corrupted Pic matrix") {
    DP2Dataset ds = bundled_dp2_dataset();
    ds.pic_sigma.at(0, 0) += 1;
    CHECK(!dp2_validate(ds).valid);
  }
  SUBCASE("wrong unit decomposition exponent") {
    DP2Dataset ds = bundled_dp2_dataset();
    ds.cocycle[1][3].expo[0] += 1;
    DP2Report rep = dp2_validate(ds);
    CHECK(!rep.valid);
    bool mentions_entry = false;
    for (const auto& p : rep.problems)
      if (p.find("(1,3)") != std::string::npos) mentions_entry = true;
    CHECK(mentions_entry);
  }
  SUBCASE("wrong torsion part of a value") {
    DP2Dataset ds = bundled_dp2_dataset();
    ds.cocycle[0][0].torsion += 1;
    CHECK(!dp2_validate(ds).valid);
  }
}

TEST_CASE("module construction from the dataset") {
  DP2Dataset ds = bundled_dp2_dataset();
  DP2Modules m = dp2_m16(ds);
  CHECK(m.pic.gens() == 8);
  CHECK(m.pic.is_lattice());
  CHECK(m.pic.is_faithful());
  CHECK(m.coeff.gens() == 24);
  // (Z/8 + Z^2) tensor Z^8
  std::vector<Int> invf = m.coeff.underlying().invariant_factors();
  int eights = 0, frees = 0;
  for (const Int& d : invf) {
    if (d == 8) ++eights;
    if (d == 0) ++frees;
  }
  CHECK(eights == 8);
  CHECK(frees == 16);
  CHECK(m.cocycle_fg.degree == 2);
  CHECK(m.cocycle_fg.values.rows() == 24);
  CHECK(m.cocycle_fg.values.cols() == 2);
  CHECK(m.cocycle_div.values.size() == 2);
}

TEST_CASE("published cocycle verifies end to end") {
  DP2VerifyReport rep = dp2_verify(bundled_dp2_dataset());
  for (const auto& p : rep.problems) MESSAGE(p);
  CHECK(rep.cocycle_ok);
  CHECK(rep.order_two);
  CHECK(rep.restrictions_vanish);
  CHECK(rep.kernel_z2);
  CHECK(rep.abelian_kernels);
  CHECK(rep.all_passed());
  // the joint restriction kernel is Z/2 in both coefficient modes
  CHECK(rep.kernel_invariants_divisible == std::vector<Int>{2});
  CHECK(rep.kernel_invariants_fg == std::vector<Int>{2});
}

TEST_CASE("dataset serialization round-trips") {
  DP2Dataset ds = bundled_dp2_dataset();
  std::string text = dp2_dataset_to_json(ds);
  DP2Dataset rt = dp2_dataset_from_json(text);
  CHECK(rt.curves == ds.curves);
  CHECK(rt.sigma_perm == ds.sigma_perm);
  CHECK(rt.tau_perm == ds.tau_perm);
  CHECK(rt.eta == ds.eta);
  CHECK(rt.coords == ds.coords);
  CHECK(rt.pic_sigma == ds.pic_sigma);
  CHECK(rt.pic_tau == ds.pic_tau);
  CHECK(rt.model.free_generators == ds.model.free_generators);
  for (size_t s = 0; s < 2; ++s)
    for (size_t i = 0; i < 8; ++i) {
      CHECK(rt.cocycle[s][i].value == ds.cocycle[s][i].value);
      CHECK(rt.cocycle[s][i].torsion == ds.cocycle[s][i].torsion);
      CHECK(rt.cocycle[s][i].expo == ds.cocycle[s][i].expo);
    }
  CHECK(dp2_validate(rt).valid);
  // deterministic output
  CHECK(dp2_dataset_to_json(rt) == text);
}

TEST_CASE("verification notices a broken cocycle") {
  DP2Dataset ds = bundled_dp2_dataset();
  // multiply one value by eps: still a valid unit decomposition, but the
  // cocycle condition breaks
  ds.cocycle[0][0].value = ds.cocycle[0][0].value * ds.generator_values[0];
  ds.cocycle[0][0].expo[0] += 1;
  CHECK(dp2_validate(ds).valid);
  DP2VerifyReport rep = dp2_verify(ds);
  CHECK(!rep.cocycle_ok);
  CHECK(!rep.all_passed());
}
