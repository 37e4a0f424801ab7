#include "amx/dp2.hpp"

#include <set>
#include <sstream>

#include "amx/io.hpp"
#include "json.hpp"

namespace amx {

using nlohmann::json;

namespace {

constexpr int kCurves = 56;
constexpr int kRank = 8;

CycloElement cyclo_from_json(const json& j) {
  QVec q;
  for (const auto& s : j) {
    Rat r(s.get<std::string>());
    r.canonicalize();
    q.push_back(r);
  }
  return CycloElement(8, std::move(q));
}

IntMatrix square_from_json(const json& j, int n) {
  IntMatrix m(n, n);
  if (static_cast<int>(j.size()) != n) throw MathError("dp2 dataset: bad matrix size");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(j[i].size()) != n) throw MathError("dp2 dataset: bad matrix row");
    for (int c = 0; c < n; ++c) m.at(i, c) = Int(j[i][c].get<long>());
  }
  return m;
}

// permutation composition: (p after q)(c) = p[q[c]]
std::vector<int> pcompose(const std::vector<int>& p, const std::vector<int>& q) {
  std::vector<int> out(q.size());
  for (size_t c = 0; c < q.size(); ++c) out[c] = p[q[c]];
  return out;
}

bool is_identity_perm(const std::vector<int>& p) {
  for (size_t c = 0; c < p.size(); ++c)
    if (p[c] != static_cast<int>(c)) return false;
  return true;
}

}  // namespace

DP2Dataset dp2_dataset_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (!doc.contains("schema") || doc["schema"].get<std::string>() != "dp2-dataset")
    throw MathError("expected a document with schema \"dp2-dataset\"");
  DP2Dataset ds;
  ds.curves = doc.at("curves").get<std::vector<std::string>>();
  ds.sigma_perm = doc.at("sigma_perm").get<std::vector<int>>();
  ds.tau_perm = doc.at("tau_perm").get<std::vector<int>>();
  ds.eta = doc.at("eta").get<std::vector<std::string>>();
  const json& rows = doc.at("coords");
  if (rows.size() != static_cast<size_t>(kCurves)) throw MathError("dp2 dataset: bad coords size");
  ds.coords = IntMatrix(kRank, kCurves);
  for (int c = 0; c < kCurves; ++c) {
    if (rows[c].size() != static_cast<size_t>(kRank)) throw MathError("dp2 dataset: bad coords row");
    for (int i = 0; i < kRank; ++i) ds.coords.at(i, c) = Int(rows[c][i].get<long>());
  }
  ds.pic_sigma = square_from_json(doc.at("pic_sigma"), kRank);
  ds.pic_tau = square_from_json(doc.at("pic_tau"), kRank);
  const json& model = doc.at("model");
  if (model.at("mode").get<std::string>() != "fg")
    throw MathError("dp2 dataset: model must be finitely generated");
  ds.model = fg_model(Int(model.at("torsion").get<long>()),
                      model.at("free_generators").get<std::vector<std::string>>());
  const json& gv = doc.at("generator_values");
  for (const auto& name : ds.model.free_generators)
    ds.generator_values.push_back(cyclo_from_json(gv.at(name)));
  for (const auto& comp : doc.at("cocycle")) {
    std::vector<DP2CocycleEntry> entries;
    for (const auto& e : comp) {
      DP2CocycleEntry entry;
      entry.value = cyclo_from_json(e.at("coeffs"));
      entry.torsion = Int(e.at("torsion").get<long>());
      for (const auto& x : e.at("expo")) entry.expo.push_back(Int(x.get<long>()));
      entries.push_back(std::move(entry));
    }
    ds.cocycle.push_back(std::move(entries));
  }
  return ds;
}

std::string dp2_dataset_to_json(const DP2Dataset& ds) {
  auto cyclo_to_json = [](const CycloElement& v) {
    json out = json::array();
    for (const Rat& q : v.coeffs()) out.push_back(q.get_str());
    return out;
  };
  json doc;
  doc["schema"] = "dp2-dataset";
  doc["group"] = "modular16";
  doc["curves"] = ds.curves;
  doc["sigma_perm"] = ds.sigma_perm;
  doc["tau_perm"] = ds.tau_perm;
  doc["eta"] = ds.eta;
  json rows = json::array();
  for (int c = 0; c < ds.coords.cols(); ++c) {
    json row = json::array();
    for (int i = 0; i < ds.coords.rows(); ++i) row.push_back(ds.coords.at(i, c).get_si());
    rows.push_back(row);
  }
  doc["coords"] = rows;
  auto square = [](const IntMatrix& m) {
    json out = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_si());
      out.push_back(row);
    }
    return out;
  };
  doc["pic_sigma"] = square(ds.pic_sigma);
  doc["pic_tau"] = square(ds.pic_tau);
  doc["model"] = json{{"mode", "fg"},
                      {"torsion", ds.model.torsion.get_si()},
                      {"free_generators", ds.model.free_generators}};
  json gv;
  for (size_t k = 0; k < ds.model.free_generators.size(); ++k)
    gv[ds.model.free_generators[k]] = cyclo_to_json(ds.generator_values[k]);
  doc["generator_values"] = gv;
  json cocycle = json::array();
  for (const auto& comp : ds.cocycle) {
    json entries = json::array();
    for (const auto& e : comp) {
      json expo = json::array();
      for (const Int& x : e.expo) expo.push_back(x.get_si());
      entries.push_back(json{{"coeffs", cyclo_to_json(e.value)},
                             {"torsion", e.torsion.get_si()},
                             {"expo", expo}});
    }
    cocycle.push_back(entries);
  }
  doc["cocycle"] = cocycle;
  return doc.dump(1) + "\n";
}

DP2Dataset load_dp2_dataset(const std::string& path) {
  return dp2_dataset_from_json(read_text_file(path));
}

DP2Dataset bundled_dp2_dataset() { return load_dp2_dataset(data_dir() + "/dp2_dataset.json"); }

DP2Report dp2_validate(const DP2Dataset& ds) {
  DP2Report rep;
  auto fail = [&](const std::string& msg) { rep.problems.push_back(msg); };

  if (ds.curves.size() != kCurves) fail("expected 56 curve labels");
  std::set<std::string> seen(ds.curves.begin(), ds.curves.end());
  if (seen.size() != ds.curves.size()) fail("curve labels are not distinct");
  auto curve_index = [&](const std::string& label) -> int {
    for (size_t c = 0; c < ds.curves.size(); ++c)
      if (ds.curves[c] == label) return static_cast<int>(c);
    return -1;
  };

  for (const auto* perm : {&ds.sigma_perm, &ds.tau_perm}) {
    if (perm->size() != ds.curves.size()) {
      fail("permutation length does not match the curve count");
      rep.valid = false;
      return rep;
    }
    std::set<int> hit;
    for (int v : *perm) {
      if (v < 0 || v >= static_cast<int>(ds.curves.size())) fail("permutation value out of range");
      hit.insert(v);
    }
    if (hit.size() != perm->size()) fail("permutation is not a bijection");
  }
  if (!rep.problems.empty()) {
    rep.valid = false;
    return rep;
  }

  // group relations sigma^8 = e, tau^2 = e, tau sigma tau sigma^3 = e
  // (a product acts with its rightmost factor first)
  std::vector<int> id(ds.curves.size());
  for (size_t c = 0; c < id.size(); ++c) id[c] = static_cast<int>(c);
  std::vector<int> s8 = id, s3 = id;
  for (int k = 0; k < 8; ++k) s8 = pcompose(ds.sigma_perm, s8);
  for (int k = 0; k < 3; ++k) s3 = pcompose(ds.sigma_perm, s3);
  if (!is_identity_perm(s8)) fail("sigma_perm does not have order dividing 8");
  if (!is_identity_perm(pcompose(ds.tau_perm, ds.tau_perm))) fail("tau_perm is not an involution");
  std::vector<int> rel = pcompose(ds.tau_perm, pcompose(ds.sigma_perm, pcompose(ds.tau_perm, s3)));
  if (!is_identity_perm(rel)) fail("permutations violate tau*sigma*tau*sigma^3 = e");

  if (ds.eta.size() != kRank) fail("expected 8 basis labels");
  if (ds.coords.rows() != kRank || ds.coords.cols() != static_cast<int>(ds.curves.size()))
    fail("coords must be 8 x 56");
  for (int j = 0; j < static_cast<int>(ds.eta.size()) && j < kRank; ++j) {
    int c = curve_index(ds.eta[j]);
    if (c < 0) {
      fail("basis label " + ds.eta[j] + " is not a curve label");
      continue;
    }
    for (int i = 0; i < kRank; ++i)
      if (ds.coords.at(i, c) != (i == j ? 1 : 0)) {
        fail("coordinates of basis curve " + ds.eta[j] + " are not a standard basis vector");
        break;
      }
  }

  // Pic matrices: same relations, and compatibility with the permutations
  // through the coordinate map
  if (ds.pic_sigma.rows() != kRank || ds.pic_tau.rows() != kRank) {
    fail("Pic matrices must be 8 x 8");
    rep.valid = false;
    return rep;
  }
  IntMatrix I = IntMatrix::identity(kRank);
  IntMatrix As8 = I, As3 = I;
  for (int k = 0; k < 8; ++k) As8 = ds.pic_sigma * As8;
  for (int k = 0; k < 3; ++k) As3 = ds.pic_sigma * As3;
  if (!(As8 == I)) fail("pic_sigma does not have order dividing 8");
  if (!(ds.pic_tau * ds.pic_tau == I)) fail("pic_tau is not an involution");
  if (!(ds.pic_tau * ds.pic_sigma * ds.pic_tau * As3 == I))
    fail("Pic matrices violate tau*sigma*tau*sigma^3 = e");
  bool compat = true;
  for (int c = 0; c < ds.coords.cols(); ++c) {
    if (!(ds.pic_sigma.apply(ds.coords.col(c)) == ds.coords.col(ds.sigma_perm[c])))
      compat = false;
    if (!(ds.pic_tau.apply(ds.coords.col(c)) == ds.coords.col(ds.tau_perm[c]))) compat = false;
  }
  if (!compat) fail("Pic matrices do not intertwine the coordinate map with the permutations");

  // the unit model and the claimed decompositions of the cocycle values
  if (ds.model.mode != UnitModel::Mode::FG || ds.model.torsion != 8)
    fail("model must be finitely generated with torsion mu_8");
  if (ds.generator_values.size() != ds.model.free_generators.size())
    fail("one cyclotomic value per model generator is required");
  for (const auto& v : ds.generator_values)
    if (v.level() != 8 || v.is_zero()) fail("model generator values must be nonzero in Q(zeta_8)");
  if (ds.cocycle.size() != 2) fail("the cocycle must have two components");
  for (size_t s = 0; s < ds.cocycle.size(); ++s) {
    if (ds.cocycle[s].size() != kRank) fail("each cocycle component needs 8 entries");
    for (size_t i = 0; i < ds.cocycle[s].size(); ++i) {
      const DP2CocycleEntry& e = ds.cocycle[s][i];
      if (e.expo.size() != ds.model.free_generators.size()) {
        fail("cocycle entry has the wrong number of exponents");
        continue;
      }
      if (!verify_unit_decomposition(e.value, e.torsion, e.expo, ds.generator_values)) {
        std::ostringstream msg;
        msg << "cocycle entry (" << s << "," << i << ") decomposition does not re-verify";
        fail(msg.str());
      }
    }
  }

  rep.valid = rep.problems.empty();
  return rep;
}

DP2Modules dp2_m16(const DP2Dataset& ds) {
  DP2Report rep = dp2_validate(ds);
  if (!rep.valid) throw MathError("dp2 dataset invalid: " + rep.problems.front());
  auto G = std::make_shared<FinGroup>(FinGroup::modular16());
  // The dataset states the action in the convention where a product of
  // generators acts letter by letter from the right; resolutions here act
  // through the g -> g^{-1} star involution instead.  The two conventions
  // differ by the group automorphism sigma -> sigma^{-1}, tau -> tau, which
  // is composed into the action.  It preserves every subgroup used below, so
  // class orders and restriction kernels are unaffected.
  IntMatrix sigma_inv = IntMatrix::identity(kRank);
  for (int k = 0; k < 7; ++k) sigma_inv = ds.pic_sigma * sigma_inv;
  GModule pic(G, FgAbGroup(kRank, IntMatrix(kRank, 0)),
              {{"sigma", sigma_inv}, {"tau", ds.pic_tau}});
  GModule picd = dual(pic);
  int r = static_cast<int>(ds.model.free_generators.size());
  IntMatrix relc(1 + r, 1);
  relc.at(0, 0) = ds.model.torsion;
  GModule modelmod = GModule::trivial(G, FgAbGroup(1 + r, relc));
  GModule coeff = tensor(modelmod, picd);

  Cochain f;
  f.degree = 2;
  f.values = IntMatrix(coeff.gens(), 2);
  QCochain qf;
  qf.degree = 2;
  for (int s = 0; s < 2; ++s) {
    QVec qv(kRank, Rat(0));
    for (int i = 0; i < kRank; ++i) {
      const DP2CocycleEntry& e = ds.cocycle[s][i];
      f.values.at(0 * kRank + i, s) = e.torsion;
      for (int k = 0; k < r; ++k) f.values.at((1 + k) * kRank + i, s) = e.expo[k];
      Rat q(e.torsion, ds.model.torsion);
      q.canonicalize();
      qv[i] = q;
    }
    qf.values.push_back(std::move(qv));
  }
  return DP2Modules{G, std::move(pic), std::move(picd), std::move(coeff), std::move(f),
                    std::move(qf)};
}

DP2VerifyReport dp2_verify(const DP2Dataset& ds, ResPtr P) {
  DP2VerifyReport rep;
  DP2Report vr = dp2_validate(ds);
  if (!vr.valid) {
    rep.problems = vr.problems;
    return rep;
  }
  DP2Modules m = dp2_m16(ds);
  const GroupPtr& G = m.G;
  if (!P) P = std::make_shared<const FreeResolution>(bundled_m16_resolution());

  rep.cocycle_ok =
      is_cocycle(m.coeff, *P, m.cocycle_fg) && is_qz_cocycle(m.picd, *P, m.cocycle_div);
  if (!rep.cocycle_ok) {
    rep.problems.push_back("the published pair is not a 2-cocycle under this resolution");
    return rep;
  }

  CohGroup h2(m.coeff, P, 2);
  Cochain z = bockstein_shift(m.picd, *P, m.cocycle_div);
  CohGroup h3(m.picd, P, 3);
  rep.order_two = h2.order_of(m.cocycle_fg) == 2 && h3.order_of(z) == 2;
  if (!rep.order_two) rep.problems.push_back("the class does not have order exactly 2");

  int sg = G->generator("sigma"), tg = G->generator("tau");
  std::vector<Subgroup> maximal = {
      subgroup_from_generators(*G, {sg}),
      subgroup_from_generators(*G, {G->mul(tg, sg)}),
      subgroup_from_generators(*G, {tg, G->mul(sg, sg)}),
  };

  auto vanishes_on = [&](const Subgroup& H) {
    auto Hg = std::make_shared<FinGroup>(H.group);
    RestrictedResolution R = restrict_resolution(*P, H, Hg);
    auto RP = std::make_shared<const FreeResolution>(R.res);
    GModule cr = restrict_module(m.coeff, H, Hg);
    Cochain rf = restrict_cochain(m.coeff, R, m.cocycle_fg);
    return CohGroup(cr, RP, 2).is_coboundary(rf);
  };

  rep.restrictions_vanish = true;
  for (const Subgroup& H : maximal)
    if (!vanishes_on(H)) rep.restrictions_vanish = false;
  if (!rep.restrictions_vanish)
    rep.problems.push_back("a restriction to a maximal abelian subgroup is not a coboundary");

  RestrictionKernel dk = bogomolov_kernel(G, P, m.picd, 3, maximal);
  RestrictionKernel fk = bogomolov_kernel(G, P, m.coeff, 2, maximal);
  rep.kernel_invariants_divisible = dk.kernel.group.invariant_factors();
  rep.kernel_invariants_fg = fk.kernel.group.invariant_factors();
  bool dk_member = dk.kernel.contains(dk.ambient.class_of(z));
  bool fk_member = fk.kernel.contains(fk.ambient.class_of(m.cocycle_fg));
  rep.kernel_z2 = dk.kernel.group.order() == 2 && fk.kernel.group.order() == 2 && dk_member &&
                  fk_member;
  if (!rep.kernel_z2)
    rep.problems.push_back("the joint restriction kernel is not Z/2 containing the class");

  // every abelian subgroup lies in a maximal one and restriction is
  // functorial, so checking the maximal abelian subgroups covers them all
  rep.abelian_kernels = true;
  for (const Subgroup& H : maximal_abelian_subgroups(*G))
    if (!vanishes_on(H)) rep.abelian_kernels = false;
  if (!rep.abelian_kernels)
    rep.problems.push_back("an abelian subgroup restriction is not a coboundary");

  return rep;
}

}  // namespace amx
