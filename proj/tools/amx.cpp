// Command-line front end: cohomology groups, Amitsur groups, the universal
// torsor obstruction, resolution verification, the bundled del Pezzo cocycle
// pipeline, and restriction-kernel computations.
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "amx/dp2.hpp"
#include "amx/io.hpp"
#include "json.hpp"

using namespace amx;
using nlohmann::ordered_json;

namespace {

// exit codes per the external contract
constexpr int kPass = 0;      // computed / all assertions hold
constexpr int kNonzero = 1;   // the queried obstruction is nonzero / a check failed
constexpr int kInvalid = 2;   // invalid input

long rank_guard() {
  if (const char* e = std::getenv("AMX_RANK_GUARD")) return std::atol(e);
  return 512;
}

struct Output {
  bool json = false;
  ordered_json doc;
  std::string text;

  void line(const std::string& s) { text += s + "\n"; }
  void emit() const {
    if (json)
      std::cout << doc.dump(1) << "\n";
    else
      std::cout << text;
  }
};

std::string invariants_str(const FgAbGroup& g) { return invariant_factor_string(g); }

ordered_json invariants_json(const FgAbGroup& g) {
  ordered_json out = ordered_json::array();
  for (const Int& d : g.invariant_factors()) out.push_back(d.get_str());
  return out;
}

ordered_json ivec_json(const IVec& v) {
  ordered_json out = ordered_json::array();
  for (const Int& x : v) out.push_back(x.get_str());
  return out;
}

bool looks_like_file(const std::string& s) {
  return s.find('/') != std::string::npos || s.rfind(".json") == s.size() - 5;
}

EquivariantPresentation presentation_arg(const std::string& s) {
  if (looks_like_file(s) && s.size() >= 5) return load_presentation(s);
  return builtin_presentation(s);
}

// --module: trivialZ | trivial-lattice:r | trivial:N | regular | tns | a file
GModule module_arg(const std::string& spec, const GroupPtr& G) {
  if (spec == "trivialZ") return GModule::trivial_lattice(G, 1);
  if (spec == "regular") return GModule::regular(G);
  if (spec.rfind("trivial-lattice:", 0) == 0)
    return GModule::trivial_lattice(G, std::stoi(spec.substr(16)));
  if (spec.rfind("trivial:", 0) == 0) {
    IntMatrix rel(1, 1);
    rel.at(0, 0) = Int(spec.substr(8));
    return GModule::trivial(G, FgAbGroup(1, rel));
  }
  if (spec == "tns") {
    if (!G->same_table(FinGroup::modular16()))
      throw MathError("coefficient \"tns\" is only defined for the modular16 group");
    return dp2_m16(bundled_dp2_dataset()).picd;
  }
  if (looks_like_file(spec)) {
    GModule M = load_gmodule(spec);
    if (!M.group()->same_table(*G)) throw MathError("module file is over a different group");
    return M;
  }
  throw MathError("unknown module spec: " + spec);
}

ResPtr resolution_arg(const std::string& spec, const GroupPtr& G, int depth) {
  FreeResolution P = spec == "auto" ? auto_resolution(G, depth) : load_resolution(spec);
  if (!P.G->same_table(*G)) throw MathError("resolution file is over a different group");
  if (P.top() < depth) P = extend_resolution(std::move(P), depth, rank_guard());
  return std::make_shared<const FreeResolution>(std::move(P));
}

std::pair<int, int> degrees_arg(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int n = std::stoi(s);
    return {n, n};
  }
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmd_cohomology(Output& out, const std::string& group, const std::string& module,
                   int degree, const std::string& resolution) {
  auto G = std::make_shared<const FinGroup>(group_from_ref(group));
  GModule M = module_arg(module, G);
  ResPtr P = resolution_arg(resolution, G, degree + 1);
  CohGroup H(M, P, degree);
  out.doc["group"] = group;
  out.doc["module"] = module;
  out.doc["degree"] = degree;
  out.doc["resolution"] = resolution;
  out.doc["invariant_factors"] = invariants_json(H.group());
  out.doc["pretty"] = invariants_str(H.group());
  out.line("H^" + std::to_string(degree) + "(" + group + ", " + module +
           ") = " + invariants_str(H.group()));
  return kPass;
}

int cmd_amitsur(Output& out, const std::string& pres, const std::string& torus,
                const std::string& degrees) {
  EquivariantPresentation p = presentation_arg(pres);
  PresentationReport rep = presentation_validate(p);
  if (!rep.valid) {
    for (const auto& msg : rep.problems) out.line("invalid presentation: " + msg);
    out.doc["problems"] = rep.problems;
    return kInvalid;
  }
  GTorus S = torus == "Gm" ? split_torus(p.G) : GTorus(load_gmodule(torus));
  auto [lo, hi] = degrees_arg(degrees);
  if (lo < 2 || hi < lo) throw MathError("degrees must be a range within 2..");
  auto P = std::make_shared<const FreeResolution>(auto_resolution(p.G, hi + 3));
  const bool shifted = p.model.mode == UnitModel::Mode::DIVISIBLE;
  out.doc["presentation"] = pres;
  out.doc["mode"] = shifted ? "divisible" : "fg";
  out.doc["shifted"] = shifted;
  ordered_json per_degree = ordered_json::array();
  for (int n = lo; n <= hi; ++n) {
    FgAbGroup am = amitsur_group(p, S, n, P);
    per_degree.push_back(ordered_json{{"degree", n},
                                      {"invariant_factors", invariants_json(am)},
                                      {"pretty", invariants_str(am)}});
    out.line("Am^" + std::to_string(n) + " = " + invariants_str(am) +
             (shifted ? "   (computed one degree up via the torsion shift)" : ""));
  }
  out.doc["amitsur"] = per_degree;
  return kPass;
}

int cmd_beta(Output& out, const std::string& pres) {
  EquivariantPresentation p = presentation_arg(pres);
  PresentationReport rep = presentation_validate(p);
  if (!rep.valid) {
    for (const auto& msg : rep.problems) out.line("invalid presentation: " + msg);
    out.doc["problems"] = rep.problems;
    return kInvalid;
  }
  BetaResult b = beta(p);
  out.doc["presentation"] = pres;
  out.doc["nonzero"] = b.nonzero;
  out.doc["shifted"] = b.shifted;
  out.doc["cochain_degree"] = b.cochain.degree;
  ordered_json vals = ordered_json::array();
  for (int j = 0; j < b.cochain.values.cols(); ++j) {
    ordered_json col = ordered_json::array();
    for (int i = 0; i < b.cochain.values.rows(); ++i)
      col.push_back(b.cochain.values.at(i, j).get_str());
    vals.push_back(col);
  }
  out.doc["representative"] = vals;
  out.line(std::string("beta is ") + (b.nonzero ? "NONZERO" : "zero"));
  out.line("representative cocycle in degree " + std::to_string(b.cochain.degree) +
           (b.shifted ? " (torsion-shifted coordinates)" : ""));
  return b.nonzero ? kNonzero : kPass;
}

int cmd_verify_resolution(Output& out, const std::string& file) {
  FreeResolution P = load_resolution(file, /*validate=*/false);
  out.doc["file"] = file;
  ordered_json ranks = ordered_json::array();
  for (int r : P.ranks) ranks.push_back(r);
  out.doc["ranks"] = ranks;
  try {
    validate_resolution(P);
  } catch (const MathError& e) {
    out.doc["valid"] = false;
    out.doc["problem"] = e.what();
    out.line(std::string("FAIL: ") + e.what());
    return kNonzero;
  }
  out.doc["valid"] = true;
  out.line("PASS: exact resolution of Z through degree " + std::to_string(P.top()));
  return kPass;
}

int cmd_dp2_verify(Output& out, const std::string& dataset) {
  DP2Dataset ds = dataset == "bundled" ? bundled_dp2_dataset() : load_dp2_dataset(dataset);
  DP2Report vr = dp2_validate(ds);
  if (!vr.valid) {
    out.doc["valid"] = false;
    out.doc["problems"] = vr.problems;
    for (const auto& msg : vr.problems) out.line("invalid dataset: " + msg);
    return kInvalid;
  }
  DP2VerifyReport rep = dp2_verify(ds);
  auto check = [&](const char* name, bool ok) {
    out.doc[name] = ok;
    out.line(std::string(ok ? "PASS" : "FAIL") + ": " + name);
  };
  check("cocycle_condition", rep.cocycle_ok);
  check("class_order_two", rep.order_two);
  check("maximal_abelian_restrictions_vanish", rep.restrictions_vanish);
  check("joint_restriction_kernel_z2_with_class", rep.kernel_z2);
  check("all_abelian_subgroup_kernels", rep.abelian_kernels);
  out.doc["kernel_invariants_divisible"] = ivec_json(rep.kernel_invariants_divisible);
  out.doc["kernel_invariants_fg"] = ivec_json(rep.kernel_invariants_fg);
  out.doc["problems"] = rep.problems;
  out.line("note: multiplicative independence of the model's free generators is an input-side");
  out.line("      assumption; all claimed identities were re-verified in exact arithmetic");
  return rep.all_passed() ? kPass : kNonzero;
}

int cmd_bogomolov(Output& out, const std::string& group, const std::string& coeff,
                  const std::string& degrees) {
  auto G = std::make_shared<const FinGroup>(group_from_ref(group));
  GModule M = module_arg(coeff, G);
  auto [lo, hi] = degrees_arg(degrees);
  if (lo < 1 || hi < lo) throw MathError("degrees must be a range within 1..");
  ResPtr P;
  if (G->same_table(FinGroup::modular16())) {
    FreeResolution R = bundled_m16_resolution();
    if (R.top() < hi + 1) R = extend_resolution(std::move(R), hi + 1, rank_guard());
    P = std::make_shared<const FreeResolution>(std::move(R));
  } else {
    P = std::make_shared<const FreeResolution>(auto_resolution(G, hi + 2));
  }
  std::vector<Subgroup> abelians = maximal_abelian_subgroups(*G);
  out.doc["group"] = group;
  out.doc["coefficients"] = coeff;
  ordered_json per_degree = ordered_json::array();
  for (int n = lo; n <= hi; ++n) {
    RestrictionKernel k = bogomolov_kernel(G, P, M, n, abelians);
    per_degree.push_back(ordered_json{{"degree", n},
                                      {"ambient", invariants_str(k.ambient.group())},
                                      {"kernel", invariants_str(k.kernel.group)},
                                      {"kernel_invariants", invariants_json(k.kernel.group)}});
    out.line("degree " + std::to_string(n) + ": kernel " + invariants_str(k.kernel.group) +
             "  (ambient " + invariants_str(k.ambient.group()) + ")");
  }
  out.doc["kernels"] = per_degree;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Amitsur-group and torsor-obstruction calculator"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --format after the subcommand
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string group = "klein", module = "trivialZ", resolution = "auto";
  int degree = 2;
  auto* coh = app.add_subcommand("cohomology", "invariant factors of H^n(G, M)");
  coh->add_option("--group", group, "group reference, e.g. klein, cyclic:4, modular16");
  coh->add_option("--module", module,
                  "trivialZ | trivial-lattice:r | trivial:N | regular | tns | file");
  coh->add_option("--degree", degree, "cohomological degree")->required();
  coh->add_option("--resolution", resolution, "auto or a resolution file");

  std::string pres = "klein-p1", torus = "Gm", degrees = "2..6";
  auto* am = app.add_subcommand("amitsur", "Amitsur groups of an equivariant presentation");
  am->add_option("--presentation", pres, "builtin name or presentation file")->required();
  am->add_option("--torus", torus, "Gm or a cocharacter-lattice module file");
  am->add_option("--degrees", degrees, "degree or range, e.g. 2..8");

  std::string bpres = "klein-p1";
  auto* bt = app.add_subcommand("beta", "universal torsor obstruction");
  bt->add_option("--presentation", bpres, "builtin name or presentation file")->required();

  std::string resfile;
  auto* vr = app.add_subcommand("verify-resolution", "validate a resolution file");
  vr->add_option("--file", resfile, "resolution file")->required();

  std::string dataset = "bundled";
  auto* dv = app.add_subcommand("dp2-verify", "verify the del Pezzo obstruction dataset");
  dv->add_option("--dataset", dataset, "dataset file, or \"bundled\"");

  std::string bkgroup = "modular16", bkcoeff = "trivialZ", bkdegrees = "2..5";
  auto* bk = app.add_subcommand("bogomolov-kernel",
                                "intersection of restriction kernels over maximal abelians");
  bk->add_option("--group", bkgroup, "group reference");
  bk->add_option("--coeff", bkcoeff, "trivialZ | tns | other module spec");
  bk->add_option("--degrees", bkdegrees, "degree or range");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalid;
  }

  Output out;
  out.json = format == "json";
  out.doc["schema"] = "report";
  out.doc["command"] = app.get_subcommands().front()->get_name();
  int code = kInvalid;
  try {
    if (coh->parsed()) code = cmd_cohomology(out, group, module, degree, resolution);
    if (am->parsed()) code = cmd_amitsur(out, pres, torus, degrees);
    if (bt->parsed()) code = cmd_beta(out, bpres);
    if (vr->parsed()) code = cmd_verify_resolution(out, resfile);
    if (dv->parsed()) code = cmd_dp2_verify(out, dataset);
    if (bk->parsed()) code = cmd_bogomolov(out, bkgroup, bkcoeff, bkdegrees);
  } catch (const MathError& e) {
    out.doc["error"] = e.what();
    out.line(std::string("error: ") + e.what());
    out.emit();
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  out.doc["exit_code"] = code;
  out.emit();
  return code;
}
