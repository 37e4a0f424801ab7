#include "amx/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace amx {

using nlohmann::json;

namespace {

Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long>());
}

json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return json(v.get_si());
  return json(v.get_str());
}

IVec ivec_from_json(const json& j) {
  IVec out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

json ivec_to_json(const IVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_to_json(x));
  return out;
}

IntMatrix matrix_from_json(const json& j) {
  int rows = static_cast<int>(j.size());
  int cols = rows ? static_cast<int>(j[0].size()) : 0;
  IntMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw MathError("matrix rows of unequal length");
    for (int c = 0; c < cols; ++c) m.at(i, c) = int_from_json(j[i][c]);
  }
  return m;
}

json matrix_to_json(const IntMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m.at(i, c)));
    out.push_back(row);
  }
  return out;
}

Rat rat_from_string(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

void require_schema(const json& doc, const std::string& want) {
  if (!doc.contains("schema") || doc["schema"].get<std::string>() != want)
    throw MathError("expected a document with schema \"" + want + "\"");
}

json unit_value_to_json(const UnitValue& v) {
  return json{{"frac", rat_to_string(v.frac)}, {"expo", ivec_to_json(v.expo)}};
}

UnitValue unit_value_from_json(const json& j) {
  return UnitValue{rat_from_string(j.at("frac").get<std::string>()),
                   ivec_from_json(j.at("expo"))};
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("AMX_DATA_DIR")) return env;
#ifdef AMX_DATA_DIR
  return AMX_DATA_DIR;
#else
  return "data";
#endif
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MathError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw MathError("cannot write file: " + path);
  out << text;
}

FinGroup group_from_ref(const std::string& ref) {
  auto colon = ref.find(':');
  std::string name = ref.substr(0, colon);
  std::vector<int> params;
  if (colon != std::string::npos) params.push_back(std::stoi(ref.substr(colon + 1)));
  return FinGroup::builtin(name, params);
}

std::string group_ref(const FinGroup& G) {
  for (const std::string& name : {"modular16", "klein"}) {
    FinGroup b = FinGroup::builtin(name);
    if (G.same_table(b)) return name;
  }
  if (G.same_table(FinGroup::cyclic(G.order()))) return "cyclic:" + std::to_string(G.order());
  throw MathError("group is not a serializable builtin");
}

FreeResolution resolution_from_json(const std::string& text, bool validate) {
  json doc = json::parse(text);
  require_schema(doc, "resolution");
  auto G = std::make_shared<FinGroup>(group_from_ref(doc.at("group").get<std::string>()));
  std::vector<int> ranks = doc.at("ranks").get<std::vector<int>>();
  bool star = doc.value("star", false);
  std::vector<GroupRingMatrix> diffs;
  const json& dl = doc.at("differentials");
  if (dl.size() + 1 != ranks.size())
    throw MathError("resolution file: differential count does not match ranks");
  for (size_t n = 0; n < dl.size(); ++n) {
    const json& m = dl[n];
    GroupRingMatrix gm(G, ranks[n], ranks[n + 1]);
    if (static_cast<int>(m.size()) != ranks[n])
      throw MathError("resolution file: differential row count mismatch");
    for (int i = 0; i < ranks[n]; ++i) {
      if (static_cast<int>(m[i].size()) != ranks[n + 1])
        throw MathError("resolution file: differential column count mismatch");
      for (int j = 0; j < ranks[n + 1]; ++j) {
        GRElem e = gr_zero(*G);
        for (const auto& term : m[i][j]) {
          Int coeff = int_from_json(term.at(0));
          int g = G->parse_word(term.at(1).get<std::string>());
          e = gr_add(e, gr_of(*G, g, coeff));
        }
        gm.at(i, j) = star ? gr_star(*G, e) : e;
      }
    }
    diffs.push_back(std::move(gm));
  }
  return custom_resolution(G, std::move(ranks), std::move(diffs), validate);
}

std::string resolution_to_json(const FreeResolution& P) {
  json doc;
  doc["schema"] = "resolution";
  doc["group"] = group_ref(*P.G);
  doc["star"] = false;
  doc["ranks"] = P.ranks;
  json dl = json::array();
  for (const auto& m : P.diff) {
    json jm = json::array();
    for (int i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < m.cols(); ++j) {
        json entry = json::array();
        const GRElem& e = m.at(i, j);
        for (int g = 0; g < P.G->order(); ++g)
          if (e[g] != 0) entry.push_back(json::array({int_to_json(e[g]), P.G->element_name(g)}));
        row.push_back(entry);
      }
      jm.push_back(row);
    }
    dl.push_back(jm);
  }
  doc["differentials"] = dl;
  return doc.dump(1) + "\n";
}

FreeResolution load_resolution(const std::string& path, bool validate) {
  return resolution_from_json(read_text_file(path), validate);
}

void save_resolution(const FreeResolution& P, const std::string& path) {
  write_text_file(path, resolution_to_json(P));
}

FreeResolution bundled_m16_resolution() {
  return load_resolution(data_dir() + "/m16_resolution.json");
}

EquivariantPresentation presentation_from_json(const std::string& text) {
  json doc = json::parse(text);
  require_schema(doc, "presentation");
  EquivariantPresentation p;
  p.G = std::make_shared<FinGroup>(group_from_ref(doc.at("group").get<std::string>()));
  const json& divs = doc.at("divisors");
  p.divisor_labels = divs.at("labels").get<std::vector<std::string>>();
  for (const auto& [name, perm] : divs.at("action").items())
    p.divisor_perms[name] = perm.get<std::vector<int>>();
  p.unit_labels = doc.at("units").at("labels").get<std::vector<std::string>>();
  p.div_map = matrix_from_json(doc.at("div_map"));
  const json& model = doc.at("model");
  std::string mode = model.at("mode").get<std::string>();
  if (mode == "divisible") {
    p.model = divisible_model();
  } else if (mode == "fg") {
    p.model = fg_model(int_from_json(model.at("torsion")),
                       model.at("free_generators").get<std::vector<std::string>>());
  } else {
    throw MathError("presentation file: unknown model mode " + mode);
  }
  for (const auto& [gname, units] : doc.at("twists").items()) {
    std::vector<Twist> tw;
    for (const auto& ulabel : p.unit_labels) {
      const json& t = units.at(ulabel);
      tw.push_back(Twist{unit_value_from_json(t.at("constant")),
                         ivec_from_json(t.at("monomial"))});
    }
    p.twists[gname] = std::move(tw);
  }
  return p;
}

std::string presentation_to_json(const EquivariantPresentation& p) {
  json doc;
  doc["schema"] = "presentation";
  doc["group"] = group_ref(*p.G);
  json divs;
  divs["labels"] = p.divisor_labels;
  json action;
  for (const auto& [name, perm] : p.divisor_perms) action[name] = perm;
  divs["action"] = action;
  doc["divisors"] = divs;
  doc["units"] = json{{"labels", p.unit_labels}};
  doc["div_map"] = matrix_to_json(p.div_map);
  json tw;
  for (const auto& [gname, twists] : p.twists) {
    json per_unit;
    for (size_t u = 0; u < p.unit_labels.size(); ++u)
      per_unit[p.unit_labels[u]] = json{{"constant", unit_value_to_json(twists[u].constant)},
                                        {"monomial", ivec_to_json(twists[u].monomial)}};
    tw[gname] = per_unit;
  }
  doc["twists"] = tw;
  json model;
  model["mode"] = p.model.mode == UnitModel::Mode::FG ? "fg" : "divisible";
  model["torsion"] = int_to_json(p.model.torsion);
  model["free_generators"] = p.model.free_generators;
  doc["model"] = model;
  return doc.dump(1) + "\n";
}

EquivariantPresentation load_presentation(const std::string& path) {
  return presentation_from_json(read_text_file(path));
}

void save_presentation(const EquivariantPresentation& p, const std::string& path) {
  write_text_file(path, presentation_to_json(p));
}

GModule gmodule_from_json(const std::string& text) {
  json doc = json::parse(text);
  require_schema(doc, "gmodule");
  auto G = std::make_shared<FinGroup>(group_from_ref(doc.at("group").get<std::string>()));
  int gens = doc.at("generators").get<int>();
  IntMatrix rels = matrix_from_json(doc.at("relations"));
  if (rels.rows() == 0 && rels.cols() == 0) rels = IntMatrix(gens, 0);
  std::map<std::string, IntMatrix> acts;
  for (const auto& [name, m] : doc.at("actions").items()) acts[name] = matrix_from_json(m);
  return GModule(G, FgAbGroup(gens, std::move(rels)), acts);
}

std::string gmodule_to_json(const GModule& M) {
  json doc;
  doc["schema"] = "gmodule";
  doc["group"] = group_ref(*M.group());
  doc["generators"] = M.gens();
  doc["relations"] = matrix_to_json(M.underlying().relations());
  json acts;
  for (const auto& [name, idx] : M.group()->generators()) acts[name] = matrix_to_json(M.act(idx));
  doc["actions"] = acts;
  return doc.dump(1) + "\n";
}

GModule load_gmodule(const std::string& path) { return gmodule_from_json(read_text_file(path)); }

void save_gmodule(const GModule& M, const std::string& path) {
  write_text_file(path, gmodule_to_json(M));
}

namespace {

// "m=4,b=2" -> cyclic presentation over a rational model whose free
// generators are the primes dividing b
EquivariantPresentation cyclic_from_spec(const std::string& spec) {
  int m = 0;
  long b = 0;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw MathError("cyclic spec: expected key=value, got " + item);
    std::string key = item.substr(0, eq);
    long val = std::stol(item.substr(eq + 1));
    if (key == "m")
      m = static_cast<int>(val);
    else if (key == "b")
      b = val;
    else
      throw MathError("cyclic spec: unknown key " + key);
  }
  if (m < 2) throw MathError("cyclic spec: need m >= 2");
  if (b == 0) throw MathError("cyclic spec: need a nonzero b");
  std::vector<std::string> gens;
  IVec expo;
  long n = b < 0 ? -b : b;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    int e = 0;
    while (n % q == 0) n /= q, ++e;
    gens.push_back("p" + std::to_string(q));
    expo.push_back(e);
  }
  if (n > 1) {
    gens.push_back("p" + std::to_string(n));
    expo.push_back(1);
  }
  UnitModel model = fg_model(2, gens);
  UnitValue bval{b < 0 ? Rat(1, 2) : Rat(0), expo};
  return cyclic_projective(m, bval, model);
}

}  // namespace

EquivariantPresentation builtin_presentation(const std::string& name) {
  if (name == "klein-p1") return klein_p1();
  if (name == "klein-p1-enlarged") return klein_p1_enlarged();
  if (name == "toric-klein") return toric_klein();
  if (name.rfind("cyclic:", 0) == 0) return cyclic_from_spec(name.substr(7));
  throw MathError("unknown builtin presentation: " + name);
}

}  // namespace amx
