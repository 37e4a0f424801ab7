#include "amx/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace amx {

FinGroup::FinGroup(std::vector<std::vector<int>> table,
                   std::vector<std::pair<std::string, int>> generators)
    : table_(std::move(table)), generators_(std::move(generators)) {
  order_ = static_cast<int>(table_.size());
  validate_and_fill();
}

void FinGroup::validate_and_fill() {
  const int n = order_;
  if (n <= 0 || n > 64) throw MathError("FinGroup: order must be in 1..64");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw MathError("FinGroup: table not square");
    for (int x : row)
      if (x < 0 || x >= n) throw MathError("FinGroup: table entry out of range");
  }
  // identity
  identity_ = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = (table_[e][a] == a && table_[a][e] == a);
    if (ok) {
      identity_ = e;
      break;
    }
  }
  if (identity_ < 0) throw MathError("FinGroup: no identity element");
  // inverses
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_ && table_[b][a] == identity_) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] < 0) throw MathError("FinGroup: element without inverse");
  }
  // associativity, exhaustively
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw MathError("FinGroup: table is not associative");
  // generator indices valid and generating; words by BFS (minimal length,
  // generators tried in declaration order for a deterministic tie-break)
  for (const auto& [name, idx] : generators_)
    if (idx < 0 || idx >= n) throw MathError("FinGroup: generator index out of range");
  words_.assign(n, {});
  std::vector<bool> seen(n, false);
  seen[identity_] = true;
  std::deque<int> queue{identity_};
  while (!queue.empty()) {
    int g = queue.front();
    queue.pop_front();
    for (size_t k = 0; k < generators_.size(); ++k) {
      int h = table_[g][generators_[k].second];
      if (!seen[h]) {
        seen[h] = true;
        words_[h] = words_[g];
        words_[h].push_back(static_cast<int>(k));
        queue.push_back(h);
      }
    }
  }
  for (int g = 0; g < n; ++g)
    if (!seen[g]) throw MathError("FinGroup: generators do not generate the group");
}

int FinGroup::power(int a, long n) const {
  long m = n % order_;
  if (m < 0) m += order_;
  int r = identity_;
  for (long i = 0; i < m; ++i) r = mul(r, a);
  return r;
}

int FinGroup::element_order(int a) const {
  int r = a, k = 1;
  while (r != identity_) {
    r = mul(r, a);
    ++k;
  }
  return k;
}

bool FinGroup::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FinGroup::generator(const std::string& name) const {
  for (const auto& [n, idx] : generators_)
    if (n == name) return idx;
  throw MathError("FinGroup: unknown generator '" + name + "'");
}

bool FinGroup::has_generator(const std::string& name) const {
  for (const auto& [n, idx] : generators_)
    if (n == name) return true;
  return false;
}

int FinGroup::eval_word(const std::vector<int>& w) const {
  int r = identity_;
  for (int k : w) {
    if (k < 0 || k >= static_cast<int>(generators_.size())) throw MathError("eval_word: bad generator position");
    r = mul(r, generators_[k].second);
  }
  return r;
}

std::string FinGroup::element_name(int g) const {
  if (g == identity_) return "e";
  const auto& w = words_[g];
  std::ostringstream os;
  size_t i = 0;
  bool first = true;
  while (i < w.size()) {
    size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!first) os << "*";
    os << generators_[w[i]].first;
    if (j - i > 1) os << "^" << (j - i);
    first = false;
    i = j;
  }
  return os.str();
}

int FinGroup::parse_word(const std::string& s) const {
  // grammar: "e" | factor ("*" factor)*, factor = name ("^" integer)?
  int r = identity_;
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  if (i >= s.size()) throw MathError("parse_word: empty word");
  while (i < s.size()) {
    skip_ws();
    size_t start = i;
    while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
    std::string name = s.substr(start, i - start);
    if (name.empty()) throw MathError("parse_word: bad syntax in '" + s + "'");
    long expo = 1;
    skip_ws();
    if (i < s.size() && s[i] == '^') {
      ++i;
      skip_ws();
      size_t es = i;
      if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
      while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
      expo = std::stol(s.substr(es, i - es));
    }
    int base;
    if (name == "e")
      base = identity_;
    else
      base = generator(name);
    r = mul(r, power(base, expo));
    skip_ws();
    if (i < s.size()) {
      if (s[i] != '*') throw MathError("parse_word: expected '*' in '" + s + "'");
      ++i;
    }
  }
  return r;
}

FinGroup FinGroup::cyclic(int m) {
  if (m < 1) throw MathError("cyclic: m must be >= 1");
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  std::vector<std::pair<std::string, int>> gens;
  if (m > 1) gens.emplace_back("sigma", 1);
  return FinGroup(std::move(t), std::move(gens));
}

FinGroup FinGroup::klein() {
  // elements are bit pairs 0..3, group law is xor
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return FinGroup(std::move(t), {{"sigma", 1}, {"tau", 2}});
}

FinGroup FinGroup::modular16() {
  // <sigma, tau | sigma^8 = tau^2 = tau sigma tau sigma^3 = e>,
  // normal form sigma^a tau^b with tau sigma = sigma^5 tau;
  // index = a + 8b, (s^a t^b)(s^c t^d) = s^(a + c*5^b) t^(b+d)
  auto idx = [](int a, int b) { return (a & 7) + 8 * (b & 1); };
  std::vector<std::vector<int>> t(16, std::vector<int>(16));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 8; ++c)
        for (int d = 0; d < 2; ++d) {
          int cc = (b == 0) ? c : (c * 5) % 8;
          t[idx(a, b)][idx(c, d)] = idx(a + cc, b + d);
        }
  return FinGroup(std::move(t), {{"sigma", idx(1, 0)}, {"tau", idx(0, 1)}});
}

FinGroup FinGroup::direct_product(const FinGroup& a, const FinGroup& b) {
  const int na = a.order(), nb = b.order();
  auto idx = [nb](int x, int y) { return x * nb + y; };
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x1 = 0; x1 < na; ++x1)
    for (int y1 = 0; y1 < nb; ++y1)
      for (int x2 = 0; x2 < na; ++x2)
        for (int y2 = 0; y2 < nb; ++y2)
          t[idx(x1, y1)][idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
  std::vector<std::pair<std::string, int>> gens;
  for (const auto& [name, g] : a.generators()) gens.emplace_back(name + "_1", idx(g, b.identity()));
  for (const auto& [name, g] : b.generators()) gens.emplace_back(name + "_2", idx(a.identity(), g));
  return FinGroup(std::move(t), std::move(gens));
}

FinGroup FinGroup::builtin(const std::string& name, const std::vector<int>& params) {
  if (name == "cyclic") {
    if (params.size() != 1) throw MathError("builtin cyclic needs one parameter m");
    return cyclic(params[0]);
  }
  if (name == "klein") return klein();
  if (name == "modular16" || name == "m16") return modular16();
  throw MathError("unknown builtin group '" + name + "'");
}

namespace {

std::vector<int> closure(const FinGroup& G, std::vector<int> seed) {
  std::set<int> elems(seed.begin(), seed.end());
  elems.insert(G.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(elems.begin(), elems.end());
    for (int a : cur)
      for (int b : cur) {
        if (elems.insert(G.mul(a, b)).second) grew = true;
        if (elems.insert(G.inv(a)).second) grew = true;
      }
  }
  return {elems.begin(), elems.end()};
}

Subgroup make_subgroup(const FinGroup& G, std::vector<int> elems, std::vector<int> gen_parent_idx) {
  std::sort(elems.begin(), elems.end());
  const int m = static_cast<int>(elems.size());
  std::vector<int> p2s(G.order(), -1);
  for (int i = 0; i < m; ++i) p2s[elems[i]] = i;
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int prod = G.mul(elems[i], elems[j]);
      if (p2s[prod] < 0) throw MathError("make_subgroup: set not closed");
      t[i][j] = p2s[prod];
    }
  std::vector<std::pair<std::string, int>> gens;
  int k = 1;
  for (int pg : gen_parent_idx) {
    if (pg == G.identity()) continue;
    gens.emplace_back("g" + std::to_string(k++), p2s[pg]);
  }
  // ensure the declared generators generate; if not, extend deterministically
  {
    std::set<int> have;
    std::vector<int> seed;
    for (auto& [n, i] : gens) seed.push_back(elems[i]);
    auto cl = closure(G, seed);
    have.insert(cl.begin(), cl.end());
    for (int e : elems)
      if (!have.count(e)) {
        gens.emplace_back("g" + std::to_string(k++), p2s[e]);
        seed.push_back(e);
        cl = closure(G, seed);
        have.insert(cl.begin(), cl.end());
      }
  }
  Subgroup out{std::move(elems), FinGroup(std::move(t), std::move(gens)), std::move(p2s)};
  return out;
}

}  // namespace

Subgroup subgroup_from_generators(const FinGroup& G, const std::vector<int>& gens) {
  for (int g : gens)
    if (g < 0 || g >= G.order()) throw MathError("subgroup_from_generators: element out of range");
  return make_subgroup(G, closure(G, gens), gens);
}

Subgroup whole_group_as_subgroup(const FinGroup& G) {
  std::vector<int> gens;
  for (const auto& [name, idx] : G.generators()) gens.push_back(idx);
  return subgroup_from_generators(G, gens);
}

std::vector<Subgroup> all_subgroups(const FinGroup& G) {
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  auto trivial = closure(G, {});
  seen.insert(trivial);
  queue.push_back(trivial);
  std::vector<std::vector<int>> found{trivial};
  while (!queue.empty()) {
    auto H = queue.front();
    queue.pop_front();
    std::set<int> hset(H.begin(), H.end());
    for (int g = 0; g < G.order(); ++g) {
      if (hset.count(g)) continue;
      auto bigger = H;
      bigger.push_back(g);
      auto K = closure(G, bigger);
      if (seen.insert(K).second) {
        queue.push_back(K);
        found.push_back(K);
      }
    }
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Subgroup> out;
  for (auto& elems : found) out.push_back(make_subgroup(G, elems, {}));
  return out;
}

bool subgroup_is_abelian(const FinGroup& G, const Subgroup& H) {
  (void)G;
  return H.group.is_abelian();
}

Subgroup sylow(const FinGroup& G, int p) {
  if (p < 2) throw MathError("sylow: p must be prime");
  int target = 1;
  int n = G.order();
  while (n % p == 0) {
    target *= p;
    n /= p;
  }
  // target = 1: p does not divide |G|; return the trivial subgroup
  for (auto& H : all_subgroups(G))
    if (static_cast<int>(H.elements.size()) == target) return H;
  throw MathError("sylow: internal error, no subgroup of Sylow order found");
}

std::vector<Subgroup> maximal_abelian_subgroups(const FinGroup& G) {
  auto subs = all_subgroups(G);
  std::vector<Subgroup> ab;
  for (auto& H : subs)
    if (H.group.is_abelian()) ab.push_back(H);
  std::vector<Subgroup> out;
  for (size_t i = 0; i < ab.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < ab.size() && maximal; ++j) {
      if (i == j || ab[j].elements.size() <= ab[i].elements.size()) continue;
      bool contained = std::includes(ab[j].elements.begin(), ab[j].elements.end(),
                                     ab[i].elements.begin(), ab[i].elements.end());
      if (contained) maximal = false;
    }
    if (maximal) out.push_back(ab[i]);
  }
  return out;
}

std::vector<Int> abelian_invariants(const FinGroup& G, const Subgroup& H) {
  if (!H.group.is_abelian()) throw MathError("abelian_invariants: subgroup is not abelian");
  (void)G;
  const int m = static_cast<int>(H.elements.size());
  // present on all elements with relations e_a + e_b - e_{ab}
  IntMatrix rel(m, m * m);
  int c = 0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b, ++c) {
      rel.at(a, c) += 1;
      rel.at(b, c) += 1;
      rel.at(H.group.mul(a, b), c) -= 1;
    }
  auto g = group_from_relations(m, rel);
  return g.invariant_factors();
}

std::vector<int> left_coset_reps(const FinGroup& G, const Subgroup& H) {
  std::vector<bool> covered(G.order(), false);
  std::vector<int> reps;
  for (int g = 0; g < G.order(); ++g) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (int h : H.elements) covered[G.mul(g, h)] = true;
  }
  return reps;
}

}  // namespace amx
