// Finite groups as validated multiplication tables with named generators and
// stored generator words, plus subgroup machinery (closure, enumeration,
// Sylow, abelian invariants).  Scale target is |G| <= 64.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "amx/intlat.hpp"

namespace amx {

class FinGroup {
 public:
  // table[a][b] = index of a*b; generators maps a name to an element index.
  FinGroup(std::vector<std::vector<int>> table,
           std::vector<std::pair<std::string, int>> generators);

  static FinGroup cyclic(int m);
  static FinGroup klein();
  static FinGroup modular16();
  static FinGroup direct_product(const FinGroup& a, const FinGroup& b);
  // name in {"cyclic", "klein", "modular16"}; params used by cyclic(m).
  static FinGroup builtin(const std::string& name, const std::vector<int>& params = {});

  int order() const { return order_; }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int power(int a, long n) const;
  int conj(int a, int b) const { return mul(mul(b, a), inv(b)); }  // b a b^-1
  int element_order(int a) const;
  bool is_abelian() const;

  const std::vector<std::pair<std::string, int>>& generators() const { return generators_; }
  int generator(const std::string& name) const;
  bool has_generator(const std::string& name) const;

  // word for an element: sequence of generator positions (into generators()),
  // product taken left to right; minimal length, deterministic.
  const std::vector<int>& word(int g) const { return words_[g]; }
  int eval_word(const std::vector<int>& w) const;
  std::string element_name(int g) const;
  // parse products like "sigma^4*tau*sigma" or "e" into an element index
  int parse_word(const std::string& s) const;

  bool same_table(const FinGroup& other) const {
    return table_ == other.table_ && generators_ == other.generators_;
  }

 private:
  void validate_and_fill();

  int order_ = 0;
  std::vector<std::vector<int>> table_;
  int identity_ = -1;
  std::vector<int> inverse_;
  std::vector<std::pair<std::string, int>> generators_;
  std::vector<std::vector<int>> words_;
};

struct Subgroup {
  std::vector<int> elements;        // sorted parent indices, elements[0..]
  FinGroup group;                   // own table, indexed like `elements`
  std::vector<int> parent_to_sub;   // parent index -> subgroup index or -1

  int index_in_parent(int parent_order) const { return parent_order / static_cast<int>(elements.size()); }
  bool contains(int parent_elem) const { return parent_to_sub[parent_elem] >= 0; }
  int to_sub(int parent_elem) const { return parent_to_sub[parent_elem]; }
  int to_parent(int sub_elem) const { return elements[sub_elem]; }
};

Subgroup subgroup_from_generators(const FinGroup& G, const std::vector<int>& gens);
Subgroup whole_group_as_subgroup(const FinGroup& G);
std::vector<Subgroup> all_subgroups(const FinGroup& G);
bool subgroup_is_abelian(const FinGroup& G, const Subgroup& H);
Subgroup sylow(const FinGroup& G, int p);
std::vector<Subgroup> maximal_abelian_subgroups(const FinGroup& G);

// invariant factors of an abelian subgroup (errors if nonabelian)
std::vector<Int> abelian_invariants(const FinGroup& G, const Subgroup& H);

// left coset representatives of H in G (deterministic: smallest unused index)
std::vector<int> left_coset_reps(const FinGroup& G, const Subgroup& H);

}  // namespace amx
