// G-modules: finitely generated abelian groups with a validated action of a
// finite group, plus equivariant maps and the standard constructions
// (trivial, regular, permutation, tensor, dual, restriction, sub/quotients).
#pragma once

#include <map>
#include <memory>

#include "amx/fingroup.hpp"
#include "amx/intlat.hpp"

namespace amx {

using GroupPtr = std::shared_ptr<const FinGroup>;

class GModule {
 public:
  // generator_actions: one matrix per named group generator; the action of
  // every element is materialized through its word and validated exhaustively.
  GModule(GroupPtr G, FgAbGroup underlying,
          const std::map<std::string, IntMatrix>& generator_actions);
  // per-element matrices supplied directly (still validated)
  GModule(GroupPtr G, FgAbGroup underlying, std::vector<IntMatrix> per_element);

  static GModule trivial(GroupPtr G, FgAbGroup A);
  static GModule trivial_lattice(GroupPtr G, int rank);
  static GModule regular(GroupPtr G);
  // perms[k] = permutation of points under the k-th named generator
  static GModule permutation(GroupPtr G, int npoints,
                             const std::map<std::string, std::vector<int>>& generator_perms);

  const GroupPtr& group() const { return group_; }
  const FgAbGroup& underlying() const { return underlying_; }
  int gens() const { return underlying_.generator_count(); }
  const IntMatrix& act(int g) const { return action_[g]; }
  IVec apply(int g, const IVec& x) const { return action_[g].apply(x); }

  bool is_lattice() const { return underlying_.invariant_factors().size() == static_cast<size_t>(underlying_.free_rank()); }
  bool is_faithful() const;

 private:
  void validate() const;

  GroupPtr group_;
  FgAbGroup underlying_;
  std::vector<IntMatrix> action_;
};

GModule tensor(const GModule& M, const GModule& N);       // lex, source-major
GModule dual(const GModule& L);                           // contragredient; L must be a lattice
GModule restrict_module(const GModule& M, const Subgroup& H, const GroupPtr& Hgroup);
GModule direct_sum(const GModule& M, const GModule& N);

struct GMap {
  GMap(GModule source, GModule target, IntMatrix matrix, bool validate = true);

  static GMap identity(const GModule& M);
  static GMap zero(const GModule& source, const GModule& target);

  GModule source, target;
  IntMatrix matrix;  // target.gens() x source.gens()

  IVec apply(const IVec& x) const { return matrix.apply(x); }
  bool is_injective() const;
  bool is_surjective() const;
};

GMap compose(const GMap& g, const GMap& f);  // g∘f

// kernel: returns the inclusion (source = kernel module presented on a basis
// of the preimage lattice of target relations, target = f.source)
GMap kernel_of(const GMap& f);
// image: returns the inclusion (source = image presented on f of the source
// generators, target = f.target)
GMap image_of(const GMap& f);
// cokernel: returns the projection (source = f.target, target = quotient)
GMap cokernel_of(const GMap& f);

// A torus datum: its cocharacter lattice (must be a G-lattice).
struct GTorus {
  explicit GTorus(GModule cocharacters);
  GModule cochar;
};

}  // namespace amx
