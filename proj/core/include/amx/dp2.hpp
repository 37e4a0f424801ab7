// The degree-2 del Pezzo dataset: the 56 exceptional-curve labels with the
// order-16 modular group action, Picard coordinates, and the published
// obstruction 2-cocycle, plus its verification against the bundled resolution.
#pragma once

#include "amx/amitsur.hpp"
#include "amx/cyclofield.hpp"

namespace amx {

// one coefficient of the cocycle: an element of k^x given both as an exact
// cyclotomic value and as zeta_8^torsion * prod generators^expo
struct DP2CocycleEntry {
  CycloElement value;
  Int torsion;
  IVec expo;
};

struct DP2Dataset {
  std::vector<std::string> curves;  // 56 labels
  std::vector<int> sigma_perm, tau_perm;
  std::vector<std::string> eta;  // labels of the chosen basis lift
  IntMatrix coords;              // 8 x 56, column c = class of curve c in the eta basis
  IntMatrix pic_sigma, pic_tau;  // 8 x 8 action on Pic in the eta basis
  UnitModel model;               // FG model containing all cocycle values
  std::vector<CycloElement> generator_values;          // per model free generator
  std::vector<std::vector<DP2CocycleEntry>> cocycle;   // 2 components, 8 entries each
};

DP2Dataset dp2_dataset_from_json(const std::string& text);
std::string dp2_dataset_to_json(const DP2Dataset& ds);
DP2Dataset load_dp2_dataset(const std::string& path);
DP2Dataset bundled_dp2_dataset();

struct DP2Report {
  bool valid = false;
  std::vector<std::string> problems;
};
// internal consistency: label permutations satisfy the group relations, the
// basis columns are standard basis vectors, the Pic matrices satisfy the
// relations and match the permutations through the coordinate map, and every
// claimed unit decomposition re-verifies in exact cyclotomic arithmetic
DP2Report dp2_validate(const DP2Dataset& ds);

// the dataset materialized as modules and cochains over the group
struct DP2Modules {
  GroupPtr G;
  GModule pic;        // the Picard lattice
  GModule picd;       // its dual (cocharacters of the Neron-Severi torus)
  GModule coeff;      // FG model (x) picd
  Cochain cocycle_fg;     // degree-2 cochain over coeff
  QCochain cocycle_div;   // torsion exponents mod 1, over picd
};
DP2Modules dp2_m16(const DP2Dataset& ds);  // validates first

struct DP2VerifyReport {
  bool cocycle_ok = false;           // 2-cocycle in both coefficient modes
  bool order_two = false;            // class order exactly 2 in both modes
  bool restrictions_vanish = false;  // coboundary on the three maximal abelians
  bool kernel_z2 = false;            // joint restriction kernel = Z/2 containing it
  bool abelian_kernels = false;      // coboundary on every abelian subgroup
  std::vector<Int> kernel_invariants_divisible;  // in H^3(G, picd), shifted
  std::vector<Int> kernel_invariants_fg;         // in H^2(G, coeff)
  std::vector<std::string> problems;
  bool all_passed() const {
    return cocycle_ok && order_two && restrictions_vanish && kernel_z2 && abelian_kernels;
  }
};
// P defaults to the bundled resolution; needs top degree >= 4
DP2VerifyReport dp2_verify(const DP2Dataset& ds, ResPtr P = nullptr);

}  // namespace amx
