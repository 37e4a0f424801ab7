// Free Z[G]-resolutions of the trivial module: construction (bar, periodic,
// tensor, custom data, extension by integer syzygies), validation, subgroup
// restriction, comparison chain maps, contracting homotopies and diagonal
// approximations for cup products.
#pragma once

#include "amx/gmod.hpp"

namespace amx {

// An element of Z[G] is a coefficient vector indexed by group elements.
using GRElem = IVec;

GRElem gr_zero(const FinGroup& G);
GRElem gr_of(const FinGroup& G, int g, const Int& coeff = 1);
GRElem gr_mul(const FinGroup& G, const GRElem& a, const GRElem& b);
GRElem gr_add(const GRElem& a, const GRElem& b);
GRElem gr_neg(const GRElem& a);
Int gr_aug(const GRElem& a);  // coefficient sum
// anti-involution g -> g^{-1}; converts right-module matrix data to the
// left-module convention used here
GRElem gr_star(const FinGroup& G, const GRElem& a);
// parse e.g. "1 - sigma^3 + 2*sigma^2*tau" into a group ring element
GRElem gr_parse(const FinGroup& G, const std::string& s);
std::string gr_to_string(const FinGroup& G, const GRElem& a);

class GroupRingMatrix {
 public:
  GroupRingMatrix() : rows_(0), cols_(0) {}
  GroupRingMatrix(GroupPtr G, int rows, int cols);

  const GroupPtr& group() const { return G_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GRElem& at(int i, int j) { return e_[static_cast<size_t>(i) * cols_ + j]; }
  const GRElem& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }

  GroupRingMatrix operator*(const GroupRingMatrix& rhs) const;
  bool is_zero() const;

  // integer expansion of the left-module map Z[G]^cols -> Z[G]^rows;
  // coordinate (component i, group element g) sits at index i*|G| + g
  IntMatrix expanded() const;

 private:
  GroupPtr G_;
  int rows_, cols_;
  std::vector<GRElem> e_;
};

// Resolution ... -> P_2 -> P_1 -> P_0 -> Z -> 0 with P_n = Z[G]^{ranks[n]}.
// diff[n] is d_{n+1}: P_{n+1} -> P_n as a ranks[n] x ranks[n+1] matrix
// (rows index the target basis).
struct FreeResolution {
  GroupPtr G;
  std::vector<int> ranks;
  std::vector<GroupRingMatrix> diff;
  IVec aug;  // augmentation values on the P_0 basis (usually all 1)

  int top() const { return static_cast<int>(ranks.size()) - 1; }
  const GroupRingMatrix& d(int n) const;     // d_n: P_n -> P_{n-1}, 1 <= n <= top
  IntMatrix expanded_d(int n) const;         // integer expansion of d_n
  IntMatrix expanded_aug() const;            // 1 x ranks[0]*|G|
  int expanded_dim(int n) const { return ranks[n] * G->order(); }
};

// Throws MathError naming the failing degree; checks d∘d = 0, aug∘d1 = 0,
// exactness in degrees 1..top-1 and homology Z in degree 0.
void validate_resolution(const FreeResolution& P);

FreeResolution bar_resolution(GroupPtr G, int n_max, long rank_guard = 4096);
// periodic resolution of the cyclic group generated by `gen` (must generate)
FreeResolution periodic_resolution(GroupPtr G, int gen, int n_max);
// resolution of G from resolutions of two commuting complementary subgroups;
// embedA/embedB send factor-group element indices into G
FreeResolution tensor_resolution(const FreeResolution& PA, const FreeResolution& PB,
                                 GroupPtr G, const std::vector<int>& embedA,
                                 const std::vector<int>& embedB, int n_max);
FreeResolution custom_resolution(GroupPtr G, std::vector<int> ranks,
                                 std::vector<GroupRingMatrix> diffs, bool validate = true);
// Z[G]-generating set (greedy, small support first) for the sublattice of
// Z[G]^rank spanned by the columns of K (expanded coordinates); the chosen
// generators are returned as the columns of a rank x chosen matrix
GroupRingMatrix cover_lattice(GroupPtr G, int rank, const IntMatrix& K, long rank_guard = 512);
// append degrees by covering integer syzygies with greedily chosen
// Z[G]-generators (small support first)
FreeResolution extend_resolution(FreeResolution P, int to_degree, long rank_guard = 512);
// deterministic resolution choice: periodic for cyclic groups, tensor of
// periodic pieces for abelian groups, bar otherwise (small |G| only)
FreeResolution auto_resolution(GroupPtr G, int n_max);

// A free resolution of Z over Z[H] with basis (coset c, original basis i):
// basis vector (c,i) represents g_c e_i, reps g_c of the right cosets H\G.
struct RestrictedResolution {
  FreeResolution res;           // over H
  GroupPtr Hgroup;
  Subgroup H;
  std::vector<int> coset_reps;  // right coset representatives, reps[0] = e
};

RestrictedResolution restrict_resolution(const FreeResolution& P, const Subgroup& H,
                                         GroupPtr Hgroup);

// chain map source_n -> target_n over the same group lifting id_Z
struct ChainMap {
  std::vector<GroupRingMatrix> maps;  // maps[n]: ranks_target[n] x ranks_source[n]
};
ChainMap chain_map_lift(const FreeResolution& source, const FreeResolution& target,
                        int degree_max);

// Z-linear contracting homotopy of the expanded complex: H[n]: E_n -> E_{n+1}
// with d H + H d = 1 (degree 0 corrected by the augmentation splitting eta).
struct Homotopy {
  std::vector<IntMatrix> H;
  IVec eta;  // section of the augmentation, in E_0 coordinates
};
Homotopy contracting_homotopy(const FreeResolution& P, int n_max);

// Diagonal approximation P -> P (x) P.  comp[n] has ranks[n] columns; rows are
// indexed by pairs ((i,a,g),(n-i,b,h)) flattened as: offset over i, then
// (a*|G|+g) * expanded_dim(n-i) + (b*|G|+h).
struct Diagonal {
  std::vector<IntMatrix> comp;
  std::vector<std::vector<long>> offsets;  // offsets[n][i] = row offset of the (i, n-i) block
};
Diagonal diagonal_approximation(const FreeResolution& P, int n_max, long pair_dim_guard = 400000);

}  // namespace amx
