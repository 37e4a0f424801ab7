// 4-term Yoneda extensions: double connecting homomorphisms, splices,
// pushouts/pullbacks, Ext^2 classes with triviality tests, syzygies, the
// zero-connecting-maps construction over the Klein group, and its toric fan
// realization.
#pragma once

#include "amx/cohom.hpp"

namespace amx {

// Z[G]^rank as a G-module; generator (i,g) sits at index i*|G| + g,
// matching GroupRingMatrix::expanded coordinates.
GModule free_gmodule(GroupPtr G, int rank);

// exact 0 -> A -> B -> C -> D -> 0, validated on construction
struct FourTermExt {
  FourTermExt(GMap ab_, GMap bc_, GMap cd_);
  GMap ab, bc, cd;
  const GModule& A() const { return ab.source; }
  const GModule& B() const { return ab.target; }
  const GModule& C() const { return cd.source; }
  const GModule& D() const { return cd.target; }
};

// double connecting homomorphism H^{n-2}(G, D) -> H^n(G, A), computed as the
// composite of the connecting maps through I = im(B -> C)
Cochain double_connecting(const FourTermExt& E, const FreeResolution& P, const Cochain& c);

FourTermExt splice(const ShortExact& s1, const ShortExact& s2);  // s1: A-B-I, s2: I-C-D
FourTermExt pushout(const FourTermExt& E, const GMap& f);        // f: A -> A'
FourTermExt pullback(const FourTermExt& E, const GMap& g);       // g: D' -> D

// Free Z[G]-resolution of an arbitrary G-module M (complex of frees plus the
// augmentation F_0 -> M given by its values on the Z[G]-basis).
struct ModuleResolution {
  GModule M;
  FreeResolution F;  // diff/ranks meaningful; F.aug unused (zeros)
  IntMatrix eps;     // M.gens() x F.ranks[0]

  IntMatrix expanded_eps() const;  // M.gens() x ranks[0]*|G|
};
void validate_module_resolution(const ModuleResolution& R);
ModuleResolution module_resolution(const GModule& M, int n_max, long rank_guard = 512);
// reuse a resolution of Z as a module resolution of the trivial lattice
ModuleResolution as_module_resolution(const FreeResolution& P);
// resolution of the k-th syzygy module by the degree-shifted complex P_{k+*}
ModuleResolution shifted_resolution(const FreeResolution& P, int k);
ModuleResolution direct_sum(const ModuleResolution& R1, const ModuleResolution& R2);

// Ext^n_G(R.M, A) as the cohomology of Hom_G(F_*, A)
CohGroup ext_group(const GModule& A, std::shared_ptr<const ModuleResolution> R, int n);

struct SyzygyData {
  GModule module;  // Omega^k Z, a G-lattice on a kernel basis
  GMap inclusion;  // into free_gmodule(G, P.ranks[k-1])
};
SyzygyData syzygy(const FreeResolution& P, int k);
// w: 0 -> Omega^2 Z -> P_1 -> P_0 -> Z -> 0
FourTermExt syzygy_extension(const FreeResolution& P);

struct Ext2Class {
  GModule A;
  std::shared_ptr<const ModuleResolution> F;  // resolution of the source module D
  Cochain cocycle;                            // degree 2 over F->F, values in A
};
Ext2Class ext2_class(const FourTermExt& E,
                     std::shared_ptr<const ModuleResolution> F = nullptr);
bool is_trivial(const Ext2Class& x);

// chain map between module resolutions covering phi: source.M -> target.M
ChainMap module_chain_lift(const ModuleResolution& source, const ModuleResolution& target,
                           const IntMatrix& phi, int degree_max);
// precompose an Ext^2 class with a module map phi: source->M -> x.F->M
Ext2Class precompose(const Ext2Class& x, std::shared_ptr<const ModuleResolution> source,
                     const IntMatrix& phi);

// Yoneda composite x∘v for a cocycle v in Hom_G(P_n, F->M):
// a degree n+2 cochain over P with values in x.A
Cochain yoneda_compose(const Ext2Class& x, const Cochain& v, const FreeResolution& P);

struct ZeroConnectingResult {
  ResPtr P;                    // the resolution of Z used throughout
  GModule M;                   // faithful G-lattice
  GMap inclusion;              // M -> Omega^2 Z (+) Z[G]
  std::shared_ptr<const ModuleResolution> FM;  // resolution of M
  Ext2Class cz;                // c_Z in Ext^2_G(M, Z)
  bool c_nonzero = false;
  int vanishing_checked_through = 0;
  std::vector<int> failures;   // degrees n with a nonzero connecting map
};
// the construction behind the all-connecting-maps-zero example; G must be the
// Klein four-group
ZeroConnectingResult zero_connecting_construct(GroupPtr G, int n_check = 6);

struct FanRealization {
  GModule dual;                 // M^vee with the contragredient action
  std::vector<IVec> points;     // S: a G-free union of free orbits spanning M^vee
  GModule divisors;             // Z[S], a G-free permutation module
  GMap iota;                    // M -> Z[S], m -> sum <m,v> v
  GMap proj;                    // Z[S] -> Pic = coker(iota)
};
// deterministic growing-box search for S; requires M to be a faithful lattice;
// stops when S Z-spans M^vee and coker(iota) is torsion-free
FanRealization fan_realization(const GModule& M, int box_limit = 4);

}  // namespace amx
