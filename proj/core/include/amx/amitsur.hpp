// Equivariant presentations (divisors, units, twisted unit actions), unit
// models for the ground field, the 4-term extension class alpha, the maps
// partial^n, Amitsur groups, the universal-torsor obstruction beta, and
// intersections of restriction kernels.
#pragma once

#include "amx/extcalc.hpp"

namespace amx {

// finitely generated stand-in for the multiplicative group of the ground
// field: mu_N plus labeled free generators (FG), or an algebraically closed
// field of characteristic zero handled through the Bockstein shift (DIVISIBLE)
struct UnitModel {
  enum class Mode { FG, DIVISIBLE };
  Mode mode = Mode::DIVISIBLE;
  Int torsion = 1;                           // N: order of the root-of-unity part (FG)
  std::vector<std::string> free_generators;  // FG mode
};
UnitModel divisible_model();
UnitModel fg_model(const Int& torsion, std::vector<std::string> free_generators);

// multiplicative constant zeta^(N*frac) * prod generators^expo;
// in DIVISIBLE mode only the rational-mod-1 part is carried
struct UnitValue {
  Rat frac;   // torsion exponent as a rational mod 1
  IVec expo;  // exponents over the model's free generators (FG mode)
};
UnitValue unit_one(const UnitModel& m);
UnitValue unit_inverse(const UnitModel& m, const UnitValue& v);

// action of a group generator on one unit generator: g*u = constant * monomial
struct Twist {
  UnitValue constant;
  IVec monomial;  // exponent vector over the unit generators
};

struct EquivariantPresentation {
  GroupPtr G;
  std::vector<std::string> divisor_labels;
  std::map<std::string, std::vector<int>> divisor_perms;  // image index, per named generator
  std::vector<std::string> unit_labels;
  IntMatrix div_map;                                  // divisors x units
  std::map<std::string, std::vector<Twist>> twists;   // per named generator, one entry per unit
  UnitModel model;
};

struct PresentationReport {
  bool valid = false;
  std::vector<std::string> problems;
  std::vector<Int> pic_invariants;
};
// checks: shapes, div injectivity and equivariance, constants inside the
// model, and that the twist data defines a genuine action (exhaustively)
PresentationReport presentation_validate(const EquivariantPresentation& p);

struct PresentationModules {
  GModule divisors;  // Z[Sigma], permutation module
  GModule units;     // unit lattice with the monomial action
  GMap div;          // units -> divisors
  GMap pic;          // divisors -> Pic (cokernel projection)
};
PresentationModules presentation_modules(const EquivariantPresentation& p);

// trivial-action coefficient module of the model: Z/N (+) Z^r in FG mode;
// mu_N with N the lcm of the twist-constant denominators in DIVISIBLE mode
GModule model_coefficients(const EquivariantPresentation& p);
Int effective_torsion(const EquivariantPresentation& p);

GTorus split_torus(GroupPtr G);  // G_m: cocharacter lattice Z with trivial action

// 0 -> model (x) X -> U (x) X -> Z[Sigma] (x) X -> Pic (x) X -> 0 where U is
// the twisted extension of the unit lattice by the model and X = S.cochar
FourTermExt alpha_class(const EquivariantPresentation& p, const GTorus& S);

// re-present a torsion-free module on an honest basis
struct LatticeBasis {
  GModule basis;
  IntMatrix to_basis;    // basis.gens x M.gens
  IntMatrix from_basis;  // M.gens x basis.gens
};
LatticeBasis lattice_basis(const GModule& M);

// free resolution of a G-lattice M obtained by tensoring a resolution of Z
// with M (diagonal action, untwisted to free modules)
ModuleResolution tensor_lattice_resolution(const FreeResolution& P, const GModule& M);

struct PartialResult {
  Cochain cochain;  // degree n over model (x) X (FG), or degree n+1 over X (DIVISIBLE)
  bool shifted;
};
// partial^n applied to a degree n-2 cocycle with values in Pic (x) X
PartialResult partial(const EquivariantPresentation& p, const GTorus& S, int n,
                      const Cochain& c, ResPtr P = nullptr);

// Am^n(X,S) = image of partial^n over the generators of H^{n-2}(G, Pic (x) X)
FgAbGroup amitsur_group(const EquivariantPresentation& p, const GTorus& S, int n,
                        ResPtr P = nullptr);

struct BetaResult {
  bool nonzero = false;
  bool shifted = false;
  Cochain cochain;  // representative of partial^2(Id_Pic), degree 2 or 3 (shifted)
};
// universal torsor obstruction: partial^2(Id_Pic) with Neron-Severi torus
// coefficients; computed by two routes (coboundary test and Ext^2 triviality)
// that must agree
BetaResult beta(const EquivariantPresentation& p, ResPtr P = nullptr);

// blow up along free orbits: adds `orbits` disjoint free G-orbits of new
// divisors (regular permutation action, empty divisor map columns)
EquivariantPresentation adjoin_free_orbit(const EquivariantPresentation& p, int orbits,
                                          const std::string& prefix = "F");

// built-in examples
EquivariantPresentation klein_p1();
EquivariantPresentation klein_p1_enlarged();  // same action, larger divisor set
// cyclic C_m on P^{m-1} with sigma cycling coordinates and sigma(x_{m-1}) = b*x_0
EquivariantPresentation cyclic_projective(int m, const UnitValue& b, const UnitModel& model);
// the Klein-group toric example: zero_connecting_construct + fan_realization, with
// twist constants realizing the nontrivial extension class
EquivariantPresentation toric_klein();

// intersection of the kernels of restriction H^n(G, coeff) -> H^n(H, coeff)
// over the given subgroups, with membership testing via kernel.contains
struct RestrictionKernel {
  CohGroup ambient;
  SubgroupInfo kernel;  // subgroup of ambient.group() in class coordinates
};
RestrictionKernel bogomolov_kernel(GroupPtr G, ResPtr P, const GModule& coeff, int n,
                                   const std::vector<Subgroup>& subgroups);

}  // namespace amx
