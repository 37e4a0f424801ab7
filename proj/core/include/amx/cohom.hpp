// Group cohomology from free resolutions: cohomology groups with class
// coordinates, induced maps, restriction/corestriction, connecting
// homomorphisms, the Bockstein shift for divisible coefficients, and cup
// products via a diagonal approximation.
#pragma once

#include "amx/resolve.hpp"

namespace amx {

using ResPtr = std::shared_ptr<const FreeResolution>;

// A cochain in Hom_G(P_n, M): column j holds the value on the j-th Z[G]-basis
// vector of P_n, in the generators of M.
struct Cochain {
  int degree = 0;
  IntMatrix values;  // M.gens() x ranks[degree]
};

// The action of a group ring element on M: sum_k m[k] * act(k).
IntMatrix module_ring_action(const GModule& M, const GRElem& m);

// Flattened cochain coordinates: (basis j, module generator t) -> j*gens + t.
IVec flatten_cochain(const Cochain& f);
Cochain unflatten_cochain(int degree, int rank, int gens, const IVec& x);

// Matrix of the cochain differential Hom(P_n, M) -> Hom(P_{n+1}, M),
// (delta f)(e) = f(d e), in flattened coordinates.
IntMatrix cochain_delta(const GModule& M, const FreeResolution& P, int n);

Cochain zero_cochain(const GModule& M, const FreeResolution& P, int n);
Cochain coboundary(const GModule& M, const FreeResolution& P, const Cochain& f);
bool is_cocycle(const GModule& M, const FreeResolution& P, const Cochain& f);
Cochain add_cochains(const Cochain& a, const Cochain& b);
Cochain scale_cochain(const Int& k, const Cochain& f);

class CohGroup {
 public:
  CohGroup(GModule M, ResPtr P, int degree);

  const FgAbGroup& group() const { return hom_.group; }
  const GModule& module() const { return M_; }
  const ResPtr& resolution() const { return P_; }
  int degree() const { return degree_; }

  // class coordinates of a cocycle (throws if not a cocycle)
  IVec class_of(const Cochain& f) const;
  Cochain representative(const IVec& cls) const;
  bool is_coboundary(const Cochain& f) const;
  Int order_of(const Cochain& f) const;  // order of its class; 0 = infinite

 private:
  GModule M_;
  ResPtr P_;
  int degree_;
  Homology hom_;
};

CohGroup cohomology(const GModule& M, ResPtr P, int degree);

// post-compose a cochain with a module map
Cochain induced_cochain(const GMap& phi, const Cochain& f);

// transport a cochain on `target` to one on `source` along a chain map lift
Cochain pull_cochain(const ChainMap& u, const GModule& M, const Cochain& f);

// restriction to the subgroup of R: a cochain over R.res with module
// restrict_module(M, R.H, R.Hgroup); value on basis (c,i) is rho(g_c) f_i
Cochain restrict_cochain(const GModule& M, const RestrictedResolution& R, const Cochain& f);

// corestriction (transfer): from a cochain over R.res back to one over P,
// (Tr f)(e_i) = sum_c rho(g_c^{-1}) f((c,i))
Cochain corestrict_cochain(const GModule& M, const FreeResolution& P,
                           const RestrictedResolution& R, const Cochain& f);

// validated short exact sequence 0 -> A -> B -> C -> 0
struct ShortExact {
  ShortExact(GMap inclusion, GMap projection);  // validates exactness
  GMap incl;  // A -> B
  GMap proj;  // B -> C
};

// connecting homomorphism H^n(G, C) -> H^{n+1}(G, A)
Cochain connecting_cochain(const ShortExact& s, const FreeResolution& P, const Cochain& c);

// rational cochain, used for L (x) Q/Z coefficients (values read mod 1)
struct QCochain {
  int degree = 0;
  std::vector<QVec> values;  // one vector of length L.gens() per basis vector
};

QCochain qcochain_from(const Cochain& f);
bool is_qz_cocycle(const GModule& L, const FreeResolution& P, const QCochain& f);

// Bockstein shift H^n(G, L (x) Q/Z) -> H^{n+1}(G, L) for a G-lattice L:
// the differential of any rational lift (always integral).
Cochain bockstein_shift(const GModule& L, const FreeResolution& P, const QCochain& f);
// inverse: solve delta(q) = z rationally and read q mod 1
QCochain inverse_shift(const GModule& L, const FreeResolution& P, const Cochain& z);

// cup product via a diagonal approximation: u in H^p(G,M), v in H^q(G,N),
// pairing mu: tensor(M,N) -> L; result in H^{p+q}(G,L)
Cochain cup(const Cochain& u, const GModule& M, const Cochain& v, const GModule& N,
            const GMap& mu, const FreeResolution& P, const Diagonal& D);

}  // namespace amx
