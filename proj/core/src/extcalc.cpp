#include "amx/extcalc.hpp"

#include <algorithm>
#include <map>

namespace amx {

GModule free_gmodule(GroupPtr G, int rank) {
  return tensor(GModule::trivial_lattice(G, rank), GModule::regular(G));
}

namespace {

bool same_module(const GModule& a, const GModule& b) {
  if (a.group()->order() != b.group()->order() || !a.group()->same_table(*b.group())) return false;
  if (a.gens() != b.gens()) return false;
  if (a.underlying().relations() != b.underlying().relations()) return false;
  for (int g = 0; g < a.group()->order(); ++g)
    if (a.act(g) != b.act(g)) return false;
  return true;
}

// ker(next) contained in im(prev) modulo relations of the middle module
void require_exact_at(const GMap& prev, const GMap& next, const char* where) {
  GMap comp0 = compose(next, prev);
  const auto& Y = next.target.underlying();
  for (int j = 0; j < comp0.matrix.cols(); ++j)
    if (!Y.is_zero_elem(comp0.matrix.col(j)))
      throw MathError(std::string("FourTermExt: composite nonzero at ") + where);
  GMap k = kernel_of(next);
  LinearSystem im(prev.matrix.hstack(next.source.underlying().relations()));
  for (int j = 0; j < k.matrix.cols(); ++j)
    if (!im.solve(k.matrix.col(j)))
      throw MathError(std::string("FourTermExt: not exact at ") + where);
}

}  // namespace

FourTermExt::FourTermExt(GMap ab_, GMap bc_, GMap cd_)
    : ab(std::move(ab_)), bc(std::move(bc_)), cd(std::move(cd_)) {
  if (!same_module(ab.target, bc.source) || !same_module(bc.target, cd.source))
    throw MathError("FourTermExt: interface modules do not match");
  if (!ab.is_injective()) throw MathError("FourTermExt: first map not injective");
  if (!cd.is_surjective()) throw MathError("FourTermExt: last map not surjective");
  require_exact_at(ab, bc, "B");
  require_exact_at(bc, cd, "C");
}

Cochain double_connecting(const FourTermExt& E, const FreeResolution& P, const Cochain& c) {
  GMap inclI = image_of(E.bc);  // I presented on B's generators
  const GModule& Imod = inclI.source;
  ShortExact s2(inclI, E.cd);                                              // 0 -> I -> C -> D -> 0
  ShortExact s1(E.ab, GMap(E.B(), Imod, IntMatrix::identity(E.B().gens())));  // 0 -> A -> B -> I -> 0
  Cochain mid = connecting_cochain(s2, P, c);
  return connecting_cochain(s1, P, mid);
}

FourTermExt splice(const ShortExact& s1, const ShortExact& s2) {
  if (!same_module(s1.proj.target, s2.incl.source))
    throw MathError("splice: interface modules do not match");
  return FourTermExt(s1.incl, compose(s2.incl, s1.proj), s2.proj);
}

FourTermExt pushout(const FourTermExt& E, const GMap& f) {
  if (!same_module(f.source, E.A())) throw MathError("pushout: map source is not A");
  const GModule& Ap = f.target;
  GModule DS = direct_sum(E.B(), Ap);
  IntMatrix h = E.ab.matrix.vstack(f.matrix.scaled(-1));
  GMap cok = cokernel_of(GMap(E.A(), DS, h));
  const GModule& Bp = cok.target;  // presented on B (+) A' generators
  IntMatrix embed(Bp.gens(), Ap.gens());
  for (int j = 0; j < Ap.gens(); ++j) embed.at(E.B().gens() + j, j) = 1;
  IntMatrix toC = E.bc.matrix.hstack(IntMatrix(E.C().gens(), Ap.gens()));
  return FourTermExt(GMap(Ap, Bp, embed), GMap(Bp, E.C(), toC), E.cd);
}

FourTermExt pullback(const FourTermExt& E, const GMap& g) {
  if (!same_module(g.target, E.D())) throw MathError("pullback: map target is not D");
  const GModule& Dp = g.source;
  GModule DS = direct_sum(E.C(), Dp);
  IntMatrix h = E.cd.matrix.hstack(g.matrix.scaled(-1));
  GMap K = kernel_of(GMap(DS, E.D(), h));
  const GModule& Cp = K.source;
  // projection to D'
  IntMatrix toDp(Dp.gens(), Cp.gens());
  for (int j = 0; j < Cp.gens(); ++j)
    for (int t = 0; t < Dp.gens(); ++t) toDp.at(t, j) = K.matrix.at(E.C().gens() + t, j);
  // B -> C': express (bc(b), 0) in kernel coordinates
  LinearSystem sys(K.matrix.hstack(DS.underlying().relations()));
  IntMatrix toCp(Cp.gens(), E.B().gens());
  for (int j = 0; j < E.B().gens(); ++j) {
    IVec rhs(DS.gens());
    IVec bcj = E.bc.matrix.col(j);
    for (int t = 0; t < E.C().gens(); ++t) rhs[t] = bcj[t];
    auto x = sys.solve(rhs);
    if (!x) throw MathError("pullback: image not in the fiber product (internal)");
    for (int t = 0; t < Cp.gens(); ++t) toCp.at(t, j) = (*x)[t];
  }
  return FourTermExt(E.ab, GMap(E.B(), Cp, toCp), GMap(Cp, Dp, toDp));
}

IntMatrix ModuleResolution::expanded_eps() const {
  const int ng = M.group()->order();
  const int r0 = F.ranks[0];
  IntMatrix out(M.gens(), r0 * ng);
  for (int i = 0; i < r0; ++i)
    for (int g = 0; g < ng; ++g) out.set_col(i * ng + g, M.apply(g, eps.col(i)));
  return out;
}

void validate_module_resolution(const ModuleResolution& R) {
  const auto& F = R.F;
  if (static_cast<int>(F.ranks.size()) != static_cast<int>(F.diff.size()) + 1)
    throw MathError("module resolution: rank/differential count mismatch");
  if (R.eps.rows() != R.M.gens() || R.eps.cols() != F.ranks[0])
    throw MathError("module resolution: augmentation shape mismatch");
  IntMatrix E = R.expanded_eps();
  // eps kills d1
  if (F.top() >= 1) {
    IntMatrix comp0 = E * F.expanded_d(1);
    for (int j = 0; j < comp0.cols(); ++j)
      if (!R.M.underlying().is_zero_elem(comp0.col(j)))
        throw MathError("module resolution: augmentation does not kill d1");
  }
  for (int n = 2; n <= F.top(); ++n)
    if (!(F.d(n - 1) * F.d(n)).is_zero())
      throw MathError("module resolution: d∘d nonzero at degree " + std::to_string(n));
  // surjectivity of eps
  {
    LinearSystem sys(E.hstack(R.M.underlying().relations()));
    for (int t = 0; t < R.M.gens(); ++t) {
      IVec e(R.M.gens());
      e[t] = 1;
      if (!sys.solve(e)) throw MathError("module resolution: augmentation not surjective");
    }
  }
  // exactness
  if (F.top() >= 1) {
    auto h0 = homology_at(F.expanded_d(1), E, IntMatrix(F.expanded_dim(0), 0),
                          R.M.underlying().relations());
    if (!h0.group.is_trivial()) throw MathError("module resolution: not exact at degree 0");
  }
  for (int n = 1; n < F.top(); ++n) {
    auto h = homology_at(F.expanded_d(n + 1), F.expanded_d(n));
    if (!h.group.is_trivial())
      throw MathError("module resolution: not exact at degree " + std::to_string(n));
  }
}

ModuleResolution module_resolution(const GModule& M, int n_max, long rank_guard) {
  GroupPtr G = M.group();
  const int ng = G->order();
  const int r0 = M.gens();
  ModuleResolution R{M, FreeResolution{}, IntMatrix::identity(r0)};
  R.F.G = G;
  R.F.ranks.push_back(r0);
  R.F.aug.assign(r0, 0);
  // kernel of the augmentation as a sublattice of Z[G]^{r0}
  {
    IntMatrix E = R.expanded_eps();
    IntMatrix K = kernel_basis(E.hstack(M.underlying().relations()));
    IntMatrix Kproj(r0 * ng, K.cols());
    for (int j = 0; j < K.cols(); ++j)
      for (int i = 0; i < r0 * ng; ++i) Kproj.at(i, j) = K.at(i, j);
    GroupRingMatrix d1 = cover_lattice(G, r0, Kproj, rank_guard);
    R.F.ranks.push_back(d1.cols());
    R.F.diff.push_back(std::move(d1));
  }
  while (R.F.top() < n_max) {
    IntMatrix K = kernel_basis(R.F.expanded_d(R.F.top()));
    GroupRingMatrix d = cover_lattice(G, R.F.ranks[R.F.top()], K, rank_guard);
    R.F.ranks.push_back(d.cols());
    R.F.diff.push_back(std::move(d));
  }
  return R;
}

ModuleResolution as_module_resolution(const FreeResolution& P) {
  ModuleResolution R{GModule::trivial_lattice(P.G, 1), P, IntMatrix(1, P.ranks[0])};
  for (int i = 0; i < P.ranks[0]; ++i) R.eps.at(0, i) = P.aug[i];
  return R;
}

ModuleResolution shifted_resolution(const FreeResolution& P, int k) {
  if (k < 1 || k > P.top()) throw MathError("shifted_resolution: bad degree");
  SyzygyData sy = syzygy(P, k);
  const int ng = P.G->order();
  ModuleResolution R{sy.module, FreeResolution{}, IntMatrix(sy.module.gens(), P.ranks[k])};
  R.F.G = P.G;
  for (int n = k; n <= P.top(); ++n) R.F.ranks.push_back(P.ranks[n]);
  for (int n = k + 1; n <= P.top(); ++n) R.F.diff.push_back(P.d(n));
  R.F.aug.assign(P.ranks[k], 0);
  LinearSystem sys(sy.inclusion.matrix);
  IntMatrix dk = P.expanded_d(k);
  for (int s = 0; s < P.ranks[k]; ++s) {
    auto x = sys.solve(dk.col(s * ng + P.G->identity()));
    if (!x) throw MathError("shifted_resolution: differential image not in the syzygy (internal)");
    R.eps.set_col(s, *x);
  }
  return R;
}

ModuleResolution direct_sum(const ModuleResolution& R1, const ModuleResolution& R2) {
  if (!R1.F.G->same_table(*R2.F.G)) throw MathError("direct_sum: different groups");
  GModule M = direct_sum(R1.M, R2.M);
  const int len = std::max(R1.F.ranks.size(), R2.F.ranks.size());
  auto rank_at = [](const FreeResolution& F, int n) {
    return n < static_cast<int>(F.ranks.size()) ? F.ranks[n] : 0;
  };
  ModuleResolution R{M, FreeResolution{}, IntMatrix(M.gens(), rank_at(R1.F, 0) + rank_at(R2.F, 0))};
  R.F.G = R1.F.G;
  for (int n = 0; n < len; ++n) R.F.ranks.push_back(rank_at(R1.F, n) + rank_at(R2.F, n));
  R.F.aug.assign(R.F.ranks[0], 0);
  for (int n = 1; n < len; ++n) {
    GroupRingMatrix d(R.F.G, R.F.ranks[n - 1], R.F.ranks[n]);
    int a1 = rank_at(R1.F, n - 1), b1 = rank_at(R1.F, n);
    if (n <= R1.F.top())
      for (int i = 0; i < a1; ++i)
        for (int j = 0; j < b1; ++j) d.at(i, j) = R1.F.d(n).at(i, j);
    if (n <= R2.F.top())
      for (int i = 0; i < rank_at(R2.F, n - 1); ++i)
        for (int j = 0; j < rank_at(R2.F, n); ++j) d.at(a1 + i, b1 + j) = R2.F.d(n).at(i, j);
    R.F.diff.push_back(std::move(d));
  }
  // block-diagonal augmentation
  for (int i = 0; i < R1.eps.rows(); ++i)
    for (int j = 0; j < R1.eps.cols(); ++j) R.eps.at(i, j) = R1.eps.at(i, j);
  for (int i = 0; i < R2.eps.rows(); ++i)
    for (int j = 0; j < R2.eps.cols(); ++j)
      R.eps.at(R1.eps.rows() + i, R1.eps.cols() + j) = R2.eps.at(i, j);
  return R;
}

CohGroup ext_group(const GModule& A, std::shared_ptr<const ModuleResolution> R, int n) {
  ResPtr F(R, &R->F);
  return CohGroup(A, F, n);
}

SyzygyData syzygy(const FreeResolution& P, int k) {
  if (k < 1 || k > P.top()) throw MathError("syzygy: bad degree");
  IntMatrix K = kernel_basis(k == 1 ? P.expanded_aug() : P.expanded_d(k - 1));
  GModule freek = free_gmodule(P.G, P.ranks[k - 1]);
  std::vector<IntMatrix> action;
  for (int g = 0; g < P.G->order(); ++g) {
    auto X = solve_matrix(K, freek.act(g) * K);
    if (!X) throw MathError("syzygy: kernel not G-stable (internal)");
    action.push_back(std::move(*X));
  }
  GModule omega(P.G, FgAbGroup(K.cols(), IntMatrix(K.cols(), 0)), std::move(action));
  return SyzygyData{omega, GMap(omega, freek, K)};
}

FourTermExt syzygy_extension(const FreeResolution& P) {
  SyzygyData sy = syzygy(P, 2);
  GModule B = free_gmodule(P.G, P.ranks[1]);
  GModule C = free_gmodule(P.G, P.ranks[0]);
  GModule Z = GModule::trivial_lattice(P.G, 1);
  return FourTermExt(sy.inclusion, GMap(B, C, P.expanded_d(1)), GMap(C, Z, P.expanded_aug()));
}

Ext2Class ext2_class(const FourTermExt& E, std::shared_ptr<const ModuleResolution> F) {
  if (!F) F = std::make_shared<const ModuleResolution>(module_resolution(E.D(), 3));
  if (!same_module(F->M, E.D())) throw MathError("ext2_class: resolution resolves a different module");
  if (F->F.top() < 3) throw MathError("ext2_class: resolution too short");
  const auto& FF = F->F;
  // phi0: F0 -> C lifting eps through cd
  IntMatrix phi0(E.C().gens(), FF.ranks[0]);
  {
    LinearSystem sys(E.cd.matrix.hstack(E.D().underlying().relations()));
    for (int i = 0; i < FF.ranks[0]; ++i) {
      auto x = sys.solve(F->eps.col(i));
      if (!x) throw MathError("ext2_class: surjection lift failed");
      IVec v(E.C().gens());
      for (int t = 0; t < E.C().gens(); ++t) v[t] = (*x)[t];
      phi0.set_col(i, v);
    }
  }
  auto step = [&](const IntMatrix& prev, const GModule& mid, const GMap& into, int n) {
    // values of prev ∘ d_n, then lift through `into`
    IntMatrix rhs(mid.gens(), FF.ranks[n]);
    for (int j = 0; j < FF.ranks[n]; ++j) {
      IVec v(mid.gens());
      for (int i = 0; i < FF.ranks[n - 1]; ++i) {
        if (vec_is_zero(FF.d(n).at(i, j))) continue;
        v = vec_add(v, module_ring_action(mid, FF.d(n).at(i, j)).apply(prev.col(i)));
      }
      rhs.set_col(j, v);
    }
    LinearSystem sys(into.matrix.hstack(mid.underlying().relations()));
    IntMatrix out(into.source.gens(), FF.ranks[n]);
    for (int j = 0; j < FF.ranks[n]; ++j) {
      auto x = sys.solve(rhs.col(j));
      if (!x) throw MathError("ext2_class: lift failed at degree " + std::to_string(n));
      IVec v(into.source.gens());
      for (int t = 0; t < into.source.gens(); ++t) v[t] = (*x)[t];
      out.set_col(j, v);
    }
    return out;
  };
  IntMatrix phi1 = step(phi0, E.C(), E.bc, 1);
  IntMatrix phi2 = step(phi1, E.B(), E.ab, 2);
  return Ext2Class{E.A(), F, Cochain{2, phi2}};
}

bool is_trivial(const Ext2Class& x) { return ext_group(x.A, x.F, 2).is_coboundary(x.cocycle); }

ChainMap module_chain_lift(const ModuleResolution& source, const ModuleResolution& target,
                           const IntMatrix& phi, int degree_max) {
  if (source.F.top() < degree_max || target.F.top() < degree_max)
    throw MathError("module_chain_lift: resolutions too short");
  GroupPtr G = target.F.G;
  const int ng = G->order();
  ChainMap u;
  {
    LinearSystem sys(target.expanded_eps().hstack(target.M.underlying().relations()));
    GroupRingMatrix u0(G, target.F.ranks[0], source.F.ranks[0]);
    for (int s = 0; s < source.F.ranks[0]; ++s) {
      auto x = sys.solve(phi.apply(source.eps.col(s)));
      if (!x) throw MathError("module_chain_lift: augmentation lift failed");
      for (int j = 0; j < target.F.ranks[0]; ++j)
        for (int g = 0; g < ng; ++g) u0.at(j, s)[g] = (*x)[j * ng + g];
    }
    u.maps.push_back(std::move(u0));
  }
  for (int k = 1; k <= degree_max; ++k) {
    LinearSystem sys(target.F.expanded_d(k));
    IntMatrix rhs = (u.maps[k - 1] * source.F.d(k)).expanded();
    GroupRingMatrix uk(G, target.F.ranks[k], source.F.ranks[k]);
    for (int s = 0; s < source.F.ranks[k]; ++s) {
      auto x = sys.solve(rhs.col(s * ng + G->identity()));
      if (!x) throw MathError("module_chain_lift: no lift at degree " + std::to_string(k));
      for (int j = 0; j < target.F.ranks[k]; ++j)
        for (int g = 0; g < ng; ++g) uk.at(j, s)[g] = (*x)[j * ng + g];
    }
    u.maps.push_back(std::move(uk));
  }
  return u;
}

Ext2Class precompose(const Ext2Class& x, std::shared_ptr<const ModuleResolution> source,
                     const IntMatrix& phi) {
  ChainMap u = module_chain_lift(*source, *x.F, phi, 2);
  return Ext2Class{x.A, source, pull_cochain(u, x.A, x.cocycle)};
}

Cochain yoneda_compose(const Ext2Class& x, const Cochain& v, const FreeResolution& P) {
  const int n = v.degree;
  if (P.top() < n + 2) throw MathError("yoneda_compose: resolution too short");
  const GModule& D = x.F->M;
  if (v.values.rows() != D.gens()) throw MathError("yoneda_compose: value module mismatch");
  GroupPtr G = P.G;
  const int ng = G->order();
  const auto& FF = x.F->F;
  ChainMap u;
  {
    LinearSystem sys(x.F->expanded_eps().hstack(D.underlying().relations()));
    GroupRingMatrix u0(G, FF.ranks[0], P.ranks[n]);
    for (int s = 0; s < P.ranks[n]; ++s) {
      auto sol = sys.solve(v.values.col(s));
      if (!sol) throw MathError("yoneda_compose: augmentation lift failed");
      for (int j = 0; j < FF.ranks[0]; ++j)
        for (int g = 0; g < ng; ++g) u0.at(j, s)[g] = (*sol)[j * ng + g];
    }
    u.maps.push_back(std::move(u0));
  }
  for (int k = 1; k <= 2; ++k) {
    LinearSystem sys(FF.expanded_d(k));
    IntMatrix rhs = (u.maps[k - 1] * P.d(n + k)).expanded();
    GroupRingMatrix uk(G, FF.ranks[k], P.ranks[n + k]);
    for (int s = 0; s < P.ranks[n + k]; ++s) {
      auto sol = sys.solve(rhs.col(s * ng + G->identity()));
      if (!sol) throw MathError("yoneda_compose: no lift at degree " + std::to_string(k));
      for (int j = 0; j < FF.ranks[k]; ++j)
        for (int g = 0; g < ng; ++g) uk.at(j, s)[g] = (*sol)[j * ng + g];
    }
    u.maps.push_back(std::move(uk));
  }
  Cochain pulled = pull_cochain(u, x.A, x.cocycle);
  return Cochain{n + 2, pulled.values};
}

ZeroConnectingResult zero_connecting_construct(GroupPtr G, int n_check) {
  // the construction is specific to the Klein four-group
  if (G->order() != 4 || !G->is_abelian()) throw MathError("zero_connecting_construct: G must be the Klein four-group");
  for (int g = 0; g < 4; ++g)
    if (g != G->identity() && G->element_order(g) != 2)
      throw MathError("zero_connecting_construct: G must be the Klein four-group");

  auto P = std::make_shared<const FreeResolution>(auto_resolution(G, n_check + 3));

  GModule Z = GModule::trivial_lattice(G, 1);
  GModule F2 = GModule::trivial(G, FgAbGroup(1, [] {
                                  IntMatrix m(1, 1);
                                  m.at(0, 0) = 2;
                                  return m;
                                }()));
  IntMatrix two(1, 1), one(1, 1);
  two.at(0, 0) = 2;
  one.at(0, 0) = 1;
  ShortExact bock(GMap(Z, Z, two), GMap(Z, F2, one));

  CohGroup H1F2 = cohomology(F2, P, 1);
  if (H1F2.group().generator_count() < 2) throw MathError("zero_connecting_construct: unexpected H^1");
  Cochain x = H1F2.representative(IVec{1, 0});
  Cochain y = H1F2.representative(IVec{0, 1});
  Cochain Acl = connecting_cochain(bock, *P, x);
  Cochain Bcl = connecting_cochain(bock, *P, y);

  // B^2 via the cup product
  Diagonal D = diagonal_approximation(*P, 4);
  GMap mu(tensor(Z, Z), Z, one);
  Cochain B2 = cup(Bcl, Z, Bcl, Z, mu, *P, D);

  // a in Hom_G(Omega^2 Z, Z) whose induced degree-2 class is [A]
  ModuleResolution shifted = shifted_resolution(*P, 2);
  const GModule& Om = shifted.M;
  IntMatrix a_row;
  {
    // equivariant functionals Omega^2 -> Z: psi with psi(act(g) - 1) = 0
    IntMatrix stack(0, Om.gens());
    for (const auto& [name, idx] : G->generators()) {
      (void)name;
      stack = stack.rows() == 0 ? (Om.act(idx).transpose() - IntMatrix::identity(Om.gens()))
                                : stack.vstack(Om.act(idx).transpose() - IntMatrix::identity(Om.gens()));
    }
    IntMatrix psis = kernel_basis(stack);  // columns = invariant functionals
    CohGroup H2 = cohomology(Z, P, 2);
    // induced cocycle of psi has values psi^T * eps (eps expresses d2 in Omega coords)
    IntMatrix img(H2.group().generator_count(), psis.cols());
    for (int b = 0; b < psis.cols(); ++b) {
      IntMatrix vals(1, P->ranks[2]);
      for (int s = 0; s < P->ranks[2]; ++s) {
        Int acc = 0;
        for (int t = 0; t < Om.gens(); ++t) acc += psis.at(t, b) * shifted.eps.at(t, s);
        vals.at(0, s) = acc;
      }
      img.set_col(b, H2.class_of(Cochain{2, vals}));
    }
    IntSolve sol = solve_integer(img.hstack(H2.group().relations()), H2.class_of(Acl));
    if (!sol.ok) throw MathError("zero_connecting_construct: no functional realizes A (resolution bug)");
    a_row = IntMatrix(1, Om.gens());
    for (int t = 0; t < Om.gens(); ++t) {
      Int acc = 0;
      for (int b = 0; b < psis.cols(); ++b) acc += sol.x[b] * psis.at(t, b);
      a_row.at(0, t) = acc;
    }
  }

  // stabilize: Omega~ = Omega^2 (+) Z[G], a~ = (a, augmentation)
  GModule Reg = GModule::regular(G);
  GModule OmT = direct_sum(Om, Reg);
  IntMatrix a_ext(1, OmT.gens());
  for (int t = 0; t < Om.gens(); ++t) a_ext.at(0, t) = a_row.at(0, t);
  for (int g = 0; g < 4; ++g) a_ext.at(0, Om.gens() + g) = 1;
  GMap amap(OmT, Z, a_ext);
  if (!amap.is_surjective()) throw MathError("zero_connecting_construct: a not surjective (internal)");
  GMap inc = kernel_of(amap);
  const GModule& M = inc.source;
  if (!M.is_faithful()) throw MathError("zero_connecting_construct: M not faithful (internal)");

  // resolution of Omega~ = shifted resolution (+) the free rank-1 resolution
  ModuleResolution regres{Reg, FreeResolution{}, IntMatrix(4, 1)};
  regres.F.G = G;
  regres.F.ranks = {1};
  regres.F.aug = IVec{0};
  regres.eps.at(G->identity(), 0) = 1;
  auto RT = std::make_shared<const ModuleResolution>(direct_sum(shifted, regres));

  // b~ in Ext^2(Omega~, Z): the B^2 cocycle read over the shifted resolution
  Ext2Class bt{Z, RT, Cochain{2, B2.values}};

  auto FM = std::make_shared<const ModuleResolution>(module_resolution(M, 3));
  Ext2Class cz = precompose(bt, FM, inc.matrix);
  bool c_nonzero = !is_trivial(cz);

  std::vector<int> failures;
  for (int n = 1; n <= n_check; ++n) {
    CohGroup Hn = cohomology(M, P, n);
    CohGroup HnZ = cohomology(Z, P, n + 2);
    for (int t = 0; t < Hn.group().generator_count(); ++t) {
      IVec e(Hn.group().generator_count());
      e[t] = 1;
      Cochain v = Hn.representative(e);
      if (!HnZ.is_coboundary(yoneda_compose(cz, v, *P))) {
        failures.push_back(n);
        break;
      }
    }
  }
  return ZeroConnectingResult{P, M, inc, FM, cz, c_nonzero, n_check, failures};
}

FanRealization fan_realization(const GModule& M, int box_limit) {
  if (!M.is_lattice()) throw MathError("fan_realization: M must be a lattice");
  if (!M.is_faithful()) throw MathError("fan_realization: M must be faithful");
  GroupPtr G = M.group();
  const int ng = G->order();
  GModule Dm = dual(M);
  const int r = M.gens();

  std::vector<IVec> points;
  std::map<IVec, int> index_of;
  // score of a point set: (rank of the span, product of the SNF diagonal of
  // iota).  The target is rank r with all invariant factors 1 (coker
  // torsion-free, which also forces the points to Z-span the dual lattice).
  auto score_of = [&](const std::vector<IVec>& pts) -> std::pair<int, Int> {
    if (pts.empty()) return {0, Int(0)};
    IntMatrix iota(static_cast<int>(pts.size()), r);
    for (size_t i = 0; i < pts.size(); ++i)
      for (int j = 0; j < r; ++j) iota.at(static_cast<int>(i), j) = pts[i][j];
    auto snf = smith_normal_form(iota);
    Int prod = 1;
    for (const auto& d : snf.diag) prod *= d;
    return {snf.rank, prod};
  };
  auto better = [](const std::pair<int, Int>& a, const std::pair<int, Int>& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  };
  std::pair<int, Int> score{0, Int(0)};
  auto done_cond = [&]() { return score.first == r && score.second == 1; };

  bool done = false;
  for (int bound = 1; bound <= box_limit && !done; ++bound) {
    // vectors with max-norm exactly `bound`, lexicographic order; an orbit is
    // kept only if it raises the rank or strictly shrinks the torsion index
    IVec v(r, Int(-bound));
    while (true) {
      bool shell = false;
      for (const auto& c : v)
        if (abs(c) == bound) shell = true;
      if (shell) {
        Int g = 0;
        for (const auto& c : v) g = gcd(g, c);
        if (g == 1 && !index_of.count(v)) {
          bool free_orbit = true;
          for (int gi = 0; gi < ng && free_orbit; ++gi)
            if (gi != G->identity() && Dm.apply(gi, v) == v) free_orbit = false;
          bool fresh = free_orbit;
          std::vector<IVec> orbit;
          for (int gi = 0; gi < ng && fresh; ++gi) {
            IVec w = Dm.apply(gi, v);
            if (index_of.count(w)) fresh = false;
            orbit.push_back(std::move(w));
          }
          if (free_orbit && fresh) {
            std::vector<IVec> trial = points;
            trial.insert(trial.end(), orbit.begin(), orbit.end());
            auto s = score_of(trial);
            if (better(s, score)) {
              score = s;
              for (auto& w : orbit) {
                index_of[w] = static_cast<int>(points.size());
                points.push_back(std::move(w));
              }
              if (done_cond()) {
                done = true;
                break;
              }
            }
          }
        }
      }
      // advance
      int pos = r - 1;
      while (pos >= 0 && v[pos] == bound) {
        v[pos] = -bound;
        --pos;
      }
      if (pos < 0) break;
      v[pos] += 1;
    }
  }
  if (!done) throw MathError("fan_realization: search bound exceeded");

  const int N = static_cast<int>(points.size());
  // Z[S] as a permutation module for the dual action
  std::vector<IntMatrix> perms;
  for (int g = 0; g < ng; ++g) {
    IntMatrix pmat(N, N);
    for (int i = 0; i < N; ++i) pmat.at(index_of.at(Dm.apply(g, points[i])), i) = 1;
    perms.push_back(std::move(pmat));
  }
  GModule ZS(G, FgAbGroup(N, IntMatrix(N, 0)), std::move(perms));
  IntMatrix iota(N, r);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < r; ++j) iota.at(i, j) = points[i][j];
  GMap im(M, ZS, iota);
  GMap proj = cokernel_of(im);
  return FanRealization{Dm, points, ZS, im, proj};
}

}  // namespace amx
