#include "amx/cohom.hpp"

namespace amx {

IntMatrix module_ring_action(const GModule& M, const GRElem& m) {
  IntMatrix out(M.gens(), M.gens());
  for (size_t k = 0; k < m.size(); ++k)
    if (m[k] != 0) out = out + M.act(static_cast<int>(k)).scaled(m[k]);
  return out;
}

IVec flatten_cochain(const Cochain& f) {
  IVec x(static_cast<size_t>(f.values.rows()) * f.values.cols());
  for (int j = 0; j < f.values.cols(); ++j)
    for (int t = 0; t < f.values.rows(); ++t)
      x[static_cast<size_t>(j) * f.values.rows() + t] = f.values.at(t, j);
  return x;
}

Cochain unflatten_cochain(int degree, int rank, int gens, const IVec& x) {
  if (x.size() != static_cast<size_t>(rank) * gens)
    throw MathError("unflatten_cochain: size mismatch");
  Cochain f{degree, IntMatrix(gens, rank)};
  for (int j = 0; j < rank; ++j)
    for (int t = 0; t < gens; ++t) f.values.at(t, j) = x[static_cast<size_t>(j) * gens + t];
  return f;
}

IntMatrix cochain_delta(const GModule& M, const FreeResolution& P, int n) {
  const int mg = M.gens();
  const auto& d = P.d(n + 1);
  IntMatrix out(P.ranks[n + 1] * mg, P.ranks[n] * mg);
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i) {
      if (vec_is_zero(d.at(i, j))) continue;
      IntMatrix blk = module_ring_action(M, d.at(i, j));
      for (int a = 0; a < mg; ++a)
        for (int b = 0; b < mg; ++b) out.at(j * mg + a, i * mg + b) = blk.at(a, b);
    }
  return out;
}

Cochain zero_cochain(const GModule& M, const FreeResolution& P, int n) {
  return Cochain{n, IntMatrix(M.gens(), P.ranks[n])};
}

Cochain coboundary(const GModule& M, const FreeResolution& P, const Cochain& f) {
  if (f.degree + 1 > P.top()) throw MathError("coboundary: resolution too short");
  IVec x = cochain_delta(M, P, f.degree).apply(flatten_cochain(f));
  return unflatten_cochain(f.degree + 1, P.ranks[f.degree + 1], M.gens(), x);
}

bool is_cocycle(const GModule& M, const FreeResolution& P, const Cochain& f) {
  Cochain df = coboundary(M, P, f);
  for (int j = 0; j < df.values.cols(); ++j)
    if (!M.underlying().is_zero_elem(df.values.col(j))) return false;
  return true;
}

Cochain add_cochains(const Cochain& a, const Cochain& b) {
  if (a.degree != b.degree) throw MathError("add_cochains: degree mismatch");
  return Cochain{a.degree, a.values + b.values};
}

Cochain scale_cochain(const Int& k, const Cochain& f) {
  return Cochain{f.degree, f.values.scaled(k)};
}

namespace {

// relations of Hom(P_n, M) = M^{ranks[n]} in flattened coordinates
IntMatrix block_relations(const GModule& M, int rank) {
  const IntMatrix& r = M.underlying().relations();
  IntMatrix out(rank * r.rows(), rank * r.cols());
  for (int b = 0; b < rank; ++b)
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j) out.at(b * r.rows() + i, b * r.cols() + j) = r.at(i, j);
  return out;
}

}  // namespace

CohGroup::CohGroup(GModule M, ResPtr P, int degree)
    : M_(std::move(M)), P_(std::move(P)), degree_(degree),
      hom_([&] {
        if (degree < 0) throw MathError("CohGroup: negative degree");
        if (P_->top() < degree + 1) throw MathError("CohGroup: resolution too short");
        const int mg = M_.gens();
        IntMatrix prev = degree == 0 ? IntMatrix(P_->ranks[0] * mg, 0)
                                     : cochain_delta(M_, *P_, degree - 1);
        IntMatrix next = cochain_delta(M_, *P_, degree);
        return homology_at(prev, next, block_relations(M_, P_->ranks[degree]),
                           block_relations(M_, P_->ranks[degree + 1]));
      }()) {}

IVec CohGroup::class_of(const Cochain& f) const {
  if (f.degree != degree_) throw MathError("CohGroup: degree mismatch");
  if (!is_cocycle(M_, *P_, f)) throw MathError("CohGroup: not a cocycle");
  return hom_.class_of(flatten_cochain(f));
}

Cochain CohGroup::representative(const IVec& cls) const {
  return unflatten_cochain(degree_, P_->ranks[degree_], M_.gens(), hom_.representative(cls));
}

bool CohGroup::is_coboundary(const Cochain& f) const {
  return hom_.group.is_zero_elem(class_of(f));
}

Int CohGroup::order_of(const Cochain& f) const { return hom_.group.element_order(class_of(f)); }

CohGroup cohomology(const GModule& M, ResPtr P, int degree) { return CohGroup(M, std::move(P), degree); }

Cochain induced_cochain(const GMap& phi, const Cochain& f) {
  return Cochain{f.degree, phi.matrix * f.values};
}

Cochain pull_cochain(const ChainMap& u, const GModule& M, const Cochain& f) {
  const auto& un = u.maps.at(f.degree);
  if (un.rows() != f.values.cols()) throw MathError("pull_cochain: rank mismatch");
  Cochain out{f.degree, IntMatrix(M.gens(), un.cols())};
  for (int s = 0; s < un.cols(); ++s) {
    IVec v(M.gens());
    for (int i = 0; i < un.rows(); ++i) {
      if (vec_is_zero(un.at(i, s))) continue;
      v = vec_add(v, module_ring_action(M, un.at(i, s)).apply(f.values.col(i)));
    }
    out.values.set_col(s, v);
  }
  return out;
}

Cochain restrict_cochain(const GModule& M, const RestrictedResolution& R, const Cochain& f) {
  const int r = f.values.cols();
  const int t = static_cast<int>(R.coset_reps.size());
  Cochain out{f.degree, IntMatrix(M.gens(), r * t)};
  for (int c = 0; c < t; ++c)
    for (int i = 0; i < r; ++i)
      out.values.set_col(c * r + i, M.apply(R.coset_reps[c], f.values.col(i)));
  return out;
}

Cochain corestrict_cochain(const GModule& M, const FreeResolution& P,
                           const RestrictedResolution& R, const Cochain& f) {
  const int r = P.ranks[f.degree];
  const int t = static_cast<int>(R.coset_reps.size());
  if (f.values.cols() != r * t) throw MathError("corestrict_cochain: rank mismatch");
  Cochain out{f.degree, IntMatrix(M.gens(), r)};
  for (int i = 0; i < r; ++i) {
    IVec v(M.gens());
    for (int c = 0; c < t; ++c)
      v = vec_add(v, M.apply(P.G->inv(R.coset_reps[c]), f.values.col(c * r + i)));
    out.values.set_col(i, v);
  }
  return out;
}

ShortExact::ShortExact(GMap inclusion, GMap projection)
    : incl(std::move(inclusion)), proj(std::move(projection)) {
  if (!incl.is_injective()) throw MathError("ShortExact: first map not injective");
  if (!proj.is_surjective()) throw MathError("ShortExact: second map not surjective");
  GMap comp0 = compose(proj, incl);
  const auto& C = proj.target.underlying();
  for (int j = 0; j < comp0.matrix.cols(); ++j)
    if (!C.is_zero_elem(comp0.matrix.col(j))) throw MathError("ShortExact: composite nonzero");
  // ker(proj) contained in im(incl) modulo relations of B
  GMap k = kernel_of(proj);
  LinearSystem im(incl.matrix.hstack(proj.source.underlying().relations()));
  for (int j = 0; j < k.matrix.cols(); ++j)
    if (!im.solve(k.matrix.col(j))) throw MathError("ShortExact: not exact in the middle");
}

Cochain connecting_cochain(const ShortExact& s, const FreeResolution& P, const Cochain& c) {
  const GModule& A = s.incl.source;
  const GModule& B = s.incl.target;
  const GModule& C = s.proj.target;
  const int n = c.degree;
  if (!is_cocycle(C, P, c)) throw MathError("connecting: input is not a cocycle");
  // lift each value through proj
  LinearSystem liftC(s.proj.matrix.hstack(C.underlying().relations()));
  IntMatrix b(B.gens(), P.ranks[n]);
  for (int i = 0; i < P.ranks[n]; ++i) {
    auto x = liftC.solve(c.values.col(i));
    if (!x) throw MathError("connecting: projection lift failed");
    IVec bi(B.gens());
    for (int t = 0; t < B.gens(); ++t) bi[t] = (*x)[t];
    b.set_col(i, bi);
  }
  // coboundary of the lift, then pull back through incl
  Cochain db = coboundary(B, P, Cochain{n, b});
  LinearSystem liftA(s.incl.matrix.hstack(B.underlying().relations()));
  Cochain out{n + 1, IntMatrix(A.gens(), P.ranks[n + 1])};
  for (int j = 0; j < P.ranks[n + 1]; ++j) {
    auto y = liftA.solve(db.values.col(j));
    if (!y) throw MathError("connecting: inclusion lift failed (sequence not exact?)");
    IVec aj(A.gens());
    for (int t = 0; t < A.gens(); ++t) aj[t] = (*y)[t];
    out.values.set_col(j, aj);
  }
  return out;
}

QCochain qcochain_from(const Cochain& f) {
  QCochain q{f.degree, {}};
  for (int j = 0; j < f.values.cols(); ++j) {
    QVec v;
    for (int t = 0; t < f.values.rows(); ++t) v.emplace_back(f.values.at(t, j));
    q.values.push_back(std::move(v));
  }
  return q;
}

namespace {

std::vector<QVec> rational_coboundary(const GModule& L, const FreeResolution& P,
                                      const QCochain& f) {
  const int mg = L.gens();
  const auto& d = P.d(f.degree + 1);
  std::vector<QVec> out(P.ranks[f.degree + 1], QVec(mg));
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i) {
      if (vec_is_zero(d.at(i, j))) continue;
      IntMatrix blk = module_ring_action(L, d.at(i, j));
      for (int a = 0; a < mg; ++a)
        for (int b = 0; b < mg; ++b)
          if (blk.at(a, b) != 0) out[j][a] += Rat(blk.at(a, b)) * f.values[i][b];
    }
  return out;
}

bool is_integral(const Rat& r) { return r.get_den() == 1; }

void require_lattice(const GModule& L, const char* who) {
  if (!L.is_lattice()) throw MathError(std::string(who) + ": coefficients must be a G-lattice");
}

}  // namespace

bool is_qz_cocycle(const GModule& L, const FreeResolution& P, const QCochain& f) {
  require_lattice(L, "is_qz_cocycle");
  for (const auto& col : rational_coboundary(L, P, f))
    for (const auto& r : col)
      if (!is_integral(r)) return false;
  return true;
}

Cochain bockstein_shift(const GModule& L, const FreeResolution& P, const QCochain& f) {
  require_lattice(L, "bockstein_shift");
  auto df = rational_coboundary(L, P, f);
  Cochain out{f.degree + 1, IntMatrix(L.gens(), P.ranks[f.degree + 1])};
  for (int j = 0; j < static_cast<int>(df.size()); ++j)
    for (int t = 0; t < L.gens(); ++t) {
      if (!is_integral(df[j][t])) throw MathError("bockstein_shift: not a Q/Z-cocycle");
      out.values.at(t, j) = df[j][t].get_num();
    }
  return out;
}

QCochain inverse_shift(const GModule& L, const FreeResolution& P, const Cochain& z) {
  require_lattice(L, "inverse_shift");
  if (z.degree < 1) throw MathError("inverse_shift: degree must be at least 1");
  if (!is_cocycle(L, P, z)) throw MathError("inverse_shift: not a cocycle");
  LinearSystem sys(cochain_delta(L, P, z.degree - 1));
  QVec rhs;
  for (const auto& v : flatten_cochain(z)) rhs.emplace_back(v);
  auto q = sys.solve_rational(rhs);
  if (!q) throw MathError("inverse_shift: no rational solution (input not a coboundary over Q)");
  QCochain out{z.degree - 1, {}};
  const int mg = L.gens();
  for (int j = 0; j < P.ranks[z.degree - 1]; ++j) {
    QVec v(mg);
    for (int t = 0; t < mg; ++t) v[t] = (*q)[static_cast<size_t>(j) * mg + t];
    out.values.push_back(std::move(v));
  }
  return out;
}

Cochain cup(const Cochain& u, const GModule& M, const Cochain& v, const GModule& N,
            const GMap& mu, const FreeResolution& P, const Diagonal& D) {
  const int p = u.degree, q = v.degree, n = p + q;
  if (n >= static_cast<int>(D.comp.size())) throw MathError("cup: diagonal too short");
  const auto& G = *P.G;
  const int ng = G.order();
  const int mg = M.gens(), nng = N.gens();
  // precompute translated values rho(g) u_a and rho(g) v_b
  auto translated = [&](const GModule& mod, const Cochain& f) {
    std::vector<IVec> t(static_cast<size_t>(f.values.cols()) * ng);
    for (int a = 0; a < f.values.cols(); ++a)
      for (int g = 0; g < ng; ++g) t[static_cast<size_t>(a) * ng + g] = mod.apply(g, f.values.col(a));
    return t;
  };
  auto tu = translated(M, u);
  auto tv = translated(N, v);
  if (mu.source.gens() != mg * nng) throw MathError("cup: pairing source is not the tensor product");
  const long off = D.offsets[n][p];
  const int dimx = P.expanded_dim(p), dimy = P.expanded_dim(q);
  Cochain out{n, IntMatrix(mu.target.gens(), P.ranks[n])};
  for (int s = 0; s < P.ranks[n]; ++s) {
    IVec acc(mu.source.gens());
    IVec col = D.comp[n].col(s);
    for (int x = 0; x < dimx; ++x)
      for (int y = 0; y < dimy; ++y) {
        const Int& c = col[off + static_cast<long>(x) * dimy + y];
        if (c == 0) continue;
        const IVec& xm = tu[x];  // x = a*ng + g
        const IVec& yn = tv[y];
        for (int a = 0; a < mg; ++a) {
          if (xm[a] == 0) continue;
          for (int b = 0; b < nng; ++b)
            if (yn[b] != 0) acc[static_cast<size_t>(a) * nng + b] += c * xm[a] * yn[b];
        }
      }
    out.values.set_col(s, mu.matrix.apply(acc));
  }
  return out;
}

}  // namespace amx
