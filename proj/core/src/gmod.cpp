#include "amx/gmod.hpp"

namespace amx {

namespace {

// columns of B all lie in the lattice spanned by the columns of [R]
bool columns_in_lattice(const IntMatrix& R, const IntMatrix& B) {
  LinearSystem sys(R);
  for (int j = 0; j < B.cols(); ++j)
    if (!sys.solve(B.col(j))) return false;
  return true;
}

IntMatrix kron(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) {
      if (A.at(i, j) == 0) continue;
      for (int p = 0; p < B.rows(); ++p)
        for (int q = 0; q < B.cols(); ++q)
          if (B.at(p, q) != 0) out.at(i * B.rows() + p, j * B.cols() + q) = A.at(i, j) * B.at(p, q);
    }
  return out;
}

}  // namespace

GModule::GModule(GroupPtr G, FgAbGroup underlying,
                 const std::map<std::string, IntMatrix>& generator_actions)
    : group_(std::move(G)), underlying_(std::move(underlying)) {
  const int n = group_->order();
  const int k = underlying_.generator_count();
  std::vector<IntMatrix> genmat(group_->generators().size());
  for (size_t i = 0; i < group_->generators().size(); ++i) {
    auto it = generator_actions.find(group_->generators()[i].first);
    if (it == generator_actions.end())
      throw MathError("GModule: missing action for generator '" + group_->generators()[i].first + "'");
    if (it->second.rows() != k || it->second.cols() != k)
      throw MathError("GModule: action matrix has wrong dimensions");
    genmat[i] = it->second;
  }
  action_.assign(n, IntMatrix());
  for (int g = 0; g < n; ++g) {
    IntMatrix m = IntMatrix::identity(k);
    for (int pos : group_->word(g)) m = m * genmat[pos];
    action_[g] = std::move(m);
  }
  validate();
}

GModule::GModule(GroupPtr G, FgAbGroup underlying, std::vector<IntMatrix> per_element)
    : group_(std::move(G)), underlying_(std::move(underlying)), action_(std::move(per_element)) {
  validate();
}

void GModule::validate() const {
  const int n = group_->order();
  const int k = underlying_.generator_count();
  if (static_cast<int>(action_.size()) != n) throw MathError("GModule: need one action matrix per element");
  for (const auto& m : action_)
    if (m.rows() != k || m.cols() != k) throw MathError("GModule: action matrix dimension mismatch");
  if (action_[group_->identity()] != IntMatrix::identity(k))
    throw MathError("GModule: relator violated (identity does not act trivially)");
  // full multiplicativity check; catches generator matrices violating relators
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      IntMatrix gh = action_[g] * action_[h];
      IntMatrix diff = gh - action_[group_->mul(g, h)];
      if (!diff.is_zero()) {
        // allow equality modulo the relation lattice
        if (!columns_in_lattice(underlying_.relations(), diff))
          throw MathError("GModule: relator violated (action not multiplicative)");
      }
    }
  // relations preserved
  const IntMatrix& R = underlying_.relations();
  if (R.cols() > 0) {
    for (int g = 0; g < n; ++g)
      if (!columns_in_lattice(R, action_[g] * R)) throw MathError("GModule: relations not preserved");
  }
}

bool GModule::is_faithful() const {
  const int k = gens();
  for (int g = 0; g < group_->order(); ++g) {
    if (g == group_->identity()) continue;
    IntMatrix diff = action_[g] - IntMatrix::identity(k);
    if (diff.is_zero()) return false;
    if (underlying_.relations().cols() > 0 && columns_in_lattice(underlying_.relations(), diff)) return false;
  }
  return true;
}

GModule GModule::trivial(GroupPtr G, FgAbGroup A) {
  int n = G->order();
  int k = A.generator_count();
  return GModule(std::move(G), std::move(A), std::vector<IntMatrix>(n, IntMatrix::identity(k)));
}

GModule GModule::trivial_lattice(GroupPtr G, int rank) {
  return trivial(std::move(G), FgAbGroup(rank, IntMatrix(rank, 0)));
}

GModule GModule::regular(GroupPtr G) {
  const int n = G->order();
  std::vector<IntMatrix> mats(n, IntMatrix(n, n));
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < n; ++x) mats[g].at(G->mul(g, x), x) = 1;  // g . e_x = e_{gx}
  return GModule(std::move(G), FgAbGroup(n, IntMatrix(n, 0)), std::move(mats));
}

GModule GModule::permutation(GroupPtr G, int npoints,
                             const std::map<std::string, std::vector<int>>& generator_perms) {
  std::map<std::string, IntMatrix> mats;
  for (const auto& [name, p] : generator_perms) {
    if (static_cast<int>(p.size()) != npoints) throw MathError("permutation: wrong permutation length");
    IntMatrix m(npoints, npoints);
    std::vector<bool> hit(npoints, false);
    for (int i = 0; i < npoints; ++i) {
      if (p[i] < 0 || p[i] >= npoints || hit[p[i]]) throw MathError("permutation: not a permutation");
      hit[p[i]] = true;
      m.at(p[i], i) = 1;
    }
    mats[name] = std::move(m);
  }
  return GModule(std::move(G), FgAbGroup(npoints, IntMatrix(npoints, 0)), mats);
}

GModule tensor(const GModule& M, const GModule& N) {
  if (M.group() != N.group() && !M.group()->same_table(*N.group()))
    throw MathError("tensor: modules over different groups");
  const int m = M.gens(), n = N.gens();
  // relations: R_M (x) I_n  and  I_m (x) R_N
  IntMatrix relM = kron(M.underlying().relations(), IntMatrix::identity(n));
  IntMatrix relN = kron(IntMatrix::identity(m), N.underlying().relations());
  FgAbGroup under(m * n, relM.hstack(relN));
  std::vector<IntMatrix> mats;
  mats.reserve(M.group()->order());
  for (int g = 0; g < M.group()->order(); ++g) mats.push_back(kron(M.act(g), N.act(g)));
  return GModule(M.group(), std::move(under), std::move(mats));
}

GModule dual(const GModule& L) {
  if (!L.is_lattice()) throw MathError("dual: module has torsion");
  std::vector<IntMatrix> mats;
  const auto& G = *L.group();
  for (int g = 0; g < G.order(); ++g) mats.push_back(L.act(G.inv(g)).transpose());
  return GModule(L.group(), L.underlying(), std::move(mats));
}

GModule restrict_module(const GModule& M, const Subgroup& H, const GroupPtr& Hgroup) {
  std::vector<IntMatrix> mats;
  for (size_t i = 0; i < H.elements.size(); ++i) mats.push_back(M.act(H.elements[i]));
  return GModule(Hgroup, M.underlying(), std::move(mats));
}

GModule direct_sum(const GModule& M, const GModule& N) {
  if (M.group() != N.group() && !M.group()->same_table(*N.group()))
    throw MathError("direct_sum: modules over different groups");
  const int m = M.gens(), n = N.gens();
  const IntMatrix& RM = M.underlying().relations();
  const IntMatrix& RN = N.underlying().relations();
  IntMatrix rel(m + n, RM.cols() + RN.cols());
  for (int j = 0; j < RM.cols(); ++j)
    for (int i = 0; i < m; ++i) rel.at(i, j) = RM.at(i, j);
  for (int j = 0; j < RN.cols(); ++j)
    for (int i = 0; i < n; ++i) rel.at(m + i, RM.cols() + j) = RN.at(i, j);
  std::vector<IntMatrix> mats;
  for (int g = 0; g < M.group()->order(); ++g) {
    IntMatrix a(m + n, m + n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) a.at(i, j) = M.act(g).at(i, j);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a.at(m + i, m + j) = N.act(g).at(i, j);
    mats.push_back(std::move(a));
  }
  return GModule(M.group(), FgAbGroup(m + n, rel), std::move(mats));
}

GMap::GMap(GModule src, GModule tgt, IntMatrix m, bool validate)
    : source(std::move(src)), target(std::move(tgt)), matrix(std::move(m)) {
  if (matrix.rows() != target.gens() || matrix.cols() != source.gens())
    throw MathError("GMap: matrix dimensions do not match modules");
  if (!validate) return;
  const IntMatrix& RT = target.underlying().relations();
  // well-defined on relations
  if (source.underlying().relations().cols() > 0) {
    if (!columns_in_lattice(RT, matrix * source.underlying().relations()))
      throw MathError("GMap: not well-defined on relations");
  }
  // equivariance modulo target relations
  for (int g = 0; g < source.group()->order(); ++g) {
    IntMatrix diff = matrix * source.act(g) - target.act(g) * matrix;
    if (!diff.is_zero() && !columns_in_lattice(RT, diff))
      throw MathError("GMap: matrix is not equivariant");
  }
}

GMap GMap::identity(const GModule& M) { return GMap(M, M, IntMatrix::identity(M.gens()), false); }

GMap GMap::zero(const GModule& source, const GModule& target) {
  return GMap(source, target, IntMatrix(target.gens(), source.gens()), false);
}

bool GMap::is_injective() const {
  // kernel trivial: every x with f(x) in target relations lies in source relations
  IntMatrix big = matrix.hstack(target.underlying().relations());
  IntMatrix ker = kernel_basis(big);
  LinearSystem srel(source.underlying().relations());
  for (int j = 0; j < ker.cols(); ++j) {
    IVec x(source.gens());
    for (int i = 0; i < source.gens(); ++i) x[i] = ker.at(i, j);
    if (!srel.solve(x)) return false;
  }
  return true;
}

bool GMap::is_surjective() const {
  LinearSystem sys(matrix.hstack(target.underlying().relations()));
  for (int i = 0; i < target.gens(); ++i) {
    IVec e(target.gens());
    e[i] = 1;
    if (!sys.solve(e)) return false;
  }
  return true;
}

GMap compose(const GMap& g, const GMap& f) {
  if (g.source.gens() != f.target.gens()) throw MathError("compose: interface mismatch");
  return GMap(f.source, g.target, g.matrix * f.matrix, false);
}

GMap kernel_of(const GMap& f) {
  const int m = f.source.gens();
  // preimage lattice of the target relation lattice
  IntMatrix big = f.matrix.hstack(f.target.underlying().relations());
  IntMatrix ker = kernel_basis(big);
  IntMatrix K(m, ker.cols());
  for (int j = 0; j < ker.cols(); ++j)
    for (int i = 0; i < m; ++i) K.at(i, j) = ker.at(i, j);
  LinearSystem ksys(K);
  // kernel presented on the columns of K, modulo the source relations
  IntMatrix relcoords(K.cols(), f.source.underlying().relations().cols());
  for (int j = 0; j < relcoords.cols(); ++j) {
    auto c = ksys.solve(f.source.underlying().relations().col(j));
    if (!c) throw MathError("kernel_of: source relation outside kernel lattice (internal)");
    relcoords.set_col(j, *c);
  }
  std::vector<IntMatrix> mats;
  for (int g = 0; g < f.source.group()->order(); ++g) {
    auto gk = solve_matrix(K, f.source.act(g) * K);
    if (!gk) throw MathError("kernel_of: kernel lattice not G-stable (internal)");
    mats.push_back(std::move(*gk));
  }
  GModule kermod(f.source.group(), FgAbGroup(K.cols(), relcoords), std::move(mats));
  return GMap(std::move(kermod), f.source, K, false);
}

GMap image_of(const GMap& f) {
  const int m = f.source.gens();
  // relations among the images f(e_1..e_m): preimage lattice of target relations
  IntMatrix big = f.matrix.hstack(f.target.underlying().relations());
  IntMatrix ker = kernel_basis(big);
  IntMatrix rel(m, ker.cols());
  for (int j = 0; j < ker.cols(); ++j)
    for (int i = 0; i < m; ++i) rel.at(i, j) = ker.at(i, j);
  std::vector<IntMatrix> mats;
  for (int g = 0; g < f.source.group()->order(); ++g) mats.push_back(f.source.act(g));
  GModule img(f.source.group(), FgAbGroup(m, rel), std::move(mats));
  return GMap(std::move(img), f.target, f.matrix, false);
}

GMap cokernel_of(const GMap& f) {
  IntMatrix rel = f.target.underlying().relations().hstack(f.matrix);
  std::vector<IntMatrix> mats;
  for (int g = 0; g < f.target.group()->order(); ++g) mats.push_back(f.target.act(g));
  GModule cok(f.target.group(), FgAbGroup(f.target.gens(), rel), std::move(mats));
  return GMap(f.target, std::move(cok), IntMatrix::identity(f.target.gens()), false);
}

GTorus::GTorus(GModule cocharacters) : cochar(std::move(cocharacters)) {
  if (!cochar.is_lattice()) throw MathError("GTorus: cocharacter module must be a lattice");
}

}  // namespace amx
