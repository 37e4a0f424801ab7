#include "amx/intlat.hpp"

#include <algorithm>
#include <sstream>

namespace amx {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<IVec>& cols) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != rows) throw MathError("from_columns: column length mismatch");
    for (int i = 0; i < rows; ++i) m.at(i, static_cast<int>(j)) = cols[j][i];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw MathError("matrix product: dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Int& aik = at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        const Int& bkj = rhs.at(k, j);
        if (bkj != 0) out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw MathError("matrix sum: dimension mismatch");
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + rhs.a_[i];
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw MathError("matrix difference: dimension mismatch");
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
  return out;
}

bool IntMatrix::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

IVec IntMatrix::apply(const IVec& x) const {
  if (static_cast<int>(x.size()) != cols_) throw MathError("apply: dimension mismatch");
  IVec out(rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && x[j] != 0) out[i] += at(i, j) * x[j];
  return out;
}

IVec IntMatrix::col(int j) const {
  IVec v(rows_);
  for (int i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

void IntMatrix::set_col(int j, const IVec& v) {
  if (static_cast<int>(v.size()) != rows_) throw MathError("set_col: dimension mismatch");
  for (int i = 0; i < rows_; ++i) at(i, j) = v[i];
}

IntMatrix IntMatrix::hstack(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_) throw MathError("hstack: row mismatch");
  IntMatrix out(rows_, cols_ + rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
    for (int j = 0; j < rhs.cols_; ++j) out.at(i, cols_ + j) = rhs.at(i, j);
  }
  return out;
}

IntMatrix IntMatrix::vstack(const IntMatrix& rhs) const {
  if (cols_ != rhs.cols_) throw MathError("vstack: column mismatch");
  IntMatrix out(rows_ + rhs.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(i, j) = at(i, j);
  for (int i = 0; i < rhs.rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(rows_ + i, j) = rhs.at(i, j);
  return out;
}

IntMatrix IntMatrix::scaled(const Int& k) const {
  IntMatrix out(rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = k * a_[i];
  return out;
}

IVec vec_add(const IVec& x, const IVec& y) {
  if (x.size() != y.size()) throw MathError("vec_add: size mismatch");
  IVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
  return out;
}

IVec vec_sub(const IVec& x, const IVec& y) {
  if (x.size() != y.size()) throw MathError("vec_sub: size mismatch");
  IVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
  return out;
}

IVec vec_scale(const Int& k, const IVec& x) {
  IVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = k * x[i];
  return out;
}

bool vec_is_zero(const IVec& x) {
  for (const auto& v : x)
    if (v != 0) return false;
  return true;
}

namespace {

// Elementary operations tracked in U (rows) and V (cols).
struct SnfWork {
  IntMatrix A, U, V;

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols(); ++c) std::swap(A.at(i, c), A.at(j, c));
    for (int c = 0; c < U.cols(); ++c) std::swap(U.at(i, c), U.at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows(); ++r) std::swap(A.at(r, i), A.at(r, j));
    for (int r = 0; r < V.rows(); ++r) std::swap(V.at(r, i), V.at(r, j));
  }
  void add_row(int dst, int src, const Int& k) {  // row dst += k * row src
    if (k == 0) return;
    for (int c = 0; c < A.cols(); ++c) A.at(dst, c) += k * A.at(src, c);
    for (int c = 0; c < U.cols(); ++c) U.at(dst, c) += k * U.at(src, c);
  }
  void add_col(int dst, int src, const Int& k) {  // col dst += k * col src
    if (k == 0) return;
    for (int r = 0; r < A.rows(); ++r) A.at(r, dst) += k * A.at(r, src);
    for (int r = 0; r < V.rows(); ++r) V.at(r, dst) += k * V.at(r, src);
  }
  void negate_row(int i) {
    for (int c = 0; c < A.cols(); ++c) A.at(i, c) = -A.at(i, c);
    for (int c = 0; c < U.cols(); ++c) U.at(i, c) = -U.at(i, c);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& A) {
  const int m = A.rows(), n = A.cols();
  SnfWork w{A, IntMatrix::identity(m), IntMatrix::identity(n)};

  int t = 0;
  const int tmax = std::min(m, n);
  while (t < tmax) {
    // pick pivot: smallest nonzero magnitude in the trailing submatrix,
    // ties by lowest row then lowest column
    int pi = -1, pj = -1;
    Int best;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        const Int& x = w.A.at(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (pi < 0 || ax < best) {
          best = ax;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing submatrix is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);
    if (w.A.at(t, t) < 0) w.negate_row(t);

    // clear row t and column t; the pivot strictly shrinks on every retry
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (w.A.at(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.A.at(i, t).get_mpz_t(), w.A.at(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (w.A.at(i, t) != 0) {  // nonzero remainder, smaller than pivot
          w.swap_rows(t, i);
          clean = false;
        }
      }
      if (!clean) continue;
      for (int j = t + 1; j < n; ++j) {
        if (w.A.at(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), w.A.at(t, j).get_mpz_t(), w.A.at(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (w.A.at(t, j) != 0) {
          w.swap_cols(t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // enforce divisibility of the trailing block by the pivot
      for (int i = t + 1; i < m && clean; ++i)
        for (int j = t + 1; j < n && clean; ++j)
          if (w.A.at(i, j) % w.A.at(t, t) != 0) {
            w.add_row(t, i, 1);  // reintroduces row entries; loop shrinks pivot
            clean = false;
          }
    }
    ++t;
  }

  SmithDecomposition out;
  out.U = std::move(w.U);
  out.V = std::move(w.V);
  out.D = std::move(w.A);
  for (int i = 0; i < tmax; ++i)
    if (out.D.at(i, i) != 0) {
      out.diag.push_back(out.D.at(i, i));
      ++out.rank;
    }
  return out;
}

int rank_of(const IntMatrix& A) { return smith_normal_form(A).rank; }

LinearSystem::LinearSystem(IntMatrix A) : A_(std::move(A)), snf_(smith_normal_form(A_)) {
  // kernel basis: columns of V beyond the rank
  const int n = A_.cols();
  const int r = snf_.rank;
  kernel_ = IntMatrix(n, n - r);
  for (int j = r; j < n; ++j)
    for (int i = 0; i < n; ++i) kernel_.at(i, j - r) = snf_.V.at(i, j);
}

std::optional<IVec> LinearSystem::solve(const IVec& b) const {
  if (static_cast<int>(b.size()) != A_.rows()) throw MathError("solve: rhs dimension mismatch");
  IVec ub = snf_.U.apply(b);
  const int n = A_.cols();
  IVec y(n);
  for (int i = 0; i < A_.rows(); ++i) {
    if (i < snf_.rank) {
      const Int& d = snf_.D.at(i, i);
      if (ub[i] % d != 0) return std::nullopt;
      y[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V.apply(y);
}

std::optional<QVec> LinearSystem::solve_rational(const QVec& b) const {
  if (static_cast<int>(b.size()) != A_.rows()) throw MathError("solve_rational: rhs dimension mismatch");
  const int m = A_.rows(), n = A_.cols();
  QVec ub(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (snf_.U.at(i, j) != 0) ub[i] += Rat(snf_.U.at(i, j)) * b[j];
  QVec y(n);
  for (int i = 0; i < m; ++i) {
    if (i < snf_.rank) {
      y[i] = ub[i] / Rat(snf_.D.at(i, i));
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  QVec x(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (snf_.V.at(i, j) != 0) x[i] += Rat(snf_.V.at(i, j)) * y[j];
  return x;
}

IntSolve solve_integer(const IntMatrix& A, const IVec& b) {
  LinearSystem sys(A);
  IntSolve out;
  out.kernel = sys.kernel();
  auto x = sys.solve(b);
  if (x) {
    out.ok = true;
    out.x = *x;
  }
  return out;
}

IntMatrix kernel_basis(const IntMatrix& A) { return LinearSystem(A).kernel(); }

std::optional<IntMatrix> solve_matrix(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows() != B.rows()) throw MathError("solve_matrix: row mismatch");
  LinearSystem sys(A);
  IntMatrix X(A.cols(), B.cols());
  for (int j = 0; j < B.cols(); ++j) {
    auto x = sys.solve(B.col(j));
    if (!x) return std::nullopt;
    X.set_col(j, *x);
  }
  return X;
}

FgAbGroup::FgAbGroup(int gen_count, IntMatrix relations) : gens_(gen_count), rels_(std::move(relations)) {
  if (rels_.rows() == 0 && rels_.cols() == 0) rels_ = IntMatrix(gens_, 0);
  if (rels_.rows() != gens_) throw MathError("FgAbGroup: relation matrix must have one row per generator");
  auto snf = smith_normal_form(rels_);
  U_ = snf.U;
  dfull_.assign(gens_, Int(0));
  for (int i = 0; i < snf.rank; ++i) dfull_[i] = snf.D.at(i, i);
  for (int i = 0; i < gens_; ++i) {
    if (dfull_[i] > 1) invf_.push_back(dfull_[i]);
  }
  for (int i = 0; i < gens_; ++i)
    if (dfull_[i] == 0) invf_.push_back(0);
}

FgAbGroup group_from_relations(int gen_count, const IntMatrix& relations) {
  return FgAbGroup(gen_count, relations);
}

Int FgAbGroup::order() const {
  Int o = 1;
  for (const auto& d : invf_) {
    if (d == 0) return 0;
    o *= d;
  }
  return o;
}

int FgAbGroup::free_rank() const {
  int r = 0;
  for (const auto& d : invf_)
    if (d == 0) ++r;
  return r;
}

bool FgAbGroup::is_trivial() const { return invf_.empty(); }

bool FgAbGroup::is_zero_elem(const IVec& x) const {
  if (static_cast<int>(x.size()) != gens_) throw MathError("is_zero_elem: dimension mismatch");
  IVec y = U_.apply(x);
  for (int i = 0; i < gens_; ++i) {
    if (dfull_[i] == 0) {
      if (y[i] != 0) return false;
    } else if (y[i] % dfull_[i] != 0) {
      return false;
    }
  }
  return true;
}

bool FgAbGroup::elems_equal(const IVec& x, const IVec& y) const { return is_zero_elem(vec_sub(x, y)); }

Int FgAbGroup::element_order(const IVec& x) const {
  IVec y = U_.apply(x);
  Int ord = 1;
  for (int i = 0; i < gens_; ++i) {
    if (dfull_[i] == 0) {
      if (y[i] != 0) return 0;  // infinite order
    } else {
      Int g = gcd(dfull_[i], y[i]);
      Int k = dfull_[i] / g;
      ord = lcm(ord, k);
    }
  }
  return ord;
}

Homology homology_at(const IntMatrix& f, const IntMatrix& g,
                     const IntMatrix& rels_mid, const IntMatrix& rels_next) {
  const int b = g.cols();
  if (f.rows() != b) throw MathError("homology_at: f target and g source disagree");
  IntMatrix smid = (rels_mid.rows() == 0 && rels_mid.cols() == 0) ? IntMatrix(b, 0) : rels_mid;
  IntMatrix snext = (rels_next.rows() == 0 && rels_next.cols() == 0) ? IntMatrix(g.rows(), 0) : rels_next;
  if (smid.rows() != b) throw MathError("homology_at: middle relations dimension mismatch");
  if (snext.rows() != g.rows()) throw MathError("homology_at: next relations dimension mismatch");

  // validate g∘f = 0 in the quotient target
  {
    IntMatrix gf = g * f;
    LinearSystem next_rel(snext);
    for (int j = 0; j < gf.cols(); ++j) {
      if (!next_rel.solve(gf.col(j))) throw MathError("homology_at: not a complex (g∘f != 0)");
    }
  }

  // cycle lattice = projection to the first b coordinates of ker[g | snext]
  IntMatrix K;
  {
    IntMatrix gs = g.hstack(snext);
    IntMatrix ker = kernel_basis(gs);
    K = IntMatrix(b, ker.cols());
    for (int j = 0; j < ker.cols(); ++j)
      for (int i = 0; i < b; ++i) K.at(i, j) = ker.at(i, j);
  }

  Homology H;
  H.cycles = K;
  H.cycle_solver = std::make_shared<LinearSystem>(K);

  // boundaries-and-relations expressed in cycle coordinates
  IntMatrix bnd = f.hstack(smid);
  IntMatrix relcoords(K.cols(), bnd.cols());
  for (int j = 0; j < bnd.cols(); ++j) {
    auto c = H.cycle_solver->solve(bnd.col(j));
    if (!c) throw MathError("homology_at: boundary not expressible in cycle lattice (internal)");
    relcoords.set_col(j, *c);
  }
  H.group = FgAbGroup(K.cols(), relcoords);
  return H;
}

Homology homology_at(const IntMatrix& f, const IntMatrix& g) {
  return homology_at(f, g, IntMatrix(g.cols(), 0), IntMatrix(g.rows(), 0));
}

IVec Homology::class_of(const IVec& cycle) const {
  auto c = cycle_solver->solve(cycle);
  if (!c) throw MathError("Homology::class_of: input is not a cycle");
  return *c;
}

IVec Homology::representative(const IVec& cls) const { return cycles.apply(cls); }

SubgroupInfo subgroup_generated(const std::vector<IVec>& elements, const FgAbGroup& ambient) {
  const int n = ambient.generator_count();
  for (const auto& e : elements)
    if (static_cast<int>(e.size()) != n) throw MathError("subgroup_generated: element dimension mismatch");
  SubgroupInfo out;
  out.embed = IntMatrix::from_columns(n, elements);
  IntMatrix er = out.embed.hstack(ambient.relations());
  out.member_solver = std::make_shared<LinearSystem>(er);
  // relators of the abstract subgroup: coefficient vectors t with E t in the
  // ambient relation lattice = projection of ker[E | R]
  IntMatrix ker = kernel_basis(er);
  const int k = static_cast<int>(elements.size());
  IntMatrix rel(k, ker.cols());
  for (int j = 0; j < ker.cols(); ++j)
    for (int i = 0; i < k; ++i) rel.at(i, j) = ker.at(i, j);
  out.group = FgAbGroup(k, rel);
  return out;
}

bool SubgroupInfo::contains(const IVec& x) const { return member_solver->solve(x).has_value(); }

std::optional<IVec> SubgroupInfo::express(const IVec& x) const {
  auto s = member_solver->solve(x);
  if (!s) return std::nullopt;
  IVec coords(embed.cols());
  for (int i = 0; i < embed.cols(); ++i) coords[i] = (*s)[i];
  return coords;
}

std::string invariant_factor_string(const FgAbGroup& g) {
  const auto& inv = g.invariant_factors();
  if (inv.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < inv.size(); ++i) {
    if (i) os << " + ";
    if (inv[i] == 0)
      os << "Z";
    else
      os << "Z/" << inv[i];
  }
  return os.str();
}

}  // namespace amx
