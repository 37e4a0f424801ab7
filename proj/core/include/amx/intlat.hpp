// Exact integer linear algebra: matrices over Z (GMP), Smith normal form,
// integer/rational solving, finitely generated abelian groups, and homology
// of complexes of such groups.  Everything downstream sits on this layer.
#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace amx {

using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

struct MathError : std::runtime_error {
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw MathError("IntMatrix: negative dimension");
  }

  static IntMatrix identity(int n);
  static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
  static IntMatrix from_columns(int rows, const std::vector<IVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Int& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntMatrix operator+(const IntMatrix& rhs) const;
  IntMatrix operator-(const IntMatrix& rhs) const;
  IntMatrix operator-() const;
  bool operator==(const IntMatrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }
  bool operator!=(const IntMatrix& rhs) const { return !(*this == rhs); }

  bool is_zero() const;
  IntMatrix transpose() const;
  IVec apply(const IVec& x) const;  // this * x
  IVec col(int j) const;
  void set_col(int j, const IVec& v);
  IntMatrix hstack(const IntMatrix& rhs) const;  // [this | rhs]
  IntMatrix vstack(const IntMatrix& rhs) const;  // [this; rhs]
  IntMatrix scaled(const Int& k) const;

 private:
  int rows_, cols_;
  std::vector<Int> a_;
};

IVec vec_add(const IVec& x, const IVec& y);
IVec vec_sub(const IVec& x, const IVec& y);
IVec vec_scale(const Int& k, const IVec& x);
bool vec_is_zero(const IVec& x);

struct SmithDecomposition {
  IntMatrix U, V, D;  // U*A*V = D, U and V unimodular, D diagonal with chain
  int rank = 0;
  std::vector<Int> diag;  // the nonzero diagonal entries d_1 | d_2 | ... | d_rank
};

// Deterministic SNF: pivot of smallest nonzero magnitude, ties broken by
// lowest row then lowest column.
SmithDecomposition smith_normal_form(const IntMatrix& A);

int rank_of(const IntMatrix& A);

// Reusable factored solver for A x = b over Z (and over Q).
class LinearSystem {
 public:
  explicit LinearSystem(IntMatrix A);

  std::optional<IVec> solve(const IVec& b) const;
  std::optional<QVec> solve_rational(const QVec& b) const;
  const IntMatrix& kernel() const { return kernel_; }  // columns = basis of ker_Z(A)
  const IntMatrix& matrix() const { return A_; }
  int rank() const { return snf_.rank; }

 private:
  IntMatrix A_;
  SmithDecomposition snf_;
  IntMatrix kernel_;
};

struct IntSolve {
  bool ok = false;
  IVec x;             // one solution when ok
  IntMatrix kernel;   // basis of ker(A), columns
};
IntSolve solve_integer(const IntMatrix& A, const IVec& b);
IntMatrix kernel_basis(const IntMatrix& A);

// Solve A*X = B columnwise; nullopt if any column has no integer solution.
std::optional<IntMatrix> solve_matrix(const IntMatrix& A, const IntMatrix& B);

// A finitely generated abelian group presented by generators and relators
// (columns of the relation matrix).  Elements are integer coordinate vectors
// in the given generators; equality is decided modulo the relation lattice.
class FgAbGroup {
 public:
  FgAbGroup() : gens_(0), rels_(0, 0) {}
  FgAbGroup(int gen_count, IntMatrix relations);

  int generator_count() const { return gens_; }
  const IntMatrix& relations() const { return rels_; }
  const std::vector<Int>& invariant_factors() const { return invf_; }  // torsion then 0s
  Int order() const;  // 0 means infinite
  int free_rank() const;
  bool is_trivial() const;

  bool is_zero_elem(const IVec& x) const;
  bool elems_equal(const IVec& x, const IVec& y) const;
  Int element_order(const IVec& x) const;  // 0 means infinite

  bool same_invariants(const FgAbGroup& other) const { return invf_ == other.invf_; }

 private:
  int gens_;
  IntMatrix rels_;
  std::vector<Int> invf_;
  IntMatrix U_;            // row transform of SNF(rels)
  std::vector<Int> dfull_; // diagonal of SNF(rels) padded to gens_ with 0
};

FgAbGroup group_from_relations(int gen_count, const IntMatrix& relations);

// Homology ker(g)/im(f) at the middle of
//   Z^a --f--> Z^b / S_mid --g--> Z^c / S_next
// where S_mid, S_next are relation matrices (possibly 0x0 for free groups).
// Provides coordinates of a cycle in the homology presentation and a
// representative cycle for given class coordinates.
struct Homology {
  FgAbGroup group;    // presented on the columns of `cycles`
  IntMatrix cycles;   // b x k, columns generate the cycle lattice

  IVec class_of(const IVec& cycle) const;
  IVec representative(const IVec& cls) const;

  // internal: factored solver over the cycle generators
  std::shared_ptr<LinearSystem> cycle_solver;
};

Homology homology_at(const IntMatrix& f, const IntMatrix& g,
                     const IntMatrix& rels_mid, const IntMatrix& rels_next);
Homology homology_at(const IntMatrix& f, const IntMatrix& g);  // free case

// Subgroup of `ambient` generated by the given elements, with membership test.
struct SubgroupInfo {
  FgAbGroup group;   // abstract presentation on the given elements
  IntMatrix embed;   // ambient_gens x k, columns = the elements
  std::shared_ptr<LinearSystem> member_solver;  // [embed | ambient rels]

  bool contains(const IVec& x) const;
  // coordinates of x in the subgroup generators, when contained
  std::optional<IVec> express(const IVec& x) const;
};

SubgroupInfo subgroup_generated(const std::vector<IVec>& elements, const FgAbGroup& ambient);

std::string invariant_factor_string(const FgAbGroup& g);  // e.g. "Z/2 + Z/4 + Z"

}  // namespace amx
