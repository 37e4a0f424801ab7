#include "amx/resolve.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <sstream>

namespace amx {

GRElem gr_zero(const FinGroup& G) { return GRElem(G.order()); }

GRElem gr_of(const FinGroup& G, int g, const Int& coeff) {
  GRElem e(G.order());
  e[g] = coeff;
  return e;
}

GRElem gr_mul(const FinGroup& G, const GRElem& a, const GRElem& b) {
  GRElem out(G.order());
  for (int g = 0; g < G.order(); ++g) {
    if (a[g] == 0) continue;
    for (int h = 0; h < G.order(); ++h)
      if (b[h] != 0) out[G.mul(g, h)] += a[g] * b[h];
  }
  return out;
}

GRElem gr_add(const GRElem& a, const GRElem& b) { return vec_add(a, b); }
GRElem gr_neg(const GRElem& a) { return vec_scale(-1, a); }

Int gr_aug(const GRElem& a) {
  Int s = 0;
  for (const auto& c : a) s += c;
  return s;
}

GRElem gr_star(const FinGroup& G, const GRElem& a) {
  GRElem out(G.order());
  for (int g = 0; g < G.order(); ++g)
    if (a[g] != 0) out[G.inv(g)] += a[g];
  return out;
}

GRElem gr_parse(const FinGroup& G, const std::string& s) {
  GRElem out(G.order());
  size_t i = 0;
  auto skip_ws = [&] { while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i; };
  skip_ws();
  if (i >= s.size()) return out;  // empty = zero
  bool first = true;
  while (i < s.size()) {
    skip_ws();
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    } else if (!first) {
      throw MathError("gr_parse: expected '+' or '-' in '" + s + "'");
    }
    first = false;
    skip_ws();
    // term: '*'-separated factors; integer factors multiply the coefficient,
    // name factors multiply the group element
    Int coeff = sign;
    int elem = G.identity();
    bool any = false;
    while (true) {
      skip_ws();
      size_t start = i;
      if (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
        coeff *= Int(s.substr(start, i - start));
        any = true;
      } else if (i < s.size() && (isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) {
        while (i < s.size() && (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        std::string name = s.substr(start, i - start);
        long expo = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
          ++i;
          skip_ws();
          size_t es = i;
          if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
          while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) ++i;
          expo = std::stol(s.substr(es, i - es));
        }
        int base = (name == "e") ? G.identity() : G.generator(name);
        elem = G.mul(elem, G.power(base, expo));
        any = true;
      } else {
        throw MathError("gr_parse: bad term in '" + s + "'");
      }
      skip_ws();
      if (i < s.size() && s[i] == '*') {
        ++i;
        continue;
      }
      break;
    }
    if (!any) throw MathError("gr_parse: empty term in '" + s + "'");
    out[elem] += coeff;
  }
  return out;
}

std::string gr_to_string(const FinGroup& G, const GRElem& a) {
  std::ostringstream os;
  bool first = true;
  for (int g = 0; g < G.order(); ++g) {
    if (a[g] == 0) continue;
    Int c = a[g];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int ac = abs(c);
    if (ac != 1 || g == G.identity()) os << ac;
    if (g != G.identity()) {
      if (ac != 1) os << "*";
      os << G.element_name(g);
    }
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

GroupRingMatrix::GroupRingMatrix(GroupPtr G, int rows, int cols)
    : G_(std::move(G)), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, GRElem(G_->order())) {}

GroupRingMatrix GroupRingMatrix::operator*(const GroupRingMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw MathError("GroupRingMatrix: product dimension mismatch");
  GroupRingMatrix out(G_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (vec_is_zero(at(i, k))) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        if (vec_is_zero(rhs.at(k, j))) continue;
        // composition of left-module maps: entries multiply in the order
        // (second map's entry) * (first map's entry)
        out.at(i, j) = gr_add(out.at(i, j), gr_mul(*G_, rhs.at(k, j), at(i, k)));
      }
    }
  return out;
}

bool GroupRingMatrix::is_zero() const {
  for (const auto& x : e_)
    if (!vec_is_zero(x)) return false;
  return true;
}

IntMatrix GroupRingMatrix::expanded() const {
  const int n = G_->order();
  IntMatrix out(rows_ * n, cols_ * n);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const GRElem& m = at(i, j);
      for (int k = 0; k < n; ++k) {
        if (m[k] == 0) continue;
        // d(g e_j) = sum_i (g*m) e'_i
        for (int g = 0; g < n; ++g) out.at(i * n + G_->mul(g, k), j * n + g) += m[k];
      }
    }
  return out;
}

const GroupRingMatrix& FreeResolution::d(int n) const {
  if (n < 1 || n > top()) throw MathError("FreeResolution: differential index out of range");
  return diff[n - 1];
}

IntMatrix FreeResolution::expanded_d(int n) const { return d(n).expanded(); }

IntMatrix FreeResolution::expanded_aug() const {
  const int n = G->order();
  IntMatrix out(1, ranks[0] * n);
  for (int i = 0; i < ranks[0]; ++i)
    for (int g = 0; g < n; ++g) out.at(0, i * n + g) = aug[i];
  return out;
}

void validate_resolution(const FreeResolution& P) {
  const int N = P.top();
  if (static_cast<int>(P.diff.size()) != N) throw MathError("resolution: rank/differential count mismatch");
  if (static_cast<int>(P.aug.size()) != P.ranks[0]) throw MathError("resolution: augmentation size mismatch");
  for (int n = 1; n <= N; ++n) {
    if (P.d(n).rows() != P.ranks[n - 1] || P.d(n).cols() != P.ranks[n])
      throw MathError("resolution: differential " + std::to_string(n) + " has wrong shape");
  }
  // aug ∘ d1 = 0
  if (N >= 1) {
    const auto& d1 = P.d(1);
    for (int j = 0; j < d1.cols(); ++j) {
      Int s = 0;
      for (int i = 0; i < d1.rows(); ++i) s += P.aug[i] * gr_aug(d1.at(i, j));
      if (s != 0) throw MathError("resolution: augmentation does not kill d1");
    }
  }
  // d ∘ d = 0
  for (int n = 2; n <= N; ++n)
    if (!(P.d(n - 1) * P.d(n)).is_zero())
      throw MathError("resolution: d∘d nonzero at degree " + std::to_string(n));
  // exactness of the expanded complex
  // degree 0: ker(aug)/im(d1) = 0 and aug surjective
  if (N >= 1) {
    auto h0 = homology_at(P.expanded_d(1), P.expanded_aug());
    if (!h0.group.is_trivial()) throw MathError("resolution: not exact at degree 0");
    IntSolve s = solve_integer(P.expanded_aug(), IVec{1});
    if (!s.ok) throw MathError("resolution: augmentation not surjective");
  }
  for (int n = 1; n < N; ++n) {
    auto h = homology_at(P.expanded_d(n + 1), P.expanded_d(n));
    if (!h.group.is_trivial())
      throw MathError("resolution: not exact at degree " + std::to_string(n) + " (homology " +
                      invariant_factor_string(h.group) + ")");
  }
}

FreeResolution bar_resolution(GroupPtr G, int n_max, long rank_guard) {
  const int n = G->order();
  std::vector<int> nonid;
  for (int g = 0; g < n; ++g)
    if (g != G->identity()) nonid.push_back(g);
  const int q = static_cast<int>(nonid.size());

  FreeResolution P;
  P.G = G;
  long rank = 1;
  P.ranks.push_back(1);
  P.aug = IVec{1};
  // basis of P_k: k-tuples of non-identity elements, mixed-radix order
  auto tuple_of = [&](int k, long idx) {
    std::vector<int> t(k);
    for (int p = k - 1; p >= 0; --p) {
      t[p] = nonid[idx % q];
      idx /= q;
    }
    return t;
  };
  auto index_of = [&](const std::vector<int>& t) -> long {
    long idx = 0;
    for (int g : t) {
      int pos = static_cast<int>(std::lower_bound(nonid.begin(), nonid.end(), g) - nonid.begin());
      idx = idx * q + pos;
    }
    return idx;
  };
  for (int k = 1; k <= n_max; ++k) {
    long prev = rank;
    rank *= q;
    if (rank > rank_guard) throw MathError("bar_resolution: rank guard exceeded");
    P.ranks.push_back(static_cast<int>(rank));
    GroupRingMatrix d(G, static_cast<int>(prev), static_cast<int>(rank));
    for (long col = 0; col < rank; ++col) {
      auto t = tuple_of(k, col);
      // d[g1|...|gk] = g1 [g2|..|gk] + sum (-1)^i [..|g_i g_{i+1}|..] + (-1)^k [g1|..|g_{k-1}]
      {
        std::vector<int> rest(t.begin() + 1, t.end());
        d.at(static_cast<int>(index_of(rest)), static_cast<int>(col))[t[0]] += 1;
      }
      for (int i = 1; i < k; ++i) {
        int prod = G->mul(t[i - 1], t[i]);
        if (prod == G->identity()) continue;  // normalized bar: degenerate term dropped
        std::vector<int> merged;
        for (int p = 0; p < k; ++p) {
          if (p == i - 1) {
            merged.push_back(prod);
            ++p;  // skip t[i]
          } else {
            merged.push_back(t[p]);
          }
        }
        Int sign = (i % 2 == 0) ? 1 : -1;
        d.at(static_cast<int>(index_of(merged)), static_cast<int>(col))[G->identity()] += sign;
      }
      {
        std::vector<int> front(t.begin(), t.end() - 1);
        Int sign = (k % 2 == 0) ? 1 : -1;
        d.at(static_cast<int>(index_of(front)), static_cast<int>(col))[G->identity()] += sign;
      }
    }
    P.diff.push_back(std::move(d));
  }
  return P;
}

FreeResolution periodic_resolution(GroupPtr G, int gen, int n_max) {
  const int m = G->order();
  if (G->element_order(gen) != m) throw MathError("periodic_resolution: element does not generate");
  FreeResolution P;
  P.G = G;
  P.ranks.assign(n_max + 1, 1);
  P.aug = IVec{1};
  GRElem smin1 = gr_of(*G, gen);
  smin1[G->identity()] -= 1;  // sigma - 1
  GRElem norm(m);
  for (int k = 0, g = G->identity();; g = G->mul(g, gen)) {
    norm[g] += 1;
    if (++k == m) break;
  }
  for (int n = 1; n <= n_max; ++n) {
    GroupRingMatrix d(G, 1, 1);
    d.at(0, 0) = (n % 2 == 1) ? smin1 : norm;
    P.diff.push_back(std::move(d));
  }
  return P;
}

FreeResolution tensor_resolution(const FreeResolution& PA, const FreeResolution& PB,
                                 GroupPtr G, const std::vector<int>& embedA,
                                 const std::vector<int>& embedB, int n_max) {
  if (PA.top() < n_max || PB.top() < n_max)
    throw MathError("tensor_resolution: factors too short");
  const auto& A = *PA.G;
  const auto& B = *PB.G;
  // basis of degree n: (i, a, b) with a < rA_i, b < rB_{n-i}, ordered by i, a, b
  auto rank_at = [&](int n) {
    int r = 0;
    for (int i = 0; i <= n; ++i) r += PA.ranks[i] * PB.ranks[n - i];
    return r;
  };
  auto offset = [&](int n, int i) {
    int off = 0;
    for (int k = 0; k < i; ++k) off += PA.ranks[k] * PB.ranks[n - k];
    return off;
  };
  auto map_elem = [&](const GRElem& x, const std::vector<int>& embed) {
    GRElem out(G->order());
    for (size_t g = 0; g < x.size(); ++g)
      if (x[g] != 0) out[embed[g]] += x[g];
    return out;
  };

  FreeResolution P;
  P.G = G;
  P.ranks.push_back(rank_at(0));
  P.aug.assign(P.ranks[0], 1);
  for (int n = 1; n <= n_max; ++n) {
    P.ranks.push_back(rank_at(n));
    GroupRingMatrix d(G, P.ranks[n - 1], P.ranks[n]);
    for (int i = 0; i <= n; ++i) {
      int j = n - i;
      for (int a = 0; a < PA.ranks[i]; ++a)
        for (int b = 0; b < PB.ranks[j]; ++b) {
          int col = offset(n, i) + a * PB.ranks[j] + b;
          // dA (x) 1 : block (i-1, j)
          if (i >= 1) {
            const auto& dA = PA.d(i);
            for (int ap = 0; ap < PA.ranks[i - 1]; ++ap) {
              const GRElem& m = dA.at(ap, a);
              if (vec_is_zero(m)) continue;
              int row = offset(n - 1, i - 1) + ap * PB.ranks[j] + b;
              d.at(row, col) = gr_add(d.at(row, col), map_elem(m, embedA));
            }
          }
          // (-1)^i 1 (x) dB : block (i, j-1)
          if (j >= 1) {
            const auto& dB = PB.d(j);
            Int sign = (i % 2 == 0) ? 1 : -1;
            for (int bp = 0; bp < PB.ranks[j - 1]; ++bp) {
              const GRElem& m = dB.at(bp, b);
              if (vec_is_zero(m)) continue;
              int row = offset(n - 1, i) + a * PB.ranks[j - 1] + bp;
              d.at(row, col) = gr_add(d.at(row, col), vec_scale(sign, map_elem(m, embedB)));
            }
          }
        }
    }
    P.diff.push_back(std::move(d));
  }
  (void)A;
  (void)B;
  return P;
}

FreeResolution custom_resolution(GroupPtr G, std::vector<int> ranks,
                                 std::vector<GroupRingMatrix> diffs, bool validate) {
  FreeResolution P;
  P.G = std::move(G);
  P.ranks = std::move(ranks);
  P.diff = std::move(diffs);
  P.aug.assign(P.ranks[0], 1);
  if (validate) validate_resolution(P);
  return P;
}

namespace {

// apply g to an expanded vector of Z[G]^r: (i,h) -> (i, g h)
IVec act_on_expanded(const FinGroup& G, int r, int g, const IVec& x) {
  const int n = G.order();
  IVec out(x.size());
  for (int i = 0; i < r; ++i)
    for (int h = 0; h < n; ++h)
      if (x[i * n + h] != 0) out[i * n + G.mul(g, h)] = x[i * n + h];
  return out;
}

int support_size(const IVec& x) {
  int s = 0;
  for (const auto& v : x)
    if (v != 0) ++s;
  return s;
}

}  // namespace

GroupRingMatrix cover_lattice(GroupPtr G, int rank, const IntMatrix& K, long rank_guard) {
  const int n = G->order();
  // candidates sorted: small support first, then lexicographic
  std::vector<IVec> cands;
  for (int j = 0; j < K.cols(); ++j) cands.push_back(K.col(j));
  std::stable_sort(cands.begin(), cands.end(), [](const IVec& a, const IVec& b) {
    int sa = support_size(a), sb = support_size(b);
    if (sa != sb) return sa < sb;
    return a < b;
  });
  std::vector<IVec> chosen;     // Z[G]-generators
  std::vector<IVec> span_cols;  // their full G-orbits (integer span)
  std::unique_ptr<LinearSystem> span_sys;
  for (const auto& c : cands) {
    if (span_sys && span_sys->solve(c)) continue;
    chosen.push_back(c);
    for (int g = 0; g < n; ++g) span_cols.push_back(act_on_expanded(*G, rank, g, c));
    span_sys = std::make_unique<LinearSystem>(
        IntMatrix::from_columns(rank * n, span_cols));
    if (static_cast<long>(chosen.size()) > rank_guard)
      throw MathError("cover_lattice: rank guard exceeded");
  }
  GroupRingMatrix d(G, rank, static_cast<int>(chosen.size()));
  for (size_t j = 0; j < chosen.size(); ++j)
    for (int i = 0; i < rank; ++i)
      for (int g = 0; g < n; ++g) d.at(i, static_cast<int>(j))[g] = chosen[j][i * n + g];
  return d;
}

FreeResolution extend_resolution(FreeResolution P, int to_degree, long rank_guard) {
  while (P.top() < to_degree) {
    int topdeg = P.top();
    IntMatrix K = (topdeg == 0) ? kernel_basis(P.expanded_aug()) : kernel_basis(P.expanded_d(topdeg));
    GroupRingMatrix d = cover_lattice(P.G, P.ranks[topdeg], K, rank_guard);
    P.ranks.push_back(d.cols());
    P.diff.push_back(std::move(d));
  }
  return P;
}

namespace {

FreeResolution abelian_resolution(GroupPtr G, int n_max);

}  // namespace

FreeResolution auto_resolution(GroupPtr G, int n_max) {
  const int n = G->order();
  if (n == 1) {
    FreeResolution P;
    P.G = G;
    P.ranks.assign(n_max + 1, 0);
    P.ranks[0] = 1;
    P.aug = IVec{1};
    for (int k = 1; k <= n_max; ++k) P.diff.emplace_back(G, P.ranks[k - 1], 0);
    return P;
  }
  // cyclic?
  for (int g = 0; g < n; ++g)
    if (G->element_order(g) == n) return periodic_resolution(G, g, n_max);
  if (G->is_abelian()) return abelian_resolution(G, n_max);
  if (n <= 8) return bar_resolution(G, n_max);
  throw MathError("auto_resolution: no construction for this group (supply one)");
}

namespace {

FreeResolution abelian_resolution(GroupPtr G, int n_max) {
  const int n = G->order();
  // split off a cyclic subgroup of maximal order as a direct factor
  int g0 = 0, best = 0;
  for (int g = 0; g < n; ++g) {
    int o = G->element_order(g);
    if (o > best) {
      best = o;
      g0 = g;
    }
  }
  auto H1 = subgroup_from_generators(*G, {g0});
  // complement: first subgroup K with |K|*|H1| = |G| and trivial intersection
  for (auto& K : all_subgroups(*G)) {
    if (static_cast<int>(K.elements.size()) * best != n) continue;
    bool trivial_meet = true;
    for (int x : K.elements)
      if (x != G->identity() && H1.contains(x)) {
        trivial_meet = false;
        break;
      }
    if (!trivial_meet) continue;
    auto H1g = std::make_shared<FinGroup>(H1.group);
    auto Kg = std::make_shared<FinGroup>(K.group);
    auto PA = auto_resolution(H1g, n_max);
    auto PB = auto_resolution(Kg, n_max);
    return tensor_resolution(PA, PB, G, H1.elements, K.elements, n_max);
  }
  throw MathError("abelian_resolution: no complement found (internal)");
}

}  // namespace

RestrictedResolution restrict_resolution(const FreeResolution& P, const Subgroup& H,
                                         GroupPtr Hgroup) {
  const auto& G = *P.G;
  const int hn = static_cast<int>(H.elements.size());
  // right coset representatives of H\G, deterministic
  std::vector<int> reps;
  {
    std::vector<bool> covered(G.order(), false);
    for (int g = 0; g < G.order(); ++g) {
      if (covered[g]) continue;
      reps.push_back(g);
      for (int h : H.elements) covered[G.mul(h, g)] = true;
    }
  }
  if (reps[0] != G.identity()) throw MathError("restrict_resolution: identity not first rep (internal)");
  const int t = static_cast<int>(reps.size());
  std::vector<int> coset_of(G.order()), hpart(G.order());
  for (int c = 0; c < t; ++c)
    for (int hi = 0; hi < hn; ++hi) {
      int g = G.mul(H.elements[hi], reps[c]);
      coset_of[g] = c;
      hpart[g] = hi;  // index into H.elements
    }

  RestrictedResolution out{FreeResolution{}, Hgroup, H, reps};
  out.res.G = Hgroup;
  for (int r : P.ranks) out.res.ranks.push_back(r * t);
  out.res.aug.assign(P.ranks[0] * t, 0);
  // basis (c, i) = g_c e_i at flat index c * r + i; aug(g_c e_i) = aug(e_i)
  for (int c = 0; c < t; ++c)
    for (int i = 0; i < P.ranks[0]; ++i) out.res.aug[c * P.ranks[0] + i] = P.aug[i];
  for (int dn = 1; dn <= P.top(); ++dn) {
    const auto& d = P.d(dn);
    const int rs = P.ranks[dn], rt = P.ranks[dn - 1];
    GroupRingMatrix dd(Hgroup, rt * t, rs * t);
    for (int c = 0; c < t; ++c)
      for (int i = 0; i < rs; ++i)
        for (int j = 0; j < rt; ++j) {
          const GRElem& m = d.at(j, i);
          for (int k = 0; k < G.order(); ++k) {
            if (m[k] == 0) continue;
            int prod = G.mul(reps[c], k);  // g_c * k = h * g_{c'}
            int cp = coset_of[prod];
            int h = H.to_sub(G.mul(prod, G.inv(reps[cp])));
            dd.at(cp * rt + j, c * rs + i)[h] += m[k];
          }
        }
    out.res.diff.push_back(std::move(dd));
  }
  return out;
}

ChainMap chain_map_lift(const FreeResolution& source, const FreeResolution& target,
                        int degree_max) {
  if (source.G->order() != target.G->order() || !source.G->same_table(*target.G))
    throw MathError("chain_map_lift: resolutions over different groups");
  if (source.top() < degree_max || target.top() < degree_max)
    throw MathError("chain_map_lift: resolutions too short");
  const auto& G = *source.G;
  const int n = G.order();
  ChainMap u;
  // degree 0: aug_T ∘ u0 = aug_S on each basis vector
  {
    LinearSystem sys(target.expanded_aug());
    GroupRingMatrix u0(target.G, target.ranks[0], source.ranks[0]);
    for (int i = 0; i < source.ranks[0]; ++i) {
      auto x = sys.solve(IVec{source.aug[i]});
      if (!x) throw MathError("chain_map_lift: augmentation not liftable (internal)");
      for (int j = 0; j < target.ranks[0]; ++j)
        for (int g = 0; g < n; ++g) u0.at(j, i)[g] = (*x)[j * n + g];
    }
    u.maps.push_back(std::move(u0));
  }
  for (int k = 1; k <= degree_max; ++k) {
    LinearSystem sys(target.expanded_d(k));
    // rhs = u_{k-1} ∘ d_k^S, one column per Z[G]-basis vector of source P_k
    GroupRingMatrix rhsm = u.maps[k - 1] * source.d(k);
    IntMatrix rhs = rhsm.expanded();
    GroupRingMatrix uk(target.G, target.ranks[k], source.ranks[k]);
    for (int i = 0; i < source.ranks[k]; ++i) {
      auto x = sys.solve(rhs.col(i * n + G.identity()));
      if (!x) throw MathError("chain_map_lift: no lift at degree " + std::to_string(k));
      for (int j = 0; j < target.ranks[k]; ++j)
        for (int g = 0; g < n; ++g) uk.at(j, i)[g] = (*x)[j * n + g];
    }
    u.maps.push_back(std::move(uk));
  }
  return u;
}

Homotopy contracting_homotopy(const FreeResolution& P, int n_max) {
  if (P.top() < n_max + 1) throw MathError("contracting_homotopy: resolution too short");
  Homotopy h;
  // eta: section of the augmentation
  {
    LinearSystem sys(P.expanded_aug());
    auto x = sys.solve(IVec{1});
    if (!x) throw MathError("contracting_homotopy: augmentation not surjective");
    h.eta = *x;
  }
  IntMatrix aug = P.expanded_aug();
  for (int k = 0; k <= n_max; ++k) {
    const int dk = P.expanded_dim(k);
    LinearSystem sys(P.expanded_d(k + 1));
    IntMatrix Hk(P.expanded_dim(k + 1), dk);
    for (int c = 0; c < dk; ++c) {
      IVec x(dk);
      x[c] = 1;
      IVec rhs;
      if (k == 0) {
        rhs = vec_sub(x, vec_scale(aug.apply(x)[0], h.eta));
      } else {
        IVec dx = P.expanded_d(k).apply(x);
        rhs = vec_sub(x, h.H[k - 1].apply(dx));
      }
      auto y = sys.solve(rhs);
      if (!y) throw MathError("contracting_homotopy: complex not exact at degree " + std::to_string(k));
      Hk.set_col(c, *y);
    }
    h.H.push_back(std::move(Hk));
  }
  return h;
}

Diagonal diagonal_approximation(const FreeResolution& P, int n_max, long pair_dim_guard) {
  if (P.ranks[0] != 1) throw MathError("diagonal_approximation: needs rank 1 in degree 0");
  if (P.top() < n_max) throw MathError("diagonal_approximation: resolution too short");
  const auto& G = *P.G;
  const int ng = G.order();

  auto pair_dim = [&](int n) {
    long s = 0;
    for (int i = 0; i <= n; ++i) s += static_cast<long>(P.expanded_dim(i)) * P.expanded_dim(n - i);
    return s;
  };
  for (int nn = 0; nn <= n_max; ++nn)
    if (pair_dim(nn) > pair_dim_guard) throw MathError("diagonal_approximation: size guard exceeded");

  std::vector<std::vector<long>> offs(n_max + 1);
  for (int nn = 0; nn <= n_max; ++nn) {
    long o = 0;
    for (int i = 0; i <= nn; ++i) {
      offs[nn].push_back(o);
      o += static_cast<long>(P.expanded_dim(i)) * P.expanded_dim(nn - i);
    }
  }

  Homotopy h = contracting_homotopy(P, std::max(0, n_max - 1));
  IntMatrix aug = P.expanded_aug();

  // tensor-complex homotopy: HT(x ⊗ y) = Hx ⊗ y + (eta aug x) ⊗ Hy (2nd term
  // only on the (0, j) blocks)
  auto apply_HT = [&](int nn, const IVec& v) {
    IVec out(pair_dim(nn + 1));
    for (int i = 0; i <= nn; ++i) {
      int j = nn - i;
      const long base = offs[nn][i];
      const int dimx = P.expanded_dim(i), dimy = P.expanded_dim(j);
      // H_i ⊗ 1 : block (i, j) -> (i+1, j)
      const IntMatrix& Hi = h.H[i];
      const long obase = offs[nn + 1][i + 1];
      const int dimx2 = P.expanded_dim(i + 1);
      for (int x = 0; x < dimx; ++x)
        for (int y = 0; y < dimy; ++y) {
          const Int& c = v[base + static_cast<long>(x) * dimy + y];
          if (c == 0) continue;
          for (int x2 = 0; x2 < dimx2; ++x2)
            if (Hi.at(x2, x) != 0)
              out[obase + static_cast<long>(x2) * dimy + y] += c * Hi.at(x2, x);
        }
      // (eta aug) ⊗ H_j : block (0, j) -> (0, j+1)
      if (i == 0 && j <= nn) {
        const IntMatrix& Hj = h.H[j];
        const long obase2 = offs[nn + 1][0];
        const int dimy2 = P.expanded_dim(j + 1);
        for (int x = 0; x < dimx; ++x) {
          // aug of basis x (component x/ng has aug value)
          const Int& av = aug.at(0, x);
          if (av == 0) continue;
          for (int y = 0; y < dimy; ++y) {
            const Int& c = v[base + static_cast<long>(x) * dimy + y];
            if (c == 0) continue;
            for (int y2 = 0; y2 < dimy2; ++y2)
              if (Hj.at(y2, y) != 0)
                for (size_t ei = 0; ei < h.eta.size(); ++ei)
                  if (h.eta[ei] != 0)
                    out[obase2 + static_cast<long>(ei) * dimy2 + y2] += c * av * h.eta[ei] * Hj.at(y2, y);
          }
        }
      }
    }
    return out;
  };

  Diagonal D;
  D.offsets = offs;
  // equivariant extension of the Z[G]-basis columns at degree nn:
  // Delta(g e_s) = (g (x) g) Delta(e_s)
  auto equivariant_full = [&](int nn, const IntMatrix& comp) {
    IntMatrix out(static_cast<int>(pair_dim(nn)), P.expanded_dim(nn));
    for (int s = 0; s < P.ranks[nn]; ++s) {
      IVec base = comp.col(s);
      for (int g = 0; g < ng; ++g) {
        IVec moved(base.size());
        for (int i = 0; i <= nn; ++i) {
          int j = nn - i;
          const long off = offs[nn][i];
          const int dimy = P.expanded_dim(j);
          for (int x = 0; x < P.expanded_dim(i); ++x)
            for (int y = 0; y < dimy; ++y) {
              const Int& c = base[off + static_cast<long>(x) * dimy + y];
              if (c == 0) continue;
              int gx = (x / ng) * ng + G.mul(g, x % ng);
              int gy = (y / ng) * ng + G.mul(g, y % ng);
              moved[off + static_cast<long>(gx) * dimy + gy] += c;
            }
        }
        out.set_col(s * ng + g, moved);
      }
    }
    return out;
  };

  // degree 0: e -> e (x) e on the Z[G] basis (r0 = 1), extended equivariantly;
  // higher degrees lift Delta_{n-1} d through the tensor homotopy on the
  // Z[G]-basis columns only, keeping every stage equivariant
  D.comp.emplace_back(static_cast<int>(pair_dim(0)), P.ranks[0]);
  D.comp[0].at(static_cast<long>(G.identity()) * P.expanded_dim(0) + G.identity(), 0) = 1;
  for (int nn = 1; nn <= n_max; ++nn) {
    IntMatrix prev_full = equivariant_full(nn - 1, D.comp[nn - 1]);
    IntMatrix dn = P.expanded_d(nn);
    IntMatrix comp(static_cast<int>(pair_dim(nn)), P.ranks[nn]);
    for (int s = 0; s < P.ranks[nn]; ++s) {
      IVec prev = prev_full.apply(dn.col(s * ng + G.identity()));
      comp.set_col(s, apply_HT(nn - 1, prev));
    }
    D.comp.push_back(std::move(comp));
  }
  return D;
}

}  // namespace amx
