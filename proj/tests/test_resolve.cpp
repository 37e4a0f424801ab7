#include "doctest.h"

#include <memory>

#include "amx/resolve.hpp"

using namespace amx;

namespace {

GroupPtr klein() { return std::make_shared<FinGroup>(FinGroup::klein()); }
GroupPtr cyclic(int m) { return std::make_shared<FinGroup>(FinGroup::cyclic(m)); }
GroupPtr m16() { return std::make_shared<FinGroup>(FinGroup::modular16()); }

GroupRingMatrix grm(GroupPtr G, const std::vector<std::vector<std::string>>& entries,
                    bool star = false) {
  int r = static_cast<int>(entries.size());
  int c = r ? static_cast<int>(entries[0].size()) : 0;
  GroupRingMatrix m(G, r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) {
      m.at(i, j) = gr_parse(*G, entries[i][j]);
      if (star) m.at(i, j) = gr_star(*G, m.at(i, j));
    }
  return m;
}

// the rank 1,2,2,2,3,4 resolution of Z over the modular group of order 16
FreeResolution m16_resolution(GroupPtr G) {
  std::vector<GroupRingMatrix> d;
  d.push_back(grm(G, {{"1 - sigma", "1 - tau"}}, true));
  d.push_back(grm(G, {{"0", "1 + sigma + sigma^2 + sigma^7*tau"},
                      {"1 + tau", "sigma^3 - 1"}}, true));
  d.push_back(grm(G, {{"tau - 1", "1 - sigma^3 + sigma^2 - sigma^7"},
                      {"0", "1 - sigma^7*tau + tau - sigma^7"}}, true));
  d.push_back(grm(G, {{"1 + tau", "-1 - sigma^2 + sigma^3 + sigma^7",
                       "1 + sigma^4 - sigma^5 - sigma^7"},
                      {"0", "tau - 1",
                       "1 + sigma + sigma^2 + sigma^3 + sigma^4 + sigma^6 + sigma^7 + sigma^4*tau*sigma"}}, true));
  d.push_back(grm(G, {{"tau - 1", "0", "1 + sigma^2 - sigma^3 - sigma^7",
                       "1 + sigma^4 - sigma - sigma^3"},
                      {"0", "sigma^5 - sigma^6", "1 + tau",
                       "1 + sigma^2 + sigma^3 + sigma^4 + sigma^6 + sigma^7"},
                      {"0", "sigma - 1", "0", "1 - tau"}}, true));
  return custom_resolution(G, {1, 2, 2, 2, 3, 4}, std::move(d));
}

// cochain complex with trivial coefficients Z: delta_n has entry (j,i) =
// coefficient sum of d_{n+1}(i,j)
IntMatrix trivial_coeff_delta(const FreeResolution& P, int n) {
  const auto& d = P.d(n + 1);
  IntMatrix m(d.cols(), d.rows());
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j) m.at(j, i) = gr_aug(d.at(i, j));
  return m;
}

FgAbGroup trivial_coeff_cohomology(const FreeResolution& P, int n) {
  return homology_at(trivial_coeff_delta(P, n - 1), trivial_coeff_delta(P, n)).group;
}

}  // namespace

TEST_CASE("group ring arithmetic and parsing") {
  auto G = m16();
  auto a = gr_parse(*G, "1 - sigma^3 + 2*sigma^2*tau");
  CHECK(gr_aug(a) == 2);
  CHECK(gr_parse(*G, gr_to_string(*G, a)) == a);
  // tau * sigma = sigma^5 * tau
  CHECK(gr_mul(*G, gr_of(*G, G->generator("tau")), gr_of(*G, G->generator("sigma"))) ==
        gr_parse(*G, "sigma^5*tau"));
  // augmentation is multiplicative
  auto b = gr_parse(*G, "3 - sigma*tau");
  CHECK(gr_aug(gr_mul(*G, a, b)) == gr_aug(a) * gr_aug(b));
  CHECK(gr_add(a, gr_neg(a)) == gr_zero(*G));
  CHECK(gr_parse(*G, "sigma^-1") == gr_of(*G, G->power(G->generator("sigma"), 7)));
  CHECK_THROWS_AS(gr_parse(*G, "sigma +"), MathError);
  CHECK_THROWS_AS(gr_parse(*G, "rho"), MathError);
}

TEST_CASE("expanded matrix of a group ring map") {
  auto G = cyclic(2);
  GroupRingMatrix d(G, 1, 1);
  d.at(0, 0) = gr_parse(*G, "sigma - 1");
  IntMatrix e = d.expanded();
  // e_0 -> sigma - 1, sigma*e_0 -> 1 - sigma
  CHECK(e.at(0, 0) == -1);
  CHECK(e.at(1, 0) == 1);
  CHECK(e.at(0, 1) == 1);
  CHECK(e.at(1, 1) == -1);
  // product expansion agrees with matrix product of expansions
  GroupRingMatrix n(G, 1, 1);
  n.at(0, 0) = gr_parse(*G, "1 + sigma");
  CHECK((d * n).expanded() == d.expanded() * n.expanded());
  CHECK((d * n).is_zero());
}

TEST_CASE("bar resolutions validate") {
  auto C2 = cyclic(2);
  auto P = bar_resolution(C2, 5);
  CHECK(P.ranks == std::vector<int>({1, 1, 1, 1, 1, 1}));
  validate_resolution(P);

  auto C3 = cyclic(3);
  validate_resolution(bar_resolution(C3, 4));

  auto K = klein();
  auto B = bar_resolution(K, 3);
  CHECK(B.ranks == std::vector<int>({1, 3, 9, 27}));
  validate_resolution(B);
}

TEST_CASE("periodic resolution of a cyclic group") {
  auto C4 = cyclic(4);
  auto P = periodic_resolution(C4, C4->generator("sigma"), 6);
  validate_resolution(P);
  // integral cohomology of C4 with trivial coefficients: Z/4 in even degrees
  CHECK(trivial_coeff_cohomology(P, 2).invariant_factors() == std::vector<Int>{4});
  CHECK(trivial_coeff_cohomology(P, 4).invariant_factors() == std::vector<Int>{4});
  CHECK(trivial_coeff_cohomology(P, 3).is_trivial());
  // a non-generator is rejected
  CHECK_THROWS_AS(periodic_resolution(C4, C4->power(C4->generator("sigma"), 2), 3), MathError);
}

TEST_CASE("automatic resolution of abelian groups") {
  auto K = klein();
  auto P = auto_resolution(K, 8);
  // tensor of two periodic rank-1 resolutions: rank n+1 in degree n
  for (int n = 0; n <= 8; ++n) CHECK(P.ranks[n] == n + 1);
  validate_resolution(P);
  CHECK(trivial_coeff_cohomology(P, 2).invariant_factors() == std::vector<Int>({2, 2}));
  CHECK(trivial_coeff_cohomology(P, 1).is_trivial());

  auto G = std::make_shared<FinGroup>(
      FinGroup::direct_product(FinGroup::cyclic(2), FinGroup::cyclic(4)));
  auto Q = auto_resolution(G, 4);
  validate_resolution(Q);
  CHECK(trivial_coeff_cohomology(Q, 2).invariant_factors() == std::vector<Int>({2, 4}));

  // trivial group edge case
  auto E = auto_resolution(cyclic(1), 3);
  CHECK(E.ranks == std::vector<int>({1, 0, 0, 0}));
  validate_resolution(E);
}

TEST_CASE("the bundled rank 1,2,2,2,3,4 resolution over the order-16 modular group") {
  auto G = m16();
  auto P = m16_resolution(G);  // custom_resolution validates
  CHECK(P.top() == 5);
  CHECK(trivial_coeff_cohomology(P, 1).is_trivial());
  // H^2(G, Z) = Hom(G, Q/Z); the abelianization is Z/4 x Z/2
  CHECK(trivial_coeff_cohomology(P, 2).invariant_factors() == std::vector<Int>({2, 4}));

  // a single sign flip breaks exactness
  std::vector<GroupRingMatrix> bad = P.diff;
  bad[2].at(0, 0) = gr_neg(bad[2].at(0, 0));
  CHECK_THROWS_AS(custom_resolution(G, P.ranks, std::move(bad)), MathError);
}

TEST_CASE("extending a truncated resolution") {
  auto C4 = cyclic(4);
  auto P = periodic_resolution(C4, C4->generator("sigma"), 2);
  auto Q = extend_resolution(P, 5);
  CHECK(Q.ranks == std::vector<int>({1, 1, 1, 1, 1, 1}));
  validate_resolution(Q);

  auto K = klein();
  auto R = extend_resolution(auto_resolution(K, 2), 4);
  CHECK(R.ranks[3] == 4);
  CHECK(R.ranks[4] == 5);
  validate_resolution(R);
}

TEST_CASE("restriction of a resolution to a subgroup") {
  auto K = klein();
  auto P = auto_resolution(K, 4);
  auto H = subgroup_from_generators(*K, {K->generator("sigma")});
  auto Hg = std::make_shared<FinGroup>(H.group);
  auto R = restrict_resolution(P, H, Hg);
  CHECK(R.coset_reps.size() == 2);
  CHECK(R.coset_reps[0] == K->identity());
  for (int n = 0; n <= 4; ++n) CHECK(R.res.ranks[n] == 2 * P.ranks[n]);
  validate_resolution(R.res);
  // restricted cohomology of the C2 factor: Z/2 in even positive degrees
  CHECK(trivial_coeff_cohomology(R.res, 2).invariant_factors() == std::vector<Int>{2});
  CHECK(trivial_coeff_cohomology(R.res, 3).is_trivial());
}

TEST_CASE("chain map lifts between resolutions") {
  auto K = klein();
  auto P = auto_resolution(K, 4);
  auto B = bar_resolution(K, 3);
  auto u = chain_map_lift(B, P, 3);  // bar -> tensor
  // commuting squares u_{k-1} d^S = d^T u_k, and augmentation compatibility
  for (int k = 1; k <= 3; ++k) {
    auto lhs = u.maps[k - 1] * B.d(k);
    auto rhs = P.d(k) * u.maps[k];
    for (int i = 0; i < lhs.rows(); ++i)
      for (int j = 0; j < lhs.cols(); ++j) CHECK(lhs.at(i, j) == rhs.at(i, j));
  }
  for (int j = 0; j < B.ranks[0]; ++j) {
    Int s = 0;
    for (int i = 0; i < P.ranks[0]; ++i) s += P.aug[i] * gr_aug(u.maps[0].at(i, j));
    CHECK(s == B.aug[j]);
  }
  // round trip bar -> tensor -> bar still lifts the identity on Z
  auto v = chain_map_lift(P, B, 3);
  auto w0 = v.maps[0] * u.maps[0];
  Int s = 0;
  for (int i = 0; i < B.ranks[0]; ++i) s += B.aug[i] * gr_aug(w0.at(i, 0));
  CHECK(s == 1);
}

TEST_CASE("contracting homotopy identity") {
  auto C4 = cyclic(4);
  auto P = periodic_resolution(C4, C4->generator("sigma"), 5);
  auto h = contracting_homotopy(P, 3);
  // degree 0: d1 H0 + eta aug = 1
  {
    IntMatrix lhs = P.expanded_d(1) * h.H[0];
    IntMatrix aug = P.expanded_aug();
    for (int c = 0; c < P.expanded_dim(0); ++c)
      for (int r = 0; r < P.expanded_dim(0); ++r) {
        Int want = (r == c) ? 1 : 0;
        CHECK(lhs.at(r, c) + h.eta[r] * aug.at(0, c) == want);
      }
  }
  for (int n = 1; n <= 3; ++n) {
    IntMatrix lhs = P.expanded_d(n + 1) * h.H[n] + h.H[n - 1] * P.expanded_d(n);
    CHECK(lhs == IntMatrix::identity(P.expanded_dim(n)));
  }

  auto K = klein();
  auto Q = auto_resolution(K, 4);
  auto hk = contracting_homotopy(Q, 2);
  for (int n = 1; n <= 2; ++n) {
    IntMatrix lhs = Q.expanded_d(n + 1) * hk.H[n] + hk.H[n - 1] * Q.expanded_d(n);
    CHECK(lhs == IntMatrix::identity(Q.expanded_dim(n)));
  }
}

namespace {

// expanded differential of P (x) P at degree n (Koszul sign (-1)^i on 1 (x) d)
IntMatrix pair_differential(const FreeResolution& P, const Diagonal& D, int n) {
  auto dim_at = [&](int k) {
    long s = 0;
    for (int i = 0; i <= k; ++i) s += static_cast<long>(P.expanded_dim(i)) * P.expanded_dim(k - i);
    return s;
  };
  IntMatrix out(static_cast<int>(dim_at(n - 1)), static_cast<int>(dim_at(n)));
  for (int i = 0; i <= n; ++i) {
    int j = n - i;
    long base = D.offsets[n][i];
    int dimx = P.expanded_dim(i), dimy = P.expanded_dim(j);
    if (i >= 1) {
      IntMatrix di = P.expanded_d(i);
      long obase = D.offsets[n - 1][i - 1];
      for (int x = 0; x < dimx; ++x)
        for (int y = 0; y < dimy; ++y)
          for (int x2 = 0; x2 < P.expanded_dim(i - 1); ++x2)
            if (di.at(x2, x) != 0)
              out.at(static_cast<int>(obase + static_cast<long>(x2) * dimy + y),
                     static_cast<int>(base + static_cast<long>(x) * dimy + y)) += di.at(x2, x);
    }
    if (j >= 1) {
      IntMatrix dj = P.expanded_d(j);
      long obase = D.offsets[n - 1][i];
      Int sign = (i % 2 == 0) ? 1 : -1;
      for (int x = 0; x < dimx; ++x)
        for (int y = 0; y < dimy; ++y)
          for (int y2 = 0; y2 < P.expanded_dim(j - 1); ++y2)
            if (dj.at(y2, y) != 0)
              out.at(static_cast<int>(obase + static_cast<long>(x) * P.expanded_dim(j - 1) + y2),
                     static_cast<int>(base + static_cast<long>(x) * dimy + y)) += sign * dj.at(y2, y);
    }
  }
  return out;
}

// full expanded diagonal at degree n, rebuilt from the Z[G]-basis columns by
// equivariance: Delta(g e) = (g,g) Delta(e)
IntMatrix full_diagonal(const FreeResolution& P, const Diagonal& D, int n) {
  const auto& G = *P.G;
  const int ng = G.order();
  long rows = 0;
  for (int i = 0; i <= n; ++i) rows += static_cast<long>(P.expanded_dim(i)) * P.expanded_dim(n - i);
  IntMatrix out(static_cast<int>(rows), P.expanded_dim(n));
  for (int s = 0; s < P.ranks[n]; ++s) {
    IVec base = D.comp[n].col(s);
    for (int g = 0; g < ng; ++g) {
      IVec moved(base.size());
      for (int i = 0; i <= n; ++i) {
        int j = n - i;
        long off = D.offsets[n][i];
        int dimy = P.expanded_dim(j);
        for (int a = 0; a < P.ranks[i]; ++a)
          for (int h = 0; h < ng; ++h)
            for (int b = 0; b < P.ranks[j]; ++b)
              for (int h2 = 0; h2 < ng; ++h2) {
                const Int& c = base[off + static_cast<long>(a * ng + h) * dimy + b * ng + h2];
                if (c != 0)
                  moved[off + static_cast<long>(a * ng + G.mul(g, h)) * dimy + b * ng +
                        G.mul(g, h2)] += c;
              }
      }
      out.set_col(s * ng + g, moved);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("diagonal approximation is an equivariant chain map") {
  auto K = klein();
  auto P = auto_resolution(K, 5);
  auto D = diagonal_approximation(P, 4);
  // counit: (aug (x) aug) Delta_0 = aug
  {
    IntMatrix aug = P.expanded_aug();
    IVec c = D.comp[0].col(0);  // image of the identity basis vector
    Int s = 0;
    const int d0 = P.expanded_dim(0);
    for (int x = 0; x < d0; ++x)
      for (int y = 0; y < d0; ++y)
        s += c[static_cast<long>(x) * d0 + y] * aug.at(0, x) * aug.at(0, y);
    CHECK(s == 1);
  }
  for (int n = 1; n <= 4; ++n) {
    IntMatrix lhs = pair_differential(P, D, n) * full_diagonal(P, D, n);
    IntMatrix rhs = full_diagonal(P, D, n - 1) * P.expanded_d(n);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("diagonal approximation over a cyclic group") {
  auto C4 = cyclic(4);
  auto P = periodic_resolution(C4, C4->generator("sigma"), 5);
  auto D = diagonal_approximation(P, 4);
  for (int n = 1; n <= 4; ++n) {
    IntMatrix lhs = pair_differential(P, D, n) * full_diagonal(P, D, n);
    IntMatrix rhs = full_diagonal(P, D, n - 1) * P.expanded_d(n);
    CHECK(lhs == rhs);
  }
}
