#include "amx/cyclofield.hpp"

#include <algorithm>
#include <map>

namespace amx {

namespace {

void trim(QVec& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// remainder of p modulo the monic integer polynomial m (constant term first)
QVec poly_mod(QVec p, const std::vector<Int>& m) {
  const int dm = static_cast<int>(m.size()) - 1;
  trim(p);
  while (static_cast<int>(p.size()) - 1 >= dm) {
    const int dp = static_cast<int>(p.size()) - 1;
    Rat c = p.back();
    for (int i = 0; i <= dm; ++i) p[dp - dm + i] -= c * Rat(m[i]);
    trim(p);
  }
  return p;
}

QVec poly_mul(const QVec& a, const QVec& b) {
  if (a.empty() || b.empty()) return {};
  QVec out(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// exact division of integer polynomials (known to divide), monic divisor
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const int dd = static_cast<int>(den.size()) - 1;
  int dn = static_cast<int>(num.size()) - 1;
  while (dn >= 0 && num[dn] == 0) --dn;
  std::vector<Int> quot(dn - dd + 1);
  for (int k = dn - dd; k >= 0; --k) {
    Int c = num[k + dd];
    quot[k] = c;
    for (int i = 0; i <= dd; ++i) num[k + i] -= c * den[i];
  }
  for (const auto& c : num)
    if (c != 0) throw MathError("cyclotomic: division not exact (internal)");
  return quot;
}

const std::vector<Int>& phi_poly(int N) {
  static std::map<int, std::vector<Int>> cache;
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  return cache.emplace(N, cyclotomic_polynomial(N)).first->second;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(int N) {
  if (N < 1) throw MathError("cyclotomic_polynomial: N must be positive");
  // x^N - 1 divided by the product of Phi_d over proper divisors d
  std::vector<Int> num(N + 1);
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d) {
    if (N % d != 0) continue;
    num = poly_div_exact(num, cyclotomic_polynomial(d));
  }
  return num;
}

CycloElement::CycloElement(int N, QVec coeffs) : N_(N) {
  if (N < 1) throw MathError("CycloElement: N must be positive");
  const auto& m = phi_poly(N);
  coeff_ = poly_mod(std::move(coeffs), m);
  coeff_.resize(m.size() - 1, Rat(0));
  for (auto& c : coeff_) c.canonicalize();
}

bool CycloElement::is_zero() const {
  for (const auto& c : coeff_)
    if (c != 0) return false;
  return true;
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
  if (N_ != o.N_) throw MathError("CycloElement: mixed levels");
  QVec out = coeff_;
  for (size_t i = 0; i < out.size(); ++i) out[i] += o.coeff_[i];
  return CycloElement(N_, std::move(out));
}

CycloElement CycloElement::operator-(const CycloElement& o) const { return *this + (-o); }

CycloElement CycloElement::operator-() const {
  QVec out = coeff_;
  for (auto& c : out) c = -c;
  return CycloElement(N_, std::move(out));
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
  if (N_ != o.N_) throw MathError("CycloElement: mixed levels");
  return CycloElement(N_, poly_mul(coeff_, o.coeff_));
}

bool CycloElement::operator==(const CycloElement& o) const {
  return N_ == o.N_ && coeff_ == o.coeff_;
}

CycloElement CycloElement::inverse() const {
  if (is_zero()) throw MathError("CycloElement: division by zero");
  // extended Euclid over Q[x] against Phi_N (irreducible, so the gcd is 1)
  const auto& m = phi_poly(N_);
  QVec r0(m.size());
  for (size_t i = 0; i < m.size(); ++i) r0[i] = Rat(m[i]);
  QVec r1 = coeff_;
  trim(r1);
  QVec s0{}, s1{Rat(1)};
  while (true) {
    trim(r1);
    if (r1.empty()) throw MathError("CycloElement: element not invertible (internal)");
    if (r1.size() == 1) break;
    // r0 = q*r1 + r; s_next = s0 - q*s1
    QVec q(r0.size() - r1.size() + 1, Rat(0));
    QVec r = r0;
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      Rat c = r[k + r1.size() - 1] / r1.back();
      q[k] = c;
      if (c == 0) continue;
      for (size_t i = 0; i < r1.size(); ++i) r[k + i] -= c * r1[i];
    }
    trim(r);
    QVec qs = poly_mul(q, s1);
    QVec snext = s0;
    snext.resize(std::max(snext.size(), qs.size()), Rat(0));
    for (size_t i = 0; i < qs.size(); ++i) snext[i] -= qs[i];
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(snext);
  }
  Rat unit = r1[0];
  for (auto& c : s1) c /= unit;
  return CycloElement(N_, std::move(s1));
}

CycloElement CycloElement::pow(long e) const {
  CycloElement base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  CycloElement acc = cyclo_one(N_);
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

CycloElement CycloElement::subst(long k) const {
  // zeta^N = 1 holds in Q[x]/Phi_N (Phi_N divides x^N - 1), so exponents
  // reduce mod N and each power is rebuilt through cyclo_zeta
  long kk = ((k % N_) + N_) % N_;
  CycloElement acc = cyclo_zero(N_);
  for (size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    acc = acc + cyclo_rational(N_, coeff_[i]) * cyclo_zeta(N_, static_cast<long>(i) * kk);
  }
  return acc;
}

CycloElement cyclo_zero(int N) { return CycloElement(N, QVec{}); }
CycloElement cyclo_one(int N) { return CycloElement(N, QVec{Rat(1)}); }
CycloElement cyclo_rational(int N, const Rat& q) { return CycloElement(N, QVec{q}); }

CycloElement cyclo_zeta(int N, long power) {
  long p = ((power % N) + N) % N;
  QVec v(static_cast<size_t>(p) + 1, Rat(0));
  v[static_cast<size_t>(p)] = Rat(1);
  return CycloElement(N, std::move(v));  // the constructor reduces mod Phi_N
}

bool verify_unit_decomposition(const CycloElement& value, const Int& torsion_exp,
                               const IVec& expo, const std::vector<CycloElement>& generators) {
  if (expo.size() != generators.size())
    throw MathError("verify_unit_decomposition: exponent/generator length mismatch");
  const int N = value.level();
  CycloElement acc = cyclo_zeta(N, torsion_exp.get_si());
  for (size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].is_zero())
      throw MathError("verify_unit_decomposition: zero generator value");
    if (expo[i] == 0) continue;
    acc = acc * generators[i].pow(expo[i].get_si());
  }
  return acc == value;
}

}  // namespace amx
