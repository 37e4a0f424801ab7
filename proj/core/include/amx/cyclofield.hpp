// Exact arithmetic in the cyclotomic field Q(zeta_N): power-basis elements
// modulo the N-th cyclotomic polynomial, field operations, substitution
// endomorphisms, and verification of multiplicative decompositions.
#pragma once

#include "amx/intlat.hpp"

namespace amx {

// coefficients of the N-th cyclotomic polynomial, constant term first,
// degree phi(N), computed by recursive exact division of x^N - 1
std::vector<Int> cyclotomic_polynomial(int N);

class CycloElement {
 public:
  CycloElement() : N_(1) {}
  // arbitrary-length power-basis coefficients, reduced mod Phi_N
  CycloElement(int N, QVec coeffs);

  int level() const { return N_; }                // N
  const QVec& coeffs() const { return coeff_; }   // length phi(N)
  bool is_zero() const;

  CycloElement operator+(const CycloElement& o) const;
  CycloElement operator-(const CycloElement& o) const;
  CycloElement operator-() const;
  CycloElement operator*(const CycloElement& o) const;
  bool operator==(const CycloElement& o) const;
  bool operator!=(const CycloElement& o) const { return !(*this == o); }

  CycloElement inverse() const;       // throws MathError on zero
  CycloElement pow(long e) const;     // negative exponents allowed
  CycloElement subst(long k) const;   // zeta -> zeta^k

 private:
  int N_;
  QVec coeff_;
};

CycloElement cyclo_zero(int N);
CycloElement cyclo_one(int N);
CycloElement cyclo_rational(int N, const Rat& q);
CycloElement cyclo_zeta(int N, long power = 1);

// true iff value = zeta_N^torsion_exp * prod generators[i]^expo[i], exactly
bool verify_unit_decomposition(const CycloElement& value, const Int& torsion_exp,
                               const IVec& expo, const std::vector<CycloElement>& generators);

}  // namespace amx
