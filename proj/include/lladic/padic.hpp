#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "lladic/errors.hpp"

namespace lladic {

// Integer polynomial, coefficients from the constant term up.
using ZPoly = std::vector<mpz_class>;

// 32 unless LLADIC_PRECISION is set to a positive integer.
int default_precision();

// ell^n, cached per (ell, n).
const mpz_class& prime_power(long ell, int n);

// Number of factors ell in a nonzero integer.
int ell_valuation(const mpz_class& x, long ell);

class PadicInt {
 public:
  PadicInt(long ell, const mpz_class& value, int precision = default_precision());

  const mpz_class& residue() const { return residue_; }
  long prime() const { return ell_; }
  int precision() const { return n_; }
  const mpz_class& modulus() const { return prime_power(ell_, n_); }

  bool is_zero() const { return residue_ == 0; }
  // Exact valuation; PrecisionExhausted for a zero residue.
  int val() const;
  // Valuation, or the precision when the residue is zero.
  int val_lower_bound() const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  bool operator==(const PadicInt& o) const;

  std::string str() const { return residue_.get_str(); }

 private:
  void check_compatible(const PadicInt& o) const;
  long ell_;
  int n_;
  mpz_class residue_;
};

PadicInt invert(const PadicInt& x);

// Newton lift of a simple root of f from x0 mod ell to precision x0.precision().
PadicInt hensel_root(const ZPoly& f, const PadicInt& x0);

mpz_class poly_eval_mod(const ZPoly& f, const mpz_class& x, const mpz_class& m);
ZPoly poly_derivative(const ZPoly& f);

}  // namespace lladic
