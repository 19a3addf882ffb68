#pragma once
#include <gmpxx.h>

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lladic/padic.hpp"

namespace lladic {

class Ring;
using RingRef = const Ring*;

constexpr int kInfVal = 1 << 28;

// Element of a tower ring O. Coefficients are flat over Z_ell in the tower basis
// {u^i pi_1^j1 pi_2^j2 ...}, reduced mod ell^N. prec is the absolute precision in
// units of the top uniformizer: the stored value is correct modulo pi^prec.
class Elem {
 public:
  Elem() = default;
  Elem(RingRef r, std::vector<mpz_class> c, int prec);

  RingRef ring() const { return r_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  int prec() const { return prec_; }

  bool is_zero() const;
  int val() const;            // PrecisionExhausted when zero at precision
  int val_lower_bound() const;  // min(raw valuation, prec)
  bool is_unit() const { return val_lower_bound() == 0; }

  Elem operator+(const Elem& o) const;
  Elem operator-(const Elem& o) const;
  Elem operator*(const Elem& o) const;
  Elem operator-() const;
  Elem& operator+=(const Elem& o) { return *this = *this + o; }
  Elem& operator-=(const Elem& o) { return *this = *this - o; }
  Elem& operator*=(const Elem& o) { return *this = *this * o; }

  Elem pow(unsigned long k) const;
  Elem inv() const;                   // unit inverse
  Elem div(const Elem& d) const;      // exact division, requires v(*this) >= v(d)
  Elem div_pi(int k = 1) const;       // exact division by the internal uniformizer
  Elem conj() const;
  Elem with_prec(int p) const;

  // Congruence at the smaller of the two precisions.
  bool equals(const Elem& o) const { return (*this - o).is_zero(); }
  bool same_repr(const Elem& o) const { return r_ == o.r_ && c_ == o.c_; }

  std::string str() const;

 private:
  RingRef r_ = nullptr;
  std::vector<mpz_class> c_;
  int prec_ = 0;
};

enum class RingKind { Base, Unramified, Cyclotomic, RealCyclotomic };

class Ring {
 public:
  static RingRef base(long ell, int N = default_precision());
  // Adjoin zeta_n with ell not dividing n.
  static RingRef unramified(long ell, long n, int N = default_precision());
  // Adjoin zeta_ell to a base, unramified or real-cyclotomic ring.
  static RingRef cyclotomic(RingRef k);
  // Adjoin zeta_ell + zeta_ell^-1 to a base or unramified ring.
  static RingRef real_cyclotomic(RingRef k);
  // "Z5", "Z7/unr4", "Z5/cyc", "Z5/real", "Z5/real/cyc", ...
  static RingRef from_spec(const std::string& spec, int N = default_precision());

  const std::string& spec() const { return spec_; }
  long ell() const { return ell_; }
  int N() const { return n_; }
  const mpz_class& modulus() const { return prime_power(ell_, n_); }
  RingRef parent() const { return parent_; }
  RingKind kind() const { return kind_; }
  bool eisenstein_layer() const { return eis_; }
  int rel_degree() const { return d_; }
  int dim() const { return dim_; }
  int e() const { return e_; }
  int f() const { return f_; }
  int e_rel() const { return eis_ ? d_ : 1; }
  int cap() const { return e_ * n_; }
  long residue_size() const;
  bool is_ancestor_or_self(RingRef k) const;

  // Monic defining polynomial over the parent, coefficients c_0 .. c_{d-1}.
  const std::vector<Elem>& poly() const { return poly_; }

  Elem zero() const;
  Elem one() const;
  Elem from_int(const mpz_class& v) const;
  Elem from_int(long v) const { return from_int(mpz_class(v)); }
  Elem from_parent(const Elem& x) const;
  // Embed an element of any ancestor ring.
  Elem lift(const Elem& x) const;
  Elem generator() const;
  Elem pi() const;           // uniformizer used for digits and scaling
  Elem uniformizer() const;  // designated uniformizer (eta for cyclotomic rings)
  Elem from_coefficients(const std::vector<Elem>& cs) const;
  Elem coefficient(const Elem& x, int j) const;

  bool has_conj() const { return conj_image_.has_value(); }
  Elem conj(const Elem& x) const;

  Elem trace_to_parent(const Elem& x) const;
  Elem trace_to(const Elem& x, RingRef k) const;
  Elem norm_to_parent(const Elem& x) const;

  // Cyclotomic rings: zeta_ell, eta = zeta - zeta^-1, w = zeta + zeta^-1.
  // Real-cyclotomic rings: w only.
  std::optional<Elem> zeta() const { return zeta_; }
  std::optional<Elem> eta() const { return eta_; }
  std::optional<Elem> w() const { return w_; }
  // For cyclotomic rings: the basis zeta^0 .. zeta^{d-1} over the parent and coordinates in it.
  std::vector<Elem> zeta_basis() const;
  std::vector<Elem> zeta_coords(const Elem& x) const;

  // Residue field F_{ell^f}: digits of the reduction in the unramified basis.
  std::vector<long> residue(const Elem& x) const;
  Elem lift_residue(const std::vector<long>& digits) const;
  std::vector<long> residue_element(long index) const;  // enumerate F_q
  Elem root_of_unity(long n) const;

  // Raw kernels on flat coefficient vectors.
  std::vector<mpz_class> mul_raw(std::span<const mpz_class> a, std::span<const mpz_class> b) const;
  int val_raw(std::span<const mpz_class> a) const;
  std::vector<mpz_class> div_pi_raw(std::span<const mpz_class> a) const;

 private:
  Ring() = default;
  static RingRef intern(std::unique_ptr<Ring> r);
  void finish_layer();
  void mod_reduce(std::vector<mpz_class>& v) const;

  std::string spec_;
  long ell_ = 0;
  int n_ = 0;
  RingRef parent_ = nullptr;
  RingKind kind_ = RingKind::Base;
  bool eis_ = false;
  int d_ = 1, dim_ = 1, e_ = 1, f_ = 1;
  std::vector<Elem> poly_;
  std::vector<mpz_class> poly_flat_;
  // For Eisenstein layers: (c_0 / parent_pi)^-1 and (c_1, ..., c_{d-1}, 1).
  std::vector<mpz_class> c0_unit_inv_;
  std::vector<std::vector<mpz_class>> hvec_;
  std::optional<Elem> conj_image_;
  std::vector<Elem> conj_powers_;
  std::optional<Elem> zeta_, eta_, w_;
  std::optional<Elem> uniformizer_;

  friend class Elem;
};

// Characteristic polynomial (monic, constant term first) of an integer matrix mod m.
ZPoly charpoly_mod(const std::vector<std::vector<mpz_class>>& a, const mpz_class& m);

}  // namespace lladic
