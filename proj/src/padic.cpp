#include "lladic/padic.hpp"

#include <cstdlib>
#include <map>
#include <mutex>

namespace lladic {

int default_precision() {
  if (const char* s = std::getenv("LLADIC_PRECISION")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v < 100000) return static_cast<int>(v);
  }
  return 32;
}

const mpz_class& prime_power(long ell, int n) {
  static std::mutex mu;
  static std::map<std::pair<long, int>, mpz_class> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(ell, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(ell), static_cast<unsigned long>(n));
  return cache.emplace(key, r).first->second;
}

int ell_valuation(const mpz_class& x, long ell) {
  if (x == 0) fail(ErrorKind::PrecisionExhausted, "valuation of zero");
  mpz_class t = x, p = ell;
  return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t()));
}

PadicInt::PadicInt(long ell, const mpz_class& value, int precision) : ell_(ell), n_(precision) {
  if (ell < 2) fail(ErrorKind::BadSpec, "prime must be at least 2");
  if (precision < 1) fail(ErrorKind::BadSpec, "precision must be positive");
  mpz_fdiv_r(residue_.get_mpz_t(), value.get_mpz_t(), modulus().get_mpz_t());
}

int PadicInt::val() const {
  if (residue_ == 0) fail(ErrorKind::PrecisionExhausted, "residue is zero modulo ell^" + std::to_string(n_));
  return ell_valuation(residue_, ell_);
}

int PadicInt::val_lower_bound() const { return residue_ == 0 ? n_ : val(); }

void PadicInt::check_compatible(const PadicInt& o) const {
  if (ell_ != o.ell_ || n_ != o.n_) fail(ErrorKind::BadSpec, "mixed primes or precisions");
}

PadicInt PadicInt::operator+(const PadicInt& o) const {
  check_compatible(o);
  return PadicInt(ell_, residue_ + o.residue_, n_);
}
PadicInt PadicInt::operator-(const PadicInt& o) const {
  check_compatible(o);
  return PadicInt(ell_, residue_ - o.residue_, n_);
}
PadicInt PadicInt::operator*(const PadicInt& o) const {
  check_compatible(o);
  return PadicInt(ell_, residue_ * o.residue_, n_);
}
PadicInt PadicInt::operator-() const { return PadicInt(ell_, -residue_, n_); }
bool PadicInt::operator==(const PadicInt& o) const {
  return ell_ == o.ell_ && n_ == o.n_ && residue_ == o.residue_;
}

PadicInt invert(const PadicInt& x) {
  if (x.is_zero()) fail(ErrorKind::PrecisionExhausted, "cannot invert zero");
  if (x.val() > 0) fail(ErrorKind::NotAUnit, x.str() + " is divisible by " + std::to_string(x.prime()));
  mpz_class r;
  mpz_invert(r.get_mpz_t(), x.residue().get_mpz_t(), x.modulus().get_mpz_t());
  return PadicInt(x.prime(), r, x.precision());
}

mpz_class poly_eval_mod(const ZPoly& f, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = acc * x + *it;
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

ZPoly poly_derivative(const ZPoly& f) {
  ZPoly d;
  for (std::size_t i = 1; i < f.size(); ++i) d.push_back(f[i] * static_cast<unsigned long>(i));
  return d;
}

PadicInt hensel_root(const ZPoly& f, const PadicInt& x0) {
  const long ell = x0.prime();
  const int n = x0.precision();
  const mpz_class p = ell;
  mpz_class x;
  mpz_fdiv_r(x.get_mpz_t(), x0.residue().get_mpz_t(), p.get_mpz_t());
  if (poly_eval_mod(f, x, p) != 0) fail(ErrorKind::NoSimpleRoot, "f(x0) is not 0 mod ell");
  ZPoly df = poly_derivative(f);
  if (poly_eval_mod(df, x, p) == 0) fail(ErrorKind::NoSimpleRoot, "f'(x0) is 0 mod ell");
  const mpz_class& m = prime_power(ell, n);
  // Quadratic convergence; the loop exits once f(x) vanishes mod ell^n.
  for (int k = 1; k < 2 * n + 4; k *= 2) {
    mpz_class fx = poly_eval_mod(f, x, m);
    if (fx == 0) break;
    mpz_class dfx = poly_eval_mod(df, x, m), inv;
    mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), m.get_mpz_t());
    x -= fx * inv;
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  }
  if (poly_eval_mod(f, x, m) != 0) fail(ErrorKind::Internal, "Newton iteration did not converge");
  return PadicInt(ell, x, n);
}

}  // namespace lladic
