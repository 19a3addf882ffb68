#include "lladic/localring.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "lladic/berkowitz.hpp"

namespace lladic {

namespace {

std::mutex g_registry_mu;
std::map<std::string, std::unique_ptr<Ring>>& registry() {
  static std::map<std::string, std::unique_ptr<Ring>> r;
  return r;
}

std::string key_of(const std::string& spec, int n) { return spec + "@" + std::to_string(n); }

RingRef lookup(const std::string& spec, int n) {
  std::lock_guard<std::mutex> lock(g_registry_mu);
  auto it = registry().find(key_of(spec, n));
  return it == registry().end() ? nullptr : it->second.get();
}

mpz_class binom(long n, long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Polynomials over F_ell, constant term first.
using FPoly = std::vector<long>;

void fp_trim(FPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FPoly fp_rem(FPoly a, const FPoly& b, long ell) {
  fp_trim(a);
  long lead = b.back();
  long inv = 1;
  for (long t = 1; t < ell; ++t)
    if ((lead * t) % ell == 1) inv = t;
  while (a.size() >= b.size()) {
    long c = (a.back() * inv) % ell;
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % ell + ell) % ell;
    fp_trim(a);
  }
  return a;
}

FPoly monic_from_index(long idx, int deg, long ell) {
  FPoly p(deg + 1, 0);
  p[deg] = 1;
  for (int i = 0; i < deg; ++i) {
    p[i] = idx % ell;
    idx /= ell;
  }
  return p;
}

long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool fp_irreducible(const FPoly& h, long ell) {
  int deg = static_cast<int>(h.size()) - 1;
  for (int k = 1; 2 * k <= deg; ++k)
    for (long idx = 0; idx < ipow(ell, k); ++idx)
      if (fp_rem(h, monic_from_index(idx, k, ell), ell).empty()) return false;
  return true;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

int mult_order(long ell, long n) {
  if (n == 1) return 1;
  long x = ell % n;
  int k = 1;
  while (x != 1 % n) {
    x = (x * ell) % n;
    ++k;
  }
  return k;
}

}  // namespace

// ---------------------------------------------------------------- Elem

Elem::Elem(RingRef r, std::vector<mpz_class> c, int prec) : r_(r), c_(std::move(c)), prec_(prec) {
  if (prec_ > r_->cap()) prec_ = r_->cap();
}

bool Elem::is_zero() const { return r_->val_raw(c_) >= prec_; }

int Elem::val() const {
  int v = r_->val_raw(c_);
  if (v >= prec_) fail(ErrorKind::PrecisionExhausted, "element is zero at precision " + std::to_string(prec_));
  return v;
}

int Elem::val_lower_bound() const { return std::min(r_->val_raw(c_), prec_); }

Elem Elem::operator+(const Elem& o) const {
  if (r_ != o.r_) fail(ErrorKind::BadSpec, "adding elements of different rings");
  std::vector<mpz_class> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] + o.c_[i];
  r_->mod_reduce(c);
  return Elem(r_, std::move(c), std::min(prec_, o.prec_));
}

Elem Elem::operator-(const Elem& o) const {
  if (r_ != o.r_) fail(ErrorKind::BadSpec, "subtracting elements of different rings");
  std::vector<mpz_class> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = c_[i] - o.c_[i];
  r_->mod_reduce(c);
  return Elem(r_, std::move(c), std::min(prec_, o.prec_));
}

Elem Elem::operator-() const {
  std::vector<mpz_class> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
  r_->mod_reduce(c);
  return Elem(r_, std::move(c), prec_);
}

Elem Elem::operator*(const Elem& o) const {
  if (r_ != o.r_) fail(ErrorKind::BadSpec, "multiplying elements of different rings");
  int va = val_lower_bound(), vb = o.val_lower_bound();
  int p = std::min(prec_ + vb, o.prec_ + va);
  return Elem(r_, r_->mul_raw(c_, o.c_), std::min(p, r_->cap()));
}

Elem Elem::pow(unsigned long k) const {
  Elem result = r_->one(), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Elem Elem::with_prec(int p) const { return Elem(r_, c_, std::min(p, prec_)); }

Elem Elem::div_pi(int k) const {
  Elem x = *this;
  for (int i = 0; i < k; ++i) {
    if (x.prec_ < 1) fail(ErrorKind::PrecisionExhausted, "division by pi exhausted precision");
    if (r_->val_raw(x.c_) < 1) fail(ErrorKind::PreconditionFailed, "element not divisible by pi");
    x = Elem(r_, r_->div_pi_raw(x.c_), x.prec_ - 1);
  }
  return x;
}

Elem Elem::inv() const {
  if (is_zero()) fail(ErrorKind::PrecisionExhausted, "cannot invert zero");
  if (val() > 0) fail(ErrorKind::NotAUnit, "element has positive valuation");
  Elem r = r_->lift_residue(r_->residue(*this));
  std::vector<mpz_class> y = r.pow(static_cast<unsigned long>(r_->residue_size() - 2)).c_;
  const std::vector<mpz_class> one = r_->one().c_;
  for (int it = 0; it < 64; ++it) {
    std::vector<mpz_class> xy = r_->mul_raw(c_, y);
    std::vector<mpz_class> err(xy.size());
    bool zero = true;
    for (std::size_t i = 0; i < xy.size(); ++i) {
      err[i] = one[i] - xy[i];
      if (err[i] % r_->modulus() != 0) zero = false;
    }
    if (zero) return Elem(r_, y, prec_);
    r_->mod_reduce(err);
    std::vector<mpz_class> corr = r_->mul_raw(y, err);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += corr[i];
    r_->mod_reduce(y);
  }
  fail(ErrorKind::Internal, "unit inversion did not converge");
}

Elem Elem::div(const Elem& d) const {
  int v = d.val();
  Elem u = d.div_pi(v);
  return div_pi(v) * u.inv();
}

Elem Elem::conj() const { return r_->conj(*this); }

std::string Elem::str() const {
  std::ostringstream os;
  if (c_.size() == 1) {
    os << c_[0].get_str();
  } else {
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
    os << "]";
  }
  return os.str();
}

// ---------------------------------------------------------------- Ring

void Ring::mod_reduce(std::vector<mpz_class>& v) const {
  const mpz_class& m = modulus();
  for (auto& x : v) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
}

std::vector<mpz_class> Ring::mul_raw(std::span<const mpz_class> a, std::span<const mpz_class> b) const {
  if (!parent_) {
    mpz_class r = a[0] * b[0];
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus().get_mpz_t());
    return {r};
  }
  const int pd = parent_->dim_;
  const int d = d_;
  std::vector<mpz_class> tmp(static_cast<std::size_t>((2 * d - 1) * pd));
  for (int i = 0; i < d; ++i) {
    auto ai = a.subspan(i * pd, pd);
    if (parent_->val_raw(ai) >= kInfVal) continue;
    for (int j = 0; j < d; ++j) {
      auto pr = parent_->mul_raw(ai, b.subspan(j * pd, pd));
      for (int k = 0; k < pd; ++k) tmp[(i + j) * pd + k] += pr[k];
    }
  }
  mod_reduce(tmp);
  for (int k = 2 * d - 2; k >= d; --k) {
    std::span<const mpz_class> t(tmp.data() + k * pd, pd);
    if (parent_->val_raw(t) >= kInfVal) continue;
    std::vector<mpz_class> tv(t.begin(), t.end());
    for (int i = 0; i < d; ++i) {
      auto pr = parent_->mul_raw(tv, std::span<const mpz_class>(poly_flat_.data() + i * pd, pd));
      for (int m = 0; m < pd; ++m) {
        mpz_class& dst = tmp[(k - d + i) * pd + m];
        dst -= pr[m];
        mpz_fdiv_r(dst.get_mpz_t(), dst.get_mpz_t(), modulus().get_mpz_t());
      }
    }
  }
  tmp.resize(static_cast<std::size_t>(d * pd));
  return tmp;
}

int Ring::val_raw(std::span<const mpz_class> a) const {
  if (!parent_) return a[0] == 0 ? kInfVal : ell_valuation(a[0], ell_);
  const int pd = parent_->dim_;
  int best = kInfVal;
  for (int j = 0; j < d_; ++j) {
    int v = parent_->val_raw(a.subspan(j * pd, pd));
    if (v >= kInfVal) continue;
    best = std::min(best, eis_ ? v * d_ + j : v);
  }
  return best;
}

std::vector<mpz_class> Ring::div_pi_raw(std::span<const mpz_class> a) const {
  if (!eis_) {
    std::vector<mpz_class> r(a.begin(), a.end());
    mpz_class p = ell_;
    for (auto& x : r) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  const int pd = parent_->dim_;
  auto a0 = parent_->div_pi_raw(a.subspan(0, pd));
  auto q = parent_->mul_raw(a0, c0_unit_inv_);
  std::vector<mpz_class> r(static_cast<std::size_t>(d_ * pd));
  for (int j = 0; j < d_; ++j) {
    auto qh = parent_->mul_raw(q, hvec_[j]);
    for (int k = 0; k < pd; ++k) {
      mpz_class v = (j + 1 < d_ ? a[(j + 1) * pd + k] : mpz_class(0)) - qh[k];
      r[j * pd + k] = v;
    }
  }
  mod_reduce(r);
  return r;
}

long Ring::residue_size() const { return ipow(ell_, f_); }

bool Ring::is_ancestor_or_self(RingRef k) const {
  for (RingRef r = this; r; r = r->parent_)
    if (r == k) return true;
  return false;
}

Elem Ring::zero() const { return Elem(this, std::vector<mpz_class>(dim_), cap()); }

Elem Ring::one() const { return from_int(1); }

Elem Ring::from_int(const mpz_class& v) const {
  std::vector<mpz_class> c(dim_);
  c[0] = v;
  mod_reduce(c);
  return Elem(this, std::move(c), cap());
}

Elem Ring::from_parent(const Elem& x) const {
  if (x.ring() != parent_) fail(ErrorKind::BadSpec, "element is not from the parent ring");
  std::vector<mpz_class> c(dim_);
  for (std::size_t i = 0; i < x.coeffs().size(); ++i) c[i] = x.coeffs()[i];
  int p = x.prec() >= parent_->cap() ? cap() : x.prec() * e_rel();
  return Elem(this, std::move(c), p);
}

Elem Ring::lift(const Elem& x) const {
  if (x.ring() == this) return x;
  if (!parent_) fail(ErrorKind::BadSpec, "element is not from a subring");
  return from_parent(parent_->lift(x));
}

Elem Ring::generator() const {
  if (!parent_) return from_int(ell_);
  std::vector<mpz_class> c(dim_);
  if (d_ > 1) {
    c[parent_->dim_] = 1;
    return Elem(this, std::move(c), cap());
  }
  // degree-one layer: the generator is the root of x + c_0
  return from_parent(-poly_[0]);
}

Elem Ring::pi() const { return eis_ ? generator() : from_int(ell_); }

Elem Ring::uniformizer() const { return uniformizer_ ? *uniformizer_ : pi(); }

Elem Ring::from_coefficients(const std::vector<Elem>& cs) const {
  if (!parent_ || static_cast<int>(cs.size()) != d_) fail(ErrorKind::BadSpec, "wrong number of coefficients");
  const int pd = parent_->dim_;
  std::vector<mpz_class> c(dim_);
  int p = cap();
  for (int j = 0; j < d_; ++j) {
    if (cs[j].ring() != parent_) fail(ErrorKind::BadSpec, "coefficient from the wrong ring");
    for (int k = 0; k < pd; ++k) c[j * pd + k] = cs[j].coeffs()[k];
    if (cs[j].prec() < parent_->cap()) p = std::min(p, eis_ ? cs[j].prec() * d_ + j : cs[j].prec());
  }
  return Elem(this, std::move(c), p);
}

Elem Ring::coefficient(const Elem& x, int j) const {
  const int pd = parent_->dim_;
  std::vector<mpz_class> c(x.coeffs().begin() + j * pd, x.coeffs().begin() + (j + 1) * pd);
  int p = x.prec() >= cap() ? parent_->cap() : x.prec() / e_rel();
  return Elem(parent_, std::move(c), p);
}

Elem Ring::conj(const Elem& x) const {
  if (!conj_image_) fail(ErrorKind::NoConjugation, spec_ + " has no conjugation");
  const int pd = parent_->dim_;
  std::vector<mpz_class> acc(dim_);
  for (int j = 0; j < d_; ++j) {
    std::vector<mpz_class> cj(dim_);
    for (int k = 0; k < pd; ++k) cj[k] = x.coeffs()[j * pd + k];
    auto t = mul_raw(cj, conj_powers_[j].coeffs());
    for (int i = 0; i < dim_; ++i) acc[i] += t[i];
  }
  mod_reduce(acc);
  return Elem(this, std::move(acc), x.prec());
}

Elem Ring::trace_to_parent(const Elem& x) const {
  Elem acc = parent_->zero();
  Elem y = x;
  Elem g = generator();
  for (int j = 0; j < d_; ++j) {
    acc += coefficient(y, j);
    if (j + 1 < d_) y = y * g;
  }
  return acc;
}

Elem Ring::trace_to(const Elem& x, RingRef k) const {
  Elem y = x;
  while (y.ring() != k) {
    if (!y.ring()->parent_) fail(ErrorKind::BadSpec, "trace target is not a subring");
    y = y.ring()->trace_to_parent(y);
  }
  return y;
}

Elem Ring::norm_to_parent(const Elem& x) const {
  std::vector<std::vector<Elem>> m(d_, std::vector<Elem>(d_));
  Elem y = x;
  Elem g = generator();
  for (int j = 0; j < d_; ++j) {
    for (int i = 0; i < d_; ++i) m[i][j] = coefficient(y, i);
    if (j + 1 < d_) y = y * g;
  }
  auto cp = berkowitz(m, parent_->zero(), parent_->one());
  return d_ % 2 ? -cp[0] : cp[0];
}

std::vector<Elem> Ring::zeta_basis() const {
  if (kind_ != RingKind::Cyclotomic) fail(ErrorKind::BadSpec, "zeta basis needs a cyclotomic ring");
  std::vector<Elem> b;
  Elem z = one();
  for (int i = 0; i < d_; ++i) {
    b.push_back(z);
    z = z * *zeta_;
  }
  return b;
}

std::vector<Elem> Ring::zeta_coords(const Elem& x) const {
  if (kind_ != RingKind::Cyclotomic) fail(ErrorKind::BadSpec, "zeta coordinates need a cyclotomic ring");
  std::vector<Elem> a;
  for (int j = 0; j < d_; ++j) a.push_back(coefficient(x, j));
  if (parent_->kind_ == RingKind::RealCyclotomic) {
    // x = a0 + a1 eta and eta = 2 zeta - w
    Elem wk = *parent_->w_;
    return {a[0] - a[1] * wk, a[1] + a[1]};
  }
  // x = sum a_k lambda^k with zeta^i = sum_k C(i,k) lambda^k
  std::vector<Elem> b(d_);
  for (int k = d_ - 1; k >= 0; --k) {
    Elem s = a[k];
    for (int i = k + 1; i < d_; ++i) s -= parent_->from_int(binom(i, k)) * b[i];
    b[k] = s;
  }
  return b;
}

std::vector<long> Ring::residue(const Elem& x) const {
  if (x.prec() < 1) fail(ErrorKind::PrecisionExhausted, "residue needs precision at least 1");
  if (eis_) return parent_->residue(coefficient(x, 0));
  std::vector<long> r;
  mpz_class t;
  for (const auto& c : x.coeffs()) {
    mpz_fdiv_r_ui(t.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(ell_));
    r.push_back(t.get_si());
  }
  return r;
}

Elem Ring::lift_residue(const std::vector<long>& digits) const {
  if (eis_) return from_parent(parent_->lift_residue(digits));
  std::vector<mpz_class> c(dim_);
  for (int i = 0; i < dim_; ++i) c[i] = digits.at(i);
  return Elem(this, std::move(c), cap());
}

std::vector<long> Ring::residue_element(long index) const {
  std::vector<long> d(f_);
  for (int i = 0; i < f_; ++i) {
    d[i] = index % ell_;
    index /= ell_;
  }
  return d;
}

Elem Ring::root_of_unity(long n) const {
  const long q = residue_size();
  if ((q - 1) % n != 0) fail(ErrorKind::BadParameters, "no primitive " + std::to_string(n) + "-th root of unity in " + spec_);
  const auto one_res = residue(one());
  auto ps = prime_factors(n);
  for (long idx = 1; idx < q; ++idx) {
    Elem r = lift_residue(residue_element(idx));
    if (residue(r.pow(n)) != one_res) continue;
    bool primitive = true;
    for (long p : ps)
      if (residue(r.pow(n / p)) == one_res) primitive = false;
    if (!primitive) continue;
    Elem z = r;
    Elem nn = from_int(n);
    for (int it = 0; it < 64; ++it) {
      Elem fz = z.pow(n) - one();
      if (val_raw(fz.coeffs()) >= kInfVal) return Elem(this, z.coeffs(), cap());
      z = z - fz * (nn * z.pow(n - 1)).inv();
    }
    fail(ErrorKind::Internal, "root of unity lift did not converge");
  }
  fail(ErrorKind::BadParameters, "no primitive root of unity found");
}

// ---------------------------------------------------------------- construction

RingRef Ring::intern(std::unique_ptr<Ring> r) {
  std::lock_guard<std::mutex> lock(g_registry_mu);
  auto key = key_of(r->spec_, r->n_);
  auto it = registry().find(key);
  if (it != registry().end()) return it->second.get();
  RingRef p = r.get();
  registry().emplace(key, std::move(r));
  return p;
}

void Ring::finish_layer() {
  const int pd = parent_->dim_;
  dim_ = d_ * pd;
  e_ = eis_ ? parent_->e_ * d_ : parent_->e_;
  f_ = eis_ ? parent_->f_ : parent_->f_ * d_;
  poly_flat_.assign(static_cast<std::size_t>(dim_), 0);
  for (int j = 0; j < d_; ++j)
    for (int k = 0; k < pd; ++k) poly_flat_[j * pd + k] = poly_[j].coeffs()[k];
  if (eis_) {
    if (poly_[0].val() != 1) fail(ErrorKind::BadSpec, "constant term of Eisenstein polynomial must have valuation 1");
    for (int j = 1; j < d_; ++j)
      if (poly_[j].val_lower_bound() < 1) fail(ErrorKind::BadSpec, "Eisenstein coefficient is a unit");
    c0_unit_inv_ = poly_[0].div_pi().inv().coeffs();
    hvec_.clear();
    for (int j = 0; j < d_; ++j) hvec_.push_back(j + 1 < d_ ? poly_[j + 1].coeffs() : parent_->one().coeffs());
  }
}

RingRef Ring::base(long ell, int N) {
  std::string spec = "Z" + std::to_string(ell);
  if (auto r = lookup(spec, N)) return r;
  if (ell < 2 || prime_factors(ell).size() != 1 || prime_factors(ell)[0] != ell)
    fail(ErrorKind::BadSpec, std::to_string(ell) + " is not prime");
  auto r = std::unique_ptr<Ring>(new Ring());
  r->spec_ = spec;
  r->ell_ = ell;
  r->n_ = N;
  return intern(std::move(r));
}

RingRef Ring::unramified(long ell, long n, int N) {
  std::string spec = "Z" + std::to_string(ell) + "/unr" + std::to_string(n);
  if (auto r = lookup(spec, N)) return r;
  RingRef b = base(ell, N);
  if (n < 1 || n % ell == 0) fail(ErrorKind::BadSpec, "unramified(ell, n) needs ell not dividing n");
  const int f = mult_order(ell, n);
  auto r = std::unique_ptr<Ring>(new Ring());
  r->spec_ = spec;
  r->ell_ = ell;
  r->n_ = N;
  r->parent_ = b;
  r->kind_ = RingKind::Unramified;
  r->d_ = f;
  if (f == 1) {
    mpz_class zeta = b->root_of_unity(n).coeffs()[0];
    r->poly_ = {b->from_int(-zeta)};
  } else {
    // Any irreducible lift gives the unramified extension; inside it, lift a
    // primitive n-th root of unity and take its minimal polynomial.
    FPoly hbar;
    for (long idx = 0; idx < ipow(ell, f); ++idx) {
      FPoly cand = monic_from_index(idx, f, ell);
      if (fp_irreducible(cand, ell)) {
        hbar = cand;
        break;
      }
    }
    auto aux = std::unique_ptr<Ring>(new Ring());
    aux->spec_ = spec + "#aux";
    aux->ell_ = ell;
    aux->n_ = N;
    aux->parent_ = b;
    aux->kind_ = RingKind::Unramified;
    aux->d_ = f;
    for (int i = 0; i < f; ++i) aux->poly_.push_back(b->from_int(hbar[i]));
    aux->finish_layer();
    Elem z = aux->root_of_unity(n);
    std::vector<std::vector<mpz_class>> m(f, std::vector<mpz_class>(f));
    Elem col = z;
    Elem u = aux->generator();
    for (int j = 0; j < f; ++j) {
      for (int i = 0; i < f; ++i) m[i][j] = col.coeffs()[i];
      col = col * u;
    }
    ZPoly h = charpoly_mod(m, b->modulus());
    FPoly hb;
    for (const auto& c : h) hb.push_back(mpz_class(c % ell).get_si());
    if (!fp_irreducible(hb, ell)) fail(ErrorKind::BadSpec, "minimal polynomial of zeta_n is reducible mod ell");
    for (int i = 0; i < f; ++i) r->poly_.push_back(b->from_int(h[i]));
  }
  r->finish_layer();
  if (f == 2) {
    r->conj_image_ = r->generator().pow(static_cast<unsigned long>(ell));
    r->conj_powers_ = {r->one(), *r->conj_image_};
  }
  return intern(std::move(r));
}

RingRef Ring::real_cyclotomic(RingRef k) {
  if (k->kind_ != RingKind::Base && k->kind_ != RingKind::Unramified)
    fail(ErrorKind::BadSpec, "real cyclotomic layer needs an unramified base");
  const long ell = k->ell_;
  if (ell == 2) fail(ErrorKind::BadSpec, "real cyclotomic layer needs odd ell");
  std::string spec = k->spec_ + "/real";
  if (auto r = lookup(spec, k->n_)) return r;
  const long h = (ell - 1) / 2;
  // psi(w) = 1 + sum_{k=1}^{h} C_k(w), C_{k+1} = w C_k - C_{k-1}, C_0 = 2, C_1 = w.
  std::vector<ZPoly> c{ZPoly{2}, ZPoly{0, 1}};
  for (long j = 2; j <= h; ++j) {
    ZPoly next(j + 1, 0);
    for (std::size_t i = 0; i < c[j - 1].size(); ++i) next[i + 1] += c[j - 1][i];
    for (std::size_t i = 0; i < c[j - 2].size(); ++i) next[i] -= c[j - 2][i];
    c.push_back(next);
  }
  ZPoly psi(h + 1, 0);
  psi[0] = 1;
  for (long j = 1; j <= h; ++j)
    for (std::size_t i = 0; i < c[j].size(); ++i) psi[i] += c[j][i];
  // theta = 2 - w: P(theta) = psi(2 - theta), made monic.
  ZPoly p(h + 1, 0), powt{1};
  for (long i = 0; i <= h; ++i) {
    for (std::size_t t = 0; t < powt.size(); ++t) p[t] += psi[i] * powt[t];
    ZPoly nxt(powt.size() + 1, 0);
    for (std::size_t t = 0; t < powt.size(); ++t) {
      nxt[t] += 2 * powt[t];
      nxt[t + 1] -= powt[t];
    }
    powt = nxt;
  }
  if (h % 2)
    for (auto& x : p) x = -x;
  auto r = std::unique_ptr<Ring>(new Ring());
  r->spec_ = spec;
  r->ell_ = ell;
  r->n_ = k->n_;
  r->parent_ = k;
  r->kind_ = RingKind::RealCyclotomic;
  r->eis_ = true;
  r->d_ = static_cast<int>(h);
  for (long i = 0; i < h; ++i) r->poly_.push_back(k->from_int(p[i]));
  r->finish_layer();
  r->w_ = r->from_int(2) - r->generator();
  r->uniformizer_ = r->generator();
  return intern(std::move(r));
}

RingRef Ring::cyclotomic(RingRef k) {
  const long ell = k->ell_;
  if (ell == 2) fail(ErrorKind::BadSpec, "cyclotomic layer needs odd ell");
  std::string spec = k->spec_ + "/cyc";
  if (auto r = lookup(spec, k->n_)) return r;
  auto r = std::unique_ptr<Ring>(new Ring());
  r->spec_ = spec;
  r->ell_ = ell;
  r->n_ = k->n_;
  r->parent_ = k;
  r->kind_ = RingKind::Cyclotomic;
  r->eis_ = true;
  bool over_real = k->kind_ == RingKind::RealCyclotomic;
  if (k->kind_ == RingKind::Base || k->kind_ == RingKind::Unramified) {
    // generator lambda = zeta - 1, minimal polynomial Phi_ell(x + 1)
    r->d_ = static_cast<int>(ell - 1);
    for (long j = 0; j < ell - 1; ++j) r->poly_.push_back(k->from_int(binom(ell, j + 1)));
  } else if (over_real) {
    // generator eta, eta^2 = w^2 - 4
    Elem wk = *k->w_;
    r->d_ = 2;
    r->poly_ = {k->from_int(4) - wk * wk, k->zero()};
  } else {
    fail(ErrorKind::BadSpec, "cannot adjoin zeta_ell to " + k->spec_);
  }
  r->finish_layer();
  Ring* m = r.get();
  RingRef out = m;
  {
    Elem g = out->generator();
    Elem zeta, zinv;
    if (over_real) {
      Elem wk = out->from_parent(*k->w_);
      zeta = (wk + g) * out->from_int(2).inv();
      zinv = (wk - g) * out->from_int(2).inv();
      m->conj_image_ = -g;
    } else {
      zeta = out->one() + g;
      zinv = zeta.pow(static_cast<unsigned long>(ell - 1));
      m->conj_image_ = zinv - out->one();
    }
    m->conj_powers_.clear();
    Elem p = out->one();
    for (int j = 0; j < m->d_; ++j) {
      m->conj_powers_.push_back(p);
      p = p * *m->conj_image_;
    }
    m->zeta_ = zeta;
    m->eta_ = zeta - zinv;
    m->w_ = zeta + zinv;
    m->uniformizer_ = zeta - zinv;
  }
  return intern(std::move(r));
}

RingRef Ring::from_spec(const std::string& spec, int N) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, '/')) parts.push_back(item);
  if (parts.empty() || parts[0].size() < 2 || parts[0][0] != 'Z') fail(ErrorKind::BadSpec, "bad ring spec '" + spec + "'");
  long ell = 0;
  try {
    ell = std::stol(parts[0].substr(1));
  } catch (...) {
    fail(ErrorKind::BadSpec, "bad prime in ring spec '" + spec + "'");
  }
  RingRef r = base(ell, N);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& p = parts[i];
    if (p.rfind("unr", 0) == 0 && p.size() > 3) {
      if (r->kind_ != RingKind::Base) fail(ErrorKind::BadSpec, "unramified layer must sit on Z_ell");
      r = unramified(ell, std::stol(p.substr(3)), N);
    } else if (p == "cyc") {
      r = cyclotomic(r);
    } else if (p == "real") {
      r = real_cyclotomic(r);
    } else {
      fail(ErrorKind::BadSpec, "unknown ring layer '" + p + "'");
    }
  }
  return r;
}

ZPoly charpoly_mod(const std::vector<std::vector<mpz_class>>& a, const mpz_class& m) {
  auto cp = berkowitz(a, mpz_class(0), mpz_class(1));
  for (auto& c : cp) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return cp;
}

}  // namespace lladic
