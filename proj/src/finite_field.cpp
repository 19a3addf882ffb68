#include "lladic/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "lladic/berkowitz.hpp"
#include "lladic/matrix.hpp"

namespace lladic {

Fq::Fq(long ell, std::vector<long> h) : ell_(ell), h_(std::move(h)) {
  f_ = static_cast<int>(h_.size()) - 1;
  if (f_ < 1) fail(ErrorKind::BadSpec, "field polynomial must have positive degree");
  q_ = 1;
  for (int i = 0; i < f_; ++i) q_ *= ell_;
  if (q_ > 4000000) fail(ErrorKind::TooLarge, "residue field too large for table arithmetic");
  log_.assign(q_, -1);
  exp_.assign(q_ - 1 > 0 ? q_ - 1 : 1, 1);
  if (q_ == 2) {
    exp_[0] = 1;
    log_[1] = 0;
    return;
  }
  for (long g = 2; g < q_ + 1; ++g) {
    long cand = g % q_;
    if (cand == 0) continue;
    long x = 1, ord = 0;
    do {
      x = mul_poly(x, cand);
      ++ord;
    } while (x != 1 && ord < q_);
    if (ord != q_ - 1) continue;
    x = 1;
    for (long k = 0; k < q_ - 1; ++k) {
      exp_[k] = x;
      log_[x] = k;
      x = mul_poly(x, cand);
    }
    return;
  }
  fail(ErrorKind::BadSpec, "field polynomial is not irreducible");
}

const Fq& Fq::prime(long ell) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<Fq>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[ell];
  if (!slot) slot = std::make_unique<Fq>(ell, std::vector<long>{0, 1});
  return *slot;
}

const Fq& Fq::residue_field(RingRef r) {
  RingRef u = nullptr;
  for (RingRef t = r; t; t = t->parent())
    if (t->kind() == RingKind::Unramified) u = t;
  if (!u || u->rel_degree() == 1) return prime(r->ell());
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<Fq>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[u->spec() + "@" + std::to_string(u->N())];
  if (!slot) {
    std::vector<long> h;
    for (const auto& c : u->poly()) h.push_back(mpz_class(c.coeffs()[0] % u->ell()).get_si());
    h.push_back(1);
    slot = std::make_unique<Fq>(u->ell(), h);
  }
  return *slot;
}

std::vector<long> Fq::decode(long a) const {
  std::vector<long> d(f_);
  for (int i = 0; i < f_; ++i) {
    d[i] = a % ell_;
    a /= ell_;
  }
  return d;
}

long Fq::encode(const std::vector<long>& digits) const {
  long a = 0;
  for (int i = f_ - 1; i >= 0; --i) a = a * ell_ + ((digits[i] % ell_) + ell_) % ell_;
  return a;
}

long Fq::mul_poly(long a, long b) const {
  auto x = decode(a), y = decode(b);
  std::vector<long> p(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i)
    for (int j = 0; j < f_; ++j) p[i + j] = (p[i + j] + x[i] * y[j]) % ell_;
  for (int k = 2 * f_ - 2; k >= f_; --k) {
    long c = p[k];
    if (!c) continue;
    for (int i = 0; i <= f_; ++i) p[k - f_ + i] = ((p[k - f_ + i] - c * h_[i]) % ell_ + ell_) % ell_;
  }
  p.resize(f_);
  return encode(p);
}

long Fq::add(long a, long b) const {
  if (f_ == 1) return (a + b) % ell_;
  auto x = decode(a), y = decode(b);
  for (int i = 0; i < f_; ++i) x[i] = (x[i] + y[i]) % ell_;
  return encode(x);
}

long Fq::sub(long a, long b) const {
  if (f_ == 1) return ((a - b) % ell_ + ell_) % ell_;
  auto x = decode(a), y = decode(b);
  for (int i = 0; i < f_; ++i) x[i] = ((x[i] - y[i]) % ell_ + ell_) % ell_;
  return encode(x);
}

long Fq::mul(long a, long b) const {
  if (a == 0 || b == 0) return 0;
  if (f_ == 1) return (a * b) % ell_;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

long Fq::inv(long a) const {
  if (a == 0) fail(ErrorKind::NotAUnit, "inverse of zero in finite field");
  if (q_ == 2) return 1;
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

long Fq::pow(long a, long k) const {
  long r = 1;
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

long Fq::from_int(long v) const { return ((v % ell_) + ell_) % ell_; }

long Fq::reduce(const Elem& x) const { return encode(x.ring()->residue(x)); }

// ---------------------------------------------------------------- FMat

FMat FMat::identity(const Fq* F, int n) {
  FMat m(F, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FMat FMat::reduce(const Fq* F, const Mat& m) {
  FMat r(F, m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = F->reduce(m(i, j));
  return r;
}

FMat FMat::operator*(const FMat& o) const {
  FMat m(F_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      long x = (*this)(i, k);
      if (!x) continue;
      for (int j = 0; j < o.cols_; ++j) m(i, j) = F_->add(m(i, j), F_->mul(x, o(k, j)));
    }
  return m;
}

FMat FMat::operator+(const FMat& o) const {
  FMat m(F_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = F_->add(a_[i], o.a_[i]);
  return m;
}

FMat FMat::operator-(const FMat& o) const {
  FMat m(F_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = F_->sub(a_[i], o.a_[i]);
  return m;
}

FMat FMat::transpose() const {
  FMat m(F_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

FMat FMat::frobenius() const {
  FMat m = *this;
  for (auto& x : m.a_) x = F_->frobenius(x);
  return m;
}

FMat FMat::block(int i0, int j0, int nr, int nc) const {
  FMat m(F_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
  return m;
}

namespace {

// Row echelon form in place; returns pivot columns.
std::vector<int> echelon(FMat& m) {
  const Fq* F = m.field();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m(i, c)) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    long inv = F->inv(m(r, c));
    for (int j = 0; j < m.cols(); ++j) m(r, j) = F->mul(m(r, j), inv);
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || !m(i, c)) continue;
      long f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) = F->sub(m(i, j), F->mul(f, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

struct FqElt {
  const Fq* F;
  long v;
  FqElt operator+(const FqElt& o) const { return {F, F->add(v, o.v)}; }
  FqElt operator-(const FqElt& o) const { return {F, F->sub(v, o.v)}; }
  FqElt operator*(const FqElt& o) const { return {F, F->mul(v, o.v)}; }
};

}  // namespace

int FMat::rank() const {
  FMat m = *this;
  return static_cast<int>(echelon(m).size());
}

long FMat::det() const {
  if (rows_ != cols_) fail(ErrorKind::Internal, "determinant of a non-square matrix");
  FMat m = *this;
  long d = 1;
  for (int c = 0; c < cols_; ++c) {
    int p = -1;
    for (int i = c; i < rows_; ++i)
      if (m(i, c)) {
        p = i;
        break;
      }
    if (p < 0) return 0;
    if (p != c) {
      for (int j = 0; j < cols_; ++j) std::swap(m(c, j), m(p, j));
      d = F_->neg(d);
    }
    d = F_->mul(d, m(c, c));
    long inv = F_->inv(m(c, c));
    for (int i = c + 1; i < rows_; ++i) {
      if (!m(i, c)) continue;
      long f = F_->mul(m(i, c), inv);
      for (int j = c; j < cols_; ++j) m(i, j) = F_->sub(m(i, j), F_->mul(f, m(c, j)));
    }
  }
  return d;
}

FMat FMat::kernel() const {
  FMat m = *this;
  auto pivots = echelon(m);
  std::vector<int> is_pivot(cols_, -1);
  for (std::size_t k = 0; k < pivots.size(); ++k) is_pivot[pivots[k]] = static_cast<int>(k);
  std::vector<int> free;
  for (int c = 0; c < cols_; ++c)
    if (is_pivot[c] < 0) free.push_back(c);
  FMat ker(F_, cols_, static_cast<int>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    int fc = free[k];
    ker(fc, static_cast<int>(k)) = 1;
    for (std::size_t p = 0; p < pivots.size(); ++p) ker(pivots[p], static_cast<int>(k)) = F_->neg(m(static_cast<int>(p), fc));
  }
  return ker;
}

std::vector<long> FMat::charpoly() const {
  std::vector<std::vector<FqElt>> rows(rows_, std::vector<FqElt>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) rows[i][j] = {F_, (*this)(i, j)};
  auto cp = berkowitz(rows, FqElt{F_, 0}, FqElt{F_, 1});
  std::vector<long> out;
  for (auto& c : cp) out.push_back(c.v);
  return out;
}

bool FMat::is_identity() const { return rows_ == cols_ && *this == identity(F_, rows_); }

std::vector<std::vector<long>> FMat::to_rows() const {
  std::vector<std::vector<long>> r(rows_, std::vector<long>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

}  // namespace lladic
