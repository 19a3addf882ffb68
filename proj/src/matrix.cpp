#include "lladic/matrix.hpp"

#include <sstream>

#include "lladic/berkowitz.hpp"

namespace lladic {

Mat::Mat(RingRef r, int rows, int cols) : r_(r), rows_(rows), cols_(cols) {
  a_.assign(static_cast<std::size_t>(rows) * cols, r->zero());
}

Mat Mat::identity(RingRef r, int n) {
  Mat m(r, n, n);
  for (int i = 0; i < n; ++i) m(i, i) = r->one();
  return m;
}

Mat Mat::from_ints(RingRef r, const std::vector<std::vector<long>>& rows) {
  Mat m(r, static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) = r->from_int(rows[i][j]);
  return m;
}

Mat Mat::operator+(const Mat& o) const {
  Mat m(r_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] + o.a_[i];
  return m;
}

Mat Mat::operator-(const Mat& o) const {
  Mat m(r_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] - o.a_[i];
  return m;
}

Mat Mat::operator-() const {
  Mat m(r_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = -a_[i];
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols_ != o.rows_) fail(ErrorKind::Internal, "matrix shape mismatch");
  Mat m(r_, rows_, o.cols_);
#pragma omp parallel for schedule(dynamic) if (rows_ * o.cols_ * cols_ > 512)
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < o.cols_; ++j) {
      Elem s = r_->zero();
      for (int k = 0; k < cols_; ++k) {
        const Elem& x = (*this)(i, k);
        if (x.is_zero() && x.prec() >= r_->cap()) continue;
        s += x * o(k, j);
      }
      m(i, j) = s;
    }
  return m;
}

Mat mul_serial(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) fail(ErrorKind::Internal, "matrix shape mismatch");
  Mat m(a.ring(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Elem s = a.ring()->zero();
      for (int k = 0; k < a.cols(); ++k) {
        const Elem& x = a(i, k);
        if (x.is_zero() && x.prec() >= a.ring()->cap()) continue;
        s += x * b(k, j);
      }
      m(i, j) = s;
    }
  return m;
}

Mat mat_pow(const Mat& a, unsigned long k) {
  Mat r = Mat::identity(a.ring(), a.rows()), b = a;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

Mat Mat::scaled(const Elem& s) const {
  Mat m(r_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = a_[i] * s;
  return m;
}

Mat Mat::transpose() const {
  Mat m(r_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

Mat Mat::conj() const {
  return map([](const Elem& x) { return x.conj(); });
}

Mat Mat::map(const std::function<Elem(const Elem&)>& fn) const {
  Mat m(r_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = fn(a_[i]);
  return m;
}

Mat Mat::col(int j) const { return cols_range(j, j + 1); }

Mat Mat::cols_range(int j0, int j1) const { return block(0, j0, rows_, j1 - j0); }

Mat Mat::block(int i0, int j0, int nr, int nc) const {
  Mat m(r_, nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
  return m;
}

void Mat::set_block(int i0, int j0, const Mat& b) {
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  Mat m(a.r_, a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
  Mat m(a.r_, a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

Mat Mat::kron(const Mat& a, const Mat& b) {
  Mat m(a.r_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < a.cols_; ++j)
      for (int k = 0; k < b.rows_; ++k)
        for (int l = 0; l < b.cols_; ++l) m(i * b.rows_ + k, j * b.cols_ + l) = a(i, j) * b(k, l);
  return m;
}

Mat Mat::block_diag(const std::vector<Mat>& parts) {
  int n = 0, c = 0;
  for (const auto& p : parts) {
    n += p.rows_;
    c += p.cols_;
  }
  Mat m(parts.at(0).r_, n, c);
  int i = 0, j = 0;
  for (const auto& p : parts) {
    m.set_block(i, j, p);
    i += p.rows_;
    j += p.cols_;
  }
  return m;
}

bool Mat::equals(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || r_ != o.r_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].equals(o.a_[i])) return false;
  return true;
}

bool Mat::same_repr(const Mat& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || r_ != o.r_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (!a_[i].same_repr(o.a_[i])) return false;
  return true;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const { return rows_ == cols_ && equals(identity(r_, rows_)); }

int Mat::min_val() const {
  int v = kInfVal;
  for (const auto& x : a_)
    if (!x.is_zero()) v = std::min(v, x.val());
  return v;
}

Mat Mat::div_pi(int k) const {
  return map([k](const Elem& x) { return x.div_pi(k); });
}

int Mat::min_prec() const {
  int p = r_->cap();
  for (const auto& x : a_) p = std::min(p, x.prec());
  return p;
}

Mat Mat::with_full_prec() const {
  const int cap = r_->cap();
  return map([cap](const Elem& x) { return Elem(x.ring(), x.coeffs(), cap); });
}

std::string Mat::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
    os << "]";
  }
  os << "]";
  return os.str();
}

std::vector<Elem> charpoly(const Mat& a) {
  std::vector<std::vector<Elem>> rows(a.rows(), std::vector<Elem>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) rows[i][j] = a(i, j);
  return berkowitz(rows, a.ring()->zero(), a.ring()->one());
}

Mat mult_matrix(const Elem& x) {
  RingRef m = x.ring();
  auto basis = m->zeta_basis();
  const int d = static_cast<int>(basis.size());
  Mat out(m->parent(), d, d);
  for (int j = 0; j < d; ++j) {
    auto c = m->zeta_coords(x * basis[j]);
    for (int i = 0; i < d; ++i) out(i, j) = c[i];
  }
  return out;
}

}  // namespace lladic
