#pragma once
#include <functional>
#include <string>
#include <vector>

#include "lladic/localring.hpp"

namespace lladic {

// Dense matrix over a tower ring O (entries are integral).
class Mat {
 public:
  Mat() = default;
  Mat(RingRef r, int rows, int cols);
  static Mat identity(RingRef r, int n);
  static Mat from_ints(RingRef r, const std::vector<std::vector<long>>& rows);

  RingRef ring() const { return r_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Elem& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  const Elem& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;  // OpenMP over output rows
  Mat operator-() const;
  Mat scaled(const Elem& s) const;
  Mat transpose() const;
  Mat conj() const;
  Mat map(const std::function<Elem(const Elem&)>& fn) const;

  Mat col(int j) const;
  Mat cols_range(int j0, int j1) const;
  Mat block(int i0, int j0, int nr, int nc) const;
  void set_block(int i0, int j0, const Mat& b);
  static Mat hcat(const Mat& a, const Mat& b);
  static Mat vcat(const Mat& a, const Mat& b);
  static Mat kron(const Mat& a, const Mat& b);
  static Mat block_diag(const std::vector<Mat>& parts);

  bool equals(const Mat& o) const;
  bool same_repr(const Mat& o) const;
  bool is_zero() const;
  bool is_identity() const;
  int min_val() const;  // kInfVal when every entry is zero at precision
  Mat div_pi(int k) const;
  int min_prec() const;
  Mat with_full_prec() const;

  std::string str() const;

 private:
  RingRef r_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

// Serial reference for the parallel product.
Mat mul_serial(const Mat& a, const Mat& b);

// Power of a square matrix.
Mat mat_pow(const Mat& a, unsigned long k);

// Characteristic polynomial over O, constant term first.
std::vector<Elem> charpoly(const Mat& a);

// Matrix of multiplication by x on the zeta-power basis of M = x.ring() over its parent.
Mat mult_matrix(const Elem& x);

}  // namespace lladic
