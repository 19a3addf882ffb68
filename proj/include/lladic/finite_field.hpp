#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "lladic/localring.hpp"

namespace lladic {

// F_q = F_ell[t]/(h) with elements encoded as integers sum d_i ell^i.
class Fq {
 public:
  Fq(long ell, std::vector<long> h);  // h monic, constant term first
  static const Fq& prime(long ell);
  static const Fq& residue_field(RingRef r);

  long ell() const { return ell_; }
  int degree() const { return f_; }
  long size() const { return q_; }

  long add(long a, long b) const;
  long sub(long a, long b) const;
  long neg(long a) const { return sub(0, a); }
  long mul(long a, long b) const;
  long inv(long a) const;
  long from_int(long v) const;
  long encode(const std::vector<long>& digits) const;
  std::vector<long> decode(long a) const;
  long frobenius(long a) const { return pow(a, ell_); }
  long pow(long a, long k) const;

  long reduce(const Elem& x) const;  // residue of a ring element

 private:
  long ell_;
  int f_;
  long q_;
  std::vector<long> h_;
  std::vector<long> log_, exp_;
  long mul_poly(long a, long b) const;
};

// Matrix over a finite field.
class FMat {
 public:
  FMat() = default;
  FMat(const Fq* F, int rows, int cols) : F_(F), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}
  static FMat identity(const Fq* F, int n);
  static FMat reduce(const Fq* F, const class Mat& m);

  const Fq* field() const { return F_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  long& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  long operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
  bool operator==(const FMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
  bool operator!=(const FMat& o) const { return !(*this == o); }

  FMat operator*(const FMat& o) const;
  FMat operator+(const FMat& o) const;
  FMat operator-(const FMat& o) const;
  FMat transpose() const;
  FMat frobenius() const;
  FMat block(int i0, int j0, int nr, int nc) const;

  int rank() const;
  long det() const;
  // Basis of {x : A x = 0}, as columns.
  FMat kernel() const;
  std::vector<long> charpoly() const;  // constant term first
  bool is_identity() const;
  std::vector<std::vector<long>> to_rows() const;

 private:
  const Fq* F_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<long> a_;
};

}  // namespace lladic
