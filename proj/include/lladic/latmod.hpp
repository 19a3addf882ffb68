#pragma once
#include <string>
#include <vector>

#include "lladic/matrix.hpp"

namespace lladic {

struct SNF {
  std::vector<int> exponents;  // ascending, one per nonzero pivot
  Mat left, right;             // left * m * right = diag(pi^exponents)
  int rank = 0;
};

// Pivot on minimal valuation, ties broken row-major. The row updates of each
// step run under OpenMP unless parallel is false.
SNF snf(const Mat& m, bool parallel = true);

enum class Symmetry { Alternating, Symmetric, Hermitian, SkewHermitian, General };
const char* symmetry_name(Symmetry s);
Symmetry symmetry_from_name(const std::string& s);

// f(x, y) = pi^-denom * x^T gram y, with y conjugated for (skew-)hermitian forms.
struct BilinearForm {
  Mat gram;
  int denom = 0;
  Symmetry sym = Symmetry::General;

  bool sesquilinear() const { return sym == Symmetry::Hermitian || sym == Symmetry::SkewHermitian; }
  RingRef ring() const { return gram.ring(); }
  int dim() const { return gram.rows(); }
  // Integral part of the Gram matrix of f on the columns of x and y.
  Mat pair(const Mat& x, const Mat& y) const;
  bool check_symmetry() const;
  BilinearForm scaled(int k) const;  // pi^k f
};

class Lattice {
 public:
  Lattice() = default;
  static Lattice standard(RingRef r, int n);
  // pi^-denom times the column span of gens; gens must have full row rank.
  static Lattice from_generators(const Mat& gens, int denom = 0);

  RingRef ring() const { return basis_.ring(); }
  int dim() const { return basis_.rows(); }
  const Mat& basis() const { return basis_; }  // lower triangular, diagonal pi^d_i
  int denom() const { return denom_; }
  const std::vector<int>& diag_exponents() const { return diag_; }
  int volume() const;  // valuation of the determinant of a basis

  Lattice scaled(int k) const;  // pi^k L
  Lattice apply(const Mat& g) const;
  bool contains(const Mat& v, int vdenom = 0) const;
  bool subset_of(const Lattice& o) const;
  bool operator==(const Lattice& o) const;
  bool operator!=(const Lattice& o) const { return !(*this == o); }
  // Coordinates c with v = pi^-denom basis c, for v in the lattice.
  Mat coordinates(const Mat& v, int vdenom = 0) const;

 private:
  Mat basis_;
  int denom_ = 0;
  std::vector<int> diag_;
};

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
Lattice dual_lattice(const Lattice& t, const BilinearForm& f);
// {x : pi^-denom a x integral} for a square nonsingular a.
Lattice solution_lattice(const Mat& a, int denom);
// Inverse of a matrix with unit determinant.
Mat unimodular_inverse(const Mat& m);
// Exponent sum of a/c for c contained in a.
int lattice_index(const Lattice& a, const Lattice& c);

// Gram matrix of f on a basis of t: value pi^-denom * gram.
struct GramOnLattice {
  Mat gram;
  int denom = 0;
};
GramOnLattice gram_on(const Lattice& t, const BilinearForm& f);

struct PerfectCertificate {
  bool perfect = false;
  std::vector<int> exponents;
};
PerfectCertificate is_perfect(const Lattice& t, const BilinearForm& f);

// Elementary divisor exponents of pi^-denom * m.
std::vector<int> scaled_exponents(const Mat& m, int denom);

}  // namespace lladic
