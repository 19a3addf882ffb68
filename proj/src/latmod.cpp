#include "lladic/latmod.hpp"

#include <algorithm>

namespace lladic {

namespace {

void swap_rows(Mat& a, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(Mat& a, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

Elem exact(const Elem& x) { return Elem(x.ring(), x.coeffs(), x.ring()->cap()); }

// Column Hermite form of a full-row-rank n x m generator matrix.
Mat hermite(const Mat& gens, std::vector<int>& diag) {
  RingRef r = gens.ring();
  const int n = gens.rows();
  Mat a = gens;
  diag.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    int best = -1, bv = kInfVal;
    for (int j = i; j < a.cols(); ++j) {
      const Elem& x = a(i, j);
      if (x.is_zero()) continue;
      int v = x.val();
      if (v < bv) {
        bv = v;
        best = j;
      }
    }
    if (best < 0) fail(ErrorKind::BadParameters, "generators do not span a full-rank lattice");
    swap_cols(a, i, best);
    const Elem piv = a(i, i);
    ParallelErrors errs;
#pragma omp parallel for schedule(static) if (a.cols() - i > 8)
    for (int j = i + 1; j < a.cols(); ++j)
      errs.run([&] {
        if (!a(i, j).is_zero()) {
          Elem q = a(i, j).div(piv);
          for (int k = i + 1; k < n; ++k) a(k, j) -= q * a(k, i);
        }
        a(i, j) = r->zero();
      });
    errs.rethrow();
    // normalize the diagonal to pi^bv
    Elem uinv = piv.div_pi(bv).inv();
    for (int k = i + 1; k < n; ++k) a(k, i) = a(k, i) * uinv;
    a(i, i) = r->pi().pow(bv);
    diag[i] = bv;
  }
  Mat h = a.cols_range(0, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) h(i, j) = r->zero();
  // canonical digits below the diagonal
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) {
      const int d = diag[i];
      Elem y = h(i, j);
      if (y.prec() < d) fail(ErrorKind::PrecisionExhausted, "lattice entry lost too much precision");
      Elem canon = r->zero();
      Elem pt = r->one();
      for (int t = 0; t < d; ++t) {
        Elem rt = r->lift_residue(r->residue(y));
        canon += rt * pt;
        pt = pt * r->pi();
        y = (y - rt).div_pi(1);
      }
      if (!y.is_zero())
        for (int k = i + 1; k < n; ++k) h(k, j) -= y * h(k, i);
      h(i, j) = exact(canon);
    }
  }
  return h;
}

}  // namespace

SNF snf(const Mat& m, bool parallel) {
  RingRef r = m.ring();
  const int nr = m.rows(), nc = m.cols();
  SNF out;
  Mat a = m;
  out.left = Mat::identity(r, nr);
  out.right = Mat::identity(r, nc);
  Mat& u = out.left;
  Mat& v = out.right;
  for (int k = 0; k < std::min(nr, nc); ++k) {
    int bi = -1, bj = -1, bv = kInfVal;
    for (int i = k; i < nr; ++i)
      for (int j = k; j < nc; ++j) {
        const Elem& x = a(i, j);
        if (x.is_zero()) continue;
        int val = x.val();
        if (val < bv) {
          bv = val;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    swap_rows(a, k, bi);
    swap_rows(u, k, bi);
    swap_cols(a, k, bj);
    swap_cols(v, k, bj);
    const Elem piv = a(k, k);
    ParallelErrors errs;
#pragma omp parallel for schedule(static) if (parallel && nr - k > 4)
    for (int i = k + 1; i < nr; ++i)
      errs.run([&] {
        if (!a(i, k).is_zero()) {
          Elem q = a(i, k).div(piv);
          for (int j = k + 1; j < nc; ++j) a(i, j) -= q * a(k, j);
          for (int j = 0; j < nr; ++j) u(i, j) -= q * u(k, j);
        }
        a(i, k) = r->zero();
      });
    errs.rethrow();
#pragma omp parallel for schedule(static) if (parallel && nc - k > 4)
    for (int j = k + 1; j < nc; ++j)
      errs.run([&] {
        if (!a(k, j).is_zero()) {
          Elem q = a(k, j).div(piv);
          for (int i = 0; i < nc; ++i) v(i, j) -= q * v(i, k);
        }
        a(k, j) = r->zero();
      });
    errs.rethrow();
    Elem uinv = piv.div_pi(bv).inv();
    for (int j = 0; j < nr; ++j) u(k, j) = u(k, j) * uinv;
    a(k, k) = r->pi().pow(bv);
    out.exponents.push_back(bv);
    out.rank = k + 1;
  }
  return out;
}

const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::Alternating: return "alternating";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Hermitian: return "hermitian";
    case Symmetry::SkewHermitian: return "skew-hermitian";
    case Symmetry::General: return "general";
  }
  return "general";
}

Symmetry symmetry_from_name(const std::string& s) {
  if (s == "alternating") return Symmetry::Alternating;
  if (s == "symmetric") return Symmetry::Symmetric;
  if (s == "hermitian") return Symmetry::Hermitian;
  if (s == "skew-hermitian") return Symmetry::SkewHermitian;
  if (s == "general") return Symmetry::General;
  fail(ErrorKind::BadSpec, "unknown symmetry '" + s + "'");
}

Mat BilinearForm::pair(const Mat& x, const Mat& y) const {
  return x.transpose() * gram * (sesquilinear() ? y.conj() : y);
}

bool BilinearForm::check_symmetry() const {
  const int n = gram.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Elem& a = gram(i, j);
      const Elem& b = gram(j, i);
      switch (sym) {
        case Symmetry::Alternating:
          if (!(a + b).is_zero() || (i == j && !a.is_zero())) return false;
          break;
        case Symmetry::Symmetric:
          if (!(a - b).is_zero()) return false;
          break;
        case Symmetry::Hermitian:
          if (!(a - b.conj()).is_zero()) return false;
          break;
        case Symmetry::SkewHermitian:
          if (!(a + b.conj()).is_zero()) return false;
          break;
        case Symmetry::General:
          break;
      }
    }
  return true;
}

BilinearForm BilinearForm::scaled(int k) const { return BilinearForm{gram, denom - k, sym}; }

Lattice Lattice::standard(RingRef r, int n) { return from_generators(Mat::identity(r, n), 0); }

Lattice Lattice::from_generators(const Mat& gens, int denom) {
  Lattice l;
  l.basis_ = hermite(gens, l.diag_);
  l.denom_ = denom;
  int m = *std::min_element(l.diag_.begin(), l.diag_.end());
  int content = l.basis_.min_val();
  m = std::min(m, content);
  if (m > 0) {
    l.basis_ = l.basis_.div_pi(m).with_full_prec();
    for (auto& d : l.diag_) d -= m;
    l.denom_ -= m;
  }
  return l;
}

int Lattice::volume() const {
  int s = 0;
  for (int d : diag_) s += d;
  return s - dim() * denom_;
}

Lattice Lattice::scaled(int k) const {
  Lattice l = *this;
  l.denom_ -= k;
  return l;
}

Lattice Lattice::apply(const Mat& g) const { return from_generators(g * basis_, denom_); }

Mat Lattice::coordinates(const Mat& v, int vdenom) const {
  RingRef r = ring();
  const int n = dim();
  int s = denom_ - vdenom;
  Mat w = v;
  if (s >= 0) {
    if (s > 0) w = w.scaled(r->pi().pow(s));
  } else {
    for (int i = 0; i < n; ++i)
      if (w(i, 0).val_lower_bound() < -s) fail(ErrorKind::PreconditionFailed, "vector not in lattice");
    w = w.div_pi(-s);
  }
  Mat c(r, n, 1);
  for (int i = 0; i < n; ++i) {
    Elem rest = w(i, 0);
    for (int j = 0; j < i; ++j) rest -= basis_(i, j) * c(j, 0);
    if (rest.is_zero()) {
      c(i, 0) = r->zero().with_prec(std::max(0, rest.prec() - diag_[i]));
      continue;
    }
    if (rest.val() < diag_[i]) fail(ErrorKind::PreconditionFailed, "vector not in lattice");
    c(i, 0) = rest.div_pi(diag_[i]);
  }
  return c;
}

bool Lattice::contains(const Mat& v, int vdenom) const {
  try {
    coordinates(v, vdenom);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PreconditionFailed) return false;
    throw;
  }
}

bool Lattice::subset_of(const Lattice& o) const {
  for (int j = 0; j < dim(); ++j)
    if (!o.contains(basis_.col(j), denom_)) return false;
  return true;
}

bool Lattice::operator==(const Lattice& o) const {
  return denom_ == o.denom_ && diag_ == o.diag_ && basis_.same_repr(o.basis_);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  RingRef r = a.ring();
  int k = std::max(a.denom(), b.denom());
  Mat ga = a.basis().scaled(r->pi().pow(k - a.denom()));
  Mat gb = b.basis().scaled(r->pi().pow(k - b.denom()));
  return Lattice::from_generators(Mat::hcat(ga, gb), k);
}

Lattice solution_lattice(const Mat& a, int denom) {
  RingRef r = a.ring();
  const int n = a.cols();
  SNF s = snf(a);
  if (s.rank < n) fail(ErrorKind::DegenerateForm, "form is degenerate on the lattice");
  int dmax = *std::max_element(s.exponents.begin(), s.exponents.end());
  Mat gens(r, n, n);
  for (int j = 0; j < n; ++j) {
    Elem sc = r->pi().pow(dmax - s.exponents[j]);
    for (int i = 0; i < n; ++i) gens(i, j) = s.right(i, j) * sc;
  }
  return Lattice::from_generators(gens, dmax - denom);
}

Lattice dual_lattice(const Lattice& t, const BilinearForm& f) {
  Mat b0 = f.sesquilinear() ? t.basis().conj() : t.basis();
  return solution_lattice((f.gram * b0).transpose(), f.denom + t.denom());
}

Mat unimodular_inverse(const Mat& m) {
  RingRef r = m.ring();
  const int n = m.rows();
  Mat a = m, inv = Mat::identity(r, n);
  for (int k = 0; k < n; ++k) {
    int p = -1;
    for (int i = k; i < n && p < 0; ++i)
      if (a(i, k).is_unit()) p = i;
    if (p < 0) fail(ErrorKind::NotAUnit, "matrix is not unimodular");
    swap_rows(a, k, p);
    swap_rows(inv, k, p);
    Elem u = a(k, k).inv();
    for (int j = 0; j < n; ++j) {
      a(k, j) = a(k, j) * u;
      inv(k, j) = inv(k, j) * u;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      Elem c = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= c * a(k, j);
        inv(i, j) -= c * inv(k, j);
      }
    }
  }
  return inv;
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
  BilinearForm dot{Mat::identity(a.ring(), a.dim()), 0, Symmetry::Symmetric};
  return dual_lattice(lattice_sum(dual_lattice(a, dot), dual_lattice(b, dot)), dot);
}

int lattice_index(const Lattice& a, const Lattice& c) { return c.volume() - a.volume(); }

GramOnLattice gram_on(const Lattice& t, const BilinearForm& f) {
  RingRef r = t.ring();
  Mat g = f.pair(t.basis(), t.basis());
  if (f.sesquilinear() && t.denom() != 0) {
    // conj(pi^-k) = eps^-k pi^-k with eps = conj(pi)/pi a unit
    Elem pi = r->pi();
    Elem eps = pi.conj().div(pi);
    int k = t.denom();
    Elem s = k > 0 ? eps.inv().pow(k) : eps.pow(-k);
    g = g.scaled(s);
  }
  return GramOnLattice{g, f.denom + 2 * t.denom()};
}

std::vector<int> scaled_exponents(const Mat& m, int denom) {
  SNF s = snf(m);
  std::vector<int> e;
  for (int x : s.exponents) e.push_back(x - denom);
  return e;
}

PerfectCertificate is_perfect(const Lattice& t, const BilinearForm& f) {
  GramOnLattice g = gram_on(t, f);
  int mv = g.gram.min_val();
  if (mv < kInfVal && mv < g.denom) fail(ErrorKind::ValuesNotIntegral, "f(T, T) is not contained in O");
  PerfectCertificate c;
  c.exponents = scaled_exponents(g.gram, g.denom);
  c.perfect = static_cast<int>(c.exponents.size()) == t.dim() &&
              std::all_of(c.exponents.begin(), c.exponents.end(), [](int e) { return e == 0; });
  return c;
}

}  // namespace lladic
