#include <random>

#include "doctest.h"
#include "lladic/latmod.hpp"

using namespace lladic;

namespace {

// Bareiss determinant over plain integers.
mpz_class int_det(std::vector<std::vector<mpz_class>> a) {
  const int n = static_cast<int>(a.size());
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Mat trace_gram(RingRef m) {
  RingRef k = m->parent();
  auto b = m->zeta_basis();
  Mat g(k, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = m->trace_to_parent(b[i] * b[j].conj());
  return g;
}

Mat random_mat(RingRef r, int n, int m, std::mt19937& rng, int lo = -12, int hi = 12) {
  std::uniform_int_distribution<int> d(lo, hi);
  Mat a(r, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      Elem x = r->from_int(d(rng));
      if (r->dim() > 1) x = x + r->from_int(d(rng)) * r->generator();
      a(i, j) = x;
    }
  return a;
}

Lattice random_lattice(RingRef r, int n, std::mt19937& rng) {
  for (;;) {
    Mat g = random_mat(r, n, n, rng);
    try {
      if (snf(g).rank == n) return Lattice::from_generators(g, std::uniform_int_distribution<int>(-1, 1)(rng));
    } catch (const Error&) {
    }
  }
}

Mat random_unimodular(RingRef r, int n, std::mt19937& rng) {
  Mat u = Mat::identity(r, n);
  std::uniform_int_distribution<int> pick(0, n - 1), c(-9, 9);
  for (int t = 0; t < 3 * n; ++t) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Mat e = Mat::identity(r, n);
    e(i, j) = r->from_int(c(rng));
    u = u * e;
  }
  Mat d = Mat::identity(r, n);
  d(0, 0) = r->from_int(2);
  return u * d;
}

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("snf examples") {
  RingRef z5 = Ring::base(5);
  CHECK(snf(Mat::identity(z5, 2)).exponents == std::vector<int>{0, 0});
  CHECK(snf(Mat::from_ints(z5, {{1, 0}, {0, 5}})).exponents == std::vector<int>{0, 1});
  CHECK(snf(Mat::from_ints(z5, {{25, 0}, {0, 1}})).exponents == std::vector<int>{0, 2});
}

TEST_CASE("snf transforms reproduce the diagonal") {
  RingRef r = Ring::from_spec("Z5/cyc");
  std::mt19937 rng(3);
  Mat m = random_mat(r, 3, 4, rng);
  SNF s = snf(m);
  Mat d = s.left * m * s.right;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j && i < s.rank)
        CHECK((d(i, j) - r->pi().pow(s.exponents[i])).is_zero());
      else
        CHECK(d(i, j).is_zero());
    }
  for (std::size_t i = 1; i < s.exponents.size(); ++i) CHECK(s.exponents[i - 1] <= s.exponents[i]);
}

TEST_CASE("trace Gram on Z5[zeta5] against integer determinant") {
  RingRef m = Ring::from_spec("Z5/cyc");
  Mat g = trace_gram(m);
  std::vector<std::vector<mpz_class>> ints(4, std::vector<mpz_class>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ints[i][j] = (i == j) ? 4 : -1;
  // the Gram is tr(zeta^(i-j)) = 4 on the diagonal, -1 elsewhere
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK((g(i, j) - m->parent()->from_int(ints[i][j])).is_zero());
  mpz_class det = int_det(ints);
  CHECK(abs(det) == 125);
  CHECK(sum(snf(g).exponents) == 3);

  Lattice t = Lattice::standard(m->parent(), 4);
  BilinearForm f{g, 0, Symmetry::Symmetric};
  auto cert = is_perfect(t, f);
  CHECK_FALSE(cert.perfect);
  CHECK(sum(cert.exponents) == 3);
}

TEST_CASE("dual of O_M under the trace form is the inverse different") {
  RingRef m = Ring::from_spec("Z5/cyc");
  RingRef k = m->parent();
  BilinearForm f{trace_gram(m), 0, Symmetry::Symmetric};
  Lattice dual = dual_lattice(Lattice::standard(k, 4), f);
  // eta^(2-l) O_M = l^-1 eta O_M since eta^4 / 5 is a unit
  auto b = m->zeta_basis();
  Mat gens(k, 4, 4);
  Elem eta = *m->eta();
  for (int j = 0; j < 4; ++j) {
    auto c = m->zeta_coords(eta * b[j]);
    for (int i = 0; i < 4; ++i) gens(i, j) = c[i];
  }
  Lattice expect = Lattice::from_generators(gens, 1);
  CHECK(dual == expect);
  CHECK(lattice_index(dual, Lattice::standard(k, 4)) == 3);
}

TEST_CASE("perfect alternating pairing on Z5[zeta5]") {
  RingRef m = Ring::from_spec("Z5/cyc");
  RingRef k = m->parent();
  auto b = m->zeta_basis();
  Elem eta = *m->eta();
  Mat g(k, 4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = m->trace_to_parent(b[i] * eta * b[j].conj());
  BilinearForm f{g, 1, Symmetry::Alternating};
  CHECK(f.check_symmetry());
  auto cert = is_perfect(Lattice::standard(k, 4), f);
  CHECK(cert.perfect);
  CHECK(cert.exponents == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("standard symplectic form") {
  RingRef z5 = Ring::base(5);
  BilinearForm f{Mat::from_ints(z5, {{0, 1}, {-1, 0}}), 0, Symmetry::Alternating};
  Lattice t = Lattice::standard(z5, 2);
  CHECK(dual_lattice(t, f) == t);
  CHECK(is_perfect(t, f).perfect);
  CHECK(dual_lattice(t.scaled(1), f) == t.scaled(-1));
  CHECK_THROWS_AS(is_perfect(t.scaled(-1), f), Error);
  BilinearForm bad{Mat::from_ints(z5, {{0, 0}, {0, 1}}), 0, Symmetry::Symmetric};
  CHECK_THROWS_AS(dual_lattice(t, bad), Error);
}

TEST_CASE("sum and intersection basics") {
  for (const char* spec : {"Z5", "Z7/cyc"}) {
    RingRef r = Ring::from_spec(spec);
    std::mt19937 rng(11);
    Lattice t = random_lattice(r, 3, rng);
    CHECK(lattice_sum(t, t) == t);
    CHECK(lattice_sum(t, t.scaled(1)) == t);
    CHECK(lattice_intersect(t, t) == t);
    CHECK(lattice_intersect(t, t.scaled(1)) == t.scaled(1));
    CHECK(lattice_index(t, t.scaled(1)) == 3);
  }
}

TEST_CASE("membership and coordinates") {
  RingRef r = Ring::from_spec("Z7/cyc");
  std::mt19937 rng(5);
  Lattice t = random_lattice(r, 3, rng);
  Mat c = random_mat(r, 3, 1, rng);
  Mat v = t.basis() * c;
  CHECK(t.contains(v, t.denom()));
  Mat back = t.coordinates(v, t.denom());
  CHECK((back - c).is_zero());
  // pi^-1 times a basis vector with a unit leading coordinate is outside
  Mat w = t.basis().col(0);
  CHECK_FALSE(t.contains(w, t.denom() + 1));
}

TEST_CASE("property: snf exponents invariant under unimodular change") {
  for (const char* spec : {"Z5", "Z7/cyc"}) {
    RingRef r = Ring::from_spec(spec);
    std::mt19937 rng(17);
    for (int it = 0; it < 10; ++it) {
      Mat m = random_mat(r, 3, 3, rng);
      auto e = snf(m).exponents;
      Mat m2 = random_unimodular(r, 3, rng) * m * random_unimodular(r, 3, rng);
      CHECK(snf(m2).exponents == e);
      CHECK(snf(m, false).exponents == e);
    }
  }
}

TEST_CASE("property: lattice operations over Z5 and Z7/cyc") {
  for (const char* spec : {"Z5", "Z7/cyc"}) {
    RingRef r = Ring::from_spec(spec);
    BilinearForm dot{Mat::identity(r, 3), 0, Symmetry::Symmetric};
    std::mt19937 rng(23);
    for (int it = 0; it < 12; ++it) {
      Lattice a = random_lattice(r, 3, rng), b = random_lattice(r, 3, rng);
      Lattice s = lattice_sum(a, b), i = lattice_intersect(a, b);
      CHECK(a.subset_of(s));
      CHECK(b.subset_of(s));
      CHECK(i.subset_of(a));
      CHECK(i.subset_of(b));
      // index(a+b : a) = index(b : a cap b)
      CHECK(lattice_index(s, a) == lattice_index(b, i));
      // modularity with c = a + pi^-1 b, which contains a
      Lattice c = lattice_sum(a, b.scaled(-1));
      CHECK(lattice_sum(a, lattice_intersect(b, c)) == lattice_intersect(lattice_sum(a, b), c));
      // index multiplicativity along s >= a >= i
      CHECK(lattice_index(s, i) == lattice_index(s, a) + lattice_index(a, i));
      // duality
      CHECK(dual_lattice(dual_lattice(a, dot), dot) == a);
      CHECK(dual_lattice(s, dot).subset_of(dual_lattice(a, dot)));
      CHECK(i == dual_lattice(lattice_sum(dual_lattice(a, dot), dual_lattice(b, dot)), dot));
      CHECK(dual_lattice(a.scaled(1), dot) == dual_lattice(a, dot).scaled(-1));
    }
  }
}

TEST_CASE("Hermite form is canonical") {
  RingRef r = Ring::from_spec("Z7/cyc");
  std::mt19937 rng(31);
  for (int it = 0; it < 8; ++it) {
    Lattice a = random_lattice(r, 3, rng);
    Lattice b = Lattice::from_generators(a.basis() * random_unimodular(r, 3, rng), a.denom());
    CHECK(a == b);
  }
}
