#include <random>

#include "doctest.h"
#include "lladic/sharpness.hpp"

using namespace lladic;

namespace {

Mat random_mat(RingRef r, int n, int m, std::mt19937& rng) {
  std::uniform_int_distribution<long> dig(-40, 40);
  Mat a(r, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      std::vector<mpz_class> c(static_cast<std::size_t>(r->dim()));
      for (auto& x : c) x = dig(rng);
      a(i, j) = Elem(r, c, r->cap()) * r->from_int(1);
    }
  return a;
}

}  // namespace

TEST_CASE("matrix product matches the serial reference") {
  std::mt19937 rng(7);
  for (const char* spec : {"Z5", "Z7/cyc", "Z5/real/cyc"}) {
    RingRef r = Ring::from_spec(spec);
    for (int t = 0; t < 5; ++t) {
      Mat a = random_mat(r, 12, 9, rng), b = random_mat(r, 9, 11, rng);
      CHECK((a * b).same_repr(mul_serial(a, b)));
    }
  }
}

TEST_CASE("snf row updates match the serial run") {
  std::mt19937 rng(11);
  for (const char* spec : {"Z5", "Z7/cyc"}) {
    RingRef r = Ring::from_spec(spec);
    for (int t = 0; t < 5; ++t) {
      Mat a = random_mat(r, 10, 10, rng).scaled(r->pi().pow(t % 3));
      SNF p = snf(a, true), s = snf(a, false);
      CHECK(p.exponents == s.exponents);
      CHECK(p.left.same_repr(s.left));
      CHECK(p.right.same_repr(s.right));
    }
  }
}

TEST_CASE("averaging, invariance and residue maps agree") {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 5, 2);
  std::mt19937 rng(3);
  Lattice s0 = Lattice::from_generators(random_mat(s.K, 8, 8, rng));
  CHECK(stable_lattice(s.v.rep, s0, true) == stable_lattice(s.v.rep, s0, false));
  CHECK(form_is_invariant(s.v.rep, *s.v.form, true) == form_is_invariant(s.v.rep, *s.v.form, false));
  BilinearForm bad{random_mat(s.K, 8, 8, rng), 0, Symmetry::General};
  CHECK(form_is_invariant(s.v.rep, bad, true) == form_is_invariant(s.v.rep, bad, false));

  BilinearForm f = normalize_form(*s.v.form, s.s);
  StabilizedPair sp = stabilize_lattice(s.s, f, &s.v.rep);
  ResidueEmbedding a = reduce_embedding(sp, s.v.rep, true), b = reduce_embedding(sp, s.v.rep, false);
  REQUIRE(a.images.size() == b.images.size());
  for (std::size_t x = 0; x < a.images.size(); ++x) CHECK(a.images[x] == b.images[x]);
  CHECK(a.charpolys == b.charpolys);
  CHECK(a.kernel == b.kernel);
}

TEST_CASE("obstruction cells agree") {
  for (SettingKind k : {SettingKind::Thm62, SettingKind::Thm66}) {
    CounterexampleSetting s = build_counterexample(k, 5, 2);
    ObstructionCertificate a = no_perfect_pairing_oracle(s, 5, true), b = no_perfect_pairing_oracle(s, 5, false);
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
      CHECK(a.cells[i].r == b.cells[i].r);
      CHECK(a.cells[i].j == b.cells[i].j);
      CHECK(a.cells[i].exponents == b.cells[i].exponents);
      CHECK(a.cells[i].gram.same_repr(b.cells[i].gram));
    }
    CHECK(a.verified() == b.verified());
  }
}
