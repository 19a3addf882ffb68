#include <map>

#include "doctest.h"
#include "lladic/sharpness.hpp"

using namespace lladic;

namespace {

// Laurent polynomials in zeta with integer coefficients, exponents mod ell.
using ZPol = std::map<long, mpz_class>;

ZPol zmul(const ZPol& a, const ZPol& b, long ell) {
  ZPol c;
  for (auto& [i, x] : a)
    for (auto& [j, y] : b) c[((i + j) % ell + ell) % ell] += x * y;
  return c;
}

// trace to Q_ell: tr(zeta^k) is ell - 1 for k = 0 and -1 otherwise
mpz_class ztrace(const ZPol& a, long ell) {
  mpz_class t = 0;
  for (auto& [k, x] : a) t += x * (k == 0 ? ell - 1 : -1);
  return t;
}

// eta etabar = 2 - zeta^2 - zeta^-2
ZPol eta_etabar(long ell) { return {{0, 2}, {2, -1}, {ell - 2, -1}}; }

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> a) {
  const int n = static_cast<int>(a.size());
  mpz_class prev = 1, sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

int vp(mpz_class x, long p) {
  if (x == 0) return kInfVal;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST_CASE("quaternion times mu_5 setting") {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 5, 2);
  CHECK(s.v.rep.group.order() == 40);
  CHECK(s.v.rep.dim == 8);
  CHECK(s.e == 1);
  CHECK(s.d == 4);
  CHECK(s.mplus_degree == 2);
  CHECK(s.form_space.size() == 2);
  CHECK(s.sym == Symmetry::Alternating);
}

TEST_CASE("symmetric and real-cyclotomic settings") {
  CounterexampleSetting a = build_counterexample(SettingKind::Prop61, 5);
  CHECK(a.v.rep.dim == 4);
  CHECK(a.v.form->sym == Symmetry::Symmetric);
  CHECK(a.form_space.size() == 2);
  CHECK(build_counterexample(SettingKind::Prop61, 7).v.rep.dim == 6);
  CounterexampleSetting r = build_counterexample(SettingKind::Thm66, 5, 2);
  CHECK(r.e == 2);
  CHECK(r.d == 2);
  CHECK(r.v.rep.dim == 4);
  CHECK(r.form_space.size() == 1);
  CHECK_THROWS_AS(build_counterexample(SettingKind::Thm62, 5, 5), Error);
  CHECK_THROWS_AS(build_counterexample(SettingKind::Thm62, 9, 2), Error);
  CHECK_THROWS_AS(build_counterexample(SettingKind::Cor64, 5, 2, 0), Error);
}

TEST_CASE("oracle over the 8-dimensional module at ell = 5") {
  const long ell = 5;
  CounterexampleSetting s = build_counterexample(SettingKind::Thm62, ell, 2);
  ObstructionCertificate c = no_perfect_pairing_oracle(s);
  CHECK(c.r_count == 4);
  CHECK(c.all_obstructed);
  CHECK(c.shift_identity);
  CHECK(c.unit_invariance);
  CHECK(c.trace_containment_applicable);
  CHECK(c.trace_containment);
  CHECK(c.form_space_dimension);
  CHECK(c.lattice_classification);
  CHECK(c.verified());
  for (int r = 0; r < 4; ++r) {
    bool has_integral = false, has_nonintegral = false;
    for (const auto& cell : c.cells)
      if (cell.r == r) (cell.integral ? has_integral : has_nonintegral) = true;
    CHECK(has_integral);
    CHECK(has_nonintegral);
  }
  // Gram of f_delta on S is J (x) A with A_ab = tr(delta zeta^a zeta^-b), so the
  // exponent sum is 2 v(det A).
  for (const auto& cell : c.cells) {
    if (cell.r != 0 || cell.j < 0) continue;
    ZPol delta{{0, 1}};
    for (int t = 0; t < cell.j; ++t) delta = zmul(delta, eta_etabar(ell), ell);
    std::vector<std::vector<mpz_class>> a(ell - 1, std::vector<mpz_class>(ell - 1));
    for (long i = 0; i < ell - 1; ++i)
      for (long j = 0; j < ell - 1; ++j) a[i][j] = ztrace(zmul(delta, {{(i - j + ell) % ell, 1}}, ell), ell);
    int v = vp(bareiss_det(a), ell);
    CHECK(v >= 1);
    int sum = 0;
    for (int e : cell.exponents) sum += e;
    CHECK(sum == 2 * v);
  }
}

TEST_CASE("oracle at ell = 7 through the nonsplit module") {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 7, 2);
  CHECK(s.v.rep.dim == 12);
  ObstructionCertificate c = no_perfect_pairing_oracle(s);
  CHECK(c.all_obstructed);
  CHECK(c.verified());
  ObstructionCertificate ctl = positive_control(s);
  CHECK_FALSE(ctl.all_obstructed);
}

TEST_CASE("positive control finds the perfect cell") {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 5, 2);
  ObstructionCertificate ctl = positive_control(s);
  CHECK_FALSE(ctl.all_obstructed);
  bool at_zero = false;
  for (const auto& cell : ctl.cells)
    if (cell.perfect) at_zero = at_zero || (cell.r == 0 && cell.j == 0);
  CHECK(at_zero);
  CHECK_FALSE(ctl.verified());
  CounterexampleSetting sym = build_counterexample(SettingKind::Prop61, 5);
  CHECK_FALSE(positive_control(sym).all_obstructed);
}

TEST_CASE("symmetric trace form oracle") {
  for (long ell : {5L, 7L}) {
    ObstructionCertificate c = no_perfect_pairing_oracle(build_counterexample(SettingKind::Prop61, ell));
    CHECK(c.all_obstructed);
    CHECK(c.verified());
  }
}

TEST_CASE("split with trivial summand") {
  for (int b : {1, 2}) {
    CounterexampleSetting s = build_counterexample(SettingKind::Cor64, 5, 2, b);
    REQUIRE(s.u);
    CHECK(s.u->rep.dim == 8 + 2 * b);
    CHECK(s.d == 4 + b);
    ObstructionCertificate c = no_perfect_pairing_oracle(s);
    REQUIRE(c.split);
    CHECK(c.split->tau_idempotent);
    CHECK(c.split->tau_is_projection);
    CHECK(c.split->direct_sum);
    CHECK(c.split->cross_pairing_zero);
    CHECK(c.split->forms_checked >= 2);
    CHECK(c.verified());
  }
}

TEST_CASE("real cyclotomic base") {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm66, 5, 2);
  ObstructionCertificate c = no_perfect_pairing_oracle(s);
  CHECK_FALSE(c.trace_containment_applicable);
  CHECK(c.all_obstructed);
  CHECK(c.verified());
  CHECK_FALSE(positive_control(s).all_obstructed);
}

TEST_CASE("trace containment for eta^(ell-2)") {
  for (long ell : {5L, 7L, 11L}) {
    RingRef m = Ring::cyclotomic(Ring::base(ell));
    TraceContainment one = lemma311_check(m->one(), 0);
    CHECK(one.contained);
    CHECK(one.traces.size() == static_cast<std::size_t>(ell - 1));
    // tr(eta^(ell-2) zeta^i) by expanding (zeta - zeta^-1)^(ell-2)
    ZPol e{{0, 1}};
    for (long t = 0; t < ell - 2; ++t) e = zmul(e, {{1, 1}, {ell - 1, -1}}, ell);
    for (long i = 0; i < ell - 1; ++i) {
      mpz_class tr = ztrace(zmul(e, {{i, 1}}, ell), ell);
      CHECK(tr % ell == 0);
      CHECK(one.traces[i].equals(Ring::base(ell)->from_int(tr)));
    }
    CHECK(lemma311_check(m->zero(), 0).contained);
    // boundary of the inverse different: eta^(3-ell) = eta^2 c / ell with c = ell / eta^(ell-1)
    Elem eta = *m->eta();
    Elem c = m->from_int(ell).div(eta.pow(ell - 1));
    CHECK(lemma311_check(eta.pow(2) * c, 1).contained);
    CHECK_THROWS_AS(lemma311_check(m->one(), 1), Error);
    CHECK(inverse_different_check(Ring::base(ell)));
  }
}

TEST_CASE("residue double module has only degenerate forms") {
  ResidueObstruction r = no_residue_symplectic_embedding(5, 2);
  CHECK(r.field_size == 5);
  CHECK(r.dim == 4);
  CHECK(r.exhaustive);
  CHECK(r.solution_dim >= 1);
  CHECK(r.enumerated == [&] {
    long q = 1;
    for (int i = 0; i < r.solution_dim; ++i) q *= 5;
    return q;
  }());
  CHECK(r.identity1);
  CHECK(r.identity2);
  CHECK(r.h_zero);
  CHECK(r.trace_congruence);
  CHECK(r.unipotent_degenerate);
  CHECK(r.verified());
}

TEST_CASE("unipotent preserves no nondegenerate symmetric form") {
  for (long ell : {3L, 5L, 7L, 11L, 13L}) {
    const Fq& F = Fq::prime(ell);
    FMat u = FMat::identity(&F, 2);
    u(0, 1) = 1;
    auto sol = finite_invariant_forms({u}, Symmetry::Symmetric);
    // brute force over all symmetric 2x2 matrices
    int invariant = 0, nondegenerate = 0;
    for (long a = 0; a < ell; ++a)
      for (long b = 0; b < ell; ++b)
        for (long d = 0; d < ell; ++d) {
          FMat f(&F, 2, 2);
          f(0, 0) = a;
          f(0, 1) = f(1, 0) = b;
          f(1, 1) = d;
          if (u.transpose() * f * u != f) continue;
          ++invariant;
          if (f.det() != 0) ++nondegenerate;
        }
    long q = 1;
    for (std::size_t i = 0; i < sol.size(); ++i) q *= ell;
    CHECK(invariant == q);
    CHECK(nondegenerate == 0);
  }
}

TEST_CASE("abelian variety scenarios") {
  AbVarScenario a = abvar_scenario(2, 5, 0);
  CHECK(a.d == 4);
  CHECK(a.r == 1);
  CHECK(a.verified);
  CHECK(a.conclusions.size() == 3);
  AbVarScenario b = abvar_scenario(3, 5, 0);
  CHECK(b.d == 4);
  CHECK(b.verified);
  AbVarScenario c = abvar_scenario(2, 5, 2);
  CHECK(c.d == 6);
  CHECK(c.verified);
  CHECK(c.obstruction.split);
  CHECK_THROWS_AS(abvar_scenario(5, 7, 0), Error);
  CHECK_THROWS_AS(abvar_scenario(2, 2, 0), Error);
  CHECK_THROWS_AS(abvar_scenario(3, 2, 0), Error);
}
