#include "doctest.h"
#include "lladic/errors.hpp"
#include "lladic/groups.hpp"

using namespace lladic;

namespace {

bool closed(const FiniteGroup& g) {
  for (int a = 0; a < g.order(); ++a) {
    if (g.mul(a, g.inverse[a]) != 0 || g.mul(g.inverse[a], a) != 0) return false;
    for (int b = 0; b < g.order(); ++b)
      for (int c = 0; c < g.order(); c += 3)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) return false;
  }
  return true;
}

// Invariants pinning the isomorphism type of a small group.
std::vector<int> order_profile(const FiniteGroup& g) {
  std::vector<int> counts(g.order() + 1, 0);
  for (int x = 0; x < g.order(); ++x) ++counts[g.elem_order(x)];
  return counts;
}

}  // namespace

TEST_CASE("group orders") {
  CHECK(build_group("Q2").order() == 8);
  CHECK(build_group("Q5").order() == 20);
  CHECK(build_group("C6").order() == 6);
  CHECK(build_group("mu7").order() == 7);
  CHECK(build_group("N2").order() == 8);
  CHECK(build_group("N5").order() == 40);
  CHECK(build_group("N7").order() == 84);
  CHECK(build_group("Q2xmu5").order() == 40);
  CHECK_THROWS_AS(build_group("Z3"), Error);
  CHECK_THROWS_AS(build_group("Q1"), Error);
  CHECK_THROWS_AS(build_group("N4"), Error);
  CHECK_THROWS_AS(build_group("mu"), Error);
}

TEST_CASE("quaternion relations") {
  for (int m : {2, 3, 5}) {
    FiniteGroup q = quaternion_group(m);
    int a = q.gens[0], b = q.gens[1];
    CHECK(q.elem_order(a) == 2 * m);
    CHECK(q.mul(b, b) == q.pow(a, m));
    CHECK(q.mul(q.mul(b, a), q.inverse[b]) == q.inverse[a]);
    CHECK(closed(q));
    // a single element of order 2
    CHECK(order_profile(q)[2] == 1);
  }
}

TEST_CASE("N3 matches Q3") {
  FiniteGroup n3 = build_group("N3"), q3 = build_group("Q3");
  CHECK(n3.order() == 12);
  CHECK(order_profile(n3) == order_profile(q3));
  CHECK_FALSE(n3.is_abelian());
  CHECK(closed(n3));
  // the centre of both has order 2
  auto centre = [](const FiniteGroup& g) {
    int c = 0;
    for (int z = 0; z < g.order(); ++z) {
      bool ok = true;
      for (int x = 0; x < g.order() && ok; ++x) ok = g.mul(z, x) == g.mul(x, z);
      c += ok;
    }
    return c;
  };
  CHECK(centre(n3) == 2);
  CHECK(centre(q3) == 2);
}

TEST_CASE("words reproduce elements") {
  FiniteGroup g = build_group("N5xmu3");
  for (int x = 0; x < g.order(); ++x) {
    int y = 0;
    for (int s : g.words[x]) y = g.mul(y, g.gens[s]);
    CHECK(y == x);
  }
}

TEST_CASE("classify examples") {
  {
    FiniteGroup g = build_group("Q2xmu5");
    Classification c = classify(g, 2, 5);
    CHECK(c.inertia_type);
    REQUIRE(c.d_ell_split.has_value());
    CHECK(c.d_ell_split->N.size() == 8);
    CHECK(c.d_ell_split->L.size() == 5);
    // N is the Q2 factor: the elements trivial in the mu5 coordinate
    for (int x : c.d_ell_split->N) CHECK(x % 5 == 0);
  }
  {
    FiniteGroup g = build_group("N3xmu5");
    Classification c = classify(g, 3, 5);
    CHECK(c.inertia_type);
    CHECK(c.H.size() == 3);
    CHECK(g.order() / c.H.size() == 20);
  }
  {
    FiniteGroup g = build_group("C6");
    Classification c = classify(g, 3, 2);
    CHECK(c.inertia_type);
    REQUIRE(c.d_ell_split.has_value());
    CHECK(c.d_ell_split->N == std::vector<int>{0, 2, 4});
    CHECK(c.d_ell_split->L == std::vector<int>{0, 3});
  }
  // Q2 x C3 is not of inertia type for p = 3: the quotient by mu3 is Q2, not cyclic
  CHECK_FALSE(classify(build_group("Q2xC3"), 3, 2).inertia_type);
  CHECK_THROWS_AS(classify(build_group("C6"), 3, 3), Error);
}

TEST_CASE("property: inertia type implies D_ell split for every ell != p") {
  const std::vector<std::pair<std::string, long>> cases = {
      {"Q2", 2}, {"Q3", 3}, {"Q5", 5}, {"N3", 3}, {"N5", 5}, {"N7", 7}, {"C6", 2}, {"C6", 3},
      {"C12", 3}, {"Q2xmu5", 2}, {"Q2xmu3", 2}, {"N3xmu5", 3}, {"N5xmu3", 5}, {"Q3xmu7", 3}};
  for (const auto& [spec, p] : cases) {
    FiniteGroup g = build_group(spec);
    Classification c0 = classify(g, p, p == 2 ? 3 : 2);
    REQUIRE_MESSAGE(c0.inertia_type, spec);
    for (long ell : {2L, 3L, 5L, 7L, 11L}) {
      if (ell == p) continue;
      Classification c = classify(g, p, ell);
      CHECK(c.inertia_type);
      REQUIRE_MESSAGE(c.d_ell_split.has_value(), spec << " ell=" << ell);
      const auto& s = *c.d_ell_split;
      CHECK(g.is_subgroup(s.N));
      CHECK(g.is_normal(s.N));
      CHECK(static_cast<long>(s.N.size()) % ell != 0);
      long idx = g.order() / static_cast<long>(s.N.size());
      while (idx % ell == 0) idx /= ell;
      CHECK(idx == 1);
      CHECK(s.L.size() * s.N.size() == static_cast<std::size_t>(g.order()));
      // L meets N trivially and is cyclic
      int common = 0;
      for (int x : s.L)
        for (int y : s.N) common += x == y;
      CHECK(common == 1);
      bool cyclic = false;
      for (int x : s.L) cyclic |= g.elem_order(x) == static_cast<int>(s.L.size());
      CHECK(cyclic);
    }
  }
}

TEST_CASE("property: quotients of inertia-type groups stay inertia type") {
  for (const auto& [spec, p] : std::vector<std::pair<std::string, long>>{{"Q2", 2}, {"Q3", 3}, {"Q5", 5}, {"N3", 3}, {"N5", 5}}) {
    FiniteGroup g = build_group(spec);
    for (const auto& c : normal_subgroups(g)) {
      FiniteGroup q = quotient_group(g, c);
      CHECK(q.order() * static_cast<int>(c.size()) == g.order());
      CHECK_MESSAGE(classify(q, p, p == 2 ? 3 : 2).inertia_type, spec << " / order " << c.size());
    }
  }
}
