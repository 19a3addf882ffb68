#pragma once
#include <vector>

namespace lladic {

// Division-free characteristic polynomial det(xI - A), constant term first.
template <class T>
std::vector<T> berkowitz(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  std::vector<T> p{one};  // highest degree first
  for (std::size_t r = 1; r <= n; ++r) {
    const std::size_t m = r - 1;
    std::vector<T> t(r + 1, zero);
    t[0] = one;
    t[1] = zero - a[m][m];
    std::vector<T> v(m, zero);  // S^k C
    for (std::size_t i = 0; i < m; ++i) v[i] = a[i][m];
    for (std::size_t k = 2; k <= r; ++k) {
      T s = zero;
      for (std::size_t i = 0; i < m; ++i) s = s + a[m][i] * v[i];
      t[k] = zero - s;
      if (k == r) break;
      std::vector<T> nv(m, zero);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) nv[i] = nv[i] + a[i][j] * v[j];
      v = std::move(nv);
    }
    std::vector<T> q(r + 1, zero);
    for (std::size_t i = 0; i <= r; ++i)
      for (std::size_t j = 0; j < r && j <= i; ++j) q[i] = q[i] + t[i - j] * p[j];
    p = std::move(q);
  }
  return std::vector<T>(p.rbegin(), p.rend());
}

}  // namespace lladic
