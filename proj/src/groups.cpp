#include "lladic/groups.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "lladic/errors.hpp"

namespace lladic {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

FiniteGroup finish(std::string spec, int n, const std::function<int(int, int)>& mul,
                   std::vector<int> gens, std::vector<std::string> gen_names,
                   std::vector<std::string> labels) {
  FiniteGroup g;
  g.spec = std::move(spec);
  g.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.table[a][b] = mul(a, b);
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.table[a][b] == 0) g.inverse[a] = b;
  for (int a = 0; a < n; ++a)
    if (g.inverse[a] < 0) fail(ErrorKind::Internal, "group table has no inverse");
  g.gens = std::move(gens);
  g.gen_names = std::move(gen_names);
  g.labels = std::move(labels);
  g.words.assign(n, {});
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (std::size_t s = 0; s < g.gens.size(); ++s) {
      int y = g.table[x][g.gens[s]];
      if (seen[y]) continue;
      seen[y] = true;
      g.words[y] = g.words[x];
      g.words[y].push_back(static_cast<int>(s));
      q.push(y);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    fail(ErrorKind::Internal, "generators do not generate " + g.spec);
  return g;
}

std::string power_label(const std::string& x, long i) {
  if (i == 0) return "";
  if (i == 1) return x;
  return x + "^" + std::to_string(i);
}

std::string join_label(std::string a, const std::string& b) {
  if (a.empty()) return b.empty() ? "1" : b;
  if (b.empty()) return a;
  return a + b;
}

long primitive_root(long p) {
  for (long g = 2; g < p; ++g) {
    long x = 1;
    int k = 0;
    do {
      x = x * g % p;
      ++k;
    } while (x != 1);
    if (k == p - 1) return g;
  }
  return 1;
}

}  // namespace

int FiniteGroup::pow(int a, long k) const {
  int n = elem_order(a);
  k = mod(k, n);
  int r = 0;
  for (long i = 0; i < k; ++i) r = table[r][a];
  return r;
}

int FiniteGroup::elem_order(int a) const {
  int k = 1, x = a;
  while (x != 0) {
    x = table[x][a];
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < a; ++b)
      if (table[a][b] != table[b][a]) return false;
  return true;
}

std::vector<int> FiniteGroup::generated(const std::vector<int>& elems) const {
  std::vector<bool> in(order(), false);
  std::vector<int> out{0};
  in[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s : elems) {
      int y = table[out[i]][s];
      if (!in[y]) {
        in[y] = true;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroup::is_subgroup(const std::vector<int>& elems) const {
  std::vector<bool> in(order(), false);
  for (int x : elems) in[x] = true;
  if (!in[0]) return false;
  for (int a : elems)
    for (int b : elems)
      if (!in[table[a][b]]) return false;
  return true;
}

bool FiniteGroup::is_normal(const std::vector<int>& sub) const {
  std::vector<bool> in(order(), false);
  for (int x : sub) in[x] = true;
  for (int g = 0; g < order(); ++g)
    for (int h : sub)
      if (!in[table[table[g][h]][inverse[g]]]) return false;
  return true;
}

FiniteGroup cyclic_group(int n) {
  if (n < 1) fail(ErrorKind::BadSpec, "cyclic group needs n >= 1");
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(join_label(power_label("g", i), ""));
  std::vector<int> gens;
  if (n > 1) gens.push_back(1);
  return finish("C" + std::to_string(n), n, [n](int a, int b) { return (a + b) % n; }, gens,
                n > 1 ? std::vector<std::string>{"g"} : std::vector<std::string>{}, labels);
}

FiniteGroup mu_group(long ell) {
  if (!is_prime(ell)) fail(ErrorKind::BadSpec, "mu needs a prime");
  int n = static_cast<int>(ell);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(join_label(power_label("z", i), ""));
  return finish("mu" + std::to_string(ell), n, [n](int a, int b) { return (a + b) % n; }, {1}, {"z"},
                labels);
}

FiniteGroup quaternion_group(int m) {
  if (m < 2) fail(ErrorKind::BadSpec, "quaternion group needs m >= 2");
  const int n2 = 2 * m;
  // a^i b^j stored as i + 2m j
  auto mul = [n2, m](int x, int y) {
    int i = x % n2, j = x / n2, k = y % n2, l = y / n2;
    int a = j ? i - k : i + k;
    int b = j + l;
    if (b == 2) {
      a += m;
      b = 0;
    }
    return static_cast<int>(mod(a, n2)) + n2 * b;
  };
  std::vector<std::string> labels;
  for (int x = 0; x < 2 * n2; ++x)
    labels.push_back(join_label(power_label("a", x % n2), power_label("b", x / n2)));
  return finish("Q" + std::to_string(m), 2 * n2, mul, {1, n2}, {"a", "b"}, labels);
}

FiniteGroup np_group(long p) {
  if (!is_prime(p)) fail(ErrorKind::BadSpec, "N_p needs a prime p");
  if (p == 2) {
    FiniteGroup g = quaternion_group(2);
    g.spec = "N2";
    return g;
  }
  const long gen = primitive_root(p);
  const long c_ord = 2 * (p - 1);
  std::vector<long> gpow(c_ord);
  gpow[0] = 1;
  for (long j = 1; j < c_ord; ++j) gpow[j] = gpow[j - 1] * gen % p;
  // x^i c^j stored as i + p j; c x c^-1 = x^gen
  auto mul = [p, c_ord, gpow](int u, int v) {
    long i = u % p, j = u / p, k = v % p, l = v / p;
    return static_cast<int>(mod(i + gpow[j] * k, p) + p * ((j + l) % c_ord));
  };
  std::vector<std::string> labels;
  for (long u = 0; u < p * c_ord; ++u)
    labels.push_back(join_label(power_label("x", u % p), power_label("c", u / p)));
  return finish("N" + std::to_string(p), static_cast<int>(p * c_ord), mul, {1, static_cast<int>(p)},
                {"x", "c"}, labels);
}

FiniteGroup direct_product(const std::vector<FiniteGroup>& parts) {
  if (parts.empty()) return cyclic_group(1);
  if (parts.size() == 1) return parts[0];
  std::vector<int> sizes;
  int n = 1;
  std::string spec;
  for (const auto& p : parts) {
    sizes.push_back(p.order());
    n *= p.order();
    spec += (spec.empty() ? "" : "x") + p.spec;
  }
  auto split = [&](int x) {
    std::vector<int> c(parts.size());
    for (std::size_t i = parts.size(); i-- > 0;) {
      c[i] = x % sizes[i];
      x /= sizes[i];
    }
    return c;
  };
  auto join = [&](const std::vector<int>& c) {
    int x = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) x = x * sizes[i] + c[i];
    return x;
  };
  auto mul = [&](int a, int b) {
    auto ca = split(a), cb = split(b);
    for (std::size_t i = 0; i < parts.size(); ++i) ca[i] = parts[i].table[ca[i]][cb[i]];
    return join(ca);
  };
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t s = 0; s < parts[i].gens.size(); ++s) {
      std::vector<int> c(parts.size(), 0);
      c[i] = parts[i].gens[s];
      gens.push_back(join(c));
      names.push_back(parts[i].gen_names[s]);
    }
  std::vector<std::string> labels;
  for (int x = 0; x < n; ++x) {
    auto c = split(x);
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i].labels[c[i]];
    labels.push_back(s + ")");
  }
  return finish(spec, n, mul, gens, names, labels);
}

FiniteGroup build_group(const std::string& spec) {
  std::vector<FiniteGroup> parts;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t end = spec.find('x', start);
    std::string tok = spec.substr(start, end == std::string::npos ? std::string::npos : end - start);
    std::string fam, num;
    for (char ch : tok) (std::isdigit(static_cast<unsigned char>(ch)) ? num : fam) += ch;
    if (num.empty() || tok != fam + num) fail(ErrorKind::BadSpec, "bad group spec '" + spec + "'");
    long v = std::stol(num);
    if (fam == "C")
      parts.push_back(cyclic_group(static_cast<int>(v)));
    else if (fam == "Q")
      parts.push_back(quaternion_group(static_cast<int>(v)));
    else if (fam == "N")
      parts.push_back(np_group(v));
    else if (fam == "mu")
      parts.push_back(mu_group(v));
    else
      fail(ErrorKind::BadSpec, "unknown group family '" + fam + "'");
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return direct_product(parts);
}

FiniteGroup quotient_group(const FiniteGroup& g, const std::vector<int>& sub) {
  if (!g.is_subgroup(sub) || !g.is_normal(sub)) fail(ErrorKind::BadParameters, "not a normal subgroup");
  std::vector<int> coset(g.order(), -1);
  std::vector<int> rep;
  for (int x = 0; x < g.order(); ++x) {
    if (coset[x] >= 0) continue;
    int id = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int h : sub) coset[g.mul(x, h)] = id;
  }
  std::vector<int> gens;
  std::vector<std::string> names;
  for (std::size_t s = 0; s < g.gens.size(); ++s) {
    int c = coset[g.gens[s]];
    if (c != 0 && std::find(gens.begin(), gens.end(), c) == gens.end()) {
      gens.push_back(c);
      names.push_back(g.gen_names[s]);
    }
  }
  std::vector<std::string> labels;
  for (int r : rep) labels.push_back(g.labels[r] + "H");
  return finish(g.spec + "/H", static_cast<int>(rep.size()),
                [&](int a, int b) { return coset[g.mul(rep[a], rep[b])]; }, gens, names, labels);
}

std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a; b < g.order(); ++b) {
      auto h = g.generated({a, b});
      if (g.is_normal(h)) found.insert(h);
    }
  return {found.begin(), found.end()};
}

Classification classify(const FiniteGroup& g, long p, long ell) {
  if (!is_prime(p) || !is_prime(ell)) fail(ErrorKind::BadParameters, "p and ell must be prime");
  if (p == ell) fail(ErrorKind::BadParameters, "ell must differ from p");
  const int n = g.order();
  auto prime_power_order = [&](int x, long q) {
    long o = g.elem_order(x);
    while (o % q == 0) o /= q;
    return o == 1;
  };
  auto coprime_order = [&](int x, long q) { return g.elem_order(x) % q != 0; };
  // order of xS in G/S
  auto coset_order = [&](int x, const std::vector<bool>& in) {
    int k = 1, y = x;
    while (!in[y]) {
      y = g.mul(y, x);
      ++k;
    }
    return k;
  };
  auto has_cyclic_quotient = [&](const std::vector<int>& s) {
    std::vector<bool> in(n, false);
    for (int x : s) in[x] = true;
    int idx = n / static_cast<int>(s.size());
    for (int x = 0; x < n; ++x)
      if (coset_order(x, in) == idx) return true;
    return false;
  };

  Classification c;
  std::vector<int> h;
  for (int x = 0; x < n; ++x)
    if (prime_power_order(x, p)) h.push_back(x);
  long ppart = 1;
  for (long m = n; m % p == 0; m /= p) ppart *= p;
  if (static_cast<long>(h.size()) == ppart && g.is_subgroup(h) && has_cyclic_quotient(h)) {
    c.inertia_type = true;
    c.H = h;
  }

  std::vector<int> nn;
  for (int x = 0; x < n; ++x)
    if (coprime_order(x, ell)) nn.push_back(x);
  long idx = n / static_cast<long>(nn.size());
  long t = idx;
  while (t % ell == 0) t /= ell;
  if (t == 1 && n % nn.size() == 0 && g.is_subgroup(nn) && has_cyclic_quotient(nn)) {
    for (int x = 0; x < n; ++x)
      if (g.elem_order(x) == idx) {
        c.d_ell_split = DEllSplit{nn, g.generated({x})};
        break;
      }
  }
  return c;
}

}  // namespace lladic
