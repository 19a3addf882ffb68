#include "lladic/sharpness.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "lladic/errors.hpp"

namespace lladic {

namespace {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Mat standard_symplectic(RingRef k, int n) {
  Mat j(k, n, n);
  for (int i = 0; i + 1 < n; i += 2) {
    j(i, i + 1) = k->one();
    j(i + 1, i) = -k->one();
  }
  return j;
}

// x in M acting on W (x) M.
Mat r_op(const CounterexampleSetting& s, const Elem& x) {
  return Mat::kron(Mat::identity(s.K, s.w.rep.dim), mult_matrix(x));
}

// delta_j = (eta etabar)^j written as num / ell^k with num integral in M+.
struct DeltaRep {
  Elem num;
  int k = 0;
};

DeltaRep delta_rep(RingRef m, int j) {
  Elem u = *m->eta() * m->eta()->conj();
  if (j >= 0) return {u.pow(j), 0};
  int h = m->e() / 2;  // u^h has the valuation of ell
  Elem c = m->from_int(m->ell()).div(u.pow(h));
  int k = (-j + h - 1) / h;
  return {u.pow(j + k * h) * c.pow(k), k};
}

// ell^-k as pi_K^-(k e) times a unit of K.
Elem ell_unit_inv(RingRef k, int pw) {
  if (pw == 0) return k->one();
  return k->from_int(k->ell()).pow(pw).div(k->pi().pow(static_cast<unsigned long>(pw) * k->e())).inv();
}

struct CellInput {
  Mat delta_op;
  int extra = 0;
};

CellInput delta_input(const CounterexampleSetting& s, int j) {
  DeltaRep d = delta_rep(s.M, j);
  Mat op = r_op(s, d.num);
  if (d.k > 0) op = op.scaled(ell_unit_inv(s.K, d.k));
  return {op, d.k * s.K->e()};
}

CellInput control_input(RingRef k, int n, int j) {
  if (j >= 0) return {Mat::identity(k, n).scaled(k->pi().pow(j)), 0};
  return {Mat::identity(k, n), -j};
}

bool cell_integral(const ObstructionCell& c) { return c.integral; }

int exponent_sum(const ObstructionCell& c) {
  if (static_cast<int>(c.exponents.size()) < c.gram.rows()) return kInfVal;
  return std::accumulate(c.exponents.begin(), c.exponents.end(), 0);
}

template <class F>
std::vector<ObstructionCell> scan_window(int r, F&& cell_at) {
  // first j with integral Gram
  int j = 0;
  ObstructionCell c = cell_at(r, j);
  if (cell_integral(c)) {
    for (int step = 0; step < 400; ++step) {
      ObstructionCell prev = cell_at(r, j - 1);
      if (!cell_integral(prev)) break;
      --j;
      c = prev;
    }
  } else {
    for (int step = 0; step < 400 && !cell_integral(c); ++step) c = cell_at(r, ++j);
    if (!cell_integral(c)) fail(ErrorKind::Internal, "no integral delta found");
  }
  std::vector<ObstructionCell> out;
  out.push_back(cell_at(r, j - 1));
  out.push_back(c);
  int jj = j + 1;
  for (;;) {
    ObstructionCell n = cell_at(r, jj);
    out.push_back(n);
    if (exponent_sum(n) > 0 || jj > j + 400) break;
    ++jj;
  }
  return out;
}

Elem random_unit(RingRef m, RingRef k, int mplus_degree, std::mt19937& rng) {
  std::uniform_int_distribution<long> dig(0, m->ell() - 1);
  Elem w = *m->w();
  for (;;) {
    Elem u = m->zero();
    for (int i = 0; i < mplus_degree; ++i)
      for (int t = 0; t < k->dim(); ++t) {
        std::vector<mpz_class> c(static_cast<std::size_t>(k->dim()));
        c[static_cast<std::size_t>(t)] = dig(rng);
        u += m->lift(Elem(k, c, k->cap())) * w.pow(i);
      }
    if (u.is_unit()) return u;
  }
}

bool same_shape(const ObstructionCell& a, const ObstructionCell& b) {
  return a.integral == b.integral && (!a.integral || a.exponents == b.exponents);
}

Mat random_matrix(RingRef k, int n, std::mt19937& rng) {
  std::uniform_int_distribution<long> dig(-30, 30);
  Mat a(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = k->from_int(dig(rng));
  return a;
}

void check_split(const CounterexampleSetting& s, ObstructionCertificate& cert) {
  const RingRef k = s.K;
  const Mat& tau = *s.tau;
  const int n = tau.rows();
  const int dv = s.v.rep.dim;
  TrivialSplit sp;
  sp.tau_idempotent = (tau * tau).equals(tau);
  Mat proj(k, n, n);
  proj.set_block(dv, dv, Mat::identity(k, n - dv));
  sp.tau_is_projection = tau.equals(proj);
  Lattice t = Lattice::standard(k, n);
  Mat one_minus = Mat::identity(k, n) - tau;
  // T1 = (1 - tau) T and T2 = tau T have complementary supports; together they generate T
  {
    Mat b1 = (one_minus * t.basis()).cols_range(0, dv);
    Mat b2 = (tau * t.basis()).cols_range(dv, n);
    sp.direct_sum = Lattice::from_generators(Mat::hcat(b1, b2), t.denom()) == t && b1.block(dv, 0, n - dv, dv).is_zero() &&
                    b2.block(0, 0, dv, n - dv).is_zero();
    auto forms = invariant_forms(s.u->rep, Symmetry::Alternating);
    sp.forms_checked = static_cast<int>(forms.size());
    sp.cross_pairing_zero = !forms.empty();
    for (const auto& f : forms)
      if (!(b1.transpose() * f * b2).is_zero()) sp.cross_pairing_zero = false;
  }
  cert.split = sp;
}

}  // namespace

const char* setting_name(SettingKind k) {
  switch (k) {
    case SettingKind::Prop61: return "prop61";
    case SettingKind::Thm62: return "thm62";
    case SettingKind::Cor64: return "cor64";
    case SettingKind::Thm66: return "thm66";
    case SettingKind::Thm65Residue: return "thm65";
    case SettingKind::AbVar71: return "abvar";
  }
  return "?";
}

SettingKind setting_from_name(const std::string& s) {
  for (auto k : {SettingKind::Prop61, SettingKind::Thm62, SettingKind::Cor64, SettingKind::Thm66,
                 SettingKind::Thm65Residue, SettingKind::AbVar71})
    if (s == setting_name(k)) return k;
  fail(ErrorKind::BadSpec, "unknown setting kind " + s);
}

CounterexampleSetting build_counterexample(SettingKind kind, long ell, long p, int b) {
  if (ell < 3 || !is_prime(ell)) fail(ErrorKind::BadParameters, "ell must be an odd prime");
  CounterexampleSetting s;
  s.kind = kind;
  s.ell = ell;
  s.p = p;
  s.b = b;
  if (kind == SettingKind::Prop61) {
    s.K = Ring::base(ell);
    s.w = RepWithForm{trivial_rep(cyclic_group(1), s.K, 1), BilinearForm{Mat::identity(s.K, 1), 0, Symmetry::Symmetric}};
    s.v = mu_ell_regular(s.K);
    s.sym = Symmetry::Symmetric;
  } else {
    if (p == ell || !is_prime(p)) fail(ErrorKind::BadParameters, "p must be a prime different from ell");
    RepWithForm w0 = quaternion_module(ell, p);
    if (kind == SettingKind::Thm66 || kind == SettingKind::Thm65Residue) {
      s.K = Ring::real_cyclotomic(w0.rep.ring);
      s.w = extend_scalars(w0, s.K);
    } else {
      s.K = w0.rep.ring;
      s.w = w0;
    }
    RepWithForm m = mu_ell_regular(s.K);
    s.v = tensor_rep(s.w.rep, *s.w.form, m.rep, *m.form);
    s.sym = Symmetry::Alternating;
  }
  s.M = Ring::cyclotomic(s.K);
  s.s = Lattice::standard(s.K, s.v.rep.dim);
  s.form_space = invariant_forms(s.v.rep, s.sym);
  s.mplus_degree = s.M->rel_degree() / 2;
  s.d = s.v.rep.dim / 2;
  s.e = s.K->e();
  if (kind == SettingKind::Cor64 || (kind == SettingKind::AbVar71 && b > 0)) {
    if (b < 1) fail(ErrorKind::BadParameters, "the split setting needs b >= 1");
    RepWithForm triv{trivial_rep(s.v.rep.group, s.K, 2 * b),
                     BilinearForm{standard_symplectic(s.K, 2 * b), 0, Symmetry::Alternating}};
    s.u = direct_sum_rep({s.v, triv});
    const int n = s.u->rep.dim;
    Mat sum(s.K, n, n);
    int count = 0;
    for (int x = 0; x < s.u->rep.group.order(); ++x)
      if (x % ell == 0) {
        sum = sum + s.u->rep.image(x);
        ++count;
      }
    s.tau = sum.scaled(s.K->from_int(count).inv());
    s.d = n / 2;
  }
  return s;
}

ObstructionCell obstruction_cell(const Mat& f, int fden, const Mat& basis, const Mat& delta_op, int extra_denom, int r,
                                 int j) {
  ObstructionCell c;
  c.r = r;
  c.j = j;
  c.gram = basis.transpose() * delta_op.transpose() * f * basis;
  c.denom = fden + extra_denom;
  c.delta_op = delta_op;
  c.extra = extra_denom;
  int mv = c.gram.min_val();
  c.integral = mv >= c.denom;
  c.exponents = scaled_exponents(c.gram, c.denom);
  c.perfect = c.integral && static_cast<int>(c.exponents.size()) == c.gram.rows() &&
              std::all_of(c.exponents.begin(), c.exponents.end(), [](int e) { return e == 0; });
  return c;
}

bool ObstructionCertificate::verified() const {
  bool split_ok = !split || (split->tau_idempotent && split->tau_is_projection && split->direct_sum &&
                             split->cross_pairing_zero);
  return all_obstructed && shift_identity && unit_invariance && (trace_containment || !trace_containment_applicable) &&
         form_space_dimension && lattice_classification && split_ok;
}

ObstructionCertificate no_perfect_pairing_oracle(const CounterexampleSetting& s, unsigned seed, bool parallel) {
  if (s.kind == SettingKind::Thm65Residue)
    fail(ErrorKind::BadParameters, "the residue setting has its own check");
  ObstructionCertificate cert;
  cert.setting = setting_name(s.kind);
  cert.precision = s.K->N();
  const BilinearForm& f = *s.v.form;
  const Mat eta_op = r_op(s, *s.M->eta());
  const Mat& sb = s.s.basis();
  cert.r_count = s.M->e();

  std::vector<Mat> bases(static_cast<std::size_t>(cert.r_count));
  bases[0] = sb;
  for (int r = 1; r < cert.r_count; ++r) bases[static_cast<std::size_t>(r)] = eta_op * bases[static_cast<std::size_t>(r - 1)];

  auto cell_at = [&](int r, int j) {
    CellInput in = delta_input(s, j);
    return obstruction_cell(f.gram, f.denom, bases[static_cast<std::size_t>(r)], in.delta_op, in.extra, r, j);
  };

  std::vector<std::vector<ObstructionCell>> rows(static_cast<std::size_t>(cert.r_count));
  ParallelErrors errs;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int r = 0; r < cert.r_count; ++r) errs.run([&] { rows[static_cast<std::size_t>(r)] = scan_window(r, cell_at); });
  errs.rethrow();
  for (auto& row : rows)
    for (auto& c : row) cert.cells.push_back(std::move(c));

  cert.all_obstructed = std::none_of(cert.cells.begin(), cert.cells.end(), [](const ObstructionCell& c) { return c.perfect; });

  // shifting the lattice by eta^r is the same as shifting delta by (eta etabar)^r
  cert.shift_identity = true;
  for (const auto& c : cert.cells) {
    if (c.r == 0) continue;
    ObstructionCell z = cell_at(0, c.j + c.r);
    bool ok = same_shape(c, z);
    if (c.j >= 0) ok = ok && c.gram.equals(z.gram) && c.denom == z.denom;
    if (!ok) cert.shift_identity = false;
  }

  std::mt19937 rng(seed);
  cert.unit_invariance = true;
  for (int t = 0; t < 10; ++t) {
    const auto& c = cert.cells[static_cast<std::size_t>(t) % cert.cells.size()];
    Elem u = random_unit(s.M, s.K, s.mplus_degree, rng);
    CellInput in = delta_input(s, c.j);
    ObstructionCell cu = obstruction_cell(f.gram, f.denom, bases[static_cast<std::size_t>(c.r)], r_op(s, u) * in.delta_op,
                                          in.extra, c.r, c.j);
    if (!same_shape(c, cu)) cert.unit_invariance = false;
  }

  cert.trace_containment_applicable = s.K->e() == 1 && s.kind != SettingKind::Prop61;
  if (cert.trace_containment_applicable) {
    cert.trace_containment = true;
    Mat shift = mat_pow(eta_op, static_cast<unsigned long>(s.ell - 2));
    for (const auto& c : cert.cells) {
      if (c.r != 0 || !c.integral) continue;
      CellInput in = delta_input(s, c.j);
      Mat g = (shift * sb).transpose() * in.delta_op.transpose() * f.gram * sb;
      if (g.min_val() < c.denom + s.K->e()) cert.trace_containment = false;
    }
  }

  cert.form_space_dimension = static_cast<int>(s.form_space.size()) == s.mplus_degree;

  // random stable lattices are eta-power shifts of S
  cert.lattice_classification = true;
  const int dimw = s.w.rep.dim;
  for (int t = 0; t < 3; ++t) {
    Mat g = random_matrix(s.K, s.v.rep.dim, rng);
    Lattice l = stable_lattice(s.v.rep, Lattice::from_generators(g, 0), parallel);
    int diff = l.volume() - s.s.volume();
    if (diff % dimw != 0) {
      cert.lattice_classification = false;
      continue;
    }
    int sh = diff / dimw;
    int er = s.M->e_rel();
    int q = sh >= 0 ? sh / er : -((-sh + er - 1) / er);
    int rem = sh - q * er;
    Lattice cand = s.s.apply(mat_pow(eta_op, static_cast<unsigned long>(rem))).scaled(q);
    if (cand != l) cert.lattice_classification = false;
  }

  if (s.u) check_split(s, cert);
  return cert;
}

ObstructionCertificate positive_control(const CounterexampleSetting& s, bool parallel) {
  (void)parallel;
  ObstructionCertificate cert;
  cert.setting = std::string(setting_name(s.kind)) + "-control";
  cert.precision = s.K->N();
  cert.r_count = 1;
  const BilinearForm& f = *s.w.form;
  const int n = s.w.rep.dim;
  Mat basis = Mat::identity(s.K, n);
  auto cell_at = [&](int r, int j) {
    CellInput in = control_input(s.K, n, j);
    return obstruction_cell(f.gram, f.denom, basis, in.delta_op, in.extra, r, j);
  };
  cert.cells = scan_window(0, cell_at);
  cert.all_obstructed = std::none_of(cert.cells.begin(), cert.cells.end(), [](const ObstructionCell& c) { return c.perfect; });
  cert.shift_identity = true;
  cert.unit_invariance = true;
  cert.form_space_dimension = true;
  cert.lattice_classification = true;
  return cert;
}

TraceContainment lemma311_check(const Elem& num, int k) {
  RingRef m = num.ring();
  if (m->kind() != RingKind::Cyclotomic) fail(ErrorKind::BadParameters, "delta must live in a cyclotomic ring");
  RingRef kk = m->parent();
  if (kk->e() != 1) fail(ErrorKind::BadParameters, "the containment is stated for unramified K");
  const long ell = m->ell();
  auto zb = m->zeta_basis();
  for (const auto& z : zb) {
    Elem t = m->trace_to_parent(num * z);
    if (!t.is_zero() && t.val() < k) fail(ErrorKind::PreconditionFailed, "tr(delta O_M) is not integral");
  }
  TraceContainment res;
  res.contained = true;
  Elem shift = m->eta()->pow(static_cast<unsigned long>(ell - 2));
  for (const auto& z : zb) {
    Elem t = m->trace_to_parent(num * shift * z);
    res.traces.push_back(t);
    if (!t.is_zero() && t.val() < k + 1) res.contained = false;
  }
  return res;
}

bool inverse_different_check(RingRef k) {
  if (k->e() != 1) fail(ErrorKind::BadParameters, "needs e(K) = 1");
  RingRef m = Ring::cyclotomic(k);
  auto zb = m->zeta_basis();
  const int n = static_cast<int>(zb.size());
  Mat g(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = m->trace_to_parent(zb[i] * zb[j]);
  Lattice dual = dual_lattice(Lattice::standard(k, n), BilinearForm{g, 0, Symmetry::Symmetric});
  Elem eta = *m->eta();
  Elem c = m->from_int(m->ell()).div(eta.pow(static_cast<unsigned long>(m->ell() - 1)));
  Elem unit = k->from_int(k->ell()).div(k->pi()).inv();  // ell = pi * unit
  Mat gens(k, n, n);
  for (int i = 0; i < n; ++i) {
    auto co = m->zeta_coords(eta * c * zb[i]);
    for (int r = 0; r < n; ++r) gens(r, i) = co[r] * unit;
  }
  return dual == Lattice::from_generators(gens, 1);
}

std::vector<FMat> finite_invariant_forms(const std::vector<FMat>& gens, Symmetry sym) {
  if (gens.empty()) fail(ErrorKind::BadParameters, "no generators");
  const Fq* F = gens[0].field();
  const int n = gens[0].rows();
  // unknowns: entries (i, j) with i < j for alternating, i <= j for symmetric, all for general
  std::vector<std::pair<int, int>> unk;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sym == Symmetry::Alternating && i >= j) continue;
      if (sym == Symmetry::Symmetric && i > j) continue;
      unk.push_back({i, j});
    }
  if (sym != Symmetry::Alternating && sym != Symmetry::Symmetric && sym != Symmetry::General)
    fail(ErrorKind::BadParameters, "unsupported symmetry over a finite field");
  auto basis_form = [&](std::size_t u) {
    FMat e(F, n, n);
    auto [i, j] = unk[u];
    e(i, j) = 1;
    if (sym == Symmetry::Alternating) e(j, i) = F->neg(1);
    if (sym == Symmetry::Symmetric) e(j, i) = 1;
    return e;
  };
  const int nu = static_cast<int>(unk.size());
  FMat eq(F, static_cast<int>(gens.size()) * n * n, nu);
  for (int u = 0; u < nu; ++u) {
    FMat e = basis_form(static_cast<std::size_t>(u));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      FMat d = gens[g].transpose() * e * gens[g] - e;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eq(static_cast<int>(g) * n * n + i * n + j, u) = d(i, j);
    }
  }
  FMat ker = eq.kernel();
  std::vector<FMat> out;
  for (int c = 0; c < ker.cols(); ++c) {
    FMat f(F, n, n);
    for (int u = 0; u < nu; ++u) {
      if (ker(u, c) == 0) continue;
      FMat e = basis_form(static_cast<std::size_t>(u));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) f(i, j) = F->add(f(i, j), F->mul(ker(u, c), e(i, j)));
    }
    out.push_back(f);
  }
  return out;
}

namespace {

FMat lin_comb(const std::vector<FMat>& basis, const std::vector<long>& c) {
  const Fq* F = basis[0].field();
  FMat f(F, basis[0].rows(), basis[0].cols());
  for (std::size_t s = 0; s < basis.size(); ++s)
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j) f(i, j) = F->add(f(i, j), F->mul(c[s], basis[s](i, j)));
  return f;
}

// Visit every element of the span; stops early when fn returns false.
template <class Fn>
long enumerate_span(const std::vector<FMat>& basis, long q, Fn&& fn) {
  std::vector<long> c(basis.size(), 0);
  long count = 0;
  for (;;) {
    ++count;
    if (!fn(lin_comb(basis, c))) return count;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == q) c[i++] = 0;
    if (i == c.size()) return count;
  }
}

long ipow(long b, std::size_t e) {
  long r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (r > (1L << 40) / std::max(b, 1L)) return -1;
    r *= b;
  }
  return r;
}

}  // namespace

ResidueObstruction no_residue_symplectic_embedding(long ell, long p, long max_enum) {
  CounterexampleSetting s = build_counterexample(SettingKind::Thm65Residue, ell, p);
  ResidueObstruction res;
  res.ell = ell;
  const Fq& F = Fq::residue_field(s.K);
  res.field_size = F.size();
  const int t2 = s.w.rep.dim;
  res.dim = 2 * t2;

  std::vector<FMat> wbar;
  for (const auto& a : s.w.rep.gen_images) wbar.push_back(FMat::reduce(&F, a));
  std::vector<FMat> gens;
  for (const auto& a : wbar) {
    FMat d(&F, res.dim, res.dim);
    for (int i = 0; i < t2; ++i)
      for (int j = 0; j < t2; ++j) {
        d(i, j) = a(i, j);
        d(t2 + i, t2 + j) = a(i, j);
      }
    gens.push_back(d);
  }
  FMat c = FMat::identity(&F, res.dim);
  for (int i = 0; i < t2; ++i) c(i, t2 + i) = 1;
  gens.push_back(c);

  res.ring = s.K->spec();
  res.generators = gens;
  res.solutions = finite_invariant_forms(gens, Symmetry::Alternating);
  res.solution_dim = static_cast<int>(res.solutions.size());

  res.identity1 = res.identity2 = res.h_zero = true;
  for (const auto& f : res.solutions) {
    FMat top = f.block(0, 0, t2, t2);
    FMat h = f.block(0, t2, t2, t2);
    if (top != FMat(&F, t2, t2)) res.identity1 = false;
    if (h != h.transpose()) res.identity2 = false;
    if (h != FMat(&F, t2, t2)) res.h_zero = false;
  }

  long space = ipow(F.size(), res.solutions.size());
  if (res.solutions.empty()) {
    res.exhaustive = true;
    res.enumerated = 1;
    res.all_degenerate = true;
  } else if (space >= 0 && space <= max_enum) {
    res.exhaustive = true;
    bool all = true;
    res.enumerated = enumerate_span(res.solutions, F.size(), [&](const FMat& f) {
      if (f.det() != 0) all = false;
      return all;
    });
    res.all_degenerate = all;
  } else {
    if (!(res.identity1 && res.h_zero))
      fail(ErrorKind::SearchSpaceTooLarge, "solution space too large and the structural identities fail");
    res.all_degenerate = true;  // the first t2 rows of every solution vanish
  }

  // tr rho(n zeta^i) = tr W(n) tr_{M/K}(zeta^i) reduces to 2 tr Wbar(n)
  res.trace_congruence = true;
  const Representation& vr = s.v.rep;
  const FiniteGroup& wg = s.w.rep.group;
  for (int x = 0; x < vr.group.order(); ++x) {
    int n = x / static_cast<int>(ell);
    int i = x % static_cast<int>(ell);
    const Mat& img = vr.image(x);
    Elem tr = s.K->zero();
    for (int a = 0; a < img.rows(); ++a) tr += img(a, a);
    const Mat& wi = s.w.rep.image(n);
    Elem trw = s.K->zero();
    for (int a = 0; a < wi.rows(); ++a) trw += wi(a, a);
    long lhs = F.reduce(tr);
    long rhs = F.mul(F.from_int(2), F.reduce(trw));
    // the candidate residue representation on W0 + W0
    FMat cand = FMat::identity(&F, res.dim);
    for (int gi : wg.words[static_cast<std::size_t>(n)]) cand = cand * gens[static_cast<std::size_t>(gi)];
    for (int k = 0; k < i; ++k) cand = cand * c;
    long ct = 0;
    for (int a = 0; a < res.dim; ++a) ct = F.add(ct, cand(a, a));
    if (lhs != rhs || ct != rhs) res.trace_congruence = false;
  }

  // a unipotent preserves no nondegenerate symmetric form
  const Fq& Fl = Fq::prime(ell);
  FMat u = FMat::identity(&Fl, 2);
  u(0, 1) = 1;
  auto sym = finite_invariant_forms({u}, Symmetry::Symmetric);
  bool deg = true;
  if (!sym.empty())
    enumerate_span(sym, Fl.size(), [&](const FMat& f) {
      if (f.det() != 0) deg = false;
      return deg;
    });
  res.unipotent_degenerate = deg;
  return res;
}

AbVarScenario abvar_scenario(long p, long ell, int b, bool parallel) {
  if (p != 2 && p != 3) fail(ErrorKind::BadParameters, "only p in {2, 3} is supported");
  if (ell < 3 || !is_prime(ell)) fail(ErrorKind::BadParameters, "ell must be an odd prime");
  if ((p * (p - 1)) % ell == 0) fail(ErrorKind::BadParameters, "ell divides p(p-1)");
  if (b < 0) fail(ErrorKind::BadParameters, "b must be non-negative");
  AbVarScenario a;
  a.p = p;
  a.ell = ell;
  a.b = b;
  a.r = p == 2 ? 1 : static_cast<int>((p - 1) / 2);
  a.d = a.r * static_cast<int>(ell - 1) + b;
  CounterexampleSetting s = build_counterexample(b == 0 ? SettingKind::Thm62 : SettingKind::Cor64, ell, p, b);
  s.kind = SettingKind::AbVar71;
  a.obstruction = no_perfect_pairing_oracle(s, 1, parallel);
  a.obstruction.setting = setting_name(SettingKind::AbVar71);
  const std::string l = std::to_string(ell);
  a.conclusions = {
      "no G-stable Z_" + l + "-lattice in V_" + l + "(B) carries a perfect alternating G-invariant pairing",
      "hence no invertible sheaf L with phi_L defined over F_0 has " + l + " prime to chi(L)",
      "hence " + l + " divides chi(L) for every such L, and every F_0-polarization has degree divisible by " + l,
  };
  a.verified = a.obstruction.verified() && s.d == a.d;
  a.setting = std::move(s);
  return a;
}

}  // namespace lladic
