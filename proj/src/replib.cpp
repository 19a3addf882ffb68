#include "lladic/replib.hpp"

#include <algorithm>

#include "lladic/finite_field.hpp"
#include "lladic/padic.hpp"

namespace lladic {

namespace {

Mat apply_conj(const Mat& a, bool sesq) { return sesq ? a.conj() : a; }

Mat twisted(const Mat& a, const Mat& f, bool sesq) { return a.transpose() * f * apply_conj(a, sesq); }

}  // namespace

Representation make_representation(FiniteGroup g, RingRef r, std::vector<Mat> gen_images, int dim) {
  if (gen_images.size() != g.gens.size()) fail(ErrorKind::BadParameters, "one image per generator expected");
  Representation rep;
  rep.ring = r;
  rep.dim = gen_images.empty() ? dim : gen_images[0].rows();
  if (rep.dim < 0) fail(ErrorKind::BadParameters, "dimension unknown for a group without generators");
  rep.gen_images = std::move(gen_images);
  rep.group = std::move(g);
  const int n = rep.group.order();
  rep.images.assign(n, Mat::identity(r, rep.dim));
  // words are BFS-ordered, so a word's prefix is processed before it
  std::vector<int> order(n);
  for (int x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rep.group.words[a].size() < rep.group.words[b].size(); });
  for (int x : order) {
    const auto& w = rep.group.words[x];
    if (w.empty()) continue;
    int prefix = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) prefix = rep.group.mul(prefix, rep.group.gens[w[i]]);
    rep.images[x] = rep.images[prefix] * rep.gen_images[w.back()];
  }
  bool ok = true;
  ParallelErrors errs;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
  for (int x = 0; x < n; ++x)
    errs.run([&] {
      for (std::size_t s = 0; s < rep.gen_images.size(); ++s)
        if (!(rep.images[x] * rep.gen_images[s]).equals(rep.images[rep.group.mul(x, rep.group.gens[s])])) ok = false;
    });
  errs.rethrow();
  if (!ok) fail(ErrorKind::BadParameters, "matrices do not satisfy the relations of " + rep.group.spec);
  return rep;
}

Mat power_basis_mult(const Elem& x) {
  RingRef m = x.ring();
  const int d = m->rel_degree();
  Mat out(m->parent(), d, d);
  Elem g = m->one();
  for (int j = 0; j < d; ++j) {
    Elem y = x * g;
    for (int i = 0; i < d; ++i) out(i, j) = m->coefficient(y, i);
    g = g * m->generator();
  }
  return out;
}

namespace {

long quaternion_q(long ell, long p) {
  if (ell % 2 == 0 || ell == p) fail(ErrorKind::BadParameters, "ell must be an odd prime different from p");
  return p == 2 ? 4 : p;
}

FiniteGroup quaternion_for(long p) { return p == 2 ? quaternion_group(2) : quaternion_group(static_cast<int>(p)); }

BilinearForm det_form(RingRef k) { return {Mat::from_ints(k, {{0, 1}, {-1, 0}}), 0, Symmetry::Alternating}; }

}  // namespace

RepWithForm quaternion_split(long ell, long p, RingRef k) {
  long q = quaternion_q(ell, p);
  if (!k) k = Ring::base(ell);
  if (k->ell() != ell) fail(ErrorKind::BadParameters, "ring has the wrong residue characteristic");
  Elem z;
  try {
    z = k->root_of_unity(q);
  } catch (const Error&) {
    fail(ErrorKind::BadParameters, "zeta_" + std::to_string(q) + " is not in " + k->spec());
  }
  Mat a(k, 2, 2);
  a(0, 0) = z;
  a(1, 1) = z.inv();
  a(0, 1) = a(1, 0) = k->zero();
  if (p != 2) a = -a;
  Mat b = Mat::from_ints(k, {{0, -1}, {1, 0}});
  RepWithForm out{make_representation(quaternion_for(p), k, {a, b}), det_form(k)};
  out.rep.blocks = {{"W", 2, 1, false}};
  return out;
}

RepWithForm quaternion_nonsplit(long ell, long p) {
  long q = quaternion_q(ell, p);
  if ((ell + 1) % q != 0) fail(ErrorKind::BadParameters, "nonsplit construction needs ell = -1 mod q");
  RingRef f = Ring::unramified(ell, q);
  RingRef k = f->parent();
  Elem z = f->generator();
  // alpha0 with a unit norm that is -1 times a square; rescale by a square root
  std::optional<Elem> alpha;
  for (long a = 0; a < ell && !alpha; ++a)
    for (long b = 0; b < ell && !alpha; ++b) {
      Elem a0 = f->from_int(a) + f->from_int(b) * z;
      Elem nm = f->norm_to_parent(a0);
      if (!nm.is_unit()) continue;
      Elem c = -(nm.inv());
      PadicInt cp(ell, c.coeffs()[0], k->N());
      // c must be a square mod ell
      mpz_class cr = cp.residue() % ell;
      bool square = false;
      mpz_class x0;
      for (long t = 1; t < ell && !square; ++t)
        if ((mpz_class(t * t) - cr) % ell == 0) {
          square = true;
          x0 = t;
        }
      if (!square) continue;
      ZPoly poly{-cp.residue(), 0, 1};
      PadicInt s = hensel_root(poly, PadicInt(ell, x0, k->N()));
      alpha = a0 * f->from_int(s.residue());
    }
  if (!alpha) fail(ErrorKind::Internal, "no element of norm -1 found");
  Mat sigma(k, 2, 2);
  for (int j = 0; j < 2; ++j) {
    Elem y = (j == 0 ? f->one() : z).conj();
    for (int i = 0; i < 2; ++i) sigma(i, j) = f->coefficient(y, i);
  }
  Mat a = power_basis_mult(z);
  if (p != 2) a = -a;
  Mat tau = power_basis_mult(*alpha) * sigma;
  RepWithForm out{make_representation(quaternion_for(p), k, {a, tau}), det_form(k)};
  out.rep.blocks = {{"W", 2, 1, false}};
  return out;
}

RepWithForm quaternion_module(long ell, long p) {
  long q = quaternion_q(ell, p);
  if (ell % q == 1) return quaternion_split(ell, p);
  if ((ell + 1) % q == 0) return quaternion_nonsplit(ell, p);
  return quaternion_split(ell, p, Ring::unramified(ell, q));
}

RepWithForm mu_ell_regular(RingRef k) {
  RingRef m = Ring::cyclotomic(k);
  Mat gen = mult_matrix(*m->zeta());
  auto b = m->zeta_basis();
  const int n = static_cast<int>(b.size());
  Mat g(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = m->trace_to_parent(b[i] * b[j].conj());
  RepWithForm out{make_representation(mu_group(k->ell()), k, {gen}), BilinearForm{g, 0, Symmetry::Symmetric}};
  out.rep.blocks = {{"K(zeta)", n, 1, false}};
  return out;
}

Representation trivial_rep(const FiniteGroup& g, RingRef k, int n) {
  std::vector<Mat> imgs(g.gens.size(), Mat::identity(k, n));
  Representation r = make_representation(g, k, imgs, n);
  r.blocks = {{"trivial", 1, n, true}};
  return r;
}

RepWithForm tensor_rep(const Representation& r1, const BilinearForm& f1, const Representation& r2,
                       const BilinearForm& f2) {
  if (f1.sym != Symmetry::Alternating || f2.sym != Symmetry::Symmetric)
    fail(ErrorKind::SymmetryMismatch, "tensor construction needs an alternating and a symmetric form");
  if (r1.ring != r2.ring) fail(ErrorKind::BadParameters, "representations over different rings");
  RingRef k = r1.ring;
  FiniteGroup g = direct_product({r1.group, r2.group});
  std::vector<Mat> imgs;
  for (const auto& a : r1.gen_images) imgs.push_back(Mat::kron(a, Mat::identity(k, r2.dim)));
  for (const auto& b : r2.gen_images) imgs.push_back(Mat::kron(Mat::identity(k, r1.dim), b));
  RepWithForm out{make_representation(std::move(g), k, std::move(imgs)),
                  BilinearForm{Mat::kron(f1.gram, f2.gram), f1.denom + f2.denom, Symmetry::Alternating}};
  out.rep.blocks = {{"W(x)V2", r1.dim * r2.dim, 1, false}};
  if (!out.form->check_symmetry() || !form_is_invariant(out.rep, *out.form))
    fail(ErrorKind::Internal, "tensor form is not invariant");
  return out;
}

RepWithForm direct_sum_rep(const std::vector<RepWithForm>& parts) {
  if (parts.empty()) fail(ErrorKind::BadParameters, "empty direct sum");
  if (parts.size() == 1) return parts[0];
  const Representation& r0 = parts[0].rep;
  RingRef k = r0.ring;
  std::vector<Mat> imgs;
  for (std::size_t s = 0; s < r0.gen_images.size(); ++s) {
    std::vector<Mat> blocks;
    for (const auto& p : parts) {
      if (p.rep.group.spec != r0.group.spec || p.rep.ring != k)
        fail(ErrorKind::BadParameters, "direct summands must share group and ring");
      blocks.push_back(p.rep.gen_images[s]);
    }
    imgs.push_back(Mat::block_diag(blocks));
  }
  RepWithForm out{make_representation(r0.group, k, std::move(imgs)), std::nullopt};
  bool have_forms = std::all_of(parts.begin(), parts.end(), [](const RepWithForm& p) { return p.form.has_value(); });
  if (have_forms) {
    int dmax = 0;
    for (const auto& p : parts) dmax = std::max(dmax, p.form->denom);
    std::vector<Mat> grams;
    Symmetry sym = parts[0].form->sym;
    for (const auto& p : parts) {
      grams.push_back(p.form->gram.scaled(k->pi().pow(dmax - p.form->denom)));
      if (p.form->sym != sym) sym = Symmetry::General;
    }
    out.form = BilinearForm{Mat::block_diag(grams), dmax, sym};
  }
  for (const auto& p : parts)
    for (const auto& b : p.rep.blocks) out.rep.blocks.push_back(b);
  return out;
}

bool form_is_invariant(const Representation& r, const BilinearForm& f, bool parallel) {
  bool ok = true;
  const bool sesq = f.sesquilinear();
  const int n = r.group.order();
  ParallelErrors errs;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok) if (parallel)
  for (int x = 0; x < n; ++x)
    errs.run([&] {
      if (!twisted(r.images[x], f.gram, sesq).equals(f.gram)) ok = false;
    });
  errs.rethrow();
  return ok;
}

std::vector<Mat> invariant_forms(const Representation& r, Symmetry sym) {
  if (sym == Symmetry::Hermitian || sym == Symmetry::SkewHermitian)
    fail(ErrorKind::BadParameters, "invariant form solver handles bilinear forms only");
  RingRef k = r.ring;
  const int n = r.dim;
  // unknown u stands for the form E_u
  std::vector<std::pair<int, int>> unk;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (sym == Symmetry::Alternating && j <= i) continue;
      if (sym == Symmetry::Symmetric && j < i) continue;
      unk.emplace_back(i, j);
    }
  const int nu = static_cast<int>(unk.size());
  const int ng = static_cast<int>(r.gen_images.size());
  auto basis_form = [&](int u) {
    Mat e(k, n, n);
    auto [i, j] = unk[u];
    e(i, j) = k->one();
    if (sym == Symmetry::Alternating) e(j, i) = -k->one();
    if (sym == Symmetry::Symmetric) e(j, i) = k->one();
    return e;
  };
  Mat eq(k, std::max(1, ng * n * n), nu);
#pragma omp parallel for schedule(dynamic)
  for (int u = 0; u < nu; ++u) {
    Mat e = basis_form(u);
    for (int s = 0; s < ng; ++s) {
      const Mat& a = r.gen_images[s];
      Mat d = a.transpose() * e * a - e;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) eq(s * n * n + i * n + j, u) = d(i, j);
    }
  }
  SNF s = snf(eq);
  std::vector<Mat> out;
  for (int c = s.rank; c < nu; ++c) {
    Mat f(k, n, n);
    for (int u = 0; u < nu; ++u) {
      const Elem& x = s.right(u, c);
      if (x.is_zero()) continue;
      Mat e = basis_form(u);
      f = f + e.scaled(x);
    }
    out.push_back(f.with_full_prec());
  }
  return out;
}

Lattice stable_lattice(const Representation& r, const Lattice& s0, bool parallel) {
  const int n = r.group.order();
  std::vector<Mat> parts(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int x = 0; x < n; ++x) parts[x] = parallel ? r.images[x] * s0.basis() : mul_serial(r.images[x], s0.basis());
  Mat all = parts[0];
  for (int x = 1; x < n; ++x) all = Mat::hcat(all, parts[x]);
  Lattice t = Lattice::from_generators(all, s0.denom());
  if (!is_stable(r, t)) fail(ErrorKind::Internal, "averaged lattice is not stable");
  return t;
}

bool is_stable(const Representation& r, const Lattice& t) {
  for (const auto& g : r.gen_images)
    if (t.apply(g) != t) return false;
  return true;
}

Mat matrix_in_basis(const Mat& a, const Lattice& t) {
  Mat ab = a * t.basis();
  Mat out(t.ring(), t.dim(), t.dim());
  for (int j = 0; j < t.dim(); ++j) out.set_block(0, j, t.coordinates(ab.col(j), t.denom()));
  return out;
}

Representation extend_scalars(const Representation& r, RingRef k) {
  if (r.ring == k) return r;
  if (!k->is_ancestor_or_self(r.ring)) fail(ErrorKind::BadParameters, k->spec() + " does not contain " + r.ring->spec());
  std::vector<Mat> imgs;
  for (const auto& a : r.gen_images) {
    Mat b(k, a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) b(i, j) = k->lift(a(i, j));
    imgs.push_back(b);
  }
  Representation out = make_representation(r.group, k, std::move(imgs), r.dim);
  out.blocks = r.blocks;
  return out;
}

BilinearForm extend_form(const BilinearForm& f, RingRef k) {
  RingRef base = f.ring();
  if (base == k) return f;
  Mat g(k, f.gram.rows(), f.gram.cols());
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) g(i, j) = k->lift(f.gram(i, j));
  // pi-power denominators change meaning with the ramification of k over the base
  int scale = k->e() / base->e();
  Elem unit = k->lift(base->pi()).div(k->pi().pow(scale));
  if (f.denom > 0) g = g.scaled(unit.inv().pow(f.denom));
  if (f.denom < 0) g = g.scaled(unit.pow(-f.denom));
  return BilinearForm{g, f.denom * scale, f.sym};
}

RepWithForm extend_scalars(const RepWithForm& r, RingRef k) {
  RepWithForm out{extend_scalars(r.rep, k), std::nullopt};
  if (r.form) out.form = extend_form(*r.form, k);
  return out;
}

std::vector<Elem> char_poly(const Representation& r, int g) { return charpoly(r.images[g]); }

bool is_simple_mod_m(const Representation& r, const Lattice& t, long max_vectors) {
  const Fq& F = Fq::residue_field(r.ring);
  const int n = t.dim();
  double points = 1;
  for (int i = 0; i < n; ++i) points *= static_cast<double>(F.size());
  points = (points - 1) / static_cast<double>(F.size() - 1);
  if (points > static_cast<double>(max_vectors))
    fail(ErrorKind::TooLarge, "residue search space has " + std::to_string(static_cast<long>(points)) + " points");
  std::vector<FMat> gens;
  for (const auto& a : r.gen_images) gens.push_back(FMat::reduce(&F, matrix_in_basis(a, t)));
  if (n <= 1) return true;
  // enumerate projective points: first nonzero coordinate equal to one
  for (int lead = 0; lead < n; ++lead) {
    long tail = 1;
    for (int i = lead + 1; i < n; ++i) tail *= F.size();
    for (long idx = 0; idx < tail; ++idx) {
      FMat vec(&F, n, 1);
      long rem = idx;
      for (int i = 0; i < n; ++i) vec(i, 0) = 0;
      vec(lead, 0) = 1;
      for (int i = lead + 1; i < n; ++i) {
        vec(i, 0) = rem % F.size();
        rem /= F.size();
      }
      // spin
      std::vector<FMat> basis{vec};
      auto rank_of = [&](const std::vector<FMat>& b) {
        FMat m(&F, n, static_cast<int>(b.size()));
        for (std::size_t c = 0; c < b.size(); ++c)
          for (int i = 0; i < n; ++i) m(i, static_cast<int>(c)) = b[c](i, 0);
        return m.rank();
      };
      for (std::size_t c = 0; c < basis.size() && static_cast<int>(basis.size()) < n; ++c)
        for (const auto& g : gens) {
          FMat w = g * basis[c];
          basis.push_back(w);
          if (rank_of(basis) < static_cast<int>(basis.size())) basis.pop_back();
        }
      if (static_cast<int>(basis.size()) < n) return false;
    }
  }
  return true;
}

}  // namespace lladic
