#include "lladic/symplectify.hpp"

#include <algorithm>
#include <numeric>

namespace lladic {

BilinearForm normalize_form(const BilinearForm& f, const Lattice& s) {
  GramOnLattice g = gram_on(s, f);
  int m = g.gram.min_val();
  if (m >= kInfVal) fail(ErrorKind::DegenerateForm, "form vanishes on the lattice");
  return f.scaled(g.denom - m);
}

StabilizedPair stabilize_lattice(const Lattice& s, const BilinearForm& f0, const Representation* r) {
  if (r && !is_stable(*r, s)) fail(ErrorKind::PreconditionFailed, "start lattice is not stable");
  StabilizedPair out;
  out.form = normalize_form(f0, s);
  const BilinearForm& f = out.form;
  auto start = is_perfect(s, f).exponents;
  out.bound = std::accumulate(start.begin(), start.end(), 0);
  Lattice cur = s;
  out.chain.push_back(cur);
  for (;;) {
    Lattice dual = dual_lattice(cur, f);
    Lattice next = lattice_sum(cur, lattice_intersect(cur.scaled(-1), dual.scaled(1)));
    if (next == cur) break;
    if (!cur.subset_of(next) || !next.subset_of(dual_lattice(s, f)))
      fail(ErrorKind::Internal, "stabilization chain left S*");
    cur = next;
    out.chain.push_back(cur);
    if (++out.iterations > out.bound) fail(ErrorKind::Internal, "stabilization exceeded its iteration bound");
  }
  out.lattice = cur;
  out.dual_index_exponents = is_perfect(cur, f).exponents;
  for (int x : out.dual_index_exponents)
    if (x != 0 && x != 1) fail(ErrorKind::Internal, "fixpoint has a dual index exponent above 1");
  if (!dual_lattice(cur, f).scaled(1).subset_of(cur)) fail(ErrorKind::Internal, "pi T* is not inside T");
  return out;
}

namespace {

FMat reduce_sub(const Fq* F, const Mat& m, int i0, int j0, int nr, int nc) {
  if (nr == 0 || nc == 0) return FMat(F, nr, nc);
  return FMat::reduce(F, m.block(i0, j0, nr, nc));
}

FMat block_diag2(const FMat& a, const FMat& b) {
  FMat out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

bool fsymmetric(const FMat& m, Symmetry sym) {
  const Fq& F = *m.field();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      long a = m(i, j), b = m(j, i);
      switch (sym) {
        case Symmetry::Alternating:
          if (F.add(a, b) != 0 || (i == j && a != 0)) return false;
          break;
        case Symmetry::Symmetric:
          if (a != b) return false;
          break;
        case Symmetry::Hermitian:
          if (a != F.frobenius(b)) return false;
          break;
        case Symmetry::SkewHermitian:
          if (F.add(a, F.frobenius(b)) != 0) return false;
          break;
        case Symmetry::General:
          break;
      }
    }
  return true;
}

}  // namespace

ResidueEmbedding reduce_embedding(const StabilizedPair& sp, const Representation& r, bool parallel) {
  RingRef k = r.ring;
  const Fq* F = &Fq::residue_field(k);
  const Lattice& t = sp.lattice;
  const BilinearForm& f = sp.form;
  const bool sesq = f.sesquilinear();
  const int n = t.dim();
  GramOnLattice go = gram_on(t, f);
  Mat g0 = go.denom >= 0 ? go.gram.div_pi(go.denom) : go.gram.scaled(k->pi().pow(-go.denom));
  SNF s = snf(g0.transpose());
  if (s.rank < n) fail(ErrorKind::DegenerateForm, "form is degenerate on T");
  const Mat& v = s.right;
  Mat vinv = unimodular_inverse(v);
  Mat gp = v.transpose() * g0 * (sesq ? v.conj() : v);
  int n0 = 0;
  while (n0 < n && s.exponents[n0] == 0) ++n0;
  const int n1 = n - n0;
  for (int i = n0; i < n; ++i)
    if (s.exponents[i] != 1) fail(ErrorKind::PreconditionFailed, "T is not stabilized");

  ResidueEmbedding out;
  out.field = F;
  out.dim0 = n0;
  out.dim1 = n1;
  out.form0 = reduce_sub(F, gp, 0, 0, n0, n0);
  if (n1 > 0) {
    Elem cpi = sesq ? k->pi().conj() : k->pi();
    out.form1 = FMat::reduce(F, gp.block(n0, n0, n1, n1).map([&](const Elem& x) { return x.div(cpi); }));
  } else {
    out.form1 = FMat(F, 0, 0);
  }
  out.forms_nondegenerate = out.form0.rank() == n0 && (n1 == 0 || out.form1.rank() == n1);
  out.symmetry_matches = fsymmetric(out.form0, f.sym) && (n1 == 0 || fsymmetric(out.form1, f.sym));

  const int order = r.group.order();
  out.images.assign(order, FMat());
  out.charpolys.assign(order, {});
  std::vector<char> cp_ok(order, 0);
  ParallelErrors errs;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int x = 0; x < order; ++x)
    errs.run([&] {
      Mat c = vinv * matrix_in_basis(r.images[x], t) * v;
      out.images[x] = block_diag2(reduce_sub(F, c, 0, 0, n0, n0), reduce_sub(F, c, n0, n0, n1, n1));
      out.charpolys[x] = out.images[x].charpoly();
      auto full = charpoly(r.images[x]);
      bool ok = full.size() == out.charpolys[x].size();
      for (std::size_t i = 0; ok && i < full.size(); ++i) ok = F->reduce(full[i]) == out.charpolys[x][i];
      cp_ok[x] = ok;
    });
  errs.rethrow();
  out.charpolys_match = std::all_of(cp_ok.begin(), cp_ok.end(), [](char c) { return c != 0; });

  bool hom = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : hom) if (parallel)
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (out.images[a] * out.images[b] != out.images[r.group.mul(a, b)]) hom = false;
  out.homomorphism = hom;

  for (int x = 0; x < order; ++x)
    if (out.images[x].is_identity()) out.kernel.push_back(x);
  out.injective = out.kernel.size() == 1;
  out.hypotheses_met = 2 * k->e() < k->ell() - 1;
  if (out.hypotheses_met && !out.injective) {
    for (int x : out.kernel) {
      if (x == 0) continue;
      // act on T* in the adapted basis; the kernel element is trivial on both blocks
      Mat c = vinv * matrix_in_basis(r.images[x], t) * v;
      RigidityResult rr = rigidity_check(c, r.group.elem_order(x), RigidityMode::A);
      if (rr.status == RigidityStatus::Fail)
        fail(ErrorKind::RigidityViolation, "nontrivial kernel element " + r.group.labels[x]);
    }
    fail(ErrorKind::RigidityViolation, "residue map is not injective");
  }
  return out;
}

const char* rigidity_name(RigidityStatus s) {
  switch (s) {
    case RigidityStatus::Pass: return "pass";
    case RigidityStatus::Fail: return "fail";
    case RigidityStatus::HypothesesUnmet: return "hypotheses-unmet";
  }
  return "hypotheses-unmet";
}

RigidityResult rigidity_check(const Mat& a, long order, RigidityMode mode) {
  RingRef k = a.ring();
  const int n = a.rows();
  const long e = k->e(), ell = k->ell();
  RigidityResult out;
  Mat id = Mat::identity(k, n);
  if (!mat_pow(a, static_cast<unsigned long>(order)).equals(id)) {
    out.detail = "A^n is not the identity";
    return out;
  }
  Mat d = a - id;
  if (mode == RigidityMode::A) {
    if (!(2 * e < ell - 1)) {
      out.detail = "2e < ell - 1 fails";
      return out;
    }
    if ((d * d).min_val() < 1) {
      out.detail = "(A - 1)^2 is not in m End";
      return out;
    }
  } else {
    if (!(e < ell - 1)) {
      out.detail = "e < ell - 1 fails";
      return out;
    }
    if (d.min_val() < 1) {
      out.detail = "A - 1 is not in m End";
      return out;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!d(i, j).is_zero()) {
        out.status = RigidityStatus::Fail;
        out.wi = i;
        out.wj = j;
        out.detail = "A differs from the identity";
        return out;
      }
  out.status = RigidityStatus::Pass;
  return out;
}

RepWithForm cyclotomic_eta_pairing(RingRef k) {
  RingRef m = Ring::cyclotomic(k);
  auto b = m->zeta_basis();
  const int n = static_cast<int>(b.size());
  Elem eta = *m->eta();
  Mat g(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = m->trace_to_parent(b[i] * eta * b[j].conj());
  FiniteGroup grp = direct_product({mu_group(k->ell()), cyclic_group(2)});
  RepWithForm out{make_representation(grp, k, {mult_matrix(*m->zeta()), -Mat::identity(k, n)}),
                  BilinearForm{g, 1, Symmetry::Alternating}};
  out.rep.blocks = {{"K(zeta)", n, 1, false}};
  return out;
}

Representation restrict_rep(const Representation& r, int offset, int dim) {
  if (offset < 0 || dim <= 0 || offset + dim > r.dim) fail(ErrorKind::DegenerateBlock, "block out of range");
  std::vector<Mat> imgs;
  for (const auto& a : r.gen_images) {
    for (int i = 0; i < r.dim; ++i) {
      if (i >= offset && i < offset + dim) continue;
      for (int j = offset; j < offset + dim; ++j)
        if (!a(i, j).is_zero()) fail(ErrorKind::DegenerateBlock, "block is not invariant");
    }
    imgs.push_back(a.block(offset, offset, dim, dim));
  }
  return make_representation(r.group, r.ring, std::move(imgs), dim);
}

PairingResult perfect_pairing_via_43(const Representation& r, const BilinearForm& f,
                                     const std::vector<PairingBlock>& blocks) {
  RingRef k = r.ring;
  const int n = r.dim;
  PairingResult out;
  out.d = n / 2;
  out.e = k->e();
  out.hypotheses_met = k->ell() > out.d * out.e + 1;
  if (f.sym != Symmetry::Alternating) fail(ErrorKind::BadParameters, "an alternating form is required");

  std::vector<int> owner(n, -1);
  auto claim = [&](int off, int dim, int id) {
    if (off < 0 || dim <= 0 || off + dim > n) fail(ErrorKind::DegenerateBlock, "block out of range");
    for (int i = off; i < off + dim; ++i) {
      if (owner[i] >= 0) fail(ErrorKind::DegenerateBlock, "blocks overlap");
      owner[i] = id;
    }
  };
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    claim(blocks[b].offset, blocks[b].dim, static_cast<int>(b));
    if (blocks[b].kind == BlockKind::IsotropicPair) claim(blocks[b].partner, blocks[b].dim, static_cast<int>(b));
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    fail(ErrorKind::DegenerateBlock, "blocks do not cover the space");

  struct Piece {
    int off;
    Lattice lat;
  };
  std::vector<Piece> lats;
  struct FormPiece {
    int i0, j0;
    Mat gram;
    int denom;
  };
  std::vector<FormPiece> forms;
  std::vector<std::string> notes;
  for (const auto& blk : blocks) {
    const int off = blk.offset, dim = blk.dim;
    switch (blk.kind) {
      case BlockKind::Simple: {
        Representation sub = restrict_rep(r, off, dim);
        Lattice t = stable_lattice(sub, Lattice::standard(k, dim));
        BilinearForm fb = normalize_form(BilinearForm{f.gram.block(off, off, dim, dim), f.denom, f.sym}, t);
        lats.push_back({off, t});
        forms.push_back({off, off, fb.gram, fb.denom});
        notes.push_back("simple");
        break;
      }
      case BlockKind::Cyclotomic: {
        restrict_rep(r, off, dim);
        RepWithForm l = cyclotomic_eta_pairing(k);
        if (l.rep.dim != dim) fail(ErrorKind::DegenerateBlock, "block is not K(zeta_ell)");
        lats.push_back({off, Lattice::standard(k, dim)});
        forms.push_back({off, off, l.form->gram, l.form->denom});
        notes.push_back("cyclotomic");
        break;
      }
      case BlockKind::IsotropicPair: {
        const int par = blk.partner;
        if (!f.gram.block(off, off, dim, dim).is_zero() || !f.gram.block(par, par, dim, dim).is_zero())
          fail(ErrorKind::DegenerateBlock, "halves of an isotropic pair must be isotropic");
        Representation sub = restrict_rep(r, off, dim);
        restrict_rep(r, par, dim);
        Lattice t1 = stable_lattice(sub, Lattice::standard(k, dim));
        Mat p = f.gram.block(off, par, dim, dim);
        Lattice t2 = solution_lattice(t1.basis().transpose() * p, f.denom + t1.denom());
        lats.push_back({off, t1});
        lats.push_back({par, t2});
        forms.push_back({off, par, p, f.denom});
        forms.push_back({par, off, f.gram.block(par, off, dim, dim), f.denom});
        notes.push_back("isotropic-pair");
        break;
      }
    }
  }
  int lden = 0, fden = 0;
  for (const auto& p : lats) lden = std::max(lden, p.lat.denom());
  for (const auto& p : forms) fden = std::max(fden, p.denom);
  Mat basis(k, n, n), gram(k, n, n);
  for (const auto& p : lats) basis.set_block(p.off, p.off, p.lat.basis().scaled(k->pi().pow(lden - p.lat.denom())));
  for (const auto& p : forms) gram.set_block(p.i0, p.j0, p.gram.scaled(k->pi().pow(fden - p.denom)));
  out.lattice = Lattice::from_generators(basis, lden);
  out.form = BilinearForm{gram, fden, Symmetry::Alternating};
  for (std::size_t i = 0; i < notes.size(); ++i) out.note += (i ? "," : "") + notes[i];
  try {
    auto cert = is_perfect(out.lattice, out.form);
    out.perfect = cert.perfect;
    out.exponents = cert.exponents;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ValuesNotIntegral) throw;
    out.perfect = false;
  }
  out.invariant = out.form.check_symmetry() && form_is_invariant(r, out.form) && is_stable(r, out.lattice);
  return out;
}

}  // namespace lladic
