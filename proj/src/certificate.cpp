#include "lladic/certificate.hpp"

#include <algorithm>
#include <set>

#include "lladic/errors.hpp"

namespace lladic {

std::string num(long v) { return std::to_string(v); }

long to_long(const json& j) {
  if (j.is_string()) return std::stol(j.get<std::string>());
  return j.get<long>();
}

json elem_to_json(const Elem& x) {
  json a = json::array();
  for (const auto& c : x.coeffs()) a.push_back(c.get_str());
  return a;
}

Elem elem_from_json(RingRef r, const json& j, int prec) {
  if (!j.is_array() || static_cast<int>(j.size()) != r->dim()) fail(ErrorKind::BadSpec, "element has the wrong shape");
  std::vector<mpz_class> c;
  for (const auto& s : j) c.emplace_back(s.get<std::string>(), 10);
  return Elem(r, std::move(c), prec);
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(elem_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return {{"rows", num(m.rows())}, {"cols", num(m.cols())}, {"prec", num(m.rows() > 0 && m.cols() > 0 ? m.min_prec() : 0)},
          {"entries", std::move(rows)}};
}

Mat mat_from_json(RingRef r, const json& j) {
  const int nr = static_cast<int>(to_long(j.at("rows"))), nc = static_cast<int>(to_long(j.at("cols")));
  const int prec = static_cast<int>(to_long(j.at("prec")));
  Mat m(r, nr, nc);
  const json& e = j.at("entries");
  if (static_cast<int>(e.size()) != nr) fail(ErrorKind::BadSpec, "matrix has the wrong shape");
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(e[i].size()) != nc) fail(ErrorKind::BadSpec, "matrix has the wrong shape");
    for (int k = 0; k < nc; ++k) m(i, k) = elem_from_json(r, e[i][k], prec);
  }
  return m;
}

json fmat_to_json(const FMat& m) {
  json rows = json::array();
  for (const auto& row : m.to_rows()) {
    json r = json::array();
    for (long v : row) r.push_back(num(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

FMat fmat_from_json(const Fq* F, const json& j) {
  const int nr = static_cast<int>(j.size());
  const int nc = nr ? static_cast<int>(j[0].size()) : 0;
  FMat m(F, nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(j[i].size()) != nc) fail(ErrorKind::BadSpec, "matrix has the wrong shape");
    for (int k = 0; k < nc; ++k) {
      long v = to_long(j[i][k]);
      if (v < 0 || v >= F->size()) fail(ErrorKind::BadSpec, "entry outside the residue field");
      m(i, k) = v;
    }
  }
  return m;
}

json lattice_to_json(const Lattice& l) { return {{"basis", mat_to_json(l.basis())}, {"denom", num(l.denom())}}; }

Lattice lattice_from_json(RingRef r, const json& j) {
  return Lattice::from_generators(mat_from_json(r, j.at("basis")), static_cast<int>(to_long(j.at("denom"))));
}

json form_to_json(const BilinearForm& f) {
  return {{"gram", mat_to_json(f.gram)}, {"denom", num(f.denom)}, {"symmetry", symmetry_name(f.sym)}};
}

BilinearForm form_from_json(RingRef r, const json& j) {
  return BilinearForm{mat_from_json(r, j.at("gram")), static_cast<int>(to_long(j.at("denom"))),
                      symmetry_from_name(j.at("symmetry").get<std::string>())};
}

json ints_to_json(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(num(x));
  return a;
}

std::vector<int> ints_from_json(const json& j) {
  std::vector<int> v;
  for (const auto& x : j) v.push_back(static_cast<int>(to_long(x)));
  return v;
}

json make_certificate(const std::string& claim, json setting, json result, int precision, bool verified,
                      double timing_ms) {
  return {{"schema_version", kSchemaVersion},
          {"claim", claim},
          {"setting", std::move(setting)},
          {"result", std::move(result)},
          {"precision", num(precision)},
          {"verified", verified},
          {"timing_ms", num(static_cast<long>(timing_ms))}};
}

namespace {

json mats_to_json(const std::vector<Mat>& ms) {
  json a = json::array();
  for (const auto& m : ms) a.push_back(mat_to_json(m));
  return a;
}

std::vector<Mat> mats_from_json(RingRef r, const json& j) {
  std::vector<Mat> out;
  for (const auto& m : j) out.push_back(mat_from_json(r, m));
  return out;
}

json cell_to_json(const ObstructionCell& c) {
  return {{"r", num(c.r)},
          {"j", num(c.j)},
          {"integral", c.integral},
          {"perfect", c.perfect},
          {"exponents", ints_to_json(c.exponents)},
          {"gram", mat_to_json(c.gram)},
          {"denom", num(c.denom)},
          {"delta", mat_to_json(c.delta_op)},
          {"extra_denom", num(c.extra)}};
}

bool is_invariant(const Mat& g, const Mat& a) { return (a.transpose() * g * a).equals(g); }

struct Checks {
  std::vector<std::string> failed;
  void need(bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  }
  Reverification done() const {
    Reverification r;
    r.ok = failed.empty();
    for (const auto& f : failed) r.detail += (r.detail.empty() ? "" : "; ") + f;
    if (r.ok) r.detail = "all checks passed";
    return r;
  }
};

RingRef ring_of(const json& result, int prec) { return Ring::from_spec(result.at("ring").get<std::string>(), prec); }

void verify_pairing(const json& res, int prec, Checks& ck) {
  RingRef k = ring_of(res, prec);
  auto gens = mats_from_json(k, res.at("gens"));
  Lattice t = lattice_from_json(k, res.at("lattice"));
  BilinearForm f = form_from_json(k, res.at("form"));
  ck.need(f.sym == Symmetry::Alternating && f.check_symmetry(), "form is not alternating");
  for (const auto& g : gens) {
    ck.need(is_invariant(f.gram, g), "form is not invariant");
    ck.need(t.apply(g) == t, "lattice is not stable");
  }
  PerfectCertificate pc = is_perfect(t, f);
  ck.need(pc.perfect, "pairing is not perfect on the lattice");
}

void verify_stabilized(const json& res, int prec, Checks& ck) {
  RingRef k = ring_of(res, prec);
  auto gens = mats_from_json(k, res.at("gens"));
  BilinearForm f = form_from_json(k, res.at("form"));
  Lattice s = lattice_from_json(k, res.at("start"));
  Lattice t = lattice_from_json(k, res.at("lattice"));
  ck.need(f.check_symmetry(), "form symmetry");
  for (const auto& g : gens) {
    ck.need(is_invariant(f.gram, g), "form is not invariant");
    ck.need(t.apply(g) == t, "lattice is not stable");
  }
  ck.need(s.subset_of(t), "start lattice is not contained in the result");
  PerfectCertificate pc = is_perfect(t, f);
  ck.need(pc.exponents == ints_from_json(res.at("exponents")), "recorded exponents differ");
  ck.need(std::all_of(pc.exponents.begin(), pc.exponents.end(), [](int e) { return e == 0 || e == 1; }),
          "dual index exponents exceed 1");
  ck.need(dual_lattice(t, f).scaled(1).subset_of(t), "pi T* is not contained in T");
  StabilizedPair again = stabilize_lattice(s, f);
  ck.need(again.lattice == t, "rerunning the loop gives a different lattice");
  ck.need(again.iterations == to_long(res.at("iterations")), "iteration count differs");
}

void verify_embedding(const json& res, int prec, Checks& ck) {
  RingRef k = ring_of(res, prec);
  FiniteGroup g = build_group(res.at("group").get<std::string>());
  Representation r = make_representation(g, k, mats_from_json(k, res.at("gens")));
  const Fq& F = Fq::residue_field(k);
  std::vector<FMat> imgs;
  for (const auto& m : res.at("images")) imgs.push_back(fmat_from_json(&F, m));
  ck.need(static_cast<int>(imgs.size()) == g.order(), "one image per group element");
  if (static_cast<int>(imgs.size()) != g.order()) return;
  bool hom = true;
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y)
      if (imgs[x] * imgs[y] != imgs[g.mul(x, y)]) hom = false;
  ck.need(hom, "residue map is not a homomorphism");
  int trivial = 0;
  for (const auto& m : imgs) trivial += m.is_identity() ? 1 : 0;
  ck.need(trivial == 1, "residue map is not injective");
  const json& cps = res.at("charpolys");
  bool match = true;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<long> a = imgs[x].charpoly();
    std::vector<long> b;
    for (const auto& c : char_poly(r, x)) b.push_back(F.reduce(c));
    std::vector<long> rec;
    for (const auto& c : cps[x]) rec.push_back(to_long(c));
    if (a != b || a != rec) match = false;
  }
  ck.need(match, "characteristic polynomials differ");
}

// Recompute every cell from the embedded matrices.
void verify_cells(const json& cells, const BilinearForm& f, const std::vector<Mat>& bases, RingRef k, Checks& ck,
                  bool expect_obstructed) {
  bool any_perfect = false;
  for (const auto& cj : cells) {
    int r = static_cast<int>(to_long(cj.at("r")));
    int j = static_cast<int>(to_long(cj.at("j")));
    if (r < 0 || r >= static_cast<int>(bases.size())) {
      ck.need(false, "cell outside the lattice window");
      continue;
    }
    Mat delta = mat_from_json(k, cj.at("delta"));
    int extra = static_cast<int>(to_long(cj.at("extra_denom")));
    ObstructionCell c = obstruction_cell(f.gram, f.denom, bases[r], delta, extra, r, j);
    ck.need(c.gram.equals(mat_from_json(k, cj.at("gram"))), "cell Gram matrix differs");
    ck.need(c.exponents == ints_from_json(cj.at("exponents")) && c.integral == cj.at("integral").get<bool>() &&
                c.perfect == cj.at("perfect").get<bool>(),
            "cell exponents differ");
    any_perfect = any_perfect || c.perfect;
  }
  if (expect_obstructed)
    ck.need(!any_perfect, "a perfect cell exists");
  else
    ck.need(any_perfect, "the control has no perfect cell");
}

void verify_obstruction(const json& res, int prec, Checks& ck) {
  RingRef k = ring_of(res, prec);
  auto gens = mats_from_json(k, res.at("gens"));
  BilinearForm f = form_from_json(k, res.at("form"));
  Mat eta = mat_from_json(k, res.at("eta"));
  Lattice s = lattice_from_json(k, res.at("lattice"));
  ck.need(f.check_symmetry(), "form symmetry");
  for (const auto& g : gens) {
    ck.need(is_invariant(f.gram, g), "form is not invariant");
    ck.need((g * eta).equals(eta * g), "eta does not commute with the group");
    ck.need(s.apply(g) == s, "reference lattice is not stable");
  }
  for (const auto& cj : res.at("cells")) {
    Mat d = mat_from_json(k, cj.at("delta"));
    bool commutes = true;
    for (const auto& g : gens) commutes = commutes && (g * d).equals(d * g);
    ck.need(commutes, "delta does not commute with the group");
  }
  const int rc = static_cast<int>(to_long(res.at("r_count")));
  std::vector<Mat> bases{s.basis()};
  for (int r = 1; r < rc; ++r) bases.push_back(eta * bases.back());
  verify_cells(res.at("cells"), f, bases, k, ck, true);
  for (const char* flag : {"shift_identity", "unit_invariance", "form_space_dimension", "lattice_classification"})
    ck.need(res.at(flag).get<bool>(), std::string("recorded check failed: ") + flag);
  if (res.at("trace_containment_applicable").get<bool>()) ck.need(res.at("trace_containment").get<bool>(), "trace containment failed");

  if (res.contains("control")) {
    const json& ctl = res.at("control");
    BilinearForm fw = form_from_json(k, ctl.at("form"));
    const int n = fw.dim();
    verify_cells(ctl.at("cells"), fw, {Mat::identity(k, n)}, k, ck, false);
  }
  if (res.contains("split")) {
    const json& sp = res.at("split");
    Mat tau = mat_from_json(k, sp.at("tau"));
    auto ugens = mats_from_json(k, sp.at("gens"));
    auto forms = mats_from_json(k, sp.at("forms"));
    const int n = tau.rows(), dv = static_cast<int>(to_long(sp.at("dim_v")));
    ck.need((tau * tau).equals(tau), "tau is not idempotent");
    bool commutes = true;
    for (const auto& g : ugens) commutes = commutes && (g * tau).equals(tau * g);
    ck.need(commutes, "tau does not commute with the group");
    Mat one_minus = Mat::identity(k, n) - tau;
    Mat b1 = one_minus.cols_range(0, dv), b2 = tau.cols_range(dv, n);
    ck.need(Lattice::from_generators(Mat::hcat(b1, b2)) == Lattice::standard(k, n), "T is not T1 + T2");
    ck.need(!forms.empty(), "no invariant forms recorded");
    for (const auto& fm : forms) {
      bool inv = true;
      for (const auto& g : ugens) inv = inv && is_invariant(fm, g);
      ck.need(inv && (fm + fm.transpose()).is_zero(), "recorded form is not invariant and alternating");
      ck.need((b1.transpose() * fm * b2).is_zero(), "f'(T1, T2) is not zero");
    }
    ck.need(static_cast<int>(forms.size()) == static_cast<int>(invariant_forms(
                                                    make_representation(build_group(sp.at("group").get<std::string>()),
                                                                        k, ugens),
                                                    Symmetry::Alternating)
                                                    .size()),
            "recorded forms do not span the invariant space");
  }
}

void verify_residue(const json& res, int prec, Checks& ck) {
  RingRef k = ring_of(res, prec);
  const Fq& F = Fq::residue_field(k);
  std::vector<FMat> gens, sols;
  for (const auto& m : res.at("generators")) gens.push_back(fmat_from_json(&F, m));
  for (const auto& m : res.at("solutions")) sols.push_back(fmat_from_json(&F, m));
  ck.need(!gens.empty(), "no generators");
  if (gens.empty()) return;
  const int n = gens[0].rows(), t = n / 2;
  for (const auto& f : sols) {
    bool alt = true;
    for (int i = 0; i < n; ++i) {
      alt = alt && f(i, i) == 0;
      for (int j = 0; j < n; ++j) alt = alt && f(i, j) == F.neg(f(j, i));
    }
    bool inv = true;
    for (const auto& g : gens) inv = inv && g.transpose() * f * g == f;
    ck.need(alt && inv, "recorded solution is not an invariant alternating form");
    ck.need(f.block(0, 0, t, t) == FMat(&F, t, t), "identity (1) fails");
    FMat h = f.block(0, t, t, t);
    ck.need(h == h.transpose(), "identity (2) fails");
    ck.need(h == FMat(&F, t, t), "h is not zero");
  }
  // completeness: the recorded solutions span the full solution space
  auto again = finite_invariant_forms(gens, Symmetry::Alternating);
  FMat stacked(&F, static_cast<int>(sols.size()), n * n);
  for (std::size_t s = 0; s < sols.size(); ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) stacked(static_cast<int>(s), i * n + j) = sols[s](i, j);
  ck.need(again.size() == sols.size() && (sols.empty() || stacked.rank() == static_cast<int>(sols.size())),
          "solution space is incomplete");
  // every member has its first t rows zero, so it is singular
  ck.need(res.at("trace_congruence").get<bool>() && res.at("unipotent_degenerate").get<bool>(), "recorded residue checks failed");
}

Reverification verify_obstruction_doc(const json& res, int prec) {
  Checks ck;
  verify_obstruction(res, prec, ck);
  return ck.done();
}

}  // namespace

json pairing_result_json(const std::string& group, const Representation& r, const PairingResult& p) {
  return {{"ring", r.ring->spec()},
          {"group", group},
          {"gens", mats_to_json(r.gen_images)},
          {"lattice", lattice_to_json(p.lattice)},
          {"form", form_to_json(p.form)},
          {"exponents", ints_to_json(p.exponents)},
          {"perfect", p.perfect},
          {"invariant", p.invariant},
          {"hypotheses_met", p.hypotheses_met},
          {"d", num(p.d)},
          {"e", num(p.e)},
          {"note", p.note}};
}

json stabilized_json(const Representation& r, const Lattice& start, const StabilizedPair& sp) {
  return {{"ring", r.ring->spec()},
          {"group", r.group.spec},
          {"gens", mats_to_json(r.gen_images)},
          {"form", form_to_json(sp.form)},
          {"start", lattice_to_json(start)},
          {"lattice", lattice_to_json(sp.lattice)},
          {"exponents", ints_to_json(sp.dual_index_exponents)},
          {"iterations", num(sp.iterations)},
          {"bound", num(sp.bound)}};
}

json embedding_json(const Representation& r, const ResidueEmbedding& e) {
  json imgs = json::array(), cps = json::array(), kern = json::array();
  for (const auto& m : e.images) imgs.push_back(fmat_to_json(m));
  for (const auto& c : e.charpolys) {
    json a = json::array();
    for (long v : c) a.push_back(num(v));
    cps.push_back(std::move(a));
  }
  for (int x : e.kernel) kern.push_back(r.group.labels[x]);
  return {{"ring", r.ring->spec()},
          {"group", r.group.spec},
          {"gens", mats_to_json(r.gen_images)},
          {"field_size", num(e.field->size())},
          {"dim0", num(e.dim0)},
          {"dim1", num(e.dim1)},
          {"images", std::move(imgs)},
          {"charpolys", std::move(cps)},
          {"kernel", std::move(kern)},
          {"injective", e.injective},
          {"homomorphism", e.homomorphism},
          {"charpolys_match", e.charpolys_match},
          {"hypotheses_met", e.hypotheses_met},
          {"forms_nondegenerate", e.forms_nondegenerate}};
}

json obstruction_json(const CounterexampleSetting& s, const ObstructionCertificate& c,
                      const std::optional<ObstructionCertificate>& control) {
  json cells = json::array();
  for (const auto& x : c.cells) cells.push_back(cell_to_json(x));
  json out{{"ring", s.K->spec()},
           {"group", s.v.rep.group.spec},
           {"gens", mats_to_json(s.v.rep.gen_images)},
           {"form", form_to_json(*s.v.form)},
           {"eta", mat_to_json(Mat::kron(Mat::identity(s.K, s.w.rep.dim), mult_matrix(*s.M->eta())))},
           {"lattice", lattice_to_json(s.s)},
           {"r_count", num(c.r_count)},
           {"cells", std::move(cells)},
           {"all_obstructed", c.all_obstructed},
           {"shift_identity", c.shift_identity},
           {"unit_invariance", c.unit_invariance},
           {"trace_containment", c.trace_containment},
           {"trace_containment_applicable", c.trace_containment_applicable},
           {"form_space_dimension", c.form_space_dimension},
           {"lattice_classification", c.lattice_classification},
           {"d", num(s.d)},
           {"e", num(s.e)}};
  if (control) {
    json cc = json::array();
    for (const auto& x : control->cells) cc.push_back(cell_to_json(x));
    out["control"] = {{"form", form_to_json(*s.w.form)}, {"cells", std::move(cc)}};
  }
  if (c.split && s.u && s.tau) {
    out["split"] = {{"tau", mat_to_json(*s.tau)},
                    {"group", s.u->rep.group.spec},
                    {"gens", mats_to_json(s.u->rep.gen_images)},
                    {"forms", mats_to_json(invariant_forms(s.u->rep, Symmetry::Alternating))},
                    {"dim_v", num(s.v.rep.dim)},
                    {"tau_idempotent", c.split->tau_idempotent},
                    {"direct_sum", c.split->direct_sum},
                    {"cross_pairing_zero", c.split->cross_pairing_zero}};
  }
  return out;
}

json residue_obstruction_json(const ResidueObstruction& r) {
  json gens = json::array(), sols = json::array();
  for (const auto& g : r.generators) gens.push_back(fmat_to_json(g));
  for (const auto& f : r.solutions) sols.push_back(fmat_to_json(f));
  return {{"ring", r.ring},
          {"field_size", num(r.field_size)},
          {"dim", num(r.dim)},
          {"generators", std::move(gens)},
          {"solutions", std::move(sols)},
          {"solution_dim", num(r.solution_dim)},
          {"enumerated", num(r.enumerated)},
          {"exhaustive", r.exhaustive},
          {"all_degenerate", r.all_degenerate},
          {"identity1", r.identity1},
          {"identity2", r.identity2},
          {"h_zero", r.h_zero},
          {"trace_congruence", r.trace_congruence},
          {"unipotent_degenerate", r.unipotent_degenerate}};
}

json abvar_json(const AbVarScenario& a) {
  json c = json::array();
  for (const auto& s : a.conclusions) c.push_back(s);
  return {{"p", num(a.p)},
          {"ell", num(a.ell)},
          {"b", num(a.b)},
          {"r", num(a.r)},
          {"d", num(a.d)},
          {"conclusions", std::move(c)},
          {"obstruction", obstruction_json(a.setting, a.obstruction, std::nullopt)}};
}

Reverification verify_certificate(const json& cert) {
  Checks ck;
  try {
    ck.need(cert.at("schema_version").get<std::string>() == kSchemaVersion, "unknown schema version");
    const std::string claim = cert.at("claim").get<std::string>();
    const int prec = static_cast<int>(to_long(cert.at("precision")));
    const json& res = cert.at("result");
    if (claim == "perfect-pairing") {
      verify_pairing(res, prec, ck);
    } else if (claim == "stabilized-lattice") {
      verify_stabilized(res, prec, ck);
    } else if (claim == "residue-embedding") {
      verify_embedding(res, prec, ck);
    } else if (claim == "pairing-obstruction") {
      verify_obstruction(res, prec, ck);
    } else if (claim == "residue-obstruction") {
      verify_residue(res, prec, ck);
    } else if (claim == "polarization-degree") {
      long p = to_long(res.at("p")), ell = to_long(res.at("ell")), b = to_long(res.at("b"));
      long r = p == 2 ? 1 : (p - 1) / 2;
      ck.need(to_long(res.at("r")) == r && to_long(res.at("d")) == r * (ell - 1) + b, "d is not r(ell - 1) + b");
      ck.need(to_long(res.at("obstruction").at("d")) == r * (ell - 1) + b, "module dimension does not match d");
      Reverification inner = verify_obstruction_doc(res.at("obstruction"), prec);
      ck.need(inner.ok, inner.detail);
    } else {
      ck.need(false, "unknown claim '" + claim + "'");
    }
  } catch (const Error& e) {
    ck.need(false, e.what());
  } catch (const json::exception& e) {
    ck.need(false, std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument& e) {
    ck.need(false, std::string("malformed number: ") + e.what());
  }
  return ck.done();
}

}  // namespace lladic
