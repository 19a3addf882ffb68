#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lladic/certificate.hpp"
#include "lladic/errors.hpp"

using namespace lladic;

namespace {

enum Exit { kOk = 0, kRefuted = 2, kUnmet = 3, kPrecision = 4, kUsage = 64 };

struct Opts {
  long ell = 5;
  long p = 2;
  int b = 0;
  int precision = 0;
  unsigned seed = 1;
  std::string group, out, kind, ring, file;
};

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::PrecisionExhausted: return kPrecision;
    case ErrorKind::HypothesesUnmet:
    case ErrorKind::BadParameters:
    case ErrorKind::UnsupportedFamily:
    case ErrorKind::NoSimpleRoot: return kUnmet;
    case ErrorKind::BadSpec: return kUsage;
    default: return kRefuted;
  }
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int emit(const Opts& o, const json& cert) {
  const bool ok = cert.at("verified").get<bool>();
  if (o.out.empty()) {
    std::cout << cert.dump(2) << "\n";
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "cannot write " << o.out << "\n";
      return kUsage;
    }
    f << cert.dump(2) << "\n";
    std::cout << cert.at("claim").get<std::string>() << ": " << (ok ? "verified" : "not verified") << " -> " << o.out
              << "\n";
  }
  return ok ? kOk : kRefuted;
}

json base_setting(const Opts& o) { return {{"prime", num(o.ell)}, {"p", num(o.p)}, {"b", num(o.b)}}; }

// Q2, Q3 / N3, N2 (quaternion modules), <W>xmu<ell> (tensor with the trace form), mu<ell>xC2.
RepWithForm module_for(const std::string& g, long ell) {
  auto quaternion = [&](const std::string& name) -> RepWithForm {
    if (name == "Q2" || name == "N2") return quaternion_module(ell, 2);
    if (name == "Q3" || name == "N3") return quaternion_module(ell, 3);
    fail(ErrorKind::BadSpec, "unknown module '" + name + "'");
  };
  const std::string mu = "mu" + std::to_string(ell);
  if (g == mu + "xC2") return cyclotomic_eta_pairing(Ring::base(ell));
  auto pos = g.find("x" + mu);
  if (pos != std::string::npos && pos + 1 + mu.size() == g.size()) {
    RepWithForm w = quaternion(g.substr(0, pos));
    RepWithForm m = mu_ell_regular(w.rep.ring);
    return tensor_rep(w.rep, *w.form, m.rep, *m.form);
  }
  return quaternion(g);
}

int cmd_ring_info(const Opts& o) {
  RingRef r = Ring::from_spec(o.ring.empty() ? "Z" + std::to_string(o.ell) : o.ring);
  json info{{"spec", r->spec()},
            {"ell", num(r->ell())},
            {"precision", num(r->N())},
            {"degree", num(r->dim())},
            {"e", num(r->e())},
            {"f", num(r->f())},
            {"residue_size", num(r->residue_size())},
            {"uniformizer", elem_to_json(r->uniformizer())},
            {"has_conjugation", r->has_conj()}};
  std::cout << info.dump(2) << "\n";
  return kOk;
}

int cmd_pairing(const Opts& o) {
  auto t0 = std::chrono::steady_clock::now();
  const std::string g = o.group.empty() ? "Q2" : o.group;
  RepWithForm m = module_for(g, o.ell);
  std::vector<PairingBlock> blocks;
  if (g.rfind("mu", 0) == 0)
    blocks = {{BlockKind::Cyclotomic, 0, m.rep.dim, 0}};
  else if (g.find("xmu") != std::string::npos)
    fail(ErrorKind::HypothesesUnmet, "the tensor module is not simple enough for a block decomposition here");
  else
    blocks = {{BlockKind::Simple, 0, m.rep.dim, 0}};
  PairingResult pr = perfect_pairing_via_43(m.rep, *m.form, blocks);
  json setting = base_setting(o);
  setting["group"] = g;
  json cert = make_certificate("perfect-pairing", setting, pairing_result_json(g, m.rep, pr), m.rep.ring->N(),
                               pr.perfect && pr.invariant, ms_since(t0));
  return emit(o, cert);
}

struct Pipeline {
  RepWithForm m;
  Lattice start;
  StabilizedPair sp;
};

Pipeline run_stabilize(const Opts& o) {
  const std::string g = o.group.empty() ? "Q2xmu" + std::to_string(o.ell) : o.group;
  Pipeline pl{module_for(g, o.ell), {}, {}};
  pl.start = Lattice::standard(pl.m.rep.ring, pl.m.rep.dim);
  BilinearForm f = normalize_form(*pl.m.form, pl.start);
  pl.sp = stabilize_lattice(pl.start, f, &pl.m.rep);
  return pl;
}

int cmd_stabilize(const Opts& o) {
  auto t0 = std::chrono::steady_clock::now();
  Pipeline pl = run_stabilize(o);
  json setting = base_setting(o);
  setting["group"] = pl.m.rep.group.spec;
  bool ok = std::all_of(pl.sp.dual_index_exponents.begin(), pl.sp.dual_index_exponents.end(),
                        [](int e) { return e == 0 || e == 1; });
  json cert = make_certificate("stabilized-lattice", setting, stabilized_json(pl.m.rep, pl.start, pl.sp),
                               pl.m.rep.ring->N(), ok, ms_since(t0));
  return emit(o, cert);
}

int cmd_reduce(const Opts& o) {
  auto t0 = std::chrono::steady_clock::now();
  Pipeline pl = run_stabilize(o);
  ResidueEmbedding e = reduce_embedding(pl.sp, pl.m.rep);
  json setting = base_setting(o);
  setting["group"] = pl.m.rep.group.spec;
  bool ok = e.injective && e.charpolys_match && e.homomorphism;
  json cert = make_certificate("residue-embedding", setting, embedding_json(pl.m.rep, e), pl.m.rep.ring->N(), ok,
                               ms_since(t0));
  int rc = emit(o, cert);
  if (rc == kOk && !e.hypotheses_met) return kUnmet;
  return rc;
}

int cmd_sharpness(const Opts& o) {
  auto t0 = std::chrono::steady_clock::now();
  SettingKind kind = setting_from_name(o.kind);
  json setting = base_setting(o);
  setting["kind"] = o.kind;
  setting["seed"] = num(o.seed);
  if (kind == SettingKind::AbVar71) fail(ErrorKind::BadSpec, "use the abvar subcommand");
  if (kind == SettingKind::Thm65Residue) {
    ResidueObstruction r = no_residue_symplectic_embedding(o.ell, o.p);
    json cert = make_certificate("residue-obstruction", setting, residue_obstruction_json(r),
                                 Ring::base(o.ell)->N(), r.verified(), ms_since(t0));
    return emit(o, cert);
  }
  CounterexampleSetting s = build_counterexample(kind, o.ell, o.p, o.b);
  ObstructionCertificate c = no_perfect_pairing_oracle(s, o.seed);
  ObstructionCertificate ctl = positive_control(s);
  bool ok = c.verified() && !ctl.all_obstructed;
  json cert = make_certificate("pairing-obstruction", setting, obstruction_json(s, c, ctl), s.K->N(), ok, ms_since(t0));
  return emit(o, cert);
}

int cmd_abvar(const Opts& o) {
  auto t0 = std::chrono::steady_clock::now();
  AbVarScenario a = abvar_scenario(o.p, o.ell, o.b);
  json setting = base_setting(o);
  setting["statement"] = "every polarization degree divisible by " + std::to_string(o.ell);
  json cert = make_certificate("polarization-degree", setting, abvar_json(a), a.setting.K->N(), a.verified,
                               ms_since(t0));
  int rc = emit(o, cert);
  if (!o.out.empty()) std::cout << "d = " << a.d << "\n";
  return rc;
}

int cmd_check(const Opts& o) {
  std::ifstream f(o.file);
  if (!f) {
    std::cerr << "cannot read " << o.file << "\n";
    return kUsage;
  }
  json cert;
  try {
    cert = json::parse(f);
  } catch (const json::exception& e) {
    std::cerr << "not a JSON certificate: " << e.what() << "\n";
    return kUsage;
  }
  if (cert.contains("precision") && cert["precision"].is_string())
    setenv("LLADIC_PRECISION", cert["precision"].get<std::string>().c_str(), 1);
  Reverification r = verify_certificate(cert);
  bool claimed = cert.value("verified", false);
  std::cout << (r.ok ? "verified" : "refuted") << ": " << r.detail << "\n";
  if (r.ok != claimed) std::cout << "recorded verdict disagrees with the re-verification\n";
  return r.ok && claimed ? kOk : kRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact ell-adic lattice algebra"};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* c) {
    c->add_option("-l,--prime", o.ell, "the prime ell");
    c->add_option("--p", o.p, "residue characteristic of the inertia setting");
    c->add_option("--precision", o.precision, "ell-adic digits");
    c->add_option("--b", o.b, "number of trivial symplectic planes");
    c->add_option("--group", o.group, "group or module, e.g. Q2, N3, Q2xmu5, mu5xC2");
    c->add_option("--out", o.out, "certificate path");
    c->add_option("--seed", o.seed, "seed for the randomized cross-checks");
  };

  auto* ring = app.add_subcommand("ring", "ring utilities");
  ring->require_subcommand(1);
  auto* ring_info = ring->add_subcommand("info", "describe a ring");
  common(ring_info);
  ring_info->add_option("--ring", o.ring, "ring spec such as Z5/real/cyc");

  auto* pairing = app.add_subcommand("pairing", "perfect pairings");
  pairing->require_subcommand(1);
  auto* construct = pairing->add_subcommand("construct", "build a stable lattice with a perfect invariant form");
  common(construct);

  auto* stabilize = app.add_subcommand("stabilize", "iterate to a lattice with pi T* in T");
  common(stabilize);
  auto* reduce = app.add_subcommand("reduce", "residue embedding and characteristic polynomials");
  common(reduce);

  auto* sharp = app.add_subcommand("sharpness", "counterexample checks");
  sharp->require_subcommand(1);
  auto* verify = sharp->add_subcommand("verify", "run the obstruction oracle");
  common(verify);
  verify->add_option("--kind", o.kind, "prop61, thm62, cor64, thm65 or thm66")->required();

  auto* abvar = app.add_subcommand("abvar", "polarization degree scenario");
  common(abvar);

  auto* check = app.add_subcommand("check", "re-verify");
  check->require_subcommand(1);
  auto* certificate = check->add_subcommand("certificate", "re-verify a JSON certificate");
  certificate->add_option("file", o.file, "certificate path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  if (o.precision > 0) setenv("LLADIC_PRECISION", std::to_string(o.precision).c_str(), 1);

  try {
    if (*ring_info) return cmd_ring_info(o);
    if (*construct) return cmd_pairing(o);
    if (*stabilize) return cmd_stabilize(o);
    if (*reduce) return cmd_reduce(o);
    if (*verify) return cmd_sharpness(o);
    if (*abvar) return cmd_abvar(o);
    if (*certificate) return cmd_check(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kRefuted;
  }
  return kUsage;
}
