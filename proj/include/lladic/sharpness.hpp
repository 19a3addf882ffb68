#pragma once
#include <optional>
#include <string>
#include <vector>

#include "lladic/symplectify.hpp"

namespace lladic {

enum class SettingKind { Prop61, Thm62, Cor64, Thm66, Thm65Residue, AbVar71 };
const char* setting_name(SettingKind k);
SettingKind setting_from_name(const std::string& s);

struct CounterexampleSetting {
  SettingKind kind = SettingKind::Thm62;
  long ell = 0, p = 0;
  int b = 0;
  RingRef K = nullptr, M = nullptr;
  RepWithForm w;  // the N-module W with f1 (trivial 1-dimensional for Prop61)
  RepWithForm v;  // V = W (x) M with f = f1 (x) f2
  Symmetry sym = Symmetry::Alternating;
  Lattice s;      // S = T1 (x) O_M
  std::vector<Mat> form_space;
  int mplus_degree = 0;
  int d = 0, e = 0;
  // Cor64 only
  std::optional<RepWithForm> u;
  std::optional<Mat> tau;
};

CounterexampleSetting build_counterexample(SettingKind kind, long ell, long p = 2, int b = 0);

struct ObstructionCell {
  int r = 0, j = 0;
  bool integral = false;
  std::vector<int> exponents;
  bool perfect = false;
  Mat gram;
  int denom = 0;
  Mat delta_op;  // delta acting on V, up to the extra denominator
  int extra = 0;
};

struct TrivialSplit {
  bool tau_idempotent = false;
  bool tau_is_projection = false;
  bool direct_sum = false;
  bool cross_pairing_zero = false;
  int forms_checked = 0;
};

struct ObstructionCertificate {
  std::string setting;
  int precision = 0;
  int r_count = 0;
  std::vector<ObstructionCell> cells;
  bool all_obstructed = false;
  bool shift_identity = false;     // Gram(r, j) ~ Gram(0, j + r)
  bool unit_invariance = false;
  bool trace_containment = false;           // f_delta(eta^(ell-2) S, S) in ell O_K, when K/Q_ell is unramified
  bool trace_containment_applicable = false;
  bool form_space_dimension = false;
  bool lattice_classification = false;
  std::optional<TrivialSplit> split;
  bool verified() const;
};

ObstructionCertificate no_perfect_pairing_oracle(const CounterexampleSetting& s, unsigned seed = 1,
                                                 bool parallel = true);

// The same search with the mu_ell factor dropped: W alone with its form.
ObstructionCertificate positive_control(const CounterexampleSetting& s, bool parallel = true);

// Cell computation over an explicit form and lattice basis.
ObstructionCell obstruction_cell(const Mat& f, int fden, const Mat& basis, const Mat& delta_op, int extra_denom,
                                 int r, int j);

struct TraceContainment {
  std::vector<Elem> traces;  // tr(delta eta^(ell-2) zeta^i) times ell^k
  bool contained = false;
};
// delta = num / ell^k in M+; PreconditionFailed unless tr(delta O_M) is integral.
TraceContainment lemma311_check(const Elem& num, int k);
// Trace dual of O_M equals eta^(2-ell) O_M, for K with e(K) = 1.
bool inverse_different_check(RingRef k);

struct ResidueObstruction {
  long ell = 0;
  long field_size = 0;
  int dim = 0;
  int solution_dim = 0;
  long enumerated = 0;
  bool exhaustive = false;
  bool all_degenerate = false;
  bool identity1 = false;
  bool identity2 = false;
  bool h_zero = false;
  bool trace_congruence = false;
  bool unipotent_degenerate = false;
  std::vector<FMat> solutions;
  std::string ring;              // K, whose residue field is L
  std::vector<FMat> generators;  // N acting diagonally, then c
  bool verified() const {
    return all_degenerate && identity1 && identity2 && h_zero && trace_congruence && unipotent_degenerate;
  }
};

ResidueObstruction no_residue_symplectic_embedding(long ell, long p, long max_enum = 1000000);

// Invariant forms of the given symmetry over a finite field, as a kernel basis.
std::vector<FMat> finite_invariant_forms(const std::vector<FMat>& gens, Symmetry sym);

struct AbVarScenario {
  CounterexampleSetting setting;
  long p = 0, ell = 0;
  int b = 0, r = 0, d = 0;
  ObstructionCertificate obstruction;
  std::vector<std::string> conclusions;
  bool verified = false;
};

AbVarScenario abvar_scenario(long p, long ell, int b, bool parallel = true);

}  // namespace lladic
