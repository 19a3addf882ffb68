#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lladic/finite_field.hpp"
#include "lladic/replib.hpp"

namespace lladic {

// Rescale f by a power of pi so that f(s, s) = O.
BilinearForm normalize_form(const BilinearForm& f, const Lattice& s);

struct StabilizedPair {
  Lattice lattice;
  BilinearForm form;
  std::vector<int> dual_index_exponents;  // elementary divisors of T*/T
  int iterations = 0;
  int bound = 0;  // sum of the initial exponents
  std::vector<Lattice> chain;
};

// Iterate S <- S + (pi^-1 S cap pi S*) to a fixpoint. When r is given the
// start lattice is checked to be stable.
StabilizedPair stabilize_lattice(const Lattice& s, const BilinearForm& f, const Representation* r = nullptr);

struct ResidueEmbedding {
  const Fq* field = nullptr;
  int dim0 = 0, dim1 = 0;       // T/mT* and T*/T
  std::vector<FMat> images;     // block diagonal, one per group element
  FMat form0, form1;            // fbar and ftilde
  std::vector<std::vector<long>> charpolys;  // residue char poly per element
  bool charpolys_match = false;
  bool homomorphism = false;
  std::vector<int> kernel;       // elements acting trivially
  bool injective = false;
  bool hypotheses_met = false;   // 2e < ell - 1
  bool forms_nondegenerate = false;
  bool symmetry_matches = false;
};

ResidueEmbedding reduce_embedding(const StabilizedPair& sp, const Representation& r, bool parallel = true);

enum class RigidityStatus { Pass, Fail, HypothesesUnmet };
enum class RigidityMode { A, B };

struct RigidityResult {
  RigidityStatus status = RigidityStatus::HypothesesUnmet;
  int wi = -1, wj = -1;  // witness entry of A - 1 when not the identity
  std::string detail;
};

RigidityResult rigidity_check(const Mat& a, long order, RigidityMode mode);
const char* rigidity_name(RigidityStatus s);

// mu_ell x {+-1} acting on O_K[zeta_ell] with f'(x, y) = pi_K^-1 tr(x eta ybar).
RepWithForm cyclotomic_eta_pairing(RingRef k);

enum class BlockKind { Simple, Cyclotomic, IsotropicPair };

struct PairingBlock {
  BlockKind kind = BlockKind::Simple;
  int offset = 0;
  int dim = 0;        // for IsotropicPair: dimension of each half
  int partner = 0;    // IsotropicPair: offset of the second half
};

struct PairingResult {
  Lattice lattice;
  BilinearForm form;
  bool perfect = false;
  bool invariant = false;
  bool hypotheses_met = false;  // ell > d e + 1
  int d = 0, e = 0;
  std::vector<int> exponents;
  std::string note;
};

// Assemble a stable lattice with a perfect invariant alternating form block by block.
PairingResult perfect_pairing_via_43(const Representation& r, const BilinearForm& f,
                                     const std::vector<PairingBlock>& blocks);

// Restriction of r to the invariant coordinate block [offset, offset + dim).
Representation restrict_rep(const Representation& r, int offset, int dim);

}  // namespace lladic
