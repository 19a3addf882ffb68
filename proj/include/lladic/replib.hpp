#pragma once
#include <optional>
#include <string>
#include <vector>

#include "lladic/groups.hpp"
#include "lladic/latmod.hpp"

namespace lladic {

struct RepBlock {
  std::string label;
  int dim = 0;
  int multiplicity = 1;
  bool trivial = false;
};

// Integral matrix representation of a finite group over O_K.
struct Representation {
  FiniteGroup group;
  RingRef ring = nullptr;
  int dim = 0;
  std::vector<Mat> gen_images;
  std::vector<Mat> images;  // one per group element
  std::vector<RepBlock> blocks;

  const Mat& image(int g) const { return images[g]; }
};

struct RepWithForm {
  Representation rep;
  std::optional<BilinearForm> form;
};

// Fills images from words and checks every relation of the multiplication table.
Representation make_representation(FiniteGroup g, RingRef r, std::vector<Mat> gen_images, int dim = -1);

// Q_p (or Q_2 when p = 2) on K^2 through zeta_q, q = p or 4; K defaults to Z_ell.
RepWithForm quaternion_split(long ell, long p, RingRef k = nullptr);
// Q_p on Q_ell(zeta_q) viewed as Q_ell^2, for ell = -1 mod q.
RepWithForm quaternion_nonsplit(long ell, long p);
// Natural choice between the two above.
RepWithForm quaternion_module(long ell, long p);
// mu_ell acting on O_K[zeta_ell] with the trace form tr(x ybar).
RepWithForm mu_ell_regular(RingRef k);
Representation trivial_rep(const FiniteGroup& g, RingRef k, int n);
RepWithForm tensor_rep(const Representation& r1, const BilinearForm& f1, const Representation& r2,
                       const BilinearForm& f2);
RepWithForm direct_sum_rep(const std::vector<RepWithForm>& parts);

bool form_is_invariant(const Representation& r, const BilinearForm& f, bool parallel = true);
// Primitive integral basis of the invariant forms of the given symmetry.
std::vector<Mat> invariant_forms(const Representation& r, Symmetry sym);
Lattice stable_lattice(const Representation& r, const Lattice& s0, bool parallel = true);
bool is_stable(const Representation& r, const Lattice& t);
// Matrix of a in the basis of t (t must be a-stable).
Mat matrix_in_basis(const Mat& a, const Lattice& t);
std::vector<Elem> char_poly(const Representation& r, int g);
// Simplicity of T/mT over the residue field; TooLarge beyond max_vectors projective points.
bool is_simple_mod_m(const Representation& r, const Lattice& t, long max_vectors = 200000);

// Entrywise embedding into a ring k above the representation's ring.
Representation extend_scalars(const Representation& r, RingRef k);
BilinearForm extend_form(const BilinearForm& f, RingRef k);
RepWithForm extend_scalars(const RepWithForm& r, RingRef k);

// Matrix of multiplication by x in the power basis of x.ring() over its parent.
Mat power_basis_mult(const Elem& x);

}  // namespace lladic
