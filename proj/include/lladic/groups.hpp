#pragma once
#include <optional>
#include <string>
#include <vector>

namespace lladic {

// A finite group given by its full multiplication table. Element 0 is the identity.
struct FiniteGroup {
  std::string spec;
  std::vector<std::vector<int>> table;
  std::vector<int> inverse;
  std::vector<int> gens;  // element indices of the generators
  std::vector<std::string> gen_names;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> words;  // shortest word in gens (indices into gens) per element

  int order() const { return static_cast<int>(table.size()); }
  int mul(int a, int b) const { return table[a][b]; }
  int pow(int a, long k) const;
  int elem_order(int a) const;
  bool is_abelian() const;
  std::vector<int> generated(const std::vector<int>& elems) const;  // sorted subgroup
  bool is_subgroup(const std::vector<int>& elems) const;
  bool is_normal(const std::vector<int>& sub) const;
};

FiniteGroup cyclic_group(int n);
FiniteGroup quaternion_group(int m);
FiniteGroup np_group(long p);
FiniteGroup mu_group(long ell);
FiniteGroup direct_product(const std::vector<FiniteGroup>& parts);
// "Q2", "N3", "C6", "mu5", products joined by 'x' such as "Q2xmu5".
FiniteGroup build_group(const std::string& spec);
FiniteGroup quotient_group(const FiniteGroup& g, const std::vector<int>& normal_sub);
std::vector<std::vector<int>> normal_subgroups(const FiniteGroup& g);

struct DEllSplit {
  std::vector<int> N;  // normal subgroup of order prime to ell
  std::vector<int> L;  // cyclic ell-subgroup complement
};

struct Classification {
  bool inertia_type = false;
  std::vector<int> H;  // normal Sylow-p subgroup when inertia_type
  std::optional<DEllSplit> d_ell_split;
};

Classification classify(const FiniteGroup& g, long p, long ell);

}  // namespace lladic
