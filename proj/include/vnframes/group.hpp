// vnframes/group.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef VNFRAMES_GROUP_HPP
#define VNFRAMES_GROUP_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vnframes/error.hpp"

namespace vnframes {

/// Finite discrete group stored as an explicit Cayley table.
///
/// cayley[a][b] is the index of the product a*b. Identity and inverses are
/// derived from the table and every group axiom is checked eagerly at
/// construction, so an instance that exists is valid. Element indexing is
/// canonical per constructor, which makes serialized groups deterministic.
struct FiniteGroup {
  int order = 0;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> cayley;
  int identity = 0;
  std::vector<int> inverse;
  bool abelian = false;

  int mul(int a, int b) const { return cayley[a][b]; }
  int inv(int a) const { return inverse[a]; }
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Builds a group from labels and a Cayley table; finds the identity,
/// computes inverses and validates associativity and the Latin-square
/// property. Throws Error on any violation.
GroupPtr make_group(std::vector<std::string> labels,
                    std::vector<std::vector<int>> cayley);

/// Z_n with cayley[a][b] = (a+b) mod n.
GroupPtr make_cyclic(int n);

/// Direct product with lexicographic index (a_g, a_h) -> a_g*|H| + a_h.
GroupPtr make_product(const GroupPtr& g, const GroupPtr& h);

/// Dihedral group of order 2n (n >= 3), presentation r^n = s^2 = e,
/// s r s = r^-1. Indexing: r^k -> k, r^k s -> n + k.
GroupPtr make_dihedral(int n);

/// Heisenberg group over Z_p (p >= 2): triples (a,b,c) with
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b') mod p, index a*p^2 + b*p + c.
GroupPtr make_heisenberg(int p);

/// Right and left regular representations as dense permutation matrices:
/// rho(g) delta_{g'} = delta_{g' g^-1} and lambda(g) delta_{g'} = delta_{g g'}.
std::pair<std::vector<Eigen::MatrixXcd>, std::vector<Eigen::MatrixXcd>>
regular_representations(const FiniteGroup& g);

/// True when the two handles describe the same group (pointer or
/// structural equality of the Cayley tables).
bool same_group(const GroupPtr& a, const GroupPtr& b);

}  // namespace vnframes

#endif  // VNFRAMES_GROUP_HPP
