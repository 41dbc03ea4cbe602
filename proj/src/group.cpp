// vnframes/group.cpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "vnframes/group.hpp"

#include <algorithm>

namespace vnframes {

namespace {

void check_table_shape(const std::vector<std::vector<int>>& cayley, int n) {
  if (n <= 0) throw Error("invalid-order: group order must be positive");
  if (static_cast<int>(cayley.size()) != n)
    throw Error("cayley table has wrong number of rows");
  for (const auto& row : cayley) {
    if (static_cast<int>(row.size()) != n)
      throw Error("cayley table has a wrong-sized row");
    for (int v : row)
      if (v < 0 || v >= n) throw Error("cayley entry out of range");
  }
}

int find_identity(const std::vector<std::vector<int>>& cayley, int n) {
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      ok = cayley[e][a] == a && cayley[a][e] == a;
    if (ok) return e;
  }
  throw Error("cayley table has no identity element");
}

}  // namespace

GroupPtr make_group(std::vector<std::string> labels,
                    std::vector<std::vector<int>> cayley) {
  const int n = static_cast<int>(cayley.size());
  check_table_shape(cayley, n);
  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = "g" + std::to_string(i);
  }
  if (static_cast<int>(labels.size()) != n)
    throw Error("label list does not match group order");

  auto g = std::make_shared<FiniteGroup>();
  g->order = n;
  g->labels = std::move(labels);
  g->cayley = std::move(cayley);
  g->identity = find_identity(g->cayley, n);

  // Latin-square property: rows and columns are permutations.
  std::vector<char> seen(n);
  for (int a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[g->cayley[a][b]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error("cayley row " + std::to_string(a) + " is not a permutation");
    std::fill(seen.begin(), seen.end(), 0);
    for (int b = 0; b < n; ++b) seen[g->cayley[b][a]] = 1;
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
      throw Error("cayley column " + std::to_string(a) +
                  " is not a permutation");
  }

  g->inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (g->cayley[a][b] == g->identity && g->cayley[b][a] == g->identity) {
        g->inverse[a] = b;
        break;
      }
    }
    if (g->inverse[a] < 0)
      throw Error("element " + std::to_string(a) + " has no inverse");
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g->cayley[g->cayley[a][b]][c] != g->cayley[a][g->cayley[b][c]])
          throw Error("cayley table is not associative");

  g->abelian = true;
  for (int a = 0; a < n && g->abelian; ++a)
    for (int b = 0; b < a && g->abelian; ++b)
      g->abelian = g->cayley[a][b] == g->cayley[b][a];

  return g;
}

GroupPtr make_cyclic(int n) {
  if (n < 1) throw Error("invalid-order: cyclic group needs n >= 1");
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    labels[a] = std::to_string(a);
    for (int b = 0; b < n; ++b) cayley[a][b] = (a + b) % n;
  }
  return make_group(std::move(labels), std::move(cayley));
}

GroupPtr make_product(const GroupPtr& g, const GroupPtr& h) {
  if (!g || !h) throw Error("make_product: null group");
  const int ng = g->order, nh = h->order, n = ng * nh;
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    const int ag = a / nh, ah = a % nh;
    labels[a] = "(" + g->labels[ag] + "," + h->labels[ah] + ")";
    for (int b = 0; b < n; ++b) {
      const int bg = b / nh, bh = b % nh;
      cayley[a][b] = g->cayley[ag][bg] * nh + h->cayley[ah][bh];
    }
  }
  return make_group(std::move(labels), std::move(cayley));
}

GroupPtr make_dihedral(int n) {
  if (n < 3) throw Error("invalid-order: dihedral group needs n >= 3");
  const int order = 2 * n;
  // Index k < n is the rotation r^k, index n + k is the reflection r^k s.
  // Products follow from s r^j = r^-j s:
  //   (r^i)(r^j)     = r^{i+j}
  //   (r^i)(r^j s)   = r^{i+j} s
  //   (r^i s)(r^j)   = r^{i-j} s
  //   (r^i s)(r^j s) = r^{i-j}
  auto rot = [n](int k) { return ((k % n) + n) % n; };
  std::vector<std::vector<int>> cayley(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int k = 0; k < n; ++k) {
    labels[k] = k == 0 ? "e" : "r^" + std::to_string(k);
    labels[n + k] = k == 0 ? "s" : "r^" + std::to_string(k) + " s";
  }
  for (int a = 0; a < order; ++a) {
    const bool ar = a >= n;
    const int i = ar ? a - n : a;
    for (int b = 0; b < order; ++b) {
      const bool br = b >= n;
      const int j = br ? b - n : b;
      int k;
      bool refl;
      if (!ar && !br) {
        k = rot(i + j);
        refl = false;
      } else if (!ar && br) {
        k = rot(i + j);
        refl = true;
      } else if (ar && !br) {
        k = rot(i - j);
        refl = true;
      } else {
        k = rot(i - j);
        refl = false;
      }
      cayley[a][b] = refl ? n + k : k;
    }
  }
  return make_group(std::move(labels), std::move(cayley));
}

GroupPtr make_heisenberg(int p) {
  if (p < 2) throw Error("invalid-order: heisenberg group needs p >= 2");
  const int n = p * p * p;
  auto idx = [p](int a, int b, int c) { return a * p * p + b * p + c; };
  std::vector<std::vector<int>> cayley(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        labels[idx(a, b, c)] = "(" + std::to_string(a) + "," +
                               std::to_string(b) + "," + std::to_string(c) +
                               ")";
  for (int x = 0; x < n; ++x) {
    const int a = x / (p * p), b = (x / p) % p, c = x % p;
    for (int y = 0; y < n; ++y) {
      const int a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      cayley[x][y] = idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
    }
  }
  return make_group(std::move(labels), std::move(cayley));
}

std::pair<std::vector<Eigen::MatrixXcd>, std::vector<Eigen::MatrixXcd>>
regular_representations(const FiniteGroup& g) {
  const int n = g.order;
  std::vector<Eigen::MatrixXcd> rho(n), lambda(n);
  for (int gamma = 0; gamma < n; ++gamma) {
    Eigen::MatrixXcd r = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
      r(g.mul(x, g.inv(gamma)), x) = 1.0;  // rho(g): delta_x -> delta_{x g^-1}
      l(g.mul(gamma, x), x) = 1.0;         // lambda(g): delta_x -> delta_{g x}
    }
    rho[gamma] = std::move(r);
    lambda[gamma] = std::move(l);
  }
  return {std::move(rho), std::move(lambda)};
}

bool same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->order == b->order && a->cayley == b->cayley;
}

}  // namespace vnframes
