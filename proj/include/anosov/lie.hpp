// Root systems of types A-D in epsilon coordinates, Weyl groups as signed
// permutations, length and reduced words, the longest element, the opposition
// involution, and the rho-refined total order on weights.
//
// Copyright (c) 2026 the anosov authors. MIT license, see LICENSE.
#pragma once

#include <vector>

#include "anosov/rational.hpp"

namespace anosov {

enum class RootFamily { A, B, C, D };

const char* root_family_name(RootFamily f);
RootFamily root_family_from_name(const std::string& s);

// Realizations: A_r lives in the trace-zero hyperplane of R^{r+1} with roots
// e_i - e_j; B_r, C_r, D_r live in R^r with the usual e_i +- e_j (and e_i or
// 2 e_i for B/C).  A vector in the root lattice is positive exactly when its
// first nonzero coordinate is positive.
struct RootSystemData {
  RootFamily family = RootFamily::A;
  int rank = 0;
  int ambient = 0;
  std::vector<RatVec> simple_roots;
  std::vector<RatVec> positive_roots;
  RatVec half_sum;                       // rho, exact
  std::vector<std::vector<int>> cartan;  // a_ij = 2 (a_i, a_j) / (a_j, a_j)
};

// Signed permutation acting by (w x)[perm[i]] = sign[i] * x[i].
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;
  std::vector<int> word;  // reduced word in simple reflections, 0-based
  int length = 0;
};

// Total-order key: compare <rho, mu> first, break ties lexicographically on
// the canonicalized coordinates.  mu > 0 in the order iff sign() is +1.
struct OrderKey {
  Rat rho_pair;
  RatVec tie;

  int sign() const;
  bool operator<(const OrderKey& other) const;
  bool operator==(const OrderKey& other) const;
};

// Ranks: A needs rank >= 1, B and C rank >= 2, D rank >= 3.
RootSystemData build_root_system(RootFamily family, int rank);

// All group elements with reduced words attached; refuses groups larger than
// one million elements.
std::vector<WeylElement> weyl_enumerate(const RootSystemData& rs);
std::size_t weyl_order(const RootSystemData& rs);

WeylElement identity_element(const RootSystemData& rs);
WeylElement simple_reflection(const RootSystemData& rs, int i);
WeylElement compose(const WeylElement& u, const WeylElement& v);
WeylElement inverse(const WeylElement& w);
bool same_element(const WeylElement& u, const WeylElement& v);

// Number of positive roots sent to negative ones.
int length_of(const RootSystemData& rs, const WeylElement& w);

// Greedy descent: repeatedly strip the smallest simple reflection that
// shortens the element.
std::vector<int> reduced_word(const RootSystemData& rs, const WeylElement& w);

// Rebuilds perm/sign/length from an existing word.
WeylElement element_from_word(const RootSystemData& rs,
                              const std::vector<int>& word);

WeylElement longest_element(const RootSystemData& rs);

// iota[i] = j with w0 . alpha_i = -alpha_j.
std::vector<int> opposition_involution(const RootSystemData& rs);

RatVec half_sum_positive(const RootSystemData& rs);

// For type A, projects out the (1, ..., 1) direction; identity otherwise.
RatVec canonical_weight(const RootSystemData& rs, const RatVec& mu);

OrderKey orderA_key(const RootSystemData& rs, const RatVec& mu);

RatVec act_on_weight(const WeylElement& w, const RatVec& mu);

bool weight_equal(const RootSystemData& rs, const RatVec& a, const RatVec& b);

// Exact coordinates of v in the simple-root basis; fails on vectors outside
// the root span.
std::vector<Rat> simple_root_coordinates(const RootSystemData& rs,
                                         const RatVec& v);

}  // namespace anosov
