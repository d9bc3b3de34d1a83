#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's KL, cell or Bruhat code paths.

#include <map>
#include <utility>
#include <vector>

#include "klc/coxeter.hpp"
#include "klc/ordgroup.hpp"

namespace klc::oracle {

using TVector = std::map<Elem, LaurentPoly>;

/// bar(T_w) as the product of T_s^-1 = T_s - (v^phi - v^-phi) along a
/// reduced word, with its own multiplication routine.
TVector bar_standard(const CoxeterGroup& group, const WeightFunction& weights, Elem w);

/// All p*_{x,y}: solves p_x - bar(p_x) = sum_{z != x} bar(p_z) r_{x,z} from
/// the top down, keeping the strictly negative part. Keyed by (x, y).
std::map<std::pair<Elem, Elem>, LaurentPoly> kl_polynomials(const CoxeterGroup& group,
                                                            const WeightFunction& weights);

/// x <= y iff the word of x is a product of a subword of the word of y.
bool bruhat_by_subwords(const CoxeterGroup& group, Elem x, Elem y);

/// Closure of relation[y][z] (z reachable from y in one step) to a preorder
/// matrix via Floyd-Warshall.
std::vector<std::vector<bool>> transitive_closure(std::vector<std::vector<bool>> relation);

}  // namespace klc::oracle
