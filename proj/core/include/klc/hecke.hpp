#pragma once

// The Iwahori-Hecke algebra H(W,S,phi) of a finite Coxeter group over
// A = Z[Gamma]: standard basis arithmetic, the bar involution, the
// Kazhdan-Lusztig basis, structure constants and Geck's mixed basis
// relative to a parabolic subgroup.

#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klc/coxeter.hpp"
#include "klc/ordgroup.hpp"

namespace klc {

/// Sparse vector indexed by group elements, sorted by index, no zero entries.
using SparseVec = std::vector<std::pair<Elem, LaurentPoly>>;

const LaurentPoly* find_coefficient(const SparseVec& v, Elem w);

enum class Basis { Standard, KL };

/// Element of H in the standard basis (T_w) or the KL basis (C_w).
class HeckeElement {
 public:
  explicit HeckeElement(Basis basis = Basis::Standard) : basis_(basis) {}
  HeckeElement(Basis basis, SparseVec terms);

  Basis basis() const { return basis_; }
  const SparseVec& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  LaurentPoly coefficient(Elem w) const;

  HeckeElement& operator+=(const HeckeElement& other);
  HeckeElement& operator-=(const HeckeElement& other);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  /// Scalar multiplication by an element of A.
  friend HeckeElement operator*(const LaurentPoly& a, const HeckeElement& h);

  bool operator==(const HeckeElement&) const = default;

 private:
  Basis basis_;
  SparseVec terms_;
};

/// Coefficients h_{x,y,z} of C_x C_y for all pairs: row (x,y) lists z -> h.
class StructureTable {
 public:
  StructureTable() = default;
  StructureTable(std::size_t size, std::vector<SparseVec> rows) : size_(size), rows_(std::move(rows)) {}

  std::size_t size() const { return size_; }
  const SparseVec& row(Elem x, Elem y) const { return rows_[static_cast<std::size_t>(x) * size_ + y]; }

 private:
  std::size_t size_ = 0;
  std::vector<SparseVec> rows_;
};

/// Expansion of every C_{by} in Geck's mixed basis G_{ax} = T_a C_x with
/// a in X_I, x in W_I. Rows and keys are W indices of by and ax.
class GeckTable {
 public:
  GeckTable() = default;
  GeckTable(GeneratorSet subset, std::vector<SparseVec> rows) : subset_(subset), rows_(std::move(rows)) {}

  GeneratorSet subset() const { return subset_; }
  /// The coefficients p^I_{a,x,b,y} of C_w, w = by, keyed by ax.
  const SparseVec& row(Elem w) const { return rows_[w]; }
  std::size_t size() const { return rows_.size(); }

 private:
  GeneratorSet subset_;
  std::vector<SparseVec> rows_;
};

class HeckeAlgebra {
 public:
  /// Precomputes bar(T_w) and C_w for every w (in parallel over w with
  /// `jobs` threads). Requires a complete enumeration of a finite W.
  HeckeAlgebra(std::shared_ptr<const CoxeterGroup> group, WeightFunction weights, std::size_t jobs = 1);

  const CoxeterGroup& group() const { return *group_; }
  const std::shared_ptr<const CoxeterGroup>& group_ptr() const { return group_; }
  const WeightFunction& weights() const { return weights_; }
  std::size_t gamma_rank() const { return weights_.rank(); }
  std::size_t jobs() const { return jobs_; }

  LaurentPoly one() const { return LaurentPoly::one(gamma_rank()); }
  /// v^phi(s) - v^-phi(s).
  const LaurentPoly& q(Generator s) const { return q_[s]; }
  /// phi(w) = sum of phi over a reduced word.
  Exponent weighted_length(Elem w) const;

  HeckeElement standard(Elem w) const;
  HeckeElement kl(Elem w) const;

  HeckeElement mul_standard(const HeckeElement& a, const HeckeElement& b) const;
  /// h T_s and T_s h for h in the standard basis.
  HeckeElement right_mul_generator(const HeckeElement& h, Generator s) const;
  HeckeElement left_mul_generator(Generator s, const HeckeElement& h) const;
  /// T_w h and h T_w.
  HeckeElement left_mul_standard(Elem w, const HeckeElement& h) const;
  HeckeElement right_mul_standard(const HeckeElement& h, Elem w) const;
  /// Product of two elements in any bases, returned in the standard basis.
  HeckeElement multiply(const HeckeElement& a, const HeckeElement& b) const;

  /// A-semilinear bar involution of an element in the standard basis.
  HeckeElement bar(const HeckeElement& h) const;
  /// bar(T_w) in the standard basis.
  const SparseVec& bar_standard(Elem w) const { return bar_t_[w]; }

  /// C_w in the standard basis: x -> p*_{x,w}.
  const SparseVec& kl_column(Elem w) const { return kl_[w]; }
  /// p*_{x,y} (zero when x is not below y).
  LaurentPoly pstar(Elem x, Elem y) const;

  HeckeElement to_kl(const HeckeElement& h) const;
  HeckeElement to_standard(const HeckeElement& h) const;

  /// z -> h_{x,y,z}, computed through the standard basis and memoized.
  SparseVec structure_constants(Elem x, Elem y) const;
  /// C_s C_y (left) or C_y C_s (right) in the KL basis.
  const SparseVec& generator_action(Generator s, Elem y, Side side) const;
  /// Every h_{x,y,z}; computed once, in parallel over y.
  const StructureTable& structure_table() const;

  /// Geck's expansion relative to W_I.
  GeckTable geck_table(const Parabolic& parabolic) const;

 private:
  void build_bar_table();
  void build_kl_table();
  void build_generator_actions();
  HeckeElement left_mul_word(std::span<const Generator> word, const HeckeElement& h) const;

  std::shared_ptr<const CoxeterGroup> group_;
  WeightFunction weights_;
  std::size_t jobs_;
  std::vector<LaurentPoly> q_;
  std::vector<LaurentPoly> v_minus_phi_;
  std::vector<SparseVec> bar_t_;
  std::vector<SparseVec> kl_;
  std::vector<std::vector<SparseVec>> left_action_;   // [s][y]
  std::vector<std::vector<SparseVec>> right_action_;  // [s][y]

  mutable std::mutex memo_mutex_;
  mutable std::unordered_map<std::uint64_t, SparseVec> memo_;
  mutable std::once_flag table_once_;
  mutable StructureTable table_;
};

/// "(c)*T[w] + ..." (or C[w]) in ShortLex order; "0" for zero.
std::string render(const CoxeterGroup& group, const HeckeElement& h);

}  // namespace klc
