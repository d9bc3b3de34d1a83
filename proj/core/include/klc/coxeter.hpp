#pragma once

// Coxeter systems, canonical (ShortLex) elements, enumerated finite groups,
// parabolic subgroups and weight functions.

#include <bit>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "klc/ordgroup.hpp"

namespace klc {

using Generator = std::uint8_t;
using Word = std::vector<Generator>;

enum class Side { Left, Right };

std::string to_string(Side side);
Side parse_side(std::string_view text);

/// Order m(s,t) = infinity.
inline constexpr int kInfinite = 0;

/// Subset of S as a bitmask (at most 32 generators).
class GeneratorSet {
 public:
  constexpr GeneratorSet() = default;
  constexpr explicit GeneratorSet(std::uint32_t bits) : bits_(bits) {}
  static GeneratorSet single(Generator s) { return GeneratorSet(1u << s); }
  static GeneratorSet first(std::size_t n) {
    return GeneratorSet(n >= 32 ? ~0u : ((1u << n) - 1));
  }

  std::uint32_t bits() const { return bits_; }
  bool contains(Generator s) const { return (bits_ >> s) & 1u; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  bool subset_of(GeneratorSet other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<Generator> members() const;
  std::optional<Generator> min() const;

  GeneratorSet operator|(GeneratorSet o) const { return GeneratorSet(bits_ | o.bits_); }
  GeneratorSet operator&(GeneratorSet o) const { return GeneratorSet(bits_ & o.bits_); }
  GeneratorSet without(GeneratorSet o) const { return GeneratorSet(bits_ & ~o.bits_); }
  GeneratorSet& insert(Generator s) {
    bits_ |= 1u << s;
    return *this;
  }

  bool operator==(const GeneratorSet&) const = default;
  /// Canonical order: by size, then by the sorted member list.
  std::strong_ordering operator<=>(const GeneratorSet& other) const;

 private:
  std::uint32_t bits_ = 0;
};

namespace detail {
class RootSystem;
}

class CoxeterSystem;

/// Element of W stored as its ShortLex-minimal reduced word.
class CoxeterElement {
 public:
  CoxeterElement() = default;

  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }

  bool operator==(const CoxeterElement&) const = default;
  /// ShortLex: by length, then lexicographically on generator indices.
  std::strong_ordering operator<=>(const CoxeterElement& other) const;

 private:
  friend class CoxeterSystem;
  explicit CoxeterElement(Word canonical) : word_(std::move(canonical)) {}

  Word word_;
};

/// Coxeter system (W,S) given by labels and a Coxeter matrix.
class CoxeterSystem {
 public:
  /// Validates symmetry, unit diagonal and off-diagonal orders >= 2 (or
  /// kInfinite). Throws UsageError on failure.
  CoxeterSystem(std::vector<std::string> labels, std::vector<std::vector<int>> matrix,
                std::string name = "");

  /// "An", "Bn"/"Cn", "Dn", "E6".."E8", "F4", "G2", "H3", "H4", "I2(m)"
  /// (m may be "inf").
  static CoxeterSystem named(std::string_view type);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Generator s) const { return labels_.at(s); }
  Generator generator(std::string_view label) const;
  int order(Generator s, Generator t) const { return matrix_[s][t]; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }
  GeneratorSet all() const { return GeneratorSet::first(rank()); }

  bool is_finite() const { return is_finite(all()); }
  std::optional<std::uint64_t> group_order() const { return parabolic_order(all()); }
  bool is_finite(GeneratorSet subset) const { return parabolic_order(subset).has_value(); }
  /// |W_I| when finite (decided by the classification of finite Coxeter
  /// graphs), nullopt otherwise.
  std::optional<std::uint64_t> parabolic_order(GeneratorSet subset) const;
  bool is_connected(GeneratorSet subset) const;
  std::vector<GeneratorSet> components(GeneratorSet subset) const;
  /// Type of a connected subset: "A3", "B3", "H3", "I2(5)", ... or "infinite".
  std::string component_type(GeneratorSet connected) const;

  /// Standard parabolic subsystem (W_I, I); labels are kept and generator
  /// indices renumbered in increasing order.
  CoxeterSystem restrict(GeneratorSet subset) const;

  /// Generator classes under the transitive closure of "m(s,t) odd"
  /// (conjugacy classes of generators). Returns the class id per generator.
  std::vector<std::size_t> conjugacy_classes() const;

  /// Canonical form of an arbitrary word (works for infinite W too).
  CoxeterElement normal_form(std::span<const Generator> word) const;
  CoxeterElement identity() const { return CoxeterElement(); }
  CoxeterElement multiply(const CoxeterElement& a, const CoxeterElement& b) const;
  CoxeterElement inverse(const CoxeterElement& a) const;
  GeneratorSet descents(const CoxeterElement& w, Side side) const;

  /// Labels joined by "." ("" for the identity).
  std::string render(const CoxeterElement& w) const;
  std::string render_word(std::span<const Generator> word) const;
  CoxeterElement parse_element(std::string_view text) const;
  /// Comma separated labels, in generator order.
  std::string render(GeneratorSet set) const;
  GeneratorSet parse_set(std::string_view text) const;

  const detail::RootSystem& roots() const { return *roots_; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> matrix_;
  std::shared_ptr<detail::RootSystem> roots_;
};

/// Index of an element inside an enumerated CoxeterGroup. Index order is
/// ShortLex order; 0 is the identity.
using Elem = std::uint32_t;
inline constexpr Elem kNoElem = static_cast<Elem>(-1);

/// The elements of W (or of a length ball in W) enumerated in ShortLex order
/// with multiplication tables by generators.
class CoxeterGroup {
 public:
  /// Enumerates W; if `max_length` is given only elements of length at most
  /// max_length are kept. Infinite W without a bound throws UsageError.
  static std::shared_ptr<const CoxeterGroup> build(const CoxeterSystem& system,
                                                   std::optional<std::size_t> max_length = {});

  const CoxeterSystem& system() const { return system_; }
  std::size_t rank() const { return system_.rank(); }
  std::size_t size() const { return words_.size(); }
  /// True when every element of W is present.
  bool is_complete() const { return complete_; }

  Elem identity() const { return 0; }
  const Word& word(Elem w) const { return words_[w]; }
  std::size_t length(Elem w) const { return words_[w].size(); }
  CoxeterElement element(Elem w) const { return system_.normal_form(words_[w]); }
  std::string render(Elem w) const { return system_.render_word(words_[w]); }
  /// Index of the element represented by an arbitrary word; kNoElem when it
  /// lies outside a truncated enumeration.
  Elem index(std::span<const Generator> word) const;
  Elem index(const CoxeterElement& w) const { return index(w.word()); }
  Elem parse(std::string_view text) const;

  Elem left_mul(Generator s, Elem w) const { return left_[s][w]; }
  Elem right_mul(Elem w, Generator s) const { return right_[s][w]; }
  Elem multiply(Elem a, Elem b) const;
  Elem inverse(Elem w) const { return inverse_[w]; }

  GeneratorSet descents(Elem w, Side side) const {
    return side == Side::Left ? left_descents_[w] : right_descents_[w];
  }

  /// Bruhat order, via the lifting property with a memoized bit matrix.
  bool bruhat_leq(Elem x, Elem y) const;

  bool in_parabolic(Elem w, GeneratorSet subset) const;
  std::vector<Elem> parabolic_elements(GeneratorSet subset) const;
  /// X_I: elements without right descents in I (minimal in xW_I).
  std::vector<Elem> min_coset_reps(GeneratorSet subset) const;
  /// Longest element of a finite W_I (requires a complete enumeration).
  Elem longest(GeneratorSet subset) const;
  Elem longest() const { return longest(system_.all()); }

  struct CosetSplit {
    Elem rep;   // x in X_I
    Elem part;  // pr_L^I(w) or pr_R^I(w)
  };
  /// Left: w = x * part with lengths adding. Right: w = part * x^-1.
  CosetSplit coset_decompose(Elem w, GeneratorSet subset, Side side) const;

  /// Image of w under the automorphism induced by a permutation of S.
  Elem apply_automorphism(std::span<const Generator> perm, Elem w) const;

 private:
  CoxeterGroup(const CoxeterSystem& system) : system_(system) {}
  void build_bruhat() const;

  CoxeterSystem system_;
  bool complete_ = false;
  std::vector<Word> words_;
  std::vector<std::vector<Elem>> left_;   // [s][w] -> s*w
  std::vector<std::vector<Elem>> right_;  // [s][w] -> w*s
  std::vector<Elem> inverse_;
  std::vector<GeneratorSet> left_descents_;
  std::vector<GeneratorSet> right_descents_;

  mutable std::once_flag bruhat_once_;
  mutable std::vector<std::vector<std::uint64_t>> bruhat_;  // row y, bit x
};

/// phi : S -> Gamma_{>0}, constant on conjugate generators.
class WeightFunction {
 public:
  /// Throws UsageError unless all values are strictly positive, of one rank,
  /// and equal on generators joined by an odd m(s,t).
  WeightFunction(const CoxeterSystem& system, std::vector<Exponent> values);
  /// phi = 1 everywhere (rank 1).
  static WeightFunction constant(const CoxeterSystem& system, std::int64_t value = 1);
  /// "s=1,t=2" or "s=(1,0),t=(0,1)"; missing generators default to the
  /// weight of a conjugate generator, then to 1 (or (1,0,..)).
  static WeightFunction parse(const CoxeterSystem& system, std::string_view text);

  std::size_t rank() const { return values_.front().rank(); }
  const Exponent& operator[](Generator s) const { return values_[s]; }
  const std::vector<Exponent>& values() const { return values_; }
  bool is_constant() const;
  /// phi_I on the renumbered subsystem.
  WeightFunction restrict(const CoxeterSystem& subsystem, GeneratorSet subset) const;
  std::string to_string(const CoxeterSystem& system) const;

  bool operator==(const WeightFunction&) const = default;

 private:
  WeightFunction() = default;
  std::vector<Exponent> values_;
};

/// Parabolic subgroup data: W_I as its own enumerated group plus its
/// embedding in W.
struct Parabolic {
  GeneratorSet subset;
  std::vector<Generator> generators;          // subgroup generator -> generator of W
  std::shared_ptr<const CoxeterGroup> group;  // (W_I, I) renumbered
  std::vector<Elem> embedding;                // W_I index -> W index
  std::vector<Elem> restriction;              // W index -> W_I index or kNoElem
  std::vector<Elem> min_reps;                 // X_I as W indices
  Elem longest = kNoElem;                     // w_I as W index
  std::vector<Elem> omega;                    // omega_I on W_I indices

  Elem to_sub(Elem w) const { return restriction[w]; }
  Elem to_full(Elem u) const { return embedding[u]; }
};

/// Requires a complete enumeration of W and a finite W_I.
Parabolic make_parabolic(const CoxeterGroup& group, GeneratorSet subset);

/// delta^L(xw) = x delta(w) or delta^R(w x^-1) = delta(w) x^-1, where delta
/// is a map on W_I given on subgroup indices.
std::vector<Elem> extend_map(const CoxeterGroup& group, const Parabolic& parabolic,
                             std::span<const Elem> delta, Side side);
/// mu_L = mu o pr_L^I or mu_R = mu o pr_R^I.
std::vector<int> extend_signs(const CoxeterGroup& group, const Parabolic& parabolic,
                              std::span<const int> mu, Side side);
/// delta^op(w) = delta(w^-1)^-1 for a map on all of `group`.
std::vector<Elem> op_map(const CoxeterGroup& group, std::span<const Elem> delta);

/// Permutations of S preserving the Coxeter matrix and phi, identity first.
std::vector<std::vector<Generator>> diagram_automorphisms(const CoxeterSystem& system,
                                                          const WeightFunction& weights);

}  // namespace klc
