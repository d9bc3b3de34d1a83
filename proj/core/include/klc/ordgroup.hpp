#pragma once

// Totally ordered abelian groups Z^r (lexicographic order) and the group
// algebra A = Z[Z^r], written multiplicatively as Laurent polynomials in v.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace klc {

using Integer = boost::multiprecision::cpp_int;

/// Element of the lexicographically ordered group Z^rank.
class Exponent {
 public:
  static constexpr std::size_t kMaxRank = 6;

  Exponent() = default;
  Exponent(std::initializer_list<std::int64_t> components);
  explicit Exponent(std::span<const std::int64_t> components);

  static Exponent zero(std::size_t rank);

  std::size_t rank() const { return rank_; }
  std::int64_t operator[](std::size_t i) const { return values_[i]; }

  bool is_zero() const;
  bool is_positive() const;
  bool is_negative() const;

  Exponent operator-() const;
  Exponent& operator+=(const Exponent& other);
  Exponent& operator-=(const Exponent& other);
  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }

  /// Lexicographic comparison; throws StructuralError on rank mismatch.
  std::strong_ordering operator<=>(const Exponent& other) const;
  bool operator==(const Exponent& other) const;

  /// "3" for rank 1, "1,-2" otherwise.
  std::string to_string() const;
  static Exponent parse(std::string_view text);

  std::size_t hash() const;

 private:
  void check_rank(const Exponent& other) const;

  std::array<std::int32_t, kMaxRank> values_{};
  std::uint8_t rank_ = 0;
};

/// One term c * v^e of a Laurent polynomial.
struct Term {
  Exponent exponent;
  Integer coeff;

  bool operator==(const Term&) const = default;
};

/// Element of A = Z[Gamma]. Terms are stored with strictly increasing
/// exponents and nonzero coefficients, so equality is structural.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly monomial(const Exponent& e, Integer coeff = 1);
  static LaurentPoly constant(Integer c, std::size_t rank);
  static LaurentPoly one(std::size_t rank) { return constant(1, rank); }
  /// Builds from unsorted terms; equal exponents are merged, zeros dropped.
  static LaurentPoly from_terms(std::vector<Term> terms);

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Rank of the exponents, or nullopt for the zero polynomial.
  std::optional<std::size_t> rank() const;

  Integer coefficient(const Exponent& e) const;

  /// Largest exponent; nullopt stands for -infinity (zero polynomial).
  std::optional<Exponent> degree() const;
  /// Smallest exponent; nullopt stands for +infinity (zero polynomial).
  std::optional<Exponent> valuation() const;

  LaurentPoly bar() const;
  /// Multiplication by v^e.
  LaurentPoly shifted(const Exponent& e) const;

  bool is_bar_invariant() const;
  bool is_skew() const;
  /// Whether every exponent is strictly negative (membership in A_{<0}).
  bool in_negative_part() const;
  /// Whether the polynomial is a unit integer constant +1 or -1.
  std::optional<int> unit_sign() const;

  /// For skew a, the unique a_- in A_{<0} with a_- - bar(a_-) = a.
  /// Throws PreconditionError when a + bar(a) != 0.
  LaurentPoly skew_split() const;
  /// The unique bar-invariant element congruent to *this modulo A_{<0}.
  LaurentPoly bar_invariant_lift() const;
  /// Terms with strictly negative exponent.
  LaurentPoly negative_part() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Integer& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const Integer& c) { return a *= c; }

  /// this += factor * other, without a temporary for the product when
  /// factor is a monomial.
  void add_product(const LaurentPoly& factor, const LaurentPoly& other);

  bool operator==(const LaurentPoly&) const = default;

  /// Canonical rendering "c1*v^(e1) + c2*v^(e2) + ..." with decreasing
  /// exponents; "0" for the zero polynomial.
  std::string to_string() const;
  /// Inverse of to_string. Also accepts " - " separators, bare "v^(e)",
  /// bare integers (rank must then be given) and whitespace.
  static LaurentPoly parse(std::string_view text, std::size_t rank_hint = 1);

  std::size_t hash() const;

 private:
  explicit LaurentPoly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}

  std::vector<Term> terms_;
};

struct DegVal {
  std::optional<Exponent> degree;     // nullopt = -infinity
  std::optional<Exponent> valuation;  // nullopt = +infinity
};

inline DegVal deg_val(const LaurentPoly& a) { return {a.degree(), a.valuation()}; }

}  // namespace klc

template <>
struct std::hash<klc::Exponent> {
  std::size_t operator()(const klc::Exponent& e) const { return e.hash(); }
};

template <>
struct std::hash<klc::LaurentPoly> {
  std::size_t operator()(const klc::LaurentPoly& p) const { return p.hash(); }
};
