#include "klc/ordgroup.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <sstream>

#include "klc/errors.hpp"

namespace klc {

namespace {

std::int32_t checked_narrow(std::int64_t x) {
  if (x < std::numeric_limits<std::int32_t>::min() ||
      x > std::numeric_limits<std::int32_t>::max()) {
    throw ArithmeticError("exponent component out of range");
  }
  return static_cast<std::int32_t>(x);
}

std::int32_t checked_add(std::int32_t a, std::int32_t b) {
  std::int32_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("exponent overflow");
  return r;
}

std::int32_t checked_sub(std::int32_t a, std::int32_t b) {
  std::int32_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticError("exponent overflow");
  return r;
}

void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

// ---------------------------------------------------------------- Exponent

Exponent::Exponent(std::initializer_list<std::int64_t> components)
    : Exponent(std::span<const std::int64_t>(components.begin(), components.size())) {}

Exponent::Exponent(std::span<const std::int64_t> components) {
  if (components.empty() || components.size() > kMaxRank) {
    throw UsageError("exponent rank must be between 1 and " + std::to_string(kMaxRank));
  }
  rank_ = static_cast<std::uint8_t>(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) values_[i] = checked_narrow(components[i]);
}

Exponent Exponent::zero(std::size_t rank) {
  if (rank == 0 || rank > kMaxRank) {
    throw UsageError("exponent rank must be between 1 and " + std::to_string(kMaxRank));
  }
  Exponent e;
  e.rank_ = static_cast<std::uint8_t>(rank);
  return e;
}

bool Exponent::is_zero() const {
  for (std::size_t i = 0; i < rank_; ++i)
    if (values_[i] != 0) return false;
  return true;
}

bool Exponent::is_positive() const {
  for (std::size_t i = 0; i < rank_; ++i)
    if (values_[i] != 0) return values_[i] > 0;
  return false;
}

bool Exponent::is_negative() const {
  for (std::size_t i = 0; i < rank_; ++i)
    if (values_[i] != 0) return values_[i] < 0;
  return false;
}

Exponent Exponent::operator-() const {
  Exponent r = *this;
  for (std::size_t i = 0; i < rank_; ++i) r.values_[i] = checked_sub(0, values_[i]);
  return r;
}

void Exponent::check_rank(const Exponent& other) const {
  if (rank_ != other.rank_) {
    throw StructuralError("exponent rank mismatch: " + std::to_string(rank_) + " vs " +
                          std::to_string(other.rank_));
  }
}

Exponent& Exponent::operator+=(const Exponent& other) {
  check_rank(other);
  for (std::size_t i = 0; i < rank_; ++i) values_[i] = checked_add(values_[i], other.values_[i]);
  return *this;
}

Exponent& Exponent::operator-=(const Exponent& other) {
  check_rank(other);
  for (std::size_t i = 0; i < rank_; ++i) values_[i] = checked_sub(values_[i], other.values_[i]);
  return *this;
}

std::strong_ordering Exponent::operator<=>(const Exponent& other) const {
  check_rank(other);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (values_[i] != other.values_[i]) return values_[i] <=> other.values_[i];
  }
  return std::strong_ordering::equal;
}

bool Exponent::operator==(const Exponent& other) const {
  check_rank(other);
  return std::equal(values_.begin(), values_.begin() + rank_, other.values_.begin());
}

std::string Exponent::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out;
}

Exponent Exponent::parse(std::string_view text) {
  std::vector<std::int64_t> parts;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    skip();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw UsageError("malformed exponent '" + std::string(text) + "'");
    }
    std::int64_t value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (value > (std::numeric_limits<std::int32_t>::max() - 9) / 10) {
        throw ArithmeticError("exponent literal too large");
      }
      value = value * 10 + (text[pos++] - '0');
    }
    parts.push_back(neg ? -value : value);
    skip();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw UsageError("malformed exponent '" + std::string(text) + "'");
    ++pos;
  }
  return Exponent(std::span<const std::int64_t>(parts));
}

std::size_t Exponent::hash() const {
  std::size_t seed = rank_;
  for (std::size_t i = 0; i < rank_; ++i) hash_combine(seed, std::hash<std::int32_t>{}(values_[i]));
  return seed;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(const Exponent& e, Integer coeff) {
  if (coeff == 0) return {};
  return LaurentPoly(std::vector<Term>{Term{e, std::move(coeff)}});
}

LaurentPoly LaurentPoly::constant(Integer c, std::size_t rank) {
  return monomial(Exponent::zero(rank), std::move(c));
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().exponent == t.exponent) {
      merged.back().coeff += t.coeff;
      if (merged.back().coeff == 0) merged.pop_back();
    } else if (t.coeff != 0) {
      merged.push_back(std::move(t));
    }
  }
  return LaurentPoly(std::move(merged));
}

std::optional<std::size_t> LaurentPoly::rank() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent.rank();
}

Integer LaurentPoly::coefficient(const Exponent& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return 0;
}

std::optional<Exponent> LaurentPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().exponent;
}

std::optional<Exponent> LaurentPoly::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent;
}

LaurentPoly LaurentPoly::bar() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.push_back({-it->exponent, it->coeff});
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::shifted(const Exponent& e) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.exponent += e;
  return LaurentPoly(std::move(out));
}

bool LaurentPoly::is_bar_invariant() const { return *this == bar(); }

bool LaurentPoly::is_skew() const { return (*this + bar()).is_zero(); }

bool LaurentPoly::in_negative_part() const {
  return terms_.empty() || terms_.back().exponent.is_negative();
}

std::optional<int> LaurentPoly::unit_sign() const {
  if (terms_.size() != 1 || !terms_[0].exponent.is_zero()) return std::nullopt;
  if (terms_[0].coeff == 1) return 1;
  if (terms_[0].coeff == -1) return -1;
  return std::nullopt;
}

LaurentPoly LaurentPoly::negative_part() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (!t.exponent.is_negative()) break;
    out.push_back(t);
  }
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::skew_split() const {
  if (!is_skew()) throw PreconditionError("skew_split: " + to_string() + " is not skew");
  return negative_part();
}

LaurentPoly LaurentPoly::bar_invariant_lift() const {
  // Keep the terms of nonnegative degree and mirror the positive ones.
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponent.is_negative()) continue;
    out.push_back(t);
    if (!t.exponent.is_zero()) out.push_back({-t.exponent, t.coeff});
  }
  return from_terms(std::move(out));
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge b (scaled by sign) into a; both sorted.
std::vector<Term> merge_terms(const std::vector<Term>& a, std::span<const Term> b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exponent < b[j].exponent)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exponent < a[i].exponent) {
      out.push_back(b[j]);
      if (subtract) out.back().coeff = -out.back().coeff;
      ++j;
    } else {
      Integer c = a[i].coeff;
      if (subtract) {
        c -= b[j].coeff;
      } else {
        c += b[j].coeff;
      }
      if (c != 0) out.push_back({a[i].exponent, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  if (other.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  if (other.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1 || b.size() == 1) {
    const LaurentPoly& mono = a.size() == 1 ? a : b;
    const LaurentPoly& other = a.size() == 1 ? b : a;
    const Term& m = mono.terms_[0];
    std::vector<Term> out;
    out.reserve(other.size());
    // Shifting preserves the order and Z has no zero divisors.
    for (const auto& t : other.terms_) out.push_back({t.exponent + m.exponent, t.coeff * m.coeff});
    return LaurentPoly(std::move(out));
  }
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back({x.exponent + y.exponent, x.coeff * y.coeff});
  return LaurentPoly::from_terms(std::move(out));
}

void LaurentPoly::add_product(const LaurentPoly& factor, const LaurentPoly& other) {
  if (factor.is_zero() || other.is_zero()) return;
  *this += factor * other;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Integer c = it->coeff;
    if (first) {
      out << c;
    } else if (c < 0) {
      out << " - " << Integer(-c);
    } else {
      out << " + " << c;
    }
    out << "*v^(" << it->exponent.to_string() << ")";
    first = false;
  }
  return out.str();
}

LaurentPoly LaurentPoly::parse(std::string_view text, std::size_t rank_hint) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const char* why) -> UsageError {
    return UsageError(std::string("cannot parse polynomial '") + std::string(text) + "': " + why);
  };
  std::vector<Term> terms;
  skip();
  if (pos == text.size()) throw fail("empty input");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    int sign = 1;
    bool had_sep = false;
    while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -sign;
      had_sep = true;
      ++pos;
      skip();
    }
    if (!first && !had_sep) throw fail("missing '+' or '-' between terms");
    Integer coeff = 1;
    bool had_coeff = false;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos > start) {
      coeff = Integer(std::string(text.substr(start, pos - start)));
      had_coeff = true;
    }
    skip();
    bool had_v = false;
    Exponent e;
    if (had_coeff && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
      if (pos >= text.size() || text[pos] != 'v') throw fail("expected 'v' after '*'");
    }
    if (pos < text.size() && text[pos] == 'v') {
      ++pos;
      had_v = true;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != '(') throw fail("expected '(' after '^'");
        std::size_t close = text.find(')', pos);
        if (close == std::string_view::npos) throw fail("unbalanced parenthesis");
        e = Exponent::parse(text.substr(pos + 1, close - pos - 1));
        pos = close + 1;
      } else {
        if (rank_hint != 1) throw fail("bare 'v' only allowed in rank 1");
        e = Exponent{1};
      }
    }
    if (!had_coeff && !had_v) throw fail("expected a term");
    if (!had_v) e = Exponent::zero(rank_hint);
    terms.push_back({e, sign < 0 ? Integer(-coeff) : coeff});
    first = false;
  }
  std::optional<std::size_t> rank;
  for (const auto& t : terms) {
    if (rank && *rank != t.exponent.rank()) throw StructuralError("mixed exponent ranks in polynomial");
    rank = t.exponent.rank();
  }
  return from_terms(std::move(terms));
}

std::size_t LaurentPoly::hash() const {
  std::size_t seed = terms_.size();
  for (const auto& t : terms_) {
    hash_combine(seed, t.exponent.hash());
    hash_combine(seed, std::hash<std::string>{}(t.coeff.str()));
  }
  return seed;
}

}  // namespace klc
