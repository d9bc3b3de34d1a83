#pragma once

// Exact arithmetic in the ring of integers Z[zeta_n] of a cyclotomic field,
// used for the geometric representation of Coxeter groups: every Gram matrix
// entry 2cos(pi/m) lies in Z[zeta_{2M}] when m divides M.

#include <cstdint>
#include <vector>

namespace klc::detail {

class CyclotomicRing {
 public:
  using Element = std::vector<std::int64_t>;  // coordinates in 1, z, ..., z^(d-1)

  /// Ring Z[zeta_n], n >= 1.
  explicit CyclotomicRing(std::uint32_t n);

  std::uint32_t order() const { return n_; }
  std::size_t dimension() const { return dim_; }

  Element zero() const { return Element(dim_, 0); }
  Element integer(std::int64_t c) const;
  /// zeta^k for any integer k.
  Element power(std::int64_t k) const;
  /// 2cos(2 pi k / n) = zeta^k + zeta^-k.
  Element two_cos(std::int64_t k) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element mul(const Element& a, const Element& b) const;
  bool is_zero(const Element& a) const;

  /// Sign of a real element (-1, 0, +1). Zero is decided exactly; nonzero
  /// signs come from a long double evaluation with an explicit error margin
  /// and throw ArithmeticError when the margin is not met.
  int sign(const Element& a) const;
  long double approx(const Element& a) const;

 private:
  std::uint32_t n_;
  std::size_t dim_;
  std::vector<Element> reduced_powers_;  // zeta^k mod Phi_n for 0 <= k < n
};

}  // namespace klc::detail
