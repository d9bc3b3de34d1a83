#include "cyclotomic.hpp"

#include <cmath>
#include <numbers>

#include "klc/errors.hpp"

namespace klc::detail {

namespace {

using Poly = std::vector<std::int64_t>;  // coefficient of x^i at index i

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("cyclotomic coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("cyclotomic coefficient overflow");
  return r;
}

// Exact division of a by a monic polynomial b.
Poly divide_exact(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) throw ConsistencyError("cyclotomic division degree");
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    std::int64_t c = a[i];
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  for (std::size_t j = 0; j < db; ++j)
    if (a[j] != 0) throw ConsistencyError("cyclotomic division not exact");
  return q;
}

Poly cyclotomic_polynomial(std::uint32_t n) {
  Poly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(p, cyclotomic_polynomial(d));
  }
  return p;
}

}  // namespace

CyclotomicRing::CyclotomicRing(std::uint32_t n) : n_(n) {
  if (n == 0) throw UsageError("cyclotomic order must be positive");
  Poly phi = cyclotomic_polynomial(n);
  dim_ = phi.size() - 1;
  reduced_powers_.reserve(n);
  Element cur(dim_, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < n; ++k) {
    reduced_powers_.push_back(cur);
    // multiply by x and reduce by the monic phi
    Element next(dim_, 0);
    std::int64_t carry = cur[dim_ - 1];
    for (std::size_t i = dim_ - 1; i > 0; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (std::size_t i = 0; i < dim_; ++i) next[i] = checked_add(next[i], -checked_mul(carry, phi[i]));
    cur = std::move(next);
  }
}

CyclotomicRing::Element CyclotomicRing::integer(std::int64_t c) const {
  Element e(dim_, 0);
  e[0] = c;
  return e;
}

CyclotomicRing::Element CyclotomicRing::power(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(n_);
  if (r < 0) r += n_;
  return reduced_powers_[static_cast<std::size_t>(r)];
}

CyclotomicRing::Element CyclotomicRing::two_cos(std::int64_t k) const {
  return add(power(k), power(-k));
}

CyclotomicRing::Element CyclotomicRing::add(const Element& a, const Element& b) const {
  Element r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

CyclotomicRing::Element CyclotomicRing::sub(const Element& a, const Element& b) const {
  Element r(dim_);
  for (std::size_t i = 0; i < dim_; ++i) r[i] = checked_add(a[i], -b[i]);
  return r;
}

CyclotomicRing::Element CyclotomicRing::mul(const Element& a, const Element& b) const {
  Element r(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j] == 0) continue;
      std::int64_t c = checked_mul(a[i], b[j]);
      const Element& z = reduced_powers_[(i + j) % n_];
      for (std::size_t k = 0; k < dim_; ++k)
        if (z[k] != 0) r[k] = checked_add(r[k], checked_mul(c, z[k]));
    }
  }
  return r;
}

bool CyclotomicRing::is_zero(const Element& a) const {
  for (auto c : a)
    if (c != 0) return false;
  return true;
}

long double CyclotomicRing::approx(const Element& a) const {
  long double sum = 0;
  const long double step = 2 * std::numbers::pi_v<long double> / n_;
  for (std::size_t k = 0; k < dim_; ++k) {
    if (a[k] != 0) sum += static_cast<long double>(a[k]) * std::cos(step * k);
  }
  return sum;
}

int CyclotomicRing::sign(const Element& a) const {
  if (is_zero(a)) return 0;
  long double mass = 0;
  for (auto c : a) mass += std::fabs(static_cast<long double>(c));
  const long double value = approx(a);
  const long double margin = mass * 1e-15L;
  if (std::fabs(value) <= margin) {
    throw ArithmeticError("sign of a nonzero cyclotomic integer is below numeric resolution");
  }
  return value > 0 ? 1 : -1;
}

}  // namespace klc::detail
