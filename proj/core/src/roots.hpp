#pragma once

// Roots of the geometric representation, stored exactly over Z[zeta_2M] in
// a table that grows as new roots are reached. Ids 0..rank-1 are the simple
// roots.

#include <cstdint>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "cyclotomic.hpp"
#include "klc/coxeter.hpp"

namespace klc::detail {

class RootSystem {
 public:
  using Id = std::uint32_t;

  explicit RootSystem(const std::vector<std::vector<int>>& matrix);

  std::size_t rank() const { return rank_; }
  Id simple(Generator s) const { return s; }
  bool positive(Id root) const;
  /// s(beta).
  Id reflect(Generator s, Id root) const;
  /// a - 2B(alpha_s, alpha_t) * b. The caller guarantees the result is a root.
  Id subtract_multiple(Id a, Generator s, Generator t, Id b) const;
  std::size_t size() const;

 private:
  using Vector = std::vector<std::int64_t>;  // rank blocks of ring coordinates

  struct VectorHash {
    std::size_t operator()(const Vector& v) const;
  };

  Id intern(Vector v) const;  // requires lock held
  CyclotomicRing::Element coordinate(const Vector& v, std::size_t i) const;
  void set_coordinate(Vector& v, std::size_t i, const CyclotomicRing::Element& c) const;

  std::size_t rank_;
  CyclotomicRing ring_;
  std::vector<std::vector<CyclotomicRing::Element>> gram_;  // 2B(alpha_s, alpha_t)

  mutable std::mutex mutex_;
  mutable std::vector<Vector> vectors_;
  mutable std::vector<bool> positive_;
  mutable std::vector<std::vector<Id>> reflections_;  // [s][root], kUnknown if not computed
  mutable std::unordered_map<Vector, Id, VectorHash> index_;
};

}  // namespace klc::detail
