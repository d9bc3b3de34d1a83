#include "roots.hpp"

#include <numeric>

#include "klc/errors.hpp"

namespace klc::detail {

namespace {

constexpr RootSystem::Id kUnknown = static_cast<RootSystem::Id>(-1);

std::uint32_t ring_order(const std::vector<std::vector<int>>& matrix) {
  std::uint64_t lcm = 1;
  for (const auto& row : matrix) {
    for (int m : row) {
      if (m >= 3) lcm = std::lcm(lcm, static_cast<std::uint64_t>(m));
      if (lcm > 1u << 20) throw UsageError("Coxeter matrix orders are too large for exact roots");
    }
  }
  return static_cast<std::uint32_t>(2 * lcm);
}

}  // namespace

RootSystem::RootSystem(const std::vector<std::vector<int>>& matrix)
    : rank_(matrix.size()), ring_(ring_order(matrix)) {
  const std::int64_t half = ring_.order() / 2;
  gram_.assign(rank_, std::vector<CyclotomicRing::Element>(rank_, ring_.zero()));
  for (std::size_t s = 0; s < rank_; ++s) {
    for (std::size_t t = 0; t < rank_; ++t) {
      const int m = matrix[s][t];
      if (s == t) {
        gram_[s][t] = ring_.integer(2);
      } else if (m == kInfinite) {
        gram_[s][t] = ring_.integer(-2);
      } else if (m == 2) {
        gram_[s][t] = ring_.zero();
      } else {
        // -2cos(pi/m) with zeta = exp(2 pi i / 2M)
        gram_[s][t] = ring_.sub(ring_.zero(), ring_.two_cos(half / m));
      }
    }
  }
  std::lock_guard lock(mutex_);
  reflections_.assign(rank_, {});
  for (std::size_t s = 0; s < rank_; ++s) {
    Vector v(rank_ * ring_.dimension(), 0);
    v[s * ring_.dimension()] = 1;
    intern(std::move(v));
  }
}

std::size_t RootSystem::VectorHash::operator()(const Vector& v) const {
  std::size_t seed = v.size();
  for (auto x : v) seed ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

CyclotomicRing::Element RootSystem::coordinate(const Vector& v, std::size_t i) const {
  const std::size_t d = ring_.dimension();
  return CyclotomicRing::Element(v.begin() + static_cast<std::ptrdiff_t>(i * d),
                                 v.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
}

void RootSystem::set_coordinate(Vector& v, std::size_t i, const CyclotomicRing::Element& c) const {
  std::copy(c.begin(), c.end(), v.begin() + static_cast<std::ptrdiff_t>(i * ring_.dimension()));
}

RootSystem::Id RootSystem::intern(Vector v) const {
  if (auto it = index_.find(v); it != index_.end()) return it->second;
  int sign = 0;
  for (std::size_t i = 0; i < rank_; ++i) {
    const int c = ring_.sign(coordinate(v, i));
    if (c == 0) continue;
    if (sign != 0 && c != sign) throw ConsistencyError("vector with mixed signs is not a root");
    sign = c;
  }
  if (sign == 0) throw ConsistencyError("zero vector is not a root");
  const Id id = static_cast<Id>(vectors_.size());
  index_.emplace(v, id);
  vectors_.push_back(std::move(v));
  positive_.push_back(sign > 0);
  for (auto& row : reflections_) row.push_back(kUnknown);
  return id;
}

bool RootSystem::positive(Id root) const {
  std::lock_guard lock(mutex_);
  return positive_[root];
}

std::size_t RootSystem::size() const {
  std::lock_guard lock(mutex_);
  return vectors_.size();
}

RootSystem::Id RootSystem::reflect(Generator s, Id root) const {
  std::lock_guard lock(mutex_);
  if (Id cached = reflections_[s][root]; cached != kUnknown) return cached;
  Vector v = vectors_[root];
  // s(beta) = beta - 2B(alpha_s, beta) alpha_s
  CyclotomicRing::Element pairing = ring_.zero();
  for (std::size_t t = 0; t < rank_; ++t) {
    pairing = ring_.add(pairing, ring_.mul(gram_[s][t], coordinate(v, t)));
  }
  set_coordinate(v, s, ring_.sub(coordinate(v, s), pairing));
  const Id image = intern(std::move(v));
  reflections_[s][root] = image;
  reflections_[s][image] = root;
  return image;
}

RootSystem::Id RootSystem::subtract_multiple(Id a, Generator s, Generator t, Id b) const {
  std::lock_guard lock(mutex_);
  const auto& c = gram_[s][t];
  if (ring_.is_zero(c)) return a;
  Vector v = vectors_[a];
  const Vector& w = vectors_[b];
  for (std::size_t i = 0; i < rank_; ++i) {
    set_coordinate(v, i, ring_.sub(coordinate(v, i), ring_.mul(c, coordinate(w, i))));
  }
  return intern(std::move(v));
}

}  // namespace klc::detail
