#include "klc/hecke.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "klc/errors.hpp"
#include "klc/parallel.hpp"

namespace klc {

namespace {

// Dense scratch vector over W with a record of touched slots.
class Accumulator {
 public:
  explicit Accumulator(std::size_t n) : coeffs_(n), touched_(n, 0) {}

  void add(Elem w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    touch(w);
    coeffs_[w] += c;
  }

  void sub(Elem w, const LaurentPoly& c) {
    if (c.is_zero()) return;
    touch(w);
    coeffs_[w] -= c;
  }

  void add_scaled(const SparseVec& v, const LaurentPoly& factor) {
    if (factor.is_zero()) return;
    for (const auto& [w, c] : v) add(w, factor * c);
  }

  void sub_scaled(const SparseVec& v, const LaurentPoly& factor) {
    if (factor.is_zero()) return;
    for (const auto& [w, c] : v) sub(w, factor * c);
  }

  const LaurentPoly& at(Elem w) const { return coeffs_[w]; }

  /// Largest touched index with a nonzero coefficient.
  std::optional<Elem> pop_top() {
    while (!heap_.empty()) {
      const Elem w = heap_.top();
      heap_.pop();
      touched_[w] = 0;
      if (!coeffs_[w].is_zero()) return w;
    }
    return std::nullopt;
  }

  void clear(Elem w) { coeffs_[w] = LaurentPoly(); }

  SparseVec take() {
    SparseVec out;
    while (!heap_.empty()) {
      const Elem w = heap_.top();
      heap_.pop();
      touched_[w] = 0;
      if (!coeffs_[w].is_zero()) out.emplace_back(w, std::move(coeffs_[w]));
      coeffs_[w] = LaurentPoly();
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  void touch(Elem w) {
    if (!touched_[w]) {
      touched_[w] = 1;
      heap_.push(w);
    }
  }

  std::vector<LaurentPoly> coeffs_;
  std::vector<char> touched_;
  std::priority_queue<Elem> heap_;
};

SparseVec merge(const SparseVec& a, const SparseVec& b, bool subtract) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      LaurentPoly c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

const LaurentPoly* find_coefficient(const SparseVec& v, Elem w) {
  auto it = std::lower_bound(v.begin(), v.end(), w, [](const auto& p, Elem e) { return p.first < e; });
  if (it == v.end() || it->first != w) return nullptr;
  return &it->second;
}

// --- HeckeElement ----------------------------------------------------------

HeckeElement::HeckeElement(Basis basis, SparseVec terms) : basis_(basis) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [w, c] : terms) {
    if (!terms_.empty() && terms_.back().first == w) {
      terms_.back().second += c;
      if (terms_.back().second.is_zero()) terms_.pop_back();
    } else if (!c.is_zero()) {
      terms_.emplace_back(w, std::move(c));
    }
  }
}

LaurentPoly HeckeElement::coefficient(Elem w) const {
  const LaurentPoly* c = find_coefficient(terms_, w);
  return c ? *c : LaurentPoly();
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& other) {
  if (basis_ != other.basis_) throw StructuralError("adding Hecke elements in different bases");
  terms_ = merge(terms_, other.terms_, false);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& other) {
  if (basis_ != other.basis_) throw StructuralError("subtracting Hecke elements in different bases");
  terms_ = merge(terms_, other.terms_, true);
  return *this;
}

HeckeElement operator*(const LaurentPoly& a, const HeckeElement& h) {
  SparseVec out;
  if (a.is_zero()) return HeckeElement(h.basis());
  for (const auto& [w, c] : h.terms()) {
    LaurentPoly p = a * c;
    if (!p.is_zero()) out.emplace_back(w, std::move(p));
  }
  return HeckeElement(h.basis(), std::move(out));
}

// --- HeckeAlgebra ----------------------------------------------------------

HeckeAlgebra::HeckeAlgebra(std::shared_ptr<const CoxeterGroup> group, WeightFunction weights, std::size_t jobs)
    : group_(std::move(group)), weights_(std::move(weights)), jobs_(jobs) {
  if (!group_->is_complete()) throw UsageError("the Hecke algebra needs a finite, completely enumerated W");
  if (weights_.values().size() != group_->rank()) throw UsageError("weight function does not match the group");
  for (Generator s = 0; s < group_->rank(); ++s) {
    q_.push_back(LaurentPoly::monomial(weights_[s]) - LaurentPoly::monomial(-weights_[s]));
    v_minus_phi_.push_back(LaurentPoly::monomial(-weights_[s]));
  }
  build_bar_table();
  build_kl_table();
  build_generator_actions();
}

Exponent HeckeAlgebra::weighted_length(Elem w) const {
  Exponent e = Exponent::zero(gamma_rank());
  for (Generator s : group_->word(w)) e += weights_[s];
  return e;
}

HeckeElement HeckeAlgebra::standard(Elem w) const { return HeckeElement(Basis::Standard, {{w, one()}}); }

HeckeElement HeckeAlgebra::kl(Elem w) const { return HeckeElement(Basis::KL, {{w, one()}}); }

HeckeElement HeckeAlgebra::right_mul_generator(const HeckeElement& h, Generator s) const {
  if (h.basis() != Basis::Standard) throw PreconditionError("right_mul_generator expects the standard basis");
  Accumulator acc(group_->size());
  for (const auto& [x, c] : h.terms()) {
    const Elem xs = group_->right_mul(x, s);
    acc.add(xs, c);
    if (group_->length(xs) < group_->length(x)) acc.add(x, c * q_[s]);
  }
  return HeckeElement(Basis::Standard, acc.take());
}

HeckeElement HeckeAlgebra::left_mul_generator(Generator s, const HeckeElement& h) const {
  if (h.basis() != Basis::Standard) throw PreconditionError("left_mul_generator expects the standard basis");
  Accumulator acc(group_->size());
  for (const auto& [x, c] : h.terms()) {
    const Elem sx = group_->left_mul(s, x);
    acc.add(sx, c);
    if (group_->length(sx) < group_->length(x)) acc.add(x, c * q_[s]);
  }
  return HeckeElement(Basis::Standard, acc.take());
}

HeckeElement HeckeAlgebra::left_mul_word(std::span<const Generator> word, const HeckeElement& h) const {
  HeckeElement cur = h;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = left_mul_generator(*it, cur);
  return cur;
}

HeckeElement HeckeAlgebra::left_mul_standard(Elem w, const HeckeElement& h) const {
  return left_mul_word(group_->word(w), h);
}

HeckeElement HeckeAlgebra::right_mul_standard(const HeckeElement& h, Elem w) const {
  HeckeElement cur = h;
  for (Generator s : group_->word(w)) cur = right_mul_generator(cur, s);
  return cur;
}

HeckeElement HeckeAlgebra::mul_standard(const HeckeElement& a, const HeckeElement& b) const {
  if (a.basis() != Basis::Standard || b.basis() != Basis::Standard) {
    throw PreconditionError("mul_standard expects the standard basis");
  }
  HeckeElement out(Basis::Standard);
  for (const auto& [y, c] : b.terms()) out += c * right_mul_standard(a, y);
  return out;
}

HeckeElement HeckeAlgebra::multiply(const HeckeElement& a, const HeckeElement& b) const {
  return mul_standard(to_standard(a), to_standard(b));
}

HeckeElement HeckeAlgebra::bar(const HeckeElement& h) const {
  if (h.basis() != Basis::Standard) throw PreconditionError("bar expects the standard basis");
  Accumulator acc(group_->size());
  for (const auto& [x, c] : h.terms()) acc.add_scaled(bar_t_[x], c.bar());
  return HeckeElement(Basis::Standard, acc.take());
}

void HeckeAlgebra::build_bar_table() {
  const std::size_t n = group_->size();
  bar_t_.assign(n, {});
  bar_t_[0] = {{0, one()}};
  // bar(T_w) = bar(T_{ws}) (T_s - q_s) with s the last letter of w.
  for (Elem w = 1; w < n; ++w) {
    const Generator s = group_->word(w).back();
    const Elem ws = group_->right_mul(w, s);
    HeckeElement prev(Basis::Standard, bar_t_[ws]);
    HeckeElement next = right_mul_generator(prev, s) - q_[s] * prev;
    bar_t_[w] = next.terms();
  }
}

void HeckeAlgebra::build_kl_table() {
  const std::size_t n = group_->size();
  kl_.assign(n, {});
  parallel_for(n, jobs_, [&](std::size_t index) {
    const Elem w = static_cast<Elem>(index);
    // Defect D = bar(X) - X of X = T_w + sum mu_x T_x; clear it from the top.
    Accumulator defect(n);
    defect.add_scaled(bar_t_[w], one());
    defect.sub(w, one());
    SparseVec mu;
    while (auto top = defect.pop_top()) {
      const Elem x = *top;
      if (x >= w) throw ConsistencyError("bar defect above the diagonal for " + group_->render(w));
      const LaurentPoly& d = defect.at(x);
      LaurentPoly a;
      try {
        a = d.skew_split();
      } catch (const PreconditionError&) {
        throw ConsistencyError("non-skew bar defect at " + group_->render(x) + " for " + group_->render(w));
      }
      const LaurentPoly abar = a.bar();
      defect.clear(x);
      for (const auto& [u, c] : bar_t_[x]) {
        if (u != x) defect.add(u, abar * c);
      }
      mu.emplace_back(x, std::move(a));
    }
    mu.emplace_back(w, one());
    std::sort(mu.begin(), mu.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    kl_[w] = std::move(mu);
  });
}

void HeckeAlgebra::build_generator_actions() {
  const std::size_t n = group_->size();
  const std::size_t r = group_->rank();
  left_action_.assign(r, std::vector<SparseVec>(n));
  right_action_.assign(r, std::vector<SparseVec>(n));
  parallel_for(n, jobs_, [&](std::size_t index) {
    const Elem y = static_cast<Elem>(index);
    const HeckeElement cy(Basis::Standard, kl_[y]);
    for (Generator s = 0; s < r; ++s) {
      left_action_[s][y] = to_kl(left_mul_generator(s, cy) + v_minus_phi_[s] * cy).terms();
      right_action_[s][y] = to_kl(right_mul_generator(cy, s) + v_minus_phi_[s] * cy).terms();
    }
  });
}

LaurentPoly HeckeAlgebra::pstar(Elem x, Elem y) const {
  const LaurentPoly* c = find_coefficient(kl_[y], x);
  return c ? *c : LaurentPoly();
}

HeckeElement HeckeAlgebra::to_kl(const HeckeElement& h) const {
  if (h.basis() == Basis::KL) return h;
  Accumulator rest(group_->size());
  for (const auto& [x, c] : h.terms()) rest.add(x, c);
  SparseVec out;
  while (auto top = rest.pop_top()) {
    const Elem x = *top;
    LaurentPoly c = rest.at(x);
    rest.clear(x);
    for (const auto& [u, p] : kl_[x]) {
      if (u != x) rest.sub(u, c * p);
    }
    out.emplace_back(x, std::move(c));
  }
  return HeckeElement(Basis::KL, std::move(out));
}

HeckeElement HeckeAlgebra::to_standard(const HeckeElement& h) const {
  if (h.basis() == Basis::Standard) return h;
  Accumulator acc(group_->size());
  for (const auto& [x, c] : h.terms()) acc.add_scaled(kl_[x], c);
  return HeckeElement(Basis::Standard, acc.take());
}

SparseVec HeckeAlgebra::structure_constants(Elem x, Elem y) const {
  const std::uint64_t key = static_cast<std::uint64_t>(x) * group_->size() + y;
  {
    std::lock_guard lock(memo_mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  // C_x C_y = sum_u p*_{u,x} T_u C_y, with T_u C_y = T_s (T_{su} C_y).
  std::unordered_map<Elem, HeckeElement> tu_cy;
  tu_cy.emplace(0, HeckeElement(Basis::Standard, kl_[y]));
  std::function<const HeckeElement&(Elem)> get = [&](Elem u) -> const HeckeElement& {
    if (auto it = tu_cy.find(u); it != tu_cy.end()) return it->second;
    const Generator s = group_->word(u).front();
    HeckeElement value = left_mul_generator(s, get(group_->left_mul(s, u)));
    return tu_cy.emplace(u, std::move(value)).first->second;
  };
  Accumulator acc(group_->size());
  for (const auto& [u, p] : kl_[x]) acc.add_scaled(get(u).terms(), p);
  SparseVec result = to_kl(HeckeElement(Basis::Standard, acc.take())).terms();
  std::lock_guard lock(memo_mutex_);
  return memo_.emplace(key, std::move(result)).first->second;
}

const SparseVec& HeckeAlgebra::generator_action(Generator s, Elem y, Side side) const {
  return side == Side::Left ? left_action_[s][y] : right_action_[s][y];
}

const StructureTable& HeckeAlgebra::structure_table() const {
  std::call_once(table_once_, [this] {
    const std::size_t n = group_->size();
    std::vector<SparseVec> rows(n * n);
    // Column y: C_x C_y = C_s (C_{sx} C_y) - sum_{z != x} h_{s,sx,z} C_z C_y,
    // s the first letter of x.
    parallel_for(n, jobs_, [&](std::size_t yi) {
      const Elem y = static_cast<Elem>(yi);
      auto row = [&](Elem x) -> SparseVec& { return rows[static_cast<std::size_t>(x) * n + y]; };
      row(0) = {{y, one()}};
      Accumulator acc(n);
      for (Elem x = 1; x < n; ++x) {
        const Generator s = group_->word(x).front();
        const Elem sx = group_->left_mul(s, x);
        for (const auto& [z, c] : row(sx)) acc.add_scaled(left_action_[s][z], c);
        bool found = false;
        for (const auto& [z, h] : left_action_[s][sx]) {
          if (z == x) {
            if (h != one()) throw ConsistencyError("C_s C_{sx} has a non-unit coefficient at C_x");
            found = true;
            continue;
          }
          acc.sub_scaled(row(z), h);
        }
        if (!found) throw ConsistencyError("C_s C_{sx} does not contain C_x");
        row(x) = acc.take();
      }
    });
    table_ = StructureTable(n, std::move(rows));
  });
  return table_;
}

GeckTable HeckeAlgebra::geck_table(const Parabolic& parabolic) const {
  const std::size_t n = group_->size();
  const GeneratorSet subset = parabolic.subset;
  std::vector<SparseVec> rows(n);
  parallel_for(n, jobs_, [&](std::size_t index) {
    const Elem w = static_cast<Elem>(index);
    Accumulator rest(n);
    for (const auto& [x, c] : kl_[w]) rest.add(x, c);
    SparseVec out;
    // T_a C_x = sum_u p*_{u,x} T_{au} has top term T_{ax}.
    while (auto top = rest.pop_top()) {
      const Elem ax = *top;
      const auto split = group_->coset_decompose(ax, subset, Side::Left);
      LaurentPoly c = rest.at(ax);
      rest.clear(ax);
      for (const auto& [u, p] : kl_[split.part]) {
        if (u != split.part) rest.sub(group_->multiply(split.rep, u), c * p);
      }
      out.emplace_back(ax, std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    rows[w] = std::move(out);
  });
  return GeckTable(subset, std::move(rows));
}

std::string render(const CoxeterGroup& group, const HeckeElement& h) {
  if (h.is_zero()) return "0";
  const char* symbol = h.basis() == Basis::Standard ? "T" : "C";
  std::string out;
  for (const auto& [w, c] : h.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")*" + symbol + "[" + group.render(w) + "]";
  }
  return out;
}

}  // namespace klc
