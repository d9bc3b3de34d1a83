#include "klc/cells.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

#include "klc/errors.hpp"

namespace klc {

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Left:
      return "left";
    case CellKind::Right:
      return "right";
    case CellKind::TwoSided:
      return "two-sided";
  }
  return "";
}

CellKind parse_cell_kind(std::string_view text) {
  if (text == "left") return CellKind::Left;
  if (text == "right") return CellKind::Right;
  if (text == "two-sided" || text == "two_sided" || text == "twosided") return CellKind::TwoSided;
  throw UsageError("unknown side '" + std::string(text) + "' (expected left, right or two-sided)");
}

Preorder Preorder::from_edges(const std::vector<std::vector<Elem>>& lower) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const std::size_t n = lower.size();
  Graph graph(n);
  for (std::size_t y = 0; y < n; ++y)
    for (Elem z : lower[y]) boost::add_edge(y, z, graph);

  std::vector<std::size_t> component(n);
  const std::size_t count = boost::strong_components(graph, component.data());

  // renumber components by their smallest member
  std::vector<std::size_t> first(count, n);
  for (std::size_t w = 0; w < n; ++w) first[component[w]] = std::min(first[component[w]], w);
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return first[a] < first[b]; });
  std::vector<std::size_t> rename(count);
  for (std::size_t i = 0; i < count; ++i) rename[order[i]] = i;

  Preorder p;
  p.cell_of_.resize(n);
  p.members_.assign(count, {});
  for (std::size_t w = 0; w < n; ++w) {
    p.cell_of_[w] = rename[component[w]];
    p.members_[p.cell_of_[w]].push_back(static_cast<Elem>(w));
  }

  std::vector<std::vector<std::size_t>> dag(count);
  for (std::size_t y = 0; y < n; ++y)
    for (Elem z : lower[y])
      if (p.cell_of_[y] != p.cell_of_[z]) dag[p.cell_of_[y]].push_back(p.cell_of_[z]);
  for (auto& succ : dag) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }

  p.below_.assign(count, boost::dynamic_bitset<>(count));
  std::vector<char> done(count, 0);
  // iterative post-order so that successors are finished first
  for (std::size_t root = 0; root < count; ++root) {
    if (done[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    while (!stack.empty()) {
      auto& [c, next] = stack.back();
      if (next < dag[c].size()) {
        const std::size_t d = dag[c][next++];
        if (!done[d]) stack.emplace_back(d, 0);
        continue;
      }
      p.below_[c].set(c);
      for (std::size_t d : dag[c]) p.below_[c] |= p.below_[d];
      done[c] = 1;
      stack.pop_back();
    }
  }
  return p;
}

std::vector<std::pair<std::size_t, std::size_t>> Preorder::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = cell_count();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t a = 0; a < n; ++a) {
      if (a == b || !below_[b][a]) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c)
        if (c != a && c != b && below_[b][c] && below_[c][a]) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CellDecomposition::CellDecomposition(const HeckeAlgebra& algebra) {
  const auto& group = algebra.group();
  const std::size_t n = group.size();
  std::vector<std::vector<Elem>> left(n), right(n), both(n);
  for (Elem y = 0; y < n; ++y) {
    for (Generator s = 0; s < group.rank(); ++s) {
      for (const auto& [z, h] : algebra.generator_action(s, y, Side::Left)) left[y].push_back(z);
      for (const auto& [z, h] : algebra.generator_action(s, y, Side::Right)) right[y].push_back(z);
    }
    both[y] = left[y];
    both[y].insert(both[y].end(), right[y].begin(), right[y].end());
  }
  orders_[0] = Preorder::from_edges(left);
  orders_[1] = Preorder::from_edges(right);
  orders_[2] = Preorder::from_edges(both);
}

AFunction::AFunction(const HeckeAlgebra& algebra) : algebra_(&algebra) {
  const auto& group = algebra.group();
  const std::size_t n = group.size();
  const auto& table = algebra.structure_table();
  std::vector<std::optional<Exponent>> best(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (const auto& [z, h] : table.row(x, y)) {
        const Exponent d = *h.degree();
        if (!best[z] || *best[z] < d) best[z] = d;
      }
    }
  }
  a_.reserve(n);
  delta_.reserve(n);
  for (Elem z = 0; z < n; ++z) {
    if (!best[z]) throw ConsistencyError("a-function: no structure constant reaches " + show(group, z));
    a_.push_back(*best[z]);
    const LaurentPoly p = algebra.pstar(group.identity(), z);
    if (p.is_zero()) throw ConsistencyError("p*_{1,w} vanishes for w = " + show(group, z));
    delta_.push_back(-*p.degree());
    if (a_[z] == delta_[z]) duflo_.push_back(z);
  }
}

Exponent AFunction::alpha(Elem z) const {
  const auto& group = algebra_->group();
  return a_[group.multiply(group.longest(), z)] - a_[z];
}

Integer AFunction::gamma(Elem x, Elem y, Elem z) const {
  const Elem zi = algebra_->group().inverse(z);
  const LaurentPoly* h = find_coefficient(algebra_->structure_table().row(x, y), zi);
  return h ? h->coefficient(a_[zi]) : Integer(0);
}

bool AFunction::is_duflo(Elem w) const { return std::binary_search(duflo_.begin(), duflo_.end(), w); }

std::optional<std::vector<Elem>> duflo_map(const AFunction& afn, const CellDecomposition& cells,
                                           std::vector<std::size_t>* bad_cells) {
  const auto& left = cells.left();
  std::vector<Elem> rep(left.cell_count(), kNoElem);
  std::vector<std::size_t> count(left.cell_count(), 0);
  for (Elem d : afn.duflo()) {
    const std::size_t c = left.cell_of(d);
    rep[c] = d;
    ++count[c];
  }
  bool ok = true;
  for (std::size_t c = 0; c < count.size(); ++c) {
    if (count[c] != 1) {
      ok = false;
      if (bad_cells) bad_cells->push_back(c);
    }
  }
  if (!ok) return std::nullopt;
  std::vector<Elem> out(left.size());
  for (Elem w = 0; w < out.size(); ++w) out[w] = rep[left.cell_of(w)];
  return out;
}

Report verify_conjectures(const AFunction& afn, const CellDecomposition& cells, const std::vector<std::string>& which) {
  const auto& group = afn.algebra().group();
  const std::size_t n = group.size();
  auto wanted = [&](const char* name) { return std::find(which.begin(), which.end(), name) != which.end(); };
  for (const auto& w : which)
    if (w != "P1" && w != "P4" && w != "P8" && w != "P9") throw UsageError("unsupported conjecture " + w);
  Report report;

  if (wanted("P1")) {
    auto& check = report.add("P1");
    for (Elem z = 0; z < n; ++z)
      check.expect_lazy(afn.a(z) <= afn.delta(z), [&] {
        return "a(" + show(group, z) + ") = " + afn.a(z).to_string() + " > Delta = " + afn.delta(z).to_string();
      });
  }

  if (wanted("P4")) {
    auto& check = report.add("P4");
    const auto& lr = cells.two_sided();
    // z' <=_LR z implies a(z') >= a(z): compare extreme values per cell
    std::vector<Elem> amin(lr.cell_count()), amax(lr.cell_count());
    for (std::size_t c = 0; c < lr.cell_count(); ++c) {
      const auto& m = lr.members(c);
      amin[c] = *std::min_element(m.begin(), m.end(), [&](Elem x, Elem y) { return afn.a(x) < afn.a(y); });
      amax[c] = *std::max_element(m.begin(), m.end(), [&](Elem x, Elem y) { return afn.a(x) < afn.a(y); });
    }
    for (std::size_t lo = 0; lo < lr.cell_count(); ++lo)
      for (std::size_t hi = 0; hi < lr.cell_count(); ++hi) {
        if (!lr.cell_leq(lo, hi)) continue;
        const Elem zp = amin[lo], z = amax[hi];
        check.expect_lazy(afn.a(zp) >= afn.a(z), [&] {
          return show(group, zp) + " <=_LR " + show(group, z) + " but a = " + afn.a(zp).to_string() + " < " +
                 afn.a(z).to_string();
        });
      }
  }

  if (wanted("P8")) {
    auto& check = report.add("P8");
    const auto& left = cells.left();
    const auto& table = afn.algebra().structure_table();
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        for (const auto& [zi, h] : table.row(x, y)) {
          if (h.coefficient(afn.a(zi)) == 0) continue;
          const Elem z = group.inverse(zi);
          const bool ok = left.equivalent(x, group.inverse(y)) && left.equivalent(y, zi) &&
                          left.equivalent(z, group.inverse(x));
          check.expect_lazy(ok, [&] {
            return "gamma(" + show(group, x) + ", " + show(group, y) + ", " + show(group, z) + ") != 0";
          });
        }
  }

  if (wanted("P9")) {
    auto& check = report.add("P9");
    const auto& left = cells.left();
    std::vector<std::map<Exponent, Elem>> values(left.cell_count());
    for (Elem w = 0; w < n; ++w) values[left.cell_of(w)].emplace(afn.a(w), w);
    for (std::size_t lo = 0; lo < left.cell_count(); ++lo)
      for (std::size_t hi = 0; hi < left.cell_count(); ++hi) {
        if (lo == hi || !left.cell_leq(lo, hi)) continue;
        for (const auto& [value, w] : values[lo]) {
          auto it = values[hi].find(value);
          const Elem other = it == values[hi].end() ? kNoElem : it->second;
          check.expect_lazy(other == kNoElem, [&] {
            return show(group, w) + " <_L " + show(group, other) + " with equal a = " + value.to_string();
          });
        }
      }
  }
  return report;
}

CellModule cell_module(const HeckeAlgebra& algebra, const CellDecomposition& cells, std::size_t left_cell) {
  const auto& left = cells.left();
  CellModule out;
  out.basis = left.members(left_cell);
  const std::size_t k = out.basis.size();
  std::map<Elem, std::size_t> position;
  for (std::size_t i = 0; i < k; ++i) position[out.basis[i]] = i;
  const std::size_t rank = algebra.group().rank();
  out.action.assign(rank, std::vector<std::vector<LaurentPoly>>(k, std::vector<LaurentPoly>(k)));
  for (Generator s = 0; s < rank; ++s)
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& [u, h] : algebra.generator_action(s, out.basis[j], Side::Left)) {
        auto it = position.find(u);
        if (it != position.end()) out.action[s][it->second][j] = h;
      }
  return out;
}

}  // namespace klc
