#include "klc/cactus.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "klc/errors.hpp"

namespace klc {

namespace {

CoxeterElement longest_in(const CoxeterSystem& system, GeneratorSet J) {
  CoxeterElement w = system.identity();
  for (bool grown = true; grown;) {
    grown = false;
    for (Generator s : J.members()) {
      Word word = w.word();
      word.push_back(s);
      auto next = system.normal_form(word);
      if (next.length() > w.length()) {
        w = std::move(next);
        grown = true;
      }
    }
  }
  return w;
}

// omega_J(I) = w_J I w_J.
GeneratorSet conjugate_by_longest(const CoxeterSystem& system, GeneratorSet I, GeneratorSet J) {
  const Word wJ = longest_in(system, J).word();
  GeneratorSet out;
  for (Generator s : I.members()) {
    Word word = wJ;
    word.push_back(s);
    word.insert(word.end(), wJ.begin(), wJ.end());
    const auto image = system.normal_form(word);
    if (image.length() != 1) throw ConsistencyError("w_J s w_J is not a simple reflection");
    out.insert(image.word().front());
  }
  return out;
}

bool orthogonal(const CoxeterSystem& system, GeneratorSet I, GeneratorSet J) {
  for (Generator s : I.members())
    for (Generator t : J.members())
      if (s == t || system.order(s, t) != 2) return false;
  return true;
}

std::string_view trim_view(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace

std::string CactusRelation::to_string(const CoxeterSystem& system) const {
  auto tau = [&](GeneratorSet X) { return "tau{" + system.render(X) + "}"; };
  switch (kind) {
    case Kind::C1:
      return "C1 " + tau(I) + "^2 = 1";
    case Kind::C2:
      return "C2 " + tau(I) + " " + tau(J) + " = " + tau(J) + " " + tau(I);
    case Kind::C3:
      return "C3 " + tau(I) + " " + tau(J) + " = " + tau(J) + " " + tau(K);
  }
  return {};
}

CactusPresentation CactusPresentation::build(const CoxeterSystem& system) {
  CactusPresentation p;
  for (std::uint32_t bits = 1; bits < (1u << system.rank()); ++bits) {
    const GeneratorSet I(bits);
    if (system.is_connected(I) && system.is_finite(I)) p.generators.push_back(I);
  }
  std::sort(p.generators.begin(), p.generators.end());
  for (GeneratorSet I : p.generators) p.relations.push_back({CactusRelation::Kind::C1, I, {}, {}});
  for (std::size_t a = 0; a < p.generators.size(); ++a)
    for (std::size_t b = a + 1; b < p.generators.size(); ++b)
      if (orthogonal(system, p.generators[a], p.generators[b]))
        p.relations.push_back({CactusRelation::Kind::C2, p.generators[a], p.generators[b], {}});
  for (GeneratorSet J : p.generators)
    for (GeneratorSet I : p.generators)
      if (I != J && I.subset_of(J))
        p.relations.push_back({CactusRelation::Kind::C3, I, J, conjugate_by_longest(system, I, J)});
  return p;
}

bool CactusPresentation::is_generator(GeneratorSet I) const {
  return std::find(generators.begin(), generators.end(), I) != generators.end();
}

CactusWord parse_cactus_word(const CactusPresentation& presentation, const CoxeterSystem& system,
                             std::string_view text) {
  CactusWord word;
  text = trim_view(text);
  if (text.empty()) return word;
  while (true) {
    const auto bar = text.find('|');
    const auto letter = trim_view(text.substr(0, bar));
    const GeneratorSet I = system.parse_set(letter);
    if (!presentation.is_generator(I)) {
      throw UsageError("'" + std::string(letter) + "' is not a cactus generator (connected, finite type)");
    }
    word.push_back(I);
    if (bar == std::string_view::npos) break;
    text.remove_prefix(bar + 1);
  }
  return word;
}

std::string render_cactus_word(const CoxeterSystem& system, const CactusWord& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += '|';
    out += system.render(word[i]);
  }
  return out;
}

Elem project_to_W(const CoxeterGroup& group, const CactusWord& word) {
  Elem out = 0;
  for (GeneratorSet I : word) out = group.multiply(out, group.longest(I));
  return out;
}

CactusAction::CactusAction(const Workspace& ws)
    : ws_(ws), presentation_(CactusPresentation::build(ws.group().system())) {
  for (GeneratorSet I : presentation_.generators) data_.push_back(&ws.mathas_lusztig(I));
}

std::size_t CactusAction::slot(GeneratorSet I) const {
  const auto& g = presentation_.generators;
  const auto it = std::find(g.begin(), g.end(), I);
  if (it == g.end()) throw UsageError("{" + ws_.group().system().render(I) + "} is not a cactus generator");
  return static_cast<std::size_t>(it - g.begin());
}

const std::vector<Elem>& CactusAction::permutation(GeneratorSet I, Side side) const {
  const auto* d = data_[slot(I)];
  return side == Side::Left ? d->lambda_L : d->rho_R;
}

const std::vector<int>& CactusAction::signs(GeneratorSet I, Side side) const {
  const auto* d = data_[slot(I)];
  return side == Side::Left ? d->eta_L : d->eta_R;
}

Elem CactusAction::act(const CactusWord& word, Side side, Elem w) const {
  for (auto it = word.rbegin(); it != word.rend(); ++it) w = permutation(*it, side)[w];
  return w;
}

SignedPermutation CactusAction::compose(const CactusWord& word, Side side) const {
  const std::size_t n = ws_.group().size();
  SignedPermutation out;
  out.map.resize(n);
  out.sign.assign(n, 1);
  for (Elem w = 0; w < n; ++w) {
    Elem x = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      out.sign[w] *= signs(*it, side)[x];
      x = permutation(*it, side)[x];
    }
    out.map[w] = x;
  }
  return out;
}

namespace {

std::pair<CactusWord, CactusWord> sides(const CactusRelation& r) {
  switch (r.kind) {
    case CactusRelation::Kind::C1:
      return {{r.I, r.I}, {}};
    case CactusRelation::Kind::C2:
      return {{r.I, r.J}, {r.J, r.I}};
    case CactusRelation::Kind::C3:
      return {{r.I, r.J}, {r.J, r.K}};
  }
  return {};
}

}  // namespace

Report CactusAction::verify_relations() const {
  const auto& group = ws_.group();
  const auto& system = group.system();
  Report report;
  for (Side side : {Side::Left, Side::Right}) {
    const std::string family = side == Side::Left ? "lambda^L" : "rho^R";
    auto& c1 = report.add("C1 (" + family + ")");
    auto& c2 = report.add("C2 (" + family + ")");
    auto& c3 = report.add("C3 (" + family + ")");
    for (const auto& r : presentation_.relations) {
      auto& check = r.kind == CactusRelation::Kind::C1 ? c1 : r.kind == CactusRelation::Kind::C2 ? c2 : c3;
      const auto [lhs, rhs] = sides(r);
      for (Elem w = 0; w < group.size(); ++w) {
        check.expect_lazy(act(lhs, side, w) == act(rhs, side, w),
                          [&] { return r.to_string(system) + " at w = " + show(group, w); });
      }
    }
  }
  auto& cross = report.add("[lambda_I^L, rho_J^R] = id");
  for (GeneratorSet I : presentation_.generators) {
    const auto& left = permutation(I, Side::Left);
    for (GeneratorSet J : presentation_.generators) {
      const auto& right = permutation(J, Side::Right);
      for (Elem w = 0; w < group.size(); ++w) {
        cross.expect_lazy(left[right[w]] == right[left[w]], [&] {
          return "I = {" + system.render(I) + "}, J = {" + system.render(J) + "}, w = " + show(group, w);
        });
      }
    }
  }
  return report;
}

Report CactusAction::compare_relation_signs() const {
  const auto& group = ws_.group();
  const auto& system = group.system();
  Report report;
  for (Side side : {Side::Left, Side::Right}) {
    const std::string family = side == Side::Left ? "eta_L" : "eta_R";
    for (const auto& r : presentation_.relations) {
      auto& check = report.add(r.to_string(system) + " (" + family + ")");
      const auto [lhs, rhs] = sides(r);
      const auto a = compose(lhs, side);
      const auto b = compose(rhs, side);
      for (Elem w = 0; w < group.size(); ++w)
        check.expect_lazy(a.sign[w] == b.sign[w], [&] { return "w = " + show(group, w); });
    }
  }
  return report;
}

std::vector<std::vector<Elem>> CactusAction::orbits(CellKind kind) const {
  const std::size_t n = ws_.group().size();
  std::vector<const std::vector<Elem>*> moves;
  for (GeneratorSet I : presentation_.generators) {
    if (kind != CellKind::Right) moves.push_back(&permutation(I, Side::Left));
    if (kind != CellKind::Left) moves.push_back(&permutation(I, Side::Right));
  }
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Elem>> out;
  for (Elem start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<Elem> orbit;
    std::deque<Elem> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const Elem w = queue.front();
      queue.pop_front();
      orbit.push_back(w);
      for (const auto* p : moves) {
        const Elem x = (*p)[w];
        if (!seen[x]) {
          seen[x] = true;
          queue.push_back(x);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

}  // namespace klc
