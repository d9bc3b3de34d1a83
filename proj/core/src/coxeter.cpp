#include "klc/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

#include "klc/errors.hpp"
#include "roots.hpp"

namespace klc {

namespace {

using detail::RootSystem;
using RootId = RootSystem::Id;

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

// Splits at `sep` outside parentheses.
std::vector<std::string_view> split_top_level(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == sep && depth == 0) {
      parts.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 2; k <= n; ++k) r = saturating_mul(r, k);
  return r;
}

struct Classified {
  std::string type;
  std::optional<std::uint64_t> order;
};

// Image vectors (w alpha_t)_t and (w^-1 alpha_t)_t of an element.
struct RootState {
  std::vector<RootId> images;
  std::vector<RootId> inverse_images;

  static RootState identity(std::size_t rank) {
    RootState st;
    st.images.resize(rank);
    std::iota(st.images.begin(), st.images.end(), RootId{0});
    st.inverse_images = st.images;
    return st;
  }

  void left_multiply(const RootSystem& roots, Generator s) {
    for (auto& r : images) r = roots.reflect(s, r);
    const RootId pivot = inverse_images[s];
    for (std::size_t t = 0; t < inverse_images.size(); ++t) {
      inverse_images[t] = roots.subtract_multiple(inverse_images[t], s, static_cast<Generator>(t), pivot);
    }
  }

  void right_multiply(const RootSystem& roots, Generator s) {
    for (auto& r : inverse_images) r = roots.reflect(s, r);
    const RootId pivot = images[s];
    for (std::size_t t = 0; t < images.size(); ++t) {
      images[t] = roots.subtract_multiple(images[t], s, static_cast<Generator>(t), pivot);
    }
  }

  GeneratorSet descents(const RootSystem& roots, Side side) const {
    const auto& v = side == Side::Left ? inverse_images : images;
    GeneratorSet out;
    for (std::size_t s = 0; s < v.size(); ++s)
      if (!roots.positive(v[s])) out.insert(static_cast<Generator>(s));
    return out;
  }
};

struct IdVectorHash {
  std::size_t operator()(const std::vector<RootId>& v) const {
    std::size_t seed = v.size();
    for (auto x : v) seed ^= std::hash<RootId>{}(x) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
  }
};

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    if (c == '.' || c == ',' || c == '|' || c == '=' || c == '(' || c == ')' || c == ';') return false;
  }
  return true;
}

}  // namespace

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

Side parse_side(std::string_view text) {
  text = trim(text);
  if (text == "left" || text == "L") return Side::Left;
  if (text == "right" || text == "R") return Side::Right;
  throw UsageError("side must be 'left' or 'right', got '" + std::string(text) + "'");
}

// --- GeneratorSet ----------------------------------------------------------

std::vector<Generator> GeneratorSet::members() const {
  std::vector<Generator> out;
  for (std::uint32_t b = bits_; b; b &= b - 1) out.push_back(static_cast<Generator>(std::countr_zero(b)));
  return out;
}

std::optional<Generator> GeneratorSet::min() const {
  if (bits_ == 0) return std::nullopt;
  return static_cast<Generator>(std::countr_zero(bits_));
}

std::strong_ordering GeneratorSet::operator<=>(const GeneratorSet& other) const {
  if (auto c = size() <=> other.size(); c != 0) return c;
  auto a = members();
  auto b = other.members();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

// --- CoxeterElement --------------------------------------------------------

std::strong_ordering CoxeterElement::operator<=>(const CoxeterElement& other) const {
  if (auto c = word_.size() <=> other.word_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(word_.begin(), word_.end(), other.word_.begin(),
                                                other.word_.end());
}

// --- CoxeterSystem ---------------------------------------------------------

CoxeterSystem::CoxeterSystem(std::vector<std::string> labels, std::vector<std::vector<int>> matrix,
                             std::string name)
    : name_(std::move(name)), labels_(std::move(labels)), matrix_(std::move(matrix)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw UsageError("a Coxeter system needs at least one generator");
  if (n > 32) throw UsageError("at most 32 generators are supported");
  if (matrix_.size() != n) throw UsageError("Coxeter matrix size does not match the generator count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid_label(labels_[i])) throw UsageError("invalid generator label '" + labels_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (labels_[i] == labels_[j]) throw UsageError("duplicate generator label '" + labels_[i] + "'");
    if (matrix_[i].size() != n) throw UsageError("Coxeter matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int m = matrix_[i][j];
      if (m != matrix_[j][i]) throw UsageError("Coxeter matrix is not symmetric");
      if (i == j && m != 1) throw UsageError("Coxeter matrix diagonal must be 1");
      if (i != j && m != kInfinite && m < 2) throw UsageError("off-diagonal Coxeter orders must be >= 2 or infinite");
    }
  }
  roots_ = std::make_shared<detail::RootSystem>(matrix_);
}

CoxeterSystem CoxeterSystem::named(std::string_view type) {
  std::string text(trim(type));
  if (text.empty()) throw UsageError("empty Coxeter type");
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  auto fail = [&] { return UsageError("unknown Coxeter type '" + std::string(type) + "'"); };

  auto path_labels = [](std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 1; i <= n; ++i) l.push_back("s" + std::to_string(i));
    return l;
  };
  auto empty_matrix = [](std::size_t n) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 2));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  };
  auto link = [](std::vector<std::vector<int>>& m, std::size_t a, std::size_t b, int order) {
    m[a][b] = m[b][a] = order;
  };

  const char family = text[0];
  std::string rest = text.substr(1);
  if (family == 'I') {
    // I2(m)
    if (rest.size() < 4 || rest[0] != '2' || rest[1] != '(' || rest.back() != ')') throw fail();
    std::string arg = rest.substr(2, rest.size() - 3);
    int m = 0;
    if (arg == "inf" || arg == "infinity" || arg == "oo") {
      m = kInfinite;
    } else {
      try {
        std::size_t used = 0;
        m = std::stoi(arg, &used);
        if (used != arg.size()) throw fail();
      } catch (const std::logic_error&) {
        throw fail();
      }
      if (m < 2) throw UsageError("I2(m) requires m >= 2");
    }
    auto matrix = empty_matrix(2);
    link(matrix, 0, 1, m);
    return CoxeterSystem({"s", "t"}, matrix, "I2(" + (m == kInfinite ? std::string("inf") : std::to_string(m)) + ")");
  }

  std::size_t n = 0;
  try {
    std::size_t used = 0;
    const int parsed = std::stoi(rest, &used);
    if (used != rest.size() || parsed < 1) throw fail();
    n = static_cast<std::size_t>(parsed);
  } catch (const std::logic_error&) {
    throw fail();
  }
  if (n > 32) throw UsageError("rank too large");
  auto matrix = empty_matrix(n);
  std::vector<std::string> labels = path_labels(n);
  const std::string name = std::string(1, family) + std::to_string(n);

  switch (family) {
    case 'A':
      for (std::size_t i = 0; i + 1 < n; ++i) link(matrix, i, i + 1, 3);
      return CoxeterSystem(labels, matrix, name);
    case 'B':
    case 'C': {
      if (n < 2) throw fail();
      // t = s0 carries the double bond; s1..s_{n-1} form the A-tail.
      labels[0] = "t";
      for (std::size_t i = 1; i < n; ++i) labels[i] = "s" + std::to_string(i);
      link(matrix, 0, 1, 4);
      for (std::size_t i = 1; i + 1 < n; ++i) link(matrix, i, i + 1, 3);
      return CoxeterSystem(labels, matrix, name);
    }
    case 'D':
      if (n < 4) throw fail();
      for (std::size_t i = 0; i + 2 < n; ++i) link(matrix, i, i + 1, 3);
      link(matrix, n - 3, n - 1, 3);
      return CoxeterSystem(labels, matrix, name);
    case 'E':
      if (n < 6 || n > 8) throw fail();
      link(matrix, 0, 2, 3);
      link(matrix, 1, 3, 3);
      for (std::size_t i = 2; i + 1 < n; ++i) link(matrix, i, i + 1, 3);
      return CoxeterSystem(labels, matrix, name);
    case 'F':
      if (n != 4) throw fail();
      link(matrix, 0, 1, 3);
      link(matrix, 1, 2, 4);
      link(matrix, 2, 3, 3);
      return CoxeterSystem(labels, matrix, name);
    case 'G':
      if (n != 2) throw fail();
      link(matrix, 0, 1, 6);
      return CoxeterSystem({"s", "t"}, matrix, name);
    case 'H':
      if (n != 3 && n != 4) throw fail();
      link(matrix, 0, 1, 5);
      for (std::size_t i = 1; i + 1 < n; ++i) link(matrix, i, i + 1, 3);
      return CoxeterSystem(labels, matrix, name);
    default:
      throw fail();
  }
}

Generator CoxeterSystem::generator(std::string_view label) const {
  label = trim(label);
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Generator>(i);
  throw UsageError("unknown generator '" + std::string(label) + "'");
}

bool CoxeterSystem::is_connected(GeneratorSet subset) const {
  if (subset.empty()) return false;
  return components(subset).size() == 1;
}

std::vector<GeneratorSet> CoxeterSystem::components(GeneratorSet subset) const {
  std::vector<GeneratorSet> out;
  GeneratorSet remaining = subset;
  while (!remaining.empty()) {
    GeneratorSet comp = GeneratorSet::single(*remaining.min());
    bool grew = true;
    while (grew) {
      grew = false;
      for (Generator s : comp.members()) {
        for (Generator t : remaining.members()) {
          if (!comp.contains(t) && matrix_[s][t] != 2) {
            comp.insert(t);
            grew = true;
          }
        }
      }
    }
    out.push_back(comp);
    remaining = remaining.without(comp);
  }
  return out;
}

namespace {

Classified classify(const std::vector<std::vector<int>>& matrix, GeneratorSet comp) {
  const auto nodes = comp.members();
  const std::size_t n = nodes.size();
  if (n == 1) return {"A1", 2};
  if (n == 2) {
    const int m = matrix[nodes[0]][nodes[1]];
    if (m == kInfinite) return {"I2(inf)", std::nullopt};
    const auto order = static_cast<std::uint64_t>(2 * m);
    if (m == 3) return {"A2", order};
    if (m == 4) return {"B2", order};
    if (m == 6) return {"G2", order};
    return {"I2(" + std::to_string(m) + ")", order};
  }
  const Classified infinite{"infinite", std::nullopt};
  // Finite types of rank >= 3 are trees with labels 3, 4, 5.
  std::vector<std::vector<std::size_t>> adj(n);
  std::size_t edges = 0;
  std::vector<std::pair<std::size_t, std::size_t>> heavy;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int m = matrix[nodes[i]][nodes[j]];
      if (m == 2) continue;
      if (m == kInfinite || m > 5) return infinite;
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
      if (m > 3) heavy.emplace_back(i, j);
    }
  }
  if (edges != n - 1) return infinite;
  std::vector<std::size_t> branch;
  for (std::size_t i = 0; i < n; ++i) {
    if (adj[i].size() > 3) return infinite;
    if (adj[i].size() == 3) branch.push_back(i);
  }
  if (heavy.size() > 1) return infinite;
  if (heavy.empty()) {
    if (branch.empty()) return {"A" + std::to_string(n), factorial(n + 1)};
    if (branch.size() > 1) return infinite;
    std::vector<std::size_t> arms;
    for (std::size_t start : adj[branch[0]]) {
      std::size_t len = 1, prev = branch[0], cur = start;
      while (adj[cur].size() == 2) {
        const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
      return {"D" + std::to_string(n), saturating_mul(std::uint64_t{1} << std::min<std::size_t>(n - 1, 63), factorial(n))};
    }
    if (arms[0] == 1 && arms[1] == 2) {
      if (arms[2] == 2) return {"E6", 51840};
      if (arms[2] == 3) return {"E7", 2903040};
      if (arms[2] == 4) return {"E8", 696729600};
    }
    return infinite;
  }
  if (!branch.empty()) return infinite;
  const auto [a, b] = heavy.front();
  const int m = matrix[nodes[a]][nodes[b]];
  const bool at_end = adj[a].size() == 1 || adj[b].size() == 1;
  if (m == 4) {
    if (at_end) {
      return {"B" + std::to_string(n), saturating_mul(std::uint64_t{1} << std::min<std::size_t>(n, 63), factorial(n))};
    }
    if (n == 4) return {"F4", 1152};
    return infinite;
  }
  if (at_end && n == 3) return {"H3", 120};
  if (at_end && n == 4) return {"H4", 14400};
  return infinite;
}

}  // namespace

std::optional<std::uint64_t> CoxeterSystem::parabolic_order(GeneratorSet subset) const {
  std::uint64_t order = 1;
  for (GeneratorSet comp : components(subset)) {
    auto c = classify(matrix_, comp);
    if (!c.order) return std::nullopt;
    order = saturating_mul(order, *c.order);
  }
  return order;
}

std::string CoxeterSystem::component_type(GeneratorSet connected) const {
  if (!is_connected(connected)) throw PreconditionError("component_type needs a connected subset");
  return classify(matrix_, connected).type;
}

CoxeterSystem CoxeterSystem::restrict(GeneratorSet subset) const {
  if (subset.empty()) throw PreconditionError("cannot restrict to the empty set of generators");
  std::vector<std::string> labels;
  std::vector<std::vector<int>> matrix;
  const auto members = subset.members();
  for (Generator s : members) {
    labels.push_back(labels_[s]);
    std::vector<int> row;
    for (Generator t : members) row.push_back(matrix_[s][t]);
    matrix.push_back(std::move(row));
  }
  std::string name;
  if (is_connected(subset)) name = classify(matrix_, subset).type;
  return CoxeterSystem(std::move(labels), std::move(matrix), std::move(name));
}

std::vector<std::size_t> CoxeterSystem::conjugacy_classes() const {
  const std::size_t n = rank();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t)
      if (matrix_[s][t] != kInfinite && matrix_[s][t] % 2 == 1) parent[find(t)] = find(s);
  std::vector<std::size_t> out(n);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t s = 0; s < n; ++s) {
    auto root = find(s);
    auto it = ids.emplace(root, ids.size()).first;
    out[s] = it->second;
  }
  return out;
}

CoxeterElement CoxeterSystem::normal_form(std::span<const Generator> word) const {
  RootState st = RootState::identity(rank());
  for (Generator s : word) {
    if (s >= rank()) throw UsageError("generator index out of range");
    st.right_multiply(*roots_, s);
  }
  Word canonical;
  while (true) {
    auto left = st.descents(*roots_, Side::Left);
    if (left.empty()) break;
    const Generator s = *left.min();
    canonical.push_back(s);
    st.left_multiply(*roots_, s);
  }
  return CoxeterElement(std::move(canonical));
}

CoxeterElement CoxeterSystem::multiply(const CoxeterElement& a, const CoxeterElement& b) const {
  Word w = a.word();
  w.insert(w.end(), b.word().begin(), b.word().end());
  return normal_form(w);
}

CoxeterElement CoxeterSystem::inverse(const CoxeterElement& a) const {
  Word w(a.word().rbegin(), a.word().rend());
  return normal_form(w);
}

GeneratorSet CoxeterSystem::descents(const CoxeterElement& w, Side side) const {
  RootState st = RootState::identity(rank());
  for (Generator s : w.word()) st.right_multiply(*roots_, s);
  return st.descents(*roots_, side);
}

std::string CoxeterSystem::render(const CoxeterElement& w) const { return render_word(w.word()); }

std::string CoxeterSystem::render_word(std::span<const Generator> word) const {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += '.';
    out += labels_[word[i]];
  }
  return out;
}

CoxeterElement CoxeterSystem::parse_element(std::string_view text) const {
  text = trim(text);
  if (text.empty()) return identity();
  Word word;
  for (auto token : split_top_level(text, '.')) {
    if (token.empty()) throw UsageError("empty generator in element '" + std::string(text) + "'");
    auto it = std::find(labels_.begin(), labels_.end(), token);
    if (it == labels_.end()) {
      if ((token == "1" || token == "e") && split_top_level(text, '.').size() == 1) return identity();
      throw UsageError("unknown generator '" + std::string(token) + "'");
    }
    word.push_back(static_cast<Generator>(it - labels_.begin()));
  }
  return normal_form(word);
}

std::string CoxeterSystem::render(GeneratorSet set) const {
  std::string out;
  for (Generator s : set.members()) {
    if (!out.empty()) out += ',';
    out += labels_[s];
  }
  return out;
}

GeneratorSet CoxeterSystem::parse_set(std::string_view text) const {
  text = trim(text);
  GeneratorSet out;
  if (text.empty()) return out;
  for (auto token : split_top_level(text, ',')) out.insert(generator(token));
  return out;
}

// --- CoxeterGroup ----------------------------------------------------------

std::shared_ptr<const CoxeterGroup> CoxeterGroup::build(const CoxeterSystem& system,
                                                        std::optional<std::size_t> max_length) {
  const auto order = system.group_order();
  if (!order && !max_length) {
    throw UsageError("W is infinite; a length bound is required to enumerate it");
  }
  std::shared_ptr<CoxeterGroup> g(new CoxeterGroup(system));
  const RootSystem& roots = system.roots();
  const std::size_t n = system.rank();

  std::vector<std::vector<RootId>> images;
  std::unordered_map<std::vector<RootId>, Elem, IdVectorHash> index;
  auto add = [&](std::vector<RootId> key, Word word) {
    const Elem id = static_cast<Elem>(g->words_.size());
    if (id == kNoElem) throw UsageError("too many elements");
    index.emplace(key, id);
    images.push_back(std::move(key));
    g->words_.push_back(std::move(word));
    return id;
  };

  RootState e = RootState::identity(n);
  add(e.images, {});
  std::size_t level_begin = 0, level_end = 1, length = 0;
  // Level L+1 is generated as s*u for s ascending and u in ShortLex order, so
  // the first hit of every element uses its minimal left descent and the
  // discovery order is ShortLex order.
  while (level_begin < level_end && (!max_length || length < *max_length)) {
    for (Generator s = 0; s < n; ++s) {
      for (std::size_t u = level_begin; u < level_end; ++u) {
        std::vector<RootId> key(n);
        for (std::size_t t = 0; t < n; ++t) key[t] = roots.reflect(s, images[u][t]);
        if (index.count(key)) continue;
        Word word;
        word.reserve(length + 1);
        word.push_back(s);
        word.insert(word.end(), g->words_[u].begin(), g->words_[u].end());
        add(std::move(key), std::move(word));
      }
    }
    level_begin = level_end;
    level_end = g->words_.size();
    ++length;
    if (order && g->words_.size() > *order) throw ConsistencyError("enumeration exceeded |W|");
  }

  const std::size_t size = g->words_.size();
  g->left_.assign(n, std::vector<Elem>(size, kNoElem));
  g->right_.assign(n, std::vector<Elem>(size, kNoElem));
  g->complete_ = true;
  for (Generator s = 0; s < n; ++s) {
    for (Elem w = 0; w < size; ++w) {
      std::vector<RootId> key(n);
      for (std::size_t t = 0; t < n; ++t) key[t] = roots.reflect(s, images[w][t]);
      auto it = index.find(key);
      if (it == index.end()) {
        g->complete_ = false;
      } else {
        g->left_[s][w] = it->second;
      }
    }
  }
  if (order && g->complete_ && size != *order) {
    throw ConsistencyError("enumerated " + std::to_string(size) + " elements, expected " + std::to_string(*order));
  }

  g->inverse_.resize(size);
  for (Elem w = 0; w < size; ++w) {
    Elem cur = 0;
    for (Generator s : g->words_[w]) cur = g->left_[s][cur];
    g->inverse_[w] = cur;
  }
  g->right_descents_.resize(size);
  for (Elem w = 0; w < size; ++w) {
    GeneratorSet r;
    for (Generator s = 0; s < n; ++s)
      if (!roots.positive(images[w][s])) r.insert(s);
    g->right_descents_[w] = r;
  }
  g->left_descents_.resize(size);
  for (Elem w = 0; w < size; ++w) g->left_descents_[w] = g->right_descents_[g->inverse_[w]];
  for (Generator s = 0; s < n; ++s) {
    for (Elem w = 0; w < size; ++w) {
      const Elem sw = g->left_[s][g->inverse_[w]];
      g->right_[s][w] = sw == kNoElem ? kNoElem : g->inverse_[sw];
    }
  }
  return g;
}

Elem CoxeterGroup::index(std::span<const Generator> word) const {
  Elem cur = 0;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it >= rank()) throw UsageError("generator index out of range");
    cur = left_[*it][cur];
    if (cur == kNoElem) break;
  }
  if (cur != kNoElem || complete_) return cur;
  // A non-reduced word may leave a truncated ball temporarily.
  const auto canonical = system_.normal_form(word);
  cur = 0;
  for (auto it = canonical.word().rbegin(); it != canonical.word().rend() && cur != kNoElem; ++it) {
    cur = left_[*it][cur];
  }
  return cur;
}

Elem CoxeterGroup::parse(std::string_view text) const {
  const Elem w = index(system_.parse_element(text));
  if (w == kNoElem) throw UsageError("element '" + std::string(text) + "' lies outside the enumeration");
  return w;
}

Elem CoxeterGroup::multiply(Elem a, Elem b) const {
  Elem cur = b;
  const Word& w = words_[a];
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    cur = left_[*it][cur];
    if (cur == kNoElem) {
      Word full = w;
      full.insert(full.end(), words_[b].begin(), words_[b].end());
      return index(full);
    }
  }
  return cur;
}

void CoxeterGroup::build_bruhat() const {
  const std::size_t size = words_.size();
  const std::size_t blocks = (size + 63) / 64;
  bruhat_.assign(size, std::vector<std::uint64_t>(blocks, 0));
  bruhat_[0][0] = 1;
  for (Elem y = 1; y < size; ++y) {
    const Generator s = words_[y].front();
    const Elem sy = left_[s][y];
    auto& row = bruhat_[y];
    const auto& lower = bruhat_[sy];
    for (Elem x = 0; x < size && length(x) <= length(y); ++x) {
      bool leq;
      if (left_descents_[x].contains(s)) {
        leq = (lower[left_[s][x] / 64] >> (left_[s][x] % 64)) & 1u;
      } else {
        leq = (lower[x / 64] >> (x % 64)) & 1u;
      }
      if (leq) row[x / 64] |= std::uint64_t{1} << (x % 64);
    }
  }
}

bool CoxeterGroup::bruhat_leq(Elem x, Elem y) const {
  std::call_once(bruhat_once_, [this] { build_bruhat(); });
  return (bruhat_[y][x / 64] >> (x % 64)) & 1u;
}

bool CoxeterGroup::in_parabolic(Elem w, GeneratorSet subset) const {
  for (Generator s : words_[w])
    if (!subset.contains(s)) return false;
  return true;
}

std::vector<Elem> CoxeterGroup::parabolic_elements(GeneratorSet subset) const {
  std::vector<Elem> out;
  for (Elem w = 0; w < size(); ++w)
    if (in_parabolic(w, subset)) out.push_back(w);
  return out;
}

std::vector<Elem> CoxeterGroup::min_coset_reps(GeneratorSet subset) const {
  std::vector<Elem> out;
  for (Elem w = 0; w < size(); ++w)
    if ((right_descents_[w] & subset).empty()) out.push_back(w);
  return out;
}

Elem CoxeterGroup::longest(GeneratorSet subset) const {
  if (!system_.is_finite(subset)) throw UsageError("W_I is infinite; it has no longest element");
  // w_I is the element of W_I whose left descent set is all of I.
  Elem cur = 0;
  while (true) {
    const GeneratorSet missing = subset.without(left_descents_[cur]);
    if (missing.empty()) return cur;
    cur = left_[*missing.min()][cur];
    if (cur == kNoElem) throw UsageError("w_I lies outside the enumerated ball");
  }
}

CoxeterGroup::CosetSplit CoxeterGroup::coset_decompose(Elem w, GeneratorSet subset, Side side) const {
  Elem cur = w;
  Elem part = 0;
  if (side == Side::Left) {
    while (true) {
      const GeneratorSet d = right_descents_[cur] & subset;
      if (d.empty()) break;
      const Generator s = *d.min();
      cur = right_[s][cur];
      part = left_[s][part];
    }
    return {cur, part};
  }
  while (true) {
    const GeneratorSet d = left_descents_[cur] & subset;
    if (d.empty()) break;
    const Generator s = *d.min();
    cur = left_[s][cur];
    part = right_[s][part];
  }
  return {inverse_[cur], part};
}

Elem CoxeterGroup::apply_automorphism(std::span<const Generator> perm, Elem w) const {
  Word image;
  image.reserve(words_[w].size());
  for (Generator s : words_[w]) image.push_back(perm[s]);
  return index(image);
}

// --- WeightFunction --------------------------------------------------------

WeightFunction::WeightFunction(const CoxeterSystem& system, std::vector<Exponent> values)
    : values_(std::move(values)) {
  if (values_.size() != system.rank()) throw UsageError("one weight per generator is required");
  for (const auto& v : values_) {
    if (v.rank() != values_.front().rank()) throw UsageError("weights must share one exponent rank");
    if (!v.is_positive()) throw UsageError("weights must be strictly positive, got " + v.to_string());
  }
  const auto classes = system.conjugacy_classes();
  for (std::size_t s = 0; s < values_.size(); ++s) {
    for (std::size_t t = 0; t < values_.size(); ++t) {
      if (classes[s] == classes[t] && values_[s] != values_[t]) {
        throw UsageError("conjugate generators " + system.label(static_cast<Generator>(s)) + " and " +
                         system.label(static_cast<Generator>(t)) + " must have equal weights");
      }
    }
  }
}

WeightFunction WeightFunction::constant(const CoxeterSystem& system, std::int64_t value) {
  return WeightFunction(system, std::vector<Exponent>(system.rank(), Exponent{value}));
}

WeightFunction WeightFunction::parse(const CoxeterSystem& system, std::string_view text) {
  text = trim(text);
  if (text.empty()) return constant(system);
  auto parse_value = [](std::string_view v) {
    v = trim(v);
    if (v.size() >= 2 && v.front() == '(' && v.back() == ')') v = v.substr(1, v.size() - 2);
    return Exponent::parse(v);
  };
  std::vector<std::optional<Exponent>> given(system.rank());
  const auto parts = split_top_level(text, ',');
  if (text.find('=') == std::string_view::npos) {
    if (parts.size() != system.rank()) throw UsageError("positional weights need one value per generator");
    for (std::size_t i = 0; i < parts.size(); ++i) given[i] = parse_value(parts[i]);
  } else {
    for (auto part : parts) {
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) throw UsageError("malformed weight entry '" + std::string(part) + "'");
      const Generator s = system.generator(part.substr(0, eq));
      given[s] = parse_value(part.substr(eq + 1));
    }
  }
  std::optional<std::size_t> rank;
  for (const auto& g : given)
    if (g) rank = g->rank();
  const auto classes = system.conjugacy_classes();
  std::vector<Exponent> values(system.rank());
  for (std::size_t s = 0; s < system.rank(); ++s) {
    if (given[s]) {
      values[s] = *given[s];
      continue;
    }
    std::optional<Exponent> fill;
    for (std::size_t t = 0; t < system.rank(); ++t)
      if (classes[t] == classes[s] && given[t]) fill = given[t];
    if (!fill) {
      std::vector<std::int64_t> unit(rank.value_or(1), 0);
      unit[0] = 1;
      fill = Exponent(std::span<const std::int64_t>(unit));
    }
    values[s] = *fill;
  }
  return WeightFunction(system, std::move(values));
}

bool WeightFunction::is_constant() const {
  return std::all_of(values_.begin(), values_.end(), [&](const Exponent& e) { return e == values_.front(); });
}

WeightFunction WeightFunction::restrict(const CoxeterSystem& subsystem, GeneratorSet subset) const {
  std::vector<Exponent> values;
  for (Generator s : subset.members()) values.push_back(values_[s]);
  return WeightFunction(subsystem, std::move(values));
}

std::string WeightFunction::to_string(const CoxeterSystem& system) const {
  std::string out;
  for (std::size_t s = 0; s < values_.size(); ++s) {
    if (s) out += ',';
    out += system.label(static_cast<Generator>(s)) + "=";
    if (values_[s].rank() == 1) {
      out += values_[s].to_string();
    } else {
      out += "(" + values_[s].to_string() + ")";
    }
  }
  return out;
}

// --- Parabolic machinery ---------------------------------------------------

Parabolic make_parabolic(const CoxeterGroup& group, GeneratorSet subset) {
  if (!group.is_complete()) throw UsageError("parabolic data needs a complete enumeration of W");
  if (subset.empty()) throw UsageError("the parabolic subset must be nonempty");
  if (!subset.subset_of(group.system().all())) throw UsageError("parabolic subset is not a subset of S");
  if (!group.system().is_finite(subset)) throw UsageError("W_I is infinite");
  Parabolic p;
  p.subset = subset;
  p.generators = subset.members();
  p.group = CoxeterGroup::build(group.system().restrict(subset));
  p.embedding.resize(p.group->size());
  p.restriction.assign(group.size(), kNoElem);
  for (Elem u = 0; u < p.group->size(); ++u) {
    Word word;
    for (Generator s : p.group->word(u)) word.push_back(p.generators[s]);
    const Elem w = group.index(word);
    p.embedding[u] = w;
    p.restriction[w] = u;
  }
  p.min_reps = group.min_coset_reps(subset);
  const Elem sub_longest = p.group->longest();
  p.longest = p.embedding[sub_longest];
  p.omega.resize(p.group->size());
  for (Elem u = 0; u < p.group->size(); ++u) {
    p.omega[u] = p.group->multiply(sub_longest, p.group->multiply(u, sub_longest));
  }
  return p;
}

std::vector<Elem> extend_map(const CoxeterGroup& group, const Parabolic& parabolic, std::span<const Elem> delta,
                             Side side) {
  if (delta.size() != parabolic.group->size()) throw PreconditionError("map must be defined on all of W_I");
  std::vector<Elem> out(group.size());
  for (Elem w = 0; w < group.size(); ++w) {
    const auto split = group.coset_decompose(w, parabolic.subset, side);
    const Elem image = parabolic.to_full(delta[parabolic.to_sub(split.part)]);
    out[w] = side == Side::Left ? group.multiply(split.rep, image)
                                : group.multiply(image, group.inverse(split.rep));
  }
  return out;
}

std::vector<int> extend_signs(const CoxeterGroup& group, const Parabolic& parabolic, std::span<const int> mu,
                              Side side) {
  if (mu.size() != parabolic.group->size()) throw PreconditionError("sign map must be defined on all of W_I");
  std::vector<int> out(group.size());
  for (Elem w = 0; w < group.size(); ++w) {
    out[w] = mu[parabolic.to_sub(group.coset_decompose(w, parabolic.subset, side).part)];
  }
  return out;
}

std::vector<Elem> op_map(const CoxeterGroup& group, std::span<const Elem> delta) {
  std::vector<Elem> out(group.size());
  for (Elem w = 0; w < group.size(); ++w) out[w] = group.inverse(delta[group.inverse(w)]);
  return out;
}

std::vector<std::vector<Generator>> diagram_automorphisms(const CoxeterSystem& system,
                                                          const WeightFunction& weights) {
  const std::size_t n = system.rank();
  std::vector<std::vector<Generator>> out;
  std::vector<Generator> perm(n);
  std::vector<bool> used(n, false);
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == n) {
      out.push_back(perm);
      return;
    }
    for (Generator image = 0; image < n; ++image) {
      if (used[image] || weights[image] != weights[static_cast<Generator>(k)]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = system.order(static_cast<Generator>(k), static_cast<Generator>(j)) == system.order(image, perm[j]);
      if (!ok) continue;
      perm[k] = image;
      used[image] = true;
      extend(k + 1);
      used[image] = false;
    }
  };
  extend(0);
  return out;
}

}  // namespace klc
