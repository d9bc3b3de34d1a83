#pragma once

// The cactus group of (W, S) and its two commuting actions on W through the
// extended involutions lambda_I^L and rho_I^R.

#include <string>
#include <string_view>
#include <vector>

#include "klc/cellmaps.hpp"

namespace klc {

struct CactusRelation {
  enum class Kind { C1, C2, C3 };
  Kind kind = Kind::C1;
  GeneratorSet I;
  GeneratorSet J;
  /// omega_J(I) for C3, empty otherwise.
  GeneratorSet K;

  std::string to_string(const CoxeterSystem& system) const;
};

/// Generators tau_I for the connected nonempty I with W_I finite, in the
/// canonical GeneratorSet order, and every instance of
///   C1: tau_I^2 = 1,
///   C2: tau_I tau_J = tau_J tau_I for I, J disjoint and orthogonal (I < J),
///   C3: tau_I tau_J = tau_J tau_{omega_J(I)} for I strictly inside J.
struct CactusPresentation {
  std::vector<GeneratorSet> generators;
  std::vector<CactusRelation> relations;

  static CactusPresentation build(const CoxeterSystem& system);
  bool is_generator(GeneratorSet I) const;
};

/// A product of generators; letters act from right to left.
using CactusWord = std::vector<GeneratorSet>;

/// "s1,s2|t" is tau_{s1,s2} tau_t. The empty string is the empty word.
/// Throws UsageError on letters that are not generators.
CactusWord parse_cactus_word(const CactusPresentation& presentation, const CoxeterSystem& system,
                             std::string_view text);
std::string render_cactus_word(const CoxeterSystem& system, const CactusWord& word);

/// The image of the word under tau_I -> w_I.
Elem project_to_W(const CoxeterGroup& group, const CactusWord& word);

/// A composite permutation of W with the sign map of the composed cellular
/// pairs, taken letter by letter.
struct SignedPermutation {
  std::vector<Elem> map;
  std::vector<int> sign;
};

class CactusAction {
 public:
  /// Computes the data of every generator (throws what mathas_lusztig
  /// throws).
  explicit CactusAction(const Workspace& ws);

  const Workspace& workspace() const { return ws_; }
  const CactusPresentation& presentation() const { return presentation_; }

  /// lambda_I^L for Side::Left, rho_I^R for Side::Right.
  const std::vector<Elem>& permutation(GeneratorSet I, Side side) const;
  const std::vector<int>& signs(GeneratorSet I, Side side) const;

  Elem act(const CactusWord& word, Side side, Elem w) const;
  SignedPermutation compose(const CactusWord& word, Side side) const;

  /// C1, C2, C3 for both families and [lambda_I^L, rho_J^R] = id for all
  /// generator pairs, exhaustively over W.
  Report verify_relations() const;
  /// For each relation, whether both sides also give the same composite
  /// sign map. Informational only: the signs need not be unique.
  Report compare_relation_signs() const;
  /// Orbits of the left family, the right family, or both, each sorted and
  /// ordered by minimal element.
  std::vector<std::vector<Elem>> orbits(CellKind kind) const;

 private:
  std::size_t slot(GeneratorSet I) const;

  const Workspace& ws_;
  CactusPresentation presentation_;
  std::vector<const MathasLusztig*> data_;  // parallel to presentation_.generators
};

}  // namespace klc
