#pragma once

// The involutions rho_I, lambda_I and the sign map eta^I attached to a
// finite parabolic subgroup, their extensions to W, and exhaustive checks of
// cellularity and of the identities they satisfy.

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "klc/cells.hpp"
#include "klc/hecke.hpp"
#include "klc/report.hpp"

namespace klc {

/// A permutation of W with a sign map. `side` says whether it is meant to be
/// left or right cellular.
struct CellularPair {
  std::vector<Elem> delta;
  std::vector<int> mu;
  Side side = Side::Left;

  static CellularPair identity(std::size_t n, Side side);
};

struct MathasLusztig {
  GeneratorSet subset;
  /// P1, P4, P8, P9 for (W_I, I, phi_I). The maps are still computed when
  /// these fail; `hypotheses_verified` tags the result.
  Report hypotheses;
  bool hypotheses_verified = false;
  /// Internal consistency of the computed maps (involutions, lambda = rho^op,
  /// rho = lambda o omega, rho(w) ~_L w, lambda(w) ~_R w).
  Report checks;

  // On W_I, indexed by subgroup indices.
  std::vector<Elem> rho;
  std::vector<Elem> lambda;
  std::vector<int> eta;
  std::vector<Exponent> alpha;

  // On W.
  std::vector<Elem> lambda_L;
  std::vector<Elem> rho_R;
  std::vector<int> eta_L;
  std::vector<int> eta_R;

  CellularPair left_pair() const { return {lambda_L, eta_L, Side::Left}; }
  CellularPair right_pair() const { return {rho_R, eta_R, Side::Right}; }
};

/// Everything computed for one (W, phi) with W finite: the algebra, cells,
/// a-function, and the per-subset data, built lazily and cached.
class Workspace {
 public:
  Workspace(const CoxeterSystem& system, const WeightFunction& weights, std::size_t jobs = 1);
  Workspace(std::shared_ptr<const CoxeterGroup> group, const WeightFunction& weights, std::size_t jobs = 1);

  const CoxeterGroup& group() const { return algebra_->group(); }
  const HeckeAlgebra& algebra() const { return *algebra_; }
  const WeightFunction& weights() const { return algebra_->weights(); }
  std::size_t jobs() const { return algebra_->jobs(); }

  const CellDecomposition& cells() const;
  const AFunction& afunction() const;
  /// P1, P4, P8, P9 for (W, S, phi).
  const Report& hypotheses() const;

  const Parabolic& parabolic(GeneratorSet subset) const;
  /// Workspace of (W_I, I, phi_I); *this when I = S.
  const Workspace& sub(GeneratorSet subset) const;
  /// Throws UsageError when W_I is infinite and TheoremViolation when the
  /// remainder modulo lower two-sided cells is not a signed basis element.
  const MathasLusztig& mathas_lusztig(GeneratorSet subset) const;

 private:
  std::shared_ptr<HeckeAlgebra> algebra_;
  mutable std::recursive_mutex mutex_;
  mutable std::unique_ptr<CellDecomposition> cells_;
  mutable std::unique_ptr<AFunction> afunction_;
  mutable std::unique_ptr<Report> hypotheses_;
  mutable std::map<std::uint32_t, std::unique_ptr<Parabolic>> parabolics_;
  mutable std::map<std::uint32_t, std::unique_ptr<Workspace>> subs_;
  mutable std::map<std::uint32_t, std::unique_ptr<MathasLusztig>> maps_;
};

/// LC1, LC2, LC3 (and that delta is a bijection with signs +-1) for the
/// side recorded in the pair.
Report verify_cellular_pair(const Workspace& ws, const CellularPair& pair);

/// L(delta(w)) = L(w) for left pairs, R(delta(w)) = R(w) for right pairs.
Report verify_descent_invariance(const CoxeterGroup& group, const CellularPair& pair);

/// Geck's triangularity properties of the p^I coefficients and the
/// parabolic induction of left cells.
Report verify_geck(const Workspace& ws, GeneratorSet subset);

/// p^I_{a,x,b,y} = mu_x mu_y p^I_{a,delta(x),b,delta(y)} whenever x ~_L y in
/// W_I, for a left cellular pair on W_I given on subgroup indices.
Report verify_geck_sign_identity(const Workspace& ws, GeneratorSet subset, std::span<const Elem> delta,
                                 std::span<const int> mu);

/// The congruences characterizing lambda_I^L and rho_I^R inside H, modulo
/// the ideals induced from lower left (right) cells of W_I.
Report verify_characterization(const Workspace& ws, GeneratorSet subset);

/// For a strongly left cellular pair: delta o rho_I^R = rho_I^R o delta and
/// eta_R(delta(w)) = mu_w mu_{rho_I^R(w)} eta_R(w). Right pairs are treated
/// with lambda_I^L and eta_L in the mirrored way.
Report verify_commutation(const Workspace& ws, GeneratorSet subset, const CellularPair& pair);

/// sigma o lambda_I^L = lambda_{sigma(I)}^L o sigma and the same for rho_I^R,
/// for every nontrivial phi-preserving diagram automorphism sigma and every
/// I with W_I finite.
Report verify_equivariance(const Workspace& ws);

/// Writing T_{w_0} C_y = sum lambda_{x,y} C_x: deg lambda_{x,y} <= -alpha(x)
/// and deg bar(lambda_{x,y}) <= alpha(y), with equality only if x ~_L y.
Report verify_degree_bounds(const Workspace& ws);

/// Two-sided cells of W on which eta^S takes both values.
std::vector<std::size_t> mixed_sign_cells(const Workspace& ws);

}  // namespace klc
