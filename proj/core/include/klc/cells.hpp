#pragma once

// Kazhdan-Lusztig preorders and cells, Lusztig's a-function, the Duflo set
// and checks of the conjectures P1, P4, P8, P9.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "klc/hecke.hpp"
#include "klc/report.hpp"

namespace klc {

enum class CellKind { Left, Right, TwoSided };

std::string to_string(CellKind kind);
CellKind parse_cell_kind(std::string_view text);

/// A preorder on W given by its cells and the induced partial order on them.
/// Cells are numbered by their ShortLex-minimal member.
class Preorder {
 public:
  Preorder() = default;
  /// `lower[y]` lists the z with z <= y in one step.
  static Preorder from_edges(const std::vector<std::vector<Elem>>& lower);

  std::size_t size() const { return cell_of_.size(); }
  std::size_t cell_count() const { return members_.size(); }
  std::size_t cell_of(Elem w) const { return cell_of_[w]; }
  const std::vector<Elem>& members(std::size_t cell) const { return members_[cell]; }
  const std::vector<std::vector<Elem>>& cells() const { return members_; }

  bool cell_leq(std::size_t a, std::size_t b) const { return below_[b][a]; }
  bool leq(Elem x, Elem y) const { return cell_leq(cell_of_[x], cell_of_[y]); }
  bool less(Elem x, Elem y) const { return leq(x, y) && cell_of_[x] != cell_of_[y]; }
  bool equivalent(Elem x, Elem y) const { return cell_of_[x] == cell_of_[y]; }
  /// Covering pairs (a, b) of the cell order: a < b with nothing between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

 private:
  std::vector<std::size_t> cell_of_;
  std::vector<std::vector<Elem>> members_;
  std::vector<boost::dynamic_bitset<>> below_;  // below_[b][a] iff a <= b
};

/// The three preorders of a finite W, built from multiplication by the C_s.
class CellDecomposition {
 public:
  explicit CellDecomposition(const HeckeAlgebra& algebra);

  const Preorder& preorder(CellKind kind) const { return orders_[static_cast<int>(kind)]; }
  const Preorder& left() const { return preorder(CellKind::Left); }
  const Preorder& right() const { return preorder(CellKind::Right); }
  const Preorder& two_sided() const { return preorder(CellKind::TwoSided); }

 private:
  Preorder orders_[3];
};

/// Lusztig's a-function and the related invariants of a finite W.
class AFunction {
 public:
  /// Uses the full structure table of `algebra`.
  explicit AFunction(const HeckeAlgebra& algebra);

  const Exponent& a(Elem z) const { return a_[z]; }
  /// a(w_0 z) - a(z).
  Exponent alpha(Elem z) const;
  /// Delta(z) = -deg p*_{1,z}.
  const Exponent& delta(Elem z) const { return delta_[z]; }
  /// Coefficient of v^{a(z^-1)} in h_{x,y,z^-1}.
  Integer gamma(Elem x, Elem y, Elem z) const;
  /// Elements with a(w) = Delta(w), in ShortLex order.
  const std::vector<Elem>& duflo() const { return duflo_; }
  bool is_duflo(Elem w) const;

  const HeckeAlgebra& algebra() const { return *algebra_; }

 private:
  const HeckeAlgebra* algebra_;
  std::vector<Exponent> a_;
  std::vector<Exponent> delta_;
  std::vector<Elem> duflo_;
};

/// Sends each w to the unique Duflo element of its left cell; nullopt when
/// some left cell does not contain exactly one. `bad_cells` then receives
/// the offending left cell ids.
std::optional<std::vector<Elem>> duflo_map(const AFunction& afn, const CellDecomposition& cells,
                                           std::vector<std::size_t>* bad_cells = nullptr);

/// Checks any of "P1", "P4", "P8", "P9" exhaustively.
Report verify_conjectures(const AFunction& afn, const CellDecomposition& cells,
                          const std::vector<std::string>& which = {"P1", "P4", "P8", "P9"});

/// Matrices of the C_s on the cell module of a left cell, in the basis c_w.
struct CellModule {
  std::vector<Elem> basis;
  /// action[s][i][j] = coefficient of c_{basis[i]} in C_s c_{basis[j]}.
  std::vector<std::vector<std::vector<LaurentPoly>>> action;
};

CellModule cell_module(const HeckeAlgebra& algebra, const CellDecomposition& cells, std::size_t left_cell);

}  // namespace klc
