#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mixtilt/coxeter.hpp"
#include "mixtilt/hecke.hpp"
#include "mixtilt/laurent.hpp"

namespace mixtilt {

/*
  Square matrix of Laurent polynomials indexed twice by the same order
  ideal. Column alpha holds the class of the alpha-labeled object, row gamma
  its coefficient along the stratum gamma: entry(row, col).
*/
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(OrderIdeal index);

  const OrderIdeal& index() const { return index_; }
  std::size_t size() const { return index_.size(); }

  const LaurentPoly& at(std::size_t row, std::size_t col) const { return cells_[row * size() + col]; }
  LaurentPoly& at(std::size_t row, std::size_t col) { return cells_[row * size() + col]; }
  const LaurentPoly& entry(Element object, Element stratum) const {
    return at(index_.index_of(stratum), index_.index_of(object));
  }

  void set_column(Element object, const WeightVector& v);
  WeightVector column(Element object) const;

  bool is_identity() const;
  bool has_unit_diagonal() const;
  /// Nonzero entries only at (row, col) with row <= col in the index order.
  bool is_upper_triangular() const;
  bool is_lower_triangular() const;
  /// Nonzero entries only where stratum <= object in Bruhat order.
  bool is_bruhat_triangular(const CoxeterSystem& sys) const;

  WeightMatrix transposed() const;
  /// Entrywise t -> t^{-1}.
  WeightMatrix barred() const;

  friend WeightMatrix operator*(const WeightMatrix& a, const WeightMatrix& b);
  friend bool operator==(const WeightMatrix& a, const WeightMatrix& b);

 private:
  OrderIdeal index_;
  std::vector<LaurentPoly> cells_;
};

/// Exact inverse of a unit-diagonal matrix that is upper or lower
/// triangular in the index order. Throws std::invalid_argument otherwise.
WeightMatrix invert_triangular(const WeightMatrix& m);

/// Method I: the self-dual solve with the non-cancellation rule, with the
/// tilting invariants (non-negative, non-cancelling, in tZ[t] off the top)
/// asserted. Throws SelfDualityError on violation.
WeightVector tilting_vector(const HeckeContext& hecke, Element alpha, const OrderIdeal& ideal);

WeightMatrix tilting_matrix(const HeckeContext& hecke, const OrderIdeal& ideal);
WeightMatrix ic_matrix(const HeckeContext& hecke, const OrderIdeal& ideal);
/// IC weights on the opposite side: column alpha holds IC_alpha-hat along
/// the strata gamma-hat, gamma >= alpha (lower triangular in index order).
WeightMatrix dual_ic_matrix(const HeckeContext& hecke, const OrderIdeal& ideal);

/// Method III: tilting matrix recovered as the transposed inverse of the
/// opposite-side IC matrix at t^{-1}.
WeightMatrix tilting_from_inversion(const HeckeContext& hecke, const OrderIdeal& ideal);

bool check_condition_W(const WeightVector& v, Element top);
bool check_noncancel(const WeightVector& v, Element top);
bool verify_selfdual(const HeckeContext& hecke, const WeightVector& v);

struct RingelReport {
  std::string system;
  std::size_t ideal_size = 0;
  /// T(t) * (opposite-side IC at t^{-1})^T == identity
  bool inversion_ok = false;
  /// Only for finite types: the opposite-side matrix equals the
  /// w0-translated KL formula entrywise.
  std::optional<bool> w0_formula_ok;
  /// Informational: T(t) * (same-side IC at t^{-1}) == identity.
  bool same_side_product_identity = false;
  /// Informational: off-diagonal entries of the inverse, times
  /// (-1)^{length difference}, have non-negative coefficients.
  bool sign_pattern_ok = false;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

RingelReport ringel_verify(const HeckeContext& hecke, const OrderIdeal& ideal);

/// Method II: W_beta = sum over the fiber of beta of v_gamma * (-t)^{l(gamma) - l(beta_min)},
/// keyed by minimal coset representatives.
WeightVector pushforward_vector(const CoxeterSystem& sys, const WeightVector& v, const ParabolicData& p);

struct PushforwardResult {
  bool zero = true;
  Element image;       // coset label of alpha
  WeightVector vector; // empty when zero
};

/// Throws SelfDualityError if the computed push-forward contradicts the
/// vanishing dichotomy.
PushforwardResult pushforward_tilting(const HeckeContext& hecke, Element alpha,
                                      std::span<const int> subset, const OrderIdeal& ideal);

struct Discrepancy {
  std::string check;
  std::string object;   // alpha
  std::string stratum;  // gamma, or parabolic subset
  std::string detail;
};

struct CrossValidationReport {
  std::string system;
  std::size_t ideal_size = 0;
  std::size_t subsets_checked = 0;
  std::vector<Discrepancy> discrepancies;
  RingelReport ringel;

  bool passed() const { return discrepancies.empty(); }
};

/// Agreement of the three methods on an ideal, plus the push-forward
/// dichotomy for every listed subset (internal generator indices).
CrossValidationReport cross_validate(const HeckeContext& hecke, const OrderIdeal& ideal,
                                     const std::vector<std::vector<int>>& subsets);

/// All subsets of the generators (proper ones only for infinite groups).
std::vector<std::vector<int>> all_parabolic_subsets(const CoxeterSystem& sys);

/// Perturb every off-top entry of the tilting vector of top by +t^k (k of
/// the entry's parity, |k| <= l(top)+2) and count the mutants that still
/// pass self-duality together with non-cancellation. Uniqueness means 0.
struct MutationReport {
  std::size_t mutants = 0;
  std::size_t survivors = 0;
};
MutationReport mutation_test(const HeckeContext& hecke, Element top, const OrderIdeal& ideal);

}  // namespace mixtilt
