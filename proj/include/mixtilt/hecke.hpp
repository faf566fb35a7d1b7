#pragma once

#include <cstdint>
#include <map>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "mixtilt/coxeter.hpp"
#include "mixtilt/laurent.hpp"

namespace mixtilt {

enum class Basis { Standard, Costandard };

/// A class sum_beta c_beta [Delta_beta] (or [Nabla_beta]) with Laurent
/// coefficients; zero coefficients are not stored.
struct WeightVector {
  Basis basis = Basis::Standard;
  std::map<std::uint32_t, LaurentPoly> coeffs;

  const LaurentPoly& at(Element e) const;
  void set(Element e, LaurentPoly p);
  void add(Element e, const LaurentPoly& p);
  bool is_zero() const { return coeffs.empty(); }
  std::vector<Element> support() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/*
  Hecke-algebra layer over a Coxeter system.

  r_{x,y} expresses costandard classes in standard ones,
    [Nabla_y] = sum_{x <= y} r_{x,y}(t) [Delta_x],
  normalized by [Nabla_s] = [Delta_s] + (t - t^{-1}) [Delta_e].

  h_{x,y} = t^{l(y)-l(x)} P_{x,y}(t^{-2}) is the Laurent form of the
  Kazhdan-Lusztig polynomial. Both tables are memoized; entries are written
  once and are safe to read concurrently.
*/
class HeckeContext {
 public:
  explicit HeckeContext(const CoxeterSystem& sys) : sys_(sys) {}

  const CoxeterSystem& system() const { return sys_; }

  LaurentPoly r_poly(Element x, Element y) const;

  /// sum c_y(t)[Delta_y]  ->  sum c_y(t^{-1})[Nabla_y], re-expanded in the
  /// standard basis.
  WeightVector dual_class(const WeightVector& v) const;

  /*
    The unique V with V_top = 1, V_beta = 0 unless beta <= top, fixed by
    dual_class, and every lower V_beta obeying the split rule. Solved by
    descending length (ties ShortLex) over the interval below top.
    Throws SelfDualityError if an intermediate right-hand side is not
    antisymmetric.
  */
  WeightVector selfdual_solve(Element top, const OrderIdeal& ideal, SplitRule rule) const;

  LaurentPoly kl_h(Element x, Element y) const;
  /// Coefficients of P_{x,y}(q) in ascending powers of q; throws on a
  /// parity violation in h.
  LaurentPoly kl_P(Element x, Element y) const;
  Integer mu(Element x, Element y) const;

  /// [IC_w] in the standard basis: V_v = (-1)^{l(w)-l(v)} h_{v,w}(t^{-1}).
  WeightVector ic_weight_vector(Element w, const OrderIdeal& ideal) const;

  /*
    Row alpha of the IC matrix on the opposite (codimension-graded) side:
    D_gamma for gamma >= alpha in the ideal, with D_alpha = 1, every lower
    entry supported in negative degrees, and
      D_gamma = sum_{alpha <= z <= gamma} bar(D_z) r_{z,gamma}.
    Its entries at t^{-1} are (-1)^{l(gamma)-l(alpha)} times the inverse
    KL polynomials in Laurent form.
  */
  WeightVector dual_side_ic_row(Element alpha, const OrderIdeal& ideal) const;

 private:
  static std::uint64_t key(Element x, Element y) {
    return (static_cast<std::uint64_t>(x.id) << 32) | y.id;
  }
  void ensure_column(Element y) const;

  const CoxeterSystem& sys_;
  mutable std::shared_mutex r_mutex_;
  mutable std::unordered_map<std::uint64_t, LaurentPoly> r_cache_;
  mutable std::shared_mutex h_mutex_;
  mutable std::unordered_map<std::uint32_t, WeightVector> h_columns_;
};

/// sum_z r_{x,z}(t) r_{z,y}(t^{-1}); equals delta_{x,y} when the r table is
/// consistent.
LaurentPoly duality_defect(const HeckeContext& hecke, const OrderIdeal& ideal, Element x, Element y);

}  // namespace mixtilt
