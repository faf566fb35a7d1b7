#include "mixtilt/tilting.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixtilt {

WeightMatrix::WeightMatrix(OrderIdeal index)
    : index_(std::move(index)), cells_(index_.size() * index_.size()) {}

void WeightMatrix::set_column(Element object, const WeightVector& v) {
  const std::size_t col = index_.index_of(object);
  for (std::size_t row = 0; row < size(); ++row) at(row, col) = LaurentPoly();
  for (const auto& [id, p] : v.coeffs) at(index_.index_of(Element{id}), col) = p;
}

WeightVector WeightMatrix::column(Element object) const {
  const std::size_t col = index_.index_of(object);
  WeightVector v;
  for (std::size_t row = 0; row < size(); ++row) v.set(index_[row], at(row, col));
  return v;
}

bool WeightMatrix::is_identity() const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c)
      if (at(r, c) != LaurentPoly(r == c ? 1 : 0)) return false;
  return true;
}

bool WeightMatrix::has_unit_diagonal() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (at(i, i) != LaurentPoly(1)) return false;
  return true;
}

bool WeightMatrix::is_upper_triangular() const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < r; ++c)
      if (!at(r, c).is_zero()) return false;
  return true;
}

bool WeightMatrix::is_lower_triangular() const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = r + 1; c < size(); ++c)
      if (!at(r, c).is_zero()) return false;
  return true;
}

bool WeightMatrix::is_bruhat_triangular(const CoxeterSystem& sys) const {
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c)
      if (!at(r, c).is_zero() && !sys.bruhat_leq(index_[r], index_[c])) return false;
  return true;
}

WeightMatrix WeightMatrix::transposed() const {
  WeightMatrix out(index_);
  for (std::size_t r = 0; r < size(); ++r)
    for (std::size_t c = 0; c < size(); ++c) out.at(c, r) = at(r, c);
  return out;
}

WeightMatrix WeightMatrix::barred() const {
  WeightMatrix out(index_);
  for (std::size_t i = 0; i < cells_.size(); ++i) out.cells_[i] = bar(cells_[i]);
  return out;
}

WeightMatrix operator*(const WeightMatrix& a, const WeightMatrix& b) {
  if (a.index().elements() != b.index().elements())
    throw std::invalid_argument("matrix product over different index sets");
  const std::size_t n = a.size();
  WeightMatrix out(a.index());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const LaurentPoly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const LaurentPoly& bkj = b.at(k, j);
        if (!bkj.is_zero()) out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

bool operator==(const WeightMatrix& a, const WeightMatrix& b) {
  return a.index_.elements() == b.index_.elements() && a.cells_ == b.cells_;
}

namespace {

WeightMatrix invert_upper(const WeightMatrix& m) {
  const std::size_t n = m.size();
  WeightMatrix inv(m.index());
  for (std::size_t j = 0; j < n; ++j) {
    inv.at(j, j) = LaurentPoly(1);
    for (std::size_t i = j; i-- > 0;) {
      LaurentPoly acc;
      for (std::size_t k = i + 1; k <= j; ++k) {
        const LaurentPoly& mik = m.at(i, k);
        if (mik.is_zero()) continue;
        const LaurentPoly& nkj = inv.at(k, j);
        if (!nkj.is_zero()) acc += mik * nkj;
      }
      inv.at(i, j) = -acc;
    }
  }
  return inv;
}

}  // namespace

WeightMatrix invert_triangular(const WeightMatrix& m) {
  if (!m.has_unit_diagonal()) throw std::invalid_argument("invert_triangular: diagonal is not all 1");
  WeightMatrix inv;
  if (m.is_upper_triangular())
    inv = invert_upper(m);
  else if (m.is_lower_triangular())
    inv = invert_upper(m.transposed()).transposed();
  else
    throw std::invalid_argument("invert_triangular: matrix is not triangular in the index order");
  if (!(m * inv).is_identity()) throw std::logic_error("invert_triangular: product is not the identity");
  return inv;
}

bool check_condition_W(const WeightVector& v, Element top) {
  if (v.at(top) != LaurentPoly(1)) return false;
  for (const auto& [id, p] : v.coeffs)
    if (id != top.id && !is_in_tZt(p)) return false;
  return true;
}

bool check_noncancel(const WeightVector& v, Element top) {
  if (v.at(top) != LaurentPoly(1)) return false;
  for (const auto& [id, p] : v.coeffs)
    if (id != top.id && !is_noncancelling(p)) return false;
  return true;
}

bool verify_selfdual(const HeckeContext& hecke, const WeightVector& v) { return hecke.dual_class(v) == v; }

WeightVector tilting_vector(const HeckeContext& hecke, Element alpha, const OrderIdeal& ideal) {
  const auto& sys = hecke.system();
  WeightVector v = hecke.selfdual_solve(alpha, ideal, SplitRule::NonCancel);
  for (const auto& [id, p] : v.coeffs) {
    if (!is_nonneg(p))
      throw SelfDualityError("tilting weight at " + sys.format(Element{id}) + " has a negative coefficient");
    if (id != alpha.id && !is_in_tZt(p))
      throw SelfDualityError("tilting weight at " + sys.format(Element{id}) + " below " +
                             sys.format(alpha) + " is not in tZ[t]: " + p.to_string());
  }
  if (!verify_selfdual(hecke, v))
    throw SelfDualityError("tilting vector of " + sys.format(alpha) + " is not self-dual");
  return v;
}

WeightMatrix tilting_matrix(const HeckeContext& hecke, const OrderIdeal& ideal) {
  WeightMatrix m(ideal);
  for (Element a : ideal) m.set_column(a, tilting_vector(hecke, a, ideal));
  return m;
}

WeightMatrix ic_matrix(const HeckeContext& hecke, const OrderIdeal& ideal) {
  WeightMatrix m(ideal);
  for (Element a : ideal) m.set_column(a, hecke.ic_weight_vector(a, ideal));
  return m;
}

WeightMatrix dual_ic_matrix(const HeckeContext& hecke, const OrderIdeal& ideal) {
  WeightMatrix m(ideal);
  for (Element a : ideal) m.set_column(a, hecke.dual_side_ic_row(a, ideal));
  return m;
}

WeightMatrix tilting_from_inversion(const HeckeContext& hecke, const OrderIdeal& ideal) {
  return invert_triangular(dual_ic_matrix(hecke, ideal).barred().transposed());
}

RingelReport ringel_verify(const HeckeContext& hecke, const OrderIdeal& ideal) {
  const auto& sys = hecke.system();
  RingelReport report;
  report.system = sys.descriptor().label;
  report.ideal_size = ideal.size();

  const WeightMatrix tilt = tilting_matrix(hecke, ideal);
  const WeightMatrix dual_bar_t = dual_ic_matrix(hecke, ideal).barred().transposed();

  report.inversion_ok = (tilt * dual_bar_t).is_identity();
  if (!report.inversion_ok) report.failures.push_back("tilting(t) x opposite IC(t^-1)^T is not the identity");

  if (sys.is_finite()) {
    const Element w0 = sys.longest_element();
    auto times_w0 = [&](Element x) {
      Element out = x;
      for (int i : sys.word(w0)) out = sys.multiply(out, i, Side::Right);
      return out;
    };
    bool ok = true;
    for (std::size_t a = 0; a < ideal.size() && ok; ++a)
      for (std::size_t g = 0; g < ideal.size(); ++g) {
        const Element alpha = ideal[a], gamma = ideal[g];
        LaurentPoly expected;
        if (sys.bruhat_leq(alpha, gamma)) {
          expected = hecke.kl_h(times_w0(gamma), times_w0(alpha));
          if ((sys.length(gamma) - sys.length(alpha)) % 2 == 1) expected = -expected;
        }
        if (dual_bar_t.at(a, g) != expected) {
          ok = false;
          report.failures.push_back("opposite IC entry (" + sys.format(alpha) + ", " +
                                    sys.format(gamma) + ") differs from the w0 formula");
          break;
        }
      }
    report.w0_formula_ok = ok;
  }

  report.same_side_product_identity = (tilt * ic_matrix(hecke, ideal).barred()).is_identity();

  const WeightMatrix inv = invert_triangular(tilt);
  bool signs = true;
  for (std::size_t r = 0; r < inv.size(); ++r)
    for (std::size_t c = 0; c < inv.size(); ++c) {
      if (r == c) continue;
      LaurentPoly p = inv.at(r, c);
      if ((sys.length(ideal[r]) + sys.length(ideal[c])) % 2 == 1) p = -p;
      if (!is_nonneg(p)) signs = false;
    }
  report.sign_pattern_ok = signs;
  return report;
}

WeightVector pushforward_vector(const CoxeterSystem& sys, const WeightVector& v, const ParabolicData& p) {
  WeightVector out;
  for (const auto& [id, w] : v.coeffs) {
    const Element gamma{id};
    const Element beta = p.representative(gamma);
    const int drop = static_cast<int>(sys.length(gamma) - sys.length(beta));
    LaurentPoly term = w.shifted(drop);
    if (drop % 2 == 1) term = -term;
    out.add(beta, term);
  }
  return out;
}

PushforwardResult pushforward_tilting(const HeckeContext& hecke, Element alpha,
                                      std::span<const int> subset, const OrderIdeal& ideal) {
  const auto& sys = hecke.system();
  const ParabolicData parabolic(sys, ideal, subset, Side::Left);
  const WeightVector pushed = pushforward_vector(sys, tilting_vector(hecke, alpha, ideal), parabolic);
  PushforwardResult result;
  result.image = parabolic.representative(alpha);
  if (!parabolic.is_minimal(alpha)) {
    if (!pushed.is_zero())
      throw SelfDualityError("push-forward of the tilting object at non-minimal " + sys.format(alpha) +
                             " does not vanish");
    return result;
  }
  if (!check_condition_W(pushed, alpha) || !check_noncancel(pushed, alpha))
    throw SelfDualityError("push-forward of the tilting object at " + sys.format(alpha) +
                           " violates condition (W)");
  for (const auto& [id, p] : pushed.coeffs)
    if (!is_nonneg(p))
      throw SelfDualityError("push-forward of the tilting object at " + sys.format(alpha) +
                             " has a negative coefficient");
  result.zero = false;
  result.vector = pushed;
  return result;
}

std::vector<std::vector<int>> all_parabolic_subsets(const CoxeterSystem& sys) {
  std::vector<std::vector<int>> out;
  const int r = sys.rank();
  const std::uint64_t count = 1ULL << r;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    if (!sys.is_finite() && mask == count - 1) continue;
    std::vector<int> s;
    for (int i = 0; i < r; ++i)
      if (mask & (1ULL << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::string subset_label(const CoxeterSystem& sys, const std::vector<int>& subset) {
  std::string out = "{";
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(sys.to_label(subset[k]));
  }
  return out + "}";
}

}  // namespace

CrossValidationReport cross_validate(const HeckeContext& hecke, const OrderIdeal& ideal,
                                     const std::vector<std::vector<int>>& subsets) {
  const auto& sys = hecke.system();
  CrossValidationReport report;
  report.system = sys.descriptor().label;
  report.ideal_size = ideal.size();
  report.subsets_checked = subsets.size();
  auto flag = [&](std::string check, Element a, std::string where, std::string detail) {
    report.discrepancies.push_back({std::move(check), sys.format(a), std::move(where), std::move(detail)});
  };

  const WeightMatrix inverted = tilting_from_inversion(hecke, ideal);
  for (Element alpha : ideal) {
    WeightVector noncancel;
    try {
      noncancel = tilting_vector(hecke, alpha, ideal);
    } catch (const SelfDualityError& e) {
      flag("method-I", alpha, "", e.what());
      continue;
    }
    const WeightVector positive = hecke.selfdual_solve(alpha, ideal, SplitRule::PositivePart);
    const WeightVector method3 = inverted.column(alpha);
    for (Element gamma : ideal) {
      const LaurentPoly& nc = noncancel.at(gamma);
      if (nc != positive.at(gamma))
        flag("noncancel-vs-positive", alpha, sys.format(gamma),
             nc.to_string() + " vs " + positive.at(gamma).to_string());
      if (nc != method3.at(gamma))
        flag("method-I-vs-inverse", alpha, sys.format(gamma),
             nc.to_string() + " vs " + method3.at(gamma).to_string());
      LaurentPoly kl_form;
      if (sys.bruhat_leq(gamma, alpha)) {
        const int d = static_cast<int>(sys.length(alpha) - sys.length(gamma));
        const LaurentPoly p = hecke.kl_P(gamma, alpha);
        for (const auto& [k, c] : p.terms()) kl_form.add_term(d - 2 * k, c);
      }
      if (nc != kl_form)
        flag("kl-form", alpha, sys.format(gamma), nc.to_string() + " vs " + kl_form.to_string());
    }
    for (const auto& subset : subsets) {
      try {
        pushforward_tilting(hecke, alpha, subset, ideal);
      } catch (const SelfDualityError& e) {
        flag("pushforward", alpha, subset_label(sys, subset), e.what());
      }
    }
  }
  report.ringel = ringel_verify(hecke, ideal);
  for (const auto& f : report.ringel.failures) report.discrepancies.push_back({"ringel", "", "", f});
  return report;
}

MutationReport mutation_test(const HeckeContext& hecke, Element top, const OrderIdeal& ideal) {
  const auto& sys = hecke.system();
  const WeightVector v = tilting_vector(hecke, top, ideal);
  const int reach = static_cast<int>(sys.length(top)) + 2;
  MutationReport report;
  for (Element beta : ideal) {
    if (beta == top) continue;
    const int parity = static_cast<int>(sys.length(top) + sys.length(beta)) % 2;
    for (int k = -reach; k <= reach; ++k) {
      if (((k % 2) + 2) % 2 != parity) continue;
      WeightVector mutant = v;
      mutant.add(beta, LaurentPoly::monomial(k));
      ++report.mutants;
      bool nonneg = std::all_of(mutant.coeffs.begin(), mutant.coeffs.end(),
                                [](const auto& kv) { return is_nonneg(kv.second); });
      if (nonneg && check_noncancel(mutant, top) && verify_selfdual(hecke, mutant)) ++report.survivors;
    }
  }
  return report;
}

}  // namespace mixtilt
