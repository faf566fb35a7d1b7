#include "mixtilt/hecke.hpp"

#include <algorithm>
#include <mutex>

namespace mixtilt {

namespace {
const LaurentPoly kZero;
}

const LaurentPoly& WeightVector::at(Element e) const {
  auto it = coeffs.find(e.id);
  return it == coeffs.end() ? kZero : it->second;
}

void WeightVector::set(Element e, LaurentPoly p) {
  if (p.is_zero())
    coeffs.erase(e.id);
  else
    coeffs[e.id] = std::move(p);
}

void WeightVector::add(Element e, const LaurentPoly& p) {
  if (p.is_zero()) return;
  auto& slot = coeffs[e.id];
  slot += p;
  if (slot.is_zero()) coeffs.erase(e.id);
}

std::vector<Element> WeightVector::support() const {
  std::vector<Element> out;
  for (const auto& [id, p] : coeffs) out.push_back(Element{id});
  return out;
}

LaurentPoly HeckeContext::r_poly(Element x, Element y) const {
  if (x == y) return LaurentPoly(1);
  if (!sys_.bruhat_leq(x, y)) return {};
  {
    std::shared_lock lock(r_mutex_);
    auto it = r_cache_.find(key(x, y));
    if (it != r_cache_.end()) return it->second;
  }
  const int s = sys_.word(y).front();
  const Element sy = sys_.multiply(y, s, Side::Left);
  const Element sx = sys_.multiply(x, s, Side::Left);
  LaurentPoly r = r_poly(sx, sy);
  if (!sys_.is_descent(x, s, Side::Left)) r += LaurentPoly::t_minus_tinv() * r_poly(x, sy);
  std::unique_lock lock(r_mutex_);
  r_cache_.emplace(key(x, y), r);
  return r;
}

WeightVector HeckeContext::dual_class(const WeightVector& v) const {
  if (v.basis != Basis::Standard)
    throw std::invalid_argument("dual_class expects a vector in the standard basis");
  WeightVector out;
  for (const auto& [yid, c] : v.coeffs) {
    const Element y{yid};
    const LaurentPoly cbar = bar(c);
    for (Element x : sys_.enumerate_ideal(y)) out.add(x, cbar * r_poly(x, y));
  }
  return out;
}

WeightVector HeckeContext::selfdual_solve(Element top, const OrderIdeal& ideal, SplitRule rule) const {
  if (!ideal.contains(top)) throw CoxeterError("top element " + sys_.format(top) + " not in ideal");
  std::vector<Element> below;
  for (Element b : ideal)
    if (b != top && sys_.bruhat_leq(b, top)) below.push_back(b);
  // decreasing length; the ideal's ShortLex order breaks ties
  std::stable_sort(below.begin(), below.end(), [&](Element a, Element b) {
    return sys_.length(a) > sys_.length(b);
  });

  WeightVector v;
  v.set(top, LaurentPoly(1));
  std::vector<std::pair<Element, LaurentPoly>> solved{{top, LaurentPoly(1)}};
  for (Element beta : below) {
    LaurentPoly g;
    for (const auto& [gamma, value] : solved) {
      if (!sys_.bruhat_leq(beta, gamma)) continue;
      g += bar(value) * r_poly(beta, gamma);
    }
    if (!is_antisymmetric(g))
      throw SelfDualityError("self-duality violated at " + sys_.format(beta) + " below " +
                             sys_.format(top) + ": " + g.to_string());
    LaurentPoly w = split(g, rule);
    v.set(beta, w);
    if (!w.is_zero()) solved.emplace_back(beta, std::move(w));
  }
  return v;
}

void HeckeContext::ensure_column(Element y) const {
  {
    std::shared_lock lock(h_mutex_);
    if (h_columns_.count(y.id)) return;
  }
  WeightVector col = selfdual_solve(y, sys_.enumerate_ideal(y), SplitRule::PositivePart);
  std::unique_lock lock(h_mutex_);
  h_columns_.emplace(y.id, std::move(col));
}

LaurentPoly HeckeContext::kl_h(Element x, Element y) const {
  if (x == y) return LaurentPoly(1);
  if (!sys_.bruhat_leq(x, y)) return {};
  ensure_column(y);
  std::shared_lock lock(h_mutex_);
  return h_columns_.at(y.id).at(x);
}

LaurentPoly HeckeContext::kl_P(Element x, Element y) const {
  const LaurentPoly h = kl_h(x, y);
  const int d = static_cast<int>(sys_.length(y)) - static_cast<int>(sys_.length(x));
  LaurentPoly p;
  for (const auto& [e, c] : h.terms()) {
    if ((d - e) % 2 != 0)
      throw SelfDualityError("KL parity violated for (" + sys_.format(x) + ", " + sys_.format(y) +
                             "): exponent " + std::to_string(e));
    p.add_term((d - e) / 2, c);
  }
  return p;
}

Integer HeckeContext::mu(Element x, Element y) const { return kl_h(x, y).coeff(1); }

WeightVector HeckeContext::ic_weight_vector(Element w, const OrderIdeal& ideal) const {
  if (!ideal.contains(w)) throw CoxeterError("element " + sys_.format(w) + " not in ideal");
  WeightVector v;
  const std::size_t lw = sys_.length(w);
  for (Element x : ideal) {
    if (!sys_.bruhat_leq(x, w)) continue;
    LaurentPoly p = bar(kl_h(x, w));
    if ((lw - sys_.length(x)) % 2 == 1) p = -p;
    v.set(x, std::move(p));
  }
  return v;
}

WeightVector HeckeContext::dual_side_ic_row(Element alpha, const OrderIdeal& ideal) const {
  if (!ideal.contains(alpha)) throw CoxeterError("element " + sys_.format(alpha) + " not in ideal");
  WeightVector row;
  row.set(alpha, LaurentPoly(1));
  std::vector<std::pair<Element, LaurentPoly>> solved{{alpha, LaurentPoly(1)}};
  for (Element gamma : ideal) {  // ascending (length, ShortLex)
    if (gamma == alpha || !sys_.bruhat_leq(alpha, gamma)) continue;
    LaurentPoly g;
    for (const auto& [z, value] : solved)
      if (sys_.bruhat_leq(z, gamma)) g += bar(value) * r_poly(z, gamma);
    // D - bar(D) = g with D in negative degrees
    LaurentPoly d = -bar(split(g, SplitRule::PositivePart));
    row.set(gamma, d);
    if (!d.is_zero()) solved.emplace_back(gamma, std::move(d));
  }
  return row;
}

LaurentPoly duality_defect(const HeckeContext& hecke, const OrderIdeal& ideal, Element x, Element y) {
  LaurentPoly sum;
  const auto& sys = hecke.system();
  for (Element z : ideal) {
    if (!sys.bruhat_leq(x, z) || !sys.bruhat_leq(z, y)) continue;
    sum += hecke.r_poly(x, z) * bar(hecke.r_poly(z, y));
  }
  return sum;
}

}  // namespace mixtilt
