#include "mixtilt/laurent.hpp"

#include <sstream>

namespace mixtilt {

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) terms_.emplace(0, Integer(c));
}

LaurentPoly::LaurentPoly(std::initializer_list<std::pair<const int, Integer>> terms) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

LaurentPoly LaurentPoly::monomial(int exponent, Integer coeff) {
  LaurentPoly p;
  p.add_term(exponent, coeff);
  return p;
}

LaurentPoly LaurentPoly::t_minus_tinv() { return LaurentPoly{{1, 1}, {-1, -1}}; }

Integer LaurentPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Integer(0) : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw std::logic_error("min_exponent of zero polynomial");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw std::logic_error("max_exponent of zero polynomial");
  return terms_.rbegin()->first;
}

void LaurentPoly::add_term(int exponent, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
  return out;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

namespace {

void append_term(std::ostringstream& os, bool first, const Integer& c, int e,
                 std::string_view var) {
  Integer mag = abs(c);
  if (first) {
    if (c < 0) os << '-';
  } else {
    os << (c < 0 ? " - " : " + ");
  }
  if (e == 0) {
    os << mag.get_str();
    return;
  }
  if (mag != 1) os << mag.get_str();
  os << var;
  if (e != 1) os << '^' << e;
}

}  // namespace

std::string LaurentPoly::to_string(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    append_term(os, first, it->second, it->first, var);
    first = false;
  }
  return os.str();
}

std::string LaurentPoly::to_string_ascending(std::string_view var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    append_term(os, first, c, e, var);
    first = false;
  }
  return os.str();
}

LaurentPoly bar(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(-e, c);
  return out;
}

LaurentPoly sign_twist(const LaurentPoly& p) {
  LaurentPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e, (e % 2 == 0) ? Integer(c) : Integer(-c));
  return out;
}

bool is_nonneg(const LaurentPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (c < 0) return false;
  return true;
}

bool is_noncancelling(const LaurentPoly& p) {
  for (const auto& [e, c] : p.terms()) {
    if (e == 0) return false;
    if (e > 0 && p.terms().count(-e)) return false;
  }
  return true;
}

bool is_in_tZt(const LaurentPoly& p) { return p.is_zero() || p.min_exponent() >= 1; }

bool is_antisymmetric(const LaurentPoly& p) { return (p + bar(p)).is_zero(); }

std::string_view to_string(SplitRule rule) {
  return rule == SplitRule::PositivePart ? "PositivePart" : "NonCancel";
}

LaurentPoly split(const LaurentPoly& g, SplitRule rule) {
  if (!is_antisymmetric(g))
    throw SelfDualityError("self-duality violated: " + g.to_string() + " is not antisymmetric");
  LaurentPoly w;
  for (const auto& [e, c] : g.terms()) {
    if (e <= 0) continue;
    switch (rule) {
      case SplitRule::PositivePart:
        w.add_term(e, c);
        break;
      case SplitRule::NonCancel:
        if (c > 0)
          w.add_term(e, c);
        else
          w.add_term(-e, -c);
        break;
    }
  }
  return w;
}

}  // namespace mixtilt
