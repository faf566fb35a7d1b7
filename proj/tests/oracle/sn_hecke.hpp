#pragma once

// Stand-alone Hecke algebra of the symmetric group S_n, used only as a test
// oracle. Shares no code with the library: permutations in one-line
// notation, machine-integer Laurent polynomials in v, and the
// canonical basis found from bar-invariance in the standard basis
//   H_s^2 = 1 + (v^-1 - v) H_s,   bar(v) = v^-1,   bar(H_x) = H_{x^-1}^-1.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Poly = std::map<int, long long>;  // exponent of v -> coefficient
using Perm = std::vector<int>;          // one-line notation, values 0..n-1
using Elem = std::map<Perm, Poly>;      // sum c_x H_x

inline void add_into(Poly& a, const Poly& b, long long scale = 1, int shift = 0) {
  for (const auto& [e, c] : b) {
    auto& slot = a[e + shift];
    slot += scale * c;
    if (slot == 0) a.erase(e + shift);
  }
}

inline Poly mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto& slot = out[ea + eb];
      slot += ca * cb;
      if (slot == 0) out.erase(ea + eb);
    }
  return out;
}

inline Poly bar(const Poly& p) {
  Poly out;
  for (const auto& [e, c] : p) out[-e] = c;
  return out;
}

inline int inversions(const Perm& w) {
  int n = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++n;
  return n;
}

// s_i w: swap the values i and i+1 (0-based i).
inline Perm left_mul(int i, Perm w) {
  for (int& x : w) {
    if (x == i)
      x = i + 1;
    else if (x == i + 1)
      x = i;
  }
  return w;
}

inline Perm identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Product s_{w[0]} s_{w[1]} ... of 0-based generators.
inline Perm from_word(int n, const std::vector<int>& word) {
  Perm p = identity(n);
  for (auto it = word.rbegin(); it != word.rend(); ++it) p = left_mul(*it, p);
  return p;
}

inline void add_elem(Elem& a, const Perm& x, const Poly& c) {
  if (c.empty()) return;
  auto& slot = a[x];
  add_into(slot, c);
  if (slot.empty()) a.erase(x);
}

// H_s * X
inline Elem left_H(int s, const Elem& x) {
  Elem out;
  for (const auto& [w, c] : x) {
    Perm sw = left_mul(s, w);
    add_elem(out, sw, c);
    if (inversions(sw) < inversions(w)) add_elem(out, w, mul({{-1, 1}, {1, -1}}, c));
  }
  return out;
}

// H_s^{-1} * X, with H_s^{-1} = H_s + (v - v^-1).
inline Elem left_Hinv(int s, const Elem& x) {
  Elem out = left_H(s, x);
  for (const auto& [w, c] : x) add_elem(out, w, mul({{1, 1}, {-1, -1}}, c));
  return out;
}

// Some reduced word of w (0-based): repeatedly strip a left descent.
inline std::vector<int> reduced_word(Perm w) {
  std::vector<int> word;
  const int n = static_cast<int>(w.size());
  while (inversions(w) > 0) {
    for (int i = 0; i + 1 < n; ++i) {
      Perm sw = left_mul(i, w);
      if (inversions(sw) < inversions(w)) {
        word.push_back(i);
        w = sw;
        break;
      }
    }
  }
  return word;
}

inline Elem bar(const Elem& x) {
  Elem out;
  for (const auto& [w, c] : x) {
    const auto word = reduced_word(w);
    Elem term{{identity(static_cast<int>(w.size())), bar(c)}};
    for (auto it = word.rbegin(); it != word.rend(); ++it) term = left_Hinv(*it, term);
    for (const auto& [y, d] : term) add_elem(out, y, d);
  }
  return out;
}

inline std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/*
  Canonical basis element C_w = H_w + sum_{x<w} h_x H_x with h_x in vZ[v],
  bar(C_w) = C_w. Coefficients are fixed one length at a time, longest first:
  once everything longer than x is known, the H_x coefficient of
  bar(partial sum) minus bar(h_x) must equal h_x, so h_x is the
  positive-degree part of that coefficient.
*/
inline Elem canonical(const Perm& w) {
  const int n = static_cast<int>(w.size());
  std::vector<Perm> lower;
  for (const Perm& x : all_perms(n))
    if (inversions(x) < inversions(w)) lower.push_back(x);
  std::stable_sort(lower.begin(), lower.end(),
                   [](const Perm& a, const Perm& b) { return inversions(a) > inversions(b); });
  Elem c{{w, {{0, 1}}}};
  for (const Perm& x : lower) {
    const Elem b = bar(c);
    auto it = b.find(x);
    if (it == b.end()) continue;
    Poly h;
    for (const auto& [e, k] : it->second)
      if (e > 0) h[e] = k;
    if (!h.empty()) c[x] = h;
  }
  if (bar(c) != c) return {};  // not reachable when the algebra is right
  return c;
}

// P_{x,w}(q) as q-exponent -> coefficient, from h = v^{l(w)-l(x)} P(v^-2).
inline Poly kl_polynomial(const Elem& c_w, const Perm& x, const Perm& w) {
  Poly p;
  auto it = c_w.find(x);
  if (x == w) return {{0, 1}};
  if (it == c_w.end()) return p;
  const int d = inversions(w) - inversions(x);
  for (const auto& [e, k] : it->second) p[(d - e) / 2] = k;
  return p;
}

}  // namespace oracle
