#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <string>

#include "mixtilt/coxeter.hpp"

namespace mixtilt {

void validate_cartan(const CartanMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) throw CoxeterError("invalid Cartan matrix: empty");
  if (n > 64) throw CoxeterError("invalid Cartan matrix: rank above 64 is not supported");
  for (const auto& row : m)
    if (row.size() != n) throw CoxeterError("invalid Cartan matrix: not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 2)
      throw CoxeterError("invalid Cartan matrix: diagonal entry " + std::to_string(i) + " is not 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (m[i][j] > 0)
        throw CoxeterError("invalid Cartan matrix: positive off-diagonal entry (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
      if ((m[i][j] == 0) != (m[j][i] == 0))
        throw CoxeterError("invalid Cartan matrix: asymmetric zero pattern at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
}

namespace {

CartanMatrix chain(int n) {
  CartanMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    m[i][i] = 2;
    if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = -1;
  }
  return m;
}

void link(CartanMatrix& m, int i, int j) { m[i][j] = m[j][i] = -1; }

}  // namespace

CartanMatrix finite_cartan(char family, int n) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  auto bad = [&] {
    return CoxeterError(std::string("unknown type label: ") + family + std::to_string(n));
  };
  if (n < 1) throw bad();
  switch (family) {
    case 'A':
      return chain(n);
    case 'B': {
      if (n < 2) throw bad();
      auto m = chain(n);
      m[n - 1][n - 2] = -2;  // alpha_n short
      return m;
    }
    case 'C': {
      if (n < 2) throw bad();
      auto m = chain(n);
      m[n - 2][n - 1] = -2;  // alpha_n long
      return m;
    }
    case 'D': {
      if (n < 3) throw bad();
      CartanMatrix m(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) m[i][i] = 2;
      for (int i = 0; i + 2 < n; ++i) link(m, i, i + 1);
      link(m, n - 3, n - 1);
      return m;
    }
    case 'E': {
      if (n < 6 || n > 8) throw bad();
      CartanMatrix m(n, std::vector<int>(n, 0));
      for (int i = 0; i < n; ++i) m[i][i] = 2;
      // Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4.
      link(m, 0, 2);
      link(m, 1, 3);
      for (int i = 2; i + 1 < n; ++i) link(m, i, i + 1);
      return m;
    }
    case 'F': {
      if (n != 4) throw bad();
      auto m = chain(4);
      m[2][1] = -2;
      return m;
    }
    case 'G': {
      if (n != 2) throw bad();
      return {{2, -3}, {-1, 2}};
    }
    default:
      throw bad();
  }
}

CartanMatrix affine_cartan(const CartanMatrix& fin) {
  validate_cartan(fin);
  const int n = static_cast<int>(fin.size());
  using Vec = std::vector<long long>;
  auto unit = [n](int i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
  };
  // Positive roots together with their coroots, by closing the simple
  // roots under simple reflections.
  std::vector<std::pair<Vec, Vec>> roots;
  std::set<Vec> seen;
  for (int i = 0; i < n; ++i) {
    roots.emplace_back(unit(i), unit(i));
    seen.insert(unit(i));
  }
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (roots.size() > 10000) throw CoxeterError("affine extension requires a finite root system");
    for (int j = 0; j < n; ++j) {
      auto [root, coroot] = roots[k];
      long long pair_root = 0, pair_coroot = 0;
      for (int l = 0; l < n; ++l) {
        pair_root += root[l] * fin[j][l];
        pair_coroot += coroot[l] * fin[l][j];
      }
      root[j] -= pair_root;
      coroot[j] -= pair_coroot;
      bool positive = std::all_of(root.begin(), root.end(), [](long long c) { return c >= 0; });
      if (positive && seen.insert(root).second) roots.emplace_back(root, coroot);
    }
  }
  auto height = [](const Vec& v) { return std::accumulate(v.begin(), v.end(), 0LL); };
  const auto& [theta, theta_vee] = *std::max_element(
      roots.begin(), roots.end(),
      [&](const auto& a, const auto& b) { return height(a.first) < height(b.first); });

  CartanMatrix m(n + 1, std::vector<int>(n + 1, 0));
  m[0][0] = 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i + 1][j + 1] = fin[i][j];
  for (int j = 0; j < n; ++j) {
    long long a0j = 0, aj0 = 0;
    for (int l = 0; l < n; ++l) {
      a0j -= theta_vee[l] * fin[l][j];
      aj0 -= theta[l] * fin[j][l];
    }
    m[0][j + 1] = static_cast<int>(a0j);
    m[j + 1][0] = static_cast<int>(aj0);
  }
  validate_cartan(m);
  return m;
}

CoxeterDescriptor CoxeterDescriptor::standard(char family, int rank, bool affine) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  CoxeterDescriptor d;
  auto fin = finite_cartan(family, rank);
  d.label = std::string(affine ? "~" : "") + family + std::to_string(rank);
  d.affine = affine;
  d.cartan = affine ? affine_cartan(fin) : fin;
  d.label_offset = affine ? 0 : 1;
  return d;
}

CoxeterDescriptor CoxeterDescriptor::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  bool affine = false;
  for (std::string_view prefix : {"affine-", "affine_", "affine", "~"}) {
    if (lower.starts_with(prefix)) {
      affine = true;
      s = s.substr(prefix.size());
      break;
    }
  }
  if (!s.empty() && s.back() == '~') {
    affine = true;
    s.pop_back();
  }
  if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])) ||
      !std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw CoxeterError("unknown type label: " + std::string(text));
  return standard(s[0], std::stoi(s.substr(1)), affine);
}

CoxeterDescriptor CoxeterDescriptor::from_cartan(CartanMatrix cartan) {
  validate_cartan(cartan);
  CoxeterDescriptor d;
  d.label = "cartan";
  d.cartan = std::move(cartan);
  d.affine = false;
  d.label_offset = 0;
  return d;
}

}  // namespace mixtilt
