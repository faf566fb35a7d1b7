#include "mixtilt/coxeter.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <numbers>
#include <set>

namespace mixtilt {

namespace {

// Coxeter exponent m_ij from the Cartan product c_ij * c_ji; 0 means infinity.
int coxeter_order(int product) {
  switch (product) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return 0;
  }
}

// Finite iff the Tits form B_ij = -cos(pi / m_ij) is positive definite.
bool tits_form_positive_definite(const CartanMatrix& c) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        b[i][j] = 1.0;
        continue;
      }
      int m = coxeter_order(c[i][j] * c[j][i]);
      if (m == 0) return false;
      b[i][j] = -std::cos(std::numbers::pi / m);
    }
  // Cholesky
  for (std::size_t k = 0; k < n; ++k) {
    double pivot = b[k][k];
    if (pivot <= 1e-9) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = b[i][k] / pivot;
      for (std::size_t j = k; j < n; ++j) b[i][j] -= f * b[k][j];
    }
  }
  return true;
}

}  // namespace

std::size_t CoxeterSystem::KeyHash::operator()(const std::vector<long long>& v) const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (long long x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

CoxeterSystem::CoxeterSystem(CoxeterDescriptor descriptor) : desc_(std::move(descriptor)) {
  validate_cartan(desc_.cartan);
  rank_ = static_cast<int>(desc_.cartan.size());
  finite_ = !desc_.affine && tits_form_positive_definite(desc_.cartan);

  std::vector<long long> id(rank_ * rank_, 0);
  for (int i = 0; i < rank_; ++i) id[i * rank_ + i] = 1;
  Node e;
  e.matrix = id;
  e.inverse = id;
  e.products.assign(2 * rank_, -1);
  nodes_.push_back(std::move(e));
  index_.emplace(id, 0);
}

std::size_t CoxeterSystem::registered() const {
  std::shared_lock lock(mutex_);
  return nodes_.size();
}

const CoxeterSystem::Node& CoxeterSystem::node(Element w) const {
  std::shared_lock lock(mutex_);
  if (w.id >= nodes_.size()) throw CoxeterError("unknown element id " + std::to_string(w.id));
  return nodes_[w.id];  // deque references stay valid across insertion
}

void CoxeterSystem::check_generator(int i) const {
  if (i < 0 || i >= rank_)
    throw CoxeterError("generator index " + std::to_string(i) + " out of range for rank " +
                       std::to_string(rank_));
}

void CoxeterSystem::right_apply(std::vector<long long>& m, int i) const {
  // column j <- column j - c_ij * column i
  for (int j = 0; j < rank_; ++j) {
    long long c = desc_.cartan[i][j];
    if (j == i || c == 0) continue;
    for (int r = 0; r < rank_; ++r) m[r * rank_ + j] -= c * m[r * rank_ + i];
  }
  for (int r = 0; r < rank_; ++r) m[r * rank_ + i] = -m[r * rank_ + i];
}

void CoxeterSystem::left_apply(std::vector<long long>& m, int i) const {
  // row i <- row i - sum_k c_ik row k   (row i of S_i is e_i - c_i.)
  std::vector<long long> row(rank_, 0);
  for (int k = 0; k < rank_; ++k) {
    long long c = desc_.cartan[i][k];
    if (c == 0) continue;
    for (int col = 0; col < rank_; ++col) row[col] += c * m[k * rank_ + col];
  }
  for (int col = 0; col < rank_; ++col) m[i * rank_ + col] -= row[col];
}

bool CoxeterSystem::column_negative(const std::vector<long long>& m, int j) const {
  for (int r = 0; r < rank_; ++r)
    if (m[r * rank_ + j] < 0) return true;
  return false;
}

Element CoxeterSystem::intern(std::vector<long long> matrix, std::vector<long long> inverse) const {
  {
    std::shared_lock lock(mutex_);
    auto it = index_.find(matrix);
    if (it != index_.end()) return Element{it->second};
  }
  Node n;
  n.products.assign(2 * rank_, -1);
  for (int i = 0; i < rank_; ++i) {
    if (column_negative(matrix, i)) n.right_mask |= (1ULL << i);
    if (column_negative(inverse, i)) n.left_mask |= (1ULL << i);
  }
  // ShortLex-minimal reduced word: peel off the least left descent.
  std::vector<long long> m = matrix, minv = inverse;
  for (;;) {
    int first = -1;
    for (int i = 0; i < rank_ && first < 0; ++i)
      if (column_negative(minv, i)) first = i;
    if (first < 0) break;
    n.word.push_back(first);
    left_apply(m, first);
    right_apply(minv, first);
  }
  n.matrix = std::move(matrix);
  n.inverse = std::move(inverse);

  std::unique_lock lock(mutex_);
  auto it = index_.find(n.matrix);
  if (it != index_.end()) return Element{it->second};
  auto id = static_cast<std::uint32_t>(nodes_.size());
  index_.emplace(n.matrix, id);
  nodes_.push_back(std::move(n));
  return Element{id};
}

Element CoxeterSystem::multiply(Element w, int i, Side side) const {
  check_generator(i);
  const Node& n = node(w);
  const std::size_t slot = (side == Side::Left ? 0 : rank_) + i;
  {
    std::shared_lock lock(mutex_);
    if (n.products[slot] >= 0) return Element{static_cast<std::uint32_t>(n.products[slot])};
  }
  std::vector<long long> m = n.matrix, minv = n.inverse;
  if (side == Side::Right) {
    right_apply(m, i);
    left_apply(minv, i);
  } else {
    left_apply(m, i);
    right_apply(minv, i);
  }
  Element v = intern(std::move(m), std::move(minv));
  std::unique_lock lock(mutex_);
  nodes_[w.id].products[slot] = v.id;
  nodes_[v.id].products[slot] = w.id;
  return v;
}

Element CoxeterSystem::generator(int i) const { return multiply(identity(), i, Side::Right); }

Element CoxeterSystem::from_word(std::span<const int> word) const {
  Element w = identity();
  for (int i : word) w = multiply(w, i, Side::Right);
  return w;
}

Element CoxeterSystem::inverse(Element w) const {
  const auto& wd = node(w).word;
  std::vector<int> rev(wd.rbegin(), wd.rend());
  return from_word(rev);
}

std::size_t CoxeterSystem::length(Element w) const { return node(w).word.size(); }

const std::vector<int>& CoxeterSystem::word(Element w) const { return node(w).word; }

std::uint64_t CoxeterSystem::descent_mask(Element w, Side side) const {
  const Node& n = node(w);
  return side == Side::Left ? n.left_mask : n.right_mask;
}

std::vector<int> CoxeterSystem::descents(Element w, Side side) const {
  std::vector<int> out;
  auto mask = descent_mask(w, side);
  for (int i = 0; i < rank_; ++i)
    if (mask & (1ULL << i)) out.push_back(i);
  return out;
}

bool CoxeterSystem::is_descent(Element w, int i, Side side) const {
  check_generator(i);
  return (descent_mask(w, side) >> i) & 1ULL;
}

std::vector<long long> CoxeterSystem::root_image(Element w, int j) const {
  check_generator(j);
  const Node& n = node(w);
  std::vector<long long> out(rank_);
  for (int r = 0; r < rank_; ++r) out[r] = n.matrix[r * rank_ + j];
  return out;
}

bool CoxeterSystem::bruhat_leq(Element x, Element y) const {
  if (x == identity()) return true;
  const std::size_t lx = length(x), ly = length(y);
  if (lx > ly) return false;
  if (lx == ly) return x == y;
  const std::uint64_t key = (static_cast<std::uint64_t>(x.id) << 32) | y.id;
  {
    std::shared_lock lock(bruhat_mutex_);
    auto it = bruhat_memo_.find(key);
    if (it != bruhat_memo_.end()) return it->second;
  }
  const int s = word(y).front();  // least left descent of y
  const Element sy = multiply(y, s, Side::Left);
  const bool result = is_descent(x, s, Side::Left)
                          ? bruhat_leq(multiply(x, s, Side::Left), sy)
                          : bruhat_leq(x, sy);
  std::unique_lock lock(bruhat_mutex_);
  bruhat_memo_.emplace(key, result);
  return result;
}

bool CoxeterSystem::shortlex_less(Element a, Element b) const {
  const auto& wa = word(a);
  const auto& wb = word(b);
  if (wa.size() != wb.size()) return wa.size() < wb.size();
  return wa < wb;
}

OrderIdeal CoxeterSystem::enumerate_ball(std::optional<std::size_t> max_length) const {
  if (!max_length && !finite_)
    throw CoxeterError("cannot enumerate the whole of an infinite Coxeter group; give a finite length");
  std::vector<Element> all{identity()};
  std::vector<Element> layer{identity()};
  for (std::size_t len = 0; !layer.empty() && (!max_length || len < *max_length); ++len) {
    std::set<std::uint32_t> next_ids;
    for (Element w : layer)
      for (int i = 0; i < rank_; ++i)
        if (!is_descent(w, i, Side::Right)) next_ids.insert(multiply(w, i, Side::Right).id);
    layer.clear();
    for (auto id : next_ids) layer.push_back(Element{id});
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return OrderIdeal(*this, std::move(all));
}

OrderIdeal CoxeterSystem::enumerate_ideal(Element top) const {
  std::vector<Element> all{identity()};
  std::vector<Element> layer{identity()};
  const std::size_t top_len = length(top);
  for (std::size_t len = 0; len < top_len; ++len) {
    std::set<std::uint32_t> next_ids;
    for (Element w : layer)
      for (int i = 0; i < rank_; ++i) {
        if (is_descent(w, i, Side::Right)) continue;
        Element v = multiply(w, i, Side::Right);
        if (bruhat_leq(v, top)) next_ids.insert(v.id);
      }
    layer.clear();
    for (auto id : next_ids) layer.push_back(Element{id});
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return OrderIdeal(*this, std::move(all));
}

Element CoxeterSystem::longest_element() const {
  if (!finite_) throw CoxeterError("no longest element: Coxeter group is infinite");
  {
    std::shared_lock lock(mutex_);
    if (longest_) return *longest_;
  }
  // Climb by ascents until none remain.
  Element w = identity();
  const std::uint64_t full = rank_ == 64 ? ~0ULL : ((1ULL << rank_) - 1);
  while (descent_mask(w, Side::Right) != full) {
    for (int i = 0; i < rank_; ++i)
      if (!is_descent(w, i, Side::Right)) {
        w = multiply(w, i, Side::Right);
        break;
      }
  }
  std::unique_lock lock(mutex_);
  longest_ = w;
  return w;
}

std::string CoxeterSystem::format(Element w) const {
  const auto& wd = word(w);
  if (wd.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < wd.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(to_label(wd[k]));
  }
  return out;
}

int CoxeterSystem::to_internal(int label) const {
  int i = label - desc_.label_offset;
  if (i < 0 || i >= rank_)
    throw CoxeterError("unknown generator label " + std::to_string(label) + " (valid: " +
                       std::to_string(desc_.label_offset) + ".." +
                       std::to_string(desc_.label_offset + rank_ - 1) + ")");
  return i;
}

Element CoxeterSystem::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty() || text == "e") return identity();
  std::vector<int> word;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto tok = trim(text.substr(0, comma));
    int label = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), label);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
      throw CoxeterError("malformed word '" + std::string(text) + "'");
    word.push_back(to_internal(label));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return from_word(word);
}

OrderIdeal::OrderIdeal(const CoxeterSystem& sys, std::vector<Element> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(),
            [&](Element a, Element b) { return sys.shortlex_less(a, b); });
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].id, i);
}

std::size_t OrderIdeal::index_of(Element e) const {
  auto it = index_.find(e.id);
  if (it == index_.end()) throw CoxeterError("element not in ideal");
  return it->second;
}

bool OrderIdeal::is_downward_closed(const CoxeterSystem& sys) const {
  for (Element y : elements_)
    for (Element x : sys.enumerate_ideal(y))
      if (!contains(x)) return false;
  return true;
}

std::uint64_t generator_mask(std::span<const int> generators) {
  std::uint64_t mask = 0;
  for (int i : generators) {
    if (i < 0 || i >= 64) throw CoxeterError("generator index out of range");
    mask |= 1ULL << i;
  }
  return mask;
}

ParabolicData::ParabolicData(const CoxeterSystem& sys, const OrderIdeal& ideal,
                             std::span<const int> subset, Side side)
    : side_(side) {
  for (int i : subset)
    if (i < 0 || i >= sys.rank())
      throw CoxeterError("parabolic generator index " + std::to_string(i) + " out of range");
  mask_ = generator_mask(subset);
  for (Element w : ideal) {
    Element rep = w;
    for (;;) {
      std::uint64_t hit = sys.descent_mask(rep, side == Side::Left ? Side::Right : Side::Left) & mask_;
      if (!hit) break;
      int i = __builtin_ctzll(hit);
      rep = sys.multiply(rep, i, side == Side::Left ? Side::Right : Side::Left);
    }
    rep_of_.emplace(w.id, rep);
    auto& fib = fibers_[rep.id];
    if (fib.empty()) reps_.push_back(rep);
    fib.push_back(w);
  }
  std::sort(reps_.begin(), reps_.end(),
            [&](Element a, Element b) { return sys.shortlex_less(a, b); });
}

std::vector<int> ParabolicData::subset() const {
  std::vector<int> out;
  for (int i = 0; i < 64; ++i)
    if (mask_ & (1ULL << i)) out.push_back(i);
  return out;
}

Element ParabolicData::representative(Element w) const {
  auto it = rep_of_.find(w.id);
  if (it == rep_of_.end()) throw CoxeterError("element outside the partitioned ideal");
  return it->second;
}

const std::vector<Element>& ParabolicData::fiber(Element rep) const {
  static const std::vector<Element> empty;
  auto it = fibers_.find(rep.id);
  return it == fibers_.end() ? empty : it->second;
}

ParabolicData coset_partition(const CoxeterSystem& sys, const OrderIdeal& ideal,
                              std::span<const int> subset, Side side) {
  return ParabolicData(sys, ideal, subset, side);
}

}  // namespace mixtilt
