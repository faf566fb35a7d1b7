#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace mixtilt {

/// Bad descriptor, out-of-range generator, malformed word, or a request
/// that only makes sense for finite groups.
class CoxeterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using CartanMatrix = std::vector<std::vector<int>>;

/*
  A Coxeter group given by a (generalized) Cartan matrix.

  Internal generator indices are dense, 0..rank-1. The wire labels used in
  words ("1,2,1") are internal index + label_offset: finite-type labels
  number their nodes 1..n (offset 1), affine labels put the affine node at
  0 and keep the finite nodes at 1..n (offset 0). Explicit matrices use
  offset 0.
*/
struct CoxeterDescriptor {
  std::string label;  // "A2", "~A2", or "cartan"
  CartanMatrix cartan;
  bool affine = false;
  int label_offset = 0;

  /// family in {A,B,C,D,E,F,G}
  static CoxeterDescriptor standard(char family, int rank, bool affine);
  /// Accepts "A2", "~A2", "affine A2", "affine-A2", "A2~".
  static CoxeterDescriptor parse(std::string_view text);
  static CoxeterDescriptor from_cartan(CartanMatrix cartan);
};

/// Throws CoxeterError unless diag = 2, off-diagonal <= 0, and the zero
/// pattern is symmetric.
void validate_cartan(const CartanMatrix& m);

/// Cartan matrix of a finite root system in the convention
/// s_i(alpha_j) = alpha_j - c_ij alpha_i (c_ij = <alpha_i^vee, alpha_j>).
CartanMatrix finite_cartan(char family, int rank);
/// Untwisted affine extension; the new node is index 0.
CartanMatrix affine_cartan(const CartanMatrix& finite);

struct Element {
  std::uint32_t id = 0;
  friend auto operator<=>(Element, Element) = default;
};

enum class Side { Left, Right };

class CoxeterSystem;

/// A finite, downward-closed set of elements kept in (length, ShortLex)
/// order.
class OrderIdeal {
 public:
  OrderIdeal() = default;
  OrderIdeal(const CoxeterSystem& sys, std::vector<Element> elements);

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(Element e) const { return index_.count(e.id) != 0; }
  /// Position in the sorted order; throws if absent.
  std::size_t index_of(Element e) const;
  Element operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool is_downward_closed(const CoxeterSystem& sys) const;

 private:
  std::vector<Element> elements_;
  std::unordered_map<std::uint32_t, std::size_t> index_;
};

/*
  Coxeter system realized in the reflection representation on the span of
  the simple roots: s_i(alpha_j) = alpha_j - c_ij alpha_i.

  Elements are interned by their representation matrix, so equality is id
  comparison. Each element caches its ShortLex-minimal reduced word, its
  length and both descent sets. The registry grows on demand; all query
  methods are const and safe to call concurrently (insertions are
  serialized internally).
*/
class CoxeterSystem {
 public:
  explicit CoxeterSystem(CoxeterDescriptor descriptor);
  CoxeterSystem(const CoxeterSystem&) = delete;
  CoxeterSystem& operator=(const CoxeterSystem&) = delete;

  const CoxeterDescriptor& descriptor() const { return desc_; }
  const CartanMatrix& cartan() const { return desc_.cartan; }
  int rank() const { return rank_; }
  bool is_finite() const { return finite_; }
  std::size_t registered() const;

  Element identity() const { return Element{0}; }
  Element generator(int i) const;
  Element multiply(Element w, int i, Side side) const;
  /// Product of generators along an arbitrary (not necessarily reduced) word
  /// of internal indices.
  Element from_word(std::span<const int> word) const;
  Element inverse(Element w) const;

  std::size_t length(Element w) const;
  /// ShortLex-minimal reduced word, internal indices.
  const std::vector<int>& word(Element w) const;
  std::uint64_t descent_mask(Element w, Side side) const;
  std::vector<int> descents(Element w, Side side) const;
  bool is_descent(Element w, int i, Side side) const;
  /// Coordinates of w(alpha_j) in the simple-root basis.
  std::vector<long long> root_image(Element w, int j) const;

  bool bruhat_leq(Element x, Element y) const;
  /// Length first, then lexicographic on the canonical word.
  bool shortlex_less(Element a, Element b) const;

  /// All elements of length <= max_length; nullopt means the whole group
  /// (finite systems only).
  OrderIdeal enumerate_ball(std::optional<std::size_t> max_length) const;
  OrderIdeal enumerate_ideal(Element top) const;
  Element longest_element() const;

  /// "e" or comma-separated wire labels.
  std::string format(Element w) const;
  /// Inverse of format; non-reduced words are normalized, unknown labels
  /// rejected.
  Element parse(std::string_view text) const;
  int to_internal(int label) const;
  int to_label(int internal) const { return internal + desc_.label_offset; }

 private:
  struct Node {
    std::vector<long long> matrix;   // row-major rank x rank; column j = w(alpha_j)
    std::vector<long long> inverse;  // matrix of w^{-1}
    std::vector<int> word;
    std::uint64_t left_mask = 0;
    std::uint64_t right_mask = 0;
    std::vector<std::int64_t> products;  // [side*rank + i] -> id or -1
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<long long>& v) const;
  };

  const Node& node(Element w) const;
  Element intern(std::vector<long long> matrix, std::vector<long long> inverse) const;
  void check_generator(int i) const;
  void right_apply(std::vector<long long>& m, int i) const;  // m <- m * S_i
  void left_apply(std::vector<long long>& m, int i) const;   // m <- S_i * m
  bool column_negative(const std::vector<long long>& m, int j) const;

  CoxeterDescriptor desc_;
  int rank_;
  bool finite_;

  mutable std::shared_mutex mutex_;
  mutable std::deque<Node> nodes_;
  mutable std::unordered_map<std::vector<long long>, std::uint32_t, KeyHash> index_;

  mutable std::shared_mutex bruhat_mutex_;
  mutable std::unordered_map<std::uint64_t, bool> bruhat_memo_;

  mutable std::optional<Element> longest_;
};

/// Bitmask of generator indices, bit i for internal generator i.
std::uint64_t generator_mask(std::span<const int> generators);

/*
  Coset decomposition of an ideal with respect to the standard parabolic
  subgroup W_J. For Side::Left the cosets are w W_J; for Side::Right they
  are W_J w. Cosets are labeled by their minimal-length representative.
*/
class ParabolicData {
 public:
  ParabolicData(const CoxeterSystem& sys, const OrderIdeal& ideal,
                std::span<const int> subset, Side side);

  std::uint64_t subset_mask() const { return mask_; }
  std::vector<int> subset() const;
  Side side() const { return side_; }
  /// Minimal representatives present in the ideal, in (length, ShortLex) order.
  const std::vector<Element>& representatives() const { return reps_; }
  Element representative(Element w) const;
  bool is_minimal(Element w) const { return representative(w) == w; }
  /// Elements of the ideal lying in the coset labeled by rep.
  const std::vector<Element>& fiber(Element rep) const;

 private:
  std::uint64_t mask_;
  Side side_;
  std::unordered_map<std::uint32_t, Element> rep_of_;
  std::unordered_map<std::uint32_t, std::vector<Element>> fibers_;
  std::vector<Element> reps_;
};

ParabolicData coset_partition(const CoxeterSystem& sys, const OrderIdeal& ideal,
                              std::span<const int> subset, Side side = Side::Left);

}  // namespace mixtilt

template <>
struct std::hash<mixtilt::Element> {
  std::size_t operator()(mixtilt::Element e) const noexcept { return e.id; }
};
