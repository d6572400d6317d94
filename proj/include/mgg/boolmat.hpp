#pragma once

// Boolean edge matrices and node vectors over an ordered node universe.
//
// Every "product" that appears in the rewriting formulas is the elementwise
// AND below; there is no row-by-column matrix product anywhere in the library.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "mgg/error.hpp"

namespace mgg {

/// Ordered list of distinct node labels. The order fixes matrix row/column
/// order and the bit order of the rational encoding.
class NodeUniverse {
 public:
  explicit NodeUniverse(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (!index_.emplace(labels_[i], i).second) {
        throw Error("duplicate node label '" + labels_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  bool contains(const std::string& label) const { return index_.count(label) != 0; }

  std::optional<std::size_t> find(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw LookupError("unknown node label '" + label + "'");
    return it->second;
  }

  friend bool operator==(const NodeUniverse& a, const NodeUniverse& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

using UniversePtr = std::shared_ptr<const NodeUniverse>;

inline UniversePtr make_universe(std::vector<std::string> labels) {
  return std::make_shared<const NodeUniverse>(std::move(labels));
}

/// Universe labelled "1".."n".
inline UniversePtr make_universe(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return make_universe(std::move(labels));
}

inline bool same_universe(const UniversePtr& a, const UniversePtr& b) {
  if (a == b) return true;
  if (!a || !b) return (!a || a->size() == 0) && (!b || b->size() == 0);
  return *a == *b;
}

enum class BoolOp { And, Or, Xor };

struct VectorShape {
  static constexpr std::size_t cells(std::size_t n) { return n; }
};
struct MatrixShape {
  static constexpr std::size_t cells(std::size_t n) { return n * n; }
};

/// Fixed-size Boolean array bound to a node universe. Matrices are stored
/// row-major (row = source node, column = target node).
template <class Shape>
class BoolArray {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  static constexpr bool is_matrix = std::is_same_v<Shape, MatrixShape>;

  BoolArray() = default;

  explicit BoolArray(UniversePtr universe)
      : universe_(std::move(universe)), bits_(Shape::cells(dim_of(universe_))) {}

  BoolArray(UniversePtr universe, Bits bits) : universe_(std::move(universe)), bits_(std::move(bits)) {
    if (bits_.size() != Shape::cells(dim_of(universe_))) {
      throw DimensionError("bit count does not match universe size");
    }
  }

  static BoolArray ones(UniversePtr universe) {
    BoolArray a(std::move(universe));
    a.bits_.set();
    return a;
  }

  /// Build a matrix from 0/1 rows (row-major).
  static BoolArray from_rows(UniversePtr universe, const std::vector<std::vector<int>>& rows)
    requires is_matrix
  {
    BoolArray a(std::move(universe));
    const std::size_t n = a.dim();
    if (rows.size() != n) throw DimensionError("row count does not match universe size");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw DimensionError("column count does not match universe size");
      for (std::size_t j = 0; j < n; ++j) a.set(i, j, rows[i][j] != 0);
    }
    return a;
  }

  static BoolArray from_values(UniversePtr universe, const std::vector<int>& values)
    requires(!is_matrix)
  {
    BoolArray a(std::move(universe));
    if (values.size() != a.dim()) throw DimensionError("vector length does not match universe size");
    for (std::size_t i = 0; i < values.size(); ++i) a.set(i, values[i] != 0);
    return a;
  }

  const UniversePtr& universe() const noexcept { return universe_; }
  std::size_t dim() const noexcept { return dim_of(universe_); }
  std::size_t cell_count() const noexcept { return bits_.size(); }
  const Bits& bits() const noexcept { return bits_; }

  bool test(std::size_t cell) const { return bits_.test(cell); }
  void set(std::size_t cell, bool value = true) { bits_.set(cell, value); }

  bool at(std::size_t i, std::size_t j) const
    requires is_matrix
  {
    return bits_.test(i * dim() + j);
  }
  void set(std::size_t i, std::size_t j, bool value)
    requires is_matrix
  {
    bits_.set(i * dim() + j, value);
  }
  bool at(std::size_t i) const
    requires(!is_matrix)
  {
    return bits_.test(i);
  }

  bool any() const { return bits_.any(); }
  bool none() const { return bits_.none(); }
  std::size_t count() const { return bits_.count(); }

  std::vector<std::vector<int>> rows() const
    requires is_matrix
  {
    const std::size_t n = dim();
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = at(i, j) ? 1 : 0;
    return out;
  }

  std::vector<int> values() const
    requires(!is_matrix)
  {
    std::vector<int> out(dim(), 0);
    for (std::size_t i = 0; i < dim(); ++i) out[i] = at(i) ? 1 : 0;
    return out;
  }

  friend BoolArray operator&(const BoolArray& a, const BoolArray& b) { return combine(a, b, BoolOp::And); }
  friend BoolArray operator|(const BoolArray& a, const BoolArray& b) { return combine(a, b, BoolOp::Or); }
  friend BoolArray operator^(const BoolArray& a, const BoolArray& b) { return combine(a, b, BoolOp::Xor); }

  friend bool operator==(const BoolArray& a, const BoolArray& b) {
    return same_universe(a.universe_, b.universe_) && a.bits_ == b.bits_;
  }

  static BoolArray combine(const BoolArray& a, const BoolArray& b, BoolOp op) {
    require_same_universe(a, b);
    BoolArray out(a.universe_, a.bits_);
    switch (op) {
      case BoolOp::And: out.bits_ &= b.bits_; break;
      case BoolOp::Or: out.bits_ |= b.bits_; break;
      case BoolOp::Xor: out.bits_ ^= b.bits_; break;
    }
    return out;
  }

  /// Bitwise negation over the whole universe. Prefer complement() with an
  /// explicit ambient; this is the special case ambient = all ones.
  BoolArray flipped() const {
    BoolArray out(universe_, bits_);
    out.bits_.flip();
    return out;
  }

  static void require_same_universe(const BoolArray& a, const BoolArray& b) {
    if (!same_universe(a.universe_, b.universe_)) {
      throw DimensionError("operands belong to different node universes");
    }
  }

 private:
  static std::size_t dim_of(const UniversePtr& u) { return u ? u->size() : 0; }

  UniversePtr universe_;
  Bits bits_;
};

using BoolVector = BoolArray<VectorShape>;
using BoolMatrix = BoolArray<MatrixShape>;

template <class Shape>
BoolArray<Shape> elementwise(BoolOp op, const BoolArray<Shape>& a, const BoolArray<Shape>& b) {
  return BoolArray<Shape>::combine(a, b, op);
}

/// ambient ∧ ¬a. Complements are always bounded by an explicit ambient.
template <class Shape>
BoolArray<Shape> complement(const BoolArray<Shape>& a, const BoolArray<Shape>& ambient) {
  BoolArray<Shape>::require_same_universe(a, ambient);
  return ambient & a.flipped();
}

/// a ≺ b: every 1 of a is a 1 of b.
template <class Shape>
bool contains(const BoolArray<Shape>& a, const BoolArray<Shape>& b) {
  BoolArray<Shape>::require_same_universe(a, b);
  return a.bits().is_subset_of(b.bits());
}

/// result[i][j] = u[i] ∧ v[j]
inline BoolMatrix tensor(const BoolVector& u, const BoolVector& v) {
  BoolVector::require_same_universe(u, v);
  BoolMatrix out(u.universe());
  const std::size_t n = u.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (!u.at(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v.at(j)) out.set(i, j, true);
    }
  }
  return out;
}

/// 1_A: every edge between nodes present in v.
inline BoolMatrix bounded_one(const BoolVector& v) { return tensor(v, v); }

/// Simple digraph: edge matrix plus node indicator.
struct Digraph {
  BoolMatrix edges;
  BoolVector nodes;

  Digraph() = default;
  explicit Digraph(const UniversePtr& u) : edges(u), nodes(u) {}
  Digraph(BoolMatrix e, BoolVector v) : edges(std::move(e)), nodes(std::move(v)) {
    if (!same_universe(edges.universe(), nodes.universe())) {
      throw DimensionError("digraph edges and nodes belong to different universes");
    }
  }

  const UniversePtr& universe() const noexcept { return edges.universe(); }

  friend bool operator==(const Digraph&, const Digraph&) = default;
};

/// No dangling edges: every edge has both endpoints present.
inline bool is_compatible(const Digraph& g) {
  return contains(g.edges, bounded_one(g.nodes));
}

using LabelMap = std::map<std::string, std::string>;

namespace detail {

// Source index -> target index, validated. Unmapped sources yield nullopt.
inline std::vector<std::optional<std::size_t>> resolve_mapping(const NodeUniverse& from, const NodeUniverse& to,
                                                               const LabelMap& mapping) {
  std::vector<std::optional<std::size_t>> out(from.size());
  std::vector<bool> used(to.size(), false);
  for (const auto& [src, dst] : mapping) {
    const std::size_t i = from.index(src);
    const std::size_t j = to.index(dst);
    if (used[j]) throw Error("completion mapping is not injective (target '" + dst + "')");
    used[j] = true;
    out[i] = j;
  }
  return out;
}

}  // namespace detail

/// Identity mapping on the labels the two universes share.
inline LabelMap shared_label_mapping(const NodeUniverse& from, const NodeUniverse& to) {
  LabelMap m;
  for (const auto& l : from.labels())
    if (to.contains(l)) m.emplace(l, l);
  return m;
}

/// Re-express x over `target`: cells are moved along `mapping`, unmapped
/// target positions are zero. A source position left unmapped must be empty.
inline BoolMatrix complete_to(const BoolMatrix& x, const UniversePtr& target, const LabelMap& mapping) {
  const auto map = detail::resolve_mapping(*x.universe(), *target, mapping);
  BoolMatrix out(target);
  const std::size_t n = x.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!x.at(i, j)) continue;
      if (!map[i] || !map[j]) {
        throw Error("completion drops edge (" + x.universe()->label(i) + "," + x.universe()->label(j) + ")");
      }
      out.set(*map[i], *map[j], true);
    }
  }
  return out;
}

inline BoolVector complete_to(const BoolVector& x, const UniversePtr& target, const LabelMap& mapping) {
  const auto map = detail::resolve_mapping(*x.universe(), *target, mapping);
  BoolVector out(target);
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (!x.at(i)) continue;
    if (!map[i]) throw Error("completion drops node '" + x.universe()->label(i) + "'");
    out.set(*map[i], true);
  }
  return out;
}

inline Digraph complete_to(const Digraph& g, const UniversePtr& target, const LabelMap& mapping) {
  return Digraph(complete_to(g.edges, target, mapping), complete_to(g.nodes, target, mapping));
}

}  // namespace mgg
