#pragma once

// Shared test data and independent cell-by-cell oracles. Nothing here calls
// the formula it is used to check.

#include <cstddef>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/encoding.hpp"
#include "mgg/mcl.hpp"
#include "mgg/production.hpp"
#include "mgg/sequence.hpp"

namespace fixtures {

using namespace mgg;
using Edge = std::pair<int, int>;

/// Digraph with 1-based node and edge lists.
inline Digraph graph(const UniversePtr& u, const std::vector<int>& nodes, const std::vector<Edge>& edges) {
  Digraph g(u);
  for (int v : nodes) g.nodes.set(static_cast<std::size_t>(v - 1), true);
  for (auto [a, b] : edges) g.edges.set(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1), true);
  return g;
}

inline BoolMatrix mat(const UniversePtr& u, const std::vector<std::vector<int>>& rows) {
  return BoolMatrix::from_rows(u, rows);
}

inline Production rule(const UniversePtr& u, const char* name, const std::vector<int>& ln, const std::vector<Edge>& le,
                       const std::vector<int>& rn, const std::vector<Edge>& re) {
  return Production::from_static(name, graph(u, ln, le), graph(u, rn, re));
}

// Coherence example: s = p5;p4.
inline Production p4(const UniversePtr& u) { return rule(u, "p4", {1, 2, 3}, {{3, 3}}, {1, 2, 3}, {{1, 2}, {1, 3}, {2, 3}}); }
inline Production p5(const UniversePtr& u) { return rule(u, "p5", {1, 2, 3}, {{1, 2}, {3, 3}}, {2, 3}, {{2, 3}, {3, 3}}); }

// Initial digraph example: s = q2;q1.
inline Production q1(const UniversePtr& u) {
  return rule(u, "q1", {1, 2, 3}, {{1, 1}, {1, 2}, {3, 1}, {3, 2}}, {1, 2}, {{1, 1}, {2, 1}});
}
inline Production q2(const UniversePtr& u) {
  return rule(u, "q2", {1, 2}, {{2, 1}, {2, 2}}, {1, 2, 3}, {{2, 1}, {2, 2}, {1, 2}, {1, 3}, {2, 3}});
}

// Deletes node 1 and adds node 3.
inline Production t_rule(const UniversePtr& u) { return rule(u, "q", {1, 2}, {{1, 2}}, {2, 3}, {{2, 3}}); }

// Two rules with the same swap.
inline Production swap_p2(const UniversePtr& u) { return rule(u, "p2", {1, 2}, {{1, 1}, {2, 2}}, {1, 2}, {{1, 2}}); }
inline Production swap_p3(const UniversePtr& u) { return rule(u, "p3", {1, 2}, {{1, 1}, {1, 2}}, {1, 2}, {{2, 2}}); }

/// K by its defining property: an edge is forbidden when the rule adds it, or
/// when it touches a deleted node and the rule does not delete it itself.
inline BoolMatrix k_oracle(const Production& p) {
  const std::size_t n = p.universe()->size();
  BoolMatrix k(p.universe());
  auto deleted = [&](std::size_t i) { return p.lhs().nodes.at(i) && !p.rhs().nodes.at(i); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool added = p.rhs().edges.at(i, j) && !p.lhs().edges.at(i, j);
      const bool removed = p.lhs().edges.at(i, j) && !p.rhs().edges.at(i, j);
      k.set(i, j, added || ((deleted(i) || deleted(j)) && !removed));
    }
  }
  return k;
}

/// Applies each rule of s to (certainty, nihil) cell by cell: a cell is
/// present afterwards if added, or present and not deleted; it is forbidden
/// afterwards if deleted, or forbidden and not added.
inline ComplexTerm stepwise_image(const RuleSequence& s, const ComplexTerm& start) {
  ComplexTerm z = start;
  for (const auto& p : s.rules()) {
    for (std::size_t c = 0; c < z.cert_edges.cell_count(); ++c) {
      const bool e = p.lhs().edges.test(c) && !p.rhs().edges.test(c);
      const bool r = p.rhs().edges.test(c) && !p.lhs().edges.test(c);
      z.cert_edges.set(c, r || (z.cert_edges.test(c) && !e));
      z.nihil_edges.set(c, e || (z.nihil_edges.test(c) && !r));
    }
    for (std::size_t c = 0; c < z.cert_nodes.cell_count(); ++c) {
      const bool e = p.lhs().nodes.test(c) && !p.rhs().nodes.test(c);
      const bool r = p.rhs().nodes.test(c) && !p.lhs().nodes.test(c);
      z.cert_nodes.set(c, r || (z.cert_nodes.test(c) && !e));
    }
  }
  return z;
}

/// ℓ as an explicit sum of powers of two, columns first.
inline Ratio ell_sum(const BoolMatrix& m) {
  const std::size_t n = m.dim();
  Ratio total = 0;
  BigInt den = 1;
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      den *= 2;
      if (m.at(row, col)) total += Ratio(BigInt(1), den);
    }
  }
  return total;
}

/// All n×n matrices over u, in code order.
inline std::vector<BoolMatrix> all_matrices(const UniversePtr& u) {
  const std::size_t cells = u->size() * u->size();
  std::vector<BoolMatrix> out;
  for (std::size_t code = 0; code < (std::size_t{1} << cells); ++code) {
    BoolMatrix m(u);
    for (std::size_t c = 0; c < cells; ++c) m.set(c, (code >> c) & 1U);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace fixtures
