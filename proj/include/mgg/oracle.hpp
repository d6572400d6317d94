#pragma once

// Brute-force validators. Each one works on raw cells and avoids the code
// path it audits: brute_matches does not use the backtracking matcher,
// minimal_hosts does not use the sequence formulas, pascal_mod2 does not use
// bitwise AND, census_bruteforce does not use p_operator.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/derivation.hpp"
#include "mgg/encoding.hpp"
#include "mgg/error.hpp"
#include "mgg/production.hpp"
#include "mgg/sequence.hpp"

namespace mgg {

struct Violation {
  std::string input;
  std::string expected;
  std::string got;
};

struct OracleReport {
  std::size_t checked = 0;
  std::vector<Violation> violations;

  bool pass() const noexcept { return violations.empty(); }
  void record(std::string input, std::string expected, std::string got) {
    violations.push_back(Violation{std::move(input), std::move(expected), std::move(got)});
  }
};

/// Every injective map of L's nodes into G's nodes, filtered by the L-edge,
/// K-edge and dangling conditions evaluated cell by cell.
inline std::vector<Match> brute_matches(const Production& p, const Digraph& g) {
  const std::size_t hn = g.nodes.dim();
  if (hn > 7) throw RangeError("brute_matches supports hosts of at most 7 nodes");
  const std::size_t n = p.universe()->size();
  const Digraph& l = p.lhs();
  const Digraph& r = p.rhs();

  std::vector<std::size_t> rule_nodes;
  for (std::size_t i = 0; i < n; ++i)
    if (l.nodes.at(i)) rule_nodes.push_back(i);

  auto deleted = [&](std::size_t i) { return l.nodes.at(i) && !r.nodes.at(i); };
  auto forbidden = [&](std::size_t i, std::size_t j) {
    const bool added = r.edges.at(i, j) && !l.edges.at(i, j);
    const bool removed = l.edges.at(i, j) && !r.edges.at(i, j);
    return added || ((deleted(i) || deleted(j)) && !removed);
  };

  std::vector<Match> out;
  std::vector<std::optional<std::size_t>> map(n);
  auto accept = [&]() {
    std::vector<bool> image(hn, false);
    for (std::size_t i : rule_nodes) image[*map[i]] = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const bool both = map[i] && map[j];
        if (l.edges.at(i, j) && (!both || !g.edges.at(*map[i], *map[j]))) return false;
        if (both && forbidden(i, j) && g.edges.at(*map[i], *map[j])) return false;
      }
    }
    for (std::size_t i : rule_nodes) {
      if (!deleted(i)) continue;
      for (std::size_t h = 0; h < hn; ++h)
        if (!image[h] && (g.edges.at(*map[i], h) || g.edges.at(h, *map[i]))) return false;
    }
    return true;
  };
  auto assign = [&](auto&& self, std::size_t k) -> void {
    if (k == rule_nodes.size()) {
      if (accept()) out.push_back(Match{map});
      return;
    }
    for (std::size_t h = 0; h < hn; ++h) {
      if (!g.nodes.at(h)) continue;
      bool taken = false;
      for (std::size_t d = 0; d < k; ++d) taken = taken || *map[rule_nodes[d]] == h;
      if (taken) continue;
      map[rule_nodes[k]] = h;
      self(self, k + 1);
      map[rule_nodes[k]].reset();
    }
  };
  assign(assign, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Applies every rule of s in turn at the identity match, requiring L present,
/// K absent and added nodes absent before each step.
inline bool applies_at_identity(const RuleSequence& s, const Digraph& host) {
  Digraph g = host;
  for (const auto& p : s.rules()) {
    const auto& ge = g.edges.bits();
    const auto& gv = g.nodes.bits();
    if (!p.lhs().edges.bits().is_subset_of(ge)) return false;
    if (!p.lhs().nodes.bits().is_subset_of(gv)) return false;
    if (p.k().bits().intersects(ge)) return false;
    if (p.r_nodes().bits().intersects(gv)) return false;
    g = Digraph(BoolMatrix(g.universe(), p.r_edges().bits() | (ge - p.e_edges().bits())),
                BoolVector(g.universe(), p.r_nodes().bits() | (gv - p.e_nodes().bits())));
  }
  return true;
}

/// Hosts over the sequence universe that are minimal (under node and edge
/// inclusion) among the compatible hosts on which s applies at the identity.
inline std::vector<Digraph> minimal_hosts(const RuleSequence& s, std::size_t bound) {
  if (bound > 4) throw RangeError("minimal_hosts supports at most 4 nodes");
  if (s.size() > 3) throw RangeError("minimal_hosts supports sequences of at most 3 rules");
  const UniversePtr& u = s.universe();
  const std::size_t n = u->size();
  if (n > bound) throw RangeError("sequence universe exceeds the node bound");

  std::vector<Digraph> applicable;
  for (std::uint32_t vcode = 0; vcode < (1U << n); ++vcode) {
    std::vector<std::size_t> cells;
    BoolVector nodes(u);
    for (std::size_t i = 0; i < n; ++i) nodes.set(i, (vcode >> i) & 1U);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (nodes.at(i) && nodes.at(j)) cells.push_back(i * n + j);
    for (std::uint64_t ecode = 0; ecode < (std::uint64_t{1} << cells.size()); ++ecode) {
      BoolMatrix edges(u);
      for (std::size_t c = 0; c < cells.size(); ++c) edges.set(cells[c], (ecode >> c) & 1U);
      Digraph h(edges, nodes);
      if (applies_at_identity(s, h)) applicable.push_back(std::move(h));
    }
  }
  std::stable_sort(applicable.begin(), applicable.end(), [](const Digraph& a, const Digraph& b) {
    return a.nodes.count() + a.edges.count() < b.nodes.count() + b.edges.count();
  });
  std::vector<Digraph> minimal;
  for (const auto& h : applicable) {
    const bool dominated = std::any_of(minimal.begin(), minimal.end(), [&](const Digraph& m) {
      return m.nodes.bits().is_subset_of(h.nodes.bits()) && m.edges.bits().is_subset_of(h.edges.bits());
    });
    if (!dominated) minimal.push_back(h);
  }
  return minimal;
}

/// Pixel (x, y) holds binomial(x + y, x) mod 2, built row by row with the
/// additive recurrence.
inline Bitmap pascal_mod2(int bits) {
  if (bits < 0 || bits > 12) throw RangeError("pascal_mod2 supports at most 12 bits");
  const std::size_t side = std::size_t{1} << bits;
  Bitmap out(side, side);
  std::vector<std::uint8_t> prev(side, 1), cur(side);
  for (std::size_t y = 0; y < side; ++y) {
    if (y == 0) {
      std::fill(cur.begin(), cur.end(), 1);
    } else {
      cur[0] = 1;
      for (std::size_t x = 1; x < side; ++x) cur[x] = static_cast<std::uint8_t>((cur[x - 1] + prev[x]) % 2);
    }
    for (std::size_t x = 0; x < side; ++x)
      if (cur[x]) out.set(x, y);
    prev = cur;
  }
  return out;
}

struct CensusRow {
  std::uint32_t certainty = 0;  // cell c of the swap's certainty part is bit c
  std::uint32_t nihil = 0;
  std::size_t count = 0;
};

struct CensusTable {
  std::size_t productions = 0;
  std::vector<CensusRow> rows;            // ordered by (certainty, nihil)
  std::vector<std::size_t> arity_histogram;
};

/// Groups every (L, R) pair over `node_count` fully present nodes by the raw
/// pair (ē ∧ r̄, e ∨ r), with edge sets handled as integer bit masks.
inline CensusTable census_bruteforce(std::size_t node_count) {
  if (node_count > 2) throw RangeError("census_bruteforce supports at most 2 nodes");
  const std::size_t cells = node_count * node_count;
  const std::uint32_t mask = (std::uint32_t{1} << cells) - 1;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> groups;
  CensusTable out;
  for (std::uint32_t l = 0; l <= mask; ++l) {
    for (std::uint32_t r = 0; r <= mask; ++r) {
      const std::uint32_t e = l & ~r & mask;
      const std::uint32_t a = r & ~l & mask;
      ++groups[{~e & ~a & mask, e | a}];
      ++out.productions;
    }
  }
  out.arity_histogram.assign(cells + 1, 0);
  for (const auto& [key, count] : groups) {
    out.rows.push_back(CensusRow{key.first, key.second, count});
    ++out.arity_histogram[static_cast<std::size_t>(std::popcount(key.second))];
  }
  return out;
}

/// Seeded generator of random rules and hosts.
class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : rng_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::mt19937_64& engine() noexcept { return rng_; }

  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  /// L: nodes and edges among them with density 0.5. R: each L node kept or
  /// deleted, each other node added or not; L edges between kept nodes kept
  /// or deleted, new edges among R's nodes added at random.
  Production production(const UniversePtr& u, const std::string& name) {
    const std::size_t n = u->size();
    Digraph l(u), r(u);
    for (std::size_t i = 0; i < n; ++i) l.nodes.set(i, coin());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l.edges.set(i, j, l.nodes.at(i) && l.nodes.at(j) && coin());
    for (std::size_t i = 0; i < n; ++i) r.nodes.set(i, l.nodes.at(i) ? coin(0.75) : coin(0.3));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (!r.nodes.at(i) || !r.nodes.at(j)) continue;
        r.edges.set(i, j, l.edges.at(i, j) ? coin(0.6) : coin(0.3));
      }
    }
    return Production::from_static(name, std::move(l), std::move(r));
  }

  /// Compatible digraph: node density `pn`, edges among present nodes with
  /// density `pe`.
  Digraph digraph(const UniversePtr& u, double pn = 0.8, double pe = 0.4) {
    const std::size_t n = u->size();
    Digraph g(u);
    for (std::size_t i = 0; i < n; ++i) g.nodes.set(i, coin(pn));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.edges.set(i, j, g.nodes.at(i) && g.nodes.at(j) && coin(pe));
    return g;
  }

  /// Edge-only complex term with independent parts.
  ComplexTerm term(const UniversePtr& u, double p = 0.5) {
    BoolMatrix a(u), b(u);
    for (std::size_t c = 0; c < a.cell_count(); ++c) {
      a.set(c, coin(p));
      b.set(c, coin(p));
    }
    return ComplexTerm::from_edges(std::move(a), std::move(b));
  }

 private:
  std::mt19937_64 rng_;
  std::uint64_t seed_;
};

}  // namespace mgg
