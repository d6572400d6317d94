#pragma once

// Injective matching of a rule into a host and direct derivations
// H = r* ∨ ē* G.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/error.hpp"
#include "mgg/production.hpp"

namespace mgg {

/// Node map from the production universe into a host universe. Entries are
/// set exactly for the nodes of L; the same map serves m_L and m_K.
struct Match {
  std::vector<std::optional<std::size_t>> map;

  friend bool operator==(const Match&, const Match&) = default;
  friend auto operator<=>(const Match&, const Match&) = default;
};

/// Ḡ = (G^V ⊗ G^V) ∧ ¬G^E
inline BoolMatrix host_complement(const Digraph& g) { return complement(g.edges, bounded_one(g.nodes)); }

namespace detail {

// Per-edge check of a candidate (possibly partial) map. `upto` lists rule
// nodes already placed; only edges between placed nodes are tested.
struct MatchChecker {
  const Production& p;
  const Digraph& g;
  bool check_k;

  bool edge_ok(std::size_t i, std::size_t j, std::size_t hi, std::size_t hj) const {
    if (p.lhs().edges.at(i, j) && !g.edges.at(hi, hj)) return false;
    if (check_k && p.k().at(i, j) && g.edges.at(hi, hj)) return false;
    return true;
  }
};

// Deleted rule nodes may not keep edges towards host nodes outside the image
// of the match: the completed nihilation matrix forbids them.
inline bool dangling_free(const Production& p, const Digraph& g, const std::vector<std::optional<std::size_t>>& map) {
  const std::size_t hn = g.nodes.dim();
  std::vector<bool> image(hn, false);
  for (const auto& m : map)
    if (m) image[*m] = true;
  for (std::size_t i = 0; i < map.size(); ++i) {
    if (!map[i] || !p.e_nodes().at(i)) continue;
    const std::size_t h = *map[i];
    for (std::size_t k = 0; k < hn; ++k) {
      if (image[k]) continue;
      if (g.edges.at(h, k) || g.edges.at(k, h)) return false;
    }
  }
  return true;
}

inline std::vector<std::size_t> lhs_nodes_by_degree(const Production& p) {
  const std::size_t n = p.universe()->size();
  std::vector<std::size_t> nodes;
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.lhs().nodes.at(i)) continue;
    nodes.push_back(i);
    for (std::size_t j = 0; j < n; ++j) degree[i] += p.lhs().edges.at(i, j) + p.lhs().edges.at(j, i);
  }
  std::stable_sort(nodes.begin(), nodes.end(), [&](std::size_t a, std::size_t b) { return degree[a] > degree[b]; });
  return nodes;
}

inline std::vector<Match> search_matches(const Production& p, const Digraph& g, bool check_k) {
  const std::size_t n = p.universe()->size();
  const std::size_t hn = g.nodes.dim();
  const std::vector<std::size_t> order = lhs_nodes_by_degree(p);

  // L edges with an endpoint outside L's nodes can never be matched.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.lhs().edges.at(i, j) && (!p.lhs().nodes.at(i) || !p.lhs().nodes.at(j))) return {};

  std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0), host_out(hn, 0), host_in(hn, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.lhs().edges.at(i, j)) ++out_deg[i], ++in_deg[j];
  for (std::size_t i = 0; i < hn; ++i)
    for (std::size_t j = 0; j < hn; ++j)
      if (g.edges.at(i, j)) ++host_out[i], ++host_in[j];

  const MatchChecker checker{p, g, check_k};
  std::vector<std::optional<std::size_t>> map(n);
  std::vector<bool> used(hn, false);
  std::vector<Match> found;

  auto extend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      if (!check_k || dangling_free(p, g, map)) found.push_back(Match{map});
      return;
    }
    const std::size_t v = order[depth];
    for (std::size_t h = 0; h < hn; ++h) {
      if (used[h] || !g.nodes.at(h)) continue;
      if (host_out[h] < out_deg[v] || host_in[h] < in_deg[v]) continue;
      bool ok = checker.edge_ok(v, v, h, h);
      for (std::size_t d = 0; ok && d < depth; ++d) {
        const std::size_t w = order[d];
        ok = checker.edge_ok(v, w, h, *map[w]) && checker.edge_ok(w, v, *map[w], h);
      }
      if (!ok) continue;
      map[v] = h;
      used[h] = true;
      self(self, depth + 1);
      used[h] = false;
      map[v].reset();
    }
  };
  extend(extend, 0);
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace detail

/// All injective maps of L into G with L-edges present and K-edges absent.
/// Sorted lexicographically by the host index assigned to each rule node.
inline std::vector<Match> find_matches(const Production& p, const Digraph& g) {
  return detail::search_matches(p, g, true);
}

/// Labels of the host universe after applying p at m in step `step`: host
/// labels first, then one fresh label per node added by p.
inline std::vector<std::string> extended_labels(const Production& p, const Digraph& g, std::size_t step) {
  std::vector<std::string> labels = g.universe()->labels();
  const auto& u = *p.universe();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!p.r_nodes().at(i)) continue;
    std::string fresh = p.name() + "." + u.label(i) + "#" + std::to_string(step);
    while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
    labels.push_back(std::move(fresh));
  }
  return labels;
}

/// Rewrites G at m. The host universe grows by the nodes p adds; deleted
/// nodes keep their (now empty) position in the universe.
inline Digraph apply_at(const Production& p, const Digraph& g, const Match& m, std::size_t step = 1) {
  const std::size_t n = p.universe()->size();
  const std::size_t hn = g.nodes.dim();
  if (m.map.size() != n) throw MatchError("match size does not fit the production universe");
  for (std::size_t i = 0; i < n; ++i) {
    if (p.lhs().nodes.at(i) != m.map[i].has_value()) {
      throw MatchError("m_L: match must be defined exactly on the nodes of L (rule node '" + p.universe()->label(i) + "')");
    }
    if (m.map[i] && (*m.map[i] >= hn || !g.nodes.at(*m.map[i]))) {
      throw MatchError("m_L: rule node '" + p.universe()->label(i) + "' maps outside the host nodes");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.map[i] && m.map[j] && *m.map[i] == *m.map[j]) throw MatchError("m_L: match is not injective");

  const UniversePtr ext = make_universe(extended_labels(p, g, step));
  std::vector<std::optional<std::size_t>> pos = m.map;
  std::size_t next = hn;
  for (std::size_t i = 0; i < n; ++i)
    if (p.r_nodes().at(i)) pos[i] = next++;

  LabelMap identity;
  for (const auto& l : g.universe()->labels()) identity[l] = l;
  Digraph host(complete_to(g.edges, ext, identity), complete_to(g.nodes, ext, identity));

  Digraph e_star(ext), r_star(ext), l_star(ext);
  BoolVector e_nodes_host(ext);
  for (std::size_t i = 0; i < n; ++i) {
    if (pos[i]) {
      e_star.nodes.set(*pos[i], p.e_nodes().at(i));
      r_star.nodes.set(*pos[i], p.r_nodes().at(i));
    }
    for (std::size_t j = 0; j < n; ++j) {
      const bool touched = p.e_edges().at(i, j) || p.r_edges().at(i, j) || p.lhs().edges.at(i, j);
      if (!touched) continue;
      if (!pos[i] || !pos[j]) {
        throw Error("production '" + p.name() + "' has an edge on a node that is neither matched nor added");
      }
      e_star.edges.set(*pos[i], *pos[j], p.e_edges().at(i, j));
      r_star.edges.set(*pos[i], *pos[j], p.r_edges().at(i, j));
      l_star.edges.set(*pos[i], *pos[j], p.lhs().edges.at(i, j));
    }
  }

  const BoolMatrix missing = l_star.edges & host.edges.flipped();
  if (missing.any()) throw MatchError("m_L: an edge of L is missing from the host");
  const BoolMatrix k_star = detail::nihilation_of(e_star.edges, r_star.edges, e_star.nodes);
  if ((k_star & host.edges).any()) throw MatchError("m_K: an edge forbidden by K is present in the host");

  const BoolMatrix one = BoolMatrix::ones(ext);
  const BoolVector ones_v = BoolVector::ones(ext);
  return Digraph(r_star.edges | (complement(e_star.edges, one) & host.edges),
                 r_star.nodes | (complement(e_star.nodes, ones_v) & host.nodes));
}

/// Which selector picks the match at a derivation step.
struct SelectFirst {};
struct SelectIndex {
  std::size_t index = 0;
};
struct SelectMap {
  LabelMap map;  // rule label -> host label
};
using MatchSelector = std::variant<SelectFirst, SelectIndex, SelectMap>;

struct DerivationStep {
  std::string production;
  Match match;
  std::size_t input = 0;   // index into DerivationResult::graphs
  std::size_t output = 0;
  std::size_t candidates = 0;  // number of matches available at this step
};

struct DerivationFailure {
  std::size_t step = 0;  // 1-based
  std::string production;
  std::string morphism;  // "m_L" or "m_K"
  std::string message;
};

struct DerivationResult {
  std::vector<Digraph> graphs;  // graphs[0] is the start graph
  std::vector<DerivationStep> steps;
  std::optional<DerivationFailure> failure;

  bool ok() const noexcept { return !failure.has_value(); }
  const Digraph& final_graph() const { return graphs.back(); }
};

/// Folds apply_at over the steps in application order. Stops at the first
/// step without a usable match and records which morphism failed.
inline DerivationResult derive(const Digraph& g, const std::vector<std::pair<Production, MatchSelector>>& steps) {
  DerivationResult out;
  out.graphs.push_back(g);
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const auto& [p, selector] = steps[s];
    const Digraph& current = out.graphs.back();
    const std::vector<Match> matches = find_matches(p, current);

    auto fail = [&](std::string morphism, std::string message) {
      out.failure = DerivationFailure{s + 1, p.name(), std::move(morphism), std::move(message)};
    };

    std::optional<Match> chosen;
    if (std::holds_alternative<SelectFirst>(selector)) {
      if (!matches.empty()) chosen = matches.front();
    } else if (const auto* idx = std::get_if<SelectIndex>(&selector)) {
      if (idx->index >= matches.size() && !matches.empty()) {
        throw RangeError("step " + std::to_string(s + 1) + ": match index " + std::to_string(idx->index) +
                         " out of range (" + std::to_string(matches.size()) + " matches)");
      }
      if (!matches.empty()) chosen = matches[idx->index];
    } else {
      const auto& explicit_map = std::get<SelectMap>(selector).map;
      Match m{detail::resolve_mapping(*p.universe(), *current.universe(), explicit_map)};
      try {
        apply_at(p, current, m, s + 1);
        chosen = m;
      } catch (const MatchError& err) {
        const std::string what = err.what();
        fail(what.rfind("m_K", 0) == 0 ? "m_K" : "m_L", what);
        return out;
      }
    }

    if (!chosen) {
      const bool l_only = !detail::search_matches(p, current, false).empty();
      fail(l_only ? "m_K" : "m_L", l_only ? "every embedding of L hits an edge forbidden by K" : "L does not embed into the host");
      return out;
    }
    out.graphs.push_back(apply_at(p, current, *chosen, s + 1));
    out.steps.push_back(DerivationStep{p.name(), *chosen, out.graphs.size() - 2, out.graphs.size() - 1, matches.size()});
  }
  return out;
}

}  // namespace mgg
