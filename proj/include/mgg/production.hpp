#pragma once

// Productions in static (L, R) and dynamic (L, e, r) form, their nihilation
// matrices, application, and the swap each production induces.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/encoding.hpp"
#include "mgg/mcl.hpp"

namespace mgg {

namespace detail {

// K = r ∨ (ē ∧ D̄) with D = ē^V ⊗ ē^V: edges the rule adds plus edges incident
// to a deleted node that the rule does not delete itself.
inline BoolMatrix nihilation_of(const BoolMatrix& e_edges, const BoolMatrix& r_edges, const BoolVector& e_nodes) {
  const UniversePtr& u = e_edges.universe();
  const BoolMatrix one = BoolMatrix::ones(u);
  const BoolVector kept = complement(e_nodes, BoolVector::ones(u));
  const BoolMatrix dangling = complement(tensor(kept, kept), one);
  return r_edges | (complement(e_edges, one) & dangling);
}

// Q = e ∨ (r̄ ∧ K)
inline BoolMatrix evolve_nihil_of(const BoolMatrix& e_edges, const BoolMatrix& r_edges, const BoolMatrix& k) {
  return e_edges | (complement(r_edges, BoolMatrix::ones(k.universe())) & k);
}

}  // namespace detail

/// A rule p: L → R over a shared node universe. e and r (deletion and
/// addition) are always derived from L and R, so e ∧ r = 0, r ∧ L = 0 and
/// e ≺ L hold by construction.
class Production {
 public:
  Production() = default;

  static Production from_static(std::string name, Digraph lhs, Digraph rhs) {
    if (!same_universe(lhs.universe(), rhs.universe())) {
      throw DimensionError("production '" + name + "': left and right hand sides are not completed to one universe");
    }
    Production p;
    p.name_ = std::move(name);
    p.lhs_ = std::move(lhs);
    p.rhs_ = std::move(rhs);
    p.e_edges_ = p.lhs_.edges & p.rhs_.edges.flipped();
    p.r_edges_ = p.rhs_.edges & p.lhs_.edges.flipped();
    p.e_nodes_ = p.lhs_.nodes & p.rhs_.nodes.flipped();
    p.r_nodes_ = p.rhs_.nodes & p.lhs_.nodes.flipped();
    p.k_ = detail::nihilation_of(p.e_edges_, p.r_edges_, p.e_nodes_);
    p.q_ = detail::evolve_nihil_of(p.e_edges_, p.r_edges_, p.k_);
    return p;
  }

  const std::string& name() const noexcept { return name_; }
  const UniversePtr& universe() const noexcept { return lhs_.universe(); }

  const Digraph& lhs() const noexcept { return lhs_; }
  const Digraph& rhs() const noexcept { return rhs_; }
  const BoolMatrix& e_edges() const noexcept { return e_edges_; }
  const BoolMatrix& r_edges() const noexcept { return r_edges_; }
  const BoolVector& e_nodes() const noexcept { return e_nodes_; }
  const BoolVector& r_nodes() const noexcept { return r_nodes_; }
  /// Nihilation matrix of the left hand side (K).
  const BoolMatrix& k() const noexcept { return k_; }
  /// Nihilation matrix of the right hand side (Q).
  const BoolMatrix& q() const noexcept { return q_; }

  /// L ∨ iK. Nihil node vectors are always empty.
  ComplexTerm lhs_term() const {
    const UniversePtr& u = universe();
    return ComplexTerm(lhs_.edges, k_, lhs_.nodes, BoolVector(u), BoolVector::ones(u));
  }

  /// R ∨ iQ
  ComplexTerm rhs_term() const {
    const UniversePtr& u = universe();
    return ComplexTerm(rhs_.edges, q_, rhs_.nodes, BoolVector(u), BoolVector::ones(u));
  }

  /// Copy with a new name, used when the same rule appears twice in a sequence.
  Production renamed(std::string name) const {
    Production p = *this;
    p.name_ = std::move(name);
    return p;
  }

 private:
  std::string name_;
  Digraph lhs_;
  Digraph rhs_;
  BoolMatrix e_edges_;
  BoolMatrix r_edges_;
  BoolVector e_nodes_;
  BoolVector r_nodes_;
  BoolMatrix k_;
  BoolMatrix q_;
};

inline BoolMatrix nihilation(const Production& p) {
  return detail::nihilation_of(p.e_edges(), p.r_edges(), p.e_nodes());
}

inline BoolMatrix evolve_nihil(const Production& p) {
  return detail::evolve_nihil_of(p.e_edges(), p.r_edges(), nihilation(p));
}

/// r ∨ ē x on edges and nodes. x must live over the production's universe.
inline Digraph apply_production(const Production& p, const Digraph& x) {
  const UniversePtr& u = p.universe();
  return Digraph(p.r_edges() | (complement(p.e_edges(), BoolMatrix::ones(u)) & x.edges),
                 p.r_nodes() | (complement(p.e_nodes(), BoolVector::ones(u)) & x.nodes));
}

/// R ∧ Q = 0: the rule never produces a dangling edge.
inline bool production_compatible(const Production& p) { return (p.rhs().edges & p.q()).none(); }

/// Self-adjoint edge term (ē r̄) ∨ i(e ∨ r). Only the nihil part is stored;
/// the certainty part is its complement within the ambient. The node
/// component acts as the identity.
class Swap {
 public:
  Swap() = default;

  Swap(BoolMatrix nihil, BoolVector ambient) : nihil_(std::move(nihil)), ambient_(std::move(ambient)) {
    if (!contains(nihil_, bounded_one(ambient_))) throw Error("swap nihil part exceeds its ambient");
  }

  const BoolMatrix& nihil() const noexcept { return nihil_; }
  const BoolVector& ambient() const noexcept { return ambient_; }

  BoolMatrix certainty() const { return complement(nihil_, bounded_one(ambient_)); }

  /// Number of edges the swap acts on.
  std::size_t arity() const { return nihil_.count(); }

  ComplexTerm term() const {
    const UniversePtr& u = nihil_.universe();
    return ComplexTerm(certainty(), nihil_, ambient_, BoolVector(u), ambient_);
  }

  friend bool operator==(const Swap&, const Swap&) = default;

 private:
  BoolMatrix nihil_;
  BoolVector ambient_;
};

/// P(p) = ē r̄ ∨ i(e ∨ r), over the full universe.
inline Swap p_operator(const Production& p) {
  return Swap(p.e_edges() | p.r_edges(), BoolVector::ones(p.universe()));
}

/// ⟨z, w⟩: cells in the swap's nihil part exchange certainty and nihil,
/// cells in its certainty part are kept.
inline ComplexTerm apply_swap(const Swap& w, const ComplexTerm& z) { return dot(z, w.term()); }

struct SwapClass {
  Swap swap;
  std::size_t production_count = 0;
};

struct SwapCensus {
  std::size_t node_count = 0;
  std::size_t production_count = 0;
  /// Ordered by ℓ of the swap's nihil part.
  std::vector<SwapClass> classes;
  /// histogram[k] = number of swaps acting on exactly k edges.
  std::vector<std::size_t> arity_histogram;
};

/// Enumerates every production over `node_count` nodes (all nodes present on
/// both sides, every pair of edge sets) and groups them by their swap.
inline SwapCensus swap_census(std::size_t node_count) {
  if (node_count > 2) throw RangeError("swap census supports at most 2 nodes");
  const UniversePtr u = make_universe(node_count);
  const std::size_t cells = node_count * node_count;
  const std::size_t graphs = std::size_t{1} << cells;

  auto graph = [&](std::size_t code) {
    Digraph g(u);
    g.nodes = BoolVector::ones(u);
    for (std::size_t c = 0; c < cells; ++c)
      if ((code >> c) & 1U) g.edges.set(c, true);
    return g;
  };

  std::map<Dyadic, SwapClass> by_swap;
  SwapCensus out;
  out.node_count = node_count;
  for (std::size_t l = 0; l < graphs; ++l) {
    for (std::size_t r = 0; r < graphs; ++r) {
      const Production p = Production::from_static("p", graph(l), graph(r));
      const Swap w = p_operator(p);
      auto [it, inserted] = by_swap.try_emplace(ell(w.nihil()), SwapClass{w, 0});
      ++it->second.production_count;
      ++out.production_count;
    }
  }
  out.arity_histogram.assign(cells + 1, 0);
  for (auto& [key, cls] : by_swap) {
    ++out.arity_histogram[cls.swap.arity()];
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace mgg
