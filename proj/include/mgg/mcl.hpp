#pragma once

// Complex terms: a certainty part (elements that must exist) and a nihil part
// (elements that must not exist), on both edges and nodes.

#include <utility>

#include "mgg/boolmat.hpp"

namespace mgg {

/// z = a ∨ i·b over one node universe. `ambient` is the node set whose
/// bounded one (ambient ⊗ ambient) is the "1" used by conjugation.
struct ComplexTerm {
  BoolMatrix cert_edges;
  BoolMatrix nihil_edges;
  BoolVector cert_nodes;
  BoolVector nihil_nodes;
  BoolVector ambient;

  ComplexTerm() = default;

  ComplexTerm(BoolMatrix ce, BoolMatrix ne, BoolVector cn, BoolVector nn, BoolVector amb)
      : cert_edges(std::move(ce)),
        nihil_edges(std::move(ne)),
        cert_nodes(std::move(cn)),
        nihil_nodes(std::move(nn)),
        ambient(std::move(amb)) {
    const auto& u = cert_edges.universe();
    if (!same_universe(u, nihil_edges.universe()) || !same_universe(u, cert_nodes.universe()) ||
        !same_universe(u, nihil_nodes.universe()) || !same_universe(u, ambient.universe())) {
      throw DimensionError("complex term components belong to different universes");
    }
  }

  /// Edge-only term with empty node components over the full universe.
  static ComplexTerm from_edges(BoolMatrix cert, BoolMatrix nihil) {
    const UniversePtr u = cert.universe();
    return ComplexTerm(std::move(cert), std::move(nihil), BoolVector(u), BoolVector(u), BoolVector::ones(u));
  }

  static ComplexTerm zero(const UniversePtr& u) {
    return ComplexTerm(BoolMatrix(u), BoolMatrix(u), BoolVector(u), BoolVector(u), BoolVector::ones(u));
  }

  const UniversePtr& universe() const noexcept { return cert_edges.universe(); }

  bool is_zero() const {
    return cert_edges.none() && nihil_edges.none() && cert_nodes.none() && nihil_nodes.none();
  }

  /// Certainty and nihil parts are disjoint.
  bool is_disjoint() const {
    return !cert_edges.bits().intersects(nihil_edges.bits()) && !cert_nodes.bits().intersects(nihil_nodes.bits());
  }

  BoolMatrix edge_one() const { return bounded_one(ambient); }

  friend bool operator==(const ComplexTerm&, const ComplexTerm&) = default;
};

namespace detail {

inline void require_same_universe(const ComplexTerm& a, const ComplexTerm& b) {
  if (!same_universe(a.universe(), b.universe())) {
    throw DimensionError("complex terms belong to different node universes");
  }
}

}  // namespace detail

/// (a1 ∨ a2) ∨ i(b1 ∨ b2)
inline ComplexTerm cadd(const ComplexTerm& z1, const ComplexTerm& z2) {
  detail::require_same_universe(z1, z2);
  return ComplexTerm(z1.cert_edges | z2.cert_edges, z1.nihil_edges | z2.nihil_edges, z1.cert_nodes | z2.cert_nodes,
                     z1.nihil_nodes | z2.nihil_nodes, z1.ambient | z2.ambient);
}

/// (a1a2 ∨ b1b2) ∨ i(a1b2 ∨ a2b1)
inline ComplexTerm cmul(const ComplexTerm& z1, const ComplexTerm& z2) {
  detail::require_same_universe(z1, z2);
  return ComplexTerm((z1.cert_edges & z2.cert_edges) | (z1.nihil_edges & z2.nihil_edges),
                     (z1.cert_edges & z2.nihil_edges) | (z2.cert_edges & z1.nihil_edges),
                     (z1.cert_nodes & z2.cert_nodes) | (z1.nihil_nodes & z2.nihil_nodes),
                     (z1.cert_nodes & z2.nihil_nodes) | (z2.cert_nodes & z1.nihil_nodes), z1.ambient | z2.ambient);
}

/// z* = b̄ ∨ i ā, complements bounded by the term's ambient.
inline ComplexTerm conj(const ComplexTerm& z) {
  const BoolMatrix one = z.edge_one();
  return ComplexTerm(complement(z.nihil_edges, one), complement(z.cert_edges, one),
                     complement(z.nihil_nodes, z.ambient), complement(z.cert_nodes, z.ambient), z.ambient);
}

/// ⟨z1, z2⟩ = z1 z2*
inline ComplexTerm dot(const ComplexTerm& z1, const ComplexTerm& z2) {
  detail::require_same_universe(z1, z2);
  return cmul(z1, conj(z2));
}

/// Canonical representative: the common part cert ∧ nihil is removed from
/// both components.
inline ComplexTerm pmma_normalize(const ComplexTerm& z) {
  return ComplexTerm(z.cert_edges & z.nihil_edges.flipped(), z.nihil_edges & z.cert_edges.flipped(),
                     z.cert_nodes & z.nihil_nodes.flipped(), z.nihil_nodes & z.cert_nodes.flipped(), z.ambient);
}

/// Equality in the quotient algebra (both sides normalized).
inline bool equivalent(const ComplexTerm& z1, const ComplexTerm& z2) {
  return pmma_normalize(z1) == pmma_normalize(z2);
}

inline bool is_orthogonal(const ComplexTerm& z1, const ComplexTerm& z2) { return dot(z1, z2).is_zero(); }

/// Direct form of orthogonality: (a1 ∨ b1) ≺ (a2 ∧ b2) on edges and nodes.
inline bool is_orthogonal_by_containment(const ComplexTerm& z1, const ComplexTerm& z2) {
  detail::require_same_universe(z1, z2);
  return contains(z1.cert_edges | z1.nihil_edges, z2.cert_edges & z2.nihil_edges) &&
         contains(z1.cert_nodes | z1.nihil_nodes, z2.cert_nodes & z2.nihil_nodes);
}

/// z* = z. Compared raw: after normalization every disjoint term is its own
/// conjugate, so the quotient comparison would accept everything.
inline bool is_self_adjoint(const ComplexTerm& z) { return conj(z) == z; }

}  // namespace mgg
