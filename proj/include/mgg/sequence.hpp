#pragma once

// Sequential analysis of completed rule sequences. Rules are stored in
// application order: position 1 is applied first. Written right to left
// this is s = p_n; ...; p_1.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/error.hpp"
#include "mgg/mcl.hpp"
#include "mgg/production.hpp"

namespace mgg {

class RuleSequence {
 public:
  RuleSequence() = default;

  RuleSequence(std::string name, std::vector<Production> rules) : name_(std::move(name)), rules_(std::move(rules)) {
    for (const auto& p : rules_) {
      if (!same_universe(p.universe(), rules_.front().universe())) {
        throw DimensionError("sequence '" + name_ + "': rule '" + p.name() + "' is not completed to the shared universe");
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return rules_.size(); }
  bool empty() const noexcept { return rules_.empty(); }
  const std::vector<Production>& rules() const noexcept { return rules_; }

  /// 1-based position, 1 = applied first.
  const Production& at(std::size_t position) const {
    if (position < 1 || position > rules_.size()) throw RangeError("rule position out of range");
    return rules_[position - 1];
  }

  const UniversePtr& universe() const {
    if (rules_.empty()) throw Error("empty sequence has no universe");
    return rules_.front().universe();
  }

  /// The first m rules.
  RuleSequence prefix(std::size_t m) const {
    if (m > rules_.size()) throw RangeError("prefix longer than the sequence");
    return RuleSequence(name_, std::vector<Production>(rules_.begin(), rules_.begin() + static_cast<std::ptrdiff_t>(m)));
  }

  /// Right-to-left rendering, e.g. "p2;p1".
  std::string composition() const {
    std::string out;
    for (auto it = rules_.rbegin(); it != rules_.rend(); ++it) {
      if (!out.empty()) out += ';';
      out += it->name();
    }
    return out;
  }

 private:
  std::string name_;
  std::vector<Production> rules_;
};

namespace detail {

inline void check_range(std::size_t t0, std::size_t t1, std::size_t n) {
  if (t0 > t1) return;
  if (t0 < 1 || t1 > n) {
    throw RangeError("index range [" + std::to_string(t0) + ", " + std::to_string(t1) + "] outside 1.." + std::to_string(n));
  }
}

}  // namespace detail

/// △(t0, t1, F) = ⋁_{y=t0}^{t1} ⋀_{x=y}^{t1} F(x, y). Empty range gives `zero`.
template <class Array, class F>
Array delta(std::size_t t0, std::size_t t1, std::size_t n, F&& f, const Array& zero) {
  detail::check_range(t0, t1, n);
  Array acc = zero;
  for (std::size_t y = t0; y <= t1 && t0 <= t1; ++y) {
    Array term = f(y, y);
    for (std::size_t x = y + 1; x <= t1; ++x) term = term & f(x, y);
    acc = acc | term;
  }
  return acc;
}

/// ▽(t0, t1, F) = ⋁_{y=t0}^{t1} ⋀_{x=t0}^{y} F(x, y). Empty range gives `zero`.
template <class Array, class F>
Array nabla(std::size_t t0, std::size_t t1, std::size_t n, F&& f, const Array& zero) {
  detail::check_range(t0, t1, n);
  Array acc = zero;
  for (std::size_t y = t0; y <= t1 && t0 <= t1; ++y) {
    Array term = f(t0, y);
    for (std::size_t x = t0 + 1; x <= y; ++x) term = term & f(x, y);
    acc = acc | term;
  }
  return acc;
}

/// One explained 1-cell of a report. `col` is empty for node cells.
struct Witness {
  std::string component;
  std::size_t row = 0;
  std::optional<std::size_t> col;
  std::vector<std::size_t> rules;  // positions whose terms produce the cell
};

struct AnalysisReport {
  std::string kind;
  ComplexTerm result;
  bool ok = true;
  std::vector<Witness> witnesses;
  /// Additional named matrices reported alongside the result.
  std::vector<std::pair<std::string, BoolMatrix>> extra;
  std::vector<std::string> notes;
};

namespace detail {

struct RuleView {
  const Production& p;
  BoolMatrix ne, nr;  // ē, r̄ on edges
  BoolVector nev, nrv;
};

inline std::vector<RuleView> views(const RuleSequence& s) {
  std::vector<RuleView> out;
  for (const auto& p : s.rules()) {
    const auto& u = p.universe();
    out.push_back(RuleView{p, complement(p.e_edges(), BoolMatrix::ones(u)), complement(p.r_edges(), BoolMatrix::ones(u)),
                           complement(p.e_nodes(), BoolVector::ones(u)), complement(p.r_nodes(), BoolVector::ones(u))});
  }
  return out;
}

template <class Array>
void collect_witnesses(std::vector<Witness>& out, const std::string& component, std::size_t n,
                       const std::function<Array(std::size_t)>& term_of_rule) {
  std::vector<Array> terms;
  for (std::size_t j = 1; j <= n; ++j) terms.push_back(term_of_rule(j));
  if (terms.empty()) return;
  Array all = terms.front();
  for (const auto& t : terms) all = all | t;
  for (std::size_t c = 0; c < all.cell_count(); ++c) {
    if (!all.test(c)) continue;
    Witness w;
    w.component = component;
    if constexpr (Array::is_matrix) {
      w.row = c / all.dim();
      w.col = c % all.dim();
    } else {
      w.row = c;
    }
    for (std::size_t j = 0; j < terms.size(); ++j)
      if (terms[j].test(c)) w.rules.push_back(j + 1);
    out.push_back(std::move(w));
  }
}

}  // namespace detail

/// C = C⁺ ∨ iC⁻. The node component of C⁺ applies the same formula to node
/// vectors (node nihilation is empty, so C⁻ has no node part).
inline AnalysisReport coherence(const RuleSequence& s) {
  const std::size_t n = s.size();
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);
  const BoolMatrix zm(u);
  const BoolVector zv(u);
  auto P = [&](std::size_t k) -> const detail::RuleView& { return v[k - 1]; };

  std::function<BoolMatrix(std::size_t)> plus = [&](std::size_t j) {
    const BoolMatrix later = nabla(j + 1, n, n, [&](std::size_t x, std::size_t y) { return P(x).ne & P(y).p.r_edges(); }, zm);
    const BoolMatrix earlier =
        j >= 2 ? delta(1, j - 1, n, [&](std::size_t x, std::size_t y) { return P(y).p.e_edges() & P(x).nr; }, zm) : zm;
    return (P(j).p.rhs().edges & later) | (P(j).p.lhs().edges & earlier);
  };
  std::function<BoolMatrix(std::size_t)> minus = [&](std::size_t j) {
    const BoolMatrix later = nabla(j + 1, n, n, [&](std::size_t x, std::size_t y) { return P(y).p.e_edges() & P(x).nr; }, zm);
    const BoolMatrix earlier =
        j >= 2 ? delta(1, j - 1, n, [&](std::size_t x, std::size_t y) { return P(y).p.r_edges() & P(x).ne; }, zm) : zm;
    return (P(j).p.q() & later) | (P(j).p.k() & earlier);
  };
  std::function<BoolVector(std::size_t)> plus_nodes = [&](std::size_t j) {
    const BoolVector later = nabla(j + 1, n, n, [&](std::size_t x, std::size_t y) { return P(x).nev & P(y).p.r_nodes(); }, zv);
    const BoolVector earlier =
        j >= 2 ? delta(1, j - 1, n, [&](std::size_t x, std::size_t y) { return P(y).p.e_nodes() & P(x).nrv; }, zv) : zv;
    return (P(j).p.rhs().nodes & later) | (P(j).p.lhs().nodes & earlier);
  };

  BoolMatrix cp = zm, cm = zm;
  BoolVector cpv = zv;
  for (std::size_t j = 1; j <= n; ++j) {
    cp = cp | plus(j);
    cm = cm | minus(j);
    cpv = cpv | plus_nodes(j);
  }

  AnalysisReport r;
  r.kind = "coherence";
  r.result = ComplexTerm(cp, cm, cpv, zv, BoolVector::ones(u));
  r.ok = r.result.is_zero();
  detail::collect_witnesses<BoolMatrix>(r.witnesses, "C+", n, plus);
  detail::collect_witnesses<BoolMatrix>(r.witnesses, "C-", n, minus);
  detail::collect_witnesses<BoolVector>(r.witnesses, "C+ nodes", n, plus_nodes);
  return r;
}

/// T = ¬(r̄^V ⊗ r̄^V) ∧ (ē^V ⊗ ē^V): edges incident to an added node and to no
/// deleted node.
inline BoolMatrix t_matrix(const Production& p) {
  const UniversePtr& u = p.universe();
  const BoolVector ones = BoolVector::ones(u);
  const BoolVector nr = complement(p.r_nodes(), ones);
  const BoolVector ne = complement(p.e_nodes(), ones);
  return complement(tensor(nr, nr), BoolMatrix::ones(u)) & tensor(ne, ne);
}

/// Nihil part of M(s) before it is bounded by M(s)'s own node set. It can
/// list edges towards nodes that exist only after a later rule adds them.
inline BoolMatrix initial_nihil_unbounded(const RuleSequence& s) {
  const std::size_t n = s.size();
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);
  const BoolMatrix one = BoolMatrix::ones(u);
  std::vector<BoolMatrix> not_t;
  for (const auto& p : s.rules()) not_t.push_back(complement(t_matrix(p), one));
  return nabla(
      1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].ne & not_t[x - 1] & v[y - 1].p.k(); }, BoolMatrix(u));
}

/// M(s) = ▽(r̄_x L_y) ∨ i ▽(ē_x T̄_x K_y). Certainty nodes follow the same
/// formula on node vectors; nihil nodes are empty. The nihil part is kept
/// within (M_C^V ⊗ M_C^V): an edge on a node missing from the initial
/// digraph can never be present in a host, so it constrains nothing.
inline ComplexTerm initial_digraph(const RuleSequence& s) {
  const std::size_t n = s.size();
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);
  const BoolMatrix mc = nabla(1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].nr & v[y - 1].p.lhs().edges; }, BoolMatrix(u));
  const BoolVector mv =
      nabla(1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].nrv & v[y - 1].p.lhs().nodes; }, BoolVector(u));
  return ComplexTerm(mc, initial_nihil_unbounded(s) & bounded_one(mv), mv, BoolVector(u), BoolVector::ones(u));
}

/// Initial digraph with a note when the sequence is not coherent.
inline AnalysisReport initial_digraph_report(const RuleSequence& s) {
  AnalysisReport r;
  r.kind = "initial";
  r.result = initial_digraph(s);
  r.ok = true;
  r.extra.emplace_back("nihil_unbounded", initial_nihil_unbounded(s));
  if (!coherence(s).ok) r.notes.push_back("warning: sequence is not coherent; the initial digraph may not be applicable");
  return r;
}

/// Image of an explicit starting term under s:
/// (△(ē_x r_y) ∨ ⋀ē_j a) ∨ i(△(r̄_x e_y) ∨ ⋀r̄_j b).
inline ComplexTerm image_of_sequence(const RuleSequence& s, const ComplexTerm& start) {
  const std::size_t n = s.size();
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);
  BoolMatrix all_ne = BoolMatrix::ones(u), all_nr = BoolMatrix::ones(u);
  BoolVector all_nev = BoolVector::ones(u);
  for (const auto& rv : v) {
    all_ne = all_ne & rv.ne;
    all_nr = all_nr & rv.nr;
    all_nev = all_nev & rv.nev;
  }
  const BoolMatrix added = delta(1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].ne & v[y - 1].p.r_edges(); }, BoolMatrix(u));
  const BoolMatrix removed = delta(1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].nr & v[y - 1].p.e_edges(); }, BoolMatrix(u));
  const BoolVector added_nodes =
      delta(1, n, n, [&](std::size_t x, std::size_t y) { return v[x - 1].nev & v[y - 1].p.r_nodes(); }, BoolVector(u));
  return ComplexTerm(added | (all_ne & start.cert_edges), removed | (all_nr & start.nihil_edges),
                     added_nodes | (all_nev & start.cert_nodes), BoolVector(u), BoolVector::ones(u));
}

inline ComplexTerm image_of_sequence(const RuleSequence& s) { return image_of_sequence(s, initial_digraph(s)); }

/// Default check: ⋁_m ē_m r̄_m M_C(s_m) M_N(s_m) = 0 over the prefixes s_m.
/// The literal ▽ reading is reported as "literal". In addition every prefix's
/// initial digraph and image must be a compatible digraph (no edge on a node
/// that is absent).
inline AnalysisReport sequence_compatibility(const RuleSequence& s) {
  const std::size_t n = s.size();
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);

  std::vector<BoolMatrix> per_prefix;
  std::vector<ComplexTerm> initial, image;
  for (std::size_t m = 1; m <= n; ++m) {
    const RuleSequence pre = s.prefix(m);
    initial.push_back(initial_digraph(pre));
    image.push_back(image_of_sequence(pre, initial.back()));
    per_prefix.push_back(v[m - 1].ne & v[m - 1].nr & initial.back().cert_edges & initial.back().nihil_edges);
  }
  BoolMatrix total(u);
  for (const auto& t : per_prefix) total = total | t;
  const BoolMatrix literal = nabla(1, n, n, [&](std::size_t x, std::size_t) { return per_prefix[x - 1]; }, BoolMatrix(u));

  AnalysisReport r;
  r.kind = "compatibility";
  r.result = ComplexTerm::from_edges(total, BoolMatrix(u));
  r.extra.emplace_back("literal", literal);
  detail::collect_witnesses<BoolMatrix>(r.witnesses, "overlap", n, [&](std::size_t m) { return per_prefix[m - 1]; });

  BoolMatrix dangling(u);
  std::function<BoolMatrix(std::size_t)> dangling_of = [&](std::size_t m) {
    const ComplexTerm& a = initial[m - 1];
    const ComplexTerm& b = image[m - 1];
    const BoolMatrix one = BoolMatrix::ones(u);
    return (complement(bounded_one(a.cert_nodes), one) & a.cert_edges) |
           (complement(bounded_one(b.cert_nodes), one) & b.cert_edges);
  };
  for (std::size_t m = 1; m <= n; ++m) dangling = dangling | dangling_of(m);
  r.extra.emplace_back("dangling", dangling);
  detail::collect_witnesses<BoolMatrix>(r.witnesses, "dangling", n, dangling_of);

  bool rules_ok = true;
  for (const auto& p : s.rules()) {
    if (!production_compatible(p)) {
      rules_ok = false;
      r.notes.push_back("rule '" + p.name() + "' is not compatible on its own");
    }
  }
  r.ok = rules_ok && total.none() && dangling.none();
  return r;
}

enum class Reorder { Advance, Delay };

inline std::string to_string(Reorder mode) { return mode == Reorder::Advance ? "advance" : "delay"; }

/// Advance moves the last applied rule to the front: [p_n, p_1, ..., p_{n-1}].
inline RuleSequence advance(const RuleSequence& s) {
  std::vector<Production> rules;
  rules.push_back(s.rules().back());
  rules.insert(rules.end(), s.rules().begin(), s.rules().end() - 1);
  return RuleSequence(s.name(), std::move(rules));
}

/// Delay moves the first applied rule to the back: [p_2, ..., p_n, p_1].
inline RuleSequence delay(const RuleSequence& s) {
  std::vector<Production> rules(s.rules().begin() + 1, s.rules().end());
  rules.push_back(s.rules().front());
  return RuleSequence(s.name(), std::move(rules));
}

inline RuleSequence reorder(const RuleSequence& s, Reorder mode) {
  if (s.size() < 2) throw RangeError("reordering needs at least two rules");
  return mode == Reorder::Advance ? advance(s) : delay(s);
}

/// F = F⁺ ∨ iF⁻ for moving p_n to the front (advance) or p_1 to the back
/// (delay). Node components use the same formulas with the added nodes
/// r^V as node nihilation, since a rule requires the nodes it adds to be
/// absent.
inline AnalysisReport g_congruence(const RuleSequence& s, Reorder mode) {
  const std::size_t n = s.size();
  if (n < 2) throw RangeError("G-congruence needs at least two rules");
  const UniversePtr& u = s.universe();
  const auto v = detail::views(s);
  auto P = [&](std::size_t k) -> const detail::RuleView& { return v[k - 1]; };

  const std::size_t moved = mode == Reorder::Advance ? n : 1;
  const std::size_t lo = mode == Reorder::Advance ? 1 : 2;
  const std::size_t hi = mode == Reorder::Advance ? n - 1 : n;
  const Production& pm = P(moved).p;

  const BoolMatrix fp =
      pm.lhs().edges &
      nabla(lo, hi, n, [&](std::size_t x, std::size_t y) { return P(x).ne & P(y).p.k() & (P(y).p.r_edges() | pm.e_edges()); },
            BoolMatrix(u));
  const BoolMatrix fm =
      pm.k() &
      nabla(lo, hi, n,
            [&](std::size_t x, std::size_t y) { return P(x).nr & P(y).p.lhs().edges & (P(y).p.e_edges() | pm.r_edges()); },
            BoolMatrix(u));
  const BoolVector fpv =
      pm.lhs().nodes &
      nabla(lo, hi, n,
            [&](std::size_t x, std::size_t y) { return P(x).nev & P(y).p.r_nodes() & (P(y).p.r_nodes() | pm.e_nodes()); },
            BoolVector(u));
  const BoolVector fmv =
      pm.r_nodes() &
      nabla(lo, hi, n,
            [&](std::size_t x, std::size_t y) { return P(x).nrv & P(y).p.lhs().nodes & (P(y).p.e_nodes() | pm.r_nodes()); },
            BoolVector(u));

  AnalysisReport r;
  r.kind = "congruence";
  r.result = ComplexTerm(fp, fm, fpv, fmv, BoolVector::ones(u));
  r.ok = r.result.is_zero();
  const std::string tag = mode == Reorder::Advance ? "F" : "D";
  auto add = [&](const std::string& name, const auto& arr) {
    using A = std::decay_t<decltype(arr)>;
    detail::collect_witnesses<A>(r.witnesses, name, 1, [&](std::size_t) { return arr; });
    for (auto& w : r.witnesses)
      if (w.component == name) w.rules = {moved};
  };
  add(tag + "+", fp);
  add(tag + "-", fm);
  add(tag + "+ nodes", fpv);
  add(tag + "- nodes", fmv);
  return r;
}

struct IndependenceReport {
  bool independent = false;
  bool coherent = false;        // both orders
  bool compatible = false;      // both orders
  bool congruent = false;
  bool images_agree = false;    // images of both orders over M(s)
  RuleSequence reordered;
};

/// Both orders coherent and compatible, and G-congruent. Images of both orders
/// over M(s) are compared explicitly.
inline IndependenceReport sequential_independence(const RuleSequence& s, Reorder mode) {
  IndependenceReport r;
  r.reordered = reorder(s, mode);
  r.coherent = coherence(s).ok && coherence(r.reordered).ok;
  r.compatible = sequence_compatibility(s).ok && sequence_compatibility(r.reordered).ok;
  r.congruent = g_congruence(s, mode).ok;
  const ComplexTerm m = initial_digraph(s);
  r.images_agree = image_of_sequence(s, m) == image_of_sequence(r.reordered, m);
  r.independent = r.coherent && r.compatible && r.congruent;
  return r;
}

}  // namespace mgg
