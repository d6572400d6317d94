#pragma once

// Line-oriented grammar files.
//
//   # comment
//   nodes 1 2 3
//   production q1
//     lhs nodes 1 2 3
//     lhs edges 1->1 1->2 3->1 3->2
//     rhs nodes 1 2
//     rhs edges 1->1 2->1
//   end
//   sequence s q1 q2        (application order: q1 first)
//   host G
//     nodes a b
//     edges a->b
//   end
//
// Productions use the grammar-wide node universe. Hosts declare their own.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mgg/boolmat.hpp"
#include "mgg/error.hpp"
#include "mgg/production.hpp"
#include "mgg/sequence.hpp"

namespace mgg {

struct SequenceDecl {
  std::string name;
  std::vector<std::string> rules;

  friend bool operator==(const SequenceDecl&, const SequenceDecl&) = default;
};

struct HostDecl {
  std::string name;
  Digraph graph;

  friend bool operator==(const HostDecl&, const HostDecl&) = default;
};

class Grammar {
 public:
  Grammar() : universe_(make_universe(std::vector<std::string>{})) {}

  const UniversePtr& universe() const noexcept { return universe_; }
  const std::vector<Production>& productions() const noexcept { return productions_; }
  const std::vector<SequenceDecl>& sequences() const noexcept { return sequences_; }
  const std::vector<HostDecl>& hosts() const noexcept { return hosts_; }

  const Production& production(const std::string& name) const {
    for (const auto& p : productions_)
      if (p.name() == name) return p;
    throw LookupError("unknown production '" + name + "'");
  }

  const Digraph& host(const std::string& name) const {
    for (const auto& h : hosts_)
      if (h.name == name) return h.graph;
    throw LookupError("unknown host '" + name + "'");
  }

  RuleSequence sequence(const std::string& name) const {
    for (const auto& s : sequences_) {
      if (s.name != name) continue;
      std::vector<Production> rules;
      for (const auto& r : s.rules) rules.push_back(production(r));
      return RuleSequence(name, std::move(rules));
    }
    throw LookupError("unknown sequence '" + name + "'");
  }

  friend bool operator==(const Grammar& a, const Grammar& b) {
    if (!same_universe(a.universe_, b.universe_) || a.sequences_ != b.sequences_ || a.hosts_ != b.hosts_) return false;
    if (a.productions_.size() != b.productions_.size()) return false;
    for (std::size_t i = 0; i < a.productions_.size(); ++i) {
      const auto& p = a.productions_[i];
      const auto& q = b.productions_[i];
      if (p.name() != q.name() || !(p.lhs() == q.lhs()) || !(p.rhs() == q.rhs())) return false;
    }
    return true;
  }

 private:
  friend Grammar parse_grammar(const std::string& text);

  UniversePtr universe_;
  std::vector<Production> productions_;
  std::vector<SequenceDecl> sequences_;
  std::vector<HostDecl> hosts_;
};

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line.substr(0, line.find('#')));
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline std::size_t resolve(const NodeUniverse& u, const std::string& label, std::size_t line) {
  const auto idx = u.find(label);
  if (!idx) throw ParseError(line, "unknown node '" + label + "'");
  return *idx;
}

inline std::pair<std::size_t, std::size_t> parse_edge(const NodeUniverse& u, const std::string& tok, std::size_t line) {
  const auto arrow = tok.find("->");
  if (arrow == std::string::npos || arrow == 0 || arrow + 2 >= tok.size() || tok.find("->", arrow + 2) != std::string::npos) {
    throw ParseError(line, "malformed edge '" + tok + "', expected SOURCE->TARGET");
  }
  return {resolve(u, tok.substr(0, arrow), line), resolve(u, tok.substr(arrow + 2), line)};
}

inline void read_nodes(BoolVector& v, const std::vector<std::string>& t, std::size_t from, std::size_t line) {
  for (std::size_t k = from; k < t.size(); ++k) v.set(resolve(*v.universe(), t[k], line), true);
}

inline void read_edges(BoolMatrix& m, const std::vector<std::string>& t, std::size_t from, std::size_t line) {
  for (std::size_t k = from; k < t.size(); ++k) {
    const auto [i, j] = parse_edge(*m.universe(), t[k], line);
    m.set(i, j, true);
  }
}

inline void check_name(const std::vector<std::string>& t, std::size_t line) {
  if (t.size() != 2) throw ParseError(line, "'" + t[0] + "' takes exactly one name");
}

}  // namespace detail

inline Grammar parse_grammar(const std::string& text) {
  Grammar g;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  bool have_nodes = false;

  enum class Block { None, Production, Host };
  Block block = Block::None;
  std::size_t block_line = 0;
  std::string block_name;
  Digraph lhs, rhs, host;
  std::map<std::string, std::size_t> names;  // all declared names, for duplicates

  auto declare = [&](const std::string& name) {
    if (!names.emplace(name, line).second) {
      throw ParseError(line, "duplicate name '" + name + "' (first declared on line " + std::to_string(names[name]) + ")");
    }
  };

  while (std::getline(in, raw)) {
    ++line;
    const auto t = detail::tokens(raw);
    if (t.empty()) continue;
    const std::string& kw = t[0];

    if (block == Block::Production) {
      if (kw == "end") {
        g.productions_.push_back(Production::from_static(block_name, lhs, rhs));
        block = Block::None;
      } else if ((kw == "lhs" || kw == "rhs") && t.size() >= 2 && (t[1] == "nodes" || t[1] == "edges")) {
        Digraph& d = kw == "lhs" ? lhs : rhs;
        if (t[1] == "nodes") detail::read_nodes(d.nodes, t, 2, line);
        else detail::read_edges(d.edges, t, 2, line);
      } else {
        throw ParseError(line, "expected 'lhs nodes', 'lhs edges', 'rhs nodes', 'rhs edges' or 'end'");
      }
      continue;
    }
    if (block == Block::Host) {
      if (kw == "end") {
        g.hosts_.push_back(HostDecl{block_name, host});
        block = Block::None;
      } else if (kw == "nodes") {
        if (host.nodes.dim() != 0 || host.universe()->size() != 0) throw ParseError(line, "host nodes declared twice");
        std::vector<std::string> labels(t.begin() + 1, t.end());
        try {
          const UniversePtr u = make_universe(labels);
          host = Digraph(u);
          host.nodes = BoolVector::ones(u);
        } catch (const Error& err) {
          throw ParseError(line, err.what());
        }
      } else if (kw == "edges") {
        detail::read_edges(host.edges, t, 1, line);
      } else {
        throw ParseError(line, "expected 'nodes', 'edges' or 'end'");
      }
      continue;
    }

    if (kw == "nodes") {
      if (have_nodes) throw ParseError(line, "node universe declared twice");
      try {
        g.universe_ = make_universe(std::vector<std::string>(t.begin() + 1, t.end()));
      } catch (const Error& err) {
        throw ParseError(line, err.what());
      }
      for (const auto& l : g.universe_->labels()) {
        if (l.find("->") != std::string::npos) throw ParseError(line, "node label '" + l + "' contains '->'");
      }
      have_nodes = true;
    } else if (kw == "production") {
      detail::check_name(t, line);
      if (!have_nodes) throw ParseError(line, "production declared before the node universe");
      declare(t[1]);
      block = Block::Production;
      block_line = line;
      block_name = t[1];
      lhs = Digraph(g.universe_);
      rhs = Digraph(g.universe_);
    } else if (kw == "host") {
      detail::check_name(t, line);
      declare(t[1]);
      block = Block::Host;
      block_line = line;
      block_name = t[1];
      host = Digraph(make_universe(std::vector<std::string>{}));
    } else if (kw == "sequence") {
      if (t.size() < 3) throw ParseError(line, "sequence needs a name and at least one production");
      declare(t[1]);
      SequenceDecl s{t[1], {}};
      for (std::size_t k = 2; k < t.size(); ++k) {
        const bool known = std::any_of(g.productions_.begin(), g.productions_.end(),
                                       [&](const Production& p) { return p.name() == t[k]; });
        if (!known) throw ParseError(line, "unknown production '" + t[k] + "'");
        s.rules.push_back(t[k]);
      }
      g.sequences_.push_back(std::move(s));
    } else {
      throw ParseError(line, "unknown keyword '" + kw + "'");
    }
  }
  if (block != Block::None) throw ParseError(block_line, "block '" + block_name + "' is missing 'end'");
  return g;
}

namespace detail {

inline std::string node_list(const BoolVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v.at(i)) out += " " + v.universe()->label(i);
  return out;
}

inline std::string edge_list(const BoolMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      if (m.at(i, j)) out += " " + m.universe()->label(i) + "->" + m.universe()->label(j);
  return out;
}

}  // namespace detail

/// Canonical text form; parse_grammar(serialize_grammar(g)) == g.
inline std::string serialize_grammar(const Grammar& g) {
  std::ostringstream out;
  out << "nodes";
  for (const auto& l : g.universe()->labels()) out << ' ' << l;
  out << '\n';
  for (const auto& p : g.productions()) {
    out << "\nproduction " << p.name() << '\n';
    out << "  lhs nodes" << detail::node_list(p.lhs().nodes) << '\n';
    out << "  lhs edges" << detail::edge_list(p.lhs().edges) << '\n';
    out << "  rhs nodes" << detail::node_list(p.rhs().nodes) << '\n';
    out << "  rhs edges" << detail::edge_list(p.rhs().edges) << '\n';
    out << "end\n";
  }
  for (const auto& h : g.hosts()) {
    out << "\nhost " << h.name << '\n';
    out << "  nodes";
    for (const auto& l : h.graph.universe()->labels()) out << ' ' << l;
    out << '\n';
    out << "  edges" << detail::edge_list(h.graph.edges) << '\n';
    out << "end\n";
  }
  if (!g.sequences().empty()) out << '\n';
  for (const auto& s : g.sequences()) {
    out << "sequence " << s.name;
    for (const auto& r : s.rules) out << ' ' << r;
    out << '\n';
  }
  return out.str();
}

}  // namespace mgg
