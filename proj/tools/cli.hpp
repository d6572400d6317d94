#pragma once

// Command dispatch for the mgg tool. Reports are JSON documents with a fixed
// key order so that they can be diffed byte for byte.

#include <cstddef>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mgg/derivation.hpp"
#include "mgg/encoding.hpp"
#include "mgg/grammar.hpp"
#include "mgg/oracle.hpp"
#include "mgg/production.hpp"
#include "mgg/sequence.hpp"

namespace mgg::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

inline Json rows(const BoolMatrix& m) { return Json(m.rows()); }
inline Json values(const BoolVector& v) { return Json(v.values()); }

inline std::string dyadic(const Dyadic& d) { return d.to_binary_string() + " (" + d.to_fraction_string() + ")"; }

inline Json term_json(const ComplexTerm& z) {
  Json j;
  j["certainty"] = rows(z.cert_edges);
  j["nihil"] = rows(z.nihil_edges);
  j["certainty_nodes"] = values(z.cert_nodes);
  j["nihil_nodes"] = values(z.nihil_nodes);
  return j;
}

inline Json graph_json(const Digraph& g) {
  Json j;
  const auto& u = *g.universe();
  Json nodes = Json::array();
  Json edges = Json::array();
  for (std::size_t i = 0; i < u.size(); ++i)
    if (g.nodes.at(i)) nodes.push_back(u.label(i));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < u.size(); ++k)
      if (g.edges.at(i, k)) edges.push_back(Json::array({u.label(i), u.label(k)}));
  j["nodes"] = nodes;
  j["edges"] = edges;
  return j;
}

inline Json sequence_header(const RuleSequence& s) {
  Json j;
  j["sequence"] = s.name();
  Json order = Json::array();
  for (const auto& p : s.rules()) order.push_back(p.name());
  j["application_order"] = order;
  j["composition"] = s.composition();
  j["universe"] = s.universe()->labels();
  return j;
}

inline Json witnesses_json(const std::vector<Witness>& ws, const RuleSequence& s) {
  Json out = Json::array();
  const auto& u = *s.universe();
  for (const auto& w : ws) {
    Json j;
    j["component"] = w.component;
    if (w.col) j["cell"] = Json::array({u.label(w.row), u.label(*w.col)});
    else j["node"] = u.label(w.row);
    Json rules = Json::array();
    for (std::size_t r : w.rules) rules.push_back(s.at(r).name());
    j["rules"] = rules;
    out.push_back(j);
  }
  return out;
}

inline Json report_json(const AnalysisReport& r, const RuleSequence& s) {
  Json j;
  j["kind"] = r.kind;
  j["ok"] = r.ok;
  j["result"] = term_json(r.result);
  for (const auto& [name, m] : r.extra) j[name] = rows(m);
  j["witnesses"] = witnesses_json(r.witnesses, s);
  j["notes"] = r.notes;
  return j;
}

inline Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LookupError("cannot open grammar file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grammar(buf.str());
}

inline int cmd_analyze(const Grammar& g, const std::string& seq, const std::string& check, const std::string& mode,
                       std::ostream& out) {
  const RuleSequence s = g.sequence(seq);
  Json doc;
  doc["command"] = "analyze";
  doc["check"] = check;
  doc.update(sequence_header(s));
  AnalysisReport r;
  if (check == "coherence") {
    r = coherence(s);
  } else if (check == "initial") {
    r = initial_digraph_report(s);
  } else if (check == "image") {
    r = initial_digraph_report(s);
    r.kind = "image";
    r.result = image_of_sequence(s, r.result);
  } else if (check == "compatibility") {
    r = sequence_compatibility(s);
  } else {
    const Reorder m = mode == "delay" ? Reorder::Delay : Reorder::Advance;
    r = g_congruence(s, m);
    doc["mode"] = mode;
    doc["reordered_composition"] = reorder(s, m).composition();
  }
  doc["report"] = report_json(r, s);
  out << doc.dump(2) << '\n';
  return r.ok ? kOk : kCheckFailed;
}

inline Json match_json(const Match& m, const Production& p, const Digraph& host) {
  Json j = Json::object();
  for (std::size_t i = 0; i < m.map.size(); ++i)
    if (m.map[i]) j[p.universe()->label(i)] = host.universe()->label(*m.map[i]);
  return j;
}

inline int cmd_derive(const Grammar& g, const std::string& host_name, const std::string& seq, const std::string& select,
                      std::ostream& out) {
  const RuleSequence s = g.sequence(seq);
  const Digraph& host = g.host(host_name);
  MatchSelector selector = SelectFirst{};
  const bool list_all = select == "all";
  if (select != "first" && !list_all) {
    std::size_t pos = 0;
    const unsigned long k = std::stoul(select, &pos);
    if (pos != select.size()) throw CLI::ValidationError("--select", "expected first, all or a match index");
    selector = SelectIndex{static_cast<std::size_t>(k)};
  }
  std::vector<std::pair<Production, MatchSelector>> steps;
  for (const auto& p : s.rules()) steps.emplace_back(p, selector);
  const DerivationResult res = derive(host, steps);

  Json doc;
  doc["command"] = "derive";
  doc["host"] = host_name;
  doc.update(sequence_header(s));
  doc["select"] = select;
  doc["start"] = graph_json(res.graphs.front());
  Json js = Json::array();
  for (std::size_t k = 0; k < res.steps.size(); ++k) {
    const auto& st = res.steps[k];
    const Production& p = s.at(k + 1);
    const Digraph& in = res.graphs[st.input];
    Json j;
    j["step"] = k + 1;
    j["production"] = st.production;
    j["candidates"] = st.candidates;
    j["match"] = match_json(st.match, p, in);
    if (list_all) {
      Json all = Json::array();
      for (const auto& m : find_matches(p, in)) all.push_back(match_json(m, p, in));
      j["all_matches"] = all;
    }
    j["result"] = graph_json(res.graphs[st.output]);
    js.push_back(j);
  }
  doc["steps"] = js;
  doc["ok"] = res.ok();
  if (res.failure) {
    Json f;
    f["step"] = res.failure->step;
    f["production"] = res.failure->production;
    f["morphism"] = res.failure->morphism;
    f["message"] = res.failure->message;
    doc["failure"] = f;
  }
  doc["final"] = graph_json(res.final_graph());
  out << doc.dump(2) << '\n';
  return res.ok() ? kOk : kCheckFailed;
}

inline std::string complex_value(const DyadicComplex& z) {
  return "re=" + dyadic(z.re) + ", im=" + dyadic(z.im);
}

inline int cmd_encode(const Grammar& g, const std::string& graph, const std::string& production, std::ostream& out) {
  Json doc;
  doc["command"] = "encode";
  ComplexTerm z;
  if (!production.empty()) {
    const Production& p = g.production(production);
    doc["production"] = production;
    doc["term"] = "L + iK";
    z = p.lhs_term();
  } else {
    const Digraph& h = g.host(graph);
    doc["graph"] = graph;
    z = ComplexTerm::from_edges(h.edges, BoolMatrix(h.universe()));
  }
  const DyadicComplex v = ell_complex(z);
  doc["value"] = complex_value(v);
  doc["re"] = dyadic(v.re);
  doc["im"] = dyadic(v.im);
  doc["norm"] = dyadic(norm(z));
  doc["term_matrices"] = term_json(z);
  out << doc.dump(2) << '\n';
  return kOk;
}

inline int cmd_census(std::size_t nodes, std::ostream& out) {
  const SwapCensus c = swap_census(nodes);
  Json doc;
  doc["command"] = "census";
  doc["nodes"] = nodes;
  doc["productions"] = c.production_count;
  doc["swaps"] = c.classes.size();
  doc["arity_histogram"] = c.arity_histogram;
  Json classes = Json::array();
  for (const auto& cls : c.classes) {
    Json j;
    j["nihil"] = rows(cls.swap.nihil());
    j["certainty"] = rows(cls.swap.certainty());
    j["arity"] = cls.swap.arity();
    j["productions"] = cls.production_count;
    classes.push_back(j);
  }
  doc["classes"] = classes;
  out << doc.dump(2) << '\n';
  return kOk;
}

inline int cmd_gasket(int bits, const std::string& path, std::ostream& out) {
  const Bitmap b = gasket_raster(bits);
  const std::string pbm = b.to_pbm();
  if (path == "-") {
    out << pbm;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << pbm;
  Json doc;
  doc["command"] = "gasket";
  doc["bits"] = bits;
  doc["width"] = b.width();
  doc["height"] = b.height();
  doc["set_pixels"] = b.count();
  doc["out"] = path;
  out << doc.dump(2) << '\n';
  return kOk;
}

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matrix graph grammar analysis", "mgg"};
  app.require_subcommand(1);
  std::string grammar_path, seq, check = "coherence", mode = "advance", host, select = "first", graph, production, path;
  std::size_t nodes = 2;
  int bits = 8;

  auto* analyze = app.add_subcommand("analyze", "Sequential analysis of a rule sequence");
  analyze->add_option("--grammar", grammar_path, "Grammar file")->required();
  analyze->add_option("--sequence", seq, "Sequence name")->required();
  analyze->add_option("--check", check)->check(CLI::IsMember({"coherence", "initial", "image", "compatibility", "congruence"}));
  analyze->add_option("--mode", mode)->check(CLI::IsMember({"advance", "delay"}));

  auto* deriv = app.add_subcommand("derive", "Apply a sequence to a host graph");
  deriv->add_option("--grammar", grammar_path, "Grammar file")->required();
  deriv->add_option("--host", host, "Host name")->required();
  deriv->add_option("--sequence", seq, "Sequence name")->required();
  deriv->add_option("--select", select, "first, all, or a match index");

  auto* encode = app.add_subcommand("encode", "Rational encoding of a graph or production");
  encode->add_option("--grammar", grammar_path, "Grammar file")->required();
  auto* og = encode->add_option("--graph", graph, "Host name");
  auto* op = encode->add_option("--production", production, "Production name");
  og->excludes(op);

  auto* census = app.add_subcommand("census", "Swap census over small universes");
  census->add_option("--nodes", nodes)->check(CLI::Range(0, 2));

  auto* gasket = app.add_subcommand("gasket", "Write the gasket raster as a P1 bitmap");
  gasket->add_option("--bits", bits)->check(CLI::Range(1, 16));
  gasket->add_option("--out", path, "Output path, '-' for standard output")->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*analyze) return cmd_analyze(load_grammar(grammar_path), seq, check, mode, out);
    if (*deriv) return cmd_derive(load_grammar(grammar_path), host, seq, select, out);
    if (*encode && graph.empty() && production.empty()) {
      err << "error: encode needs --graph or --production\n";
      return kUsage;
    }
    if (*encode) return cmd_encode(load_grammar(grammar_path), graph, production, out);
    if (*census) return cmd_census(nodes, out);
    if (*gasket) return cmd_gasket(bits, path, out);
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument&) {
    err << "error: --select expects first, all or a match index\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace mgg::cli
