#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gon/amalgam.hpp"
#include "gon/completion.hpp"
#include "gon/gallery.hpp"
#include "gon/gon_format.hpp"
#include "gon/graph.hpp"
#include "gon/isomorphism.hpp"
#include "gon/metrics.hpp"
#include "gon/normalize.hpp"
#include "gon/polygon.hpp"
#include "gon/rank.hpp"

namespace gon {
namespace cli {

using nlohmann::json;

// Exit codes shared by every subcommand.
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

struct Budgets {
  long long budget = 1000000;
  int stages = 3;
  int cap = 12;
  std::optional<long long> seed;
};

// Collects the report as parallel text lines and JSON fields so both output
// modes carry the same content. No timestamps, no ordering surprises.
struct Report {
  json j = json::object();
  std::vector<std::string> lines;
  std::vector<std::string> warnings;

  void warn(const std::string& msg) { warnings.push_back(msg); }

  void put(const std::string& key, const json& value, const std::string& line) {
    j[key] = value;
    lines.push_back(line);
  }

  void flush(std::ostream& out, bool as_json, const Budgets& b) {
    json bj = {{"budget", b.budget}, {"stages", b.stages}, {"cap", b.cap}};
    std::string bl = "budgets: budget=" + std::to_string(b.budget) +
                     " stages=" + std::to_string(b.stages) + " cap=" + std::to_string(b.cap);
    if (b.seed) {
      bj["seed"] = *b.seed;
      bl += " seed=" + std::to_string(*b.seed);
    }
    if (as_json) {
      if (!warnings.empty()) j["warnings"] = warnings;
      j["budgets"] = bj;
      out << j.dump(2) << "\n";
      return;
    }
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    for (const auto& l : lines) out << l << "\n";
    out << bl << "\n";
  }
};

namespace detail {

inline std::string join(const std::vector<std::string>& ids) {
  std::string s;
  for (const auto& id : ids) {
    if (!s.empty()) s += " ";
    s += id;
  }
  return s;
}

inline IncidenceGraph with_gonality(const IncidenceGraph& g, int n) {
  GraphBuilder b(n);
  for (const auto& id : g.ids()) b.add_vertex(id, g.part(id), g.provenance(id));
  for (const auto& [u, v] : g.edges()) b.add_edge(u, v);
  return b.build();
}

inline IncidenceGraph load_graph(const std::string& path, std::optional<int> n_override,
                                 Report& rep) {
  IncidenceGraph g = parse_gon(read_text_file(path));
  if (n_override && *n_override != g.n()) {
    rep.warn("gonality " + std::to_string(*n_override) + " overrides header gonality " +
             std::to_string(g.n()) + " in " + path);
    return with_gonality(g, *n_override);
  }
  return g;
}

// One vertex id per line; blanks skipped.
inline std::vector<std::string> load_vertex_set(const std::string& path,
                                                const IncidenceGraph& g) {
  std::istringstream in(read_text_file(path));
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!g.has(line)) throw Error("UNKNOWN_VERTEX", "'" + line + "' (from " + path + ")");
    ids.push_back(line);
  }
  return ids;
}

// "m <src> <dst>" per line.
inline std::map<std::string, std::string> load_map(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::map<std::string, std::string> m;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag, src, dst;
    if (!(ls >> tag >> src >> dst) || tag != "m")
      throw Error("BAD_MAP", "expected 'm <src> <dst>' in " + path + ", got '" + line + "'");
    if (!m.emplace(src, dst).second)
      throw Error("BAD_MAP", "'" + src + "' mapped twice in " + path);
  }
  return m;
}

inline std::string to_dot(const IncidenceGraph& g) {
  std::ostringstream out;
  out << "graph gon {\n";
  for (const auto& id : g.ids())
    out << "  \"" << id << "\" [shape=" << (g.part(id) == Part::Point ? "circle" : "box")
        << "];\n";
  for (const auto& [u, v] : g.edges()) out << "  \"" << u << "\" -- \"" << v << "\";\n";
  out << "}\n";
  return out.str();
}

inline void maybe_write_dot(const std::string& path, const IncidenceGraph& g, Report& rep) {
  if (path.empty()) return;
  write_text_file(path, to_dot(g));
  rep.put("dot", path, "wrote dot: " + path);
}

inline void report_stuck(const std::vector<std::string>& stuck, Report& rep) {
  rep.put("stuck_size", stuck.size(),
          "stuck core: " + std::to_string(stuck.size()) + " vertices");
  rep.put("stuck", stuck, "stuck: " + join(stuck));
}

inline std::string gon_word(const IncidenceGraph& g) {
  return "generalized " + std::to_string(g.n()) + "-gon";
}

}  // namespace detail

// -- command handlers --------------------------------------------------------

inline int cmd_check(const std::string& what, const IncidenceGraph& g, const Budgets& b,
                     Report& rep) {
  if (what == "nondegenerate") {
    NondegeneracyReport r = check_nondegenerate(g, b.budget);
    if (r.verdict == Ternary::Unknown) {
      rep.put("verdict", "unknown", "nondegenerate: unknown");
      return kExitUnknown;
    }
    bool yes = r.verdict == Ternary::Yes;
    rep.put("verdict", yes, std::string("nondegenerate: ") + (yes ? "yes" : "no"));
    if (yes)
      rep.put("witness", r.witness.vertices, "witness: " + detail::join(r.witness.vertices));
    return yes ? kExitTrue : kExitFalse;
  }

  CheckReport r = what == "partial" ? check_partial(g)
                  : what == "weak"  ? check_weak(g)
                                    : check_thick(g);
  rep.put("verdict", r.verdict,
          what + " " + detail::gon_word(g) + ": " + (r.verdict ? "yes" : "no"));
  if (!r.verdict) {
    json fl = json::array();
    for (const auto& f : r.failures) {
      fl.push_back({{"axiom", f.axiom}, {"witness", f.witness}});
      rep.lines.push_back("failure " + f.axiom + ": " + detail::join(f.witness));
    }
    rep.j["failures"] = fl;
    return kExitFalse;
  }
  return kExitTrue;
}

inline int cmd_delta(const IncidenceGraph& g, Report& rep) {
  long long d = delta(g);
  rep.put("delta", d, "delta=" + std::to_string(d));
  return kExitTrue;
}

inline int cmd_strong(const IncidenceGraph& sub, const IncidenceGraph& whole, Report& rep) {
  DeltaReport r = is_n_strong(sub, whole);
  rep.put("verdict", r.strong(), std::string("strong: ") + (r.strong() ? "yes" : "no"));
  rep.put("relative_delta", r.delta, "relative-delta=" + std::to_string(r.delta));
  if (!r.strong()) {
    rep.put("witness", *r.witness, "witness: " + detail::join(*r.witness));
    return kExitFalse;
  }
  return kExitTrue;
}

inline int cmd_complete(const IncidenceGraph& g, int stages, const std::string& out_dir,
                        Report& rep) {
  CompletionTrace t = complete(g, stages);
  json stage_list = json::array();
  for (size_t i = 0; i < t.stages.size(); ++i) {
    const IncidenceGraph& s = t.stages[i].snapshot;
    long long d = delta(s);
    stage_list.push_back({{"vertices", s.vertex_count()},
                          {"edges", s.edge_count()},
                          {"arcs", t.stages[i].arcs.size()},
                          {"delta", d}});
    rep.lines.push_back("stage " + std::to_string(i) + ": vertices=" +
                        std::to_string(s.vertex_count()) + " edges=" +
                        std::to_string(s.edge_count()) + " arcs=" +
                        std::to_string(t.stages[i].arcs.size()) + " delta=" + std::to_string(d));
  }
  rep.j["stages"] = stage_list;
  rep.put("complete", t.complete, std::string("complete: ") + (t.complete ? "yes" : "no"));
  write_trace(t, out_dir);
  rep.put("wrote", out_dir, "wrote: " + out_dir);
  return kExitTrue;
}

inline int cmd_open(const IncidenceGraph& g, const std::string& over_file,
                    const std::string& cert_out, Report& rep) {
  OpenReport r;
  if (over_file.empty()) {
    r = is_open(g);
  } else {
    std::vector<std::string> base = detail::load_vertex_set(over_file, g);
    std::set<std::string> base_set(base.begin(), base.end());
    std::vector<std::string> rest;
    for (const auto& id : g.ids())
      if (!base_set.count(id)) rest.push_back(id);
    r = is_open_over(rest, base, g);
  }
  rep.put("verdict", r.open, std::string("open: ") + (r.open ? "yes" : "no"));
  if (!r.open) {
    detail::report_stuck(r.stuck, rep);
    return kExitFalse;
  }
  rep.put("steps", r.cert.steps.size(), "steps: " + std::to_string(r.cert.steps.size()));
  if (!cert_out.empty()) {
    write_text_file(cert_out, serialize_hf_certificate(r.cert));
    rep.put("certificate", cert_out, "wrote certificate: " + cert_out);
  }
  return kExitTrue;
}

inline int cmd_closed(const IncidenceGraph& g, const std::string& a_file,
                      const std::string& b_file, Report& rep) {
  std::vector<std::string> A = detail::load_vertex_set(a_file, g);
  std::vector<std::string> B = detail::load_vertex_set(b_file, g);
  bool closed = is_closed_over(B, A, g);
  rep.put("verdict", closed, std::string("closed: ") + (closed ? "yes" : "no"));
  if (closed) return kExitTrue;

  // dig out the absorbable piece so the refusal can be double-checked
  std::vector<std::string> both = A;
  both.insert(both.end(), B.begin(), B.end());
  IncidenceGraph sub = g.induced(both);
  std::set<std::string> b_set(B.begin(), B.end());
  for (const auto& id : B)
    if (sub.neighbor_ids(id).size() <= 1) {
      rep.put("witness_loose", id, "witness loose: " + id);
      return kExitFalse;
    }
  for (const auto& arc : clean_arcs(sub)) {
    bool inside = std::all_of(arc.interior.begin(), arc.interior.end(),
                              [&](const std::string& v) { return b_set.count(v) > 0; });
    if (inside) {
      rep.put("witness_arc", arc.interior, "witness arc: " + detail::join(arc.interior));
      return kExitFalse;
    }
  }
  return kExitFalse;
}

inline int cmd_amalgam(const IncidenceGraph& B, const IncidenceGraph& C,
                       const IncidenceGraph& A, const std::string& map_b_file,
                       const std::string& map_c_file, std::optional<int> stages,
                       const std::string& out_path, const Budgets& bud, Report& rep) {
  AmalgamSpec spec;
  spec.A = A;
  spec.B = B;
  spec.C = C;
  spec.into_b = detail::load_map(map_b_file);
  spec.into_c = detail::load_map(map_c_file);

  auto size_line = [&](const IncidenceGraph& g) {
    rep.j["vertices"] = g.vertex_count();
    rep.put("edges", g.edge_count(),
            "amalgam: " + std::to_string(g.vertex_count()) + " vertices, " +
                std::to_string(g.edge_count()) + " edges");
  };

  if (!stages) {
    FreeAmalgamResult r = free_amalgam(spec);
    size_line(r.graph);
    rep.put("disconnected", r.disconnected,
            std::string("disconnected: ") + (r.disconnected ? "yes" : "no"));
    if (!out_path.empty()) {
      write_text_file(out_path, serialize_gon(r.graph));
      rep.put("wrote", out_path, "wrote: " + out_path);
    }
    return kExitTrue;
  }

  CanonicalAmalgamResult r = canonical_amalgam(spec, *stages, bud.budget);
  size_line(r.trace.last());
  rep.put("closed_in_b", r.closed_in_b,
          std::string("closed-in-b: ") + (r.closed_in_b ? "yes" : "no"));
  rep.put("closed_in_c", r.closed_in_c,
          std::string("closed-in-c: ") + (r.closed_in_c ? "yes" : "no"));
  std::string nd = r.nondegenerate == Ternary::Yes  ? "yes"
                   : r.nondegenerate == Ternary::No ? "no"
                                                    : "unknown";
  rep.put("nondegenerate", nd, "nondegenerate: " + nd);
  if (!out_path.empty()) {
    write_trace(r.trace, out_path);
    rep.put("wrote", out_path, "wrote: " + out_path);
  }
  return kExitTrue;
}

inline int cmd_normalize(const IncidenceGraph& g, const std::string& cert_out, Report& rep) {
  OpenReport open = is_open(g);
  if (!open.open) {
    rep.put("verdict", false, "open: no");
    detail::report_stuck(open.stuck, rep);
    return kExitFalse;
  }
  HatRackResult r = normalize_to_hatrack(g);
  rep.put("spine", r.rack.spine_length, "spine: " + std::to_string(r.rack.spine_length));
  std::string pend;
  json pj = json::object();
  for (const auto& [pos, count] : r.rack.pendants) {
    if (!pend.empty()) pend += " ";
    pend += std::to_string(pos) + ":" + std::to_string(count);
    pj[std::to_string(pos)] = count;
  }
  rep.put("pendants", pj, "pendants: " + (pend.empty() ? "none" : pend));
  rep.put("delta", r.rack.delta(), "delta: " + std::to_string(r.rack.delta()));
  rep.put("free_ready", r.rack.free_ready(),
          std::string("free-ready: ") + (r.rack.free_ready() ? "yes" : "no"));
  rep.put("steps", r.cert.steps.size(), "steps: " + std::to_string(r.cert.steps.size()));
  if (!cert_out.empty()) {
    write_text_file(cert_out, serialize_certificate(r.cert));
    rep.put("certificate", cert_out, "wrote certificate: " + cert_out);
  }
  return kExitTrue;
}

inline int cmd_classify(const IncidenceGraph& g, const Budgets& b, Report& rep) {
  OpenReport open = is_open(g);
  if (!open.open) {
    rep.put("verdict", false, "open: no");
    detail::report_stuck(open.stuck, rep);
    return kExitFalse;
  }
  Classification c;
  try {
    c = classify_free(g, b.budget);
  } catch (const Error& e) {
    if (std::string(e.code()) == "DEGENERATE") {
      rep.put("degenerate", true, "degenerate: yes");
      rep.put("reason", e.what(), std::string(e.what()));
      return kExitFalse;
    }
    throw;
  }
  rep.put("k", c.k, "k=" + std::to_string(c.k));
  rep.put("diagnostic", c.diagnostic, std::string("diagnostic: ") + (c.diagnostic ? "yes" : "no"));
  rep.put("statement", c.statement, c.statement);
  return kExitTrue;
}

inline int cmd_iso(const IncidenceGraph& a, const IncidenceGraph& b, Report& rep) {
  auto w = isomorphism_witness(a, b);
  rep.put("verdict", w.has_value(), std::string("isomorphic: ") + (w ? "yes" : "no"));
  if (!w) {
    rep.j["left_edges"] = a.edge_count();
    rep.put("left_vertices", a.vertex_count(),
            "left: " + std::to_string(a.vertex_count()) + " vertices, " +
                std::to_string(a.edge_count()) + " edges");
    rep.j["right_edges"] = b.edge_count();
    rep.put("right_vertices", b.vertex_count(),
            "right: " + std::to_string(b.vertex_count()) + " vertices, " +
                std::to_string(b.edge_count()) + " edges");
    return kExitFalse;
  }
  std::map<std::string, std::string> sorted(w->begin(), w->end());
  json mj = json::object();
  for (const auto& [src, dst] : sorted) {
    mj[src] = dst;
    rep.lines.push_back("m " + src + " " + dst);
  }
  rep.j["map"] = mj;
  return kExitTrue;
}

namespace detail {

inline void report_bundle(const WitnessBundle& b, const std::string& base_path, Report& rep) {
  int passed = 0;
  json aj = json::object();
  for (const auto& a : b.assertions) {
    aj[a.name] = a.checked ? "pass" : "fail";
    rep.lines.push_back("assertion " + a.name + ": " + (a.checked ? "pass" : "fail"));
    if (a.checked) ++passed;
  }
  rep.j["assertions"] = aj;
  rep.put("assertions_passed", passed,
          "assertions: " + std::to_string(passed) + "/" + std::to_string(b.assertions.size()) +
              " pass");
  write_text_file(base_path + ".gon", serialize_gon(b.graph));
  write_text_file(base_path + ".sets.txt", serialize_sets(b));
  write_text_file(base_path + ".asserts.txt", serialize_asserts(b));
  std::vector<std::string> files = {base_path + ".gon", base_path + ".sets.txt",
                                    base_path + ".asserts.txt"};
  rep.put("wrote", files, "wrote: " + join(files));
}

}  // namespace detail

inline int cmd_example(const std::string& name, int n, int k, int rungs, int stages,
                       const std::string& out_dir, const std::string& dot_out, Report& rep,
                       std::ostream& err) {
  std::filesystem::create_directories(out_dir);
  std::string base = out_dir + "/";

  if (name == "fano") {
    IncidenceGraph g = fano_plane();
    rep.put("delta", delta(g), "delta=" + std::to_string(delta(g)));
    write_text_file(base + "fano.gon", serialize_gon(g));
    rep.put("wrote", base + "fano.gon", "wrote: " + base + "fano.gon");
    detail::maybe_write_dot(dot_out, g, rep);
    return kExitTrue;
  }

  if (n == 0) {
    err << "error: example '" << name << "' needs --n\n";
    return kExitUsage;
  }

  if (name == "gamma-k") {
    if (k == 0) {
      err << "error: example 'gamma-k' needs --k\n";
      return kExitUsage;
    }
    IncidenceGraph g = gamma_k(n, k);
    rep.put("delta", delta(g), "delta=" + std::to_string(delta(g)));
    std::string path = base + "gamma-" + std::to_string(n) + "-" + std::to_string(k) + ".gon";
    write_text_file(path, serialize_gon(g));
    rep.put("wrote", path, "wrote: " + path);
    detail::maybe_write_dot(dot_out, g, rep);
    return kExitTrue;
  }

  if (name == "free-gon") {
    if (k == 0) {
      err << "error: example 'free-gon' needs --k\n";
      return kExitUsage;
    }
    CompletionTrace t = free_gon(n, k, stages);
    json dl = json::array();
    for (size_t i = 0; i < t.stages.size(); ++i) {
      long long d = delta(t.stages[i].snapshot);
      dl.push_back(d);
      rep.lines.push_back("stage " + std::to_string(i) + ": delta=" + std::to_string(d));
    }
    rep.j["stage_deltas"] = dl;
    std::string dir = base + "free-gon-" + std::to_string(n) + "-" + std::to_string(k);
    write_trace(t, dir);
    rep.put("wrote", dir, "wrote: " + dir);
    detail::maybe_write_dot(dot_out, t.last(), rep);
    return kExitTrue;
  }

  if (name == "acl-dcl") {
    WitnessBundle b = acl_dcl_witness(n);
    detail::report_bundle(b, base + "acl-dcl-" + std::to_string(n), rep);
    detail::maybe_write_dot(dot_out, b.graph, rep);
    return kExitTrue;
  }

  // ladder
  WitnessBundle b = ladder_prefix(n, rungs, stages);
  detail::report_bundle(b, base + "ladder-" + std::to_string(n) + "-" + std::to_string(rungs),
                        rep);
  detail::maybe_write_dot(dot_out, b.graph, rep);
  return kExitTrue;
}

// -- dispatch ------------------------------------------------------------------

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"generalized n-gon toolkit"};
  app.require_subcommand(1);

  bool as_json = false;
  Budgets bud;
  bool budget_given = false;
  long long budget_flag = bud.budget;
  long long seed_flag = 0;
  bool seed_given = false;
  std::optional<int> n_override;
  int n_flag = 0;
  std::string dot_out;

  auto add_common = [&](CLI::App* sub, bool graph_flags = true) {
    sub->add_flag("--json", as_json, "emit one JSON object instead of text lines");
    sub->add_option("--budget", budget_flag, "expansion budget for searches")
        ->each([&](const std::string&) { budget_given = true; });
    sub->add_option("--cap", bud.cap, "size cap for subset searches");
    sub->add_option("--seed", seed_flag, "seed for randomized suites")
        ->each([&](const std::string&) { seed_given = true; });
    if (graph_flags) {
      sub->add_option("--n", n_flag, "override the gonality from the file header");
      sub->add_option("--dot", dot_out, "also write the input graph in DOT form");
    }
  };

  std::string check_what, file_a, file_b, over_file, cert_out, out_path;
  std::string a_set_file, b_set_file, map_b_file, map_c_file, example_name;
  int stages_flag = bud.stages;
  bool stages_given = false;
  int ex_n = 0, ex_k = 0, ex_rungs = 0;

  CLI::App* c_check = app.add_subcommand("check", "verify a polygon property");
  c_check->add_option("property", check_what, "partial, weak, thick, or nondegenerate")
      ->required()
      ->check(CLI::IsMember({"partial", "weak", "thick", "nondegenerate"}));
  c_check->add_option("file", file_a, "GON input")->required();
  add_common(c_check);

  CLI::App* c_delta = app.add_subcommand("delta", "print the rank of a graph");
  c_delta->add_option("file", file_a, "GON input")->required();
  add_common(c_delta);

  CLI::App* c_strong = app.add_subcommand("strong", "test whether SUB sits strongly in WHOLE");
  c_strong->add_option("sub", file_a, "GON input for the base")->required();
  c_strong->add_option("whole", file_b, "GON input for the ambient graph")->required();
  add_common(c_strong);

  CLI::App* c_complete = app.add_subcommand("complete", "run staged geodesic completion");
  c_complete->add_option("file", file_a, "GON input")->required();
  c_complete->add_option("--stages", stages_flag, "number of stages")
      ->each([&](const std::string&) { stages_given = true; });
  c_complete->add_option("-o,--out", out_path, "directory for the trace")->required();
  add_common(c_complete);

  CLI::App* c_open = app.add_subcommand("open", "test hyper-freeness");
  c_open->add_option("file", file_a, "GON input")->required();
  c_open->add_option("--over", over_file, "base vertex set, one id per line");
  c_open->add_option("--cert", cert_out, "write the deletion certificate here");
  add_common(c_open);

  CLI::App* c_closed = app.add_subcommand("closed", "test closedness of B over A");
  c_closed->add_option("file", file_a, "GON input")->required();
  c_closed->add_option("--a", a_set_file, "vertex set A, one id per line")->required();
  c_closed->add_option("--b", b_set_file, "vertex set B, one id per line")->required();
  add_common(c_closed);

  CLI::App* c_amalgam = app.add_subcommand("amalgam", "glue B and C over a shared part A");
  c_amalgam->add_option("b", file_a, "GON input for B")->required();
  c_amalgam->add_option("c", file_b, "GON input for C")->required();
  c_amalgam->add_option("--over", over_file, "GON input for A")->required();
  c_amalgam->add_option("--map-b", map_b_file, "embedding of A into B")->required();
  c_amalgam->add_option("--map-c", map_c_file, "embedding of A into C")->required();
  c_amalgam->add_option("--stages", stages_flag, "also complete the amalgam this many stages")
      ->each([&](const std::string&) { stages_given = true; });
  c_amalgam->add_option("-o,--out", out_path, "output file (or trace directory with --stages)");
  add_common(c_amalgam, false);

  CLI::App* c_normalize = app.add_subcommand("normalize", "reduce a generator to a hat rack");
  c_normalize->add_option("file", file_a, "GON input")->required();
  c_normalize->add_option("--cert", cert_out, "write the step certificate here");
  add_common(c_normalize);

  CLI::App* c_classify = app.add_subcommand("classify", "name the free completion of a generator");
  c_classify->add_option("file", file_a, "GON input")->required();
  add_common(c_classify);

  CLI::App* c_iso = app.add_subcommand("iso", "test two graphs for isomorphism");
  c_iso->add_option("g1", file_a, "GON input")->required();
  c_iso->add_option("g2", file_b, "GON input")->required();
  add_common(c_iso, false);

  CLI::App* c_example = app.add_subcommand("example", "build a stock graph or witness bundle");
  c_example->add_option("name", example_name, "gamma-k, free-gon, acl-dcl, ladder, or fano")
      ->required()
      ->check(CLI::IsMember({"gamma-k", "free-gon", "acl-dcl", "ladder", "fano"}));
  c_example->add_option("--n", ex_n, "gonality");
  c_example->add_option("--k", ex_k, "path length");
  c_example->add_option("--rungs", ex_rungs, "ladder rungs");
  c_example->add_option("--stages", stages_flag, "completion stages")
      ->each([&](const std::string&) { stages_given = true; });
  c_example->add_option("-o,--out", out_path, "output directory");
  c_example->add_option("--dot", dot_out, "also write the built graph in DOT form");
  c_example->add_flag("--json", as_json, "emit one JSON object instead of text lines");
  c_example->add_option("--budget", budget_flag, "expansion budget for searches")
      ->each([&](const std::string&) { budget_given = true; });
  c_example->add_option("--cap", bud.cap, "size cap for subset searches");
  c_example->add_option("--seed", seed_flag, "seed for randomized suites")
      ->each([&](const std::string&) { seed_given = true; });

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitTrue : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (const char* env = std::getenv("GON_BUDGET")) {
    try {
      bud.budget = std::stoll(env);
    } catch (const std::exception&) {
      err << "error: GON_BUDGET must be an integer, got '" << env << "'\n";
      return kExitUsage;
    }
  }
  if (budget_given) bud.budget = budget_flag;
  if (stages_given) bud.stages = stages_flag;
  if (seed_given) bud.seed = seed_flag;
  if (n_flag != 0) n_override = n_flag;

  Report rep;
  try {
    int code = kExitUsage;
    if (app.got_subcommand(c_check)) {
      rep.j["command"] = "check";
      rep.j["property"] = check_what;
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_check(check_what, g, bud, rep);
    } else if (app.got_subcommand(c_delta)) {
      rep.j["command"] = "delta";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_delta(g, rep);
    } else if (app.got_subcommand(c_strong)) {
      rep.j["command"] = "strong";
      IncidenceGraph sub = detail::load_graph(file_a, n_override, rep);
      IncidenceGraph whole = detail::load_graph(file_b, n_override, rep);
      code = cmd_strong(sub, whole, rep);
    } else if (app.got_subcommand(c_complete)) {
      rep.j["command"] = "complete";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_complete(g, bud.stages, out_path, rep);
    } else if (app.got_subcommand(c_open)) {
      rep.j["command"] = "open";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_open(g, over_file, cert_out, rep);
    } else if (app.got_subcommand(c_closed)) {
      rep.j["command"] = "closed";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_closed(g, a_set_file, b_set_file, rep);
    } else if (app.got_subcommand(c_amalgam)) {
      rep.j["command"] = "amalgam";
      IncidenceGraph B = detail::load_graph(file_a, std::nullopt, rep);
      IncidenceGraph C = detail::load_graph(file_b, std::nullopt, rep);
      IncidenceGraph A = detail::load_graph(over_file, std::nullopt, rep);
      std::optional<int> st;
      if (stages_given) st = bud.stages;
      code = cmd_amalgam(B, C, A, map_b_file, map_c_file, st, out_path, bud, rep);
    } else if (app.got_subcommand(c_normalize)) {
      rep.j["command"] = "normalize";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_normalize(g, cert_out, rep);
    } else if (app.got_subcommand(c_classify)) {
      rep.j["command"] = "classify";
      IncidenceGraph g = detail::load_graph(file_a, n_override, rep);
      detail::maybe_write_dot(dot_out, g, rep);
      code = cmd_classify(g, bud, rep);
    } else if (app.got_subcommand(c_iso)) {
      rep.j["command"] = "iso";
      IncidenceGraph a = detail::load_graph(file_a, std::nullopt, rep);
      IncidenceGraph b = detail::load_graph(file_b, std::nullopt, rep);
      code = cmd_iso(a, b, rep);
    } else if (app.got_subcommand(c_example)) {
      rep.j["command"] = "example";
      rep.j["name"] = example_name;
      std::string dir = out_path.empty() ? "." : out_path;
      code = cmd_example(example_name, ex_n, ex_k, ex_rungs, bud.stages, dir, dot_out, rep, err);
      if (code == kExitUsage) return code;
    }
    rep.flush(out, as_json, bud);
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace cli
}  // namespace gon
