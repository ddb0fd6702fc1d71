// Command-line front end: fission runs, entanglement audits, orbit search,
// and transcript verification over graph files (JSON or edge-list format).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <gfk/gfk.hpp>

namespace {

using gfk::json;
using gfk::VertexId;

constexpr double kOverlapTol = 1e-10;
constexpr double kEntropyTol = 1e-8;

int fail_usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open input file \"" + path + "\"");
    ss << f.rdbuf();
  }
  return ss.str();
}

std::size_t oracle_cap() {
  const char* s = std::getenv("GFK_MAX_QUBITS");
  if (s == nullptr || *s == '\0') return gfk::kDefaultMaxQubits;
  char* end = nullptr;
  const unsigned long v = std::strtoul(s, &end, 10);
  if (end == s || *end != '\0' || v == 0) {
    throw std::invalid_argument("GFK_MAX_QUBITS must be a positive integer, got \"" +
                                std::string(s) + "\"");
  }
  return static_cast<std::size_t>(v);
}

std::string trim(std::string s) {
  const auto notspace = [](unsigned char c) { return std::isspace(c) == 0; };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
  s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
  return s;
}

VertexId parse_vertex(const std::string& tok) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(tok, &pos);
  } catch (...) {
    throw std::invalid_argument("expected a vertex id, got \"" + tok + "\"");
  }
  if (pos != tok.size() || v > 0xffffffffUL) {
    throw std::invalid_argument("expected a vertex id, got \"" + tok + "\"");
  }
  return static_cast<VertexId>(v);
}

// "1,2|3|4" -> {{1,2},{3},{4}}. An empty segment is an empty block.
std::vector<std::vector<VertexId>> parse_partition(const std::string& s) {
  std::vector<std::vector<VertexId>> blocks;
  std::string segment;
  std::istringstream in(s);
  while (std::getline(in, segment, '|')) {
    std::vector<VertexId> ids;
    std::istringstream seg(segment);
    std::string tok;
    while (std::getline(seg, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      ids.push_back(parse_vertex(tok));
    }
    blocks.push_back(std::move(ids));
  }
  if (!s.empty() && s.back() == '|') blocks.emplace_back();
  if (blocks.empty()) throw std::invalid_argument("--partition lists no blocks");
  return blocks;
}

std::vector<int> parse_bit_string(const std::string& s) {
  std::vector<int> bits;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '0') {
      bits.push_back(0);
    } else if (c == '1') {
      bits.push_back(1);
    } else {
      throw std::invalid_argument("--outcomes must hold only 0/1 bits, got '" +
                                  std::string(1, c) + "'");
    }
  }
  return bits;
}

struct OutcomePlan {
  std::vector<int> bits;
  json metadata;
};

// Measurement outcomes come from exactly one place: explicit bits, a seeded
// generator, or (only when the caller allows it) an all-zero default. The
// metadata block records which, so a report is reproducible from itself.
OutcomePlan resolve_outcomes(std::size_t arity, std::optional<std::uint64_t> seed,
                             std::optional<std::string> outcomes, bool default_zeros) {
  OutcomePlan plan;
  if (outcomes) {
    plan.bits = parse_bit_string(*outcomes);
    if (plan.bits.size() != arity) {
      throw std::invalid_argument("--outcomes supplies " + std::to_string(plan.bits.size()) +
                                  " bits but this run measures " + std::to_string(arity));
    }
    plan.metadata["outcomes"] = "explicit";
    plan.metadata["values"] = plan.bits;
    return plan;
  }
  if (seed) {
    std::mt19937_64 engine(*seed);
    plan.bits.reserve(arity);
    for (std::size_t i = 0; i < arity; ++i) {
      plan.bits.push_back(static_cast<int>(engine() & 1u));
    }
    plan.metadata["generator"] = "mt19937_64/v1";
    plan.metadata["seed"] = *seed;
    plan.metadata["sampled_outcomes"] = plan.bits;
    return plan;
  }
  if (arity == 0) {
    plan.metadata["outcomes"] = "explicit";
    plan.metadata["values"] = json::array();
    return plan;
  }
  if (default_zeros) {
    plan.bits.assign(arity, 0);
    plan.metadata["outcomes"] = "defaulted-zero";
    plan.metadata["values"] = plan.bits;
    return plan;
  }
  throw std::invalid_argument("this run measures " + std::to_string(arity) +
                              " qubit(s); supply --seed or explicit outcomes");
}

double round12(double x) { return std::round(x * 1e12) / 1e12; }

double overlap_magnitude(const gfk::StateVector& a, const gfk::StateVector& b) {
  std::complex<double> acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    acc += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return std::abs(acc);
}

// Amplitude-level replay of a transcript against its claimed final graph.
// Skips (and does not fail) when the register exceeds the statevector cap.
json oracle_replay(const gfk::GraphState& g0, const gfk::Transcript& t,
                   const gfk::GraphState& expected, std::size_t cap, bool& passed) {
  json out;
  const std::size_t peak = expected.vertex_count();  // the register only grows
  if (peak > cap) {
    out["ran"] = false;
    out["reason"] = "oracle skipped: " + std::to_string(peak) + " qubits exceeds the cap of " +
                    std::to_string(cap);
    passed = true;
    return out;
  }
  try {
    const gfk::StateVector psi0 = gfk::build_graph_state(g0, cap);
    const gfk::StateVector psi = gfk::execute_transcript_state(psi0, g0, t, cap);
    const gfk::StateVector want = gfk::build_graph_state(expected, cap);
    const double ov = overlap_magnitude(psi, want);
    out["ran"] = true;
    out["overlap"] = round12(ov);
    passed = ov >= 1.0 - kOverlapTol;
    out["passed"] = passed;
  } catch (const std::exception& e) {
    out["ran"] = true;
    out["passed"] = false;
    out["error"] = e.what();
    passed = false;
  }
  return out;
}

int emit(const json& doc, const std::string& format, const std::string& dot) {
  if (format == "dot") {
    std::cout << dot;
    return 0;
  }
  json out = doc;
  if (format == "both") out["dot"] = dot;
  std::cout << out.dump(2) << "\n";
  return 0;
}

struct SplitOptions {
  std::string input;
  VertexId target = 0;
  VertexId keep_one = 0;
  std::vector<VertexId> kept;
  std::string partition;
  std::uint64_t seed = 0;
  std::string outcomes;
  CLI::Option* opt_keep = nullptr;
  CLI::Option* opt_kept = nullptr;
  CLI::Option* opt_partition = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_outcomes = nullptr;
};

void add_split_options(CLI::App* cmd, SplitOptions& o) {
  cmd->add_option("input", o.input, "graph file (JSON or edge list), or - for stdin")->required();
  cmd->add_option("--target", o.target, "vertex to split")->required();
  o.opt_keep = cmd->add_option("--keep", o.keep_one, "single neighbor the new qubit keeps");
  o.opt_kept = cmd->add_option("--kept", o.kept, "comma-separated neighbors the new qubit keeps")
                   ->delimiter(',');
  o.opt_partition = cmd->add_option(
      "--partition", o.partition, "pipe-separated neighbor blocks, e.g. \"1,2|3|4\"");
  o.opt_seed = cmd->add_option("--seed", o.seed, "sample measurement outcomes from this seed");
  o.opt_outcomes =
      cmd->add_option("--outcomes", o.outcomes, "explicit measurement bits, e.g. \"010\"");
  o.opt_keep->excludes(o.opt_kept)->excludes(o.opt_partition);
  o.opt_kept->excludes(o.opt_partition);
  o.opt_seed->excludes(o.opt_outcomes);
}

struct SplitRun {
  gfk::GraphState input_graph;
  gfk::FissionOutcome outcome;
  json request;  // target, kept or partition, plan
  json metadata;
  bool iterate_mode = false;
};

SplitRun run_split(const SplitOptions& o, bool default_zeros) {
  SplitRun r;
  r.input_graph = gfk::parse_graph_text(read_input(o.input));

  const int modes = (o.opt_keep->count() > 0 ? 1 : 0) + (o.opt_kept->count() > 0 ? 1 : 0) +
                    (o.opt_partition->count() > 0 ? 1 : 0);
  if (modes != 1) {
    throw std::invalid_argument("pass exactly one of --keep, --kept, --partition");
  }
  std::optional<std::uint64_t> seed;
  if (o.opt_seed->count() > 0) seed = o.seed;
  std::optional<std::string> outcomes;
  if (o.opt_outcomes->count() > 0) outcomes = o.outcomes;

  r.request["target"] = o.target;
  if (o.opt_partition->count() > 0) {
    const std::vector<std::vector<VertexId>> blocks = parse_partition(o.partition);
    const std::size_t arity = gfk::iterate_outcome_arity(r.input_graph, o.target, blocks);
    OutcomePlan plan = resolve_outcomes(arity, seed, outcomes, default_zeros);
    r.outcome = gfk::iterate_fission(r.input_graph, o.target, blocks, plan.bits);
    r.request["partition"] = blocks;
    r.metadata = std::move(plan.metadata);
    r.iterate_mode = true;
  } else {
    const std::vector<VertexId> kept =
        o.opt_keep->count() > 0 ? std::vector<VertexId>{o.keep_one} : o.kept;
    const gfk::FissionSpec spec = gfk::plan_fission(r.input_graph, o.target, kept);
    OutcomePlan plan = resolve_outcomes(spec.travel.size(), seed, outcomes, default_zeros);
    r.outcome = gfk::execute_fission(r.input_graph, spec, plan.bits);
    r.request["kept"] = spec.kept;
    json p;
    p["ancilla"] = gfk::ancilla_kind_name(spec.ancilla_kind);
    p["size"] = spec.travel.size() + 1;
    p["travel"] = spec.travel;
    p["swapped"] = spec.swapped;
    p["degenerate"] = spec.degenerate;
    r.request["plan"] = std::move(p);
    r.metadata = std::move(plan.metadata);
  }
  return r;
}

std::map<VertexId, gfk::Role> fission_roles(const SplitRun& r) {
  std::map<VertexId, gfk::Role> roles;
  const gfk::Transcript& t = r.outcome.transcript;
  if (!r.iterate_mode) {
    for (VertexId b : r.outcome.graph.neighbors(t.new_vertex)) roles[b] = gfk::Role::Kept;
    for (VertexId b : r.outcome.graph.neighbors(t.residual_vertex)) {
      roles[b] = gfk::Role::Complement;
    }
  }
  for (VertexId v : r.outcome.node_vertices) roles[v] = gfk::Role::Split;
  roles[t.residual_vertex] = gfk::Role::Target;
  return roles;
}

int run_fission(const SplitOptions& o, const std::string& format, bool verify) {
  const SplitRun r = run_split(o, /*default_zeros=*/false);

  json doc;
  doc["command"] = "fission";
  doc["input"] = gfk::graph_to_json(r.input_graph);
  doc.update(r.request);
  doc["metadata"] = r.metadata;
  doc["transcript"] = gfk::transcript_to_json(r.outcome.transcript);
  doc["new_vertex"] = r.outcome.transcript.new_vertex;
  doc["residual_vertex"] = r.outcome.transcript.residual_vertex;
  doc["node_vertices"] = r.outcome.node_vertices;
  doc["final_graph"] = gfk::graph_to_json(r.outcome.graph);
  doc["ancilla_qubits_used"] = r.outcome.ancilla_qubits_used;
  doc["ancilla_ebits_used"] = r.outcome.ancilla_ebits_used;
  doc["rounds"] = r.outcome.rounds;
  doc["degenerate"] = r.outcome.degenerate;
  doc["audit"] = gfk::audit_to_json(gfk::audit_fission(r.input_graph, r.outcome, o.target));

  bool verified = true;
  if (verify) {
    doc["verify"] = oracle_replay(r.input_graph, r.outcome.transcript, r.outcome.graph,
                                  oracle_cap(), verified);
  }
  emit(doc, format, gfk::export_dot(r.outcome.graph, fission_roles(r)));
  if (!verified) {
    std::cerr << "error: transcript failed amplitude-level verification\n";
    return 3;
  }
  return 0;
}

int run_audit(const SplitOptions& o) {
  const SplitRun r = run_split(o, /*default_zeros=*/true);
  const gfk::FissionAudit audit = gfk::audit_fission(r.input_graph, r.outcome, o.target);
  std::cout << gfk::audit_to_json(audit).dump(2) << "\n";
  return 0;
}

int run_minimize(const std::string& input, VertexId target, const std::vector<VertexId>& kept,
                 std::size_t budget, bool include_target, const std::string& format) {
  const gfk::GraphState g = gfk::parse_graph_text(read_input(input));
  const gfk::OrbitResult r = gfk::minimize_resources(g, target, kept, budget, include_target);

  json doc;
  doc["command"] = "minimize";
  doc["input"] = gfk::graph_to_json(g);
  doc["target"] = target;
  doc["kept"] = kept;
  doc["budget"] = budget;
  doc["include_target"] = include_target;
  doc.update(gfk::orbit_to_json(r));

  std::map<VertexId, gfk::Role> roles;
  std::vector<bool> in_kept(g.vertex_count(), false);
  for (VertexId v : kept) in_kept[v] = true;
  for (VertexId b : r.representative.neighbors(target)) {
    if (in_kept[b]) roles[b] = gfk::Role::Kept;
  }
  roles[target] = gfk::Role::Target;
  return emit(doc, format, gfk::export_dot(r.representative, roles));
}

int run_verify(const std::string& report_path) {
  const json rep = json::parse(read_input(report_path));
  for (const char* field : {"input", "transcript", "new_vertex", "residual_vertex",
                            "final_graph"}) {
    if (!rep.contains(field)) {
      throw std::invalid_argument("fission report: missing field \"" + std::string(field) +
                                  "\"");
    }
  }
  const gfk::GraphState g0 = gfk::graph_from_json(rep["input"]);
  const gfk::GraphState expected = gfk::graph_from_json(rep["final_graph"]);
  const gfk::Transcript t = gfk::transcript_from_json(
      rep["transcript"], rep["new_vertex"].get<VertexId>(),
      rep["residual_vertex"].get<VertexId>());

  json doc;
  doc["command"] = "verify";
  bool graph_match = false;
  try {
    graph_match = gfk::replay_graph(g0, t) == expected;
    doc["graph_match"] = graph_match;
  } catch (const std::exception& e) {
    doc["graph_match"] = false;
    doc["replay_error"] = e.what();
  }
  bool oracle_ok = true;
  doc["oracle"] = oracle_replay(g0, t, expected, oracle_cap(), oracle_ok);
  const bool passed = graph_match && oracle_ok;
  doc["passed"] = passed;
  std::cout << doc.dump(2) << "\n";
  if (!passed) {
    std::cerr << "error: fission report failed verification\n";
    return 3;
  }
  return 0;
}

int run_lc(const std::string& input, VertexId vertex, const std::string& format) {
  const gfk::GraphState g = gfk::parse_graph_text(read_input(input));
  const gfk::GraphState out = gfk::local_complement(g, vertex);
  json doc;
  doc["command"] = "lc";
  doc["input"] = gfk::graph_to_json(g);
  doc["vertex"] = vertex;
  doc["graph"] = gfk::graph_to_json(out);
  return emit(doc, format, gfk::export_dot(out, {{vertex, gfk::Role::Target}}));
}

int run_measure(const std::string& input, VertexId vertex, std::optional<std::uint64_t> seed,
                std::optional<std::string> outcome, const std::string& format) {
  const gfk::GraphState g = gfk::parse_graph_text(read_input(input));
  const OutcomePlan plan = resolve_outcomes(1, seed, outcome, /*default_zeros=*/false);
  const auto [out, corrections] = gfk::measure_z(g, vertex, plan.bits[0]);
  json doc;
  doc["command"] = "measure";
  doc["input"] = gfk::graph_to_json(g);
  doc["vertex"] = vertex;
  doc["outcome"] = plan.bits[0];
  doc["metadata"] = plan.metadata;
  doc["corrections"] = corrections.pauli_z_targets;
  doc["graph"] = gfk::graph_to_json(out);
  return emit(doc, format, gfk::export_dot(out));
}

int run_cutrank(const std::string& input, const std::vector<VertexId>& side, bool entropy) {
  const gfk::GraphState g = gfk::parse_graph_text(read_input(input));
  const gfk::Bipartition part = gfk::Bipartition::of(side);
  const std::size_t rank = gfk::cut_rank(g, part);
  json doc;
  doc["command"] = "cutrank";
  doc["input"] = gfk::graph_to_json(g);
  doc["side"] = part.side_a;
  doc["rank"] = rank;
  bool matches = true;
  if (entropy) {
    const std::size_t cap = oracle_cap();
    if (g.vertex_count() > cap) {
      throw std::invalid_argument("--entropy needs a statevector: " +
                                  std::to_string(g.vertex_count()) +
                                  " qubits exceeds the cap of " + std::to_string(cap));
    }
    const double s = gfk::entanglement_entropy(gfk::build_graph_state(g, cap), part);
    matches = std::abs(s - static_cast<double>(rank)) <= kEntropyTol;
    doc["entropy"] = round12(s);
    doc["entropy_matches_rank"] = matches;
  }
  std::cout << doc.dump(2) << "\n";
  if (!matches) {
    std::cerr << "error: entanglement entropy disagrees with the cut rank\n";
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-state fission toolkit"};
  app.require_subcommand(1);

  SplitOptions fission_opts;
  std::string fission_format = "json";
  bool fission_verify = false;
  CLI::App* cmd_fission = app.add_subcommand("fission", "split a vertex and report the transcript");
  add_split_options(cmd_fission, fission_opts);
  cmd_fission->add_option("--format", fission_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "both"}));
  cmd_fission->add_flag("--verify", fission_verify,
                        "replay the transcript on amplitudes and check the final state");

  SplitOptions audit_opts;
  CLI::App* cmd_audit =
      app.add_subcommand("audit", "run a fission and print only its entanglement audit");
  add_split_options(cmd_audit, audit_opts);

  std::string min_input;
  VertexId min_target = 0;
  std::vector<VertexId> min_kept;
  std::size_t min_budget = 100000;
  bool min_include_target = false;
  std::string min_format = "json";
  CLI::App* cmd_min = app.add_subcommand(
      "minimize", "search the complementation orbit for a cheaper split frame");
  cmd_min->add_option("input", min_input, "graph file (JSON or edge list), or - for stdin")
      ->required();
  cmd_min->add_option("--target", min_target, "vertex to split")->required();
  cmd_min->add_option("--kept", min_kept, "comma-separated neighbors the new qubit keeps")
      ->delimiter(',')
      ->required();
  cmd_min->add_option("--budget", min_budget, "orbit nodes to explore before going greedy");
  cmd_min->add_flag("--include-target", min_include_target,
                    "also complement at the target itself");
  cmd_min->add_option("--format", min_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "both"}));

  std::string verify_report;
  CLI::App* cmd_verify =
      app.add_subcommand("verify", "check a fission report by graph replay and amplitudes");
  cmd_verify->add_option("report", verify_report, "fission report file, or - for stdin")
      ->required();

  std::string lc_input;
  VertexId lc_vertex = 0;
  std::string lc_format = "json";
  CLI::App* cmd_lc = app.add_subcommand("lc", "apply a local complementation");
  cmd_lc->add_option("input", lc_input, "graph file (JSON or edge list), or - for stdin")
      ->required();
  cmd_lc->add_option("--vertex", lc_vertex, "complementation site")->required();
  cmd_lc->add_option("--format", lc_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "both"}));

  std::string meas_input;
  VertexId meas_vertex = 0;
  int meas_outcome = 0;
  std::uint64_t meas_seed = 0;
  std::string meas_format = "json";
  CLI::App* cmd_meas = app.add_subcommand("measure", "measure a vertex in the Z basis");
  cmd_meas->add_option("input", meas_input, "graph file (JSON or edge list), or - for stdin")
      ->required();
  cmd_meas->add_option("--vertex", meas_vertex, "vertex to measure")->required();
  CLI::Option* opt_meas_outcome =
      cmd_meas->add_option("--outcome", meas_outcome, "fixed outcome bit")
          ->check(CLI::Range(0, 1));
  CLI::Option* opt_meas_seed =
      cmd_meas->add_option("--seed", meas_seed, "sample the outcome from this seed");
  opt_meas_outcome->excludes(opt_meas_seed);
  cmd_meas->add_option("--format", meas_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "both"}));

  std::string cut_input;
  std::vector<VertexId> cut_side;
  bool cut_entropy = false;
  CLI::App* cmd_cut = app.add_subcommand("cutrank", "ebits across a bipartition");
  cmd_cut->add_option("input", cut_input, "graph file (JSON or edge list), or - for stdin")
      ->required();
  cmd_cut->add_option("--side", cut_side, "comma-separated vertices of one side")
      ->delimiter(',')
      ->required();
  cmd_cut->add_flag("--entropy", cut_entropy,
                    "cross-check against the statevector entanglement entropy");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(cmd_fission)) {
      return run_fission(fission_opts, fission_format, fission_verify);
    }
    if (app.got_subcommand(cmd_audit)) {
      return run_audit(audit_opts);
    }
    if (app.got_subcommand(cmd_min)) {
      return run_minimize(min_input, min_target, min_kept, min_budget, min_include_target,
                          min_format);
    }
    if (app.got_subcommand(cmd_verify)) {
      return run_verify(verify_report);
    }
    if (app.got_subcommand(cmd_lc)) {
      return run_lc(lc_input, lc_vertex, lc_format);
    }
    if (app.got_subcommand(cmd_meas)) {
      std::optional<std::uint64_t> seed;
      if (opt_meas_seed->count() > 0) seed = meas_seed;
      std::optional<std::string> outcome;
      if (opt_meas_outcome->count() > 0) outcome = std::to_string(meas_outcome);
      return run_measure(meas_input, meas_vertex, seed, outcome, meas_format);
    }
    if (app.got_subcommand(cmd_cut)) {
      return run_cutrank(cut_input, cut_side, cut_entropy);
    }
  } catch (const std::exception& e) {
    return fail_usage(e.what());
  }
  return fail_usage("no subcommand selected");
}
