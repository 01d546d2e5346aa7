#include <mgc/ansatz.hpp>
#include <mgc/cases.hpp>
#include <mgc/cohomology.hpp>
#include <mgc/eval.hpp>
#include <mgc/reference.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  int jobs = 0;
  std::string format = "text";
  std::string schouten_sign = "standard";

  bool json() const { return format == "json"; }
  mgc::SchoutenSign sign() const {
    return schouten_sign == "flipped" ? mgc::SchoutenSign::flipped : mgc::SchoutenSign::standard;
  }
};

/// "@path" reads a file, "-" reads stdin, anything else is literal text.
std::string read_input(const std::string& arg) {
  if (arg == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  if (!arg.empty() && arg.front() == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw UsageError("cannot read " + arg.substr(1));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  return arg;
}

const std::map<std::string, mgc::GraphKind> kKinds = {
    {"kontsevich", mgc::GraphKind::kontsevich},
    {"leibniz", mgc::GraphKind::leibniz},
    {"micro", mgc::GraphKind::micro},
};

nlohmann::json multivector_json(const mgc::MultiVector& x) {
  nlohmann::json j;
  j["dim"] = x.dim();
  j["degree"] = x.degree();
  nlohmann::json comps = nlohmann::json::object();
  for (const auto& [mask, poly] : x.components()) {
    std::string key;
    for (int i = 0; i < x.dim(); ++i)
      if (mask >> i & 1) key += std::to_string(i + 1);
    comps[key.empty() ? "0" : key] = mgc::to_string(poly);
  }
  j["components"] = comps;
  return j;
}

nlohmann::json graph_sum_json(const mgc::GraphSum& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [g, c] : s.terms())
    arr.push_back({{"coefficient", c.get_str()}, {"graph", nlohmann::json::parse(mgc::to_json(g))},
                   {"text", mgc::to_string(g)}});
  return arr;
}

int cmd_run(const Global& g, std::vector<std::string> names, const std::string& velocities) {
  if (names.size() == 1 && names[0] == "all") {
    names.clear();
    for (auto n : mgc::case_names())
      if (n != "shortcut-3d" || !velocities.empty()) names.emplace_back(n);
  }
  mgc::CaseOptions options;
  options.jobs = g.jobs;
  options.sign = g.sign();
  options.velocities_path = velocities;
  std::vector<mgc::CaseReport> reports;
  bool all_passed = true;
  for (const std::string& name : names) {
    mgc::CaseReport r;
    try {
      r = mgc::run_case(name, options);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
    all_passed = all_passed && r.passed;
    if (!g.json()) std::cout << mgc::to_text(r) << std::flush;
    reports.push_back(std::move(r));
  }
  if (g.json()) std::cout << mgc::to_json(reports) << "\n";
  return all_passed ? kExitPass : kExitFail;
}

struct AnsatzArgs {
  int dim = 3;
  int aerial = 3;
  int sinks = 1;
  int tadpoles = 1;
  int min_terminal_indegree = 0;
  bool filter = false;
  bool list = true;
};

int cmd_gen_ansatz(const Global& g, const AnsatzArgs& a) {
  mgc::AnsatzSpec spec;
  spec.dim = a.dim;
  spec.aerial = a.aerial;
  spec.sinks = a.sinks;
  spec.max_tadpoles = a.tadpoles;
  spec.min_terminal_indegree = a.min_terminal_indegree;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const mgc::Ansatz ansatz = mgc::generate(spec, g.jobs);
  std::vector<mgc::Graph> kept = ansatz.graphs;
  if (a.filter) kept = mgc::vanish_filter(ansatz.graphs, g.jobs);
  std::size_t with_tadpole = 0;
  for (const auto& gr : kept) with_tadpole += gr.tadpole_count() > 0;
  const auto& st = ansatz.stats;
  if (g.json()) {
    nlohmann::json j;
    j["unlabeled"] = {{"total", st.unlabeled_total()}, {"no_tadpole", st.unlabeled[0]}, {"one_tadpole", st.unlabeled[1]}};
    j["labeled"] = st.labeled;
    j["distinct"] = {{"total", st.distinct_total()}, {"no_tadpole", st.distinct[0]}, {"one_tadpole", st.distinct[1]}};
    if (a.filter) j["nonvanishing"] = {{"total", kept.size()}, {"no_tadpole", kept.size() - with_tadpole}, {"one_tadpole", with_tadpole}};
    if (a.list) {
      j["graphs"] = nlohmann::json::array();
      for (const auto& gr : kept) j["graphs"].push_back(mgc::to_string(gr));
    }
    std::cout << j.dump(2) << "\n";
    return kExitPass;
  }
  if (a.list)
    for (const auto& gr : kept) std::cout << mgc::to_string(gr) << "\n";
  std::cout << fmt::format("# unlabeled classes: {} ({} without tadpole, {} with one tadpole)\n", st.unlabeled_total(),
                           st.unlabeled[0], st.unlabeled[1]);
  std::cout << fmt::format("# labelled before merging: {}\n", st.labeled);
  std::cout << fmt::format("# distinct micro-graphs: {} ({} without tadpole, {} with one tadpole)\n",
                           st.distinct_total(), st.distinct[0], st.distinct[1]);
  if (a.filter)
    std::cout << fmt::format("# nonvanishing: {} ({} without tadpole, {} with one tadpole)\n", kept.size(),
                             kept.size() - with_tadpole, with_tadpole);
  return kExitPass;
}

struct GraphArgs {
  std::string text;
  std::string kind = "kontsevich";
  int sinks = 2;
  int dim = 3;
};

mgc::GraphSum parse_sum_arg(const GraphArgs& a) {
  try {
    return mgc::parse_graph_sum(read_input(a.text), kKinds.at(a.kind), a.kind == "micro" ? 0 : a.sinks, a.dim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int cmd_canon(const Global& g, const GraphArgs& a) {
  mgc::Graph graph;
  try {
    graph = mgc::parse_graph(read_input(a.text), kKinds.at(a.kind), a.kind == "micro" ? 0 : a.sinks, a.dim);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const mgc::CanonicalForm cf = mgc::canonical_form(graph);
  if (g.json()) {
    nlohmann::json j;
    j["canonical"] = nlohmann::json::parse(mgc::to_json(cf.graph));
    j["text"] = mgc::to_string(cf.graph);
    j["sign"] = cf.sign;
    j["zero"] = cf.zero;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << mgc::to_string(cf.graph) << "\n";
    std::cout << "sign: " << (cf.sign > 0 ? "+1" : "-1") << "\n";
    std::cout << "zero: " << (cf.zero ? "yes" : "no") << "\n";
  }
  return kExitPass;
}

int cmd_eval(const Global& g, const GraphArgs& a, const std::string& contents) {
  const mgc::GraphSum sum = parse_sum_arg(a);
  mgc::DiffPoly op;
  int sinks = a.sinks;
  int dim = a.dim;
  if (sum.kind() == mgc::GraphKind::micro) {
    op = mgc::evaluate(sum, g.jobs);
    sinks = sum.empty() ? 0 : sum.terms().begin()->first.num_sinks();
    dim = sum.dim();
  } else {
    mgc::MultiVector p;
    if (contents == "plane") {
      p = mgc::plane_bivector_u();
      dim = 2;
    } else if (contents == "nambu") {
      p = mgc::nambu_bivector(dim);
    } else {
      throw UsageError("--contents must be nambu or plane");
    }
    op = mgc::evaluate(sum, mgc::contents_of(p), g.jobs);
  }
  std::optional<mgc::MultiVector> mv;
  if (sinks > 0) {
    try {
      if (mgc::is_skew(op, sinks, dim)) mv = mgc::to_multivector(op, sinks, dim);
    } catch (const std::invalid_argument&) {
    }
  }
  if (g.json()) {
    nlohmann::json j;
    j["operator"] = mgc::to_string(op);
    if (mv) j["multivector"] = multivector_json(*mv);
    std::cout << j.dump(2) << "\n";
  } else if (mv) {
    std::cout << (mv->is_zero() ? "0\n" : mgc::to_string(*mv));
  } else {
    std::cout << mgc::to_string(op) << "\n";
  }
  return kExitPass;
}

int cmd_expand(const Global& g, const GraphArgs& a) {
  const mgc::GraphSum sum = parse_sum_arg(a);
  mgc::GraphSum out;
  if (sum.kind() == mgc::GraphKind::leibniz) {
    out = mgc::GraphSum(mgc::GraphKind::kontsevich);
    for (const auto& [gr, c] : sum.terms()) {
      mgc::GraphSum e = mgc::leibniz_expand(gr);
      e *= c;
      out += e;
    }
  } else if (sum.kind() == mgc::GraphKind::kontsevich) {
    out = mgc::expand_to_micrographs(sum, a.dim);
  } else {
    throw UsageError("expand takes Kontsevich or Leibniz graphs");
  }
  if (g.json())
    std::cout << graph_sum_json(out).dump(2) << "\n";
  else
    std::cout << mgc::to_string(out) << "\n# terms: " << out.size() << "\n";
  return kExitPass;
}

int cmd_solve(const Global& g, const AnsatzArgs& a, bool experimental_4d) {
  if (a.dim == 4 && !experimental_4d) throw UsageError("solving in d = 4 needs --experimental-4d (no result promised)");
  if (a.dim != 3 && a.dim != 4) throw UsageError("solve supports --dim 3 (and 4 with --experimental-4d)");
  mgc::AnsatzSpec spec;
  spec.dim = a.dim;
  spec.max_tadpoles = a.tadpoles;
  spec.min_terminal_indegree = a.min_terminal_indegree;
  const std::vector<mgc::Graph> ansatz = mgc::vanish_filter(mgc::generate(spec, g.jobs).graphs, g.jobs);
  const mgc::MultiVector p = mgc::nambu_bivector(a.dim);
  const mgc::MultiVector q = mgc::Rational(mgc::reference::kListingScale) * mgc::gamma3_flow(p);
  const mgc::CoboundaryResult r = mgc::solve_coboundary(q, p, ansatz, g.sign(), g.jobs);
  const bool feasible = r.solution.status != mgc::SolveStatus::infeasible;
  const mgc::GraphSum found = feasible ? mgc::combination(ansatz, r.sparse) : mgc::GraphSum(mgc::GraphKind::micro, a.dim);
  if (g.json()) {
    nlohmann::json j;
    j["columns"] = r.columns;
    j["rows"] = r.rows;
    j["status"] = std::string(mgc::to_string(r.solution.status));
    j["rank"] = r.solution.rank;
    j["kernel_rank"] = r.solution.kernel_rank;
    j["residual_zero"] = r.residual_zero;
    j["solution"] = graph_sum_json(found);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << fmt::format("# rhs: {} * Q_gamma3(P), d = {}\n", mgc::reference::kListingScale, a.dim);
    std::cout << fmt::format("# columns: {}, rows: {}\n", r.columns, r.rows);
    std::cout << fmt::format("# status: {}, rank {}, kernel rank {}\n", mgc::to_string(r.solution.status),
                             r.solution.rank, r.solution.kernel_rank);
    if (feasible) {
      std::cout << fmt::format("# support {}, residual {}\n", found.size(), r.residual_zero ? "zero" : "NONZERO");
      std::cout << mgc::to_string(found);
    }
  }
  return feasible && r.residual_zero ? kExitPass : kExitFail;
}

int cmd_velocities(const Global& g, const std::string& output) {
  const mgc::MultiVector x = mgc::to_multivector(mgc::evaluate(mgc::reference::theorem_listing(), g.jobs), 1, 3);
  const mgc::Velocities v = mgc::velocities_of(x);
  const std::string text =
      "# Velocities [[a, X]] and [[rho d_x^d_y^d_z, X]] of the eleven-graph field X in 3D.\n" +
      mgc::format_velocities(v);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw UsageError("cannot write " + output);
    out << text;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph calculus for Nambu-Poisson structures: evaluation, ansatz generation and coboundary solving"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--jobs", g.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--schouten-sign", g.schouten_sign, "Global sign of the Schouten bracket")
      ->check(CLI::IsMember({"standard", "flipped"}));

  std::vector<std::string> case_list;
  std::string velocities;
  auto* run = app.add_subcommand("run", "Run named reproduction cases ('all' runs every case that has its data)");
  std::vector<std::string> names{"all"};
  for (auto n : mgc::case_names()) names.emplace_back(n);
  run->add_option("cases", case_list, "Case names")->required()->check(CLI::IsMember(names));
  run->add_option("--velocities", velocities, "Velocity data file for shortcut-3d")->check(CLI::ExistingFile);

  AnsatzArgs ansatz;
  auto* gen = app.add_subcommand("gen-ansatz", "Enumerate a micro-graph ansatz");
  gen->add_option("--dim", ansatz.dim, "Ambient dimension")->check(CLI::Range(2, 8));
  gen->add_option("--aerial", ansatz.aerial, "Number of rho*eps vertices")->check(CLI::Range(0, 4));
  gen->add_option("--sinks", ansatz.sinks, "Number of sinks")->check(CLI::Range(0, 4));
  gen->add_option("--tadpoles", ansatz.tadpoles, "Maximal number of tadpoles")->check(CLI::Range(0, 1));
  gen->add_option("--min-terminal-indegree", ansatz.min_terminal_indegree, "Lower bound on Casimir in-degrees")
      ->check(CLI::Range(0, 1));
  gen->add_flag("--filter", ansatz.filter, "Drop graphs that evaluate to zero");
  gen->add_flag("!--no-list", ansatz.list, "Print only the summary block");

  GraphArgs graph;
  std::string contents = "nambu";
  auto add_graph_args = [&](CLI::App* sub) {
    sub->add_option("graph", graph.text, "Graph or graph sum in listing format (@file or - for stdin)")->required();
    sub->add_option("--kind", graph.kind, "Graph kind")->check(CLI::IsMember({"kontsevich", "leibniz", "micro"}));
    sub->add_option("--sinks", graph.sinks, "Number of sinks (Kontsevich/Leibniz)")->check(CLI::Range(0, 8));
    sub->add_option("--dim", graph.dim, "Ambient dimension")->check(CLI::Range(2, 8));
  };
  auto* canon = app.add_subcommand("canon", "Canonical form, sign and zero test of one graph");
  add_graph_args(canon);
  auto* eval = app.add_subcommand("eval", "Evaluate a graph sum to a polydifferential operator or multivector");
  add_graph_args(eval);
  eval->add_option("--contents", contents, "Bi-vector in the wedges: nambu (d = --dim) or plane (u dx^dy)")
      ->check(CLI::IsMember({"nambu", "plane"}));
  auto* expand = app.add_subcommand("expand", "Leibniz -> Kontsevich, or Kontsevich -> micro-graphs in --dim");
  add_graph_args(expand);

  bool experimental_4d = false;
  AnsatzArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Solve [[P, X]] = 8 Q_gamma3(P) over the nonvanishing ansatz");
  solve->add_option("--dim", solve_args.dim, "Ambient dimension")->check(CLI::Range(3, 4));
  solve->add_option("--tadpoles", solve_args.tadpoles, "Maximal number of tadpoles")->check(CLI::Range(0, 1));
  solve->add_flag("--experimental-4d", experimental_4d, "Allow an attempt in d = 4 (no result promised)");

  std::string output;
  auto* vel = app.add_subcommand("velocities", "Write the velocity data induced by the eleven-graph field");
  vel->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*run) return cmd_run(g, case_list, velocities);
    if (*gen) return cmd_gen_ansatz(g, ansatz);
    if (*canon) return cmd_canon(g, graph);
    if (*eval) return cmd_eval(g, graph, contents);
    if (*expand) return cmd_expand(g, graph);
    if (*solve) return cmd_solve(g, solve_args, experimental_4d);
    if (*vel) return cmd_velocities(g, output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
