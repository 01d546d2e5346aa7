#include <mgc/graph.hpp>

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mgc {

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kontsevich: return "kontsevich";
    case GraphKind::leibniz: return "leibniz";
    case GraphKind::micro: return "micro";
  }
  return "?";
}

Graph::Graph(GraphKind kind, int dim, int num_sinks, std::vector<std::vector<int>> targets,
             std::vector<int> terminal_labels)
    : kind_(kind), dim_(dim), num_sinks_(num_sinks), targets_(std::move(targets)),
      terminal_labels_(std::move(terminal_labels)) {
  if (num_sinks_ < 0) throw std::invalid_argument("negative sink count");
  const int n = num_aerial();
  switch (kind_) {
    case GraphKind::kontsevich:
      dim_ = 0;
      if (!terminal_labels_.empty()) throw std::invalid_argument("Kontsevich graphs have no terminal vertices");
      for (const auto& t : targets_)
        if (t.size() != 2) throw std::invalid_argument("Kontsevich aerial vertices have out-degree 2");
      break;
    case GraphKind::leibniz: {
      dim_ = 0;
      if (!terminal_labels_.empty()) throw std::invalid_argument("Leibniz graphs have no terminal vertices");
      int tridents = 0;
      for (const auto& t : targets_) {
        if (t.size() == 3) {
          ++tridents;
        } else if (t.size() != 2) {
          throw std::invalid_argument("Leibniz aerial vertices have out-degree 2 or 3");
        }
      }
      if (tridents != 1) throw std::invalid_argument("a Leibniz graph has exactly one out-degree-3 vertex");
      break;
    }
    case GraphKind::micro: {
      if (dim_ < 2) throw std::invalid_argument("micro-graphs need dimension >= 2");
      for (const auto& t : targets_)
        if (static_cast<int>(t.size()) != dim_)
          throw std::invalid_argument(fmt::format("micro-graph aerial vertices have out-degree {}", dim_));
      if (num_terminals() != n * (dim_ - 2))
        throw std::invalid_argument(fmt::format("micro-graph with {} aerial vertices needs {} terminals", n,
                                                n * (dim_ - 2)));
      std::vector<int> per_label(dim_ - 1, 0);
      for (int l : terminal_labels_) {
        if (l < 1 || l > dim_ - 2) throw std::invalid_argument("Casimir label out of range");
        ++per_label[l];
      }
      for (int l = 1; l <= dim_ - 2; ++l)
        if (per_label[l] != n) throw std::invalid_argument("each Casimir label must occur once per aerial vertex");
      break;
    }
  }
  const int v = num_vertices();
  for (const auto& t : targets_)
    for (int x : t)
      if (x < 0 || x >= v) throw std::invalid_argument(fmt::format("target {} out of range", x));
}

int Graph::num_edges() const {
  int e = 0;
  for (const auto& t : targets_) e += static_cast<int>(t.size());
  return e;
}

VertexRole Graph::role(int v) const {
  if (v < num_sinks_) return VertexRole::sink;
  if (v < num_sinks_ + num_aerial()) return VertexRole::aerial;
  return VertexRole::terminal;
}

std::vector<int> Graph::in_degrees() const {
  std::vector<int> in(num_vertices(), 0);
  for (const auto& t : targets_)
    for (int x : t) ++in[x];
  return in;
}

int Graph::tadpole_count() const {
  int c = 0;
  for (int k = 0; k < num_aerial(); ++k)
    for (int x : targets_[k]) c += (x == aerial_id(k));
  return c;
}

bool Graph::has_parallel_edges() const {
  for (const auto& t : targets_) {
    std::vector<int> s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

int sort_parity(std::vector<int>& v, bool& repeated) {
  // Insertion sort counting transpositions; tuples are short.
  int swaps = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      std::swap(v[j - 1], v[j]);
      ++swaps;
    }
  }
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) repeated = true;
  return (swaps & 1) ? -1 : 1;
}

class Canonicalizer {
 public:
  explicit Canonicalizer(const Graph& g) : g_(g) {
    const int m = g.num_sinks();
    // Aerial vertices grouped by out-degree (ascending), terminals by label.
    std::map<int, std::vector<int>> by_arity;
    for (int k = 0; k < g.num_aerial(); ++k) by_arity[static_cast<int>(g.targets()[k].size())].push_back(g.aerial_id(k));
    std::map<int, std::vector<int>> by_label;
    for (int t = 0; t < g.num_terminals(); ++t) by_label[g.terminal_labels()[t]].push_back(g.terminal_id(t));
    int base = m;
    for (auto& [arity, members] : by_arity) {
      groups_.push_back({base, members});
      for (std::size_t i = 0; i < members.size(); ++i) aerial_arity_.push_back(arity);
      base += static_cast<int>(members.size());
    }
    for (auto& [label, members] : by_label) {
      groups_.push_back({base, members});
      for (std::size_t i = 0; i < members.size(); ++i) labels_.push_back(label);
      base += static_cast<int>(members.size());
    }
    new_id_.assign(g.num_vertices(), -1);
    for (int s = 0; s < m; ++s) new_id_[s] = s;
    old_at_.assign(g.num_vertices(), -1);
  }

  CanonicalForm run() {
    search(0);
    CanonicalForm cf;
    cf.sign = best_sign_;
    cf.zero = zero_;
    std::vector<std::vector<int>> targets;
    std::size_t pos = 0;
    for (int arity : aerial_arity_) {
      targets.emplace_back(best_.begin() + static_cast<std::ptrdiff_t>(pos),
                           best_.begin() + static_cast<std::ptrdiff_t>(pos + arity));
      pos += arity;
    }
    cf.graph = Graph(g_.kind(), g_.dim(), g_.num_sinks(), std::move(targets), labels_);
    return cf;
  }

 private:
  struct Group {
    int base;
    std::vector<int> members;
  };

  void search(std::size_t group) {
    if (group == groups_.size()) {
      evaluate();
      return;
    }
    Group& gr = groups_[group];
    std::vector<int> order = gr.members;
    std::sort(order.begin(), order.end());
    do {
      for (std::size_t i = 0; i < order.size(); ++i) {
        new_id_[order[i]] = gr.base + static_cast<int>(i);
        old_at_[gr.base + static_cast<int>(i)] = order[i];
      }
      search(group + 1);
    } while (std::next_permutation(order.begin(), order.end()));
  }

  void evaluate() {
    encoding_.clear();
    int sign = 1;
    bool repeated = false;
    const int m = g_.num_sinks();
    for (std::size_t k = 0; k < aerial_arity_.size(); ++k) {
      const int old = old_at_[m + static_cast<int>(k)];
      scratch_ = g_.targets()[old - m];
      for (int& x : scratch_) x = new_id_[x];
      sign *= sort_parity(scratch_, repeated);
      encoding_.insert(encoding_.end(), scratch_.begin(), scratch_.end());
    }
    if (repeated) zero_ = true;
    if (best_.empty() && !have_best_) {
      best_ = encoding_;
      best_sign_ = sign;
      have_best_ = true;
      return;
    }
    int cmp = encoding_ < best_ ? -1 : (encoding_ == best_ ? 0 : 1);
    if (cmp < 0) {
      best_ = encoding_;
      best_sign_ = sign;
    } else if (cmp == 0 && sign != best_sign_) {
      zero_ = true;
    }
  }

  const Graph& g_;
  std::vector<Group> groups_;
  std::vector<int> aerial_arity_;
  std::vector<int> labels_;
  std::vector<int> new_id_;
  std::vector<int> old_at_;
  std::vector<int> encoding_;
  std::vector<int> scratch_;
  std::vector<int> best_;
  int best_sign_ = 1;
  bool have_best_ = false;
  bool zero_ = false;
};

}  // namespace

CanonicalForm canonical_form(const Graph& g) { return Canonicalizer(g).run(); }

bool is_zero(const Graph& g) { return canonical_form(g).zero; }

// ---------------------------------------------------------------------------
// Text form

namespace {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Rational coefficient() {
    skip();
    std::size_t save = pos_;
    int sign = 1;
    while (!at_end() && (peek() == '-' || peek() == '+')) {
      if (peek() == '-') sign = -sign;
      ++pos_;
      skip();
    }
    if (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      std::size_t start = pos_;
      while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) ++pos_;
      Rational c = parse_rational(text_.substr(start, pos_ - start));
      skip();
      expect('*');
      return sign * c;
    }
    if (sign < 0 || pos_ != save) return Rational(sign);
    return 1;
  }

  std::vector<std::vector<int>> kontsevich_tuples() {
    skip();
    expect('(');
    std::vector<std::vector<int>> tuples;
    skip();
    if (!at_end() && peek() == ')') {
      ++pos_;
      return tuples;
    }
    while (true) {
      skip();
      if (!at_end() && (peek() == ';' || peek() == ')')) {
        // Empty trailing group, as in "(0,1;)".
        if (peek() == ')') {
          ++pos_;
          break;
        }
        ++pos_;
        continue;
      }
      std::vector<int> t;
      t.push_back(integer());
      skip();
      while (!at_end() && peek() == ',') {
        ++pos_;
        t.push_back(integer());
        skip();
      }
      tuples.push_back(std::move(t));
      if (at_end()) fail("unterminated graph");
      if (peek() == ';') {
        ++pos_;
      } else if (peek() == ')') {
        ++pos_;
        break;
      } else {
        fail("expected ';' or ')'");
      }
    }
    return tuples;
  }

  std::vector<std::pair<int, int>> edge_list() {
    skip();
    expect('[');
    std::vector<std::pair<int, int>> edges;
    skip();
    if (!at_end() && peek() == ']') {
      ++pos_;
      return edges;
    }
    while (true) {
      skip();
      expect('(');
      int a = integer();
      skip();
      expect(',');
      int b = integer();
      skip();
      expect(')');
      edges.emplace_back(a, b);
      skip();
      if (at_end()) fail("unterminated edge list");
      if (peek() == ',') {
        ++pos_;
      } else if (peek() == ']') {
        ++pos_;
        break;
      } else {
        fail("expected ',' or ']'");
      }
    }
    return edges;
  }

  /// Parenthesized trailer groups: "(sink 2)", "(sinks 0,1)", "(a2 4,5,6)".
  std::vector<std::pair<std::string, std::vector<int>>> trailers() {
    std::vector<std::pair<std::string, std::vector<int>>> out;
    while (true) {
      skip();
      if (at_end() || peek() == '.') break;
      expect('(');
      skip();
      std::size_t s = pos_;
      while (!at_end() && std::isalnum(static_cast<unsigned char>(peek()))) ++pos_;
      std::string name(text_.substr(s, pos_ - s));
      std::vector<int> values;
      skip();
      if (!at_end() && peek() != ')') {
        values.push_back(integer());
        skip();
        while (!at_end() && peek() == ',') {
          ++pos_;
          values.push_back(integer());
          skip();
        }
      }
      expect(')');
      out.emplace_back(std::move(name), std::move(values));
    }
    skip();
    if (!at_end() && peek() == '.') ++pos_;
    return out;
  }

  void finish() {
    skip();
    if (!at_end()) fail("trailing characters");
  }

 private:
  int integer() {
    skip();
    std::size_t s = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (s == pos_) fail("expected vertex index");
    return std::stoi(std::string(text_.substr(s, pos_ - s)));
  }
  void expect(char c) {
    skip();
    if (at_end() || peek() != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument(fmt::format("graph parse error at {}: {} in '{}'", pos_, what, text_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Graph micro_from_edges(const std::vector<std::pair<int, int>>& edges,
                       const std::vector<std::pair<std::string, std::vector<int>>>& trailers, int dim) {
  std::vector<int> sinks;
  std::map<int, int> label_of;
  for (const auto& [name, values] : trailers) {
    if (name == "sink" || name == "sinks") {
      sinks.insert(sinks.end(), values.begin(), values.end());
    } else if (name.size() >= 2 && name[0] == 'a' && std::isdigit(static_cast<unsigned char>(name[1]))) {
      int label = std::stoi(name.substr(1));
      for (int v : values) label_of[v] = label;
    } else {
      throw std::invalid_argument(fmt::format("unknown micro-graph annotation '{}'", name));
    }
  }
  int max_vertex = -1;
  std::map<int, std::vector<int>> out;
  for (auto [a, b] : edges) {
    out[a].push_back(b);
    max_vertex = std::max({max_vertex, a, b});
  }
  for (int s : sinks) max_vertex = std::max(max_vertex, s);
  for (auto& [v, l] : label_of) max_vertex = std::max(max_vertex, v);
  if (!out.empty()) {
    int d = static_cast<int>(out.begin()->second.size());
    if (dim != 0 && dim != d) throw std::invalid_argument("micro-graph out-degree does not match dimension");
    dim = d;
  }
  if (dim < 2) throw std::invalid_argument("cannot infer micro-graph dimension");
  std::vector<int> new_id(max_vertex + 1, -1);
  int next = 0;
  for (int s : sinks) {
    if (out.count(s)) throw std::invalid_argument("a sink cannot have outgoing edges");
    if (new_id[s] >= 0) throw std::invalid_argument("repeated sink");
    new_id[s] = next++;
  }
  for (auto& [v, t] : out) new_id[v] = next++;
  std::vector<int> labels;
  for (int v = 0; v <= max_vertex; ++v) {
    if (new_id[v] >= 0) continue;
    new_id[v] = next++;
    auto it = label_of.find(v);
    if (it == label_of.end()) {
      if (dim != 3) throw std::invalid_argument("terminal labels are required for d >= 4");
      labels.push_back(1);
    } else {
      labels.push_back(it->second);
    }
  }
  std::vector<std::vector<int>> targets;
  for (auto& [v, t] : out) {
    std::vector<int> mapped;
    for (int x : t) mapped.push_back(new_id[x]);
    targets.push_back(std::move(mapped));
  }
  return Graph::micro(dim, static_cast<int>(sinks.size()), std::move(targets), std::move(labels));
}

}  // namespace

GraphTerm parse_term(std::string_view text, GraphKind kind, int num_sinks, int dim) {
  TermParser p(text);
  GraphTerm term;
  term.coefficient = p.coefficient();
  if (kind == GraphKind::micro) {
    auto edges = p.edge_list();
    auto trailers = p.trailers();
    p.finish();
    term.graph = micro_from_edges(edges, trailers, dim);
  } else {
    auto tuples = p.kontsevich_tuples();
    p.finish();
    term.graph = Graph(kind, 0, num_sinks, std::move(tuples));
  }
  return term;
}

Graph parse_graph(std::string_view text, GraphKind kind, int num_sinks, int dim) {
  return parse_term(text, kind, num_sinks, dim).graph;
}

std::string to_string(const Graph& g) {
  std::string s;
  if (g.kind() != GraphKind::micro) {
    s = "(";
    for (std::size_t k = 0; k < g.targets().size(); ++k) {
      if (k) s += ";";
      for (std::size_t i = 0; i < g.targets()[k].size(); ++i) s += (i ? "," : "") + std::to_string(g.targets()[k][i]);
    }
    return s + ")";
  }
  s = "[";
  bool first = true;
  for (int k = 0; k < g.num_aerial(); ++k) {
    for (int x : g.targets()[k]) {
      s += fmt::format("{}({},{})", first ? "" : ", ", g.aerial_id(k), x);
      first = false;
    }
  }
  s += "]";
  if (g.num_sinks() == 1) {
    s += " (sink 0)";
  } else if (g.num_sinks() > 1) {
    s += " (sinks ";
    for (int i = 0; i < g.num_sinks(); ++i) s += (i ? "," : "") + std::to_string(i);
    s += ")";
  }
  if (g.dim() >= 4) {
    for (int l = 1; l <= g.dim() - 2; ++l) {
      s += fmt::format(" (a{}", l);
      bool any = false;
      for (int t = 0; t < g.num_terminals(); ++t) {
        if (g.terminal_labels()[t] != l) continue;
        s += fmt::format("{}{}", any ? "," : " ", g.terminal_id(t));
        any = true;
      }
      s += ")";
    }
  }
  return s;
}

std::string to_string(const GraphTerm& t) { return fmt::format("{} * {}", t.coefficient.get_str(), to_string(t.graph)); }

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["kind"] = std::string(to_string(g.kind()));
  j["dim"] = g.dim();
  j["num_sinks"] = g.num_sinks();
  j["targets"] = g.targets();
  j["terminal_labels"] = g.terminal_labels();
  return j.dump();
}

Graph graph_from_json(std::string_view json) {
  nlohmann::json j = nlohmann::json::parse(json);
  std::string kind = j.at("kind").get<std::string>();
  GraphKind k = kind == "kontsevich" ? GraphKind::kontsevich
                : kind == "leibniz"  ? GraphKind::leibniz
                : kind == "micro"    ? GraphKind::micro
                                     : throw std::invalid_argument("unknown graph kind '" + kind + "'");
  return Graph(k, j.value("dim", 0), j.at("num_sinks").get<int>(),
               j.at("targets").get<std::vector<std::vector<int>>>(),
               j.value("terminal_labels", std::vector<int>{}));
}

}  // namespace mgc
