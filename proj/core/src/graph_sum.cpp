#include <mgc/graph_sum.hpp>

#include <fmt/format.h>

#include <stdexcept>

namespace mgc {

Rational GraphSum::coefficient(const Graph& g) const {
  CanonicalForm cf = canonical_form(g);
  if (cf.zero) return 0;
  auto it = terms_.find(cf.graph);
  return it == terms_.end() ? Rational(0) : Rational(cf.sign * it->second);
}

void GraphSum::add(const Graph& g, const Rational& c) {
  if (g.kind() != kind_) throw std::invalid_argument("graph kind does not match the sum");
  if (kind_ == GraphKind::micro) {
    if (dim_ == 0) dim_ = g.dim();
    if (g.dim() != dim_) throw std::invalid_argument("micro-graph dimension does not match the sum");
  }
  if (c == 0) return;
  CanonicalForm cf = canonical_form(g);
  if (cf.zero) return;
  auto [it, inserted] = terms_.try_emplace(std::move(cf.graph), 0);
  it->second += cf.sign * c;
  if (it->second == 0) terms_.erase(it);
}

GraphSum& GraphSum::operator+=(const GraphSum& other) {
  for (const auto& [g, c] : other.terms_) add(g, c);
  return *this;
}

GraphSum& GraphSum::operator-=(const GraphSum& other) {
  for (const auto& [g, c] : other.terms_) add(g, -c);
  return *this;
}

GraphSum& GraphSum::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, v] : terms_) v *= c;
  return *this;
}

namespace {

/// Splits a sum into terms at top-level signs that follow a complete graph.
std::vector<std::string> split_terms(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  bool closed = false;
  auto flush = [&] {
    if (current.find_first_not_of(" \t\r\n") != std::string::npos) out.push_back(current);
    current.clear();
    closed = false;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    // Unicode minus sign (U+2212) is accepted as '-'.
    if (static_cast<unsigned char>(ch) == 0xE2 && i + 2 < text.size() &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      ch = '-';
      i += 2;
    }
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') {
      --depth;
      if (depth == 0) closed = true;
    }
    if (depth == 0 && (ch == '+' || ch == '-' || ch == '\n') && closed) {
      flush();
      if (ch == '\n') continue;
      if (ch == '+') continue;
    }
    current += ch;
  }
  flush();
  return out;
}

}  // namespace

GraphSum parse_graph_sum(std::string_view text, GraphKind kind, int num_sinks, int dim) {
  GraphSum sum(kind, dim);
  for (const std::string& t : split_terms(text)) {
    GraphTerm term = parse_term(t, kind, num_sinks, dim);
    sum.add(term.graph, term.coefficient);
  }
  return sum;
}

std::string to_string(const GraphSum& s) {
  std::string out;
  const bool lines = s.kind() == GraphKind::micro;
  for (const auto& [g, c] : s.terms()) {
    if (lines) {
      out += fmt::format("{} * {}\n", c.get_str(), to_string(g));
    } else {
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      Rational a = abs(c);
      out += fmt::format("{}*{}", a.get_str(), to_string(g));
    }
  }
  if (out.empty()) return lines ? "" : "0";
  return out;
}

GraphSum leibniz_expand(const Graph& g) {
  if (g.kind() != GraphKind::leibniz) throw std::invalid_argument("leibniz_expand needs a Leibniz graph");
  const int m = g.num_sinks();
  const int n = g.num_aerial();
  int trident = -1;
  for (int k = 0; k < n; ++k)
    if (g.targets()[k].size() == 3) trident = k;
  const int t = g.aerial_id(trident);
  const int u = t;          // the outer wedge keeps the trident's id
  const int w = m + n;      // the inner wedge is appended
  const auto& lmr = g.targets()[trident];

  GraphSum result(GraphKind::kontsevich);
  for (int shift = 0; shift < 3; ++shift) {
    const int x = lmr[shift], y = lmr[(shift + 1) % 3], z = lmr[(shift + 2) % 3];
    std::vector<std::vector<int>> targets = g.targets();
    targets[trident] = {x, w};
    targets.push_back({y, z});
    // Every edge landing on the old trident is distributed over u and w.
    std::vector<std::pair<int, int>> slots;
    for (int k = 0; k <= n; ++k)
      for (int e = 0; e < 2; ++e)
        if (targets[k][e] == t && !(k == trident && e == 1)) slots.emplace_back(k, e);
    const std::size_t count = std::size_t{1} << slots.size();
    for (std::size_t mask = 0; mask < count; ++mask) {
      auto tt = targets;
      for (std::size_t s = 0; s < slots.size(); ++s) tt[slots[s].first][slots[s].second] = (mask >> s & 1) ? w : u;
      result.add(Graph::kontsevich(m, std::move(tt)), 1);
    }
  }
  return result;
}

}  // namespace mgc
