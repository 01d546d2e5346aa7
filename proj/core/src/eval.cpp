#include <mgc/eval.hpp>
#include <mgc/parallel.hpp>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace mgc {

Contents contents_of(const MultiVector& p) {
  if (p.degree() != 2) throw std::invalid_argument("contents need a bi-vector");
  return Contents{p, jacobiator(p)};
}

Contents nambu_contents(int dim) { return contents_of(nambu_bivector(dim)); }

namespace {

using Counts = std::array<int, kMaxDim>;

/// Sums the graph's operator over all index assignments with nonzero contents.
class Engine {
 public:
  Engine(const Graph& g, int dim, const Contents* contents) : g_(g), dim_(dim), builder_(dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("evaluation dimension out of range");
    const int n = g.num_aerial();
    options_.resize(n);
    for (int k = 0; k < n; ++k) {
      const int arity = static_cast<int>(g.targets()[k].size());
      if (g.kind() == GraphKind::micro) {
        if (arity != dim) throw std::invalid_argument("micro-graph out-degree does not match dimension");
        const int rho = content(DiffPoly::variable(dim, JetVar::rho()), "rho");
        std::vector<int> perm(dim);
        std::iota(perm.begin(), perm.end(), 0);
        do {
          options_[k].push_back(option(perm, levi_civita(perm, dim), rho));
        } while (std::next_permutation(perm.begin(), perm.end()));
      } else {
        const MultiVector& mv = arity == 2 ? contents->bivector : contents->trivector;
        if (mv.degree() != arity || (mv.dim() != dim && !mv.is_zero()))
          throw std::invalid_argument("vertex content does not match out-degree or dimension");
        std::vector<int> idx(arity, 0);
        enumerate_tuples(idx, 0, mv, options_[k]);
      }
    }
    fixed_.assign(g.num_vertices(), -1);
    for (int s = 0; s < g.num_sinks(); ++s)
      fixed_[s] = content(DiffPoly::variable(dim, JetVar::sink(s)), "s" + std::to_string(s));
    for (int t = 0; t < g.num_terminals(); ++t) {
      const int label = g.terminal_labels()[t];
      fixed_[g.terminal_id(t)] =
          content(DiffPoly::variable(dim, JetVar::casimir(label)), "a" + std::to_string(label));
    }
    counts_.assign(g.num_vertices(), Counts{});
    choice_.assign(n, nullptr);
  }

  DiffPoly run() && {
    for (const auto& o : options_)
      if (o.empty()) return DiffPoly(dim_);
    dfs(0);
    return std::move(builder_).build();
  }

 private:
  struct Option {
    std::array<int, kMaxDim> idx{};
    int sign = 1;
    int content = 0;
  };

  Option option(const std::vector<int>& idx, int sign, int content_id) {
    Option o;
    std::copy(idx.begin(), idx.end(), o.idx.begin());
    o.sign = sign;
    o.content = content_id;
    return o;
  }

  void enumerate_tuples(std::vector<int>& idx, std::size_t pos, const MultiVector& mv, std::vector<Option>& out) {
    if (pos == idx.size()) {
      DiffPoly value = mv.get(idx);
      if (value.is_zero()) return;
      std::string key = "mv";
      for (int i : idx) key += static_cast<char>('0' + i);
      out.push_back(option(idx, 1, content(std::move(value), key)));
      return;
    }
    for (int i = 0; i < dim_; ++i) {
      idx[pos] = i;
      enumerate_tuples(idx, pos + 1, mv, out);
    }
  }

  int content(DiffPoly base, const std::string& key) {
    auto it = content_ids_.find(key);
    if (it != content_ids_.end()) return it->second;
    base_.push_back(std::move(base));
    const int id = static_cast<int>(base_.size()) - 1;
    content_ids_.emplace(key, id);
    return id;
  }

  const DiffPoly& derivative(int content_id, const Counts& c) {
    std::uint64_t key = static_cast<std::uint64_t>(content_id) << 32;
    bool any = false;
    for (int i = 0; i < dim_; ++i) {
      if (c[i] > 15) throw std::length_error("derivative order too large for evaluation cache");
      key |= static_cast<std::uint64_t>(c[i]) << (4 * i);
      any |= c[i] != 0;
    }
    if (!any) return base_[content_id];
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(key, dp_partial(base_[content_id], c)).first->second;
  }

  void dfs(int k) {
    if (k == g_.num_aerial()) {
      leaf();
      return;
    }
    const auto& targets = g_.targets()[k];
    for (const Option& o : options_[k]) {
      for (std::size_t e = 0; e < targets.size(); ++e) ++counts_[targets[e]][o.idx[e]];
      choice_[k] = &o;
      dfs(k + 1);
      for (std::size_t e = 0; e < targets.size(); ++e) --counts_[targets[e]][o.idx[e]];
    }
  }

  void leaf() {
    int sign = 1;
    for (const Option* o : choice_) sign *= o->sign;
    DiffPoly product = DiffPoly::constant(dim_, sign);
    for (int v = 0; v < g_.num_vertices(); ++v) {
      const int id = g_.role(v) == VertexRole::aerial ? choice_[v - g_.num_sinks()]->content : fixed_[v];
      const DiffPoly& factor = derivative(id, counts_[v]);
      if (factor.is_zero()) return;
      product = product * factor;
    }
    builder_.add(product);
  }

  const Graph& g_;
  int dim_;
  PolyBuilder builder_;
  std::vector<DiffPoly> base_;
  std::unordered_map<std::string, int> content_ids_;
  std::unordered_map<std::uint64_t, DiffPoly> cache_;
  std::vector<std::vector<Option>> options_;
  std::vector<int> fixed_;
  std::vector<Counts> counts_;
  std::vector<const Option*> choice_;
};

}  // namespace

DiffPoly evaluate(const Graph& g, const Contents& contents) {
  if (g.kind() == GraphKind::micro) return evaluate(g);
  return Engine(g, contents.dim(), &contents).run();
}

DiffPoly evaluate(const Graph& micro) {
  if (micro.kind() != GraphKind::micro) throw std::invalid_argument("graph needs vertex contents");
  return Engine(micro, micro.dim(), nullptr).run();
}

namespace {

template <class Eval>
DiffPoly evaluate_sum(const GraphSum& sum, int dim, int jobs, Eval&& eval) {
  std::vector<const std::pair<const Graph, Rational>*> terms;
  for (const auto& t : sum.terms()) terms.push_back(&t);
  std::vector<DiffPoly> values(terms.size());
  parallel_for(terms.size(), jobs, [&](std::size_t i) { values[i] = eval(terms[i]->first); });
  PolyBuilder b(dim);
  for (std::size_t i = 0; i < terms.size(); ++i) b.add(values[i], terms[i]->second);
  return std::move(b).build();
}

}  // namespace

DiffPoly evaluate(const GraphSum& sum, const Contents& contents, int jobs) {
  if (sum.kind() == GraphKind::micro) return evaluate(sum, jobs);
  return evaluate_sum(sum, contents.dim(), jobs, [&](const Graph& g) { return evaluate(g, contents); });
}

DiffPoly evaluate(const GraphSum& micro_sum, int jobs) {
  if (micro_sum.kind() != GraphKind::micro) throw std::invalid_argument("graph sum needs vertex contents");
  return evaluate_sum(micro_sum, micro_sum.dim(), jobs, [](const Graph& g) { return evaluate(g); });
}

namespace {

/// Splits every term into (argument index tuple, remaining monomial).
std::map<std::vector<int>, DiffPoly> argument_components(const DiffPoly& op, int num_sinks, int dim) {
  std::map<std::vector<int>, PolyBuilder> acc;
  for (const Term& t : op.terms()) {
    std::vector<int> idx(num_sinks, -1);
    Monomial rest;
    for (JetVar v : t.monomial) {
      if (v.symbol() != Symbol::sink) {
        rest.push_back(v);
        continue;
      }
      const int s = v.label();
      if (s >= num_sinks || idx[s] >= 0 || v.order() != 1)
        throw std::invalid_argument("operator is not of first order in each argument");
      for (int i = 0; i < dim; ++i)
        if (v.count(i)) idx[s] = i;
    }
    for (int i : idx)
      if (i < 0) throw std::invalid_argument("operator is not of first order in each argument");
    acc.try_emplace(idx, dim).first->second.add(rest, t.coefficient);
  }
  std::map<std::vector<int>, DiffPoly> out;
  for (auto& [idx, b] : acc) {
    DiffPoly p = std::move(b).build();
    if (!p.is_zero()) out.emplace(idx, std::move(p));
  }
  return out;
}

}  // namespace

MultiVector to_multivector(const DiffPoly& op, int num_sinks, int dim) {
  MultiVector result(dim, num_sinks);
  Rational weight(1);
  for (int k = 2; k <= num_sinks; ++k) weight /= k;
  for (const auto& [idx, p] : argument_components(op, num_sinks, dim)) {
    const int s = levi_civita(idx, dim);
    if (s == 0) continue;
    std::uint32_t mask = 0;
    for (int i : idx) mask |= std::uint32_t{1} << i;
    result.add(mask, p * Rational(s * weight));
  }
  return result;
}

bool is_skew(const DiffPoly& op, int num_sinks, int dim) {
  auto comps = argument_components(op, num_sinks, dim);
  for (const auto& [idx, p] : comps) {
    if (levi_civita(idx, dim) == 0) return false;
    for (int a = 0; a + 1 < num_sinks; ++a) {
      std::vector<int> swapped = idx;
      std::swap(swapped[a], swapped[a + 1]);
      auto it = comps.find(swapped);
      if (it == comps.end() || !(it->second == -p)) return false;
    }
  }
  return true;
}

GraphSum gamma3_graphs() {
  return parse_graph_sum("1*(0,1;2,4;2,5;2,3) - 3*(0,3;1,4;2,5;2,3) - 3*(0,3;4,5;1,2;2,4)",
                         GraphKind::kontsevich, 2);
}

MultiVector gamma3_flow(const MultiVector& p) {
  return to_multivector(evaluate(gamma3_graphs(), contents_of(p)), 2, p.dim());
}

GraphSum sunflower_graphs() {
  return parse_graph_sum("1*(0,1;1,3;1,2) + 2*(0,2;1,3;1,2)", GraphKind::kontsevich, 1);
}

MultiVector sunflower_field(const MultiVector& p) {
  return to_multivector(evaluate(sunflower_graphs(), contents_of(p)), 1, p.dim());
}

namespace {

/// Enumerates all ways of redirecting each listed edge slot to one of `choices`.
template <class Visit>
void distribute(std::vector<std::vector<int>>& targets, const std::vector<std::pair<int, int>>& slots,
                const std::vector<std::vector<int>>& choices, std::size_t pos, Visit&& visit) {
  if (pos == slots.size()) {
    visit(targets);
    return;
  }
  auto [k, e] = slots[pos];
  const int saved = targets[k][e];
  for (int c : choices[pos]) {
    targets[k][e] = c;
    distribute(targets, slots, choices, pos + 1, visit);
  }
  targets[k][e] = saved;
}

}  // namespace

GraphSum expand_to_micrographs(const Graph& g, int dim) {
  if (g.kind() != GraphKind::kontsevich) throw std::invalid_argument("micro-expansion needs a Kontsevich graph");
  if (dim < 3) throw std::invalid_argument("micro-expansion needs d >= 3");
  const int m = g.num_sinks();
  const int n = g.num_aerial();
  const int c = dim - 2;
  auto terminal = [&](int k, int label) { return m + n + k * c + (label - 1); };
  std::vector<std::vector<int>> targets(n);
  std::vector<int> labels;
  for (int k = 0; k < n; ++k) {
    for (int l = 1; l <= c; ++l) {
      targets[k].push_back(terminal(k, l));
      labels.push_back(l);
    }
    targets[k].push_back(g.targets()[k][0]);
    targets[k].push_back(g.targets()[k][1]);
  }
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<int>> choices;
  for (int k = 0; k < n; ++k) {
    for (int e = c; e < c + 2; ++e) {
      const int t = targets[k][e];
      if (t < m) continue;
      slots.emplace_back(k, e);
      std::vector<int> options{t};
      for (int l = 1; l <= c; ++l) options.push_back(terminal(t - m, l));
      choices.push_back(std::move(options));
    }
  }
  GraphSum result(GraphKind::micro, dim);
  distribute(targets, slots, choices, 0, [&](const std::vector<std::vector<int>>& tt) {
    result.add(Graph::micro(dim, m, tt, labels), 1);
  });
  return result;
}

GraphSum expand_to_micrographs(const GraphSum& sum, int dim) {
  GraphSum result(GraphKind::micro, dim);
  for (const auto& [g, coeff] : sum.terms()) {
    GraphSum part = expand_to_micrographs(g, dim);
    part *= coeff;
    result += part;
  }
  return result;
}

GraphSum graph_schouten_with_wedge(const GraphSum& x) {
  GraphSum result(GraphKind::kontsevich);
  for (const auto& [g, coeff] : x.terms()) {
    if (g.num_sinks() != 1) throw std::invalid_argument("graph-level bracket needs 1-vector graphs");
    const int n = g.num_aerial();
    // Layout: sinks f = 0, g = 1; X's aerial vertices 2..n+1; the new wedge is n+2.
    const int wedge = n + 2;
    auto shifted = [&](int sink_image) {
      std::vector<std::vector<int>> t = g.targets();
      for (auto& tuple : t)
        for (int& v : tuple) v = v == 0 ? sink_image : v + 1;
      return t;
    };
    // P(Xf, g) and P(f, Xg): the wedge's edge acts on every factor of X(.).
    for (int arg = 0; arg < 2; ++arg) {
      const int sink_of_x = arg;
      std::vector<int> image{sink_of_x};
      for (int k = 0; k < n; ++k) image.push_back(k + 2);
      for (int v : image) {
        auto t = shifted(sink_of_x);
        t.push_back(arg == 0 ? std::vector<int>{v, 1} : std::vector<int>{0, v});
        result.add(Graph::kontsevich(2, std::move(t)), coeff);
      }
    }
    // -X(P(f, g)): X's sink edges act on the wedge and both of its arguments.
    auto t = shifted(0);
    t.push_back({0, 1});
    std::vector<std::pair<int, int>> slots;
    std::vector<std::vector<int>> choices;
    for (int k = 0; k < n; ++k)
      for (int e = 0; e < 2; ++e)
        if (g.targets()[k][e] == 0) {
          slots.emplace_back(k, e);
          choices.push_back({wedge, 0, 1});
        }
    distribute(t, slots, choices, 0, [&](const std::vector<std::vector<int>>& tt) {
      result.add(Graph::kontsevich(2, tt), -coeff);
    });
  }
  return result;
}

}  // namespace mgc
