#include <mgc/ansatz.hpp>
#include <mgc/eval.hpp>
#include <mgc/parallel.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mgc {

void AnsatzSpec::validate() const {
  if (dim < 2 || dim > kMaxDim) throw std::invalid_argument("ansatz dimension out of range");
  if (aerial < 0 || aerial > 4) throw std::invalid_argument("ansatz supports 0..4 aerial vertices");
  if (sinks < 0) throw std::invalid_argument("negative sink count");
  if (sink_indegree < 0 || min_terminal_indegree < 0) throw std::invalid_argument("negative in-degree constraint");
  if (max_tadpoles < 0 || max_tadpoles > 1) throw std::invalid_argument("at most one tadpole is supported");
}

namespace {

/// Digraph on the aerial vertices plus the in-neighbourhoods (bitmasks over aerial
/// vertices) of all out-degree-0 vertices, encoded as a flat integer vector:
/// n*n arc flags, loop position + 1, then the sorted masks.
using Skeleton = std::vector<int>;

struct SkeletonView {
  int n;
  const Skeleton& s;
  int arc(int i, int j) const { return s[i * n + j]; }
  int loop() const { return s[n * n] - 1; }
  std::size_t num_masks() const { return s.size() - n * n - 1; }
  int mask(std::size_t k) const { return s[n * n + 1 + k]; }
};

int remap_mask(int mask, const std::vector<int>& p) {
  int out = 0;
  for (std::size_t k = 0; k < p.size(); ++k) out |= ((mask >> p[k]) & 1) << k;
  return out;
}

/// Relabels so that new aerial vertex k is old vertex p[k].
Skeleton relabel(const Skeleton& s, int n, const std::vector<int>& p) {
  SkeletonView v{n, s};
  Skeleton out(s.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i * n + j] = v.arc(p[i], p[j]);
  int loop = 0;
  if (v.loop() >= 0) loop = static_cast<int>(std::find(p.begin(), p.end(), v.loop()) - p.begin()) + 1;
  out[n * n] = loop;
  for (std::size_t k = 0; k < v.num_masks(); ++k) out[n * n + 1 + k] = remap_mask(v.mask(k), p);
  std::sort(out.begin() + n * n + 1, out.end());
  return out;
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

Skeleton canonical(const Skeleton& s, int n, const std::vector<std::vector<int>>& perms) {
  Skeleton best = s;
  for (const auto& p : perms) best = std::min(best, relabel(s, n, p));
  return best;
}

class SkeletonGenerator {
 public:
  SkeletonGenerator(const AnsatzSpec& spec, const std::vector<std::vector<int>>& perms)
      : spec_(spec), n_(spec.aerial), perms_(perms) {
    num_masks_ = spec.sinks + spec.aerial * (spec.dim - 2);
    min_popcount_ = std::min(spec.sinks > 0 ? spec.sink_indegree : spec.min_terminal_indegree,
                             spec.aerial * (spec.dim - 2) > 0 ? spec.min_terminal_indegree : spec.sink_indegree);
  }

  /// Canonical skeletons for one aerial arc pattern (all loop choices).
  std::set<Skeleton> for_pattern(unsigned pattern) {
    std::set<Skeleton> out;
    std::vector<int> arcs(n_ * n_, 0);
    int bit = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) arcs[i * n_ + j] = (pattern >> bit++) & 1;
    for (int loop = -1; loop < (spec_.max_tadpoles > 0 ? n_ : 0); ++loop) {
      std::vector<int> need(n_);
      bool ok = true;
      for (int i = 0; i < n_; ++i) {
        int out_deg = (loop == i);
        for (int j = 0; j < n_; ++j) out_deg += arcs[i * n_ + j];
        need[i] = spec_.dim - out_deg;
        ok &= need[i] >= 0 && need[i] <= num_masks_;
      }
      if (!ok) continue;
      Skeleton base = arcs;
      base.push_back(loop + 1);
      std::vector<int> masks;
      choose_masks(base, masks, need, 0, out);
    }
    return out;
  }

 private:
  void choose_masks(const Skeleton& base, std::vector<int>& masks, std::vector<int>& need, int min_mask,
                    std::set<Skeleton>& out) {
    const int left = num_masks_ - static_cast<int>(masks.size());
    for (int i = 0; i < n_; ++i)
      if (need[i] > left) return;
    if (left == 0) {
      Skeleton s = base;
      s.insert(s.end(), masks.begin(), masks.end());
      out.insert(canonical(s, n_, perms_));
      return;
    }
    for (int m = min_mask; m < (1 << n_); ++m) {
      if (std::popcount(static_cast<unsigned>(m)) < min_popcount_) continue;
      bool fits = true;
      for (int i = 0; i < n_; ++i)
        if ((m >> i & 1) && need[i] == 0) fits = false;
      if (!fits) continue;
      for (int i = 0; i < n_; ++i) need[i] -= (m >> i) & 1;
      masks.push_back(m);
      choose_masks(base, masks, need, m, out);
      masks.pop_back();
      for (int i = 0; i < n_; ++i) need[i] += (m >> i) & 1;
    }
  }

  const AnsatzSpec& spec_;
  int n_;
  const std::vector<std::vector<int>>& perms_;
  int num_masks_ = 0;
  int min_popcount_ = 0;
};

Graph build_graph(const AnsatzSpec& spec, const Skeleton& s, const std::vector<std::size_t>& sink_pos,
                  const std::vector<std::size_t>& terminal_pos, const std::vector<int>& labels) {
  const int n = spec.aerial;
  const int m = spec.sinks;
  SkeletonView v{n, s};
  // Vertex id of each out-degree-0 position.
  std::vector<int> id(v.num_masks());
  for (int k = 0; k < m; ++k) id[sink_pos[k]] = k;
  for (std::size_t t = 0; t < terminal_pos.size(); ++t) id[terminal_pos[t]] = m + n + static_cast<int>(t);
  std::vector<std::vector<int>> targets(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (v.arc(i, j) || (i == j && v.loop() == i)) targets[i].push_back(m + j);
    for (std::size_t k = 0; k < v.num_masks(); ++k)
      if (v.mask(k) >> i & 1) targets[i].push_back(id[k]);
    std::sort(targets[i].begin(), targets[i].end());
  }
  return Graph::micro(spec.dim, m, std::move(targets), labels);
}

}  // namespace

Ansatz generate(const AnsatzSpec& spec, int jobs) {
  spec.validate();
  const int n = spec.aerial;
  const auto perms = all_permutations(n);
  const unsigned patterns = 1u << (n * (n - 1));

  // Unlabelled skeletons, one bucket per arc pattern so the merge is deterministic.
  std::vector<std::set<Skeleton>> buckets(patterns);
  SkeletonGenerator gen(spec, perms);
  parallel_for(patterns, jobs, [&](std::size_t p) { buckets[p] = gen.for_pattern(static_cast<unsigned>(p)); });
  std::set<Skeleton> skeletons;
  for (auto& b : buckets) skeletons.merge(b);

  Ansatz result;
  for (const Skeleton& s : skeletons) ++result.stats.unlabeled[SkeletonView{n, s}.loop() >= 0 ? 1 : 0];

  std::vector<Skeleton> list(skeletons.begin(), skeletons.end());
  std::vector<int> label_multiset;
  for (int l = 1; l <= spec.dim - 2; ++l) label_multiset.insert(label_multiset.end(), n, l);

  std::vector<std::vector<Graph>> per_skeleton(list.size());
  std::vector<std::size_t> labeled(list.size(), 0);
  parallel_for(list.size(), jobs, [&](std::size_t idx) {
    const Skeleton& s = list[idx];
    SkeletonView v{n, s};
    std::vector<std::vector<int>> auts;
    for (const auto& p : perms)
      if (relabel(s, n, p) == s) auts.push_back(p);
    // Ordered sink choices, one per orbit of their in-neighbourhood tuple.
    std::set<std::vector<int>> seen;
    std::vector<std::size_t> pos(spec.sinks);
    std::vector<bool> used(v.num_masks(), false);
    std::set<Graph> graphs;
    auto emit = [&] {
      std::vector<int> key;
      for (std::size_t k : pos) key.push_back(v.mask(k));
      std::vector<int> rep = key;
      for (const auto& p : auts) {
        std::vector<int> image;
        for (int mk : key) image.push_back(remap_mask(mk, p));
        rep = std::min(rep, image);
      }
      if (!seen.insert(rep).second) return;
      std::vector<std::size_t> terminals;
      for (std::size_t k = 0; k < v.num_masks(); ++k) {
        if (used[k]) continue;
        if (std::popcount(static_cast<unsigned>(v.mask(k))) < spec.min_terminal_indegree) return;
        terminals.push_back(k);
      }
      std::vector<int> labels = label_multiset;
      do {
        ++labeled[idx];
        graphs.insert(canonical_form(build_graph(spec, s, pos, terminals, labels)).graph);
      } while (std::next_permutation(labels.begin(), labels.end()));
    };
    auto choose = [&](auto&& self, int k) -> void {
      if (k == spec.sinks) {
        emit();
        return;
      }
      for (std::size_t c = 0; c < v.num_masks(); ++c) {
        if (used[c] || std::popcount(static_cast<unsigned>(v.mask(c))) != spec.sink_indegree) continue;
        used[c] = true;
        pos[k] = c;
        self(self, k + 1);
        used[c] = false;
      }
    };
    choose(choose, 0);
    per_skeleton[idx].assign(graphs.begin(), graphs.end());
  });

  std::set<Graph> all;
  for (std::size_t i = 0; i < list.size(); ++i) {
    result.stats.labeled += labeled[i];
    all.insert(per_skeleton[i].begin(), per_skeleton[i].end());
  }
  result.graphs.assign(all.begin(), all.end());
  for (const Graph& g : result.graphs) ++result.stats.distinct[g.tadpole_count() > 0 ? 1 : 0];
  return result;
}

std::vector<Graph> generate_brute_force(const AnsatzSpec& spec) {
  spec.validate();
  const int n = spec.aerial;
  const int m = spec.sinks;
  const int d = spec.dim;
  const int num_vertices = m + n + n * (d - 2);
  std::vector<int> labels;
  for (int l = 1; l <= d - 2; ++l) labels.insert(labels.end(), n, l);

  std::vector<std::vector<int>> tuples;
  std::vector<int> sel(num_vertices, 0);
  std::fill(sel.end() - std::min(d, num_vertices), sel.end(), 1);
  if (d <= num_vertices) {
    do {
      std::vector<int> t;
      for (int v = 0; v < num_vertices; ++v)
        if (sel[v]) t.push_back(v);
      tuples.push_back(std::move(t));
    } while (std::next_permutation(sel.begin(), sel.end()));
  }

  std::set<Graph> out;
  std::vector<std::vector<int>> targets(n);
  auto rec = [&](auto&& self, int k) -> void {
    if (k == n) {
      Graph g = Graph::micro(d, m, targets, labels);
      if (g.tadpole_count() > spec.max_tadpoles) return;
      auto in = g.in_degrees();
      for (int s = 0; s < m; ++s)
        if (in[s] != spec.sink_indegree) return;
      for (int t = 0; t < g.num_terminals(); ++t)
        if (in[g.terminal_id(t)] < spec.min_terminal_indegree) return;
      out.insert(canonical_form(g).graph);
      return;
    }
    for (const auto& t : tuples) {
      targets[k] = t;
      self(self, k + 1);
    }
  };
  if (n == 0) {
    if (m == 0 || spec.sink_indegree == 0) out.insert(Graph::micro(d, m, {}, {}));
  } else if (!tuples.empty()) {
    rec(rec, 0);
  }
  return {out.begin(), out.end()};
}

std::vector<Graph> vanish_filter(const std::vector<Graph>& graphs, int jobs) {
  std::vector<char> keep(graphs.size(), 0);
  parallel_for(graphs.size(), jobs, [&](std::size_t i) { keep[i] = !evaluate(graphs[i]).is_zero(); });
  std::vector<Graph> out;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    if (keep[i]) out.push_back(graphs[i]);
  return out;
}

}  // namespace mgc
