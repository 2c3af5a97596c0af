#pragma once

// Couplings of uniform laws on finite sets S, T under an allowed-pair set D.
// The minimum deficiency comes from an exact integer max-flow; the sprinkling
// constraint pairs each regular graph with its ordered edge-disjoint splittings.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "regglab/bigint.hpp"
#include "regglab/errors.hpp"
#include "regglab/exactcount.hpp"
#include "regglab/graph.hpp"
#include "regglab/graph_io.hpp"
#include "regglab/rng.hpp"
#include "regglab/sampler.hpp"

namespace regglab {

struct BipartiteConstraint {
  int S_size = 0;
  int T_size = 0;
  std::vector<std::vector<int>> edges;  // edges[s] = sorted allowed t indices
  std::vector<std::string> s_labels;
  std::vector<std::string> t_labels;

  static BipartiteConstraint create(int S_size, int T_size, std::vector<std::vector<int>> edges) {
    if (S_size < 0 || T_size < 0) fail(ErrorCode::InvalidArgument, "negative side size");
    if (static_cast<int>(edges.size()) != S_size) fail(ErrorCode::SizeMismatch, "need one adjacency list per S node");
    for (auto& row : edges) {
      std::sort(row.begin(), row.end());
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] < 0 || row[i] >= T_size) fail(ErrorCode::VertexOutOfRange, "T index " + std::to_string(row[i]) + " out of range");
        if (i > 0 && row[i] == row[i - 1]) fail(ErrorCode::DuplicateEdge, "duplicate pair to T index " + std::to_string(row[i]));
      }
    }
    return {S_size, T_size, std::move(edges), {}, {}};
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& row : edges) m += row.size();
    return m;
  }

  bool allowed(int s, int t) const { return std::binary_search(edges[s].begin(), edges[s].end(), t); }

  std::vector<int> t_degrees() const {
    std::vector<int> deg(T_size, 0);
    for (const auto& row : edges)
      for (int t : row) ++deg[t];
    return deg;
  }
};

/// Random constraint with both sides in [1, max_side] and edge density drawn per instance.
inline BipartiteConstraint random_bipartite_constraint(SeedSpec seed, int max_side = 12) {
  CounterRng rng(seed);
  const int s = 1 + rng.below(max_side);
  const int t = 1 + rng.below(max_side);
  const double p = rng.uniform();
  std::vector<std::vector<int>> edges(s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < t; ++j)
      if (rng.uniform() < p) edges[i].push_back(j);
  return BipartiteConstraint::create(s, t, std::move(edges));
}

struct JointDistribution {
  int S_size = 0;
  int T_size = 0;
  std::map<std::pair<int, int>, Rational> mass;

  Rational total() const {
    Rational sum = 0;
    for (const auto& [k, v] : mass) sum += v;
    return sum;
  }

  std::vector<Rational> row_sums() const {
    std::vector<Rational> r(S_size, Rational(0));
    for (const auto& [k, v] : mass) r[k.first] += v;
    return r;
  }

  std::vector<Rational> column_sums() const {
    std::vector<Rational> c(T_size, Rational(0));
    for (const auto& [k, v] : mass) c[k.second] += v;
    return c;
  }

  bool has_uniform_marginals() const {
    const Rational rs(1, S_size), ct(1, T_size);
    for (const auto& r : row_sums())
      if (r != rs) return false;
    for (const auto& c : column_sums())
      if (c != ct) return false;
    return true;
  }

  Rational mass_outside(const BipartiteConstraint& d) const {
    Rational sum = 0;
    for (const auto& [k, v] : mass)
      if (!d.allowed(k.first, k.second)) sum += v;
    return sum;
  }

  bool operator==(const JointDistribution&) const = default;

  std::string serialize() const {
    std::ostringstream out;
    out << "regglab-joint v1\n" << S_size << ' ' << T_size << ' ' << mass.size() << '\n';
    for (const auto& [k, v] : mass) {
      out << k.first << ' ' << k.second << ' ' << numerator(v) << ' ' << denominator(v) << '\n';
    }
    return out.str();
  }

  static JointDistribution parse(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "regglab-joint" || version != "v1") {
      fail(ErrorCode::ParseError, "missing 'regglab-joint v1' header");
    }
    JointDistribution j;
    std::size_t count = 0;
    if (!(in >> j.S_size >> j.T_size >> count) || j.S_size < 0 || j.T_size < 0) fail(ErrorCode::ParseError, "bad size line");
    for (std::size_t i = 0; i < count; ++i) {
      int s = 0, t = 0;
      std::string num, den;
      if (!(in >> s >> t >> num >> den)) fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " is incomplete");
      if (s < 0 || s >= j.S_size || t < 0 || t >= j.T_size) fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " out of range");
      try {
        const BigCount d(den);
        if (d <= 0) fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " has a non-positive denominator");
        if (!j.mass.emplace(std::pair{s, t}, Rational(BigCount(num), d)).second) {
          fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " repeats a pair");
        }
      } catch (const std::runtime_error& e) {
        if (dynamic_cast<const Error*>(&e)) throw;
        fail(ErrorCode::ParseError, "entry " + std::to_string(i) + " is not an integer fraction");
      }
    }
    std::string extra;
    if (in >> extra) fail(ErrorCode::ParseError, "trailing content after the last entry");
    return j;
  }
};

namespace detail {

// Dinic's algorithm on integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(nodes), level_(nodes), it_(nodes) {}

  int add_edge(int from, int to, std::int64_t cap) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }

  std::int64_t flow_on(int arc) const { return arcs_[arc ^ 1].cap; }

  std::int64_t run(int source, int sink) {
    std::int64_t total = 0;
    while (bfs(source, sink)) {
      std::fill(it_.begin(), it_.end(), 0);
      while (std::int64_t f = dfs(source, sink, std::numeric_limits<std::int64_t>::max())) total += f;
    }
    return total;
  }

 private:
  struct Arc {
    int to;
    std::int64_t cap;
  };

  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int a : adj_[v]) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[v] + 1;
          q.push(arcs_[a].to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  std::int64_t dfs(int v, int sink, std::int64_t pushed) {
    if (v == sink) return pushed;
    for (auto& i = it_[v]; i < adj_[v].size(); ++i) {
      const int a = adj_[v][i];
      const int to = arcs_[a].to;
      if (arcs_[a].cap <= 0 || level_[to] != level_[v] + 1) continue;
      if (std::int64_t f = dfs(to, sink, std::min(pushed, arcs_[a].cap))) {
        arcs_[a].cap -= f;
        arcs_[a ^ 1].cap += f;
        return f;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace detail

struct DeficiencyResult {
  Rational eps_star;
  JointDistribution joint;
  std::int64_t max_flow = 0;  // in units of 1/(|S||T|)
};

/// Smallest P(XY ∉ D) over couplings of the uniform laws on S and T, and a
/// coupling attaining it. Off-D mass is placed northwest-corner style in
/// lexicographic (s, t) order; maximality of the flow keeps it off D.
inline DeficiencyResult min_deficiency(const BipartiteConstraint& d) {
  if (d.S_size < 1 || d.T_size < 1) fail(ErrorCode::EmptySide, "both sides need at least one node");
  const std::int64_t S = d.S_size, T = d.T_size;
  const int source = 0, sink = d.S_size + d.T_size + 1;
  detail::MaxFlow flow(d.S_size + d.T_size + 2);
  for (int s = 0; s < d.S_size; ++s) flow.add_edge(source, 1 + s, T);
  for (int t = 0; t < d.T_size; ++t) flow.add_edge(1 + d.S_size + t, sink, S);
  std::vector<std::vector<int>> arc(d.S_size);
  for (int s = 0; s < d.S_size; ++s)
    for (int t : d.edges[s]) arc[s].push_back(flow.add_edge(1 + s, 1 + d.S_size + t, S * T + 1));

  DeficiencyResult r;
  r.max_flow = flow.run(source, sink);
  r.eps_star = Rational(S * T - r.max_flow, S * T);
  r.joint.S_size = d.S_size;
  r.joint.T_size = d.T_size;

  std::vector<std::int64_t> row_left(d.S_size, T), col_left(d.T_size, S);
  for (int s = 0; s < d.S_size; ++s) {
    for (std::size_t i = 0; i < d.edges[s].size(); ++i) {
      const std::int64_t f = flow.flow_on(arc[s][i]);
      if (f == 0) continue;
      const int t = d.edges[s][i];
      r.joint.mass[{s, t}] = Rational(f, S * T);
      row_left[s] -= f;
      col_left[t] -= f;
    }
  }
  for (int s = 0, t = 0; s < d.S_size; ++s) {
    while (row_left[s] > 0) {
      while (col_left[t] == 0) ++t;
      if (d.allowed(s, t)) fail(ErrorCode::InvalidArgument, "internal: residual mass on an allowed pair");
      const std::int64_t q = std::min(row_left[s], col_left[t]);
      r.joint.mass[{s, t}] += Rational(q, S * T);
      row_left[s] -= q;
      col_left[t] -= q;
    }
  }
  return r;
}

/// max over Ω ⊆ S of π_S(Ω) − π_T(N(Ω)), clamped at 0, by subset enumeration.
/// The objective is additive over connected components of D, so subsets are
/// enumerated per component; each component may have at most `max_s` S-nodes.
inline Rational hall_deficiency_bruteforce(const BipartiteConstraint& d, int max_s = 20) {
  if (d.S_size < 1 || d.T_size < 1) fail(ErrorCode::EmptySide, "both sides need at least one node");
  // Components over S via shared T neighbours.
  std::vector<int> parent(d.S_size);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<int> owner(d.T_size, -1);
  for (int s = 0; s < d.S_size; ++s)
    for (int t : d.edges[s]) {
      if (owner[t] < 0) owner[t] = s;
      else parent[find(s)] = find(owner[t]);
    }
  std::map<int, std::vector<int>> components;
  for (int s = 0; s < d.S_size; ++s) components[find(s)].push_back(s);

  const std::int64_t S = d.S_size, T = d.T_size;
  const std::size_t words = (static_cast<std::size_t>(d.T_size) + 63) / 64;
  std::int64_t best_total = 0;  // in units of 1/(|S||T|)
  for (const auto& [root, members] : components) {
    if (static_cast<int>(members.size()) > max_s) {
      fail(ErrorCode::TooLarge, "a component has " + std::to_string(members.size()) + " S-nodes; limit is " + std::to_string(max_s));
    }
    std::vector<std::vector<std::uint64_t>> nb(members.size(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < members.size(); ++i)
      for (int t : d.edges[members[i]]) nb[i][t / 64] |= std::uint64_t{1} << (t % 64);
    std::int64_t best = 0;
    std::vector<std::vector<std::uint64_t>> stack(members.size() + 1, std::vector<std::uint64_t>(words, 0));
    // Depth-first over include/exclude decisions; stack[k] is N of the chosen prefix.
    auto walk = [&](auto&& self, std::size_t k, std::int64_t chosen) -> void {
      if (k == members.size()) {
        std::int64_t covered = 0;
        for (auto w : stack[k]) covered += std::popcount(w);
        best = std::max(best, chosen * T - covered * S);
        return;
      }
      stack[k + 1] = stack[k];
      self(self, k + 1, chosen);
      for (std::size_t w = 0; w < words; ++w) stack[k + 1][w] = stack[k][w] | nb[k][w];
      self(self, k + 1, chosen + 1);
    };
    walk(walk, 0, 0);
    best_total += best;
  }
  return Rational(best_total, S * T);
}

struct CouplingBound {
  double eps = 0;
  double delta = 0;
  double bound = 0;
  std::size_t s_good_size = 0;
  std::size_t t_good_size = 0;
  bool applicable = false;  // needs a non-empty D
};

/// 2δ + ε/(1−ε) with δ the larger of the two bad-node fractions.
inline CouplingBound sufficient_bound(const BipartiteConstraint& d, double eps) {
  if (!(eps >= 0 && eps < 1)) fail(ErrorCode::InvalidArgument, "need 0 <= eps < 1");
  if (d.S_size < 1 || d.T_size < 1) fail(ErrorCode::EmptySide, "both sides need at least one node");
  const auto m = static_cast<long double>(d.edge_count());
  CouplingBound b;
  b.eps = eps;
  for (const auto& row : d.edges)
    if (static_cast<long double>(row.size()) * d.S_size >= (1 - static_cast<long double>(eps)) * m) ++b.s_good_size;
  for (int deg : d.t_degrees())
    if (static_cast<long double>(deg) * d.T_size >= (1 - static_cast<long double>(eps)) * m) ++b.t_good_size;
  const double bad_s = static_cast<double>(d.S_size - b.s_good_size) / d.S_size;
  const double bad_t = static_cast<double>(d.T_size - b.t_good_size) / d.T_size;
  b.delta = std::max(bad_s, bad_t);
  b.bound = 2 * b.delta + eps / (1 - eps);
  b.applicable = m > 0;
  return b;
}

struct SprinklingConstraint {
  BipartiteConstraint D;
  std::vector<Graph> s_graphs;                  // R_{d1+d2}(K_n)
  std::vector<std::pair<Graph, Graph>> t_pairs;  // ordered edge-disjoint (H1, H2)
};

struct SprinklingLimits {
  int max_n = 8;
};

/// S = (d1+d2)-regular graphs on [n]; T = ordered pairs of edge-disjoint d1-
/// and d2-regular graphs; s ~ t iff the union of the pair is s. T is listed
/// grouped by union, so the S-degree of G is |R_{d1}(G)| for every d1, d2.
inline SprinklingConstraint sprinkling_constraint(int n, int d1, int d2, SprinklingLimits limits = {}) {
  if (d1 < 1 || d2 < 1) fail(ErrorCode::InvalidArgument, "need d1, d2 >= 1");
  require_regular_parity(n, d1);
  require_regular_parity(n, d2);
  if (d1 + d2 > n - 1) fail(ErrorCode::InvalidArgument, "need d1 + d2 <= n - 1");
  if (n > limits.max_n) fail(ErrorCode::TooLarge, "sprinkling constraint limited to n <= " + std::to_string(limits.max_n));
  SprinklingConstraint c;
  c.s_graphs = enumerate_regular(n, d1 + d2);
  std::vector<std::vector<int>> edges(c.s_graphs.size());
  for (std::size_t s = 0; s < c.s_graphs.size(); ++s) {
    const Graph& g = c.s_graphs[s];
    for (Graph& h : enumerate_regular_spanning_subgraphs(g, d1)) {
      edges[s].push_back(static_cast<int>(c.t_pairs.size()));
      Graph rest = difference(g, h);
      c.t_pairs.emplace_back(std::move(h), std::move(rest));
    }
  }
  c.D = BipartiteConstraint::create(static_cast<int>(c.s_graphs.size()), static_cast<int>(c.t_pairs.size()), std::move(edges));
  for (const auto& g : c.s_graphs) c.D.s_labels.push_back(to_edge_string(g));
  for (const auto& [a, b] : c.t_pairs) c.D.t_labels.push_back(to_edge_string(a) + "|" + to_edge_string(b));
  return c;
}

/// Σ_{s ∈ S} max(0, 1/|S| − deg(s)/|T|): the deficiency when every T-node has degree 1.
inline Rational star_deficiency(const BipartiteConstraint& d) {
  Rational sum = 0;
  const Rational per_s(1, d.S_size);
  for (const auto& row : d.edges) {
    const Rational gap = per_s - Rational(static_cast<long long>(row.size()), d.T_size);
    if (gap > 0) sum += gap;
  }
  return sum;
}

struct SprinklingCoupling {
  Rational eps_star;
  Rational closed_form_eps;
  JointDistribution joint;
  std::size_t s_size = 0;
  std::size_t t_size = 0;
  Rational mean_count;  // E|R_{d1}(G_{d1+d2})| = |T| / |S|
  // Law of |R_{d1}(G)| / E|R_{d1}(G)| for G uniform on S.
  std::map<Rational, Rational> concentration;
};

inline SprinklingCoupling build_sprinkling_coupling(int n, int d1, int d2, SprinklingLimits limits = {}) {
  auto c = sprinkling_constraint(n, d1, d2, limits);
  auto r = min_deficiency(c.D);
  SprinklingCoupling out;
  out.eps_star = r.eps_star;
  out.closed_form_eps = star_deficiency(c.D);
  out.joint = std::move(r.joint);
  out.s_size = c.s_graphs.size();
  out.t_size = c.t_pairs.size();
  out.mean_count = Rational(static_cast<long long>(out.t_size), static_cast<long long>(out.s_size));
  const Rational weight(1, static_cast<long long>(out.s_size));
  for (const auto& row : c.D.edges) {
    out.concentration[Rational(static_cast<long long>(row.size())) / out.mean_count] += weight;
  }
  return out;
}

}  // namespace regglab
