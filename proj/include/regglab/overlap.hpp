#pragma once

// Overlap |H1 ∩ σ(H2)| under a uniform relabelling σ: exhaustive over S_n or
// Monte Carlo, and the transposition switching used to bound its tail.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <locale>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "regglab/asymptotics.hpp"
#include "regglab/bigint.hpp"
#include "regglab/errors.hpp"
#include "regglab/graph.hpp"
#include "regglab/rng.hpp"
#include "regglab/sampler.hpp"

namespace regglab {

struct OverlapEstimate {
  double estimate = 0;
  double stderr_ = 0;
};

struct OverlapDistribution {
  enum class Mode { exact, monte_carlo } mode = Mode::exact;
  std::map<int, Rational> exact;          // exhaustive mode
  std::map<int, OverlapEstimate> sampled;  // Monte Carlo mode
  std::uint64_t trials = 0;                // permutations visited or sampled

  double probability(int m) const {
    if (mode == Mode::exact) {
      auto it = exact.find(m);
      return it == exact.end() ? 0.0 : to_double(it->second);
    }
    auto it = sampled.find(m);
    return it == sampled.end() ? 0.0 : it->second.estimate;
  }

  int max_support() const {
    if (mode == Mode::exact) return exact.empty() ? 0 : exact.rbegin()->first;
    return sampled.empty() ? 0 : sampled.rbegin()->first;
  }

  /// P(overlap >= threshold), exact in exhaustive mode.
  Rational exact_tail(double threshold) const {
    Rational sum = 0;
    for (const auto& [m, p] : exact)
      if (m >= threshold) sum += p;
    return sum;
  }

  double tail(double threshold) const {
    if (mode == Mode::exact) return to_double(exact_tail(threshold));
    double sum = 0;
    for (const auto& [m, e] : sampled)
      if (m >= threshold) sum += e.estimate;
    return sum;
  }

  std::string to_csv() const {
    std::ostringstream out;
    out.imbue(std::locale::classic());
    out.precision(17);
    if (mode == Mode::exact) {
      out << "m,numerator,denominator\n";
      for (const auto& [m, p] : exact) out << m << ',' << numerator(p) << ',' << denominator(p) << '\n';
    } else {
      out << "m,estimate,stderr\n";
      for (const auto& [m, e] : sampled) out << m << ',' << e.estimate << ',' << e.stderr_ << '\n';
    }
    return out.str();
  }
};

namespace detail {

inline int overlap_under(const Graph& h1, const std::vector<Edge>& h2_edges, const std::vector<Vertex>& perm) {
  int common = 0;
  for (auto [u, v] : h2_edges) common += h1.has_edge(perm[u], perm[v]) ? 1 : 0;
  return common;
}

}  // namespace detail

struct OverlapLimits {
  int max_n = 9;
};

/// Exact law of |H1 ∩ σ(H2)| over all n! relabellings σ.
inline OverlapDistribution overlap_distribution_exact(const Graph& h1, const Graph& h2, OverlapLimits limits = {}) {
  require_same_order(h1, h2);
  const int n = h1.n();
  if (n > limits.max_n) fail(ErrorCode::TooLarge, "exhaustive overlap limited to n <= " + std::to_string(limits.max_n));
  const auto edges = h2.edges();
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::map<int, std::uint64_t> counts;
  std::uint64_t total = 0;
  do {
    ++counts[detail::overlap_under(h1, edges, perm)];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  OverlapDistribution d;
  d.mode = OverlapDistribution::Mode::exact;
  d.trials = total;
  for (const auto& [m, c] : counts) d.exact[m] = Rational(BigCount(c), BigCount(total));
  return d;
}

/// Empirical law from `trials` relabellings; trial i draws from seed.child(i),
/// so the result does not depend on `threads`.
inline OverlapDistribution overlap_distribution_mc(const Graph& h1, const Graph& h2, std::uint64_t trials, SeedSpec seed,
                                                   unsigned threads = 1) {
  require_same_order(h1, h2);
  if (trials < 1) fail(ErrorCode::InvalidArgument, "need at least one trial");
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 256))));
  const auto edges = h2.edges();
  const int bins = static_cast<int>(edges.size()) + 1;
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](unsigned k) {
    for (std::uint64_t i = k; i < trials; i += threads) {
      CounterRng rng(seed.child(i));
      ++partial[k][detail::overlap_under(h1, edges, random_permutation(h1.n(), rng))];
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work, k);
  work(0);
  for (auto& t : pool) t.join();

  OverlapDistribution d;
  d.mode = OverlapDistribution::Mode::monte_carlo;
  d.trials = trials;
  const double n = static_cast<double>(trials);
  for (int m = 0; m < bins; ++m) {
    std::uint64_t c = 0;
    for (const auto& p : partial) c += p[m];
    if (c == 0) continue;
    const double p = c / n;
    d.sampled[m] = {p, std::sqrt(p * (1 - p) / n)};
  }
  return d;
}

/// Total variation distance to Poisson(h^2/2), including Poisson mass beyond the support.
inline double poisson_tv_distance(const OverlapDistribution& d, int h) {
  double tv = 0;
  const int top = std::max(d.max_support(), 200);
  for (int m = 0; m <= top; ++m) tv += std::abs(d.probability(m) - overlap_pmf(h, m));
  return tv / 2;
}

struct SwitchChoice {
  Vertex u = 0;  // chosen end of the common edge
  Vertex w = 0;  // other end
  Vertex z = 0;  // vertex swapped with u

  bool operator==(const SwitchChoice&) const = default;
};

/// Apply the transposition (u z) to G_sigma, where uw is an edge of both G_sigma
/// and H1 and z is neither u nor a neighbour of u in G_sigma.
inline Graph forward_switching(const Graph& g_sigma, const Graph& h1, SwitchChoice c) {
  require_same_order(g_sigma, h1);
  const int n = g_sigma.n();
  auto in_range = [n](Vertex x) { return x >= 0 && x < n; };
  if (!in_range(c.u) || !in_range(c.w) || !in_range(c.z)) fail(ErrorCode::InvalidChoice, "vertex out of range");
  if (c.u == c.w || !g_sigma.has_edge(c.u, c.w) || !h1.has_edge(c.u, c.w)) {
    fail(ErrorCode::InvalidChoice, "uw must be a common edge");
  }
  if (c.z == c.u || g_sigma.has_edge(c.u, c.z)) fail(ErrorCode::InvalidChoice, "z must differ from u and not be adjacent to it");
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[c.u], perm[c.z]);
  return relabel(g_sigma, perm);
}

/// Every valid forward switching from G_sigma; i common edges give i * 2(n-h-1)
/// choices when G_sigma is h-regular.
inline std::vector<SwitchChoice> forward_switching_choices(const Graph& g_sigma, const Graph& h1) {
  require_same_order(g_sigma, h1);
  std::vector<SwitchChoice> out;
  for (auto [a, b] : g_sigma.edges()) {
    if (!h1.has_edge(a, b)) continue;
    for (auto [u, w] : {std::pair{a, b}, std::pair{b, a}}) {
      for (Vertex z = 0; z < g_sigma.n(); ++z) {
        if (z != u && !g_sigma.has_edge(u, z)) out.push_back({u, w, z});
      }
    }
  }
  return out;
}

/// Integer partitions of n into parts >= 3, largest part first: the
/// isomorphism classes of 2-regular graphs on n vertices.
inline std::vector<std::vector<int>> two_regular_cycle_types(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int left, int cap) -> void {
    if (left == 0) {
      out.push_back(parts);
      return;
    }
    for (int p = std::min(left, cap); p >= 3; --p) {
      parts.push_back(p);
      self(self, left - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

/// One representative per isomorphism class of h-regular graphs on [n], h <= 2.
inline std::vector<Graph> small_regular_representatives(int n, int h) {
  require_regular_parity(n, h);
  std::vector<Graph> out;
  if (h == 0) {
    out.emplace_back(n);
  } else if (h == 1) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; v += 2) g.add_edge(v, v + 1);
    out.push_back(g);
  } else if (h == 2) {
    for (const auto& t : two_regular_cycle_types(n)) out.push_back(cycle_union(t));
  } else {
    fail(ErrorCode::InvalidArgument, "representatives only for h <= 2");
  }
  return out;
}

}  // namespace regglab
