#pragma once

// Samplers for G(n,d), the disjoint-union model and random relabellings.
// Every sampler is a pure function of its arguments and a SeedSpec.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "regglab/errors.hpp"
#include "regglab/graph.hpp"
#include "regglab/rng.hpp"
#include "regglab/subgraphs.hpp"

namespace regglab {

enum class SamplerMethod { exhaustive, pairing, switching };

constexpr std::string_view to_string(SamplerMethod m) {
  switch (m) {
    case SamplerMethod::exhaustive: return "exhaustive";
    case SamplerMethod::pairing: return "pairing";
    case SamplerMethod::switching: return "switching";
  }
  return "unknown";
}

struct SamplerStats {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  SamplerMethod method = SamplerMethod::pairing;
  bool approximate = false;  // true for the switching chain
};

struct SampleResult {
  Graph graph;
  SamplerStats stats;
};

struct PairSampleResult {
  Graph first;
  Graph second;
  SamplerStats stats;
};

inline void require_regular_parity(int n, int d) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "n must be >= 1");
  if (d < 0 || d > n - 1) {
    fail(ErrorCode::InvalidArgument, "degree " + std::to_string(d) + " outside [0, " + std::to_string(n - 1) + "]");
  }
  if ((static_cast<long long>(n) * d) % 2) {
    fail(ErrorCode::ParityError, "n*d = " + std::to_string(n) + "*" + std::to_string(d) + " is odd");
  }
}

struct EnumerationLimits {
  // Enumeration of R_d(K_n) is refused above this n when 3 <= d <= n-4;
  // the degrees outside that window have few graphs at any n.
  int max_n = 12;
};

/// Every labelled d-regular graph on [n], once each, in lexicographic edge-set order.
inline std::vector<Graph> enumerate_regular(int n, int d, EnumerationLimits limits = {}) {
  require_regular_parity(n, d);
  if (n > 64 || (n > limits.max_n && d >= 3 && d <= n - 4)) {
    fail(ErrorCode::TooLarge, "enumerating " + std::to_string(d) + "-regular graphs on " + std::to_string(n) +
                                  " vertices exceeds the guard n <= " + std::to_string(limits.max_n));
  }
  std::vector<Graph> out;
  detail::DegreeConstrainedSearch search(complete_graph(n), std::vector<int>(n, d));
  search.for_each([&](const std::vector<std::uint64_t>& rows) { out.push_back(detail::graph_from_rows(n, rows)); });
  return out;
}

/// Configuration-model pairing conditioned on simplicity: exactly uniform on
/// labelled d-regular graphs. Rejection becomes impractical for large d.
inline SampleResult sample_pairing(int n, int d, SeedSpec seed, std::uint64_t max_attempts = 10'000'000) {
  require_regular_parity(n, d);
  CounterRng rng(seed);
  std::vector<Vertex> points(static_cast<std::size_t>(n) * d);
  SamplerStats stats{0, 0, SamplerMethod::pairing, false};
  while (stats.attempts < max_attempts) {
    ++stats.attempts;
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = static_cast<Vertex>(i / d);
    for (std::size_t i = points.size(); i > 1; --i) std::swap(points[i - 1], points[rng.below(std::uint64_t{i})]);
    Graph g(n);
    bool simple = true;
    for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
      const Vertex u = points[i], v = points[i + 1];
      if (u == v || g.has_edge(u, v)) {
        simple = false;
        break;
      }
      g.add_edge(u, v);
    }
    if (simple) {
      stats.accepted = 1;
      return {std::move(g), stats};
    }
  }
  fail(ErrorCode::RejectionBudgetExceeded, "pairing sampler found no simple graph in " + std::to_string(max_attempts) + " attempts");
}

/// Vertex i joined to i±1, ..., i±floor(d/2) (mod n), plus the diameter
/// matching i ~ i + n/2 when d is odd.
inline Graph circulant_regular(int n, int d) {
  require_regular_parity(n, d);
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (int s = 1; s <= d / 2; ++s) g.add_edge(i, (i + s) % n);
  if (d % 2) {
    for (Vertex i = 0; i < n / 2; ++i) g.add_edge(i, i + n / 2);
  }
  return g;
}

inline std::uint64_t default_switching_steps(int n, int d) { return 100ULL * n * d; }

/// One proposal of the double-edge-swap chain on `g`, whose edge list is kept
/// in `edges`. Picks two edges uv, xy uniformly, orients xy at random and
/// replaces them by ux, vy when the result is simple. Returns true on a swap.
inline bool switching_step(Graph& g, std::vector<Edge>& edges, CounterRng& rng) {
  if (edges.size() < 2) return false;
  const auto i = rng.below(std::uint64_t{edges.size()});
  auto j = rng.below(std::uint64_t{edges.size() - 1});
  if (j >= i) ++j;
  auto [u, v] = edges[i];
  auto [x, y] = edges[j];
  if (rng() & 1) std::swap(x, y);
  if (u == x || u == y || v == x || v == y) return false;
  if (g.has_edge(u, x) || g.has_edge(v, y)) return false;
  g.remove_edge(u, v);
  g.remove_edge(x, y);
  g.add_edge(u, x);
  g.add_edge(v, y);
  edges[i] = {std::min(u, x), std::max(u, x)};
  edges[j] = {std::min(v, y), std::max(v, y)};
  return true;
}

/// Double-edge-swap Markov chain from the circulant start. The proposal is
/// symmetric so the stationary law is uniform, but finite runs are only
/// approximately uniform and are flagged as such.
inline SampleResult sample_switching(int n, int d, std::uint64_t steps, SeedSpec seed) {
  Graph g = circulant_regular(n, d);
  CounterRng rng(seed);
  auto edges = g.edges();
  SamplerStats stats{steps, 0, SamplerMethod::switching, true};
  for (std::uint64_t s = 0; s < steps; ++s) stats.accepted += switching_step(g, edges, rng) ? 1 : 0;
  return {std::move(g), stats};
}

/// Pairing for small degrees, otherwise the switching chain with the default
/// burn-in. Complements are used when n-1-d is small.
inline SampleResult sample_regular(int n, int d, SeedSpec seed) {
  require_regular_parity(n, d);
  constexpr int pairing_limit = 5;
  if (d <= pairing_limit) return sample_pairing(n, d, seed);
  if (n - 1 - d <= pairing_limit) {
    auto r = sample_pairing(n, n - 1 - d, seed);
    return {complement(r.graph), r.stats};
  }
  return sample_switching(n, d, default_switching_steps(n, d), seed);
}

/// Uniform relabelling by Fisher-Yates.
inline std::vector<Vertex> random_permutation(int n, CounterRng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
  return p;
}

inline Graph random_relabel(const Graph& g, SeedSpec seed) {
  CounterRng rng(seed);
  return relabel(g, random_permutation(g.n(), rng));
}

struct DisjointPairOptions {
  std::uint64_t max_attempts = 1'000'000;
};

/// Independent uniform pairs resampled until edge-disjoint: a draw from
/// G(n,d1) ⊕ G(n,d2). Attempt k draws its two graphs from child streams 2k, 2k+1.
inline PairSampleResult sample_disjoint_pair(int n, int d1, int d2, SeedSpec seed, DisjointPairOptions opts = {}) {
  require_regular_parity(n, d1);
  require_regular_parity(n, d2);
  if (d1 + d2 > n - 1) fail(ErrorCode::InvalidArgument, "d1 + d2 must be <= n - 1");
  SamplerStats stats{0, 0, SamplerMethod::pairing, false};
  while (stats.attempts < opts.max_attempts) {
    const std::uint64_t k = stats.attempts++;
    auto a = sample_regular(n, d1, seed.child(2 * k));
    auto b = sample_regular(n, d2, seed.child(2 * k + 1));
    stats.approximate = stats.approximate || a.stats.approximate || b.stats.approximate;
    if (a.stats.method == SamplerMethod::switching || b.stats.method == SamplerMethod::switching) {
      stats.method = SamplerMethod::switching;
    }
    if (intersection_size(a.graph, b.graph) == 0) {
      stats.accepted = 1;
      return {std::move(a.graph), std::move(b.graph), stats};
    }
  }
  fail(ErrorCode::RejectionBudgetExceeded,
       "no disjoint pair in " + std::to_string(opts.max_attempts) + " attempts");
}

}  // namespace regglab
