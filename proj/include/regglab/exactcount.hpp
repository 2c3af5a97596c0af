#pragma once

// Exact counts of regular spanning subgraphs and the quantities derived from
// them. These are the oracles every asymptotic estimate is compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "regglab/bigint.hpp"
#include "regglab/errors.hpp"
#include "regglab/graph.hpp"
#include "regglab/sampler.hpp"
#include "regglab/subgraphs.hpp"

namespace regglab {

/// Number of spanning subgraphs of `host` in which vertex v has degree target[v].
inline BigCount count_subgraphs_with_degrees(const Graph& host, const std::vector<int>& target) {
  if (std::accumulate(target.begin(), target.end(), 0) % 2) return 0;
  for (Vertex v = 0; v < host.n(); ++v)
    if (target[v] > host.degree(v)) return 0;
  detail::DegreeConstrainedSearch search(host, target);
  return BigCount(search.count());
}

/// |R_h(G)|. Zero (not an error) when h exceeds the minimum degree.
inline BigCount count_regular_spanning_subgraphs(const Graph& g, int h) {
  if (h < 0) fail(ErrorCode::InvalidArgument, "h must be >= 0");
  if ((static_cast<long long>(g.n()) * h) % 2) {
    fail(ErrorCode::ParityError, "n*h = " + std::to_string(g.n()) + "*" + std::to_string(h) + " is odd");
  }
  if (h == 0) return 1;
  if (h > g.min_degree()) return 0;
  if (g.n() > 64) fail(ErrorCode::TooLarge, "exact counting supports n <= 64");
  if (h == 1) {
    std::vector<std::uint64_t> adj(g.n());
    for (Vertex v = 0; v < g.n(); ++v) adj[v] = g.row_word(v);
    const std::uint64_t all = g.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n()) - 1;
    return BigCount(detail::count_perfect_matchings(adj, all));
  }
  return count_subgraphs_with_degrees(g, std::vector<int>(g.n(), h));
}

/// Every element of R_h(G), in lexicographic edge-set order.
inline std::vector<Graph> enumerate_regular_spanning_subgraphs(const Graph& g, int h) {
  if ((static_cast<long long>(g.n()) * h) % 2) fail(ErrorCode::ParityError, "n*h is odd");
  std::vector<Graph> out;
  if (h > g.min_degree()) return out;
  detail::DegreeConstrainedSearch search(g, std::vector<int>(g.n(), h));
  search.for_each([&](const std::vector<std::uint64_t>& rows) { out.push_back(detail::graph_from_rows(g.n(), rows)); });
  return out;
}

/// Perfect matchings of K_n sharing no edge with F. Runs directly on the
/// forbidden rows rather than on a materialised complement.
inline BigCount count_matchings_avoiding(int n, const Graph& forbidden) {
  if (forbidden.n() != n) fail(ErrorCode::SizeMismatch, "forbidden graph has the wrong order");
  if (n % 2) fail(ErrorCode::ParityError, "perfect matchings need even n, got " + std::to_string(n));
  if (n > 64) fail(ErrorCode::TooLarge, "exact counting supports n <= 64");

  struct Walker {
    const Graph& f;
    std::uint64_t walk(std::uint64_t unmatched) const {
      if (unmatched == 0) return 1;
      const int v = std::countr_zero(unmatched);
      const std::uint64_t rest = unmatched & ~(std::uint64_t{1} << v);
      std::uint64_t total = 0;
      for (std::uint64_t s = rest & ~f.row_word(v); s; s &= s - 1) {
        total += walk(rest & ~(std::uint64_t{1} << std::countr_zero(s)));
      }
      return total;
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  return BigCount(Walker{forbidden}.walk(all));
}

struct PartitionLimits {
  int max_n = 8;
};

namespace detail {

inline BigCount partitions_of_host(const Graph& host, std::span<const int> degrees) {
  if (degrees.size() == 1) return host.is_regular(degrees[0]) ? 1 : 0;
  if (degrees.size() == 2) return count_regular_spanning_subgraphs(host, degrees[0]);
  BigCount total = 0;
  for (const Graph& piece : enumerate_regular_spanning_subgraphs(host, degrees[0])) {
    total += partitions_of_host(difference(host, piece), degrees.subspan(1));
  }
  return total;
}

}  // namespace detail

/// R(n; d_0, ..., d_k): ordered partitions of E(K_n) into spanning regular
/// graphs of the given degrees. Zero degrees are allowed and contribute the
/// empty graph.
inline BigCount count_clique_partitions(int n, std::span<const int> degrees, PartitionLimits limits = {}) {
  if (degrees.empty()) fail(ErrorCode::InvalidArgument, "need at least one degree");
  if (std::accumulate(degrees.begin(), degrees.end(), 0) != n - 1) {
    fail(ErrorCode::DegreeSumMismatch, "degrees must sum to n - 1 = " + std::to_string(n - 1));
  }
  for (int d : degrees) {
    if (d < 0) fail(ErrorCode::InvalidArgument, "negative degree");
    if ((static_cast<long long>(n) * d) % 2) fail(ErrorCode::ParityError, "n*d odd for d = " + std::to_string(d));
  }
  if (n > limits.max_n) {
    fail(ErrorCode::TooLarge, "clique partitions limited to n <= " + std::to_string(limits.max_n));
  }
  return detail::partitions_of_host(complete_graph(n), degrees);
}

inline BigCount count_clique_partitions(int n, std::initializer_list<int> degrees, PartitionLimits limits = {}) {
  return count_clique_partitions(n, std::span<const int>(degrees.begin(), degrees.size()), limits);
}

struct MomentPair {
  Rational first;
  Rational second;
};

/// |R_{d1}(G)| for every G in R_d(K_n), in enumeration order.
inline std::vector<BigCount> subgraph_count_profile(int n, int d1, int d, EnumerationLimits limits = {}) {
  require_regular_parity(n, d);
  if ((static_cast<long long>(n) * d1) % 2) fail(ErrorCode::ParityError, "n*d1 is odd");
  std::vector<BigCount> out;
  for (const Graph& g : enumerate_regular(n, d, limits)) out.push_back(count_regular_spanning_subgraphs(g, d1));
  return out;
}

/// First and second moments of |R_{d1}(G_d)| for G_d uniform on R_d(K_n).
inline MomentPair exact_moments(int n, int d1, int d, EnumerationLimits limits = {}) {
  if (d1 < 0 || d1 > d) fail(ErrorCode::InvalidArgument, "need 0 <= d1 <= d");
  auto profile = subgraph_count_profile(n, d1, d, limits);
  BigCount s1 = 0, s2 = 0;
  for (const auto& c : profile) {
    s1 += c;
    s2 += c * c;
  }
  const BigCount total = profile.size();
  return {Rational(s1, total), Rational(s2, total)};
}

/// Fraction of d-regular graphs on [n] that contain H. Counts the regular
/// supergraphs as subgraphs of complement(H) with degree d - deg_H(v).
inline Rational exact_containment_probability(const Graph& h, int d, EnumerationLimits limits = {}) {
  const int n = h.n();
  require_regular_parity(n, d);
  if (n > 64 || (n > limits.max_n && d >= 3 && d <= n - 4)) fail(ErrorCode::TooLarge, "containment probability guard");
  std::vector<int> target(n);
  for (Vertex v = 0; v < n; ++v) {
    target[v] = d - h.degree(v);
    if (target[v] < 0) return 0;
  }
  const BigCount containing = count_subgraphs_with_degrees(complement(h), target);
  const BigCount all = count_regular_spanning_subgraphs(complete_graph(n), d);
  return Rational(containing, all);
}

}  // namespace regglab
